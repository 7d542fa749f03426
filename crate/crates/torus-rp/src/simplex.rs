use crate::error::{Error, Result};

/// Row relation of a linear constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
}

/// Lower-bound type of a variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarBound {
    NonNegative,
    Free,
}

/// A dense linear program: maximize `objective · x` subject to the rows.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    pub relations: Vec<Relation>,
    pub bounds: Vec<VarBound>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Largest violation of `= `/`>=` rows by the returned point.
    pub max_violation: f64,
    pub pivots: usize,
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal(LpSolution),
    /// Phase-one optimum (total artificial mass) bounded away from zero.
    Infeasible { infeasibility: f64, pivots: usize },
    Unbounded { pivots: usize },
    /// Pivot budget `10·(rows+cols)²` exhausted.
    NumericalFailure { pivots: usize },
}

const FEAS_TOL: f64 = 1e-9;
/// Entries below this never become pivots; smaller pivots amplify roundoff
/// catastrophically on long degenerate runs.
const PIVOT_TOL: f64 = 1e-7;
const DRIVE_OUT_TOL: f64 = 1e-7;
const SIZE_GUARD: usize = 5000;

/// Primal simplex on a dense tableau, two phases, Bland's anti-cycling rule
/// (lowest eligible index enters; ratio ties leave by lowest basic index).
pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome> {
    let n = lp.objective.len();
    let m = lp.rows.len();
    if lp.bounds.len() != n {
        return Err(Error::invalid("bounds length must match objective length"));
    }
    if lp.rhs.len() != m || lp.relations.len() != m {
        return Err(Error::invalid("rhs/relations length must match row count"));
    }
    for row in &lp.rows {
        if row.len() != n {
            return Err(Error::invalid("constraint row width must match objective"));
        }
    }
    if n > SIZE_GUARD || m > SIZE_GUARD {
        return Err(Error::SizeGuard { rows: m, cols: n });
    }

    let max_pivots = 10usize.saturating_mul((m + n).pow(2)).max(64);
    let mut tableau = Tableau::standardize(lp);

    // Phase 1: maximize the negated artificial mass.
    let mut phase1_cost = vec![0.0; tableau.total_cols];
    for j in tableau.art_start..tableau.total_cols {
        phase1_cost[j] = -1.0;
    }
    tableau.install_objective(&phase1_cost);
    match tableau.run_simplex(max_pivots, tableau.total_cols) {
        RunOutcome::Optimal => {}
        RunOutcome::Unbounded => {
            // the phase-1 objective is bounded above by zero
            return Ok(LpOutcome::NumericalFailure {
                pivots: tableau.pivots,
            });
        }
        RunOutcome::PivotBudget => {
            return Ok(LpOutcome::NumericalFailure {
                pivots: tableau.pivots,
            });
        }
    }
    let infeasibility = tableau.artificial_mass();
    if infeasibility > FEAS_TOL {
        return Ok(LpOutcome::Infeasible {
            infeasibility,
            pivots: tableau.pivots,
        });
    }
    tableau.drive_out_artificials();

    // Phase 2: the caller's objective over the structural columns.
    let mut phase2_cost = vec![0.0; tableau.total_cols];
    for (j, &c) in tableau.std_objective.clone().iter().enumerate() {
        phase2_cost[j] = c;
    }
    tableau.install_objective(&phase2_cost);
    match tableau.run_simplex(max_pivots, tableau.art_start) {
        RunOutcome::Optimal => {}
        RunOutcome::Unbounded => {
            return Ok(LpOutcome::Unbounded {
                pivots: tableau.pivots,
            });
        }
        RunOutcome::PivotBudget => {
            return Ok(LpOutcome::NumericalFailure {
                pivots: tableau.pivots,
            });
        }
    }

    let x = tableau.extract_original(lp);
    let objective = lp
        .objective
        .iter()
        .zip(&x)
        .map(|(c, xi)| c * xi)
        .sum::<f64>();
    let max_violation = violation(lp, &x);
    Ok(LpOutcome::Optimal(LpSolution {
        x,
        objective,
        max_violation,
        pivots: tableau.pivots,
    }))
}

fn violation(lp: &LinearProgram, x: &[f64]) -> f64 {
    let mut worst = 0.0_f64;
    for (i, row) in lp.rows.iter().enumerate() {
        let lhs: f64 = row.iter().zip(x).map(|(a, xi)| a * xi).sum();
        let v = match lp.relations[i] {
            Relation::Eq => (lhs - lp.rhs[i]).abs(),
            Relation::Ge => (lp.rhs[i] - lhs).max(0.0),
        };
        worst = worst.max(v);
    }
    worst
}

enum RunOutcome {
    Optimal,
    Unbounded,
    PivotBudget,
}

/// Dense tableau in standard form: structural columns (split for free
/// variables), surplus columns for `>=` rows, then artificials for the rows
/// that cannot start from their own surplus column. The last tableau row
/// carries reduced costs with `-value` in its rhs cell.
struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    /// Structural+surplus column count; artificials start here.
    art_start: usize,
    total_cols: usize,
    /// Phase-2 costs on structural columns (split mapping already applied).
    std_objective: Vec<f64>,
    /// column pair per original variable: (plus column, optional minus column)
    var_cols: Vec<(usize, Option<usize>)>,
    pivots: usize,
}

impl Tableau {
    fn standardize(lp: &LinearProgram) -> Tableau {
        let m = lp.rows.len();
        let mut var_cols = Vec::with_capacity(lp.bounds.len());
        let mut next = 0usize;
        for b in &lp.bounds {
            match b {
                VarBound::NonNegative => {
                    var_cols.push((next, None));
                    next += 1;
                }
                VarBound::Free => {
                    var_cols.push((next, Some(next + 1)));
                    next += 2;
                }
            }
        }
        let n_struct = next;
        let surplus_start = n_struct;
        let n_surplus = lp
            .relations
            .iter()
            .filter(|r| **r == Relation::Ge)
            .count();
        let art_start = surplus_start + n_surplus;

        // A `>=` row whose rhs gets negated turns its surplus into a slack
        // with coefficient +1; that column is a ready-made basic variable
        // and the row needs no artificial.
        let mut raw_rows = Vec::with_capacity(m);
        let mut surplus_used = 0usize;
        let mut basis_cols: Vec<Option<usize>> = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = vec![0.0; art_start + 1];
            for (j, &a) in lp.rows[i].iter().enumerate() {
                let (plus, minus) = var_cols[j];
                row[plus] = a;
                if let Some(minus) = minus {
                    row[minus] = -a;
                }
            }
            let mut surplus_col = None;
            if lp.relations[i] == Relation::Ge {
                let col = surplus_start + surplus_used;
                row[col] = -1.0;
                surplus_used += 1;
                surplus_col = Some(col);
            }
            row[art_start] = lp.rhs[i];
            let negated = row[art_start] < 0.0;
            if negated {
                for v in row.iter_mut() {
                    *v = -*v;
                }
            }
            basis_cols.push(surplus_col.filter(|_| negated));
            raw_rows.push(row);
        }

        let n_art = basis_cols.iter().filter(|b| b.is_none()).count();
        let total_cols = art_start + n_art;
        let mut rows = Vec::with_capacity(m + 1);
        let mut basis = Vec::with_capacity(m);
        let mut next_art = art_start;
        for (raw, basic) in raw_rows.into_iter().zip(basis_cols) {
            let mut row = vec![0.0; total_cols + 1];
            row[..art_start].copy_from_slice(&raw[..art_start]);
            row[total_cols] = raw[art_start];
            match basic {
                Some(col) => basis.push(col),
                None => {
                    row[next_art] = 1.0;
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
        }
        rows.push(vec![0.0; total_cols + 1]); // objective row, installed later

        let mut std_objective = vec![0.0; art_start];
        for (j, &c) in lp.objective.iter().enumerate() {
            let (plus, minus) = var_cols[j];
            std_objective[plus] = c;
            if let Some(minus) = minus {
                std_objective[minus] = -c;
            }
        }

        Tableau {
            rows,
            basis,
            art_start,
            total_cols,
            std_objective,
            var_cols,
            pivots: 0,
        }
    }

    fn m(&self) -> usize {
        self.basis.len()
    }

    /// Load reduced costs `c - c_B·A` and `-c_B·b` into the objective row.
    fn install_objective(&mut self, cost: &[f64]) {
        let m = self.m();
        let width = self.total_cols + 1;
        for j in 0..width {
            self.rows[m][j] = if j < self.total_cols { cost[j] } else { 0.0 };
        }
        for i in 0..m {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for j in 0..width {
                    self.rows[m][j] -= cb * self.rows[i][j];
                }
            }
        }
    }

    fn pivot(&mut self, pivot_row: usize, pivot_col: usize) {
        let width = self.total_cols + 1;
        let factor = self.rows[pivot_row][pivot_col];
        for j in 0..width {
            self.rows[pivot_row][j] /= factor;
        }
        self.rows[pivot_row][pivot_col] = 1.0;
        for i in 0..self.rows.len() {
            if i == pivot_row {
                continue;
            }
            let mult = self.rows[i][pivot_col];
            if mult != 0.0 {
                let (head, tail) = self.rows.split_at_mut(pivot_row.max(i));
                let (target, source) = if i < pivot_row {
                    (&mut head[i], &tail[0])
                } else {
                    (&mut tail[0], &head[pivot_row])
                };
                for j in 0..width {
                    target[j] -= mult * source[j];
                }
                target[pivot_col] = 0.0;
            }
        }
        self.basis[pivot_row] = pivot_col;
        self.pivots += 1;
    }

    /// Leaving row for an entering column: minimum ratio. Among rows tied at
    /// the minimum, the stable choice is the largest pivot element; Bland
    /// mode instead takes the lowest basic variable index, which is what
    /// makes cycling impossible.
    fn ratio_test(&self, col: usize, bland_mode: bool) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.m() {
            let a = self.rows[i][col];
            if a > PIVOT_TOL {
                let ratio = self.rows[i][self.total_cols] / a;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let tied = (ratio - br).abs() <= 1e-12;
                        let wins = if tied {
                            if bland_mode {
                                self.basis[i] < self.basis[bi]
                            } else {
                                a > self.rows[bi][col]
                            }
                        } else {
                            ratio < br
                        };
                        if wins {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
        }
        best.map(|(i, _)| i)
    }

    /// Simplex iterations over the first `col_limit` columns. The entering
    /// column is chosen by largest reduced cost until a streak of degenerate
    /// pivots signals stalling; from then on Bland's lowest-index rule takes
    /// over, which cannot cycle. Entering columns with no pivotable entry
    /// are either a genuine unbounded ray (every entry non-positive) or
    /// degenerate roundoff noise, which gets skipped.
    fn run_simplex(&mut self, max_pivots: usize, col_limit: usize) -> RunOutcome {
        let m = self.m();
        let streak_limit = 2 * (m + col_limit) + 16;
        let mut bland_mode = false;
        let mut degenerate_streak = 0usize;
        let mut banned = vec![false; col_limit];
        loop {
            if self.pivots > max_pivots {
                return RunOutcome::PivotBudget;
            }
            banned.iter_mut().for_each(|b| *b = false);
            let pivot_pair = loop {
                let mut candidate = None;
                if bland_mode {
                    for j in 0..col_limit {
                        if !banned[j] && self.rows[m][j] > FEAS_TOL {
                            candidate = Some(j);
                            break;
                        }
                    }
                } else {
                    let mut best = FEAS_TOL;
                    for j in 0..col_limit {
                        if !banned[j] && self.rows[m][j] > best {
                            best = self.rows[m][j];
                            candidate = Some(j);
                        }
                    }
                }
                let Some(col) = candidate else {
                    break None;
                };
                match self.ratio_test(col, bland_mode) {
                    Some(row) => break Some((row, col)),
                    None => {
                        if (0..m).all(|i| self.rows[i][col] <= 0.0) {
                            return RunOutcome::Unbounded;
                        }
                        // tiny positive entries only: not a usable pivot
                        banned[col] = true;
                    }
                }
            };
            let Some((row, col)) = pivot_pair else {
                return RunOutcome::Optimal;
            };
            let degenerate = self.rows[row][self.total_cols].abs() <= 1e-12;
            self.pivot(row, col);
            if degenerate {
                degenerate_streak += 1;
                if degenerate_streak > streak_limit {
                    bland_mode = true;
                }
            } else {
                degenerate_streak = 0;
            }
        }
    }

    fn artificial_mass(&self) -> f64 {
        let mut total = 0.0;
        for (i, &b) in self.basis.iter().enumerate() {
            if b >= self.art_start {
                total += self.rows[i][self.total_cols].max(0.0);
            }
        }
        total
    }

    /// After a feasible phase 1, pivot basic artificials onto structural
    /// columns; rows that admit no pivot are redundant and get dropped.
    fn drive_out_artificials(&mut self) {
        let mut i = 0;
        while i < self.m() {
            if self.basis[i] >= self.art_start {
                let col = (0..self.art_start)
                    .find(|&j| self.rows[i][j].abs() > DRIVE_OUT_TOL);
                match col {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    fn extract_original(&self, lp: &LinearProgram) -> Vec<f64> {
        let mut x_std = vec![0.0; self.total_cols];
        for (i, &b) in self.basis.iter().enumerate() {
            x_std[b] = self.rows[i][self.total_cols];
        }
        lp.bounds
            .iter()
            .enumerate()
            .map(|(j, _)| {
                let (plus, minus) = self.var_cols[j];
                x_std[plus] - minus.map_or(0.0, |mc| x_std[mc])
            })
            .collect()
    }
}
