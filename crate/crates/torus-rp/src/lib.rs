//! Computing with finitely supported measures on the n-torus.
//!
//! The crate revolves around one question: which point sets can carry a
//! positive measure whose analytic (or mixed) Fourier coefficients all
//! vanish? It provides
//!
//! - atomic measures with moments, pluriharmonic/annihilator defect numbers,
//!   the conjugate-last-coordinate pushforward, and Poisson evaluation
//!   ([`measure`], [`sample`]);
//! - finite analytic polynomials with half-plane range checks ([`poly`]);
//! - a dense two-phase simplex solver and the primal/dual pair deciding
//!   grid-level existence of positive annihilating measures, with half-plane
//!   polynomial certificates on the infeasible side ([`simplex`],
//!   [`annihilate`]);
//! - weighted-L² Gram projections, residual-density profiles, the
//!   `|f − F|² dμ` annihilator generator, and LP-based uniform best
//!   approximation ([`project`]);
//! - JSON file formats for measures, point sets, and polynomials ([`io`]).
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything can be shared across threads freely.

pub mod annihilate;
pub mod error;
pub mod io;
pub mod measure;
pub mod poly;
pub mod project;
pub mod sample;
pub mod simplex;
pub mod torus;

pub use annihilate::{
    dual_halfplane_certificate, duality_audit, framing_index_set, primal_positive_annihilator,
    AuditRecord, AuditStatus, Certificate, FeasibilityReport, FeasibilityStatus, Framing,
    CERTIFICATE_THRESHOLD,
};
pub use error::{Error, Result};
pub use measure::{AtomicMeasure, MeasureClass, MomentTable, DEFAULT_DEFECT_TOL};
pub use poly::{
    halfplane_cover_check, min_margin, AnalyticPolynomial, CoverReport, HalfPlane,
    TrigPolynomial, NO_POSITIVE_ANNIHILATOR_TAG,
};
pub use project::{
    generate_annihilator, gram_matrix, l2_inner, l2_norm, octagon_overestimate, project,
    residual_profile, uniform_best_approx, AnnihilatorResult, BestApproxResult, MonomialBasis,
    ProjectionResult, ILL_CONDITION_THRESHOLD, VANISHING_RESIDUAL,
};
pub use sample::{cantor_points, sample_graph_curve, CurveSpec, MAX_CANTOR_DEPTH};
pub use simplex::{solve_lp, LinearProgram, LpOutcome, LpSolution, Relation, VarBound};
pub use torus::{indices_in_box, normalize_angle, MultiIndex, TorusPoint};
