//! Extremal splines for the Kolmogorov problem on the real line.
//!
//! The crate builds the Euler perfect splines and the three-plateau Rodov
//! splines exactly (as periodic piecewise polynomials), evaluates uniform
//! norms of their derivatives exactly, decides whether a vector of derivative
//! norms is realizable by some function, numerically verifies the comparison
//! theorems behind these solutions, and solves the constrained extremal
//! problems whose values are the sharp constants of multi-norm
//! Landau-Kolmogorov inequalities (including the Dragomir-type constants for
//! the four-norm first-derivative inequality).
//!
//! Everything is double precision with exact piecewise-polynomial arithmetic
//! underneath: sup norms come from closed forms or polynomial root isolation,
//! never from sampling. Sampling and grid searches appear only as independent
//! test oracles and cross-checks.

pub mod compare;
pub mod config;
pub mod error;
pub mod exec;
pub mod kolmogorov;
pub mod modulus;
pub mod norms;
pub mod piecewise;
pub mod poly;
pub mod splines;

pub use compare::{
    verify_comparison_euler, verify_comparison_rodov, Comparand, ComparisonReport, SineWave,
    SplineFn,
};
pub use config::Tolerances;
pub use error::{Error, Result};
pub use kolmogorov::{is_admissible, is_admissible_triple, EulerWitness, TripleDecision,
    VectorDecision};
pub use modulus::{
    dragomir_constant, dragomir_grid_oracle, modulus, sharp_inequality_check, ClassSpec, HomTerm,
    ModulusResult, OrderBound, TestFunction,
};
pub use norms::{favard_norm, favard_norm_spline, kolmogorov_constant, norm_vector, NormVector};
pub use piecewise::PeriodicPiecewisePoly;
pub use splines::{
    build_euler, build_rodov, fit_family, EulerParams, FamilyState, OrderCase, OrderVector,
    RodovParams, SplineFamily,
};
