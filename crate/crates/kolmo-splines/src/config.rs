//! Central tolerance record. Every threshold used by the solvers lives here
//! so that nothing is tuned ad hoc at call sites.

/// Tolerances used across the crate.
///
/// * `tol_opt` - bracket width (relative to the bracket scale) at which
///   golden-section refinement stops.
/// * `tol_check` - relative tolerance for cross-validation checks
///   (optimizer vs. grid oracle, power-law spread).
/// * `tol_root` - relative interval width for bisection root solves.
/// * `tol_cmp_factor` - comparison-theorem slack, as a multiple of the
///   comparison spline's derivative norm.
/// * `tol_mean_factor` - zero-mean test factor: a function is accepted as
///   zero-mean when `|integral| <= tol_mean_factor * period * sup|f|`.
#[derive(Debug, Clone)]
pub struct Tolerances {
    pub tol_opt: f64,
    pub tol_check: f64,
    pub tol_root: f64,
    pub tol_cmp_factor: f64,
    pub tol_mean_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_opt: 1e-12,
            tol_check: 1e-6,
            tol_root: 1e-12,
            tol_cmp_factor: 1e-9,
            tol_mean_factor: 1e-10,
        }
    }
}

impl Tolerances {
    /// Default tolerances, with `KOLMO_TOL` (when set to a positive float)
    /// overriding the cross-validation tolerance `tol_check`.
    pub fn from_env() -> Self {
        let mut tol = Tolerances::default();
        if let Ok(s) = std::env::var("KOLMO_TOL") {
            if let Ok(v) = s.trim().parse::<f64>() {
                if v > 0.0 && v.is_finite() {
                    tol.tol_check = v;
                }
            }
        }
        tol
    }
}
