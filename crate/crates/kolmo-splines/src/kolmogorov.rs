//! Decides whether a vector of derivative norms is realizable by a function
//! on the line, using the extremal-family solutions: the classical triple
//! goes through the Euler splines, the multi-norm vectors through the fitted
//! plateau families with a vertical shift.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{favard_norm, kolmogorov_constant, NormVector};
use crate::splines::{fit_family, FamilyState, OrderCase, OrderVector};

/// Witness for an admissible classical triple: the function
/// `amplitude * phi_{lambda, r} + shift` realizes the norms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EulerWitness {
    pub amplitude: f64,
    pub lambda: f64,
    pub shift: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripleDecision {
    pub admissible: bool,
    /// Slack `C M0^{1-k/r} Mr^{k/r} - Mk`; negative when inadmissible.
    pub margin: f64,
    pub witness: Option<EulerWitness>,
}

/// Classical three-norm admissibility: positive `(M0, Mk, Mr)` are the norms
/// of some function iff `Mk <= C(k,r) * M0^{1-k/r} * Mr^{k/r}`.
///
/// On success the returned witness has `M_r = mr` and `M_k = mk` by
/// construction, and soaks up the remaining slack in `M_0` with the vertical
/// shift (the spline attains both extremes, so shifting up raises only `M_0`).
pub fn is_admissible_triple(
    k: usize,
    r: usize,
    m0: f64,
    mk: f64,
    mr: f64,
) -> Result<TripleDecision> {
    if k == 0 || k >= r {
        return Err(Error::BadOrders { k, r });
    }
    for (name, v) in [("M0", m0), ("Mk", mk), ("Mr", mr)] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "{name} must be positive, got {v}"
            )));
        }
    }
    let frac = k as f64 / r as f64;
    let bound = kolmogorov_constant(k, r)? * m0.powf(1.0 - frac) * mr.powf(frac);
    let margin = bound - mk;
    if margin < -1e-12 * bound {
        return Ok(TripleDecision {
            admissible: false,
            margin,
            witness: None,
        });
    }
    // Match M_r and M_k inside the Euler family, then lift by d >= 0.
    let lambda = (mr * favard_norm(r - k) / mk).powf(1.0 / (r - k) as f64);
    let m0_spline = mr * favard_norm(r) * lambda.powi(-(r as i32));
    let shift = (m0 - m0_spline).max(0.0);
    Ok(TripleDecision {
        admissible: true,
        margin,
        witness: Some(EulerWitness {
            amplitude: mr,
            lambda,
            shift,
        }),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VectorDecision {
    pub admissible: bool,
    /// The fitted family member and shift realizing the vector, when
    /// admissible.
    pub witness: Option<FamilyState>,
    /// Value of the free family parameter at the witness.
    pub beta: Option<f64>,
    /// Smallest `M_0` admissible together with the rest of the vector.
    pub min_m0: Option<f64>,
    pub reason: Option<String>,
}

impl VectorDecision {
    fn rejected(reason: String) -> Self {
        VectorDecision {
            admissible: false,
            witness: None,
            beta: None,
            min_m0: None,
            reason: Some(reason),
        }
    }
}

/// Multi-norm admissibility for `kk` in one of the three supported patterns.
///
/// Algorithm: fit the one-parameter family matching the upper norms (an
/// infeasible upper part already decides the answer), then use the strict
/// monotonicity of `M_k` in the free parameter to locate the unique member
/// with the requested `M_k`. The vector is admissible iff its `M_0` is at
/// least the `M_0` of that member; the difference is the vertical shift.
pub fn is_admissible(kk: &OrderVector, norms: &NormVector) -> Result<VectorDecision> {
    if kk.case() == OrderCase::Classical {
        return Err(Error::InvalidOrderVector(
            "use is_admissible_triple for (0, k, r)".into(),
        ));
    }
    if norms.orders() != kk.entries() {
        return Err(Error::InvalidOrderVector(format!(
            "norm orders {:?} do not match {:?}",
            norms.orders(),
            kk.entries()
        )));
    }
    let upper = norms.restrict(kk.upper())?;
    let family = match fit_family(kk, &upper) {
        Ok(f) => f,
        Err(Error::InfeasibleNorms(msg)) => {
            return Ok(VectorDecision::rejected(format!(
                "upper norms are themselves unrealizable: {msg}"
            )))
        }
        Err(e) => return Err(e),
    };

    let mk = norms.value_for(kk.k()).unwrap();
    let mk_floor = family.norm_at(kk.k(), 0.0);
    if mk < mk_floor * (1.0 - 1e-10) {
        return Ok(VectorDecision::rejected(format!(
            "M_{} = {mk:.12e} below the family minimum {mk_floor:.12e}",
            kk.k()
        )));
    }

    let beta = if mk <= mk_floor {
        0.0
    } else {
        // Bracket by geometric expansion, then bisect on the increasing map.
        let tol_root = crate::config::Tolerances::default().tol_root;
        let mut hi = family.b().max(1.0);
        let mut grew = 0;
        while family.norm_at(kk.k(), hi) < mk {
            hi *= 2.0;
            grew += 1;
            if grew > 200 {
                return Ok(VectorDecision::rejected(
                    "no finite family parameter reaches the requested M_k".into(),
                ));
            }
        }
        let mut lo = 0.0;
        while hi - lo > tol_root * hi.max(1.0) {
            let mid = 0.5 * (lo + hi);
            if family.norm_at(kk.k(), mid) < mk {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };

    let min_m0 = family.norm_at(0, beta);
    let m0 = norms.value_for(0).unwrap();
    if m0 < min_m0 * (1.0 - 1e-8) {
        return Ok(VectorDecision {
            admissible: false,
            witness: None,
            beta: Some(beta),
            min_m0: Some(min_m0),
            reason: Some(format!(
                "M_0 = {m0:.12e} below the minimum {min_m0:.12e} compatible with the rest"
            )),
        });
    }
    let shift = (m0 - min_m0).max(0.0);
    Ok(VectorDecision {
        admissible: true,
        witness: Some(FamilyState {
            params: family.params_at(beta),
            shift,
        }),
        beta: Some(beta),
        min_m0: Some(min_m0),
        reason: None,
    })
}
