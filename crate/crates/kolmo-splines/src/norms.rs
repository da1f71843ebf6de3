//! Derivative norm vectors of the spline families, together with the
//! classical sharp constants built from the Euler perfect splines.
//!
//! Norms of `alpha * psi_s(a,b,c)` reduce to norms of lower-order splines:
//! `M_j = alpha * ||psi_{s-j}||`. The first few have closed forms
//! (`||psi_0|| = 1`, `||psi_1|| = b`, `||psi_2|| = ab + b^2/2`, and
//! `||psi_3(a,b,0)|| = a^2 b/2 + a b^2 + b^3/3`); everything else is an exact
//! piecewise-polynomial extremum.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::splines::{build_rodov, RodovParams};

/// Positive derivative norms, one per (strictly increasing) order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormVector {
    orders: Vec<usize>,
    values: Vec<f64>,
}

impl NormVector {
    pub fn new(orders: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if orders.len() != values.len() {
            return Err(Error::InvalidParams(format!(
                "{} orders vs {} values",
                orders.len(),
                values.len()
            )));
        }
        if orders.is_empty() {
            return Err(Error::InvalidParams("empty norm vector".into()));
        }
        for w in orders.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidParams(
                    "norm orders must be strictly increasing".into(),
                ));
            }
        }
        for &v in &values {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidParams(format!(
                    "norm values must be positive, got {v}"
                )));
            }
        }
        Ok(NormVector { orders, values })
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_for(&self, order: usize) -> Option<f64> {
        self.orders
            .iter()
            .position(|&o| o == order)
            .map(|i| self.values[i])
    }

    /// Restriction to a subset of orders (which must all be present).
    pub fn restrict(&self, orders: &[usize]) -> Result<NormVector> {
        let mut values = Vec::with_capacity(orders.len());
        for &o in orders {
            match self.value_for(o) {
                Some(v) => values.push(v),
                None => {
                    return Err(Error::InvalidParams(format!(
                        "order {o} not present in norm vector"
                    )))
                }
            }
        }
        NormVector::new(orders.to_vec(), values)
    }
}

/// Uniform norm of the unit-amplitude spline `psi_j(a, b, c)`.
///
/// Closed forms are used where available, the exact piecewise extremum
/// otherwise. Panics on invalid widths; callers validate parameters first.
pub fn rodov_norm(j: usize, a: f64, b: f64, c: f64) -> f64 {
    assert!(b > 0.0 && a >= 0.0 && c >= 0.0, "invalid spline widths");
    match j {
        0 => 1.0,
        1 => b,
        2 => a * b + 0.5 * b * b,
        3 if c == 0.0 => 0.5 * a * a * b + a * b * b + b * b * b / 3.0,
        _ => build_rodov(&RodovParams {
            a,
            b,
            c,
            s: j,
            alpha: 1.0,
        })
        .expect("valid widths")
        .sup_norm(),
    }
}

/// Derivative norms `M_j(alpha * psi_s) = alpha * ||psi_{s-j}||` for the
/// requested orders.
pub fn norm_vector(params: &RodovParams, orders: &[usize]) -> Result<NormVector> {
    params.validate()?;
    let mut values = Vec::with_capacity(orders.len());
    for &j in orders {
        if j > params.s {
            return Err(Error::OrderTooHigh {
                order: j,
                s: params.s,
            });
        }
        values.push(params.alpha * rodov_norm(params.s - j, params.a, params.b, params.c));
    }
    NormVector::new(orders.to_vec(), values)
}

/// The Favard constant `||phi_r||` at unit frequency, from the series
/// `(4/pi) * sum_j (-1)^{j(r+1)} / (2j+1)^{r+1}`.
///
/// For even `r` the series alternates and is summed until the next term
/// drops below 1e-15 (which then bounds the tail). For odd `r` all terms are
/// positive and the tail decays too slowly for that rule, so the partial sum
/// is completed with an Euler-Maclaurin tail estimate whose own error is far
/// below double precision.
pub fn favard_norm(r: usize) -> f64 {
    if r == 0 {
        return 1.0;
    }
    let p = (r + 1) as i32;
    let four_over_pi = 4.0 / PI;
    if r.is_multiple_of(2) {
        let mut sum = 0.0;
        let mut sign = 1.0;
        let mut j = 0usize;
        loop {
            let term = ((2 * j + 1) as f64).powi(-p);
            if term < 1e-15 {
                break;
            }
            sum += sign * term;
            sign = -sign;
            j += 1;
        }
        four_over_pi * sum
    } else {
        let n = 100_000usize;
        let mut sum = 0.0;
        for j in (0..n).rev() {
            sum += ((2 * j + 1) as f64).powi(-p);
        }
        let x = (2 * n + 1) as f64;
        let pf = p as f64;
        let tail =
            x.powi(1 - p) / (2.0 * (pf - 1.0)) + 0.5 * x.powi(-p) + pf / 6.0 * x.powi(-(p + 1));
        four_over_pi * (sum + tail)
    }
}

/// The same constant computed from the spline itself: the exact uniform norm
/// of the unit-frequency Euler perfect spline. Cross-validates `favard_norm`.
pub fn favard_norm_spline(r: usize) -> f64 {
    build_rodov(&RodovParams {
        a: 0.0,
        b: std::f64::consts::FRAC_PI_2,
        c: 0.0,
        s: r,
        alpha: 1.0,
    })
    .expect("valid widths")
    .sup_norm()
}

/// The sharp constant `||phi_{r-k}|| / ||phi_r||^{1 - k/r}` of the classical
/// three-norm inequality.
pub fn kolmogorov_constant(k: usize, r: usize) -> Result<f64> {
    if k == 0 || k >= r {
        return Err(Error::BadOrders { k, r });
    }
    let exponent = 1.0 - k as f64 / r as f64;
    Ok(favard_norm(r - k) / favard_norm(r).powf(exponent))
}
