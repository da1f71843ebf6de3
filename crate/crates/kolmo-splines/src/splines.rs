//! Construction of the extremal spline families: the three-plateau step
//! function and its periodic primitives (Rodov splines), the Euler perfect
//! splines as the zero-plateau special case, and the one-parameter norm-fitted
//! families used by the admissibility solver.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{rodov_norm, NormVector};
use crate::piecewise::PeriodicPiecewisePoly;
use crate::poly::Poly;

/// Parameters of the scaled Rodov spline `alpha * psi_s(a, b, c)`.
///
/// `a` is the flat width at the extreme plateaus, `b` the ramp width, `c` the
/// flat width at the zero plateaus; `s` is the primitive order and `alpha` a
/// positive amplitude. The period is `4(a + b + c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RodovParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub s: usize,
    pub alpha: f64,
}

impl RodovParams {
    pub fn new(a: f64, b: f64, c: f64, s: usize, alpha: f64) -> Result<Self> {
        let p = RodovParams { a, b, c, s, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.b.is_finite() || self.b <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "ramp width b must be positive, got {}",
                self.b
            )));
        }
        if !self.a.is_finite() || self.a < 0.0 || !self.c.is_finite() || self.c < 0.0 {
            return Err(Error::InvalidParams(format!(
                "plateau widths must be non-negative, got a = {}, c = {}",
                self.a, self.c
            )));
        }
        if !self.alpha.is_finite() || self.alpha <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "amplitude must be positive, got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Parameters of the scaled Euler perfect spline `amplitude * phi_{lambda, r}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerParams {
    pub lambda: f64,
    pub r: usize,
    pub amplitude: f64,
}

impl EulerParams {
    pub fn new(lambda: f64, r: usize, amplitude: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "frequency lambda must be positive, got {lambda}"
            )));
        }
        if r < 1 {
            return Err(Error::InvalidParams("order r must be at least 1".into()));
        }
        if !amplitude.is_finite() || amplitude <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "amplitude must be positive, got {amplitude}"
            )));
        }
        Ok(EulerParams {
            lambda,
            r,
            amplitude,
        })
    }
}

/// Shape of an admissible order vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderCase {
    /// `(0, k, r)`
    Classical,
    /// `(0, k, r-1, r)`
    Adjacent,
    /// `(0, k, r-2, r)`
    Gap,
    /// `(0, k, r-2, r-1, r)`
    Full,
}

/// A validated vector of derivative orders `(0, k, ..., r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderVector {
    entries: Vec<usize>,
    case: OrderCase,
}

impl OrderVector {
    /// Validates membership in the supported families: the classical triple
    /// `(0, k, r)` and the three multi-norm patterns `(0,k,r-1,r)`,
    /// `(0,k,r-2,r)` and `(0,k,r-2,r-1,r)`.
    pub fn new(entries: &[usize]) -> Result<Self> {
        let err = |msg: String| Err(Error::InvalidOrderVector(msg));
        if entries.first() != Some(&0) {
            return err(format!("first order must be 0, got {entries:?}"));
        }
        for w in entries.windows(2) {
            if w[1] <= w[0] {
                return err(format!("orders must be strictly increasing: {entries:?}"));
            }
        }
        let r = *entries.last().unwrap();
        let k = match entries.get(1) {
            Some(&k) => k,
            None => return err("need at least three orders".into()),
        };
        let case = match entries.len() {
            3 => {
                if k >= r {
                    return err(format!("need 0 < k < r in {entries:?}"));
                }
                OrderCase::Classical
            }
            4 if r >= 2 && entries[2] == r - 1 => {
                if k >= r - 1 {
                    return err(format!("need k < r-1 in {entries:?}"));
                }
                OrderCase::Adjacent
            }
            4 if r >= 2 && entries[2] == r - 2 => {
                if k >= r - 2 {
                    return err(format!("need k < r-2 in {entries:?}"));
                }
                OrderCase::Gap
            }
            5 if r >= 2 && entries[2] == r - 2 && entries[3] == r - 1 => {
                if k >= r - 2 {
                    return err(format!("need k < r-2 in {entries:?}"));
                }
                OrderCase::Full
            }
            _ => {
                return err(format!(
                    "{entries:?} matches none of (0,k,r), (0,k,r-1,r), (0,k,r-2,r), (0,k,r-2,r-1,r)"
                ))
            }
        };
        Ok(OrderVector {
            entries: entries.to_vec(),
            case,
        })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn case(&self) -> OrderCase {
        self.case
    }

    pub fn k(&self) -> usize {
        self.entries[1]
    }

    pub fn r(&self) -> usize {
        *self.entries.last().unwrap()
    }

    /// The suffix of higher derivative orders (everything past `k`).
    pub fn upper(&self) -> &[usize] {
        &self.entries[2..]
    }
}

/// Builds the spline `alpha * psi_s(a, b, c)` of period `4(a + b + c)`.
///
/// The order-zero function takes the value 1 on the ramp intervals of the
/// first half period, -1 on their mirror images in the second half, and 0 on
/// the plateaus; higher orders are repeated zero-mean periodic primitives.
pub fn build_rodov(params: &RodovParams) -> Result<PeriodicPiecewisePoly> {
    params.validate()?;
    let (a, b, c) = (params.a, params.b, params.c);
    let plan: [(f64, f64); 9] = [
        (a, 0.0),
        (b, 1.0),
        (2.0 * c, 0.0),
        (b, 1.0),
        (2.0 * a, 0.0),
        (b, -1.0),
        (2.0 * c, 0.0),
        (b, -1.0),
        (a, 0.0),
    ];
    let mut breakpoints = vec![0.0];
    let mut segments = Vec::new();
    let mut acc = 0.0;
    for (len, value) in plan {
        if len > 0.0 {
            acc += len;
            breakpoints.push(acc);
            segments.push(Poly::constant(value));
        }
    }
    let mut spline = PeriodicPiecewisePoly::new(breakpoints, segments)?;
    for _ in 0..params.s {
        spline = spline.antiderivative_zero_mean()?;
    }
    Ok(spline.scaled(params.alpha))
}

/// Builds `amplitude * phi_{lambda, r}`, the scaled Euler perfect spline,
/// as the zero-plateau Rodov spline with ramp width `pi / (2 lambda)`.
pub fn build_euler(params: &EulerParams) -> Result<PeriodicPiecewisePoly> {
    let b = std::f64::consts::FRAC_PI_2 / params.lambda;
    build_rodov(&RodovParams {
        a: 0.0,
        b,
        c: 0.0,
        s: params.r,
        alpha: params.amplitude,
    })
}

/// A one-parameter family `beta -> alpha * psi_r(shape(beta))` whose
/// derivative norms at the upper orders are independent of `beta`.
#[derive(Debug, Clone)]
pub struct SplineFamily {
    case: OrderCase,
    k: usize,
    r: usize,
    alpha: f64,
    b: f64,
    a_fixed: f64,
}

impl SplineFamily {
    pub fn case(&self) -> OrderCase {
        self.case
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Spline parameters at a given value of the free coordinate.
    pub fn params_at(&self, beta: f64) -> RodovParams {
        let (a, c) = match self.case {
            OrderCase::Adjacent => (beta, 0.0),
            OrderCase::Gap => (0.0, beta),
            OrderCase::Full => (self.a_fixed, beta),
            OrderCase::Classical => unreachable!("no family for classical triples"),
        };
        RodovParams {
            a,
            b: self.b,
            c,
            s: self.r,
            alpha: self.alpha,
        }
    }

    /// Reads the free coordinate back off a parameter set.
    pub fn beta_of(&self, params: &RodovParams) -> f64 {
        match self.case {
            OrderCase::Adjacent => params.a,
            OrderCase::Gap | OrderCase::Full => params.c,
            OrderCase::Classical => unreachable!(),
        }
    }

    pub fn spline_at(&self, beta: f64) -> PeriodicPiecewisePoly {
        build_rodov(&self.params_at(beta)).expect("family parameters are valid")
    }

    /// Exact derivative norm `M_order` of the family member at `beta`.
    pub fn norm_at(&self, order: usize, beta: f64) -> f64 {
        let p = self.params_at(beta);
        self.alpha * rodov_norm(self.r - order, p.a, p.b, p.c)
    }
}

/// A family member together with its vertical shift: the function
/// `alpha * psi_r(a, b, c) + shift`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyState {
    pub params: RodovParams,
    pub shift: f64,
}

/// Fits the one-parameter spline family matching the given norms at the
/// upper orders of `kk`, for every value of the free parameter.
///
/// Parameter assignments per case, with `M_s` the requested norms:
/// `(0,k,r-2,r)`: `alpha = M_r`, `b = sqrt(2 M_{r-2} / M_r)`, family
/// `alpha psi_r(0, b, beta)`; `(0,k,r-1,r)`: `alpha = M_r`,
/// `b = M_{r-1} / M_r`, family `alpha psi_r(beta, b, 0)`;
/// `(0,k,r-2,r-1,r)`: additionally
/// `a = M_{r-2}/M_{r-1} - M_{r-1}/(2 M_r)`, family `alpha psi_r(a, b, beta)`.
/// The five-order case requires `M_{r-1}^2 <= 2 M_{r-2} M_r`, otherwise no
/// function with these norms exists at all.
pub fn fit_family(kk: &OrderVector, upper_norms: &NormVector) -> Result<SplineFamily> {
    if kk.case() == OrderCase::Classical {
        return Err(Error::InvalidOrderVector(
            "classical triples (0,k,r) have no plateau family; use the Euler-spline route".into(),
        ));
    }
    if upper_norms.orders() != kk.upper() {
        return Err(Error::InvalidOrderVector(format!(
            "norm orders {:?} do not match the upper orders {:?}",
            upper_norms.orders(),
            kk.upper()
        )));
    }
    let (k, r) = (kk.k(), kk.r());
    let m = |order: usize| upper_norms.value_for(order).unwrap();

    let (alpha, b, a_fixed) = match kk.case() {
        OrderCase::Gap => {
            let alpha = m(r);
            (alpha, (2.0 * m(r - 2) / alpha).sqrt(), 0.0)
        }
        OrderCase::Adjacent => {
            let alpha = m(r);
            (alpha, m(r - 1) / alpha, 0.0)
        }
        OrderCase::Full => {
            let alpha = m(r);
            let b = m(r - 1) / alpha;
            let a = m(r - 2) / m(r - 1) - m(r - 1) / (2.0 * alpha);
            if a < -1e-12 * (m(r - 2) / m(r - 1)) {
                return Err(Error::InfeasibleNorms(format!(
                    "M_{}^2 = {:.6e} exceeds 2 M_{} M_{} = {:.6e}",
                    r - 1,
                    m(r - 1) * m(r - 1),
                    r - 2,
                    r,
                    2.0 * m(r - 2) * m(r)
                )));
            }
            (alpha, b, a.max(0.0))
        }
        OrderCase::Classical => unreachable!(),
    };

    Ok(SplineFamily {
        case: kk.case(),
        k,
        r,
        alpha,
        b,
        a_fixed,
    })
}
