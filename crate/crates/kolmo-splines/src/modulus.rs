//! The modulus of continuity of `D^k` on norm-constrained classes, computed
//! by optimizing over the extremal spline family of the order vector, and the
//! sharp multi-norm inequality constants extracted from it.
//!
//! The solver works in scale-invariant shape coordinates (plateau widths
//! relative to the ramp width). For a fixed shape, the active constraint
//! together with `M_0 = delta` is linear in the logs of the amplitude and the
//! ramp width, so both are eliminated in closed form; what remains is an
//! unconstrained maximization over one or two shape ratios, done by a coarse
//! bracketing grid followed by golden-section refinement. A pure grid-search
//! oracle over the same closed-form system cross-validates the refined
//! optimizer in the tests.

use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::exec;
use crate::norms::{favard_norm, kolmogorov_constant, rodov_norm};
use crate::splines::{EulerParams, OrderCase, OrderVector, RodovParams};

/// A bound `M_order <= bound` of a box-shaped constraint region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderBound {
    pub order: usize,
    pub bound: f64,
}

/// One factor `M_order^theta` of a homogeneous functional.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomTerm {
    pub order: usize,
    pub theta: f64,
}

/// Constraint region over the upper derivative orders of an order vector.
///
/// `Box` bounds each listed order from above (omitted orders are unbounded);
/// `Homogeneous` constrains the product `prod M_s^{theta_s} <= level`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassSpec {
    Box { bounds: Vec<OrderBound> },
    Homogeneous { terms: Vec<HomTerm>, level: f64 },
}

impl ClassSpec {
    /// The four-norm first-derivative class: `M_2^(1-eta) * M_3^eta <= 1`,
    /// for the order vector `(0, 1, 2, 3)`.
    pub fn dragomir(eta: f64) -> Result<ClassSpec> {
        if !eta.is_finite() || eta <= 0.0 || eta >= 1.0 {
            return Err(Error::InvalidParams(format!(
                "eta must lie strictly between 0 and 1, got {eta}"
            )));
        }
        Ok(ClassSpec::Homogeneous {
            terms: vec![
                HomTerm {
                    order: 2,
                    theta: 1.0 - eta,
                },
                HomTerm {
                    order: 3,
                    theta: eta,
                },
            ],
            level: 1.0,
        })
    }

    /// Checks well-formedness against the order vector, including the
    /// compactness condition on the constraint region: a sequence whose top
    /// norm blows up must push some lower norm to zero. For a box region
    /// that means a finite bound on the top order; for a homogeneous one a
    /// strictly positive exponent on it.
    pub fn validate_for(&self, kk: &OrderVector) -> Result<()> {
        let upper = kk.upper();
        let r = kk.r();
        match self {
            ClassSpec::Box { bounds } => {
                let mut seen = Vec::new();
                for ob in bounds {
                    if !upper.contains(&ob.order) {
                        return Err(Error::UnsupportedSpec(format!(
                            "order {} is not an upper order of {:?}",
                            ob.order,
                            kk.entries()
                        )));
                    }
                    if seen.contains(&ob.order) {
                        return Err(Error::UnsupportedSpec(format!(
                            "duplicate bound for order {}",
                            ob.order
                        )));
                    }
                    seen.push(ob.order);
                    if !ob.bound.is_finite() || ob.bound <= 0.0 {
                        return Err(Error::UnsupportedSpec(format!(
                            "bound for order {} must be positive and finite",
                            ob.order
                        )));
                    }
                }
                if !seen.contains(&r) {
                    return Err(Error::UnsupportedSpec(format!(
                        "the top order {r} must carry a finite bound, otherwise the supremum \
                         is approached only in a degenerate limit"
                    )));
                }
                Ok(())
            }
            ClassSpec::Homogeneous { terms, level } => {
                if !level.is_finite() || *level <= 0.0 {
                    return Err(Error::UnsupportedSpec("level must be positive".into()));
                }
                let mut seen = Vec::new();
                let mut theta_sum = 0.0;
                let mut theta_top = 0.0;
                for t in terms {
                    if !upper.contains(&t.order) {
                        return Err(Error::UnsupportedSpec(format!(
                            "order {} is not an upper order of {:?}",
                            t.order,
                            kk.entries()
                        )));
                    }
                    if seen.contains(&t.order) {
                        return Err(Error::UnsupportedSpec(format!(
                            "duplicate exponent for order {}",
                            t.order
                        )));
                    }
                    seen.push(t.order);
                    if !t.theta.is_finite() || t.theta < 0.0 {
                        return Err(Error::UnsupportedSpec(format!(
                            "exponent for order {} must be non-negative",
                            t.order
                        )));
                    }
                    theta_sum += t.theta;
                    if t.order == r {
                        theta_top = t.theta;
                    }
                }
                if theta_sum <= 0.0 {
                    return Err(Error::UnsupportedSpec(
                        "at least one exponent must be positive".into(),
                    ));
                }
                if theta_top <= 0.0 {
                    return Err(Error::UnsupportedSpec(format!(
                        "the top order {r} must carry a positive exponent, otherwise the \
                         supremum is approached only in a degenerate limit"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Result of a modulus computation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModulusResult {
    pub omega: f64,
    /// Parameters of the maximizing spline; its `M_0` equals `delta`.
    pub argmax: RodovParams,
    pub delta: f64,
    /// False when the maximizer ran into the edge of the search window,
    /// which signals a supremum approached only in a degenerate limit.
    pub attained: bool,
}

/// One extremal problem with a single active constraint
/// `prod M_s^{theta_s} = level`, plus inactive box bounds to respect.
struct BindingProblem<'a> {
    kk: &'a OrderVector,
    theta: Vec<(usize, f64)>,
    level: f64,
    extras: Vec<(usize, f64)>,
    delta: f64,
    tol: Tolerances,
}

#[derive(Debug, Clone)]
struct Candidate {
    value: f64,
    params: RodovParams,
    runaway: bool,
}

impl<'a> BindingProblem<'a> {
    /// Norm of the unit-ramp spline `psi_m(rho_a, 1, rho_c)`.
    fn unit_norm(&self, m: usize, rho_a: f64, rho_c: f64) -> f64 {
        rodov_norm(m, rho_a, 1.0, rho_c)
    }

    /// Evaluates the objective at a plateau-to-ramp shape `(a/b, c/b)`.
    ///
    /// With the shape fixed, the active constraint and `M_0 = delta` form a
    /// 2x2 linear system in `(ln alpha, ln b)` (norms scale as
    /// `N_m(g * shape) = g^m N_m(shape)`), so both are solved in closed form
    /// and every shape is feasible up to the inactive box bounds. The
    /// objective then factorizes as `delta^e * G(shape)`, which makes the
    /// dilation power law exact and the maximizing shape independent of
    /// `delta`.
    fn eval_shape(&self, rho_a: f64, rho_c: f64) -> Option<Candidate> {
        if !rho_a.is_finite() || rho_a < 0.0 || !rho_c.is_finite() || rho_c < 0.0 {
            return None;
        }
        let (r, k) = (self.kk.r(), self.kk.k());
        let mut theta_sum = 0.0;
        let mut weighted = 0.0;
        let mut log_units = 0.0;
        for &(s_e, th) in &self.theta {
            theta_sum += th;
            weighted += th * s_e as f64;
            log_units += th * self.unit_norm(r - s_e, rho_a, rho_c).ln();
        }
        let ln_nr = self.unit_norm(r, rho_a, rho_c).ln();
        let ln_b =
            (theta_sum * (self.delta.ln() - ln_nr) + log_units - self.level.ln()) / weighted;
        let ln_alpha = self.delta.ln() - ln_nr - r as f64 * ln_b;
        let b = ln_b.exp();
        let alpha = ln_alpha.exp();
        if !b.is_finite() || b <= 0.0 || !alpha.is_finite() || alpha <= 0.0 {
            return None;
        }
        for &(s_e, bound) in &self.extras {
            let m_se = alpha * b.powi((r - s_e) as i32) * self.unit_norm(r - s_e, rho_a, rho_c);
            if m_se > bound * (1.0 + 1e-12) {
                return None;
            }
        }
        let value = alpha * b.powi((r - k) as i32) * self.unit_norm(r - k, rho_a, rho_c);
        if !value.is_finite() {
            return None;
        }
        Some(Candidate {
            value,
            params: RodovParams {
                a: rho_a * b,
                b,
                c: rho_c * b,
                s: r,
                alpha,
            },
            runaway: false,
        })
    }

    fn objective(&self, rho_a: f64, rho_c: f64) -> f64 {
        self.eval_shape(rho_a, rho_c)
            .map_or(f64::NEG_INFINITY, |c| c.value)
    }

    fn solve(&self) -> Option<Candidate> {
        match self.kk.case() {
            OrderCase::Adjacent => self.solve_1d(true),
            OrderCase::Gap => self.solve_1d(false),
            OrderCase::Full => self.solve_2d(),
            OrderCase::Classical => unreachable!(),
        }
    }

    fn solve_1d(&self, free_is_a: bool) -> Option<Candidate> {
        let pair = |rho: f64| if free_is_a { (rho, 0.0) } else { (0.0, rho) };
        let mut nodes = vec![0.0];
        nodes.extend(log_grid(1e-6, 1e6, 361));
        let values = exec::map_collect(nodes.len(), |i| {
            let (ra, rc) = pair(nodes[i]);
            self.objective(ra, rc)
        });
        let (best, best_val) = exec::argmax_f64_seq(values.len(), |i| values[i])?;
        if best_val == f64::NEG_INFINITY {
            return None;
        }
        let lo = nodes[best.saturating_sub(1)];
        let hi = nodes[(best + 1).min(nodes.len() - 1)];
        let (rho_star, v_star) = golden_max(
            |rho| {
                let (ra, rc) = pair(rho);
                self.objective(ra, rc)
            },
            lo,
            hi,
            self.tol.tol_opt,
        );
        // Keep the grid node unless refinement genuinely improved on it.
        let final_rho = if v_star > best_val { rho_star } else { nodes[best] };
        let (ra, rc) = pair(final_rho);
        let mut cand = self.eval_shape(ra, rc)?;
        cand.runaway = best == nodes.len() - 1;
        Some(cand)
    }

    fn solve_2d(&self) -> Option<Candidate> {
        let mut nodes = vec![0.0];
        nodes.extend(log_grid(1e-4, 1e3, 30));
        let n = nodes.len() * nodes.len();
        let values = exec::map_collect(n, |idx| {
            let (ai, ci) = (idx / nodes.len(), idx % nodes.len());
            self.objective(nodes[ai], nodes[ci])
        });
        let (best, best_val) = exec::argmax_f64_seq(n, |i| values[i])?;
        if best_val == f64::NEG_INFINITY {
            return None;
        }
        let (ai, ci) = (best / nodes.len(), best % nodes.len());
        let mut rho_a = nodes[ai];
        let mut rho_c = nodes[ci];
        let mut value = best_val;

        // Coordinate-wise golden ascent; moves are accepted only when they
        // improve the value, so the iterate stays on the best known point.
        let sweep = |rho_a: &mut f64, rho_c: &mut f64, value: &mut f64, factor: f64| {
            let mut improved = false;
            for axis in 0..2 {
                let cur = if axis == 0 { *rho_a } else { *rho_c };
                let (lo, hi) = if cur > 0.0 {
                    (cur / factor, cur * factor)
                } else {
                    (0.0, factor)
                };
                let (next, nv) = golden_max(
                    |x| {
                        if axis == 0 {
                            self.objective(x, *rho_c)
                        } else {
                            self.objective(*rho_a, x)
                        }
                    },
                    lo,
                    hi,
                    self.tol.tol_opt,
                );
                if nv > *value {
                    improved |= nv > *value * (1.0 + 1e-14);
                    if axis == 0 {
                        *rho_a = next;
                    } else {
                        *rho_c = next;
                    }
                    *value = nv;
                }
            }
            improved
        };
        for &factor in &[16.0, 8.0, 4.0, 2.0, 1.5, 1.2] {
            sweep(&mut rho_a, &mut rho_c, &mut value, factor);
        }
        for _ in 0..60 {
            if !sweep(&mut rho_a, &mut rho_c, &mut value, 1.05) {
                break;
            }
        }
        let mut cand = self.eval_shape(rho_a, rho_c)?;
        cand.runaway = ai + 1 == nodes.len() || ci + 1 == nodes.len();
        Some(cand)
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Golden-section maximization on `[lo, hi]`; tolerates `-inf` regions.
fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol_width: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let width_goal = tol_width * hi.abs().max(1.0);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= width_goal {
            break;
        }
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn better_candidate(x: Candidate, y: Candidate) -> Candidate {
    // Ties break toward smaller c, then smaller a, so output is deterministic.
    if y.value > x.value {
        return y;
    }
    if y.value < x.value {
        return x;
    }
    if y.params.c < x.params.c || (y.params.c == x.params.c && y.params.a < x.params.a) {
        y
    } else {
        x
    }
}

/// The modulus of continuity `omega(D^k, X; delta)`: the largest `M_k` among
/// functions of the class with `M_0 <= delta`, attained on the extremal
/// spline family of `kk` with `M_0` exactly `delta`.
///
/// Homogeneous constraints are imposed with equality (dilation makes the
/// boundary optimal); for box constraints each finite bound is tried as the
/// active one, with the others filtering the search.
pub fn modulus(
    kk: &OrderVector,
    spec: &ClassSpec,
    delta: f64,
    tol: &Tolerances,
) -> Result<ModulusResult> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "delta must be positive, got {delta}"
        )));
    }
    if kk.case() == OrderCase::Classical {
        return Err(Error::InvalidOrderVector(
            "the modulus solver needs one of the plateau-family order vectors".into(),
        ));
    }
    spec.validate_for(kk)?;

    let problems: Vec<BindingProblem> = match spec {
        ClassSpec::Homogeneous { terms, level } => {
            let theta: Vec<(usize, f64)> = terms
                .iter()
                .filter(|t| t.theta > 0.0)
                .map(|t| (t.order, t.theta))
                .collect();
            vec![BindingProblem {
                kk,
                theta,
                level: *level,
                extras: Vec::new(),
                delta,
                tol: tol.clone(),
            }]
        }
        ClassSpec::Box { bounds } => bounds
            .iter()
            .map(|active| BindingProblem {
                kk,
                theta: vec![(active.order, 1.0)],
                level: active.bound,
                extras: bounds
                    .iter()
                    .filter(|other| other.order != active.order)
                    .map(|other| (other.order, other.bound))
                    .collect(),
                delta,
                tol: tol.clone(),
            })
            .collect(),
    };

    let mut best: Option<Candidate> = None;
    for problem in &problems {
        if let Some(cand) = problem.solve() {
            best = Some(match best {
                Some(cur) => better_candidate(cur, cand),
                None => cand,
            });
        }
    }
    let best = best.ok_or_else(|| {
        Error::EmptyClass(format!(
            "no spline of the family satisfies the constraints with M_0 = {delta}"
        ))
    })?;
    Ok(ModulusResult {
        omega: best.value,
        argmax: best.params,
        delta,
        attained: !best.runaway,
    })
}

/// Dilation exponent of the modulus for a homogeneous class:
/// `omega(delta) = omega(1) * delta^e` with
/// `e = 1 - k * (sum theta) / (sum s * theta_s)`.
pub fn homogeneous_power_law_exponent(kk: &OrderVector, spec: &ClassSpec) -> Result<f64> {
    match spec {
        ClassSpec::Homogeneous { terms, .. } => {
            let theta_sum: f64 = terms.iter().map(|t| t.theta).sum();
            let weighted: f64 = terms.iter().map(|t| t.order as f64 * t.theta).sum();
            if weighted <= 0.0 {
                return Err(Error::UnsupportedSpec(
                    "all exponents vanish; no dilation law".into(),
                ));
            }
            Ok(1.0 - kk.k() as f64 * theta_sum / weighted)
        }
        ClassSpec::Box { .. } => Err(Error::UnsupportedSpec(
            "box regions have no closed dilation exponent in general; \
             use measure_power_law_exponent"
                .into(),
        )),
    }
}

/// Empirical dilation exponent `ln(omega(2 delta) / omega(delta)) / ln 2`,
/// for specs without a closed law (box regions with several active bounds).
pub fn measure_power_law_exponent(
    kk: &OrderVector,
    spec: &ClassSpec,
    delta: f64,
    tol: &Tolerances,
) -> Result<f64> {
    let w1 = modulus(kk, spec, delta, tol)?;
    let w2 = modulus(kk, spec, 2.0 * delta, tol)?;
    Ok((w2.omega / w1.omega).ln() / std::f64::consts::LN_2)
}

/// Pure grid-search oracle for the four-norm constant: exhaustive log grid
/// over the ramp width with the plateau width eliminated in closed form,
/// then three rounds of local re-gridding. Shares no code with the
/// golden-section path.
pub fn dragomir_grid_oracle(eta: f64, delta: f64, nodes: usize) -> f64 {
    assert!(eta > 0.0 && eta < 1.0 && delta > 0.0 && nodes >= 8);
    let b_max = (3.0 * delta).powf(1.0 / (2.0 + eta));
    let objective = |b: f64| -> f64 {
        // alpha = b^(eta-1); solve a >= 0 from alpha (a^2 b/2 + a b^2 + b^3/3) = delta
        let disc = b * b / 3.0 + 2.0 * delta * b.powf(-eta);
        let a = disc.sqrt() - b;
        if a < -1e-12 * b {
            return f64::NEG_INFINITY;
        }
        let a = a.max(0.0);
        b.powf(eta - 1.0) * (a * b + 0.5 * b * b)
    };

    let grid = log_grid(b_max * 1e-8, b_max, nodes);
    let (mut best_i, _) =
        exec::argmax_f64(nodes, |i| objective(grid[i])).expect("non-empty grid");
    let mut lo = grid[best_i.saturating_sub(1)];
    let mut hi = grid[(best_i + 1).min(nodes - 1)];
    let mut best_val = f64::NEG_INFINITY;
    for _ in 0..3 {
        let fine = 2001usize;
        let step = (hi - lo) / (fine - 1) as f64;
        let vals = exec::map_collect(fine, |i| objective(lo + step * i as f64));
        let (bi, bv) = exec::argmax_f64_seq(fine, |i| vals[i]).unwrap();
        best_i = bi;
        best_val = bv;
        let new_lo = lo + step * best_i.saturating_sub(1) as f64;
        let new_hi = lo + step * (best_i + 1).min(fine - 1) as f64;
        lo = new_lo;
        hi = new_hi;
    }
    best_val
}

/// The sharp constant of the four-norm first-derivative inequality.
///
/// Interior `eta` computes the modulus at `delta` in {0.5, 1, 2}, verifies the
/// dilation power law `omega(delta) = C * delta^((1+eta)/(2+eta))` to within
/// `tol_check` relative spread, and returns `C = omega(1)`. The endpoints
/// reduce exactly to the classical three-norm constants: `sqrt 2` at
/// `eta = 0` and `(9/8)^(1/3)` at `eta = 1`.
pub fn dragomir_constant(eta: f64, tol: &Tolerances) -> Result<f64> {
    if eta == 0.0 {
        return kolmogorov_constant(1, 2);
    }
    if eta == 1.0 {
        return kolmogorov_constant(1, 3);
    }
    if !eta.is_finite() || eta <= 0.0 || eta >= 1.0 {
        return Err(Error::InvalidParams(format!(
            "eta must lie in [0, 1], got {eta}"
        )));
    }
    let kk = OrderVector::new(&[0, 1, 2, 3])?;
    let spec = ClassSpec::dragomir(eta)?;
    let exponent = (1.0 + eta) / (2.0 + eta);
    let mut c_at = [0.0f64; 3];
    let mut omega_one = 0.0;
    for (i, &delta) in [0.5, 1.0, 2.0].iter().enumerate() {
        let res = modulus(&kk, &spec, delta, tol)?;
        c_at[i] = res.omega * delta.powf(-exponent);
        if delta == 1.0 {
            omega_one = res.omega;
        }
    }
    let c_min = c_at.iter().cloned().fold(f64::INFINITY, f64::min);
    let c_max = c_at.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let spread = (c_max - c_min) / c_at[1];
    if spread > tol.tol_check {
        return Err(Error::PowerLawMismatch {
            spread,
            tol: tol.tol_check,
        });
    }
    Ok(omega_one)
}

/// A test function whose derivative norms have closed or exact forms.
#[derive(Debug, Clone)]
pub enum TestFunction {
    Rodov(RodovParams),
    Euler(EulerParams),
    Sine { amplitude: f64, frequency: f64 },
}

impl TestFunction {
    pub fn derivative_norm(&self, order: usize) -> Result<f64> {
        match self {
            TestFunction::Rodov(p) => {
                if order > p.s {
                    return Err(Error::OrderTooHigh { order, s: p.s });
                }
                Ok(p.alpha * rodov_norm(p.s - order, p.a, p.b, p.c))
            }
            TestFunction::Euler(p) => {
                if order > p.r {
                    return Err(Error::OrderTooHigh { order, s: p.r });
                }
                Ok(p.amplitude
                    * p.lambda.powi(order as i32 - p.r as i32)
                    * favard_norm(p.r - order))
            }
            TestFunction::Sine {
                amplitude,
                frequency,
            } => Ok(amplitude * frequency.powi(order as i32)),
        }
    }
}

/// Evaluates the abstract inequality ratio
/// `M_k(f) / [ p^(1/h)(f) * omega(M_0(f) / p^(1/h)(f)) ]`
/// for a homogeneous spec with homogeneity degree `h = sum theta`; the ratio
/// is at most 1 for every function of the class and equals 1 on the
/// maximizing splines.
pub fn sharp_inequality_check(
    f: &TestFunction,
    kk: &OrderVector,
    spec: &ClassSpec,
    tol: &Tolerances,
) -> Result<f64> {
    let (terms, level) = match spec {
        ClassSpec::Homogeneous { terms, level } => (terms, *level),
        ClassSpec::Box { .. } => {
            return Err(Error::UnsupportedSpec(
                "the inequality ratio needs a homogeneous functional".into(),
            ))
        }
    };
    spec.validate_for(kk)?;
    let mut log_p = 0.0;
    let mut degree = 0.0;
    for t in terms {
        if t.theta == 0.0 {
            continue;
        }
        log_p += t.theta * f.derivative_norm(t.order)?.ln();
        degree += t.theta;
    }
    let scale = ((log_p - level.ln()) / degree).exp();
    let m0 = f.derivative_norm(0)?;
    let mk = f.derivative_norm(kk.k())?;
    let res = modulus(kk, spec, m0 / scale, tol)?;
    Ok(mk / (scale * res.omega))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::norm_vector;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn dragomir_kk() -> OrderVector {
        OrderVector::new(&[0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn dragomir_half_matches_cross_computed_value() {
        // Independently cross-computed from the same closed-form extremal
        // system (exhaustive scan + zoom in a separate environment).
        let c = dragomir_constant(0.5, &tol()).unwrap();
        assert!((c - 1.044_207_415_058).abs() < 1e-6, "C_1/2 = {c}");
    }

    #[test]
    fn dragomir_interior_agrees_with_grid_oracle() {
        for &eta in &[0.25, 0.75] {
            let refined = dragomir_constant(eta, &tol()).unwrap();
            let oracle = dragomir_grid_oracle(eta, 1.0, 200_000);
            assert!(
                (refined - oracle).abs() < 1e-5 * oracle,
                "eta = {eta}: {refined} vs {oracle}"
            );
        }
    }

    #[test]
    fn dragomir_endpoints_reduce_to_classical() {
        let c0 = dragomir_constant(0.0, &tol()).unwrap();
        assert_eq!(c0, kolmogorov_constant(1, 2).unwrap());
        let c1 = dragomir_constant(1.0, &tol()).unwrap();
        assert_eq!(c1, kolmogorov_constant(1, 3).unwrap());
        assert!(dragomir_constant(-0.1, &tol()).is_err());
        assert!(dragomir_constant(1.1, &tol()).is_err());
    }

    #[test]
    fn modulus_argmax_realizes_delta() {
        let kk = dragomir_kk();
        let spec = ClassSpec::dragomir(0.4).unwrap();
        let res = modulus(&kk, &spec, 2.0, &tol()).unwrap();
        assert!(res.attained);
        let nv = norm_vector(&res.argmax, &[0, 1]).unwrap();
        assert!(
            (nv.values()[0] - 2.0).abs() < 1e-9 * 2.0,
            "M_0 = {}",
            nv.values()[0]
        );
        assert!((nv.values()[1] - res.omega).abs() < 1e-9 * res.omega);
    }

    #[test]
    fn box_spec_recovers_classical_constant() {
        // (0,1,2,3) with M_3 <= 1 and M_2 effectively unbounded: the
        // classical three-norm modulus C(1,3) delta^(2/3).
        let kk = dragomir_kk();
        let spec = ClassSpec::Box {
            bounds: vec![
                OrderBound {
                    order: 2,
                    bound: 1e9,
                },
                OrderBound {
                    order: 3,
                    bound: 1.0,
                },
            ],
        };
        let c13 = kolmogorov_constant(1, 3).unwrap();
        for &delta in &[0.5, 1.0, 3.0] {
            let res = modulus(&kk, &spec, delta, &tol()).unwrap();
            let want = c13 * delta.powf(2.0 / 3.0);
            assert!(
                res.omega >= want - 1e-6 && res.omega <= want * (1.0 + 1e-6),
                "delta = {delta}: {} vs {want}",
                res.omega
            );
        }
    }

    #[test]
    fn modulus_never_exceeds_kolmogorov_bound() {
        let kk = dragomir_kk();
        let spec = ClassSpec::dragomir(0.6).unwrap();
        let res = modulus(&kk, &spec, 1.0, &tol()).unwrap();
        let mr = res.argmax.alpha; // M_r of the maximizer
        let bound = kolmogorov_constant(1, 3).unwrap() * 1.0f64 * mr.powf(1.0 / 3.0);
        assert!(res.omega <= bound * (1.0 + 1e-9), "{} vs {bound}", res.omega);
    }

    #[test]
    fn modulus_monotone_in_delta() {
        let kk = dragomir_kk();
        let spec = ClassSpec::dragomir(0.5).unwrap();
        let mut prev = 0.0;
        for &delta in &[0.5, 1.0, 2.0, 4.0] {
            let res = modulus(&kk, &spec, delta, &tol()).unwrap();
            assert!(res.omega > prev);
            prev = res.omega;
        }
    }

    #[test]
    fn degenerate_spec_rejected() {
        let kk = dragomir_kk();
        // eta = 0 written out: no exponent on the top order
        let spec = ClassSpec::Homogeneous {
            terms: vec![
                HomTerm {
                    order: 2,
                    theta: 1.0,
                },
                HomTerm {
                    order: 3,
                    theta: 0.0,
                },
            ],
            level: 1.0,
        };
        assert!(matches!(
            modulus(&kk, &spec, 1.0, &tol()),
            Err(Error::UnsupportedSpec(_))
        ));
        // box without a bound on the top order
        let spec = ClassSpec::Box {
            bounds: vec![OrderBound {
                order: 2,
                bound: 1.0,
            }],
        };
        assert!(matches!(
            modulus(&kk, &spec, 1.0, &tol()),
            Err(Error::UnsupportedSpec(_))
        ));
        assert!(modulus(&kk, &ClassSpec::dragomir(0.5).unwrap(), 0.0, &tol()).is_err());
    }

    #[test]
    fn sharp_inequality_ratios() {
        let kk = dragomir_kk();
        let spec = ClassSpec::dragomir(0.5).unwrap();
        // the maximizer itself: ratio 1
        let res = modulus(&kk, &spec, 1.3, &tol()).unwrap();
        let ratio =
            sharp_inequality_check(&TestFunction::Rodov(res.argmax), &kk, &spec, &tol()).unwrap();
        assert!((ratio - 1.0).abs() < 1e-6, "ratio = {ratio}");

        // a sine: strictly inside
        let sine = TestFunction::Sine {
            amplitude: 0.8,
            frequency: 1.7,
        };
        let ratio = sharp_inequality_check(&sine, &kk, &spec, &tol()).unwrap();
        assert!(ratio <= 1.0 + 1e-8 && ratio > 0.5, "ratio = {ratio}");

        // a random family spline: never above 1
        let p = RodovParams::new(0.3, 0.9, 0.0, 3, 2.0).unwrap();
        let ratio = sharp_inequality_check(&TestFunction::Rodov(p), &kk, &spec, &tol()).unwrap();
        assert!(ratio <= 1.0 + 1e-8, "ratio = {ratio}");
    }

    #[test]
    fn sharp_inequality_holds_for_euler_functions() {
        let kk = dragomir_kk();
        let spec = ClassSpec::dragomir(0.3).unwrap();
        for &lambda in &[0.5, 1.0, 2.5] {
            let f = TestFunction::Euler(EulerParams::new(lambda, 3, 1.7).unwrap());
            let ratio = sharp_inequality_check(&f, &kk, &spec, &tol()).unwrap();
            assert!(
                ratio <= 1.0 + 1e-8 && ratio > 0.8,
                "lambda = {lambda}: ratio = {ratio}"
            );
        }
    }

    #[test]
    fn box_spec_on_gap_pattern_recovers_classical() {
        let kk = OrderVector::new(&[0, 1, 2, 4]).unwrap();
        let spec = ClassSpec::Box {
            bounds: vec![
                OrderBound {
                    order: 2,
                    bound: 1e9,
                },
                OrderBound {
                    order: 4,
                    bound: 1.0,
                },
            ],
        };
        let c14 = kolmogorov_constant(1, 4).unwrap();
        let res = modulus(&kk, &spec, 1.0, &tol()).unwrap();
        assert!(
            (res.omega - c14).abs() < 1e-6 * c14,
            "{} vs {c14}",
            res.omega
        );
    }

    #[test]
    fn box_with_two_active_bounds() {
        let kk = dragomir_kk();
        let loose = |order: usize| OrderBound {
            order,
            bound: 1e9,
        };
        let tight2 = OrderBound {
            order: 2,
            bound: 0.4,
        };
        let tight3 = OrderBound {
            order: 3,
            bound: 1.0,
        };
        let both = ClassSpec::Box {
            bounds: vec![tight2, tight3],
        };
        let only3 = ClassSpec::Box {
            bounds: vec![loose(2), tight3],
        };
        let w_both = modulus(&kk, &both, 1.0, &tol()).unwrap().omega;
        let w_only3 = modulus(&kk, &only3, 1.0, &tol()).unwrap().omega;
        // tightening the second-derivative bound can only lower the modulus
        assert!(w_both <= w_only3 * (1.0 + 1e-12), "{w_both} vs {w_only3}");
        assert!(w_both > 0.0);
        // with two active bounds there is no exact dilation law; the measured
        // exponent is still a sensible number in (0, 1)
        let e = measure_power_law_exponent(&kk, &both, 1.0, &tol()).unwrap();
        assert!(e > 0.0 && e < 1.0, "measured exponent {e}");
    }

    #[test]
    fn power_law_exponent_formula() {
        let kk = dragomir_kk();
        let eta = 0.5;
        let spec = ClassSpec::dragomir(eta).unwrap();
        let e = homogeneous_power_law_exponent(&kk, &spec).unwrap();
        assert!((e - (1.0 + eta) / (2.0 + eta)).abs() < 1e-15);
        let measured = measure_power_law_exponent(&kk, &spec, 1.0, &tol()).unwrap();
        assert!((measured - e).abs() < 1e-6, "{measured} vs {e}");
    }

    #[test]
    fn spec_serde_round_trip() {
        let spec = ClassSpec::dragomir(0.25).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        let back: ClassSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);
    }
}
