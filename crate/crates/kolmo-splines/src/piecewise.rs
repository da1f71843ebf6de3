//! Periodic piecewise polynomials with exact calculus.
//!
//! A function is stored as breakpoints `0 = t_0 < t_1 < ... < t_m = T` over
//! one period plus one polynomial per segment in the local variable
//! `u = t - t_{i-1}`. Segments are half open `(t_{i-1}, t_i]`, matching the
//! step-function convention of the spline constructions; `t = 0` falls into
//! the last segment via periodicity. Local coordinates keep polynomial
//! conditioning independent of where a segment sits inside the period.

use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Debug, Clone)]
pub struct PeriodicPiecewisePoly {
    period: f64,
    breakpoints: Vec<f64>,
    segments: Vec<Poly>,
}

impl PeriodicPiecewisePoly {
    /// Builds from breakpoints (first must be 0, last is the period) and one
    /// polynomial per segment.
    pub fn new(breakpoints: Vec<f64>, segments: Vec<Poly>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidParams(
                "need at least two breakpoints".into(),
            ));
        }
        if breakpoints.len() != segments.len() + 1 {
            return Err(Error::InvalidParams(format!(
                "{} breakpoints require {} segments, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                segments.len()
            )));
        }
        if breakpoints[0] != 0.0 {
            return Err(Error::InvalidParams("first breakpoint must be 0".into()));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidParams("breakpoints must be finite".into()));
        }
        for w in breakpoints.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidParams(
                    "breakpoints must be strictly increasing".into(),
                ));
            }
        }
        let period = *breakpoints.last().unwrap();
        if !period.is_finite() || period <= 0.0 {
            return Err(Error::InvalidParams("period must be positive".into()));
        }
        Ok(PeriodicPiecewisePoly {
            period,
            breakpoints,
            segments,
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[Poly] {
        &self.segments
    }

    pub fn degree(&self) -> usize {
        self.segments.iter().map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Segment index and local coordinate for a point of `(0, T]`.
    fn locate(&self, tau: f64) -> (usize, f64) {
        let idx = self.breakpoints.partition_point(|&b| b < tau);
        let idx = idx.clamp(1, self.breakpoints.len() - 1);
        (idx - 1, tau - self.breakpoints[idx - 1])
    }

    /// Value at `t`, using the periodic extension.
    pub fn eval(&self, t: f64) -> f64 {
        let mut tau = t.rem_euclid(self.period);
        if tau == 0.0 {
            tau = self.period;
        }
        let (i, u) = self.locate(tau);
        self.segments[i].eval(u)
    }

    /// Segment-wise derivative; same breakpoints and period.
    pub fn differentiate(&self) -> PeriodicPiecewisePoly {
        PeriodicPiecewisePoly {
            period: self.period,
            breakpoints: self.breakpoints.clone(),
            segments: self.segments.iter().map(|p| p.derivative()).collect(),
        }
    }

    /// `n`-th segment-wise derivative.
    pub fn differentiate_n(&self, n: usize) -> PeriodicPiecewisePoly {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.differentiate();
        }
        out
    }

    /// Mean value over one period, from exact per-segment integration.
    pub fn mean(&self) -> f64 {
        self.integral_over_period() / self.period
    }

    fn integral_over_period(&self) -> f64 {
        self.breakpoints
            .windows(2)
            .zip(&self.segments)
            .map(|(w, p)| p.definite_integral(w[1] - w[0]))
            .sum()
    }

    /// The periodic antiderivative with zero mean. Requires the function to
    /// have zero mean itself, otherwise no periodic antiderivative exists.
    pub fn antiderivative_zero_mean(&self) -> Result<PeriodicPiecewisePoly> {
        let integral = self.integral_over_period();
        let tol = 1e-10 * self.period * self.sup_norm().max(f64::MIN_POSITIVE);
        if integral.abs() > tol {
            return Err(Error::NonZeroMean { integral, tol });
        }

        let mut segments = Vec::with_capacity(self.segments.len());
        let mut running = 0.0;
        for (w, p) in self.breakpoints.windows(2).zip(&self.segments) {
            let anti = p.antiderivative(running);
            running = anti.eval(w[1] - w[0]);
            segments.push(anti);
        }
        let primitive = PeriodicPiecewisePoly {
            period: self.period,
            breakpoints: self.breakpoints.clone(),
            segments,
        };
        let m = primitive.mean();
        Ok(PeriodicPiecewisePoly {
            period: primitive.period,
            breakpoints: primitive.breakpoints,
            segments: primitive
                .segments
                .into_iter()
                .map(|p| p.plus_constant(-m))
                .collect(),
        })
    }

    /// Exact uniform norm: per segment, the maximum of |p| over endpoint
    /// values and the real critical points of the segment polynomial.
    pub fn sup_norm(&self) -> f64 {
        let mut best: f64 = 0.0;
        for (w, p) in self.breakpoints.windows(2).zip(&self.segments) {
            let h = w[1] - w[0];
            best = best.max(p.eval(0.0).abs()).max(p.eval(h).abs());
            if p.degree() >= 2 {
                for u in p.derivative().real_roots_in(0.0, h) {
                    best = best.max(p.eval(u).abs());
                }
            }
        }
        best
    }

    /// Returns the function scaled by a constant factor.
    pub fn scaled(&self, factor: f64) -> PeriodicPiecewisePoly {
        PeriodicPiecewisePoly {
            period: self.period,
            breakpoints: self.breakpoints.clone(),
            segments: self.segments.iter().map(|p| p.scaled(factor)).collect(),
        }
    }

    /// Returns `g(t) = f(t + tau)`: the same function translated in time.
    pub fn translate(&self, tau: f64) -> PeriodicPiecewisePoly {
        let t_mod = tau.rem_euclid(self.period);
        if t_mod == 0.0 {
            return self.clone();
        }
        let mut cuts: Vec<f64> = vec![0.0, self.period];
        for &b in &self.breakpoints {
            let s = (b - t_mod).rem_euclid(self.period);
            cuts.push(s);
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * self.period);

        let mut segments = Vec::with_capacity(cuts.len() - 1);
        for w in cuts.windows(2) {
            // Locate via the midpoint: anchoring on w[0] is unstable when
            // w[0] + tau rounds to either side of the period seam.
            let mid = 0.5 * (w[0] + w[1]);
            let src = (mid + t_mod).rem_euclid(self.period);
            let (i, u_mid) = self.locate(src);
            let offset = u_mid - 0.5 * (w[1] - w[0]);
            segments.push(self.segments[i].shift_origin(offset));
        }
        PeriodicPiecewisePoly {
            period: self.period,
            breakpoints: cuts,
            segments,
        }
    }

    /// All `t` in `(0, T]` with `f(t) = level`, solved segment by segment.
    pub fn level_set(&self, level: f64) -> Vec<f64> {
        let mut out = Vec::new();
        for (w, p) in self.breakpoints.windows(2).zip(&self.segments) {
            let h = w[1] - w[0];
            for u in p.plus_constant(-level).real_roots_in(0.0, h) {
                out.push(w[0] + u);
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * self.period);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Square wave of period 4: 1 on (0,1], -1 on (2,3], 0 elsewhere.
    fn square_wave() -> PeriodicPiecewisePoly {
        PeriodicPiecewisePoly::new(
            vec![0.0, 1.0, 2.0, 3.0, 4.0],
            vec![
                Poly::constant(1.0),
                Poly::constant(0.0),
                Poly::constant(-1.0),
                Poly::constant(0.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn eval_reads_segments_and_periodicity() {
        let sq = square_wave();
        assert_eq!(sq.eval(0.5), 1.0);
        assert_eq!(sq.eval(4.5), 1.0);
        assert_eq!(sq.eval(2.5), -1.0);
        assert_eq!(sq.eval(-1.5), -1.0);
        assert_eq!(sq.eval(0.0), 0.0); // last segment owns the seam
    }

    #[test]
    fn eval_periodicity_is_exact_on_dyadic_points() {
        let sq = square_wave();
        for k in 0..64 {
            let t = k as f64 / 16.0;
            assert_eq!(sq.eval(t + 4.0), sq.eval(t));
            assert_eq!(sq.eval(t - 8.0), sq.eval(t));
        }
    }

    #[test]
    fn mean_and_antiderivative() {
        let sq = square_wave();
        assert_eq!(sq.mean(), 0.0);
        let tri = sq.antiderivative_zero_mean().unwrap();
        assert!(tri.mean().abs() < 1e-14);
        assert_eq!(tri.degree(), 1);
        // derivative returns the square wave away from breakpoints
        let back = tri.differentiate();
        for &t in &[0.4, 1.3, 2.2, 3.7] {
            assert!((back.eval(t) - sq.eval(t)).abs() < 1e-13);
        }
    }

    #[test]
    fn nonzero_mean_is_rejected() {
        let c = PeriodicPiecewisePoly::new(vec![0.0, 1.0], vec![Poly::constant(3.0)]).unwrap();
        assert_eq!(c.mean(), 3.0);
        assert!(matches!(
            c.antiderivative_zero_mean(),
            Err(Error::NonZeroMean { .. })
        ));
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let c = PeriodicPiecewisePoly::new(vec![0.0, 1.0], vec![Poly::constant(5.0)]).unwrap();
        let d = c.differentiate();
        assert_eq!(d.sup_norm(), 0.0);
        assert_eq!(d.eval(0.3), 0.0);
    }

    #[test]
    fn zero_function_round_trip() {
        let z = PeriodicPiecewisePoly::new(vec![0.0, 2.0], vec![Poly::constant(0.0)]).unwrap();
        let a = z.antiderivative_zero_mean().unwrap();
        assert_eq!(a.sup_norm(), 0.0);
    }

    #[test]
    fn sup_norm_with_interior_extremum() {
        // p(u) = u(2-u) on (0,2], peak value 1 at u=1
        let p = PeriodicPiecewisePoly::new(
            vec![0.0, 2.0],
            vec![Poly::new(vec![0.0, 2.0, -1.0])],
        )
        .unwrap();
        assert!((p.sup_norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn translate_matches_shifted_eval() {
        let sq = square_wave();
        let tri = sq.antiderivative_zero_mean().unwrap();
        let shifted = tri.translate(0.7);
        for k in 0..97 {
            let t = 4.0 * k as f64 / 97.0;
            assert!(
                (shifted.eval(t) - tri.eval(t + 0.7)).abs() < 1e-13,
                "t = {t}"
            );
        }
    }

    #[test]
    fn level_set_finds_all_crossings() {
        let sq = square_wave();
        let tri = sq.antiderivative_zero_mean().unwrap(); // triangle-ish wave
        let levels = tri.level_set(0.0);
        // odd zero-mean wave: crosses zero twice per period
        assert_eq!(levels.len(), 2, "{levels:?}");
    }

    #[test]
    fn invalid_constructions() {
        assert!(PeriodicPiecewisePoly::new(vec![0.0], vec![]).is_err());
        assert!(
            PeriodicPiecewisePoly::new(vec![1.0, 2.0], vec![Poly::constant(0.0)]).is_err()
        );
        assert!(
            PeriodicPiecewisePoly::new(vec![0.0, 0.0], vec![Poly::constant(0.0)]).is_err()
        );
    }
}
