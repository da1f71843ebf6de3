//! Dense univariate polynomials in a local coordinate, with exact calculus
//! and real-root isolation on a bounded interval.
//!
//! Root isolation recurses on the derivative: the real roots of `p'` split
//! `[lo, hi]` into monotone pieces, and each sign change is then bracketed
//! and polished by bisection. Degrees <= 2 use closed forms.

/// Coefficients are stored lowest degree first; the vector is never empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    /// Builds a polynomial, trimming exact trailing zeros.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Poly { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Poly { coeffs: vec![c] }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, u: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }

    /// Upper bound for |p| near `u`, used to scale zero tests.
    fn magnitude_at(&self, u: f64) -> f64 {
        let au = u.abs();
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * au + c.abs();
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() == 1 {
            return Poly::constant(0.0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Poly::new(coeffs)
    }

    /// Antiderivative with constant term `c0`.
    pub fn antiderivative(&self, c0: f64) -> Poly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(c0);
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / (k + 1) as f64);
        }
        Poly::new(coeffs)
    }

    /// Integral of `p` over `[0, h]`.
    pub fn definite_integral(&self, h: f64) -> f64 {
        let mut acc = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * h + c / (k + 1) as f64;
        }
        acc * h
    }

    pub fn scaled(&self, factor: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Adds `v` to the constant term, i.e. returns `p + v`.
    pub fn plus_constant(&self, v: f64) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += v;
        Poly::new(coeffs)
    }

    /// Taylor shift: returns `q` with `q(u) = p(u + dx)`.
    pub fn shift_origin(&self, dx: f64) -> Poly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = c[j + 1];
                c[j] += dx * next;
            }
        }
        Poly::new(c)
    }

    /// All real roots in `[lo, hi]`, ascending, deduplicated. Roots that land
    /// marginally outside are clamped to the nearest endpoint. The zero
    /// polynomial yields no roots.
    pub fn real_roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        if hi <= lo {
            return Vec::new();
        }
        let mut roots = self.roots_impl(lo, hi);
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let span = hi - lo;
        let mut out: Vec<f64> = Vec::with_capacity(roots.len());
        for r in roots {
            let r = r.clamp(lo, hi);
            match out.last() {
                Some(&prev) if (r - prev).abs() <= 1e-12 * (1.0 + span) => {}
                _ => out.push(r),
            }
        }
        out
    }

    fn roots_impl(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self.degree() {
            0 => Vec::new(),
            1 => {
                let root = -self.coeffs[0] / self.coeffs[1];
                if in_interval(root, lo, hi) {
                    vec![root]
                } else {
                    Vec::new()
                }
            }
            2 => self.quadratic_roots(lo, hi),
            _ => self.roots_by_monotone_pieces(lo, hi),
        }
    }

    fn quadratic_roots(&self, lo: f64, hi: f64) -> Vec<f64> {
        let (c0, c1, c2) = (self.coeffs[0], self.coeffs[1], self.coeffs[2]);
        if c2 == 0.0 {
            return Poly::new(vec![c0, c1]).roots_impl(lo, hi);
        }
        let disc = c1 * c1 - 4.0 * c2 * c0;
        let scale = c1 * c1 + (4.0 * c2 * c0).abs();
        let mut out = Vec::new();
        if disc < 0.0 {
            // Tolerate a grazing double root.
            if disc > -1e-12 * scale {
                let r = -c1 / (2.0 * c2);
                if in_interval(r, lo, hi) {
                    out.push(r);
                }
            }
            return out;
        }
        let sq = disc.sqrt();
        let q = -0.5 * (c1 + c1.signum() * sq);
        let (r1, r2) = if q == 0.0 {
            (0.0, -c1 / c2)
        } else {
            (q / c2, c0 / q)
        };
        for r in [r1, r2] {
            if in_interval(r, lo, hi) {
                out.push(r);
            }
        }
        out
    }

    fn roots_by_monotone_pieces(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut nodes = vec![lo];
        for c in self.derivative().real_roots_in(lo, hi) {
            if c > lo && c < hi {
                nodes.push(c);
            }
        }
        nodes.push(hi);

        let mut out = Vec::new();
        let zero_tol = |x: f64| 1e-13 * (self.magnitude_at(x) + f64::MIN_POSITIVE);
        for w in nodes.windows(2) {
            let (x0, x1) = (w[0], w[1]);
            let (f0, f1) = (self.eval(x0), self.eval(x1));
            if f0.abs() <= zero_tol(x0) {
                out.push(x0);
                continue;
            }
            if f1.abs() <= zero_tol(x1) {
                continue; // picked up as the next window's left endpoint, or below
            }
            if f0.signum() != f1.signum() {
                out.push(self.bisect(x0, x1, f0));
            }
        }
        let fh = self.eval(hi);
        if fh.abs() <= zero_tol(hi) {
            out.push(hi);
        }
        out
    }

    /// Bisection on a bracketing interval, followed by guarded Newton polish.
    fn bisect(&self, mut lo: f64, mut hi: f64, flo: f64) -> f64 {
        let sign_lo = flo.signum();
        for _ in 0..90 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = self.eval(mid);
            if fm == 0.0 {
                return mid;
            }
            if fm.signum() == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        let dp = self.derivative();
        for _ in 0..2 {
            let d = dp.eval(x);
            if d != 0.0 {
                let step = self.eval(x) / d;
                let xn = x - step;
                if xn >= lo && xn <= hi {
                    x = xn;
                }
            }
        }
        x
    }
}

fn in_interval(x: f64, lo: f64, hi: f64) -> bool {
    let slack = 1e-10 * (hi - lo);
    x >= lo - slack && x <= hi + slack
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_from_roots(roots: &[f64]) -> Poly {
        let mut c = vec![1.0];
        for &r in roots {
            // multiply by (u - r)
            let mut next = vec![0.0; c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= r * ck;
            }
            c = next;
        }
        Poly::new(c)
    }

    #[test]
    fn eval_and_shift() {
        let p = Poly::new(vec![1.0, -2.0, 3.0]); // 1 - 2u + 3u^2
        assert_eq!(p.eval(0.0), 1.0);
        assert_eq!(p.eval(2.0), 9.0);
        let q = p.shift_origin(1.5);
        for &u in &[-1.0, 0.0, 0.25, 2.0] {
            assert!((q.eval(u) - p.eval(u + 1.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn calculus_round_trip() {
        let p = Poly::new(vec![0.5, 1.0, -4.0, 2.0]);
        let ad = p.antiderivative(7.0);
        assert_eq!(ad.eval(0.0), 7.0);
        let back = ad.derivative();
        for &u in &[0.0, 0.3, 1.7] {
            assert!((back.eval(u) - p.eval(u)).abs() < 1e-12);
        }
        let exact = ad.eval(2.0) - ad.eval(0.0);
        assert!((p.definite_integral(2.0) - exact).abs() < 1e-12);
    }

    #[test]
    fn cubic_roots() {
        let p = poly_from_roots(&[0.2, 0.5, 0.9]);
        let roots = p.real_roots_in(0.0, 1.0);
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([0.2, 0.5, 0.9]) {
            assert!((r - want).abs() < 1e-12, "{r} vs {want}");
        }
    }

    #[test]
    fn double_root_is_found() {
        // (u - 0.4)^2 * (u - 2) has a grazing root at 0.4
        let p = poly_from_roots(&[0.4, 0.4, 2.0]);
        let roots = p.real_roots_in(0.0, 1.0);
        assert!(roots.iter().any(|r| (r - 0.4).abs() < 1e-6), "{roots:?}");
    }

    #[test]
    fn endpoint_roots() {
        let p = poly_from_roots(&[0.0, 1.0, 3.0]);
        let roots = p.real_roots_in(0.0, 1.0);
        assert!(roots.iter().any(|r| r.abs() < 1e-12));
        assert!(roots.iter().any(|r| (r - 1.0).abs() < 1e-12));
    }

    #[test]
    fn degree_six_random_style() {
        let roots = [0.11, 0.23, 0.37, 0.52, 0.68, 0.91];
        let p = poly_from_roots(&roots);
        let found = p.real_roots_in(0.0, 1.0);
        assert_eq!(found.len(), roots.len());
        for (f, w) in found.iter().zip(roots) {
            assert!((f - w).abs() < 1e-10, "{f} vs {w}");
        }
    }

    #[test]
    fn no_roots() {
        let p = Poly::new(vec![1.0, 0.0, 1.0]); // 1 + u^2
        assert!(p.real_roots_in(-10.0, 10.0).is_empty());
        assert!(Poly::constant(0.0).real_roots_in(0.0, 1.0).is_empty());
    }
}
