//! Double-exponential (tanh–sinh) quadrature on segments with algebraic endpoint singularities.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const START_LEVEL: u32 = 5;
pub const MAX_LEVEL: u32 = 12;
const T_MAX: f64 = 4.5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub level: u32,
    /// |S_level − S_{level−1}|
    pub change: f64,
    pub evaluations: usize,
}

/// A point of the segment [a, b] together with its offsets from both ends, each computed
/// without cancellation.
#[derive(Clone, Copy, Debug)]
pub struct SegmentPoint {
    pub z: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub from_a: Complex64,
    pub from_b: Complex64,
}

impl SegmentPoint {
    /// z − c, taken from the nearer endpoint.
    pub fn offset(&self, c: Complex64) -> Complex64 {
        if self.from_a.norm_sqr() <= self.from_b.norm_sqr() {
            (self.a - c) + self.from_a
        } else {
            (self.b - c) + self.from_b
        }
    }
}

pub trait Integrand: Sync {
    fn eval(&self, p: &SegmentPoint) -> Complex64;
}

impl<F: Fn(&SegmentPoint) -> Complex64 + Sync> Integrand for F {
    fn eval(&self, p: &SegmentPoint) -> Complex64 {
        self(p)
    }
}

/// ((z − a)(b − z))^α with principal powers; the Beta-function oracle weight.
#[derive(Clone, Copy, Debug)]
pub struct EndpointWeight {
    pub alpha: f64,
}

impl Integrand for EndpointWeight {
    fn eval(&self, p: &SegmentPoint) -> Complex64 {
        p.from_a.powf(self.alpha) * (-p.from_b).powf(self.alpha)
    }
}

/// ∫₀¹ f(s, 1 − s) ds, with 1 − s supplied separately so endpoint distances keep full precision.
pub fn tanh_sinh(f: impl Fn(f64, f64) -> Complex64, tol: f64) -> Result<QuadratureResult> {
    if !(tol > 0.0) {
        return Err(Error::Input(format!("tol = {tol:e} must be positive")));
    }
    let half_pi = std::f64::consts::FRAC_PI_2;
    let node = |t: f64| -> (Complex64, f64) {
        let u = half_pi * t.sinh();
        let s = 1.0 / (1.0 + (-2.0 * u).exp());
        let r = 1.0 / (1.0 + (2.0 * u).exp());
        let w = std::f64::consts::PI * t.cosh() * s * r;
        if w == 0.0 || s == 0.0 || r == 0.0 {
            return (Complex64::new(0.0, 0.0), 0.0);
        }
        let v = f(s, r) * w;
        if v.re.is_finite() && v.im.is_finite() {
            (v, v.norm())
        } else {
            (Complex64::new(0.0, 0.0), 0.0)
        }
    };
    let mut evals = 0usize;
    let h0 = 0.5f64.powi(START_LEVEL as i32);
    let n0 = (T_MAX / h0).ceil() as i64;
    let (mut sum, mut abs) = (Complex64::new(0.0, 0.0), 0.0);
    for k in -n0..=n0 {
        let (v, a) = node(k as f64 * h0);
        sum += v;
        abs += a;
        evals += 1;
    }
    let mut h = h0;
    let mut prev = sum * h;
    for level in START_LEVEL + 1..=MAX_LEVEL {
        h /= 2.0;
        let n = (T_MAX / h).ceil() as i64;
        for k in (-n..=n).filter(|k| k.rem_euclid(2) == 1) {
            let (v, a) = node(k as f64 * h);
            sum += v;
            abs += a;
            evals += 1;
        }
        let cur = sum * h;
        let change = (cur - prev).norm();
        if change <= tol * (abs * h).max(cur.norm()) {
            return Ok(QuadratureResult { value: cur, level, change, evaluations: evals });
        }
        if level == MAX_LEVEL {
            return Err(Error::Quadrature { level, estimate: cur.norm(), change });
        }
        prev = cur;
    }
    unreachable!("loop returns at MAX_LEVEL")
}

/// ∫ₐᵇ f(z) dz along the straight segment.
pub fn segment_integral(f: &impl Integrand, a: Complex64, b: Complex64, tol: f64) -> Result<QuadratureResult> {
    let d = b - a;
    if d == Complex64::new(0.0, 0.0) {
        return Ok(QuadratureResult { value: d, level: 0, change: 0.0, evaluations: 0 });
    }
    let mut r = tanh_sinh(|s, t| f.eval(&SegmentPoint { z: a + d * s, a, b, from_a: d * s, from_b: -d * t }), tol)?;
    r.value *= d;
    r.change *= d.norm();
    Ok(r)
}

/// Γ(2/3)²/Γ(4/3), the Beta value B(2/3, 2/3).
pub fn beta_two_thirds() -> f64 {
    libm::tgamma(2.0 / 3.0).powi(2) / libm::tgamma(4.0 / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use statrs::function::gamma::gamma;

    fn beta_oracle() -> f64 {
        gamma(2.0 / 3.0).powi(2) / gamma(4.0 / 3.0)
    }

    #[test]
    fn beta_value() {
        let w = EndpointWeight { alpha: -1.0 / 3.0 };
        let r = segment_integral(&w, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), 1e-12).unwrap();
        assert!((r.value.re - beta_oracle()).abs() < 1e-13 * beta_oracle(), "{:?}", r);
        assert!(r.value.im.abs() < 1e-15);
        assert!((beta_two_thirds() - beta_oracle()).abs() < 1e-13);
    }

    #[test]
    fn two_thirds_singularity() {
        // ∫₀¹ s^{-2/3} ds = 3
        let r = tanh_sinh(|s, _| Complex64::new(s.powf(-2.0 / 3.0), 0.0), 1e-12).unwrap();
        assert!((r.value.re - 3.0).abs() < 1e-11);
    }

    #[test]
    fn reversal_negates() {
        let w = EndpointWeight { alpha: -1.0 / 3.0 };
        let (a, b) = (Complex64::new(0.3, 0.0), Complex64::new(2.1, 0.0));
        let f = segment_integral(&w, a, b, 1e-12).unwrap().value;
        let g = segment_integral(&|p: &SegmentPoint| w.eval(&SegmentPoint { z: p.z, a: p.b, b: p.a, from_a: p.from_b, from_b: p.from_a }), b, a, 1e-12).unwrap().value;
        assert!((f + g).norm() < 1e-13);
    }

    #[test]
    fn nonconvergence_is_reported() {
        let r = tanh_sinh(|s, _| Complex64::new((2000.0 * s).sin(), 0.0), 1e-15);
        assert!(matches!(r, Err(Error::Quadrature { level: MAX_LEVEL, .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn scaling_law(a in -10.0f64..10.0, len in 0.01f64..20.0) {
            let w = EndpointWeight { alpha: -1.0 / 3.0 };
            let r = segment_integral(&w, Complex64::new(a, 0.0), Complex64::new(a + len, 0.0), 1e-12).unwrap();
            let want = len.cbrt() * beta_oracle();
            prop_assert!((r.value.re - want).abs() < 1e-12 * want);
        }
    }
}
