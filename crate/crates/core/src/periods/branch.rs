//! Branch points, the slit cut system and sheet-indexed branches of w = ∏(z − λᵢ)^{1/3}.
//!
//! Cuts are the vertical slits {Re z = λᵢ, Im z < 0}. On sheet 0 each factor (z − λᵢ)^{1/3}
//! is taken with arg(z − λᵢ) ∈ (−π/2, 3π/2], which is the principal root on the upper half
//! plane. Sheet k carries w = ωᵏ·w₀. Crossing slit i from left to right raises k by one.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::OMEGA;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BranchData {
    lambda: [f64; 6],
}

impl BranchData {
    pub fn new(lambda: [f64; 6]) -> Result<Self> {
        if lambda.iter().any(|l| !l.is_finite()) {
            return Err(Error::Input("non-finite branch point".into()));
        }
        if lambda.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Input(format!("branch points {lambda:?} are not strictly increasing")));
        }
        Ok(Self { lambda })
    }

    pub fn from_slice(v: &[f64]) -> Result<Self> {
        let arr: [f64; 6] = v.try_into().map_err(|_| Error::Input(format!("expected 6 branch points, got {}", v.len())))?;
        Self::new(arr)
    }

    pub fn lambda(&self) -> &[f64; 6] {
        &self.lambda
    }

    pub fn min_gap(&self) -> f64 {
        self.lambda.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    pub fn points(&self) -> [Complex64; 6] {
        self.lambda.map(|l| Complex64::new(l, 0.0))
    }

    /// Index i (0-based) with z = λᵢ exactly.
    pub fn branch_index(&self, z: Complex64) -> Option<usize> {
        (z.im == 0.0).then(|| self.lambda.iter().position(|&l| l == z.re)).flatten()
    }

    /// w₀^p from the six offsets z − λᵢ.
    pub fn w0_pow_from_offsets(offsets: &[Complex64; 6], p: u32) -> Complex64 {
        let mut log_mod = 0.0;
        let mut arg = 0.0;
        for d in offsets {
            log_mod += d.norm().ln();
            arg += slit_arg(*d);
        }
        let e = p as f64 / 3.0;
        Complex64::from_polar((e * log_mod).exp(), e * arg)
    }

    pub fn w0(&self, z: Complex64) -> Result<Complex64> {
        if let Some(i) = self.branch_index(z) {
            return Err(Error::SingularPoint(format!("z = {} is the branch point λ{}", z.re, i + 1)));
        }
        let offsets = self.lambda.map(|l| z - l);
        if offsets.iter().any(|d| d.norm() == 0.0) {
            return Err(Error::SingularPoint(format!("z = {z} is a branch point")));
        }
        Ok(Self::w0_pow_from_offsets(&offsets, 1))
    }
}

/// arg in (−π/2, 3π/2].
pub fn slit_arg(d: Complex64) -> f64 {
    let a = d.im.atan2(d.re);
    if a <= -PI / 2.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

pub fn omega_pow(k: i64) -> Complex64 {
    match k.rem_euclid(3) {
        0 => Complex64::new(1.0, 0.0),
        1 => OMEGA,
        _ => OMEGA.conj(),
    }
}

/// ωᵏ·w₀(z).
pub fn w_on_sheet(z: Complex64, sheet: u8, branch: &BranchData) -> Result<Complex64> {
    if sheet > 2 {
        return Err(Error::Input(format!("sheet {sheet} is not in 0..=2")));
    }
    Ok(omega_pow(sheet as i64) * branch.w0(z)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn data() -> BranchData {
        BranchData::new([0.0, 1.0, 2.0, 3.0, 4.0, 5.0]).unwrap()
    }

    #[test]
    fn ordering_is_enforced() {
        assert!(BranchData::new([0.0, 2.0, 1.0, 3.0, 4.0, 5.0]).is_err());
        assert!(BranchData::new([0.0, 1.0, 1.0, 3.0, 4.0, 5.0]).is_err());
        assert!(BranchData::from_slice(&[0.0, 1.0]).is_err());
    }

    #[test]
    fn branch_point_is_singular() {
        assert!(matches!(w_on_sheet(Complex64::new(3.0, 0.0), 0, &data()), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn real_gap_phases() {
        // on (λⱼ, λⱼ₊₁) the phase is (6 − j)π/3
        let b = data();
        for j in 1..=5 {
            let w = b.w0(Complex64::new(j as f64 - 0.5, 0.0)).unwrap();
            let want = (6 - j) as f64 * PI / 3.0;
            assert!((w.arg().rem_euclid(2.0 * PI) - want.rem_euclid(2.0 * PI)).abs() < 1e-14);
        }
    }

    #[test]
    fn monodromy_of_a_small_loop() {
        // numerical continuation around λ₃ counter-clockwise, nearest cube root at each step
        let b = data();
        let center = 2.0;
        let n = 4000;
        let z = |k: usize| Complex64::new(center, 0.0) + Complex64::from_polar(0.3, 2.0 * PI * k as f64 / n as f64);
        let start = b.w0(z(0)).unwrap();
        let mut cur = start;
        for k in 1..=n {
            let w = b.w0(z(k)).unwrap();
            cur = (0..3).map(|s| omega_pow(s) * w).min_by(|p, q| (p - cur).norm().partial_cmp(&(q - cur).norm()).unwrap()).unwrap();
        }
        assert!((cur / start - OMEGA).norm() < 1e-12);
    }

    proptest! {
        #[test]
        fn cube_is_the_product(re in -2.0f64..7.0, im in -3.0f64..3.0, k in 0u8..3) {
            let b = data();
            let z = Complex64::new(re, im);
            prop_assume!(b.lambda().iter().all(|&l| (z - l).norm() > 1e-6));
            let w = w_on_sheet(z, k, &b).unwrap();
            let p: Complex64 = b.lambda().iter().map(|&l| z - l).product();
            prop_assert!((w * w * w - p).norm() < 1e-12 * (1.0 + p.norm()));
            let w1 = w_on_sheet(z, (k + 1) % 3, &b).unwrap();
            prop_assert!((w1 - OMEGA * w).norm() < 1e-12 * (1.0 + w.norm()));
        }
    }
}
