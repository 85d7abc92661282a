//! The complex 3-ball and the embedding j into the Siegel space.

use nalgebra::Vector4;
use num_complex::Complex64;

use crate::algebra::complex::{bilinear_h, h_complex, hermitian_pairing, CMatrix4};
use crate::algebra::{SiegelPoint, OMEGA, SQRT3};
use crate::error::{Error, Result};

pub type CVector4 = Vector4<Complex64>;

/// Margin below which a point is flagged as near the boundary.
pub const NEAR_BOUNDARY_MARGIN: f64 = 1e-6;

/// Returns whether ᵗx̄Hx < 0 and the margin −ᵗx̄Hx / ᵗx̄x.
pub fn inside_ball(x: &[Complex64]) -> Result<(bool, f64)> {
    let p = hermitian_pairing(x, x)?.re;
    let n: f64 = x.iter().map(|z| z.norm_sqr()).sum();
    if n == 0.0 {
        return Err(Error::Input("zero vector".into()));
    }
    Ok((p < 0.0, -p / n))
}

/// A projective point of the ball, stored with its largest-modulus entry equal to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint {
    x: CVector4,
    margin: f64,
}

impl BallPoint {
    pub fn new(x: &[Complex64]) -> Result<Self> {
        if x.len() != 4 {
            return Err(Error::Input(format!("ball point needs 4 coordinates, got {}", x.len())));
        }
        if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Input("non-finite coordinate".into()));
        }
        let (inside, margin) = inside_ball(x)?;
        if !inside {
            return Err(Error::Domain(format!("point is outside the ball (margin {margin:e})")));
        }
        // first index of largest modulus
        let mut k = 0;
        for i in 1..4 {
            if x[i].norm() > x[k].norm() {
                k = i;
            }
        }
        let s = x[k];
        let x = CVector4::from_iterator(x.iter().map(|z| z / s));
        Ok(Self { x, margin })
    }

    pub fn from_vector(x: &CVector4) -> Result<Self> {
        Self::new(x.as_slice())
    }

    pub fn coords(&self) -> &CVector4 {
        &self.x
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn near_boundary(&self) -> bool {
        self.margin < NEAR_BOUNDARY_MARGIN
    }
}

/// Ω = ωH − √−3 · x ᵗx / (ᵗxHx), without validation.
pub fn embed_raw(x: &CVector4) -> CMatrix4 {
    let q = bilinear_h(x.as_slice(), x.as_slice());
    let s = Complex64::new(0.0, SQRT3) / q;
    h_complex() * OMEGA - x * x.transpose() * s
}

/// j(x), with the inverse identity Ω⁻¹ = ω²H[I − (1−ω²) x ᵗxH / ᵗxHx] checked.
pub fn embed_j(x: &BallPoint) -> Result<SiegelPoint> {
    let v = x.coords();
    let omega = embed_raw(v);
    let tau = SiegelPoint::new(omega).map_err(|e| Error::Consistency(format!("j(x) is not a Siegel point: {e}")))?;

    let h = h_complex();
    let q = bilinear_h(v.as_slice(), v.as_slice());
    let w2 = OMEGA * OMEGA;
    let inv = h * w2 * (CMatrix4::identity() - v * v.transpose() * h * ((Complex64::new(1.0, 0.0) - w2) / q));
    let defect = (omega * inv - CMatrix4::identity()).iter().fold(0.0f64, |a, z| a.max(z.norm()));
    if defect > 1e-10 * omega.iter().fold(1.0f64, |a, z| a.max(z.norm())) {
        return Err(Error::Consistency(format!("inverse identity for j(x) fails by {defect:e}")));
    }
    Ok(tau)
}

/// (√3/2)(H − x ᵗx/(ᵗxHx) − x̄ ᵗx̄/(ᵗx̄Hx̄)), the closed form of Im j(x).
pub fn imaginary_part_formula(x: &CVector4) -> nalgebra::Matrix4<f64> {
    let h = h_complex();
    let q = bilinear_h(x.as_slice(), x.as_slice());
    let xb = x.conjugate();
    let m = h - x * x.transpose() / q - xb * xb.transpose() / q.conj();
    m.map(|z| z.re * SQRT3 / 2.0)
}
