use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

use crate::algebra::{Matrix8, H, J};
use crate::error::{Error, Result};

/// General complex matrix; the fixed-size 4×4 and 8×8 types are used wherever the
/// shape is known.
pub type ComplexMatrix = DMatrix<Complex64>;
pub type CMatrix4 = Matrix4<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Builds a [`ComplexMatrix`], rejecting wrong entry counts and non-finite entries.
pub fn complex_matrix(rows: usize, cols: usize, entries: &[Complex64]) -> Result<ComplexMatrix> {
    if entries.len() != rows * cols {
        return Err(Error::Input(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
    }
    if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Input("non-finite matrix entry".into()));
    }
    Ok(ComplexMatrix::from_row_slice(rows, cols, entries))
}

/// ᵗū H v
pub fn hermitian_pairing(u: &[Complex64], v: &[Complex64]) -> Result<Complex64> {
    if u.len() != 4 || v.len() != 4 {
        return Err(Error::Input(format!("pairing needs 4-vectors, got lengths {} and {}", u.len(), v.len())));
    }
    Ok(u.iter()
        .zip(v)
        .zip(crate::algebra::HermitianSignatureForm::DIAG)
        .map(|((a, b), h)| a.conj() * b * h as f64)
        .sum())
}

/// Bilinear ᵗx H y (no conjugation).
pub fn bilinear_h(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter()
        .zip(y)
        .zip(crate::algebra::HermitianSignatureForm::DIAG)
        .map(|((a, b), h)| a * b * h as f64)
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PositivityReport {
    pub positive: bool,
    /// Smallest pivot of the Hermitian LDLᴴ decomposition.
    pub min_pivot: f64,
    /// Smallest eigenvalue.
    pub lambda_min: f64,
}

fn max_abs(m: &CMatrix4) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn is_positive_definite(m: &CMatrix4, tol: f64) -> Result<PositivityReport> {
    let skew = max_abs(&(m - m.adjoint()));
    if skew > tol * max_abs(m).max(1.0) {
        return Err(Error::Input(format!("matrix is not Hermitian (defect {skew:e})")));
    }
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);

    // LDLᴴ pivots
    let mut a = herm;
    let mut min_pivot = f64::INFINITY;
    let mut positive = true;
    for k in 0..4 {
        let d = a[(k, k)].re;
        min_pivot = min_pivot.min(d);
        if d <= tol {
            positive = false;
            break;
        }
        for i in k + 1..4 {
            let l = a[(i, k)] / d;
            for j in k + 1..4 {
                let upd = l * a[(k, j)];
                a[(i, j)] -= upd;
            }
        }
    }
    let lambda_min = herm.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
    Ok(PositivityReport { positive, min_pivot, lambda_min })
}

/// A point of the Siegel upper half space of degree 4.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelPoint {
    tau: CMatrix4,
    lambda_min: f64,
}

impl SiegelPoint {
    pub const SYMMETRY_TOL: f64 = 1e-12;

    pub fn new(tau: CMatrix4) -> Result<Self> {
        let scale = max_abs(&tau).max(1.0);
        let asym = max_abs(&(tau - tau.transpose()));
        if asym > Self::SYMMETRY_TOL * scale {
            return Err(Error::Input(format!("tau is not symmetric (defect {asym:e})")));
        }
        Self::from_nearly_symmetric(tau)
    }

    fn from_nearly_symmetric(tau: CMatrix4) -> Result<Self> {
        if tau.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Input("non-finite entry in tau".into()));
        }
        let tau = (tau + tau.transpose()) * Complex64::new(0.5, 0.0);
        let im = tau.map(|z| Complex64::new(z.im, 0.0));
        let report = is_positive_definite(&im, 0.0)?;
        if !report.positive || report.lambda_min <= 0.0 {
            return Err(Error::Domain(format!("Im tau is not positive definite (lambda_min {:e})", report.lambda_min)));
        }
        Ok(Self { tau, lambda_min: report.lambda_min })
    }

    pub fn tau(&self) -> &CMatrix4 {
        &self.tau
    }

    pub fn imag(&self) -> Matrix4<f64> {
        self.tau.map(|z| z.im)
    }

    pub fn real(&self) -> Matrix4<f64> {
        self.tau.map(|z| z.re)
    }

    /// Smallest eigenvalue of Im τ.
    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn max_abs_diff(&self, other: &SiegelPoint) -> f64 {
        max_abs(&(self.tau - other.tau))
    }
}

pub fn symplectic_defect(g: &Matrix8) -> f64 {
    let j = J.real();
    (g.transpose() * j * g - j).amax()
}

/// τ ↦ (Aτ+B)(Cτ+D)⁻¹, together with det(Cτ+D).
pub fn moebius_act(g: &Matrix8, tau: &SiegelPoint) -> Result<(SiegelPoint, Complex64)> {
    let defect = symplectic_defect(g);
    if defect > 1e-9 * g.amax().max(1.0).powi(2) {
        return Err(Error::Input(format!("g is not symplectic (defect {defect:e})")));
    }
    let blk = |r: usize, c: usize| -> CMatrix4 { g.fixed_view::<4, 4>(r, c).into_owned().map(|x| Complex64::new(x, 0.0)) };
    let (a, b, cc, d) = (blk(0, 0), blk(0, 4), blk(4, 0), blk(4, 4));
    let t = tau.tau();
    let den = cc * t + d;
    let det = den.determinant();
    let scale = den.iter().fold(0.0f64, |acc, z| acc.max(z.norm())).max(1e-300);
    if det.norm() <= 1e-12 * scale.powi(4) {
        return Err(Error::Degenerate(format!("C tau + D is singular (det {det})")));
    }
    let inv = den.try_inverse().ok_or_else(|| Error::Degenerate("C tau + D is not invertible".into()))?;
    let out = (a * t + b) * inv;
    let asym = max_abs(&(out - out.transpose()));
    if asym > 1e-7 * max_abs(&out).max(1.0) {
        return Err(Error::Consistency(format!("Moebius image is not symmetric (defect {asym:e})")));
    }
    Ok((SiegelPoint::from_nearly_symmetric(out)?, det))
}

/// H as a complex 4×4 matrix.
pub fn h_complex() -> CMatrix4 {
    H.complex()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: [(f64, f64); 4]) -> Vec<Complex64> {
        xs.iter().map(|&(a, b)| c(a, b)).collect()
    }

    #[test]
    fn pairing_examples() {
        let e4 = v([(0., 0.), (0., 0.), (0., 0.), (1., 0.)]);
        let e1 = v([(1., 0.), (0., 0.), (0., 0.), (0., 0.)]);
        let ones = v([(1., 0.); 4]);
        assert_eq!(hermitian_pairing(&e4, &e4).unwrap(), c(-1.0, 0.0));
        assert_eq!(hermitian_pairing(&e1, &e4).unwrap(), c(0.0, 0.0));
        assert_eq!(hermitian_pairing(&ones, &ones).unwrap(), c(2.0, 0.0));
    }

    #[test]
    fn pairing_rejects_wrong_length() {
        let a = vec![c(1.0, 0.0); 3];
        assert!(matches!(hermitian_pairing(&a, &a), Err(Error::Input(_))));
    }

    #[test]
    fn positivity_examples() {
        let id = CMatrix4::identity();
        let r = is_positive_definite(&id, 1e-12).unwrap();
        assert!(r.positive);
        assert!((r.lambda_min - 1.0).abs() < 1e-14);
        let r = is_positive_definite(&h_complex(), 1e-12).unwrap();
        assert!(!r.positive);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let mut m = CMatrix4::identity();
        m[(0, 1)] = c(1.0, 0.0);
        assert!(is_positive_definite(&m, 1e-12).is_err());
    }

    #[test]
    fn matrix_constructor_checks() {
        assert!(complex_matrix(2, 2, &[c(1.0, 0.0); 3]).is_err());
        assert!(complex_matrix(1, 1, &[c(f64::NAN, 0.0)]).is_err());
        assert_eq!(complex_matrix(1, 2, &[c(1.0, 0.0), c(0.0, 1.0)]).unwrap().ncols(), 2);
    }

    #[test]
    fn identity_action() {
        let tau = SiegelPoint::new(CMatrix4::identity() * c(0.3, 1.0)).unwrap();
        let (out, det) = moebius_act(&Matrix8::identity(), &tau).unwrap();
        assert!(out.max_abs_diff(&tau) < 1e-15);
        assert!((det - 1.0).norm() < 1e-15);
    }

    #[test]
    fn siegel_point_rejects_bad_input() {
        let mut t = CMatrix4::identity() * c(0.0, 1.0);
        t[(0, 1)] = c(1.0, 0.0);
        assert!(SiegelPoint::new(t).is_err());
        assert!(SiegelPoint::new(CMatrix4::identity()).is_err());
    }
}
