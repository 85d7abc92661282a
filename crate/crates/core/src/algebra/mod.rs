//! Shared linear algebra: Eisenstein arithmetic, exact matrices, the forms H and J,
//! and complex 4×4 / 8×8 helpers.

pub mod complex;
pub mod eisenstein;
pub mod exact;

use nalgebra::{Matrix4, SMatrix};
use num_complex::Complex64;

use exact::{rat, EMatrix, QMatrix};

pub use complex::{hermitian_pairing, is_positive_definite, moebius_act, PositivityReport, SiegelPoint};
pub use eisenstein::{EisensteinInt, EisensteinRational};

/// ω = e^{2πi/3}
pub const OMEGA: Complex64 = Complex64::new(-0.5, 0.866_025_403_784_438_6);
/// ζ = −ω² = e^{πi/3}
pub const ZETA: Complex64 = Complex64::new(0.5, 0.866_025_403_784_438_6);
pub const SQRT3: f64 = 1.732_050_807_568_877_2;

pub type Matrix8 = SMatrix<f64, 8, 8>;

/// H = diag(1, 1, 1, −1).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HermitianSignatureForm;

impl HermitianSignatureForm {
    pub const DIAG: [i64; 4] = [1, 1, 1, -1];

    pub fn real(&self) -> Matrix4<f64> {
        Matrix4::from_diagonal(&Self::DIAG.map(|d| d as f64).into())
    }

    pub fn complex(&self) -> Matrix4<Complex64> {
        self.real().map(|x| Complex64::new(x, 0.0))
    }

    pub fn rational(&self) -> QMatrix {
        QMatrix::from_i64(4, 4, |i, j| if i == j { Self::DIAG[i] } else { 0 })
    }

    pub fn eisenstein(&self) -> EMatrix {
        EMatrix::from_ints(4, 4, |i, j| (if i == j { Self::DIAG[i] } else { 0 }, 0))
    }
}

/// J = [[O, −I₄], [I₄, O]].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SymplecticForm;

impl SymplecticForm {
    pub fn rational(&self) -> QMatrix {
        QMatrix::from_fn(8, 8, |i, j| {
            if j == i + 4 {
                rat(-1)
            } else if i == j + 4 {
                rat(1)
            } else {
                rat(0)
            }
        })
    }

    pub fn real(&self) -> Matrix8 {
        Matrix8::from_fn(|i, j| {
            if j == i + 4 {
                -1.0
            } else if i == j + 4 {
                1.0
            } else {
                0.0
            }
        })
    }
}

pub const H: HermitianSignatureForm = HermitianSignatureForm;
pub const J: SymplecticForm = SymplecticForm;
