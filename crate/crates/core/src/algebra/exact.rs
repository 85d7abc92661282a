//! Small dense matrices over exact rings (Z[ω], Q(ω), Q).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{SMatrix, Matrix4};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::eisenstein::{EisensteinInt, EisensteinRational};

/// Ring operations needed by [`Matrix`].
pub trait Ring: Clone + PartialEq + Zero + One {
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

macro_rules! impl_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn add_ref(&self, o: &Self) -> Self {
                self + o
            }
            fn sub_ref(&self, o: &Self) -> Self {
                self - o
            }
            fn mul_ref(&self, o: &Self) -> Self {
                self * o
            }
            fn neg_ref(&self) -> Self {
                -self
            }
        }
    };
}

impl_ring!(BigRational);
impl_ring!(EisensteinRational);
impl_ring!(EisensteinInt);

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type EMatrix = Matrix<EisensteinRational>;
pub type QMatrix = Matrix<BigRational>;

impl<T: Ring> Matrix<T>
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U>
    {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.mul_ref(x))
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Assemble `[[a, b], [c, d]]` from equally sized square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.rows;
        Self::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - n).clone(),
            (false, true) => c.get(i - n, j).clone(),
            (false, false) => d.get(i - n, j - n).clone(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    /// Rank computed by fraction-free-free Gaussian elimination over the
    /// fraction field; `inv` supplies multiplicative inverses.
    pub fn rank_with(&self, inv: impl Fn(&T) -> Option<T>) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else { continue };
            m.swap_rows(rank, p);
            let pinv = inv(m.get(rank, col)).expect("nonzero pivot must be invertible");
            for r in 0..m.rows {
                if r != rank && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).mul_ref(&pinv);
                    for c in 0..m.cols {
                        let v = m.get(r, c).sub_ref(&factor.mul_ref(m.get(rank, c)));
                        m.set(r, c, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss–Jordan inverse over a field; `None` when singular.
    pub fn inverse_with(&self, inv: impl Fn(&T) -> Option<T>) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut out = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !m.get(r, col).is_zero())?;
            m.swap_rows(col, p);
            out.swap_rows(col, p);
            let pinv = inv(m.get(col, col))?;
            for c in 0..n {
                m.set(col, c, pinv.mul_ref(m.get(col, c)));
                out.set(col, c, pinv.mul_ref(out.get(col, c)));
            }
            for r in 0..n {
                if r != col && !m.get(r, col).is_zero() {
                    let f = m.get(r, col).clone();
                    for c in 0..n {
                        let v = m.get(r, c).sub_ref(&f.mul_ref(m.get(col, c)));
                        m.set(r, c, v);
                        let w = out.get(r, c).sub_ref(&f.mul_ref(out.get(col, c)));
                        out.set(r, c, w);
                    }
                }
            }
        }
        Some(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<'a, T: Ring> Mul<&'a Matrix<T>> for &'a Matrix<T>
{
    type Output = Matrix<T>;
    fn mul(self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        Matrix::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc.add_ref(&self.get(i, k).mul_ref(o.get(k, j))))
        })
    }
}

impl<'a, T: Ring> Add<&'a Matrix<T>> for &'a Matrix<T>
{
    type Output = Matrix<T>;
    fn add(self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add_ref(o.get(i, j)))
    }
}

impl<'a, T: Ring> Sub<&'a Matrix<T>> for &'a Matrix<T>
{
    type Output = Matrix<T>;
    fn sub(self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub_ref(o.get(i, j)))
    }
}

impl<T: Ring> Neg for &Matrix<T>
{
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| x.neg_ref())
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rational_inverse(x: &BigRational) -> Option<BigRational> {
    if x.is_zero() {
        None
    } else {
        Some(x.recip())
    }
}

impl QMatrix {
    pub fn from_i64(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        Self::from_fn(rows, cols, |i, j| rat(f(i, j)))
    }

    pub fn inverse(&self) -> Option<Self> {
        self.inverse_with(rational_inverse)
    }

    pub fn is_integral(&self) -> bool {
        self.entries().all(|x| x.is_integer())
    }

    pub fn to_f64_8(&self) -> SMatrix<f64, 8, 8> {
        assert_eq!((self.rows(), self.cols()), (8, 8));
        SMatrix::<f64, 8, 8>::from_fn(|i, j| self.get(i, j).to_f64().unwrap_or(f64::NAN))
    }

    /// Diagonal entries as a row vector.
    pub fn diagonal(&self) -> Vec<BigRational> {
        (0..self.rows().min(self.cols())).map(|i| self.get(i, i).clone()).collect()
    }
}

impl EMatrix {
    pub fn from_ints(rows: usize, cols: usize, f: impl Fn(usize, usize) -> (i64, i64)) -> Self {
        Self::from_fn(rows, cols, |i, j| {
            let (u, v) = f(i, j);
            EisensteinRational::from_ints(u, v)
        })
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols(), self.rows(), |i, j| self.get(j, i).conj())
    }

    pub fn inverse(&self) -> Option<Self> {
        self.inverse_with(|x| x.inv())
    }

    pub fn rank(&self) -> usize {
        self.rank_with(|x| x.inv())
    }

    /// Exact determinant by cofactor expansion (only used for 4×4).
    pub fn determinant(&self) -> EisensteinRational {
        assert_eq!(self.rows(), self.cols());
        fn det(m: &EMatrix, rows: &[usize], cols: &[usize]) -> EisensteinRational {
            if rows.len() == 1 {
                return m.get(rows[0], cols[0]).clone();
            }
            let mut acc = EisensteinRational::zero();
            for (k, &c) in cols.iter().enumerate() {
                let entry = m.get(rows[0], c);
                if entry.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = det(m, &rows[1..], &sub_cols);
                let term = entry * &minor;
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
        let idx: Vec<usize> = (0..self.rows()).collect();
        det(self, &idx, &idx)
    }

    /// Entries as Eisenstein integers, if all are integral.
    pub fn to_integer_entries(&self) -> Option<Vec<EisensteinInt>> {
        self.entries().map(EisensteinRational::to_integer).collect()
    }

    /// g ≡ I mod (1 − ω) entrywise in Z[ω].
    pub fn congruent_to_identity_mod_one_minus_omega(&self) -> bool {
        let id = Self::identity(self.rows());
        let diff = self - &id;
        match diff.to_integer_entries() {
            Some(entries) => entries.iter().all(EisensteinInt::divisible_by_one_minus_omega),
            None => false,
        }
    }

    pub fn to_complex4(&self) -> Matrix4<Complex64> {
        assert_eq!((self.rows(), self.cols()), (4, 4));
        Matrix4::from_fn(|i, j| self.get(i, j).to_complex())
    }

    /// Coordinate split g = P + ωQ.
    pub fn split(&self) -> (QMatrix, QMatrix) {
        (self.map(|x| x.u.clone()), self.map(|x| x.v.clone()))
    }

    pub fn from_split(p: &QMatrix, q: &QMatrix) -> Self {
        Self::from_fn(p.rows(), p.cols(), |i, j| EisensteinRational::new(p.get(i, j).clone(), q.get(i, j).clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_inverse_roundtrip() {
        let m = QMatrix::from_i64(3, 3, |i, j| [[2, 1, 0], [1, 3, 1], [0, 1, 4]][i][j]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = QMatrix::from_i64(2, 2, |i, j| [[1, 2], [2, 4]][i][j]);
        assert!(m.inverse().is_none());
    }

    #[test]
    fn eisenstein_determinant_of_diagonal() {
        let m = EMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                if i == 0 {
                    EisensteinRational::omega()
                } else {
                    EisensteinRational::one()
                }
            } else {
                EisensteinRational::zero()
            }
        });
        assert_eq!(m.determinant(), EisensteinRational::omega());
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn split_roundtrip() {
        let m = EMatrix::from_ints(2, 2, |i, j| ((i as i64) - 1, 2 * (j as i64) + 1));
        let (p, q) = m.split();
        assert_eq!(EMatrix::from_split(&p, &q), m);
    }
}
