//! Exact arithmetic in Z[ω] and Q(ω), ω = (−1+√−3)/2.
//!
//! Elements are stored as `u + v·ω`; multiplication uses ω² = −1 − ω.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::OMEGA;

/// `u + v·ω` with arbitrary-precision integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EisensteinInt {
    pub u: BigInt,
    pub v: BigInt,
}

impl EisensteinInt {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        Self { u: u.into(), v: v.into() }
    }

    pub fn omega() -> Self {
        Self::new(0, 1)
    }

    /// ω² = −1 − ω
    pub fn omega_sq() -> Self {
        Self::new(-1, -1)
    }

    /// Complex conjugate: conj(ω) = ω² = −1 − ω.
    pub fn conj(&self) -> Self {
        Self { u: &self.u - &self.v, v: -&self.v }
    }

    /// Field norm u² − uv + v².
    pub fn norm(&self) -> BigInt {
        &self.u * &self.u - &self.u * &self.v + &self.v * &self.v
    }

    /// Divisibility by the prime 1 − ω. Since ω ≡ 1 mod (1 − ω) and
    /// (1 − ω) ∩ Z = 3Z, this holds iff u + v ≡ 0 mod 3.
    pub fn divisible_by_one_minus_omega(&self) -> bool {
        (&self.u + &self.v).is_multiple_of(&BigInt::from(3))
    }

    pub fn to_complex(&self) -> Complex64 {
        let u = self.u.to_f64().unwrap_or(f64::NAN);
        let v = self.v.to_f64().unwrap_or(f64::NAN);
        Complex64::new(u, 0.0) + OMEGA * v
    }
}

impl Zero for EisensteinInt {
    fn zero() -> Self {
        Self::new(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

impl One for EisensteinInt {
    fn one() -> Self {
        Self::new(1, 0)
    }
}

impl From<i64> for EisensteinInt {
    fn from(n: i64) -> Self {
        Self::new(n, 0)
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pair(f, &self.u, &self.v)
    }
}

fn write_pair<T: fmt::Display + Zero + Signed>(f: &mut fmt::Formatter<'_>, u: &T, v: &T) -> fmt::Result {
    match (u.is_zero(), v.is_zero()) {
        (_, true) => write!(f, "{u}"),
        (true, false) => write!(f, "{v}ω"),
        (false, false) if v.is_negative() => write!(f, "{u}-{}ω", v.abs()),
        (false, false) => write!(f, "{u}+{v}ω"),
    }
}

/// `u + v·ω` with rational coordinates; the field Q(ω).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EisensteinRational {
    pub u: BigRational,
    pub v: BigRational,
}

impl EisensteinRational {
    pub fn new(u: BigRational, v: BigRational) -> Self {
        Self { u, v }
    }

    pub fn from_ints(u: i64, v: i64) -> Self {
        Self::new(BigRational::from_integer(u.into()), BigRational::from_integer(v.into()))
    }

    pub fn omega() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self { u: &self.u - &self.v, v: -&self.v }
    }

    pub fn norm(&self) -> BigRational {
        &self.u * &self.u - &self.u * &self.v + &self.v * &self.v
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Self { u: c.u / &n, v: c.v / n })
    }

    /// The element as an Eisenstein integer, if both coordinates are integral.
    pub fn to_integer(&self) -> Option<EisensteinInt> {
        if self.u.is_integer() && self.v.is_integer() {
            Some(EisensteinInt { u: self.u.to_integer(), v: self.v.to_integer() })
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let u = self.u.to_f64().unwrap_or(f64::NAN);
        let v = self.v.to_f64().unwrap_or(f64::NAN);
        Complex64::new(u, 0.0) + OMEGA * v
    }
}

impl From<EisensteinInt> for EisensteinRational {
    fn from(e: EisensteinInt) -> Self {
        Self::new(BigRational::from_integer(e.u), BigRational::from_integer(e.v))
    }
}

impl From<&EisensteinInt> for EisensteinRational {
    fn from(e: &EisensteinInt) -> Self {
        e.clone().into()
    }
}

impl Zero for EisensteinRational {
    fn zero() -> Self {
        Self::from_ints(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

impl One for EisensteinRational {
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
}

impl fmt::Display for EisensteinRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pair(f, &self.u, &self.v)
    }
}

macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl<'a> Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                <$t>::new_raw(&self.u + &o.u, &self.v + &o.v)
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl<'a> Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                <$t>::new_raw(&self.u - &o.u, &self.v - &o.v)
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl<'a> Mul<&'a $t> for &'a $t {
            type Output = $t;
            // (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω
            fn mul(self, o: &$t) -> $t {
                let bd = &self.v * &o.v;
                <$t>::new_raw(&self.u * &o.u - &bd, &self.u * &o.v + &self.v * &o.u - bd)
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::new_raw(-self.u, -self.v)
            }
        }
        impl<'a> Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::new_raw(-&self.u, -&self.v)
            }
        }
    };
}

impl EisensteinInt {
    fn new_raw(u: BigInt, v: BigInt) -> Self {
        Self { u, v }
    }
}

impl EisensteinRational {
    fn new_raw(u: BigRational, v: BigRational) -> Self {
        Self { u, v }
    }
}

impl_ring_ops!(EisensteinInt);
impl_ring_ops!(EisensteinRational);

impl Div for EisensteinRational {
    type Output = EisensteinRational;
    fn div(self, o: EisensteinRational) -> EisensteinRational {
        let inv = o.inv().expect("division by zero in Q(ω)");
        &self * &inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(u: i64, v: i64) -> EisensteinInt {
        EisensteinInt::new(u, v)
    }

    #[test]
    fn omega_squared_is_minus_one_minus_omega() {
        let w = EisensteinInt::omega();
        assert_eq!(&w * &w, e(-1, -1));
        assert_eq!(&(&w * &w) * &w, e(1, 0));
    }

    #[test]
    fn conjugate_of_omega_is_omega_squared() {
        assert_eq!(EisensteinInt::omega().conj(), EisensteinInt::omega_sq());
    }

    #[test]
    fn norm_zero_only_at_zero() {
        assert!(e(0, 0).norm().is_zero());
        assert_eq!(e(1, 1).norm(), BigInt::from(1));
        assert_eq!(e(2, -1).norm(), BigInt::from(7));
    }

    #[test]
    fn one_minus_omega_divisibility() {
        assert!(e(1, -1).divisible_by_one_minus_omega());
        assert!(e(3, 0).divisible_by_one_minus_omega());
        assert!(!e(1, 0).divisible_by_one_minus_omega());
        // ω − 1 = −(1 − ω)
        assert!(e(-1, 1).divisible_by_one_minus_omega());
    }

    #[test]
    fn rational_inverse() {
        let x = EisensteinRational::from_ints(2, 3);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, EisensteinRational::one());
        assert!(EisensteinRational::zero().inv().is_none());
    }

    #[test]
    fn complex_embedding_matches() {
        let z = e(2, -3).to_complex();
        let expected = Complex64::new(2.0, 0.0) - OMEGA * 3.0;
        assert!((z - expected).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn ring_laws(a in -50i64..50, b in -50i64..50, c in -50i64..50,
                     d in -50i64..50, f in -50i64..50, g in -50i64..50) {
            let (x, y, z) = (e(a, b), e(c, d), e(f, g));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            prop_assert!(x.norm() >= BigInt::zero());
        }
    }
}
