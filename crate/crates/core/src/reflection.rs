//! The fifteen roots v_ij, the reflections R^ω(v), R^ζ(v) and exact group checks.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::algebra::exact::EMatrix;
use crate::algebra::{EisensteinInt, EisensteinRational, H};
use crate::ball::CVector4;
use crate::error::{Error, Result};

/// Unordered pair {i, j} ⊂ {1..6}, stored with i < j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair(pub u8, pub u8);

impl Pair {
    pub fn new(i: u8, j: u8) -> Result<Self> {
        if !(1..=6).contains(&i) || !(1..=6).contains(&j) || i == j {
            return Err(Error::Input(format!("invalid index pair ({i},{j})")));
        }
        Ok(if i < j { Pair(i, j) } else { Pair(j, i) })
    }

    pub fn all() -> impl Iterator<Item = Pair> {
        (1..=6u8).flat_map(|i| (i + 1..=6).map(move |j| Pair(i, j)))
    }

    pub fn contains(&self, k: u8) -> bool {
        self.0 == k || self.1 == k
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub label: Pair,
    pub v: [EisensteinInt; 4],
}

// (u, v) coordinates of u + vω for each entry
const ROOT_TABLE: [(Pair, [(i64, i64); 4]); 15] = [
    (Pair(1, 2), [(1, 0), (0, 0), (0, 0), (0, 0)]),
    (Pair(1, 3), [(-1, 0), (1, 0), (0, 0), (1, 0)]),
    (Pair(1, 4), [(-1, 0), (1, 1), (0, 0), (1, 0)]),
    (Pair(1, 5), [(-1, -1), (0, 0), (1, 1), (1, 0)]),
    (Pair(1, 6), [(-1, -1), (0, 0), (0, 1), (1, 0)]),
    (Pair(2, 3), [(-1, -1), (1, 0), (0, 0), (1, 0)]),
    (Pair(2, 4), [(-1, -1), (1, 1), (0, 0), (1, 0)]),
    (Pair(2, 5), [(0, -1), (0, 0), (1, 1), (1, 0)]),
    (Pair(2, 6), [(0, -1), (0, 0), (0, 1), (1, 0)]),
    (Pair(3, 4), [(0, 0), (1, 0), (0, 0), (0, 0)]),
    (Pair(3, 5), [(0, 0), (0, -1), (0, 1), (1, 0)]),
    (Pair(3, 6), [(0, 0), (0, -1), (-1, 0), (1, 0)]),
    (Pair(4, 5), [(0, 0), (1, 0), (0, 1), (1, 0)]),
    (Pair(4, 6), [(0, 0), (1, 0), (-1, 0), (1, 0)]),
    (Pair(5, 6), [(0, 0), (0, 0), (1, 0), (0, 0)]),
];

pub fn root_for_pair(i: u8, j: u8) -> Result<Root> {
    if !(1..=6).contains(&i) || !(1..=6).contains(&j) || i >= j {
        return Err(Error::Input(format!("root index pair ({i},{j}) must satisfy 1 <= i < j <= 6")));
    }
    let (label, coords) = ROOT_TABLE.iter().find(|(p, _)| *p == Pair(i, j)).expect("table covers all pairs");
    Ok(Root { label: *label, v: coords.map(|(u, v)| EisensteinInt::new(u, v)) })
}

pub fn all_roots() -> Vec<Root> {
    Pair::all().map(|p| root_for_pair(p.0, p.1).expect("valid pair")).collect()
}

impl Root {
    /// ᵗv̄Hv
    pub fn norm(&self) -> EisensteinInt {
        hermitian_norm(&self.v)
    }

    pub fn to_complex(&self) -> CVector4 {
        CVector4::from_iterator(self.v.iter().map(EisensteinInt::to_complex))
    }
}

fn hermitian_norm(v: &[EisensteinInt; 4]) -> EisensteinInt {
    v.iter()
        .zip(crate::algebra::HermitianSignatureForm::DIAG)
        .fold(EisensteinInt::zero(), |acc, (x, h)| &acc + &(&(&x.conj() * x) * &EisensteinInt::from(h)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Omega,
    /// ζ = −ω²
    Zeta,
}

impl Exponent {
    pub fn value(&self) -> EisensteinRational {
        match self {
            Exponent::Omega => EisensteinRational::from_ints(0, 1),
            Exponent::Zeta => EisensteinRational::from_ints(1, 1),
        }
    }
}

/// I − (1 − e) v (ᵗv̄Hv)⁻¹ ᵗv̄H over Q(ω).
pub fn reflection_matrix(v: &[EisensteinInt; 4], exponent: Exponent) -> Result<EMatrix> {
    let n: EisensteinRational = hermitian_norm(v).into();
    let n_inv = n.inv().ok_or_else(|| Error::Domain("isotropic root: conj(v) H v = 0".into()))?;
    let coef = &(&EisensteinRational::one() - &exponent.value()) * &n_inv;
    let h = crate::algebra::HermitianSignatureForm::DIAG;
    Ok(EMatrix::from_fn(4, 4, |i, j| {
        let vi: EisensteinRational = (&v[i]).into();
        let vj: EisensteinRational = v[j].conj().into();
        let hj = EisensteinRational::from_ints(h[j], 0);
        let term = &(&(&coef * &vi) * &vj) * &hj;
        let id = if i == j { EisensteinRational::one() } else { EisensteinRational::zero() };
        &id - &term
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryReflection {
    pub exponent: Exponent,
    pub root: Root,
    pub matrix: EMatrix,
}

pub fn make_reflection(root: &Root, exponent: Exponent) -> Result<UnitaryReflection> {
    Ok(UnitaryReflection { exponent, root: root.clone(), matrix: reflection_matrix(&root.v, exponent)? })
}

impl UnitaryReflection {
    pub fn to_complex(&self) -> nalgebra::Matrix4<Complex64> {
        self.matrix.to_complex4()
    }
}

/// One of the twenty generators: R^ω_{ij} for the fifteen pairs, R^ζ_{i,i+1} for i = 1..5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub pair: Pair,
    pub exponent: Exponent,
}

impl Generator {
    pub fn omega(i: u8, j: u8) -> Result<Self> {
        Ok(Self { pair: Pair::new(i, j)?, exponent: Exponent::Omega })
    }

    pub fn zeta(i: u8) -> Result<Self> {
        if !(1..=5).contains(&i) {
            return Err(Error::Input(format!("R^zeta_(i,i+1) needs 1 <= i <= 5, got {i}")));
        }
        Ok(Self { pair: Pair(i, i + 1), exponent: Exponent::Zeta })
    }

    pub fn matrix(&self) -> EMatrix {
        let root = root_for_pair(self.pair.0, self.pair.1).expect("generator pairs are valid");
        reflection_matrix(&root.v, self.exponent).expect("table roots are anisotropic")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            Exponent::Omega => write!(f, "Rw{}", self.pair),
            Exponent::Zeta => write!(f, "Rz{}", self.pair),
        }
    }
}

pub fn omega_generators() -> Vec<Generator> {
    Pair::all().map(|p| Generator { pair: p, exponent: Exponent::Omega }).collect()
}

pub fn zeta_generators() -> Vec<Generator> {
    (1..=5).map(|i| Generator::zeta(i).expect("in range")).collect()
}

pub fn all_generators() -> Vec<Generator> {
    let mut g = omega_generators();
    g.extend(zeta_generators());
    g
}

/// A word g₁g₂…g_k in the generators, evaluated left to right as a matrix product.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn evaluate(&self) -> EMatrix {
        self.0.iter().fold(EMatrix::identity(4), |acc, g| &acc * &g.matrix())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.0.iter().map(Generator::to_string).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Applies an exact matrix to a complex vector.
pub fn apply(g: &EMatrix, x: &CVector4) -> CVector4 {
    g.to_complex4() * x
}

pub fn is_unitary_for_h(g: &EMatrix) -> bool {
    let h = H.eisenstein();
    &(&g.conj_transpose() * &h) * g == h
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupReport {
    pub checks: Vec<Check>,
}

impl GroupReport {
    pub fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check { name: name.into(), passed });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Exact checks: braid relations, Γ(1−ω) congruence, H-unitarity, (R^ζ)² = R^ω.
pub fn verify_group_relations() -> GroupReport {
    let mut report = GroupReport::default();
    let z: Vec<EMatrix> = zeta_generators().iter().map(Generator::matrix).collect();
    for i in 1..5 {
        let (a, b) = (&z[i - 1], &z[i]);
        let lhs = &(a * b) * a;
        let rhs = &(b * a) * b;
        report.push(format!("braid R^z_{}{} R^z_{}{}", i, i + 1, i + 1, i + 2), lhs == rhs);
    }
    for g in omega_generators() {
        report.push(format!("congruence {g} = I mod (1-w)"), g.matrix().congruent_to_identity_mod_one_minus_omega());
    }
    for g in all_generators() {
        report.push(format!("unitarity {g}"), is_unitary_for_h(&g.matrix()));
    }
    for p in Pair::all() {
        let z = Generator { pair: p, exponent: Exponent::Zeta }.matrix();
        let w = Generator { pair: p, exponent: Exponent::Omega }.matrix();
        report.push(format!("square R^z_{p} = R^w_{p}"), &z * &z == w);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::exact::EMatrix;

    fn e(u: i64, v: i64) -> EisensteinRational {
        EisensteinRational::from_ints(u, v)
    }

    #[test]
    fn table_lookups() {
        let r = root_for_pair(1, 2).unwrap();
        assert_eq!(r.v, [1, 0, 0, 0].map(|u| EisensteinInt::new(u, 0)));
        let r = root_for_pair(3, 5).unwrap();
        assert_eq!(r.v, [(0, 0), (0, -1), (0, 1), (1, 0)].map(|(u, v)| EisensteinInt::new(u, v)));
        let r = root_for_pair(5, 6).unwrap();
        assert_eq!(r.v, [0, 0, 1, 0].map(|u| EisensteinInt::new(u, 0)));
        assert!(root_for_pair(0, 2).is_err());
        assert!(root_for_pair(3, 3).is_err());
        assert!(root_for_pair(2, 7).is_err());
    }

    #[test]
    fn every_root_has_norm_one() {
        for r in all_roots() {
            assert_eq!(r.norm(), EisensteinInt::new(1, 0), "root {}", r.label);
        }
    }

    #[test]
    fn r_omega_12_is_diagonal() {
        let m = reflection_matrix(&root_for_pair(1, 2).unwrap().v, Exponent::Omega).unwrap();
        let expected = EMatrix::from_fn(4, 4, |i, j| match (i, j) {
            (0, 0) => e(0, 1),
            (i, j) if i == j => e(1, 0),
            _ => e(0, 0),
        });
        assert_eq!(m, expected);
        let diff = &m - &EMatrix::identity(4);
        assert_eq!(diff.get(0, 0), &e(-1, 1));
        assert!(m.congruent_to_identity_mod_one_minus_omega());
    }

    #[test]
    fn isotropic_root_is_rejected() {
        let v = [1, 0, 0, 1].map(|u| EisensteinInt::new(u, 0));
        assert!(matches!(reflection_matrix(&v, Exponent::Omega), Err(Error::Domain(_))));
    }

    #[test]
    fn eigenvector_mirror_and_determinant() {
        for r in all_roots() {
            for ex in [Exponent::Omega, Exponent::Zeta] {
                let refl = make_reflection(&r, ex).unwrap();
                let v = EMatrix::from_fn(4, 1, |i, _| (&r.v[i]).into());
                assert_eq!(&refl.matrix * &v, v.scale(&ex.value()));
                assert_eq!(refl.matrix.determinant(), ex.value());
                assert_eq!((&refl.matrix - &EMatrix::identity(4)).rank(), 1);
                assert!(is_unitary_for_h(&refl.matrix));
            }
        }
    }

    #[test]
    fn mirror_is_fixed() {
        // (0,1,0,0) is H-orthogonal to v12
        let r = root_for_pair(1, 2).unwrap();
        let m = make_reflection(&r, Exponent::Zeta).unwrap().matrix;
        let x = EMatrix::from_fn(4, 1, |i, _| if i == 1 { e(3, -2) } else if i == 3 { e(1, 1) } else { e(0, 0) });
        assert_eq!(&m * &x, x);
    }

    #[test]
    fn unitarity_of_r35() {
        let g = Generator::omega(3, 5).unwrap().matrix();
        assert!(is_unitary_for_h(&g));
    }

    #[test]
    fn group_relations_hold() {
        let report = verify_group_relations();
        assert_eq!(report.checks.len(), 4 + 15 + 20 + 15);
        assert!(report.all_passed(), "{:?}", report.failures());
    }

    #[test]
    fn generators_preserve_the_ball() {
        let x = CVector4::new(
            Complex64::new(0.2, 0.1),
            Complex64::new(-0.1, 0.15),
            Complex64::new(0.05, -0.2),
            Complex64::new(1.0, 0.0),
        );
        for g in all_generators() {
            let gx = apply(&g.matrix(), &x);
            let q = crate::algebra::hermitian_pairing(gx.as_slice(), gx.as_slice()).unwrap();
            assert!(q.re < 0.0, "{g}");
        }
    }

    #[test]
    fn word_evaluation_is_left_to_right() {
        let a = Generator::omega(1, 2).unwrap();
        let b = Generator::zeta(2).unwrap();
        let w = Word(vec![a, b]);
        assert_eq!(w.evaluate(), &a.matrix() * &b.matrix());
        assert_eq!(w.to_string(), "Rw12*Rz23");
        assert!(Word::default().evaluate().is_identity());
    }
}
