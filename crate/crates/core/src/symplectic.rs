//! The lift ĵ: U(H) → Sp(8, R), the matrix W, Grassmannian lifts of reflections and the
//! action of Sp(8, Z) on theta characteristics.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::algebra::exact::{rat, ratio, EMatrix, QMatrix};
use crate::algebra::{EisensteinInt, EisensteinRational, Matrix8, H, J};
use crate::error::{Error, Result};
use crate::reflection::Exponent;

#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticLift {
    pub g8: QMatrix,
    pub source: Option<EMatrix>,
}

impl SymplecticLift {
    pub fn is_integral(&self) -> bool {
        self.g8.is_integral()
    }

    /// ᵗgJg = J, exactly.
    pub fn is_symplectic(&self) -> bool {
        let j = J.rational();
        &(&self.g8.transpose() * &j) * &self.g8 == j
    }

    pub fn to_f64(&self) -> Matrix8 {
        self.g8.to_f64_8()
    }

    pub fn blocks(&self) -> (QMatrix, QMatrix, QMatrix, QMatrix) {
        let g = &self.g8;
        (g.block(0, 0, 4, 4), g.block(0, 4, 4, 4), g.block(4, 0, 4, 4), g.block(4, 4, 4, 4))
    }

    /// [[ᵗD, −ᵗB], [−ᵗC, ᵗA]]
    pub fn symplectic_inverse(&self) -> QMatrix {
        let (a, b, c, d) = self.blocks();
        QMatrix::from_blocks(&d.transpose(), &-&b.transpose(), &-&c.transpose(), &a.transpose())
    }

    pub fn compose(&self, other: &SymplecticLift) -> SymplecticLift {
        let source = match (&self.source, &other.source) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        SymplecticLift { g8: &self.g8 * &other.g8, source }
    }
}

/// P + ωQ ↦ [[P, QH], [−HQ, H(P−Q)H]]
pub fn lift_unitary(g: &EMatrix) -> SymplecticLift {
    let (p, q) = g.split();
    let h = H.rational();
    let g8 = QMatrix::from_blocks(&p, &(&q * &h), &-&(&h * &q), &(&(&h * &(&p - &q)) * &h));
    SymplecticLift { g8, source: Some(g.clone()) }
}

/// [[A, B], [C, D]] ↦ A + ωBH
pub fn unlift(g: &SymplecticLift) -> EMatrix {
    let (a, b, _, _) = g.blocks();
    EMatrix::from_split(&a, &(&b * &H.rational()))
}

/// W = ĵ(ωI₄) = [[O, H], [−H, −I₄]].
pub fn w_matrix() -> QMatrix {
    let omega_i = EMatrix::identity(4).scale(&EisensteinRational::omega());
    lift_unitary(&omega_i).g8
}

/// I₈ − (I₈ − W)V(ᵗVJV)⁻¹ᵗVJ (exponent ω) or with I₈ + W² in place of I₈ − W (exponent ζ),
/// where v = a + ωb, v₁ = (a; −Hb), V = (v₁, Wv₁).
pub fn lift_reflection(v: &[EisensteinInt; 4], exponent: Exponent) -> Result<SymplecticLift> {
    let hd = crate::algebra::HermitianSignatureForm::DIAG;
    let v1 = QMatrix::from_fn(8, 1, |i, _| {
        if i < 4 {
            BigRational::from_integer(v[i].u.clone())
        } else {
            BigRational::from_integer(-&v[i - 4].v * hd[i - 4])
        }
    });
    let w = w_matrix();
    let wv1 = &w * &v1;
    let vv = QMatrix::from_fn(8, 2, |i, j| if j == 0 { v1.get(i, 0).clone() } else { wv1.get(i, 0).clone() });
    let j = J.rational();
    let gram = &(&vv.transpose() * &j) * &vv;
    let gram_inv = gram.inverse().ok_or_else(|| Error::Domain("tV J V is singular".into()))?;
    let id = QMatrix::identity(8);
    let left = match exponent {
        Exponent::Omega => &id - &w,
        Exponent::Zeta => &id + &(&w * &w),
    };
    let proj = &(&(&(&left * &vv) * &gram_inv) * &vv.transpose()) * &j;
    let g8 = &id - &proj;
    let source = crate::reflection::reflection_matrix(v, exponent).ok();
    Ok(SymplecticLift { g8, source })
}

/// A theta characteristic (a, b) with rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacteristicVector {
    pub a: [BigRational; 4],
    pub b: [BigRational; 4],
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl CharacteristicVector {
    pub fn new(a: [BigRational; 4], b: [BigRational; 4]) -> Self {
        Self { a, b }
    }

    /// (a, −aH) for a = six_a / 6.
    pub fn from_sixths(six_a: [i64; 4]) -> Self {
        let a = six_a.map(|n| ratio(n, 6));
        let hd = crate::algebra::HermitianSignatureForm::DIAG;
        let b = [0, 1, 2, 3].map(|i| -&a[i] * rat(hd[i]));
        Self { a, b }
    }

    /// Reduction mod Z⁸ into [0, 1)⁸.
    pub fn canonical(&self) -> Self {
        Self { a: self.a.clone().map(|x| frac(&x)), b: self.b.clone().map(|x| frac(&x)) }
    }

    pub fn congruent(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn as_f64(&self) -> ([f64; 4], [f64; 4]) {
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        (self.a.clone().map(|x| f(&x)), self.b.clone().map(|x| f(&x)))
    }

    fn row(v: &[BigRational; 4]) -> QMatrix {
        QMatrix::from_fn(1, 4, |_, j| v[j].clone())
    }
}

fn dv(m: &QMatrix) -> QMatrix {
    let d = m.diagonal();
    QMatrix::from_fn(1, d.len(), |_, j| d[j].clone())
}

fn scalar(m: &QMatrix) -> BigRational {
    m.get(0, 0).clone()
}

/// g·(a, b) = (a, b)g⁻¹ + ½(dv(CᵗD), dv(AᵗB)), together with the phase φ_{(a,b)}(g).
pub fn char_action(g: &SymplecticLift, c: &CharacteristicVector) -> (CharacteristicVector, BigRational) {
    let (aa, bb, cc, dd) = g.blocks();
    let a = CharacteristicVector::row(&c.a);
    let b = CharacteristicVector::row(&c.b);
    let half = ratio(1, 2);

    let dv_cd = dv(&(&cc * &dd.transpose()));
    let dv_ab = dv(&(&aa * &bb.transpose()));
    let new_a = &(&(&a * &dd.transpose()) - &(&b * &cc.transpose())) + &dv_cd.scale(&half);
    let new_b = &(&(&b * &aa.transpose()) - &(&a * &bb.transpose())) + &dv_ab.scale(&half);

    let t1 = scalar(&(&(&(&a * &dd.transpose()) * &bb) * &a.transpose()));
    let t2 = scalar(&(&(&(&a * &bb.transpose()) * &cc) * &b.transpose()));
    let t3 = scalar(&(&(&(&b * &cc.transpose()) * &aa) * &b.transpose()));
    let quad = &(&t1 - &(&rat(2) * &t2)) + &t3;
    let lin = scalar(&(&(&(&a * &dd.transpose()) - &(&b * &cc.transpose())) * &dv_ab.transpose()));
    let phi = &(-&half * &quad) + &(&half * &lin);

    let take = |m: &QMatrix| [0, 1, 2, 3].map(|j| m.get(0, j).clone());
    (CharacteristicVector::new(take(&new_a), take(&new_b)), phi)
}

fn integer_matrix(q: &QMatrix) -> Option<Vec<i64>> {
    q.entries().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()
}

/// All sixth characteristics c ∈ ((1/6)Z/Z)⁸ with g·c ≡ c mod Z⁸ for every integral symplectic
/// g in `gens`, returned as 6c with entries in 0..6. Solved separately mod 2 and mod 3.
pub fn fixed_sixth_characteristics(gens: &[SymplecticLift]) -> Vec<[i64; 8]> {
    // 6(g·c − c) = s(g⁻¹ − I) + 3d with s = 6c and d = (dv(CᵗD), dv(AᵗB))
    let data: Vec<(Vec<i64>, Vec<i64>)> = gens
        .iter()
        .map(|g| {
            let (a, b, c, d) = g.blocks();
            let m = &g.symplectic_inverse() - &QMatrix::identity(8);
            let mut shift: Vec<BigRational> = dv(&(&c * &d.transpose())).entries().cloned().collect();
            shift.extend(dv(&(&a * &b.transpose())).entries().cloned());
            let shift = shift.iter().map(|x| x.to_integer().to_i64().expect("small")).collect();
            (integer_matrix(&m).expect("integral generator"), shift)
        })
        .collect();

    let solve = |p: i64| -> Vec<[i64; 8]> {
        let count = p.pow(8);
        let mut out = Vec::new();
        'cand: for idx in 0..count {
            let mut s = [0i64; 8];
            let mut r = idx;
            for k in (0..8).rev() {
                s[k] = r % p;
                r /= p;
            }
            for (m, d) in &data {
                for col in 0..8 {
                    let mut acc = 3 * d[col];
                    for row in 0..8 {
                        acc += s[row] * m[row * 8 + col];
                    }
                    if acc.rem_euclid(p) != 0 {
                        continue 'cand;
                    }
                }
            }
            out.push(s);
        }
        out
    };
    let mod2 = solve(2);
    let mod3 = solve(3);
    let mut out = Vec::with_capacity(mod2.len() * mod3.len());
    for s2 in &mod2 {
        for s3 in &mod3 {
            out.push([0, 1, 2, 3, 4, 5, 6, 7].map(|k| (3 * s2[k] + 4 * s3[k]).rem_euclid(6)));
        }
    }
    out.sort();
    out
}
