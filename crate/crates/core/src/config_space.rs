//! Six-point configurations, brackets ⟨ij⟩, the embedding ι into P¹⁴ and the S6 action.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::reflection::Pair;

/// A 2×6 matrix whose fifteen 2×2 minors are all nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigPoint {
    m: [[Complex64; 6]; 2],
}

fn det2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    a * d - b * c
}

impl ConfigPoint {
    pub const MINOR_TOL: f64 = 1e-13;

    pub fn new(m: [[Complex64; 6]; 2]) -> Result<Self> {
        if m.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Input("non-finite configuration entry".into()));
        }
        let p = Self { m };
        for pair in Pair::all() {
            let (i, j) = (pair.0 as usize - 1, pair.1 as usize - 1);
            let scale = (m[0][i].norm_sqr() + m[1][i].norm_sqr()).sqrt() * (m[0][j].norm_sqr() + m[1][j].norm_sqr()).sqrt();
            if p.bracket_raw(i, j).norm() <= Self::MINOR_TOL * scale || scale == 0.0 {
                return Err(Error::Domain(format!("minor <{}{}> vanishes", pair.0, pair.1)));
            }
        }
        Ok(p)
    }

    /// Columns (1; λᵢ).
    pub fn from_lambda(lambda: &[f64; 6]) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        Self::new([[one; 6], lambda.map(|l| Complex64::new(l, 0.0))])
    }

    pub fn from_complex_lambda(lambda: &[Complex64; 6]) -> Result<Self> {
        Self::new([[Complex64::new(1.0, 0.0); 6], *lambda])
    }

    /// Rows (0,1,1,1,1,1) and (1,0,1,ℓ₁,ℓ₂,ℓ₃).
    pub fn normal_form(ell: [Complex64; 3]) -> Result<Self> {
        let (z, o) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        Self::new([[z, o, o, o, o, o], [o, z, o, ell[0], ell[1], ell[2]]])
    }

    pub fn matrix(&self) -> &[[Complex64; 6]; 2] {
        &self.m
    }

    fn bracket_raw(&self, i: usize, j: usize) -> Complex64 {
        det2(self.m[0][i], self.m[0][j], self.m[1][i], self.m[1][j])
    }

    /// Column permutation with (σ·m)_{σ(i)} = m_i.
    pub fn permute(&self, sigma: &Permutation) -> Self {
        let mut m = self.m;
        for i in 0..6 {
            let k = sigma.apply(i as u8 + 1) as usize - 1;
            m[0][k] = self.m[0][i];
            m[1][k] = self.m[1][i];
        }
        Self { m }
    }

    /// Left multiplication by a 2×2 matrix.
    pub fn left_mul(&self, g: [[Complex64; 2]; 2]) -> Result<Self> {
        let mut m = self.m;
        for c in 0..6 {
            m[0][c] = g[0][0] * self.m[0][c] + g[0][1] * self.m[1][c];
            m[1][c] = g[1][0] * self.m[0][c] + g[1][1] * self.m[1][c];
        }
        Self::new(m)
    }

    pub fn scale_columns(&self, s: [Complex64; 6]) -> Result<Self> {
        let mut m = self.m;
        for c in 0..6 {
            m[0][c] *= s[c];
            m[1][c] *= s[c];
        }
        Self::new(m)
    }
}

/// ⟨kl⟩ = m₁ₖm₂ₗ − m₁ₗm₂ₖ for 1-based k, l.
pub fn bracket(m: &ConfigPoint, k: u8, l: u8) -> Result<Complex64> {
    if !(1..=6).contains(&k) || !(1..=6).contains(&l) {
        return Err(Error::Input(format!("bracket index out of range ({k},{l})")));
    }
    Ok(m.bracket_raw(k as usize - 1, l as usize - 1))
}

/// Canonical index ⟨ij;kl;mn⟩: i<j, k<l, m<n, pairs sorted by first element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YIndex(pub [Pair; 3]);

impl YIndex {
    /// The fifteen canonical indices in lexicographic order.
    pub fn all() -> Vec<YIndex> {
        let mut out = Vec::with_capacity(15);
        for j in 2..=6u8 {
            let rest: Vec<u8> = (2..=6).filter(|&x| x != j).collect();
            let (k, others) = (rest[0], &rest[1..]);
            for &l in others {
                let mn: Vec<u8> = others.iter().copied().filter(|&x| x != l).collect();
                out.push(YIndex([Pair(1, j), Pair(k, l), Pair(mn[0], mn[1])]));
            }
        }
        out
    }

    pub fn position(&self) -> usize {
        YIndex::all().iter().position(|x| x == self).expect("canonical index")
    }

    /// Canonicalises three ordered pairs; returns the index and the sign (−1)^(#reversed pairs).
    pub fn from_pairs(pairs: [(u8, u8); 3]) -> Result<(YIndex, f64)> {
        let mut sign = 1.0;
        let mut ps = [Pair(0, 0); 3];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if i > j {
                sign = -sign;
            }
            ps[k] = Pair::new(i, j)?;
        }
        ps.sort();
        let mut letters: Vec<u8> = ps.iter().flat_map(|p| [p.0, p.1]).collect();
        letters.sort();
        if letters != [1, 2, 3, 4, 5, 6] {
            return Err(Error::Input(format!("{pairs:?} is not a perfect matching of 1..6")));
        }
        Ok((YIndex(ps), sign))
    }
}

impl fmt::Display for YIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{};{};{}>", self.0[0], self.0[1], self.0[2])
    }
}

/// A projective point of P¹⁴ in the canonical coordinates y⟨ij;kl;mn⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct YPoint {
    pub y: [Complex64; 15],
}

impl YPoint {
    pub fn new(y: [Complex64; 15]) -> Result<Self> {
        if y.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
            return Err(Error::Input("all coordinates vanish".into()));
        }
        Ok(Self { y })
    }

    pub fn get(&self, idx: &YIndex) -> Complex64 {
        self.y[idx.position()]
    }

    /// y for arbitrary ordered pairs, with y⟨ji;…⟩ = −y⟨ij;…⟩ and pair-order symmetry.
    pub fn signed(&self, pairs: [(u8, u8); 3]) -> Result<Complex64> {
        let (idx, sign) = YIndex::from_pairs(pairs)?;
        Ok(self.get(&idx) * sign)
    }

    /// Scaled so the entry of largest modulus (first on ties) is 1.
    pub fn normalized(&self) -> YPoint {
        let k = argmax(&self.y);
        let s = self.y[k];
        YPoint { y: self.y.map(|z| z / s) }
    }
}

fn argmax(v: &[Complex64]) -> usize {
    let mut k = 0;
    for i in 1..v.len() {
        if v[i].norm() > v[k].norm() {
            k = i;
        }
    }
    k
}

/// [… , ⟨ij⟩⟨kl⟩⟨mn⟩, …] ∈ P¹⁴.
pub fn iota(m: &ConfigPoint) -> YPoint {
    let y = YIndex::all().iter().map(|idx| idx.0.iter().map(|p| m.bracket_raw(p.0 as usize - 1, p.1 as usize - 1)).product()).collect::<Vec<Complex64>>();
    YPoint { y: y.try_into().expect("fifteen coordinates") }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residuals {
    pub linear: f64,
    pub cubic: f64,
}

/// Maximal residuals of the linear three-term and cubic six-factor identities over all
/// 720 orderings of the letters, after scaling y to max modulus 1.
pub fn y_relation_residuals(y: &YPoint) -> Residuals {
    let yn = y.normalized();
    let mut lin = 0.0f64;
    let mut cub = 0.0f64;
    let g = |p: [(u8, u8); 3]| yn.signed(p).expect("valid matching");
    for perm in Permutation::all() {
        let [i, j, k, l, m, n] = perm.0;
        let r = g([(i, j), (k, l), (m, n)]) - g([(i, j), (k, m), (l, n)]) + g([(i, j), (k, n), (l, m)]);
        lin = lin.max(r.norm());
        let c = g([(i, j), (k, l), (m, n)]) * g([(i, k), (j, n), (l, m)]) * g([(i, m), (j, l), (k, n)])
            - g([(i, j), (k, n), (l, m)]) * g([(i, k), (j, l), (m, n)]) * g([(i, m), (j, n), (k, l)]);
        cub = cub.max(c.norm());
    }
    Residuals { linear: lin, cubic: cub }
}

/// A permutation σ of {1..6}, stored as images (σ(1), …, σ(6)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub [u8; 6]);

impl Permutation {
    pub fn identity() -> Self {
        Permutation([1, 2, 3, 4, 5, 6])
    }

    pub fn from_images(images: [u8; 6]) -> Result<Self> {
        let mut s = images;
        s.sort();
        if s != [1, 2, 3, 4, 5, 6] {
            return Err(Error::Input(format!("{images:?} is not a permutation of 1..6")));
        }
        Ok(Permutation(images))
    }

    pub fn transposition(i: u8, j: u8) -> Result<Self> {
        let p = Pair::new(i, j)?;
        let mut img = [1, 2, 3, 4, 5, 6];
        img.swap(p.0 as usize - 1, p.1 as usize - 1);
        Ok(Permutation(img))
    }

    /// Cycle notation such as "(123)" or "(12)(34)".
    pub fn from_cycles(s: &str) -> Result<Self> {
        let mut img = [1, 2, 3, 4, 5, 6];
        for cyc in s.split(')').map(|c| c.trim().trim_start_matches('(')).filter(|c| !c.is_empty()) {
            let ds: Vec<u8> = cyc
                .chars()
                .map(|ch| ch.to_digit(10).filter(|d| (1..=6).contains(d)).map(|d| d as u8).ok_or_else(|| Error::Input(format!("bad cycle '{s}'"))))
                .collect::<Result<_>>()?;
            for w in 0..ds.len() {
                img[ds[w] as usize - 1] = ds[(w + 1) % ds.len()];
            }
        }
        Self::from_images(img)
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.0[i as usize - 1]
    }

    /// (σ∘τ)(i) = σ(τ(i))
    pub fn compose(&self, tau: &Permutation) -> Permutation {
        Permutation(tau.0.map(|t| self.apply(t)))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = [0u8; 6];
        for i in 0..6 {
            inv[self.0[i] as usize - 1] = i as u8 + 1;
        }
        Permutation(inv)
    }

    /// All 720 permutations, lexicographic in the image tuple.
    pub fn all() -> Vec<Permutation> {
        let mut out = Vec::with_capacity(720);
        let mut cur = [1u8, 2, 3, 4, 5, 6];
        loop {
            out.push(Permutation(cur));
            // next lexicographic permutation
            let Some(i) = (0..5).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
            let j = (i + 1..6).rev().find(|&j| cur[j] > cur[i]).expect("exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; 6];
        let mut any = false;
        for start in 1..=6u8 {
            if seen[start as usize - 1] || self.apply(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut k = start;
            while !seen[k as usize - 1] {
                seen[k as usize - 1] = true;
                write!(f, "{k}")?;
                k = self.apply(k);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "id")?;
        }
        Ok(())
    }
}

/// (σ·y)_I = y_{σ⁻¹(I)}, signs from the antisymmetry convention.
pub fn s6_act(sigma: &Permutation, y: &YPoint) -> YPoint {
    let inv = sigma.inverse();
    let vals: Vec<Complex64> = YIndex::all()
        .iter()
        .map(|idx| {
            let p = idx.0.map(|p| (inv.apply(p.0), inv.apply(p.1)));
            y.signed(p).expect("permuted matching")
        })
        .collect();
    YPoint { y: vals.try_into().expect("fifteen coordinates") }
}

/// (ℓ₁, ℓ₂, ℓ₃) with ℓ_c = ⟨2c⟩⟨13⟩ / (⟨1c⟩⟨23⟩), c = 4, 5, 6: the images of columns 4..6 when
/// columns 1, 2, 3 go to ∞, 0, 1.
pub fn normalize_config(m: &ConfigPoint) -> Result<[Complex64; 3]> {
    let b = |i: u8, j: u8| m.bracket_raw(i as usize - 1, j as usize - 1);
    let mut ell = [Complex64::new(0.0, 0.0); 3];
    for (k, c) in (4..=6u8).enumerate() {
        let den = b(1, c) * b(2, 3);
        if den.norm() == 0.0 {
            return Err(Error::Domain("degenerate minors in normalisation".into()));
        }
        ell[k] = b(2, c) * b(1, 3) / den;
    }
    Ok(ell)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectiveComparison {
    /// Both vectors scaled by the entry where the reference is largest; max |a − b| / max |b|.
    pub max_rel_dev: f64,
    /// Same with the least-squares scale.
    pub lsq_rel_dev: f64,
}

pub fn projective_deviation(a: &[Complex64], b: &[Complex64]) -> ProjectiveComparison {
    assert_eq!(a.len(), b.len());
    let k = argmax(b);
    let an: Vec<Complex64> = a.iter().map(|z| z / a[k]).collect();
    let bn: Vec<Complex64> = b.iter().map(|z| z / b[k]).collect();
    let max_rel_dev = an.iter().zip(&bn).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    // a ≈ s·b
    let num: Complex64 = b.iter().zip(a).map(|(y, x)| y.conj() * x).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    let s = num / den;
    let bmax = b[k].norm();
    let lsq_rel_dev = a.iter().zip(b).map(|(x, y)| (x / s - y).norm()).fold(0.0, f64::max) / bmax;
    ProjectiveComparison { max_rel_dev: if max_rel_dev.is_nan() { f64::INFINITY } else { max_rel_dev }, lsq_rel_dev: if lsq_rel_dev.is_nan() { f64::INFINITY } else { lsq_rel_dev } }
}
