//! Cycle tables (serialized sheet paths), the forward period map ψ and the full period matrix.

use std::str::FromStr;

use nalgebra::Matrix4;
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Deserialize;

use super::branch::BranchData;
use super::path::{path_integral, Form, Segment, SheetPath, SheetSegment};
use crate::algebra::complex::CMatrix4;
use crate::algebra::OMEGA;
use crate::ball::{embed_j, inside_ball, BallPoint};
use crate::error::{Error, Result};

const COLLAPSED: &str = include_str!("../../data/cycles_collapsed.json");
const DETOUR: &str = include_str!("../../data/cycles_detour.json");

pub const CYCLE_NAMES: [&str; 8] = ["A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4"];

/// [k, re, im] = λₖ + (re + i·im)·unit, re and im rationals written "p/q".
#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct Waypoint(pub u8, pub String, pub String);

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct SegmentSpec {
    pub to: Waypoint,
    pub sheet: u8,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct CycleSpec {
    pub name: String,
    pub start: Waypoint,
    pub segments: Vec<SegmentSpec>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct CycleTable {
    #[serde(default)]
    pub description: String,
    pub unit: String,
    pub cycles: Vec<CycleSpec>,
}

fn parse_rational(s: &str) -> Result<f64> {
    let r = Rational64::from_str(s.trim()).map_err(|e| Error::CycleTable(format!("bad rational '{s}': {e}")))?;
    r.to_f64().ok_or_else(|| Error::CycleTable(format!("rational '{s}' out of range")))
}

impl Waypoint {
    pub fn resolve(&self, branch: &BranchData, unit: f64) -> Result<Complex64> {
        if !(1..=6).contains(&self.0) {
            return Err(Error::CycleTable(format!("waypoint index {} not in 1..=6", self.0)));
        }
        let (re, im) = (parse_rational(&self.1)?, parse_rational(&self.2)?);
        Ok(Complex64::new(branch.lambda()[self.0 as usize - 1] + re * unit, im * unit))
    }
}

impl CycleTable {
    pub fn from_json(s: &str) -> Result<Self> {
        let t: CycleTable = serde_json::from_str(s).map_err(|e| Error::CycleTable(format!("cannot parse cycle table: {e}")))?;
        if t.unit != "min_gap/4" {
            return Err(Error::CycleTable(format!("unsupported unit '{}'", t.unit)));
        }
        for name in CYCLE_NAMES {
            if !t.cycles.iter().any(|c| c.name == name) {
                return Err(Error::CycleTable(format!("cycle {name} missing")));
            }
        }
        Ok(t)
    }

    /// Real-axis runs between branch points.
    pub fn collapsed() -> Self {
        Self::from_json(COLLAPSED).expect("bundled table parses")
    }

    /// Square detours around every branch point.
    pub fn detour() -> Self {
        Self::from_json(DETOUR).expect("bundled table parses")
    }

    /// Concrete closed paths for this branch data, unit = scale·min_gap/4.
    pub fn instantiate(&self, branch: &BranchData, scale: f64) -> Result<Vec<(String, SheetPath)>> {
        let unit = scale * branch.min_gap() / 4.0;
        self.cycles
            .iter()
            .map(|c| {
                let mut at = c.start.resolve(branch, unit)?;
                let mut segs = Vec::with_capacity(c.segments.len());
                for s in &c.segments {
                    let to = s.to.resolve(branch, unit)?;
                    segs.push(SheetSegment { segment: Segment::Line { from: at, to }, sheet: s.sheet });
                    at = to;
                }
                let path = SheetPath::new(segs, true, branch).map_err(|e| Error::CycleTable(format!("cycle {}: {e}", c.name)))?;
                Ok((c.name.clone(), path))
            })
            .collect()
    }

    /// ∫ of `form` over the eight cycles, ordered A1..A4, B1..B4.
    pub fn periods(&self, branch: &BranchData, form: Form, scale: f64, tol: f64) -> Result<[Complex64; 8]> {
        let paths = self.instantiate(branch, scale)?;
        let vals: Vec<Result<Complex64>> = CYCLE_NAMES
            .par_iter()
            .map(|name| {
                let (_, p) = paths.iter().find(|(n, _)| n == name).expect("validated names");
                Ok(path_integral(p, form, branch, tol)?.value)
            })
            .collect();
        let mut out = [Complex64::new(0.0, 0.0); 8];
        for (k, v) in vals.into_iter().enumerate() {
            out[k] = v?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CyclePeriods {
    pub x_a: [Complex64; 4],
    pub x_b: [Complex64; 4],
    /// max(|x_Aᵢ − ω²x_Bᵢ| (i ≤ 3), |x_A₄ + ω²x_B₄|) / max|x_A|
    pub twist_residual: f64,
    /// ᵗx̄_A H x_A / |x_A|²
    pub hermitian_value: f64,
}

pub fn twist_residual(x_a: &[Complex64; 4], x_b: &[Complex64; 4]) -> f64 {
    let w2 = OMEGA * OMEGA;
    let scale = x_a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let r = (0..3).map(|i| (x_a[i] - w2 * x_b[i]).norm()).fold((x_a[3] + w2 * x_b[3]).norm(), f64::max);
    r / scale
}

/// x = (∫_{A₁}φ₁, …, ∫_{A₄}φ₁) from the bundled collapsed table.
pub fn psi_forward(branch: &BranchData, tol: f64) -> Result<CyclePeriods> {
    psi_forward_with(&CycleTable::collapsed(), branch, 1.0, tol)
}

pub fn psi_forward_with(table: &CycleTable, branch: &BranchData, scale: f64, tol: f64) -> Result<CyclePeriods> {
    let p = table.periods(branch, Form::PHI1, scale, tol)?;
    let x_a = [p[0], p[1], p[2], p[3]];
    let x_b = [p[4], p[5], p[6], p[7]];
    let twist = twist_residual(&x_a, &x_b);
    if !(twist <= 10.0 * tol) {
        return Err(Error::CycleTable(format!("rho-twist residual {twist:e} exceeds {:e}", 10.0 * tol)));
    }
    let (inside, _) = inside_ball(&x_a)?;
    let norm2: f64 = x_a.iter().map(|z| z.norm_sqr()).sum();
    let herm = crate::algebra::hermitian_pairing(&x_a, &x_a)?.re / norm2;
    if !inside {
        return Err(Error::CycleTable(format!("A-periods lie outside the ball (<x,x> = {herm:e})")));
    }
    Ok(CyclePeriods { x_a, x_b, twist_residual: twist, hermitian_value: herm })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FullPeriods {
    /// Rows A1..A4, columns φ₁..φ₄.
    pub omega_a: CMatrix4,
    pub omega_b: CMatrix4,
    /// Ω_A Ω_B⁻¹
    pub normalized: CMatrix4,
    pub symmetry_defect: f64,
    pub imag_lambda_min: f64,
    /// max |Ω_A Ω_B⁻¹ − j(x_A)|
    pub embedding_deviation: f64,
}

/// All four forms over all eight cycles.
pub fn full_period_matrix(table: &CycleTable, branch: &BranchData, tol: f64) -> Result<FullPeriods> {
    let mut oa = CMatrix4::zeros();
    let mut ob = CMatrix4::zeros();
    for (j, form) in Form::basis().into_iter().enumerate() {
        let p = table.periods(branch, form, 1.0, tol)?;
        for i in 0..4 {
            oa[(i, j)] = p[i];
            ob[(i, j)] = p[4 + i];
        }
    }
    let inv = ob.try_inverse().ok_or_else(|| Error::Degenerate("B-period matrix is singular".into()))?;
    let omega = oa * inv;
    let symmetry_defect = (omega - omega.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let im: Matrix4<f64> = omega.map(|z| z.im);
    let sym_im = (im + im.transpose()) * 0.5;
    let imag_lambda_min = sym_im.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
    let xa: Vec<Complex64> = (0..4).map(|i| oa[(i, 0)]).collect();
    let j = embed_j(&BallPoint::new(&xa)?)?;
    let embedding_deviation = (omega - j.tau()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(FullPeriods { omega_a: oa, omega_b: ob, normalized: omega, symmetry_defect, imag_lambda_min, embedding_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> BranchData {
        BranchData::new([0.0, 1.0, 2.0, 3.0, 4.0, 5.0]).unwrap()
    }

    #[test]
    fn bundled_tables_parse_and_close() {
        for t in [CycleTable::collapsed(), CycleTable::detour()] {
            assert_eq!(t.instantiate(&line(), 1.0).unwrap().len(), 8);
        }
    }

    #[test]
    fn forward_at_the_equally_spaced_point() {
        let p = psi_forward(&line(), 1e-10).unwrap();
        assert!(p.twist_residual < 1e-12);
        assert!(p.hermitian_value < 0.0);
    }

    #[test]
    fn detour_table_agrees_with_collapsed() {
        let b = BranchData::new([0.3, 1.1, 2.9, 3.3, 6.0, 9.5]).unwrap();
        let a = psi_forward(&b, 1e-10).unwrap();
        for scale in [1.0, 2.0] {
            let d = psi_forward_with(&CycleTable::detour(), &b, scale, 1e-10).unwrap();
            for i in 0..4 {
                assert!((a.x_a[i] - d.x_a[i]).norm() < 1e-9, "{scale} A{}", i + 1);
                assert!((a.x_b[i] - d.x_b[i]).norm() < 1e-9, "{scale} B{}", i + 1);
            }
        }
    }

    #[test]
    fn translation_and_scaling() {
        let lam = [0.0, 1.0, 2.5, 3.0, 4.2, 5.0];
        let p = psi_forward(&BranchData::new(lam).unwrap(), 1e-10).unwrap();
        let q = psi_forward(&BranchData::new(lam.map(|l| l + 3.7)).unwrap(), 1e-10).unwrap();
        let s = 2.5;
        let r = psi_forward(&BranchData::new(lam.map(|l| l * s)).unwrap(), 1e-10).unwrap();
        for i in 0..4 {
            assert!((p.x_a[i] - q.x_a[i]).norm() < 1e-10);
            assert!((p.x_a[i] / s - r.x_a[i]).norm() < 1e-10);
        }
    }

    #[test]
    fn full_period_matrix_is_the_embedding() {
        let f = full_period_matrix(&CycleTable::collapsed(), &line(), 1e-10).unwrap();
        assert!(f.symmetry_defect < 1e-8);
        assert!(f.imag_lambda_min > 0.0);
        assert!(f.embedding_deviation < 1e-8, "{}", f.embedding_deviation);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(matches!(CycleTable::from_json("{}"), Err(Error::CycleTable(_))));
        let bad = COLLAPSED.replacen("\"sheet\": 1", "\"sheet\": 2", 1);
        let t = CycleTable::from_json(&bad).unwrap();
        let b = line();
        let p = t.instantiate(&b, 1.0).unwrap();
        // collapsed junctions sit on branch points, so only the twist check can catch it
        assert_eq!(p.len(), 8);
        assert!(matches!(psi_forward_with(&t, &b, 1.0, 1e-10), Err(Error::CycleTable(_))));
        let bad_detour = DETOUR.replacen("\"sheet\": 1", "\"sheet\": 2", 1);
        assert!(matches!(CycleTable::from_json(&bad_detour).unwrap().instantiate(&b, 1.0), Err(Error::CycleTable(_))));
    }
}
