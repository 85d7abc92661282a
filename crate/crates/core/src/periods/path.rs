//! Sheet-tracked paths on the triple cover and integrals of zᵐ dz / wᵖ along them.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::branch::{omega_pow, BranchData};
use super::quadrature::{segment_integral, tanh_sinh, SegmentPoint};
use crate::error::{Error, Result};

/// zᵐ dz / wᵖ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    pub w_power: u32,
    pub z_power: u32,
}

impl Form {
    pub const PHI1: Form = Form { w_power: 1, z_power: 0 };
    pub const PHI2: Form = Form { w_power: 2, z_power: 0 };
    pub const PHI3: Form = Form { w_power: 2, z_power: 1 };
    pub const PHI4: Form = Form { w_power: 2, z_power: 2 };

    pub fn basis() -> [Form; 4] {
        [Self::PHI1, Self::PHI2, Self::PHI3, Self::PHI4]
    }

    /// ω^{−kp}: the factor relating sheet k to sheet 0.
    pub fn sheet_factor(&self, sheet: i64) -> Complex64 {
        omega_pow(-sheet * self.w_power as i64)
    }

    fn on_sheet0(&self, z: Complex64, offsets: &[Complex64; 6]) -> Complex64 {
        z.powu(self.z_power) / BranchData::w0_pow_from_offsets(offsets, self.w_power)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Segment {
    Line { from: Complex64, to: Complex64 },
    /// c + r·e^{iθ}, θ from `start` to `end` (radians, signed sweep).
    Arc { center: Complex64, radius: f64, start: f64, end: f64 },
}

impl Segment {
    pub fn start_point(&self) -> Complex64 {
        match *self {
            Segment::Line { from, .. } => from,
            Segment::Arc { center, radius, start, .. } => center + Complex64::from_polar(radius, start),
        }
    }

    pub fn end_point(&self) -> Complex64 {
        match *self {
            Segment::Line { to, .. } => to,
            Segment::Arc { center, radius, end, .. } => center + Complex64::from_polar(radius, end),
        }
    }

    fn point_at(&self, s: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * s,
            Segment::Arc { center, radius, start, end } => center + Complex64::from_polar(radius, start + (end - start) * s),
        }
    }

    /// Slit crossings in the open parameter interval (0, 1): (s, sheet increment), sorted.
    fn crossings(&self, branch: &BranchData) -> Result<Vec<(f64, i64)>> {
        let mut out = Vec::new();
        for &l in branch.lambda() {
            match *self {
                Segment::Line { from, to } => {
                    let d = to - from;
                    if d.re == 0.0 {
                        if from.re == l && (from.im < 0.0 || to.im < 0.0) {
                            return Err(Error::Input(format!("segment {from} -> {to} runs along the cut below {l}")));
                        }
                        continue;
                    }
                    let s = (l - from.re) / d.re;
                    if s > 0.0 && s < 1.0 {
                        let im = from.im + s * d.im;
                        if im < 0.0 {
                            out.push((s, if d.re > 0.0 { 1 } else { -1 }));
                        } else if im == 0.0 {
                            return Err(Error::SingularPoint(format!("segment {from} -> {to} passes through the branch point {l}")));
                        }
                    }
                }
                Segment::Arc { center, radius, start, end } => {
                    let q = (l - center.re) / radius;
                    if q.abs() >= 1.0 {
                        continue;
                    }
                    let (lo, hi) = if start <= end { (start, end) } else { (end, start) };
                    let base = q.acos();
                    for root in [base, -base] {
                        let mut n = ((lo - root) / (2.0 * PI)).floor() - 1.0;
                        loop {
                            let th = root + 2.0 * PI * n;
                            n += 1.0;
                            if th <= lo {
                                continue;
                            }
                            if th >= hi {
                                break;
                            }
                            let im = center.im + radius * th.sin();
                            let s = (th - start) / (end - start);
                            if im < 0.0 {
                                let dre = -radius * th.sin() * (end - start).signum();
                                out.push((s, if dre > 0.0 { 1 } else { -1 }));
                            } else if im == 0.0 {
                                return Err(Error::SingularPoint(format!("arc passes through the branch point {l}")));
                            }
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        Ok(out)
    }

    fn sub(&self, s0: f64, s1: f64) -> Segment {
        match *self {
            Segment::Line { from, to } => Segment::Line {
                from: if s0 == 0.0 { from } else { self.point_at(s0) },
                to: if s1 == 1.0 { to } else { self.point_at(s1) },
            },
            Segment::Arc { center, radius, start, end } => {
                Segment::Arc { center, radius, start: start + (end - start) * s0, end: start + (end - start) * s1 }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SheetSegment {
    pub segment: Segment,
    /// Sheet in force at the start of the segment.
    pub sheet: u8,
}

/// A validated path: consecutive segments join, sheets follow the crossing rule except at
/// branch points, where any sheet may be entered.
#[derive(Clone, Debug, PartialEq)]
pub struct SheetPath {
    segments: Vec<SheetSegment>,
    closed: bool,
    pieces: Vec<(Segment, i64)>,
}

const JOIN_TOL: f64 = 1e-12;

fn near(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= JOIN_TOL * (1.0 + a.norm().max(b.norm()))
}

fn is_branch(z: Complex64, branch: &BranchData) -> bool {
    branch.lambda().iter().any(|&l| near(z, Complex64::new(l, 0.0)))
}

impl SheetPath {
    pub fn new(segments: Vec<SheetSegment>, closed: bool, branch: &BranchData) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Input("empty path".into()));
        }
        let mut pieces = Vec::new();
        let mut end_sheet = 0i64;
        for (idx, seg) in segments.iter().enumerate() {
            if seg.sheet > 2 {
                return Err(Error::Input(format!("segment {idx}: sheet {} not in 0..=2", seg.sheet)));
            }
            if idx > 0 {
                let prev = segments[idx - 1].segment.end_point();
                let here = seg.segment.start_point();
                if !near(prev, here) {
                    return Err(Error::Input(format!("segment {idx} starts at {here}, previous ends at {prev}")));
                }
                if !is_branch(here, branch) && end_sheet.rem_euclid(3) != seg.sheet as i64 {
                    return Err(Error::Input(format!("segment {idx}: sheet {} but the crossing rule gives {}", seg.sheet, end_sheet.rem_euclid(3))));
                }
            }
            let mut sheet = seg.sheet as i64;
            let mut s0 = 0.0;
            for (s, inc) in seg.segment.crossings(branch)? {
                pieces.push((seg.segment.sub(s0, s), sheet));
                sheet += inc;
                s0 = s;
            }
            pieces.push((seg.segment.sub(s0, 1.0), sheet));
            end_sheet = sheet;
        }
        if closed {
            let first = segments[0].segment.start_point();
            let last = segments[segments.len() - 1].segment.end_point();
            if !near(first, last) {
                return Err(Error::Input(format!("path is not closed: starts at {first}, ends at {last}")));
            }
            if !is_branch(first, branch) && end_sheet.rem_euclid(3) != segments[0].sheet as i64 {
                return Err(Error::Input(format!("path returns to its start on sheet {} instead of {}", end_sheet.rem_euclid(3), segments[0].sheet)));
            }
        }
        Ok(Self { segments, closed, pieces })
    }

    pub fn segments(&self) -> &[SheetSegment] {
        &self.segments
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// The same path with every sheet index raised by `k` (the deck transformation ρᵏ).
    pub fn shifted(&self, k: u8, branch: &BranchData) -> Result<Self> {
        let segs = self.segments.iter().map(|s| SheetSegment { segment: s.segment, sheet: (s.sheet + k) % 3 }).collect();
        Self::new(segs, self.closed, branch)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathIntegral {
    pub value: Complex64,
    /// Sum of the last-level changes of all pieces.
    pub change: f64,
    pub evaluations: usize,
}

fn piece_integral(seg: &Segment, sheet: i64, form: Form, branch: &BranchData, tol: f64) -> Result<PathIntegral> {
    let lam = branch.points();
    let factor = form.sheet_factor(sheet);
    let r = match *seg {
        Segment::Line { from, to } => {
            let f = |p: &SegmentPoint| form.on_sheet0(p.z, &lam.map(|l| p.offset(l)));
            segment_integral(&f, from, to, tol)?
        }
        Segment::Arc { center, radius, start, end } => {
            let sweep = end - start;
            let f = |s: f64, _t: f64| {
                let e = Complex64::from_polar(radius, start + sweep * s);
                let z = center + e;
                form.on_sheet0(z, &lam.map(|l| z - l)) * Complex64::i() * e * sweep
            };
            tanh_sinh(f, tol)?
        }
    };
    Ok(PathIntegral { value: r.value * factor, change: r.change, evaluations: r.evaluations })
}

/// ∫ zᵐ dz / wᵖ along the path with sheet-tracked w.
pub fn path_integral(path: &SheetPath, form: Form, branch: &BranchData, tol: f64) -> Result<PathIntegral> {
    let parts: Vec<Result<PathIntegral>> = path.pieces.par_iter().map(|(seg, sheet)| piece_integral(seg, *sheet, form, branch, tol)).collect();
    let mut total = PathIntegral { value: Complex64::new(0.0, 0.0), change: 0.0, evaluations: 0 };
    for p in parts {
        let p = p?;
        total.value += p.value;
        total.change += p.change;
        total.evaluations += p.evaluations;
    }
    Ok(total)
}

/// ∮ dz/w over a closed sheet path.
pub fn cycle_period(path: &SheetPath, branch: &BranchData, tol: f64) -> Result<Complex64> {
    if !path.is_closed() {
        return Err(Error::Input("cycle_period needs a closed path".into()));
    }
    Ok(path_integral(path, Form::PHI1, branch, tol)?.value)
}
