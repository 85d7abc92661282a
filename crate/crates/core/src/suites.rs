//! Verification suites: exact group and characteristic checks, theta identities on seeded
//! samples, quadrature and forward-map certificates, and the roundtrip.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::ball::BallPoint;
use crate::config_space::{projective_deviation, s6_act, y_relation_residuals, Permutation};
use crate::error::{Error, Result};
use crate::inverse::{roundtrip, y_from_cubes};
use crate::periods::{full_period_matrix, psi_forward, quadrature, BranchData, CycleTable, EndpointWeight};
use crate::reflection::{apply, omega_generators, root_for_pair, verify_group_relations, zeta_generators, Exponent, Pair};
use crate::sampling::{Sampler, DEFAULT_MARGIN};
use crate::symplectic::{char_action, fixed_sixth_characteristics, lift_reflection, lift_unitary, w_matrix, SymplecticLift};
use crate::theta::{all_labeled_characteristics, all_theta_constants, classify, label_for_key, theta_constant, theta_cubes, CharacteristicLabel, ClassTag, ThetaConfig};
use crate::ball::embed_j;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Group,
    Characteristics,
    Vanishing,
    Relations,
    Invariance,
    Equivariance,
    Mirror,
    Quadrature,
    Forward,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Group,
        Suite::Characteristics,
        Suite::Vanishing,
        Suite::Relations,
        Suite::Invariance,
        Suite::Equivariance,
        Suite::Mirror,
        Suite::Quadrature,
        Suite::Forward,
        Suite::Roundtrip,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Group => "group",
            Suite::Characteristics => "characteristics",
            Suite::Vanishing => "vanishing",
            Suite::Relations => "relations",
            Suite::Invariance => "invariance",
            Suite::Equivariance => "equivariance",
            Suite::Mirror => "mirror",
            Suite::Quadrature => "quadrature",
            Suite::Forward => "forward",
            Suite::Roundtrip => "roundtrip",
        }
    }

    pub fn from_name(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Input(format!("unknown suite '{s}'")))
    }

    /// Sample count used when none is given.
    pub fn default_samples(&self) -> usize {
        match self {
            Suite::Group | Suite::Characteristics => 0,
            Suite::Vanishing => 50,
            Suite::Relations => 100,
            Suite::Invariance => 50,
            Suite::Equivariance => 20,
            Suite::Mirror => 5,
            Suite::Quadrature => 10,
            Suite::Forward => 20,
            Suite::Roundtrip => 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub value: Option<f64>,
    pub threshold: Option<f64>,
    /// Stretch checks are reported but do not decide the suite.
    pub stretch: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub samples: usize,
    pub seed: u64,
    pub eps: f64,
    pub tol: f64,
    pub checks: Vec<CheckResult>,
    pub max_tail_bound: f64,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.stretch)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed && !c.stretch).collect()
    }

    pub fn max_value(&self, prefix: &str) -> f64 {
        self.checks.iter().filter(|c| c.name.starts_with(prefix)).filter_map(|c| c.value).fold(0.0, f64::max)
    }

    pub fn min_value(&self, prefix: &str) -> f64 {
        self.checks.iter().filter(|c| c.name.starts_with(prefix)).filter_map(|c| c.value).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub samples: Option<usize>,
    pub seed: u64,
    pub eps: f64,
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { samples: None, seed: 0, eps: 1e-12, tol: 1e-8 }
    }
}

struct Checks {
    items: Vec<CheckResult>,
    tail: f64,
}

impl Checks {
    fn new() -> Self {
        Self { items: Vec::new(), tail: 0.0 }
    }

    fn exact(&mut self, name: impl Into<String>, passed: bool) {
        self.items.push(CheckResult { name: name.into(), passed, value: None, threshold: None, stretch: false });
    }

    fn below(&mut self, name: impl Into<String>, value: f64, threshold: f64) {
        self.items.push(CheckResult { name: name.into(), passed: value < threshold, value: Some(value), threshold: Some(threshold), stretch: false });
    }

    fn above(&mut self, name: impl Into<String>, value: f64, threshold: f64) {
        self.items.push(CheckResult { name: name.into(), passed: value > threshold, value: Some(value), threshold: Some(threshold), stretch: false });
    }

    fn stretch_below(&mut self, name: impl Into<String>, value: f64, threshold: f64) {
        self.items.push(CheckResult { name: name.into(), passed: value < threshold, value: Some(value), threshold: Some(threshold), stretch: true });
    }

    fn error(&mut self, name: impl Into<String>, e: &Error) {
        self.items.push(CheckResult { name: format!("{}: {e}", name.into()), passed: false, value: None, threshold: None, stretch: false });
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if !(cfg.eps > 0.0) || !(cfg.tol > 0.0) {
        return Err(Error::Input("eps and tol must be positive".into()));
    }
    let start = Instant::now();
    let samples = cfg.samples.unwrap_or(suite.default_samples());
    let theta_cfg = ThetaConfig::with_eps(cfg.eps);
    let mut checks = Checks::new();
    match suite {
        Suite::Group => group(&mut checks),
        Suite::Characteristics => characteristics(&mut checks),
        Suite::Vanishing => vanishing(&mut checks, samples, cfg.seed, &theta_cfg)?,
        Suite::Relations => relations(&mut checks, samples, cfg.seed, &theta_cfg)?,
        Suite::Invariance => invariance(&mut checks, samples, cfg.seed, &theta_cfg)?,
        Suite::Equivariance => equivariance(&mut checks, samples, cfg.seed, &theta_cfg)?,
        Suite::Mirror => mirror(&mut checks, samples, cfg.seed, &theta_cfg)?,
        Suite::Quadrature => quadrature_suite(&mut checks, samples, cfg.seed, cfg.tol)?,
        Suite::Forward => forward(&mut checks, samples, cfg.seed, cfg.tol)?,
        Suite::Roundtrip => roundtrip_suite(&mut checks, samples, cfg.seed, cfg.tol, &theta_cfg)?,
    }
    Ok(SuiteReport { suite, samples, seed: cfg.seed, eps: cfg.eps, tol: cfg.tol, checks: checks.items, max_tail_bound: checks.tail, elapsed: start.elapsed() })
}

fn omega_lifts() -> Vec<SymplecticLift> {
    omega_generators().iter().map(|g| lift_reflection(&root_for_pair(g.pair.0, g.pair.1).expect("table pair").v, Exponent::Omega).expect("anisotropic root")).collect()
}

fn group(c: &mut Checks) {
    for check in verify_group_relations().checks {
        c.exact(check.name, check.passed);
    }
    for g in omega_generators().into_iter().chain(zeta_generators()) {
        let l = lift_unitary(&g.matrix());
        c.exact(format!("lift of {g} is integral symplectic"), l.is_integral() && l.is_symplectic());
        let root = root_for_pair(g.pair.0, g.pair.1).expect("table pair");
        match lift_reflection(&root.v, g.exponent) {
            Ok(grass) => c.exact(format!("Grassmannian lift of {g} equals the unitary lift"), grass.g8 == l.g8),
            Err(e) => c.error(format!("Grassmannian lift of {g}"), &e),
        }
    }
}

fn characteristics(c: &mut Checks) {
    let mut gens = vec![SymplecticLift { g8: w_matrix(), source: None }];
    gens.extend(omega_lifts());
    let fixed = fixed_sixth_characteristics(&gens);
    c.exact(format!("exactly 81 invariant characteristics (found {})", fixed.len()), fixed.len() == 81);
    let mut counts = [0usize; 4];
    let mut residue_ok = true;
    let mut all_labeled = true;
    for s in &fixed {
        let six_a = [s[0], s[1], s[2], s[3]];
        let b_ok = (0..4).all(|i| (s[4 + i] + six_a[i] * [1, 1, 1, -1][i]).rem_euclid(6) == 0);
        let odd = six_a.iter().all(|x| x.rem_euclid(2) == 1);
        c.exact(format!("6c = {s:?} has b = -aH and odd 6a"), b_ok && odd);
        match label_for_key(six_a) {
            Some(l) => {
                let class = classify(&l.characteristic).expect("odd characteristic");
                let r = l.characteristic.residue();
                let idx = match class {
                    ClassTag::TriplePairing => 0,
                    ClassTag::Square => 1,
                    ClassTag::Triple => 2,
                    ClassTag::Full => 3,
                };
                counts[idx] += 1;
                residue_ok &= match class {
                    ClassTag::TriplePairing => r == 2,
                    ClassTag::Square => r == 10,
                    ClassTag::Triple | ClassTag::Full => r == 18,
                };
            }
            None => all_labeled = false,
        }
    }
    c.exact("every invariant characteristic carries a label", all_labeled);
    c.exact(format!("class sizes 30/30/20/1 (found {}/{}/{}/{})", counts[0], counts[1], counts[2], counts[3]), counts == [30, 30, 20, 1]);
    c.exact("residues (6a)H(6a) mod 24 are 2, 10, 18 by class", residue_ok);
    let lifts = omega_lifts();
    for (g, l) in omega_generators().iter().zip(&lifts) {
        let ok = all_labeled_characteristics().iter().all(|lc| {
            let v = lc.characteristic.to_vector();
            char_action(l, &v).0.congruent(&v)
        });
        c.exact(format!("{g} fixes all 81 characteristics mod Z^8"), ok);
    }
}

fn vanishing(c: &mut Checks, n: usize, seed: u64, cfg: &ThetaConfig) -> Result<()> {
    let pts = Sampler::new(seed).ball_points(n, DEFAULT_MARGIN)?;
    let res: Vec<Result<(f64, f64, f64)>> = pts
        .par_iter()
        .map(|x| {
            let tau = embed_j(x)?;
            let all = all_theta_constants(&tau, cfg)?;
            let mut vanish = 0.0f64;
            let mut survive = f64::INFINITY;
            let mut tail = 0.0f64;
            for (l, v) in &all {
                tail = tail.max(v.tail_bound);
                if l.label.class().survives() {
                    survive = survive.min(v.value.norm());
                } else {
                    vanish = vanish.max(v.value.norm());
                }
            }
            Ok((vanish, survive, tail))
        })
        .collect();
    for (k, r) in res.into_iter().enumerate() {
        match r {
            Ok((v, s, t)) => {
                c.below(format!("point {k}: max |theta| over the 51 vanishing characteristics"), v, 1e-9);
                c.above(format!("point {k}: min |theta| over the 30 surviving characteristics"), s, 1e-4);
                c.tail = c.tail.max(t);
            }
            Err(e) => c.error(format!("point {k}"), &e),
        }
    }
    Ok(())
}

fn relations(c: &mut Checks, n: usize, seed: u64, cfg: &ThetaConfig) -> Result<()> {
    let pts = Sampler::new(seed).ball_points(n, DEFAULT_MARGIN)?;
    let res: Vec<Result<(f64, f64, f64)>> = pts
        .par_iter()
        .map(|x| {
            let cubes = theta_cubes(x, cfg)?;
            let r = y_relation_residuals(&y_from_cubes(&cubes)?);
            Ok((r.linear, r.cubic, cubes.max_tail_bound()))
        })
        .collect();
    for (k, r) in res.into_iter().enumerate() {
        match r {
            Ok((l, cu, t)) => {
                c.below(format!("point {k}: linear identities"), l, 1e-8);
                c.below(format!("point {k}: cubic identities"), cu, 1e-8);
                c.tail = c.tail.max(t);
            }
            Err(e) => c.error(format!("point {k}"), &e),
        }
    }
    Ok(())
}

fn moved(x: &BallPoint, g: &crate::algebra::exact::EMatrix) -> Result<BallPoint> {
    BallPoint::new(apply(g, x.coords()).as_slice())
}

/// λ_min floor used for images of reflection words, which routinely fall below the default.
pub const WORD_IMAGE_FLOOR: f64 = 1e-6;

fn invariance(c: &mut Checks, n: usize, seed: u64, cfg: &ThetaConfig) -> Result<()> {
    let cfg = &ThetaConfig { lambda_floor: cfg.lambda_floor.min(WORD_IMAGE_FLOOR), ..*cfg };
    let mut s = Sampler::new(seed);
    let cases: Vec<_> = (0..n).map(|_| Ok((s.ball_point(DEFAULT_MARGIN)?, s.omega_word(4)))).collect::<Result<_>>()?;
    let res: Vec<Result<(f64, f64)>> = cases
        .par_iter()
        .map(|(x, w)| {
            let gx = moved(x, &w.evaluate())?;
            let a = theta_cubes(x, cfg)?;
            let b = theta_cubes(&gx, cfg)?;
            let d = projective_deviation(&y_from_cubes(&b)?.y, &y_from_cubes(&a)?.y).max_rel_dev;
            Ok((d, a.max_tail_bound().max(b.max_tail_bound())))
        })
        .collect();
    for (k, (r, (_, w))) in res.into_iter().zip(&cases).enumerate() {
        match r {
            Ok((d, t)) => {
                c.below(format!("sample {k}: Theta(w x) = Theta(x) for w = {w}"), d, 1e-7);
                c.tail = c.tail.max(t);
            }
            Err(e) => c.error(format!("sample {k} (w = {w})"), &e),
        }
    }
    Ok(())
}

/// Θ(R^ζ_{i,i+1}·x) = (i i+1)·Θ(x) projectively: the common factor χ cancels in every ratio.
fn equivariance(c: &mut Checks, n: usize, seed: u64, cfg: &ThetaConfig) -> Result<()> {
    let pts = Sampler::new(seed).ball_points(n, DEFAULT_MARGIN)?;
    for g in zeta_generators() {
        let sigma = Permutation::transposition(g.pair.0, g.pair.1)?;
        let m = g.matrix();
        let res: Vec<Result<(f64, f64)>> = pts
            .par_iter()
            .map(|x| {
                let a = theta_cubes(x, cfg)?;
                let b = theta_cubes(&moved(x, &m)?, cfg)?;
                let want = s6_act(&sigma, &y_from_cubes(&a)?);
                let d = projective_deviation(&y_from_cubes(&b)?.y, &want.y).max_rel_dev;
                Ok((d, a.max_tail_bound().max(b.max_tail_bound())))
            })
            .collect();
        let mut worst = 0.0f64;
        let mut failed = None;
        for r in res {
            match r {
                Ok((d, t)) => {
                    worst = worst.max(d);
                    c.tail = c.tail.max(t);
                }
                Err(e) => failed = Some(e),
            }
        }
        match failed {
            Some(e) => c.error(format!("{g}"), &e),
            None => c.below(format!("{g}: ratio identities with the swap {sigma} over {n} points"), worst, 1e-8),
        }
    }
    Ok(())
}

fn mirror(c: &mut Checks, per_pair: usize, seed: u64, cfg: &ThetaConfig) -> Result<()> {
    let mut s = Sampler::new(seed);
    let mut cases = Vec::new();
    for p in Pair::all() {
        for k in 0..per_pair {
            cases.push((p, k, s.mirror_point(p, DEFAULT_MARGIN)?));
        }
    }
    let res: Vec<Result<(f64, f64)>> = cases
        .par_iter()
        .map(|(p, _, x)| {
            let tau = embed_j(x)?;
            let mut worst = 0.0f64;
            let mut tail = 0.0f64;
            for label in CharacteristicLabel::triple_pairings() {
                if label.pairs().is_some_and(|ps| ps.contains(p)) {
                    let ch = crate::theta::characteristic_for_label(&label)?;
                    let v = theta_constant(&ch, &tau, cfg)?;
                    worst = worst.max(v.value.norm());
                    tail = tail.max(v.tail_bound);
                }
            }
            Ok((worst, tail))
        })
        .collect();
    for ((p, k, _), r) in cases.iter().zip(res) {
        match r {
            Ok((v, t)) => {
                c.below(format!("mirror {p} point {k}: |theta| of the three labels containing {p}"), v, 1e-9);
                c.tail = c.tail.max(t);
            }
            Err(e) => c.error(format!("mirror {p} point {k}"), &e),
        }
    }
    Ok(())
}

fn quadrature_suite(c: &mut Checks, n: usize, seed: u64, tol: f64) -> Result<()> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let beta = quadrature::beta_two_thirds();
    let w = EndpointWeight { alpha: -1.0 / 3.0 };
    for k in 0..n {
        let (x, y): (f64, f64) = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        let want = (b - a).cbrt() * beta;
        match quadrature::segment_integral(&w, Complex64::new(a, 0.0), Complex64::new(b, 0.0), tol) {
            Ok(r) => c.below(format!("interval {k} [{a:.6}, {b:.6}]: relative error against (b-a)^(1/3) B(2/3,2/3)"), (r.value - want).norm() / want, 1e-10),
            Err(e) => c.error(format!("interval {k}"), &e),
        }
    }
    Ok(())
}

fn forward(c: &mut Checks, n: usize, seed: u64, tol: f64) -> Result<()> {
    let mut s = Sampler::new(seed);
    let data: Vec<BranchData> = (0..n).map(|_| s.ordered_lambda(0.0, 10.0, 0.5)).collect::<Result<_>>()?;
    let table = CycleTable::collapsed();
    let res: Vec<_> = data.par_iter().map(|b| (psi_forward(b, tol), full_period_matrix(&table, b, tol))).collect();
    for (k, (p, f)) in res.into_iter().enumerate() {
        match p {
            Ok(p) => {
                c.below(format!("lambda {k}: rho-twist residual"), p.twist_residual, 1e-7);
                c.below(format!("lambda {k}: hermitian value of x_A"), p.hermitian_value, 0.0);
            }
            Err(e) => c.error(format!("lambda {k}"), &e),
        }
        match f {
            Ok(f) => {
                c.below(format!("lambda {k}: |Omega_A Omega_B^-1 - j(x_A)|"), f.embedding_deviation, 1e-6);
                c.above(format!("lambda {k}: lambda_min of Im Omega_A Omega_B^-1"), f.imag_lambda_min, 0.0);
            }
            Err(e) => c.error(format!("lambda {k}: full period matrix"), &e),
        }
    }
    Ok(())
}

fn roundtrip_suite(c: &mut Checks, n: usize, seed: u64, tol: f64, cfg: &ThetaConfig) -> Result<()> {
    let mut s = Sampler::new(seed);
    let mut data = vec![BranchData::new([0.0, 1.0, 2.0, 3.0, 4.0, 5.0])?];
    for _ in 0..n {
        data.push(s.ordered_lambda(0.0, 10.0, 0.5)?);
    }
    let res: Vec<_> = data.par_iter().map(|b| roundtrip(b, tol, cfg)).collect();
    for (k, r) in res.into_iter().enumerate() {
        let tag = if k == 0 { "lambda (0,1,2,3,4,5)".to_string() } else { format!("lambda {}", k - 1) };
        match r {
            Ok(r) => {
                c.below(format!("{tag}: projective deviation after best relabeling {}", r.best_permutation), r.best_deviation, 1e-6);
                c.below(format!("{tag}: l recovered against the cross-ratio normal form"), r.ell_deviation, 1e-6);
                c.stretch_below(format!("{tag}: projective deviation with the identity labeling"), r.identity.max_rel_dev, 1e-6);
                c.tail = c.tail.max(r.max_tail_bound);
            }
            Err(e) => c.error(tag, &e),
        }
    }
    Ok(())
}
