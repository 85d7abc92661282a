//! The theta map Θ: B³ → P¹⁴, recovery of the normal form ℓ from theta cubes, and the
//! roundtrip Θ(ψ(λ)) against ι(λ).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::ball::BallPoint;
use crate::config_space::{iota, normalize_config, projective_deviation, s6_act, y_relation_residuals, ConfigPoint, Permutation, ProjectiveComparison, Residuals, YIndex, YPoint};
use crate::error::{Error, Result};
use crate::periods::{psi_forward, BranchData, CyclePeriods};
use crate::theta::{theta_cubes, ThetaConfig, ThetaCubes};

/// Residuals above this on a theta_map output are reported as a consistency error.
pub const RESIDUAL_LIMIT: f64 = 1e-6;
/// |denominator| / max|y| below this counts as lying on a mirror.
pub const MIRROR_THRESHOLD: f64 = 1e-10;
pub const ROUTE_AGREEMENT: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaMapResult {
    pub y: YPoint,
    pub cubes: ThetaCubes,
    pub residuals: Residuals,
    /// None when a denominator of the ℓ formulas vanishes.
    pub ell: Option<[Complex64; 3]>,
}

/// y as a YPoint: the cube of θ(ij;kl;mn) feeds coordinate ⟨ij;kl;mn⟩.
pub fn y_from_cubes(cubes: &ThetaCubes) -> Result<YPoint> {
    let mut y = [Complex64::new(0.0, 0.0); 15];
    for (label, cube) in cubes.labels.iter().zip(&cubes.cubes) {
        let pairs = label.pairs().ok_or_else(|| Error::Consistency(format!("{label} is not a matching label")))?;
        y[YIndex(pairs).position()] = *cube;
    }
    YPoint::new(y)
}

fn yv(y: &YPoint, p: [(u8, u8); 3]) -> Complex64 {
    y.signed(p).expect("valid matching")
}

fn ratio(num: Complex64, den: Complex64, scale: f64, what: &str) -> Result<Complex64> {
    let m = den.norm() / scale;
    if m < MIRROR_THRESHOLD {
        return Err(Error::MirrorProximity { label: what.to_string(), magnitude: m });
    }
    Ok(num / den)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EllRecovery {
    pub ell: [Complex64; 3],
    /// ℓ₂ via θ³(14;25;36)θ³(13;24;56) / (θ³(15;24;36)θ³(14;23;56))
    pub ell2_alternative: Complex64,
    pub route_deviation: f64,
}

/// ℓ₁ = y(13;24;56)/y(14;23;56), ℓ₂ = y(13;25;46)/y(15;23;46), ℓ₃ = y(13;26;45)/y(16;23;45).
pub fn ell_from_y(y: &YPoint) -> Result<EllRecovery> {
    let scale = y.y.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let l1 = ratio(yv(y, [(1, 3), (2, 4), (5, 6)]), yv(y, [(1, 4), (2, 3), (5, 6)]), scale, "(14;23;56)")?;
    let l2 = ratio(yv(y, [(1, 3), (2, 5), (4, 6)]), yv(y, [(1, 5), (2, 3), (4, 6)]), scale, "(15;23;46)")?;
    let l3 = ratio(yv(y, [(1, 3), (2, 6), (4, 5)]), yv(y, [(1, 6), (2, 3), (4, 5)]), scale, "(16;23;45)")?;
    let den = yv(y, [(1, 5), (2, 4), (3, 6)]) * yv(y, [(1, 4), (2, 3), (5, 6)]);
    let alt = ratio(yv(y, [(1, 4), (2, 5), (3, 6)]) * yv(y, [(1, 3), (2, 4), (5, 6)]), den, scale * scale, "(15;24;36)(14;23;56)")?;
    let route_deviation = (alt - l2).norm() / l2.norm().max(1.0);
    Ok(EllRecovery { ell: [l1, l2, l3], ell2_alternative: alt, route_deviation })
}

pub fn theta_map(x: &BallPoint, cfg: &ThetaConfig) -> Result<ThetaMapResult> {
    let cubes = theta_cubes(x, cfg)?;
    let y = y_from_cubes(&cubes)?;
    let residuals = y_relation_residuals(&y);
    if residuals.linear > RESIDUAL_LIMIT || residuals.cubic > RESIDUAL_LIMIT {
        return Err(Error::Consistency(format!("theta cubes violate the Y equations (linear {:e}, cubic {:e})", residuals.linear, residuals.cubic)));
    }
    let ell = ell_from_y(&y).ok().map(|e| e.ell);
    Ok(ThetaMapResult { y, cubes, residuals, ell })
}

/// ℓ from theta cubes, with the second route for ℓ₂ as a cross-check.
pub fn ell_from_theta(x: &BallPoint, cfg: &ThetaConfig) -> Result<EllRecovery> {
    let y = y_from_cubes(&theta_cubes(x, cfg)?)?;
    let e = ell_from_y(&y)?;
    if e.route_deviation > ROUTE_AGREEMENT {
        return Err(Error::Consistency(format!("the two expressions for l2 differ by {:e}", e.route_deviation)));
    }
    Ok(e)
}

/// σ minimising the projective deviation between s6_act(σ, reference) and `y`.
pub fn best_relabeling(y: &YPoint, reference: &YPoint) -> (Permutation, f64) {
    Permutation::all()
        .into_par_iter()
        .map(|s| (s, projective_deviation(&y.y, &s6_act(&s, reference).y).max_rel_dev))
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
        .expect("720 permutations")
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundtripReport {
    pub lambda: [f64; 6],
    pub periods: CyclePeriods,
    pub theta: ThetaMapResult,
    pub y_config: YPoint,
    /// Θ(ψ(λ)) against ι(λ) with the identity labeling.
    pub identity: ProjectiveComparison,
    pub best_permutation: Permutation,
    pub best_deviation: f64,
    pub ell_theta: [Complex64; 3],
    pub ell_config: [Complex64; 3],
    pub ell_deviation: f64,
    pub ell_route_deviation: f64,
    pub max_tail_bound: f64,
}

impl RoundtripReport {
    pub fn identity_match(&self, tol: f64) -> bool {
        self.identity.max_rel_dev < tol && self.ell_deviation < tol
    }

    pub fn relabeled_match(&self, tol: f64) -> bool {
        self.best_deviation < tol
    }
}

pub fn roundtrip(branch: &BranchData, tol: f64, cfg: &ThetaConfig) -> Result<RoundtripReport> {
    let periods = psi_forward(branch, tol)?;
    let x = BallPoint::new(&periods.x_a)?;
    let theta = theta_map(&x, cfg)?;
    let m = ConfigPoint::from_lambda(branch.lambda())?;
    let y_config = iota(&m);
    let identity = projective_deviation(&theta.y.y, &y_config.y);
    let (best_permutation, best_deviation) = best_relabeling(&theta.y, &y_config);
    let rec = ell_from_y(&theta.y)?;
    let ell_config = normalize_config(&m)?;
    let ell_deviation = (0..3).map(|k| (rec.ell[k] - ell_config[k]).norm() / ell_config[k].norm().max(1.0)).fold(0.0, f64::max);
    let max_tail_bound = theta.cubes.max_tail_bound();
    Ok(RoundtripReport {
        lambda: *branch.lambda(),
        periods,
        theta,
        y_config,
        identity,
        best_permutation,
        best_deviation,
        ell_theta: rec.ell,
        ell_config,
        ell_deviation,
        ell_route_deviation: rec.route_deviation,
        max_tail_bound,
    })
}
