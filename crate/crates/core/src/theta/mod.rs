//! Genus-4 theta constants θ_{a,b}(τ) = Σ_n exp πi((n+a)τᵗ(n+a) + 2(n+a)ᵗb).

pub mod labels;
pub mod lattice;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::SiegelPoint;
use crate::ball::{embed_j, BallPoint};
use crate::error::{Error, Result};

pub use labels::{
    all_labeled_characteristics, characteristic_for_label, classify, label_for_key, CharacteristicLabel, ClassTag, LabeledCharacteristic,
    SixthCharacteristic,
};
pub use lattice::truncation_radius;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Sup-norm box ‖n + a‖∞ ≤ R with R from [`truncation_radius`].
    Box,
    /// Ellipsoid ᵗvYv ≤ T enumerated through the Cholesky factor of Y = Im τ.
    Ellipsoid,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaConfig {
    pub eps: f64,
    pub lambda_floor: f64,
    pub strategy: Strategy,
}

impl Default for ThetaConfig {
    fn default() -> Self {
        Self { eps: 1e-12, lambda_floor: 1e-4, strategy: Strategy::Ellipsoid }
    }
}

impl ThetaConfig {
    pub fn with_eps(eps: f64) -> Self {
        Self { eps, ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaValue {
    pub value: Complex64,
    pub tail_bound: f64,
    /// Sup-norm radius covering the summation region.
    pub radius_used: u32,
    pub points: usize,
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let t = acc.0 + x;
    if acc.0.abs() >= x.abs() {
        acc.1 += (acc.0 - t) + x;
    } else {
        acc.1 += (x - t) + acc.0;
    }
    acc.0 = t;
}

impl CompensatedSum {
    fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    fn total(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

fn check_floor(tau: &SiegelPoint, cfg: &ThetaConfig) -> Result<()> {
    if tau.lambda_min() < cfg.lambda_floor {
        return Err(Error::BoundaryProximity { lambda_min: tau.lambda_min(), floor: cfg.lambda_floor });
    }
    if !(cfg.eps > 0.0) {
        return Err(Error::Input(format!("eps = {:e} must be positive", cfg.eps)));
    }
    Ok(())
}

/// θ_{a,b}(0, τ) for real characteristics.
pub fn theta_general(a: [f64; 4], b: [f64; 4], tau: &SiegelPoint, cfg: &ThetaConfig) -> Result<ThetaValue> {
    check_floor(tau, cfg)?;
    let x = tau.real();
    let y = tau.imag();
    let term = |v: [f64; 4]| -> Complex64 {
        let mut qx = 0.0;
        let mut qy = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                qx += v[i] * x[(i, j)] * v[j];
                qy += v[i] * y[(i, j)] * v[j];
            }
        }
        let lin: f64 = (0..4).map(|i| v[i] * b[i]).sum();
        Complex64::from_polar((-PI * qy).exp(), PI * (qx + 2.0 * lin))
    };
    let mut acc = CompensatedSum::default();
    match cfg.strategy {
        Strategy::Box => {
            let r = truncation_radius(tau.lambda_min(), cfg.eps)?;
            let rf = r as f64;
            let ranges: Vec<(i64, i64)> = a.iter().map(|ai| ((-rf - ai).ceil() as i64, (rf - ai).floor() as i64)).collect();
            let mut points = 0;
            for n0 in ranges[0].0..=ranges[0].1 {
                for n1 in ranges[1].0..=ranges[1].1 {
                    for n2 in ranges[2].0..=ranges[2].1 {
                        for n3 in ranges[3].0..=ranges[3].1 {
                            let n = [n0, n1, n2, n3];
                            acc.add(term([0, 1, 2, 3].map(|i| n[i] as f64 + a[i])));
                            points += 1;
                        }
                    }
                }
            }
            Ok(ThetaValue { value: acc.total(), tail_bound: lattice::box_tail_bound(tau.lambda_min(), r), radius_used: r, points })
        }
        Strategy::Ellipsoid => {
            let u = lattice::upper_cholesky(&y)?;
            let (radius, bound) = lattice::ellipsoid_radius(&u, cfg.eps);
            let points = lattice::ellipsoid_points(&u, a, radius, |v| acc.add(term(v)));
            let r = (radius / tau.lambda_min()).sqrt().ceil() as u32;
            Ok(ThetaValue { value: acc.total(), tail_bound: bound, radius_used: r, points })
        }
    }
}

pub fn theta_constant(c: &SixthCharacteristic, tau: &SiegelPoint, cfg: &ThetaConfig) -> Result<ThetaValue> {
    theta_general(c.a(), c.b(), tau, cfg)
}

/// Bound on |θ̃³ − θ³| given |θ̃ − θ| ≤ t.
pub fn cube_error(theta: Complex64, t: f64) -> f64 {
    let m = theta.norm();
    3.0 * m * m * t + 3.0 * m * t * t + t * t * t
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaCubes {
    /// The fifteen matching labels in lexicographic order.
    pub labels: Vec<CharacteristicLabel>,
    pub thetas: Vec<ThetaValue>,
    pub cubes: Vec<Complex64>,
    pub error_bounds: Vec<f64>,
}

impl ThetaCubes {
    pub fn get(&self, label: &CharacteristicLabel) -> Option<Complex64> {
        self.labels.iter().position(|l| l == label).map(|i| self.cubes[i])
    }

    pub fn max_tail_bound(&self) -> f64 {
        self.thetas.iter().map(|t| t.tail_bound).fold(0.0, f64::max)
    }
}

pub fn theta_cubes_at(tau: &SiegelPoint, cfg: &ThetaConfig) -> Result<ThetaCubes> {
    let labels = CharacteristicLabel::triple_pairings();
    let thetas: Vec<ThetaValue> = labels
        .par_iter()
        .map(|l| theta_constant(&characteristic_for_label(l)?, tau, cfg))
        .collect::<Result<_>>()?;
    let cubes = thetas.iter().map(|t| t.value.powi(3)).collect();
    let error_bounds = thetas.iter().map(|t| cube_error(t.value, t.tail_bound)).collect();
    Ok(ThetaCubes { labels, thetas, cubes, error_bounds })
}

/// Cubes of the fifteen surviving theta constants at j(x).
pub fn theta_cubes(x: &BallPoint, cfg: &ThetaConfig) -> Result<ThetaCubes> {
    theta_cubes_at(&embed_j(x)?, cfg)
}

/// All 81 labelled theta constants at τ.
pub fn all_theta_constants(tau: &SiegelPoint, cfg: &ThetaConfig) -> Result<Vec<(LabeledCharacteristic, ThetaValue)>> {
    all_labeled_characteristics()
        .into_par_iter()
        .map(|l| Ok((l, theta_constant(&l.characteristic, tau, cfg)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::complex::{c, CMatrix4};
    use crate::algebra::OMEGA;

    /// One-dimensional θ_{a,b}(τ) by direct summation.
    fn theta1(a: f64, b: f64, tau: Complex64) -> Complex64 {
        (-60..=60)
            .map(|n| {
                let v = n as f64 + a;
                (Complex64::new(0.0, PI) * (tau * v * v + 2.0 * v * b)).exp()
            })
            .sum()
    }

    fn diag(d: [Complex64; 4]) -> SiegelPoint {
        SiegelPoint::new(CMatrix4::from_diagonal(&d.into())).unwrap()
    }

    fn base_point() -> BallPoint {
        BallPoint::new(&[c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]).unwrap()
    }

    #[test]
    fn zero_characteristic_at_i() {
        let tau = diag([c(0.0, 1.0); 4]);
        for strategy in [Strategy::Box, Strategy::Ellipsoid] {
            let cfg = ThetaConfig { strategy, ..ThetaConfig::default() };
            let v = theta_general([0.0; 4], [0.0; 4], &tau, &cfg).unwrap();
            // θ(i) = π^{1/4} / Γ(3/4)
            let g34 = statrs::function::gamma::gamma(0.75);
            let expected = (PI.powf(0.25) / g34).powi(4);
            assert!((v.value - expected).norm() < 1e-12, "{strategy:?}");
            assert!((expected - 1.3932).abs() < 1e-4);
            assert!(v.tail_bound <= 1e-12);
        }
    }

    #[test]
    fn diagonal_factorization() {
        let d = [c(0.3, 1.1), c(-0.2, 0.7), c(0.45, 0.9), c(0.1, 1.6)];
        let tau = diag(d);
        let a = [1.0 / 6.0, 0.5, -1.0 / 6.0, 5.0 / 6.0];
        let b = [0.25, -1.0 / 3.0, 0.5, 0.1];
        let v = theta_general(a, b, &tau, &ThetaConfig::default()).unwrap();
        let prod: Complex64 = (0..4).map(|i| theta1(a[i], b[i], d[i])).product();
        assert!((v.value - prod).norm() < 1e-12);
    }

    #[test]
    fn base_point_values_factorize() {
        let tau = embed_j(&base_point()).unwrap();
        let d = [OMEGA, OMEGA, OMEGA, -OMEGA * OMEGA];
        for l in all_labeled_characteristics() {
            let ch = l.characteristic;
            let v = theta_constant(&ch, &tau, &ThetaConfig::default()).unwrap();
            let (a, b) = (ch.a(), ch.b());
            let prod: Complex64 = (0..4).map(|i| theta1(a[i], b[i], d[i])).product();
            assert!((v.value - prod).norm() < 1e-12, "{l}");
        }
    }

    #[test]
    fn labelled_product_at_the_base_point() {
        // a = (1/6,1/6,1/6,1/6) is the label (16;23;45)
        let tau = embed_j(&base_point()).unwrap();
        let l: CharacteristicLabel = "16;23;45".parse().unwrap();
        let v = theta_constant(&characteristic_for_label(&l).unwrap(), &tau, &ThetaConfig::default()).unwrap();
        let expected = theta1(1.0 / 6.0, -1.0 / 6.0, OMEGA).powi(3) * theta1(1.0 / 6.0, 1.0 / 6.0, -OMEGA * OMEGA);
        assert!((v.value - expected).norm() < 1e-12);
        assert!(expected.norm() > 1e-3);
    }

    #[test]
    fn box_and_ellipsoid_agree() {
        let x = BallPoint::new(&[c(0.2, 0.1), c(-0.1, 0.15), c(0.05, -0.2), c(1.0, 0.0)]).unwrap();
        let tau = embed_j(&x).unwrap();
        let ch = characteristic_for_label(&"12;34;56".parse().unwrap()).unwrap();
        let e = theta_constant(&ch, &tau, &ThetaConfig::default()).unwrap();
        let b = theta_constant(&ch, &tau, &ThetaConfig { strategy: Strategy::Box, ..ThetaConfig::default() }).unwrap();
        assert!((e.value - b.value).norm() < 1e-12);
        assert!(e.points < b.points);
    }

    #[test]
    fn floor_is_enforced() {
        let tau = diag([c(0.0, 1e-5), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 1.0)]);
        let r = theta_general([0.0; 4], [0.0; 4], &tau, &ThetaConfig::default());
        assert!(matches!(r, Err(Error::BoundaryProximity { .. })));
    }

    #[test]
    fn vanishing_square_at_a_generic_point() {
        let x = BallPoint::new(&[c(0.3, -0.1), c(0.1, 0.2), c(-0.25, 0.05), c(1.0, 0.0)]).unwrap();
        let tau = embed_j(&x).unwrap();
        let cfg = ThetaConfig::default();
        let ch = characteristic_for_label(&"1^22".parse().unwrap()).unwrap();
        let v = theta_constant(&ch, &tau, &cfg).unwrap();
        assert!(v.value.norm() <= v.tail_bound + 1e-10);
    }

    #[test]
    fn theta_cubes_at_base_point() {
        let cubes = theta_cubes(&base_point(), &ThetaConfig::default()).unwrap();
        assert_eq!(cubes.cubes.len(), 15);
        assert_eq!(cubes.labels[0].to_string(), "(12;34;56)");
        let d = [OMEGA, OMEGA, OMEGA, -OMEGA * OMEGA];
        let ch = characteristic_for_label(&cubes.labels[0]).unwrap();
        let (a, b) = (ch.a(), ch.b());
        let prod: Complex64 = (0..4).map(|i| theta1(a[i], b[i], d[i])).product();
        assert!((cubes.cubes[0] - prod.powi(3)).norm() < 1e-11);
        assert!(cubes.error_bounds.iter().all(|&e| e < 1e-10));
    }
}
