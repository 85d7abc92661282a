//! Seeded sampling of ball points, mirror points, reflection words and branch data.
//!
//! All randomness comes from ChaCha8 (a counter-based stream generator) seeded with a u64,
//! so a seed fixes every sample on every platform.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::hermitian_pairing;
use crate::ball::BallPoint;
use crate::error::{Error, Result};
use crate::periods::BranchData;
use crate::reflection::{omega_generators, root_for_pair, Generator, Pair, Word};

pub const DEFAULT_MARGIN: f64 = 0.1;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn gaussian(&mut self) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex64::new(re, im) / std::f64::consts::SQRT_2
    }

    /// Four complex Gaussians z; x = z₄·(t·u/|u|, 1) with u = (z₁, z₂, z₃) and
    /// t = t_max·|u|/√(1 + |u|²), t_max chosen so the margin (1 − t²)/(1 + t²) stays ≥ `margin`.
    pub fn ball_point(&mut self, margin: f64) -> Result<BallPoint> {
        if !(0.0..1.0).contains(&margin) {
            return Err(Error::Input(format!("margin {margin} not in [0, 1)")));
        }
        let z: [Complex64; 4] = std::array::from_fn(|_| self.gaussian());
        let n = (z[0].norm_sqr() + z[1].norm_sqr() + z[2].norm_sqr()).sqrt();
        let t_max = ((1.0 - margin) / (1.0 + margin)).sqrt();
        let t = t_max * n / (1.0 + n * n).sqrt();
        let s = if n > 0.0 { t / n } else { 0.0 };
        let phase = if z[3].norm() > 0.0 { z[3] / z[3].norm() } else { Complex64::new(1.0, 0.0) };
        BallPoint::new(&[z[0] * s * phase, z[1] * s * phase, z[2] * s * phase, phase])
    }

    pub fn ball_points(&mut self, n: usize, margin: f64) -> Result<Vec<BallPoint>> {
        (0..n).map(|_| self.ball_point(margin)).collect()
    }

    /// A ball point projected H-orthogonally onto the mirror of v_pair.
    pub fn mirror_point(&mut self, pair: Pair, margin: f64) -> Result<BallPoint> {
        let v = root_for_pair(pair.0, pair.1)?.to_complex();
        let x = self.ball_point(margin)?;
        let x = x.coords();
        let vx = hermitian_pairing(v.as_slice(), x.as_slice())?;
        let vv = hermitian_pairing(v.as_slice(), v.as_slice())?.re;
        let p: Vec<Complex64> = (0..4).map(|i| x[i] - v[i] * (vx / vv)).collect();
        BallPoint::new(&p)
    }

    /// A word of length 1..=max_len in the fifteen R^ω generators.
    pub fn omega_word(&mut self, max_len: usize) -> Word {
        let gens = omega_generators();
        let len = self.rng.gen_range(1..=max_len.max(1));
        Word((0..len).map(|_| *gens.choose(&mut self.rng).expect("fifteen generators")).collect::<Vec<Generator>>())
    }

    /// Six sorted points of [lo, hi] with consecutive gaps ≥ min_gap (rejection sampling).
    pub fn ordered_lambda(&mut self, lo: f64, hi: f64, min_gap: f64) -> Result<BranchData> {
        if !(hi - lo > 5.0 * min_gap) {
            return Err(Error::Input(format!("[{lo}, {hi}] cannot hold six points {min_gap} apart")));
        }
        loop {
            let mut l: [f64; 6] = std::array::from_fn(|_| self.rng.gen_range(lo..=hi));
            l.sort_by(f64::total_cmp);
            if l.windows(2).all(|w| w[1] - w[0] >= min_gap) {
                return BranchData::new(l);
            }
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
