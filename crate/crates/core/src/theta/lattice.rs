//! Lattice point enumeration for the theta series with rigorous tail bounds.

use nalgebra::Matrix4;

use crate::error::{Error, Result};

/// Number of points of Z⁴ on the sup-norm shell ‖n‖∞ = k.
fn shell_count(k: u32) -> f64 {
    let k = k as f64;
    (2.0 * k + 1.0).powi(4) - (2.0 * k - 1.0).powi(4)
}

/// Σ_{k ≥ r+1} s(k)·exp(−πλ(k−1)²): bound on the terms outside the box ‖n‖∞ ≤ r.
pub fn box_tail_bound(lambda_min: f64, r: u32) -> f64 {
    let pi = std::f64::consts::PI;
    let mut sum = 0.0;
    let mut k = r + 1;
    loop {
        let d = (k - 1) as f64;
        let term = shell_count(k) * (-pi * lambda_min * d * d).exp();
        sum += term;
        // beyond the peak of s(k)e^{-πλ(k-1)²} consecutive ratios stay below 1
        let past_peak = 2.0 * pi * lambda_min * d * (k as f64) > 4.0;
        if past_peak && term <= 1e-20 * sum {
            break;
        }
        k += 1;
    }
    sum
}

/// Smallest R ≥ 1 whose box ‖n‖∞ ≤ R leaves a tail below eps.
pub fn truncation_radius(lambda_min: f64, eps: f64) -> Result<u32> {
    if !(lambda_min > 0.0) {
        return Err(Error::Domain(format!("lambda_min = {lambda_min:e} is not positive")));
    }
    if !(eps > 0.0) {
        return Err(Error::Input(format!("eps = {eps:e} must be positive")));
    }
    let mut r = 1;
    while box_tail_bound(lambda_min, r) > eps {
        r += 1;
    }
    Ok(r)
}

/// All n ∈ Z⁴ with ‖n‖∞ ≤ r, lexicographic.
pub fn box_points(r: u32) -> impl Iterator<Item = [i64; 4]> {
    let r = r as i64;
    (-r..=r).flat_map(move |a| (-r..=r).flat_map(move |b| (-r..=r).flat_map(move |c| (-r..=r).map(move |d| [a, b, c, d]))))
}

/// Upper-triangular U with Y = ᵗU U.
pub fn upper_cholesky(y: &Matrix4<f64>) -> Result<Matrix4<f64>> {
    let chol = y.cholesky().ok_or_else(|| Error::Domain("Im tau is not positive definite".into()))?;
    Ok(chol.l().transpose())
}

/// Radius² T and its bound: Σ_{v ∈ Z⁴+a, ᵗvYv > T} e^{−π ᵗvYv} ≤ e^{−π(1−t)T} ∏(1 + 1/(u_ii√t)).
/// Returns the smallest T over a grid of t for which the bound is ≤ eps.
pub fn ellipsoid_radius(u: &Matrix4<f64>, eps: f64) -> (f64, f64) {
    let mut best = (f64::INFINITY, f64::INFINITY);
    for k in 1..=90 {
        let t = k as f64 / 100.0;
        let log_prod: f64 = (0..4).map(|i| (1.0 + 1.0 / (u[(i, i)] * t.sqrt())).ln()).sum();
        let radius = (log_prod - eps.ln()) / (std::f64::consts::PI * (1.0 - t)) + 1e-9;
        if radius < best.0 {
            best = (radius, (log_prod - std::f64::consts::PI * (1.0 - t) * radius).exp());
        }
    }
    best
}

/// Calls `visit(v)` for every v ∈ Z⁴ + shift with ᵗvYv ≤ T (Fincke–Pohst order).
pub fn ellipsoid_points(u: &Matrix4<f64>, shift: [f64; 4], radius: f64, mut visit: impl FnMut([f64; 4])) -> usize {
    fn rec(u: &Matrix4<f64>, shift: &[f64; 4], i: usize, v: &mut [f64; 4], rem: f64, visit: &mut dyn FnMut([f64; 4]), count: &mut usize) {
        let uii = u[(i, i)];
        let c: f64 = (i + 1..4).map(|j| u[(i, j)] * v[j]).sum::<f64>() / uii;
        let r = rem.max(0.0).sqrt() / uii;
        let lo = (-c - r - shift[i]).ceil() as i64;
        let hi = (-c + r - shift[i]).floor() as i64;
        for n in lo..=hi {
            let vi = n as f64 + shift[i];
            let d = uii * uii * (vi + c) * (vi + c);
            if d > rem {
                continue;
            }
            v[i] = vi;
            if i == 0 {
                *count += 1;
                visit(*v);
            } else {
                rec(u, shift, i - 1, v, rem - d, visit, count);
            }
        }
    }
    let mut v = [0.0; 4];
    let mut count = 0;
    rec(u, &shift, 3, &mut v, radius, &mut visit, &mut count);
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SQRT3;

    #[test]
    fn radius_example_at_the_base_point() {
        let r = truncation_radius(SQRT3 / 2.0, 1e-12).unwrap();
        assert!(r <= 8);
        assert_eq!(r, 4);
        // direct shell-sum oracle
        let direct: f64 = (r + 1..200).map(|k| shell_count(k) * (-std::f64::consts::PI * SQRT3 / 2.0 * ((k - 1) as f64).powi(2)).exp()).sum();
        assert!(direct <= 1e-12);
        let prev: f64 = (r..200).map(|k| shell_count(k) * (-std::f64::consts::PI * SQRT3 / 2.0 * ((k - 1) as f64).powi(2)).exp()).sum();
        assert!(prev > 1e-12);
    }

    #[test]
    fn loose_eps_gives_radius_one() {
        assert_eq!(truncation_radius(3.0, 1.0).unwrap(), 1);
        assert_eq!(truncation_radius(SQRT3 / 2.0, 1.0).unwrap(), 2);
    }

    #[test]
    fn radius_is_monotone_in_eps() {
        for lam in [0.01, 0.1, 0.5, 2.0] {
            let mut eps = 1e-2;
            let mut last = 0;
            while eps > 1e-16 {
                let r = truncation_radius(lam, eps).unwrap();
                assert!(r >= last);
                last = r;
                eps /= 2.0;
            }
        }
    }

    #[test]
    fn nonpositive_lambda_is_a_domain_error() {
        assert!(matches!(truncation_radius(0.0, 1e-12), Err(Error::Domain(_))));
        assert!(matches!(truncation_radius(-1.0, 1e-12), Err(Error::Domain(_))));
    }

    #[test]
    fn box_is_lexicographic() {
        let pts: Vec<_> = box_points(1).collect();
        assert_eq!(pts.len(), 81);
        assert_eq!(pts[0], [-1, -1, -1, -1]);
        assert_eq!(pts[1], [-1, -1, -1, 0]);
        assert_eq!(pts[80], [1, 1, 1, 1]);
    }

    #[test]
    fn ellipsoid_matches_brute_force() {
        let y = Matrix4::new(2.0, 0.3, 0.1, 0.0, 0.3, 1.5, -0.2, 0.1, 0.1, -0.2, 1.0, 0.05, 0.0, 0.1, 0.05, 0.8);
        let u = upper_cholesky(&y).unwrap();
        let shift = [1.0 / 6.0, 0.5, -1.0 / 6.0, 5.0 / 6.0];
        let t = 7.3;
        let mut got = Vec::new();
        ellipsoid_points(&u, shift, t, |v| got.push(v));
        let mut want = 0;
        for n in box_points(8) {
            let v: [f64; 4] = [0, 1, 2, 3].map(|i| n[i] as f64 + shift[i]);
            let q: f64 = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| v[i] * y[(i, j)] * v[j]).sum();
            if q <= t {
                want += 1;
            }
        }
        assert_eq!(got.len(), want);
    }

    #[test]
    fn ellipsoid_bound_is_below_eps() {
        let y = Matrix4::identity() * 0.05;
        let u = upper_cholesky(&y).unwrap();
        let (t, bound) = ellipsoid_radius(&u, 1e-12);
        assert!(bound <= 1e-12);
        assert!(t > 0.0);
    }
}
