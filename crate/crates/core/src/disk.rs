//! Closed-form moments over the weighted disk and its Carleson squares,
//! the half-plane Littlewood-Paley pairing, and pointwise Poisson
//! evaluation of the scaled wavelet pieces.
//!
//! Conventions: the circle has unit length, the area element is
//! dA = 2 pi r dr dx, and dA_1 = (1 - |w|^2) dA. With these,
//! int_D w^a conj(w)^b dA_1 = delta_ab pi / ((a+1)(a+2)).

use crate::dyadic::DyadicInterval;
use crate::error::{Error, Result};
use crate::index::TaylorIndex;
use crate::quad::{integrate_adaptive, refine_panels};
use crate::wavelet::WaveletProfile;
use num_complex::Complex64;
use std::f64::consts::PI;

/// The region over an arc I: points with angular part in I and
/// 1 - |I| < |w| < 1. Rank 0 gives the whole disk (minus the null center).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CarlesonSquare {
    pub arc: DyadicInterval,
}

impl CarlesonSquare {
    pub fn new(arc: DyadicInterval) -> Self {
        CarlesonSquare { arc }
    }

    pub fn whole_disk() -> Self {
        CarlesonSquare { arc: DyadicInterval::whole() }
    }

    fn ln_r0(&self) -> f64 {
        ln_r0_of_rank(self.arc.rank)
    }
}

/// ln(1 - 2^-rank); -inf at rank 0. Never materializes 1 - 2^-rank, so it
/// stays accurate at ranks beyond f64 resolution near 1.
fn ln_r0_of_rank(rank: u32) -> f64 {
    if rank == 0 {
        f64::NEG_INFINITY
    } else {
        (-2f64.powi(-(rank as i32))).ln_1p()
    }
}

/// Radial factor of a rank-r square: 2 pi int_{1-2^-r}^1 r^(s+1)(1-r^2) dr,
/// evaluated through expm1 so thin bands at deep ranks stay accurate.
pub fn radial_factor(rank: u32, s: f64) -> f64 {
    radial_from_ln_r0(ln_r0_of_rank(rank), s)
}

fn radial_from_ln_r0(ln_r0: f64, s: f64) -> f64 {
    let u = -(s + 2.0) * ln_r0;
    if u > 1.0 {
        // rearranged antiderivative; the two terms stay a factor >~ 2 apart
        // here so no digits cancel:
        //   E 2/((s+2)(s+4)) - e^a E2/(s+4),  a = (s+2) ln r0,
        //   E = 1 - e^a, E2 = 1 - e^{2 ln r0}
        let a = (s + 2.0) * ln_r0;
        let e1 = -f64::exp_m1(a);
        let e2 = -f64::exp_m1(2.0 * ln_r0);
        // exp underflows to exact 0 past e^-745, below every tolerance used
        2.0 * PI * (e1 * 2.0 / ((s + 2.0) * (s + 4.0)) - a.exp() * e2 / (s + 4.0))
    } else {
        // thin band relative to 1/s: the closed form cancels catastrophically,
        // but the integrand t (2-t) (1-t)^(s+1) on t in [0, delta] is nearly
        // linear, where fixed Gauss-Legendre is exact to machine precision
        let delta = -f64::exp_m1(ln_r0);
        let nodes = band_rule();
        let half = 0.5 * delta;
        let mut sum = 0.0;
        for &(x, w) in nodes {
            let t = half + half * x;
            sum += w * t * (2.0 - t) * ((s + 1.0) * (-t).ln_1p()).exp();
        }
        2.0 * PI * sum * half
    }
}

fn band_rule() -> &'static [(f64, f64)] {
    use std::sync::OnceLock;
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| crate::quad::gauss_legendre(32))
}

/// int_D w^a conj(w)^b dA_1: zero unless a = b, else pi/((a+1)(a+2)).
pub fn moment_disk(a: &TaylorIndex, b: &TaylorIndex) -> f64 {
    if a != b {
        return 0.0;
    }
    let s = a.to_f64();
    if s > 1e15 {
        (PI.ln() - (s + 1.0).ln() - (s + 2.0).ln()).exp()
    } else {
        PI / ((s + 1.0) * (s + 2.0))
    }
}

/// Angular factor int_{x in I} e^{2 pi i m x} dx with the phase reduced
/// exactly: only m mod 2^rank enters the exponentials.
fn angular_factor(arc: &DyadicInterval, sign: i8, mag: &TaylorIndex) -> Complex64 {
    if sign == 0 {
        return Complex64::new(arc.len(), 0.0);
    }
    let j = arc.rank;
    let m_red = mag.mod_pow2(j);
    if m_red == 0 {
        // whole periods integrate to zero (this also covers the rank-0 arc)
        return Complex64::new(0.0, 0.0);
    }
    let len = arc.len();
    // m L_I mod 1 = (m mod 2^j) k mod 2^j, scaled back by 2^-j
    let k = arc.index.rem_euclid(1i64 << j) as u128;
    let lead = ((m_red as u128 * k) % (1u128 << j)) as f64 * len;
    let step = m_red as f64 * len;
    let s = sign as f64;
    let lead_phase = Complex64::from_polar(1.0, s * 2.0 * PI * lead);
    let step_phase = Complex64::from_polar(1.0, s * 2.0 * PI * step) - Complex64::new(1.0, 0.0);
    let denom = Complex64::new(0.0, s * 2.0 * PI * mag.to_f64());
    lead_phase * step_phase / denom
}

/// int_{Q} w^a conj(w)^b dA_1 over a Carleson square, in closed form.
pub fn moment_carleson_square(q: &CarlesonSquare, a: &TaylorIndex, b: &TaylorIndex) -> Complex64 {
    let (sign, mag) = a.signed_sub(b);
    let angular = angular_factor(&q.arc, sign, &mag);
    if angular == Complex64::new(0.0, 0.0) {
        return angular;
    }
    let s = a.to_f64() + b.to_f64();
    angular * radial_from_ln_r0(q.ln_r0(), s)
}

/// Moment of the band {w/|w| in I, 1-|I| < |w| <= 1-|I|/2}: the part of a
/// Carleson square not covered by its children's squares.
pub fn moment_band(arc: &DyadicInterval, a: &TaylorIndex, b: &TaylorIndex) -> Complex64 {
    let (sign, mag) = a.signed_sub(b);
    let angular = angular_factor(arc, sign, &mag);
    if angular == Complex64::new(0.0, 0.0) {
        return angular;
    }
    let s = a.to_f64() + b.to_f64();
    angular * (radial_factor(arc.rank, s) - radial_factor(arc.rank + 1, s))
}

/// Fourier transform of the D-differentiated, rescaled wavelet attached to
/// a line interval: 4 pi |xi| |I| psi_hat(|I| xi) e^{-2 pi i xi C_I}.
pub fn f_hat(profile: &WaveletProfile, interval: &DyadicInterval, xi: f64) -> Complex64 {
    let len = interval.len();
    let amp = profile.eval(len * xi);
    if amp == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::from_polar(4.0 * PI * xi.abs() * len * amp, -2.0 * PI * xi * interval.center())
}

fn support_band(interval: &DyadicInterval) -> (f64, f64) {
    let inv = 1.0 / interval.len();
    (inv / 3.0, 4.0 * inv / 3.0)
}

/// Littlewood-Paley pairing int_{C+} f_I conj(f_J) y dx dy, computed in the
/// frequency domain as int f_hat_I conj(f_hat_J) / (16 pi^2 xi^2) d xi.
///
/// The negative-frequency band contributes the conjugate of the positive
/// one, so the imaginary parts cancel identically and the real part is
/// returned. Exactly zero when the dilated supports do not meet.
pub fn halfplane_lp_pairing(
    profile: &WaveletProfile,
    i: &DyadicInterval,
    j: &DyadicInterval,
) -> Result<f64> {
    let (lo_i, hi_i) = support_band(i);
    let (lo_j, hi_j) = support_band(j);
    let (lo, hi) = (lo_i.max(lo_j), hi_i.min(hi_j));
    if lo >= hi {
        return Ok(0.0);
    }
    let mut breaks: Vec<f64> = [lo_i, 2.0 * lo_i, hi_i, lo_j, 2.0 * lo_j, hi_j]
        .into_iter()
        .filter(|&x| x > lo && x < hi)
        .collect();
    breaks.push(lo);
    breaks.push(hi);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let freq = (i.center() - j.center()).abs();
    let max_width = if freq > 0.0 { (0.25 / freq).min(hi - lo) } else { hi - lo };
    let panels = refine_panels(&breaks, max_width);
    let scale = (i.len() * j.len()).sqrt();
    let (value, _err) = integrate_adaptive(
        |xi| {
            let prod = f_hat(profile, i, xi) * f_hat(profile, j, xi).conj();
            prod / (16.0 * PI * PI * xi * xi)
        },
        &panels,
        1e-11,
        1e-13 * scale,
    )?;
    // positive + negative frequency bands form a conjugate pair
    let total = value + value.conj();
    debug_assert!(total.im == 0.0);
    Ok(total.re)
}

/// Poisson extension of f_I at x + iy in the upper half plane, evaluated as
/// an inverse Fourier integral over the profile band.
pub fn eval_f_poisson(
    profile: &WaveletProfile,
    interval: &DyadicInterval,
    x: f64,
    y: f64,
) -> Result<Complex64> {
    if y <= 0.0 {
        return Err(Error::domain(format!("Poisson evaluation needs y > 0, got {y}")));
    }
    let (lo, hi) = support_band(interval);
    let mid = 2.0 * lo;
    let freq = (x - interval.center()).abs();
    let max_width = if freq > 0.0 { (0.25 / freq).min(hi - lo) } else { hi - lo };
    let panels = refine_panels(&[lo, mid, hi], max_width);
    let (value, _err) = integrate_adaptive(
        |xi| f_hat(profile, interval, xi) * Complex64::from_polar((-2.0 * PI * xi * y).exp(), 2.0 * PI * xi * x),
        &panels,
        1e-11,
        1e-14 / interval.len(),
    )?;
    // conjugate-symmetric spectrum: the negative band doubles the real part
    let total = value + value.conj();
    Ok(Complex64::new(total.re, 0.0))
}
