//! The dyadic construction: coefficient sequence, direction vectors,
//! periodized wavelet coefficients, and the closed-form sparse Taylor
//! spectra of the analytic density and the lacunary test function.

use crate::dyadic::DyadicInterval;
use crate::error::{Error, Result};
use crate::index::TaylorIndex;
use crate::spectrum::{SpectrumEntry, VectorSpectrum};
use crate::wavelet::WaveletProfile;
use num_complex::Complex64;
use std::f64::consts::PI;

/// a_l = 1 / (l sqrt(ln N)) for 1 <= l <= N.
///
/// Natural logarithm throughout; the constants of the construction absorb
/// the base. Note ln 2 < 1 makes the direction vectors exceed unit norm for
/// very small N, which is why quantitative experiments start at N = 8.
pub fn coeff_a(l: u32, n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!("dimension N = {n} must be at least 2")));
    }
    if l < 1 || l > n {
        return Err(Error::domain(format!("coefficient index l = {l} outside [1, {n}]")));
    }
    Ok(1.0 / (l as f64 * (n as f64).ln().sqrt()))
}

/// Direction vector of a dyadic arc: rank-j arcs mix the first j basis
/// vectors with weights a_(j-l) and phases exp(2 pi i 2^l C_I); arcs of rank
/// 0 or rank > N get the zero vector.
pub fn omega_vector(interval: &DyadicInterval, n: u32) -> Result<Vec<Complex64>> {
    if n < 2 {
        return Err(Error::domain(format!("dimension N = {n} must be at least 2")));
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n as usize];
    let j = interval.rank;
    if j < 1 || j > n {
        return Ok(v);
    }
    let center = interval.center();
    for l in 0..j {
        let a = coeff_a(j - l, n)?;
        // 2^l C_I mod 1 keeps the phase argument small and exact: C_I has
        // rank-j dyadic denominator, so the product is exact in f64 for the
        // ranks used here.
        let phase = 2.0 * PI * frac(2f64.powi(l as i32) * center);
        v[l as usize] = Complex64::from_polar(a, phase);
    }
    Ok(v)
}

fn frac(x: f64) -> f64 {
    x - x.floor()
}

/// Circle Fourier coefficient of the periodized, D-differentiated wavelet
/// attached to a dyadic arc:
/// g_hat(n) = 4 pi |n| |I| psi_hat(|n| |I|) exp(-2 pi i n C_I).
/// Exactly zero when |n| |I| falls outside the profile support.
pub fn g_hat_coefficient(
    profile: &WaveletProfile,
    interval: &DyadicInterval,
    n: i64,
) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::domain("g_hat is zero at n = 0 by band limitation; index 0 is rejected"));
    }
    let len = interval.len();
    let amp = profile.eval(n.unsigned_abs() as f64 * len);
    if amp == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let magnitude = 4.0 * PI * n.unsigned_abs() as f64 * len * amp;
    let phase = -2.0 * PI * frac(n as f64 * interval.center());
    Ok(Complex64::from_polar(magnitude, phase))
}

/// Closed-form sparse Taylor spectrum of the analytic density.
///
/// Summing the analytic projections g_I^+ weighted by omega_I over all arcs
/// of ranks 1..=N collapses, per rank j, to two families:
///   n = 2^(j-1)        coordinate j-1, coefficient 2 pi psi_hat(1/2) a_1 2^j
///   n = 2^j + 2^l      coordinate l (l <= j-2),
///                      coefficient -4 pi (2^j + 2^l) psi_hat(1 + 2^(l-j)) a_(j-l)
/// Every spectrum entry touches exactly one coordinate.
pub fn phi_spectrum(profile: &WaveletProfile, n: u32) -> Result<VectorSpectrum> {
    if n < 2 {
        return Err(Error::domain(format!("dimension N = {n} must be at least 2")));
    }
    let psi_half = profile.eval(0.5);
    let a1 = coeff_a(1, n)?;
    let mut entries = Vec::with_capacity(n as usize * (n as usize + 1) / 2);
    for j in 1..=n {
        let scale = 2f64.powi(j as i32);
        let c = 2.0 * PI * psi_half * a1 * scale;
        entries.push(SpectrumEntry {
            index: TaylorIndex::pow2(j - 1),
            provenance: Some((j, j - 1)),
            vector: vec![(j - 1, Complex64::new(c, 0.0))],
        });
        for l in 0..j.saturating_sub(1) {
            let idx_f = scale + 2f64.powi(l as i32);
            let amp = profile.eval(1.0 + 2f64.powi(l as i32 - j as i32));
            let c = -4.0 * PI * idx_f * amp * coeff_a(j - l, n)?;
            entries.push(SpectrumEntry {
                index: TaylorIndex::pow2(j).add(&TaylorIndex::pow2(l)),
                provenance: Some((j, l)),
                vector: vec![(l, Complex64::new(c, 0.0))],
            });
        }
    }
    Ok(VectorSpectrum::from_entries(n, entries))
}

/// Spectrum of the lacunary test function: coefficient e_l at index 2^l for
/// l = 0..N-1, so its squared Hardy norm is exactly N.
pub fn test_spectrum_e(n: u32) -> Result<VectorSpectrum> {
    if n < 2 {
        return Err(Error::domain(format!("dimension N = {n} must be at least 2")));
    }
    let entries = (0..n)
        .map(|l| SpectrumEntry {
            index: TaylorIndex::pow2(l),
            provenance: None,
            vector: vec![(l, Complex64::new(1.0, 0.0))],
        })
        .collect();
    Ok(VectorSpectrum::from_entries(n, entries))
}

/// Exact count of the closed-form support: N rank entries plus one entry per
/// (j, l) pair with l <= j-2.
pub fn phi_support_count(n: u32) -> usize {
    let n = n as usize;
    n + n * (n - 1) / 2
}
