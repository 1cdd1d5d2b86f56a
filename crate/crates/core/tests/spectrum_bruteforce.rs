//! The closed-form spectrum against literal summation over all dyadic arcs.

use carleson::construction::{g_hat_coefficient, omega_vector, phi_spectrum, phi_support_count};
use carleson::dyadic::DyadicInterval;
use carleson::index::TaylorIndex;
use carleson::wavelet::{Ramp, WaveletProfile};
use num_complex::Complex64;

/// phi_hat(n) = sum over ranks 1..=N and all arcs of g_hat_I(n) omega_I,
/// assembled coefficient by coefficient.
fn brute_force_coefficient(profile: &WaveletProfile, n_dim: u32, n: u64) -> Vec<Complex64> {
    let mut acc = vec![Complex64::new(0.0, 0.0); n_dim as usize];
    for j in 1..=n_dim {
        for arc in DyadicInterval::arcs_of_rank(j) {
            let g = g_hat_coefficient(profile, &arc, n as i64).unwrap();
            if g == Complex64::new(0.0, 0.0) {
                continue;
            }
            let omega = omega_vector(&arc, n_dim).unwrap();
            for (slot, w) in acc.iter_mut().zip(omega) {
                *slot += g * w;
            }
        }
    }
    acc
}

#[test]
fn closed_form_equals_interval_summation() {
    for ramp in [Ramp::PolynomialC3, Ramp::SmoothCinf] {
        let profile = WaveletProfile::new(ramp);
        for n_dim in 2..=6u32 {
            let spectrum = phi_spectrum(&profile, n_dim).unwrap();
            let top = 2u64.pow(n_dim) + 2u64.pow(n_dim.saturating_sub(2)) + 4;
            let scale: f64 = spectrum
                .entries()
                .iter()
                .map(|e| e.norm_sq().sqrt())
                .fold(0.0, f64::max);
            for n in 1..=top {
                let brute = brute_force_coefficient(&profile, n_dim, n);
                let closed = spectrum.get(&TaylorIndex::from_u64(n));
                for (coord, b) in brute.iter().enumerate() {
                    let c = closed
                        .and_then(|e| e.vector.iter().find(|(l, _)| *l as usize == coord))
                        .map(|(_, v)| *v)
                        .unwrap_or(Complex64::new(0.0, 0.0));
                    assert!(
                        (b - c).norm() <= 1e-12 * scale,
                        "N {n_dim} ramp {ramp:?} index {n} coord {coord}: brute {b} closed {c}"
                    );
                }
            }
        }
    }
}

#[test]
fn support_counts_follow_closed_form() {
    let profile = WaveletProfile::new(Ramp::PolynomialC3);
    for n_dim in [2u32, 5, 8, 33, 100, 256] {
        let spectrum = phi_spectrum(&profile, n_dim).unwrap();
        assert_eq!(spectrum.len(), phi_support_count(n_dim), "N = {n_dim}");
    }
}
