//! Band-limited Meyer-type wavelet profile.
//!
//! The profile is the even, nonnegative frequency envelope built from a
//! smooth ramp on the transition bands. Its two partition identities (unit
//! sum of squares over integer shifts and over dyadic dilations) are what
//! make the dilated/translated family orthonormal, and everything downstream
//! only ever evaluates the profile, never a time-domain wavelet.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Smooth ramp on [0,1] with nu(0)=0, nu(1)=1 and nu(x)+nu(1-x)=1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Ramp {
    /// nu(x) = x^4 (35 - 84x + 70x^2 - 20x^3); C^3 at the endpoints, exact
    /// closed-form values (for instance nu(1/4) = 289/4096).
    #[default]
    PolynomialC3,
    /// nu(x) = s(x)/(s(x)+s(1-x)) with s(x)=exp(-1/x); C^inf, so the
    /// time-domain wavelet decays faster than any polynomial. Needed by the
    /// Poisson-localization check, which assumes rapid decay.
    SmoothCinf,
}

impl Ramp {
    pub fn name(self) -> &'static str {
        match self {
            Ramp::PolynomialC3 => "polynomial-c3",
            Ramp::SmoothCinf => "smooth-cinf",
        }
    }
}

impl std::str::FromStr for Ramp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polynomial-c3" => Ok(Ramp::PolynomialC3),
            "smooth-cinf" => Ok(Ramp::SmoothCinf),
            other => Err(Error::domain(format!("unknown ramp kind {other:?}"))),
        }
    }
}

/// Evaluate the ramp at x in [0,1].
pub fn eval_nu(ramp: Ramp, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("ramp argument {x} outside [0,1]")));
    }
    Ok(match ramp {
        Ramp::PolynomialC3 => {
            if x == 0.0 {
                0.0
            } else if x == 1.0 {
                1.0
            } else {
                let x2 = x * x;
                x2 * x2 * (35.0 - 84.0 * x + 70.0 * x2 - 20.0 * x2 * x)
            }
        }
        Ramp::SmoothCinf => {
            if x == 0.0 {
                0.0
            } else if x == 1.0 {
                1.0
            } else {
                let s = (-1.0 / x).exp();
                let t = (-1.0 / (1.0 - x)).exp();
                s / (s + t)
            }
        }
    })
}

/// The profile: an even function of the frequency, zero outside
/// 1/3 <= |xi| <= 4/3, rising from 0 to 1 on [1/3, 2/3] and falling back on
/// [2/3, 4/3], with sin/cos shaping so the squares tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WaveletProfile {
    pub ramp: Ramp,
}

impl WaveletProfile {
    pub fn new(ramp: Ramp) -> Self {
        WaveletProfile { ramp }
    }

    /// psi_hat(xi). Exactly zero outside the support bands so downstream
    /// sparsity patterns stay exact.
    pub fn eval(&self, xi: f64) -> f64 {
        let u = xi.abs();
        if u <= 1.0 / 3.0 || u >= 4.0 / 3.0 {
            return 0.0;
        }
        let half_pi = std::f64::consts::FRAC_PI_2;
        if u <= 2.0 / 3.0 {
            // clamp guards the band edges against rounding of 3u-1
            let nu = eval_nu(self.ramp, (3.0 * u - 1.0).clamp(0.0, 1.0)).expect("clamped");
            (half_pi * nu).sin()
        } else {
            let nu = eval_nu(self.ramp, (1.5 * u - 1.0).clamp(0.0, 1.0)).expect("clamped");
            (half_pi * nu).cos()
        }
    }
}

/// Convenience free function mirroring [`WaveletProfile::eval`].
pub fn eval_psi_hat(profile: &WaveletProfile, xi: f64) -> f64 {
    profile.eval(xi)
}

#[cfg(test)]
mod tests {
    use super::*;

    const RAMPS: [Ramp; 2] = [Ramp::PolynomialC3, Ramp::SmoothCinf];

    #[test]
    fn nu_boundary_and_midpoint() {
        for ramp in RAMPS {
            assert_eq!(eval_nu(ramp, 0.0).unwrap(), 0.0);
            assert_eq!(eval_nu(ramp, 1.0).unwrap(), 1.0);
            assert!((eval_nu(ramp, 0.5).unwrap() - 0.5).abs() < 1e-15);
        }
        assert!(eval_nu(Ramp::PolynomialC3, -0.1).is_err());
        assert!(eval_nu(Ramp::PolynomialC3, 1.1).is_err());
    }

    #[test]
    fn nu_quarter_matches_direct_polynomial() {
        // x^4 (35 - 84x + 70x^2 - 20x^3) at x = 1/4 is exactly 289/4096.
        let v = eval_nu(Ramp::PolynomialC3, 0.25).unwrap();
        assert_eq!(v, 289.0 / 4096.0);
    }

    #[test]
    fn nu_symmetry_and_monotonicity() {
        for ramp in RAMPS {
            let mut prev = -1.0;
            for i in 0..=2000 {
                let x = i as f64 / 2000.0;
                let v = eval_nu(ramp, x).unwrap();
                let w = eval_nu(ramp, 1.0 - x).unwrap();
                assert!((v + w - 1.0).abs() < 1e-12, "symmetry at {x}: {}", v + w - 1.0);
                assert!(v >= prev - 1e-15, "not nondecreasing at {x}");
                prev = v;
            }
        }
    }

    #[test]
    fn profile_frozen_points() {
        let p = WaveletProfile::new(Ramp::PolynomialC3);
        assert_eq!(p.eval(1.0 / 3.0), 0.0);
        assert_eq!(p.eval(4.0 / 3.0), 0.0);
        assert_eq!(p.eval(2.0), 0.0);
        assert!((p.eval(2.0 / 3.0) - 1.0).abs() < 1e-15);
        let half_sqrt2 = std::f64::consts::SQRT_2 / 2.0;
        for ramp in RAMPS {
            let p = WaveletProfile::new(ramp);
            assert!((p.eval(0.5) - half_sqrt2).abs() < 1e-15);
            assert!((p.eval(1.0) - half_sqrt2).abs() < 1e-15);
            assert_eq!(p.eval(0.5), p.eval(-0.5));
        }
    }

    #[test]
    fn profile_positive_on_inner_band() {
        for ramp in RAMPS {
            let p = WaveletProfile::new(ramp);
            for i in 0..=1000 {
                let xi = 3.0 / 8.0 + i as f64 / 1000.0 * (5.0 / 4.0 - 3.0 / 8.0);
                assert!(p.eval(xi) > 0.0, "psi_hat({xi}) not positive for {ramp:?}");
            }
        }
    }

    #[test]
    fn shift_partition_identity() {
        for ramp in RAMPS {
            let p = WaveletProfile::new(ramp);
            for i in 1..10_000 {
                let xi = i as f64 / 10_000.0 * 3.0;
                let mut sum = 0.0;
                // support is two unit-length bands, so |k| <= 5 covers it
                for k in -5..=5 {
                    let v = p.eval(xi + k as f64);
                    sum += v * v;
                }
                assert!((sum - 1.0).abs() < 1e-12, "shift identity at {xi}: {sum} ({ramp:?})");
            }
        }
    }

    #[test]
    fn dilation_partition_identity() {
        for ramp in RAMPS {
            let p = WaveletProfile::new(ramp);
            for i in 1..10_000 {
                let xi = i as f64 / 10_000.0 * 4.0 + 1e-4;
                let mut sum = 0.0;
                for j in -16..=16 {
                    let v = p.eval(2f64.powi(j) * xi);
                    sum += v * v;
                }
                assert!((sum - 1.0).abs() < 1e-12, "dilation identity at {xi}: {sum} ({ramp:?})");
            }
        }
    }
}
