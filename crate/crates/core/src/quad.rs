//! Quadrature primitives: Gauss-Legendre rules, an adaptive 1-D integrator
//! for band-limited oscillatory integrands, and a tensor rule over the
//! weighted disk used as an independent oracle by the test suites.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::sync::OnceLock;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    for k in 1..=n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (k as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, x);
            for m in 2..=n {
                let m = m as f64;
                let p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((-x, w));
        if 2 * k != n + 1 {
            out.push((x, w));
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

static GL15: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
static GL30: OnceLock<Vec<(f64, f64)>> = OnceLock::new();

fn rule15() -> &'static [(f64, f64)] {
    GL15.get_or_init(|| gauss_legendre(15))
}

fn rule30() -> &'static [(f64, f64)] {
    GL30.get_or_init(|| gauss_legendre(30))
}

fn gl_fixed<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64, nodes: &[(f64, f64)]) -> Complex64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = Complex64::new(0.0, 0.0);
    for &(x, w) in nodes {
        sum += f(mid + half * x) * w;
    }
    sum * half
}

/// Integrate a smooth complex integrand on [a, b] with GL-n.
pub fn integrate_gl<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, n: usize) -> Complex64 {
    let nodes = gauss_legendre(n);
    gl_fixed(&mut f, a, b, &nodes)
}

struct Adaptive<'a, F> {
    f: &'a mut F,
    value: Complex64,
    err: f64,
    exhausted: bool,
}

impl<F: FnMut(f64) -> Complex64> Adaptive<'_, F> {
    fn descend(&mut self, a: f64, b: f64, budget: f64, depth: u32) {
        let coarse = gl_fixed(self.f, a, b, rule15());
        let fine = gl_fixed(self.f, a, b, rule30());
        let err = (fine - coarse).norm();
        if err <= budget || depth >= 28 {
            self.value += fine;
            self.err += err;
            if err > budget {
                self.exhausted = true;
            }
            return;
        }
        let mid = 0.5 * (a + b);
        self.descend(a, mid, 0.5 * budget, depth + 1);
        self.descend(mid, b, 0.5 * budget, depth + 1);
    }
}

/// Adaptive panel integration.
///
/// `panels` is an increasing breakpoint list (at least two points); each
/// panel is refined until the local error estimate fits its share of the
/// absolute tolerance. The absolute tolerance is rel_tol times a first-pass
/// magnitude estimate (the sum of panel magnitudes, so cancellation between
/// panels does not starve the budget), floored by `abs_floor`.
pub fn integrate_adaptive<F: FnMut(f64) -> Complex64>(
    mut f: F,
    panels: &[f64],
    rel_tol: f64,
    abs_floor: f64,
) -> Result<(Complex64, f64)> {
    assert!(panels.len() >= 2, "need at least one panel");
    let mut magnitude = 0.0;
    for w in panels.windows(2) {
        magnitude += gl_fixed(&mut f, w[0], w[1], rule30()).norm();
    }
    let tol = (rel_tol * magnitude).max(abs_floor);
    let mut state = Adaptive { f: &mut f, value: Complex64::new(0.0, 0.0), err: 0.0, exhausted: false };
    let budget_per = tol / (panels.len() - 1) as f64;
    for w in panels.windows(2) {
        state.descend(w[0], w[1], budget_per, 0);
    }
    let (value, err, exhausted) = (state.value, state.err, state.exhausted);
    if exhausted {
        return Err(Error::Numeric {
            message: "adaptive quadrature did not reach the requested tolerance".into(),
            achieved: err / magnitude.max(f64::MIN_POSITIVE),
        });
    }
    Ok((value, err))
}

/// Split [a, b] so no panel spans more than `max_width`, keeping the
/// original breakpoints.
pub fn refine_panels(breaks: &[f64], max_width: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let pieces = ((b - a) / max_width).ceil().max(1.0) as usize;
        for i in 0..pieces {
            out.push(a + (b - a) * i as f64 / pieces as f64);
        }
    }
    out.push(*breaks.last().unwrap());
    out
}

/// Tensor quadrature of f(r, x) against the weighted area measure
/// dA_1 = (1 - r^2) 2 pi r dr dx over [r0, r1] x [x0, x1].
///
/// Radial: composite GL with `n_r` nodes per panel over `panels_r` panels.
/// Angular: composite GL with `n_x` nodes per panel over `panels_x` panels.
/// Test-suite oracle; accuracy is driven by the node counts the caller picks.
pub fn integrate_da1<F: Fn(f64, f64) -> Complex64>(
    f: F,
    (r0, r1): (f64, f64),
    (x0, x1): (f64, f64),
    (n_r, panels_r): (usize, usize),
    (n_x, panels_x): (usize, usize),
) -> Complex64 {
    let rad_nodes = gauss_legendre(n_r);
    let ang_nodes = gauss_legendre(n_x);
    let mut total = Complex64::new(0.0, 0.0);
    for pr in 0..panels_r {
        let ra = r0 + (r1 - r0) * pr as f64 / panels_r as f64;
        let rb = r0 + (r1 - r0) * (pr + 1) as f64 / panels_r as f64;
        for &(tr, wr) in &rad_nodes {
            let r = 0.5 * (ra + rb) + 0.5 * (rb - ra) * tr;
            let wr = wr * 0.5 * (rb - ra);
            let weight = wr * (1.0 - r * r) * 2.0 * std::f64::consts::PI * r;
            let mut ang = Complex64::new(0.0, 0.0);
            for px in 0..panels_x {
                let xa = x0 + (x1 - x0) * px as f64 / panels_x as f64;
                let xb = x0 + (x1 - x0) * (px + 1) as f64 / panels_x as f64;
                for &(tx, wx) in &ang_nodes {
                    let x = 0.5 * (xa + xb) + 0.5 * (xb - xa) * tx;
                    ang += f(r, x) * (wx * 0.5 * (xb - xa));
                }
            }
            total += ang * weight;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl3_matches_reference() {
        let rule = gauss_legendre(3);
        let xs: Vec<f64> = rule.iter().map(|p| p.0).collect();
        let ws: Vec<f64> = rule.iter().map(|p| p.1).collect();
        let x_ref = [-0.7745966692414834, 0.0, 0.7745966692414834];
        let w_ref = [0.5555555555555556, 0.8888888888888888, 0.5555555555555556];
        for i in 0..3 {
            assert!((xs[i] - x_ref[i]).abs() < 1e-14);
            assert!((ws[i] - w_ref[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn gl_exact_on_polynomials() {
        // degree 2n-1 exactness
        for n in [5usize, 16, 64] {
            let deg = 2 * n - 1;
            let val = integrate_gl(|x| Complex64::new(x.powi(deg as i32), 0.0), 0.0, 1.0, n);
            let expect = 1.0 / (deg as f64 + 1.0);
            assert!((val.re - expect).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn weights_sum_to_two() {
        for n in [1usize, 2, 7, 128, 256] {
            let s: f64 = gauss_legendre(n).iter().map(|p| p.1).sum();
            assert!((s - 2.0).abs() < 1e-12, "n={n}: {s}");
        }
    }

    #[test]
    fn adaptive_oscillatory() {
        // int_0^1 cos(2 pi 40 x) sin(pi x) dx has a closed form via products,
        // compare against a dense GL rule instead of trusting hand algebra.
        let f = |x: f64| Complex64::new((2.0 * std::f64::consts::PI * 40.0 * x).cos() * (std::f64::consts::PI * x).sin(), 0.0);
        let dense = integrate_gl(f, 0.0, 1.0, 600);
        let panels = refine_panels(&[0.0, 1.0], 0.05);
        let (v, err) = integrate_adaptive(f, &panels, 1e-12, 1e-15).unwrap();
        assert!((v - dense).norm() < 1e-11, "err {err}");
    }

    #[test]
    fn da1_total_mass() {
        // integral of 1 over the disk against dA1 is pi/2
        let v = integrate_da1(|_, _| Complex64::new(1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (64, 1), (8, 1));
        assert!((v.re - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}
