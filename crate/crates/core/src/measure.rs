//! The operator-valued measure: Gram matrices of Carleson squares, the
//! intensity scan over dyadic arcs, and the weighted norm of the periodized
//! wavelet pieces.

use crate::disk::{moment_carleson_square, radial_factor, CarlesonSquare};
use crate::dyadic::DyadicInterval;
use crate::eigen::hermitian_eigenvalues;
use crate::error::Result;
use crate::spectrum::VectorSpectrum;
use crate::wavelet::WaveletProfile;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Dense complex Hermitian matrix holding the measure of a region.
#[derive(Debug, Clone)]
pub struct HermitianForm {
    dim: u32,
    data: Vec<Complex64>,
}

impl HermitianForm {
    pub fn zero(dim: u32) -> Self {
        HermitianForm { dim, data: vec![Complex64::new(0.0, 0.0); (dim * dim) as usize] }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn entry(&self, p: u32, q: u32) -> Complex64 {
        self.data[(p * self.dim + q) as usize]
    }

    fn add(&mut self, p: u32, q: u32, z: Complex64) {
        self.data[(p * self.dim + q) as usize] += z;
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entry(i, i).re).sum()
    }

    /// Replace M by (M + M*)/2.
    pub fn symmetrize(&mut self) {
        let n = self.dim as usize;
        for p in 0..n {
            for q in p..n {
                let avg = 0.5 * (self.data[p * n + q] + self.data[q * n + p].conj());
                self.data[p * n + q] = avg;
                self.data[q * n + p] = avg.conj();
            }
        }
    }

    pub fn max_asymmetry(&self) -> f64 {
        let n = self.dim as usize;
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in 0..n {
                worst = worst.max((self.data[p * n + q] - self.data[q * n + p].conj()).norm());
            }
        }
        worst
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.data, self.dim as usize)
    }

    /// Quadratic form <M e, e>.
    pub fn quadratic_form(&self, e: &[Complex64]) -> f64 {
        let n = self.dim as usize;
        assert_eq!(e.len(), n);
        let mut sum = Complex64::new(0.0, 0.0);
        for p in 0..n {
            for q in 0..n {
                sum += e[p].conj() * self.data[p * n + q] * e[q];
            }
        }
        sum.re
    }

    /// Smallest eigenvalue at least -tol_factor * trace.
    pub fn is_psd(&self, tol_factor: f64) -> Result<bool> {
        if self.dim == 0 {
            return Ok(true);
        }
        let evals = self.eigenvalues()?;
        Ok(evals[0] >= -tol_factor * self.trace().abs().max(f64::MIN_POSITIVE))
    }
}

/// Largest eigenvalue of a Hermitian PSD form.
pub fn largest_eigenvalue(m: &HermitianForm) -> Result<f64> {
    if m.dim == 0 {
        return Ok(0.0);
    }
    Ok(*m.eigenvalues()?.last().unwrap())
}

/// Gram matrix of the measure on a Carleson square:
/// M_pq = sum_{n, n'} phi_hat(n)_p conj(phi_hat(n')_q) moment(Q, n, n').
///
/// The moment factors as an angular part (zero whenever n - n' is a nonzero
/// multiple of 2^rank) times a radial band integral, so entries are grouped
/// by their index residue modulo 2^rank and only cross-residue pairs plus
/// the n = n' diagonal are visited.
pub fn gram_matrix(q: &CarlesonSquare, spectrum: &VectorSpectrum) -> HermitianForm {
    let mut m = HermitianForm::zero(spectrum.dim());
    let rank = q.arc.rank;
    let entries = spectrum.entries();
    let len = q.arc.len();

    let idx_f64: Vec<f64> = entries.iter().map(|e| e.index.to_f64()).collect();

    // n = n' diagonal: angular factor is |I|
    for (e, &nf) in entries.iter().zip(&idx_f64) {
        let w = len * radial_factor(rank, 2.0 * nf);
        for &(c1, v1) in &e.vector {
            for &(c2, v2) in &e.vector {
                m.add(c1, c2, v1 * v2.conj() * w);
            }
        }
    }

    // cross terms, bucketed by index residue mod 2^rank
    let mut buckets: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        buckets.entry(e.index.mod_pow2(rank)).or_default().push(i);
    }
    let groups: Vec<&Vec<usize>> = buckets.values().collect();
    for gi in 0..groups.len() {
        for gj in (gi + 1)..groups.len() {
            for &i in groups[gi] {
                for &i2 in groups[gj] {
                    let (a, b) = (&entries[i], &entries[i2]);
                    let z = moment_carleson_square(q, &a.index, &b.index);
                    for &(c1, v1) in &a.vector {
                        for &(c2, v2) in &b.vector {
                            let t = v1 * v2.conj() * z;
                            m.add(c1, c2, t);
                            m.add(c2, c1, t.conj());
                        }
                    }
                }
            }
        }
    }
    m.symmetrize();
    m
}

/// Result of the intensity scan.
#[derive(Debug, Clone, Serialize)]
pub struct IntensityResult {
    /// sup over scanned dyadic arcs of the largest Gram eigenvalue
    pub value: f64,
    /// arc attaining the supremum
    pub witness: DyadicInterval,
    pub scanned_max_rank: u32,
    /// bound on <mu(Q_I) e, e> for every arc deeper than the scanned ranks:
    /// the trace of the measure of the outermost annulus they all live in
    pub remainder_bound: f64,
}

fn better(a: (f64, DyadicInterval), b: (f64, DyadicInterval)) -> (f64, DyadicInterval) {
    // max by value; ties resolved toward the shallower, leftmost arc so any
    // reduction order gives the same winner
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if (a.1.rank, a.1.index) <= (b.1.rank, b.1.index) {
                a
            } else {
                b
            }
        }
    }
}

/// Supremum of the largest Gram eigenvalue over dyadic arcs of rank up to
/// `max_rank`.
///
/// Carleson squares of nested arcs nest as regions, so the measure is
/// monotone in the positive-semidefinite order and an arc's eigenvalue
/// bounds every descendant's. The scan therefore evaluates low ranks
/// exhaustively and prunes any subtree whose root cannot beat the running
/// maximum; the reported supremum is certified over all ranks <= max_rank.
pub fn carleson_intensity(spectrum: &VectorSpectrum, max_rank: u32) -> Result<IntensityResult> {
    let force_depth = max_rank.min(2);
    let mut best = (f64::NEG_INFINITY, DyadicInterval::whole());
    let mut frontier: Vec<DyadicInterval> = Vec::new();
    for rank in 0..=force_depth {
        let level: Vec<(f64, DyadicInterval)> = DyadicInterval::arcs_of_rank(rank)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|arc| {
                let gram = gram_matrix(&CarlesonSquare::new(arc), spectrum);
                largest_eigenvalue(&gram).map(|v| (v, arc))
            })
            .collect::<Result<Vec<_>>>()?;
        if rank == force_depth {
            frontier = level.iter().map(|&(_, arc)| arc).collect();
        }
        let mut values: BTreeMap<(u32, i64), f64> = BTreeMap::new();
        for &(v, arc) in &level {
            values.insert((arc.rank, arc.index), v);
            best = better(best, (v, arc));
        }
        if rank == force_depth {
            frontier.retain(|arc| values[&(arc.rank, arc.index)] > best.0);
        }
    }
    // descend only where an ancestor still exceeds the running maximum
    let mut rank = force_depth;
    while rank < max_rank && !frontier.is_empty() {
        rank += 1;
        let children: Vec<DyadicInterval> = frontier.iter().flat_map(|a| a.children()).collect();
        let level: Vec<(f64, DyadicInterval)> = children
            .into_par_iter()
            .map(|arc| {
                let gram = gram_matrix(&CarlesonSquare::new(arc), spectrum);
                largest_eigenvalue(&gram).map(|v| (v, arc))
            })
            .collect::<Result<Vec<_>>>()?;
        for &(v, arc) in &level {
            best = better(best, (v, arc));
        }
        frontier = level.iter().filter(|&&(v, _)| v > best.0).map(|&(_, arc)| arc).collect();
    }
    let remainder_bound = spectrum
        .entries()
        .iter()
        .map(|e| e.norm_sq() * radial_factor(max_rank, 2.0 * e.index.to_f64()))
        .sum();
    Ok(IntensityResult {
        value: if best.0.is_finite() { best.0 } else { 0.0 },
        witness: best.1,
        scanned_max_rank: max_rank,
        remainder_bound,
    })
}

/// Weighted squared norm of the periodized wavelet piece of an arc:
/// int_D |g_I|^2 dA_1 = pi sum_{n != 0} |g_hat(n)|^2 / ((|n|+1)(|n|+2)).
/// Positive and negative frequencies contribute equally.
pub fn g_norm_da1(profile: &WaveletProfile, interval: &DyadicInterval) -> f64 {
    let rank = interval.rank as i32;
    let len = interval.len();
    let lo = (2f64.powi(rank) / 3.0).floor() as i64;
    let hi = (4.0 * 2f64.powi(rank) / 3.0).ceil() as i64 + 1;
    let mut sum = 0.0;
    for n in lo.max(1)..=hi {
        let amp = profile.eval(n as f64 * len);
        if amp == 0.0 {
            continue;
        }
        let mag_sq = (4.0 * PI * n as f64 * len * amp).powi(2);
        sum += mag_sq / ((n as f64 + 1.0) * (n as f64 + 2.0));
    }
    2.0 * PI * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::phi_spectrum;
    use crate::disk::moment_disk;
    use crate::rng::SplitMix64;
    use crate::wavelet::Ramp;

    fn profile() -> WaveletProfile {
        WaveletProfile::new(Ramp::PolynomialC3)
    }

    #[test]
    fn whole_disk_gram_is_diagonal_collapse() {
        let p = profile();
        let s = phi_spectrum(&p, 4).unwrap();
        let m = gram_matrix(&CarlesonSquare::whole_disk(), &s);
        // expected: M_pq = sum_n phi(n)_p conj(phi(n)_q) pi/((n+1)(n+2));
        // each entry has a single coordinate, so the matrix is diagonal
        let mut expect = [0.0f64; 4];
        for e in s.entries() {
            let w = moment_disk(&e.index, &e.index);
            for &(c, v) in &e.vector {
                expect[c as usize] += v.norm_sqr() * w;
            }
        }
        for p_ in 0..4u32 {
            for q_ in 0..4u32 {
                let got = m.entry(p_, q_);
                if p_ == q_ {
                    assert!((got.re - expect[p_ as usize]).abs() < 1e-12 * expect[p_ as usize]);
                    assert!(got.im.abs() < 1e-15);
                } else {
                    assert!(got.norm() < 1e-15, "off-diagonal {p_},{q_} = {got}");
                }
            }
        }
        assert!(m.max_asymmetry() == 0.0);
        assert!(m.is_psd(1e-10).unwrap());
    }

    #[test]
    fn gram_monotone_under_nesting() {
        let p = profile();
        let s = phi_spectrum(&p, 6).unwrap();
        let mut rng = SplitMix64::new(11);
        let parent_arc = DyadicInterval::arc(1, 1);
        let parent = gram_matrix(&CarlesonSquare::new(parent_arc), &s);
        for child_arc in parent_arc.children() {
            let child = gram_matrix(&CarlesonSquare::new(child_arc), &s);
            for _ in 0..20 {
                let mut e: Vec<Complex64> =
                    (0..6).map(|_| Complex64::new(rng.next_gaussian(), rng.next_gaussian())).collect();
                let norm = e.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                e.iter_mut().for_each(|c| *c /= norm);
                let qp = parent.quadratic_form(&e);
                let qc = child.quadratic_form(&e);
                assert!(qc <= qp + 1e-12 * qp.abs(), "child {qc} > parent {qp}");
                assert!(qc >= -1e-14);
            }
        }
    }

    #[test]
    fn intensity_zero_spectrum() {
        let s = VectorSpectrum::new(3);
        let r = carleson_intensity(&s, 4).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.remainder_bound, 0.0);
    }

    #[test]
    fn intensity_monotone_in_max_rank() {
        let p = profile();
        let s = phi_spectrum(&p, 4).unwrap();
        let mut prev_value = -1.0;
        let mut prev_remainder = f64::INFINITY;
        for max_rank in [0u32, 2, 4, 6, 8] {
            let r = carleson_intensity(&s, max_rank).unwrap();
            assert!(r.value >= prev_value, "value shrank at max_rank {max_rank}");
            assert!(r.remainder_bound <= prev_remainder + 1e-18, "remainder grew at {max_rank}");
            prev_value = r.value;
            prev_remainder = r.remainder_bound;
        }
    }

    #[test]
    fn g_norm_positive_and_rank_stable() {
        let p = profile();
        let mut ratios = Vec::new();
        for rank in 0..=12 {
            let i = DyadicInterval::arc(rank, 0);
            let v = g_norm_da1(&p, &i);
            assert!(v > 0.0, "g norm vanished at rank {rank}");
            ratios.push(v / i.len());
        }
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max / min < 10.0, "scaling ratio unstable: {ratios:?}");
        // deep ranks settle: rank 12 within 10% of rank 6
        assert!((ratios[12] / ratios[6] - 1.0).abs() < 0.10);
    }
}
