//! Numerical verification of the estimates behind the construction: norm
//! scaling of the wavelet pieces, the diagonal direction-vector bound, the
//! off-diagonal square integrals, the half-plane Littlewood-Paley identity,
//! Poisson localization, and the dimension-growth experiment.

use crate::construction::{coeff_a, g_hat_coefficient};
use crate::disk::{eval_f_poisson, halfplane_lp_pairing, moment_carleson_square, CarlesonSquare};
use crate::dyadic::{relative_distance_arc, DyadicInterval};
use crate::embedding::ratio_with_intensity;
use crate::error::{Error, Result};
use crate::index::TaylorIndex;
use crate::measure::g_norm_da1;
use crate::rng::SplitMix64;
use crate::wavelet::{Ramp, WaveletProfile};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckCase {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub witnessed_constant: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    pub details: Vec<CheckCase>,
}

impl CheckReport {
    fn new(
        name: &str,
        parameters: BTreeMap<String, String>,
        witnessed_constant: f64,
        threshold: f64,
        details: Vec<CheckCase>,
    ) -> Self {
        let verdict = if witnessed_constant <= threshold { Verdict::Pass } else { Verdict::Fail };
        CheckReport { name: name.into(), parameters, witnessed_constant, threshold, verdict, details }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Pass/fail thresholds for the verification checks. The defaults are
/// regression values frozen from the first honest run of the suite.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyThresholds {
    /// bound for int |g_I|^2 dA_1 / |I|
    pub l1: f64,
    /// bound for the normalized diagonal sum over direction vectors
    pub l2: f64,
    /// bound for ||omega||^2 * 6 ln N / pi^2
    pub omega: f64,
    /// last-rank increment of the off-diagonal partial sums, relative
    pub l3_saturation: f64,
    /// relative defect of the Littlewood-Paley identity
    pub l4: f64,
    /// max/median of the normalized localization quantity on the grid
    pub l5_max_over_median: f64,
    /// band (max/min) of value_spectral / (N ln N) over the dims
    pub growth_value_band: f64,
    /// band of the intensity column
    pub growth_intensity_band: f64,
    /// band of ratio / sqrt(ln N)
    pub growth_ratio_band: f64,
}

impl Default for VerifyThresholds {
    fn default() -> Self {
        VerifyThresholds {
            // witnessed constant is ~496 = 16 pi^3 at deep ranks
            l1: 550.0,
            l2: 10.0,
            omega: 1.0,
            // regression pin from the first honest run at the rank cap 6;
            // the tail of the K-adjacent diagonal terms halves per rank, so
            // the last increment at rank 6 sits near 0.19 for rank-3 arcs
            l3_saturation: 0.20,
            l4: 1e-6,
            l5_max_over_median: 10.0,
            // regression pins from the first honest run over {8,...,256}:
            // observed 1.6228 / 2.1103 / 2.6866; tighten only
            growth_value_band: 1.65,
            growth_intensity_band: 2.15,
            growth_ratio_band: 2.75,
        }
    }
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Deterministic unit vectors followed by seeded Gaussian ones.
pub fn unit_vector_net(dim: u32, deterministic: usize, random: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let n = dim as usize;
    let mut net = Vec::with_capacity(deterministic + random);
    let mut det = Vec::new();
    for t in 0..n.min(16) {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[t] = Complex64::new(1.0, 0.0);
        det.push(v);
    }
    let sigmas = [
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    ];
    for t in 0..16 {
        let a = t % n;
        let b = (t + 1 + t / 4) % n;
        if a == b {
            continue;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        let s = std::f64::consts::FRAC_1_SQRT_2;
        v[a] = Complex64::new(s, 0.0);
        v[b] = sigmas[t % 4] * s;
        det.push(v);
    }
    for k in 1..=16u32 {
        let v: Vec<Complex64> = (0..n)
            .map(|l| Complex64::from_polar(1.0 / (n as f64).sqrt(), 2.0 * PI * (k as f64 * l as f64 / n as f64).fract()))
            .collect();
        det.push(v);
    }
    for t in 0..16 {
        let rho: f64 = [0.5, 0.8, 0.9, 0.95][t % 4];
        let twist = (t / 4) as f64;
        let mut v: Vec<Complex64> = (0..n)
            .map(|l| Complex64::from_polar(rho.powi(l as i32), 2.0 * PI * twist * l as f64 / 8.0))
            .collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|c| *c /= norm);
        det.push(v);
    }
    det.truncate(deterministic);
    net.extend(det);
    let mut rng = SplitMix64::new(seed);
    for _ in 0..random {
        let mut v: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(rng.next_gaussian(), rng.next_gaussian())).collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|c| *c /= norm);
        net.push(v);
    }
    net
}

/// Closed-form evaluation of sum over I in D_j(K) of |<omega_I, e>|^2.
///
/// Cross terms in (l1, l2) carry the geometric sum of e^{2 pi i Delta C_I}
/// over the 2^(j-k) centers; it vanishes unless one of the exponents sits
/// below the rank of K, which keeps the pair scan short.
#[cfg(test)]
fn direction_sum_over_generation(k_arc: &DyadicInterval, j: u32, n: u32, e: &[(u32, Complex64)]) -> f64 {
    let k = k_arc.rank;
    debug_assert!(j >= k && j >= 1);
    let count = 2f64.powi(j as i32 - k as i32);
    let mut diag = 0.0;
    for &(l, b) in e {
        if l < j {
            diag += coeff_a(j - l, n).unwrap().powi(2) * b.norm_sqr();
        }
    }
    let mut cross = Complex64::new(0.0, 0.0);
    for (l1, l2, hoisted, dl) in cross_pairs(k_arc, e) {
        if l1 >= j || l2 >= j {
            continue;
        }
        let delta_j = dl * 2f64.powi(-(j as i32));
        let denominator = Complex64::from_polar(1.0, 2.0 * PI * delta_j) - Complex64::new(1.0, 0.0);
        let half_phase = Complex64::from_polar(1.0, PI * delta_j);
        let a1 = coeff_a(j - l1, n).unwrap();
        let a2 = coeff_a(j - l2, n).unwrap();
        cross += hoisted * half_phase / denominator * (a1 * a2);
    }
    diag * count + cross.re
}

/// Generation-independent data of the cross terms: for each ordered pair
/// (l1, l2) with a nonzero geometric numerator, the product of coefficient
/// conjugates, the numerator, and the lead phase from the left endpoint,
/// plus the exponent difference 2^l1 - 2^l2 that the per-generation
/// denominator rescales.
fn cross_pairs(k_arc: &DyadicInterval, e: &[(u32, Complex64)]) -> Vec<(u32, u32, Complex64, f64)> {
    let k = k_arc.rank;
    let kk = k_arc.index.rem_euclid(1i64 << k);
    // frac(2^l L_K) and frac(2^(l-k)), exact for l < k <= 62
    let frac_lk = |l: u32| -> f64 {
        if l >= k {
            0.0
        } else {
            let num = ((kk as i128) << l).rem_euclid(1i128 << k) as f64;
            num * 2f64.powi(-(k as i32))
        }
    };
    let frac_pow = |l: u32| -> f64 { if l >= k { 0.0 } else { 2f64.powi(l as i32 - k as i32) } };
    let mut pairs = Vec::new();
    for &(l1, b1) in e {
        for &(l2, b2) in e {
            if l1 == l2 || (l1 >= k && l2 >= k) {
                continue; // equal-turn phases sum to the diagonal count
            }
            let theta_num = frac_pow(l1) - frac_pow(l2);
            let numerator = Complex64::from_polar(1.0, 2.0 * PI * theta_num) - Complex64::new(1.0, 0.0);
            let lead = Complex64::from_polar(1.0, 2.0 * PI * (frac_lk(l1) - frac_lk(l2)));
            let dl = 2f64.powi(l1 as i32) - 2f64.powi(l2 as i32);
            pairs.push((l1, l2, b1.conj() * b2 * numerator * lead, dl));
        }
    }
    pairs
}

/// sum over j of 2^-j sum over D_j(K) of |<omega_I, e>|^2, with the
/// generation-independent pair data hoisted out of the j-loop.
fn direction_weighted_total(k_arc: &DyadicInterval, n: u32, e: &[(u32, Complex64)]) -> f64 {
    let k = k_arc.rank;
    let j_min = k.max(1);
    let mut diag = 0.0;
    for j in j_min..=n {
        for &(l, b) in e {
            if l < j {
                diag += coeff_a(j - l, n).unwrap().powi(2) * b.norm_sqr();
            }
        }
    }
    diag *= 2f64.powi(-(k as i32));
    let mut cross = Complex64::new(0.0, 0.0);
    for (l1, l2, hoisted, dl) in cross_pairs(k_arc, e) {
        for j in (l1.max(l2) + 1).max(j_min)..=n {
            let delta_j = dl * 2f64.powi(-(j as i32));
            let denominator =
                Complex64::from_polar(1.0, 2.0 * PI * delta_j) - Complex64::new(1.0, 0.0);
            let half_phase = Complex64::from_polar(1.0, PI * delta_j);
            let a1 = coeff_a(j - l1, n).unwrap();
            let a2 = coeff_a(j - l2, n).unwrap();
            cross += hoisted * half_phase / denominator * (a1 * a2 * 2f64.powi(-(j as i32)));
        }
    }
    diag + cross.re
}

/// Scaling, diagonal, and direction-norm checks.
pub fn verify_construction_lemmas(
    profile: &WaveletProfile,
    n: u32,
    max_rank: u32,
    seed: u64,
    thresholds: &VerifyThresholds,
) -> Result<Vec<CheckReport>> {
    if n < 8 {
        return Err(Error::domain(format!("construction suite needs N >= 8, got {n}")));
    }
    if max_rank > 14 {
        return Err(Error::domain(format!("max_rank {max_rank} exceeds the suite cap 14")));
    }
    let mut reports = Vec::new();

    // L1: int |g_I|^2 dA_1 <= C |I|, witnessed as the max ratio over ranks
    let mut l1_details = Vec::new();
    let mut l1_max = 0.0f64;
    for rank in 0..=max_rank {
        let arc = DyadicInterval::arc(rank, 0);
        let ratio = g_norm_da1(profile, &arc) / arc.len();
        l1_max = l1_max.max(ratio);
        l1_details.push(CheckCase { label: format!("rank {rank}"), value: ratio });
    }
    reports.push(CheckReport::new(
        "scaling-norm",
        params(&[("N", n.to_string()), ("max_rank", max_rank.to_string()), ("ramp", profile.ramp.name().into())]),
        l1_max,
        thresholds.l1,
        l1_details,
    ));

    // L2: sum over D(K) of |<omega_I, e>|^2 |I| <= C |K| over an e-net
    let net = unit_vector_net(n, 64, 64, seed);
    let k_cap = max_rank.min(n);
    let arcs: Vec<DyadicInterval> = (0..=k_cap).flat_map(DyadicInterval::arcs_of_rank).collect();
    let per_arc: Vec<(f64, DyadicInterval)> = arcs
        .par_iter()
        .map(|k_arc| {
            let mut worst = 0.0f64;
            for e in &net {
                let sparse: Vec<(u32, Complex64)> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.norm_sqr() > 0.0)
                    .map(|(l, c)| (l as u32, *c))
                    .collect();
                let norm_sq: f64 = e.iter().map(|c| c.norm_sqr()).sum();
                let total = direction_weighted_total(k_arc, n, &sparse);
                worst = worst.max(total / (k_arc.len() * norm_sq));
            }
            (worst, *k_arc)
        })
        .collect();
    let mut l2_max = 0.0f64;
    let mut per_rank: BTreeMap<u32, f64> = BTreeMap::new();
    for (v, arc) in per_arc {
        l2_max = l2_max.max(v);
        let slot = per_rank.entry(arc.rank).or_insert(0.0);
        *slot = slot.max(v);
    }
    let l2_details = per_rank
        .into_iter()
        .map(|(rank, v)| CheckCase { label: format!("K rank {rank}"), value: v })
        .collect();
    reports.push(CheckReport::new(
        "diagonal-direction-sum",
        params(&[
            ("N", n.to_string()),
            ("max_rank", k_cap.to_string()),
            ("seed", seed.to_string()),
            ("net", "64 deterministic + 64 random".into()),
        ]),
        l2_max,
        thresholds.l2,
        l2_details,
    ));

    // Omega: ||omega_I||^2 * 6 ln N / pi^2 <= 1
    let mut om_max = 0.0f64;
    let mut om_details = Vec::new();
    let mut partial = 0.0;
    for j in 1..=n {
        partial += coeff_a(j, n)?.powi(2);
        let v = partial * 6.0 * (n as f64).ln() / PI.powi(2);
        om_max = om_max.max(v);
        if j <= 4 || j == n {
            om_details.push(CheckCase { label: format!("rank {j}"), value: v });
        }
    }
    reports.push(CheckReport::new(
        "direction-norm",
        params(&[("N", n.to_string())]),
        om_max,
        thresholds.omega,
        om_details,
    ));

    Ok(reports)
}

/// Fourier-side integral of g_I conj(g_J) over a Carleson square, both
/// frequency signs included.
fn g_pair_integral(
    profile: &WaveletProfile,
    q: &CarlesonSquare,
    i: &DyadicInterval,
    j: &DyadicInterval,
) -> Complex64 {
    let coeffs = |arc: &DyadicInterval| -> Vec<(u64, Complex64)> {
        let lo = ((1u64 << arc.rank) / 3).max(1);
        let hi = (4u64 << arc.rank) / 3 + 1;
        (lo..=hi)
            .filter_map(|m| {
                let c = g_hat_coefficient(profile, arc, m as i64).unwrap();
                (c != Complex64::new(0.0, 0.0)).then_some((m, c))
            })
            .collect()
    };
    let ci = coeffs(i);
    let cj = coeffs(j);
    let zero = TaylorIndex::zero();
    let mut total = Complex64::new(0.0, 0.0);
    for &(m1, c1) in &ci {
        let i1 = TaylorIndex::from_u64(m1);
        for &(m2, c2) in &cj {
            let i2 = TaylorIndex::from_u64(m2);
            // (+,+): w^m1 conj(w)^m2
            total += c1 * c2.conj() * moment_carleson_square(q, &i1, &i2);
            // (-,-): conj coefficients, conjugated monomials
            total += c1.conj() * c2 * moment_carleson_square(q, &i2, &i1);
            // (+,-): w^(m1+m2)
            let s = i1.add(&i2);
            total += c1 * c2 * moment_carleson_square(q, &s, &zero);
            // (-,+): conj(w)^(m1+m2)
            total += c1.conj() * c2.conj() * moment_carleson_square(q, &zero, &s);
        }
    }
    total
}

/// Off-diagonal partial sums, Littlewood-Paley identity, and Poisson
/// localization checks.
pub fn verify_analysis_lemmas(
    profile: &WaveletProfile,
    max_rank: u32,
    max_rd: u64,
    thresholds: &VerifyThresholds,
) -> Result<Vec<CheckReport>> {
    if max_rank > 6 {
        return Err(Error::domain(format!("analysis suite caps max_rank at 6, got {max_rank}")));
    }
    if max_rd > 8 {
        return Err(Error::domain(format!("analysis suite caps max_rd at 8, got {max_rd}")));
    }
    let mut reports = Vec::new();

    // L3: off-diagonal sums over Carleson squares saturate in rank
    let arcs: Vec<DyadicInterval> = (0..=max_rank).flat_map(DyadicInterval::arcs_of_rank).collect();
    let k_arcs: Vec<DyadicInterval> = (0..=3u32.min(max_rank)).flat_map(DyadicInterval::arcs_of_rank).collect();
    let per_k: Vec<(DyadicInterval, Vec<f64>)> = k_arcs
        .par_iter()
        .map(|k_arc| {
            let q = CarlesonSquare::new(*k_arc);
            // cumulative totals by the deeper rank of the pair
            let mut by_rank = vec![0.0f64; (max_rank + 1) as usize];
            for (ai, i) in arcs.iter().enumerate() {
                for j in &arcs[ai..] {
                    let rd = if i.rank >= j.rank {
                        relative_distance_arc(i, j).unwrap()
                    } else {
                        relative_distance_arc(j, i).unwrap()
                    };
                    if rd > max_rd {
                        continue;
                    }
                    let same = i == j;
                    if same && i.contained_in(k_arc) {
                        continue; // the lemma excludes the diagonal inside D(K)
                    }
                    let v = g_pair_integral(profile, &q, i, j).norm();
                    let slot = i.rank.max(j.rank) as usize;
                    by_rank[slot] += if same { v } else { 2.0 * v };
                }
            }
            let mut cumulative = Vec::with_capacity(by_rank.len());
            let mut acc = 0.0;
            for v in by_rank {
                acc += v;
                cumulative.push(acc);
            }
            (*k_arc, cumulative)
        })
        .collect();
    let mut saturation_max = 0.0f64;
    let mut constant_max = 0.0f64;
    let mut l3_details = Vec::new();
    for (k_arc, cumulative) in &per_k {
        let total = *cumulative.last().unwrap();
        let prev = cumulative[cumulative.len() - 2];
        let increment = (total - prev) / total.max(f64::MIN_POSITIVE);
        saturation_max = saturation_max.max(increment);
        constant_max = constant_max.max(total / k_arc.len());
        if k_arc.rank <= 1 {
            l3_details.push(CheckCase {
                label: format!("K rank {} idx {}: sum/|K|", k_arc.rank, k_arc.index),
                value: total / k_arc.len(),
            });
            l3_details.push(CheckCase {
                label: format!("K rank {} idx {}: last increment", k_arc.rank, k_arc.index),
                value: increment,
            });
        }
    }
    l3_details.push(CheckCase { label: "max constant over K".into(), value: constant_max });
    reports.push(CheckReport::new(
        "off-diagonal-saturation",
        params(&[
            ("max_rank", max_rank.to_string()),
            ("max_rd", max_rd.to_string()),
            ("ramp", profile.ramp.name().into()),
        ]),
        saturation_max,
        thresholds.l3_saturation,
        l3_details,
    ));

    // L4: half-plane pairing equals |I| delta_IJ
    let l4_rank = max_rank.min(5);
    let mut l4_max = 0.0f64;
    let mut l4_details: Vec<CheckCase> = Vec::new();
    let mut cases = Vec::new();
    for rj in 0..=l4_rank {
        for ri in rj..=l4_rank {
            for shift in -(max_rd.min(4) as i64)..=(max_rd.min(4) as i64) {
                for t in 0..(1i64 << (ri - rj)) {
                    cases.push((ri, rj, (shift << (ri - rj)) + t));
                }
            }
        }
    }
    let defects: Vec<(f64, String)> = cases
        .par_iter()
        .map(|&(ri, rj, idx)| {
            let i = DyadicInterval::new(ri, idx);
            let j = DyadicInterval::new(rj, 0);
            let pairing = halfplane_lp_pairing(profile, &i, &j).unwrap_or(f64::NAN);
            let expected = if i == j { i.len() } else { 0.0 };
            let defect = (pairing - expected).abs() / i.len();
            (defect, format!("I rank {ri} idx {idx}, J rank {rj}"))
        })
        .collect();
    for (defect, label) in defects {
        if defect > l4_max {
            l4_max = defect;
            l4_details = vec![CheckCase { label, value: defect }];
        }
    }
    reports.push(CheckReport::new(
        "littlewood-paley-identity",
        params(&[("max_rank", l4_rank.to_string()), ("max_rd", max_rd.min(4).to_string())]),
        l4_max,
        thresholds.l4,
        l4_details,
    ));

    // L5: localization of the Poisson extension, smooth ramp only (the
    // polynomial ramp lacks the super-polynomial decay the bound assumes)
    let smooth = WaveletProfile::new(Ramp::SmoothCinf);
    let unit = DyadicInterval::whole();
    let mut grid_values = Vec::new();
    for iu in 0..=32 {
        let u = iu as f64 * 0.25;
        for iv in 0..16 {
            let v = 0.05 * (4.0f64 / 0.05).powf(iv as f64 / 15.0);
            let f = eval_f_poisson(&smooth, &unit, u + 0.5, v)?;
            let q = (1.0 + u * u) * f.norm() * v.sqrt() * (2.0 * PI * v / 3.0).exp() / (1.0 + v * v);
            grid_values.push(q);
        }
    }
    let mut sorted = grid_values.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    let max = *sorted.last().unwrap();
    let witnessed = max / median.max(f64::MIN_POSITIVE);
    reports.push(CheckReport::new(
        "poisson-localization",
        params(&[("grid", "33 x 16".into()), ("ramp", "smooth-cinf".into())]),
        witnessed,
        thresholds.l5_max_over_median,
        vec![
            CheckCase { label: "max".into(), value: max },
            CheckCase { label: "median".into(), value: median },
        ],
    ));

    Ok(reports)
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthRow {
    pub n: u32,
    pub intensity: f64,
    pub value_spectral: f64,
    pub value_paper: f64,
    pub ratio: f64,
    pub ratio_over_sqrtlog: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
    /// least-squares slope of value_spectral / N against ln N
    pub slope_value_per_n_vs_ln: Option<f64>,
    pub value_band: Option<f64>,
    pub intensity_band: Option<f64>,
    pub ratio_band: Option<f64>,
    /// set when a dimension failed; rows hold the partial table
    pub aborted: Option<String>,
}

fn band(values: impl Iterator<Item = f64>) -> Option<f64> {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut any = false;
    for v in values {
        any = true;
        min = min.min(v);
        max = max.max(v);
    }
    any.then_some(max / min)
}

/// Per-dimension growth experiment.
pub fn growth_experiment(profile: &WaveletProfile, dims: &[u32], max_rank_cap: u32) -> Result<GrowthTable> {
    for &n in dims {
        if !(8..=256).contains(&n) {
            return Err(Error::domain(format!("growth experiment needs dims in [8, 256], got {n}")));
        }
    }
    let mut rows = Vec::new();
    let mut aborted = None;
    for &n in dims {
        let max_rank = (n + 2).min(max_rank_cap);
        match ratio_with_intensity(profile, n, max_rank) {
            Ok((emb, intensity)) => rows.push(GrowthRow {
                n,
                intensity: intensity.value,
                value_spectral: emb.value_spectral,
                value_paper: emb.value_paper,
                ratio: emb.ratio_lower_bound,
                ratio_over_sqrtlog: emb.ratio_lower_bound / (n as f64).ln().sqrt(),
            }),
            Err(e) => {
                aborted = Some(format!("N = {n}: {e}"));
                break;
            }
        }
    }
    let slope = if rows.len() >= 2 {
        let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.value_spectral / r.n as f64).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        Some(num / den)
    } else {
        None
    };
    Ok(GrowthTable {
        slope_value_per_n_vs_ln: slope,
        value_band: band(rows.iter().map(|r| r.value_spectral / (r.n as f64 * (r.n as f64).ln()))),
        intensity_band: band(rows.iter().map(|r| r.intensity)),
        ratio_band: band(rows.iter().map(|r| r.ratio_over_sqrtlog)),
        rows,
        aborted,
    })
}

/// Wrap a growth table into pass/fail reports against the band thresholds.
pub fn growth_reports(table: &GrowthTable, thresholds: &VerifyThresholds) -> Vec<CheckReport> {
    let dims = table.rows.iter().map(|r| r.n.to_string()).collect::<Vec<_>>().join(",");
    let parameters = params(&[("dims", dims)]);
    let mut details: Vec<CheckCase> = table
        .rows
        .iter()
        .map(|r| CheckCase {
            label: format!("N {}: value/(N ln N)", r.n),
            value: r.value_spectral / (r.n as f64 * (r.n as f64).ln()),
        })
        .collect();
    if let Some(slope) = table.slope_value_per_n_vs_ln {
        details.push(CheckCase { label: "LSQ slope of value/N vs ln N".into(), value: slope });
    }
    let mut reports = vec![CheckReport::new(
        "growth-value-band",
        parameters.clone(),
        table.value_band.unwrap_or(f64::NAN),
        thresholds.growth_value_band,
        details,
    )];
    reports.push(CheckReport::new(
        "growth-intensity-band",
        parameters.clone(),
        table.intensity_band.unwrap_or(f64::NAN),
        thresholds.growth_intensity_band,
        table.rows.iter().map(|r| CheckCase { label: format!("N {}", r.n), value: r.intensity }).collect(),
    ));
    reports.push(CheckReport::new(
        "growth-ratio-band",
        parameters,
        table.ratio_band.unwrap_or(f64::NAN),
        thresholds.growth_ratio_band,
        table
            .rows
            .iter()
            .map(|r| CheckCase { label: format!("N {}", r.n), value: r.ratio_over_sqrtlog })
            .collect(),
    ));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::omega_vector;

    fn profile() -> WaveletProfile {
        WaveletProfile::new(Ramp::PolynomialC3)
    }

    #[test]
    fn direction_sum_matches_brute_force() {
        let n = 8;
        let net = unit_vector_net(n, 8, 8, 99);
        for k_arc in [DyadicInterval::whole(), DyadicInterval::arc(1, 1), DyadicInterval::arc(3, 5)] {
            for e in &net {
                let sparse: Vec<(u32, Complex64)> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.norm_sqr() > 0.0)
                    .map(|(l, c)| (l as u32, *c))
                    .collect();
                for j in k_arc.rank.max(1)..=n {
                    let closed = direction_sum_over_generation(&k_arc, j, n, &sparse);
                    // direct sum over the 2^(j-k) subintervals
                    let mut brute = 0.0;
                    let shift = j - k_arc.rank;
                    for t in 0..(1u64 << shift) {
                        let idx = ((k_arc.index as u64) << shift) + t;
                        let omega = omega_vector(&DyadicInterval::arc(j, idx), n).unwrap();
                        let ip: Complex64 = omega
                            .iter()
                            .zip(e.iter())
                            .map(|(w, b)| w * b.conj())
                            .sum();
                        brute += ip.norm_sqr();
                    }
                    assert!(
                        (closed - brute).abs() <= 1e-12 * brute.abs().max(1.0),
                        "K {:?} j {j}: closed {closed} brute {brute}",
                        k_arc
                    );
                }
            }
        }
    }

    #[test]
    fn weighted_total_matches_per_generation_sums() {
        let n = 12;
        let net = unit_vector_net(n, 6, 6, 5);
        for k_arc in [DyadicInterval::whole(), DyadicInterval::arc(2, 3), DyadicInterval::arc(4, 11)] {
            for e in &net {
                let sparse: Vec<(u32, Complex64)> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.norm_sqr() > 0.0)
                    .map(|(l, c)| (l as u32, *c))
                    .collect();
                let fast = direction_weighted_total(&k_arc, n, &sparse);
                let mut slow = 0.0;
                for j in k_arc.rank.max(1)..=n {
                    slow += direction_sum_over_generation(&k_arc, j, n, &sparse)
                        * 2f64.powi(-(j as i32));
                }
                assert!((fast - slow).abs() <= 1e-13 * slow.abs().max(1.0), "{fast} vs {slow}");
            }
        }
    }

    #[test]
    fn omega_norm_check_passes_exactly() {
        let reports =
            verify_construction_lemmas(&profile(), 8, 4, 1, &VerifyThresholds::default()).unwrap();
        let omega = reports.iter().find(|r| r.name == "direction-norm").unwrap();
        assert!(omega.passed());
        assert!(omega.witnessed_constant <= 1.0);
    }

    #[test]
    fn l3_excludes_contained_diagonal() {
        // the filter drops I = J inside D(K) and keeps everything else;
        // spot-check via the containment predicate the filter uses
        let k = DyadicInterval::arc(1, 0);
        let inside = DyadicInterval::arc(2, 1);
        let outside = DyadicInterval::arc(2, 3);
        assert!(inside.contained_in(&k));
        assert!(!outside.contained_in(&k));
    }

    #[test]
    fn growth_rejects_out_of_range_dims() {
        assert!(growth_experiment(&profile(), &[4], 10).is_err());
        assert!(growth_experiment(&profile(), &[300], 10).is_err());
    }

    #[test]
    fn growth_single_row() {
        let t = growth_experiment(&profile(), &[8], 10).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert!(t.slope_value_per_n_vs_ln.is_none());
        assert!(t.aborted.is_none());
        assert!(t.rows[0].value_spectral > 0.0);
        assert!(t.rows[0].intensity > 0.0);
    }

    #[test]
    fn net_is_normalized_and_deterministic() {
        let a = unit_vector_net(16, 64, 64, 42);
        let b = unit_vector_net(16, 64, 64, 42);
        assert_eq!(a.len(), 128);
        for (va, vb) in a.iter().zip(&b) {
            assert_eq!(va, vb);
            let norm: f64 = va.iter().map(|c| c.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        let c = unit_vector_net(16, 64, 64, 43);
        assert_ne!(a[64], c[64]);
    }
}
