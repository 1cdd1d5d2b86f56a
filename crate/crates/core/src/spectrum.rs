//! Sparse Taylor spectra of Hilbert-space-valued analytic functions.

use crate::index::TaylorIndex;
use num_complex::Complex64;

/// One Taylor coefficient: the index n and a sparse complex vector.
#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    pub index: TaylorIndex,
    /// (j, l) origin of the coefficient when it comes from the closed-form
    /// construction; brute-force or synthetic spectra leave this unset.
    pub provenance: Option<(u32, u32)>,
    /// Nonzero coordinates, sorted by coordinate index.
    pub vector: Vec<(u32, Complex64)>,
}

impl SpectrumEntry {
    pub fn norm_sq(&self) -> f64 {
        self.vector.iter().map(|(_, c)| c.norm_sqr()).sum()
    }
}

/// Map from Taylor index to coefficient vector, sorted by index.
#[derive(Debug, Clone)]
pub struct VectorSpectrum {
    dim: u32,
    entries: Vec<SpectrumEntry>,
}

impl VectorSpectrum {
    pub fn new(dim: u32) -> Self {
        VectorSpectrum { dim, entries: Vec::new() }
    }

    /// Build from entries; sorts by index and drops empty vectors so the
    /// stored support is exactly the nonzero support.
    pub fn from_entries(dim: u32, mut entries: Vec<SpectrumEntry>) -> Self {
        entries.retain(|e| !e.vector.is_empty());
        entries.sort_by(|a, b| a.index.cmp(&b.index));
        debug_assert!(entries.windows(2).all(|w| w[0].index < w[1].index), "duplicate Taylor index");
        VectorSpectrum { dim, entries }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn get(&self, index: &TaylorIndex) -> Option<&SpectrumEntry> {
        self.entries
            .binary_search_by(|e| e.index.cmp(index))
            .ok()
            .map(|i| &self.entries[i])
    }

    pub fn max_index(&self) -> Option<&TaylorIndex> {
        self.entries.last().map(|e| &e.index)
    }

    /// Sum of squared coefficient norms; for an analytic function on the
    /// circle this is the squared Hardy-space norm.
    pub fn norm_sq_h2(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sq()).sum()
    }

    /// Entries regrouped per coordinate: coordinate l maps to the list of
    /// (entry position, scalar coefficient at l).
    pub fn coordinate_views(&self) -> Vec<Vec<(usize, Complex64)>> {
        let mut views = vec![Vec::new(); self.dim as usize];
        for (pos, entry) in self.entries.iter().enumerate() {
            for &(coord, c) in &entry.vector {
                views[coord as usize].push((pos, c));
            }
        }
        views
    }
}

/// Inner product of two sparse coefficient vectors, antilinear in `b`.
pub fn sparse_inner(a: &[(u32, Complex64)], b: &[(u32, Complex64)]) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                sum += a[i].1 * b[j].1.conj();
                i += 1;
                j += 1;
            }
        }
    }
    sum
}
