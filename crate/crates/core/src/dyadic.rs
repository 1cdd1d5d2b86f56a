//! Dyadic intervals on the line and dyadic arcs on the circle.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The dyadic interval [k 2^-j, (k+1) 2^-j).
///
/// On the circle (unit-length parametrization) the index k lives in
/// [0, 2^j); verification code on the line also uses negative indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DyadicInterval {
    /// rank = -log2(length), nonnegative here
    pub rank: u32,
    pub index: i64,
}

impl DyadicInterval {
    pub fn new(rank: u32, index: i64) -> Self {
        assert!(rank <= 62, "rank {rank} too deep for exact index arithmetic");
        DyadicInterval { rank, index }
    }

    /// Arc of the circle; index is reduced modulo 2^rank.
    pub fn arc(rank: u32, index: u64) -> Self {
        assert!(rank <= 62);
        DyadicInterval { rank, index: (index % (1u64 << rank)) as i64 }
    }

    /// The whole circle.
    pub fn whole() -> Self {
        DyadicInterval { rank: 0, index: 0 }
    }

    pub fn len(&self) -> f64 {
        2f64.powi(-(self.rank as i32))
    }

    pub fn left(&self) -> f64 {
        self.index as f64 * self.len()
    }

    pub fn right(&self) -> f64 {
        (self.index as f64 + 1.0) * self.len()
    }

    pub fn center(&self) -> f64 {
        (self.index as f64 + 0.5) * self.len()
    }

    /// The two children one rank deeper.
    pub fn children(&self) -> [DyadicInterval; 2] {
        [
            DyadicInterval::new(self.rank + 1, 2 * self.index),
            DyadicInterval::new(self.rank + 1, 2 * self.index + 1),
        ]
    }

    /// All arcs of the circle at the given rank.
    pub fn arcs_of_rank(rank: u32) -> impl Iterator<Item = DyadicInterval> {
        (0..(1u64 << rank)).map(move |k| DyadicInterval::arc(rank, k))
    }

    /// True when `self` is contained in `other` (line semantics).
    pub fn contained_in(&self, other: &DyadicInterval) -> bool {
        if self.rank < other.rank {
            return false;
        }
        (self.index >> (self.rank - other.rank)) == other.index
    }
}

/// Relative distance between I and J: |n| for the unique integer n with
/// I contained in J + n|J|. Requires |I| <= |J|.
pub fn relative_distance(i: &DyadicInterval, j: &DyadicInterval) -> Result<u64> {
    if i.rank < j.rank {
        return Err(Error::precondition(format!(
            "relative distance needs |I| <= |J| (got ranks {} > {})",
            j.rank, i.rank
        )));
    }
    // The rank-j interval containing I has index floor(k_I / 2^(rk I - rk J));
    // arithmetic shift implements the floor for negative indices too.
    let container = i.index >> (i.rank - j.rank);
    Ok(container.abs_diff(j.index))
}

/// Relative distance for arcs of the circle: positions are compared modulo
/// one full turn and the shorter way around is taken.
pub fn relative_distance_arc(i: &DyadicInterval, j: &DyadicInterval) -> Result<u64> {
    if i.rank < j.rank {
        return Err(Error::precondition(format!(
            "relative distance needs |I| <= |J| (got ranks {} > {})",
            j.rank, i.rank
        )));
    }
    let container = i.index >> (i.rank - j.rank);
    let period = 1u64 << j.rank;
    let d = (container - j.index).rem_euclid(period as i64) as u64;
    Ok(d.min(period - d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn geometry() {
        let i = DyadicInterval::new(2, 3);
        assert_eq!(i.len(), 0.25);
        assert_eq!(i.left(), 0.75);
        assert_eq!(i.right(), 1.0);
        assert_eq!(i.center(), 0.875);
        let whole = DyadicInterval::whole();
        assert_eq!(whole.len(), 1.0);
        assert_eq!(whole.center(), 0.5);
    }

    #[test]
    fn containment_gives_zero() {
        let j = DyadicInterval::new(1, 0);
        let i = DyadicInterval::new(3, 2); // [1/4, 3/8) inside [0, 1/2)
        assert!(i.contained_in(&j));
        assert_eq!(relative_distance(&i, &j).unwrap(), 0);
    }

    #[test]
    fn shifted_container_examples() {
        // I = [0, 1/4), J = [1/2, 1): I sits in J - |J|
        let i = DyadicInterval::new(2, 0);
        let j = DyadicInterval::new(1, 1);
        assert_eq!(relative_distance(&i, &j).unwrap(), 1);
        // I = [7/8, 1), J = [0, 1/2): I sits in J + |J|
        let i = DyadicInterval::new(3, 7);
        let j = DyadicInterval::new(1, 0);
        assert_eq!(relative_distance(&i, &j).unwrap(), 1);
    }

    #[test]
    fn rank_mismatch_rejected() {
        let i = DyadicInterval::new(1, 0);
        let j = DyadicInterval::new(2, 0);
        assert!(relative_distance(&i, &j).is_err());
    }

    #[test]
    fn arc_distance_wraps() {
        // [7/8, 1) and [0, 1/8) are adjacent across the seam.
        let i = DyadicInterval::arc(3, 7);
        let j = DyadicInterval::arc(3, 0);
        assert_eq!(relative_distance_arc(&i, &j).unwrap(), 1);
    }

    proptest! {
        /// Brute-force search over shifts agrees with the closed form.
        #[test]
        fn matches_shift_search(jr in 0u32..5, ji in -8i64..8, extra in 0u32..4, sub in 0u64..256) {
            let j = DyadicInterval::new(jr, ji);
            let ir = jr + extra;
            let ii = (ji << extra) + (sub % (1u64 << extra)) as i64 + ((sub / 16) as i64 - 8) * (1i64 << extra);
            let i = DyadicInterval::new(ir, ii);
            let rd = relative_distance(&i, &j).unwrap();
            let mut found = None;
            for n in -64i64..=64 {
                let shifted = DyadicInterval::new(jr, ji + n);
                if i.contained_in(&shifted) {
                    found = Some(n.unsigned_abs());
                    break;
                }
            }
            prop_assert_eq!(rd, found.expect("shift search must find the container"));
        }
    }
}
