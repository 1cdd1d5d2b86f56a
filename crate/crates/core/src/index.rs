//! Exact nonnegative integer Taylor indices.
//!
//! The spectrum of the construction lives on indices of the form 2^(j-1) and
//! 2^j + 2^l with j up to the dimension N, so for N beyond 60 the indices
//! leave the range where f64 (or even u128) arithmetic is exact. Bucketing
//! and support comparisons need exact equality, so indices are kept as a
//! little-endian limb vector and only converted to f64 where a rounded
//! magnitude is acceptable.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TaylorIndex {
    /// Little-endian 64-bit limbs, no trailing zero limbs.
    limbs: Vec<u64>,
}

impl TaylorIndex {
    pub fn zero() -> Self {
        TaylorIndex { limbs: Vec::new() }
    }

    pub fn from_u64(v: u64) -> Self {
        if v == 0 {
            Self::zero()
        } else {
            TaylorIndex { limbs: vec![v] }
        }
    }

    /// 2^e
    pub fn pow2(e: u32) -> Self {
        let limb = (e / 64) as usize;
        let mut limbs = vec![0u64; limb + 1];
        limbs[limb] = 1u64 << (e % 64);
        TaylorIndex { limbs }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.limbs.len().max(other.limbs.len());
        let mut out = Vec::with_capacity(n + 1);
        let mut carry = 0u64;
        for i in 0..n {
            let a = self.limbs.get(i).copied().unwrap_or(0);
            let b = other.limbs.get(i).copied().unwrap_or(0);
            let (s1, c1) = a.overflowing_add(b);
            let (s2, c2) = s1.overflowing_add(carry);
            out.push(s2);
            carry = (c1 as u64) + (c2 as u64);
        }
        if carry > 0 {
            out.push(carry);
        }
        TaylorIndex { limbs: out }.trim()
    }

    /// `self - other`, or None when the result would be negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if self < other {
            return None;
        }
        let mut out = Vec::with_capacity(self.limbs.len());
        let mut borrow = 0u64;
        for i in 0..self.limbs.len() {
            let a = self.limbs[i];
            let b = other.limbs.get(i).copied().unwrap_or(0);
            let (d1, b1) = a.overflowing_sub(b);
            let (d2, b2) = d1.overflowing_sub(borrow);
            out.push(d2);
            borrow = (b1 as u64) + (b2 as u64);
        }
        debug_assert_eq!(borrow, 0);
        Some(TaylorIndex { limbs: out }.trim())
    }

    /// Signed difference as (sign, |self - other|); sign is −1, 0, or 1.
    pub fn signed_sub(&self, other: &Self) -> (i8, Self) {
        match self.cmp(other) {
            Ordering::Equal => (0, Self::zero()),
            Ordering::Greater => (1, self.checked_sub(other).unwrap()),
            Ordering::Less => (-1, other.checked_sub(self).unwrap()),
        }
    }

    /// Number of bits; 0 for zero.
    pub fn bit_len(&self) -> u32 {
        match self.limbs.last() {
            None => 0,
            Some(&top) => (self.limbs.len() as u32 - 1) * 64 + (64 - top.leading_zeros()),
        }
    }

    /// Value modulo 2^j for j <= 63.
    pub fn mod_pow2(&self, j: u32) -> u64 {
        assert!(j <= 63, "mod_pow2 supports j <= 63, got {j}");
        if j == 0 {
            return 0;
        }
        let low = self.limbs.first().copied().unwrap_or(0);
        low & ((1u64 << j) - 1)
    }

    /// Rounded magnitude. Relative error is a few ulps.
    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0f64;
        for &limb in self.limbs.iter().rev() {
            acc = acc * 1.8446744073709552e19 + limb as f64;
        }
        acc
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    fn div_rem_u64(&self, d: u64) -> (Self, u64) {
        let mut out = vec![0u64; self.limbs.len()];
        let mut rem = 0u128;
        for i in (0..self.limbs.len()).rev() {
            let cur = (rem << 64) | self.limbs[i] as u128;
            out[i] = (cur / d as u128) as u64;
            rem = cur % d as u128;
        }
        (TaylorIndex { limbs: out }.trim(), rem as u64)
    }
}

impl Ord for TaylorIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.limbs.len().cmp(&other.limbs.len()) {
            Ordering::Equal => {
                for i in (0..self.limbs.len()).rev() {
                    match self.limbs[i].cmp(&other.limbs[i]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for TaylorIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for TaylorIndex {
    fn from(v: u64) -> Self {
        Self::from_u64(v)
    }
}

impl fmt::Display for TaylorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut digits = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (q, r) = cur.div_rem_u64(10);
            digits.push(char::from(b'0' + r as u8));
            cur = q;
        }
        digits.reverse();
        write!(f, "{}", digits.into_iter().collect::<String>())
    }
}

impl fmt::Debug for TaylorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
