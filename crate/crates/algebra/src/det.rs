//! Determinants over any commutative ring by Laplace expansion with
//! memoization over column subsets (O(2^k · k) ring operations for k×k).

use std::collections::HashMap;

use crate::field::FieldElement;
use crate::poly::Polynomial;

pub trait RingElement: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl RingElement for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero_like(self)
    }
    fn one_like(&self) -> Self {
        FieldElement::one_like(self)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        FieldElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        FieldElement::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FieldElement::mul(self, other)
    }
}

impl RingElement for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.ring())
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Determinant of the square submatrix on `rows` × `cols`, columns taken in
/// the given order. `rows` must be nonempty and as long as `cols`.
pub fn minor<T: RingElement>(m: &[Vec<T>], rows: &[usize], cols: &[usize]) -> T {
    assert_eq!(rows.len(), cols.len(), "minor must be square");
    assert!(!rows.is_empty(), "empty minor has no ring context");
    let k = rows.len();
    // dp[mask]: signed sum over assignments of the first popcount(mask) rows to the columns in mask.
    let mut dp: HashMap<u64, T> = HashMap::new();
    dp.insert(0, m[rows[0]][cols[0]].one_like());
    for &row in rows {
        let mut next: HashMap<u64, T> = HashMap::new();
        for (mask, val) in dp.iter() {
            if val.is_zero() {
                continue;
            }
            for c in 0..k {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let entry = &m[row][cols[c]];
                if entry.is_zero() {
                    continue;
                }
                let inversions = (mask >> (c + 1)).count_ones();
                let term = val.mul(entry);
                let slot = next.entry(mask | (1 << c)).or_insert_with(|| term.zero_like());
                *slot = if inversions % 2 == 0 { slot.add(&term) } else { slot.sub(&term) };
            }
        }
        dp = next;
        if dp.is_empty() {
            return m[rows[0]][cols[0]].zero_like();
        }
    }
    dp.remove(&((1u64 << k) - 1)).unwrap_or_else(|| m[rows[0]][cols[0]].zero_like())
}

pub fn determinant<T: RingElement>(m: &[Vec<T>]) -> T {
    let idx: Vec<usize> = (0..m.len()).collect();
    minor(m, &idx, &idx)
}
