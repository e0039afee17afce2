//! Subsets of a ground set of at most 64 elements as bitmasks, and the
//! ranking of fixed-size subsets.
//!
//! Element `i` (0-based) is bit `i`. Numeric order on masks of equal
//! popcount is colex order, which is why sorted basis lists need no
//! separate comparator.

use serde::{Deserialize, Serialize};

pub type Subset = u64;

pub const MAX_GROUND: usize = 64;

pub fn full(n: usize) -> Subset {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

pub fn contains(s: Subset, e: usize) -> bool {
    s >> e & 1 == 1
}

pub fn elements(s: Subset) -> Vec<usize> {
    iter(s).collect()
}

pub fn iter(mut s: Subset) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            return None;
        }
        let e = s.trailing_zeros() as usize;
        s &= s - 1;
        Some(e)
    })
}

pub fn from_elements(es: &[usize]) -> Subset {
    es.iter().fold(0, |acc, &e| acc | 1 << e)
}

/// 1-based element list to mask; `None` on 0 or out-of-range entries.
pub fn from_one_based(es: &[usize], n: usize) -> Option<Subset> {
    let mut s = 0;
    for &e in es {
        if e == 0 || e > n {
            return None;
        }
        s |= 1 << (e - 1);
    }
    Some(s)
}

pub fn to_one_based(s: Subset) -> Vec<usize> {
    iter(s).map(|e| e + 1).collect()
}

/// Compact display: "1268" when every element is a single digit,
/// otherwise comma separated.
pub fn label(s: Subset) -> String {
    let es = to_one_based(s);
    if es.iter().all(|&e| e < 10) {
        es.iter().map(|e| e.to_string()).collect()
    } else {
        es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// All k-subsets of [n] in colex (= numeric) order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    let limit = full(n);
    let mut cur = if k > n { None } else { Some(full(k)) };
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 {
            None
        } else {
            // Gosper's successor
            let c = s & s.wrapping_neg();
            let r = s.wrapping_add(c);
            let next = (((r ^ s) >> 2) / c) | r;
            if r == 0 || next & !limit != 0 {
                None
            } else {
                Some(next)
            }
        };
        Some(s)
    })
}

/// All subsets of `s`, including the empty set and `s` itself.
pub fn subsets_of(s: Subset) -> impl Iterator<Item = Subset> {
    let mut cur = Some(0u64);
    std::iter::from_fn(move || {
        let x = cur?;
        let next = x.wrapping_sub(s) & s;
        cur = if next == 0 { None } else { Some(next) };
        Some(x)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderTag {
    Colex,
    Lex,
}

/// Bijection between 0..C(n,d) and the d-subsets of [n].
#[derive(Clone, Debug)]
pub struct SubsetEnumeration {
    n: usize,
    d: usize,
    order: OrderTag,
    table: Vec<Vec<u64>>,
}

impl SubsetEnumeration {
    pub fn new(n: usize, d: usize, order: OrderTag) -> Self {
        assert!(n <= MAX_GROUND && d <= n, "subset enumeration needs d <= n <= 64");
        let table = (0..=n).map(|m| (0..=d + 1).map(|k| binomial(m, k)).collect()).collect();
        SubsetEnumeration { n, d, order, table }
    }

    pub fn len(&self) -> usize {
        binomial(self.n, self.d) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn order(&self) -> OrderTag {
        self.order
    }

    fn colex_rank(&self, s: Subset) -> usize {
        iter(s).enumerate().map(|(k, e)| self.table[e][k + 1]).sum::<u64>() as usize
    }

    fn colex_unrank(&self, mut idx: usize) -> Subset {
        let mut s = 0;
        let mut top = self.n;
        for k in (1..=self.d).rev() {
            // largest e with C(e, k) <= idx
            let mut e = k - 1;
            while e + 1 < top && self.table[e + 1][k] as usize <= idx {
                e += 1;
            }
            idx -= self.table[e][k] as usize;
            s |= 1 << e;
            top = e;
        }
        s
    }

    fn mirror(&self, s: Subset) -> Subset {
        iter(s).fold(0, |acc, e| acc | 1 << (self.n - 1 - e))
    }

    pub fn rank(&self, s: Subset) -> usize {
        debug_assert_eq!(size(s), self.d);
        match self.order {
            OrderTag::Colex => self.colex_rank(s),
            // lex order on [n] is reversed colex order on the mirrored ground set
            OrderTag::Lex => self.len() - 1 - self.colex_rank(self.mirror(s)),
        }
    }

    pub fn unrank(&self, idx: usize) -> Subset {
        match self.order {
            OrderTag::Colex => self.colex_unrank(idx),
            OrderTag::Lex => self.mirror(self.colex_unrank(self.len() - 1 - idx)),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        (0..self.len()).map(move |i| self.unrank(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_and_lex_orders() {
        let c: Vec<String> = SubsetEnumeration::new(4, 2, OrderTag::Colex).iter().map(label).collect();
        assert_eq!(c, ["12", "13", "23", "14", "24", "34"]);
        let l: Vec<String> = SubsetEnumeration::new(4, 2, OrderTag::Lex).iter().map(label).collect();
        assert_eq!(l, ["12", "13", "14", "23", "24", "34"]);
        let g: Vec<Subset> = k_subsets(4, 2).collect();
        assert_eq!(g, SubsetEnumeration::new(4, 2, OrderTag::Colex).iter().collect::<Vec<_>>());
    }

    #[test]
    fn rank_unrank_exhaustive() {
        for n in 0..=14 {
            for d in 0..=n {
                for order in [OrderTag::Colex, OrderTag::Lex] {
                    let e = SubsetEnumeration::new(n, d, order);
                    let mut seen = std::collections::HashSet::new();
                    for i in 0..e.len() {
                        let s = e.unrank(i);
                        assert_eq!(size(s), d);
                        assert!(s & !full(n) == 0);
                        assert_eq!(e.rank(s), i);
                        assert!(seen.insert(s));
                    }
                }
            }
        }
    }

    #[test]
    fn subset_helpers() {
        assert_eq!(subsets_of(0b101).collect::<Vec<_>>(), [0, 1, 4, 5]);
        assert_eq!(from_one_based(&[1, 3], 3), Some(0b101));
        assert_eq!(from_one_based(&[0], 3), None);
        assert_eq!(label(from_elements(&[0, 8, 11])), "1,9,12");
        assert_eq!(k_subsets(3, 0).collect::<Vec<_>>(), [0]);
        assert_eq!(k_subsets(64, 64).count(), 1);
        assert_eq!(binomial(12, 3), 220);
    }
}
