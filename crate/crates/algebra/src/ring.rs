use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};

/// Monomial orders on exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    /// Graded reverse lex on variables `0..split`, then on the rest; any
    /// monomial involving the first block beats every monomial free of it.
    Block { split: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Block { split } => {
                grevlex(&a[..split], &b[..split]).then_with(|| grevlex(&a[split..], &b[split..]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

/// A polynomial ring over the rationals with named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, order: MonomialOrder) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for v in &vars {
            if !valid_name(v) {
                return Err(AlgebraError::Precondition(format!("invalid variable name {v:?}")));
            }
            if !seen.insert(v.as_str()) {
                return Err(AlgebraError::Precondition(format!("duplicate variable {v}")));
            }
        }
        if let MonomialOrder::Block { split } = order {
            if split > vars.len() {
                return Err(AlgebraError::Precondition("block split beyond variable count".into()));
            }
        }
        Ok(Arc::new(PolyRing { vars, order }))
    }

    /// Graded reverse lex ring; panics on invalid names.
    pub fn grevlex<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Arc<Self> {
        Self::new(vars, MonomialOrder::GrevLex).expect("valid variable names")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::new(self.vars.clone(), order)
    }

    /// A name not used by any variable of the ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut k = 0usize;
        loop {
            let cand = format!("{stem}{k}");
            if self.var_index(&cand).is_none() {
                return cand;
            }
            k += 1;
        }
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}]", self.vars.join(", "))
    }
}

pub(crate) fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::GrevLex;
        // x^2 > x*y > y^2 > x > y > 1 in QQ[x, y]
        let seq = [[2, 0], [1, 1], [0, 2], [1, 0], [0, 1], [0, 0]];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        // x*z^2 < y^3: equal degree, smaller power of the last variable wins
        assert_eq!(o.cmp(&[1, 0, 2], &[0, 3, 0]), Ordering::Less);
    }

    #[test]
    fn block_eliminates_first_block() {
        let o = MonomialOrder::Block { split: 1 };
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
    }

    #[test]
    fn rejects_bad_names() {
        assert!(PolyRing::new(["x", "x"], MonomialOrder::GrevLex).is_err());
        assert!(PolyRing::new(["1x"], MonomialOrder::GrevLex).is_err());
    }
}
