//! The ground set Γ and its binary operation, stored as a full
//! multiplication table, together with the classical arithmetic the tester
//! needs: products, left-nested powers, orders, inverses synthesized from
//! powers, and oracle-validity checks on rows.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An element of the ground set, identified by its index into the table.
///
/// Labels exist only for I/O; indices are the canonical identity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MagmaError {
    #[error("element index {idx} out of range for a table of size {n}")]
    InvalidElement { idx: usize, n: usize },
    #[error("exponent 0 is not a valid power; callers treat it as \"no multiplication\"")]
    InvalidExponent,
    #[error("no power of element {0} acts as an identity on it within {1} steps")]
    NoOrder(usize, usize),
    #[error("element {0} has no inverse consistent with the discovered identity")]
    NoInverse(usize),
    #[error("no candidate identity survived validation")]
    NoIdentity,
}

/// A finite magma: the ground set Γ with its full multiplication table.
///
/// `table[i][j]` is the index of `element_i · element_j`. Construction
/// validates that every entry is in range, that labels are pairwise
/// distinct, and that `n ≥ 1`; after that the table is immutable and all
/// operations are pure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MagmaTable {
    n: usize,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl MagmaTable {
    /// Validates and wraps a raw table. The error message names the first
    /// offending field, which the CLI surfaces verbatim.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, String> {
        let n = labels.len();
        if n == 0 {
            return Err("field `n`: table must have at least one element".into());
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(format!("field `labels[{i}]`: duplicate label {a:?}"));
            }
        }
        if table.len() != n {
            return Err(format!(
                "field `table`: expected {n} rows, found {}",
                table.len()
            ));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(format!(
                    "field `table[{i}]`: expected {n} entries, found {}",
                    row.len()
                ));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(format!(
                        "field `table[{i}][{j}]`: entry {v} out of range (n={n})"
                    ));
                }
            }
        }
        Ok(Self { n, labels, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Element) -> &str {
        &self.labels[a.0]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Checked element lookup by index.
    pub fn element(&self, idx: usize) -> Result<Element, MagmaError> {
        if idx < self.n {
            Ok(Element(idx))
        } else {
            Err(MagmaError::InvalidElement { idx, n: self.n })
        }
    }

    pub fn element_by_label(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label).map(Element)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.n).map(Element)
    }

    fn check(&self, a: Element) -> Result<usize, MagmaError> {
        if a.0 < self.n {
            Ok(a.0)
        } else {
            Err(MagmaError::InvalidElement { idx: a.0, n: self.n })
        }
    }

    /// `a · b`.
    pub fn multiply(&self, a: Element, b: Element) -> Result<Element, MagmaError> {
        let i = self.check(a)?;
        let j = self.check(b)?;
        Ok(Element(self.table[i][j]))
    }

    /// The left-nested power `a^k` defined by `a^1 = a`, `a^k = a · a^{k-1}`.
    ///
    /// In a non-associative magma powers are ambiguous, so this one fixed
    /// association is used everywhere. Exponent 0 is rejected; call sites
    /// treat `h^0 · x` as `x` structurally.
    pub fn power(&self, a: Element, k: usize) -> Result<Element, MagmaError> {
        if k == 0 {
            return Err(MagmaError::InvalidExponent);
        }
        self.check(a)?;
        let mut acc = a;
        for _ in 1..k {
            acc = self.multiply(a, acc)?;
        }
        Ok(acc)
    }

    /// The smallest `r ≥ 1` with `a^r · a = a`, i.e. the first power of `a`
    /// acting as an identity on `a`. Iteration is capped at `n`; on a
    /// genuine group the cap is never hit.
    pub fn order(&self, a: Element) -> Result<usize, MagmaError> {
        self.check(a)?;
        let mut pow = a; // a^1
        for r in 1..=self.n {
            if self.multiply(pow, a)? == a {
                return Ok(r);
            }
            pow = self.multiply(a, pow)?;
        }
        Err(MagmaError::NoOrder(a.0, self.n))
    }

    /// The inverse of `a` relative to the discovered identity `e`, realized
    /// as `a^{order(a)-1}` since only the multiplication oracle is given.
    pub fn inverse(&self, a: Element, e: Element) -> Result<Element, MagmaError> {
        if a == e {
            return Ok(e);
        }
        let r = self.order(a)?;
        if r < 2 {
            return Err(MagmaError::NoInverse(a.0));
        }
        let inv = self.power(a, r - 1)?;
        if self.multiply(inv, a)? == e {
            Ok(inv)
        } else {
            Err(MagmaError::NoInverse(a.0))
        }
    }

    /// True iff `b ↦ a·b` is a permutation of Γ, i.e. row `a` is valid as a
    /// unitary `|a⟩|b⟩ ↦ |a⟩|a·b⟩`.
    pub fn row_bijective(&self, a: Element) -> bool {
        let mut seen = vec![false; self.n];
        for &v in &self.table[a.0] {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Picks a random element, proposes `a^{order(a)}` as the identity and
    /// validates it against `k` random probes on both sides.
    pub fn find_identity<R: Rng>(&self, rng: &mut R, k: usize) -> Result<Element, MagmaError> {
        let a = Element(rng.gen_range(0..self.n));
        let r = self.order(a).map_err(|_| MagmaError::NoIdentity)?;
        let e = self.power(a, r)?;
        for _ in 0..k {
            let x = Element(rng.gen_range(0..self.n));
            if self.multiply(e, x)? != x || self.multiply(x, e)? != x {
                return Err(MagmaError::NoIdentity);
            }
        }
        Ok(e)
    }
}

/// `⌈log₂ n⌉` with `ceil_log2(1) = 0`; the spec's trial-count formulas all
/// build on it.
pub fn ceil_log2(n: usize) -> usize {
    assert!(n >= 1);
    (n - 1).checked_ilog2().map_or(0, |b| b as usize + 1)
}
