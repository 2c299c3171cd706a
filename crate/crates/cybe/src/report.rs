//! Pass/fail verdicts with explicit witnesses.
//!
//! Every checker in this crate reports *where* an identity fails, not just
//! that it does. A [`Verdict`] records the total violation count and keeps a
//! bounded list of witness tuples; all indices in witnesses are 1-based so
//! they line up with the JSON file formats and with basis numbering in
//! reports.

use serde::Serialize;
use std::fmt;

/// Upper bound on stored witnesses per verdict. The `violations` count is
/// always exact even when the list is truncated.
pub const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict<W> {
    pub pass: bool,
    pub violations: usize,
    pub witnesses: Vec<W>,
}

impl<W> Verdict<W> {
    pub fn passing() -> Self {
        Verdict { pass: true, violations: 0, witnesses: Vec::new() }
    }

    /// Records one violation, keeping at most [`MAX_WITNESSES`] witnesses.
    pub fn record(&mut self, witness: W) {
        self.pass = false;
        self.violations += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    pub fn map<V>(self, f: impl Fn(W) -> V) -> Verdict<V> {
        Verdict {
            pass: self.pass,
            violations: self.violations,
            witnesses: self.witnesses.into_iter().map(f).collect(),
        }
    }
}

impl<W: fmt::Display> fmt::Display for Verdict<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "ok")
        } else {
            write!(f, "FAIL ({} violation(s)", self.violations)?;
            if let Some(w) = self.witnesses.first() {
                write!(f, "; first at {w}")?;
            }
            write!(f, ")")
        }
    }
}

/// A pair of basis indices (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexPair {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// A triple of basis indices (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexTriple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl fmt::Display for IndexTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.i, self.j, self.k)
    }
}

/// A basis triple plus the coordinate in which an identity fails (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexQuad {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coord: usize,
}

impl fmt::Display for IndexQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}; coordinate {})", self.i, self.j, self.k, self.coord)
    }
}

/// A pair of loop monomials `e_i u^m`, `e_j u^n` at which an operator
/// identity fails (basis indices 1-based, degrees signed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialPair {
    pub f_basis: usize,
    pub f_degree: i64,
    pub g_basis: usize,
    pub g_degree: i64,
}

impl fmt::Display for MonomialPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(basis {} at u^{}, basis {} at u^{})",
            self.f_basis, self.f_degree, self.g_basis, self.g_degree
        )
    }
}

/// A nonzero cell of a two-variable tensor polynomial: bidegree `(p, q)`,
/// tensor slot `(i, j)` (1-based) and the exact value found there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BidegreeCell {
    pub p: i64,
    pub q: i64,
    pub i: usize,
    pub j: usize,
    pub value: String,
}

impl fmt::Display for BidegreeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree (u1^{}, u2^{}), slot ({}, {}), value {}",
            self.p, self.q, self.i, self.j, self.value
        )
    }
}

/// A nonzero cell of a three-variable tensor polynomial (1-based slots).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TridegreeCell {
    pub p: u32,
    pub q: u32,
    pub s: u32,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

impl fmt::Display for TridegreeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree (u1^{}, u2^{}, u3^{}), slot ({}, {}, {}), value {}",
            self.p, self.q, self.s, self.i, self.j, self.k, self.value
        )
    }
}

/// A triple of rendered loop monomials at which a pairing condition fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialTriple {
    pub f: String,
    pub g: String,
    pub h: String,
    pub value: String,
}

impl fmt::Display for MonomialTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}) with value {}", self.f, self.g, self.h, self.value)
    }
}

/// Structural validation of a bracket table: antisymmetry of the structure
/// constants and the Jacobi identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub antisymmetry: Verdict<IndexTriple>,
    pub jacobi: Verdict<IndexQuad>,
}

impl AlgebraReport {
    pub fn pass(&self) -> bool {
        self.antisymmetry.pass && self.jacobi.pass
    }
}

impl fmt::Display for AlgebraReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "antisymmetry: {}", self.antisymmetry)?;
        write!(f, "jacobi: {}", self.jacobi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_counts_all_violations_but_caps_witnesses() {
        let mut v: Verdict<IndexPair> = Verdict::passing();
        assert!(v.pass);
        for i in 0..MAX_WITNESSES + 5 {
            v.record(IndexPair { i, j: i });
        }
        assert!(!v.pass);
        assert_eq!(v.violations, MAX_WITNESSES + 5);
        assert_eq!(v.witnesses.len(), MAX_WITNESSES);
    }

    #[test]
    fn display_shows_first_witness() {
        let mut v: Verdict<IndexPair> = Verdict::passing();
        assert_eq!(v.to_string(), "ok");
        v.record(IndexPair { i: 2, j: 3 });
        assert_eq!(v.to_string(), "FAIL (1 violation(s); first at (2, 3))");
    }
}
