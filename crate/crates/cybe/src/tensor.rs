//! Graded tensor containers: values in `V (x) W` or `g (x) g (x) g` with
//! polynomial (or Laurent) dependence on one spectral variable per slot.
//!
//! All containers prune zero blocks eagerly, so structural equality is
//! semantic equality, supports are canonical, and `is_zero` is `O(1)`.

use crate::matrix::Mat;
use crate::report::{BidegreeCell, TridegreeCell};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// A finitely supported sum `sum_{p,q} M_{pq} u^p v^q` with `M_pq` values
/// in a tensor product of two coordinate spaces (`M.at(i, j)` = coefficient
/// of `e_i (x) e_j`). Degrees may be negative.
#[derive(Clone, PartialEq, Eq)]
pub struct BidegreeTensor {
    left_dim: usize,
    right_dim: usize,
    terms: BTreeMap<(i64, i64), Mat>,
}

impl BidegreeTensor {
    pub fn zero(left_dim: usize, right_dim: usize) -> Self {
        BidegreeTensor { left_dim, right_dim, terms: BTreeMap::new() }
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, p: i64, q: i64) -> Option<&Mat> {
        self.terms.get(&(p, q))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), &Mat)> {
        self.terms.iter().map(|(k, m)| (*k, m))
    }

    pub fn add_cell(&mut self, p: i64, q: i64, i: usize, j: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry((p, q))
            .or_insert_with(|| Mat::zeros(self.left_dim, self.right_dim));
        *slot.at_mut(i, j) += value;
        if slot.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    /// Adds a whole matrix at bidegree `(p, q)`, scaled by `c`.
    pub fn add_matrix(&mut self, p: i64, q: i64, m: &Mat, c: &Scalar) {
        assert!(m.rows() == self.left_dim && m.cols() == self.right_dim, "shape mismatch");
        if c.is_zero() {
            return;
        }
        for i in 0..self.left_dim {
            for j in 0..self.right_dim {
                let v = m.at(i, j);
                if !v.is_zero() {
                    self.add_cell(p, q, i, j, &(v * c));
                }
            }
        }
    }

    pub fn add(&self, other: &BidegreeTensor) -> BidegreeTensor {
        assert!(
            self.left_dim == other.left_dim && self.right_dim == other.right_dim,
            "shape mismatch"
        );
        let mut out = self.clone();
        for ((p, q), m) in other.iter() {
            out.add_matrix(p, q, m, &Scalar::one());
        }
        out
    }

    /// Applies the slot exchange combined with the variable exchange
    /// `u <-> v`: the coefficient of `e_i (x) e_j u^p v^q` moves to
    /// `e_j (x) e_i u^q v^p`. Skew-symmetry under this operation is the
    /// two-variable analogue of antisymmetry of a constant 2-tensor.
    pub fn swap_slots_and_vars(&self) -> BidegreeTensor {
        let mut out = BidegreeTensor::zero(self.right_dim, self.left_dim);
        for ((p, q), m) in self.iter() {
            out.add_matrix(q, p, &m.transpose(), &Scalar::one());
        }
        out
    }

    /// First nonzero cell in canonical order (degree, then row, then
    /// column; 1-based indices in the witness).
    pub fn first_witness(&self) -> Option<BidegreeCell> {
        let ((p, q), m) = self.terms.iter().next()?;
        for i in 0..self.left_dim {
            for j in 0..self.right_dim {
                if !m.at(i, j).is_zero() {
                    return Some(BidegreeCell {
                        p: *p,
                        q: *q,
                        i: i + 1,
                        j: j + 1,
                        value: m.at(i, j).to_string(),
                    });
                }
            }
        }
        unreachable!("stored blocks are nonzero")
    }
}

impl std::fmt::Debug for BidegreeTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BidegreeTensor({}x{}, support {:?})", self.left_dim, self.right_dim, self.support())
    }
}

/// A scalar polynomial in three variables with non-negative exponents,
/// keyed by `(d1, d2, d3)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriPoly {
    terms: BTreeMap<(u32, u32, u32), Scalar>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        let mut p = TriPoly::zero();
        p.add_term(0, 0, 0, &Scalar::one());
        p
    }

    /// The difference of two of the three variables (0-based variable
    /// indices), e.g. `var_diff(0, 1)` = `u1 - u2`.
    pub fn var_diff(a: usize, b: usize) -> Self {
        assert!(a < 3 && b < 3 && a != b);
        let mut exp_a = [0u32; 3];
        exp_a[a] = 1;
        let mut exp_b = [0u32; 3];
        exp_b[b] = 1;
        let mut p = TriPoly::zero();
        p.add_term(exp_a[0], exp_a[1], exp_a[2], &Scalar::one());
        p.add_term(exp_b[0], exp_b[1], exp_b[2], &Scalar::from_int(-1));
        p
    }

    pub fn add_term(&mut self, d1: u32, d2: u32, d3: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((d1, d2, d3)).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(d1, d2, d3));
        }
    }

    pub fn mul(&self, other: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for ((a1, a2, a3), ca) in &self.terms {
            for ((b1, b2, b3), cb) in &other.terms {
                out.add_term(a1 + b1, a2 + b2, a3 + b3, &(ca * cb));
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32, u32), &Scalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn evaluate(&self, u1: &Scalar, u2: &Scalar, u3: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for ((d1, d2, d3), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..*d1 {
                term *= u1;
            }
            for _ in 0..*d2 {
                term *= u2;
            }
            for _ in 0..*d3 {
                term *= u3;
            }
            acc += &term;
        }
        acc
    }
}

/// A `g (x) g (x) g`-valued polynomial in three variables: finitely many
/// tri-degrees, each carrying a dense `K^3` coefficient block (flattened
/// row-major: index `(i*K + j)*K + k`). Zero blocks are pruned eagerly.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorPoly3 {
    dim: usize,
    blocks: BTreeMap<(u32, u32, u32), Vec<Scalar>>,
}

impl TensorPoly3 {
    pub fn zero(dim: usize) -> Self {
        TensorPoly3 { dim, blocks: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn support(&self) -> Vec<(u32, u32, u32)> {
        self.blocks.keys().copied().collect()
    }

    pub fn coeff(&self, d: (u32, u32, u32), i: usize, j: usize, k: usize) -> Scalar {
        match self.blocks.get(&d) {
            Some(b) => b[(i * self.dim + j) * self.dim + k].clone(),
            None => Scalar::zero(),
        }
    }

    pub fn add_cell(&mut self, d: (u32, u32, u32), i: usize, j: usize, k: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        let n = self.dim;
        let block = self
            .blocks
            .entry(d)
            .or_insert_with(|| vec![Scalar::zero(); n * n * n]);
        block[(i * n + j) * n + k] += value;
        if block.iter().all(Scalar::is_zero) {
            self.blocks.remove(&d);
        }
    }

    pub fn scale(&self, c: &Scalar) -> TensorPoly3 {
        let mut out = TensorPoly3::zero(self.dim);
        if c.is_zero() {
            return out;
        }
        for (d, block) in &self.blocks {
            let scaled: Vec<Scalar> = block.iter().map(|x| x * c).collect();
            out.blocks.insert(*d, scaled);
        }
        out
    }

    /// First nonzero cell in canonical order (tri-degree, then slot).
    pub fn first_witness(&self) -> Option<TridegreeCell> {
        let (d, block) = self.blocks.iter().next()?;
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = &block[(i * n + j) * n + k];
                    if !v.is_zero() {
                        return Some(TridegreeCell {
                            p: d.0,
                            q: d.1,
                            s: d.2,
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            value: v.to_string(),
                        });
                    }
                }
            }
        }
        unreachable!("stored blocks are nonzero")
    }

    /// Evaluates the polynomial at scalar arguments, returning the dense
    /// `K^3` block.
    pub fn evaluate_at(&self, u1: &Scalar, u2: &Scalar, u3: &Scalar) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n * n * n];
        for ((d1, d2, d3), block) in &self.blocks {
            let mut m = Scalar::one();
            for _ in 0..*d1 {
                m *= u1;
            }
            for _ in 0..*d2 {
                m *= u2;
            }
            for _ in 0..*d3 {
                m *= u3;
            }
            for (o, b) in out.iter_mut().zip(block) {
                if !b.is_zero() {
                    *o += &(b * &m);
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for TensorPoly3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TensorPoly3(dim {}, support {:?})", self.dim, self.support())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn bidegree_tensor_prunes_cancelled_blocks() {
        let mut t = BidegreeTensor::zero(2, 2);
        t.add_cell(1, -1, 0, 1, &s(3));
        assert!(!t.is_zero());
        t.add_cell(1, -1, 0, 1, &s(-3));
        assert!(t.is_zero());
        assert_eq!(t.support(), Vec::<(i64, i64)>::new());
    }

    #[test]
    fn swap_slots_and_vars_is_an_involution() {
        let mut t = BidegreeTensor::zero(2, 2);
        t.add_cell(2, 0, 0, 1, &s(5));
        t.add_cell(-1, 3, 1, 1, &s(-2));
        let sw = t.swap_slots_and_vars();
        assert_eq!(sw.coeff(0, 2).unwrap().at(1, 0), &s(5));
        assert_eq!(sw.swap_slots_and_vars(), t);
    }

    #[test]
    fn tri_poly_products_expand_exactly() {
        // (u1 - u2)(u2 - u3) = u1 u2 - u1 u3 - u2^2 + u2 u3.
        let p = TriPoly::var_diff(0, 1).mul(&TriPoly::var_diff(1, 2));
        let terms: Vec<_> = p.iter().map(|(d, c)| (d, c.clone())).collect();
        assert_eq!(
            terms,
            vec![
                ((0, 1, 1), s(1)),
                ((0, 2, 0), s(-1)),
                ((1, 0, 1), s(-1)),
                ((1, 1, 0), s(1)),
            ]
        );
        let v = p.evaluate(&s(5), &s(3), &s(2));
        assert_eq!(v, s(2)); // (5-3)(3-2) = 2
    }

    #[test]
    fn tensor_poly3_cells_and_evaluation() {
        let mut q = TensorPoly3::zero(2);
        q.add_cell((1, 0, 2), 0, 1, 1, &s(7));
        q.add_cell((1, 0, 2), 0, 1, 1, &s(-7));
        assert!(q.is_zero());
        q.add_cell((0, 1, 0), 1, 0, 0, &Scalar::rational(1, 2));
        let w = q.first_witness().unwrap();
        assert_eq!((w.p, w.q, w.s), (0, 1, 0));
        assert_eq!((w.i, w.j, w.k), (2, 1, 1));
        assert_eq!(w.value, "1/2");
        let block = q.evaluate_at(&s(9), &s(4), &s(1));
        assert_eq!(block[(1 * 2 + 0) * 2 + 0], s(2));
    }
}
