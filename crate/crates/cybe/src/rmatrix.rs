//! Rational tensor functions with one simple pole along the diagonal, and
//! the exact certifier for the spectral-parameter quadratic identity.
//!
//! A value represents
//! `r(u1, u2) = pole/(u1 - u2) + sum_{p,q} poly[(p,q)]^{ij} e_i u1^p (x) e_j u2^q`.
//!
//! The certifier never divides: the quadratic combination
//! `[r12, r13] + [r12, r23] + [r13, r23]` is multiplied through by
//! `D = (u1 - u2)(u1 - u3)(u2 - u3)`, each term pair picking up exactly the
//! complementary factors of its own denominators, so the result `Q` is a
//! polynomial by construction and `r` solves the identity iff `Q = 0`. An
//! independent numeric oracle substitutes scalar points first and brackets
//! afterwards; `Q` evaluated must equal the direct evaluation times `D`.

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::loop_alg::LoopVector;
use crate::matrix::{Mat, Vector};
use crate::scalar::Scalar;
use crate::tensor::{BidegreeTensor, TensorPoly3, TriPoly};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq)]
pub struct RMatrix {
    algebra: LieAlgebra,
    pole: Mat,
    poly: BTreeMap<(u32, u32), Mat>,
}

impl RMatrix {
    pub fn new(
        algebra: LieAlgebra,
        pole: Mat,
        poly: BTreeMap<(u32, u32), Mat>,
    ) -> Result<Self> {
        let k = algebra.dim();
        if pole.rows() != k || pole.cols() != k {
            return Err(Error::Dimension(format!("pole tensor must be {k}x{k}")));
        }
        let mut pruned = BTreeMap::new();
        for (d, m) in poly {
            if m.rows() != k || m.cols() != k {
                return Err(Error::Dimension(format!(
                    "polynomial coefficient at degree ({}, {}) must be {k}x{k}",
                    d.0, d.1
                )));
            }
            if !m.is_zero() {
                pruned.insert(d, m);
            }
        }
        Ok(RMatrix { algebra, pole, poly: pruned })
    }

    pub fn pole_only(algebra: LieAlgebra, pole: Mat) -> Result<Self> {
        RMatrix::new(algebra, pole, BTreeMap::new())
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn pole(&self) -> &Mat {
        &self.pole
    }

    pub fn poly(&self) -> &BTreeMap<(u32, u32), Mat> {
        &self.poly
    }

    pub fn poly_coeff(&self, p: u32, q: u32) -> Option<&Mat> {
        self.poly.get(&(p, q))
    }

    /// Both parts scaled by `c`.
    pub fn scale(&self, c: &Scalar) -> RMatrix {
        let poly = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.poly.iter().map(|(d, m)| (*d, m.scale(c))).collect()
        };
        RMatrix {
            algebra: self.algebra.clone(),
            pole: self.pole.scale(c),
            poly,
        }
    }

    /// The tensor-slot exchange composed with the argument exchange:
    /// `swap(r)(u1, u2) = sigma(r(u2, u1))`. The pole flips sign under the
    /// argument exchange, so `pole' = -pole^T` and
    /// `poly'[(q, p)] = poly[(p, q)]^T`. An involution.
    pub fn swap(&self) -> RMatrix {
        let pole = -&self.pole.transpose();
        let poly = self
            .poly
            .iter()
            .map(|(&(p, q), m)| ((q, p), m.transpose()))
            .collect();
        RMatrix { algebra: self.algebra.clone(), pole, poly }
    }

    /// True iff `r + swap(r) = 0` identically: the pole tensor is symmetric
    /// and `poly[(p, q)] + poly[(q, p)]^T = 0` for every degree.
    pub fn check_unitarity(&self) -> bool {
        if !self.pole.is_symmetric() {
            return false;
        }
        self.poly.iter().all(|(&(p, q), m)| {
            let partner = self.poly.get(&(q, p));
            match partner {
                Some(n) => (m + &n.transpose()).is_zero(),
                None => false,
            }
        })
    }

    /// The summand list: pole entries (no stored degree) and polynomial
    /// entries, each a scalar multiple of `e_i u1^? (x) e_j u2^?`.
    fn terms(&self) -> Vec<RTerm> {
        let k = self.dim();
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let c = self.pole.at(i, j);
                if !c.is_zero() {
                    out.push(RTerm { i, j, coeff: c.clone(), degree: None });
                }
            }
        }
        for (&(p, q), m) in &self.poly {
            for i in 0..k {
                for j in 0..k {
                    let c = m.at(i, j);
                    if !c.is_zero() {
                        out.push(RTerm { i, j, coeff: c.clone(), degree: Some((p, q)) });
                    }
                }
            }
        }
        out
    }

    /// The cleared numerator `Q` with
    /// `[r12, r13] + [r12, r23] + [r13, r23] = Q / D`,
    /// `D = (u1 - u2)(u1 - u3)(u2 - u3)`. Polynomial by construction: each
    /// term pair contributes its own denominators' complementary factors,
    /// so no division happens anywhere.
    pub fn cybe_numerator(&self) -> TensorPoly3 {
        let k = self.dim();
        let c = self.algebra.structure_constants();
        let terms = self.terms();
        let factors = [
            TriPoly::var_diff(0, 1),
            TriPoly::var_diff(0, 2),
            TriPoly::var_diff(1, 2),
        ];
        let mut q = TensorPoly3::zero(k);
        // Each family: (denominator factor index of a pole on each side,
        // base trideg of a polynomial term on each side, cell assembly).
        for ta in &terms {
            for tb in &terms {
                let cc = &ta.coeff * &tb.coeff;
                // [r12, r13]: bracket in slot 1, cell (m, j_a, j_b).
                emit_family(
                    &mut q,
                    &factors,
                    &cc,
                    ta,
                    tb,
                    (0, 1),
                    |p, qd| (p, qd, 0),
                    |p, qd| (p, 0, qd),
                    |m| &c[ta.i][tb.i][m],
                    |m| (m, ta.j, tb.j),
                    k,
                );
                // [r12, r23]: bracket in slot 2, cell (i_a, m, j_b).
                emit_family(
                    &mut q,
                    &factors,
                    &cc,
                    ta,
                    tb,
                    (0, 2),
                    |p, qd| (p, qd, 0),
                    |p, qd| (0, p, qd),
                    |m| &c[ta.j][tb.i][m],
                    |m| (ta.i, m, tb.j),
                    k,
                );
                // [r13, r23]: bracket in slot 3, cell (i_a, i_b, m).
                emit_family(
                    &mut q,
                    &factors,
                    &cc,
                    ta,
                    tb,
                    (1, 2),
                    |p, qd| (p, 0, qd),
                    |p, qd| (0, p, qd),
                    |m| &c[ta.j][tb.j][m],
                    |m| (ta.i, tb.i, m),
                    k,
                );
            }
        }
        q
    }

    pub fn is_cybe_solution(&self) -> bool {
        self.cybe_numerator().is_zero()
    }

    /// `r` evaluated at scalar arguments, as a matrix.
    fn eval_at(&self, x: &Scalar, y: &Scalar) -> Result<Mat> {
        let diff = x - y;
        let inv = diff.inv().ok_or_else(|| {
            Error::Input("pole evaluation: arguments must be pairwise distinct".into())
        })?;
        let mut m = self.pole.scale(&inv);
        for (&(p, q), block) in &self.poly {
            let factor = &spow(x, p) * &spow(y, q);
            m = &m + &block.scale(&factor);
        }
        Ok(m)
    }

    /// Direct evaluation of the quadratic combination at scalar points:
    /// substitute first, bracket after. Returns the flat `K^3` array with
    /// index `(i*K + j)*K + k`. The exact cross-oracle for
    /// [`cybe_numerator`](Self::cybe_numerator): the result times
    /// `D(u1, u2, u3)` must equal `Q(u1, u2, u3)`.
    pub fn evaluate_cybe_at(&self, u1: &Scalar, u2: &Scalar, u3: &Scalar) -> Result<Vec<Scalar>> {
        if u1 == u2 || u1 == u3 || u2 == u3 {
            return Err(Error::Input(
                "pole evaluation: arguments must be pairwise distinct".into(),
            ));
        }
        let k = self.dim();
        let c = self.algebra.structure_constants();
        let a12 = self.eval_at(u1, u2)?;
        let b13 = self.eval_at(u1, u3)?;
        let c23 = self.eval_at(u2, u3)?;
        let mut out = vec![Scalar::zero(); k * k * k];
        // [A12, B13]: out[m][b][d] += A[a][b] B[e][d] C^m_{ae}
        for a in 0..k {
            for e in 0..k {
                for m in 0..k {
                    let s = &c[a][e][m];
                    if s.is_zero() {
                        continue;
                    }
                    for b in 0..k {
                        let ab = a12.at(a, b);
                        if ab.is_zero() {
                            continue;
                        }
                        for d in 0..k {
                            let v = &(&(ab * b13.at(e, d)) * s);
                            out[(m * k + b) * k + d] += v;
                        }
                    }
                }
            }
        }
        // [A12, C23]: out[a][m][d] += A[a][b] C[e][d] C^m_{be}
        for b in 0..k {
            for e in 0..k {
                for m in 0..k {
                    let s = &c[b][e][m];
                    if s.is_zero() {
                        continue;
                    }
                    for a in 0..k {
                        let ab = a12.at(a, b);
                        if ab.is_zero() {
                            continue;
                        }
                        for d in 0..k {
                            let v = &(&(ab * c23.at(e, d)) * s);
                            out[(a * k + m) * k + d] += v;
                        }
                    }
                }
            }
        }
        // [B13, C23]: out[a][e][m] += B[a][b] C[e][d] C^m_{bd}
        for b in 0..k {
            for d in 0..k {
                for m in 0..k {
                    let s = &c[b][d][m];
                    if s.is_zero() {
                        continue;
                    }
                    for a in 0..k {
                        let ab = b13.at(a, b);
                        if ab.is_zero() {
                            continue;
                        }
                        for e in 0..k {
                            let v = &(&(ab * c23.at(e, d)) * s);
                            out[(a * k + e) * k + m] += v;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// True iff the bracket closure of the span of all slot coefficient
    /// vectors (rows and columns of the pole and of every polynomial
    /// block) is the whole algebra.
    pub fn is_nondegenerate(&self) -> bool {
        let k = self.dim();
        let mut span: Vec<Vector> = Vec::new();
        let mut collect = |m: &Mat| {
            for i in 0..k {
                span.push(m.row(i).to_vec());
                span.push((0..k).map(|r| m.at(r, i).clone()).collect());
            }
        };
        collect(&self.pole);
        for m in self.poly.values() {
            collect(m);
        }
        let closure = self
            .algebra
            .subalgebra_closure(&span)
            .expect("slot vectors have the algebra dimension by construction");
        closure.len() == k
    }

    /// The induced cobracket `d(f)(u, v) = [f(u) (x) 1 + 1 (x) f(v), r(u, v)]`
    /// as an exact bidegree polynomial tensor.
    ///
    /// For each monomial `x u^m` of `f`, the pole contributes
    /// `([x (x) 1, pole] u^m + [1 (x) x, pole] v^m) / (u - v)`; this is a
    /// polynomial exactly when the two commutators cancel
    /// (`[x (x) 1 + 1 (x) x, pole] = 0`), in which case it folds to
    /// `[x (x) 1, pole] (u^m - v^m)/(u - v)` with the divided difference
    /// expanded exactly (including negative `m`). A monomial violating the
    /// cancellation is reported by name.
    pub fn cobracket(&self, f: &LoopVector) -> Result<BidegreeTensor> {
        let k = self.dim();
        if f.dim() != k {
            return Err(Error::Dimension(format!(
                "cobracket argument must have dimension {k}"
            )));
        }
        let c = self.algebra.structure_constants();
        let mut out = BidegreeTensor::zero(k, k);
        let pole_nonzero = !self.pole.is_zero();
        for (m, x) in f.iter() {
            // Polynomial part: per coefficient entry e_i (x) e_j,
            // [x, e_i] (x) e_j at (m+p, q) and e_i (x) [x, e_j] at (p, q+m).
            for (&(p, q), block) in &self.poly {
                for i in 0..k {
                    for j in 0..k {
                        let v = block.at(i, j);
                        if v.is_zero() {
                            continue;
                        }
                        for (a, xa) in x.iter().enumerate() {
                            if xa.is_zero() {
                                continue;
                            }
                            let xv = xa * v;
                            for t in 0..k {
                                let s = &c[a][i][t];
                                if !s.is_zero() {
                                    out.add_cell(
                                        m + i64::from(p),
                                        i64::from(q),
                                        t,
                                        j,
                                        &(&xv * s),
                                    );
                                }
                                let s = &c[a][j][t];
                                if !s.is_zero() {
                                    out.add_cell(
                                        i64::from(p),
                                        i64::from(q) + m,
                                        i,
                                        t,
                                        &(&xv * s),
                                    );
                                }
                            }
                        }
                    }
                }
            }
            if !pole_nonzero {
                continue;
            }
            // Pole part: left commutator and the cancellation test.
            let mut left = Mat::zeros(k, k);
            let mut total = Mat::zeros(k, k);
            for (a, xa) in x.iter().enumerate() {
                if xa.is_zero() {
                    continue;
                }
                for i in 0..k {
                    for j in 0..k {
                        let v = self.pole.at(i, j);
                        if v.is_zero() {
                            continue;
                        }
                        let xv = xa * v;
                        for t in 0..k {
                            let s = &c[a][i][t];
                            if !s.is_zero() {
                                let contrib = &xv * s;
                                *left.at_mut(t, j) += &contrib;
                                *total.at_mut(t, j) += &contrib;
                            }
                            let s = &c[a][j][t];
                            if !s.is_zero() {
                                *total.at_mut(i, t) += &(&xv * s);
                            }
                        }
                    }
                }
            }
            if !total.is_zero() {
                let mut offender = LoopVector::zero(k);
                offender.add_term(m, x);
                return Err(Error::PoleDoesNotCancel(
                    offender.display_with(self.algebra.basis_names()),
                ));
            }
            if left.is_zero() || m == 0 {
                continue;
            }
            // Divided difference (u^m - v^m)/(u - v).
            if m > 0 {
                for l in 0..m {
                    add_matrix_cell(&mut out, l, m - 1 - l, &left, false);
                }
            } else {
                for l in 0..-m {
                    add_matrix_cell(&mut out, m + l, -1 - l, &left, true);
                }
            }
        }
        Ok(out)
    }

    /// Runs the numeric oracle at `samples` seeded random pairwise-distinct
    /// rational triples: at each, `Q` evaluated must equal the direct
    /// evaluation times `D`.
    pub fn numeric_cross_check(&self, samples: u32, seed: u64) -> Result<Vec<NumericSample>> {
        let q = self.cybe_numerator();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for _ in 0..samples {
            let (u1, u2, u3) = loop {
                let a = random_rational(&mut rng);
                let b = random_rational(&mut rng);
                let c = random_rational(&mut rng);
                if a != b && a != c && b != c {
                    break (a, b, c);
                }
            };
            let direct = self.evaluate_cybe_at(&u1, &u2, &u3)?;
            let d = &(&(&u1 - &u2) * &(&u1 - &u3)) * &(&u2 - &u3);
            let cleared = q.evaluate_at(&u1, &u2, &u3);
            let agree = direct
                .iter()
                .zip(&cleared)
                .all(|(lhs, rhs)| &(lhs * &d) == rhs);
            out.push(NumericSample { points: (u1, u2, u3), agree });
        }
        Ok(out)
    }
}

impl std::fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "RMatrix(dim {}, pole {}, {} polynomial block(s))",
            self.dim(),
            if self.pole.is_zero() { "zero" } else { "nonzero" },
            self.poly.len()
        )
    }
}

/// One numeric oracle sample: the evaluation points and whether the two
/// computations of the quadratic combination agreed exactly.
#[derive(Debug, Clone)]
pub struct NumericSample {
    pub points: (Scalar, Scalar, Scalar),
    pub agree: bool,
}

struct RTerm {
    i: usize,
    j: usize,
    coeff: Scalar,
    /// `Some((p, q))` for a polynomial term, `None` for the pole.
    degree: Option<(u32, u32)>,
}

/// Adds one term-pair family contribution: multiplier = the product of the
/// difference factors complementary to the pair's own denominators, shifted
/// by the polynomial base degrees, written into the cells the family's slot
/// layout dictates.
#[allow(clippy::too_many_arguments)]
fn emit_family<'c>(
    q: &mut TensorPoly3,
    factors: &[TriPoly; 3],
    cc: &Scalar,
    ta: &RTerm,
    tb: &RTerm,
    dens: (usize, usize),
    base_a: impl Fn(u32, u32) -> (u32, u32, u32),
    base_b: impl Fn(u32, u32) -> (u32, u32, u32),
    structure: impl Fn(usize) -> &'c Scalar,
    cell: impl Fn(usize) -> (usize, usize, usize),
    k: usize,
) {
    let mut mult = TriPoly::one();
    let (da, db) = (
        ta.degree.is_none().then_some(dens.0),
        tb.degree.is_none().then_some(dens.1),
    );
    for (idx, factor) in factors.iter().enumerate() {
        if Some(idx) != da && Some(idx) != db {
            mult = mult.mul(factor);
        }
    }
    let (a1, a2, a3) = ta.degree.map_or((0, 0, 0), |(p, qd)| base_a(p, qd));
    let (b1, b2, b3) = tb.degree.map_or((0, 0, 0), |(p, qd)| base_b(p, qd));
    for m in 0..k {
        let s = structure(m);
        if s.is_zero() {
            continue;
        }
        let total = &(cc * s);
        let (ci, cj, ck) = cell(m);
        for ((d1, d2, d3), mc) in mult.iter() {
            q.add_cell(
                (d1 + a1 + b1, d2 + a2 + b2, d3 + a3 + b3),
                ci,
                cj,
                ck,
                &(total * mc),
            );
        }
    }
}

fn add_matrix_cell(out: &mut BidegreeTensor, p: i64, q: i64, m: &Mat, negate: bool) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.at(i, j);
            if v.is_zero() {
                continue;
            }
            if negate {
                out.add_cell(p, q, i, j, &-v);
            } else {
                out.add_cell(p, q, i, j, v);
            }
        }
    }
}

fn spow(x: &Scalar, e: u32) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let num = rng.gen_range(-9..=9i64);
    let den = rng.gen_range(1..=5i64);
    Scalar::rational(num, den)
}
