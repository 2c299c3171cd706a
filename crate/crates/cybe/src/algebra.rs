//! Finite-dimensional Lie algebras over Q(i) given by exact structure
//! constants, together with the bilinear-form, representation and
//! Lie-bialgebra machinery built on them.
//!
//! Conventions used throughout:
//! - `c[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]` (0-based in
//!   the Rust API; the JSON layer converts from 1-based file indices).
//! - Bilinear forms and elements of `g (x) g` are both plain matrices:
//!   `b.at(i, j) = B(e_i, e_j)` and `t.at(i, j)` = coefficient of
//!   `e_i (x) e_j`. Functions are named for the role the matrix plays.
//! - Dual bases are never orthonormalized: everything that classically uses
//!   an orthonormal basis is phrased through the inverse form matrix, so all
//!   arithmetic stays inside the rationals.

use crate::error::{Error, Result};
use crate::matrix::{in_row_space, row_space_basis, zero_vector, Mat, Vector};
use crate::report::{AlgebraReport, IndexPair, IndexQuad, IndexTriple, Verdict};
use crate::scalar::Scalar;

/// A Lie algebra with a fixed named basis and exact structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    /// `c[i][j][k]` = coefficient of `e_k` in `[e_i, e_j]`.
    c: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebra {
    /// Builds an algebra from a raw structure-constant table. Shape is
    /// enforced here; antisymmetry and Jacobi are *not* (use [`validate`]),
    /// so deliberately broken tables can be constructed for testing.
    ///
    /// [`validate`]: LieAlgebra::validate
    pub fn from_structure_constants(
        names: Vec<String>,
        c: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::Input("algebra dimension must be positive".into()));
        }
        if c.len() != dim
            || c.iter().any(|p| p.len() != dim || p.iter().any(|r| r.len() != dim))
        {
            return Err(Error::Dimension(format!(
                "structure constant table is not {dim}x{dim}x{dim}"
            )));
        }
        Ok(LieAlgebra { names, c })
    }

    /// Builds an algebra from sparse bracket entries `(i, j, k, coeff)`
    /// meaning `[e_i, e_j] = ... + coeff * e_k` (0-based, `i < j`); the
    /// mirrored orientation is filled in automatically.
    pub fn from_brackets(
        names: &[&str],
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self> {
        let dim = names.len();
        let mut c = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for &(i, j, k, ref coeff) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Input(format!(
                    "bracket entry ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            if i >= j {
                return Err(Error::Input(format!(
                    "bracket entries must have i < j, got ({i}, {j})"
                )));
            }
            c[i][j][k] = &c[i][j][k] + coeff;
            c[j][i][k] = &c[j][i][k] - coeff;
        }
        LieAlgebra::from_structure_constants(names.iter().map(|s| s.to_string()).collect(), c)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `C^k_{ij}`, the coefficient of `e_k` in `[e_i, e_j]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[i][j][k]
    }

    pub fn structure_constants(&self) -> &Vec<Vec<Vec<Scalar>>> {
        &self.c
    }

    /// Checks antisymmetry of the bracket table and the Jacobi identity.
    /// Antisymmetry witnesses are `(i, j, k)` with a nonzero sum
    /// `C^k_{ij} + C^k_{ji}`; Jacobi witnesses carry the basis triple and
    /// the coordinate in which the cyclic sum fails.
    pub fn validate(&self) -> AlgebraReport {
        let n = self.dim();
        let mut antisymmetry = Verdict::passing();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if !(&self.c[i][j][k] + &self.c[j][i][k]).is_zero() {
                        antisymmetry.record(IndexTriple { i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        let mut jacobi = Verdict::passing();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    for k in 0..n {
                        let mut sum = Scalar::zero();
                        for m in 0..n {
                            sum += &(&self.c[j][l][m] * &self.c[i][m][k]);
                            sum += &(&self.c[i][j][m] * &self.c[l][m][k]);
                            sum += &(&self.c[l][i][m] * &self.c[j][m][k]);
                        }
                        if !sum.is_zero() {
                            jacobi.record(IndexQuad {
                                i: i + 1,
                                j: j + 1,
                                k: l + 1,
                                coord: k + 1,
                            });
                        }
                    }
                }
            }
        }
        AlgebraReport { antisymmetry, jacobi }
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::Dimension(format!(
                "bracket arguments must have length {n}"
            )));
        }
        let mut out = zero_vector(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..n {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &(&xy * &self.c[i][j][k]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(e_i)` acting on coordinate vectors.
    pub fn ad(&self, i: usize) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                *m.at_mut(k, j) = self.c[i][j][k].clone();
            }
        }
        m
    }

    /// The Killing form `B(e_i, e_j) = tr(ad(e_i) ad(e_j))`.
    pub fn killing_form(&self) -> Mat {
        let n = self.dim();
        let mut b = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut tr = Scalar::zero();
                for m in 0..n {
                    for l in 0..n {
                        tr += &(&self.c[i][m][l] * &self.c[j][l][m]);
                    }
                }
                *b.at_mut(i, j) = tr;
            }
        }
        b
    }

    /// Checks the invariance identity `B([e_i, e_j], e_k) = B(e_i, [e_j, e_k])`
    /// on all basis triples.
    pub fn is_invariant_form(&self, b: &Mat) -> Result<Verdict<IndexTriple>> {
        let n = self.dim();
        if b.rows() != n || b.cols() != n {
            return Err(Error::Dimension(format!("form must be {n}x{n}")));
        }
        let mut verdict = Verdict::passing();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut lhs = Scalar::zero();
                    let mut rhs = Scalar::zero();
                    for m in 0..n {
                        lhs += &(&self.c[i][j][m] * b.at(m, k));
                        rhs += &(&self.c[j][k][m] * b.at(i, m));
                    }
                    if lhs != rhs {
                        verdict.record(IndexTriple { i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        Ok(verdict)
    }

    /// The quadratic tensor dual to a symmetric invariant nondegenerate
    /// form: the matrix inverse of `b`, read as an element of `g (x) g`.
    /// This is the exact-arithmetic replacement for "sum of squares of an
    /// orthonormal basis".
    pub fn casimir_of_form(&self, b: &Mat) -> Result<Mat> {
        if !b.is_symmetric() {
            return Err(Error::Precondition("form is not symmetric".into()));
        }
        if !self.is_invariant_form(b)?.pass {
            return Err(Error::Precondition("form is not invariant".into()));
        }
        b.inverse().ok_or(Error::DegenerateForm)
    }

    /// Checks that `t` (an element of `g (x) g` as a matrix) commutes with
    /// the diagonal adjoint action: for every basis index `k` and every
    /// cell `(i, j)`, `sum_m (C^i_{km} t^{mj} + C^j_{km} t^{im}) = 0`.
    /// Witnesses are `(k, i, j)`.
    pub fn is_ad_invariant_tensor(&self, t: &Mat) -> Result<Verdict<IndexTriple>> {
        let n = self.dim();
        if t.rows() != n || t.cols() != n {
            return Err(Error::Dimension(format!("tensor must be {n}x{n}")));
        }
        let mut verdict = Verdict::passing();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut sum = Scalar::zero();
                    for m in 0..n {
                        sum += &(&self.c[k][m][i] * t.at(m, j));
                        sum += &(&self.c[k][m][j] * t.at(i, m));
                    }
                    if !sum.is_zero() {
                        verdict.record(IndexTriple { i: k + 1, j: i + 1, k: j + 1 });
                    }
                }
            }
        }
        Ok(verdict)
    }

    pub fn adjoint_rep(&self) -> Representation {
        Representation {
            module_dim: self.dim(),
            mats: (0..self.dim()).map(|i| self.ad(i)).collect(),
        }
    }

    /// The coadjoint representation on `g*` in the dual basis:
    /// `ad*(e_i) e*_m = -sum_j C^m_{ij} e*_j`, i.e. each matrix is the
    /// negated transpose of the corresponding adjoint matrix.
    pub fn coadjoint_rep(&self) -> Representation {
        self.adjoint_rep().dual()
    }

    /// Semidirect sum `g ⋉ V` along a representation: brackets
    /// `[(x, v), (y, w)] = ([x, y], rho(x)w - rho(y)v)`. The module part is
    /// abelian; its basis vectors are named `v1..vN` after the algebra's.
    pub fn semidirect_sum(&self, rho: &Representation) -> Result<LieAlgebra> {
        let rep_check = rho.validate(self)?;
        if !rep_check.pass {
            return Err(Error::Precondition(format!(
                "matrices do not form a representation: {rep_check}"
            )));
        }
        let k = self.dim();
        let n = rho.module_dim();
        let total = k + n;
        let mut names = self.names.clone();
        names.extend((1..=n).map(|a| format!("v{a}")));
        let mut c = vec![vec![vec![Scalar::zero(); total]; total]; total];
        for i in 0..k {
            for j in 0..k {
                for m in 0..k {
                    c[i][j][m] = self.c[i][j][m].clone();
                }
            }
            for b in 0..n {
                for a in 0..n {
                    let coeff = rho.matrix(i).at(a, b).clone();
                    c[i][k + b][k + a] = coeff.clone();
                    c[k + b][i][k + a] = -&coeff;
                }
            }
        }
        LieAlgebra::from_structure_constants(names, c)
    }

    /// Checks the 1-cocycle identity for a cobracket `gamma`:
    /// `delta([x, y]) = x . delta(y) - y . delta(x)` with the diagonal
    /// adjoint action, on all basis pairs. Witnesses are the failing pair.
    pub fn check_cocycle(&self, gamma: &Cobracket) -> Result<Verdict<IndexPair>> {
        let n = self.dim();
        if gamma.dim() != n {
            return Err(Error::Dimension(format!("cobracket must have dimension {n}")));
        }
        let mut verdict = Verdict::passing();
        for i in 0..n {
            'pair: for j in i + 1..n {
                for a in 0..n {
                    for b in 0..n {
                        let mut sum = Scalar::zero();
                        // delta([e_i, e_j]) coefficient at e_a (x) e_b.
                        for k in 0..n {
                            sum += &(&self.c[i][j][k] * gamma.coeff(k, a, b));
                        }
                        // minus e_i acting on delta(e_j), plus e_j acting
                        // on delta(e_i).
                        for m in 0..n {
                            sum -= &(gamma.coeff(j, m, b) * &self.c[i][m][a]);
                            sum -= &(gamma.coeff(j, a, m) * &self.c[i][m][b]);
                            sum += &(gamma.coeff(i, m, b) * &self.c[j][m][a]);
                            sum += &(gamma.coeff(i, a, m) * &self.c[j][m][b]);
                        }
                        if !sum.is_zero() {
                            verdict.record(IndexPair { i: i + 1, j: j + 1 });
                            continue 'pair;
                        }
                    }
                }
            }
        }
        Ok(verdict)
    }

    /// The classical double of the Lie bialgebra `(g, gamma)`: the vector
    /// space `g (+) g*` with brackets
    ///
    /// - `[e_i, e_j]` as in `g`,
    /// - `[e*_i, e*_j]` from the dual algebra defined by `gamma`,
    /// - `[e_i, e*_j] = -sum_m C^j_{im} e*_m + sum_l Gamma^i_{jl} e_l`,
    ///
    /// together with the canonical invariant pairing (the block matrix with
    /// identity off-diagonal blocks). Requires `gamma` to be a Lie
    /// bialgebra structure: the dual constants must satisfy Jacobi and the
    /// cocycle identity must hold. The assembled double is re-validated.
    pub fn classical_double(&self, gamma: &Cobracket) -> Result<(LieAlgebra, Mat)> {
        let n = self.dim();
        if gamma.dim() != n {
            return Err(Error::Dimension(format!("cobracket must have dimension {n}")));
        }
        let own = self.validate();
        if !own.pass() {
            return Err(Error::Precondition(format!("base bracket table invalid: {own}")));
        }
        let dual = gamma.dual_algebra(&self.names)?;
        let dual_check = dual.validate();
        if !dual_check.pass() {
            return Err(Error::Precondition(format!(
                "dual structure constants do not define a Lie algebra: {dual_check}"
            )));
        }
        let cocycle = self.check_cocycle(gamma)?;
        if !cocycle.pass {
            return Err(Error::Precondition(format!(
                "cobracket is not a cocycle: {cocycle}"
            )));
        }

        let total = 2 * n;
        let mut names = self.names.clone();
        names.extend(self.names.iter().map(|s| format!("{s}*")));
        let mut c = vec![vec![vec![Scalar::zero(); total]; total]; total];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = self.c[i][j][k].clone();
                    c[n + i][n + j][n + k] = gamma.coeff(k, i, j).clone();
                }
                // [e_i, e*_j] and its mirror.
                for m in 0..n {
                    let mixed_dual = -&self.c[i][m][j];
                    c[i][n + j][n + m] = &c[i][n + j][n + m] + &mixed_dual;
                    c[n + j][i][n + m] = &c[n + j][i][n + m] - &mixed_dual;
                }
                for l in 0..n {
                    let mixed_base = gamma.coeff(i, j, l).clone();
                    c[i][n + j][l] = &c[i][n + j][l] + &mixed_base;
                    c[n + j][i][l] = &c[n + j][i][l] - &mixed_base;
                }
            }
        }
        let double = LieAlgebra::from_structure_constants(names, c)?;
        let assembled = double.validate();
        if !assembled.pass() {
            return Err(Error::Precondition(format!(
                "assembled double fails validation: {assembled}"
            )));
        }
        let mut pairing = Mat::zeros(total, total);
        for i in 0..n {
            *pairing.at_mut(i, n + i) = Scalar::one();
            *pairing.at_mut(n + i, i) = Scalar::one();
        }
        Ok((double, pairing))
    }

    /// Smallest subalgebra containing the span of the given vectors,
    /// returned as a canonical (reduced row echelon) basis.
    pub fn subalgebra_closure(&self, span: &[Vector]) -> Result<Vec<Vector>> {
        let n = self.dim();
        if span.iter().any(|v| v.len() != n) {
            return Err(Error::Dimension(format!("spanning vectors must have length {n}")));
        }
        let mut basis = row_space_basis(span.to_vec());
        loop {
            let mut new_vectors = Vec::new();
            for a in 0..basis.len() {
                for b in a + 1..basis.len() {
                    let w = self.bracket(&basis[a], &basis[b])?;
                    if !in_row_space(&basis, &w) {
                        new_vectors.push(w);
                    }
                }
            }
            if new_vectors.is_empty() {
                return Ok(basis);
            }
            let mut all = basis;
            all.extend(new_vectors);
            basis = row_space_basis(all);
        }
    }
}

/// Reads a matrix `t` in `g (x) g` as the linear map `g* -> g`,
/// `a |-> sum_ij t^{ij} a_i e_j` (dual-basis coordinates in, basis
/// coordinates out). The map matrix is the transpose of `t`, so `t` is a
/// symmetric tensor exactly when the map matrix is symmetric.
pub fn tensor_as_map(t: &Mat) -> Mat {
    t.transpose()
}

/// A finite-dimensional representation: one module-endomorphism matrix per
/// basis vector of the acting algebra.
#[derive(Clone)]
pub struct Representation {
    module_dim: usize,
    mats: Vec<Mat>,
}

impl Representation {
    pub fn new(module_dim: usize, mats: Vec<Mat>) -> Result<Self> {
        if mats.iter().any(|m| m.rows() != module_dim || m.cols() != module_dim) {
            return Err(Error::Dimension(format!(
                "representation matrices must be {module_dim}x{module_dim}"
            )));
        }
        Ok(Representation { module_dim, mats })
    }

    pub fn trivial(algebra_dim: usize, module_dim: usize) -> Self {
        Representation {
            module_dim,
            mats: vec![Mat::zeros(module_dim, module_dim); algebra_dim],
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.mats.len()
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn matrix(&self, i: usize) -> &Mat {
        &self.mats[i]
    }

    /// Matrix of the action of an arbitrary algebra element.
    pub fn act(&self, x: &[Scalar]) -> Mat {
        let mut out = Mat::zeros(self.module_dim, self.module_dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.mats[i].scale(c);
            }
        }
        out
    }

    /// Checks the homomorphism property `rho([e_i, e_j]) =
    /// [rho(e_i), rho(e_j)]` on all basis pairs.
    pub fn validate(&self, algebra: &LieAlgebra) -> Result<Verdict<IndexPair>> {
        let n = algebra.dim();
        if self.mats.len() != n {
            return Err(Error::Dimension(format!(
                "expected {n} representation matrices, got {}",
                self.mats.len()
            )));
        }
        let mut verdict = Verdict::passing();
        for i in 0..n {
            for j in i + 1..n {
                let commutator = &(&self.mats[i] * &self.mats[j]) - &(&self.mats[j] * &self.mats[i]);
                let mut bracket_action = Mat::zeros(self.module_dim, self.module_dim);
                for k in 0..n {
                    let coeff = algebra.structure_constant(i, j, k);
                    if !coeff.is_zero() {
                        bracket_action = &bracket_action + &self.mats[k].scale(coeff);
                    }
                }
                if commutator != bracket_action {
                    verdict.record(IndexPair { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(verdict)
    }

    /// The dual representation on `V*`: `rho*(x) = -rho(x)^T`.
    pub fn dual(&self) -> Representation {
        Representation {
            module_dim: self.module_dim,
            mats: self.mats.iter().map(|m| -&m.transpose()).collect(),
        }
    }
}

/// A cobracket `delta: g -> g (x) g` in coordinates:
/// `delta(e_k) = sum_ij Gamma^k_{ij} e_i (x) e_j`.
#[derive(Clone)]
pub struct Cobracket {
    /// `g[k][i][j]` = `Gamma^k_{ij}`.
    g: Vec<Vec<Vec<Scalar>>>,
}

impl Cobracket {
    pub fn zero(dim: usize) -> Self {
        Cobracket { g: vec![vec![vec![Scalar::zero(); dim]; dim]; dim] }
    }

    /// Builds from sparse entries `(k, i, j, coeff)` meaning
    /// `delta(e_k) += coeff * e_i (x) e_j` (0-based); entries are taken
    /// literally, so antisymmetric pairs must both be given.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let mut cob = Cobracket::zero(dim);
        for &(k, i, j, ref coeff) in entries {
            if k >= dim || i >= dim || j >= dim {
                return Err(Error::Input(format!(
                    "cobracket entry ({k}, {i}, {j}) out of range for dimension {dim}"
                )));
            }
            cob.g[k][i][j] = &cob.g[k][i][j] + coeff;
        }
        Ok(cob)
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    pub fn coeff(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.g[k][i][j]
    }

    /// The algebra on `g*` defined by reading `Gamma` as its structure
    /// constants: `[e*_i, e*_j] = sum_k Gamma^k_{ij} e*_k`. Basis names get
    /// a `*` suffix. Validity (antisymmetry, Jacobi) is the caller's check.
    pub fn dual_algebra(&self, base_names: &[String]) -> Result<LieAlgebra> {
        let n = self.dim();
        let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = self.g[k][i][j].clone();
                }
            }
        }
        let names = base_names.iter().map(|s| format!("{s}*")).collect();
        LieAlgebra::from_structure_constants(names, c)
    }
}

/// Small algebras used across the test suite and by the built-in example
/// constructions.
pub mod samples {
    use super::*;

    /// `sl2` in the basis `(e, f, h)` with `[e, f] = h`, `[h, e] = 2e`,
    /// `[h, f] = -2f`.
    pub fn sl2() -> LieAlgebra {
        LieAlgebra::from_brackets(
            &["e", "f", "h"],
            &[
                (0, 1, 2, Scalar::one()),
                (0, 2, 0, Scalar::from_int(-2)),
                (1, 2, 1, Scalar::from_int(2)),
            ],
        )
        .expect("valid table")
    }

    /// The 3-dimensional algebra with `[e1, e2] = e3` and `e3` central.
    pub fn heisenberg3() -> LieAlgebra {
        LieAlgebra::from_brackets(&["e1", "e2", "e3"], &[(0, 1, 2, Scalar::one())])
            .expect("valid table")
    }

    /// The 2-dimensional nonabelian algebra with `[e1, e2] = e1`.
    pub fn aff1() -> LieAlgebra {
        LieAlgebra::from_brackets(&["e1", "e2"], &[(0, 1, 0, Scalar::one())])
            .expect("valid table")
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn r(p: i64, q: i64) -> Scalar {
        Scalar::rational(p, q)
    }

    #[test]
    fn sample_algebras_validate() {
        for a in [sl2(), heisenberg3(), aff1()] {
            let report = a.validate();
            assert!(report.pass(), "{report}");
        }
    }

    #[test]
    fn validate_flags_broken_antisymmetry_and_jacobi() {
        // Antisymmetry: set [e1, e1] = e2.
        let mut c = vec![vec![vec![Scalar::zero(); 2]; 2]; 2];
        c[0][0][1] = s(1);
        let a = LieAlgebra::from_structure_constants(vec!["a".into(), "b".into()], c).unwrap();
        let report = a.validate();
        assert!(!report.antisymmetry.pass);
        assert_eq!(report.antisymmetry.witnesses[0].i, 1);
        assert_eq!(report.antisymmetry.witnesses[0].j, 1);

        // Jacobi: [h, e] = 3e instead of 2e in the sl2 table.
        let broken = LieAlgebra::from_brackets(
            &["e", "f", "h"],
            &[
                (0, 1, 2, s(1)),
                (0, 2, 0, s(-3)),
                (1, 2, 1, s(2)),
            ],
        )
        .unwrap();
        let report = broken.validate();
        assert!(report.antisymmetry.pass);
        assert!(!report.jacobi.pass);
        assert_eq!(report.jacobi.violations, 1);
        let w = &report.jacobi.witnesses[0];
        assert_eq!((w.i, w.j, w.k), (1, 2, 3));
    }

    #[test]
    fn bracket_of_coordinate_vectors() {
        let a = sl2();
        // [e + f, h] = -2e + 2f.
        let x = vec![s(1), s(1), s(0)];
        let h = vec![s(0), s(0), s(1)];
        assert_eq!(a.bracket(&x, &h).unwrap(), vec![s(-2), s(2), s(0)]);
        // Bracket with itself vanishes.
        assert_eq!(a.bracket(&x, &x).unwrap(), vec![s(0), s(0), s(0)]);
    }

    #[test]
    fn sl2_killing_form_matches_known_values() {
        // K(e, f) = 4, K(h, h) = 8, all other basis pairings zero.
        let b = sl2().killing_form();
        let expected = Mat::from_rows(vec![
            vec![s(0), s(4), s(0)],
            vec![s(4), s(0), s(0)],
            vec![s(0), s(0), s(8)],
        ]);
        assert_eq!(b, expected);
        assert!(sl2().is_invariant_form(&b).unwrap().pass);
    }

    #[test]
    fn nilpotent_killing_form_is_zero_but_invariant() {
        let a = heisenberg3();
        let b = a.killing_form();
        assert!(b.is_zero());
        assert!(a.is_invariant_form(&b).unwrap().pass);
        assert!(matches!(a.casimir_of_form(&b), Err(Error::DegenerateForm)));
    }

    #[test]
    fn invariance_check_flags_non_invariant_form() {
        let a = sl2();
        let verdict = a.is_invariant_form(&Mat::identity(3)).unwrap();
        assert!(!verdict.pass);
    }

    #[test]
    fn sl2_casimir_is_inverse_killing_and_invariant() {
        let a = sl2();
        let b = a.killing_form();
        let t = a.casimir_of_form(&b).unwrap();
        // (1/4)(e (x) f + f (x) e) + (1/8) h (x) h.
        let expected = Mat::from_rows(vec![
            vec![s(0), r(1, 4), s(0)],
            vec![r(1, 4), s(0), s(0)],
            vec![s(0), s(0), r(1, 8)],
        ]);
        assert_eq!(t, expected);
        assert!(a.is_ad_invariant_tensor(&t).unwrap().pass);
        // Inverting back recovers the form exactly.
        assert_eq!(t.inverse().unwrap(), b);
    }

    #[test]
    fn ad_invariance_check_flags_perturbed_casimir() {
        let a = sl2();
        let mut t = a.casimir_of_form(&a.killing_form()).unwrap();
        *t.at_mut(2, 2) = r(1, 4);
        assert!(!a.is_ad_invariant_tensor(&t).unwrap().pass);
    }

    #[test]
    fn tensor_as_map_sends_dual_vectors_through_the_tensor() {
        let a = sl2();
        let t = a.casimir_of_form(&a.killing_form()).unwrap();
        let map = tensor_as_map(&t);
        // e* (dual coordinates (1,0,0)) goes to (1/4) f.
        let image = map.apply(&[s(1), s(0), s(0)]);
        assert_eq!(image, vec![s(0), r(1, 4), s(0)]);
        assert!(map.is_symmetric());
    }

    #[test]
    fn adjoint_and_coadjoint_are_representations() {
        for a in [sl2(), heisenberg3(), aff1()] {
            assert!(a.adjoint_rep().validate(&a).unwrap().pass);
            assert!(a.coadjoint_rep().validate(&a).unwrap().pass);
        }
    }

    #[test]
    fn coadjoint_action_on_central_dual_vector() {
        // With [e1, e2] = e3: ad*(e1) e3* = -e2* and ad*(e2) e3* = e1*.
        let rho = heisenberg3().coadjoint_rep();
        let e3_dual = vec![s(0), s(0), s(1)];
        assert_eq!(rho.matrix(0).apply(&e3_dual), vec![s(0), s(-1), s(0)]);
        assert_eq!(rho.matrix(1).apply(&e3_dual), vec![s(1), s(0), s(0)]);
        // e1*, e2* are annihilated by everything.
        for i in 0..3 {
            assert_eq!(rho.matrix(i).apply(&[s(1), s(0), s(0)]), vec![s(0); 3]);
            assert_eq!(rho.matrix(i).apply(&[s(0), s(1), s(0)]), vec![s(0); 3]);
        }
    }

    #[test]
    fn dual_of_dual_is_original() {
        let rho = sl2().adjoint_rep();
        let dd = rho.dual().dual();
        for i in 0..3 {
            assert_eq!(dd.matrix(i), rho.matrix(i));
        }
    }

    #[test]
    fn homomorphism_check_flags_scaled_matrix() {
        let a = sl2();
        let mut mats: Vec<Mat> = (0..3).map(|i| a.ad(i)).collect();
        mats[0] = mats[0].scale(&s(2));
        let rho = Representation::new(3, mats).unwrap();
        let verdict = rho.validate(&a).unwrap();
        assert!(!verdict.pass);
    }

    #[test]
    fn semidirect_sum_with_coadjoint_action() {
        let a = heisenberg3();
        let d = a.semidirect_sum(&a.coadjoint_rep()).unwrap();
        assert_eq!(d.dim(), 6);
        assert!(d.validate().pass());
        // [e1, v3] = -v2 inside the sum (v-block holds dual coordinates).
        let mut e1 = zero_vector(6);
        e1[0] = s(1);
        let mut v3 = zero_vector(6);
        v3[5] = s(1);
        let out = d.bracket(&e1, &v3).unwrap();
        let mut expected = zero_vector(6);
        expected[4] = s(-1);
        assert_eq!(out, expected);
    }

    #[test]
    fn semidirect_sum_rejects_non_representation() {
        let a = sl2();
        let bad = Representation::new(2, vec![Mat::identity(2); 3]).unwrap();
        assert!(matches!(a.semidirect_sum(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn zero_cobracket_double_equals_coadjoint_semidirect_sum() {
        for a in [aff1(), heisenberg3(), sl2()] {
            let (double, pairing) = a.classical_double(&Cobracket::zero(a.dim())).unwrap();
            let semi = a.semidirect_sum(&a.coadjoint_rep()).unwrap();
            assert_eq!(double.structure_constants(), semi.structure_constants());
            assert!(double.is_invariant_form(&pairing).unwrap().pass);
            assert!(!pairing.is_zero());
            assert!(pairing.inverse().is_some());
        }
    }

    #[test]
    fn aff1_double_brackets_match_known_values() {
        let a = aff1();
        let (d, _) = a.classical_double(&Cobracket::zero(2)).unwrap();
        let names: Vec<&str> = d.basis_names().iter().map(String::as_str).collect();
        assert_eq!(names, ["e1", "e2", "e1*", "e2*"]);
        let e = |i: usize| {
            let mut v = zero_vector(4);
            v[i] = s(1);
            v
        };
        // [e1*, e1] = e2*, and e2* is central.
        assert_eq!(d.bracket(&e(2), &e(0)).unwrap(), e(3));
        for i in 0..4 {
            assert_eq!(d.bracket(&e(3), &e(i)).unwrap(), zero_vector(4));
        }
        // [e2, e1*] = e1*.
        assert_eq!(d.bracket(&e(1), &e(2)).unwrap(), e(2));
    }

    #[test]
    fn standard_sl2_cobracket_is_a_cocycle_and_doubles() {
        let a = sl2();
        // delta(e) = (1/2)(e (x) h - h (x) e), delta(f) = (1/2)(f (x) h - h (x) f).
        let gamma = Cobracket::from_entries(
            3,
            &[
                (0, 0, 2, r(1, 2)),
                (0, 2, 0, r(-1, 2)),
                (1, 1, 2, r(1, 2)),
                (1, 2, 1, r(-1, 2)),
            ],
        )
        .unwrap();
        assert!(a.check_cocycle(&gamma).unwrap().pass);
        let dual = gamma.dual_algebra(a.basis_names()).unwrap();
        assert!(dual.validate().pass());
        let (double, pairing) = a.classical_double(&gamma).unwrap();
        assert_eq!(double.dim(), 6);
        assert!(double.validate().pass());
        assert!(double.is_invariant_form(&pairing).unwrap().pass);
    }

    #[test]
    fn cocycle_check_flags_arbitrary_gamma() {
        // On sl2, delta(e) = e (x) f - f (x) e with delta(f) = delta(h) = 0
        // fails the cocycle identity at the pair (e, f): the left side is
        // delta(h) = 0 but the right side is h (x) f - f (x) h.
        let a = sl2();
        let gamma = Cobracket::from_entries(
            3,
            &[(0, 0, 1, s(1)), (0, 1, 0, s(-1))],
        )
        .unwrap();
        let verdict = a.check_cocycle(&gamma).unwrap();
        assert!(!verdict.pass);
        assert_eq!(verdict.witnesses[0].i, 1);
        assert_eq!(verdict.witnesses[0].j, 2);
        assert!(matches!(a.classical_double(&gamma), Err(Error::Precondition(_))));
    }

    #[test]
    fn subalgebra_closure_grows_to_the_derived_algebra() {
        let a = sl2();
        // e and f generate all of sl2: [e, f] = h enters the closure.
        let basis = a
            .subalgebra_closure(&[vec![s(1), s(0), s(0)], vec![s(0), s(1), s(0)]])
            .unwrap();
        assert_eq!(basis.len(), 3);
        // h alone is already closed.
        let basis = a.subalgebra_closure(&[vec![s(0), s(0), s(1)]]).unwrap();
        assert_eq!(basis.len(), 1);
        // Borel subalgebra (e, h) is closed.
        let basis = a
            .subalgebra_closure(&[vec![s(1), s(0), s(0)], vec![s(0), s(0), s(1)]])
            .unwrap();
        assert_eq!(basis.len(), 2);
    }
}
