//! Parameter-free operator identities on finite-dimensional algebras:
//! the weight-zero operator equation, its dual-space and module
//! generalizations, the weight "-1" relation with its derived bracket,
//! and the modified tensor equation.

use crate::algebra::{LieAlgebra, Representation};
use crate::error::{Error, Result};
use crate::matrix::{vector_is_zero, Mat, Vector};
use crate::report::{IndexPair, IndexTriple, Verdict};
use crate::scalar::Scalar;
use std::fmt;

fn column(m: &Mat, j: usize) -> Vector {
    (0..m.rows()).map(|i| m.at(i, j).clone()).collect()
}

fn add_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

fn sub_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a -= b;
    }
}

fn shape_guard(a: &LieAlgebra, m: &Mat, what: &str) -> Result<()> {
    let k = a.dim();
    if m.rows() != k || m.cols() != k {
        return Err(Error::Dimension(format!("{what} must be {k}x{k}")));
    }
    Ok(())
}

/// Weight-zero operator equation on the algebra itself:
/// `[R(x), R(y)] = R([R(x), y] + [x, R(y)])` scanned over basis pairs
/// (1-based in witnesses). The residual is bilinear and antisymmetric,
/// so pairs `i < j` are complete.
pub fn check_eq15(a: &LieAlgebra, r: &Mat) -> Result<Verdict<IndexPair>> {
    shape_guard(a, r, "operator matrix")?;
    let k = a.dim();
    let mut verdict = Verdict::passing();
    for i in 0..k {
        let rx = column(r, i);
        for j in (i + 1)..k {
            let ry = column(r, j);
            let mut residual = a.bracket(&rx, &ry)?;
            let mut arg = a.bracket(&rx, &crate::matrix::unit_vector(k, j))?;
            add_into(&mut arg, &a.bracket(&crate::matrix::unit_vector(k, i), &ry)?);
            sub_into(&mut residual, &r.apply(&arg));
            if !vector_is_zero(&residual) {
                verdict.record(IndexPair { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(verdict)
}

/// Dual-space version: `[r(a*), r(b*)] = r(ad*(r(a*)) b* - ad*(r(b*)) a*)`
/// over dual-basis pairs; `r_map` sends the `j`-th dual basis vector to
/// its `j`-th column.
pub fn check_eq16(a: &LieAlgebra, r_map: &Mat) -> Result<Verdict<IndexPair>> {
    shape_guard(a, r_map, "dual operator matrix")?;
    let k = a.dim();
    let coad = a.coadjoint_rep();
    let mut verdict = Verdict::passing();
    for i in 0..k {
        let rx = column(r_map, i);
        for j in (i + 1)..k {
            let ry = column(r_map, j);
            let mut residual = a.bracket(&rx, &ry)?;
            let mut arg = coad.act(&rx).apply(&crate::matrix::unit_vector(k, j));
            sub_into(&mut arg, &coad.act(&ry).apply(&crate::matrix::unit_vector(k, i)));
            sub_into(&mut residual, &r_map.apply(&arg));
            if !vector_is_zero(&residual) {
                verdict.record(IndexPair { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(verdict)
}

/// Module version over an arbitrary representation:
/// `[T(u), T(v)] = T(rho(T(u)) v - rho(T(v)) u)` over module basis pairs;
/// `t_map` is `K x N`, sending the `j`-th module basis vector to its
/// `j`-th column.
pub fn check_eq17(a: &LieAlgebra, rho: &Representation, t_map: &Mat) -> Result<Verdict<IndexPair>> {
    let k = a.dim();
    let n = rho.module_dim();
    if t_map.rows() != k || t_map.cols() != n {
        return Err(Error::Dimension(format!("operator matrix must be {k}x{n}")));
    }
    let valid = rho.validate(a)?;
    if !valid.pass {
        return Err(Error::Precondition(format!(
            "representation property fails: {valid}"
        )));
    }
    let mut verdict = Verdict::passing();
    for i in 0..n {
        let tu = column(t_map, i);
        for j in (i + 1)..n {
            let tv = column(t_map, j);
            let mut residual = a.bracket(&tu, &tv)?;
            let mut arg = rho.act(&tu).apply(&crate::matrix::unit_vector(n, j));
            sub_into(&mut arg, &rho.act(&tv).apply(&crate::matrix::unit_vector(n, i)));
            sub_into(&mut residual, &t_map.apply(&arg));
            if !vector_is_zero(&residual) {
                verdict.record(IndexPair { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(verdict)
}

/// Weight "-1" relation, literally as printed:
/// `[R'(x), R'(y)] = R'([R'(x), y] + [x, R'(y)] + [x, y])`.
pub fn check_eq52(a: &LieAlgebra, rp: &Mat) -> Result<Verdict<IndexPair>> {
    shape_guard(a, rp, "operator matrix")?;
    let k = a.dim();
    let mut verdict = Verdict::passing();
    for i in 0..k {
        let rx = column(rp, i);
        for j in (i + 1)..k {
            let ry = column(rp, j);
            let ei = crate::matrix::unit_vector(k, i);
            let ej = crate::matrix::unit_vector(k, j);
            let mut residual = a.bracket(&rx, &ry)?;
            let mut arg = a.bracket(&rx, &ej)?;
            add_into(&mut arg, &a.bracket(&ei, &ry)?);
            add_into(&mut arg, &a.bracket(&ei, &ej)?);
            sub_into(&mut residual, &rp.apply(&arg));
            if !vector_is_zero(&residual) {
                verdict.record(IndexPair { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(verdict)
}

/// Modified tensor equation in operator form, literally as printed:
/// `[R(x), R(y)] = R([R(x), y] + [x, R(y)]) - [x, y]`.
pub fn check_eq53(a: &LieAlgebra, r: &Mat) -> Result<Verdict<IndexPair>> {
    shape_guard(a, r, "operator matrix")?;
    let k = a.dim();
    let mut verdict = Verdict::passing();
    for i in 0..k {
        let rx = column(r, i);
        for j in (i + 1)..k {
            let ry = column(r, j);
            let ei = crate::matrix::unit_vector(k, i);
            let ej = crate::matrix::unit_vector(k, j);
            let mut residual = a.bracket(&rx, &ry)?;
            let mut arg = a.bracket(&rx, &ej)?;
            add_into(&mut arg, &a.bracket(&ei, &ry)?);
            sub_into(&mut residual, &r.apply(&arg));
            add_into(&mut residual, &a.bracket(&ei, &ej)?);
            if !vector_is_zero(&residual) {
                verdict.record(IndexPair { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(verdict)
}

/// The two sides of the substitution between the weight "-1" form and the
/// modified form. No equivalence between the two verdicts is asserted
/// anywhere; callers report them side by side.
pub fn rp_from_r(r: &Mat) -> Mat {
    &Mat::identity(r.rows()) - &r.scale(&Scalar::from_int(2))
}

/// Inverse substitution `R = (1 - R') / 2`.
pub fn r_from_rp(rp: &Mat) -> Mat {
    (&Mat::identity(rp.rows()) - rp).scale(&Scalar::rational(1, 2))
}

/// Constant-case verdict pair for a tensor `r` (matrix of coefficients,
/// row = left slot): `q3` is the triple bracket in coordinates
/// (`q3[a][b][c]` multiplies `e_a (x) e_b (x) e_c`), `cybe` its vanishing,
/// `mcybe` its invariance under the diagonal adjoint action.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ConstantCybeReport {
    pub cybe: bool,
    pub mcybe: bool,
    pub q3: Vec<Vec<Vec<Scalar>>>,
}

impl fmt::Display for ConstantCybeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tensor equation: {}; modified tensor equation: {}",
            if self.cybe { "pass" } else { "FAIL" },
            if self.mcybe { "pass" } else { "FAIL" }
        )
    }
}

/// Expand the constant triple bracket of `r` and test both the plain and
/// the modified tensor equation.
pub fn constant_cybe_and_mcybe(a: &LieAlgebra, r: &Mat) -> Result<ConstantCybeReport> {
    shape_guard(a, r, "tensor matrix")?;
    let k = a.dim();
    let c = a.structure_constants();
    let zero = Scalar::from_int(0);
    let mut q3 = vec![vec![vec![zero; k]; k]; k];
    for aa in 0..k {
        for b in 0..k {
            let rab = r.at(aa, b);
            if rab.is_zero() {
                continue;
            }
            for e in 0..k {
                for d in 0..k {
                    let red = r.at(e, d);
                    if red.is_zero() {
                        continue;
                    }
                    let w = rab * red;
                    for m in 0..k {
                        // Left slots bracket: e_m (x) e_b (x) e_d.
                        let s1 = &c[aa][e][m];
                        if !s1.is_zero() {
                            q3[m][b][d] += &(&w * s1);
                        }
                        // First-right slots bracket: e_a (x) e_m (x) e_d.
                        let s2 = &c[b][e][m];
                        if !s2.is_zero() {
                            q3[aa][m][d] += &(&w * s2);
                        }
                        // Right slots bracket: e_a (x) e_e (x) e_m.
                        let s3 = &c[b][d][m];
                        if !s3.is_zero() {
                            q3[aa][e][m] += &(&w * s3);
                        }
                    }
                }
            }
        }
    }
    let cybe = q3
        .iter()
        .flatten()
        .flatten()
        .all(|v| v.is_zero());
    let mut mcybe = true;
    'outer: for s in 0..k {
        let ad = a.ad(s);
        for i in 0..k {
            for j in 0..k {
                for m in 0..k {
                    let mut v = Scalar::from_int(0);
                    for l in 0..k {
                        v += &(ad.at(i, l) * &q3[l][j][m]);
                        v += &(ad.at(j, l) * &q3[i][l][m]);
                        v += &(ad.at(m, l) * &q3[i][j][l]);
                    }
                    if !v.is_zero() {
                        mcybe = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(ConstantCybeReport { cybe, mcybe, q3 })
}

/// Certificates for the derived bracket
/// `[x, y]_1 = [R'(x), y] + [x, R'(y)] + [x, y]` of a weight "-1"
/// operator: the bracket is antisymmetric and satisfies Jacobi, `R'` is a
/// homomorphism from it to the original bracket, and it coincides with the
/// commutator of the product `x . y = [R'(x), y] + (1/2)[x, y]`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DerivedBracketReport {
    pub antisymmetry: Verdict<IndexPair>,
    pub jacobi: Verdict<IndexTriple>,
    pub homomorphism: Verdict<IndexPair>,
    pub product_commutator: Verdict<IndexPair>,
}

impl DerivedBracketReport {
    pub fn pass(&self) -> bool {
        self.antisymmetry.pass
            && self.jacobi.pass
            && self.homomorphism.pass
            && self.product_commutator.pass
    }
}

impl fmt::Display for DerivedBracketReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "antisymmetry: {}; jacobi: {}; homomorphism: {}; product commutator: {}",
            self.antisymmetry, self.jacobi, self.homomorphism, self.product_commutator
        )
    }
}

/// Run the derived-bracket certificates for an operator that passes the
/// weight "-1" relation (precondition, checked).
pub fn derived_bracket_checks(a: &LieAlgebra, rp: &Mat) -> Result<DerivedBracketReport> {
    let gate = check_eq52(a, rp)?;
    if !gate.pass {
        return Err(Error::Precondition(format!(
            "operator does not satisfy the weight \"-1\" relation: {gate}"
        )));
    }
    let k = a.dim();
    let bracket1 = |x: &[Scalar], y: &[Scalar]| -> Result<Vector> {
        let mut out = a.bracket(&rp.apply(x), y)?;
        add_into(&mut out, &a.bracket(x, &rp.apply(y))?);
        add_into(&mut out, &a.bracket(x, y)?);
        Ok(out)
    };
    let basis: Vec<Vector> = (0..k).map(|i| crate::matrix::unit_vector(k, i)).collect();

    let mut antisymmetry = Verdict::passing();
    let mut homomorphism = Verdict::passing();
    let mut product_commutator = Verdict::passing();
    let half = Scalar::rational(1, 2);
    for i in 0..k {
        for j in i..k {
            let fwd = bracket1(&basis[i], &basis[j])?;
            let bwd = bracket1(&basis[j], &basis[i])?;
            let mut anti = fwd.clone();
            add_into(&mut anti, &bwd);
            if !vector_is_zero(&anti) {
                antisymmetry.record(IndexPair { i: i + 1, j: j + 1 });
            }

            let mut hom = rp.apply(&fwd);
            sub_into(&mut hom, &a.bracket(&rp.apply(&basis[i]), &rp.apply(&basis[j]))?);
            if !vector_is_zero(&hom) {
                homomorphism.record(IndexPair { i: i + 1, j: j + 1 });
            }

            let product = |x: &[Scalar], y: &[Scalar]| -> Result<Vector> {
                let mut out = a.bracket(&rp.apply(x), y)?;
                let plain = a.bracket(x, y)?;
                for (acc, v) in out.iter_mut().zip(&plain) {
                    *acc += &(v * &half);
                }
                Ok(out)
            };
            let mut comm = product(&basis[i], &basis[j])?;
            sub_into(&mut comm, &product(&basis[j], &basis[i])?);
            sub_into(&mut comm, &fwd);
            if !vector_is_zero(&comm) {
                product_commutator.record(IndexPair { i: i + 1, j: j + 1 });
            }
        }
    }

    let mut jacobi = Verdict::passing();
    for i in 0..k {
        for j in 0..k {
            for m in 0..k {
                let mut cyc = bracket1(&basis[i], &bracket1(&basis[j], &basis[m])?)?;
                add_into(&mut cyc, &bracket1(&basis[j], &bracket1(&basis[m], &basis[i])?)?);
                add_into(&mut cyc, &bracket1(&basis[m], &bracket1(&basis[i], &basis[j])?)?);
                if !vector_is_zero(&cyc) {
                    jacobi.record(IndexTriple {
                        i: i + 1,
                        j: j + 1,
                        k: m + 1,
                    });
                }
            }
        }
    }

    Ok(DerivedBracketReport {
        antisymmetry,
        jacobi,
        homomorphism,
        product_commutator,
    })
}
