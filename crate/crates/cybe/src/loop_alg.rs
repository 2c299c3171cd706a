//! Laurent-polynomial vectors over a coordinate space: elements of
//! `V[u, u^-1]`, the graded bracket they inherit when `V` is a Lie algebra,
//! graded extensions of representations, and the residue pairing.
//!
//! Degrees are arbitrary signed integers; no truncation happens at this
//! layer (finite windows belong to the operator checks). Every arithmetic
//! operation drops zero coefficient vectors, so structural equality of
//! [`LoopVector`]s is semantic equality.

use crate::algebra::{LieAlgebra, Representation};
use crate::error::{Error, Result};
use crate::matrix::{add_scaled, vector_is_zero, zero_vector, Mat, Vector};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// A finite sum `sum_m  x_m u^m` with `x_m` coordinate vectors of a fixed
/// dimension. Zero coefficient vectors are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LoopVector {
    dim: usize,
    terms: BTreeMap<i64, Vector>,
}

impl LoopVector {
    pub fn zero(dim: usize) -> Self {
        LoopVector { dim, terms: BTreeMap::new() }
    }

    /// The monomial `e_i u^m` (0-based basis index).
    pub fn monomial(dim: usize, i: usize, degree: i64) -> Self {
        assert!(i < dim, "basis index out of range");
        let mut v = zero_vector(dim);
        v[i] = Scalar::one();
        let mut out = LoopVector::zero(dim);
        out.add_term(degree, &v);
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient vector at `u^degree`, if nonzero.
    pub fn coeff(&self, degree: i64) -> Option<&Vector> {
        self.terms.get(&degree)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Vector)> {
        self.terms.iter().map(|(d, v)| (*d, v))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Adds `v * u^degree`, dropping the slot if it cancels to zero.
    pub fn add_term(&mut self, degree: i64, v: &[Scalar]) {
        assert_eq!(v.len(), self.dim, "coefficient vector length mismatch");
        if vector_is_zero(v) {
            return;
        }
        let slot = self.terms.entry(degree).or_insert_with(|| zero_vector(self.dim));
        for (a, b) in slot.iter_mut().zip(v) {
            *a += b;
        }
        if vector_is_zero(slot) {
            self.terms.remove(&degree);
        }
    }

    /// Adds `c * v * u^degree`.
    pub fn add_scaled_term(&mut self, degree: i64, c: &Scalar, v: &[Scalar]) {
        assert_eq!(v.len(), self.dim, "coefficient vector length mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(degree).or_insert_with(|| zero_vector(self.dim));
        add_scaled(slot, c, v);
        if vector_is_zero(slot) {
            self.terms.remove(&degree);
        }
    }

    pub fn add(&self, other: &LoopVector) -> LoopVector {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = self.clone();
        for (d, v) in other.iter() {
            out.add_term(d, v);
        }
        out
    }

    pub fn sub(&self, other: &LoopVector) -> LoopVector {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LoopVector {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> LoopVector {
        let mut out = LoopVector::zero(self.dim);
        for (d, v) in self.iter() {
            out.add_scaled_term(d, c, v);
        }
        out
    }

    /// Multiplies by `u^shift`.
    pub fn shift(&self, shift: i64) -> LoopVector {
        let mut out = LoopVector::zero(self.dim);
        for (d, v) in self.iter() {
            out.add_term(d + shift, v);
        }
        out
    }

    /// Renders the vector in the textual element syntax using the given
    /// basis names, e.g. `2*e*u^-1 - h`.
    pub fn display_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.dim);
        let mut out = String::new();
        for (d, v) in self.iter() {
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if out.is_empty() {
                    out.push_str(&format!("{c}*{}", names[i]));
                } else {
                    // Pull the sign out as the separator for real negative
                    // coefficients.
                    let c_str = c.to_string();
                    if let Some(stripped) = c_str.strip_prefix('-') {
                        out.push_str(&format!(" - {stripped}*{}", names[i]));
                    } else {
                        out.push_str(&format!(" + {c_str}*{}", names[i]));
                    }
                }
                if d != 0 {
                    out.push_str(&format!("*u^{d}"));
                }
            }
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}

impl std::fmt::Debug for LoopVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LoopVector(dim {},", self.dim)?;
        for (d, v) in self.iter() {
            let coeffs: Vec<String> = v.iter().map(Scalar::to_string).collect();
            write!(f, " u^{d}: [{}]", coeffs.join(", "))?;
        }
        write!(f, ")")
    }
}

/// The graded bracket `[x u^m, y u^n] = [x, y] u^{m+n}`.
pub fn loop_bracket(a: &LieAlgebra, f: &LoopVector, g: &LoopVector) -> Result<LoopVector> {
    if f.dim() != a.dim() || g.dim() != a.dim() {
        return Err(Error::Dimension(format!(
            "loop bracket arguments must have dimension {}",
            a.dim()
        )));
    }
    let mut out = LoopVector::zero(a.dim());
    for (m, x) in f.iter() {
        for (n, y) in g.iter() {
            out.add_term(m + n, &a.bracket(x, y)?);
        }
    }
    Ok(out)
}

/// The graded extension of a representation:
/// `rho(x u^m)(v u^n) = rho(x)(v) u^{m+n}`.
pub fn loop_rep_apply(rho: &Representation, f: &LoopVector, v: &LoopVector) -> Result<LoopVector> {
    if f.dim() != rho.algebra_dim() {
        return Err(Error::Dimension(format!(
            "acting element must have dimension {}",
            rho.algebra_dim()
        )));
    }
    if v.dim() != rho.module_dim() {
        return Err(Error::Dimension(format!(
            "module element must have dimension {}",
            rho.module_dim()
        )));
    }
    let mut out = LoopVector::zero(rho.module_dim());
    for (m, x) in f.iter() {
        let action = rho.act(x);
        for (n, w) in v.iter() {
            out.add_term(m + n, &action.apply(w));
        }
    }
    Ok(out)
}

/// Applies a constant linear map degreewise: `M(sum x_m u^m) =
/// sum (M x_m) u^m`.
pub fn map_loop(m: &Mat, f: &LoopVector) -> LoopVector {
    let mut out = LoopVector::zero(m.rows());
    for (d, v) in f.iter() {
        out.add_term(d, &m.apply(v));
    }
    out
}

/// The residue pairing induced by a form on the coefficient space:
/// minus the coefficient of `u^-1` in `sum B(f_m, g_n) u^{m+n}`.
pub fn residue_pairing(b: &Mat, f: &LoopVector, g: &LoopVector) -> Result<Scalar> {
    let k = b.rows();
    if !b.is_square() || f.dim() != k || g.dim() != k {
        return Err(Error::Dimension(
            "form and loop vectors must share one dimension".into(),
        ));
    }
    let mut acc = Scalar::zero();
    for (m, x) in f.iter() {
        if let Some(y) = g.coeff(-1 - m) {
            // B(x, y) in coordinates.
            for i in 0..k {
                if x[i].is_zero() {
                    continue;
                }
                for j in 0..k {
                    if !y[j].is_zero() && !b.at(i, j).is_zero() {
                        acc += &(&(&x[i] * &y[j]) * b.at(i, j));
                    }
                }
            }
        }
    }
    Ok(-acc)
}

/// Parses the textual element syntax `"coeff*name*u^m + ..."`, e.g.
/// `"2*e*u^-1 - h*u^0"`. Within a summand, `*`-separated factors are one
/// optional rational coefficient, exactly one basis name, and optional
/// powers of `u` (a bare `u` means `u^1`). The name `u` is reserved for the
/// spectral variable.
pub fn parse_element(text: &str, algebra: &LieAlgebra) -> Result<LoopVector> {
    let mut out = LoopVector::zero(algebra.dim());
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(Error::Input("empty element expression".into()));
    }
    let mut negate = false;
    if let Some(r) = rest.strip_prefix('-') {
        negate = true;
        rest = r.trim_start();
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r.trim_start();
    }
    loop {
        let (summand, tail, next_negate) = split_summand(rest)?;
        parse_summand(summand, negate, algebra, &mut out)?;
        match tail {
            None => break,
            Some(t) => {
                rest = t;
                negate = next_negate;
            }
        }
    }
    Ok(out)
}

/// Splits off the first summand, returning it with the remainder (if any)
/// and whether the separator was a minus. A `-` directly after `^` belongs
/// to an exponent, not to a separator.
fn split_summand(text: &str) -> Result<(&str, Option<&str>, bool)> {
    let bytes = text.as_bytes();
    let mut prev_caret = false;
    for (pos, &b) in bytes.iter().enumerate() {
        match b {
            b'+' | b'-' if !prev_caret => {
                let head = text[..pos].trim();
                let tail = text[pos + 1..].trim_start();
                if head.is_empty() || tail.is_empty() {
                    return Err(Error::Input(format!("dangling sign in element {text:?}")));
                }
                return Ok((head, Some(tail), b == b'-'));
            }
            _ => {}
        }
        prev_caret = b == b'^';
    }
    let head = text.trim();
    if head.is_empty() {
        return Err(Error::Input("empty summand in element expression".into()));
    }
    Ok((head, None, false))
}

fn parse_summand(
    summand: &str,
    negate: bool,
    algebra: &LieAlgebra,
    out: &mut LoopVector,
) -> Result<()> {
    let mut coeff = if negate { Scalar::from_int(-1) } else { Scalar::one() };
    let mut basis: Option<usize> = None;
    let mut degree: i64 = 0;
    for factor in summand.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Input(format!("empty factor in summand {summand:?}")));
        }
        if factor == "u" {
            degree += 1;
        } else if let Some(exp) = factor.strip_prefix("u^") {
            let e: i64 = exp
                .parse()
                .map_err(|_| Error::Input(format!("invalid exponent in {factor:?}")))?;
            degree += e;
        } else if let Some(i) = algebra.basis_index(factor) {
            if basis.is_some() {
                return Err(Error::Input(format!(
                    "summand {summand:?} names more than one basis vector"
                )));
            }
            basis = Some(i);
        } else if let Ok(c) = factor.parse::<Scalar>() {
            coeff *= &c;
        } else {
            return Err(Error::Input(format!(
                "unrecognized factor {factor:?} (not a rational, basis name, or power of u)"
            )));
        }
    }
    let Some(i) = basis else {
        return Err(Error::Input(format!(
            "summand {summand:?} names no basis vector"
        )));
    };
    let mut v = zero_vector(algebra.dim());
    v[i] = coeff;
    out.add_term(degree, &v);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::samples::{heisenberg3, sl2};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn graded_bracket_adds_degrees() {
        let a = sl2();
        // [h u^2, e u^-1] = 2 e u.
        let h2 = LoopVector::monomial(3, 2, 2);
        let em1 = LoopVector::monomial(3, 0, -1);
        let out = loop_bracket(&a, &h2, &em1).unwrap();
        assert_eq!(out, LoopVector::monomial(3, 0, 1).scale(&s(2)));
        // [f, f] = 0 for any f.
        let f = h2.add(&em1.scale(&s(-3)));
        assert!(loop_bracket(&a, &f, &f).unwrap().is_zero());
    }

    #[test]
    fn central_element_kills_brackets_in_all_degrees() {
        let a = heisenberg3();
        for (p, q) in [(0i64, 0i64), (2, -3), (-1, -1), (5, 7)] {
            let out = loop_bracket(
                &a,
                &LoopVector::monomial(3, 0, p),
                &LoopVector::monomial(3, 1, q),
            )
            .unwrap();
            assert_eq!(out, LoopVector::monomial(3, 2, p + q));
        }
    }

    #[test]
    fn rep_apply_extends_gradedly() {
        let a = heisenberg3();
        let rho = a.coadjoint_rep();
        // ad*(e1 u)(e3* u^-2) = -e2* u^-1.
        let out = loop_rep_apply(
            &rho,
            &LoopVector::monomial(3, 0, 1),
            &LoopVector::monomial(3, 2, -2),
        )
        .unwrap();
        assert_eq!(out, LoopVector::monomial(3, 1, -1).neg());
        // Trivial representation always gives zero.
        let triv = Representation::trivial(3, 2);
        let out = loop_rep_apply(
            &triv,
            &LoopVector::monomial(3, 0, 1),
            &LoopVector::monomial(2, 1, -4),
        )
        .unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn adjoint_rep_apply_reproduces_loop_bracket() {
        let a = sl2();
        let rho = a.adjoint_rep();
        let f = parse_element("2*e*u^-1 - h*u^0", &a).unwrap();
        let g = parse_element("f*u^3 + 1/2*h*u^-2", &a).unwrap();
        assert_eq!(
            loop_rep_apply(&rho, &f, &g).unwrap(),
            loop_bracket(&a, &f, &g).unwrap()
        );
    }

    #[test]
    fn residue_pairing_picks_total_degree_minus_one() {
        let a = sl2();
        let b = a.killing_form();
        let pair = |f: &LoopVector, g: &LoopVector| residue_pairing(&b, f, g).unwrap();
        let e = |d: i64| LoopVector::monomial(3, 0, d);
        let f = |d: i64| LoopVector::monomial(3, 1, d);
        let h = |d: i64| LoopVector::monomial(3, 2, d);
        assert_eq!(pair(&e(-1), &f(0)), s(-4));
        assert_eq!(pair(&e(-2), &f(0)), s(0));
        assert_eq!(pair(&h(-3), &h(2)), s(-8));
        // Symmetric.
        assert_eq!(pair(&f(0), &e(-1)), s(-4));
    }

    #[test]
    fn residue_pairing_is_invariant_on_monomials() {
        let a = sl2();
        let b = a.killing_form();
        // pairing([f,g],h) = pairing(f,[g,h]) over a window of monomials.
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for (df, dg, dh) in [(-1i64, 0i64, 0i64), (-2, 1, 0), (2, -3, -1), (0, 0, -1)]
                    {
                        let f = LoopVector::monomial(3, i, df);
                        let g = LoopVector::monomial(3, j, dg);
                        let h = LoopVector::monomial(3, k, dh);
                        let lhs =
                            residue_pairing(&b, &loop_bracket(&a, &f, &g).unwrap(), &h).unwrap();
                        let rhs =
                            residue_pairing(&b, &f, &loop_bracket(&a, &g, &h).unwrap()).unwrap();
                        assert_eq!(lhs, rhs, "failed at ({i},{j},{k}) degrees ({df},{dg},{dh})");
                    }
                }
            }
        }
    }

    #[test]
    fn parse_element_round_trips_through_display() {
        let a = sl2();
        let f = parse_element("2*e*u^-1 - h*u^0", &a).unwrap();
        assert_eq!(f.coeff(-1).unwrap()[0], s(2));
        assert_eq!(f.coeff(0).unwrap()[2], s(-1));
        let text = f.display_with(a.basis_names());
        assert_eq!(parse_element(&text, &a).unwrap(), f);
        // Bare names, bare u, repeated u factors, rational coefficients.
        let g = parse_element("-1/2*h*u*u^2 + e", &a).unwrap();
        assert_eq!(g.coeff(3).unwrap()[2], Scalar::rational(-1, 2));
        assert_eq!(g.coeff(0).unwrap()[0], s(1));
    }

    #[test]
    fn parse_element_rejects_malformed_input() {
        let a = sl2();
        for bad in [
            "",
            "e +",
            "q*u^2",
            "2*u^2",
            "e*f",
            "u^x*e",
            "1/0*e",
            "e**u",
        ] {
            assert!(parse_element(bad, &a).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn canonicalization_drops_cancelled_terms() {
        let a = sl2();
        let f = parse_element("e*u^5 - e*u^5 + h", &a).unwrap();
        assert_eq!(f, LoopVector::monomial(3, 2, 0));
        assert_eq!(f.min_degree(), Some(0));
        assert!(f.sub(&f).is_zero());
    }
}
