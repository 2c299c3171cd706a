//! On-disk JSON schemas and their conversions: algebras with optional
//! named forms, candidate tensors, operators, representations,
//! cobrackets, and search patterns. Indices are 1-based in files and
//! 0-based in the API; emission is canonical (sorted, sparse, reduced
//! scalars) so identical inputs produce identical bytes.

use crate::algebra::{tensor_as_map, Cobracket, LieAlgebra, Representation};
use crate::error::{Error, Result};
use crate::loop_alg::LoopVector;
use crate::matrix::{unit_vector, Mat};
use crate::ooperator::{rep_extension_map, OOperator, OperatorKind, PatternSlot, PositiveRule};
use crate::rmatrix::RMatrix;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// Reads any of the schema types from a JSON file.
pub fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Writes a schema value as canonical pretty JSON with a trailing newline.
pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Renders a schema value as the same canonical JSON `save_json` writes.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

/// Loads a bare JSON matrix (`[[...], ...]` of scalar literals).
pub fn load_matrix(path: &Path) -> Result<Mat> {
    let rows: Vec<Vec<Scalar>> = load_json(path)?;
    rows_to_mat(&rows, "matrix")
}

fn rows_to_mat(rows: &[Vec<Scalar>], what: &str) -> Result<Mat> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
        return Err(Error::Input(format!(
            "{what} must be a non-empty rectangular matrix"
        )));
    }
    let mut m = Mat::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            *m.at_mut(i, j) = v.clone();
        }
    }
    Ok(m)
}

fn mat_to_rows(m: &Mat) -> Vec<Vec<Scalar>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).clone()).collect())
        .collect()
}

fn basis_index(raw: usize, dim: usize, what: &str) -> Result<usize> {
    if raw == 0 || raw > dim {
        return Err(Error::Input(format!(
            "{what} index {raw} out of range 1..={dim}"
        )));
    }
    Ok(raw - 1)
}

/// Algebra schema: `{"dim", "basis", "brackets": [[i, j, k, "coeff"]],
/// "forms": {name: matrix}}`. Bracket entries state
/// `[e_i, e_j] += coeff * e_k` with 1-based indices; either orientation of
/// a pair may be given (the other is filled by antisymmetry), but the same
/// oriented triple may appear only once.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<(usize, usize, usize, Scalar)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, Vec<Vec<Scalar>>>,
}

impl AlgebraFile {
    pub fn into_algebra(&self) -> Result<(LieAlgebra, BTreeMap<String, Mat>)> {
        let k = self.dim;
        if k == 0 {
            return Err(Error::Input("algebra dimension must be positive".into()));
        }
        if self.basis.len() != k {
            return Err(Error::Input(format!(
                "basis has {} names but dim is {k}",
                self.basis.len()
            )));
        }
        let mut normalized: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for &(ri, rj, rk, ref coeff) in &self.brackets {
            let i = basis_index(ri, k, "bracket")?;
            let j = basis_index(rj, k, "bracket")?;
            let m = basis_index(rk, k, "bracket")?;
            if i == j {
                return Err(Error::Input(format!(
                    "bracket entry ({ri}, {rj}, {rk}) pairs a basis vector with itself"
                )));
            }
            let (key, value) = if i < j {
                ((i, j, m), coeff.clone())
            } else {
                ((j, i, m), -coeff)
            };
            if normalized.insert(key, value).is_some() {
                return Err(Error::Input(format!(
                    "duplicate bracket entry for pair ({ri}, {rj}) -> {rk}"
                )));
            }
        }
        let entries: Vec<(usize, usize, usize, Scalar)> = normalized
            .into_iter()
            .map(|((i, j, m), c)| (i, j, m, c))
            .collect();
        let names: Vec<&str> = self.basis.iter().map(String::as_str).collect();
        let algebra = LieAlgebra::from_brackets(&names, &entries)?;
        let mut forms = BTreeMap::new();
        for (name, rows) in &self.forms {
            let m = rows_to_mat(rows, &format!("form {name:?}"))?;
            if m.rows() != k || m.cols() != k {
                return Err(Error::Input(format!("form {name:?} must be {k}x{k}")));
            }
            forms.insert(name.clone(), m);
        }
        Ok((algebra, forms))
    }

    pub fn from_algebra(a: &LieAlgebra, forms: &BTreeMap<String, Mat>) -> Self {
        let k = a.dim();
        let c = a.structure_constants();
        let mut brackets = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                for m in 0..k {
                    if !c[i][j][m].is_zero() {
                        brackets.push((i + 1, j + 1, m + 1, c[i][j][m].clone()));
                    }
                }
            }
        }
        AlgebraFile {
            dim: k,
            basis: a.basis_names().to_vec(),
            brackets,
            forms: forms
                .iter()
                .map(|(name, m)| (name.clone(), mat_to_rows(m)))
                .collect(),
        }
    }
}

/// Loads an algebra file and converts it.
pub fn load_algebra(path: &Path) -> Result<(LieAlgebra, BTreeMap<String, Mat>)> {
    load_json::<AlgebraFile>(path)?.into_algebra()
}

/// The algebra slot of a candidate-tensor file: a path (resolved relative
/// to the file that references it) or an inline algebra object.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(AlgebraFile),
}

/// Candidate-tensor schema: `{"algebra": path-or-inline, "pole": matrix,
/// "poly": [[p, q, i, j, "coeff"]]}` with 1-based tensor slots.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RMatrixFile {
    pub algebra: AlgebraRef,
    pub pole: Vec<Vec<Scalar>>,
    #[serde(default)]
    pub poly: Vec<(u32, u32, usize, usize, Scalar)>,
}

impl RMatrixFile {
    /// `base` is the directory the file was read from, for resolving an
    /// algebra path reference.
    pub fn into_rmatrix(&self, base: &Path) -> Result<RMatrix> {
        let (algebra, _) = match &self.algebra {
            AlgebraRef::Path(p) => load_algebra(&base.join(p))?,
            AlgebraRef::Inline(f) => f.into_algebra()?,
        };
        let k = algebra.dim();
        let pole = rows_to_mat(&self.pole, "pole")?;
        let mut poly: BTreeMap<(u32, u32), Mat> = BTreeMap::new();
        for &(p, q, ri, rj, ref coeff) in &self.poly {
            let i = basis_index(ri, k, "poly slot")?;
            let j = basis_index(rj, k, "poly slot")?;
            let block = poly.entry((p, q)).or_insert_with(|| Mat::zeros(k, k));
            *block.at_mut(i, j) += coeff;
        }
        RMatrix::new(algebra, pole, poly)
    }

    pub fn from_rmatrix(r: &RMatrix) -> Self {
        let mut poly = Vec::new();
        for (&(p, q), block) in r.poly() {
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    let v = block.at(i, j);
                    if !v.is_zero() {
                        poly.push((p, q, i + 1, j + 1, v.clone()));
                    }
                }
            }
        }
        RMatrixFile {
            algebra: AlgebraRef::Inline(AlgebraFile::from_algebra(r.algebra(), &BTreeMap::new())),
            pole: mat_to_rows(r.pole()),
            poly,
        }
    }
}

/// Loads a candidate-tensor file, resolving algebra references relative to
/// its location.
pub fn load_rmatrix(path: &Path) -> Result<RMatrix> {
    let file: RMatrixFile = load_json(path)?;
    file.into_rmatrix(path.parent().unwrap_or_else(|| Path::new(".")))
}

/// One stored image in an operator file: the image of `e_i u^{-n-1}`
/// (basis index 1-based) as sparse `[j, l, "coeff"]` monomials.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorEntry {
    pub i: usize,
    pub n: u32,
    pub image: Vec<(usize, i64, Scalar)>,
}

/// Operator schema: `{"kind", "N_max", "L", "t": matrix (absent for
/// adjoint kind), "entries": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub kind: String,
    #[serde(rename = "N_max")]
    pub n_max: u32,
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<Vec<Scalar>>>,
    #[serde(default)]
    pub entries: Vec<OperatorEntry>,
}

impl OperatorFile {
    /// Converts against an algebra (and the module representation for the
    /// rep kind). Returns the operator together with the tensor it
    /// carries, when its kind has one.
    pub fn into_operator(
        &self,
        algebra: &LieAlgebra,
        rho: Option<&Representation>,
    ) -> Result<(OOperator, Option<Mat>)> {
        let k = algebra.dim();
        let tensor = match &self.t {
            Some(rows) => Some(rows_to_mat(rows, "tensor t")?),
            None => None,
        };
        let (kind, domain, codomain, rule) = match self.kind.as_str() {
            "adjoint" => {
                if tensor.is_some() {
                    return Err(Error::Input(
                        "adjoint-kind operator files carry no tensor t".into(),
                    ));
                }
                (OperatorKind::Adjoint, k, k, PositiveRule::NegId)
            }
            "coadjoint" => {
                let t = tensor
                    .as_ref()
                    .ok_or_else(|| Error::Input("coadjoint-kind operator needs a tensor t".into()))?;
                if t.rows() != k || t.cols() != k {
                    return Err(Error::Dimension(format!("tensor t must be {k}x{k}")));
                }
                (
                    OperatorKind::Coadjoint,
                    k,
                    k,
                    PositiveRule::NegMap(tensor_as_map(t)),
                )
            }
            "rep" => {
                let rho = rho.ok_or_else(|| {
                    Error::Input("rep-kind operator needs a representation file".into())
                })?;
                let n = rho.module_dim();
                let t = tensor
                    .as_ref()
                    .ok_or_else(|| Error::Input("rep-kind operator needs a tensor t".into()))?;
                if t.rows() != n || t.cols() != n {
                    return Err(Error::Dimension(format!("tensor t must be {n}x{n}")));
                }
                (
                    OperatorKind::Rep,
                    n,
                    k + n,
                    PositiveRule::NegMap(rep_extension_map(k, t)),
                )
            }
            other => {
                return Err(Error::Input(format!(
                    "unknown operator kind {other:?} (expected adjoint, coadjoint, or rep)"
                )));
            }
        };
        let mut images = BTreeMap::new();
        for entry in &self.entries {
            let i = basis_index(entry.i, domain, "operator entry")?;
            let mut img = LoopVector::zero(codomain);
            for &(rj, l, ref coeff) in &entry.image {
                let j = basis_index(rj, codomain, "image")?;
                img.add_scaled_term(l, coeff, &unit_vector(codomain, j));
            }
            if images.insert((i, entry.n), img).is_some() {
                return Err(Error::Input(format!(
                    "duplicate operator entry for basis {} at degree index {}",
                    entry.i, entry.n
                )));
            }
        }
        let op = OOperator::new(kind, domain, codomain, self.n_max, self.l, images, rule)?;
        Ok((op, tensor))
    }

    pub fn from_operator(op: &OOperator, t: Option<&Mat>) -> Self {
        let mut entries = Vec::new();
        for ((i, n), img) in op.entries() {
            let mut image = Vec::new();
            for (l, v) in img.iter() {
                for (j, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        image.push((j + 1, l, c.clone()));
                    }
                }
            }
            entries.push(OperatorEntry { i: i + 1, n, image });
        }
        OperatorFile {
            kind: op.kind().as_str().to_string(),
            n_max: op.support_bound(),
            l: op.image_bound(),
            t: t.map(mat_to_rows),
            entries,
        }
    }
}

/// Representation schema: `{"module_dim": N, "mats": [K matrices N x N]}`
/// in basis order.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub module_dim: usize,
    pub mats: Vec<Vec<Vec<Scalar>>>,
}

impl RepresentationFile {
    pub fn into_representation(&self) -> Result<Representation> {
        let mats = self
            .mats
            .iter()
            .enumerate()
            .map(|(i, rows)| rows_to_mat(rows, &format!("representation matrix {}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(self.module_dim, mats)
    }

}

/// Cobracket schema: `{"dim": K, "entries": [[k, i, j, "coeff"]]}` stating
/// `delta(e_k) += coeff * e_i (x) e_j`, 1-based and literal (antisymmetric
/// pairs are both written).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CobracketFile {
    pub dim: usize,
    #[serde(default)]
    pub entries: Vec<(usize, usize, usize, Scalar)>,
}

impl CobracketFile {
    pub fn into_cobracket(&self) -> Result<Cobracket> {
        let k = self.dim;
        let mut entries = Vec::new();
        for &(rk, ri, rj, ref coeff) in &self.entries {
            entries.push((
                basis_index(rk, k, "cobracket")?,
                basis_index(ri, k, "cobracket")?,
                basis_index(rj, k, "cobracket")?,
                coeff.clone(),
            ));
        }
        Cobracket::from_entries(k, &entries)
    }
}

/// Search-pattern schema: candidate slots (1-based indices) plus an
/// optional default coefficient palette.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternFile {
    pub slots: Vec<PatternSlotFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<Scalar>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternSlotFile {
    pub domain_index: usize,
    pub support_index: u32,
    pub codomain_index: usize,
    pub image_degree: u32,
}

impl PatternFile {
    pub fn into_slots(&self, domain_dim: usize, codomain_dim: usize) -> Result<Vec<PatternSlot>> {
        self.slots
            .iter()
            .map(|s| {
                Ok(PatternSlot {
                    domain_index: basis_index(s.domain_index, domain_dim, "pattern domain")?,
                    support_index: s.support_index,
                    codomain_index: basis_index(
                        s.codomain_index,
                        codomain_dim,
                        "pattern codomain",
                    )?,
                    image_degree: s.image_degree,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::samples::{heisenberg3, sl2};
    use crate::constructors::heisenberg_family;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn algebra_files_round_trip_with_forms() {
        let a = sl2();
        let mut forms = BTreeMap::new();
        forms.insert("killing".to_string(), a.killing_form());
        let file = AlgebraFile::from_algebra(&a, &forms);
        let text = to_json_string(&file).unwrap();
        let parsed: AlgebraFile = serde_json::from_str(&text).unwrap();
        let (b, parsed_forms) = parsed.into_algebra().unwrap();
        assert_eq!(a, b);
        assert_eq!(parsed_forms["killing"], a.killing_form());
        // Emission is deterministic.
        assert_eq!(text, to_json_string(&AlgebraFile::from_algebra(&a, &forms)).unwrap());
    }

    #[test]
    fn bracket_entries_accept_mirrors_and_reject_duplicates() {
        // [e2, e1] = -e3 is the mirror orientation of [e1, e2] = e3.
        let file = AlgebraFile {
            dim: 3,
            basis: vec!["e1".into(), "e2".into(), "e3".into()],
            brackets: vec![(2, 1, 3, s(-1))],
            forms: BTreeMap::new(),
        };
        let (a, _) = file.into_algebra().unwrap();
        assert_eq!(a, heisenberg3());

        let dup = AlgebraFile {
            dim: 3,
            basis: vec!["e1".into(), "e2".into(), "e3".into()],
            brackets: vec![(1, 2, 3, s(1)), (2, 1, 3, s(-1))],
            forms: BTreeMap::new(),
        };
        assert!(matches!(dup.into_algebra(), Err(Error::Input(_))));

        let diagonal = AlgebraFile {
            dim: 2,
            basis: vec!["x".into(), "y".into()],
            brackets: vec![(1, 1, 2, s(1))],
            forms: BTreeMap::new(),
        };
        assert!(matches!(diagonal.into_algebra(), Err(Error::Input(_))));

        let out_of_range = AlgebraFile {
            dim: 2,
            basis: vec!["x".into(), "y".into()],
            brackets: vec![(1, 3, 1, s(1))],
            forms: BTreeMap::new(),
        };
        assert!(matches!(out_of_range.into_algebra(), Err(Error::Input(_))));
    }

    #[test]
    fn rmatrix_files_round_trip_inline() {
        let (_, _, _, r) = heisenberg_family(&s(2), &s(-3));
        let file = RMatrixFile::from_rmatrix(&r);
        let text = to_json_string(&file).unwrap();
        let parsed: RMatrixFile = serde_json::from_str(&text).unwrap();
        let back = parsed.into_rmatrix(Path::new(".")).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn operator_files_round_trip_and_validate_kinds() {
        let a = heisenberg3();
        let (_, t, op, _) = heisenberg_family(&s(1), &s(1));
        let file = OperatorFile::from_operator(&op, Some(&t));
        let text = to_json_string(&file).unwrap();
        let parsed: OperatorFile = serde_json::from_str(&text).unwrap();
        let (back, back_t) = parsed.into_operator(&a, None).unwrap();
        assert_eq!(back_t.as_ref(), Some(&t));
        assert_eq!(
            OperatorFile::from_operator(&back, back_t.as_ref()).entries.len(),
            file.entries.len()
        );
        let again = to_json_string(&OperatorFile::from_operator(&back, back_t.as_ref())).unwrap();
        assert_eq!(text, again);

        // Kind-specific validation.
        let mut adjoint_with_t = file.clone();
        adjoint_with_t.kind = "adjoint".into();
        assert!(matches!(
            adjoint_with_t.into_operator(&a, None),
            Err(Error::Input(_))
        ));
        let mut no_t = file.clone();
        no_t.t = None;
        assert!(matches!(no_t.into_operator(&a, None), Err(Error::Input(_))));
        let mut unknown = file;
        unknown.kind = "mystery".into();
        assert!(matches!(unknown.into_operator(&a, None), Err(Error::Input(_))));
    }

    #[test]
    fn malformed_json_is_an_input_error() {
        let bad: std::result::Result<AlgebraFile, _> =
            serde_json::from_str("{\"dim\": 2, \"basis\": [\"x\"");
        assert!(bad.is_err());
        let err: Error = bad.unwrap_err().into();
        assert!(err.is_input_error());
    }

    #[test]
    fn cobracket_and_pattern_files_convert_indices() {
        let cf = CobracketFile {
            dim: 2,
            entries: vec![(1, 1, 2, s(1)), (1, 2, 1, s(-1))],
        };
        let cob = cf.into_cobracket().unwrap();
        assert_eq!(*cob.coeff(0, 0, 1), s(1));
        assert_eq!(*cob.coeff(0, 1, 0), s(-1));

        let pf = PatternFile {
            slots: vec![PatternSlotFile {
                domain_index: 2,
                support_index: 0,
                codomain_index: 3,
                image_degree: 1,
            }],
            coeffs: Some(vec![s(-1), s(0), s(1)]),
        };
        let slots = pf.into_slots(3, 3).unwrap();
        assert_eq!(slots[0].domain_index, 1);
        assert_eq!(slots[0].codomain_index, 2);
        assert!(pf.into_slots(1, 3).is_err());
    }
}
