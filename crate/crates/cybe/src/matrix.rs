//! Dense matrices and vectors over exact scalars.
//!
//! Everything here is exact: inversion and row reduction use fraction-free
//! Gauss-Jordan elimination over Q(i), so singularity and rank are decided,
//! never estimated.

use crate::scalar::Scalar;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A coordinate vector. Plain `Vec<Scalar>` everywhere; the helpers below
/// cover the handful of operations the rest of the crate needs.
pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

/// Standard basis vector `e_i` (0-based) of length `n`.
pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn vector_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * v`, the only compound vector update the crate needs.
pub fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    assert_eq!(acc.len(), v.len(), "vector length mismatch");
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        *a += &(c * x);
    }
}

/// A dense `rows x cols` matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let mut out = self.clone();
        for x in &mut out.data {
            *x *= c;
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = zero_vector(self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let c = self.at(i, j);
                if !c.is_zero() && !v[j].is_zero() {
                    out[i] += &(c * &v[j]);
                }
            }
        }
        out
    }

    /// Exact inverse via Gauss-Jordan; `None` when the matrix is singular
    /// (which is the nondegeneracy test for bilinear forms).
    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.at(col, col).inv().expect("pivot is nonzero");
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a.at(r, col).is_zero() {
                    let factor = -a.at(r, col);
                    a.add_scaled_row(r, col, &factor);
                    inv.add_scaled_row(r, col, &factor);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Scalar) {
        for k in 0..self.cols {
            self.data[i * self.cols + k] *= c;
        }
    }

    /// `row[i] += c * row[j]`.
    fn add_scaled_row(&mut self, i: usize, j: usize, c: &Scalar) {
        for k in 0..self.cols {
            let t = c * &self.data[j * self.cols + k];
            self.data[i * self.cols + k] += &t;
        }
    }
}

impl Add<&Mat> for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }
}

impl Sub<&Mat> for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }
}

impl Mul<&Mat> for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = -&*x;
        }
        out
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form with zero rows dropped: a canonical basis of the
/// row space. Used to decide membership and closure questions exactly.
pub fn row_space_basis(rows: Vec<Vector>) -> Vec<Vector> {
    let mut rows: Vec<Vector> = rows.into_iter().filter(|r| !vector_is_zero(r)).collect();
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for x in &mut rows[rank] {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = -&rows[r][col];
                let pivot_row = rows[rank].clone();
                add_scaled(&mut rows[r], &factor, &pivot_row);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows.retain(|r| !vector_is_zero(r));
    rows
}

/// True when `v` lies in the span of `basis` (`basis` must already be a
/// reduced row space basis as returned by [`row_space_basis`]).
pub fn in_row_space(basis: &[Vector], v: &[Scalar]) -> bool {
    let mut v = v.to_vec();
    for b in basis {
        let lead = b.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
        if !v[lead].is_zero() {
            let factor = -&v[lead];
            add_scaled(&mut v, &factor, b);
        }
    }
    vector_is_zero(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn product_and_transpose() {
        let a = Mat::from_rows(vec![vec![s(1), s(2)], vec![s(3), s(4)]]);
        let b = Mat::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]);
        let ab = &a * &b;
        assert_eq!(ab, Mat::from_rows(vec![vec![s(2), s(1)], vec![s(4), s(3)]]));
        assert_eq!(a.transpose().transpose(), a);
        // (AB)^T = B^T A^T
        assert_eq!(ab.transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn inverse_of_invertible_matrix() {
        let a = Mat::from_rows(vec![
            vec![s(2), s(1), s(0)],
            vec![s(1), s(1), s(1)],
            vec![s(0), s(3), s(1)],
        ]);
        let inv = a.inverse().expect("matrix is invertible");
        assert_eq!(&a * &inv, Mat::identity(3));
        assert_eq!(&inv * &a, Mat::identity(3));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = Mat::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert!(a.inverse().is_none());
        assert!(Mat::zeros(2, 2).inverse().is_none());
    }

    #[test]
    fn inverse_with_fractional_entries_is_exact() {
        let a = Mat::from_rows(vec![
            vec![Scalar::rational(1, 2), Scalar::rational(1, 3)],
            vec![Scalar::rational(1, 5), Scalar::rational(1, 7)],
        ]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Mat::identity(2));
    }

    #[test]
    fn row_space_basis_is_canonical_and_decides_membership() {
        let rows = vec![
            vec![s(1), s(2), s(3)],
            vec![s(2), s(4), s(6)],
            vec![s(0), s(1), s(1)],
        ];
        let basis = row_space_basis(rows);
        assert_eq!(basis.len(), 2);
        // RREF: leading entries are 1 with zeros above and below.
        assert_eq!(basis[0], vec![s(1), s(0), s(1)]);
        assert_eq!(basis[1], vec![s(0), s(1), s(1)]);
        assert!(in_row_space(&basis, &[s(3), s(1), s(4)]));
        assert!(!in_row_space(&basis, &[s(0), s(0), s(1)]));
    }

    #[test]
    fn apply_matches_matrix_product() {
        let a = Mat::from_rows(vec![vec![s(1), s(-1)], vec![s(2), s(0)], vec![s(0), s(5)]]);
        let v = vec![s(3), s(4)];
        assert_eq!(a.apply(&v), vec![s(-1), s(6), s(20)]);
    }
}
