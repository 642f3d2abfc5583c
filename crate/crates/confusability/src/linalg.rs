//! Dense complex linear algebra kernel.
//!
//! Everything downstream (representations, graphs, subspaces, channels,
//! estimation) runs on the two value types here: [`StateVector`] for kets and
//! [`ComplexMatrix`] for operators. Matrices are row-major `Vec<Complex64>`
//! with double precision; target sizes (group order up to a few hundred,
//! dimension up to 64) stay far from precision limits. All values are
//! immutable after construction and every operation is a pure function.
//!
//! The JSON interchange form of a complex scalar is a two-element array
//! `[re, im]`; see the `Serialize`/`Deserialize` impls at the bottom.

use num_complex::Complex64;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute threshold used to decide when a magnitude counts as zero.
///
/// Orbit states are unit vectors, so absolute and relative thresholds
/// coincide; the default of `1e-9` is the working tolerance everywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    /// A tolerance must satisfy `0 <= eps < 1`.
    pub fn new(eps: f64) -> Result<Self> {
        if !eps.is_finite() || !(0.0..1.0).contains(&eps) {
            return Err(Error::BadTolerance { eps });
        }
        Ok(Self { eps })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps: Self::DEFAULT_EPS,
        }
    }
}

/// A ket in a finite-dimensional complex inner-product space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Rejects non-finite amplitudes.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        for (index, a) in amplitudes.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        Ok(Self { amplitudes })
    }

    pub fn from_reals(values: &[f64]) -> Self {
        Self {
            amplitudes: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    /// Computational basis state `|index>` in dimension `dim`.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[index] = Complex64::ONE;
        Self { amplitudes }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            amplitudes: vec![Complex64::ZERO; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_normalized(&self, tol: Tolerance) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol.eps()
    }

    /// Returns a unit-norm copy, or [`Error::ZeroNorm`] when the norm is
    /// numerically negligible.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Inner product `<a|b>`, conjugate linear in the first argument.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Rejects a wrong entry count and non-finite entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::BadEntryCount {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for (index, e) in entries.iter().enumerate() {
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::ONE;
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let d = diag.len();
        let mut m = Self::zeros(d, d);
        for (i, &v) in diag.iter().enumerate() {
            m.entries[i * d + i] = v;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (bad_row, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(Error::TableNotSquare {
                    rows: nrows,
                    bad_row,
                    bad_len: r.len(),
                });
            }
        }
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, c: usize) -> StateVector {
        StateVector {
            amplitudes: (0..self.rows).map(|r| self.get(r, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.get(r, c).conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry magnitude (the max norm used by every residual check).
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// `<self applied to v>`; shapes must agree.
    pub fn apply_vec(&self, v: &StateVector) -> StateVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape mismatch");
        let mut out = vec![Complex64::ZERO; self.rows];
        for r in 0..self.rows {
            let mut acc = Complex64::ZERO;
            for c in 0..self.cols {
                acc += self.get(r, c) * v.amplitudes[c];
            }
            out[r] = acc;
        }
        StateVector { amplitudes: out }
    }

    /// Outer product `|a><b|`.
    pub fn outer(a: &StateVector, b: &StateVector) -> Self {
        let mut out = Self::zeros(a.dim(), b.dim());
        for r in 0..a.dim() {
            for c in 0..b.dim() {
                out.entries[r * b.dim() + c] = a.amplitudes[r] * b.amplitudes[c].conj();
            }
        }
        out
    }

    pub fn is_hermitian(&self, tol: Tolerance) -> bool {
        self.is_square() && max_abs_diff(self, &self.adjoint()) <= tol.eps()
    }

    /// `trace(self^dagger * other)` without forming the product.
    pub fn overlap_trace(&self, other: &Self) -> Complex64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Largest entrywise deviation between two equally-shaped matrices.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    a.entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// True iff `m` is square and the max-entry magnitude of `m^dagger m - I` is
/// at most `eps`.
pub fn is_unitary(m: &ComplexMatrix, tol: Tolerance) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(unitarity_residual(m) <= tol.eps())
}

/// Max-entry magnitude of `m^dagger m - I` for a square matrix.
pub fn unitarity_residual(m: &ComplexMatrix) -> f64 {
    let gram = m.adjoint().mul(m);
    max_abs_diff(&gram, &ComplexMatrix::identity(m.rows))
}

/// Orthonormal basis of the span of `vectors`.
///
/// Gram-Schmidt with a second re-orthogonalization pass per candidate for
/// numerical stability; a candidate whose residual after projection onto the
/// accumulated basis has norm at most `eps` is dropped (the rank decision).
pub fn orthonormal_span(vectors: &[StateVector], tol: Tolerance) -> Result<Vec<StateVector>> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let dim = first.dim();
    let mut basis: Vec<StateVector> = Vec::new();
    for v in vectors {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: v.dim(),
            });
        }
        let mut w = v.clone();
        for _pass in 0..2 {
            for b in &basis {
                let c = inner_product(b, &w)?;
                w = w.sub(&b.scale(c));
            }
        }
        let n = w.norm();
        if n > tol.eps() {
            basis.push(w.scale(Complex64::new(1.0 / n, 0.0)));
        }
    }
    Ok(basis)
}

/// Orthogonal projector `sum_i |b_i><b_i|` onto the span of an orthonormal
/// basis. The basis is verified orthonormal within `eps` first.
pub fn projector_onto(basis: &[StateVector], tol: Tolerance) -> Result<ComplexMatrix> {
    let Some(first) = basis.first() else {
        return Err(Error::EmptyBasis);
    };
    let dim = first.dim();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let g = inner_product(a, b)?;
            let target = if i == j {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            let deviation = (g - target).norm();
            if deviation > tol.eps() {
                return Err(Error::NotOrthonormal { i, j, deviation });
            }
        }
    }
    let mut p = ComplexMatrix::zeros(dim, dim);
    for b in basis {
        p = p.add(&ComplexMatrix::outer(b, b));
    }
    Ok(p)
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// `eigenvectors` holds the eigenvectors as columns, ordered to match the
/// ascending `eigenvalues`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Operates on the Hermitian part `(m + m^dagger)/2`; callers that care about
/// asymmetry should check it beforehand. Each rotation zeroes one off-diagonal
/// pair via a complex Givens rotation; sweeps repeat until the off-diagonal
/// Frobenius mass is at machine-precision scale.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a = m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n);
    if n <= 1 {
        return Ok(HermitianEigen {
            eigenvalues: (0..n).map(|i| a.get(i, i).re).collect(),
            eigenvectors: v,
        });
    }

    let fro = a.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
    let target = 1e-14 * fro.max(1.0);

    let mut converged = false;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let gamma = a.get(p, q);
                let r = gamma.norm();
                if r <= target / (n as f64) {
                    continue;
                }
                // Unit phase u with gamma = r*u; diag(1, conj(u)) makes the
                // 2x2 block real, then a real Jacobi angle zeroes it.
                let u = gamma / r;
                let alpha = a.get(p, p).re;
                let beta = a.get(q, q).re;
                let theta = 0.5 * (2.0 * r).atan2(alpha - beta);
                let c = theta.cos();
                let s = theta.sin();
                let us = u.conj() * s;
                let uc = u.conj() * c;

                // A <- R^dagger A R, V <- V R with R differing from I only in
                // rows/cols p,q: R[p][p]=c, R[p][q]=-s, R[q][p]=conj(u)s,
                // R[q][q]=conj(u)c.
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * c + aiq * us);
                    a.set(i, q, aip * (-s) + aiq * uc);
                }
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * c + aqj * (u * s));
                    a.set(q, j, apj * (-s) + aqj * (u * c));
                }
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * c + viq * us);
                    v.set(i, q, vip * (-s) + viq * uc);
                }
            }
        }
    }
    if !converged {
        // One final measurement; tiny systems can land exactly on the target.
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).norm_sqr();
            }
        }
        if (2.0 * off).sqrt() > target {
            return Err(Error::NoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors.set(row, new_col, v.get(row, old_col));
        }
    }
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eigen(m)?;
    Ok(eig.eigenvalues.first().copied().unwrap_or(0.0))
}

// ---- JSON interchange: complex scalar as [re, im] ----

fn serialize_complex<S: SerializeSeq>(
    seq: &mut S,
    c: &Complex64,
) -> std::result::Result<(), S::Error> {
    seq.serialize_element(&[c.re, c.im])
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.amplitudes.len()))?;
        for a in &self.amplitudes {
            serialize_complex(&mut seq, a)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<[f64; 2]> = Vec::deserialize(deserializer)?;
        StateVector::new(
            raw.into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
        .map_err(de::Error::custom)
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            let row: Vec<[f64; 2]> = (0..self.cols)
                .map(|c| {
                    let e = self.get(r, c);
                    [e.re, e.im]
                })
                .collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct MatrixVisitor;
        impl<'de> Visitor<'de> for MatrixVisitor {
            type Value = ComplexMatrix;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a rectangular array of [re, im] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut rows: Vec<Vec<Complex64>> = Vec::new();
                while let Some(row) = seq.next_element::<Vec<[f64; 2]>>()? {
                    rows.push(
                        row.into_iter()
                            .map(|[re, im]| Complex64::new(re, im))
                            .collect(),
                    );
                }
                ComplexMatrix::from_rows(rows).map_err(de::Error::custom)
            }
        }
        deserializer.deserialize_seq(MatrixVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn inner_product_orthogonal_basis_vectors() {
        let a = StateVector::basis_state(2, 0);
        let b = StateVector::basis_state(2, 1);
        assert_eq!(inner_product(&a, &b).unwrap(), Complex64::ZERO);
        assert_eq!(inner_product(&a, &a).unwrap(), Complex64::ONE);
    }

    #[test]
    fn inner_product_conjugate_pair_vanishes() {
        // (1, i)/sqrt2 against (1, -i)/sqrt2: 1/2 (1*1 + (-i)(-i)) = 0.
        let a = StateVector::new(vec![c(SQRT_HALF, 0.0), c(0.0, SQRT_HALF)]).unwrap();
        let b = StateVector::new(vec![c(SQRT_HALF, 0.0), c(0.0, -SQRT_HALF)]).unwrap();
        assert!(inner_product(&a, &b).unwrap().norm() < 1e-15);
    }

    #[test]
    fn inner_product_dimension_mismatch() {
        let a = StateVector::basis_state(2, 0);
        let b = StateVector::basis_state(3, 0);
        assert!(matches!(
            inner_product(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn unitarity_check() {
        let tol = Tolerance::default();
        assert!(is_unitary(&ComplexMatrix::identity(2), tol).unwrap());
        let stretched = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        assert!(!is_unitary(&stretched, tol).unwrap());
        let hadamard = ComplexMatrix::new(
            2,
            2,
            vec![
                c(SQRT_HALF, 0.0),
                c(SQRT_HALF, 0.0),
                c(SQRT_HALF, 0.0),
                c(-SQRT_HALF, 0.0),
            ],
        )
        .unwrap();
        // Direct multiplication oracle.
        let gram = hadamard.adjoint().mul(&hadamard);
        assert!(max_abs_diff(&gram, &ComplexMatrix::identity(2)) < 1e-15);
        assert!(is_unitary(&hadamard, tol).unwrap());

        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            is_unitary(&rect, tol),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn span_collapses_duplicates() {
        let v = StateVector::basis_state(2, 0);
        let basis = orthonormal_span(&[v.clone(), v], Tolerance::default()).unwrap();
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn span_keeps_orthogonal_pair() {
        let basis = orthonormal_span(
            &[
                StateVector::basis_state(2, 0),
                StateVector::basis_state(2, 1),
            ],
            Tolerance::default(),
        )
        .unwrap();
        assert_eq!(basis.len(), 2);
    }

    /// Row-reduction rank oracle over the complex field, independent of the
    /// Gram-Schmidt path.
    fn rank_by_row_reduction(vectors: &[StateVector]) -> usize {
        let mut rows: Vec<Vec<Complex64>> = vectors.iter().map(|v| v.amplitudes.clone()).collect();
        let ncols = rows[0].len();
        let mut rank = 0;
        for col in 0..ncols {
            let pivot = (rank..rows.len())
                .max_by(|&i, &j| rows[i][col].norm().total_cmp(&rows[j][col].norm()));
            let Some(pivot) = pivot else { break };
            if rows[pivot][col].norm() < 1e-12 {
                continue;
            }
            rows.swap(rank, pivot);
            let inv = Complex64::ONE / rows[rank][col];
            for c in 0..ncols {
                rows[rank][c] *= inv;
            }
            for r in 0..rows.len() {
                if r != rank {
                    let factor = rows[r][col];
                    for c in 0..ncols {
                        let sub = factor * rows[rank][c];
                        rows[r][c] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn span_rank_matches_row_reduction_oracle() {
        let vs = vec![
            StateVector::from_reals(&[SQRT_HALF, SQRT_HALF, 0.0]),
            StateVector::from_reals(&[SQRT_HALF, -SQRT_HALF, 0.0]),
            StateVector::from_reals(&[1.0, 0.0, 0.0]),
        ];
        assert_eq!(rank_by_row_reduction(&vs), 2);
        let basis = orthonormal_span(&vs, Tolerance::default()).unwrap();
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn projector_examples() {
        let tol = Tolerance::default();
        let p = projector_onto(&[StateVector::basis_state(2, 0)], tol).unwrap();
        assert!(max_abs_diff(&p, &ComplexMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0)])) < 1e-15);

        let full = projector_onto(
            &[
                StateVector::basis_state(3, 0),
                StateVector::basis_state(3, 1),
                StateVector::basis_state(3, 2),
            ],
            tol,
        )
        .unwrap();
        assert!(max_abs_diff(&full, &ComplexMatrix::identity(3)) < 1e-15);

        let plus = StateVector::from_reals(&[SQRT_HALF, SQRT_HALF]);
        let p = projector_onto(&[plus.clone()], tol).unwrap();
        // Outer-product oracle.
        let expected = ComplexMatrix::outer(&plus, &plus);
        assert!(max_abs_diff(&p, &expected) < 1e-15);

        let skewed = vec![
            StateVector::from_reals(&[1.0, 0.0]),
            StateVector::from_reals(&[SQRT_HALF, SQRT_HALF]),
        ];
        assert!(matches!(
            projector_onto(&skewed, tol),
            Err(Error::NotOrthonormal { .. })
        ));
        assert!(matches!(projector_onto(&[], tol), Err(Error::EmptyBasis)));
    }

    #[test]
    fn tolerance_bounds() {
        assert!(Tolerance::new(0.0).is_ok());
        assert!(Tolerance::new(1e-9).is_ok());
        assert!(Tolerance::new(1.0).is_err());
        assert!(Tolerance::new(-1e-12).is_err());
        assert!(Tolerance::new(f64::NAN).is_err());
    }

    #[test]
    fn hermitian_eigen_known_2x2() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)],
        )
        .unwrap();
        let eig = hermitian_eigen(&m).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn hermitian_eigen_reconstructs_random_matrix() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 8;
        let mut m = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for cidx in 0..n {
                m.set(
                    r,
                    cidx,
                    c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                );
            }
        }
        let m = m.add(&m.adjoint()).scale(c(0.5, 0.0));
        let eig = hermitian_eigen(&m).unwrap();
        // V unitary.
        assert!(unitarity_residual(&eig.eigenvectors) < 1e-12);
        // V diag V^dagger == m.
        let lambda = ComplexMatrix::from_diag(
            &eig.eigenvalues
                .iter()
                .map(|&l| c(l, 0.0))
                .collect::<Vec<_>>(),
        );
        let rebuilt = eig
            .eigenvectors
            .mul(&lambda)
            .mul(&eig.eigenvectors.adjoint());
        assert!(max_abs_diff(&rebuilt, &m) < 1e-11);
        // Eigenvalue sum equals the trace.
        let sum: f64 = eig.eigenvalues.iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-11);
    }

    #[test]
    fn complex_json_round_trip() {
        let v = StateVector::new(vec![c(0.5, -0.25), c(0.0, 1.0)]).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "[[0.5,-0.25],[0.0,1.0]]");
        let back: StateVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);

        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)],
        )
        .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);

        let ragged = "[[[1.0,0.0]],[[0.0,0.0],[1.0,0.0]]]";
        assert!(serde_json::from_str::<ComplexMatrix>(ragged).is_err());
    }

    proptest! {
        #[test]
        fn inner_product_conjugate_symmetry(
            re1 in proptest::collection::vec(-1.0f64..1.0, 4),
            im1 in proptest::collection::vec(-1.0f64..1.0, 4),
            re2 in proptest::collection::vec(-1.0f64..1.0, 4),
            im2 in proptest::collection::vec(-1.0f64..1.0, 4),
        ) {
            let a = StateVector::new(
                re1.iter().zip(&im1).map(|(&r, &i)| c(r, i)).collect()).unwrap();
            let b = StateVector::new(
                re2.iter().zip(&im2).map(|(&r, &i)| c(r, i)).collect()).unwrap();
            let ab = inner_product(&a, &b).unwrap();
            let ba = inner_product(&b, &a).unwrap();
            prop_assert!((ab - ba.conj()).norm() < 1e-12);
        }

        #[test]
        fn span_output_gram_is_identity(
            re in proptest::collection::vec(-1.0f64..1.0, 12),
            im in proptest::collection::vec(-1.0f64..1.0, 12),
        ) {
            let vs: Vec<StateVector> = (0..4)
                .map(|k| StateVector::new(
                    (0..3).map(|j| c(re[k * 3 + j], im[k * 3 + j])).collect()).unwrap())
                .collect();
            let tol = Tolerance::default();
            let basis = orthonormal_span(&vs, tol).unwrap();
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let g = inner_product(a, b).unwrap();
                    let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
                    prop_assert!((g - target).norm() <= 10.0 * tol.eps());
                }
            }
        }

        #[test]
        fn projectors_idempotent_and_self_adjoint(
            re in proptest::collection::vec(-1.0f64..1.0, 8),
            im in proptest::collection::vec(-1.0f64..1.0, 8),
        ) {
            let vs: Vec<StateVector> = (0..2)
                .map(|k| StateVector::new(
                    (0..4).map(|j| c(re[k * 4 + j], im[k * 4 + j])).collect()).unwrap())
                .collect();
            let tol = Tolerance::default();
            let basis = orthonormal_span(&vs, tol).unwrap();
            if !basis.is_empty() {
                let p = projector_onto(&basis, tol).unwrap();
                prop_assert!(max_abs_diff(&p.mul(&p), &p) <= 10.0 * tol.eps());
                prop_assert!(max_abs_diff(&p.adjoint(), &p) <= 10.0 * tol.eps());
            }
        }
    }
}
