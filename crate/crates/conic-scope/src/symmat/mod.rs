//! Dense symmetric-matrix algebra over f64 and exact rationals.
//!
//! `SymMat<T>` stores only the upper triangle, so symmetry is structural.
//! The two scalar types never mix inside one operation: float-only routines
//! (spectral decomposition, tolerance-based PSD tests) are implemented on
//! `SymMat<f64>`, exact routines (pivoted LDL^T) on `SymMat<BigRational>`.

mod eig;
pub mod exact;
pub mod subspace;

pub use subspace::Subspace;

use crate::linalg::Mat;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymMatError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("eigenvalue iteration failed to converge")]
    EigNoConvergence,
    #[error("empty block list")]
    EmptyBlocks,
}

/// Dense symmetric matrix with packed upper-triangle storage.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymMat<T> {
    dim: usize,
    /// Row-major upper triangle: entry (i, j) with i <= j lives at
    /// i*dim - i*(i-1)/2 + (j - i).
    data: Vec<T>,
}

#[inline]
fn tri_index(dim: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * dim - i * (i - 1) / 2 + (j - i)
}

/// Number of stored entries for dimension `d`.
pub fn packed_len(d: usize) -> usize {
    d * (d + 1) / 2
}

impl<T: Clone + Zero> SymMat<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        SymMat {
            dim,
            data: vec![T::zero(); packed_len(dim)],
        }
    }

    /// Build from full row data; the strict lower triangle is ignored.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let d = rows.len();
        let mut m = SymMat::zeros(d);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), d, "ragged rows");
            for j in i..d {
                m.set(i, j, row[j].clone());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[tri_index(self.dim, i, j)].clone()
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[tri_index(self.dim, i, j)] = v;
    }

    pub fn packed(&self) -> &[T] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// Trace inner product `<A,B> = trace(AB) = sum_ij a_ij b_ij`.
pub fn inner<T>(a: &SymMat<T>, b: &SymMat<T>) -> Result<T, SymMatError>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    if a.dim != b.dim {
        return Err(SymMatError::DimMismatch(a.dim, b.dim));
    }
    let mut acc = T::zero();
    for i in 0..a.dim {
        for j in 0..a.dim {
            acc = acc + a.get(i, j) * b.get(i, j);
        }
    }
    Ok(acc)
}

/// Direct sum of symmetric blocks.
pub fn block_diag<T: Clone + Zero>(blocks: &[SymMat<T>]) -> Result<SymMat<T>, SymMatError> {
    if blocks.is_empty() {
        return Err(SymMatError::EmptyBlocks);
    }
    let total: usize = blocks.iter().map(|b| b.dim).sum();
    let mut out = SymMat::zeros(total);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.dim {
            for j in i..b.dim {
                out.set(off + i, off + j, b.get(i, j));
            }
        }
        off += b.dim;
    }
    Ok(out)
}

impl<T> SymMat<T>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    pub fn add(&self, other: &SymMat<T>) -> SymMat<T> {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        SymMat { dim: self.dim, data }
    }

    pub fn sub(&self, other: &SymMat<T>) -> SymMat<T> {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        SymMat { dim: self.dim, data }
    }

    pub fn scale(&self, c: &T) -> SymMat<T> {
        let data = self.data.iter().map(|a| a.clone() * c.clone()).collect();
        SymMat { dim: self.dim, data }
    }

    /// Quadratic form v^T A v.
    pub fn quad_form(&self, v: &[T]) -> T {
        assert_eq!(v.len(), self.dim);
        let mut acc = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc = acc + v[i].clone() * self.get(i, j) * v[j].clone();
            }
        }
        acc
    }
}

impl SymMat<f64> {
    pub fn identity(dim: usize) -> Self {
        let mut m = SymMat::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_dense(m: &Mat) -> Self {
        assert_eq!(m.rows, m.cols);
        let d = m.rows;
        let mut out = SymMat::zeros(d);
        for i in 0..d {
            for j in i..d {
                out.set(i, j, 0.5 * (m.get(i, j) + m.get(j, i)));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Mat {
        let d = self.dim;
        let mut m = Mat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    pub fn frob_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.get(i, j);
                acc += v * v;
            }
        }
        acc.sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Trace of the matrix.
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Spectral decomposition; deterministic for identical input bits.
    pub fn eig_sym(&self) -> Result<Spectrum, SymMatError> {
        if !self.is_finite() {
            return Err(SymMatError::NonFinite);
        }
        let (eigenvalues, eigenvectors) =
            eig::eig_sym_dense(&self.to_dense()).map_err(|_| SymMatError::EigNoConvergence)?;
        Ok(Spectrum {
            eigenvalues,
            eigenvectors,
        })
    }

    /// Spectral norm (largest absolute eigenvalue).
    pub fn opnorm(&self) -> Result<f64, SymMatError> {
        let s = self.eig_sym()?;
        Ok(s.eigenvalues
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max))
    }

    /// Tolerance-based positive semidefiniteness test: PSD iff the smallest
    /// eigenvalue is at least -tol.
    pub fn psd_check(&self, tol: f64) -> Result<PsdResult, SymMatError> {
        assert!(tol >= 0.0, "tolerance must be nonnegative");
        let s = self.eig_sym()?;
        let min_eig = s.eigenvalues[0];
        if min_eig >= -tol {
            Ok(PsdResult::Psd { min_eig })
        } else {
            Ok(PsdResult::NotPsd { min_eig })
        }
    }

    /// Orthonormal basis of the span of eigenvectors with |eigenvalue| at
    /// most `tol * max(1, opnorm)`. Caller contract: the matrix is PSD
    /// within `tol`.
    pub fn kernel_basis(&self, tol: f64) -> Result<Vec<Vec<f64>>, SymMatError> {
        let s = self.eig_sym()?;
        let scale = s
            .eigenvalues
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max)
            .max(1.0);
        let mut basis = Vec::new();
        for (k, &lam) in s.eigenvalues.iter().enumerate() {
            if lam.abs() <= tol * scale {
                basis.push((0..self.dim).map(|i| s.eigenvectors.get(i, k)).collect());
            }
        }
        Ok(basis)
    }
}

impl SymMat<BigRational> {
    pub fn identity_rational(dim: usize) -> Self {
        use num_traits::One;
        let mut m = SymMat::zeros(dim);
        for i in 0..dim {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn to_f64(&self) -> SymMat<f64> {
        let data = self
            .data
            .iter()
            .map(|v| v.to_f64().unwrap_or(f64::NAN))
            .collect();
        SymMat {
            dim: self.dim,
            data,
        }
    }
}

/// Eigendecomposition of a symmetric matrix: ascending eigenvalues paired
/// with the columns of an orthogonal matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Mat,
}

impl Spectrum {
    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        (0..self.eigenvectors.rows)
            .map(|i| self.eigenvectors.get(i, k))
            .collect()
    }
}

/// Outcome of the tolerance-based PSD test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsdResult {
    Psd { min_eig: f64 },
    NotPsd { min_eig: f64 },
}

impl PsdResult {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdResult::Psd { .. })
    }

    pub fn min_eig(&self) -> f64 {
        match self {
            PsdResult::Psd { min_eig } | PsdResult::NotPsd { min_eig } => *min_eig,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm2;
    use num_bigint::BigInt;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn sym(rows: &[Vec<f64>]) -> SymMat<f64> {
        SymMat::from_rows(rows)
    }

    #[test]
    fn inner_examples() {
        let i2 = SymMat::identity(2);
        assert_eq!(inner(&i2, &i2).unwrap(), 2.0);
        let off = sym(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(inner(&off, &i2).unwrap(), 0.0);
        let a = sym(&[vec![1.0, 0.0], vec![0.0, 2.0]]);
        let b = sym(&[vec![3.0, 0.0], vec![0.0, 4.0]]);
        assert_eq!(inner(&a, &b).unwrap(), 11.0);
        assert_eq!(
            inner(&a, &SymMat::identity(3)).unwrap_err(),
            SymMatError::DimMismatch(2, 3)
        );
    }

    #[test]
    fn inner_symmetry_float_and_rational() {
        let a = sym(&[vec![1.5, -0.25, 2.0], vec![0.0, 0.5, 1.0], vec![0.0, 0.0, -3.0]]);
        let b = sym(&[vec![0.75, 4.0, -1.0], vec![0.0, 2.5, 0.125], vec![0.0, 0.0, 9.0]]);
        let ab = inner(&a, &b).unwrap();
        let ba = inner(&b, &a).unwrap();
        assert!((ab - ba).abs() <= 1e-12 * ab.abs().max(1.0));

        let ar = SymMat::from_rows(&[vec![rat(3, 2), rat(-1, 4)], vec![rat(0, 1), rat(1, 2)]]);
        let br = SymMat::from_rows(&[vec![rat(3, 4), rat(4, 1)], vec![rat(0, 1), rat(5, 2)]]);
        assert_eq!(inner(&ar, &br).unwrap(), inner(&br, &ar).unwrap());
    }

    #[test]
    fn eig_examples() {
        let a = sym(&[vec![3.0, 0.0], vec![0.0, 1.0]]);
        let s = a.eig_sym().unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((s.eigenvalues[1] - 3.0).abs() < 1e-12);

        let off = sym(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let s = off.eig_sym().unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-12);

        let id = SymMat::identity(5);
        let s = id.eig_sym().unwrap();
        for v in &s.eigenvalues {
            assert!((v - 1.0).abs() < 1e-14);
        }
        // eigenvector matrix of the identity is the identity
        for i in 0..5 {
            for j in 0..5 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((s.eigenvectors.get(i, j) - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn eig_rejects_non_finite() {
        let mut a = SymMat::zeros(2);
        a.set(0, 0, f64::NAN);
        assert_eq!(a.eig_sym().unwrap_err(), SymMatError::NonFinite);
    }

    #[test]
    fn spectrum_invariants_random() {
        let mut state = 7_u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        for _ in 0..20 {
            let d = 6;
            let mut a = SymMat::zeros(d);
            for i in 0..d {
                for j in i..d {
                    a.set(i, j, 3.0 * next());
                }
            }
            let s = a.eig_sym().unwrap();
            // reconstruction error
            let mut recon = SymMat::zeros(d);
            for k in 0..d {
                let v = s.eigenvector(k);
                for i in 0..d {
                    for j in i..d {
                        let val = recon.get(i, j) + s.eigenvalues[k] * v[i] * v[j];
                        recon.set(i, j, val);
                    }
                }
            }
            let err = recon.sub(&a).frob_norm();
            assert!(err <= 1e-10 * (1.0 + a.frob_norm()));
        }
    }

    #[test]
    fn psd_check_examples() {
        let off = sym(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let r = off.psd_check(1e-9).unwrap();
        assert!(!r.is_psd());
        assert!((r.min_eig() + 1.0).abs() < 1e-12);

        let near = sym(&[vec![1.0, 0.0], vec![0.0, -1e-12]]);
        assert!(near.psd_check(1e-9).unwrap().is_psd());
    }

    #[test]
    fn kernel_basis_examples() {
        let a = sym(&[vec![1.0, 0.0], vec![0.0, 0.0]]);
        let b = a.kernel_basis(1e-9).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0][0].abs() < 1e-12 && (b[0][1].abs() - 1.0).abs() < 1e-12);

        assert!(SymMat::identity(2).kernel_basis(1e-9).unwrap().is_empty());

        let ones = sym(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        let b = ones.kernel_basis(1e-9).unwrap();
        assert_eq!(b.len(), 1);
        // span{(1,-1)/sqrt(2)}
        assert!((b[0][0] + b[0][1]).abs() < 1e-12);
        assert!((norm2(&b[0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_vectors_are_near_null() {
        let a = sym(&[
            vec![4.0, 2.0, 0.0],
            vec![2.0, 1.0, 0.0],
            vec![0.0, 0.0, 5.0],
        ]); // rank 2, kernel (1,-2,0)/sqrt 5
        let tol = 1e-9;
        let op = a.opnorm().unwrap();
        for v in a.kernel_basis(tol).unwrap() {
            let av = a.to_dense().matvec(&v);
            assert!(norm2(&av) <= 10.0 * tol * op);
        }
    }

    #[test]
    fn block_diag_examples() {
        let i1 = SymMat::identity(1);
        let i2 = SymMat::identity(2);
        let b = block_diag(&[i1, i2]).unwrap();
        assert_eq!(b, SymMat::identity(3));

        let pos = sym(&[vec![1.0]]);
        let neg = sym(&[vec![-1.0]]);
        let d = block_diag(&[pos, neg]).unwrap();
        assert!(!d.psd_check(1e-9).unwrap().is_psd());

        let single = sym(&[vec![0.0, 1.0], vec![1.0, 5.0]]);
        assert_eq!(block_diag(std::slice::from_ref(&single)).unwrap(), single);

        let empty: Vec<SymMat<f64>> = Vec::new();
        assert_eq!(block_diag(&empty).unwrap_err(), SymMatError::EmptyBlocks);
    }
}
