//! Product-cone ambient spaces: finitely many PSD blocks plus a nonnegative
//! orthant, with the scaled (svec) isometry between block-symmetric elements
//! and flat Euclidean vectors.

use crate::linalg::Mat;
use crate::symmat::SymMat;

pub const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Shape of a product cone: PSD blocks of the given dimensions times a
/// nonnegative orthant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeShape {
    pub psd: Vec<usize>,
    pub orthant: usize,
}

impl ConeShape {
    pub fn psd_only(dims: &[usize]) -> Self {
        ConeShape {
            psd: dims.to_vec(),
            orthant: 0,
        }
    }

    /// Dimension of the flat (svec) representation of the ambient space.
    pub fn svec_len(&self) -> usize {
        self.psd.iter().map(|d| d * (d + 1) / 2).sum::<usize>() + self.orthant
    }

    /// Barrier degree: sum of PSD block dimensions plus orthant length.
    pub fn degree(&self) -> usize {
        self.psd.iter().sum::<usize>() + self.orthant
    }

    pub fn largest_block(&self) -> usize {
        self.psd.iter().copied().max().unwrap_or(0).max(usize::from(self.orthant > 0))
    }

    pub fn zero_vec(&self) -> BlockVec {
        BlockVec {
            mats: self.psd.iter().map(|&d| Mat::zeros(d, d)).collect(),
            orth: vec![0.0; self.orthant],
        }
    }

    pub fn identity_vec(&self) -> BlockVec {
        BlockVec {
            mats: self.psd.iter().map(|&d| Mat::identity(d)).collect(),
            orth: vec![1.0; self.orthant],
        }
    }
}

/// An element of the block-symmetric ambient space (dense per-block storage).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockVec {
    pub mats: Vec<Mat>,
    pub orth: Vec<f64>,
}

impl BlockVec {
    pub fn shape(&self) -> ConeShape {
        ConeShape {
            psd: self.mats.iter().map(|m| m.rows).collect(),
            orthant: self.orth.len(),
        }
    }

    /// Single PSD block plus optional orthant coordinates.
    pub fn from_mat(m: &SymMat<f64>, orth: Vec<f64>) -> Self {
        BlockVec {
            mats: vec![m.to_dense()],
            orth,
        }
    }

    pub fn inner(&self, other: &BlockVec) -> f64 {
        let mut acc = 0.0;
        for (a, b) in self.mats.iter().zip(&other.mats) {
            acc += crate::linalg::dot(&a.data, &b.data);
        }
        acc += crate::linalg::dot(&self.orth, &other.orth);
        acc
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn trace(&self) -> f64 {
        let mut acc: f64 = self.orth.iter().sum();
        for m in &self.mats {
            for i in 0..m.rows {
                acc += m.get(i, i);
            }
        }
        acc
    }

    pub fn axpy(&mut self, alpha: f64, other: &BlockVec) {
        for (a, b) in self.mats.iter_mut().zip(&other.mats) {
            crate::linalg::axpy(alpha, &b.data, &mut a.data);
        }
        crate::linalg::axpy(alpha, &other.orth, &mut self.orth);
    }

    pub fn scale(&mut self, alpha: f64) {
        for m in self.mats.iter_mut() {
            for v in m.data.iter_mut() {
                *v *= alpha;
            }
        }
        for v in self.orth.iter_mut() {
            *v *= alpha;
        }
    }

    pub fn symmetrize(&mut self) {
        for m in self.mats.iter_mut() {
            m.symmetrize();
        }
    }

    /// Flatten with the scaled isometry (off-diagonal entries x sqrt(2)) so
    /// that Euclidean inner products agree with the trace inner product.
    pub fn svec(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for m in &self.mats {
            let d = m.rows;
            for i in 0..d {
                for j in i..d {
                    let v = m.get(i, j);
                    out.push(if i == j { v } else { SQRT2 * v });
                }
            }
        }
        out.extend_from_slice(&self.orth);
        out
    }

    pub fn unsvec(shape: &ConeShape, flat: &[f64]) -> Self {
        assert_eq!(flat.len(), shape.svec_len());
        let mut mats = Vec::with_capacity(shape.psd.len());
        let mut pos = 0;
        for &d in &shape.psd {
            let mut m = Mat::zeros(d, d);
            for i in 0..d {
                for j in i..d {
                    let v = flat[pos];
                    pos += 1;
                    let v = if i == j { v } else { v / SQRT2 };
                    m.set(i, j, v);
                    m.set(j, i, v);
                }
            }
            mats.push(m);
        }
        let orth = flat[pos..].to_vec();
        BlockVec { mats, orth }
    }

    /// Smallest eigenvalue over all blocks and orthant coordinates.
    pub fn min_eig(&self) -> Result<f64, crate::symmat::SymMatError> {
        let mut min = f64::INFINITY;
        for m in &self.mats {
            if m.rows == 0 {
                continue;
            }
            let s = SymMat::from_dense(m).eig_sym()?;
            min = min.min(s.eigenvalues[0]);
        }
        for &v in &self.orth {
            min = min.min(v);
        }
        if min == f64::INFINITY {
            min = 0.0;
        }
        Ok(min)
    }
}

/// A face of a product cone, encoded per PSD block by the orthogonal
/// complement of its kernel subspace U (the face is the set of PSD matrices
/// whose kernel contains U), and per orthant coordinate by a pinned-to-zero
/// flag.
#[derive(Debug, Clone)]
pub struct FaceDescriptor {
    shape: ConeShape,
    /// Orthonormal columns spanning U^perp for each PSD block; the face of
    /// block b is { V M V^T : M in Sym^{r_b}_+ } with V = support[b].
    support: Vec<Mat>,
    /// true = coordinate pinned to zero.
    active: Vec<bool>,
}

impl FaceDescriptor {
    pub fn full(shape: &ConeShape) -> Self {
        FaceDescriptor {
            shape: shape.clone(),
            support: shape.psd.iter().map(|&d| Mat::identity(d)).collect(),
            active: vec![false; shape.orthant],
        }
    }

    pub fn shape(&self) -> &ConeShape {
        &self.shape
    }

    pub fn support(&self) -> &[Mat] {
        &self.support
    }

    pub fn active(&self) -> &[bool] {
        &self.active
    }

    /// Rank of the face restricted to PSD block `b`.
    pub fn block_rank(&self, b: usize) -> usize {
        self.support[b].cols
    }

    pub fn is_full(&self) -> bool {
        self.support
            .iter()
            .zip(&self.shape.psd)
            .all(|(v, &d)| v.cols == d)
            && self.active.iter().all(|&a| !a)
    }

    /// Orthonormal basis of the kernel subspace U of block `b`.
    pub fn block_kernel(&self, b: usize) -> Vec<Vec<f64>> {
        let v = &self.support[b];
        let cols: Vec<Vec<f64>> = (0..v.cols)
            .map(|k| (0..v.rows).map(|i| v.get(i, k)).collect())
            .collect();
        crate::linalg::orthonormal_complement(&cols, v.rows, 1e-12)
    }

    /// Shape of the compressed (face-coordinate) space.
    pub fn compressed_shape(&self) -> ConeShape {
        ConeShape {
            psd: self.support.iter().map(|v| v.cols).collect(),
            orthant: self.active.iter().filter(|&&a| !a).count(),
        }
    }

    /// Compress an ambient element into face coordinates: per block
    /// V^T W V, keeping only inactive orthant coordinates.
    pub fn compress(&self, v: &BlockVec) -> BlockVec {
        let mats = self
            .support
            .iter()
            .zip(&v.mats)
            .map(|(sup, m)| {
                if sup.cols == 0 {
                    Mat::zeros(0, 0)
                } else {
                    let mut r = sup.transpose().matmul(m).matmul(sup);
                    r.symmetrize();
                    r
                }
            })
            .collect();
        let orth = self
            .active
            .iter()
            .zip(&v.orth)
            .filter(|(&a, _)| !a)
            .map(|(_, &x)| x)
            .collect();
        BlockVec { mats, orth }
    }

    /// Lift a compressed element back to the ambient space (zero outside the
    /// face span).
    pub fn lift(&self, v: &BlockVec) -> BlockVec {
        let mats = self
            .support
            .iter()
            .zip(&v.mats)
            .zip(&self.shape.psd)
            .map(|((sup, m), &d)| {
                if sup.cols == 0 {
                    Mat::zeros(d, d)
                } else {
                    let mut r = sup.matmul(m).matmul(&sup.transpose());
                    r.symmetrize();
                    r
                }
            })
            .collect();
        let mut orth = vec![0.0; self.shape.orthant];
        let mut it = v.orth.iter();
        for (slot, &a) in orth.iter_mut().zip(&self.active) {
            if !a {
                *slot = *it.next().expect("compressed orthant length mismatch");
            }
        }
        BlockVec { mats, orth }
    }

    /// Orthogonal projection of an ambient element onto the span of the face.
    pub fn project_span(&self, v: &BlockVec) -> BlockVec {
        self.lift(&self.compress(v))
    }

    /// Shrink the face by a supporting functional given in *compressed*
    /// coordinates: kernel directions of the functional (eigenvalues below
    /// `thresh` relative to its norm) survive; orthant coordinates with
    /// functional value above threshold get pinned.
    ///
    /// Returns the shrunk face and whether any strict progress happened.
    pub fn shrink_by(&self, functional: &BlockVec, thresh: f64) -> (FaceDescriptor, bool) {
        let scale = functional.norm().max(1e-300);
        let mut progress = false;
        let mut support = Vec::with_capacity(self.support.len());
        for (sup, f) in self.support.iter().zip(&functional.mats) {
            if sup.cols == 0 {
                support.push(sup.clone());
                continue;
            }
            let spec = SymMat::from_dense(f).eig_sym().expect("functional eig");
            let keep: Vec<usize> = spec
                .eigenvalues
                .iter()
                .enumerate()
                .filter(|(_, &l)| l <= thresh * scale)
                .map(|(k, _)| k)
                .collect();
            if keep.len() < sup.cols {
                progress = true;
            }
            // new support = old support * kept eigenvectors
            let mut n = Mat::zeros(sup.cols, keep.len());
            for (col, &k) in keep.iter().enumerate() {
                for i in 0..sup.cols {
                    n.set(i, col, spec.eigenvectors.get(i, k));
                }
            }
            support.push(sup.matmul(&n));
        }
        let mut active = self.active.clone();
        let mut it = functional.orth.iter();
        for slot in active.iter_mut() {
            if !*slot {
                let z = *it.next().expect("compressed orthant length mismatch");
                if z > thresh * scale {
                    *slot = true;
                    progress = true;
                }
            }
        }
        (
            FaceDescriptor {
                shape: self.shape.clone(),
                support,
                active,
            },
            progress,
        )
    }

    /// Face containment: self is a subface of `other` iff every support
    /// direction of self lies in the support of other and every coordinate
    /// pinned by other is pinned by self.
    pub fn is_subface_of(&self, other: &FaceDescriptor, tol: f64) -> bool {
        for ((sv, ov), &d) in self.support.iter().zip(&other.support).zip(&self.shape.psd) {
            if d == 0 {
                continue;
            }
            // residual of self's support columns outside other's support
            for k in 0..sv.cols {
                let col: Vec<f64> = (0..d).map(|i| sv.get(i, k)).collect();
                let proj = ov.matvec(&ov.tr_matvec(&col));
                let mut resid = col;
                crate::linalg::axpy(-1.0, &proj, &mut resid);
                if crate::linalg::norm2(&resid) > tol {
                    return false;
                }
            }
        }
        self.active
            .iter()
            .zip(&other.active)
            .all(|(&sa, &oa)| sa || !oa)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svec_isometry() {
        let shape = ConeShape {
            psd: vec![2, 3],
            orthant: 2,
        };
        let mut a = shape.zero_vec();
        a.mats[0].set(0, 1, 2.0);
        a.mats[0].set(1, 0, 2.0);
        a.mats[1].set(2, 2, -1.0);
        a.orth[1] = 4.0;
        let mut b = shape.zero_vec();
        b.mats[0].set(0, 1, 0.5);
        b.mats[0].set(1, 0, 0.5);
        b.mats[1].set(2, 2, 3.0);
        b.orth[1] = 1.0;

        let flat_a = a.svec();
        let flat_b = b.svec();
        let flat_inner = crate::linalg::dot(&flat_a, &flat_b);
        assert!((flat_inner - a.inner(&b)).abs() < 1e-12);

        let back = BlockVec::unsvec(&shape, &flat_a);
        assert_eq!(back, a);
    }
}
