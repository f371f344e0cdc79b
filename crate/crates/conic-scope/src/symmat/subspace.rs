//! Linear subspaces of R^n with orthonormal bases, plus the handful of
//! operations the facial reduction loop consumes: intersection, orthogonal
//! complement, membership, projection.

use crate::linalg::{axpy, dot, norm2, orthonormal_complement, orthonormalize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubspaceError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// A linear subspace represented by an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<f64>>,
}

impl Subspace {
    /// Span of the given vectors; dependent vectors are dropped.
    pub fn from_vectors(ambient: usize, vectors: &[Vec<f64>], tol: f64) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length must match ambient dim");
        }
        Subspace {
            ambient,
            basis: orthonormalize(vectors, tol),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0.0; ambient];
                v[i] = 1.0;
                v
            })
            .collect();
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.ambient);
        let mut out = vec![0.0; self.ambient];
        for q in &self.basis {
            let c = dot(v, q);
            axpy(c, q, &mut out);
        }
        out
    }

    /// Coordinates of `v` in the orthonormal basis (valid when v is in the
    /// subspace; otherwise coordinates of the projection).
    pub fn coords(&self, v: &[f64]) -> Vec<f64> {
        self.basis.iter().map(|q| dot(v, q)).collect()
    }

    /// Scale-relative membership: || v - P(v) || <= tol * (1 + ||v||).
    pub fn contains(&self, v: &[f64], tol: f64) -> bool {
        let p = self.project(v);
        let mut resid = v.to_vec();
        axpy(-1.0, &p, &mut resid);
        norm2(&resid) <= tol * (1.0 + norm2(v))
    }

    pub fn orthogonal_complement(&self, tol: f64) -> Subspace {
        Subspace {
            ambient: self.ambient,
            basis: orthonormal_complement(&self.basis, self.ambient, tol),
        }
    }

    /// Intersection via the nullspace of stacked complements:
    /// S cap T = (S^perp + T^perp)^perp.
    pub fn intersect(&self, other: &Subspace, tol: f64) -> Result<Subspace, SubspaceError> {
        if self.ambient != other.ambient {
            return Err(SubspaceError::AmbientMismatch(self.ambient, other.ambient));
        }
        let sc = self.orthogonal_complement(tol);
        let tc = other.orthogonal_complement(tol);
        let mut stacked = sc.basis;
        stacked.extend(tc.basis);
        let sum = Subspace::from_vectors(self.ambient, &stacked, tol);
        Ok(sum.orthogonal_complement(tol))
    }

    /// Intersect this subspace with the kernel of the linear map
    /// v -> v - proj(v), i.e. keep only the part of `self` lying inside
    /// `constraint`. Cheaper than `intersect` when `self` is small.
    pub fn restrict_to(&self, constraint: &Subspace, tol: f64) -> Subspace {
        // Basis vectors of self whose residual outside `constraint` vanish
        // span self ∩ constraint together with combinations; compute via the
        // nullspace of the residual map restricted to self.
        let k = self.dim();
        if k == 0 {
            return Subspace::zero(self.ambient);
        }
        // residual vectors r_i = b_i - P_c(b_i)
        let resid: Vec<Vec<f64>> = self
            .basis
            .iter()
            .map(|b| {
                let p = constraint.project(b);
                let mut r = b.clone();
                axpy(-1.0, &p, &mut r);
                r
            })
            .collect();
        // Gram matrix of residuals; kernel of it gives the combinations that
        // stay inside the constraint.
        let mut gram = crate::linalg::Mat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram.set(i, j, dot(&resid[i], &resid[j]));
            }
        }
        let sym = super::SymMat::from_dense(&gram);
        let combos = sym
            .kernel_basis(tol * tol)
            .unwrap_or_default();
        let vectors: Vec<Vec<f64>> = combos
            .iter()
            .map(|c| {
                let mut v = vec![0.0; self.ambient];
                for (ci, b) in c.iter().zip(&self.basis) {
                    axpy(*ci, b, &mut v);
                }
                // snap exactly into the constraint
                constraint.project(&v)
            })
            .collect();
        Subspace::from_vectors(self.ambient, &vectors, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    #[test]
    fn intersect_spans() {
        let s = Subspace::from_vectors(3, &[e(3, 0), e(3, 1)], 1e-10);
        let t = Subspace::from_vectors(3, &[e(3, 1), e(3, 2)], 1e-10);
        let i = s.intersect(&t, 1e-10).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&e(3, 1), 1e-9));
        assert!(!i.contains(&e(3, 0), 1e-9));
    }

    #[test]
    fn complement_examples() {
        let s = Subspace::from_vectors(3, &[e(3, 0)], 1e-10);
        let c = s.orthogonal_complement(1e-10);
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&e(3, 1), 1e-9));
        assert!(c.contains(&e(3, 2), 1e-9));
        assert!(!s.contains(&e(3, 1), 1e-9));
    }

    #[test]
    fn rank_identity_random_subspaces() {
        // dim(S cap T) + dim(S + T) == dim S + dim T
        let mut state = 42_u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(11);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        for _ in 0..25 {
            let n = 7;
            let mk = |count: usize, next: &mut dyn FnMut() -> f64| -> Vec<Vec<f64>> {
                (0..count)
                    .map(|_| (0..n).map(|_| next()).collect())
                    .collect()
            };
            let s = Subspace::from_vectors(n, &mk(3, &mut next), 1e-8);
            let t = Subspace::from_vectors(n, &mk(2, &mut next), 1e-8);
            let cap = s.intersect(&t, 1e-8).unwrap();
            let mut joined = s.basis().to_vec();
            joined.extend(t.basis().to_vec());
            let sum = Subspace::from_vectors(n, &joined, 1e-8);
            assert_eq!(cap.dim() + sum.dim(), s.dim() + t.dim());
        }
    }

    #[test]
    fn restrict_matches_intersect() {
        let s = Subspace::from_vectors(4, &[vec![1.0, 1.0, 0.0, 0.0], e(4, 2)], 1e-10);
        let c = Subspace::from_vectors(4, &[e(4, 0), e(4, 1)], 1e-10);
        let r = s.restrict_to(&c, 1e-8);
        assert_eq!(r.dim(), 1);
        assert!(r.contains(&vec![1.0, 1.0, 0.0, 0.0], 1e-8));
    }
}
