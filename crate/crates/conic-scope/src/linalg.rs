//! Small dense linear-algebra kit used throughout the crate.
//!
//! Everything here is deliberately plain: row-major dense storage, modified
//! Gram-Schmidt with re-orthogonalization, Cholesky for small SPD systems.
//! Problem sizes are desk scale (dimensions in the tens), so simplicity and
//! determinism win over blocked kernels.

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &o) in dst.iter_mut().zip(orow) {
                    *d += a * o;
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// A^T * x for x of length `rows`.
    pub fn tr_matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.rows, x.len());
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] += xi * self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Symmetrize in place: M <- (M + M^T)/2. Square matrices only.
    pub fn symmetrize(&mut self) {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (self.data[i * n + j] + self.data[j * n + i]);
                self.data[i * n + j] = v;
                self.data[j * n + i] = v;
            }
        }
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// sqrt(a^2 + b^2) without overflow.
pub fn hypot(a: f64, b: f64) -> f64 {
    let (a, b) = (a.abs(), b.abs());
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    if hi == 0.0 {
        return 0.0;
    }
    let r = lo / hi;
    hi * (1.0 + r * r).sqrt()
}

/// Modified Gram-Schmidt with one re-orthogonalization pass.
///
/// Returns an orthonormal basis of the span of `vectors`. A vector whose
/// residual after projection is below `tol * (1 + original norm)` is treated
/// as dependent and dropped.
pub fn orthonormalize(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let orig = norm2(v);
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                axpy(-c, q, &mut w);
            }
        }
        let r = norm2(&w);
        if r > tol * (1.0 + orig) {
            for x in w.iter_mut() {
                *x /= r;
            }
            basis.push(w);
        }
    }
    basis
}

/// Complete an orthonormal set `basis` to a full orthonormal basis of R^n,
/// returning only the added (complement) vectors.
///
/// Each round picks the standard basis vector with the largest residual
/// against the current set, which keeps the selection deterministic and the
/// new vectors well conditioned.
pub fn orthonormal_complement(basis: &[Vec<f64>], n: usize, _tol: f64) -> Vec<Vec<f64>> {
    let mut full: Vec<Vec<f64>> = basis.to_vec();
    let mut comp = Vec::new();
    while full.len() < n {
        let mut best: Option<(f64, Vec<f64>)> = None;
        for i in 0..n {
            let mut w = vec![0.0; n];
            w[i] = 1.0;
            for _ in 0..2 {
                for q in &full {
                    let c = dot(&w, q);
                    axpy(-c, q, &mut w);
                }
            }
            let r = norm2(&w);
            if best.as_ref().map_or(true, |(br, _)| r > *br) {
                best = Some((r, w));
            }
        }
        let (r, mut w) = best.expect("ambient dimension must be positive");
        if r <= 1e-12 {
            break; // basis was already (numerically) complete
        }
        for x in w.iter_mut() {
            *x /= r;
        }
        comp.push(w.clone());
        full.push(w);
    }
    comp
}

/// Cholesky factorization of a symmetric positive definite matrix.
/// Returns the lower factor L with A = L L^T, or None if a pivot is not
/// positive enough.
pub fn cholesky(a: &Mat) -> Option<Mat> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut l = Mat::zeros(n, n);
    for j in 0..n {
        let mut d = a.get(j, j);
        for k in 0..j {
            d -= l.get(j, k) * l.get(j, k);
        }
        if d <= 0.0 || !d.is_finite() {
            return None;
        }
        let dj = d.sqrt();
        l.set(j, j, dj);
        for i in (j + 1)..n {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, s / dj);
        }
    }
    Some(l)
}

/// Solve A x = b for SPD A via Cholesky, escalating a diagonal jitter if the
/// factorization fails. Returns None only if even heavy regularization fails.
pub fn solve_spd(a: &Mat, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.rows;
    let scale = (0..n).map(|i| a.get(i, i).abs()).fold(0.0, f64::max).max(1.0);
    let mut jitter = 0.0;
    for attempt in 0..8 {
        let mut m = a.clone();
        if attempt > 0 {
            jitter = if jitter == 0.0 { 1e-14 * scale } else { jitter * 100.0 };
            for i in 0..n {
                let v = m.get(i, i) + jitter;
                m.set(i, i, v);
            }
        }
        if let Some(l) = cholesky(&m) {
            return Some(chol_solve(&l, b));
        }
    }
    None
}

/// Solve L L^T x = b given the lower Cholesky factor L.
pub fn chol_solve(l: &Mat, b: &[f64]) -> Vec<f64> {
    let n = l.rows;
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            y[i] -= l.get(i, k) * y[k];
        }
        y[i] /= l.get(i, i);
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            y[i] -= l.get(k, i) * y[k];
        }
        y[i] /= l.get(i, i);
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_solve_roundtrip() {
        let a = Mat::from_rows(&[vec![4.0, 1.0], vec![1.0, 3.0]]);
        let x = solve_spd(&a, &[1.0, 2.0]).unwrap();
        let r = a.matvec(&x);
        assert!((r[0] - 1.0).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn orthonormalize_drops_dependent() {
        let vs = vec![
            vec![1.0, 0.0, 0.0],
            vec![2.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
        ];
        let b = orthonormalize(&vs, 1e-10);
        assert_eq!(b.len(), 2);
        assert!((dot(&b[0], &b[1])).abs() < 1e-12);
    }

    #[test]
    fn complement_dimensions() {
        let b = orthonormalize(&[vec![1.0, 1.0, 0.0]], 1e-10);
        let c = orthonormal_complement(&b, 3, 1e-10);
        assert_eq!(c.len(), 2);
        for v in &c {
            assert!(dot(v, &b[0]).abs() < 1e-12);
        }
    }
}
