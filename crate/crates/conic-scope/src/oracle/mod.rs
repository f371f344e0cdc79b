//! The numerical engine behind facial reduction.
//!
//! For a linear subspace W inside the span of a face F of the product cone,
//! the oracle solves the auxiliary problem
//!
//! ```text
//! max lambda  s.t.  X in W, <I_F, X> = 1, X - lambda I_F in F
//! ```
//!
//! restricted to face coordinates. The trace-one slice is compact, both
//! sides of the auxiliary program admit strictly feasible starts that are
//! written down explicitly, and the dual multiplier of the slice is exactly
//! the supporting functional the reduction step needs.
//!
//! The trichotomy on the optimal value lambda*:
//!   lambda* >  tol   -> a relative-interior (maximum-rank) point of F ∩ W,
//!   |lambda*| <= tol -> a supporting functional vanishing on W,
//!   lambda* < -tol   -> F ∩ W = {0}; a functional positive definite on the
//!                       face span and vanishing on W is produced from the
//!                       mirrored auxiliary problem on W-perp.

pub mod ipm;
pub mod simplex;

pub use ipm::{aux_sdp_solve, SdpProblem, SdpSolution, SolverConfig, SolverFailure};
pub use simplex::{lp_farkas_rational, FarkasOutcome, SimplexError};

use crate::cone::{BlockVec, ConeShape, FaceDescriptor};
use crate::linalg::{self, dot};
use crate::model::Pencil;
use crate::symmat::{SymMat, Subspace};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("oracle iteration limit: {0}")]
    IterationLimit(String),
    #[error("unresolved margin: {0}")]
    UnresolvedMargin(String),
    #[error("invalid oracle input: {0}")]
    Input(String),
}

/// Outcome of the relative-interior / supporting-functional oracle, in
/// ambient coordinates.
#[derive(Debug, Clone)]
pub enum OracleOutcome {
    /// A point of F ∩ W in the relative interior of F, with its smallest
    /// eigenvalue on the face.
    Interior {
        point: BlockVec,
        min_eig_on_face: f64,
    },
    /// A nonzero functional in the dual cone, vanishing on W, whose
    /// restriction to the face span is nonzero.
    Support { functional: BlockVec, residual: f64 },
    /// F ∩ W = {0}: a functional positive definite on the face span and
    /// vanishing on W.
    ZeroOnly { functional: BlockVec },
}

/// Per-call diagnostics, surfaced up through classification reports.
#[derive(Debug, Clone, Default)]
pub struct OracleDiag {
    pub lambda_star: f64,
    pub iterations: usize,
    pub gap: f64,
    /// Set when lambda* falls in the ambiguous band around the tolerance.
    pub borderline_margin: bool,
}

/// Solver tolerance used to resolve a decision tolerance `tol`.
fn solver_tol(tol: f64) -> f64 {
    (tol * 1e-2).clamp(1e-12, 1e-8)
}

/// The max-lambda-min auxiliary solve over the trace-one slice of a
/// subspace given by orthonormal svec basis vectors in `shape` coordinates.
///
/// Returns (lambda*, slice point achieving it, dual multiplier, iterations, gap).
fn slice_solve(
    shape: &ConeShape,
    basis: &[Vec<f64>],
    tol: f64,
    max_iters: usize,
) -> Result<(f64, BlockVec, BlockVec, usize, f64), OracleError> {
    let ident = shape.identity_vec();
    let ident_flat = ident.svec();
    let traces: Vec<f64> = basis.iter().map(|b| dot(b, &ident_flat)).collect();
    let tnorm = linalg::norm2(&traces);
    debug_assert!(tnorm > 0.0, "caller must handle the traceless case");

    // v1 = unit vector of maximal trace inside the subspace; X0 = v1 / <I,v1>
    let dim_flat = shape.svec_len();
    let mut v1 = vec![0.0; dim_flat];
    for (c, b) in traces.iter().zip(basis) {
        linalg::axpy(c / tnorm, b, &mut v1);
    }
    let mut x0_flat = v1.clone();
    for x in x0_flat.iter_mut() {
        *x /= tnorm;
    }
    let x0 = BlockVec::unsvec(shape, &x0_flat);

    // traceless directions: complement of v1 within the subspace
    let mut dirs = Vec::new();
    for b in basis {
        let mut w = b.clone();
        let c = dot(&w, &v1);
        linalg::axpy(-c, &v1, &mut w);
        dirs.push(w);
    }
    let dirs = linalg::orthonormalize(&dirs, 1e-10);
    let y_mats: Vec<BlockVec> = dirs.iter().map(|v| BlockVec::unsvec(shape, v)).collect();

    // standard form: min <X0, Z> s.t. <Y_k, Z> = 0, <I, Z> = 1, Z >= 0
    let mut constraints = y_mats.clone();
    constraints.push(ident.clone());
    let mut b = vec![0.0; y_mats.len()];
    b.push(1.0);
    let prob = SdpProblem {
        shape: shape.clone(),
        c: x0.clone(),
        constraints,
        b,
    };

    // strictly feasible starts on both sides
    let nu = shape.degree().max(1) as f64;
    let mut z0 = shape.identity_vec();
    z0.scale(1.0 / nu);
    let x0_min = x0
        .min_eig()
        .map_err(|e| OracleError::Input(format!("bad slice data: {e}")))?;
    let lam0 = x0_min - 1.0;
    let mut s0 = x0.clone();
    s0.axpy(-lam0, &ident);
    let mut y0 = vec![0.0; y_mats.len()];
    y0.push(lam0);

    let cfg = SolverConfig {
        tol: solver_tol(tol),
        max_iters,
        ..SolverConfig::default()
    };
    let sol = aux_sdp_solve(&prob, Some((z0, y0, s0)), &cfg)
        .map_err(|e| OracleError::IterationLimit(e.to_string()))?;

    let lambda = 0.5 * (sol.primal_obj + sol.dual_obj);
    // slice point: X = X0 - sum u_k Y_k = S + lambda I
    let mut point = sol.s.clone();
    point.axpy(*sol.y.last().expect("lambda variable present"), &ident);
    point.symmetrize();
    Ok((lambda, point, sol.x, sol.iterations, sol.gap))
}

/// Relative-interior-or-support oracle on (W, F).
///
/// Preconditions: W is given in ambient svec coordinates and lies inside the
/// span of the face F (the facial reduction loop maintains this invariant).
pub fn relint_or_support(
    w: &Subspace,
    face: &FaceDescriptor,
    tol: f64,
    max_iters: usize,
) -> Result<(OracleOutcome, OracleDiag), OracleError> {
    let shape = face.shape();
    if w.ambient_dim() != shape.svec_len() {
        return Err(OracleError::Input(format!(
            "subspace ambient {} does not match cone svec dimension {}",
            w.ambient_dim(),
            shape.svec_len()
        )));
    }
    let comp_shape = face.compressed_shape();
    if comp_shape.degree() == 0 {
        return Err(OracleError::Input(
            "face is the zero face; nothing to reduce".into(),
        ));
    }

    // compress W into face coordinates
    let comp_basis_raw: Vec<Vec<f64>> = w
        .basis()
        .iter()
        .map(|v| {
            let amb = BlockVec::unsvec(shape, v);
            face.compress(&amb).svec()
        })
        .collect();
    let comp_basis = linalg::orthonormalize(&comp_basis_raw, 1e-10);

    let lift_functional = |f: &BlockVec| face.lift(f);

    // zero subspace or trace-orthogonal subspace: only the zero matrix of
    // the face can lie in W, so the identity of the face is already an
    // interior dual functional vanishing on W.
    let ident = comp_shape.identity_vec();
    let ident_flat = ident.svec();
    let trace_mass = comp_basis
        .iter()
        .map(|b| dot(b, &ident_flat).abs())
        .fold(0.0, f64::max);
    if comp_basis.is_empty() || trace_mass <= tol {
        return Ok((
            OracleOutcome::ZeroOnly {
                functional: lift_functional(&ident),
            },
            OracleDiag::default(),
        ));
    }

    let (lambda, point, multiplier, iterations, gap) =
        slice_solve(&comp_shape, &comp_basis, tol, max_iters)?;
    let borderline = lambda.abs() > tol && lambda.abs() <= 10.0 * tol;
    let diag = OracleDiag {
        lambda_star: lambda,
        iterations,
        gap,
        borderline_margin: borderline,
    };

    if lambda > tol {
        let min_eig = point
            .min_eig()
            .map_err(|e| OracleError::Input(format!("point eig failed: {e}")))?;
        if min_eig < tol * 0.5 {
            return Err(OracleError::UnresolvedMargin(format!(
                "interior point re-check failed: lambda* = {lambda:.3e}, min eig = {min_eig:.3e}"
            )));
        }
        let ambient = lift_functional(&point);
        return Ok((
            OracleOutcome::Interior {
                point: ambient,
                min_eig_on_face: min_eig,
            },
            diag,
        ));
    }

    if lambda >= -tol {
        // supporting functional: purify the dual multiplier
        let (functional, residual) =
            purify_support(&comp_shape, &multiplier, &comp_basis, tol).ok_or_else(|| {
                OracleError::UnresolvedMargin(
                    "support functional failed re-verification after purification".into(),
                )
            })?;
        return Ok((
            OracleOutcome::Support {
                functional: lift_functional(&functional),
                residual,
            },
            diag,
        ));
    }

    // lambda* < -tol: F ∩ W = {0}; find an interior dual functional on W-perp
    let perp = linalg::orthonormal_complement(&comp_basis, comp_shape.svec_len(), 1e-12);
    let (lambda2, point2, _, it2, gap2) = slice_solve(&comp_shape, &perp, tol, max_iters)?;
    if lambda2 <= tol {
        return Err(OracleError::UnresolvedMargin(format!(
            "zero-intersection detected (lambda* = {lambda:.3e}) but the dual functional margin is only {lambda2:.3e}"
        )));
    }
    let diag = OracleDiag {
        lambda_star: lambda,
        iterations: iterations + it2,
        gap: gap.max(gap2),
        borderline_margin: borderline,
    };
    Ok((
        OracleOutcome::ZeroOnly {
            functional: lift_functional(&point2),
        },
        diag,
    ))
}

/// Clip tiny negative eigenvalues from the multiplier, renormalize, and
/// check that it still vanishes on W and is not (numerically) zero on the
/// face span. Returns the purified functional and its worst residual.
fn purify_support(
    shape: &ConeShape,
    multiplier: &BlockVec,
    comp_basis: &[Vec<f64>],
    tol: f64,
) -> Option<(BlockVec, f64)> {
    let mut z = multiplier.clone();
    for m in z.mats.iter_mut() {
        if m.rows == 0 {
            continue;
        }
        let spec = SymMat::from_dense(m).eig_sym().ok()?;
        let clipped = (0..m.rows)
            .map(|i| {
                (0..m.rows)
                    .map(|j| {
                        (0..m.rows)
                            .map(|k| {
                                let l = spec.eigenvalues[k].max(0.0);
                                l * spec.eigenvectors.get(i, k) * spec.eigenvectors.get(j, k)
                            })
                            .sum::<f64>()
                    })
                    .collect::<Vec<f64>>()
            })
            .collect::<Vec<_>>();
        *m = linalg::Mat::from_rows(&clipped);
        m.symmetrize();
    }
    for v in z.orth.iter_mut() {
        *v = v.max(0.0);
    }
    let norm = z.norm();
    if norm <= tol {
        return None; // vanished entirely: no genuine cut
    }
    z.scale(1.0 / norm);
    let z_flat = z.svec();
    let mut residual = 0.0_f64;
    for b in comp_basis {
        residual = residual.max(dot(&z_flat, b).abs());
    }
    if residual > 50.0 * tol {
        // fall back: project out the W components, then re-clip once
        let mut zf = z_flat.clone();
        for b in comp_basis {
            let c = dot(&zf, b);
            linalg::axpy(-c, b, &mut zf);
        }
        let mut z2 = BlockVec::unsvec(shape, &zf);
        for m in z2.mats.iter_mut() {
            if m.rows == 0 {
                continue;
            }
            let spec = SymMat::from_dense(m).eig_sym().ok()?;
            let mut clipped = linalg::Mat::zeros(m.rows, m.rows);
            for k in 0..m.rows {
                let l = spec.eigenvalues[k].max(0.0);
                if l == 0.0 {
                    continue;
                }
                for i in 0..m.rows {
                    for j in 0..m.rows {
                        let v = clipped.get(i, j)
                            + l * spec.eigenvectors.get(i, k) * spec.eigenvectors.get(j, k);
                        clipped.set(i, j, v);
                    }
                }
            }
            *m = clipped;
        }
        for v in z2.orth.iter_mut() {
            *v = v.max(0.0);
        }
        let n2 = z2.norm();
        if n2 <= tol {
            return None;
        }
        z2.scale(1.0 / n2);
        let zf2 = z2.svec();
        let mut r2 = 0.0_f64;
        for b in comp_basis {
            r2 = r2.max(dot(&zf2, b).abs());
        }
        if r2 > 50.0 * tol {
            return None;
        }
        return Some((z2, r2));
    }
    Some((z, residual))
}

/// An affine infeasibility certificate for a pencil: a PSD matrix
/// orthogonal to every generator with strictly negative value on the
/// offset.
#[derive(Debug, Clone)]
pub struct AffineCertificate {
    pub mat: SymMat<f64>,
    pub value_on_a0: f64,
    pub margin: f64,
}

/// Result of the capped certificate search.
#[derive(Debug, Clone)]
pub enum SeparationOutcome {
    Certificate(AffineCertificate),
    /// No certificate within the norm cap at this tolerance. Explicitly NOT
    /// a proof that none exists.
    NotFound { diagnostic: String },
}

/// Search for an affine certificate: C PSD, <C, A_i> = 0 for i >= 1,
/// <C, A_0> = -1, trace C <= rho.
pub fn strong_separation(
    pencil: &Pencil<f64>,
    tol: f64,
    rho: f64,
    max_iters: usize,
) -> Result<SeparationOutcome, OracleError> {
    if !pencil.is_proper() {
        return Err(OracleError::Input("improper pencil".into()));
    }
    let d = pencil.dim();
    let n_flat = d * (d + 1) / 2;

    // affine set {svec C : <C, A_0> = -1, <C, A_i> = 0}
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(pencil.n_gens() + 1);
    rows.push(crate::model::svec_f64(pencil.a0()));
    for g in pencil.generators() {
        rows.push(crate::model::svec_f64(g));
    }
    let m = rows.len();
    let mut rhs = vec![0.0; m];
    rhs[0] = -1.0;
    let mut gram = linalg::Mat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            gram.set(i, j, dot(&rows[i], &rows[j]));
        }
    }
    let z = linalg::solve_spd(&gram, &rhs)
        .ok_or_else(|| OracleError::Input("degenerate pencil data".into()))?;
    let mut c0_flat = vec![0.0; n_flat];
    for (zi, row) in z.iter().zip(&rows) {
        linalg::axpy(*zi, row, &mut c0_flat);
    }
    let c0 = crate::model::unsvec_f64(d, &c0_flat);
    if c0.trace() >= rho - 1.0 {
        return Ok(SeparationOutcome::NotFound {
            diagnostic: format!(
                "norm cap {rho:.1e} below the minimum-norm candidate's trace {:.3e}",
                c0.trace()
            ),
        });
    }
    let dirs = Subspace::from_vectors(n_flat, &rows, 1e-10)
        .orthogonal_complement(1e-10);

    // dual-form SDP: max lambda s.t. blockdiag(C(v) - lambda I, rho - trace C(v)) >= 0
    let shape = ConeShape {
        psd: vec![d],
        orthant: 1,
    };
    let mut c_std = BlockVec::from_mat(&c0, vec![rho - c0.trace()]);
    c_std.symmetrize();
    let mut constraints = Vec::new();
    for dir in dirs.basis() {
        let mmat = crate::model::unsvec_f64(d, dir);
        let mut a = BlockVec::from_mat(&mmat.scale(&-1.0), vec![mmat.trace()]);
        a.symmetrize();
        constraints.push(a);
    }
    let mut a_lambda = BlockVec::from_mat(&SymMat::identity(d), vec![0.0]);
    a_lambda.symmetrize();
    constraints.push(a_lambda);
    let mut b = vec![0.0; dirs.dim()];
    b.push(1.0);

    // strictly feasible starts
    let mut z0 = shape.identity_vec();
    z0.scale(1.0 / d as f64);
    let lam0 = c0.eig_sym().map_err(|e| OracleError::Input(e.to_string()))?.eigenvalues[0] - 1.0;
    let mut s0 = BlockVec::from_mat(&c0, vec![rho - c0.trace()]);
    s0.mats[0] = {
        let mut m0 = s0.mats[0].clone();
        for i in 0..d {
            let v = m0.get(i, i) - lam0;
            m0.set(i, i, v);
        }
        m0
    };
    let mut y0 = vec![0.0; dirs.dim()];
    y0.push(lam0);

    let prob = SdpProblem {
        shape,
        c: c_std,
        constraints,
        b,
    };
    let cfg = SolverConfig {
        tol: solver_tol(tol),
        max_iters,
        ..SolverConfig::default()
    };
    let sol = match aux_sdp_solve(&prob, Some((z0, y0, s0)), &cfg) {
        Ok(s) => s,
        Err(e) => {
            return Ok(SeparationOutcome::NotFound {
                diagnostic: format!("solver did not converge: {e}"),
            })
        }
    };
    let lambda = 0.5 * (sol.primal_obj + sol.dual_obj);
    if lambda < -tol {
        return Ok(SeparationOutcome::NotFound {
            diagnostic: format!("best PSD margin within cap: {lambda:.3e}"),
        });
    }
    // candidate: S_block + lambda I, eigenvalue-clipped
    let mut cand = sol.s.mats[0].clone();
    for i in 0..d {
        let v = cand.get(i, i) + *sol.y.last().unwrap();
        cand.set(i, i, v);
    }
    let spec = SymMat::from_dense(&cand)
        .eig_sym()
        .map_err(|e| OracleError::Input(e.to_string()))?;
    let mut clipped = linalg::Mat::zeros(d, d);
    for k in 0..d {
        let l = spec.eigenvalues[k].max(0.0);
        if l == 0.0 {
            continue;
        }
        for i in 0..d {
            for j in 0..d {
                let v = clipped.get(i, j) + l * spec.eigenvectors.get(i, k) * spec.eigenvectors.get(j, k);
                clipped.set(i, j, v);
            }
        }
    }
    let c_final = SymMat::from_dense(&clipped);
    let value_on_a0 = crate::symmat::inner(&c_final, pencil.a0()).expect("dims agree");
    let cert = AffineCertificate {
        mat: c_final,
        value_on_a0,
        margin: lambda,
    };
    // re-verify before returning
    let vr = crate::certify::verify_affine_float(pencil, &cert, tol);
    if vr.valid {
        Ok(SeparationOutcome::Certificate(cert))
    } else {
        Ok(SeparationOutcome::NotFound {
            diagnostic: format!(
                "candidate failed re-verification ({:?})",
                vr.failed_check
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::FaceDescriptor;

    fn sym(rows: &[Vec<f64>]) -> SymMat<f64> {
        SymMat::from_rows(rows)
    }

    fn span_of(shape: &ConeShape, mats: &[SymMat<f64>]) -> Subspace {
        let vecs: Vec<Vec<f64>> = mats
            .iter()
            .map(|m| BlockVec::from_mat(m, vec![]).svec())
            .collect();
        Subspace::from_vectors(shape.svec_len(), &vecs, 1e-12)
    }

    #[test]
    fn interior_on_identity_span() {
        let shape = ConeShape::psd_only(&[2]);
        let w = span_of(&shape, &[SymMat::identity(2)]);
        let face = FaceDescriptor::full(&shape);
        let (out, diag) = relint_or_support(&w, &face, 1e-8, 200).unwrap();
        match out {
            OracleOutcome::Interior {
                point,
                min_eig_on_face,
            } => {
                assert!((min_eig_on_face - 0.5).abs() < 1e-6);
                assert!((point.mats[0].get(0, 0) - 0.5).abs() < 1e-6);
                assert!((diag.lambda_star - 0.5).abs() < 1e-6);
            }
            other => panic!("expected interior, got {other:?}"),
        }
    }

    #[test]
    fn support_on_rank_deficient_span() {
        let shape = ConeShape::psd_only(&[2]);
        let w = span_of(&shape, &[sym(&[vec![1.0, 0.0], vec![0.0, 0.0]])]);
        let face = FaceDescriptor::full(&shape);
        let (out, _) = relint_or_support(&w, &face, 1e-8, 200).unwrap();
        match out {
            OracleOutcome::Support { functional, residual } => {
                // unique supporting functional: E22
                assert!(functional.mats[0].get(0, 0).abs() < 1e-6);
                assert!(functional.mats[0].get(1, 1) > 0.9);
                assert!(residual <= 1e-7);
            }
            other => panic!("expected support, got {other:?}"),
        }
    }

    #[test]
    fn zero_only_on_traceless_span() {
        let shape = ConeShape::psd_only(&[2]);
        let w = span_of(&shape, &[sym(&[vec![1.0, 0.0], vec![0.0, -1.0]])]);
        let face = FaceDescriptor::full(&shape);
        let (out, _) = relint_or_support(&w, &face, 1e-8, 200).unwrap();
        match out {
            OracleOutcome::ZeroOnly { functional } => {
                // the identity works: PD and orthogonal to diag(1,-1)
                let min = functional.min_eig().unwrap();
                assert!(min > 1e-3);
            }
            other => panic!("expected zero-only, got {other:?}"),
        }
    }

    #[test]
    fn zero_only_via_negative_lambda() {
        // W = span{diag(1,-2)}: trace functional is nonzero on W but
        // F ∩ W = {0}; the mirrored solve must produce a PD functional
        // orthogonal to W.
        let shape = ConeShape::psd_only(&[2]);
        let w = span_of(&shape, &[sym(&[vec![1.0, 0.0], vec![0.0, -2.0]])]);
        let face = FaceDescriptor::full(&shape);
        let (out, _) = relint_or_support(&w, &face, 1e-8, 200).unwrap();
        match out {
            OracleOutcome::ZeroOnly { functional } => {
                assert!(functional.min_eig().unwrap() > 1e-4);
                let wv = BlockVec::from_mat(&sym(&[vec![1.0, 0.0], vec![0.0, -2.0]]), vec![]);
                let ip = functional.inner(&wv).abs();
                assert!(ip < 1e-6 * functional.norm() * wv.norm());
            }
            other => panic!("expected zero-only, got {other:?}"),
        }
    }

    #[test]
    fn unique_support_example_in_sym3() {
        // span{E11, [[0,0,-1],[0,1,0],[-1,0,0]]}: unique supporting
        // functional E33
        let shape = ConeShape::psd_only(&[3]);
        let g1 = sym(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ]);
        let g2 = sym(&[
            vec![0.0, 0.0, -1.0],
            vec![0.0, 1.0, 0.0],
            vec![-1.0, 0.0, 0.0],
        ]);
        let w = span_of(&shape, &[g1, g2]);
        let face = FaceDescriptor::full(&shape);
        let (out, _) = relint_or_support(&w, &face, 1e-8, 200).unwrap();
        match out {
            OracleOutcome::Support { functional, .. } => {
                let f = &functional.mats[0];
                assert!(f.get(2, 2) > 0.9, "expected E33, got {f:?}");
                for (i, j) in [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2)] {
                    assert!(f.get(i, j).abs() < 1e-6, "entry ({i},{j}) = {}", f.get(i, j));
                }
            }
            other => panic!("expected support, got {other:?}"),
        }
    }

    #[test]
    fn separation_finds_certificate() {
        // A0 = -I, A1 = offdiag: C = I/2 works
        let a0 = sym(&[vec![-1.0, 0.0], vec![0.0, -1.0]]);
        let a1 = sym(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let p = Pencil::new(a0, vec![a1]).unwrap();
        match strong_separation(&p, 1e-8, 1e6, 200).unwrap() {
            SeparationOutcome::Certificate(c) => {
                assert!(c.value_on_a0 < -0.5);
                assert!(c.mat.psd_check(1e-7).unwrap().is_psd());
            }
            SeparationOutcome::NotFound { diagnostic } => {
                panic!("certificate exists but search failed: {diagnostic}")
            }
        }
    }

    #[test]
    fn separation_not_found_for_weak_infeasibility() {
        // standard weakly infeasible pencil: no affine certificate exists
        let a0 = sym(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let a1 = sym(&[vec![0.0, 0.0], vec![0.0, 1.0]]);
        let p = Pencil::new(a0, vec![a1]).unwrap();
        match strong_separation(&p, 1e-8, 1e6, 200).unwrap() {
            SeparationOutcome::NotFound { .. } => {}
            SeparationOutcome::Certificate(c) => panic!("spurious certificate {c:?}"),
        }
    }

    #[test]
    fn separation_not_found_for_feasible() {
        let a0 = SymMat::identity(2);
        let a1 = sym(&[vec![1.0, 0.0], vec![0.0, 0.0]]);
        let p = Pencil::new(a0, vec![a1]).unwrap();
        match strong_separation(&p, 1e-8, 1e6, 200).unwrap() {
            SeparationOutcome::NotFound { .. } => {}
            SeparationOutcome::Certificate(c) => panic!("feasible pencil certified {c:?}"),
        }
    }
}
