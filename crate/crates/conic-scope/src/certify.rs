//! Certificate verification (floating point and exact), rationalization of
//! certificates over rational pencils, and the empirical perturbation probe
//! for stability.
//!
//! Verification is independent of how certificates were produced: the
//! checks use only eigendecompositions, kernel inclusions, and subspace
//! intersections, and run in time polynomial in the pencil size.

use crate::cone::{BlockVec, ConeShape, FaceDescriptor};
use crate::facial::{self, CertificateChain};
use crate::homogenize;
use crate::linalg::{self, dot};
use crate::model::{svec_f64, unsvec_rat, Pencil};
use crate::oracle::AffineCertificate;
use crate::symmat::exact::{self, approx_rational, ExactPsd, Rat};
use crate::symmat::{SymMat, Subspace};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("dimension mismatch between pencil and certificate")]
    DimMismatch,
    #[error("mixed arithmetic: exact verification needs rational data")]
    MixedArithmetic,
}

/// Which check failed first, when verification rejects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedCheck {
    /// Chain entry i (1-based) is not in the dual cone.
    NotPsd(usize),
    /// Face of entry i is not contained in the face of entry i-1.
    FaceNotNested(usize),
    /// Entry i does not vanish on W_i, or fails to cut the previous face.
    SpanStep(usize),
    /// The terminal face is not at infinity (marker not pinned to zero).
    TerminalNotAtInfinity,
    /// Affine certificate sign conditions violated.
    AffineSignFail,
}

#[derive(Debug, Clone)]
pub struct VerificationResult {
    pub valid: bool,
    pub failed_check: Option<FailedCheck>,
    /// Named residuals for audit, in check order.
    pub residuals: Vec<(String, f64)>,
}

impl VerificationResult {
    fn ok(residuals: Vec<(String, f64)>) -> Self {
        VerificationResult {
            valid: true,
            failed_check: None,
            residuals,
        }
    }

    fn fail(check: FailedCheck, residuals: Vec<(String, f64)>) -> Self {
        VerificationResult {
            valid: false,
            failed_check: Some(check),
            residuals,
        }
    }
}

/// Face exposed by a chain entry, read off its kernel: eigenvectors of the
/// matrix part below threshold span the surviving support; a positive
/// scalar part pins the marker coordinate.
fn face_of_entry(
    shape: &ConeShape,
    mat: &SymMat<f64>,
    scalar: f64,
    tol: f64,
) -> Result<FaceDescriptor, CertifyError> {
    let full = FaceDescriptor::full(shape);
    let mut f = shape.zero_vec();
    f.mats[0] = mat.to_dense();
    f.orth[0] = scalar;
    let compressed = full.compress(&f);
    let (face, _) = full.shrink_by(&compressed, tol.max(1e-12));
    Ok(face)
}

/// Verify an iterative infeasibility certificate against a pencil.
///
/// Checks, in order: every entry lies in the dual cone; faces are nested
/// (kernel inclusion); each entry vanishes on the recursively built W_i and
/// genuinely cuts the previous face; the terminal face has its marker
/// coordinate pinned to zero, placing it at infinity.
pub fn verify_chain(
    pencil: &Pencil<f64>,
    chain: &CertificateChain,
    tol: f64,
) -> Result<VerificationResult, CertifyError> {
    let d = pencil.dim();
    if chain.entries.iter().any(|e| e.mat.dim() != d) {
        return Err(CertifyError::DimMismatch);
    }
    let mut residuals = Vec::new();
    if chain.entries.is_empty() {
        return Ok(VerificationResult::fail(
            FailedCheck::TerminalNotAtInfinity,
            residuals,
        ));
    }
    let shape = ConeShape {
        psd: vec![d],
        orthant: 1,
    };
    // W_1 = span of the embedded affine space
    let mut w_vecs = vec![BlockVec::from_mat(pencil.a0(), vec![1.0]).svec()];
    for g in pencil.generators() {
        w_vecs.push(BlockVec::from_mat(g, vec![0.0]).svec());
    }
    let mut w = Subspace::from_vectors(shape.svec_len(), &w_vecs, 1e-12);

    let mut prev_face: Option<FaceDescriptor> = None;
    for (idx, entry) in chain.entries.iter().enumerate() {
        let i = idx + 1;
        let entry_vec = {
            let mut v = shape.zero_vec();
            v.mats[0] = entry.mat.to_dense();
            v.orth[0] = entry.scalar;
            v
        };
        let scale = entry_vec.norm().max(1e-300);

        // (1) dual-cone membership
        let min_eig = entry
            .mat
            .psd_check(tol * scale)
            .map_err(|_| CertifyError::DimMismatch)?
            .min_eig();
        residuals.push((format!("psd_min_eig_{i}"), min_eig));
        if min_eig < -tol * scale || entry.scalar < -tol * scale {
            return Ok(VerificationResult::fail(FailedCheck::NotPsd(i), residuals));
        }

        let face = face_of_entry(&shape, &entry.mat, entry.scalar, tol)?;

        // (2) nesting via kernels: the new face must sit inside the old one
        if let Some(prev) = &prev_face {
            let nested = face.is_subface_of(prev, 1e-6);
            residuals.push((format!("nested_{i}"), if nested { 0.0 } else { 1.0 }));
            if !nested {
                return Ok(VerificationResult::fail(
                    FailedCheck::FaceNotNested(i),
                    residuals,
                ));
            }
        }

        // (3) vanishing on W_i
        let entry_flat = entry_vec.svec();
        let mut vanish = 0.0_f64;
        for b in w.basis() {
            vanish = vanish.max(dot(&entry_flat, b).abs());
        }
        residuals.push((format!("vanish_{i}"), vanish / scale));
        if vanish > 100.0 * tol * scale {
            return Ok(VerificationResult::fail(FailedCheck::SpanStep(i), residuals));
        }

        // (4) genuine cut: nonzero restriction to the previous face span
        let restriction = match &prev_face {
            Some(prev) => prev.project_span(&entry_vec).norm(),
            None => scale,
        };
        residuals.push((format!("cut_{i}"), restriction / scale));
        if restriction <= tol * scale {
            return Ok(VerificationResult::fail(FailedCheck::SpanStep(i), residuals));
        }

        // W_{i+1} = W_i ∩ lspan(F_i)
        w = restrict_subspace(&w, &face, &shape, tol);
        prev_face = Some(face);
    }

    // terminal face at infinity: marker coordinate pinned
    let terminal = prev_face.expect("nonempty chain");
    let pinned = terminal.active()[0];
    residuals.push(("terminal_marker_pinned".into(), if pinned { 0.0 } else { 1.0 }));
    if !pinned {
        return Ok(VerificationResult::fail(
            FailedCheck::TerminalNotAtInfinity,
            residuals,
        ));
    }
    Ok(VerificationResult::ok(residuals))
}

fn restrict_subspace(w: &Subspace, face: &FaceDescriptor, shape: &ConeShape, tol: f64) -> Subspace {
    let k = w.dim();
    if k == 0 {
        return Subspace::zero(w.ambient_dim());
    }
    let resid: Vec<Vec<f64>> = w
        .basis()
        .iter()
        .map(|v| {
            let amb = BlockVec::unsvec(shape, v);
            let proj = face.project_span(&amb).svec();
            let mut r = v.clone();
            linalg::axpy(-1.0, &proj, &mut r);
            r
        })
        .collect();
    let mut gram = linalg::Mat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, dot(&resid[i], &resid[j]));
        }
    }
    let combos = SymMat::from_dense(&gram)
        .kernel_basis(tol * tol)
        .unwrap_or_default();
    let vectors: Vec<Vec<f64>> = combos
        .iter()
        .map(|c| {
            let mut v = vec![0.0; w.ambient_dim()];
            for (ci, b) in c.iter().zip(w.basis()) {
                linalg::axpy(*ci, b, &mut v);
            }
            let amb = BlockVec::unsvec(shape, &v);
            face.project_span(&amb).svec()
        })
        .collect();
    Subspace::from_vectors(w.ambient_dim(), &vectors, tol)
}

/// Float-mode affine certificate verification: C PSD within tolerance,
/// orthogonal to every generator, strictly negative on the offset.
pub fn verify_affine_float(
    pencil: &Pencil<f64>,
    cert: &AffineCertificate,
    tol: f64,
) -> VerificationResult {
    let mut residuals = Vec::new();
    if cert.mat.dim() != pencil.dim() {
        return VerificationResult::fail(FailedCheck::AffineSignFail, residuals);
    }
    let scale = cert.mat.frob_norm().max(1e-300);
    let min_eig = match cert.mat.psd_check(tol * scale) {
        Ok(r) => r.min_eig(),
        Err(_) => {
            return VerificationResult::fail(FailedCheck::NotPsd(1), residuals);
        }
    };
    residuals.push(("psd_min_eig".into(), min_eig));
    if min_eig < -tol * scale {
        return VerificationResult::fail(FailedCheck::NotPsd(1), residuals);
    }
    for (k, g) in pencil.generators().iter().enumerate() {
        let ip = crate::symmat::inner(&cert.mat, g).expect("dims agree");
        residuals.push((format!("orth_{}", k + 1), ip.abs()));
        if ip.abs() > 100.0 * tol * scale * g.frob_norm().max(1.0) {
            return VerificationResult::fail(FailedCheck::SpanStep(k + 1), residuals);
        }
    }
    let v0 = crate::symmat::inner(&cert.mat, pencil.a0()).expect("dims agree");
    residuals.push(("value_on_a0".into(), v0));
    if v0 >= -tol * scale * pencil.a0().frob_norm().max(1.0) {
        return VerificationResult::fail(FailedCheck::AffineSignFail, residuals);
    }
    VerificationResult::ok(residuals)
}

/// Exact-mode affine certificate verification over the rationals; zero
/// tolerance everywhere.
pub fn verify_affine_exact(pencil: &Pencil<Rat>, cert: &SymMat<Rat>) -> VerificationResult {
    let mut residuals = Vec::new();
    if cert.dim() != pencil.a0().dim() {
        return VerificationResult::fail(FailedCheck::AffineSignFail, residuals);
    }
    match cert.psd_check_exact() {
        ExactPsd::Psd => residuals.push(("psd_exact".into(), 0.0)),
        ExactPsd::NotPsd { witness } => {
            let q = cert.quad_form(&witness);
            residuals.push(("psd_exact_violation".into(), q.to_f64().unwrap_or(-1.0)));
            return VerificationResult::fail(FailedCheck::NotPsd(1), residuals);
        }
    }
    for (k, g) in pencil.generators().iter().enumerate() {
        let ip = crate::symmat::inner(cert, g).expect("dims agree");
        if !ip.is_zero() {
            residuals.push((format!("orth_{}", k + 1), ip.to_f64().unwrap_or(f64::NAN)));
            return VerificationResult::fail(FailedCheck::SpanStep(k + 1), residuals);
        }
    }
    let v0 = crate::symmat::inner(cert, pencil.a0()).expect("dims agree");
    residuals.push(("value_on_a0".into(), v0.to_f64().unwrap_or(f64::NAN)));
    if !v0.is_negative() {
        return VerificationResult::fail(FailedCheck::AffineSignFail, residuals);
    }
    VerificationResult::ok(residuals)
}

/// Outcome of certificate rationalization.
#[derive(Debug, Clone)]
pub enum RationalizeOutcome {
    Rational(SymMat<Rat>),
    Failed { best_residual: f64 },
}

impl RationalizeOutcome {
    pub fn is_rational(&self) -> bool {
        matches!(self, RationalizeOutcome::Rational(_))
    }
}

/// Round a floating-point certificate to an exact rational one.
///
/// The float matrix is projected onto the exact rational subspace
/// orthogonal to all generators (so the linear conditions hold by
/// construction), its coordinates are rounded by continued fractions
/// through denominators 10, 100, ..., max_den, and each candidate passes
/// exact verification before being returned.
pub fn rationalize_certificate(
    pencil: &Pencil<Rat>,
    c_float: &SymMat<f64>,
    max_den: u64,
) -> RationalizeOutcome {
    let d = pencil.a0().dim();
    if c_float.dim() != d {
        return RationalizeOutcome::Failed {
            best_residual: f64::INFINITY,
        };
    }
    // exact basis of { C : <C, A_i> = 0 for all i >= 1 }
    let rows: Vec<Vec<Rat>> = pencil
        .generators()
        .iter()
        .map(|g| {
            // functional row on packed coordinates: diag weight 1, offdiag 2
            let dd = g.dim();
            let two = Rat::from_integer(2.into());
            let mut row = Vec::with_capacity(dd * (dd + 1) / 2);
            for i in 0..dd {
                for j in i..dd {
                    let v = g.get(i, j);
                    row.push(if i == j { v } else { v * &two });
                }
            }
            row
        })
        .collect();
    let basis = if rows.is_empty() {
        let nf = d * (d + 1) / 2;
        (0..nf)
            .map(|k| {
                let mut v = vec![Rat::zero(); nf];
                v[k] = Rat::from_integer(1.into());
                v
            })
            .collect::<Vec<_>>()
    } else {
        exact::nullspace(&rows)
    };
    if basis.is_empty() {
        return RationalizeOutcome::Failed {
            best_residual: f64::INFINITY,
        };
    }
    let basis_mats: Vec<SymMat<Rat>> = basis.iter().map(|v| unsvec_rat(d, v)).collect();
    let basis_f64: Vec<Vec<f64>> = basis_mats
        .iter()
        .map(|m| svec_f64(&m.to_f64()))
        .collect();
    // float projection coordinates
    let k = basis_f64.len();
    let mut gram = linalg::Mat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, dot(&basis_f64[i], &basis_f64[j]));
        }
    }
    let target = svec_f64(c_float);
    let rhs: Vec<f64> = basis_f64.iter().map(|b| dot(b, &target)).collect();
    let Some(coords) = linalg::solve_spd(&gram, &rhs) else {
        return RationalizeOutcome::Failed {
            best_residual: f64::INFINITY,
        };
    };

    let mut best_residual = f64::INFINITY;
    let mut dens: Vec<u64> = Vec::new();
    let mut den = 10u64;
    while den < max_den {
        dens.push(den);
        den = den.saturating_mul(10);
    }
    dens.push(max_den);
    for den in dens {
        let mut cand = SymMat::zeros(d);
        for (a, bm) in coords.iter().zip(&basis_mats) {
            let q = approx_rational(*a, den);
            cand = cand.add(&bm.scale(&q));
        }
        let v0 = crate::symmat::inner(&cand, pencil.a0()).expect("dims agree");
        if !v0.is_negative() {
            best_residual = best_residual.min(1.0);
            continue;
        }
        match cand.psd_check_exact() {
            ExactPsd::Psd => {
                let vr = verify_affine_exact(pencil, &cand);
                if vr.valid {
                    return RationalizeOutcome::Rational(cand);
                }
                best_residual = best_residual.min(1.0);
            }
            ExactPsd::NotPsd { witness } => {
                let q = cand.quad_form(&witness);
                let wnorm: Rat = witness.iter().map(|w| w * w).sum();
                let viol = (-q / wnorm).to_f64().unwrap_or(1.0);
                best_residual = best_residual.min(viol.abs());
            }
        }
    }
    RationalizeOutcome::Failed { best_residual }
}

/// Counts from the perturbation probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ProbeCounts {
    pub feasible: usize,
    pub infeasible: usize,
    pub unresolved: usize,
}

/// Classify feasibility of entrywise-perturbed copies of the pencil.
///
/// Perturbations are uniform in [-radius, radius] on every stored entry of
/// A0..An (a chart-level model of a neighborhood in the space of affine
/// subspaces). Sample i draws from a stream derived from (seed, i), so the
/// counts are independent of evaluation order and thread count.
pub fn perturbation_probe(
    pencil: &Pencil<f64>,
    radius: f64,
    samples: usize,
    seed: u64,
    tol: f64,
    max_iters: usize,
    threads: usize,
) -> ProbeCounts {
    assert!(radius >= 0.0, "radius must be nonnegative");
    assert!(samples >= 1, "need at least one sample");
    let run_one = |i: usize| -> (usize, usize, usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(
            seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1),
        );
        let mut perturb = |m: &SymMat<f64>| -> SymMat<f64> {
            let d = m.dim();
            let mut out = m.clone();
            for r in 0..d {
                for c in r..d {
                    let noise: f64 = if radius > 0.0 {
                        rng.gen_range(-radius..=radius)
                    } else {
                        0.0
                    };
                    out.set(r, c, m.get(r, c) + noise);
                }
            }
            out
        };
        let a0 = perturb(pencil.a0());
        let gens: Vec<SymMat<f64>> = pencil.generators().iter().map(&mut perturb).collect();
        let p = match Pencil::new(a0, gens) {
            Ok(p) => p,
            Err(_) => return (0, 0, 1),
        };
        if p.n_gens() == 0 {
            let scale = p.data_scale();
            return match p.a0().psd_check(tol * scale) {
                Ok(r) if r.is_psd() => (1, 0, 0),
                Ok(_) => (0, 1, 0),
                Err(_) => (0, 0, 1),
            };
        }
        if !p.is_proper() {
            return (0, 0, 1);
        }
        match homogenize::infeasible_by_lift(&p, tol, max_iters) {
            Ok(v) if v.is_feasible() => (1, 0, 0),
            Ok(_) => (0, 1, 0),
            Err(_) => (0, 0, 1),
        }
    };

    let fold = |acc: ProbeCounts, t: (usize, usize, usize)| ProbeCounts {
        feasible: acc.feasible + t.0,
        infeasible: acc.infeasible + t.1,
        unresolved: acc.unresolved + t.2,
    };

    #[cfg(feature = "parallel")]
    if threads > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build();
        if let Ok(pool) = pool {
            return pool.install(|| {
                (0..samples)
                    .into_par_iter()
                    .map(run_one)
                    .fold(ProbeCounts::default, fold)
                    .reduce(ProbeCounts::default, |a, b| ProbeCounts {
                        feasible: a.feasible + b.feasible,
                        infeasible: a.infeasible + b.infeasible,
                        unresolved: a.unresolved + b.unresolved,
                    })
            });
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;

    (0..samples).map(run_one).fold(ProbeCounts::default(), fold)
}

/// Check that emitted chains verify, as a one-call convenience for tests
/// and the report pipeline.
pub fn self_check_chain(pencil: &Pencil<f64>, tol: f64) -> Result<bool, CertifyError> {
    let cfg = facial::ClassifyConfig {
        tol,
        cross_check_lift: false,
        ..Default::default()
    };
    match facial::classify(pencil, &cfg) {
        Ok(rep) => match rep.chain {
            Some(chain) => Ok(verify_chain(pencil, &chain, tol)?.valid),
            None => Ok(true),
        },
        Err(_) => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facial::{classify, ChainEntry, ClassifyConfig, FeasibilityType};
    use crate::symmat::exact::rat_i;

    fn sym(rows: &[Vec<f64>]) -> SymMat<f64> {
        SymMat::from_rows(rows)
    }

    fn standard_weak() -> Pencil<f64> {
        Pencil::new(
            sym(&[vec![0.0, 1.0], vec![1.0, 0.0]]),
            vec![sym(&[vec![0.0, 0.0], vec![0.0, 1.0]])],
        )
        .unwrap()
    }

    fn weak_chain() -> CertificateChain {
        let p = standard_weak();
        classify(&p, &ClassifyConfig::default())
            .unwrap()
            .chain
            .unwrap()
    }

    #[test]
    fn emitted_chain_verifies() {
        let p = standard_weak();
        let chain = weak_chain();
        let vr = verify_chain(&p, &chain, 1e-8).unwrap();
        assert!(vr.valid, "failed: {:?} {:?}", vr.failed_check, vr.residuals);
    }

    #[test]
    fn truncated_chain_fails_terminal_check() {
        let p = standard_weak();
        let mut chain = weak_chain();
        chain.entries.pop();
        let vr = verify_chain(&p, &chain, 1e-8).unwrap();
        assert!(!vr.valid);
        assert_eq!(vr.failed_check, Some(FailedCheck::TerminalNotAtInfinity));
    }

    #[test]
    fn indefinite_entry_fails_psd_check() {
        let p = standard_weak();
        let mut chain = weak_chain();
        chain.entries[0].mat = sym(&[vec![1.0, 0.0], vec![0.0, -1.0]]);
        let vr = verify_chain(&p, &chain, 1e-8).unwrap();
        assert_eq!(vr.failed_check, Some(FailedCheck::NotPsd(1)));
    }

    #[test]
    fn affine_verification_examples() {
        let p = Pencil::new(
            sym(&[vec![-1.0, 0.0], vec![0.0, -1.0]]),
            vec![sym(&[vec![0.0, 1.0], vec![1.0, 0.0]])],
        )
        .unwrap();
        let good = AffineCertificate {
            mat: SymMat::identity(2),
            value_on_a0: -2.0,
            margin: 1.0,
        };
        assert!(verify_affine_float(&p, &good, 1e-8).valid);
        let bad = AffineCertificate {
            mat: sym(&[vec![1.0, 0.0], vec![0.0, -1.0]]),
            value_on_a0: 0.0,
            margin: 0.0,
        };
        let vr = verify_affine_float(&p, &bad, 1e-8);
        assert_eq!(vr.failed_check, Some(FailedCheck::NotPsd(1)));
    }

    #[test]
    fn exact_affine_verification() {
        // rational pencil: A0 = -I, A1 = offdiag; certificate I
        let mut a0 = SymMat::zeros(2);
        a0.set(0, 0, rat_i(-1));
        a0.set(1, 1, rat_i(-1));
        let mut a1 = SymMat::zeros(2);
        a1.set(0, 1, rat_i(1));
        let p = Pencil::new_rational(a0, vec![a1]).unwrap();
        let cert = SymMat::identity_rational(2);
        assert!(verify_affine_exact(&p, &cert).valid);
        let mut bad = SymMat::zeros(2);
        bad.set(0, 0, rat_i(1));
        bad.set(1, 1, rat_i(-1));
        assert!(!verify_affine_exact(&p, &bad).valid);
    }

    #[test]
    fn rationalize_identity_certificate() {
        let mut a0 = SymMat::zeros(2);
        a0.set(0, 0, rat_i(-1));
        a0.set(1, 1, rat_i(-1));
        let mut a1 = SymMat::zeros(2);
        a1.set(0, 1, rat_i(1));
        let p = Pencil::new_rational(a0, vec![a1]).unwrap();
        let c_float = SymMat::identity(2);
        match rationalize_certificate(&p, &c_float, 100) {
            RationalizeOutcome::Rational(c) => {
                assert!(verify_affine_exact(&p, &c).valid);
            }
            RationalizeOutcome::Failed { best_residual } => {
                panic!("rationalization failed with residual {best_residual}")
            }
        }
    }

    #[test]
    fn probe_zero_radius_reproduces_verdict() {
        let p = standard_weak();
        let counts = perturbation_probe(&p, 0.0, 5, 3, 1e-8, 200, 1);
        assert_eq!(counts.infeasible, 5);
        assert_eq!(counts.feasible, 0);
        assert_eq!(counts.unresolved, 0);
    }

    #[test]
    fn probe_weak_instance_sees_both_sides() {
        let p = standard_weak();
        let counts = perturbation_probe(&p, 1e-4, 60, 1, 1e-8, 200, 1);
        assert!(counts.feasible > 0, "{counts:?}");
        assert!(counts.infeasible > 0, "{counts:?}");
    }

    #[test]
    fn probe_deterministic_across_threads() {
        let p = standard_weak();
        let serial = perturbation_probe(&p, 1e-4, 24, 9, 1e-8, 200, 1);
        let parallel = perturbation_probe(&p, 1e-4, 24, 9, 1e-8, 200, 4);
        assert_eq!(serial, parallel);
    }

    #[test]
    fn tampered_chain_detection_manual() {
        // scalar-flip tampering on the stable-instance chain
        let a0 = sym(&[vec![-1.0, 0.0], vec![0.0, -1.0]]);
        let a1 = sym(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let p = Pencil::new(a0, vec![a1]).unwrap();
        let rep = classify(&p, &ClassifyConfig::default()).unwrap();
        assert_eq!(rep.feasibility, FeasibilityType::StronglyInfeasible);
        let chain = rep.chain.unwrap();
        assert!(verify_chain(&p, &chain, 1e-8).unwrap().valid);
        let mut tampered = chain.clone();
        tampered.entries[0] = ChainEntry {
            mat: tampered.entries[0].mat.scale(&-1.0),
            scalar: tampered.entries[0].scalar,
        };
        assert!(!verify_chain(&p, &tampered, 1e-8).unwrap().valid);
    }
}
