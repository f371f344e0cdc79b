//! Facial reduction on homogenized systems, feasibility-type
//! classification, tangent-cone utilities, and the ground-truth instance
//! generator.
//!
//! The reduction loop walks down the face lattice of the product cone:
//! starting from the full cone and the homogeneous subspace W1, each step
//! asks the oracle for a relative-interior point of F ∩ W or a supporting
//! functional. Supporting functionals accumulate (their sum exposes the
//! intersection of the individual faces), so the emitted chain consists of
//! nested faces checkable from kernels alone.

pub mod generate;

pub use crate::cone::FaceDescriptor;
pub use generate::{generate_ground_truth, GroundTruth, InstanceKind};

use crate::cone::{BlockVec, ConeShape};
use crate::homogenize::{self, HomogeneousSystem};
use crate::linalg;
use crate::model::{svec_f64, unsvec_f64, Pencil};
use crate::oracle::{
    self, AffineCertificate, OracleError, OracleOutcome, SeparationOutcome,
};
use crate::symmat::{SymMat, Subspace};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FacialError {
    #[error("improper pencil: homogenization requires 0 not in L")]
    ImproperPencil,
    #[error("unresolved: {0}")]
    Unresolved(String),
    #[error("chain bound violated: {got} > {bound}")]
    BoundViolated { got: usize, bound: usize },
    #[error("invalid input: {0}")]
    Input(String),
}

impl From<OracleError> for FacialError {
    fn from(e: OracleError) -> Self {
        FacialError::Unresolved(e.to_string())
    }
}

/// One entry of an iterative infeasibility certificate on Sym^d x R:
/// a PSD matrix and a nonnegative scalar for the marker coordinate.
#[derive(Debug, Clone)]
pub struct ChainEntry {
    pub mat: SymMat<f64>,
    pub scalar: f64,
}

/// Sequence of cumulative supporting functionals (C_i, c_i) with nested
/// exposed faces; the terminal face certifies position at infinity.
#[derive(Debug, Clone)]
pub struct CertificateChain {
    pub entries: Vec<ChainEntry>,
}

impl CertificateChain {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Result of the facial reduction loop on a homogeneous system.
#[derive(Debug, Clone)]
pub struct Reduction {
    /// Cumulative supporting functionals, one per reduction step.
    pub chain: Vec<BlockVec>,
    pub terminal_face: FaceDescriptor,
    /// Relative-interior point of the minimal face meeting W (absent only
    /// in the zero-intersection case).
    pub relint_point: Option<BlockVec>,
    /// Interior dual functional vanishing on W when K ∩ W = {0}.
    pub zero_only: Option<BlockVec>,
    /// dim W_i per step, starting with W_1.
    pub w_dims: Vec<usize>,
    pub oracle_iterations: usize,
    pub borderline: bool,
}

/// Keep only the part of `w` inside the span of `face`.
fn restrict_to_face(w: &Subspace, face: &FaceDescriptor, tol: f64) -> Subspace {
    let shape = face.shape();
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
            gram.set(i, j, linalg::dot(&resid[i], &resid[j]));
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

/// Facial reduction on a raw homogeneous subspace of a product cone.
///
/// `chain_bound` is the hard upper bound on the number of reduction steps;
/// exceeding it is reported as an error, never silently accepted.
pub fn facial_reduce_subspace(
    shape: &ConeShape,
    w1: &Subspace,
    tol: f64,
    max_iters: usize,
    chain_bound: usize,
) -> Result<Reduction, FacialError> {
    if w1.ambient_dim() != shape.svec_len() {
        return Err(FacialError::Input(format!(
            "subspace ambient {} does not match cone svec dimension {}",
            w1.ambient_dim(),
            shape.svec_len()
        )));
    }
    let mut face = FaceDescriptor::full(shape);
    let mut w = w1.clone();
    let mut chain: Vec<BlockVec> = Vec::new();
    let mut w_dims = vec![w.dim()];
    let mut iterations = 0usize;
    let mut borderline = false;

    for _guard in 0..shape.degree() + 2 {
        let (outcome, diag) = oracle::relint_or_support(&w, &face, tol, max_iters)?;
        iterations += diag.iterations;
        borderline |= diag.borderline_margin;
        match outcome {
            OracleOutcome::Interior { point, .. } => {
                return Ok(Reduction {
                    chain,
                    terminal_face: face,
                    relint_point: Some(point),
                    zero_only: None,
                    w_dims,
                    oracle_iterations: iterations,
                    borderline,
                });
            }
            OracleOutcome::ZeroOnly { functional } => {
                if !chain.is_empty() {
                    // a genuine support step certifies K ∩ W nonzero, so a
                    // later zero intersection is a numerical contradiction
                    return Err(FacialError::Unresolved(
                        "zero intersection reported after a support step".into(),
                    ));
                }
                chain.push(functional.clone());
                let compressed = face.compress(&functional);
                let (terminal, _) = face.shrink_by(&compressed, tol);
                return Ok(Reduction {
                    chain,
                    terminal_face: terminal,
                    relint_point: None,
                    zero_only: Some(functional),
                    w_dims,
                    oracle_iterations: iterations,
                    borderline,
                });
            }
            OracleOutcome::Support { functional, .. } => {
                let cumulative = match chain.last() {
                    Some(prev) => {
                        let mut c = prev.clone();
                        // scale the step so neither term swamps the other
                        c.axpy(1.0, &functional);
                        c
                    }
                    None => functional.clone(),
                };
                let compressed = face.compress(&functional);
                let (new_face, progress) = face.shrink_by(&compressed, tol.max(1e-10));
                if !progress {
                    return Err(FacialError::Unresolved(
                        "supporting functional produced no strict face descent".into(),
                    ));
                }
                chain.push(cumulative);
                if chain.len() > chain_bound {
                    return Err(FacialError::BoundViolated {
                        got: chain.len(),
                        bound: chain_bound,
                    });
                }
                face = new_face;
                w = restrict_to_face(&w, &face, tol);
                w_dims.push(w.dim());
            }
        }
    }
    Err(FacialError::Unresolved(
        "facial reduction failed to terminate within the face-lattice depth".into(),
    ))
}

/// Facial reduction on a homogenized pencil system (product-cone embedding).
pub fn facial_reduce(
    system: &HomogeneousSystem,
    tol: f64,
    max_iters: usize,
) -> Result<Reduction, FacialError> {
    let d_bound = system.shape.psd.first().copied().unwrap_or(1);
    let bound = d_bound.min(system.subspace.dim());
    facial_reduce_subspace(&system.shape, &system.subspace, tol, max_iters, bound)
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FeasibilityType {
    StronglyFeasible,
    WeaklyFeasible,
    WeaklyInfeasible,
    StronglyInfeasible,
}

impl FeasibilityType {
    pub fn is_feasible(&self) -> bool {
        matches!(
            self,
            FeasibilityType::StronglyFeasible | FeasibilityType::WeaklyFeasible
        )
    }
}

#[derive(Debug, Clone)]
pub struct Diagnostics {
    pub tol: f64,
    pub max_iters: usize,
    pub rho: f64,
    pub oracle_iterations: usize,
    pub chain_length: Option<usize>,
    pub w_dims: Vec<usize>,
    pub borderline_margin: bool,
    /// Some(true) when the lifted-system infeasibility test agrees with the
    /// facial-reduction verdict; Some(false) flags a disagreement.
    pub lift_cross_check: Option<bool>,
    pub notes: Vec<String>,
}

/// Classification output: the feasibility type plus whatever witnesses and
/// certificates the pipeline produced.
#[derive(Debug, Clone)]
pub struct FeasibilityReport {
    pub feasibility: FeasibilityType,
    /// Meaningful only for infeasible types.
    pub stable: Option<bool>,
    pub witness: Option<Vec<f64>>,
    pub chain: Option<CertificateChain>,
    pub affine_certificate: Option<AffineCertificate>,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyConfig {
    pub tol: f64,
    pub max_iters: usize,
    pub rho: f64,
    /// Cross-check the verdict against the lifted-LMI infeasibility test.
    pub cross_check_lift: bool,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            tol: 1e-8,
            max_iters: 200,
            rho: 1e6,
            cross_check_lift: true,
        }
    }
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("improper pencil: classification requires 0 not in L")]
    ImproperPencil,
    #[error("unresolved: {0}")]
    Unresolved(String),
}

impl From<FacialError> for ClassifyError {
    fn from(e: FacialError) -> Self {
        match e {
            FacialError::ImproperPencil => ClassifyError::ImproperPencil,
            other => ClassifyError::Unresolved(other.to_string()),
        }
    }
}

/// Recover pencil coordinates x with A(x) = target; least squares on svec
/// coordinates, with the residual returned for verification.
pub fn pencil_coordinates(p: &Pencil<f64>, target: &SymMat<f64>) -> (Vec<f64>, f64) {
    let n = p.n_gens();
    if n == 0 {
        let resid = target.sub(p.a0()).frob_norm();
        return (Vec::new(), resid);
    }
    let cols: Vec<Vec<f64>> = p.generators().iter().map(svec_f64).collect();
    let rhs_mat = target.sub(p.a0());
    let rhs = svec_f64(&rhs_mat);
    let mut gram = linalg::Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram.set(i, j, linalg::dot(&cols[i], &cols[j]));
        }
    }
    let proj: Vec<f64> = cols.iter().map(|c| linalg::dot(c, &rhs)).collect();
    let x = linalg::solve_spd(&gram, &proj).unwrap_or_else(|| vec![0.0; n]);
    let mut resid = rhs;
    for (xi, c) in x.iter().zip(&cols) {
        linalg::axpy(-xi, c, &mut resid);
    }
    (x, linalg::norm2(&resid))
}

/// Classify the feasibility type of a pencil.
///
/// Decision tree: homogenize into Sym^d x R, run facial reduction, then
/// read the outcome off the terminal face and its relative-interior point.
/// A zero intersection gives stable infeasibility outright; an interior
/// point at the first step gives strong feasibility; otherwise the marker
/// coordinate of the relative-interior point decides feasible (rescale to
/// a witness) versus infeasible (position at infinity), and the capped
/// certificate search separates strong from weak infeasibility.
pub fn classify(p: &Pencil<f64>, cfg: &ClassifyConfig) -> Result<FeasibilityReport, ClassifyError> {
    if !p.is_proper() {
        return Err(ClassifyError::ImproperPencil);
    }
    let tol = cfg.tol;
    let scale = p.data_scale();
    let mut diagnostics = Diagnostics {
        tol,
        max_iters: cfg.max_iters,
        rho: cfg.rho,
        oracle_iterations: 0,
        chain_length: None,
        w_dims: Vec::new(),
        borderline_margin: false,
        lift_cross_check: None,
        notes: Vec::new(),
    };

    // degenerate pencil without generators: a single matrix
    if p.n_gens() == 0 {
        return classify_point(p, cfg, diagnostics);
    }

    let system = homogenize::embed_product(p).map_err(|_| ClassifyError::ImproperPencil)?;
    let reduction = facial_reduce(&system, tol, cfg.max_iters)?;
    diagnostics.oracle_iterations = reduction.oracle_iterations;
    diagnostics.w_dims = reduction.w_dims.clone();
    diagnostics.borderline_margin = reduction.borderline;

    let mut report = if let Some(zero_func) = &reduction.zero_only {
        // K ∩ W1 = {0}: stable infeasibility with a one-step certificate
        let c_mat = SymMat::from_dense(&zero_func.mats[0]);
        let c_scalar = zero_func.orth[0];
        // re-verify the stability claim independently before asserting it
        let pd_margin = c_mat
            .eig_sym()
            .map_err(|e| ClassifyError::Unresolved(e.to_string()))?
            .eigenvalues[0];
        let mut ortho_resid = 0.0_f64;
        for b in system.subspace.basis() {
            ortho_resid = ortho_resid.max(linalg::dot(&zero_func.svec(), b).abs());
        }
        if pd_margin <= tol || c_scalar <= tol || ortho_resid > 50.0 * tol {
            return Err(ClassifyError::Unresolved(format!(
                "stable certificate failed re-verification: pd margin {pd_margin:.3e}, marker {c_scalar:.3e}, orthogonality residual {ortho_resid:.3e}"
            )));
        }
        let value_on_a0 = crate::symmat::inner(&c_mat, p.a0()).expect("dims agree");
        let chain = CertificateChain {
            entries: vec![ChainEntry {
                mat: c_mat.clone(),
                scalar: c_scalar,
            }],
        };
        diagnostics.chain_length = Some(1);
        FeasibilityReport {
            feasibility: FeasibilityType::StronglyInfeasible,
            stable: Some(true),
            witness: None,
            chain: Some(chain),
            affine_certificate: Some(AffineCertificate {
                mat: c_mat,
                value_on_a0,
                margin: pd_margin,
            }),
            diagnostics: diagnostics.clone(),
        }
    } else {
        let point = reduction
            .relint_point
            .as_ref()
            .expect("reduction returns an interior point unless zero-only");
        let marker = point.orth[0];
        let point_norm = point.norm();
        if reduction.chain.is_empty() {
            // interior at the first step: strong feasibility
            let x_mat = SymMat::from_dense(&point.mats[0]);
            let witness_mat = x_mat.scale(&(1.0 / marker));
            let (x, resid) = pencil_coordinates(p, &witness_mat);
            if resid > 1e-6 * scale {
                return Err(ClassifyError::Unresolved(format!(
                    "interior witness does not lie in the pencil span (residual {resid:.3e})"
                )));
            }
            // independent re-verification of the witness
            let check = p
                .evaluate(&x)
                .psd_check(0.0)
                .map_err(|e| ClassifyError::Unresolved(e.to_string()))?;
            let min_eig = check.min_eig();
            if min_eig <= tol * scale {
                return Err(ClassifyError::Unresolved(format!(
                    "strong-feasibility witness re-verification failed (min eig {min_eig:.3e})"
                )));
            }
            FeasibilityReport {
                feasibility: FeasibilityType::StronglyFeasible,
                stable: None,
                witness: Some(x),
                chain: None,
                affine_certificate: None,
                diagnostics: diagnostics.clone(),
            }
        } else if marker > tol * (1.0 + point_norm) {
            // dehomogenizable: weakly feasible witness
            let x_mat = SymMat::from_dense(&point.mats[0]);
            let witness_mat = x_mat.scale(&(1.0 / marker));
            let (x, resid) = pencil_coordinates(p, &witness_mat);
            if resid > 1e-5 * scale {
                return Err(ClassifyError::Unresolved(format!(
                    "weak-feasibility witness residual too large ({resid:.3e})"
                )));
            }
            let check = p
                .evaluate(&x)
                .psd_check(100.0 * tol * scale)
                .map_err(|e| ClassifyError::Unresolved(e.to_string()))?;
            if !check.is_psd() {
                return Err(ClassifyError::Unresolved(format!(
                    "weak-feasibility witness not PSD within tolerance (min eig {:.3e})",
                    check.min_eig()
                )));
            }
            diagnostics.chain_length = Some(reduction.chain.len());
            FeasibilityReport {
                feasibility: FeasibilityType::WeaklyFeasible,
                stable: None,
                witness: Some(x),
                chain: None,
                affine_certificate: None,
                diagnostics: diagnostics.clone(),
            }
        } else {
            // minimal face at infinity: infeasible
            let chain = CertificateChain {
                entries: reduction
                    .chain
                    .iter()
                    .map(|f| ChainEntry {
                        mat: SymMat::from_dense(&f.mats[0]),
                        scalar: f.orth[0],
                    })
                    .collect(),
            };
            diagnostics.chain_length = Some(chain.len());
            match oracle::strong_separation(p, tol, cfg.rho, cfg.max_iters)
                .map_err(|e| ClassifyError::Unresolved(e.to_string()))?
            {
                SeparationOutcome::Certificate(cert) => FeasibilityReport {
                    feasibility: FeasibilityType::StronglyInfeasible,
                    stable: Some(false),
                    witness: None,
                    chain: Some(chain),
                    affine_certificate: Some(cert),
                    diagnostics: diagnostics.clone(),
                },
                SeparationOutcome::NotFound { diagnostic } => {
                    diagnostics
                        .notes
                        .push(format!("no affine certificate within norm cap: {diagnostic}"));
                    FeasibilityReport {
                        feasibility: FeasibilityType::WeaklyInfeasible,
                        stable: Some(false),
                        witness: None,
                        chain: Some(chain),
                        affine_certificate: None,
                        diagnostics: diagnostics.clone(),
                    }
                }
            }
        }
    };

    if cfg.cross_check_lift && p.n_gens() >= 1 {
        match homogenize::infeasible_by_lift(p, tol, cfg.max_iters) {
            Ok(lift_verdict) => {
                let agree = lift_verdict.is_feasible() == report.feasibility.is_feasible();
                report.diagnostics.lift_cross_check = Some(agree);
                if !agree {
                    report.diagnostics.notes.push(
                        "lifted-system verdict disagrees with facial reduction".into(),
                    );
                }
            }
            Err(e) => {
                report
                    .diagnostics
                    .notes
                    .push(format!("lift cross-check unresolved: {e}"));
            }
        }
    }
    Ok(report)
}

/// n = 0 pencils bypass homogenization: the feasible set is one matrix.
fn classify_point(
    p: &Pencil<f64>,
    cfg: &ClassifyConfig,
    mut diagnostics: Diagnostics,
) -> Result<FeasibilityReport, ClassifyError> {
    let scale = p.data_scale();
    let tol = cfg.tol * scale;
    let spec = p
        .a0()
        .eig_sym()
        .map_err(|e| ClassifyError::Unresolved(e.to_string()))?;
    let min_eig = spec.eigenvalues[0];
    if min_eig > tol {
        return Ok(FeasibilityReport {
            feasibility: FeasibilityType::StronglyFeasible,
            stable: None,
            witness: Some(Vec::new()),
            chain: None,
            affine_certificate: None,
            diagnostics,
        });
    }
    if min_eig >= -tol {
        return Ok(FeasibilityReport {
            feasibility: FeasibilityType::WeaklyFeasible,
            stable: None,
            witness: Some(Vec::new()),
            chain: None,
            affine_certificate: None,
            diagnostics,
        });
    }
    // a point off the cone is stably infeasible; build the interior dual
    // functional from the negative eigenspace plus a small multiple of I
    let d = p.dim();
    let neg_mass: f64 = spec.eigenvalues.iter().filter(|&&l| l < 0.0).sum();
    let trace = p.a0().trace();
    let eps = (0.5 * neg_mass.abs() / (1.0 + trace.abs())).min(1.0);
    let mut c = linalg::Mat::zeros(d, d);
    for k in 0..d {
        let weight = if spec.eigenvalues[k] < 0.0 { 1.0 } else { 0.0 } + eps;
        for i in 0..d {
            for j in 0..d {
                let v = c.get(i, j) + weight * spec.eigenvectors.get(i, k) * spec.eigenvectors.get(j, k);
                c.set(i, j, v);
            }
        }
    }
    let c_mat = SymMat::from_dense(&c);
    let value_on_a0 = crate::symmat::inner(&c_mat, p.a0()).expect("dims agree");
    debug_assert!(value_on_a0 < 0.0);
    diagnostics.chain_length = Some(1);
    Ok(FeasibilityReport {
        feasibility: FeasibilityType::StronglyInfeasible,
        stable: Some(true),
        witness: None,
        chain: Some(CertificateChain {
            entries: vec![ChainEntry {
                mat: c_mat.clone(),
                scalar: -value_on_a0,
            }],
        }),
        affine_certificate: Some(AffineCertificate {
            mat: c_mat,
            value_on_a0,
            margin: eps,
        }),
        diagnostics,
    })
}

// ---------------------------------------------------------------------------
// tangent cones
// ---------------------------------------------------------------------------

/// Lineality space of the tangent cone to Sym^d_+ at a proper face: in a
/// basis adapted to the kernel U, all symmetric matrices whose bottom-right
/// (dim U) x (dim U) block vanishes.
///
/// `m` must lie in the relative interior of the face (rank d - dim U with
/// kernel U); this is validated, not assumed.
pub fn tangent_cone_lineality(
    face: &FaceDescriptor,
    m: &SymMat<f64>,
    tol: f64,
) -> Result<Subspace, FacialError> {
    let shape = face.shape();
    if shape.psd.len() != 1 || shape.orthant != 0 {
        return Err(FacialError::Input(
            "tangent-cone utilities operate on a single PSD block".into(),
        ));
    }
    let d = shape.psd[0];
    let r = face.block_rank(0);
    if r == d {
        return Err(FacialError::Input(
            "face is not proper: the tangent cone at the full cone is the whole space".into(),
        ));
    }
    if m.dim() != d {
        return Err(FacialError::Input("relint point dimension mismatch".into()));
    }
    // validate m in relint(face): rank r, kernel = U
    let scale = m.opnorm().map_err(|e| FacialError::Input(e.to_string()))? + 1.0;
    let kernel = m
        .kernel_basis(tol)
        .map_err(|e| FacialError::Input(e.to_string()))?;
    if kernel.len() != d - r {
        return Err(FacialError::Input(format!(
            "matrix rank {} does not match the face rank {}",
            d - kernel.len(),
            r
        )));
    }
    let u = face.block_kernel(0);
    let uspan = Subspace::from_vectors(d, &u, 1e-12);
    for v in &kernel {
        if !uspan.contains(v, 100.0 * tol * scale) {
            return Err(FacialError::Input(
                "matrix kernel does not match the face kernel".into(),
            ));
        }
    }
    // Sym(U) basis, svec'd; the lineality is its orthogonal complement
    let n_flat = d * (d + 1) / 2;
    let mut sym_u: Vec<Vec<f64>> = Vec::new();
    for (a, ua) in u.iter().enumerate() {
        for ub in u.iter().skip(a) {
            let mut mat = SymMat::zeros(d);
            for i in 0..d {
                for j in i..d {
                    let v = 0.5 * (ua[i] * ub[j] + ub[i] * ua[j]);
                    mat.set(i, j, v);
                }
            }
            sym_u.push(svec_f64(&mat));
        }
    }
    let sym_u_span = Subspace::from_vectors(n_flat, &sym_u, 1e-10);
    Ok(sym_u_span.orthogonal_complement(1e-10))
}

/// Outcome of the single-cut test at a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separability {
    /// A single supporting hyperplane exposes exactly this face.
    SingleCut,
    /// The tangent cone obstructs one-step separation; a chain is required.
    NeedsChain,
}

/// Decide whether a supporting hyperplane exposing exactly `face` and
/// containing W exists: true iff the tangent cone meets W only inside the
/// lineality space, i.e. the kernel-compression of W meets the PSD cone of
/// the kernel block only at 0.
pub fn separability_at_face(
    w: &Subspace,
    face: &FaceDescriptor,
    m: &SymMat<f64>,
    tol: f64,
    max_iters: usize,
) -> Result<Separability, FacialError> {
    let shape = face.shape();
    if shape.psd.len() != 1 || shape.orthant != 0 {
        return Err(FacialError::Input(
            "separability test operates on a single PSD block".into(),
        ));
    }
    let d = shape.psd[0];
    let r = face.block_rank(0);
    if r == d {
        return Err(FacialError::Input("face is not proper".into()));
    }
    // certify what is checkable about minimality: m in W and m in relint(face)
    let m_flat = svec_f64(m);
    if !w.contains(&m_flat, 100.0 * tol * (1.0 + m.frob_norm())) {
        return Err(FacialError::Input(
            "relint point does not lie in the subspace; minimality not certified".into(),
        ));
    }
    let kernel = m
        .kernel_basis(tol)
        .map_err(|e| FacialError::Input(e.to_string()))?;
    if kernel.len() != d - r {
        return Err(FacialError::Input(
            "matrix is not in the relative interior of the face; minimality not certified".into(),
        ));
    }

    // compress W onto the kernel block
    let u = face.block_kernel(0);
    let du = u.len();
    let comp_shape = ConeShape::psd_only(&[du]);
    let mut comp_vecs = Vec::new();
    for v in w.basis() {
        let mat = unsvec_f64(d, v).to_dense();
        let mut comp = linalg::Mat::zeros(du, du);
        for a in 0..du {
            for b in 0..du {
                let mut acc = 0.0;
                for i in 0..d {
                    for j in 0..d {
                        acc += u[a][i] * mat.get(i, j) * u[b][j];
                    }
                }
                comp.set(a, b, acc);
            }
        }
        comp_vecs.push(BlockVec { mats: vec![comp], orth: vec![] }.svec());
    }
    let comp_w = Subspace::from_vectors(comp_shape.svec_len(), &comp_vecs, tol);
    if comp_w.dim() == 0 {
        return Ok(Separability::SingleCut);
    }
    let full = FaceDescriptor::full(&comp_shape);
    let (outcome, _) = oracle::relint_or_support(&comp_w, &full, tol, max_iters)?;
    Ok(match outcome {
        OracleOutcome::ZeroOnly { .. } => Separability::SingleCut,
        _ => Separability::NeedsChain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmat::SymMat;

    fn sym(rows: &[Vec<f64>]) -> SymMat<f64> {
        SymMat::from_rows(rows)
    }

    fn subspace_of(shape: &ConeShape, mats: &[SymMat<f64>]) -> Subspace {
        let vecs: Vec<Vec<f64>> = mats
            .iter()
            .map(|m| BlockVec::from_mat(m, vec![]).svec())
            .collect();
        Subspace::from_vectors(shape.svec_len(), &vecs, 1e-12)
    }

    fn biggerface_generators() -> (SymMat<f64>, SymMat<f64>) {
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
        (g1, g2)
    }

    #[test]
    fn reduce_unique_hyperplane_subspace() {
        // homogeneous subspace in Sym^3 whose reduction needs two steps:
        // first cut E33, then E22, landing on the ray of E11
        let shape = ConeShape::psd_only(&[3]);
        let (g1, g2) = biggerface_generators();
        let w = subspace_of(&shape, &[g1, g2]);
        let red = facial_reduce_subspace(&shape, &w, 1e-8, 200, 3).unwrap();
        assert_eq!(red.chain.len(), 2, "expected a two-step chain");
        // first functional is E33 up to scale
        let f1 = &red.chain[0].mats[0];
        assert!(f1.get(2, 2) > 0.9 * f1.get(2, 2).max(1e-9));
        assert!(f1.get(0, 0).abs() < 1e-6 && f1.get(1, 1).abs() < 1e-6);
        // terminal face is the ray spanned by E11
        assert_eq!(red.terminal_face.block_rank(0), 1);
        let point = red.relint_point.as_ref().unwrap();
        assert!(point.mats[0].get(0, 0) > 0.5);
        assert!(point.mats[0].get(1, 1).abs() < 1e-6);
        // strict W-dimension descent on the non-final steps
        assert!(red.w_dims[0] > red.w_dims[1]);
    }

    #[test]
    fn classify_identity_offset_is_strongly_feasible() {
        let p = Pencil::new(
            SymMat::identity(3),
            vec![sym(&[
                vec![1.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0],
            ])],
        )
        .unwrap();
        let rep = classify(&p, &ClassifyConfig::default()).unwrap();
        assert_eq!(rep.feasibility, FeasibilityType::StronglyFeasible);
        let x = rep.witness.unwrap();
        let check = p.evaluate(&x).psd_check(0.0).unwrap();
        assert!(check.min_eig() > 0.0);
        assert_eq!(rep.diagnostics.lift_cross_check, Some(true));
    }

    #[test]
    fn classify_standard_weakly_infeasible() {
        let p = Pencil::new(
            sym(&[vec![0.0, 1.0], vec![1.0, 0.0]]),
            vec![sym(&[vec![0.0, 0.0], vec![0.0, 1.0]])],
        )
        .unwrap();
        let rep = classify(&p, &ClassifyConfig::default()).unwrap();
        assert_eq!(rep.feasibility, FeasibilityType::WeaklyInfeasible);
        assert_eq!(rep.stable, Some(false));
        let chain = rep.chain.unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(rep.diagnostics.lift_cross_check, Some(true));
    }

    #[test]
    fn classify_constructed_stable_instance() {
        // C = I (PD), generators orthogonal to C, <C, A0> < 0
        let a0 = sym(&[vec![-1.0, 0.0], vec![0.0, -1.0]]);
        let a1 = sym(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let p = Pencil::new(a0, vec![a1]).unwrap();
        let rep = classify(&p, &ClassifyConfig::default()).unwrap();
        assert_eq!(rep.feasibility, FeasibilityType::StronglyInfeasible);
        assert_eq!(rep.stable, Some(true));
        assert_eq!(rep.chain.as_ref().unwrap().len(), 1);
        assert!(rep.affine_certificate.is_some());
    }

    #[test]
    fn classify_point_pencils() {
        let strong = Pencil::new(SymMat::identity(2), vec![]).unwrap();
        assert_eq!(
            classify(&strong, &ClassifyConfig::default())
                .unwrap()
                .feasibility,
            FeasibilityType::StronglyFeasible
        );
        let weak = Pencil::new(sym(&[vec![1.0, 0.0], vec![0.0, 0.0]]), vec![]).unwrap();
        assert_eq!(
            classify(&weak, &ClassifyConfig::default())
                .unwrap()
                .feasibility,
            FeasibilityType::WeaklyFeasible
        );
        let infeas = Pencil::new(sym(&[vec![1.0, 0.0], vec![0.0, -1.0]]), vec![]).unwrap();
        let rep = classify(&infeas, &ClassifyConfig::default()).unwrap();
        assert_eq!(rep.feasibility, FeasibilityType::StronglyInfeasible);
        assert_eq!(rep.stable, Some(true));
        let cert = rep.affine_certificate.unwrap();
        assert!(cert.value_on_a0 < 0.0);
        assert!(cert.mat.psd_check(1e-12).unwrap().is_psd());
    }

    #[test]
    fn improper_pencil_is_rejected() {
        let e11 = sym(&[vec![1.0, 0.0], vec![0.0, 0.0]]);
        let p = Pencil::new(e11.clone(), vec![e11]).unwrap_err();
        // dependent generators error from construction; improperness needs
        // a different construction
        let _ = p;
        let zero = SymMat::zeros(2);
        let gens = vec![
            sym(&[vec![1.0, 0.0], vec![0.0, 0.0]]),
            sym(&[vec![0.0, 0.0], vec![0.0, 1.0]]),
        ];
        let q = Pencil::new(zero, gens).unwrap();
        assert!(!q.is_proper());
        assert!(matches!(
            classify(&q, &ClassifyConfig::default()),
            Err(ClassifyError::ImproperPencil)
        ));
    }

    #[test]
    fn tangent_cone_examples() {
        // d=3, kernel U = span{e2, e3}, m = E11: lineality = matrices with
        // zero lower-right 2x2 block, dimension 3
        let shape = ConeShape::psd_only(&[3]);
        let full = FaceDescriptor::full(&shape);
        let e11 = sym(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ]);
        let functional = {
            // expose the face with kernel span{e2,e3} by cutting with
            // diag(0,1,1)
            let mut f = shape.zero_vec();
            f.mats[0].set(1, 1, 1.0);
            f.mats[0].set(2, 2, 1.0);
            f
        };
        let (face, progress) = full.shrink_by(&functional, 1e-9);
        assert!(progress);
        assert_eq!(face.block_rank(0), 1);
        let lin = tangent_cone_lineality(&face, &e11, 1e-9).unwrap();
        assert_eq!(lin.dim(), 3);
        // E11, E12+E21, E13+E31 are inside; E22 is not
        assert!(lin.contains(&svec_f64(&e11), 1e-8));
        let e22 = sym(&[
            vec![0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ]);
        assert!(!lin.contains(&svec_f64(&e22), 1e-8));

        // error path: full face is rejected
        assert!(tangent_cone_lineality(&full, &SymMat::identity(3), 1e-9).is_err());

        // d=2 example: U = span{e2}, m = E11 -> span{E11, E12+E21}, dim 2
        let shape2 = ConeShape::psd_only(&[2]);
        let full2 = FaceDescriptor::full(&shape2);
        let mut f2 = shape2.zero_vec();
        f2.mats[0].set(1, 1, 1.0);
        let (face2, _) = full2.shrink_by(&f2, 1e-9);
        let m2 = sym(&[vec![1.0, 0.0], vec![0.0, 0.0]]);
        let lin2 = tangent_cone_lineality(&face2, &m2, 1e-9).unwrap();
        assert_eq!(lin2.dim(), 2);
    }

    #[test]
    fn separability_examples() {
        let shape = ConeShape::psd_only(&[3]);
        let (g1, g2) = biggerface_generators();
        let w = subspace_of(&shape, &[g1.clone(), g2]);
        // minimal face: ray of E11 (kernel span{e2,e3})
        let full = FaceDescriptor::full(&shape);
        let mut f = shape.zero_vec();
        f.mats[0].set(1, 1, 1.0);
        f.mats[0].set(2, 2, 1.0);
        let (face, _) = full.shrink_by(&f, 1e-9);
        let m = g1;
        assert_eq!(
            separability_at_face(&w, &face, &m, 1e-8, 200).unwrap(),
            Separability::NeedsChain
        );

        // single rank-1 PSD generator: one cut suffices
        let shape2 = ConeShape::psd_only(&[2]);
        let vvt = sym(&[vec![1.0, 0.0], vec![0.0, 0.0]]);
        let w2 = subspace_of(&shape2, &[vvt.clone()]);
        let full2 = FaceDescriptor::full(&shape2);
        let mut f2 = shape2.zero_vec();
        f2.mats[0].set(1, 1, 1.0);
        let (face2, _) = full2.shrink_by(&f2, 1e-9);
        assert_eq!(
            separability_at_face(&w2, &face2, &vvt, 1e-8, 200).unwrap(),
            Separability::SingleCut
        );
    }
}
