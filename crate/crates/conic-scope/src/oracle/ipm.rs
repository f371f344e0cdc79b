//! Dense primal-dual interior-point solver for small conic programs over
//! products of PSD blocks and a nonnegative orthant.
//!
//! Standard form:
//!
//! ```text
//! (P)  min <C,X>   s.t.  <A_i,X> = b_i,  X in K
//! (D)  max b^T y   s.t.  sum_i y_i A_i + S = C,  S in K
//! ```
//!
//! Nesterov-Todd scaling with a Mehrotra-style predictor to pick the
//! centering parameter. Residuals enter the Newton system every iteration,
//! so slightly infeasible warm starts and floating-point drift are absorbed.
//! The method is deterministic: no randomness, fixed iteration recipe.

use crate::cone::{BlockVec, ConeShape};
use crate::linalg::{dot, norm2, solve_spd, Mat};
use crate::symmat::SymMat;
use thiserror::Error;

#[derive(Debug, Clone)]
pub struct SdpProblem {
    pub shape: ConeShape,
    pub c: BlockVec,
    pub constraints: Vec<BlockVec>,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Target for relative gap and residuals.
    pub tol: f64,
    pub max_iters: usize,
    /// Largest admissible single PSD block dimension.
    pub max_block_dim: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-10,
            max_iters: 200,
            max_block_dim: 60,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub x: BlockVec,
    pub y: Vec<f64>,
    pub s: BlockVec,
    pub primal_obj: f64,
    pub dual_obj: f64,
    pub gap: f64,
    pub primal_res: f64,
    pub dual_res: f64,
    pub iterations: usize,
}

#[derive(Debug, Error)]
pub enum SolverFailure {
    #[error(
        "iteration limit: {iterations} iterations, gap {gap:.3e}, primal residual {primal_res:.3e}, dual residual {dual_res:.3e}"
    )]
    IterationLimit {
        iterations: usize,
        gap: f64,
        primal_res: f64,
        dual_res: f64,
        last: Box<SdpSolution>,
    },
    #[error("block dimension {0} exceeds configured cap {1}")]
    CapExceeded(usize, usize),
    #[error("numerical breakdown: {0}")]
    Numerical(String),
}

struct Scaling {
    /// Dense symmetric NT scaling matrix per PSD block.
    w: Vec<Mat>,
    /// Orthant scaling w_i = sqrt(x_i/s_i).
    w_orth: Vec<f64>,
}

fn eig_of(m: &Mat) -> Result<(Vec<f64>, Mat), SolverFailure> {
    SymMat::from_dense(m)
        .eig_sym()
        .map(|s| (s.eigenvalues, s.eigenvectors))
        .map_err(|e| SolverFailure::Numerical(format!("eigendecomposition failed: {e}")))
}

/// Q f(L) Q^T for the spectral decomposition (L, Q).
fn spectral_apply(vals: &[f64], vecs: &Mat, f: impl Fn(f64) -> f64) -> Mat {
    let n = vals.len();
    let mut out = Mat::zeros(n, n);
    for k in 0..n {
        let fk = f(vals[k]);
        if fk == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = vecs.get(i, k) * fk;
            if vik == 0.0 {
                continue;
            }
            for j in 0..n {
                let v = out.get(i, j) + vik * vecs.get(j, k);
                out.set(i, j, v);
            }
        }
    }
    out
}

fn nt_scaling(x: &BlockVec, s: &BlockVec) -> Result<Scaling, SolverFailure> {
    let mut w = Vec::with_capacity(x.mats.len());
    for (xm, sm) in x.mats.iter().zip(&s.mats) {
        if xm.rows == 0 {
            w.push(Mat::zeros(0, 0));
            continue;
        }
        let (sv, sq) = eig_of(sm)?;
        if sv[0] <= 0.0 {
            return Err(SolverFailure::Numerical("dual iterate left the cone".into()));
        }
        let s_half = spectral_apply(&sv, &sq, f64::sqrt);
        let s_ihalf = spectral_apply(&sv, &sq, |v| 1.0 / v.sqrt());
        let t = s_half.matmul(xm).matmul(&s_half);
        let (tv, tq) = eig_of(&t)?;
        if tv[0] <= 0.0 {
            return Err(SolverFailure::Numerical("primal iterate left the cone".into()));
        }
        let t_half = spectral_apply(&tv, &tq, f64::sqrt);
        let mut wm = s_ihalf.matmul(&t_half).matmul(&s_ihalf);
        wm.symmetrize();
        w.push(wm);
    }
    let w_orth = x
        .orth
        .iter()
        .zip(&s.orth)
        .map(|(&xi, &si)| (xi / si).sqrt())
        .collect();
    Ok(Scaling { w, w_orth })
}

impl Scaling {
    /// W V W, the scaled conjugation per block.
    fn conj(&self, v: &BlockVec) -> BlockVec {
        let mats = self
            .w
            .iter()
            .zip(&v.mats)
            .map(|(w, m)| {
                if w.rows == 0 {
                    Mat::zeros(0, 0)
                } else {
                    let mut r = w.matmul(m).matmul(w);
                    r.symmetrize();
                    r
                }
            })
            .collect();
        let orth = self
            .w_orth
            .iter()
            .zip(&v.orth)
            .map(|(&wi, &vi)| wi * wi * vi)
            .collect();
        BlockVec { mats, orth }
    }
}

fn inverse_of(v: &BlockVec) -> Result<BlockVec, SolverFailure> {
    let mut mats = Vec::with_capacity(v.mats.len());
    for m in &v.mats {
        if m.rows == 0 {
            mats.push(Mat::zeros(0, 0));
            continue;
        }
        let (vals, vecs) = eig_of(m)?;
        if vals[0] <= 0.0 {
            return Err(SolverFailure::Numerical("singular iterate".into()));
        }
        mats.push(spectral_apply(&vals, &vecs, |v| 1.0 / v));
    }
    let orth = v.orth.iter().map(|&x| 1.0 / x).collect();
    Ok(BlockVec { mats, orth })
}

/// Largest alpha in (0, 1] with v + alpha*dv staying in the cone, shrunk by
/// the fraction-to-boundary factor.
fn max_step(v: &BlockVec, dv: &BlockVec, tau: f64) -> Result<f64, SolverFailure> {
    let mut alpha = 1.0_f64 / tau; // allow full step after scaling back
    for (m, dm) in v.mats.iter().zip(&dv.mats) {
        if m.rows == 0 {
            continue;
        }
        let (vals, vecs) = eig_of(m)?;
        if vals[0] <= 0.0 {
            return Err(SolverFailure::Numerical("iterate left the cone".into()));
        }
        let ihalf = spectral_apply(&vals, &vecs, |v| 1.0 / v.sqrt());
        let mut b = ihalf.matmul(dm).matmul(&ihalf);
        b.symmetrize();
        let (bv, _) = eig_of(&b)?;
        if bv[0] < 0.0 {
            alpha = alpha.min(-1.0 / bv[0]);
        }
    }
    for (&x, &dx) in v.orth.iter().zip(&dv.orth) {
        if dx < 0.0 {
            alpha = alpha.min(-x / dx);
        }
    }
    Ok((tau * alpha).min(1.0))
}

/// Solve the conic program; `start` optionally provides (X0, y0, S0) with
/// X0, S0 strictly inside the cone.
pub fn aux_sdp_solve(
    prob: &SdpProblem,
    start: Option<(BlockVec, Vec<f64>, BlockVec)>,
    cfg: &SolverConfig,
) -> Result<SdpSolution, SolverFailure> {
    let shape = &prob.shape;
    if shape.largest_block() > cfg.max_block_dim {
        return Err(SolverFailure::CapExceeded(
            shape.largest_block(),
            cfg.max_block_dim,
        ));
    }
    let m = prob.constraints.len();
    assert_eq!(m, prob.b.len());
    let nu = shape.degree().max(1) as f64;

    let (mut x, mut y, mut s) = match start {
        Some(t) => t,
        None => {
            let scale_b = norm2(&prob.b).max(1.0);
            let scale_c = prob.c.norm().max(1.0);
            let mut x0 = shape.identity_vec();
            x0.scale(scale_b.sqrt());
            let mut s0 = shape.identity_vec();
            s0.scale(scale_c);
            (x0, vec![0.0; m], s0)
        }
    };

    let norm_b = norm2(&prob.b);
    let norm_c = prob.c.norm();
    let apply_a = |v: &BlockVec| -> Vec<f64> {
        prob.constraints.iter().map(|a| a.inner(v)).collect()
    };
    let adj_a = |yv: &[f64]| -> BlockVec {
        let mut out = shape.zero_vec();
        for (ai, &yi) in prob.constraints.iter().zip(yv) {
            if yi != 0.0 {
                out.axpy(yi, ai);
            }
        }
        out
    };

    let fail = |iterations: usize,
                x: BlockVec,
                y: Vec<f64>,
                s: BlockVec,
                gap: f64,
                pres: f64,
                dres: f64,
                pobj: f64,
                dobj: f64| {
        SolverFailure::IterationLimit {
            iterations,
            gap,
            primal_res: pres,
            dual_res: dres,
            last: Box::new(SdpSolution {
                x,
                y,
                s,
                primal_obj: pobj,
                dual_obj: dobj,
                gap,
                primal_res: pres,
                dual_res: dres,
                iterations,
            }),
        }
    };

    let mut stalls = 0;
    let mut last_mu = f64::INFINITY;
    for iter in 0..cfg.max_iters {
        // residuals
        let ax = apply_a(&x);
        let rp: Vec<f64> = prob.b.iter().zip(&ax).map(|(bi, axi)| bi - axi).collect();
        let mut rd = prob.c.clone();
        rd.axpy(-1.0, &s);
        let aty = adj_a(&y);
        rd.axpy(-1.0, &aty);

        let gap = x.inner(&s);
        let pobj = prob.c.inner(&x);
        let dobj = dot(&prob.b, &y);
        let pres = norm2(&rp) / (1.0 + norm_b);
        let dres = rd.norm() / (1.0 + norm_c);
        let rel_gap = gap.abs() / (1.0 + pobj.abs() + dobj.abs());

        if rel_gap <= cfg.tol && pres <= cfg.tol && dres <= cfg.tol {
            return Ok(SdpSolution {
                x,
                y,
                s,
                primal_obj: pobj,
                dual_obj: dobj,
                gap,
                primal_res: pres,
                dual_res: dres,
                iterations: iter,
            });
        }

        let mu = gap / nu;
        if mu < last_mu * 0.99999 {
            stalls = 0;
        } else {
            stalls += 1;
        }
        last_mu = mu;
        if stalls >= 12 || !mu.is_finite() {
            return Err(fail(iter, x, y, s, gap, pres, dres, pobj, dobj));
        }

        // Any numerical breakdown from here on surfaces as a diagnosed
        // iteration limit rather than an opaque error: callers must treat
        // it as "unresolved", never as a verdict.
        let step = (|| -> Result<(BlockVec, Vec<f64>, BlockVec, f64, f64), SolverFailure> {
            let scaling = nt_scaling(&x, &s)?;
            let s_inv = inverse_of(&s)?;

        // Schur complement M_ij = <A_i, W A_j W>
        let waw: Vec<BlockVec> = prob.constraints.iter().map(|a| scaling.conj(a)).collect();
        let mut schur = Mat::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let v = prob.constraints[i].inner(&waw[j]);
                schur.set(i, j, v);
                schur.set(j, i, v);
            }
        }
        let w_rd_w = scaling.conj(&rd);

        let newton = |sigma_mu: f64| -> Option<(BlockVec, Vec<f64>, BlockVec)> {
            // Rc = sigma*mu*S^{-1} - X
            let mut rc = s_inv.clone();
            rc.scale(sigma_mu);
            rc.axpy(-1.0, &x);
            // rhs_i = rp_i - <A_i, Rc> + <A_i, W Rd W>
            let rhs: Vec<f64> = (0..m)
                .map(|i| rp[i] - prob.constraints[i].inner(&rc) + prob.constraints[i].inner(&w_rd_w))
                .collect();
            let dy = solve_spd(&schur, &rhs)?;
            // dS = Rd - A^T dy
            let mut ds = rd.clone();
            let at_dy = adj_a(&dy);
            ds.axpy(-1.0, &at_dy);
            // dX = Rc - W dS W
            let wdsw = scaling.conj(&ds);
            let mut dx = rc;
            dx.axpy(-1.0, &wdsw);
            dx.symmetrize();
            Some((dx, dy, ds))
        };

            // predictor (affine scaling)
            let (dx_aff, _dy_aff, ds_aff) = newton(0.0)
                .ok_or_else(|| SolverFailure::Numerical("Schur solve failed".into()))?;
            let ap_aff = max_step(&x, &dx_aff, 1.0)?;
            let ad_aff = max_step(&s, &ds_aff, 1.0)?;
            let mut x_trial = x.clone();
            x_trial.axpy(ap_aff, &dx_aff);
            let mut s_trial = s.clone();
            s_trial.axpy(ad_aff, &ds_aff);
            let mu_aff = x_trial.inner(&s_trial) / nu;
            let sigma = ((mu_aff / mu).powi(3)).clamp(1e-8, 0.99);

            // corrector
            let (dx, dy, ds) = newton(sigma * mu)
                .ok_or_else(|| SolverFailure::Numerical("Schur solve failed".into()))?;
            let tau = 0.98;
            let ap = max_step(&x, &dx, tau)?;
            let ad = max_step(&s, &ds, tau)?;
            Ok((dx, dy, ds, ap, ad))
        })();

        match step {
            Ok((dx, dy, ds, ap, ad)) => {
                x.axpy(ap, &dx);
                x.symmetrize();
                for (yi, di) in y.iter_mut().zip(&dy) {
                    *yi += ad * di;
                }
                s.axpy(ad, &ds);
                s.symmetrize();
            }
            Err(SolverFailure::Numerical(msg)) => {
                log::debug!("ipm numerical breakdown at iter {iter}: {msg}");
                return Err(fail(iter, x, y, s, gap, pres, dres, pobj, dobj));
            }
            Err(e) => return Err(e),
        }
    }

    let ax = apply_a(&x);
    let rp: Vec<f64> = prob.b.iter().zip(&ax).map(|(bi, axi)| bi - axi).collect();
    let mut rd = prob.c.clone();
    rd.axpy(-1.0, &s);
    let aty = adj_a(&y);
    rd.axpy(-1.0, &aty);
    let gap = x.inner(&s);
    let pres = norm2(&rp) / (1.0 + norm_b);
    let dres = rd.norm() / (1.0 + norm_c);
    let pobj = prob.c.inner(&x);
    let dobj = dot(&prob.b, &y);
    Err(SolverFailure::IterationLimit {
        iterations: cfg.max_iters,
        gap,
        primal_res: pres,
        dual_res: dres,
        last: Box::new(SdpSolution {
            x,
            y,
            s,
            primal_obj: pobj,
            dual_obj: dobj,
            gap,
            primal_res: pres,
            dual_res: dres,
            iterations: cfg.max_iters,
        }),
    })
}
