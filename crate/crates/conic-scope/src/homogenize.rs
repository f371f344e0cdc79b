//! Lifting constructions: the linear span of a pencil, the product-cone
//! embedding Sym^d x R_+ that kills the -K branch structurally, the lifted
//! LMI whose solution cone collapses to the r-ray exactly when the pencil
//! is infeasible, and hull representations for projections of spectrahedra.

use crate::cone::{BlockVec, ConeShape};
use crate::facial;
use crate::linalg;
use crate::model::{svec_f64, unsvec_f64, ModelError, Pencil, ProjSpecRep};
use crate::symmat::{SymMat, Subspace};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomogenizeError {
    #[error("improper pencil: the affine space contains the origin")]
    ImproperPencil,
    #[error("pencil has no generators; use a direct PSD test instead")]
    NoGenerators,
    #[error("unresolved: {0}")]
    Unresolved(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A homogeneous feasibility system: a subspace W of a product-cone ambient
/// space, with an optional marker coordinate tracking dehomogenization.
#[derive(Debug, Clone)]
pub struct HomogeneousSystem {
    pub shape: ConeShape,
    pub subspace: Subspace,
    /// Index into the orthant coordinates of the marker x0, when present.
    pub marker: Option<usize>,
    /// Image of lin(L): the part of the subspace with marker zero.
    pub lin_part: Subspace,
}

/// Linear span of the pencil's affine space inside Sym^d: span{A0, A1..An}.
pub fn span_lift(p: &Pencil<f64>) -> Result<Subspace, HomogenizeError> {
    if !p.is_proper() {
        return Err(HomogenizeError::ImproperPencil);
    }
    let n_flat = p.dim() * (p.dim() + 1) / 2;
    let mut vecs = vec![svec_f64(p.a0())];
    for g in p.generators() {
        vecs.push(svec_f64(g));
    }
    Ok(Subspace::from_vectors(n_flat, &vecs, 1e-12))
}

/// Product-cone embedding of Cor-style homogenization: map A to (A, 1) in
/// Sym^d + R, take the span of the image of L, and track lin(L) as the
/// marker-zero part. The appended coordinate makes (-K) ∩ L' empty by
/// construction.
pub fn embed_product(p: &Pencil<f64>) -> Result<HomogeneousSystem, HomogenizeError> {
    if !p.is_proper() {
        return Err(HomogenizeError::ImproperPencil);
    }
    let shape = ConeShape {
        psd: vec![p.dim()],
        orthant: 1,
    };
    let mut vecs = Vec::with_capacity(p.n_gens() + 1);
    vecs.push(BlockVec::from_mat(p.a0(), vec![1.0]).svec());
    for g in p.generators() {
        vecs.push(BlockVec::from_mat(g, vec![0.0]).svec());
    }
    let subspace = Subspace::from_vectors(shape.svec_len(), &vecs, 1e-12);
    let lin_part = Subspace::from_vectors(shape.svec_len(), &vecs[1..], 1e-12);
    debug_assert_eq!(subspace.dim(), p.n_gens() + 1);
    Ok(HomogeneousSystem {
        shape,
        subspace,
        marker: Some(0),
        lin_part,
    })
}

/// The lifted LMI in variables (x0, x1..xn, r): the base pencil homogenized
/// on its own block, plus one 2x2 block [[x0, xi], [xi, r]] per variable,
/// kept as separate blocks (their block sum is equivalent and the per-block
/// form is cheaper).
#[derive(Debug, Clone)]
pub struct LiftedLmi {
    base_dim: usize,
    n: usize,
    shape: ConeShape,
    /// Generators ordered (G_x0, G_x1, .., G_xn, G_r).
    gens: Vec<BlockVec>,
}

impl LiftedLmi {
    pub fn shape(&self) -> &ConeShape {
        &self.shape
    }

    pub fn generators(&self) -> &[BlockVec] {
        &self.gens
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn n_vars(&self) -> usize {
        self.n + 2
    }

    /// Evaluate at (x0, x, r).
    pub fn evaluate(&self, x0: f64, x: &[f64], r: f64) -> BlockVec {
        assert_eq!(x.len(), self.n);
        let mut out = self.shape.zero_vec();
        out.axpy(x0, &self.gens[0]);
        for (i, &xi) in x.iter().enumerate() {
            out.axpy(xi, &self.gens[1 + i]);
        }
        out.axpy(r, &self.gens[1 + self.n]);
        out
    }

    /// Serialize as a homogeneous pencil over one block-diagonal matrix of
    /// dimension d + 2n (offset zero, generators the lift matrices).
    pub fn to_pencil(&self) -> Pencil<f64> {
        let total = self.base_dim + 2 * self.n;
        let gens: Vec<SymMat<f64>> = self
            .gens
            .iter()
            .map(|g| {
                let blocks: Vec<SymMat<f64>> =
                    g.mats.iter().map(SymMat::from_dense).collect();
                crate::symmat::block_diag(&blocks).expect("nonempty blocks")
            })
            .collect();
        debug_assert!(gens.iter().all(|g| g.dim() == total));
        Pencil::new(SymMat::zeros(total), gens).expect("lift generators are independent")
    }
}

/// Build the lifted LMI of a proper pencil with at least one generator.
pub fn lift_full(p: &Pencil<f64>) -> Result<LiftedLmi, HomogenizeError> {
    if !p.is_proper() {
        return Err(HomogenizeError::ImproperPencil);
    }
    let n = p.n_gens();
    if n == 0 {
        return Err(HomogenizeError::NoGenerators);
    }
    let d = p.dim();
    let shape = ConeShape {
        psd: std::iter::once(d).chain(std::iter::repeat(2).take(n)).collect(),
        orthant: 0,
    };
    let mut gens = Vec::with_capacity(n + 2);
    // G_x0: A0 on the base block, E11 on every lift block
    let mut g0 = shape.zero_vec();
    g0.mats[0] = p.a0().to_dense();
    for i in 0..n {
        g0.mats[1 + i].set(0, 0, 1.0);
    }
    gens.push(g0);
    // G_xi: A_i on the base block, offdiagonal on lift block i
    for (i, a) in p.generators().iter().enumerate() {
        let mut g = shape.zero_vec();
        g.mats[0] = a.to_dense();
        g.mats[1 + i].set(0, 1, 1.0);
        g.mats[1 + i].set(1, 0, 1.0);
        gens.push(g);
    }
    // G_r: E22 on every lift block
    let mut gr = shape.zero_vec();
    for i in 0..n {
        gr.mats[1 + i].set(1, 1, 1.0);
    }
    gens.push(gr);
    Ok(LiftedLmi {
        base_dim: d,
        n,
        shape,
        gens,
    })
}

/// Verdict of the lifted-LMI infeasibility test.
#[derive(Debug, Clone)]
pub enum LiftVerdict {
    Feasible { witness: Vec<f64> },
    Infeasible,
}

impl LiftVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LiftVerdict::Feasible { .. })
    }
}

/// Decide feasibility through the lifted system: the pencil is infeasible
/// exactly when every solution of the lifted LMI has x0 = 0, which is read
/// off a maximum-rank point of the solution cone.
pub fn infeasible_by_lift(
    p: &Pencil<f64>,
    tol: f64,
    max_iters: usize,
) -> Result<LiftVerdict, HomogenizeError> {
    let lifted = lift_full(p)?;
    let shape = lifted.shape().clone();
    let vecs: Vec<Vec<f64>> = lifted.generators().iter().map(BlockVec::svec).collect();
    let w = Subspace::from_vectors(shape.svec_len(), &vecs, 1e-12);
    if w.dim() != lifted.n_vars() {
        return Err(HomogenizeError::Input(
            "lift generators unexpectedly dependent".into(),
        ));
    }
    let bound = shape.degree().min(w.dim());
    let reduction = facial::facial_reduce_subspace(&shape, &w, tol, max_iters, bound)
        .map_err(|e| HomogenizeError::Unresolved(e.to_string()))?;
    // the solution cone always contains the r-ray, so a zero intersection
    // would contradict the lift structure
    let point = reduction
        .relint_point
        .ok_or_else(|| HomogenizeError::Unresolved("lifted solution cone reported empty".into()))?;

    // coordinates of the maximum-rank solution in the lift variables
    let flat = point.svec();
    let gens_mat = linalg::Mat::from_rows(&vecs);
    let k = lifted.n_vars();
    let mut gram = linalg::Mat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, linalg::dot(gens_mat.row(i), gens_mat.row(j)));
        }
    }
    let rhs: Vec<f64> = (0..k).map(|i| linalg::dot(gens_mat.row(i), &flat)).collect();
    let coords = linalg::solve_spd(&gram, &rhs)
        .ok_or_else(|| HomogenizeError::Unresolved("coordinate recovery failed".into()))?;
    let x0 = coords[0];
    let xs = &coords[1..1 + lifted.n];
    let coord_norm = linalg::norm2(&coords);
    if x0 > tol * (1.0 + coord_norm) {
        let witness: Vec<f64> = xs.iter().map(|&xi| xi / x0).collect();
        Ok(LiftVerdict::Feasible { witness })
    } else {
        Ok(LiftVerdict::Infeasible)
    }
}

// ---------------------------------------------------------------------------
// hull representations (projections of spectrahedra)
// ---------------------------------------------------------------------------

/// Block-embedding helper: write `small` into `big` at diagonal offset.
fn emplace(big: &mut SymMat<f64>, small: &SymMat<f64>, off: usize) {
    for i in 0..small.dim() {
        for j in i..small.dim() {
            big.set(off + i, off + j, small.get(i, j));
        }
    }
}

/// Conic hull of a projection of a spectrahedron: variables (x, z, lambda, r),
/// blocks lambda*A + sum x_i B_i + sum z_j C_j  and  [[lambda, x_i],[x_i, r]]
/// for each i, assembled into one block-diagonal LMI.
pub fn cone_hull_rep(s: &ProjSpecRep) -> ProjSpecRep {
    let k = s.block_dim();
    let n = s.nx();
    let total = k + 2 * n;
    let zero = SymMat::zeros(total);

    let mut b_new = Vec::with_capacity(n);
    for (i, bi) in s.b.iter().enumerate() {
        let mut m = SymMat::zeros(total);
        emplace(&mut m, bi, 0);
        m.set(k + 2 * i, k + 2 * i + 1, 1.0);
        b_new.push(m);
    }
    let mut c_new = Vec::with_capacity(s.nz() + 2);
    for cj in &s.c {
        let mut m = SymMat::zeros(total);
        emplace(&mut m, cj, 0);
        c_new.push(m);
    }
    // lambda
    let mut c_lambda = SymMat::zeros(total);
    emplace(&mut c_lambda, &s.a, 0);
    for i in 0..n {
        c_lambda.set(k + 2 * i, k + 2 * i, 1.0);
    }
    c_new.push(c_lambda);
    // r
    let mut c_r = SymMat::zeros(total);
    for i in 0..n {
        c_r.set(k + 2 * i + 1, k + 2 * i + 1, 1.0);
    }
    c_new.push(c_r);

    ProjSpecRep::new(zero, b_new, c_new).expect("hull lift stays independent")
}

/// Convex hull of a union of projections of spectrahedra: lift each set to
/// height one, take conic hulls, form the Minkowski sum with duplicated
/// variables, and slice back at height one.
pub fn convex_hull_union(reps: &[ProjSpecRep]) -> Result<ProjSpecRep, ModelError> {
    if reps.is_empty() {
        return Err(ModelError::DimMismatch);
    }
    let n = reps[0].nx();
    if reps.iter().any(|r| r.nx() != n) {
        return Err(ModelError::DimMismatch);
    }

    // cone over each lifted set S_i x {1}
    let cones: Vec<ProjSpecRep> = reps
        .iter()
        .map(|s| {
            let k = s.block_dim();
            let total = k + 2;
            // w-block pins the new last x-variable to 1 inside the cone lift
            let mut a = SymMat::zeros(total);
            emplace(&mut a, &s.a, 0);
            a.set(k, k, -1.0);
            a.set(k + 1, k + 1, 1.0);
            let mut b = Vec::with_capacity(n + 1);
            for bi in &s.b {
                let mut m = SymMat::zeros(total);
                emplace(&mut m, bi, 0);
                b.push(m);
            }
            let mut bw = SymMat::zeros(total);
            bw.set(k, k, 1.0);
            bw.set(k + 1, k + 1, -1.0);
            b.push(bw);
            let c = s
                .c
                .iter()
                .map(|cj| {
                    let mut m = SymMat::zeros(total);
                    emplace(&mut m, cj, 0);
                    m
                })
                .collect();
            cone_hull_rep(&ProjSpecRep::new(a, b, c).expect("lifted set rep valid"))
        })
        .collect();

    // Minkowski sum with duplicated (x, w) per summand, sliced at w = 1.
    // final z variables: per cone i, its duplicated x-vars (n+1 of them)
    // followed by its own z-vars; the final x-vars are the shared x.
    let t = cones.len();
    let eq_dim = 2 * (n + 1);
    let total: usize = cones.iter().map(|c| c.block_dim()).sum::<usize>() + eq_dim;
    let offsets: Vec<usize> = {
        let mut o = Vec::with_capacity(t);
        let mut acc = 0;
        for c in &cones {
            o.push(acc);
            acc += c.block_dim();
        }
        o
    };
    let eq_off = total - eq_dim;

    // constant block: the slice w = 1 enters the equality rows for the w
    // coordinate: (1 - sum_i w_i, -(1 - sum_i w_i))
    let mut a_final = SymMat::zeros(total);
    a_final.set(eq_off + 2 * n, eq_off + 2 * n, 1.0);
    a_final.set(eq_off + 2 * n + 1, eq_off + 2 * n + 1, -1.0);

    // shared x variables: equality rows only
    let mut b_final = Vec::with_capacity(n);
    for l in 0..n {
        let mut m = SymMat::zeros(total);
        m.set(eq_off + 2 * l, eq_off + 2 * l, 1.0);
        m.set(eq_off + 2 * l + 1, eq_off + 2 * l + 1, -1.0);
        b_final.push(m);
    }

    let mut c_final: Vec<SymMat<f64>> = Vec::new();
    for (i, cone) in cones.iter().enumerate() {
        let off = offsets[i];
        // duplicated x-vars of summand i: the cone's B-matrices in its own
        // block, with -1 entries in the matching equality rows
        for l in 0..=n {
            let mut m = SymMat::zeros(total);
            emplace(&mut m, &cone.b[l], off);
            m.set(eq_off + 2 * l, eq_off + 2 * l, -1.0);
            m.set(eq_off + 2 * l + 1, eq_off + 2 * l + 1, 1.0);
            c_final.push(m);
        }
        // its own lifted z-vars
        for cj in &cone.c {
            let mut m = SymMat::zeros(total);
            emplace(&mut m, cj, off);
            c_final.push(m);
        }
    }
    ProjSpecRep::new(a_final, b_final, c_final)
}

/// Membership of a point in a projected-spectrahedron representation:
/// feasibility of the z-system at the fixed x, decided through the lifted
/// LMI so that boundary points are handled correctly.
pub fn membership(
    rep: &ProjSpecRep,
    x: &[f64],
    tol: f64,
    max_iters: usize,
) -> Result<bool, HomogenizeError> {
    if x.len() != rep.nx() {
        return Err(HomogenizeError::Input("point dimension mismatch".into()));
    }
    let k = rep.block_dim();
    let mut constant = rep.a.clone();
    for (bi, &xi) in rep.b.iter().zip(x) {
        constant = constant.add(&bi.scale(&xi));
    }
    let n_flat = k * (k + 1) / 2;
    let gen_vecs: Vec<Vec<f64>> = rep.c.iter().map(svec_f64).collect();
    let span = Subspace::from_vectors(n_flat, &gen_vecs, 1e-10);
    if span.dim() == 0 {
        let scale = constant.frob_norm().max(1.0);
        return Ok(constant
            .psd_check(tol * scale)
            .map_err(|e| HomogenizeError::Unresolved(e.to_string()))?
            .is_psd());
    }
    if span.contains(&svec_f64(&constant), tol) {
        // the affine space passes through the origin: 0 is a solution
        return Ok(true);
    }
    let gens: Vec<SymMat<f64>> = span.basis().iter().map(|v| unsvec_f64(k, v)).collect();
    let pencil = Pencil::new(constant, gens).map_err(HomogenizeError::Model)?;
    Ok(infeasible_by_lift(&pencil, tol, max_iters)?.is_feasible())
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn span_lift_examples() {
        let p = standard_weak();
        let s = span_lift(&p).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&svec_f64(p.a0()), 1e-10));

        let only_offset = Pencil::new(SymMat::identity(2), vec![]).unwrap();
        assert_eq!(span_lift(&only_offset).unwrap().dim(), 1);

        let zero = SymMat::zeros(2);
        let improper = Pencil::new(
            zero,
            vec![
                sym(&[vec![1.0, 0.0], vec![0.0, 0.0]]),
            ],
        )
        .unwrap();
        assert!(matches!(
            span_lift(&improper),
            Err(HomogenizeError::ImproperPencil)
        ));
    }

    #[test]
    fn embed_product_structure() {
        let p = standard_weak();
        let h = embed_product(&p).unwrap();
        assert_eq!(h.shape.psd, vec![2]);
        assert_eq!(h.shape.orthant, 1);
        assert_eq!(h.subspace.dim(), 2);
        assert_eq!(h.marker, Some(0));
        // lin part has marker identically zero
        for b in h.lin_part.basis() {
            let amb = BlockVec::unsvec(&h.shape, b);
            assert!(amb.orth[0].abs() < 1e-12);
        }
        // structural emptiness of (-K) ∩ L': the affine offset has marker 1
        let offset = BlockVec::from_mat(p.a0(), vec![1.0]);
        assert!(h.subspace.contains(&offset.svec(), 1e-9));
    }

    #[test]
    fn lift_blocks_match_hand_construction() {
        // base [[0,x0],[x0,x1]] plus one lift block [[x0,x1],[x1,r]]
        let p = standard_weak();
        let l = lift_full(&p).unwrap();
        assert_eq!(l.shape().psd, vec![2, 2]);
        let g = l.generators();
        // G_x0: A0 on base, E11 on lift
        assert_eq!(g[0].mats[0].get(0, 1), 1.0);
        assert_eq!(g[0].mats[1].get(0, 0), 1.0);
        assert_eq!(g[0].mats[1].get(1, 1), 0.0);
        // G_x1: E22 on base, offdiag on lift
        assert_eq!(g[1].mats[0].get(1, 1), 1.0);
        assert_eq!(g[1].mats[1].get(0, 1), 1.0);
        // G_r: E22 on lift
        assert_eq!(g[2].mats[1].get(1, 1), 1.0);
        assert_eq!(g[2].mats[0].frob_norm(), 0.0);
        // evaluation at (1, x, 1 + x^2) reproduces the pencil on the base block
        let x = 0.7;
        let val = l.evaluate(1.0, &[x], 1.0 + x * x);
        let base = SymMat::from_dense(&val.mats[0]);
        let expect = p.evaluate(&[x]);
        assert!(base.sub(&expect).frob_norm() < 1e-14);
    }

    #[test]
    fn lift_rejects_degenerate() {
        let only_offset = Pencil::new(SymMat::identity(2), vec![]).unwrap();
        assert!(matches!(
            lift_full(&only_offset),
            Err(HomogenizeError::NoGenerators)
        ));
    }

    #[test]
    fn lift_infeasibility_examples() {
        // the standard weakly infeasible pencil is detected
        match infeasible_by_lift(&standard_weak(), 1e-8, 200).unwrap() {
            LiftVerdict::Infeasible => {}
            LiftVerdict::Feasible { witness } => panic!("false witness {witness:?}"),
        }
        // feasible pencil with witness 0
        let p = Pencil::new(
            SymMat::identity(2),
            vec![sym(&[vec![1.0, 0.0], vec![0.0, 0.0]])],
        )
        .unwrap();
        match infeasible_by_lift(&p, 1e-8, 200).unwrap() {
            LiftVerdict::Feasible { witness } => {
                let a = p.evaluate(&witness);
                assert!(a.psd_check(1e-6).unwrap().is_psd());
            }
            LiftVerdict::Infeasible => panic!("feasible pencil declared infeasible"),
        }
        // d = 1: A0 = [-1], A1 = [1]; feasible for x >= 1
        let p1 = Pencil::new(
            SymMat::from_rows(&[vec![-1.0]]),
            vec![SymMat::from_rows(&[vec![1.0]])],
        )
        .unwrap();
        match infeasible_by_lift(&p1, 1e-8, 200).unwrap() {
            LiftVerdict::Feasible { witness } => {
                assert!(p1.evaluate(&witness).get(0, 0) >= -1e-8);
            }
            LiftVerdict::Infeasible => panic!("half-line pencil is feasible"),
        }
    }

    fn hyperbola_rep() -> ProjSpecRep {
        // S = {(x,y): [[x,1],[1,y]] >= 0} = {x,y >= 0, xy >= 1}
        ProjSpecRep::new(
            sym(&[vec![0.0, 1.0], vec![1.0, 0.0]]),
            vec![
                sym(&[vec![1.0, 0.0], vec![0.0, 0.0]]),
                sym(&[vec![0.0, 0.0], vec![0.0, 1.0]]),
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn cone_hull_membership() {
        let cone = cone_hull_rep(&hyperbola_rep());
        // (0,0) is in the conic hull (lambda = 0)
        assert!(membership(&cone, &[0.0, 0.0], 1e-8, 200).unwrap());
        // (2,2) in S directly, hence in the hull
        assert!(membership(&cone, &[2.0, 2.0], 1e-8, 200).unwrap());
        // (-1, 0) violates the first-quadrant confinement
        assert!(!membership(&cone, &[-1.0, 0.0], 1e-8, 200).unwrap());
    }
}
