//! Seeded generator of rational pencils with feasibility type true by
//! construction, used as the ground-truth oracle for classification tests.
//!
//! Every instance is built in adapted coordinates where the type is exact
//! by inspection, then de-aligned by an exact rational congruence T^T A T
//! with T strictly diagonally dominant (hence invertible); congruences are
//! linear isomorphisms of Sym^d mapping the PSD cone onto itself, so every
//! feasibility type, stability included, is preserved and the witness
//! coordinates are unchanged.

use super::FeasibilityType;
use crate::model::{svec_rat, Pencil};
use crate::symmat::exact::{self, rat, rat_i, Rat};
use crate::symmat::SymMat;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    StrongFeas,
    WeakFeas,
    StableInfeas,
    StrongUnstableInfeas,
    WeakInfeas,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 5] = [
        InstanceKind::StrongFeas,
        InstanceKind::WeakFeas,
        InstanceKind::StableInfeas,
        InstanceKind::StrongUnstableInfeas,
        InstanceKind::WeakInfeas,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InstanceKind::StrongFeas => "strong_feas",
            InstanceKind::WeakFeas => "weak_feas",
            InstanceKind::StableInfeas => "stable_infeas",
            InstanceKind::StrongUnstableInfeas => "strong_unstable_infeas",
            InstanceKind::WeakInfeas => "weak_infeas",
        }
    }

    fn salt(&self) -> u64 {
        match self {
            InstanceKind::StrongFeas => 0x5f,
            InstanceKind::WeakFeas => 0x77,
            InstanceKind::StableInfeas => 0x51,
            InstanceKind::StrongUnstableInfeas => 0x5d,
            InstanceKind::WeakInfeas => 0x1f,
        }
    }
}

/// What the construction promises about the instance.
#[derive(Debug, Clone)]
pub struct GroundTruth {
    pub kind: InstanceKind,
    pub expected: FeasibilityType,
    pub expected_stable: Option<bool>,
    /// Conservative lower bound on the perturbation radius under which the
    /// type is guaranteed not to flip (meaningful for stable instances).
    pub margin: f64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("parameter range: {0}")]
    Params(String),
}

struct Ctx {
    rng: ChaCha8Rng,
}

impl Ctx {
    fn new(kind: InstanceKind, d: usize, n: usize, seed: u64) -> Self {
        let mixed = seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(kind.salt())
            .wrapping_add((d as u64) << 32)
            .wrapping_add(n as u64);
        Ctx {
            rng: ChaCha8Rng::seed_from_u64(mixed),
        }
    }

    /// Random rational in quarters from -2 to 2.
    fn coeff(&mut self) -> Rat {
        rat(self.rng.gen_range(-8..=8), 4)
    }

    fn sym_random(&mut self, d: usize) -> SymMat<Rat> {
        let mut m = SymMat::zeros(d);
        for i in 0..d {
            for j in i..d {
                m.set(i, j, self.coeff());
            }
        }
        m
    }

    /// Diagonally dominant positive definite rational matrix; Gershgorin
    /// gives every eigenvalue at least 1.
    fn sym_dd_pd(&mut self, d: usize) -> SymMat<Rat> {
        let mut m = self.sym_random(d);
        for i in 0..d {
            let mut row_sum = Rat::zero();
            for j in 0..d {
                if j != i {
                    row_sum += m.get(i, j).abs();
                }
            }
            m.set(i, i, row_sum + rat_i(1) + rat(self.rng.gen_range(0..=4), 4));
        }
        m
    }
}

fn independent_and_proper(a0: &SymMat<Rat>, gens: &[SymMat<Rat>]) -> bool {
    let rows: Vec<Vec<Rat>> = gens.iter().map(svec_rat).collect();
    if exact::rank(&rows) < rows.len() {
        return false;
    }
    let mut aug = rows;
    aug.push(svec_rat(a0));
    exact::rank(&aug) == gens.len() + 1
}

/// Exact congruence de-alignment: A -> T^T A T with T = I + N/(4d).
fn conjugate_all(ctx: &mut Ctx, d: usize, mats: &mut [SymMat<Rat>]) {
    let den = 4 * d as i64;
    // strict diagonal dominance makes T invertible for any draw
    let t: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        rat_i(1)
                    } else {
                        rat(ctx.rng.gen_range(-1..=1), den)
                    }
                })
                .collect()
        })
        .collect();
    for m in mats.iter_mut() {
        let mut out = SymMat::zeros(d);
        for i in 0..d {
            for j in i..d {
                let mut acc = Rat::zero();
                for a in 0..d {
                    for b in 0..d {
                        acc += &t[a][i] * &m.get(a, b) * &t[b][j];
                    }
                }
                out.set(i, j, acc);
            }
        }
        *m = out;
    }
}

const D_FLAT: fn(usize) -> usize = |d| d * (d + 1) / 2;

/// Generate a rational pencil whose feasibility type is known exactly from
/// its construction, together with the expected report skeleton.
/// Deterministic in (kind, d, n, seed).
pub fn generate_ground_truth(
    kind: InstanceKind,
    d: usize,
    n: usize,
    seed: u64,
) -> Result<(Pencil<Rat>, GroundTruth), GenerateError> {
    if d < 2 {
        return Err(GenerateError::Params("dimension must be at least 2".into()));
    }
    if n < 1 || n > D_FLAT(d) - 1 {
        return Err(GenerateError::Params(format!(
            "need 1 <= n <= {}, got {n}",
            D_FLAT(d) - 1
        )));
    }
    let mut ctx = Ctx::new(kind, d, n, seed);
    for _attempt in 0..64 {
        if let Some(out) = try_generate(kind, d, n, &mut ctx)? {
            return Ok(out);
        }
    }
    Err(GenerateError::Params(
        "could not draw an independent instance; parameters too tight".into(),
    ))
}

fn try_generate(
    kind: InstanceKind,
    d: usize,
    n: usize,
    ctx: &mut Ctx,
) -> Result<Option<(Pencil<Rat>, GroundTruth)>, GenerateError> {
    let build = |a0: SymMat<Rat>,
                 gens: Vec<SymMat<Rat>>,
                 ctx: &mut Ctx,
                 conjugate: bool,
                 truth: GroundTruth|
     -> Option<(Pencil<Rat>, GroundTruth)> {
        if !independent_and_proper(&a0, &gens) {
            return None;
        }
        let mut mats = vec![a0];
        mats.extend(gens);
        if conjugate {
            conjugate_all(ctx, d, &mut mats);
        }
        let a0 = mats.remove(0);
        let pencil = Pencil::new_rational(a0, mats).ok()?;
        debug_assert!(pencil.is_proper());
        Some((pencil, truth))
    };

    let result = match kind {
        InstanceKind::StrongFeas => {
            let a0 = ctx.sym_dd_pd(d);
            let gens: Vec<SymMat<Rat>> = (0..n).map(|_| ctx.sym_random(d)).collect();
            build(
                a0,
                gens,
                ctx,
                true,
                GroundTruth {
                    kind,
                    expected: FeasibilityType::StronglyFeasible,
                    expected_stable: None,
                    margin: 0.5,
                },
            )
        }
        InstanceKind::WeakFeas => {
            // rank-deficient PSD offset; generators confined to the tangent
            // lineality of its face (zero bottom-right block), so no point
            // of the pencil is definite while the offset stays feasible
            let max_r = d - 1;
            let mut r = max_r;
            while r >= 1 && D_FLAT(d) - D_FLAT(d - r) < n + 1 {
                r -= 1;
            }
            if r == 0 {
                return Err(GenerateError::Params(format!(
                    "no face rank leaves room for {n} lineality generators at d = {d}"
                )));
            }
            let core = ctx.sym_dd_pd(r);
            let mut a0 = SymMat::zeros(d);
            for i in 0..r {
                for j in i..r {
                    a0.set(i, j, core.get(i, j));
                }
            }
            let gens: Vec<SymMat<Rat>> = (0..n)
                .map(|_| {
                    let mut g = ctx.sym_random(d);
                    for i in r..d {
                        for j in i..d {
                            g.set(i, j, Rat::zero());
                        }
                    }
                    g
                })
                .collect();
            build(
                a0,
                gens,
                ctx,
                true,
                GroundTruth {
                    kind,
                    expected: FeasibilityType::WeaklyFeasible,
                    expected_stable: None,
                    margin: 0.25,
                },
            )
        }
        InstanceKind::StableInfeas => {
            // interior dual functional by construction: C PD, generators
            // orthogonal to C, offset with <C, A0> = -1
            let c = ctx.sym_dd_pd(d);
            let cc = crate::symmat::inner(&c, &c).expect("dims");
            let gens: Vec<SymMat<Rat>> = (0..n)
                .map(|_| {
                    let g = ctx.sym_random(d);
                    let gc = crate::symmat::inner(&g, &c).expect("dims");
                    g.sub(&c.scale(&(gc / &cc)))
                })
                .collect();
            let r0 = ctx.sym_random(d);
            let rc = crate::symmat::inner(&r0, &c).expect("dims");
            let shift = (rc + rat_i(1)) / &cc;
            let a0 = r0.sub(&c.scale(&shift));
            debug_assert_eq!(
                crate::symmat::inner(&a0, &c).expect("dims"),
                rat_i(-1)
            );
            let norm: f64 = {
                let mut s = a0.to_f64().frob_norm();
                for g in &gens {
                    s += g.to_f64().frob_norm();
                }
                s
            };
            build(
                a0,
                gens,
                ctx,
                true,
                GroundTruth {
                    kind,
                    expected: FeasibilityType::StronglyInfeasible,
                    expected_stable: Some(true),
                    margin: (0.25 / (1.0 + norm)).min(1e-2),
                },
            )
        }
        InstanceKind::StrongUnstableInfeas => {
            if d < 3 {
                return Err(GenerateError::Params(
                    "strong unstable instances need dimension at least 3".into(),
                ));
            }
            let avail = 3 + 2 * (d - 2);
            if n > avail {
                return Err(GenerateError::Params(format!(
                    "at most {avail} generators available at d = {d}"
                )));
            }
            // separated block: A(x) keeps an exactly negative-definite
            // bottom block, while the top corner carries an at-infinity ray
            let bottom = ctx.sym_dd_pd(d - 2);
            let mut a0 = SymMat::zeros(d);
            a0.set(0, 1, rat_i(1));
            for i in 0..d - 2 {
                for j in i..d - 2 {
                    a0.set(2 + i, 2 + j, -bottom.get(i, j));
                }
            }
            let mut gens = Vec::with_capacity(n);
            let mut g1 = SymMat::zeros(d);
            g1.set(1, 1, rat_i(1));
            gens.push(g1);
            for _ in 1..n {
                let mut g = SymMat::zeros(d);
                g.set(0, 0, ctx.coeff());
                g.set(0, 1, ctx.coeff());
                g.set(1, 1, ctx.coeff());
                for i in 0..2 {
                    for j in 2..d {
                        g.set(i, j, ctx.coeff());
                    }
                }
                gens.push(g);
            }
            build(
                a0,
                gens,
                ctx,
                true,
                GroundTruth {
                    kind,
                    expected: FeasibilityType::StronglyInfeasible,
                    expected_stable: Some(false),
                    margin: 0.0,
                },
            )
        }
        InstanceKind::WeakInfeas => {
            let avail = D_FLAT(d) - d; // symmetric matrices with zero first row
            if n > avail.max(1) {
                return Err(GenerateError::Params(format!(
                    "at most {} generators available at d = {d}",
                    avail.max(1)
                )));
            }
            if d == 2 && n == 1 {
                // the canonical weakly infeasible pencil
                let mut a0 = SymMat::zeros(2);
                a0.set(0, 1, rat_i(1));
                let mut g = SymMat::zeros(2);
                g.set(1, 1, rat_i(1));
                let pencil = Pencil::new_rational(a0, vec![g]).expect("canonical pencil");
                return Ok(Some((
                    pencil,
                    GroundTruth {
                        kind,
                        expected: FeasibilityType::WeaklyInfeasible,
                        expected_stable: Some(false),
                        margin: 0.0,
                    },
                )));
            }
            // planted corner [[0,1],[1,*]] with an untouched first row:
            // every A(x) has a -1 minor, yet A0 + t A1 approaches the cone
            let mut a0 = SymMat::zeros(d);
            a0.set(0, 1, rat_i(1));
            if d > 2 {
                let rest = ctx.sym_dd_pd(d - 2);
                for i in 0..d - 2 {
                    for j in i..d - 2 {
                        a0.set(2 + i, 2 + j, rest.get(i, j));
                    }
                }
            }
            let mut gens = Vec::with_capacity(n);
            let mut g1 = SymMat::zeros(d);
            g1.set(1, 1, rat_i(1));
            gens.push(g1);
            for _ in 1..n {
                let mut g = ctx.sym_random(d);
                for j in 0..d {
                    g.set(0, j, Rat::zero());
                }
                gens.push(g);
            }
            build(
                a0,
                gens,
                ctx,
                true,
                GroundTruth {
                    kind,
                    expected: FeasibilityType::WeaklyInfeasible,
                    expected_stable: Some(false),
                    margin: 0.0,
                },
            )
        }
    };
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facial::{classify, ClassifyConfig};

    #[test]
    fn deterministic_in_seed() {
        let (p1, _) = generate_ground_truth(InstanceKind::StrongFeas, 3, 2, 1).unwrap();
        let (p2, _) = generate_ground_truth(InstanceKind::StrongFeas, 3, 2, 1).unwrap();
        assert_eq!(p1.a0(), p2.a0());
        assert_eq!(p1.generators(), p2.generators());
        let (p3, _) = generate_ground_truth(InstanceKind::StrongFeas, 3, 2, 2).unwrap();
        assert!(p1.a0() != p3.a0() || p1.generators() != p3.generators());
    }

    #[test]
    fn canonical_weak_instance() {
        let (p, t) = generate_ground_truth(InstanceKind::WeakInfeas, 2, 1, 0).unwrap();
        assert_eq!(t.expected, FeasibilityType::WeaklyInfeasible);
        assert_eq!(p.a0().get(0, 1), rat_i(1));
        assert_eq!(p.a0().get(0, 0), rat_i(0));
        assert_eq!(p.a0().get(1, 1), rat_i(0));
        assert_eq!(p.generators().len(), 1);
        assert_eq!(p.generators()[0].get(1, 1), rat_i(1));
    }

    #[test]
    fn parameter_errors() {
        assert!(generate_ground_truth(InstanceKind::StrongFeas, 1, 1, 0).is_err());
        assert!(generate_ground_truth(InstanceKind::StrongFeas, 2, 0, 0).is_err());
        assert!(generate_ground_truth(InstanceKind::StrongFeas, 2, 3, 0).is_err());
        assert!(generate_ground_truth(InstanceKind::StrongUnstableInfeas, 2, 1, 0).is_err());
    }

    #[test]
    fn spot_classification_matches_construction() {
        let cfg = ClassifyConfig::default();
        let cases = [
            (InstanceKind::StrongFeas, 3, 2, 1),
            (InstanceKind::StableInfeas, 4, 3, 7),
            (InstanceKind::WeakFeas, 3, 2, 3),
            (InstanceKind::StrongUnstableInfeas, 3, 2, 5),
            (InstanceKind::WeakInfeas, 3, 2, 11),
        ];
        for (kind, d, n, seed) in cases {
            let (p, truth) = generate_ground_truth(kind, d, n, seed).unwrap();
            let rep = classify(&p.to_f64(), &cfg)
                .unwrap_or_else(|e| panic!("{} d={d} n={n} seed={seed}: {e}", kind.name()));
            assert_eq!(
                rep.feasibility,
                truth.expected,
                "{} d={d} n={n} seed={seed}",
                kind.name()
            );
            if let Some(st) = truth.expected_stable {
                assert_eq!(rep.stable, Some(st), "{} stability", kind.name());
            }
        }
    }
}
