//! Named reference instances with known classifications, used as the
//! regression data source. Every entry whose defining data is rational is
//! built in exact arithmetic, including the two Gram-matrix constructions,
//! whose coefficient-matching identities are asserted symbolically.

use crate::model::Pencil;
use crate::symmat::exact::{self, rat_i, Rat};
use crate::symmat::SymMat;
use num_traits::Zero;

use crate::facial::FeasibilityType;

/// Expected classification of a corpus entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedType {
    Exact(FeasibilityType),
    /// Infeasible with the precise sub-type left to observation.
    AnyInfeasible,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub pencil: Pencil<Rat>,
    pub expected: ExpectedType,
    pub expected_stable: Option<bool>,
    pub expected_chain_length: Option<usize>,
    /// For natively homogeneous entries: the subspace generators in Sym^d.
    pub homogeneous_subspace: Option<Vec<SymMat<Rat>>>,
    pub note: &'static str,
}

fn e_rat(d: usize, i: usize, j: usize, v: i64) -> SymMat<Rat> {
    let mut m = SymMat::zeros(d);
    m.set(i, j, rat_i(v));
    m
}

/// The univariate pencil [[0, 1], [1, x]]: infeasible, but at distance zero
/// from the cone.
pub fn ex_standard() -> CorpusEntry {
    let a0 = e_rat(2, 0, 1, 1);
    let g = e_rat(2, 1, 1, 1);
    CorpusEntry {
        name: "ex_standard",
        pencil: Pencil::new_rational(a0, vec![g]).expect("canonical data"),
        expected: ExpectedType::Exact(FeasibilityType::WeaklyInfeasible),
        expected_stable: Some(false),
        expected_chain_length: Some(2),
        homogeneous_subspace: None,
        note: "univariate pencil [[0,1],[1,x]]; the determinant is -1 for every x, \
               yet [[1/t,1],[1,t]] shows the distance to the cone vanishes",
    }
}

/// Homogeneous generators of the depth-(d-1) reduction subspace in Sym^d:
/// E11 together with A_i having (i,i) = 1 and (1,i+1) = (i+1,1) = -1 for
/// i = 2..d-1 (1-based positions).
fn chain_subspace(d: usize) -> Vec<SymMat<Rat>> {
    assert!(d >= 3);
    let mut gens = vec![e_rat(d, 0, 0, 1)];
    for i in 2..d {
        let mut a = SymMat::zeros(d);
        a.set(i - 1, i - 1, rat_i(1));
        a.set(0, i, rat_i(-1));
        gens.push(a);
    }
    gens
}

/// Proper-pencil wrapper of the chain subspace: dehomogenize at the E11
/// coordinate, leaving A0 = E11 and the remaining generators free. The
/// wrapper is weakly feasible (x = 0 gives the PSD matrix E11, and no point
/// of the pencil is definite); its facial reduction still walks the full
/// depth-(d-1) chain of supporting functionals.
fn chain_wrapper(d: usize) -> Pencil<Rat> {
    let gens = chain_subspace(d);
    Pencil::new_rational(gens[0].clone(), gens[1..].to_vec()).expect("chain wrapper data")
}

/// Depth-two reduction subspace in Sym^3: one supporting hyperplane exists
/// (normal E33), and the face it exposes strictly contains the minimal
/// face, forcing a second step.
pub fn biggerface() -> CorpusEntry {
    let d = 3;
    CorpusEntry {
        name: "biggerface",
        pencil: chain_wrapper(d),
        expected: ExpectedType::Exact(FeasibilityType::WeaklyFeasible),
        expected_stable: None,
        expected_chain_length: Some(2),
        homogeneous_subspace: Some(chain_subspace(d)),
        note: "two-generator subspace of Sym^3 meeting the cone in the ray of E11; \
               the unique supporting hyperplane exposes a strictly larger face, so \
               reduction needs two steps",
    }
}

/// The depth law witness: reduction on the homogeneous subspace needs
/// exactly d - 1 steps.
pub fn longest_chain(d: usize) -> CorpusEntry {
    assert!(d >= 3, "chain construction needs dimension at least 3");
    CorpusEntry {
        name: "longest_chain",
        pencil: chain_wrapper(d),
        expected: ExpectedType::Exact(FeasibilityType::WeaklyFeasible),
        expected_stable: None,
        expected_chain_length: Some(d - 1),
        homogeneous_subspace: Some(chain_subspace(d)),
        note: "each reduction step exposes one more coordinate kernel, so the chain \
               has length exactly d-1; the d = 3 case is the biggerface entry",
    }
}

/// Two-variable weakly infeasible pencil whose one-step certificates all
/// fail: [[0, x1, 0], [x1, x2, 1], [0, 1, x1]].
pub fn klep_schweighofer() -> CorpusEntry {
    let d = 3;
    let a0 = e_rat(d, 1, 2, 1);
    let mut a1 = SymMat::zeros(d);
    a1.set(0, 1, rat_i(1));
    a1.set(2, 2, rat_i(1));
    let a2 = e_rat(d, 1, 1, 1);
    CorpusEntry {
        name: "klep_schweighofer",
        pencil: Pencil::new_rational(a0, vec![a1, a2]).expect("canonical data"),
        expected: ExpectedType::Exact(FeasibilityType::WeaklyInfeasible),
        expected_stable: Some(false),
        expected_chain_length: None,
        homogeneous_subspace: None,
        note: "two-variable pencil with corner entry (1,1) pinned to zero and a \
               unit coupling; weakly infeasible, and its lifted system's solution \
               cone is the half-line (0,0,0,r)",
    }
}

// ---------------------------------------------------------------------------
// Gram-matrix constructions
// ---------------------------------------------------------------------------

/// Exponent vectors of the monomials (x^2, y^2, z^2, xy, xz, yz).
const QUAD_MONOMIALS: [[u32; 3]; 6] = [
    [2, 0, 0],
    [0, 2, 0],
    [0, 0, 2],
    [1, 1, 0],
    [1, 0, 1],
    [0, 1, 1],
];

/// Degree-4 monomials in three variables, graded lexicographic (x > y > z).
fn quartic_monomials() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=4u32).rev() {
        for b in (0..=(4 - a)).rev() {
            out.push([a, b, 4 - a - b]);
        }
    }
    out
}

/// Coefficient-matching rows of v^T M v over the packed upper triangle of
/// M, for monomial vector entries with the given exponents.
fn gram_rows(monomials: &[[u32; 3]], targets: &[[u32; 3]]) -> Vec<Vec<Rat>> {
    let k = monomials.len();
    let mut rows = vec![vec![Rat::zero(); k * (k + 1) / 2]; targets.len()];
    let index_of = |m: &[u32; 3]| targets.iter().position(|t| t == m);
    let mut pos = 0;
    for i in 0..k {
        for j in i..k {
            let prod = [
                monomials[i][0] + monomials[j][0],
                monomials[i][1] + monomials[j][1],
                monomials[i][2] + monomials[j][2],
            ];
            if let Some(t) = index_of(&prod) {
                rows[t][pos] = if i == j { rat_i(1) } else { rat_i(2) };
            }
            pos += 1;
        }
    }
    rows
}

/// The no-rational-certificate instance: a strongly infeasible pencil in
/// Sym^6 built from the span of the Gram matrices of a rational quartic
/// that is a sum of squares over the reals but over no rational field
/// extension of the Gram coordinates.
///
/// Construction: L' is the span of { M : v^T M v = q } with
/// v = (x^2, y^2, z^2, xy, xz, yz) and
/// q = x^4 + x y^3 + y^4 - 3 x^2 y z - 4 x y^2 z + 2 x^2 z^2
///     + x z^3 + y z^3 + z^4,
/// a 7-dimensional subspace of Sym^6; the pencil is -I_6 offset against an
/// exact rational basis of the orthogonal complement of L'.
pub fn scheiderer() -> CorpusEntry {
    let targets = quartic_monomials();
    let rows = gram_rows(&QUAD_MONOMIALS, &targets);
    // q's coefficients against the graded-lex quartic monomial list
    let mut q = vec![Rat::zero(); targets.len()];
    let coeff = |m: [u32; 3]| -> usize {
        targets.iter().position(|t| *t == m).expect("monomial present")
    };
    q[coeff([4, 0, 0])] = rat_i(1);
    q[coeff([1, 3, 0])] = rat_i(1);
    q[coeff([0, 4, 0])] = rat_i(1);
    q[coeff([2, 1, 1])] = rat_i(-3);
    q[coeff([1, 2, 1])] = rat_i(-4);
    q[coeff([2, 0, 2])] = rat_i(2);
    q[coeff([1, 0, 3])] = rat_i(1);
    q[coeff([0, 1, 3])] = rat_i(1);
    q[coeff([0, 0, 4])] = rat_i(1);

    let particular = exact::solve(&rows, &q).expect("coefficient system solvable");
    // symbolic residual of the matching identity must vanish identically
    for (row, target) in rows.iter().zip(&q) {
        let val: Rat = row
            .iter()
            .zip(&particular)
            .map(|(r, p)| r * p)
            .sum();
        assert_eq!(&val, target, "coefficient-matching residual must be zero");
    }
    let kernel = exact::nullspace(&rows);
    assert_eq!(kernel.len(), 6, "Gram kernel dimension");
    // L' = span{particular, kernel}: dimension 7
    let mut lprime = vec![particular.clone()];
    lprime.extend(kernel.iter().cloned());
    assert_eq!(exact::rank(&lprime), 7, "span dimension of the Gram space");

    // pencil: A0 = -I, generators an exact basis of the orthogonal
    // complement of L' under the trace inner product
    let d = 6;
    let func_rows: Vec<Vec<Rat>> = lprime
        .iter()
        .map(|v| {
            let m = crate::model::unsvec_rat(d, v);
            let two = rat_i(2);
            let mut row = Vec::with_capacity(d * (d + 1) / 2);
            for i in 0..d {
                for j in i..d {
                    let val = m.get(i, j);
                    row.push(if i == j { val } else { val * &two });
                }
            }
            row
        })
        .collect();
    let complement = exact::nullspace(&func_rows);
    assert_eq!(complement.len(), 14);
    let gens: Vec<SymMat<Rat>> = complement
        .iter()
        .map(|v| crate::model::unsvec_rat(d, v))
        .collect();
    let mut a0 = SymMat::zeros(d);
    for i in 0..d {
        a0.set(i, i, rat_i(-1));
    }
    CorpusEntry {
        name: "scheiderer",
        pencil: Pencil::new_rational(a0, gens).expect("construction valid"),
        expected: ExpectedType::Exact(FeasibilityType::StronglyInfeasible),
        expected_stable: Some(false),
        expected_chain_length: None,
        homogeneous_subspace: None,
        note: "offset -I against the orthogonal complement of a 7-dimensional Gram \
               span whose PSD points are all irrational; strongly infeasible, yet \
               rationalization of any certificate must fail",
    }
}

/// Degree <= 3 monomials in two variables, graded lexicographic.
fn cubic_monomials() -> Vec<[u32; 3]> {
    // third exponent unused (kept to share gram_rows)
    let mut out = Vec::new();
    for deg in 0..=3u32 {
        for a in (0..=deg).rev() {
            out.push([a, deg - a, 0]);
        }
    }
    out
}

fn sextic_monomials() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for deg in 0..=6u32 {
        for a in (0..=deg).rev() {
            out.push([a, deg - a, 0]);
        }
    }
    out
}

/// Gram pencil of the nonnegative sextic x^4 y^2 + x^2 y^4 + 1 - 3 x^2 y^2
/// with a free level shift: the set of Gram matrices of f - lambda over all
/// lambda. No shift admits a PSD Gram matrix, so the pencil is infeasible;
/// the level direction enters as the generator -E11 on the constant
/// monomial.
pub fn motzkin_sos() -> CorpusEntry {
    let monomials = cubic_monomials();
    assert_eq!(monomials.len(), 10);
    let targets = sextic_monomials();
    assert_eq!(targets.len(), 28);
    let rows = gram_rows(&monomials, &targets);
    let coeff = |m: [u32; 3]| -> usize {
        targets.iter().position(|t| *t == m).expect("monomial present")
    };
    let mut f = vec![Rat::zero(); targets.len()];
    f[coeff([4, 2, 0])] = rat_i(1);
    f[coeff([2, 4, 0])] = rat_i(1);
    f[coeff([0, 0, 0])] = rat_i(1);
    f[coeff([2, 2, 0])] = rat_i(-3);

    let particular = exact::solve(&rows, &f).expect("coefficient system solvable");
    for (row, target) in rows.iter().zip(&f) {
        let val: Rat = row.iter().zip(&particular).map(|(r, p)| r * p).sum();
        assert_eq!(&val, target, "coefficient-matching residual must be zero");
    }
    let d = 10;
    let a0 = crate::model::unsvec_rat(d, &particular);
    let mut gens = vec![e_rat(d, 0, 0, -1)]; // level direction: constant monomial
    for v in exact::nullspace(&rows) {
        gens.push(crate::model::unsvec_rat(d, &v));
    }
    assert_eq!(gens.len(), 1 + 27);
    CorpusEntry {
        name: "motzkin_sos",
        pencil: Pencil::new_rational(a0, gens).expect("construction valid"),
        expected: ExpectedType::AnyInfeasible,
        expected_stable: None,
        expected_chain_length: None,
        homogeneous_subspace: None,
        note: "Gram pencil of the level-shifted nonnegative sextic \
               x^4 y^2 + x^2 y^4 + 1 - 3 x^2 y^2; no level shift is a sum of \
               squares, so the pencil is infeasible; the sub-type is recorded as \
               observed",
    }
}

/// All corpus entries, at default parameters.
pub fn corpus_list() -> Vec<CorpusEntry> {
    vec![
        ex_standard(),
        biggerface(),
        longest_chain(4),
        klep_schweighofer(),
        scheiderer(),
        motzkin_sos(),
    ]
}

/// Look up a corpus entry by name (longest_chain at its default dimension).
pub fn corpus_get(name: &str) -> Option<CorpusEntry> {
    match name {
        "ex_standard" => Some(ex_standard()),
        "biggerface" => Some(biggerface()),
        "longest_chain" => Some(longest_chain(4)),
        "klep_schweighofer" => Some(klep_schweighofer()),
        "scheiderer" => Some(scheiderer()),
        "motzkin_sos" => Some(motzkin_sos()),
        _ => None,
    }
}
