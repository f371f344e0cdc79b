//! Exact LP feasibility over the rationals.
//!
//! For { x >= 0 : A x = b } with rational data and A of full row rank, a
//! phase-1 simplex with Bland's rule either returns an exact feasible point
//! or an exact Farkas certificate: y with A^T y >= 0 and b^T y < 0, together
//! with a rational separation level lambda in (0, -b^T y).

use crate::symmat::exact::Rat;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplexError {
    #[error("constraint matrix is rank deficient ({0} < {1})")]
    RankDeficient(usize, usize),
    #[error("shape mismatch")]
    Shape,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FarkasOutcome {
    /// Exact x >= 0 with A x = b.
    Feasible(Vec<Rat>),
    /// Exact y with A^T y >= 0, b^T y < 0, and lambda in (0, -b^T y) so that
    /// the hyperplane { x : y^T(Ax - b) = lambda } strongly separates the
    /// affine space from the nonnegative orthant.
    Certificate { y: Vec<Rat>, lambda: Rat },
}

/// Exact Farkas alternative for { x >= 0 : A x = b }.
pub fn lp_farkas_rational(a: &[Vec<Rat>], b: &[Rat]) -> Result<FarkasOutcome, SimplexError> {
    let m = a.len();
    if b.len() != m {
        return Err(SimplexError::Shape);
    }
    let n = if m == 0 { 0 } else { a[0].len() };
    if a.iter().any(|row| row.len() != n) {
        return Err(SimplexError::Shape);
    }
    let rk = crate::symmat::exact::rank(a);
    if rk < m {
        return Err(SimplexError::RankDeficient(rk, m));
    }
    if m == 0 {
        return Ok(FarkasOutcome::Feasible(vec![Rat::zero(); n]));
    }

    // flip rows so that the right-hand side is nonnegative
    let flips: Vec<bool> = b.iter().map(|bi| bi.is_negative()).collect();
    let width = n + m + 1; // original vars, artificials, rhs
    let mut t: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            for j in 0..n {
                row.push(if flips[i] { -&a[i][j] } else { a[i][j].clone() });
            }
            for k in 0..m {
                row.push(if k == i { Rat::one() } else { Rat::zero() });
            }
            row.push(if flips[i] { -&b[i] } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // reduced-cost row for minimizing the artificial sum
    let mut red: Vec<Rat> = vec![Rat::zero(); width];
    for j in 0..width {
        let mut s = Rat::zero();
        for row in t.iter() {
            s += &row[j];
        }
        // c_j - sum (cost of artificials is 1, basis is the artificials)
        let c_j = if (n..n + m).contains(&j) { Rat::one() } else { Rat::zero() };
        red[j] = if j < width - 1 { c_j - s } else { -s };
    }

    loop {
        // Bland: entering = smallest column index with negative reduced cost
        let Some(enter) = (0..width - 1).find(|&j| red[j].is_negative()) else {
            break;
        };
        // ratio test with Bland tie-break on the basis index
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &best {
                    None => true,
                    Some(br) => {
                        ratio < *br || (ratio == *br && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(pr) = leave else {
            // phase-1 objective is bounded below by 0; no unbounded ray exists
            unreachable!("phase-1 simplex cannot be unbounded");
        };
        // pivot
        let piv = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..m {
            if i != pr && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..width {
                    let delta = &t[pr][j] * &f;
                    t[i][j] = &t[i][j] - &delta;
                }
            }
        }
        if !red[enter].is_zero() {
            let f = red[enter].clone();
            for j in 0..width {
                let delta = &t[pr][j] * &f;
                red[j] = &red[j] - &delta;
            }
        }
        basis[pr] = enter;
    }

    // phase-1 value: -red[rhs] is c_B^T x_B = sum of artificial values
    let w_star = -red[width - 1].clone();
    if w_star.is_zero() {
        // drive any lingering artificial out of the basis (degenerate rows)
        for i in 0..m {
            if basis[i] >= n {
                let Some(enter) = (0..n).find(|&j| !t[i][j].is_zero()) else {
                    // all-zero row over the original columns contradicts full
                    // row rank, which was checked above
                    unreachable!("redundant row despite full rank");
                };
                let piv = t[i][enter].clone();
                for x in t[i].iter_mut() {
                    *x = &*x / &piv;
                }
                for k in 0..m {
                    if k != i && !t[k][enter].is_zero() {
                        let f = t[k][enter].clone();
                        for j in 0..width {
                            let delta = &t[i][j] * &f;
                            t[k][j] = &t[k][j] - &delta;
                        }
                    }
                }
                basis[i] = enter;
            }
        }
        let mut x = vec![Rat::zero(); n];
        for (i, &bi) in basis.iter().enumerate() {
            if bi < n {
                x[bi] = t[i][width - 1].clone();
            }
        }
        // exact re-substitution
        debug_assert!(x.iter().all(|v| !v.is_negative()));
        debug_assert!((0..m).all(|i| {
            let lhs: Rat = (0..n).map(|j| &a[i][j] * &x[j]).sum();
            lhs == b[i]
        }));
        return Ok(FarkasOutcome::Feasible(x));
    }

    // infeasible: dual values from the artificial reduced costs,
    // y_i = 1 - red[n + i], giving A'^T y <= 0 and b'^T y = w* > 0 in the
    // flipped system; undo the flips and negate.
    let y_flipped: Vec<Rat> = (0..m).map(|i| Rat::one() - &red[n + i]).collect();
    let y: Vec<Rat> = y_flipped
        .iter()
        .zip(&flips)
        .map(|(yi, &fl)| if fl { yi.clone() } else { -yi })
        .collect();
    // exact verification
    for j in 0..n {
        let col: Rat = (0..m).map(|i| &a[i][j] * &y[i]).sum();
        debug_assert!(!col.is_negative(), "A^T y must be nonnegative");
    }
    let bty: Rat = (0..m).map(|i| &b[i] * &y[i]).sum();
    debug_assert!(bty.is_negative(), "b^T y must be negative");
    let lambda = -&bty / Rat::from_integer(2.into());
    Ok(FarkasOutcome::Certificate { y, lambda })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmat::exact::{rat, rat_i};

    #[test]
    fn scalar_infeasible() {
        // x = -1, x >= 0: certificate y = 1, lambda = 1/2
        let out = lp_farkas_rational(&[vec![rat_i(1)]], &[rat_i(-1)]).unwrap();
        match out {
            FarkasOutcome::Certificate { y, lambda } => {
                assert_eq!(y, vec![rat_i(1)]);
                assert_eq!(lambda, rat(1, 2));
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn scalar_feasible() {
        let out = lp_farkas_rational(&[vec![rat_i(1)]], &[rat_i(2)]).unwrap();
        assert_eq!(out, FarkasOutcome::Feasible(vec![rat_i(2)]));
    }

    #[test]
    fn two_vars_feasible() {
        let out = lp_farkas_rational(&[vec![rat_i(1), rat_i(1)]], &[rat_i(1)]).unwrap();
        match out {
            FarkasOutcome::Feasible(x) => {
                assert_eq!(&x[0] + &x[1], rat_i(1));
                assert!(!x[0].is_negative() && !x[1].is_negative());
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn rank_deficiency_rejected() {
        let a = vec![vec![rat_i(1), rat_i(0)], vec![rat_i(2), rat_i(0)]];
        assert_eq!(
            lp_farkas_rational(&a, &[rat_i(1), rat_i(2)]).unwrap_err(),
            SimplexError::RankDeficient(1, 2)
        );
    }

    #[test]
    fn random_instances_verify_exactly() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let mut feas = 0;
        let mut infeas = 0;
        for _ in 0..60 {
            let m = rng.gen_range(1..=4usize);
            let n = rng.gen_range(m..=6usize);
            let a: Vec<Vec<Rat>> = (0..m)
                .map(|_| (0..n).map(|_| rat_i(rng.gen_range(-3..4))).collect())
                .collect();
            let b: Vec<Rat> = (0..m).map(|_| rat_i(rng.gen_range(-4..5))).collect();
            if crate::symmat::exact::rank(&a) < m {
                continue;
            }
            match lp_farkas_rational(&a, &b).unwrap() {
                FarkasOutcome::Feasible(x) => {
                    feas += 1;
                    assert!(x.iter().all(|v| !v.is_negative()));
                    for i in 0..m {
                        let lhs: Rat = (0..n).map(|j| &a[i][j] * &x[j]).sum();
                        assert_eq!(lhs, b[i]);
                    }
                }
                FarkasOutcome::Certificate { y, lambda } => {
                    infeas += 1;
                    for j in 0..n {
                        let col: Rat = (0..m).map(|i| &a[i][j] * &y[i]).sum();
                        assert!(!col.is_negative());
                    }
                    let bty: Rat = (0..m).map(|i| &b[i] * &y[i]).sum();
                    assert!(bty.is_negative());
                    assert!(lambda.is_positive() && lambda < -bty);
                }
            }
        }
        assert!(feas > 0 && infeas > 0, "want both outcomes exercised");
    }
}
