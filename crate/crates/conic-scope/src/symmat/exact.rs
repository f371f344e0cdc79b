//! Exact rational linear algebra: pivoted LDL^T positive-semidefiniteness
//! test with indefiniteness witnesses, reduced row echelon elimination, and
//! continued-fraction rounding of floats to bounded-denominator rationals.

use super::SymMat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat_i(p: i64) -> Rat {
    BigRational::from_integer(BigInt::from(p))
}

pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Outcome of the exact PSD test.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactPsd {
    Psd,
    /// A rational vector v with v^T A v < 0.
    NotPsd { witness: Vec<Rat> },
}

impl ExactPsd {
    pub fn is_psd(&self) -> bool {
        matches!(self, ExactPsd::Psd)
    }
}

impl SymMat<Rat> {
    /// Exact positive-semidefiniteness decision via symmetric Gaussian
    /// elimination with full diagonal pivoting.
    ///
    /// A negative diagonal pivot yields an immediate witness; if every
    /// remaining diagonal entry is zero, a nonzero residual off-diagonal
    /// entry yields the indefinite 2x2-block witness. Witnesses are lifted
    /// back through the accumulated congruence, so v^T A v < 0 holds for
    /// the original matrix exactly.
    pub fn psd_check_exact(&self) -> ExactPsd {
        let d = self.dim();
        let mut a: Vec<Vec<Rat>> = self.rows();
        // Columns of `lift` carry the congruence transform: a witness v in
        // current coordinates lifts to lift * v in the original ones.
        let mut lift: Vec<Vec<Rat>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        let lift_vec = |lift: &Vec<Vec<Rat>>, v: &[Rat]| -> Vec<Rat> {
            (0..d)
                .map(|i| {
                    let mut acc = Rat::zero();
                    for (j, vj) in v.iter().enumerate() {
                        if !vj.is_zero() {
                            acc += &lift[i][j] * vj;
                        }
                    }
                    acc
                })
                .collect()
        };

        let mut remaining: Vec<usize> = (0..d).collect();
        loop {
            // Negative diagonal: direct witness.
            if let Some(&i) = remaining.iter().find(|&&i| a[i][i].is_negative()) {
                let mut v = vec![Rat::zero(); d];
                v[i] = Rat::one();
                let w = lift_vec(&lift, &v);
                debug_assert!(self.quad_form(&w).is_negative());
                return ExactPsd::NotPsd { witness: w };
            }
            // Positive pivot: eliminate its row and column.
            if let Some(pos) = remaining.iter().position(|&i| a[i][i].is_positive()) {
                let p = remaining.remove(pos);
                let pivot = a[p][p].clone();
                let coeffs: Vec<(usize, Rat)> = remaining
                    .iter()
                    .map(|&j| (j, &a[j][p] / &pivot))
                    .collect();
                // A <- E A E^T with E = I - sum_j c_j e_j e_p^T, which on the
                // remaining block is A[j][k] -= c_j * pivot * c_k.
                for &(j, ref c) in &coeffs {
                    if c.is_zero() {
                        continue;
                    }
                    for &(k, ref ck) in &coeffs {
                        if ck.is_zero() {
                            continue;
                        }
                        let delta = c * &pivot * ck;
                        a[j][k] = &a[j][k] - &delta;
                    }
                    a[j][p] = Rat::zero();
                    a[p][j] = Rat::zero();
                    // congruence bookkeeping: col_j(lift) -= c * col_p(lift)
                    for row in lift.iter_mut() {
                        let t = &row[p] * c;
                        row[j] = &row[j] - &t;
                    }
                }
                continue;
            }
            // All remaining diagonals are zero.
            let mut off = None;
            'scan: for (ii, &i) in remaining.iter().enumerate() {
                for &j in &remaining[ii + 1..] {
                    if !a[i][j].is_zero() {
                        off = Some((i, j));
                        break 'scan;
                    }
                }
            }
            match off {
                None => return ExactPsd::Psd,
                Some((i, j)) => {
                    let mut v = vec![Rat::zero(); d];
                    v[i] = Rat::one();
                    v[j] = if a[i][j].is_positive() {
                        -Rat::one()
                    } else {
                        Rat::one()
                    };
                    let w = lift_vec(&lift, &v);
                    debug_assert!(self.quad_form(&w).is_negative());
                    return ExactPsd::NotPsd { witness: w };
                }
            }
        }
    }
}

/// Reduced row echelon form in place. Returns the pivot column of each
/// pivot row, in order.
pub fn rref(a: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &[Vec<Rat>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

/// Basis of the kernel of `a` (viewed as a linear map on column vectors).
pub fn nullspace(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if a.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// A particular solution of A x = b, or None if the system is inconsistent.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&cols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][cols].clone();
    }
    Some(x)
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via the continued-fraction convergent/semiconvergent construction.
pub fn approx_rational(x: f64, max_den: u64) -> Rat {
    assert!(max_den >= 1);
    if !x.is_finite() {
        return Rat::zero();
    }
    let neg = x < 0.0;
    let mut x = x.abs();
    // convergents p/q
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let bound = BigInt::from(max_den);
    for _ in 0..64 {
        let a = x.floor();
        if a > 1e18 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > bound {
            // largest semiconvergent within the bound
            let k = (&bound - &q0) / &q1.clone().max(BigInt::one());
            let ps = &k * &p1 + &p0;
            let qs = &k * &q1 + &q0;
            let cand_semi = if qs.is_positive() {
                Some(Rat::new(ps, qs))
            } else {
                None
            };
            let cand_conv = if q1.is_positive() {
                Some(Rat::new(p1.clone(), q1.clone()))
            } else {
                None
            };
            let xr = Rat::from_float(x).unwrap_or_else(Rat::zero);
            let best = match (cand_semi, cand_conv) {
                (Some(s), Some(c)) => {
                    if (&s - &xr).abs() <= (&c - &xr).abs() {
                        s
                    } else {
                        c
                    }
                }
                (Some(s), None) => s,
                (None, Some(c)) => c,
                (None, None) => Rat::zero(),
            };
            return if neg { -best } else { best };
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = x - a;
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    let best = if q1.is_positive() {
        Rat::new(p1, q1)
    } else {
        Rat::zero()
    };
    if neg {
        -best
    } else {
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn sym_r(rows: &[Vec<i64>]) -> SymMat<Rat> {
        let d = rows.len();
        let mut m = SymMat::zeros(d);
        for i in 0..d {
            for j in i..d {
                m.set(i, j, rat_i(rows[i][j]));
            }
        }
        m
    }

    #[test]
    fn exact_psd_examples() {
        // determinants 2, 1 > 0
        assert!(sym_r(&[vec![2, 1], vec![1, 1]]).psd_check_exact().is_psd());
        // rank-1 Gram
        assert!(sym_r(&[vec![1, 1], vec![1, 1]]).psd_check_exact().is_psd());
        // zero matrix
        assert!(sym_r(&[vec![0, 0], vec![0, 0]]).psd_check_exact().is_psd());

        let m = sym_r(&[vec![0, 1], vec![1, 0]]);
        match m.psd_check_exact() {
            ExactPsd::NotPsd { witness } => {
                let q = m.quad_form(&witness);
                assert!(q.is_negative());
                // the canonical witness here is (1, -1)
                assert_eq!(witness, vec![rat_i(1), rat_i(-1)]);
            }
            ExactPsd::Psd => panic!("offdiagonal matrix is not PSD"),
        }
    }

    #[test]
    fn exact_psd_witness_after_elimination() {
        // positive pivot first, then hidden indefiniteness
        let m = sym_r(&[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 0]]);
        match m.psd_check_exact() {
            ExactPsd::NotPsd { witness } => {
                assert!(m.quad_form(&witness).is_negative());
            }
            ExactPsd::Psd => panic!("indefinite"),
        }
    }

    #[test]
    fn rref_solve_nullspace() {
        let a = vec![
            vec![rat_i(1), rat_i(2), rat_i(3)],
            vec![rat_i(2), rat_i(4), rat_i(6)],
        ];
        assert_eq!(rank(&a), 1);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let r0 = &a[0][0] * &v[0] + &a[0][1] * &v[1] + &a[0][2] * &v[2];
            assert!(r0.is_zero());
        }
        let sol = solve(&a, &[rat_i(6), rat_i(12)]).unwrap();
        let r = &a[0][0] * &sol[0] + &a[0][1] * &sol[1] + &a[0][2] * &sol[2];
        assert_eq!(r, rat_i(6));
        assert!(solve(&a, &[rat_i(1), rat_i(0)]).is_none());
    }

    #[test]
    fn approx_rational_basics() {
        assert_eq!(approx_rational(0.5, 10), rat(1, 2));
        assert_eq!(approx_rational(-0.25, 10), rat(-1, 4));
        assert_eq!(approx_rational(1.0 / 3.0, 100), rat(1, 3));
        let pi = std::f64::consts::PI;
        let a = approx_rational(pi, 1000);
        assert!(*a.denom() <= BigInt::from(1000));
        let err = (a.to_f64().unwrap() - pi).abs();
        assert!(err < 1e-5);
    }
}
