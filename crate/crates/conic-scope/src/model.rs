//! Problem representations: the parametric pencil A0 + sum x_i A_i, the
//! implicit equality form <M_i, X> = b_i, projected-spectrahedron
//! representations, and file ingestion (JSON pencils, an SDPA subset).
//!
//! Conversions between the two forms stay in the ground field: exact over
//! rationals, tolerance-based over floats.

use crate::linalg;
use crate::symmat::exact::{self, Rat};
use crate::symmat::{SymMat, Subspace};
use num_traits::Zero;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("dependent generators at index {0}")]
    DependentGenerators(usize),
    #[error("dimension mismatch in input matrices")]
    DimMismatch,
    #[error("empty affine space: the equality system is inconsistent")]
    EmptyAffineSpace,
    #[error("improper pencil: the affine space contains the origin")]
    ImproperPencil,
    #[error("unsupported SDPA feature: {0}")]
    UnsupportedSdpa(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Affine subspace of Sym^d in pencil form: L = A0 + span{A_1..A_n}.
///
/// Invariants established at construction: the generators are linearly
/// independent and all dimensions agree. `proper` records whether the
/// affine space misses the origin (A0 not in the generator span), which
/// homogenization requires.
#[derive(Debug, Clone)]
pub struct Pencil<T> {
    a0: SymMat<T>,
    gens: Vec<SymMat<T>>,
    proper: bool,
}

impl<T> Pencil<T> {
    pub fn dim(&self) -> usize
    where
        T: Clone + Zero,
    {
        self.a0.dim()
    }

    pub fn a0(&self) -> &SymMat<T> {
        &self.a0
    }

    pub fn generators(&self) -> &[SymMat<T>] {
        &self.gens
    }

    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }
}

impl Pencil<f64> {
    pub fn new(a0: SymMat<f64>, gens: Vec<SymMat<f64>>) -> Result<Self, ModelError> {
        let d = a0.dim();
        if gens.iter().any(|g| g.dim() != d) {
            return Err(ModelError::DimMismatch);
        }
        // independence check, reporting the first offending generator
        let tol = 1e-10;
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            let v = svec_f64(g);
            let before = basis.len();
            basis = linalg::orthonormalize(
                &basis
                    .iter()
                    .cloned()
                    .chain(std::iter::once(v))
                    .collect::<Vec<_>>(),
                tol,
            );
            if basis.len() == before {
                return Err(ModelError::DependentGenerators(k + 1));
            }
        }
        // properness: A0 outside span of generators
        let span = Subspace::from_vectors(d * (d + 1) / 2, &basis, tol);
        let proper = !span.contains(&svec_f64(&a0), 1e-9);
        Ok(Pencil { a0, gens, proper })
    }

    /// A(x) = A0 + sum x_i A_i.
    pub fn evaluate(&self, x: &[f64]) -> SymMat<f64> {
        assert_eq!(x.len(), self.gens.len());
        let mut m = self.a0.clone();
        for (g, &xi) in self.gens.iter().zip(x) {
            m = m.add(&g.scale(&xi));
        }
        m
    }

    /// Frobenius scale of the pencil data, used for scale-relative tolerances.
    pub fn data_scale(&self) -> f64 {
        let mut s = self.a0.frob_norm();
        for g in &self.gens {
            s = s.max(g.frob_norm());
        }
        s.max(1.0)
    }
}

impl Pencil<Rat> {
    pub fn new_rational(a0: SymMat<Rat>, gens: Vec<SymMat<Rat>>) -> Result<Self, ModelError> {
        let d = a0.dim();
        if gens.iter().any(|g| g.dim() != d) {
            return Err(ModelError::DimMismatch);
        }
        let rows: Vec<Vec<Rat>> = gens.iter().map(svec_rat).collect();
        if exact::rank(&rows) < rows.len() {
            // locate the first offending generator for the error message
            for k in 1..=rows.len() {
                if exact::rank(&rows[..k].to_vec()) < k {
                    return Err(ModelError::DependentGenerators(k));
                }
            }
        }
        let mut aug = rows.clone();
        aug.push(svec_rat(&a0));
        let proper = if gens.is_empty() {
            svec_rat(&a0).iter().any(|v| !v.is_zero())
        } else {
            exact::rank(&aug) == gens.len() + 1
        };
        Ok(Pencil { a0, gens, proper })
    }

    pub fn to_f64(&self) -> Pencil<f64> {
        Pencil {
            a0: self.a0.to_f64(),
            gens: self.gens.iter().map(|g| g.to_f64()).collect(),
            proper: self.proper,
        }
    }
}

/// Implicit (standard equality) form: { X : <M_i, X> = b_i }.
/// The objective matrix is parsed when present but plays no role in
/// classification.
#[derive(Debug, Clone)]
pub struct ImplicitSdp<T> {
    pub dim: usize,
    pub constraints: Vec<(SymMat<T>, T)>,
    pub objective: Option<SymMat<T>>,
}

/// Either representation, fresh from a parser.
#[derive(Debug)]
pub enum Parsed {
    PencilF64(Pencil<f64>),
    PencilRational(Pencil<Rat>),
    Implicit(ImplicitSdp<f64>),
}

/// svec with the sqrt(2) off-diagonal scaling (isometry onto R^{d(d+1)/2}).
pub fn svec_f64(m: &SymMat<f64>) -> Vec<f64> {
    let d = m.dim();
    let mut out = Vec::with_capacity(d * (d + 1) / 2);
    for i in 0..d {
        for j in i..d {
            let v = m.get(i, j);
            out.push(if i == j { v } else { std::f64::consts::SQRT_2 * v });
        }
    }
    out
}

pub fn unsvec_f64(d: usize, flat: &[f64]) -> SymMat<f64> {
    let mut m = SymMat::zeros(d);
    let mut pos = 0;
    for i in 0..d {
        for j in i..d {
            let v = flat[pos];
            pos += 1;
            m.set(i, j, if i == j { v } else { v / std::f64::consts::SQRT_2 });
        }
    }
    m
}

/// Exact flattening for rationals. Uses plain upper-triangle entries with a
/// doubling weight on off-diagonals so that dot products equal the trace
/// inner product against *unweighted* flattenings; for rank/solve purposes
/// any fixed invertible flattening works, so keep it simple: entry list with
/// off-diagonals listed once (inner products are not taken on these).
pub fn svec_rat(m: &SymMat<Rat>) -> Vec<Rat> {
    let d = m.dim();
    let mut out = Vec::with_capacity(d * (d + 1) / 2);
    for i in 0..d {
        for j in i..d {
            out.push(m.get(i, j));
        }
    }
    out
}

pub fn unsvec_rat(d: usize, flat: &[Rat]) -> SymMat<Rat> {
    let mut m = SymMat::zeros(d);
    let mut pos = 0;
    for i in 0..d {
        for j in i..d {
            m.set(i, j, flat[pos].clone());
            pos += 1;
        }
    }
    m
}

// ---------------------------------------------------------------------------
// conversions between representations
// ---------------------------------------------------------------------------

impl ImplicitSdp<Rat> {
    /// Solve the equality system over the rationals: the returned pencil's
    /// affine span equals the solution set exactly.
    pub fn to_parametric(&self) -> Result<Pencil<Rat>, ModelError> {
        let d = self.dim;
        let rows: Vec<Vec<Rat>> = self
            .constraints
            .iter()
            .map(|(m, _)| constraint_row_rat(m))
            .collect();
        let rhs: Vec<Rat> = self.constraints.iter().map(|(_, b)| b.clone()).collect();
        let particular = exact::solve(&rows, &rhs).ok_or(ModelError::EmptyAffineSpace)?;
        let null = if rows.is_empty() {
            // whole space
            let n = d * (d + 1) / 2;
            (0..n)
                .map(|k| {
                    let mut v = vec![Rat::zero(); n];
                    v[k] = Rat::from_integer(1.into());
                    v
                })
                .collect()
        } else {
            exact::nullspace(&rows)
        };
        let a0 = unsvec_rat(d, &particular);
        let gens: Vec<SymMat<Rat>> = null.iter().map(|v| unsvec_rat(d, v)).collect();
        Pencil::new_rational(a0, gens)
    }
}

impl ImplicitSdp<f64> {
    pub fn to_parametric(&self, tol: f64) -> Result<Pencil<f64>, ModelError> {
        let d = self.dim;
        let n_flat = d * (d + 1) / 2;
        let rows: Vec<Vec<f64>> = self
            .constraints
            .iter()
            .map(|(m, _)| svec_f64(m))
            .collect();
        let rhs: Vec<f64> = self.constraints.iter().map(|(_, b)| *b).collect();
        let gens: Vec<SymMat<f64>> = {
            let row_space = Subspace::from_vectors(n_flat, &rows, tol);
            row_space
                .orthogonal_complement(tol)
                .basis()
                .iter()
                .map(|v| unsvec_f64(d, v))
                .collect()
        };
        let particular = if rows.is_empty() {
            vec![0.0; n_flat]
        } else {
            // minimum-norm solution via the row Gram matrix
            let m = rows.len();
            let mut gram = linalg::Mat::zeros(m, m);
            for i in 0..m {
                for j in 0..m {
                    gram.set(i, j, linalg::dot(&rows[i], &rows[j]));
                }
            }
            let z = linalg::solve_spd(&gram, &rhs).ok_or(ModelError::EmptyAffineSpace)?;
            let mut p = vec![0.0; n_flat];
            for (zi, row) in z.iter().zip(&rows) {
                linalg::axpy(*zi, row, &mut p);
            }
            // consistency: residual of the normal-equation solution
            let resid: f64 = rows
                .iter()
                .zip(&rhs)
                .map(|(row, b)| (linalg::dot(row, &p) - b).powi(2))
                .sum::<f64>()
                .sqrt();
            let scale = rhs.iter().map(|v| v.abs()).fold(1.0, f64::max);
            if resid > tol.sqrt() * scale {
                return Err(ModelError::EmptyAffineSpace);
            }
            p
        };
        Pencil::new(unsvec_f64(d, &particular), gens)
    }
}

fn constraint_row_rat(m: &SymMat<Rat>) -> Vec<Rat> {
    // <M, X> as a linear functional of the packed upper triangle of X:
    // diagonal entries weight 1, off-diagonals weight 2.
    let d = m.dim();
    let mut out = Vec::with_capacity(d * (d + 1) / 2);
    let two = Rat::from_integer(2.into());
    for i in 0..d {
        for j in i..d {
            let v = m.get(i, j);
            out.push(if i == j { v } else { v * &two });
        }
    }
    out
}

impl Pencil<Rat> {
    /// Orthogonal-complement construction of the implicit form; exact.
    pub fn to_implicit(&self) -> ImplicitSdp<Rat> {
        let rows: Vec<Vec<Rat>> = self.gens.iter().map(svec_rat).collect();
        let null = if rows.is_empty() {
            let n = self.a0.dim() * (self.a0.dim() + 1) / 2;
            (0..n)
                .map(|k| {
                    let mut v = vec![Rat::zero(); n];
                    v[k] = Rat::from_integer(1.into());
                    v
                })
                .collect()
        } else {
            exact::nullspace(&rows)
        };
        // nullspace of plain flattening corresponds to functionals once the
        // off-diagonal doubling is undone; build M from the dual weighting.
        let constraints = null
            .iter()
            .map(|v| {
                let m = dual_functional_rat(self.a0.dim(), v);
                let b = crate::symmat::inner(&m, &self.a0).expect("dims agree");
                (m, b)
            })
            .collect();
        ImplicitSdp {
            dim: self.a0.dim(),
            constraints,
            objective: None,
        }
    }
}

/// Functional vector v (on packed upper-triangle coordinates) as a symmetric
/// matrix M with <M, X> = v . packed(X): diagonal entries copy, off-diagonal
/// entries halve.
fn dual_functional_rat(d: usize, v: &[Rat]) -> SymMat<Rat> {
    let mut m = SymMat::zeros(d);
    let half = exact::rat(1, 2);
    let mut pos = 0;
    for i in 0..d {
        for j in i..d {
            let val = if i == j {
                v[pos].clone()
            } else {
                &v[pos] * &half
            };
            m.set(i, j, val);
            pos += 1;
        }
    }
    m
}

impl Pencil<f64> {
    pub fn to_implicit(&self, tol: f64) -> ImplicitSdp<f64> {
        let d = self.a0.dim();
        let n_flat = d * (d + 1) / 2;
        let span = Subspace::from_vectors(
            n_flat,
            &self.gens.iter().map(svec_f64).collect::<Vec<_>>(),
            tol,
        );
        let constraints = span
            .orthogonal_complement(tol)
            .basis()
            .iter()
            .map(|v| {
                let m = unsvec_f64(d, v);
                let b = crate::symmat::inner(&m, &self.a0).expect("dims agree");
                (m, b)
            })
            .collect();
        ImplicitSdp {
            dim: d,
            constraints,
            objective: None,
        }
    }
}

// ---------------------------------------------------------------------------
// projected spectrahedra
// ---------------------------------------------------------------------------

/// Representation of a projection of a spectrahedron:
/// { x in R^nx | exists z in R^nz : A + sum x_i B_i + sum z_j C_j >= 0 }.
#[derive(Debug, Clone)]
pub struct ProjSpecRep {
    pub a: SymMat<f64>,
    pub b: Vec<SymMat<f64>>,
    pub c: Vec<SymMat<f64>>,
}

impl ProjSpecRep {
    pub fn new(a: SymMat<f64>, b: Vec<SymMat<f64>>, c: Vec<SymMat<f64>>) -> Result<Self, ModelError> {
        let k = a.dim();
        if b.iter().chain(&c).any(|m| m.dim() != k) {
            return Err(ModelError::DimMismatch);
        }
        // joint independence of the B's and C's
        let flats: Vec<Vec<f64>> = b.iter().chain(&c).map(svec_f64).collect();
        let rank = linalg::orthonormalize(&flats, 1e-10).len();
        if rank < flats.len() {
            return Err(ModelError::DependentGenerators(rank + 1));
        }
        Ok(ProjSpecRep { a, b, c })
    }

    pub fn block_dim(&self) -> usize {
        self.a.dim()
    }

    pub fn nx(&self) -> usize {
        self.b.len()
    }

    pub fn nz(&self) -> usize {
        self.c.len()
    }
}

// ---------------------------------------------------------------------------
// parsing and serialization
// ---------------------------------------------------------------------------

/// Parse a problem from text. `format` selects the grammar.
pub fn parse_problem(text: &str, format: InputFormat) -> Result<Parsed, ModelError> {
    match format {
        InputFormat::Json => parse_json(text),
        InputFormat::Sdpa => parse_sdpa(text).map(Parsed::Implicit),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Json,
    Sdpa,
}

fn json_err(msg: impl std::fmt::Display) -> ModelError {
    ModelError::Syntax(msg.to_string())
}

pub fn parse_json(text: &str) -> Result<Parsed, ModelError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| json_err(format!("line {} column {}: {}", e.line(), e.column(), e)))?;
    let obj = v.as_object().ok_or_else(|| json_err("expected a JSON object"))?;
    let d = obj
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| json_err("missing or invalid field \"d\""))? as usize;
    if d == 0 {
        return Err(json_err("dimension must be positive"));
    }
    let arith = obj
        .get("arith")
        .and_then(Value::as_str)
        .unwrap_or("f64");
    let a0_v = obj.get("A0").ok_or_else(|| json_err("missing field \"A0\""))?;
    let gens_v = obj
        .get("A")
        .and_then(Value::as_array)
        .ok_or_else(|| json_err("missing or invalid field \"A\""))?;
    match arith {
        "f64" => {
            let a0 = json_matrix_f64(a0_v, d)?;
            let gens = gens_v
                .iter()
                .map(|g| json_matrix_f64(g, d))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Parsed::PencilF64(Pencil::new(a0, gens)?))
        }
        "rational" => {
            let a0 = json_matrix_rat(a0_v, d)?;
            let gens = gens_v
                .iter()
                .map(|g| json_matrix_rat(g, d))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Parsed::PencilRational(Pencil::new_rational(a0, gens)?))
        }
        other => Err(json_err(format!("unknown arithmetic tag {other:?}"))),
    }
}

fn json_matrix_f64(v: &Value, d: usize) -> Result<SymMat<f64>, ModelError> {
    let rows = v.as_array().ok_or_else(|| json_err("matrix must be a row list"))?;
    if rows.len() != d {
        return Err(ModelError::DimMismatch);
    }
    let mut m = SymMat::zeros(d);
    for (i, row_v) in rows.iter().enumerate() {
        let row = row_v.as_array().ok_or_else(|| json_err("matrix row must be a list"))?;
        if row.len() != d {
            return Err(ModelError::DimMismatch);
        }
        for (j, cell) in row.iter().enumerate() {
            let x = cell
                .as_f64()
                .ok_or_else(|| json_err(format!("entry ({i},{j}) is not a number")))?;
            if j >= i {
                m.set(i, j, x);
            } else if (m.get(j, i) - x).abs() > 1e-12 * (1.0 + x.abs()) {
                return Err(json_err(format!("matrix not symmetric at ({i},{j})")));
            }
        }
    }
    Ok(m)
}

pub fn parse_rat_str(s: &str) -> Result<Rat, ModelError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: num_bigint::BigInt = num
        .parse()
        .map_err(|_| json_err(format!("invalid rational numerator {num:?}")))?;
    let q: num_bigint::BigInt = den
        .parse()
        .map_err(|_| json_err(format!("invalid rational denominator {den:?}")))?;
    if q.is_zero() {
        return Err(json_err("zero denominator"));
    }
    Ok(Rat::new(p, q))
}

fn json_matrix_rat(v: &Value, d: usize) -> Result<SymMat<Rat>, ModelError> {
    let rows = v.as_array().ok_or_else(|| json_err("matrix must be a row list"))?;
    if rows.len() != d {
        return Err(ModelError::DimMismatch);
    }
    let mut m = SymMat::zeros(d);
    for (i, row_v) in rows.iter().enumerate() {
        let row = row_v.as_array().ok_or_else(|| json_err("matrix row must be a list"))?;
        if row.len() != d {
            return Err(ModelError::DimMismatch);
        }
        for (j, cell) in row.iter().enumerate() {
            let x = match cell {
                Value::String(s) => parse_rat_str(s)?,
                Value::Number(n) => {
                    if let Some(i64v) = n.as_i64() {
                        Rat::from_integer(i64v.into())
                    } else {
                        return Err(json_err(format!(
                            "rational entries must be integers or \"p/q\" strings, got {n}"
                        )));
                    }
                }
                _ => return Err(json_err(format!("entry ({i},{j}) is not a rational"))),
            };
            if j >= i {
                m.set(i, j, x);
            } else if m.get(j, i) != x {
                return Err(json_err(format!("matrix not symmetric at ({i},{j})")));
            }
        }
    }
    Ok(m)
}

pub fn rat_to_string(r: &Rat) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn pencil_f64_to_json(p: &Pencil<f64>, homogeneous: bool) -> Value {
    let mat = |m: &SymMat<f64>| -> Value {
        Value::Array(
            m.rows()
                .into_iter()
                .map(|row| Value::Array(row.into_iter().map(|x| serde_json::json!(x)).collect()))
                .collect(),
        )
    };
    let mut obj = serde_json::Map::new();
    obj.insert("d".into(), serde_json::json!(p.dim()));
    obj.insert("arith".into(), serde_json::json!("f64"));
    obj.insert("A0".into(), mat(p.a0()));
    obj.insert(
        "A".into(),
        Value::Array(p.generators().iter().map(mat).collect()),
    );
    if homogeneous {
        obj.insert("homogeneous".into(), serde_json::json!(true));
    }
    Value::Object(obj)
}

pub fn pencil_rat_to_json(p: &Pencil<Rat>, homogeneous: bool) -> Value {
    let mat = |m: &SymMat<Rat>| -> Value {
        Value::Array(
            m.rows()
                .into_iter()
                .map(|row| {
                    Value::Array(
                        row.into_iter()
                            .map(|x| Value::String(rat_to_string(&x)))
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    let mut obj = serde_json::Map::new();
    obj.insert("d".into(), serde_json::json!(p.dim()));
    obj.insert("arith".into(), serde_json::json!("rational"));
    obj.insert("A0".into(), mat(p.a0()));
    obj.insert(
        "A".into(),
        Value::Array(p.generators().iter().map(mat).collect()),
    );
    if homogeneous {
        obj.insert("homogeneous".into(), serde_json::json!(true));
    }
    Value::Object(obj)
}

/// SDPA sparse ".dat-s" subset: single dense block, equality reading.
///
/// Layout: number of constraint matrices m, number of blocks (must be 1),
/// the block size, the right-hand-side vector, then entry lines
/// `k b i j v` (1-based indices, upper triangle). Matrix 0 is the objective;
/// it is stored but ignored by classification.
pub fn parse_sdpa(text: &str) -> Result<ImplicitSdp<f64>, ModelError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(ln, l)| (ln + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('"') && !t.starts_with('*')
        });
    let mut next_line = |what: &str| -> Result<(usize, String), ModelError> {
        lines
            .next()
            .map(|(ln, l)| (ln, l.to_string()))
            .ok_or_else(|| ModelError::Syntax(format!("unexpected end of file, expected {what}")))
    };

    let (ln, l) = next_line("constraint count")?;
    let m: usize = first_token(&l)
        .parse()
        .map_err(|_| ModelError::Syntax(format!("line {ln}: invalid constraint count")))?;
    let (ln, l) = next_line("block count")?;
    let nblocks: usize = first_token(&l)
        .parse()
        .map_err(|_| ModelError::Syntax(format!("line {ln}: invalid block count")))?;
    if nblocks != 1 {
        return Err(ModelError::UnsupportedSdpa(format!(
            "{nblocks} blocks; only a single dense block is supported"
        )));
    }
    let (ln, l) = next_line("block size")?;
    let dim: i64 = first_token(&l)
        .trim_matches(|c| c == '(' || c == ')' || c == '{' || c == '}' || c == ',')
        .parse()
        .map_err(|_| ModelError::Syntax(format!("line {ln}: invalid block size")))?;
    let dim = dim.unsigned_abs() as usize;
    if dim == 0 {
        return Err(ModelError::Syntax(format!("line {ln}: zero block size")));
    }
    let (ln, l) = next_line("right-hand-side vector")?;
    let rhs: Vec<f64> = l
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| ModelError::Syntax(format!("line {ln}: invalid value {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    if rhs.len() != m {
        return Err(ModelError::Syntax(format!(
            "line {ln}: expected {m} right-hand-side values, found {}",
            rhs.len()
        )));
    }

    let mut mats: Vec<SymMat<f64>> = (0..=m).map(|_| SymMat::zeros(dim)).collect();
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 5 {
            return Err(ModelError::Syntax(format!(
                "line {ln}: expected `k b i j v`, found {l:?}"
            )));
        }
        let k: usize = toks[0]
            .parse()
            .map_err(|_| ModelError::Syntax(format!("line {ln}: invalid matrix index")))?;
        let blk: usize = toks[1]
            .parse()
            .map_err(|_| ModelError::Syntax(format!("line {ln}: invalid block index")))?;
        if blk != 1 {
            return Err(ModelError::UnsupportedSdpa(format!(
                "line {ln}: block {blk} referenced; only block 1 exists"
            )));
        }
        if k > m {
            return Err(ModelError::Syntax(format!(
                "line {ln}: matrix index {k} exceeds constraint count {m}"
            )));
        }
        let i: usize = toks[2]
            .parse()
            .map_err(|_| ModelError::Syntax(format!("line {ln}: invalid row index")))?;
        let j: usize = toks[3]
            .parse()
            .map_err(|_| ModelError::Syntax(format!("line {ln}: invalid column index")))?;
        if i == 0 || j == 0 || i > dim || j > dim {
            return Err(ModelError::Syntax(format!("line {ln}: index out of range")));
        }
        let v: f64 = toks[4]
            .parse()
            .map_err(|_| ModelError::Syntax(format!("line {ln}: invalid value")))?;
        mats[k].set(i - 1, j - 1, v);
    }

    let objective = Some(mats[0].clone());
    let constraints = mats
        .into_iter()
        .skip(1)
        .zip(rhs)
        .map(|(m, b)| (m, b))
        .collect();
    Ok(ImplicitSdp {
        dim,
        constraints,
        objective,
    })
}

fn first_token(l: &str) -> &str {
    l.split_whitespace().next().unwrap_or("")
}

/// Affine-span equality of two float pencils by mutual containment of
/// svec'd spans and matching offsets, to the given tolerance.
pub fn same_affine_span(p: &Pencil<f64>, q: &Pencil<f64>, tol: f64) -> bool {
    if p.dim() != q.dim() {
        return false;
    }
    let n_flat = p.dim() * (p.dim() + 1) / 2;
    let sp = Subspace::from_vectors(n_flat, &p.gens.iter().map(svec_f64).collect::<Vec<_>>(), tol);
    let sq = Subspace::from_vectors(n_flat, &q.gens.iter().map(svec_f64).collect::<Vec<_>>(), tol);
    if sp.dim() != sq.dim() {
        return false;
    }
    for b in sp.basis() {
        if !sq.contains(b, tol) {
            return false;
        }
    }
    // offsets agree modulo the common span
    let mut diff = svec_f64(&p.a0);
    let qa = svec_f64(&q.a0);
    for (d, q) in diff.iter_mut().zip(&qa) {
        *d -= q;
    }
    sp.contains(&diff, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmat::exact::rat_i;

    fn e(d: usize, i: usize, j: usize) -> SymMat<f64> {
        let mut m = SymMat::zeros(d);
        m.set(i, j, 1.0);
        m
    }

    #[test]
    fn parse_example_pencil_json() {
        let text = r#"{"d":2, "arith":"f64", "A0":[[0,1],[1,0]], "A":[[[0,0],[0,1]]]}"#;
        match parse_problem(text, InputFormat::Json).unwrap() {
            Parsed::PencilF64(p) => {
                assert_eq!(p.dim(), 2);
                assert_eq!(p.n_gens(), 1);
                assert!(p.is_proper());
                assert_eq!(p.a0().get(0, 1), 1.0);
            }
            _ => panic!("expected float pencil"),
        }
    }

    #[test]
    fn dependent_generators_rejected() {
        let text = r#"{"d":2, "arith":"f64", "A0":[[1,0],[0,0]],
                       "A":[[[0,0],[0,1]],[[0,0],[0,2]]]}"#;
        match parse_problem(text, InputFormat::Json) {
            Err(ModelError::DependentGenerators(2)) => {}
            other => panic!("expected dependent-generator error, got {other:?}"),
        }
    }

    #[test]
    fn parse_sdpa_single_constraint() {
        let text = "1\n1\n2\n1.0\n1 1 1 1 1.0\n";
        let sdp = parse_sdpa(text).unwrap();
        assert_eq!(sdp.dim, 2);
        assert_eq!(sdp.constraints.len(), 1);
        assert_eq!(sdp.constraints[0].0.get(0, 0), 1.0);
        assert_eq!(sdp.constraints[0].1, 1.0);
    }

    #[test]
    fn sdpa_multiblock_rejected() {
        let text = "1\n2\n2 2\n1.0\n";
        assert!(matches!(
            parse_sdpa(text),
            Err(ModelError::UnsupportedSdpa(_))
        ));
    }

    #[test]
    fn implicit_to_parametric_hand_checked() {
        // d=2, <E11,X> = 1  ->  A0 = E11, generators span {E22, E12+E21}
        let mut e11 = SymMat::zeros(2);
        e11.set(0, 0, rat_i(1));
        let sdp = ImplicitSdp {
            dim: 2,
            constraints: vec![(e11, rat_i(1))],
            objective: None,
        };
        let p = sdp.to_parametric().unwrap();
        assert_eq!(p.n_gens(), 2);
        assert_eq!(p.a0().get(0, 0), rat_i(1));
        // every generator has zero (0,0) entry
        for g in p.generators() {
            assert!(g.get(0, 0).is_zero());
        }
    }

    #[test]
    fn implicit_to_parametric_two_constraints() {
        // <I,X> = 0 and <E11,X> = 1: A0 with diag (1,-1), generator E12+E21
        let mut eye = SymMat::zeros(2);
        eye.set(0, 0, rat_i(1));
        eye.set(1, 1, rat_i(1));
        let mut e11 = SymMat::zeros(2);
        e11.set(0, 0, rat_i(1));
        let sdp = ImplicitSdp {
            dim: 2,
            constraints: vec![(eye, rat_i(0)), (e11, rat_i(1))],
            objective: None,
        };
        let p = sdp.to_parametric().unwrap();
        assert_eq!(p.n_gens(), 1);
        assert_eq!(p.a0().get(0, 0), rat_i(1));
        assert_eq!(p.a0().get(1, 1), rat_i(-1));
        assert!(p.generators()[0].get(0, 0).is_zero());
        assert!(p.generators()[0].get(1, 1).is_zero());
        assert!(!p.generators()[0].get(0, 1).is_zero());
    }

    #[test]
    fn inconsistent_system_detected() {
        let mut e11 = SymMat::zeros(2);
        e11.set(0, 0, rat_i(1));
        let sdp = ImplicitSdp {
            dim: 2,
            constraints: vec![(e11.clone(), rat_i(1)), (e11, rat_i(2))],
            objective: None,
        };
        assert!(matches!(
            sdp.to_parametric(),
            Err(ModelError::EmptyAffineSpace)
        ));
    }

    #[test]
    fn roundtrip_parametric_implicit_float() {
        // standard weakly infeasible pencil
        let a0 = SymMat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let p = Pencil::new(a0, vec![e(2, 1, 1)]).unwrap();
        let imp = p.to_implicit(1e-10);
        // entries (1,1)=0 and (1,2)=1 are pinned: two constraints
        assert_eq!(imp.constraints.len(), 2);
        let back = imp.to_parametric(1e-10).unwrap();
        assert!(same_affine_span(&p, &back, 1e-9));
    }

    #[test]
    fn roundtrip_random_rational() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let d = 3;
            let mut mats: Vec<SymMat<Rat>> = Vec::new();
            for _ in 0..3 {
                let mut m = SymMat::zeros(d);
                for i in 0..d {
                    for j in i..d {
                        m.set(i, j, exact::rat(rng.gen_range(-4..5), 2));
                    }
                }
                mats.push(m);
            }
            let p = match Pencil::new_rational(mats[0].clone(), mats[1..].to_vec()) {
                Ok(p) => p,
                Err(_) => continue, // rare dependent draw
            };
            let back = p.to_implicit().to_parametric().unwrap();
            assert!(same_affine_span(&p.to_f64(), &back.to_f64(), 1e-8));
        }
    }

    #[test]
    fn json_rational_roundtrip_bit_exact() {
        let text = r#"{"d":2, "arith":"rational",
                       "A0":[["0","1"],["1","0"]],
                       "A":[[["0","0"],["0","1/3"]]]}"#;
        let p = match parse_problem(text, InputFormat::Json).unwrap() {
            Parsed::PencilRational(p) => p,
            _ => panic!("expected rational pencil"),
        };
        let json = pencil_rat_to_json(&p, false);
        let p2 = match parse_json(&json.to_string()).unwrap() {
            Parsed::PencilRational(p) => p,
            _ => panic!(),
        };
        assert_eq!(p.a0(), p2.a0());
        assert_eq!(p.generators(), p2.generators());
    }

    #[test]
    fn improper_pencil_flagged() {
        // A0 = 0, generators the full basis of Sym^2: improper
        let zero = SymMat::zeros(2);
        let gens = vec![e(2, 0, 0), e(2, 1, 1), e(2, 0, 1)];
        let p = Pencil::new(zero, gens).unwrap();
        assert!(!p.is_proper());
        let imp = p.to_implicit(1e-10);
        assert!(imp.constraints.is_empty());
    }
}
