//! Stable JSON serialization of classification reports and certificates.
//!
//! Field order is deterministic (BTree-backed maps), so identical inputs
//! and configuration produce byte-identical output.

use crate::certify::{FailedCheck, VerificationResult};
use crate::facial::{CertificateChain, ChainEntry, FeasibilityReport, FeasibilityType};
use crate::model::{parse_rat_str, rat_to_string, ModelError};
use crate::oracle::AffineCertificate;
use crate::symmat::exact::Rat;
use crate::symmat::SymMat;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

fn mat_f64_json(m: &SymMat<f64>) -> Value {
    Value::Array(
        m.rows()
            .into_iter()
            .map(|row| Value::Array(row.into_iter().map(|x| json!(x)).collect()))
            .collect(),
    )
}

pub fn mat_rat_json(m: &SymMat<Rat>) -> Value {
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
}

pub fn chain_json(chain: &CertificateChain, provenance: &str) -> Value {
    json!({
        "entries": chain
            .entries
            .iter()
            .map(|e| json!({"mat": mat_f64_json(&e.mat), "scalar": e.scalar}))
            .collect::<Vec<_>>(),
        "provenance": provenance,
    })
}

pub fn affine_json(cert: &AffineCertificate, provenance: &str) -> Value {
    json!({
        "mat": mat_f64_json(&cert.mat),
        "value_on_a0": cert.value_on_a0,
        "margin": cert.margin,
        "provenance": provenance,
    })
}

pub fn feasibility_type_str(t: FeasibilityType) -> &'static str {
    match t {
        FeasibilityType::StronglyFeasible => "StronglyFeasible",
        FeasibilityType::WeaklyFeasible => "WeaklyFeasible",
        FeasibilityType::WeaklyInfeasible => "WeaklyInfeasible",
        FeasibilityType::StronglyInfeasible => "StronglyInfeasible",
    }
}

/// Full report serialization; `rational_certificate` is attached when
/// rationalization succeeded on rational input.
pub fn report_json(rep: &FeasibilityReport, rational_certificate: Option<&SymMat<Rat>>) -> Value {
    let mut obj = Map::new();
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("type".into(), json!(feasibility_type_str(rep.feasibility)));
    obj.insert("stable".into(), json!(rep.stable));
    obj.insert("witness".into(), json!(rep.witness));
    obj.insert(
        "chain".into(),
        rep.chain
            .as_ref()
            .map(|c| chain_json(c, "facial reduction on the homogenized system"))
            .unwrap_or(Value::Null),
    );
    obj.insert(
        "affine_certificate".into(),
        rep.affine_certificate
            .as_ref()
            .map(|c| affine_json(c, "capped separation search, re-verified"))
            .unwrap_or(Value::Null),
    );
    obj.insert(
        "rational_certificate".into(),
        rational_certificate
            .map(|c| {
                json!({
                    "mat": mat_rat_json(c),
                    "provenance": "projection and continued-fraction rounding, exactly verified",
                })
            })
            .unwrap_or(Value::Null),
    );
    let d = &rep.diagnostics;
    obj.insert(
        "diagnostics".into(),
        json!({
            "tol": d.tol,
            "max_iters": d.max_iters,
            "rho": d.rho,
            "oracle_iterations": d.oracle_iterations,
            "chain_length": d.chain_length,
            "w_dims": d.w_dims,
            "borderline_margin": d.borderline_margin,
            "lift_cross_check": d.lift_cross_check,
            "notes": d.notes,
        }),
    );
    Value::Object(obj)
}

pub fn failed_check_str(c: FailedCheck) -> String {
    match c {
        FailedCheck::NotPsd(i) => format!("NotPsd({i})"),
        FailedCheck::FaceNotNested(i) => format!("FaceNotNested({i})"),
        FailedCheck::SpanStep(i) => format!("SpanStep({i})"),
        FailedCheck::TerminalNotAtInfinity => "TerminalNotAtInfinity".into(),
        FailedCheck::AffineSignFail => "AffineSignFail".into(),
    }
}

pub fn verification_json(vr: &VerificationResult) -> Value {
    json!({
        "valid": vr.valid,
        "failed_check": vr.failed_check.map(failed_check_str),
        "residuals": vr
            .residuals
            .iter()
            .map(|(name, v)| json!({"check": name, "residual": v}))
            .collect::<Vec<_>>(),
    })
}

fn mat_f64_from_json(v: &Value) -> Result<SymMat<f64>, ModelError> {
    let rows = v
        .as_array()
        .ok_or_else(|| ModelError::Syntax("matrix must be a row list".into()))?;
    let d = rows.len();
    if d == 0 {
        return Err(ModelError::Syntax("empty matrix".into()));
    }
    let mut m = SymMat::zeros(d);
    for (i, row_v) in rows.iter().enumerate() {
        let row = row_v
            .as_array()
            .ok_or_else(|| ModelError::Syntax("matrix row must be a list".into()))?;
        if row.len() != d {
            return Err(ModelError::DimMismatch);
        }
        for (j, cell) in row.iter().enumerate() {
            let x = match cell {
                Value::Number(n) => n
                    .as_f64()
                    .ok_or_else(|| ModelError::Syntax("bad number".into()))?,
                Value::String(s) => {
                    use num_traits::ToPrimitive;
                    parse_rat_str(s)?.to_f64().unwrap_or(f64::NAN)
                }
                _ => return Err(ModelError::Syntax(format!("entry ({i},{j}) invalid"))),
            };
            if j >= i {
                m.set(i, j, x);
            }
        }
    }
    Ok(m)
}

fn mat_rat_from_json(v: &Value) -> Result<SymMat<Rat>, ModelError> {
    let rows = v
        .as_array()
        .ok_or_else(|| ModelError::Syntax("matrix must be a row list".into()))?;
    let d = rows.len();
    if d == 0 {
        return Err(ModelError::Syntax("empty matrix".into()));
    }
    let mut m = SymMat::zeros(d);
    for (i, row_v) in rows.iter().enumerate() {
        let row = row_v
            .as_array()
            .ok_or_else(|| ModelError::Syntax("matrix row must be a list".into()))?;
        if row.len() != d {
            return Err(ModelError::DimMismatch);
        }
        for (j, cell) in row.iter().enumerate() {
            let x = match cell {
                Value::String(s) => parse_rat_str(s)?,
                Value::Number(n) => {
                    let iv = n.as_i64().ok_or_else(|| {
                        ModelError::Syntax("exact certificates need integer or p/q entries".into())
                    })?;
                    Rat::from_integer(iv.into())
                }
                _ => return Err(ModelError::Syntax(format!("entry ({i},{j}) invalid"))),
            };
            if j >= i {
                m.set(i, j, x);
            }
        }
    }
    Ok(m)
}

/// A certificate extracted from a JSON file (either a bare certificate
/// object or a full classification report).
#[derive(Debug)]
pub struct ParsedCertificate {
    pub chain: Option<CertificateChain>,
    pub affine: Option<SymMat<f64>>,
    pub affine_exact: Option<SymMat<Rat>>,
}

pub fn parse_certificate(text: &str) -> Result<ParsedCertificate, ModelError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| ModelError::Syntax(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let obj = v
        .as_object()
        .ok_or_else(|| ModelError::Syntax("expected a JSON object".into()))?;
    let mut out = ParsedCertificate {
        chain: None,
        affine: None,
        affine_exact: None,
    };
    if let Some(chain_v) = obj.get("chain").filter(|c| !c.is_null()) {
        let entries_v = chain_v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| ModelError::Syntax("chain must carry an entries list".into()))?;
        let mut entries = Vec::with_capacity(entries_v.len());
        for e in entries_v {
            let mat = mat_f64_from_json(
                e.get("mat")
                    .ok_or_else(|| ModelError::Syntax("chain entry missing mat".into()))?,
            )?;
            let scalar = e
                .get("scalar")
                .and_then(Value::as_f64)
                .ok_or_else(|| ModelError::Syntax("chain entry missing scalar".into()))?;
            entries.push(ChainEntry { mat, scalar });
        }
        out.chain = Some(CertificateChain { entries });
    }
    let affine_holder = obj
        .get("rational_certificate")
        .filter(|c| !c.is_null())
        .or_else(|| obj.get("affine_certificate").filter(|c| !c.is_null()));
    if let Some(aff) = affine_holder {
        let mat_v = aff
            .get("mat")
            .ok_or_else(|| ModelError::Syntax("affine certificate missing mat".into()))?;
        out.affine = Some(mat_f64_from_json(mat_v)?);
        out.affine_exact = mat_rat_from_json(mat_v).ok();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facial::{classify, ClassifyConfig};
    use crate::model::Pencil;

    #[test]
    fn report_roundtrip_through_certificate_parser() {
        let a0 = SymMat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let a1 = SymMat::from_rows(&[vec![0.0, 0.0], vec![0.0, 1.0]]);
        let p = Pencil::new(a0, vec![a1]).unwrap();
        let rep = classify(&p, &ClassifyConfig::default()).unwrap();
        let js = report_json(&rep, None);
        let text = serde_json::to_string(&js).unwrap();
        let parsed = parse_certificate(&text).unwrap();
        let chain = parsed.chain.expect("infeasible report carries a chain");
        assert_eq!(chain.len(), rep.chain.as_ref().unwrap().len());
        // verification of the parsed chain still passes
        let vr = crate::certify::verify_chain(&p, &chain, 1e-8).unwrap();
        assert!(vr.valid);
    }

    #[test]
    fn deterministic_serialization() {
        let a0 = SymMat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let a1 = SymMat::from_rows(&[vec![0.0, 0.0], vec![0.0, 1.0]]);
        let p = Pencil::new(a0, vec![a1]).unwrap();
        let r1 = classify(&p, &ClassifyConfig::default()).unwrap();
        let r2 = classify(&p, &ClassifyConfig::default()).unwrap();
        let s1 = serde_json::to_string(&report_json(&r1, None)).unwrap();
        let s2 = serde_json::to_string(&report_json(&r2, None)).unwrap();
        assert_eq!(s1, s2);
    }
}
