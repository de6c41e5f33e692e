//! Curve files.
//!
//! ```text
//! # y^2 = x^5 + 1 over F_3
//! curve hyperelliptic p=3 k=1 f=1,0,0,0,0,1 h=
//! map matrix=1,0,0,1 e=2 w=
//!
//! # Klein quartic over F_8
//! curve quartic p=2 k=3 F=3,1,0:1;0,3,1:1;1,0,3:1
//! map matrix=2,0,0,0,7,0,0,0,4
//! ```
//!
//! Coefficients are ascending and written as integer encodings of field
//! elements (`sum a_i p^i` for `a_0 + a_1 t + ...`). Quartic terms are
//! `a,b,c:coeff` for `coeff * x^a y^b z^c`. Matrices are row-major.

use std::collections::HashMap;
use std::sync::Arc;

use super::curve::{CurveModel, HyperellipticCurve, PlaneQuartic, TernaryForm};
use super::field::{Budget, Fe, FiniteField};
use super::map::CurveMap;
use super::OracleError;

#[derive(Clone, Debug)]
pub struct CurveFile {
    pub model: CurveModel,
    pub maps: Vec<CurveMap>,
}

fn perr(line: usize, message: impl Into<String>) -> OracleError {
    OracleError::Parse {
        line,
        message: message.into(),
    }
}

fn fields<'a>(line: usize, words: &[&'a str]) -> Result<HashMap<&'a str, &'a str>, OracleError> {
    words
        .iter()
        .map(|w| {
            w.split_once('=')
                .ok_or_else(|| perr(line, format!("expected key=value, got `{w}`")))
        })
        .collect()
}

fn list(line: usize, s: &str) -> Result<Vec<Fe>, OracleError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Fe>()
                .map_err(|e| perr(line, format!("`{t}`: {e}")))
        })
        .collect()
}

fn get<'a>(line: usize, kv: &HashMap<&str, &'a str>, key: &str) -> Result<&'a str, OracleError> {
    kv.get(key)
        .copied()
        .ok_or_else(|| perr(line, format!("missing `{key}`")))
}

fn parse_terms(line: usize, s: &str) -> Result<Vec<([u32; 3], Fe)>, OracleError> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (exps, c) = t
                .split_once(':')
                .ok_or_else(|| perr(line, format!("term `{t}` needs `a,b,c:coeff`")))?;
            let e = list(line, exps)?;
            let e: [u32; 3] = e
                .try_into()
                .map_err(|_| perr(line, format!("term `{t}` needs three exponents")))?;
            let c = c
                .trim()
                .parse::<Fe>()
                .map_err(|err| perr(line, format!("`{c}`: {err}")))?;
            Ok((e, c))
        })
        .collect()
}

pub fn parse_curve_file(text: &str, budget: Budget) -> Result<CurveFile, OracleError> {
    let mut model: Option<CurveModel> = None;
    let mut maps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        match words[0] {
            "curve" => {
                if model.is_some() {
                    return Err(perr(line, "more than one curve line"));
                }
                let kind = *words
                    .get(1)
                    .ok_or_else(|| perr(line, "missing curve kind"))?;
                let kv = fields(line, &words[2..])?;
                let p: u64 = get(line, &kv, "p")?
                    .parse()
                    .map_err(|e| perr(line, format!("p: {e}")))?;
                let k: u32 = kv
                    .get("k")
                    .map(|s| s.parse().map_err(|e| perr(line, format!("k: {e}"))))
                    .transpose()?
                    .unwrap_or(1);
                let base: Arc<FiniteField> = FiniteField::canonical(p, k, budget)?;
                model = Some(match kind {
                    "hyperelliptic" => {
                        let f = list(line, get(line, &kv, "f")?)?;
                        let h = list(line, kv.get("h").copied().unwrap_or(""))?;
                        CurveModel::Hyperelliptic(HyperellipticCurve::new(base, f, h, budget)?)
                    }
                    "quartic" => {
                        let terms = parse_terms(line, get(line, &kv, "F")?)?;
                        if terms.iter().any(|&(_, c)| !base.contains(c as u64)) {
                            return Err(OracleError::InvalidModel(
                                "coefficient outside the base field".into(),
                            ));
                        }
                        let form = TernaryForm::new(terms, &base);
                        CurveModel::PlaneQuartic(PlaneQuartic::new(base, form, budget)?)
                    }
                    other => return Err(perr(line, format!("unknown curve kind `{other}`"))),
                });
            }
            "map" => {
                let curve = model
                    .as_ref()
                    .ok_or_else(|| perr(line, "map line before the curve line"))?;
                let kv = fields(line, &words[1..])?;
                let m = list(line, get(line, &kv, "matrix")?)?;
                let map = match curve {
                    CurveModel::Hyperelliptic(_) => {
                        let m: [Fe; 4] = m
                            .try_into()
                            .map_err(|_| perr(line, "hyperelliptic maps need 4 matrix entries"))?;
                        let e = get(line, &kv, "e")?
                            .parse::<Fe>()
                            .map_err(|err| perr(line, format!("e: {err}")))?;
                        let w = list(line, kv.get("w").copied().unwrap_or(""))?;
                        CurveMap::Hyperelliptic {
                            matrix: [[m[0], m[1]], [m[2], m[3]]],
                            e,
                            w,
                        }
                    }
                    CurveModel::PlaneQuartic(_) => {
                        let m: [Fe; 9] = m
                            .try_into()
                            .map_err(|_| perr(line, "quartic maps need 9 matrix entries"))?;
                        CurveMap::Quartic {
                            matrix: [[m[0], m[1], m[2]], [m[3], m[4], m[5]], [m[6], m[7], m[8]]],
                        }
                    }
                };
                maps.push(map);
            }
            other => return Err(perr(line, format!("unknown directive `{other}`"))),
        }
    }
    let model = model.ok_or_else(|| perr(0, "no curve line"))?;
    Ok(CurveFile { model, maps })
}
