//! Hecke eigenvalue datasets for modular curves and their assembly into
//! Frobenius polynomials via the Eichler–Shimura relation.
//!
//! Dataset files are UTF-8, line oriented, with `#` comments:
//!
//! ```text
//! curve_id=x0plus_163
//! expected_genus=6
//! ell=2
//! base_change_k=1
//! record label=163.2.o1 level=163 al=+1 h=0,1 mult=1
//! ```
//!
//! `h` lists the coefficients of the characteristic polynomial of `a_ell` on
//! one Galois orbit of newforms, ascending, ending in 1.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{
    hecke_bound_violation, hecke_to_frobenius, poly_product, weil_base_change, weil_validate,
    AlgebraError, IntPolynomial, WeilPolynomial, WeilViolation,
};
use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IngestError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing header field `{0}`")]
    MissingField(&'static str),
    #[error("genus mismatch for {curve_id}: expected {expected}, records sum to {found}")]
    GenusMismatch {
        curve_id: String,
        expected: usize,
        found: usize,
    },
    #[error("record {label}: ell={ell} divides level {level}")]
    BadReduction { label: String, ell: u64, level: u64 },
    #[error("record {label}: Hecke polynomial breaks |a_ell| <= 2 sqrt(ell) at power sum {n}")]
    HeckeBound { label: String, n: usize },
    #[error("record {label}: {source}")]
    Record {
        label: String,
        #[source]
        source: AlgebraError,
    },
    #[error("assembled polynomial is not a Weil polynomial: {0}")]
    Invalid(#[from] WeilViolation),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// One Galois orbit of newforms, with the multiplicity of its abelian
/// variety in the Jacobian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeRecord {
    pub label: String,
    pub level: u64,
    pub al_sign: i8,
    pub ell: u64,
    pub h: IntPolynomial,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveDataset {
    pub curve_id: String,
    pub expected_genus: usize,
    pub ell: u64,
    pub base_change_k: u32,
    pub records: Vec<HeckeRecord>,
}

impl CurveDataset {
    /// Size of the field the assembled polynomial lives over.
    pub fn q(&self) -> u64 {
        self.ell.pow(self.base_change_k)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> IngestError {
    IngestError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, IngestError> {
    value
        .trim()
        .parse()
        .map_err(|_| parse_err(line, format!("invalid value for `{key}`: `{value}`")))
}

fn parse_coeffs(line: usize, value: &str) -> Result<IntPolynomial, IngestError> {
    let coeffs = value
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<BigInt>()
                .map_err(|_| parse_err(line, format!("invalid coefficient `{c}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::new(coeffs))
}

fn parse_record(line: usize, rest: &str) -> Result<HeckeRecord, IngestError> {
    let mut label = None;
    let mut level = None;
    let mut al = None;
    let mut h = None;
    let mut mult = None;
    for field in rest.split_whitespace() {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected key=value, got `{field}`")))?;
        match k {
            "label" => label = Some(v.to_string()),
            "level" => level = Some(parse_num::<u64>(line, k, v)?),
            "al" => {
                al = Some(match v {
                    "+1" | "1" => 1,
                    "-1" => -1,
                    _ => return Err(parse_err(line, format!("al must be +1 or -1, got `{v}`"))),
                })
            }
            "h" => h = Some(parse_coeffs(line, v)?),
            "mult" => mult = Some(parse_num::<u32>(line, k, v)?),
            _ => return Err(parse_err(line, format!("unknown record field `{k}`"))),
        }
    }
    let missing = |name: &str| parse_err(line, format!("record is missing `{name}`"));
    let h = h.ok_or_else(|| missing("h"))?;
    if !h.is_monic() {
        return Err(parse_err(line, "h must be monic (last coefficient 1)"));
    }
    let mult = mult.ok_or_else(|| missing("mult"))?;
    if mult == 0 {
        return Err(parse_err(line, "mult must be positive"));
    }
    Ok(HeckeRecord {
        label: label.ok_or_else(|| missing("label"))?,
        level: level.ok_or_else(|| missing("level"))?,
        al_sign: al.ok_or_else(|| missing("al"))?,
        ell: 0,
        h,
        mult,
    })
}

/// Parses and validates a dataset: genus total, good reduction at `ell`,
/// and the Hecke bound on every record.
pub fn parse_dataset(text: &str) -> Result<CurveDataset, IngestError> {
    let mut curve_id = None;
    let mut expected_genus = None;
    let mut ell = None;
    let mut base_change_k = 1u32;
    let mut records = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("record ") {
            records.push(parse_record(line, rest)?);
            continue;
        }
        let (k, v) = content
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected key=value, got `{content}`")))?;
        match k.trim() {
            "curve_id" => curve_id = Some(v.trim().to_string()),
            "expected_genus" => expected_genus = Some(parse_num::<usize>(line, k, v)?),
            "ell" => {
                let p = parse_num::<u64>(line, k, v)?;
                if !arith::is_prime(p) {
                    return Err(parse_err(line, format!("ell={p} is not prime")));
                }
                ell = Some(p);
            }
            "base_change_k" => {
                base_change_k = parse_num::<u32>(line, k, v)?;
                if base_change_k == 0 {
                    return Err(parse_err(line, "base_change_k must be positive"));
                }
            }
            other => return Err(parse_err(line, format!("unknown field `{other}`"))),
        }
    }
    let curve_id = curve_id.ok_or(IngestError::MissingField("curve_id"))?;
    let expected_genus = expected_genus.ok_or(IngestError::MissingField("expected_genus"))?;
    let ell = ell.ok_or(IngestError::MissingField("ell"))?;
    for r in &mut records {
        r.ell = ell;
        if r.level % ell == 0 {
            return Err(IngestError::BadReduction {
                label: r.label.clone(),
                ell,
                level: r.level,
            });
        }
        let depth = 2 * r.h.degree().unwrap_or(0);
        if let Some(n) = hecke_bound_violation(&r.h, ell, depth) {
            return Err(IngestError::HeckeBound {
                label: r.label.clone(),
                n,
            });
        }
    }
    let found: usize = records
        .iter()
        .map(|r| r.mult as usize * r.h.degree().unwrap_or(0))
        .sum();
    if found != expected_genus {
        return Err(IngestError::GenusMismatch {
            curve_id,
            expected: expected_genus,
            found,
        });
    }
    Ok(CurveDataset {
        curve_id,
        expected_genus,
        ell,
        base_change_k,
        records,
    })
}

/// `prod_f (x^2 - a_ell(f) x + ell)^{n_f}`, base changed to `F_{ell^k}`,
/// validated to depth `2g`.
pub fn assemble(ds: &CurveDataset) -> Result<WeilPolynomial, IngestError> {
    let factors = ds
        .records
        .iter()
        .map(|r| {
            hecke_to_frobenius(&r.h, ds.ell, r.mult).map_err(|source| IngestError::Record {
                label: r.label.clone(),
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let product = poly_product(&factors)?;
    let out = weil_base_change(&product, ds.base_change_k)?;
    weil_validate(&out, 2 * out.genus())?;
    Ok(out)
}

/// The one-line `weil q=<q> g=<g> coeffs=<c0,...,1>` format.
pub struct WeilLine<'a>(pub &'a WeilPolynomial);

impl fmt::Display for WeilLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self
            .0
            .poly()
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect();
        write!(
            f,
            "weil q={} g={} coeffs={}",
            self.0.q(),
            self.0.genus(),
            coeffs.join(",")
        )
    }
}

/// Reads the first non-comment line of a weil file.
pub fn parse_weil(text: &str) -> Result<WeilPolynomial, IngestError> {
    let (line, content) = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| parse_err(1, "empty weil file"))?;
    let rest = content
        .strip_prefix("weil ")
        .ok_or_else(|| parse_err(line, "expected a line starting with `weil`"))?;
    let mut q = None;
    let mut g = None;
    let mut poly = None;
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("q", v)) => q = Some(parse_num::<u64>(line, "q", v)?),
            Some(("g", v)) => g = Some(parse_num::<usize>(line, "g", v)?),
            Some(("coeffs", v)) => poly = Some(parse_coeffs(line, v)?),
            _ => return Err(parse_err(line, format!("unexpected field `{field}`"))),
        }
    }
    let q = q.ok_or(IngestError::MissingField("q"))?;
    let g = g.ok_or(IngestError::MissingField("g"))?;
    let poly = poly.ok_or(IngestError::MissingField("coeffs"))?;
    WeilPolynomial::new(q, g, poly).map_err(|e| parse_err(line, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# two elliptic factors
curve_id=toy
expected_genus=2
ell=3
record label=a level=11 al=+1 h=1,1 mult=1
record label=b level=11 al=-1 h=-2,1 mult=1
";

    #[test]
    fn parses_and_assembles() {
        let ds = parse_dataset(SMALL).unwrap();
        assert_eq!(ds.records.len(), 2);
        assert_eq!(ds.records[1].al_sign, -1);
        assert!(ds.records.iter().all(|r| r.ell == 3));
        let q = assemble(&ds).unwrap();
        // (x^2 + x + 3)(x^2 - 2x + 3)
        let expected =
            &IntPolynomial::from_i64s(&[3, 1, 1]) * &IntPolynomial::from_i64s(&[3, -2, 1]);
        assert_eq!(q.poly(), &expected);
        assert_eq!(q.poly().coeff(0), BigInt::from(9));
    }

    #[test]
    fn genus_mismatch_reports_both_numbers() {
        let text = SMALL.replace("expected_genus=2", "expected_genus=3");
        let err = parse_dataset(&text).unwrap_err();
        assert_eq!(
            err,
            IngestError::GenusMismatch {
                curve_id: "toy".into(),
                expected: 3,
                found: 2
            }
        );
        let msg = err.to_string();
        assert!(msg.contains('3') && msg.contains('2'));
    }

    #[test]
    fn rejects_bad_reduction_and_bad_lines() {
        let text = SMALL.replace("level=11 al=-1", "level=33 al=-1");
        assert!(matches!(
            parse_dataset(&text),
            Err(IngestError::BadReduction { .. })
        ));
        let text = SMALL.replace("mult=1\nrecord", "mult=1\nrecord bogus\nrecord");
        assert!(matches!(
            parse_dataset(&text),
            Err(IngestError::Parse { line: 6, .. })
        ));
        let text = SMALL.replace("h=1,1", "h=1,2");
        assert!(matches!(
            parse_dataset(&text),
            Err(IngestError::Parse { line: 5, .. })
        ));
    }

    #[test]
    fn rejects_hecke_bound_violation() {
        // a_3 = 4 > 2 sqrt 3
        let text = SMALL.replace("h=1,1", "h=-4,1");
        assert!(matches!(
            parse_dataset(&text),
            Err(IngestError::HeckeBound { .. })
        ));
    }

    #[test]
    fn base_change_header() {
        let text = SMALL.replace("ell=3", "ell=3\nbase_change_k=2");
        let ds = parse_dataset(&text).unwrap();
        let q = assemble(&ds).unwrap();
        assert_eq!(q.q(), 9);
        assert_eq!(q.poly().coeff(0), BigInt::from(81));
    }

    #[test]
    fn weil_line_roundtrip() {
        let q = WeilPolynomial::from_ascending(2, &[4, 0, 3, 0, 1]).unwrap();
        let line = WeilLine(&q).to_string();
        assert_eq!(line, "weil q=2 g=2 coeffs=4,0,3,0,1");
        assert_eq!(parse_weil(&format!("# header\n{line}\n")).unwrap(), q);
    }
}
