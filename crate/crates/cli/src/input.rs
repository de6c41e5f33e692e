use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use autexcl_core::algebra::{weil_validate, IntPolynomial, WeilPolynomial};
use autexcl_core::ingest::{assemble, parse_dataset, parse_weil, CurveDataset};
use num_bigint::BigInt;
use thiserror::Error;

use crate::args::WeilInput;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("no file `{0}` and no dataset of that name in {1}")]
    NotFound(String, String),
    #[error("invalid coefficient list `{0}`")]
    BadCoeffs(String),
}

pub fn fixtures_dir(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("fixtures"))
}

/// A path as given, or `<fixtures>/<name>.txt`.
pub fn resolve(name: &str, fixtures: &Path) -> Result<PathBuf, InputError> {
    let direct = PathBuf::from(name);
    if direct.is_file() {
        return Ok(direct);
    }
    let named = fixtures.join(format!("{name}.txt"));
    if named.is_file() {
        return Ok(named);
    }
    Err(InputError::NotFound(
        name.to_string(),
        fixtures.display().to_string(),
    ))
}

pub fn load_dataset(path: &Path) -> Result<CurveDataset> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_dataset(&text).with_context(|| format!("parsing {}", path.display()))
}

pub struct LoadedWeil {
    pub curve_id: String,
    pub weil: WeilPolynomial,
}

fn is_weil_file(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("weil "))
}

pub fn load_weil(input: &WeilInput, fixtures: &Path) -> Result<LoadedWeil> {
    if let Some(list) = &input.coeffs {
        let q = input.q.expect("clap enforces --q with --coeffs");
        let coeffs = list
            .split(',')
            .map(|c| c.trim().parse::<BigInt>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| InputError::BadCoeffs(list.clone()))?;
        let poly = IntPolynomial::new(coeffs);
        let deg = poly.degree().unwrap_or(0);
        if deg % 2 == 1 {
            anyhow::bail!("inline polynomial has odd degree {deg}");
        }
        let weil = WeilPolynomial::new(q, deg / 2, poly).context("inline polynomial")?;
        weil_validate(&weil, deg).map_err(|v| anyhow::anyhow!("inline polynomial: {v}"))?;
        return Ok(LoadedWeil {
            curve_id: "inline".into(),
            weil,
        });
    }
    let name = input.input.as_deref().expect("clap enforces an input");
    let path = resolve(name, fixtures)?;
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    if is_weil_file(&text) {
        let weil = parse_weil(&text).with_context(|| format!("parsing {}", path.display()))?;
        weil_validate(&weil, 2 * weil.genus())
            .map_err(|v| anyhow::anyhow!("{}: {v}", path.display()))?;
        let curve_id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| name.to_string());
        Ok(LoadedWeil { curve_id, weil })
    } else {
        let ds = parse_dataset(&text).with_context(|| format!("parsing {}", path.display()))?;
        let weil = assemble(&ds).with_context(|| format!("assembling {}", ds.curve_id))?;
        Ok(LoadedWeil {
            curve_id: ds.curve_id,
            weil,
        })
    }
}
