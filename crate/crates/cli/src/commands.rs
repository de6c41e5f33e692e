use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use autexcl_core::algebra::weil_validate;
use autexcl_core::criterion::{exclude_with_mode, Verdict};
use autexcl_core::ingest::{assemble, WeilLine};
use autexcl_core::oracle::{
    charpoly_from_curve, count_points, parse_curve_file, verify_map, Budget, CurveMap, CurveModel,
    OracleError, DEFAULT_ORDER_CAP,
};
use autexcl_core::ring::Exact;
use autexcl_core::zeta::{NewPointSeries, PointCountSeries};

use crate::args::{
    Cli, Command, CountArgs, ExcludeArgs, IngestArgs, OracleAction, OracleArgs, ReproduceArgs,
};
use crate::input::{fixtures_dir, load_dataset, load_weil, resolve};
use crate::reproduce::{exit_code, run_table, write_row, HEADER};

pub const EXIT_EXCLUDED: i32 = 0;
pub const EXIT_INCONCLUSIVE: i32 = 10;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let fixtures = fixtures_dir(cli.fixtures.as_deref());
    match &cli.command {
        Command::Exclude(a) => cmd_exclude(a, &fixtures, out),
        Command::Reproduce(a) => cmd_reproduce(a, &fixtures, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Ingest(a) => cmd_ingest(a, &fixtures, out),
        Command::Count(a) => cmd_count(a, &fixtures, out),
    }
}

pub fn cmd_exclude(a: &ExcludeArgs, fixtures: &Path, out: &mut dyn Write) -> Result<i32> {
    let loaded = load_weil(&a.weil, fixtures)?;
    let w = &loaded.weil;
    let report = exclude_with_mode(w, a.prime_power, a.nmax, a.bound_override, a.arith.mode())?;
    let (n_star, sum) = match report.verdict {
        Verdict::Excluded {
            crossing_index,
            sum_at_crossing,
        } => (crossing_index.to_string(), sum_at_crossing),
        Verdict::Inconclusive { final_sum } => ("-".to_string(), final_sum),
    };
    writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{n_star}\t{sum}\t{}",
        loaded.curve_id,
        w.genus(),
        w.q(),
        a.prime_power,
        report.verdict.label(),
        report.bound
    )?;
    Ok(if report.verdict.is_excluded() {
        EXIT_EXCLUDED
    } else {
        EXIT_INCONCLUSIVE
    })
}

pub fn cmd_reproduce(a: &ReproduceArgs, fixtures: &Path, out: &mut dyn Write) -> Result<i32> {
    let results = run_table(a.table, fixtures, a.nmax, a.arith.mode(), a.jobs)?;
    writeln!(out, "{HEADER}")?;
    for r in &results {
        write_row(out, a.table, r)?;
    }
    Ok(exit_code(&results))
}

pub fn cmd_ingest(a: &IngestArgs, fixtures: &Path, out: &mut dyn Write) -> Result<i32> {
    let path = resolve(&a.dataset, fixtures)?;
    let ds = load_dataset(&path)?;
    let weil = assemble(&ds).with_context(|| format!("assembling {}", ds.curve_id))?;
    let line = format!("{}\n", WeilLine(&weil));
    match &a.output {
        Some(p) => fs::write(p, line).with_context(|| format!("writing {}", p.display()))?,
        None => out.write_all(line.as_bytes())?,
    }
    Ok(0)
}

pub fn cmd_count(a: &CountArgs, fixtures: &Path, out: &mut dyn Write) -> Result<i32> {
    let loaded = load_weil(&a.weil, fixtures)?;
    let series = PointCountSeries::from_weil(Exact, &loaded.weil, a.nmax);
    let r = NewPointSeries::from_counts(&series);
    writeln!(out, "n\tN_n\tR_n")?;
    for (i, (c, v)) in series.counts().iter().zip(r.values()).enumerate() {
        writeln!(out, "{}\t{c}\t{v}", i + 1)?;
    }
    for a in r.anomalies() {
        log::warn!(
            "R({}) = {} is not a nonnegative multiple of {}",
            a.n,
            a.value,
            a.n
        );
    }
    Ok(0)
}

fn load_curve(path: &Path, budget: Budget) -> Result<autexcl_core::oracle::CurveFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cf =
        parse_curve_file(&text, budget).with_context(|| format!("parsing {}", path.display()))?;
    for w in cf.model.warnings() {
        log::warn!("{w}");
    }
    Ok(cf)
}

pub fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let budget = Budget(a.budget);
    match &a.action {
        OracleAction::Count { file, nmax } => {
            let cf = load_curve(file, budget)?;
            let explicit = nmax.is_some();
            let last = nmax.unwrap_or(2 * cf.model.genus() as u32);
            writeln!(out, "n\tcount")?;
            for n in 1..=last {
                match count_points(&cf.model, n, budget) {
                    Ok(c) => writeln!(out, "{n}\t{c}")?,
                    Err(OracleError::BudgetExceeded { .. }) if !explicit => break,
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(0)
        }
        OracleAction::Zeta { file } => {
            let cf = load_curve(file, budget)?;
            let weil = charpoly_from_curve(&cf.model, budget)?;
            writeln!(out, "{}", WeilLine(&weil))?;
            Ok(0)
        }
        OracleAction::Soundness {
            file,
            prime_power,
            nmax,
        } => {
            let cf = load_curve(file, budget)?;
            let mut maps = cf.maps.clone();
            if let (true, CurveModel::Hyperelliptic(c)) = (maps.is_empty(), &cf.model) {
                maps.push(CurveMap::hyperelliptic_involution(c));
            }
            let mut order = None;
            for m in &maps {
                let k = verify_map(&cf.model, m, DEFAULT_ORDER_CAP)?;
                if k % prime_power.modulus() == 0 {
                    order = Some(k);
                    break;
                }
            }
            let Some(order) = order else {
                bail!("no verified map has order divisible by {prime_power}");
            };
            let weil = charpoly_from_curve(&cf.model, budget)?;
            weil_validate(&weil, 2 * weil.genus()).map_err(|v| anyhow::anyhow!("{v}"))?;
            let report = exclude_with_mode(
                &weil,
                *prime_power,
                *nmax,
                None,
                autexcl_core::zeta::Mode::Exact,
            )?;
            let max_sum = report.partial_sums.last().copied().unwrap_or(0);
            let pass = !report.verdict.is_excluded();
            writeln!(
                out,
                "g={}\tq={}\tmap_order={order}\tN^m={prime_power}\tverdict={}\tS({})={max_sum}\tbound={}\t{}",
                weil.genus(),
                weil.q(),
                report.verdict.label(),
                report.n_scanned(),
                report.bound,
                if pass { "PASS" } else { "FAIL" }
            )?;
            Ok(if pass { 0 } else { EXIT_FAIL })
        }
    }
}
