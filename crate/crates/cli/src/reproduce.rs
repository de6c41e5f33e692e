use std::io::Write;
use std::path::Path;

use anyhow::Result;
use autexcl_core::algebra::PrimePower;
use autexcl_core::criterion::{exclude_with_mode, Verdict};
use autexcl_core::ingest::assemble;
use autexcl_core::zeta::{p_sequence_with, Mode};
use rayon::prelude::*;

use crate::input::{load_dataset, resolve, InputError};
use crate::tables::{rows, Expect, Row, TableId};

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_SKIPPED: i32 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    Skipped,
    Info,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
            Status::Skipped => "SKIPPED",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Computed {
    pub genus: usize,
    pub q: u64,
    pub bound: u64,
    pub p_values: Vec<u64>,
    pub verdict: Verdict,
}

impl Computed {
    pub fn partial_sum(&self, n: usize) -> u64 {
        self.p_values[..n].iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct RowResult {
    pub row: Row,
    pub computed: Option<Computed>,
    pub note: Option<String>,
    pub status: Status,
}

fn depth(row: &Row, n_max: usize) -> usize {
    match row.expect {
        Expect::Crossing { n, .. } => n_max.max(n),
        Expect::Zeros { to, .. } => n_max.max(to),
        Expect::Informational => n_max,
    }
}

fn compute(row: &Row, fixtures: &Path, n_max: usize, mode: Mode) -> Result<Computed> {
    let path = resolve(row.fixture, fixtures)?;
    let ds = load_dataset(&path)?;
    let weil = assemble(&ds)?;
    let pp = PrimePower::new(row.prime, row.exponent)?;
    let n = depth(row, n_max);
    let report = exclude_with_mode(&weil, pp, n, row.override_bound, mode)?;
    let seq = p_sequence_with(&weil, pp, n, mode);
    Ok(Computed {
        genus: weil.genus(),
        q: weil.q(),
        bound: report.bound,
        p_values: seq.values().to_vec(),
        verdict: report.verdict,
    })
}

fn judge(row: &Row, c: &Computed) -> Status {
    match row.expect {
        Expect::Crossing { genus, n, sum } => {
            let ok = c.genus == genus && c.partial_sum(n) == sum && c.verdict.is_excluded();
            if ok {
                Status::Match
            } else {
                Status::Mismatch
            }
        }
        Expect::Zeros { from, to } => {
            if c.p_values[from - 1..to].iter().all(|&v| v == 0) {
                Status::Match
            } else {
                Status::Mismatch
            }
        }
        Expect::Informational => Status::Info,
    }
}

pub fn run_row(row: Row, fixtures: &Path, n_max: usize, mode: Mode) -> RowResult {
    match compute(&row, fixtures, n_max, mode) {
        Ok(c) => RowResult {
            row,
            status: judge(&row, &c),
            computed: Some(c),
            note: None,
        },
        Err(e) => {
            log::warn!("{}: {e:#}", row.fixture);
            // only an absent fixture is a skip; unreadable data is a failure
            let status = match e.downcast_ref::<InputError>() {
                Some(InputError::NotFound(..)) => Status::Skipped,
                _ => Status::Mismatch,
            };
            RowResult {
                row,
                computed: None,
                note: Some(format!("{e:#}")),
                status,
            }
        }
    }
}

pub fn run_table(
    table: TableId,
    fixtures: &Path,
    n_max: usize,
    mode: Mode,
    jobs: usize,
) -> Result<Vec<RowResult>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()?;
    let rows = rows(table);
    Ok(pool.install(|| {
        rows.into_par_iter()
            .map(|row| run_row(row, fixtures, n_max, mode))
            .collect()
    }))
}

pub const HEADER: &str =
    "table\tcurve_id\tg\tq\tN^m\tbound\texpected\tS(expected_n)\tn_star\tsum_star\tstatus";

fn dash() -> String {
    "-".into()
}

pub fn write_row(out: &mut dyn Write, table: TableId, r: &RowResult) -> std::io::Result<()> {
    let row = &r.row;
    let pp = format!("{}^{}", row.prime, row.exponent);
    let expected = match row.expect {
        Expect::Crossing { genus, n, sum } => format!("g={genus},S({n})={sum}"),
        Expect::Zeros { from, to } => format!("P=0 for {from}..{to}"),
        Expect::Informational => dash(),
    };
    let (g, q, bound, observed, n_star, sum_star) = match &r.computed {
        None => (dash(), dash(), dash(), dash(), dash(), dash()),
        Some(c) => {
            let observed = match row.expect {
                Expect::Crossing { n, .. } => c.partial_sum(n).to_string(),
                Expect::Zeros { from, to } => {
                    let nonzero = c.p_values[from - 1..to].iter().filter(|&&v| v != 0).count();
                    format!("nonzero={nonzero}")
                }
                Expect::Informational => dash(),
            };
            let (n_star, sum_star) = match c.verdict {
                Verdict::Excluded {
                    crossing_index,
                    sum_at_crossing,
                } => (crossing_index.to_string(), sum_at_crossing.to_string()),
                Verdict::Inconclusive { final_sum } => (dash(), final_sum.to_string()),
            };
            (
                c.genus.to_string(),
                c.q.to_string(),
                c.bound.to_string(),
                observed,
                n_star,
                sum_star,
            )
        }
    };
    writeln!(
        out,
        "{table}\t{}\t{g}\t{q}\t{pp}\t{bound}\t{expected}\t{observed}\t{n_star}\t{sum_star}\t{}",
        row.fixture,
        r.status.label()
    )
}

pub fn exit_code(results: &[RowResult]) -> i32 {
    if results.iter().any(|r| r.status == Status::Mismatch) {
        EXIT_MISMATCH
    } else if results.iter().any(|r| r.status == Status::Skipped) {
        EXIT_SKIPPED
    } else {
        0
    }
}
