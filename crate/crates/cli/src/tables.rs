//! Rows of the published exclusion tables.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableId {
    X0Plus,
    XnsStep3,
    XnsPlusStep4,
    XnsStep5Ord4,
    XnsStep5Ord8,
    XsSection31,
}

impl TableId {
    pub const ALL: [TableId; 6] = [
        TableId::X0Plus,
        TableId::XnsStep3,
        TableId::XnsPlusStep4,
        TableId::XnsStep5Ord4,
        TableId::XnsStep5Ord8,
        TableId::XsSection31,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::X0Plus => "x0plus",
            TableId::XnsStep3 => "xns_step3",
            TableId::XnsPlusStep4 => "xnsplus_step4",
            TableId::XnsStep5Ord4 => "xns_step5_ord4",
            TableId::XnsStep5Ord8 => "xns_step5_ord8",
            TableId::XsSection31 => "xs_section31",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = TableId::ALL.iter().map(|t| t.name()).collect();
                format!("unknown table `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    /// `S(n) = sum` on a curve of genus `genus`, with `sum` above the bound.
    Crossing { genus: usize, n: usize, sum: u64 },
    /// `P(n) = 0` for `from <= n <= to`.
    Zeros { from: usize, to: usize },
    /// No published numbers; computed values are reported only.
    Informational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Row {
    pub fixture: &'static str,
    pub prime: u64,
    pub exponent: u32,
    pub expect: Expect,
    pub override_bound: Option<u64>,
}

const fn crossing(
    fixture: &'static str,
    prime: u64,
    exponent: u32,
    genus: usize,
    n: usize,
    sum: u64,
) -> Row {
    Row {
        fixture,
        prime,
        exponent,
        expect: Expect::Crossing { genus, n, sum },
        override_bound: None,
    }
}

const fn zeros(fixture: &'static str, prime: u64, exponent: u32, from: usize, to: usize) -> Row {
    Row {
        fixture,
        prime,
        exponent,
        expect: Expect::Zeros { from, to },
        override_bound: None,
    }
}

const X0PLUS: &[(&str, usize, usize, u64)] = &[
    ("x0plus_163", 6, 53, 15),
    ("x0plus_193", 7, 58, 17),
    ("x0plus_197", 6, 42, 15),
    ("x0plus_211", 6, 60, 15),
    ("x0plus_223", 6, 54, 15),
    ("x0plus_227", 5, 40, 13),
    ("x0plus_229", 7, 63, 17),
    ("x0plus_269", 6, 43, 13),
    ("x0plus_331", 11, 79, 25),
    ("x0plus_347", 10, 74, 23),
    ("x0plus_359", 6, 60, 15),
    ("x0plus_383", 8, 88, 19),
    ("x0plus_389", 11, 123, 25),
    ("x0plus_431", 8, 89, 19),
    ("x0plus_461", 12, 99, 27),
    ("x0plus_563", 15, 116, 33),
    ("x0plus_571", 19, 156, 41),
    ("x0plus_607", 19, 166, 41),
];

pub fn rows(table: TableId) -> Vec<Row> {
    match table {
        TableId::X0Plus => X0PLUS
            .iter()
            .map(|&(fixture, g, n, sum)| crossing(fixture, 2, 1, g, n, sum))
            .collect(),
        TableId::XnsStep3 => vec![
            crossing("xns_13_l3", 3, 1, 8, 16, 12),
            crossing("xns_17_l2", 3, 1, 15, 34, 18),
            crossing("xns_19_l5", 3, 1, 20, 31, 24),
            crossing("xns_23_l2", 3, 1, 31, 52, 35),
            crossing("xns_29_l5", 3, 1, 54, 76, 58),
            crossing("xns_31_l2", 3, 1, 63, 86, 66),
            crossing("xnsplus_19_l5", 3, 1, 8, 14, 12),
            crossing("xnsplus_23_l2", 3, 1, 13, 19, 16),
            crossing("xnsplus_29_l5", 3, 1, 24, 47, 27),
            crossing("xnsplus_31_l2", 3, 1, 28, 58, 31),
        ],
        TableId::XnsPlusStep4 => vec![
            crossing("xnsplus_17_l2", 2, 1, 6, 59, 15),
            crossing("xnsplus_19_l2_k2", 2, 1, 8, 83, 19),
            crossing("xnsplus_23_l2", 2, 1, 13, 95, 29),
            crossing("xnsplus_29_l5", 2, 1, 24, 253, 51),
            crossing("xnsplus_31_l2", 2, 1, 28, 258, 59),
            zeros("xnsplus_19_l5_k2", 2, 1, 8, 200),
        ],
        TableId::XnsStep5Ord4 => vec![
            crossing("xns_17_l2", 2, 2, 15, 81, 38),
            crossing("xns_23_l2", 2, 2, 31, 127, 70),
            crossing("xns_29_l5", 2, 2, 54, 143, 115),
            crossing("xns_31_l2", 2, 2, 63, 291, 134),
        ],
        TableId::XnsStep5Ord8 => vec![
            crossing("xns_13_l3", 2, 3, 8, 15, 34),
            crossing("xns_19_l5", 2, 3, 20, 34, 58),
        ],
        TableId::XsSection31 => ["xs_17_l2", "xs_19_l5", "xs_23_l2", "xs_29_l5", "xs_31_l2"]
            .into_iter()
            .map(|fixture| Row {
                fixture,
                prime: 2,
                exponent: 1,
                expect: Expect::Informational,
                override_bound: Some(12),
            })
            .collect(),
    }
}
