//! Batteries of exact checks, grouped into suites and reported line by line.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{PolyQ, RatFuncQ};
use crate::moments::{full_cycle_poly, full_cycle_properties};
use crate::partitions::Partition;
use crate::reference::{FULL_CYCLE_POLYS, ORTHOGONAL_WG};
use crate::weingarten::{
    gram_identities, wg_matrix_formula, wg_matrix_oracle, wg_orth, Dim, Group, ORACLE_CAP_ORTH, ORACLE_CAP_UNIT,
};
use crate::zonal::{pairing_orthogonality, power_expansion_check, ZONAL_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Table,
    Oracle,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Suite::Identities),
            "table" => Ok(Suite::Table),
            "oracle" => Ok(Suite::Oracle),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Identities => "identities",
            Suite::Table => "table",
            Suite::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn run(suite: Suite, nmax: usize) -> Result<Report> {
    let checks = match suite {
        Suite::Identities => identities(nmax)?,
        Suite::Table => table(nmax)?,
        Suite::Oracle => oracle(nmax)?,
    };
    Ok(Report { suite, checks })
}

fn identities(nmax: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let ds: Vec<i64> = (1..=12).collect();
    for n in 1..=nmax.min(ZONAL_CAP) {
        let r = power_expansion_check(n, &ds)?;
        let detail = match &r.failure {
            None => format!("{} cases, d = 1..12", r.checked),
            Some(f) => format!("mu = ({}), d = {}: {} != {}", f.mu, f.d, f.lhs, f.rhs),
        };
        checks.push(Check::new(format!("power expansion n={n}"), r.passed(), detail));
    }
    for n in 1..=nmax.min(4) {
        let r = pairing_orthogonality(n)?;
        let detail = match r.failures.first() {
            None => format!("{} pairs of characters", r.checked),
            Some((l, m, got, want)) => format!("({l}) x ({m}): {got} != {want}"),
        };
        checks.push(Check::new(format!("zonal orthogonality n={n}"), r.passed(), detail));
    }
    for group in [Group::Orthogonal, Group::Unitary] {
        for n in 1..=nmax.min(4) {
            let mut bad = Vec::new();
            for d in 1..=6i64 {
                let g = gram_identities(n, group, d)?;
                let inverse_expected = d >= n as i64;
                if !(g.gwg && g.wgw && g.symmetric && g.inverse == inverse_expected) {
                    bad.push(format!("d={d} {g:?}"));
                }
            }
            let detail = if bad.is_empty() {
                "d = 1..6".to_string()
            } else {
                bad.join("; ")
            };
            checks.push(Check::new(
                format!("GWG=G, WGW=W {group} n={n}"),
                bad.is_empty(),
                detail,
            ));
        }
    }
    for n in 2..=10 {
        let r = full_cycle_properties(n)?;
        let detail = format!(
            "P_{n}(d) = {}; degree {} (expected {}), leading {} (c_{} = {}), constant {} (formula {})",
            r.poly,
            r.degree,
            r.expected_degree,
            r.leading,
            n - 1,
            r.catalan,
            r.constant,
            r.constant_formula
        );
        checks.push(Check::new(format!("full-cycle properties n={n}"), r.passed(), detail));
    }
    Ok(checks)
}

fn table(nmax: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (mu, expr) in ORTHOGONAL_WG {
        let mu: Partition = mu.parse()?;
        if mu.weight() > nmax {
            continue;
        }
        let expected: RatFuncQ = expr.parse()?;
        let got = wg_orth(&mu, Dim::Symbolic)?;
        let got = got.symbolic().expect("symbolic");
        let detail = if got == &expected {
            got.to_string()
        } else {
            format!("computed {got}, expected {expected}")
        };
        checks.push(Check::new(format!("Wg^O(({mu}), d)"), got == &expected, detail));
    }
    for (n, expr) in FULL_CYCLE_POLYS {
        let expected: PolyQ = expr.parse()?;
        let got = full_cycle_poly(*n)?;
        let detail = if got == expected {
            got.to_string()
        } else {
            format!("computed {got}, expected {expected}")
        };
        checks.push(Check::new(format!("P_{n}(d)"), got == expected, detail));
    }
    Ok(checks)
}

fn oracle(nmax: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (group, cap) in [(Group::Orthogonal, ORACLE_CAP_ORTH), (Group::Unitary, ORACLE_CAP_UNIT)] {
        for n in 1..=nmax.min(cap) {
            let mut bad = Vec::new();
            for d in 1..=8i64 {
                if wg_matrix_formula(n, group, d)? != wg_matrix_oracle(n, group, d)? {
                    bad.push(d.to_string());
                }
            }
            let detail = if bad.is_empty() {
                "d = 1..8".to_string()
            } else {
                format!("mismatch at d = {}", bad.join(","))
            };
            checks.push(Check::new(
                format!("formula = pseudo-inverse {group} n={n}"),
                bad.is_empty(),
                detail,
            ));
        }
    }
    Ok(checks)
}
