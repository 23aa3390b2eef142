use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::{
    DiscrepancyFlag, HypothesisCheck, LVerdict, NumericLValues, Rationality, ResolventReport, Table1, Timing, Torsion,
    VerificationConfig, Verifier,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::Config(format!("unknown report format `{}`", s))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub hypotheses_passed: bool,
    pub table1_passed: bool,
    pub rationality_passed: bool,
    pub verdicts_passed: bool,
    pub inconclusive: Vec<u64>,
    pub all_passed: bool,
}

/// Everything the pipeline computed. Field order is the serialization order.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub config: VerificationConfig,
    pub curve: String,
    pub field: String,
    pub summary: Summary,
    pub hypotheses: Vec<HypothesisCheck>,
    pub torsion: Torsion,
    pub table1: Table1,
    pub resolvents: ResolventReport,
    pub lvalues: NumericLValues,
    pub rationality: Rationality,
    pub verdicts: Vec<LVerdict>,
    pub discrepancy_flags: Vec<DiscrepancyFlag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

impl VerificationReport {
    #[allow(clippy::too_many_arguments)]
    pub(super) fn new(
        v: &Verifier,
        hypotheses: Vec<HypothesisCheck>,
        torsion: Torsion,
        table1: Table1,
        resolvents: ResolventReport,
        lvalues: NumericLValues,
        rationality: Rationality,
        verdicts: Vec<LVerdict>,
        discrepancy_flags: Vec<DiscrepancyFlag>,
        timings: Option<Vec<Timing>>,
    ) -> VerificationReport {
        let inconclusive: Vec<u64> = verdicts.iter().filter(|x| !x.verdict.passed()).map(|x| x.l).collect();
        let hypotheses_passed = hypotheses.iter().all(|h| h.passed);
        let verdicts_passed = !verdicts.is_empty() && inconclusive.is_empty();
        let summary = Summary {
            hypotheses_passed,
            table1_passed: table1.passed,
            rationality_passed: rationality.passed,
            verdicts_passed,
            all_passed: hypotheses_passed && table1.passed && rationality.passed && verdicts_passed,
            inconclusive,
        };
        let c = &v.curve;
        VerificationReport {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: v.config.clone(),
            curve: format!("{} [{}, {}, {}, {}, {}]", c.label, c.a1, c.a2, c.a3, c.a4, c.a6),
            field: format!("the splitting field of {}, discriminant {}^3", cubic_string(&v.field.cubic), v.field.d),
            summary,
            hypotheses,
            torsion,
            table1,
            resolvents,
            lvalues,
            rationality,
            verdicts,
            discrepancy_flags,
            timings,
        }
    }

    /// Hard failures exit 1, inconclusive verdicts 2.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        if !(s.hypotheses_passed && s.table1_passed && s.rationality_passed) || self.verdicts.is_empty() {
            1
        } else if !s.inconclusive.is_empty() {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Numeric(format!("serialization: {}", e)))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_markdown(&self) -> String {
        let mut m = String::new();
        let _ = writeln!(m, "# Verification report: {} over {}\n", self.curve, self.field);
        let _ = writeln!(m, "{} {}\n", self.tool, self.version);
        let s = &self.summary;
        let mark = |b: bool| if b { "PASS" } else { "FAIL" };
        let _ = writeln!(m, "## Summary\n");
        let _ = writeln!(m, "| check | result |\n|---|---|");
        let _ = writeln!(m, "| hypotheses | {} |", mark(s.hypotheses_passed));
        let _ = writeln!(m, "| Table 1 | {} |", mark(s.table1_passed));
        let _ = writeln!(m, "| rationality | {} |", mark(s.rationality_passed));
        let _ = writeln!(m, "| verdicts | {} |\n", mark(s.verdicts_passed));

        let _ = writeln!(m, "## Hypotheses\n\n| hypothesis | result | detail |\n|---|---|---|");
        for h in &self.hypotheses {
            let _ = writeln!(m, "| {} | {} | {} |", h.name, mark(h.passed), h.detail);
        }

        let _ = writeln!(m, "\n## Table 1: `L_p(E (x) eta, 1)^-1`\n\n| p | eta | computed | reference | match |\n|---|---|---|---|---|");
        for c in &self.table1.cells {
            let status = if c.matches { "yes".to_string() } else { format!("flagged: {}", c.flag.as_deref().unwrap_or("mismatch")) };
            let _ = writeln!(m, "| {} | {} | {} | {} | {} |", c.p, c.eta, c.computed, c.reference, status);
        }

        let _ = writeln!(m, "\n## Rationality\n\n| eta | route | value | expected | numeric | rel. error |\n|---|---|---|---|---|---|");
        for c in &self.rationality.components {
            let _ = writeln!(
                m,
                "| {} | {} | {} | {} | {} | {:.2e} |",
                c.eta,
                c.route,
                c.value.as_deref().unwrap_or("not recognised"),
                c.expected,
                c.numeric,
                c.relative_error
            );
        }
        for x in &self.rationality.cross_checks {
            let _ = writeln!(m, "\n- {}: numeric {} vs exact {} (difference {:.2e}, tolerance {:.0e}) {}", x.name, x.numeric, x.exact, x.difference, x.tolerance, mark(x.passed));
        }

        let _ = writeln!(m, "\n## Verdicts\n\n| l | verdict | v_l(beta) | xi_l | double entry |\n|---|---|---|---|---|");
        for v in &self.verdicts {
            let d = &v.xi.double_entry;
            let _ = writeln!(
                m,
                "| {}{} | {} | ({}, {}, {}) | {} | {} |",
                v.l,
                if v.odd { "" } else { " (even)" },
                v.verdict,
                v.beta_valuations[0],
                v.beta_valuations[1],
                v.beta_valuations[2],
                v.xi.product,
                if d.holds { "ok".to_string() } else { format!("expected {}, found {}", d.expected, d.found) }
            );
        }

        if !self.discrepancy_flags.is_empty() {
            let _ = writeln!(m, "\n## Flags\n");
            for f in &self.discrepancy_flags {
                let _ = writeln!(m, "- `{}`: {}", f.id, f.detail);
            }
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(m, "\n## Timings\n");
            for x in t {
                let _ = writeln!(m, "- {}: {:.3} s", x.stage, x.seconds);
            }
        }
        m
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => Ok(self.to_markdown()),
        }
    }

    pub fn write(&self, path: &Path, format: Format) -> Result<()> {
        std::fs::write(path, self.render(format)?)?;
        Ok(())
    }
}

fn cubic_string(c: &[crate::exact_arith::Rational; 4]) -> String {
    let mut s = "x^3".to_string();
    for (k, name) in [(2, "x^2"), (1, "x"), (0, "")] {
        let q = &c[k];
        if num_traits::Zero::is_zero(q) {
            continue;
        }
        let neg = num_traits::Signed::is_negative(q);
        let a = num_traits::Signed::abs(q);
        let coeff = if num_traits::One::is_one(&a) && !name.is_empty() { String::new() } else { a.to_string() };
        s.push_str(&format!(" {} {}{}", if neg { "-" } else { "+" }, coeff, name));
    }
    s
}
