//! Rendering of command results as JSON, CSV or plain text.

use std::fmt::Write;

use qmckay::campaign::{CampaignConfig, CheckOutcome};
use qmckay::crc::InvariantRecord;
use qmckay::rational::format_rational;
use qmckay::{GroupData, RootSystem, RootSystemType};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::Format;

pub const SCHEMA_VERSION: u32 = 1;

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// 17 significant digits.
fn float_literal(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct RootsReport {
    schema_version: u32,
    #[serde(rename = "type")]
    type_label: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    highest_root: Vec<i64>,
    coxeter_number: String,
    epsilon: String,
}

pub fn roots(rs: &RootSystem, format: Format) -> String {
    let report = RootsReport {
        schema_version: SCHEMA_VERSION,
        type_label: rs.rstype().to_string(),
        rank: rs.rank(),
        cartan: rs.cartan().to_vec(),
        positive_roots: rs.positive_roots().iter().map(|r| r.0.clone()).collect(),
        highest_root: rs.highest_root().0.clone(),
        coxeter_number: format_rational(rs.coxeter_number()),
        epsilon: format_rational(rs.epsilon()),
    };
    let join = |v: &[i64], sep: &str| v.iter().map(i64::to_string).collect::<Vec<_>>().join(sep);
    match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("index,height,coefficients\n");
            for (i, r) in report.positive_roots.iter().enumerate() {
                let _ = writeln!(s, "{i},{},{}", r.iter().sum::<i64>(), join(r, " "));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "type {}  rank {}", report.type_label, report.rank);
            let _ = writeln!(s, "Cartan matrix:");
            for row in &report.cartan {
                let _ = writeln!(s, "  {}", row.iter().map(|x| format!("{x:>3}")).collect::<String>());
            }
            let _ = writeln!(s, "positive roots ({}):", report.positive_roots.len());
            for r in &report.positive_roots {
                let _ = writeln!(s, "  ({})", join(r, ", "));
            }
            let _ = writeln!(s, "highest root: ({})", join(&report.highest_root, ", "));
            let _ = writeln!(s, "h = {}", report.coxeter_number);
            let _ = writeln!(s, "eps = {}", report.epsilon);
            s
        }
    }
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    schema_version: u32,
    #[serde(rename = "type")]
    type_label: String,
    seed: u64,
    trials: u64,
    order: u32,
    max_insertions: usize,
    passed: bool,
    checks: &'a [CheckOutcome],
}

pub fn verify(t: RootSystemType, cfg: &CampaignConfig, outcomes: &[CheckOutcome], format: Format) -> String {
    let passed = outcomes.iter().all(CheckOutcome::passed);
    match format {
        Format::Json => to_json(&VerifyReport {
            schema_version: SCHEMA_VERSION,
            type_label: t.to_string(),
            seed: cfg.seed,
            trials: cfg.trials,
            order: cfg.order,
            max_insertions: cfg.max_insertions,
            passed,
            checks: outcomes,
        }),
        Format::Csv => {
            let mut s = String::from("check,type,seed,trials,cases,violations,passed\n");
            for o in outcomes {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    o.check, o.type_label, o.seed, o.trials, o.cases, o.violations, o.passed()
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for o in outcomes {
                let status = if o.passed() { "ok  " } else { "FAIL" };
                let _ = writeln!(s, "{status} {:<14} {} cases, {} violations", o.check.name(), o.cases, o.violations);
                if let Some(c) = &o.counterexample {
                    let _ = writeln!(s, "     first counterexample: {} at indices {:?}", c.detail, c.indices);
                    if let Some(p) = &c.point {
                        let _ = writeln!(s, "     point #{}: t = {}, q = [{}]", p.index, p.t, p.q.join(", "));
                    }
                }
            }
            let _ = writeln!(
                s,
                "{t}: {} (seed {}, {} trials)",
                if passed { "all checks passed" } else { "violations found" },
                cfg.seed,
                cfg.trials
            );
            s
        }
    }
}

#[derive(Serialize)]
struct RecordJson<'a> {
    #[serde(rename = "type")]
    type_label: String,
    group_order: usize,
    classes: &'a [String],
    m: usize,
    value_rational: String,
    value_float: Box<RawValue>,
    t_power: u32,
}

#[derive(Serialize)]
struct CrcReport<'a> {
    schema_version: u32,
    #[serde(rename = "type")]
    type_label: String,
    group_order: usize,
    classes: Vec<&'a str>,
    max_insertions: usize,
    records: Vec<RecordJson<'a>>,
}

pub fn crc(t: RootSystemType, group: &GroupData, max_insertions: usize, records: &[InvariantRecord], format: Format) -> String {
    match format {
        Format::Json => to_json(&CrcReport {
            schema_version: SCHEMA_VERSION,
            type_label: t.to_string(),
            group_order: group.order(),
            classes: group.classes().iter().map(|c| c.label.as_str()).collect(),
            max_insertions,
            records: records
                .iter()
                .map(|r| RecordJson {
                    type_label: r.rstype.to_string(),
                    group_order: r.group_order,
                    classes: &r.classes,
                    m: r.m,
                    value_rational: format_rational(&r.value_rational),
                    value_float: RawValue::from_string(float_literal(r.value)).expect("valid JSON number"),
                    t_power: 1,
                })
                .collect(),
        }),
        Format::Csv => {
            let mut s = String::from("type,group_order,classes,m,value_rational,value_float,t_power\n");
            for r in records {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},1",
                    r.rstype,
                    r.group_order,
                    r.classes.join(" "),
                    r.m,
                    format_rational(&r.value_rational),
                    float_literal(r.value)
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{t}: |G| = {}, {} invariants with up to {max_insertions} insertions", group.order(), records.len());
            for r in records {
                let _ = writeln!(
                    s,
                    "  <{}> = {} t  ({})",
                    r.classes.join(", "),
                    format_rational(&r.value_rational),
                    float_literal(r.value)
                );
            }
            s
        }
    }
}
