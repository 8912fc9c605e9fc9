//! Serialization of criterion reports, scan summaries, and sweep rows.
//!
//! JSON field names are part of the external interface and stay put:
//! `theorem`, `s`, `lhs`, `bound`, `violated`, `delta`, `region` (with
//! `p_minus`, `p_zero`, `p_plus`, `mu_plus`, `mu_minus`, `var_plus`,
//! `var_minus`), `flags`, plus `g` / `var_inf` when an inference channel
//! was involved. The CSV renderers emit one row per report with the same
//! quantities flattened.

use serde::Serialize;
use std::fmt::Write as _;

use crate::criteria::{CriterionReport, MaxSeparationReport};

#[derive(Debug, Clone, Copy, Serialize)]
struct RegionJson {
    p_minus: f64,
    p_zero: f64,
    p_plus: f64,
    mu_plus: f64,
    mu_minus: f64,
    var_plus: f64,
    var_minus: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
struct FlagsJson {
    empty_minus: bool,
    empty_zero: bool,
    empty_plus: bool,
    /// Both outer regions populated — a violation certifies only then.
    applicable: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
struct ZeroSplitJson {
    minus: f64,
    plus: f64,
}

/// JSON mirror of one criterion report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    theorem: &'static str,
    s: f64,
    lhs: f64,
    bound: f64,
    violated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    region: RegionJson,
    flags: FlagsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    var_inf: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    signed_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    zero_split: Option<ZeroSplitJson>,
}

impl From<&CriterionReport> for ReportJson {
    fn from(report: &CriterionReport) -> Self {
        let r = &report.region;
        Self {
            theorem: report.theorem.as_str(),
            s: report.s,
            lhs: report.lhs,
            bound: report.bound,
            violated: report.violated,
            delta: report.delta,
            region: RegionJson {
                p_minus: r.p_minus,
                p_zero: r.p_zero,
                p_plus: r.p_plus,
                mu_plus: r.mu_plus,
                mu_minus: r.mu_minus,
                var_plus: r.var_plus,
                var_minus: r.var_minus,
            },
            flags: FlagsJson {
                empty_minus: r.flags.empty_minus,
                empty_zero: r.flags.empty_zero,
                empty_plus: r.flags.empty_plus,
                applicable: r.flags.applicable(),
            },
            g: report.inference.map(|fit| fit.g),
            var_inf: report.inference.map(|fit| fit.var_inf),
            signed_bound: report.signed_bound,
            zero_split: report.zero_split.map(|z| ZeroSplitJson {
                minus: z.minus,
                plus: z.plus,
            }),
        }
    }
}

/// One report as a pretty-printed JSON document.
pub fn report_json(report: &CriterionReport) -> String {
    serde_json::to_string_pretty(&ReportJson::from(report)).expect("plain data serializes")
}

#[derive(Debug, Clone, Copy, Serialize)]
struct GridJson {
    ceiling: f64,
    points: usize,
    bisection_steps: usize,
}

/// JSON mirror of a full scan: the per-separation reports plus the
/// refined maximum.
#[derive(Debug, Clone, Serialize)]
pub struct ScanJson {
    max_s: f64,
    grid: GridJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    at_max: Option<ReportJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    above: Option<ReportJson>,
    scan: Vec<ReportJson>,
}

impl From<&MaxSeparationReport> for ScanJson {
    fn from(m: &MaxSeparationReport) -> Self {
        Self {
            max_s: m.max_s,
            grid: GridJson {
                ceiling: m.grid.ceiling,
                points: m.grid.points,
                bisection_steps: m.grid.bisection_steps,
            },
            at_max: m.at_max.as_ref().map(ReportJson::from),
            above: m.above.as_ref().map(ReportJson::from),
            scan: m.scan.iter().map(ReportJson::from).collect(),
        }
    }
}

/// A scan summary as a pretty-printed JSON document.
pub fn scan_json(scan: &MaxSeparationReport) -> String {
    serde_json::to_string_pretty(&ScanJson::from(scan)).expect("plain data serializes")
}

/// Reports as an array JSON document.
pub fn reports_json(reports: &[CriterionReport]) -> String {
    let rows: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
    serde_json::to_string_pretty(&rows).expect("plain data serializes")
}

pub const REPORT_CSV_HEADER: &str = "theorem,s,lhs,bound,violated,delta,p_minus,p_zero,p_plus,\
mu_plus,mu_minus,var_plus,var_minus,empty_minus,empty_zero,empty_plus,applicable,g,var_inf";

fn push_optional(row: &mut String, value: Option<f64>) {
    match value {
        Some(v) => {
            let _ = write!(row, ",{v}");
        }
        None => row.push(','),
    }
}

/// One CSV row per report under [`REPORT_CSV_HEADER`]. Numbers use the
/// shortest representation that round-trips; absent optionals leave the
/// cell empty.
pub fn reports_csv(reports: &[CriterionReport]) -> String {
    let mut out = String::from(REPORT_CSV_HEADER);
    out.push('\n');
    for report in reports {
        let r = &report.region;
        let mut row = String::new();
        let _ = write!(
            row,
            "{},{},{},{},{}",
            report.theorem.as_str(),
            report.s,
            report.lhs,
            report.bound,
            report.violated
        );
        push_optional(&mut row, report.delta);
        let _ = write!(
            row,
            ",{},{},{},{},{},{},{},{},{},{},{}",
            r.p_minus,
            r.p_zero,
            r.p_plus,
            r.mu_plus,
            r.mu_minus,
            r.var_plus,
            r.var_minus,
            r.flags.empty_minus,
            r.flags.empty_zero,
            r.flags.empty_plus,
            r.flags.applicable()
        );
        push_optional(&mut row, report.inference.map(|fit| fit.g));
        push_optional(&mut row, report.inference.map(|fit| fit.var_inf));
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub const SWEEP_CSV_HEADER: &str = "dxdp,max_s_over_dx";

/// Sweep rows `(uncertainty product, max S / Δx)` as CSV.
pub fn sweep_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for &(dxdp, ratio) in rows {
        let _ = writeln!(out, "{dxdp},{ratio}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{theorem1, theorem3};
    use crate::stats::EmpiricalDistribution;

    fn sample_report() -> CriterionReport {
        let dist =
            EmpiricalDistribution::from_samples(&[-1.0, -0.9, 0.0, 0.9, 1.0]).unwrap();
        theorem1(&dist, 0.1, 1.0).unwrap()
    }

    #[test]
    fn json_carries_the_contract_fields() {
        let text = report_json(&sample_report());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["theorem"], "T1");
        for key in ["s", "lhs", "bound", "violated", "delta"] {
            assert!(!value[key].is_null(), "missing {key}");
        }
        for key in [
            "p_minus", "p_zero", "p_plus", "mu_plus", "mu_minus", "var_plus", "var_minus",
        ] {
            assert!(value["region"][key].is_number(), "missing region.{key}");
        }
        for key in ["empty_minus", "empty_zero", "empty_plus", "applicable"] {
            assert!(value["flags"][key].is_boolean(), "missing flags.{key}");
        }
        // No inference channel in a T1 report.
        assert!(value.get("g").is_none());
        assert!(value.get("var_inf").is_none());
    }

    #[test]
    fn spin_report_serializes_the_zero_split() {
        let dist = EmpiricalDistribution::from_weighted(
            &[-2.0, -1.0, 0.0, 1.0, 2.0],
            &[0.2, 0.2, 0.2, 0.2, 0.2],
        )
        .unwrap();
        let report = theorem3(&dist, 1.0, 0.5, 2.0).unwrap();
        let value: serde_json::Value =
            serde_json::from_str(&report_json(&report)).unwrap();
        assert_eq!(value["theorem"], "T3");
        assert!(value["zero_split"]["minus"].is_number());
        assert!(value["zero_split"]["plus"].is_number());
        assert!(value["signed_bound"].is_number());
        assert!(value.get("delta").is_none());
    }

    #[test]
    fn csv_rows_round_trip_the_numbers() {
        let report = sample_report();
        let text = reports_csv(&[report]);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(REPORT_CSV_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "T1");
        assert_eq!(row[1].parse::<f64>().unwrap(), report.s);
        assert_eq!(row[2].parse::<f64>().unwrap(), report.lhs);
        assert_eq!(row[4], if report.violated { "true" } else { "false" });
        // T1 rows leave the inference cells empty.
        assert_eq!(row[row.len() - 1], "");
        assert_eq!(row[row.len() - 2], "");
        assert_eq!(row.len(), REPORT_CSV_HEADER.split(',').count());
    }

    #[test]
    fn sweep_rows_render_in_order() {
        let text = sweep_csv(&[(1.0, 0.5), (1.02, 0.47)]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines, vec!["dxdp,max_s_over_dx", "1,0.5", "1.02,0.47"]);
    }
}
