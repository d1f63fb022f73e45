//! Sweep records and their JSON / CSV renderings.

use std::collections::BTreeMap;

use corner_core::io::{exact, exact_opt};
use corner_core::rational::approx;
use corner_core::Rational;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

/// Everything a run depends on. Identical configurations give identical bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub dim: usize,
    pub trials: u64,
    pub format: Format,
    pub approx: bool,
    /// Command-specific parameters.
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Inequality holds strictly.
    Holds,
    /// Inequality holds with equality at a nontrivial index.
    Equality,
    /// Equality at `j = 0` or `j = n`.
    Trivial,
    Violated,
    Agree,
    Disagree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub trial: u64,
    pub instance: String,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(with = "exact")]
    pub lhs: Rational,
    #[serde(with = "exact")]
    pub rhs: Rational,
    #[serde(with = "exact_opt", skip_serializing_if = "Option::is_none")]
    pub ratio: Option<Rational>,
    pub verdict: Verdict,
    /// The full instance, attached to equality and failure records.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub body: Option<serde_json::Value>,
}

impl Record {
    /// An inequality record `lhs <= rhs`; `trivial` marks indices where
    /// equality is automatic.
    pub fn inequality(
        trial: u64,
        instance: &str,
        check: &str,
        j: Option<usize>,
        lhs: Rational,
        rhs: Rational,
        trivial: bool,
    ) -> Self {
        let verdict = if lhs > rhs {
            Verdict::Violated
        } else if lhs == rhs {
            if trivial {
                Verdict::Trivial
            } else {
                Verdict::Equality
            }
        } else {
            Verdict::Holds
        };
        let ratio = (rhs != Rational::from_integer(0.into())).then(|| &lhs / &rhs);
        Record {
            trial,
            instance: instance.into(),
            check: check.into(),
            j,
            lhs,
            rhs,
            ratio,
            verdict,
            body: None,
        }
    }

    /// Two routes to the same value.
    pub fn agreement(trial: u64, instance: &str, check: &str, j: Option<usize>, lhs: Rational, rhs: Rational) -> Self {
        Record {
            trial,
            instance: instance.into(),
            check: check.into(),
            j,
            verdict: if lhs == rhs { Verdict::Agree } else { Verdict::Disagree },
            lhs,
            rhs,
            ratio: None,
            body: None,
        }
    }

    pub fn needs_body(&self) -> bool {
        matches!(self.verdict, Verdict::Equality | Verdict::Violated | Verdict::Disagree)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: u64,
    pub records: usize,
    pub holds: usize,
    pub equalities: usize,
    pub trivial: usize,
    pub violations: usize,
    pub agreements: usize,
    pub disagreements: usize,
    /// Extremes over nontrivial inequality records.
    #[serde(with = "exact_opt")]
    pub min_ratio: Option<Rational>,
    #[serde(with = "exact_opt")]
    pub max_ratio: Option<Rational>,
}

impl Summary {
    pub fn of(instances: u64, records: &[Record]) -> Self {
        let count = |v: Verdict| records.iter().filter(|r| r.verdict == v).count();
        let ratios = records
            .iter()
            .filter(|r| matches!(r.verdict, Verdict::Holds | Verdict::Equality | Verdict::Violated))
            .filter_map(|r| r.ratio.clone());
        let (mut min_ratio, mut max_ratio): (Option<Rational>, Option<Rational>) = (None, None);
        for r in ratios {
            if min_ratio.as_ref().is_none_or(|m| &r < m) {
                min_ratio = Some(r.clone());
            }
            if max_ratio.as_ref().is_none_or(|m| &r > m) {
                max_ratio = Some(r);
            }
        }
        Summary {
            instances,
            records: records.len(),
            holds: count(Verdict::Holds),
            equalities: count(Verdict::Equality),
            trivial: count(Verdict::Trivial),
            violations: count(Verdict::Violated),
            agreements: count(Verdict::Agree),
            disagreements: count(Verdict::Disagree),
            min_ratio,
            max_ratio,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub command: String,
    pub config: RunConfig,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl SweepReport {
    pub fn new(command: &str, config: RunConfig, instances: u64, records: Vec<Record>) -> Self {
        let summary = Summary::of(instances, &records);
        SweepReport {
            command: command.into(),
            config,
            records,
            summary,
        }
    }

    pub fn render(&self) -> anyhow::Result<String> {
        match self.config.format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => self.to_csv(),
        }
    }

    /// Exact columns first; `approx_ratio` is a lossy decimal for reading only.
    fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["trial", "instance", "check", "j", "lhs", "rhs", "ratio", "verdict"];
        if self.config.approx {
            header.push("approx_ratio");
        }
        w.write_record(&header)?;
        for r in &self.records {
            let verdict = serde_json::to_value(r.verdict)?;
            let mut row = vec![
                r.trial.to_string(),
                r.instance.clone(),
                r.check.clone(),
                r.j.map(|j| j.to_string()).unwrap_or_default(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.ratio.as_ref().map(ToString::to_string).unwrap_or_default(),
                verdict.as_str().unwrap_or_default().to_string(),
            ];
            if self.config.approx {
                row.push(
                    r.ratio
                        .as_ref()
                        .map(|q| format!("{:.6}", approx(q)))
                        .unwrap_or_default(),
                );
            }
            w.write_record(&row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use corner_core::rational::{frac, int};

    fn config(format: Format, approx: bool) -> RunConfig {
        RunConfig {
            seed: 1,
            dim: 2,
            trials: 1,
            format,
            approx,
            params: BTreeMap::new(),
        }
    }

    #[test]
    fn verdicts() {
        assert_eq!(
            Record::inequality(0, "x", "c", Some(1), int(1), int(2), false).verdict,
            Verdict::Holds
        );
        assert_eq!(
            Record::inequality(0, "x", "c", Some(1), int(2), int(2), false).verdict,
            Verdict::Equality
        );
        assert_eq!(
            Record::inequality(0, "x", "c", Some(0), int(2), int(2), true).verdict,
            Verdict::Trivial
        );
        assert_eq!(
            Record::inequality(0, "x", "c", Some(1), int(3), int(2), false).verdict,
            Verdict::Violated
        );
        assert_eq!(
            Record::agreement(0, "x", "c", None, int(3), int(2)).verdict,
            Verdict::Disagree
        );
    }

    #[test]
    fn summary_extremes_skip_trivial_records() {
        let records = vec![
            Record::inequality(0, "x", "c", Some(0), int(1), int(1), true),
            Record::inequality(0, "x", "c", Some(1), int(1), int(4), false),
            Record::inequality(0, "x", "c", Some(2), int(1), int(2), false),
        ];
        let s = Summary::of(1, &records);
        assert_eq!((s.min_ratio, s.max_ratio), (Some(frac(1, 4)), Some(frac(1, 2))));
        assert_eq!((s.holds, s.trivial), (2, 1));
    }

    #[test]
    fn csv_is_exact_with_optional_approx_column() {
        let records = vec![Record::inequality(
            3,
            "cube",
            "godbersen",
            Some(1),
            int(4),
            int(8),
            false,
        )];
        let plain = SweepReport::new("godbersen", config(Format::Csv, false), 1, records.clone())
            .render()
            .unwrap();
        assert_eq!(
            plain,
            "trial,instance,check,j,lhs,rhs,ratio,verdict\n3,cube,godbersen,1,4,8,1/2,holds\n"
        );
        let with = SweepReport::new("godbersen", config(Format::Csv, true), 1, records)
            .render()
            .unwrap();
        assert!(with.ends_with(",holds,0.500000\n"), "{with}");
    }
}
