//! Corpus experiments: per-graph checks of bounds and conjectured bounds.
//!
//! Finite graphs are checked against exact invariants. Truncations only get
//! the vertex checks, through the least number of colours of a proper
//! colouring that is distinguishing with the boundary fixed pointwise; edge
//! and total checks are skipped there.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::families::Instance;
use crate::graph::Graph;
use crate::invariants::{self, Entry, Invariant, Limits, Status};
use crate::source::{self, Defaults};
use crate::truncation::Truncation;

/// A named comparison `lhs ≤ rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// D' ≤ D + 1.
    DPrimeAtMostDPlusOne,
    /// χ_D ≤ 2Δ − 1, outside K_{Δ,Δ} and C_6.
    ChiDAtMostTwoDeltaMinusOne,
    /// χ_D ≤ 2Δ − 2 for Δ ≥ 3, outside K_{Δ,Δ}.
    ChiDAtMostTwoDeltaMinusTwo,
    /// χ_D ≤ Δ + 1 when the motion proxy holds.
    ChiDAtMostDeltaPlusOne,
    /// χ'_D ≤ Δ + 1.
    ChiPrimeDAtMostDeltaPlusOne,
    /// χ'_D ≤ χ' + 1.
    ChiPrimeDAtMostChiPrimePlusOne,
    /// χ''_D ≤ χ'' + 1.
    ChiDoubleDAtMostChiDoublePlusOne,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::DPrimeAtMostDPlusOne,
        Check::ChiDAtMostTwoDeltaMinusOne,
        Check::ChiDAtMostTwoDeltaMinusTwo,
        Check::ChiDAtMostDeltaPlusOne,
        Check::ChiPrimeDAtMostDeltaPlusOne,
        Check::ChiPrimeDAtMostChiPrimePlusOne,
        Check::ChiDoubleDAtMostChiDoublePlusOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::DPrimeAtMostDPlusOne => "D'<=D+1",
            Check::ChiDAtMostTwoDeltaMinusOne => "chiD<=2Delta-1",
            Check::ChiDAtMostTwoDeltaMinusTwo => "chiD<=2Delta-2",
            Check::ChiDAtMostDeltaPlusOne => "chiD<=Delta+1",
            Check::ChiPrimeDAtMostDeltaPlusOne => "chi'D<=Delta+1",
            Check::ChiPrimeDAtMostChiPrimePlusOne => "chi'D<=chi'+1",
            Check::ChiDoubleDAtMostChiDoublePlusOne => "chi''D<=chi''+1",
        }
    }

    /// Accepts the ASCII names and their Unicode spellings such as
    /// `χ'_D ≤ Δ+1`.
    pub fn parse(s: &str) -> Result<Check> {
        let norm: String = s
            .replace('≤', "<=")
            .replace('Δ', "Delta")
            .replace('χ', "chi")
            .replace(['−', '–'], "-")
            .replace('′', "'")
            .replace('″', "''")
            .replace("_D", "D")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        Check::ALL
            .into_iter()
            .find(|c| c.name() == norm)
            .ok_or_else(|| {
                let known: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
                Error::Parse(format!("unknown check '{s}' (known: {})", known.join(", ")))
            })
    }

    /// Invariants read by the check on finite graphs.
    fn needs(self) -> &'static [Invariant] {
        use Invariant::*;
        match self {
            Check::DPrimeAtMostDPlusOne => &[D, DPrime],
            Check::ChiDAtMostTwoDeltaMinusOne | Check::ChiDAtMostTwoDeltaMinusTwo => &[ChiD],
            Check::ChiDAtMostDeltaPlusOne => &[ChiD, Motion],
            Check::ChiPrimeDAtMostDeltaPlusOne => &[ChiPrimeD],
            Check::ChiPrimeDAtMostChiPrimePlusOne => &[ChiPrime, ChiPrimeD],
            Check::ChiDoubleDAtMostChiDoublePlusOne => &[ChiDouble, ChiDoubleD],
        }
    }

    fn is_vertex_check(self) -> bool {
        matches!(
            self,
            Check::ChiDAtMostTwoDeltaMinusOne | Check::ChiDAtMostTwoDeltaMinusTwo | Check::ChiDAtMostDeltaPlusOne
        )
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped")]
    Skipped,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
            Verdict::NotApplicable => "n/a",
        })
    }
}

/// Search bounds of a configuration; unset fields keep the defaults.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsConfig {
    pub max_vertices: Option<usize>,
    pub max_vertices_edge: Option<usize>,
    pub max_edges: Option<usize>,
    pub group_limit: Option<usize>,
    /// Wall-clock budget per invariant computation.
    pub budget_ms: Option<u64>,
}

/// Raw configuration as read from JSON.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    corpus: Vec<String>,
    checks: Vec<String>,
    #[serde(default)]
    limits: LimitsConfig,
    #[serde(default)]
    output: Option<PathBuf>,
    #[serde(default)]
    counterexamples: Option<PathBuf>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    radius: Option<u64>,
}

/// An experiment: graph sources (family strings, atlas ranges or JSON files,
/// as accepted everywhere else), the checks to run and the limits.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub corpus: Vec<String>,
    pub checks: Vec<Check>,
    pub limits: LimitsConfig,
    /// CSV output path.
    pub output: Option<PathBuf>,
    /// Where failing rows are dumped with their graphs and certificates.
    pub counterexamples: Option<PathBuf>,
    pub defaults: Defaults,
    /// Directory relative file paths are resolved against.
    pub base: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str, base: Option<&Path>) -> Result<ExperimentConfig> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Parse(format!("experiment config: {e}")))?;
        if raw.corpus.is_empty() || raw.checks.is_empty() {
            return Err(Error::Parse("experiment config: corpus and checks must be non-empty".into()));
        }
        let checks = raw.checks.iter().map(|c| Check::parse(c)).collect::<Result<Vec<_>>>()?;
        let resolve = |p: PathBuf| match base {
            Some(b) if p.is_relative() => b.join(p),
            _ => p,
        };
        Ok(ExperimentConfig {
            corpus: raw.corpus,
            checks,
            limits: raw.limits,
            output: raw.output.map(resolve),
            counterexamples: raw.counterexamples.map(resolve),
            defaults: Defaults {
                radius: raw.radius,
                seed: raw.seed,
            },
            base: base.map(Path::to_path_buf),
        })
    }

    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read '{}': {e}", path.display())))?;
        ExperimentConfig::from_json(&text, path.parent())
    }

    fn search_limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_vertices: self.limits.max_vertices.unwrap_or(d.max_vertices),
            max_vertices_edge: self.limits.max_vertices_edge.unwrap_or(d.max_vertices_edge),
            max_edges: self.limits.max_edges.unwrap_or(d.max_edges),
            group_limit: self.limits.group_limit.unwrap_or(d.group_limit),
            deadline: None,
        }
    }
}

/// One (graph, check) cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub graph: String,
    pub check: Check,
    pub lhs: Option<usize>,
    pub rhs: Option<usize>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A failing row with what is needed to inspect it.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub graph: String,
    pub check: Check,
    pub lhs: Option<usize>,
    pub rhs: Option<usize>,
    pub data: Value,
    pub certificates: BTreeMap<String, Colouring>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub check: String,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub not_applicable: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentResult {
    pub rows: Vec<Row>,
    pub summary: Vec<Tally>,
    pub counterexamples: Vec<Counterexample>,
}

impl ExperimentResult {
    pub fn has_failures(&self) -> bool {
        self.summary.iter().any(|t| t.fail > 0)
    }

    /// Rows as CSV with the columns graph, check, lhs, rhs, verdict.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(["graph", "check", "lhs", "rhs", "verdict"]).map_err(io)?;
        for r in &self.rows {
            let num = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
            w.write_record([
                r.graph.as_str(),
                r.check.name(),
                &num(r.lhs),
                &num(r.rhs),
                &r.verdict.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
        Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
    }

    /// Per-check counts as a Markdown table.
    pub fn summary_markdown(&self) -> String {
        let mut s = String::from("| check | pass | fail | skipped | n/a |\n|---|---|---|---|---|\n");
        for t in &self.summary {
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                t.check, t.pass, t.fail, t.skipped, t.not_applicable
            ));
        }
        s
    }
}

/// Values and certificates computed for one graph.
struct Computed {
    values: BTreeMap<Invariant, Entry>,
    certificates: BTreeMap<Invariant, Colouring>,
}

fn compute_finite(g: &Graph, needed: &BTreeSet<Invariant>, limits: &Limits, budget: Option<Duration>) -> Computed {
    let mut out = Computed {
        values: BTreeMap::new(),
        certificates: BTreeMap::new(),
    };
    for &inv in needed {
        let lim = Limits {
            deadline: budget.map(|b| Instant::now() + b),
            ..*limits
        };
        match invariants::compute(g, inv, &out.values, &lim) {
            Ok((entry, cert)) => {
                out.values.insert(inv, entry);
                if let Some(c) = cert {
                    out.certificates.insert(inv, c);
                }
            }
            Err(e) => {
                out.values
                    .insert(inv, Entry::Status(Status::Missing { reason: e.to_string() }));
            }
        }
    }
    out
}

fn missing_reason(values: &BTreeMap<Invariant, Entry>, invs: &[Invariant]) -> Option<String> {
    invs.iter().find_map(|i| match values.get(i) {
        Some(Entry::Status(Status::Missing { reason })) => Some(format!("{i}: {reason}")),
        _ => None,
    })
}

fn cell(graph: &str, check: Check, lhs: usize, rhs: usize) -> Row {
    Row {
        graph: graph.to_string(),
        check,
        lhs: Some(lhs),
        rhs: Some(rhs),
        verdict: if lhs <= rhs { Verdict::Pass } else { Verdict::Fail },
        note: None,
    }
}

fn status_row(graph: &str, check: Check, verdict: Verdict, note: impl Into<String>) -> Row {
    Row {
        graph: graph.to_string(),
        check,
        lhs: None,
        rhs: None,
        verdict,
        note: Some(note.into()),
    }
}

/// Rows for a finite graph.
fn finite_rows(name: &str, g: &Graph, checks: &[Check], c: &Computed) -> Vec<Row> {
    use Invariant::*;
    let delta = g.max_degree();
    let get = |i: Invariant| c.values.get(&i).and_then(Entry::value);
    let excluded = g.is_balanced_complete_bipartite() || g.is_cycle_of_length(6);
    checks
        .iter()
        .map(|&check| {
            if let Some(reason) = missing_reason(&c.values, check.needs()) {
                return status_row(name, check, Verdict::Skipped, reason);
            }
            let undefined = check
                .needs()
                .iter()
                .any(|i| c.values.get(i) == Some(&Entry::Status(Status::Undefined)));
            if undefined {
                return status_row(name, check, Verdict::NotApplicable, "no distinguishing colouring of this kind");
            }
            let v = |i: Invariant| get(i).expect("computed value");
            match check {
                Check::DPrimeAtMostDPlusOne => cell(name, check, v(DPrime), v(D) + 1),
                Check::ChiDAtMostTwoDeltaMinusOne => {
                    if delta == 0 || excluded {
                        status_row(name, check, Verdict::NotApplicable, "K_{Δ,Δ}, C_6 or a single vertex")
                    } else {
                        cell(name, check, v(ChiD), 2 * delta - 1)
                    }
                }
                Check::ChiDAtMostTwoDeltaMinusTwo => {
                    if delta < 3 || excluded {
                        status_row(name, check, Verdict::NotApplicable, "Δ < 3 or K_{Δ,Δ}")
                    } else {
                        cell(name, check, v(ChiD), 2 * delta - 2)
                    }
                }
                Check::ChiDAtMostDeltaPlusOne => {
                    let proxy = match c.values.get(&Motion) {
                        Some(Entry::Status(Status::Rigid)) => true,
                        Some(Entry::Value(m)) => *m > delta,
                        _ => false,
                    };
                    if proxy {
                        cell(name, check, v(ChiD), delta + 1)
                    } else {
                        status_row(name, check, Verdict::NotApplicable, "motion at most Δ")
                    }
                }
                Check::ChiPrimeDAtMostDeltaPlusOne => cell(name, check, v(ChiPrimeD), delta + 1),
                Check::ChiPrimeDAtMostChiPrimePlusOne => cell(name, check, v(ChiPrimeD), v(ChiPrime) + 1),
                Check::ChiDoubleDAtMostChiDoublePlusOne => cell(name, check, v(ChiDoubleD), v(ChiDouble) + 1),
            }
        })
        .collect()
}

/// Rows for a truncation, with the pointwise value if it was computed.
fn truncation_rows(name: &str, t: &Truncation, checks: &[Check], value: &std::result::Result<usize, String>) -> Vec<Row> {
    let delta = t.graph().max_degree();
    checks
        .iter()
        .map(|&check| {
            if !check.is_vertex_check() {
                return status_row(name, check, Verdict::Skipped, "edge and total checks need a finite graph");
            }
            let lhs = match value {
                Ok(v) => *v,
                Err(reason) => return status_row(name, check, Verdict::Skipped, reason.clone()),
            };
            let mut row = match check {
                Check::ChiDAtMostTwoDeltaMinusOne if delta >= 1 => cell(name, check, lhs, 2 * delta - 1),
                Check::ChiDAtMostTwoDeltaMinusTwo if delta >= 3 => cell(name, check, lhs, 2 * delta - 2),
                Check::ChiDAtMostDeltaPlusOne if t.interior_leaf().is_none() => cell(name, check, lhs, delta + 1),
                _ => status_row(name, check, Verdict::NotApplicable, "outside the hypotheses"),
            };
            if row.note.is_none() {
                row.note = Some("pointwise value on the ball".into());
            }
            row
        })
        .collect()
}

/// Runs every check on every graph of the corpus, in corpus order.
pub fn run(config: &ExperimentConfig) -> Result<ExperimentResult> {
    let limits = config.search_limits();
    let budget = config.limits.budget_ms.map(Duration::from_millis);
    let mut needed = BTreeSet::new();
    for c in &config.checks {
        needed.extend(c.needs().iter().copied());
    }
    let mut rows = Vec::new();
    let mut counterexamples = Vec::new();
    for src in &config.corpus {
        for named in source::load_relative(src, config.defaults, config.base.as_deref())? {
            let (new_rows, certs, data) = match &named.instance {
                Instance::Finite(g) => {
                    let c = compute_finite(g, &needed, &limits, budget);
                    let certs: BTreeMap<String, Colouring> = c
                        .certificates
                        .iter()
                        .map(|(k, v)| (k.name().to_string(), v.clone()))
                        .collect();
                    let data = serde_json::to_value(g.to_json_value())?;
                    (finite_rows(&named.name, g, &config.checks, &c), certs, data)
                }
                Instance::Truncated(t) => {
                    let mut certs = BTreeMap::new();
                    let value = if config.checks.iter().any(|c| c.is_vertex_check()) {
                        let lim = Limits {
                            deadline: budget.map(|b| Instant::now() + b),
                            ..limits
                        };
                        match invariants::pointwise_proper_distinguishing(t, &lim) {
                            Ok(c) => {
                                certs.insert("chi_D pointwise".to_string(), c.certificate);
                                Ok(c.value)
                            }
                            Err(e) => Err(e.to_string()),
                        }
                    } else {
                        Err("not needed".into())
                    };
                    let data = serde_json::to_value(t.to_json_value())?;
                    (truncation_rows(&named.name, t, &config.checks, &value), certs, data)
                }
            };
            for r in &new_rows {
                if r.verdict == Verdict::Fail {
                    counterexamples.push(Counterexample {
                        graph: r.graph.clone(),
                        check: r.check,
                        lhs: r.lhs,
                        rhs: r.rhs,
                        data: data.clone(),
                        certificates: certs.clone(),
                    });
                }
            }
            rows.extend(new_rows);
        }
    }
    let summary = config
        .checks
        .iter()
        .map(|&check| {
            let mut t = Tally {
                check: check.name().to_string(),
                ..Tally::default()
            };
            for r in rows.iter().filter(|r| r.check == check) {
                match r.verdict {
                    Verdict::Pass => t.pass += 1,
                    Verdict::Fail => t.fail += 1,
                    Verdict::Skipped => t.skipped += 1,
                    Verdict::NotApplicable => t.not_applicable += 1,
                }
            }
            t
        })
        .collect();
    Ok(ExperimentResult {
        rows,
        summary,
        counterexamples,
    })
}

/// Writes the CSV and, when there are failures, the counterexample dump to
/// the configured paths.
pub fn write_outputs(config: &ExperimentConfig, result: &ExperimentResult) -> Result<()> {
    if let Some(path) = &config.output {
        std::fs::write(path, result.to_csv()?)?;
    }
    if !result.counterexamples.is_empty() {
        let path = config.counterexamples.clone().or_else(|| {
            config
                .output
                .as_ref()
                .map(|p| p.with_extension("counterexamples.json"))
        });
        if let Some(path) = path {
            std::fs::write(path, serde_json::to_string_pretty(&result.counterexamples)?)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(corpus: &[&str], checks: &[&str]) -> ExperimentConfig {
        let text = serde_json::json!({ "corpus": corpus, "checks": checks }).to_string();
        ExperimentConfig::from_json(&text, None).unwrap()
    }

    #[test]
    fn check_names_round_trip_and_accept_unicode() {
        for c in Check::ALL {
            assert_eq!(Check::parse(c.name()).unwrap(), c);
        }
        assert_eq!(Check::parse("χ'_D ≤ Δ+1").unwrap(), Check::ChiPrimeDAtMostDeltaPlusOne);
        assert_eq!(Check::parse("χ_D≤2Δ−2").unwrap(), Check::ChiDAtMostTwoDeltaMinusTwo);
        assert!(matches!(Check::parse("D<=0"), Err(Error::Parse(_))));
    }

    #[test]
    fn config_errors() {
        let bad = r#"{"corpus": ["family:cycle(5)"], "checks": ["nope"]}"#;
        assert!(matches!(ExperimentConfig::from_json(bad, None), Err(Error::Parse(_))));
        let unknown_field = r#"{"corpus": ["family:cycle(5)"], "checks": ["D'<=D+1"], "extra": 1}"#;
        assert!(ExperimentConfig::from_json(unknown_field, None).is_err());
        let empty = r#"{"corpus": [], "checks": ["D'<=D+1"]}"#;
        assert!(ExperimentConfig::from_json(empty, None).is_err());
    }

    #[test]
    fn small_corpus() {
        let cfg = config(
            &["family:cycle(4)", "family:path(2)", "family:complete(4)"],
            &["D'<=D+1", "chi'D<=Delta+1", "chiD<=2Delta-1"],
        );
        let res = run(&cfg).unwrap();
        assert_eq!(res.rows.len(), 9);
        let verdicts: Vec<Verdict> = res.rows.iter().map(|r| r.verdict).collect();
        use Verdict::*;
        assert_eq!(
            verdicts,
            vec![Pass, Fail, NotApplicable, NotApplicable, NotApplicable, NotApplicable, Pass, Fail, Pass]
        );
        assert_eq!(res.counterexamples.len(), 2);
        assert!(res.has_failures());
        let csv = res.to_csv().unwrap();
        assert!(csv.starts_with("graph,check,lhs,rhs,verdict\n"));
        assert!(csv.contains("family:cycle(4),chi'D<=Delta+1,4,3,fail\n"));
        assert!(csv.contains("family:path(2),D'<=D+1,,,n/a\n"));
        assert!(res.summary_markdown().contains("| D'<=D+1 | 2 | 0 | 0 | 1 |"));
    }

    #[test]
    fn budgets_skip_instead_of_failing() {
        let mut cfg = config(&["family:petersen"], &["chi''D<=chi''+1"]);
        cfg.limits.max_edges = Some(5);
        let res = run(&cfg).unwrap();
        assert_eq!(res.rows[0].verdict, Verdict::Skipped);
        assert!(!res.has_failures());
    }

    #[test]
    fn truncations_get_vertex_checks_only() {
        let cfg = config(&["family:kdd_minus_edge_rays(3,2)"], &["chiD<=2Delta-2", "D'<=D+1"]);
        let res = run(&cfg).unwrap();
        assert_eq!(res.rows[0].lhs, Some(4));
        assert_eq!(res.rows[0].verdict, Verdict::Pass);
        assert_eq!(res.rows[1].verdict, Verdict::Skipped);
    }

    #[test]
    fn outputs_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = config(&["family:cycle(4)"], &["chi'D<=Delta+1"]);
        cfg.output = Some(dir.path().join("out.csv"));
        let res = run(&cfg).unwrap();
        write_outputs(&cfg, &res).unwrap();
        assert!(dir.path().join("out.csv").exists());
        let dump = std::fs::read_to_string(dir.path().join("out.counterexamples.json")).unwrap();
        assert!(dump.contains("\"chi'_D\""));
    }
}
