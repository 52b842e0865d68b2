//! Report documents and their renderings.
//!
//! Every JSON report has the shape
//! `{schema_version, command, config, results[], summary{checked, violations, seconds}}`,
//! with sweep violations (and their proof traces) under a top-level `violations` key.

use std::fmt::Write as _;

use binomdiv_core::ratio::{Certificate, CertificateEntry, Verdict};
use binomdiv_core::theorem::{
    ParamTriple, ProofTrace, SweepConfig, SweepReport, SweepRanges, TraceBranch, TripleResult,
    Violation,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub checked: u64,
    pub violations: u64,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument<C, R> {
    pub schema_version: u32,
    pub command: String,
    pub config: C,
    pub results: Vec<R>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
}

impl<C: Serialize, R: Serialize> ReportDocument<C, R> {
    pub fn new(command: &str, config: C, results: Vec<R>, summary: Summary) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            results,
            summary,
            violations: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// One verified triple as it appears in `results[]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub a: u64,
    pub b: u64,
    pub n: u64,
    pub verdict: String,
    pub witness_prime: Option<u64>,
    pub seconds: f64,
    pub entries: Vec<CertificateEntry>,
}

impl ResultRecord {
    pub fn new(t: &ParamTriple, cert: &Certificate, seconds: f64, with_entries: bool) -> Self {
        Self {
            a: t.a,
            b: t.b,
            n: t.n,
            verdict: verdict_word(&cert.verdict).to_string(),
            witness_prime: cert.witness(),
            seconds,
            entries: if with_entries || !cert.holds() {
                cert.entries.clone()
            } else {
                Vec::new()
            },
        }
    }

    pub fn from_sweep(r: &TripleResult, with_entries: bool) -> Self {
        Self::new(&r.triple, &r.certificate, r.seconds, with_entries)
    }
}

pub fn verdict_word(v: &Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails { .. } => "fails",
    }
}

pub type SweepDocument = ReportDocument<SweepConfig, ResultRecord>;

pub fn sweep_document(config: &SweepConfig, report: &SweepReport, results: &[TripleResult], all_entries: bool) -> SweepDocument {
    let mut doc = ReportDocument::new(
        "sweep",
        config.clone(),
        results.iter().map(|r| ResultRecord::from_sweep(r, all_entries)).collect(),
        Summary {
            checked: report.checked,
            violations: report.violations.len() as u64,
            seconds: report.duration,
        },
    );
    doc.violations = report.violations.clone();
    doc
}

impl SweepDocument {
    /// The [`SweepReport`] this document was written from.
    pub fn sweep_report(&self) -> SweepReport {
        SweepReport {
            ranges: SweepRanges {
                a_max: self.config.a_max,
                b_max: self.config.b_max,
                n_max: self.config.n_max,
            },
            checked: self.summary.checked,
            violations: self.violations.clone(),
            duration: self.summary.seconds,
        }
    }
}

#[derive(Serialize)]
struct CsvRow {
    a: u64,
    b: u64,
    n: u64,
    verdict: String,
    witness_prime: Option<u64>,
    seconds: f64,
}

/// CSV with columns `a,b,n,verdict,witness_prime,seconds`.
pub fn results_csv(records: &[ResultRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(CsvRow {
            a: r.a,
            b: r.b,
            n: r.n,
            verdict: r.verdict.clone(),
            witness_prime: r.witness_prime,
            seconds: r.seconds,
        })
        .expect("csv row");
    }
    if records.is_empty() {
        return "a,b,n,verdict,witness_prime,seconds\n".into();
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
}

pub fn certificate_human(cert: &Certificate, max_rows: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdict: {}", match cert.verdict {
        Verdict::Holds => "HOLDS".to_string(),
        Verdict::Fails { witness } => format!("FAILS (witness prime {witness})"),
    });
    let _ = writeln!(s, "primes with a requirement: {}", cert.entries.len());
    if let Some(tight) = cert.entries.iter().min_by_key(|e| (e.margin(), e.p)) {
        let _ = writeln!(s, "smallest margin: {} at p={}", tight.margin(), tight.p);
    }
    let _ = writeln!(s, "{:>12} {:>9} {:>9} {:>7}", "p", "required", "available", "margin");
    for e in cert.entries.iter().take(max_rows) {
        let _ = writeln!(s, "{:>12} {:>9} {:>9} {:>7}", e.p, e.required, e.available, e.margin());
    }
    if cert.entries.len() > max_rows {
        let _ = writeln!(s, "{:>12} ({} more rows)", "...", cert.entries.len() - max_rows);
    }
    s
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

pub fn trace_human(tr: &ProofTrace) -> String {
    let t = tr.triple;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "p={} divides {}={} (a={}, b={}, n={})",
        tr.p, tr.modulus_branch, tr.modulus, t.a, t.b, t.n
    );
    let _ = writeln!(
        s,
        "  alpha={} beta={} gamma={} tau={}  branch={:?}",
        tr.alpha,
        opt(tr.beta),
        opt(tr.gamma),
        opt(tr.tau),
        tr.branch
    );
    let args = [2 * t.an(), t.bn(), t.an(), t.an() - t.bn(), 2 * t.bn()];
    for l in &tr.levels {
        let pk = tr.p.pow(l.i as u32);
        let f = l.floors;
        let _ = writeln!(
            s,
            "  i={}: ⌊{}/{pk}⌋ + ⌊{}/{pk}⌋ − ⌊{}/{pk}⌋ − ⌊{}/{pk}⌋ − ⌊{}/{pk}⌋ = {} + {} − {} − {} − {} = {}",
            l.i, args[0], args[1], args[2], args[3], args[4], f[0], f[1], f[2], f[3], f[4], l.term
        );
    }
    if tr.branch == TraceBranch::NineDividesN {
        let _ = writeln!(s, "  9 | n, so 3 ‖ 2bn+3");
    }
    let _ = writeln!(
        s,
        "  nu_p(3(a-b)(3a-b)) = {}, nu_p(T) = {}, total {} vs alpha {}: {}",
        tr.multiplier_valuation,
        tr.t_valuation,
        tr.total_valuation(),
        tr.alpha,
        if tr.satisfied { "satisfied" } else { "NOT SATISFIED" }
    );
    for f in &tr.failures {
        let _ = writeln!(s, "  failure: {f}");
    }
    s
}
