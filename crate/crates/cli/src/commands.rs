use std::fmt::Write as _;
use std::io::Write as _;
use std::time::Instant;

use binomdiv_core::ratio::{is_integral_with, verify_claim, FactorialRatio, Integrality, LinearForm};
use binomdiv_core::registry::builtin_families;
use binomdiv_core::theorem::{run_sweep, trace_all, ModulusBranch, ParamTriple, SweepConfig};
use binomdiv_core::valuation::{lemma1_holds, sieve, ExactRational};
use binomdiv_core::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::args::{
    CertificateDetail, Format, IntegralityArgs, LemmaFuzzArgs, ModulusSelector, OracleCheckArgs,
    OutputArgs, SweepArgs, TraceArgs, VerifyArgs,
};
use crate::report::{
    certificate_human, results_csv, sweep_document, trace_human, ReportDocument, ResultRecord,
    Summary,
};
use crate::suites::builtin_suites;
use crate::{Exit, Failure};

fn seconds(output: &OutputArgs, start: Instant) -> f64 {
    if output.no_timing {
        0.0
    } else {
        start.elapsed().as_secs_f64()
    }
}

fn emit(output: &OutputArgs, text: &str) -> std::result::Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Usage(format!("cannot write standard output: {e}")))
        }
    }
}

fn no_csv(command: &str) -> Failure {
    Failure::Usage(format!("{command} has no CSV rendering; use --format json or human"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub family: String,
    pub a: u64,
    pub b: u64,
    pub n: u64,
    pub claim: String,
}

pub fn verify(args: &VerifyArgs) -> std::result::Result<Exit, Failure> {
    let start = Instant::now();
    let families = builtin_families();
    let family = families.get(&args.family)?;
    let t = ParamTriple::new(args.a, args.b, args.n)?;
    let claim = family.claim(t.a, t.b)?;
    let table = sieve(claim.prime_bound(t.n)?)?;
    let cert = verify_claim(&claim, t.n, &table)?;
    let elapsed = seconds(&args.output, start);

    let record = ResultRecord::new(&t, &cert, elapsed, true);
    let text = match args.output.format {
        Format::Json => {
            let config = VerifyConfig {
                family: family.name().to_string(),
                a: t.a,
                b: t.b,
                n: t.n,
                claim: claim.to_string(),
            };
            let summary = Summary {
                checked: 1,
                violations: u64::from(!cert.holds()),
                seconds: elapsed,
            };
            ReportDocument::new("verify", config, vec![record], summary).to_json()
        }
        Format::Csv => results_csv(&[record]),
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(s, "family: {}", family.name());
            let _ = writeln!(s, "claim: {claim}");
            let _ = writeln!(s, "a={} b={} n={}", t.a, t.b, t.n);
            s.push_str(&certificate_human(&cert, args.max_rows));
            let _ = writeln!(s, "elapsed: {elapsed:.3} s");
            s
        }
    };
    emit(&args.output, &text)?;
    if cert.holds() {
        return Ok(Exit::Pass);
    }
    if family.is_theorem() {
        eprintln!("theorem violation at a={} b={} n={}; full certificate:", t.a, t.b, t.n);
        eprint!("{}", certificate_human(&cert, usize::MAX));
    }
    Ok(Exit::Violation)
}

pub fn sweep(args: &SweepArgs) -> std::result::Result<Exit, Failure> {
    let mut config = SweepConfig::new(args.a_max, args.b_max, args.n_max);
    config.family = args.family.clone();
    config.jobs = args.jobs;
    config.sample = args.sample;
    config.seed = args.seed;
    config.timing = !args.output.no_timing;

    let families = builtin_families();
    let outcome = run_sweep(&config, &families)?;
    let doc = sweep_document(
        &config,
        &outcome.report,
        &outcome.results,
        args.certificates == CertificateDetail::All,
    );
    let text = match args.output.format {
        Format::Json => doc.to_json(),
        Format::Csv => results_csv(&doc.results),
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "sweep family={} a<={} b<={} n<={} jobs={}",
                config.family, config.a_max, config.b_max, config.n_max, config.jobs
            );
            if let Some(k) = config.sample {
                let _ = writeln!(s, "sampled {k} triples with seed {}", config.seed);
            }
            let _ = writeln!(s, "checked: {}", doc.summary.checked);
            let _ = writeln!(s, "violations: {}", doc.summary.violations);
            let _ = writeln!(s, "seconds: {:.3}", doc.summary.seconds);
            for v in &doc.violations {
                let t = v.triple;
                let _ = writeln!(s, "FAILS a={} b={} n={} witness prime {}", t.a, t.b, t.n, v.witness);
                for tr in &v.traces {
                    s.push_str(&trace_human(tr));
                }
            }
            s
        }
    };
    emit(&args.output, &text)?;
    if outcome.report.violations.is_empty() {
        return Ok(Exit::Pass);
    }
    if families.get(&config.family)?.is_theorem() {
        if outcome.aborted {
            eprintln!("sweep stopped early on a theorem violation");
        }
        for r in outcome.results.iter().filter(|r| !r.certificate.holds()) {
            let t = r.triple;
            eprintln!("theorem violation at a={} b={} n={}:", t.a, t.b, t.n);
            eprint!("{}", certificate_human(&r.certificate, usize::MAX));
        }
    }
    Ok(Exit::Violation)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceConfig {
    pub a: u64,
    pub b: u64,
    pub n: u64,
    pub modulus: String,
}

pub fn trace(args: &TraceArgs) -> std::result::Result<Exit, Failure> {
    let start = Instant::now();
    let branch = match args.modulus {
        ModulusSelector::TwoBnPlus1 => ModulusBranch::TwoBnPlus1,
        ModulusSelector::TwoBnPlus3 => ModulusBranch::TwoBnPlus3,
    };
    let t = ParamTriple::new(args.a, args.b, args.n)?;
    let modulus = t.modulus(branch);
    let table = sieve(modulus.isqrt() + 1)?;
    let traces = trace_all(&t, branch, &table)?;
    let failed = traces.iter().filter(|tr| !tr.satisfied).count() as u64;
    let elapsed = seconds(&args.output, start);

    let text = match args.output.format {
        Format::Json => {
            let config = TraceConfig {
                a: t.a,
                b: t.b,
                n: t.n,
                modulus: branch.to_string(),
            };
            let summary = Summary {
                checked: traces.len() as u64,
                violations: failed,
                seconds: elapsed,
            };
            ReportDocument::new("trace", config, traces, summary).to_json()
        }
        Format::Csv => return Err(no_csv("trace")),
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(s, "{branch} = {modulus} for a={} b={} n={}", t.a, t.b, t.n);
            if traces.is_empty() {
                let _ = writeln!(s, "no prime factors");
            }
            for tr in &traces {
                s.push_str(&trace_human(tr));
            }
            let _ = writeln!(s, "{} of {} primes satisfied", traces.len() as u64 - failed, traces.len());
            s
        }
    };
    emit(&args.output, &text)?;
    Ok(if failed == 0 { Exit::Pass } else { Exit::Violation })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaFuzzConfig {
    pub samples: u64,
    pub max_num: i64,
    pub max_den: i64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCounterexample {
    pub x: ExactRational,
    pub y: ExactRational,
    pub lhs: i64,
    pub rhs: i64,
}

/// Draws `samples` pairs of rationals `num/den` with `|num| <= max_num`, `1 <= den <= max_den`.
pub fn lemma_fuzz_run(config: &LemmaFuzzConfig) -> Result<Vec<LemmaCounterexample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (m, d) = (config.max_num, config.max_den);
    let mut bad = Vec::new();
    for _ in 0..config.samples {
        let x = ExactRational::new(rng.random_range(-m..=m), rng.random_range(1..=d))?;
        let y = ExactRational::new(rng.random_range(-m..=m), rng.random_range(1..=d))?;
        let out = lemma1_holds(x, y)?;
        if !out.holds {
            bad.push(LemmaCounterexample { x, y, lhs: out.lhs, rhs: out.rhs });
        }
    }
    Ok(bad)
}

pub fn lemma_fuzz(args: &LemmaFuzzArgs) -> std::result::Result<Exit, Failure> {
    let start = Instant::now();
    let config = LemmaFuzzConfig {
        samples: args.samples,
        max_num: args.max_num,
        max_den: args.max_den,
        seed: args.seed,
    };
    let bad = lemma_fuzz_run(&config)?;
    let elapsed = seconds(&args.output, start);
    let text = match args.output.format {
        Format::Json => {
            let summary = Summary {
                checked: config.samples,
                violations: bad.len() as u64,
                seconds: 0.0,
            };
            ReportDocument::new("lemma-fuzz", config.clone(), bad.clone(), summary).to_json()
        }
        Format::Csv => return Err(no_csv("lemma-fuzz")),
        Format::Human => {
            let mut s = format!(
                "lemma-fuzz samples={} max_num={} max_den={} seed={} violations={}\n",
                config.samples,
                config.max_num,
                config.max_den,
                config.seed,
                bad.len()
            );
            for c in &bad {
                let _ = writeln!(s, "  x={} y={}: {} < {}", c.x, c.y, c.lhs, c.rhs);
            }
            s
        }
    };
    emit(&args.output, &text)?;
    // kept off stdout so reruns with the same seed are byte-identical
    if !args.output.no_timing {
        eprintln!("elapsed: {elapsed:.3} s");
    }
    Ok(if bad.is_empty() { Exit::Pass } else { Exit::Violation })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralityConfig {
    pub ratio: String,
    pub n_max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralityRecord {
    pub n: u64,
    pub integral: bool,
    pub witness_prime: Option<u64>,
}

fn ratio_from_args(args: &IntegralityArgs) -> Result<FactorialRatio> {
    if let Some(text) = &args.ratio {
        return text.parse();
    }
    if args.num.contains(&0) || args.den.contains(&0) {
        return Err(Error::Domain("coefficients must be positive".into()));
    }
    let sum = |v: &[u64]| v.iter().try_fold(0u64, |acc, &c| acc.checked_add(c));
    if sum(&args.num) != sum(&args.den) {
        eprintln!("warning: numerator and denominator coefficient sums differ, so the ratio is not balanced");
    }
    let to_i64 = |c: u64| i64::try_from(c).map_err(|_| Error::Overflow(format!("coefficient {c}")));
    let mut terms = Vec::new();
    for &c in &args.num {
        terms.push((LinearForm::n_times(to_i64(c)?), 1));
    }
    for &c in &args.den {
        terms.push((LinearForm::n_times(to_i64(c)?), -1));
    }
    Ok(FactorialRatio::new(terms))
}

pub fn integrality(args: &IntegralityArgs) -> std::result::Result<Exit, Failure> {
    let start = Instant::now();
    let ratio = ratio_from_args(args)?;
    if args.n_max == 0 {
        return Err(Error::Domain("--n-max must be at least 1".into()).into());
    }
    let mut bound = 0;
    for n in 1..=args.n_max {
        bound = bound.max(ratio.evaluate(n)?.max_negative_argument());
    }
    let table = sieve(bound)?;
    let mut records = Vec::new();
    for n in 1..=args.n_max {
        let witness_prime = match is_integral_with(&ratio, n, &table)? {
            Integrality::Integral => None,
            Integrality::NotIntegral { witness } => Some(witness),
        };
        records.push(IntegralityRecord { n, integral: witness_prime.is_none(), witness_prime });
    }
    let failed = records.iter().filter(|r| !r.integral).count() as u64;
    let elapsed = seconds(&args.output, start);

    let text = match args.output.format {
        Format::Json => {
            let config = IntegralityConfig { ratio: ratio.to_string(), n_max: args.n_max };
            let summary = Summary { checked: args.n_max, violations: failed, seconds: elapsed };
            ReportDocument::new("integrality", config, records, summary).to_json()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &records {
                w.serialize(r).map_err(|e| Failure::Usage(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?)
                .expect("csv is utf-8")
        }
        Format::Human => {
            let mut s = format!("ratio: {ratio}\n");
            for r in &records {
                match r.witness_prime {
                    None => {
                        let _ = writeln!(s, "n={}: integral", r.n);
                    }
                    Some(p) => {
                        let _ = writeln!(s, "n={}: not integral (witness prime {p})", r.n);
                    }
                }
            }
            let _ = writeln!(s, "{} of {} values integral", args.n_max - failed, args.n_max);
            s
        }
    };
    emit(&args.output, &text)?;
    Ok(if failed == 0 { Exit::Pass } else { Exit::Violation })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheckConfig {
    pub suites: Vec<String>,
}

#[derive(Serialize)]
struct SuiteCsvRow<'a> {
    suite: &'a str,
    checked: u64,
    mismatches: usize,
    status: &'static str,
}

pub fn oracle_check(args: &OracleCheckArgs) -> std::result::Result<Exit, Failure> {
    let registry = builtin_suites();
    if args.list {
        let mut s = String::new();
        for suite in registry.iter() {
            let _ = writeln!(s, "{:<20} {}", suite.name(), suite.description());
        }
        emit(&args.output, &s)?;
        return Ok(Exit::Pass);
    }
    let selected = if args.suites.is_empty() {
        registry.iter().cloned().collect::<Vec<_>>()
    } else {
        args.suites.iter().map(|name| registry.get(name)).collect::<Result<Vec<_>>>()?
    };

    let start = Instant::now();
    let mut outcomes = Vec::new();
    for suite in &selected {
        outcomes.push(suite.run()?);
    }
    let elapsed = seconds(&args.output, start);
    let failed = outcomes.iter().filter(|o| !o.passed()).count() as u64;

    let text = match args.output.format {
        Format::Json => {
            let config = OracleCheckConfig {
                suites: outcomes.iter().map(|o| o.suite.clone()).collect(),
            };
            let summary = Summary {
                checked: outcomes.iter().map(|o| o.checked).sum(),
                violations: failed,
                seconds: elapsed,
            };
            ReportDocument::new("oracle-check", config, outcomes, summary).to_json()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for o in &outcomes {
                w.serialize(SuiteCsvRow {
                    suite: &o.suite,
                    checked: o.checked,
                    mismatches: o.mismatches.len(),
                    status: if o.passed() { "pass" } else { "fail" },
                })
                .map_err(|e| Failure::Usage(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?)
                .expect("csv is utf-8")
        }
        Format::Human => {
            let mut s = String::new();
            for o in &outcomes {
                let status = if o.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{status} {:<20} checked={}", o.suite, o.checked);
                for m in &o.mismatches {
                    let _ = writeln!(s, "    {m}");
                }
            }
            let _ = writeln!(s, "elapsed: {elapsed:.3} s");
            s
        }
    };
    emit(&args.output, &text)?;
    Ok(if failed == 0 { Exit::Pass } else { Exit::Violation })
}
