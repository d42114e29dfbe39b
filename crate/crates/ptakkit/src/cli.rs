//! Command-line front end.
//!
//! Every command writes one JSON report (to `--out` or stdout). Exit status
//! is 0 on success, 1 when a verification fails, and 2 for usage errors and
//! malformed input.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ptak_core::{
    basis_vector_norms, best_response, check_equivalence, delta_exact, fictitious_play, greedy_member, helly_check,
    max_member, measure_lower_bound, min_ratio_signed_bruteforce, random, random_system, trace_family,
    verify_certificate, ConvexMean, ElementSet, FamilySpec, HereditaryFamily, Rational,
};
use serde_json::{json, Value};

use crate::formats::{self, CertificateFile, FamilyFile, FormatError, Provenance, SystemFile};
use crate::suite::{run_suite, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "ptakkit", version, about = "Exact game values, norms and searches for hereditary set families")]
pub struct Cli {
    /// Write the report (or generated file) here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also print a short human-readable summary to stderr.
    #[arg(long, global = true)]
    pub summary: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact game value with a primal/dual certificate.
    Delta {
        #[arg(long)]
        family: PathBuf,
        /// Also write the certificate as a standalone file.
        #[arg(long)]
        certificate_out: Option<PathBuf>,
    },
    /// Check a certificate against a family.
    CertificateVerify {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Family norm of a vector and its l1 sandwich.
    Norm {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        vector: PathBuf,
        /// Also minimise the signed ratio over this grid resolution.
        #[arg(long)]
        grid: Option<u32>,
    },
    /// Largest member by branch and bound, plus the greedy and size bounds.
    Search {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        node_budget: u64,
        /// Comma-separated label order for the greedy scan (default ascending).
        #[arg(long)]
        order: Option<String>,
    },
    /// Restrict a family to a subset of its ground set.
    Trace {
        #[arg(long)]
        family: PathBuf,
        /// Comma-separated labels of the subset (may be empty).
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
        /// Also write the traced family as a family file.
        #[arg(long)]
        family_out: Option<PathBuf>,
    },
    /// Trace family of an interval system and its measure bound.
    IntervalBound {
        #[arg(long)]
        system: PathBuf,
    },
    /// Generate a family or interval-system file.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        /// Set size bound for `cardinality`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, env = "PTAKKIT_SEED", default_value_t = 0)]
        seed: u64,
        /// Lower bound on each set's measure for `intervals`.
        #[arg(long, default_value = "0")]
        min_measure: Rational,
        /// Pieces per set for `intervals`.
        #[arg(long, default_value_t = 1)]
        pieces: usize,
        /// Upper bound on the number of maximal sets for `random`.
        #[arg(long, default_value_t = 40)]
        max_sets: usize,
    },
    /// Bracket the game value by fictitious play and compare with the exact value.
    Oracle {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        max_iters: u64,
        #[arg(long, default_value = "1e-6")]
        epsilon: Rational,
    },
    /// Run the invariant suite on seeded instances.
    Suite {
        #[arg(long, env = "PTAKKIT_SEED", default_value_t = 0)]
        seed: u64,
        /// Largest ground set (capped at 12).
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 60)]
        families: usize,
        #[arg(long, default_value_t = 30)]
        systems: usize,
        #[arg(long, default_value_t = 40)]
        vectors: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    CycleCliques,
    CycleIndependent,
    Cardinality,
    Complete,
    Random,
    Intervals,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Write { path: String, source: std::io::Error },
}

impl From<ptak_core::Error> for CliError {
    fn from(e: ptak_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// A finished command: the document to emit and whether verification passed.
pub struct Output {
    pub document: Value,
    pub ok: bool,
    pub summary: String,
}

fn digest(sha256: &str) -> Value {
    json!({ "sha256": sha256 })
}

fn set_json(s: &ElementSet) -> Value {
    json!(s.to_vec())
}

fn parse_labels(text: &str, what: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("--{what}: `{t}` is not a label"))))
        .collect()
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn certificate_json(fam: &HereditaryFamily) -> (Value, bool, ptak_core::GameValueResult) {
    let res = delta_exact(fam);
    let verdict = verify_certificate(fam, &res);
    let cert = serde_json::to_value(CertificateFile::from_result(&res)).expect("serialisable");
    (cert, verdict.is_ok(), res)
}

pub fn execute(command: &Command) -> Result<Output, CliError> {
    Ok(match command {
        Command::Delta { family, certificate_out } => {
            let fam = formats::read_family(family)?;
            let (cert, ok, res) = certificate_json(&fam.value);
            if let Some(path) = certificate_out {
                write_file(path, &formats::to_json_string(&cert))?;
            }
            Output {
                summary: format!("delta = {} ({} pivots), certificate {}", res.delta, res.pivots, verdict_word(ok)),
                document: json!({
                    "command": "delta",
                    "inputs": { "family": digest(&fam.sha256) },
                    "result": {
                        "n": fam.value.n(),
                        "maximal_sets": fam.value.maximal().len(),
                        "delta": res.delta.to_string(),
                        "pivots": res.pivots,
                        "certificate_verified": ok,
                    },
                    "certificate": cert,
                }),
                ok,
            }
        }
        Command::CertificateVerify { family, certificate } => {
            let fam = formats::read_family(family)?;
            let cert = formats::read_certificate(certificate)?;
            let res = cert.value.to_result(&fam.value, certificate)?;
            let verdict = verify_certificate(&fam.value, &res);
            let ok = verdict.is_ok();
            Output {
                summary: match &verdict {
                    Ok(()) => format!("certificate for delta = {} is valid", res.delta),
                    Err(r) => format!("certificate rejected: {r}"),
                },
                document: json!({
                    "command": "certificate-verify",
                    "inputs": { "family": digest(&fam.sha256), "certificate": digest(&cert.sha256) },
                    "result": {
                        "delta": res.delta.to_string(),
                        "valid": ok,
                        "rejection": verdict.as_ref().err().map(|r| r.code()),
                        "detail": verdict.err().map(|r| r.to_string()),
                    },
                }),
                ok,
            }
        }
        Command::Norm { family, vector, grid } => {
            let fam = formats::read_family(family)?;
            let x = formats::read_vector(vector)?;
            let report = check_equivalence(&fam.value, &x.value)?;
            let signed = grid.map(|g| min_ratio_signed_bruteforce(&fam.value, g)).transpose()?;
            let ok = report.ok();
            Output {
                summary: format!(
                    "norm = {}, l1 = {}, delta = {}, sandwich {}",
                    report.fnorm,
                    report.l1,
                    report.delta,
                    verdict_word(ok)
                ),
                document: json!({
                    "command": "norm",
                    "inputs": { "family": digest(&fam.sha256), "vector": digest(&x.sha256) },
                    "result": {
                        "norm": report.fnorm.to_string(),
                        "l1": report.l1.to_string(),
                        "delta": report.delta.to_string(),
                        "lower_ok": report.lower_ok,
                        "upper_ok": report.upper_ok,
                        "nonneg_ok": report.nonneg_ok,
                        "basis_norms": basis_vector_norms(&fam.value).iter().map(Rational::to_string).collect::<Vec<_>>(),
                        "signed_grid": signed.map(|s| json!({
                            "grid": grid,
                            "ratio": s.ratio.to_string(),
                            "witness": s.witness.iter().map(Rational::to_string).collect::<Vec<_>>(),
                        })),
                    },
                }),
                ok,
            }
        }
        Command::Search { family, node_budget, order } => {
            let fam = formats::read_family(family)?;
            let f = &fam.value;
            let n = f.n();
            let order = match order {
                Some(text) => parse_labels(text, "order")?,
                None => (0..n).collect(),
            };
            let greedy = greedy_member(f, &order)?;
            let search = max_member(f, *node_budget);
            let delta = delta_exact(f).delta;
            let bound = usize::try_from((&delta * &Rational::from(n)).ceil()).expect("bounded by n");
            let witness = best_response(f, ConvexMean::uniform(n).weights())?;
            // An unfinished search proves nothing about the maximum; the
            // uniform best response is then the only evidence.
            let ok = witness.len() >= bound && (!search.optimal || search.size >= bound);
            Output {
                summary: format!(
                    "largest member {} ({}), ceil(delta n) = {bound}",
                    search.size,
                    if search.optimal { "optimal" } else { "budget exhausted" }
                ),
                document: json!({
                    "command": "search",
                    "inputs": { "family": digest(&fam.sha256) },
                    "result": {
                        "max_member": {
                            "set": set_json(&search.best),
                            "size": search.size,
                            "optimal": search.optimal,
                            "nodes_explored": search.nodes_explored,
                            "node_budget": node_budget,
                        },
                        "greedy": { "order": order, "set": set_json(&greedy), "size": greedy.len() },
                        "ptak_bound": {
                            "delta": delta.to_string(),
                            "bound": bound,
                            "uniform_best_response": set_json(&witness),
                            "ok": ok,
                        },
                    },
                }),
                ok,
            }
        }
        Command::Trace { family, subset, family_out } => {
            let fam = formats::read_family(family)?;
            let labels = parse_labels(subset, "subset")?;
            let h = ElementSet::from_labels(fam.value.ground(), labels.iter().copied())?;
            let trace = fam.value.trace(&h)?;
            let file = FamilyFile::explicit(&trace.family, None);
            if let Some(path) = family_out {
                write_file(path, &formats::to_json_string(&file))?;
            }
            Output {
                summary: format!(
                    "trace on {} labels has {} maximal sets",
                    trace.labels.len(),
                    trace.family.maximal().len()
                ),
                document: json!({
                    "command": "trace",
                    "inputs": { "family": digest(&fam.sha256) },
                    "result": { "labels": trace.labels, "family": file },
                }),
                ok: true,
            }
        }
        Command::IntervalBound { system } => {
            let sys = formats::read_system(system)?;
            let mb = measure_lower_bound(&sys.value);
            let fam = trace_family(&sys.value);
            let helly = helly_check(&sys.value).ok();
            let ok = mb.ok && helly != Some(false);
            Output {
                summary: format!("delta = {} >= min measure {}: {}", mb.delta, mb.bound, verdict_word(ok)),
                document: json!({
                    "command": "interval-bound",
                    "inputs": { "system": digest(&sys.sha256) },
                    "result": {
                        "min_measure": mb.bound.to_string(),
                        "delta": mb.delta.to_string(),
                        "bound_ok": mb.ok,
                        "helly": helly,
                        "trace_family": FamilyFile::explicit(&fam, None),
                    },
                }),
                ok,
            }
        }
        Command::Gen { kind, n, k, seed, min_measure, pieces, max_sets } => gen(*kind, *n, *k, *seed, min_measure, *pieces, *max_sets)?,
        Command::Oracle { family, max_iters, epsilon } => {
            let fam = formats::read_family(family)?;
            if !epsilon.is_positive() {
                return Err(CliError::Usage("--epsilon must be positive".into()));
            }
            let bracket = fictitious_play(&fam.value, *max_iters, epsilon);
            let delta = delta_exact(&fam.value).delta;
            let ok = bracket.contains(&delta);
            Output {
                summary: format!(
                    "[{:.9}, {:.9}] after {} iterations, delta = {delta}",
                    bracket.lower.to_f64(),
                    bracket.upper.to_f64(),
                    bracket.iterations
                ),
                document: json!({
                    "command": "oracle",
                    "inputs": { "family": digest(&fam.sha256) },
                    "result": {
                        "lower": bracket.lower.to_string(),
                        "upper": bracket.upper.to_string(),
                        "width": bracket.width().to_string(),
                        "iterations": bracket.iterations,
                        "converged": bracket.converged,
                        "epsilon": epsilon.to_string(),
                        "delta": delta.to_string(),
                        "contains_delta": ok,
                    },
                }),
                ok,
            }
        }
        Command::Suite { seed, n, families, systems, vectors } => {
            if *n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let cfg = SuiteConfig { seed: *seed, max_n: *n, families: *families, systems: *systems, vectors: *vectors };
            let (document, ok) = run_suite(&cfg);
            let failed = document["checks"].as_array().map_or(0, |c| c.iter().filter(|c| c["failures"] != 0).count());
            Output { summary: format!("suite seed {seed}: {failed} failing checks"), document, ok }
        }
    })
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn gen(
    kind: GenKind,
    n: usize,
    k: Option<usize>,
    seed: u64,
    min_measure: &Rational,
    pieces: usize,
    max_sets: usize,
) -> Result<Output, CliError> {
    let mut params = BTreeMap::from([("n".to_string(), n.to_string())]);
    let spec = match kind {
        GenKind::CycleCliques | GenKind::CycleIndependent if n < 3 => {
            return Err(CliError::Usage(format!("a cycle needs at least 3 vertices, got --n {n}")));
        }
        GenKind::CycleCliques => Some(FamilySpec::GraphCliques { n, edges: FamilySpec::cycle_edges(n) }),
        GenKind::CycleIndependent => Some(FamilySpec::GraphIndependent { n, edges: FamilySpec::cycle_edges(n) }),
        GenKind::Complete => Some(FamilySpec::GraphCliques { n, edges: FamilySpec::complete_edges(n) }),
        GenKind::Cardinality => {
            let k = k.ok_or_else(|| CliError::Usage("--kind cardinality needs --k".into()))?;
            params.insert("k".into(), k.to_string());
            Some(FamilySpec::CardinalityBound { n, k })
        }
        GenKind::Random | GenKind::Intervals => None,
    };
    let name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    let seeded = |params| Provenance { generator: name.clone(), params, seed: Some(seed), rng: Some(random::RNG_ALGORITHM.into()) };
    let (document, summary) = match kind {
        GenKind::Intervals => {
            params.insert("pieces".into(), pieces.to_string());
            params.insert("min_measure".into(), min_measure.to_string());
            let sys = random_system(seed, n, pieces, min_measure)?;
            let file = SystemFile::from_system(&sys, Some(seeded(params)));
            (serde_json::to_value(file).expect("serialisable"), format!("interval system with {n} sets"))
        }
        GenKind::Random => {
            if n == 0 || max_sets == 0 {
                return Err(CliError::Usage("--n and --max-sets must be at least 1".into()));
            }
            params.insert("max_sets".into(), max_sets.to_string());
            let fam = random::random_family(&mut random::rng(seed), n, max_sets);
            let summary = format!("family with {} maximal sets", fam.maximal().len());
            (serde_json::to_value(FamilyFile::explicit(&fam, Some(seeded(params)))).expect("serialisable"), summary)
        }
        _ => {
            let fam = spec.expect("set above").realize()?;
            let prov = Provenance { generator: name.clone(), params, seed: None, rng: None };
            let summary = format!("family with {} maximal sets", fam.maximal().len());
            (serde_json::to_value(FamilyFile::explicit(&fam, Some(prov))).expect("serialisable"), summary)
        }
    };
    Ok(Output { document, ok: true, summary })
}

/// Parses `args`, runs the command and writes its output. Returns the exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let output = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = formats::to_json_string(&output.document);
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_file(path, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if cli.summary {
        eprintln!("{}", output.summary);
    }
    ExitCode::from(if output.ok { 0 } else { 1 })
}
