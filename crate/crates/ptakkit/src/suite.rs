//! The invariant suite behind `ptakkit suite`.
//!
//! Every check is exact. Instances are generated from one seed and may be
//! evaluated on several threads, but results are aggregated in instance order
//! so the report depends on the configuration alone.

use std::num::NonZeroUsize;
use std::thread;

use ptak_core::{
    best_response, check_equivalence_with, delta_exact, fictitious_play, helly_check, max_member,
    measure_lower_bound, min_ratio_nonneg, random, trace_family, verify_certificate, ConvexMean, ElementSet,
    FamilyVector, GameValueResult, HereditaryFamily, IntervalSystem, Rational,
};
use rand::Rng;
use serde_json::{json, Value};

use crate::corpus::{random_families, random_systems};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Largest ground set (and largest interval system).
    pub max_n: usize,
    pub families: usize,
    pub systems: usize,
    /// Random vectors per family for the norm checks.
    pub vectors: usize,
}

/// Fictitious-play settings used by the oracle check.
pub const ORACLE_MAX_ITERS: u64 = 1_000_000;

pub fn oracle_epsilon() -> Rational {
    Rational::new(1, 1_000_000)
}

/// Ground sets up to this size get the exhaustive (`2^n`) checks.
pub const EXHAUSTIVE_MAX_N: usize = 12;

type Outcome = (&'static str, Option<String>);

struct Instance {
    summary: Value,
    checks: Vec<Outcome>,
}

fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> Option<String> {
    cond.then(msg)
}

fn members_by_mask(fam: &HereditaryFamily) -> Vec<u64> {
    let n = fam.n();
    let mut member = vec![false; 1 << n];
    // `{∅}` has no maximal sets.
    member[0] = true;
    for f in fam.maximal() {
        let m = f.mask();
        let mut sub = m;
        loop {
            member[sub as usize] = true;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & m;
        }
    }
    (0..1u64 << n).filter(|&m| member[m as usize]).collect()
}

fn subset_sum(x: &[Rational], mask: u64) -> Rational {
    x.iter().enumerate().filter(|(s, _)| mask >> s & 1 == 1).map(|(_, v)| v).sum()
}

fn family_instance(fam: &HereditaryFamily, vector_seed: u64, vectors: usize) -> Instance {
    let n = fam.n();
    let res = delta_exact(fam);
    let delta = res.delta.clone();
    let mut checks: Vec<Outcome> = Vec::new();

    checks.push(("certificate", verify_certificate(fam, &res).err().map(|r| r.code().to_string())));

    let tiny = Rational::new(1, 1_000_000);
    let tamper_accepted = [&delta + &tiny, &delta - &tiny].into_iter().find(|d| {
        let forged = GameValueResult { delta: d.clone(), ..res.clone() };
        verify_certificate(fam, &forged).is_ok()
    });
    checks.push(("tamper_rejected", tamper_accepted.map(|d| format!("forged delta {d} accepted"))));

    let full = fam.is_full_powerset();
    let uncovered = fam.uncovered().next().is_some();
    checks.push((
        "value_range",
        fail_if(full != (delta == Rational::one()) || uncovered != delta.is_zero(), || {
            format!("delta {delta}, full powerset {full}, uncovered label {uncovered}")
        }),
    ));

    let ratio = min_ratio_nonneg(fam);
    checks.push(("min_ratio_nonneg", fail_if(ratio != delta, || format!("min ratio {ratio} vs delta {delta}"))));

    let bracket = fictitious_play(fam, ORACLE_MAX_ITERS, &oracle_epsilon());
    checks.push((
        "oracle_bracket",
        fail_if(!bracket.contains(&delta) || !bracket.converged, || {
            format!("[{}, {}] after {} iterations, delta {delta}", bracket.lower, bracket.upper, bracket.iterations)
        }),
    ));

    let search = max_member(fam, u64::MAX);
    let largest = fam.max_member_size();
    checks.push((
        "max_member",
        fail_if(!search.optimal || search.size != largest || !fam.membership(&search.best).unwrap_or(false), || {
            format!("search found {} (optimal {}), largest maximal set has {largest}", search.size, search.optimal)
        }),
    ));

    let bound = usize::try_from((&delta * &Rational::from(n)).ceil()).expect("bounded by n");
    let witness = best_response(fam, ConvexMean::uniform(n).weights()).expect("dimension matches");
    checks.push((
        "ptak_bound",
        fail_if(search.size < bound || witness.len() < bound, || {
            format!("bound {bound}, max member {}, uniform best response {}", search.size, witness.len())
        }),
    ));

    let up_set_fail = fam.maximal().iter().find_map(|m| match fam.maximal_up_set(m) {
        Ok(up) if up.len() == 1 && &up[0] == m => None,
        Ok(up) => Some(format!("{:?} has {} supersets", m.to_vec(), up.len())),
        Err(e) => Some(e.to_string()),
    });
    checks.push(("maximal_up_set", up_set_fail));

    let mut rng = random::rng(vector_seed);
    let mut sandwich_fail = None;
    let mut lossless_fail = None;
    let members = (n <= EXHAUSTIVE_MAX_N).then(|| members_by_mask(fam));
    for i in 0..vectors {
        let nonneg = i % 2 == 0;
        let x = FamilyVector::new(random::random_vector(&mut rng, n, 9, nonneg));
        if x.is_zero() {
            continue;
        }
        let report = check_equivalence_with(fam, &x, delta.clone()).expect("dimension matches");
        if sandwich_fail.is_none() && !report.ok() {
            sandwich_fail = Some(format!("x = {:?}: norm {}, l1 {}", x.coords(), report.fnorm, report.l1));
        }
        if let (Some(members), None) = (&members, &lossless_fail) {
            let brute = members.iter().map(|&m| subset_sum(x.coords(), m).abs()).max().unwrap_or_else(Rational::zero);
            if brute != report.fnorm {
                lossless_fail = Some(format!("x = {:?}: norm {}, brute force {brute}", x.coords(), report.fnorm));
            }
        }
    }
    checks.push(("norm_sandwich", sandwich_fail));
    checks.push(("lossless_restriction", lossless_fail));

    if let Some(members) = &members {
        checks.push(("trace_identity", trace_identity(fam, members, rng.gen())));
    }

    let summary = json!({
        "n": n,
        "maximal_sets": fam.maximal().len(),
        "delta": delta.to_string(),
        "max_member": search.size,
        "oracle": { "lower": bracket.lower.to_string(), "upper": bracket.upper.to_string(), "iterations": bracket.iterations },
    });
    Instance { summary, checks }
}

/// Compares the library trace on a few non-empty subsets `H` with
/// `{F ∈ members : F ⊆ H}` computed by masks. `H = ∅` must be rejected,
/// since ground sets are non-empty.
fn trace_identity(fam: &HereditaryFamily, members: &[u64], seed: u64) -> Option<String> {
    let n = fam.n();
    let mut rng = random::rng(seed);
    if fam.trace(&ElementSet::from_mask(n, 0)).is_ok() {
        return Some("trace on the empty set was accepted".into());
    }
    let mut subsets: Vec<u64> = vec![(1u64 << n) - 1];
    subsets.extend((0..6).map(|_| rng.gen_range(1..1u64 << n)));
    for h in subsets {
        let hset = ElementSet::from_mask(n, h);
        let trace = match fam.trace(&hset) {
            Ok(t) => t,
            Err(e) => return Some(e.to_string()),
        };
        let expected: Vec<u64> = members.iter().copied().filter(|&m| m & !h == 0).collect();
        let mut got: Vec<u64> = members_by_mask(&trace.family)
            .into_iter()
            .map(|m| trace.labels.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0, |acc, (_, &l)| acc | 1 << l))
            .collect();
        got.sort_unstable();
        if got != expected {
            return Some(format!("H = {:?}", hset.to_vec()));
        }
    }
    None
}

fn system_instance(sys: &IntervalSystem) -> Instance {
    let n = sys.n();
    let mut checks: Vec<Outcome> = Vec::new();
    let mb = measure_lower_bound(sys);
    checks.push(("measure_bound", fail_if(!mb.ok, || format!("delta {} below min measure {}", mb.delta, mb.bound))));

    let fam = trace_family(sys);
    let disagree = (0..1u64 << n).find(|&mask| {
        let set = ElementSet::from_mask(n, mask);
        let direct = !sys.common_part(set.iter()).is_empty();
        fam.membership(&set).ok() != Some(direct)
    });
    checks.push((
        "interval_membership",
        disagree.map(|m| format!("subset {:?}", ElementSet::from_mask(n, m).to_vec())),
    ));

    let single = sys.sets().iter().all(|c| c.pieces().len() == 1);
    if single {
        let helly = helly_check(sys);
        checks.push(("helly", fail_if(helly != Ok(true), || format!("{helly:?}"))));
    }
    let summary = json!({
        "n": n,
        "single_interval": single,
        "min_measure": mb.bound.to_string(),
        "delta": mb.delta.to_string(),
    });
    Instance { summary, checks }
}

/// Applies `f` to every item on up to `available_parallelism` threads and
/// returns results in input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = thread::available_parallelism().map_or(1, NonZeroUsize::get).min(items.len().max(1));
    let chunk = items.len().div_ceil(threads).max(1);
    thread::scope(|scope| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| scope.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("suite worker panicked")).collect()
    })
}

#[derive(Default)]
struct Tally {
    instances: usize,
    failures: usize,
    first_failure: Option<String>,
}

/// Runs the suite. Returns the JSON report and whether every check passed.
pub fn run_suite(cfg: &SuiteConfig) -> (Value, bool) {
    let families = random_families(cfg.seed, cfg.families, cfg.max_n.min(EXHAUSTIVE_MAX_N), 40);
    let mut seeds = random::rng(cfg.seed ^ 0x5eed);
    let fam_jobs: Vec<(HereditaryFamily, u64)> = families.into_iter().map(|f| (f, seeds.gen())).collect();
    let systems = random_systems(seeds.gen(), cfg.systems, cfg.max_n.min(EXHAUSTIVE_MAX_N));

    let fam_results = par_map(&fam_jobs, |(fam, s)| family_instance(fam, *s, cfg.vectors));
    let sys_results = par_map(&systems, |(_, sys)| system_instance(sys));

    let mut names: Vec<&'static str> = Vec::new();
    let mut tallies: Vec<Tally> = Vec::new();
    let mut record = |kind: &str, index: usize, checks: &[Outcome]| {
        for (name, failure) in checks {
            let pos = names.iter().position(|n| n == name).unwrap_or_else(|| {
                names.push(name);
                tallies.push(Tally::default());
                names.len() - 1
            });
            let t = &mut tallies[pos];
            t.instances += 1;
            if let Some(msg) = failure {
                t.failures += 1;
                t.first_failure.get_or_insert_with(|| format!("{kind} {index}: {msg}"));
            }
        }
    };
    for (i, r) in fam_results.iter().enumerate() {
        record("family", i, &r.checks);
    }
    for (i, r) in sys_results.iter().enumerate() {
        record("system", i, &r.checks);
    }

    let ok = tallies.iter().all(|t| t.failures == 0);
    let checks: Vec<Value> = names
        .iter()
        .zip(&tallies)
        .map(|(name, t)| {
            json!({ "name": name, "instances": t.instances, "failures": t.failures, "first_failure": t.first_failure })
        })
        .collect();
    let report = json!({
        "command": "suite",
        "rng": random::RNG_ALGORITHM,
        "seed": cfg.seed,
        "params": { "max_n": cfg.max_n, "families": cfg.families, "systems": cfg.systems, "vectors": cfg.vectors },
        "checks": checks,
        "families": fam_results.into_iter().map(|r| r.summary).collect::<Vec<_>>(),
        "systems": systems.iter().zip(sys_results).map(|((p, _), r)| {
            let mut s = r.summary;
            s["seed"] = json!(p.seed);
            s["pieces"] = json!(p.pieces);
            s
        }).collect::<Vec<_>>(),
        "ok": ok,
    });
    (report, ok)
}
