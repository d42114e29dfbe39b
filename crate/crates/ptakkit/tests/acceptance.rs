//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run alone with `cargo test -p ptakkit --test acceptance`.

use std::num::NonZeroUsize;
use std::process::{Command, ExitCode};
use std::thread;
use std::time::Instant;

use ptak_core::{
    delta_exact, f_norm, fictitious_play, helly_check, max_member, measure_lower_bound, min_ratio_nonneg, random,
    trace_family, verify_certificate, ElementSet, FamilySpec, FamilyVector, GameValueResult, HereditaryFamily,
    IntervalSystem, Rational,
};
use ptakkit::corpus::{random_families, random_systems};

const CORPUS_SEED: u64 = 2024;
const PAIRS_SEED: u64 = 5;
const SYSTEMS_SEED: u64 = 6;
const VECTOR_SEED: u64 = 4;

fn eps() -> Rational {
    Rational::new(1, 1_000_000)
}

// ---- brute-force oracles on bit masks --------------------------------------

fn masks(fam: &HereditaryFamily) -> Vec<u64> {
    fam.maximal().iter().map(|m| m.iter().fold(0u64, |acc, l| acc | 1 << l)).collect()
}

/// `{∅}` is stored with no maximal sets, so the empty set needs its own case.
fn is_member(maximal: &[u64], set: u64) -> bool {
    set == 0 || maximal.iter().any(|&m| set & !m == 0)
}

/// Every member, by scanning all `2^n` subsets.
fn members(fam: &HereditaryFamily) -> Vec<u64> {
    let max = masks(fam);
    (0..1u64 << fam.n()).filter(|&s| is_member(&max, s)).collect()
}

fn weight(w: &[Rational], set: u64) -> Rational {
    w.iter().enumerate().filter(|(i, _)| set >> i & 1 == 1).map(|(_, v)| v).sum()
}

fn to_set(n: usize, mask: u64) -> ElementSet {
    ElementSet::from_mask(n, mask)
}

fn ceil_usize(q: &Rational) -> usize {
    usize::try_from(q.ceil()).unwrap()
}

fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = thread::available_parallelism().map_or(1, NonZeroUsize::get).min(items.len().max(1));
    let chunk = items.len().div_ceil(threads).max(1);
    thread::scope(|s| {
        let hs: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<_>>())).collect();
        hs.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

/// First failure message of a batch, if any.
fn first_err(results: Vec<Result<(), String>>) -> Result<(), String> {
    results.into_iter().collect::<Result<Vec<()>, String>>().map(|_| ())
}

// ---- criteria --------------------------------------------------------------

fn c1_exact_cardinality() -> Result<String, String> {
    let cases: Vec<(usize, usize)> = (1..=12).flat_map(|n| (1..=n).map(move |k| (n, k))).collect();
    first_err(par_map(&cases, |&(n, k)| {
        let fam = FamilySpec::CardinalityBound { n, k }.realize().map_err(|e| e.to_string())?;
        let res = delta_exact(&fam);
        let want = Rational::new(k as i64, n as i64);
        if res.delta != want {
            return Err(format!("n={n} k={k}: delta {} != {want}", res.delta));
        }
        verify_certificate(&fam, &res).map_err(|r| format!("n={n} k={k}: {r}"))?;
        let b = fictitious_play(&fam, 1_000_000, &eps());
        if !b.contains(&want) || b.width() > eps() {
            return Err(format!("n={n} k={k}: bracket [{}, {}]", b.lower, b.upper));
        }
        Ok(())
    }))?;
    Ok(format!("{} (n, k) pairs exact; certificates and 1e-6 brackets agree", cases.len()))
}

fn c2_duality(corpus: &[HereditaryFamily]) -> Result<String, String> {
    first_err(par_map(corpus, |fam| {
        let res = delta_exact(fam);
        let max = masks(fam);
        let primal = max.iter().map(|&m| weight(res.primal.weights(), m)).max().unwrap_or_else(Rational::zero);
        let primal_ok = res.primal.weights().iter().all(|w| !w.is_negative())
            && res.primal.weights().iter().sum::<Rational>() == Rational::one();
        let mu = res.dual.weights();
        let dual_ok = mu.iter().all(|w| !w.is_negative()) && mu.iter().sum::<Rational>() == Rational::one();
        let dual = (0..fam.n())
            .map(|s| max.iter().zip(mu).filter(|(m, _)| *m >> s & 1 == 1).map(|(_, w)| w).sum::<Rational>())
            .min()
            .unwrap();
        // `{∅}` has no maximal set to put weight on.
        let dual_ok = dual_ok || (max.is_empty() && mu.is_empty());
        if !primal_ok || !dual_ok || primal != res.delta || dual != res.delta {
            return Err(format!("{:?}: primal {primal}, dual {dual}, delta {}", max, res.delta));
        }
        verify_certificate(fam, &res).map_err(|r| format!("{max:?}: {r}"))?;
        for forged in [&res.delta + &eps(), &res.delta - &eps()] {
            let tampered = GameValueResult { delta: forged.clone(), ..res.clone() };
            if verify_certificate(fam, &tampered).is_ok() {
                return Err(format!("{max:?}: tampered delta {forged} accepted"));
            }
        }
        Ok(())
    }))?;
    Ok(format!("{} families: primal = dual = delta, tampering by 1e-6 rejected", corpus.len()))
}

fn c3_ptak_bound(corpus: &[HereditaryFamily]) -> Result<String, String> {
    let optimal = par_map(corpus, |fam| {
        let delta = delta_exact(fam).delta;
        let bound = ceil_usize(&(&delta * &Rational::from(fam.n())));
        let search = max_member(fam, 50_000_000);
        if search.size < bound {
            return Err(format!("{:?}: max member {} < ceil(delta n) = {bound}", masks(fam), search.size));
        }
        let brute = members(fam).into_iter().map(u64::count_ones).max().unwrap_or(0) as usize;
        if search.optimal && search.size != brute {
            return Err(format!("{:?}: branch and bound {} vs brute force {brute}", masks(fam), search.size));
        }
        if !fam.membership(&search.best).unwrap() {
            return Err(format!("{:?}: reported set is not a member", masks(fam)));
        }
        Ok(search.optimal)
    });
    let optimal = optimal.into_iter().collect::<Result<Vec<bool>, String>>()?;
    let done = optimal.iter().filter(|&&o| o).count();
    Ok(format!("{} families meet ceil(delta n); {done} searches optimal and equal to brute force", corpus.len()))
}

fn c4_sandwich(corpus: &[HereditaryFamily]) -> Result<String, String> {
    let jobs: Vec<(usize, &HereditaryFamily)> = corpus.iter().enumerate().collect();
    let counts = par_map(&jobs, |&(i, fam)| {
        let delta = delta_exact(fam).delta;
        let ratio = min_ratio_nonneg(fam);
        if ratio != delta {
            return Err(format!("family {i}: min_ratio_nonneg {ratio} != delta {delta}"));
        }
        let mut rng = random::rng(VECTOR_SEED ^ (i as u64) << 16);
        let half = Rational::new(1, 2);
        let mut checked = 0usize;
        for v in 0..1000 {
            let nonneg = v % 2 == 0;
            let x = FamilyVector::new(random::random_vector(&mut rng, fam.n(), 20, nonneg));
            let norm = f_norm(fam, &x).map_err(|e| e.to_string())?;
            let l1 = x.l1();
            let lower = &delta * &l1;
            let fails = norm > l1
                || (delta.is_positive() && norm < &lower * &half)
                || (nonneg && norm < lower);
            if fails {
                return Err(format!("family {i}, x = {:?}: norm {norm}, l1 {l1}, delta {delta}", x.coords()));
            }
            checked += 1;
        }
        Ok(checked)
    });
    let total: usize = counts.into_iter().collect::<Result<Vec<_>, _>>()?.into_iter().sum();
    Ok(format!("{total} vectors over {} families, zero failures; min_ratio_nonneg = delta everywhere", corpus.len()))
}

fn c5_lossless() -> Result<String, String> {
    let fams = random_families(PAIRS_SEED, 200, 10, 40);
    let mut rng = random::rng(PAIRS_SEED);
    let pairs: Vec<(HereditaryFamily, Vec<Rational>)> = fams
        .into_iter()
        .map(|f| {
            let x = random::random_vector(&mut rng, f.n(), 30, false);
            (f, x)
        })
        .collect();
    first_err(par_map(&pairs, |(fam, x)| {
        let got = f_norm(fam, &FamilyVector::new(x.clone())).map_err(|e| e.to_string())?;
        let brute = members(fam).into_iter().map(|m| weight(x, m).abs()).max().unwrap();
        if got != brute {
            return Err(format!("{:?}, x = {x:?}: {got} vs brute force {brute}", masks(fam)));
        }
        Ok(())
    }))?;
    Ok(format!("{} (family, vector) pairs with n <= 10 match the sup over all members", pairs.len()))
}

/// The intersection of finite unions of closed intervals, if non-empty, has a
/// leftmost point, and that point is a left endpoint of some piece.
fn meets(sys: &IntervalSystem, subset: u64) -> bool {
    let chosen: Vec<usize> = (0..sys.n()).filter(|s| subset >> s & 1 == 1).collect();
    if chosen.is_empty() {
        return true;
    }
    chosen.iter().flat_map(|&s| sys.sets()[s].pieces().iter().map(|(a, _)| a)).any(|p| {
        chosen.iter().all(|&t| sys.sets()[t].pieces().iter().any(|(a, b)| a <= p && p <= b))
    })
}

fn c6_intervals() -> Result<String, String> {
    let systems = random_systems(SYSTEMS_SEED, 300, 10);
    let single = par_map(&systems, |(params, sys)| {
        let n = sys.n();
        let min = sys
            .sets()
            .iter()
            .map(|c| c.pieces().iter().map(|(a, b)| b - a).sum::<Rational>())
            .min()
            .unwrap();
        let fam = trace_family(sys);
        let delta = delta_exact(&fam).delta;
        if delta < min || measure_lower_bound(sys).bound != min {
            return Err(format!("seed {}: delta {delta} < min measure {min}", params.seed));
        }
        let max = masks(&fam);
        for a in 0..1u64 << n {
            if is_member(&max, a) != meets(sys, a) {
                return Err(format!("seed {}: membership of {:?} disagrees", params.seed, to_set(n, a).to_vec()));
            }
        }
        let single = sys.sets().iter().all(|c| c.pieces().len() == 1);
        if single {
            if helly_check(sys) != Ok(true) {
                return Err(format!("seed {}: helly_check failed", params.seed));
            }
            let pair_ok = |a: u64| (0..n).all(|s| (0..n).all(|t| a >> s & a >> t & 1 == 0 || meets(sys, 1 << s | 1 << t)));
            if let Some(a) = (0..1u64 << n).find(|&a| pair_ok(a) != meets(sys, a)) {
                return Err(format!("seed {}: Helly fails for {:?}", params.seed, to_set(n, a).to_vec()));
            }
        }
        Ok(single)
    });
    let single = single.into_iter().collect::<Result<Vec<bool>, String>>()?;
    Ok(format!(
        "{} systems: measure bound and membership exact; Helly holds on all {} single-interval systems",
        systems.len(),
        single.iter().filter(|&&s| s).count()
    ))
}

fn c7_structure(corpus: &[HereditaryFamily]) -> Result<String, String> {
    let small: Vec<&HereditaryFamily> = corpus.iter().filter(|f| f.n() <= 10).collect();
    first_err(par_map(&small, |fam| {
        let n = fam.n();
        let all = members(fam);
        // Ground sets are non-empty, so H = ∅ has no trace family; the
        // identity is trivial there ({∅} on both sides).
        if fam.trace(&to_set(n, 0)) != Err(ptak_core::Error::EmptyGround) {
            return Err(format!("{:?}: trace on the empty set was not rejected", masks(fam)));
        }
        for h in 1..1u64 << n {
            let trace = fam.trace(&to_set(n, h)).map_err(|e| e.to_string())?;
            let lifted: Vec<u64> = masks(&trace.family)
                .into_iter()
                .map(|m| trace.labels.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0, |a, (_, &l)| a | 1 << l))
                .collect();
            let mut cut: Vec<u64> = all.iter().map(|&f| f & h).collect();
            cut.sort_unstable();
            cut.dedup();
            let inside: Vec<u64> = all.iter().copied().filter(|&f| f & !h == 0).collect();
            let traced: Vec<u64> = (0..1u64 << n).filter(|&b| b & !h == 0 && is_member(&lifted, b)).collect();
            if cut != inside || traced != inside {
                return Err(format!("{:?}: trace identity fails for H = {:?}", masks(fam), to_set(n, h).to_vec()));
            }
        }
        Ok(())
    }))?;
    first_err(par_map(corpus, |fam| {
        for m in fam.maximal() {
            let up = fam.maximal_up_set(m).map_err(|e| e.to_string())?;
            if up.as_slice() != std::slice::from_ref(m) {
                return Err(format!("{:?}: up-set of {:?} has {} sets", masks(fam), m.to_vec(), up.len()));
            }
        }
        let full = fam.is_full_powerset();
        if full != (delta_exact(fam).delta == Rational::one()) || full != (members(fam).len() == 1 << fam.n()) {
            return Err(format!("{:?}: full powerset {full} disagrees with delta", masks(fam)));
        }
        Ok(())
    }))?;
    Ok(format!(
        "trace identity on every non-empty H for {} families with n <= 10; up-sets and full-powerset test hold on {}",
        small.len(),
        corpus.len()
    ))
}

fn c8_oracle(corpus: &[HereditaryFamily]) -> Result<String, String> {
    let iters = par_map(corpus, |fam| {
        let delta = delta_exact(fam).delta;
        let b = fictitious_play(fam, 1_000_000, &eps());
        if !b.contains(&delta) {
            return Err(format!("{:?}: [{}, {}] misses {delta}", masks(fam), b.lower, b.upper));
        }
        if fam.n() <= 10 && (b.width() > eps() || b.iterations > 1_000_000) {
            return Err(format!("{:?}: width {} after {} iterations", masks(fam), b.width().to_f64(), b.iterations));
        }
        Ok(b.iterations)
    });
    let iters = iters.into_iter().collect::<Result<Vec<u64>, String>>()?;
    Ok(format!(
        "{} brackets contain delta; width <= 1e-6 for n <= 10, at most {} iterations",
        corpus.len(),
        iters.iter().max().unwrap()
    ))
}

fn c9_determinism() -> Result<String, String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ptakkit"))
            .args(["suite", "--seed", "7"])
            .env_remove("PTAKKIT_SEED")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() || !b.status.success() {
        return Err(format!("exit status {} / {}: {}", a.status, b.status, String::from_utf8_lossy(&a.stderr)));
    }
    if a.stdout != b.stdout {
        return Err("reports differ".into());
    }
    Ok(format!("two runs of `suite --seed 7` produced identical {}-byte reports", a.stdout.len()))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Result<String, String> + 'a>);

fn main() -> ExitCode {
    let corpus = random_families(CORPUS_SEED, 500, 12, 40);
    let criteria: Vec<Criterion> = vec![
        ("exact delta k/n", Box::new(c1_exact_cardinality)),
        ("strong duality", Box::new(|| c2_duality(&corpus))),
        ("size bound", Box::new(|| c3_ptak_bound(&corpus))),
        ("norm sandwich", Box::new(|| c4_sandwich(&corpus))),
        ("lossless restriction", Box::new(c5_lossless)),
        ("interval measure bound", Box::new(c6_intervals)),
        ("structural identities", Box::new(|| c7_structure(&corpus))),
        ("oracle agreement", Box::new(|| c8_oracle(&corpus))),
        ("determinism", Box::new(c9_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
