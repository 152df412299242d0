//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::thread;
use std::time::{Duration, Instant};

use girthbound::driver::{self, InstantClock};
use girthbound::random;
use girthbound_core::bounds::{
    balanced_approx, balanced_approx_cube, cubic_max_e, discriminant_d, eval_cubic, eval_cubic_rational, eval_reiman,
    girth6_coarse_bound, girth8_coarse_bound, growth_delta, unbalanced_cap,
};
use girthbound_core::constructions::{grid_incidence, pg2_incidence, unbalanced6, unbalanced8, wq_incidence};
use girthbound_core::meanineq::{check, weak_hypothesis_violation};
use girthbound_core::{BipartiteGraph, GirthTarget, NonnegMatrix, SearchLimits};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

const SEED: u64 = 0x6972_7468;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn small_case_values() -> Outcome {
    let mut cases: Vec<(usize, usize, usize)> = (3..=8).map(|v| (v, 3, v + 2)).collect();
    cases.extend([(4, 4, 8), (5, 4, 9), (5, 5, 10), (6, 5, 12), (7, 5, 13)]);
    let mut slowest = Duration::ZERO;
    for (v, w, expected) in cases {
        let clock = InstantClock::new(Some(Duration::from_secs(30)));
        let cert = driver::search(v, w, GirthTarget::Eight, SearchLimits::default(), driver::default_threads(), &clock)
            .map_err(|e| format!("({v}, {w}): {e}"))?;
        ensure(cert.exhaustive, || format!("({v}, {w}) not exhaustive within 30 s"))?;
        ensure(cert.e_max == expected, || format!("e_max({v}, {w}) = {}, expected {expected}", cert.e_max))?;
        let g = &cert.witness;
        ensure(g.size() == expected && g.girth().at_least(8), || format!("({v}, {w}) witness fails re-verification"))?;
        slowest = slowest.max(cert.elapsed);
    }
    Ok(format!("11 exhaustive searches, slowest {slowest:.2?}"))
}

fn equality_families() -> Outcome {
    let start = Instant::now();
    for (q, counts) in [(2, (15, 15, 45)), (3, (40, 40, 160))] {
        let g = wq_incidence(q).map_err(|e| e.to_string())?;
        ensure((g.v(), g.w(), g.size()) == counts, || format!("W({q}) has counts {:?}", (g.v(), g.w(), g.size())))?;
        ensure(g.girth().girth == Some(8), || format!("W({q}) girth {:?}", g.girth().girth))?;
        ensure(g.verify_weak_gq(), || format!("W({q}) is not a weak generalized quadrangle"))?;
        let p = eval_cubic(g.v() as u64, g.w() as u64, g.size() as u64);
        ensure(p.is_zero(), || format!("W({q}): P = {p}"))?;
    }
    for q in [2, 3, 5] {
        let g = pg2_incidence(q).map_err(|e| e.to_string())?;
        ensure(g.girth().girth == Some(6), || format!("PG(2, {q}) girth {:?}", g.girth().girth))?;
        let (lo, hi) = (g.v().min(g.w()) as u64, g.v().max(g.w()) as u64);
        let o = eval_reiman(lo, hi, g.size() as u64);
        ensure(o.is_zero(), || format!("PG(2, {q}): O = {o}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:.2?}"))?;
    Ok(format!("W(2), W(3), PG(2,2), PG(2,3), PG(2,5) in {elapsed:.2?}"))
}

/// Adds the pairs of `(v, w)` in random order whenever the girth stays at least `target`.
fn random_maximal<R: Rng>(rng: &mut R, v: usize, w: usize, target: usize) -> BipartiteGraph {
    let mut pairs: Vec<(usize, usize)> = (0..v).flat_map(|i| (0..w).map(move |j| (i, j))).collect();
    pairs.shuffle(rng);
    let mut edges = Vec::new();
    for pair in pairs {
        edges.push(pair);
        let g = BipartiteGraph::from_edges(v, w, edges.iter().copied()).unwrap();
        if !g.girth().at_least(target) {
            edges.pop();
        }
    }
    BipartiteGraph::from_edges(v, w, edges).unwrap()
}

fn bounds_on_random_graphs() -> Outcome {
    let mut rng = random::rng(SEED);
    let mut graphs = Vec::new();
    for k in 0..1000 {
        let (v, w) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        // a third each: uniform density, maximal girth >= 6, maximal girth >= 8
        graphs.push(match k % 3 {
            0 => {
                let p = rng.gen_range(0.0..=1.0);
                random::bipartite(&mut rng, v, w, p)
            }
            1 => random_maximal(&mut rng, v, w, 6),
            _ => random_maximal(&mut rng, v, w, 8),
        });
    }
    let (mut n8, mut n6, mut tight8, mut tight6) = (0, 0, 0, 0);
    for g in &graphs {
        let (v, w, e) = (g.v() as u64, g.w() as u64, g.size() as u64);
        let report = g.girth();
        if report.at_least(8) {
            n8 += 1;
            let p = eval_cubic(v, w, e);
            ensure(!p.is_positive(), || format!("P({v}, {w}, {e}) = {p} > 0 at girth >= 8"))?;
            tight8 += usize::from(e == cubic_max_e(v, w));
        }
        if report.at_least(6) {
            n6 += 1;
            let o = eval_reiman(v.min(w), v.max(w), e);
            ensure(!o.is_positive(), || format!("O({v}, {w}, {e}) = {o} > 0 at girth >= 6"))?;
            tight6 += usize::from(o.is_zero());
        }
    }
    Ok(format!("{n8} graphs with girth >= 8 ({tight8} at the cubic maximum), {n6} with girth >= 6 ({tight6} with O = 0), 0 violations"))
}

fn mean_inequality() -> Outcome {
    let mut rng = random::rng(SEED + 1);
    let mut checked = 0;
    for v in 1..=6 {
        for w in 1..=6 {
            for _ in 0..500 {
                let m = random::matrix(&mut rng, v, w, 8);
                let (rho, gamma) = random::admissible_parameters(&mut rng, &m);
                let verdict = check(&m, &rho, &gamma).map_err(|e| e.to_string())?;
                ensure(verdict.hypotheses_hold && verdict.satisfied, || {
                    format!("{v}x{w} matrix violates at rho = {rho}, gamma = {gamma}: phi {} < {}", verdict.phi, verdict.rhs)
                })?;
                checked += 1;
            }
        }
    }
    let counterexamples: [(&[&[i64]], i64, i64, BigRational, BigRational); 2] = [
        (&[&[2, 5], &[4, 0]], 4, 5, ratio(6, 1), ratio(33, 4)),
        (&[&[0, 1, 1], &[1, 0, 0], &[1, 0, 0]], 1, 1, ratio(0, 1), ratio(4, 9)),
    ];
    for (rows, rho, gamma, phi, rhs) in counterexamples {
        let m = NonnegMatrix::from_integers(rows).unwrap();
        let (rho, gamma) = (ratio(rho, 1), ratio(gamma, 1));
        let weak = m.row_sums().iter().all(|r| *r >= rho) && m.col_sums().iter().all(|c| *c >= gamma);
        let verdict = check(&m, &rho, &gamma).unwrap();
        ensure(weak && !verdict.hypotheses_hold && !verdict.satisfied, || {
            format!("{rows:?} at ({rho}, {gamma}) is not a counterexample under weakened hypotheses")
        })?;
        ensure(verdict.phi == phi && verdict.rhs == rhs, || format!("{rows:?}: phi {}, rhs {}", verdict.phi, verdict.rhs))?;
        ensure(weak_hypothesis_violation(&m, 4).is_some(), || format!("{rows:?}: grid search found no violation"))?;
    }
    Ok(format!("{checked} random matrices satisfied; both counterexamples violate (phi 6 < 33/4, 0 < 4/9)"))
}

/// `d`-regular bipartite graph on `n + n` vertices with shuffled labels.
fn random_regular<R: Rng>(rng: &mut R, n: usize, d: usize) -> BipartiteGraph {
    let mut pv: Vec<usize> = (0..n).collect();
    let mut pw: Vec<usize> = (0..n).collect();
    pv.shuffle(rng);
    pw.shuffle(rng);
    let edges = (0..n).flat_map(|i| (0..d).map(move |s| (i, (i + s) % n)));
    BipartiteGraph::from_edges(n, n, edges.map(|(i, j)| (pv[i], pw[j]))).unwrap()
}

fn paths_of_length_three() -> Outcome {
    let mut rng = random::rng(SEED + 2);
    let mut graphs: Vec<BipartiteGraph> = Vec::new();
    for k in 0..1000 {
        graphs.push(match k % 10 {
            0 => {
                let n = rng.gen_range(2..=12);
                let d = rng.gen_range(2..=n);
                random_regular(&mut rng, n, d)
            }
            1 => grid_incidence(rng.gen_range(1..=3)),
            2 => {
                let (v, w) = (rng.gen_range(2..=12), rng.gen_range(2..=12));
                let p = rng.gen_range(0.6..=1.0);
                random::bipartite(&mut rng, v, w, p)
            }
            _ => random::bipartite_any(&mut rng, 12),
        });
    }
    let one = ratio(1, 1);
    let (mut eligible, mut equal, mut biregular) = (0, 0, 0);
    for g in &graphs {
        let (formula, enumerated) = (g.count_paths3(), g.count_paths3_enumerate());
        ensure(formula == enumerated, || format!("{g:?}: formula {formula} != enumeration {enumerated}"))?;
        if g.min_degree().is_some_and(|d| d >= 2) {
            eligible += 1;
            let m = NonnegMatrix::incidence(g).unwrap();
            let verdict = check(&m, &one, &one).unwrap();
            let paths = BigRational::from_integer(BigInt::from(formula));
            ensure(verdict.phi == paths, || "incidence phi differs from the path count".to_owned())?;
            ensure(paths >= verdict.rhs, || format!("{g:?}: {paths} paths below {}", verdict.rhs))?;
            let is_equal = paths == verdict.rhs;
            ensure(is_equal == g.is_biregular(), || format!("{g:?}: equality {is_equal}, biregular {}", g.is_biregular()))?;
            equal += usize::from(is_equal);
            biregular += usize::from(g.is_biregular());
        }
    }
    Ok(format!("1000 graphs enumerated; {eligible} with min degree >= 2, equality on {equal} = {biregular} biregular"))
}

fn algebraic_identities() -> Outcome {
    let start = Instant::now();
    let results: Vec<Result<(), String>> = thread::scope(|s| {
        let handles: Vec<_> = (1..=60u64)
            .map(|v| {
                s.spawn(move || {
                    for w in 1..=60u64 {
                        for e in 0..=v * w {
                            let before = eval_cubic(v, w, e);
                            let after = eval_cubic(v + 1, w, e + 1);
                            let delta = &after - &before;
                            ensure(delta == growth_delta(v, w, e), || format!("growth_delta({v}, {w}, {e})"))?;
                            ensure(before.is_positive() || !after.is_positive(), || {
                                format!("growth lemma fails at ({v}, {w}, {e})")
                            })?;
                        }
                    }
                    Ok(())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    results.into_iter().collect::<Result<(), String>>()?;

    let mut pairs = 0;
    for s in 2..=100i64 {
        for p in (s - 1)..=(s * s / 4) {
            let d = discriminant_d(&BigInt::from(s), &BigInt::from(p));
            ensure(d.is_positive(), || format!("D({s}, {p}) = {d}"))?;
            pairs += 1;
        }
    }

    // largest e with O(a, b, e) <= 0, one orientation only
    let root = |a: u64, b: u64| {
        let mut e = 0;
        while !eval_reiman(a, b, e + 1).is_positive() {
            e += 1;
        }
        e
    };
    for v in 1..=50u64 {
        for w in v..=50 {
            ensure(root(v, w) <= root(w, v), || format!("orientation lemma fails at ({v}, {w})"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:.2?}"))?;
    Ok(format!("growth grid v, w <= 60, {pairs} discriminant pairs, orientation v <= w <= 50 in {elapsed:.2?}"))
}

fn balanced_sandwich() -> Outcome {
    const TOLERANCE: f64 = 1e-9;
    let shift = ratio(16, 81);
    let mut rng = random::rng(SEED + 3);
    let mut samples: Vec<u64> = vec![1, 2, 1_000_000];
    while samples.len() < 200 {
        samples.push(10f64.powf(rng.gen_range(0.0..=6.0)).round() as u64);
    }
    let mut worst = 0f64;
    for &v in &samples {
        let approx = balanced_approx(v);
        let e = BigRational::from_f64(approx).ok_or("approximation is not finite")?;
        let lower = e.clone() - &shift;
        // scale: the sum of absolute values of the terms of P at e
        let vr = BigRational::from_integer(v.into());
        let scale = &e * &e * &e + ratio(2, 1) * &vr * &e * &e + ratio(2, 1) * &vr * &vr * &e + &vr * &vr * &vr * &vr;
        let at = eval_cubic_rational(v, v, &e) / &scale;
        let below = eval_cubic_rational(v, v, &lower) / &scale;
        let (at, below) = (to_f64(&at), to_f64(&below));
        worst = worst.max(-at).max(below);
        ensure(at >= -TOLERANCE, || format!("P(v, v, approx) < 0 at v = {v} (relative {at:e})"))?;
        ensure(below <= TOLERANCE, || format!("P(v, v, approx - 16/81) > 0 at v = {v} (relative {below:e})"))?;
    }
    for k in 1..=100u64 {
        let e = balanced_approx_cube(k);
        let v = k * k * k;
        ensure(!eval_cubic_rational(v, v, &e).is_negative(), || format!("exact P(v, v, approx) < 0 at k = {k}"))?;
        ensure(!eval_cubic_rational(v, v, &(&e - &shift)).is_positive(), || {
            format!("exact P(v, v, approx - 16/81) > 0 at k = {k}")
        })?;
    }
    Ok(format!("200 float samples (worst relative excursion {:e}), exact at k^3 for k <= 100", worst.max(0.0)))
}

fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

fn unbalanced_constructions() -> Outcome {
    let g8 = unbalanced8(4, 10).map_err(|e| e.to_string())?;
    let cap = unbalanced_cap(10, 4).ok_or("cap(10, 4) undefined")?;
    let coarse8 = girth8_coarse_bound(4, 10);
    ensure(g8.size() == 14 && cap == 14 && coarse8 == 14, || {
        format!("unbalanced8(4, 10): e = {}, cap = {cap}, coarse = {coarse8}", g8.size())
    })?;
    ensure(g8.girth().girth == Some(8), || format!("unbalanced8(4, 10) girth {:?}", g8.girth().girth))?;
    let g6 = unbalanced6(4, 10).map_err(|e| e.to_string())?;
    let coarse6 = girth6_coarse_bound(4, 10);
    ensure(g6.size() == 16 && coarse6 == 16, || format!("unbalanced6(4, 10): e = {}, coarse = {coarse6}", g6.size()))?;
    ensure(g6.girth().girth == Some(6), || format!("unbalanced6(4, 10) girth {:?}", g6.girth().girth))?;
    Ok("unbalanced8(4, 10): 14 edges, girth 8; unbalanced6(4, 10): 16 edges, girth 6".to_owned())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("small-case extremal values", small_case_values),
        ("equality families", equality_families),
        ("size bounds on random graphs", bounds_on_random_graphs),
        ("mean inequality", mean_inequality),
        ("paths of length 3", paths_of_length_three),
        ("algebraic identities", algebraic_identities),
        ("balanced approximation sandwich", balanced_sandwich),
        ("optimal unbalanced constructions", unbalanced_constructions),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
