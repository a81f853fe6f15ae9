//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines always show.

mod common;

use std::time::{Duration, Instant};

use common::*;
use itertools::Itertools;
use liking::construction::{design_to_digraph, digraph_to_design};
use liking::design::{design_from_difference_set, fixtures, verify_design, Design, DesignParams};
use liking::digraph::complete_digraph;
use liking::liking::{
    all_violations, classify_21, counting_identity_check, is_two_way_liking, solve_degree_equation, Classification21,
    Direction, LikingParams,
};
use liking::matching::{sdr, SdrOutcome, SetFamily};
use liking::search::{enumerate_liking, SearchConfig, SearchMode, SearchSpec, DEFAULT_NODE_BUDGET};
use liking::Digraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn p(t: usize, lambda: usize) -> LikingParams {
    LikingParams::new(t, lambda).unwrap()
}

fn fano_pipeline() -> Outcome {
    let design = design_from_difference_set(7, &[1, 2, 4]).map_err(|e| e.to_string())?;
    let params = verify_design(&design).map_err(|e| e.to_string())?;
    ensure!(params == DesignParams { b: 7, v: 7, r: 3, k: 3, lambda: 1 }, "parameters {params}");
    let c = design_to_digraph(&design).map_err(|e| e.to_string())?;
    ensure!(c.digraph.is_diregular() == Some(3), "not 3-diregular");
    ensure!(is_two_way_liking(&c.digraph, p(2, 1)).unwrap().holds(), "not two-way (2,1)-liking");
    let class = classify_21(&c.digraph).map_err(|e| e.to_string())?;
    ensure!(class == Classification21::Diregular { k: 3 }, "classified as {class:?}");
    ensure!(c.digraph.order() == 3 * 3 - 3 + 1, "order {}", c.digraph.order());
    Ok("(7,7,3,3,1) -> 3-diregular friendship digraph of order 7".into())
}

fn lambda_two_constructions() -> Outcome {
    let mut notes = Vec::new();
    for (name, design, k) in [
        ("Fano complement", fixtures::fano_complement(), 4),
        ("biplane", fixtures::biplane_11(), 5),
    ] {
        let c = design_to_digraph(&design).map_err(|e| format!("{name}: {e}"))?;
        let n = c.digraph.order();
        ensure!(c.digraph.is_diregular() == Some(k), "{name}: not {k}-diregular");
        ensure!((n - 1) * 2 == k * (k - 1), "{name}: degree equation");
        let solved = solve_degree_equation(n, p(2, 2)).map_err(|e| e.to_string())?;
        ensure!(solved == Some(k), "{name}: solver gave {solved:?}");
        let counted = counting_identity_check(&c.digraph, p(2, 2)).map_err(|e| e.to_string())?;
        ensure!(counted.holds(), "{name}: counting identity {counted:?}");
        notes.push(format!("n={n} k={k}"));
    }
    Ok(notes.join(", "))
}

fn search_set(n: usize, params: LikingParams, mode: SearchMode) -> Result<Vec<Digraph>, String> {
    let cfg = SearchConfig {
        workers: 1,
        ..Default::default()
    };
    let r = enumerate_liking(&SearchSpec::new(n, params, mode), &cfg).map_err(|e| e.to_string())?;
    ensure!(r.complete, "search n={n} {params} incomplete");
    Ok(r.found)
}

fn t3_uniqueness() -> Outcome {
    let mode = SearchMode::TwoWayLiking;
    let expect = |n: usize, want: Option<usize>| -> Result<(), String> {
        let params = if want == Some(5) { p(3, 2) } else { p(3, 1) };
        let found = search_set(n, params, mode)?;
        let expected: Vec<Digraph> = want.map(|m| complete_digraph(m).unwrap()).into_iter().collect();
        ensure!(found == expected, "two-way {params} n={n}: found {found:?}");
        Ok(())
    };
    expect(3, None)?;
    expect(4, Some(4))?;
    expect(5, None)?;
    expect(5, Some(5))?;
    Ok("(3,1): {} / {K4} / {} at n=3,4,5; (3,2) n=5: {K5}".into())
}

fn friendship_audit() -> Outcome {
    let mut classes = 0;
    for n in 2..=5 {
        let spec = SearchSpec::new(n, p(2, 1), SearchMode::Liking).dedupe(true);
        let r = enumerate_liking(&spec, &SearchConfig::default()).map_err(|e| e.to_string())?;
        ensure!(r.complete, "n={n} incomplete");
        for d in &r.found {
            match classify_21(d).map_err(|e| e.to_string())? {
                Classification21::FancyWheel { .. } => {}
                Classification21::Diregular { k } => ensure!(n == k * k - k + 1, "diregular k={k} at n={n}"),
                other => return Err(format!("{d:?} classified {other:?}")),
            }
            ensure!(is_two_way_liking(d, p(2, 1)).unwrap().holds(), "{d:?} not two-way");
            classes += 1;
        }
    }
    Ok(format!("{classes} isomorphism classes up to n=5, all fancy wheels or diregular"))
}

fn corollary_tightness() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = SearchConfig {
        node_budget: DEFAULT_NODE_BUDGET,
        workers: 8,
        checkpoint: Some(dir.path().join("tightness.ckpt")),
        ..Default::default()
    };
    let spec = SearchSpec::new(7, p(2, 2), SearchMode::Liking).dedupe(true);
    let r = enumerate_liking(&spec, &cfg).map_err(|e| e.to_string())?;
    let witnesses: Vec<&Digraph> = r
        .found
        .iter()
        .filter(|d| d.is_diregular().is_none() && !is_two_way_liking(d, p(2, 2)).unwrap().holds())
        .collect();
    ensure!(
        !witnesses.is_empty(),
        "no witness (budget exhausted: {}, nodes {})",
        r.budget_exhausted,
        r.nodes_explored
    );
    Ok(format!(
        "{} of {} classes at n=7 are neither diregular nor two-way ({} nodes)",
        witnesses.len(),
        r.found.len(),
        r.nodes_explored
    ))
}

fn oracle_equivalences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    // (a) verifier vs all-subset recount
    for _ in 0..200 {
        let n = rng.gen_range(2..=6);
        let density = rng.gen_range(0.3..1.0);
        let d = random_digraph(&mut rng, n, density);
        let (t, lambda) = (rng.gen_range(1..=n.min(3)), rng.gen_range(1..=3));
        for two_way in [false, true] {
            let got: Vec<_> = all_violations(&d, p(t, lambda), two_way)
                .unwrap()
                .into_iter()
                .map(|v| (v.subset, v.direction == Direction::In, v.observed))
                .collect();
            ensure!(got == naive_violations(&d, t, lambda, two_way), "(a) disagreement on {d:?}");
        }
    }
    // (b) sdr vs exhaustive Hall
    for _ in 0..100 {
        let (n, ground) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let density = rng.gen_range(0.05..0.5);
        let sets = (0..n).map(|_| (0..ground).filter(|_| rng.gen_bool(density)).collect()).collect();
        let f = SetFamily::new(ground, sets).unwrap();
        let hall = (1u32..1 << n).all(|mask| {
            let chosen: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            chosen.iter().flat_map(|&i| f.sets()[i].iter()).unique().count() >= chosen.len()
        });
        ensure!(matches!(sdr(&f), SdrOutcome::Representatives(_)) == hall, "(b) disagreement on {f:?}");
    }
    // (c) search vs brute-force filter
    for n in 1..=4 {
        for (t, lambda) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
            if t > n {
                continue;
            }
            for (mode, two_way) in [(SearchMode::Liking, false), (SearchMode::TwoWayLiking, true)] {
                let mut got: Vec<Vec<u64>> = search_set(n, p(t, lambda), mode)?.iter().map(rows).collect();
                got.sort();
                ensure!(got == brute_force_liking(n, t, lambda, two_way), "(c) n={n} ({t},{lambda}) {mode:?}");
            }
        }
    }
    // (d) design verifier vs triple loop
    let mut designs: Vec<Design> = fixtures::all().into_iter().map(|(_, d)| d).collect();
    for _ in 0..100 {
        let v = rng.gen_range(2..=9);
        let blocks = (0..rng.gen_range(1..=12))
            .map(|_| {
                let k = rng.gen_range(1..=v);
                rand::seq::index::sample(&mut rng, v, k).into_vec()
            })
            .collect();
        designs.push(Design::new(v, blocks).unwrap());
    }
    for d in &designs {
        let got = verify_design(d).ok().map(|q| (q.b, q.v, q.r, q.k, q.lambda));
        ensure!(got == naive_design_params(d.varieties(), d.blocks()), "(d) disagreement on {d:?}");
    }
    Ok("400 verifier, 100 Hall, brute-force n<=4 and 104 design comparisons agree".into())
}

fn involutions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a7);
    for _ in 0..100 {
        let n = rng.gen_range(1..=9);
        let d = random_digraph(&mut rng, n, 0.5);
        ensure!(d.converse().converse() == d, "converse twice on {d:?}");
        ensure!(d.complement().complement() == d, "complement twice on {d:?}");
        ensure!(d.converse().complement() == d.complement().converse(), "commutation on {d:?}");
    }
    for (name, design) in fixtures::all() {
        let c = design_to_digraph(&design).map_err(|e| e.to_string())?;
        let q = p(2, c.params.lambda);
        ensure!(is_two_way_liking(&c.digraph.converse(), q).unwrap().holds(), "{name} converse");
    }
    Ok("100 random digraphs, 4 constructed fixtures".into())
}

fn round_trip() -> Outcome {
    let mut seen = Vec::new();
    for (name, design) in fixtures::all() {
        let c = design_to_digraph(&design).map_err(|e| format!("{name}: {e}"))?;
        let back = digraph_to_design(&c.digraph).map_err(|e| format!("{name}: {e}"))?;
        let q = verify_design(&back).map_err(|e| e.to_string())?;
        ensure!(q == c.params, "{name}: {q} != {}", c.params);
        seen.push((q.v, q.k, q.lambda));
    }
    for want in [(7, 3, 1), (7, 4, 2), (11, 5, 2), (13, 4, 1)] {
        ensure!(seen.contains(&want), "fixture {want:?} missing");
    }
    Ok(format!("{seen:?}"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 Fano construction pipeline", fano_pipeline, Some(Duration::from_secs(1))),
        ("2 lambda=2 constructions", lambda_two_constructions, Some(Duration::from_secs(1))),
        ("3 t=3 two-way uniqueness", t3_uniqueness, Some(Duration::from_secs(300))),
        ("4 friendship classification", friendship_audit, Some(Duration::from_secs(120))),
        ("5 (2,2) tightness at n=7", corollary_tightness, Some(Duration::from_secs(1800))),
        ("6 oracle equivalences", oracle_equivalences, None),
        ("7 involutions and converse", involutions, None),
        ("8 design round trip", round_trip, None),
    ];
    let mut failures = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(note) => println!("PASS  criterion {name} [{elapsed:.2?}]: {note}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  criterion {name} [{elapsed:.2?}]: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 8 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
