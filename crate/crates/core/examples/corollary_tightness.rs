//! Searches every (2,2)-liking digraph of order 7 and picks out the ones
//! that are neither diregular nor two-way (2,2)-liking. Their existence shows
//! that "liking implies two-way liking" stops at t = λ + 1.
//!
//! Run with `cargo run --release --example corollary_tightness`.

use std::time::Instant;

use liking::liking::is_two_way_liking;
use liking::search::canonical_form;
use liking::{enumerate_liking, LikingParams, SearchConfig, SearchMode, SearchSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = LikingParams::new(2, 2)?;
    let start = Instant::now();
    let report = enumerate_liking(&SearchSpec::new(7, p, SearchMode::Liking), &SearchConfig::default())?;
    println!(
        "order 7, {p}-liking: {} labeled digraphs, {} nodes, {:.2?}",
        report.found.len(),
        report.nodes_explored,
        start.elapsed()
    );

    let mut classes = std::collections::BTreeMap::new();
    for d in &report.found {
        let cf = canonical_form(d)?;
        classes.entry(cf.code).or_insert(cf.digraph);
    }
    println!("{} isomorphism classes", classes.len());

    let mut witnesses = 0;
    for d in classes.values() {
        let two_way = is_two_way_liking(d, p)?;
        let degrees: Vec<_> = (0..d.order()).map(|v| (d.out_degree(v), d.in_degree(v))).collect();
        println!(
            "  diregular={:?} two-way={} (out,in)={degrees:?}",
            d.is_diregular(),
            two_way.holds()
        );
        if d.is_diregular().is_none() && !two_way.holds() {
            witnesses += 1;
            println!("    witness arcs {:?}", d.arcs());
            if let Some(v) = two_way.witness() {
                println!("    fails two-way: {v}");
            }
        }
    }
    println!("{witnesses} non-diregular class(es) that fail the two-way check");
    Ok(())
}
