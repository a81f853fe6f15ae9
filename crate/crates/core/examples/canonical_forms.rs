//! Canonical labelings: relabeled copies share one code, and a search with
//! deduplication keeps one digraph per isomorphism class.

use liking::digraph::fancy_wheel;
use liking::search::{canonical_form, encode};
use liking::{enumerate_liking, LikingParams, SearchConfig, SearchMode, SearchSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let wheel = fancy_wheel(&[2, 2])?;
    let shuffled = wheel.relabel(&[3, 0, 4, 1, 2]);
    let (a, b) = (canonical_form(&wheel)?, canonical_form(&shuffled)?);
    println!("codes {:#x} / {:#x}, raw {:#x} / {:#x}", a.code, b.code, encode(&wheel), encode(&shuffled));
    println!("canonical digraph {:?}", a.digraph);

    let p = LikingParams::new(2, 1)?;
    for n in 3..=7 {
        let labeled = enumerate_liking(&SearchSpec::new(n, p, SearchMode::Liking), &SearchConfig::default())?;
        let classes = enumerate_liking(&SearchSpec::new(n, p, SearchMode::Liking).dedupe(true), &SearchConfig::default())?;
        println!("(2,1), n={n}: {} labeled, {} up to isomorphism", labeled.found.len(), classes.found.len());
    }
    Ok(())
}
