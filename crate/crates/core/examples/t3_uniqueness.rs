//! For t ≥ 3 the only two-way (t,λ)-liking digraph is the complete digraph
//! on t + λ vertices. An exhaustive search over small orders agrees.

use liking::{enumerate_liking, LikingParams, SearchConfig, SearchMode, SearchSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (t, lambda, max_n) in [(3, 1, 6), (3, 2, 6), (4, 1, 6)] {
        let p = LikingParams::new(t, lambda)?;
        for n in t..=max_n {
            let spec = SearchSpec::new(n, p, SearchMode::TwoWayLiking);
            let r = enumerate_liking(&spec, &SearchConfig::default())?;
            let shapes: Vec<String> = r.found.iter().map(|d| format!("{} arcs", d.arc_count())).collect();
            println!("two-way {p}, n={n}: {} found {shapes:?} ({} nodes)", r.found.len(), r.nodes_explored);
        }
    }
    Ok(())
}
