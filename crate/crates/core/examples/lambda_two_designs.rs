//! λ = 2: the Fano complement (7,4,2) and the biplane (11,5,2) give
//! diregular two-way (2,2)-liking digraphs. The degree equation and the
//! double count of common neighbors are checked on each.

use liking::construction::{design_to_digraph, digraph_to_design};
use liking::design::{fixtures, verify_design};
use liking::liking::{counting_identity_check, solve_degree_equation};
use liking::LikingParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = LikingParams::new(2, 2)?;
    for (name, design) in [("Fano complement", fixtures::fano_complement()), ("biplane", fixtures::biplane_11())] {
        let c = design_to_digraph(&design)?;
        let n = c.digraph.order();
        println!("{name} {}", c.params);
        println!("  out-degree {:?}, degree equation gives {:?}", c.digraph.is_diregular(), solve_degree_equation(n, p)?);
        println!("  counting identity: {:?}", counting_identity_check(&c.digraph, p)?);
        let back = digraph_to_design(&c.digraph)?;
        println!("  in-neighborhoods form a {} design", verify_design(&back)?);
    }
    Ok(())
}
