//! Fano plane to friendship digraph: build the (7,3,1) design from the
//! difference set {1,2,4} mod 7, pick representatives for the block
//! complements, and check the resulting digraph.

use liking::construction::design_to_digraph;
use liking::design::{design_from_difference_set, verify_design};
use liking::liking::{classify_21, is_two_way_liking};
use liking::LikingParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fano = design_from_difference_set(7, &[1, 2, 4])?;
    println!("design {}: {:?}", verify_design(&fano)?, fano.blocks());

    let c = design_to_digraph(&fano)?;
    println!("representatives {:?}", c.representatives);
    println!("{:?}", c.digraph);
    println!("diregular degree {:?}", c.digraph.is_diregular());
    println!("two-way (2,1)-liking: {}", is_two_way_liking(&c.digraph, LikingParams::new(2, 1)?)?.holds());
    println!("classification {:?}", classify_21(&c.digraph)?);
    Ok(())
}
