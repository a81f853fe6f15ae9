//! Checking digraphs against the liking definitions, with witnesses on
//! failure.

use liking::digraph::{complete_digraph, directed_cycle, fancy_wheel};
use liking::liking::{all_violations, degree_bounds_check, eulerian_check};
use liking::{is_liking, is_two_way_liking, LikingParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k4 = complete_digraph(4)?;
    let p31 = LikingParams::new(3, 1)?;
    println!("K4 two-way (3,1): {:?}", is_two_way_liking(&k4, p31)?);

    let wheel = fancy_wheel(&[2, 3])?;
    let p21 = LikingParams::new(2, 1)?;
    println!("fancy wheel (2,3): {:?}", wheel);
    println!("  (2,1)-liking: {:?}", is_liking(&wheel, p21)?);
    println!("  eulerian: {:?}", eulerian_check(&wheel));
    println!("  degree bounds: {:?}", degree_bounds_check(&wheel, p21)?);

    let c4 = directed_cycle(4)?;
    println!("C4 (2,1)-liking: {:?}", is_liking(&c4, p21)?);
    for v in all_violations(&c4, p21, true)? {
        println!("  {v}");
    }
    Ok(())
}
