//! Distinct representatives, or a Hall violator when none exist.

use liking::design::fixtures;
use liking::matching::{all_sdrs, block_complement_family, sdr, SetFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ok = SetFamily::new(3, vec![vec![0, 1], vec![1, 2], vec![0]])?;
    println!("{:?} -> {:?}", ok.sets(), sdr(&ok));

    let stuck = SetFamily::new(3, vec![vec![0, 1], vec![1], vec![0], vec![2]])?;
    println!("{:?} -> {:?}", stuck.sets(), sdr(&stuck));

    let complements = block_complement_family(&fixtures::fano())?;
    println!("Fano block complements: {:?}", complements.sets());
    println!("  default SDR {:?}", sdr(&complements));
    println!("  {} SDRs in total", all_sdrs(&complements)?.len());
    Ok(())
}
