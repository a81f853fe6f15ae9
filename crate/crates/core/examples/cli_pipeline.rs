//! Drives the command-line interface in-process: design file, construction,
//! check and conversion back, with the JSON report of each step.

use liking::cli::run;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("liking-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let design = dir.join("biplane.des");
    let digraph = dir.join("biplane.dg");
    let (des, dg) = (design.to_str().unwrap(), digraph.to_str().unwrap());

    let steps: [&[&str]; 4] = [
        &["design", "--difference-set", "11:1,3,4,5,9", "--verify", "--out", des],
        &["construct", "--design", des, "--out", dg],
        &["check", "--digraph", dg, "--t", "2", "--lambda", "2", "--two-way", "--format", "json"],
        &["convert", "--digraph", dg],
    ];
    for args in steps {
        let out = run(std::iter::once("liking").chain(args.iter().copied()));
        println!("$ liking {}\n{}(exit {})\n", args.join(" "), out.rendered, out.exit_code);
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
