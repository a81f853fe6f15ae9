//! Runs every structural check over all orders up to 6 and prints a table.
//!
//! Run with `cargo run --release --example theorem_audit`.

use liking::search::{theorem_audit, AuditVerdict};
use liking::{LikingParams, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)]
        .into_iter()
        .map(|(t, l)| LikingParams::new(t, l))
        .collect::<Result<Vec<_>, _>>()?;
    let report = theorem_audit(6, &params, &SearchConfig::default())?;
    for e in &report.entries {
        let verdict = match &e.verdict {
            AuditVerdict::Pass => "pass".to_string(),
            AuditVerdict::Fail { witness } => format!("FAIL: {witness}"),
            AuditVerdict::Inconclusive { note } => format!("inconclusive: {note}"),
        };
        let examined: usize = e.per_order.iter().map(|s| s.examined).sum();
        println!("{} {:?}: {verdict} ({examined} digraphs)", e.params, e.check);
    }
    println!("{} nodes explored", report.nodes_explored);
    Ok(())
}
