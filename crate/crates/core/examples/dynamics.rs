//! Attractors, repellers and the stable region of a mixed element.

use aaut::dynamics::{classify_point, dynamics_report, eh_decompose, BoundaryPoint};
use aaut::format::parse_element;

fn main() -> aaut::Result<()> {
    let g = parse_element("aaut v1\nd 2 k 2\npair\n00 -> 01\n01 -> 00\n10 -> 100\n110 -> 101\n111 -> 11\n")?;
    let report = dynamics_report(&g)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));

    let q = g.params();
    for s in ["0/(1)", "10/(0)", "11/(1)", "10/(1)"] {
        let pt = BoundaryPoint::parse(s, &q)?;
        println!("{pt}  {:?}", classify_point(&g, &pt)?);
    }

    let (e, h) = eh_decompose(&g)?;
    println!("\nelliptic part   {e}\nhyperbolic part {h}");
    Ok(())
}
