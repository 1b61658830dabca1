//! Orbital types and the boundary orbital type invariant.

use aaut::elliptic::{bot_invariant, elliptic_conjugate, is_autt_conjugate_elliptic_t22, orbital_type};
use aaut::format::parse_element;

fn main() -> aaut::Result<()> {
    let swap = parse_element("aaut v1\nd 2 k 2\npair\n0 -> 1\n1 -> 0\n")?;
    let double = parse_element("aaut v1\nd 2 k 2\npair\n00 -> 01\n01 -> 00\n10 -> 11\n11 -> 10\n")?;
    let three = parse_element("aaut v1\nd 2 k 2\npair\n1 -> 1\n01 -> 000\n000 -> 001\n001 -> 01\n")?;

    for (name, g) in [("swap", &swap), ("double swap", &double), ("3-cycle", &three)] {
        let t = orbital_type(g)?;
        println!("{name}: orbital type {}, invariant {:?}", serde_json::to_string(&t).unwrap(), bot_invariant(&t));
        println!("  conjugate into Aut(T): {}", is_autt_conjugate_elliptic_t22(g)?);
    }
    println!("swap ~ double swap: {}", elliptic_conjugate(&swap, &double)?);
    println!("swap ~ 3-cycle:     {}", elliptic_conjugate(&swap, &three)?);
    println!("\n{}", orbital_type(&three)?.to_dot());
    Ok(())
}
