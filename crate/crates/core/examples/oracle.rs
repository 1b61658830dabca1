//! Exhaustive conjugator search over small tree pairs.

use aaut::conjugacy::{brute_force_conjugator, conjugate, enumerate_elements};
use aaut::format::parse_element;
use aaut::TreeParams;

fn main() -> aaut::Result<()> {
    let q = TreeParams::new(2, 2)?;
    for c in 1..=3 {
        println!("elements with at most {c} carets: {}", enumerate_elements(q, c).len());
    }
    let swap = parse_element("aaut v1\nd 2 k 2\npair\n0 -> 1\n1 -> 0\n")?;
    let double = parse_element("aaut v1\nd 2 k 2\npair\n00 -> 01\n01 -> 00\n10 -> 11\n11 -> 10\n")?;
    match brute_force_conjugator(&swap, &double, 3)? {
        Some(w) => println!("witness: {}", w.conjugator),
        None => println!("no witness"),
    }
    println!("engine: {}", conjugate(&swap, &double)?.conjugate);
    Ok(())
}
