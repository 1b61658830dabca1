//! Conjugacy in V against conjugacy in the almost automorphism group.

use aaut::conjugacy::{conjugate, conjugate_in_v};
use aaut::format::parse_element;

const X: &str = "aaut v1\nd 2 k 2\npair\n0 -> 00\n10 -> 01\n11 -> 1\n";
// x followed by a swap of the two halves of the ball 00.
const AV: &str = "aaut v1\nd 2 k 2\npair\n00 -> 001\n01 -> 000\n10 -> 01\n11 -> 1\n";

fn main() -> aaut::Result<()> {
    let (x, av) = (parse_element(X)?, parse_element(AV)?);
    let v = conjugate_in_v(&x, &av)?;
    println!("in V:    {} ({})", v.conjugate, v.evidence.kind());
    let a = conjugate(&x, &av)?;
    println!("in AAut: {} ({})", a.conjugate, a.evidence.kind());
    println!("{}", serde_json::to_string_pretty(&a).expect("serializable"));
    Ok(())
}
