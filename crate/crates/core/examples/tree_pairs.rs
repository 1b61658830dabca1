//! Composing and canonicalizing tree pairs in V_{2,2}.

use aaut::format::{parse_element, write_element};
use aaut::{Address, Element, TreeParams};

fn addr(s: &str) -> Address {
    Address::new(s.bytes().map(|b| b - b'0').collect())
}

fn main() -> aaut::Result<()> {
    let q = TreeParams::new(2, 2)?;
    let x = Element::from_pairs(q, vec![(addr("0"), addr("00")), (addr("10"), addr("01")), (addr("11"), addr("1"))])?;
    let swap = Element::from_pairs(q, vec![(addr("0"), addr("1")), (addr("1"), addr("0"))])?;

    println!("x           = {x}");
    println!("x⁻¹         = {}", x.inverse());
    println!("x²          = {}", x.pow(2));
    println!("swap x swap = {}", x.conjugate_by(&swap)?);
    println!("x x⁻¹ = id  : {}", x.compose(&x.inverse())?.is_identity());
    println!("x(0101)     = {}", x.act(&addr("0101"))?);

    let text = write_element(&x);
    print!("\n{text}");
    assert_eq!(parse_element(&text)?, x);
    Ok(())
}
