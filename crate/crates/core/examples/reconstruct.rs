//! Rebuilding a revealing pair from a *-reduced diagram.

use aaut::format::write_pair;
use aaut::random::seeded_element;
use aaut::strand::{basic_diagram, diagram_to_revealing_pair, iso, star_reduce, translation_diagram};
use aaut::{make_revealing, TreeParams};

fn main() -> aaut::Result<()> {
    let q = TreeParams::new(2, 3)?;
    let g = seeded_element(q, 7, 5);
    let star = star_reduce(&basic_diagram(&make_revealing(&g)?));
    let back = diagram_to_revealing_pair(&star, q)?;
    print!("{}", write_pair(&back));
    let again = star_reduce(&basic_diagram(&back));
    println!("isomorphic with rotation: {}", iso(&star, &again, true).is_some());

    let t = translation_diagram(3, 4, 5);
    let pair = diagram_to_revealing_pair(&t, TreeParams::new(3, 4)?)?;
    println!("\nlength-5 translation in T(3,4): {} leaves, revealing {}", pair.domain().leaf_count(), pair.is_revealing());
    Ok(())
}
