//! Basic, reduced and *-reduced strand diagrams, written as DOT.

use aaut::random::seeded_element;
use aaut::strand::{basic_diagram, loops, reduce, star_reduce, unreduced_basic_diagram};
use aaut::{make_revealing, TreeParams};

fn main() -> aaut::Result<()> {
    let g = seeded_element(TreeParams::new(2, 2)?, 5, 3);
    let pair = make_revealing(&g)?;
    let raw = unreduced_basic_diagram(&pair);
    let basic = basic_diagram(&pair);
    let reduced = reduce(&basic);
    let star = star_reduce(&basic);
    for (name, d) in [("unreduced", &raw), ("basic", &basic), ("reduced", &reduced), ("*-reduced", &star)] {
        println!(
            "{name:>10}: {} vertices, {} edges, free loops {:?}",
            d.vertex_count(),
            d.edge_count(),
            d.free_loops()
        );
    }
    for l in loops(&star)? {
        println!("{:?}: {} vertices, class value {}", l.kind, l.length, l.class_value);
    }
    println!("\n{}", star.to_dot());
    Ok(())
}
