//! Supersquare of the diagonal subgroup: a Latin square read off a coset partition.

use supersquares::squares::supersquare;
use supersquares::{FieldElement, FieldSpec, Origin, Point};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    let f = FieldSpec::with_order(d)?;
    let one = FieldElement::ONE;
    let a1 = f.span_line(Point::new(one, one))?;
    println!("A1 = {a1}");
    for (i, coset) in a1.cosets()?.iter().enumerate() {
        let pts: Vec<String> = coset.iter().map(|&v| f.format_point(v)).collect();
        println!("  A{} = {{{}}}", i + 1, pts.join(", "));
    }
    let s = supersquare(&a1)?;
    println!("{}", s.classify().summary());
    print!("{}", s.render(Origin::Bottom));
    Ok(())
}
