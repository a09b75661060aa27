//! The two families of extraordinary complete sets at d = 4.

use supersquares::constructions::{complete_set_to_squares, example_set_d4, type_i, type_ii};
use supersquares::enumeration::{all_complete_sets, classify_complete_set};
use supersquares::{CompleteSet, FieldSpec, Origin};

fn show(name: &str, cs: &CompleteSet) -> Result<(), Box<dyn std::error::Error>> {
    println!("{name}: {} ({} lines)", cs.kind, cs.line_count());
    for (g, s) in cs.subgroups.iter().zip(complete_set_to_squares(cs)?) {
        println!("  {g}");
        for row in s.render(Origin::Bottom).lines() {
            println!("    {row}");
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldSpec::with_order(4)?;
    let p = |s: &str| f.parse_point(s);

    show("example", &example_set_d4(&f, p("1,0")?, p("0,1")?)?)?;
    show("type I", &type_i(&f, p("1,m^2")?, p("0,m")?)?)?;
    show("type II", &type_ii(&f, p("1,m^2")?, p("1,m")?)?)?;

    let sets = all_complete_sets(&f, true, 1)?;
    println!("all extraordinary complete sets: {}", sets.len());
    for cs in &sets {
        println!("  {:?}", classify_complete_set(cs)?);
    }
    Ok(())
}
