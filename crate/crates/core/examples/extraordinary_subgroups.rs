//! Lists the extraordinary subgroups of order d and the ones through a chosen pair of points.

use supersquares::constructions::extraordinary_through;
use supersquares::enumeration::{all_extraordinary, all_order_d_subgroups};
use supersquares::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    let f = FieldSpec::with_order(d)?;
    let all = all_order_d_subgroups(&f)?;
    let extra = all_extraordinary(&f)?;
    println!("GF({d}): {} subgroups of order {d}, {} extraordinary", all.len(), extra.len());
    for g in &extra {
        println!("  {}{g}", if g.is_line() { "line " } else { "     " });
    }

    let v = f.parse_point("1,0")?;
    let w = f.find_unit_partner(v)?;
    println!("through {} with det({}, {}) = 1:", f.format_point(v), f.format_point(v), f.format_point(w));
    for g in extraordinary_through(&f, v, w)? {
        println!("  {g}");
    }
    Ok(())
}
