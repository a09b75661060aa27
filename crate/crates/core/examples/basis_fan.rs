//! The d+1 lines through a basis: a complete set of mutually orthogonal Latin squares.
//!
//! `cargo run --example basis_fan -- 5 1,0 0,1`

use std::env;

use supersquares::constructions::{basis_fan, complete_set_to_squares};
use supersquares::squares::mutually_orthogonal;
use supersquares::{FieldSpec, Origin};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = env::args().skip(1).collect();
    let d: usize = args.first().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let f = FieldSpec::with_order(d)?;
    let v1 = f.parse_point(args.get(1).map_or("1,0", |s| s))?;
    let v2 = f.parse_point(args.get(2).map_or("0,1", |s| s))?;

    let cs = basis_fan(&f, v1, v2)?;
    let squares = complete_set_to_squares(&cs)?;
    for (g, s) in cs.subgroups.iter().zip(&squares) {
        println!("{g}");
        print!("{}", s.render(Origin::Bottom));
        println!();
    }
    println!("{} squares, mutually orthogonal: {}", squares.len(), mutually_orthogonal(&squares)?);
    Ok(())
}
