//! Builds GF(p^n) and prints its log table, traces and the trace-zero subgroup K.
//!
//! `cargo run --example field_arithmetic -- 2 3`

use std::env;

use supersquares::{FieldElement, FieldSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = env::args().skip(1);
    let p: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let n: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let f = FieldSpec::new(p, n)?;

    println!("GF({}) = Z_{p}[x] / ({})", f.order(), f.format_modulus());
    for a in f.canonical_elements() {
        let inv = f.inv(a).map(|b| f.format_element(b)).unwrap_or_else(|_| "-".into());
        println!("{:>6}  coeffs {:?}  inv {:>6}  tr {}",
            f.format_element(a), f.coeffs(a), inv, f.format_element(f.trace(a)));
    }
    let k: Vec<String> = f.trace_zero_set().into_iter().map(|a| f.format_element(a)).collect();
    println!("K = {{{}}}, |K| = {}", k.join(", "), k.len());

    let m = f.primitive();
    let x = f.add(f.mul(m, m), FieldElement::ONE);
    println!("m^2 + 1 = {}", f.format_element(x));
    Ok(())
}
