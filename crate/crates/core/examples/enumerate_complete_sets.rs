//! Counts order-d subgroups, extraordinary subgroups and complete sets.
//!
//! `cargo run --release --example enumerate_complete_sets -- 8 4`
//! (order, worker threads)

use std::env;

use supersquares::enumeration::{enumerate, Target};
use supersquares::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = env::args().skip(1);
    let d: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let jobs: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let f = FieldSpec::with_order(d)?;

    let subs = enumerate(&f, Target::Subgroups, false, false, jobs)?;
    println!("GF({d}): {} subgroups of order {d}, {} extraordinary, {} lines",
        subs.counts["subgroups"], subs.counts["extraordinary"], subs.counts["lines"]);

    let sets = enumerate(&f, Target::CompleteSets, true, false, jobs)?;
    println!("extraordinary complete sets: {}", sets.counts["complete_sets"]);
    for (k, v) in &sets.counts {
        if k.starts_with("with_") || k.starts_with("Type") {
            println!("  {k}: {v}");
        }
    }
    println!("digest {}", sets.digest);
    println!("{} ms", sets.elapsed_ms);
    Ok(())
}
