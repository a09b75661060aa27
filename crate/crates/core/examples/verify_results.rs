//! Runs every structural check the library knows about and prints the reports.

use supersquares::enumeration::{
    max_orthogonal_count, verify_extraordinary_through, verify_line_in_every_set, verify_max_orthogonal,
    verify_prime_order_lines, verify_type_dichotomy,
};
use supersquares::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gf4 = FieldSpec::with_order(4)?;
    println!("{}", verify_line_in_every_set(&gf4)?);
    println!("{}", verify_type_dichotomy(&gf4, 2)?);
    println!("{}", verify_extraordinary_through(&gf4)?);
    for p in [2, 3, 5, 7] {
        println!("{}", verify_prime_order_lines(p)?);
    }
    for d in [2, 3, 4, 5] {
        let f = FieldSpec::with_order(d)?;
        println!("{}", verify_max_orthogonal(&f)?);
        assert_eq!(max_orthogonal_count(&f)?, d + 1);
    }
    Ok(())
}
