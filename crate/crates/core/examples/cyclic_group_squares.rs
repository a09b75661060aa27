//! Supersquares over Z_n x Z_n, where orthogonality is still decided by trivial intersection.

use supersquares::squares::are_orthogonal;
use supersquares::{GroupSpec, Origin, Square};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(6);
    let g = GroupSpec::cyclic(&[n])?;
    let cells = g.cell_count() as u32;

    let mut subs: Vec<Vec<u32>> = Vec::new();
    for a in 0..cells {
        for b in a..cells {
            let mut s = g.generated_subgroup(&[a, b]);
            s.sort_unstable();
            if s.len() == n as usize && !subs.contains(&s) {
                subs.push(s);
            }
        }
    }
    println!("Z_{n} x Z_{n}: {} subgroups of order {n}", subs.len());

    let squares: Vec<Square> = subs.iter().map(|s| Square::supersquare_of_cells(&g, s)).collect::<Result<_, _>>()?;
    let mut orth = 0;
    for i in 0..squares.len() {
        for j in i + 1..squares.len() {
            if are_orthogonal(&squares[i], &squares[j])? {
                orth += 1;
            }
        }
    }
    println!("orthogonal pairs: {orth}");
    let first: Vec<String> = subs[0].iter().map(|&c| g.format_cell(c)).collect();
    println!("{{{}}}: {}", first.join(", "), squares[0].classify().summary());
    print!("{}", squares[0].render(Origin::Bottom));
    Ok(())
}
