//! Find positive systems containing given root sets, and see the two ways
//! a set can fail to admit one.

use dynr::combinatorics::find_polarization;

fn main() -> dynr::Result<()> {
    let g = dynr::lie::algebra("G2")?;
    let rs = &g.root_system;
    let (a1, a2) = (rs.simple_roots[0], rs.simple_roots[1]);
    let cases = [vec![a1], vec![a1, rs.negative(a2)], vec![rs.negative(a1)], vec![a1, rs.negative(a1)], vec![a1, a2]];
    for y in cases {
        let labels: Vec<String> = y.iter().map(|&r| rs.label(r)).collect();
        match find_polarization(rs, &y) {
            Ok(p) => {
                let pos: Vec<String> = p.positive.iter().map(|&r| rs.label(r)).collect();
                println!("Y = {{{}}}: margin {:.3}, positive {{{}}}", labels.join(", "), p.margin, pos.join(", "));
            }
            Err(e) => println!("Y = {{{}}}: {e}", labels.join(", ")),
        }
    }
    Ok(())
}
