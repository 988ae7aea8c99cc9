//! Count the closed root subsets of each rank-two root system.

use dynr::combinatorics::enumerate_closed_subsets;

fn main() -> dynr::Result<()> {
    for name in ["A1", "A2", "B2", "G2", "A3"] {
        let g = dynr::lie::algebra(name)?;
        let rs = &g.root_system;
        let subsets = enumerate_closed_subsets(rs)?;
        println!("{name}: {} closed subsets", subsets.len());
        if rs.rank() <= 2 {
            for x in subsets {
                let labels: Vec<String> = x.members.iter().map(|&r| rs.label(r)).collect();
                println!("  {{{}}}", labels.join(", "));
            }
        }
    }
    Ok(())
}
