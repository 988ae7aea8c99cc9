//! Build G2 from its root data and print the Chevalley brackets of the
//! simple root vectors.

fn main() -> dynr::Result<()> {
    let g = dynr::lie::algebra("G2")?;
    let rs = &g.root_system;
    println!("{}: rank {}, {} roots, dim {}", g.id(), g.rank(), rs.len(), g.dim);
    for (i, &s) in rs.simple_roots.iter().enumerate() {
        println!("  α{} = {:?}  ({})", i + 1, rs.root(s), rs.label(s));
    }
    for &a in &rs.positive_roots {
        for &b in &rs.positive_roots {
            if let Some(n) = g.root_bracket_exact(a, b) {
                if a < b {
                    println!("  [e_{}, e_{}] = {} e_{}", rs.label(a), rs.label(b), n, rs.label(rs.sum(a, b).unwrap()));
                }
            }
        }
    }
    println!("Jacobi defect {:.1e}, invariance defect {:.1e}", g.jacobi_residual(), g.invariance_residual());
    Ok(())
}
