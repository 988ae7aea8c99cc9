//! Follow the cotangent family to its degenerate limit and the elliptic
//! family to τ → i∞.

use dynr::verify::limits::{cotanh_path, elliptic_tau_path, limit_compare, limit_plan};
use dynr::Complex64;

fn main() -> dynr::Result<()> {
    let g = dynr::lie::algebra("A2")?;
    let c = |re: f64| Complex64::new(re, 0.0);
    let plan = limit_plan(42, 10);
    let x = vec![g.root_system.simple_roots[0]];
    let path = cotanh_path(&g, c(1.0), &[c(0.1), c(-0.2)], &x, &[5.0, 10.0, 20.0, 40.0])?;
    let out = limit_compare(&g, &path, &plan)?;
    for (t, d) in out.params.iter().zip(out.target_deviation.as_ref().unwrap()) {
        println!("t = {:>4}: deviation from degenerate limit {d:.2e}", t.re);
    }
    let taus: Vec<Complex64> = [2.0, 4.0, 6.0, 8.0].iter().map(|&t| Complex64::new(0.0, t)).collect();
    let out = limit_compare(&g, &elliptic_tau_path(&g, &taus), &plan)?;
    for (w, d) in out.params.windows(2).zip(&out.cauchy) {
        println!("τ = {} → {}: change {d:.2e}", w[0], w[1]);
    }
    Ok(())
}
