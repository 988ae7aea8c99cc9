use std::sync::Arc;

use dynr::cli::parse_complex;
use dynr::combinatorics::{enumerate_closed_subsets, find_polarization, random_valid_subset};
use dynr::lie::{self, SimpleLieAlgebra};
use dynr::rmatrix::{gauge_apply, DynamicalR, Family, GaugeRecord, RMatrix, RMatrixSpec};
use dynr::verify::axioms::{extract_residue, unitarity_defect, RESIDUE_POINTS, RESIDUE_RADIUS};
use dynr::verify::checks::residual_norms;
use dynr::verify::SamplePlan;
use dynr::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn alg(name: &str) -> Arc<SimpleLieAlgebra> {
    lie::algebra(name).unwrap()
}

fn cplx(range: f64) -> impl Strategy<Value = Complex64> {
    (-range..range, -range..range).prop_map(|(re, im)| Complex64::new(re, im))
}

fn worst_residual(r: &dyn DynamicalR, seed: u64) -> f64 {
    let plan = SamplePlan::default().with_seed(seed).with_count(3);
    let samples = plan.samples(r, r.is_spectral()).unwrap();
    residual_norms(r, &samples, &plan).unwrap().into_iter().fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_subsets_give_rational_solutions(alg_ix in 0usize..4, pick in any::<prop::sample::Index>(), seed in 0u64..1000) {
        let g = alg(["A1", "A2", "B2", "G2"][alg_ix]);
        let subsets = enumerate_closed_subsets(&g.root_system).unwrap();
        let x = subsets[pick.index(subsets.len())].members.clone();
        let r = RMatrix::new(RMatrixSpec::new(Family::RationalConstant, g.lie_type()).with_x(x), g).unwrap();
        prop_assert!(worst_residual(&r, seed) <= 1e-8);
    }

    #[test]
    fn gauges_preserve_solutions(
        family_ix in 0usize..3,
        c01 in cplx(1.0),
        nu in prop::collection::vec(cplx(0.3), 2),
        v in prop::collection::vec(cplx(0.5), 2),
        q in (cplx(0.4), cplx(0.4), cplx(0.4)),
        a in (0.7f64..1.3, -0.2f64..0.2),
        b in (0.7f64..1.3, -0.2f64..0.2),
        seed in 0u64..1000,
    ) {
        let g = alg("A2");
        let family = [Family::EllipticSpectral, Family::TrigSpectral, Family::RationalSpectral][family_ix];
        let base = RMatrixSpec::new(family, g.lie_type()).with_x(match family {
            Family::RationalSpectral => (0..6).collect(),
            _ => vec![g.root_system.simple_roots[1]],
        });
        let stack = [
            GaugeRecord::TwoForm { c: vec![vec![Complex64::new(0.0, 0.0), c01], vec![-c01, Complex64::new(0.0, 0.0)]] },
            GaugeRecord::Psi { q: vec![vec![q.0, q.1], vec![q.1, q.2]], v },
            GaugeRecord::Shift { nu },
            GaugeRecord::Scale { a: Complex64::new(a.0, a.1), b: Complex64::new(b.0, b.1) },
        ];
        let mut spec = base;
        for gauge in stack {
            spec = gauge_apply(&spec, gauge).unwrap();
        }
        let r = RMatrix::new(spec, g).unwrap();
        prop_assert!(worst_residual(&r, seed) <= 2e-8);
    }

    #[test]
    fn cotanh_unitarity_tracks_eps(eps in cplx(2.0).prop_filter("nonzero", |e| e.norm() > 0.2), lam in prop::collection::vec(cplx(1.0), 2)) {
        let g = alg("B2");
        let r = RMatrix::new(RMatrixSpec::new(Family::TrigCotanh, g.lie_type()).with_eps(eps), g).unwrap();
        if r.pole_distance(&lam, None) > 0.1 {
            prop_assert!(unitarity_defect(&r, &lam, None).unwrap() <= 1e-11 * (1.0 + eps.norm()));
        }
    }

    #[test]
    fn residue_scales_by_a_over_b(a in (0.5f64..1.5, -0.3f64..0.3), b in (0.5f64..1.5, -0.3f64..0.3)) {
        let g = alg("A1");
        let (a, b) = (Complex64::new(a.0, a.1), Complex64::new(b.0, b.1));
        let spec = RMatrixSpec::new(Family::TrigSpectral, g.lie_type()).with_x(g.root_system.simple_roots.clone());
        let r = RMatrix::new(gauge_apply(&spec, GaugeRecord::Scale { a, b }).unwrap(), g).unwrap();
        let res = extract_residue(&r, &[Complex64::new(0.7, 0.2)], RESIDUE_RADIUS * b.norm().min(1.0), RESIDUE_POINTS).unwrap();
        prop_assert!((res.eps - a / b).norm() <= 1e-8);
        prop_assert!((r.coupling() - a / b).norm() <= 1e-14);
    }

    #[test]
    fn spec_json_round_trips(eps in cplx(3.0), nu in prop::collection::vec(cplx(1.0), 2), tau_im in 0.5f64..3.0) {
        let g = alg("G2");
        let spec = RMatrixSpec::new(Family::TrigCotanh, g.lie_type())
            .with_eps(eps)
            .with_nu(nu)
            .with_tau(Complex64::new(0.0, tau_im));
        let spec = gauge_apply(&spec, GaugeRecord::Scale { a: eps, b: Complex64::new(1.0, 0.0) }).unwrap();
        prop_assert_eq!(RMatrixSpec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn complex_tokens_round_trip(re in -1e3f64..1e3, im in -1e3f64..1e3) {
        let token = format!("{re:e}{im:+e}i");
        prop_assert_eq!(parse_complex(&token).unwrap(), Complex64::new(re, im));
    }

    #[test]
    fn random_valid_subsets_polarize(alg_ix in 0usize..3, seed in any::<u64>()) {
        let g = alg(["A2", "B2", "G2"][alg_ix]);
        let rs = &g.root_system;
        let y = random_valid_subset(rs, &mut ChaCha8Rng::seed_from_u64(seed)).members;
        let p = find_polarization(rs, &y).unwrap();
        prop_assert!(p.margin > 0.0);
        prop_assert!(y.iter().all(|a| p.positive.contains(a)));
    }
}
