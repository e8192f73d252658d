use proptest::prelude::*;

use slt_core::baselines::{abp_slt, break_path, kry_slt, mst_tree, solomon_slt};
use slt_core::bounds::C_1;
use slt_core::graph::{lightness, mst, root_stretch};
use slt_core::instances::{comb, generate, sector_lb, uniform, GenParams, Kind};
use slt_core::oracles::{brute_force_opt_st, steiner_lower_bound_certificate};
use slt_core::pipeline::{build_slt, Mode};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn opt_is_sandwiched(n in 1usize..7, seed in any::<u64>(), e in 1i32..=4) {
        let eps = 4f64.powi(-e);
        let inst = uniform(n, eps, seed).unwrap();
        let (opt, t) = brute_force_opt_st(&inst, eps).unwrap();
        prop_assert!(root_stretch(&t, &inst).unwrap() <= 1.0 + eps + 1e-9);
        prop_assert!(opt >= mst(inst.points()).weight * (1.0 - 1e-12));
        for tree in [kry_slt(&inst).unwrap(), abp_slt(&inst).unwrap()] {
            prop_assert!(opt <= tree.weight() * (1.0 + 1e-9));
        }
    }

    #[test]
    fn kry_and_abp_are_shallow(n in 1usize..400, seed in any::<u64>(), eps in 0.001..0.9f64) {
        let inst = uniform(n, eps, seed).unwrap();
        prop_assert!(root_stretch(&kry_slt(&inst).unwrap(), &inst).unwrap() <= 1.0 + eps + 1e-9);
        prop_assert!(root_stretch(&abp_slt(&inst).unwrap(), &inst).unwrap() <= 1.0 + eps + 1e-9);
        let br = break_path(&inst, eps);
        let mut seen = vec![false; inst.len()];
        let mut next = 0;
        for (r, &a) in br.ranges.iter().zip(&br.anchors) {
            prop_assert_eq!(r.start, next);
            next = r.end;
            prop_assert!(br.path_weight(&inst, r) <= eps * inst.points()[a].dist(inst.source()) * (1.0 + 1e-12));
            for &v in &br.order[r.clone()] {
                seen[v] = true;
            }
        }
        prop_assert_eq!(next, br.order.len());
        prop_assert_eq!(seen.iter().filter(|&&b| b).count(), inst.len() - 1);
    }
}

#[test]
fn mst_baseline_has_unit_lightness() {
    let inst = uniform(500, 0.1, 1).unwrap();
    assert_eq!(lightness(&mst_tree(&inst).unwrap(), &inst), 1.0);
}

#[test]
fn comb_defeats_the_classical_algorithms() {
    for e in 2..=5 {
        let eps = 4f64.powi(-e);
        let inst = comb(4, eps / 2.0, eps).unwrap();
        assert!((mst(inst.points()).weight - 6.0).abs() < 1e-9);
        for t in [kry_slt(&inst).unwrap(), abp_slt(&inst).unwrap()] {
            assert!(lightness(&t, &inst) >= C_1 / eps);
        }
    }
}

#[test]
fn solomon_gadgets_stay_light() {
    for kind in [Kind::Circle, Kind::Comb, Kind::CnetComb] {
        for e in 2..=5 {
            let eps = 4f64.powi(-e);
            let inst = generate(kind, eps, GenParams::default(), 0).unwrap();
            let t = solomon_slt(&inst).unwrap();
            assert!(root_stretch(&t, &inst).unwrap() < 1.5);
        }
    }
}

#[test]
fn certificates_bound_every_builder() {
    for e in 3..=5 {
        let eps = 4f64.powi(-e);
        let inst = sector_lb(eps, eps).unwrap();
        let cert = steiner_lower_bound_certificate(&inst, eps, eps.sqrt()).unwrap();
        for (i, a) in cert.boxes.iter().enumerate() {
            for b in &cert.boxes[i + 1..] {
                assert!(!a.overlaps(b));
            }
        }
        let trees = [
            kry_slt(&inst).unwrap(),
            abp_slt(&inst).unwrap(),
            solomon_slt(&inst).unwrap(),
            build_slt(&inst, Mode::Steiner).unwrap().0,
            build_slt(&inst, Mode::Restricted).unwrap().0,
        ];
        for t in trees {
            assert!(t.weight() >= cert.value);
        }
    }
}
