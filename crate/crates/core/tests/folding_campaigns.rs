use std::collections::BTreeSet;

use qmckay::campaign::{applicable_checks, run_check, CampaignConfig, CheckKind};
use qmckay::folding::{
    build_folded_type, fold, nontrivial_subgroups, verify_epsilon_invariance, verify_norm_formula,
    verify_orbit_orthogonality, verify_orbit_sum_lemma,
};
use qmckay::root_system::standard_cartan;
use qmckay::{Error, Execution, RootSystem, RootSystemType};

#[test]
fn every_folded_type_up_to_rank_eight() {
    for t in RootSystemType::all_up_to_rank(8).into_iter().filter(|t| !t.is_simply_laced()) {
        let fs = build_folded_type(t).unwrap();
        assert_eq!(fs.folded().rstype(), t);
        assert_eq!(fs.folded().cartan(), standard_cartan(t).as_slice(), "{t}");
        assert!(verify_epsilon_invariance(&fs), "{t}");
        // folded roots are exactly the projections of the source roots
        let projected: BTreeSet<Vec<i64>> = fs.source().positive_roots().iter().map(|b| fs.project(b).0).collect();
        let folded: BTreeSet<Vec<i64>> = fs.folded().positive_roots().iter().map(|r| r.0.clone()).collect();
        assert_eq!(projected, folded, "{t}");
        for beta in fs.source().positive_roots() {
            assert!(verify_orbit_sum_lemma(&fs, beta).unwrap(), "{t}");
            assert!(verify_orbit_orthogonality(&fs, beta).unwrap(), "{t}");
            assert!(verify_norm_formula(&fs, beta).unwrap(), "{t}");
        }
    }
}

#[test]
fn every_subgroup_folds_or_is_rejected() {
    for label in ["A3", "A4", "A5", "D4", "D5", "E6"] {
        let rs = RootSystem::build(label.parse().unwrap()).unwrap();
        for group in nontrivial_subgroups(&rs) {
            match fold(&rs, &group) {
                Ok(fs) => {
                    assert!(verify_epsilon_invariance(&fs), "{label}");
                    assert!(!fs.folded().rstype().is_simply_laced() || fs.folded().rank() < rs.rank());
                }
                Err(Error::Folding(_)) => {}
                Err(e) => panic!("{label}: unexpected {e}"),
            }
        }
    }
}

#[test]
fn a_even_folds_are_rejected() {
    let rs = RootSystem::build("A4".parse().unwrap()).unwrap();
    let groups = nontrivial_subgroups(&rs);
    assert_eq!(groups.len(), 1);
    assert!(matches!(fold(&rs, &groups[0]), Err(Error::Folding(_))));
}

fn cfg(seed: u64, execution: Execution) -> CampaignConfig {
    CampaignConfig {
        seed,
        trials: 6,
        execution,
        ..CampaignConfig::default()
    }
}

#[test]
fn campaigns_are_reproducible_and_mode_independent() {
    for label in ["A3", "C3", "G2", "D4"] {
        let rs = RootSystem::build(label.parse().unwrap()).unwrap();
        for kind in [CheckKind::Associativity, CheckKind::Weyl, CheckKind::Frobenius] {
            let a = run_check(kind, &rs, &cfg(11, Execution::Parallel)).unwrap();
            let b = run_check(kind, &rs, &cfg(11, Execution::Sequential)).unwrap();
            assert_eq!(a, b, "{label} {kind}");
            assert!(a.passed(), "{label} {kind}");
        }
    }
}

#[test]
fn full_suite_on_representative_types() {
    for label in ["A4", "D4", "E6", "B3", "C4", "F4", "G2"] {
        let rs = RootSystem::build(label.parse().unwrap()).unwrap();
        for kind in applicable_checks(rs.rstype()) {
            let out = run_check(kind, &rs, &cfg(3, Execution::Parallel)).unwrap();
            assert!(out.passed(), "{label} {kind}: {:?}", out.counterexample);
        }
    }
}
