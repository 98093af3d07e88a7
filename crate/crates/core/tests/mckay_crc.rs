use num_complex::Complex64;
use proptest::prelude::*;
use qmckay::crc::{
    emit_prediction, fx0_fy0_check, fx_invariant, fy_closed_form, fy_h_sum, fy_triple_series, h_derivative,
    is_damped, q_beta_base, root_weights, specialization_bridge_check,
};
use qmckay::gijk::compute_gijk;
use qmckay::mckay::{
    build_group, change_of_variables, mat_mul, mckay_pairing_matrix, orbifold_quadratic_form,
    resolution_quadratic_form, trace, GroupData,
};
use qmckay::rational::{format_rational, int, to_f64};
use qmckay::{Laurent, RootSystem, RootSystemType};

fn setup(s: &str) -> (GroupData, RootSystem) {
    let t: RootSystemType = s.parse().unwrap();
    (build_group(t).unwrap(), RootSystem::build_ade(t).unwrap())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn groups_are_closed_and_classes_partition() {
    for t in RootSystemType::simply_laced_up_to_rank(8) {
        let g = build_group(t).unwrap();
        let order = g.order();
        assert_eq!(g.classes().iter().map(|c| c.size).sum::<usize>(), order, "{t}");
        assert_eq!(g.classes().len(), t.rank() + 1, "{t}");
        assert_eq!(g.char_table().len(), t.rank() + 1, "{t}");
        // closure, checked on matrices rather than through the product table
        for a in (0..order).step_by(7) {
            for b in (0..order).step_by(5) {
                let p = mat_mul(&g.elements()[a], &g.elements()[b]);
                let e = &g.elements()[g.product(a, b)];
                let d: f64 = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| (p[i][j] - e[i][j]).norm()).sum();
                assert!(d < 1e-9, "{t}");
            }
        }
        for cl in g.classes() {
            assert!(cl.chi_v <= 2.0 + 1e-12, "{t}");
            assert!((trace(&g.elements()[cl.representative]).im).abs() < 1e-12, "{t}");
            assert_eq!(g.classes()[cl.inverse].inverse, g.class_index(&cl.label).unwrap(), "{t}");
        }
    }
}

#[test]
fn column_orthogonality() {
    for t in RootSystemType::simply_laced_up_to_rank(8) {
        let g = build_group(t).unwrap();
        let k = g.classes().len();
        for r in 0..k {
            for s in 0..k {
                let sum: Complex64 = g.char_table().iter().map(|row| row[r] * row[s].conj()).sum();
                let expected = if r == s { g.order() as f64 / g.classes()[r].size as f64 } else { 0.0 };
                assert!((sum - c(expected, 0.0)).norm() < 1e-8, "{t} columns {r},{s}");
            }
        }
    }
}

#[test]
fn degrees_are_highest_root_coefficients() {
    for t in RootSystemType::simply_laced_up_to_rank(8) {
        let (g, rs) = (build_group(t).unwrap(), RootSystem::build_ade(t).unwrap());
        assert_eq!(g.dims()[0], 1);
        let matched: Vec<i64> = g.node_match().iter().map(|&r| g.dims()[r] as i64).collect();
        assert_eq!(matched, rs.highest_root().0, "{t}");
        let sum_sq: usize = g.dims().iter().map(|d| d * d).sum();
        assert_eq!(sum_sq, g.order(), "{t}");
    }
}

#[test]
fn a2_pairing_entry_and_e7_matrix() {
    let (g, _) = setup("A2");
    assert!((mckay_pairing_matrix(&g)[0][0] - c(-2.0, 0.0)).norm() < 1e-12);
    let (g, rs) = setup("E7");
    let m = mckay_pairing_matrix(&g);
    for i in 0..7 {
        for j in 0..7 {
            assert!((m[i][j] + c(to_f64(&rs.gram()[i][j]), 0.0)).norm() < 1e-8);
        }
    }
}

#[test]
fn identity_class_is_not_a_variable() {
    for label in ["A3", "D5", "E8"] {
        let (g, rs) = setup(label);
        let cov = change_of_variables(&g, &rs).unwrap();
        assert!(!cov.classes.contains(&0));
        assert_eq!(cov.matrix.len(), rs.rank());
    }
}

#[test]
fn quadratic_form_is_symmetric_under_inversion() {
    let (g, rs) = setup("E6");
    let cov = change_of_variables(&g, &rs).unwrap();
    let y: Vec<Complex64> = (0..6).map(|i| c(0.1 * i as f64 - 0.2, 0.03 * i as f64)).collect();
    let x = cov.apply(&y);
    let swapped: Vec<Complex64> = cov
        .classes
        .iter()
        .map(|&r| x[cov.classes.iter().position(|&s| s == g.classes()[r].inverse).unwrap()])
        .collect();
    let a = orbifold_quadratic_form(&g, &cov.classes, &x);
    let b = orbifold_quadratic_form(&g, &cov.classes, &swapped);
    assert!((a - b).norm() < 1e-12);
    assert!((a - resolution_quadratic_form(&rs, &y)).norm() < 1e-10);
}

#[test]
fn resolution_series_constant_term_is_the_triple_tensor() {
    for t in RootSystemType::simply_laced_up_to_rank(6) {
        let rs = RootSystem::build_ade(t).unwrap();
        let g = compute_gijk(&rs).unwrap();
        let n = rs.rank();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = fy_triple_series(&rs, 4, (i, j, k)).unwrap();
                    assert_eq!(s.constant_term(), Laurent::monomial(1, int(g.get(i, j, k))), "{t}");
                }
            }
        }
    }
}

#[test]
fn a1_series_has_constant_multiple_cover_coefficients() {
    let rs = RootSystem::build_ade("A1".parse().unwrap()).unwrap();
    let s = fy_triple_series(&rs, 8, (0, 0, 0)).unwrap();
    for d in 1..=8u32 {
        assert_eq!(s.coeff(&[d]), Laurent::monomial(1, int(-16)));
    }
}

#[test]
fn a2_bridge_example() {
    let (g, rs) = setup("A2");
    let y = [c(0.1, 0.0), c(0.0, 0.07)];
    assert!(specialization_bridge_check(&g, &rs, &y, (0, 0, 1)).unwrap());
    let zero = [c(0.0, 0.0); 2];
    let lhs = fy_closed_form(&g, &rs, &zero, (0, 1, 1)).unwrap();
    assert!((lhs - fy_h_sum(&g, &rs, &zero, (0, 1, 1)).unwrap()).norm() < 1e-12);
}

#[test]
fn base_point_of_the_highest_root() {
    for t in RootSystemType::simply_laced_up_to_rank(8) {
        let (g, rs) = (build_group(t).unwrap(), RootSystem::build_ade(t).unwrap());
        let order = g.order() as f64;
        let expected = 3.0 * std::f64::consts::PI - 2.0 * std::f64::consts::PI / order;
        assert!((q_beta_base(&g, &rs, rs.highest_root()) - expected).abs() < 1e-12, "{t}");
        assert!(root_weights(&rs).iter().all(|&w| w >= 1 && w < g.order() as i64), "{t}");
    }
}

#[test]
fn forbidden_monodromy_gives_zero() {
    for label in ["A2", "A4", "D4", "D5", "E6", "E7"] {
        let (g, rs) = setup(label);
        let mut forbidden = 0;
        for rec in emit_prediction(&g, &rs, 4).unwrap() {
            if !g.monodromy_allows(&rec.class_indices) {
                forbidden += 1;
                assert!(rec.value.abs() < 1e-9, "{label} {:?}: {}", rec.classes, rec.value);
            }
        }
        assert!(forbidden > 0, "{label}");
    }
}

#[test]
fn e8_triples_are_real() {
    let (g, rs) = setup("E8");
    let recs = emit_prediction(&g, &rs, 3).unwrap();
    assert_eq!(recs.len(), 120);
    assert!(recs.iter().all(|r| r.imaginary_residue < 1e-9 && r.m == 3));
}

#[test]
fn a1_record_rationals() {
    let (g, rs) = setup("A1");
    let rec = fx_invariant(&g, &rs, &[1, 1, 1, 1]).unwrap();
    assert_eq!(format_rational(&rec.value_rational), "-1/2");
    let rec = fx_invariant(&g, &rs, &[1, 1, 1]).unwrap();
    assert_eq!(format_rational(&rec.value_rational), "0");
}

#[test]
fn fx0_matches_fy0_at_zero_and_a1_unit() {
    let (g, rs) = setup("A1");
    assert!(fx0_fy0_check(&g, &rs, 1.0, c(1.0, 0.0), &[c(1.0, 0.0)]).unwrap());
    let (g, rs) = setup("D4");
    assert!(fx0_fy0_check(&g, &rs, 0.5, c(0.3, 0.1), &[c(0.0, 0.0); 4]).unwrap());
}

proptest! {
    #[test]
    fn h_matches_its_closed_form(u in -3.0f64..3.0) {
        prop_assert!((h_derivative(0, u).unwrap() - 0.5 * (-u / 2.0).tan()).abs() < 1e-12);
        let sec2 = 1.0 / (u / 2.0).cos().powi(2);
        prop_assert!((h_derivative(1, u).unwrap() + 0.25 * sec2).abs() < 1e-10);
    }

    #[test]
    fn h_derivatives_are_consistent(k in 0usize..5, u in -2.5f64..2.5) {
        let step = 1e-6;
        let fd = (h_derivative(k, u + step).unwrap() - h_derivative(k, u - step).unwrap()) / (2.0 * step);
        let exact = h_derivative(k + 1, u).unwrap();
        prop_assert!((fd - exact).abs() < 1e-4 * (1.0 + exact.abs()));
    }

    #[test]
    fn damped_bridge_holds(idx in 0usize..4, seed in prop::collection::vec(-0.05f64..0.05, 16)) {
        let (g, rs) = setup(["A3", "D4", "E6", "E8"][idx]);
        let n = rs.rank();
        let y: Vec<Complex64> = (0..n).map(|j| c(seed[2 * j], seed[2 * j + 1])).collect();
        if is_damped(&g, &rs, &y).unwrap() {
            prop_assert!(specialization_bridge_check(&g, &rs, &y, (0, n - 1, n / 2)).unwrap());
        }
    }
}
