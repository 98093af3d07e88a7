//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints its PASS/FAIL line; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use qmckay::campaign::{
    associativity_campaign, frobenius_campaign, weyl_campaign, CampaignConfig, CheckOutcome,
};
use qmckay::folding::{
    classify, diagram_automorphisms, fold, generate_group, verify_epsilon_invariance, verify_orbit_sum_lemma,
    DiagramAutomorphism,
};
use qmckay::qh::{three_point, AlgebraElement};
use qmckay::rational::int;
use qmckay::{crc, gijk, iso, mckay};
use qmckay::{Family, RootSystem, RootSystemType, SeriesBackend};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

struct Verdict {
    ok: bool,
    summary: String,
}

fn verdict(ok: bool, summary: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        summary: summary.into(),
    }
}

fn t(s: &str) -> RootSystemType {
    s.parse().unwrap()
}

fn campaign_types() -> Vec<RootSystemType> {
    let mut out: Vec<RootSystemType> = (1..=8).map(|n| t(&format!("A{n}"))).collect();
    out.extend((4..=8).map(|n| t(&format!("D{n}"))));
    out.extend(["E6", "E7", "E8", "B2", "B3", "B4", "C2", "C3", "C4", "F4", "G2"].map(t));
    out
}

fn ade_types() -> Vec<RootSystemType> {
    RootSystemType::simply_laced_up_to_rank(8)
}

fn build(t: RootSystemType) -> RootSystem {
    RootSystem::build(t).unwrap()
}

fn run_campaigns(
    trials: u64,
    campaign: fn(&RootSystem, &CampaignConfig) -> qmckay::Result<CheckOutcome>,
) -> Verdict {
    let cfg = CampaignConfig {
        seed: SEED,
        trials,
        ..CampaignConfig::default()
    };
    let mut failures = Vec::new();
    let mut cases = 0;
    for ty in campaign_types() {
        match campaign(&build(ty), &cfg) {
            Ok(out) => {
                cases += out.cases;
                if !out.passed() {
                    failures.push(format!("{ty}: {:?}", out.counterexample));
                }
            }
            Err(e) => failures.push(format!("{ty}: {e}")),
        }
    }
    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} types, {trials} points each, {cases} exact cases", campaign_types().len())
        } else {
            failures.join("; ")
        },
    )
}

fn criterion_1() -> Verdict {
    run_campaigns(200, associativity_campaign)
}

fn criterion_2() -> Verdict {
    run_campaigns(200, frobenius_campaign)
}

fn criterion_3() -> Verdict {
    run_campaigns(50, weyl_campaign)
}

/// Orders of the binary polyhedral groups, written out independently.
fn expected_group_order(ty: RootSystemType) -> i64 {
    let n = ty.rank() as i64;
    match (ty.family(), n) {
        (Family::A, _) => n + 1,
        (Family::D, _) => 4 * (n - 2),
        (Family::E, 6) => 24,
        (Family::E, 7) => 48,
        (Family::E, 8) => 120,
        _ => unreachable!(),
    }
}

fn criterion_4() -> Verdict {
    let mut bad = Vec::new();
    for ty in RootSystemType::all_up_to_rank(8) {
        let rs = build(ty);
        if ty.is_simply_laced() {
            let n2: i64 = rs.highest_root().0.iter().map(|n| n * n).sum();
            let order = mckay::build_group(ty).unwrap().order() as i64;
            let expected = expected_group_order(ty);
            if *rs.epsilon() != int(1 + n2) || *rs.epsilon() != int(order) || order != expected {
                bad.push(format!("{ty}: eps {} 1+sum {} |G| {order} expected {expected}", rs.epsilon(), 1 + n2));
            }
        } else {
            // eps from the definition: half the highest-root norm plus half
            // the weighted simple-root norms
            let theta = rs.highest_root().to_rational();
            let mut eps = rs.pairing(&theta, &theta).unwrap() / int(2);
            for (i, n) in rs.highest_root().0.iter().enumerate() {
                eps += int(n * n) * rs.gram()[i][i].clone() / int(2);
            }
            let fs = qmckay::folding::build_folded_type(ty).unwrap();
            if *rs.epsilon() != eps || !verify_epsilon_invariance(&fs) {
                bad.push(format!("{ty}: eps {} vs definition {eps}", rs.epsilon()));
            }
        }
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} types up to rank 8", RootSystemType::all_up_to_rank(8).len())
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_5() -> Verdict {
    let table: [(&str, Vec<Vec<usize>>, &str); 5] = [
        ("A3", vec![vec![2, 1, 0]], "C2"),
        ("A5", vec![vec![4, 3, 2, 1, 0]], "C3"),
        ("D5", vec![vec![0, 1, 2, 4, 3]], "B4"),
        ("E6", vec![vec![5, 1, 4, 3, 2, 0]], "F4"),
        ("D4", vec![vec![2, 1, 3, 0]], "G2"),
    ];
    let mut bad = Vec::new();
    let mut roots_checked = 0;
    for (source, gens, target) in table {
        let rs = build(t(source));
        let gens: Vec<DiagramAutomorphism> = gens
            .into_iter()
            .map(|p| DiagramAutomorphism::new(&rs, p).unwrap())
            .collect();
        let group = generate_group(rs.rank(), &gens);
        if !diagram_automorphisms(&rs).iter().any(|a| a == &gens[0]) {
            bad.push(format!("{source}: generator is not a diagram automorphism"));
            continue;
        }
        let fs = match fold(&rs, &group) {
            Ok(fs) => fs,
            Err(e) => {
                bad.push(format!("{source}: {e}"));
                continue;
            }
        };
        let cartan: Vec<Vec<i64>> = fs.folded().cartan().to_vec();
        let got = classify(&cartan).map(|(ty, _)| ty.to_string());
        if got.as_deref() != Some(target) || fs.folded().rstype().to_string() != target {
            bad.push(format!("{source} folds to {got:?}, expected {target}"));
        }
        if !verify_epsilon_invariance(&fs) {
            bad.push(format!("{source}: eps not invariant"));
        }
        for beta in rs.positive_roots() {
            roots_checked += 1;
            if !verify_orbit_sum_lemma(&fs, beta).unwrap() {
                bad.push(format!("{source}: orbit sum fails at {:?}", beta.0));
            }
        }
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            format!("5 foldings, orbit-sum lemma on {roots_checked} source roots")
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_6() -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0;
    for ty in ade_types() {
        let rs = build(ty);
        let direct = gijk::compute_gijk(&rs).unwrap();
        let recursive = gijk::gijk_via_recursion(&rs).unwrap();
        let diffs = direct.differences(&recursive);
        if !diffs.is_empty() {
            bad.push(format!("{ty}: {} entries differ, first {:?}", diffs.len(), diffs[0]));
        }
        for i in 0..rs.rank() {
            if direct.get(i, i, i) != -8 {
                bad.push(format!("{ty}: G_{i}{i}{i} = {}", direct.get(i, i, i)));
            }
        }
        let report = gijk::verify_properties(&rs, &direct).unwrap();
        checked += report.checked;
        if let Some(v) = report.violations.first() {
            bad.push(format!("{ty}: {} {:?} {}", v.property, v.indices, v.detail));
        }
        let names: std::collections::BTreeSet<_> = report.violations.iter().map(|v| v.property).collect();
        if !names.is_empty() {
            bad.push(format!("{ty}: failing properties {names:?}"));
        }
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} types, {checked} property cases", ade_types().len())
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_7() -> Verdict {
    let mut bad = Vec::new();
    let mut worst = 0f64;
    for ty in ade_types() {
        let rs = build(ty);
        let group = mckay::build_group(ty).unwrap();
        let dev = mckay::mckay_pairing_deviation(&group, &rs).unwrap();
        worst = worst.max(dev);
        if dev > 1e-8 {
            bad.push(format!("{ty}: pairing off by {dev:e}"));
        }
        // McKay graph on non-trivial irreps, compared with the Dynkin graph
        let mult = mckay::mckay_multiplicities(&group).unwrap();
        let n = rs.rank();
        let mckay_graph: Vec<Vec<i64>> =
            (1..=n).map(|a| (1..=n).map(|b| if a == b { 0 } else { mult[a][b] }).collect()).collect();
        let dynkin: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0 } else { -rs.cartan()[i][j] }).collect())
            .collect();
        if iso::find_isomorphism(&mckay_graph, &dynkin).is_none() {
            bad.push(format!("{ty}: McKay graph is not the Dynkin diagram"));
        }
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} types, worst deviation {worst:.1e}", ade_types().len())
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_8() -> Verdict {
    let order = 8;
    let mut bad = Vec::new();
    let mut triples = 0;
    for ty in ade_types() {
        let rs = build(ty);
        let n = rs.rank();
        let backend = SeriesBackend::new(&rs, order);
        let basis: Vec<_> = (0..n).map(|i| AlgebraElement::basis(&backend, i + 1)).collect();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    triples += 1;
                    let fy = crc::fy_triple_series(&rs, order, (i, j, k)).unwrap();
                    let tp = three_point(&backend, &rs, &basis[i], &basis[j], &basis[k]).unwrap();
                    if fy != tp {
                        bad.push(format!("{ty} ({i},{j},{k}): {fy} vs {tp}"));
                    }
                }
            }
        }
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} types, {triples} symmetric triples, order {order}", ade_types().len())
        } else {
            bad.into_iter().take(3).collect::<Vec<_>>().join("; ")
        },
    )
}

fn complex_vector(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale)))
        .collect()
}

fn criterion_9() -> Verdict {
    let mut bad = Vec::new();
    let mut worst = 0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for ty in ade_types() {
        let rs = build(ty);
        let group = mckay::build_group(ty).unwrap();
        for _ in 0..50 {
            let y0 = complex_vector(&mut rng, 1, 1.0)[0];
            let y = complex_vector(&mut rng, rs.rank(), 1.0);
            let dev = crc::fx0_fy0_deviation(&group, &rs, 1.0, y0, &y).unwrap();
            worst = worst.max(dev);
            if dev > 1e-8 {
                bad.push(format!("{ty}: off by {dev:e}"));
                break;
            }
        }
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} types x 50 vectors, worst {worst:.1e}", ade_types().len())
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_10() -> Verdict {
    let mut bad = Vec::new();
    let mut worst = 0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    for ty in ade_types() {
        let rs = build(ty);
        let n = rs.rank();
        let group = mckay::build_group(ty).unwrap();
        let mut accepted = 0;
        while accepted < 20 {
            let y = complex_vector(&mut rng, n, 0.05);
            if !crc::is_damped(&group, &rs, &y).unwrap() {
                continue;
            }
            accepted += 1;
            let (i, j, k) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            let lhs = crc::fy_closed_form(&group, &rs, &y, (i, j, k)).unwrap();
            let rhs = crc::fy_h_sum(&group, &rs, &y, (i, j, k)).unwrap();
            let dev = (lhs - rhs).norm();
            worst = worst.max(dev);
            if dev > 1e-10 {
                bad.push(format!("{ty} ({i},{j},{k}): off by {dev:e}"));
            }
        }
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} types x 20 damped vectors, worst {worst:.1e}", ade_types().len())
        } else {
            bad.join("; ")
        },
    )
}

/// `d^m/dx^m` of `2 h(2 pi - x)` at 0 from the closed forms
/// `d^3 = -tan(x/2)` and `d^4 = -sec^2(x/2)/2`.
fn a1_closed_form(m: usize) -> f64 {
    let x: f64 = 0.0;
    match m {
        3 => -(x / 2.0).tan(),
        4 => -0.5 / (x / 2.0).cos().powi(2),
        _ => unreachable!(),
    }
}

fn criterion_11() -> Verdict {
    let mut bad = Vec::new();
    let a1 = build(t("A1"));
    let group = mckay::build_group(t("A1")).unwrap();
    let g = group.class_index("g").unwrap();
    for m in [3, 4] {
        let rec = crc::fx_invariant(&group, &a1, &vec![g; m]).unwrap();
        let expected = a1_closed_form(m);
        if (rec.value - expected).abs() > 1e-10 {
            bad.push(format!("A1 m={m}: {} vs closed form {expected}", rec.value));
        }
    }
    // the closed form itself, against a finite difference of the m = 3 term
    let h = 1e-5;
    let fd = (-(h / 2.0f64).tan() + (-h / 2.0f64).tan()) / (2.0 * h);
    if (fd - a1_closed_form(4)).abs() > 1e-8 {
        bad.push("closed form derivative disagrees with finite difference".into());
    }

    let mut records = 0;
    let mut worst = 0f64;
    for ty in RootSystemType::simply_laced_up_to_rank(6)
        .into_iter()
        .filter(|ty| matches!(ty.family(), Family::A | Family::D))
    {
        let rs = build(ty);
        let group = mckay::build_group(ty).unwrap();
        match crc::emit_prediction(&group, &rs, 5) {
            Ok(recs) => {
                records += recs.len();
                for r in recs {
                    worst = worst.max(r.imaginary_residue);
                }
            }
            Err(e) => bad.push(format!("{ty}: {e}")),
        }
    }
    if worst >= 1e-9 {
        bad.push(format!("imaginary residue {worst:e}"));
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            format!("A1 <g^3> = 0, <g^4> = -1/2; {records} A/D records, worst residue {worst:.1e}")
        } else {
            bad.join("; ")
        },
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("associativity", criterion_1),
        ("frobenius identity", criterion_2),
        ("weyl equivariance", criterion_3),
        ("epsilon ledger", criterion_4),
        ("folding table", criterion_5),
        ("triple tensor", criterion_6),
        ("mckay pairing", criterion_7),
        ("series bridge", criterion_8),
        ("quadratic transport", criterion_9),
        ("root-of-unity bridge", criterion_10),
        ("orbifold predictions", criterion_11),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2} {name}", idx + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let v = run();
        let status = if v.ok { "PASS" } else { "FAIL" };
        println!("{status} {label} ({:.1?}): {}", start.elapsed(), v.summary);
        if !v.ok {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
