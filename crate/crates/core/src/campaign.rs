//! Seeded property campaigns over random evaluation points, and the
//! exhaustive structural checks, all reporting through [`CheckOutcome`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::crc;
use crate::error::{Error, Result};
use crate::folding::{self, build_folded_type};
use crate::gijk;
use crate::mckay;
use crate::par::{map_range, Execution};
use crate::point::{EvalPoint, PointBackend};
use crate::qh::{star, star_coxeter_form, weyl_violation, AlgebraElement, MultiplicationTable};
use crate::rational::{format_rational, int, ratio};
use crate::root_system::{Family, RootSystem, RootSystemType};
use crate::series::{SeriesBackend, DEFAULT_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Associativity,
    Frobenius,
    Weyl,
    Rescaling,
    Coxeter,
    Epsilon,
    Folding,
    Gijk,
    Mckay,
    Crc,
}

impl CheckKind {
    pub const ALL: [CheckKind; 10] = [
        CheckKind::Associativity,
        CheckKind::Frobenius,
        CheckKind::Weyl,
        CheckKind::Rescaling,
        CheckKind::Coxeter,
        CheckKind::Epsilon,
        CheckKind::Folding,
        CheckKind::Gijk,
        CheckKind::Mckay,
        CheckKind::Crc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Associativity => "associativity",
            CheckKind::Frobenius => "frobenius",
            CheckKind::Weyl => "weyl",
            CheckKind::Rescaling => "rescaling",
            CheckKind::Coxeter => "coxeter",
            CheckKind::Epsilon => "epsilon",
            CheckKind::Folding => "folding",
            CheckKind::Gijk => "gijk",
            CheckKind::Mckay => "mckay",
            CheckKind::Crc => "crc",
        }
    }

    /// Whether the check makes sense for the type. The simply-laced checks
    /// skip B, C, F, G and the folding check needs a folded type.
    pub fn applies_to(self, t: RootSystemType) -> bool {
        let ade = matches!(t.family(), Family::A | Family::D | Family::E);
        match self {
            CheckKind::Coxeter | CheckKind::Gijk | CheckKind::Mckay | CheckKind::Crc => ade,
            CheckKind::Folding => !ade,
            _ => true,
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub index: u64,
    pub t: String,
    pub q: Vec<String>,
}

impl PointRecord {
    fn new(index: u64, p: &EvalPoint) -> Self {
        PointRecord {
            index,
            t: format_rational(p.t()),
            q: p.q().iter().map(format_rational).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PointRecord>,
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: CheckKind,
    #[serde(rename = "type")]
    pub type_label: String,
    pub seed: u64,
    pub trials: u64,
    pub cases: u64,
    pub violations: u64,
    pub counterexample: Option<Counterexample>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub seed: u64,
    pub trials: u64,
    pub order: u32,
    pub max_insertions: usize,
    pub execution: Execution,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0,
            trials: 200,
            order: DEFAULT_ORDER,
            max_insertions: 5,
            execution: Execution::Parallel,
        }
    }
}

/// Per-trial result: number of cases checked and the first failure.
type Trial = Result<(u64, Option<Counterexample>)>;

struct Tally {
    cases: u64,
    violations: u64,
    first: Option<Counterexample>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            violations: 0,
            first: None,
        }
    }

    fn case(&mut self, ok: bool, counterexample: impl FnOnce() -> Counterexample) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(counterexample());
            }
        }
    }

    fn absorb(&mut self, trial: (u64, Option<Counterexample>)) {
        self.cases += trial.0;
        if let Some(c) = trial.1 {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(c);
            }
        }
    }

    fn finish(self, check: CheckKind, t: RootSystemType, cfg: &CampaignConfig) -> CheckOutcome {
        CheckOutcome {
            check,
            type_label: t.to_string(),
            seed: cfg.seed,
            trials: cfg.trials,
            cases: self.cases,
            violations: self.violations,
            counterexample: self.first,
        }
    }
}

fn point_trials(
    rs: &RootSystem,
    cfg: &CampaignConfig,
    f: impl Fn(u64, &EvalPoint) -> Trial + Sync + Send,
) -> Result<Tally> {
    let results = map_range(cfg.execution, cfg.trials, |i| f(i, &EvalPoint::seeded(rs, cfg.seed, i)));
    let mut tally = Tally::new();
    for r in results {
        tally.absorb(r?);
    }
    Ok(tally)
}

fn at_point(index: u64, p: &EvalPoint, indices: Vec<usize>, detail: impl Into<String>) -> Counterexample {
    Counterexample {
        point: Some(PointRecord::new(index, p)),
        indices,
        detail: detail.into(),
    }
}

/// Commutativity and associativity of the basis products.
pub fn associativity_campaign(rs: &RootSystem, cfg: &CampaignConfig) -> Result<CheckOutcome> {
    let size = (rs.rank() + 1) as u64;
    let tally = point_trials(rs, cfg, |i, p| {
        let b = PointBackend::new(rs, p)?;
        let table = MultiplicationTable::new(&b, rs)?;
        if let Some((a, c)) = table.commutativity_violation() {
            return Ok((1, Some(at_point(i, p, vec![a, c], "e_a * e_b != e_b * e_a"))));
        }
        if let Some((a, c, e)) = table.associativity_violation() {
            return Ok((1, Some(at_point(i, p, vec![a, c, e], "(e_a * e_b) * e_c != e_a * (e_b * e_c)"))));
        }
        Ok((size * size * size, None))
    })?;
    Ok(tally.finish(CheckKind::Associativity, rs.rstype(), cfg))
}

pub fn frobenius_campaign(rs: &RootSystem, cfg: &CampaignConfig) -> Result<CheckOutcome> {
    let size = (rs.rank() + 1) as u64;
    let tally = point_trials(rs, cfg, |i, p| {
        let b = PointBackend::new(rs, p)?;
        let table = MultiplicationTable::new(&b, rs)?;
        Ok(match table.frobenius_violation(&b, rs)? {
            Some((a, c, e)) => (1, Some(at_point(i, p, vec![a, c, e], "<e_a * e_b, e_c> != <e_a, e_b * e_c>"))),
            None => (size * size * size, None),
        })
    })?;
    Ok(tally.finish(CheckKind::Frobenius, rs.rstype(), cfg))
}

/// Equivariance under each simple reflection, `trials` points per generator.
pub fn weyl_campaign(rs: &RootSystem, cfg: &CampaignConfig) -> Result<CheckOutcome> {
    let n = rs.rank();
    let size = (n + 1) as u64;
    let tally = point_trials(rs, cfg, |i, p| {
        for k in 0..n {
            if let Some((a, c)) = weyl_violation(rs, k, p)? {
                return Ok((1, Some(at_point(i, p, vec![k, a, c], "s_k(e_a * e_b) != (s_k e_a) * (s_k e_b)"))));
            }
        }
        Ok((n as u64 * size * (size + 1) / 2, None))
    })?;
    Ok(tally.finish(CheckKind::Weyl, rs.rstype(), cfg))
}

/// Associativity after scaling the form by 1/2, 2 and 3.
pub fn rescaling_campaign(rs: &RootSystem, cfg: &CampaignConfig) -> Result<CheckOutcome> {
    let scaled: Vec<RootSystem> = [ratio(1, 2), int(2), int(3)]
        .iter()
        .map(|l| rs.rescaled(l))
        .collect::<Result<_>>()?;
    let size = (rs.rank() + 1) as u64;
    let tally = point_trials(rs, cfg, |i, p| {
        for (s, r) in scaled.iter().enumerate() {
            let b = PointBackend::new(r, p)?;
            let table = MultiplicationTable::new(&b, r)?;
            if let Some((a, c, e)) = table.associativity_violation() {
                return Ok((1, Some(at_point(i, p, vec![s, a, c, e], "associator after rescaling"))));
            }
        }
        Ok((3 * size * size * size, None))
    })?;
    Ok(tally.finish(CheckKind::Rescaling, rs.rstype(), cfg))
}

/// The Coxeter-number form of the product agrees with the defining one.
pub fn coxeter_campaign(rs: &RootSystem, cfg: &CampaignConfig) -> Result<CheckOutcome> {
    let size = rs.rank() + 1;
    let tally = point_trials(rs, cfg, |i, p| {
        let b = PointBackend::new(rs, p)?;
        let basis: Vec<_> = (0..size).map(|a| AlgebraElement::basis(&b, a)).collect();
        let mut cases = 0;
        for a in 0..size {
            for c in a..size {
                cases += 1;
                if star(&b, rs, &basis[a], &basis[c])? != star_coxeter_form(&b, rs, &basis[a], &basis[c])? {
                    return Ok((cases, Some(at_point(i, p, vec![a, c], "Coxeter form differs"))));
                }
            }
        }
        Ok((cases, None))
    })?;
    Ok(tally.finish(CheckKind::Coxeter, rs.rstype(), cfg))
}

/// `eps = 1 + sum n_i^2` for simply-laced types, `eps = |G|`, and
/// invariance of `eps` under folding for the others.
pub fn epsilon_check(rs: &RootSystem, cfg: &CampaignConfig) -> Result<CheckOutcome> {
    let t = rs.rstype();
    let mut tally = Tally::new();
    let eps = rs.epsilon().clone();
    let detail = |s: String| Counterexample {
        point: None,
        indices: Vec::new(),
        detail: s,
    };
    if CheckKind::Mckay.applies_to(t) {
        let squares = int(1 + rs.highest_root().0.iter().map(|n| n * n).sum::<i64>());
        tally.case(eps == squares, || detail(format!("eps = {eps} but 1 + sum n_i^2 = {squares}")));
        let order = mckay::build_group(t)?.order();
        tally.case(eps == int(order as i64), || detail(format!("eps = {eps} but |G| = {order}")));
        let expected = match (t.family(), t.rank()) {
            (Family::A, n) => n + 1,
            (Family::D, n) => 4 * (n - 2),
            (_, 6) => 24,
            (_, 7) => 48,
            _ => 120,
        };
        tally.case(order == expected, || detail(format!("|G| = {order}, expected {expected}")));
    } else {
        let fs = build_folded_type(t)?;
        tally.case(folding::verify_epsilon_invariance(&fs), || {
            detail(format!("eps changes when folding {} into {t}", fs.source().rstype()))
        });
    }
    Ok(tally.finish(CheckKind::Epsilon, t, cfg))
}

/// The folding lemmas for every positive root of the source system.
pub fn folding_check(rs: &RootSystem, cfg: &CampaignConfig) -> Result<CheckOutcome> {
    let fs = build_folded_type(rs.rstype())?;
    let mut tally = Tally::new();
    tally.case(fs.folded().cartan() == rs.cartan(), || Counterexample {
        point: None,
        indices: Vec::new(),
        detail: "folded Cartan matrix differs from the standard one".into(),
    });
    let checks: [(&str, fn(&folding::FoldedSystem, &crate::Root) -> Result<bool>); 3] = [
        ("orbit sum", folding::verify_orbit_sum_lemma),
        ("orbit orthogonality", folding::verify_orbit_orthogonality),
        ("norm formula", folding::verify_norm_formula),
    ];
    for (idx, beta) in fs.source().positive_roots().iter().enumerate() {
        for (name, check) in &checks {
            let ok = check(&fs, beta)?;
            tally.case(ok, || Counterexample {
                point: None,
                indices: vec![idx],
                detail: format!("{name} fails for {:?}", beta.0),
            });
        }
    }
    Ok(tally.finish(CheckKind::Folding, rs.rstype(), cfg))
}

pub fn gijk_check(rs: &RootSystem, cfg: &CampaignConfig) -> Result<CheckOutcome> {
    let direct = gijk::compute_gijk(rs)?;
    let recursive = gijk::gijk_via_recursion(rs)?;
    let report = gijk::verify_properties(rs, &direct)?;
    let mut tally = Tally::new();
    let n = rs.rank();
    let diffs = direct.differences(&recursive);
    tally.cases += (n * n * n) as u64;
    if let Some(&(i, j, k)) = diffs.first() {
        tally.violations += diffs.len() as u64;
        tally.first = Some(Counterexample {
            point: None,
            indices: vec![i, j, k],
            detail: format!(
                "direct sum gives {} but the recursion gives {}",
                direct.get(i, j, k),
                recursive.get(i, j, k)
            ),
        });
    }
    tally.cases += report.checked as u64;
    tally.violations += report.violations.len() as u64;
    if tally.first.is_none() {
        tally.first = report.violations.first().map(|v| Counterexample {
            point: None,
            indices: v.indices.clone(),
            detail: format!("{}: {}", v.property, v.detail),
        });
    }
    Ok(tally.finish(CheckKind::Gijk, rs.rstype(), cfg))
}

fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_complex(rng: &mut ChaCha8Rng, n: usize, scale: f64, real: bool) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let re = rng.random_range(-scale..scale);
            let im = if real { 0.0 } else { rng.random_range(-scale..scale) };
            Complex64::new(re, im)
        })
        .collect()
}

/// Samples per type used by the float checks.
pub const TRANSPORT_SAMPLES: u64 = 50;
pub const BRIDGE_SAMPLES: u64 = 20;

/// The character pairing against the Cartan matrix and the transport of
/// the quadratic form, over [`TRANSPORT_SAMPLES`] real vectors.
pub fn mckay_check(rs: &RootSystem, cfg: &CampaignConfig) -> Result<CheckOutcome> {
    let group = mckay::build_group(rs.rstype())?;
    let mut tally = Tally::new();
    let dev = mckay::mckay_pairing_deviation(&group, rs)?;
    tally.case(dev <= mckay::CHARACTER_TOL, || Counterexample {
        point: None,
        indices: Vec::new(),
        detail: format!("character pairing is off by {dev:e}"),
    });
    let cov = mckay::change_of_variables(&group, rs)?;
    for s in 0..TRANSPORT_SAMPLES {
        let y = random_complex(&mut sample_rng(cfg.seed, s), rs.rank(), 1.0, true);
        let dev = mckay::quadratic_transport_deviation(&group, rs, &cov, &y)?;
        tally.case(dev <= mckay::CHARACTER_TOL, || Counterexample {
            point: None,
            indices: vec![s as usize],
            detail: format!("quadratic form transport is off by {dev:e}"),
        });
    }
    Ok(tally.finish(CheckKind::Mckay, rs.rstype(), cfg))
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Everything on the crepant-resolution side: the series bridge against
/// the three-point function, `F_X^0 = F_Y^0`, the root-of-unity bridge, and
/// reality plus monodromy vanishing of the predicted invariants.
pub fn crc_check(rs: &RootSystem, cfg: &CampaignConfig) -> Result<CheckOutcome> {
    let n = rs.rank();
    let group = mckay::build_group(rs.rstype())?;
    let mut tally = Tally::new();
    let none = |indices: Vec<usize>, detail: String| Counterexample {
        point: None,
        indices,
        detail,
    };

    let series = SeriesBackend::new(rs, cfg.order);
    let all = triples(n);
    let series_results = map_range(cfg.execution, all.len() as u64, |idx| -> Result<bool> {
        let (i, j, k) = all[idx as usize];
        let fy = crc::fy_triple_series(rs, cfg.order, (i, j, k))?;
        let basis = |a: usize| AlgebraElement::basis(&series, a + 1);
        let tp = crate::qh::three_point(&series, rs, &basis(i), &basis(j), &basis(k))?;
        Ok(fy == tp)
    });
    for (idx, r) in series_results.into_iter().enumerate() {
        let (i, j, k) = all[idx];
        tally.case(r?, || none(vec![i, j, k], "resolution potential differs from the three-point series".into()));
    }

    for s in 0..TRANSPORT_SAMPLES {
        let mut rng = sample_rng(cfg.seed, s);
        let y0 = random_complex(&mut rng, 1, 1.0, false)[0];
        let y = random_complex(&mut rng, n, 1.0, false);
        let dev = crc::fx0_fy0_deviation(&group, rs, 1.0, y0, &y)?;
        tally.case(dev <= 1e-8, || none(vec![s as usize], format!("F_X^0 - F_Y^0 = {dev:e}")));
    }

    let mut sample = 0u64;
    for s in 0..BRIDGE_SAMPLES {
        let y = loop {
            let y = random_complex(&mut sample_rng(cfg.seed ^ 0xb51d, sample), n, 0.05, false);
            sample += 1;
            if crc::is_damped(&group, rs, &y)? {
                break y;
            }
        };
        for &(i, j, k) in &all {
            let lhs = crc::fy_closed_form(&group, rs, &y, (i, j, k))?;
            let rhs = crc::fy_h_sum(&group, rs, &y, (i, j, k))?;
            let dev = (lhs - rhs).norm();
            tally.case(dev <= crc::BRIDGE_TOL, || {
                none(vec![s as usize, i, j, k], format!("root-of-unity bridge is off by {dev:e}"))
            });
        }
    }

    for w in crc::root_weights(rs) {
        tally.case(w >= 1 && w < group.order() as i64, || {
            none(Vec::new(), format!("root weight {w} reaches a pole of H"))
        });
    }

    if cfg.max_insertions >= 3 {
        for rec in crc::emit_prediction(&group, rs, cfg.max_insertions)? {
            let allowed = group.monodromy_allows(&rec.class_indices);
            tally.case(allowed || rec.value.abs() <= crc::IMAGINARY_TOL, || {
                none(
                    rec.class_indices.clone(),
                    format!("monodromy forbids {:?} but the value is {:e}", rec.classes, rec.value),
                )
            });
        }
    }
    Ok(tally.finish(CheckKind::Crc, rs.rstype(), cfg))
}

pub fn run_check(kind: CheckKind, rs: &RootSystem, cfg: &CampaignConfig) -> Result<CheckOutcome> {
    if cfg.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if !kind.applies_to(rs.rstype()) {
        return Err(Error::InvalidArgument(format!("{kind} does not apply to {}", rs.rstype())));
    }
    match kind {
        CheckKind::Associativity => associativity_campaign(rs, cfg),
        CheckKind::Frobenius => frobenius_campaign(rs, cfg),
        CheckKind::Weyl => weyl_campaign(rs, cfg),
        CheckKind::Rescaling => rescaling_campaign(rs, cfg),
        CheckKind::Coxeter => coxeter_campaign(rs, cfg),
        CheckKind::Epsilon => epsilon_check(rs, cfg),
        CheckKind::Folding => folding_check(rs, cfg),
        CheckKind::Gijk => gijk_check(rs, cfg),
        CheckKind::Mckay => mckay_check(rs, cfg),
        CheckKind::Crc => crc_check(rs, cfg),
    }
}

/// The checks that apply to `t`, in [`CheckKind::ALL`] order.
pub fn applicable_checks(t: RootSystemType) -> Vec<CheckKind> {
    CheckKind::ALL.into_iter().filter(|k| k.applies_to(t)).collect()
}
