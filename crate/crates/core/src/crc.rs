//! Genus-zero potentials on both sides of the crepant resolution: third
//! derivatives of the resolution potential, their specialization at roots of
//! unity, and the predicted orbifold invariants.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mckay::{change_of_variables, orbifold_quadratic_form, GroupData};
use crate::rational::{approximate, int, ratio, to_f64, Rational};
use crate::root_system::{Root, RootSystem, RootSystemType};
use crate::scalar::Scalar;
use crate::series::{Laurent, QSeries};

/// Largest imaginary part tolerated in a predicted invariant.
pub const IMAGINARY_TOL: f64 = 1e-9;
/// Agreement required between the two evaluations of the third derivative.
pub const BRIDGE_TOL: f64 = 1e-10;

fn require_match(group: &GroupData, rs: &RootSystem) -> Result<()> {
    if rs.rstype() != group.rstype() || !rs.is_normalized_simply_laced() {
        return Err(Error::InvalidArgument(format!(
            "group of {} used with root system {}",
            group.rstype(),
            rs.rstype()
        )));
    }
    Ok(())
}

fn check_triple(rs: &RootSystem, ijk: (usize, usize, usize)) -> Result<()> {
    for idx in [ijk.0, ijk.1, ijk.2] {
        if idx >= rs.rank() {
            return Err(Error::IndexOutOfRange { index: idx, rank: rs.rank() });
        }
    }
    Ok(())
}

fn cubic(rs: &RootSystem, beta: &Root, (i, j, k): (usize, usize, usize)) -> Rational {
    rs.pair_simple_root(i, beta) * rs.pair_simple_root(j, beta) * rs.pair_simple_root(k, beta)
}

/// `d^3 F_Y / dy_i dy_j dy_k` at `y = 0` as a series in `q`, assembled from
/// the classical triple intersection and the degree-`d beta` invariants
/// `2t/d^3` through the divisor axiom. Coefficients are multiples of `t`.
pub fn fy_triple_series(rs: &RootSystem, order: u32, ijk: (usize, usize, usize)) -> Result<QSeries> {
    if !rs.is_normalized_simply_laced() {
        return Err(Error::NotSimplyLaced("the resolution potential"));
    }
    check_triple(rs, ijk)?;
    let n = rs.rank();
    let mut classical = Rational::zero();
    let mut out = QSeries::zero(n, order);
    for beta in rs.positive_roots() {
        let aaa = cubic(rs, beta, ijk);
        classical -= &aaa;
        let height = beta.height() as u32;
        for d in 1..=(order / height) {
            let d = d as i64;
            let cover = ratio(2, d * d * d);
            // each insertion of alpha_i contributes (alpha_i . d beta) = -d <alpha_i, beta>
            let divisor = int(-d).pow(3) * &aaa;
            let exps: Vec<u32> = beta.0.iter().map(|&b| (b * d) as u32).collect();
            out = out.add(&QSeries::monomial(order, exps, Laurent::monomial(1, cover * divisor)));
        }
    }
    Ok(out.add(&QSeries::constant(n, order, Laurent::monomial(1, classical))))
}

/// `q_j = exp(2 pi i n_j / |G|)` with `n_j` the highest-root coefficients.
pub fn root_of_unity_point(group: &GroupData, rs: &RootSystem) -> Vec<Complex64> {
    let g = group.order() as f64;
    rs.highest_root()
        .0
        .iter()
        .map(|&n| Complex64::from_polar(1.0, 2.0 * PI * n as f64 / g))
        .collect()
}

/// The closed form `-sum_beta aaa (1 + z_beta)/(1 - z_beta)` with
/// `z_beta = q^beta exp(-sum_j <beta, alpha_j> y_j)` at the root-of-unity
/// point, as the coefficient of `t`.
pub fn fy_closed_form(
    group: &GroupData,
    rs: &RootSystem,
    y: &[Complex64],
    ijk: (usize, usize, usize),
) -> Result<Complex64> {
    require_match(group, rs)?;
    check_triple(rs, ijk)?;
    if y.len() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), got: y.len() });
    }
    let mut acc = Complex64::zero();
    for beta in rs.positive_roots() {
        let (z, one_minus_z) = damped_monomial(group, rs, beta, y);
        if one_minus_z.norm() < 1e-8 {
            return Err(Error::Pole { root: beta.0.clone() });
        }
        acc -= (1.0 + z) / one_minus_z * to_f64(&cubic(rs, beta, ijk));
    }
    Ok(acc)
}

/// `z_beta = q^beta exp(-sum_j <beta, alpha_j> y_j)` together with `1 - z_beta`.
/// The phase of `q^beta` is reduced mod `|G|` in integers and `1 - z` goes
/// through `expm1`, so neither loses digits near `z = 1`.
fn damped_monomial(group: &GroupData, rs: &RootSystem, beta: &Root, y: &[Complex64]) -> (Complex64, Complex64) {
    let order = group.order() as i64;
    let weight: i64 = rs.highest_root().0.iter().zip(&beta.0).map(|(n, b)| n * b).sum();
    let mut damping = Complex64::zero();
    for (j, yj) in y.iter().enumerate() {
        damping += yj * to_f64(&rs.pair_simple_root(j, beta));
    }
    let w = Complex64::new(0.0, 2.0 * PI * weight.rem_euclid(order) as f64 / order as f64) - damping;
    (w.exp(), -expm1(w))
}

/// `exp(w) - 1` without cancellation for small `w`.
fn expm1(w: Complex64) -> Complex64 {
    let half = (w.im / 2.0).sin();
    let em1 = w.re.exp_m1();
    Complex64::new(em1 * w.im.cos() - 2.0 * half * half, w.re.exp() * w.im.sin())
}

/// Smallest `|1 - z_beta|` a damped sample may have. Closer samples count
/// as pole collisions: both sides of the bridge lose digits in proportion
/// to `1 / |1 - z_beta|^2` there.
pub const DAMPED_MARGIN: f64 = 0.02;

/// `min_beta |1 - z_beta|` at the root-of-unity point.
pub fn pole_distance(group: &GroupData, rs: &RootSystem, y: &[Complex64]) -> Result<f64> {
    require_match(group, rs)?;
    if y.len() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), got: y.len() });
    }
    Ok(rs
        .positive_roots()
        .iter()
        .map(|beta| damped_monomial(group, rs, beta, y).1.norm())
        .fold(f64::INFINITY, f64::min))
}

pub fn is_damped(group: &GroupData, rs: &RootSystem, y: &[Complex64]) -> Result<bool> {
    Ok(pole_distance(group, rs, y)? >= DAMPED_MARGIN)
}

/// `Q_beta = pi + sum_j (2 pi n_j b_j / |G| + i <beta, alpha_j> y_j)`.
pub fn q_beta(group: &GroupData, rs: &RootSystem, beta: &Root, y: &[Complex64]) -> Complex64 {
    let mut imag = Complex64::zero();
    for (j, yj) in y.iter().enumerate() {
        imag += yj * to_f64(&rs.pair_simple_root(j, beta));
    }
    Complex64::new(q_beta_base(group, rs, beta), 0.0) + Complex64::i() * imag
}

/// `H(u) = tan(-u/2) / 2` on complex arguments.
pub fn h_complex(u: Complex64) -> Complex64 {
    (-u / 2.0).tan() / 2.0
}

/// The same third derivative written as `-2i sum_beta aaa H(Q_beta)`.
pub fn fy_h_sum(group: &GroupData, rs: &RootSystem, y: &[Complex64], ijk: (usize, usize, usize)) -> Result<Complex64> {
    require_match(group, rs)?;
    check_triple(rs, ijk)?;
    if y.len() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), got: y.len() });
    }
    let mut acc = Complex64::zero();
    for beta in rs.positive_roots() {
        acc += h_at(group, rs, beta, y) * to_f64(&cubic(rs, beta, ijk));
    }
    Ok(acc * Complex64::new(0.0, -2.0))
}

/// `H(Q_beta)` as `cot(theta) / 2`, `theta = pi r / |G| + i d / 2`, where
/// `-Q_beta / 2 = -pi/2 - theta` and `r` is the weight of `beta` reduced to
/// `(-|G|/2, |G|/2]`. Avoids evaluating `tan` next to its pole at `pi/2`.
fn h_at(group: &GroupData, rs: &RootSystem, beta: &Root, y: &[Complex64]) -> Complex64 {
    let order = group.order() as i64;
    let weight: i64 = rs.highest_root().0.iter().zip(&beta.0).map(|(n, b)| n * b).sum();
    let mut r = weight.rem_euclid(order);
    if 2 * r > order {
        r -= order;
    }
    let mut d = Complex64::zero();
    for (j, yj) in y.iter().enumerate() {
        d += yj * to_f64(&rs.pair_simple_root(j, beta));
    }
    let theta = Complex64::new(PI * r as f64 / order as f64, 0.0) + Complex64::i() * d / 2.0;
    theta.cos() / theta.sin() / 2.0
}

/// Compares [`fy_closed_form`] with [`fy_h_sum`] to [`BRIDGE_TOL`].
pub fn specialization_bridge_check(
    group: &GroupData,
    rs: &RootSystem,
    y: &[Complex64],
    ijk: (usize, usize, usize),
) -> Result<bool> {
    let lhs = fy_closed_form(group, rs, y, ijk)?;
    let rhs = fy_h_sum(group, rs, y, ijk)?;
    Ok((lhs - rhs).norm() <= BRIDGE_TOL)
}

/// Coefficients of `P_k` with `H^{(k)}(u) = P_k(tan(u/2))`.
fn tan_polynomial(k: usize) -> Vec<f64> {
    let mut p = vec![0.0, -0.5];
    for _ in 0..k {
        // d/du P(T) = P'(T) (1 + T^2) / 2
        let mut next = vec![0.0; p.len() + 1];
        for (e, &c) in p.iter().enumerate().skip(1) {
            let d = c * e as f64 / 2.0;
            next[e - 1] += d;
            next[e + 1] += d;
        }
        p = next;
    }
    p
}

/// `H^{(k)}(u0)`, which is also `h^{(k+3)}(u0)`.
pub fn h_derivative(k: usize, u0: f64) -> Result<f64> {
    if (u0 / 2.0).cos().abs() < 1e-12 {
        return Err(Error::HPole(u0));
    }
    let t = (u0 / 2.0).tan();
    Ok(tan_polynomial(k).iter().rev().fold(0.0, |acc, c| acc * t + c))
}

/// `pi + 2 pi (sum_k n_k b_k) / |G|`.
pub fn q_beta_base(group: &GroupData, rs: &RootSystem, beta: &Root) -> f64 {
    let weight: i64 = rs.highest_root().0.iter().zip(&beta.0).map(|(n, b)| n * b).sum();
    PI + 2.0 * PI * weight as f64 / group.order() as f64
}

/// `d Q_beta / d x_[c]`: the sum over the `|c|` elements of the class of
/// `(1/|G|) sum_k b_k sqrt(2 - chi_V) conj(chi_k)`.
pub fn q_beta_slope(group: &GroupData, beta: &Root, class: usize) -> Complex64 {
    let cl = &group.classes()[class];
    let root = (2.0 - cl.chi_v).max(0.0).sqrt();
    let mut acc = Complex64::zero();
    for (k, &b) in beta.0.iter().enumerate() {
        acc += group.node_character(k)[class].conj() * b as f64;
    }
    acc * root * cl.size as f64 / group.order() as f64
}

/// One predicted invariant `d^m F_X / dx_[c_1] ... dx_[c_m]` at `x = 0`, as
/// the coefficient of `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantRecord {
    pub rstype: RootSystemType,
    pub group_order: usize,
    /// Class indices, non-decreasing.
    pub class_indices: Vec<usize>,
    pub classes: Vec<String>,
    pub m: usize,
    pub value: f64,
    pub value_rational: Rational,
    pub imaginary_residue: f64,
    /// Largest insertion count of the run that produced the record.
    pub max_insertions: usize,
}

fn invariant_value(group: &GroupData, rs: &RootSystem, classes: &[usize]) -> Result<Complex64> {
    let m = classes.len();
    let mut acc = Complex64::zero();
    for beta in rs.positive_roots() {
        let slope: Complex64 = classes.iter().map(|&c| q_beta_slope(group, beta, c)).product();
        if slope.norm() == 0.0 {
            continue;
        }
        acc += slope * h_derivative(m - 3, q_beta_base(group, rs, beta))?;
    }
    Ok(acc * 2.0)
}

pub fn fx_invariant(group: &GroupData, rs: &RootSystem, classes: &[usize]) -> Result<InvariantRecord> {
    fx_invariant_in_run(group, rs, classes, classes.len())
}

fn fx_invariant_in_run(
    group: &GroupData,
    rs: &RootSystem,
    classes: &[usize],
    max_insertions: usize,
) -> Result<InvariantRecord> {
    require_match(group, rs)?;
    if classes.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "invariants need at least 3 insertions, got {}",
            classes.len()
        )));
    }
    if let Some(&bad) = classes.iter().find(|&&c| c == 0 || c >= group.classes().len()) {
        return Err(Error::InvalidArgument(format!("class {bad} is not a non-trivial class")));
    }
    let mut sorted = classes.to_vec();
    sorted.sort_unstable();
    let value = invariant_value(group, rs, &sorted)?;
    if value.im.abs() > IMAGINARY_TOL {
        return Err(Error::ImaginaryResidue {
            residue: value.im.abs(),
            tolerance: IMAGINARY_TOL,
        });
    }
    Ok(InvariantRecord {
        rstype: group.rstype(),
        group_order: group.order(),
        classes: sorted.iter().map(|&c| group.classes()[c].label.clone()).collect(),
        class_indices: sorted,
        m: classes.len(),
        value: value.re,
        value_rational: approximate(value.re, IMAGINARY_TOL, 1_000_000),
        imaginary_residue: value.im.abs(),
        max_insertions,
    })
}

/// Every non-decreasing sequence of length `m` drawn from `1..k`.
fn multisets(k: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k <= 1 {
        return out;
    }
    let mut cur = vec![1; m];
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..m).rev().find(|&p| cur[p] < k - 1) else {
            return out;
        };
        let v = cur[pos] + 1;
        for x in &mut cur[pos..] {
            *x = v;
        }
    }
}

/// All invariants with `3 <= m <= max_insertions` insertions of non-trivial
/// classes, ordered by `m` and then lexicographically.
pub fn emit_prediction(group: &GroupData, rs: &RootSystem, max_insertions: usize) -> Result<Vec<InvariantRecord>> {
    if max_insertions < 3 {
        return Err(Error::InvalidArgument(
            "terms with fewer than 3 insertions are not defined".into(),
        ));
    }
    let k = group.classes().len();
    let mut out = Vec::new();
    for m in 3..=max_insertions {
        for classes in multisets(k, m) {
            out.push(fx_invariant_in_run(group, rs, &classes, max_insertions)?);
        }
    }
    Ok(out)
}

/// `y0^3 / (6 t^2 |G|) - (y0/2) sum <alpha_i, alpha_j> y_i y_j`.
pub fn fy0(group: &GroupData, rs: &RootSystem, t: f64, y0: Complex64, y: &[Complex64]) -> Complex64 {
    let mut form = Complex64::zero();
    for (i, yi) in y.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            form += yi * yj * to_f64(&rs.gram()[i][j]);
        }
    }
    y0.powi(3) / (6.0 * t * t * group.order() as f64) - y0 / 2.0 * form
}

/// `x0^3 / (6 t^2 |G|) + (x0/2) (1/|G|) sum_{g != 1} x_[g] x_[g^{-1}]`.
pub fn fx0(group: &GroupData, t: f64, x0: Complex64, x: &[Complex64], classes: &[usize]) -> Complex64 {
    x0.powi(3) / (6.0 * t * t * group.order() as f64) + x0 / 2.0 * orbifold_quadratic_form(group, classes, x)
}

/// `|F_X^0 - F_Y^0|` after `x0 = y0`, `x = L y`.
pub fn fx0_fy0_deviation(group: &GroupData, rs: &RootSystem, t: f64, y0: Complex64, y: &[Complex64]) -> Result<f64> {
    if y.len() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), got: y.len() });
    }
    if t == 0.0 {
        return Err(Error::ZeroT);
    }
    let cov = change_of_variables(group, rs)?;
    let x = cov.apply(y);
    Ok((fx0(group, t, y0, &x, &cov.classes) - fy0(group, rs, t, y0, y)).norm())
}

pub fn fx0_fy0_check(group: &GroupData, rs: &RootSystem, t: f64, y0: Complex64, y: &[Complex64]) -> Result<bool> {
    Ok(fx0_fy0_deviation(group, rs, t, y0, y)? <= 1e-8)
}

/// `sum_k n_k b_k` for every positive root; the pole-free range is `1..|G|`.
pub fn root_weights(rs: &RootSystem) -> Vec<i64> {
    let theta = rs.highest_root();
    rs.positive_roots()
        .iter()
        .map(|beta| theta.0.iter().zip(&beta.0).map(|(n, b)| n * b).sum())
        .collect()
}
