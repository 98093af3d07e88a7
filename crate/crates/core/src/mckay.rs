//! Finite subgroups of SU(2), their character tables, and the McKay
//! correspondence with simply-laced Dynkin diagrams.
//!
//! Elements are explicit 2x2 complex matrices; two elements are identified
//! when their entries agree after rounding to 1e-9. Character tables come
//! from the class-multiplication matrices: a random combination of them has
//! the central characters as eigenvectors.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso;
use crate::rational::to_f64;
use crate::root_system::{Family, RootSystem, RootSystemType};

pub type Su2 = [[Complex64; 2]; 2];

/// Largest group the closure will build before giving up.
pub const GROUP_BOUND: usize = 200;
/// Tolerance for every character identity.
pub const CHARACTER_TOL: f64 = 1e-8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `a + b i + c j + d k` as `[[a + b i, c + d i], [-c + d i, a - b i]]`.
pub fn quaternion(a: f64, b: f64, cc: f64, d: f64) -> Su2 {
    [[c(a, b), c(cc, d)], [c(-cc, d), c(a, -b)]]
}

pub fn mat_mul(x: &Su2, y: &Su2) -> Su2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

/// Conjugate transpose, which is the inverse in SU(2).
pub fn adjoint(x: &Su2) -> Su2 {
    [[x[0][0].conj(), x[1][0].conj()], [x[0][1].conj(), x[1][1].conj()]]
}

pub fn trace(x: &Su2) -> Complex64 {
    x[0][0] + x[1][1]
}

fn identity() -> Su2 {
    quaternion(1.0, 0.0, 0.0, 0.0)
}

fn key(x: &Su2) -> [i64; 8] {
    let r = |v: f64| {
        let k = (v * 1e9).round() as i64;
        if k == 0 {
            0
        } else {
            k
        }
    };
    [
        r(x[0][0].re),
        r(x[0][0].im),
        r(x[0][1].re),
        r(x[0][1].im),
        r(x[1][0].re),
        r(x[1][0].im),
        r(x[1][1].re),
        r(x[1][1].im),
    ]
}

/// Standard generators: `Z_{n+1}` for `A_n`, the binary dihedral group of
/// order `4(n-2)` for `D_n`, and the binary tetrahedral, octahedral and
/// icosahedral groups for `E_6, E_7, E_8`.
pub fn generators(t: RootSystemType) -> Result<Vec<Su2>> {
    let n = t.rank();
    let rotation = |m: usize| {
        let a = 2.0 * PI / m as f64;
        quaternion(a.cos(), a.sin(), 0.0, 0.0)
    };
    let omega = quaternion(0.5, 0.5, 0.5, 0.5);
    Ok(match (t.family(), n) {
        (Family::A, _) => vec![rotation(n + 1)],
        (Family::D, _) => vec![rotation(2 * (n - 2)), quaternion(0.0, 0.0, 1.0, 0.0)],
        (Family::E, 6) => vec![quaternion(0.0, 1.0, 0.0, 0.0), omega],
        (Family::E, 7) => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            vec![quaternion(0.0, 1.0, 0.0, 0.0), omega, quaternion(s, s, 0.0, 0.0)]
        }
        (Family::E, 8) => {
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            vec![omega, quaternion(phi / 2.0, 0.5 / phi, 0.5, 0.0)]
        }
        _ => return Err(Error::NotSimplyLaced("the McKay correspondence")),
    })
}

/// All products of the generators, identity first, in breadth-first order.
pub fn close(gens: &[Su2], bound: usize) -> Result<Vec<Su2>> {
    let mut elements = vec![identity()];
    let mut index: HashMap<[i64; 8], usize> = HashMap::new();
    index.insert(key(&elements[0]), 0);
    let mut cursor = 0;
    while cursor < elements.len() {
        let x = elements[cursor];
        for g in gens {
            let y = mat_mul(&x, g);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key(&y)) {
                e.insert(elements.len());
                elements.push(y);
                if elements.len() > bound {
                    return Err(Error::GroupTooLarge { bound });
                }
            }
        }
        cursor += 1;
    }
    Ok(elements)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjugacyClass {
    pub label: String,
    pub size: usize,
    /// Order of every element in the class.
    pub order: usize,
    /// Index into [`GroupData::elements`].
    pub representative: usize,
    /// Index of the class of inverses.
    pub inverse: usize,
    /// The trace of the defining representation.
    pub chi_v: f64,
}

#[derive(Clone, Debug)]
pub struct GroupData {
    rstype: RootSystemType,
    elements: Vec<Su2>,
    products: Vec<usize>,
    element_class: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    char_table: Vec<Vec<Complex64>>,
    dims: Vec<usize>,
    chi_v_row: Option<usize>,
    node_match: Vec<usize>,
}

impl GroupData {
    pub fn rstype(&self) -> RootSystemType {
        self.rstype
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Su2] {
        &self.elements
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.products[a * self.order() + b]
    }

    pub fn element_class(&self, a: usize) -> usize {
        self.element_class[a]
    }

    /// Identity class first.
    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    /// Rows are irreducible characters (trivial first), columns follow
    /// [`Self::classes`].
    pub fn char_table(&self) -> &[Vec<Complex64>] {
        &self.char_table
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn chi_v(&self) -> Vec<f64> {
        self.classes.iter().map(|c| c.chi_v).collect()
    }

    /// Row of the defining representation when it is irreducible.
    pub fn chi_v_row(&self) -> Option<usize> {
        self.chi_v_row
    }

    /// `node_match()[i]` is the character-table row of Dynkin node `i`.
    pub fn node_match(&self) -> &[usize] {
        &self.node_match
    }

    /// The character attached to Dynkin node `i`.
    pub fn node_character(&self, i: usize) -> &[Complex64] {
        &self.char_table[self.node_match[i]]
    }

    /// Class indices other than the identity.
    pub fn non_trivial_classes(&self) -> std::ops::Range<usize> {
        1..self.classes.len()
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }

    /// Whether the identity is a product `g_1 ... g_m` with `g_l` in
    /// class `classes[l]`.
    pub fn monodromy_allows(&self, classes: &[usize]) -> bool {
        let g = self.order();
        let members: Vec<Vec<usize>> = (0..self.classes.len())
            .map(|c| (0..g).filter(|&e| self.element_class[e] == c).collect())
            .collect();
        let mut reach = vec![false; g];
        reach[0] = true;
        for &cl in classes {
            let mut next = vec![false; g];
            for (a, _) in reach.iter().enumerate().filter(|(_, r)| **r) {
                for &b in &members[cl] {
                    next[self.product(a, b)] = true;
                }
            }
            reach = next;
        }
        reach[0]
    }
}

/// Enumerates the group of a simply-laced type and computes everything the
/// correspondence needs.
pub fn build_group(t: RootSystemType) -> Result<GroupData> {
    let rs = RootSystem::build_ade(t).map_err(|_| Error::NotSimplyLaced("the McKay correspondence"))?;
    let elements = close(&generators(t)?, GROUP_BOUND)?;
    let g = elements.len();
    let index: HashMap<[i64; 8], usize> = elements.iter().enumerate().map(|(i, x)| (key(x), i)).collect();
    let lookup = |x: &Su2| {
        index
            .get(&key(x))
            .copied()
            .ok_or_else(|| Error::CharacterTable("product left the group".into()))
    };
    let mut products = Vec::with_capacity(g * g);
    for x in &elements {
        for y in &elements {
            products.push(lookup(&mat_mul(x, y))?);
        }
    }
    let inverse: Vec<usize> = elements.iter().map(|x| lookup(&adjoint(x))).collect::<Result<_>>()?;

    // conjugacy classes in order of first appearance
    let mut raw_class = vec![usize::MAX; g];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for a in 0..g {
        if raw_class[a] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = (0..g)
            .map(|h| products[products[h * g + a] * g + inverse[h]])
            .collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            raw_class[m] = raw.len();
        }
        raw.push(members);
    }

    let element_order = |a: usize| {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = products[x * g + a];
            k += 1;
        }
        k
    };
    let cyclic = t.family() == Family::A;
    let cyclic_exponent = |a: usize| {
        let step = 2.0 * PI / g as f64;
        (elements[a][0][0].arg() / step).round().rem_euclid(g as f64) as usize
    };
    let mut order: Vec<usize> = (0..raw.len()).collect();
    let info: Vec<(usize, usize, f64)> = raw
        .iter()
        .map(|m| (m[0], element_order(m[0]), trace(&elements[m[0]]).re))
        .collect();
    if cyclic {
        order.sort_by_key(|&r| cyclic_exponent(info[r].0));
    } else {
        order.sort_by(|&x, &y| {
            let (ax, ox, tx) = info[x];
            let (ay, oy, ty) = info[y];
            (ax != 0)
                .cmp(&(ay != 0))
                .then(ox.cmp(&oy))
                .then(((ty - tx) * 1e6).round().partial_cmp(&0.0).expect("finite"))
                .then(ax.cmp(&ay))
        });
    }
    let mut position = vec![0; raw.len()];
    for (p, &r) in order.iter().enumerate() {
        position[r] = p;
    }
    let element_class: Vec<usize> = raw_class.iter().map(|&r| position[r]).collect();
    let mut letters: HashMap<usize, u8> = HashMap::new();
    let classes: Vec<ConjugacyClass> = order
        .iter()
        .map(|&r| {
            let (rep, ord, chi) = info[r];
            let label = if cyclic {
                match cyclic_exponent(rep) {
                    0 => "1".to_string(),
                    1 => "g".to_string(),
                    k => format!("g^{k}"),
                }
            } else {
                let l = letters.entry(ord).or_insert(b'a');
                let s = format!("{ord}{}", *l as char);
                *l += 1;
                s
            };
            ConjugacyClass {
                label,
                size: raw[r].len(),
                order: ord,
                representative: rep,
                inverse: element_class[inverse[rep]],
                chi_v: chi,
            }
        })
        .collect();

    let char_table = character_table(&classes, &element_class, &products, g)?;
    let dims: Vec<usize> = char_table.iter().map(|row| row[0].re.round() as usize).collect();

    let chi_v: Vec<f64> = classes.iter().map(|c| c.chi_v).collect();
    let chi_v_row = char_table
        .iter()
        .position(|row| row.iter().zip(&chi_v).all(|(x, v)| (x - c(*v, 0.0)).norm() < CHARACTER_TOL));

    let mut group = GroupData {
        rstype: t,
        elements,
        products,
        element_class,
        classes,
        char_table,
        dims,
        chi_v_row,
        node_match: Vec::new(),
    };
    group.node_match = match_nodes(&group, &rs)?;
    Ok(group)
}

/// `(1/|G|) sum_g f(g)`, written over classes.
fn class_average(classes: &[ConjugacyClass], g: usize, f: impl Fn(usize) -> Complex64) -> Complex64 {
    classes
        .iter()
        .enumerate()
        .map(|(r, cl)| f(r) * cl.size as f64)
        .sum::<Complex64>()
        / g as f64
}

fn character_table(
    classes: &[ConjugacyClass],
    element_class: &[usize],
    products: &[usize],
    g: usize,
) -> Result<Vec<Vec<Complex64>>> {
    let k = classes.len();
    let inverse_of = |a: usize| (0..g).find(|&b| products[a * g + b] == 0).expect("group");
    let inverses: Vec<usize> = (0..g).map(inverse_of).collect();
    // coef[r][s][t] = #{x in C_r : x^{-1} z in C_s} for a fixed z in C_t
    let mut coef = vec![vec![vec![0f64; k]; k]; k];
    for (t, cl) in classes.iter().enumerate() {
        let z = cl.representative;
        for x in 0..g {
            let y = products[inverses[x] * g + z];
            coef[element_class[x]][element_class[y]][t] += 1.0;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x6d_636b_6179);
    for _attempt in 0..32 {
        let weights: Vec<f64> = (0..k).map(|_| rng.random_range(1.0..2.0)).collect();
        let m = DMatrix::from_fn(k, k, |s, t| (0..k).map(|r| weights[r] * coef[r][s][t]).sum::<f64>());
        let eigenvalues: Vec<Complex64> = m.complex_eigenvalues().iter().copied().collect();
        let scale = 1.0 + eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max);
        let separated = (0..k).all(|a| (a + 1..k).all(|b| (eigenvalues[a] - eigenvalues[b]).norm() > 1e-6 * scale));
        if !separated {
            continue;
        }
        let mut rows = Vec::with_capacity(k);
        for lambda in &eigenvalues {
            let shifted: Vec<Vec<Complex64>> = (0..k)
                .map(|s| {
                    (0..k)
                        .map(|t| c(m[(s, t)], 0.0) - if s == t { *lambda } else { c(0.0, 0.0) })
                        .collect()
                })
                .collect();
            let Some(omega) = null_vector(shifted) else {
                return Err(Error::CharacterTable("eigenvector not found".into()));
            };
            if omega[0].norm() < 1e-12 {
                return Err(Error::CharacterTable("central character vanishes at the identity".into()));
            }
            let omega: Vec<Complex64> = omega.iter().map(|w| w / omega[0]).collect();
            let norm: f64 = omega
                .iter()
                .zip(classes)
                .map(|(w, cl)| w.norm_sqr() / cl.size as f64)
                .sum();
            let dim = (g as f64 / norm).sqrt();
            if (dim - dim.round()).abs() > 1e-6 {
                return Err(Error::CharacterTable(format!("non-integral degree {dim}")));
            }
            rows.push(
                omega
                    .iter()
                    .zip(classes)
                    .map(|(w, cl)| w * dim / cl.size as f64)
                    .collect::<Vec<_>>(),
            );
        }
        let sort_key = |row: &Vec<Complex64>| {
            let mut key = vec![row[0].re.round() as i64];
            for x in row {
                key.push(-(x.re * 1e6).round() as i64);
                key.push(-(x.im * 1e6).round() as i64);
            }
            key
        };
        rows.sort_by_key(sort_key);
        check_orthogonality(&rows, classes, g)?;
        return Ok(rows);
    }
    Err(Error::CharacterTable("class matrices kept degenerate eigenvalues".into()))
}

/// A nonzero vector in the kernel of an (approximately) rank-deficient
/// matrix, by Gaussian elimination with full pivoting.
fn null_vector(mut a: Vec<Vec<Complex64>>) -> Option<Vec<Complex64>> {
    let k = a.len();
    let scale = a
        .iter()
        .flat_map(|r| r.iter().map(|x| x.norm()))
        .fold(0.0, f64::max)
        .max(1.0);
    let mut cols: Vec<usize> = (0..k).collect();
    let mut rank = 0;
    while rank < k {
        let mut best = (rank, rank, 0.0);
        for r in rank..k {
            for cc in rank..k {
                let v = a[r][cols[cc]].norm();
                if v > best.2 {
                    best = (r, cc, v);
                }
            }
        }
        if best.2 < 1e-9 * scale {
            break;
        }
        a.swap(rank, best.0);
        cols.swap(rank, best.1);
        let p = a[rank][cols[rank]];
        for r in 0..k {
            if r == rank {
                continue;
            }
            let f = a[r][cols[rank]] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for cc in 0..k {
                let sub = a[rank][cc] * f;
                a[r][cc] -= sub;
            }
        }
        rank += 1;
    }
    if rank != k - 1 {
        return None;
    }
    let free = cols[k - 1];
    let mut v = vec![c(0.0, 0.0); k];
    v[free] = c(1.0, 0.0);
    for r in 0..rank {
        let col = cols[r];
        v[col] = -a[r][free] / a[r][col];
    }
    Some(v)
}

fn check_orthogonality(rows: &[Vec<Complex64>], classes: &[ConjugacyClass], g: usize) -> Result<()> {
    for (a, x) in rows.iter().enumerate() {
        for (b, y) in rows.iter().enumerate() {
            let ip = class_average(classes, g, |r| x[r] * y[r].conj());
            let expected = if a == b { 1.0 } else { 0.0 };
            if (ip - c(expected, 0.0)).norm() > CHARACTER_TOL {
                return Err(Error::CharacterTable(format!(
                    "rows {a} and {b} have inner product {ip}"
                )));
            }
        }
    }
    Ok(())
}

/// `mult[a][b]`: multiplicity of irrep `b` in `V ⊗ irrep a`.
pub fn mckay_multiplicities(group: &GroupData) -> Result<Vec<Vec<i64>>> {
    let g = group.order();
    let chi_v = group.chi_v();
    let t = &group.char_table;
    let mut out = vec![vec![0; t.len()]; t.len()];
    for a in 0..t.len() {
        for b in 0..t.len() {
            let m = class_average(&group.classes, g, |r| c(chi_v[r], 0.0) * t[a][r] * t[b][r].conj());
            if m.im.abs() > CHARACTER_TOL || (m.re - m.re.round()).abs() > CHARACTER_TOL {
                return Err(Error::CharacterTable(format!("non-integral multiplicity {m}")));
            }
            out[a][b] = m.re.round() as i64;
        }
    }
    Ok(out)
}

/// Matches non-trivial irreps to Dynkin nodes: the McKay graph with the
/// trivial vertex removed must be the Dynkin diagram, with dimensions equal
/// to the highest-root coefficients.
fn match_nodes(group: &GroupData, rs: &RootSystem) -> Result<Vec<usize>> {
    let n = rs.rank();
    if group.char_table.len() != n + 1 {
        return Err(Error::NoNodeMatch);
    }
    let mult = mckay_multiplicities(group)?;
    let mckay: Vec<Vec<i64>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| if a == b { group.dims[a + 1] as i64 } else { mult[a + 1][b + 1] })
                .collect()
        })
        .collect();
    let theta = rs.highest_root();
    let dynkin: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { theta.0[i] } else { -rs.cartan()[i][j] })
                .collect()
        })
        .collect();
    let perm = iso::find_isomorphism(&mckay, &dynkin).ok_or(Error::NoNodeMatch)?;
    Ok(perm.iter().map(|&p| p + 1).collect())
}

fn check_match(group: &GroupData, rs: &RootSystem) -> Result<()> {
    if rs.rstype() != group.rstype || !rs.is_normalized_simply_laced() {
        return Err(Error::InvalidArgument(format!(
            "group of {} used with root system {}",
            group.rstype,
            rs.rstype()
        )));
    }
    Ok(())
}

/// `(1/|G|) sum_g (chi_V(g) - 2) chi_i(g) conj(chi_j(g))` over Dynkin nodes.
pub fn mckay_pairing_matrix(group: &GroupData) -> Vec<Vec<Complex64>> {
    let n = group.node_match.len();
    let chi_v = group.chi_v();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (x, y) = (group.node_character(i), group.node_character(j));
                    class_average(&group.classes, group.order(), |r| c(chi_v[r] - 2.0, 0.0) * x[r] * y[r].conj())
                })
                .collect()
        })
        .collect()
}

/// Largest deviation of the character pairing from `-<alpha_i, alpha_j>`.
pub fn mckay_pairing_deviation(group: &GroupData, rs: &RootSystem) -> Result<f64> {
    check_match(group, rs)?;
    let m = mckay_pairing_matrix(group);
    let mut worst = 0f64;
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            worst = worst.max((x + c(to_f64(&rs.gram()[i][j]), 0.0)).norm());
        }
    }
    Ok(worst)
}

pub fn verify_mckay_pairing(group: &GroupData, rs: &RootSystem) -> Result<bool> {
    Ok(mckay_pairing_deviation(group, rs)? <= CHARACTER_TOL)
}

/// `x_[g] = sqrt(chi_V(g) - 2) sum_i chi_i(g) y_i`, one row per non-trivial
/// class, with the square root taken as a positive multiple of `i`.
#[derive(Clone, Debug)]
pub struct ChangeOfVariables {
    pub classes: Vec<usize>,
    pub matrix: Vec<Vec<Complex64>>,
}

impl ChangeOfVariables {
    pub fn apply(&self, y: &[Complex64]) -> Vec<Complex64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(y).map(|(l, yi)| l * yi).sum())
            .collect()
    }
}

pub fn change_of_variables(group: &GroupData, rs: &RootSystem) -> Result<ChangeOfVariables> {
    check_match(group, rs)?;
    let n = group.node_match.len();
    let classes: Vec<usize> = group.non_trivial_classes().collect();
    let matrix = classes
        .iter()
        .map(|&r| {
            let root = c(0.0, (2.0 - group.classes[r].chi_v).sqrt());
            (0..n).map(|i| root * group.node_character(i)[r]).collect()
        })
        .collect();
    Ok(ChangeOfVariables { classes, matrix })
}

/// `|(1/|G|) sum x_[g] x_[g^{-1}] - sum -<alpha_i, alpha_j> y_i y_j|` at `x = L y`.
pub fn quadratic_transport_deviation(
    group: &GroupData,
    rs: &RootSystem,
    cov: &ChangeOfVariables,
    y: &[Complex64],
) -> Result<f64> {
    if y.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: y.len(),
        });
    }
    let x = cov.apply(y);
    Ok((orbifold_quadratic_form(group, &cov.classes, &x) - resolution_quadratic_form(rs, y)).norm())
}

/// `(1/|G|) sum_{g != 1} x_[g] x_[g^{-1}]`, with `x` indexed like
/// `classes` (normally [`ChangeOfVariables::classes`]).
pub fn orbifold_quadratic_form(group: &GroupData, classes: &[usize], x: &[Complex64]) -> Complex64 {
    let slot: HashMap<usize, usize> = classes.iter().enumerate().map(|(s, &r)| (r, s)).collect();
    classes
        .iter()
        .enumerate()
        .map(|(s, &r)| {
            let inv = slot[&group.classes[r].inverse];
            x[s] * x[inv] * group.classes[r].size as f64
        })
        .sum::<Complex64>()
        / group.order() as f64
}

/// `sum_{ij} -<alpha_i, alpha_j> y_i y_j`.
pub fn resolution_quadratic_form(rs: &RootSystem, y: &[Complex64]) -> Complex64 {
    let mut acc = c(0.0, 0.0);
    for (i, yi) in y.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            acc -= yi * yj * to_f64(&rs.gram()[i][j]);
        }
    }
    acc
}
