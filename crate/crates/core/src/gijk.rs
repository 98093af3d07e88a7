//! The cubic tensor `G_ijk = -sum_{beta > 0} <alpha_i,beta><alpha_j,beta><alpha_k,beta>`
//! of a simply-laced root system, its structural properties, and a second
//! computation that uses only the Cartan matrix.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::folding::diagram_automorphisms;
use crate::rational::{int, to_i64, Rational};
use crate::root_system::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleTensor {
    n: usize,
    values: Vec<i64>,
}

impl TripleTensor {
    fn filled(n: usize, f: impl Fn(usize, usize, usize) -> i64) -> Self {
        let mut values = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    values.push(f(i, j, k));
                }
            }
        }
        TripleTensor { n, values }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.values[(i * self.n + j) * self.n + k]
    }

    /// Index triples where the two tensors differ.
    pub fn differences(&self, other: &Self) -> Vec<(usize, usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.get(i, j, k) != other.get(i, j, k) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }
}

fn require_simply_laced(rs: &RootSystem) -> Result<()> {
    if rs.is_normalized_simply_laced() {
        Ok(())
    } else {
        Err(Error::NotSimplyLaced("the triple tensor"))
    }
}

/// Direct sum over the positive roots.
pub fn compute_gijk(rs: &RootSystem) -> Result<TripleTensor> {
    require_simply_laced(rs)?;
    let n = rs.rank();
    let pairings: Vec<Vec<i64>> = rs
        .positive_roots()
        .iter()
        .map(|beta| {
            (0..n)
                .map(|i| to_i64(&rs.pair_simple_root(i, beta)).expect("integral for ADE"))
                .collect()
        })
        .collect();
    Ok(TripleTensor::filled(n, |i, j, k| {
        -pairings.iter().map(|p| p[i] * p[j] * p[k]).sum::<i64>()
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: &'static str,
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl PropertyReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, ok: bool, property: &'static str, indices: &[usize], detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation {
                property,
                indices: indices.to_vec(),
                detail: detail(),
            });
        }
    }
}

/// Checks, exhaustively over index triples:
/// symmetry, invariance under diagram automorphisms, vanishing when
/// `g_jk = 0`, `G_iii = -8`, `G_iij + G_jji = 2` on edges, and
/// `G_ikk + G_jkk = 4` for distinct neighbours `i, j` of `k`.
pub fn verify_properties(rs: &RootSystem, g: &TripleTensor) -> Result<PropertyReport> {
    require_simply_laced(rs)?;
    let n = rs.rank();
    if g.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: g.rank(),
        });
    }
    let c = rs.cartan();
    let autos = diagram_automorphisms(rs);
    let mut report = PropertyReport::default();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = g.get(i, j, k);
                let perms = [g.get(i, k, j), g.get(j, i, k), g.get(j, k, i), g.get(k, i, j), g.get(k, j, i)];
                report.check(perms.iter().all(|&p| p == v), "symmetric", &[i, j, k], || {
                    format!("G = {v}, permuted values {perms:?}")
                });
                for a in &autos {
                    let p = a.perm();
                    let w = g.get(p[i], p[j], p[k]);
                    report.check(w == v, "automorphism_invariant", &[i, j, k], || {
                        format!("G = {v} but {w} after {p:?}")
                    });
                }
                if c[j][k] == 0 {
                    report.check(v == 0, "vanishes_off_edges", &[i, j, k], || format!("G = {v}"));
                }
            }
        }
        let d = g.get(i, i, i);
        report.check(d == -8, "diagonal", &[i], || format!("G_iii = {d}"));
        for j in 0..n {
            if c[i][j] == -1 {
                let s = g.get(i, i, j) + g.get(j, j, i);
                report.check(s == 2, "edge_sum", &[i, j], || format!("G_iij + G_jji = {s}"));
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if i != j && c[i][k] == -1 && c[j][k] == -1 {
                    let s = g.get(i, k, k) + g.get(j, k, k);
                    report.check(s == 4, "neighbour_sum", &[i, j, k], || format!("G_ikk + G_jkk = {s}"));
                }
            }
        }
    }
    Ok(report)
}

/// Rebuilds the tensor from the Cartan matrix alone. The unknowns are
/// `w(a, k) = G_akk` for adjacent `a, k`; they satisfy `w(a,k) + w(k,a) = 2`,
/// `w(i,k) + w(j,k) = 4` for distinct neighbours of `k`, and invariance under
/// diagram automorphisms. Every other entry then follows from
///
/// ```text
/// G_ijk = -2 g_ik g_jk + (g_ik G_jkk + g_jk G_ikk - g_ik g_jk G_kkk) / 2
/// ```
///
/// with `G_kkk = -8` and `G_akk = 0` off the edges.
pub fn gijk_via_recursion(rs: &RootSystem) -> Result<TripleTensor> {
    require_simply_laced(rs)?;
    let n = rs.rank();
    let c = rs.cartan();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |k| (a, k)))
        .filter(|&(a, k)| a != k && c[a][k] != 0)
        .collect();
    let slot: BTreeMap<(usize, usize), usize> = edges.iter().enumerate().map(|(s, &e)| (e, s)).collect();

    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut equation = |terms: &[((usize, usize), i64)], rhs: i64| {
        let mut row = vec![Rational::zero(); edges.len()];
        for (e, coef) in terms {
            row[slot[e]] += int(*coef);
        }
        rows.push((row, int(rhs)));
    };
    for &(a, k) in &edges {
        if a < k {
            equation(&[((a, k), 1), ((k, a), 1)], 2);
        }
    }
    for k in 0..n {
        for &(i, ki) in &edges {
            for &(j, kj) in &edges {
                if ki == k && kj == k && i < j {
                    equation(&[((i, k), 1), ((j, k), 1)], 4);
                }
            }
        }
    }
    for auto in diagram_automorphisms(rs) {
        let p = auto.perm();
        for &(a, k) in &edges {
            let image = (p[a], p[k]);
            if image != (a, k) {
                equation(&[((a, k), 1), (image, -1)], 0);
            }
        }
    }

    let w = solve_exact(rows, edges.len()).map_err(|free| {
        let (a, k) = edges[free];
        Error::Undetermined { i: a, j: k, k }
    })?;
    let mut gkk = vec![vec![0i64; n]; n];
    for (s, &(a, k)) in edges.iter().enumerate() {
        gkk[a][k] = to_i64(&w[s]).ok_or_else(|| Error::InvalidCartan("non-integral edge weight".into()))?;
    }
    for (k, row) in gkk.iter_mut().enumerate() {
        row[k] = -8;
    }
    // gkk[a][k] = G_akk
    let g = |a: usize, b: usize| c[a][b];
    Ok(TripleTensor::filled(n, |i, j, k| {
        let twice = -4 * g(i, k) * g(j, k) + g(i, k) * gkk[j][k] + g(j, k) * gkk[i][k]
            - g(i, k) * g(j, k) * gkk[k][k];
        twice / 2
    }))
}

/// Gauss-Jordan elimination over the rationals. Returns the unique solution,
/// or the index of a free unknown when the system is rank deficient.
fn solve_exact(mut rows: Vec<(Vec<Rational>, Rational)>, unknowns: usize) -> std::result::Result<Vec<Rational>, usize> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            return Err(col);
        };
        rows.swap(pivot_row, r);
        let inv = Rational::one() / &rows[pivot_row].0[col];
        for x in rows[pivot_row].0.iter_mut() {
            *x *= &inv;
        }
        rows[pivot_row].1 *= &inv;
        let (pr, pb) = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row.0[col].is_zero() {
                continue;
            }
            let f = row.0[col].clone();
            for (x, p) in row.0.iter_mut().zip(&pr) {
                *x -= &f * p;
            }
            row.1 -= &f * &pb;
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    Ok(pivots.iter().map(|&r| rows[r].1.clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ade(s: &str) -> RootSystem {
        RootSystem::build_ade(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_and_a2_values() {
        let g = compute_gijk(&ade("A1")).unwrap();
        assert_eq!(g.get(0, 0, 0), -8);
        let g = compute_gijk(&ade("A2")).unwrap();
        assert_eq!(g.get(0, 0, 1), 1);
        assert_eq!(g.get(0, 0, 1) + g.get(1, 1, 0), 2);
        assert_eq!(gijk_via_recursion(&ade("A2")).unwrap(), g);
    }

    #[test]
    fn d4_neighbour_sum() {
        let g = compute_gijk(&ade("D4")).unwrap();
        assert_eq!(g.get(0, 1, 1) + g.get(2, 1, 1), 4);
        assert!(verify_properties(&ade("D4"), &g).unwrap().is_ok());
    }

    #[test]
    fn chain_edge_weights() {
        for n in 2..=6 {
            let rs = ade(&format!("A{n}"));
            let g = gijk_via_recursion(&rs).unwrap();
            assert_eq!(g.get(0, 1, 1), n as i64 - 1, "A{n}");
        }
    }

    #[test]
    fn rejects_non_simply_laced() {
        let b3 = RootSystem::build("B3".parse().unwrap()).unwrap();
        assert!(matches!(compute_gijk(&b3), Err(Error::NotSimplyLaced(_))));
    }

    #[test]
    fn detects_broken_tensor() {
        let rs = ade("A3");
        let mut g = compute_gijk(&rs).unwrap();
        g.values[0] = -7;
        let report = verify_properties(&rs, &g).unwrap();
        assert!(report.violations.iter().any(|v| v.property == "diagonal"));
    }

    #[test]
    fn rank_deficiency_is_reported() {
        // a chain with no automorphism equation leaves one free edge weight
        let rows = vec![
            (vec![int(1), int(1), int(0), int(0)], int(2)),
            (vec![int(0), int(0), int(1), int(1)], int(2)),
        ];
        assert!(solve_exact(rows, 4).is_err());
    }
}
