//! Irreducible reduced root systems over an exact rational inner product.
//!
//! Simple roots are indexed `0..rank` in Bourbaki order. Every vector is given
//! by its coefficients over the simple-root basis, and the inner product is
//! stored as the Gram matrix of the simple roots. Simply-laced systems are
//! normalized so that every root has norm 2 (Gram matrix = Cartan matrix);
//! the non-simply-laced systems are produced by [`crate::folding`] and keep
//! the inner product inherited from their simply-laced source.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, to_i64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A Dynkin type such as `A3` or `F4`. Only valid (family, rank) pairs can be
/// constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let valid = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if valid {
            Ok(RootSystemType { family, rank })
        } else {
            Err(Error::InvalidType {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Every supported type of rank at most `max_rank`, simply-laced first.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<RootSystemType> {
        let mut out = Vec::new();
        for family in [
            Family::A,
            Family::D,
            Family::E,
            Family::B,
            Family::C,
            Family::F,
            Family::G,
        ] {
            for rank in 1..=max_rank {
                if let Ok(t) = RootSystemType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn simply_laced_up_to_rank(max_rank: usize) -> Vec<RootSystemType> {
        Self::all_up_to_rank(max_rank)
            .into_iter()
            .filter(|t| t.is_simply_laced())
            .collect()
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::BadLabel(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::BadLabel(s.to_string()))?;
        RootSystemType::new(family, rank)
    }
}

/// Integer coefficients over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&c| int(c)).collect()
    }
}

/// Pairings of one positive root against the simple roots, cached at
/// construction because the quantum product touches them constantly.
#[derive(Clone, Debug)]
pub(crate) struct RootData {
    /// `<alpha_i, beta>` for each simple root.
    pub pairings: Vec<Rational>,
    /// `<alpha_i, beta^vee>`; always integers.
    pub copairings: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    rstype: RootSystemType,
    gram: Vec<Vec<Rational>>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    highest_root: Root,
    coxeter_number: Rational,
    epsilon: Rational,
    root_data: Vec<RootData>,
}

impl RootSystem {
    /// Builds a simply-laced system with the Gram matrix equal to the Cartan
    /// matrix.
    pub fn build_ade(rstype: RootSystemType) -> Result<RootSystem> {
        if !rstype.is_simply_laced() {
            return Err(Error::InvalidArgument(format!(
                "{rstype} is not simply laced; build it by folding"
            )));
        }
        let n = rstype.rank();
        let cartan = ade_cartan(rstype.family(), n);
        let gram = cartan
            .iter()
            .map(|row| row.iter().map(|&c| int(c)).collect())
            .collect();
        RootSystem::from_gram(rstype, gram)
    }

    /// Any supported type. Non-simply-laced types go through folding.
    pub fn build(rstype: RootSystemType) -> Result<RootSystem> {
        if rstype.is_simply_laced() {
            RootSystem::build_ade(rstype)
        } else {
            crate::folding::build_folded_type(rstype).map(|fs| fs.folded().clone())
        }
    }

    /// Assembles a root system from the Gram matrix of its simple roots.
    pub fn from_gram(rstype: RootSystemType, gram: Vec<Vec<Rational>>) -> Result<RootSystem> {
        let n = gram.len();
        if n != rstype.rank() {
            return Err(Error::DimensionMismatch {
                expected: rstype.rank(),
                got: n,
            });
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if !row[i].is_positive() {
                return Err(Error::InvalidCartan(format!(
                    "simple root {i} has non-positive norm"
                )));
            }
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidCartan("Gram matrix is not symmetric".into()));
                }
            }
        }
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = &gram[i][j] * int(2) / &gram[j][j];
                cartan[i][j] = to_i64(&c).ok_or_else(|| {
                    Error::InvalidCartan(format!("<alpha_{i}, alpha_{j}^vee> = {c} is not an integer"))
                })?;
            }
        }
        let positive_roots = enumerate_positive_roots(&cartan)?;
        let highest_root = positive_roots
            .last()
            .cloned()
            .ok_or_else(|| Error::InvalidCartan("empty diagram".into()))?;
        let coxeter_number = Rational::new((2 * positive_roots.len()).into(), n.into());
        let mut rs = RootSystem {
            rstype,
            gram,
            cartan,
            positive_roots,
            highest_root,
            coxeter_number,
            epsilon: Rational::zero(),
            root_data: Vec::new(),
        };
        rs.root_data = rs
            .positive_roots
            .iter()
            .map(|beta| rs.compute_root_data(beta))
            .collect::<Result<_>>()?;
        rs.epsilon = rs.compute_epsilon();
        Ok(rs)
    }

    fn compute_root_data(&self, beta: &Root) -> Result<RootData> {
        let pairings: Vec<Rational> = (0..self.rank())
            .map(|i| self.pair_simple_root(i, beta))
            .collect();
        let norm = self.root_norm(beta);
        let copairings = pairings
            .iter()
            .map(|p| to_i64(&(p * int(2) / &norm)).ok_or_else(|| Error::NotARoot(beta.0.clone())))
            .collect::<Result<_>>()?;
        Ok(RootData {
            pairings,
            copairings,
        })
    }

    fn compute_epsilon(&self) -> Rational {
        let theta = &self.highest_root;
        let mut eps = self.root_norm(theta);
        for (i, &ni) in theta.0.iter().enumerate() {
            eps += int(ni * ni) * &self.gram[i][i];
        }
        eps / int(2)
    }

    pub fn rstype(&self) -> RootSystemType {
        self.rstype
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Sorted by height, then by coefficient vector in decreasing
    /// lexicographic order, so the simple roots come first in node order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &Root {
        &self.highest_root
    }

    /// `h = |R| / n`.
    pub fn coxeter_number(&self) -> &Rational {
        &self.coxeter_number
    }

    /// `epsilon_R = <theta,theta>/2 + sum_i n_i^2 <alpha_i,alpha_i> / 2`.
    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub(crate) fn root_data(&self) -> &[RootData] {
        &self.root_data
    }

    /// True when every simple root has norm 2 and the Gram matrix equals the
    /// Cartan matrix.
    pub fn is_normalized_simply_laced(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.gram[i][j] == int(self.cartan[i][j])))
            && (0..self.rank()).all(|i| self.gram[i][i] == int(2))
    }

    pub fn pairing(&self, v: &[Rational], w: &[Rational]) -> Result<Rational> {
        self.check_len(v.len())?;
        self.check_len(w.len())?;
        let mut acc = Rational::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if !wj.is_zero() {
                    acc += vi * wj * &self.gram[i][j];
                }
            }
        }
        Ok(acc)
    }

    pub fn pair_roots(&self, beta: &Root, gamma: &Root) -> Rational {
        let mut acc = Rational::zero();
        for (i, &b) in beta.0.iter().enumerate() {
            if b == 0 {
                continue;
            }
            acc += int(b) * self.pair_simple_root(i, gamma);
        }
        acc
    }

    /// `<alpha_i, beta>`.
    pub fn pair_simple_root(&self, i: usize, beta: &Root) -> Rational {
        beta.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(j, &b)| int(b) * &self.gram[i][j])
            .sum()
    }

    pub fn root_norm(&self, beta: &Root) -> Rational {
        self.pair_roots(beta, beta)
    }

    /// `2 v / <v, v>`.
    pub fn coroot(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        let norm = self.pairing(v, v)?;
        if norm.is_zero() {
            return Err(Error::ZeroVector);
        }
        let scale = int(2) / norm;
        Ok(v.iter().map(|x| x * &scale).collect())
    }

    pub fn coroot_of_root(&self, beta: &Root) -> Result<Vec<Rational>> {
        self.coroot(&beta.to_rational())
    }

    /// `s_k(v) = v - <v, alpha_k^vee> alpha_k`.
    pub fn reflect(&self, k: usize, v: &[Rational]) -> Result<Vec<Rational>> {
        self.check_index(k)?;
        self.check_len(v.len())?;
        let along: Rational = v
            .iter()
            .enumerate()
            .map(|(j, vj)| vj * &self.gram[j][k])
            .sum::<Rational>()
            * int(2)
            / &self.gram[k][k];
        let mut out = v.to_vec();
        out[k] -= along;
        Ok(out)
    }

    /// Integer version of [`RootSystem::reflect`] for lattice vectors.
    pub fn reflect_root(&self, k: usize, beta: &Root) -> Result<Root> {
        self.check_index(k)?;
        self.check_len(beta.0.len())?;
        let along: i64 = beta
            .0
            .iter()
            .enumerate()
            .map(|(j, &b)| b * self.cartan[j][k])
            .sum();
        let mut out = beta.0.clone();
        out[k] -= along;
        Ok(Root(out))
    }

    /// Checks `h <v,w> = sum_{beta > 0} <v,beta> <w,beta^vee>` exactly.
    pub fn check_dual_pairing_identity(&self, v: &[Rational], w: &[Rational]) -> Result<bool> {
        let lhs = &self.coxeter_number * self.pairing(v, w)?;
        let mut rhs = Rational::zero();
        for beta in &self.positive_roots {
            let b = beta.to_rational();
            let vb = self.pairing(v, &b)?;
            if vb.is_zero() {
                continue;
            }
            rhs += vb * self.pairing(w, &self.coroot(&b)?)?;
        }
        Ok(lhs == rhs)
    }

    pub fn root_index(&self, beta: &Root) -> Option<usize> {
        self.positive_roots.binary_search_by(|r| root_order(r, beta)).ok()
    }

    pub fn is_root(&self, beta: &Root) -> bool {
        if beta.is_positive() {
            self.root_index(beta).is_some()
        } else {
            self.root_index(&beta.neg()).is_some()
        }
    }

    /// The same root system with the inner product multiplied by `lambda`.
    pub fn rescaled(&self, lambda: &Rational) -> Result<RootSystem> {
        if !lambda.is_positive() {
            return Err(Error::InvalidArgument("rescaling factor must be positive".into()));
        }
        let gram = self
            .gram
            .iter()
            .map(|row| row.iter().map(|g| g * lambda).collect())
            .collect();
        RootSystem::from_gram(self.rstype, gram)
    }

    /// Relabels the nodes so that new node `a` is old node `perm[a]`.
    pub fn permuted(&self, perm: &[usize], rstype: RootSystemType) -> Result<RootSystem> {
        let n = self.rank();
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        let gram = (0..n)
            .map(|a| (0..n).map(|b| self.gram[perm[a]][perm[b]].clone()).collect())
            .collect();
        RootSystem::from_gram(rstype, gram)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: len,
            })
        }
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: k,
                rank: self.rank(),
            })
        }
    }
}

fn root_order(a: &Root, b: &Root) -> std::cmp::Ordering {
    a.height()
        .cmp(&b.height())
        .then_with(|| b.0.cmp(&a.0))
}

/// Cartan matrix of a simply-laced type in Bourbaki numbering (0-based).
pub fn ade_cartan(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match family {
        Family::A => edges.extend((0..n.saturating_sub(1)).map(|i| (i, i + 1))),
        Family::D => {
            edges.extend((0..n - 2).map(|i| (i, i + 1)));
            edges.push((n - 3, n - 1));
        }
        Family::E => {
            let all = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
            edges.extend(all.iter().copied().filter(|&(a, b)| a < n && b < n));
        }
        _ => panic!("ade_cartan called for non-simply-laced family"),
    }
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        c[a][b] = -1;
        c[b][a] = -1;
    }
    c
}

/// Cartan matrix (`c[i][j] = <alpha_i, alpha_j^vee>`) of any supported type
/// in Bourbaki numbering. Used to recognise folded systems.
pub fn standard_cartan(t: RootSystemType) -> Vec<Vec<i64>> {
    let n = t.rank();
    match t.family() {
        Family::A | Family::D | Family::E => ade_cartan(t.family(), n),
        Family::B => {
            // alpha_1..alpha_{n-1} long, alpha_n short
            let mut c = ade_cartan(Family::A, n);
            c[n - 2][n - 1] = -2;
            c
        }
        Family::C => {
            // alpha_1..alpha_{n-1} short, alpha_n long
            let mut c = ade_cartan(Family::A, n);
            c[n - 1][n - 2] = -2;
            c
        }
        Family::F => {
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            let mut c = ade_cartan(Family::A, 4);
            c[1][2] = -2;
            c
        }
        Family::G => vec![vec![2, -1], vec![-3, 2]],
    }
}

/// Positive roots of the finite-type Cartan matrix `cartan`
/// (`cartan[i][j] = <alpha_i, alpha_j^vee>`), grown one height at a time
/// along root strings.
pub fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Result<Vec<Root>> {
    let n = cartan.len();
    validate_cartan(cartan)?;
    let bound = 2 * n * n;
    let mut all: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n).map(|i| Root::simple(n, i).0).collect();
    all.extend(layer.iter().cloned());
    let mut roots: Vec<Root> = layer.iter().cloned().map(Root).collect();
    let mut height = 1;
    loop {
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                // alpha_i-string through beta runs from beta - p alpha_i to
                // beta + q alpha_i with p - q = <beta, alpha_i^vee>.
                let mut p = 0i64;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if all.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let along: i64 = beta.iter().zip(cartan).map(|(b, row)| b * row[i]).sum();
                if p - along > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        height += 1;
        if height > bound {
            return Err(Error::RootEnumerationDiverged { bound });
        }
        layer = next.into_iter().collect();
        all.extend(layer.iter().cloned());
        roots.extend(layer.iter().cloned().map(Root));
    }
    roots.sort_by(root_order);
    Ok(roots)
}

fn validate_cartan(cartan: &[Vec<i64>]) -> Result<()> {
    let n = cartan.len();
    if n == 0 {
        return Err(Error::InvalidCartan("empty matrix".into()));
    }
    for (i, row) in cartan.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        if row[i] != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry {i} is not 2")));
        }
        for j in 0..n {
            if i != j && (row[j] > 0 || (row[j] == 0) != (cartan[j][i] == 0)) {
                return Err(Error::InvalidCartan(format!("bad off-diagonal pair ({i},{j})")));
            }
        }
    }
    Ok(())
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl RootSystem {
    /// `sum_i n_i^2` over the highest-root coefficients.
    pub fn highest_root_square_sum(&self) -> i64 {
        self.highest_root.0.iter().map(|n| n * n).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ty(s: &str) -> RootSystemType {
        s.parse().unwrap()
    }

    #[test]
    fn type_validation() {
        assert!(RootSystemType::new(Family::D, 3).is_err());
        assert!(RootSystemType::new(Family::E, 9).is_err());
        assert!(RootSystemType::new(Family::B, 1).is_err());
        assert!("Z9".parse::<RootSystemType>().is_err());
        assert!("A0".parse::<RootSystemType>().is_err());
        assert_eq!(ty("e8").to_string(), "E8");
    }

    #[test]
    fn a1_and_a2() {
        let a1 = RootSystem::build_ade(ty("A1")).unwrap();
        assert_eq!(a1.positive_roots(), &[Root(vec![1])]);
        assert_eq!(a1.coxeter_number(), &int(2));
        assert_eq!(a1.epsilon(), &int(2));

        let a2 = RootSystem::build_ade(ty("A2")).unwrap();
        assert_eq!(
            a2.positive_roots(),
            &[Root(vec![1, 0]), Root(vec![0, 1]), Root(vec![1, 1])]
        );
        assert_eq!(a2.coxeter_number(), &int(3));
        assert_eq!(a2.epsilon(), &int(3));
        let theta = a2.highest_root().to_rational();
        assert_eq!(a2.pairing(&theta, &theta).unwrap(), int(2));
        assert_eq!(
            a2.pairing(&[int(1), int(0)], &[int(0), int(1)]).unwrap(),
            int(-1)
        );
    }

    #[test]
    fn e8_highest_root_and_count() {
        let e8 = RootSystem::build_ade(ty("E8")).unwrap();
        assert_eq!(e8.positive_roots().len(), 120);
        assert_eq!(e8.highest_root(), &Root(vec![2, 3, 4, 6, 5, 4, 3, 2]));
        assert_eq!(e8.coxeter_number(), &int(30));
        assert_eq!(e8.epsilon(), &int(120));
    }

    #[test]
    fn reflections() {
        let a2 = RootSystem::build_ade(ty("A2")).unwrap();
        let a1 = vec![int(1), int(0)];
        let a2v = vec![int(0), int(1)];
        assert_eq!(a2.reflect(0, &a1).unwrap(), vec![int(-1), int(0)]);
        assert_eq!(a2.reflect(0, &a2v).unwrap(), vec![int(1), int(1)]);
        let v = vec![ratio(3, 7), ratio(-5, 2)];
        assert_eq!(a2.reflect(1, &a2.reflect(1, &v).unwrap()).unwrap(), v);
        assert!(matches!(
            a2.reflect(2, &v),
            Err(Error::IndexOutOfRange { index: 2, rank: 2 })
        ));
    }

    #[test]
    fn pairing_rejects_bad_lengths() {
        let a2 = RootSystem::build_ade(ty("A2")).unwrap();
        assert!(matches!(
            a2.pairing(&[int(1)], &[int(1), int(0)]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
        assert_eq!(a2.coroot(&[int(0), int(0)]), Err(Error::ZeroVector));
    }

    #[test]
    fn dual_pairing_small_cases() {
        let a1 = RootSystem::build_ade(ty("A1")).unwrap();
        assert!(a1.check_dual_pairing_identity(&[int(1)], &[int(1)]).unwrap());
        let a2 = RootSystem::build_ade(ty("A2")).unwrap();
        // both sides are -3
        assert!(a2
            .check_dual_pairing_identity(&[int(1), int(0)], &[int(0), int(1)])
            .unwrap());
    }

    #[test]
    fn affine_cartan_diverges() {
        let affine = vec![vec![2, -2], vec![-2, 2]];
        assert!(matches!(
            enumerate_positive_roots(&affine),
            Err(Error::RootEnumerationDiverged { bound: 8 })
        ));
        let not_cartan = vec![vec![2, 1], vec![1, 2]];
        assert!(matches!(
            enumerate_positive_roots(&not_cartan),
            Err(Error::InvalidCartan(_))
        ));
    }

    #[test]
    fn rescaling_scales_epsilon() {
        let d4 = RootSystem::build_ade(ty("D4")).unwrap();
        let scaled = d4.rescaled(&ratio(3, 2)).unwrap();
        assert_eq!(scaled.epsilon(), &(d4.epsilon() * ratio(3, 2)));
        assert_eq!(scaled.cartan(), d4.cartan());
        assert_eq!(scaled.positive_roots(), d4.positive_roots());
    }
}
