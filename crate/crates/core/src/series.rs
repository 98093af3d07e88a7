//! Truncated power series in `q_1, ..., q_n` with Laurent polynomials in `t`
//! as coefficients. Products drop every monomial of total degree above the
//! truncation order.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};
use crate::root_system::RootSystem;
use crate::scalar::{Backend, Scalar};

pub const DEFAULT_ORDER: u32 = 8;

/// A Laurent polynomial in `t`; only nonzero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(BTreeMap<i32, Rational>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    /// `c t^k`.
    pub fn monomial(k: i32, c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !Zero::is_zero(&c) {
            m.insert(k, c);
        }
        Laurent(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.0.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.0.iter().map(|(k, c)| (*k, c))
    }

    fn add_term(&mut self, k: i32, c: Rational) {
        if Zero::is_zero(&c) {
            return;
        }
        let entry = self.0.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.0.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Laurent(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Laurent::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if Zero::is_zero(r) {
            return Laurent::zero();
        }
        Laurent(self.0.iter().map(|(k, c)| (*k, c * r)).collect())
    }

    pub fn evaluate(&self, t: &Rational) -> Rational {
        self.terms()
            .map(|(k, c)| {
                let p = num_traits::pow(t.clone(), k.unsigned_abs() as usize);
                if k >= 0 {
                    c * p
                } else {
                    c / p
                }
            })
            .sum()
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "{} t", format_rational(c))?,
                _ => write!(f, "{} t^{}", format_rational(c), k)?,
            }
        }
        Ok(())
    }
}

/// A power series truncated at total `q`-degree `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    rank: usize,
    order: u32,
    terms: BTreeMap<Vec<u32>, Laurent>,
}

impl QSeries {
    pub fn zero(rank: usize, order: u32) -> Self {
        QSeries {
            rank,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, order: u32, c: Laurent) -> Self {
        let mut s = QSeries::zero(rank, order);
        s.add_term(vec![0; rank], c);
        s
    }

    /// `c q^exps`, or zero if the degree exceeds `order`.
    pub fn monomial(order: u32, exps: Vec<u32>, c: Laurent) -> Self {
        let mut s = QSeries::zero(exps.len(), order);
        s.add_term(exps, c);
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, exps: &[u32]) -> Laurent {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Laurent {
        self.coeff(&vec![0; self.rank])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Laurent)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Laurent) {
        if c.is_zero() || exps.iter().sum::<u32>() > self.order {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                *existing = existing.add(&c);
                if existing.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.rank == other.rank && self.order == other.order,
            "series of shape ({}, {}) combined with ({}, {})",
            self.rank,
            self.order,
            other.rank,
            other.order
        );
    }

    /// Exact value at a point; `q` may be anything since the series is a
    /// polynomial.
    pub fn evaluate(&self, t: &Rational, q: &[Rational]) -> Result<Rational> {
        if q.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: q.len(),
            });
        }
        if Zero::is_zero(t) && self.terms.values().any(|c| c.terms().any(|(k, _)| k < 0)) {
            return Err(Error::ZeroT);
        }
        let mut acc = Rational::zero();
        for (exps, c) in &self.terms {
            let mut m = Rational::one();
            for (qi, &e) in q.iter().zip(exps) {
                m *= num_traits::pow(qi.clone(), e as usize);
            }
            acc += c.evaluate(t) * m;
        }
        Ok(acc)
    }
}

impl Scalar for QSeries {
    fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = QSeries::zero(self.rank, self.order);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if da + eb.iter().sum::<u32>() > self.order {
                    continue;
                }
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            ..self.clone()
        }
    }

    fn mul_int(&self, k: i64) -> Self {
        self.mul_rational(&int(k))
    }

    fn mul_rational(&self, r: &Rational) -> Self {
        if Zero::is_zero(r) {
            return QSeries::zero(self.rank, self.order);
        }
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.scale(r))).collect(),
            ..self.clone()
        }
    }

    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, " q{}", j + 1)?,
                    _ => write!(f, " q{}^{}", j + 1, k)?,
                }
            }
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

/// Root weights expanded as `t (1 + 2 sum_{d >= 1} q^{d beta})`.
#[derive(Debug, Clone)]
pub struct SeriesBackend {
    rank: usize,
    order: u32,
    weights: Vec<QSeries>,
}

impl SeriesBackend {
    pub fn new(rs: &RootSystem, order: u32) -> Self {
        let rank = rs.rank();
        let weights = rs
            .positive_roots()
            .iter()
            .map(|beta| {
                let mut w = QSeries::constant(rank, order, Laurent::monomial(1, int(1)));
                let height = beta.height() as u32;
                let mut d = 1;
                while d * height <= order {
                    let exps = beta.0.iter().map(|&b| b as u32 * d).collect();
                    w = w.add(&QSeries::monomial(order, exps, Laurent::monomial(1, int(2))));
                    d += 1;
                }
                w
            })
            .collect();
        SeriesBackend {
            rank,
            order,
            weights,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }
}

impl Backend for SeriesBackend {
    type Scalar = QSeries;

    fn zero(&self) -> QSeries {
        QSeries::zero(self.rank, self.order)
    }

    fn one(&self) -> QSeries {
        QSeries::constant(self.rank, self.order, Laurent::monomial(0, int(1)))
    }

    fn rational(&self, r: &Rational) -> QSeries {
        QSeries::constant(self.rank, self.order, Laurent::monomial(0, r.clone()))
    }

    fn t_pow(&self, k: i32) -> Result<QSeries> {
        Ok(QSeries::constant(self.rank, self.order, Laurent::monomial(k, int(1))))
    }

    fn root_weight(&self, idx: usize) -> &QSeries {
        &self.weights[idx]
    }

    fn rank(&self) -> usize {
        self.rank
    }
}
