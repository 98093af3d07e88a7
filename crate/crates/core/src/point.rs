//! Exact evaluation at a rational point `(t, q_1, ..., q_n)`.
//!
//! Every root weight `t (1 + q^beta) / (1 - q^beta)` has its own large
//! denominator `1 - q^beta`. Summing a hundred of those as reduced fractions
//! costs a gcd of multi-thousand-bit integers per addition, so values are kept
//! over a denominator of the form `den * D^pow`, where `D` is the lcm of all
//! root denominators of the point and `den` stays small. Values are never
//! reduced against `D`; equality cross-multiplies instead.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::root_system::RootSystem;
use crate::scalar::{Backend, Scalar};

/// Largest numerator or denominator used by random points.
pub const SAMPLE_BOUND: i64 = 17;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    t: Rational,
    q: Vec<Rational>,
}

impl EvalPoint {
    pub fn new(t: Rational, q: Vec<Rational>) -> Result<Self> {
        if Zero::is_zero(&t) {
            return Err(Error::ZeroT);
        }
        if let Some(index) = q.iter().position(Zero::is_zero) {
            return Err(Error::ZeroQ { index });
        }
        Ok(EvalPoint { t, q })
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn q(&self) -> &[Rational] {
        &self.q
    }

    /// `prod q_i^{e_i}`; exponents may be negative.
    pub fn monomial(&self, exps: &[i64]) -> Rational {
        let mut acc = Rational::one();
        for (qi, &e) in self.q.iter().zip(exps) {
            if e == 0 {
                continue;
            }
            let p = num_traits::pow(qi.clone(), e.unsigned_abs() as usize);
            if e > 0 {
                acc *= p;
            } else {
                acc /= p;
            }
        }
        acc
    }

    /// The first positive root with `q^beta = 1`, if any.
    pub fn check_poles(&self, rs: &RootSystem) -> Result<()> {
        if self.q.len() != rs.rank() {
            return Err(Error::DimensionMismatch {
                expected: rs.rank(),
                got: self.q.len(),
            });
        }
        for beta in rs.positive_roots() {
            if self.monomial(&beta.0).is_one() {
                return Err(Error::Pole {
                    root: beta.0.clone(),
                });
            }
        }
        Ok(())
    }

    /// A point with every numerator and denominator drawn from
    /// `1..=SAMPLE_BOUND`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> Self {
        let mut draw = || {
            let a = rng.random_range(1..=SAMPLE_BOUND);
            let b = rng.random_range(1..=SAMPLE_BOUND);
            Rational::new(a.into(), b.into())
        };
        let t = draw();
        let q = (0..rank).map(|_| draw()).collect();
        EvalPoint { t, q }
    }

    /// Draws until the point avoids every pole of `rs`.
    pub fn random_pole_free<R: Rng + ?Sized>(rng: &mut R, rs: &RootSystem) -> Self {
        loop {
            let p = EvalPoint::random(rng, rs.rank());
            if p.check_poles(rs).is_ok() {
                return p;
            }
        }
    }

    /// Point number `index` of the campaign seeded by `seed`. Each index has
    /// its own stream, so the result does not depend on evaluation order.
    pub fn seeded(rs: &RootSystem, seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        EvalPoint::random_pole_free(&mut rng, rs)
    }
}

#[derive(Debug)]
pub struct PointContext {
    d: BigInt,
    powers: Vec<BigInt>,
}

impl PointContext {
    fn new(d: BigInt) -> Self {
        let mut powers = vec![BigInt::one()];
        for k in 1..=4 {
            let next = &powers[k - 1] * &d;
            powers.push(next);
        }
        PointContext { d, powers }
    }

    fn power(&self, k: u32) -> BigInt {
        match self.powers.get(k as usize) {
            Some(p) => p.clone(),
            None => num_traits::pow(self.d.clone(), k as usize),
        }
    }

    fn scale(&self, x: &BigInt, k: u32) -> BigInt {
        if k == 0 {
            x.clone()
        } else {
            match self.powers.get(k as usize) {
                Some(p) => x * p,
                None => x * self.power(k),
            }
        }
    }
}

/// An exact rational stored as `num / (den * D^pow)`.
#[derive(Clone, Debug)]
pub struct PointValue {
    num: BigInt,
    den: BigInt,
    pow: u32,
    ctx: Option<Arc<PointContext>>,
}

impl PointValue {
    pub fn from_rational(r: &Rational) -> Self {
        PointValue {
            num: r.numer().clone(),
            den: r.denom().clone(),
            pow: 0,
            ctx: None,
        }
        .normalized()
    }

    pub fn to_rational(&self) -> Rational {
        match &self.ctx {
            Some(ctx) if self.pow > 0 => {
                Rational::new(self.num.clone(), &self.den * ctx.power(self.pow))
            }
            _ => Rational::new(self.num.clone(), self.den.clone()),
        }
    }

    /// `den * D^pow`, unreduced.
    fn full_den(&self) -> BigInt {
        match &self.ctx {
            Some(ctx) => ctx.scale(&self.den, self.pow),
            None => self.den.clone(),
        }
    }

    fn zero() -> Self {
        PointValue {
            num: BigInt::zero(),
            den: BigInt::one(),
            pow: 0,
            ctx: None,
        }
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            return PointValue::zero();
        }
        if self.den.is_negative() {
            self.num = -self.num;
            self.den = -self.den;
        }
        if !self.den.is_one() {
            // den is small; reducing num first keeps the gcd cheap
            let g = self.den.gcd(&(&self.num % &self.den));
            if !g.is_one() {
                self.num /= &g;
                self.den /= &g;
            }
        }
        if self.pow == 0 {
            self.ctx = None;
        }
        self
    }

    /// The shared context of two values, or `None` if they were produced at
    /// different points.
    fn common_ctx(&self, other: &Self) -> std::result::Result<Option<Arc<PointContext>>, ()> {
        match (&self.ctx, &other.ctx) {
            (None, None) => Ok(None),
            (Some(c), None) | (None, Some(c)) => Ok(Some(c.clone())),
            (Some(a), Some(b)) if Arc::ptr_eq(a, b) || a.d == b.d => Ok(Some(a.clone())),
            _ => Err(()),
        }
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        if other.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return if negate_other { other.neg() } else { other.clone() };
        }
        let Ok(ctx) = self.common_ctx(other) else {
            let (a, b) = (self.to_rational(), other.to_rational());
            return PointValue::from_rational(&if negate_other { a - b } else { a + b });
        };
        let pow = self.pow.max(other.pow);
        let lift = |v: &PointValue| match &ctx {
            Some(c) => c.scale(&v.num, pow - v.pow),
            None => v.num.clone(),
        };
        let (mut a, mut b) = (lift(self), lift(other));
        if negate_other {
            b = -b;
        }
        let (num, den) = if self.den == other.den {
            (a + b, self.den.clone())
        } else {
            let l = self.den.lcm(&other.den);
            a *= &l / &self.den;
            b *= &l / &other.den;
            (a + b, l)
        };
        PointValue { num, den, pow, ctx }.normalized()
    }
}

impl PartialEq for PointValue {
    fn eq(&self, other: &Self) -> bool {
        if self.num.is_zero() || other.num.is_zero() {
            return self.num.is_zero() && other.num.is_zero();
        }
        match self.common_ctx(other) {
            Ok(ctx) => {
                if self.pow == other.pow && self.den == other.den {
                    return self.num == other.num;
                }
                let pow = self.pow.max(other.pow);
                let lift = |v: &PointValue| match &ctx {
                    Some(c) => c.scale(&v.num, pow - v.pow),
                    None => v.num.clone(),
                };
                lift(self) * &other.den == lift(other) * &self.den
            }
            Err(()) => &self.num * other.full_den() == &other.num * self.full_den(),
        }
    }
}

impl Scalar for PointValue {
    fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return PointValue::zero();
        }
        let Ok(ctx) = self.common_ctx(other) else {
            return PointValue::from_rational(&(self.to_rational() * other.to_rational()));
        };
        PointValue {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
            pow: self.pow + other.pow,
            ctx,
        }
        .normalized()
    }

    fn neg(&self) -> Self {
        PointValue {
            num: -&self.num,
            ..self.clone()
        }
    }

    fn mul_int(&self, k: i64) -> Self {
        PointValue {
            num: &self.num * k,
            ..self.clone()
        }
        .normalized()
    }

    fn mul_rational(&self, r: &Rational) -> Self {
        if r.is_integer() {
            PointValue {
                num: &self.num * r.numer(),
                ..self.clone()
            }
            .normalized()
        } else {
            self.mul(&PointValue::from_rational(r))
        }
    }

    fn vanishes(&self) -> bool {
        self.num.is_zero()
    }
}

/// A root system evaluated at one [`EvalPoint`].
#[derive(Debug, Clone)]
pub struct PointBackend {
    point: EvalPoint,
    rank: usize,
    weights: Vec<PointValue>,
}

impl PointBackend {
    pub fn new(rs: &RootSystem, point: &EvalPoint) -> Result<Self> {
        point.check_poles(rs)?;
        let (tn, td) = (point.t.numer().clone(), point.t.denom().clone());
        // q^beta = a / b with b > 0, so (1 + q^beta) / (1 - q^beta) = (b + a) / (b - a).
        let parts: Vec<(BigInt, BigInt)> = rs
            .positive_roots()
            .iter()
            .map(|beta| {
                let m = point.monomial(&beta.0);
                let (a, b) = (m.numer().clone(), m.denom().clone());
                (&b + &a, &b - &a)
            })
            .collect();
        let mut d = BigInt::one();
        for (_, den) in &parts {
            d = d.lcm(&den.abs());
        }
        let ctx = Arc::new(PointContext::new(d));
        let weights = parts
            .iter()
            .map(|(num, den)| {
                PointValue {
                    num: &tn * num * (&ctx.d / den),
                    den: td.clone(),
                    pow: 1,
                    ctx: Some(ctx.clone()),
                }
                .normalized()
            })
            .collect();
        Ok(PointBackend {
            point: point.clone(),
            rank: rs.rank(),
            weights,
        })
    }

    pub fn point(&self) -> &EvalPoint {
        &self.point
    }
}

impl Backend for PointBackend {
    type Scalar = PointValue;

    fn zero(&self) -> PointValue {
        PointValue::zero()
    }

    fn one(&self) -> PointValue {
        PointValue::from_rational(&int(1))
    }

    fn rational(&self, r: &Rational) -> PointValue {
        PointValue::from_rational(r)
    }

    fn t_pow(&self, k: i32) -> Result<PointValue> {
        let p = num_traits::pow(self.point.t.clone(), k.unsigned_abs() as usize);
        Ok(PointValue::from_rational(&if k >= 0 { p } else { p.recip() }))
    }

    fn root_weight(&self, idx: usize) -> &PointValue {
        &self.weights[idx]
    }

    fn rank(&self) -> usize {
        self.rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn a1() -> RootSystem {
        RootSystem::build_ade("A1".parse().unwrap()).unwrap()
    }

    #[test]
    fn rejects_zero_parameters() {
        assert_eq!(EvalPoint::new(int(0), vec![int(1)]), Err(Error::ZeroT));
        assert_eq!(
            EvalPoint::new(int(1), vec![int(2), int(0)]),
            Err(Error::ZeroQ { index: 1 })
        );
    }

    #[test]
    fn pole_is_reported() {
        let p = EvalPoint::new(int(1), vec![int(1)]).unwrap();
        assert_eq!(
            PointBackend::new(&a1(), &p).unwrap_err(),
            Error::Pole { root: vec![1] }
        );
    }

    #[test]
    fn weight_matches_closed_form() {
        let p = EvalPoint::new(ratio(2, 3), vec![ratio(1, 3)]).unwrap();
        let b = PointBackend::new(&a1(), &p).unwrap();
        // (2/3) (4/3) / (2/3) = 4/3
        assert_eq!(b.root_weight(0).to_rational(), ratio(4, 3));
    }

    #[test]
    fn arithmetic_matches_rationals() {
        let a2 = RootSystem::build_ade("A2".parse().unwrap()).unwrap();
        let p = EvalPoint::new(ratio(3, 5), vec![ratio(1, 2), ratio(7, 3)]).unwrap();
        let b = PointBackend::new(&a2, &p).unwrap();
        let w: Vec<Rational> = (0..3).map(|i| b.root_weight(i).to_rational()).collect();
        let x = b.root_weight(0).mul(b.root_weight(2)).add(&b.rational(&ratio(1, 6)));
        let y = x.sub(&b.root_weight(1).mul_int(4)).mul_rational(&ratio(-2, 9));
        let expected = (&w[0] * &w[2] + ratio(1, 6) - &w[1] * int(4)) * ratio(-2, 9);
        assert_eq!(y.to_rational(), expected);
        assert_eq!(y, PointValue::from_rational(&expected));
        assert!(x.sub(&x).vanishes());
    }

    #[test]
    fn values_from_different_points_compare_exactly() {
        let rs = a1();
        let p = PointBackend::new(&rs, &EvalPoint::new(int(1), vec![ratio(1, 2)]).unwrap()).unwrap();
        let q = PointBackend::new(&rs, &EvalPoint::new(int(1), vec![int(2)]).unwrap()).unwrap();
        // (1 + 2) / (1 - 2) = -(1 + 1/2) / (1 - 1/2)
        assert_eq!(q.root_weight(0), &p.root_weight(0).neg());
        assert_eq!(q.root_weight(0).add(p.root_weight(0)), PointValue::zero());
    }

    #[test]
    fn seeded_points_are_reproducible() {
        let rs = RootSystem::build_ade("D4".parse().unwrap()).unwrap();
        assert_eq!(EvalPoint::seeded(&rs, 9, 3), EvalPoint::seeded(&rs, 9, 3));
        assert_ne!(EvalPoint::seeded(&rs, 9, 3), EvalPoint::seeded(&rs, 9, 4));
    }
}
