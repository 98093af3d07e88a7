//! Exact rational helpers shared across modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Best rational approximation of `x` by continued fractions, stopping at the
/// first convergent within `tol` or once the denominator would exceed `max_den`.
pub fn approximate(x: f64, tol: f64, max_den: i64) -> Rational {
    if !x.is_finite() {
        return Rational::zero();
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut frac = x;
    let mut best = Rational::zero();
    for _ in 0..64 {
        let a = frac.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a_int = a as i128;
        let h2 = a_int * h1 + h0;
        let k2 = a_int * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        best = Rational::new(BigInt::from(h2), BigInt::from(k2));
        if (x - h2 as f64 / k2 as f64).abs() <= tol {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let rem = frac - a;
        if rem.abs() < 1e-300 {
            break;
        }
        frac = 1.0 / rem;
    }
    best
}
