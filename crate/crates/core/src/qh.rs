//! The Frobenius algebra on `1, alpha_1, ..., alpha_n` with the closed-form
//! quantum product
//!
//! ```text
//! alpha_i * alpha_j = -t^2 eps <alpha_i, alpha_j> 1
//!                     + sum_{beta > 0} <alpha_i, beta> <alpha_j, beta^vee> t (1 + q^beta)/(1 - q^beta) beta
//! ```
//!
//! and pairing `<1, 1> = -1 / (t^2 eps)`, `<1, alpha_i> = 0`, `<alpha_i, alpha_j>` from the
//! root system. Everything is generic over a [`Backend`].

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::point::{EvalPoint, PointBackend};
use crate::rational::{int, Rational};
use crate::root_system::{Root, RootSystem};
use crate::scalar::{Backend, Scalar};
use crate::series::{QSeries, SeriesBackend};

/// `unit * 1 + sum_i roots[i] * alpha_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<S> {
    pub unit: S,
    pub roots: Vec<S>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn new(unit: S, roots: Vec<S>) -> Self {
        AlgebraElement { unit, roots }
    }

    /// Basis element `a`: `0` is the unit, `i + 1` is `alpha_i`.
    pub fn basis<B: Backend<Scalar = S>>(b: &B, a: usize) -> Self {
        let n = b.rank();
        let mut roots = vec![b.zero(); n];
        let unit = if a == 0 {
            b.one()
        } else {
            roots[a - 1] = b.one();
            b.zero()
        };
        AlgebraElement { unit, roots }
    }

    pub fn lift<B: Backend<Scalar = S>>(b: &B, x: &AlgebraElement<Rational>) -> Self {
        AlgebraElement {
            unit: b.rational(&x.unit),
            roots: x.roots.iter().map(|r| b.rational(r)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraElement {
            unit: self.unit.add(&other.unit),
            roots: self.roots.iter().zip(&other.roots).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgebraElement {
            unit: self.unit.sub(&other.unit),
            roots: self.roots.iter().zip(&other.roots).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        AlgebraElement {
            unit: self.unit.mul(s),
            roots: self.roots.iter().map(|r| r.mul(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.unit.vanishes() && self.roots.iter().all(Scalar::vanishes)
    }

    /// Coefficient list `[unit, alpha_1, ..., alpha_n]`.
    pub fn coefficients(&self) -> Vec<S> {
        std::iter::once(self.unit.clone()).chain(self.roots.iter().cloned()).collect()
    }
}

impl AlgebraElement<Rational> {
    pub fn constant(unit: Rational, roots: Vec<Rational>) -> Self {
        AlgebraElement { unit, roots }
    }

    pub fn rational_basis(n: usize, a: usize) -> Self {
        let mut roots = vec![Rational::zero(); n];
        let unit = if a == 0 {
            int(1)
        } else {
            roots[a - 1] = int(1);
            Rational::zero()
        };
        AlgebraElement { unit, roots }
    }
}

fn check_shapes<B: Backend>(b: &B, rs: &RootSystem, xs: &[&AlgebraElement<B::Scalar>]) -> Result<()> {
    let n = rs.rank();
    if b.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.rank(),
        });
    }
    for x in xs {
        if x.rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.rank(),
            });
        }
    }
    Ok(())
}

/// `sum_{ij} x_i y_j <alpha_i, alpha_j>`.
fn root_pairing<S: Scalar>(rs: &RootSystem, x: &[S], y: &[S], zero: S) -> S {
    let mut acc = zero;
    for (i, xi) in x.iter().enumerate() {
        if xi.vanishes() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            let g = &rs.gram()[i][j];
            if yj.vanishes() || Zero::is_zero(g) {
                continue;
            }
            acc = acc.add(&xi.mul(yj).mul_rational(g));
        }
    }
    acc
}

/// The quantum product `x * y`.
pub fn star<B: Backend>(
    b: &B,
    rs: &RootSystem,
    x: &AlgebraElement<B::Scalar>,
    y: &AlgebraElement<B::Scalar>,
) -> Result<AlgebraElement<B::Scalar>> {
    check_shapes(b, rs, &[x, y])?;
    let n = rs.rank();
    let t2_eps = b.t_pow(2)?.mul_rational(rs.epsilon());

    let classical = root_pairing(rs, &x.roots, &y.roots, b.zero());
    let unit = x.unit.mul(&y.unit).sub(&classical.mul(&t2_eps));
    let mut roots: Vec<B::Scalar> = (0..n)
        .map(|m| x.unit.mul(&y.roots[m]).add(&y.unit.mul(&x.roots[m])))
        .collect();

    for (idx, (beta, data)) in rs.positive_roots().iter().zip(rs.root_data()).enumerate() {
        let mut px = b.zero();
        for (xi, p) in x.roots.iter().zip(&data.pairings) {
            if !xi.vanishes() && !Zero::is_zero(p) {
                px = px.add(&xi.mul_rational(p));
            }
        }
        if px.vanishes() {
            continue;
        }
        let mut cy = b.zero();
        for (yj, &c) in y.roots.iter().zip(&data.copairings) {
            if !yj.vanishes() && c != 0 {
                cy = cy.add(&yj.mul_int(c));
            }
        }
        if cy.vanishes() {
            continue;
        }
        let coef = px.mul(&cy).mul(b.root_weight(idx));
        for (m, &bm) in beta.0.iter().enumerate() {
            if bm != 0 {
                roots[m] = roots[m].add(&coef.mul_int(bm));
            }
        }
    }
    Ok(AlgebraElement { unit, roots })
}

/// `<x, y> = -x_0 y_0 / (t^2 eps) + sum_{ij} x_i y_j <alpha_i, alpha_j>`.
pub fn pair<B: Backend>(
    b: &B,
    rs: &RootSystem,
    x: &AlgebraElement<B::Scalar>,
    y: &AlgebraElement<B::Scalar>,
) -> Result<B::Scalar> {
    check_shapes(b, rs, &[x, y])?;
    let mut acc = root_pairing(rs, &x.roots, &y.roots, b.zero());
    if !x.unit.vanishes() && !y.unit.vanishes() {
        let inv = b.t_pow(-2)?.mul_rational(&(int(1) / rs.epsilon()));
        acc = acc.sub(&x.unit.mul(&y.unit).mul(&inv));
    }
    Ok(acc)
}

/// `(1/t^2) <(x * y) * u, v>`.
pub fn associator<B: Backend>(
    b: &B,
    rs: &RootSystem,
    x: &AlgebraElement<B::Scalar>,
    y: &AlgebraElement<B::Scalar>,
    u: &AlgebraElement<B::Scalar>,
    v: &AlgebraElement<B::Scalar>,
) -> Result<B::Scalar> {
    let xyu = star(b, rs, &star(b, rs, x, y)?, u)?;
    Ok(pair(b, rs, &xyu, v)?.mul(&b.t_pow(-2)?))
}

/// `<x * y, z> == <x, y * z>`.
pub fn check_frobenius<B: Backend>(
    b: &B,
    rs: &RootSystem,
    x: &AlgebraElement<B::Scalar>,
    y: &AlgebraElement<B::Scalar>,
    z: &AlgebraElement<B::Scalar>,
) -> Result<bool> {
    let lhs = pair(b, rs, &star(b, rs, x, y)?, z)?;
    let rhs = pair(b, rs, x, &star(b, rs, y, z)?)?;
    Ok(lhs == rhs)
}

/// The product rewritten with the Coxeter number: the classical term
/// `-t^2 eps <v, w>` is spread over the positive roots as
/// `sum_beta <v, beta> <w, beta> (-t^2 eps / h)`. Simply-laced only.
pub fn star_coxeter_form<B: Backend>(
    b: &B,
    rs: &RootSystem,
    x: &AlgebraElement<B::Scalar>,
    y: &AlgebraElement<B::Scalar>,
) -> Result<AlgebraElement<B::Scalar>> {
    if !rs.is_normalized_simply_laced() {
        return Err(Error::NotSimplyLaced("the Coxeter-number form"));
    }
    check_shapes(b, rs, &[x, y])?;
    let n = rs.rank();
    let per_root = b
        .t_pow(2)?
        .mul_rational(&(-rs.epsilon() / rs.coxeter_number()));
    let mut unit = x.unit.mul(&y.unit);
    let mut roots: Vec<B::Scalar> = (0..n)
        .map(|m| x.unit.mul(&y.roots[m]).add(&y.unit.mul(&x.roots[m])))
        .collect();
    for (idx, (beta, data)) in rs.positive_roots().iter().zip(rs.root_data()).enumerate() {
        let mut px = b.zero();
        let mut py = b.zero();
        for i in 0..n {
            px = px.add(&x.roots[i].mul_rational(&data.pairings[i]));
            py = py.add(&y.roots[i].mul_rational(&data.pairings[i]));
        }
        let c = px.mul(&py);
        if c.vanishes() {
            continue;
        }
        unit = unit.add(&c.mul(&per_root));
        let along = c.mul(b.root_weight(idx));
        for (m, &bm) in beta.0.iter().enumerate() {
            if bm != 0 {
                roots[m] = roots[m].add(&along.mul_int(bm));
            }
        }
    }
    Ok(AlgebraElement { unit, roots })
}

/// All products of basis elements `e_0 = 1, e_{i+1} = alpha_i`.
#[derive(Clone, Debug)]
pub struct MultiplicationTable<S> {
    size: usize,
    entries: Vec<AlgebraElement<S>>,
}

impl<S: Scalar> MultiplicationTable<S> {
    pub fn new<B: Backend<Scalar = S>>(b: &B, rs: &RootSystem) -> Result<Self> {
        let size = rs.rank() + 1;
        let basis: Vec<_> = (0..size).map(|a| AlgebraElement::basis(b, a)).collect();
        let mut entries = Vec::with_capacity(size * size);
        for x in &basis {
            for y in &basis {
                entries.push(star(b, rs, x, y)?);
            }
        }
        Ok(MultiplicationTable { size, entries })
    }

    /// `e_a * e_b`.
    pub fn get(&self, a: usize, c: usize) -> &AlgebraElement<S> {
        &self.entries[a * self.size + c]
    }

    /// `x * e_c`, expanded bilinearly through the table.
    pub fn times_basis(&self, x: &AlgebraElement<S>, c: usize) -> AlgebraElement<S> {
        let mut acc: Option<AlgebraElement<S>> = None;
        for (a, xa) in std::iter::once(&x.unit).chain(&x.roots).enumerate() {
            if xa.vanishes() {
                continue;
            }
            let term = self.get(a, c).scale(xa);
            acc = Some(match acc {
                Some(s) => s.add(&term),
                None => term,
            });
        }
        acc.unwrap_or_else(|| {
            let z = x.unit.sub(&x.unit);
            AlgebraElement::new(z.clone(), vec![z; self.size - 1])
        })
    }

    /// First `(a, b)` with `e_a * e_b != e_b * e_a`.
    pub fn commutativity_violation(&self) -> Option<(usize, usize)> {
        (0..self.size)
            .flat_map(|a| (a + 1..self.size).map(move |c| (a, c)))
            .find(|&(a, c)| self.get(a, c) != self.get(c, a))
    }

    /// First basis triple with `(e_a e_b) e_c != e_a (e_b e_c)`. Uses
    /// commutativity to rewrite the right side as `(e_b e_c) e_a`, so it
    /// should be paired with [`Self::commutativity_violation`].
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let s = self.size;
        let key = |a: usize, c: usize| if a <= c { (a, c) } else { (c, a) };
        let mut products = vec![None; s * s * s];
        for a in 0..s {
            for c in a..s {
                for e in 0..s {
                    products[(a * s + c) * s + e] = Some(self.times_basis(self.get(a, c), e));
                }
            }
        }
        let lookup = |a: usize, c: usize, e: usize| {
            let (a, c) = key(a, c);
            products[(a * s + c) * s + e].as_ref().expect("filled above")
        };
        for a in 0..s {
            for c in 0..s {
                for e in 0..s {
                    if lookup(a, c, e) != lookup(c, e, a) {
                        return Some((a, c, e));
                    }
                }
            }
        }
        None
    }

    /// First basis triple with `<e_a e_b, e_c> != <e_a, e_b e_c>`.
    pub fn frobenius_violation<B: Backend<Scalar = S>>(
        &self,
        b: &B,
        rs: &RootSystem,
    ) -> Result<Option<(usize, usize, usize)>> {
        let basis: Vec<_> = (0..self.size).map(|a| AlgebraElement::basis(b, a)).collect();
        for a in 0..self.size {
            for c in 0..self.size {
                for e in 0..self.size {
                    let lhs = pair(b, rs, self.get(a, c), &basis[e])?;
                    let rhs = pair(b, rs, &basis[a], self.get(c, e))?;
                    if lhs != rhs {
                        return Ok(Some((a, c, e)));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// A linear map of the root lattice; column `i` is the image of `alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    cols: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn identity(n: usize) -> Self {
        LatticeMap {
            cols: (0..n).map(|i| Root::simple(n, i).0).collect(),
        }
    }

    /// The simple reflection `s_k`.
    pub fn reflection(rs: &RootSystem, k: usize) -> Result<Self> {
        let n = rs.rank();
        let cols = (0..n)
            .map(|i| rs.reflect_root(k, &Root::simple(n, i)).map(|r| r.0))
            .collect::<Result<_>>()?;
        Ok(LatticeMap { cols })
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn image(&self, i: usize) -> &[i64] {
        &self.cols[i]
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let mut out = vec![0; n];
        for (i, &c) in v.iter().enumerate() {
            for (o, &m) in out.iter_mut().zip(&self.cols[i]) {
                *o += c * m;
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        LatticeMap {
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// Applies the map to the root part of `x`, fixing the unit coefficient.
    pub fn apply_element<S: Scalar>(&self, x: &AlgebraElement<S>) -> AlgebraElement<S> {
        let n = self.rank();
        let mut roots: Vec<Option<S>> = vec![None; n];
        for (i, xi) in x.roots.iter().enumerate() {
            if xi.vanishes() {
                continue;
            }
            for (r, &m) in self.cols[i].iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let term = xi.mul_int(m);
                roots[r] = Some(match roots[r].take() {
                    Some(acc) => acc.add(&term),
                    None => term,
                });
            }
        }
        let zero = x.unit.sub(&x.unit);
        AlgebraElement {
            unit: x.unit.clone(),
            roots: roots.into_iter().map(|r| r.unwrap_or_else(|| zero.clone())).collect(),
        }
    }
}

/// The point `p'` with `p'^beta = p^{g beta}`, i.e. `q'_i = q^{g alpha_i}`.
pub fn weyl_transport(g: &LatticeMap, p: &EvalPoint) -> Result<EvalPoint> {
    if g.rank() != p.q().len() {
        return Err(Error::DimensionMismatch {
            expected: g.rank(),
            got: p.q().len(),
        });
    }
    if let Some(index) = p.q().iter().position(Zero::is_zero) {
        return Err(Error::ZeroQ { index });
    }
    let q = (0..g.rank()).map(|i| p.monomial(g.image(i))).collect();
    EvalPoint::new(p.t().clone(), q)
}

/// `s_k((v * w)(p')) == (s_k v) * (s_k w) at p`, with `p'` the transported
/// point.
pub fn check_weyl_equivariance(
    rs: &RootSystem,
    k: usize,
    v: &AlgebraElement<Rational>,
    w: &AlgebraElement<Rational>,
    p: &EvalPoint,
) -> Result<bool> {
    let g = LatticeMap::reflection(rs, k)?;
    let moved = PointBackend::new(rs, &weyl_transport(&g, p)?)?;
    let here = PointBackend::new(rs, p)?;
    let lhs = g.apply_element(&star(
        &moved,
        rs,
        &AlgebraElement::lift(&moved, v),
        &AlgebraElement::lift(&moved, w),
    )?);
    let rhs = star(
        &here,
        rs,
        &AlgebraElement::lift(&here, &g.apply_element(v)),
        &AlgebraElement::lift(&here, &g.apply_element(w)),
    )?;
    Ok(lhs == rhs)
}

/// Checks every pair of basis elements for the generator `s_k` at `p` using
/// multiplication tables at `p` and at the transported point. Returns the
/// first failing pair.
pub fn weyl_violation(rs: &RootSystem, k: usize, p: &EvalPoint) -> Result<Option<(usize, usize)>> {
    let g = LatticeMap::reflection(rs, k)?;
    let moved = PointBackend::new(rs, &weyl_transport(&g, p)?)?;
    let here = PointBackend::new(rs, p)?;
    let moved_table = MultiplicationTable::new(&moved, rs)?;
    let here_table = MultiplicationTable::new(&here, rs)?;
    let size = rs.rank() + 1;
    let images: Vec<AlgebraElement<Rational>> = (0..size)
        .map(|a| g.apply_element(&AlgebraElement::rational_basis(rs.rank(), a)))
        .collect();
    for a in 0..size {
        for c in a..size {
            let lhs = g.apply_element(moved_table.get(a, c));
            // (g e_a) * (g e_c) = sum_e (g e_c)_e ((g e_a) * e_e)
            let ga = AlgebraElement::lift(&here, &images[a]);
            let mut rhs: Option<AlgebraElement<_>> = None;
            for (e, coef) in images[c].coefficients().iter().enumerate() {
                if coef.vanishes() {
                    continue;
                }
                let term = here_table.times_basis(&ga, e).scale(&here.rational(coef));
                rhs = Some(match rhs {
                    Some(s) => s.add(&term),
                    None => term,
                });
            }
            let rhs = rhs.expect("images of basis elements are nonzero");
            if lhs != rhs {
                return Ok(Some((a, c)));
            }
        }
    }
    Ok(None)
}

/// The three-point series `-<x * y, z>`, whose `q^A` coefficient is the
/// genus-zero invariant of class `A`.
pub fn three_point(
    b: &SeriesBackend,
    rs: &RootSystem,
    x: &AlgebraElement<QSeries>,
    y: &AlgebraElement<QSeries>,
    z: &AlgebraElement<QSeries>,
) -> Result<QSeries> {
    Ok(pair(b, rs, &star(b, rs, x, y)?, z)?.neg())
}
