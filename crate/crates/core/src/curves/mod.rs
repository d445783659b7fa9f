//! The curve pair `E_p: y^2 = x(x^2 + p)`, `E'_p: y^2 = x(x^2 - 4p)`, the group
//! law over K and over finite fields, and the 2-isogenies between them.

mod division;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{Fq, FqElem};
use crate::quadfield::{KElem, Ring};

pub use division::{division_values, DivisionReport};

/// A coefficient field for point arithmetic.
pub trait Domain {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|i| self.mul(a, &i))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }
}

impl Domain for Fq {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        Fq::zero(self)
    }
    fn from_i64(&self, n: i64) -> FqElem {
        Fq::from_i64(self, n)
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        Fq::add(self, *a, *b)
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        Fq::sub(self, *a, *b)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        Fq::mul(self, *a, *b)
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        Fq::neg(self, *a)
    }
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        Fq::inv(self, *a)
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        Fq::is_zero(self, *a)
    }
}

/// The number field K itself, as a coefficient domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumberField(pub Ring);

impl Domain for NumberField {
    type Elem = KElem;

    fn zero(&self) -> KElem {
        KElem::from_int(self.0.zero())
    }
    fn from_i64(&self, n: i64) -> KElem {
        KElem::from_int(self.0.int(n))
    }
    fn add(&self, a: &KElem, b: &KElem) -> KElem {
        a.add(b)
    }
    fn sub(&self, a: &KElem, b: &KElem) -> KElem {
        a.sub(b)
    }
    fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        a.mul(b)
    }
    fn neg(&self, a: &KElem) -> KElem {
        a.neg()
    }
    fn inv(&self, a: &KElem) -> Option<KElem> {
        a.inv()
    }
    fn is_zero(&self, a: &KElem) -> bool {
        a.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point<T> {
    Infinity,
    Affine(T, T),
}

impl<T> Point<T> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

/// `y^2 = x^3 + a2 x^2 + a4 x + a6` over a domain of odd characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve<D: Domain> {
    pub domain: D,
    pub a2: D::Elem,
    pub a4: D::Elem,
    pub a6: D::Elem,
}

impl<D: Domain> Curve<D> {
    pub fn new(domain: D, a2: i64, a4: i64, a6: i64) -> Curve<D> {
        let (a2, a4, a6) = (domain.from_i64(a2), domain.from_i64(a4), domain.from_i64(a6));
        Curve { domain, a2, a4, a6 }
    }

    pub fn rhs(&self, x: &D::Elem) -> D::Elem {
        let d = &self.domain;
        let t = d.add(&d.mul(&d.add(x, &self.a2), x), &self.a4);
        d.add(&d.mul(&t, x), &self.a6)
    }

    pub fn contains(&self, pt: &Point<D::Elem>) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => self.domain.square(y) == self.rhs(x),
        }
    }

    pub fn neg(&self, pt: &Point<D::Elem>) -> Point<D::Elem> {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), self.domain.neg(y)),
        }
    }

    /// Group law. Both points must lie on the curve.
    pub fn add(&self, p: &Point<D::Elem>, q: &Point<D::Elem>) -> Result<Point<D::Elem>> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::DomainMismatch);
        }
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &Point<D::Elem>, q: &Point<D::Elem>) -> Point<D::Elem> {
        let d = &self.domain;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if d.is_zero(&d.add(y1, y2)) {
                return Point::Infinity;
            }
            // (3x^2 + 2 a2 x + a4) / 2y
            let num = d.add(
                &d.add(&d.mul(&d.from_i64(3), &d.square(x1)), &d.mul(&d.from_i64(2), &d.mul(&self.a2, x1))),
                &self.a4,
            );
            d.div(&num, &d.mul(&d.from_i64(2), y1)).expect("2y invertible in odd characteristic")
        } else {
            d.div(&d.sub(y2, y1), &d.sub(x2, x1)).expect("distinct x")
        };
        let x3 = d.sub(&d.sub(&d.sub(&d.square(&lambda), &self.a2), x1), x2);
        let y3 = d.sub(&d.mul(&lambda, &d.sub(x1, &x3)), y1);
        Point::Affine(x3, y3)
    }

    pub fn double(&self, p: &Point<D::Elem>) -> Result<Point<D::Elem>> {
        self.add(p, p)
    }

    /// [n]P by double-and-add (n may be negative).
    pub fn mul(&self, p: &Point<D::Elem>, n: i64) -> Result<Point<D::Elem>> {
        if !self.contains(p) {
            return Err(Error::DomainMismatch);
        }
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut cur = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &cur);
            }
            cur = self.add_unchecked(&cur, &cur);
            k >>= 1;
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsogenyDirection {
    /// E_p -> E'_p
    Phi,
    /// E'_p -> E_p
    PhiHat,
}

/// The pair E_p, E'_p as integer models.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePair {
    pub p: u64,
    /// [a1, a2, a3, a4, a6] of y^2 = x(x^2 + p).
    pub e: [i64; 5],
    /// [a1, a2, a3, a4, a6] of y^2 = x(x^2 - 4p).
    pub eprime: [i64; 5],
    pub disc: BigInt,
}

impl CurvePair {
    pub fn new(p: u64) -> CurvePair {
        let pi = p as i64;
        let disc = -BigInt::from(64) * BigInt::from(p).pow(3);
        CurvePair { p, e: [0, 0, 0, pi, 0], eprime: [0, 0, 0, -4 * pi, 0], disc }
    }

    pub fn e_over<D: Domain>(&self, domain: D) -> Curve<D> {
        Curve::new(domain, 0, self.e[3], 0)
    }

    pub fn eprime_over<D: Domain>(&self, domain: D) -> Curve<D> {
        Curve::new(domain, 0, self.eprime[3], 0)
    }
}

/// x([2]Q) = ((x^2 - p) / 2y)^2 on E_p.
pub fn duplicate_x<D: Domain>(domain: &D, x: &D::Elem, y: &D::Elem, p: u64) -> Result<D::Elem> {
    if domain.is_zero(y) {
        return Err(Error::TwoTorsion);
    }
    let num = domain.sub(&domain.square(x), &domain.from_i64(p as i64));
    let den = domain.mul(&domain.from_i64(2), y);
    let r = domain.div(&num, &den).ok_or(Error::TwoTorsion)?;
    Ok(domain.square(&r))
}

/// phi(x, y) = (y^2/x^2, y(p - x^2)/x^2) and
/// phi_hat(x, y) = (y^2/4x^2, -y(4p + x^2)/8x^2). Kernel points go to O.
pub fn apply_isogeny<D: Domain>(domain: &D, pt: &Point<D::Elem>, direction: IsogenyDirection, p: u64) -> Point<D::Elem> {
    let d = domain;
    let (x, y) = match pt {
        Point::Infinity => return Point::Infinity,
        Point::Affine(x, y) => (x, y),
    };
    if d.is_zero(x) {
        return Point::Infinity;
    }
    let x2 = d.square(x);
    let pp = d.from_i64(p as i64);
    match direction {
        IsogenyDirection::Phi => {
            let inv = d.inv(&x2).expect("x nonzero");
            let nx = d.mul(&d.square(y), &inv);
            let ny = d.mul(&d.mul(y, &d.sub(&pp, &x2)), &inv);
            Point::Affine(nx, ny)
        }
        IsogenyDirection::PhiHat => {
            let inv4 = d.inv(&d.mul(&d.from_i64(4), &x2)).expect("odd characteristic");
            let inv8 = d.inv(&d.mul(&d.from_i64(8), &x2)).expect("odd characteristic");
            let nx = d.mul(&d.square(y), &inv4);
            let four_p = d.from_i64(4 * p as i64);
            let ny = d.neg(&d.mul(&d.mul(y, &d.add(&four_p, &x2)), &inv8));
            Point::Affine(nx, ny)
        }
    }
}

/// All affine points of a curve over a small finite field.
pub fn affine_points(curve: &Curve<Fq>) -> Vec<Point<FqElem>> {
    let f = &curve.domain;
    let mut out = Vec::new();
    for x in f.elements() {
        let r = curve.rhs(&x);
        if let Some(y) = f.sqrt(r) {
            out.push(Point::Affine(x, y));
            if !f.is_zero(y) {
                out.push(Point::Affine(x, f.neg(y)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_example() {
        let f = Fq::prime(5);
        let pair = CurvePair::new(3);
        let e = pair.e_over(f);
        let q = Point::Affine(f.from_i64(1), f.from_i64(2));
        assert!(e.contains(&q));
        assert_eq!(e.double(&q).unwrap(), Point::Affine(f.from_i64(4), f.from_i64(1)));
        assert_eq!(duplicate_x(&f, &f.from_i64(1), &f.from_i64(2), 3).unwrap(), f.from_i64(4));
        assert_eq!(duplicate_x(&f, &f.from_i64(0), &f.from_i64(0), 3), Err(Error::TwoTorsion));
        let t = Point::Affine(f.zero(), f.zero());
        assert_eq!(e.add(&t, &t).unwrap(), Point::Infinity);
        assert_eq!(e.add(&q, &Point::Infinity).unwrap(), q);
        assert_eq!(e.add(&Point::Affine(f.from_i64(1), f.from_i64(1)), &q), Err(Error::DomainMismatch));
    }

    #[test]
    fn discriminant() {
        assert_eq!(CurvePair::new(3).disc, BigInt::from(-64 * 27));
    }

    #[test]
    fn isogenies_compose_to_doubling() {
        for (l, p) in [(11u64, 3u64), (13, 5), (29, 7), (31, 13)] {
            let f = Fq::prime(l);
            let pair = CurvePair::new(p);
            let e = pair.e_over(f);
            let ep = pair.eprime_over(f);
            for pt in affine_points(&e) {
                let img = apply_isogeny(&f, &pt, IsogenyDirection::Phi, p);
                assert!(ep.contains(&img));
                let back = apply_isogeny(&f, &img, IsogenyDirection::PhiHat, p);
                assert_eq!(back, e.double(&pt).unwrap());
            }
            for pt in affine_points(&ep) {
                let img = apply_isogeny(&f, &pt, IsogenyDirection::PhiHat, p);
                assert!(e.contains(&img));
                assert_eq!(apply_isogeny(&f, &img, IsogenyDirection::Phi, p), ep.double(&pt).unwrap());
            }
        }
    }

    #[test]
    fn group_order_matches_brute_force() {
        let f = Fq::prime(13);
        let e = CurvePair::new(5).e_over(f);
        let pts = affine_points(&e);
        let n = pts.len() as i64 + 1;
        for pt in &pts {
            assert!(e.mul(pt, n).unwrap().is_infinity());
        }
    }

    #[test]
    fn point_of_infinite_order_over_root2() {
        let ctx = crate::quadfield::FieldContext::new(crate::quadfield::FieldKind::Root2).unwrap();
        let k = NumberField(ctx.ring);
        let e = CurvePair::new(3).e_over(k);
        let x = KElem::from_int(ctx.elem(-1, -1));
        let y = KElem::from_int(ctx.elem(2, -1));
        let pt = Point::Affine(x, y);
        assert!(e.contains(&pt));
        // non-torsion: multiples never return to O or (0, 0) and heights grow
        let mut q = pt.clone();
        for _ in 0..6 {
            q = e.add(&q, &pt).unwrap();
            assert!(!q.is_infinity());
        }
    }

    #[test]
    fn works_over_k() {
        let ctx = crate::quadfield::FieldContext::new(crate::quadfield::FieldKind::GaussianI).unwrap();
        let k = NumberField(ctx.ring);
        // (5, 5) lies on E'_5: 125 - 100 = 25.
        let pair = CurvePair::new(5);
        let ep = pair.eprime_over(k);
        let pt = Point::Affine(k.from_i64(5), k.from_i64(5));
        assert!(ep.contains(&pt));
        let img = apply_isogeny(&k, &pt, IsogenyDirection::PhiHat, 5);
        let e = pair.e_over(k);
        assert!(e.contains(&img));
        assert_eq!(apply_isogeny(&k, &img, IsogenyDirection::Phi, 5), ep.double(&pt).unwrap());
    }
}
