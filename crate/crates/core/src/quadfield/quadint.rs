use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::sqrt_exact;

/// Which of the supported fields we are in. `RootQ(q)` is Q(sqrt(-q)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum FieldKind {
    GaussianI,
    Root2,
    Root7,
    RootQ(u64),
}

impl FieldKind {
    /// `(T, N)` with `w^2 = T w - N` for the chosen generator `w` of O_K.
    pub fn trace_norm(self) -> (i64, i64) {
        match self {
            FieldKind::GaussianI => (0, 1),
            FieldKind::Root2 => (0, 2),
            // w = -(1 + sqrt(-7))/2
            FieldKind::Root7 => (-1, 2),
            // w = (1 - sqrt(-q))/2
            FieldKind::RootQ(q) => (1, ((1 + q) / 4) as i64),
        }
    }

    pub fn name(self) -> String {
        match self {
            FieldKind::GaussianI => "Q(sqrt(-1))".into(),
            FieldKind::Root2 => "Q(sqrt(-2))".into(),
            FieldKind::Root7 => "Q(sqrt(-7))".into(),
            FieldKind::RootQ(q) => format!("Q(sqrt(-{q}))"),
        }
    }

    fn omega_symbol(self) -> &'static str {
        match self {
            FieldKind::GaussianI => "i",
            FieldKind::Root2 => "r",
            FieldKind::Root7 | FieldKind::RootQ(_) => "w",
        }
    }
}

/// The ring Z[w] with w^2 = trace*w - norm. Cheap to copy; carried by every element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub kind: FieldKind,
    pub trace: i64,
    pub norm: i64,
}

impl Ring {
    pub fn new(kind: FieldKind) -> Ring {
        let (trace, norm) = kind.trace_norm();
        Ring { kind, trace, norm }
    }

    pub fn disc(&self) -> i64 {
        self.trace * self.trace - 4 * self.norm
    }

    pub fn int<T: Into<BigInt>>(&self, n: T) -> QuadInt {
        QuadInt { a: n.into(), b: BigInt::zero(), ring: *self }
    }

    pub fn elem<S: Into<BigInt>, T: Into<BigInt>>(&self, a: S, b: T) -> QuadInt {
        QuadInt { a: a.into(), b: b.into(), ring: *self }
    }

    pub fn zero(&self) -> QuadInt {
        self.int(0)
    }

    pub fn one(&self) -> QuadInt {
        self.int(1)
    }

    pub fn omega(&self) -> QuadInt {
        self.elem(0, 1)
    }
}

/// An element `a + b*w` of O_K.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "QuadIntRepr", try_from = "QuadIntRepr")]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
    pub ring: Ring,
}

/// Serialized form: coordinates as decimal strings so large values survive JSON.
#[derive(Serialize, Deserialize)]
struct QuadIntRepr {
    field: FieldKind,
    a: String,
    b: String,
}

impl From<QuadInt> for QuadIntRepr {
    fn from(x: QuadInt) -> QuadIntRepr {
        QuadIntRepr { field: x.ring.kind, a: x.a.to_string(), b: x.b.to_string() }
    }
}

impl TryFrom<QuadIntRepr> for QuadInt {
    type Error = String;

    fn try_from(r: QuadIntRepr) -> Result<QuadInt, String> {
        let parse = |s: &str| s.parse::<BigInt>().map_err(|e| format!("bad integer {s:?}: {e}"));
        Ok(Ring::new(r.field).elem(parse(&r.a)?, parse(&r.b)?))
    }
}

impl QuadInt {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> QuadInt {
        QuadInt { a: &self.a + &self.b * self.ring.trace, b: -&self.b, ring: self.ring }
    }

    /// a^2 + T ab + N b^2, always >= 0.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b * self.ring.trace + &self.b * &self.b * self.ring.norm
    }

    pub fn trace(&self) -> BigInt {
        BigInt::from(2) * &self.a + &self.b * self.ring.trace
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn pow(&self, mut e: u32) -> QuadInt {
        let mut base = self.clone();
        let mut r = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        r
    }

    pub fn scale(&self, k: &BigInt) -> QuadInt {
        QuadInt { a: &self.a * k, b: &self.b * k, ring: self.ring }
    }

    pub fn div_int_exact(&self, k: &BigInt) -> Option<QuadInt> {
        if k.is_zero() {
            return None;
        }
        let (qa, ra) = self.a.div_rem(k);
        if !ra.is_zero() {
            return None;
        }
        let (qb, rb) = self.b.div_rem(k);
        if !rb.is_zero() {
            return None;
        }
        Some(QuadInt { a: qa, b: qb, ring: self.ring })
    }

    /// `self / other` when the quotient lies in O_K.
    pub fn div_exact(&self, other: &QuadInt) -> Option<QuadInt> {
        if other.is_zero() {
            return None;
        }
        (self * &other.conj()).div_int_exact(&other.norm())
    }

    pub fn divides(&self, other: &QuadInt) -> bool {
        other.div_exact(self).is_some()
    }

    /// gcd of the two coordinates.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b)
    }

    /// Exact square root in O_K (equivalently in K, O_K being integrally closed).
    pub fn sqrt_exact(&self) -> Option<QuadInt> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = sqrt_exact(&self.norm())?;
        // beta^2 = alpha with N(beta) = n forces tr(beta)^2 = tr(alpha) + 2n.
        let t2 = self.trace() + BigInt::from(2) * &n;
        if let Some(t) = sqrt_exact(&t2) {
            if !t.is_zero() {
                let shifted = self + &self.ring.int(n.clone());
                if let Some(beta) = shifted.div_int_exact(&t) {
                    if &(&beta * &beta) == self {
                        return Some(beta);
                    }
                }
                return None;
            }
        }
        // trace zero: beta = y(2w - T)/2 with beta^2 = -n, so alpha must be the rational -n
        if self.b.is_zero() && self.a == -n.clone() {
            let d = BigInt::from(self.ring.disc().abs());
            let four_n = BigInt::from(4) * &n;
            if four_n.is_multiple_of(&d) {
                if let Some(y) = sqrt_exact(&(four_n / d)) {
                    let ty = &y * self.ring.trace;
                    if ty.is_even() {
                        let beta = self.ring.elem(-(ty / BigInt::from(2)), y);
                        if &(&beta * &beta) == self {
                            return Some(beta);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_square(&self) -> bool {
        self.sqrt_exact().is_some()
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        use num_traits::ToPrimitive;
        Some((self.a.to_i64()?, self.b.to_i64()?))
    }
}

impl fmt::Debug for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.ring.kind.omega_symbol();
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let bpart = if self.b.is_one() {
            w.to_string()
        } else if self.b == -BigInt::one() {
            format!("-{w}")
        } else {
            format!("{}{w}", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{bpart}")
        } else if self.b.is_negative() {
            write!(f, "{}{bpart}", self.a)
        } else {
            write!(f, "{}+{bpart}", self.a)
        }
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.ring, o.ring);
        QuadInt { a: &self.a + &o.a, b: &self.b + &o.b, ring: self.ring }
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.ring, o.ring);
        QuadInt { a: &self.a - &o.a, b: &self.b - &o.b, ring: self.ring }
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, o: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.ring, o.ring);
        // (a + bw)(c + dw) = (ac - N bd) + (ad + bc + T bd) w
        let bd = &self.b * &o.b;
        QuadInt {
            a: &self.a * &o.a - &bd * self.ring.norm,
            b: &self.a * &o.b + &self.b * &o.a + &bd * self.ring.trace,
            ring: self.ring,
        }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -&self.a, b: -&self.b, ring: self.ring }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -self.a, b: -self.b, ring: self.ring }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $m(self, o: QuadInt) -> QuadInt {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $m(self, o: &QuadInt) -> QuadInt {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<QuadInt> for &'a QuadInt {
            type Output = QuadInt;
            fn $m(self, o: QuadInt) -> QuadInt {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// An element of K: `num / den` with `den > 0` and no common rational factor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KElem {
    pub num: QuadInt,
    pub den: BigInt,
}

impl KElem {
    pub fn new(num: QuadInt, den: BigInt) -> KElem {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        let g = num.content().gcd(&den);
        if g.is_one() || num.is_zero() && den.is_one() {
            return KElem { num, den };
        }
        let g = if num.is_zero() { den.clone() } else { g };
        KElem { num: num.div_int_exact(&g).unwrap(), den: den / g }
    }

    pub fn from_int(x: QuadInt) -> KElem {
        KElem { num: x, den: BigInt::one() }
    }

    pub fn ring(&self) -> Ring {
        self.num.ring
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &KElem) -> KElem {
        KElem::new(&self.num.scale(&o.den) + &o.num.scale(&self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &KElem) -> KElem {
        KElem::new(&self.num.scale(&o.den) - &o.num.scale(&self.den), &self.den * &o.den)
    }

    pub fn neg(&self) -> KElem {
        KElem { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &KElem) -> KElem {
        KElem::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn inv(&self) -> Option<KElem> {
        if self.is_zero() {
            return None;
        }
        // den / num = den * conj(num) / N(num)
        Some(KElem::new(self.num.conj().scale(&self.den), self.num.norm()))
    }

    pub fn div(&self, o: &KElem) -> Option<KElem> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn conj(&self) -> KElem {
        KElem { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn sqrt(&self) -> Option<KElem> {
        let r = self.num.scale(&self.den).sqrt_exact()?;
        Some(KElem::new(r, self.den.clone()))
    }
}

impl fmt::Debug for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_from_examples() {
        let g = Ring::new(FieldKind::GaussianI);
        assert_eq!(g.elem(1, 4).norm(), BigInt::from(17));
        let r2 = Ring::new(FieldKind::Root2);
        assert_eq!(r2.elem(3, 1).norm(), BigInt::from(11));
        assert_eq!(g.zero().norm(), BigInt::zero());
    }

    #[test]
    fn generators_satisfy_their_relations() {
        for kind in [FieldKind::GaussianI, FieldKind::Root2, FieldKind::Root7, FieldKind::RootQ(11)] {
            let r = Ring::new(kind);
            let w = r.omega();
            let rel = &(&w * &w) - &(&w.scale(&BigInt::from(r.trace)) - &r.int(r.norm));
            assert!(rel.is_zero(), "{kind:?}");
        }
        let r7 = Ring::new(FieldKind::Root7);
        // w = -(1 + sqrt(-7))/2 has norm 2
        assert_eq!(r7.omega().norm(), BigInt::from(2));
    }

    #[test]
    fn exact_square_roots() {
        for kind in [FieldKind::GaussianI, FieldKind::Root2, FieldKind::Root7, FieldKind::RootQ(3), FieldKind::RootQ(19)] {
            let r = Ring::new(kind);
            for a in -6..=6 {
                for b in -6..=6 {
                    let x = r.elem(a, b);
                    let sq = &x * &x;
                    let root = sq.sqrt_exact().expect("square has a root");
                    assert!(root == x || root == -&x, "{kind:?} {x}");
                }
            }
            // -1 is not a square in these fields except Q(i)
            assert_eq!(r.int(-1).is_square(), kind == FieldKind::GaussianI);
            assert!(!r.int(2).is_square());
        }
        // -3 is a square in Q(sqrt(-3)), -7 in Q(sqrt(-7))
        assert!(Ring::new(FieldKind::RootQ(3)).int(-3).is_square());
        assert!(Ring::new(FieldKind::Root7).int(-7).is_square());
        assert!(Ring::new(FieldKind::Root2).int(-2).is_square());
    }

    #[test]
    fn kelem_field_ops() {
        let r = Ring::new(FieldKind::Root7);
        let x = KElem::new(r.elem(3, -2), BigInt::from(5));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), KElem::from_int(r.one()));
        assert_eq!(x.sub(&x), KElem::from_int(r.zero()));
    }
}
