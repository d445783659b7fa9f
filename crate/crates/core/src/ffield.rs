//! Finite fields F_l and F_{l^2}, used as residue fields and for point counting.
//!
//! F_{l^2} is F_l[X]/(X^2 - tX + m); elements are pairs `c0 + c1 X`.

use crate::arith::{inv_mod, mul_mod, pow_mod, reduce_i64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fq {
    l: u64,
    degree: u32,
    t: u64,
    m: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FqElem(pub u64, pub u64);

impl Fq {
    pub fn prime(l: u64) -> Fq {
        Fq { l, degree: 1, t: 0, m: 0 }
    }

    /// F_l[X]/(X^2 - tX + m); the caller guarantees irreducibility.
    pub fn quadratic(l: u64, t: i64, m: i64) -> Fq {
        let f = Fq { l, degree: 2, t: reduce_i64(t, l), m: reduce_i64(m, l) };
        debug_assert!(f.modulus_irreducible());
        f
    }

    /// Some quadratic extension of F_l, found by search.
    pub fn quadratic_extension(l: u64) -> Fq {
        if l == 2 {
            return Fq::quadratic(2, 1, 1);
        }
        let n = (2..l).find(|&n| pow_mod(n, (l - 1) / 2, l) == l - 1).expect("non-residue exists");
        Fq::quadratic(l, 0, -(n as i64))
    }

    fn modulus_irreducible(&self) -> bool {
        (0..self.l).all(|x| {
            let v = (mul_mod(x, x, self.l) + self.l - mul_mod(self.t, x, self.l) + self.m) % self.l;
            v != 0
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.l
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.l.pow(self.degree)
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0, 0)
    }

    pub fn one(&self) -> FqElem {
        FqElem(1 % self.l, 0)
    }

    pub fn from_i64(&self, a: i64) -> FqElem {
        FqElem(reduce_i64(a, self.l), 0)
    }

    pub fn from_u64(&self, a: u64) -> FqElem {
        FqElem(a % self.l, 0)
    }

    /// The generator X (degree two only).
    pub fn gen(&self) -> FqElem {
        assert_eq!(self.degree, 2);
        FqElem(0, 1)
    }

    pub fn is_zero(&self, a: FqElem) -> bool {
        a.0 == 0 && a.1 == 0
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem((a.0 + b.0) % self.l, (a.1 + b.1) % self.l)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem((a.0 + self.l - b.0) % self.l, (a.1 + self.l - b.1) % self.l)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem((self.l - a.0) % self.l, (self.l - a.1) % self.l)
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        let l = self.l;
        if self.degree == 1 {
            return FqElem(mul_mod(a.0, b.0, l), 0);
        }
        let c0 = mul_mod(a.0, b.0, l);
        let c1 = (mul_mod(a.0, b.1, l) + mul_mod(a.1, b.0, l)) % l;
        let c2 = mul_mod(a.1, b.1, l);
        // X^2 = tX - m
        FqElem((c0 + l - mul_mod(c2, self.m, l)) % l, (c1 + mul_mod(c2, self.t, l)) % l)
    }

    pub fn square(&self, a: FqElem) -> FqElem {
        self.mul(a, a)
    }

    pub fn pow(&self, mut a: FqElem, mut e: u64) -> FqElem {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Norm down to F_l.
    pub fn norm(&self, a: FqElem) -> u64 {
        if self.degree == 1 {
            return a.0;
        }
        self.mul(a, self.pow(a, self.l)).0
    }

    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree == 1 {
            return inv_mod(a.0, self.l).map(|x| FqElem(x, 0));
        }
        let conj = self.pow(a, self.l);
        let n = self.mul(a, conj).0;
        let ni = inv_mod(n, self.l)?;
        Some(self.mul(conj, FqElem(ni, 0)))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Option<FqElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Quadratic character: 0, 1 or -1 (characteristic two: every element is a square).
    pub fn chi(&self, a: FqElem) -> i8 {
        if self.is_zero(a) {
            return 0;
        }
        if self.l == 2 {
            return 1;
        }
        let n = self.norm(a);
        if pow_mod(n, (self.l - 1) / 2, self.l) == 1 {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, a: FqElem) -> bool {
        self.chi(a) >= 0
    }

    /// A square root, if one exists.
    pub fn sqrt(&self, a: FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return Some(a);
        }
        if self.l == 2 {
            return Some(self.pow(a, self.order() / 2));
        }
        if self.chi(a) != 1 {
            return None;
        }
        let q = self.order();
        let mut qq = q - 1;
        let mut s = 0u32;
        while qq % 2 == 0 {
            qq /= 2;
            s += 1;
        }
        let z = self
            .elements()
            .find(|&z| self.chi(z) == -1)
            .expect("non-residue exists");
        let mut m = s;
        let mut c = self.pow(z, qq);
        let mut t = self.pow(a, qq);
        let mut r = self.pow(a, (qq + 1) / 2);
        let one = self.one();
        while t != one {
            let mut i = 0;
            let mut tt = t;
            while tt != one {
                tt = self.square(tt);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.square(b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// The unique l-th root (inverse Frobenius).
    pub fn char_root(&self, a: FqElem) -> FqElem {
        self.pow(a, self.order() / self.l)
    }

    /// Enumerate all elements (only sensible for small fields).
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        let l = self.l;
        (0..self.order()).map(move |i| FqElem(i % l, i / l))
    }

    /// Number of distinct roots in this field of the polynomial with
    /// coefficients `coeffs` (lowest degree first).
    pub fn count_distinct_roots(&self, coeffs: &[FqElem]) -> usize {
        let p = self.trim(coeffs.to_vec());
        if p.len() <= 1 {
            assert!(!p.is_empty() && !self.is_zero(p[0]), "zero polynomial");
            return 0;
        }
        if self.order() <= 64 {
            return self.elements().filter(|&x| self.is_zero(self.poly_eval(&p, x))).count();
        }
        // gcd(P, X^q - X)
        let xq = self.poly_powmod_x(self.order(), &p);
        let mut h = xq;
        while h.len() < 2 {
            h.push(self.zero());
        }
        h[1] = self.sub(h[1], self.one());
        let g = self.poly_gcd(self.trim(h), p);
        g.len() - 1
    }

    pub fn poly_eval(&self, p: &[FqElem], x: FqElem) -> FqElem {
        p.iter().rev().fold(self.zero(), |acc, &c| self.add(self.mul(acc, x), c))
    }

    fn trim(&self, mut p: Vec<FqElem>) -> Vec<FqElem> {
        while p.len() > 1 && self.is_zero(*p.last().unwrap()) {
            p.pop();
        }
        if p.is_empty() {
            p.push(self.zero());
        }
        p
    }

    fn poly_rem(&self, a: Vec<FqElem>, b: &[FqElem]) -> Vec<FqElem> {
        let mut a = self.trim(a);
        let db = b.len() - 1;
        let lead_inv = self.inv(b[db]).expect("nonzero leading coefficient");
        while a.len() > db && !(a.len() == 1 && self.is_zero(a[0])) {
            let da = a.len() - 1;
            let f = self.mul(a[da], lead_inv);
            for i in 0..=db {
                a[da - db + i] = self.sub(a[da - db + i], self.mul(f, b[i]));
            }
            a.pop();
            a = self.trim(a);
            if a.len() - 1 < db {
                break;
            }
        }
        a
    }

    fn poly_mulmod(&self, a: &[FqElem], b: &[FqElem], m: &[FqElem]) -> Vec<FqElem> {
        let mut r = vec![self.zero(); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = self.add(r[i + j], self.mul(x, y));
            }
        }
        self.poly_rem(r, m)
    }

    fn poly_powmod_x(&self, mut e: u64, m: &[FqElem]) -> Vec<FqElem> {
        let mut result = vec![self.one()];
        let mut base = self.poly_rem(vec![self.zero(), self.one()], m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.poly_mulmod(&result, &base, m);
            }
            base = self.poly_mulmod(&base, &base, m);
            e >>= 1;
        }
        result
    }

    fn poly_gcd(&self, mut a: Vec<FqElem>, mut b: Vec<FqElem>) -> Vec<FqElem> {
        loop {
            let b_zero = b.len() == 1 && self.is_zero(b[0]);
            if b_zero {
                return a;
            }
            let r = self.poly_rem(a, &b);
            a = b;
            b = r;
        }
    }
}
