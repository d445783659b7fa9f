//! Completions of K at finite places: valuations, residue maps, local squares,
//! Hensel certificates and the local solvability decision for `dW^2 = d^2 + cZ^4`.

mod hensel;
mod quartic;
mod squares;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

pub use hensel::{hensel_certified, BivariatePoly};
pub use quartic::{quartic_locally_solvable, verify_verdict, Certificate, Chart, SolvabilityVerdict, VerdictStatus};
pub use squares::{is_fourth_power_local, is_square_local, valuation, LocalApprox};

use crate::arith::{inv_mod, mul_mod, reduce_big};
use crate::error::Result;
use crate::ffield::{Fq, FqElem};
use crate::quadfield::{norm_form_solutions, split_prime, splitting_type, FieldContext, QuadInt, Ring, SplittingType};

/// Sentinel valuation of zero.
pub const INFINITE_VALUATION: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct FinitePlace {
    pub pi: QuadInt,
    pi_conj: QuadInt,
    norm_pi: BigInt,
    /// Residue characteristic.
    pub l: u64,
    pub e: u32,
    pub f: u32,
    /// v(2); zero at odd places.
    pub e2: u32,
    pub residue: Fq,
    omega_res: u64,
    pub label: String,
    pub ring: Ring,
    /// Unit squares modulo pi^(2 e2 + 1), as digit strings (residue characteristic two only).
    square_keys: HashSet<Vec<FqElem>>,
}

#[derive(Clone, Debug)]
pub enum Place {
    Complex,
    Finite(FinitePlace),
}

impl Place {
    pub fn label(&self) -> String {
        match self {
            Place::Complex => "inf".into(),
            Place::Finite(v) => v.label.clone(),
        }
    }

    pub fn as_finite(&self) -> Option<&FinitePlace> {
        match self {
            Place::Complex => None,
            Place::Finite(v) => Some(v),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl PartialEq for FinitePlace {
    fn eq(&self, other: &Self) -> bool {
        self.l == other.l && self.pi.divides(&other.pi) && other.pi.divides(&self.pi)
    }
}

impl FinitePlace {
    pub fn new(pi: QuadInt, l: u64, e: u32, f: u32, label: String) -> FinitePlace {
        let ring = pi.ring;
        let norm_pi = pi.norm();
        debug_assert_eq!(norm_pi, BigInt::from(l).pow(f));
        let residue = if f == 1 { Fq::prime(l) } else { Fq::quadratic(l, ring.trace, ring.norm) };
        let omega_res = if f == 1 {
            // pi = a + b w = 0 gives w = -a / b
            let a = reduce_big(&pi.a, l);
            let b = reduce_big(&pi.b, l);
            if b == 0 {
                0
            } else {
                let binv = inv_mod(b, l).expect("b invertible");
                (l - a) % l * binv % l
            }
        } else {
            0
        };
        let mut place = FinitePlace {
            pi_conj: pi.conj(),
            pi,
            norm_pi,
            l,
            e,
            f,
            e2: if l == 2 { e } else { 0 },
            residue,
            omega_res,
            label,
            ring,
            square_keys: HashSet::new(),
        };
        if l == 2 {
            let k = 2 * place.e2 + 1;
            let keys = place
                .unit_reps_mod_pi_power(place.e2 + 1)
                .iter()
                .map(|y| place.digits(&(y * y), k))
                .collect();
            place.square_keys = keys;
        }
        place
    }

    /// Residue field size.
    pub fn q(&self) -> u64 {
        self.residue.order()
    }

    pub fn is_inert(&self) -> bool {
        self.f == 2
    }

    /// Exact division by pi, if pi divides x.
    pub fn div_pi(&self, x: &QuadInt) -> Option<QuadInt> {
        if self.is_inert() {
            return x.div_int_exact(&BigInt::from(self.l));
        }
        (x * &self.pi_conj).div_int_exact(&self.norm_pi)
    }

    pub fn div_pi_pow(&self, x: &QuadInt, k: u32) -> Option<QuadInt> {
        let mut y = x.clone();
        for _ in 0..k {
            y = self.div_pi(&y)?;
        }
        Some(y)
    }

    pub fn valuation(&self, x: &QuadInt) -> u32 {
        if x.is_zero() {
            return INFINITE_VALUATION;
        }
        let mut v = 0;
        let mut y = x.clone();
        while let Some(z) = self.div_pi(&y) {
            y = z;
            v += 1;
        }
        v
    }

    /// Valuation of a rational integer.
    pub fn valuation_int(&self, n: &BigInt) -> u32 {
        if n.is_zero() {
            return INFINITE_VALUATION;
        }
        let l = BigInt::from(self.l);
        let mut n = n.clone();
        let mut v = 0;
        while (&n % &l).is_zero() {
            n /= &l;
            v += 1;
        }
        v * self.e
    }

    /// (v(x), x / pi^v(x)) for x != 0.
    pub fn unit_part(&self, x: &QuadInt) -> (u32, QuadInt) {
        assert!(!x.is_zero(), "unit part of zero");
        let mut v = 0;
        let mut y = x.clone();
        while let Some(z) = self.div_pi(&y) {
            y = z;
            v += 1;
        }
        (v, y)
    }

    pub fn residue_of(&self, x: &QuadInt) -> FqElem {
        let l = self.l;
        if self.is_inert() {
            FqElem(reduce_big(&x.a, l), reduce_big(&x.b, l))
        } else {
            let a = reduce_big(&x.a, l);
            let b = reduce_big(&x.b, l);
            FqElem((a + mul_mod(b, self.omega_res, l)) % l, 0)
        }
    }

    pub fn lift(&self, r: FqElem) -> QuadInt {
        self.ring.elem(r.0 as i64, r.1 as i64)
    }

    /// Lifts of all residue classes (zero first).
    pub fn residue_reps(&self) -> Vec<QuadInt> {
        self.residue.elements().map(|r| self.lift(r)).collect()
    }

    /// The first k pi-adic digits of x (as residues); a canonical key for x mod pi^k.
    pub fn digits(&self, x: &QuadInt, k: u32) -> Vec<FqElem> {
        let mut out = Vec::with_capacity(k as usize);
        let mut y = x.clone();
        for _ in 0..k {
            let r = self.residue_of(&y);
            out.push(r);
            y = self.div_pi(&(&y - &self.lift(r))).expect("digit removal is exact");
        }
        out
    }

    /// Representatives of (O/pi^k)^*: sums of digits times powers of pi with a nonzero leading digit.
    pub fn unit_reps_mod_pi_power(&self, k: u32) -> Vec<QuadInt> {
        let digits = self.residue_reps();
        let mut reps: Vec<QuadInt> = digits[1..].to_vec();
        let mut pik = self.ring.one();
        for _ in 1..k {
            pik = &pik * &self.pi;
            let mut next = Vec::with_capacity(reps.len() * digits.len());
            for r in &reps {
                for d in &digits {
                    next.push(r + &(d * &pik));
                }
            }
            reps = next;
        }
        reps
    }

    pub fn pi_pow(&self, k: u32) -> QuadInt {
        self.pi.pow(k)
    }
}

/// All places above the rational prime l. Split primes use the normalized
/// generator from `split_prime`, so labels agree with the descent basis.
pub fn places_above(l: u64, ctx: &FieldContext) -> Result<Vec<FinitePlace>> {
    let st = splitting_type(l, ctx);
    if l == 2 {
        let pis = ctx.primes_above_two();
        return Ok(match st {
            SplittingType::Ramified => vec![FinitePlace::new(pis[0].clone(), 2, 2, 1, format!("pi2={}", pis[0]))],
            SplittingType::Split => vec![
                FinitePlace::new(pis[0].clone(), 2, 1, 1, format!("pi2={}", pis[0])),
                FinitePlace::new(pis[1].clone(), 2, 1, 1, format!("pi2bar={}", pis[1])),
            ],
            SplittingType::Inert => vec![FinitePlace::new(pis[0].clone(), 2, 1, 2, "(2)".into())],
        });
    }
    Ok(match st {
        SplittingType::Inert => vec![FinitePlace::new(ctx.int(l), l, 1, 2, format!("({l})"))],
        SplittingType::Split => {
            let sd = split_prime(l, ctx)?;
            vec![
                FinitePlace::new(sd.mu.clone(), l, 1, 1, format!("mu={}", sd.mu)),
                FinitePlace::new(sd.mu_bar.clone(), l, 1, 1, format!("mubar={}", sd.mu_bar)),
            ]
        }
        SplittingType::Ramified => {
            let (s, t) = norm_form_solutions(l, ctx)[0];
            let pi = ctx.elem(s, t);
            vec![FinitePlace::new(pi.clone(), l, 2, 1, format!("pi{l}={pi}"))]
        }
    })
}

/// S = {complex place} U places over 2 U places over p.
pub fn s_places(p: u64, ctx: &FieldContext) -> Result<Vec<Place>> {
    let mut out = vec![Place::Complex];
    out.extend(places_above(2, ctx)?.into_iter().map(Place::Finite));
    out.extend(places_above(p, ctx)?.into_iter().map(Place::Finite));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::FieldKind;

    #[test]
    fn valuation_examples() {
        let g = FieldContext::new(FieldKind::GaussianI).unwrap();
        let pi2 = &places_above(2, &g).unwrap()[0];
        assert_eq!(pi2.valuation(&g.int(2)), 2);
        assert_eq!(pi2.valuation(&g.int(0)), INFINITE_VALUATION);
        assert_eq!(pi2.valuation(&g.elem(1, -1)), 1);
        let p7 = &places_above(7, &g).unwrap()[0];
        assert_eq!(p7.valuation(&g.int(7)), 1);
        assert_eq!(p7.q(), 49);
        let r7 = FieldContext::new(FieldKind::Root7).unwrap();
        let two = places_above(2, &r7).unwrap();
        assert_eq!(two.len(), 2);
        for v in &two {
            assert_eq!(v.valuation(&r7.int(2)), 1);
            assert_eq!(v.valuation(&v.pi), 1);
        }
        assert_eq!(two[0].valuation(&two[1].pi), 0);
        let q11 = FieldContext::new(FieldKind::RootQ(11)).unwrap();
        let two = &places_above(2, &q11).unwrap()[0];
        assert_eq!(two.q(), 4);
        assert_eq!(two.valuation(&q11.int(8)), 3);
    }

    #[test]
    fn valuation_is_additive() {
        let r2 = FieldContext::new(FieldKind::Root2).unwrap();
        let places: Vec<FinitePlace> = [2u64, 3, 5, 11].iter().flat_map(|&l| places_above(l, &r2).unwrap()).collect();
        for v in &places {
            for a in -5i64..5 {
                for b in -5i64..5 {
                    let x = r2.elem(a, b);
                    let y = r2.elem(b + 3, a - 1);
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    assert_eq!(v.valuation(&(&x * &y)), v.valuation(&x) + v.valuation(&y));
                }
            }
        }
    }

    #[test]
    fn residue_map_is_a_ring_map() {
        for kind in [FieldKind::GaussianI, FieldKind::Root7, FieldKind::RootQ(19)] {
            let ctx = FieldContext::new(kind).unwrap();
            for l in [2u64, 3, 5, 7, 11, 13, 19] {
                for v in places_above(l, &ctx).unwrap() {
                    let f = v.residue;
                    for a in -4i64..4 {
                        for b in -4i64..4 {
                            let x = ctx.elem(a, b);
                            let y = ctx.elem(b, 2 * a + 1);
                            assert_eq!(v.residue_of(&(&x * &y)), f.mul(v.residue_of(&x), v.residue_of(&y)));
                            assert_eq!(v.residue_of(&(&x + &y)), f.add(v.residue_of(&x), v.residue_of(&y)));
                        }
                    }
                    assert!(f.is_zero(v.residue_of(&v.pi)));
                }
            }
        }
    }
}
