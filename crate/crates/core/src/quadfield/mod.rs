//! Rings of integers of Q(i), Q(sqrt(-2)), Q(sqrt(-7)) and Q(sqrt(-q)), prime
//! splitting and quadratic-form representations.

mod quadint;
pub mod symbols;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use quadint::{FieldKind, KElem, QuadInt, Ring};
pub use symbols::{jacobi, reciprocity_checks, ReciprocityRecord};

use crate::arith::{class_number, is_odd_prime, is_prime, isqrt_u64};
use crate::error::{Error, Result};

/// The q values of class number one with q = 3 (mod 8).
pub const CLASS_NUMBER_ONE_Q: [u64; 6] = [3, 11, 19, 43, 67, 163];

/// Command-line level selector; `RootQ` needs a separate q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldFamily {
    Gauss,
    Root2,
    Root7,
    RootQ,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldContext {
    pub kind: FieldKind,
    pub ring: Ring,
    pub disc: i64,
    pub two_splitting: SplittingType,
    pub class_number: u64,
    /// All units of O_K.
    pub units: Vec<QuadInt>,
    /// Representatives of O_K^* modulo squares, identity first.
    pub unit_reps: Vec<QuadInt>,
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())
    }
}

/// Build a context. `allow_nonprincipal` lifts the class-number-one restriction on q.
pub fn make_context(family: FieldFamily, q: Option<u64>, allow_nonprincipal: bool) -> Result<FieldContext> {
    let kind = match family {
        FieldFamily::Gauss => FieldKind::GaussianI,
        FieldFamily::Root2 => FieldKind::Root2,
        FieldFamily::Root7 => FieldKind::Root7,
        FieldFamily::RootQ => {
            let q = q.ok_or_else(|| Error::UnsupportedField("rootq needs q".into()))?;
            FieldKind::RootQ(q)
        }
    };
    FieldContext::with_options(kind, allow_nonprincipal)
}

impl FieldContext {
    pub fn new(kind: FieldKind) -> Result<FieldContext> {
        FieldContext::with_options(kind, false)
    }

    pub fn with_options(kind: FieldKind, allow_nonprincipal: bool) -> Result<FieldContext> {
        if let FieldKind::RootQ(q) = kind {
            if !is_prime(q) || q % 8 != 3 {
                return Err(Error::UnsupportedField(format!("q = {q} must be a prime congruent to 3 mod 8")));
            }
        }
        let ring = Ring::new(kind);
        let disc = ring.disc();
        let h = class_number(disc);
        if let FieldKind::RootQ(q) = kind {
            if h != 1 && !allow_nonprincipal {
                return Err(Error::ClassNumberUnsupported { q, h });
            }
        }
        let two_splitting = match kind {
            FieldKind::GaussianI | FieldKind::Root2 => SplittingType::Ramified,
            FieldKind::Root7 => SplittingType::Split,
            FieldKind::RootQ(_) => SplittingType::Inert,
        };
        let mut units = Vec::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let u = ring.elem(a, b);
                if u.is_unit() {
                    units.push(u);
                }
            }
        }
        let mut unit_reps: Vec<QuadInt> = vec![ring.one()];
        let preferred = if kind == FieldKind::GaussianI { ring.omega() } else { ring.int(-1) };
        let mut candidates = vec![preferred];
        candidates.extend(units.iter().cloned());
        for u in candidates {
            if unit_reps.iter().all(|r| !(&u * r).is_square()) {
                unit_reps.push(u);
            }
        }
        assert_eq!(unit_reps.len(), 2, "units modulo squares has order two");
        Ok(FieldContext { kind, ring, disc, two_splitting, class_number: h, units, unit_reps })
    }

    pub fn name(&self) -> String {
        self.kind.name()
    }

    /// Short selector string used in reports: gauss, root2, root7, rootq11, ...
    pub fn tag(&self) -> String {
        match self.kind {
            FieldKind::GaussianI => "gauss".into(),
            FieldKind::Root2 => "root2".into(),
            FieldKind::Root7 => "root7".into(),
            FieldKind::RootQ(q) => format!("rootq{q}"),
        }
    }

    /// Generator of the units modulo squares.
    pub fn unit_generator(&self) -> QuadInt {
        self.unit_reps[1].clone()
    }

    pub fn int<T: Into<BigInt>>(&self, n: T) -> QuadInt {
        self.ring.int(n)
    }

    pub fn elem<S: Into<BigInt>, T: Into<BigInt>>(&self, a: S, b: T) -> QuadInt {
        self.ring.elem(a, b)
    }

    /// Value of the norm form at (s, t): N(s + t w).
    pub fn norm_form(&self, s: i64, t: i64) -> i128 {
        let (s, t) = (s as i128, t as i128);
        s * s + self.ring.trace as i128 * s * t + self.ring.norm as i128 * t * t
    }

    /// Prime elements above 2 (one, or two conjugates when 2 splits).
    pub fn primes_above_two(&self) -> Vec<QuadInt> {
        match self.kind {
            FieldKind::GaussianI => vec![self.elem(1, -1)],
            FieldKind::Root2 => vec![self.ring.omega()],
            FieldKind::Root7 => vec![self.ring.omega(), self.ring.omega().conj()],
            FieldKind::RootQ(_) => vec![self.int(2)],
        }
    }

    /// Reject p that is not an odd prime or that ramifies in K.
    pub fn check_p(&self, p: u64) -> Result<()> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if (self.disc.unsigned_abs()) % p == 0 {
            return Err(Error::PRamified { p, disc: self.disc, field: self.name() });
        }
        Ok(())
    }
}

/// Decomposition type of a rational prime l in K.
pub fn splitting_type(l: u64, ctx: &FieldContext) -> SplittingType {
    if l == 2 {
        return ctx.two_splitting;
    }
    match jacobi(ctx.disc, l) {
        0 => SplittingType::Ramified,
        1 => SplittingType::Split,
        _ => SplittingType::Inert,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitData {
    pub p: u64,
    pub mu: QuadInt,
    pub mu_bar: QuadInt,
    pub s: i64,
    pub t: i64,
}

/// All (s, t) with N(s + t w) = l, by direct search (l > 0).
pub fn norm_form_solutions(l: u64, ctx: &FieldContext) -> Vec<(i64, i64)> {
    // 4 l = (2s + T t)^2 + |D| t^2
    let d = ctx.disc.unsigned_abs();
    let big = 4 * l;
    let mut out = Vec::new();
    let tmax = isqrt_u64(big / d) as i64;
    for t in -tmax..=tmax {
        let rest = big - d * (t * t) as u64;
        let r = isqrt_u64(rest);
        if r * r != rest {
            continue;
        }
        for sign in [1i64, -1] {
            let u = sign * r as i64; // u = 2s + T t
            let num = u - ctx.ring.trace * t;
            if num % 2 == 0 {
                let s = num / 2;
                if ctx.norm_form(s, t) == l as i128 && !out.contains(&(s, t)) {
                    out.push((s, t));
                }
            }
        }
    }
    out
}

/// Pick the representative: s odd and positive, then t >= 0, then smallest (s, |t|).
fn normalize_pair(sols: &[(i64, i64)]) -> (i64, i64) {
    let key = |&(s, t): &(i64, i64)| {
        (s % 2 == 0, s <= 0, t < 0, s.abs(), t.abs())
    };
    *sols.iter().min_by_key(|x| key(x)).expect("nonempty")
}

pub fn split_prime(p: u64, ctx: &FieldContext) -> Result<SplitData> {
    if p == 2 || !is_prime(p) || splitting_type(p, ctx) != SplittingType::Split {
        return Err(Error::NotSplit { l: p, field: ctx.name() });
    }
    let sols = norm_form_solutions(p, ctx);
    if sols.is_empty() {
        return Err(Error::NonPrincipal { p, field: ctx.name() });
    }
    let (s, t) = normalize_pair(&sols);
    let mu = ctx.elem(s, t);
    let mu_bar = mu.conj();
    Ok(SplitData { p, mu, mu_bar, s, t })
}

/// The orbit of (s, t) under units and conjugation, normalized pair first.
pub fn split_orbit(data: &SplitData, ctx: &FieldContext) -> Vec<(i64, i64)> {
    let mut out = vec![(data.s, data.t)];
    for base in [&data.mu, &data.mu_bar] {
        for u in &ctx.units {
            let x = u * base;
            if let Some(pair) = x.to_i64_pair() {
                if !out.contains(&pair) {
                    out.push(pair);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;

    #[test]
    fn contexts() {
        let g = FieldContext::new(FieldKind::GaussianI).unwrap();
        assert_eq!(g.disc, -4);
        assert_eq!(g.two_splitting, SplittingType::Ramified);
        assert_eq!(g.unit_reps[1], g.elem(0, 1));
        let q11 = make_context(FieldFamily::RootQ, Some(11), false).unwrap();
        assert_eq!(q11.disc, -11);
        assert_eq!(q11.two_splitting, SplittingType::Inert);
        assert!(matches!(make_context(FieldFamily::RootQ, Some(15), false), Err(Error::UnsupportedField(_))));
        assert!(matches!(make_context(FieldFamily::RootQ, Some(7), false), Err(Error::UnsupportedField(_))));
        assert!(matches!(
            make_context(FieldFamily::RootQ, Some(59), false),
            Err(Error::ClassNumberUnsupported { q: 59, h: 3 })
        ));
        let q59 = make_context(FieldFamily::RootQ, Some(59), true).unwrap();
        assert_eq!(q59.class_number, 3);
        let q3 = make_context(FieldFamily::RootQ, Some(3), false).unwrap();
        assert_eq!(q3.units.len(), 6);
        assert_eq!(q3.unit_reps, vec![q3.int(1), q3.int(-1)]);
        for q in CLASS_NUMBER_ONE_Q {
            assert_eq!(FieldContext::new(FieldKind::RootQ(q)).unwrap().class_number, 1);
        }
    }

    #[test]
    fn split_examples() {
        let g = FieldContext::new(FieldKind::GaussianI).unwrap();
        let s = split_prime(17, &g).unwrap();
        assert_eq!((s.s, s.t), (1, 4));
        assert_eq!(&s.mu * &s.mu_bar, g.int(17));
        let r2 = FieldContext::new(FieldKind::Root2).unwrap();
        let s = split_prime(11, &r2).unwrap();
        assert_eq!((s.s, s.t), (3, 1));
        let r7 = FieldContext::new(FieldKind::Root7).unwrap();
        let s = split_prime(11, &r7).unwrap();
        assert_eq!((s.s, s.t), (3, 2));
        assert_eq!(r7.norm_form(3, 2), 11);
        assert!(matches!(split_prime(7, &g), Err(Error::NotSplit { .. })));
    }

    #[test]
    fn splitting_matches_congruences() {
        let g = FieldContext::new(FieldKind::GaussianI).unwrap();
        let r2 = FieldContext::new(FieldKind::Root2).unwrap();
        let r7 = FieldContext::new(FieldKind::Root7).unwrap();
        assert_eq!(splitting_type(13, &g), SplittingType::Split);
        assert_eq!(splitting_type(7, &g), SplittingType::Inert);
        assert_eq!(splitting_type(2, &r7), SplittingType::Split);
        for l in primes_up_to(3000).into_iter().skip(1) {
            assert_eq!(splitting_type(l, &g) == SplittingType::Split, l % 4 == 1);
            assert_eq!(splitting_type(l, &r2) == SplittingType::Split, l % 8 == 1 || l % 8 == 3);
            if l != 7 {
                assert_eq!(splitting_type(l, &r7) == SplittingType::Split, jacobi(l as i64, 7) == 1);
            }
        }
    }

    #[test]
    fn split_data_satisfies_forms() {
        let fields: Vec<FieldContext> = [FieldKind::GaussianI, FieldKind::Root2, FieldKind::Root7]
            .into_iter()
            .chain(CLASS_NUMBER_ONE_Q.iter().map(|&q| FieldKind::RootQ(q)))
            .map(|k| FieldContext::new(k).unwrap())
            .collect();
        for ctx in &fields {
            for p in primes_up_to(10_000).into_iter().skip(1) {
                if splitting_type(p, ctx) != SplittingType::Split {
                    continue;
                }
                let sd = split_prime(p, ctx).unwrap();
                assert_eq!(&sd.mu * &sd.mu_bar, ctx.int(p));
                assert_eq!(ctx.norm_form(sd.s, sd.t), p as i128);
                assert!(sd.s > 0 && sd.s % 2 != 0, "{} {p} {:?}", ctx.name(), (sd.s, sd.t));
                assert_eq!(split_orbit(&sd, ctx).len(), 2 * ctx.units.len());
            }
        }
    }
}
