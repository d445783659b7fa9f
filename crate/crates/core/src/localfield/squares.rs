use std::collections::HashSet;

use super::{FinitePlace, Place, INFINITE_VALUATION};
use crate::arith::gcd_u64;
use crate::quadfield::QuadInt;

/// A global element trusted modulo pi^precision at `place`.
#[derive(Clone, Debug)]
pub struct LocalApprox {
    pub value: QuadInt,
    pub precision: u32,
    pub place: String,
}

impl FinitePlace {
    /// Is the v-unit u a square in K_v?
    pub fn is_square_unit(&self, u: &QuadInt) -> bool {
        debug_assert_eq!(self.valuation(u), 0);
        if self.l != 2 {
            return self.residue.is_square(self.residue_of(u));
        }
        self.square_keys.contains(&self.digits(u, 2 * self.e2 + 1))
    }

    /// y with y^2 = u mod pi^(2 e2 + 1) for a v-unit u that is a local square.
    pub fn sqrt_unit_approx(&self, u: &QuadInt) -> Option<QuadInt> {
        if self.l != 2 {
            let r = self.residue.sqrt(self.residue_of(u))?;
            return Some(self.lift(r));
        }
        let k = 2 * self.e2 + 1;
        self.unit_reps_mod_pi_power(self.e2 + 1)
            .into_iter()
            .find(|y| self.valuation(&(&(y * y) - u)) >= k)
    }

    /// Local square root to precision v(u)/2 + 2 e2 + 1 (enough for a Hensel certificate).
    pub fn sqrt_approx(&self, u: &QuadInt) -> Option<LocalApprox> {
        let (v, unit) = self.unit_part(u);
        if v % 2 == 1 {
            return None;
        }
        let y = self.sqrt_unit_approx(&unit)?;
        Some(LocalApprox {
            value: &self.pi_pow(v / 2) * &y,
            precision: v / 2 + 2 * self.e2 + 1,
            place: self.label.clone(),
        })
    }

    pub fn is_square(&self, u: &QuadInt) -> bool {
        assert!(!u.is_zero(), "square test of zero");
        let (v, unit) = self.unit_part(u);
        v % 2 == 0 && self.is_square_unit(&unit)
    }

    pub fn is_fourth_power(&self, u: &QuadInt) -> bool {
        assert!(!u.is_zero(), "fourth power test of zero");
        let (v, unit) = self.unit_part(u);
        if v % 4 != 0 {
            return false;
        }
        if self.l != 2 {
            let q = self.q();
            let e = (q - 1) / gcd_u64(4, q - 1);
            let r = self.residue.pow(self.residue_of(&unit), e);
            return r == self.residue.one();
        }
        let k = 4 * self.e2 + 1;
        self.unit_reps_mod_pi_power(2 * self.e2 + 1)
            .iter()
            .any(|y| self.valuation(&(&y.pow(4) - &unit)) >= k)
    }

    /// All unit squares modulo pi^k by brute force (reference for tests).
    pub fn unit_squares_mod(&self, k: u32) -> HashSet<Vec<crate::ffield::FqElem>> {
        self.unit_reps_mod_pi_power(k).iter().map(|y| self.digits(&(y * y), k)).collect()
    }
}

pub fn is_square_local(u: &QuadInt, place: &Place) -> bool {
    match place {
        Place::Complex => true,
        Place::Finite(v) => v.is_square(u),
    }
}

pub fn is_fourth_power_local(u: &QuadInt, place: &Place) -> bool {
    match place {
        Place::Complex => true,
        Place::Finite(v) => v.is_fourth_power(u),
    }
}

pub fn valuation(x: &QuadInt, place: &FinitePlace) -> u32 {
    if x.is_zero() {
        INFINITE_VALUATION
    } else {
        place.valuation(x)
    }
}

#[cfg(test)]
mod tests {
    use crate::localfield::places_above;
    use crate::quadfield::{FieldContext, FieldKind};

    #[test]
    fn square_examples() {
        let g = FieldContext::new(FieldKind::GaussianI).unwrap();
        let pi2 = places_above(2, &g).unwrap().remove(0);
        assert!(!pi2.is_square(&g.elem(1, -1)));
        assert!(pi2.is_square(&g.int(-1)));
        assert!(!pi2.is_square(&g.elem(0, 1)));
        // -1 at a degree-one place over l = 1 mod 4
        let r2 = FieldContext::new(FieldKind::Root2).unwrap();
        for v in places_above(17, &r2).unwrap() {
            assert!(v.is_square(&r2.int(-1)));
        }
        for v in places_above(11, &r2).unwrap() {
            assert!(!v.is_square(&r2.int(-1)));
        }
        for kind in [FieldKind::GaussianI, FieldKind::Root2, FieldKind::Root7, FieldKind::RootQ(3)] {
            let ctx = FieldContext::new(kind).unwrap();
            for l in [2u64, 3, 5, 7] {
                for v in places_above(l, &ctx).unwrap() {
                    for a in -4i64..4 {
                        for b in -4i64..4 {
                            let x = ctx.elem(a, b);
                            if x.is_zero() {
                                continue;
                            }
                            assert!(v.is_square(&(&x * &x)));
                            assert!(v.is_fourth_power(&x.pow(4)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fourth_power_examples() {
        let g = FieldContext::new(FieldKind::GaussianI).unwrap();
        let pi2 = places_above(2, &g).unwrap().remove(0);
        assert!(pi2.is_fourth_power(&g.int(16)));
        // -4 = (1+i)^4
        assert!(pi2.is_fourth_power(&g.int(-4)));
        assert!(!pi2.is_fourth_power(&g.int(4)));
        let inert = places_above(7, &g).unwrap().remove(0);
        assert!(!inert.is_fourth_power(&g.int(7)));
    }

    #[test]
    fn square_test_matches_exhaustive_squaring() {
        for kind in [FieldKind::GaussianI, FieldKind::Root2, FieldKind::Root7, FieldKind::RootQ(11)] {
            let ctx = FieldContext::new(kind).unwrap();
            for v in places_above(2, &ctx).unwrap() {
                let k = 2 * v.e2 + 1;
                // squares of all units mod pi^k, not just those mod pi^(e2+1)
                let reference = v.unit_squares_mod(k);
                for u in v.unit_reps_mod_pi_power(k) {
                    assert_eq!(v.is_square_unit(&u), reference.contains(&v.digits(&u, k)), "{kind:?} {u}");
                }
            }
        }
    }
}
