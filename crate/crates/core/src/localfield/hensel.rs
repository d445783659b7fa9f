use super::{FinitePlace, Place};
use crate::quadfield::QuadInt;

/// A polynomial in Z, W with O_K coefficients, stored as (deg_z, deg_w, coeff).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    pub terms: Vec<(u32, u32, QuadInt)>,
}

impl BivariatePoly {
    pub fn new(terms: Vec<(u32, u32, QuadInt)>) -> BivariatePoly {
        BivariatePoly { terms }
    }

    /// `d W^2 - d^2 - c Z^4`, the homogeneous space in its original form.
    pub fn homogeneous_space(d: &QuadInt, c: &QuadInt) -> BivariatePoly {
        BivariatePoly::new(vec![(0, 2, d.clone()), (0, 0, -(d * d)), (4, 0, -c)])
    }

    pub fn eval(&self, z: &QuadInt, w: &QuadInt) -> QuadInt {
        let ring = z.ring;
        self.terms
            .iter()
            .fold(ring.zero(), |acc, (i, j, c)| &acc + &(&(c * &z.pow(*i)) * &w.pow(*j)))
    }

    pub fn d_dz(&self) -> BivariatePoly {
        BivariatePoly::new(
            self.terms
                .iter()
                .filter(|(i, _, _)| *i > 0)
                .map(|(i, j, c)| (i - 1, *j, c.scale(&(*i).into())))
                .collect(),
        )
    }

    pub fn d_dw(&self) -> BivariatePoly {
        BivariatePoly::new(
            self.terms
                .iter()
                .filter(|(_, j, _)| *j > 0)
                .map(|(i, j, c)| (*i, j - 1, c.scale(&(*j).into())))
                .collect(),
        )
    }
}

fn certified_at(f: &BivariatePoly, z: &QuadInt, w: &QuadInt, v: &FinitePlace) -> bool {
    let value = f.eval(z, w);
    for deriv in [f.d_dw(), f.d_dz()] {
        let dv = deriv.eval(z, w);
        if dv.is_zero() {
            continue;
        }
        let vd = v.valuation(&dv) as u64;
        if value.is_zero() || v.valuation(&value) as u64 > 2 * vd {
            return true;
        }
    }
    false
}

/// Hensel criterion v(f) > 2 v(df/dW) (or in Z) at an integral point.
pub fn hensel_certified(f: &BivariatePoly, point: (&QuadInt, &QuadInt), place: &Place) -> bool {
    match place {
        Place::Complex => true,
        Place::Finite(v) => certified_at(f, point.0, point.1, v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sqrt_mod_prime;
    use crate::localfield::places_above;
    use crate::quadfield::{FieldContext, FieldKind};

    #[test]
    fn hensel_examples() {
        let r2 = FieldContext::new(FieldKind::Root2).unwrap();
        // p = 17 = 1 mod 8: W^2 + 1 - p Z^4 at (0, u) with u^2 = -1 mod p
        let p = 17u64;
        let u = sqrt_mod_prime(p - 1, p).unwrap() as i64;
        let f = BivariatePoly::new(vec![(0, 2, r2.int(1)), (0, 0, r2.int(1)), (4, 0, r2.int(-(p as i64)))]);
        for v in places_above(p, &r2).unwrap() {
            assert!(hensel_certified(&f, (&r2.int(0), &r2.int(u)), &Place::Finite(v)));
        }
        let g = FieldContext::new(FieldKind::GaussianI).unwrap();
        let f = BivariatePoly::new(vec![(0, 2, g.int(1)), (0, 0, g.int(-1))]);
        let v3 = Place::Finite(places_above(3, &g).unwrap().remove(0));
        assert!(hensel_certified(&f, (&g.int(0), &g.int(1)), &v3));
        let f = BivariatePoly::new(vec![(0, 2, g.int(1))]);
        assert!(!hensel_certified(&f, (&g.int(0), &g.int(0)), &v3));
    }
}
