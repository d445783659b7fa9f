//! E_p(K)_tors from reduction bounds, with the division-equation exclusions as
//! corroborating evidence.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd_u64, is_prime};
use crate::curves::{division_values, CurvePair, Domain, NumberField, Point};
use crate::error::{Error, Result};
use crate::lfunction::count_points_over;
use crate::localfield::places_above;
use crate::quadfield::{FieldContext, SplittingType};

/// Places used for the gcd bound before giving up.
const MAX_BOUND_PLACES: usize = 40;
const MIN_BOUND_PLACES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionRecord {
    pub n: u32,
    pub method: String,
    pub excluded: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundPlace {
    pub place: String,
    pub norm: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub p: u64,
    pub field: String,
    pub group: String,
    pub generator: (i64, i64),
    pub evidence: Vec<ExclusionRecord>,
    pub bound_places: Vec<BoundPlace>,
    /// gcd of |E(k_v)| over `bound_places`; |tors| divides it.
    pub gcd: u64,
}

/// Groups E(L)_tors over a quadratic field L may take (cyclic ones written Z/n).
pub const QUADRATIC_TORSION_CANDIDATES: [&str; 26] = [
    "Z/1", "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/7", "Z/8", "Z/9", "Z/10", "Z/11", "Z/12", "Z/13", "Z/14",
    "Z/15", "Z/16", "Z/18", "Z/2xZ/2", "Z/2xZ/4", "Z/2xZ/6", "Z/2xZ/8", "Z/2xZ/10", "Z/2xZ/12", "Z/3xZ/3",
    "Z/3xZ/6", "Z/4xZ/4",
];

pub fn torsion_subgroup(p: u64, ctx: &FieldContext) -> Result<TorsionReport> {
    ctx.check_p(p)?;
    let pair = CurvePair::new(p);
    let k = NumberField(ctx.ring);
    let e = pair.e_over(k);
    let mut evidence = Vec::new();

    let t = Point::Affine(k.zero(), k.zero());
    let doubled = e.double(&t)?;
    evidence.push(ExclusionRecord {
        n: 2,
        method: "group law".into(),
        excluded: false,
        detail: format!("[2](0,0) = O: {}", doubled.is_infinity()),
    });
    // the other 2-torsion points have x^2 = -p
    let full_two = k.from_i64(-(p as i64)).sqrt().is_some();
    evidence.push(ExclusionRecord {
        n: 2,
        method: "x^2 + p = 0 in K".into(),
        excluded: !full_two,
        detail: if full_two { "E[2] is rational".into() } else { "(0,0) is the only point of order 2".into() },
    });
    for n in [3u32, 4, 5, 7] {
        let r = division_values(n, p, ctx).expect("supported order");
        evidence.push(ExclusionRecord {
            n,
            method: r.system.clone(),
            excluded: !r.has_solution,
            detail: if r.has_solution { r.solutions.join("; ") } else { "no solution".into() },
        });
    }

    let mut bound_places = Vec::new();
    let mut g = 0u64;
    let mut l = 3u64;
    while bound_places.len() < MAX_BOUND_PLACES {
        if is_prime(l) && l != p && ctx.disc.unsigned_abs() % l != 0 {
            for v in places_above(l, ctx)? {
                let count = count_points_over(p, &v.residue);
                g = gcd_u64(g, count);
                bound_places.push(BoundPlace { place: v.label.clone(), norm: v.q(), count });
            }
            if bound_places.len() >= MIN_BOUND_PLACES && odd_part(g) == 1 {
                break;
            }
        }
        l += 2;
    }
    if odd_part(g) != 1 {
        return Err(Error::InconclusiveBound { gcd: g });
    }
    // The 2-part: E(K)[2] = Z/2 makes the 2-primary part cyclic, and no point of order 4
    // means it is exactly Z/2.
    let four_excluded = evidence.iter().any(|r| r.n == 4 && r.excluded);
    if !doubled.is_infinity() || full_two || (g % 4 == 0 && !four_excluded) {
        return Err(Error::InconclusiveBound { gcd: g });
    }
    Ok(TorsionReport {
        p,
        field: ctx.name(),
        group: "Z/2Z".into(),
        generator: (0, 0),
        evidence,
        bound_places,
        gcd: g,
    })
}

fn odd_part(mut n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    while n % 2 == 0 {
        n /= 2;
    }
    n
}

/// Whether the places used in the bound are unramified of odd residue characteristic.
pub fn bound_places_are_admissible(report: &TorsionReport, ctx: &FieldContext) -> bool {
    report.bound_places.iter().all(|b| {
        let l = smallest_prime_factor(b.norm);
        l != 2 && crate::quadfield::splitting_type(l, ctx) != SplittingType::Ramified
    })
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..=n).find(|d| n % d == 0).unwrap_or(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::FieldKind;

    #[test]
    fn examples() {
        let g = FieldContext::new(FieldKind::GaussianI).unwrap();
        let r = torsion_subgroup(3, &g).unwrap();
        assert_eq!(r.group, "Z/2Z");
        assert_eq!(r.generator, (0, 0));
        assert!(bound_places_are_admissible(&r, &g));
        for b in &r.bound_places {
            assert_eq!(b.count % 2, 0);
        }
        let r2 = FieldContext::new(FieldKind::Root2).unwrap();
        assert_eq!(torsion_subgroup(5, &r2).unwrap().group, "Z/2Z");
        let r7 = FieldContext::new(FieldKind::Root7).unwrap();
        assert!(matches!(torsion_subgroup(7, &r7), Err(Error::PRamified { .. })));
        assert!(QUADRATIC_TORSION_CANDIDATES.contains(&"Z/2"));
    }
}
