//! The torsion exclusion equations for orders 3, 4, 5 and 7, solved exactly in K.
//!
//! Order 3: x([2]Q) = x(Q) forces 3x^4 + 6px^2 - p^2 = 0.
//! Order 4: [2]Q = (0, 0) forces x^2 - p = 0.
//! Order 5: x(Q) = u^2, x([2]Q) = v^2 with v a unit and
//!   v^4 + p = c^2, v^4 - p = 2uvc, hence c | 2v^4.
//! Order 7: x(Q) = u^2, x([2]Q) = v^2, x([4]Q) = w^2, and each consecutive pair
//!   (a, b) of the cycle u -> v -> w -> u satisfies (a^4 - p)^2 = 4a^2 b^2 (a^4 + p).
//!   The same valuation argument as for order 5 makes u, v, w units, so the
//!   search runs over unit triples with c = (a^4 - p) / 2ab and c^2 = a^4 + p.

use serde::{Deserialize, Serialize};

use super::{Domain, NumberField};
use crate::quadfield::{norm_form_solutions, FieldContext, KElem, QuadInt};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisionReport {
    pub n: u32,
    pub p: u64,
    pub field: String,
    pub system: String,
    /// Solutions found, as display strings. Empty means the order is excluded.
    pub solutions: Vec<String>,
    pub has_solution: bool,
}

fn sqrt_k(x: &KElem) -> Option<KElem> {
    x.sqrt()
}

fn elements_of_norm(n: u64, ctx: &FieldContext) -> Vec<QuadInt> {
    norm_form_solutions(n, ctx).into_iter().map(|(s, t)| ctx.elem(s, t)).collect()
}

fn order_three(p: u64, ctx: &FieldContext) -> Vec<String> {
    let k = NumberField(ctx.ring);
    let pp = p as i64;
    // y = x^2 solves 3y^2 + 6py - p^2 = 0, discriminant 48 p^2.
    let disc = k.from_i64(48 * pp * pp);
    let Some(r) = sqrt_k(&disc) else { return Vec::new() };
    let mut out = Vec::new();
    for r in [r.clone(), r.neg()] {
        let y = k.div(&k.sub(&r, &k.from_i64(6 * pp)), &k.from_i64(6)).expect("nonzero");
        if let Some(x) = sqrt_k(&y) {
            out.push(format!("x = {x}"));
        }
    }
    out
}

fn order_four(p: u64, ctx: &FieldContext) -> Vec<String> {
    let k = NumberField(ctx.ring);
    match sqrt_k(&k.from_i64(p as i64)) {
        Some(x) => vec![format!("x = {x}")],
        None => Vec::new(),
    }
}

fn order_five(p: u64, ctx: &FieldContext) -> Vec<String> {
    let pp = ctx.int(p);
    let two = ctx.int(2);
    let mut divisors_of_two = Vec::new();
    for n in [1u64, 2, 4] {
        for c in elements_of_norm(n, ctx) {
            if c.divides(&two) {
                divisors_of_two.push(c);
            }
        }
    }
    let mut out = Vec::new();
    for v in &ctx.units {
        let v4 = v.pow(4);
        for c in &divisors_of_two {
            if &(c * c) - &v4 != pp {
                continue;
            }
            // c(c + 2uv) = 2v^4
            let Some(q) = (&two * &v4).div_exact(c) else { continue };
            let Some(u) = (&q - c).div_exact(&(&two * v)) else { continue };
            if !u.is_zero() {
                out.push(format!("u = {u}, v = {v}, c = {c}"));
            }
        }
    }
    out
}

fn order_seven(p: u64, ctx: &FieldContext) -> Vec<String> {
    let pp = ctx.int(p);
    let two = ctx.int(2);
    let link = |a: &QuadInt, b: &QuadInt| -> bool {
        let a4 = a.pow(4);
        let Some(c) = (&a4 - &pp).div_exact(&(&two * &(a * b))) else { return false };
        &c * &c == &a4 + &pp
    };
    let mut out = Vec::new();
    for u in &ctx.units {
        for v in &ctx.units {
            if !link(u, v) {
                continue;
            }
            for w in &ctx.units {
                if link(v, w) && link(w, u) {
                    out.push(format!("u = {u}, v = {v}, w = {w}"));
                }
            }
        }
    }
    out
}

/// Decide whether the exclusion system for points of order n has a solution in K.
pub fn division_values(n: u32, p: u64, ctx: &FieldContext) -> Option<DivisionReport> {
    let (system, solutions) = match n {
        3 => ("3x^4 + 6px^2 - p^2 = 0", order_three(p, ctx)),
        4 => ("x^2 - p = 0", order_four(p, ctx)),
        5 => ("v unit, v^4 + p = c^2, v^4 - p = 2uvc, u != 0", order_five(p, ctx)),
        7 => ("u, v, w units, (a^4 - p)^2 = 4a^2b^2(a^4 + p) around u -> v -> w -> u", order_seven(p, ctx)),
        _ => return None,
    };
    Some(DivisionReport {
        n,
        p,
        field: ctx.name(),
        system: system.into(),
        has_solution: !solutions.is_empty(),
        solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use crate::quadfield::{FieldKind, CLASS_NUMBER_ONE_Q};

    #[test]
    fn worked_examples() {
        let g = FieldContext::new(FieldKind::GaussianI).unwrap();
        assert!(!division_values(3, 3, &g).unwrap().has_solution);
        assert!(!division_values(4, 5, &g).unwrap().has_solution);
        assert!(!division_values(5, 13, &g).unwrap().has_solution);
        assert!(division_values(6, 13, &g).is_none());
    }

    #[test]
    fn order_four_detects_genuine_roots() {
        let r7 = FieldContext::new(FieldKind::Root7).unwrap();
        let k = NumberField(r7.ring);
        assert!(sqrt_k(&k.from_i64(-7)).is_some());
        assert!(sqrt_k(&k.from_i64(7)).is_none());
    }

    #[test]
    fn no_field_admits_small_torsion() {
        let mut kinds = vec![FieldKind::GaussianI, FieldKind::Root2, FieldKind::Root7];
        kinds.extend(CLASS_NUMBER_ONE_Q.iter().map(|&q| FieldKind::RootQ(q)));
        for kind in kinds {
            let ctx = FieldContext::new(kind).unwrap();
            for p in primes_up_to(300).into_iter().skip(1) {
                if ctx.disc.unsigned_abs() % p == 0 {
                    continue;
                }
                for n in [3, 4, 5, 7] {
                    let r = division_values(n, p, &ctx).unwrap();
                    assert!(!r.has_solution, "{kind:?} p={p}: {r:?}");
                }
            }
        }
    }
}
