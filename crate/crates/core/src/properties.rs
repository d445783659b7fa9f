//! Seeded randomized property suites. Each case draws its inputs from a
//! `ChaCha8Rng`, so a run is reproducible from (suite, cases, seed).

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::primes_up_to;
use crate::curves::{affine_points, apply_isogeny, duplicate_x, CurvePair, IsogenyDirection, Point};
use crate::descent::{enumerate_k_s_2, is_closed, selmer_group_in, SelmerAmbient, SelmerGroup, SelmerSide};
use crate::ffield::Fq;
use crate::localfield::{places_above, quartic_locally_solvable, FinitePlace, Place};
use crate::quadfield::{FieldContext, FieldKind, QuadInt};
use crate::DEFAULT_DEPTH_CAP;

pub const DEFAULT_SEED: u64 = 20240229;
pub const DEFAULT_CASES: usize = 1000;

pub const SUITES: [&str; 6] = [
    "subgroup_closure",
    "galois_equivariance",
    "local_invariance",
    "group_law",
    "dual_isogeny",
    "duplication",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub const ALL_FIELDS: [FieldKind; 9] = [
    FieldKind::GaussianI,
    FieldKind::Root2,
    FieldKind::Root7,
    FieldKind::RootQ(3),
    FieldKind::RootQ(11),
    FieldKind::RootQ(19),
    FieldKind::RootQ(43),
    FieldKind::RootQ(67),
    FieldKind::RootQ(163),
];

/// Primes drawn for descent-level cases; small so that groups can be cached.
const DESCENT_P_MAX: u64 = 60;
/// Residue characteristics for the finite-field suites.
const FF_L_MAX: u64 = 60;

type Case<'a> = Box<dyn FnMut(&mut ChaCha8Rng) -> Result<(), String> + 'a>;

fn run(suite: &str, cases: usize, seed: u64, mut case: Case<'_>) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut first_failure = None;
    for i in 0..cases {
        if let Err(msg) = case(&mut rng) {
            failures += 1;
            first_failure.get_or_insert_with(|| format!("case {i}: {msg}"));
        }
    }
    PropertyReport { suite: suite.into(), seed, cases, failures, first_failure }
}

/// Run one suite by name; `None` for an unknown name.
pub fn run_suite(name: &str, cases: usize, seed: u64) -> Option<PropertyReport> {
    let case: Case = match name {
        "subgroup_closure" => subgroup_closure(),
        "galois_equivariance" => galois_equivariance(),
        "local_invariance" => local_invariance(),
        "group_law" => Box::new(group_law),
        "dual_isogeny" => Box::new(dual_isogeny),
        "duplication" => Box::new(duplication),
        _ => return None,
    };
    Some(run(name, cases, seed, case))
}

pub fn run_all(cases: usize, seed: u64) -> Vec<PropertyReport> {
    SUITES.iter().map(|s| run_suite(s, cases, seed).expect("known suite")).collect()
}

struct DescentInput {
    ctx: FieldContext,
    p: u64,
}

fn draw_descent(rng: &mut ChaCha8Rng) -> DescentInput {
    let kind = *ALL_FIELDS.choose(rng).expect("nonempty");
    let ctx = FieldContext::new(kind).expect("supported field");
    let pool: Vec<u64> = primes_up_to(DESCENT_P_MAX).into_iter().filter(|&p| ctx.check_p(p).is_ok()).collect();
    let p = *pool.choose(rng).expect("some admissible prime");
    DescentInput { ctx, p }
}

fn side(rng: &mut ChaCha8Rng) -> SelmerSide {
    if rng.gen_bool(0.5) {
        SelmerSide::Phi
    } else {
        SelmerSide::PhiHat
    }
}

type GroupKey = (String, u64, SelmerSide);

/// Products of random pairs of Selmer elements stay in the group.
fn subgroup_closure<'a>() -> Case<'a> {
    let mut cache: HashMap<GroupKey, (SelmerAmbient, SelmerGroup)> = HashMap::new();
    Box::new(move |rng| {
        let DescentInput { ctx, p } = draw_descent(rng);
        let s = side(rng);
        let key = (ctx.tag(), p, s);
        if !cache.contains_key(&key) {
            let amb = enumerate_k_s_2(p, &ctx).map_err(|e| e.to_string())?;
            let g = selmer_group_in(&amb, &ctx, s, DEFAULT_DEPTH_CAP).map_err(|e| e.to_string())?;
            cache.insert(key.clone(), (amb, g));
        }
        let (amb, g) = &cache[&key];
        let masks = g.masks();
        if !is_closed(&masks) || masks.len() != 1 << g.dim {
            return Err(format!("{} p={p}: group of size {} is not a subgroup", ctx.name(), masks.len()));
        }
        let elems: Vec<u32> = masks.iter().copied().collect();
        let a = *elems.choose(rng).expect("contains 1");
        let b = *elems.choose(rng).expect("contains 1");
        // multiply representatives and re-identify the square class
        let prod = &amb.element(a).rep * &amb.element(b).rep;
        match amb.class_of(&prod) {
            Some(m) if m == a ^ b && masks.contains(&m) => Ok(()),
            other => Err(format!("{} p={p}: {a} * {b} -> {other:?}", ctx.name())),
        }
    })
}

fn conjugate_place<'a>(v: &FinitePlace, all: &'a [FinitePlace]) -> &'a FinitePlace {
    let c = v.pi.conj();
    all.iter().find(|w| w.valuation(&c) > 0).expect("conjugate place exists")
}

fn random_place(ctx: &FieldContext, p: u64, rng: &mut ChaCha8Rng) -> (FinitePlace, Vec<FinitePlace>) {
    let l = if rng.gen_bool(0.5) { 2 } else { p };
    let all = places_above(l, ctx).expect("places");
    (all.choose(rng).expect("nonempty").clone(), all)
}

/// The verdict at v for d equals the verdict at conj(v) for conj(d).
fn galois_equivariance<'a>() -> Case<'a> {
    let mut cache: HashMap<(String, u64), SelmerAmbient> = HashMap::new();
    Box::new(move |rng| {
        let DescentInput { ctx, p } = draw_descent(rng);
        let amb = cache
            .entry((ctx.tag(), p))
            .or_insert_with(|| enumerate_k_s_2(p, &ctx).expect("ambient"))
            .clone();
        let d = amb.elements.choose(rng).expect("nonempty").rep.clone();
        let c = side(rng).c(p, &ctx);
        let (v, all) = random_place(&ctx, p, rng);
        let w = conjugate_place(&v, &all);
        let a = quartic_locally_solvable(&d, &c, &Place::Finite(v.clone()), DEFAULT_DEPTH_CAP);
        let b = quartic_locally_solvable(&d.conj(), &c.conj(), &Place::Finite(w.clone()), DEFAULT_DEPTH_CAP);
        if a.status == b.status {
            Ok(())
        } else {
            Err(format!("{} p={p} d={d} at {}: {:?} vs {:?} at {}", ctx.name(), v.label, a.status, b.status, w.label))
        }
    })
}

fn small_nonzero(ctx: &FieldContext, rng: &mut ChaCha8Rng) -> QuadInt {
    loop {
        let u = ctx.elem(rng.gen_range(-6i64..=6), rng.gen_range(-6i64..=6));
        if !u.is_zero() {
            return u;
        }
    }
}

/// Verdicts depend on d only through its square class, and on c only up to fourth powers.
fn local_invariance<'a>() -> Case<'a> {
    let mut cache: HashMap<(String, u64), SelmerAmbient> = HashMap::new();
    Box::new(move |rng| {
        let DescentInput { ctx, p } = draw_descent(rng);
        let amb = cache
            .entry((ctx.tag(), p))
            .or_insert_with(|| enumerate_k_s_2(p, &ctx).expect("ambient"))
            .clone();
        let d = amb.elements.choose(rng).expect("nonempty").rep.clone();
        let c = side(rng).c(p, &ctx);
        let (v, _) = random_place(&ctx, p, rng);
        let u = small_nonzero(&ctx, rng);
        let place = Place::Finite(v);
        let base = quartic_locally_solvable(&d, &c, &place, DEFAULT_DEPTH_CAP).status;
        let u2 = &u * &u;
        let scaled_d = quartic_locally_solvable(&(&d * &u2), &c, &place, DEFAULT_DEPTH_CAP).status;
        let scaled_c = quartic_locally_solvable(&d, &(&c * &(&u2 * &u2)), &place, DEFAULT_DEPTH_CAP).status;
        if base == scaled_d && base == scaled_c {
            Ok(())
        } else {
            Err(format!("{} p={p} d={d} u={u} at {}: {base:?} / {scaled_d:?} / {scaled_c:?}", ctx.name(), place.label()))
        }
    })
}

struct FfInput {
    field: Fq,
    p: u64,
}

fn draw_ff(rng: &mut ChaCha8Rng) -> FfInput {
    let ls: Vec<u64> = primes_up_to(FF_L_MAX).into_iter().filter(|&l| l > 2).collect();
    let l = *ls.choose(rng).expect("nonempty");
    let ps: Vec<u64> = primes_up_to(1000).into_iter().filter(|&p| p > 2 && p != l).collect();
    let p = *ps.choose(rng).expect("nonempty");
    let field = if l < 12 && rng.gen_bool(0.3) { Fq::quadratic_extension(l) } else { Fq::prime(l) };
    FfInput { field, p }
}

fn random_point(points: &[Point<crate::ffield::FqElem>], rng: &mut ChaCha8Rng) -> Point<crate::ffield::FqElem> {
    if rng.gen_ratio(1, 20) || points.is_empty() {
        Point::Infinity
    } else {
        points.choose(rng).expect("nonempty").clone()
    }
}

/// Identity, inverses, commutativity and associativity on E_p(F_q).
fn group_law(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let FfInput { field, p } = draw_ff(rng);
    let e = CurvePair::new(p).e_over(field.clone());
    let pts = affine_points(&e);
    let (a, b, c) = (random_point(&pts, rng), random_point(&pts, rng), random_point(&pts, rng));
    let add = |x: &Point<_>, y: &Point<_>| e.add(x, y).map_err(|err| err.to_string());
    let ctx = format!("p={p} q={} P={a:?} Q={b:?} R={c:?}", field.order());
    if add(&a, &Point::Infinity)? != a {
        return Err(format!("identity fails: {ctx}"));
    }
    if !add(&a, &e.neg(&a))?.is_infinity() {
        return Err(format!("inverse fails: {ctx}"));
    }
    if add(&a, &b)? != add(&b, &a)? {
        return Err(format!("commutativity fails: {ctx}"));
    }
    if add(&add(&a, &b)?, &c)? != add(&a, &add(&b, &c)?)? {
        return Err(format!("associativity fails: {ctx}"));
    }
    if !e.contains(&add(&a, &b)?) {
        return Err(format!("sum leaves the curve: {ctx}"));
    }
    Ok(())
}

/// phi lands on E'_p and phi_hat(phi(P)) = [2]P.
fn dual_isogeny(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let FfInput { field, p } = draw_ff(rng);
    let pair = CurvePair::new(p);
    let e = pair.e_over(field.clone());
    let ep = pair.eprime_over(field.clone());
    let pt = random_point(&affine_points(&e), rng);
    let image = apply_isogeny(&field, &pt, IsogenyDirection::Phi, p);
    if !ep.contains(&image) {
        return Err(format!("phi({pt:?}) not on E'_{p} over F_{}", field.order()));
    }
    let back = apply_isogeny(&field, &image, IsogenyDirection::PhiHat, p);
    let two = e.double(&pt).map_err(|err| err.to_string())?;
    if back == two {
        Ok(())
    } else {
        Err(format!("p={p} q={} P={pt:?}: phi_hat(phi(P)) = {back:?}, [2]P = {two:?}", field.order()))
    }
}

/// The duplication formula agrees with P + P.
fn duplication(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let FfInput { field, p } = draw_ff(rng);
    let e = CurvePair::new(p).e_over(field.clone());
    let pt = random_point(&affine_points(&e), rng);
    let Point::Affine(x, y) = &pt else { return Ok(()) };
    let sum = e.add(&pt, &pt).map_err(|err| err.to_string())?;
    match (duplicate_x(&field, x, y, p), sum) {
        (Err(_), Point::Infinity) => Ok(()),
        (Ok(dx), Point::Affine(sx, _)) if dx == sx => Ok(()),
        (got, want) => Err(format!("p={p} q={} P={pt:?}: duplicate_x {got:?}, P + P = {want:?}", field.order())),
    }
}
