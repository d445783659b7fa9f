//! Point counts, Frobenius traces, and the Dirichlet coefficients of
//! L(E_p/Q, s) and L(E_p/Q(i), s).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{is_odd_prime, mul_mod, primes_up_to, spf_table};
use crate::curves::{Curve, Point};
use crate::ffield::Fq;
use crate::localfield::FinitePlace;

/// |E_p(F)| for y^2 = x^3 + p x over a finite field F, point at infinity included.
pub fn count_points_over(p: u64, f: &Fq) -> u64 {
    let a = f.from_u64(p);
    if f.characteristic() == 2 {
        // every element has exactly one square root
        return f.order() + 1;
    }
    if f.degree() == 1 {
        return count_prime_field(p, f.characteristic());
    }
    let mut n = 1u64;
    for x in f.elements() {
        let r = f.mul(x, f.add(f.square(x), a));
        n += (1 + f.chi(r)) as u64;
    }
    n
}

fn count_prime_field(p: u64, l: u64) -> u64 {
    let mut is_sq = vec![false; l as usize];
    for y in 0..l {
        is_sq[mul_mod(y, y, l) as usize] = true;
    }
    let a = p % l;
    let mut n = 1u64;
    for x in 0..l {
        let r = mul_mod(x, (mul_mod(x, x, l) + a) % l, l);
        n += if r == 0 { 1 } else if is_sq[r as usize] { 2 } else { 0 };
    }
    n
}

/// Largest l for which F_{l^2} counts are done by enumeration.
pub const DIRECT_L2_LIMIT: u64 = 50;

/// |E_p(F_{l^k})| for k in {1, 2}.
pub fn count_points(p: u64, l: u64, k: u32) -> u64 {
    match k {
        1 => count_points_over(p, &Fq::prime(l)),
        2 if l <= DIRECT_L2_LIMIT || l == 2 => count_points_over(p, &Fq::quadratic_extension(l)),
        2 => {
            let a = trace_frobenius(p, l);
            let t2 = a * a - 2 * l as i64;
            (l as i64 * l as i64 + 1 - t2) as u64
        }
        _ => panic!("only degrees 1 and 2 are supported"),
    }
}

/// a_l = l + 1 - |E_p(F_l)|.
pub fn trace_frobenius(p: u64, l: u64) -> i64 {
    l as i64 + 1 - count_points(p, l, 1) as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceData {
    pub place: String,
    pub norm: u64,
    pub count: u64,
    pub a: i64,
}

/// Trace of Frobenius at a place of K. Zero at places over 2p, where the
/// reduction is additive.
pub fn a_pi(p: u64, place: &FinitePlace) -> TraceData {
    let norm = place.q();
    if place.l == 2 || place.l == p {
        return TraceData { place: place.label.clone(), norm, count: 0, a: 0 };
    }
    let count = count_points_over(p, &place.residue);
    TraceData { place: place.label.clone(), norm, count, a: norm as i64 + 1 - count as i64 }
}

/// The closed form of a_pi over Q(i): a_l for l = 1 (mod 4), -2l for l = 3 (mod 4), 0 at 2p.
pub fn a_pi_formula(p: u64, l: u64) -> i64 {
    if l == 2 || l == p {
        0
    } else if l % 4 == 1 {
        trace_frobenius(p, l)
    } else {
        -2 * l as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupersingularReport {
    pub p: u64,
    pub l: u64,
    pub a_l: i64,
    pub supersingular: bool,
    pub l_mod_4: u64,
    pub count_l2: u64,
    /// For supersingular l: every checked point of E(F_{l^2}) is killed by l + 1.
    pub exponent_divides_l_plus_1: Option<bool>,
    pub points_checked: u64,
    pub consistent: bool,
}

/// a_l = 0 iff l = 3 (mod 4), with the structure Z/(l+1) x Z/(l+1) of E(F_{l^2}) checked
/// by enumeration (l <= 50) or by sampling.
pub fn supersingular_check(p: u64, l: u64) -> SupersingularReport {
    assert!(l != p && is_odd_prime(l), "l must be an odd prime different from p");
    let a_l = trace_frobenius(p, l);
    let supersingular = a_l == 0;
    let count_l2 = count_points(p, l, 2);
    let mut exponent = None;
    let mut points_checked = 0;
    if supersingular {
        let f = Fq::quadratic_extension(l);
        let e = Curve::new(f, 0, p as i64, 0);
        let n = (l + 1) as i64;
        let mut ok = true;
        let mut check = |x| {
            let r = e.rhs(&x);
            if let Some(y) = f.sqrt(r) {
                points_checked += 1;
                ok &= e.mul(&Point::Affine(x, y), n).map(|q| q.is_infinity()).unwrap_or(false);
            }
        };
        if l <= DIRECT_L2_LIMIT {
            f.elements().for_each(&mut check);
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(p * 1_000_003 + l);
            for _ in 0..64 {
                let x = crate::ffield::FqElem(rng.gen_range(0..l), rng.gen_range(0..l));
                check(x);
            }
        }
        exponent = Some(ok);
    }
    let structure_ok = !supersingular || (count_l2 == (l + 1) * (l + 1) && exponent == Some(true));
    SupersingularReport {
        p,
        l,
        a_l,
        supersingular,
        l_mod_4: l % 4,
        count_l2,
        exponent_divides_l_plus_1: exponent,
        points_checked,
        consistent: supersingular == (l % 4 == 3) && structure_ok,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseField {
    Q,
    /// Q(i)
    K,
}

/// Coefficients a_n for 1 <= n <= bound (index 0 unused).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffSeries {
    pub bound: u64,
    pub coeffs: Vec<i64>,
}

impl CoeffSeries {
    pub fn get(&self, n: u64) -> i64 {
        self.coeffs[n as usize]
    }

    /// Dirichlet square.
    pub fn square(&self) -> CoeffSeries {
        let x = self.bound as usize;
        let mut out = vec![0i64; x + 1];
        for d in 1..=x {
            if self.coeffs[d] == 0 {
                continue;
            }
            for m in 1..=x / d {
                out[d * m] += self.coeffs[d] * self.coeffs[m];
            }
        }
        CoeffSeries { bound: self.bound, coeffs: out }
    }
}

/// Coefficients of 1 / prod(1 - a_j u + N_j u^2) in u = l^{-s}, truncated at degree `k`,
/// for local factors given as (degree of N in u, a, N): degree 1 for norm l, 2 for norm l^2.
fn local_series(factors: &[(usize, i64, i64)], k: usize) -> Vec<i64> {
    let mut series = vec![0i64; k + 1];
    series[0] = 1;
    for &(deg, a, norm) in factors {
        // multiply by 1/(1 - a u^deg + norm u^{2 deg})
        let mut out = vec![0i64; k + 1];
        for j in 0..=k {
            let mut v = series[j];
            if j >= deg {
                v += a * out[j - deg];
            }
            if j >= 2 * deg {
                v -= norm * out[j - 2 * deg];
            }
            out[j] = v;
        }
        series = out;
    }
    series
}

/// Local Euler data at the rational prime l: (degree, a, norm) per place.
fn euler_data(p: u64, l: u64, field: BaseField) -> Vec<(usize, i64, i64)> {
    let li = l as i64;
    let bad = l == 2 || l == p;
    match field {
        BaseField::Q => {
            if bad {
                vec![(1, 0, 0)]
            } else {
                vec![(1, trace_frobenius(p, l), li)]
            }
        }
        BaseField::K => {
            if l == 2 {
                vec![(1, 0, 0)]
            } else if l % 4 == 1 {
                // two places of norm l with residue field F_l
                let a = if bad { 0 } else { trace_frobenius(p, l) };
                let n = if bad { 0 } else { li };
                vec![(1, a, n), (1, a, n)]
            } else {
                let (a, n) = if bad { (0, 0) } else { (li * li + 1 - count_points(p, l, 2) as i64, li * li) };
                vec![(2, a, n)]
            }
        }
    }
}

/// Expand the Euler product of L(E_p/F, s) over norms up to `bound`.
pub fn dirichlet_coeffs(p: u64, field: BaseField, bound: u64) -> CoeffSeries {
    assert!(bound >= 1);
    let x = bound as usize;
    let mut prime_power = vec![0i64; x + 1];
    for l in primes_up_to(bound) {
        let mut k = 0;
        let mut q = 1u64;
        while q * l <= bound {
            q *= l;
            k += 1;
        }
        let series = local_series(&euler_data(p, l, field), k);
        let mut q = 1u64;
        for c in series.iter().skip(1) {
            q *= l;
            prime_power[q as usize] = *c;
        }
    }
    let spf = spf_table(x);
    let mut coeffs = vec![0i64; x + 1];
    if x >= 1 {
        coeffs[1] = 1;
    }
    for n in 2..=x {
        let l = spf[n] as usize;
        let mut m = n;
        let mut q = 1;
        while m % l == 0 {
            m /= l;
            q *= l;
        }
        coeffs[n] = prime_power[q] * coeffs[m];
    }
    CoeffSeries { bound, coeffs }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseChangeReport {
    pub p: u64,
    pub bound: u64,
    pub holds: bool,
    /// (n, coefficient over Q(i), coefficient of the square over Q).
    pub first_mismatch: Option<(u64, i64, i64)>,
}

/// Compare L(E_p/Q(i), s) with L(E_p/Q, s)^2 coefficientwise up to `bound`.
pub fn verify_base_change(p: u64, bound: u64) -> BaseChangeReport {
    let k = dirichlet_coeffs(p, BaseField::K, bound);
    let q2 = dirichlet_coeffs(p, BaseField::Q, bound).square();
    let first_mismatch = (1..=bound).find(|&n| k.get(n) != q2.get(n)).map(|n| (n, k.get(n), q2.get(n)));
    BaseChangeReport { p, bound, holds: first_mismatch.is_none(), first_mismatch }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::places_above;
    use crate::quadfield::{FieldContext, FieldKind};

    #[test]
    fn counting_examples() {
        assert_eq!(count_points(3, 5, 1), 10);
        assert_eq!(trace_frobenius(3, 5), -4);
        assert_eq!(count_points(5, 3, 1), 4);
        assert_eq!(count_points(3, 7, 2), 64);
    }

    #[test]
    fn prime_field_count_matches_generic() {
        for l in [3u64, 5, 7, 11, 13, 101] {
            for p in [3u64, 5, 7, 13] {
                let f = Fq::prime(l);
                let a = f.from_u64(p);
                let generic = 1 + f.elements().map(|x| (1 + f.chi(f.mul(x, f.add(f.square(x), a)))) as u64).sum::<u64>();
                assert_eq!(count_points(p, l, 1), generic);
            }
        }
    }

    #[test]
    fn supersingular_examples() {
        let r = supersingular_check(5, 3);
        assert!(r.supersingular && r.consistent);
        assert_eq!(r.count_l2, 16);
        assert!(!supersingular_check(3, 5).supersingular);
        assert!(!supersingular_check(5, 13).supersingular);
    }

    #[test]
    fn traces_over_gaussian_field() {
        let g = FieldContext::new(FieldKind::GaussianI).unwrap();
        for l in [3u64, 5, 7, 13, 17, 19, 29] {
            for v in places_above(l, &g).unwrap() {
                assert_eq!(a_pi(3, &v).a, a_pi_formula(3, l), "l = {l}");
            }
        }
        assert_eq!(a_pi(3, &places_above(5, &g).unwrap()[0]).a, -4);
        assert_eq!(a_pi(3, &places_above(7, &g).unwrap()[0]).a, -14);
        assert_eq!(a_pi(3, &places_above(3, &g).unwrap()[0]).a, 0);
    }

    #[test]
    fn series_examples() {
        let q = dirichlet_coeffs(3, BaseField::Q, 10);
        assert_eq!(&q.coeffs[1..], &[1, 0, 0, 0, -4, 0, 0, 0, 0, 0]);
        let k = dirichlet_coeffs(3, BaseField::K, 25);
        // (1 + 4u + 5u^2)^{-2} at u^2: 3*16 - 2*5 = 38
        assert_eq!(k.get(25), 38);
        assert_eq!(k.get(5), 2 * -4);
    }

    #[test]
    fn base_change_small() {
        for p in [3u64, 5, 7] {
            assert!(verify_base_change(p, 300).holds);
        }
    }
}
