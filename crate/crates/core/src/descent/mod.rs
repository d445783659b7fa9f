//! K(S,2), the phi- and phi_hat-Selmer groups, and the rank/Sha ledger.
//!
//! The homogeneous spaces are `C_d: dW^2 = d^2 - 4pZ^4` (phi side) and
//! `C'_d: dW^2 = d^2 + pZ^4` (phi_hat side); d lies in the Selmer group iff the
//! space has a point at every place of S.

mod expected;
mod report;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::localfield::{quartic_locally_solvable, s_places, Place, SolvabilityVerdict, VerdictStatus};
use crate::quadfield::{split_prime, splitting_type, FieldContext, FieldKind, QuadInt, SplittingType};
use crate::DEFAULT_DEPTH_CAP;

pub use expected::{classify_expected, classify_with, eval_token, orbit_predictions, Expected, SidePrediction};
pub use report::{rank_sha_ledger, rank_sha_ledger_with, BranchChoice, DescentReport, OrbitCheck};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareClass {
    /// Bit i set iff the i-th generator of K(S,2) occurs.
    pub mask: u32,
    pub rep: QuadInt,
    pub label: String,
    /// Places of S where `rep` has odd valuation.
    pub support: Vec<String>,
}

/// K(S,2) with its generators, the places of S and all 2^n classes indexed by mask.
#[derive(Clone, Debug)]
pub struct SelmerAmbient {
    pub p: u64,
    pub names: Vec<String>,
    pub generators: Vec<QuadInt>,
    pub places: Vec<Place>,
    pub elements: Vec<SquareClass>,
}

impl SelmerAmbient {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn element(&self, mask: u32) -> &SquareClass {
        &self.elements[mask as usize]
    }

    /// The class of a nonzero integral x, if it lies in K(S,2).
    pub fn class_of(&self, x: &QuadInt) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        self.elements.iter().find(|c| (x * &c.rep).is_square()).map(|c| c.mask)
    }
}

fn label_for(names: &[String], mask: u32) -> String {
    let mut parts: Vec<&str> = names
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, n)| n.as_str())
        .collect();
    if parts.contains(&"mu") && parts.contains(&"mubar") {
        parts.retain(|n| *n != "mu" && *n != "mubar");
        parts.push("p");
    }
    let negative = parts.first() == Some(&"-1");
    if negative {
        parts.remove(0);
    }
    match (negative, parts.is_empty()) {
        (true, true) => "-1".into(),
        (true, false) => format!("-{}", parts.join("*")),
        (false, true) => "1".into(),
        (false, false) => parts.join("*"),
    }
}

/// K(S,2): unit generator, primes over 2, primes over p.
pub fn enumerate_k_s_2(p: u64, ctx: &FieldContext) -> Result<SelmerAmbient> {
    ctx.check_p(p)?;
    let places = s_places(p, ctx)?;
    let mut names = Vec::new();
    let mut generators = Vec::new();
    let unit = ctx.unit_generator();
    names.push(if ctx.kind == FieldKind::GaussianI { "i".to_string() } else { "-1".to_string() });
    generators.push(unit);
    let twos = ctx.primes_above_two();
    match ctx.two_splitting {
        SplittingType::Inert => names.push("2".into()),
        SplittingType::Ramified => names.push("pi2".into()),
        SplittingType::Split => {
            names.push("pi2".into());
            names.push("pi2bar".into());
        }
    }
    generators.extend(twos);
    match splitting_type(p, ctx) {
        SplittingType::Split => {
            let sd = split_prime(p, ctx)?;
            names.push("mu".into());
            names.push("mubar".into());
            generators.push(sd.mu);
            generators.push(sd.mu_bar);
        }
        _ => {
            names.push("p".into());
            generators.push(ctx.int(p));
        }
    }
    let n = generators.len();
    let finite: Vec<_> = places.iter().filter_map(|v| v.as_finite()).collect();
    let elements = (0..1u32 << n)
        .map(|mask| {
            let mut rep = ctx.int(1);
            for (i, g) in generators.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    rep = &rep * g;
                }
            }
            let support = finite.iter().filter(|v| v.valuation(&rep) % 2 == 1).map(|v| v.label.clone()).collect();
            SquareClass { mask, label: label_for(&names, mask), rep, support }
        })
        .collect();
    Ok(SelmerAmbient { p, names, generators, places, elements })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelmerSide {
    Phi,
    PhiHat,
}

impl SelmerSide {
    /// The constant c in `dW^2 = d^2 + cZ^4`.
    pub fn c(self, p: u64, ctx: &FieldContext) -> QuadInt {
        match self {
            SelmerSide::Phi => ctx.int(-4 * p as i64),
            SelmerSide::PhiHat => ctx.int(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementCertificate {
    pub class: String,
    pub mask: u32,
    pub in_selmer: bool,
    /// One verdict per place examined; evaluation stops at the first obstruction.
    pub verdicts: Vec<SolvabilityVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelmerGroup {
    pub side: SelmerSide,
    pub p: u64,
    pub dim: u32,
    pub basis: Vec<SquareClass>,
    pub elements: Vec<SquareClass>,
    pub certificates: Vec<ElementCertificate>,
    /// Closed under multiplication modulo squares.
    pub closed: bool,
}

impl SelmerGroup {
    pub fn masks(&self) -> BTreeSet<u32> {
        self.elements.iter().map(|c| c.mask).collect()
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.elements.iter().any(|c| c.label == label)
    }
}

/// Greedy F_2 basis of a set of masks, keeping original elements.
pub fn f2_basis(masks: &[u32]) -> Vec<u32> {
    let mut reduced: Vec<u32> = Vec::new();
    let mut basis = Vec::new();
    for &m in masks {
        let mut r = m;
        for &b in &reduced {
            r = r.min(r ^ b);
        }
        if r != 0 {
            reduced.push(r);
            reduced.sort_unstable_by(|a, b| b.cmp(a));
            basis.push(m);
        }
    }
    basis
}

pub fn is_closed(masks: &BTreeSet<u32>) -> bool {
    masks.contains(&0) && masks.iter().all(|a| masks.iter().all(|b| masks.contains(&(a ^ b))))
}

fn local_membership(
    d: &SquareClass,
    c: &QuadInt,
    places: &[Place],
    depth_cap: u32,
) -> Result<ElementCertificate> {
    let mut verdicts = Vec::new();
    let mut undecided = None;
    for v in places {
        let verdict = quartic_locally_solvable(&d.rep, c, v, depth_cap);
        let status = verdict.status;
        verdicts.push(verdict);
        match status {
            VerdictStatus::Solvable => {}
            VerdictStatus::Unsolvable => {
                return Ok(ElementCertificate { class: d.label.clone(), mask: d.mask, in_selmer: false, verdicts });
            }
            VerdictStatus::Undecided => {
                undecided.get_or_insert(v.label());
            }
        }
    }
    if let Some(place) = undecided {
        return Err(Error::UndecidedLocalVerdict { d: d.label.clone(), place, depth: depth_cap });
    }
    Ok(ElementCertificate { class: d.label.clone(), mask: d.mask, in_selmer: true, verdicts })
}

pub fn selmer_group_in(ambient: &SelmerAmbient, ctx: &FieldContext, side: SelmerSide, depth_cap: u32) -> Result<SelmerGroup> {
    let c = side.c(ambient.p, ctx);
    let certificates = ambient
        .elements
        .iter()
        .map(|d| local_membership(d, &c, &ambient.places, depth_cap))
        .collect::<Result<Vec<_>>>()?;
    let members: Vec<u32> = certificates.iter().filter(|e| e.in_selmer).map(|e| e.mask).collect();
    let set: BTreeSet<u32> = members.iter().copied().collect();
    let basis = f2_basis(&members);
    Ok(SelmerGroup {
        side,
        p: ambient.p,
        dim: basis.len() as u32,
        basis: basis.iter().map(|&m| ambient.element(m).clone()).collect(),
        elements: members.iter().map(|&m| ambient.element(m).clone()).collect(),
        certificates,
        closed: is_closed(&set) && set.len() == 1 << basis.len(),
    })
}

/// `S^(phi)(E_p/K)` or `S^(phi_hat)(E'_p/K)`.
pub fn selmer_group(p: u64, ctx: &FieldContext, side: SelmerSide) -> Result<SelmerGroup> {
    let ambient = enumerate_k_s_2(p, ctx)?;
    selmer_group_in(&ambient, ctx, side, DEFAULT_DEPTH_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(g: &SelmerGroup) -> BTreeSet<String> {
        g.elements.iter().map(|c| c.label.clone()).collect()
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn ambient_examples() {
        let g = FieldContext::new(FieldKind::GaussianI).unwrap();
        let a = enumerate_k_s_2(3, &g).unwrap();
        assert_eq!(a.names, vec!["i", "pi2", "p"]);
        assert_eq!(a.elements.len(), 8);
        let a = enumerate_k_s_2(17, &g).unwrap();
        assert_eq!(a.names, vec!["i", "pi2", "mu", "mubar"]);
        assert_eq!(a.elements.len(), 16);
        let q11 = FieldContext::new(FieldKind::RootQ(11)).unwrap();
        let a = enumerate_k_s_2(7, &q11).unwrap();
        assert_eq!(a.names, vec!["-1", "2", "p"]);
        assert_eq!(a.element(0b101).label, "-p");
        assert_eq!(a.element(0b101).support, vec!["(7)".to_string()]);
        assert_eq!(a.class_of(&q11.int(-28)), Some(0b101));
        assert_eq!(a.class_of(&q11.int(3)), None);
        // 5 = N(1 + w) splits in Q(sqrt(-11))
        assert_eq!(enumerate_k_s_2(5, &q11).unwrap().elements.len(), 16);
        assert!(matches!(enumerate_k_s_2(11, &q11), Err(Error::PRamified { .. })));
    }

    #[test]
    fn gaussian_selmer_examples() {
        let g = FieldContext::new(FieldKind::GaussianI).unwrap();
        let s = selmer_group(7, &g, SelmerSide::Phi).unwrap();
        assert_eq!(s.dim, 1);
        assert_eq!(labels(&s), set(&["1", "p"]));
        let s = selmer_group(3, &g, SelmerSide::Phi).unwrap();
        assert_eq!(labels(&s), set(&["1", "i", "p", "i*p"]));
        let s = selmer_group(17, &g, SelmerSide::Phi).unwrap();
        assert_eq!(s.dim, 3);
        assert_eq!(labels(&s), set(&["1", "i", "mu", "mubar", "i*mu", "i*mubar", "p", "i*p"]));
        assert!(s.closed);
    }

    #[test]
    fn root2_phihat_example() {
        // -mu lies in the group because C'_{-mu} has the global point Z = 1, W = sqrt(-2):
        // -mu W^2 = mu^2 + 3 = 2 mu.
        let r2 = FieldContext::new(FieldKind::Root2).unwrap();
        let s = selmer_group(3, &r2, SelmerSide::PhiHat).unwrap();
        assert_eq!(labels(&s), set(&["1", "p", "-mu", "-mubar"]));
        let mu = r2.elem(1, 1);
        let w = r2.elem(0, 1);
        assert_eq!(&(-&mu) * &(&w * &w), &(&mu * &mu) + &r2.int(3));
    }

    #[test]
    fn basis_extraction() {
        assert_eq!(f2_basis(&[0, 1, 4, 5]), vec![1, 4]);
        assert_eq!(f2_basis(&[0, 3, 5, 6]), vec![3, 5]);
        assert!(is_closed(&[0, 3, 5, 6].into_iter().collect()));
        assert!(!is_closed(&[0, 3, 5].into_iter().collect()));
    }
}
