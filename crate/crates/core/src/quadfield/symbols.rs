use serde::{Deserialize, Serialize};

use super::{split_prime, FieldContext, FieldKind};
use crate::arith::reduce_i64;
use crate::error::Result;

/// Jacobi symbol (a/n) for odd n >= 1.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd modulus");
    let mut a = reduce_i64(a, n);
    let mut n = n;
    let mut result = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// (-1)^k for integer k.
pub fn sign_pow(k: i64) -> i8 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity {
    pub name: String,
    pub lhs: i8,
    pub rhs: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocityRecord {
    pub p: u64,
    pub s: i64,
    pub t: i64,
    pub identities: Vec<Identity>,
}

impl ReciprocityRecord {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|i| i.lhs == i.rhs)
    }
}

/// Evaluate the field's reciprocity identities at p = N(s + t w).
pub fn reciprocity_checks(p: u64, ctx: &FieldContext) -> Result<ReciprocityRecord> {
    let sd = split_prime(p, ctx)?;
    let (u, v) = (sd.s, sd.t);
    let q = p as i64;
    let id = |name: &str, lhs: i8, rhs: i8| Identity { name: name.into(), lhs, rhs };
    let abs_u = u.unsigned_abs();
    let identities = match ctx.kind {
        FieldKind::GaussianI => vec![
            id("(u/q) = 1", jacobi(u, p), 1),
            id("(v/q) = (2/q)", jacobi(v, p), jacobi(2, p)),
        ],
        FieldKind::Root2 => vec![id(
            "(u/q) = (-1)^((u-1)/2 (q-1)/2) (2/u)",
            jacobi(u, p),
            sign_pow((u - 1) / 2 * ((q - 1) / 2)) * jacobi(2, abs_u),
        )],
        FieldKind::Root7 => {
            let r = v.trailing_zeros() as i64;
            let v_odd = v >> r;
            let eps = sign_pow((u - 1) / 2 * ((q - 1) / 2));
            let two_r = if r % 2 == 0 { 1 } else { jacobi(2, p) };
            let sym7 = jacobi(2 * u - v, 7);
            vec![
                id("(u-v/q) = (-1)^((u-1)/2 (q-1)/2) (-2/q) (2/u)", jacobi(u - v, p), eps * jacobi(-2, p) * jacobi(2, abs_u)),
                id("(u/q) = (-1)^((u-1)/2 (q-1)/2) (2/u)", jacobi(u, p), eps * jacobi(2, abs_u)),
                id("(v/q) = (-1)^((v'-1)/2 (q-1)/2) (2^r/q)", jacobi(v, p), sign_pow((v_odd - 1) / 2 * ((q - 1) / 2)) * two_r),
                id(
                    "(2u-v/q) = (2u-v/7) or (-1)^((u-1)/2) (2u-v/7)",
                    jacobi(2 * u - v, p),
                    if r == 1 { sym7 } else { sign_pow((u - 1) / 2) * sym7 },
                ),
            ]
        }
        FieldKind::RootQ(_) => Vec::new(),
    };
    Ok(ReciprocityRecord { p, s: u, t: v, identities })
}
