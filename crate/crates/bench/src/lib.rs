//! Inputs shared by the benchmarks.

use epdescent_core::arith::is_prime;
use epdescent_core::{FieldContext, FieldKind};

/// The fields benchmarked, one per family.
pub const KINDS: [FieldKind; 4] = [FieldKind::GaussianI, FieldKind::Root2, FieldKind::Root7, FieldKind::RootQ(11)];

/// The first `n` primes at least `from` that `ctx` accepts.
pub fn sample_primes(ctx: &FieldContext, from: u64, n: usize) -> Vec<u64> {
    (from.max(3)..).filter(|&p| is_prime(p) && ctx.check_p(p).is_ok()).take(n).collect()
}
