use epdescent_bench::{sample_primes, KINDS};
use epdescent_core::FieldContext;

#[test]
fn samples_are_admissible() {
    for kind in KINDS {
        let ctx = FieldContext::new(kind).unwrap();
        let ps = sample_primes(&ctx, 500, 8);
        assert_eq!(ps.len(), 8);
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert!(ps.iter().all(|&p| p >= 500 && ctx.check_p(p).is_ok()));
    }
}
