use framecurv::expr::{parse_expr, simplify, Expr};
use framecurv::fixtures::{difference_is_resolved, random_expr, well_conditioned_value};
use framecurv::oracle::central_difference;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const VARS: [&str; 2] = ["x", "y"];

fn tree(seed: u64) -> Expr<f64> {
    random_expr(&mut ChaCha8Rng::seed_from_u64(seed), 5)
}

fn points(seed: u64, count: usize) -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    (0..count).map(|_| [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)]).collect()
}

fn same(a: Result<f64, framecurv::DomainError>, b: Result<f64, framecurv::DomainError>, rel: f64) -> bool {
    match (a, b) {
        (Ok(a), Ok(b)) if a.is_finite() && b.is_finite() => (a - b).abs() <= rel * a.abs().max(1.0),
        (Ok(a), Ok(b)) => a.is_nan() && b.is_nan() || a == b,
        _ => true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_preserves_value(seed in any::<u64>()) {
        let e = tree(seed);
        let text = e.display(&VARS).to_string();
        let back: Expr<f64> = parse_expr(&text, &VARS).unwrap();
        for p in points(seed, 20) {
            let (a, b) = (e.eval(&p), back.eval(&p));
            prop_assert_eq!(a.is_ok(), b.is_ok(), "{} at {:?}", text, p);
            prop_assert!(same(a, b, 1e-12), "{} at {:?}: {:?} vs {:?}", text, p, a, b);
        }
    }

    #[test]
    fn derivative_matches_central_difference(seed in any::<u64>()) {
        let e = tree(seed);
        for p in points(seed, 10) {
            // the conditioning filter needs a margin around p for the stencil too
            let stencil_ok = [-1e-5, 0.0, 1e-5].iter().all(|h| {
                well_conditioned_value(&e, &[p[0] + h, p[1]]).is_some()
                    && well_conditioned_value(&e, &[p[0], p[1] + h]).is_some()
            });
            if !stencil_ok {
                continue;
            }
            for var in (0..2).filter(|&v| difference_is_resolved(&e, v, &p, 1e-5)) {
                let symbolic = e.differentiate(var).eval(&p).unwrap();
                let fd = central_difference(&e, var, &p, 1e-5).unwrap();
                prop_assert!((symbolic - fd).abs() <= 1e-6 * symbolic.abs().max(1.0),
                    "d/d{} {} at {:?}: {} vs {}", VARS[var], e.display(&VARS), p, symbolic, fd);
            }
        }
    }

    #[test]
    fn simplify_preserves_value(seed in any::<u64>()) {
        let e = tree(seed);
        let s = simplify(&e);
        for p in points(seed, 5) {
            if let Ok(v) = e.eval(&p) {
                let w = s.eval(&p);
                prop_assert!(w.is_ok(), "simplified form lost a point of the domain");
                prop_assert!(same(Ok(v), w, 1e-12), "{} -> {}", e.display(&VARS), s.display(&VARS));
            }
        }
    }

    #[test]
    fn simplify_is_idempotent_by_value(seed in any::<u64>()) {
        let once = simplify(&tree(seed));
        let twice = simplify(&once);
        for p in points(seed, 5) {
            prop_assert!(same(once.eval(&p), twice.eval(&p), 1e-12));
        }
    }

    #[test]
    fn evaluation_is_pure(seed in any::<u64>()) {
        let e = tree(seed);
        for p in points(seed, 3) {
            let a = e.eval(&p).map(f64::to_bits);
            prop_assert_eq!(a, e.eval(&p).map(f64::to_bits));
        }
    }
}

#[test]
fn shared_expressions_evaluate_concurrently() {
    let e: Expr<f64> = parse_expr("sin(x)*cosh(y)/(1 + x^2)", &VARS).unwrap();
    let expected = e.eval(&[0.4, -0.2]).unwrap();
    std::thread::scope(|s| {
        for _ in 0..4 {
            s.spawn(|| assert_eq!(e.eval(&[0.4, -0.2]).unwrap(), expected));
        }
    });
}
