mod common;

use common::{minimal_v_params, random_params, witness_suite};
use dioph_core::construction::ConstructionParams;
use dioph_core::num::{parse_rational, ExtReal};
use dioph_core::verify::{check_all, predict_quadruple, Relation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn predictions_satisfy_every_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let p = random_params(&mut rng);
        let q = predict_quadruple(&ConstructionParams::Finite(p.clone())).unwrap();
        for c in check_all(&q) {
            assert!(c.residual.is_nonnegative(), "{p:?} {q} {}: {}", c.name, c.residual);
            if c.relation == Relation::Equality {
                assert_eq!(c.residual, ExtReal::int(0));
            }
            assert!(c.pass);
        }
    }
}

#[test]
fn minimal_v_family_closes_the_interval() {
    for w in ["5/2", "3", "7/2", "4", "10", "101/7"] {
        let p = minimal_v_params(parse_rational(w).unwrap());
        p.validate().unwrap();
        let q = predict_quadruple(&ConstructionParams::Finite(p)).unwrap();
        let w = q.w.as_finite().unwrap().clone();
        let one = dioph_core::num::rational_from_int(1);
        assert_eq!(q.v, ExtReal::Finite(&w * (&w - &one)));
        // v' = (w−1)²/w
        assert_eq!(q.v_prime, ExtReal::Finite((&w - &one) * (&w - &one) / &w));
        let zeros: Vec<_> =
            check_all(&q).into_iter().filter(|c| c.name.starts_with("refined")).map(|c| c.residual).collect();
        assert_eq!(zeros, vec![ExtReal::int(0), ExtReal::int(0)]);
    }
}

#[test]
fn witness_bounds_hold_on_measured_traces() {
    let (pairs, checks, failures) = witness_suite(1000, 2000);
    assert!(pairs >= 1000, "{pairs}");
    assert_eq!(checks, 3 * pairs);
    assert!(failures.is_empty(), "{failures:?}");
}
