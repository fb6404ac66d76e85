use glmn_crystal::combicrystal::{check_axioms, kac_op, Block, Dir, KacElt, Lusztig, OddSet};
use glmn_crystal::limitcrystal::{
    binf_op, component_label, components, highest_of, hw_factorize, is_highest, kappa_inv, replay,
    sufficient_lambda, theta, uniform_lambda, BInfCrystal, BInfElt, LimitError,
};
use glmn_crystal::verify::{
    kappa_checks, parabolic_checks, single_component_failures, split_failures, theta_checks,
};
use proptest::prelude::*;

fn lusztig(block: Block, m: usize, n: usize, raw: &[u32]) -> Lusztig {
    let (lo, hi) = if block == Block::Plus {
        (1, m)
    } else {
        (m + 1, m + n)
    };
    let mut e = Vec::new();
    let mut k = 0;
    for a in lo..=hi {
        for b in a + 1..=hi {
            e.push(((a, b), raw[k % raw.len()]));
            k += 1;
        }
    }
    Lusztig::from_entries(block, m, n, &e).unwrap()
}

fn triple() -> impl Strategy<Value = BInfElt> {
    (
        1usize..4,
        1usize..4,
        any::<u64>(),
        prop::collection::vec(0u32..3, 6),
        prop::collection::vec(0u32..3, 6),
    )
        .prop_map(|(m, n, bits, p, q)| BInfElt {
            s: OddSet::from_bits(m, n, bits & ((1u64 << (m * n)) - 1)),
            plus: lusztig(Block::Plus, m, n, &p),
            minus: lusztig(Block::Minus, m, n, &q),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binf_axioms_on_random_triples(b in triple()) {
        let c = BInfCrystal { m: b.m(), n: b.n() };
        prop_assert!(check_axioms(&c, &[b], None).is_empty());
    }

    #[test]
    fn kappa_is_literal_from_the_threshold(b in triple(), extra in 0i64..3) {
        let mut lambda = sufficient_lambda(&b);
        for (k, x) in lambda.iter_mut().enumerate() {
            *x += extra * (b.m() + b.n() - k) as i64;
        }
        let k = kappa_inv(&b, &lambda).unwrap().expect("inside B(K(lambda))");
        prop_assert_eq!((k.s, k.plus, k.minus), (b.s, b.plus, b.minus));
    }

    #[test]
    fn factorisation_replays(b in triple()) {
        let lambda = sufficient_lambda(&b);
        let k = kappa_inv(&b, &lambda).unwrap().unwrap();
        let f = hw_factorize(&k);
        prop_assert_eq!(replay(k.m(), k.n(), &lambda, &f), Some(k.clone()));
        let mu: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
        let nu: Vec<i64> = mu.iter().map(|x| x + 2).collect();
        let t = theta(&lambda, &mu, &k).unwrap();
        prop_assert_eq!(theta(&mu, &nu, &t).unwrap(), theta(&lambda, &nu, &k).unwrap());
    }

    #[test]
    fn labels_are_constant_on_edges(b in triple(), i in 1usize..6) {
        let i = 1 + (i - 1) % (b.m() + b.n() - 1);
        let h = highest_of(&b);
        prop_assert!(is_highest(&h));
        for dir in [Dir::F, Dir::E] {
            if let Some(nb) = binf_op(&b, i, dir) {
                prop_assert_eq!(component_label(&nb), component_label(&b));
            }
        }
    }
}

#[test]
fn theta_and_kappa_at_larger_ranks() {
    for (m, n) in [(2, 3), (3, 2)] {
        for c in theta_checks(m, n, 1) {
            assert!(c.passed, "({m},{n}) {}: {}", c.name, c.detail);
        }
        for c in kappa_checks(m, n, 4) {
            assert!(c.passed, "({m},{n}) {}: {}", c.name, c.detail);
        }
    }
}

#[test]
fn theta_rejects_bad_weights() {
    let b = KacElt::highest(2, 2, vec![1, 0, 1, 0]).unwrap();
    assert!(theta(&[1, 0, 1, 0], &[0, 0, 0, 0], &b).is_err());
    assert!(matches!(
        theta(&[1, 0, 1, 0], &[1, 0, 1, 0], &b),
        Err(LimitError::NotBelow { .. })
    ));
    assert!(theta(&[1, 0, 1, 0], &[2, 1, 2, 1], &b).is_ok());
}

#[test]
fn split_map_intertwines() {
    for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (1, 4), (4, 2)] {
        let (bad, count) = split_failures(m, n);
        assert!(bad.is_empty(), "({m},{n}): {}", bad[0]);
        assert_eq!(count, (1 << (m * n)) * m * 2);
    }
}

#[test]
fn rank_n_one_is_connected() {
    for m in 1..=4 {
        let (bad, _) = single_component_failures(m, 5);
        assert!(bad.is_empty(), "({m},1): {}", bad[0]);
    }
}

#[test]
fn component_census() {
    let c = components(2, 3, 3).unwrap();
    assert_eq!(c.count, 16);
    assert!(c.isomorphism_checked);
    let c = components(3, 2, 3).unwrap();
    assert_eq!(c.count, 8);
    assert!(c.isomorphism_checked);
}

#[test]
fn kac_highest_of_large_weight_is_stable() {
    let lambda = uniform_lambda(2, 2, 3);
    let top = KacElt::highest(2, 2, lambda).unwrap();
    for i in 1..4 {
        assert!(kac_op(&top, i, Dir::E).is_none());
    }
}

#[test]
fn parabolic_verma_at_other_ranks() {
    for (m, n, lambda) in [
        (1, 2, vec![1, 1, 0]),
        (2, 1, vec![1, 0, 2]),
        (1, 3, vec![0, 2, 1, 0]),
    ] {
        for c in parabolic_checks(m, n, &lambda, 4) {
            assert!(c.passed, "({m},{n}) {lambda:?} {}: {}", c.name, c.detail);
        }
    }
}
