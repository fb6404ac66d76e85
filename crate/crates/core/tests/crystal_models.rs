use std::collections::BTreeMap;

use glmn_crystal::combicrystal::{
    bicrystal_decompose, check_axioms, hw_member, oddset_op, reduce_signature, Block, Dir,
    KacCrystal, Lusztig, LusztigCrystal, OddSet, OddSetCrystal, Sign,
};
use glmn_crystal::verify::{small_dominant, weyl_dimension};
use proptest::prelude::*;

/// Weights of semistandard tableaux of shape `shape` in letters 0..k.
fn ssyt_weights(shape: &[i64], k: usize) -> BTreeMap<Vec<i64>, usize> {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut out = BTreeMap::new();
    let mut grid = vec![vec![0usize; shape.first().copied().unwrap_or(0) as usize]; shape.len()];
    fn fill(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        k: usize,
        out: &mut BTreeMap<Vec<i64>, usize>,
    ) {
        if idx == cells.len() {
            let mut wt = vec![0i64; k];
            for &(r, c) in cells {
                wt[grid[r][c]] += 1;
            }
            *out.entry(wt).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[idx];
        let lo = if c > 0 { grid[r][c - 1] } else { 0 };
        let lo = if r > 0 {
            lo.max(grid[r - 1][c] + 1)
        } else {
            lo
        };
        for v in lo..k {
            grid[r][c] = v;
            fill(idx + 1, cells, grid, k, out);
        }
    }
    fill(0, &cells, &mut grid, k, &mut out);
    out
}

/// Weights of B(lambda) realised as Lusztig data with eps*_i <= <lambda, alpha_i>.
fn truncated_weights(
    block: Block,
    m: usize,
    n: usize,
    lambda: &[i64],
) -> BTreeMap<Vec<i64>, usize> {
    let (lo, hi) = if block == Block::Plus {
        (0, m)
    } else {
        (m, m + n)
    };
    let part = &lambda[lo..hi];
    let bound: i64 = (0..part.len())
        .flat_map(|i| (i + 1..part.len()).map(move |j| (i, j)))
        .map(|(i, j)| part[i] - part[j])
        .sum();
    let mut out = BTreeMap::new();
    for b in Lusztig::all_up_to(block, m, n, bound as usize) {
        if hw_member(&b, lambda) {
            let wt: Vec<i64> = b.weight()[lo..hi]
                .iter()
                .zip(part)
                .map(|(w, l)| w + l)
                .collect();
            *out.entry(wt).or_insert(0) += 1;
        }
    }
    out
}

#[test]
fn highest_weight_truncation_matches_tableaux() {
    for (m, n) in [(3, 1), (1, 3), (2, 2)] {
        for lambda in small_dominant(m, n, 3) {
            for block in [Block::Plus, Block::Minus] {
                let (lo, hi) = if block == Block::Plus {
                    (0, m)
                } else {
                    (m, m + n)
                };
                let got = truncated_weights(block, m, n, &lambda);
                let want = ssyt_weights(&lambda[lo..hi], hi - lo);
                assert_eq!(got, want, "{block:?} block of {lambda:?} at ({m},{n})");
            }
        }
    }
}

#[test]
fn kac_crystal_size_and_axioms() {
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3)] {
        for lambda in small_dominant(m, n, 2) {
            let kc = KacCrystal {
                m,
                n,
                lambda: lambda.clone(),
            };
            let elts = kc.elements().unwrap();
            let want =
                (1u64 << (m * n)) * weyl_dimension(&lambda[..m]) * weyl_dimension(&lambda[m..]);
            assert_eq!(elts.len() as u64, want, "{lambda:?}");
            assert!(check_axioms(&kc, &elts, None).is_empty(), "{lambda:?}");
        }
    }
}

#[test]
fn lusztig_crystals_satisfy_axioms() {
    for (m, n) in [(4, 1), (1, 4), (2, 3), (3, 2)] {
        for block in [Block::Plus, Block::Minus] {
            let data = Lusztig::all_up_to(block, m, n, 6);
            let bad = check_axioms(&LusztigCrystal { block, m, n }, &data, Some(6));
            assert!(bad.is_empty(), "({m},{n}) {block:?}: {}", bad[0]);
        }
    }
}

#[test]
fn bicrystal_classes_are_transposed_pairs() {
    for (m, n) in [(1, 1), (2, 2), (2, 3), (3, 3), (3, 4)] {
        let classes = bicrystal_decompose(m, n).unwrap();
        let mut total = 0;
        for c in &classes {
            let rows: Vec<usize> = c.rows.iter().copied().filter(|&x| x > 0).collect();
            let top = rows.first().copied().unwrap_or(0);
            let conj: Vec<usize> = (1..=top)
                .map(|k| rows.iter().filter(|&&x| x >= k).count())
                .collect();
            let cols: Vec<usize> = c.cols.iter().copied().filter(|&x| x > 0).collect();
            assert_eq!(conj, cols);
            let size = weyl_dimension(&c.rows.iter().map(|&x| x as i64).collect::<Vec<_>>())
                * weyl_dimension(&c.cols.iter().map(|&x| x as i64).collect::<Vec<_>>());
            assert_eq!(
                c.members.len() as u64,
                size,
                "class {:?}",
                c.highest.pairs()
            );
            total += c.members.len();
        }
        assert_eq!(total, 1 << (m * n));
    }
}

fn naive_reduce(signs: &[Sign]) -> (Vec<usize>, Vec<usize>) {
    let mut alive: Vec<Option<Sign>> = signs.iter().copied().map(Some).collect();
    loop {
        let mut changed = false;
        let live: Vec<usize> = (0..alive.len()).filter(|&k| alive[k].is_some()).collect();
        for w in live.windows(2) {
            if alive[w[0]] == Some(Sign::Plus) && alive[w[1]] == Some(Sign::Minus) {
                alive[w[0]] = None;
                alive[w[1]] = None;
                changed = true;
                break;
            }
        }
        if !changed {
            break;
        }
    }
    let pick = |s| (0..alive.len()).filter(|&k| alive[k] == Some(s)).collect();
    (pick(Sign::Minus), pick(Sign::Plus))
}

proptest! {
    #[test]
    fn signature_reduction_matches_adjacent_cancellation(v in prop::collection::vec(any::<bool>(), 0..24)) {
        let signs: Vec<Sign> = v.iter().map(|&p| if p { Sign::Plus } else { Sign::Minus }).collect();
        let r = reduce_signature(&signs);
        let (minus, plus) = naive_reduce(&signs);
        prop_assert_eq!(r.minus, minus);
        prop_assert_eq!(r.plus, plus);
    }

    #[test]
    fn oddset_operators_are_inverse(m in 1usize..5, n in 1usize..5, bits in any::<u64>(), i in 1usize..8) {
        let i = 1 + (i - 1) % (m + n - 1);
        let s = OddSet::from_bits(m, n, bits & ((1u64 << (m * n)) - 1));
        if let Some(t) = oddset_op(&s, i, Dir::F) {
            prop_assert_eq!(oddset_op(&t, i, Dir::E), Some(s));
            prop_assert_eq!(t.height(), s.height() + 1);
        }
        if let Some(t) = oddset_op(&s, i, Dir::E) {
            prop_assert_eq!(oddset_op(&t, i, Dir::F), Some(s));
        }
        let c = OddSetCrystal { m, n };
        prop_assert!(check_axioms(&c, &[s], None).is_empty());
    }

    #[test]
    fn lusztig_star_strings_bound_membership(
        entries in prop::collection::vec(0u32..3, 6),
        extra in 0i64..3,
    ) {
        // gl(4) block of (4,1): membership at lambda is monotone in lambda.
        let pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        let e: Vec<((usize, usize), u32)> = pairs.iter().copied().zip(entries).collect();
        let b = Lusztig::from_entries(Block::Plus, 4, 1, &e).unwrap();
        let stars: Vec<i64> = (1..4).map(|i| b.eps_star(i)).collect();
        let lambda = vec![stars[0] + stars[1] + stars[2] + extra, stars[1] + stars[2], stars[2], 0, 0];
        prop_assert!(hw_member(&b, &lambda));
        let mut tight = lambda.clone();
        if stars[0] > 0 {
            tight[0] -= 1 + extra;
            prop_assert!(!hw_member(&b, &tight));
        }
    }
}
