//! Kashiwara operators computed inside the negative half agree, modulo q
//! times the lattice, with the combinatorial operators on triples.

use glmn_crystal::combicrystal::Dir;
use glmn_crystal::limitcrystal::{binf_op, BInfElt};
use glmn_crystal::superpbw::{Mono, PbwAlgebra, Root};
use num_rational::BigRational;

fn label(alg: &PbwAlgebra, b: &BInfElt) -> Mono {
    let rd = &alg.rd;
    let mut mono = vec![0u8; rd.num_roots()];
    for (k, r) in rd.roots().iter().enumerate() {
        let Root { a, b: c } = *r;
        mono[k] = if rd.is_odd(k) {
            u8::from(b.s.contains(a, c))
        } else if c <= rd.m {
            b.plus.get(a, c) as u8
        } else {
            b.minus.get(a, c) as u8
        };
    }
    mono
}

/// Checks every operator on every triple up to the given degree.
fn check(m: usize, n: usize, degree: usize) -> usize {
    let mut count = 0;
    let alg = PbwAlgebra::new(m, n).unwrap();
    let one = BigRational::from_integer(1.into());
    for b in BInfElt::all_up_to(m, n, degree) {
        count += 1;
        let v = alg.lattice_basis_element(&label(&alg, &b));
        for i in 1..m + n {
            for dir in [Dir::F, Dir::E] {
                let u = match dir {
                    Dir::F => alg.f_tilde(&v, i),
                    Dir::E => alg.e_tilde(&v, i),
                };
                let res = alg.lattice_residue(&u).unwrap_or_else(|| {
                    panic!("lattice not closed: {dir:?}_{i} on {b:?} at ({m},{n})")
                });
                match binf_op(&b, i, dir) {
                    None => assert!(
                        res.is_empty(),
                        "{dir:?}_{i} on {b:?} should vanish, got {res:?}"
                    ),
                    Some(nb) => {
                        let want = label(&alg, &nb);
                        assert_eq!(
                            res.len(),
                            1,
                            "{dir:?}_{i} on {b:?}: residue {res:?}, expected {want:?}"
                        );
                        let (got, c) = res.iter().next().unwrap();
                        assert_eq!(got, &want, "{dir:?}_{i} on {b:?} at ({m},{n})");
                        assert!(
                            *c == one || *c == -one.clone(),
                            "{dir:?}_{i} on {b:?}: coefficient {c}"
                        );
                    }
                }
            }
        }
    }
    count
}

/// Number of exponent vectors (odd exponents at most 1) of degree <= d,
/// counted by a generating function over root heights.
fn expected_count(m: usize, n: usize, d: usize) -> usize {
    let mut ways = vec![0usize; d + 1];
    ways[0] = 1;
    let l = m + n;
    for a in 1..=l {
        for b in a + 1..=l {
            let h = b - a;
            let odd = a <= m && b > m;
            let mut next = vec![0usize; d + 1];
            for (k, &w) in ways.iter().enumerate() {
                let mut c = 0;
                while k + c * h <= d && (!odd || c <= 1) {
                    next[k + c * h] += w;
                    c += 1;
                }
            }
            ways = next;
        }
    }
    ways.iter().sum()
}

#[test]
fn rank_one_one() {
    assert_eq!(check(1, 1, 5), expected_count(1, 1, 5));
}

#[test]
fn rank_two_one() {
    assert_eq!(check(2, 1, 5), expected_count(2, 1, 5));
}

#[test]
fn rank_one_two() {
    assert_eq!(check(1, 2, 5), expected_count(1, 2, 5));
}

#[test]
fn rank_two_two() {
    assert_eq!(check(2, 2, 4), expected_count(2, 2, 4));
}

#[test]
fn rank_three_one() {
    assert_eq!(check(3, 1, 5), expected_count(3, 1, 5));
}

#[test]
fn rank_one_three() {
    assert_eq!(check(1, 3, 5), expected_count(1, 3, 5));
}

#[test]
fn rank_three_two() {
    assert_eq!(check(3, 2, 4), expected_count(3, 2, 4));
}
