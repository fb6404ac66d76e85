//! The PBW rewriting is checked against the quantum shuffle embedding of the
//! free algebra: a word is sent to the sum of all its iterated twisted
//! derivatives. The kernel of that map is the ideal of defining relations,
//! so two free-algebra expressions agree in the algebra exactly when their
//! images agree.

use std::collections::{BTreeMap, HashMap};

use glmn_crystal::qfield::QRat;
use glmn_crystal::superpbw::{PbwAlgebra, PbwVector, Root, Strategy};
use rand::{Rng, SeedableRng};

type Free = BTreeMap<Vec<u8>, QRat>;

fn add(acc: &mut Free, w: Vec<u8>, c: QRat) {
    if c.is_zero() {
        return;
    }
    let s = acc.get(&w).map(|x| x + &c).unwrap_or(c);
    if s.is_zero() {
        acc.remove(&w);
    } else {
        acc.insert(w, s);
    }
}

/// q(alpha_i, alpha_j) computed from scratch.
fn qpair(m: usize, i: usize, j: usize) -> QRat {
    let qk = |k: usize| if k <= m { QRat::q() } else { -QRat::q_pow(-1) };
    let mut v = QRat::one();
    for k in [i, i + 1] {
        for l in [j, j + 1] {
            if k == l {
                let s = if k == i { 1 } else { -1 } * if l == j { 1 } else { -1 };
                v = v * qk(k).pow(s);
            }
        }
    }
    v
}

struct Oracle {
    m: usize,
    memo: HashMap<Vec<u8>, Free>,
}

impl Oracle {
    fn new(m: usize) -> Self {
        Oracle {
            m,
            memo: HashMap::new(),
        }
    }

    /// Image of a single word under the shuffle map.
    fn phi_word(&mut self, w: &[u8]) -> Free {
        if w.is_empty() {
            let mut r = Free::new();
            r.insert(vec![], QRat::one());
            return r;
        }
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let mut out = Free::new();
        for k in 0..w.len() {
            let i = w[k] as usize;
            let mut tw = QRat::one();
            for &g in &w[..k] {
                tw = tw * qpair(self.m, i, g as usize).inv();
            }
            let mut rest = w.to_vec();
            rest.remove(k);
            for (seq, c) in self.phi_word(&rest) {
                let mut s = vec![i as u8];
                s.extend(seq);
                add(&mut out, s, &c * &tw);
            }
        }
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    fn phi(&mut self, x: &Free) -> Free {
        let mut out = Free::new();
        for (w, c) in x {
            for (s, d) in self.phi_word(w) {
                add(&mut out, s, c * &d);
            }
        }
        out
    }
}

fn mul(x: &Free, y: &Free) -> Free {
    let mut out = Free::new();
    for (a, c) in x {
        for (b, d) in y {
            let mut w = a.clone();
            w.extend(b);
            add(&mut out, w, c * d);
        }
    }
    out
}

fn scale(x: &Free, c: &QRat) -> Free {
    let mut out = Free::new();
    for (w, v) in x {
        add(&mut out, w.clone(), v * c);
    }
    out
}

fn sum(x: &Free, y: &Free) -> Free {
    let mut out = x.clone();
    for (w, v) in y {
        add(&mut out, w.clone(), v.clone());
    }
    out
}

fn gen(i: usize) -> Free {
    let mut r = Free::new();
    r.insert(vec![i as u8], QRat::one());
    r
}

/// q-commutator [f_k, u] with u of degree given by the simple roots list.
fn ad(m: usize, k: usize, u: &Free, simples: &[usize]) -> Free {
    let mut tw = QRat::one();
    for &s in simples {
        tw = tw * qpair(m, k, s);
    }
    sum(&mul(&gen(k), u), &scale(&mul(u, &gen(k)), &(-tw.inv())))
}

/// Root vector for delta_a - delta_b built by the nested commutators.
fn root_vector(m: usize, a: usize, b: usize) -> Free {
    let (i, j) = (a, b - 1);
    let (start, steps): (usize, Vec<usize>) = if a <= m && b > m {
        let mut s: Vec<usize> = (i..m).rev().collect();
        s.extend(m + 1..=j);
        (m, s)
    } else if b <= m {
        (j, (i..j).rev().collect())
    } else {
        (i, (i + 1..=j).collect())
    };
    let mut u = gen(start);
    let mut simples = vec![start];
    for k in steps {
        u = ad(m, k, &u, &simples);
        simples.push(k);
    }
    u
}

fn expand(alg: &PbwAlgebra, v: &PbwVector) -> Free {
    let rd = &alg.rd;
    let rv: Vec<Free> = rd
        .roots()
        .iter()
        .map(|r| root_vector(rd.m, r.a, r.b))
        .collect();
    let mut out = Free::new();
    for (mono, c) in &v.terms {
        let mut x = Free::new();
        x.insert(vec![], c.clone());
        for (r, &k) in mono.iter().enumerate() {
            for _ in 0..k {
                x = mul(&x, &rv[r]);
            }
        }
        out = sum(&out, &x);
    }
    out
}

const RANKS: &[(usize, usize)] = &[
    (1, 1),
    (2, 1),
    (1, 2),
    (2, 2),
    (3, 1),
    (1, 3),
    (3, 2),
    (2, 3),
];

#[test]
fn root_vectors_match_library() {
    for &(m, n) in RANKS {
        let alg = PbwAlgebra::new(m, n).unwrap();
        for (r, lib) in alg.rd.roots().iter().zip(alg.root_vectors_free()) {
            assert_eq!(
                &root_vector(m, r.a, r.b),
                lib,
                "root vector {r:?} at ({m},{n})"
            );
        }
    }
}

#[test]
fn commutation_table_holds_in_the_algebra() {
    for &(m, n) in RANKS {
        let alg = PbwAlgebra::new(m, n).unwrap();
        let rd = &alg.rd;
        let mut oracle = Oracle::new(m);
        let rv: Vec<Free> = rd
            .roots()
            .iter()
            .map(|r| root_vector(m, r.a, r.b))
            .collect();
        for y in 0..rd.num_roots() {
            for x in 0..=y {
                let mut mono = vec![0u8; rd.num_roots()];
                mono[x] += 1;
                mono[y] += 1;
                let lhs = mul(&rv[y], &rv[x]);
                let rhs_pbw = alg.lmul_root_mono(y, &alg.unit_mono(x));
                let rhs = expand(&alg, &rhs_pbw);
                let diff = sum(&lhs, &scale(&rhs, &QRat::from_int(-1)));
                assert!(
                    oracle.phi(&diff).is_empty(),
                    "f_{:?} f_{:?} at ({m},{n}) rewrites incorrectly",
                    rd.root(y),
                    rd.root(x)
                );
            }
        }
    }
}

#[test]
fn random_words_normalise_correctly() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for &(m, n) in &[(2, 1), (1, 2), (2, 2), (3, 1), (2, 3)] {
        let alg = PbwAlgebra::new(m, n).unwrap();
        let mut oracle = Oracle::new(m);
        for _ in 0..25 {
            let len = rng.gen_range(1..=5);
            let w: Vec<usize> = (0..len).map(|_| rng.gen_range(1..m + n)).collect();
            let nf = alg.normal_form(&w).unwrap();
            let mut word = Free::new();
            word.insert(w.iter().map(|&g| g as u8).collect(), QRat::one());
            let diff = sum(&word, &scale(&expand(&alg, &nf), &QRat::from_int(-1)));
            assert!(oracle.phi(&diff).is_empty(), "word {w:?} at ({m},{n})");
        }
    }
}

#[test]
fn rewriting_is_confluent() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for &(m, n) in &[(2, 2), (3, 1), (1, 3), (2, 3)] {
        let alg = PbwAlgebra::new(m, n).unwrap();
        let nr = alg.rd.num_roots();
        for _ in 0..20 {
            let len = rng.gen_range(2..=4);
            let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..nr)).collect();
            let a = alg
                .normalize_root_word(&w, Strategy::LatestInversion)
                .unwrap();
            let b = alg.normalize_root_word(&w, Strategy::Leftmost).unwrap();
            let c = alg.normalize_root_word(&w, Strategy::Rightmost).unwrap();
            let mut via_mul = alg.one();
            for &r in w.iter().rev() {
                via_mul = alg.lmul_root_vec(r, &via_mul);
            }
            assert_eq!(a, b, "{w:?}");
            assert_eq!(a, c, "{w:?}");
            assert_eq!(a, via_mul, "{w:?}");
        }
    }
}

/// Rank of a set of shuffle images by exact elimination.
fn rank(rows: Vec<Free>) -> usize {
    let mut basis: Vec<(Vec<u8>, Free)> = Vec::new();
    for mut r in rows {
        for (piv, b) in &basis {
            if let Some(c) = r.get(piv).cloned() {
                let f = &c / &b[piv];
                r = sum(&r, &scale(b, &(-f)));
            }
        }
        if let Some((piv, _)) = r.iter().next() {
            let piv = piv.clone();
            basis.push((piv, r));
        }
    }
    basis.len()
}

#[test]
fn pbw_monomials_count_weight_spaces() {
    // Compare the number of ordered monomials with the dimension of the
    // weight space computed from the shuffle images of all words.
    for &(m, n) in &[(2, 1), (1, 2), (2, 2)] {
        let alg = PbwAlgebra::new(m, n).unwrap();
        let rd = &alg.rd;
        let mut oracle = Oracle::new(m);
        let l = m + n;
        let gens: Vec<usize> = (1..l).collect();
        // weights as multiplicity vectors of simple roots with total <= 4
        let mut weights: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..gens.len() {
            weights = weights
                .into_iter()
                .flat_map(|w| {
                    (0..=2).map(move |k| {
                        let mut v = w.clone();
                        v.push(k);
                        v
                    })
                })
                .collect();
        }
        for wt in weights
            .into_iter()
            .filter(|w| (1..=4).contains(&w.iter().sum::<usize>()))
        {
            let mut letters = Vec::new();
            for (g, &k) in gens.iter().zip(&wt) {
                letters.extend(std::iter::repeat_n(*g as u8, k));
            }
            let mut words = std::collections::BTreeSet::new();
            permutations(&mut letters.clone(), 0, &mut words);
            let rows: Vec<Free> = words
                .into_iter()
                .map(|w| {
                    let mut x = Free::new();
                    x.insert(w, QRat::one());
                    oracle.phi(&x)
                })
                .collect();
            let dim = rank(rows);
            let count = count_monomials(rd, &wt);
            assert_eq!(dim, count, "weight {wt:?} at ({m},{n})");
        }
    }
}

fn permutations(v: &mut Vec<u8>, k: usize, out: &mut std::collections::BTreeSet<Vec<u8>>) {
    if k == v.len() {
        out.insert(v.clone());
        return;
    }
    for j in k..v.len() {
        v.swap(k, j);
        permutations(v, k + 1, out);
        v.swap(k, j);
    }
}

fn count_monomials(rd: &glmn_crystal::superpbw::RootData, wt: &[usize]) -> usize {
    fn go(rd: &glmn_crystal::superpbw::RootData, idx: usize, rem: &mut Vec<i64>) -> usize {
        if idx == rd.num_roots() {
            return usize::from(rem.iter().all(|&x| x == 0));
        }
        let Root { a, b } = rd.root(idx);
        let cap = if rd.is_odd(idx) { 1 } else { 4 };
        let mut total = 0;
        for c in 0..=cap {
            if (a..b).all(|s| rem[s - 1] >= c) {
                for s in a..b {
                    rem[s - 1] -= c;
                }
                total += go(rd, idx + 1, rem);
                for s in a..b {
                    rem[s - 1] += c;
                }
            }
        }
        total
    }
    let mut rem: Vec<i64> = wt.iter().map(|&x| x as i64).collect();
    go(rd, 0, &mut rem)
}
