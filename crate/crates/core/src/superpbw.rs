//! PBW bases of the negative half of U(gl(m|n)) and the algebraic crystal
//! operators acting on them.
//!
//! Elements are kept in normal form: linear combinations of ordered
//! monomials in the root vectors, ordered by the convex order on positive
//! roots (odd roots first, then the gl(m) block, then the gl(n) block).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qfield::{q_factorial, q_int, QRat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PbwError {
    #[error("need m >= 1 and n >= 1, got m={m}, n={n}")]
    BadRank { m: usize, n: usize },
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("root index {0} out of range")]
    BadRoot(usize),
}

/// Positive root delta_a - delta_b with 1-based a < b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    Odd,
    Plus,
    Minus,
}

/// Sign and exponent of a value +-q^e.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QMono {
    pub neg: bool,
    pub exp: i64,
}

impl QMono {
    pub fn one() -> QMono {
        QMono { neg: false, exp: 0 }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: QMono) -> QMono {
        QMono {
            neg: self.neg ^ o.neg,
            exp: self.exp + o.exp,
        }
    }

    pub fn inv(self) -> QMono {
        QMono {
            neg: self.neg,
            exp: -self.exp,
        }
    }

    pub fn to_qrat(self) -> QRat {
        let v = QRat::q_pow(self.exp);
        if self.neg {
            -v
        } else {
            v
        }
    }
}

/// Root system data for gl(m|n) with the fixed convex order.
#[derive(Clone, Debug)]
pub struct RootData {
    pub m: usize,
    pub n: usize,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootData {
    pub fn new(m: usize, n: usize) -> Result<RootData, PbwError> {
        if m == 0 || n == 0 {
            return Err(PbwError::BadRank { m, n });
        }
        let l = m + n;
        let mut roots = Vec::new();
        for a in 1..=l {
            for b in a + 1..=l {
                roots.push(Root { a, b });
            }
        }
        let rd0 = RootData {
            m,
            n,
            roots: Vec::new(),
            index: HashMap::new(),
        };
        roots.sort_by(|x, y| {
            if rd0.precedes(*x, *y) {
                std::cmp::Ordering::Less
            } else if rd0.precedes(*y, *x) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        });
        let index = roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        Ok(RootData { m, n, roots, index })
    }

    pub fn rank(&self) -> usize {
        self.m + self.n - 1
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, idx: usize) -> Root {
        self.roots[idx]
    }

    pub fn root_index(&self, r: Root) -> Option<usize> {
        self.index.get(&r).copied()
    }

    pub fn simple(&self, i: usize) -> usize {
        self.index[&Root { a: i, b: i + 1 }]
    }

    pub fn kind(&self, r: Root) -> RootKind {
        if r.a <= self.m && r.b > self.m {
            RootKind::Odd
        } else if r.b <= self.m {
            RootKind::Plus
        } else {
            RootKind::Minus
        }
    }

    pub fn is_odd(&self, idx: usize) -> bool {
        self.kind(self.roots[idx]) == RootKind::Odd
    }

    pub fn num_odd(&self) -> usize {
        self.m * self.n
    }

    pub fn num_plus(&self) -> usize {
        self.m * (self.m - 1) / 2
    }

    /// Index range of each block inside an exponent vector.
    pub fn odd_range(&self) -> std::ops::Range<usize> {
        0..self.num_odd()
    }

    pub fn plus_range(&self) -> std::ops::Range<usize> {
        self.num_odd()..self.num_odd() + self.num_plus()
    }

    pub fn minus_range(&self) -> std::ops::Range<usize> {
        self.num_odd() + self.num_plus()..self.num_roots()
    }

    /// Parity of the index in {1, ..., m+n}.
    pub fn parity(&self, k: usize) -> u8 {
        u8::from(k > self.m)
    }

    /// The convex order on positive roots.
    pub fn precedes(&self, x: Root, y: Root) -> bool {
        let (kx, ky) = (self.kind(x), self.kind(y));
        let (a, b, c, d) = (x.a, x.b, y.a, y.b);
        match (kx, ky) {
            (RootKind::Odd, RootKind::Odd) => b < d || (b == d && a > c),
            (RootKind::Odd, _) => true,
            (_, RootKind::Odd) => false,
            (RootKind::Plus, RootKind::Plus) => b > d || (b == d && a > c),
            (RootKind::Minus, RootKind::Minus) => a < c || (a == c && b < d),
            (RootKind::Plus, RootKind::Minus) => true,
            (RootKind::Minus, RootKind::Plus) => false,
        }
    }

    /// delta-coordinates of a root.
    pub fn root_weight(&self, r: Root) -> Vec<i64> {
        let mut w = vec![0; self.m + self.n];
        w[r.a - 1] += 1;
        w[r.b - 1] -= 1;
        w
    }

    /// The bicharacter q(mu, nu) = prod_i q_i^{mu_i nu_i}, q_i = q or -q^{-1}.
    pub fn qform(&self, mu: &[i64], nu: &[i64]) -> QMono {
        let mut e = 0i64;
        let mut s = 0i64;
        for k in 0..self.m + self.n {
            let p = mu[k] * nu[k];
            if k < self.m {
                e += p;
            } else {
                s += p;
            }
        }
        QMono {
            neg: s.rem_euclid(2) == 1,
            exp: e - s,
        }
    }

    pub fn qform_roots(&self, x: Root, y: Root) -> QMono {
        self.qform(&self.root_weight(x), &self.root_weight(y))
    }

    /// Super bilinear form (delta_i | delta_j) = (-1)^{parity i} delta_ij.
    pub fn superform(&self, mu: &[i64], nu: &[i64]) -> i64 {
        (0..self.m + self.n)
            .map(|k| {
                if k < self.m {
                    mu[k] * nu[k]
                } else {
                    -mu[k] * nu[k]
                }
            })
            .sum()
    }

    /// <mu, alpha_i^vee>; i = m pairs as mu_m + mu_{m+1}.
    pub fn pairing(&self, mu: &[i64], i: usize) -> i64 {
        if i == self.m {
            mu[i - 1] + mu[i]
        } else {
            mu[i - 1] - mu[i]
        }
    }

    /// Weight (delta-coordinates) of a monomial, taken positive.
    pub fn mono_degree(&self, mono: &[u8]) -> Vec<i64> {
        let mut w = vec![0; self.m + self.n];
        for (idx, &c) in mono.iter().enumerate() {
            if c > 0 {
                let r = self.roots[idx];
                w[r.a - 1] += c as i64;
                w[r.b - 1] -= c as i64;
            }
        }
        w
    }

    /// Principal degree: total number of simple roots.
    pub fn height(&self, r: Root) -> usize {
        r.b - r.a
    }

    pub fn mono_height(&self, mono: &[u8]) -> usize {
        mono.iter()
            .enumerate()
            .map(|(i, &c)| c as usize * self.height(self.roots[i]))
            .sum()
    }

    /// Correction term in f_y f_x = q(y,x)^{-1} f_x f_y + corr for x before y.
    /// Returns (coefficient, ordered root indices).
    pub fn commutation(&self, x: usize, y: usize) -> Option<(QRat, Vec<usize>)> {
        debug_assert!(x < y);
        let (ax, bx) = (self.roots[x].a, self.roots[x].b);
        let (ay, by) = (self.roots[y].a, self.roots[y].b);
        if bx == ay {
            return Some((QRat::one(), vec![self.index[&Root { a: ax, b: by }]]));
        }
        if by == ax {
            return Some((QRat::one(), vec![self.index[&Root { a: ay, b: bx }]]));
        }
        let distinct = ax != ay && bx != by;
        if distinct && ax < by && ay < bx {
            let g1 = self.index[&Root { a: ax, b: by }];
            let g2 = self.index[&Root { a: ay, b: bx }];
            let (g, d) = if g1 < g2 { (g1, g2) } else { (g2, g1) };
            if x < g && d < y {
                let c = QRat::q_pow(-1) - QRat::q();
                return Some((c, vec![g, d]));
            }
        }
        None
    }
}

/// Exponent vector indexed by root position.
pub type Mono = Vec<u8>;

/// Element of the negative half in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PbwVector {
    pub terms: BTreeMap<Mono, QRat>,
}

impl PbwVector {
    pub fn zero() -> Self {
        PbwVector {
            terms: BTreeMap::new(),
        }
    }

    pub fn mono(m: Mono, c: QRat) -> Self {
        let mut v = PbwVector::zero();
        v.add_term(m, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: QRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &PbwVector, c: &QRat) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &o.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add(&self, o: &PbwVector) -> PbwVector {
        let mut r = self.clone();
        r.add_scaled(o, &QRat::one());
        r
    }

    pub fn sub(&self, o: &PbwVector) -> PbwVector {
        let mut r = self.clone();
        r.add_scaled(o, &QRat::from_int(-1));
        r
    }

    pub fn scale(&self, c: &QRat) -> PbwVector {
        let mut r = PbwVector::zero();
        r.add_scaled(self, c);
        r
    }

    pub fn bar_coeffs(&self) -> PbwVector {
        PbwVector {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.bar()))
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: Vec<(usize, u32)>,
    coeff: QRat,
}

impl PbwVector {
    /// JSON list of terms `{"exponents":[[root_index,c]],"coeff":"..."}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                exponents: m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e as u32))
                    .collect(),
                coeff: c.clone(),
            })
            .collect();
        serde_json::to_value(terms).expect("serializable")
    }

    pub fn from_json(
        v: &serde_json::Value,
        num_roots: usize,
    ) -> Result<PbwVector, serde_json::Error> {
        let terms: Vec<TermJson> = serde_json::from_value(v.clone())?;
        let mut out = PbwVector::zero();
        for t in terms {
            let mut m = vec![0u8; num_roots];
            for (i, e) in t.exponents {
                if i >= num_roots {
                    return Err(serde::de::Error::custom(format!(
                        "root index {i} out of range"
                    )));
                }
                m[i] += e as u8;
            }
            out.add_term(m, t.coeff);
        }
        Ok(out)
    }
}

/// Noncommutative polynomial in the generators f_1..f_{m+n-1}.
pub type FreeElem = BTreeMap<Vec<u8>, QRat>;

fn free_add(acc: &mut FreeElem, w: Vec<u8>, c: QRat) {
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

/// Rewriting strategy for normalising a word in root vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Rewrite the inversion whose larger root is latest in the order.
    LatestInversion,
    Leftmost,
    Rightmost,
}

/// The algebra together with memo tables. Memo tables are behind mutexes so a
/// shared instance can be used from several threads.
pub struct PbwAlgebra {
    pub rd: RootData,
    lmul_memo: Mutex<HashMap<(usize, Mono), PbwVector>>,
    root_free: OnceLock<Vec<FreeElem>>,
    eprime_roots: OnceLock<Vec<Vec<PbwVector>>>,
    eprime2_roots: OnceLock<Vec<Vec<PbwVector>>>,
    sigma_roots: OnceLock<Vec<PbwVector>>,
}

impl PbwAlgebra {
    pub fn new(m: usize, n: usize) -> Result<PbwAlgebra, PbwError> {
        Ok(PbwAlgebra {
            rd: RootData::new(m, n)?,
            lmul_memo: Mutex::new(HashMap::new()),
            root_free: OnceLock::new(),
            eprime_roots: OnceLock::new(),
            eprime2_roots: OnceLock::new(),
            sigma_roots: OnceLock::new(),
        })
    }

    pub fn one(&self) -> PbwVector {
        PbwVector::mono(vec![0; self.rd.num_roots()], QRat::one())
    }

    pub fn unit_mono(&self, idx: usize) -> Mono {
        let mut m = vec![0; self.rd.num_roots()];
        m[idx] = 1;
        m
    }

    /// The generator f_i as a PBW vector.
    pub fn generator(&self, i: usize) -> PbwVector {
        PbwVector::mono(self.unit_mono(self.rd.simple(i)), QRat::one())
    }

    /// f_root * mono for a normal monomial.
    pub fn lmul_root_mono(&self, r: usize, mono: &Mono) -> PbwVector {
        let first = mono.iter().position(|&c| c > 0);
        match first {
            None => {
                let mut m = mono.clone();
                m[r] += 1;
                return PbwVector::mono(m, QRat::one());
            }
            Some(f) if r < f => {
                let mut m = mono.clone();
                m[r] += 1;
                return PbwVector::mono(m, QRat::one());
            }
            Some(f) if r == f => {
                if self.rd.is_odd(r) {
                    return PbwVector::zero();
                }
                let mut m = mono.clone();
                m[r] += 1;
                return PbwVector::mono(m, QRat::one());
            }
            _ => {}
        }
        let key = (r, mono.clone());
        if let Some(v) = self.lmul_memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let f = first.unwrap();
        let mut rest = mono.clone();
        rest[f] -= 1;
        let rest_vec = PbwVector::mono(rest.clone(), QRat::one());
        // f_r f_f = q(r,f)^{-1} f_f f_r + corr
        let twist = self
            .rd
            .qform_roots(self.rd.root(r), self.rd.root(f))
            .inv()
            .to_qrat();
        let inner = self.lmul_root_vec(r, &rest_vec);
        let mut out = self.lmul_root_vec(f, &inner).scale(&twist);
        if let Some((c, word)) = self.rd.commutation(f, r) {
            let mut v = rest_vec;
            for &w in word.iter().rev() {
                v = self.lmul_root_vec(w, &v);
            }
            out.add_scaled(&v, &c);
        }
        self.lmul_memo.lock().unwrap().insert(key, out.clone());
        out
    }

    pub fn lmul_root_vec(&self, r: usize, v: &PbwVector) -> PbwVector {
        let mut out = PbwVector::zero();
        for (m, c) in &v.terms {
            out.add_scaled(&self.lmul_root_mono(r, m), c);
        }
        out
    }

    /// Product of a monomial with a vector.
    pub fn mul_mono_vec(&self, mono: &Mono, v: &PbwVector) -> PbwVector {
        let mut out = v.clone();
        for idx in (0..mono.len()).rev() {
            for _ in 0..mono[idx] {
                out = self.lmul_root_vec(idx, &out);
                if out.is_zero() {
                    return out;
                }
            }
        }
        out
    }

    pub fn mul(&self, u: &PbwVector, v: &PbwVector) -> PbwVector {
        let mut out = PbwVector::zero();
        for (m, c) in &u.terms {
            out.add_scaled(&self.mul_mono_vec(m, v), c);
        }
        out
    }

    /// Normal form of a word in the generators f_i (1-based indices).
    pub fn normal_form(&self, word: &[usize]) -> Result<PbwVector, PbwError> {
        let mut v = self.one();
        for &i in word.iter().rev() {
            if i == 0 || i >= self.rd.m + self.rd.n {
                return Err(PbwError::BadGenerator(i));
            }
            v = self.lmul_root_vec(self.rd.simple(i), &v);
        }
        Ok(v)
    }

    /// Normal form of a word in root vectors by explicit rewriting with a
    /// chosen strategy. Slow; used to cross-check confluence.
    pub fn normalize_root_word(
        &self,
        word: &[usize],
        strategy: Strategy,
    ) -> Result<PbwVector, PbwError> {
        let nr = self.rd.num_roots();
        if let Some(&bad) = word.iter().find(|&&r| r >= nr) {
            return Err(PbwError::BadRoot(bad));
        }
        let mut pending: BTreeMap<Vec<usize>, QRat> = BTreeMap::new();
        pending.insert(word.to_vec(), QRat::one());
        let mut done = PbwVector::zero();
        while let Some((w, c)) = pending.pop_first() {
            let inversions: Vec<usize> = (0..w.len().saturating_sub(1))
                .filter(|&p| w[p] > w[p + 1] || (w[p] == w[p + 1] && self.rd.is_odd(w[p])))
                .collect();
            let Some(&p) = (match strategy {
                Strategy::Leftmost => inversions.first(),
                Strategy::Rightmost => inversions.last(),
                Strategy::LatestInversion => inversions
                    .iter()
                    .max_by_key(|&&p| (w[p], std::cmp::Reverse(p))),
            }) else {
                let mut m = vec![0u8; nr];
                for &r in &w {
                    m[r] += 1;
                }
                done.add_term(m, c);
                continue;
            };
            let (y, x) = (w[p], w[p + 1]);
            if x == y {
                continue;
            }
            let twist = self
                .rd
                .qform_roots(self.rd.root(y), self.rd.root(x))
                .inv()
                .to_qrat();
            let mut swapped = w.clone();
            swapped.swap(p, p + 1);
            push_word(&mut pending, swapped, &c * &twist);
            if let Some((k, mid)) = self.rd.commutation(x, y) {
                let mut nw = w[..p].to_vec();
                nw.extend(mid);
                nw.extend_from_slice(&w[p + 2..]);
                push_word(&mut pending, nw, &c * &k);
            }
        }
        Ok(done)
    }

    /// Root vectors as polynomials in the generators.
    pub fn root_vectors_free(&self) -> &Vec<FreeElem> {
        self.root_free.get_or_init(|| {
            let rd = &self.rd;
            let m = rd.m;
            rd.roots()
                .iter()
                .map(|r| {
                    let (i, j) = (r.a, r.b - 1);
                    // Sequence of generators applied by ad, innermost first.
                    let (start, steps): (usize, Vec<usize>) = match rd.kind(*r) {
                        RootKind::Odd => {
                            let mut s: Vec<usize> = (i..m).rev().collect();
                            s.extend(m + 1..=j);
                            (m, s)
                        }
                        RootKind::Plus => (j, (i..j).rev().collect()),
                        RootKind::Minus => (i, (i + 1..=j).collect()),
                    };
                    let mut u: FreeElem = BTreeMap::new();
                    u.insert(vec![start as u8], QRat::one());
                    let mut deg = rd.root_weight(Root {
                        a: start,
                        b: start + 1,
                    });
                    for k in steps {
                        let ak = rd.root_weight(Root { a: k, b: k + 1 });
                        let tw = rd.qform(&ak, &deg).inv().to_qrat();
                        let mut next = BTreeMap::new();
                        for (w, c) in &u {
                            let mut left = vec![k as u8];
                            left.extend(w);
                            free_add(&mut next, left, c.clone());
                            let mut right = w.clone();
                            right.push(k as u8);
                            free_add(&mut next, right, -(c * &tw));
                        }
                        u = next;
                        for (d, a) in deg.iter_mut().zip(&ak) {
                            *d += a;
                        }
                    }
                    u
                })
                .collect()
        })
    }

    fn free_to_pbw(&self, x: &FreeElem) -> PbwVector {
        let mut out = PbwVector::zero();
        for (w, c) in x {
            let word: Vec<usize> = w.iter().map(|&g| g as usize).collect();
            out.add_scaled(&self.normal_form(&word).expect("valid generators"), c);
        }
        out
    }

    fn free_derivation(&self, x: &FreeElem, i: usize, inverse_twist: bool) -> FreeElem {
        let rd = &self.rd;
        let ai = rd.root_weight(Root { a: i, b: i + 1 });
        let mut out = BTreeMap::new();
        for (w, c) in x {
            let mut deg = vec![0i64; rd.m + rd.n];
            for (pos, &g) in w.iter().enumerate() {
                let g = g as usize;
                if g == i {
                    let t = rd.qform(&ai, &deg);
                    let t = if inverse_twist { t } else { t.inv() };
                    let mut nw = w.clone();
                    nw.remove(pos);
                    free_add(&mut out, nw, c * &t.to_qrat());
                }
                deg[g - 1] += 1;
                deg[g] -= 1;
            }
        }
        out
    }

    fn derivation_table(&self, inverse_twist: bool) -> Vec<Vec<PbwVector>> {
        let rf = self.root_vectors_free();
        (1..self.rd.m + self.rd.n)
            .map(|i| {
                rf.iter()
                    .map(|x| self.free_to_pbw(&self.free_derivation(x, i, inverse_twist)))
                    .collect()
            })
            .collect()
    }

    /// e'_i applied to the root vector with the given index.
    pub fn eprime_root(&self, i: usize, r: usize) -> &PbwVector {
        &self
            .eprime_roots
            .get_or_init(|| self.derivation_table(false))[i - 1][r]
    }

    fn eprime2_root(&self, i: usize, r: usize) -> &PbwVector {
        &self
            .eprime2_roots
            .get_or_init(|| self.derivation_table(true))[i - 1][r]
    }

    fn derive(&self, u: &PbwVector, i: usize, second: bool) -> PbwVector {
        let rd = &self.rd;
        let ai = rd.root_weight(Root { a: i, b: i + 1 });
        let mut out = PbwVector::zero();
        for (mono, c) in &u.terms {
            let seq: Vec<usize> = mono
                .iter()
                .enumerate()
                .flat_map(|(r, &k)| std::iter::repeat_n(r, k as usize))
                .collect();
            let mut prefix = vec![0u8; rd.num_roots()];
            for (pos, &r) in seq.iter().enumerate() {
                let d = if second {
                    self.eprime2_root(i, r)
                } else {
                    self.eprime_root(i, r)
                };
                if !d.is_zero() {
                    let mut suffix = vec![0u8; rd.num_roots()];
                    for &s in &seq[pos + 1..] {
                        suffix[s] += 1;
                    }
                    let tail = self.mul(d, &PbwVector::mono(suffix, QRat::one()));
                    let t = rd.qform(&ai, &rd.mono_degree(&prefix));
                    let t = if second { t } else { t.inv() };
                    let term = self.mul_mono_vec(&prefix, &tail);
                    out.add_scaled(&term, &(c * &t.to_qrat()));
                }
                prefix[r] += 1;
            }
        }
        out
    }

    /// The twisted derivation e'_i.
    pub fn eprime(&self, u: &PbwVector, i: usize) -> PbwVector {
        self.derive(u, i, false)
    }

    /// The derivation e''_i with the inverse twist.
    pub fn eprime2(&self, u: &PbwVector, i: usize) -> PbwVector {
        self.derive(u, i, true)
    }

    fn sigma_root_table(&self) -> &Vec<PbwVector> {
        self.sigma_roots.get_or_init(|| {
            let rd = &self.rd;
            self.root_vectors_free()
                .iter()
                .map(|x| {
                    let mut img: FreeElem = BTreeMap::new();
                    for (w, c) in x {
                        let mut t = QMono::one();
                        for p in 0..w.len() {
                            for s in p + 1..w.len() {
                                let (gp, gs) = (w[p] as usize, w[s] as usize);
                                t = t.mul(rd.qform(
                                    &rd.root_weight(Root { a: gp, b: gp + 1 }),
                                    &rd.root_weight(Root { a: gs, b: gs + 1 }),
                                ));
                            }
                        }
                        let rev: Vec<u8> = w.iter().rev().copied().collect();
                        free_add(&mut img, rev, c.bar() * t.to_qrat());
                    }
                    self.free_to_pbw(&img)
                })
                .collect()
        })
    }

    /// The anti-involution sigma on the gl(n) block: sigma(f_i) = f_i,
    /// sigma(xy) = q(|x|,|y|) sigma(y) sigma(x), antilinear in q.
    pub fn sigma(&self, u: &PbwVector) -> PbwVector {
        let rd = &self.rd;
        let table = self.sigma_root_table();
        let mut out = PbwVector::zero();
        for (mono, c) in &u.terms {
            debug_assert!(
                mono[..rd.minus_range().start].iter().all(|&k| k == 0),
                "sigma outside the gl(n) block"
            );
            let seq: Vec<usize> = mono
                .iter()
                .enumerate()
                .flat_map(|(r, &k)| std::iter::repeat_n(r, k as usize))
                .collect();
            let mut t = QMono::one();
            for p in 0..seq.len() {
                for s in p + 1..seq.len() {
                    t = t.mul(rd.qform_roots(rd.root(seq[p]), rd.root(seq[s])));
                }
            }
            let mut v = self.one();
            for &r in seq.iter().rev() {
                v = self.mul(&v, &table[r]);
            }
            out.add_scaled(&v, &(c.bar() * t.to_qrat()));
        }
        out
    }

    /// e'_i f_i^{(k)} w = g_k f_i^{(k-1)} w whenever e'_i w = 0.
    fn string_factor(&self, i: usize, k: usize) -> QRat {
        let ai = self.rd.root_weight(Root { a: i, b: i + 1 });
        let t = self.rd.qform(&ai, &ai).inv().to_qrat();
        let mut s = QRat::zero();
        let mut p = QRat::one();
        for _ in 0..k {
            s += &p;
            p = &p * &t;
        }
        s / q_int(k as i64)
    }

    /// f_i^{(k)} * u.
    pub fn lmul_divided(&self, i: usize, k: usize, u: &PbwVector) -> PbwVector {
        let r = self.rd.simple(i);
        let mut v = u.clone();
        for _ in 0..k {
            v = self.lmul_root_vec(r, &v);
        }
        v.scale(&q_factorial(k as i64).inv())
    }

    /// u * f_i^{(k)}.
    pub fn rmul_divided(&self, u: &PbwVector, i: usize, k: usize) -> PbwVector {
        let mut m = vec![0u8; self.rd.num_roots()];
        m[self.rd.simple(i)] = k as u8;
        self.mul(u, &PbwVector::mono(m, q_factorial(k as i64).inv()))
    }

    /// u = sum_k f_i^{(k)} u_k with e'_i u_k = 0.
    pub fn string_decomp_left(&self, u: &PbwVector, i: usize) -> Vec<(usize, PbwVector)> {
        let mut out = Vec::new();
        let mut rest = u.clone();
        while !rest.is_zero() {
            let mut powers = vec![rest.clone()];
            loop {
                let next = self.eprime(powers.last().unwrap(), i);
                if next.is_zero() {
                    break;
                }
                powers.push(next);
            }
            let top = powers.len() - 1;
            let mut c = QRat::one();
            for k in 1..=top {
                c = c * self.string_factor(i, k);
            }
            let uk = powers[top].scale(&c.inv());
            rest = rest.sub(&self.lmul_divided(i, top, &uk));
            out.push((top, uk));
        }
        out.sort_by_key(|(k, _)| *k);
        out
    }

    /// u = sum_k u_k f_i^{(k)} with e'_i u_k = 0. Requires homogeneous u.
    pub fn string_decomp_right(&self, u: &PbwVector, i: usize) -> Vec<(usize, PbwVector)> {
        let rd = &self.rd;
        let ai = rd.root_weight(Root { a: i, b: i + 1 });
        let mut out = Vec::new();
        let mut rest = u.clone();
        while !rest.is_zero() {
            let mut powers = vec![rest.clone()];
            loop {
                let next = self.eprime(powers.last().unwrap(), i);
                if next.is_zero() {
                    break;
                }
                powers.push(next);
            }
            let top = powers.len() - 1;
            let deg_w = rd.mono_degree(powers[top].terms.keys().next().unwrap());
            let tw = rd.qform(&ai, &deg_w).inv().to_qrat();
            let mut c = QRat::one();
            for k in 1..=top {
                c = c * self.string_factor(i, k) * &tw;
            }
            let uk = powers[top].scale(&c.inv());
            rest = rest.sub(&self.rmul_divided(&uk, i, top));
            out.push((top, uk));
        }
        out.sort_by_key(|(k, _)| *k);
        out
    }

    /// Splits u by the (odd, gl(m)) prefix of its monomials; the values are
    /// the gl(n) parts.
    fn split_minus(&self, u: &PbwVector) -> BTreeMap<Mono, PbwVector> {
        let cut = self.rd.minus_range().start;
        let mut groups: BTreeMap<Mono, PbwVector> = BTreeMap::new();
        for (m, c) in &u.terms {
            let mut pre = m.clone();
            let mut post = m.clone();
            for k in 0..m.len() {
                if k < cut {
                    post[k] = 0;
                } else {
                    pre[k] = 0;
                }
            }
            groups.entry(pre).or_default().add_term(post, c.clone());
        }
        groups
    }

    fn minus_operator(&self, u3: &PbwVector, i: usize, raise: bool) -> PbwVector {
        let rd = &self.rd;
        let ai = rd.root_weight(Root { a: i, b: i + 1 });
        let mut out = PbwVector::zero();
        for (k, uk) in self.string_decomp_right(u3, i) {
            let deg = rd.mono_degree(uk.terms.keys().next().unwrap());
            let l = rd.superform(&deg, &ai);
            let k = k as i64;
            if raise {
                if k >= 1 {
                    let c = QRat::q_pow(-l + 2 * k - 2);
                    out.add_scaled(&self.rmul_divided(&uk, i, (k - 1) as usize), &c);
                }
            } else {
                let c = QRat::q_pow(l - 2 * k);
                out.add_scaled(&self.rmul_divided(&uk, i, (k + 1) as usize), &c);
            }
        }
        out
    }

    fn kashiwara(&self, u: &PbwVector, i: usize, raise: bool) -> PbwVector {
        let m = self.rd.m;
        if i < m {
            let mut out = PbwVector::zero();
            for (k, uk) in self.string_decomp_left(u, i) {
                if raise {
                    if k >= 1 {
                        out = out.add(&self.lmul_divided(i, k - 1, &uk));
                    }
                } else {
                    out = out.add(&self.lmul_divided(i, k + 1, &uk));
                }
            }
            out
        } else if i == m {
            if raise {
                self.eprime(u, i)
            } else {
                self.lmul_root_vec(self.rd.simple(i), u)
            }
        } else {
            let mut out = PbwVector::zero();
            for (pre, u3) in self.split_minus(u) {
                let img = self.minus_operator(&u3, i, raise);
                out = out.add(&self.mul_mono_vec(&pre, &img));
            }
            out
        }
    }

    /// Kashiwara lowering operator on the negative half.
    pub fn f_tilde(&self, u: &PbwVector, i: usize) -> PbwVector {
        self.kashiwara(u, i, false)
    }

    /// Kashiwara raising operator on the negative half.
    pub fn e_tilde(&self, u: &PbwVector, i: usize) -> PbwVector {
        self.kashiwara(u, i, true)
    }

    /// The lattice basis element f_S * f_plus^{(c)} * sigma(f_minus^{(c)})
    /// for a label given as an exponent vector.
    pub fn lattice_basis_element(&self, label: &Mono) -> PbwVector {
        let cut = self.rd.minus_range().start;
        let mut pre = label.clone();
        let mut post = label.clone();
        let mut scale = QRat::one();
        for k in 0..label.len() {
            if k < cut {
                post[k] = 0;
                scale = scale * q_factorial(label[k] as i64).inv();
            } else {
                pre[k] = 0;
            }
        }
        let mut post_scale = QRat::one();
        for &c in &post[cut..] {
            post_scale = post_scale * q_factorial(c as i64).inv();
        }
        let minus = self.sigma(&PbwVector::mono(post, post_scale));
        self.mul_mono_vec(&pre, &minus).scale(&scale)
    }

    /// Coordinates of u in the lattice basis, keyed by label.
    pub fn lattice_coords(&self, u: &PbwVector) -> BTreeMap<Mono, QRat> {
        let cut = self.rd.minus_range().start;
        let mut out = BTreeMap::new();
        for (pre, v) in self.split_minus(u) {
            let mut pre_fact = QRat::one();
            for &c in &pre[..cut] {
                pre_fact = pre_fact * q_factorial(c as i64);
            }
            let s = self.sigma(&v);
            for (post, e) in &s.terms {
                let mut f = QRat::one();
                for &c in &post[cut..] {
                    f = f * q_factorial(c as i64);
                }
                let d = (e * &f).bar();
                let mut label = pre.clone();
                label[cut..].copy_from_slice(&post[cut..]);
                out.insert(label, &pre_fact * &d);
            }
        }
        out
    }

    /// Membership in the A_0-lattice spanned by the lattice basis.
    pub fn in_lattice(&self, u: &PbwVector) -> bool {
        self.lattice_coords(u)
            .values()
            .all(|c| c.is_regular_at_zero())
    }

    /// Residue modulo q times the lattice: nonzero values at q = 0 per label.
    /// `None` when u is not in the lattice.
    pub fn lattice_residue(&self, u: &PbwVector) -> Option<BTreeMap<Mono, BigRational>> {
        let coords = self.lattice_coords(u);
        if !coords.values().all(|c| c.is_regular_at_zero()) {
            return None;
        }
        Some(
            coords
                .into_iter()
                .map(|(k, c)| (k, c.eval_at_zero()))
                .filter(|(_, v)| *v != BigRational::from_integer(0.into()))
                .collect(),
        )
    }
}

fn push_word(pending: &mut BTreeMap<Vec<usize>, QRat>, w: Vec<usize>, c: QRat) {
    if c.is_zero() {
        return;
    }
    let s = pending.get(&w).map(|x| x + &c).unwrap_or(c);
    if s.is_zero() {
        pending.remove(&w);
    } else {
        pending.insert(w, s);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(rd: &RootData, a: usize, b: usize) -> usize {
        rd.root_index(Root { a, b }).unwrap()
    }

    #[test]
    fn order_blocks() {
        let rd = RootData::new(2, 2).unwrap();
        let order: Vec<(usize, usize)> = rd.roots().iter().map(|r| (r.a, r.b)).collect();
        assert_eq!(order, vec![(2, 3), (1, 3), (2, 4), (1, 4), (1, 2), (3, 4)]);
        let rd = RootData::new(3, 1).unwrap();
        let plus: Vec<(usize, usize)> = rd.roots()[rd.plus_range()]
            .iter()
            .map(|r| (r.a, r.b))
            .collect();
        assert_eq!(plus, vec![(2, 3), (1, 3), (1, 2)]);
    }

    #[test]
    fn qform_values() {
        let rd = RootData::new(2, 1).unwrap();
        let v = rd.qform_roots(Root { a: 1, b: 3 }, Root { a: 2, b: 3 });
        assert_eq!(v, QMono { neg: true, exp: -1 });
        let a = rd.qform_roots(Root { a: 2, b: 3 }, Root { a: 2, b: 3 });
        assert_eq!(a, QMono { neg: true, exp: 0 });
    }

    #[test]
    fn odd_square_vanishes() {
        let alg = PbwAlgebra::new(2, 1).unwrap();
        assert!(alg.normal_form(&[2, 2]).unwrap().is_zero());
    }

    #[test]
    fn odd_pair_reorders() {
        let alg = PbwAlgebra::new(2, 1).unwrap();
        let rd = &alg.rd;
        let (x, y) = (idx(rd, 2, 3), idx(rd, 1, 3));
        let v = alg
            .normalize_root_word(&[y, x], Strategy::LatestInversion)
            .unwrap();
        let mut m = vec![0u8; 3];
        m[x] = 1;
        m[y] = 1;
        assert_eq!(v, PbwVector::mono(m, -QRat::q()));
    }

    #[test]
    fn serre_relations_vanish() {
        let alg = PbwAlgebra::new(2, 2).unwrap();
        let two = q_int(2);
        let mut r = alg.normal_form(&[1, 1, 2]).unwrap();
        r = r.sub(&alg.normal_form(&[1, 2, 1]).unwrap().scale(&two));
        r = r.add(&alg.normal_form(&[2, 1, 1]).unwrap());
        assert!(r.is_zero());
        let mut s = alg.normal_form(&[3, 3, 2]).unwrap();
        s = s.add(&alg.normal_form(&[3, 2, 3]).unwrap().scale(&two));
        s = s.add(&alg.normal_form(&[2, 3, 3]).unwrap());
        assert!(s.is_zero());
        let odd = [
            (vec![2, 1, 2, 3], 1),
            (vec![2, 3, 2, 1], -1),
            (vec![3, 2, 1, 2], 1),
            (vec![1, 2, 3, 2], -1),
        ];
        let mut t = alg.normal_form(&[2, 1, 3, 2]).unwrap().scale(&two);
        for (w, s) in odd {
            t = t.add(&alg.normal_form(&w).unwrap().scale(&QRat::from_int(s)));
        }
        assert!(t.is_zero());
    }

    #[test]
    fn sigma_on_adjacent_pair() {
        let alg = PbwAlgebra::new(1, 3).unwrap();
        let x = alg.normal_form(&[2, 3]).unwrap();
        let y = alg.normal_form(&[3, 2]).unwrap().scale(&-QRat::q());
        assert_eq!(alg.sigma(&x), y);
        assert_eq!(alg.sigma(&alg.sigma(&x)), x);
    }

    #[test]
    fn json_round_trip() {
        let alg = PbwAlgebra::new(2, 2).unwrap();
        let v = alg.normal_form(&[3, 2, 1]).unwrap();
        let j = v.to_json();
        assert_eq!(PbwVector::from_json(&j, alg.rd.num_roots()).unwrap(), v);
    }
}
