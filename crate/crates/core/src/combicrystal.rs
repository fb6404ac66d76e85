//! Combinatorial crystal models: subsets of odd negative roots, Lusztig data
//! for the two even blocks, highest weight truncations and the Kac module
//! crystal.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Weight in delta-coordinates.
pub type Weight = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    E,
    F,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrystalError {
    #[error("index {i} is not an operator index of the {block:?} block")]
    WrongBlock { i: usize, block: Block },
    #[error("odd root (-delta_{a} + delta_{b}) out of range for m={m}, n={n}")]
    BadOddRoot {
        a: usize,
        b: usize,
        m: usize,
        n: usize,
    },
    #[error("odd sets support at most 64 roots (m*n = {0})")]
    TooLarge(usize),
    #[error("tensor rule {rule:?} does not apply to index {i}")]
    RuleMismatch { rule: TensorRule, i: usize },
    #[error("weight has length {got}, expected {want}")]
    WeightLength { got: usize, want: usize },
}

/// alpha_i in delta-coordinates.
pub fn simple_root(len: usize, i: usize) -> Weight {
    let mut w = vec![0; len];
    w[i - 1] = 1;
    w[i] = -1;
    w
}

/// <mu, alpha_i^vee> for gl(m|n).
pub fn pairing(m: usize, mu: &[i64], i: usize) -> i64 {
    if i == m {
        mu[i - 1] + mu[i]
    } else {
        mu[i - 1] - mu[i]
    }
}

pub fn add_weights(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Positions of the letters left after cancelling (+,-) pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reduced {
    pub minus: Vec<usize>,
    pub plus: Vec<usize>,
}

/// Bracket cancellation: each - cancels the nearest uncancelled + to its left.
pub fn reduce_signature(signs: &[Sign]) -> Reduced {
    let mut r = Reduced::default();
    for (pos, s) in signs.iter().enumerate() {
        match s {
            Sign::Plus => r.plus.push(pos),
            Sign::Minus => {
                if r.plus.pop().is_none() {
                    r.minus.push(pos);
                }
            }
        }
    }
    r
}

/// A subset of the odd negative roots, stored as an m x n bit matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddSet {
    pub m: usize,
    pub n: usize,
    bits: u64,
}

impl OddSet {
    pub fn empty(m: usize, n: usize) -> Result<OddSet, CrystalError> {
        if m * n > 64 {
            return Err(CrystalError::TooLarge(m * n));
        }
        Ok(OddSet { m, n, bits: 0 })
    }

    pub fn from_bits(m: usize, n: usize, bits: u64) -> OddSet {
        assert!(m * n <= 64 && (m * n == 64 || bits >> (m * n) == 0));
        OddSet { m, n, bits }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Every subset, for exhaustive checks.
    pub fn all(m: usize, n: usize) -> impl Iterator<Item = OddSet> {
        assert!(m * n < 64);
        (0..1u64 << (m * n)).map(move |bits| OddSet { m, n, bits })
    }

    /// Builds from pairs (a, b) meaning -delta_a + delta_b, a <= m < b.
    pub fn from_pairs(
        m: usize,
        n: usize,
        pairs: &[(usize, usize)],
    ) -> Result<OddSet, CrystalError> {
        let mut s = OddSet::empty(m, n)?;
        for &(a, b) in pairs {
            s.check(a, b)?;
            s.bits |= 1 << s.pos(a, b);
        }
        Ok(s)
    }

    fn check(&self, a: usize, b: usize) -> Result<(), CrystalError> {
        if a == 0 || a > self.m || b <= self.m || b > self.m + self.n {
            return Err(CrystalError::BadOddRoot {
                a,
                b,
                m: self.m,
                n: self.n,
            });
        }
        Ok(())
    }

    fn pos(&self, a: usize, b: usize) -> usize {
        (a - 1) * self.n + (b - self.m - 1)
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits >> self.pos(a, b) & 1 == 1
    }

    fn with(&self, a: usize, b: usize, on: bool) -> OddSet {
        let mut s = *self;
        if on {
            s.bits |= 1 << self.pos(a, b);
        } else {
            s.bits &= !(1 << self.pos(a, b));
        }
        s
    }

    /// Pairs (a, b) in the set, row-major.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for a in 1..=self.m {
            for b in self.m + 1..=self.m + self.n {
                if self.contains(a, b) {
                    v.push((a, b));
                }
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> Weight {
        let mut w = vec![0; self.m + self.n];
        for (a, b) in self.pairs() {
            w[a - 1] -= 1;
            w[b - 1] += 1;
        }
        w
    }

    /// Principal degree: number of simple roots in the weight.
    pub fn height(&self) -> usize {
        self.pairs().iter().map(|(a, b)| b - a).sum()
    }

    /// Intersection and union with another set of the same shape.
    pub fn intersect(&self, o: &OddSet) -> OddSet {
        OddSet {
            bits: self.bits & o.bits,
            ..*self
        }
    }

    pub fn union(&self, o: &OddSet) -> OddSet {
        OddSet {
            bits: self.bits | o.bits,
            ..*self
        }
    }

    /// The letters relevant for index i != m in reading order.
    fn letters(&self, i: usize) -> Vec<((usize, usize), Sign)> {
        let (m, n) = (self.m, self.n);
        let mut v = Vec::new();
        if i < m {
            for b in m + 1..=m + n {
                if self.contains(i + 1, b) {
                    v.push(((i + 1, b), Sign::Plus));
                }
                if self.contains(i, b) {
                    v.push(((i, b), Sign::Minus));
                }
            }
        } else {
            for a in 1..=m {
                if self.contains(a, i) {
                    v.push(((a, i), Sign::Plus));
                }
                if self.contains(a, i + 1) {
                    v.push(((a, i + 1), Sign::Minus));
                }
            }
        }
        v
    }

    /// The +/- sequence used by the signature rule for i != m.
    pub fn signature(&self, i: usize) -> Vec<Sign> {
        self.letters(i).into_iter().map(|(_, s)| s).collect()
    }

    pub fn eps(&self, i: usize) -> i64 {
        if i == self.m {
            return i64::from(self.contains(self.m, self.m + 1));
        }
        reduce_signature(&self.signature(i)).minus.len() as i64
    }

    pub fn phi(&self, i: usize) -> i64 {
        if i == self.m {
            return i64::from(!self.contains(self.m, self.m + 1));
        }
        reduce_signature(&self.signature(i)).plus.len() as i64
    }
}

/// Crystal operators on odd sets. `None` stands for the zero element.
pub fn oddset_op(s: &OddSet, i: usize, dir: Dir) -> Option<OddSet> {
    let m = s.m;
    assert!(i >= 1 && i < s.m + s.n, "index {i} out of range");
    if i == m {
        let has = s.contains(m, m + 1);
        return match (dir, has) {
            (Dir::F, false) => Some(s.with(m, m + 1, true)),
            (Dir::E, true) => Some(s.with(m, m + 1, false)),
            _ => None,
        };
    }
    let letters = s.letters(i);
    let signs: Vec<Sign> = letters.iter().map(|x| x.1).collect();
    let red = reduce_signature(&signs);
    let pos = match dir {
        Dir::F => *red.plus.first()?,
        Dir::E => *red.minus.last()?,
    };
    let (a, b) = letters[pos].0;
    let target = match (i < m, dir) {
        (true, Dir::F) => (i, b),
        (true, Dir::E) => (i + 1, b),
        (false, Dir::F) => (a, i + 1),
        (false, Dir::E) => (a, i),
    };
    Some(s.with(a, b, false).with(target.0, target.1, true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    Plus,
    Minus,
}

/// Which reading of Lusztig data a signature uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Reading {
    /// Roots starting at i or i+1, read by decreasing end point.
    Starts,
    /// Roots ending at i or i+1, read by increasing start point.
    Ends,
}

struct Slot {
    root: (usize, usize),
    sign: Sign,
    partner: Option<(usize, usize)>,
}

/// Lusztig datum of one even block: a multiplicity for each positive root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lusztig {
    pub block: Block,
    pub m: usize,
    pub n: usize,
    mult: BTreeMap<(usize, usize), u32>,
}

impl Lusztig {
    pub fn zero(block: Block, m: usize, n: usize) -> Lusztig {
        Lusztig {
            block,
            m,
            n,
            mult: BTreeMap::new(),
        }
    }

    /// Global index range [lo, hi] of the block.
    pub fn range(&self) -> (usize, usize) {
        block_range(self.block, self.m, self.n)
    }

    pub fn from_entries(
        block: Block,
        m: usize,
        n: usize,
        entries: &[((usize, usize), u32)],
    ) -> Result<Lusztig, CrystalError> {
        let mut b = Lusztig::zero(block, m, n);
        let (lo, hi) = b.range();
        for &((a, c), k) in entries {
            if a < lo || c > hi || a >= c {
                return Err(CrystalError::WrongBlock { i: a, block });
            }
            b.set(a, c, k);
        }
        Ok(b)
    }

    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.mult.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, a: usize, b: usize, k: u32) {
        if k == 0 {
            self.mult.remove(&(a, b));
        } else {
            self.mult.insert((a, b), k);
        }
    }

    fn bump(&mut self, root: (usize, usize), up: bool) {
        let k = self.get(root.0, root.1);
        self.set(root.0, root.1, if up { k + 1 } else { k - 1 });
    }

    /// Nonzero entries keyed by root.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.mult
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    /// wt = -sum mult_beta beta.
    pub fn weight(&self) -> Weight {
        let mut w = vec![0; self.m + self.n];
        for (&(a, b), &k) in &self.mult {
            w[a - 1] -= k as i64;
            w[b - 1] += k as i64;
        }
        w
    }

    pub fn height(&self) -> usize {
        self.mult
            .iter()
            .map(|(&(a, b), &k)| (b - a) * k as usize)
            .sum()
    }

    fn check_index(&self, i: usize) -> Result<(), CrystalError> {
        let (lo, hi) = self.range();
        if i < lo || i >= hi {
            return Err(CrystalError::WrongBlock {
                i,
                block: self.block,
            });
        }
        Ok(())
    }

    fn slots(&self, i: usize, reading: Reading) -> Vec<Slot> {
        let (lo, hi) = self.range();
        let mut v = Vec::new();
        match reading {
            Reading::Starts => {
                for c in (i + 2..=hi).rev() {
                    v.push(Slot {
                        root: (i, c),
                        sign: Sign::Minus,
                        partner: Some((i + 1, c)),
                    });
                    v.push(Slot {
                        root: (i + 1, c),
                        sign: Sign::Plus,
                        partner: Some((i, c)),
                    });
                }
            }
            Reading::Ends => {
                for a in lo..i {
                    v.push(Slot {
                        root: (a, i + 1),
                        sign: Sign::Minus,
                        partner: Some((a, i)),
                    });
                    v.push(Slot {
                        root: (a, i),
                        sign: Sign::Plus,
                        partner: Some((a, i + 1)),
                    });
                }
            }
        }
        v.push(Slot {
            root: (i, i + 1),
            sign: Sign::Minus,
            partner: None,
        });
        v
    }

    /// Expanded signature together with the slot of each letter.
    fn letters(&self, i: usize, reading: Reading) -> (Vec<Slot>, Vec<usize>, Vec<Sign>) {
        let slots = self.slots(i, reading);
        let mut owner = Vec::new();
        let mut signs = Vec::new();
        for (k, s) in slots.iter().enumerate() {
            for _ in 0..self.get(s.root.0, s.root.1) {
                owner.push(k);
                signs.push(s.sign);
            }
        }
        (slots, owner, signs)
    }

    fn act(&self, i: usize, dir: Dir, reading: Reading) -> Option<Lusztig> {
        let (slots, owner, signs) = self.letters(i, reading);
        let red = reduce_signature(&signs);
        let mut out = self.clone();
        match dir {
            Dir::F => match red.plus.first() {
                Some(&p) => {
                    let s = &slots[owner[p]];
                    out.bump(s.root, false);
                    out.bump(s.partner.unwrap(), true);
                }
                None => out.bump((i, i + 1), true),
            },
            Dir::E => {
                let &p = red.minus.last()?;
                let s = &slots[owner[p]];
                out.bump(s.root, false);
                if let Some(t) = s.partner {
                    out.bump(t, true);
                }
            }
        }
        Some(out)
    }

    fn reading(&self, star: bool) -> Reading {
        match (self.block, star) {
            (Block::Plus, false) | (Block::Minus, true) => Reading::Starts,
            (Block::Plus, true) | (Block::Minus, false) => Reading::Ends,
        }
    }

    /// The signature sequence used for e_i and f_i.
    pub fn signature(&self, i: usize) -> Result<Vec<Sign>, CrystalError> {
        self.check_index(i)?;
        Ok(self.letters(i, self.reading(false)).2)
    }

    /// The starred signature sequence (for eps*_i).
    pub fn signature_star(&self, i: usize) -> Result<Vec<Sign>, CrystalError> {
        self.check_index(i)?;
        Ok(self.letters(i, self.reading(true)).2)
    }

    pub fn eps(&self, i: usize) -> i64 {
        reduce_signature(&self.letters(i, self.reading(false)).2)
            .minus
            .len() as i64
    }

    pub fn eps_star(&self, i: usize) -> i64 {
        reduce_signature(&self.letters(i, self.reading(true)).2)
            .minus
            .len() as i64
    }

    /// phi_i on the infinity crystal: eps_i + <wt, alpha_i^vee>.
    pub fn phi(&self, i: usize) -> i64 {
        self.eps(i) + pairing(self.m, &self.weight(), i)
    }

    /// The starred operators, acting through the starred reading.
    pub fn op_star(&self, i: usize, dir: Dir) -> Option<Lusztig> {
        self.act(i, dir, self.reading(true))
    }

    /// All data of the block with principal degree at most `max_height`.
    pub fn all_up_to(block: Block, m: usize, n: usize, max_height: usize) -> Vec<Lusztig> {
        let (lo, hi) = block_range(block, m, n);
        let roots: Vec<(usize, usize)> = (lo..=hi)
            .flat_map(|a| (a + 1..=hi).map(move |b| (a, b)))
            .collect();
        let mut out = Vec::new();
        let mut cur = Lusztig::zero(block, m, n);
        fn go(
            roots: &[(usize, usize)],
            k: usize,
            budget: usize,
            cur: &mut Lusztig,
            out: &mut Vec<Lusztig>,
        ) {
            if k == roots.len() {
                out.push(cur.clone());
                return;
            }
            let (a, b) = roots[k];
            let h = b - a;
            let mut c = 0;
            while c * h <= budget {
                cur.set(a, b, c as u32);
                go(roots, k + 1, budget - c * h, cur, out);
                c += 1;
            }
            cur.set(a, b, 0);
        }
        go(&roots, 0, max_height, &mut cur, &mut out);
        out.sort();
        out
    }
}

pub fn block_range(block: Block, m: usize, n: usize) -> (usize, usize) {
    match block {
        Block::Plus => (1, m),
        Block::Minus => (m + 1, m + n),
    }
}

/// Crystal operators on the infinity crystal of a block.
pub fn lusztig_op(b: &Lusztig, i: usize, dir: Dir) -> Result<Option<Lusztig>, CrystalError> {
    b.check_index(i)?;
    Ok(b.act(i, dir, b.reading(false)))
}

/// eps*_i(b) = eps_i(b*), read off the starred signature.
pub fn epsilon_star(b: &Lusztig, i: usize) -> Result<i64, CrystalError> {
    b.check_index(i)?;
    Ok(b.eps_star(i))
}

/// Element b (x) t_lambda of the highest weight crystal B(lambda) inside
/// B(infinity) (x) T_lambda.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HwElt {
    pub base: Lusztig,
    /// Full-length weight; only the coordinates of the block matter.
    pub shift: Weight,
}

impl HwElt {
    pub fn highest(block: Block, m: usize, n: usize, shift: Weight) -> HwElt {
        HwElt {
            base: Lusztig::zero(block, m, n),
            shift,
        }
    }

    pub fn is_member(&self) -> bool {
        hw_member(&self.base, &self.shift)
    }

    pub fn weight(&self) -> Weight {
        add_weights(&self.base.weight(), &self.shift)
    }

    pub fn eps(&self, i: usize) -> i64 {
        self.base.eps(i)
    }

    pub fn phi(&self, i: usize) -> i64 {
        self.base.eps(i) + pairing(self.base.m, &self.weight(), i)
    }

    pub fn op(&self, i: usize, dir: Dir) -> Option<HwElt> {
        let base = self.base.act(i, dir, self.base.reading(false))?;
        let out = HwElt {
            base,
            shift: self.shift.clone(),
        };
        (dir == Dir::E || out.is_member()).then_some(out)
    }
}

/// Membership of b (x) t_lambda in B(lambda): eps*_i(b) <= <lambda, alpha_i^vee>.
pub fn hw_member(b: &Lusztig, lambda: &[i64]) -> bool {
    let (lo, hi) = b.range();
    (lo..hi).all(|i| b.eps_star(i) <= pairing(b.m, lambda, i))
}

/// Tensor product rules, named by the index range they serve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorRule {
    /// i = m.
    Odd,
    /// i < m.
    Lower,
    /// i > m.
    Upper,
    /// i < m on S (x) B(infinity), the boson rule.
    Boson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// String data of one tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub eps: i64,
    pub phi: i64,
    /// <wt(b), alpha_m^vee>, used only by the odd rule.
    pub wt_pairing: i64,
}

/// Decides which factor of b1 (x) b2 the operator acts on.
pub fn tensor_side(rule: TensorRule, dir: Dir, b1: Factor, b2: Factor) -> Side {
    match rule {
        TensorRule::Odd => {
            if b1.wt_pairing > 0 {
                Side::Left
            } else {
                Side::Right
            }
        }
        TensorRule::Lower | TensorRule::Boson => {
            let left = match dir {
                Dir::F => b1.phi > b2.eps,
                Dir::E => b1.phi >= b2.eps,
            };
            if left {
                Side::Left
            } else {
                Side::Right
            }
        }
        TensorRule::Upper => {
            let right = match dir {
                Dir::F => b2.phi > b1.eps,
                Dir::E => b2.phi >= b1.eps,
            };
            if right {
                Side::Right
            } else {
                Side::Left
            }
        }
    }
}

/// Checks that a rule is used with an index it serves.
pub fn tensor_rule_for(rule: TensorRule, m: usize, i: usize) -> Result<(), CrystalError> {
    let ok = match rule {
        TensorRule::Odd => i == m,
        TensorRule::Lower | TensorRule::Boson => i < m,
        TensorRule::Upper => i > m,
    };
    if ok {
        Ok(())
    } else {
        Err(CrystalError::RuleMismatch { rule, i })
    }
}

fn oddset_factor(s: &OddSet, i: usize) -> Factor {
    Factor {
        eps: s.eps(i),
        phi: s.phi(i),
        wt_pairing: pairing(s.m, &s.weight(), i),
    }
}

/// Element (S, b_+, b_-) of the Kac module crystal B(K(lambda)).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KacElt {
    pub lambda: Weight,
    pub s: OddSet,
    pub plus: Lusztig,
    pub minus: Lusztig,
}

impl KacElt {
    /// The highest element 1_lambda.
    pub fn highest(m: usize, n: usize, lambda: Weight) -> Result<KacElt, CrystalError> {
        if lambda.len() != m + n {
            return Err(CrystalError::WeightLength {
                got: lambda.len(),
                want: m + n,
            });
        }
        Ok(KacElt {
            lambda,
            s: OddSet::empty(m, n)?,
            plus: Lusztig::zero(Block::Plus, m, n),
            minus: Lusztig::zero(Block::Minus, m, n),
        })
    }

    pub fn m(&self) -> usize {
        self.s.m
    }

    pub fn n(&self) -> usize {
        self.s.n
    }

    pub fn plus_hw(&self) -> HwElt {
        HwElt {
            base: self.plus.clone(),
            shift: self.lambda.clone(),
        }
    }

    pub fn minus_hw(&self) -> HwElt {
        HwElt {
            base: self.minus.clone(),
            shift: self.lambda.clone(),
        }
    }

    pub fn is_well_formed(&self) -> bool {
        hw_member(&self.plus, &self.lambda) && hw_member(&self.minus, &self.lambda)
    }

    pub fn weight(&self) -> Weight {
        let w = add_weights(&self.lambda, &self.s.weight());
        let w = add_weights(&w, &self.plus.weight());
        add_weights(&w, &self.minus.weight())
    }

    pub fn height(&self) -> usize {
        self.s.height() + self.plus.height() + self.minus.height()
    }
}

/// Crystal operators on B(K(lambda)).
pub fn kac_op(b: &KacElt, i: usize, dir: Dir) -> Option<KacElt> {
    let m = b.m();
    let mut out = b.clone();
    if i == m {
        out.s = oddset_op(&b.s, i, dir)?;
        return Some(out);
    }
    let (rule, hw) = if i < m {
        (TensorRule::Lower, b.plus_hw())
    } else {
        (TensorRule::Upper, b.minus_hw())
    };
    let f2 = Factor {
        eps: hw.eps(i),
        phi: hw.phi(i),
        wt_pairing: 0,
    };
    match tensor_side(rule, dir, oddset_factor(&b.s, i), f2) {
        Side::Left => out.s = oddset_op(&b.s, i, dir)?,
        Side::Right => {
            let nb = hw.op(i, dir)?.base;
            if i < m {
                out.plus = nb;
            } else {
                out.minus = nb;
            }
        }
    }
    Some(out)
}

/// Common interface of the crystal models, used by the generic checks.
pub trait Crystal {
    type Elt: Clone + Eq + Hash + Ord + Debug;

    fn m(&self) -> usize;
    fn n(&self) -> usize;
    fn op(&self, b: &Self::Elt, i: usize, dir: Dir) -> Option<Self::Elt>;
    fn weight(&self, b: &Self::Elt) -> Weight;
    /// Principal degree used for truncation.
    fn height(&self, b: &Self::Elt) -> usize;
    /// Whether phi_i is defined through the weight (infinite strings).
    fn phi_from_weight(&self) -> bool {
        false
    }

    fn indices(&self) -> Vec<usize> {
        (1..self.m() + self.n()).collect()
    }

    fn eps(&self, b: &Self::Elt, i: usize) -> i64 {
        let mut k = 0;
        let mut cur = b.clone();
        while let Some(nb) = self.op(&cur, i, Dir::E) {
            cur = nb;
            k += 1;
        }
        k
    }

    fn phi(&self, b: &Self::Elt, i: usize) -> i64 {
        if self.phi_from_weight() && i != self.m() {
            return self.eps(b, i) + pairing(self.m(), &self.weight(b), i);
        }
        let mut k = 0;
        let mut cur = b.clone();
        while let Some(nb) = self.op(&cur, i, Dir::F) {
            cur = nb;
            k += 1;
            assert!(k < 10_000, "unbounded f-string");
        }
        k
    }
}

pub struct OddSetCrystal {
    pub m: usize,
    pub n: usize,
}

impl Crystal for OddSetCrystal {
    type Elt = OddSet;
    fn m(&self) -> usize {
        self.m
    }
    fn n(&self) -> usize {
        self.n
    }
    fn op(&self, b: &OddSet, i: usize, dir: Dir) -> Option<OddSet> {
        oddset_op(b, i, dir)
    }
    fn weight(&self, b: &OddSet) -> Weight {
        b.weight()
    }
    fn height(&self, b: &OddSet) -> usize {
        b.height()
    }
    fn eps(&self, b: &OddSet, i: usize) -> i64 {
        b.eps(i)
    }
    fn phi(&self, b: &OddSet, i: usize) -> i64 {
        b.phi(i)
    }
}

/// The infinity crystal of one even block, as a gl crystal of that block.
pub struct LusztigCrystal {
    pub block: Block,
    pub m: usize,
    pub n: usize,
}

impl Crystal for LusztigCrystal {
    type Elt = Lusztig;
    fn m(&self) -> usize {
        self.m
    }
    fn n(&self) -> usize {
        self.n
    }
    fn indices(&self) -> Vec<usize> {
        let (lo, hi) = block_range(self.block, self.m, self.n);
        (lo..hi).collect()
    }
    fn op(&self, b: &Lusztig, i: usize, dir: Dir) -> Option<Lusztig> {
        lusztig_op(b, i, dir).expect("index in block")
    }
    fn weight(&self, b: &Lusztig) -> Weight {
        b.weight()
    }
    fn height(&self, b: &Lusztig) -> usize {
        b.height()
    }
    fn phi_from_weight(&self) -> bool {
        true
    }
    fn eps(&self, b: &Lusztig, i: usize) -> i64 {
        b.eps(i)
    }
}

pub struct KacCrystal {
    pub m: usize,
    pub n: usize,
    pub lambda: Weight,
}

impl Crystal for KacCrystal {
    type Elt = KacElt;
    fn m(&self) -> usize {
        self.m
    }
    fn n(&self) -> usize {
        self.n
    }
    fn op(&self, b: &KacElt, i: usize, dir: Dir) -> Option<KacElt> {
        kac_op(b, i, dir)
    }
    fn weight(&self, b: &KacElt) -> Weight {
        b.weight()
    }
    fn height(&self, b: &KacElt) -> usize {
        b.height()
    }
}

impl KacCrystal {
    /// All elements, found from 1_lambda through e and f edges.
    pub fn elements(&self) -> Result<Vec<KacElt>, CrystalError> {
        let top = KacElt::highest(self.m, self.n, self.lambda.clone())?;
        Ok(enumerate(self, vec![top], None, true))
    }
}

/// Breadth-first enumeration from the seeds, optionally through e-edges as
/// well, keeping elements of height at most `max_height`.
pub fn enumerate<C: Crystal>(
    c: &C,
    seeds: Vec<C::Elt>,
    max_height: Option<usize>,
    both: bool,
) -> Vec<C::Elt> {
    let mut seen: HashSet<C::Elt> = HashSet::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    let dirs: &[Dir] = if both { &[Dir::F, Dir::E] } else { &[Dir::F] };
    while let Some(b) = queue.pop_front() {
        for i in c.indices() {
            for &d in dirs {
                if let Some(nb) = c.op(&b, i, d) {
                    if max_height.is_some_and(|h| c.height(&nb) > h) {
                        continue;
                    }
                    if seen.insert(nb.clone()) {
                        queue.push_back(nb);
                    }
                }
            }
        }
    }
    let mut v: Vec<C::Elt> = seen.into_iter().collect();
    v.sort();
    v
}

/// Checks the crystal axioms on the given elements; returns violations.
/// Checks involving an image above `max_height` are skipped.
/// Axiom 5 is vacuous here: no model takes the value -infinity.
pub fn check_axioms<C: Crystal>(c: &C, elts: &[C::Elt], max_height: Option<usize>) -> Vec<String> {
    let mut bad = Vec::new();
    let len = c.m() + c.n();
    let m = c.m();
    for b in elts {
        let wt = c.weight(b);
        for i in c.indices() {
            let eps = c.eps(b, i);
            let phi = c.phi(b, i);
            if i != m {
                if phi - eps != pairing(m, &wt, i) {
                    bad.push(format!("axiom 1 fails at {b:?}, i={i}"));
                }
            } else if !(0..=1).contains(&(phi + eps)) {
                bad.push(format!("axiom 1 (odd) fails at {b:?}"));
            }
            let ai = simple_root(len, i);
            if let Some(e) = c.op(b, i, Dir::E) {
                if c.eps(&e, i) != eps - 1
                    || c.phi(&e, i) != phi + 1
                    || c.weight(&e) != add_weights(&wt, &ai)
                {
                    bad.push(format!("axiom 2 fails at {b:?}, i={i}"));
                }
                if c.op(&e, i, Dir::F).as_ref() != Some(b) {
                    bad.push(format!("axiom 4 (e then f) fails at {b:?}, i={i}"));
                }
            }
            if let Some(f) = c.op(b, i, Dir::F) {
                if max_height.is_some_and(|h| c.height(&f) > h) {
                    continue;
                }
                let neg: Weight = ai.iter().map(|x| -x).collect();
                if c.eps(&f, i) != eps + 1
                    || c.phi(&f, i) != phi - 1
                    || c.weight(&f) != add_weights(&wt, &neg)
                {
                    bad.push(format!("axiom 3 fails at {b:?}, i={i}"));
                }
                if c.op(&f, i, Dir::E).as_ref() != Some(b) {
                    bad.push(format!("axiom 4 (f then e) fails at {b:?}, i={i}"));
                }
            }
        }
    }
    bad
}

/// One class of the (gl(m), gl(n)) bicrystal decomposition of the odd sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicrystalClass {
    /// Row sums of the bi-highest element, largest first.
    pub rows: Vec<usize>,
    /// Column sums of the bi-highest element, largest first.
    pub cols: Vec<usize>,
    pub highest: OddSet,
    pub members: Vec<OddSet>,
}

/// Raises with e_i for i != m until no operator applies.
pub fn bi_highest(s: &OddSet) -> OddSet {
    let mut cur = *s;
    'outer: loop {
        for i in (1..s.m + s.n).filter(|&i| i != s.m) {
            if let Some(nb) = oddset_op(&cur, i, Dir::E) {
                cur = nb;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Partition of all odd sets by their bi-highest element.
pub fn bicrystal_decompose(m: usize, n: usize) -> Result<Vec<BicrystalClass>, CrystalError> {
    if m * n > 25 {
        return Err(CrystalError::TooLarge(m * n));
    }
    let mut classes: BTreeMap<OddSet, Vec<OddSet>> = BTreeMap::new();
    for s in OddSet::all(m, n) {
        classes.entry(bi_highest(&s)).or_default().push(s);
    }
    Ok(classes
        .into_iter()
        .map(|(h, members)| {
            let mut rows: Vec<usize> = (1..=m)
                .map(|a| (m + 1..=m + n).filter(|&b| h.contains(a, b)).count())
                .collect();
            let mut cols: Vec<usize> = (m + 1..=m + n)
                .map(|b| (1..=m).filter(|&a| h.contains(a, b)).count())
                .collect();
            rows.sort_unstable_by(|x, y| y.cmp(x));
            cols.sort_unstable_by(|x, y| y.cmp(x));
            BicrystalClass {
                rows,
                cols,
                highest: h,
                members,
            }
        })
        .collect())
}

/// Distinct weights reachable, used for quick summaries.
pub fn weight_set<C: Crystal>(c: &C, elts: &[C::Elt]) -> BTreeSet<Weight> {
    elts.iter().map(|b| c.weight(b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_s() -> OddSet {
        OddSet::from_pairs(3, 4, &[(3, 5), (3, 7), (2, 4), (2, 5), (2, 6), (1, 6)]).unwrap()
    }

    fn example_plus() -> Lusztig {
        Lusztig::from_entries(Block::Plus, 3, 4, &[((2, 3), 2), ((1, 3), 1), ((1, 2), 2)]).unwrap()
    }

    fn example_minus() -> Lusztig {
        Lusztig::from_entries(
            Block::Minus,
            3,
            4,
            &[
                ((4, 5), 2),
                ((4, 6), 1),
                ((4, 7), 1),
                ((5, 6), 1),
                ((5, 7), 2),
                ((6, 7), 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn odd_toggle() {
        let s = example_s();
        let t = oddset_op(&s, 3, Dir::F).unwrap();
        assert!(t.contains(3, 4));
        assert_eq!(t.len(), s.len() + 1);
        assert!(oddset_op(&t, 3, Dir::F).is_none());
    }

    #[test]
    fn row_move_for_lower_index() {
        let s = example_s();
        use Sign::*;
        assert_eq!(s.signature(1), vec![Plus, Plus, Plus, Minus]);
        let t = oddset_op(&s, 1, Dir::F).unwrap();
        assert!(!t.contains(2, 4) && t.contains(1, 4));
        assert_eq!(t.len(), s.len());
    }

    #[test]
    fn lusztig_signature_and_eps() {
        let b = example_plus();
        use Sign::*;
        assert_eq!(
            b.signature(1).unwrap(),
            vec![Minus, Plus, Plus, Minus, Minus]
        );
        assert_eq!(b.eps(1), 1);
        let f = lusztig_op(&b, 1, Dir::F).unwrap().unwrap();
        assert_eq!(f.get(1, 2), 3);
        assert_eq!(f.eps_star(1), 3);
        assert!(lusztig_op(&Lusztig::zero(Block::Plus, 3, 4), 2, Dir::E)
            .unwrap()
            .is_none());
        assert!(lusztig_op(&b, 4, Dir::F).is_err());
    }

    #[test]
    fn starred_epsilons_of_minus_block() {
        let b = example_minus();
        assert_eq!(epsilon_star(&b, 5).unwrap(), 2);
        assert_eq!(epsilon_star(&b, 4).unwrap(), 1);
        assert_eq!(epsilon_star(&b, 6).unwrap(), 1);
        let f = lusztig_op(&b, 5, Dir::F).unwrap().unwrap();
        assert_eq!((f.get(4, 5), f.get(4, 6)), (1, 2));
        assert_eq!(b.eps(5), 1);
    }

    #[test]
    fn tensor_rule_ties() {
        let z = Factor {
            eps: 0,
            phi: 0,
            wt_pairing: 0,
        };
        assert_eq!(tensor_side(TensorRule::Lower, Dir::F, z, z), Side::Right);
        let b1 = Factor {
            eps: 0,
            phi: 1,
            wt_pairing: 0,
        };
        let b2 = Factor {
            eps: 1,
            phi: 0,
            wt_pairing: 0,
        };
        assert_eq!(tensor_side(TensorRule::Boson, Dir::F, b1, b2), Side::Right);
        assert_eq!(tensor_side(TensorRule::Boson, Dir::E, b1, b2), Side::Left);
        let p = Factor {
            eps: 0,
            phi: 0,
            wt_pairing: 1,
        };
        assert_eq!(tensor_side(TensorRule::Odd, Dir::F, p, z), Side::Left);
        assert!(tensor_rule_for(TensorRule::Upper, 2, 1).is_err());
    }

    #[test]
    fn kac_example_truncation() {
        let lambda = vec![6, 4, 1, 3, 2, 0, -4];
        let b = KacElt {
            lambda,
            s: example_s(),
            plus: example_plus(),
            minus: example_minus(),
        };
        assert!(b.is_well_formed());
        let f1 = kac_op(&b, 1, Dir::F).unwrap();
        assert!(kac_op(&f1, 1, Dir::F).is_none());
        let f5 = kac_op(&b, 5, Dir::F).unwrap();
        assert!(!f5.s.contains(3, 5) && f5.s.contains(3, 6));
        assert_eq!(f5.minus, b.minus);
    }

    #[test]
    fn kac_zero_has_sixteen_elements() {
        let c = KacCrystal {
            m: 2,
            n: 2,
            lambda: vec![0; 4],
        };
        let e = c.elements().unwrap();
        assert_eq!(e.len(), 16);
        let top = KacElt::highest(2, 2, vec![0; 4]).unwrap();
        assert!((1..4).all(|i| kac_op(&top, i, Dir::E).is_none()));
    }

    #[test]
    fn bicrystal_small() {
        let cl = bicrystal_decompose(1, 1).unwrap();
        assert_eq!(cl.len(), 2);
        assert!(cl.iter().all(|c| c.members.len() == 1));
        let total: usize = bicrystal_decompose(2, 2)
            .unwrap()
            .iter()
            .map(|c| c.members.len())
            .sum();
        assert_eq!(total, 16);
    }
}
