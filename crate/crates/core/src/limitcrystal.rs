//! The limit crystal B(infinity) as triples (S, b_+, b_-), the directed
//! system of Kac module crystals, the parabolic Verma crystal and the
//! component structure.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::combicrystal::{
    add_weights, hw_member, kac_op, oddset_op, pairing, tensor_side, Block, Crystal, Dir, Factor,
    HwElt, KacElt, Lusztig, OddSet, Side, TensorRule, Weight,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LimitError {
    #[error("weight {0:?} is not dominant")]
    NotDominant(Weight),
    #[error("weight {lambda:?} is not below {mu:?}")]
    NotBelow { lambda: Weight, mu: Weight },
    #[error("element has {got} odd rows/columns, expected {want}")]
    Shape { got: String, want: String },
    #[error("degree cap {cap} too small: {needed} needed")]
    CapExceeded { cap: usize, needed: usize },
    #[error(transparent)]
    Crystal(#[from] crate::combicrystal::CrystalError),
}

/// Element of B(infinity) = B(K) x B_{m|0}(infinity) x B_{0|n}(infinity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BInfElt {
    pub s: OddSet,
    pub plus: Lusztig,
    pub minus: Lusztig,
}

impl BInfElt {
    pub fn highest(m: usize, n: usize) -> Result<BInfElt, LimitError> {
        Ok(BInfElt {
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

    pub fn weight(&self) -> Weight {
        add_weights(
            &add_weights(&self.s.weight(), &self.plus.weight()),
            &self.minus.weight(),
        )
    }

    /// Principal degree.
    pub fn height(&self) -> usize {
        self.s.height() + self.plus.height() + self.minus.height()
    }

    /// Every triple of principal degree at most `cap`.
    pub fn all_up_to(m: usize, n: usize, cap: usize) -> Vec<BInfElt> {
        let mut out = Vec::new();
        let pluses = Lusztig::all_up_to(Block::Plus, m, n, cap);
        let minuses = Lusztig::all_up_to(Block::Minus, m, n, cap);
        for s in OddSet::all(m, n).filter(|s| s.height() <= cap) {
            for p in pluses.iter().filter(|p| s.height() + p.height() <= cap) {
                for q in minuses
                    .iter()
                    .filter(|q| s.height() + p.height() + q.height() <= cap)
                {
                    out.push(BInfElt {
                        s,
                        plus: p.clone(),
                        minus: q.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }
}

fn oddset_factor(s: &OddSet, i: usize) -> Factor {
    Factor {
        eps: s.eps(i),
        phi: s.phi(i),
        wt_pairing: pairing(s.m, &s.weight(), i),
    }
}

fn infinity_factor(b: &Lusztig, i: usize) -> Factor {
    Factor {
        eps: b.eps(i),
        phi: b.phi(i),
        wt_pairing: 0,
    }
}

/// Boson rule on S (x) b_+ for i < m; returns the new pair.
fn boson_step(s: &OddSet, plus: &Lusztig, i: usize, dir: Dir) -> Option<(OddSet, Lusztig)> {
    let side = tensor_side(
        TensorRule::Boson,
        dir,
        oddset_factor(s, i),
        infinity_factor(plus, i),
    );
    match side {
        Side::Left => Some((oddset_op(s, i, dir)?, plus.clone())),
        Side::Right => Some((*s, lusztig_step(plus, i, dir)?)),
    }
}

fn lusztig_step(b: &Lusztig, i: usize, dir: Dir) -> Option<Lusztig> {
    crate::combicrystal::lusztig_op(b, i, dir).expect("index in block")
}

/// Crystal operators on B(infinity).
pub fn binf_op(b: &BInfElt, i: usize, dir: Dir) -> Option<BInfElt> {
    let m = b.m();
    let mut out = b.clone();
    if i < m {
        let (s, p) = boson_step(&b.s, &b.plus, i, dir)?;
        out.s = s;
        out.plus = p;
    } else if i == m {
        out.s = oddset_op(&b.s, i, dir)?;
    } else {
        out.minus = lusztig_step(&b.minus, i, dir)?;
    }
    Some(out)
}

pub struct BInfCrystal {
    pub m: usize,
    pub n: usize,
}

impl Crystal for BInfCrystal {
    type Elt = BInfElt;
    fn m(&self) -> usize {
        self.m
    }
    fn n(&self) -> usize {
        self.n
    }
    fn op(&self, b: &BInfElt, i: usize, dir: Dir) -> Option<BInfElt> {
        binf_op(b, i, dir)
    }
    fn weight(&self, b: &BInfElt) -> Weight {
        b.weight()
    }
    fn height(&self, b: &BInfElt) -> usize {
        b.height()
    }
    fn phi_from_weight(&self) -> bool {
        true
    }
}

/// Dominance for the Kac module parameter: both blocks dominant.
pub fn is_dominant(m: usize, lambda: &[i64]) -> bool {
    (1..lambda.len())
        .filter(|&i| i != m)
        .all(|i| lambda[i - 1] >= lambda[i])
}

fn check_dominant(m: usize, lambda: &[i64]) -> Result<(), LimitError> {
    if is_dominant(m, lambda) {
        Ok(())
    } else {
        Err(LimitError::NotDominant(lambda.to_vec()))
    }
}

/// lambda < mu: mu - lambda is dominant and nonzero.
pub fn is_below(m: usize, lambda: &[i64], mu: &[i64]) -> bool {
    let d: Weight = mu.iter().zip(lambda).map(|(x, y)| x - y).collect();
    is_dominant(m, &d) && d.iter().any(|&x| x != 0)
}

/// Data (S_0, X, Y) with b = Y(S_0, X v_+, v_-). Words are listed in the
/// order the lowering operators are applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HwFactorization {
    pub s0: OddSet,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

/// Raises S (x) b_- over {i > m} and b_+ over {i < m} to highest elements.
pub fn hw_factorize(b: &KacElt) -> HwFactorization {
    let (m, n) = (b.m(), b.n());
    let mut cur = b.clone();
    let mut y = Vec::new();
    'raise_minus: loop {
        for i in m + 1..m + n {
            if let Some(nb) = kac_op(&cur, i, Dir::E) {
                cur = nb;
                y.push(i);
                continue 'raise_minus;
            }
        }
        break;
    }
    debug_assert!(cur.minus.is_zero(), "raised b_- should be v_lambda");
    let mut plus = b.plus_hw();
    let mut x = Vec::new();
    'raise_plus: loop {
        for i in 1..m {
            if let Some(nb) = plus.op(i, Dir::E) {
                plus = nb;
                x.push(i);
                continue 'raise_plus;
            }
        }
        break;
    }
    x.reverse();
    y.reverse();
    HwFactorization { s0: cur.s, x, y }
}

/// Y(S_0, X v_+, v_-) over lambda; None if some step is zero.
pub fn replay(m: usize, n: usize, lambda: &[i64], f: &HwFactorization) -> Option<KacElt> {
    let mut plus = HwElt::highest(Block::Plus, m, n, lambda.to_vec());
    for &i in &f.x {
        plus = plus.op(i, Dir::F)?;
    }
    let mut cur = KacElt {
        lambda: lambda.to_vec(),
        s: f.s0,
        plus: plus.base,
        minus: Lusztig::zero(Block::Minus, m, n),
    };
    for &i in &f.y {
        cur = kac_op(&cur, i, Dir::F)?;
    }
    Some(cur)
}

/// The directed-system map Theta_{lambda, mu}.
pub fn theta(lambda: &[i64], mu: &[i64], b: &KacElt) -> Result<KacElt, LimitError> {
    let m = b.m();
    check_dominant(m, lambda)?;
    check_dominant(m, mu)?;
    if !is_below(m, lambda, mu) {
        return Err(LimitError::NotBelow {
            lambda: lambda.to_vec(),
            mu: mu.to_vec(),
        });
    }
    let f = hw_factorize(b);
    Ok(replay(m, b.n(), mu, &f).expect("Theta replays over a larger weight"))
}

/// The lambda-component of the limit class of b, or None.
pub fn kappa_inv(b: &BInfElt, lambda: &[i64]) -> Result<Option<KacElt>, LimitError> {
    let (m, n) = (b.m(), b.n());
    if lambda.len() != m + n {
        return Err(LimitError::Shape {
            got: lambda.len().to_string(),
            want: (m + n).to_string(),
        });
    }
    check_dominant(m, lambda)?;
    if !hw_member(&b.plus, lambda) || !hw_member(&b.minus, lambda) {
        return Ok(None);
    }
    // S must be the S_0 of the class: S (x) v_- is {i > m}-highest.
    if (m + 1..m + n).any(|i| b.s.eps(i) > pairing(m, lambda, i)) {
        return Ok(None);
    }
    let mut y = Vec::new();
    let mut cur = b.minus.clone();
    'raise: loop {
        for i in m + 1..m + n {
            if let Some(nb) = lusztig_step(&cur, i, Dir::E) {
                cur = nb;
                y.push(i);
                continue 'raise;
            }
        }
        break;
    }
    y.reverse();
    let mut out = KacElt {
        lambda: lambda.to_vec(),
        s: b.s,
        plus: b.plus.clone(),
        minus: Lusztig::zero(Block::Minus, m, n),
    };
    for &i in &y {
        match kac_op(&out, i, Dir::F) {
            Some(nb) => out = nb,
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// A weight with <lambda, alpha_i^vee> = d for every i != m.
pub fn uniform_lambda(m: usize, n: usize, d: i64) -> Weight {
    (1..=m + n).map(|k| d * (m + n - k) as i64).collect()
}

/// The weight treated as large enough for b: pairing deg(b) off the odd index.
pub fn sufficient_lambda(b: &BInfElt) -> Weight {
    uniform_lambda(b.m(), b.n(), b.height() as i64)
}

/// Element of the parabolic Verma crystal B(X(lambda)).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XElt {
    pub lambda: Weight,
    pub s: OddSet,
    pub plus: Lusztig,
    pub minus: Lusztig,
}

impl XElt {
    pub fn highest(m: usize, n: usize, lambda: Weight) -> Result<XElt, LimitError> {
        check_dominant(m, &lambda)?;
        Ok(XElt {
            lambda,
            s: OddSet::empty(m, n)?,
            plus: Lusztig::zero(Block::Plus, m, n),
            minus: Lusztig::zero(Block::Minus, m, n),
        })
    }

    pub fn weight(&self) -> Weight {
        let w = add_weights(&self.lambda, &self.s.weight());
        add_weights(&add_weights(&w, &self.plus.weight()), &self.minus.weight())
    }

    pub fn height(&self) -> usize {
        self.s.height() + self.plus.height() + self.minus.height()
    }

    pub fn is_well_formed(&self) -> bool {
        hw_member(&self.minus, &self.lambda)
    }

    /// Every element of principal degree at most `cap`.
    pub fn all_up_to(m: usize, n: usize, lambda: &[i64], cap: usize) -> Vec<XElt> {
        BInfElt::all_up_to(m, n, cap)
            .into_iter()
            .filter(|b| hw_member(&b.minus, lambda))
            .map(|b| XElt {
                lambda: lambda.to_vec(),
                s: b.s,
                plus: b.plus,
                minus: b.minus,
            })
            .collect()
    }
}

/// Crystal operators on B(X(lambda)).
pub fn x_op(b: &XElt, i: usize, dir: Dir) -> Option<XElt> {
    let m = b.s.m;
    let mut out = b.clone();
    if i < m {
        let (s, p) = boson_step(&b.s, &b.plus, i, dir)?;
        out.s = s;
        out.plus = p;
    } else if i == m {
        out.s = oddset_op(&b.s, i, dir)?;
    } else {
        let hw = HwElt {
            base: b.minus.clone(),
            shift: b.lambda.clone(),
        };
        let f2 = Factor {
            eps: hw.eps(i),
            phi: hw.phi(i),
            wt_pairing: 0,
        };
        match tensor_side(TensorRule::Upper, dir, oddset_factor(&b.s, i), f2) {
            Side::Left => out.s = oddset_op(&b.s, i, dir)?,
            Side::Right => out.minus = hw.op(i, dir)?.base,
        }
    }
    Some(out)
}

pub struct XCrystal {
    pub m: usize,
    pub n: usize,
    pub lambda: Weight,
}

impl Crystal for XCrystal {
    type Elt = XElt;
    fn m(&self) -> usize {
        self.m
    }
    fn n(&self) -> usize {
        self.n
    }
    fn op(&self, b: &XElt, i: usize, dir: Dir) -> Option<XElt> {
        x_op(b, i, dir)
    }
    fn weight(&self, b: &XElt) -> Weight {
        b.weight()
    }
    fn height(&self, b: &XElt) -> usize {
        b.height()
    }
    fn phi_from_weight(&self) -> bool {
        true
    }
}

/// Projection to B(K(lambda)): zero unless b_+ lies in B(lambda_+).
pub fn project_plus(b: &XElt) -> Option<KacElt> {
    hw_member(&b.plus, &b.lambda).then(|| KacElt {
        lambda: b.lambda.clone(),
        s: b.s,
        plus: b.plus.clone(),
        minus: b.minus.clone(),
    })
}

/// Embedding into B(infinity): forget the truncation of b_-.
pub fn embed_dual(b: &XElt) -> BInfElt {
    BInfElt {
        s: b.s,
        plus: b.plus.clone(),
        minus: b.minus.clone(),
    }
}

/// (S cap X, S cap Y) with X the first odd column. The first part is an
/// odd set of shape (m, 1), the second keeps shape (m, n).
pub fn split_map(s: &OddSet) -> (OddSet, OddSet) {
    let (m, n) = (s.m, s.n);
    let xs: Vec<(usize, usize)> = (1..=m)
        .filter(|&a| s.contains(a, m + 1))
        .map(|a| (a, m + 1))
        .collect();
    let x = OddSet::from_pairs(m, 1, &xs).expect("shape (m, 1)");
    let ys: Vec<(usize, usize)> = s.pairs().into_iter().filter(|&(_, b)| b > m + 1).collect();
    (x, OddSet::from_pairs(m, n, &ys).expect("shape (m, n)"))
}

/// Operator on B(K_{m|1}) x C for 1 <= i <= m, built from the two factors.
pub fn split_op(pair: &(OddSet, OddSet), i: usize, dir: Dir) -> Option<(OddSet, OddSet)> {
    let (x, y) = pair;
    let m = x.m;
    if i == m {
        return Some((oddset_op(x, i, dir)?, *y));
    }
    match tensor_side(
        TensorRule::Lower,
        dir,
        oddset_factor(x, i),
        oddset_factor(y, i),
    ) {
        Side::Left => Some((oddset_op(x, i, dir)?, *y)),
        Side::Right => Some((*x, oddset_op(y, i, dir)?)),
    }
}

/// Descends with e_i (smallest i first) until every e_i vanishes.
pub fn highest_of(b: &BInfElt) -> BInfElt {
    let mut cur = b.clone();
    let l = b.m() + b.n();
    'down: loop {
        for i in 1..l {
            if let Some(nb) = binf_op(&cur, i, Dir::E) {
                cur = nb;
                continue 'down;
            }
        }
        return cur;
    }
}

pub fn is_highest(b: &BInfElt) -> bool {
    (1..b.m() + b.n()).all(|i| binf_op(b, i, Dir::E).is_none())
}

/// Label of a component: a subset of Y. For the highest element (c, b_+, 1)
/// the f-path of b_+^* is replayed on c inside C.
pub fn label_of_highest(h: &BInfElt) -> OddSet {
    let mut path = Vec::new();
    let mut cur = h.plus.clone();
    let m = h.m();
    'down: loop {
        for i in 1..m {
            if let Some(nb) = cur.op_star(i, Dir::E) {
                cur = nb;
                path.push(i);
                continue 'down;
            }
        }
        break;
    }
    let mut c = h.s;
    for &i in path.iter().rev() {
        c = oddset_op(&c, i, Dir::F).expect("path of b_+^* lies in B(wt c)");
    }
    c
}

/// Component label of an arbitrary element.
pub fn component_label(b: &BInfElt) -> OddSet {
    label_of_highest(&highest_of(b))
}

/// Highest elements of B(infinity), found exhaustively. The b_+ part is
/// bounded by the lowest element of B(lambda) with all pairings equal to n.
pub fn highest_elements(m: usize, n: usize) -> Result<Vec<BInfElt>, LimitError> {
    let bound: usize = (1..=m)
        .flat_map(|i| (i + 1..=m).map(move |j| n * (j - i)))
        .sum();
    let pluses = Lusztig::all_up_to(Block::Plus, m, n, bound);
    let mut out = Vec::new();
    for s in OddSet::all(m, n).filter(|s| !s.contains(m, m + 1)) {
        if (1..m).any(|i| s.eps(i) > 0) {
            continue;
        }
        for p in &pluses {
            let b = BInfElt {
                s,
                plus: p.clone(),
                minus: Lusztig::zero(Block::Minus, m, n),
            };
            if is_highest(&b) {
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// Element of the model B_{m|1}(infinity) x B_{0|n}(infinity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductElt {
    pub first: BInfElt,
    pub minus: Lusztig,
}

pub struct ProductCrystal {
    pub m: usize,
    pub n: usize,
}

impl ProductCrystal {
    pub fn highest(&self) -> ProductElt {
        ProductElt {
            first: BInfElt::highest(self.m, 1).unwrap(),
            minus: Lusztig::zero(Block::Minus, self.m, self.n),
        }
    }
}

impl Crystal for ProductCrystal {
    type Elt = ProductElt;
    fn m(&self) -> usize {
        self.m
    }
    fn n(&self) -> usize {
        self.n
    }
    fn op(&self, b: &ProductElt, i: usize, dir: Dir) -> Option<ProductElt> {
        let mut out = b.clone();
        if i <= self.m {
            out.first = binf_op(&b.first, i, dir)?;
        } else {
            out.minus = lusztig_step(&b.minus, i, dir)?;
        }
        Some(out)
    }
    fn weight(&self, b: &ProductElt) -> Weight {
        let mut w = b.first.weight();
        w.resize(self.m + self.n, 0);
        add_weights(&w, &b.minus.weight())
    }
    fn height(&self, b: &ProductElt) -> usize {
        b.first.height() + b.minus.height()
    }
    fn phi_from_weight(&self) -> bool {
        true
    }
}

/// Synchronized traversal of two crystals from the given roots, within
/// relative height `depth`. Returns the number of matched vertices, or a
/// description of the first mismatch.
pub fn isomorphism_witness<A: Crystal, B: Crystal>(
    ca: &A,
    ra: &A::Elt,
    cb: &B,
    rb: &B::Elt,
    depth: usize,
) -> Result<usize, String> {
    let ha = ca.height(ra);
    let hb = cb.height(rb);
    let shift: Weight = ca
        .weight(ra)
        .iter()
        .zip(cb.weight(rb))
        .map(|(x, y)| y - x)
        .collect();
    let mut fwd: HashMap<A::Elt, B::Elt> = HashMap::new();
    let mut back: HashMap<B::Elt, A::Elt> = HashMap::new();
    let mut queue = VecDeque::new();
    fwd.insert(ra.clone(), rb.clone());
    back.insert(rb.clone(), ra.clone());
    queue.push_back((ra.clone(), rb.clone()));
    while let Some((x, y)) = queue.pop_front() {
        if add_weights(&ca.weight(&x), &shift) != cb.weight(&y) {
            return Err(format!("weight mismatch at {x:?} / {y:?}"));
        }
        for i in ca.indices() {
            for dir in [Dir::F, Dir::E] {
                let nx = ca.op(&x, i, dir);
                let ny = cb.op(&y, i, dir);
                match (nx, ny) {
                    (None, None) => {}
                    (Some(nx), Some(ny)) => {
                        let inside_a = ca.height(&nx) <= ha + depth;
                        let inside_b = cb.height(&ny) <= hb + depth;
                        if inside_a != inside_b {
                            return Err(format!("relative heights differ at {nx:?} / {ny:?}"));
                        }
                        if !inside_a {
                            continue;
                        }
                        match (fwd.get(&nx), back.get(&ny)) {
                            (None, None) => {
                                fwd.insert(nx.clone(), ny.clone());
                                back.insert(ny.clone(), nx.clone());
                                queue.push_back((nx, ny));
                            }
                            (Some(py), Some(px)) if *py == ny && *px == nx => {}
                            _ => return Err(format!("inconsistent matching at {nx:?} / {ny:?}")),
                        }
                    }
                    (a, b) => {
                        return Err(format!(
                            "edge {i} {dir:?} exists on one side only: {a:?} / {b:?}"
                        ))
                    }
                }
            }
        }
    }
    Ok(fwd.len())
}

/// Census of the connected components.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentCensus {
    pub m: usize,
    pub n: usize,
    pub cap: usize,
    /// Labels as lists of pairs (a, b).
    pub labels: Vec<Vec<(usize, usize)>>,
    pub count: usize,
    pub expected: u64,
    pub isomorphism_checked: bool,
    /// Number of elements of degree at most `cap`, per label.
    #[serde(skip)]
    pub sizes: BTreeMap<OddSet, usize>,
}

/// Counts components exactly through their highest elements, labels the
/// elements of degree at most `cap`, and checks each component against the
/// model B_{m|1}(infinity) x B_{0|n}(infinity) to relative height `cap`.
pub fn components(m: usize, n: usize, cap: usize) -> Result<ComponentCensus, LimitError> {
    let highest = highest_elements(m, n)?;
    let labels: BTreeSet<OddSet> = highest.iter().map(label_of_highest).collect();
    let mut sizes = BTreeMap::new();
    for b in BInfElt::all_up_to(m, n, cap) {
        *sizes.entry(component_label(&b)).or_insert(0) += 1;
    }
    let model = ProductCrystal { m, n };
    let binf = BInfCrystal { m, n };
    let root = model.highest();
    let mut iso = labels.len() == highest.len();
    for h in &highest {
        iso &= isomorphism_witness(&binf, h, &model, &root, cap).is_ok();
    }
    Ok(ComponentCensus {
        m,
        n,
        cap,
        labels: labels.iter().map(|s| s.pairs()).collect(),
        count: highest.len(),
        expected: 1u64 << (m * (n - 1)),
        isomorphism_checked: iso,
        sizes,
    })
}
