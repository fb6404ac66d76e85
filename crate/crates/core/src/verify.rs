//! Verification suites shared by the command line tool and the tests.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::combicrystal::{
    bicrystal_decompose, check_axioms, hw_member, kac_op, oddset_op, Block, Dir, KacCrystal,
    KacElt, Lusztig, LusztigCrystal, OddSet, OddSetCrystal, Weight,
};
use crate::limitcrystal::{
    binf_op, components, embed_dual, hw_factorize, is_below, kappa_inv, project_plus, replay,
    split_map, split_op, theta, uniform_lambda, x_op, BInfCrystal, BInfElt, XCrystal, XElt,
};
use crate::qboson;
use crate::qfield::{akito_sum, q_binom, q_int, QRat};
use crate::superpbw::{PbwAlgebra, PbwVector, Strategy};
use num_traits::{One, Signed};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub const SUITES: &[&str] = &[
    "qfield",
    "pbw",
    "crystal-axioms",
    "kappa",
    "components",
    "boson",
    "examples",
];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, failures: Vec<String>, checked: usize) -> Check {
        let detail = match failures.first() {
            None => format!("{checked} cases"),
            Some(f) => format!("{} failures out of {checked}; first: {f}", failures.len()),
        };
        Check {
            name: name.to_string(),
            passed: failures.is_empty(),
            detail,
        }
    }

    fn flag(name: &str, passed: bool, detail: String) -> Check {
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub m: usize,
    pub n: usize,
    pub cap: usize,
    pub lambda: Option<Weight>,
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.m == 0 || self.n == 0 {
            return Err(VerifyError::Config("m and n must be positive".into()));
        }
        if let Some(l) = &self.lambda {
            if l.len() != self.m + self.n {
                return Err(VerifyError::Config(format!(
                    "lambda needs {} entries",
                    self.m + self.n
                )));
            }
            if !crate::limitcrystal::is_dominant(self.m, l) {
                return Err(VerifyError::Config(format!("lambda {l:?} is not dominant")));
            }
        }
        Ok(())
    }
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport, VerifyError> {
    cfg.validate()?;
    let checks = match name {
        "qfield" => qfield_suite(15),
        "pbw" => pbw_suite(cfg.m, cfg.n),
        "crystal-axioms" => axioms_suite(cfg),
        "kappa" => kappa_suite(cfg),
        "components" => components_suite(cfg),
        "boson" => boson_suite(6, 10),
        "examples" => examples_suite(),
        _ => return Err(VerifyError::UnknownSuite(name.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        checks,
    })
}

// ---------------------------------------------------------------- qfield

pub fn binomial_recursion_failures(max: i64) -> (Vec<String>, usize) {
    let mut bad = Vec::new();
    let mut count = 0;
    for a in 1..=max {
        for b in 0..=a {
            count += 1;
            let rhs =
                QRat::q_pow(-b) * q_binom(a - 1, b) + QRat::q_pow(a - b) * q_binom(a - 1, b - 1);
            if q_binom(a, b) != rhs {
                bad.push(format!("a={a}, b={b}"));
            }
        }
    }
    (bad, count)
}

pub fn akito_failures(max: i64) -> (Vec<String>, usize) {
    let mut bad = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            if akito_sum(a, b) != QRat::q_pow(2 * a * b) {
                bad.push(format!("a={a}, b={b}"));
            }
        }
    }
    (bad, ((max + 1) * (max + 1)) as usize)
}

fn qfield_suite(max: i64) -> Vec<Check> {
    let (b1, n1) = binomial_recursion_failures(max);
    let (b2, n2) = akito_failures(max);
    let mut b3 = Vec::new();
    for k in -6..=6 {
        let x = q_int(k) * QRat::q_pow(k) + QRat::from_ratio(k, 7);
        if x.bar().bar() != x {
            b3.push(format!("bar twice at {k}"));
        }
        if q_int(k).bar() != q_int(k) {
            b3.push(format!("[{k}] not bar invariant"));
        }
        let s = x.to_string();
        if s.parse::<QRat>().ok().as_ref() != Some(&x) {
            b3.push(format!("round trip of {s}"));
        }
    }
    vec![
        Check::new("Gaussian binomial recursion", b1, n1),
        Check::new("P(a,b) = q^(2ab)", b2, n2),
        Check::new("bar involution and text round trip", b3, 13),
    ]
}

// ---------------------------------------------------------------- pbw

fn pbw_suite(m: usize, n: usize) -> Vec<Check> {
    let Ok(alg) = PbwAlgebra::new(m, n) else {
        return vec![Check::flag(
            "algebra construction",
            false,
            format!("rank ({m},{n}) rejected"),
        )];
    };
    let l = m + n;
    let mut checks = Vec::new();

    // Serre relations.
    let nf = |w: &[usize]| alg.normal_form(w).unwrap();
    let two = q_int(2);
    let mut bad = Vec::new();
    let mut count = 0;
    for i in 1..l {
        for j in 1..l {
            if i == j || (j.abs_diff(i) == 1 && i == m) {
                continue;
            }
            count += 1;
            let rel = if j.abs_diff(i) >= 2 {
                nf(&[i, j]).sub(&nf(&[j, i]))
            } else {
                // (alpha_i, alpha_i) = -2 on the minus block flips the middle sign.
                let mid = if i > m { -two.clone() } else { two.clone() };
                nf(&[i, i, j])
                    .sub(&nf(&[i, j, i]).scale(&mid))
                    .add(&nf(&[j, i, i]))
            };
            if !rel.is_zero() {
                bad.push(format!("relation for ({i},{j})"));
            }
        }
    }
    count += 1;
    if !nf(&[m, m]).is_zero() {
        bad.push("odd generator does not square to zero".into());
    }
    if m > 1 && n > 1 {
        count += 1;
        let (a, o, c) = (m - 1, m, m + 1);
        let mut t = nf(&[o, a, c, o]).scale(&two);
        for (w, sign) in [
            ([o, a, o, c], 1),
            ([o, c, o, a], -1),
            ([c, o, a, o], 1),
            ([a, o, c, o], -1),
        ] {
            t = t.add(&nf(&w).scale(&QRat::from_int(sign)));
        }
        if !t.is_zero() {
            bad.push("quartic odd relation".into());
        }
    }
    checks.push(Check::new("Serre relations", bad, count));

    // Confluence.
    let nr = alg.rd.num_roots();
    let mut bad = Vec::new();
    let mut count = 0;
    for a in 0..nr {
        for b in 0..nr {
            for c in 0..nr {
                let w = [a, b, c];
                count += 1;
                let x = alg
                    .normalize_root_word(&w, Strategy::LatestInversion)
                    .unwrap();
                let y = alg.normalize_root_word(&w, Strategy::Leftmost).unwrap();
                let z = alg.normalize_root_word(&w, Strategy::Rightmost).unwrap();
                if x != y || x != z {
                    bad.push(format!("root word {w:?}"));
                }
            }
        }
    }
    checks.push(Check::new("rewriting strategies agree", bad, count));

    // Derivations on words against the derivations on normal forms.
    let mut bad = Vec::new();
    let mut count = 0;
    for w in words(l, 3) {
        for i in 1..l {
            count += 1;
            let direct = eprime_on_word(&alg, &w, i);
            if direct != alg.eprime(&nf(&w), i) {
                bad.push(format!("e'_{i} on {w:?}"));
            }
        }
    }
    checks.push(Check::new("e' is a twisted derivation", bad, count));

    // sigma on the minus block.
    let mut bad = Vec::new();
    let mut count = 0;
    let minus: Vec<usize> = (m + 1..l).collect();
    if !minus.is_empty() {
        for w in words(l, 3)
            .into_iter()
            .filter(|w| w.iter().all(|g| minus.contains(g)))
        {
            let u = nf(&w);
            count += 1;
            if alg.sigma(&alg.sigma(&u)) != u {
                bad.push(format!("sigma^2 on {w:?}"));
            }
            for &i in &minus {
                if alg.sigma(&alg.eprime(&alg.sigma(&u), i)) != alg.eprime(&u, i) {
                    bad.push(format!("sigma e'_{i} sigma on {w:?}"));
                }
            }
        }
    }
    checks.push(Check::new(
        "sigma is an involution commuting with e'",
        bad,
        count,
    ));

    // Lattice basis coordinates.
    let mut bad = Vec::new();
    let mut count = 0;
    for b in BInfElt::all_up_to(m, n, 3) {
        let label = label_of(&alg, &b);
        count += 1;
        let c = alg.lattice_coords(&alg.lattice_basis_element(&label));
        if c.len() != 1 || !c.get(&label).is_some_and(QRat::is_one) {
            bad.push(format!("label {label:?}"));
        }
    }
    checks.push(Check::new("lattice basis coordinates", bad, count));

    // Crystal operators against the triples.
    let mut bad = Vec::new();
    let mut count = 0;
    for b in BInfElt::all_up_to(m, n, 3) {
        let v = alg.lattice_basis_element(&label_of(&alg, &b));
        for i in 1..l {
            for dir in [Dir::F, Dir::E] {
                count += 1;
                let u = if dir == Dir::F {
                    alg.f_tilde(&v, i)
                } else {
                    alg.e_tilde(&v, i)
                };
                let want = binf_op(&b, i, dir).map(|nb| label_of(&alg, &nb));
                if !residue_matches(&alg, &u, want.as_ref()) {
                    bad.push(format!("{dir:?}_{i} on {b:?}"));
                }
            }
        }
    }
    checks.push(Check::new(
        "algebraic crystal operators match triples",
        bad,
        count,
    ));
    checks
}

/// All generator words of length 1..=len.
fn words(l: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        layer = layer
            .into_iter()
            .flat_map(|w| {
                (1..l).map(move |g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn eprime_on_word(alg: &PbwAlgebra, w: &[usize], i: usize) -> PbwVector {
    let rd = &alg.rd;
    let ai = rd.root(rd.simple(i));
    let mut out = PbwVector::zero();
    for (k, &g) in w.iter().enumerate() {
        if g != i {
            continue;
        }
        let mut tw = QRat::one();
        for &h in &w[..k] {
            tw = tw * rd.qform_roots(ai, rd.root(rd.simple(h))).to_qrat().inv();
        }
        let rest: Vec<usize> = w
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &x)| x)
            .collect();
        out = out.add(&alg.normal_form(&rest).unwrap().scale(&tw));
    }
    out
}

/// PBW label of a triple.
pub fn label_of(alg: &PbwAlgebra, b: &BInfElt) -> Vec<u8> {
    let rd = &alg.rd;
    rd.roots()
        .iter()
        .enumerate()
        .map(|(k, r)| {
            if rd.is_odd(k) {
                u8::from(b.s.contains(r.a, r.b))
            } else if r.b <= rd.m {
                b.plus.get(r.a, r.b) as u8
            } else {
                b.minus.get(r.a, r.b) as u8
            }
        })
        .collect()
}

fn residue_matches(alg: &PbwAlgebra, u: &PbwVector, want: Option<&Vec<u8>>) -> bool {
    let Some(res) = alg.lattice_residue(u) else {
        return false;
    };
    match want {
        None => res.is_empty(),
        Some(label) => res.len() == 1 && res.get(label).is_some_and(|c| c.abs().is_one()),
    }
}

// ---------------------------------------------------------------- axioms

/// Dimension of the irreducible gl_k module with highest weight lam.
pub fn weyl_dimension(lam: &[i64]) -> u64 {
    let k = lam.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        for j in i + 1..k {
            num *= (lam[i] - lam[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    (num / den) as u64
}

fn axioms_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let (m, n) = (cfg.m, cfg.n);
    let mut checks = Vec::new();
    if m * n <= 16 {
        let sets: Vec<OddSet> = OddSet::all(m, n).collect();
        let bad = check_axioms(&OddSetCrystal { m, n }, &sets, None);
        checks.push(Check::new("axioms on odd sets", bad, sets.len()));
    }
    let lambda = cfg
        .lambda
        .clone()
        .unwrap_or_else(|| uniform_lambda(m, n, 1));
    let kac = KacCrystal {
        m,
        n,
        lambda: lambda.clone(),
    };
    match kac.elements() {
        Ok(elts) => {
            let bad = check_axioms(&kac, &elts, None);
            checks.push(Check::new(
                "axioms on the Kac module crystal",
                bad,
                elts.len(),
            ));
            let want =
                (1u64 << (m * n)) * weyl_dimension(&lambda[..m]) * weyl_dimension(&lambda[m..]);
            checks.push(Check::flag(
                "Kac module crystal size",
                elts.len() as u64 == want,
                format!("{} elements, expected {want}", elts.len()),
            ));
        }
        Err(e) => checks.push(Check::flag("Kac module crystal", false, e.to_string())),
    }
    let binf = BInfElt::all_up_to(m, n, cfg.cap);
    let bad = check_axioms(&BInfCrystal { m, n }, &binf, Some(cfg.cap));
    checks.push(Check::new(
        "axioms on truncated B(infinity)",
        bad,
        binf.len(),
    ));
    for block in [Block::Plus, Block::Minus] {
        let data = Lusztig::all_up_to(block, m, n, cfg.cap);
        let bad = check_axioms(&LusztigCrystal { block, m, n }, &data, Some(cfg.cap));
        checks.push(Check::new(
            &format!("axioms on Lusztig data ({block:?} block)"),
            bad,
            data.len(),
        ));
    }
    if m * n <= 16 {
        match bicrystal_decompose(m, n) {
            Ok(classes) => {
                let mut bad = Vec::new();
                for c in &classes {
                    let conj = conjugate(&c.rows);
                    if conj
                        != c.cols
                            .iter()
                            .copied()
                            .filter(|&x| x > 0)
                            .collect::<Vec<_>>()
                    {
                        bad.push(format!(
                            "class of {:?}: rows {:?}, cols {:?}",
                            c.highest.pairs(),
                            c.rows,
                            c.cols
                        ));
                    }
                }
                checks.push(Check::new(
                    "bicrystal classes pair a partition with its transpose",
                    bad,
                    classes.len(),
                ));
            }
            Err(e) => checks.push(Check::flag("bicrystal decomposition", false, e.to_string())),
        }
    }
    checks
}

fn conjugate(p: &[usize]) -> Vec<usize> {
    let top = p.iter().copied().max().unwrap_or(0);
    (1..=top)
        .map(|k| p.iter().filter(|&&x| x >= k).count())
        .collect()
}

// ---------------------------------------------------------------- kappa

/// Dominant weights with entries in 0..=max.
pub fn small_dominant(m: usize, n: usize, max: i64) -> Vec<Weight> {
    fn block(len: usize, max: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    let top = v.last().copied().unwrap_or(max);
                    (0..=top).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }
    let mut out = Vec::new();
    for p in block(m, max) {
        for q in block(n, max) {
            let mut w = p.clone();
            w.extend(q);
            out.push(w);
        }
    }
    out
}

fn shift(w: &[i64], d: &[i64]) -> Weight {
    w.iter().zip(d).map(|(a, b)| a + b).collect()
}

/// Theta checks over lambda with entries <= max and mu = lambda + (1,..,1).
pub fn theta_checks(m: usize, n: usize, max: i64) -> Vec<Check> {
    let ones = vec![1; m + n];
    let mut recon = Vec::new();
    let mut trans = Vec::new();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    let mut count = 0;
    for lambda in small_dominant(m, n, max) {
        let mu = shift(&lambda, &ones);
        let nu = shift(&mu, &ones);
        let elts = KacCrystal {
            m,
            n,
            lambda: lambda.clone(),
        }
        .elements()
        .unwrap();
        for b in &elts {
            count += 1;
            let f = hw_factorize(b);
            if replay(m, n, &lambda, &f).as_ref() != Some(b) {
                recon.push(format!("{b:?}"));
            }
            let tb = theta(&lambda, &mu, b).unwrap();
            if theta(&mu, &nu, &tb).unwrap() != theta(&lambda, &nu, b).unwrap() {
                trans.push(format!("{b:?}"));
            }
            for i in 1..m + n {
                let Some(fb) = kac_op(b, i, Dir::F) else {
                    continue;
                };
                let lhs = theta(&lambda, &mu, &fb).unwrap();
                if i != m {
                    if kac_op(&tb, i, Dir::F).as_ref() != Some(&lhs) {
                        even.push(format!("i={i}, {b:?}"));
                    }
                } else if oddset_op(&f.s0, m, Dir::F).is_some()
                    && kac_op(&tb, i, Dir::F).as_ref() != Some(&lhs)
                {
                    odd.push(format!("{b:?}"));
                }
            }
        }
    }
    vec![
        Check::new("b = Y(S_0, X v_+, v_-) reconstructs b", recon, count),
        Check::new("Theta is transitive", trans, count),
        Check::new("Theta commutes with f_i for i != m", even, count),
        Check::new("Theta commutes with f_m when f_m S_0 != 0", odd, count),
    ]
}

/// An element with f_m b != 0 and f_m S_0 = 0 whose image under Theta is
/// killed by f_m once <mu, alpha_{m+1}^vee> is large.
#[derive(Clone, Debug, Serialize)]
pub struct OddKillWitness {
    pub lambda: Weight,
    pub mu: Weight,
    pub element: String,
}

pub fn find_odd_kill(m: usize, n: usize, max: i64, max_shift: i64) -> Option<OddKillWitness> {
    for lambda in small_dominant(m, n, max) {
        for b in (KacCrystal {
            m,
            n,
            lambda: lambda.clone(),
        })
        .elements()
        .unwrap()
        {
            if kac_op(&b, m, Dir::F).is_none() {
                continue;
            }
            let f = hw_factorize(&b);
            if oddset_op(&f.s0, m, Dir::F).is_some() {
                continue;
            }
            for j in 1..=max_shift {
                let mut mu = lambda.clone();
                mu[m] += j;
                if !is_below(m, &lambda, &mu) {
                    continue;
                }
                let tb = theta(&lambda, &mu, &b).unwrap();
                if kac_op(&tb, m, Dir::F).is_none() {
                    return Some(OddKillWitness {
                        lambda,
                        mu,
                        element: crate::graph::kac_label(&b),
                    });
                }
            }
        }
    }
    None
}

/// kappa_inv commutes with the operators for large lambda, and the large
/// lambda result is stable.
pub fn kappa_checks(m: usize, n: usize, cap: usize) -> Vec<Check> {
    let mut coh = Vec::new();
    let mut stable = Vec::new();
    let mut count = 0;
    for b in BInfElt::all_up_to(m, n, cap) {
        count += 1;
        let d = b.height() as i64 + 1;
        let lambda = uniform_lambda(m, n, d);
        let kb = kappa_inv(&b, &lambda).unwrap();
        for extra in 0..3 {
            let big = uniform_lambda(m, n, d - 1 + extra);
            let k = kappa_inv(&b, &big).unwrap();
            let literal = k.is_some_and(|k| k.s == b.s && k.plus == b.plus && k.minus == b.minus);
            if !literal {
                stable.push(format!("{b:?} at {big:?}"));
            }
        }
        let Some(kb) = kb else { continue };
        for i in 1..m + n {
            for dir in [Dir::F, Dir::E] {
                let lhs = binf_op(&b, i, dir).and_then(|x| kappa_inv(&x, &lambda).unwrap());
                let rhs = kac_op(&kb, i, dir);
                if lhs != rhs {
                    coh.push(format!("{dir:?}_{i} on {b:?}"));
                }
            }
        }
    }
    vec![
        Check::new(
            "kappa_inv is the literal triple from the threshold on",
            stable,
            count,
        ),
        Check::new(
            "kappa_inv intertwines B(infinity) and B(K(lambda)) operators",
            coh,
            count,
        ),
    ]
}

fn kappa_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut checks = theta_checks(cfg.m, cfg.n, 2.min(cfg.cap as i64));
    match find_odd_kill(cfg.m, cfg.n, 2, 6) {
        Some(w) => checks.push(Check::flag(
            "f_m killed after enlarging lambda",
            true,
            format!("lambda {:?}, mu {:?}, {}", w.lambda, w.mu, w.element),
        )),
        None => checks.push(Check::flag(
            "f_m killed after enlarging lambda",
            false,
            "no witness found".into(),
        )),
    }
    checks.extend(kappa_checks(cfg.m, cfg.n, cfg.cap.min(5)));
    checks
}

// ---------------------------------------------------------------- components

/// split_map intertwines the operators for i <= m on every odd set.
pub fn split_failures(m: usize, n: usize) -> (Vec<String>, usize) {
    let mut bad = Vec::new();
    let mut count = 0;
    for s in OddSet::all(m, n) {
        let pair = split_map(&s);
        for i in 1..=m {
            for dir in [Dir::F, Dir::E] {
                count += 1;
                let lhs = oddset_op(&s, i, dir).map(|t| split_map(&t));
                if lhs != split_op(&pair, i, dir) {
                    bad.push(format!("{dir:?}_{i} on {:?}", s.pairs()));
                }
            }
        }
    }
    (bad, count)
}

/// For n = 1 every element up to `cap` is an f-word from the highest element.
pub fn single_component_failures(m: usize, cap: usize) -> (Vec<String>, usize) {
    let c = BInfCrystal { m, n: 1 };
    let top = BInfElt::highest(m, 1).unwrap();
    let reached: HashSet<BInfElt> = crate::combicrystal::enumerate(&c, vec![top], Some(cap), false)
        .into_iter()
        .collect();
    let all = BInfElt::all_up_to(m, 1, cap);
    let bad = all
        .iter()
        .filter(|b| !reached.contains(*b))
        .map(|b| format!("{b:?}"))
        .collect();
    (bad, all.len())
}

fn components_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let (m, n) = (cfg.m, cfg.n);
    let mut checks = Vec::new();
    match components(m, n, cfg.cap) {
        Ok(c) => {
            checks.push(Check::flag(
                "number of components is 2^(m(n-1))",
                c.count as u64 == c.expected && c.labels.len() == c.count,
                format!(
                    "{} components, {} labels, expected {}",
                    c.count,
                    c.labels.len(),
                    c.expected
                ),
            ));
            checks.push(Check::flag(
                "components are isomorphic to B_{m|1}(infinity) x B_{0|n}(infinity)",
                c.isomorphism_checked,
                format!("relative depth {}", c.cap),
            ));
        }
        Err(e) => checks.push(Check::flag("component census", false, e.to_string())),
    }
    if m * n <= 16 {
        let (bad, count) = split_failures(m, n);
        checks.push(Check::new(
            "split map intertwines the operators",
            bad,
            count,
        ));
    }
    let mut bad = Vec::new();
    let all = BInfElt::all_up_to(m, n, cfg.cap.min(4));
    for b in &all {
        let lab = crate::limitcrystal::component_label(b);
        for i in 1..m + n {
            for dir in [Dir::F, Dir::E] {
                if let Some(nb) = binf_op(b, i, dir) {
                    if crate::limitcrystal::component_label(&nb) != lab {
                        bad.push(format!("{dir:?}_{i} on {b:?}"));
                    }
                }
            }
        }
    }
    checks.push(Check::new(
        "component label is constant along edges",
        bad,
        all.len(),
    ));
    if n == 1 {
        let (bad, count) = single_component_failures(m, cfg.cap);
        checks.push(Check::new(
            "every element is an f-word from the highest element",
            bad,
            count,
        ));
    }
    checks
}

// ---------------------------------------------------------------- boson

/// Failures of the boson claims on the grid l <= max_l, s <= max_s.
pub fn boson_grid(max_l: usize, max_s: usize) -> BTreeMap<&'static str, (Vec<String>, usize)> {
    let mut out: BTreeMap<&'static str, (Vec<String>, usize)> = BTreeMap::new();
    for l in 0..=max_l {
        for t in 0..=l {
            if !qboson::act_eprime(&qboson::e_t(l, t).unwrap()).is_zero() {
                out.entry("E_t is killed by e'")
                    .or_default()
                    .0
                    .push(format!("l={l}, t={t}"));
            }
            out.entry("E_t is killed by e'").or_default().1 += 1;
            for s in 0..=max_s {
                let tag = format!("l={l}, t={t}, s={s}");
                let mut record = |name: &'static str, ok: bool| {
                    let e = out.entry(name).or_default();
                    e.1 += 1;
                    if !ok {
                        e.0.push(tag.clone());
                    }
                };
                record("claim 1 congruence", qboson::claim1_holds(l, t, s));
                record("C(s,k) recursion", qboson::recursion_holds(l, t, s));
                record(
                    "C(s,k) is the coefficient of f^(s) E_t",
                    qboson::c_sk_matches_action(l, t, s),
                );
                if s > l - t {
                    record("claim 2 minimal degrees", qboson::claim2_holds(l, t, s));
                    record(
                        "C(s,0) closed form",
                        qboson::c_sk(l, t, s, 0) == qboson::c_s0_closed(l, t, s),
                    );
                }
            }
        }
    }
    out
}

fn boson_suite(max_l: usize, max_s: usize) -> Vec<Check> {
    let mut checks: Vec<Check> = boson_grid(max_l, max_s)
        .into_iter()
        .map(|(name, (bad, count))| Check::new(name, bad, count))
        .collect();
    for l in 0..=max_l {
        let r = qboson::boson_crystal_check(l, max_s);
        checks.push(Check::flag(
            &format!("boson tensor rule, l = {l}"),
            r.lattice_closed && r.rule_matches && r.kernel_basis,
            format!(
                "{} nodes; {}",
                r.nodes,
                r.failures.first().cloned().unwrap_or_default()
            ),
        ));
    }
    checks
}

// ---------------------------------------------------------------- examples

/// The (3,4) sample element and weight used throughout the examples.
pub fn sample_element() -> (BInfElt, Weight) {
    let s = OddSet::from_pairs(3, 4, &[(3, 5), (3, 7), (2, 4), (2, 5), (2, 6), (1, 6)]).unwrap();
    let plus =
        Lusztig::from_entries(Block::Plus, 3, 4, &[((2, 3), 2), ((1, 3), 1), ((1, 2), 2)]).unwrap();
    let minus = Lusztig::from_entries(
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
    .unwrap();
    (BInfElt { s, plus, minus }, vec![6, 4, 1, 3, 2, 0, -4])
}

fn examples_suite() -> Vec<Check> {
    let (b, lambda) = sample_element();
    let mut c = Vec::new();
    let f3 = binf_op(&b, 3, Dir::F);
    c.push(Check::flag(
        "f_3 adds -delta_3+delta_4, e_3 vanishes",
        f3.as_ref()
            .is_some_and(|x| x.s.contains(3, 4) && x.s.len() == 7)
            && binf_op(&b, 3, Dir::E).is_none(),
        String::new(),
    ));
    let f1 = binf_op(&b, 1, Dir::F).unwrap();
    c.push(Check::flag(
        "f_1 moves -delta_2+delta_4 to -delta_1+delta_4",
        f1.s.contains(1, 4) && !f1.s.contains(2, 4) && f1.plus == b.plus,
        String::new(),
    ));
    let f11 = binf_op(&f1, 1, Dir::F).unwrap();
    c.push(Check::flag(
        "f_1^2 raises c_12 to 3",
        f11.plus.get(1, 2) == 3 && f11.s == f1.s,
        String::new(),
    ));
    let f5 = binf_op(&b, 5, Dir::F).unwrap();
    c.push(Check::flag(
        "f_5 acts on b_- only",
        f5.s == b.s && f5.minus.get(4, 5) == 1 && f5.minus.get(4, 6) == 2,
        String::new(),
    ));
    let stars: Vec<i64> = (4..=6).map(|i| b.minus.eps_star(i)).collect();
    c.push(Check::flag(
        "eps*_4,5,6 of b_- are 1,2,1",
        stars == vec![1, 2, 1],
        format!("{stars:?}"),
    ));
    let x = XElt {
        lambda: lambda.clone(),
        s: b.s,
        plus: b.plus.clone(),
        minus: b.minus.clone(),
    };
    let xf5 = x_op(&x, 5, Dir::F).unwrap();
    c.push(Check::flag(
        "f_5 on the parabolic Verma element moves -delta_3+delta_5",
        xf5.s.contains(3, 6)
            && !xf5.s.contains(3, 5)
            && xf5.minus == b.minus
            && embed_dual(&xf5) != f5,
        String::new(),
    ));
    let k = KacElt {
        lambda: lambda.clone(),
        s: b.s,
        plus: b.plus.clone(),
        minus: b.minus.clone(),
    };
    let kf1 = kac_op(&k, 1, Dir::F);
    c.push(Check::flag(
        "f_1^2 vanishes on the Kac module element",
        k.is_well_formed() && kf1.is_some() && kf1.and_then(|x| kac_op(&x, 1, Dir::F)).is_none(),
        String::new(),
    ));
    c
}

// ---------------------------------------------------------------- parabolic Verma

/// Connectedness and projection checks for B(X(lambda)).
pub fn parabolic_checks(m: usize, n: usize, lambda: &[i64], cap: usize) -> Vec<Check> {
    let xc = XCrystal {
        m,
        n,
        lambda: lambda.to_vec(),
    };
    let all = XElt::all_up_to(m, n, lambda, cap);
    let top = XElt::highest(m, n, lambda.to_vec()).unwrap();
    let reach: HashSet<XElt> = crate::combicrystal::enumerate(&xc, vec![top], Some(3 * cap), true)
        .into_iter()
        .collect();
    let unreached: Vec<String> = all
        .iter()
        .filter(|b| !reach.contains(*b))
        .map(|b| format!("{b:?}"))
        .collect();
    let mut checks = vec![Check::new(
        "B(X(lambda)) is connected",
        unreached,
        all.len(),
    )];

    // Projection to the Kac module.
    let kac: Vec<KacElt> = KacCrystal {
        m,
        n,
        lambda: lambda.to_vec(),
    }
    .elements()
    .unwrap()
    .into_iter()
    .filter(|k| k.height() <= cap)
    .collect();
    let mut images = HashSet::new();
    let mut bad = Vec::new();
    for b in &all {
        let Some(p) = project_plus(b) else { continue };
        if p.weight() != b.weight() {
            bad.push(format!("weight of {b:?}"));
        }
        if !images.insert(p.clone()) {
            bad.push(format!("not injective at {b:?}"));
        }
        for i in 1..m + n {
            for dir in [Dir::F, Dir::E] {
                let lhs = x_op(b, i, dir).and_then(|x| project_plus(&x));
                if lhs != kac_op(&p, i, dir) {
                    bad.push(format!("{dir:?}_{i} on {b:?}"));
                }
            }
        }
    }
    let onto = kac.iter().all(|k| images.contains(k));
    if !onto {
        bad.push("projection misses Kac elements".into());
    }
    checks.push(Check::new(
        "projection onto B(K(lambda)) is a bijection commuting with operators",
        bad,
        all.len(),
    ));

    // Embedding into B(infinity).
    let mut bad = Vec::new();
    let mut seen = HashSet::new();
    for b in &all {
        let e = embed_dual(b);
        if !seen.insert(e.clone()) {
            bad.push(format!("not injective at {b:?}"));
        }
        for i in 1..m {
            for dir in [Dir::F, Dir::E] {
                if x_op(b, i, dir).map(|x| embed_dual(&x)) != binf_op(&e, i, dir) {
                    bad.push(format!("{dir:?}_{i} on {b:?}"));
                }
            }
        }
    }
    let image_ok = BInfElt::all_up_to(m, n, cap)
        .into_iter()
        .filter(|t| hw_member(&t.minus, lambda))
        .all(|t| seen.contains(&t));
    if !image_ok {
        bad.push("image misses a triple with b_- in B(lambda_-)".into());
    }
    checks.push(Check::new(
        "embedding into B(infinity) has the predicted image",
        bad,
        all.len(),
    ));

    // For lambda_- large the embedding also commutes for i > m.
    let mut big = lambda.to_vec();
    for (k, x) in big.iter_mut().enumerate().skip(m) {
        *x += (2 * cap * (m + n - k)) as i64;
    }
    let mut bad = Vec::new();
    let large = XElt::all_up_to(m, n, &big, cap);
    for b in &large {
        let e = embed_dual(b);
        for i in m + 1..m + n {
            for dir in [Dir::F, Dir::E] {
                if x_op(b, i, dir).map(|x| embed_dual(&x)) != binf_op(&e, i, dir) {
                    bad.push(format!("{dir:?}_{i} on {b:?}"));
                }
            }
        }
    }
    checks.push(Check::new(
        "embedding commutes for i > m when lambda_- is large",
        bad,
        large.len(),
    ));
    checks
}
