//! Exact arithmetic in the rational function field Q(q).
//!
//! Every [`QRat`] is kept in lowest terms: numerator and denominator are
//! integer polynomials with no common factor (integer content included) and
//! the denominator has a positive leading coefficient. Two values are equal
//! exactly when their stored forms are equal.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Dense integer polynomial in q; index is the degree. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(v: BigInt) -> Self {
        let mut p = Poly { c: vec![v] };
        p.trim();
        p
    }

    pub fn monomial(coeff: BigInt, deg: usize) -> Self {
        if coeff.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); deg + 1];
        c[deg] = coeff;
        Poly { c }
    }

    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        let mut p = Poly { c };
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn lead(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.c.get(d).cloned().unwrap_or_default()
    }

    fn is_monomial(&self) -> bool {
        self.c.iter().filter(|x| !x.is_zero()).count() == 1
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_scalar(&self, s: &BigInt) -> Poly {
        Poly {
            c: self.c.iter().map(|x| x / s).collect(),
        }
    }

    fn mul_scalar(&self, s: &BigInt) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    fn shift_down(&self, k: usize) -> Poly {
        Poly {
            c: self.c[k.min(self.c.len())..].to_vec(),
        }
    }

    fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => c.push(a + b),
                (Some(a), None) => c.push(a.clone()),
                (None, Some(b)) => c.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Poly::from_coeffs(c)
    }

    fn neg(&self) -> Poly {
        Poly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(c)
    }

    /// Exact quotient; the caller guarantees `d` divides `self` in Z[q].
    fn div_exact(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        if dd == 0 {
            return self.div_scalar(&d.c[0]);
        }
        let mut r = self.c.clone();
        let Some(n) = self.degree() else {
            return Poly::zero();
        };
        assert!(n >= dd, "inexact polynomial division");
        let mut qv = vec![BigInt::zero(); n - dd + 1];
        let lc = d.lead();
        for k in (0..=n - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(&lc);
            debug_assert!(rem.is_zero(), "inexact polynomial division");
            for (j, dc) in d.c.iter().enumerate() {
                r[k + j] -= &qk * dc;
            }
            qv[k] = qk;
        }
        debug_assert!(r.iter().all(|x| x.is_zero()), "inexact polynomial division");
        Poly::from_coeffs(qv)
    }

    /// Pseudo-remainder of `self` by `d`.
    fn prem(&self, d: &Poly) -> Poly {
        let dd = d.degree().unwrap();
        let mut r = self.clone();
        let lc = d.lead();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.lead();
            let shifted = d.shift_up(rd - dd).mul_scalar(&top);
            r = r.mul_scalar(&lc).sub(&shifted);
        }
        r
    }

    fn primitive(&self) -> Poly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            self.clone()
        } else {
            self.div_scalar(&c)
        }
    }

    /// Greatest common divisor in Z[q] with positive leading coefficient.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.normalized_sign();
        }
        if o.is_zero() {
            return self.normalized_sign();
        }
        let va = self.low_degree().unwrap();
        let vb = o.low_degree().unwrap();
        let a = self.shift_down(va);
        let b = o.shift_down(vb);
        let cg = a.content().gcd(&b.content());
        let mut g = if a.degree() == Some(0) || b.degree() == Some(0) {
            Poly::constant(BigInt::one())
        } else if a == b {
            a.primitive()
        } else {
            let (mut x, mut y) = (a.primitive(), b.primitive());
            if x.degree() < y.degree() {
                std::mem::swap(&mut x, &mut y);
            }
            while !y.is_zero() {
                let r = x.prem(&y);
                x = y;
                y = r.primitive();
                if y.degree() == Some(0) {
                    x = Poly::constant(BigInt::one());
                    break;
                }
            }
            x.primitive()
        };
        g = g.mul_scalar(&cg).shift_up(va.min(vb));
        g.normalized_sign()
    }

    fn normalized_sign(&self) -> Poly {
        if self.lead().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn coeff_sum(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |acc, x| acc + x)
    }
}

/// Element of Q(q) in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: Poly,
    den: Poly,
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl QRat {
    fn from_parts(num: Poly, den: Poly) -> QRat {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QRat::zero();
        }
        // Cheap path: monomial denominators only cost an integer gcd.
        let g = if den.is_monomial() && num.is_monomial() {
            let vn = num.low_degree().unwrap();
            let vd = den.low_degree().unwrap();
            let cg = num.coeff(vn).gcd(&den.coeff(vd));
            Poly::monomial(cg, vn.min(vd))
        } else {
            num.gcd(&den)
        };
        let (mut n, mut d) = if g.degree() == Some(0) && g.c[0].is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if d.lead().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        QRat { num: n, den: d }
    }

    pub fn zero() -> QRat {
        QRat {
            num: Poly::zero(),
            den: Poly::constant(BigInt::one()),
        }
    }

    pub fn one() -> QRat {
        QRat::from_int(1)
    }

    pub fn from_int(v: i64) -> QRat {
        QRat::from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(v: BigInt) -> QRat {
        QRat {
            num: Poly::constant(v),
            den: Poly::constant(BigInt::one()),
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> QRat {
        QRat::from_parts(
            Poly::constant(BigInt::from(n)),
            Poly::constant(BigInt::from(d)),
        )
    }

    /// q itself.
    pub fn q() -> QRat {
        QRat::q_pow(1)
    }

    /// q^e for any integer e.
    pub fn q_pow(e: i64) -> QRat {
        QRat::monomial(BigInt::one(), e)
    }

    /// c * q^e.
    pub fn monomial(c: BigInt, e: i64) -> QRat {
        if c.is_zero() {
            return QRat::zero();
        }
        if e >= 0 {
            QRat {
                num: Poly::monomial(c, e as usize),
                den: Poly::constant(BigInt::one()),
            }
        } else {
            QRat {
                num: Poly::constant(c),
                den: Poly::monomial(BigInt::one(), (-e) as usize),
            }
        }
    }

    /// Builds a Laurent polynomial from (coefficient, exponent) pairs.
    pub fn laurent(terms: &[(i64, i64)]) -> QRat {
        terms.iter().fold(QRat::zero(), |acc, &(c, e)| {
            acc + QRat::monomial(BigInt::from(c), e)
        })
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn inv(&self) -> QRat {
        assert!(!self.is_zero(), "inverse of zero");
        QRat::from_parts(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> QRat {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = QRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// The bar involution q -> q^{-1}.
    pub fn bar(&self) -> QRat {
        if self.is_zero() {
            return QRat::zero();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let rev = |p: &Poly, d: usize| Poly::from_coeffs((0..=d).map(|k| p.coeff(d - k)).collect());
        let mut n = rev(&self.num, dn);
        let mut d = rev(&self.den, dd);
        match dn.cmp(&dd) {
            Ordering::Greater => d = d.shift_up(dn - dd),
            Ordering::Less => n = n.shift_up(dd - dn),
            Ordering::Equal => {}
        }
        QRat::from_parts(n, d)
    }

    /// Order of vanishing at q = 0; negative for a pole. `None` for zero.
    pub fn min_degree(&self) -> Option<i64> {
        let vn = self.num.low_degree()? as i64;
        let vd = self.den.low_degree().unwrap() as i64;
        Some(vn - vd)
    }

    /// True when the value lies in the local ring at q = 0.
    pub fn is_regular_at_zero(&self) -> bool {
        self.min_degree().is_none_or(|v| v >= 0)
    }

    /// Value at q = 0. Panics if there is a pole there.
    pub fn eval_at_zero(&self) -> BigRational {
        assert!(self.is_regular_at_zero(), "pole at q = 0");
        BigRational::new(self.num.coeff(0), self.den.coeff(0))
    }

    pub fn is_regular_at_inf(&self) -> bool {
        self.is_zero() || self.num.degree() <= self.den.degree()
    }

    /// Value at q = infinity. Panics if there is a pole there.
    pub fn eval_at_inf(&self) -> BigRational {
        assert!(self.is_regular_at_inf(), "pole at q = infinity");
        if self.is_zero() || self.num.degree() < self.den.degree() {
            BigRational::zero()
        } else {
            BigRational::new(self.num.lead(), self.den.lead())
        }
    }

    /// Evaluates at q = 1 when defined (used for sanity checks only).
    pub fn eval_at_one(&self) -> Option<BigRational> {
        let d = self.den.coeff_sum();
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(self.num.coeff_sum(), d))
    }

    /// Laurent coefficients (exponent, coefficient) when the denominator is c*q^k.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, BigRational)>> {
        if !self.den.is_monomial() {
            return None;
        }
        let vd = self.den.low_degree().unwrap() as i64;
        let dc = self.den.lead();
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 - vd, BigRational::new(c.clone(), dc.clone())))
                .collect(),
        )
    }
}

/// Quantum integer [a] = (q^a - q^-a)/(q - q^-1).
pub fn q_int(a: i64) -> QRat {
    if a == 0 {
        return QRat::zero();
    }
    let s = a.signum();
    let n = a.abs();
    let mut c = vec![BigInt::zero(); (2 * n - 1) as usize];
    for k in 0..n {
        c[(2 * k) as usize] = BigInt::from(s);
    }
    QRat::from_parts(
        Poly::from_coeffs(c),
        Poly::monomial(BigInt::one(), (n - 1) as usize),
    )
}

/// [n]! for n >= 0.
pub fn q_factorial(n: i64) -> QRat {
    assert!(n >= 0, "factorial of a negative integer");
    (1..=n).fold(QRat::one(), |acc, k| acc * q_int(k))
}

/// Quantum binomial; zero unless c >= d >= 0.
pub fn q_binom(c: i64, d: i64) -> QRat {
    if d < 0 || c < d {
        return QRat::zero();
    }
    let d = d.min(c - d);
    let mut num = QRat::one();
    let mut den = QRat::one();
    for k in 1..=d {
        num = num * q_int(c - d + k);
        den = den * q_int(k);
    }
    num / den
}

/// Left-hand side of the quantum binomial identity
/// sum_i q^{(a-1)(b-i)} C_i [a, b-i] with C_i = prod_{k=i+1}^{b} (q^{2k} - 1).
/// It equals q^{2ab} for all a, b >= 0.
pub fn akito_sum(a: i64, b: i64) -> QRat {
    assert!(a >= 0 && b >= 0);
    let mut total = QRat::zero();
    for i in (b - a).max(0)..=b {
        let mut ci = QRat::one();
        for k in i + 1..=b {
            ci = ci * (QRat::q_pow(2 * k) - QRat::one());
        }
        total += QRat::q_pow((a - 1) * (b - i)) * ci * q_binom(a, b - i);
    }
    total
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() && !c.is_negative() {
            out.push('+');
        }
        out.push_str(&format!("{c}*q^{i}"));
    }
    out
}

impl fmt::Display for QRat {
    /// Canonical form `(c*q^e+...)/(c*q^e+...)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", fmt_poly(&self.num), fmt_poly(&self.den))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseQRatError {
    #[error("malformed rational function: {0}")]
    Malformed(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

fn parse_poly(s: &str) -> Result<Poly, ParseQRatError> {
    let s = s.trim();
    let bad = || ParseQRatError::Malformed(s.to_string());
    if s == "0" {
        return Ok(Poly::zero());
    }
    let mut terms: Vec<&str> = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > start {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let mut acc = Poly::zero();
    for t in terms {
        let t = t.trim().trim_start_matches('+');
        let (c, e) = t.split_once("*q^").ok_or_else(bad)?;
        let c: BigInt = c.trim().parse().map_err(|_| bad())?;
        let e: usize = e.trim().parse().map_err(|_| bad())?;
        acc = acc.add(&Poly::monomial(c, e));
    }
    Ok(acc)
}

impl FromStr for QRat {
    type Err = ParseQRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseQRatError::Malformed(s.to_string());
        let s = s.trim();
        let (a, b) = s.split_once(")/(").ok_or_else(bad)?;
        let a = a.strip_prefix('(').ok_or_else(bad)?;
        let b = b.strip_suffix(')').ok_or_else(bad)?;
        let num = parse_poly(a)?;
        let den = parse_poly(b)?;
        if den.is_zero() {
            return Err(ParseQRatError::ZeroDenominator);
        }
        Ok(QRat::from_parts(num, den))
    }
}

impl serde::Serialize for QRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QRat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn add(self, o: &QRat) -> QRat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return QRat::from_parts(self.num.add(&o.num), self.den.clone());
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        QRat::from_parts(n, self.den.mul(&o.den))
    }
}

impl<'a> Mul<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn mul(self, o: &QRat) -> QRat {
        if self.is_zero() || o.is_zero() {
            return QRat::zero();
        }
        QRat::from_parts(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl<'a> Sub<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn sub(self, o: &QRat) -> QRat {
        self + &(-o)
    }
}

impl<'a> Div<&'a QRat> for &'a QRat {
    type Output = QRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QRat) -> QRat {
        self * &o.inv()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<QRat> for QRat {
            type Output = QRat;
            fn $m(self, o: QRat) -> QRat {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QRat> for QRat {
            type Output = QRat;
            fn $m(self, o: &QRat) -> QRat {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<QRat> for &'a QRat {
            type Output = QRat;
            fn $m(self, o: QRat) -> QRat {
                self.$m(&o)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&QRat> for QRat {
    fn add_assign(&mut self, o: &QRat) {
        *self = &*self + o;
    }
}

impl AddAssign<QRat> for QRat {
    fn add_assign(&mut self, o: QRat) {
        *self = &*self + &o;
    }
}

impl SubAssign<&QRat> for QRat {
    fn sub_assign(&mut self, o: &QRat) {
        *self = &*self - o;
    }
}

impl MulAssign<&QRat> for QRat {
    fn mul_assign(&mut self, o: &QRat) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(q_int(3), QRat::laurent(&[(1, 2), (1, 0), (1, -2)]));
        assert_eq!(q_int(-2), QRat::laurent(&[(-1, 1), (-1, -1)]));
        let direct = (QRat::q_pow(5) - QRat::q_pow(-5)) / (QRat::q() - QRat::q_pow(-1));
        assert_eq!(q_int(5), direct);
    }

    #[test]
    fn binomials() {
        assert_eq!(
            q_binom(4, 2),
            QRat::laurent(&[(1, 4), (1, 2), (2, 0), (1, -2), (1, -4)])
        );
        assert!(q_binom(2, 3).is_zero());
        assert!(q_binom(3, -1).is_zero());
        assert_eq!(q_binom(7, 0), QRat::one());
    }

    #[test]
    fn lowest_terms_are_canonical() {
        let a = (QRat::q_pow(2) - QRat::one()) / (QRat::q() - QRat::one());
        assert_eq!(a, QRat::q() + QRat::one());
        let b = QRat::from_int(6) / (QRat::from_int(4) * QRat::q() + QRat::from_int(2));
        assert_eq!(b.to_string(), "(3*q^0)/(1*q^0+2*q^1)");
        let c = QRat::from_int(-1) / (QRat::from_int(-2) * QRat::q());
        assert_eq!(c, QRat::from_ratio(1, 2) * QRat::q_pow(-1));
    }

    #[test]
    fn local_behaviour() {
        let x = QRat::q() / (QRat::one() - QRat::q_pow(2));
        assert_eq!(x.min_degree(), Some(1));
        assert_eq!(x.eval_at_zero(), br(0, 1));
        assert!(x.is_regular_at_inf());
        assert_eq!(x.bar().min_degree(), Some(1));
        let y =
            (QRat::q() + QRat::from_int(3)) / (QRat::from_int(2) * QRat::q_pow(1) + QRat::one());
        assert_eq!(y.eval_at_zero(), br(3, 1));
        assert_eq!(y.eval_at_inf(), br(1, 2));
        assert!(!QRat::q_pow(-1).is_regular_at_zero());
        assert!(QRat::zero().is_regular_at_zero());
    }

    #[test]
    fn bar_is_involution() {
        let x = (QRat::q_pow(3) + QRat::from_int(2)) / (QRat::q_pow(-1) - QRat::from_int(5));
        assert_eq!(x.bar().bar(), x);
        assert_eq!(q_int(4).bar(), q_int(4));
    }

    #[test]
    fn akito_small_cases() {
        assert_eq!(akito_sum(0, 0), QRat::one());
        assert_eq!(akito_sum(0, 3), QRat::one());
        assert_eq!(akito_sum(3, 0), QRat::one());
        assert_eq!(akito_sum(2, 3), QRat::q_pow(12));
    }

    #[test]
    fn string_round_trip() {
        let x = (QRat::q_pow(3) - QRat::from_int(2)) / (QRat::q_pow(-4) + QRat::from_int(7));
        let s = x.to_string();
        assert_eq!(s.parse::<QRat>().unwrap(), x);
        assert_eq!("(0)/(1*q^0)".parse::<QRat>().unwrap(), QRat::zero());
        assert!("(1*q^0)/(0)".parse::<QRat>().is_err());
        assert!("q+1".parse::<QRat>().is_err());
    }
}
