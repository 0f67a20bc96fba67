//! Exact Laurent-polynomial scalars and the free commutative ring of
//! winding variables.
//!
//! Two scalar rings are used throughout the crate: [`QScalar`], Laurent
//! polynomials in `q^{1/4}` (exponents stored in quarter units), and
//! [`VScalar`], Laurent polynomials in `v`. They share one implementation,
//! [`Laurent`], parameterized by a zero-sized variable marker so the two
//! cannot be mixed by accident. [`SkeinValue`] is the polynomial ring over
//! `QScalar` in the variables `x1, x2, ...`.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Formatting hooks for a Laurent variable.
pub trait Variable: Copy + Clone + fmt::Debug + Default + Eq + Ord + Hash {
    /// Writes the power `var^exp` for a nonzero `exp`.
    fn write_power(f: &mut fmt::Formatter<'_>, exp: i32) -> fmt::Result;
    /// Unicode rendering of the power, used by `--pretty` output.
    fn pretty_power(exp: i32) -> String;
}

/// The variable `q^{1/4}`; exponent `k` stands for `q^{k/4}`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QRoot;

/// The variable `v` of the affine Hecke algebra.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VVar;

impl Variable for QRoot {
    fn write_power(f: &mut fmt::Formatter<'_>, exp: i32) -> fmt::Result {
        write!(f, "q^({exp}/4)")
    }

    fn pretty_power(exp: i32) -> String {
        let g = gcd(exp.unsigned_abs(), 4) as i32;
        let (num, den) = (exp / g, 4 / g);
        match (num, den) {
            (1, 1) => "q".to_string(),
            (_, 1) => format!("q^{num}"),
            _ => format!("q^{{{num}/{den}}}"),
        }
    }
}

impl Variable for VVar {
    fn write_power(f: &mut fmt::Formatter<'_>, exp: i32) -> fmt::Result {
        write!(f, "v^({exp})")
    }

    fn pretty_power(exp: i32) -> String {
        if exp == 1 {
            "v".to_string()
        } else {
            format!("v^{exp}")
        }
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// A Laurent polynomial with integer coefficients in a single variable.
///
/// Stored as a sorted map from exponent to coefficient; zero coefficients
/// are never stored, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Laurent<V: Variable> {
    terms: BTreeMap<i32, i64>,
    _var: PhantomData<V>,
}

pub type QScalar = Laurent<QRoot>;
pub type VScalar = Laurent<VVar>;

impl<V: Variable> Laurent<V> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), _var: PhantomData }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `coeff * var^exp`.
    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut s = Self::zero();
        if coeff != 0 {
            s.terms.insert(exp, coeff);
        }
        s
    }

    /// Builds a value from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut s = Self::zero();
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    /// Iterates `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
            _var: PhantomData,
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, &x)| (e, x * c)).collect(),
            _var: PhantomData,
        }
    }

    /// Substitutes `var -> var^m`.
    pub fn substitute_power(&self, m: i32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e * m, c)))
    }

    /// Non-negative integer power.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the divisor does not
    /// divide exactly over the integers.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (d_lead_exp, d_lead) = divisor.terms.iter().next_back().map(|(&e, &c)| (e, c))?;
        let d_low = divisor.min_exp()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((r_exp, r_coeff)) = rem.terms.iter().next_back().map(|(&e, &c)| (e, c)) {
            // The remainder must stay inside the span that multiples of the
            // divisor can reach from the dividend's lowest exponent.
            if r_exp - d_lead_exp + d_low < self.min_exp()? {
                return None;
            }
            if r_coeff % d_lead != 0 {
                return None;
            }
            let q = Self::monomial(r_coeff / d_lead, r_exp - d_lead_exp);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Some(quot)
    }

    /// Reduces every exponent into `[0, modulus)` and recombines, i.e. works
    /// in the quotient by `1 - var^modulus`.
    pub fn reduce_exponents(&self, modulus: i32) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self::from_terms(self.terms().map(|(e, c)| (e.rem_euclid(modulus), c)))
    }

    /// Unicode rendering such as `-q^{1/2} - q^{-1/2}`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if idx == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            match (e, mag) {
                (0, m) => out.push_str(&m.to_string()),
                (e, 1) => out.push_str(&V::pretty_power(e)),
                (e, m) => out.push_str(&format!("{m}{}", V::pretty_power(e))),
            }
        }
        out
    }
}

impl<V: Variable> fmt::Display for Laurent<V> {
    /// Canonical text: `c*var^(e)` terms in increasing exponent order joined
    /// by ` + `; the constant term is printed as a bare integer.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*")?;
                V::write_power(f, e)?;
            }
        }
        Ok(())
    }
}

impl<V: Variable> fmt::Debug for Laurent<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a, V: Variable> Add<&'a Laurent<V>> for &'a Laurent<V> {
    type Output = Laurent<V>;
    fn add(self, rhs: &'a Laurent<V>) -> Laurent<V> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<V: Variable> Add for Laurent<V> {
    type Output = Laurent<V>;
    fn add(mut self, rhs: Laurent<V>) -> Laurent<V> {
        self += &rhs;
        self
    }
}

impl<'a, V: Variable> AddAssign<&'a Laurent<V>> for Laurent<V> {
    fn add_assign(&mut self, rhs: &'a Laurent<V>) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl<'a, V: Variable> Sub<&'a Laurent<V>> for &'a Laurent<V> {
    type Output = Laurent<V>;
    fn sub(self, rhs: &'a Laurent<V>) -> Laurent<V> {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl<V: Variable> Sub for Laurent<V> {
    type Output = Laurent<V>;
    fn sub(self, rhs: Laurent<V>) -> Laurent<V> {
        &self - &rhs
    }
}

impl<V: Variable> Neg for &Laurent<V> {
    type Output = Laurent<V>;
    fn neg(self) -> Laurent<V> {
        self.scale(-1)
    }
}

impl<V: Variable> Neg for Laurent<V> {
    type Output = Laurent<V>;
    fn neg(self) -> Laurent<V> {
        self.scale(-1)
    }
}

impl<'a, V: Variable> Mul<&'a Laurent<V>> for &'a Laurent<V> {
    type Output = Laurent<V>;
    fn mul(self, rhs: &'a Laurent<V>) -> Laurent<V> {
        let mut out = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl<V: Variable> Mul for Laurent<V> {
    type Output = Laurent<V>;
    fn mul(self, rhs: Laurent<V>) -> Laurent<V> {
        &self * &rhs
    }
}

impl QScalar {
    /// `q^{k/4}`.
    pub fn q_quarter(k: i32) -> Self {
        Self::monomial(1, k)
    }

    /// The loop value `-q^{1/2} - q^{-1/2}`.
    pub fn delta() -> Self {
        Self::from_terms([(-2, -1), (2, -1)])
    }

    /// `(-q^{k/4})^m` for any integer `m`.
    pub fn neg_q_power(k: i32, m: i32) -> Self {
        let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(sign, k * m)
    }
}

impl VScalar {
    /// `v^m`.
    pub fn v_power(m: i32) -> Self {
        Self::monomial(1, m)
    }
}

/// Substitutes `v = q^{-1/2}`: `v^m` becomes `q^{-2m/4}`.
pub fn v_to_q(a: &VScalar) -> QScalar {
    QScalar::from_terms(a.terms().map(|(m, c)| (-2 * m, c)))
}

/// Exponent vector over `x1, x2, ...`; index 0 holds the exponent of `x1`.
/// Trailing zeros are never stored.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// `x_k^e` with `k >= 1`.
    pub fn var(k: usize, e: u32) -> Self {
        assert!(k >= 1, "winding variables are indexed from 1");
        let mut v = vec![0; k];
        v[k - 1] = e;
        Monomial::from_exponents(v)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    /// Exponent of `x_k`.
    pub fn exponent(&self, k: usize) -> u32 {
        if k == 0 {
            return 0;
        }
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    /// `(k, e)` pairs with nonzero exponent `e` of `x_k`.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i + 1, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest `k` with `x_k` present.
    pub fn max_index(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        let exps = (0..len)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
            .collect();
        Monomial::from_exponents(exps)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (idx, (k, e)) in self.factors().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{k}")?;
            } else {
                write!(f, "x{k}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Element of the free commutative ring over [`QScalar`] in `x1, x2, ...`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SkeinValue {
    terms: BTreeMap<Monomial, QScalar>,
}

impl SkeinValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(QScalar::one())
    }

    pub fn scalar(c: QScalar) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: QScalar) -> Self {
        let mut s = Self::zero();
        s.add_term(m, &c);
        s
    }

    /// The variable `x_k`.
    pub fn var(k: usize) -> Self {
        Self::term(Monomial::var(k, 1), QScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Largest variable index that occurs.
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(Monomial::max_index).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero();
        for (m, x) in self.terms() {
            out.add_term(m.clone(), &(x * c));
        }
        out
    }

    pub fn pretty(&self) -> String {
        render_terms(self.terms().map(|(m, c)| (m.to_string(), c)), true)
    }
}

/// Disjoint-union product: bilinear, exponent vectors add.
pub fn skein_mul(a: &SkeinValue, b: &SkeinValue) -> SkeinValue {
    let mut out = SkeinValue::zero();
    for (m1, c1) in a.terms() {
        for (m2, c2) in b.terms() {
            out.add_term(m1.mul(m2), &(c1 * c2));
        }
    }
    out
}

impl<'a> Add<&'a SkeinValue> for &'a SkeinValue {
    type Output = SkeinValue;
    fn add(self, rhs: &'a SkeinValue) -> SkeinValue {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Mul<&'a SkeinValue> for &'a SkeinValue {
    type Output = SkeinValue;
    fn mul(self, rhs: &'a SkeinValue) -> SkeinValue {
        skein_mul(self, rhs)
    }
}

impl fmt::Display for SkeinValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.terms().map(|(m, c)| (m.to_string(), c)), false))
    }
}

impl fmt::Debug for SkeinValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders `sum coeff*basis` where the basis string `"1"` marks the unit.
pub(crate) fn render_terms<'a, V, I>(terms: I, pretty: bool) -> String
where
    V: Variable + 'a,
    I: Iterator<Item = (String, &'a Laurent<V>)>,
{
    let mut parts = Vec::new();
    for (basis, c) in terms {
        let coeff = if pretty { c.pretty() } else { c.to_string() };
        let part = if basis == "1" {
            coeff
        } else if c.is_one() {
            basis
        } else if c.len() == 1 {
            format!("{coeff}*{basis}")
        } else {
            format!("({coeff})*{basis}")
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}
