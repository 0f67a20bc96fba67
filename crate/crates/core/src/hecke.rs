//! The affine Hecke algebra in the basis `X^λ T_w`.
//!
//! Conventions: `q' = v^-2`, so the quadratic relation reads
//! `(T_i + 1)(T_i - q') = 0`. Elements are kept in normal form at all
//! times: a finite map from [`BasisKey`] to nonzero [`VScalar`]
//! coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::braid::{self, BraidError, BraidWord, Letter, Sign};
use crate::ring::{render_terms, VScalar};

pub mod polyrep;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("generator {gen} is out of bounds for n = {n}")]
    IndexOutOfBounds { gen: HeckeGen, n: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Braid(#[from] BraidError),
}

pub type HeckeResult<T> = Result<T, HeckeError>;

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((1..=n).collect())
    }

    /// Validates one-line notation.
    pub fn from_one_line(values: Vec<usize>) -> Option<Perm> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return None;
            }
        }
        Some(Perm(values))
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    fn position(&self, value: usize) -> usize {
        self.0.iter().position(|&v| v == value).expect("value in range")
    }

    /// `s_i ∘ w`: swaps the values `i` and `i+1`.
    pub fn left_mul(&self, i: usize) -> Perm {
        let mut out = self.0.clone();
        for v in &mut out {
            if *v == i {
                *v = i + 1;
            } else if *v == i + 1 {
                *v = i;
            }
        }
        Perm(out)
    }

    /// True when `ℓ(s_i w) < ℓ(w)`, i.e. `i+1` comes before `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.position(i + 1) < self.position(i)
    }

    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len()).map(|a| (a + 1..v.len()).filter(|&b| v[a] > v[b]).count()).sum()
    }

    /// The lexicographically smallest reduced word `[i1, ..., ik]` with
    /// `w = s_{i1} ... s_{ik}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = self.clone();
        while let Some(i) = (1..cur.0.len()).find(|&i| cur.has_left_descent(i)) {
            word.push(i);
            cur = cur.left_mul(i);
        }
        word
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

/// `X^λ T_w`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisKey {
    pub lambda: Vec<i32>,
    pub w: Perm,
}

impl BasisKey {
    pub fn unit(n: usize) -> BasisKey {
        BasisKey { lambda: vec![0; n], w: Perm::identity(n) }
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lam: Vec<String> = self.lambda.iter().map(|a| a.to_string()).collect();
        write!(f, "X^({}) T[{}]", lam.join(","), self.w)
    }
}

/// A single algebra generator, indices 1-based.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum HeckeGen {
    T(usize),
    TInv(usize),
    X(usize),
    XInv(usize),
}

impl HeckeGen {
    fn in_bounds(self, n: usize) -> bool {
        match self {
            HeckeGen::T(i) | HeckeGen::TInv(i) => i >= 1 && i < n,
            HeckeGen::X(j) | HeckeGen::XInv(j) => j >= 1 && j <= n,
        }
    }

    pub fn check(self, n: usize) -> HeckeResult<()> {
        if self.in_bounds(n) {
            Ok(())
        } else {
            Err(HeckeError::IndexOutOfBounds { gen: self, n })
        }
    }

    pub fn inverse(self) -> HeckeGen {
        match self {
            HeckeGen::T(i) => HeckeGen::TInv(i),
            HeckeGen::TInv(i) => HeckeGen::T(i),
            HeckeGen::X(j) => HeckeGen::XInv(j),
            HeckeGen::XInv(j) => HeckeGen::X(j),
        }
    }
}

impl fmt::Display for HeckeGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeGen::T(i) => write!(f, "T{i}"),
            HeckeGen::TInv(i) => write!(f, "T{i}'"),
            HeckeGen::X(j) => write!(f, "X{j}"),
            HeckeGen::XInv(j) => write!(f, "X{j}'"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<BasisKey, VScalar>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> HeckeElement {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> HeckeElement {
        HeckeElement::scalar(n, VScalar::one())
    }

    pub fn scalar(n: usize, c: VScalar) -> HeckeElement {
        HeckeElement::term(BasisKey::unit(n), c)
    }

    pub fn term(key: BasisKey, c: VScalar) -> HeckeElement {
        let mut e = HeckeElement::zero(key.rank());
        e.add_term(key, &c);
        e
    }

    pub fn generator(n: usize, g: HeckeGen) -> HeckeResult<HeckeElement> {
        g.check(n)?;
        Ok(match g {
            HeckeGen::T(i) => {
                HeckeElement::term(BasisKey { lambda: vec![0; n], w: Perm::identity(n).left_mul(i) }, VScalar::one())
            }
            HeckeGen::TInv(i) => t_inverse(i, n)?,
            HeckeGen::X(j) | HeckeGen::XInv(j) => {
                let mut lambda = vec![0; n];
                lambda[j - 1] = if matches!(g, HeckeGen::X(_)) { 1 } else { -1 };
                HeckeElement::term(BasisKey { lambda, w: Perm::identity(n) }, VScalar::one())
            }
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &VScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &BasisKey) -> VScalar {
        self.terms.get(key).cloned().unwrap_or_else(VScalar::zero)
    }

    pub fn add_term(&mut self, key: BasisKey, c: &VScalar) {
        debug_assert_eq!(key.rank(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &VScalar) -> HeckeElement {
        let mut out = HeckeElement::zero(self.n);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeResult<HeckeElement> {
        same_rank(self, other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeResult<HeckeElement> {
        self.add(&other.scale(&VScalar::constant(-1)))
    }

    pub fn pretty(&self) -> String {
        render_terms(self.terms.iter().map(|(k, c)| (k.to_string(), c)), true)
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.terms.iter().map(|(k, c)| (k.to_string(), c)), false))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement(n={}; {self})", self.n)
    }
}

fn same_rank(a: &HeckeElement, b: &HeckeElement) -> HeckeResult<()> {
    if a.n != b.n {
        return Err(HeckeError::RankMismatch { left: a.n, right: b.n });
    }
    Ok(())
}

fn qp() -> VScalar {
    VScalar::v_power(-2)
}

fn one_minus_qp() -> VScalar {
    &VScalar::one() - &qp()
}

/// One X-letter at position `i` or `i+1`.
#[derive(Copy, Clone, Debug)]
struct XLetter {
    upper: bool,
    inverse: bool,
}

/// `T_i ℓ = ℓ' T_i + c·x_{i+1}^a x_i^b` with `ℓ' = s_i(ℓ)`. Returns the
/// correction as `(coefficient, exponent at i, exponent at i+1)`.
fn push_letter(l: XLetter) -> (VScalar, i32, i32) {
    match (l.upper, l.inverse) {
        // T X_i = X_{i+1} T + (1-q') X_{i+1}
        (false, false) => (one_minus_qp(), 0, 1),
        // T X_{i+1} = X_i T + (q'-1) X_{i+1}
        (true, false) => (-one_minus_qp(), 0, 1),
        // T X_i^-1 = X_{i+1}^-1 T + (q'-1) X_i^-1
        (false, true) => (-one_minus_qp(), -1, 0),
        // T X_{i+1}^-1 = X_i^-1 T + (1-q') X_i^-1
        (true, true) => (one_minus_qp(), -1, 0),
    }
}

/// `T_i X^λ = X^{s_i λ} T_i + Σ c_μ X^μ`; returns the sum part as
/// `(μ, c)` pairs. The X-letters at positions `i, i+1` are pushed one at a
/// time, lower position first.
fn push_t(i: usize, lambda: &[i32]) -> Vec<(Vec<i32>, VScalar)> {
    let (a, b) = (lambda[i - 1], lambda[i]);
    let mut letters = Vec::new();
    letters.extend(std::iter::repeat(XLetter { upper: false, inverse: a < 0 }).take(a.unsigned_abs() as usize));
    letters.extend(std::iter::repeat(XLetter { upper: true, inverse: b < 0 }).take(b.unsigned_abs() as usize));

    // prefix: exponents at (i, i+1) of the already swapped letters.
    // suffix: exponents of the letters not yet pushed.
    let mut prefix = (0i32, 0i32);
    let mut suffix = (a, b);
    let mut out = Vec::new();
    for l in letters {
        let e = if l.inverse { -1 } else { 1 };
        if l.upper {
            suffix.1 -= e;
        } else {
            suffix.0 -= e;
        }
        let (c, ci, cj) = push_letter(l);
        let mut mu = lambda.to_vec();
        mu[i - 1] = prefix.0 + ci + suffix.0;
        mu[i] = prefix.1 + cj + suffix.1;
        out.push((mu, c));
        if l.upper {
            prefix.0 += e;
        } else {
            prefix.1 += e;
        }
    }
    out
}

/// `T_i T_w` in the `T` basis.
fn t_times_tw(i: usize, w: &Perm) -> Vec<(Perm, VScalar)> {
    let sw = w.left_mul(i);
    if w.has_left_descent(i) {
        vec![(w.clone(), &qp() - &VScalar::one()), (sw, qp())]
    } else {
        vec![(sw, VScalar::one())]
    }
}

fn mul_t_left(i: usize, e: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero(e.n);
    for (key, c) in &e.terms {
        let mut swapped = key.lambda.clone();
        swapped.swap(i - 1, i);
        for (w2, d) in t_times_tw(i, &key.w) {
            out.add_term(BasisKey { lambda: swapped.clone(), w: w2 }, &(c * &d));
        }
        for (mu, d) in push_t(i, &key.lambda) {
            out.add_term(BasisKey { lambda: mu, w: key.w.clone() }, &(c * &d));
        }
    }
    out
}

fn shift_lambda(e: &HeckeElement, delta: &[i32]) -> HeckeElement {
    let mut out = HeckeElement::zero(e.n);
    for (key, c) in &e.terms {
        let lambda = key.lambda.iter().zip(delta).map(|(a, d)| a + d).collect();
        out.add_term(BasisKey { lambda, w: key.w.clone() }, c);
    }
    out
}

/// `g · e` in normal form.
pub fn mul_gen_left(g: HeckeGen, e: &HeckeElement) -> HeckeResult<HeckeElement> {
    g.check(e.n)?;
    Ok(match g {
        HeckeGen::T(i) => mul_t_left(i, e),
        HeckeGen::TInv(i) => {
            // T^-1 = v^2 T + (v^2 - 1)
            let v2 = VScalar::v_power(2);
            let mut out = mul_t_left(i, e).scale(&v2);
            for (k, c) in &e.terms {
                out.add_term(k.clone(), &(c * &(&v2 - &VScalar::one())));
            }
            out
        }
        HeckeGen::X(j) | HeckeGen::XInv(j) => {
            let mut delta = vec![0; e.n];
            delta[j - 1] = if matches!(g, HeckeGen::X(_)) { 1 } else { -1 };
            shift_lambda(e, &delta)
        }
    })
}

/// `T_w · e`, pushing the letters of the canonical reduced word from the
/// right.
fn mul_tw_left(w: &Perm, e: &HeckeElement) -> HeckeElement {
    let mut acc = e.clone();
    for &i in w.reduced_word().iter().rev() {
        acc = mul_t_left(i, &acc);
    }
    acc
}

pub fn mul(a: &HeckeElement, b: &HeckeElement) -> HeckeResult<HeckeElement> {
    same_rank(a, b)?;
    let mut out = HeckeElement::zero(a.n);
    // group a's terms by w so each T_w push happens once
    let mut by_w: BTreeMap<&Perm, Vec<(&Vec<i32>, &VScalar)>> = BTreeMap::new();
    for (k, c) in &a.terms {
        by_w.entry(&k.w).or_default().push((&k.lambda, c));
    }
    for (w, lams) in by_w {
        let pushed = mul_tw_left(w, b);
        for (lambda, c) in lams {
            for (k, d) in &shift_lambda(&pushed, lambda).terms {
                out.add_term(k.clone(), &(c * d));
            }
        }
    }
    Ok(out)
}

/// `v^2 T_i + (v^2 - 1)`.
pub fn t_inverse(i: usize, n: usize) -> HeckeResult<HeckeElement> {
    let t = HeckeElement::generator(n, HeckeGen::T(i))?;
    let v2 = VScalar::v_power(2);
    Ok(t.scale(&v2).add(&HeckeElement::scalar(n, &v2 - &VScalar::one()))?)
}

/// Evaluates a product of generators, rightmost first.
pub fn eval_word(n: usize, gens: &[HeckeGen]) -> HeckeResult<HeckeElement> {
    let mut acc = HeckeElement::one(n);
    for &g in gens.iter().rev() {
        acc = mul_gen_left(g, &acc)?;
    }
    Ok(acc)
}

/// The generator images of a braid letter: `(scalar power of v, generator)`.
fn letter_image(l: Letter) -> HeckeResult<(i32, HeckeGen)> {
    Ok(match l {
        Letter::Sigma(i, Sign::Pos) => (1, HeckeGen::T(i)),
        Letter::Sigma(i, Sign::Neg) => (-1, HeckeGen::TInv(i)),
        Letter::Tau(j, Sign::Pos) => (0, HeckeGen::X(j)),
        Letter::Tau(j, Sign::Neg) => (0, HeckeGen::XInv(j)),
        Letter::Rho(_) => return Err(BraidError::VirtualLetter(l).into()),
    })
}

/// `σ_i ↦ v T_i`, `τ_j ↦ X_j` extended multiplicatively.
pub fn phi(w: &BraidWord) -> HeckeResult<HeckeElement> {
    let mut power = 0;
    let mut gens = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let (p, g) = letter_image(l)?;
        power += p;
        gens.push(g);
    }
    Ok(eval_word(w.strands(), &gens)?.scale(&VScalar::v_power(power)))
}

/// `(φ(σ_i) - v^-1)(φ(σ_i) + v)`, which vanishes.
pub fn quadratic_check(i: usize, n: usize) -> HeckeResult<HeckeElement> {
    let s = phi(&BraidWord::new(n, vec![Letter::sigma(i)])?)?;
    let left = s.sub(&HeckeElement::scalar(n, VScalar::v_power(-1)))?;
    let right = s.add(&HeckeElement::scalar(n, VScalar::v_power(1)))?;
    mul(&left, &right)
}

/// A generator word `n=<rank>; T1 T1' X2 X1'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeWord {
    pub n: usize,
    pub gens: Vec<HeckeGen>,
}

impl HeckeWord {
    pub fn eval(&self) -> HeckeResult<HeckeElement> {
        eval_word(self.n, &self.gens)
    }
}

impl FromStr for HeckeWord {
    type Err = HeckeError;

    fn from_str(text: &str) -> HeckeResult<HeckeWord> {
        let (n, body, offset) = braid::parse_header(text)?;
        let mut gens = Vec::new();
        for (pos, tok) in braid::tokens(body, offset) {
            let syntax = |msg: String| HeckeError::Syntax { pos, msg };
            let (head, rest) = tok.split_at(tok.chars().next().map_or(0, char::len_utf8));
            let (digits, inv) = match rest.strip_suffix('\'') {
                Some(d) => (d, true),
                None => (rest, false),
            };
            let idx: usize = digits
                .parse()
                .ok()
                .filter(|_| digits.bytes().all(|b| b.is_ascii_digit()))
                .ok_or_else(|| syntax(format!("malformed token `{tok}`")))?;
            let g = match (head, inv) {
                ("T", false) => HeckeGen::T(idx),
                ("T", true) => HeckeGen::TInv(idx),
                ("X", false) => HeckeGen::X(idx),
                ("X", true) => HeckeGen::XInv(idx),
                _ => return Err(syntax(format!("unknown generator in `{tok}`"))),
            };
            g.check(n)?;
            gens.push(g);
        }
        Ok(HeckeWord { n, gens })
    }
}

impl fmt::Display for HeckeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.n)?;
        for g in &self.gens {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}
