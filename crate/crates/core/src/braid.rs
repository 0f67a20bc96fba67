//! Words in the virtual braid group with double lines and its classical
//! subgroup.
//!
//! A [`BraidWord`] is purely syntactic: a strand count and a list of
//! [`Letter`]s. Letters act top to bottom, and the closure joins top
//! position `i` to bottom position `i`. Semantic equality is only ever
//! approached through [`rewrite_step`], the Markov moves in [`markov`] and
//! the invariants computed here.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub mod markov;
mod relations;

pub use relations::{rewrite_step, Direction, Relation, RelationInstance, RelationTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("letter {letter} is out of bounds for {n} strands")]
    IndexOutOfBounds { letter: Letter, n: usize },
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{relation:?} ({direction:?}) does not apply at position {position}")]
    NotApplicable { relation: Relation, position: usize, direction: Direction },
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("word contains the virtual letter {0}")]
    VirtualLetter(Letter),
}

pub type BraidResult<T> = Result<T, BraidError>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn from_value(v: i32) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Pos, Sign::Neg];
}

/// One generator or inverse generator. Indices are 1-based: `Sigma(i, _)`
/// and `Rho(i)` act on positions `i, i+1`; `Tau(j, _)` decorates position
/// `j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Sigma(usize, Sign),
    Rho(usize),
    Tau(usize, Sign),
}

impl Letter {
    pub fn sigma(i: usize) -> Letter {
        Letter::Sigma(i, Sign::Pos)
    }

    pub fn sigma_inv(i: usize) -> Letter {
        Letter::Sigma(i, Sign::Neg)
    }

    pub fn tau(j: usize) -> Letter {
        Letter::Tau(j, Sign::Pos)
    }

    pub fn tau_inv(j: usize) -> Letter {
        Letter::Tau(j, Sign::Neg)
    }

    pub fn rho(i: usize) -> Letter {
        Letter::Rho(i)
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::Sigma(i, s) => Letter::Sigma(i, s.flip()),
            Letter::Rho(i) => Letter::Rho(i),
            Letter::Tau(j, s) => Letter::Tau(j, s.flip()),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Letter::Sigma(i, _) | Letter::Rho(i) | Letter::Tau(i, _) => i,
        }
    }

    pub fn with_index(self, idx: usize) -> Letter {
        match self {
            Letter::Sigma(_, s) => Letter::Sigma(idx, s),
            Letter::Rho(_) => Letter::Rho(idx),
            Letter::Tau(_, s) => Letter::Tau(idx, s),
        }
    }

    /// Smallest strand count on which this letter is valid.
    pub fn min_strands(self) -> usize {
        match self {
            Letter::Sigma(i, _) | Letter::Rho(i) => i + 1,
            Letter::Tau(j, _) => j,
        }
    }

    pub fn is_virtual(self) -> bool {
        matches!(self, Letter::Rho(_))
    }

    /// Whether the letter involves strand position `p` (1-based).
    pub fn touches(self, p: usize) -> bool {
        match self {
            Letter::Sigma(i, _) | Letter::Rho(i) => p == i || p == i + 1,
            Letter::Tau(j, _) => p == j,
        }
    }

    fn in_bounds(self, n: usize) -> bool {
        self.index() >= 1 && self.min_strands() <= n
    }

    pub fn pretty(self) -> String {
        let sub = subscript(self.index());
        match self {
            Letter::Sigma(_, Sign::Pos) => format!("σ{sub}"),
            Letter::Sigma(_, Sign::Neg) => format!("σ{sub}⁻¹"),
            Letter::Rho(_) => format!("ρ{sub}"),
            Letter::Tau(_, Sign::Pos) => format!("τ{sub}"),
            Letter::Tau(_, Sign::Neg) => format!("τ{sub}⁻¹"),
        }
    }
}

fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::Sigma(i, Sign::Pos) => write!(f, "s{i}"),
            Letter::Sigma(i, Sign::Neg) => write!(f, "s{i}'"),
            Letter::Rho(i) => write!(f, "r{i}"),
            Letter::Tau(j, Sign::Pos) => write!(f, "t{j}"),
            Letter::Tau(j, Sign::Neg) => write!(f, "t{j}'"),
        }
    }
}

/// A word on `n` strands.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> BraidResult<BraidWord> {
        if n == 0 {
            return Err(BraidError::NoStrands);
        }
        if let Some(&letter) = letters.iter().find(|l| !l.in_bounds(n)) {
            return Err(BraidError::IndexOutOfBounds { letter, n });
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> BraidWord {
        assert!(n >= 1, "a braid needs at least one strand");
        BraidWord { n, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// No virtual crossings, i.e. the word lies in the classical group.
    pub fn is_classical(&self) -> bool {
        !self.letters.iter().any(|l| l.is_virtual())
    }

    pub fn ensure_classical(&self) -> BraidResult<()> {
        match self.letters.iter().find(|l| l.is_virtual()) {
            Some(&l) => Err(BraidError::VirtualLetter(l)),
            None => Ok(()),
        }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { n: self.n, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// `l_s^t`: adds `left` strands on the left and `right` on the right.
    pub fn embed(&self, left: usize, right: usize) -> BraidWord {
        BraidWord {
            n: self.n + left + right,
            letters: self.letters.iter().map(|l| l.with_index(l.index() + left)).collect(),
        }
    }

    pub fn pretty(&self) -> String {
        if self.letters.is_empty() {
            return format!("1 ∈ B{}", subscript(self.n));
        }
        self.letters.iter().map(|l| l.pretty()).collect::<Vec<_>>().join("")
    }

    pub(crate) fn from_parts_unchecked(n: usize, letters: Vec<Letter>) -> BraidWord {
        debug_assert!(n >= 1 && letters.iter().all(|l| l.in_bounds(n)));
        BraidWord { n, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.n)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord({self})")
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// Parses `n=<strands>; tok tok ...` with tokens `s<i>`, `s<i>'`,
    /// `t<j>`, `t<j>'` and `r<i>`.
    fn from_str(text: &str) -> BraidResult<BraidWord> {
        let (n, body, offset) = parse_header(text)?;
        let mut letters = Vec::new();
        for (pos, tok) in tokens(body, offset) {
            let letter = parse_letter(tok, pos)?;
            if !letter.in_bounds(n) {
                return Err(BraidError::IndexOutOfBounds { letter, n });
            }
            letters.push(letter);
        }
        BraidWord::new(n, letters)
    }
}

/// Splits `n=<int>;` off the front, returning the strand count, the rest of
/// the text and the byte offset of the rest.
pub(crate) fn parse_header(text: &str) -> BraidResult<(usize, &str, usize)> {
    let syntax = |pos: usize, msg: &str| BraidError::Syntax { pos, msg: msg.to_string() };
    let lead = text.len() - text.trim_start().len();
    let rest = &text[lead..];
    let Some(after) = rest.strip_prefix("n=") else {
        return Err(syntax(lead, "expected `n=<strands>;`"));
    };
    let semi = after.find(';').ok_or_else(|| syntax(text.len(), "missing `;` after strand count"))?;
    let num = after[..semi].trim();
    let n: usize = num.parse().map_err(|_| syntax(lead + 2, "strand count is not a non-negative integer"))?;
    if n == 0 {
        return Err(BraidError::NoStrands);
    }
    let body_start = lead + 2 + semi + 1;
    Ok((n, &text[body_start..], body_start))
}

/// Whitespace-separated tokens with their byte offsets in the original text.
pub(crate) fn tokens(body: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    body.split_whitespace().map(move |tok| {
        let pos = tok.as_ptr() as usize - body.as_ptr() as usize + offset;
        (pos, tok)
    })
}

fn parse_letter(tok: &str, pos: usize) -> BraidResult<Letter> {
    let syntax = |msg: String| BraidError::Syntax { pos, msg };
    let mut chars = tok.chars();
    let head = chars.next().ok_or_else(|| syntax("empty token".into()))?;
    let rest = chars.as_str();
    let (digits, inverse) = match rest.strip_suffix('\'') {
        Some(d) => (d, true),
        None => (rest, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(format!("malformed token `{tok}`")));
    }
    let idx: usize = digits.parse().map_err(|_| syntax(format!("index too large in `{tok}`")))?;
    if idx == 0 {
        return Err(syntax(format!("indices start at 1 in `{tok}`")));
    }
    let sign = if inverse { Sign::Neg } else { Sign::Pos };
    match head {
        's' => Ok(Letter::Sigma(idx, sign)),
        't' => Ok(Letter::Tau(idx, sign)),
        'r' if inverse => Err(syntax(format!("`{tok}`: virtual crossings are self-inverse and take no `'`"))),
        'r' => Ok(Letter::Rho(idx)),
        _ => Err(syntax(format!("unknown generator `{head}` in `{tok}`"))),
    }
}

/// Concatenation `a` then `b`.
pub fn compose(a: &BraidWord, b: &BraidWord) -> BraidResult<BraidWord> {
    if a.n != b.n {
        return Err(BraidError::StrandMismatch { left: a.n, right: b.n });
    }
    let mut letters = a.letters.clone();
    letters.extend_from_slice(&b.letters);
    Ok(BraidWord { n: a.n, letters })
}

/// Strand tracking: entry `p` (0-based) is the bottom position reached by
/// the strand that starts at top position `p`. `Sigma` and `Rho` swap
/// adjacent positions; `Tau` does not move strands.
pub fn underlying_permutation(w: &BraidWord) -> Vec<usize> {
    let mut at: Vec<usize> = (0..w.n).collect(); // at[pos] = starting strand
    for &l in &w.letters {
        if let Letter::Sigma(i, _) | Letter::Rho(i) = l {
            at.swap(i - 1, i);
        }
    }
    let mut perm = vec![0; w.n];
    for (pos, &strand) in at.iter().enumerate() {
        perm[strand] = pos;
    }
    perm
}

pub fn writhe(w: &BraidWord) -> i32 {
    w.letters
        .iter()
        .map(|l| match l {
            Letter::Sigma(_, s) => s.value(),
            _ => 0,
        })
        .sum()
}

/// Exponent sum of the `Tau` letters.
pub fn tau_exponent_sum(w: &BraidWord) -> i32 {
    w.letters
        .iter()
        .map(|l| match l {
            Letter::Tau(_, s) => s.value(),
            _ => 0,
        })
        .sum()
}

/// A component of the closure: the top positions (0-based, sorted) of its
/// strands and its winding number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosureComponent {
    pub positions: Vec<usize>,
    pub winding: i32,
}

/// Components of the closure, ordered by smallest top position.
pub fn closure_components(w: &BraidWord) -> Vec<ClosureComponent> {
    let n = w.n;
    let perm = underlying_permutation(w);
    let mut strand_winding = vec![0i32; n];
    let mut at: Vec<usize> = (0..n).collect();
    for &l in &w.letters {
        match l {
            Letter::Sigma(i, _) | Letter::Rho(i) => at.swap(i - 1, i),
            Letter::Tau(j, s) => strand_winding[at[j - 1]] += s.value(),
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut positions = Vec::new();
        let mut winding = 0;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            positions.push(p);
            winding += strand_winding[p];
            p = perm[p];
        }
        positions.sort_unstable();
        out.push(ClosureComponent { positions, winding });
    }
    out
}

/// Sorted component windings.
pub fn winding_multiset(w: &BraidWord) -> Vec<i32> {
    let mut ws: Vec<i32> = closure_components(w).into_iter().map(|c| c.winding).collect();
    ws.sort_unstable();
    ws
}
