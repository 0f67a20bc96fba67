//! dl-Markov moves and bounded search over them.
//!
//! Moves come in four families: relation rewrites and trivial insertions
//! (type 0), conjugation (type 1), stabilization (type 2) and the left and
//! right virtual exchange (type 3). Every move in the enumerated move set
//! has an inverse in the same set, so bounded neighborhoods are symmetric.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::{BraidError, BraidResult, BraidWord, Direction, Letter, Relation, RelationTable, Sign};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StabKind {
    Positive,
    Negative,
    Virtual,
}

impl StabKind {
    fn letter(self, i: usize) -> Letter {
        match self {
            StabKind::Positive => Letter::Sigma(i, Sign::Pos),
            StabKind::Negative => Letter::Sigma(i, Sign::Neg),
            StabKind::Virtual => Letter::Rho(i),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MarkovMove {
    /// Type 0: one relation rewrite.
    Rewrite { relation: Relation, position: usize, direction: Direction },
    /// Type 0: inserts `g g^-1` (or `r r`) before `position`.
    Insert { position: usize, letter: Letter },
    /// Type 1: `w -> c^-1 w c`.
    Conjugate(BraidWord),
    /// Type 1, inverse form: `c^-1 u c -> u`.
    Unconjugate(BraidWord),
    /// Type 1: conjugation by the first letter (`Left`, moves it to the end)
    /// or by the inverse of the last letter (`Right`, moves it to the front).
    Rotate(Side),
    /// Type 2: `w -> l_0^1(w) g_n`.
    Stabilize(StabKind),
    /// Type 2: drops a final `s_n^{+-1}` or `r_n` whose last strand is free.
    Destabilize,
    /// Type 3: swaps the `s_1^-1 ... s_1` and `r_1 ... r_1` patterns around
    /// the leftmost strand, or the `s_{n-1}` patterns around the rightmost.
    Exchange(Side),
}

impl MarkovMove {
    /// Move family, 0 to 3.
    pub fn family(&self) -> u8 {
        match self {
            MarkovMove::Rewrite { .. } | MarkovMove::Insert { .. } => 0,
            MarkovMove::Conjugate(_) | MarkovMove::Unconjugate(_) | MarkovMove::Rotate(_) => 1,
            MarkovMove::Stabilize(_) | MarkovMove::Destabilize => 2,
            MarkovMove::Exchange(_) => 3,
        }
    }
}

impl fmt::Display for MarkovMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkovMove::Rewrite { relation, position, direction } => {
                write!(f, "M0 rewrite {relation:?} at {position} {}", dir_name(*direction))
            }
            MarkovMove::Insert { position, letter } => write!(f, "M0 insert {letter} {} at {position}", letter.inverse()),
            MarkovMove::Conjugate(c) => write!(f, "M1 conjugate by [{c}]"),
            MarkovMove::Unconjugate(c) => write!(f, "M1 unconjugate by [{c}]"),
            MarkovMove::Rotate(side) => write!(f, "M1 rotate {}", side_name(*side)),
            MarkovMove::Stabilize(kind) => write!(f, "M2 stabilize {}", format!("{kind:?}").to_lowercase()),
            MarkovMove::Destabilize => write!(f, "M2 destabilize"),
            MarkovMove::Exchange(side) => write!(f, "M3 exchange {}", side_name(*side)),
        }
    }
}

fn dir_name(d: Direction) -> &'static str {
    match d {
        Direction::Forward => "forward",
        Direction::Backward => "backward",
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn not_applicable(msg: impl Into<String>) -> BraidError {
    BraidError::MoveNotApplicable(msg.into())
}

pub fn apply_markov(w: &BraidWord, m: &MarkovMove) -> BraidResult<BraidWord> {
    let n = w.strands();
    let letters = w.letters();
    match m {
        MarkovMove::Rewrite { relation, position, direction } => {
            super::rewrite_step(w, *relation, *position, *direction)
        }
        MarkovMove::Insert { position, letter } => {
            if *position > letters.len() {
                return Err(not_applicable(format!("insert position {position} beyond word length {}", letters.len())));
            }
            let mut out = letters.to_vec();
            out.splice(position..position, [*letter, letter.inverse()]);
            BraidWord::new(n, out)
        }
        MarkovMove::Conjugate(c) => {
            check_strands(w, c)?;
            let mut out = c.inverse().letters().to_vec();
            out.extend_from_slice(letters);
            out.extend_from_slice(c.letters());
            Ok(BraidWord::from_parts_unchecked(n, out))
        }
        MarkovMove::Unconjugate(c) => {
            check_strands(w, c)?;
            let head = c.inverse();
            let k = c.len();
            if letters.len() < 2 * k || !letters.starts_with(head.letters()) || !letters.ends_with(c.letters()) {
                return Err(not_applicable(format!("word is not of the form c^-1 u c for c = [{c}]")));
            }
            Ok(BraidWord::from_parts_unchecked(n, letters[k..letters.len() - k].to_vec()))
        }
        MarkovMove::Rotate(side) => {
            if letters.is_empty() {
                return Err(not_applicable("cannot rotate the empty word"));
            }
            let mut out = letters.to_vec();
            match side {
                Side::Left => out.rotate_left(1),
                Side::Right => out.rotate_right(1),
            }
            Ok(BraidWord::from_parts_unchecked(n, out))
        }
        MarkovMove::Stabilize(kind) => {
            let mut out = letters.to_vec();
            out.push(kind.letter(n));
            Ok(BraidWord::from_parts_unchecked(n + 1, out))
        }
        MarkovMove::Destabilize => destabilize(w),
        MarkovMove::Exchange(side) => exchange(w, *side),
    }
}

fn check_strands(w: &BraidWord, c: &BraidWord) -> BraidResult<()> {
    if w.strands() != c.strands() {
        return Err(BraidError::StrandMismatch { left: w.strands(), right: c.strands() });
    }
    Ok(())
}

fn destabilize(w: &BraidWord) -> BraidResult<BraidWord> {
    let n = w.strands();
    let letters = w.letters();
    if n < 2 {
        return Err(not_applicable("destabilization needs at least two strands"));
    }
    let last = *letters.last().ok_or_else(|| not_applicable("destabilization of the empty word"))?;
    if !matches!(last, Letter::Sigma(i, _) | Letter::Rho(i) if i == n - 1) {
        return Err(not_applicable(format!("word must end with s{m}, s{m}' or r{m}", m = n - 1)));
    }
    let body = &letters[..letters.len() - 1];
    if let Some(l) = body.iter().find(|l| l.touches(n)) {
        return Err(not_applicable(format!("strand {n} is used by {l} before the final letter")));
    }
    Ok(BraidWord::from_parts_unchecked(n - 1, body.to_vec()))
}

/// Virtual exchange on the leftmost (`Left`) or rightmost (`Right`) strand.
///
/// The word must be `A x B y` where `x, y` are the only letters touching
/// the edge strand and `y` is last; `(x, y) = (s^-1, s)` turns into
/// `(r, r)` and back.
fn exchange(w: &BraidWord, side: Side) -> BraidResult<BraidWord> {
    let n = w.strands();
    if n < 2 {
        return Err(not_applicable("exchange needs at least two strands"));
    }
    let (edge, idx) = match side {
        Side::Left => (1, 1),
        Side::Right => (n, n - 1),
    };
    let letters = w.letters();
    let hits: Vec<usize> = (0..letters.len()).filter(|&p| letters[p].touches(edge)).collect();
    let [x, y] = hits[..] else {
        return Err(not_applicable(format!("exactly two letters must touch strand {edge}")));
    };
    if y != letters.len() - 1 {
        return Err(not_applicable("the exchanged pair must end the word"));
    }
    let (nx, ny) = match (letters[x], letters[y]) {
        (Letter::Sigma(a, Sign::Neg), Letter::Sigma(b, Sign::Pos)) if a == idx && b == idx => {
            (Letter::Rho(idx), Letter::Rho(idx))
        }
        (Letter::Rho(a), Letter::Rho(b)) if a == idx && b == idx => (Letter::Sigma(idx, Sign::Neg), Letter::Sigma(idx, Sign::Pos)),
        (a, b) => return Err(not_applicable(format!("pattern ({a}, {b}) is not an exchange pair"))),
    };
    let mut out = letters.to_vec();
    out[x] = nx;
    out[y] = ny;
    Ok(BraidWord::from_parts_unchecked(n, out))
}

/// Caps on the words a search may visit.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_strands: usize,
    pub max_length: usize,
}

impl SearchBounds {
    pub fn admits(&self, w: &BraidWord) -> bool {
        w.strands() <= self.max_strands && w.len() <= self.max_length
    }
}

/// All generators (and inverses) on `n` strands, in a fixed order.
fn generators(n: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for i in 1..n {
        out.push(Letter::Sigma(i, Sign::Pos));
        out.push(Letter::Sigma(i, Sign::Neg));
    }
    for j in 1..=n {
        out.push(Letter::Tau(j, Sign::Pos));
        out.push(Letter::Tau(j, Sign::Neg));
    }
    for i in 1..n {
        out.push(Letter::Rho(i));
    }
    out
}

/// Relation tables per strand count, built on demand.
#[derive(Default)]
struct Tables(HashMap<usize, RelationTable>);

impl Tables {
    fn get(&mut self, n: usize) -> &RelationTable {
        self.0.entry(n).or_insert_with(|| RelationTable::new(n))
    }
}

/// Every single move from `w` whose result lies within `bounds`, in a fixed
/// enumeration order.
pub fn single_moves(w: &BraidWord, bounds: &SearchBounds) -> Vec<(MarkovMove, BraidWord)> {
    single_moves_with(w, bounds, &mut Tables::default())
}

fn single_moves_with(w: &BraidWord, bounds: &SearchBounds, tables: &mut Tables) -> Vec<(MarkovMove, BraidWord)> {
    let n = w.strands();
    let len = w.len();
    let mut out = Vec::new();
    for (relation, position, direction, result) in tables.get(n).rewrites(w) {
        out.push((MarkovMove::Rewrite { relation, position, direction }, Some(result)));
    }
    let gens = generators(n);
    if len + 2 <= bounds.max_length {
        for position in 0..=len {
            for &letter in &gens {
                out.push((MarkovMove::Insert { position, letter }, None));
            }
        }
        for &g in &gens {
            out.push((MarkovMove::Conjugate(BraidWord::from_parts_unchecked(n, vec![g])), None));
        }
    }
    for &g in &gens {
        out.push((MarkovMove::Unconjugate(BraidWord::from_parts_unchecked(n, vec![g])), None));
    }
    if len >= 2 {
        out.push((MarkovMove::Rotate(Side::Left), None));
        out.push((MarkovMove::Rotate(Side::Right), None));
    }
    if n < bounds.max_strands && len < bounds.max_length {
        for kind in [StabKind::Positive, StabKind::Negative, StabKind::Virtual] {
            out.push((MarkovMove::Stabilize(kind), None));
        }
    }
    out.push((MarkovMove::Destabilize, None));
    out.push((MarkovMove::Exchange(Side::Left), None));
    out.push((MarkovMove::Exchange(Side::Right), None));

    out.into_iter()
        .filter_map(|(m, result)| {
            let result = match result {
                Some(r) => r,
                None => apply_markov(w, &m).ok()?,
            };
            bounds.admits(&result).then_some((m, result))
        })
        .collect()
}

/// Words reachable from `w` by at most `depth` moves within `bounds`,
/// including `w` itself.
pub fn markov_neighbors(w: &BraidWord, depth: usize, bounds: &SearchBounds) -> BTreeSet<BraidWord> {
    let mut tables = Tables::default();
    let mut seen = BTreeSet::new();
    seen.insert(w.clone());
    let mut frontier = vec![w.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for u in &frontier {
            for (_, v) in single_moves_with(u, bounds, &mut tables) {
                if seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

/// One step of a found path: the move and the word it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub mv: MarkovMove,
    pub word: BraidWord,
}

/// Breadth-first search for a shortest move sequence from `from` to `to`
/// using at most `depth` moves. `Some(vec![])` when the words are equal.
pub fn markov_search(from: &BraidWord, to: &BraidWord, depth: usize, bounds: &SearchBounds) -> Option<Vec<PathStep>> {
    if from == to {
        return Some(Vec::new());
    }
    let mut tables = Tables::default();
    let mut parent: HashMap<BraidWord, (BraidWord, MarkovMove)> = HashMap::new();
    let mut queue = VecDeque::from([(from.clone(), 0usize)]);
    let mut seen = BTreeSet::from([from.clone()]);
    while let Some((u, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for (m, v) in single_moves_with(&u, bounds, &mut tables) {
            if !seen.insert(v.clone()) {
                continue;
            }
            parent.insert(v.clone(), (u.clone(), m));
            if &v == to {
                let mut path = Vec::new();
                let mut cur = v;
                while let Some((prev, mv)) = parent.remove(&cur) {
                    path.push(PathStep { mv, word: cur });
                    cur = prev;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back((v, d + 1));
        }
    }
    None
}
