use std::collections::HashMap;

use super::{BraidError, BraidResult, BraidWord, Letter, Sign};

/// Defining relations of the dl-braid groups, in presentation order, plus
/// free cancellation.
///
/// Each relation stands for a family of instances: the stated identity, its
/// inverse (both sides reversed and inverted) and, for commutation
/// relations, every choice of exponent signs.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// `s_i s_j = s_j s_i`, `|i - j| >= 2`.
    SigmaFarCommute,
    /// `s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}`.
    SigmaBraid,
    /// `r_i r_i = 1`.
    RhoInvolution,
    /// `r_i r_j = r_j r_i`, `|i - j| >= 2`.
    RhoFarCommute,
    /// `r_i r_{i+1} r_i = r_{i+1} r_i r_{i+1}`.
    RhoBraid,
    /// `s_i r_{i+1} r_i = r_{i+1} r_i s_{i+1}`.
    MixedBraid,
    /// `t_i t_j = t_j t_i`.
    TauCommute,
    /// `s_i t_j = t_j s_i`, `j != i, i+1`.
    SigmaTauCommute,
    /// `r_i t_j = t_j r_i`, `j != i, i+1`.
    RhoTauCommute,
    /// `t_i r_i = r_i t_{i+1}` and `t_{i+1} r_i = r_i t_i`: a double line
    /// follows its strand through a virtual crossing.
    RhoTauSlide,
    /// `t_i s_i = s_i^-1 t_{i+1}`.
    TauSigmaTwist,
    /// `g g^-1 = 1` for `s` and `t` letters.
    FreeCancel,
}

impl Relation {
    pub const ALL: [Relation; 12] = [
        Relation::SigmaFarCommute,
        Relation::SigmaBraid,
        Relation::RhoInvolution,
        Relation::RhoFarCommute,
        Relation::RhoBraid,
        Relation::MixedBraid,
        Relation::TauCommute,
        Relation::SigmaTauCommute,
        Relation::RhoTauCommute,
        Relation::RhoTauSlide,
        Relation::TauSigmaTwist,
        Relation::FreeCancel,
    ];

    /// The relations of the classical group (no virtual letters).
    pub const CLASSICAL: [Relation; 5] = [
        Relation::SigmaFarCommute,
        Relation::SigmaBraid,
        Relation::TauCommute,
        Relation::SigmaTauCommute,
        Relation::TauSigmaTwist,
    ];

    pub fn is_classical(self) -> bool {
        Relation::CLASSICAL.contains(&self)
    }

    /// All instances of this relation on `n` strands.
    pub fn instances(self, n: usize) -> Vec<RelationInstance> {
        use Letter::{Rho as R, Sigma as S, Tau as T};
        let mut out = Vec::new();
        let mut push = |lhs: Vec<Letter>, rhs: Vec<Letter>| {
            out.push(RelationInstance { relation: self, lhs, rhs });
        };
        let far = |i: usize, j: usize| i.abs_diff(j) >= 2;
        let (pos, neg) = (Sign::Pos, Sign::Neg);
        match self {
            Relation::SigmaFarCommute => {
                for i in 1..n {
                    for j in (1..n).filter(|&j| far(i, j)) {
                        for a in Sign::BOTH {
                            for b in Sign::BOTH {
                                push(vec![S(i, a), S(j, b)], vec![S(j, b), S(i, a)]);
                            }
                        }
                    }
                }
            }
            Relation::SigmaBraid => {
                for i in 1..n.saturating_sub(1) {
                    for a in Sign::BOTH {
                        push(vec![S(i, a), S(i + 1, a), S(i, a)], vec![S(i + 1, a), S(i, a), S(i + 1, a)]);
                    }
                }
            }
            Relation::RhoInvolution => {
                for i in 1..n {
                    push(vec![R(i), R(i)], vec![]);
                }
            }
            Relation::RhoFarCommute => {
                for i in 1..n {
                    for j in (1..n).filter(|&j| far(i, j)) {
                        push(vec![R(i), R(j)], vec![R(j), R(i)]);
                    }
                }
            }
            Relation::RhoBraid => {
                for i in 1..n.saturating_sub(1) {
                    push(vec![R(i), R(i + 1), R(i)], vec![R(i + 1), R(i), R(i + 1)]);
                }
            }
            Relation::MixedBraid => {
                for i in 1..n.saturating_sub(1) {
                    for a in Sign::BOTH {
                        push(vec![S(i, a), R(i + 1), R(i)], vec![R(i + 1), R(i), S(i + 1, a)]);
                        push(vec![R(i), R(i + 1), S(i, a)], vec![S(i + 1, a), R(i), R(i + 1)]);
                    }
                }
            }
            Relation::TauCommute => {
                for i in 1..=n {
                    for j in (1..=n).filter(|&j| j != i) {
                        for a in Sign::BOTH {
                            for b in Sign::BOTH {
                                push(vec![T(i, a), T(j, b)], vec![T(j, b), T(i, a)]);
                            }
                        }
                    }
                }
            }
            Relation::SigmaTauCommute => {
                for i in 1..n {
                    for j in (1..=n).filter(|&j| j != i && j != i + 1) {
                        for a in Sign::BOTH {
                            for b in Sign::BOTH {
                                push(vec![S(i, a), T(j, b)], vec![T(j, b), S(i, a)]);
                            }
                        }
                    }
                }
            }
            Relation::RhoTauCommute => {
                for i in 1..n {
                    for j in (1..=n).filter(|&j| j != i && j != i + 1) {
                        for b in Sign::BOTH {
                            push(vec![R(i), T(j, b)], vec![T(j, b), R(i)]);
                        }
                    }
                }
            }
            Relation::RhoTauSlide => {
                for i in 1..n {
                    for b in Sign::BOTH {
                        push(vec![T(i, b), R(i)], vec![R(i), T(i + 1, b)]);
                        push(vec![T(i + 1, b), R(i)], vec![R(i), T(i, b)]);
                    }
                }
            }
            Relation::TauSigmaTwist => {
                for i in 1..n {
                    push(vec![T(i, pos), S(i, pos)], vec![S(i, neg), T(i + 1, pos)]);
                    push(vec![S(i, neg), T(i, neg)], vec![T(i + 1, neg), S(i, pos)]);
                    push(vec![S(i, pos), T(i, pos)], vec![T(i + 1, pos), S(i, neg)]);
                    push(vec![T(i, neg), S(i, neg)], vec![S(i, pos), T(i + 1, neg)]);
                }
            }
            Relation::FreeCancel => {
                for i in 1..n {
                    for a in Sign::BOTH {
                        push(vec![S(i, a), S(i, a.flip())], vec![]);
                    }
                }
                for j in 1..=n {
                    for a in Sign::BOTH {
                        push(vec![T(j, a), T(j, a.flip())], vec![]);
                    }
                }
            }
        }
        out
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// Left-hand side replaced by right-hand side.
    Forward,
    Backward,
}

impl Direction {
    pub fn reverse(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationInstance {
    pub relation: Relation,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

impl RelationInstance {
    pub fn source(&self, dir: Direction) -> &[Letter] {
        match dir {
            Direction::Forward => &self.lhs,
            Direction::Backward => &self.rhs,
        }
    }

    pub fn target(&self, dir: Direction) -> &[Letter] {
        self.source(dir.reverse())
    }

    /// Both sides as words on `n` strands.
    pub fn sides(&self, n: usize) -> (BraidWord, BraidWord) {
        (
            BraidWord::from_parts_unchecked(n, self.lhs.clone()),
            BraidWord::from_parts_unchecked(n, self.rhs.clone()),
        )
    }
}

/// Every relation instance on a fixed strand count, indexed by the first
/// letter of the side being replaced.
#[derive(Clone, Debug)]
pub struct RelationTable {
    n: usize,
    instances: Vec<RelationInstance>,
    by_head: HashMap<Letter, Vec<(usize, Direction)>>,
}

impl RelationTable {
    pub fn new(n: usize) -> RelationTable {
        Self::for_relations(n, &Relation::ALL)
    }

    pub fn for_relations(n: usize, relations: &[Relation]) -> RelationTable {
        let instances: Vec<RelationInstance> = relations.iter().flat_map(|r| r.instances(n)).collect();
        let mut by_head: HashMap<Letter, Vec<(usize, Direction)>> = HashMap::new();
        for (idx, inst) in instances.iter().enumerate() {
            for dir in [Direction::Forward, Direction::Backward] {
                if let Some(&head) = inst.source(dir).first() {
                    by_head.entry(head).or_default().push((idx, dir));
                }
            }
        }
        RelationTable { n, instances, by_head }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn instances(&self) -> &[RelationInstance] {
        &self.instances
    }

    /// Every single rewrite of `w`, in position order.
    pub fn rewrites(&self, w: &BraidWord) -> Vec<(Relation, usize, Direction, BraidWord)> {
        assert_eq!(w.strands(), self.n, "relation table built for a different strand count");
        let letters = w.letters();
        let mut out = Vec::new();
        for pos in 0..letters.len() {
            let Some(cands) = self.by_head.get(&letters[pos]) else { continue };
            for &(idx, dir) in cands {
                let inst = &self.instances[idx];
                let src = inst.source(dir);
                if letters[pos..].starts_with(src) {
                    out.push((inst.relation, pos, dir, splice(w, pos, src.len(), inst.target(dir))));
                }
            }
        }
        out
    }
}

fn splice(w: &BraidWord, pos: usize, len: usize, with: &[Letter]) -> BraidWord {
    let letters = w.letters();
    let mut out = Vec::with_capacity(letters.len() + with.len() - len.min(with.len()));
    out.extend_from_slice(&letters[..pos]);
    out.extend_from_slice(with);
    out.extend_from_slice(&letters[pos + len..]);
    BraidWord::from_parts_unchecked(w.strands(), out)
}

/// Replaces an occurrence of one side of `relation` starting at `position`
/// by the other side.
pub fn rewrite_step(w: &BraidWord, relation: Relation, position: usize, direction: Direction) -> BraidResult<BraidWord> {
    let letters = w.letters();
    relation
        .instances(w.strands())
        .iter()
        .find(|inst| {
            let src = inst.source(direction);
            !src.is_empty() && position < letters.len() && letters[position..].starts_with(src)
        })
        .map(|inst| splice(w, position, inst.source(direction).len(), inst.target(direction)))
        .ok_or(BraidError::NotApplicable { relation, position, direction })
}
