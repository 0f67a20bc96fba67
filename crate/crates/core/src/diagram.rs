//! Closed diagrams with double lines, their Gauss data, and the braiding
//! process that turns a diagram back into a braid word.
//!
//! Port labels: a crossing (classical or virtual) has incoming ports 1
//! (under strand) and 2 (over strand) and outgoing ports 3 and 4, where 3
//! continues 1 and 4 continues 2. A double line has incoming port 1 and
//! outgoing port 2. Virtual crossings carry no over/under information; the
//! labels only fix which strand continues where.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidWord, Letter, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("node id {0} is used twice")]
    DuplicateNode(u32),
    #[error("arc refers to unknown node {0}")]
    UnknownNode(u32),
    #[error("node {node} has no port {port}")]
    BadPort { node: u32, port: u8 },
    #[error("arc {from:?} -> {to:?} does not run from an outgoing to an incoming port")]
    WrongDirection { from: Port, to: Port },
    #[error("port {0:?} has more than one arc end")]
    PortReused(Port),
    #[error("port {0:?} has no arc")]
    PortUnused(Port),
    #[error("node {id} of kind {kind:?} has invalid sign {sign}")]
    BadSign { id: u32, kind: NodeKind, sign: i8 },
    #[error("the diagram is empty")]
    Empty,
    #[error("invalid diagram JSON: {0}")]
    Json(String),
}

pub type DiagramResult<T> = Result<T, DiagramError>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    #[serde(rename = "x")]
    Classical,
    #[serde(rename = "v")]
    Virtual,
    #[serde(rename = "d")]
    DoubleLine,
}

impl NodeKind {
    fn port_count(self) -> u8 {
        match self {
            NodeKind::DoubleLine => 2,
            _ => 4,
        }
    }

    fn is_incoming(self, port: u8) -> bool {
        match self {
            NodeKind::DoubleLine => port == 1,
            _ => port <= 2,
        }
    }

    /// The outgoing port continuing an incoming one.
    fn continuation(self, port: u8) -> u8 {
        match self {
            NodeKind::DoubleLine => 2,
            _ => port + 2,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: u32,
    pub kind: NodeKind,
    /// `+1` or `-1` for classical crossings and double lines; ignored (and
    /// serialized as 0) for virtual crossings.
    #[serde(default)]
    pub sign: i8,
}

/// `(node id, port label)`; serialized as a two-element array.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Port(pub u32, pub u8);

impl Port {
    pub fn node(self) -> u32 {
        self.0
    }

    pub fn label(self) -> u8 {
        self.1
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub from: Port,
    pub to: Port,
}

/// A closed diagram. `loops` counts components that meet no node at all.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DlDiagram {
    pub nodes: Vec<Node>,
    pub arcs: Vec<Arc>,
    #[serde(default)]
    pub loops: usize,
}

impl DlDiagram {
    pub fn from_json(text: &str) -> DiagramResult<DlDiagram> {
        let d: DlDiagram = serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    pub fn node(&self, id: u32) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    /// Checks node ids, signs and that every port carries exactly one arc
    /// end, with arcs running from outgoing to incoming ports.
    pub fn validate(&self) -> DiagramResult<()> {
        let mut kinds = HashMap::new();
        for n in &self.nodes {
            if kinds.insert(n.id, n.kind).is_some() {
                return Err(DiagramError::DuplicateNode(n.id));
            }
            if n.kind != NodeKind::Virtual && n.sign != 1 && n.sign != -1 {
                return Err(DiagramError::BadSign { id: n.id, kind: n.kind, sign: n.sign });
            }
        }
        let mut used = BTreeSet::new();
        for a in &self.arcs {
            for (p, want_in) in [(a.from, false), (a.to, true)] {
                let kind = *kinds.get(&p.0).ok_or(DiagramError::UnknownNode(p.0))?;
                if p.1 == 0 || p.1 > kind.port_count() {
                    return Err(DiagramError::BadPort { node: p.0, port: p.1 });
                }
                if kind.is_incoming(p.1) != want_in {
                    return Err(DiagramError::WrongDirection { from: a.from, to: a.to });
                }
                if !used.insert(p) {
                    return Err(DiagramError::PortReused(p));
                }
            }
        }
        for n in &self.nodes {
            for label in 1..=n.kind.port_count() {
                if !used.contains(&Port(n.id, label)) {
                    return Err(DiagramError::PortUnused(Port(n.id, label)));
                }
            }
        }
        Ok(())
    }

    fn kinds(&self) -> HashMap<u32, NodeKind> {
        self.nodes.iter().map(|n| (n.id, n.kind)).collect()
    }

    /// Number of components.
    pub fn components(&self) -> usize {
        let kinds = self.kinds();
        let next: HashMap<Port, Port> = self.arcs.iter().map(|a| (a.from, a.to)).collect();
        let mut seen = BTreeSet::new();
        let mut count = self.loops;
        for a in &self.arcs {
            if seen.contains(&a.from) {
                continue;
            }
            count += 1;
            let mut out = a.from;
            while seen.insert(out) {
                let inp = next[&out];
                out = Port(inp.0, kinds[&inp.0].continuation(inp.1));
            }
        }
        count
    }
}

/// The closure of a braid word: node `k` is the `k`-th letter and the
/// bottom of position `p` is joined to its top.
pub fn closure_diagram(w: &BraidWord) -> DlDiagram {
    let n = w.strands();
    let mut first: Vec<Option<Port>> = vec![None; n];
    let mut last: Vec<Option<Port>> = vec![None; n];
    let mut d = DlDiagram::default();

    let enter = |d: &mut DlDiagram, first: &mut Vec<Option<Port>>, last: &[Option<Port>], pos: usize, port: Port| {
        match last[pos] {
            Some(out) => d.arcs.push(Arc { from: out, to: port }),
            None => first[pos] = Some(port),
        }
    };

    for (k, &letter) in w.letters().iter().enumerate() {
        let id = k as u32;
        // (in position, in port, out position, out port) per strand
        let routes: Vec<(usize, u8, usize, u8)> = match letter {
            Letter::Sigma(i, Sign::Pos) => vec![(i - 1, 2, i, 4), (i, 1, i - 1, 3)],
            Letter::Sigma(i, Sign::Neg) => vec![(i, 2, i - 1, 4), (i - 1, 1, i, 3)],
            Letter::Rho(i) => vec![(i - 1, 1, i, 3), (i, 2, i - 1, 4)],
            Letter::Tau(j, _) => vec![(j - 1, 1, j - 1, 2)],
        };
        let (kind, sign) = match letter {
            Letter::Sigma(_, s) => (NodeKind::Classical, s.value() as i8),
            Letter::Rho(_) => (NodeKind::Virtual, 0),
            Letter::Tau(_, s) => (NodeKind::DoubleLine, s.value() as i8),
        };
        d.nodes.push(Node { id, kind, sign });
        for &(p_in, port_in, _, _) in &routes {
            enter(&mut d, &mut first, &last, p_in, Port(id, port_in));
        }
        for &(_, _, p_out, port_out) in &routes {
            last[p_out] = Some(Port(id, port_out));
        }
    }
    for p in 0..n {
        match (last[p], first[p]) {
            (Some(from), Some(to)) => d.arcs.push(Arc { from, to }),
            _ => d.loops += 1,
        }
    }
    d
}

/// `(V, S, dlL, E, μ)`: crossings with signs, double lines with signs,
/// arcs between boundary points after erasing virtual crossings, and the
/// component count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussData {
    #[serde(rename = "V")]
    pub crossings: BTreeSet<u32>,
    #[serde(rename = "S")]
    pub signs: BTreeMap<u32, i8>,
    #[serde(rename = "dlL")]
    pub double_lines: BTreeMap<u32, i8>,
    #[serde(rename = "E")]
    pub edges: BTreeSet<(Port, Port)>,
    pub mu: usize,
}

impl GaussData {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("gauss data serializes")
    }

    fn kind_sign(&self, id: u32) -> Option<(NodeKind, i8)> {
        if let Some(&s) = self.signs.get(&id) {
            return Some((NodeKind::Classical, s));
        }
        self.double_lines.get(&id).map(|&s| (NodeKind::DoubleLine, s))
    }

    fn node_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.crossings.iter().copied().chain(self.double_lines.keys().copied())
    }

    /// Cycles through boundary points, i.e. components meeting a node.
    fn node_cycles(&self) -> usize {
        let next: HashMap<Port, Port> = self.edges.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &(start, _) in &self.edges {
            if seen.contains(&start) {
                continue;
            }
            count += 1;
            let mut out = start;
            while seen.insert(out) {
                let inp = next[&out];
                let kind = self.kind_sign(inp.0).map(|(k, _)| k).expect("edge ends at a node");
                out = Port(inp.0, kind.continuation(inp.1));
            }
        }
        count
    }
}

pub fn gauss_data(d: &DlDiagram) -> DiagramResult<GaussData> {
    d.validate()?;
    let kinds = d.kinds();
    let next: HashMap<Port, Port> = d.arcs.iter().map(|a| (a.from, a.to)).collect();
    let mut g = GaussData {
        crossings: BTreeSet::new(),
        signs: BTreeMap::new(),
        double_lines: BTreeMap::new(),
        edges: BTreeSet::new(),
        mu: d.components(),
    };
    for n in &d.nodes {
        match n.kind {
            NodeKind::Classical => {
                g.crossings.insert(n.id);
                g.signs.insert(n.id, n.sign);
            }
            NodeKind::DoubleLine => {
                g.double_lines.insert(n.id, n.sign);
            }
            NodeKind::Virtual => {}
        }
    }
    for a in &d.arcs {
        if kinds[&a.from.0] == NodeKind::Virtual {
            continue;
        }
        let mut to = a.to;
        let mut steps = 0;
        while kinds[&to.0] == NodeKind::Virtual {
            to = next[&Port(to.0, to.1 + 2)];
            steps += 1;
            debug_assert!(steps <= d.arcs.len(), "virtual chain cannot cycle from a real node");
        }
        g.edges.insert((a.from, to));
    }
    Ok(g)
}

/// Searches for a kind- and sign-preserving bijection of node ids that
/// carries the edges of `a` exactly onto those of `b`.
pub fn gauss_isomorphic(a: &GaussData, b: &GaussData) -> Option<BTreeMap<u32, u32>> {
    if a.mu != b.mu
        || a.crossings.len() != b.crossings.len()
        || a.double_lines.len() != b.double_lines.len()
        || a.edges.len() != b.edges.len()
    {
        return None;
    }
    let profile = |g: &GaussData| {
        let mut p: Vec<(NodeKind, i8)> = g.node_ids().filter_map(|id| g.kind_sign(id)).collect();
        p.sort();
        p
    };
    if profile(a) != profile(b) {
        return None;
    }
    let search = IsoSearch::new(a, b);
    let mut map = BTreeMap::new();
    let mut used = BTreeSet::new();
    if search.extend(&mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

struct IsoSearch<'g> {
    a: &'g GaussData,
    b: &'g GaussData,
    // port -> port along E, forwards and backwards
    a_fwd: HashMap<Port, Port>,
    a_back: HashMap<Port, Port>,
    b_fwd: HashMap<Port, Port>,
    b_back: HashMap<Port, Port>,
    a_ids: Vec<u32>,
    b_ids: Vec<u32>,
}

impl<'g> IsoSearch<'g> {
    fn new(a: &'g GaussData, b: &'g GaussData) -> Self {
        let fwd = |g: &GaussData| g.edges.iter().copied().collect::<HashMap<_, _>>();
        let back = |g: &GaussData| g.edges.iter().map(|&(x, y)| (y, x)).collect::<HashMap<_, _>>();
        IsoSearch {
            a,
            b,
            a_fwd: fwd(a),
            a_back: back(a),
            b_fwd: fwd(b),
            b_back: back(b),
            a_ids: a.node_ids().collect(),
            b_ids: b.node_ids().collect(),
        }
    }

    /// Maps `x -> y` and everything forced by it. Returns false on conflict;
    /// the maps may then hold partial assignments and must be discarded.
    fn propagate(&self, x: u32, y: u32, map: &mut BTreeMap<u32, u32>, used: &mut BTreeSet<u32>) -> bool {
        let mut stack = vec![(x, y)];
        while let Some((x, y)) = stack.pop() {
            match map.get(&x) {
                Some(&m) if m == y => continue,
                Some(_) => return false,
                None => {}
            }
            if used.contains(&y) || self.a.kind_sign(x) != self.b.kind_sign(y) {
                return false;
            }
            map.insert(x, y);
            used.insert(y);
            let ports = self.a.kind_sign(x).map_or(0, |(k, _)| k.port_count());
            for label in 1..=ports {
                for (af, bf) in [(&self.a_fwd, &self.b_fwd), (&self.a_back, &self.b_back)] {
                    let (Some(pa), Some(pb)) = (af.get(&Port(x, label)), bf.get(&Port(y, label))) else {
                        if af.contains_key(&Port(x, label)) != bf.contains_key(&Port(y, label)) {
                            return false;
                        }
                        continue;
                    };
                    if pa.1 != pb.1 {
                        return false;
                    }
                    stack.push((pa.0, pb.0));
                }
            }
        }
        true
    }

    fn extend(&self, map: &mut BTreeMap<u32, u32>, used: &mut BTreeSet<u32>) -> bool {
        let Some(&x) = self.a_ids.iter().find(|id| !map.contains_key(id)) else {
            return self.verify(map);
        };
        for &y in &self.b_ids {
            if used.contains(&y) || self.a.kind_sign(x) != self.b.kind_sign(y) {
                continue;
            }
            let (saved_map, saved_used) = (map.clone(), used.clone());
            if self.propagate(x, y, map, used) && self.extend(map, used) {
                return true;
            }
            *map = saved_map;
            *used = saved_used;
        }
        false
    }

    fn verify(&self, map: &BTreeMap<u32, u32>) -> bool {
        let image: BTreeSet<(Port, Port)> = self
            .a
            .edges
            .iter()
            .map(|&(p, q)| (Port(map[&p.0], p.1), Port(map[&q.0], q.1)))
            .collect();
        image == self.b.edges
    }
}

/// Turns a diagram into a braid word whose closure has the same Gauss data.
///
/// Nodes are visited in id order. Strands crossing the base line are the
/// arcs running from a later (or the same) node back to an earlier one,
/// plus the free loops. Virtual crossings bring the arcs entering each node
/// next to each other before its generator is emitted, and a final run of
/// virtual crossings restores the starting strand order.
pub fn braid_from_diagram(d: &DlDiagram) -> DiagramResult<BraidWord> {
    let g = gauss_data(d)?;
    let order: Vec<u32> = {
        let mut ids: Vec<u32> = g.node_ids().collect();
        ids.sort_unstable();
        ids
    };
    let level: HashMap<u32, usize> = order.iter().enumerate().map(|(k, &id)| (id, k)).collect();
    let free = g.mu - g.node_cycles();

    // Strand labels: Some(out point) for an arc, None for a free loop.
    let mut registry: Vec<Option<Port>> = g
        .edges
        .iter()
        .filter(|(p, q)| level[&p.0] >= level[&q.0])
        .map(|&(p, _)| Some(p))
        .collect();
    registry.extend(std::iter::repeat(None).take(free));
    let n = registry.len();
    if n == 0 {
        return Err(DiagramError::Empty);
    }
    let start = registry.clone();
    let into: HashMap<Port, Port> = g.edges.iter().map(|&(p, q)| (q, p)).collect();

    let mut letters = Vec::new();
    let swap = |registry: &mut Vec<Option<Port>>, k: usize, letters: &mut Vec<Letter>| {
        // exchange positions k and k+1 (0-based)
        registry.swap(k, k + 1);
        letters.push(Letter::Rho(k + 1));
    };
    let find = |registry: &[Option<Port>], p: Port| registry.iter().position(|&s| s == Some(p)).expect("arc on a strand");

    for &id in &order {
        let (kind, sign) = g.kind_sign(id).expect("node in gauss data");
        let sign = Sign::from_value(sign as i32).expect("validated sign");
        match kind {
            NodeKind::DoubleLine => {
                let j = find(&registry, into[&Port(id, 1)]);
                letters.push(Letter::Tau(j + 1, sign));
                registry[j] = Some(Port(id, 2));
            }
            NodeKind::Classical => {
                let over = into[&Port(id, 2)];
                let under = into[&Port(id, 1)];
                let (lo, hi) = match sign {
                    Sign::Pos => (over, under),
                    Sign::Neg => (under, over),
                };
                let mut a = find(&registry, lo);
                let mut b = find(&registry, hi);
                if b > a {
                    while b > a + 1 {
                        swap(&mut registry, b - 1, &mut letters);
                        b -= 1;
                    }
                } else {
                    while a > b {
                        swap(&mut registry, a - 1, &mut letters);
                        a -= 1;
                    }
                    b = a + 1;
                }
                debug_assert_eq!(b, a + 1);
                letters.push(Letter::Sigma(a + 1, sign));
                let (at_a, at_b) = match sign {
                    Sign::Pos => (Port(id, 3), Port(id, 4)),
                    Sign::Neg => (Port(id, 4), Port(id, 3)),
                };
                registry[a] = Some(at_a);
                registry[b] = Some(at_b);
            }
            NodeKind::Virtual => unreachable!("virtual crossings are not in gauss data"),
        }
    }

    // bubble back to the starting order
    let rank = |s: &Option<Port>, taken: &mut Vec<bool>| {
        let k = (0..n).find(|&k| !taken[k] && start[k] == *s).expect("strand present at the end");
        taken[k] = true;
        k
    };
    let mut taken = vec![false; n];
    let mut targets: Vec<usize> = registry.iter().map(|s| rank(s, &mut taken)).collect();
    for pass in 0..n {
        for k in 0..n - 1 - pass.min(n - 1) {
            if targets[k] > targets[k + 1] {
                targets.swap(k, k + 1);
                swap(&mut registry, k, &mut letters);
            }
        }
    }
    debug_assert_eq!(registry, start);
    Ok(BraidWord::new(n, letters).expect("letters are in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::underlying_permutation;
    use proptest::prelude::*;

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    fn gauss_of(s: &str) -> GaussData {
        gauss_data(&closure_diagram(&w(s))).unwrap()
    }

    #[test]
    fn closure_examples() {
        let id = closure_diagram(&w("n=1;"));
        assert!(id.nodes.is_empty() && id.arcs.is_empty());
        assert_eq!(id.components(), 1);

        let s = closure_diagram(&w("n=2; s1"));
        assert_eq!(s.nodes, vec![Node { id: 0, kind: NodeKind::Classical, sign: 1 }]);
        assert_eq!(s.arcs.len(), 2);

        let t = closure_diagram(&w("n=1; t1"));
        assert_eq!(t.nodes, vec![Node { id: 0, kind: NodeKind::DoubleLine, sign: 1 }]);
        assert_eq!(t.arcs, vec![Arc { from: Port(0, 2), to: Port(0, 1) }]);
    }

    #[test]
    fn gauss_examples() {
        let g = gauss_of("n=2; s1");
        assert_eq!(g.crossings, BTreeSet::from([0]));
        assert_eq!(g.signs[&0], 1);
        assert!(g.double_lines.is_empty());
        assert_eq!(g.mu, 1);
        // under strand leaves at position 1 and re-enters as the over strand
        assert_eq!(g.edges, BTreeSet::from([(Port(0, 3), Port(0, 2)), (Port(0, 4), Port(0, 1))]));

        let id = gauss_of("n=3;");
        assert!(id.crossings.is_empty() && id.edges.is_empty());
        assert_eq!(id.mu, 3);

        let t = gauss_of("n=1; t1");
        assert_eq!(t.double_lines, BTreeMap::from([(0, 1)]));
        assert_eq!(t.edges, BTreeSet::from([(Port(0, 2), Port(0, 1))]));
        assert_eq!(t.mu, 1);
    }

    #[test]
    fn virtual_crossings_are_erased() {
        let g = gauss_of("n=2; r1 t1 r1");
        assert!(g.crossings.is_empty());
        assert_eq!(g.double_lines.len(), 1);
        assert_eq!(g.mu, 2);
        assert_eq!(g.edges, BTreeSet::from([(Port(1, 2), Port(1, 1))]));
        assert_eq!(gauss_isomorphic(&g, &gauss_of("n=2; t1")).map(|m| m[&1]), Some(0));
    }

    #[test]
    fn gauss_json_keys() {
        let json = gauss_of("n=1; t1").to_json();
        assert_eq!(json, r#"{"V":[],"S":{},"dlL":{"0":1},"E":[[[0,2],[0,1]]],"mu":1}"#);
    }

    #[test]
    fn isomorphism_examples() {
        let g = gauss_of("n=3; s1 t2 s2'");
        let wit = gauss_isomorphic(&g, &g).unwrap();
        assert!(wit.iter().all(|(a, b)| a == b));
        assert!(gauss_isomorphic(&gauss_of("n=2; s1"), &gauss_of("n=2; s1'")).is_none());
        assert!(gauss_isomorphic(&gauss_of("n=2; t1 t2"), &gauss_of("n=2; t2 t1")).is_some());
        assert!(gauss_isomorphic(&gauss_of("n=2; t1 t2"), &gauss_of("n=2; t1 t1")).is_none());
    }

    #[test]
    fn braiding_examples() {
        let g = gauss_of("n=2; s1");
        let back = braid_from_diagram(&closure_diagram(&w("n=2; s1"))).unwrap();
        assert!(gauss_isomorphic(&gauss_data(&closure_diagram(&back)).unwrap(), &g).is_some());

        let d = closure_diagram(&w("n=2; t1 t2 s1"));
        let back = braid_from_diagram(&d).unwrap();
        let gb = gauss_data(&closure_diagram(&back)).unwrap();
        assert_eq!(gb.signs.values().copied().collect::<Vec<_>>(), vec![1]);
        assert_eq!(gb.double_lines.values().copied().collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(gb.mu, 1);
        assert!(gauss_isomorphic(&gb, &gauss_data(&d).unwrap()).is_some());

        let loops = DlDiagram { loops: 2, ..DlDiagram::default() };
        let back = braid_from_diagram(&loops).unwrap();
        assert_eq!(back.strands(), 2);
        assert!(back.letters().iter().all(|l| l.is_virtual()));
        assert_eq!(braid_from_diagram(&DlDiagram::default()), Err(DiagramError::Empty));
    }

    #[test]
    fn validation() {
        let ok = closure_diagram(&w("n=2; s1 r1 t2'"));
        assert!(ok.validate().is_ok());
        assert_eq!(DlDiagram::from_json(&ok.to_json()).unwrap(), ok);

        let mut bad = ok.clone();
        bad.arcs.pop();
        assert!(matches!(bad.validate(), Err(DiagramError::PortUnused(_))));
        let mut bad = ok.clone();
        bad.nodes[0].sign = 0;
        assert!(matches!(bad.validate(), Err(DiagramError::BadSign { .. })));
        let mut bad = ok.clone();
        bad.arcs[0] = Arc { from: bad.arcs[0].to, to: bad.arcs[0].from };
        assert!(matches!(bad.validate(), Err(DiagramError::WrongDirection { .. })));
        assert!(matches!(DlDiagram::from_json("{\"nodes\": 3}"), Err(DiagramError::Json(_))));
        let json = r#"{"nodes":[{"id":7,"kind":"d","sign":-1}],"arcs":[{"from":[7,2],"to":[7,1]}]}"#;
        assert_eq!(gauss_data(&DlDiagram::from_json(json).unwrap()).unwrap().double_lines[&7], -1);
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        (1usize..=4).prop_flat_map(|n| {
            let mut letters = Vec::new();
            for i in 1..n {
                letters.extend([Letter::sigma(i), Letter::sigma_inv(i), Letter::rho(i)]);
            }
            for j in 1..=n {
                letters.extend([Letter::tau(j), Letter::tau_inv(j)]);
            }
            prop::collection::vec(prop::sample::select(letters), 0..=10).prop_map(move |ls| BraidWord::new(n, ls).unwrap())
        })
    }

    fn cycles(p: &[usize]) -> usize {
        let mut seen = vec![false; p.len()];
        let mut count = 0;
        for s in 0..p.len() {
            if !seen[s] {
                count += 1;
                let mut k = s;
                while !seen[k] {
                    seen[k] = true;
                    k = p[k];
                }
            }
        }
        count
    }

    proptest! {
        #[test]
        fn round_trip(word in arb_word()) {
            let d = closure_diagram(&word);
            prop_assert!(d.validate().is_ok());
            let g = gauss_data(&d).unwrap();
            prop_assert_eq!(g.mu, cycles(&underlying_permutation(&word)));
            let back = braid_from_diagram(&d).unwrap();
            let gb = gauss_data(&closure_diagram(&back)).unwrap();
            prop_assert!(gauss_isomorphic(&gb, &g).is_some(), "{} -> {}", word, back);
            let dl_sum = |g: &GaussData| g.double_lines.values().map(|&s| s as i32).sum::<i32>();
            prop_assert_eq!(dl_sum(&g), dl_sum(&gb));
        }
    }
}
