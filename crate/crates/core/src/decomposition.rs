//! Tree decompositions and the packing-or-cover algorithm for bounded treewidth.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cycles::{non_null_cycle, GfvsCertificate};
use crate::error::{EpError, Result};
use crate::graph::{dense_index, is_non_null_cycle, LabeledGraph, VertexId, VertexSet, Walk};

/// Largest graph handled by the exact treewidth solver.
pub const EXACT_TREEWIDTH_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    parent: Vec<Option<usize>>,
    bags: Vec<VertexSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TdMode {
    Exact,
    Heuristic,
}

/// On-disk form: `{"nodes": [..], "parent": {node: parent|null}, "bags": {node: [v..]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub nodes: Vec<usize>,
    pub parent: BTreeMap<usize, Option<usize>>,
    pub bags: BTreeMap<usize, Vec<VertexId>>,
}

impl TreeDecomposition {
    /// Checks the shape (one root, no parent cycles), not the graph axioms.
    pub fn new(parent: Vec<Option<usize>>, bags: Vec<VertexSet>) -> Result<TreeDecomposition> {
        let bad = |m: &str| Err(EpError::InvalidDecomposition(m.into()));
        if parent.len() != bags.len() || bags.is_empty() {
            return bad("need one bag per node and at least one node");
        }
        if parent.iter().filter(|p| p.is_none()).count() != 1 {
            return bad("the tree must have exactly one root");
        }
        for start in 0..parent.len() {
            let mut at = start;
            for _ in 0..=parent.len() {
                match parent[at] {
                    None => break,
                    Some(p) if p >= parent.len() => return bad("parent out of range"),
                    Some(p) => at = p,
                }
            }
            if parent[at].is_some() {
                return bad("parent pointers contain a cycle");
            }
        }
        Ok(TreeDecomposition { parent, bags })
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn bag(&self, b: usize) -> &VertexSet {
        &self.bags[b]
    }

    pub fn parent(&self, b: usize) -> Option<usize> {
        self.parent[b]
    }

    pub fn root(&self) -> usize {
        self.parent.iter().position(|p| p.is_none()).expect("checked on construction")
    }

    /// Largest bag size minus one (zero when all bags are empty).
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn children(&self, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.parent[c] == Some(b)).collect()
    }

    /// Nodes with every child before its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![(self.root(), false)];
        while let Some((b, expanded)) = stack.pop() {
            if expanded {
                out.push(b);
            } else {
                stack.push((b, true));
                for c in self.children(b).into_iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Union of the bags in the subtree below `b` (inclusive).
    pub fn below(&self, b: usize) -> VertexSet {
        let mut out = VertexSet::new();
        let mut stack = vec![b];
        while let Some(x) = stack.pop() {
            out.extend(self.bags[x].iter().copied());
            stack.extend(self.children(x));
        }
        out
    }

    /// Both decomposition axioms for `g`.
    pub fn validate(&self, g: &LabeledGraph) -> Result<()> {
        let bad = |m: String| Err(EpError::InvalidDecomposition(m));
        for (b, bag) in self.bags.iter().enumerate() {
            if let Some(v) = bag.iter().find(|&&v| !g.contains_vertex(v)) {
                return bad(format!("bag {b} holds unknown vertex {v}"));
            }
        }
        for v in g.vertices() {
            let holders: BTreeSet<usize> = (0..self.len()).filter(|&b| self.bags[b].contains(&v)).collect();
            if holders.is_empty() {
                return bad(format!("vertex {v} is in no bag"));
            }
            // Connected iff exactly one holder has its parent outside the holders.
            let tops = holders.iter().filter(|&&b| self.parent[b].is_none_or(|p| !holders.contains(&p))).count();
            if tops != 1 {
                return bad(format!("bags holding vertex {v} are not connected"));
            }
        }
        for (id, arc) in g.arcs() {
            if !self.bags.iter().any(|bag| bag.contains(&arc.tail) && bag.contains(&arc.head)) {
                return bad(format!("no bag covers arc {id}"));
            }
        }
        Ok(())
    }

    pub fn to_file(&self) -> DecompositionFile {
        DecompositionFile {
            nodes: (0..self.len()).collect(),
            parent: self.parent.iter().copied().enumerate().collect(),
            bags: self.bags.iter().enumerate().map(|(b, s)| (b, s.iter().copied().collect())).collect(),
        }
    }

    /// Node names in the file may be arbitrary integers; they are renumbered
    /// in the order listed.
    pub fn from_file(file: &DecompositionFile) -> Result<TreeDecomposition> {
        let index: BTreeMap<usize, usize> = file.nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        if index.len() != file.nodes.len() {
            return Err(EpError::InvalidDecomposition("repeated node".into()));
        }
        let lookup = |n: usize| index.get(&n).copied().ok_or_else(|| EpError::InvalidDecomposition(format!("unknown node {n}")));
        let mut parent = vec![None; index.len()];
        let mut bags = vec![VertexSet::new(); index.len()];
        for (&n, &p) in &file.parent {
            parent[lookup(n)?] = p.map(lookup).transpose()?;
        }
        for (&n, vs) in &file.bags {
            bags[lookup(n)?] = vs.iter().copied().collect();
        }
        TreeDecomposition::new(parent, bags)
    }
}

/// Decomposition from an elimination order: each vertex's bag holds it and
/// its later neighbours in the fill graph, hung below the bag of the earliest
/// of those neighbours. Component roots are chained into one tree.
pub fn from_elimination_order(g: &LabeledGraph, order: &[VertexId]) -> TreeDecomposition {
    let pos: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut nbrs: BTreeMap<VertexId, VertexSet> = order.iter().map(|&v| (v, g.neighbors(v))).collect();
    let mut bags = Vec::with_capacity(order.len());
    let mut later_sets = Vec::with_capacity(order.len());
    for &v in order {
        let later: VertexSet = nbrs[&v].iter().copied().filter(|u| pos[u] > pos[&v]).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    nbrs.get_mut(&a).unwrap().insert(b);
                }
            }
        }
        let mut bag = later.clone();
        bag.insert(v);
        bags.push(bag);
        later_sets.push(later);
    }
    if bags.is_empty() {
        return TreeDecomposition { parent: vec![None], bags: vec![VertexSet::new()] };
    }
    let mut parent: Vec<Option<usize>> = later_sets.iter().map(|l| l.iter().map(|u| pos[u]).min()).collect();
    let roots: Vec<usize> = (0..parent.len()).filter(|&b| parent[b].is_none()).collect();
    for w in roots.windows(2) {
        parent[w[0]] = Some(w[1]);
    }
    TreeDecomposition { parent, bags }
}

pub fn tree_decomposition(g: &LabeledGraph, mode: TdMode) -> Result<TreeDecomposition> {
    let order = match mode {
        TdMode::Exact => exact_order(g)?,
        TdMode::Heuristic => min_fill_order(g),
    };
    Ok(from_elimination_order(g, &order))
}

/// Treewidth by the subset recurrence
/// `TW(S) = min_{v ∈ S} max(TW(S - v), |Q(S - v, v)|)`, where `Q(S, v)` is the
/// set of vertices outside `S + v` reachable from `v` through `S`.
fn exact_order(g: &LabeledGraph) -> Result<Vec<VertexId>> {
    let (verts, index) = dense_index(g);
    let n = verts.len();
    if n > EXACT_TREEWIDTH_LIMIT {
        return Err(EpError::GuardExceeded(format!(
            "exact treewidth is limited to {EXACT_TREEWIDTH_LIMIT} vertices, graph has {n}"
        )));
    }
    let adj: Vec<u32> = verts.iter().map(|&v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << index[u])).collect();
    let q = |s: u32, v: usize| -> u32 {
        let mut comp = 1u32 << v;
        loop {
            let grow = comp | comp.iter_nbrs(&adj) & s;
            if grow == comp {
                break;
            }
            comp = grow;
        }
        (comp.iter_nbrs(&adj) & !s & !(1 << v)).count_ones()
    };
    let size = 1usize << n;
    let mut tw = vec![u8::MAX; size];
    let mut choice = vec![0u8; size];
    tw[0] = 0;
    for s in 1..size as u32 {
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let val = tw[rest as usize].max(q(rest, v) as u8);
            if val < tw[s as usize] {
                tw[s as usize] = val;
                choice[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = (size - 1) as u32;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(verts[v]);
        s &= !(1 << v);
    }
    order.reverse();
    Ok(order)
}

trait NeighbourMask {
    fn iter_nbrs(self, adj: &[u32]) -> u32;
}

impl NeighbourMask for u32 {
    fn iter_nbrs(self, adj: &[u32]) -> u32 {
        let mut out = 0;
        let mut bits = self;
        while bits != 0 {
            out |= adj[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        out
    }
}

/// Greedy order: repeatedly eliminate the vertex needing the fewest fill
/// edges, ties broken by degree and then id.
fn min_fill_order(g: &LabeledGraph) -> Vec<VertexId> {
    let mut nbrs: BTreeMap<VertexId, VertexSet> = g.vertices().map(|v| (v, g.neighbors(v))).collect();
    let mut order = Vec::with_capacity(nbrs.len());
    while !nbrs.is_empty() {
        let (&v, _) = nbrs
            .iter()
            .min_by_key(|(&v, ns)| {
                let list: Vec<_> = ns.iter().collect();
                let mut fill = 0usize;
                for i in 0..list.len() {
                    for j in i + 1..list.len() {
                        if !nbrs[list[i]].contains(list[j]) {
                            fill += 1;
                        }
                    }
                }
                (fill, ns.len(), v)
            })
            .unwrap();
        let ns = nbrs.remove(&v).unwrap();
        for &a in &ns {
            let entry = nbrs.get_mut(&a).unwrap();
            entry.remove(&v);
            entry.extend(ns.iter().copied().filter(|&b| b != a));
        }
        order.push(v);
    }
    order
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrality {
    Integral,
    HalfIntegral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingCertificate {
    pub cycles: Vec<Walk>,
    pub integrality: Integrality,
}

impl PackingCertificate {
    pub fn k(&self) -> usize {
        self.cycles.len()
    }

    /// Each cycle is a non-null cycle of `g`, no cycle repeats, and no vertex
    /// is used more often than the integrality allows.
    pub fn verify(&self, g: &LabeledGraph) -> Result<()> {
        let cap = match self.integrality {
            Integrality::Integral => 1,
            Integrality::HalfIntegral => 2,
        };
        let mut uses: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (i, c) in self.cycles.iter().enumerate() {
            if !is_non_null_cycle(g, c).map_err(|e| EpError::InvalidCertificate(format!("cycle {i}: {e}")))? {
                return Err(EpError::InvalidCertificate(format!("cycle {i} is null")));
            }
            if !seen.insert(c.arc_set()) {
                return Err(EpError::InvalidCertificate(format!("cycle {i} repeats an earlier cycle")));
            }
            for v in c.vertex_set(g) {
                let n = uses.entry(v).or_default();
                *n += 1;
                if *n > cap {
                    return Err(EpError::InvalidCertificate(format!("vertex {v} is used more than {cap} times")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PackingOrCover {
    Packing(PackingCertificate),
    Cover(GfvsCertificate),
}

/// Either `k` vertex-disjoint non-null cycles or a gfvs of size at most
/// `(k - 1)(w + 1)`, where `w` is the width of `td`.
///
/// Repeatedly takes the first node `b` in post-order whose subtree vertices
/// induce a non-clean graph, keeps one non-null cycle from there, adds the bag
/// of `b` to the cover and deletes the subtree's vertices.
pub fn packing_or_cover_bounded_tw(g: &LabeledGraph, k: usize, td: &TreeDecomposition) -> Result<PackingOrCover> {
    if k == 0 {
        return Err(EpError::Precondition("k must be positive".into()));
    }
    td.validate(g)?;
    let order = td.post_order();
    let below: Vec<VertexSet> = (0..td.len()).map(|b| td.below(b)).collect();
    let mut cur = g.clone();
    let mut cover = VertexSet::new();
    let mut cycles = Vec::new();
    loop {
        let hit = order.iter().find_map(|&b| {
            let alive: VertexSet = below[b].iter().copied().filter(|&v| cur.contains_vertex(v)).collect();
            non_null_cycle(&cur.induced_subgraph(&alive).expect("alive")).map(|c| (b, alive, c))
        });
        let Some((b, alive, cycle)) = hit else {
            assert!(cover.len() <= (k - 1) * (td.width() + 1), "cover exceeds (k-1)(w+1)");
            return Ok(PackingOrCover::Cover(GfvsCertificate { vertices: cover, verified: true }));
        };
        cycles.push(cycle);
        if cycles.len() == k {
            return Ok(PackingOrCover::Packing(PackingCertificate { cycles, integrality: Integrality::Integral }));
        }
        cover.extend(td.bag(b).iter().copied().filter(|&v| cur.contains_vertex(v)));
        cur = cur.remove_vertices(&alive);
    }
}
