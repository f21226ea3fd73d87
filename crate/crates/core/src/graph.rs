//! Group-labeled graphs, walks and separations.
//!
//! A [`LabeledGraph`] is an oriented multigraph whose arcs carry group
//! elements. Vertex and arc ids are dense integers fixed when the graph is
//! built; taking subgraphs only masks vertices and arcs out, so ids in
//! certificates always refer to the original input.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{EpError, Result};
use crate::group::{GroupElement, GroupSpec};

pub type VertexId = usize;
pub type ArcId = usize;
pub type VertexSet = BTreeSet<VertexId>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledArc {
    pub tail: VertexId,
    pub head: VertexId,
    pub label: GroupElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "f")]
    Forward,
    #[serde(rename = "r")]
    Reverse,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        }
    }
}

/// One way of leaving a vertex along an arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub arc: ArcId,
    pub other: VertexId,
    pub dir: Direction,
}

#[derive(Clone, Debug)]
pub struct LabeledGraph {
    group: Arc<GroupSpec>,
    arcs: Vec<LabeledArc>,
    vertex_alive: Vec<bool>,
    arc_alive: Vec<bool>,
    adj: Vec<Vec<Incidence>>,
}

impl LabeledGraph {
    pub fn new(group: GroupSpec, n: usize) -> Result<LabeledGraph> {
        group.validate()?;
        Ok(LabeledGraph::with_group(Arc::new(group), n))
    }

    pub fn with_group(group: Arc<GroupSpec>, n: usize) -> LabeledGraph {
        LabeledGraph {
            group,
            arcs: Vec::new(),
            vertex_alive: vec![true; n],
            arc_alive: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn group(&self) -> &Arc<GroupSpec> {
        &self.group
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(&self.group)
    }

    /// Size of the id universe (alive or not).
    pub fn universe(&self) -> usize {
        self.vertex_alive.len()
    }

    pub fn arc_universe(&self) -> usize {
        self.arcs.len()
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.vertex_alive.push(true);
        self.adj.push(Vec::new());
        self.vertex_alive.len() - 1
    }

    pub fn add_arc(&mut self, tail: VertexId, head: VertexId, label: GroupElement) -> Result<ArcId> {
        for v in [tail, head] {
            if !self.contains_vertex(v) {
                return Err(EpError::UnknownVertex(v));
            }
        }
        if *label.spec() != self.group {
            return Err(EpError::SpecMismatch(format!("label {label:?} in a {} graph", self.group)));
        }
        let id = self.arcs.len();
        self.arcs.push(LabeledArc { tail, head, label });
        self.arc_alive.push(true);
        self.adj[tail].push(Incidence { arc: id, other: head, dir: Direction::Forward });
        if tail != head {
            self.adj[head].push(Incidence { arc: id, other: tail, dir: Direction::Reverse });
        }
        Ok(id)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertex_alive.get(v).copied().unwrap_or(false)
    }

    pub fn contains_arc(&self, a: ArcId) -> bool {
        self.arc_alive.get(a).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_alive.iter().enumerate().filter(|(_, &a)| a).map(|(v, _)| v)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_alive.iter().filter(|&&a| a).count()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (ArcId, &LabeledArc)> + '_ {
        self.arcs.iter().enumerate().filter(|(i, _)| self.arc_alive[*i])
    }

    pub fn num_arcs(&self) -> usize {
        self.arc_alive.iter().filter(|&&a| a).count()
    }

    /// Arc by id, whether or not it is still alive.
    pub fn arc(&self, a: ArcId) -> Result<&LabeledArc> {
        self.arcs.get(a).ok_or(EpError::UnknownArc(a))
    }

    /// Alive incidences of `v`. A self-loop appears once, as a forward step.
    pub fn incidences(&self, v: VertexId) -> impl Iterator<Item = &Incidence> + '_ {
        self.adj[v].iter().filter(|i| self.arc_alive[i.arc])
    }

    /// Distinct neighbours of `v` in the underlying simple graph (loops dropped).
    pub fn neighbors(&self, v: VertexId) -> VertexSet {
        self.incidences(v).map(|i| i.other).filter(|&u| u != v).collect()
    }

    /// Label seen when traversing `a` in direction `dir`.
    pub fn step_label(&self, a: ArcId, dir: Direction) -> GroupElement {
        match dir {
            Direction::Forward => self.arcs[a].label.clone(),
            Direction::Reverse => self.arcs[a].label.inverse(),
        }
    }

    /// Endpoints `(from, to)` of traversing `a` in direction `dir`.
    pub fn step_endpoints(&self, a: ArcId, dir: Direction) -> (VertexId, VertexId) {
        let arc = &self.arcs[a];
        match dir {
            Direction::Forward => (arc.tail, arc.head),
            Direction::Reverse => (arc.head, arc.tail),
        }
    }

    fn check_vertices(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&&v| !self.contains_vertex(v)) {
            Some(&v) => Err(EpError::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    /// `G[s]`: keeps the arcs with both endpoints in `s`; ids are preserved.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<LabeledGraph> {
        self.check_vertices(s)?;
        let mut g = self.clone();
        for v in 0..g.vertex_alive.len() {
            g.vertex_alive[v] = g.vertex_alive[v] && s.contains(&v);
        }
        g.refresh_arcs();
        Ok(g)
    }

    /// `G - x`. Vertices of `x` that are not in the graph are ignored.
    pub fn remove_vertices(&self, x: &VertexSet) -> LabeledGraph {
        let mut g = self.clone();
        for &v in x {
            if v < g.vertex_alive.len() {
                g.vertex_alive[v] = false;
            }
        }
        g.refresh_arcs();
        g
    }

    pub fn remove_arcs(&self, arcs: &BTreeSet<ArcId>) -> LabeledGraph {
        let mut g = self.clone();
        for &a in arcs {
            if a < g.arc_alive.len() {
                g.arc_alive[a] = false;
            }
        }
        g
    }

    fn refresh_arcs(&mut self) {
        for (i, arc) in self.arcs.iter().enumerate() {
            if !(self.vertex_alive[arc.tail] && self.vertex_alive[arc.head]) {
                self.arc_alive[i] = false;
            }
        }
    }

    /// Same structure with every alive label replaced by `f(arc id, arc)`.
    pub fn relabel(&self, mut f: impl FnMut(ArcId, &LabeledArc) -> GroupElement) -> LabeledGraph {
        let mut g = self.clone();
        for (i, arc) in self.arcs.iter().enumerate() {
            if self.arc_alive[i] {
                g.arcs[i].label = f(i, arc);
            }
        }
        g
    }

    /// Connected components of the underlying graph, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.universe()];
        let mut out = Vec::new();
        for root in self.vertices() {
            if seen[root] {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![root];
            seen[root] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for inc in self.incidences(v) {
                    if !seen[inc.other] {
                        seen[inc.other] = true;
                        stack.push(inc.other);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            group: (*self.group).clone(),
            n: self.universe(),
            arcs: self.arcs().map(|(_, a)| (a.tail, a.head, a.label.to_string())).collect(),
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<LabeledGraph> {
        let mut g = LabeledGraph::new(file.group.clone(), file.n)?;
        for (tail, head, label) in &file.arcs {
            let label = GroupElement::parse(&g.group, label)?;
            g.add_arc(*tail, *head, label)?;
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<LabeledGraph> {
        LabeledGraph::from_file(&serde_json::from_str(text)?)
    }
}

/// On-disk graph format: `{"group": spec, "n": count, "arcs": [[tail, head, "label"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub group: GroupSpec,
    pub n: usize,
    pub arcs: Vec<(VertexId, VertexId, String)>,
}

/// Serialized as `[arc_id, "f" | "r"]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(ArcId, Direction)", into = "(ArcId, Direction)")]
pub struct Step {
    pub arc: ArcId,
    pub dir: Direction,
}

impl From<(ArcId, Direction)> for Step {
    fn from((arc, dir): (ArcId, Direction)) -> Step {
        Step { arc, dir }
    }
}

impl From<Step> for (ArcId, Direction) {
    fn from(s: Step) -> (ArcId, Direction) {
        (s.arc, s.dir)
    }
}

/// A walk in the underlying undirected graph, as a start vertex plus oriented
/// steps. Serialized as `{"start": v, "arcs": [[arc_id, dir], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Walk {
    start: VertexId,
    #[serde(rename = "arcs")]
    steps: Vec<Step>,
}

impl Walk {
    pub fn empty(start: VertexId) -> Walk {
        Walk { start, steps: Vec::new() }
    }

    /// Builds a walk, checking that consecutive steps meet.
    pub fn new(g: &LabeledGraph, start: VertexId, steps: Vec<Step>) -> Result<Walk> {
        let w = Walk { start, steps };
        w.validate(g)?;
        Ok(w)
    }

    /// Walk from steps alone; the start is the origin of the first step.
    pub fn from_steps(g: &LabeledGraph, steps: Vec<Step>) -> Result<Walk> {
        let first = steps.first().ok_or_else(|| EpError::InvalidWalk("no steps".into()))?;
        let arc = g.arc(first.arc)?;
        let start = match first.dir {
            Direction::Forward => arc.tail,
            Direction::Reverse => arc.head,
        };
        Walk::new(g, start, steps)
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn validate(&self, g: &LabeledGraph) -> Result<()> {
        if !g.contains_vertex(self.start) {
            return Err(EpError::UnknownVertex(self.start));
        }
        let mut at = self.start;
        for (i, s) in self.steps.iter().enumerate() {
            if !g.contains_arc(s.arc) {
                return Err(EpError::UnknownArc(s.arc));
            }
            let (from, to) = g.step_endpoints(s.arc, s.dir);
            if from != at {
                return Err(EpError::InvalidWalk(format!("step {i} leaves {from} but the walk is at {at}")));
            }
            at = to;
        }
        Ok(())
    }

    /// Vertex sequence, `len() + 1` entries. Assumes the walk is valid in `g`.
    pub fn vertices(&self, g: &LabeledGraph) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.start);
        for s in &self.steps {
            out.push(g.step_endpoints(s.arc, s.dir).1);
        }
        out
    }

    pub fn end(&self, g: &LabeledGraph) -> VertexId {
        self.steps.last().map_or(self.start, |s| g.step_endpoints(s.arc, s.dir).1)
    }

    pub fn is_closed(&self, g: &LabeledGraph) -> bool {
        self.end(g) == self.start
    }

    pub fn vertex_set(&self, g: &LabeledGraph) -> VertexSet {
        self.vertices(g).into_iter().collect()
    }

    pub fn reversed(&self, g: &LabeledGraph) -> Walk {
        Walk {
            start: self.end(g),
            steps: self.steps.iter().rev().map(|s| Step { arc: s.arc, dir: s.dir.flip() }).collect(),
        }
    }

    pub fn concat(&self, g: &LabeledGraph, other: &Walk) -> Result<Walk> {
        if self.end(g) != other.start {
            return Err(EpError::InvalidWalk("walks do not meet".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Walk { start: self.start, steps })
    }

    /// Same closed walk started at step `i`.
    pub fn rotated(&self, g: &LabeledGraph, i: usize) -> Walk {
        let verts = self.vertices(g);
        let mut steps = self.steps[i..].to_vec();
        steps.extend_from_slice(&self.steps[..i]);
        Walk { start: verts[i], steps }
    }

    /// Sub-walk consisting of steps `range`.
    pub fn slice(&self, g: &LabeledGraph, range: std::ops::Range<usize>) -> Walk {
        let verts = self.vertices(g);
        Walk { start: verts[range.start], steps: self.steps[range].to_vec() }
    }

    pub fn arc_set(&self) -> BTreeSet<ArcId> {
        self.steps.iter().map(|s| s.arc).collect()
    }

    pub fn is_cycle(&self, g: &LabeledGraph) -> bool {
        self.check_cycle(g).is_ok()
    }

    fn check_cycle(&self, g: &LabeledGraph) -> Result<()> {
        self.validate(g)?;
        if self.steps.is_empty() {
            return Err(EpError::NotACycle("empty walk".into()));
        }
        if !self.is_closed(g) {
            return Err(EpError::NotACycle("walk is not closed".into()));
        }
        let verts = self.vertices(g);
        let inner: VertexSet = verts[..verts.len() - 1].iter().copied().collect();
        if inner.len() != self.steps.len() {
            return Err(EpError::NotACycle("repeated vertex".into()));
        }
        if self.arc_set().len() != self.steps.len() {
            return Err(EpError::NotACycle("repeated arc".into()));
        }
        Ok(())
    }

    pub fn is_path(&self, g: &LabeledGraph) -> bool {
        self.validate(g).is_ok() && self.vertex_set(g).len() == self.steps.len() + 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": "non_null_cycle",
            "arcs": self.steps.iter().map(|s| (s.arc, s.dir)).collect::<Vec<_>>(),
        })
    }
}

/// `Λ(w)`: ordered product of the step labels; identity for the empty walk.
pub fn walk_value(g: &LabeledGraph, w: &Walk) -> Result<GroupElement> {
    w.validate(g)?;
    Ok(w.steps.iter().fold(g.identity(), |acc, s| acc.multiply(&g.step_label(s.arc, s.dir))))
}

/// Whether the cycle `c` has a non-identity value. Errors if `c` is not a cycle.
pub fn is_non_null_cycle(g: &LabeledGraph, c: &Walk) -> Result<bool> {
    c.check_cycle(g)?;
    Ok(!walk_value(g, c)?.is_identity())
}

pub fn induced_subgraph(g: &LabeledGraph, s: &VertexSet) -> Result<LabeledGraph> {
    g.induced_subgraph(s)
}

/// Ordered pair `(A, B)` covering the vertex set with no arc between `A \ B` and `B \ A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Separation {
    pub fn new(a: VertexSet, b: VertexSet) -> Separation {
        Separation { a, b }
    }

    pub fn separator(&self) -> VertexSet {
        self.a.intersection(&self.b).copied().collect()
    }

    pub fn order(&self) -> usize {
        self.a.intersection(&self.b).count()
    }

    pub fn a_only(&self) -> VertexSet {
        self.a.difference(&self.b).copied().collect()
    }

    pub fn b_only(&self) -> VertexSet {
        self.b.difference(&self.a).copied().collect()
    }

    pub fn is_valid(&self, g: &LabeledGraph) -> bool {
        let union: VertexSet = self.a.union(&self.b).copied().collect();
        if union != g.vertex_set() {
            return false;
        }
        let a_only = self.a_only();
        let b_only = self.b_only();
        g.arcs().all(|(_, arc)| {
            !((a_only.contains(&arc.tail) && b_only.contains(&arc.head))
                || (b_only.contains(&arc.tail) && a_only.contains(&arc.head)))
        })
    }
}

/// Block-cut decomposition of the underlying graph: blocks as vertex sets
/// (isolated vertices form singleton blocks) and the set of cut vertices.
/// Self-loops are ignored.
pub fn blocks_and_cut_vertices(g: &LabeledGraph) -> (Vec<VertexSet>, VertexSet) {
    let n = g.universe();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut blocks: Vec<VertexSet> = Vec::new();
    let mut cuts = VertexSet::new();
    let mut edge_stack: Vec<(VertexId, VertexId)> = Vec::new();

    for root in g.vertices() {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // Iterative DFS frames: (vertex, arc used to enter, next incidence index).
        let mut frames: Vec<(VertexId, Option<ArcId>, usize)> = vec![(root, None, 0)];
        let mut root_children = 0usize;
        let mut had_edge = false;
        while let Some(frame) = frames.last_mut() {
            let (v, parent_arc) = (frame.0, frame.1);
            let mut next = None;
            while frame.2 < g.adj[v].len() {
                let inc = g.adj[v][frame.2];
                frame.2 += 1;
                if g.arc_alive[inc.arc] && inc.other != v {
                    next = Some(inc);
                    break;
                }
            }
            match next {
                Some(inc) => {
                    if Some(inc.arc) == parent_arc {
                        continue;
                    }
                    let u = inc.other;
                    had_edge = true;
                    if disc[u] == usize::MAX {
                        edge_stack.push((v, u));
                        disc[u] = time;
                        low[u] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        frames.push((u, Some(inc.arc), 0));
                    } else if disc[u] < disc[v] {
                        edge_stack.push((v, u));
                        low[v] = low[v].min(disc[u]);
                    }
                }
                None => {
                    frames.pop();
                    if let Some(&(p, _, _)) = frames.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            if p != root {
                                cuts.insert(p);
                            }
                            let mut block = VertexSet::new();
                            while let Some((a, b)) = edge_stack.pop() {
                                block.insert(a);
                                block.insert(b);
                                if (a, b) == (p, v) {
                                    break;
                                }
                            }
                            blocks.push(block);
                        }
                    }
                }
            }
        }
        if root_children > 1 {
            cuts.insert(root);
        }
        if !had_edge {
            blocks.push(VertexSet::from([root]));
        }
    }
    blocks.sort();
    (blocks, cuts)
}

/// Map from each vertex to the dense index it gets among the alive vertices.
pub(crate) fn dense_index(g: &LabeledGraph) -> (Vec<VertexId>, BTreeMap<VertexId, usize>) {
    let verts: Vec<VertexId> = g.vertices().collect();
    let index = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    (verts, index)
}
