//! Consistent labelings, cleanliness, untangling and non-null cycle/path search.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{EpError, Result};
use crate::flow;
use crate::graph::{blocks_and_cut_vertices, walk_value, ArcId, Direction, LabeledGraph, Step, VertexId, VertexSet, Walk};
use crate::group::GroupElement;

/// Vertex potentials with `λ(head) = λ(tail) · Λ(arc)` on every arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistentLabeling {
    labels: BTreeMap<VertexId, GroupElement>,
}

impl ConsistentLabeling {
    pub fn get(&self, v: VertexId) -> Option<&GroupElement> {
        self.labels.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &GroupElement)> {
        self.labels.iter()
    }

    /// Checks the arc equation on every arc with both ends labeled.
    pub fn is_consistent_on(&self, g: &LabeledGraph) -> bool {
        g.arcs().all(|(_, arc)| match (self.labels.get(&arc.tail), self.labels.get(&arc.head)) {
            (Some(t), Some(h)) => t.multiply(&arc.label) == *h,
            _ => true,
        })
    }
}

#[derive(Clone, Debug)]
pub enum LabelingOutcome {
    Consistent(ConsistentLabeling),
    NonNullCycle(Walk),
}

/// Labels each component from its lowest vertex (identity) along a BFS tree,
/// then checks the remaining arcs in id order. The first violated arc closes a
/// non-null cycle with the tree.
pub fn find_consistent_labeling(g: &LabeledGraph) -> LabelingOutcome {
    let n = g.universe();
    let mut label: Vec<Option<GroupElement>> = vec![None; n];
    let mut parent: Vec<Option<Step>> = vec![None; n];
    let mut tree_arc = vec![false; g.arc_universe()];
    for root in g.vertices() {
        if label[root].is_some() {
            continue;
        }
        label[root] = Some(g.identity());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let lv = label[v].clone().expect("queued vertices are labeled");
            for inc in g.incidences(v) {
                if label[inc.other].is_none() {
                    label[inc.other] = Some(lv.multiply(&g.step_label(inc.arc, inc.dir)));
                    parent[inc.other] = Some(Step { arc: inc.arc, dir: inc.dir });
                    tree_arc[inc.arc] = true;
                    queue.push_back(inc.other);
                }
            }
        }
    }
    for (id, arc) in g.arcs() {
        if tree_arc[id] {
            continue;
        }
        let expected = label[arc.tail].as_ref().unwrap().multiply(&arc.label);
        if &expected != label[arc.head].as_ref().unwrap() {
            return LabelingOutcome::NonNullCycle(tree_cycle(g, &parent, id));
        }
    }
    let labels = g.vertices().map(|v| (v, label[v].clone().unwrap())).collect();
    LabelingOutcome::Consistent(ConsistentLabeling { labels })
}

/// The cycle made of non-tree arc `a` and the tree path between its ends.
fn tree_cycle(g: &LabeledGraph, parent: &[Option<Step>], a: usize) -> Walk {
    let arc = g.arc(a).expect("alive arc");
    let (x, y) = (arc.tail, arc.head);
    let chain = |mut v: VertexId| {
        let mut out = vec![v];
        while let Some(s) = parent[v] {
            v = g.step_endpoints(s.arc, s.dir).0;
            out.push(v);
        }
        out
    };
    let up_x = chain(x);
    let up_y = chain(y);
    let on_x: VertexSet = up_x.iter().copied().collect();
    let lca = *up_y.iter().find(|v| on_x.contains(v)).expect("same component");
    let mut steps = vec![Step { arc: a, dir: Direction::Forward }];
    for &v in up_y.iter().take_while(|&&v| v != lca) {
        let s = parent[v].unwrap();
        steps.push(Step { arc: s.arc, dir: s.dir.flip() });
    }
    let down: Vec<VertexId> = up_x.iter().copied().take_while(|&v| v != lca).collect();
    for &v in down.iter().rev() {
        steps.push(parent[v].unwrap());
    }
    Walk::new(g, x, steps).expect("tree cycle is a walk")
}

/// Some non-null cycle of `g`, if one exists.
pub fn non_null_cycle(g: &LabeledGraph) -> Option<Walk> {
    match find_consistent_labeling(g) {
        LabelingOutcome::Consistent(_) => None,
        LabelingOutcome::NonNullCycle(c) => Some(c),
    }
}

/// Whether `G[s]` has no non-null cycle. Vertices outside the graph are ignored.
pub fn is_clean(g: &LabeledGraph, s: &VertexSet) -> bool {
    let s: VertexSet = s.iter().copied().filter(|&v| g.contains_vertex(v)).collect();
    non_null_cycle(&g.induced_subgraph(&s).expect("filtered to alive vertices")).is_none()
}

pub fn is_clean_graph(g: &LabeledGraph) -> bool {
    non_null_cycle(g).is_none()
}

/// Relabels so that every arc inside `a` carries the identity: with `λ` a
/// consistent labeling of `G[a]`, an arc `(u, v)` becomes `λ(u) · Λ · λ(v)⁻¹`
/// (taking `λ = 1` outside `a`).
pub fn untangle(g: &LabeledGraph, a: &VertexSet) -> Result<LabeledGraph> {
    let sub = g.induced_subgraph(a)?;
    let lambda = match find_consistent_labeling(&sub) {
        LabelingOutcome::Consistent(l) => l,
        LabelingOutcome::NonNullCycle(_) => return Err(EpError::NotClean),
    };
    let id = g.identity();
    let pot = |v: VertexId| lambda.get(v).cloned().unwrap_or_else(|| id.clone());
    Ok(g.relabel(|_, arc| pot(arc.tail).multiply(&arc.label).multiply(&pot(arc.head).inverse())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GfvsCertificate {
    pub vertices: VertexSet,
    pub verified: bool,
}

impl GfvsCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "kind": "gfvs", "vertices": self.vertices })
    }
}

pub fn verify_gfvs(g: &LabeledGraph, x: &VertexSet) -> GfvsCertificate {
    GfvsCertificate { vertices: x.clone(), verified: is_clean_graph(&g.remove_vertices(x)) }
}

/// Exact search for a simple `u`–`v` path with non-identity value, pruning
/// repeated `(vertex, value, visited)` states.
pub fn non_null_path_exists(g: &LabeledGraph, u: VertexId, v: VertexId) -> Option<Walk> {
    if u == v || !g.contains_vertex(u) || !g.contains_vertex(v) {
        return None;
    }
    struct Search<'a> {
        g: &'a LabeledGraph,
        target: VertexId,
        visited: Vec<u64>,
        steps: Vec<Step>,
        dead: HashSet<(VertexId, GroupElement, Vec<u64>)>,
    }
    impl Search<'_> {
        fn go(&mut self, at: VertexId, value: GroupElement) -> bool {
            if at == self.target {
                return !value.is_identity();
            }
            let key = (at, value.clone(), self.visited.clone());
            if self.dead.contains(&key) {
                return false;
            }
            let incs: Vec<_> = self.g.incidences(at).copied().collect();
            for inc in incs {
                let w = inc.other;
                if self.visited[w / 64] >> (w % 64) & 1 == 1 {
                    continue;
                }
                self.visited[w / 64] |= 1 << (w % 64);
                self.steps.push(Step { arc: inc.arc, dir: inc.dir });
                if self.go(w, value.multiply(&self.g.step_label(inc.arc, inc.dir))) {
                    return true;
                }
                self.steps.pop();
                self.visited[w / 64] &= !(1 << (w % 64));
            }
            self.dead.insert(key);
            false
        }
    }
    let mut s = Search {
        g,
        target: v,
        visited: vec![0; g.universe().div_ceil(64)],
        steps: Vec::new(),
        dead: HashSet::new(),
    };
    s.visited[u / 64] |= 1 << (u % 64);
    if s.go(u, g.identity()) {
        Some(Walk::new(g, u, s.steps).expect("search builds walks"))
    } else {
        None
    }
}

/// A non-null cycle using only steps of the closed walk `w`, found by
/// splitting at the earliest repeated vertex and keeping a non-null half.
pub fn extract_non_null_cycle(g: &LabeledGraph, w: &Walk) -> Result<Walk> {
    if !w.is_closed(g) {
        return Err(EpError::InvalidWalk("walk is not closed".into()));
    }
    if walk_value(g, w)?.is_identity() {
        return Err(EpError::InvalidWalk("closed walk has identity value".into()));
    }
    let mut cur = w.clone();
    loop {
        if cur.is_cycle(g) {
            return Ok(cur);
        }
        let verts = cur.vertices(g);
        let last = verts.len() - 1;
        let mut split = None;
        'scan: for j in 1..=last {
            for i in 0..j {
                if verts[i] == verts[j] && !(i == 0 && j == last) {
                    split = Some((i, j));
                    break 'scan;
                }
            }
        }
        let (i, j) = split.expect("a closed non-cycle walk repeats a vertex");
        let inner = cur.slice(g, i..j);
        if !walk_value(g, &inner)?.is_identity() {
            cur = inner;
        } else {
            let mut steps = cur.steps()[..i].to_vec();
            steps.extend_from_slice(&cur.steps()[j..]);
            cur = Walk::new(g, cur.start(), steps)?;
        }
    }
}

/// A non-null cycle through `r`, if any. Every cycle of length at least two
/// through `r` lives in one block; a block with a non-null cycle `C` not
/// containing `r` gives two disjoint paths from `r` to `C`, and one of the two
/// ways around `C` closes a non-null cycle.
pub fn non_null_cycle_through(g: &LabeledGraph, r: VertexId) -> Option<Walk> {
    if !g.contains_vertex(r) {
        return None;
    }
    for inc in g.incidences(r) {
        if inc.other == r && !g.arc(inc.arc).unwrap().label.is_identity() {
            return Some(Walk::new(g, r, vec![Step { arc: inc.arc, dir: inc.dir }]).expect("loop at r"));
        }
    }
    let (blocks, _) = blocks_and_cut_vertices(g);
    for block in blocks.iter().filter(|b| b.len() >= 2 && b.contains(&r)) {
        let sub = g.induced_subgraph(block).expect("block of g");
        let loops = sub.arcs().filter(|(_, a)| a.tail == a.head).map(|(id, _)| id).collect();
        let sub = sub.remove_arcs(&loops);
        let Some(c) = non_null_cycle(&sub) else { continue };
        let cverts = c.vertices(&sub);
        if let Some(pos) = cverts.iter().position(|&v| v == r) {
            return Some(c.rotated(&sub, pos));
        }
        let on_c: VertexSet = cverts.iter().copied().collect();
        let paths = flow::fan(&sub, r, &on_c, 2);
        assert_eq!(paths.len(), 2, "a block with at least three vertices is 2-connected");
        let (a, b) = (paths[0].end(&sub), paths[1].end(&sub));
        let c = c.rotated(&sub, cverts.iter().position(|&v| v == a).unwrap());
        let cv = c.vertices(&sub);
        let bi = cv.iter().position(|&v| v == b).unwrap();
        let one_way = c.slice(&sub, 0..bi);
        let other_way = c.slice(&sub, bi..c.len()).reversed(&sub);
        let back = paths[1].reversed(&sub);
        for side in [one_way, other_way] {
            let closed = paths[0].concat(&sub, &side).unwrap().concat(&sub, &back).unwrap();
            if !walk_value(&sub, &closed).unwrap().is_identity() {
                return Some(closed);
            }
        }
        unreachable!("two identity detours would make C null");
    }
    None
}

/// A non-null path with both ends in `s` and no interior vertex in `s`.
pub fn non_null_s_path(g: &LabeledGraph, s: &VertexSet) -> Option<Walk> {
    let mut h = g.clone();
    let r = h.add_vertex();
    let id = h.identity();
    for &v in s.iter().filter(|&&v| g.contains_vertex(v)) {
        h.add_arc(r, v, id.clone()).expect("alive vertex");
    }
    let c = non_null_cycle_through(&h, r)?;
    let inner = Walk::new(g, c.vertices(&h)[1], c.steps()[1..c.len() - 1].to_vec()).expect("interior avoids r");
    let verts = inner.vertices(g);
    let cuts: Vec<usize> = (0..verts.len()).filter(|&i| s.contains(&verts[i])).collect();
    for pair in cuts.windows(2) {
        let seg = inner.slice(g, pair[0]..pair[1]);
        if !walk_value(g, &seg).unwrap().is_identity() {
            return Some(seg);
        }
    }
    unreachable!("segments multiply to a non-identity value")
}

/// Arcs lying on at least one non-null cycle: non-identity self-loops and the
/// arcs of blocks (loops ignored) that contain a non-null cycle. Subdividing
/// an arc of such a block keeps it 2-connected and non-clean, so the new
/// vertex lies on a non-null cycle, which then runs through the arc.
pub fn arcs_on_non_null_cycles(g: &LabeledGraph) -> BTreeSet<ArcId> {
    let mut keep = BTreeSet::new();
    for (id, arc) in g.arcs() {
        if arc.tail == arc.head && !arc.label.is_identity() {
            keep.insert(id);
        }
    }
    let (blocks, _) = blocks_and_cut_vertices(g);
    for block in blocks.iter().filter(|b| b.len() >= 2) {
        let sub = g.induced_subgraph(block).expect("block of g");
        let loops = sub.arcs().filter(|(_, a)| a.tail == a.head).map(|(id, _)| id).collect();
        let sub = sub.remove_arcs(&loops);
        if !is_clean_graph(&sub) {
            keep.extend(sub.arcs().map(|(id, _)| id));
        }
    }
    keep
}
