//! Brute-force reference code shared by the integration tests. Nothing here
//! calls the library's algorithms; only graph accessors and group products.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use epkit::{ArcId, Direction, GroupElement, GroupSpec, LabeledGraph, VertexId, VertexSet, Walk};
use rand::Rng;

pub fn random_graph<R: Rng>(rng: &mut R, spec: &GroupSpec, n: usize, m: usize, loops: bool) -> LabeledGraph {
    let spec = Arc::new(spec.clone());
    let elements = GroupElement::enumerate(&spec).unwrap();
    let mut g = LabeledGraph::with_group(spec, n);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let v = if loops && rng.gen_bool(0.05) { u } else { rng.gen_range(0..n) };
        if u == v && !loops {
            continue;
        }
        let label = elements[rng.gen_range(0..elements.len())].clone();
        g.add_arc(u, v, label).unwrap();
    }
    g
}

/// Labels every arc `(u, v)` with `λ(u)⁻¹ · λ(v)` for a random `λ`, so the
/// result is clean but generally not identity-labeled.
pub fn gauge_label<R: Rng>(rng: &mut R, spec: &Arc<GroupSpec>, pairs: &[(usize, usize)], g: &mut LabeledGraph) {
    let elements = GroupElement::enumerate(spec).unwrap();
    let lambda: BTreeMap<usize, GroupElement> =
        g.vertices().map(|v| (v, elements[rng.gen_range(0..elements.len())].clone())).collect();
    for &(u, v) in pairs {
        g.add_arc(u, v, lambda[&u].inverse().multiply(&lambda[&v])).unwrap();
    }
}

fn step(g: &LabeledGraph, arc: ArcId, from: VertexId) -> (VertexId, GroupElement) {
    let a = g.arc(arc).unwrap();
    if a.tail == from {
        (a.head, a.label.clone())
    } else {
        assert_eq!(a.head, from);
        (a.tail, a.label.inverse())
    }
}

/// Vertex sequence and value of a walk, or `None` if it is broken.
pub fn trace(g: &LabeledGraph, w: &Walk) -> Option<(Vec<VertexId>, GroupElement)> {
    let mut at = w.start();
    if !g.contains_vertex(at) {
        return None;
    }
    let mut verts = vec![at];
    let mut value = GroupElement::identity(g.group());
    for s in w.steps() {
        if !g.contains_arc(s.arc) {
            return None;
        }
        let a = g.arc(s.arc).unwrap();
        let (from, to, label) = match s.dir {
            Direction::Forward => (a.tail, a.head, a.label.clone()),
            Direction::Reverse => (a.head, a.tail, a.label.inverse()),
        };
        if from != at {
            return None;
        }
        value = value.multiply(&label);
        at = to;
        verts.push(at);
    }
    Some((verts, value))
}

/// A closed walk with no repeated vertex or arc and a non-identity value.
pub fn is_non_null_simple_cycle(g: &LabeledGraph, w: &Walk) -> bool {
    let Some((verts, value)) = trace(g, w) else { return false };
    if w.steps().is_empty() || verts.first() != verts.last() {
        return false;
    }
    let inner: BTreeSet<_> = verts[1..].iter().collect();
    let arcs: BTreeSet<_> = w.steps().iter().map(|s| s.arc).collect();
    inner.len() == verts.len() - 1 && arcs.len() == w.steps().len() && !value.is_identity()
}

/// Non-null simple path with distinct ends in `s` and no interior vertex in `s`.
pub fn is_non_null_s_path(g: &LabeledGraph, s: &VertexSet, w: &Walk) -> bool {
    let Some((verts, value)) = trace(g, w) else { return false };
    let distinct: BTreeSet<_> = verts.iter().collect();
    verts.len() >= 2
        && distinct.len() == verts.len()
        && s.contains(&verts[0])
        && s.contains(verts.last().unwrap())
        && verts[1..verts.len() - 1].iter().all(|v| !s.contains(v))
        && !value.is_identity()
}

/// Every simple cycle as `(arc set, vertex set, non-null)`.
pub fn all_cycles(g: &LabeledGraph) -> Vec<(BTreeSet<ArcId>, VertexSet, bool)> {
    let mut out: BTreeMap<BTreeSet<ArcId>, (VertexSet, bool)> = BTreeMap::new();
    let verts: Vec<VertexId> = g.vertices().collect();
    for &s in &verts {
        let mut path_arcs = Vec::new();
        let mut path_verts = vec![s];
        let id = GroupElement::identity(g.group());
        dfs(g, s, s, &id, &mut path_arcs, &mut path_verts, &mut out);
    }
    out.into_iter().map(|(a, (v, nn))| (a, v, nn)).collect()
}

fn dfs(
    g: &LabeledGraph,
    s: VertexId,
    at: VertexId,
    value: &GroupElement,
    arcs: &mut Vec<ArcId>,
    verts: &mut Vec<VertexId>,
    out: &mut BTreeMap<BTreeSet<ArcId>, (VertexSet, bool)>,
) {
    let incident: Vec<ArcId> = g.arcs().filter(|(_, a)| a.tail == at || a.head == at).map(|(id, _)| id).collect();
    for arc in incident {
        if arcs.contains(&arc) {
            continue;
        }
        let a = g.arc(arc).unwrap();
        if a.tail == a.head {
            if at == s && arcs.is_empty() {
                out.insert(BTreeSet::from([arc]), (VertexSet::from([s]), !a.label.is_identity()));
            }
            continue;
        }
        let (next, label) = step(g, arc, at);
        let value = value.multiply(&label);
        if next == s {
            let set: BTreeSet<ArcId> = arcs.iter().copied().chain([arc]).collect();
            out.insert(set, (verts.iter().copied().collect(), !value.is_identity()));
            continue;
        }
        if next < s || verts.contains(&next) {
            continue;
        }
        arcs.push(arc);
        verts.push(next);
        dfs(g, s, next, &value, arcs, verts, out);
        arcs.pop();
        verts.pop();
    }
}

pub fn non_null_cycle_sets(g: &LabeledGraph) -> BTreeSet<BTreeSet<ArcId>> {
    all_cycles(g).into_iter().filter(|c| c.2).map(|c| c.0).collect()
}

/// Clean test by potentials: BFS assigns `λ`, then every arc must agree.
pub fn is_clean(g: &LabeledGraph) -> bool {
    let mut lambda: BTreeMap<VertexId, GroupElement> = BTreeMap::new();
    for r in g.vertices() {
        if lambda.contains_key(&r) {
            continue;
        }
        lambda.insert(r, GroupElement::identity(g.group()));
        let mut queue = VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            for (id, a) in g.arcs() {
                if a.tail != u && a.head != u {
                    continue;
                }
                let (v, label) = step(g, id, u);
                let want = lambda[&u].multiply(&label);
                match lambda.get(&v) {
                    Some(have) if *have != want => return false,
                    Some(_) => {}
                    None => {
                        lambda.insert(v, want);
                        queue.push_back(v);
                    }
                }
            }
        }
    }
    true
}

pub fn is_gfvs(g: &LabeledGraph, x: &VertexSet) -> bool {
    x.iter().all(|&v| g.contains_vertex(v)) && is_clean(&g.remove_vertices(x))
}

/// Every simple non-null path with distinct ends in `s` and interior outside `s`,
/// as vertex sets (one entry per path, duplicates allowed).
pub fn non_null_s_paths(g: &LabeledGraph, s: &VertexSet) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for &a in s {
        if !g.contains_vertex(a) {
            continue;
        }
        let mut verts = vec![a];
        let id = GroupElement::identity(g.group());
        s_path_dfs(g, s, a, a, &id, &mut verts, &mut out);
    }
    out
}

fn s_path_dfs(
    g: &LabeledGraph,
    s: &VertexSet,
    start: VertexId,
    at: VertexId,
    value: &GroupElement,
    verts: &mut Vec<VertexId>,
    out: &mut Vec<VertexSet>,
) {
    let incident: Vec<ArcId> =
        g.arcs().filter(|(_, a)| a.tail != a.head && (a.tail == at || a.head == at)).map(|(id, _)| id).collect();
    for arc in incident {
        let (next, label) = step(g, arc, at);
        if verts.contains(&next) {
            continue;
        }
        let value = value.multiply(&label);
        if s.contains(&next) {
            if next > start && !value.is_identity() {
                out.push(verts.iter().copied().chain([next]).collect());
            }
            continue;
        }
        verts.push(next);
        s_path_dfs(g, s, start, next, &value, verts, out);
        verts.pop();
    }
}

/// Maximum number of pairwise vertex-disjoint sets among `sets`.
pub fn max_disjoint(sets: &[VertexSet]) -> usize {
    let mut uniq: Vec<VertexSet> = sets.to_vec();
    uniq.sort();
    uniq.dedup();
    fn go(sets: &[VertexSet], i: usize, used: &VertexSet, best: &mut usize, cur: usize) {
        if cur + (sets.len() - i) <= *best {
            return;
        }
        if i == sets.len() {
            *best = cur;
            return;
        }
        if sets[i].is_disjoint(used) {
            let mut u = used.clone();
            u.extend(sets[i].iter().copied());
            go(sets, i + 1, &u, best, cur + 1);
        }
        go(sets, i + 1, used, best, cur);
    }
    let mut best = 0;
    go(&uniq, 0, &VertexSet::new(), &mut best, 0);
    best
}

/// Vertices reachable from `x` in `g - s`.
pub fn reach(g: &LabeledGraph, x: &VertexSet, s: &VertexSet) -> VertexSet {
    let mut seen: VertexSet = x.difference(s).copied().collect();
    let mut stack: Vec<VertexId> = seen.iter().copied().collect();
    while let Some(u) = stack.pop() {
        for (_, a) in g.arcs() {
            let v = if a.tail == u {
                a.head
            } else if a.head == u {
                a.tail
            } else {
                continue;
            };
            if !s.contains(&v) && seen.insert(v) {
                stack.push(v);
            }
        }
    }
    seen
}

pub fn subsets(items: &[VertexId], max: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for mask in 0u64..1 << items.len() {
        if (mask.count_ones() as usize) <= max {
            out.push(items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
        }
    }
    out
}

/// All partitions of `items` into at least two blocks.
pub fn partitions(items: &[VertexId]) -> Vec<Vec<VertexSet>> {
    fn go(items: &[VertexId], i: usize, blocks: &mut Vec<VertexSet>, out: &mut Vec<Vec<VertexSet>>) {
        if i == items.len() {
            if blocks.len() >= 2 {
                out.push(blocks.clone());
            }
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].insert(items[i]);
            go(items, i + 1, blocks, out);
            blocks[b].remove(&items[i]);
        }
        blocks.push(VertexSet::from([items[i]]));
        go(items, i + 1, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(items, 0, &mut Vec::new(), &mut out);
    out
}

/// `s` separates every pair of blocks of `parts`.
pub fn is_multiway_cut(g: &LabeledGraph, parts: &[VertexSet], s: &VertexSet) -> bool {
    for (i, p) in parts.iter().enumerate() {
        let r = reach(g, p, s);
        if parts.iter().enumerate().any(|(j, q)| j != i && q.iter().any(|v| !s.contains(v) && r.contains(v))) {
            return false;
        }
    }
    true
}
