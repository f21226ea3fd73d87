//! Non-null S-paths, clique expansions and the clique branch of the solver.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::cuts::{find_irrelevant_vertex, IrrelevantVertex, ThresholdMode};
use crate::cycles::{extract_non_null_cycle, is_clean, is_clean_graph, non_null_cycle, non_null_s_path, untangle};
use crate::decomposition::{Integrality, PackingCertificate};
use crate::error::{EpError, Result};
use crate::graph::{blocks_and_cut_vertices, dense_index, walk_value, ArcId, Direction, LabeledGraph, Separation, Step, VertexId, VertexSet, Walk};
use crate::oracle::for_each_subset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SPathDuality {
    Paths { paths: Vec<Walk> },
    HittingSet { vertices: VertexSet },
}

/// Step budget for the exact disjoint-path search.
pub const PATH_SEARCH_BUDGET: u64 = 20_000_000;

/// Either `k` vertex-disjoint non-null `s`-paths, or a set of at most
/// `2k - 2` vertices meeting every non-null `s`-path.
///
/// A smallest hitting set of size at most `2k - 2` is looked up first; below
/// `k` it already rules out `k` disjoint paths. Otherwise the paths are
/// searched for exactly, and must exist when no such hitting set does.
pub fn non_null_s_paths_or_hitting_set(g: &LabeledGraph, s: &VertexSet, k: usize) -> Result<SPathDuality> {
    if k == 0 {
        return Err(EpError::Precondition("k must be positive".into()));
    }
    let s: VertexSet = s.iter().copied().filter(|&v| g.contains_vertex(v)).collect();
    let hitting = min_hitting_set(g, &s, 2 * k - 2);
    if let Some(x) = &hitting {
        if x.len() < k {
            return Ok(SPathDuality::HittingSet { vertices: x.clone() });
        }
    }
    match disjoint_s_paths(g, &s, k)? {
        Some(paths) => Ok(SPathDuality::Paths { paths }),
        None => match hitting {
            Some(vertices) => Ok(SPathDuality::HittingSet { vertices }),
            None => unreachable!("no hitting set of size 2k-2 forces k disjoint paths"),
        },
    }
}

fn min_hitting_set(g: &LabeledGraph, s: &VertexSet, max: usize) -> Option<VertexSet> {
    let verts: Vec<VertexId> = g.vertices().collect();
    let n = verts.len();
    for size in 0..=max.min(n) {
        let mut found = None;
        for_each_subset(n, size, &mut |m| {
            let x: VertexSet = (0..n).filter(|i| m >> i & 1 == 1).map(|i| verts[i]).collect();
            let rest: VertexSet = s.difference(&x).copied().collect();
            if non_null_s_path(&g.remove_vertices(&x), &rest).is_none() {
                found = Some(x);
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Exact search for `k` disjoint non-null `s`-paths (ends in `s`, interior
/// outside `s`). Ends are assigned in increasing vertex order: the smallest
/// open vertex of `s` is either left unused or paired with a larger one.
pub fn disjoint_s_paths(g: &LabeledGraph, s: &VertexSet, k: usize) -> Result<Option<Vec<Walk>>> {
    struct Search<'a> {
        g: &'a LabeledGraph,
        s: &'a VertexSet,
        order: Vec<VertexId>,
        used: Vec<bool>,
        dead: HashSet<(usize, usize, Vec<bool>)>,
        budget: u64,
        chosen: Vec<Walk>,
    }
    impl Search<'_> {
        fn tick(&mut self) -> Result<()> {
            if self.budget == 0 {
                return Err(EpError::GuardExceeded("disjoint S-path search budget".into()));
            }
            self.budget -= 1;
            Ok(())
        }

        fn go(&mut self, i: usize, need: usize) -> Result<bool> {
            if need == 0 {
                return Ok(true);
            }
            let open = self.order[i..].iter().filter(|&&v| !self.used[v]).count();
            if open < 2 * need {
                return Ok(false);
            }
            let key = (i, need, self.used.clone());
            if self.dead.contains(&key) {
                return Ok(false);
            }
            self.tick()?;
            let rest: VertexSet = self.g.vertices().filter(|&v| !self.used[v]).collect();
            let open_s: VertexSet = self.order[i..].iter().copied().filter(|&v| !self.used[v]).collect();
            if non_null_s_path(&self.g.induced_subgraph(&rest).unwrap(), &open_s).is_none() {
                self.dead.insert(key);
                return Ok(false);
            }
            let v = self.order[i];
            if !self.used[v] {
                self.used[v] = true;
                let mut steps = Vec::new();
                if self.extend(v, v, self.g.identity(), &mut steps, i, need)? {
                    return Ok(true);
                }
                self.used[v] = false;
            }
            if self.go(i + 1, need)? {
                return Ok(true);
            }
            self.dead.insert(key);
            Ok(false)
        }

        #[allow(clippy::too_many_arguments)]
        fn extend(
            &mut self,
            start: VertexId,
            at: VertexId,
            value: crate::group::GroupElement,
            steps: &mut Vec<Step>,
            i: usize,
            need: usize,
        ) -> Result<bool> {
            self.tick()?;
            let incs: Vec<_> = self.g.incidences(at).copied().collect();
            for inc in incs {
                let w = inc.other;
                if self.used[w] || w == at {
                    continue;
                }
                let next = value.multiply(&self.g.step_label(inc.arc, inc.dir));
                steps.push(Step { arc: inc.arc, dir: inc.dir });
                self.used[w] = true;
                if self.s.contains(&w) {
                    if w > start && !next.is_identity() {
                        self.chosen.push(Walk::new(self.g, start, steps.clone()).unwrap());
                        if self.go(i + 1, need - 1)? {
                            return Ok(true);
                        }
                        self.chosen.pop();
                    }
                } else if self.extend(start, w, next, steps, i, need)? {
                    return Ok(true);
                }
                self.used[w] = false;
                steps.pop();
            }
            Ok(false)
        }
    }
    let mut search = Search {
        g,
        s,
        order: s.iter().copied().collect(),
        used: vec![false; g.universe()],
        dead: HashSet::new(),
        budget: PATH_SEARCH_BUDGET,
        chosen: Vec::new(),
    };
    if search.go(0, k)? {
        Ok(Some(search.chosen))
    } else {
        Ok(None)
    }
}

/// A `K_ℓ`-expansion: disjoint trees (supernodes), one arc between each pair
/// of trees, and a chosen center vertex in each tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueExpansion {
    pub supernodes: BTreeMap<usize, VertexSet>,
    pub tree_edges: BTreeMap<usize, BTreeSet<ArcId>>,
    pub edge_map: BTreeMap<(usize, usize), ArcId>,
    pub centers: BTreeMap<usize, VertexId>,
}

/// On-disk form; `edge_map` keys are written `"i-j"` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionFile {
    pub supernodes: BTreeMap<usize, Vec<VertexId>>,
    pub tree_edges: BTreeMap<usize, Vec<ArcId>>,
    pub edge_map: BTreeMap<String, ArcId>,
    pub centers: BTreeMap<usize, VertexId>,
}

impl CliqueExpansion {
    pub fn order(&self) -> usize {
        self.supernodes.len()
    }

    /// All vertices of all supernodes.
    pub fn vertices(&self) -> VertexSet {
        self.supernodes.values().flatten().copied().collect()
    }

    /// The expansion restricted to the given model vertices, renumbered from 0.
    pub fn restrict(&self, model: &[usize]) -> CliqueExpansion {
        let pos: BTreeMap<usize, usize> = model.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut edge_map = BTreeMap::new();
        for (&(a, b), &arc) in &self.edge_map {
            if let (Some(&i), Some(&j)) = (pos.get(&a), pos.get(&b)) {
                edge_map.insert((i.min(j), i.max(j)), arc);
            }
        }
        CliqueExpansion {
            supernodes: model.iter().enumerate().map(|(i, m)| (i, self.supernodes[m].clone())).collect(),
            tree_edges: model.iter().enumerate().map(|(i, m)| (i, self.tree_edges[m].clone())).collect(),
            edge_map,
            centers: model.iter().enumerate().map(|(i, m)| (i, self.centers[m])).collect(),
        }
    }

    pub fn to_file(&self) -> ExpansionFile {
        ExpansionFile {
            supernodes: self.supernodes.iter().map(|(&k, v)| (k, v.iter().copied().collect())).collect(),
            tree_edges: self.tree_edges.iter().map(|(&k, v)| (k, v.iter().copied().collect())).collect(),
            edge_map: self.edge_map.iter().map(|(&(a, b), &arc)| (format!("{a}-{b}"), arc)).collect(),
            centers: self.centers.clone(),
        }
    }

    pub fn from_file(file: &ExpansionFile) -> Result<CliqueExpansion> {
        let mut edge_map = BTreeMap::new();
        for (key, &arc) in &file.edge_map {
            let parsed = key
                .split_once('-')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)));
            let Some((a, b)) = parsed else {
                return Err(EpError::Parse(format!("bad edge_map key {key:?}")));
            };
            edge_map.insert((a.min(b), a.max(b)), arc);
        }
        Ok(CliqueExpansion {
            supernodes: file.supernodes.iter().map(|(&k, v)| (k, v.iter().copied().collect())).collect(),
            tree_edges: file.tree_edges.iter().map(|(&k, v)| (k, v.iter().copied().collect())).collect(),
            edge_map,
            centers: file.centers.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("expansion serializes")
    }

    pub fn from_json(text: &str) -> Result<CliqueExpansion> {
        CliqueExpansion::from_file(&serde_json::from_str(text)?)
    }

    /// Every invariant, with the first violation as the error message.
    pub fn check(&self, g: &LabeledGraph, ell: usize) -> std::result::Result<(), String> {
        let model: Vec<usize> = (0..ell).collect();
        for (what, keys) in [
            ("supernodes", self.supernodes.keys().copied().collect::<Vec<_>>()),
            ("tree_edges", self.tree_edges.keys().copied().collect()),
            ("centers", self.centers.keys().copied().collect()),
        ] {
            if keys != model {
                return Err(format!("{what} must be keyed by 0..{ell}"));
            }
        }
        let mut owner = BTreeMap::new();
        for (&m, nodes) in &self.supernodes {
            if nodes.is_empty() {
                return Err(format!("supernode {m} is empty"));
            }
            for &v in nodes {
                if !g.contains_vertex(v) {
                    return Err(format!("supernode {m} holds unknown vertex {v}"));
                }
                if owner.insert(v, m).is_some() {
                    return Err(format!("vertex {v} is in two supernodes"));
                }
            }
            let edges = &self.tree_edges[&m];
            if edges.len() + 1 != nodes.len() {
                return Err(format!("supernode {m} needs {} tree edges", nodes.len() - 1));
            }
            let mut comp: BTreeMap<VertexId, VertexId> = nodes.iter().map(|&v| (v, v)).collect();
            fn find(comp: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
                let p = comp[&v];
                if p == v {
                    return v;
                }
                let r = find(comp, p);
                comp.insert(v, r);
                r
            }
            for &a in edges {
                if !g.contains_arc(a) {
                    return Err(format!("tree edge {a} is not an arc"));
                }
                let arc = g.arc(a).unwrap();
                if !nodes.contains(&arc.tail) || !nodes.contains(&arc.head) {
                    return Err(format!("tree edge {a} leaves supernode {m}"));
                }
                let (x, y) = (find(&mut comp, arc.tail), find(&mut comp, arc.head));
                if x == y {
                    return Err(format!("tree edges of supernode {m} contain a cycle"));
                }
                comp.insert(x, y);
            }
            if !nodes.contains(&self.centers[&m]) {
                return Err(format!("center of {m} is outside its supernode"));
            }
        }
        let expected: Vec<(usize, usize)> = (0..ell).flat_map(|a| (a + 1..ell).map(move |b| (a, b))).collect();
        if self.edge_map.keys().copied().collect::<Vec<_>>() != expected {
            return Err("edge_map must hold exactly one arc per model edge".into());
        }
        for (&(a, b), &arc) in &self.edge_map {
            if !g.contains_arc(arc) {
                return Err(format!("model edge {a}-{b} maps to unknown arc {arc}"));
            }
            let e = g.arc(arc).unwrap();
            let ends = (owner.get(&e.tail).copied(), owner.get(&e.head).copied());
            if ends != (Some(a), Some(b)) && ends != (Some(b), Some(a)) {
                return Err(format!("arc {arc} does not join supernodes {a} and {b}"));
            }
        }
        Ok(())
    }

    /// Path from the center of `m` to `v` inside the tree of `m`.
    fn tree_path(&self, g: &LabeledGraph, m: usize, v: VertexId) -> Walk {
        let start = self.centers[&m];
        let edges = &self.tree_edges[&m];
        let mut prev: BTreeMap<VertexId, Step> = BTreeMap::new();
        let mut seen = VertexSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for inc in g.incidences(x) {
                if edges.contains(&inc.arc) && seen.insert(inc.other) {
                    prev.insert(inc.other, Step { arc: inc.arc, dir: inc.dir });
                    stack.push(inc.other);
                }
            }
        }
        let mut steps = Vec::new();
        let mut at = v;
        while at != start {
            let s = prev[&at];
            steps.push(s);
            at = g.step_endpoints(s.arc, s.dir).0;
        }
        steps.reverse();
        Walk::new(g, start, steps).expect("tree path")
    }

    /// Walk from the center of `a` to the center of `b` through the two trees
    /// and the model edge joining them.
    pub fn center_link(&self, g: &LabeledGraph, a: usize, b: usize) -> Walk {
        let arc = self.edge_map[&(a.min(b), a.max(b))];
        let e = g.arc(arc).unwrap();
        let (step, from, to) = if self.supernodes[&a].contains(&e.tail) {
            (Step { arc, dir: Direction::Forward }, e.tail, e.head)
        } else {
            (Step { arc, dir: Direction::Reverse }, e.head, e.tail)
        };
        let first = self.tree_path(g, a, from);
        let middle = Walk::new(g, from, vec![step]).unwrap();
        let last = self.tree_path(g, b, to).reversed(g);
        first.concat(g, &middle).unwrap().concat(g, &last).unwrap()
    }
}

pub fn verify_expansion(g: &LabeledGraph, eta: &CliqueExpansion, ell: usize) -> bool {
    eta.check(g, ell).is_ok()
}

/// Largest clique order accepted by [`find_clique_expansion`].
pub const MAX_CLIQUE_SEARCH: usize = 6;

/// Exact `K_ℓ`-minor search. Branch sets are chosen in increasing order of
/// their smallest vertex, each connected and touching every earlier one.
pub fn find_clique_expansion(g: &LabeledGraph, ell: usize) -> Result<Option<CliqueExpansion>> {
    if ell > MAX_CLIQUE_SEARCH {
        return Err(EpError::GuardExceeded(format!("clique expansion search is limited to order {MAX_CLIQUE_SEARCH}")));
    }
    let (verts, index) = dense_index(g);
    if verts.len() > 64 {
        return Err(EpError::GuardExceeded("clique expansion search is limited to 64 vertices".into()));
    }
    let n = verts.len();
    let mut adj = vec![0u64; n];
    for (i, &v) in verts.iter().enumerate() {
        for u in g.neighbors(v) {
            adj[i] |= 1 << index[&u];
        }
    }
    // Vertices of degree below one can never help for ℓ >= 2; peel degree <= 1 for ℓ >= 3.
    let mut alive: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if ell >= 3 {
        loop {
            let weak = (0..n).find(|&i| alive >> i & 1 == 1 && (adj[i] & alive).count_ones() <= 1);
            match weak {
                Some(i) => alive &= !(1 << i),
                None => break,
            }
        }
    }
    let mut sets = Vec::new();
    if !choose_branch_sets(&adj, alive, ell, 0, &mut sets) {
        return Ok(None);
    }
    let mut eta = CliqueExpansion {
        supernodes: BTreeMap::new(),
        tree_edges: BTreeMap::new(),
        edge_map: BTreeMap::new(),
        centers: BTreeMap::new(),
    };
    for (m, &mask) in sets.iter().enumerate() {
        let nodes: VertexSet = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        let center = *nodes.iter().next().unwrap();
        let mut tree = BTreeSet::new();
        let mut seen = VertexSet::from([center]);
        let mut queue = std::collections::VecDeque::from([center]);
        while let Some(x) = queue.pop_front() {
            for inc in g.incidences(x) {
                if nodes.contains(&inc.other) && seen.insert(inc.other) {
                    tree.insert(inc.arc);
                    queue.push_back(inc.other);
                }
            }
        }
        eta.supernodes.insert(m, nodes);
        eta.tree_edges.insert(m, tree);
        eta.centers.insert(m, center);
    }
    for a in 0..ell {
        for b in a + 1..ell {
            let arc = g
                .arcs()
                .find(|(_, e)| {
                    let (sa, sb) = (&eta.supernodes[&a], &eta.supernodes[&b]);
                    (sa.contains(&e.tail) && sb.contains(&e.head)) || (sb.contains(&e.tail) && sa.contains(&e.head))
                })
                .map(|(id, _)| id)
                .expect("branch sets touch");
            eta.edge_map.insert((a, b), arc);
        }
    }
    debug_assert!(verify_expansion(g, &eta, ell));
    Ok(Some(eta))
}

fn choose_branch_sets(adj: &[u64], free: u64, ell: usize, min_root: usize, sets: &mut Vec<u64>) -> bool {
    if sets.len() == ell {
        return true;
    }
    if (free >> min_root).count_ones() < (ell - sets.len()) as u32 {
        return false;
    }
    let nbr = |m: u64| {
        let mut out = 0u64;
        let mut bits = m;
        while bits != 0 {
            out |= adj[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        out
    };
    for root in min_root..adj.len() {
        if free >> root & 1 == 0 {
            continue;
        }
        // Vertices below the root belong to no later set either.
        let allowed = free & !((1u64 << root) - 1) & !(1u64 << root);
        let mut found = false;
        connected_sets(1 << root, allowed & nbr(1 << root), allowed, 0, adj, &mut |set| {
            if sets.iter().all(|&s| nbr(s) & set != 0) {
                sets.push(set);
                if choose_branch_sets(adj, free & !set, ell, root + 1, sets) {
                    found = true;
                    return true;
                }
                sets.pop();
            }
            false
        });
        if found {
            return true;
        }
    }
    false
}

/// Enumerates each connected superset of `set` within `set | allowed` once.
fn connected_sets(set: u64, frontier: u64, allowed: u64, banned: u64, adj: &[u64], f: &mut dyn FnMut(u64) -> bool) -> bool {
    if f(set) {
        return true;
    }
    let mut banned = banned;
    let mut bits = frontier & !banned;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let grown = set | 1 << v;
        let next = (frontier | adj[v]) & allowed & !grown & !banned;
        if connected_sets(grown, next, allowed, banned | 1 << v, adj, f) {
            return true;
        }
        banned |= 1 << v;
    }
    false
}

/// `ρ(k) = 2^(3k) · (3k)^(18k) + 1`.
pub fn rho(k: usize) -> BigUint {
    let k32 = k as u32;
    BigUint::from(2u32).pow(3 * k32) * BigUint::from(3 * k as u64).pow(18 * k32) + 1u32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CliqueBranchOutcome {
    Packing(PackingCertificate),
    Separation(Separation),
}

/// Either a half-integral `k`-packing, or a separation `(A, B)` with
/// `G[A \ B]` clean, `1 < |A ∩ B| <= 3k`, and every supernode of `eta_star`
/// that misses `A ∩ B` inside `A \ B`.
pub fn clique_branch_separation(
    g: &LabeledGraph,
    k: usize,
    eta_star: &CliqueExpansion,
    mode: ThresholdMode,
) -> Result<CliqueBranchOutcome> {
    if k == 0 {
        return Err(EpError::Precondition("k must be positive".into()));
    }
    let ell = eta_star.order();
    eta_star.check(g, ell).map_err(EpError::Precondition)?;
    if mode == ThresholdMode::Paper && ell <= 6 * k * k {
        return Err(EpError::Precondition(format!("expansion order {ell} does not exceed 6k^2 = {}", 6 * k * k)));
    }
    let part = ell / k;
    if part == 0 {
        return Err(EpError::Precondition(format!("expansion order {ell} is below k = {k}")));
    }
    let groups: Vec<Vec<usize>> = (0..k).map(|i| (i * part..(i + 1) * part).collect()).collect();
    let mut cycles = Vec::new();
    let mut clean_group = None;
    for group in &groups {
        let eta = eta_star.restrict(group);
        match non_null_cycle(&g.induced_subgraph(&eta.vertices())?) {
            Some(c) => cycles.push(c),
            None => {
                clean_group = Some(eta);
                break;
            }
        }
    }
    let Some(eta) = clean_group else {
        return Ok(CliqueBranchOutcome::Packing(PackingCertificate { cycles, integrality: Integrality::Integral }));
    };
    let inside = eta.vertices();
    let h = untangle(g, &inside)?;
    let centers: VertexSet = eta.centers.values().copied().collect();
    let owner: BTreeMap<VertexId, usize> = eta.centers.iter().map(|(&m, &c)| (c, m)).collect();
    match non_null_s_paths_or_hitting_set(&h, &centers, k)? {
        SPathDuality::Paths { paths } => {
            let mut cycles = Vec::new();
            for p in &paths {
                let (a, b) = (owner[&p.start()], owner[&p.end(&h)]);
                let closed = p.concat(&h, &eta.center_link(&h, b, a))?;
                debug_assert!(!walk_value(&h, &closed)?.is_identity());
                cycles.push(extract_non_null_cycle(&h, &closed)?);
            }
            let cert = PackingCertificate { cycles, integrality: Integrality::HalfIntegral };
            cert.verify(g)?;
            Ok(CliqueBranchOutcome::Packing(cert))
        }
        SPathDuality::HittingSet { vertices: x } => separation_from_hitting_set(g, k, eta_star, &x),
    }
}

fn separation_from_hitting_set(g: &LabeledGraph, k: usize, eta_star: &CliqueExpansion, x: &VertexSet) -> Result<CliqueBranchOutcome> {
    let rest = g.remove_vertices(x);
    let surviving: Vec<&VertexSet> = eta_star.supernodes.values().filter(|s| s.is_disjoint(x)).collect();
    let (blocks, _) = blocks_and_cut_vertices(&rest);
    let meeting: Vec<&VertexSet> = blocks.iter().filter(|b| surviving.iter().all(|s| !s.is_disjoint(b))).collect();
    if meeting.len() != 1 {
        return Err(EpError::Precondition(format!("{} blocks of G - X meet every surviving supernode", meeting.len())));
    }
    let block = meeting[0];
    if !is_clean(g, block) {
        return Err(EpError::Precondition("the block meeting every surviving supernode is not clean".into()));
    }
    let mut pendants = Vec::new();
    for &z in block {
        let others: VertexSet = block.iter().copied().filter(|&v| v != z).collect();
        let around = rest.remove_vertices(&others);
        let comp = around.components().into_iter().find(|c| c.contains(&z)).unwrap();
        if let Some(c) = non_null_cycle(&around.induced_subgraph(&comp)?) {
            pendants.push((z, c));
        }
    }
    if pendants.len() >= k {
        let cycles = pendants.into_iter().take(k).map(|(_, c)| c).collect();
        let cert = PackingCertificate { cycles, integrality: Integrality::Integral };
        cert.verify(g)?;
        return Ok(CliqueBranchOutcome::Packing(cert));
    }
    let mut x2 = x.clone();
    x2.extend(pendants.iter().map(|(z, _)| *z));
    let cut = g.remove_vertices(&x2);
    let first = eta_star
        .supernodes
        .values()
        .find(|s| s.is_disjoint(&x2))
        .ok_or_else(|| EpError::Precondition("every supernode meets X'".into()))?;
    let anchor = *first.iter().next().unwrap();
    let c = cut.components().into_iter().find(|c| c.contains(&anchor)).unwrap();
    let a: VertexSet = c.union(&x2).copied().collect();
    let b: VertexSet = g.vertex_set().difference(&c).copied().collect();
    let sep = Separation::new(a, b);
    debug_assert!(sep.is_valid(g));
    let order = sep.order();
    if order <= 1 || order > 3 * k {
        return Err(EpError::Precondition(format!("separator size {order} is outside (1, 3k]")));
    }
    if !is_clean(g, &sep.a_only()) {
        return Err(EpError::Precondition("G[A \\ B] is not clean".into()));
    }
    let a_only = sep.a_only();
    if eta_star.supernodes.values().any(|s| s.is_disjoint(&x2) && !s.is_subset(&a_only)) {
        return Err(EpError::Precondition("a supernode missing A ∩ B is not inside A \\ B".into()));
    }
    Ok(CliqueBranchOutcome::Separation(sep))
}

/// Irrelevant vertex for a separation whose clean side holds the expansion
/// `eta`; `z` defaults to the centers of `eta`.
pub fn clique_branch_irrelevant(
    g: &LabeledGraph,
    k: usize,
    eta: &CliqueExpansion,
    sep: &Separation,
    z: Option<&VertexSet>,
    mode: ThresholdMode,
) -> Result<IrrelevantVertex> {
    eta.check(g, eta.order()).map_err(EpError::Precondition)?;
    if mode == ThresholdMode::Paper && BigUint::from(eta.order()) < rho(k) {
        return Err(EpError::Precondition(format!("expansion order {} is below rho({k}) = {}", eta.order(), rho(k))));
    }
    if !eta.vertices().is_subset(&sep.a_only()) {
        return Err(EpError::Precondition("the expansion is not inside A \\ B".into()));
    }
    let order = sep.order();
    if order <= 1 || order > 3 * k {
        return Err(EpError::Precondition(format!("separator size {order} is outside (1, 3k]")));
    }
    let centers: VertexSet = eta.centers.values().copied().collect();
    let z = z.cloned().unwrap_or(centers);
    find_irrelevant_vertex(g, sep, &z, 3 * k, k, mode)
}

/// Whether `g` restricted to the expansion vertices has a non-null cycle.
pub fn expansion_is_clean(g: &LabeledGraph, eta: &CliqueExpansion) -> bool {
    is_clean_graph(&g.induced_subgraph(&eta.vertices()).expect("expansion vertices are alive"))
}
