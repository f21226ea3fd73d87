//! Vertex-capacitated max-flow on the underlying undirected graph.
//!
//! Each alive vertex `v` with dense index `i` becomes `in = 2i` and
//! `out = 2i + 1`; every non-loop arc becomes a pair of unbounded edges
//! between the split copies. Augmenting paths are found by BFS in id order,
//! so results are deterministic.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::{dense_index, ArcId, Direction, LabeledGraph, Step, VertexId, VertexSet, Walk};

const INF: i64 = i64::MAX / 4;

#[derive(Clone, Debug)]
struct Edge {
    to: usize,
    cap: i64,
    arc: Option<ArcId>,
}

pub(crate) struct VertexFlow<'g> {
    g: &'g LabeledGraph,
    verts: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
    value: i64,
}

impl<'g> VertexFlow<'g> {
    /// Network from `sources` to `sinks`. Vertices in `unbounded` can be used
    /// by any number of paths (and so never appear in a minimum cut).
    pub fn new(g: &'g LabeledGraph, sources: &VertexSet, sinks: &VertexSet, unbounded: &VertexSet) -> VertexFlow<'g> {
        let (verts, index) = dense_index(g);
        let n = verts.len();
        let mut net = VertexFlow {
            g,
            verts,
            index,
            edges: Vec::new(),
            out: vec![Vec::new(); 2 * n + 2],
            source: 2 * n,
            sink: 2 * n + 1,
            value: 0,
        };
        for i in 0..n {
            let cap = if unbounded.contains(&net.verts[i]) { INF } else { 1 };
            net.add_edge(2 * i, 2 * i + 1, cap, None);
        }
        for (id, arc) in g.arcs() {
            if arc.tail == arc.head {
                continue;
            }
            let (t, h) = (net.index[&arc.tail], net.index[&arc.head]);
            net.add_edge(2 * t + 1, 2 * h, INF, Some(id));
            net.add_edge(2 * h + 1, 2 * t, INF, Some(id));
        }
        for s in sources {
            if let Some(&i) = net.index.get(s) {
                net.add_edge(net.source, 2 * i, INF, None);
            }
        }
        for t in sinks {
            if let Some(&i) = net.index.get(t) {
                net.add_edge(2 * i + 1, net.sink, INF, None);
            }
        }
        net
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64, arc: Option<ArcId>) {
        self.out[from].push(self.edges.len());
        self.edges.push(Edge { to, cap, arc });
        self.out[to].push(self.edges.len());
        self.edges.push(Edge { to: from, cap: 0, arc });
    }

    /// Augments until the flow reaches `limit` or no path remains; returns the
    /// flow value, which exceeds `limit` by at most the last augmentation.
    pub fn run(&mut self, limit: usize) -> usize {
        while (self.value as u64) < limit as u64 {
            let mut pred = vec![usize::MAX; self.out.len()];
            let mut queue = VecDeque::from([self.source]);
            pred[self.source] = usize::MAX - 1;
            while let Some(x) = queue.pop_front() {
                if x == self.sink {
                    break;
                }
                for &e in &self.out[x] {
                    let y = self.edges[e].to;
                    if self.edges[e].cap > 0 && pred[y] == usize::MAX {
                        pred[y] = e;
                        queue.push_back(y);
                    }
                }
            }
            if pred[self.sink] == usize::MAX {
                break;
            }
            let mut bottleneck = INF;
            let mut y = self.sink;
            while y != self.source {
                let e = pred[y];
                bottleneck = bottleneck.min(self.edges[e].cap);
                y = self.edges[e ^ 1].to;
            }
            let mut y = self.sink;
            while y != self.source {
                let e = pred[y];
                self.edges[e].cap -= bottleneck;
                self.edges[e ^ 1].cap += bottleneck;
                y = self.edges[e ^ 1].to;
            }
            self.value = self.value.saturating_add(bottleneck);
        }
        self.value as usize
    }

    fn reach(&self, from: usize, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            for &e in &self.out[x] {
                // Forward residual: edge e usable. Backward: some z reaches x
                // through residual edge (z -> x), i.e. the twin of e has capacity.
                let (y, usable) = if forward {
                    (self.edges[e].to, self.edges[e].cap > 0)
                } else {
                    (self.edges[e].to, self.edges[e ^ 1].cap > 0)
                };
                if usable && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    fn cut_from(&self, side: &[bool]) -> VertexSet {
        (0..self.verts.len()).filter(|&i| side[2 * i] && !side[2 * i + 1]).map(|i| self.verts[i]).collect()
    }

    /// Minimum cut whose source side is as small as possible.
    #[cfg(test)]
    pub fn cut_near_source(&self) -> VertexSet {
        self.cut_from(&self.reach(self.source, true))
    }

    /// Minimum cut whose source side is as large as possible.
    pub fn cut_near_sink(&self) -> VertexSet {
        let to_sink = self.reach(self.sink, false);
        let side: Vec<bool> = to_sink.iter().map(|&b| !b).collect();
        self.cut_from(&side)
    }

    /// Decomposes the current flow into source-to-sink walks over `g`.
    pub fn paths(&self) -> Vec<Walk> {
        // An original edge has even index; its twin's capacity is the flow on it.
        let mut flow: Vec<i64> = (0..self.edges.len()).map(|e| if e % 2 == 0 { self.edges[e ^ 1].cap } else { 0 }).collect();
        let mut out = Vec::new();
        loop {
            let mut nodes = vec![self.source];
            let mut used = Vec::new();
            let mut x = self.source;
            while x != self.sink {
                let next = self.out[x].iter().copied().find(|&e| e % 2 == 0 && flow[e] > 0);
                let Some(e) = next else { break };
                used.push(e);
                x = self.edges[e].to;
                if let Some(pos) = nodes.iter().position(|&y| y == x) {
                    // Drop a circulation.
                    for &c in &used[pos..] {
                        flow[c] -= 1;
                    }
                    nodes.truncate(pos + 1);
                    used.truncate(pos);
                    continue;
                }
                nodes.push(x);
            }
            if x != self.sink {
                break;
            }
            for &e in &used {
                flow[e] -= 1;
            }
            let start = self.verts[(nodes[1]) / 2];
            let mut steps = Vec::new();
            let mut at = start;
            for &e in &used {
                if let Some(a) = self.edges[e].arc {
                    let arc = self.g.arc(a).expect("arc from network");
                    let dir = if arc.tail == at { Direction::Forward } else { Direction::Reverse };
                    steps.push(Step { arc: a, dir });
                    at = self.g.step_endpoints(a, dir).1;
                }
            }
            out.push(Walk::new(self.g, start, steps).expect("flow path is a walk"));
        }
        out
    }
}

/// Up to `limit` vertex-disjoint `x`–`y` paths, each meeting `x` and `y` only
/// at its ends. A vertex of `x ∩ y` counts as a path of length zero.
#[cfg(test)]
pub(crate) fn disjoint_paths(g: &LabeledGraph, x: &VertexSet, y: &VertexSet, limit: usize) -> Vec<Walk> {
    let mut net = VertexFlow::new(g, x, y, &VertexSet::new());
    net.run(limit);
    net.paths().into_iter().map(|w| trim_to_sets(g, &w, x, y)).take(limit).collect()
}

/// Number of vertex-disjoint `x`–`y` paths, capped at `limit`.
pub(crate) fn linkage_size(g: &LabeledGraph, x: &VertexSet, y: &VertexSet, limit: usize) -> usize {
    let mut net = VertexFlow::new(g, x, y, &VertexSet::new());
    net.run(limit).min(limit)
}

/// Paths from `r` to distinct vertices of `targets`, disjoint apart from `r`.
pub(crate) fn fan(g: &LabeledGraph, r: VertexId, targets: &VertexSet, limit: usize) -> Vec<Walk> {
    let sources = VertexSet::from([r]);
    let mut net = VertexFlow::new(g, &sources, targets, &sources);
    net.run(limit);
    net.paths().into_iter().map(|w| trim_to_sets(g, &w, &sources, targets)).take(limit).collect()
}

/// Size of a minimum vertex separator between `x` and `y` that avoids
/// `x ∪ y`, or `None` when it exceeds `limit` (or none exists).
#[cfg(test)]
pub(crate) fn min_separator_size(g: &LabeledGraph, x: &VertexSet, y: &VertexSet, limit: usize) -> Option<usize> {
    let keep: VertexSet = x.union(y).copied().collect();
    let mut net = VertexFlow::new(g, x, y, &keep);
    let f = net.run(limit + 1);
    (f <= limit).then_some(f)
}

/// Minimum `x`–`y` separator avoiding `x ∪ y`, chosen as far from `x` as
/// possible. `None` when larger than `limit` or inseparable.
pub(crate) fn furthest_min_separator(g: &LabeledGraph, x: &VertexSet, y: &VertexSet, limit: usize) -> Option<VertexSet> {
    let keep: VertexSet = x.union(y).copied().collect();
    let mut net = VertexFlow::new(g, x, y, &keep);
    let f = net.run(limit + 1);
    (f <= limit).then(|| net.cut_near_sink())
}

/// Cuts the walk down to the segment between its last visit to `x` and the
/// first following visit to `y`.
fn trim_to_sets(g: &LabeledGraph, w: &Walk, x: &VertexSet, y: &VertexSet) -> Walk {
    let verts = w.vertices(g);
    let end = verts.iter().position(|v| y.contains(v)).unwrap_or(verts.len() - 1);
    let start = verts[..=end].iter().rposition(|v| x.contains(v)).unwrap_or(0);
    w.slice(g, start..end)
}

/// Vertices reachable from `x` in `g - s` (including `x \ s`).
pub(crate) fn reach_avoiding(g: &LabeledGraph, x: &VertexSet, s: &VertexSet) -> VertexSet {
    let mut seen: VertexSet = x.iter().copied().filter(|v| !s.contains(v) && g.contains_vertex(*v)).collect();
    let mut stack: Vec<VertexId> = seen.iter().copied().collect();
    while let Some(v) = stack.pop() {
        for inc in g.incidences(v) {
            if !s.contains(&inc.other) && seen.insert(inc.other) {
                stack.push(inc.other);
            }
        }
    }
    seen
}
