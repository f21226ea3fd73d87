//! Important separators, multiway cuts, treewidth-reduction sets and the
//! irrelevant-vertex finder. Labels play no role in the separator machinery;
//! everything here works on the underlying undirected graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cycles::{is_clean, untangle};
use crate::error::{EpError, Result};
use crate::flow::{self, reach_avoiding};
use crate::graph::{LabeledGraph, Separation, VertexId, VertexSet};
use crate::oracle::for_each_subset;

/// Whether size thresholds from the asymptotic statements are enforced, or
/// relaxed so that desk-scale instances can exercise the constructions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMode {
    Paper,
    #[default]
    Small,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ImportantSeparator {
    pub separator: VertexSet,
    /// Vertices reachable from `x` in `G - separator`.
    pub reach: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImportantSeparators {
    pub separators: Vec<ImportantSeparator>,
    /// Set when some vertex of `x` is adjacent to some vertex of `y`, so no
    /// separator exists at any size.
    pub inseparable: bool,
}

fn check_alive(g: &LabeledGraph, s: &VertexSet) -> Result<()> {
    match s.iter().find(|&&v| !g.contains_vertex(v)) {
        Some(&v) => Err(EpError::UnknownVertex(v)),
        None => Ok(()),
    }
}

fn adjacent_sets(g: &LabeledGraph, x: &VertexSet, y: &VertexSet) -> bool {
    x.iter().any(|&v| g.incidences(v).any(|inc| y.contains(&inc.other)))
}

/// Whether `s` (disjoint from `x ∪ y`) meets every `x`–`y` path.
pub fn is_separator(g: &LabeledGraph, x: &VertexSet, y: &VertexSet, s: &VertexSet) -> bool {
    reach_avoiding(g, x, s).is_disjoint(y)
}

/// All important `x`–`y` separators of size at most `k`, sorted.
///
/// A separator is important when it is inclusion-minimal and no separator of
/// at most the same size has a strictly larger reachable side from `x`.
pub fn enumerate_important_separators(
    g: &LabeledGraph,
    x: &VertexSet,
    y: &VertexSet,
    k: usize,
) -> Result<ImportantSeparators> {
    check_alive(g, x)?;
    check_alive(g, y)?;
    if let Some(v) = x.intersection(y).next() {
        return Err(EpError::Precondition(format!("vertex {v} lies in both x and y")));
    }
    if adjacent_sets(g, x, y) {
        return Ok(ImportantSeparators { separators: Vec::new(), inseparable: true });
    }
    let mut candidates = BTreeSet::new();
    branch(g, x, y, k, &mut VertexSet::new(), &mut candidates);
    let mut separators: Vec<ImportantSeparator> = candidates
        .into_iter()
        .filter(|s| is_important(g, x, y, s))
        .map(|s| ImportantSeparator { reach: reach_avoiding(g, x, &s), separator: s })
        .collect();
    separators.sort();
    assert!(separators.len() as u128 <= 4u128.saturating_pow(k as u32), "important separators exceed 4^k");
    Ok(ImportantSeparators { separators, inseparable: false })
}

fn branch(g: &LabeledGraph, x: &VertexSet, y: &VertexSet, k: usize, chosen: &mut VertexSet, out: &mut BTreeSet<VertexSet>) {
    if adjacent_sets(g, x, y) {
        return;
    }
    let Some(s_max) = flow::furthest_min_separator(g, x, y, k) else { return };
    if s_max.is_empty() {
        out.insert(chosen.clone());
        return;
    }
    let v = *s_max.iter().next().unwrap();
    chosen.insert(v);
    branch(&g.remove_vertices(&VertexSet::from([v])), x, y, k - 1, chosen, out);
    chosen.remove(&v);
    let mut grown = reach_avoiding(g, x, &s_max);
    grown.insert(v);
    branch(g, &grown, y, k, chosen, out);
}

/// Exact importance test for a candidate `s`.
pub fn is_important(g: &LabeledGraph, x: &VertexSet, y: &VertexSet, s: &VertexSet) -> bool {
    if !s.is_disjoint(x) || !s.is_disjoint(y) || !is_separator(g, x, y, s) {
        return false;
    }
    for &v in s {
        let mut smaller = s.clone();
        smaller.remove(&v);
        if is_separator(g, x, y, &smaller) {
            return false;
        }
    }
    // Any separator with a larger x-side also separates reach(s) from y.
    let r = reach_avoiding(g, x, s);
    match flow::furthest_min_separator(g, &r, y, s.len()) {
        Some(furthest) => furthest == *s,
        None => false,
    }
}

/// Terminal partition for a multiway cut question, with at least two parts.
#[derive(Clone, Debug)]
pub struct MultiwayCutInstance<'g> {
    pub graph: &'g LabeledGraph,
    pub parts: Vec<VertexSet>,
}

impl<'g> MultiwayCutInstance<'g> {
    pub fn new(graph: &'g LabeledGraph, parts: Vec<VertexSet>) -> Result<MultiwayCutInstance<'g>> {
        if parts.len() < 2 {
            return Err(EpError::Precondition("a multiway cut needs at least two parts".into()));
        }
        let mut seen = VertexSet::new();
        for part in &parts {
            if part.is_empty() {
                return Err(EpError::Precondition("empty part".into()));
            }
            check_alive(graph, part)?;
            for &v in part {
                if !seen.insert(v) {
                    return Err(EpError::Precondition(format!("terminal {v} is in two parts")));
                }
            }
        }
        Ok(MultiwayCutInstance { graph, parts })
    }

    pub fn terminals(&self) -> VertexSet {
        self.parts.iter().flatten().copied().collect()
    }

    /// Whether `G - s` has no path between different parts.
    pub fn is_cut(&self, s: &VertexSet) -> bool {
        let mut owner = std::collections::BTreeMap::new();
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                owner.insert(v, i);
            }
        }
        for (i, part) in self.parts.iter().enumerate() {
            let reach = reach_avoiding(self.graph, part, s);
            if reach.iter().any(|v| owner.get(v).is_some_and(|&j| j != i)) {
                return false;
            }
        }
        true
    }
}

/// Whether `s` is a multiway cut none of whose proper subsets is one.
/// Dropping single vertices suffices: cuts are closed under supersets.
pub fn is_minimal_multiway_cut(inst: &MultiwayCutInstance, s: &VertexSet) -> bool {
    if !inst.is_cut(s) {
        return false;
    }
    s.iter().all(|v| {
        let mut smaller = s.clone();
        smaller.remove(v);
        !inst.is_cut(&smaller)
    })
}

/// Partitions of `t` into at least two parts, in restricted-growth-string order.
pub fn partitions(t: &VertexSet) -> Vec<Vec<VertexSet>> {
    let items: Vec<VertexId> = t.iter().copied().collect();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; items.len()];
    fn go(i: usize, max: usize, items: &[VertexId], rgs: &mut Vec<usize>, out: &mut Vec<Vec<VertexSet>>) {
        if i == items.len() {
            if max >= 1 {
                let mut parts = vec![VertexSet::new(); max + 1];
                for (j, &b) in rgs.iter().enumerate() {
                    parts[b].insert(items[j]);
                }
                out.push(parts);
            }
            return;
        }
        let limit = if i == 0 { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs[i] = b;
            go(i + 1, max.max(b), items, rgs, out);
        }
    }
    if !items.is_empty() {
        go(0, 0, &items, &mut rgs, &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellLinkedWitness {
    pub z: VertexSet,
    pub checked_to: usize,
}

/// Checks that every pair of equal-size subsets of `z` of size at most `p`
/// is joined by a linkage.
pub fn verify_well_linked(g: &LabeledGraph, z: &VertexSet, p: usize) -> Result<WellLinkedWitness> {
    check_alive(g, z)?;
    let items: Vec<VertexId> = z.iter().copied().collect();
    let n = items.len();
    let to_set = |m: u64| -> VertexSet { (0..n).filter(|i| m >> i & 1 == 1).map(|i| items[i]).collect() };
    for size in 1..=p.min(n) {
        let mut failure = None;
        for_each_subset(n, size, &mut |m1| {
            let x1 = to_set(m1);
            for_each_subset(n, size, &mut |m2| {
                if m2 < m1 {
                    return false;
                }
                let x2 = to_set(m2);
                if flow::linkage_size(g, &x1, &x2, size) < size {
                    failure = Some((x1.clone(), x2));
                    return true;
                }
                false
            })
        });
        if let Some((a, b)) = failure {
            return Err(EpError::Precondition(format!("no linkage between {a:?} and {b:?}")));
        }
    }
    Ok(WellLinkedWitness { z: z.clone(), checked_to: p })
}

pub fn is_well_linked(g: &LabeledGraph, z: &VertexSet) -> bool {
    verify_well_linked(g, z, z.len() / 2).is_ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionContribution {
    pub partition: Vec<VertexSet>,
    pub excluded: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwReduction {
    /// Vertices of `z` that may lie in a small minimal multiway cut.
    pub set: VertexSet,
    pub per_partition: Vec<PartitionContribution>,
}

/// Per-partition bound `16^t · 2t`, saturating.
pub fn partition_bound(t: usize) -> u128 {
    16u128.saturating_pow(t as u32).saturating_mul(2 * t as u128)
}

/// The subset of `z` that can meet a minimal `T`-multiway cut of size at most
/// `t`; every other vertex of `z` lies in no such cut.
///
/// Builds `G*` by joining each `z` to a new apex `q*` through a new middle
/// vertex, and for every partition of `T` and every part `P`, collects the
/// vertices of `z` that are reached from `P` or lie on an important
/// `P`–(`{q*}` ∪ other terminals) separator of size at most `2t`.
pub fn tw_reduction_set(g: &LabeledGraph, t: usize, terminals: &VertexSet, z: &VertexSet, mode: ThresholdMode) -> Result<TwReduction> {
    check_reduction_input(g, t, terminals, z)?;
    if mode == ThresholdMode::Paper && z.len() < 7 * t {
        return Err(EpError::Precondition(format!("|Z| = {} is below 7t = {}", z.len(), 7 * t)));
    }
    if !is_well_linked(g, z) {
        return Err(EpError::Precondition("Z is not well-linked".into()));
    }
    Ok(reduction_unchecked(g, t, terminals, z))
}

fn check_reduction_input(g: &LabeledGraph, t: usize, terminals: &VertexSet, z: &VertexSet) -> Result<()> {
    if t <= 1 {
        return Err(EpError::Precondition(format!("t must exceed 1, got {t}")));
    }
    if terminals.len() > t {
        return Err(EpError::Precondition(format!("|T| = {} exceeds t = {t}", terminals.len())));
    }
    check_alive(g, terminals)?;
    check_alive(g, z)?;
    if !terminals.is_disjoint(z) {
        return Err(EpError::Precondition("Z meets T".into()));
    }
    Ok(())
}

fn reduction_unchecked(g: &LabeledGraph, t: usize, terminals: &VertexSet, z: &VertexSet) -> TwReduction {
    let mut star = g.clone();
    let apex = star.add_vertex();
    let id = star.identity();
    for &v in z {
        let mid = star.add_vertex();
        star.add_arc(v, mid, id.clone()).expect("alive");
        star.add_arc(mid, apex, id.clone()).expect("alive");
    }
    let mut set = VertexSet::new();
    let mut per_partition = Vec::new();
    for partition in partitions(terminals) {
        let mut excluded = VertexSet::new();
        for part in &partition {
            let mut q: VertexSet = terminals.difference(part).copied().collect();
            q.insert(apex);
            let found = enumerate_important_separators(&star, part, &q, 2 * t).expect("parts and Q are disjoint");
            for imp in found.separators {
                excluded.extend(imp.reach.iter().chain(&imp.separator).filter(|v| z.contains(v)));
            }
        }
        assert!(excluded.len() as u128 <= partition_bound(t), "partition contribution exceeds 16^t * 2t");
        set.extend(excluded.iter().copied());
        per_partition.push(PartitionContribution { partition, excluded });
    }
    TwReduction { set, per_partition }
}

/// `2^p · p^(6p)`, saturating.
pub fn irrelevant_threshold(p: usize) -> u128 {
    let p128 = p as u128;
    2u128.saturating_pow(p as u32).saturating_mul(p128.saturating_pow(6 * p as u32))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrelevantVertex {
    pub vertex: VertexId,
    /// Union of the reduction sets over all proper subsets of the separator.
    pub excluded: VertexSet,
}

/// A vertex of `z` whose deletion keeps the packing-or-cover predicate for
/// `k`: the lowest vertex of `z` outside every reduction set computed on
/// `G[A] - J` with terminals `X \ J`, over proper subsets `J` of `X = A ∩ B`.
pub fn find_irrelevant_vertex(
    g: &LabeledGraph,
    sep: &Separation,
    z: &VertexSet,
    p: usize,
    k: usize,
    mode: ThresholdMode,
) -> Result<IrrelevantVertex> {
    if k == 0 {
        return Err(EpError::Precondition("k must be positive".into()));
    }
    if !sep.is_valid(g) {
        return Err(EpError::Precondition("(A, B) is not a separation".into()));
    }
    let x = sep.separator();
    if x.len() <= 1 || x.len() > p {
        return Err(EpError::Precondition(format!("need 1 < |A ∩ B| <= {p}, got {}", x.len())));
    }
    if !is_clean(g, &sep.a) {
        return Err(EpError::Precondition("G[A] is not clean".into()));
    }
    if !z.is_subset(&sep.a_only()) {
        return Err(EpError::Precondition("Z is not inside A \\ B".into()));
    }
    if mode == ThresholdMode::Paper && (z.len() as u128) <= irrelevant_threshold(p) {
        return Err(EpError::Precondition(format!(
            "|Z| = {} does not exceed 2^p * p^(6p) = {}",
            z.len(),
            irrelevant_threshold(p)
        )));
    }
    let side = untangle(g, &sep.a)?.induced_subgraph(&sep.a)?;
    if !is_well_linked(&side, z) {
        return Err(EpError::Precondition("Z is not well-linked in G[A]".into()));
    }
    let xs: Vec<VertexId> = x.iter().copied().collect();
    let mut excluded = VertexSet::new();
    for mask in 0u64..(1 << xs.len()) - 1 {
        let j: VertexSet = (0..xs.len()).filter(|i| mask >> i & 1 == 1).map(|i| xs[i]).collect();
        let terminals: VertexSet = x.difference(&j).copied().collect();
        if terminals.len() <= 1 {
            continue;
        }
        let reduced = reduction_unchecked(&side.remove_vertices(&j), terminals.len(), &terminals, z);
        excluded.extend(reduced.set);
    }
    match z.difference(&excluded).next() {
        Some(&vertex) => Ok(IrrelevantVertex { vertex, excluded }),
        None => Err(EpError::Precondition("every vertex of Z lies in some reduction set".into())),
    }
}
