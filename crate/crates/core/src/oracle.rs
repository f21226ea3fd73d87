//! Brute-force reference solvers for small instances.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{EpError, Result};
use crate::graph::{dense_index, walk_value, LabeledGraph, Step, VertexId, VertexSet, Walk};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub max_vertices: usize,
    pub max_cycles: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_vertices: 14, max_cycles: 20_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackingMode {
    Integral,
    HalfIntegral,
}

impl PackingMode {
    pub fn capacity(self) -> u8 {
        match self {
            PackingMode::Integral => 1,
            PackingMode::HalfIntegral => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub min_gfvs_size: usize,
    pub min_gfvs: VertexSet,
    pub max_integral_packing: usize,
    pub integral_packing: Vec<Walk>,
    pub max_half_integral_packing: usize,
    pub half_integral_packing: Vec<Walk>,
}

// Capacities are packed two bits per vertex into a u64.
const HARD_VERTEX_LIMIT: usize = 32;

fn check_size(g: &LabeledGraph, cfg: &OracleConfig) -> Result<()> {
    if g.num_vertices() > cfg.max_vertices.min(HARD_VERTEX_LIMIT) {
        return Err(EpError::GuardExceeded(format!(
            "oracle is limited to {} vertices, graph has {}",
            cfg.max_vertices.min(HARD_VERTEX_LIMIT),
            g.num_vertices()
        )));
    }
    Ok(())
}

/// Every simple cycle of `g`, each once: it starts at its smallest vertex and
/// its first arc id is below its last (loops and digons included).
pub fn enumerate_cycles(g: &LabeledGraph, cfg: &OracleConfig) -> Result<Vec<Walk>> {
    collect_cycles(g, cfg, false)
}

/// The non-null members of [`enumerate_cycles`].
pub fn enumerate_non_null_cycles(g: &LabeledGraph, cfg: &OracleConfig) -> Result<Vec<Walk>> {
    collect_cycles(g, cfg, true)
}

fn collect_cycles(g: &LabeledGraph, cfg: &OracleConfig, non_null_only: bool) -> Result<Vec<Walk>> {
    check_size(g, cfg)?;
    let mut out = Vec::new();
    let mut visited = vec![false; g.universe()];
    for root in g.vertices() {
        for inc in g.incidences(root) {
            if inc.other == root {
                push_cycle(g, cfg, non_null_only, &mut out, Walk::new(g, root, vec![Step { arc: inc.arc, dir: inc.dir }])?)?;
            }
        }
        visited[root] = true;
        let mut steps = Vec::new();
        extend(g, cfg, non_null_only, root, root, &mut visited, &mut steps, &mut out)?;
        visited[root] = false;
    }
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &LabeledGraph,
    cfg: &OracleConfig,
    non_null_only: bool,
    root: VertexId,
    at: VertexId,
    visited: &mut [bool],
    steps: &mut Vec<Step>,
    out: &mut Vec<Walk>,
) -> Result<()> {
    for inc in g.incidences(at) {
        let w = inc.other;
        if w == at || w < root {
            continue;
        }
        let step = Step { arc: inc.arc, dir: inc.dir };
        if w == root {
            if !steps.is_empty() && steps[0].arc < inc.arc {
                steps.push(step);
                push_cycle(g, cfg, non_null_only, out, Walk::new(g, root, steps.clone())?)?;
                steps.pop();
            }
            continue;
        }
        if visited[w] {
            continue;
        }
        visited[w] = true;
        steps.push(step);
        extend(g, cfg, non_null_only, root, w, visited, steps, out)?;
        steps.pop();
        visited[w] = false;
    }
    Ok(())
}

fn push_cycle(g: &LabeledGraph, cfg: &OracleConfig, non_null_only: bool, out: &mut Vec<Walk>, c: Walk) -> Result<()> {
    if non_null_only && walk_value(g, &c)?.is_identity() {
        return Ok(());
    }
    if out.len() >= cfg.max_cycles {
        return Err(EpError::GuardExceeded(format!("more than {} cycles", cfg.max_cycles)));
    }
    out.push(c);
    Ok(())
}

fn cycle_masks(g: &LabeledGraph, cycles: &[Walk]) -> (Vec<VertexId>, Vec<u64>) {
    let (verts, index) = dense_index(g);
    let masks = cycles.iter().map(|c| c.vertex_set(g).iter().fold(0u64, |m, v| m | 1 << index[v])).collect();
    (verts, masks)
}

/// Minimum gfvs by trying vertex subsets in order of size.
pub fn min_gfvs(g: &LabeledGraph, cfg: &OracleConfig) -> Result<(usize, VertexSet)> {
    let cycles = enumerate_non_null_cycles(g, cfg)?;
    let (verts, masks) = cycle_masks(g, &cycles);
    let n = verts.len();
    for size in 0..=n {
        let mut found = None;
        for_each_subset(n, size, &mut |m| {
            if masks.iter().all(|c| c & m != 0) {
                found = Some(m);
                true
            } else {
                false
            }
        });
        if let Some(m) = found {
            let set = (0..n).filter(|i| m >> i & 1 == 1).map(|i| verts[i]).collect();
            return Ok((size, set));
        }
    }
    unreachable!("the full vertex set hits every cycle")
}

/// Calls `f` on each `size`-subset of `0..n` as a bitmask, in lexicographic
/// order of element lists, until it returns true.
pub(crate) fn for_each_subset(n: usize, size: usize, f: &mut dyn FnMut(u64) -> bool) -> bool {
    fn go(start: usize, n: usize, left: usize, mask: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if left == 0 {
            return f(mask);
        }
        for i in start..=n - left {
            if go(i + 1, n, left - 1, mask | 1 << i, f) {
                return true;
            }
        }
        false
    }
    if size > n {
        return false;
    }
    go(0, n, size, 0, f)
}

const MEMO_LIMIT: usize = 4_000_000;

/// Maximum number of distinct non-null cycles using each vertex at most once
/// (integral) or twice (half-integral), with a witness.
pub fn max_packing(g: &LabeledGraph, mode: PackingMode, cfg: &OracleConfig) -> Result<(usize, Vec<Walk>)> {
    let cycles = enumerate_non_null_cycles(g, cfg)?;
    let (_, masks) = cycle_masks(g, &cycles);
    // Cycles are sorted by start, which is their smallest vertex; once the
    // scan passes vertex i, its remaining capacity no longer matters.
    let lows: Vec<u32> = masks.iter().map(|m| m.trailing_zeros()).collect();
    let n = g.num_vertices();
    let cap = mode.capacity() as u64;
    let full: u64 = (0..n).fold(0, |acc, i| acc | cap << (2 * i));
    let mut solver = Packer { masks: &masks, lows: &lows, memo: HashMap::new() };
    let best = solver.best(0, full)?;
    let mut chosen = Vec::new();
    let mut caps = full;
    for i in 0..cycles.len() {
        if best as usize == chosen.len() {
            break;
        }
        if let Some(next) = take(masks[i], caps) {
            let with = 1 + solver.best(i + 1, next)?;
            if with == solver.best(i, caps)? {
                chosen.push(cycles[i].clone());
                caps = next;
            }
        }
    }
    Ok((best as usize, chosen))
}

fn take(mask: u64, caps: u64) -> Option<u64> {
    let mut caps = caps;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as u64;
        if (caps >> (2 * i)) & 3 == 0 {
            return None;
        }
        caps -= 1 << (2 * i);
        m &= m - 1;
    }
    Some(caps)
}

struct Packer<'a> {
    masks: &'a [u64],
    lows: &'a [u32],
    memo: HashMap<(usize, u64), u32>,
}

impl Packer<'_> {
    fn best(&mut self, i: usize, caps: u64) -> Result<u32> {
        if i == self.masks.len() {
            return Ok(0);
        }
        let low = self.lows[i];
        let key_caps = caps >> (2 * low) << (2 * low);
        if let Some(&v) = self.memo.get(&(i, key_caps)) {
            return Ok(v);
        }
        let mut v = self.best(i + 1, caps)?;
        if let Some(next) = take(self.masks[i], caps) {
            v = v.max(1 + self.best(i + 1, next)?);
        }
        if self.memo.len() >= MEMO_LIMIT {
            return Err(EpError::GuardExceeded("packing search state limit".into()));
        }
        self.memo.insert((i, key_caps), v);
        Ok(v)
    }
}

/// Whether `g` has a half-integral `k`-packing or a gfvs of size at most `p`.
pub fn ep_predicate(g: &LabeledGraph, k: usize, p: usize, cfg: &OracleConfig) -> Result<bool> {
    if min_gfvs(g, cfg)?.0 <= p {
        return Ok(true);
    }
    Ok(max_packing(g, PackingMode::HalfIntegral, cfg)?.0 >= k)
}

pub fn exact(g: &LabeledGraph, cfg: &OracleConfig) -> Result<ExactResult> {
    let (min_gfvs_size, min_gfvs) = min_gfvs(g, cfg)?;
    let (max_integral_packing, integral_packing) = max_packing(g, PackingMode::Integral, cfg)?;
    let (max_half_integral_packing, half_integral_packing) = max_packing(g, PackingMode::HalfIntegral, cfg)?;
    Ok(ExactResult {
        min_gfvs_size,
        min_gfvs,
        max_integral_packing,
        integral_packing,
        max_half_integral_packing,
        half_integral_packing,
    })
}
