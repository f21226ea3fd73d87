//! Seeded instance generators.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{EpError, Result};
use crate::graph::{LabeledGraph, VertexSet};
use crate::group::{GroupElement, GroupSpec};
use crate::paths::CliqueExpansion;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gadget {
    /// Nothing attached; the instance is clean.
    #[default]
    None,
    /// An odd triangle joined to branch vertices 0 and 1.
    OddTriangle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Random simple graph over `Z_2` with every arc labeled 1.
    OddCycles { n: usize, m: usize },
    /// `h × 2h` grid over `Z_2` plus crossing arcs between the top and bottom rows.
    EscherWall { h: usize },
    /// `r × c` grid with uniformly random `Z_m` labels.
    ZmGrid { m: u32, r: usize, c: usize },
    /// `m` random non-loop arcs on `n` vertices with uniformly random labels.
    Random { n: usize, m: usize, group: GroupSpec },
    /// `K_ell` over `Z_2` with identity labels and every edge subdivided
    /// `subdivisions` times, plus an optional gadget.
    SubdividedClique {
        ell: usize,
        #[serde(default)]
        subdivisions: usize,
        #[serde(default)]
        gadget: Gadget,
    },
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: LabeledGraph,
    pub expansion: Option<CliqueExpansion>,
}

fn invalid(msg: impl Into<String>) -> EpError {
    EpError::Precondition(msg.into())
}

pub fn generate(family: &Family, seed: u64) -> Result<Generated> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = match family {
        Family::OddCycles { n, m } => odd_cycles(*n, *m, &mut rng)?,
        Family::EscherWall { h } => escher_wall(*h)?,
        Family::ZmGrid { m, r, c } => zm_grid(*m, *r, *c, &mut rng)?,
        Family::Random { n, m, group } => random(*n, *m, group, &mut rng)?,
        Family::SubdividedClique { ell, subdivisions, gadget } => {
            let (graph, eta) = subdivided_clique(*ell, *subdivisions, *gadget)?;
            return Ok(Generated { graph, expansion: Some(eta) });
        }
    };
    Ok(Generated { graph, expansion: None })
}

fn z2() -> Arc<GroupSpec> {
    Arc::new(GroupSpec::Cyclic(2))
}

fn odd_cycles(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<LabeledGraph> {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if m > pairs.len() {
        return Err(invalid(format!("{m} edges do not fit in a simple graph on {n} vertices")));
    }
    pairs.shuffle(rng);
    pairs.truncate(m);
    pairs.sort();
    let spec = z2();
    let mut g = LabeledGraph::with_group(spec.clone(), n);
    let one = GroupElement::cyclic(&spec, 1)?;
    for (u, v) in pairs {
        g.add_arc(u, v, one.clone())?;
    }
    Ok(g)
}

fn grid_arcs(r: usize, c: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..c {
            let v = i * c + j;
            if j + 1 < c {
                out.push((v, v + 1));
            }
            if i + 1 < r {
                out.push((v, v + c));
            }
        }
    }
    out
}

fn escher_wall(h: usize) -> Result<LabeledGraph> {
    if h < 2 {
        return Err(invalid("escher wall needs h >= 2"));
    }
    let (r, c) = (h, 2 * h);
    let spec = z2();
    let mut g = LabeledGraph::with_group(spec.clone(), r * c);
    let one = GroupElement::cyclic(&spec, 1)?;
    for (u, v) in grid_arcs(r, c) {
        g.add_arc(u, v, one.clone())?;
    }
    // Top column j meets bottom column c-1-j. With grid distance d between the
    // ends, the label d+1 makes every cycle through exactly one crossing odd.
    for j in 0..c {
        let (top, bottom) = (j, (r - 1) * c + (c - 1 - j));
        let d = (r - 1) + (c - 1 - j).abs_diff(j);
        g.add_arc(top, bottom, GroupElement::cyclic(&spec, (d as i64 + 1) % 2)?)?;
    }
    Ok(g)
}

fn zm_grid(m: u32, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Result<LabeledGraph> {
    if r == 0 || c == 0 {
        return Err(invalid("grid dimensions must be positive"));
    }
    let spec = Arc::new(GroupSpec::Cyclic(m));
    spec.validate()?;
    let mut g = LabeledGraph::with_group(spec.clone(), r * c);
    for (u, v) in grid_arcs(r, c) {
        let label = GroupElement::cyclic(&spec, rng.gen_range(0..m as i64))?;
        g.add_arc(u, v, label)?;
    }
    Ok(g)
}

fn random(n: usize, m: usize, group: &GroupSpec, rng: &mut ChaCha8Rng) -> Result<LabeledGraph> {
    if n < 2 && m > 0 {
        return Err(invalid("random arcs need at least two vertices"));
    }
    let spec = Arc::new(group.clone());
    spec.validate()?;
    let elements = GroupElement::enumerate(&spec)?;
    let mut g = LabeledGraph::with_group(spec, n);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let label = elements[rng.gen_range(0..elements.len())].clone();
        g.add_arc(u, v, label)?;
    }
    Ok(g)
}

fn subdivided_clique(ell: usize, subdivisions: usize, gadget: Gadget) -> Result<(LabeledGraph, CliqueExpansion)> {
    if ell < 2 {
        return Err(invalid("subdivided clique needs ell >= 2"));
    }
    let spec = z2();
    let id = GroupElement::identity(&spec);
    let mut g = LabeledGraph::with_group(spec.clone(), ell);
    let mut supernodes: BTreeMap<usize, VertexSet> = (0..ell).map(|i| (i, VertexSet::from([i]))).collect();
    let mut tree_edges: BTreeMap<usize, BTreeSet<usize>> = (0..ell).map(|i| (i, BTreeSet::new())).collect();
    let mut edge_map = BTreeMap::new();
    for a in 0..ell {
        for b in a + 1..ell {
            // Subdivision vertices hang off branch vertex `a` as a path.
            let mut at = a;
            for _ in 0..subdivisions {
                let s = g.add_vertex();
                let arc = g.add_arc(at, s, id.clone())?;
                supernodes.get_mut(&a).unwrap().insert(s);
                tree_edges.get_mut(&a).unwrap().insert(arc);
                at = s;
            }
            edge_map.insert((a, b), g.add_arc(at, b, id.clone())?);
        }
    }
    if gadget == Gadget::OddTriangle {
        let one = GroupElement::cyclic(&spec, 1)?;
        let t: Vec<usize> = (0..3).map(|_| g.add_vertex()).collect();
        g.add_arc(t[0], t[1], one.clone())?;
        g.add_arc(t[1], t[2], one.clone())?;
        g.add_arc(t[2], t[0], one)?;
        g.add_arc(0, t[0], id.clone())?;
        g.add_arc(1, t[1], id)?;
    }
    let centers = (0..ell).map(|i| (i, i)).collect();
    Ok((g, CliqueExpansion { supernodes, tree_edges, edge_map, centers }))
}
