//! Acceptance suite. Runs without the libtest harness and prints one line per
//! criterion; exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use epkit::cuts::{enumerate_important_separators, find_irrelevant_vertex, partition_bound, tw_reduction_set, ThresholdMode};
use epkit::decomposition::{packing_or_cover_bounded_tw, tree_decomposition, PackingOrCover, TdMode};
use epkit::driver::{solve, verify_certificate, DriverConfig, TrailStep};
use epkit::generate::{generate, Family};
use epkit::oracle::{exact, max_packing, min_gfvs, OracleConfig, PackingMode};
use epkit::paths::{non_null_s_paths_or_hitting_set, SPathDuality};
use epkit::{untangle, GroupElement, GroupSpec, LabeledGraph, Separation, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const FUZZ_INSTANCES: usize = 1000;
const FUZZ_TIME_LIMIT: Duration = Duration::from_secs(600);
const SEPARATOR_GRAPHS: usize = 200;
const REDUCTION_INSTANCES: usize = 100;
const IRRELEVANT_INSTANCES: usize = 60;
const SPATH_INSTANCES: usize = 150;
const UNTANGLE_SAMPLES: usize = 200;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn fuzz_groups() -> [GroupSpec; 4] {
    [GroupSpec::Cyclic(2), GroupSpec::Cyclic(3), GroupSpec::Cyclic(6), GroupSpec::Symmetric(3)]
}

fn fuzz_instance(i: usize) -> (LabeledGraph, usize, DriverConfig) {
    let mut rng = ChaCha8Rng::seed_from_u64(1000 + i as u64);
    let spec = &fuzz_groups()[i % 4];
    let n = rng.gen_range(2..=12);
    let m = rng.gen_range(n..=2 * n + 2);
    let g = common::random_graph(&mut rng, spec, n, m, true);
    let k = rng.gen_range(1..=3);
    let cfg = DriverConfig {
        tw_threshold: rng.gen_range(1..=4),
        oracle_fallback: true,
        seed: i as u64,
        ..DriverConfig::default()
    };
    (g, k, cfg)
}

/// Independent check of a driver outcome against `g`.
fn independently_valid(g: &LabeledGraph, k: usize, out: &PackingOrCover) -> bool {
    match out {
        PackingOrCover::Packing(p) => {
            let cap = match p.integrality {
                epkit::decomposition::Integrality::Integral => 1,
                epkit::decomposition::Integrality::HalfIntegral => 2,
            };
            let mut uses = std::collections::BTreeMap::new();
            let mut arcsets = BTreeSet::new();
            for c in &p.cycles {
                if !common::is_non_null_simple_cycle(g, c) || !arcsets.insert(c.arc_set()) {
                    return false;
                }
                for v in common::trace(g, c).unwrap().0.into_iter().skip(1) {
                    *uses.entry(v).or_insert(0) += 1;
                }
            }
            p.cycles.len() == k && uses.values().all(|&u| u <= cap)
        }
        PackingOrCover::Cover(c) => common::is_gfvs(g, &c.vertices),
    }
}

fn criterion_1() -> (Outcome, Vec<(usize, usize, usize)>) {
    let start = Instant::now();
    let results: Vec<Result<(bool, Vec<(usize, usize, usize)>, bool, bool), String>> = (0..FUZZ_INSTANCES)
        .into_par_iter()
        .map(|i| {
            let (g, k, cfg) = fuzz_instance(i);
            let cert = solve(&g, k, &cfg).map_err(|e| format!("instance {i}: {e}"))?;
            let ok = verify_certificate(&g, &cert).is_ok() && independently_valid(&g, k, &cert.outcome);
            let covers = cert
                .trail
                .iter()
                .filter_map(|s| match s {
                    TrailStep::LowTreewidth { k, width, cover_size, .. } => Some((*k, *width, *cover_size)),
                    _ => None,
                })
                .collect();
            let clique = cert.trail.iter().any(|s| {
                matches!(s, TrailStep::CliquePacking { .. } | TrailStep::Peel { .. } | TrailStep::Irrelevant { .. })
            });
            Ok((ok, covers, cert.metadata.fallback, clique))
        })
        .collect();
    let elapsed = start.elapsed();
    let mut valid = 0;
    let mut fallbacks = 0;
    let mut cliques = 0;
    let mut covers = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok((ok, c, fb, cl)) => {
                valid += ok as usize;
                fallbacks += fb as usize;
                cliques += cl as usize;
                covers.extend(c);
            }
            Err(e) => errors.push(e),
        }
    }
    let pass = valid == FUZZ_INSTANCES && elapsed <= FUZZ_TIME_LIMIT;
    let mut detail = format!(
        "{valid}/{FUZZ_INSTANCES} certificates verified, {cliques} used the clique branch, {fallbacks} the exact fallback, {:.1}s (limit {}s)",
        elapsed.as_secs_f64(),
        FUZZ_TIME_LIMIT.as_secs()
    );
    if let Some(e) = errors.first() {
        detail.push_str(&format!("; first error: {e}"));
    }
    (outcome(pass, detail), covers)
}

fn criterion_2(from_driver: &[(usize, usize, usize)]) -> Outcome {
    let mut checked = 0;
    let mut violations = 0;
    for &(k, w, size) in from_driver {
        checked += 1;
        violations += (size > (k - 1) * (w + 1)) as usize;
    }
    for i in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + i);
        let spec = &fuzz_groups()[i as usize % 4];
        let n = rng.gen_range(3..=14);
        let m = rng.gen_range(n..=2 * n);
        let g = common::random_graph(&mut rng, spec, n, m, false);
        let mode = if i % 2 == 0 { TdMode::Exact } else { TdMode::Heuristic };
        let td = tree_decomposition(&g, mode).unwrap();
        for k in 1..=4 {
            if let PackingOrCover::Cover(c) = packing_or_cover_bounded_tw(&g, k, &td).unwrap() {
                checked += 1;
                let bad = c.vertices.len() > (k - 1) * (td.width() + 1) || !common::is_gfvs(&g, &c.vertices);
                violations += bad as usize;
            }
        }
    }
    outcome(violations == 0 && checked > 0, format!("{checked} cover outcomes, {violations} violations of (k-1)(w+1)"))
}

fn criterion_3() -> Outcome {
    let results: Vec<(bool, usize, usize)> = (0..SEPARATOR_GRAPHS as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(3000 + i);
            let n = rng.gen_range(4..=9);
            let (g, x, y, rest) = if i % 3 == 0 { rooted_tree(&mut rng, n) } else { random_terminals(&mut rng, n) };
            let mut ok = true;
            let mut comparisons = 0;
            let mut most = 0;
            for k in 0..=3 {
                let Ok(found) = enumerate_important_separators(&g, &x, &y, k) else {
                    ok = false;
                    continue;
                };
                let expected = brute_important(&g, &x, &y, &rest, k);
                let got: BTreeSet<VertexSet> = found.separators.iter().map(|s| s.separator.clone()).collect();
                let reach_ok = found.separators.iter().all(|s| s.reach == common::reach(&g, &x, &s.separator));
                ok &= got == expected && reach_ok && found.separators.len() <= 4usize.pow(k as u32);
                most = most.max(found.separators.len());
                comparisons += 1;
            }
            (ok, comparisons, most)
        })
        .collect();
    let agree = results.iter().filter(|r| r.0).count();
    let comparisons: usize = results.iter().map(|r| r.1).sum();
    let most = results.iter().map(|r| r.2).max().unwrap_or(0);
    outcome(
        agree == SEPARATOR_GRAPHS,
        format!("{agree}/{SEPARATOR_GRAPHS} graphs agree set-for-set over {comparisons} (graph, k) pairs, largest family {most}"),
    )
}

type Terminals = (LabeledGraph, VertexSet, VertexSet, Vec<usize>);

fn random_terminals(rng: &mut ChaCha8Rng, n: usize) -> Terminals {
    let m = rng.gen_range(n - 1..=3 * n);
    let g = common::random_graph(rng, &GroupSpec::Cyclic(2), n, m, false);
    let mut verts: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(verts.as_mut_slice(), rng);
    let sx = rng.gen_range(1..=2);
    let sy = rng.gen_range(1..=2);
    let x = verts[..sx].iter().copied().collect();
    let y = verts[sx..sx + sy].iter().copied().collect();
    (g, x, y, verts[sx + sy..].to_vec())
}

/// A random tree rooted at 0 whose leaves all touch the last vertex; these
/// have many important separators.
fn rooted_tree(rng: &mut ChaCha8Rng, n: usize) -> Terminals {
    let mut g = LabeledGraph::new(GroupSpec::Cyclic(2), n).unwrap();
    let id = GroupElement::identity(g.group());
    let mut children = vec![0; n - 1];
    for v in 1..n - 1 {
        let p = if rng.gen_bool(0.7) { (v - 1) / 2 } else { rng.gen_range(0..v) };
        children[p] += 1;
        g.add_arc(p, v, id.clone()).unwrap();
    }
    for v in 1..n - 1 {
        if children[v] == 0 {
            g.add_arc(v, n - 1, id.clone()).unwrap();
        }
    }
    (g, VertexSet::from([0]), VertexSet::from([n - 1]), (1..n - 1).collect())
}

/// Important separators by definition: inclusion-minimal separators of size
/// at most `k` whose reach no other separator of at most the same size strictly contains.
fn brute_important(g: &LabeledGraph, x: &VertexSet, y: &VertexSet, rest: &[usize], k: usize) -> BTreeSet<VertexSet> {
    let seps: Vec<(VertexSet, VertexSet)> = common::subsets(rest, k)
        .into_iter()
        .filter_map(|s| {
            let r = common::reach(g, x, &s);
            r.is_disjoint(y).then_some((s, r))
        })
        .collect();
    let is_sep = |s: &VertexSet| common::reach(g, x, s).is_disjoint(y);
    seps.iter()
        .filter(|(s, r)| {
            let minimal = s.iter().all(|v| {
                let mut smaller = s.clone();
                smaller.remove(v);
                !is_sep(&smaller)
            });
            let dominated = seps.iter().any(|(s2, r2)| s2 != s && s2.len() <= s.len() && r.is_subset(r2) && r != r2);
            minimal && !dominated
        })
        .map(|(s, _)| s.clone())
        .collect()
}

fn reduction_instance(i: u64) -> (LabeledGraph, usize, VertexSet, VertexSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(4000 + i);
    let t = 2 + (i % 2) as usize;
    let zc = rng.gen_range(3..=5);
    let others = rng.gen_range(t..=(12 - zc).min(t + 4));
    let n = zc + others;
    let mut g = LabeledGraph::new(GroupSpec::Cyclic(2), n).unwrap();
    let id = GroupElement::identity(g.group());
    for u in 0..zc {
        for v in u + 1..zc {
            g.add_arc(u, v, id.clone()).unwrap();
        }
    }
    for v in zc..n {
        let attach = rng.gen_range(0..v);
        g.add_arc(attach, v, id.clone()).unwrap();
    }
    for _ in 0..rng.gen_range(0..=n) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            g.add_arc(u, v, id.clone()).unwrap();
        }
    }
    let z: VertexSet = (0..zc).collect();
    let tsize = rng.gen_range(2..=t);
    let mut pool: Vec<usize> = (zc..n).collect();
    rand::seq::SliceRandom::shuffle(pool.as_mut_slice(), &mut rng);
    let terminals: VertexSet = pool[..tsize].iter().copied().collect();
    (g, t, terminals, z)
}

fn criterion_4() -> Outcome {
    let results: Vec<Result<(usize, usize, bool), String>> = (0..REDUCTION_INSTANCES as u64)
        .into_par_iter()
        .map(|i| {
            let (g, t, terminals, z) = reduction_instance(i);
            let r = tw_reduction_set(&g, t, &terminals, &z, ThresholdMode::Small).map_err(|e| format!("instance {i}: {e}"))?;
            let bound_ok = r.per_partition.iter().all(|p| p.excluded.len() as u128 <= partition_bound(t));
            let tl: Vec<usize> = terminals.iter().copied().collect();
            let rest: Vec<usize> = g.vertices().filter(|v| !terminals.contains(v)).collect();
            let mut cuts = 0;
            let mut misses = 0;
            for parts in common::partitions(&tl) {
                for s in common::subsets(&rest, t) {
                    let minimal = common::is_multiway_cut(&g, &parts, &s)
                        && s.iter().all(|v| {
                            let mut smaller = s.clone();
                            smaller.remove(v);
                            !common::is_multiway_cut(&g, &parts, &smaller)
                        });
                    if minimal {
                        cuts += 1;
                        misses += s.iter().filter(|v| z.contains(v) && !r.set.contains(v)).count();
                    }
                }
            }
            Ok((cuts, misses, bound_ok))
        })
        .collect();
    let mut instances = 0;
    let mut cuts = 0;
    let mut misses = 0;
    let mut bounds = true;
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok((c, m, b)) => {
                instances += 1;
                cuts += c;
                misses += m;
                bounds &= b;
            }
            Err(e) => errors.push(e),
        }
    }
    let mut detail = format!(
        "{instances} instances, {cuts} minimal cuts of size <= t, {misses} vertices of Z outside the set, per-partition bound {}",
        if bounds { "held" } else { "violated" }
    );
    if let Some(e) = errors.first() {
        detail.push_str(&format!("; first error: {e}"));
    }
    outcome(instances >= REDUCTION_INSTANCES && misses == 0 && bounds, detail)
}

/// A clean side holding a clique `Z`, a separator `X` of size 2 or 3 and a
/// randomly labeled other side; at most 12 vertices.
fn irrelevant_instance(i: u64) -> (LabeledGraph, Separation, VertexSet, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(5000 + i);
    let spec = Arc::new(if i % 2 == 0 { GroupSpec::Cyclic(2) } else { GroupSpec::Cyclic(3) });
    let zc = rng.gen_range(4..=5);
    let xs = rng.gen_range(2..=3);
    let bs = rng.gen_range(2..=12 - zc - xs);
    let n = zc + xs + bs;
    let mut g = LabeledGraph::with_group(spec.clone(), n);
    let x: Vec<usize> = (zc..zc + xs).collect();
    let b_only: Vec<usize> = (zc + xs..n).collect();
    let mut clean_pairs = Vec::new();
    for u in 0..zc {
        for v in u + 1..zc {
            clean_pairs.push((u, v));
        }
    }
    for &xv in &x {
        clean_pairs.push((xv, rng.gen_range(0..zc)));
        if rng.gen_bool(0.5) {
            clean_pairs.push((xv, rng.gen_range(0..zc)));
        }
    }
    common::gauge_label(&mut rng, &spec, &clean_pairs, &mut g);
    let elements = GroupElement::enumerate(&spec).unwrap();
    let side: Vec<usize> = x.iter().chain(&b_only).copied().collect();
    for _ in 0..rng.gen_range(side.len()..=2 * side.len() + 2) {
        let (u, v) = (side[rng.gen_range(0..side.len())], side[rng.gen_range(0..side.len())]);
        if u != v && (b_only.contains(&u) || b_only.contains(&v) || rng.gen_bool(0.3)) {
            g.add_arc(u, v, elements[rng.gen_range(0..elements.len())].clone()).unwrap();
        }
    }
    let a: VertexSet = (0..zc + xs).collect();
    let b: VertexSet = x.iter().chain(&b_only).copied().collect();
    let k = rng.gen_range(1..=3);
    (g, Separation::new(a, b), (0..zc).collect(), k)
}

fn criterion_5() -> Outcome {
    let cfg = OracleConfig::default();
    let results: Vec<Option<(usize, usize)>> = (0..IRRELEVANT_INSTANCES as u64 * 6)
        .into_par_iter()
        .map(|i| {
            let (g, sep, z, k) = irrelevant_instance(i);
            let found = find_irrelevant_vertex(&g, &sep, &z, sep.order(), k, ThresholdMode::Small).ok()?;
            let h = g.remove_vertices(&VertexSet::from([found.vertex]));
            let ep = |g: &LabeledGraph| {
                let gfvs = min_gfvs(g, &cfg).unwrap().0;
                let half = max_packing(g, PackingMode::HalfIntegral, &cfg).unwrap().0;
                move |p: usize| half >= k || gfvs <= p
            };
            let (before, after) = (ep(&g), ep(&h));
            let violations = (0..=g.num_vertices()).filter(|&p| after(p) && !before(p)).count();
            Some((g.num_vertices() + 1, violations))
        })
        .collect();
    let returned: Vec<(usize, usize)> = results.into_iter().flatten().collect();
    let checks: usize = returned.iter().map(|r| r.0).sum();
    let violations: usize = returned.iter().map(|r| r.1).sum();
    outcome(
        returned.len() >= IRRELEVANT_INSTANCES && violations == 0,
        format!("{} vertices returned, {checks} (graph, p) checks, {violations} violations", returned.len()),
    )
}

fn criterion_6() -> Outcome {
    let results: Vec<Result<(bool, bool), String>> = (0..SPATH_INSTANCES as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(6000 + i);
            let n = rng.gen_range(4..=10);
            let m = rng.gen_range(n..=2 * n);
            let g = common::random_graph(&mut rng, &GroupSpec::Cyclic(3), n, m, false);
            let mut verts: Vec<usize> = (0..n).collect();
            rand::seq::SliceRandom::shuffle(verts.as_mut_slice(), &mut rng);
            let s: VertexSet = verts[..rng.gen_range(2..=5.min(n))].iter().copied().collect();
            let k = rng.gen_range(1..=3);
            let nu = common::max_disjoint(&common::non_null_s_paths(&g, &s));
            let res = non_null_s_paths_or_hitting_set(&g, &s, k).map_err(|e| format!("instance {i}: {e}"))?;
            Ok(match res {
                SPathDuality::Paths { paths } => {
                    let sets: Vec<VertexSet> = paths.iter().map(|p| common::trace(&g, p).unwrap().0.into_iter().collect()).collect();
                    let valid = paths.len() == k
                        && paths.iter().all(|p| common::is_non_null_s_path(&g, &s, p))
                        && common::max_disjoint(&sets) == k;
                    (valid && nu >= k, true)
                }
                SPathDuality::HittingSet { vertices } => {
                    let rest = g.remove_vertices(&vertices);
                    let s_rest: VertexSet = s.difference(&vertices).copied().collect();
                    let hits = common::non_null_s_paths(&rest, &s_rest).is_empty();
                    (hits && vertices.len() <= 2 * k - 2 && nu < k, false)
                }
            })
        })
        .collect();
    let mut ok = 0;
    let mut paths_side = 0;
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok((good, p)) => {
                ok += good as usize;
                paths_side += p as usize;
            }
            Err(e) => errors.push(e),
        }
    }
    let mut detail = format!(
        "{ok}/{SPATH_INSTANCES} agree with the brute-force maximum ({paths_side} paths, {} hitting sets)",
        SPATH_INSTANCES - paths_side - errors.len()
    );
    if let Some(e) = errors.first() {
        detail.push_str(&format!("; first error: {e}"));
    }
    outcome(ok == SPATH_INSTANCES, detail)
}

fn criterion_7() -> Outcome {
    let groups = [GroupSpec::Cyclic(3), GroupSpec::Cyclic(6), GroupSpec::Symmetric(3)];
    let mut samples = 0;
    let mut failures = 0;
    let mut i = 0u64;
    while samples < UNTANGLE_SAMPLES && i < 20 * UNTANGLE_SAMPLES as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(7000 + i);
        i += 1;
        let spec = Arc::new(groups[i as usize % 3].clone());
        let n = rng.gen_range(3..=7);
        let a: VertexSet = (0..rng.gen_range(2..=n)).collect();
        // Clean arcs inside `a`, random arcs elsewhere.
        let mut g = LabeledGraph::with_group(spec.clone(), n);
        let inside: Vec<(usize, usize)> =
            (0..rng.gen_range(1..=2 * a.len())).map(|_| (rng.gen_range(0..a.len()), rng.gen_range(0..a.len()))).filter(|(u, v)| u != v).collect();
        common::gauge_label(&mut rng, &spec, &inside, &mut g);
        let elements = GroupElement::enumerate(&spec).unwrap();
        for _ in 0..rng.gen_range(1..=2 * n) {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if !(a.contains(&u) && a.contains(&v)) {
                g.add_arc(u, v, elements[rng.gen_range(0..elements.len())].clone()).unwrap();
            }
        }
        let Ok(h) = untangle(&g, &a) else {
            failures += 1;
            continue;
        };
        samples += 1;
        let inner_identity =
            h.arcs().filter(|(_, x)| a.contains(&x.tail) && a.contains(&x.head)).all(|(_, x)| x.label.is_identity());
        if !inner_identity || common::non_null_cycle_sets(&g) != common::non_null_cycle_sets(&h) {
            failures += 1;
        }
    }
    outcome(
        samples >= UNTANGLE_SAMPLES && failures == 0,
        format!("{samples} graphs untangled, {failures} with a changed non-null cycle set or non-identity inner arc"),
    )
}

fn criterion_8() -> Outcome {
    let g = generate(&Family::EscherWall { h: 2 }, 0).unwrap().graph;
    match exact(&g, &OracleConfig::default()) {
        Ok(r) => {
            let gap = r.max_integral_packing < r.max_half_integral_packing || r.min_gfvs_size > 2 * r.max_integral_packing;
            outcome(
                gap,
                format!(
                    "escher wall h=2 ({} vertices): integral {}, half-integral {}, min gfvs {}",
                    g.num_vertices(),
                    r.max_integral_packing,
                    r.max_half_integral_packing,
                    r.min_gfvs_size
                ),
            )
        }
        Err(e) => outcome(false, format!("oracle failed: {e}")),
    }
}

fn criterion_9() -> Outcome {
    let mut specs: Vec<GroupSpec> = (1..=12).map(GroupSpec::Cyclic).collect();
    specs.extend((2..=4).map(GroupSpec::Symmetric));
    specs.push(GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Cyclic(3)]));
    specs.push(GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Symmetric(3)]));
    let mut checks = 0u64;
    let mut failures = 0u64;
    for spec in &specs {
        let spec = Arc::new(spec.clone());
        let els = GroupElement::enumerate(&spec).unwrap();
        let id = GroupElement::identity(&spec);
        let distinct: BTreeSet<String> = els.iter().map(|e| e.to_string()).collect();
        failures += (distinct.len() != els.len() || distinct.len() as u64 != spec.order()) as u64;
        for a in &els {
            checks += 3;
            failures += (a.multiply(&id) != *a) as u64 + (id.multiply(a) != *a) as u64;
            failures += !(a.multiply(&a.inverse()).is_identity() && a.inverse().multiply(a).is_identity()) as u64;
            for b in &els {
                checks += 1;
                failures += !els.contains(&a.multiply(b)) as u64;
                for c in &els {
                    checks += 1;
                    failures += (a.multiply(b).multiply(c) != a.multiply(&b.multiply(c))) as u64;
                }
            }
        }
    }
    outcome(failures == 0, format!("{} groups, {checks} axiom checks, {failures} failures", specs.len()))
}

fn main() {
    let mut all = true;
    let mut report = |n: usize, name: &str, o: Outcome| {
        all &= o.pass;
        println!("criterion {n} {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    };
    let (c1, covers) = criterion_1();
    report(1, "certificate soundness", c1);
    report(2, "bounded-treewidth cover bound", criterion_2(&covers));
    report(3, "important separators", criterion_3());
    report(4, "treewidth-reduction soundness", criterion_4());
    report(5, "irrelevant-vertex equivalence", criterion_5());
    report(6, "S-path duality", criterion_6());
    report(7, "untangling equivalence", criterion_7());
    report(8, "half-integral gap", criterion_8());
    report(9, "group laws", criterion_9());
    if !all {
        std::process::exit(1);
    }
}
