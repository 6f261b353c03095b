//! Minimum-weight edge cover, N-edge cover, and the gadget reduction that
//! solves covering instances whose ladder/hexagon components all have
//! degree 1 or 2 exactly.
//!
//! Edge covers run through minimum-weight perfect matching on a doubled
//! graph, which keeps negative weights honest: strictly negative edges are
//! always worth taking, so they are forced in first and the nonnegative
//! remainder goes through the matching reduction.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::chain::{solve_chain, ChainProblem};
use crate::cost::{self, Cost};
use crate::decomp::{component_degree, corners, Component, Decomposition};
use crate::graph::{edge, CoveringInstance, Edge, LinkSolution, Obstruction};
use crate::matching::min_weight_perfect_matching;

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("node {0} has no incident edge")]
    IsolatedNode(usize),
    #[error("node {0} of N has no incident edge")]
    UncoverableNode(usize),
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("instance is infeasible: {reason}")]
    Infeasible {
        reason: String,
        witness: Option<Obstruction>,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl SolveError {
    pub fn infeasible(reason: impl Into<String>) -> Self {
        SolveError::Infeasible { reason: reason.into(), witness: None }
    }
}

/// Minimum-weight edge cover of the nodes `0..n`. Weights may be negative.
pub fn min_edge_cover(
    n: usize,
    edges: &[(Edge, Cost)],
) -> Result<(BTreeSet<Edge>, Cost), CoverError> {
    n_edge_cover(n, edges, &(0..n).collect())
}

/// Minimum-weight edge set whose endpoints contain `need`. Strictly
/// negative edges are always included; the rest reduces to a plain edge
/// cover through a zero-cost apex attached to every node outside `need`.
pub fn n_edge_cover(
    n: usize,
    edges: &[(Edge, Cost)],
    need: &BTreeSet<usize>,
) -> Result<(BTreeSet<Edge>, Cost), CoverError> {
    // Collapse parallels to their cheapest copy; loops never help a cover
    // more cheaply than the matching structure below allows, and the
    // callers never produce them.
    let mut cheapest: BTreeMap<Edge, Cost> = BTreeMap::new();
    for ((a, b), w) in edges {
        debug_assert!(a != b, "loops are not cover edges");
        let e = edge(*a, *b);
        match cheapest.get(&e) {
            Some(old) if *old <= *w => {}
            _ => {
                cheapest.insert(e, w.clone());
            }
        }
    }
    let mut chosen: BTreeSet<Edge> = BTreeSet::new();
    let mut covered: BTreeSet<usize> = BTreeSet::new();
    for (e, w) in &cheapest {
        if *w < Cost::zero() {
            chosen.insert(*e);
            covered.insert(e.0);
            covered.insert(e.1);
        }
    }
    let remaining: BTreeSet<usize> = need.difference(&covered).copied().collect();
    let nonneg: Vec<(Edge, Cost)> = cheapest
        .iter()
        .filter(|(_, w)| **w >= Cost::zero())
        .map(|(e, w)| (*e, w.clone()))
        .collect();
    for &v in &remaining {
        if !nonneg.iter().any(|((a, b), _)| *a == v || *b == v) {
            return Err(CoverError::UncoverableNode(v));
        }
    }
    let rest = nonneg_n_edge_cover(n, &nonneg, &remaining)?;
    chosen.extend(rest);
    let total = cost::total(chosen.iter().map(|e| &cheapest[e]));
    Ok((chosen, total))
}

/// Nonnegative-weight N-edge cover via the apex construction, then plain
/// edge cover via doubled-graph perfect matching.
fn nonneg_n_edge_cover(
    n: usize,
    edges: &[(Edge, Cost)],
    need: &BTreeSet<usize>,
) -> Result<BTreeSet<Edge>, CoverError> {
    if need.is_empty() {
        return Ok(BTreeSet::new());
    }
    // Restrict to nodes that matter: needed nodes and their neighbours.
    // Everything else only ever appears as the far endpoint of a candidate
    // edge, which the cover is free to use.
    let all_needed = need.iter().all(|&v| v < n);
    assert!(all_needed);
    if need.len() == n {
        return nonneg_edge_cover(n, edges);
    }
    // Apex node n, zero edges to every node outside `need`.
    let mut aug: Vec<(Edge, Cost)> = edges.to_vec();
    for v in 0..n {
        if !need.contains(&v) {
            aug.push((edge(v, n), Cost::zero()));
        }
    }
    let cover = nonneg_edge_cover(n + 1, &aug)?;
    Ok(cover.into_iter().filter(|&(a, b)| a != n && b != n).collect())
}

/// Classic reduction: double the graph, join each node to its copy at
/// twice the weight of its cheapest incident edge, take a minimum-weight
/// perfect matching, decode matched copies as cheapest pendant edges.
fn nonneg_edge_cover(n: usize, edges: &[(Edge, Cost)]) -> Result<BTreeSet<Edge>, CoverError> {
    let mut mu: Vec<Option<(Cost, Edge)>> = vec![None; n];
    for ((a, b), w) in edges {
        for &v in &[*a, *b] {
            if mu[v].as_ref().is_none_or(|(best, _)| w < best) {
                mu[v] = Some((w.clone(), edge(*a, *b)));
            }
        }
    }
    let mut isolated = None;
    let mu: Vec<(Cost, Edge)> = mu
        .into_iter()
        .enumerate()
        .map(|(v, m)| {
            m.unwrap_or_else(|| {
                isolated = Some(v);
                (Cost::zero(), (v, v))
            })
        })
        .collect();
    if let Some(v) = isolated {
        return Err(CoverError::IsolatedNode(v));
    }
    let mut h: Vec<(usize, usize, Cost)> = Vec::with_capacity(2 * edges.len() + n);
    for ((a, b), w) in edges {
        h.push((*a, *b, w.clone()));
        h.push((*a + n, *b + n, w.clone()));
    }
    for (v, (w, _)) in mu.iter().enumerate() {
        h.push((v, v + n, w.clone() + w));
    }
    let (mate, _) = min_weight_perfect_matching(2 * n, &h)
        .expect("the doubled graph always has a perfect matching");
    let mut cover = BTreeSet::new();
    for v in 0..n {
        let m = mate[v];
        if m == v + n {
            cover.insert(mu[v].1);
        } else {
            cover.insert(edge(v, m));
        }
    }
    Ok(cover)
}

/// Costs of covering one degree-1 or degree-2 component under the four
/// corner regimes, with the witnessing link sets.
#[derive(Debug, Clone)]
pub struct GadgetEntry {
    pub cost: Cost,
    pub links: BTreeSet<Edge>,
}

#[derive(Debug, Clone)]
pub enum GadgetTable {
    /// Corner covered internally (`c1`) or not (`c0`).
    Degree1 {
        corner: usize,
        c0: Option<GadgetEntry>,
        c1: Option<GadgetEntry>,
    },
    /// Neither corner / only first / only second / both.
    Degree2 {
        corners: (usize, usize),
        c0: Option<GadgetEntry>,
        c1: Option<GadgetEntry>,
        c2: Option<GadgetEntry>,
        c12: Option<GadgetEntry>,
    },
}

/// Solves the component under a corner regime: `internal` corners must be
/// covered by internal links, `excluded` corners must not be touched by
/// them (their incident internal edges become unavailable).
fn chain_variant(
    inst: &CoveringInstance,
    comp: &Component,
    internal: &[usize],
    excluded: &[usize],
) -> Option<GadgetEntry> {
    let nodes = comp.nodes();
    let weight: BTreeMap<Edge, Cost> = inst
        .links
        .iter()
        .filter(|&&(a, b)| nodes.contains(&a) && nodes.contains(&b))
        .filter(|&&(a, b)| !excluded.contains(&a) && !excluded.contains(&b))
        .map(|e| (*e, inst.cost[e].clone()))
        .collect();
    let mut require: BTreeSet<usize> = nodes
        .iter()
        .copied()
        .filter(|&v| inst.graph.degree(v) == 3 && !excluded.contains(&v) && !internal.contains(&v))
        .filter(|v| !corners(&inst.graph, comp).contains(v))
        .collect();
    require.extend(internal.iter().copied());
    let p = ChainProblem::new(&inst.graph, comp.clone(), weight, require);
    solve_chain(&p)
        .ok()
        .map(|(links, cost)| GadgetEntry { cost, links })
}

/// Builds the gadget table of a degree-1 or degree-2 component.
pub fn build_gadget_table(
    inst: &CoveringInstance,
    comp: &Component,
) -> Result<GadgetTable, SolveError> {
    let cs = corners(&inst.graph, comp);
    match component_degree(&inst.graph, comp) {
        1 => {
            let v = cs[0];
            Ok(GadgetTable::Degree1 {
                corner: v,
                c0: chain_variant(inst, comp, &[], &[v]),
                c1: chain_variant(inst, comp, &[v], &[]),
            })
        }
        2 => {
            if cs.len() != 2 {
                return Err(SolveError::Precondition(format!(
                    "degree-2 component with corners {cs:?}"
                )));
            }
            let (p, q) = (cs[0], cs[1]);
            Ok(GadgetTable::Degree2 {
                corners: (p, q),
                c0: chain_variant(inst, comp, &[], &[p, q]),
                c1: chain_variant(inst, comp, &[p], &[q]),
                c2: chain_variant(inst, comp, &[q], &[p]),
                c12: chain_variant(inst, comp, &[p, q], &[]),
            })
        }
        d => Err(SolveError::Precondition(format!(
            "component has degree {d}, want 1 or 2"
        ))),
    }
}

/// What a cover edge of the auxiliary graph stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
enum EdgeRole {
    /// A real link of the instance.
    Link(Edge),
    /// Gadget edge `index of component`, mode it selects.
    Gadget(usize, Mode),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Mode {
    M0,
    M1,
    M2,
    M12,
}

/// Exact minimum-cost cover of (a) every degree-3 node of the host and
/// (b) every square inside the degree-1 and degree-2 components, by the
/// gadget reduction to N-edge cover. Components of degree 3 or more pass
/// through untouched (only their degree-3 nodes are covered); degree-0
/// components must have been peeled off beforehand.
pub fn solve_degree12(
    inst: &CoveringInstance,
    dec: &Decomposition,
) -> Result<LinkSolution, SolveError> {
    let g = &inst.graph;
    let mut tables: Vec<(usize, GadgetTable)> = vec![];
    let mut gadget_nodes: BTreeSet<usize> = BTreeSet::new();
    for (ci, comp) in dec.components.iter().enumerate() {
        match component_degree(g, comp) {
            0 => {
                return Err(SolveError::Precondition(
                    "degree-0 component present; peel it first".into(),
                ))
            }
            1 | 2 => {
                tables.push((ci, build_gadget_table(inst, comp)?));
                gadget_nodes.extend(comp.nodes());
            }
            _ => {}
        }
    }

    // Nodes of the cover graph: every host node outside the gadget
    // components, plus the gadget corners, plus fresh helper nodes.
    let mut index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut fresh = 0usize;
    let alloc = |index: &mut BTreeMap<usize, usize>, fresh: &mut usize, host: Option<usize>| {
        let id = *fresh;
        *fresh += 1;
        if let Some(h) = host {
            index.insert(h, id);
        }
        id
    };
    for v in 0..g.node_count() {
        if !gadget_nodes.contains(&v) {
            alloc(&mut index, &mut fresh, Some(v));
        }
    }
    let mut need: BTreeSet<usize> = BTreeSet::new();
    for v in 0..g.node_count() {
        if !gadget_nodes.contains(&v) && g.degree(v) == 3 {
            need.insert(index[&v]);
        }
    }
    let mut cover_edges: Vec<(Edge, Cost, EdgeRole)> = vec![];
    // Links entirely outside gadget components.
    for &l in &inst.links {
        if !gadget_nodes.contains(&l.0) && !gadget_nodes.contains(&l.1) {
            cover_edges.push((
                edge(index[&l.0], index[&l.1]),
                inst.cost[&l].clone(),
                EdgeRole::Link(l),
            ));
        }
    }
    let mut forced = LinkSolution::default();
    for (ci, table) in &tables {
        match table {
            GadgetTable::Degree1 { corner, c0, c1 } => {
                if c0.is_none() && c1.is_none() {
                    return Err(SolveError::infeasible(format!(
                        "component {ci} admits no internal covering"
                    )));
                }
                let vg = alloc(&mut index, &mut fresh, Some(*corner));
                let v1g = alloc(&mut index, &mut fresh, None);
                let v0g = alloc(&mut index, &mut fresh, None);
                if let Some(e0) = c0 {
                    cover_edges.push((
                        edge(v0g, v1g),
                        e0.cost.clone(),
                        EdgeRole::Gadget(*ci, Mode::M0),
                    ));
                }
                if let Some(e1) = c1 {
                    cover_edges.push((
                        edge(v1g, vg),
                        e1.cost.clone(),
                        EdgeRole::Gadget(*ci, Mode::M1),
                    ));
                }
                need.insert(vg);
                need.insert(v1g);
            }
            GadgetTable::Degree2 { corners: (p, q), c0, c1, c2, c12 } => {
                let min3 = [c0, c1, c2]
                    .iter()
                    .filter_map(|e| e.as_ref().map(|e| e.cost.clone()))
                    .min();
                match (&min3, c12) {
                    (None, None) => {
                        return Err(SolveError::infeasible(format!(
                            "component {ci} admits no internal covering"
                        )))
                    }
                    (None, Some(e12)) => {
                        // Only the both-corners regime is possible: solve it
                        // outright; the corners need no external cover.
                        forced = forced.merge(
                            LinkSolution::from_links(
                                e12.links.iter().copied(),
                                inst,
                                "degree12-forced",
                            ),
                            inst,
                        );
                        alloc(&mut index, &mut fresh, Some(*p));
                        alloc(&mut index, &mut fresh, Some(*q));
                    }
                    (Some(min3), _) => {
                        let pg = alloc(&mut index, &mut fresh, Some(*p));
                        let qg = alloc(&mut index, &mut fresh, Some(*q));
                        let u1g = alloc(&mut index, &mut fresh, None);
                        let u0g = alloc(&mut index, &mut fresh, None);
                        if let Some(e0) = c0 {
                            cover_edges.push((
                                edge(u0g, u1g),
                                e0.cost.clone(),
                                EdgeRole::Gadget(*ci, Mode::M0),
                            ));
                        }
                        if let Some(e1) = c1 {
                            cover_edges.push((
                                edge(u1g, pg),
                                e1.cost.clone(),
                                EdgeRole::Gadget(*ci, Mode::M1),
                            ));
                        }
                        if let Some(e2) = c2 {
                            cover_edges.push((
                                edge(u1g, qg),
                                e2.cost.clone(),
                                EdgeRole::Gadget(*ci, Mode::M2),
                            ));
                        }
                        if let Some(e12) = c12 {
                            cover_edges.push((
                                edge(pg, qg),
                                e12.cost.clone() - min3.clone(),
                                EdgeRole::Gadget(*ci, Mode::M12),
                            ));
                        }
                        need.insert(pg);
                        need.insert(qg);
                        need.insert(u1g);
                    }
                }
            }
        }
    }
    // Coboundary links of the gadget components keep their own cost. This
    // runs after every gadget corner has an index, since a coboundary link
    // may join two different components.
    for (ci, _) in &tables {
        let nodes = dec.components[*ci].nodes();
        for (a, b) in crate::decomp::coboundary(g, &nodes) {
            let l = edge(a, b);
            if inst.links.contains(&l) {
                cover_edges.push((
                    edge(index[&a], index[&b]),
                    inst.cost[&l].clone(),
                    EdgeRole::Link(l),
                ));
            }
        }
    }
    // Coboundary links may have been added from both sides; dedupe.
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    cover_edges.retain(|(e, _, _)| seen.insert(*e));

    let flat: Vec<(Edge, Cost)> = cover_edges.iter().map(|(e, c, _)| (*e, c.clone())).collect();
    let roles: BTreeMap<Edge, EdgeRole> = cover_edges
        .iter()
        .map(|(e, _, r)| (*e, r.clone()))
        .collect();
    let (cover, _) = n_edge_cover(fresh, &flat, &need).map_err(|e| match e {
        CoverError::UncoverableNode(v) | CoverError::IsolatedNode(v) => {
            SolveError::infeasible(format!("cover node {v} cannot be covered"))
        }
    })?;

    // Decode the cover back into links.
    let mut links: BTreeSet<Edge> = BTreeSet::new();
    let mut modes: BTreeMap<usize, BTreeSet<Mode>> = BTreeMap::new();
    for e in &cover {
        match &roles[e] {
            EdgeRole::Link(l) => {
                links.insert(*l);
            }
            EdgeRole::Gadget(ci, mode) => {
                modes.entry(*ci).or_default().insert(*mode);
            }
        }
    }
    for (ci, table) in &tables {
        let picked = modes.get(ci).cloned().unwrap_or_default();
        match table {
            GadgetTable::Degree1 { c0, c1, .. } => {
                let entry = if picked.contains(&Mode::M1) {
                    c1.as_ref().unwrap()
                } else if picked.contains(&Mode::M0) {
                    c0.as_ref().unwrap()
                } else {
                    unreachable!("gadget node of component {ci} left uncovered")
                };
                links.extend(entry.links.iter().copied());
            }
            GadgetTable::Degree2 { c0, c1, c2, c12, .. } => {
                let all_infeasible =
                    c0.is_none() && c1.is_none() && c2.is_none();
                if all_infeasible {
                    continue; // handled by the forced pre-solve
                }
                let entry = if picked.contains(&Mode::M12)
                    || (picked.contains(&Mode::M1) && picked.contains(&Mode::M2))
                {
                    // Two one-sided picks imply both one-sided regimes are
                    // feasible, hence the both regime is too.
                    c12.as_ref().expect("c12 <= c1 + c2 when both finite")
                } else if picked.contains(&Mode::M1) {
                    c1.as_ref().unwrap()
                } else if picked.contains(&Mode::M2) {
                    c2.as_ref().unwrap()
                } else if picked.contains(&Mode::M0) {
                    c0.as_ref().unwrap()
                } else {
                    unreachable!("gadget hub of component {ci} left uncovered")
                };
                links.extend(entry.links.iter().copied());
            }
        }
    }
    let mut sol = LinkSolution::from_links(links, inst, "degree12");
    sol = sol.merge(forced, inst);
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::rat;
    use rand::{Rng, SeedableRng};

    fn brute_force_cover(
        _n: usize,
        edges: &[(Edge, Cost)],
        need: &BTreeSet<usize>,
    ) -> Option<Cost> {
        let mut best: Option<Cost> = None;
        for mask in 0u32..(1 << edges.len()) {
            let mut covered = BTreeSet::new();
            let mut cost = Cost::zero();
            for (i, ((a, b), w)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    covered.insert(*a);
                    covered.insert(*b);
                    cost += w.clone();
                }
            }
            if need.is_subset(&covered) && best.as_ref().is_none_or(|b| cost < *b) {
                best = Some(cost);
            }
        }
        best
    }

    #[test]
    fn triangle_unit_cover() {
        let edges = vec![
            ((0, 1), rat(1, 1)),
            ((1, 2), rat(1, 1)),
            ((0, 2), rat(1, 1)),
        ];
        let (cover, cost) = min_edge_cover(3, &edges).unwrap();
        assert_eq!(cost, rat(2, 1));
        assert_eq!(cover.len(), 2);
    }

    #[test]
    fn negative_edge_is_taken() {
        let edges = vec![((0, 1), rat(-3, 1))];
        let (cover, cost) = min_edge_cover(2, &edges).unwrap();
        assert_eq!(cost, rat(-3, 1));
        assert_eq!(cover, [(0, 1)].into());
    }

    #[test]
    fn isolated_node_rejected() {
        let edges = vec![((0, 1), rat(1, 1))];
        assert!(matches!(
            min_edge_cover(3, &edges),
            Err(CoverError::UncoverableNode(2))
        ));
    }

    #[test]
    fn subset_cover_cases() {
        let edges = vec![
            ((0, 1), rat(1, 1)),
            ((1, 2), rat(1, 1)),
            ((0, 2), rat(1, 1)),
        ];
        let (cover, cost) = n_edge_cover(3, &edges, &[0, 1].into()).unwrap();
        assert_eq!(cost, rat(1, 1));
        assert_eq!(cover, [(0, 1)].into());
        // N = V degenerates to the full cover.
        let (_, cost) = n_edge_cover(3, &edges, &(0..3).collect()).unwrap();
        assert_eq!(cost, rat(2, 1));
    }

    #[test]
    fn covers_match_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for trial in 0..200 {
            let n = rng.gen_range(2..=8);
            let mut edges = vec![];
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.55) {
                        edges.push((
                            edge(u, v),
                            rat(rng.gen_range(-5..=9), rng.gen_range(1..=2)),
                        ));
                    }
                }
            }
            if edges.len() > 16 {
                continue;
            }
            let need: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
            let brute = brute_force_cover(n, &edges, &need);
            match n_edge_cover(n, &edges, &need) {
                Ok((cover, cost)) => {
                    assert_eq!(Some(&cost), brute.as_ref(), "trial {trial}");
                    let covered: BTreeSet<usize> =
                        cover.iter().flat_map(|&(a, b)| [a, b]).collect();
                    assert!(need.is_subset(&covered), "trial {trial}");
                }
                Err(_) => assert_eq!(brute, None, "trial {trial}"),
            }
        }
    }

    #[test]
    fn degree12_matches_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        let mut negative_seen = 0;
        for trial in 0..60 {
            let inst = crate::gen::random_degree12_instance(&mut rng, trial % 3 == 0);
            let dec = crate::decomp::chain_decompose(&inst.graph).unwrap();
            for (_, t) in dec
                .components
                .iter()
                .enumerate()
                .filter(|(_, c)| component_degree(&inst.graph, c) == 2)
                .map(|(i, c)| (i, build_gadget_table(&inst, c).unwrap()))
            {
                if let GadgetTable::Degree2 { c0, c1, c2, c12: Some(e12), .. } = &t {
                    let min3 = [c0, c1, c2]
                        .iter()
                        .filter_map(|e| e.as_ref().map(|e| e.cost.clone()))
                        .min();
                    if min3.is_some_and(|m| e12.cost < m) {
                        negative_seen += 1;
                    }
                }
            }
            let sol = solve_degree12(&inst, &dec).unwrap();
            let opt = crate::oracle::exact_opt(&inst, &Default::default()).unwrap();
            assert_eq!(sol.total_cost, opt.total_cost, "trial {trial}");
            assert!(crate::graph::is_feasible(&inst, &sol), "trial {trial}");
        }
        assert!(negative_seen > 0, "no negative gadget edge was exercised");
    }

    /// Gadget-free degeneracy: no components, only degree-3 nodes.
    #[test]
    fn degree12_without_components() {
        // Two degree-3 stars sharing leaves; no squares anywhere.
        let mut g = crate::graph::Multigraph::new(8);
        for (a, b) in [(0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)] {
            g.add_edge(a, b);
        }
        g.add_edge(2, 5);
        let links: BTreeSet<Edge> = g.edges().iter().copied().collect();
        let inst = CoveringInstance::unweighted(g, 4, links);
        let dec = crate::decomp::chain_decompose(&inst.graph).unwrap();
        assert!(dec.components.is_empty());
        let sol = solve_degree12(&inst, &dec).unwrap();
        let opt = crate::oracle::exact_opt(&inst, &Default::default()).unwrap();
        assert_eq!(sol.total_cost, opt.total_cost);
    }
}
