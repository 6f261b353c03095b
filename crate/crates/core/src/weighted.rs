//! The 3/2-approximation for weighted 4-obstruction covering: cover the
//! corners of high-degree components with an N-edge cover, halve it
//! through a Petersen split of an auxiliary 4-regular graph, use the
//! chosen half to cut every component down to degree at most 2, then
//! solve the residual instance exactly and translate back.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::cost::{self, Cost};
use crate::cover::{n_edge_cover, solve_degree12, CoverError, SolveError};
use crate::decomp::{chain_decompose, component_degree, corners, Decomposition};
use crate::factor::{make_four_regular, two_factorize};
use crate::graph::{
    edge, validate_instance, CoveringInstance, Edge, LinkSolution, Multigraph,
};

/// The auxiliary multigraph built from the corner cover. One node per
/// component of degree at least 3, one labelled edge per surviving cover
/// link, zero-cost padding up to 4-regularity.
#[derive(Debug, Clone)]
pub struct AuxGraph {
    pub graph: Multigraph,
    /// Labels by edge slot; padding slots carry none.
    pub labels: BTreeMap<usize, Edge>,
    /// Which link first touched each covered corner.
    pub satisfied: BTreeMap<usize, Edge>,
}

/// Corners of components with degree >= 3, i.e. the nodes the first
/// pipeline stage must cover.
pub fn high_degree_corners(inst: &CoveringInstance, dec: &Decomposition) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for comp in &dec.components {
        if component_degree(&inst.graph, comp) >= 3 {
            out.extend(corners(&inst.graph, comp));
        }
    }
    out
}

/// Minimum-cost link set covering every high-degree-component corner.
/// Infeasible when a corner has no incident link (its star obstruction is
/// then uncoverable).
pub fn corner_cover(
    inst: &CoveringInstance,
    dec: &Decomposition,
) -> Result<BTreeSet<Edge>, SolveError> {
    let need_hosts = high_degree_corners(inst, dec);
    if need_hosts.is_empty() {
        return Ok(BTreeSet::new());
    }
    let edges: Vec<(Edge, Cost)> = inst
        .links
        .iter()
        .map(|l| (*l, inst.cost[l].clone()))
        .collect();
    let (cover, _) =
        n_edge_cover(inst.graph.node_count(), &edges, &need_hosts).map_err(|e| match e {
            CoverError::UncoverableNode(v) | CoverError::IsolatedNode(v) => {
                SolveError::infeasible(format!("corner {v} has no incident link"))
            }
        })?;
    Ok(cover)
}

/// Builds the auxiliary graph: cover links are scanned in canonical
/// order; the first link at each corner satisfies it. A link satisfying
/// corners in components a and b becomes an edge (or loop) between their
/// aux nodes; a link satisfying exactly one corner gets a dummy endpoint;
/// links satisfying nothing are dropped. The result is padded 4-regular.
pub fn build_auxiliary(
    inst: &CoveringInstance,
    dec: &Decomposition,
    ec: &BTreeSet<Edge>,
) -> AuxGraph {
    let g = &inst.graph;
    let mut comp_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut aux_node: BTreeMap<usize, usize> = BTreeMap::new();
    let mut aux = Multigraph::new(0);
    for (ci, comp) in dec.components.iter().enumerate() {
        if component_degree(g, comp) >= 3 {
            for v in comp.nodes() {
                comp_of.insert(v, ci);
            }
            let id = aux.add_node(Some(format!("component:{ci}")));
            aux_node.insert(ci, id);
        }
    }
    let corners_set = high_degree_corners(inst, dec);
    let mut satisfied: BTreeMap<usize, Edge> = BTreeMap::new();
    let mut labels: BTreeMap<usize, Edge> = BTreeMap::new();
    for &l in ec {
        let (u, v) = l;
        let fresh_u = corners_set.contains(&u) && !satisfied.contains_key(&u);
        let fresh_v = corners_set.contains(&v) && !satisfied.contains_key(&v);
        match (fresh_u, fresh_v) {
            (true, true) => {
                satisfied.insert(u, l);
                satisfied.insert(v, l);
                let a = aux_node[&comp_of[&u]];
                let b = aux_node[&comp_of[&v]];
                let slot = aux.edges().len();
                aux.add_edge(a, b);
                labels.insert(slot, l);
            }
            (true, false) | (false, true) => {
                let c = if fresh_u { u } else { v };
                satisfied.insert(c, l);
                let other = if fresh_u { v } else { u };
                let a = aux_node[&comp_of[&c]];
                let d = aux.add_node(Some(format!("dummy-of:{other}")));
                let slot = aux.edges().len();
                aux.add_edge(a, d);
                labels.insert(slot, l);
            }
            (false, false) => {
                // Both endpoints already satisfied (or never corners):
                // drop the link, feasibility and cost are unharmed.
            }
        }
    }
    let padded = make_four_regular(&aux).expect("aux degrees stay at most 4");
    AuxGraph { graph: padded, labels, satisfied }
}

/// Splits the auxiliary graph into two 2-factors and keeps the labels of
/// the cheaper half, measured by original link costs.
pub fn select_f1(inst: &CoveringInstance, aux: &AuxGraph) -> BTreeSet<Edge> {
    if aux.graph.node_count() == 0 {
        return BTreeSet::new();
    }
    let pair = two_factorize(&aux.graph).expect("padded graph is 4-regular");
    let half_cost = |slots: &[usize]| -> Cost {
        cost::total(
            slots
                .iter()
                .filter_map(|s| aux.labels.get(s))
                .map(|l| &inst.cost[l]),
        )
    };
    let c1 = half_cost(&pair.slots1);
    let c2 = half_cost(&pair.slots2);
    let chosen = if c1 <= c2 { &pair.slots1 } else { &pair.slots2 };
    chosen
        .iter()
        .filter_map(|s| aux.labels.get(s))
        .copied()
        .collect()
}

/// Applies the degree-reduction surgery: F1 links on component
/// coboundaries vanish from the graph; internal F1 links become free and
/// their corner endpoints have their coboundary edges re-routed to fresh
/// dummy nodes. Returns the reduced instance plus the map from re-routed
/// links back to the originals.
pub fn reduce_degrees(
    inst: &CoveringInstance,
    dec: &Decomposition,
    f1: &BTreeSet<Edge>,
) -> (CoveringInstance, BTreeMap<Edge, Edge>) {
    let mut g = inst.graph.clone();
    let mut links = inst.links.clone();
    let mut cost = inst.cost.clone();
    let mut decode: BTreeMap<Edge, Edge> = BTreeMap::new();
    let comp_nodes: Vec<BTreeSet<usize>> = dec.components.iter().map(|c| c.nodes()).collect();
    let in_comp = |v: usize| comp_nodes.iter().position(|ns| ns.contains(&v));
    // Coboundary deletions run before corner detachments: a chosen
    // coboundary link must disappear outright even when it is also the
    // coboundary edge of a corner some internal chosen link detaches.
    for &f in f1 {
        let (x, y) = f;
        let cx = in_comp(x);
        let cy = in_comp(y);
        let internal = cx.is_some() && cx == cy;
        if !internal && (cx.is_some() || cy.is_some()) {
            g.remove_edge(x, y);
            links.remove(&f);
            cost.remove(&f);
        }
    }
    for &f in f1 {
        let (x, y) = f;
        let cx = in_comp(x);
        let cy = in_comp(y);
        let internal = cx.is_some() && cx == cy;
        if internal {
            // Detach the coboundary edge of each corner endpoint onto a
            // fresh dummy, then make the link free.
            let nodes = &comp_nodes[cx.unwrap()];
            for u in [x, y] {
                let outgoing: Vec<Edge> = g
                    .edges()
                    .iter()
                    .copied()
                    .filter(|&(a, b)| (a == u && !nodes.contains(&b)) || (b == u && !nodes.contains(&a)))
                    .collect();
                for uv in outgoing {
                    let w = if uv.0 == u { uv.1 } else { uv.0 };
                    let dummy = g.add_node(Some(format!("dummy-of:{u}")));
                    g.remove_edge(uv.0, uv.1);
                    g.add_edge(dummy, w);
                    if links.remove(&uv) {
                        let moved = edge(dummy, w);
                        links.insert(moved);
                        let c = cost.remove(&uv).expect("link had a cost");
                        cost.insert(moved, c);
                        let orig = decode.remove(&uv).unwrap_or(uv);
                        decode.insert(moved, orig);
                    }
                }
            }
            cost.insert(f, Cost::zero());
        } else if cx.is_none() && cy.is_none() {
            unreachable!("a chosen cover link must touch a component");
        }
    }
    (CoveringInstance { graph: g, d: 4, links, cost }, decode)
}

/// Exact solver for instances whose components all have degree at most 2
/// (connected pieces that are a single degree-0 component are solved by
/// the chain solver; the rest through the gadget reduction).
fn solve_exact_low_degree(inst: &CoveringInstance) -> Result<LinkSolution, SolveError> {
    let mut total = LinkSolution::default();
    for piece in inst.graph.connected_components() {
        let (sub, back) = inst.restrict(&piece);
        let dec = chain_decompose(&sub.graph)
            .map_err(|e| SolveError::Precondition(e.to_string()))?;
        let sol = if dec.components.len() == 1
            && component_degree(&sub.graph, &dec.components[0]) == 0
        {
            crate::chain::solve_degree0(&sub, &dec.components[0])
                .map_err(|e| SolveError::infeasible(e.to_string()))?
        } else {
            for comp in &dec.components {
                let d = component_degree(&sub.graph, comp);
                assert!(
                    (1..=2).contains(&d),
                    "degree reduction left a component of degree {d}"
                );
            }
            solve_degree12(&sub, &dec)?
        };
        let mapped = sol.links.iter().map(|&(a, b)| edge(back[a], back[b]));
        total = total.merge(
            LinkSolution::from_links(mapped, inst, "degree12"),
            inst,
        );
    }
    Ok(total)
}

/// Per-stage cost borne by a weighted run, for `--trace`.
#[derive(Debug, Clone, Default)]
pub struct WeightedTrace {
    pub corner_cover_cost: Cost,
    pub f1_cost: Cost,
    pub residual_cost: Cost,
}

/// The full 3/2-approximation. Connected components of the instance are
/// solved independently.
pub fn solve_weighted(inst: &CoveringInstance) -> Result<LinkSolution, SolveError> {
    solve_weighted_traced(inst).map(|(sol, _)| sol)
}

pub fn solve_weighted_traced(
    inst: &CoveringInstance,
) -> Result<(LinkSolution, WeightedTrace), SolveError> {
    if inst.d != 4 {
        return Err(SolveError::Precondition(format!(
            "the approximation pipelines require d = 4, got {}",
            inst.d
        )));
    }
    validate_instance(inst).map_err(|e| SolveError::Precondition(e.to_string()))?;
    let mut total = LinkSolution::default();
    let mut trace = WeightedTrace::default();
    for piece in inst.graph.connected_components() {
        let (sub, back) = inst.restrict(&piece);
        let (sol, t) = solve_weighted_piece(&sub)?;
        let mapped = sol
            .links
            .iter()
            .map(|&(a, b)| (edge(back[a], back[b]), sol.stage_tags[&(a, b)].clone()))
            .collect::<Vec<_>>();
        for (l, tag) in mapped {
            total.links.insert(l);
            total.stage_tags.insert(l, tag);
        }
        trace.corner_cover_cost += t.corner_cover_cost;
        trace.f1_cost += t.f1_cost;
        trace.residual_cost += t.residual_cost;
    }
    total.total_cost = cost::total(total.links.iter().map(|l| inst.link_cost(l)));
    debug_assert!(crate::graph::is_feasible(inst, &total));
    Ok((total, trace))
}

fn solve_weighted_piece(
    inst: &CoveringInstance,
) -> Result<(LinkSolution, WeightedTrace), SolveError> {
    let mut trace = WeightedTrace::default();
    let dec = chain_decompose(&inst.graph)
        .map_err(|e| SolveError::Precondition(e.to_string()))?;
    // A connected piece that is one degree-0 component solves exactly.
    if dec.components.len() == 1 && component_degree(&inst.graph, &dec.components[0]) == 0 {
        let sol = crate::chain::solve_degree0(inst, &dec.components[0])
            .map_err(|e| SolveError::infeasible(e.to_string()))?;
        trace.residual_cost = sol.total_cost.clone();
        return Ok((sol, trace));
    }
    let ec = corner_cover(inst, &dec)?;
    trace.corner_cover_cost = cost::total(ec.iter().map(|l| &inst.cost[l]));
    let aux = build_auxiliary(inst, &dec, &ec);
    let f1 = select_f1(inst, &aux);
    trace.f1_cost = cost::total(f1.iter().map(|l| &inst.cost[l]));
    let (reduced, decode) = reduce_degrees(inst, &dec, &f1);
    let residual = solve_exact_low_degree(&reduced)?;
    trace.residual_cost = cost::total(
        residual
            .links
            .iter()
            .map(|l| &reduced.cost[l]),
    );
    let mut links: BTreeSet<Edge> = f1.clone();
    let mut tags: BTreeMap<Edge, String> = f1.iter().map(|&l| (l, "f1".to_string())).collect();
    for l in &residual.links {
        let orig = decode.get(l).copied().unwrap_or(*l);
        links.insert(orig);
        tags.entry(orig)
            .or_insert_with(|| residual.stage_tags[l].clone());
    }
    let total_cost = cost::total(links.iter().map(|l| &inst.cost[l]));
    let sol = LinkSolution { links, total_cost, stage_tags: tags };
    Ok((sol, trace))
}
