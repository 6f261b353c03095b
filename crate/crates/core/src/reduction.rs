//! Translation between (n-d)-node-connectivity augmentation and
//! d-obstruction covering, with cut witnesses in both directions. A link
//! set augments the graph to (k+1)-connectivity iff it covers every
//! obstruction of the complement.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{
    complement, vertex_connectivity, AugmentationInstance, CoveringInstance, GraphError,
    Multigraph, Obstruction,
};

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("graph is only {found}-connected, claimed {want}")]
    NotKConnected { want: usize, found: usize },
    #[error("link {0:?} joins adjacent or equal nodes")]
    BadLink((usize, usize)),
    #[error("removing {0:?} does not disconnect the graph")]
    NotACut(Vec<usize>),
    #[error("the node sets do not span a complete bipartite subgraph in the complement")]
    NotAnObstruction,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A vertex cut of a graph paired with the complete bipartite witness in
/// its complement: the two sides are the split of the remaining nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutWitness {
    pub cut_nodes: BTreeSet<usize>,
    pub obstruction: Obstruction,
}

/// Reformulates augmentation as covering: the covering graph is the
/// complement, `d = n - k`, links and costs carry over unchanged.
pub fn to_covering(aug: &AugmentationInstance) -> Result<CoveringInstance, ReductionError> {
    let n = aug.graph.node_count();
    let kappa = vertex_connectivity(&aug.graph)?;
    if kappa < aug.k {
        return Err(ReductionError::NotKConnected { want: aug.k, found: kappa });
    }
    for &(u, v) in &aug.links {
        if u == v || aug.graph.has_edge(u, v) {
            return Err(ReductionError::BadLink((u, v)));
        }
    }
    let graph = complement(&aug.graph)?;
    Ok(CoveringInstance::new(
        graph,
        n - aug.k,
        aug.links.clone(),
        aug.cost.clone(),
    ))
}

/// Inverse direction: complement back, `k = n - d`. Links become
/// non-edges of the result by construction.
pub fn to_augmentation(inst: &CoveringInstance) -> Result<AugmentationInstance, ReductionError> {
    let n = inst.graph.node_count();
    let graph = complement(&inst.graph)?;
    Ok(AugmentationInstance {
        graph,
        k: n - inst.d,
        links: inst.links.clone(),
        cost: inst.cost.clone(),
    })
}

fn components_without(g: &Multigraph, cut: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let n = g.node_count();
    let mut seen: Vec<bool> = (0..n).map(|v| cut.contains(&v)).collect();
    let mut comps = vec![];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Turns a vertex cut of `g` into its complete bipartite witness in the
/// complement. The side containing the smallest component (ties by least
/// node id) becomes one side; everything else outside the cut the other.
pub fn cut_to_obstruction(
    g: &Multigraph,
    cut: &BTreeSet<usize>,
) -> Result<CutWitness, ReductionError> {
    let comps = components_without(g, cut);
    if comps.len() < 2 {
        return Err(ReductionError::NotACut(cut.iter().copied().collect()));
    }
    let side = comps
        .iter()
        .min_by_key(|c| (c.len(), c[0]))
        .cloned()
        .unwrap();
    let rest: Vec<usize> = (0..g.node_count())
        .filter(|v| !cut.contains(v) && !side.contains(v))
        .collect();
    Ok(CutWitness {
        cut_nodes: cut.clone(),
        obstruction: Obstruction::new(side, rest),
    })
}

/// Turns an obstruction of the complement back into the vertex cut
/// `V \ (X u Y)` of `g`, after checking that the two sides really span a
/// complete bipartite subgraph of the complement.
pub fn obstruction_to_cut(
    g: &Multigraph,
    obs: &Obstruction,
) -> Result<CutWitness, ReductionError> {
    let comp = complement(g)?;
    let adj = comp.adjacency();
    for &x in &obs.side_x {
        for &y in &obs.side_y {
            if !adj[x].contains(&y) {
                return Err(ReductionError::NotAnObstruction);
            }
        }
    }
    let members: BTreeSet<usize> = obs.nodes().collect();
    let cut: BTreeSet<usize> = (0..g.node_count()).filter(|v| !members.contains(v)).collect();
    // The cut must actually disconnect g: the two sides are non-adjacent
    // in g once the cut is gone.
    let comps = components_without(g, &cut);
    if comps.len() < 2 {
        return Err(ReductionError::NotACut(cut.iter().copied().collect()));
    }
    Ok(CutWitness {
        cut_nodes: cut,
        obstruction: obs.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::rat;
    use crate::graph::{edge, is_feasible, LinkSolution};
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeMap;

    #[test]
    fn path_cut_roundtrip() {
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        let w = cut_to_obstruction(&g, &[1].into()).unwrap();
        assert_eq!(w.obstruction, Obstruction::new(vec![0], vec![2]));
        let back = obstruction_to_cut(&g, &w.obstruction).unwrap();
        assert_eq!(back.cut_nodes, [1].into());
    }

    #[test]
    fn c5_cut_gives_complete_bipartite_witness() {
        let mut g = Multigraph::new(5);
        for v in 0..5 {
            g.add_edge(v, (v + 1) % 5);
        }
        let w = cut_to_obstruction(&g, &[0, 2].into()).unwrap();
        // Verify completeness in the complement directly.
        let comp = complement(&g).unwrap();
        let adj = comp.adjacency();
        for &x in &w.obstruction.side_x {
            for &y in &w.obstruction.side_y {
                assert!(adj[x].contains(&y));
            }
        }
    }

    #[test]
    fn to_covering_bookkeeping() {
        // K5 minus two disjoint edges: (n-4)-connected with k = 1.
        let mut g = Multigraph::new(5);
        let missing = [edge(0, 1), edge(2, 3)];
        for u in 0..5 {
            for v in u + 1..5 {
                if !missing.contains(&edge(u, v)) {
                    g.add_edge(u, v);
                }
            }
        }
        let links: BTreeSet<_> = missing.into();
        let cost: BTreeMap<_, _> = links.iter().map(|&l| (l, rat(2, 3))).collect();
        let aug = AugmentationInstance { graph: g, k: 1, links: links.clone(), cost: cost.clone() };
        let inst = to_covering(&aug).unwrap();
        assert_eq!(inst.d, 4);
        assert_eq!(inst.links, links);
        assert_eq!(inst.cost, cost);
        assert_eq!(inst.graph.edge_count(), 2);
        assert!(crate::graph::validate_instance(&inst).is_ok());
        // Back-conversion restores the augmentation view.
        let back = to_augmentation(&inst).unwrap();
        assert_eq!(back.graph, aug.graph);
        assert_eq!(back.k, 1);
    }

    /// Minimal cuts round-trip through the witness pair exactly.
    #[test]
    fn minimal_cut_roundtrip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        let mut done = 0;
        while done < 30 {
            let n = rng.gen_range(4..=9);
            let g = crate::gen::random_graph(&mut rng, n, 0.45);
            if !g.is_connected() {
                continue;
            }
            let Ok(kappa) = vertex_connectivity(&g) else { continue };
            if kappa == 0 || kappa >= n - 1 {
                continue;
            }
            // All minimal cuts by brute force.
            let mut found = 0;
            for mask in 0u32..(1 << n) {
                let cut: BTreeSet<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                if cut.len() != kappa {
                    continue;
                }
                let Ok(w) = cut_to_obstruction(&g, &cut) else { continue };
                found += 1;
                let back = obstruction_to_cut(&g, &w.obstruction).unwrap();
                assert_eq!(back.cut_nodes, cut);
            }
            assert!(found > 0);
            done += 1;
        }
    }

    #[test]
    fn rejects_underconnected_graphs() {
        let mut g = Multigraph::new(4);
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        let aug = AugmentationInstance {
            graph: g,
            k: 1,
            links: BTreeSet::new(),
            cost: BTreeMap::new(),
        };
        assert!(matches!(
            to_covering(&aug),
            Err(ReductionError::NotKConnected { .. })
        ));
    }

    /// Feasibility transfers: F covers the complement instance iff the
    /// augmented graph is (k+1)-connected; exhaustive over link subsets.
    #[test]
    fn feasibility_equivalence_exhaustive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        let mut done = 0;
        while done < 25 {
            let n = rng.gen_range(5..=9);
            let g = crate::gen::random_graph(&mut rng, n, 0.75);
            let Ok(kappa) = vertex_connectivity(&g) else { continue };
            if kappa == 0 || kappa >= n - 4 + n {
                continue;
            }
            let k = kappa;
            if n < k + 4 {
                continue;
            }
            // Links: up to 6 random non-edges.
            let comp = complement(&g).unwrap();
            let mut non_edges: Vec<_> = comp.edges().to_vec();
            if non_edges.is_empty() {
                continue;
            }
            while non_edges.len() > 6 {
                let i = rng.gen_range(0..non_edges.len());
                non_edges.swap_remove(i);
            }
            let links: BTreeSet<_> = non_edges.iter().copied().collect();
            let aug = AugmentationInstance {
                graph: g.clone(),
                k,
                links: links.clone(),
                cost: BTreeMap::new(),
            };
            let Ok(inst) = to_covering(&aug) else { continue };
            if inst.d > crate::graph::MAX_ENUMERATION_D || inst.d < 4 {
                continue;
            }
            done += 1;
            let link_list: Vec<_> = links.iter().copied().collect();
            for mask in 0u32..(1 << link_list.len()) {
                let subset: Vec<_> = link_list
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &l)| l)
                    .collect();
                let sol = LinkSolution::from_links(subset.iter().copied(), &inst, "t");
                let covering_ok = is_feasible(&inst, &sol);
                let mut augmented = g.clone();
                for &(u, v) in &subset {
                    augmented.add_edge(u, v);
                }
                let augmented_ok = vertex_connectivity(&augmented).unwrap() >= k + 1;
                assert_eq!(covering_ok, augmented_ok);
            }
        }
    }
}
