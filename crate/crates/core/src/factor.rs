//! Petersen splits: partition a 4-regular multigraph into two 2-regular
//! spanning subgraphs, and pad arbitrary low-degree graphs up to
//! 4-regularity with zero-cost dummy structure.

use crate::graph::{GraphError, Multigraph};

/// Two spanning 2-regular halves whose edge multisets partition the input.
/// `slots1`/`slots2` index into the input's edge slots.
#[derive(Debug, Clone)]
pub struct TwoFactorPair {
    pub h1: Multigraph,
    pub h2: Multigraph,
    pub slots1: Vec<usize>,
    pub slots2: Vec<usize>,
}

/// Splits a 4-regular multigraph into two 2-regular spanning subgraphs:
/// Euler tour per component orients every edge with in-degree = out-degree
/// = 2, the orientation induces a 2-regular bipartite incidence graph, and
/// its two perfect matchings are the halves. Loops are oriented once and
/// contribute one in and one out.
pub fn two_factorize(g: &Multigraph) -> Result<TwoFactorPair, GraphError> {
    let n = g.node_count();
    for v in 0..n {
        let d = g.degree(v);
        if d != 4 {
            return Err(GraphError::NotRegular(4, v, d));
        }
    }
    let m = g.edges().len();
    // Incidence lists of edge slots; loops appear once.
    let mut incident: Vec<Vec<usize>> = vec![vec![]; n];
    for (s, &(a, b)) in g.edges().iter().enumerate() {
        incident[a].push(s);
        if a != b {
            incident[b].push(s);
        }
    }
    // Hierholzer per component; orientation[s] = true means the slot is
    // traversed from its stored .0 endpoint to its .1 endpoint.
    let mut used = vec![false; m];
    let mut next_slot = vec![0usize; n];
    let mut orientation = vec![true; m];
    for start in 0..n {
        if incident[start].iter().all(|&s| used[s]) {
            continue;
        }
        let mut stack = vec![start];
        while let Some(&v) = stack.last() {
            let mut advanced = false;
            while next_slot[v] < incident[v].len() {
                let s = incident[v][next_slot[v]];
                next_slot[v] += 1;
                if used[s] {
                    continue;
                }
                used[s] = true;
                let (a, b) = g.edges()[s];
                let w = if a == v { b } else { a };
                orientation[s] = a == v;
                stack.push(w);
                advanced = true;
                break;
            }
            if !advanced {
                stack.pop();
            }
        }
    }
    debug_assert!(used.iter().all(|&u| u));
    // Bipartite incidence graph: out-port of u meets in-port of v for each
    // oriented edge u -> v. Every port has exactly two slots; colour the
    // slots alternately along each incidence cycle.
    let mut out_ports: Vec<Vec<usize>> = vec![vec![]; n];
    let mut in_ports: Vec<Vec<usize>> = vec![vec![]; n];
    for (s, &(a, b)) in g.edges().iter().enumerate() {
        let (from, to) = if orientation[s] { (a, b) } else { (b, a) };
        out_ports[from].push(s);
        in_ports[to].push(s);
    }
    debug_assert!(out_ports.iter().all(|p| p.len() == 2));
    debug_assert!(in_ports.iter().all(|p| p.len() == 2));
    let other = |ports: &Vec<usize>, s: usize| -> usize {
        if ports[0] == s {
            ports[1]
        } else {
            ports[0]
        }
    };
    let mut colour = vec![0u8; m];
    for s0 in 0..m {
        if colour[s0] != 0 {
            continue;
        }
        // Walk the cycle out-port -> in-port -> out-port ... starting by
        // leaving s0's head through the other in-port slot.
        let mut s = s0;
        let mut c = 1u8;
        let mut via_in = true;
        loop {
            colour[s] = c;
            c = 3 - c;
            let (a, b) = g.edges()[s];
            let (from, to) = if orientation[s] { (a, b) } else { (b, a) };
            let next = if via_in {
                other(&in_ports[to], s)
            } else {
                other(&out_ports[from], s)
            };
            via_in = !via_in;
            s = next;
            if s == s0 && colour[s] != 0 {
                break;
            }
            if colour[s] != 0 {
                break;
            }
        }
    }
    let mut h1 = Multigraph::new(n);
    let mut h2 = Multigraph::new(n);
    let mut slots1 = vec![];
    let mut slots2 = vec![];
    for (s, &(a, b)) in g.edges().iter().enumerate() {
        if colour[s] == 1 {
            h1.add_edge(a, b);
            slots1.push(s);
        } else {
            h2.add_edge(a, b);
            slots2.push(s);
        }
    }
    debug_assert!((0..n).all(|v| h1.degree(v) == 2 && h2.degree(v) == 2));
    Ok(TwoFactorPair { h1, h2, slots1, slots2 })
}

/// Pads a graph of maximum degree 4 to 4-regularity. Deficient original
/// nodes each get one dummy neighbour joined by parallel zero-cost edges;
/// dummies of degree 1 or 2 gain a self-loop; the remaining degree-3
/// dummies (always an even number) are paired up. Original edge slots stay
/// a prefix of the output's slot list; dummy nodes carry labels.
pub fn make_four_regular(g: &Multigraph) -> Result<Multigraph, GraphError> {
    let n = g.node_count();
    for v in 0..n {
        let d = g.degree(v);
        if d > 4 {
            return Err(GraphError::DegreeTooHigh(v, d));
        }
    }
    let mut out = g.clone();
    let mut dummies = vec![];
    for v in 0..n {
        let d = g.degree(v);
        if d < 4 {
            let dummy = out.add_node(Some(format!("dummy-of:{v}")));
            for _ in 0..4 - d {
                out.add_edge(v, dummy);
            }
            dummies.push(dummy);
        }
    }
    let mut odd = vec![];
    for &dummy in &dummies {
        let d = out.degree(dummy);
        if d == 1 || d == 2 {
            out.add_edge(dummy, dummy);
        }
        if out.degree(dummy) == 3 {
            odd.push(dummy);
        }
    }
    debug_assert!(odd.len() % 2 == 0, "degree-3 dummies must pair up");
    for pair in odd.chunks(2) {
        out.add_edge(pair[0], pair[1]);
    }
    debug_assert!((0..out.node_count()).all(|v| out.degree(v) == 4));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeMap;

    fn check_pair(g: &Multigraph, pair: &TwoFactorPair) {
        for v in 0..g.node_count() {
            assert_eq!(pair.h1.degree(v), 2);
            assert_eq!(pair.h2.degree(v), 2);
        }
        // Slot lists partition the input slots.
        let mut all: Vec<usize> = pair.slots1.iter().chain(&pair.slots2).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..g.edges().len()).collect::<Vec<_>>());
        // Edge multisets partition.
        let mut count: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &e in g.edges() {
            *count.entry(e).or_default() += 1;
        }
        for &e in pair.h1.edges().iter().chain(pair.h2.edges()) {
            *count.entry(e).or_default() -= 1;
        }
        assert!(count.values().all(|&c| c == 0));
    }

    #[test]
    fn splits_k5() {
        let mut g = Multigraph::new(5);
        for u in 0..5 {
            for v in u + 1..5 {
                g.add_edge(u, v);
            }
        }
        let pair = two_factorize(&g).unwrap();
        check_pair(&g, &pair);
    }

    #[test]
    fn splits_loops_and_parallels() {
        // Two nodes, two parallel edges, one loop each: 4-regular.
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1);
        g.add_edge(0, 1);
        g.add_edge(0, 0);
        g.add_edge(1, 1);
        let pair = two_factorize(&g).unwrap();
        check_pair(&g, &pair);
    }

    #[test]
    fn rejects_non_regular() {
        let mut g = Multigraph::new(2);
        g.add_edge(0, 1);
        assert!(two_factorize(&g).is_err());
    }

    #[test]
    fn splits_random_regular_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let n = rng.gen_range(2..=50);
            let g = crate::gen::random_4regular(&mut rng, n);
            let pair = two_factorize(&g).unwrap();
            check_pair(&g, &pair);
        }
    }

    #[test]
    fn padding_reaches_regularity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..50 {
            let n = rng.gen_range(1..=12);
            let mut g = Multigraph::new(n);
            for _ in 0..rng.gen_range(0..2 * n) {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                let extra = if u == v { 2 } else { 1 };
                if g.degree(u) + extra <= 4 && g.degree(v) + extra.min(1) <= 4 {
                    if u != v && g.degree(u) < 4 && g.degree(v) < 4 {
                        g.add_edge(u, v);
                    } else if u == v && g.degree(u) <= 2 {
                        g.add_edge(u, v);
                    }
                }
            }
            let orig_slots = g.edges().len();
            let padded = make_four_regular(&g).unwrap();
            assert!((0..padded.node_count()).all(|v| padded.degree(v) == 4));
            // Original edges untouched, as a slot prefix.
            assert_eq!(&padded.edges()[..orig_slots], g.edges());
            // New nodes are all labelled dummies.
            for v in g.node_count()..padded.node_count() {
                assert!(padded.label(v).unwrap().starts_with("dummy-of:"));
            }
        }
    }

    #[test]
    fn fixpoint_on_regular_input() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let g = crate::gen::random_4regular(&mut rng, 8);
        let padded = make_four_regular(&g).unwrap();
        assert_eq!(padded, g);
    }

    #[test]
    fn single_node_padding() {
        let g = Multigraph::new(1);
        let padded = make_four_regular(&g).unwrap();
        assert!((0..padded.node_count()).all(|v| padded.degree(v) == 4));
        assert_eq!(padded.node_count(), 2);
    }

    #[test]
    fn two_degree3_nodes_get_own_dummies() {
        // Path of length 3 has two degree-1 ends and two degree-2 middles;
        // build two degree-3 nodes instead.
        let mut g = Multigraph::new(5);
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        g.add_edge(1, 4);
        g.add_edge(2, 4);
        g.add_edge(3, 4);
        // Nodes 0 and 4 have degree 3; they must each get a dummy rather
        // than an edge between each other.
        let padded = make_four_regular(&g).unwrap();
        assert!(!padded.has_edge(0, 4));
        assert!((0..padded.node_count()).all(|v| padded.degree(v) == 4));
    }
}
