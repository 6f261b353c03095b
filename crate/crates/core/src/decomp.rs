//! Decomposition of a valid 4-obstruction host graph into lonely nodes and
//! node-disjoint maximal ladders and hexagons. Every square of the host
//! ends up inside exactly one component.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{edge, Edge, Multigraph, Obstruction};

/// Hexagon roles in storage order: v1 u1 v2 u2 v3 u3 y.
const HEX_V1: usize = 0;
const HEX_U1: usize = 1;
const HEX_V2: usize = 2;
const HEX_U2: usize = 3;
const HEX_V3: usize = 4;
const HEX_U3: usize = 5;
const HEX_Y: usize = 6;

/// The nine template edges as role index pairs.
const HEX_EDGES: [(usize, usize); 9] = [
    (HEX_U1, HEX_V1),
    (HEX_V1, HEX_V2),
    (HEX_V2, HEX_U2),
    (HEX_U1, HEX_U2),
    (HEX_V2, HEX_V3),
    (HEX_V3, HEX_U3),
    (HEX_U2, HEX_U3),
    (HEX_U3, HEX_Y),
    (HEX_Y, HEX_U1),
];

/// A ladder: columns (v_i, u_i) such that consecutive columns span squares.
/// Length = number of squares = columns - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    pub cols: Vec<(usize, usize)>,
}

impl Ladder {
    pub fn length(&self) -> usize {
        self.cols.len() - 1
    }

    /// The i-th labelling square, 0-based.
    pub fn square(&self, i: usize) -> Obstruction {
        let (v1, u1) = self.cols[i];
        let (v2, u2) = self.cols[i + 1];
        Obstruction::new(vec![v1, u2], vec![u1, v2])
    }

    pub fn squares(&self) -> Vec<Obstruction> {
        (0..self.length()).map(|i| self.square(i)).collect()
    }

    /// The eight labelled edges of square i as they appear in the host:
    /// column edges v_iu_i, v_{i+1}u_{i+1} and rails v_iv_{i+1}, u_iu_{i+1}.
    pub fn square_edges(&self, i: usize) -> [Edge; 4] {
        let (v1, u1) = self.cols[i];
        let (v2, u2) = self.cols[i + 1];
        [edge(v1, u1), edge(v1, v2), edge(u1, u2), edge(v2, u2)]
    }

    /// Reverses column order; stays a consistent labelling.
    pub fn reversed(&self) -> Ladder {
        Ladder {
            cols: self.cols.iter().rev().copied().collect(),
        }
    }

    /// Swaps the v/u roles; stays a consistent labelling.
    pub fn flipped(&self) -> Ladder {
        Ladder {
            cols: self.cols.iter().map(|&(v, u)| (u, v)).collect(),
        }
    }
}

/// A hexagon: seven nodes carrying the fixed 9-edge spanning template.
/// `map[r]` is the host node playing template role r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hexagon {
    pub map: [usize; 7],
}

impl Hexagon {
    pub fn template_edges(&self) -> Vec<Edge> {
        HEX_EDGES
            .iter()
            .map(|&(a, b)| edge(self.map[a], self.map[b]))
            .collect()
    }

    /// The four template-degree-3 nodes; they induce a claw centred at u2.
    pub fn claw_nodes(&self) -> [usize; 4] {
        [
            self.map[HEX_U1],
            self.map[HEX_U2],
            self.map[HEX_U3],
            self.map[HEX_V2],
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    Ladder(Ladder),
    Hexagon(Hexagon),
}

impl Component {
    pub fn nodes(&self) -> BTreeSet<usize> {
        match self {
            Component::Ladder(l) => l.cols.iter().flat_map(|&(v, u)| [v, u]).collect(),
            Component::Hexagon(h) => h.map.iter().copied().collect(),
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.nodes().contains(&v)
    }
}

/// Lonely nodes plus node-disjoint ladder/hexagon components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub lonely: BTreeSet<usize>,
    pub components: Vec<Component>,
}

#[derive(Debug, Error)]
pub enum DecompError {
    #[error("host is not a valid degree-<=3 graph: node {0} has degree {1}")]
    InvalidDegree(usize, usize),
    #[error("host contains a K_{{2,3}}: nodes {0} and {1} share 3+ neighbours")]
    InvalidHost(usize, usize),
    #[error("square {0:?} partially overlaps an existing component")]
    PartialOverlap(Obstruction),
    #[error("component extension failed on nodes {0:?}")]
    NotExtendable(Vec<usize>),
}

/// All K_{2,2} subgraphs of `g`, canonical order.
pub fn squares_of(g: &Multigraph) -> Vec<Obstruction> {
    let adj = g.adjacency();
    let mut out = BTreeSet::new();
    for u in 0..g.node_count() {
        for v in u + 1..g.node_count() {
            let common: Vec<usize> = adj[u]
                .intersection(&adj[v])
                .copied()
                .filter(|&w| w != u && w != v)
                .collect();
            for i in 0..common.len() {
                for j in i + 1..common.len() {
                    out.insert(Obstruction::new(vec![u, v], vec![common[i], common[j]]));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Squares whose node set lies inside `nodes`.
pub fn squares_within(g: &Multigraph, nodes: &BTreeSet<usize>) -> Vec<Obstruction> {
    squares_of(g)
        .into_iter()
        .filter(|s| s.nodes().all(|v| nodes.contains(&v)))
        .collect()
}

/// Edges of `g` with exactly one endpoint in `nodes` (the coboundary).
pub fn coboundary(g: &Multigraph, nodes: &BTreeSet<usize>) -> Vec<Edge> {
    let mut out: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| nodes.contains(&a) != nodes.contains(&b))
        .collect();
    out.sort_unstable();
    out
}

/// Degree of a component: `|delta(C)|`.
pub fn component_degree(g: &Multigraph, comp: &Component) -> usize {
    coboundary(g, &comp.nodes()).len()
}

/// Corners of a component: its nodes incident to a coboundary edge.
pub fn corners(g: &Multigraph, comp: &Component) -> Vec<usize> {
    let nodes = comp.nodes();
    let mut cs: Vec<usize> = coboundary(g, &nodes)
        .into_iter()
        .map(|(a, b)| if nodes.contains(&a) { a } else { b })
        .collect();
    cs.sort_unstable();
    cs.dedup();
    cs
}

/// Searches for a consistent ladder labelling that uses exactly `nodes`.
/// Deterministic: candidates are scanned in ascending order.
pub fn ladder_from_nodes(g: &Multigraph, nodes: &BTreeSet<usize>) -> Option<Ladder> {
    if nodes.len() < 4 || !nodes.len().is_multiple_of(2) {
        return None;
    }
    let adj = g.adjacency();
    let cols = nodes.len() / 2;
    let node_list: Vec<usize> = nodes.iter().copied().collect();
    for &v1 in &node_list {
        for &u1 in adj[v1].iter() {
            if !nodes.contains(&u1) || u1 == v1 {
                continue;
            }
            let mut used: BTreeSet<usize> = [v1, u1].into();
            let mut acc = vec![(v1, u1)];
            if extend_ladder_cols(&adj, nodes, cols, &mut acc, &mut used) {
                return Some(Ladder { cols: acc });
            }
        }
    }
    None
}

fn extend_ladder_cols(
    adj: &[BTreeSet<usize>],
    nodes: &BTreeSet<usize>,
    cols: usize,
    acc: &mut Vec<(usize, usize)>,
    used: &mut BTreeSet<usize>,
) -> bool {
    if acc.len() == cols {
        return used.len() == nodes.len();
    }
    let (v, u) = *acc.last().unwrap();
    let vs: Vec<usize> = adj[v]
        .iter()
        .copied()
        .filter(|w| nodes.contains(w) && !used.contains(w))
        .collect();
    for &vn in &vs {
        for &un in adj[u].iter() {
            if un == vn || !nodes.contains(&un) || used.contains(&un) {
                continue;
            }
            if !adj[vn].contains(&un) {
                continue;
            }
            acc.push((vn, un));
            used.insert(vn);
            used.insert(un);
            if extend_ladder_cols(adj, nodes, cols, acc, used) {
                return true;
            }
            acc.pop();
            used.remove(&vn);
            used.remove(&un);
        }
    }
    false
}

/// Searches for a hexagon template mapping onto exactly `nodes`.
pub fn hexagon_from_nodes(g: &Multigraph, nodes: &BTreeSet<usize>) -> Option<Hexagon> {
    if nodes.len() != 7 {
        return None;
    }
    let adj = g.adjacency();
    let node_list: Vec<usize> = nodes.iter().copied().collect();
    let mut map = [usize::MAX; 7];
    let mut used = [false; 7];
    fn assign(
        role: usize,
        node_list: &[usize],
        adj: &[BTreeSet<usize>],
        map: &mut [usize; 7],
        used: &mut [bool; 7],
    ) -> bool {
        if role == 7 {
            return true;
        }
        'next: for (i, &cand) in node_list.iter().enumerate() {
            if used[i] {
                continue;
            }
            // Template edges whose other endpoint is already placed must
            // exist in the host.
            for &(a, b) in HEX_EDGES.iter() {
                let other = if a == role {
                    b
                } else if b == role {
                    a
                } else {
                    continue;
                };
                if other < role && !adj[cand].contains(&map[other]) {
                    continue 'next;
                }
            }
            map[role] = cand;
            used[i] = true;
            if assign(role + 1, node_list, adj, map, used) {
                return true;
            }
            used[i] = false;
        }
        false
    }
    if assign(0, &node_list, &adj, &mut map, &mut used) {
        Some(Hexagon { map })
    } else {
        None
    }
}

/// Extends a component by a square that meets it without being contained
/// in it: ladder + square gives a longer ladder or (at three columns, when
/// the square sits on a rail) a hexagon; hexagon + square gives a
/// four-column ladder.
pub fn extend_component(
    g: &Multigraph,
    comp: &Component,
    square: &Obstruction,
) -> Result<Component, DecompError> {
    let cn = comp.nodes();
    let sn: BTreeSet<usize> = square.nodes().collect();
    if cn.is_disjoint(&sn) || sn.is_subset(&cn) {
        return Err(DecompError::NotExtendable(sn.into_iter().collect()));
    }
    let union: BTreeSet<usize> = cn.union(&sn).copied().collect();
    if union.len().is_multiple_of(2) {
        if let Some(l) = ladder_from_nodes(g, &union) {
            return Ok(Component::Ladder(l));
        }
    } else if let Some(h) = hexagon_from_nodes(g, &union) {
        return Ok(Component::Hexagon(h));
    }
    Err(DecompError::NotExtendable(union.into_iter().collect()))
}

/// Decomposes a valid host into lonely nodes and maximal components.
/// Seeds are taken in canonical square order; extension scans squares in
/// canonical order, so the output is deterministic.
pub fn chain_decompose(g: &Multigraph) -> Result<Decomposition, DecompError> {
    let degs = g.degrees();
    if let Some(v) = (0..g.node_count()).find(|&v| degs[v] > 3) {
        return Err(DecompError::InvalidDegree(v, degs[v]));
    }
    let adj = g.adjacency();
    for u in 0..g.node_count() {
        for v in u + 1..g.node_count() {
            if adj[u].intersection(&adj[v]).filter(|&&w| w != u && w != v).count() >= 3 {
                return Err(DecompError::InvalidHost(u, v));
            }
        }
    }
    let squares = squares_of(g);
    let mut components: Vec<Component> = Vec::new();
    loop {
        let contained = |s: &Obstruction, comps: &[Component]| {
            comps
                .iter()
                .any(|c| s.nodes().all(|v| c.nodes().contains(&v)))
        };
        let seed = match squares.iter().find(|s| !contained(s, &components)) {
            None => break,
            Some(s) => s,
        };
        for c in &components {
            let cn = c.nodes();
            if seed.nodes().any(|v| cn.contains(&v)) {
                return Err(DecompError::PartialOverlap(seed.clone()));
            }
        }
        // A lone square is a length-1 ladder; grow it maximally.
        let seed_nodes: BTreeSet<usize> = seed.nodes().collect();
        let mut comp = Component::Ladder(
            ladder_from_nodes(g, &seed_nodes)
                .ok_or_else(|| DecompError::NotExtendable(seed_nodes.iter().copied().collect()))?,
        );
        loop {
            let cn = comp.nodes();
            let next = squares.iter().find(|s| {
                let sn: BTreeSet<usize> = s.nodes().collect();
                !cn.is_disjoint(&sn) && !sn.is_subset(&cn)
            });
            match next {
                None => break,
                Some(s) => comp = extend_component(g, &comp, s)?,
            }
        }
        components.push(comp);
    }
    let assigned: BTreeSet<usize> = components.iter().flat_map(|c| c.nodes()).collect();
    let lonely = (0..g.node_count()).filter(|v| !assigned.contains(v)).collect();
    Ok(Decomposition { lonely, components })
}

/// Checks every structural invariant of a decomposition against its host;
/// returns the first violation as a description.
pub fn validate_decomposition(g: &Multigraph, dec: &Decomposition) -> Result<(), String> {
    let adj = g.adjacency();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for (i, comp) in dec.components.iter().enumerate() {
        let nodes = comp.nodes();
        for &v in &nodes {
            if v >= g.node_count() {
                return Err(format!("component {i}: node {v} out of range"));
            }
            if !seen.insert(v) {
                return Err(format!("component {i}: node {v} reused across components"));
            }
        }
        match comp {
            Component::Ladder(l) => {
                if l.cols.len() < 2 {
                    return Err(format!("component {i}: ladder has < 2 columns"));
                }
                if nodes.len() != 2 * l.cols.len() {
                    return Err(format!("component {i}: ladder columns share nodes"));
                }
                for s in 0..l.length() {
                    for (a, b) in l.square_edges(s) {
                        if !adj[a].contains(&b) {
                            return Err(format!(
                                "component {i}: missing ladder edge ({a},{b}) in square {s}"
                            ));
                        }
                    }
                }
                for &v in &nodes {
                    let internal = adj[v].iter().filter(|w| nodes.contains(w)).count();
                    if internal > 3 {
                        return Err(format!("component {i}: node {v} has internal degree > 3"));
                    }
                }
            }
            Component::Hexagon(h) => {
                if nodes.len() != 7 {
                    return Err(format!("component {i}: hexagon role map reuses nodes"));
                }
                for (a, b) in h.template_edges() {
                    if !adj[a].contains(&b) {
                        return Err(format!("component {i}: missing hexagon edge ({a},{b})"));
                    }
                }
                // The degree-3 template nodes must induce exactly a claw
                // centred at u2.
                let claw = h.claw_nodes();
                let want: BTreeSet<Edge> = [
                    edge(claw[0], claw[1]),
                    edge(claw[1], claw[2]),
                    edge(claw[1], claw[3]),
                ]
                .into();
                for (ai, &a) in claw.iter().enumerate() {
                    for &b in claw.iter().skip(ai + 1) {
                        let present = adj[a].contains(&b);
                        if present != want.contains(&edge(a, b)) {
                            return Err(format!(
                                "component {i}: claw condition violated on ({a},{b})"
                            ));
                        }
                    }
                }
                // An independent isomorphism search must also find the
                // template.
                if hexagon_from_nodes(g, &nodes).is_none() {
                    return Err(format!("component {i}: no template mapping exists"));
                }
            }
        }
    }
    for &v in &dec.lonely {
        if seen.contains(&v) {
            return Err(format!("lonely node {v} also in a component"));
        }
    }
    let all: BTreeSet<usize> = dec.lonely.union(&seen).copied().collect();
    if all.len() != g.node_count() || all.iter().any(|&v| v >= g.node_count()) {
        return Err("lonely set is not the complement of component nodes".into());
    }
    for s in squares_of(g) {
        let sn: BTreeSet<usize> = s.nodes().collect();
        if sn.iter().any(|v| dec.lonely.contains(v)) {
            return Err(format!("square {s:?} touches a lonely node"));
        }
        if !dec
            .components
            .iter()
            .any(|c| sn.iter().all(|v| c.nodes().contains(v)))
        {
            return Err(format!("square {s:?} straddles components"));
        }
    }
    Ok(())
}

/// The 7-node, 9-edge hexagon template graph with roles at indices
/// v1 u1 v2 u2 v3 u3 y.
pub fn hexagon_template_graph() -> Multigraph {
    let mut g = Multigraph::new(7);
    for &(a, b) in HEX_EDGES.iter() {
        g.add_edge(a, b);
    }
    g
}
