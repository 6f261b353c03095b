//! Multigraphs, complements, vertex connectivity, obstruction enumeration
//! and covering-instance validation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::cost::{self, Cost};

/// An undirected edge, stored with `u <= v`.
pub type Edge = (usize, usize);

/// Normalises an unordered node pair.
pub fn edge(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph is not simple: {0:?} occurs more than once or is a loop")]
    NotSimple(Edge),
    #[error("endpoint {0} out of range for {1} nodes")]
    NodeOutOfRange(usize, usize),
    #[error("graph is not {0}-regular: node {1} has degree {2}")]
    NotRegular(usize, usize, usize),
    #[error("node {0} has degree {1} > 4")]
    DegreeTooHigh(usize, usize),
    #[error("vertex connectivity requires at least 2 nodes")]
    TooSmall,
    #[error("obstruction enumeration supports d <= {max}, got {d}")]
    RejectedD { d: usize, max: usize },
}

/// Undirected multigraph. Parallel edges and self-loops are allowed; a
/// self-loop contributes 2 to the degree of its node. Two graphs compare
/// equal iff they have the same node count and the same edge multiset;
/// node labels are provenance only.
#[derive(Debug, Clone, Default)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    labels: Vec<Option<String>>,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut a = self.edges.clone();
        let mut b = other.edges.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}
impl Eq for Multigraph {}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
            labels: vec![None; n],
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Appends a fresh node and returns its index.
    pub fn add_node(&mut self, label: Option<String>) -> usize {
        self.n += 1;
        self.labels.push(label);
        self.n - 1
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(v).and_then(|l| l.as_deref())
    }

    pub fn set_label(&mut self, v: usize, label: String) {
        self.labels[v] = Some(label);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "endpoint out of range");
        self.edges.push(edge(u, v));
    }

    /// Edge slots in insertion order. Slot indices are stable and identify
    /// parallel copies individually.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Removes one edge slot by index.
    pub fn remove_edge_slot(&mut self, slot: usize) -> Edge {
        self.edges.swap_remove(slot)
    }

    /// Removes one copy of the edge `{u, v}` if present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let e = edge(u, v);
        if let Some(pos) = self.edges.iter().position(|&f| f == e) {
            self.edges.swap_remove(pos);
            true
        } else {
            false
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&edge(u, v))
    }

    /// Degree with the loop-counts-2 convention.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.edges {
            if a == b || !seen.insert((a, b)) {
                return false;
            }
        }
        true
    }

    /// Neighbour sets of a simple graph (loops and parallels collapse).
    pub fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.n];
        for &(a, b) in &self.edges {
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj
    }

    /// Connected components as sorted node lists, isolated nodes included.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
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

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }
}

/// Complement of a simple graph on the same nodes.
pub fn complement(g: &Multigraph) -> Result<Multigraph, GraphError> {
    if !g.is_simple() {
        let bad = g
            .edges
            .iter()
            .copied()
            .find(|&(a, b)| a == b)
            .unwrap_or_else(|| {
                let mut seen = BTreeSet::new();
                g.edges
                    .iter()
                    .copied()
                    .find(|e| !seen.insert(*e))
                    .unwrap()
            });
        return Err(GraphError::NotSimple(bad));
    }
    let adj = g.adjacency();
    let mut out = Multigraph::new(g.n);
    out.labels = g.labels.clone();
    for u in 0..g.n {
        for v in u + 1..g.n {
            if !adj[u].contains(&v) {
                out.add_edge(u, v);
            }
        }
    }
    Ok(out)
}

/// Vertex connectivity of a simple graph: the minimum, over non-adjacent
/// pairs, of the maximum number of internally node-disjoint paths
/// (node-splitting max-flow). Complete graphs yield `n - 1`.
pub fn vertex_connectivity(g: &Multigraph) -> Result<usize, GraphError> {
    if g.n < 2 {
        return Err(GraphError::TooSmall);
    }
    if !g.is_simple() {
        return Err(GraphError::NotSimple((0, 0)));
    }
    let adj = g.adjacency();
    let mut best = g.n - 1;
    for s in 0..g.n {
        for t in s + 1..g.n {
            if adj[s].contains(&t) {
                continue;
            }
            let flow = max_disjoint_paths(&adj, s, t, best);
            best = best.min(flow);
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

/// Max number of internally node-disjoint s-t paths, stopping early once
/// `cap` is reached. Standard node-splitting: node v becomes v_in -> v_out
/// with capacity 1; edges get infinite capacity both ways.
fn max_disjoint_paths(adj: &[BTreeSet<usize>], s: usize, t: usize, cap: usize) -> usize {
    let n = adj.len();
    // Residual graph over 2n nodes: v_in = 2v, v_out = 2v + 1.
    let mut capacity: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for v in 0..n {
        let c = if v == s || v == t { n } else { 1 };
        capacity.insert((2 * v, 2 * v + 1), c);
    }
    for v in 0..n {
        for &w in &adj[v] {
            capacity.insert((2 * v + 1, 2 * w), n);
        }
    }
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    for &(a, b) in capacity.keys() {
        succ[a].push(b);
        succ[b].push(a);
    }
    for l in succ.iter_mut() {
        l.sort_unstable();
        l.dedup();
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    while flow < cap {
        // BFS for an augmenting path in the residual graph.
        let mut pred = vec![usize::MAX; 2 * n];
        pred[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            if v == sink {
                break;
            }
            for &w in &succ[v] {
                if pred[w] == usize::MAX && capacity.get(&(v, w)).copied().unwrap_or(0) > 0 {
                    pred[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if pred[sink] == usize::MAX {
            break;
        }
        let mut v = sink;
        while v != source {
            let u = pred[v];
            *capacity.entry((u, v)).or_insert(0) -= 1;
            *capacity.entry((v, u)).or_insert(0) += 1;
            v = u;
        }
        flow += 1;
    }
    flow
}

/// One `K_{i,j}` obstruction, stored in canonical form: both sides sorted,
/// the smaller side first, ties broken lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obstruction {
    pub side_x: Vec<usize>,
    pub side_y: Vec<usize>,
}

impl Obstruction {
    pub fn new(mut x: Vec<usize>, mut y: Vec<usize>) -> Self {
        x.sort_unstable();
        y.sort_unstable();
        let swap = match x.len().cmp(&y.len()) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => x > y,
            std::cmp::Ordering::Less => false,
        };
        if swap {
            std::mem::swap(&mut x, &mut y);
        }
        Obstruction { side_x: x, side_y: y }
    }

    pub fn order(&self) -> usize {
        self.side_x.len() + self.side_y.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.side_x.iter().chain(self.side_y.iter()).copied()
    }

    /// True iff `{u, v}` is one of the bipartite edges of this obstruction.
    /// Chords inside a side do not count.
    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        (self.side_x.binary_search(&u).is_ok() && self.side_y.binary_search(&v).is_ok())
            || (self.side_x.binary_search(&v).is_ok() && self.side_y.binary_search(&u).is_ok())
    }

    /// The bipartite edges of the obstruction.
    pub fn bipartite_edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.side_x.len() * self.side_y.len());
        for &x in &self.side_x {
            for &y in &self.side_y {
                out.push(edge(x, y));
            }
        }
        out.sort_unstable();
        out
    }
}

/// A d-obstruction covering instance: simple graph, obstruction order,
/// link subset of the edges, and nonnegative rational link costs. Links
/// absent from `cost` are treated as cost 1 by [`CoveringInstance::new`];
/// edges outside `links` behave as cost infinity throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringInstance {
    pub graph: Multigraph,
    pub d: usize,
    pub links: BTreeSet<Edge>,
    pub cost: BTreeMap<Edge, Cost>,
}

impl CoveringInstance {
    pub fn new(
        graph: Multigraph,
        d: usize,
        links: BTreeSet<Edge>,
        mut cost: BTreeMap<Edge, Cost>,
    ) -> Self {
        for &l in &links {
            cost.entry(l).or_insert_with(cost::one);
        }
        cost.retain(|e, _| links.contains(e));
        CoveringInstance { graph, d, links, cost }
    }

    pub fn unweighted(graph: Multigraph, d: usize, links: BTreeSet<Edge>) -> Self {
        Self::new(graph, d, links, BTreeMap::new())
    }

    pub fn link_cost(&self, e: &Edge) -> &Cost {
        &self.cost[e]
    }

    pub fn is_unweighted(&self) -> bool {
        self.cost.values().all(|c| *c == cost::one())
    }

    /// Restriction to a node subset (used to process connected components
    /// independently). Returns the sub-instance and the map back to the
    /// original node ids.
    pub fn restrict(&self, nodes: &[usize]) -> (CoveringInstance, Vec<usize>) {
        let mut index = BTreeMap::new();
        for (i, &v) in nodes.iter().enumerate() {
            index.insert(v, i);
        }
        let mut g = Multigraph::new(nodes.len());
        for (i, &v) in nodes.iter().enumerate() {
            if let Some(l) = self.graph.label(v) {
                g.set_label(i, l.to_string());
            }
        }
        for &(a, b) in self.graph.edges() {
            if let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) {
                g.add_edge(ia, ib);
            }
        }
        let links = self
            .links
            .iter()
            .filter_map(|&(a, b)| Some(edge(*index.get(&a)?, *index.get(&b)?)))
            .collect();
        let cost = self
            .cost
            .iter()
            .filter_map(|(&(a, b), c)| Some((edge(*index.get(&a)?, *index.get(&b)?), c.clone())))
            .collect();
        (
            CoveringInstance { graph: g, d: self.d, links, cost },
            nodes.to_vec(),
        )
    }
}

/// An (n-d)-node-connectivity augmentation instance. Links join distinct
/// non-adjacent nodes of a k-connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationInstance {
    pub graph: Multigraph,
    pub k: usize,
    pub links: BTreeSet<Edge>,
    pub cost: BTreeMap<Edge, Cost>,
}

/// A chosen link set with exact total cost and per-link provenance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinkSolution {
    pub links: BTreeSet<Edge>,
    pub total_cost: Cost,
    pub stage_tags: BTreeMap<Edge, String>,
}

impl LinkSolution {
    pub fn from_links<I: IntoIterator<Item = Edge>>(
        links: I,
        inst: &CoveringInstance,
        tag: &str,
    ) -> Self {
        let links: BTreeSet<Edge> = links.into_iter().collect();
        let total_cost = cost::total(links.iter().map(|l| inst.link_cost(l)));
        let stage_tags = links.iter().map(|&l| (l, tag.to_string())).collect();
        LinkSolution { links, total_cost, stage_tags }
    }

    /// Union of two partial solutions; costs recomputed from the instance so
    /// shared links are not double counted.
    pub fn merge(mut self, other: LinkSolution, inst: &CoveringInstance) -> Self {
        for l in other.links {
            if self.links.insert(l) {
                if let Some(tag) = other.stage_tags.get(&l) {
                    self.stage_tags.insert(l, tag.clone());
                }
            }
        }
        self.total_cost = cost::total(self.links.iter().map(|l| inst.link_cost(l)));
        self
    }
}

/// Why an instance failed validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationFailure {
    NotSimple(Edge),
    DTooSmall(usize),
    DTooLarge { d: usize, n: usize },
    LinkNotAnEdge(Edge),
    NegativeCost(Edge),
    /// A `K_{i,j}` with `i + j > d`, witnessed by its two sides.
    ForbiddenSubgraph(Obstruction),
}

impl std::fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationFailure::NotSimple(e) => write!(f, "graph not simple at {e:?}"),
            ValidationFailure::DTooSmall(d) => write!(f, "d = {d} < 4"),
            ValidationFailure::DTooLarge { d, n } => write!(f, "d = {d} > n = {n}"),
            ValidationFailure::LinkNotAnEdge(e) => write!(f, "link {e:?} is not an edge"),
            ValidationFailure::NegativeCost(e) => write!(f, "negative cost on {e:?}"),
            ValidationFailure::ForbiddenSubgraph(o) => write!(
                f,
                "forbidden K_{{{},{}}} on {:?} x {:?}",
                o.side_x.len(),
                o.side_y.len(),
                o.side_x,
                o.side_y
            ),
        }
    }
}

/// Checks that `inst` is a well-formed d-obstruction covering instance:
/// simple graph, `4 <= d <= n`, links are edges with nonnegative finite
/// costs, and no edge-induced `K_{i,j}` with `i + j > d` exists. The
/// forbidden-subgraph check runs through the complement: the graph has a
/// `K_{i,j}` with `i + j = n - r` iff the complement has a vertex cut of
/// size `r`, so validity is exactly `connectivity(complement) >= n - d`.
pub fn validate_instance(inst: &CoveringInstance) -> Result<(), ValidationFailure> {
    let g = &inst.graph;
    let n = g.node_count();
    if !g.is_simple() {
        let mut seen = BTreeSet::new();
        let bad = g
            .edges()
            .iter()
            .copied()
            .find(|&(a, b)| a == b || !seen.insert((a, b)))
            .unwrap();
        return Err(ValidationFailure::NotSimple(bad));
    }
    if inst.d < 4 {
        return Err(ValidationFailure::DTooSmall(inst.d));
    }
    if inst.d > n {
        return Err(ValidationFailure::DTooLarge { d: inst.d, n });
    }
    for &l in &inst.links {
        if !g.has_edge(l.0, l.1) {
            return Err(ValidationFailure::LinkNotAnEdge(l));
        }
        if inst.cost[&l] < cost::zero() {
            return Err(ValidationFailure::NegativeCost(l));
        }
    }
    // Forbidden subgraph = cut of size < n - d in the complement.
    let comp = complement(g).expect("simple by the check above");
    if let Some((cut, witness)) = smallest_cut_below(&comp, n - inst.d) {
        debug_assert!(cut.len() < n - inst.d);
        return Err(ValidationFailure::ForbiddenSubgraph(witness));
    }
    Ok(())
}

/// Finds a vertex cut of `g` of size `< bound` if one exists, returning the
/// cut and the corresponding complete bipartite witness in the complement
/// of `g`. A disconnected graph yields the empty cut.
fn smallest_cut_below(g: &Multigraph, bound: usize) -> Option<(Vec<usize>, Obstruction)> {
    let n = g.node_count();
    if bound == 0 {
        return None;
    }
    let comps = g.connected_components();
    if comps.len() > 1 {
        let side_x = comps[0].clone();
        let side_y: Vec<usize> = (0..n).filter(|v| !comps[0].contains(v)).collect();
        return Some((vec![], Obstruction::new(side_x, side_y)));
    }
    if n < 2 {
        return None;
    }
    let adj = g.adjacency();
    let mut best: Option<usize> = None;
    let mut best_pair = (0, 0);
    for s in 0..n {
        for t in s + 1..n {
            if adj[s].contains(&t) {
                continue;
            }
            let cap = best.unwrap_or(bound).min(bound);
            let flow = max_disjoint_paths(&adj, s, t, cap);
            if flow < cap {
                best = Some(flow);
                best_pair = (s, t);
            }
        }
    }
    let size = best?;
    if size >= bound {
        return None;
    }
    // Recover an actual cut of that size: greedily try removing nodes.
    let (s, t) = best_pair;
    let mut cut = Vec::new();
    let mut removed = vec![false; n];
    for v in 0..n {
        if v == s || v == t || removed[v] {
            continue;
        }
        removed[v] = true;
        let adj2 = masked_adjacency(&adj, &removed);
        if max_disjoint_paths(&adj2, s, t, size + 1) + cut.len() < size {
            cut.push(v);
        } else {
            removed[v] = false;
        }
        if cut.len() == size {
            break;
        }
    }
    debug_assert_eq!(cut.len(), size);
    // Component of s after removing the cut gives the bipartition.
    let mut seen = removed.clone();
    let mut queue = VecDeque::from([s]);
    seen[s] = true;
    let mut side_x = vec![];
    while let Some(v) = queue.pop_front() {
        side_x.push(v);
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let side_y: Vec<usize> = (0..n)
        .filter(|&v| !removed[v] && !side_x.contains(&v))
        .collect();
    Some((cut, Obstruction::new(side_x, side_y)))
}

fn masked_adjacency(adj: &[BTreeSet<usize>], removed: &[bool]) -> Vec<BTreeSet<usize>> {
    adj.iter()
        .enumerate()
        .map(|(v, nb)| {
            if removed[v] {
                BTreeSet::new()
            } else {
                nb.iter().copied().filter(|&w| !removed[w]).collect()
            }
        })
        .collect()
}

pub const MAX_ENUMERATION_D: usize = 8;

/// Every edge-induced `K_{i,d-i}` of the instance graph, each exactly once
/// under the canonical key. `d = 4` takes the dedicated path (stars of
/// degree-3 nodes plus common-neighbourhood squares); general `d` is capped
/// at [`MAX_ENUMERATION_D`].
pub fn enumerate_obstructions(
    inst: &CoveringInstance,
) -> Result<Vec<Obstruction>, GraphError> {
    if inst.d > MAX_ENUMERATION_D {
        return Err(GraphError::RejectedD {
            d: inst.d,
            max: MAX_ENUMERATION_D,
        });
    }
    let adj = inst.graph.adjacency();
    let mut out = BTreeSet::new();
    if inst.d == 4 {
        // Stars: max degree is 3 in a valid instance, so each degree-3 node
        // contributes exactly one K_{1,3}.
        for (v, nb) in adj.iter().enumerate() {
            if nb.len() >= 3 {
                for triple in subsets(&nb.iter().copied().collect::<Vec<_>>(), 3) {
                    out.insert(Obstruction::new(vec![v], triple));
                }
            }
        }
        // Squares: each pair of nodes with >= 2 common neighbours.
        for u in 0..adj.len() {
            for v in u + 1..adj.len() {
                let common: Vec<usize> = adj[u]
                    .intersection(&adj[v])
                    .copied()
                    .filter(|&w| w != u && w != v)
                    .collect();
                if common.len() >= 2 {
                    for pair in subsets(&common, 2) {
                        out.insert(Obstruction::new(vec![u, v], pair));
                    }
                }
            }
        }
    } else {
        let nodes: Vec<usize> = (0..adj.len()).collect();
        for i in 1..=inst.d / 2 {
            enumerate_side(&adj, &nodes, i, inst.d - i, &mut Vec::new(), 0, &mut out);
        }
    }
    Ok(out.into_iter().collect())
}

/// Grows the i-side incrementally, pruning on common-neighbourhood size.
fn enumerate_side(
    adj: &[BTreeSet<usize>],
    nodes: &[usize],
    i: usize,
    j: usize,
    side: &mut Vec<usize>,
    from: usize,
    out: &mut BTreeSet<Obstruction>,
) {
    if side.len() == i {
        let mut common: Option<BTreeSet<usize>> = None;
        for &v in side.iter() {
            common = Some(match common {
                None => adj[v].clone(),
                Some(c) => c.intersection(&adj[v]).copied().collect(),
            });
        }
        let common: Vec<usize> = common
            .unwrap()
            .into_iter()
            .filter(|w| !side.contains(w))
            .collect();
        if common.len() >= j {
            for other in subsets(&common, j) {
                out.insert(Obstruction::new(side.clone(), other));
            }
        }
        return;
    }
    for idx in from..nodes.len() {
        let v = nodes[idx];
        side.push(v);
        // Prune: the common neighbourhood must stay at least j large.
        let feasible = {
            let mut c: Option<BTreeSet<usize>> = None;
            for &u in side.iter() {
                c = Some(match c {
                    None => adj[u].clone(),
                    Some(c) => c.intersection(&adj[u]).copied().collect(),
                });
            }
            c.unwrap().iter().filter(|w| !side.contains(w)).count() >= j
        };
        if feasible {
            enumerate_side(adj, nodes, i, j, side, idx + 1, out);
        }
        side.pop();
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(items: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// True iff every obstruction of the instance contains a link of `sol`
/// among its bipartite edges.
pub fn is_feasible(inst: &CoveringInstance, sol: &LinkSolution) -> bool {
    let obstructions = enumerate_obstructions(inst).expect("d within enumeration bound");
    obstructions
        .iter()
        .all(|o| sol.links.iter().any(|&(u, v)| o.contains_edge(u, v)))
}

/// First obstruction not covered by `links`, if any.
pub fn uncovered_obstruction(
    inst: &CoveringInstance,
    links: &BTreeSet<Edge>,
) -> Option<Obstruction> {
    enumerate_obstructions(inst)
        .expect("d within enumeration bound")
        .into_iter()
        .find(|o| !links.iter().any(|&(u, v)| o.contains_edge(u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::rat;

    fn cycle(n: usize) -> Multigraph {
        let mut g = Multigraph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    fn complete(n: usize) -> Multigraph {
        let mut g = Multigraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn all_links(g: &Multigraph) -> BTreeSet<Edge> {
        g.edges().iter().copied().collect()
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let c = complement(&complete(4)).unwrap();
        assert_eq!(c.edge_count(), 0);
    }

    #[test]
    fn complement_of_c5_has_five_edges() {
        let c = complement(&cycle(5)).unwrap();
        assert_eq!(c.edge_count(), 5);
        // Self-complementary: the complement is again a 5-cycle.
        assert_eq!(c.degrees(), vec![2; 5]);
        assert!(c.is_connected());
    }

    #[test]
    fn complement_rejects_multigraphs() {
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1);
        g.add_edge(0, 1);
        assert!(complement(&g).is_err());
        let mut h = Multigraph::new(2);
        h.add_edge(1, 1);
        assert!(complement(&h).is_err());
    }

    #[test]
    fn connectivity_of_small_graphs() {
        assert_eq!(vertex_connectivity(&complete(5)).unwrap(), 4);
        assert_eq!(vertex_connectivity(&cycle(5)).unwrap(), 2);
        let mut path = Multigraph::new(3);
        path.add_edge(0, 1);
        path.add_edge(1, 2);
        assert_eq!(vertex_connectivity(&path).unwrap(), 1);
        let mut disconnected = Multigraph::new(3);
        disconnected.add_edge(0, 1);
        assert_eq!(vertex_connectivity(&disconnected).unwrap(), 0);
    }

    #[test]
    fn c4_has_one_square() {
        let inst = CoveringInstance::unweighted(cycle(4), 4, all_links(&cycle(4)));
        let obs = enumerate_obstructions(&inst).unwrap();
        assert_eq!(obs.len(), 1);
        assert_eq!(obs[0], Obstruction::new(vec![0, 2], vec![1, 3]));
    }

    #[test]
    fn star_has_one_obstruction() {
        let mut g = Multigraph::new(4);
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        let inst = CoveringInstance::unweighted(g.clone(), 4, all_links(&g));
        let obs = enumerate_obstructions(&inst).unwrap();
        assert_eq!(obs.len(), 1);
        assert_eq!(obs[0], Obstruction::new(vec![0], vec![1, 2, 3]));
    }

    /// The 7-node, 9-edge hexagon template has 3 squares and 4 stars.
    #[test]
    fn hexagon_template_obstructions() {
        let g = crate::decomp::hexagon_template_graph();
        let inst = CoveringInstance::unweighted(g.clone(), 4, all_links(&g));
        let obs = enumerate_obstructions(&inst).unwrap();
        let squares = obs.iter().filter(|o| o.side_x.len() == 2).count();
        let stars = obs.iter().filter(|o| o.side_x.len() == 1).count();
        assert_eq!((squares, stars), (3, 4));
    }

    #[test]
    fn validate_accepts_c4_rejects_k23() {
        let inst = CoveringInstance::unweighted(cycle(4), 4, all_links(&cycle(4)));
        assert!(validate_instance(&inst).is_ok());

        let mut k23 = Multigraph::new(5);
        for a in 0..2 {
            for b in 2..5 {
                k23.add_edge(a, b);
            }
        }
        let inst = CoveringInstance::unweighted(k23.clone(), 4, all_links(&k23));
        match validate_instance(&inst) {
            Err(ValidationFailure::ForbiddenSubgraph(o)) => assert_eq!(o.order(), 5),
            other => panic!("expected forbidden subgraph, got {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_negative_cost() {
        let g = cycle(4);
        let links = all_links(&g);
        let mut cost = BTreeMap::new();
        cost.insert((0usize, 1usize), rat(-1, 2));
        let inst = CoveringInstance::new(g, 4, links, cost);
        assert!(matches!(
            validate_instance(&inst),
            Err(ValidationFailure::NegativeCost(_))
        ));
    }

    #[test]
    fn feasibility_on_c4() {
        let g = cycle(4);
        let inst = CoveringInstance::unweighted(g, 4, all_links(&cycle(4)));
        let one = LinkSolution::from_links([(0usize, 1usize)], &inst, "t");
        assert!(is_feasible(&inst, &one));
        let empty = LinkSolution::default();
        assert!(!is_feasible(&inst, &empty));
    }

    /// General-d enumeration agrees with exhaustive bipartition search on
    /// random small graphs.
    #[test]
    fn enumeration_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(4..=10);
            let mut g = Multigraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            for d in 4..=6usize.min(n) {
                let inst =
                    CoveringInstance::unweighted(g.clone(), d, BTreeSet::new());
                let fast = enumerate_obstructions(&inst).unwrap();
                let slow = brute_force_obstructions(&g, d);
                assert_eq!(fast, slow, "n={n} d={d}");
                // No duplicate canonical keys.
                let set: BTreeSet<_> = fast.iter().cloned().collect();
                assert_eq!(set.len(), fast.len());
            }
        }
    }

    fn brute_force_obstructions(g: &Multigraph, d: usize) -> Vec<Obstruction> {
        let n = g.node_count();
        let adj = g.adjacency();
        let mut out = BTreeSet::new();
        // All ways to pick d nodes and split them into two sides.
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != d {
                continue;
            }
            let nodes: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            for split in 0u32..(1 << d) {
                let x: Vec<usize> = (0..d).filter(|&i| split >> i & 1 == 1).map(|i| nodes[i]).collect();
                let y: Vec<usize> = (0..d).filter(|&i| split >> i & 1 == 0).map(|i| nodes[i]).collect();
                if x.is_empty() || y.is_empty() {
                    continue;
                }
                if x.iter().all(|&a| y.iter().all(|&b| adj[a].contains(&b))) {
                    out.insert(Obstruction::new(x, y));
                }
            }
        }
        out.into_iter().collect()
    }

    proptest::proptest! {
        /// complement(complement(g)) == g on random simple graphs.
        #[test]
        fn complement_involution(seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = 8;
            let mut g = Multigraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v);
                    }
                }
            }
            let cc = complement(&complement(&g).unwrap()).unwrap();
            proptest::prop_assert_eq!(cc, g);
        }
    }
}
