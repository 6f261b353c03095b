//! Instance factories built from hardness reductions: 3-SAT-4 to
//! 3-SAT-(2,2) normalisation, the SAT-to-covering gadget for d = 4, its
//! extension to larger d, and the tree-augmentation to k-node-connectivity
//! construction. These double as test-instance generators and as
//! executable checks of the reductions.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cost::Cost;
use crate::graph::{
    edge, CoveringInstance, Edge, AugmentationInstance, LinkSolution, Multigraph,
    MAX_ENUMERATION_D,
};

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("formula flavor mismatch: expected {0}")]
    FlavorMismatch(&'static str),
    #[error("assignment does not satisfy the formula")]
    NotSatisfying,
    #[error("solution has {got} links, expected {want}")]
    WrongSize { got: usize, want: usize },
    #[error("solution is not feasible for the gadget instance")]
    NotFeasible,
    #[error("d = {0} outside the supported range")]
    RejectedD(usize),
    #[error("construction would have {0} nodes, over the limit")]
    SizeExceeded(usize),
    #[error("input tree is not a tree")]
    NotATree,
    #[error("k must be at least 1")]
    BadK,
}

/// A 3-CNF formula: clauses are ordered literal triples, literals are
/// nonzero signed 1-based variable ids. Repeated literals in a clause are
/// allowed (the normalisation uses them).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    General,
    /// Every variable occurs exactly four times.
    Sat4,
    /// Every variable occurs exactly twice positively and twice negatively.
    Sat22,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[i64; 3]>) -> Self {
        for c in &clauses {
            for &l in c {
                assert!(l != 0 && l.unsigned_abs() as usize <= num_vars);
            }
        }
        CnfFormula { num_vars, clauses }
    }

    /// (positive, negative) occurrence counts per variable, 0-based.
    pub fn occurrences(&self) -> Vec<(usize, usize)> {
        let mut counts = vec![(0, 0); self.num_vars];
        for c in &self.clauses {
            for &l in c {
                let v = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    counts[v].0 += 1;
                } else {
                    counts[v].1 += 1;
                }
            }
        }
        counts
    }

    pub fn flavor(&self) -> Flavor {
        let occ = self.occurrences();
        if occ.iter().all(|&(p, n)| p == 2 && n == 2) {
            Flavor::Sat22
        } else if occ.iter().all(|&(p, n)| p + n == 4) {
            Flavor::Sat4
        } else {
            Flavor::General
        }
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = l.unsigned_abs() as usize - 1;
                (l > 0) == assignment[v]
            })
        })
    }

    /// Exhaustive satisfiability check for small formulas.
    pub fn satisfiable_brute(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars <= 24, "brute-force SAT capped at 24 variables");
        for mask in 0u32..(1u32 << self.num_vars) {
            let assignment: Vec<bool> = (0..self.num_vars).map(|v| mask >> v & 1 == 1).collect();
            if self.eval(&assignment) {
                return Some(assignment);
            }
        }
        None
    }
}

/// Rewrites a 3-SAT-4 formula into an equisatisfiable 3-SAT-(2,2) one:
/// all-positive or all-negative variables are fixed and their clauses
/// replaced by dummy-variable fillers; variables with a 3/1 split are
/// rebalanced through a three-variable equality chain.
pub fn normalize_3sat4(f: &CnfFormula) -> Result<CnfFormula, GadgetError> {
    match f.flavor() {
        Flavor::Sat22 => return Ok(f.clone()),
        Flavor::Sat4 => {}
        Flavor::General => return Err(GadgetError::FlavorMismatch("3-SAT-4")),
    }
    let mut clauses = f.clauses.clone();
    let mut num_vars = f.num_vars;
    // Fix variables occurring with one sign only; repeat because the
    // filler clauses can re-expose earlier variables.
    loop {
        let occ = occurrences(num_vars, &clauses);
        let Some(v) = occ
            .iter()
            .position(|&(p, n)| (p > 0 && n == 0) || (p == 0 && n > 0))
        else {
            break;
        };
        let (removed, kept): (Vec<[i64; 3]>, Vec<[i64; 3]>) = clauses
            .into_iter()
            .partition(|c| c.iter().any(|&l| l.unsigned_abs() as usize - 1 == v));
        clauses = kept;
        for c in removed {
            for &l in c.iter() {
                if l.unsigned_abs() as usize - 1 == v {
                    continue;
                }
                // One filler triple per removed literal occurrence.
                let d1 = (num_vars + 1) as i64;
                let d2 = (num_vars + 2) as i64;
                num_vars += 2;
                clauses.push([l, d1, d2]);
                clauses.push([d1, -d1, -d1]);
                clauses.push([d2, -d2, -d2]);
            }
        }
    }
    // Rebalance 3/1 variables through equality chains.
    loop {
        let occ = occurrences(num_vars, &clauses);
        let Some(v) = occ.iter().position(|&(p, n)| p == 3 || n == 3) else {
            break;
        };
        let positive = occ[v].0 == 3;
        let lit = if positive { (v + 1) as i64 } else { -((v + 1) as i64) };
        let y = (num_vars + 1) as i64;
        let z = (num_vars + 2) as i64;
        let w = (num_vars + 3) as i64;
        num_vars += 3;
        // Replace two occurrences of the majority literal with fresh
        // literals of the same sign.
        let mut replaced = 0;
        for c in clauses.iter_mut() {
            for slot in c.iter_mut() {
                if *slot == lit && replaced < 2 {
                    *slot = if replaced == 0 {
                        if positive { y } else { -y }
                    } else if positive {
                        z
                    } else {
                        -z
                    };
                    replaced += 1;
                }
            }
        }
        debug_assert_eq!(replaced, 2);
        let x = (v + 1) as i64;
        if positive {
            clauses.push([x, -y, -y]);
            clauses.push([y, -z, -z]);
            clauses.push([z, -w, -w]);
            clauses.push([w, w, -x]);
        } else {
            clauses.push([-x, y, y]);
            clauses.push([-y, z, z]);
            clauses.push([-z, w, w]);
            clauses.push([-w, -w, x]);
        }
    }
    // Fixed variables no longer occur anywhere; renumber them away.
    let occ = occurrences(num_vars, &clauses);
    let mut remap = vec![0i64; num_vars];
    let mut next = 0i64;
    for (v, &(p, n)) in occ.iter().enumerate() {
        if p + n > 0 {
            next += 1;
            remap[v] = next;
        }
    }
    for c in clauses.iter_mut() {
        for slot in c.iter_mut() {
            let v = slot.unsigned_abs() as usize - 1;
            *slot = slot.signum() * remap[v];
        }
    }
    let out = CnfFormula::new(next as usize, clauses);
    debug_assert_eq!(out.flavor(), Flavor::Sat22);
    Ok(out)
}

fn occurrences(num_vars: usize, clauses: &[[i64; 3]]) -> Vec<(usize, usize)> {
    let mut counts = vec![(0, 0); num_vars];
    for c in clauses {
        for &l in c {
            let v = l.unsigned_abs() as usize - 1;
            if l > 0 {
                counts[v].0 += 1;
            } else {
                counts[v].1 += 1;
            }
        }
    }
    counts
}

/// Where the gadget construction put each node, plus the clause targets of
/// every variable's four occurrence slots.
#[derive(Debug, Clone)]
pub struct SatLayout {
    pub num_clauses: usize,
    pub num_vars: usize,
    /// Per variable, the clauses holding its two positive and its two
    /// negative occurrences.
    pub pos_clauses: Vec<(usize, usize)>,
    pub neg_clauses: Vec<(usize, usize)>,
}

impl SatLayout {
    pub fn clause_node(&self, c: usize) -> usize {
        c
    }

    /// `x_node(v, i)` is variable node `x_i`, `i` in `1..=6`.
    pub fn x_node(&self, var: usize, i: usize) -> usize {
        self.num_clauses + 6 * var + (i - 1)
    }

    /// The four clause links of a variable: `(x1 C1, x4 C2, x3 C3, x6 C4)`.
    pub fn clause_links(&self, var: usize) -> [Edge; 4] {
        let (c1, c2) = self.pos_clauses[var];
        let (c3, c4) = self.neg_clauses[var];
        [
            edge(self.x_node(var, 1), self.clause_node(c1)),
            edge(self.x_node(var, 4), self.clause_node(c2)),
            edge(self.x_node(var, 3), self.clause_node(c3)),
            edge(self.x_node(var, 6), self.clause_node(c4)),
        ]
    }
}

/// The d = 4 hardness gadget: one node per clause, a six-node subgraph per
/// variable, clause links attached at the occurrence slots. Satisfiable
/// formulas admit coverings of size exactly 4k.
pub fn sat_to_covering(f: &CnfFormula) -> Result<(CoveringInstance, SatLayout), GadgetError> {
    if f.flavor() != Flavor::Sat22 {
        return Err(GadgetError::FlavorMismatch("3-SAT-(2,2)"));
    }
    let t = f.clauses.len();
    let k = f.num_vars;
    let mut pos_slots: Vec<Vec<usize>> = vec![vec![]; k];
    let mut neg_slots: Vec<Vec<usize>> = vec![vec![]; k];
    for (ci, c) in f.clauses.iter().enumerate() {
        for &l in c {
            let v = l.unsigned_abs() as usize - 1;
            if l > 0 {
                pos_slots[v].push(ci);
            } else {
                neg_slots[v].push(ci);
            }
        }
    }
    let layout = SatLayout {
        num_clauses: t,
        num_vars: k,
        pos_clauses: pos_slots.iter().map(|s| (s[0], s[1])).collect(),
        neg_clauses: neg_slots.iter().map(|s| (s[0], s[1])).collect(),
    };
    let mut g = Multigraph::new(t + 6 * k);
    let mut links = BTreeSet::new();
    for var in 0..k {
        let x = |i| layout.x_node(var, i);
        for (a, b) in [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (2, 5)] {
            g.add_edge(x(a), x(b));
        }
        for (a, b) in [(1, 2), (2, 3), (4, 5), (5, 6)] {
            links.insert(edge(x(a), x(b)));
        }
        for l in layout.clause_links(var) {
            g.add_edge(l.0, l.1);
            links.insert(l);
        }
    }
    Ok((CoveringInstance::unweighted(g, 4, links), layout))
}

/// A satisfying assignment yields the canonical 4k-link covering: per true
/// variable the two positive clause links plus `x2x3, x5x6`; per false one
/// the negative clause links plus `x1x2, x4x5`.
pub fn assignment_to_solution(
    f: &CnfFormula,
    inst: &CoveringInstance,
    layout: &SatLayout,
    assignment: &[bool],
) -> Result<LinkSolution, GadgetError> {
    if !f.eval(assignment) {
        return Err(GadgetError::NotSatisfying);
    }
    let mut links = BTreeSet::new();
    for var in 0..f.num_vars {
        let x = |i| layout.x_node(var, i);
        let [p1, p2, n1, n2] = layout.clause_links(var);
        if assignment[var] {
            links.extend([p1, p2, edge(x(2), x(3)), edge(x(5), x(6))]);
        } else {
            links.extend([n1, n2, edge(x(1), x(2)), edge(x(4), x(5))]);
        }
    }
    Ok(LinkSolution::from_links(links, inst, "sat-assignment"))
}

/// Reads a satisfying assignment back out of a feasible covering of size
/// 4k. In such a covering every variable spends exactly four links, and
/// its clause links all sit on one polarity.
pub fn solution_to_assignment(
    f: &CnfFormula,
    inst: &CoveringInstance,
    layout: &SatLayout,
    sol: &LinkSolution,
) -> Result<Vec<bool>, GadgetError> {
    let want = 4 * f.num_vars;
    if sol.links.len() != want {
        return Err(GadgetError::WrongSize { got: sol.links.len(), want });
    }
    if !crate::graph::is_feasible(inst, sol) {
        return Err(GadgetError::NotFeasible);
    }
    let mut assignment = vec![true; f.num_vars];
    for var in 0..f.num_vars {
        let [p1, p2, n1, n2] = layout.clause_links(var);
        let pos = sol.links.contains(&p1) || sol.links.contains(&p2);
        let neg = sol.links.contains(&n1) || sol.links.contains(&n2);
        assert!(
            !(pos && neg),
            "a 4k covering cannot mix clause-link polarities on one variable"
        );
        assignment[var] = !neg;
    }
    if !f.eval(&assignment) {
        return Err(GadgetError::NotSatisfying);
    }
    Ok(assignment)
}

/// Extends a d = 4 gadget instance to obstruction order `d >= 5` by dummy
/// attachment: clause nodes are raised to degree d-1, `x3`/`x6` get
/// pendant groups, and two (d-4)-groups of shared dummies turn the squares
/// into `K_{2,d-2}`s. The link set is unchanged, so feasible solutions
/// coincide with the base instance's.
pub fn extend_to_d(
    base: &CoveringInstance,
    layout: &SatLayout,
    d: usize,
) -> Result<CoveringInstance, GadgetError> {
    if !(5..=MAX_ENUMERATION_D).contains(&d) {
        return Err(GadgetError::RejectedD(d));
    }
    let mut g = base.graph.clone();
    let extra = d - 4;
    for c in 0..layout.num_clauses {
        for _ in 0..extra {
            let w = g.add_node(Some(format!("dummy-of:c{c}")));
            g.add_edge(layout.clause_node(c), w);
        }
    }
    for var in 0..layout.num_vars {
        let x = |i| layout.x_node(var, i);
        for _ in 0..extra {
            let w = g.add_node(Some(format!("dummy-of:v{var}x3")));
            g.add_edge(x(3), w);
        }
        for _ in 0..extra {
            let w = g.add_node(Some(format!("dummy-of:v{var}x6")));
            g.add_edge(x(6), w);
        }
        for _ in 0..extra {
            let y = g.add_node(Some(format!("dummy-of:v{var}y")));
            g.add_edge(x(1), y);
            g.add_edge(x(5), y);
        }
        for _ in 0..extra {
            let z = g.add_node(Some(format!("dummy-of:v{var}z")));
            g.add_edge(x(2), z);
            g.add_edge(x(4), z);
        }
    }
    Ok(CoveringInstance::new(
        g,
        d,
        base.links.clone(),
        base.cost.clone(),
    ))
}

/// A weighted tree augmentation instance.
#[derive(Debug, Clone)]
pub struct TapInstance {
    pub tree: Multigraph,
    pub links: BTreeSet<Edge>,
    pub cost: BTreeMap<Edge, Cost>,
}

impl TapInstance {
    pub fn validate(&self) -> Result<(), GadgetError> {
        let n = self.tree.node_count();
        if self.tree.edge_count() != n - 1 || !self.tree.is_connected() || !self.tree.is_simple() {
            return Err(GadgetError::NotATree);
        }
        Ok(())
    }

    /// TAP feasibility: every tree edge is crossed by a chosen link.
    pub fn is_feasible(&self, chosen: &BTreeSet<Edge>) -> bool {
        for (slot, &(a, b)) in self.tree.edges().iter().enumerate() {
            let mut cut = self.tree.clone();
            cut.remove_edge_slot(slot);
            let comps = cut.connected_components();
            let side_of = |v: usize| comps.iter().position(|c| c.contains(&v)).unwrap();
            let (sa, _sb) = (side_of(a), side_of(b));
            if !chosen
                .iter()
                .any(|&(u, v)| (side_of(u) == sa) != (side_of(v) == sa))
            {
                return false;
            }
        }
        true
    }
}

const TAP_NODE_LIMIT: usize = 400;

/// The k-node-connectivity-augmentation hardness construction: a
/// (k+1)-clique per tree node, a k-clique per tree edge, complete joins
/// between an edge clique and its endpoint cliques. Each TAP link maps to
/// one link between least-index clique representatives at equal cost; the
/// minimum vertex cuts of the result are exactly the edge cliques.
pub fn tap_to_knca(
    tap: &TapInstance,
    k: usize,
) -> Result<(AugmentationInstance, BTreeMap<Edge, Edge>), GadgetError> {
    tap.validate()?;
    if k == 0 {
        return Err(GadgetError::BadK);
    }
    let n = tap.tree.node_count();
    let total = n * (k + 1) + (n - 1) * k;
    if total > TAP_NODE_LIMIT {
        return Err(GadgetError::SizeExceeded(total));
    }
    let node_clique = |v: usize| -> Vec<usize> { (v * (k + 1)..(v + 1) * (k + 1)).collect() };
    let edge_clique =
        |ei: usize| -> Vec<usize> { (n * (k + 1) + ei * k..n * (k + 1) + (ei + 1) * k).collect() };
    let mut g = Multigraph::new(total);
    for v in 0..n {
        let c = node_clique(v);
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                g.add_edge(c[i], c[j]);
            }
        }
    }
    for (ei, &(a, b)) in tap.tree.edges().iter().enumerate() {
        let ec = edge_clique(ei);
        for i in 0..ec.len() {
            for j in i + 1..ec.len() {
                g.add_edge(ec[i], ec[j]);
            }
        }
        for &u in &ec {
            for &x in &node_clique(a) {
                g.add_edge(u, x);
            }
            for &x in &node_clique(b) {
                g.add_edge(u, x);
            }
        }
    }
    let mut links = BTreeSet::new();
    let mut cost = BTreeMap::new();
    let mut link_map = BTreeMap::new();
    for &l in &tap.links {
        let mapped = edge(node_clique(l.0)[0], node_clique(l.1)[0]);
        links.insert(mapped);
        cost.insert(mapped, tap.cost[&l].clone());
        link_map.insert(l, mapped);
    }
    Ok((
        AugmentationInstance { graph: g, k, links, cost },
        link_map,
    ))
}

/// The edge cliques of the construction, for cut-set checks.
pub fn tap_edge_cliques(tap: &TapInstance, k: usize) -> Vec<BTreeSet<usize>> {
    let n = tap.tree.node_count();
    (0..n - 1)
        .map(|ei| (n * (k + 1) + ei * k..n * (k + 1) + (ei + 1) * k).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_instance, vertex_connectivity};
    use rand::{Rng, SeedableRng};

    #[test]
    fn flavor_detection() {
        let f = CnfFormula::new(3, vec![
            [1, 2, 3],
            [-1, -2, -3],
            [1, -2, 3],
            [-1, 2, -3],
        ]);
        assert_eq!(f.flavor(), Flavor::Sat22);
        let g = CnfFormula::new(3, vec![
            [1, 2, 3],
            [1, 2, 3],
            [1, -2, -3],
            [-1, -2, -3],
        ]);
        assert_eq!(g.flavor(), Flavor::Sat4);
    }

    #[test]
    fn normalize_fixed_point_on_sat22() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        let f = crate::gen::random_3sat22(&mut rng, 3);
        assert_eq!(normalize_3sat4(&f).unwrap(), f);
    }

    #[test]
    fn normalize_preserves_satisfiability() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(67);
        for _ in 0..40 {
            let f = crate::gen::random_3sat4(&mut rng, 3);
            let g = normalize_3sat4(&f).unwrap();
            assert_eq!(g.flavor(), Flavor::Sat22);
            assert_eq!(
                f.satisfiable_brute().is_some(),
                g.satisfiable_brute().is_some(),
                "{f:?} vs {g:?}"
            );
        }
    }

    #[test]
    fn normalize_handles_single_sign_variables() {
        // Variable 1 occurs four times positively.
        let f = CnfFormula::new(2, vec![
            [1, 2, 2],
            [1, 1, 2],
            [1, -2, -2],
            [-2, -2, -2],
        ]);
        // Not 3-SAT-4 (variable 2 occurs 8 times); craft a proper one.
        assert_eq!(f.flavor(), Flavor::General);
        let f = CnfFormula::new(3, vec![
            [1, 2, 3],
            [1, 2, 3],
            [1, -2, -3],
            [1, -2, -3],
        ]);
        assert_eq!(f.flavor(), Flavor::Sat4);
        let g = normalize_3sat4(&f).unwrap();
        assert_eq!(g.flavor(), Flavor::Sat22);
        assert_eq!(
            f.satisfiable_brute().is_some(),
            g.satisfiable_brute().is_some()
        );
    }

    #[test]
    fn gadget_instance_shape_and_validity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        let f = crate::gen::random_3sat22(&mut rng, 3);
        let (inst, layout) = sat_to_covering(&f).unwrap();
        let t = f.clauses.len();
        let k = f.num_vars;
        assert_eq!(inst.graph.node_count(), t + 6 * k);
        assert_eq!(inst.links.len(), 8 * k);
        assert!(validate_instance(&inst).is_ok());
        let _ = layout;
    }

    #[test]
    fn assignment_roundtrip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(73);
        let mut checked = 0;
        while checked < 10 {
            let f = crate::gen::random_3sat22(&mut rng, 3);
            let Some(assignment) = f.satisfiable_brute() else { continue };
            checked += 1;
            let (inst, layout) = sat_to_covering(&f).unwrap();
            let sol = assignment_to_solution(&f, &inst, &layout, &assignment).unwrap();
            assert_eq!(sol.links.len(), 4 * f.num_vars);
            assert!(crate::graph::is_feasible(&inst, &sol));
            let back = solution_to_assignment(&f, &inst, &layout, &sol).unwrap();
            assert!(f.eval(&back));
        }
    }

    #[test]
    fn extension_validates_and_preserves_feasibility() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(79);
        let f = crate::gen::random_3sat22(&mut rng, 3);
        let (base, layout) = sat_to_covering(&f).unwrap();
        for d in 5..=6 {
            let ext = extend_to_d(&base, &layout, d).unwrap();
            assert!(validate_instance(&ext).is_ok());
            assert_eq!(ext.links, base.links);
            if d == 6 {
                let obs = crate::graph::enumerate_obstructions(&ext).unwrap();
                assert!(obs.iter().any(|o| o.side_x.len() == 2 && o.side_y.len() == 4));
            }
        }
        assert!(matches!(
            extend_to_d(&base, &layout, 4),
            Err(GadgetError::RejectedD(4))
        ));
    }

    #[test]
    fn tap_construction_cuts() {
        // Path tree on 2 nodes, k = 2: 3 + 3 + 2 = 8 nodes, unique min cut.
        let mut tree = Multigraph::new(2);
        tree.add_edge(0, 1);
        let tap = TapInstance { tree, links: BTreeSet::new(), cost: BTreeMap::new() };
        let (aug, _) = tap_to_knca(&tap, 2).unwrap();
        assert_eq!(aug.graph.node_count(), 8);
        assert_eq!(vertex_connectivity(&aug.graph).unwrap(), 2);
        let cliques = tap_edge_cliques(&tap, 2);
        assert_eq!(cliques.len(), 1);
        // The edge clique disconnects the graph.
        assert!(crate::reduction::cut_to_obstruction(&aug.graph, &cliques[0]).is_ok());
    }

    #[test]
    fn tap_feasibility_maps_to_connectivity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(83);
        for _ in 0..6 {
            let tap = crate::gen::random_tap(&mut rng, 4);
            let k = rng.gen_range(1..=2);
            let (aug, link_map) = tap_to_knca(&tap, k).unwrap();
            assert_eq!(vertex_connectivity(&aug.graph).unwrap(), k);
            let links: Vec<Edge> = tap.links.iter().copied().collect();
            for mask in 0u32..(1 << links.len().min(5)) {
                let subset: BTreeSet<Edge> = links
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &l)| l)
                    .collect();
                let mut augmented = aug.graph.clone();
                for l in &subset {
                    let m = link_map[l];
                    augmented.add_edge(m.0, m.1);
                }
                let lifted = vertex_connectivity(&augmented).unwrap() >= k + 1;
                assert_eq!(tap.is_feasible(&subset), lifted);
            }
        }
    }
}
