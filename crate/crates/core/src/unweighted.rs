//! The 4/3-approximation for unweighted 4-obstruction covering:
//! necessary-link preprocessing, a minimum set covering degree-3 nodes and
//! low-degree components, then two repair passes that buy the remaining
//! squares while charging every new link against three distinct baseline
//! links on the repaired component's boundary.

use std::collections::{BTreeMap, BTreeSet};

use crate::cover::{solve_degree12, SolveError};
use crate::decomp::{
    chain_decompose, component_degree, corners, squares_within, Component, Decomposition,
};
use crate::graph::{
    edge, enumerate_obstructions, validate_instance, CoveringInstance, Edge, LinkSolution,
    Obstruction,
};

/// Working state of a repair pass: the partial solution, the components
/// whose obstructions it already covers, the boundary links with a lonely
/// endpoint, and the ledger of baseline links already charged.
#[derive(Debug, Clone)]
pub struct RepairState {
    pub apx: BTreeSet<Edge>,
    pub covered: BTreeSet<usize>,
    pub boundary: BTreeSet<Edge>,
    pub charged: BTreeSet<Edge>,
}

fn bug(cond: bool, msg: &str) {
    assert!(cond, "repair invariant violated: {msg}");
}

/// Removes links forced by being the unique link of some obstruction,
/// iterating to a fixpoint. Returns the forced set and the residual
/// instance (forced links deleted from both the graph and the link set).
pub fn necessary_links(
    inst: &CoveringInstance,
) -> Result<(BTreeSet<Edge>, CoveringInstance), SolveError> {
    let mut cur = inst.clone();
    let mut forced = BTreeSet::new();
    loop {
        let obstructions = enumerate_obstructions(&cur)
            .map_err(|e| SolveError::Precondition(e.to_string()))?;
        let mut round: BTreeSet<Edge> = BTreeSet::new();
        for o in &obstructions {
            let cands: Vec<Edge> = cur
                .links
                .iter()
                .copied()
                .filter(|&(u, v)| o.contains_edge(u, v))
                .collect();
            match cands.len() {
                0 => {
                    return Err(SolveError::Infeasible {
                        reason: "an obstruction contains no link".into(),
                        witness: Some(o.clone()),
                    })
                }
                1 => {
                    round.insert(cands[0]);
                }
                _ => {}
            }
        }
        if round.is_empty() {
            return Ok((forced, cur));
        }
        for l in round {
            forced.insert(l);
            cur.graph.remove_edge(l.0, l.1);
            cur.links.remove(&l);
            cur.cost.remove(&l);
        }
    }
}

/// Minimum-cardinality link set covering every degree-3 node and every
/// square inside components of degree 1 or 2 (the unit-cost instantiation
/// of the degree-1/2 gadget solver).
pub fn ec3(inst: &CoveringInstance, dec: &Decomposition) -> Result<BTreeSet<Edge>, SolveError> {
    debug_assert!(inst.is_unweighted());
    Ok(solve_degree12(inst, dec)?.links)
}

/// Everything a repair pass needs to know about the instance it fixes.
struct Repair<'a> {
    inst: &'a CoveringInstance,
    dec: &'a Decomposition,
    baseline: &'a BTreeSet<Edge>,
    f: BTreeSet<Edge>,
    /// Components touched or covered so far (the H set of the accounting).
    hset: BTreeSet<usize>,
    charged: BTreeSet<Edge>,
    comp_nodes: Vec<BTreeSet<usize>>,
    comp_squares: Vec<Vec<Obstruction>>,
    obstructions: Vec<Obstruction>,
}

impl<'a> Repair<'a> {
    fn new(
        inst: &'a CoveringInstance,
        dec: &'a Decomposition,
        baseline: &'a BTreeSet<Edge>,
    ) -> Self {
        let comp_nodes: Vec<BTreeSet<usize>> =
            dec.components.iter().map(|c| c.nodes()).collect();
        let comp_squares = comp_nodes
            .iter()
            .map(|ns| squares_within(&inst.graph, ns))
            .collect();
        let obstructions = enumerate_obstructions(inst).expect("d = 4");
        let mut r = Repair {
            inst,
            dec,
            baseline,
            f: baseline.clone(),
            hset: BTreeSet::new(),
            charged: BTreeSet::new(),
            comp_nodes,
            comp_squares,
            obstructions,
        };
        for ci in 0..r.comp_nodes.len() {
            if r.comp_covered(ci) {
                r.hset.insert(ci);
            }
        }
        r
    }

    fn square_covered(&self, s: &Obstruction) -> bool {
        self.f.iter().any(|&(u, v)| s.contains_edge(u, v))
    }

    fn comp_covered(&self, ci: usize) -> bool {
        self.comp_squares[ci].iter().all(|s| self.square_covered(s))
    }

    /// The unique link of `f` at node `v`, if any; corners of uncovered
    /// squares always have exactly their coboundary link.
    fn f_links_at(&self, v: usize) -> Vec<Edge> {
        self.f
            .iter()
            .copied()
            .filter(|&(a, b)| a == v || b == v)
            .collect()
    }

    fn delta_link(&self, ci: usize, v: usize) -> Option<Edge> {
        let nodes = &self.comp_nodes[ci];
        self.f_links_at(v)
            .into_iter()
            .find(|&(a, b)| nodes.contains(&a) != nodes.contains(&b))
    }

    fn far_endpoint(&self, ci: usize, l: Edge) -> usize {
        if self.comp_nodes[ci].contains(&l.0) {
            l.1
        } else {
            l.0
        }
    }

    fn comp_of(&self, v: usize) -> Option<usize> {
        self.comp_nodes.iter().position(|ns| ns.contains(&v))
    }

    /// Links with both endpoints inside covered-or-touched components, or
    /// with one endpoint there and the other lonely (the Y part).
    fn zone(&self, hset: &BTreeSet<usize>) -> BTreeSet<Edge> {
        let hnodes: BTreeSet<usize> = hset
            .iter()
            .flat_map(|&ci| self.comp_nodes[ci].iter().copied())
            .collect();
        let mut zone = BTreeSet::new();
        for &l in self.f.iter().chain(self.baseline.iter()) {
            let (a, b) = l;
            let ina = hnodes.contains(&a);
            let inb = hnodes.contains(&b);
            if ina && inb {
                zone.insert(l);
            } else if (ina && self.dec.lonely.contains(&b))
                || (inb && self.dec.lonely.contains(&a))
            {
                // Boundary links with a lonely endpoint count only while
                // they are part of the working solution.
                if self.f.contains(&l) {
                    zone.insert(l);
                }
            }
        }
        zone
    }

    fn boundary(&self) -> BTreeSet<Edge> {
        let hnodes: BTreeSet<usize> = self
            .hset
            .iter()
            .flat_map(|&ci| self.comp_nodes[ci].iter().copied())
            .collect();
        self.f
            .iter()
            .copied()
            .filter(|&(a, b)| {
                (hnodes.contains(&a) && self.dec.lonely.contains(&b))
                    || (hnodes.contains(&b) && self.dec.lonely.contains(&a))
            })
            .collect()
    }

    fn covered_obstructions(&self) -> BTreeSet<usize> {
        self.obstructions
            .iter()
            .enumerate()
            .filter(|(_, o)| self.f.iter().any(|&(u, v)| o.contains_edge(u, v)))
            .map(|(i, _)| i)
            .collect()
    }

    /// Books one iteration: coverage must strictly grow and never regress,
    /// the fresh baseline links entering the accounting zone must pay for
    /// the net growth three-to-one, and the 4/3 inequality must hold.
    fn settle_iteration(
        &mut self,
        before_f: &BTreeSet<Edge>,
        before_zone: &BTreeSet<Edge>,
        before_covered: &BTreeSet<usize>,
    ) {
        let after_covered = self.covered_obstructions();
        bug(
            before_covered.is_subset(&after_covered),
            "coverage regressed during a repair step",
        );
        bug(
            before_covered.len() < after_covered.len(),
            "repair step made no progress",
        );
        let zone = self.zone(&self.hset);
        let net = self.f.len() as i64 - before_f.len() as i64;
        if net > 0 {
            let fresh: Vec<Edge> = self
                .baseline
                .iter()
                .copied()
                .filter(|l| zone.contains(l) && !before_zone.contains(l) && !self.charged.contains(l))
                .collect();
            bug(
                fresh.len() as i64 >= 3 * net,
                "fewer than three fresh baseline links per added link",
            );
            for l in fresh.into_iter().take(3 * net as usize) {
                self.charged.insert(l);
            }
        }
        // The running 4/3 inequality, exactly in integers.
        let apx_zone = self.f.intersection(&zone).count();
        let ec_zone = self.baseline.intersection(&zone).count();
        bug(3 * apx_zone <= 4 * ec_zone, "4/3 zone inequality violated");
        let f_out: BTreeSet<Edge> = self.f.difference(&zone).copied().collect();
        let b_out: BTreeSet<Edge> = self.baseline.difference(&zone).copied().collect();
        bug(f_out == b_out, "solution deviates from baseline outside the zone");
    }

    fn state(&self) -> RepairState {
        RepairState {
            apx: self.f.clone(),
            covered: self
                .hset
                .iter()
                .copied()
                .filter(|&ci| self.comp_covered(ci))
                .collect(),
            boundary: self.boundary(),
            charged: self.charged.clone(),
        }
    }

    /// Rewires a chosen coboundary link: if its far endpoint sits on an
    /// uncovered square of another component, swap the link for an
    /// internal link there, covering that square for free.
    fn far_swap(&mut self, ci: usize, l: Edge) {
        let w = self.far_endpoint(ci, l);
        let Some(cx) = self.comp_of(w) else { return };
        if self.comp_covered(cx) {
            return;
        }
        let square = self.comp_squares[cx]
            .iter()
            .find(|s| s.nodes().any(|v| v == w))
            .cloned();
        let Some(square) = square else { return };
        if self.square_covered(&square) {
            return;
        }
        let cand = square
            .bipartite_edges()
            .into_iter()
            .find(|&(a, b)| (a == w || b == w) && self.inst.links.contains(&edge(a, b)));
        let cand = cand.unwrap_or_else(|| {
            panic!("no second link at {w}: a necessary link survived preprocessing")
        });
        self.f.remove(&l);
        self.f.insert(cand);
        self.hset.insert(cx);
    }
}

/// Covers every hexagon and every ladder of length at least 2 of a
/// residual instance whose components all have degree 3 or 4, starting
/// from a baseline that covers every degree-3 node.
pub fn cover_long_components(
    inst: &CoveringInstance,
    dec: &Decomposition,
    baseline: &BTreeSet<Edge>,
) -> Result<RepairState, SolveError> {
    for comp in &dec.components {
        let d = component_degree(&inst.graph, comp);
        if !(3..=4).contains(&d) {
            return Err(SolveError::Precondition(format!(
                "long-component repair needs degrees 3-4, found {d}"
            )));
        }
    }
    let mut r = Repair::new(inst, dec, baseline);
    let is_long = |c: &Component| match c {
        Component::Hexagon(_) => true,
        Component::Ladder(l) => l.length() >= 2,
    };
    let mut guard = 0;
    loop {
        guard += 1;
        bug(guard < 10 * dec.components.len() + 10, "repair loop did not terminate");
        let target = dec
            .components
            .iter()
            .enumerate()
            .filter(|(ci, c)| is_long(c) && !r.comp_covered(*ci))
            .map(|(ci, _)| ci)
            .next();
        let Some(ci) = target else { break };
        let before_f = r.f.clone();
        let before_zone = r.zone(&r.hset);
        let before_covered = r.covered_obstructions();
        match &dec.components[ci] {
            Component::Hexagon(_) => hexagon_step(&mut r, ci),
            Component::Ladder(l) => {
                let lad = l.clone();
                ladder_sweep(&mut r, ci, lad);
            }
        }
        r.hset.insert(ci);
        bug(r.comp_covered(ci), "target component left uncovered");
        r.settle_iteration(&before_f, &before_zone, &before_covered);
    }
    let state = r.state();
    for (ci, c) in dec.components.iter().enumerate() {
        if is_long(c) {
            bug(state.covered.contains(&ci), "a long component stayed uncovered");
        }
    }
    Ok(state)
}

/// Hexagon repair: the four claw nodes are covered by at least three
/// internal baseline links, so exactly one square can be uncovered; any of
/// its links completes the hexagon.
fn hexagon_step(r: &mut Repair, ci: usize) {
    if std::env::var("OBSCOV_TRACE_BRANCH").is_ok() { eprintln!("BRANCH hexagon"); }
    let uncovered: Vec<Obstruction> = r.comp_squares[ci]
        .iter()
        .filter(|s| !r.square_covered(s))
        .cloned()
        .collect();
    bug(uncovered.len() == 1, "hexagon with more than one uncovered square");
    let internal: Vec<Edge> = r
        .baseline
        .iter()
        .copied()
        .filter(|&(a, b)| r.comp_nodes[ci].contains(&a) && r.comp_nodes[ci].contains(&b))
        .collect();
    bug(internal.len() >= 3, "hexagon claw covered by fewer than three links");
    let link = uncovered[0]
        .bipartite_edges()
        .into_iter()
        .find(|e| r.inst.links.contains(e));
    let link = link.expect("preprocessed obstruction retains a link");
    r.f.insert(link);
}

/// One ladder, swept square by square in increasing index, with the
/// orientation conventions of the repair: an uncovered end square goes
/// last; when only the first square blocks on missing rail links the
/// column link of the second column starts the sweep instead.
fn ladder_sweep(r: &mut Repair, ci: usize, mut lad: crate::decomp::Ladder) {
    let rsq = lad.length();
    let square_cov = |r: &Repair, lad: &crate::decomp::Ladder, q: usize| {
        r.square_covered(&lad.square(q))
    };
    // Orientation: if exactly one end square is uncovered, it goes last.
    if square_cov(r, &lad, 0) != square_cov(r, &lad, rsq - 1) && !square_cov(r, &lad, 0) {
        lad = lad.reversed();
    }
    let mut guard = 0;
    loop {
        guard += 1;
        bug(guard <= 4 * rsq + 4, "ladder sweep did not terminate");
        let j = match (0..rsq).find(|&q| !square_cov(r, &lad, q)) {
            None => break,
            Some(j) => j,
        };
        if j == 0 {
            start_step(r, ci, &mut lad);
        } else if j + 1 < rsq {
            middle_step(r, ci, &lad, j);
        } else {
            end_step(r, ci, &lad);
        }
    }
}

fn rail(lad: &crate::decomp::Ladder, side: usize, q: usize) -> Edge {
    let a = if side == 0 { lad.cols[q].0 } else { lad.cols[q].1 };
    let b = if side == 0 { lad.cols[q + 1].0 } else { lad.cols[q + 1].1 };
    edge(a, b)
}

fn col(lad: &crate::decomp::Ladder, i: usize) -> Edge {
    edge(lad.cols[i].0, lad.cols[i].1)
}

/// First square uncovered (both ends are): either a first rail link exists
/// and starts the sweep, or the square blocks and the second column link
/// takes over, possibly swapping rails ahead.
fn start_step(r: &mut Repair, ci: usize, lad: &mut crate::decomp::Ladder) {
    let linkable = |r: &Repair, e: Edge| r.inst.links.contains(&e);
    // Both end squares are uncovered here. If only the far end has a rail
    // link to start from, reverse so the sweep starts there.
    let rsq = lad.length();
    let has_rail = |r: &Repair, lad: &crate::decomp::Ladder, q: usize| {
        linkable(r, rail(lad, 0, q)) || linkable(r, rail(lad, 1, q))
    };
    if !has_rail(r, lad, 0) && has_rail(r, lad, rsq - 1) {
        *lad = lad.reversed();
    }
    // Prefer a rail of the first square; relabel sides so it is the top.
    let rail_side = [0usize, 1]
        .into_iter()
        .find(|&s| linkable(r, rail(lad, s, 0)));
    if let Some(side) = rail_side {
        if side == 1 {
            *lad = lad.flipped();
        }
        let t0 = rail(lad, 0, 0);
        r.f.insert(t0);
        // Shield the next rails from later charging by pre-covering the
        // square two ahead through a swap.
        if lad.length() > 2 && !r.square_covered(&lad.square(2)) {
            let v3 = lad.cols[2].0;
            let cand = [col(lad, 2), rail(lad, 0, 2)]
                .into_iter()
                .find(|&e| (e.0 == v3 || e.1 == v3) && linkable(r, e) && !r.f.contains(&e));
            if let Some(l) = cand {
                r.f.insert(l);
                r.f.remove(&rail(lad, 0, 1));
            }
        }
        // Boundary handling for the corner that anchored the start.
        for end in [lad.cols[0].0, lad.cols[0].1] {
            if let Some(delta) = r.delta_link(ci, end) {
                r.hset.insert(ci);
                r.far_swap(ci, delta);
                break;
            }
        }
        return;
    }
    // Blocked start: neither first rail is a link, so the second column
    // link must exist.
    if std::env::var("OBSCOV_TRACE_BRANCH").is_ok() { eprintln!("BRANCH blocked-start"); }
    let l1 = col(lad, 1);
    bug(linkable(r, l1), "blocked end square without a second column link");
    let l2_edge = col(lad, 2);
    if linkable(r, l2_edge) && r.f.contains(&l2_edge) {
        r.f.insert(l1);
        r.f.remove(&rail(lad, 1, 1));
        return;
    }
    if linkable(r, l2_edge) {
        r.f.insert(l1);
        r.f.insert(l2_edge);
        r.f.remove(&rail(lad, 0, 1));
        r.f.remove(&rail(lad, 1, 1));
        return;
    }
    // No third column link: the rails past it must exist.
    bug(
        linkable(r, rail(lad, 0, 2)) && linkable(r, rail(lad, 1, 2)),
        "blocked start without onward rail links",
    );
    let fwd = [0usize, 1]
        .into_iter()
        .find(|&s| r.f.contains(&rail(lad, s, 2)));
    if let Some(side) = fwd {
        if std::env::var("OBSCOV_TRACE_BRANCH").is_ok() { eprintln!("BRANCH deep-fwd"); }
        if side == 1 {
            *lad = lad.flipped();
        }
        r.f.insert(l1);
        r.f.remove(&rail(lad, 0, 1));
        return;
    }
    if std::env::var("OBSCOV_TRACE_BRANCH").is_ok() { eprintln!("BRANCH deep-deep"); }
    r.f.insert(l1);
    r.f.insert(rail(lad, 0, 2));
    r.f.insert(rail(lad, 1, 2));
    r.f.remove(&rail(lad, 0, 1));
    r.f.remove(&rail(lad, 1, 1));
    // Shield the rail charged ahead when the fifth square is open.
    if lad.length() >= 6 && !r.square_covered(&lad.square(4)) {
        let v5 = lad.cols[4].0;
        let cand = [col(lad, 4), rail(lad, 0, 4)]
            .into_iter()
            .find(|&e| (e.0 == v5 || e.1 == v5) && linkable(r, e) && !r.f.contains(&e));
        if let Some(l) = cand {
            r.f.insert(l);
            r.f.remove(&rail(lad, 0, 3));
        }
    }
}

/// Interior square: its rails inward and outward are all in the working
/// solution, one of the three free edges is a link; take it and shield the
/// outward rail by pre-covering the square two ahead.
fn middle_step(r: &mut Repair, ci: usize, lad: &crate::decomp::Ladder, q: usize) {
    if std::env::var("OBSCOV_TRACE_BRANCH").is_ok() { eprintln!("BRANCH middle"); }
    let _ = ci;
    bug(
        r.f.contains(&rail(lad, 0, q - 1)) && r.f.contains(&rail(lad, 1, q - 1)),
        "inward rails of an interior uncovered square must be held",
    );
    bug(
        r.f.contains(&rail(lad, 0, q + 1)) && r.f.contains(&rail(lad, 1, q + 1)),
        "outward rails of an interior uncovered square must be held",
    );
    let candidates = [col(lad, q + 1), rail(lad, 0, q), rail(lad, 1, q)];
    let l = candidates
        .into_iter()
        .find(|e| r.inst.links.contains(e))
        .expect("an interior square keeps a non-column link");
    r.f.insert(l);
    // Choose the side whose column-(q+1) node the new link covers, and
    // shield that side's outward rail if the square two ahead is open.
    let side = if l == rail(lad, 0, q) { 0 } else { 1 };
    if q + 2 < lad.length() && !r.square_covered(&lad.square(q + 2)) {
        let x = if side == 0 { lad.cols[q + 2].0 } else { lad.cols[q + 2].1 };
        let cand = [col(lad, q + 2), rail(lad, side, q + 2)]
            .into_iter()
            .find(|&e| (e.0 == x || e.1 == x) && r.inst.links.contains(&e) && !r.f.contains(&e));
        if let Some(l2) = cand {
            r.f.insert(l2);
            r.f.remove(&rail(lad, side, q + 1));
        }
    }
}

/// Last square: one of its end corners holds a coboundary link; a link of
/// the square at that corner completes the ladder, and the coboundary link
/// is rewired if its far square is open.
fn end_step(r: &mut Repair, ci: usize, lad: &crate::decomp::Ladder) {
    if std::env::var("OBSCOV_TRACE_BRANCH").is_ok() { eprintln!("BRANCH end"); }
    let m = lad.cols.len();
    let q = lad.length() - 1;
    let anchor = [lad.cols[m - 1].1, lad.cols[m - 1].0]
        .into_iter()
        .find_map(|v| r.delta_link(ci, v).map(|d| (v, d)));
    let (v, delta) = anchor.expect("an uncovered end square has a held coboundary link");
    let side = if v == lad.cols[m - 1].0 { 0 } else { 1 };
    let cand = [col(lad, m - 1), rail(lad, side, q)]
        .into_iter()
        .find(|&e| (e.0 == v || e.1 == v) && r.inst.links.contains(&e));
    let l = cand.expect("a second link exists at the anchored corner");
    r.f.insert(l);
    r.hset.insert(ci);
    r.far_swap(ci, delta);
}

/// Covers the remaining single-square components (degree 3 or 4) by the
/// three-case good/bad-corner analysis.
pub fn cover_unit_ladders(
    inst: &CoveringInstance,
    dec: &Decomposition,
    partial: &RepairState,
) -> Result<BTreeSet<Edge>, SolveError> {
    for comp in &dec.components {
        let ok = matches!(comp, Component::Ladder(l) if l.length() == 1)
            && (3..=4).contains(&component_degree(&inst.graph, comp));
        if !ok {
            return Err(SolveError::Precondition(
                "unit-ladder repair expects single squares of degree 3 or 4".into(),
            ));
        }
    }
    let baseline = partial.apx.clone();
    let mut r = Repair::new(inst, dec, &baseline);
    let mut guard = 0;
    loop {
        guard += 1;
        bug(guard < 4 * dec.components.len() + 10, "unit repair did not terminate");
        let Some(_) = (0..dec.components.len()).find(|&ci| !r.comp_covered(ci)) else {
            break;
        };
        let before_f = r.f.clone();
        let before_zone = r.zone(&r.hset);
        let before_covered = r.covered_obstructions();
        let ci = unit_case1(&mut r)
            .or_else(|| unit_case2(&mut r))
            .or_else(|| unit_case3(&mut r));
        let ci = ci.expect("one of the three unit-ladder cases must apply");
        r.hset.insert(ci);
        bug(r.comp_covered(ci), "unit square left uncovered by its case");
        r.settle_iteration(&before_f, &before_zone, &before_covered);
    }
    bug(
        (0..dec.components.len()).all(|ci| r.comp_covered(ci)),
        "unit repair finished with uncovered squares",
    );
    Ok(r.f)
}

/// Corners of a unit square that hold a link to another corner of the
/// same square.
fn good_corners(r: &Repair, ci: usize) -> Vec<usize> {
    let cs = corners(&r.inst.graph, &r.dec.components[ci]);
    cs.iter()
        .copied()
        .filter(|&u| {
            cs.iter()
                .any(|&v| v != u && r.inst.links.contains(&edge(u, v)))
        })
        .collect()
}

/// Case 1: a square with two corners adjacent to lonely nodes or covered
/// components. Its third coboundary link pays for an internal link.
fn unit_case1(r: &mut Repair) -> Option<usize> {
    if std::env::var("OBSCOV_TRACE_BRANCH").is_ok() { eprintln!("BRANCH unit1?"); }
    let hnodes: BTreeSet<usize> = r
        .hset
        .iter()
        .filter(|&&ci| r.comp_covered(ci))
        .flat_map(|&ci| r.comp_nodes[ci].iter().copied())
        .collect();
    let adj = r.inst.graph.adjacency();
    for ci in 0..r.comp_nodes.len() {
        if r.comp_covered(ci) {
            continue;
        }
        let cs = corners(&r.inst.graph, &r.dec.components[ci]);
        let settled: Vec<usize> = cs
            .iter()
            .copied()
            .filter(|&u| {
                adj[u]
                    .iter()
                    .any(|w| !r.comp_nodes[ci].contains(w)
                        && (r.dec.lonely.contains(w) || hnodes.contains(w)))
            })
            .collect();
        if settled.len() < 2 {
            continue;
        }
        // Third corner anchors the new internal link.
        let third = cs
            .iter()
            .copied()
            .find(|u| !settled[..2].contains(u))
            .expect("degree >= 3 gives a third corner");
        let l = r
            .delta_link(ci, third)
            .expect("third corner of an uncovered square holds its coboundary link");
        let e = r.comp_squares[ci][0]
            .bipartite_edges()
            .into_iter()
            .find(|&(a, b)| (a == third || b == third) && r.inst.links.contains(&edge(a, b)))
            .expect("a second link exists at the third corner");
        r.f.insert(e);
        r.hset.insert(ci);
        r.far_swap(ci, l);
        return Some(ci);
    }
    None
}

/// Case 2: a good corner of one open square adjacent to a good corner of
/// another; the joining link trades for the two internal witnesses.
fn unit_case2(r: &mut Repair) -> Option<usize> {
    if std::env::var("OBSCOV_TRACE_BRANCH").is_ok() { eprintln!("BRANCH unit2?"); }
    for ci in 0..r.comp_nodes.len() {
        if r.comp_covered(ci) {
            continue;
        }
        for v in good_corners(r, ci) {
            let Some(delta) = r.delta_link(ci, v) else { continue };
            let w = r.far_endpoint(ci, delta);
            let Some(cj) = r.comp_of(w) else { continue };
            if cj == ci || r.comp_covered(cj) {
                continue;
            }
            if !good_corners(r, cj).contains(&w) {
                continue;
            }
            // Internal witnesses at both good corners.
            let u = good_witness(r, ci, v);
            let u2 = good_witness(r, cj, w);
            r.f.remove(&delta);
            r.f.insert(edge(u, v));
            r.f.insert(edge(u2, w));
            r.hset.insert(ci);
            r.hset.insert(cj);
            // The witnesses' own coboundary links may now be rewired into
            // open squares elsewhere.
            for (cx, corner) in [(ci, u), (cj, u2)] {
                if let Some(l) = r.delta_link(cx, corner) {
                    r.far_swap(cx, l);
                }
            }
            return Some(ci);
        }
    }
    None
}

fn good_witness(r: &Repair, ci: usize, v: usize) -> usize {
    let cs = corners(&r.inst.graph, &r.dec.components[ci]);
    cs.into_iter()
        .find(|&u| u != v && r.inst.links.contains(&edge(u, v)))
        .expect("good corners have a corner partner")
}

/// Case 3: every open square is a degree-3 ladder with one bad corner,
/// matched to a good corner of another open degree-3 ladder.
fn unit_case3(r: &mut Repair) -> Option<usize> {
    if std::env::var("OBSCOV_TRACE_BRANCH").is_ok() { eprintln!("BRANCH unit3?"); }
    let hnodes: BTreeSet<usize> = r
        .hset
        .iter()
        .filter(|&&ci| r.comp_covered(ci))
        .flat_map(|&ci| r.comp_nodes[ci].iter().copied())
        .collect();
    for ci in 0..r.comp_nodes.len() {
        if r.comp_covered(ci) {
            continue;
        }
        bug(
            component_degree(&r.inst.graph, &r.dec.components[ci]) == 3,
            "case 3 expects only degree-3 squares to remain",
        );
        let cs = corners(&r.inst.graph, &r.dec.components[ci]);
        let good = good_corners(r, ci);
        let bad: Vec<usize> = cs.iter().copied().filter(|u| !good.contains(u)).collect();
        bug(bad.len() == 1, "a remaining degree-3 square must have one bad corner");
        let s1 = bad[0];
        let delta = r
            .delta_link(ci, s1)
            .expect("the bad corner holds its coboundary link");
        let t2 = r.far_endpoint(ci, delta);
        let Some(cj) = r.comp_of(t2) else { continue };
        if r.comp_covered(cj) || !good_corners(r, cj).contains(&t2) {
            continue;
        }
        // Internal partner of the bad corner is the non-corner node.
        let non_corner = r.comp_nodes[ci]
            .iter()
            .copied()
            .find(|v| !cs.contains(v))
            .expect("degree-3 square has one non-corner");
        bug(
            r.inst.links.contains(&edge(s1, non_corner)),
            "bad corner must link to the non-corner node",
        );
        let t3 = good_corners(r, cj)
            .into_iter()
            .find(|&t| t != t2 && r.inst.links.contains(&edge(t, t2)))
            .expect("the matched good corner links to its good partner");
        r.f.remove(&delta);
        r.f.insert(edge(s1, non_corner));
        r.f.insert(edge(t2, t3));
        r.hset.insert(ci);
        r.hset.insert(cj);
        // Both squares' anchor corners lead to lonely nodes or covered
        // components; their links enter the boundary set implicitly.
        let _ = &hnodes;
        return Some(ci);
    }
    None
}

/// The full 4/3-approximation for unweighted instances.
pub fn solve_unweighted(inst: &CoveringInstance) -> Result<LinkSolution, SolveError> {
    if inst.d != 4 {
        return Err(SolveError::Precondition(format!(
            "the approximation pipelines require d = 4, got {}",
            inst.d
        )));
    }
    if !inst.is_unweighted() {
        return Err(SolveError::Precondition(
            "the 4/3 pipeline is for unit costs".into(),
        ));
    }
    validate_instance(inst).map_err(|e| SolveError::Precondition(e.to_string()))?;
    let (forced, residual) = necessary_links(inst)?;
    let mut links: BTreeSet<Edge> = forced.clone();
    let mut tags: BTreeMap<Edge, String> =
        forced.iter().map(|&l| (l, "necessary".to_string())).collect();
    for piece in residual.graph.connected_components() {
        let (sub, back) = residual.restrict(&piece);
        let sol = solve_unweighted_piece(&sub)?;
        for (l, tag) in sol {
            let mapped = edge(back[l.0], back[l.1]);
            links.insert(mapped);
            tags.entry(mapped).or_insert(tag);
        }
    }
    let sol = LinkSolution {
        total_cost: crate::cost::total(links.iter().map(|l| inst.link_cost(l))),
        stage_tags: tags,
        links,
    };
    debug_assert!(crate::graph::is_feasible(inst, &sol));
    Ok(sol)
}

fn solve_unweighted_piece(
    inst: &CoveringInstance,
) -> Result<Vec<(Edge, String)>, SolveError> {
    let dec = chain_decompose(&inst.graph)
        .map_err(|e| SolveError::Precondition(e.to_string()))?;
    if dec.components.len() == 1 && component_degree(&inst.graph, &dec.components[0]) == 0 {
        let sol = crate::chain::solve_degree0(inst, &dec.components[0])
            .map_err(|e| SolveError::infeasible(e.to_string()))?;
        return Ok(sol.links.into_iter().map(|l| (l, "degree0".into())).collect());
    }
    let base = ec3(inst, &dec)?;
    // Peel the components the baseline already covers.
    let covered_nodes: BTreeSet<usize> = dec
        .components
        .iter()
        .filter(|c| {
            squares_within(&inst.graph, &c.nodes())
                .iter()
                .all(|s| base.iter().any(|&(u, v)| s.contains_edge(u, v)))
        })
        .flat_map(|c| c.nodes())
        .collect();
    let apx0: BTreeSet<Edge> = base
        .iter()
        .copied()
        .filter(|&(a, b)| covered_nodes.contains(&a) && covered_nodes.contains(&b))
        .collect();
    let mut out: Vec<(Edge, String)> =
        apx0.iter().map(|&l| (l, "ec3".to_string())).collect();
    let prime = remove_links(inst, &apx0);
    let dec1 = chain_decompose(&prime.graph)
        .map_err(|e| SolveError::Precondition(e.to_string()))?;
    let base1: BTreeSet<Edge> = base.difference(&apx0).copied().collect();
    if dec1.components.is_empty() {
        out.extend(base1.into_iter().map(|l| (l, "ec3".into())));
        return Ok(out);
    }
    let state = cover_long_components(&prime, &dec1, &base1)?;
    let hnodes: BTreeSet<usize> = state
        .covered
        .iter()
        .flat_map(|&ci| dec1.components[ci].nodes())
        .collect();
    let apx1: BTreeSet<Edge> = state
        .apx
        .iter()
        .copied()
        .filter(|l| {
            state.boundary.contains(l)
                || (hnodes.contains(&l.0) && hnodes.contains(&l.1))
        })
        .collect();
    out.extend(apx1.iter().map(|&l| (l, "long-repair".to_string())));
    let second = remove_links(&prime, &apx1);
    let dec2 = chain_decompose(&second.graph)
        .map_err(|e| SolveError::Precondition(e.to_string()))?;
    let partial: BTreeSet<Edge> = state.apx.difference(&apx1).copied().collect();
    if dec2.components.is_empty() {
        out.extend(partial.into_iter().map(|l| (l, "ec3".into())));
        return Ok(out);
    }
    let carry = RepairState {
        apx: partial,
        covered: BTreeSet::new(),
        boundary: BTreeSet::new(),
        charged: BTreeSet::new(),
    };
    let apx2 = cover_unit_ladders(&second, &dec2, &carry)?;
    out.extend(apx2.into_iter().map(|l| (l, "unit-repair".into())));
    Ok(out)
}

/// Deletes a link set from both the graph and the link set of an
/// unweighted instance.
fn remove_links(inst: &CoveringInstance, links: &BTreeSet<Edge>) -> CoveringInstance {
    let mut out = inst.clone();
    for l in links {
        out.graph.remove_edge(l.0, l.1);
        out.links.remove(l);
        out.cost.remove(l);
    }
    out
}
