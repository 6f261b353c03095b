//! Stress harness: hammers both pipelines on thousands of seeded
//! instances, including long sparse ladders that exercise the blocked
//! sweep branches, and checks ratios against the oracle.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use obscov::cost::rat;
use obscov::graph::{edge, is_feasible, CoveringInstance, Edge, Multigraph};

/// One long ladder (4..=8 columns) with corner attachments to a lonely
/// scaffold, plus optional extra squares; link probabilities biased so
/// rails often drop out, which is what creates blockers.
fn long_ladder_instance<R: Rng>(rng: &mut R) -> CoveringInstance {
    let cols = rng.gen_range(4..=8);
    let mut g = Multigraph::new(2 * cols);
    for i in 0..cols {
        g.add_edge(2 * i, 2 * i + 1);
        if i + 1 < cols {
            g.add_edge(2 * i, 2 * i + 2);
            g.add_edge(2 * i + 1, 2 * i + 3);
        }
    }
    let ends = [0, 1, 2 * cols - 2, 2 * cols - 1];
    let picked: Vec<usize> = ends
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.9))
        .collect();
    let mut anchors = vec![];
    for &c in &picked {
        let s = g.add_node(None);
        let s2 = g.add_node(None);
        g.add_edge(s, s2);
        g.add_edge(c, s);
        anchors.push(s2);
    }
    // Sometimes hang a square off an anchor.
    for &a in &anchors {
        if rng.gen_bool(0.3) {
            let b = g.node_count();
            for _ in 0..4 {
                g.add_node(None);
            }
            g.add_edge(b, b + 1);
            g.add_edge(b, b + 2);
            g.add_edge(b + 1, b + 3);
            g.add_edge(b + 2, b + 3);
            g.add_edge(a, b);
        }
    }
    let p_rail = rng.gen_range(2..=8) as f64 / 10.0;
    let p_col = rng.gen_range(5..=10) as f64 / 10.0;
    let mut links: BTreeSet<Edge> = BTreeSet::new();
    let mut cost = BTreeMap::new();
    for &(u, v) in g.edges() {
        let is_col = v == u + 1 && u % 2 == 0 && v < 2 * cols;
        let p = if is_col { p_col } else { p_rail };
        if rng.gen_bool(p) {
            links.insert(edge(u, v));
            cost.insert(edge(u, v), rat(1, 1));
        }
    }
    let mut inst = CoveringInstance::new(g, 4, links, cost);
    // Repair feasibility.
    loop {
        match obscov::graph::uncovered_obstruction(&inst, &inst.links.clone()) {
            None => break,
            Some(o) => {
                let e = o.bipartite_edges()[0];
                inst.links.insert(e);
                inst.cost.insert(e, rat(1, 1));
            }
        }
    }
    inst
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let trials: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(2000);
    let base_seed: u64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(0);
    let mut worst_u = rat(0, 1);
    let mut worst_w = rat(0, 1);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(base_seed * 1_000_000 + t as u64);
        let inst = if t % 3 == 0 {
            long_ladder_instance(&mut rng)
        } else {
            obscov::gen::random_valid_instance(&mut rng, 16, false)
        };
        let opt = match obscov::oracle::exact_opt(&inst, &Default::default()) {
            Ok(o) => o,
            Err(e) => panic!("trial {t}: oracle failed: {e}"),
        };
        // Unweighted pipeline.
        let sol = obscov::unweighted::solve_unweighted(&inst)
            .unwrap_or_else(|e| panic!("trial {t}: unweighted failed: {e}"));
        assert!(is_feasible(&inst, &sol), "trial {t}: infeasible unweighted");
        assert!(
            3 * sol.links.len() <= 4 * opt.links.len(),
            "trial {t}: ratio breach {} vs {}",
            sol.links.len(),
            opt.links.len()
        );
        if opt.links.len() > 0 {
            let ratio = rat(sol.links.len() as i64, opt.links.len() as i64);
            if ratio > worst_u {
                worst_u = ratio;
            }
        }
        // Weighted pipeline on a reweighted copy.
        let mut winst = inst.clone();
        for c in winst.cost.values_mut() {
            *c = rat(rng.gen_range(1..=9), rng.gen_range(1..=3));
        }
        let wopt = obscov::oracle::exact_opt(&winst, &Default::default()).unwrap();
        let wsol = obscov::weighted::solve_weighted(&winst)
            .unwrap_or_else(|e| panic!("trial {t}: weighted failed: {e}"));
        assert!(is_feasible(&winst, &wsol), "trial {t}: infeasible weighted");
        let two = wsol.total_cost.clone() + &wsol.total_cost;
        let three = wopt.total_cost.clone() + &wopt.total_cost + &wopt.total_cost;
        assert!(two <= three, "trial {t}: weighted ratio breach");
        if wopt.total_cost > rat(0, 1) {
            let ratio = wsol.total_cost.clone() / wopt.total_cost.clone();
            if ratio > worst_w {
                worst_w = ratio;
            }
        }
        if (t + 1) % 500 == 0 {
            eprintln!("{} trials done", t + 1);
        }
    }
    println!("stress ok: {trials} trials, worst unweighted ratio {worst_u}, worst weighted ratio {worst_w}");
}
