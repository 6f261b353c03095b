//! Exact minimum-cost obstruction covering by branch-and-bound hitting
//! set. Ground truth for every ratio and equivalence test in the crate.

use num_traits::Zero;
use thiserror::Error;

use crate::cost::{self, Cost};
use crate::graph::{
    enumerate_obstructions, CoveringInstance, Edge, GraphError, LinkSolution, Obstruction,
};

#[derive(Debug, Clone)]
pub struct Budget {
    /// Branch-and-bound node limit.
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 20_000_000 }
    }
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("infeasible: obstruction {witness:?} contains no link")]
    Infeasible { witness: Obstruction },
    #[error("budget exceeded after {0} search nodes")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct Searcher {
    links: Vec<Edge>,
    link_cost: Vec<Cost>,
    /// Per obstruction, indices of links covering it.
    candidates: Vec<Vec<usize>>,
    /// Per link, indices of obstructions it covers.
    covers: Vec<Vec<usize>>,
    budget: u64,
    nodes: u64,
    best: Option<(Cost, Vec<usize>)>,
}

impl Searcher {
    fn new(inst: &CoveringInstance) -> Result<Self, OracleError> {
        let obstructions = enumerate_obstructions(inst)?;
        let links: Vec<Edge> = inst.links.iter().copied().collect();
        let link_cost: Vec<Cost> = links.iter().map(|l| inst.cost[l].clone()).collect();
        let mut candidates = vec![vec![]; obstructions.len()];
        let mut covers = vec![vec![]; links.len()];
        for (oi, o) in obstructions.iter().enumerate() {
            for (li, &(u, v)) in links.iter().enumerate() {
                if o.contains_edge(u, v) {
                    candidates[oi].push(li);
                    covers[li].push(oi);
                }
            }
            if candidates[oi].is_empty() {
                return Err(OracleError::Infeasible { witness: o.clone() });
            }
        }
        Ok(Searcher {
            links,
            link_cost,
            candidates,
            covers,
            budget: 0,
            nodes: 0,
            best: None,
        })
    }

    /// Sum over a greedy packing of candidate-disjoint uncovered
    /// obstructions of their cheapest allowed link.
    fn packing_bound(&self, covered: &[bool], banned: &[bool]) -> Option<Cost> {
        let mut bound = Cost::zero();
        let mut used = vec![false; self.links.len()];
        for (oi, cands) in self.candidates.iter().enumerate() {
            if covered[oi] {
                continue;
            }
            let allowed: Vec<usize> =
                cands.iter().copied().filter(|&l| !banned[l]).collect();
            if allowed.is_empty() {
                return None; // this branch cannot be completed
            }
            if allowed.iter().any(|&l| used[l]) {
                continue;
            }
            let cheapest = allowed
                .iter()
                .map(|&l| self.link_cost[l].clone())
                .min()
                .unwrap();
            bound += cheapest;
            for &l in &allowed {
                used[l] = true;
            }
        }
        Some(bound)
    }

    fn search(
        &mut self,
        chosen: &mut Vec<usize>,
        cost: Cost,
        covered: &mut Vec<bool>,
        banned: &mut Vec<bool>,
    ) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OracleError::BudgetExceeded(self.nodes));
        }
        let Some(extra) = self.packing_bound(covered, banned) else {
            return Ok(());
        };
        let bound = cost.clone() + extra;
        if let Some((best_cost, _)) = &self.best {
            if bound >= *best_cost {
                return Ok(());
            }
        }
        // Branch on the uncovered obstruction with fewest allowed links.
        let mut pick: Option<(usize, usize)> = None;
        for (oi, cands) in self.candidates.iter().enumerate() {
            if covered[oi] {
                continue;
            }
            let allowed = cands.iter().filter(|&&l| !banned[l]).count();
            if pick.is_none_or(|(_, n)| allowed < n) {
                pick = Some((oi, allowed));
            }
        }
        let Some((oi, _)) = pick else {
            // Everything covered: record.
            let sol = (cost.clone(), chosen.clone());
            if self
                .best
                .as_ref()
                .is_none_or(|(c, _)| sol.0 < *c)
            {
                self.best = Some(sol);
            }
            return Ok(());
        };
        let cands: Vec<usize> = self.candidates[oi]
            .iter()
            .copied()
            .filter(|&l| !banned[l])
            .collect();
        let mut newly_banned = vec![];
        for li in cands {
            chosen.push(li);
            let mut newly_covered = vec![];
            for &o in &self.covers[li] {
                if !covered[o] {
                    covered[o] = true;
                    newly_covered.push(o);
                }
            }
            self.search(chosen, cost.clone() + &self.link_cost[li], covered, banned)?;
            for o in newly_covered {
                covered[o] = false;
            }
            chosen.pop();
            banned[li] = true;
            newly_banned.push(li);
        }
        for li in newly_banned {
            banned[li] = false;
        }
        Ok(())
    }
}

/// Provably minimum-cost feasible link set.
pub fn exact_opt(inst: &CoveringInstance, budget: &Budget) -> Result<LinkSolution, OracleError> {
    let mut s = Searcher::new(inst)?;
    s.budget = budget.max_nodes;
    let mut chosen = vec![];
    let mut covered = vec![false; s.candidates.len()];
    let mut banned = vec![false; s.links.len()];
    s.search(&mut chosen, Cost::zero(), &mut covered, &mut banned)?;
    let (_, picks) = s.best.expect("feasible instance has a solution");
    let links: Vec<Edge> = picks.iter().map(|&l| s.links[l]).collect();
    Ok(LinkSolution::from_links(links, inst, "oracle"))
}

/// Every minimum-cost feasible solution, by exhaustive enumeration.
pub fn enumerate_optima(inst: &CoveringInstance) -> Result<Vec<LinkSolution>, OracleError> {
    let links: Vec<Edge> = inst.links.iter().copied().collect();
    if links.len() > 14 {
        return Err(OracleError::BudgetExceeded(1 << 14));
    }
    let obstructions = enumerate_obstructions(inst)?;
    for o in &obstructions {
        if !links.iter().any(|&(u, v)| o.contains_edge(u, v)) {
            return Err(OracleError::Infeasible { witness: o.clone() });
        }
    }
    assert!(obstructions.len() <= 128, "too many obstructions to enumerate");
    let masks: Vec<u128> = links
        .iter()
        .map(|&(u, v)| {
            obstructions
                .iter()
                .enumerate()
                .filter(|(_, o)| o.contains_edge(u, v))
                .fold(0u128, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let full = (0..obstructions.len()).fold(0u128, |m, i| m | 1 << i);
    let mut best: Option<Cost> = None;
    let mut out: Vec<Vec<Edge>> = vec![];
    for mask in 0u32..(1 << links.len()) {
        let mut covered = 0u128;
        let mut cost = Cost::zero();
        for (i, m) in masks.iter().enumerate() {
            if mask >> i & 1 == 1 {
                covered |= m;
                cost += &inst.cost[&links[i]];
            }
        }
        if covered != full {
            continue;
        }
        match &best {
            Some(b) if cost > *b => {}
            Some(b) if cost == *b => {
                out.push(
                    (0..links.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| links[i])
                        .collect(),
                );
            }
            _ => {
                best = Some(cost);
                out = vec![(0..links.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| links[i])
                    .collect()];
            }
        }
    }
    Ok(out
        .into_iter()
        .map(|ls| LinkSolution::from_links(ls, inst, "oracle"))
        .collect())
}

/// One row of a `bench` report.
#[derive(Debug, Clone)]
pub struct RatioRow {
    pub id: String,
    pub opt: Cost,
    pub apx: Cost,
    pub feasible: bool,
}

impl RatioRow {
    pub fn ratio(&self) -> Cost {
        if self.opt == Cost::zero() {
            Cost::zero()
        } else {
            self.apx.clone() / self.opt.clone()
        }
    }

    pub fn tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.id,
            cost::display(&self.opt),
            cost::display(&self.apx),
            cost::display(&self.ratio()),
            self.feasible
        )
    }
}

/// Runs `solver` against the oracle on each instance and tabulates
/// cost ratios and feasibility.
pub fn ratio_report<F>(
    instances: &[(String, CoveringInstance)],
    budget: &Budget,
    mut solver: F,
) -> Result<Vec<RatioRow>, OracleError>
where
    F: FnMut(&CoveringInstance) -> Option<LinkSolution>,
{
    let mut rows = vec![];
    for (id, inst) in instances {
        let opt = exact_opt(inst, budget)?;
        let apx = match solver(inst) {
            Some(s) => s,
            None => continue,
        };
        let feasible = crate::graph::is_feasible(inst, &apx);
        rows.push(RatioRow {
            id: id.clone(),
            opt: opt.total_cost,
            apx: apx.total_cost,
            feasible,
        });
    }
    Ok(rows)
}
