//! Line-oriented text formats: covering instances (`p ocov`), augmentation
//! instances (`p nca`), solutions, DIMACS CNF, and a dot emitter for
//! decompositions. All parse errors carry line numbers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::cost::{self, Cost};
use crate::decomp::{Component, Decomposition};
use crate::gadgets::CnfFormula;
use crate::graph::{edge, AugmentationInstance, CoveringInstance, Edge, LinkSolution, Multigraph};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("missing problem line")]
    MissingProblem,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Line(line, msg.into()))
}

#[derive(Debug, Clone)]
pub enum ParsedInstance {
    Covering(CoveringInstance),
    Augmentation(AugmentationInstance),
}

fn parse_cost(tok: &str, line: usize) -> Result<Cost, IoError> {
    let Some((num, den)) = tok.split_once('/') else {
        return err(line, format!("cost `{tok}` must be <num>/<den>"));
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| IoError::Line(line, format!("bad numerator `{num}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| IoError::Line(line, format!("bad denominator `{den}`")))?;
    if den.is_zero() {
        return err(line, "zero denominator");
    }
    Ok(BigRational::new(num, den))
}

fn parse_node(tok: &str, n: usize, line: usize) -> Result<usize, IoError> {
    let v: usize = tok
        .parse()
        .map_err(|_| IoError::Line(line, format!("bad node id `{tok}`")))?;
    if v >= n {
        return err(line, format!("node id {v} out of range (n = {n})"));
    }
    Ok(v)
}

/// Parses an instance file, either flavour.
pub fn parse_instance(text: &str) -> Result<ParsedInstance, IoError> {
    let mut header: Option<(bool, usize, usize)> = None; // (is_ocov, n, d_or_k)
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let mut links: BTreeSet<Edge> = BTreeSet::new();
    let mut cost: BTreeMap<Edge, Cost> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"p") => {
                if header.is_some() {
                    return err(line, "duplicate problem line");
                }
                if toks.len() != 4 {
                    return err(line, "problem line needs `p <ocov|nca> <n> <param>`");
                }
                let is_ocov = match toks[1] {
                    "ocov" => true,
                    "nca" => false,
                    other => return err(line, format!("unknown problem type `{other}`")),
                };
                let n: usize = toks[2]
                    .parse()
                    .map_err(|_| IoError::Line(line, format!("bad node count `{}`", toks[2])))?;
                let param: usize = toks[3]
                    .parse()
                    .map_err(|_| IoError::Line(line, format!("bad parameter `{}`", toks[3])))?;
                header = Some((is_ocov, n, param));
            }
            Some(&"e") => {
                let Some((_, n, _)) = header else {
                    return err(line, "edge before problem line");
                };
                if toks.len() != 3 {
                    return err(line, "edge line needs `e <u> <v>`");
                }
                let u = parse_node(toks[1], n, line)?;
                let v = parse_node(toks[2], n, line)?;
                if u == v {
                    return err(line, "self-loop");
                }
                if !edges.insert(edge(u, v)) {
                    return err(line, format!("duplicate edge {u} {v}"));
                }
            }
            Some(&"l") => {
                let Some((_, n, _)) = header else {
                    return err(line, "link before problem line");
                };
                if toks.len() != 4 {
                    return err(line, "link line needs `l <u> <v> <num>/<den>`");
                }
                let u = parse_node(toks[1], n, line)?;
                let v = parse_node(toks[2], n, line)?;
                if u == v {
                    return err(line, "self-loop link");
                }
                let c = parse_cost(toks[3], line)?;
                if c < Cost::zero() {
                    return err(line, "negative link cost");
                }
                let e = edge(u, v);
                if !links.insert(e) {
                    return err(line, format!("duplicate link {u} {v}"));
                }
                cost.insert(e, c);
            }
            Some(other) => return err(line, format!("unknown record `{other}`")),
        }
    }
    let Some((is_ocov, n, param)) = header else {
        return Err(IoError::MissingProblem);
    };
    let mut g = Multigraph::new(n);
    for &(u, v) in &edges {
        g.add_edge(u, v);
    }
    if is_ocov {
        for l in &links {
            if !edges.contains(l) {
                return err(0, format!("link {l:?} is not an edge of the graph"));
            }
        }
        Ok(ParsedInstance::Covering(CoveringInstance::new(
            g, param, links, cost,
        )))
    } else {
        for l in &links {
            if edges.contains(l) {
                return err(0, format!("link {l:?} is already an edge of the graph"));
            }
        }
        Ok(ParsedInstance::Augmentation(AugmentationInstance {
            graph: g,
            k: param,
            links,
            cost,
        }))
    }
}

pub fn emit_covering(inst: &CoveringInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "p ocov {} {}\n",
        inst.graph.node_count(),
        inst.d
    ));
    for &(u, v) in inst.graph.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    for l in &inst.links {
        out.push_str(&format!(
            "l {} {} {}\n",
            l.0,
            l.1,
            cost::display(&inst.cost[l])
        ));
    }
    out
}

pub fn emit_augmentation(aug: &AugmentationInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!("p nca {} {}\n", aug.graph.node_count(), aug.k));
    for &(u, v) in aug.graph.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    for l in &aug.links {
        out.push_str(&format!(
            "l {} {} {}\n",
            l.0,
            l.1,
            cost::display(&aug.cost[l])
        ));
    }
    out
}

pub fn emit_solution(sol: &LinkSolution) -> String {
    let mut out = format!("s {}\n", cost::display(&sol.total_cost));
    for &(u, v) in &sol.links {
        out.push_str(&format!("l {u} {v}\n"));
    }
    out
}

/// Parses a solution file against its instance: every chosen link must be
/// a link of the instance, and the cost line must match the recomputed
/// total exactly.
pub fn parse_solution(text: &str, inst: &CoveringInstance) -> Result<LinkSolution, IoError> {
    let mut stated: Option<Cost> = None;
    let mut links: BTreeSet<Edge> = BTreeSet::new();
    let n = inst.graph.node_count();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"s") => {
                if stated.is_some() {
                    return err(line, "duplicate cost line");
                }
                if toks.len() != 2 {
                    return err(line, "cost line needs `s <num>/<den>`");
                }
                stated = Some(parse_cost(toks[1], line)?);
            }
            Some(&"l") => {
                if toks.len() != 3 {
                    return err(line, "solution link needs `l <u> <v>`");
                }
                let u = parse_node(toks[1], n, line)?;
                let v = parse_node(toks[2], n, line)?;
                let e = edge(u, v);
                if !inst.links.contains(&e) {
                    return err(line, format!("{u} {v} is not a link of the instance"));
                }
                links.insert(e);
            }
            Some(other) => return err(line, format!("unknown record `{other}`")),
        }
    }
    let total = cost::total(links.iter().map(|l| &inst.cost[l]));
    if let Some(stated) = stated {
        if stated != total {
            return err(
                0,
                format!(
                    "stated cost {} does not match recomputed {}",
                    cost::display(&stated),
                    cost::display(&total)
                ),
            );
        }
    }
    Ok(LinkSolution {
        links,
        total_cost: total,
        stage_tags: BTreeMap::new(),
    })
}

/// DIMACS CNF, restricted to clauses of exactly three literals.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, IoError> {
    let mut num_vars: Option<usize> = None;
    let mut lits: Vec<i64> = vec![];
    let mut clauses: Vec<[i64; 3]> = vec![];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"p") => {
                if num_vars.is_some() {
                    return err(line, "duplicate problem line");
                }
                if toks.len() != 4 || toks[1] != "cnf" {
                    return err(line, "problem line needs `p cnf <vars> <clauses>`");
                }
                num_vars = Some(toks[2].parse().map_err(|_| {
                    IoError::Line(line, format!("bad variable count `{}`", toks[2]))
                })?);
            }
            Some(_) => {
                let Some(nv) = num_vars else {
                    return err(line, "clause before problem line");
                };
                for tok in toks {
                    let lit: i64 = tok
                        .parse()
                        .map_err(|_| IoError::Line(line, format!("bad literal `{tok}`")))?;
                    if lit == 0 {
                        if lits.len() != 3 {
                            return err(
                                line,
                                format!("clause has {} literals, need exactly 3", lits.len()),
                            );
                        }
                        clauses.push([lits[0], lits[1], lits[2]]);
                        lits.clear();
                    } else {
                        if lit.unsigned_abs() as usize > nv {
                            return err(line, format!("literal {lit} out of range"));
                        }
                        lits.push(lit);
                    }
                }
            }
        }
    }
    if !lits.is_empty() {
        return err(0, "unterminated clause at end of file");
    }
    let Some(nv) = num_vars else {
        return Err(IoError::MissingProblem);
    };
    Ok(CnfFormula::new(nv, clauses))
}

pub fn emit_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars, f.clauses.len());
    for c in &f.clauses {
        out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
    }
    out
}

/// Graphviz rendering of a decomposition: lonely nodes grey, each
/// component in its own colour.
pub fn emit_dot(g: &Multigraph, dec: &Decomposition) -> String {
    const PALETTE: [&str; 8] = [
        "firebrick", "royalblue", "forestgreen", "darkorange", "purple", "teal", "goldenrod",
        "deeppink",
    ];
    let mut colour = vec!["grey70"; g.node_count()];
    let mut shape = vec!["circle"; g.node_count()];
    for (ci, comp) in dec.components.iter().enumerate() {
        let c = PALETTE[ci % PALETTE.len()];
        for v in comp.nodes() {
            colour[v] = c;
            shape[v] = match comp {
                Component::Ladder(_) => "box",
                Component::Hexagon(_) => "hexagon",
            };
        }
    }
    let mut out = String::from("graph decomposition {\n  node [style=filled];\n");
    for v in 0..g.node_count() {
        out.push_str(&format!(
            "  {v} [color={}, shape={}];\n",
            colour[v], shape[v]
        ));
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
