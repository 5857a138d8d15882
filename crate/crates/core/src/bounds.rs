//! Score bounds from matchings.
//!
//! Every legal play is a flat-alternating-cycle-free matching, so the
//! unrestricted maximum weight matching bounds the optimum from above. For a
//! lower bound we start from that matching, orient the cover graph by it,
//! and drop every matched edge whose arc the greedy feedback arc set marks
//! as backward. What remains orders into a legal witness play.

use serde::{Deserialize, Serialize};

use crate::arena::DivisorPot;
use crate::blossom;
use crate::cover_graph::{build_divisor_cover_graph, CoverGraph, Matching, OrientedGraph};
use crate::error::{Error, Result};
use crate::fas::feedback_arc_set;
use crate::game::MoveSequence;
use crate::matching_bridge::{order_matching_general, order_matching_standard, OrderedPlay};
use crate::number_theory::SpfTable;
use crate::oracle::{optimal_score, DEFAULT_ORACLE_CAP};
use crate::poset::GradedPosetInstance;
use crate::cover_graph::build_poset_cover_graph;
use crate::weight::{Score, Weight};

/// Exact maximum weight matching of `g`.
pub fn max_weight_matching<W: Weight>(g: &CoverGraph<W>) -> Matching<W> {
    let edges: Vec<(usize, usize, W)> = g.edges().iter().map(|e| (e.lower, e.upper, e.weight)).collect();
    let mates = blossom::max_weight_matching(g.slots(), &edges);
    let ids: Vec<usize> = mates
        .iter()
        .enumerate()
        .filter_map(|(v, m)| m.filter(|&u| v < u).map(|u| (v, u)))
        .map(|(v, u)| g.edge_between(v, u).expect("mates are joined by an edge"))
        .collect();
    Matching::from_edge_ids(g, &ids)
        .expect("blossom output is a matching")
        .sorted()
}

pub fn upper_bound(n: usize) -> Result<Score> {
    let spf = SpfTable::new(n)?;
    Ok(max_weight_matching(&build_divisor_cover_graph(n, &spf)).weight())
}

/// Drop matched edges until the orientation induced by `m` is acyclic.
///
/// First every matched edge whose arc is backward in the greedy order goes.
/// If a directed cycle is still found, the lightest matched edge on it is
/// removed and the check repeats.
pub fn break_flat_cycles<W: Weight>(g: &CoverGraph<W>, m: &Matching<W>) -> Result<Matching<W>> {
    let og = OrientedGraph::new(g, m)?;
    let mut matched: Vec<bool> = (0..og.arcs().len()).map(|a| og.is_matched(a)).collect();
    for arc in feedback_arc_set(og.vertex_slots(), og.arcs()) {
        matched[arc] = false;
    }
    loop {
        let og = OrientedGraph::from_flags(g, matched.clone());
        let Some(cycle) = og.find_cycle_arcs() else {
            break;
        };
        let lightest = cycle
            .iter()
            .copied()
            .filter(|&a| matched[a])
            .min_by(|&a, &b| {
                g.edge(a)
                    .weight
                    .partial_cmp(&g.edge(b).weight)
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(a.cmp(&b))
            })
            .expect("a directed cycle climbs only through unmatched arcs and must descend somewhere");
        matched[lightest] = false;
    }
    let ids: Vec<usize> = (0..matched.len()).filter(|&a| matched[a]).collect();
    Matching::from_edge_ids(g, &ids)
}

/// Lower bound with a witness play on `{1, ..., n}`. The returned score is
/// the replayed score of the witness.
pub fn fas_lower_bound(n: usize) -> Result<(Score, MoveSequence)> {
    let spf = SpfTable::new(n)?;
    let g = build_divisor_cover_graph(n, &spf);
    let m = break_flat_cycles(&g, &max_weight_matching(&g))?;
    let order = order_matching_standard(&m, &g, &spf)?;
    let play = OrderedPlay::from_order(DivisorPot::new(n), &order)?;
    debug_assert_eq!(play.score, m.weight());
    Ok((play.score, play.sequence))
}

pub fn upper_bound_general<W: Weight>(inst: &GradedPosetInstance<W>) -> W {
    max_weight_matching(&build_poset_cover_graph(inst)).weight()
}

pub fn fas_lower_bound_general<W: Weight>(inst: &GradedPosetInstance<W>) -> Result<(W, MoveSequence)> {
    let g = build_poset_cover_graph(inst);
    let m = break_flat_cycles(&g, &max_weight_matching(&g))?;
    let order = order_matching_general(&m, inst)?;
    let play = OrderedPlay::from_order(inst, &order)?;
    Ok((play.score, play.sequence))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub lower: Score,
    pub upper: Score,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub optimal: Option<Score>,
    /// Picks of a legal play scoring `lower`.
    pub witness: Vec<usize>,
}

pub fn bounds_report(n: usize, with_oracle: bool) -> Result<BoundsReport> {
    bounds_report_with_cap(n, with_oracle.then_some(DEFAULT_ORACLE_CAP))
}

/// As [`bounds_report`], running the oracle up to `oracle_cap` when given.
pub fn bounds_report_with_cap(n: usize, oracle_cap: Option<usize>) -> Result<BoundsReport> {
    let optimal = match oracle_cap {
        Some(cap) => Some(optimal_score(n, cap)?.0),
        None => None,
    };
    let (lower, witness) = fas_lower_bound(n)?;
    Ok(BoundsReport {
        n,
        lower,
        upper: upper_bound(n)?,
        optimal,
        witness: witness.picks(),
    })
}

/// The taxman instance of a bipartite graph: `A` is rank 1, `B` rank 0,
/// `b < a` exactly when `a` and `b` are adjacent, every weight is 1.
/// Element ids list `A` first, then `B`; labels keep the given vertex names.
pub fn bipartite_to_taxman<W: Weight>(
    a_vertices: &[usize],
    b_vertices: &[usize],
    edges: &[(usize, usize)],
) -> Result<GradedPosetInstance<W>> {
    use std::collections::{HashMap, HashSet};
    let mut index = HashMap::new();
    for (i, &a) in a_vertices.iter().enumerate() {
        if index.insert(a, i).is_some() {
            return Err(Error::NotBipartite(format!("vertex {a} listed twice")));
        }
    }
    let offset = a_vertices.len();
    for (j, &b) in b_vertices.iter().enumerate() {
        if index.insert(b, offset + j).is_some() {
            return Err(Error::NotBipartite(format!("vertex {b} is on both sides or listed twice")));
        }
    }
    let mut seen = HashSet::new();
    let mut relation = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        let (iu, iv) = match (index.get(&u), index.get(&v)) {
            (Some(&iu), Some(&iv)) => (iu, iv),
            _ => return Err(Error::NotBipartite(format!("edge ({u}, {v}) has an unknown endpoint"))),
        };
        let (a, b) = match (iu < offset, iv < offset) {
            (true, false) => (iu, iv),
            (false, true) => (iv, iu),
            _ => return Err(Error::NotBipartite(format!("edge ({u}, {v}) stays on one side"))),
        };
        if !seen.insert((a, b)) {
            return Err(Error::NotBipartite(format!("edge ({u}, {v}) repeated")));
        }
        relation.push((b, a));
    }
    let len = offset + b_vertices.len();
    let rank = (0..len).map(|i| u32::from(i < offset)).collect();
    let labels = a_vertices.iter().chain(b_vertices).map(|v| v.to_string()).collect();
    Ok(GradedPosetInstance::from_order(len, &relation, rank, vec![W::one(); len])?.with_labels(labels))
}
