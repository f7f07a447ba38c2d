//! Set intersection representations and their correspondence with clique
//! covers.
//!
//! A representation assigns each vertex a finite set of labels so that
//! two distinct vertices are adjacent exactly when their label sets
//! intersect. Labels of a valid cover are the cliques themselves; going
//! back, each label's carrier set is a clique. The brute-force
//! intersection number here serves as an oracle against the solver's
//! clique cover number: the two must agree on every graph without
//! isolated vertices.

use crate::graph::{Clique, Graph};
use crate::solver::{verify_cover, CliqueCover, CoverMode};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Per-vertex label sets. Labels are canonicalized to dense integers
/// `0..universe_size()` preserving their relative order, so equal
/// structures serialize identically.
///
/// Serializes as `{"labels": [[label ids of vertex 0], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RepresentationJson", into = "RepresentationJson")]
pub struct Representation {
    labels: Vec<BTreeSet<usize>>,
}

impl Representation {
    pub fn new(labels: Vec<BTreeSet<usize>>) -> Self {
        let used: BTreeSet<usize> = labels.iter().flatten().copied().collect();
        let rank: std::collections::BTreeMap<usize, usize> =
            used.into_iter().enumerate().map(|(r, l)| (l, r)).collect();
        let labels = labels
            .into_iter()
            .map(|set| set.into_iter().map(|l| rank[&l]).collect())
            .collect();
        Representation { labels }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BTreeSet<usize>] {
        &self.labels
    }

    /// Size of the label universe; every label in `0..universe_size()`
    /// appears on at least one vertex.
    pub fn universe_size(&self) -> usize {
        self.labels
            .iter()
            .flat_map(|s| s.iter().max())
            .max()
            .map_or(0, |&m| m + 1)
    }

    /// Total number of labels counted with multiplicity over vertices;
    /// equals the weight of the corresponding clique cover.
    pub fn weight(&self) -> usize {
        self.labels.iter().map(|s| s.len()).sum()
    }

    /// The intersection graph: `u ~ v` iff the label sets of `u != v`
    /// intersect.
    pub fn induced_graph(&self) -> Result<Graph> {
        let n = self.n();
        let mut g = Graph::new(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.labels[u].is_disjoint(&self.labels[v]) {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct RepresentationJson {
    labels: Vec<Vec<usize>>,
}

impl From<Representation> for RepresentationJson {
    fn from(r: Representation) -> Self {
        RepresentationJson {
            labels: r
                .labels
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        }
    }
}

impl TryFrom<RepresentationJson> for Representation {
    type Error = Error;

    fn try_from(j: RepresentationJson) -> Result<Representation> {
        let mut labels = Vec::with_capacity(j.labels.len());
        for (v, list) in j.labels.into_iter().enumerate() {
            let set: BTreeSet<usize> = list.iter().copied().collect();
            if set.len() != list.len() {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} lists a label twice"
                )));
            }
            labels.push(set);
        }
        Ok(Representation::new(labels))
    }
}

/// Labels a valid cover: label `i` is clique `i`, and each vertex
/// carries the labels of the cliques containing it. Weight is preserved;
/// isolated vertices get empty label sets.
pub fn cover_to_representation(g: &Graph, cover: &CliqueCover) -> Result<Representation> {
    let report = verify_cover(g, cover)?;
    if !report.valid {
        return Err(Error::InvalidArgument(
            "cover does not verify against the graph".into(),
        ));
    }
    let mut labels = vec![BTreeSet::new(); g.n()];
    for (i, clique) in cover.cliques.iter().enumerate() {
        for &v in clique.vertices() {
            labels[v].insert(i);
        }
    }
    Ok(Representation::new(labels))
}

/// Rebuilds the intersection graph and one clique per label (its carrier
/// set). Labels carried by fewer than two vertices contribute no edges
/// and are dropped from the cover.
pub fn representation_to_cover(r: &Representation) -> Result<(Graph, CliqueCover)> {
    let g = r.induced_graph()?;
    let mut carriers = vec![Vec::new(); r.universe_size()];
    for (v, set) in r.labels().iter().enumerate() {
        for &l in set {
            carriers[l].push(v);
        }
    }
    let cliques = carriers
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(Clique::new)
        .collect::<Result<Vec<_>>>()?;
    Ok((
        g,
        CliqueCover {
            mode: CoverMode::Cover,
            cliques,
        },
    ))
}

/// Pairs on which the representation disagrees with the graph.
#[derive(Clone, Debug, Serialize)]
pub struct RepReport {
    pub valid: bool,
    pub wrong_pairs: Vec<(usize, usize)>,
}

/// Valid iff the induced intersection graph equals `g` exactly.
pub fn verify_representation(g: &Graph, r: &Representation) -> Result<RepReport> {
    if r.n() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "representation covers {} vertices, graph has {}",
            r.n(),
            g.n()
        )));
    }
    let mut wrong_pairs = Vec::new();
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            let meets = !r.labels()[u].is_disjoint(&r.labels()[v]);
            if meets != g.has_edge(u, v) {
                wrong_pairs.push((u, v));
            }
        }
    }
    Ok(RepReport {
        valid: wrong_pairs.is_empty(),
        wrong_pairs,
    })
}

/// Minimum label-universe size over all valid representations of `g`,
/// found by exhaustive search over label counts increasing from zero.
///
/// A label shared by two non-adjacent vertices immediately violates the
/// representation condition, and at the first label count admitting a
/// representation no label can be redundant (dropping an empty,
/// singleton or duplicated label would give a representation with fewer
/// labels), so the search ranges over strictly increasing sequences of
/// distinct vertex subsets of size >= 2 inducing complete subgraphs.
/// This path is independent of the cover solver.
pub fn brute_force_intersection_number(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > 7 {
        return Err(Error::ResourceLimit(format!(
            "brute-force oracle supports n <= 7, got {n}"
        )));
    }
    let edges = g.edges();
    let m = edges.len();
    if m == 0 {
        return Ok(0);
    }
    let edge_index = |u: usize, v: usize| edges.binary_search(&(u, v)).unwrap();

    // candidate label sets, lexicographic by vertex list
    let mut masks = Vec::new();
    for subset in 1u32..(1 << n) {
        if subset.count_ones() < 2 {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| subset >> v & 1 == 1).collect();
        let mut ok = true;
        let mut mask = 0u32;
        'pairs: for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !g.has_edge(u, v) {
                    ok = false;
                    break 'pairs;
                }
                mask |= 1 << edge_index(u, v);
            }
        }
        if ok {
            masks.push(mask);
        }
    }
    masks.sort_unstable();
    masks.dedup();

    let full: u32 = (1 << m) - 1;
    let max_edges_per_label = masks
        .iter()
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0);
    // last candidate index covering each edge, for dead-end pruning
    let mut last_with_edge = vec![0usize; m];
    for (i, &mask) in masks.iter().enumerate() {
        for (e, last) in last_with_edge.iter_mut().enumerate() {
            if mask >> e & 1 == 1 {
                *last = i;
            }
        }
    }

    fn exists(
        masks: &[u32],
        last_with_edge: &[usize],
        max_edges: usize,
        start: usize,
        picks_left: usize,
        missing: u32,
    ) -> bool {
        if missing == 0 {
            // any remaining picks can be filled with distinct unused cliques
            return picks_left <= masks.len() - start;
        }
        if picks_left == 0 || picks_left * max_edges < missing.count_ones() as usize {
            return false;
        }
        let first_missing = missing.trailing_zeros() as usize;
        if last_with_edge[first_missing] < start {
            return false;
        }
        for i in start..masks.len() {
            if masks[i] & missing == 0 {
                continue;
            }
            if exists(
                masks,
                last_with_edge,
                max_edges,
                i + 1,
                picks_left - 1,
                missing & !masks[i],
            ) {
                return true;
            }
        }
        false
    }

    for k in 0..=(n * n / 4) {
        if exists(&masks, &last_with_edge, max_edges_per_label, 0, k, full) {
            return Ok(k);
        }
    }
    unreachable!("every graph has a representation within the n^2/4 bound");
}
