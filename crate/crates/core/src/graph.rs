//! Simple undirected graphs, complete multipartite generators and
//! exhaustive clique enumeration.
//!
//! Adjacency is stored as per-vertex bitsets so vertex counts beyond 64
//! work; clique enumeration is practical up to roughly 24 vertices, which
//! is also the scale limit of the exact solver built on top of it.

use crate::bitset::BitSet;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Simple undirected graph on vertices `0..n`.
///
/// Invariants: no self-loops, adjacency symmetric, `n >= 1`.
///
/// Serializes as `{"n": <int>, "edges": [[u, v], ...]}` with `u < v`,
/// edges sorted lexicographically and no duplicates; parsing rejects any
/// deviation from that form.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
}

impl Graph {
    /// Edgeless graph on `n >= 1` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "graph needs at least one vertex".into(),
            ));
        }
        Ok(Graph {
            n,
            adj: vec![BitSet::new(n); n],
        })
    }

    /// Complete t-partite graph with the given part sizes; part `i`
    /// occupies the contiguous vertex block after parts `0..i`.
    pub fn complete_multipartite(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidArgument("no part sizes given".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidArgument("part sizes must be >= 1".into()));
        }
        let n: usize = sizes.iter().sum();
        let mut part_of = Vec::with_capacity(n);
        for (i, &s) in sizes.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(i, s));
        }
        let mut g = Graph::new(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                if part_of[u] != part_of[v] {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        Graph::complete_multipartite(&vec![1; n.max(1)])
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "edge ({u},{v}) out of range for n={}",
                self.n
            )));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && v < self.n && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Same vertex set, edge iff non-edge here.
    pub fn complement(&self) -> Graph {
        let mut g = Graph {
            n: self.n,
            adj: vec![BitSet::new(self.n); self.n],
        };
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && !self.adj[u].contains(v) {
                    g.adj[u].insert(v);
                }
            }
        }
        g
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let mut g = Graph::new(j.n)?;
        let mut prev: Option<(usize, usize)> = None;
        for &(u, v) in &j.edges {
            if u >= v {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u},{v}) must satisfy u < v"
                )));
            }
            if prev == Some((u, v)) {
                return Err(Error::InvalidArgument(format!("duplicate edge ({u},{v})")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidArgument(format!("duplicate edge ({u},{v})")));
            }
            prev = Some((u, v));
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

/// Shape of a complete multipartite graph: part sizes, canonicalized to
/// nonincreasing order. `d` is the maximum part size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartSpec {
    sizes: Vec<usize>,
}

impl PartSpec {
    pub fn new(sizes: impl Into<Vec<usize>>) -> Result<Self> {
        let mut sizes = sizes.into();
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidArgument(
                "part sizes must be nonempty and >= 1".into(),
            ));
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartSpec { sizes })
    }

    /// `t` parts of size `d`, the shape of `K_t(d)`.
    pub fn uniform(t: usize, d: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidArgument("need at least one part".into()));
        }
        PartSpec::new(vec![d; t])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn t(&self) -> usize {
        self.sizes.len()
    }

    pub fn d(&self) -> usize {
        self.sizes[0]
    }

    pub fn total_vertices(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::complete_multipartite(&self.sizes)
    }
}

/// Vertex set inducing a complete subgraph. Vertices sorted, distinct,
/// at least one. Serializes as a plain array.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Clique {
    vertices: Vec<usize>,
}

impl Clique {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidArgument("empty clique".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("repeated vertex in clique".into()));
        }
        Ok(Clique { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

impl std::fmt::Debug for Clique {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Clique{:?}", self.vertices)
    }
}

impl TryFrom<Vec<usize>> for Clique {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Clique> {
        Clique::new(v)
    }
}

impl From<Clique> for Vec<usize> {
    fn from(c: Clique) -> Vec<usize> {
        c.vertices
    }
}

/// Every vertex subset of size >= `min_size` that induces a complete
/// subgraph, in lexicographic order (so `[0,1]` precedes `[0,1,2]`
/// precedes `[0,2]`). Non-maximal cliques are included: minimum-weight
/// covers may need them.
pub fn enumerate_cliques(g: &Graph, min_size: usize) -> Result<Vec<Clique>> {
    if min_size < 1 || min_size > g.n() {
        return Err(Error::InvalidArgument(format!(
            "min_size {min_size} out of range 1..={}",
            g.n()
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    for v in 0..g.n() {
        extend_clique(g, v, &mut current, min_size, &mut out);
    }
    Ok(out)
}

fn extend_clique(g: &Graph, v: usize, current: &mut Vec<usize>, min_size: usize, out: &mut Vec<Clique>) {
    current.push(v);
    if current.len() >= min_size {
        out.push(Clique {
            vertices: current.clone(),
        });
    }
    // candidates: neighbors of v above v that are adjacent to the whole stack
    for u in g.neighbors(v).iter() {
        if u > v && current[..current.len() - 1].iter().all(|&w| g.has_edge(u, w)) {
            extend_clique(g, u, current, min_size, out);
        }
    }
    current.pop();
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle4() -> Graph {
        Graph::complete_multipartite(&[2, 2]).unwrap()
    }

    #[test]
    fn multipartite_examples() {
        let c4 = cycle4();
        assert_eq!(c4.n(), 4);
        assert_eq!(c4.edge_count(), 4);

        let k3 = Graph::complete_multipartite(&[1, 1, 1]).unwrap();
        assert_eq!(k3.edge_count(), 3);

        let k32 = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        assert_eq!(k32.n(), 6);
        assert_eq!(k32.edge_count(), 12);
    }

    #[test]
    fn multipartite_part_layout() {
        // vertices 0..2 are part 0 of K_{2,3}; 2..5 are part 1
        let g = Graph::complete_multipartite(&[2, 3]).unwrap();
        assert!(!g.has_edge(0, 1));
        assert!(!g.has_edge(2, 3));
        assert!(g.has_edge(0, 2));
        assert!(g.has_edge(1, 4));
    }

    #[test]
    fn multipartite_rejects_bad_sizes() {
        assert!(Graph::complete_multipartite(&[]).is_err());
        assert!(Graph::complete_multipartite(&[2, 0]).is_err());
    }

    #[test]
    fn complement_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.complement().edge_count(), 0);

        // complement of K_{2,2} is a perfect matching on the parts
        let co = cycle4().complement();
        assert_eq!(co.edge_count(), 2);
        assert!(co.has_edge(0, 1));
        assert!(co.has_edge(2, 3));
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(Graph::complete(3).unwrap().max_degree(), 2);
        let k32 = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        assert_eq!(k32.complement().max_degree(), 1);
        assert_eq!(Graph::new(5).unwrap().max_degree(), 0);
    }

    #[test]
    fn enumerate_cliques_k3() {
        let k3 = Graph::complete(3).unwrap();
        let cliques = enumerate_cliques(&k3, 2).unwrap();
        let expect: Vec<Vec<usize>> = vec![vec![0, 1], vec![0, 1, 2], vec![0, 2], vec![1, 2]];
        let got: Vec<Vec<usize>> = cliques.iter().map(|c| c.vertices().to_vec()).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn enumerate_cliques_triangle_free() {
        assert!(enumerate_cliques(&cycle4(), 3).unwrap().is_empty());
    }

    #[test]
    fn enumerate_cliques_k32_triangles() {
        let k32 = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        let tri: Vec<_> = enumerate_cliques(&k32, 3)
            .unwrap()
            .into_iter()
            .filter(|c| c.len() == 3)
            .collect();
        // brute force all 3-subsets as the oracle
        let mut count = 0;
        for a in 0..6 {
            for b in (a + 1)..6 {
                for c in (b + 1)..6 {
                    if k32.has_edge(a, b) && k32.has_edge(a, c) && k32.has_edge(b, c) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 8);
        assert_eq!(tri.len(), count);
    }

    #[test]
    fn enumerate_cliques_min_size_bounds() {
        let k3 = Graph::complete(3).unwrap();
        assert!(enumerate_cliques(&k3, 0).is_err());
        assert!(enumerate_cliques(&k3, 4).is_err());
    }

    #[test]
    fn part_spec_canonicalizes() {
        let p = PartSpec::new(vec![1, 3, 2]).unwrap();
        assert_eq!(p.sizes(), &[3, 2, 1]);
        assert_eq!(p.t(), 3);
        assert_eq!(p.d(), 3);
        assert_eq!(p.total_vertices(), 6);
    }

    #[test]
    fn graph_json_round_trip() {
        let g = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn graph_json_rejects_malformed() {
        for bad in [
            r#"{"n": 0, "edges": []}"#,
            r#"{"n": 3, "edges": [[1, 0]]}"#,
            r#"{"n": 3, "edges": [[0, 0]]}"#,
            r#"{"n": 3, "edges": [[0, 3]]}"#,
            r#"{"n": 3, "edges": [[0, 1], [0, 1]]}"#,
        ] {
            assert!(serde_json::from_str::<Graph>(bad).is_err(), "{bad}");
        }
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            proptest::collection::vec(proptest::bool::ANY, pairs).prop_map(move |bits| {
                let mut g = Graph::new(n).unwrap();
                let mut k = 0;
                for u in 0..n {
                    for v in (u + 1)..n {
                        if bits[k] {
                            g.add_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn complement_is_involution(g in arb_graph(10)) {
            prop_assert_eq!(g.complement().complement(), g);
        }

        #[test]
        fn multipartite_edge_count_formula(sizes in proptest::collection::vec(1usize..5, 1..5)) {
            let g = Graph::complete_multipartite(&sizes).unwrap();
            let n: usize = sizes.iter().sum();
            let sq: usize = sizes.iter().map(|s| s * s).sum();
            prop_assert_eq!(g.edge_count(), (n * n - sq) / 2);
        }

        #[test]
        fn cliques_closed_downward(g in arb_graph(7)) {
            let cliques = enumerate_cliques(&g, 1).unwrap();
            let all: std::collections::HashSet<Vec<usize>> =
                cliques.iter().map(|c| c.vertices().to_vec()).collect();
            for c in &cliques {
                let vs = c.vertices();
                if vs.len() >= 2 {
                    for skip in 0..vs.len() {
                        let sub: Vec<usize> = vs
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != skip)
                            .map(|(_, &v)| v)
                            .collect();
                        prop_assert!(all.contains(&sub));
                    }
                }
            }
        }
    }
}
