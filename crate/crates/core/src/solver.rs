//! Exact and heuristic clique cover optimization.
//!
//! [`solve_cover`] minimizes either the number of cliques (`cc`/`cp`) or
//! their total size (`scc`/`scp`) over clique coverings or partitions, by
//! branch and bound over the exhaustively enumerated cliques of the
//! graph. The reported witness is the lexicographically least optimal
//! solution under the enumeration order of the cliques, so repeated runs
//! are byte-identical.

use crate::graph::{enumerate_cliques, Clique, Graph};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// What to minimize over covers: the clique count or the summed sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Count,
    Weight,
}

/// Whether every edge must be covered at least once or exactly once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverMode {
    Cover,
    Partition,
}

/// A multiset of cliques claimed to cover (or partition) the edges of a
/// host graph. All cliques produced by this crate have size >= 2;
/// size-1 cliques add weight without covering anything.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCover {
    pub mode: CoverMode,
    pub cliques: Vec<Clique>,
}

impl CliqueCover {
    pub fn weight(&self) -> usize {
        self.cliques.iter().map(|c| c.len()).sum()
    }
}

/// Sum of the clique sizes of a cover.
pub fn cover_weight(cover: &CliqueCover) -> usize {
    cover.weight()
}

/// Outcome of an exact solve. The witness verifies under
/// [`verify_cover`] and attains `optimum` for the solved objective.
#[derive(Clone, Debug, Serialize)]
pub struct SolveResult {
    pub optimum: usize,
    pub witness: CliqueCover,
    pub nodes_explored: u64,
}

/// Scale knobs for the exact search.
///
/// `n_limit` is the soft vertex cap (the search space is exponential);
/// `node_limit` aborts a run deterministically after that many search
/// nodes; `max_cliques` caps the enumeration on dense graphs.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub n_limit: usize,
    pub node_limit: Option<u64>,
    pub max_cliques: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            n_limit: 20,
            node_limit: None,
            max_cliques: 1_000_000,
        }
    }
}

/// Verification outcome for a claimed cover; `valid` iff every clique
/// induces a complete subgraph, every edge is covered, and in partition
/// mode no edge is covered twice.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub valid: bool,
    /// Non-adjacent vertex pairs appearing inside some clique.
    pub non_edges: Vec<(usize, usize)>,
    pub uncovered: Vec<(usize, usize)>,
    pub multiply_covered: Vec<(usize, usize)>,
}

/// Checks a cover against its host graph. Errors only on vertices out of
/// range; semantic defects are reported, not raised.
pub fn verify_cover(g: &Graph, cover: &CliqueCover) -> Result<CoverReport> {
    let n = g.n();
    let mut count = vec![0u32; n * n];
    let mut non_edges = Vec::new();
    for clique in &cover.cliques {
        let vs = clique.vertices();
        if let Some(&v) = vs.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidArgument(format!(
                "clique vertex {v} out of range for n={n}"
            )));
        }
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if g.has_edge(u, v) {
                    count[u * n + v] += 1;
                } else {
                    non_edges.push((u, v));
                }
            }
        }
    }
    non_edges.sort_unstable();
    non_edges.dedup();

    let mut uncovered = Vec::new();
    let mut multiply_covered = Vec::new();
    for (u, v) in g.edges() {
        match count[u * n + v] {
            0 => uncovered.push((u, v)),
            1 => {}
            _ => multiply_covered.push((u, v)),
        }
    }
    let valid = non_edges.is_empty()
        && uncovered.is_empty()
        && (cover.mode == CoverMode::Cover || multiply_covered.is_empty());
    Ok(CoverReport {
        valid,
        non_edges,
        uncovered,
        multiply_covered,
    })
}

/// Exact minimum with default scale limits.
pub fn solve_cover(g: &Graph, objective: Objective, mode: CoverMode) -> Result<SolveResult> {
    solve_cover_with(g, objective, mode, &SolverConfig::default())
}

/// Exact minimum cover/partition for the chosen objective.
///
/// Runs two passes: a branch and bound to prove the optimal value, then a
/// lexicographic reconstruction that commits the smallest usable clique
/// index at each step, so the witness is the lexicographically least
/// optimal solution. An edgeless graph solves to 0 with an empty witness.
pub fn solve_cover_with(
    g: &Graph,
    objective: Objective,
    mode: CoverMode,
    config: &SolverConfig,
) -> Result<SolveResult> {
    if g.edge_count() == 0 {
        return Ok(SolveResult {
            optimum: 0,
            witness: CliqueCover {
                mode,
                cliques: Vec::new(),
            },
            nodes_explored: 0,
        });
    }
    if g.n() > config.n_limit {
        return Err(Error::ResourceLimit(format!(
            "graph has {} vertices, solver limit is {}",
            g.n(),
            config.n_limit
        )));
    }
    let mut search = Search::new(g, objective, mode, config)?;
    let optimum = search.find_optimum()?;
    let ids = search.lex_least_witness(optimum)?;
    let witness = CliqueCover {
        mode,
        cliques: ids.iter().map(|&c| search.cliques[c].clone()).collect(),
    };
    debug_assert!(verify_cover(g, &witness)?.valid);
    Ok(SolveResult {
        optimum,
        witness,
        nodes_explored: search.nodes,
    })
}

/// Heuristic cover: repeatedly takes the clique covering the most new
/// edges per unit of size, ties broken toward the lexicographically
/// smaller clique. On graphs too large to enumerate cliques it grows one
/// maximal clique per uncovered edge instead (same rule applied to the
/// candidate extension vertices); both strategies are deterministic.
pub fn greedy_cover(g: &Graph) -> CliqueCover {
    let cliques = if g.n() <= 20 {
        enumerate_cliques(g, 2).ok()
    } else {
        None
    };
    let cliques = match cliques {
        Some(cs) => cs,
        None => return greedy_cover_by_extension(g),
    };
    let edge_ids = EdgeIds::new(g);
    let clique_edges: Vec<Vec<usize>> = cliques.iter().map(|c| edge_ids.of_clique(c)).collect();
    let sizes: Vec<usize> = cliques.iter().map(|c| c.len()).collect();
    let chosen = ratio_greedy(&clique_edges, &sizes, edge_ids.count, CoverMode::Cover);
    CliqueCover {
        mode: CoverMode::Cover,
        cliques: chosen.into_iter().map(|i| cliques[i].clone()).collect(),
    }
}

/// Ratio greedy over an explicit clique list: repeatedly pick the clique
/// maximizing newly-covered-edges over size; ties keep the smaller index.
/// In partition mode only cliques whose edges are all still uncovered are
/// eligible; single edges always are, so the loop terminates.
fn ratio_greedy(
    clique_edges: &[Vec<usize>],
    sizes: &[usize],
    edge_count: usize,
    mode: CoverMode,
) -> Vec<usize> {
    let mut covered = vec![false; edge_count];
    let mut uncovered = edge_count;
    let mut chosen = Vec::new();
    while uncovered > 0 {
        let mut best: Option<(usize, usize, usize)> = None; // (new, size, index)
        for (i, edges) in clique_edges.iter().enumerate() {
            if mode == CoverMode::Partition && edges.iter().any(|&e| covered[e]) {
                continue;
            }
            let new = edges.iter().filter(|&&e| !covered[e]).count();
            if new == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((bn, bs, _)) => new * bs > bn * sizes[i],
            };
            if better {
                best = Some((new, sizes[i], i));
            }
        }
        let (new, _, idx) = best.expect("uncovered edge with no eligible clique");
        for &e in &clique_edges[idx] {
            covered[e] = true;
        }
        uncovered -= new;
        chosen.push(idx);
    }
    chosen
}

fn greedy_cover_by_extension(g: &Graph) -> CliqueCover {
    let n = g.n();
    let mut covered = vec![false; n * n];
    let mut cliques = Vec::new();
    for u in 0..n {
        for v in g.neighbors(u).iter() {
            if v < u || covered[u * n + v] {
                continue;
            }
            // grow a maximal clique around (u, v), preferring extensions
            // that cover the most uncovered edges into the current clique
            let mut clique = vec![u, v];
            let mut cands: Vec<usize> = (0..n)
                .filter(|&w| w != u && w != v && g.has_edge(w, u) && g.has_edge(w, v))
                .collect();
            while !cands.is_empty() {
                let mut best: Option<(usize, usize)> = None; // (gain, w)
                for &w in &cands {
                    let gain = clique
                        .iter()
                        .filter(|&&x| !covered[w.min(x) * n + w.max(x)])
                        .count();
                    if best.is_none_or(|(bg, _)| gain > bg) {
                        best = Some((gain, w));
                    }
                }
                let (gain, w) = best.unwrap();
                if gain == 0 {
                    break;
                }
                clique.push(w);
                cands.retain(|&x| x != w && g.has_edge(x, w));
            }
            clique.sort_unstable();
            for (i, &a) in clique.iter().enumerate() {
                for &b in &clique[i + 1..] {
                    covered[a * n + b] = true;
                }
            }
            cliques.push(Clique::new(clique).expect("extension grew a valid clique"));
        }
    }
    CliqueCover {
        mode: CoverMode::Cover,
        cliques,
    }
}

/// Dense edge-id assignment: edges numbered in (u, v) lexicographic
/// order with u < v.
struct EdgeIds {
    ids: Vec<usize>,
    count: usize,
    ends: Vec<(usize, usize)>,
    n: usize,
}

impl EdgeIds {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut ids = vec![usize::MAX; n * n];
        let mut ends = Vec::with_capacity(g.edge_count());
        for (u, v) in g.edges() {
            ids[u * n + v] = ends.len();
            ends.push((u, v));
        }
        EdgeIds {
            ids,
            count: ends.len(),
            ends,
            n,
        }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> usize {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.ids[a * self.n + b]
    }

    fn of_clique(&self, c: &Clique) -> Vec<usize> {
        let vs = c.vertices();
        let mut out = Vec::with_capacity(vs.len() * (vs.len() - 1) / 2);
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                out.push(self.get(u, v));
            }
        }
        out
    }
}

/// Branch-and-bound state shared by the value search and the witness
/// reconstruction.
struct Search {
    cliques: Vec<Clique>,
    clique_edges: Vec<Vec<usize>>,
    edge_cliques: Vec<Vec<usize>>,
    edge_ends: Vec<(usize, usize)>,
    omega: usize,
    objective: Objective,
    mode: CoverMode,
    node_limit: Option<u64>,
    nodes: u64,
    // DFS state
    cover_count: Vec<u32>,
    uncovered_count: usize,
    uncovered_deg: Vec<usize>,
    banned: Vec<bool>,
    value: usize,
}

impl Search {
    fn new(g: &Graph, objective: Objective, mode: CoverMode, config: &SolverConfig) -> Result<Self> {
        let cliques = enumerate_cliques(g, 2)?;
        if cliques.len() > config.max_cliques {
            return Err(Error::ResourceLimit(format!(
                "{} candidate cliques exceed the cap of {}",
                cliques.len(),
                config.max_cliques
            )));
        }
        let edge_ids = EdgeIds::new(g);
        let m = edge_ids.count;
        let clique_edges: Vec<Vec<usize>> = cliques.iter().map(|c| edge_ids.of_clique(c)).collect();
        let mut edge_cliques = vec![Vec::new(); m];
        for (ci, edges) in clique_edges.iter().enumerate() {
            for &e in edges {
                edge_cliques[e].push(ci);
            }
        }
        let omega = cliques.iter().map(|c| c.len()).max().unwrap_or(2);
        let uncovered_deg = (0..g.n()).map(|v| g.degree(v)).collect();
        let banned = vec![false; cliques.len()];
        Ok(Search {
            cliques,
            clique_edges,
            edge_cliques,
            edge_ends: edge_ids.ends,
            omega,
            objective,
            mode,
            node_limit: config.node_limit,
            nodes: 0,
            cover_count: vec![0; m],
            uncovered_count: m,
            uncovered_deg,
            banned,
            value: 0,
        })
    }

    fn cost(&self, c: usize) -> usize {
        match self.objective {
            Objective::Count => 1,
            Objective::Weight => self.cliques[c].len(),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if let Some(limit) = self.node_limit {
            if self.nodes > limit {
                return Err(Error::ResourceLimit(format!(
                    "search aborted after {limit} nodes"
                )));
            }
        }
        Ok(())
    }

    /// Admissible lower bound on the remaining cost. A clique of size at
    /// most omega covers at most omega-1 of the uncovered edges at any
    /// one vertex and at most C(omega, 2) edges overall.
    fn lower_bound(&self) -> usize {
        let per_clique_at_vertex = self.omega - 1;
        match self.objective {
            Objective::Weight => self
                .uncovered_deg
                .iter()
                .map(|&d| d.div_ceil(per_clique_at_vertex))
                .sum(),
            Objective::Count => {
                let per_clique = self.omega * (self.omega - 1) / 2;
                let by_edges = self.uncovered_count.div_ceil(per_clique);
                let by_vertex = self
                    .uncovered_deg
                    .iter()
                    .map(|&d| d.div_ceil(per_clique_at_vertex))
                    .max()
                    .unwrap_or(0);
                by_edges.max(by_vertex)
            }
        }
    }

    #[inline]
    fn feasible(&self, c: usize, min_id: usize) -> bool {
        if c < min_id || self.banned[c] {
            return false;
        }
        match self.mode {
            CoverMode::Cover => true,
            // partition: the clique may not touch any already covered edge
            CoverMode::Partition => self.clique_edges[c].iter().all(|&e| self.cover_count[e] == 0),
        }
    }

    /// Fail-first edge selection: the uncovered edge with the fewest
    /// feasible candidate cliques, ties toward the smaller edge id.
    /// Returns the candidates for that edge; `None` if nothing is
    /// uncovered, an empty list on a dead end.
    fn pick_edge(&self, min_id: usize) -> Option<Vec<usize>> {
        let mut best_edge = None;
        let mut best_count = usize::MAX;
        for e in 0..self.edge_ends.len() {
            if self.cover_count[e] > 0 {
                continue;
            }
            let mut count = 0;
            for &c in &self.edge_cliques[e] {
                if self.feasible(c, min_id) {
                    count += 1;
                    if count >= best_count {
                        break;
                    }
                }
            }
            if count < best_count {
                best_count = count;
                best_edge = Some(e);
                if count == 0 {
                    break;
                }
            }
        }
        let e = best_edge?;
        Some(
            self.edge_cliques[e]
                .iter()
                .copied()
                .filter(|&c| self.feasible(c, min_id))
                .collect(),
        )
    }

    /// Covers the edges of clique `c`; returns the edge ids that became
    /// covered for the matching undo.
    fn apply(&mut self, c: usize) -> Vec<usize> {
        let mut newly = Vec::new();
        for i in 0..self.clique_edges[c].len() {
            let e = self.clique_edges[c][i];
            self.cover_count[e] += 1;
            if self.cover_count[e] == 1 {
                self.uncovered_count -= 1;
                let (u, v) = self.edge_ends[e];
                self.uncovered_deg[u] -= 1;
                self.uncovered_deg[v] -= 1;
                newly.push(e);
            }
        }
        self.value += self.cost(c);
        newly
    }

    fn undo(&mut self, c: usize, newly: Vec<usize>) {
        self.value -= self.cost(c);
        for &e in &self.clique_edges[c] {
            self.cover_count[e] -= 1;
        }
        for e in newly {
            self.uncovered_count += 1;
            let (u, v) = self.edge_ends[e];
            self.uncovered_deg[u] += 1;
            self.uncovered_deg[v] += 1;
        }
    }

    /// Upper bound to seed the branch and bound: a greedy solution value.
    fn greedy_seed(&self) -> usize {
        let sizes: Vec<usize> = self.cliques.iter().map(|c| c.len()).collect();
        ratio_greedy(&self.clique_edges, &sizes, self.edge_ends.len(), self.mode)
            .into_iter()
            .map(|c| self.cost(c))
            .sum()
    }

    /// Phase 1: prove the optimal value. The greedy seed is achievable,
    /// so pruning on `>=` is sound and the seed is returned unchanged
    /// whenever it is already optimal.
    fn find_optimum(&mut self) -> Result<usize> {
        let mut best = self.greedy_seed();
        self.dfs_optimum(&mut best)?;
        Ok(best)
    }

    fn dfs_optimum(&mut self, best: &mut usize) -> Result<()> {
        self.tick()?;
        if self.uncovered_count == 0 {
            if self.value < *best {
                *best = self.value;
            }
            return Ok(());
        }
        if self.value + self.lower_bound() >= *best {
            return Ok(());
        }
        let Some(cands) = self.pick_edge(0) else {
            return Ok(());
        };
        let mut banned_here = Vec::with_capacity(cands.len());
        for &c in &cands {
            let undo = self.apply(c);
            self.dfs_optimum(best)?;
            self.undo(c, undo);
            // solutions using c are fully explored; later branches of
            // this node may not reuse it (prevents duplicate covers)
            self.banned[c] = true;
            banned_here.push(c);
        }
        for c in banned_here {
            self.banned[c] = false;
        }
        Ok(())
    }

    /// Phase 2: rebuild the lexicographically least witness attaining
    /// `optimum`, committing at each step the smallest clique index whose
    /// choice still extends to a solution of that value using only
    /// larger indices.
    fn lex_least_witness(&mut self, optimum: usize) -> Result<Vec<usize>> {
        debug_assert_eq!(self.value, 0);
        let mut chosen = Vec::new();
        let mut floor = 0usize;
        while self.uncovered_count > 0 {
            let mut committed = None;
            for c in floor..self.cliques.len() {
                if !self.feasible(c, floor) {
                    continue;
                }
                // a clique covering nothing new is redundant in any
                // optimal solution extending the current prefix
                if self.clique_edges[c].iter().all(|&e| self.cover_count[e] > 0) {
                    continue;
                }
                let undo = self.apply(c);
                if self.value + self.lower_bound() <= optimum && self.completion_exists(c + 1, optimum)? {
                    committed = Some(c);
                    break;
                }
                self.undo(c, undo);
            }
            let Some(c) = committed else {
                unreachable!("no witness completion at the proven optimum");
            };
            chosen.push(c);
            floor = c + 1;
        }
        Ok(chosen)
    }

    /// Complete search for any solution of value <= `budget` that uses
    /// only clique indices >= `min_id` on top of the current state.
    fn completion_exists(&mut self, min_id: usize, budget: usize) -> Result<bool> {
        self.tick()?;
        if self.uncovered_count == 0 {
            return Ok(true);
        }
        if self.value + self.lower_bound() > budget {
            return Ok(false);
        }
        let Some(cands) = self.pick_edge(min_id) else {
            return Ok(false);
        };
        let mut banned_here = Vec::with_capacity(cands.len());
        let mut found = false;
        for &c in &cands {
            let undo = self.apply(c);
            found = self.completion_exists(min_id, budget)?;
            self.undo(c, undo);
            if found {
                break;
            }
            self.banned[c] = true;
            banned_here.push(c);
        }
        for c in banned_here {
            self.banned[c] = false;
        }
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    fn c4() -> Graph {
        Graph::complete_multipartite(&[2, 2]).unwrap()
    }

    fn k32() -> Graph {
        Graph::complete_multipartite(&[2, 2, 2]).unwrap()
    }

    #[test]
    fn solve_examples_weight_cover() {
        let r = solve_cover(&k(3), Objective::Weight, CoverMode::Cover).unwrap();
        assert_eq!(r.optimum, 3);
        assert_eq!(r.witness.cliques.len(), 1);

        let r = solve_cover(&c4(), Objective::Weight, CoverMode::Cover).unwrap();
        assert_eq!(r.optimum, 8);

        let r = solve_cover(&k32(), Objective::Weight, CoverMode::Cover).unwrap();
        assert_eq!(r.optimum, 12);
    }

    #[test]
    fn solve_examples_count_and_partition() {
        let r = solve_cover(&c4(), Objective::Count, CoverMode::Cover).unwrap();
        assert_eq!(r.optimum, 4);

        let r = solve_cover(&k32(), Objective::Weight, CoverMode::Partition).unwrap();
        assert_eq!(r.optimum, 12);
    }

    #[test]
    fn solve_witness_is_valid_and_attains_optimum() {
        for (obj, mode) in [
            (Objective::Weight, CoverMode::Cover),
            (Objective::Weight, CoverMode::Partition),
            (Objective::Count, CoverMode::Cover),
            (Objective::Count, CoverMode::Partition),
        ] {
            let r = solve_cover(&k32(), obj, mode).unwrap();
            let report = verify_cover(&k32(), &r.witness).unwrap();
            assert!(report.valid, "{obj:?} {mode:?}: {report:?}");
            let attained = match obj {
                Objective::Weight => r.witness.weight(),
                Objective::Count => r.witness.cliques.len(),
            };
            assert_eq!(attained, r.optimum);
            assert!(r.witness.cliques.iter().all(|c| c.len() >= 2));
        }
    }

    #[test]
    fn solve_edgeless_is_zero() {
        let g = Graph::new(5).unwrap();
        let r = solve_cover(&g, Objective::Weight, CoverMode::Cover).unwrap();
        assert_eq!(r.optimum, 0);
        assert!(r.witness.cliques.is_empty());
    }

    #[test]
    fn solve_respects_n_limit() {
        let g = Graph::complete_multipartite(&[2; 11]).unwrap(); // 22 vertices
        match solve_cover(&g, Objective::Weight, CoverMode::Cover) {
            Err(Error::ResourceLimit(_)) => {}
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn solve_is_deterministic() {
        let a = solve_cover(&k32(), Objective::Weight, CoverMode::Cover).unwrap();
        let b = solve_cover(&k32(), Objective::Weight, CoverMode::Cover).unwrap();
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.nodes_explored, b.nodes_explored);
    }

    #[test]
    fn greedy_examples() {
        let g = greedy_cover(&k(4));
        assert_eq!(g.cliques.len(), 1);
        assert_eq!(g.weight(), 4);

        let g = greedy_cover(&c4());
        assert_eq!(g.cliques.len(), 4);
        assert_eq!(g.weight(), 8);

        let g = greedy_cover(&k32());
        assert_eq!(g.weight(), 12);
        let exact = solve_cover(&k32(), Objective::Weight, CoverMode::Cover).unwrap();
        assert_eq!(g.weight(), exact.optimum);
    }

    #[test]
    fn greedy_extension_path_matches_small_scale() {
        // force the large-graph strategy on a small instance and make
        // sure it still produces a valid cover of the same weight here
        let g = k32();
        let by_ext = greedy_cover_by_extension(&g);
        assert!(verify_cover(&g, &by_ext).unwrap().valid);
        assert_eq!(by_ext.weight(), 12);
    }

    #[test]
    fn greedy_on_large_multipartite_is_valid() {
        let g = Graph::complete_multipartite(&[2; 16]).unwrap(); // 32 vertices
        let cover = greedy_cover(&g);
        assert!(verify_cover(&g, &cover).unwrap().valid);
        assert!(cover.cliques.iter().all(|c| c.len() >= 2));
    }

    #[test]
    fn verify_examples() {
        let full = CliqueCover {
            mode: CoverMode::Cover,
            cliques: vec![Clique::new(vec![0, 1, 2]).unwrap()],
        };
        assert!(verify_cover(&k(3), &full).unwrap().valid);

        // the cycle 0-1-2-3-0 with only two of its edges listed
        let mut cycle = Graph::new(4).unwrap();
        for (u, v) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            cycle.add_edge(u, v).unwrap();
        }
        let partial = CliqueCover {
            mode: CoverMode::Cover,
            cliques: vec![
                Clique::new(vec![0, 1]).unwrap(),
                Clique::new(vec![1, 2]).unwrap(),
            ],
        };
        let report = verify_cover(&cycle, &partial).unwrap();
        assert!(!report.valid);
        assert_eq!(report.uncovered, vec![(0, 3), (2, 3)]);

        let double = CliqueCover {
            mode: CoverMode::Partition,
            cliques: vec![
                Clique::new(vec![0, 1, 2]).unwrap(),
                Clique::new(vec![0, 1]).unwrap(),
            ],
        };
        let report = verify_cover(&k(3), &double).unwrap();
        assert!(!report.valid);
        assert_eq!(report.multiply_covered, vec![(0, 1)]);
    }

    #[test]
    fn verify_reports_non_edge() {
        let cover = CliqueCover {
            mode: CoverMode::Cover,
            cliques: vec![Clique::new(vec![0, 1, 2]).unwrap()],
        };
        let report = verify_cover(&c4(), &cover).unwrap();
        assert!(!report.valid);
        assert!(report.non_edges.contains(&(0, 1)));
    }

    #[test]
    fn verify_rejects_out_of_range() {
        let cover = CliqueCover {
            mode: CoverMode::Cover,
            cliques: vec![Clique::new(vec![0, 9]).unwrap()],
        };
        assert!(verify_cover(&k(3), &cover).is_err());
    }

    #[test]
    fn cover_weight_examples() {
        let w = |cliques: Vec<Vec<usize>>| {
            cover_weight(&CliqueCover {
                mode: CoverMode::Cover,
                cliques: cliques.into_iter().map(|c| Clique::new(c).unwrap()).collect(),
            })
        };
        assert_eq!(w(vec![vec![0, 1, 2]]), 3);
        assert_eq!(w(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]), 8);
        assert_eq!(w(vec![]), 0);
    }

    #[test]
    fn node_limit_aborts() {
        let g = Graph::complete_multipartite(&[2; 5]).unwrap();
        let config = SolverConfig {
            node_limit: Some(3),
            ..SolverConfig::default()
        };
        match solve_cover_with(&g, Objective::Weight, CoverMode::Cover, &config) {
            Err(Error::ResourceLimit(_)) => {}
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn classical_bounds_hold_on_small_solves() {
        for g in [k(3), k(4), c4(), k32(), Graph::complete_multipartite(&[3, 2]).unwrap()] {
            let n = g.n();
            let scc = solve_cover(&g, Objective::Weight, CoverMode::Cover).unwrap().optimum;
            let cc = solve_cover(&g, Objective::Count, CoverMode::Cover).unwrap().optimum;
            assert!(scc <= n * n / 2);
            assert!(cc <= n * n / 4);
        }
    }
}
