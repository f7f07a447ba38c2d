//! Families of d-partitions: qualitative independence, the
//! disjointness-pattern family property, completion of partial families,
//! random and Latin-square constructions, the exact maximum family size
//! N(n, d), and the translation into clique covers of complete
//! multipartite graphs.
//!
//! Two full partitions are qualitatively independent (QI) when every
//! class of one meets every class of the other. A family of rows
//! `(A_i^1, .., A_i^d)` has the *family property* when
//! `A_i^j ∩ A_{i'}^{j'} = ∅` exactly for `i = i'` and `j != j'`; for full
//! partitions this is the same as pairwise qualitative independence, and
//! a partial family with the property extends to a QI family by sweeping
//! the unused support into each row's last class.
//!
//! ```
//! use scc_core::qi::{family_to_cover, family_weight, mols_family};
//! use scc_core::solver::verify_cover;
//!
//! let family = mols_family(2)?; // three pairwise QI 2-partitions of [4]
//! assert_eq!(family_weight(&family), 12);
//!
//! let (graph, cover) = family_to_cover(&family)?;
//! assert!(verify_cover(&graph, &cover)?.valid);
//! assert_eq!(cover.weight(), 12);
//! # Ok::<(), scc_core::Error>(())
//! ```

use crate::bitset::BitSet;
use crate::graph::{Clique, Graph};
use crate::solver::{CliqueCover, CoverMode};
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Ordered tuple of pairwise disjoint classes over a ground set of
/// integers. A *full* partition additionally has nonempty classes and a
/// union equal to the ground set in play; partial partitions (union a
/// strict subset) are allowed and arise before completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPartition {
    classes: Vec<BTreeSet<usize>>,
}

impl DPartition {
    pub fn new(classes: Vec<BTreeSet<usize>>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::InvalidArgument("partition needs >= 1 class".into()));
        }
        let mut seen = BTreeSet::new();
        for class in &classes {
            for &x in class {
                if !seen.insert(x) {
                    return Err(Error::InvalidArgument(format!(
                        "element {x} appears in two classes"
                    )));
                }
            }
        }
        Ok(DPartition { classes })
    }

    pub fn from_vecs(cells: Vec<Vec<usize>>) -> Result<Self> {
        DPartition::new(cells.into_iter().map(|c| c.into_iter().collect()).collect())
    }

    pub fn d(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[BTreeSet<usize>] {
        &self.classes
    }

    /// Union of the classes.
    pub fn support(&self) -> BTreeSet<usize> {
        self.classes.iter().flatten().copied().collect()
    }

    pub fn weight(&self) -> usize {
        self.classes.iter().map(|c| c.len()).sum()
    }

    fn to_bitsets(&self, universe: usize) -> Vec<BitSet> {
        self.classes
            .iter()
            .map(|c| BitSet::from_iter(universe, c.iter().copied()))
            .collect()
    }
}

/// True iff every class of `p` has nonempty intersection with every
/// class of `q`. Both arguments must be full partitions of the same
/// ground set (their supports must match and no class may be empty).
pub fn is_qualitatively_independent(p: &DPartition, q: &DPartition) -> Result<bool> {
    if p.classes.iter().any(|c| c.is_empty()) || q.classes.iter().any(|c| c.is_empty()) {
        return Err(Error::InvalidArgument(
            "qualitative independence needs full partitions (no empty class)".into(),
        ));
    }
    if p.support() != q.support() {
        return Err(Error::InvalidArgument(
            "partitions cover different ground sets".into(),
        ));
    }
    Ok(p.classes
        .iter()
        .all(|a| q.classes.iter().all(|b| a.intersection(b).next().is_some())))
}

/// `t` rows of d-partitions over the ground set `0..ground_n`. Rows may
/// be partial (their supports need not exhaust the ground set).
///
/// Serializes as `{"n", "t", "d", "rows"}` with each row a list of `d`
/// cells and each cell a sorted list of elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyJson", into = "FamilyJson")]
pub struct PartitionFamily {
    ground_n: usize,
    d: usize,
    rows: Vec<DPartition>,
}

impl PartitionFamily {
    pub fn new(ground_n: usize, d: usize, rows: Vec<DPartition>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("d must be >= 1".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.d() != d {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} classes, family is d={d}",
                    row.d()
                )));
            }
            if let Some(&x) = row.support().iter().find(|&&x| x >= ground_n) {
                return Err(Error::InvalidArgument(format!(
                    "row {i} contains element {x} outside ground set 0..{ground_n}"
                )));
            }
        }
        Ok(PartitionFamily { ground_n, d, rows })
    }

    pub fn ground_n(&self) -> usize {
        self.ground_n
    }

    pub fn t(&self) -> usize {
        self.rows.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> &[DPartition] {
        &self.rows
    }

    /// Union of all cells of all rows.
    pub fn support(&self) -> BTreeSet<usize> {
        self.rows.iter().flat_map(|r| r.support()).collect()
    }

    fn cell_bitsets(&self) -> Vec<Vec<BitSet>> {
        self.rows
            .iter()
            .map(|r| r.to_bitsets(self.ground_n))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    n: usize,
    t: usize,
    d: usize,
    rows: Vec<Vec<Vec<usize>>>,
}

impl From<PartitionFamily> for FamilyJson {
    fn from(f: PartitionFamily) -> Self {
        FamilyJson {
            n: f.ground_n,
            t: f.rows.len(),
            d: f.d,
            rows: f
                .rows
                .into_iter()
                .map(|r| {
                    r.classes
                        .into_iter()
                        .map(|c| c.into_iter().collect())
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<FamilyJson> for PartitionFamily {
    type Error = Error;

    fn try_from(j: FamilyJson) -> Result<PartitionFamily> {
        if j.t != j.rows.len() {
            return Err(Error::InvalidArgument(format!(
                "family declares t={} but lists {} rows",
                j.t,
                j.rows.len()
            )));
        }
        let rows = j
            .rows
            .into_iter()
            .map(|cells| {
                let sets: Vec<BTreeSet<usize>> = cells
                    .iter()
                    .map(|c| c.iter().copied().collect::<BTreeSet<usize>>())
                    .collect();
                for (set, list) in sets.iter().zip(&cells) {
                    if set.len() != list.len() {
                        return Err(Error::InvalidArgument(
                            "cell lists an element twice".into(),
                        ));
                    }
                }
                DPartition::new(sets)
            })
            .collect::<Result<Vec<_>>>()?;
        PartitionFamily::new(j.n, j.d, rows)
    }
}

/// Which direction of the disjointness biconditional a cell pair breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Cells in different rows (or a cell with itself) found disjoint.
    ShouldIntersect,
    /// Cells in the same row found intersecting.
    ShouldBeDisjoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyViolation {
    pub row_a: usize,
    pub cell_a: usize,
    pub row_b: usize,
    pub cell_b: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub valid: bool,
    pub violations: Vec<FamilyViolation>,
}

/// Checks the family property: `A_i^j ∩ A_{i'}^{j'} = ∅` iff `i = i'`
/// and `j != j'`. Taking `(i, j) = (i', j')` this forces every cell to
/// be nonempty; across rows every cell must meet every cell.
pub fn verify_family_property(f: &PartitionFamily) -> FamilyReport {
    let cells = f.cell_bitsets();
    let mut violations = Vec::new();
    let t = f.t();
    let d = f.d();
    for i in 0..t {
        for j in 0..d {
            // same cell: must be nonempty
            if cells[i][j].is_empty() {
                violations.push(FamilyViolation {
                    row_a: i,
                    cell_a: j,
                    row_b: i,
                    cell_b: j,
                    kind: ViolationKind::ShouldIntersect,
                });
            }
            // same row, later cell: must be disjoint
            for j2 in (j + 1)..d {
                if cells[i][j].intersects(&cells[i][j2]) {
                    violations.push(FamilyViolation {
                        row_a: i,
                        cell_a: j,
                        row_b: i,
                        cell_b: j2,
                        kind: ViolationKind::ShouldBeDisjoint,
                    });
                }
            }
            // later rows: must intersect
            for i2 in (i + 1)..t {
                for j2 in 0..d {
                    if !cells[i][j].intersects(&cells[i2][j2]) {
                        violations.push(FamilyViolation {
                            row_a: i,
                            cell_a: j,
                            row_b: i2,
                            cell_b: j2,
                            kind: ViolationKind::ShouldIntersect,
                        });
                    }
                }
            }
        }
    }
    FamilyReport {
        valid: violations.is_empty(),
        violations,
    }
}

/// Extends each row of a valid (possibly partial) family to a full
/// partition of the family support `X` by replacing its last class with
/// `X` minus the other classes. The result is pairwise qualitatively
/// independent; cells only ever grow.
pub fn complete_family(f: &PartitionFamily) -> Result<PartitionFamily> {
    let report = verify_family_property(f);
    if !report.valid {
        return Err(Error::InvalidArgument(format!(
            "family property fails with {} violation(s)",
            report.violations.len()
        )));
    }
    let support: BTreeSet<usize> = f.support();
    let d = f.d();
    let rows = f
        .rows()
        .iter()
        .map(|row| {
            let mut classes = row.classes().to_vec();
            let used: BTreeSet<usize> = classes[..d - 1].iter().flatten().copied().collect();
            classes[d - 1] = support.difference(&used).copied().collect();
            DPartition::new(classes)
        })
        .collect::<Result<Vec<_>>>()?;
    PartitionFamily::new(f.ground_n(), d, rows)
}

/// Total weight of the family: the sum of all cell sizes.
pub fn family_weight(f: &PartitionFamily) -> usize {
    f.rows().iter().map(|r| r.weight()).sum()
}

/// Tuning for [`random_qi_family_with`].
#[derive(Clone, Debug)]
pub struct RandomQiOptions {
    /// Give up after this many consecutive rejected candidates.
    pub max_consecutive_rejections: u64,
    /// Optional hard cap on candidates sampled in total.
    pub max_candidates: Option<u64>,
}

impl RandomQiOptions {
    pub fn for_target(target_t: usize) -> Self {
        RandomQiOptions {
            max_consecutive_rejections: 200 * target_t as u64,
            max_candidates: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RandomQiOutcome {
    pub family: PartitionFamily,
    pub candidates_sampled: u64,
    pub hit_candidate_budget: bool,
}

/// Greedily accumulates uniformly random full d-partitions of `0..n`
/// (each element assigned an independent uniform class, resampling
/// whenever a class comes out empty), keeping a candidate iff it is
/// qualitatively independent with everything kept so far. Stops at
/// `target_t` rows or after the configured run of consecutive
/// rejections. Deterministic given the seed.
pub fn random_qi_family(n: usize, d: usize, target_t: usize, seed: u64) -> Result<PartitionFamily> {
    random_qi_family_with(n, d, target_t, seed, &RandomQiOptions::for_target(target_t))
        .map(|o| o.family)
}

pub fn random_qi_family_with(
    n: usize,
    d: usize,
    target_t: usize,
    seed: u64,
    options: &RandomQiOptions,
) -> Result<RandomQiOutcome> {
    if d < 2 {
        return Err(Error::InvalidArgument("d must be >= 2".into()));
    }
    if n < d {
        return Err(Error::InvalidArgument(format!(
            "need n >= d, got n={n}, d={d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept: Vec<Vec<BitSet>> = Vec::new();
    let mut rejections = 0u64;
    let mut sampled = 0u64;
    let mut hit_candidate_budget = false;
    while kept.len() < target_t && rejections < options.max_consecutive_rejections {
        if options.max_candidates.is_some_and(|cap| sampled >= cap) {
            hit_candidate_budget = true;
            break;
        }
        sampled += 1;
        let candidate = sample_full_partition(&mut rng, n, d);
        let qi_with_all = kept
            .iter()
            .all(|row| pairwise_qi_bitsets(row, &candidate));
        if qi_with_all {
            kept.push(candidate);
            rejections = 0;
        } else {
            rejections += 1;
        }
    }
    let rows = kept
        .into_iter()
        .map(|classes| {
            DPartition::new(classes.iter().map(|c| c.iter().collect()).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RandomQiOutcome {
        family: PartitionFamily::new(n, d, rows)?,
        candidates_sampled: sampled,
        hit_candidate_budget,
    })
}

fn sample_full_partition(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<BitSet> {
    loop {
        let mut classes = vec![BitSet::new(n); d];
        for x in 0..n {
            classes[rng.random_range(0..d)].insert(x);
        }
        if classes.iter().all(|c| !c.is_empty()) {
            return classes;
        }
    }
}

fn pairwise_qi_bitsets(p: &[BitSet], q: &[BitSet]) -> bool {
    p.iter().all(|a| q.iter().all(|b| a.intersects(b)))
}

/// The classical size-(d+1) QI family on `d^2` points for prime `d`:
/// points are pairs `(x, y)` in `Z_d x Z_d` encoded as `x*d + y`, and
/// the partitions are by row (`x`), by column (`y`), and by the lines
/// `y = k*x + c` for each slope `k in 1..d`. Every cross intersection
/// has size exactly one. Prime powers would need finite-field
/// arithmetic and are not supported.
pub fn mols_family(d: usize) -> Result<PartitionFamily> {
    if d < 2 {
        return Err(Error::InvalidArgument("d must be >= 2".into()));
    }
    if !is_prime(d) {
        return Err(Error::Unsupported(format!(
            "d = {d} is not prime; prime-power orders are not implemented"
        )));
    }
    let n = d * d;
    let mut rows = Vec::with_capacity(d + 1);
    // classes by x
    rows.push(DPartition::from_vecs(
        (0..d).map(|j| (0..d).map(|y| j * d + y).collect()).collect(),
    )?);
    // classes by y
    rows.push(DPartition::from_vecs(
        (0..d).map(|j| (0..d).map(|x| x * d + j).collect()).collect(),
    )?);
    // lines y = k*x + c
    for k in 1..d {
        rows.push(DPartition::from_vecs(
            (0..d)
                .map(|c| (0..d).map(|x| x * d + (k * x + c) % d).collect())
                .collect(),
        )?);
    }
    PartitionFamily::new(n, d, rows)
}

fn is_prime(x: usize) -> bool {
    if x < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= x {
        if x.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// Enumeration cap for [`exact_n_with`] and
/// [`all_full_d_partitions`]: the number of full d-partitions of the
/// ground set (a Stirling number) must stay within `max_partitions`.
#[derive(Clone, Debug)]
pub struct EnumerationBudget {
    pub max_partitions: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_partitions: 1_000_000,
        }
    }
}

/// All partitions of `0..n` into exactly `d` nonempty unordered classes,
/// canonicalized with classes ordered by their minimum element
/// (restricted-growth enumeration, so no duplicates).
pub fn all_full_d_partitions(n: usize, d: usize, budget: &EnumerationBudget) -> Result<Vec<DPartition>> {
    if d == 0 || n < d {
        return Err(Error::InvalidArgument(format!(
            "no partitions of an {n}-set into {d} nonempty classes"
        )));
    }
    let count = stirling2(n, d);
    if count > budget.max_partitions as u128 {
        return Err(Error::ResourceLimit(format!(
            "{count} candidate partitions exceed the budget of {}",
            budget.max_partitions
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut assignment = vec![0usize; n];
    enumerate_rgs(n, d, 1, 1, &mut assignment, &mut out);
    Ok(out)
}

fn enumerate_rgs(
    n: usize,
    d: usize,
    pos: usize,
    used: usize,
    assignment: &mut Vec<usize>,
    out: &mut Vec<DPartition>,
) {
    if pos == n {
        if used == d {
            let mut classes = vec![BTreeSet::new(); d];
            for (x, &c) in assignment.iter().enumerate() {
                classes[c].insert(x);
            }
            out.push(DPartition { classes });
        }
        return;
    }
    // cannot open enough new classes with the remaining elements
    if used + (n - pos) < d {
        return;
    }
    let top = used.min(d - 1);
    for c in 0..=top {
        assignment[pos] = c;
        enumerate_rgs(n, d, pos + 1, if c == used { used + 1 } else { used }, assignment, out);
    }
}

fn stirling2(n: usize, d: usize) -> u128 {
    // S(n, k) = k*S(n-1, k) + S(n-1, k-1), saturating
    let mut row = vec![0u128; d + 1];
    row[0] = 1;
    for _ in 1..=n {
        for k in (1..=d).rev() {
            row[k] = (k as u128)
                .saturating_mul(row[k])
                .saturating_add(row[k - 1]);
        }
        row[0] = 0;
    }
    row[d]
}

/// Exact N(n, d): the largest pairwise qualitatively independent family
/// of d-partitions of an n-set, computed as a maximum clique in the
/// compatibility graph over all full d-partitions.
///
/// The enumeration budget caps the partition count; the clique search
/// itself depends on the compatibility structure. Even ground sets are
/// quick through n = 12 at d = 2 (and n = 9 at d = 3); odd n >= 11 at
/// d = 2 has a large near-maximum plateau and can take far longer.
pub fn exact_n(n: usize, d: usize) -> Result<usize> {
    exact_n_with(n, d, &EnumerationBudget::default())
}

pub fn exact_n_with(n: usize, d: usize, budget: &EnumerationBudget) -> Result<usize> {
    let partitions = all_full_d_partitions(n, d, budget)?;
    let m = partitions.len();
    let bitsets: Vec<Vec<BitSet>> = partitions.iter().map(|p| p.to_bitsets(n)).collect();
    let mut adj = vec![BitSet::new(m); m];
    for a in 0..m {
        for b in (a + 1)..m {
            if pairwise_qi_bitsets(&bitsets[a], &bitsets[b]) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    Ok(max_clique_size(&adj))
}

/// Branch and bound with a greedy-coloring upper bound; a greedy clique
/// seeds the incumbent so dense compatibility graphs prune early.
fn max_clique_size(adj: &[BitSet]) -> usize {
    let m = adj.len();
    if m == 0 {
        return 0;
    }
    let mut best = greedy_clique_size(adj);
    expand_clique(adj, &BitSet::full(m), 0, &mut best);
    best
}

fn greedy_clique_size(adj: &[BitSet]) -> usize {
    let mut cand = BitSet::full(adj.len());
    let mut size = 0;
    while !cand.is_empty() {
        // vertex with the most candidates left after picking it
        let v = cand
            .iter()
            .max_by_key(|&v| adj[v].intersection_len(&cand))
            .unwrap();
        size += 1;
        cand.intersect_with(&adj[v]);
        cand.remove(v);
    }
    size
}

fn expand_clique(adj: &[BitSet], cand: &BitSet, size: usize, best: &mut usize) {
    if cand.is_empty() {
        if size > *best {
            *best = size;
        }
        return;
    }
    // greedy coloring: vertices in a color class are pairwise
    // non-adjacent, so a clique takes at most one per class and
    // size + color is an upper bound for everything colored so far
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(cand.len());
    let mut uncolored = cand.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut class_avail = uncolored.clone();
        while let Some(v) = class_avail.first() {
            class_avail.remove(v);
            uncolored.remove(v);
            class_avail.difference_with(&adj[v]);
            order.push((v, color));
        }
    }
    let mut cand = cand.clone();
    for &(v, color) in order.iter().rev() {
        if size + color <= *best {
            return;
        }
        let mut next = cand.clone();
        next.intersect_with(&adj[v]);
        expand_clique(adj, &next, size + 1, best);
        cand.remove(v);
    }
}

/// Maps a valid family to the complete multipartite graph `K_t(d)` with
/// vertex `(i, j) = i*d + j` per cell, plus one clique per ground element
/// `x`, namely the cells containing `x` (cliques restricted to a single
/// cell are dropped: they cover no edge). The cover is valid because
/// cells in different rows intersect; its weight equals the family
/// weight minus the elements appearing in fewer than two cells (zero of
/// those once the family is full with t >= 2).
pub fn family_to_cover(f: &PartitionFamily) -> Result<(Graph, CliqueCover)> {
    let report = verify_family_property(f);
    if !report.valid {
        return Err(Error::InvalidArgument(format!(
            "family property fails with {} violation(s)",
            report.violations.len()
        )));
    }
    let t = f.t();
    let d = f.d();
    if t == 0 {
        return Err(Error::InvalidArgument(
            "family has no rows; no host graph".into(),
        ));
    }
    let g = Graph::complete_multipartite(&vec![d; t])?;
    // cell index of x in each row (at most one by disjointness)
    let mut cell_of = vec![vec![usize::MAX; t]; f.ground_n()];
    for (i, row) in f.rows().iter().enumerate() {
        for (j, class) in row.classes().iter().enumerate() {
            for &x in class {
                cell_of[x][i] = j;
            }
        }
    }
    let mut cliques = Vec::new();
    for cells in &cell_of {
        let vertices: Vec<usize> = cells
            .iter()
            .enumerate()
            .filter(|(_, &j)| j != usize::MAX)
            .map(|(i, &j)| i * d + j)
            .collect();
        if vertices.len() >= 2 {
            cliques.push(Clique::new(vertices)?);
        }
    }
    Ok((
        g,
        CliqueCover {
            mode: CoverMode::Cover,
            cliques,
        },
    ))
}
