//! Exhaustive backtracking search for planar embeddings that avoid a set of
//! forbidden edges.

use std::time::{Duration, Instant};

use itertools::Itertools;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::embedder::Embedding;
use crate::error::OracleError;
use crate::forbid::{ForbidConstruction, ForbidKind};
use crate::geom::{convex_hull, segments_cross_unchecked, Edge, EdgeSet, PointSet};
use crate::trees::{all_trees, root_at, Tree};

pub const DEFAULT_BUDGET: u64 = 100_000_000;
/// Largest point set [`min_forbidden_set_size`] accepts.
pub const MAX_SUBSET_SEARCH_POINTS: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Infeasible,
    /// The node budget ran out first.
    Unknown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Prunes {
    pub crossing: u64,
    pub forbidden: u64,
    pub symmetry: u64,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub verdict: Verdict,
    pub witness: Option<Embedding>,
    pub nodes_expanded: u64,
    pub prunes: Prunes,
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn is_feasible(&self) -> bool {
        self.verdict == Verdict::Feasible
    }
}

impl Serialize for SearchReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SearchReport", 5)?;
        match self.verdict {
            Verdict::Feasible => st.serialize_field("feasible", &true)?,
            Verdict::Infeasible => st.serialize_field("feasible", &false)?,
            Verdict::Unknown => st.serialize_field("feasible", "unknown")?,
        }
        st.serialize_field("witness", &self.witness.as_ref().map(|w| w.record(None)))?;
        st.serialize_field("nodes", &self.nodes_expanded)?;
        st.serialize_field("prunes", &self.prunes)?;
        st.serialize_field("ms", &(self.elapsed.as_secs_f64() * 1000.0))?;
        st.end()
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    /// Vertex placement order. Every vertex after the first must have a
    /// neighbour earlier in the order. Defaults to a BFS from a vertex of
    /// maximum degree.
    pub vertex_order: Option<Vec<usize>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, vertex_order: None }
    }
}

/// Index of the unordered pair `a < b` among all pairs of `n` points.
fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * n + b
}

/// Crossing and forbidden lookups for one point set, shared by many searches.
struct Tables {
    n: usize,
    /// `cross[pair_index(e) * n * n + pair_index(f)]`.
    cross: Vec<bool>,
}

impl Tables {
    fn new(s: &PointSet) -> Self {
        let n = s.len();
        let mut cross = vec![false; n * n * n * n];
        let edges: Vec<Edge> = s.all_edges().collect();
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                if segments_cross_unchecked(s, e, f) {
                    let (ie, jf) = (pair_index(n, e.a(), e.b()), pair_index(n, f.a(), f.b()));
                    cross[ie * n * n + jf] = true;
                    cross[jf * n * n + ie] = true;
                }
            }
        }
        Tables { n, cross }
    }

    fn crosses(&self, e: usize, f: usize) -> bool {
        self.cross[e * self.n * self.n + f]
    }
}

struct Search<'a> {
    tables: &'a Tables,
    forbidden: Vec<bool>,
    order: &'a [usize],
    /// Earlier neighbour of `order[i]`, for `i > 0`.
    anchor: Vec<usize>,
    allowed: &'a [usize],
    budget: u64,
    nodes: u64,
    prunes: Prunes,
    assignment: Vec<usize>,
    used: Vec<bool>,
    placed_edges: Vec<usize>,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn run(&mut self) -> Step {
        self.extend(0)
    }

    fn extend(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            return Step::Found;
        }
        let n = self.tables.n;
        let v = self.order[depth];
        for idx in 0..self.allowed.len() {
            let p = self.allowed[idx];
            if self.used[p] {
                continue;
            }
            let mut edge = None;
            if depth > 0 {
                let q = self.assignment[self.anchor[depth]];
                let e = pair_index(n, p, q);
                if self.forbidden[e] {
                    self.prunes.forbidden += 1;
                    continue;
                }
                if self.placed_edges.iter().any(|&f| self.tables.crosses(e, f)) {
                    self.prunes.crossing += 1;
                    continue;
                }
                edge = Some(e);
            }
            if self.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            self.nodes += 1;
            self.assignment[v] = p;
            self.used[p] = true;
            if let Some(e) = edge {
                self.placed_edges.push(e);
            }
            match self.extend(depth + 1) {
                Step::Exhausted => {}
                done => return done,
            }
            self.used[p] = false;
            if edge.is_some() {
                self.placed_edges.pop();
            }
        }
        Step::Exhausted
    }
}

fn default_order(t: &Tree) -> Vec<usize> {
    t.bfs_order(t.max_degree_vertex())
}

/// Earlier neighbour of each vertex in `order`, or an error if some vertex
/// has none.
fn anchors(t: &Tree, order: &[usize]) -> Result<Vec<usize>, OracleError> {
    let k = t.len();
    if order.len() != k {
        return Err(OracleError::BadVertexOrder);
    }
    let mut rank = vec![usize::MAX; k];
    for (i, &v) in order.iter().enumerate() {
        if v >= k || rank[v] != usize::MAX {
            return Err(OracleError::BadVertexOrder);
        }
        rank[v] = i;
    }
    let mut out = vec![usize::MAX; k];
    for (i, &v) in order.iter().enumerate().skip(1) {
        out[i] = *t
            .neighbors(v)
            .iter()
            .find(|&&u| rank[u] < i)
            .ok_or(OracleError::BadVertexOrder)?;
    }
    Ok(out)
}

fn search_with(
    t: &Tree,
    s: &PointSet,
    tables: &Tables,
    forbidden: &EdgeSet,
    allowed: &[usize],
    order: &[usize],
    budget: u64,
) -> Result<SearchReport, OracleError> {
    if budget == 0 {
        return Err(OracleError::ZeroBudget);
    }
    forbidden.validate(s.len())?;
    if t.len() > allowed.len() {
        return Err(OracleError::TreeTooLarge { tree: t.len(), points: allowed.len() });
    }
    let started = Instant::now();
    let n = s.len();
    let mut forbidden_table = vec![false; n * n];
    for e in forbidden.iter() {
        forbidden_table[pair_index(n, e.a(), e.b())] = true;
    }
    let mut search = Search {
        tables,
        forbidden: forbidden_table,
        order,
        anchor: anchors(t, order)?,
        allowed,
        budget,
        nodes: 0,
        prunes: Prunes::default(),
        assignment: vec![usize::MAX; t.len()],
        used: vec![false; n],
        placed_edges: Vec::with_capacity(t.len()),
    };
    let step = search.run();
    let (verdict, witness) = match step {
        Step::Found => {
            let rooted = root_at(t, order[0])?;
            let emb = Embedding::new(rooted, s.clone(), search.assignment.clone())
                .expect("search only produces planar injective assignments");
            (Verdict::Feasible, Some(emb))
        }
        Step::Exhausted => (Verdict::Infeasible, None),
        Step::OutOfBudget => (Verdict::Unknown, None),
    };
    Ok(SearchReport {
        verdict,
        witness,
        nodes_expanded: search.nodes,
        prunes: search.prunes,
        elapsed: started.elapsed(),
    })
}

/// Decides whether `t` has a planar embedding into `s` that uses no edge of
/// `forbidden`. When `t` is smaller than `s` any subset of the points may be
/// used.
pub fn exists_embedding(t: &Tree, s: &PointSet, forbidden: &EdgeSet, budget: u64) -> Result<SearchReport, OracleError> {
    exists_embedding_with(t, s, forbidden, &SearchOptions { budget, vertex_order: None })
}

pub fn exists_embedding_with(
    t: &Tree,
    s: &PointSet,
    forbidden: &EdgeSet,
    options: &SearchOptions,
) -> Result<SearchReport, OracleError> {
    let order = match &options.vertex_order {
        Some(o) => o.clone(),
        None => default_order(t),
    };
    let allowed: Vec<usize> = (0..s.len()).collect();
    search_with(t, s, &Tables::new(s), forbidden, &allowed, &order, options.budget)
}

/// True when every planar embedding of `t` into `s` uses a forbidden edge.
pub fn forbids(forbidden: &EdgeSet, t: &Tree, s: &PointSet) -> Result<bool, OracleError> {
    decide(exists_embedding(t, s, forbidden, DEFAULT_BUDGET)?)
}

fn decide(report: SearchReport) -> Result<bool, OracleError> {
    match report.verdict {
        Verdict::Feasible => Ok(false),
        Verdict::Infeasible => Ok(true),
        Verdict::Unknown => Err(OracleError::BudgetExhausted(report.nodes_expanded)),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    pub subsets_checked: u64,
    pub subsets_skipped_by_symmetry: u64,
    pub searches: u64,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinForbidden {
    pub size: usize,
    pub edges: EdgeSet,
    pub tree: Tree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinForbiddenReport {
    pub result: Option<MinForbidden>,
    pub stats: EnumerationStats,
}

/// Point permutations induced by the rotations and reflections of the hull
/// order, identity first. Only the identity for non-convex sets.
fn dihedral_maps(s: &PointSet) -> Result<Vec<Vec<usize>>, OracleError> {
    let n = s.len();
    let identity: Vec<usize> = (0..n).collect();
    if !s.is_convex_position() {
        return Ok(vec![identity]);
    }
    let hull = convex_hull(s)?;
    let mut position = vec![0; n];
    for (i, &p) in hull.iter().enumerate() {
        position[p] = i;
    }
    let mut maps = vec![identity];
    for shift in 0..n {
        for reflect in [false, true] {
            if shift == 0 && !reflect {
                continue;
            }
            maps.push(
                (0..n)
                    .map(|p| {
                        let i = position[p];
                        let j = if reflect { (n + shift - i) % n } else { (i + shift) % n };
                        hull[j]
                    })
                    .collect(),
            );
        }
    }
    Ok(maps)
}

/// Whether `edges` (sorted) is the lexicographically least image under `maps`.
fn is_canonical(edges: &[Edge], maps: &[Vec<usize>]) -> bool {
    let mut image = Vec::with_capacity(edges.len());
    for map in &maps[1..] {
        image.clear();
        image.extend(edges.iter().map(|e| Edge::new(map[e.a()], map[e.b()])));
        image.sort();
        if image.as_slice() < edges {
            return false;
        }
    }
    true
}

/// Smallest edge set of size at most `size_cap` that forbids some tree on
/// `k` vertices in `s`, searching sizes in increasing order.
pub fn min_forbidden_set_size(s: &PointSet, k: usize, size_cap: usize) -> Result<MinForbiddenReport, OracleError> {
    let n = s.len();
    if !(2..=n).contains(&k) || n > MAX_SUBSET_SEARCH_POINTS {
        return Err(OracleError::OutOfRange(format!(
            "need 2 <= k <= |s| <= {MAX_SUBSET_SEARCH_POINTS}, got k = {k}, |s| = {n}"
        )));
    }
    let trees = all_trees(k)?;
    let tables = Tables::new(s);
    let maps = dihedral_maps(s)?;
    let all: Vec<Edge> = s.all_edges().collect();
    let allowed: Vec<usize> = (0..n).collect();
    let orders: Vec<Vec<usize>> = trees.iter().map(default_order).collect();
    let mut stats = EnumerationStats::default();

    for size in 0..=size_cap.min(all.len()) {
        for combo in all.iter().copied().combinations(size) {
            if !is_canonical(&combo, &maps) {
                stats.subsets_skipped_by_symmetry += 1;
                continue;
            }
            stats.subsets_checked += 1;
            let set: EdgeSet = combo.into_iter().collect();
            for (t, order) in trees.iter().zip(&orders) {
                let report = search_with(t, s, &tables, &set, &allowed, order, DEFAULT_BUDGET)?;
                stats.searches += 1;
                stats.nodes += report.nodes_expanded;
                if decide(report)? {
                    return Ok(MinForbiddenReport {
                        result: Some(MinForbidden { size, edges: set, tree: t.clone() }),
                        stats,
                    });
                }
            }
        }
    }
    Ok(MinForbiddenReport { result: None, stats })
}

/// Checks with the oracle that the construction forbids its target tree in
/// `s`. For a target smaller than `s`, also checks every subset of
/// `target_tree.len()` points on its own.
pub fn verify_construction(c: &ForbidConstruction, s: &PointSet) -> Result<bool, OracleError> {
    verify_construction_with_budget(c, s, DEFAULT_BUDGET)
}

/// [`verify_construction`] with a node budget for each search.
pub fn verify_construction_with_budget(c: &ForbidConstruction, s: &PointSet, budget: u64) -> Result<bool, OracleError> {
    let t = &c.target_tree;
    let tables = Tables::new(s);
    let order = default_order(t);
    let all: Vec<usize> = (0..s.len()).collect();
    if !decide(search_with(t, s, &tables, &c.edges, &all, &order, budget)?)? {
        return Ok(false);
    }
    if c.kind == ForbidKind::REdgeBlanket && t.len() < s.len() {
        for subset in (0..s.len()).combinations(t.len()) {
            if !decide(search_with(t, s, &tables, &c.edges, &subset, &order, budget)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forbid::three_consecutive_hull_edges;
    use crate::generate::{convex_position, random_general_position, DEFAULT_BOX};
    use crate::trees::spider_tree;

    fn brute_force_feasible(t: &Tree, s: &PointSet, forbidden: &EdgeSet) -> bool {
        let edges = t.edges();
        (0..s.len()).permutations(t.len()).any(|assignment| {
            let image: Vec<Edge> = edges.iter().map(|&(u, v)| Edge::new(assignment[u], assignment[v])).collect();
            image.iter().all(|e| !forbidden.contains(e))
                && image
                    .iter()
                    .tuple_combinations()
                    .all(|(&e, &f)| !segments_cross_unchecked(s, e, f))
        })
    }

    #[test]
    fn matches_permutation_brute_force() {
        for seed in 0..6 {
            let s = random_general_position(6, seed, DEFAULT_BOX).unwrap();
            let all: Vec<Edge> = s.all_edges().collect();
            for k in 3..=6 {
                for t in all_trees(k).unwrap() {
                    for f in 0..5 {
                        let forbidden: EdgeSet = all.iter().copied().skip(f).step_by(2 + f).collect();
                        let report = exists_embedding(t, &s, &forbidden, DEFAULT_BUDGET).unwrap();
                        assert_eq!(report.is_feasible(), brute_force_feasible(t, &s, &forbidden));
                        if let Some(w) = &report.witness {
                            assert!(w.avoids(&forbidden));
                            assert_eq!(w.crossings(), 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn empty_forbidden_set_is_always_feasible() {
        let s = random_general_position(7, 3, DEFAULT_BOX).unwrap();
        for k in 2..=7 {
            for t in all_trees(k).unwrap() {
                assert!(!forbids(&EdgeSet::new(), t, &s).unwrap());
            }
        }
    }

    #[test]
    fn conf3_on_seven_gon_is_infeasible() {
        let s = convex_position(7, 1).unwrap();
        let c = three_consecutive_hull_edges(&s, 0).unwrap();
        let report = exists_embedding(&spider_tree(7).unwrap(), &s, &c.edges, DEFAULT_BUDGET).unwrap();
        assert_eq!(report.verdict, Verdict::Infeasible);
        assert!(report.witness.is_none());
    }

    #[test]
    fn pentagram_blocks_the_path() {
        // the five diagonals of a convex pentagon pairwise cross unless adjacent
        let s = convex_position(5, 1).unwrap();
        let hull: EdgeSet = (0..5).map(|i| Edge::new(i, (i + 1) % 5)).collect();
        let path = Tree::path(5).unwrap();
        let report = exists_embedding(&path, &s, &hull, DEFAULT_BUDGET).unwrap();
        assert_eq!(report.verdict, Verdict::Infeasible);
        assert!(!brute_force_feasible(&path, &s, &hull));
        let four = Tree::path(4).unwrap();
        assert!(!exists_embedding(&four, &s, &hull, DEFAULT_BUDGET).unwrap().is_feasible());
        let three = Tree::path(3).unwrap();
        assert!(exists_embedding(&three, &s, &hull, DEFAULT_BUDGET).unwrap().is_feasible());
    }

    #[test]
    fn full_edge_set_forbids_everything() {
        let s = convex_position(5, 2).unwrap();
        let full: EdgeSet = s.all_edges().collect();
        for k in 2..=5 {
            for t in all_trees(k).unwrap() {
                assert!(forbids(&full, t, &s).unwrap());
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let s = convex_position(7, 1).unwrap();
        let c = three_consecutive_hull_edges(&s, 0).unwrap();
        let report = exists_embedding(&spider_tree(7).unwrap(), &s, &c.edges, 10).unwrap();
        assert_eq!(report.verdict, Verdict::Unknown);
        assert_eq!(report.nodes_expanded, 10);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["feasible"], "unknown");
        assert!(json["witness"].is_null());
        assert_eq!(
            exists_embedding(&spider_tree(7).unwrap(), &s, &c.edges, 0).unwrap_err(),
            OracleError::ZeroBudget
        );
    }

    #[test]
    fn rejects_oversized_trees_and_bad_orders() {
        let s = convex_position(5, 1).unwrap();
        assert_eq!(
            exists_embedding(&Tree::path(6).unwrap(), &s, &EdgeSet::new(), 100).unwrap_err(),
            OracleError::TreeTooLarge { tree: 6, points: 5 }
        );
        let options = SearchOptions { budget: 100, vertex_order: Some(vec![0, 2, 1]) };
        assert_eq!(
            exists_embedding_with(&Tree::path(3).unwrap(), &s, &EdgeSet::new(), &options).unwrap_err(),
            OracleError::BadVertexOrder
        );
    }

    #[test]
    fn two_vertex_trees_need_every_edge() {
        let s = random_general_position(5, 4, DEFAULT_BOX).unwrap();
        let report = min_forbidden_set_size(&s, 2, 10).unwrap();
        assert_eq!(report.result.unwrap().size, 10);
    }

    #[test]
    fn convex_hexagon_needs_three() {
        let s = convex_position(6, 1).unwrap();
        let report = min_forbidden_set_size(&s, 6, 3).unwrap();
        assert_eq!(report.result.unwrap().size, 3);
        assert!(report.stats.subsets_skipped_by_symmetry > 0);
    }

    #[test]
    fn dihedral_maps_preserve_crossings() {
        let s = convex_position(7, 5).unwrap();
        let maps = dihedral_maps(&s).unwrap();
        assert_eq!(maps.len(), 14);
        let edges: Vec<Edge> = s.all_edges().collect();
        for map in &maps {
            for (&e, &f) in edges.iter().tuple_combinations() {
                let me = Edge::new(map[e.a()], map[e.b()]);
                let mf = Edge::new(map[f.a()], map[f.b()]);
                assert_eq!(segments_cross_unchecked(&s, e, f), segments_cross_unchecked(&s, me, mf));
            }
        }
    }

    #[test]
    fn out_of_range_subset_search() {
        let s = convex_position(8, 1).unwrap();
        assert!(matches!(min_forbidden_set_size(&s, 5, 2), Err(OracleError::OutOfRange(_))));
    }
}
