//! Spanning-tree embeddings that avoid one forbidden edge.
//!
//! Starts from the recursive embedding with children sorted by increasing
//! subtree size and the rightmost visible point chosen everywhere, then
//! repairs the layout locally at the tree edge `(u, v)` (`u` the parent)
//! that lands on the forbidden edge, until no tree edge does.

use serde::Serialize;

use crate::embedder::embedding::Embedding;
use crate::embedder::layout::{
    partition_wedges, zero_direction, Layout, LayoutEngine, LowestHullPoint, Rightmost,
};
use crate::error::EmbedError;
use crate::geom::{monotone_chain, visible_hull_vertices, Edge, PointSet};
use crate::trees::{root_at, sort_children_by_subtree_size, RootedTree, Tree};

/// The local repair applied in one round, in the order they are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Repair {
    /// `v` has a non-trivial subtree: put it on another visible hull vertex.
    Rechoose,
    /// `v` is a leaf with a non-leaf sibling: reorder `u`'s children so the
    /// far endpoint falls into a non-leaf wedge.
    ReorderSiblings,
    /// All children of `u` are leaves: recenter the star away from the edge.
    RecenterStar,
    /// `v` is an only child and so is `u`: redraw the three-vertex path.
    RedrawPath,
    /// `v` is an only child and `u` has a sibling whose subtree is not a
    /// single edge: swap that sibling into `u`'s wedge.
    PromoteSibling,
    /// The whole tree is an odd spider: re-root on an endpoint of the edge.
    RerootSpider,
    /// `u`'s parent only has single-edge subtrees below it: re-anchor it by
    /// angular parity around the grandparent.
    ReanchorByParity,
}

#[derive(Clone, Debug)]
pub struct SingleEdgeOutcome {
    pub embedding: Embedding,
    pub repairs: Vec<Repair>,
}

/// Embeds `t` on all of `s` without drawing any tree edge on `e`. The tree is
/// rooted at vertex 0.
pub fn embed_avoiding_single(t: &Tree, s: &PointSet, e: Edge) -> Result<Embedding, EmbedError> {
    embed_avoiding_single_traced(t, s, e, 0).map(|o| o.embedding)
}

/// Like [`embed_avoiding_single`], rooting the tree at `root` and reporting
/// the sequence of repairs that was needed.
pub fn embed_avoiding_single_traced(
    t: &Tree,
    s: &PointSet,
    e: Edge,
    root: usize,
) -> Result<SingleEdgeOutcome, EmbedError> {
    let n = s.len();
    if t.len() != n {
        return Err(EmbedError::SizeMismatch { tree: t.len(), points: n });
    }
    if n < 5 {
        return Err(EmbedError::TooSmall { needed: 5, got: n });
    }
    s.check_edge(e)?;
    let rt = sort_children_by_subtree_size(&root_at(t, root)?, true);
    let mut state = Repairer {
        points: s,
        forbidden: e,
        tree: rt,
        overrides: vec![None; n],
        repairs: Vec::new(),
    };
    for _ in 0..n * n {
        let layout = state.layout()?;
        let Some(v) = state.offending_child(&layout) else {
            let embedding = Embedding::new(state.tree, s.clone(), layout.assignment)?;
            return Ok(SingleEdgeOutcome { embedding, repairs: state.repairs });
        };
        let repair = state.repair(&layout, v)?;
        state.repairs.push(repair);
    }
    Err(EmbedError::Defect(format!(
        "edge {e} still used after {} repairs: {:?}",
        n * n,
        state.repairs
    )))
}

struct Repairer<'a> {
    points: &'a PointSet,
    forbidden: Edge,
    tree: RootedTree,
    overrides: Vec<Option<usize>>,
    repairs: Vec<Repair>,
}

impl Repairer<'_> {
    fn layout(&self) -> Result<Layout, EmbedError> {
        LayoutEngine {
            tree: &self.tree,
            points: self.points,
            root_selector: &LowestHullPoint,
            child_selector: &Rightmost,
            overrides: &self.overrides,
        }
        .run((0..self.points.len()).collect())
        .map_err(|err| EmbedError::Defect(format!("repaired layout is invalid: {err}")))
    }

    /// The child endpoint of the tree edge drawn on the forbidden edge.
    fn offending_child(&self, layout: &Layout) -> Option<usize> {
        (0..self.tree.len()).find(|&v| {
            self.tree
                .parent(v)
                .is_some_and(|u| Edge::new(layout.point(u), layout.point(v)) == self.forbidden)
        })
    }

    /// Drops the forced points of everything strictly below `v`.
    fn clear_below(&mut self, v: usize) {
        for w in self.tree.subtree_vertices(v).into_iter().skip(1) {
            self.overrides[w] = None;
        }
    }

    fn set_order(&mut self, v: usize, order: Vec<usize>) -> Result<(), EmbedError> {
        self.tree.set_children_order(v, order)?;
        self.clear_below(v);
        Ok(())
    }

    fn force_point(&mut self, v: usize, point: usize) {
        self.overrides[v] = Some(point);
        self.clear_below(v);
    }

    fn defect(&self, what: &str) -> EmbedError {
        EmbedError::Defect(format!("{what} (forbidden edge {})", self.forbidden))
    }

    fn repair(&mut self, layout: &Layout, v: usize) -> Result<Repair, EmbedError> {
        let u = self.tree.parent(v).expect("offending vertex has a parent");
        let (p, q) = (layout.point(u), layout.point(v));
        let size = |w: usize| self.tree.subtree_size(w);

        if size(v) >= 2 {
            let choice = visible_hull_vertices(self.points, p, &layout.cell[v])
                .into_iter()
                .rev()
                .find(|&c| c != q)
                .ok_or_else(|| self.defect("no second visible vertex"))?;
            self.force_point(v, choice);
            return Ok(Repair::Rechoose);
        }

        let siblings: Vec<usize> = self.tree.children(u).iter().copied().filter(|&w| w != v).collect();
        if siblings.iter().any(|&w| size(w) >= 2) {
            let rank = layout.around[u].iter().position(|&x| x == q).expect("q lies in u's cell");
            let (leaves, inner): (Vec<usize>, Vec<usize>) =
                self.tree.children(u).iter().copied().partition(|&w| size(w) == 1);
            let split = rank.min(leaves.len());
            let order = leaves[..split]
                .iter()
                .chain(&inner)
                .chain(&leaves[split..])
                .copied()
                .collect();
            self.set_order(u, order)?;
            return Ok(Repair::ReorderSiblings);
        }

        if !siblings.is_empty() {
            let cell = &layout.cell[u];
            let preferred: Vec<usize> = match layout.apex[u] {
                Some(g) => visible_hull_vertices(self.points, g, cell),
                None => monotone_chain(self.points, cell),
            };
            let center = preferred
                .iter()
                .rev()
                .chain(cell.iter())
                .copied()
                .find(|&c| c != p && c != q)
                .ok_or_else(|| self.defect("star cell has no third point"))?;
            self.force_point(u, center);
            return Ok(Repair::RecenterStar);
        }

        // v is a leaf and the only child of u.
        let w = self
            .tree
            .parent(u)
            .ok_or_else(|| self.defect("tree is a single edge"))?;
        let uncles: Vec<usize> = self.tree.children(w).iter().copied().filter(|&x| x != u).collect();

        if uncles.is_empty() {
            // w - u - v is the whole subtree of w, drawn on three points.
            let cell = &layout.cell[w];
            let middle = *cell
                .iter()
                .find(|&&c| c != p && c != q)
                .ok_or_else(|| self.defect("path cell is not three points"))?;
            let anchor = match layout.apex[w] {
                Some(g) => visible_hull_vertices(self.points, g, cell)
                    .into_iter()
                    .rev()
                    .find(|&c| c == p || c == q)
                    .ok_or_else(|| self.defect("neither endpoint visible"))?,
                None => p,
            };
            self.force_point(w, anchor);
            self.overrides[u] = Some(middle);
            return Ok(Repair::RedrawPath);
        }

        if uncles.iter().any(|&x| size(x) != 2) {
            let order = self.promote_sibling(layout, w, u, p, q)?;
            self.set_order(w, order)?;
            return Ok(Repair::PromoteSibling);
        }

        // Every child of w carries a single edge.
        match self.tree.parent(w) {
            None => {
                self.force_point(w, p);
                Ok(Repair::RerootSpider)
            }
            Some(x) => {
                let anchor = self.parity_anchor(layout, w, layout.point(x))?;
                self.force_point(w, anchor);
                Ok(Repair::ReanchorByParity)
            }
        }
    }

    /// A new child order for `w` that stops `p` and `q` from sharing the
    /// two-point wedge of `u`. The first choice moves a sibling with a larger
    /// subtree into `u`'s slot, keeping the siblings before it in place.
    fn promote_sibling(&self, layout: &Layout, w: usize, u: usize, p: usize, q: usize) -> Result<Vec<usize>, EmbedError> {
        let size = |x: usize| self.tree.subtree_size(x);
        let around = &layout.around[w];
        let rank_p = around.iter().position(|&x| x == p).expect("p in cell");
        let rank_q = around.iter().position(|&x| x == q).expect("q in cell");
        let separates = |order: &[usize]| {
            let mut start = 0;
            for &c in order {
                let end = start + size(c);
                let has_p = (start..end).contains(&rank_p);
                let has_q = (start..end).contains(&rank_q);
                if has_p || has_q {
                    return !(has_p && has_q && size(c) == 2);
                }
                start = end;
            }
            false
        };
        let current = self.tree.children(w).to_vec();
        let mut uncles: Vec<usize> = current.iter().copied().filter(|&x| x != u && size(x) != 2).collect();
        uncles.sort_by_key(|&x| (size(x) < 3, current.iter().position(|&y| y == x)));
        for x in uncles {
            let without: Vec<usize> = current.iter().copied().filter(|&y| y != x).collect();
            let slot = without.iter().position(|&y| y == u).expect("u is a child of w");
            for pos in std::iter::once(slot).chain(0..=without.len()) {
                let mut order = without.clone();
                order.insert(pos, x);
                if separates(&order) {
                    return Ok(order);
                }
            }
        }
        Err(self.defect("no sibling order separates the forbidden edge"))
    }

    /// Picks the point for `w` (all of whose children carry a single edge)
    /// by rank parity of its cell sorted around the grandparent point `g`.
    /// Points with an even number of predecessors split the rest into two
    /// even runs; an endpoint of the forbidden edge is preferred, otherwise
    /// the first even-ranked point strictly between the two endpoints.
    fn parity_anchor(&self, layout: &Layout, w: usize, g: usize) -> Result<usize, EmbedError> {
        let cell = &layout.cell[w];
        let x = self.tree.parent(w).expect("w has a parent");
        // the cell is a contiguous run of the grandparent's angular order
        let ranked: Vec<usize> = layout.around[x].iter().copied().filter(|c| cell.contains(c)).collect();
        let rank = |c: usize| ranked.iter().position(|&y| y == c).expect("endpoint in cell");
        let (a, b) = self.forbidden.endpoints();
        let (ra, rb) = (rank(a).min(rank(b)), rank(a).max(rank(b)));

        let mut candidates = Vec::with_capacity(ranked.len());
        for r in [ra, rb] {
            if r % 2 == 0 {
                candidates.push(ranked[r]);
            }
        }
        candidates.extend((ra + 1..rb).filter(|r| r % 2 == 0).map(|r| ranked[r]));
        candidates.extend((0..ranked.len()).filter(|r| r % 2 == 0).map(|r| ranked[r]));
        candidates.extend((0..ranked.len()).filter(|r| r % 2 == 1).map(|r| ranked[r]));

        let legs = vec![2; self.tree.children(w).len()];
        for c in candidates {
            let others: Vec<usize> = cell.iter().copied().filter(|&y| y != c).collect();
            let zero = zero_direction(self.points, c, Some(g), &others);
            let Ok(split) = partition_wedges(self.points, c, zero, &others, &legs) else {
                continue;
            };
            let leg_on_edge = split
                .cells
                .iter()
                .any(|pair| Edge::new(pair[0], pair[1]) == self.forbidden);
            if !leg_on_edge {
                return Ok(c);
            }
        }
        Err(self.defect("no point of the cell re-anchors the spider"))
    }
}
