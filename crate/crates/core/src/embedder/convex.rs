//! Embeddings into point sets in convex position.

use crate::embedder::embedding::Embedding;
use crate::embedder::layout::{ChildContext, LayoutEngine, LowestHullPoint};
use crate::error::{EmbedError, GeomError};
use crate::geom::{convex_hull, Edge, PointSet};
use crate::trees::{root_at, sort_children_by_subtree_size, RootedTree, Tree};

/// Hull order of a convex point set and the inverse map.
struct HullOrder {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl HullOrder {
    fn of(s: &PointSet) -> Result<Self, EmbedError> {
        let order = convex_hull(s)?;
        if order.len() != s.len() {
            return Err(GeomError::NotConvex.into());
        }
        let mut position = vec![0; s.len()];
        for (i, &p) in order.iter().enumerate() {
            position[p] = i;
        }
        Ok(HullOrder { order, position })
    }

    fn is_hull_edge(&self, a: usize, b: usize) -> bool {
        let n = self.order.len();
        let d = (self.position[a] + n - self.position[b]) % n;
        d == 1 || d == n - 1
    }
}

fn check_sizes(t: &Tree, s: &PointSet) -> Result<(), EmbedError> {
    if t.len() != s.len() {
        return Err(EmbedError::SizeMismatch { tree: t.len(), points: s.len() });
    }
    if s.len() < 3 {
        return Err(EmbedError::TooSmall { needed: 3, got: s.len() });
    }
    Ok(())
}

/// Embeds `t` on a convex point set using fewer than `n / 2` hull edges.
pub fn embed_few_hull_edges(t: &Tree, s: &PointSet) -> Result<Embedding, EmbedError> {
    check_sizes(t, s)?;
    let hull = HullOrder::of(s)?;
    let n = s.len();

    let embedding = if t.is_star() {
        let rt = root_at(t, t.max_degree_vertex())?;
        layout_with(&rt, s, &hull)?
    } else if t.is_path() {
        zigzag_path(t, s, &hull)?
    } else {
        let root = (0..n)
            .find(|&v| t.degree(v) >= 3)
            .expect("a tree that is neither a path nor a star has a branch vertex");
        let mut rt = sort_children_by_subtree_size(&root_at(t, root)?, true);
        let mut order = rt.children(root).to_vec();
        let first_inner = order
            .iter()
            .position(|&c| !rt.is_leaf(c))
            .expect("a non-star has an inner child of the root");
        let c = order.remove(first_inner);
        order.insert(0, c);
        rt.set_children_order(root, order.clone())?;
        let mut emb = layout_with(&rt, s, &hull)?;

        if 2 * emb.hull_edges_used() >= n {
            let last = order[1..]
                .iter()
                .position(|&c| !rt.is_leaf(c))
                .map(|i| i + 1)
                .ok_or_else(|| EmbedError::Defect("root has no second inner child".into()))?;
            let c = order.remove(last);
            order.push(c);
            rt.set_children_order(root, order)?;
            emb = layout_with(&rt, s, &hull)?;
        }
        emb
    };

    if 2 * embedding.hull_edges_used() >= n {
        return Err(EmbedError::Defect(format!(
            "embedding uses {} hull edges on {n} points",
            embedding.hull_edges_used()
        )));
    }
    Ok(embedding)
}

/// Recursive layout where every inner child avoids a hull edge to its parent,
/// so only edges to leaves can end up on the hull.
fn layout_with(rt: &RootedTree, s: &PointSet, hull: &HullOrder) -> Result<Embedding, EmbedError> {
    let select = |ctx: &ChildContext<'_>| -> usize {
        let last = *ctx.candidates.last().expect("non-empty cell");
        if ctx.subtree_size < 2 {
            return last;
        }
        ctx.candidates
            .iter()
            .rev()
            .copied()
            .find(|&c| !hull.is_hull_edge(ctx.apex, c))
            .unwrap_or(last)
    };
    let overrides = vec![None; rt.len()];
    let layout = LayoutEngine {
        tree: rt,
        points: s,
        root_selector: &LowestHullPoint,
        child_selector: &select,
        overrides: &overrides,
    }
    .run((0..s.len()).collect())?;
    Embedding::new(rt.clone(), s.clone(), layout.assignment)
}

/// Alternates between the two ends of the hull: positions 0, 1, n-1, 2, n-2, ...
fn zigzag_path(t: &Tree, s: &PointSet, hull: &HullOrder) -> Result<Embedding, EmbedError> {
    let n = s.len();
    let start = t.leaves().next().expect("a path has an end");
    let rt = root_at(t, start)?;
    let walk = t.bfs_order(start);
    let (mut lo, mut hi) = (1, n - 1);
    let mut assignment = vec![0; n];
    assignment[walk[0]] = hull.order[0];
    for (i, &v) in walk.iter().enumerate().skip(1) {
        let pos = if i % 2 == 1 {
            lo += 1;
            lo - 1
        } else {
            hi -= 1;
            hi + 1
        };
        assignment[v] = hull.order[pos];
    }
    Embedding::new(rt, s.clone(), assignment)
}

/// Moves every vertex `i` places clockwise along the hull.
pub fn rotate_embedding(emb: &Embedding, i: usize) -> Result<Embedding, EmbedError> {
    let s = emb.points();
    let hull = HullOrder::of(s)?;
    let n = s.len();
    let shift = i % n;
    let assignment = emb
        .assignment()
        .iter()
        .map(|&p| hull.order[(hull.position[p] + n - shift) % n])
        .collect();
    Embedding::new(emb.tree().clone(), s.clone(), assignment)
}

/// Embeds `t` on a convex point set avoiding both `f1` and `f2` by rotating a
/// few-hull-edge embedding until neither is used.
pub fn embed_convex_avoiding_two(t: &Tree, s: &PointSet, f1: Edge, f2: Edge) -> Result<Embedding, EmbedError> {
    check_sizes(t, s)?;
    if s.len() < 5 {
        return Err(EmbedError::TooSmall { needed: 5, got: s.len() });
    }
    s.check_edge(f1)?;
    s.check_edge(f2)?;
    let base = embed_few_hull_edges(t, s)?;
    for i in 0..s.len() {
        let rotated = rotate_embedding(&base, i)?;
        if !rotated.uses_edge(f1) && !rotated.uses_edge(f2) {
            return Ok(rotated);
        }
    }
    Err(EmbedError::Defect(format!("every rotation uses {f1} or {f2}")))
}
