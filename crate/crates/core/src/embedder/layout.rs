//! The recursive wedge embedding.
//!
//! A vertex `v` sitting on point `r` with parent point `g` splits the rest of
//! its cell by angle around `r`, starting just after the ray from `r` towards
//! `g`. Consecutive runs of that order become the cells of `v`'s children,
//! and every run must span a convex wedge at `r`. The ray towards `g` then
//! lies in the gap between the last and the first wedge, so the parent edge
//! cannot cross anything drawn below `v`. When `r` is a hull vertex of the
//! cell visible from `g` this is exactly the textbook algorithm; the repair
//! procedures also place vertices on other points of the cell, which the
//! same rule keeps planar.

use serde::Serialize;

use crate::embedder::embedding::Embedding;
use crate::error::EmbedError;
use crate::geom::{
    monotone_chain, outward_direction, sort_around, visible_hull_vertices, Direction, PointSet,
};
use crate::trees::RootedTree;

/// Chooses the point for the tree root among the hull vertices of the set.
pub trait RootSelector {
    /// `hull` is counter-clockwise from the lowest point.
    fn choose(&self, points: &PointSet, hull: &[usize]) -> usize;
}

/// What a [`ChildSelector`] sees when placing a child.
#[derive(Debug)]
pub struct ChildContext<'a> {
    pub points: &'a PointSet,
    /// Point of the parent.
    pub apex: usize,
    /// The child being placed.
    pub vertex: usize,
    pub subtree_size: usize,
    pub cell: &'a [usize],
    /// Visible hull vertices of the cell, counter-clockwise around the apex.
    pub candidates: &'a [usize],
}

/// Chooses the point for a child among the visible hull vertices of its cell.
pub trait ChildSelector {
    fn choose(&self, ctx: &ChildContext<'_>) -> usize;
}

impl<F: Fn(&ChildContext<'_>) -> usize> ChildSelector for F {
    fn choose(&self, ctx: &ChildContext<'_>) -> usize {
        self(ctx)
    }
}

/// Lowest hull point, ties to the left.
#[derive(Clone, Copy, Debug, Default)]
pub struct LowestHullPoint;

impl RootSelector for LowestHullPoint {
    fn choose(&self, points: &PointSet, hull: &[usize]) -> usize {
        *hull
            .iter()
            .min_by_key(|&&i| (points.point(i).y, points.point(i).x))
            .expect("non-empty hull")
    }
}

/// The angularly last visible vertex in counter-clockwise order around the
/// parent point.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rightmost;

impl ChildSelector for Rightmost {
    fn choose(&self, ctx: &ChildContext<'_>) -> usize {
        *ctx.candidates.last().expect("non-empty cell")
    }
}

/// The angularly first visible vertex.
#[derive(Clone, Copy, Debug, Default)]
pub struct Leftmost;

impl ChildSelector for Leftmost {
    fn choose(&self, ctx: &ChildContext<'_>) -> usize {
        ctx.candidates[0]
    }
}

/// The split of a point set around an apex into consecutive convex wedges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgePartition {
    pub apex: usize,
    /// `cells.len() + 1` rays; the first and last are the zero direction.
    pub boundaries: Vec<Direction>,
    pub cells: Vec<Vec<usize>>,
}

/// Splits `members` into runs of the given sizes in counter-clockwise order
/// around `apex`, starting from `zero`. Fails with the index of the first run
/// whose wedge is not convex.
pub fn partition_wedges(
    points: &PointSet,
    apex: usize,
    zero: Direction,
    members: &[usize],
    sizes: &[usize],
) -> Result<WedgePartition, usize> {
    debug_assert_eq!(sizes.iter().sum::<usize>(), members.len());
    let mut sorted = members.to_vec();
    sort_around(points, apex, zero, &mut sorted);
    let a = points.point(apex);
    let dir = |i: usize| Direction::between(a, points.point(i));
    let mut cells = Vec::with_capacity(sizes.len());
    let mut boundaries = vec![zero];
    let mut start = 0;
    for (c, &size) in sizes.iter().enumerate() {
        let cell = sorted[start..start + size].to_vec();
        if size >= 2 && dir(cell[0]).cross(dir(cell[size - 1])) <= 0 {
            return Err(c);
        }
        start += size;
        if c + 1 < sizes.len() {
            let (x, y) = (dir(cell[size - 1]), dir(sorted[start]));
            boundaries.push(if x.cross(y) > 0 { x + y } else { x.perp() });
        }
        cells.push(cell);
    }
    boundaries.push(zero);
    Ok(WedgePartition { apex, boundaries, cells })
}

/// Everything the repair procedures need to know about one layout.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub assignment: Vec<usize>,
    /// Points available to each vertex's subtree, including its own.
    pub cell: Vec<Vec<usize>>,
    /// Point of each vertex's parent.
    pub apex: Vec<Option<usize>>,
    /// Cell minus the vertex's own point, in the angular order used to split it.
    pub around: Vec<Vec<usize>>,
}

impl Layout {
    pub fn point(&self, v: usize) -> usize {
        self.assignment[v]
    }
}

/// Zero direction for splitting around `r`.
pub(crate) fn zero_direction(points: &PointSet, r: usize, apex: Option<usize>, others: &[usize]) -> Direction {
    match apex {
        Some(g) => Direction::between(points.point(r), points.point(g)),
        None => {
            let mut all = others.to_vec();
            all.push(r);
            if others.len() < 2 || monotone_chain(points, &all).contains(&r) {
                outward_direction(points, r, others)
            } else {
                // interior root: every angular gap is below pi, any start works
                Direction { dx: 1, dy: 0 }
            }
        }
    }
}

pub(crate) struct LayoutEngine<'a> {
    pub tree: &'a RootedTree,
    pub points: &'a PointSet,
    pub root_selector: &'a dyn RootSelector,
    pub child_selector: &'a dyn ChildSelector,
    /// Forced point per vertex; `None` defers to the selectors.
    pub overrides: &'a [Option<usize>],
}

impl LayoutEngine<'_> {
    pub fn run(&self, cell: Vec<usize>) -> Result<Layout, EmbedError> {
        let k = self.tree.len();
        let mut out = Layout {
            assignment: vec![usize::MAX; k],
            cell: vec![Vec::new(); k],
            apex: vec![None; k],
            around: vec![Vec::new(); k],
        };
        self.place(self.tree.root(), cell, None, &mut out)?;
        Ok(out)
    }

    fn place(&self, v: usize, cell: Vec<usize>, apex: Option<usize>, out: &mut Layout) -> Result<(), EmbedError> {
        let r = match (self.overrides[v], apex) {
            (Some(r), _) => {
                if !cell.contains(&r) {
                    return Err(EmbedError::PointOutsideCell { vertex: v, point: r });
                }
                r
            }
            (None, None) => {
                let hull = monotone_chain(self.points, &cell);
                self.root_selector.choose(self.points, &hull)
            }
            (None, Some(g)) => {
                let candidates = visible_hull_vertices(self.points, g, &cell);
                let ctx = ChildContext {
                    points: self.points,
                    apex: g,
                    vertex: v,
                    subtree_size: self.tree.subtree_size(v),
                    cell: &cell,
                    candidates: &candidates,
                };
                let r = self.child_selector.choose(&ctx);
                if !candidates.contains(&r) {
                    return Err(EmbedError::PointOutsideCell { vertex: v, point: r });
                }
                r
            }
        };
        let others: Vec<usize> = cell.iter().copied().filter(|&i| i != r).collect();
        let zero = zero_direction(self.points, r, apex, &others);
        let children = self.tree.children(v);
        let sizes: Vec<usize> = children.iter().map(|&c| self.tree.subtree_size(c)).collect();
        let partition = partition_wedges(self.points, r, zero, &others, &sizes)
            .map_err(|c| EmbedError::NonConvexWedge { vertex: v, child: children[c] })?;
        out.assignment[v] = r;
        out.apex[v] = apex;
        out.cell[v] = cell;
        out.around[v] = partition.cells.concat();
        for (&c, sub) in children.iter().zip(partition.cells) {
            self.place(c, sub, Some(r), out)?;
        }
        Ok(())
    }
}

/// Embeds a rooted tree on exactly as many points: the root goes on a hull
/// point chosen by `root_choice`, and every child goes on a visible hull
/// vertex of its wedge chosen by `child_point_choice`.
pub fn embed_recursive(
    rt: &RootedTree,
    s: &PointSet,
    root_choice: &dyn RootSelector,
    child_point_choice: &dyn ChildSelector,
) -> Result<Embedding, EmbedError> {
    if rt.len() != s.len() {
        return Err(EmbedError::SizeMismatch { tree: rt.len(), points: s.len() });
    }
    let overrides = vec![None; rt.len()];
    let layout = LayoutEngine {
        tree: rt,
        points: s,
        root_selector: root_choice,
        child_selector: child_point_choice,
        overrides: &overrides,
    }
    .run((0..s.len()).collect())?;
    Embedding::new(rt.clone(), s.clone(), layout.assignment)
}

/// [`embed_recursive`] with the default strategies.
pub fn embed_recursive_default(rt: &RootedTree, s: &PointSet) -> Result<Embedding, EmbedError> {
    embed_recursive(rt, s, &LowestHullPoint, &Rightmost)
}
