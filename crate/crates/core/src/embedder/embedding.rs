use serde::{Deserialize, Serialize};

use crate::error::EmbedError;
use crate::geom::{edge_depth, segments_cross_unchecked, Edge, EdgeSet, PointSet};
use crate::trees::{RootedTree, Tree};

/// A crossing-free straight-line drawing of a tree on a point set.
///
/// Constructed only through [`Embedding::new`], which runs the full
/// validator, so every value of this type is injective and planar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    assignment: Vec<usize>,
    tree: RootedTree,
    points: PointSet,
}

impl Embedding {
    pub fn new(tree: RootedTree, points: PointSet, assignment: Vec<usize>) -> Result<Self, EmbedError> {
        validate_embedding(tree.tree(), &points, &assignment)?;
        Ok(Embedding { assignment, tree, points })
    }

    /// Point index of each tree vertex.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn point_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// The segment each tree edge is drawn on, in tree edge order.
    pub fn image_edges(&self) -> Vec<Edge> {
        image_edges(self.tree.tree(), &self.assignment)
    }

    pub fn uses_edge(&self, e: Edge) -> bool {
        self.image_edges().contains(&e)
    }

    pub fn avoids(&self, forbidden: &EdgeSet) -> bool {
        self.image_edges().iter().all(|e| !forbidden.contains(e))
    }

    /// Always zero for a constructed value; recomputed for reporting.
    pub fn crossings(&self) -> usize {
        count_crossings(&self.points, &self.image_edges())
    }

    /// Number of tree edges drawn on depth-0 (hull) edges of the point set.
    pub fn hull_edges_used(&self) -> usize {
        self.image_edges()
            .into_iter()
            .filter(|&e| edge_depth(&self.points, e).map(|d| d == 0).unwrap_or(false))
            .count()
    }

    pub fn record(&self, forbidden: Option<&EdgeSet>) -> EmbeddingRecord {
        EmbeddingRecord {
            assignment: self.assignment.clone(),
            crossings: self.crossings(),
            hull_edges_used: self.hull_edges_used(),
            forbidden_avoided: forbidden.is_none_or(|f| self.avoids(f)),
        }
    }
}

/// Wire form of an embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    pub assignment: Vec<usize>,
    pub crossings: usize,
    pub hull_edges_used: usize,
    pub forbidden_avoided: bool,
}

pub(crate) fn image_edges(tree: &Tree, assignment: &[usize]) -> Vec<Edge> {
    tree.edges()
        .into_iter()
        .map(|(u, v)| Edge::new(assignment[u], assignment[v]))
        .collect()
}

pub(crate) fn count_crossings(points: &PointSet, edges: &[Edge]) -> usize {
    let mut count = 0;
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if segments_cross_unchecked(points, e, f) {
                count += 1;
            }
        }
    }
    count
}

/// Checks that `assignment` maps the vertices of `tree` injectively into
/// `points` and that the induced drawing has no crossings.
pub fn validate_embedding(tree: &Tree, points: &PointSet, assignment: &[usize]) -> Result<(), EmbedError> {
    if assignment.len() != tree.len() {
        return Err(EmbedError::Invalid(format!(
            "assignment covers {} vertices, tree has {}",
            assignment.len(),
            tree.len()
        )));
    }
    let mut used = vec![false; points.len()];
    for (v, &p) in assignment.iter().enumerate() {
        if p >= points.len() {
            return Err(EmbedError::Invalid(format!("vertex {v} mapped to missing point {p}")));
        }
        if std::mem::replace(&mut used[p], true) {
            return Err(EmbedError::Invalid(format!("point {p} used twice")));
        }
    }
    let edges = image_edges(tree, assignment);
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if segments_cross_unchecked(points, e, f) {
                return Err(EmbedError::Invalid(format!("segments {e} and {f} cross")));
            }
        }
    }
    Ok(())
}
