//! Constructive planar embeddings of trees into point sets.

mod convex;
mod embedding;
mod layout;
mod single;

pub use convex::{embed_convex_avoiding_two, embed_few_hull_edges, rotate_embedding};
pub use embedding::{validate_embedding, Embedding, EmbeddingRecord};
pub use layout::{
    embed_recursive, embed_recursive_default, partition_wedges, ChildContext, ChildSelector,
    Leftmost, LowestHullPoint, Rightmost, RootSelector, WedgePartition,
};
pub use single::{embed_avoiding_single, embed_avoiding_single_traced, Repair, SingleEdgeOutcome};
