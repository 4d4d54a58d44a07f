//! Planar embeddings of trees into complete geometric graphs with forbidden
//! edges: exact geometry, tree utilities, constructive embedders, forbidding
//! constructions and an exhaustive search oracle.

pub mod embedder;
pub mod error;
pub mod forbid;
pub mod generate;
pub mod geom;
pub mod oracle;
pub mod trees;

pub use error::{EmbedError, ForbidError, GeomError, OracleError, TreeError};
pub use geom::{Edge, EdgeSet, Point, PointSet};
pub use trees::{RootedTree, Tree};
