pub mod cli;
pub mod completer;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod ktree;
pub mod plane;
pub mod render;
pub mod tw3;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexSet};
pub use plane::{Face, FaceId, PlaneGraph};
