//! Pure Sullivan algebras attached to graph colouring instances, and exact
//! computation of their rational invariants.

pub mod algebra;
pub mod coloring;
pub mod config;
pub mod cyclotomic;
pub mod document;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod linalg;
pub mod model;
pub mod reduction;
pub mod verify;

pub use config::Caps;
pub use error::{Error, Result};
