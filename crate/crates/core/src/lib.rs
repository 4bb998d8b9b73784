pub mod delsarte;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod limits;
pub mod rates;
pub mod simplex;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::Graph;
pub use limits::Limits;
