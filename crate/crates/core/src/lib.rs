pub mod curvebuild;
pub mod error;
pub mod exactalg;
pub mod lattice;
pub mod pencil;
pub mod zerocycle;

pub use error::{Error, Result};
