//! Exact root data, characters, torsion classes and endoscopic sign checks.

pub mod branching;
pub mod cartan;
pub mod cli;
pub mod descriptor;
pub mod endoscopy;
pub mod error;
pub mod linalg;
pub mod models;
pub mod report;
pub mod repchar;
pub mod rootdata;
pub mod torsion;

pub use descriptor::build_datum;
pub use error::{Error, Result};
pub use repchar::FormalCharacter;
pub use rootdata::RootDatum;
pub use torsion::TorsionPoint;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
