//! Combinatorial workbench for open covers of finite simplicial complexes:
//! nerves, edge-path groups, Spanier subgroups, discrete-homotopy checks,
//! and towers of covers.

pub mod complex;
pub mod corpus;
pub mod cover;
pub mod error;
pub mod group;
pub mod spanier;
pub mod tower;
pub mod uhomotopy;

pub use error::{Error, Result};
