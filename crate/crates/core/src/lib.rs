//! Systolic complexes, their squarings into quadric complexes, and the weight
//! functions witnessing Property A on flat intervals.

pub mod cli;
pub mod complex;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod propa;
pub mod quadric;
pub mod report;
pub mod squaring;
pub mod systolic;

pub use complex::{Based, CellComplex, SimplicialComplex2, SquareComplex};
pub use error::{Error, Result};
pub use graph::{Dist, Graph};
pub use report::{Certificate, CheckConfig, CheckReport};
