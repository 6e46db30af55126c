//! Counting edge-subgraph patterns defined by graph properties: exact,
//! colourful, approximate and decision algorithms, the coefficient
//! machinery behind their complexity classification, and the parameterized
//! Tutte polynomial.

pub mod coefficient;
pub mod coloured;
pub mod error;
pub mod fracture;
pub mod graph;
pub mod hom;
pub mod par;
pub mod pattern;
pub mod property;
pub mod random;
mod subsets;
pub mod tutte;
pub mod verdict;
pub mod verify;

pub use coefficient::{CoefficientTable, MinorClosedVerdicts, TorusResidue};
pub use coloured::HColouredGraph;
pub use error::{Error, Result};
pub use fracture::{Fracture, FracturedGraph};
pub use graph::{Graph, GraphFamily, MultiGraph};
pub use hom::MonotonicityMatrix;
pub use par::Execution;
pub use pattern::{CountMode, CountOptions, CountQuery, EstimateResult};
pub use property::{PropertyMetadata, PropertyRegistry, PropertySpec};
pub use verdict::{Facet, Tag, Verdict};
