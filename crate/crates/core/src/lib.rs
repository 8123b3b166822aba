//! Analysis of alternating link diagrams drawn on closed surfaces inside
//! 3-manifolds: structural validation, representativity, the angled chunk
//! decomposition, twist and checkerboard invariants, and hypothesis-gated
//! certificates for hyperbolicity, volume and Dehn filling.

pub mod ambient;
pub mod certificate;
pub mod chunks;
pub mod dehn;
pub mod diagram;
pub mod fixtures;
pub mod invariants;
pub mod io;
pub mod validation;

pub use ambient::{AmbientContext, AmbientKind, RepReport, RepValue};
pub use diagram::{DiagramError, SurfaceDiagram};
pub use io::sld::{parse_diagram, parse_document, Document};
