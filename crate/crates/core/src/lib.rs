//! Exact computational toolkit for size Ramsey numbers of matchings versus
//! paths, cycles, and path unions.
//!
//! The crate decides the arrowing relation `F -> (tK2, H)` by a complete
//! coloring search and by star-cover characterizations, enumerates small
//! graphs isomorph-free to certify lower bounds, builds the explicit
//! arrowing constructions for path-union and cycle targets, and audits every
//! finite claim with machine-checkable coloring certificates.

#![forbid(unsafe_code)]

pub mod graph;
pub mod graph6;
pub mod canon;
pub mod patterns;
pub mod reference;
pub mod arrowing;
pub mod enumeration;
pub mod constructions;
pub mod ramsey;
pub mod verify;

pub use arrowing::{arrows, verify_coloring, ArrowVerdict, Coloring, MethodChoice};
pub use canon::{canonical_form, canonical_labeling, CanonicalCode};
pub use graph::{Girth, Graph, GraphError, VertexSet, MAX_VERTICES};
pub use graph6::{decode_graph6, encode_graph6, Graph6Error};
pub use patterns::{contains, max_matching_size, Pattern, PatternError};
pub use ramsey::{closed_form_bounds, conjecture_probe, size_ramsey_exact, SearchReport};
