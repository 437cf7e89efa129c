//! Finding subdivisions of small digraphs inside large ones.
//!
//! Every finder returns a [`SubdivisionCertificate`] that has already passed
//! [`verify_subdivision`]; brute-force oracles in [`oracle`] supply ground
//! truth for small instances.

pub mod arborescence;
pub mod certificate;
pub mod dichromatic;
pub mod digraph;
pub mod error;
pub mod finders;
pub mod flow;
pub mod generate;
pub mod oracle;
pub mod pattern;
pub mod structure;

pub use certificate::{verify_subdivision, CertificateBuilder, SubdivisionCertificate, Verification};
pub use digraph::{Degrees, Digraph};
pub use error::{Error, Result};
pub use pattern::{PatternKind, PatternSpec};
