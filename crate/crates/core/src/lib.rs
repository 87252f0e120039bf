//! Finite tournaments: encoding, canonical forms, interval decomposition,
//! hypomorphy checks, diamonds and the families built from them.

pub mod canon;
pub mod decomposition;
pub mod diamonds;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod hypomorphy;
pub mod set;
pub mod shape;
pub mod tournament;

pub use canon::{are_isomorphic, canonical_form, is_self_dual, CanonicalCode};
pub use decomposition::Partition;
pub use error::{Error, Result};
pub use set::VertexSet;
pub use shape::ShapeTag;
pub use tournament::Tournament;
