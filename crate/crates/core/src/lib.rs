//! The fat simplex category: objects are epimorphisms `[m] ↠ [n]` of finite ordinals,
//! morphisms are commuting squares with a monomorphism on top.

pub mod audit;
pub mod error;
pub mod faces;
pub mod factorize;
pub mod fatcat;
pub mod literal;
pub mod oracle;
pub mod relations;
pub mod render;
pub mod rewrite;
pub mod simplex;

pub use error::{Error, Result};
pub use faces::Letter;
pub use factorize::NormalForm;
pub use fatcat::{FatMorphism, FatObject};
pub use relations::RuleId;
pub use rewrite::{Normalizer, Word};
pub use simplex::MonotoneMap;
