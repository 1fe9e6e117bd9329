//! Exact computations in free products `G₁ ∗ G₂` of two groups.
//!
//! * [`factor`]: the factor groups (finite tables, `ℤₙ`, `ℤ`, free groups);
//! * [`product`]: normal forms, multiplication, cyclic reduction, conjugacy;
//! * [`growth`]: ball enumeration, element and conjugacy-class growth, the
//!   exponential family of non-conjugate words;
//! * [`group_ring`]: Laurent polynomials over `ℤ` and `ℤ_N`;
//! * [`geodesic`]: closed-geodesic lower bounds and growth classification;
//! * [`schema`]: JSON group-spec and descriptor files.

pub mod error;
pub mod factor;
pub mod geodesic;
pub mod group_ring;
pub mod growth;
pub mod product;
pub mod schema;
pub mod word;

pub use error::{FactorError, ProductError, WordError};
pub use factor::{FactorElement, FactorGroup, FactorKind};
pub use product::{ConjugacyClassKey, Conjugation, FreeProduct, Letter, NormalForm, Side};
