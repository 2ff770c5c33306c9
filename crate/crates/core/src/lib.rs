//! Exact linear algebra for linear spaces of bounded-rank symmetric and
//! alternating matrices over GF(2), GF(3), GF(4), GF(5) and GF(7).
//!
//! The crate builds the compression models `WS_{n,s,t}` / `WA_{n,s,t}`,
//! analyses spaces through their hyperplane sections `S_H`, and recognizes
//! when a space is congruent to a subspace of a model, emitting an
//! independently checkable congruence certificate.

pub mod enumerate;
pub mod error;
pub mod field;
pub mod linalg;
pub mod matrix;
pub mod models;
pub mod parallel;
pub mod recognize;
pub mod space;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use matrix::{FormKind, Mat};
pub use models::{CompressionModel, ModelKind};
pub use space::{Hyperplane, MatSpace, SpaceKind};
