//! Injective rank-metric trapdoor functions with homogeneous errors.
//!
//! The crate is layered bottom-up: [`fq`] and [`field`] provide F_q and
//! F_{q^m}, [`linalg`] dense matrices over both, [`subspace`] the F_q-support
//! calculus, [`decoder`] the two-step support/coefficient decoder,
//! [`trapdoor`] key generation, evaluation and inversion, and [`analysis`]
//! closed-form bounds, size tables and Monte Carlo estimation.
//!
//! Nothing here runs in constant time.

pub mod analysis;
pub mod codec;
pub mod decoder;
pub mod error;
pub mod field;
pub mod fq;
mod gf2m;
pub mod linalg;
mod poly;
pub mod subspace;
pub mod trapdoor;

pub use error::{Error, Result};
pub use field::{FieldCtx, Fqm};
pub use fq::{BaseField, FqVec};
pub use decoder::{decode, CheckMatrix, DecodeFailure, Decoded, Step};
pub use linalg::{MatFq, MatFqm, Rref, SpanBuilder};
pub use subspace::{Subspace, SupportBasis};
pub use trapdoor::{eval, gen, invert, sample_input, Ciphertext, ParamSet, PublicKey, TrapdoorKey};
