//! Bivariate symmetric orthonormal wavelet filters on 6x6 and 8x8 supports.
//!
//! Closed-form filter families with their algebraic checks, plus the
//! transfer-matrix test, the cascade algorithm and image filter banks built
//! on top of them.

pub mod angle;
pub mod cascade;
pub mod dwt;
pub mod error;
pub mod exec;
pub mod lawton;
pub mod masks;
pub mod moments8;
pub mod shell;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
