//! Exact construction and verification of weak multiplier Hopf algebras over
//! the Gaussian rationals.

pub mod algebra;
pub mod antipode;
pub mod coproduct;
pub mod error;
pub mod families;
pub mod finvec;
pub mod groupoid;
pub mod linalg;
pub mod linop;
pub mod mutation;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod structure;
pub mod wmha;

pub use error::{Error, Result};
pub use finvec::{FinVec, Idx, Vec1, Vec2, Vec3};
pub use scalar::Scalar;
