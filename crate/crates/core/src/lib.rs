pub mod constructions;
pub mod error;
pub mod family;
pub mod gf;
pub mod goodness;
pub mod lrc;
pub mod numtheory;
pub mod polyring;
pub mod theorems;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{ExtElement, FieldElement, FieldSpec, QuadraticExtension, RootOfUnity};
pub use polyring::{Factorization, Poly};
