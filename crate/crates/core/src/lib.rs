pub mod compat;
pub mod decomp;
pub mod error;
pub mod field;
pub mod functor;
pub mod matrix;
pub mod modl;
pub mod phin;
pub mod poly;
pub mod random;
pub mod roots;
pub mod wd;

pub use error::{Error, Result};
pub use field::{Elem, Field, FieldKind, Rational};
pub use matrix::{Matrix, Subspace};
pub use poly::Poly;
