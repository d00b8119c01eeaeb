pub mod algebra;
pub mod calculus;
pub mod error;
pub mod gns;
pub mod io;
pub mod linalg;
pub mod random;
pub mod report;
pub mod states;
pub mod suite;
pub mod tolerance;
pub mod weyl;

pub use algebra::AlgebraElement;
pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};
pub use tolerance::ToleranceContext;
