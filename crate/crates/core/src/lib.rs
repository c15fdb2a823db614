//! Exact computation of Eisenstein parts of modular forms from their constant
//! terms at the cusps of Γ0(N).

pub mod characters;
pub mod cusps;
pub mod cyclotomic;
pub mod error;
pub mod etacusp;
pub mod numtheory;
pub mod projection;
pub mod qseries;
pub mod theta;

pub use characters::DirichletCharacter;
pub use cyclotomic::{CycNumber, Rational};
pub use error::{Error, Result};
