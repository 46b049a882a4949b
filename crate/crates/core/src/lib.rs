//! Homological invariants of finitely generated graded modules over
//! quotients of polynomial rings by homogeneous ideals, over prime fields.

pub mod error;
pub mod exactlin;
pub mod fgmod;
pub mod fuzz;
pub mod groebner;
pub mod gtheory;
pub mod invariants;
pub mod oracle;
pub mod polyring;
pub mod quotient;
pub mod resolve;

pub use error::{Error, Result};
