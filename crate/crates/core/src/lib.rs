//! Differential modules over gentle algebras.

pub mod decompose;
pub mod diffmod;
pub mod field;
pub mod folding;
pub mod linalg;
pub mod objects;
pub mod par;
pub mod pathmap;
pub mod quiver;
pub mod sigma;
pub mod strings;
pub mod surface;
pub mod verify;
