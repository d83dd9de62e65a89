//! Fracterm calculus of partial meadows: syntax, three-valued semantics over
//! concrete partial meadows, fracterm flattening and the translation into
//! classical logic over ⊥-enlarged structures.

pub mod syntax;
pub mod structures;
pub mod trivalent;
pub mod flatten;
pub mod random;
pub mod semantics;
pub mod botworld;
