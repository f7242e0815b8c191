//! Algebras, modules and the bounded object universe.

pub mod algebra;
pub mod decompose;
pub mod module;
pub mod presets;
pub mod specfile;
pub mod universe;

pub use algebra::{Algebra, AlgebraSpec};
pub use module::Module;
pub use presets::{preset, PresetData, PresetRegistry};
pub use universe::{MultVec, ObjId, Universe, DEFAULT_CAP};
