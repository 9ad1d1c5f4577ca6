//! Finite categories: validation, functors, natural transformations, comma
//! categories, colimits, shape predicates and idempotent completion.

pub mod category;
pub mod colimit;
pub mod comma;
pub mod enumerate;
pub mod functor;
pub mod karoubi;
pub mod nat;
pub mod shape;

pub use category::{examples, Category, Mor, Morphism, Obj, RawCategory};
pub use colimit::{colimit, is_colimit_cocone, Cocone, Colimit};
pub use comma::{comma, Comma};
pub use enumerate::enumerate_categories;
pub use functor::{enumerate_functors, Diagram, Functor};
pub use karoubi::{karoubi_completion, Karoubi};
pub use nat::NaturalTransformation;
pub use shape::{connected_components, has_initial, has_terminal, is_connected, is_filtered};
