//! ν-Schröder paths, trees and covering forests, and the face poset they index.
//!
//! Everything here is exact and finite: enumeration by pruned depth-first
//! search, counting with arbitrary-precision integers, and posets held as
//! explicit element lists with cover relations.

pub mod bijection;
pub mod enumerate;
pub mod error;
pub mod forest;
pub mod morse;
pub mod path;
pub mod poset;
pub mod schema;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use path::{
    height_profile, parse_word, rational_base, weakly_above, BasePath, GridPoint, HeightProfile,
    Step, StepWord,
};
