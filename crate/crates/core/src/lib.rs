//! Combinatorial designs from linear codes over finite fields.

pub mod code;
pub mod combinatorics;
pub mod criteria;
pub mod design;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod io;
pub mod profile;
pub mod regularity;
pub mod weights;
pub mod zoo;

pub use code::{LinearCode, RankMode};
pub use enumerate::Budget;
pub use error::{Error, Result};
pub use field::{Elem, FieldSpec, QuadraticExtension};
