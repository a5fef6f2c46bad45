//! Shift spaces over general monoid lattices, at desk scale.
//!
//! The workbench builds shift spaces from forbidden patterns over a small
//! family of index monoids, applies uniform and generalized block codes,
//! recodes through cylinder partitions, presents one-dimensional shifts by
//! labeled graphs, and collects bounded-budget classification evidence.
//! Everything is finite and explicit: parameterized families are expanded
//! at a recorded bound, language answers are labeled exact or locally
//! admissible, and verdicts carry replayable witnesses.

pub mod alphabet;
pub mod block_code;
pub mod classifier;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod higher_block;
pub mod language;
pub mod monoid;
pub mod pattern;
pub mod shift;
pub mod textio;

pub use alphabet::{Alphabet, SymId, Symbol};
pub use error::{Error, Result};
pub use monoid::{Element, IndexSet, MonoidKind, MonoidSpec};
pub use pattern::{ForbiddenSet, Pattern};
pub use shift::{ShiftSpec, Verdict, WindowConfig};
