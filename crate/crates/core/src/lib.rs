//! Simulation of splay-to-root and fetch-and-discard traversal on binary tree
//! shapes, with exact spine-length accounting and certified decimal digits of
//! the maximal-tree traversal constant α.
//!
//! The crate is organised bottom-up:
//!
//! * [`tree`] and [`text`]: handle-addressed tree shapes and their text form.
//! * [`traversal`]: step-exact reference simulations (the oracle).
//! * [`lazy`]: root persistence of `M_h^[2]` for large `h` using lazily
//!   expanded maximal subtrees.
//! * [`dyadic`] and [`alpha`]: exact dyadic arithmetic, the spine-length
//!   recurrences and digit certification.
//! * [`analysis`] and [`suite`]: property checkers, the β lower-bound witness
//!   and the randomized check suites driven by the CLI.

pub mod alpha;
pub mod analysis;
pub mod dyadic;
mod error;
pub mod lazy;
pub mod suite;
pub mod text;
pub mod traversal;
pub mod tree;

pub use error::{Error, Result};
pub use tree::{Height, NodeId, SpineView, Tree};
