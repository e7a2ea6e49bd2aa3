//! Exact lower bounds on binary code length from the sphere-packing argument
//! and from Spencer's analysis of Ulam's liar game, together with a game
//! engine and exhaustive oracles that check the bounds at small sizes.

pub mod bounds;
pub mod combinatorics;
pub mod error;
pub mod game;
pub mod oracle;

pub use error::{Error, Result};
