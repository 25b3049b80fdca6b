//! Factor and gap structure of the cutting sequences `F_{d,∞}` with slope
//! `[0; d, d, d, ...]` for `d >= 2`.
//!
//! The crate builds the kernel words `K_{d,m,i}` and envelope words
//! `E_{d,m,i}`, decomposes arbitrary factors around their kernel, computes the
//! two distinct gaps of every factor together with the `A`/`B` gap-label
//! sequence, gives closed-form occurrence positions, classifies factors by
//! gap signs, and enumerates palindromic factors. The [`oracle`] module holds
//! brute-force scanners and a geometric line-crossing generator used to
//! cross-check all of the above.
//!
//! Positions are 1-based throughout.

pub mod classify;
pub mod cli;
mod error;
pub mod gaps;
pub mod kernel;
pub mod oracle;
pub mod positions;
pub mod word;

pub use classify::{RelationKind, RelationSet, TypeTag};
pub use error::{Error, Result};
pub use gaps::{GapProfile, SeqKind, Sign, SignedWord};
pub use kernel::{KernelIndex, StarCoords};
pub use word::{Letter, SeqParams, Word, DEFAULT_WORD_CAP};
