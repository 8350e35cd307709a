//! Multi-strand reconstruction codes: encoders and decoders that map
//! information strings into unordered multisets of k length-n strands
//! uniquely recoverable from the multiset of all their length-(ell+1)
//! substrings, plus exact and asymptotic analysis tooling for channel
//! sizes, rate bounds, and redundancy.

pub mod analysis;
pub mod cli;
pub mod constructions;
pub mod core;
pub mod error;
pub mod formats;
pub mod repeat_free;
pub mod rll;
pub mod spectrum;

pub use crate::core::{
    ceil_log, index_expansion, multiset_equal, CodeParams, Construction, RfVariant, Strand,
    StrandMultiset,
};
pub use crate::error::{Error, Result};
pub use crate::spectrum::{is_repeat_free, profile, stitch, unique_count, Profile};
