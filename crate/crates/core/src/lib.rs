//! Block-adaptive prefix coding.
//!
//! A stream of `n` symbols over an alphabet of size `sigma` is cut into blocks
//! of `b = sigma * ceil(lg n)` symbols. The first block is written with a
//! fixed-width code; every later block uses a code built from a smoothed
//! estimate of the symbol frequencies seen so far. Two code families are
//! supported:
//!
//! * [`CodingMode::Shannon`]: canonical Shannon codes, at most `H + 1` bits
//!   per symbol plus a lower-order term.
//! * [`CodingMode::Alphabetic`]: Gilbert-Moore codes, at most `H + 2` bits
//!   per symbol, and the payloads of equal-length inputs sort in the same
//!   order as the inputs.
//!
//! Decoding goes through a dense lookup table rebuilt once per block.

pub mod adaptive;
pub mod bitio;
pub mod cli;
pub mod codebuilder;
pub mod container;
pub mod decodetable;
pub mod error;
pub mod model;
pub mod oracle;

pub use adaptive::{decode_stream, encode_stream, CodingMode, Decoder, Encoder};
pub use bitio::{BitSink, BitSource};
pub use codebuilder::{CodeKind, Codeword, PrefixCode};
pub use container::{read_container, write_container, StreamHeader};
pub use decodetable::DecodeTable;
pub use error::{CodecError, Result};
pub use model::{AlphabetParams, FrequencyTable, SmoothedDistribution};
