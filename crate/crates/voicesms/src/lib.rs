//! Lossless transport of PCM audio (or any byte stream) over SMS-sized text
//! messages.
//!
//! The encoder maps file bytes onto a 256-character transport alphabet that
//! avoids the reserved control range, optionally Huffman-compresses them,
//! wraps the result in a self-describing envelope, and cuts the envelope
//! into indexed segments of at most 160 characters. The decoder reorders
//! received segments by index, rebuilds the envelope, and reverses every
//! step back to the original bytes, bit for bit. A seeded channel simulator
//! perturbs segment streams (reorder, duplicate, drop) to exercise the
//! receiver, and a stats reporter compares character and segment counts
//! with and without compression.
//!
//! # Quick start
//!
//! ```
//! use voicesms::{decode, encode, Mode};
//!
//! let original = b"PCM bytes, or anything else".to_vec();
//! let segments = encode(&original, Mode::Compressed).unwrap();
//! for segment in &segments {
//!     assert!(segment.rendered().chars().count() <= 160);
//! }
//! assert_eq!(decode(&segments).unwrap(), original);
//! ```
//!
//! The `examples/` directory has one runnable program per capability
//! (`cargo run --example roundtrip_wav`, etc.); the `voicesms` binary
//! exposes the same pipeline as `encode`, `decode`, `channel`, and `stats`
//! subcommands.

#![forbid(unsafe_code)]

pub mod bits;
pub mod channel;
pub mod framing;
pub mod huffman;
pub mod ingest;
pub mod rng;
pub mod speech;
pub mod stats;
pub mod symbols;

pub use channel::{apply_channel, ChannelError, ChannelScript};
pub use framing::{FramingError, MessageEnvelope, Mode, SmsSegment};
pub use huffman::{FrequencyTable, HuffmanCodebook, HuffmanError};
pub use ingest::{IngestError, PcmClip};
pub use stats::StatsRecord;
pub use symbols::InvalidSymbol;

/// Encode bytes into ready-to-send segments.
pub fn encode(bytes: &[u8], mode: Mode) -> Result<Vec<SmsSegment>, FramingError> {
    let envelope = framing::build_envelope(bytes, mode)?;
    Ok(framing::segment_message(&envelope))
}

/// Decode received segments (any order, duplicates tolerated) back into the
/// original bytes.
pub fn decode(segments: &[SmsSegment]) -> Result<Vec<u8>, FramingError> {
    framing::decode_segments(segments)
}
