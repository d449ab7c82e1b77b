//! Message envelope and SMS segmentation.
//!
//! An encoded message is one envelope: a fixed-width self-describing header
//! followed by body symbols. The envelope text is cut into segments of at
//! most 157 characters, each prefixed with a 3-digit decimal index, so every
//! rendered segment fits the 160-character SMS limit and the receiver can
//! reorder by index alone.
//!
//! Envelope layout (character positions):
//!
//! ```text
//! [0..1]    magic "VS"
//! [2]       version '1'
//! [3]       mode: '0' uncompressed, '1' compressed
//! [4..6]    segment total minus one, 3 digits
//! [7..14]   original byte count, 8 digits
//! [15]      pad bits in the final packed byte, 1 digit (0 if uncompressed)
//! [16..527] codebook: 512 digits, compressed mode only
//! rest      body symbols
//! ```
//!
//! Every header character is a digit or an ASCII letter and every body
//! character is in the transport alphabet, so the whole rendered segment
//! stays clear of the reserved control range. Segments files hold one
//! rendered segment per LF-terminated line, UTF-8 encoded; the alphabet
//! excludes the control range, so no payload character can collide with the
//! line terminator.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::huffman::{
    decode_bits, encode_bits, FrequencyTable, HuffmanCodebook, HuffmanError, PackedBitstream,
};
use crate::symbols::{bytes_to_symbols, in_alphabet, symbols_to_bytes, InvalidSymbol};

pub const MAGIC: &str = "VS";
pub const VERSION: char = '1';
/// Characters in the fixed header.
pub const HEADER_CHARS: usize = 16;
/// Characters in the serialized codebook field.
pub const CODEBOOK_CHARS: usize = 512;
/// Payload characters per segment (160 minus the 3-digit index).
pub const PAYLOAD_CHARS: usize = 157;
/// Rendered segment character limit.
pub const SEGMENT_CHARS: usize = 160;
/// The 3-digit index addresses at most this many segments.
pub const MAX_SEGMENTS: usize = 1000;
/// Largest envelope the segment index space can carry.
pub const MAX_ENVELOPE_CHARS: usize = MAX_SEGMENTS * PAYLOAD_CHARS;

#[derive(Debug, thiserror::Error)]
pub enum FramingError {
    #[error("empty input")]
    EmptyInput,
    #[error(
        "message needs {chars} characters; the 3-digit index caps a message at \
         {MAX_SEGMENTS} segments ({MAX_ENVELOPE_CHARS} characters)"
    )]
    MessageTooLarge { chars: usize },
    #[error("bad magic {found:?}, expected {MAGIC:?}")]
    BadMagic { found: String },
    #[error("unsupported version {found:?}")]
    UnsupportedVersion { found: char },
    #[error("malformed {field} field: {reason}")]
    MalformedHeaderField { field: &'static str, reason: String },
    #[error("malformed segment: {reason}")]
    MalformedSegment { reason: String },
    #[error("missing segments: {indices:?}")]
    MissingSegments { indices: Vec<u16> },
    #[error("conflicting duplicate for segment {index}: same index, different payload")]
    ConflictingDuplicate { index: u16 },
    #[error(
        "segment count mismatch: header says {header_total}, highest index is {highest_index}"
    )]
    CountMismatch {
        header_total: usize,
        highest_index: usize,
    },
    #[error(transparent)]
    Symbol(#[from] InvalidSymbol),
    #[error(transparent)]
    Huffman(#[from] HuffmanError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Uncompressed,
    Compressed,
}

impl Mode {
    fn flag_char(self) -> char {
        match self {
            Mode::Uncompressed => '0',
            Mode::Compressed => '1',
        }
    }

    fn from_flag(c: char) -> Option<Self> {
        match c {
            '0' => Some(Mode::Uncompressed),
            '1' => Some(Mode::Compressed),
            _ => None,
        }
    }
}

/// A complete message: header fields plus body symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct MessageEnvelope {
    mode: Mode,
    orig_len: usize,
    pad_bits: u8,
    codebook: Option<HuffmanCodebook>,
    body: String,
    seg_total: usize,
}

impl MessageEnvelope {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn orig_len(&self) -> usize {
        self.orig_len
    }

    pub fn pad_bits(&self) -> u8 {
        self.pad_bits
    }

    pub fn codebook(&self) -> Option<&HuffmanCodebook> {
        self.codebook.as_ref()
    }

    pub fn body(&self) -> &str {
        &self.body
    }

    pub fn seg_total(&self) -> usize {
        self.seg_total
    }

    /// Total envelope character count (the header's fixed widths make this
    /// independent of the field values).
    pub fn char_count(&self) -> usize {
        HEADER_CHARS
            + if self.codebook.is_some() {
                CODEBOOK_CHARS
            } else {
                0
            }
            + self.body.chars().count()
    }

    /// Render the envelope text.
    pub fn render(&self) -> String {
        let mut text = String::with_capacity(self.char_count() + 8);
        text.push_str(MAGIC);
        text.push(VERSION);
        text.push(self.mode.flag_char());
        write!(text, "{:03}", self.seg_total - 1).unwrap();
        write!(text, "{:08}", self.orig_len).unwrap();
        write!(text, "{}", self.pad_bits).unwrap();
        if let Some(cb) = &self.codebook {
            text.push_str(&cb.serialize());
        }
        text.push_str(&self.body);
        text
    }
}

/// Build the envelope for `bytes` in the requested mode.
pub fn build_envelope(bytes: &[u8], mode: Mode) -> Result<MessageEnvelope, FramingError> {
    if bytes.is_empty() {
        return Err(FramingError::EmptyInput);
    }
    // cheap lower bounds before doing any encoding work
    let floor_chars = match mode {
        Mode::Uncompressed => HEADER_CHARS + bytes.len(),
        Mode::Compressed => HEADER_CHARS + CODEBOOK_CHARS + bytes.len().div_ceil(8),
    };
    if floor_chars > MAX_ENVELOPE_CHARS {
        return Err(FramingError::MessageTooLarge { chars: floor_chars });
    }

    let (pad_bits, codebook, body) = match mode {
        Mode::Uncompressed => (0u8, None, bytes_to_symbols(bytes)),
        Mode::Compressed => {
            let ft = FrequencyTable::from_bytes(bytes)?;
            let cb = HuffmanCodebook::from_frequencies(&ft)?;
            let packed = encode_bits(bytes, &cb)?;
            (packed.pad_bits, Some(cb), bytes_to_symbols(&packed.bytes))
        }
    };

    let chars = HEADER_CHARS
        + if codebook.is_some() {
            CODEBOOK_CHARS
        } else {
            0
        }
        + body.chars().count();
    if chars > MAX_ENVELOPE_CHARS {
        return Err(FramingError::MessageTooLarge { chars });
    }
    Ok(MessageEnvelope {
        mode,
        orig_len: bytes.len(),
        pad_bits,
        codebook,
        body,
        seg_total: chars.div_ceil(PAYLOAD_CHARS),
    })
}

/// One SMS: 3-digit index plus at most 157 payload characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmsSegment {
    index: u16,
    payload: String,
}

impl SmsSegment {
    pub fn new(index: u16, payload: String) -> Result<Self, FramingError> {
        if index as usize >= MAX_SEGMENTS {
            return Err(FramingError::MalformedSegment {
                reason: format!("index {index} outside 0-999"),
            });
        }
        let count = payload.chars().count();
        if count > PAYLOAD_CHARS {
            return Err(FramingError::MalformedSegment {
                reason: format!(
                    "payload has {count} characters, rendered segment would exceed {SEGMENT_CHARS}"
                ),
            });
        }
        if let Some((position, c)) = payload.chars().enumerate().find(|(_, c)| !in_alphabet(*c)) {
            return Err(FramingError::MalformedSegment {
                reason: format!(
                    "payload character {position} is U+{:04X}, outside the transport alphabet",
                    c as u32
                ),
            });
        }
        Ok(Self { index, payload })
    }

    /// Parse one rendered segment (a segments-file line).
    pub fn parse(line: &str) -> Result<Self, FramingError> {
        let mut chars = line.chars();
        let mut index = 0u16;
        for _ in 0..3 {
            let c = chars.next().ok_or_else(|| FramingError::MalformedSegment {
                reason: format!("line {line:?} is shorter than the 3-digit index"),
            })?;
            let d = c
                .to_digit(10)
                .ok_or_else(|| FramingError::MalformedSegment {
                    reason: format!("non-digit {c:?} in segment index"),
                })?;
            index = index * 10 + d as u16;
        }
        Self::new(index, chars.collect())
    }

    pub fn index(&self) -> u16 {
        self.index
    }

    pub fn payload(&self) -> &str {
        &self.payload
    }

    /// The transmitted text: zero-padded index followed by the payload.
    pub fn rendered(&self) -> String {
        format!("{:03}{}", self.index, self.payload)
    }
}

/// Split alphabet-safe text into indexed segments of 157 characters
/// (the last may be shorter).
pub fn segment_text(text: &str) -> Result<Vec<SmsSegment>, FramingError> {
    let chars: Vec<char> = text.chars().collect();
    if chars.is_empty() {
        return Err(FramingError::EmptyInput);
    }
    if chars.len() > MAX_ENVELOPE_CHARS {
        return Err(FramingError::MessageTooLarge { chars: chars.len() });
    }
    if let Some(position) = chars.iter().position(|&c| !in_alphabet(c)) {
        return Err(InvalidSymbol {
            code_point: chars[position] as u32,
            position,
        }
        .into());
    }
    Ok(chars
        .chunks(PAYLOAD_CHARS)
        .enumerate()
        .map(|(i, chunk)| SmsSegment {
            index: i as u16,
            payload: chunk.iter().collect(),
        })
        .collect())
}

/// Segment an envelope. Infallible: envelope constructors enforce the size
/// cap and the alphabet.
pub fn segment_message(envelope: &MessageEnvelope) -> Vec<SmsSegment> {
    let segments = segment_text(&envelope.render()).expect("envelope renders alphabet-safe text");
    debug_assert_eq!(segments.len(), envelope.seg_total);
    segments
}

/// Sort received segments by index, collapse identical duplicates, verify
/// completeness against the header in segment 0, and concatenate the
/// payloads back into envelope text. The result is invariant under any
/// permutation and duplication of the input.
pub fn reassemble_segments(segments: &[SmsSegment]) -> Result<String, FramingError> {
    let mut by_index: BTreeMap<u16, &SmsSegment> = BTreeMap::new();
    for seg in segments {
        match by_index.entry(seg.index) {
            Entry::Vacant(slot) => {
                slot.insert(seg);
            }
            Entry::Occupied(slot) => {
                if slot.get().payload != seg.payload {
                    return Err(FramingError::ConflictingDuplicate { index: seg.index });
                }
            }
        }
    }

    let first = by_index
        .get(&0)
        .ok_or(FramingError::MissingSegments { indices: vec![0] })?;
    let head: Vec<char> = first.payload.chars().take(7).collect();
    if head.len() < 7 {
        return Err(FramingError::MalformedHeaderField {
            field: "segment total",
            reason: format!(
                "segment 0 payload has {} characters, too short for the header",
                head.len()
            ),
        });
    }
    let mut header_total = 0usize;
    for &c in &head[4..7] {
        let d = c.to_digit(10).ok_or(FramingError::MalformedHeaderField {
            field: "segment total",
            reason: format!("non-digit {c:?}"),
        })?;
        header_total = header_total * 10 + d as usize;
    }
    let header_total = header_total + 1;

    let highest_index = *by_index.keys().next_back().unwrap() as usize;
    if highest_index + 1 > header_total {
        return Err(FramingError::CountMismatch {
            header_total,
            highest_index,
        });
    }
    let missing: Vec<u16> = (0..header_total as u16)
        .filter(|i| !by_index.contains_key(i))
        .collect();
    if !missing.is_empty() {
        return Err(FramingError::MissingSegments { indices: missing });
    }

    let mut text = String::with_capacity(header_total * PAYLOAD_CHARS);
    for seg in by_index.values() {
        text.push_str(&seg.payload);
    }
    Ok(text)
}

fn parse_decimal_field(chars: &[char], field: &'static str) -> Result<usize, FramingError> {
    let mut value = 0usize;
    for &c in chars {
        let d = c
            .to_digit(10)
            .ok_or_else(|| FramingError::MalformedHeaderField {
                field,
                reason: format!("non-digit {c:?}"),
            })?;
        value = value * 10 + d as usize;
    }
    Ok(value)
}

/// Parse envelope text back into its fields, validating the header against
/// the actual character count.
pub fn parse_envelope(text: &str) -> Result<MessageEnvelope, FramingError> {
    let chars: Vec<char> = text.chars().collect();
    let total_chars = chars.len();
    if total_chars < 2 {
        return Err(FramingError::MalformedHeaderField {
            field: "header",
            reason: format!("{total_chars} characters, too short for the magic"),
        });
    }
    let magic: String = chars[0..2].iter().collect();
    if magic != MAGIC {
        return Err(FramingError::BadMagic { found: magic });
    }
    if total_chars < HEADER_CHARS {
        return Err(FramingError::MalformedHeaderField {
            field: "header",
            reason: format!("{total_chars} characters, header needs {HEADER_CHARS}"),
        });
    }
    if chars[2] != VERSION {
        return Err(FramingError::UnsupportedVersion { found: chars[2] });
    }
    let mode = Mode::from_flag(chars[3]).ok_or_else(|| FramingError::MalformedHeaderField {
        field: "mode",
        reason: format!("flag {:?} is neither '0' nor '1'", chars[3]),
    })?;
    let header_total = parse_decimal_field(&chars[4..7], "segment total")? + 1;
    let orig_len = parse_decimal_field(&chars[7..15], "original length")?;
    if orig_len == 0 {
        return Err(FramingError::MalformedHeaderField {
            field: "original length",
            reason: "zero".into(),
        });
    }
    let pad_bits = parse_decimal_field(&chars[15..16], "pad bits")?;
    if pad_bits > 7 {
        return Err(FramingError::MalformedHeaderField {
            field: "pad bits",
            reason: format!("{pad_bits} exceeds 7"),
        });
    }
    if mode == Mode::Uncompressed && pad_bits != 0 {
        return Err(FramingError::MalformedHeaderField {
            field: "pad bits",
            reason: format!("{pad_bits} nonzero in uncompressed mode"),
        });
    }

    let body_start = match mode {
        Mode::Uncompressed => HEADER_CHARS,
        Mode::Compressed => HEADER_CHARS + CODEBOOK_CHARS,
    };
    let codebook = match mode {
        Mode::Uncompressed => None,
        Mode::Compressed => {
            if total_chars < body_start {
                return Err(FramingError::MalformedHeaderField {
                    field: "codebook",
                    reason: format!(
                        "envelope has {total_chars} characters, codebook needs {body_start}"
                    ),
                });
            }
            let field: String = chars[HEADER_CHARS..body_start].iter().collect();
            Some(HuffmanCodebook::deserialize(&field)?)
        }
    };
    let body: String = chars[body_start..].iter().collect();
    let body_chars = total_chars - body_start;

    if mode == Mode::Uncompressed && body_chars != orig_len {
        return Err(FramingError::MalformedHeaderField {
            field: "original length",
            reason: format!("header says {orig_len} bytes, body has {body_chars} characters"),
        });
    }
    let computed_total = total_chars.div_ceil(PAYLOAD_CHARS);
    if header_total != computed_total {
        return Err(FramingError::MalformedHeaderField {
            field: "segment total",
            reason: format!(
                "header says {header_total}, {total_chars} characters need {computed_total}"
            ),
        });
    }

    Ok(MessageEnvelope {
        mode,
        orig_len,
        pad_bits: pad_bits as u8,
        codebook,
        body,
        seg_total: header_total,
    })
}

/// Recover the original bytes from a parsed envelope.
pub fn decode_message(envelope: &MessageEnvelope) -> Result<Vec<u8>, FramingError> {
    let payload = symbols_to_bytes(&envelope.body)?;
    match envelope.mode {
        Mode::Uncompressed => Ok(payload),
        Mode::Compressed => {
            let codebook = envelope
                .codebook
                .as_ref()
                .expect("compressed envelope carries a codebook");
            let stream = PackedBitstream {
                bytes: payload,
                pad_bits: envelope.pad_bits,
            };
            Ok(decode_bits(&stream, codebook, envelope.orig_len)?)
        }
    }
}

/// Reassemble, parse, and decode in one step.
pub fn decode_segments(segments: &[SmsSegment]) -> Result<Vec<u8>, FramingError> {
    let text = reassemble_segments(segments)?;
    let envelope = parse_envelope(&text)?;
    decode_message(&envelope)
}

/// Write one rendered segment per line, LF-terminated, UTF-8.
pub fn write_segments_file(path: &Path, segments: &[SmsSegment]) -> Result<(), FramingError> {
    let mut out = String::new();
    for seg in segments {
        out.push_str(&seg.rendered());
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Read a segments file written by [`write_segments_file`] (or perturbed by
/// the channel simulator).
pub fn read_segments_file(path: &Path) -> Result<Vec<SmsSegment>, FramingError> {
    let text = fs::read_to_string(path)?;
    text.lines().map(SmsSegment::parse).collect()
}
