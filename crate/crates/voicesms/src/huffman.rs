//! Canonical Huffman coding over byte values.
//!
//! The codebook stores only the per-byte code lengths; codes are
//! reconstructed canonically (sorted by length, then byte value, assigned
//! lexicographically increasing bit patterns). That keeps the transported
//! codebook down to 512 decimal digits while still pinning one exact code
//! per byte.
//!
//! Tree construction is deterministic: the priority queue orders nodes by
//! (weight, insertion sequence), with the leaves for bytes 0..=255 inserted
//! first in value order and merged nodes numbered in creation order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use crate::bits::{BitReader, BitWriter};

/// Wire limit for a single code length (two decimal digits).
pub const MAX_CODE_LEN: u8 = 99;
/// Character count of the serialized codebook field.
pub const CODEBOOK_DIGITS: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HuffmanError {
    #[error("empty input")]
    EmptyInput,
    #[error(
        "code for byte {byte} would need {length} bits, over the {MAX_CODE_LEN}-bit wire limit"
    )]
    CodeTooLong { byte: u8, length: u32 },
    #[error("byte {byte} at position {position} has no code in the codebook")]
    SymbolNotInCodebook { byte: u8, position: usize },
    #[error("bitstream ended after {decoded} of {expected} symbols")]
    TruncatedBitstream { decoded: usize, expected: usize },
    #[error("{extra_bits} non-padding bits remain after the last symbol")]
    TrailingGarbage { extra_bits: usize },
    #[error("invalid codebook: {reason}")]
    InvalidCodebook { reason: String },
    #[error("malformed codebook field: {reason}")]
    MalformedCodebookField { reason: String },
}

/// Byte-value histogram of an input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: [u64; 256],
}

impl FrequencyTable {
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, HuffmanError> {
        if bytes.is_empty() {
            return Err(HuffmanError::EmptyInput);
        }
        let mut counts = [0u64; 256];
        for &b in bytes {
            counts[b as usize] += 1;
        }
        Ok(Self { counts })
    }

    pub fn count(&self, byte: u8) -> u64 {
        self.counts[byte as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn distinct(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

#[derive(Debug, Clone, Copy)]
struct CanonicalCode {
    byte: u8,
    len: u8,
    code: u128,
}

/// Canonical prefix code, stored as one code length per byte value
/// (0 = byte absent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuffmanCodebook {
    lengths: [u8; 256],
}

impl HuffmanCodebook {
    /// Build the optimal prefix code for a frequency table.
    ///
    /// A lone distinct byte gets a 1-bit code: the serialized field uses
    /// length 0 to mean "absent", so a real code can never be empty.
    pub fn from_frequencies(ft: &FrequencyTable) -> Result<Self, HuffmanError> {
        let present: Vec<u8> = (0..=255u8).filter(|&b| ft.count(b) > 0).collect();
        let mut lengths = [0u8; 256];
        match present.len() {
            0 => return Err(HuffmanError::EmptyInput),
            1 => {
                lengths[present[0] as usize] = 1;
                return Ok(Self { lengths });
            }
            _ => {}
        }

        // Arena of tree nodes; index doubles as the insertion sequence
        // number because leaves are pushed first in byte-value order and
        // merges are appended in creation order.
        struct Node {
            weight: u64,
            children: Option<(usize, usize)>,
            byte: u8,
        }
        let mut nodes: Vec<Node> = present
            .iter()
            .map(|&b| Node {
                weight: ft.count(b),
                children: None,
                byte: b,
            })
            .collect();

        let mut queue: BinaryHeap<Reverse<(u64, usize)>> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| Reverse((n.weight, i)))
            .collect();

        while queue.len() >= 2 {
            let Reverse((wa, a)) = queue.pop().unwrap();
            let Reverse((wb, b)) = queue.pop().unwrap();
            let merged = nodes.len();
            nodes.push(Node {
                weight: wa + wb,
                children: Some((a, b)),
                byte: 0,
            });
            queue.push(Reverse((wa + wb, merged)));
        }

        let root = nodes.len() - 1;
        let mut stack = vec![(root, 0u32)];
        while let Some((idx, depth)) = stack.pop() {
            match nodes[idx].children {
                Some((l, r)) => {
                    stack.push((l, depth + 1));
                    stack.push((r, depth + 1));
                }
                None => {
                    if depth > u32::from(MAX_CODE_LEN) {
                        return Err(HuffmanError::CodeTooLong {
                            byte: nodes[idx].byte,
                            length: depth,
                        });
                    }
                    lengths[nodes[idx].byte as usize] = depth as u8;
                }
            }
        }
        Ok(Self { lengths })
    }

    pub fn length(&self, byte: u8) -> u8 {
        self.lengths[byte as usize]
    }

    pub fn lengths(&self) -> &[u8; 256] {
        &self.lengths
    }

    pub fn max_length(&self) -> u8 {
        self.lengths.iter().copied().max().unwrap_or(0)
    }

    /// Codes sorted by (length, byte), assigned lexicographically
    /// increasing bit patterns.
    fn canonical_codes(&self) -> Vec<CanonicalCode> {
        let mut symbols: Vec<(u8, u8)> = (0..=255u8)
            .filter(|&b| self.lengths[b as usize] > 0)
            .map(|b| (self.lengths[b as usize], b))
            .collect();
        symbols.sort_unstable();

        let mut codes = Vec::with_capacity(symbols.len());
        let mut code: u128 = 0;
        let mut prev_len = 0u8;
        for (len, byte) in symbols {
            code <<= len - prev_len;
            codes.push(CanonicalCode { byte, len, code });
            code += 1;
            prev_len = len;
        }
        codes
    }

    /// Kraft and single-symbol structural checks.
    fn validate(lengths: &[u8; 256]) -> Result<(), HuffmanError> {
        let present: Vec<u8> = lengths.iter().copied().filter(|&l| l > 0).collect();
        match present.len() {
            0 => Err(HuffmanError::InvalidCodebook {
                reason: "no byte has a code".into(),
            }),
            1 if present[0] != 1 => Err(HuffmanError::InvalidCodebook {
                reason: format!(
                    "single-symbol codebook must use a 1-bit code, found length {}",
                    present[0]
                ),
            }),
            1 => Ok(()),
            _ => {
                let max = *present.iter().max().unwrap();
                let sum: u128 = present.iter().map(|&l| 1u128 << (max - l)).sum();
                let full = 1u128 << max;
                if sum != full {
                    Err(HuffmanError::InvalidCodebook {
                        reason: format!(
                            "Kraft sum is {sum}/{full}, prefix code tree must be exactly full"
                        ),
                    })
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Render the 512-digit wire field: two zero-padded decimal digits per
    /// byte value, in byte order.
    pub fn serialize(&self) -> String {
        let mut out = String::with_capacity(CODEBOOK_DIGITS);
        for len in self.lengths.iter() {
            write!(out, "{len:02}").unwrap();
        }
        out
    }

    pub fn deserialize(text: &str) -> Result<Self, HuffmanError> {
        let digits: Vec<char> = text.chars().collect();
        if digits.len() != CODEBOOK_DIGITS {
            return Err(HuffmanError::MalformedCodebookField {
                reason: format!(
                    "expected {CODEBOOK_DIGITS} characters, found {}",
                    digits.len()
                ),
            });
        }
        let mut lengths = [0u8; 256];
        for (b, pair) in digits.chunks(2).enumerate() {
            let hi = pair[0]
                .to_digit(10)
                .ok_or_else(|| HuffmanError::MalformedCodebookField {
                    reason: format!("non-digit {:?} at position {}", pair[0], 2 * b),
                })?;
            let lo = pair[1]
                .to_digit(10)
                .ok_or_else(|| HuffmanError::MalformedCodebookField {
                    reason: format!("non-digit {:?} at position {}", pair[1], 2 * b + 1),
                })?;
            lengths[b] = (hi * 10 + lo) as u8;
        }
        Self::validate(&lengths)?;
        Ok(Self { lengths })
    }
}

/// Huffman-coded bits packed MSB-first, plus the zero-pad count of the
/// final byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedBitstream {
    pub bytes: Vec<u8>,
    pub pad_bits: u8,
}

impl PackedBitstream {
    pub fn bit_len(&self) -> usize {
        self.bytes.len() * 8 - self.pad_bits as usize
    }
}

/// Encode `bytes` with the codebook's canonical codes, packed MSB-first.
pub fn encode_bits(
    bytes: &[u8],
    codebook: &HuffmanCodebook,
) -> Result<PackedBitstream, HuffmanError> {
    let mut table: [Option<(u128, u8)>; 256] = [None; 256];
    for c in codebook.canonical_codes() {
        table[c.byte as usize] = Some((c.code, c.len));
    }

    let mut writer = BitWriter::new();
    for (position, &b) in bytes.iter().enumerate() {
        let (code, len) =
            table[b as usize].ok_or(HuffmanError::SymbolNotInCodebook { byte: b, position })?;
        writer.push_code(code, len);
    }
    let (bytes, pad_bits) = writer.finish();
    Ok(PackedBitstream { bytes, pad_bits })
}

/// Decode exactly `expected` symbols, consuming every non-padding bit.
pub fn decode_bits(
    stream: &PackedBitstream,
    codebook: &HuffmanCodebook,
    expected: usize,
) -> Result<Vec<u8>, HuffmanError> {
    let avail = stream.bytes.len() * 8;
    let pad = stream.pad_bits as usize;
    if pad > avail {
        return Err(HuffmanError::TruncatedBitstream {
            decoded: 0,
            expected,
        });
    }
    let mut reader = BitReader::new(&stream.bytes, avail - pad);

    // Per-length canonical lookup: first code, symbol count, and the
    // canonical symbol order.
    let codes = codebook.canonical_codes();
    let max_len = codebook.max_length() as usize;
    let mut first_code = vec![0u128; max_len + 1];
    let mut count = vec![0usize; max_len + 1];
    let mut offset = vec![0usize; max_len + 1];
    for (i, c) in codes.iter().enumerate() {
        let l = c.len as usize;
        if count[l] == 0 {
            first_code[l] = c.code;
            offset[l] = i;
        }
        count[l] += 1;
    }
    let symbols: Vec<u8> = codes.iter().map(|c| c.byte).collect();

    let mut out = Vec::with_capacity(expected);
    while out.len() < expected {
        let mut acc: u128 = 0;
        let mut len = 0usize;
        loop {
            let bit = reader.read_bit().ok_or(HuffmanError::TruncatedBitstream {
                decoded: out.len(),
                expected,
            })?;
            acc = (acc << 1) | u128::from(bit);
            len += 1;
            if len <= max_len && count[len] > 0 && acc >= first_code[len] {
                let idx = (acc - first_code[len]) as usize;
                if idx < count[len] {
                    out.push(symbols[offset[len] + idx]);
                    break;
                }
            }
            // a Kraft-complete codebook resolves every path by max_len
            if len >= max_len {
                return Err(HuffmanError::InvalidCodebook {
                    reason: "bit pattern matches no canonical code".into(),
                });
            }
        }
    }
    if reader.remaining() > 0 {
        return Err(HuffmanError::TrailingGarbage {
            extra_bits: reader.remaining(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table_from_pairs(pairs: &[(u8, u64)]) -> FrequencyTable {
        let mut bytes = Vec::new();
        for &(b, n) in pairs {
            bytes.extend(std::iter::repeat_n(b, n as usize));
        }
        FrequencyTable::from_bytes(&bytes).unwrap()
    }

    #[test]
    fn counts_are_exact() {
        let ft = FrequencyTable::from_bytes(&[5, 5, 7]).unwrap();
        assert_eq!(ft.count(5), 2);
        assert_eq!(ft.count(7), 1);
        assert_eq!(ft.count(0), 0);
        assert_eq!(ft.total(), 3);
        assert_eq!(ft.distinct(), 2);
    }

    #[test]
    fn counts_all_byte_values() {
        let bytes: Vec<u8> = (0..=255).collect();
        let ft = FrequencyTable::from_bytes(&bytes).unwrap();
        assert!((0..=255u8).all(|b| ft.count(b) == 1));
    }

    #[test]
    fn empty_input_rejected() {
        assert_eq!(
            FrequencyTable::from_bytes(&[]),
            Err(HuffmanError::EmptyInput)
        );
    }

    #[test]
    fn skewed_four_symbol_lengths() {
        // counts 5,2,1,1 force the unique optimal length multiset {1,2,3,3}
        let ft = table_from_pairs(&[(10, 5), (20, 2), (30, 1), (40, 1)]);
        let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
        assert_eq!(cb.length(10), 1);
        assert_eq!(cb.length(20), 2);
        assert_eq!(cb.length(30), 3);
        assert_eq!(cb.length(40), 3);
    }

    #[test]
    fn single_symbol_gets_one_bit() {
        let ft = table_from_pairs(&[(42, 7)]);
        let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
        assert_eq!(cb.length(42), 1);
        assert_eq!((0..=255u8).filter(|&b| cb.length(b) > 0).count(), 1);
    }

    #[test]
    fn two_symbols_get_one_bit_each() {
        let ft = table_from_pairs(&[(0, 1000), (255, 1)]);
        let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
        assert_eq!(cb.length(0), 1);
        assert_eq!(cb.length(255), 1);
    }

    #[test]
    fn balanced_four_symbols() {
        let ft = table_from_pairs(&[(1, 1), (2, 1), (3, 1), (4, 1)]);
        let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
        for b in 1..=4u8 {
            assert_eq!(cb.length(b), 2);
        }
    }

    #[test]
    fn encode_hand_packed_example() {
        // codes: 97 -> 0, 98 -> 1; "aab" packs to 001 followed by 5 pad bits
        let ft = FrequencyTable::from_bytes(&[97, 97, 98]).unwrap();
        let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
        let packed = encode_bits(&[97, 97, 98], &cb).unwrap();
        assert_eq!(packed.bytes, vec![32]);
        assert_eq!(packed.pad_bits, 5);
        assert_eq!(packed.bit_len(), 3);
    }

    #[test]
    fn decode_hand_packed_example() {
        let ft = FrequencyTable::from_bytes(&[97, 97, 98]).unwrap();
        let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
        let packed = PackedBitstream {
            bytes: vec![32],
            pad_bits: 5,
        };
        assert_eq!(decode_bits(&packed, &cb, 3).unwrap(), vec![97, 97, 98]);
    }

    #[test]
    fn single_symbol_full_byte_no_padding() {
        let ft = table_from_pairs(&[(9, 8)]);
        let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
        let packed = encode_bits(&[9u8; 8], &cb).unwrap();
        // canonical assignment gives the lone symbol code 0
        assert_eq!(packed.bytes, vec![0]);
        assert_eq!(packed.pad_bits, 0);
        assert_eq!(decode_bits(&packed, &cb, 8).unwrap(), vec![9u8; 8]);
    }

    #[test]
    fn decode_demands_match_supply() {
        let ft = FrequencyTable::from_bytes(&[97, 97, 98]).unwrap();
        let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
        let packed = PackedBitstream {
            bytes: vec![32],
            pad_bits: 5,
        };
        assert!(matches!(
            decode_bits(&packed, &cb, 4),
            Err(HuffmanError::TruncatedBitstream {
                decoded: 3,
                expected: 4
            })
        ));
        assert!(matches!(
            decode_bits(&packed, &cb, 2),
            Err(HuffmanError::TrailingGarbage { extra_bits: 1 })
        ));
    }

    #[test]
    fn decode_empty_stream() {
        let ft = FrequencyTable::from_bytes(&[1]).unwrap();
        let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
        let packed = PackedBitstream {
            bytes: vec![],
            pad_bits: 0,
        };
        assert_eq!(decode_bits(&packed, &cb, 0).unwrap(), Vec::<u8>::new());
    }

    #[test]
    fn encode_rejects_uncovered_byte() {
        let ft = FrequencyTable::from_bytes(&[1, 2]).unwrap();
        let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
        assert!(matches!(
            encode_bits(&[1, 3, 2], &cb),
            Err(HuffmanError::SymbolNotInCodebook {
                byte: 3,
                position: 1
            })
        ));
    }

    #[test]
    fn serialize_positional_layout() {
        let ft = table_from_pairs(&[(0, 3)]);
        let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
        let text = cb.serialize();
        assert_eq!(text.len(), CODEBOOK_DIGITS);
        assert_eq!(&text[..2], "01");
        assert!(text[2..].chars().all(|c| c == '0'));
    }

    #[test]
    fn deserialize_length_check() {
        // 511 characters: one short
        let mut short = String::from("01");
        short.push_str(&"0".repeat(509));
        assert_eq!(short.len(), 511);
        assert!(matches!(
            HuffmanCodebook::deserialize(&short),
            Err(HuffmanError::MalformedCodebookField { .. })
        ));
        let mut bad = "01".to_string();
        bad.push_str(&"0".repeat(509));
        bad.push('x');
        assert!(matches!(
            HuffmanCodebook::deserialize(&bad),
            Err(HuffmanError::MalformedCodebookField { .. })
        ));
    }

    #[test]
    fn deserialize_enforces_kraft() {
        // lengths {1, 2}: tree is not full
        let mut text = String::from("0102");
        text.push_str(&"0".repeat(508));
        assert!(matches!(
            HuffmanCodebook::deserialize(&text),
            Err(HuffmanError::InvalidCodebook { .. })
        ));
        // lengths {1, 1, 1}: tree overfull
        let mut text = String::from("010101");
        text.push_str(&"0".repeat(506));
        assert!(matches!(
            HuffmanCodebook::deserialize(&text),
            Err(HuffmanError::InvalidCodebook { .. })
        ));
        // all absent
        assert!(matches!(
            HuffmanCodebook::deserialize(&"0".repeat(512)),
            Err(HuffmanError::InvalidCodebook { .. })
        ));
        // single symbol with a non-1 length
        let mut text = String::from("02");
        text.push_str(&"0".repeat(510));
        assert!(matches!(
            HuffmanCodebook::deserialize(&text),
            Err(HuffmanError::InvalidCodebook { .. })
        ));
    }

    #[test]
    fn construction_is_deterministic() {
        let bytes: Vec<u8> = (0..4096u32).map(|i| (i * 31 % 251) as u8).collect();
        let cb1 = HuffmanCodebook::from_frequencies(&FrequencyTable::from_bytes(&bytes).unwrap())
            .unwrap();
        let cb2 = HuffmanCodebook::from_frequencies(&FrequencyTable::from_bytes(&bytes).unwrap())
            .unwrap();
        assert_eq!(cb1, cb2);
        assert_eq!(
            encode_bits(&bytes, &cb1).unwrap(),
            encode_bits(&bytes, &cb2).unwrap()
        );
    }

    #[test]
    fn canonical_codes_are_prefix_free() {
        let bytes: Vec<u8> = (0..2000u32).map(|i| (i % 97) as u8).collect();
        let cb = HuffmanCodebook::from_frequencies(&FrequencyTable::from_bytes(&bytes).unwrap())
            .unwrap();
        let codes = cb.canonical_codes();
        for a in &codes {
            for b in &codes {
                if a.byte == b.byte {
                    continue;
                }
                if a.len <= b.len {
                    assert_ne!(
                        a.code,
                        b.code >> (b.len - a.len),
                        "code for {} is a prefix of code for {}",
                        a.byte,
                        b.byte
                    );
                }
            }
        }
    }

    #[test]
    fn entropy_bound_on_mixed_input() {
        // skewed but non-degenerate input
        let mut bytes = Vec::new();
        for (b, n) in [(0u8, 6000usize), (1, 2500), (2, 1000), (3, 400), (4, 100)] {
            bytes.extend(std::iter::repeat_n(b, n));
        }
        let n = bytes.len() as f64;
        let ft = FrequencyTable::from_bytes(&bytes).unwrap();
        let entropy: f64 = (0..=255u8)
            .map(|b| ft.count(b) as f64 / n)
            .filter(|&p| p > 0.0)
            .map(|p| -p * p.log2())
            .sum();
        let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
        let total_bits: f64 = (0..=255u8)
            .map(|b| ft.count(b) as f64 * cb.length(b) as f64)
            .sum();
        assert!(n * entropy <= total_bits + 1e-9);
        assert!(total_bits < n * (entropy + 1.0));
    }

    proptest! {
        #[test]
        fn encode_decode_round_trip(bytes in proptest::collection::vec(any::<u8>(), 1..4000)) {
            let ft = FrequencyTable::from_bytes(&bytes).unwrap();
            let cb = HuffmanCodebook::from_frequencies(&ft).unwrap();
            let packed = encode_bits(&bytes, &cb).unwrap();
            let expected_bits: usize = bytes.iter().map(|&b| cb.length(b) as usize).sum();
            prop_assert_eq!(packed.bit_len(), expected_bits);
            prop_assert_eq!(decode_bits(&packed, &cb, bytes.len()).unwrap(), bytes);
        }

        #[test]
        fn codebook_serde_round_trip(bytes in proptest::collection::vec(any::<u8>(), 1..2000)) {
            let cb = HuffmanCodebook::from_frequencies(
                &FrequencyTable::from_bytes(&bytes).unwrap(),
            ).unwrap();
            let text = cb.serialize();
            prop_assert_eq!(text.len(), CODEBOOK_DIGITS);
            prop_assert_eq!(HuffmanCodebook::deserialize(&text).unwrap(), cb);
        }
    }
}
