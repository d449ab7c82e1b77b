//! Byte <-> message-character mapping.
//!
//! SMS payloads cannot carry the control characters 0-31, so those byte
//! values are shifted up by 256 into the code points 256-287; every other
//! byte maps to the code point with the same numeric value. The transport
//! alphabet is therefore the 256 contiguous code points 32..=287, and the
//! mapping is a bijection on it. A symbol stream is any string whose
//! characters all lie in this alphabet; files serialize it as UTF-8.

/// Lowest code point in the transport alphabet.
pub const ALPHABET_MIN: u32 = 32;
/// Highest code point in the transport alphabet.
pub const ALPHABET_MAX: u32 = 287;
/// Offset applied to byte values 0-31.
pub const CONTROL_SHIFT: u32 = 256;

/// A character outside the transport alphabet.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid symbol U+{code_point:04X} at character {position}")]
pub struct InvalidSymbol {
    pub code_point: u32,
    pub position: usize,
}

/// Reinterpret a signed sample byte as unsigned (two's complement).
pub fn signed_to_unsigned(v: i8) -> u8 {
    v as u8
}

/// Inverse of [`signed_to_unsigned`].
pub fn unsigned_to_signed(b: u8) -> i8 {
    b as i8
}

/// Map a byte value to its message character.
pub fn byte_to_symbol(b: u8) -> char {
    let cp = if u32::from(b) < ALPHABET_MIN {
        u32::from(b) + CONTROL_SHIFT
    } else {
        u32::from(b)
    };
    // cp <= 287, always a valid scalar value
    char::from_u32(cp).unwrap()
}

/// Map a message character back to its byte value.
pub fn symbol_to_byte(c: char) -> Result<u8, InvalidSymbol> {
    let cp = c as u32;
    if !(ALPHABET_MIN..=ALPHABET_MAX).contains(&cp) {
        return Err(InvalidSymbol {
            code_point: cp,
            position: 0,
        });
    }
    if cp >= CONTROL_SHIFT {
        Ok((cp - CONTROL_SHIFT) as u8)
    } else {
        Ok(cp as u8)
    }
}

pub fn in_alphabet(c: char) -> bool {
    (ALPHABET_MIN..=ALPHABET_MAX).contains(&(c as u32))
}

/// Map a byte sequence to its symbol stream.
pub fn bytes_to_symbols(bytes: &[u8]) -> String {
    bytes.iter().copied().map(byte_to_symbol).collect()
}

/// Map a symbol stream back to bytes, reporting the first offending
/// character position on failure.
pub fn symbols_to_bytes(text: &str) -> Result<Vec<u8>, InvalidSymbol> {
    text.chars()
        .enumerate()
        .map(|(position, c)| symbol_to_byte(c).map_err(|e| InvalidSymbol { position, ..e }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn shifts_control_range_up() {
        assert_eq!(byte_to_symbol(0) as u32, 256);
        assert_eq!(byte_to_symbol(31) as u32, 287);
        assert_eq!(byte_to_symbol(32) as u32, 32);
        assert_eq!(byte_to_symbol(200) as u32, 200);
        assert_eq!(byte_to_symbol(255) as u32, 255);
    }

    #[test]
    fn signed_reinterpretation() {
        assert_eq!(signed_to_unsigned(-1), 255);
        assert_eq!(signed_to_unsigned(0), 0);
        assert_eq!(signed_to_unsigned(-128), 128);
        assert_eq!(signed_to_unsigned(127), 127);
        for v in i8::MIN..=i8::MAX {
            assert_eq!(unsigned_to_signed(signed_to_unsigned(v)), v);
        }
    }

    #[test]
    fn exhaustive_bijection() {
        let mut seen = [false; 512];
        for b in 0..=255u8 {
            let s = byte_to_symbol(b);
            let cp = s as u32;
            assert!(cp >= ALPHABET_MIN, "byte {b} mapped into reserved range");
            assert!(cp <= ALPHABET_MAX);
            assert!(!seen[cp as usize], "byte {b} collides at U+{cp:04X}");
            seen[cp as usize] = true;
            assert_eq!(symbol_to_byte(s), Ok(b));
        }
    }

    #[test]
    fn rejects_out_of_alphabet_symbols() {
        for cp in [0u32, 10, 31, 288, 0x4E00] {
            let c = char::from_u32(cp).unwrap();
            let err = symbol_to_byte(c).unwrap_err();
            assert_eq!(err.code_point, cp);
        }
    }

    #[test]
    fn boundary_vector() {
        let symbols = bytes_to_symbols(&[0, 31, 32, 255]);
        let cps: Vec<u32> = symbols.chars().map(|c| c as u32).collect();
        assert_eq!(cps, vec![256, 287, 32, 255]);
        assert_eq!(symbols_to_bytes(&symbols).unwrap(), vec![0, 31, 32, 255]);
    }

    #[test]
    fn empty_stream() {
        assert_eq!(bytes_to_symbols(&[]), "");
        assert_eq!(symbols_to_bytes("").unwrap(), Vec::<u8>::new());
    }

    #[test]
    fn error_carries_position() {
        let mut text = bytes_to_symbols(&[65, 66, 67]);
        text.push('\u{1F600}');
        let err = symbols_to_bytes(&text).unwrap_err();
        assert_eq!(err.position, 3);
        assert_eq!(err.code_point, 0x1F600);
    }

    proptest! {
        #[test]
        fn round_trips(bytes in proptest::collection::vec(any::<u8>(), 0..10_000)) {
            let symbols = bytes_to_symbols(&bytes);
            prop_assert_eq!(symbols.chars().count(), bytes.len());
            prop_assert!(symbols.chars().all(in_alphabet));
            prop_assert_eq!(symbols_to_bytes(&symbols).unwrap(), bytes);
        }
    }
}
