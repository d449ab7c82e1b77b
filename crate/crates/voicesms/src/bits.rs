//! MSB-first bit packing for the compressed payload.
//!
//! Bits are written into each byte starting at the most significant position;
//! the final byte is zero-padded and the pad count travels in the message
//! header.

/// Accumulates bits MSB-first into a byte buffer.
#[derive(Debug, Default)]
pub struct BitWriter {
    buf: Vec<u8>,
    cur: u8,
    filled: u8,
    total_bits: usize,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_bit(&mut self, bit: bool) {
        if bit {
            self.cur |= 1 << (7 - self.filled);
        }
        self.filled += 1;
        self.total_bits += 1;
        if self.filled == 8 {
            self.buf.push(self.cur);
            self.cur = 0;
            self.filled = 0;
        }
    }

    /// Push the low `len` bits of `code`, most significant first.
    pub fn push_code(&mut self, code: u128, len: u8) {
        for shift in (0..len).rev() {
            self.push_bit((code >> shift) & 1 == 1);
        }
    }

    pub fn bit_len(&self) -> usize {
        self.total_bits
    }

    /// Flush, returning the packed bytes and the number of zero pad bits in
    /// the final byte.
    pub fn finish(mut self) -> (Vec<u8>, u8) {
        let pad = if self.filled == 0 {
            0
        } else {
            let pad = 8 - self.filled;
            self.buf.push(self.cur);
            pad
        };
        (self.buf, pad)
    }
}

/// Reads bits MSB-first from a byte slice, bounded by an explicit bit count.
#[derive(Debug)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
    limit: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8], bit_limit: usize) -> Self {
        debug_assert!(bit_limit <= bytes.len() * 8);
        Self {
            bytes,
            pos: 0,
            limit: bit_limit,
        }
    }

    /// `None` once the bit limit is reached.
    pub fn read_bit(&mut self) -> Option<bool> {
        if self.pos >= self.limit {
            return None;
        }
        let byte = self.bytes[self.pos / 8];
        let bit = (byte >> (7 - self.pos % 8)) & 1;
        self.pos += 1;
        Some(bit == 1)
    }

    pub fn remaining(&self) -> usize {
        self.limit - self.pos
    }
}
