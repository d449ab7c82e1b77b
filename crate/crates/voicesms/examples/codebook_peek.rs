//! Look inside the compression stage: byte frequencies of a clip, the code
//! lengths they earn, and the 512-digit codebook field that rides in the
//! message header.
//!
//! ```bash
//! cargo run --example codebook_peek
//! ```

use std::error::Error;

use voicesms::huffman::{encode_bits, FrequencyTable, HuffmanCodebook};
use voicesms::speech;

fn main() -> Result<(), Box<dyn Error>> {
    let samples = speech::samples(42, 8000, 2.0);
    let table = FrequencyTable::from_bytes(&samples)?;
    let codebook = HuffmanCodebook::from_frequencies(&table)?;

    let mut by_count: Vec<(u64, u8)> = (0..=255u8)
        .map(|b| (table.count(b), b))
        .filter(|&(n, _)| n > 0)
        .collect();
    by_count.sort_unstable_by(|a, b| b.cmp(a));

    println!("distinct byte values: {}", table.distinct());
    println!("most frequent values:");
    for &(count, byte) in by_count.iter().take(8) {
        println!(
            "  byte {byte:3}  x{count:<6} -> {:2}-bit code",
            codebook.length(byte)
        );
    }
    if let Some(&(count, byte)) = by_count.last() {
        println!(
            "rarest value: byte {byte} x{count} -> {}-bit code",
            codebook.length(byte)
        );
    }

    let packed = encode_bits(&samples, &codebook)?;
    println!(
        "\n{} samples x 8 bits = {} bits; coded to {} bits ({:.1}%), {} pad bit(s)",
        samples.len(),
        samples.len() * 8,
        packed.bit_len(),
        100.0 * packed.bit_len() as f64 / (samples.len() * 8) as f64,
        packed.pad_bits
    );

    let field = codebook.serialize();
    println!(
        "codebook field: {} digits, first 64: {}",
        field.len(),
        &field[..64]
    );
    Ok(())
}
