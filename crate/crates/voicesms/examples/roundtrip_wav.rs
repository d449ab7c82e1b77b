//! Full pipeline over files: generate a speech-like WAV clip, encode it
//! into a segments file, decode the file back, and verify the result is
//! byte-identical to the original.
//!
//! ```bash
//! cargo run --example roundtrip_wav
//! ```

use std::error::Error;
use std::fs;

use voicesms::framing::{read_segments_file, write_segments_file, Mode};
use voicesms::ingest::load_input;
use voicesms::speech;

fn main() -> Result<(), Box<dyn Error>> {
    let dir = std::env::temp_dir().join("voicesms-roundtrip");
    fs::create_dir_all(&dir)?;
    let wav_path = dir.join("clip.wav");
    let segments_path = dir.join("clip.sms");

    let wav = speech::wav_clip(7, 8000, 2.0);
    fs::write(&wav_path, &wav)?;
    println!("clip:     {} ({} bytes)", wav_path.display(), wav.len());

    let clip = load_input(&wav_path, false)?;
    let format = clip.format.as_ref().unwrap();
    println!(
        "format:   {} Hz, {}-bit, {} channel(s), {:.2} s",
        format.sample_rate, format.bits_per_sample, format.channels, format.duration_s
    );

    let segments = voicesms::encode(&clip.bytes, Mode::Compressed)?;
    write_segments_file(&segments_path, &segments)?;
    let chars: usize = segments.iter().map(|s| s.rendered().chars().count()).sum();
    println!(
        "encoded:  {} segments, {} characters -> {}",
        segments.len(),
        chars,
        segments_path.display()
    );

    let received = read_segments_file(&segments_path)?;
    let decoded = voicesms::decode(&received)?;
    assert_eq!(decoded, wav, "decoded bytes must match the original file");
    println!(
        "decoded:  {} bytes, identical to the original",
        decoded.len()
    );
    Ok(())
}
