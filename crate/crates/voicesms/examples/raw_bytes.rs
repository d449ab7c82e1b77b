//! Encode an arbitrary byte payload (no WAV required) in both modes and
//! show the segments that would go over the air.
//!
//! ```bash
//! cargo run --example raw_bytes
//! ```

use std::error::Error;

use voicesms::framing::Mode;

fn main() -> Result<(), Box<dyn Error>> {
    let payload = b"any bytes travel: \x00\x01\x02 included".to_vec();
    println!("payload: {} bytes", payload.len());

    for mode in [Mode::Uncompressed, Mode::Compressed] {
        let segments = voicesms::encode(&payload, mode)?;
        let chars: usize = segments.iter().map(|s| s.rendered().chars().count()).sum();
        println!(
            "\n{mode:?}: {} segment(s), {chars} characters",
            segments.len()
        );
        for seg in &segments {
            let rendered = seg.rendered();
            let preview: String = rendered.chars().take(48).collect();
            println!(
                "  [{:03}] {:3} chars | {preview}{}",
                seg.index(),
                rendered.chars().count(),
                if rendered.chars().count() > 48 {
                    "..."
                } else {
                    ""
                }
            );
        }
        assert_eq!(voicesms::decode(&segments)?, payload);
    }

    println!("\nboth modes decode back to the original payload");
    Ok(())
}
