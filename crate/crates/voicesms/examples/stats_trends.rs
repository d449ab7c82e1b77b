//! Character/segment counts versus clip duration, with and without
//! compression, as a CSV on stdout. Longer clips need proportionally more
//! characters and therefore more connected messages; compression shifts
//! both curves down.
//!
//! ```bash
//! cargo run --example stats_trends
//! ```

use std::error::Error;
use std::io;

use voicesms::ingest::clip_from_bytes;
use voicesms::speech;
use voicesms::stats::{compute_stats, write_csv};

fn main() -> Result<(), Box<dyn Error>> {
    let mut records = Vec::new();
    for duration in [0.5f64, 1.0, 2.0, 4.0, 8.0] {
        let wav = speech::wav_clip(42, 8000, duration);
        let clip = clip_from_bytes(wav, false)?;
        records.push(compute_stats(&format!("speech_{duration}s"), &clip)?);
    }
    write_csv(io::stdout().lock(), &records)?;
    Ok(())
}
