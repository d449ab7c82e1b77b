//! Per-input size measurements: envelope characters and segment counts for
//! both modes, the compression ratio, and the clip duration when known.

use std::io::{self, Write};

use crate::framing::{build_envelope, FramingError, Mode};
use crate::ingest::PcmClip;

/// CSV column order for [`write_csv`].
pub const CSV_HEADER: &str = "input_name,orig_bytes,chars_uncompressed,chars_compressed,\
segs_uncompressed,segs_compressed,compression_ratio,duration_s";

#[derive(Debug, Clone, PartialEq)]
pub struct StatsRecord {
    pub input_name: String,
    pub orig_bytes: usize,
    pub chars_uncompressed: usize,
    pub chars_compressed: usize,
    pub segs_uncompressed: usize,
    pub segs_compressed: usize,
    /// chars_compressed / chars_uncompressed.
    pub compression_ratio: f64,
    pub duration_s: Option<f64>,
}

/// Build both envelopes for a clip and record their sizes. Nothing is
/// segmented or written.
pub fn compute_stats(input_name: &str, clip: &PcmClip) -> Result<StatsRecord, FramingError> {
    let uncompressed = build_envelope(&clip.bytes, Mode::Uncompressed)?;
    let compressed = build_envelope(&clip.bytes, Mode::Compressed)?;
    let chars_uncompressed = uncompressed.char_count();
    let chars_compressed = compressed.char_count();
    Ok(StatsRecord {
        input_name: input_name.to_string(),
        orig_bytes: clip.bytes.len(),
        chars_uncompressed,
        chars_compressed,
        segs_uncompressed: uncompressed.seg_total(),
        segs_compressed: compressed.seg_total(),
        compression_ratio: chars_compressed as f64 / chars_uncompressed as f64,
        duration_s: clip.format.as_ref().map(|f| f.duration_s),
    })
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Write records as CSV: header row, comma separators, LF line endings.
pub fn write_csv<W: Write>(mut out: W, records: &[StatsRecord]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        let duration = r.duration_s.map(|d| format!("{d:.6}")).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{:.6},{}",
            csv_escape(&r.input_name),
            r.orig_bytes,
            r.chars_uncompressed,
            r.chars_compressed,
            r.segs_uncompressed,
            r.segs_compressed,
            r.compression_ratio,
            duration
        )?;
    }
    Ok(())
}
