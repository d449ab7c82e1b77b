//! Input acquisition: load audio (or arbitrary) files as byte streams and
//! write decoded bytes back out.
//!
//! The codec is byte-faithful over the whole file, so a WAV input keeps its
//! header inside the encoded payload and decodes back to a playable file.
//! WAV parsing only feeds the stats report; it accepts plain PCM
//! (RIFF + fmt + data, 8- or 16-bit) and skips any other chunk.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("file not found: {path}")]
    FileNotFound { path: PathBuf },
    #[error("empty input: {path}")]
    EmptyInput { path: PathBuf },
    #[error("malformed WAV: {reason}")]
    MalformedWav { reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// PCM format metadata pulled from a WAV header. Stats only; the codec
/// never looks at it.
#[derive(Debug, Clone, PartialEq)]
pub struct WavFormat {
    pub sample_rate: u32,
    pub bits_per_sample: u16,
    pub channels: u16,
    /// Derived: data bytes / (rate * channels * bytes per sample).
    pub duration_s: f64,
}

/// A loaded input: the exact file bytes plus optional format metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct PcmClip {
    pub bytes: Vec<u8>,
    pub format: Option<WavFormat>,
}

/// Read a file as a byte stream. With `raw` false the file must be a PCM
/// WAV and its header populates `format`; with `raw` true any non-empty
/// file is accepted verbatim.
pub fn load_input(path: &Path, raw: bool) -> Result<PcmClip, IngestError> {
    let bytes = fs::read(path).map_err(|e| {
        if e.kind() == io::ErrorKind::NotFound {
            IngestError::FileNotFound {
                path: path.to_path_buf(),
            }
        } else {
            IngestError::Io(e)
        }
    })?;
    if bytes.is_empty() {
        return Err(IngestError::EmptyInput {
            path: path.to_path_buf(),
        });
    }
    clip_from_bytes(bytes, raw)
}

/// [`load_input`] over an in-memory buffer.
pub fn clip_from_bytes(bytes: Vec<u8>, raw: bool) -> Result<PcmClip, IngestError> {
    if bytes.is_empty() {
        return Err(IngestError::EmptyInput {
            path: PathBuf::from("<memory>"),
        });
    }
    let format = if raw {
        None
    } else {
        Some(parse_wav_format(&bytes)?)
    };
    Ok(PcmClip { bytes, format })
}

/// Write decoded bytes to a file, byte-exact.
pub fn write_output(bytes: &[u8], path: &Path) -> Result<(), IngestError> {
    fs::write(path, bytes)?;
    Ok(())
}

fn le_u32(bytes: &[u8], at: usize) -> Option<u32> {
    bytes
        .get(at..at + 4)
        .map(|b| u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
}

fn le_u16(bytes: &[u8], at: usize) -> Option<u16> {
    bytes
        .get(at..at + 2)
        .map(|b| u16::from_le_bytes([b[0], b[1]]))
}

fn malformed(reason: impl Into<String>) -> IngestError {
    IngestError::MalformedWav {
        reason: reason.into(),
    }
}

/// Parse the RIFF/WAVE header of `bytes` and derive the clip duration.
pub fn parse_wav_format(bytes: &[u8]) -> Result<WavFormat, IngestError> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" {
        return Err(malformed("missing RIFF magic"));
    }
    if &bytes[8..12] != b"WAVE" {
        return Err(malformed("missing WAVE form type"));
    }

    let mut fmt: Option<(u32, u16, u16)> = None; // rate, bits, channels
    let mut data_len: Option<usize> = None;
    let mut at = 12;
    while at + 8 <= bytes.len() {
        let id = &bytes[at..at + 4];
        let size = le_u32(bytes, at + 4).unwrap() as usize;
        let body = at + 8;
        if body + size > bytes.len() {
            return Err(malformed(format!(
                "chunk {:?} declares {size} bytes past end of file",
                String::from_utf8_lossy(id)
            )));
        }
        match id {
            b"fmt " => {
                if size < 16 {
                    return Err(malformed("fmt chunk shorter than 16 bytes"));
                }
                let tag = le_u16(bytes, body).unwrap();
                if tag != 1 {
                    return Err(malformed(format!("non-PCM format tag {tag}")));
                }
                let channels = le_u16(bytes, body + 2).unwrap();
                let rate = le_u32(bytes, body + 4).unwrap();
                let bits = le_u16(bytes, body + 14).unwrap();
                if channels == 0 || rate == 0 {
                    return Err(malformed("zero channel count or sample rate"));
                }
                if bits != 8 && bits != 16 {
                    return Err(malformed(format!("unsupported bit depth {bits}")));
                }
                fmt = Some((rate, bits, channels));
            }
            b"data" => data_len = Some(size),
            _ => {} // stats never needs the other chunk types
        }
        // chunks are word-aligned; a final odd chunk may omit its pad byte
        at = body + size + size % 2;
    }

    let (sample_rate, bits_per_sample, channels) =
        fmt.ok_or_else(|| malformed("missing fmt chunk"))?;
    let data_len = data_len.ok_or_else(|| malformed("missing data chunk"))?;
    let bytes_per_second = sample_rate as f64 * channels as f64 * (bits_per_sample as f64 / 8.0);
    Ok(WavFormat {
        sample_rate,
        bits_per_sample,
        channels,
        duration_s: data_len as f64 / bytes_per_second,
    })
}

/// Assemble a canonical 44-byte-header PCM WAV around `data`.
pub fn build_wav(sample_rate: u32, bits_per_sample: u16, channels: u16, data: &[u8]) -> Vec<u8> {
    let block_align = channels * bits_per_sample / 8;
    let byte_rate = sample_rate * u32::from(block_align);
    let mut out = Vec::with_capacity(44 + data.len());
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data.len() as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // PCM
    out.extend_from_slice(&channels.to_le_bytes());
    out.extend_from_slice(&sample_rate.to_le_bytes());
    out.extend_from_slice(&byte_rate.to_le_bytes());
    out.extend_from_slice(&block_align.to_le_bytes());
    out.extend_from_slice(&bits_per_sample.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data.len() as u32).to_le_bytes());
    out.extend_from_slice(data);
    out
}
