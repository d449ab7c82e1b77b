//! Deterministic delivery perturbation for segment streams.
//!
//! Real SMS delivery can reorder and duplicate messages (and lose them);
//! this module replays those effects as a pure, seeded list transformation
//! so receiver reassembly can be exercised reproducibly. Segment contents
//! are never altered.

use std::collections::BTreeSet;

use crate::framing::SmsSegment;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChannelError {
    #[error("drop index {index} matches no segment in the stream")]
    UnknownDropIndex { index: u16 },
}

/// One channel run: drops, then duplicates, then an optional shuffle, all
/// driven by a single seed.
#[derive(Debug, Clone, Default)]
pub struct ChannelScript {
    pub seed: u64,
    pub shuffle: bool,
    /// Segments chosen with replacement and appended before the shuffle.
    pub duplicate_count: usize,
    pub drop_indices: BTreeSet<u16>,
}

/// Apply a script to a segment stream. Identical (script, input) pairs
/// produce identical outputs.
pub fn apply_channel(
    segments: &[SmsSegment],
    script: &ChannelScript,
) -> Result<Vec<SmsSegment>, ChannelError> {
    let present: BTreeSet<u16> = segments.iter().map(|s| s.index()).collect();
    for &index in &script.drop_indices {
        if !present.contains(&index) {
            return Err(ChannelError::UnknownDropIndex { index });
        }
    }

    let mut out: Vec<SmsSegment> = segments
        .iter()
        .filter(|s| !script.drop_indices.contains(&s.index()))
        .cloned()
        .collect();

    let mut rng = SplitMix64::new(script.seed);
    if !out.is_empty() {
        for _ in 0..script.duplicate_count {
            let pick = rng.next_below(out.len() as u64) as usize;
            out.push(out[pick].clone());
        }
    }
    if script.shuffle {
        rng.shuffle(&mut out);
    }
    Ok(out)
}
