//! Seeded speech-like test clips.
//!
//! Produces 8-bit mono PCM resembling a voiced utterance: a low fundamental
//! with a few decaying harmonics, gated by a syllable-rate envelope so the
//! signal alternates between bursts and near-silence. The sample
//! distribution is strongly peaked around the midpoint, which is what makes
//! real speech compress well and keeps these clips honest stand-ins for
//! recordings in the stats trends.

use std::f64::consts::TAU;

use crate::ingest::build_wav;
use crate::rng::SplitMix64;

/// Generate `duration_s` seconds of unsigned 8-bit mono samples.
pub fn samples(seed: u64, sample_rate: u32, duration_s: f64) -> Vec<u8> {
    let mut rng = SplitMix64::new(seed);
    let fundamental = 90.0 + rng.next_f64() * 80.0; // 90-170 Hz
    let syllable_rate = 2.0 + rng.next_f64() * 2.0; // 2-4 Hz
    let harmonic_phases: Vec<f64> = (0..4).map(|_| rng.next_f64() * TAU).collect();
    let envelope_phase = rng.next_f64() * TAU;

    let count = (sample_rate as f64 * duration_s).round() as usize;
    let norm: f64 = (1..=4).map(|k| 1.0 / k as f64).sum();
    (0..count)
        .map(|i| {
            let t = i as f64 / sample_rate as f64;
            let gate = (TAU / 2.0 * syllable_rate * t + envelope_phase)
                .sin()
                .max(0.0);
            let envelope = gate * gate;
            let tone: f64 = harmonic_phases
                .iter()
                .enumerate()
                .map(|(k, &phase)| {
                    let harmonic = (k + 1) as f64;
                    (TAU * fundamental * harmonic * t + phase).sin() / harmonic
                })
                .sum();
            let value = 128.0 + 0.55 * 127.0 * envelope * tone / norm;
            value.round().clamp(0.0, 255.0) as u8
        })
        .collect()
}

/// The same clip wrapped in a canonical WAV file.
pub fn wav_clip(seed: u64, sample_rate: u32, duration_s: f64) -> Vec<u8> {
    build_wav(sample_rate, 8, 1, &samples(seed, sample_rate, duration_s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_wav_format;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(samples(11, 8000, 0.5), samples(11, 8000, 0.5));
        assert_ne!(samples(11, 8000, 0.5), samples(12, 8000, 0.5));
    }

    #[test]
    fn sample_count_tracks_duration() {
        assert_eq!(samples(1, 8000, 1.0).len(), 8000);
        assert_eq!(samples(1, 8000, 2.5).len(), 20000);
        assert_eq!(samples(1, 16000, 0.25).len(), 4000);
    }

    #[test]
    fn wav_wrapper_declares_the_format() {
        let wav = wav_clip(5, 8000, 1.0);
        let fmt = parse_wav_format(&wav).unwrap();
        assert_eq!(fmt.sample_rate, 8000);
        assert_eq!(fmt.bits_per_sample, 8);
        assert_eq!(fmt.channels, 1);
        assert!((fmt.duration_s - 1.0).abs() < 1e-9);
    }

    #[test]
    fn distribution_is_peaked_not_flat() {
        // speech-like audio should spend much of its time near the midpoint
        let data = samples(3, 8000, 2.0);
        let near_mid = data.iter().filter(|&&b| (120..=136).contains(&b)).count() as f64;
        assert!(near_mid / data.len() as f64 > 0.3);
        // but it is a signal, not a constant
        assert!(data.iter().collect::<std::collections::BTreeSet<_>>().len() > 16);
    }
}
