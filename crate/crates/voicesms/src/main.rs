//! Thin CLI over the voicesms library.
//!
//! Exit codes: 0 success, 1 usage error, 2 pipeline or data error.

use std::collections::BTreeSet;
use std::error::Error;
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand};

use voicesms::framing::{
    build_envelope, read_segments_file, segment_message, write_segments_file, Mode,
};
use voicesms::ingest::{load_input, write_output};
use voicesms::stats::{compute_stats, write_csv};
use voicesms::{apply_channel, decode, ChannelScript};

#[derive(Parser)]
#[command(
    name = "voicesms",
    version,
    about = "Carry audio byte streams as SMS-sized text"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode an input file into a segments file
    Encode {
        /// Input file (a PCM WAV unless --raw)
        input: PathBuf,
        /// Treat the input as an arbitrary byte stream
        #[arg(long)]
        raw: bool,
        /// Skip Huffman compression
        #[arg(long)]
        no_compress: bool,
        /// Segments file to write
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decode a segments file back into the original bytes
    Decode {
        /// Segments file to read
        segments: PathBuf,
        /// Output file for the reconstructed bytes
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Perturb a segments file the way a lossy network would
    Channel {
        /// Segments file to read
        segments: PathBuf,
        /// Seed for the shuffle/duplicate choices
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Apply a seeded permutation
        #[arg(long)]
        shuffle: bool,
        /// Number of duplicates to append (chosen with replacement)
        #[arg(long, default_value_t = 0, value_name = "N")]
        dup: usize,
        /// Segment indices to delete, comma separated
        #[arg(long, value_delimiter = ',', value_name = "IDX")]
        drop: Vec<u16>,
        /// Perturbed segments file to write
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Report character and segment counts for both modes, as CSV
    Stats {
        /// Input files (PCM WAVs unless --raw)
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Treat inputs as arbitrary byte streams
        #[arg(long)]
        raw: bool,
        /// CSV file to write
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Box<dyn Error>> {
    match command {
        Command::Encode {
            input,
            raw,
            no_compress,
            output,
        } => {
            let clip = load_input(&input, raw)?;
            let mode = if no_compress {
                Mode::Uncompressed
            } else {
                Mode::Compressed
            };
            let envelope = build_envelope(&clip.bytes, mode)?;
            let segments = segment_message(&envelope);
            write_segments_file(&output, &segments)?;
            // ratio compares the two modes for this input
            let other_mode = match mode {
                Mode::Uncompressed => Mode::Compressed,
                Mode::Compressed => Mode::Uncompressed,
            };
            let other = build_envelope(&clip.bytes, other_mode)?;
            let (chars_compressed, chars_uncompressed) = match mode {
                Mode::Compressed => (envelope.char_count(), other.char_count()),
                Mode::Uncompressed => (other.char_count(), envelope.char_count()),
            };
            println!(
                "segments={} characters={} ratio={:.6}",
                segments.len(),
                envelope.char_count(),
                chars_compressed as f64 / chars_uncompressed as f64
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Decode { segments, output } => {
            let received = read_segments_file(&segments)?;
            let bytes = decode(&received)?;
            write_output(&bytes, &output)?;
            println!(
                "decoded {} bytes from {} segments",
                bytes.len(),
                received.len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Channel {
            segments,
            seed,
            shuffle,
            dup,
            drop,
            output,
        } => {
            let input = read_segments_file(&segments)?;
            let script = ChannelScript {
                seed,
                shuffle,
                duplicate_count: dup,
                drop_indices: drop.into_iter().collect::<BTreeSet<u16>>(),
            };
            let perturbed = apply_channel(&input, &script)?;
            write_segments_file(&output, &perturbed)?;
            println!("wrote {} segments (from {})", perturbed.len(), input.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats {
            inputs,
            raw,
            output,
        } => {
            let mut records = Vec::new();
            let mut failed = false;
            for input in &inputs {
                let result = load_input(input, raw)
                    .map_err(Box::<dyn Error>::from)
                    .and_then(|clip| {
                        compute_stats(&input.display().to_string(), &clip)
                            .map_err(Box::<dyn Error>::from)
                    });
                match result {
                    Ok(record) => records.push(record),
                    Err(err) => {
                        eprintln!("error: {}: {err}", input.display());
                        failed = true;
                    }
                }
            }
            let file = File::create(&output)?;
            write_csv(BufWriter::new(file), &records)?;
            println!("wrote {} of {} records", records.len(), inputs.len());
            Ok(if failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}
