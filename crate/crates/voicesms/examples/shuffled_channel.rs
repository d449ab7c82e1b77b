//! Push a message through simulated delivery faults: a seeded shuffle plus
//! duplicates still decodes, and a dropped segment is detected by index.
//!
//! ```bash
//! cargo run --example shuffled_channel
//! ```

use std::error::Error;

use voicesms::channel::{apply_channel, ChannelScript};
use voicesms::framing::Mode;

fn main() -> Result<(), Box<dyn Error>> {
    let payload: Vec<u8> = (0..2500u32).map(|i| (i % 251) as u8).collect();
    let segments = voicesms::encode(&payload, Mode::Compressed)?;
    println!("message: {} segments", segments.len());

    // reordering and duplication are harmless
    let rough = ChannelScript {
        seed: 99,
        shuffle: true,
        duplicate_count: 4,
        ..Default::default()
    };
    let delivered = apply_channel(&segments, &rough)?;
    let order: Vec<u16> = delivered.iter().map(|s| s.index()).collect();
    println!("delivered order with 4 duplicates: {order:?}");
    assert_eq!(voicesms::decode(&delivered)?, payload);
    println!("decoded fine despite the mess");

    // loss is detected, not papered over
    let lossy = ChannelScript {
        drop_indices: [2u16, 5].into_iter().collect(),
        ..Default::default()
    };
    let delivered = apply_channel(&segments, &lossy)?;
    match voicesms::decode(&delivered) {
        Err(e) => println!("dropping segments 2 and 5 reports: {e}"),
        Ok(_) => unreachable!("decode cannot succeed with segments missing"),
    }
    Ok(())
}
