//! Regenerates the shipped reference fixtures (carrier image, watermark,
//! key file) from their deterministic definitions.

use std::path::Path;

use ciprng::image::{encode_pbm, encode_pgm};
use ciprng::watermark::{reference_carrier, reference_key, reference_watermark, WatermarkMode};

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("assets");
    std::fs::create_dir_all(&dir)?;
    std::fs::write(
        dir.join("reference_carrier.pgm"),
        encode_pgm(&reference_carrier()),
    )?;
    std::fs::write(
        dir.join("reference_watermark.pbm"),
        encode_pbm(&reference_watermark()),
    )?;
    let key = reference_key(WatermarkMode::Unauthenticated);
    let words: Vec<String> = key.words().iter().map(|w| format!("{w:016x}")).collect();
    std::fs::write(dir.join("reference.key"), words.join("\n") + "\n")?;
    println!("fixtures written to {}", dir.display());
    Ok(())
}
