//! 8-bit grayscale images, binary bit matrices, and lossless binary
//! PGM (P5) / PBM (P4) readers and writers.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Row-major 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} image needs {} pixels, got {}",
                width,
                height,
                width * height,
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        Self {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, v: u8) {
        self.pixels[y * self.width + x] = v;
    }
}

/// Row-major binary matrix; the watermark payload type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BitMatrix {
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 || bits.len() != width * height {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} bits, got {}",
                width,
                height,
                width * height,
                bits.len()
            )));
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    pub fn filled(width: usize, height: usize, value: bool) -> Self {
        Self {
            width,
            height,
            bits: vec![value; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.bits
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, v: bool) {
        self.bits[y * self.width + x] = v;
    }
}

/// Pulls the next whitespace-delimited ASCII token, skipping `#` comments.
fn next_token(data: &[u8], pos: &mut usize) -> Result<String> {
    loop {
        while *pos < data.len() && data[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < data.len() && data[*pos] == b'#' {
            while *pos < data.len() && data[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    if *pos >= data.len() {
        return Err(Error::UnexpectedEndOfData);
    }
    let start = *pos;
    while *pos < data.len() && !data[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    Ok(String::from_utf8_lossy(&data[start..*pos]).into_owned())
}

fn parse_dim(tok: &str) -> Result<usize> {
    tok.parse::<usize>()
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(|| Error::MalformedHeader(format!("bad dimension {tok:?}")))
}

/// Decodes a binary PGM (P5, maxval 255) byte buffer.
pub fn decode_pgm(data: &[u8]) -> Result<GrayImage> {
    let mut pos = 0usize;
    let magic = next_token(data, &mut pos)?;
    if magic != "P5" {
        return Err(Error::UnsupportedFormat(format!(
            "expected binary PGM magic P5, got {magic:?}"
        )));
    }
    let width = parse_dim(&next_token(data, &mut pos)?)?;
    let height = parse_dim(&next_token(data, &mut pos)?)?;
    let maxval = next_token(data, &mut pos)?;
    if maxval != "255" {
        return Err(Error::UnsupportedFormat(format!(
            "unsupported maxval {maxval}, only 255"
        )));
    }
    // Exactly one whitespace byte separates the header from the payload.
    pos += 1;
    let need = width * height;
    if pos + need > data.len() {
        return Err(Error::UnexpectedEndOfData);
    }
    GrayImage::new(width, height, data[pos..pos + need].to_vec())
}

/// Encodes as binary PGM (P5, maxval 255) with a canonical header, so
/// write-then-read round trips are byte-exact.
pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}

/// Decodes a binary PBM (P4) byte buffer. Set bits read as `true`.
pub fn decode_pbm(data: &[u8]) -> Result<BitMatrix> {
    let mut pos = 0usize;
    let magic = next_token(data, &mut pos)?;
    if magic != "P4" {
        return Err(Error::UnsupportedFormat(format!(
            "expected binary PBM magic P4, got {magic:?}"
        )));
    }
    let width = parse_dim(&next_token(data, &mut pos)?)?;
    let height = parse_dim(&next_token(data, &mut pos)?)?;
    pos += 1;
    let row_bytes = width.div_ceil(8);
    if pos + row_bytes * height > data.len() {
        return Err(Error::UnexpectedEndOfData);
    }
    let mut bits = Vec::with_capacity(width * height);
    for y in 0..height {
        let row = &data[pos + y * row_bytes..pos + (y + 1) * row_bytes];
        for x in 0..width {
            bits.push(row[x / 8] >> (7 - x % 8) & 1 == 1);
        }
    }
    BitMatrix::new(width, height, bits)
}

/// Encodes as binary PBM (P4), rows padded to byte boundaries.
pub fn encode_pbm(m: &BitMatrix) -> Vec<u8> {
    let mut out = format!("P4\n{} {}\n", m.width, m.height).into_bytes();
    let row_bytes = m.width.div_ceil(8);
    for y in 0..m.height {
        let mut row = vec![0u8; row_bytes];
        for x in 0..m.width {
            if m.get(x, y) {
                row[x / 8] |= 0x80 >> (x % 8);
            }
        }
        out.extend_from_slice(&row);
    }
    out
}

pub fn read_pgm(path: &Path) -> Result<GrayImage> {
    let mut data = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut data)?;
    decode_pgm(&data)
}

pub fn write_pgm(path: &Path, img: &GrayImage) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(&encode_pgm(img))?;
    Ok(())
}

pub fn read_pbm(path: &Path) -> Result<BitMatrix> {
    let mut data = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut data)?;
    decode_pbm(&data)
}

pub fn write_pbm(path: &Path, m: &BitMatrix) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(&encode_pbm(m))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgm_round_trip() {
        let img = GrayImage::new(3, 2, vec![0, 10, 255, 128, 64, 32]).unwrap();
        let bytes = encode_pgm(&img);
        assert_eq!(decode_pgm(&bytes).unwrap(), img);
        // Re-encoding is byte-identical.
        assert_eq!(encode_pgm(&decode_pgm(&bytes).unwrap()), bytes);
    }

    #[test]
    fn pgm_header_comments() {
        let mut bytes = b"P5\n# a comment\n2 1\n255\n".to_vec();
        bytes.extend_from_slice(&[7, 9]);
        let img = decode_pgm(&bytes).unwrap();
        assert_eq!(img.pixels(), &[7, 9]);
    }

    #[test]
    fn ascii_variants_rejected() {
        let err = decode_pgm(b"P2\n2 2\n255\n0 0 0 0\n").unwrap_err();
        assert!(err.to_string().contains("unsupported format"));
        let err = decode_pbm(b"P1\n2 2\n0 0 0 0\n").unwrap_err();
        assert!(err.to_string().contains("unsupported format"));
    }

    #[test]
    fn truncated_payload_rejected() {
        let bytes = b"P5\n4 4\n255\nabc".to_vec();
        let err = decode_pgm(&bytes).unwrap_err();
        assert!(err.to_string().contains("unexpected end of data"));
    }

    #[test]
    fn nonstandard_maxval_rejected() {
        assert!(decode_pgm(b"P5\n1 1\n65535\n\x00\x00").is_err());
    }

    #[test]
    fn pbm_round_trip_with_row_padding() {
        // Width 10 forces 2 bytes per row with 6 padding bits.
        let bits: Vec<bool> = (0..30).map(|i| i % 3 == 0).collect();
        let m = BitMatrix::new(10, 3, bits).unwrap();
        let bytes = encode_pbm(&m);
        assert_eq!(decode_pbm(&bytes).unwrap(), m);
        assert_eq!(encode_pbm(&decode_pbm(&bytes).unwrap()), bytes);
    }

    #[test]
    fn dimension_validation() {
        assert!(GrayImage::new(2, 2, vec![0; 3]).is_err());
        assert!(BitMatrix::new(0, 2, vec![]).is_err());
    }
}
