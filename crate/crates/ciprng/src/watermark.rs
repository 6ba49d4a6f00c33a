//! Keyed LSB watermarking: split the carrier into most- and least-
//! significant bit planes, mix the watermark with a keyed chaotic
//! keystream, and scatter it over keyed LSC positions. In authenticated
//! mode both the keystream and the positions are bound to a digest of
//! the MSC planes, so any carrier alteration scrambles extraction.

use crate::bits::BitSequence;
use crate::engines::{stream_bits, FpgaCiprng, FpgaProfile};
use crate::error::{Error, Result};
use crate::image::{BitMatrix, GrayImage};
use crate::xorshift::DEFAULT_TRIPLE;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WatermarkMode {
    Unauthenticated,
    Authenticated,
}

/// Seed material plus embedding geometry.
#[derive(Debug, Clone)]
pub struct EmbeddingKey {
    words: Vec<u64>,
    pub mode: WatermarkMode,
    pub lsc_bits: u32,
}

pub const DEFAULT_LSC_BITS: u32 = 3;

impl EmbeddingKey {
    pub fn new(words: Vec<u64>, mode: WatermarkMode, lsc_bits: u32) -> Result<Self> {
        if !(1..=4).contains(&lsc_bits) {
            return Err(Error::InvalidLscBits(lsc_bits));
        }
        if words.is_empty() {
            return Err(Error::InvalidKeyFile("key needs at least one word".into()));
        }
        Ok(Self {
            words,
            mode,
            lsc_bits,
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

/// The high `8 - lsc_bits` bit planes of a carrier, row-major,
/// most significant bit first within each pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MscDescriptor {
    pub lsc_bits: u32,
    pub bits: BitSequence,
}

/// Ordered LSC indices receiving the watermark bits. Index `u` maps to
/// pixel `u / lsc_bits` and, within the pixel, the planes from most to
/// least significant of the low group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LscPlan {
    pub indices: Vec<usize>,
}

fn lsc_plane(u: usize, lsc_bits: u32) -> (usize, u32) {
    let pixel = u / lsc_bits as usize;
    let j = (u % lsc_bits as usize) as u32;
    (pixel, lsc_bits - 1 - j)
}

/// Splits a carrier into its MSC descriptor and LSC bit sequence.
pub fn decompose_planes(img: &GrayImage, lsc_bits: u32) -> Result<(MscDescriptor, BitSequence)> {
    if !(1..=4).contains(&lsc_bits) {
        return Err(Error::InvalidLscBits(lsc_bits));
    }
    let mut msc = BitSequence::with_capacity(img.pixels().len() * (8 - lsc_bits as usize));
    let mut lsc = BitSequence::with_capacity(img.pixels().len() * lsc_bits as usize);
    for &p in img.pixels() {
        msc.push_word((p >> lsc_bits) as u64, 8 - lsc_bits as usize);
        lsc.push_word((p & ((1 << lsc_bits) - 1)) as u64, lsc_bits as usize);
    }
    Ok((
        MscDescriptor {
            lsc_bits,
            bits: msc,
        },
        lsc,
    ))
}

/// Reassembles a carrier from its planes; inverse of [`decompose_planes`].
pub fn recompose_planes(
    width: usize,
    height: usize,
    msc: &MscDescriptor,
    lsc: &BitSequence,
) -> Result<GrayImage> {
    let lb = msc.lsc_bits as usize;
    let hb = 8 - lb;
    if msc.bits.len() != width * height * hb || lsc.len() != width * height * lb {
        return Err(Error::DimensionMismatch(
            "plane lengths do not match image dimensions".into(),
        ));
    }
    let pixels = (0..width * height)
        .map(|i| {
            let hi = msc.bits.word_at(i * hb, hb) as u8;
            let lo = lsc.word_at(i * lb, lb) as u8;
            hi << lb | lo
        })
        .collect();
    GrayImage::new(width, height, pixels)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// 64-bit FNV-1a over the packed MSC bit stream.
fn msc_digest(msc: &MscDescriptor) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in msc.bits.to_bytes_msb() {
        h ^= byte as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// Purpose tags keep the mixing keystream and the position stream
/// independent even though both derive from the same key material.
const TAG_MIX: u64 = 0x006D_6978;
const TAG_PLAN: u64 = 0x706C_616E;

fn keyed_generator(
    key: &EmbeddingKey,
    msc: Option<&MscDescriptor>,
    tag: u64,
) -> Result<FpgaCiprng> {
    let digest = match key.mode {
        WatermarkMode::Unauthenticated => 0,
        WatermarkMode::Authenticated => msc_digest(msc.ok_or(Error::MissingMsc)?),
    };
    let w = |i: usize| -> u64 {
        let base = key
            .words
            .get(i)
            .copied()
            .unwrap_or_else(|| splitmix64(key.words[0].wrapping_add(i as u64)));
        splitmix64(
            base ^ digest.rotate_left(21 * i as u32) ^ tag.wrapping_mul(0x2545_F491_4F6C_DD1D),
        )
    };
    let nonzero = |v: u64| if v == 0 { 0x9E37_79B9_7F4A_7C15 } else { v };
    let profile = FpgaProfile {
        xs1_seed: nonzero(w(0)),
        xs2_seed: nonzero(w(1)),
        triple: DEFAULT_TRIPLE,
        bbs_state: 2,
        bbs_modulus: crate::bbs::DEFAULT_MODULUS,
        z0: 0,
    };
    let mut g = FpgaCiprng::from_sources(
        profile.z0,
        crate::xorshift::XorshiftState::new(profile.xs1_seed, profile.triple)?.into(),
        crate::xorshift::XorshiftState::new(profile.xs2_seed, profile.triple)?.into(),
        crate::source::EntropySource::Bbs {
            state: crate::bbs::BbsState::from_seed(w(2), profile.bbs_modulus)?,
            lsb_bits: 4,
        },
    );
    // Discard a short warm-up so nearby seeds decorrelate.
    for _ in 0..8 {
        g.next_word()?;
    }
    Ok(g)
}

fn keystream(key: &EmbeddingKey, msc: Option<&MscDescriptor>, n: usize) -> Result<BitSequence> {
    let mut g = keyed_generator(key, msc, TAG_MIX)?;
    stream_bits(&mut g, n)
}

fn mix_bits(
    bits: &BitSequence,
    key: &EmbeddingKey,
    msc: Option<&MscDescriptor>,
) -> Result<BitSequence> {
    let mask = keystream(key, msc, bits.len())?;
    Ok(bits.iter().zip(mask.iter()).map(|(b, m)| b ^ m).collect())
}

/// Mixes (or, applied twice, unmixes) a watermark with the keyed
/// keystream: componentwise `x ^ s` steps over the flattened bits.
pub fn mix_watermark(
    wm: &BitMatrix,
    key: &EmbeddingKey,
    msc: Option<&MscDescriptor>,
) -> Result<BitSequence> {
    mix_bits(&BitSequence::new(wm.bits().to_vec()), key, msc)
}

/// Draws `count` distinct LSC indices from the keyed stream, reducing
/// 32-bit words modulo `total_lsc` and skipping repeats.
pub fn select_positions(
    key: &EmbeddingKey,
    msc: Option<&MscDescriptor>,
    count: usize,
    total_lsc: usize,
) -> Result<LscPlan> {
    if count > total_lsc {
        return Err(Error::CountExceedsTotal {
            count,
            total: total_lsc,
        });
    }
    let mut g = keyed_generator(key, msc, TAG_PLAN)?;
    let mut taken = vec![false; total_lsc];
    let mut indices = Vec::with_capacity(count);
    while indices.len() < count {
        // 32 bits = two generator blocks per drawn position.
        let word = stream_bits(&mut g, 32)?.word_at(0, 32);
        let idx = (word % total_lsc as u64) as usize;
        if !taken[idx] {
            taken[idx] = true;
            indices.push(idx);
        }
    }
    Ok(LscPlan { indices })
}

/// Embeds the watermark: each planned LSC is substituted by the
/// corresponding mixed-watermark bit. MSC planes are untouched.
pub fn embed(cover: &GrayImage, wm: &BitMatrix, key: &EmbeddingKey) -> Result<GrayImage> {
    let total_lsc = cover.pixels().len() * key.lsc_bits as usize;
    let wm_bits = wm.bits().len();
    if wm_bits > total_lsc {
        return Err(Error::WatermarkTooLarge { wm_bits, total_lsc });
    }
    let msc = match key.mode {
        WatermarkMode::Authenticated => Some(decompose_planes(cover, key.lsc_bits)?.0),
        WatermarkMode::Unauthenticated => None,
    };
    let mixed = mix_watermark(wm, key, msc.as_ref())?;
    let plan = select_positions(key, msc.as_ref(), wm_bits, total_lsc)?;
    let mut stego = cover.clone();
    for (k, &u) in plan.indices.iter().enumerate() {
        let (pixel, plane) = lsc_plane(u, key.lsc_bits);
        let p = stego.pixels()[pixel];
        let bit = 1u8 << plane;
        stego.pixels_mut()[pixel] = if mixed.get(k) { p | bit } else { p & !bit };
    }
    Ok(stego)
}

/// Extracts a `width x height` watermark: regenerates the plan (from the
/// stego MSCs in authenticated mode), reads the planned LSCs, unmixes.
pub fn extract(
    stego: &GrayImage,
    key: &EmbeddingKey,
    width: usize,
    height: usize,
) -> Result<BitMatrix> {
    let total_lsc = stego.pixels().len() * key.lsc_bits as usize;
    let wm_bits = width * height;
    if wm_bits > total_lsc {
        return Err(Error::WatermarkTooLarge { wm_bits, total_lsc });
    }
    let msc = match key.mode {
        WatermarkMode::Authenticated => Some(decompose_planes(stego, key.lsc_bits)?.0),
        WatermarkMode::Unauthenticated => None,
    };
    let plan = select_positions(key, msc.as_ref(), wm_bits, total_lsc)?;
    let mixed: BitSequence = plan
        .indices
        .iter()
        .map(|&u| {
            let (pixel, plane) = lsc_plane(u, key.lsc_bits);
            stego.pixels()[pixel] >> plane & 1 == 1
        })
        .collect();
    let bits = mix_bits(&mixed, key, msc.as_ref())?;
    BitMatrix::new(width, height, bits.as_slice().to_vec())
}

/// Percentage of equal bits between two same-shaped matrices.
pub fn similarity(a: &BitMatrix, b: &BitMatrix) -> Result<f64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    let equal = a
        .bits()
        .iter()
        .zip(b.bits())
        .filter(|(x, y)| x == y)
        .count();
    Ok(100.0 * equal as f64 / a.bits().len() as f64)
}

/// Verdict threshold from the extraction decision rule: at or below 50%
/// similarity the medium reads as not watermarked.
pub const WATERMARK_PRESENT_THRESHOLD: f64 = 50.0;

/// Decision rule for a similarity percentage: above the threshold the
/// medium is judged watermarked.
pub fn is_watermarked(similarity_pct: f64) -> bool {
    similarity_pct > WATERMARK_PRESENT_THRESHOLD
}

/// Deterministic 256x256 synthetic carrier: a diagonal gradient with a
/// hashed low-amplitude texture, so the low planes carry variation while
/// the image stays locally smooth.
pub fn reference_carrier() -> GrayImage {
    let mut pixels = Vec::with_capacity(256 * 256);
    for y in 0..256usize {
        for x in 0..256usize {
            let base = ((x + y) / 2) as i32;
            let h = splitmix64(((y as u64) << 32 | x as u64) ^ 0xC0FF_EE00);
            let texture = (h & 0x7) as i32 - 4;
            pixels.push((base + texture).clamp(0, 255) as u8);
        }
    }
    GrayImage::new(256, 256, pixels).expect("fixed dimensions")
}

/// Deterministic 64x64 reference watermark: block checkerboard with a
/// hashed overlay.
pub fn reference_watermark() -> BitMatrix {
    let mut bits = Vec::with_capacity(64 * 64);
    for y in 0..64usize {
        for x in 0..64usize {
            let checker = (x / 8 + y / 8) % 2 == 0;
            let sparkle = splitmix64((x as u64) << 32 | y as u64).is_multiple_of(5);
            bits.push(checker ^ sparkle);
        }
    }
    BitMatrix::new(64, 64, bits).expect("fixed dimensions")
}

/// The fixed key used by the robustness walkthroughs.
pub fn reference_key(mode: WatermarkMode) -> EmbeddingKey {
    EmbeddingKey::new(
        vec![
            0x0DD0_BA11_5EED_0001,
            0x0DD0_BA11_5EED_0002,
            0x0DD0_BA11_5EED_0003,
        ],
        mode,
        DEFAULT_LSC_BITS,
    )
    .expect("static key material")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cover() -> GrayImage {
        let pixels = (0..64u32).map(|i| (i * 37 % 256) as u8).collect();
        GrayImage::new(8, 8, pixels).unwrap()
    }

    fn small_wm() -> BitMatrix {
        BitMatrix::new(4, 4, (0..16).map(|i| i % 3 == 0).collect()).unwrap()
    }

    fn key(mode: WatermarkMode) -> EmbeddingKey {
        EmbeddingKey::new(vec![0xABCD, 0x1234], mode, 3).unwrap()
    }

    #[test]
    fn plane_split_example() {
        let img = GrayImage::new(1, 1, vec![0b1011_0101]).unwrap();
        let (msc, lsc) = decompose_planes(&img, 3).unwrap();
        assert_eq!(lsc.to_string(), "101");
        assert_eq!(msc.bits.to_string(), "10110");
    }

    #[test]
    fn zero_image_planes() {
        let img = GrayImage::filled(4, 4, 0);
        let (msc, lsc) = decompose_planes(&img, 3).unwrap();
        assert!(msc.bits.iter().all(|b| !b));
        assert!(lsc.iter().all(|b| !b));
    }

    #[test]
    fn planes_recompose_exactly() {
        let img = small_cover();
        for lsc_bits in 1..=4 {
            let (msc, lsc) = decompose_planes(&img, lsc_bits).unwrap();
            let back = recompose_planes(8, 8, &msc, &lsc).unwrap();
            assert_eq!(back, img);
        }
    }

    #[test]
    fn mixing_is_involution() {
        for mode in [WatermarkMode::Unauthenticated, WatermarkMode::Authenticated] {
            let key = key(mode);
            let (msc, _) = decompose_planes(&small_cover(), 3).unwrap();
            let wm = small_wm();
            let mixed = mix_watermark(&wm, &key, Some(&msc)).unwrap();
            let mixed_m = BitMatrix::new(4, 4, mixed.as_slice().to_vec()).unwrap();
            let back = mix_watermark(&mixed_m, &key, Some(&msc)).unwrap();
            assert_eq!(back.as_slice(), wm.bits());
        }
    }

    #[test]
    fn authenticated_mix_requires_msc() {
        let key = key(WatermarkMode::Authenticated);
        assert!(matches!(
            mix_watermark(&small_wm(), &key, None),
            Err(Error::MissingMsc)
        ));
    }

    #[test]
    fn msc_sensitivity_of_mixing() {
        // Flipping one MSC bit re-keys the stream; the two mixed outputs
        // should agree on roughly half of a long watermark.
        let key = key(WatermarkMode::Authenticated);
        let wm = BitMatrix::new(100, 100, (0..10_000).map(|i| i % 7 < 3).collect()).unwrap();
        let cover = GrayImage::filled(100, 100, 0b1010_1010);
        let (mut msc, _) = decompose_planes(&cover, 3).unwrap();
        let a = mix_watermark(&wm, &key, Some(&msc)).unwrap();
        let flipped = !msc.bits.get(777);
        let mut bits: Vec<bool> = msc.bits.as_slice().to_vec();
        bits[777] = flipped;
        msc.bits = BitSequence::new(bits);
        let b = mix_watermark(&wm, &key, Some(&msc)).unwrap();
        let agree = a.iter().zip(b.iter()).filter(|(x, y)| x == y).count();
        let pct = 100.0 * agree as f64 / 10_000.0;
        assert!((45.0..=55.0).contains(&pct), "agreement {pct}%");
    }

    #[test]
    fn plan_is_deterministic_and_distinct() {
        let key = key(WatermarkMode::Unauthenticated);
        let a = select_positions(&key, None, 100, 192).unwrap();
        let b = select_positions(&key, None, 100, 192).unwrap();
        assert_eq!(a, b);
        let mut seen = [false; 192];
        for &u in &a.indices {
            assert!(u < 192);
            assert!(!seen[u]);
            seen[u] = true;
        }
    }

    #[test]
    fn full_plan_is_permutation() {
        let key = key(WatermarkMode::Unauthenticated);
        let plan = select_positions(&key, None, 192, 192).unwrap();
        let mut idx: Vec<usize> = plan.indices.clone();
        idx.sort_unstable();
        assert_eq!(idx, (0..192).collect::<Vec<_>>());
    }

    #[test]
    fn empty_plan() {
        let key = key(WatermarkMode::Unauthenticated);
        assert!(select_positions(&key, None, 0, 10)
            .unwrap()
            .indices
            .is_empty());
        assert!(select_positions(&key, None, 11, 10).is_err());
    }

    #[test]
    fn round_trip_both_modes() {
        for mode in [WatermarkMode::Unauthenticated, WatermarkMode::Authenticated] {
            let key = key(mode);
            let cover = small_cover();
            let wm = small_wm();
            let stego = embed(&cover, &wm, &key).unwrap();
            let got = extract(&stego, &key, 4, 4).unwrap();
            assert_eq!(got, wm);
        }
    }

    #[test]
    fn embedding_the_carriers_own_bits_is_identity() {
        // Extracting first yields the watermark whose mixed bits equal
        // the LSCs already sitting at the planned positions, so
        // re-embedding it leaves the image untouched.
        for mode in [WatermarkMode::Unauthenticated, WatermarkMode::Authenticated] {
            let key = key(mode);
            let cover = small_cover();
            let wm = extract(&cover, &key, 4, 4).unwrap();
            let stego = embed(&cover, &wm, &key).unwrap();
            assert_eq!(stego, cover);
        }
    }

    #[test]
    fn independent_uniform_matrices_sit_near_half() {
        let mk = |salt: u64| -> BitMatrix {
            let bits = (0..10_000)
                .map(|i| splitmix64(i as u64 ^ salt) & 1 == 1)
                .collect();
            BitMatrix::new(100, 100, bits).unwrap()
        };
        let pct = similarity(&mk(0xAAAA), &mk(0x5555)).unwrap();
        assert!((48.0..=52.0).contains(&pct), "similarity {pct}%");
    }

    #[test]
    fn embedding_preserves_msc() {
        let key = key(WatermarkMode::Authenticated);
        let cover = small_cover();
        let stego = embed(&cover, &small_wm(), &key).unwrap();
        let (m0, _) = decompose_planes(&cover, 3).unwrap();
        let (m1, _) = decompose_planes(&stego, 3).unwrap();
        assert_eq!(m0, m1);
        // And the per-pixel change is bounded by the LSC span.
        for (a, b) in cover.pixels().iter().zip(stego.pixels()) {
            assert!((*a as i16 - *b as i16).unsigned_abs() < 8);
        }
    }

    #[test]
    fn unplanned_lsc_flip_changes_at_most_one_bit() {
        let key = key(WatermarkMode::Unauthenticated);
        let cover = small_cover();
        let wm = small_wm();
        let mut stego = embed(&cover, &wm, &key).unwrap();
        // Flip the lowest bit of pixel 0; whether or not it was planned,
        // at most one extracted bit may differ.
        let p = stego.pixels()[0];
        stego.pixels_mut()[0] = p ^ 1;
        let got = extract(&stego, &key, 4, 4).unwrap();
        let diff = got
            .bits()
            .iter()
            .zip(wm.bits())
            .filter(|(a, b)| a != b)
            .count();
        assert!(diff <= 1);
    }

    #[test]
    fn verdict_threshold() {
        assert!(!is_watermarked(50.0));
        assert!(!is_watermarked(43.2));
        assert!(is_watermarked(50.01));
        assert!(is_watermarked(96.0));
    }

    #[test]
    fn similarity_extremes() {
        let a = BitMatrix::new(4, 4, vec![true; 16]).unwrap();
        let b = BitMatrix::new(4, 4, vec![false; 16]).unwrap();
        assert_eq!(similarity(&a, &a).unwrap(), 100.0);
        assert_eq!(similarity(&a, &b).unwrap(), 0.0);
        let c = BitMatrix::new(2, 2, vec![true; 4]).unwrap();
        assert!(similarity(&a, &c).is_err());
    }

    #[test]
    fn reference_fixtures_are_stable() {
        let img = reference_carrier();
        assert_eq!((img.width(), img.height()), (256, 256));
        assert_eq!(img.pixels(), reference_carrier().pixels());
        let wm = reference_watermark();
        assert_eq!((wm.width(), wm.height()), (64, 64));
        // Watermark is reasonably balanced.
        let ones = wm.bits().iter().filter(|&&b| b).count();
        assert!(ones > 1000 && ones < 3000, "ones = {ones}");
    }
}
