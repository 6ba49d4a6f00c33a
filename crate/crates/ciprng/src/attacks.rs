//! Robustness attacks applied to stego images: centered crop blanking,
//! rotate-and-rotate-back, a JPEG-style blockwise quantization pass, and
//! seeded additive Gaussian noise. Every attack preserves dimensions and
//! is deterministic given its parameters.

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::xorshift::XorshiftState;

/// Attack parameters, one variant per attack family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttackSpec {
    /// Blank a `size x size` square (anchor defaults to centered).
    Crop {
        size: usize,
        anchor: Option<(usize, usize)>,
    },
    /// Rotate by the angle in degrees, then back.
    Rotation { degrees: f64 },
    /// Blockwise DCT quantization with the given table scale.
    Jpeg { level: u32 },
    /// Additive noise with the given standard deviation.
    Gaussian { sigma: f64, noise_seed: u64 },
}

impl AttackSpec {
    pub fn apply(&self, img: &GrayImage) -> Result<GrayImage> {
        match *self {
            AttackSpec::Crop { size, anchor } => crop(img, size, anchor),
            AttackSpec::Rotation { degrees } => Ok(rotate_roundtrip(img, degrees)),
            AttackSpec::Jpeg { level } => Ok(jpeg_like(img, level)),
            AttackSpec::Gaussian { sigma, noise_seed } => gaussian_noise(img, sigma, noise_seed),
        }
    }
}

/// Sets the `size x size` square at `anchor` (top-left corner; centered
/// when absent) to intensity 0. All other pixels are untouched.
pub fn crop(img: &GrayImage, size: usize, anchor: Option<(usize, usize)>) -> Result<GrayImage> {
    let side = img.width().min(img.height());
    if size > side {
        return Err(Error::CropTooLarge { size, side });
    }
    let (ax, ay) = anchor.unwrap_or(((img.width() - size) / 2, (img.height() - size) / 2));
    if ax + size > img.width() || ay + size > img.height() {
        return Err(Error::CropTooLarge { size, side });
    }
    let mut out = img.clone();
    for y in ay..ay + size {
        for x in ax..ax + size {
            out.set(x, y, 0);
        }
    }
    Ok(out)
}

/// One rotation by `degrees` about the image center `(w/2, h/2)`,
/// nearest-neighbor resampling, out-of-range samples reading 0.
///
/// Nearest-neighbor keeps the round trip value-preserving wherever the
/// rotated lattice maps back onto itself; interpolating resamplers blur
/// the low bit planes so badly that every watermark trend saturates at
/// the 50% noise floor.
pub fn rotate(img: &GrayImage, degrees: f64) -> GrayImage {
    let (w, h) = (img.width(), img.height());
    let (cx, cy) = (w as f64 / 2.0, h as f64 / 2.0);
    let (sin, cos) = degrees.to_radians().sin_cos();
    let mut out = GrayImage::filled(w, h, 0);
    for y in 0..h {
        for x in 0..w {
            // Inverse mapping: rotate the output coordinate backwards.
            let dx = x as f64 - cx;
            let dy = y as f64 - cy;
            let sx = (cx + cos * dx + sin * dy).round();
            let sy = (cy - sin * dx + cos * dy).round();
            if sx >= 0.0 && sy >= 0.0 && (sx as usize) < w && (sy as usize) < h {
                out.set(x, y, img.get(sx as usize, sy as usize));
            }
        }
    }
    out
}

/// Rotation round trip `r_{-theta} . r_theta`.
pub fn rotate_roundtrip(img: &GrayImage, theta_degrees: f64) -> GrayImage {
    if theta_degrees == 0.0 {
        return img.clone();
    }
    rotate(&rotate(img, theta_degrees), -theta_degrees)
}

/// Standard luminance quantization table, row-major.
const LUMA_QUANT: [f64; 64] = [
    16.0, 11.0, 10.0, 16.0, 24.0, 40.0, 51.0, 61.0, //
    12.0, 12.0, 14.0, 19.0, 26.0, 58.0, 60.0, 55.0, //
    14.0, 13.0, 16.0, 24.0, 40.0, 57.0, 69.0, 56.0, //
    14.0, 17.0, 22.0, 29.0, 51.0, 87.0, 80.0, 62.0, //
    18.0, 22.0, 37.0, 56.0, 68.0, 109.0, 103.0, 77.0, //
    24.0, 35.0, 55.0, 64.0, 81.0, 104.0, 113.0, 92.0, //
    49.0, 64.0, 78.0, 87.0, 103.0, 121.0, 120.0, 101.0, //
    72.0, 92.0, 95.0, 98.0, 112.0, 100.0, 103.0, 99.0,
];

fn dct_cos_table() -> [[f64; 8]; 8] {
    let mut t = [[0.0; 8]; 8];
    for (x, row) in t.iter_mut().enumerate() {
        for (u, v) in row.iter_mut().enumerate() {
            *v = (((2 * x + 1) as f64) * u as f64 * std::f64::consts::PI / 16.0).cos();
        }
    }
    t
}

fn c(u: usize) -> f64 {
    if u == 0 {
        std::f64::consts::FRAC_1_SQRT_2
    } else {
        1.0
    }
}

/// JPEG-style degradation: per 8x8 block, forward DCT, quantize by the
/// luminance table scaled by `level`, dequantize, inverse DCT, round
/// and clamp. The scale is normalized so level 100 applies the table at
/// full strength (step `max(1, round(q * level / 100))`), which makes
/// level 1 near-lossless and degradation grow smoothly with the level.
/// The transform runs on raw intensities (no level shift), so an
/// all-zero image has an exactly-zero transform at every level. Images
/// whose sides are not multiples of 8 are padded by edge replication
/// for the transform.
pub fn jpeg_like(img: &GrayImage, level: u32) -> GrayImage {
    let level = level.max(1) as f64;
    let cos = dct_cos_table();
    let (w, h) = (img.width(), img.height());
    let bw = w.div_ceil(8) * 8;
    let bh = h.div_ceil(8) * 8;
    let padded = |x: usize, y: usize| -> f64 { img.get(x.min(w - 1), y.min(h - 1)) as f64 };
    let mut out = img.clone();
    for by in (0..bh).step_by(8) {
        for bx in (0..bw).step_by(8) {
            let mut coef = [[0.0f64; 8]; 8];
            for (v, crow) in coef.iter_mut().enumerate() {
                for (u, cval) in crow.iter_mut().enumerate() {
                    let mut acc = 0.0;
                    for y in 0..8 {
                        for x in 0..8 {
                            acc += padded(bx + x, by + y) * cos[x][u] * cos[y][v];
                        }
                    }
                    *cval = 0.25 * c(u) * c(v) * acc;
                }
            }
            // Quantize / dequantize.
            for v in 0..8 {
                for u in 0..8 {
                    let q = (LUMA_QUANT[v * 8 + u] * level / 100.0).round().max(1.0);
                    coef[v][u] = (coef[v][u] / q).round() * q;
                }
            }
            for y in 0..8 {
                for x in 0..8 {
                    if bx + x >= w || by + y >= h {
                        continue;
                    }
                    let mut acc = 0.0;
                    for (v, crow) in coef.iter().enumerate() {
                        for (u, &cval) in crow.iter().enumerate() {
                            acc += c(u) * c(v) * cval * cos[x][u] * cos[y][v];
                        }
                    }
                    let px = (0.25 * acc).round().clamp(0.0, 255.0);
                    out.set(bx + x, by + y, px as u8);
                }
            }
        }
    }
    out
}

/// Adds independent `N(0, sigma^2)` samples from a seeded uniform stream
/// (Box-Muller), rounding and clamping to `[0,255]`.
pub fn gaussian_noise(img: &GrayImage, sigma: f64, noise_seed: u64) -> Result<GrayImage> {
    assert!(sigma >= 0.0, "sigma must be nonnegative");
    if sigma == 0.0 {
        return Ok(img.clone());
    }
    let mut rng = XorshiftState::with_default_triple(noise_seed.max(1))?;
    let mut uniform = move || {
        // 53-bit mantissa draw in (0,1].
        ((rng.next_word() >> 11) as f64 + 1.0) / (1u64 << 53) as f64
    };
    let mut out = img.clone();
    let mut spare: Option<f64> = None;
    for p in out.pixels_mut() {
        let z = match spare.take() {
            Some(z) => z,
            None => {
                let u1 = uniform();
                let u2 = uniform();
                let r = (-2.0 * u1.ln()).sqrt();
                let (s, c) = (2.0 * std::f64::consts::PI * u2).sin_cos();
                spare = Some(r * s);
                r * c
            }
        };
        let v = (*p as f64 + sigma * z).round().clamp(0.0, 255.0);
        *p = v as u8;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gradient(w: usize, h: usize) -> GrayImage {
        let px = (0..w * h).map(|i| ((i % w + i / w) / 2) as u8).collect();
        GrayImage::new(w, h, px).unwrap()
    }

    #[test]
    fn crop_zero_is_identity() {
        let img = gradient(32, 32);
        assert_eq!(crop(&img, 0, None).unwrap(), img);
    }

    #[test]
    fn crop_full_blanks_square_image() {
        let img = gradient(16, 16);
        let out = crop(&img, 16, None).unwrap();
        assert!(out.pixels().iter().all(|&p| p == 0));
    }

    #[test]
    fn crop_region_cardinality() {
        let img = GrayImage::filled(32, 32, 200);
        let out = crop(&img, 10, None).unwrap();
        let changed = out.pixels().iter().filter(|&&p| p == 0).count();
        assert_eq!(changed, 100);
        assert!(crop(&img, 33, None).is_err());
    }

    #[test]
    fn crop_anchor_bounds() {
        let img = GrayImage::filled(16, 16, 9);
        assert!(crop(&img, 8, Some((10, 10))).is_err());
        let out = crop(&img, 8, Some((8, 8))).unwrap();
        assert_eq!(out.get(8, 8), 0);
        assert_eq!(out.get(7, 7), 9);
    }

    #[test]
    fn rotate_zero_is_identity() {
        let img = gradient(64, 64);
        assert_eq!(rotate_roundtrip(&img, 0.0), img);
    }

    #[test]
    fn rotate_quarter_turn_on_constant_image() {
        let img = GrayImage::filled(64, 64, 77);
        let out = rotate_roundtrip(&img, 90.0);
        // Interior stays constant; only border pixels may fall outside.
        for y in 2..62 {
            for x in 2..62 {
                assert_eq!(out.get(x, y), 77, "pixel ({x},{y})");
            }
        }
        assert_eq!((out.width(), out.height()), (64, 64));
    }

    #[test]
    fn jpeg_zero_image_fixed_point() {
        let img = GrayImage::filled(24, 24, 0);
        for level in [1, 5, 20] {
            assert_eq!(jpeg_like(&img, level), img);
        }
    }

    #[test]
    fn jpeg_constant_midgray_survives() {
        // DC of a constant-128 block is 1024, exactly divisible by the
        // DC quantization step at these levels; every AC is zero.
        let img = GrayImage::filled(16, 16, 128);
        for level in [1, 2, 25, 100] {
            assert_eq!(jpeg_like(&img, level), img, "level {level}");
        }
        // Level 100 applies the standard table at full strength: the
        // constant-160 block has DC 1280 = 80 * 16, still exact.
        let img = GrayImage::filled(8, 8, 160);
        assert_eq!(jpeg_like(&img, 100), img);
    }

    #[test]
    fn jpeg_nonmultiple_dimensions() {
        let img = gradient(20, 13);
        let out = jpeg_like(&img, 5);
        assert_eq!((out.width(), out.height()), (20, 13));
    }

    #[test]
    fn gaussian_zero_sigma_is_identity() {
        let img = gradient(32, 32);
        assert_eq!(gaussian_noise(&img, 0.0, 42).unwrap(), img);
    }

    #[test]
    fn gaussian_mean_absolute_change() {
        // Half-normal mean: sigma * sqrt(2/pi) ~ 2.394 at sigma 3.
        let img = GrayImage::filled(128, 128, 128);
        let out = gaussian_noise(&img, 3.0, 0xFACE).unwrap();
        let mean_abs: f64 = img
            .pixels()
            .iter()
            .zip(out.pixels())
            .map(|(&a, &b)| (a as f64 - b as f64).abs())
            .sum::<f64>()
            / (128.0 * 128.0);
        let expect = 3.0 * (2.0 / std::f64::consts::PI).sqrt();
        assert!(
            (mean_abs - expect).abs() < 0.2 * expect,
            "mean abs change {mean_abs}, expected about {expect}"
        );
    }

    #[test]
    fn attacks_are_deterministic() {
        let img = gradient(48, 48);
        let specs = [
            AttackSpec::Crop {
                size: 9,
                anchor: None,
            },
            AttackSpec::Rotation { degrees: 7.5 },
            AttackSpec::Jpeg { level: 7 },
            AttackSpec::Gaussian {
                sigma: 2.5,
                noise_seed: 99,
            },
        ];
        for spec in specs {
            let a = spec.apply(&img).unwrap();
            let b = spec.apply(&img).unwrap();
            assert_eq!(a, b);
            assert_eq!((a.width(), a.height()), (48, 48));
        }
    }
}
