//! Chaotic-iteration pseudorandom generators and their applications.
//!
//! The crate bundles:
//! - the primitive entropy sources (64-bit XORshift, Blum Blum Shub) and
//!   the single-step chaotic-iteration engine ([`chaotic`]);
//! - the composed generators: CIPRNG versions 1 and 2 plus the combined
//!   16-bit generator built from two XORshifts and a BBS ([`engines`]);
//! - a NIST SP 800-22 subset battery for desk-scale randomness checks
//!   ([`nist`]);
//! - LSB image watermarking keyed by the generators, with the usual
//!   robustness attacks ([`watermark`], [`attacks`]);
//! - a clocked dataflow model of the combined generator for throughput
//!   accounting ([`pipeline`]).
//!
//! All randomness is seeded and every run is reproducible bit for bit.

pub mod attacks;
pub mod bbs;
pub mod bits;
pub mod chaotic;
pub mod engines;
pub mod error;
pub mod image;
pub mod nist;
pub mod pipeline;
pub mod source;
pub mod watermark;
pub mod xorshift;

pub use bbs::BbsState;
pub use bits::BitSequence;
pub use engines::{CiprngV1, CiprngV2, FpgaCiprng, FpgaProfile};
pub use error::{Error, Result};
pub use image::{BitMatrix, GrayImage};
pub use xorshift::XorshiftState;
