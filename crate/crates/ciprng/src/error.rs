use thiserror::Error;

/// Errors produced by generators, tests, watermarking and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("xorshift seed must be nonzero (zero is a fixed point)")]
    ZeroSeed,
    #[error("shift amount {0} outside [1,63]")]
    InvalidShift(u32),
    #[error("{0} is not a Blum integer: {1}")]
    InvalidBlumModulus(u64, &'static str),
    #[error("BBS seed {seed} invalid for modulus {modulus}: {reason}")]
    InvalidBbsSeed {
        seed: u64,
        modulus: u64,
        reason: &'static str,
    },
    #[error("state vector must hold at least one component")]
    EmptyState,
    #[error("strategy position {position} outside [1,{n}]")]
    PositionOutOfRange { position: usize, n: usize },
    #[error("scripted entropy source exhausted after {0} draws")]
    ScriptExhausted(usize),
    #[error("round stalled: {draws} strategy draws without reaching {needed} fresh positions")]
    RoundStalled { draws: usize, needed: usize },
    #[error("bit count must be nonnegative")]
    NegativeBitCount,
    #[error("sequence too short: {test} needs at least {needed} bits, got {got}")]
    SequenceTooShort {
        test: &'static str,
        needed: usize,
        got: usize,
    },
    #[error("uniformity statistic needs at least {needed} p-values, got {got}")]
    TooFewPValues { needed: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("watermark holds {wm_bits} bits but the carrier exposes only {total_lsc} LSCs")]
    WatermarkTooLarge { wm_bits: usize, total_lsc: usize },
    #[error("authenticated mode requires the carrier MSC planes")]
    MissingMsc,
    #[error("cannot select {count} distinct positions out of {total} LSCs")]
    CountExceedsTotal { count: usize, total: usize },
    #[error("crop size {size} exceeds image side {side}")]
    CropTooLarge { size: usize, side: usize },
    #[error("lsc bit count {0} outside [1,4]")]
    InvalidLscBits(u32),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("unexpected end of data")]
    UnexpectedEndOfData,
    #[error("invalid key file: {0}")]
    InvalidKeyFile(String),
    #[error("invalid streams script: {0}")]
    InvalidScript(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
