//! Command-line surface: generation, statistical testing, watermarking,
//! attacks and the pipeline model, all batch-mode and fully seeded.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use ciprng::bbs::{BbsState, DEFAULT_MODULUS};
use ciprng::bits::BitSequence;
use ciprng::chaotic::BooleanStateVector;
use ciprng::engines::{
    stream_bits, BbsBlocks, BlockGenerator, CiprngV1, CiprngV2, FpgaCiprng, FpgaProfile,
};
use ciprng::error::Error;
use ciprng::image::{read_pbm, read_pgm, write_pbm, write_pgm};
use ciprng::nist::run_battery_on_with_jobs;
use ciprng::pipeline::{PipelineModel, ScheduleMode};
use ciprng::source::EntropySource;
use ciprng::watermark::{self, EmbeddingKey, WatermarkMode};
use ciprng::xorshift::{ShiftTriple, XorshiftState, DEFAULT_TRIPLE};

const EXIT_USAGE: i32 = 2;
const EXIT_IO: i32 = 3;
const EXIT_FORMAT: i32 = 4;
const EXIT_DOMAIN: i32 = 5;

const EXIT_CODE_HELP: &str = "FILE FORMATS:
  streams script  line-oriented `name: integers` with # comments; stream
                  names are prng1/prng2 (ciprng-v1/v2) or xs1/xs2/bbs
                  (ciprng-fpga), and the profile entries x0 (bit string),
                  n, c, z0 override the corresponding flags
  key file        hex 64-bit words, one per line, # comments allowed
  images          binary PGM (P5, maxval 255); watermarks binary PBM (P4)

EXIT CODES:
  0  success
  2  usage error (unknown flags, missing or malformed arguments)
  3  file I/O failure
  4  malformed or unsupported input file
  5  domain precondition violated (bad seed, size mismatch, ...)";

#[derive(Parser)]
#[command(
    name = "ciprng",
    about = "Chaotic-iteration pseudorandom generators, a NIST SP 800-22 subset battery, \
             keyed LSB watermarking with robustness attacks, and a pipeline throughput model",
    after_help = EXIT_CODE_HELP,
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit pseudorandom bits from one of the generators
    Generate(GenerateArgs),
    /// Run the statistical battery over generated or file-provided bits
    Test(TestArgs),
    /// Embed a watermark into a carrier image
    Embed(EmbedArgs),
    /// Extract a watermark from a stego image
    Extract(ExtractArgs),
    /// Apply a robustness attack to an image
    Attack(AttackArgs),
    /// Percentage of equal bits between two watermarks
    Similarity(SimilarityArgs),
    /// Run the clocked dataflow model and report throughput
    Pipeline(PipelineArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Xorshift,
    Bbs,
    CiprngV1,
    CiprngV2,
    CiprngFpga,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BitFormat {
    /// ASCII 0/1 characters
    Raw,
    /// Packed bytes, most significant bit first, in lowercase hex
    Hex,
}

#[derive(Args)]
struct GeneratorProfileArgs {
    /// Generator to run
    #[arg(long = "gen", value_enum)]
    gen: GenKind,
    /// Seed words, comma-separated hex (missing words are derived)
    #[arg(long, value_delimiter = ',')]
    seed: Vec<String>,
    /// Scripted entropy streams file (format under FILE FORMATS in --help)
    #[arg(long)]
    script: Option<PathBuf>,
    /// Xorshift shift triple a,b,c
    #[arg(long, value_delimiter = ',', default_values_t = [13, 7, 17])]
    triple: Vec<u32>,
    /// Blum modulus for BBS-backed generators
    #[arg(long, default_value_t = DEFAULT_MODULUS)]
    modulus: u32,
    /// Low bits emitted per BBS step
    #[arg(long, default_value_t = 4)]
    lsb_bits: u32,
    /// State width N for ciprng-v1/v2
    #[arg(long, default_value_t = 32)]
    state_bits: usize,
    /// Iteration-count offset c for ciprng-v1
    #[arg(long, default_value_t = 4)]
    c: u64,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    profile: GeneratorProfileArgs,
    /// Number of bits to emit
    #[arg(long)]
    bits: usize,
    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = BitFormat::Raw)]
    format: BitFormat,
}

#[derive(Args)]
struct TestArgs {
    /// Read bits (ASCII 0/1) from a file instead of generating
    #[arg(long, conflicts_with = "gen")]
    r#in: Option<PathBuf>,
    #[command(flatten)]
    profile: OptionalProfileArgs,
    /// Number of sequences to analyze
    #[arg(long, default_value_t = 100)]
    sequences: usize,
    /// Bits per sequence
    #[arg(long, default_value_t = 20_000)]
    bits: usize,
    /// Worker threads for sequence analysis
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report style: human table or machine lines
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    format: ReportFormat,
}

/// Same knobs as [`GeneratorProfileArgs`] but with `--gen` optional so
/// `test --in FILE` works without one.
#[derive(Args)]
struct OptionalProfileArgs {
    #[arg(long = "gen", value_enum)]
    gen: Option<GenKind>,
    #[arg(long, value_delimiter = ',')]
    seed: Vec<String>,
    #[arg(long)]
    script: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_values_t = [13, 7, 17])]
    triple: Vec<u32>,
    #[arg(long, default_value_t = DEFAULT_MODULUS)]
    modulus: u32,
    #[arg(long, default_value_t = 4)]
    lsb_bits: u32,
    #[arg(long, default_value_t = 32)]
    state_bits: usize,
    #[arg(long, default_value_t = 4)]
    c: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Table,
    Lines,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Auth,
    Unauth,
}

impl From<ModeArg> for WatermarkMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auth => WatermarkMode::Authenticated,
            ModeArg::Unauth => WatermarkMode::Unauthenticated,
        }
    }
}

#[derive(Args)]
struct EmbedArgs {
    /// Carrier image (binary PGM)
    #[arg(long)]
    cover: PathBuf,
    /// Watermark (binary PBM)
    #[arg(long)]
    wm: PathBuf,
    /// Key file: hex words, one per line
    #[arg(long)]
    key: PathBuf,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Low bit planes used as LSCs
    #[arg(long, default_value_t = watermark::DEFAULT_LSC_BITS)]
    lsc_bits: u32,
    /// Output stego image (binary PGM)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExtractArgs {
    /// Stego image (binary PGM)
    #[arg(long)]
    stego: PathBuf,
    #[arg(long)]
    key: PathBuf,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Watermark dimensions, e.g. 64x64
    #[arg(long)]
    wm_size: String,
    #[arg(long, default_value_t = watermark::DEFAULT_LSC_BITS)]
    lsc_bits: u32,
    /// Output watermark (binary PBM)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AttackKind {
    Crop,
    Rotate,
    Jpeg,
    Noise,
}

#[derive(Args)]
struct AttackArgs {
    #[arg(long, value_enum)]
    kind: AttackKind,
    /// Crop size, rotation degrees, compression level or noise sigma
    #[arg(long)]
    param: f64,
    /// Seed for the noise attack, hex
    #[arg(long, default_value = "1")]
    noise_seed: String,
    /// Top-left corner X,Y for crop (centered when absent)
    #[arg(long, value_delimiter = ',')]
    anchor: Option<Vec<usize>>,
    #[arg(long)]
    r#in: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SimilarityArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PipelineMode {
    TwoPhase,
    Overlapped,
}

#[derive(Args)]
struct PipelineArgs {
    /// Clock cycles to run
    #[arg(long)]
    cycles: u64,
    #[arg(long, value_enum)]
    mode: PipelineMode,
    /// Clock frequency in MHz
    #[arg(long, default_value_t = 400.0)]
    mhz: f64,
    /// Seed words xs1,xs2,bbs in hex
    #[arg(long, value_delimiter = ',')]
    seed: Vec<String>,
    /// Write a per-cycle trace to this path
    #[arg(long)]
    trace: Option<PathBuf>,
}

/// A diagnosable failure carrying its exit code.
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => EXIT_IO,
            Error::UnsupportedFormat(_)
            | Error::MalformedHeader(_)
            | Error::UnexpectedEndOfData
            | Error::InvalidKeyFile(_)
            | Error::InvalidScript(_) => EXIT_FORMAT,
            _ => EXIT_DOMAIN,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("ciprng: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Generate(a) => cmd_generate(a),
        Command::Test(a) => cmd_test(a),
        Command::Embed(a) => cmd_embed(a),
        Command::Extract(a) => cmd_extract(a),
        Command::Attack(a) => cmd_attack(a),
        Command::Similarity(a) => cmd_similarity(a),
        Command::Pipeline(a) => cmd_pipeline(a),
    }
}

fn parse_hex_word(s: &str) -> CliResult<u64> {
    let t = s.trim().trim_start_matches("0x");
    u64::from_str_radix(t, 16)
        .map_err(|_| CliError::usage(format!("seed word {s:?} is not a hex 64-bit word")))
}

fn parse_hex_words(words: &[String]) -> CliResult<Vec<u64>> {
    words.iter().map(|w| parse_hex_word(w)).collect()
}

fn parse_triple(v: &[u32]) -> CliResult<ShiftTriple> {
    if v.len() != 3 {
        return Err(CliError::usage("--triple needs exactly three values a,b,c"));
    }
    ShiftTriple::new(v[0], v[1], v[2]).map_err(CliError::from)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Extends seed material to `n` words by hashing forward.
fn expand_seeds(mut words: Vec<u64>, n: usize) -> Vec<u64> {
    while words.len() < n {
        let prev = *words.last().unwrap_or(&0);
        words.push(splitmix64(prev.wrapping_add(words.len() as u64)));
    }
    words
}

fn nonzero(w: u64) -> u64 {
    if w == 0 {
        0x9E37_79B9_7F4A_7C15
    } else {
        w
    }
}

/// Parsed scripted-streams file: named integer streams plus optional
/// profile entries.
#[derive(Default)]
struct StreamScript {
    x0: Option<String>,
    n: Option<usize>,
    c: Option<u64>,
    z0: Option<u16>,
    streams: HashMap<String, Vec<u64>>,
}

impl StreamScript {
    fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::from(Error::Io(e)))?;
        let mut script = StreamScript::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| {
                CliError::from(Error::InvalidScript(format!(
                    "line {}: expected `name: values`",
                    lineno + 1
                )))
            })?;
            let key = key.trim();
            let rest = rest.trim();
            let bad = |what: &str| {
                CliError::from(Error::InvalidScript(format!(
                    "line {}: bad {what} value {rest:?}",
                    lineno + 1
                )))
            };
            match key {
                "x0" => script.x0 = Some(rest.to_string()),
                "n" => script.n = Some(rest.parse().map_err(|_| bad("n"))?),
                "c" => script.c = Some(rest.parse().map_err(|_| bad("c"))?),
                "z0" => script.z0 = Some(rest.parse().map_err(|_| bad("z0"))?),
                "prng1" | "prng2" | "xs1" | "xs2" | "bbs" => {
                    let vals = rest
                        .split_whitespace()
                        .map(|t| t.parse::<u64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| bad(key))?;
                    script.streams.insert(key.to_string(), vals);
                }
                other => {
                    return Err(CliError::from(Error::InvalidScript(format!(
                        "line {}: unknown entry {other:?}",
                        lineno + 1
                    ))));
                }
            }
        }
        Ok(script)
    }

    fn source(&self, name: &str) -> Option<EntropySource> {
        self.streams
            .get(name)
            .map(|v| EntropySource::scripted(v.clone()))
    }
}

struct ProfileSpec {
    gen: GenKind,
    seeds: Vec<u64>,
    script: Option<StreamScript>,
    triple: ShiftTriple,
    modulus: u32,
    lsb_bits: u32,
    state_bits: usize,
    c: u64,
}

impl ProfileSpec {
    fn from_args(a: &GeneratorProfileArgs) -> CliResult<Self> {
        Ok(Self {
            gen: a.gen,
            seeds: parse_hex_words(&a.seed)?,
            script: a.script.as_deref().map(StreamScript::load).transpose()?,
            triple: parse_triple(&a.triple)?,
            modulus: a.modulus,
            lsb_bits: a.lsb_bits,
            state_bits: a.state_bits,
            c: a.c,
        })
    }

    fn from_optional(a: &OptionalProfileArgs) -> CliResult<Option<Self>> {
        let Some(gen) = a.gen else {
            return Ok(None);
        };
        Ok(Some(Self {
            gen,
            seeds: parse_hex_words(&a.seed)?,
            script: a.script.as_deref().map(StreamScript::load).transpose()?,
            triple: parse_triple(&a.triple)?,
            modulus: a.modulus,
            lsb_bits: a.lsb_bits,
            state_bits: a.state_bits,
            c: a.c,
        }))
    }

    /// Builds the generator. Scripted streams take over the entropy
    /// sources; script profile entries (x0, n, c, z0) override flags.
    fn build(&self) -> CliResult<Box<dyn BlockGenerator>> {
        let need_seed = |what: &str| {
            CliError::usage(format!("--gen {what} needs --seed (or a --script profile)"))
        };
        match self.gen {
            GenKind::Xorshift => {
                let w = *self.seeds.first().ok_or_else(|| need_seed("xorshift"))?;
                Ok(Box::new(
                    XorshiftState::new(w, self.triple).map_err(CliError::from)?,
                ))
            }
            GenKind::Bbs => {
                if !(1..=32).contains(&self.lsb_bits) {
                    return Err(CliError::usage("--lsb-bits must be in [1,32]"));
                }
                let w = *self.seeds.first().ok_or_else(|| need_seed("bbs"))?;
                let state = BbsState::from_seed(w, self.modulus).map_err(CliError::from)?;
                Ok(Box::new(BbsBlocks {
                    state,
                    lsb_bits: self.lsb_bits,
                }))
            }
            GenKind::CiprngV1 | GenKind::CiprngV2 => {
                let script = self.script.as_ref();
                let x0 = self.initial_state(script)?;
                let (p1, p2) = self.two_sources(script, "prng1", "prng2")?;
                if matches!(self.gen, GenKind::CiprngV1) {
                    let c = script.and_then(|s| s.c).unwrap_or(self.c);
                    Ok(Box::new(CiprngV1::new(x0, p1, p2, c)))
                } else {
                    Ok(Box::new(CiprngV2::new(x0, p1, p2)))
                }
            }
            GenKind::CiprngFpga => {
                let script = self.script.as_ref();
                let z0 = script.and_then(|s| s.z0).unwrap_or(0);
                if let Some(s) = script {
                    if let (Some(xs1), Some(xs2), Some(bbs)) =
                        (s.source("xs1"), s.source("xs2"), s.source("bbs"))
                    {
                        return Ok(Box::new(FpgaCiprng::from_sources(z0, xs1, xs2, bbs)));
                    }
                }
                let profile = if self.seeds.is_empty() {
                    FpgaProfile {
                        triple: self.triple,
                        ..FpgaProfile::default()
                    }
                } else {
                    let w = expand_seeds(self.seeds.clone(), 3);
                    FpgaProfile {
                        xs1_seed: nonzero(w[0]),
                        xs2_seed: nonzero(w[1]),
                        triple: self.triple,
                        bbs_state: BbsState::from_seed(w[2], self.modulus)
                            .map_err(CliError::from)?
                            .state(),
                        bbs_modulus: self.modulus,
                        z0,
                    }
                };
                Ok(Box::new(
                    FpgaCiprng::from_profile(&profile).map_err(CliError::from)?,
                ))
            }
        }
    }

    /// Initial state for the v1/v2 engines: script x0 wins, then the
    /// third seed word rendered over the configured width.
    fn initial_state(&self, script: Option<&StreamScript>) -> CliResult<BooleanStateVector> {
        if let Some(x0) = script.and_then(|s| s.x0.as_deref()) {
            return BooleanStateVector::from_bit_str(x0).map_err(CliError::from);
        }
        let n = script.and_then(|s| s.n).unwrap_or(self.state_bits);
        if n == 0 || n > 64 {
            return Err(CliError::usage(format!("state width {n} outside [1,64]")));
        }
        let word = self
            .seeds
            .get(2)
            .copied()
            .unwrap_or_else(|| splitmix64(self.seeds.first().copied().unwrap_or(0) ^ 0x5157));
        BooleanStateVector::from_word(word, n).map_err(CliError::from)
    }

    /// The two entropy sources for v1/v2: scripted streams when present,
    /// live xorshifts otherwise.
    fn two_sources(
        &self,
        script: Option<&StreamScript>,
        name1: &str,
        name2: &str,
    ) -> CliResult<(EntropySource, EntropySource)> {
        if let Some(s) = script {
            if let (Some(a), Some(b)) = (s.source(name1), s.source(name2)) {
                return Ok((a, b));
            }
        }
        if self.seeds.is_empty() {
            return Err(CliError::usage(
                "this generator needs --seed words or a --script with prng1/prng2 streams",
            ));
        }
        let w = expand_seeds(self.seeds.clone(), 2);
        Ok((
            XorshiftState::new(nonzero(w[0]), self.triple)
                .map_err(CliError::from)?
                .into(),
            XorshiftState::new(nonzero(w[1]), self.triple)
                .map_err(CliError::from)?
                .into(),
        ))
    }
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => {
            let mut f = std::fs::File::create(p).map_err(|e| CliError::from(Error::Io(e)))?;
            f.write_all(text.as_bytes())
                .map_err(|e| CliError::from(Error::Io(e)))?;
            Ok(())
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_generate(a: GenerateArgs) -> CliResult<()> {
    let spec = ProfileSpec::from_args(&a.profile)?;
    let mut generator = spec.build()?;
    let bits = stream_bits(generator.as_mut(), a.bits).map_err(CliError::from)?;
    let text = match a.format {
        BitFormat::Raw => bits.to_string(),
        BitFormat::Hex => bits.to_hex(),
    };
    write_output(a.out.as_deref(), &text)
}

fn cmd_test(a: TestArgs) -> CliResult<()> {
    if a.sequences == 0 || a.bits == 0 {
        return Err(CliError::usage("--sequences and --bits must be at least 1"));
    }
    let seqs: Vec<BitSequence> = if let Some(path) = &a.r#in {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::from(Error::Io(e)))?;
        let all = BitSequence::from_bit_str(&text).map_err(CliError::from)?;
        let need = a.sequences * a.bits;
        if all.len() < need {
            return Err(CliError::from(Error::SequenceTooShort {
                test: "battery input",
                needed: need,
                got: all.len(),
            }));
        }
        (0..a.sequences)
            .map(|i| (0..a.bits).map(|j| all.get(i * a.bits + j)).collect())
            .collect()
    } else {
        let spec = ProfileSpec::from_optional(&a.profile)?
            .ok_or_else(|| CliError::usage("test needs --in FILE or --gen GENERATOR"))?;
        let mut generator = spec.build()?;
        (0..a.sequences)
            .map(|_| stream_bits(generator.as_mut(), a.bits))
            .collect::<Result<_, _>>()
            .map_err(CliError::from)?
    };
    let report = run_battery_on_with_jobs(&seqs, a.jobs).map_err(CliError::from)?;
    match a.format {
        ReportFormat::Table => println!("{report}"),
        ReportFormat::Lines => print!("{}", report.machine_lines()),
    }
    if a.bits < 1 << 15 {
        eprintln!(
            "note: the m=10 serial and approximate-entropy statistics are only \
             calibrated for sequences of 2^15 bits or more; their verdicts on \
             shorter sequences are pessimistic for any source"
        );
    }
    Ok(())
}

fn load_key(path: &Path, mode: WatermarkMode, lsc_bits: u32) -> CliResult<EmbeddingKey> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::from(Error::Io(e)))?;
    let mut words = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let w = u64::from_str_radix(line.trim_start_matches("0x"), 16).map_err(|_| {
            CliError::from(Error::InvalidKeyFile(format!(
                "{line:?} is not a hex 64-bit word"
            )))
        })?;
        words.push(w);
    }
    if words.is_empty() {
        return Err(CliError::from(Error::InvalidKeyFile(
            "key file holds no seed words".into(),
        )));
    }
    EmbeddingKey::new(words, mode, lsc_bits).map_err(CliError::from)
}

fn cmd_embed(a: EmbedArgs) -> CliResult<()> {
    let key = load_key(&a.key, a.mode.into(), a.lsc_bits)?;
    let cover = read_pgm(&a.cover).map_err(CliError::from)?;
    let wm = read_pbm(&a.wm).map_err(CliError::from)?;
    let stego = watermark::embed(&cover, &wm, &key).map_err(CliError::from)?;
    write_pgm(&a.out, &stego).map_err(CliError::from)?;
    Ok(())
}

fn parse_wm_size(s: &str) -> CliResult<(usize, usize)> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| CliError::usage(format!("--wm-size {s:?} is not WxH")))?;
    let w = w
        .parse()
        .map_err(|_| CliError::usage("bad watermark width"))?;
    let h = h
        .parse()
        .map_err(|_| CliError::usage("bad watermark height"))?;
    Ok((w, h))
}

fn cmd_extract(a: ExtractArgs) -> CliResult<()> {
    let key = load_key(&a.key, a.mode.into(), a.lsc_bits)?;
    let stego = read_pgm(&a.stego).map_err(CliError::from)?;
    let (w, h) = parse_wm_size(&a.wm_size)?;
    let wm = watermark::extract(&stego, &key, w, h).map_err(CliError::from)?;
    write_pbm(&a.out, &wm).map_err(CliError::from)?;
    Ok(())
}

fn cmd_attack(a: AttackArgs) -> CliResult<()> {
    let img = read_pgm(&a.r#in).map_err(CliError::from)?;
    let out = match a.kind {
        AttackKind::Crop => {
            if a.param < 0.0 || a.param.fract() != 0.0 {
                return Err(CliError::usage("crop size must be a nonnegative integer"));
            }
            let anchor = match a.anchor.as_deref() {
                None => None,
                Some([x, y]) => Some((*x, *y)),
                Some(_) => return Err(CliError::usage("--anchor needs exactly X,Y")),
            };
            ciprng::attacks::crop(&img, a.param as usize, anchor).map_err(CliError::from)?
        }
        AttackKind::Rotate => ciprng::attacks::rotate_roundtrip(&img, a.param),
        AttackKind::Jpeg => {
            if a.param < 1.0 || a.param.fract() != 0.0 {
                return Err(CliError::usage(
                    "compression level must be a positive integer",
                ));
            }
            ciprng::attacks::jpeg_like(&img, a.param as u32)
        }
        AttackKind::Noise => {
            if a.param < 0.0 {
                return Err(CliError::usage("noise sigma must be nonnegative"));
            }
            let seed = parse_hex_word(&a.noise_seed)?;
            ciprng::attacks::gaussian_noise(&img, a.param, seed).map_err(CliError::from)?
        }
    };
    write_pgm(&a.out, &out).map_err(CliError::from)?;
    Ok(())
}

fn cmd_similarity(a: SimilarityArgs) -> CliResult<()> {
    let x = read_pbm(&a.a).map_err(CliError::from)?;
    let y = read_pbm(&a.b).map_err(CliError::from)?;
    let pct = watermark::similarity(&x, &y).map_err(CliError::from)?;
    println!("{pct:.2}");
    Ok(())
}

fn cmd_pipeline(a: PipelineArgs) -> CliResult<()> {
    if a.cycles == 0 {
        return Err(CliError::usage("--cycles must be at least 1"));
    }
    let mode = match a.mode {
        PipelineMode::TwoPhase => ScheduleMode::TwoPhase,
        PipelineMode::Overlapped => ScheduleMode::Overlapped,
    };
    let profile = if a.seed.is_empty() {
        FpgaProfile::default()
    } else {
        let w = expand_seeds(parse_hex_words(&a.seed)?, 3);
        FpgaProfile {
            xs1_seed: nonzero(w[0]),
            xs2_seed: nonzero(w[1]),
            triple: DEFAULT_TRIPLE,
            bbs_state: BbsState::from_seed(w[2], DEFAULT_MODULUS)
                .map_err(CliError::from)?
                .state(),
            bbs_modulus: DEFAULT_MODULUS,
            z0: 0,
        }
    };
    let mut model = PipelineModel::new(&profile, mode, a.mhz).map_err(CliError::from)?;
    let mut trace: Option<std::fs::File> = a
        .trace
        .as_ref()
        .map(std::fs::File::create)
        .transpose()
        .map_err(|e| CliError::from(Error::Io(e)))?;
    for _ in 0..a.cycles {
        let event = model.step_cycle().map_err(CliError::from)?;
        if let Some(f) = trace.as_mut() {
            writeln!(f, "{}", event.trace_line()).map_err(|e| CliError::from(Error::Io(e)))?;
        }
    }
    println!("{}", model.throughput_report());
    Ok(())
}
