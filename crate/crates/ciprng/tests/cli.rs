//! End-to-end checks of the command-line binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ciprng"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(name)
}

fn asset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("assets")
        .join(name)
}

#[test]
fn generate_run_trace_from_script() {
    let script = fixture("table1.streams");
    let out = run(&[
        "generate",
        "--gen",
        "ciprng-v1",
        "--script",
        script.to_str().unwrap(),
        "--bits",
        "20",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "10100111101111110011");
}

#[test]
fn generate_xorshift_known_answer() {
    let out = run(&[
        "generate", "--gen", "xorshift", "--seed", "1", "--bits", "64", "--format", "hex",
    ]);
    assert!(out.status.success());
    // 1082269761 as a 64-bit word.
    assert_eq!(stdout(&out), "0000000040822041");
}

#[test]
fn generate_bbs_known_answer() {
    let out = run(&[
        "generate",
        "--gen",
        "bbs",
        "--seed",
        "2",
        "--modulus",
        "77",
        "--bits",
        "20",
    ]);
    assert!(out.status.success());
    // States 4,16,25,9,4 -> low nibbles 4,0,9,9,4.
    assert_eq!(stdout(&out), "01000000100110010100");
}

#[test]
fn generate_is_deterministic_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for path in [&a, &b] {
        let out = run(&[
            "generate",
            "--gen",
            "ciprng-fpga",
            "--seed",
            "11,22,33",
            "--bits",
            "4096",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn similarity_identical_files() {
    let wm = asset("reference_watermark.pbm");
    let out = run(&[
        "similarity",
        "--a",
        wm.to_str().unwrap(),
        "--b",
        wm.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "100.00");
}

#[test]
fn embed_extract_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let stego = dir.path().join("stego.pgm");
    let got = dir.path().join("got.pbm");
    let key = dir.path().join("key.txt");
    std::fs::write(&key, "deadbeef00112233\n0x5eed5eed5eed5eed\n").unwrap();

    for mode in ["auth", "unauth"] {
        let out = run(&[
            "embed",
            "--cover",
            asset("reference_carrier.pgm").to_str().unwrap(),
            "--wm",
            asset("reference_watermark.pbm").to_str().unwrap(),
            "--key",
            key.to_str().unwrap(),
            "--mode",
            mode,
            "--out",
            stego.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "embed {mode}: {out:?}");

        let out = run(&[
            "extract",
            "--stego",
            stego.to_str().unwrap(),
            "--key",
            key.to_str().unwrap(),
            "--mode",
            mode,
            "--wm-size",
            "64x64",
            "--out",
            got.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "extract {mode}: {out:?}");

        let original = std::fs::read(asset("reference_watermark.pbm")).unwrap();
        assert_eq!(std::fs::read(&got).unwrap(), original, "mode {mode}");
    }
}

#[test]
fn attack_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.pgm");
    let b = dir.path().join("b.pgm");
    for path in [&a, &b] {
        let out = run(&[
            "attack",
            "--kind",
            "noise",
            "--param",
            "2.5",
            "--noise-seed",
            "feed",
            "--in",
            asset("reference_carrier.pgm").to_str().unwrap(),
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn battery_on_generated_stream() {
    let out = run(&[
        "test",
        "--gen",
        "ciprng-fpga",
        "--sequences",
        "10",
        "--bits",
        "20000",
        "--jobs",
        "2",
        "--format",
        "lines",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 7);
    for line in text.lines() {
        assert!(line.contains("pt=") && line.contains("proportion=") && line.contains("verdict="));
    }
}

#[test]
fn battery_on_bit_file() {
    let dir = tempfile::tempdir().unwrap();
    let bits = dir.path().join("bits.txt");
    let out = run(&[
        "generate",
        "--gen",
        "ciprng-fpga",
        "--bits",
        "60000",
        "--out",
        bits.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "test",
        "--in",
        bits.to_str().unwrap(),
        "--sequences",
        "2",
        "--bits",
        "20000",
    ]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("battery: 2 sequences x 20000 bits"));
}

#[test]
fn pipeline_reports_throughput() {
    let out = run(&["pipeline", "--cycles", "100", "--mode", "overlapped"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("6400 Mbps"));
    assert!(text.contains("155 elements"));

    let out = run(&["pipeline", "--cycles", "100", "--mode", "two-phase"]);
    assert!(stdout(&out).contains("3200 Mbps"));
}

#[test]
fn pipeline_trace_lines() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.txt");
    let out = run(&[
        "pipeline",
        "--cycles",
        "6",
        "--mode",
        "two-phase",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().next().unwrap().starts_with("cycle=1"));
}

#[test]
fn exit_codes_are_distinct() {
    let dir = tempfile::tempdir().unwrap();

    // 2: usage
    let out = run(&["generate", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));

    // 3: missing file
    let out = run(&[
        "similarity",
        "--a",
        dir.path().join("nope.pbm").to_str().unwrap(),
        "--b",
        dir.path().join("nope.pbm").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));

    // 4: unsupported format
    let ascii = dir.path().join("ascii.pgm");
    std::fs::write(&ascii, "P2\n2 2\n255\n0 0 0 0\n").unwrap();
    let out = run(&[
        "attack",
        "--kind",
        "crop",
        "--param",
        "1",
        "--in",
        ascii.to_str().unwrap(),
        "--out",
        dir.path().join("out.pgm").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported format"));

    // 4: truncated payload
    let trunc = dir.path().join("trunc.pgm");
    std::fs::write(&trunc, b"P5\n4 4\n255\nab").unwrap();
    let out = run(&[
        "attack",
        "--kind",
        "crop",
        "--param",
        "1",
        "--in",
        trunc.to_str().unwrap(),
        "--out",
        dir.path().join("out.pgm").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unexpected end of data"));

    // 5: domain violation
    let out = run(&[
        "generate", "--gen", "xorshift", "--seed", "0", "--bits", "8",
    ]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn scripted_v2_collision_semantics() {
    // m=2 over N=8 with draws 3,3,5: one collision skip, positions 4 and
    // 6 negated from the all-zero state.
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("v2.streams");
    // 150994944 = ceil(9 * 2^32 / 2^8): the first word mapping to m=2.
    std::fs::write(&script, "x0: 00000000\nprng1: 150994944\nprng2: 3 3 5\n").unwrap();
    let out = run(&[
        "generate",
        "--gen",
        "ciprng-v2",
        "--script",
        script.to_str().unwrap(),
        "--bits",
        "8",
    ]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout(&out), "00010100");
}

#[test]
fn shipped_fixtures_match_their_definitions() {
    use ciprng::image::{encode_pbm, encode_pgm};
    use ciprng::watermark::{reference_carrier, reference_watermark};
    assert_eq!(
        std::fs::read(asset("reference_carrier.pgm")).unwrap(),
        encode_pgm(&reference_carrier())
    );
    assert_eq!(
        std::fs::read(asset("reference_watermark.pbm")).unwrap(),
        encode_pbm(&reference_watermark())
    );
}
