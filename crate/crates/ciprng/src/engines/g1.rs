//! Binomial output-decimation map: turns a uniform 32-bit draw into an
//! iteration count distributed as Binomial(N, 1/2).

/// Cumulative counts of Binomial(32, 1/2) scaled to the 32-bit range:
/// entry `i` is `sum_{j<=i} C(32,j)`; the last entry equals `2^32`.
fn cumulative_32() -> [u64; 33] {
    let mut cum = [0u64; 33];
    let mut c = 1u64; // C(32,0)
    let mut acc = 0u64;
    for (i, slot) in cum.iter_mut().enumerate() {
        acc += c;
        *slot = acc;
        c = c * (32 - i as u64) / (i as u64 + 1);
    }
    cum
}

/// Maps a 32-bit word onto `[0,32]`: the unique `i` with
/// `sum_{j<i} C(32,j) <= a < sum_{j<=i} C(32,j)`.
pub fn g1_map(a: u32) -> u32 {
    let cum = cumulative_32();
    let a = a as u64;
    cum.iter().position(|&c| a < c).unwrap_or(32) as u32
}

/// Generalization of the decimation map to an `n`-component state:
/// bins follow Binomial(n, 1/2), with the cumulative fractions
/// `sum C(n,j)/2^n` compared against `a/2^32` in exact arithmetic.
pub fn g1_map_general(a: u32, n: usize) -> u32 {
    assert!((1..=64).contains(&n), "state width {n} outside [1,64]");
    if n == 32 {
        return g1_map(a);
    }
    // a/2^32 < cum/2^n  <=>  a * 2^n < cum * 2^32
    let lhs = (a as u128) << n;
    let mut c: u128 = 1;
    let mut acc: u128 = 0;
    for i in 0..=n {
        acc += c;
        if lhs < acc << 32 {
            return i as u32;
        }
        c = c * (n as u128 - i as u128) / (i as u128 + 1);
    }
    n as u32
}
