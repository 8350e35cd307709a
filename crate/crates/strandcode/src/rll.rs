//! Membership, exact counting, and invertible encoding for the zero-run
//! constraint Z(N, M): length-N strings with no run of M consecutive zeros.
//!
//! Two encoders are provided. For q >= 3 the block scheme deletes each
//! leftmost zero M-run and appends its position as an M-symbol index whose
//! last symbol avoids {0,1}, costing one redundant symbol per block of
//! q^{M-1}(q-2) + M - 1 payload symbols. For q = 2 the same elimination idea
//! runs with an (M-1)-bit index plus a 0 flag per elimination and a sealing 1
//! on each side of the block, costing two symbols per block of
//! 2^{M-1} + M - 2. Blocks are independent, so encoded blocks concatenate
//! without violating the constraint; block boundaries are recovered from the
//! output length alone, so the final block may be short and the redundancy
//! is exactly the per-block count.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::core::{checked_pow, Strand};
use crate::error::{Error, Result};

/// Payload block length of the invertible encoder for the given scheme.
pub fn block_len(q: u32, m: usize) -> Result<usize> {
    if q == 2 {
        if m < 3 {
            return Err(Error::RunBoundTooSmall {
                m,
                needed: "binary scheme needs M >= 3".into(),
            });
        }
        let p = checked_pow(2, m - 1).ok_or_else(|| Error::ScaleTooLarge {
            reason: format!("2^{} overflows", m - 1),
        })?;
        Ok(p as usize + m - 2)
    } else if q >= 3 {
        if m < 2 {
            return Err(Error::RunBoundTooSmall {
                m,
                needed: "encoder needs M >= 2".into(),
            });
        }
        let p = checked_pow(q, m - 1).ok_or_else(|| Error::ScaleTooLarge {
            reason: format!("{q}^{} overflows", m - 1),
        })?;
        let cap = p
            .checked_mul((q - 2) as u128)
            .filter(|&c| c <= usize::MAX as u128 / 2)
            .ok_or_else(|| Error::ScaleTooLarge {
                reason: "index capacity overflows".into(),
            })?;
        Ok(cap as usize + m - 1)
    } else {
        Err(Error::AlphabetTooSmall {
            q,
            needed: "RLL encoding needs q >= 2".into(),
        })
    }
}

/// Redundancy in symbols added by the encoder on an `n_payload`-symbol
/// input: one per block for q >= 3, two per block for q = 2.
pub fn redundancy(n_payload: usize, m: usize, q: u32) -> Result<usize> {
    let bl = block_len(q, m)?;
    let blocks = n_payload.div_ceil(bl);
    Ok(if q == 2 { 2 * blocks } else { blocks })
}

/// True iff `x` contains no M consecutive zero symbols.
pub fn is_rll(x: &Strand, m: usize) -> bool {
    assert!(m >= 1, "run bound must be positive");
    let mut run = 0usize;
    for &s in x.symbols() {
        if s == 0 {
            run += 1;
            if run >= m {
                return false;
            }
        } else {
            run = 0;
        }
    }
    true
}

/// Exact |Z(N, M)| by dynamic programming over the trailing-zero-run length:
/// from state t a nonzero symbol (q-1 choices) returns to 0, a zero advances
/// to t+1, forbidden at t = M-1.
pub fn count_rll(n: usize, m: usize, q: u32) -> BigUint {
    assert!(m >= 1, "run bound must be positive");
    assert!(q >= 2, "alphabet size must be at least 2");
    let mut states = vec![BigUint::zero(); m];
    states[0] = BigUint::one();
    for _ in 0..n {
        let total: BigUint = states.iter().sum();
        let mut next = vec![BigUint::zero(); m];
        for t in (0..m - 1).rev() {
            next[t + 1] = states[t].clone();
        }
        next[0] = total * (q - 1);
        states = next;
    }
    states.iter().sum()
}

/// Leftmost 1-based start position of a run of `m` zeros, if any.
fn leftmost_zero_run(work: &[u8], m: usize) -> Option<usize> {
    let mut run = 0usize;
    for (idx, &s) in work.iter().enumerate() {
        if s == 0 {
            run += 1;
            if run == m {
                return Some(idx + 2 - m);
            }
        } else {
            run = 0;
        }
    }
    None
}

fn check_alphabet(x: &Strand, q: u32) -> Result<()> {
    if !x.fits_alphabet(q) {
        return Err(Error::Parse {
            reason: format!("strand contains symbols outside alphabet of size {q}"),
        });
    }
    Ok(())
}

/// Encode an arbitrary string into Z(·, M) for q >= 3. Splits the payload
/// into blocks; per block appends a 1, then repeatedly deletes the leftmost
/// zero M-run and appends the M-symbol index of its position, whose last
/// symbol is restricted to {2,..,q-1}.
pub fn rll_encode(x: &Strand, m: usize, q: u32) -> Result<Strand> {
    if q < 3 {
        return Err(Error::AlphabetTooSmall {
            q,
            needed: "this scheme needs q >= 3; use rll_encode_binary for q = 2".into(),
        });
    }
    check_alphabet(x, q)?;
    let bl = block_len(q, m)?;
    let capacity = bl + 1 - m; // q^{M-1}(q-2)
    let safety = bl * (bl + 1);
    let mut out = Vec::with_capacity(x.len() + x.len().div_ceil(bl));
    for block in x.symbols().chunks(bl) {
        let mut work = block.to_vec();
        work.push(1);
        let mut iters = 0usize;
        while let Some(p) = leftmost_zero_run(&work, m) {
            iters += 1;
            if iters > safety {
                return Err(Error::NonTermination { bound: safety });
            }
            // The working string never ends in 0, so runs are interior and
            // their start positions stay within the index capacity.
            assert!(
                p <= capacity,
                "zero-run position {p} exceeds index capacity {capacity}"
            );
            work.drain(p - 1..p - 1 + m);
            let value = (p - 1) as u128;
            let mut high = value / (q - 2) as u128;
            let low = (value % (q - 2) as u128) as u8;
            let mut digits = vec![0u8; m - 1];
            for slot in digits.iter_mut().rev() {
                *slot = (high % q as u128) as u8;
                high /= q as u128;
            }
            work.extend_from_slice(&digits);
            work.push(2 + low);
        }
        out.extend_from_slice(&work);
    }
    Ok(Strand::new(out))
}

/// Inverse of [`rll_encode`]. Per block, while the last symbol is outside
/// {0,1}, pop the trailing M-symbol index and reinsert the zero run it
/// records at the decoded position; then pop the trailing 1.
pub fn rll_decode(y: &Strand, m: usize, q: u32) -> Result<Strand> {
    if q < 3 {
        return Err(Error::AlphabetTooSmall {
            q,
            needed: "this scheme needs q >= 3; use rll_decode_binary for q = 2".into(),
        });
    }
    check_alphabet(y, q)?;
    if !is_rll(y, m) {
        return Err(Error::MalformedCodeword {
            reason: format!("codeword contains a zero run of length {m}"),
        });
    }
    let bl = block_len(q, m)?;
    let safety = bl * (bl + 1);
    let mut out = Vec::with_capacity(y.len());
    for chunk in y.symbols().chunks(bl + 1) {
        let mut work = chunk.to_vec();
        if work.len() < 2 {
            return Err(Error::MalformedCodeword {
                reason: "encoded block shorter than two symbols".into(),
            });
        }
        let mut iters = 0usize;
        loop {
            match *work.last().expect("block is non-empty") {
                1 => {
                    work.pop();
                    break;
                }
                0 => {
                    return Err(Error::MalformedCodeword {
                        reason: "encoded block ends in 0".into(),
                    })
                }
                _ => {}
            }
            iters += 1;
            if iters > safety {
                return Err(Error::MalformedCodeword {
                    reason: format!("more than {safety} elimination records in one block"),
                });
            }
            if work.len() < m + 1 {
                return Err(Error::MalformedCodeword {
                    reason: "trailing index overlaps the block flag".into(),
                });
            }
            let low = (work.pop().expect("checked length") - 2) as u128;
            let mut high: u128 = 0;
            let mut scale: u128 = 1;
            for _ in 0..m - 1 {
                let d = work.pop().expect("checked length") as u128;
                high += d * scale;
                scale *= q as u128;
            }
            let value = high * (q - 2) as u128 + low;
            let p = value as usize + 1;
            if p > work.len() {
                return Err(Error::MalformedCodeword {
                    reason: format!("decoded run position {p} outside block of {}", work.len()),
                });
            }
            for offset in 0..m {
                work.insert(p - 1 + offset, 0);
            }
        }
        out.extend_from_slice(&work);
    }
    Ok(Strand::new(out))
}

/// Binary counterpart of [`rll_encode`] for q = 2, M >= 3. Per block appends
/// a flag 1, eliminates leftmost zero M-runs by appending an (M-1)-bit
/// position index followed by a 0 flag, and finally prepends a sealing 1.
pub fn rll_encode_binary(x: &Strand, m: usize) -> Result<Strand> {
    check_alphabet(x, 2)?;
    let bl = block_len(2, m)?;
    let capacity = checked_pow(2, m - 1).expect("checked by block_len") as usize;
    let safety = bl * (bl + 1);
    let mut out = Vec::with_capacity(x.len() + 2 * x.len().div_ceil(bl));
    for block in x.symbols().chunks(bl) {
        let mut work = block.to_vec();
        work.push(1);
        let mut iters = 0usize;
        while let Some(p) = leftmost_zero_run(&work, m) {
            iters += 1;
            if iters > safety {
                return Err(Error::NonTermination { bound: safety });
            }
            assert!(
                p <= capacity,
                "zero-run position {p} exceeds index capacity {capacity}"
            );
            work.drain(p - 1..p - 1 + m);
            let value = p - 1;
            for bit in (0..m - 1).rev() {
                work.push(((value >> bit) & 1) as u8);
            }
            work.push(0);
        }
        out.push(1);
        out.extend_from_slice(&work);
    }
    Ok(Strand::new(out))
}

/// Inverse of [`rll_encode_binary`]: strip each block's sealing 1, then peel
/// flags from the right (0 means an index follows, 1 means the block is done).
pub fn rll_decode_binary(y: &Strand, m: usize) -> Result<Strand> {
    check_alphabet(y, 2)?;
    if !is_rll(y, m) {
        return Err(Error::MalformedCodeword {
            reason: format!("codeword contains a zero run of length {m}"),
        });
    }
    let bl = block_len(2, m)?;
    let safety = bl * (bl + 1);
    let mut out = Vec::with_capacity(y.len());
    for chunk in y.symbols().chunks(bl + 2) {
        if chunk.len() < 3 {
            return Err(Error::MalformedCodeword {
                reason: "encoded block shorter than three symbols".into(),
            });
        }
        if chunk[0] != 1 {
            return Err(Error::MalformedCodeword {
                reason: "encoded block does not start with the sealing 1".into(),
            });
        }
        let mut work = chunk[1..].to_vec();
        let mut iters = 0usize;
        loop {
            match *work.last().expect("block is non-empty") {
                1 => {
                    work.pop();
                    break;
                }
                _ => {
                    iters += 1;
                    if iters > safety {
                        return Err(Error::MalformedCodeword {
                            reason: format!("more than {safety} elimination records in one block"),
                        });
                    }
                    if work.len() < m + 1 {
                        return Err(Error::MalformedCodeword {
                            reason: "trailing index overlaps the block flag".into(),
                        });
                    }
                    work.pop(); // elimination flag 0
                    let mut value = 0usize;
                    let mut scale = 1usize;
                    for _ in 0..m - 1 {
                        let bit = work.pop().expect("checked length") as usize;
                        value += bit * scale;
                        scale <<= 1;
                    }
                    let p = value + 1;
                    if p > work.len() + 1 {
                        return Err(Error::MalformedCodeword {
                            reason: format!(
                                "decoded run position {p} outside block of {}",
                                work.len()
                            ),
                        });
                    }
                    for offset in 0..m {
                        work.insert(p - 1 + offset, 0);
                    }
                }
            }
        }
        out.extend_from_slice(&work);
    }
    Ok(Strand::new(out))
}

/// Saturation constant for the enumerative-coding tables: big enough to
/// dominate every capacity we compare against.
const SAT: u128 = u128::MAX / 4;

/// Completion counts f[r][t] = number of Z suffixes of length r starting
/// from trailing-zero-run state t, saturating at [`SAT`].
fn completion_table(len: usize, m: usize, q: u32) -> Vec<Vec<u128>> {
    let mut f = vec![vec![0u128; m]; len + 1];
    f[0].fill(1);
    for r in 1..=len {
        for t in 0..m {
            let nonzero = f[r - 1][0].saturating_mul((q - 1) as u128);
            let zero = if t + 1 < m { f[r - 1][t + 1] } else { 0 };
            f[r][t] = nonzero.saturating_add(zero).min(SAT);
        }
    }
    f
}

/// Number of length-`len` strings in Z(len, M) over alphabet q, saturated.
/// Used for capacity checks of pointer fields.
pub fn z_capacity(len: usize, m: usize, q: u32) -> u128 {
    completion_table(len, m, q)[len][0]
}

/// The `value`-th (0-based, lexicographic) string of Z(len, M).
pub fn z_unrank(mut value: u128, len: usize, m: usize, q: u32) -> Result<Strand> {
    let f = completion_table(len, m, q);
    if value >= f[len][0] {
        return Err(Error::ScaleTooLarge {
            reason: format!("rank {value} exceeds |Z({len},{m})|"),
        });
    }
    let mut symbols = Vec::with_capacity(len);
    let mut t = 0usize;
    for pos in 0..len {
        let r = len - pos - 1;
        if t + 1 < m {
            let with_zero = f[r][t + 1];
            if value < with_zero {
                symbols.push(0);
                t += 1;
                continue;
            }
            value -= with_zero;
        }
        let per_symbol = f[r][0];
        let idx = value / per_symbol;
        debug_assert!(idx < (q - 1) as u128);
        symbols.push(1 + idx as u8);
        value %= per_symbol;
        t = 0;
    }
    Ok(Strand::new(symbols))
}

/// Inverse of [`z_unrank`].
pub fn z_rank(x: &Strand, m: usize, q: u32) -> Result<u128> {
    if !is_rll(x, m) {
        return Err(Error::MalformedCodeword {
            reason: "string violates the zero-run constraint".into(),
        });
    }
    check_alphabet(x, q)?;
    let len = x.len();
    let f = completion_table(len, m, q);
    let mut rank: u128 = 0;
    let mut t = 0usize;
    for (pos, &s) in x.symbols().iter().enumerate() {
        let r = len - pos - 1;
        if s == 0 {
            t += 1;
            continue;
        }
        if t + 1 < m {
            rank = rank.saturating_add(f[r][t + 1]);
        }
        rank = rank.saturating_add(f[r][0].saturating_mul((s - 1) as u128));
        t = 0;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(digits: &str) -> Strand {
        Strand::from_digits(digits, 10).unwrap()
    }

    #[test]
    fn membership_scan() {
        assert!(is_rll(&s("10202"), 2));
        assert!(!is_rll(&s("00001"), 2));
        assert!(is_rll(&s("111111"), 2));
    }

    #[test]
    fn count_small_cases() {
        assert_eq!(count_rll(3, 2, 2), BigUint::from(5u32));
        for n in 0..8usize {
            assert_eq!(count_rll(n, 1, 2), BigUint::from(1u32));
        }
        assert_eq!(count_rll(0, 3, 3), BigUint::from(1u32));
    }

    #[test]
    fn count_matches_exhaustive_enumeration() {
        for q in [2u32, 3] {
            for m in [2usize, 3, 4] {
                for n in 0..=10usize {
                    let mut brute = 0u64;
                    let total = (q as u64).pow(n as u32);
                    for code in 0..total {
                        let mut c = code;
                        let mut run = 0usize;
                        let mut ok = true;
                        for _ in 0..n {
                            let sym = (c % q as u64) as u8;
                            c /= q as u64;
                            if sym == 0 {
                                run += 1;
                                if run >= m {
                                    ok = false;
                                    break;
                                }
                            } else {
                                run = 0;
                            }
                        }
                        if ok {
                            brute += 1;
                        }
                    }
                    assert_eq!(
                        count_rll(n, m, q),
                        BigUint::from(brute),
                        "mismatch at n={n} m={m} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn encode_hand_trace() {
        // 0000 -> 00001 -> remove 00@1, append 02 -> 00102
        //       -> remove 00@1, append 02 -> 10202
        assert_eq!(rll_encode(&s("0000"), 2, 3).unwrap(), s("10202"));
    }

    #[test]
    fn encode_constraint_already_satisfied() {
        assert_eq!(rll_encode(&s("1111"), 2, 3).unwrap(), s("11111"));
    }

    #[test]
    fn decode_hand_trace() {
        assert_eq!(rll_decode(&s("10202"), 2, 3).unwrap(), s("0000"));
        assert_eq!(rll_decode(&s("11111"), 2, 3).unwrap(), s("1111"));
    }

    #[test]
    fn redundancy_per_block() {
        // block_len(3, 2) = 4, so an 8-symbol payload costs 2 symbols.
        assert_eq!(block_len(3, 2).unwrap(), 4);
        assert_eq!(redundancy(8, 2, 3).unwrap(), 2);
        let x = Strand::new(vec![0; 8]);
        let y = rll_encode(&x, 2, 3).unwrap();
        assert_eq!(y.len(), 10);
    }

    #[test]
    fn roundtrip_exhaustive_short_ternary() {
        let q = 3u32;
        let m = 2usize;
        for len in 0..=6usize {
            let total = (q as u64).pow(len as u32);
            for code in 0..total {
                let mut c = code;
                let symbols: Vec<u8> = (0..len)
                    .map(|_| {
                        let sym = (c % q as u64) as u8;
                        c /= q as u64;
                        sym
                    })
                    .collect();
                let x = Strand::new(symbols);
                let y = rll_encode(&x, m, q).unwrap();
                assert!(is_rll(&y, m), "output {y} violates constraint for {x}");
                assert_eq!(rll_decode(&y, m, q).unwrap(), x);
                assert_eq!(y.len(), x.len() + redundancy(x.len(), m, q).unwrap());
            }
        }
    }

    #[test]
    fn binary_all_zero_block() {
        let m = 4usize;
        let bl = block_len(2, m).unwrap();
        let x = Strand::new(vec![0; bl]);
        let y = rll_encode_binary(&x, m).unwrap();
        assert!(is_rll(&y, m));
        assert_eq!(y.len(), bl + 2);
        assert_eq!(rll_decode_binary(&y, m).unwrap(), x);
    }

    #[test]
    fn binary_all_one_block_is_sealed_identity() {
        let m = 4usize;
        let bl = block_len(2, m).unwrap();
        let x = Strand::new(vec![1; bl]);
        let y = rll_encode_binary(&x, m).unwrap();
        let mut expected = vec![1u8];
        expected.extend(vec![1; bl]);
        expected.push(1);
        assert_eq!(y, Strand::new(expected));
    }

    #[test]
    fn binary_redundancy_three_blocks() {
        let m = 4usize;
        let bl = block_len(2, m).unwrap();
        assert_eq!(redundancy(3 * bl, m, 2).unwrap(), 6);
        let x = Strand::new(vec![0; 3 * bl]);
        let y = rll_encode_binary(&x, m).unwrap();
        assert_eq!(y.len(), 3 * bl + 6);
        assert_eq!(rll_decode_binary(&y, m).unwrap(), x);
    }

    #[test]
    fn binary_roundtrip_exhaustive_short() {
        let m = 3usize;
        for len in 0..=10usize {
            for code in 0..(1u64 << len) {
                let symbols: Vec<u8> = (0..len).map(|b| ((code >> b) & 1) as u8).collect();
                let x = Strand::new(symbols);
                let y = rll_encode_binary(&x, m).unwrap();
                assert!(is_rll(&y, m), "output {y} violates constraint for {x}");
                assert_eq!(rll_decode_binary(&y, m).unwrap(), x);
                assert_eq!(y.len(), x.len() + redundancy(x.len(), m, 2).unwrap());
            }
        }
    }

    #[test]
    fn blocks_concatenate_without_boundary_runs() {
        // Every encoded block ends nonzero (q >= 3) or starts sealed (q = 2),
        // so pairwise concatenations stay in Z.
        let m = 2usize;
        let q = 3u32;
        let bl = block_len(q, m).unwrap();
        let blocks: Vec<Strand> = (0..(q as u64).pow(bl as u32))
            .step_by(7)
            .map(|code| {
                let mut c = code;
                Strand::new(
                    (0..bl)
                        .map(|_| {
                            let sym = (c % q as u64) as u8;
                            c /= q as u64;
                            sym
                        })
                        .collect(),
                )
            })
            .map(|x| rll_encode(&x, m, q).unwrap())
            .collect();
        for a in blocks.iter().take(12) {
            for b in blocks.iter().take(12) {
                assert!(is_rll(&a.concat(b), m));
            }
        }
    }

    #[test]
    fn decode_flags_malformed_inputs() {
        // Codeword with an interior zero run is rejected up front.
        assert!(matches!(
            rll_decode(&s("00102"), 2, 3),
            Err(Error::MalformedCodeword { .. })
        ));
        // Out-of-range reinsertion position.
        assert!(matches!(
            rll_decode(&s("12222"), 2, 3),
            Err(Error::MalformedCodeword { .. })
        ));
    }

    #[test]
    fn finite_redundancy_tracks_the_asymptotic_order() {
        // Finite counterpart of the set's redundancy bound: for M <= N <= 12
        // the exact redundancy N - log_q |Z(N,M)| is positive and below
        // 2 (q-1)/q * N/q^M * (1 + c) with recorded slack c = 0.25 (the
        // binding point of the grid is q = 2, M = 2, N = 12).
        let slack = 0.25;
        for q in [2u32, 3] {
            for m in [2usize, 3, 4] {
                for n in m..=12usize {
                    let count = count_rll(n, m, q);
                    let count_f: f64 = count.to_string().parse().unwrap();
                    let red = n as f64 - count_f.ln() / (q as f64).ln();
                    assert!(red > 0.0, "redundancy not positive at q={q} M={m} N={n}");
                    let bound = 2.0 * (q as f64 - 1.0) / q as f64 * n as f64
                        / (q as f64).powi(m as i32)
                        * (1.0 + slack);
                    assert!(
                        red < bound,
                        "redundancy {red} exceeds {bound} at q={q} M={m} N={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn zrank_zunrank_roundtrip_and_order() {
        for (q, m) in [(2u32, 3usize), (3, 2), (4, 2)] {
            for len in 1..=8usize {
                let cap = z_capacity(len, m, q);
                let mut prev: Option<Strand> = None;
                for v in 0..cap.min(2000) {
                    let x = z_unrank(v, len, m, q).unwrap();
                    assert!(is_rll(&x, m));
                    assert_eq!(x.len(), len);
                    assert_eq!(z_rank(&x, m, q).unwrap(), v);
                    if let Some(p) = prev {
                        assert!(p < x, "unrank must be lexicographically increasing");
                    }
                    prev = Some(x);
                }
            }
        }
    }

    #[test]
    fn z_capacity_matches_count() {
        for (q, m) in [(2u32, 3usize), (3, 2)] {
            for len in 0..=10usize {
                assert_eq!(
                    BigUint::from(z_capacity(len, m, q)),
                    count_rll(len, m, q)
                );
            }
        }
    }
}
