//! Invertible encoders from arbitrary information strings into repeat-free
//! strings, in the two regimes the multi-strand constructions consume.
//!
//! Both encoders eliminate repeated ell-windows while preserving the string
//! length n', so the output length never needs a separate expansion phase.
//!
//! Basic scheme (one redundant symbol, ell >= 2*ceil(log_q n') + 2): append a
//! terminator 1 to the information string, then repeatedly delete the later
//! occurrence of the leftmost colliding window pair and append a fixed-width
//! record (source position, deleted position, counter, flag 0) of exactly ell
//! symbols. Records stack at the end in chronological order, so the decoder
//! unwinds them right-to-left: flag 0 means a record, flag 1 means the
//! terminator. Reinsertion copies the source window symbol by symbol, which
//! reconstructs overlapping (periodic) repeats correctly.
//!
//! Marker scheme (redundancy equal to the inner RLL encoder's, ell >=
//! ceil(log_q n') + run_bound + 5): phase 1 encodes the information string
//! into a zero-run-limited string of length exactly n', so a run of
//! run_bound zeros cannot occur naturally and serves as a splice marker.
//! Phase 2 overwrites the later occurrence of a repeated window in place
//! with a sealed block [1, 0^M, 1, pointer, 1...] whose pointer field is a
//! zero-run-free enumerative encoding of the source position. Splices only
//! ever target and read regions disjoint from existing blocks, so block
//! bytes are written at most once and the decoder can undo blocks in any
//! order in which a block's source region is block-free.

use crate::core::{ceil_log, Strand};
use crate::error::{Error, Result};
use crate::rll;

pub use crate::core::RfVariant;

/// Parameters of one repeat-free encoder instance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RfParams {
    pub q: u32,
    pub n_prime: usize,
    pub ell: usize,
    pub variant: RfVariant,
    /// Zero-run bound of the marker variant's inner RLL step.
    pub run_bound: Option<usize>,
    /// Information length in symbols.
    pub m: usize,
}

/// Minimal window for the basic variant: 2*ceil(log_q n') + 2.
pub fn min_ell_basic(q: u32, n_prime: usize) -> usize {
    2 * ceil_log(q, n_prime) + 2
}

/// Default zero-run bound for the marker variant: 2*ceil(log_q log_q n'),
/// floored at the smallest bound the RLL scheme for `q` supports.
pub fn default_run_bound(q: u32, n_prime: usize) -> usize {
    let w = ceil_log(q, n_prime).max(1);
    let inner = ceil_log(q, w).max(1);
    let floor = if q == 2 { 3 } else { 2 };
    (2 * inner).max(floor)
}

/// Width of the zero-run-free pointer field: the shortest length whose
/// constrained-string count covers every position in 1..=n'.
pub fn pointer_width(q: u32, run_bound: usize, n_prime: usize) -> Result<usize> {
    let cap_limit = 8 * ceil_log(q, n_prime) + 32;
    for len in 1..=cap_limit {
        if rll::z_capacity(len, run_bound, q) >= n_prime as u128 {
            return Ok(len);
        }
    }
    Err(Error::InfeasibleParams {
        reason: format!("no pointer width covers n' = {n_prime} at run bound {run_bound}"),
    })
}

/// Minimal window for the marker variant at the given run bound: the stated
/// ceil(log_q n') + run_bound + 5, raised if the splice-block layout
/// (seal, marker, seal, pointer, trailer) needs more room.
pub fn min_ell_marker(q: u32, n_prime: usize, run_bound: usize) -> Result<usize> {
    let w = ceil_log(q, n_prime);
    let layout = run_bound + pointer_width(q, run_bound, n_prime)? + 3;
    Ok((w + run_bound + 5).max(layout))
}

/// Solve m + rll_redundancy(m) = n' for the marker variant's information
/// length. Errors when n' is not exactly achievable.
pub fn marker_info_len(q: u32, n_prime: usize, run_bound: usize) -> Result<usize> {
    let bl = rll::block_len(q, run_bound)?;
    let per_block = if q == 2 { 2usize } else { 1 };
    // m + per_block*ceil(m/bl) is strictly increasing in m.
    let mut m = n_prime.saturating_sub(per_block * (n_prime / bl + 1));
    while m <= n_prime {
        let total = m + per_block * m.div_ceil(bl);
        if total == n_prime && m >= 1 {
            return Ok(m);
        }
        if total > n_prime {
            break;
        }
        m += 1;
    }
    Err(Error::InfeasibleParams {
        reason: format!(
            "no information length m satisfies m + rll_redundancy(m) = {n_prime} \
             at q = {q}, run bound {run_bound}"
        ),
    })
}

impl RfParams {
    /// Basic variant at the minimal window.
    pub fn basic(q: u32, n_prime: usize) -> Result<Self> {
        Self::basic_with_ell(q, n_prime, min_ell_basic(q, n_prime))
    }

    /// Basic variant with an explicit (possibly larger) window.
    pub fn basic_with_ell(q: u32, n_prime: usize, ell: usize) -> Result<Self> {
        if n_prime < 2 {
            return Err(Error::InfeasibleParams {
                reason: "basic variant needs n' >= 2".into(),
            });
        }
        let needed = min_ell_basic(q, n_prime);
        if ell < needed {
            return Err(Error::WindowTooShort { ell, needed });
        }
        Ok(RfParams {
            q,
            n_prime,
            ell,
            variant: RfVariant::Basic,
            run_bound: None,
            m: n_prime - 1,
        })
    }

    /// Marker variant at the default run bound and minimal window.
    pub fn marker(q: u32, n_prime: usize) -> Result<Self> {
        let run_bound = default_run_bound(q, n_prime);
        let ell = min_ell_marker(q, n_prime, run_bound)?;
        Self::marker_with(q, n_prime, run_bound, ell)
    }

    /// Marker variant with explicit run bound and window.
    pub fn marker_with(q: u32, n_prime: usize, run_bound: usize, ell: usize) -> Result<Self> {
        let needed = min_ell_marker(q, n_prime, run_bound)?;
        if ell < needed {
            return Err(Error::WindowTooShort { ell, needed });
        }
        let m = marker_info_len(q, n_prime, run_bound)?;
        Ok(RfParams {
            q,
            n_prime,
            ell,
            variant: RfVariant::Marker,
            run_bound: Some(run_bound),
            m,
        })
    }

    /// Redundancy in symbols: n' - m.
    pub fn redundancy(&self) -> usize {
        self.n_prime - self.m
    }
}

/// Dispatch on the variant.
pub fn rf_encode(x: &Strand, params: &RfParams) -> Result<Strand> {
    match params.variant {
        RfVariant::Basic => rf_encode_basic(x, params),
        RfVariant::Marker => rf_encode_marker(x, params),
    }
}

/// Dispatch on the variant.
pub fn rf_decode(c: &Strand, params: &RfParams) -> Result<Strand> {
    match params.variant {
        RfVariant::Basic => rf_decode_basic(c, params),
        RfVariant::Marker => rf_decode_marker(c, params),
    }
}

fn check_alphabet(x: &Strand, q: u32) -> Result<()> {
    if !x.fits_alphabet(q) {
        return Err(Error::Parse {
            reason: format!("strand contains symbols outside alphabet of size {q}"),
        });
    }
    Ok(())
}

/// Fixed-width base-q digits of `value`, most significant first.
fn fixed_digits(mut value: u128, width: usize, q: u32) -> Vec<u8> {
    let mut digits = vec![0u8; width];
    for slot in digits.iter_mut().rev() {
        *slot = (value % q as u128) as u8;
        value /= q as u128;
    }
    debug_assert_eq!(value, 0, "value wider than the field");
    digits
}

fn digits_value(symbols: &[u8], q: u32) -> u128 {
    symbols
        .iter()
        .fold(0u128, |acc, &d| acc * q as u128 + d as u128)
}

/// Leftmost colliding window pair: the smallest 0-based position j whose
/// ell-window duplicates an earlier one, with the earliest matching i.
fn leftmost_repeat(s: &[u8], ell: usize) -> Option<(usize, usize)> {
    if s.len() < ell {
        return None;
    }
    let mut first: std::collections::HashMap<&[u8], usize> = std::collections::HashMap::new();
    for j in 0..=s.len() - ell {
        let w = &s[j..j + ell];
        match first.get(w) {
            Some(&i) => return Some((i, j)),
            None => {
                first.insert(w, j);
            }
        }
    }
    None
}

fn elimination_safety(n_prime: usize) -> usize {
    4 * n_prime + 256
}

/// Encode `x` (length n' - 1) into a repeat-free string of length n' with a
/// single redundant symbol.
pub fn rf_encode_basic(x: &Strand, params: &RfParams) -> Result<Strand> {
    assert_eq!(params.variant, RfVariant::Basic);
    check_alphabet(x, params.q)?;
    let n_prime = params.n_prime;
    let ell = params.ell;
    let needed = min_ell_basic(params.q, n_prime);
    if ell < needed {
        return Err(Error::WindowTooShort { ell, needed });
    }
    if x.len() != params.m {
        return Err(Error::ParamMismatch {
            reason: format!("information length {} but m = {}", x.len(), params.m),
        });
    }
    let q = params.q;
    let w = ceil_log(q, n_prime);
    let fill = ell - 2 * w - 1;
    let counter_cap = crate::core::checked_pow(q, fill).unwrap_or(u128::MAX);

    let mut s = x.symbols().to_vec();
    s.push(1);
    let safety = elimination_safety(n_prime);
    let mut counter: u128 = 0;
    while let Some((i, j)) = leftmost_repeat(&s, ell) {
        counter += 1;
        if counter as usize > safety {
            return Err(Error::NonTermination { bound: safety });
        }
        s.drain(j..j + ell);
        s.extend(fixed_digits(i as u128, w, q));
        s.extend(fixed_digits(j as u128, w, q));
        s.extend(fixed_digits(counter % counter_cap, fill, q));
        s.push(0);
        debug_assert_eq!(s.len(), n_prime);
    }
    Ok(Strand::new(s))
}

/// Exact inverse of [`rf_encode_basic`], with a re-encode validation pass.
pub fn rf_decode_basic(c: &Strand, params: &RfParams) -> Result<Strand> {
    assert_eq!(params.variant, RfVariant::Basic);
    check_alphabet(c, params.q)?;
    let n_prime = params.n_prime;
    if c.len() != n_prime {
        return Err(Error::MalformedCodeword {
            reason: format!("codeword length {} but n' = {n_prime}", c.len()),
        });
    }
    let q = params.q;
    let ell = params.ell;
    let w = ceil_log(q, n_prime);
    let safety = elimination_safety(n_prime);

    let mut s = c.symbols().to_vec();
    let mut pops = 0usize;
    let x = loop {
        match *s.last().expect("codeword is non-empty") {
            1 => {
                s.pop();
                break Strand::new(s);
            }
            0 => {
                pops += 1;
                if pops > safety {
                    return Err(Error::MalformedCodeword {
                        reason: format!("more than {safety} elimination records"),
                    });
                }
                if s.len() < ell + 1 {
                    return Err(Error::MalformedCodeword {
                        reason: "elimination record overlaps the terminator".into(),
                    });
                }
                let rec_at = s.len() - ell;
                let i = digits_value(&s[rec_at..rec_at + w], q) as usize;
                let j = digits_value(&s[rec_at + w..rec_at + 2 * w], q) as usize;
                s.truncate(rec_at);
                if i >= j || j + ell > n_prime {
                    return Err(Error::MalformedCodeword {
                        reason: format!("record positions i = {i}, j = {j} out of range"),
                    });
                }
                // Symbol-by-symbol copy of the window at i into position j;
                // the source index always lies left of the insertion point,
                // so overlapping (periodic) repeats rebuild correctly.
                for t in 0..ell {
                    let sym = s[i + t];
                    s.insert(j + t, sym);
                }
            }
            other => {
                return Err(Error::MalformedCodeword {
                    reason: format!("invalid trailing flag symbol {other}"),
                })
            }
        }
    };

    // Validation wrapper: silent corruption becomes a loud error.
    if x.len() != params.m || rf_encode_basic(&x, params)? != *c {
        return Err(Error::MalformedCodeword {
            reason: "decoded string does not re-encode to the codeword".into(),
        });
    }
    Ok(x)
}

/// Splice-block geometry for the marker variant.
struct BlockLayout {
    run_bound: usize,
    pointer_width: usize,
    ell: usize,
}

impl BlockLayout {
    fn new(params: &RfParams) -> Result<Self> {
        let run_bound = params.run_bound.ok_or_else(|| Error::ParamMismatch {
            reason: "marker variant needs a run bound".into(),
        })?;
        let pointer_width = pointer_width(params.q, run_bound, params.n_prime)?;
        let needed = min_ell_marker(params.q, params.n_prime, run_bound)?;
        if params.ell < needed {
            return Err(Error::WindowTooShort {
                ell: params.ell,
                needed,
            });
        }
        Ok(BlockLayout {
            run_bound,
            pointer_width,
            ell: params.ell,
        })
    }

    fn fill(&self) -> usize {
        self.ell - self.run_bound - 2 - self.pointer_width
    }

    /// Block bytes spliced over a deleted window: sealed marker plus the
    /// enumerative pointer to the source position.
    fn render(&self, src0: usize, q: u32) -> Result<Vec<u8>> {
        let mut block = Vec::with_capacity(self.ell);
        block.push(1);
        block.extend(std::iter::repeat_n(0, self.run_bound));
        block.push(1);
        let pointer = rll::z_unrank(src0 as u128, self.pointer_width, self.run_bound, q)?;
        block.extend_from_slice(pointer.symbols());
        block.extend(std::iter::repeat_n(1, self.fill()));
        debug_assert_eq!(block.len(), self.ell);
        Ok(block)
    }
}

fn ranges_disjoint(a: (usize, usize), b: (usize, usize)) -> bool {
    a.1 <= b.0 || b.1 <= a.0
}

/// Splice admissibility: the deleted and source windows may not cut or read
/// any existing block, the source may not be reused (two identical blocks
/// would form a repeat no splice could remove), and overlapping (periodic)
/// occurrences are usable only with the earlier one kept, which the decoder
/// rebuilds with a forward self-referential copy.
fn splice_admissible(src: usize, del: usize, ell: usize, blocks: &[(usize, usize)]) -> bool {
    let rs = (src, src + ell);
    let rd = (del, del + ell);
    (ranges_disjoint(rs, rd) || src < del)
        && blocks.iter().all(|&(b0, bsrc)| {
            ranges_disjoint(rs, (b0, b0 + ell))
                && ranges_disjoint(rd, (b0, b0 + ell))
                && bsrc != src
        })
}

/// All (source, delete) orientations of duplicated windows, largest delete
/// position first. Splicing the rightmost occurrence chews periodic runs
/// toward the left, so the repetitive fragment shrinks by a full window per
/// splice instead of being stranded behind a freshly placed block.
fn repeat_candidates(s: &[u8], ell: usize) -> Vec<(usize, usize)> {
    let mut positions: std::collections::HashMap<&[u8], Vec<usize>> =
        std::collections::HashMap::new();
    for j in 0..=s.len() - ell {
        positions.entry(&s[j..j + ell]).or_default().push(j);
    }
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for occ in positions.values() {
        if occ.len() > 1 {
            for &keep in occ {
                for &del in occ {
                    if keep != del {
                        candidates.push((keep, del));
                    }
                }
            }
        }
    }
    candidates.sort_by_key(|&(src, del)| (std::cmp::Reverse(del), src));
    candidates
}

/// True when some repeated window group in `s` has no admissible splice
/// left: every pairing of its occurrences cuts or reads a block. A splice
/// that would create such a state is rejected by the one-step lookahead
/// (the boundary case: a periodic fragment whose last spanning repeat
/// merges into a block seal).
fn has_stranded_repeat(s: &[u8], ell: usize, blocks: &[(usize, usize)]) -> bool {
    let mut positions: std::collections::HashMap<&[u8], Vec<usize>> =
        std::collections::HashMap::new();
    for j in 0..=s.len() - ell {
        positions.entry(&s[j..j + ell]).or_default().push(j);
    }
    positions.values().any(|occ| {
        occ.len() > 1
            && !occ.iter().any(|&keep| {
                occ.iter()
                    .any(|&del| keep != del && splice_admissible(keep, del, ell, blocks))
            })
    })
}

/// Seed of the fixed whitening mask applied ahead of the marker variant's
/// zero-run encoder (ChaCha12, one symbol draw per position).
const WHITENING_SEED: u64 = 0x5752_4150_5345_5144;

/// Deterministic symbol-wise mask: structured payloads (constant or periodic
/// strings) would otherwise surface as long periodic base strings, the one
/// shape the splice machinery handles worst. Adding the mask mod q costs no
/// redundancy and is removed after the inner decode.
fn whitening_mask(len: usize, q: u32) -> Vec<u8> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(WHITENING_SEED);
    (0..len).map(|_| rng.gen_range(0..q) as u8).collect()
}

fn whiten(x: &Strand, q: u32) -> Strand {
    let mask = whitening_mask(x.len(), q);
    Strand::new(
        x.symbols()
            .iter()
            .zip(&mask)
            .map(|(&s, &m)| ((s as u32 + m as u32) % q) as u8)
            .collect(),
    )
}

fn unwhiten(x: &Strand, q: u32) -> Strand {
    let mask = whitening_mask(x.len(), q);
    Strand::new(
        x.symbols()
            .iter()
            .zip(&mask)
            .map(|(&s, &m)| ((s as u32 + q - m as u32) % q) as u8)
            .collect(),
    )
}

/// Encode `x` (length m) into a repeat-free string of length n'; all
/// redundancy comes from the inner zero-run-limited encoder.
pub fn rf_encode_marker(x: &Strand, params: &RfParams) -> Result<Strand> {
    assert_eq!(params.variant, RfVariant::Marker);
    check_alphabet(x, params.q)?;
    let layout = BlockLayout::new(params)?;
    let q = params.q;
    let n_prime = params.n_prime;
    let ell = params.ell;
    let m_run = layout.run_bound;
    if x.len() != params.m {
        return Err(Error::ParamMismatch {
            reason: format!("information length {} but m = {}", x.len(), params.m),
        });
    }

    // Phase 1: whiten, then produce a zero-run-limited base string of
    // length exactly n'.
    let masked = whiten(x, q);
    let base = if q == 2 {
        rll::rll_encode_binary(&masked, m_run)?
    } else {
        rll::rll_encode(&masked, m_run, q)?
    };
    if base.len() != n_prime {
        return Err(Error::ParamMismatch {
            reason: format!(
                "inner RLL output has {} symbols, expected n' = {n_prime}",
                base.len()
            ),
        });
    }
    debug_assert!(rll::is_rll(&base, m_run));

    // Phase 2: splice sealed marker blocks over repeated windows.
    let mut s = base.into_symbols();
    let mut blocks: Vec<(usize, usize)> = Vec::new(); // (block start, source start)
    let safety = elimination_safety(n_prime);
    let mut iters = 0usize;
    loop {
        if leftmost_repeat(&s, ell).is_none() {
            break;
        }
        iters += 1;
        if iters > safety {
            return Err(Error::NonTermination { bound: safety });
        }

        let candidates = repeat_candidates(&s, ell);
        let mut fallback: Option<(usize, usize)> = None;
        let mut chosen: Option<(usize, usize)> = None;
        let mut scratch = s.clone();
        for &(src, del) in &candidates {
            if !splice_admissible(src, del, ell, &blocks) {
                continue;
            }
            fallback.get_or_insert((src, del));
            // One-step lookahead: skip placements that would strand a
            // repeat with no admissible splice remaining.
            let block = layout.render(src, q)?;
            scratch.copy_from_slice(&s);
            scratch[del..del + ell].copy_from_slice(&block);
            let mut after = blocks.clone();
            after.push((del, src));
            if !has_stranded_repeat(&scratch, ell, &after) {
                chosen = Some((src, del));
                break;
            }
        }
        let (src, del) = chosen
            .or(fallback)
            .ok_or_else(|| Error::EncoderStuck {
                reason: "every repeated window pair overlaps a splice block or its partner"
                    .into(),
            })?;

        let block = layout.render(src, q)?;
        s[del..del + ell].copy_from_slice(&block);
        blocks.push((del, src));
    }
    debug_assert_eq!(s.len(), n_prime);
    Ok(Strand::new(s))
}

/// Maximal zero runs as (0-based start, length).
fn zero_runs(s: &[u8]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = None;
    for (idx, &sym) in s.iter().enumerate() {
        if sym == 0 {
            start.get_or_insert(idx);
        } else if let Some(st) = start.take() {
            runs.push((st, idx - st));
        }
    }
    if let Some(st) = start {
        runs.push((st, s.len() - st));
    }
    runs
}

/// Exact inverse of [`rf_encode_marker`], with a re-encode validation pass.
pub fn rf_decode_marker(c: &Strand, params: &RfParams) -> Result<Strand> {
    assert_eq!(params.variant, RfVariant::Marker);
    check_alphabet(c, params.q)?;
    let layout = BlockLayout::new(params)?;
    let q = params.q;
    let n_prime = params.n_prime;
    let ell = params.ell;
    let m_run = layout.run_bound;
    if c.len() != n_prime {
        return Err(Error::MalformedCodeword {
            reason: format!("codeword length {} but n' = {n_prime}", c.len()),
        });
    }

    let mut s = c.symbols().to_vec();

    // Locate splice blocks: every zero run of length >= run_bound is a
    // marker core, and a valid one is exactly run_bound long.
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    for (start, len) in zero_runs(&s) {
        if len < m_run {
            continue;
        }
        if len > m_run {
            return Err(Error::MalformedCodeword {
                reason: format!("zero run of length {len} exceeds the marker length {m_run}"),
            });
        }
        if start == 0 || start + m_run >= s.len() {
            return Err(Error::MalformedCodeword {
                reason: "marker core touches the codeword boundary".into(),
            });
        }
        let b0 = start - 1;
        if b0 + ell > s.len() {
            return Err(Error::MalformedCodeword {
                reason: "splice block extends past the codeword".into(),
            });
        }
        let block = &s[b0..b0 + ell];
        if block[0] != 1 || block[m_run + 1] != 1 {
            return Err(Error::MalformedCodeword {
                reason: "splice block seals are damaged".into(),
            });
        }
        let ptr_at = m_run + 2;
        let pointer = Strand::from(&block[ptr_at..ptr_at + layout.pointer_width]);
        if block[ptr_at + layout.pointer_width..].iter().any(|&b| b != 1) {
            return Err(Error::MalformedCodeword {
                reason: "splice block trailer is damaged".into(),
            });
        }
        let src0 = rll::z_rank(&pointer, m_run, q).map_err(|_| Error::MalformedCodeword {
            reason: "splice block pointer violates the zero-run constraint".into(),
        })? as usize;
        let overlapping = !ranges_disjoint((src0, src0 + ell), (b0, b0 + ell));
        if src0 + ell > s.len() || (overlapping && src0 >= b0) {
            return Err(Error::MalformedCodeword {
                reason: format!("splice source {src0} out of range for block at {b0}"),
            });
        }
        blocks.push((b0, src0));
    }
    for pair in blocks.windows(2) {
        if !ranges_disjoint((pair[0].0, pair[0].0 + ell), (pair[1].0, pair[1].0 + ell)) {
            return Err(Error::MalformedCodeword {
                reason: "splice blocks overlap".into(),
            });
        }
    }

    // Undo blocks whenever their source region is free of the *other*
    // remaining blocks; sources held base bytes at encode time, so any such
    // order restores base bytes. The forward symbol-by-symbol copy rebuilds
    // overlapping (periodic) repeats whose source extends into the block.
    while !blocks.is_empty() {
        let pick = blocks.iter().position(|&(sb0, src0)| {
            blocks.iter().all(|&(b0, _)| {
                b0 == sb0 || ranges_disjoint((src0, src0 + ell), (b0, b0 + ell))
            })
        });
        let idx = pick.ok_or_else(|| Error::MalformedCodeword {
            reason: "splice undo order cannot be resolved".into(),
        })?;
        let (b0, src0) = blocks.swap_remove(idx);
        for t in 0..ell {
            s[b0 + t] = s[src0 + t];
        }
    }

    if !rll::is_rll(&Strand::from(&s[..]), m_run) {
        return Err(Error::MalformedCodeword {
            reason: "unwound string violates the zero-run constraint".into(),
        });
    }
    let base = Strand::new(s);
    let masked = if q == 2 {
        rll::rll_decode_binary(&base, m_run)?
    } else {
        rll::rll_decode(&base, m_run, q)?
    };
    let x = unwhiten(&masked, q);

    if x.len() != params.m || rf_encode_marker(&x, params)? != *c {
        return Err(Error::MalformedCodeword {
            reason: "decoded string does not re-encode to the codeword".into(),
        });
    }
    Ok(x)
}
