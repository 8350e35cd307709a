//! Exact combinatorial counts, the redundancy/window bound formulas, and the
//! exhaustive census that ground-truths the constructions at desk scale.
//!
//! All exact counts use arbitrary-precision integers; logarithms are base q
//! throughout, with the natural-log conversion isolated in [`log_q`]. The
//! bound evaluators drop o(.)/O(.) terms and say so: every report row carries
//! an asymptotic-leading-terms flag.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::core::StrandMultiset;
use crate::error::{Error, Result};

/// Default upper bound on the number of multisets a census enumerates.
pub const DEFAULT_CENSUS_BUDGET: u64 = 10_000_000;

/// Cap on the number of multiplications in an exact binomial evaluation.
const MAX_BINOMIAL_TERMS: u128 = 1 << 22;

/// Cap on the bit size of q^n in exact channel computations.
const MAX_POWER_BITS: u64 = 1 << 20;

/// Base-q logarithm.
pub fn log_q(q: u32, x: f64) -> f64 {
    x.ln() / (q as f64).ln()
}

fn pow_checked(q: u32, e: usize) -> Result<BigUint> {
    let bits = (e as u64).saturating_mul(32 - q.leading_zeros() as u64);
    if bits > MAX_POWER_BITS {
        return Err(Error::ScaleTooLarge {
            reason: format!("q^n = {q}^{e} exceeds the bit budget"),
        });
    }
    Ok(BigUint::from(q).pow(e as u32))
}

/// Exact C(top, k) for big `top` and machine-sized `k`.
pub fn binomial(top: &BigUint, k: u64) -> Result<BigUint> {
    if k as u128 > MAX_BINOMIAL_TERMS {
        return Err(Error::ScaleTooLarge {
            reason: format!("binomial with {k} terms exceeds the budget"),
        });
    }
    if BigUint::from(k) > *top {
        return Ok(BigUint::zero());
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (top - BigUint::from(i)) / BigUint::from(i + 1);
    }
    Ok(acc)
}

/// |X_{n,k}| = C(k + q^n - 1, k): multisets of k length-n strands.
pub fn channel_size_exact(q: u32, n: usize, k: usize) -> Result<BigUint> {
    let space = pow_checked(q, n)?;
    binomial(&(space + BigUint::from(k) - BigUint::one()), k as u64)
}

/// log_q of the sandwich q^{nk}/k! <= |X_{n,k}| <= q^{nk} (e/k + e/(2 q^n))^k.
pub fn channel_log_bounds(q: u32, n: usize, k: usize) -> (f64, f64) {
    let nk = (n * k) as f64;
    let log_k_factorial: f64 = (1..=k).map(|i| log_q(q, i as f64)).sum();
    let lower = nk - log_k_factorial;
    let e = std::f64::consts::E;
    // e/(2 q^n) via logs so huge q^n degrades to zero instead of overflowing.
    let half_term = (e / 2.0).ln() - (n as f64) * (q as f64).ln();
    let inner = e / k as f64 + half_term.exp();
    let upper = nk + k as f64 * log_q(q, inner);
    (lower, upper)
}

/// Profile-vector bound: |B_{n,k,ell}| <= C(k(n-ell+1) + q^ell - 1, q^ell - 1).
pub fn profile_count_upper(q: u32, n: usize, k: usize, ell: usize) -> Result<BigUint> {
    if ell > n {
        return Err(Error::WindowTooLong { ell, len: n });
    }
    let occupancy = (k * (n - ell + 1)) as u64;
    let space = pow_checked(q, ell)?;
    // C(t + Q - 1, Q - 1) = C(t + Q - 1, t); evaluate over the smaller index.
    let top = BigUint::from(occupancy) + &space - BigUint::one();
    if BigUint::from(occupancy) <= &space - BigUint::one() {
        binomial(&top, occupancy)
    } else {
        let idx = (&space - BigUint::one())
            .to_u64()
            .ok_or_else(|| Error::ScaleTooLarge {
                reason: "profile bound index exceeds u64".into(),
            })?;
        binomial(&top, idx)
    }
}

/// |X*_{n,k}| = C(q^n, k): sets of k pairwise-distinct strands.
pub fn distinct_channel_size_exact(q: u32, n: usize, k: usize) -> Result<BigUint> {
    let space = pow_checked(q, n)?;
    if BigUint::from(k) > space {
        return Err(Error::EmptySpace {
            k,
            space: space.to_string(),
        });
    }
    binomial(&space, k as u64)
}

/// log_q of the closing-remark sandwich for the distinct-strand space:
/// q^{nk}(e/k - e/(2 q^n))^k <= |X*_{n,k}| <= q^{nk}/k!.
///
/// The displayed lower bound absorbs a Stirling factor e*sqrt(k) into its
/// o(k) term and can exceed the exact value at desk scale;
/// [`distinct_channel_log_lower_finite`] subtracts it back out to give an
/// inequality that holds at every finite size with k <= q^n / 2.
pub fn distinct_channel_log_bounds(q: u32, n: usize, k: usize) -> Result<(f64, f64)> {
    let space = pow_checked(q, n)?;
    if BigUint::from(k) > space {
        return Err(Error::EmptySpace {
            k,
            space: space.to_string(),
        });
    }
    let nk = (n * k) as f64;
    let e = std::f64::consts::E;
    let half_term = (e / 2.0).ln() - (n as f64) * (q as f64).ln();
    let inner = e / k as f64 - half_term.exp();
    let lower = nk + k as f64 * log_q(q, inner);
    let log_k_factorial: f64 = (1..=k).map(|i| log_q(q, i as f64)).sum();
    let upper = nk - log_k_factorial;
    Ok((lower, upper))
}

/// Finite-size correction of the displayed lower bound: subtract
/// log_q(e sqrt(k)), the Stirling factor the paper's display drops.
pub fn distinct_channel_log_lower_finite(q: u32, n: usize, k: usize) -> Result<f64> {
    let (lower, _) = distinct_channel_log_bounds(q, n, k)?;
    let e = std::f64::consts::E;
    Ok(lower - log_q(q, e * (k as f64).sqrt()))
}

/// Result of an exhaustive census of X_{n,k} grouped by ell-profile.
#[derive(Clone, Debug)]
pub struct Census {
    /// Multisets whose profile no other multiset shares: |A_{n,k,ell}|.
    pub size_a: u64,
    /// Distinct achievable profiles: |B_{n,k,ell}|.
    pub size_b: u64,
    /// Total multisets enumerated: |X_{n,k}|.
    pub total: u64,
    groups: HashMap<Vec<u32>, u64>,
    q: u32,
    ell: usize,
}

impl Census {
    /// How many multisets share this multiset's profile, if enumerated.
    pub fn profile_class_count(&self, s: &StrandMultiset) -> Option<u64> {
        self.groups.get(&profile_key(s, self.ell, self.q)).copied()
    }

    /// True when the multiset's profile is shared by no other multiset,
    /// i.e. the multiset lies in A_{n,k,ell}.
    pub fn is_singleton_class(&self, s: &StrandMultiset) -> bool {
        self.profile_class_count(s) == Some(1)
    }
}

/// Canonical profile key: sorted window codes with multiplicity.
fn profile_key(s: &StrandMultiset, ell: usize, q: u32) -> Vec<u32> {
    let mut key = Vec::with_capacity(s.k() * (s.n() - ell + 1));
    for strand in s.strands() {
        let symbols = strand.symbols();
        for w in symbols.windows(ell) {
            key.push(w.iter().fold(0u32, |acc, &d| acc * q + d as u32));
        }
    }
    key.sort_unstable();
    key
}

/// Decode a strand code back to symbols, most significant digit first.
fn strand_of_code(mut code: u64, n: usize, q: u32) -> Vec<u8> {
    let mut symbols = vec![0u8; n];
    for slot in symbols.iter_mut().rev() {
        *slot = (code % q as u64) as u8;
        code /= q as u64;
    }
    symbols
}

/// Per-strand sorted window codes, precomputed for every strand code.
fn window_table(q: u32, n: usize, ell: usize) -> Vec<Vec<u32>> {
    let space = (q as u64).pow(n as u32);
    (0..space)
        .map(|code| {
            let symbols = strand_of_code(code, n, q);
            symbols
                .windows(ell)
                .map(|w| w.iter().fold(0u32, |acc, &d| acc * q + d as u32))
                .collect()
        })
        .collect()
}

/// Enumerate nondecreasing completions of a multiset starting at `floor`
/// and fold their profile keys into the group map.
fn scan_shard(
    table: &[Vec<u32>],
    prefix_key: &[u32],
    floor: usize,
    remaining: usize,
    groups: &mut HashMap<Vec<u32>, u64>,
) {
    if remaining == 0 {
        let mut key = prefix_key.to_vec();
        key.sort_unstable();
        *groups.entry(key).or_insert(0) += 1;
        return;
    }
    for code in floor..table.len() {
        let mut key = Vec::with_capacity(prefix_key.len() + table[code].len());
        key.extend_from_slice(prefix_key);
        key.extend_from_slice(&table[code]);
        scan_shard(table, &key, code, remaining - 1, groups);
    }
}

fn census_guard(q: u32, n: usize, k: usize, ell: usize, budget: u64) -> Result<u64> {
    if ell > n {
        return Err(Error::WindowTooLong { ell, len: n });
    }
    if ell == 0 {
        return Err(Error::InfeasibleParams {
            reason: "census needs a positive window".into(),
        });
    }
    let total = channel_size_exact(q, n, k)?;
    let budget_big = BigUint::from(budget);
    if total > budget_big {
        return Err(Error::ScaleTooLarge {
            reason: format!("|X_{{{n},{k}}}| = {total} exceeds the census budget {budget}"),
        });
    }
    Ok(total.to_u64().expect("fits: bounded by budget"))
}

fn merge_groups(maps: Vec<HashMap<Vec<u32>, u64>>) -> HashMap<Vec<u32>, u64> {
    let mut merged = HashMap::new();
    for map in maps {
        for (key, count) in map {
            *merged.entry(key).or_insert(0) += count;
        }
    }
    merged
}

fn census_finish(groups: HashMap<Vec<u32>, u64>, total: u64, q: u32, ell: usize) -> Census {
    let size_b = groups.len() as u64;
    let size_a = groups.values().filter(|&&c| c == 1).count() as u64;
    Census {
        size_a,
        size_b,
        total,
        groups,
        q,
        ell,
    }
}

/// Sequential census: enumerate all of X_{n,k}, group by ell-profile.
pub fn census_seq(q: u32, n: usize, k: usize, ell: usize, budget: u64) -> Result<Census> {
    let total = census_guard(q, n, k, ell, budget)?;
    let table = window_table(q, n, ell);
    let maps: Vec<_> = (0..table.len())
        .map(|first| {
            let mut groups = HashMap::new();
            scan_shard(&table, &table[first], first, k - 1, &mut groups);
            groups
        })
        .collect();
    Ok(census_finish(merge_groups(maps), total, q, ell))
}

/// Parallel census: shard the enumeration by the smallest strand, scan
/// shards on the rayon pool, and reduce group counts pairwise so the merge
/// work parallelizes too. Addition commutes, so the merge order cannot
/// change the result.
#[cfg(feature = "parallel")]
pub fn census_par(q: u32, n: usize, k: usize, ell: usize, budget: u64) -> Result<Census> {
    use rayon::prelude::*;
    let total = census_guard(q, n, k, ell, budget)?;
    let table = window_table(q, n, ell);
    let groups = (0..table.len())
        .into_par_iter()
        .fold(HashMap::new, |mut groups, first| {
            scan_shard(&table, &table[first], first, k - 1, &mut groups);
            groups
        })
        .reduce(HashMap::new, |a, b| {
            let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
            for (key, count) in small {
                *big.entry(key).or_insert(0) += count;
            }
            big
        });
    Ok(census_finish(groups, total, q, ell))
}

/// Exhaustive census of X_{n,k} by ell-profile. Uses the rayon pool when the
/// `parallel` feature is enabled, the sequential scan otherwise.
pub fn census(q: u32, n: usize, k: usize, ell: usize, budget: u64) -> Result<Census> {
    #[cfg(feature = "parallel")]
    {
        census_par(q, n, k, ell, budget)
    }
    #[cfg(not(feature = "parallel"))]
    {
        census_seq(q, n, k, ell, budget)
    }
}

/// Leading-term evaluation of a window/redundancy trade-off case.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ThmBound {
    pub ell: f64,
    pub red_bound: f64,
    /// o(.)/O(.) terms are dropped: these are leading terms, not guarantees.
    pub asymptotic_leading_terms_only: bool,
}

fn rll_coefficient(q: u32) -> f64 {
    if q == 2 {
        // the q = 2 branch of the theorems: coefficient 2q
        4.0
    } else {
        q as f64 / (q as f64 - 2.0)
    }
}

/// Construction A window/redundancy leading terms (cases 1-3).
pub fn thm6_bound(case: u8, q: u32, n: usize, k: usize, epsilon: f64) -> ThmBound {
    let nf = n as f64;
    let kf = k as f64;
    let nk = nf * kf;
    let coef = rll_coefficient(q);
    let e = std::f64::consts::E;
    let alpha = log_q(q, kf) / nf;
    let n_prime = (nf - log_q(q, kf)) * kf;
    let (ell, red) = match case {
        1 => (
            log_q(q, n_prime * kf) + 2.0 * log_q(q, log_q(q, n_prime)) + 5.0,
            coef * nk / log_q(q, nk).powi(2) + kf * log_q(q, e),
        ),
        2 => (
            (1.0 + epsilon) * log_q(q, n_prime) + log_q(q, kf) + 5.0,
            coef * (1.0 - alpha).powf(1.0 - epsilon) * nk.powf(1.0 - epsilon) + kf * log_q(q, e),
        ),
        3 => (
            (1.0 + epsilon) * log_q(q, n_prime) + log_q(q, kf) + 5.0,
            kf * log_q(q, e),
        ),
        _ => panic!("theorem cases are 1, 2, 3"),
    };
    ThmBound {
        ell,
        red_bound: red,
        asymptotic_leading_terms_only: true,
    }
}

/// Construction B window/redundancy leading terms (cases 1-3).
pub fn thm8_bound(case: u8, q: u32, n: usize, k: usize, epsilon: f64) -> ThmBound {
    let nf = n as f64;
    let kf = k as f64;
    let nk = nf * kf;
    let coef = rll_coefficient(q);
    let (ell, red) = match case {
        1 => (
            log_q(q, nk) + 2.0 * log_q(q, log_q(q, nk)) + 5.0,
            coef * nk / log_q(q, nk).powi(2) + kf * log_q(q, nf),
        ),
        2 => (
            (1.0 + epsilon) * log_q(q, nk) + 5.0,
            coef * nk.powf(1.0 - epsilon)
                + kf * log_q(q, nf.powf(1.0 + epsilon) * kf.powf(epsilon)),
        ),
        3 => (
            (1.0 + epsilon) * log_q(q, nk) + 5.0,
            kf * log_q(q, nf.powf(1.0 + epsilon) * kf.powf(epsilon)),
        ),
        _ => panic!("theorem cases are 1, 2, 3"),
    };
    ThmBound {
        ell,
        red_bound: red,
        asymptotic_leading_terms_only: true,
    }
}

/// One row of the bounds report: exact counts where enumerable, formula
/// evaluations otherwise. Big integers travel as decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema_version: String,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub channel_size: String,
    pub channel_log: f64,
    pub lemma1_lower: f64,
    pub lemma1_upper: f64,
    pub profile_upper: String,
    pub census_a: Option<u64>,
    pub census_b: Option<u64>,
    pub rate_a: Option<f64>,
    pub rate_b: Option<f64>,
    pub distinct_exact: Option<String>,
    pub distinct_lower: f64,
    pub distinct_upper: f64,
    /// Finite proxy for limsup log(k)/n.
    pub alpha: f64,
    pub asymptotic_leading_terms_only: bool,
}

/// Version tag of the machine-readable report rows.
pub const REPORT_SCHEMA_VERSION: &str = "strandcode.bounds.v1";

/// log_q of a big integer, via bit length for values beyond f64 range.
pub fn log_q_big(q: u32, value: &BigUint) -> f64 {
    match value.to_f64() {
        Some(v) if v.is_finite() && v > 0.0 => log_q(q, v),
        _ => value.bits() as f64 * log_q(q, 2.0),
    }
}

/// Assemble one report row, running the census when it fits the budget.
pub fn bound_report_row(
    q: u32,
    n: usize,
    k: usize,
    ell: usize,
    budget: u64,
) -> Result<BoundReport> {
    let channel = channel_size_exact(q, n, k)?;
    let channel_log = log_q_big(q, &channel);
    let (lemma1_lower, lemma1_upper) = channel_log_bounds(q, n, k);
    let profile_upper = profile_count_upper(q, n, k, ell)?;
    let census_result = census(q, n, k, ell, budget).ok();
    let (census_a, census_b) = match &census_result {
        Some(c) => (Some(c.size_a), Some(c.size_b)),
        None => (None, None),
    };
    let rate_of = |count: Option<u64>| {
        count.and_then(|c| {
            if c == 0 || channel_log == 0.0 {
                None
            } else {
                Some(log_q(q, c as f64) / channel_log)
            }
        })
    };
    let distinct_exact = distinct_channel_size_exact(q, n, k)
        .ok()
        .map(|v| v.to_string());
    let (distinct_lower, distinct_upper) =
        distinct_channel_log_bounds(q, n, k).unwrap_or((f64::NEG_INFINITY, f64::NEG_INFINITY));
    Ok(BoundReport {
        schema_version: REPORT_SCHEMA_VERSION.to_string(),
        q,
        n,
        k,
        ell,
        channel_size: channel.to_string(),
        channel_log,
        lemma1_lower,
        lemma1_upper,
        profile_upper: profile_upper.to_string(),
        census_a,
        census_b,
        rate_a: rate_of(census_a),
        rate_b: rate_of(census_b),
        distinct_exact,
        distinct_lower,
        distinct_upper,
        alpha: log_q(q, k as f64) / n as f64,
        asymptotic_leading_terms_only: true,
    })
}
