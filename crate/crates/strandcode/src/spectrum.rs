//! Profile extraction, repeat-freeness testing, and stitching reconstruction
//! of a strand multiset from its (ell+1)-profile.
//!
//! Stitching follows the unique-overlap argument: when all ell-windows of the
//! source are pairwise distinct, every (ell+1)-mer has at most one predecessor
//! whose ell-suffix equals its ell-prefix, so chains can be extended greedily.
//! Precondition violations are detected at run time as duplicate prefix or
//! suffix keys instead of being trusted.

use std::collections::BTreeMap;

use crate::core::{Strand, StrandMultiset};
use crate::error::{Error, Result};

/// A multiset of equal-length windows, kept as count map in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Profile {
    mers: BTreeMap<Strand, usize>,
    mer_length: usize,
    total: usize,
}

impl Profile {
    /// Build from windows in any order. All must share one length.
    pub fn from_mers<I: IntoIterator<Item = Strand>>(mers: I) -> Result<Self> {
        let mut map: BTreeMap<Strand, usize> = BTreeMap::new();
        let mut mer_length = None;
        let mut total = 0usize;
        for mer in mers {
            match mer_length {
                None => mer_length = Some(mer.len()),
                Some(l) if l != mer.len() => {
                    return Err(Error::MalformedSpectrum {
                        reason: format!(
                            "profile mixes window lengths {l} and {}",
                            mer.len()
                        ),
                    })
                }
                _ => {}
            }
            *map.entry(mer).or_insert(0) += 1;
            total += 1;
        }
        let mer_length = mer_length.unwrap_or(0);
        Ok(Profile {
            mers: map,
            mer_length,
            total,
        })
    }

    pub fn mer_length(&self) -> usize {
        self.mer_length
    }

    /// Count with multiplicity.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Distinct mers with their multiplicities, in sorted order.
    pub fn counts(&self) -> impl Iterator<Item = (&Strand, usize)> {
        self.mers.iter().map(|(m, &c)| (m, c))
    }

    /// Every mer repeated per its multiplicity, in sorted order.
    pub fn iter_with_multiplicity(&self) -> impl Iterator<Item = &Strand> {
        self.mers
            .iter()
            .flat_map(|(m, &c)| std::iter::repeat_n(m, c))
    }
}

/// The ell-profile of a strand multiset: the multiset union of all
/// ell-windows of all strands, with multiplicity.
pub fn profile(s: &StrandMultiset, ell: usize) -> Result<Profile> {
    let mut all = Vec::with_capacity(s.k() * (s.n().saturating_sub(ell) + 1));
    for strand in s.strands() {
        all.extend(strand.lmers(ell)?);
    }
    Profile::from_mers(all)
}

/// The ell-profile of a single strand.
pub fn profile_of_strand(x: &Strand, ell: usize) -> Result<Profile> {
    Profile::from_mers(x.lmers(ell)?)
}

/// Number of distinct mers ignoring multiplicity.
pub fn unique_count(p: &Profile) -> usize {
    p.mers.len()
}

/// True iff all ell-windows of `x` are pairwise distinct.
pub fn is_repeat_free(x: &Strand, ell: usize) -> Result<bool> {
    let windows = x.lmers(ell)?;
    let expected = windows.len();
    let mut seen = std::collections::HashSet::with_capacity(expected);
    for w in windows {
        if !seen.insert(w) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reconstruct the unique strand multiset of `k` length-`n` strands whose
/// (ell+1)-profile is `p`, assuming the source's ell-windows were pairwise
/// distinct. Fails loudly otherwise: a duplicate prefix/suffix key raises
/// [`Error::AmbiguousSpectrum`], structural inconsistencies raise
/// [`Error::MalformedSpectrum`].
pub fn stitch(p: &Profile, n: usize, k: usize) -> Result<StrandMultiset> {
    let mer_len = p.mer_length();
    if mer_len < 2 {
        return Err(Error::MalformedSpectrum {
            reason: format!("stitching needs windows of length >= 2, got {mer_len}"),
        });
    }
    if mer_len > n {
        return Err(Error::WindowTooLong {
            ell: mer_len,
            len: n,
        });
    }
    let expected_total = k * (n - mer_len + 1);
    if p.total() != expected_total {
        return Err(Error::MalformedSpectrum {
            reason: format!(
                "profile holds {} mers but k(n-ell) = {} expected",
                p.total(),
                expected_total
            ),
        });
    }

    // Degenerate case: mers are whole strands.
    if mer_len == n {
        let strands: Vec<Strand> = p.iter_with_multiplicity().cloned().collect();
        return StrandMultiset::new(strands);
    }

    let ell = mer_len - 1;

    // Any mer with multiplicity > 1 repeats its own prefix window.
    for (mer, count) in p.counts() {
        if count > 1 {
            return Err(Error::AmbiguousSpectrum {
                key: mer.to_string(),
            });
        }
    }

    // Unique-overlap lookup from each mer's ell-prefix; duplicates mean the
    // source had a repeated ell-window.
    let mut by_prefix: BTreeMap<&[u8], &Strand> = BTreeMap::new();
    let mut suffix_seen: BTreeMap<&[u8], usize> = BTreeMap::new();
    for (mer, _) in p.counts() {
        let prefix = &mer.symbols()[..ell];
        if by_prefix.insert(prefix, mer).is_some() {
            return Err(Error::AmbiguousSpectrum {
                key: Strand::from(prefix).to_string(),
            });
        }
        let suffix = &mer.symbols()[mer.len() - ell..];
        let c = suffix_seen.entry(suffix).or_insert(0);
        *c += 1;
        if *c > 1 {
            return Err(Error::AmbiguousSpectrum {
                key: Strand::from(suffix).to_string(),
            });
        }
    }

    // Start mers: those whose prefix is no mer's suffix.
    let starts: Vec<&Strand> = by_prefix
        .values()
        .filter(|mer| !suffix_seen.contains_key(&mer.symbols()[..ell]))
        .copied()
        .collect();
    if starts.len() != k {
        return Err(Error::MalformedSpectrum {
            reason: format!("found {} chain starts, expected k = {}", starts.len(), k),
        });
    }

    let mut consumed: std::collections::HashSet<&Strand> = std::collections::HashSet::new();
    let mut strands = Vec::with_capacity(k);
    for start in starts {
        let mut symbols = start.symbols().to_vec();
        consumed.insert(start);
        while symbols.len() < n {
            let suffix = &symbols[symbols.len() - ell..];
            let next = by_prefix.get(suffix).copied().ok_or_else(|| {
                Error::MalformedSpectrum {
                    reason: format!(
                        "chain ended at length {} of {n}: no mer extends suffix {}",
                        symbols.len(),
                        Strand::from(suffix)
                    ),
                }
            })?;
            if !consumed.insert(next) {
                return Err(Error::MalformedSpectrum {
                    reason: format!("mer {next} demanded by two chains"),
                });
            }
            symbols.push(*next.symbols().last().expect("mers are non-empty"));
        }
        strands.push(Strand::new(symbols));
    }

    if consumed.len() != p.total() {
        return Err(Error::MalformedSpectrum {
            reason: format!(
                "{} of {} mers left over after stitching",
                p.total() - consumed.len(),
                p.total()
            ),
        });
    }

    StrandMultiset::new(strands)
}
