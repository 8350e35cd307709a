//! Alphabet, strand, and multiset primitives shared by every other module.
//!
//! Symbols are integers `0..q` stored as `u8`; the distinguished zero symbol
//! is `0`. Strands are finite symbol sequences; a strand multiset is an
//! unordered, multiplicity-sensitive collection of equal-length strands kept
//! in canonical (lexicographically sorted) order so that structural equality
//! is multiset equality.

use std::fmt;

use crate::error::{Error, Result};

/// Smallest `w` with `q^w >= x`, i.e. `ceil(log_q(x))` for `x >= 1`.
pub fn ceil_log(q: u32, x: usize) -> usize {
    assert!(q >= 2, "alphabet size must be at least 2");
    assert!(x >= 1, "ceil_log argument must be positive");
    let mut w = 0;
    let mut pow: u128 = 1;
    while pow < x as u128 {
        pow *= q as u128;
        w += 1;
    }
    w
}

/// `q^e` if it fits in a `u128`.
pub fn checked_pow(q: u32, e: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(q as u128)?;
    }
    Some(acc)
}

/// A finite sequence of q-ary symbols. The empty strand is permitted as the
/// concatenation identity; multisets and codecs impose their own length
/// requirements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Strand(Vec<u8>);

impl Strand {
    pub fn new(symbols: Vec<u8>) -> Self {
        Strand(symbols)
    }

    pub fn empty() -> Self {
        Strand(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.0
    }

    /// True when every symbol is below `q`.
    pub fn fits_alphabet(&self, q: u32) -> bool {
        self.0.iter().all(|&s| (s as u32) < q)
    }

    /// Concatenation `self ∘ other`.
    pub fn concat(&self, other: &Strand) -> Strand {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Strand(v)
    }

    /// All length-`ell` windows in left-to-right order; window `i` (1-based)
    /// covers positions `i..=i+ell-1`.
    pub fn lmers(&self, ell: usize) -> Result<Vec<Strand>> {
        if ell == 0 || ell > self.len() {
            return Err(Error::WindowTooLong {
                ell,
                len: self.len(),
            });
        }
        Ok(self
            .0
            .windows(ell)
            .map(|w| Strand(w.to_vec()))
            .collect())
    }

    /// Parse from a digit string, validating against the alphabet.
    pub fn from_digits(s: &str, q: u32) -> Result<Self> {
        let mut v = Vec::with_capacity(s.len());
        for c in s.chars() {
            let d = c.to_digit(10).ok_or_else(|| Error::Parse {
                reason: format!("non-digit symbol {c:?} in strand"),
            })?;
            if d >= q {
                return Err(Error::Parse {
                    reason: format!("symbol {d} out of range for alphabet size {q}"),
                });
            }
            v.push(d as u8);
        }
        Ok(Strand(v))
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            if s < 10 {
                write!(f, "{s}")?;
            } else {
                write!(f, "[{s}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<&[u8]> for Strand {
    fn from(s: &[u8]) -> Self {
        Strand(s.to_vec())
    }
}

/// Base-q expansion of `i - 1`, left-padded with zeros to exactly `width`
/// symbols. Injective over `1..=k` whenever `q^width >= k`.
pub fn index_expansion(i: usize, width: usize, q: u32) -> Result<Strand> {
    assert!(i >= 1, "strand indices are 1-based");
    let capacity = checked_pow(q, width).ok_or_else(|| Error::ScaleTooLarge {
        reason: format!("q^width = {q}^{width} overflows"),
    })?;
    let value = (i - 1) as u128;
    if value >= capacity {
        return Err(Error::WidthTooSmall {
            width,
            value: i,
            q,
        });
    }
    let mut digits = vec![0u8; width];
    let mut v = value;
    for slot in digits.iter_mut().rev() {
        *slot = (v % q as u128) as u8;
        v /= q as u128;
    }
    Ok(Strand(digits))
}

/// Inverse of [`index_expansion`]: reads a `width`-symbol base-q prefix back
/// to a 1-based index.
pub fn index_value(symbols: &[u8], q: u32) -> usize {
    let mut v: usize = 0;
    for &d in symbols {
        v = v * q as usize + d as usize;
    }
    v + 1
}

/// An unordered multiset of `k` strands of common length `n`. Canonical form
/// is the lexicographically sorted strand list; equality through the derived
/// `PartialEq` is therefore multiset equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrandMultiset {
    strands: Vec<Strand>,
    n: usize,
    k: usize,
}

impl StrandMultiset {
    /// Build from strands in any order; sorts into canonical form.
    pub fn new(mut strands: Vec<Strand>) -> Result<Self> {
        if strands.is_empty() {
            return Err(Error::MalformedSpectrum {
                reason: "strand multiset must contain at least one strand".into(),
            });
        }
        let n = strands[0].len();
        if n == 0 {
            return Err(Error::MalformedSpectrum {
                reason: "strands in a multiset must be non-empty".into(),
            });
        }
        if strands.iter().any(|s| s.len() != n) {
            return Err(Error::MalformedSpectrum {
                reason: "strands in a multiset must share a common length".into(),
            });
        }
        strands.sort();
        let k = strands.len();
        Ok(StrandMultiset { strands, n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Strands in canonical sorted order.
    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn into_strands(self) -> Vec<Strand> {
        self.strands
    }

    /// True when all k strands are pairwise distinct (the X*_{n,k} setting).
    pub fn all_distinct(&self) -> bool {
        self.strands.windows(2).all(|w| w[0] != w[1])
    }
}

/// Multiset equality: identical strands with identical multiplicities.
pub fn multiset_equal(a: &StrandMultiset, b: &StrandMultiset) -> bool {
    a == b
}

/// Which of the paper's two constructions a parameter set belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub enum Construction {
    A,
    B,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::A => write!(f, "A"),
            Construction::B => write!(f, "B"),
        }
    }
}

/// Which repeat-free encoder backs a construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub enum RfVariant {
    /// Single redundant symbol; needs window >= 2*ceil(log_q n') + 2.
    Basic,
    /// Zero-run marker scheme; needs window >= ceil(log_q n') + run_bound + 5,
    /// redundancy equal to the inner run-length-limited encoder's.
    Marker,
}

impl fmt::Display for RfVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RfVariant::Basic => write!(f, "basic"),
            RfVariant::Marker => write!(f, "marker"),
        }
    }
}

/// Full parameter tuple for one construction instance: the channel
/// dimensions (q, n, k), window lengths, the concatenated repeat-free
/// length n', and the information length m in symbols.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodeParams {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    /// Window length whose (ell+1)-profile the decoder consumes.
    pub ell: usize,
    /// Inner repeat-free window for Construction A (ell = ell' + index width).
    pub ell_prime: Option<usize>,
    /// Index prefix width for Construction A: ceil(log_q k).
    pub index_width: usize,
    /// Length of the concatenated repeat-free codeword.
    pub n_prime: usize,
    /// Information length in symbols.
    pub m: usize,
    pub construction: Construction,
    pub rf_variant: RfVariant,
    /// Zero-run bound of the marker variant's inner RLL step.
    pub run_bound: Option<usize>,
}

impl CodeParams {
    /// Check the structural invariants shared by both constructions.
    pub fn validate(&self) -> Result<()> {
        if self.q < 2 {
            return Err(Error::InfeasibleParams {
                reason: format!("alphabet size q = {} must be at least 2", self.q),
            });
        }
        if self.k < 1 {
            return Err(Error::InfeasibleParams {
                reason: "strand count k must be at least 1".into(),
            });
        }
        if self.ell + 1 < 2 || self.ell + 1 > self.n {
            return Err(Error::InfeasibleParams {
                reason: format!(
                    "profile window must satisfy 2 <= ell+1 <= n, got ell+1 = {} with n = {}",
                    self.ell + 1,
                    self.n
                ),
            });
        }
        if self.m >= self.n * self.k {
            return Err(Error::InfeasibleParams {
                reason: format!(
                    "information length m = {} must be below n*k = {}",
                    self.m,
                    self.n * self.k
                ),
            });
        }
        match self.construction {
            Construction::A => {
                let z = self.index_width;
                if !self.n_prime.is_multiple_of(self.k) {
                    return Err(Error::DivisibilityViolation {
                        k: self.k,
                        n_prime: self.n_prime,
                    });
                }
                let ell_prime = self.ell_prime.ok_or_else(|| Error::InfeasibleParams {
                    reason: "Construction A needs an inner window ell'".into(),
                })?;
                if ell_prime + z != self.ell {
                    return Err(Error::InfeasibleParams {
                        reason: format!(
                            "ell = ell' + ceil(log_q k) violated: {} != {} + {}",
                            self.ell, ell_prime, z
                        ),
                    });
                }
                if self.n_prime / self.k + z != self.n {
                    return Err(Error::InfeasibleParams {
                        reason: format!(
                            "n = n'/k + ceil(log_q k) violated: {} != {}/{} + {}",
                            self.n, self.n_prime, self.k, z
                        ),
                    });
                }
            }
            Construction::B => {
                if self.n <= self.ell {
                    return Err(Error::InfeasibleParams {
                        reason: format!("Construction B needs n > ell, got n = {} ell = {}", self.n, self.ell),
                    });
                }
                if self.n_prime != (self.n - self.ell) * self.k + self.ell {
                    return Err(Error::InfeasibleParams {
                        reason: format!(
                            "n' = (n-ell)k + ell violated: {} != ({} - {})*{} + {}",
                            self.n_prime, self.n, self.ell, self.k, self.ell
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Total redundancy in symbols: n*k - m.
    pub fn redundancy(&self) -> usize {
        self.n * self.k - self.m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(digits: &str) -> Strand {
        Strand::from_digits(digits, 10).unwrap()
    }

    #[test]
    fn concat_definition() {
        assert_eq!(s("01").concat(&s("10")), s("0110"));
    }

    #[test]
    fn concat_empty_identity() {
        let x = s("0110");
        assert_eq!(x.concat(&Strand::empty()), x);
        assert_eq!(Strand::empty().concat(&x), x);
    }

    #[test]
    fn concat_construction_a_trace() {
        // index prefix 0 glued onto a block, as Construction A does
        assert_eq!(s("0").concat(&s("0011")), s("00011"));
    }

    #[test]
    fn lmers_paper_example() {
        let windows = s("01010").lmers(3).unwrap();
        assert_eq!(windows, vec![s("010"), s("101"), s("010")]);
    }

    #[test]
    fn lmers_full_window() {
        let x = s("0011");
        assert_eq!(x.lmers(4).unwrap(), vec![x.clone()]);
    }

    #[test]
    fn lmers_enumerated_by_hand() {
        assert_eq!(s("0011").lmers(2).unwrap(), vec![s("00"), s("01"), s("11")]);
    }

    #[test]
    fn lmers_window_count() {
        for len in 1..=8usize {
            let x = Strand::new((0..len as u8).collect());
            for ell in 1..=len {
                assert_eq!(x.lmers(ell).unwrap().len(), len - ell + 1);
            }
        }
    }

    #[test]
    fn lmers_too_long() {
        assert!(matches!(
            s("01").lmers(3),
            Err(Error::WindowTooLong { ell: 3, len: 2 })
        ));
    }

    #[test]
    fn index_expansion_zero_based_convention() {
        assert_eq!(index_expansion(1, 1, 2).unwrap(), s("0"));
        assert_eq!(index_expansion(2, 1, 2).unwrap(), s("1"));
        assert_eq!(index_expansion(5, 3, 2).unwrap(), s("100"));
    }

    #[test]
    fn index_expansion_injective_and_fixed_width() {
        for q in [2u32, 3, 4] {
            for k in 1..=20usize {
                let width = ceil_log(q, k);
                let mut seen = std::collections::HashSet::new();
                for i in 1..=k {
                    let e = index_expansion(i, width, q).unwrap();
                    assert_eq!(e.len(), width);
                    assert!(seen.insert(e.clone()));
                    assert_eq!(index_value(e.symbols(), q), i);
                }
            }
        }
    }

    #[test]
    fn index_expansion_width_too_small() {
        assert!(matches!(
            index_expansion(5, 2, 2),
            Err(Error::WidthTooSmall { .. })
        ));
    }

    #[test]
    fn multiset_equality_is_order_free() {
        let a = StrandMultiset::new(vec![s("01"), s("10")]).unwrap();
        let b = StrandMultiset::new(vec![s("10"), s("01")]).unwrap();
        assert!(multiset_equal(&a, &b));
    }

    #[test]
    fn multiset_equality_is_multiplicity_sensitive() {
        let a = StrandMultiset::new(vec![s("01"), s("01")]).unwrap();
        let b = StrandMultiset::new(vec![s("01")]).unwrap();
        assert!(!multiset_equal(&a, &b));
        let c = StrandMultiset::new(vec![s("010"), s("101"), s("010")]).unwrap();
        let d = StrandMultiset::new(vec![s("010"), s("101"), s("101")]).unwrap();
        assert!(!multiset_equal(&c, &d));
    }

    #[test]
    fn ceil_log_edges() {
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 2), 1);
        assert_eq!(ceil_log(2, 3), 2);
        assert_eq!(ceil_log(3, 32), 4);
        assert_eq!(ceil_log(2, 1024), 10);
    }
}
