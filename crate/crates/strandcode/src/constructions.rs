//! The two multi-strand reconstruction codes: end-to-end encoders from
//! information strings to strand multisets and decoders from (ell+1)-profiles
//! back to information.
//!
//! Construction A encodes into an ell'-repeat-free string, splits it into k
//! equal blocks, and prefixes block i with the q-ary expansion of i; the
//! index prefixes restore the block order after stitching. Construction B
//! windows an ell-repeat-free string into k strands overlapping in ell
//! symbols, so the multiset's (ell+1)-profile equals the single string's and
//! the decoder stitches one long strand.

use crate::core::{
    ceil_log, index_expansion, index_value, CodeParams, Construction, RfVariant, Strand,
    StrandMultiset,
};
use crate::error::{Error, Result};
use crate::repeat_free::{
    default_run_bound, marker_info_len, min_ell_basic, min_ell_marker, rf_decode, rf_encode,
    RfParams,
};
use crate::spectrum::Profile;

/// A Construction A codeword: k index-prefixed blocks of a repeat-free string.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodewordA {
    pub strands: StrandMultiset,
    pub params: CodeParams,
}

/// A Construction B codeword: k overlapping windows of a repeat-free string.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodewordB {
    pub strands: StrandMultiset,
    pub params: CodeParams,
}

fn rf_params_of(params: &CodeParams) -> RfParams {
    let ell = match params.construction {
        Construction::A => params.ell_prime.expect("validated by derive_params"),
        Construction::B => params.ell,
    };
    RfParams {
        q: params.q,
        n_prime: params.n_prime,
        ell,
        variant: params.rf_variant,
        run_bound: params.run_bound,
        m: params.m,
    }
}

/// Derive Construction A parameters: index width z = ceil(log_q k),
/// n' = (n - z)k, minimal inner window for the variant, ell = ell' + z.
pub fn derive_params_a(q: u32, n: usize, k: usize, variant: RfVariant) -> Result<CodeParams> {
    if q < 2 || k < 1 {
        return Err(Error::InfeasibleParams {
            reason: format!("need q >= 2 and k >= 1, got q = {q}, k = {k}"),
        });
    }
    let z = ceil_log(q, k);
    if n <= z {
        return Err(Error::InfeasibleParams {
            reason: format!("n = {n} must exceed the index width ceil(log_q k) = {z}"),
        });
    }
    let per_strand = n - z;
    let n_prime = per_strand * k;
    let (ell_prime, m, run_bound) = match variant {
        RfVariant::Basic => {
            if n_prime < 2 {
                return Err(Error::InfeasibleParams {
                    reason: "basic variant needs n' >= 2".into(),
                });
            }
            (min_ell_basic(q, n_prime), n_prime - 1, None)
        }
        RfVariant::Marker => {
            let rb = default_run_bound(q, n_prime);
            (
                min_ell_marker(q, n_prime, rb)?,
                marker_info_len(q, n_prime, rb)?,
                Some(rb),
            )
        }
    };
    if per_strand < ell_prime + 1 {
        return Err(Error::InfeasibleParams {
            reason: format!(
                "n'/k >= ell' + 1 violated: {per_strand} < {} (strands shorter than window)",
                ell_prime + 1
            ),
        });
    }
    let params = CodeParams {
        q,
        n,
        k,
        ell: ell_prime + z,
        ell_prime: Some(ell_prime),
        index_width: z,
        n_prime,
        m,
        construction: Construction::A,
        rf_variant: variant,
        run_bound,
    };
    params.validate()?;
    Ok(params)
}

/// Split an ell'-repeat-free string into k index-prefixed strands.
/// Exposed separately from [`encode_a`] so the splitting mechanism can be
/// exercised with any repeat-free source.
pub fn assemble_a(c: &Strand, params: &CodeParams) -> Result<CodewordA> {
    if c.len() != params.n_prime {
        return Err(Error::ParamMismatch {
            reason: format!("codeword length {} but n' = {}", c.len(), params.n_prime),
        });
    }
    if !params.n_prime.is_multiple_of(params.k) {
        return Err(Error::DivisibilityViolation {
            k: params.k,
            n_prime: params.n_prime,
        });
    }
    let per_strand = params.n_prime / params.k;
    let mut strands = Vec::with_capacity(params.k);
    for (idx, block) in c.symbols().chunks(per_strand).enumerate() {
        let prefix = index_expansion(idx + 1, params.index_width, params.q)?;
        strands.push(prefix.concat(&Strand::from(block)));
    }
    Ok(CodewordA {
        strands: StrandMultiset::new(strands)?,
        params: params.clone(),
    })
}

/// Construction A encoder: repeat-free encode, split, prefix indices.
pub fn encode_a(x: &Strand, params: &CodeParams) -> Result<CodewordA> {
    let c = rf_encode(x, &rf_params_of(params))?;
    assemble_a(&c, params)
}

/// Recover the concatenated repeat-free string from Construction A strands:
/// order by index prefix, verify the index set, strip prefixes.
pub fn disassemble_a(strands: &StrandMultiset, params: &CodeParams) -> Result<Strand> {
    let z = params.index_width;
    let k = params.k;
    let mut by_index: Vec<Option<&Strand>> = vec![None; k];
    for strand in strands.strands() {
        let idx = index_value(&strand.symbols()[..z], params.q);
        if idx < 1 || idx > k || by_index[idx - 1].is_some() {
            return Err(Error::IndexSetBroken { k });
        }
        by_index[idx - 1] = Some(strand);
    }
    let mut c = Vec::with_capacity(params.n_prime);
    for slot in by_index {
        let strand = slot.ok_or(Error::IndexSetBroken { k })?;
        c.extend_from_slice(&strand.symbols()[z..]);
    }
    Ok(Strand::new(c))
}

/// Construction A decoder: stitch the profile, order and strip the indices,
/// repeat-free decode.
pub fn decode_a(profile: &Profile, params: &CodeParams) -> Result<Strand> {
    let strands = crate::spectrum::stitch(profile, params.n, params.k)?;
    let c = disassemble_a(&strands, params)?;
    rf_decode(&c, &rf_params_of(params))
}

fn min_ell_for(q: u32, n_prime: usize, variant: RfVariant) -> Result<usize> {
    match variant {
        RfVariant::Basic => Ok(min_ell_basic(q, n_prime)),
        RfVariant::Marker => min_ell_marker(q, n_prime, default_run_bound(q, n_prime)),
    }
}

/// Derive Construction B parameters. The window depends on n' and n' on the
/// window, so iterate ell <- min_ell(n'(ell)) from ell_0 = min_ell(nk) until
/// stable; n' decreases in ell and min_ell is nondecreasing in n', so the
/// iteration settles in a couple of steps.
pub fn derive_params_b(q: u32, n: usize, k: usize, variant: RfVariant) -> Result<CodeParams> {
    if q < 2 || k < 1 {
        return Err(Error::InfeasibleParams {
            reason: format!("need q >= 2 and k >= 1, got q = {q}, k = {k}"),
        });
    }
    let mut ell = min_ell_for(q, n * k, variant)?;
    for _ in 0..8 {
        if n <= ell {
            return Err(Error::InfeasibleParams {
                reason: format!("n > ell violated: n = {n}, ell = {ell}"),
            });
        }
        let n_prime = (n - ell) * k + ell;
        let next = min_ell_for(q, n_prime, variant)?;
        if next == ell {
            break;
        }
        ell = next;
    }
    if n <= ell {
        return Err(Error::InfeasibleParams {
            reason: format!("n > ell violated: n = {n}, ell = {ell}"),
        });
    }
    let n_prime = (n - ell) * k + ell;
    let (m, run_bound) = match variant {
        RfVariant::Basic => (n_prime - 1, None),
        RfVariant::Marker => {
            let rb = default_run_bound(q, n_prime);
            (marker_info_len(q, n_prime, rb)?, Some(rb))
        }
    };
    let params = CodeParams {
        q,
        n,
        k,
        ell,
        ell_prime: None,
        index_width: 0,
        n_prime,
        m,
        construction: Construction::B,
        rf_variant: variant,
        run_bound,
    };
    params.validate()?;
    Ok(params)
}

/// Window an ell-repeat-free string into k strands at stride n - ell;
/// strand i covers positions (i-1)(n-ell)+1 ..= (i-1)(n-ell)+n.
pub fn assemble_b(c: &Strand, params: &CodeParams) -> Result<CodewordB> {
    if c.len() != params.n_prime {
        return Err(Error::ParamMismatch {
            reason: format!("codeword length {} but n' = {}", c.len(), params.n_prime),
        });
    }
    let stride = params.n - params.ell;
    let mut strands = Vec::with_capacity(params.k);
    for i in 0..params.k {
        let start = i * stride;
        strands.push(Strand::from(&c.symbols()[start..start + params.n]));
    }
    Ok(CodewordB {
        strands: StrandMultiset::new(strands)?,
        params: params.clone(),
    })
}

/// Construction B encoder: repeat-free encode, window into overlapping strands.
pub fn encode_b(x: &Strand, params: &CodeParams) -> Result<CodewordB> {
    let c = rf_encode(x, &rf_params_of(params))?;
    assemble_b(&c, params)
}

/// Construction B decoder: the profile of the multiset equals the profile of
/// the underlying string, so stitch it as a single strand of length n'.
pub fn decode_b(profile: &Profile, params: &CodeParams) -> Result<Strand> {
    let c = stitch_b(profile, params)?;
    rf_decode(&c, &rf_params_of(params))
}

/// The stitching half of [`decode_b`]: recover the repeat-free string.
pub fn stitch_b(profile: &Profile, params: &CodeParams) -> Result<Strand> {
    let rebuilt = crate::spectrum::stitch(profile, params.n_prime, 1)?;
    Ok(rebuilt.into_strands().remove(0))
}

impl CodewordA {
    /// Check the construction invariants: distinct index prefixes, the
    /// reassembled string is ell'-repeat-free, and all ell-mers across all
    /// strands are pairwise distinct.
    pub fn validate(&self) -> Result<()> {
        let params = &self.params;
        let c = disassemble_a(&self.strands, params)?;
        let ell_prime = params.ell_prime.expect("Construction A has ell'");
        if ell_prime <= c.len() && !crate::spectrum::is_repeat_free(&c, ell_prime)? {
            return Err(Error::MalformedCodeword {
                reason: "reassembled string is not repeat-free".into(),
            });
        }
        if !all_lmers_distinct(&self.strands, params.ell)? {
            return Err(Error::MalformedCodeword {
                reason: "codeword ell-mers are not pairwise distinct".into(),
            });
        }
        Ok(())
    }
}

impl CodewordB {
    /// Check the construction invariants against the source string:
    /// consecutive strands share an ell-overlap and the multiset profile
    /// equals the string profile.
    pub fn validate_against(&self, c: &Strand) -> Result<()> {
        let params = &self.params;
        let stride = params.n - params.ell;
        let mut previous: Option<&[u8]> = None;
        for i in 0..params.k {
            let window = &c.symbols()[i * stride..i * stride + params.n];
            if let Some(prev) = previous {
                if prev[stride..] != window[..params.ell] {
                    return Err(Error::MalformedCodeword {
                        reason: format!("strands {i} and {} do not overlap in ell symbols", i + 1),
                    });
                }
            }
            previous = Some(window);
        }
        let from_multiset = crate::spectrum::profile(&self.strands, params.ell + 1)?;
        let from_string = crate::spectrum::profile_of_strand(c, params.ell + 1)?;
        if from_multiset != from_string {
            return Err(Error::MalformedCodeword {
                reason: "multiset profile differs from string profile".into(),
            });
        }
        Ok(())
    }
}

/// True iff all ell-windows of all strands are pairwise distinct, i.e. the
/// multiset satisfies the stitching precondition.
pub fn all_lmers_distinct(s: &StrandMultiset, ell: usize) -> Result<bool> {
    let p = crate::spectrum::profile(s, ell)?;
    Ok(crate::spectrum::unique_count(&p) == p.total())
}
