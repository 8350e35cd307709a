//! Brute-force ground truth for the stitching decoder: enumerate every
//! strand multiset at desk scale, group by (ell+1)-profile, and require
//! stitch to succeed exactly on the uniquely-reconstructible instances whose
//! ell-windows are pairwise distinct, and to raise an error otherwise.

use std::collections::HashMap;

use strandcode::core::{multiset_equal, Strand, StrandMultiset};
use strandcode::spectrum::{profile, stitch, unique_count};

fn strand_of_code(mut code: u64, n: usize, q: u32) -> Strand {
    let mut symbols = vec![0u8; n];
    for slot in symbols.iter_mut().rev() {
        *slot = (code % q as u64) as u8;
        code /= q as u64;
    }
    Strand::new(symbols)
}

/// All multisets of k length-n strands, as nondecreasing code tuples.
fn all_multisets(q: u32, n: usize, k: usize) -> Vec<StrandMultiset> {
    let space = (q as u64).pow(n as u32);
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u64>> = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == k {
            let strands = prefix
                .iter()
                .map(|&code| strand_of_code(code, n, q))
                .collect();
            out.push(StrandMultiset::new(strands).unwrap());
            continue;
        }
        let floor = prefix.last().copied().unwrap_or(0);
        for code in floor..space {
            let mut next = prefix.clone();
            next.push(code);
            stack.push(next);
        }
    }
    out
}

fn profile_key(s: &StrandMultiset, ell: usize, q: u32) -> Vec<u32> {
    let mut key: Vec<u32> = s
        .strands()
        .iter()
        .flat_map(|strand| {
            strand
                .symbols()
                .windows(ell)
                .map(|w| w.iter().fold(0u32, |acc, &d| acc * q + d as u32))
        })
        .collect();
    key.sort_unstable();
    key
}

fn check_grid(q: u32, n: usize, k: usize) {
    let multisets = all_multisets(q, n, k);
    for ell in 1..n {
        let mer_len = ell + 1;
        let mut groups: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        for (idx, s) in multisets.iter().enumerate() {
            groups
                .entry(profile_key(s, mer_len, q))
                .or_default()
                .push(idx);
        }
        for members in groups.values() {
            let representative = &multisets[members[0]];
            let p = profile(representative, mer_len).unwrap();
            let unique_preimage = members.len() == 1;
            let windows_distinct = {
                let lp = profile(representative, ell).unwrap();
                unique_count(&lp) == lp.total()
            };
            // Degenerate full-window profiles determine the multiset
            // directly and always stitch.
            let expect_success = if mer_len == n {
                true
            } else {
                unique_preimage && windows_distinct
            };
            match stitch(&p, n, k) {
                Ok(rebuilt) => {
                    assert!(
                        expect_success,
                        "stitch succeeded on q={q} n={n} k={k} ell={ell} {representative:?} \
                         but preimage_unique={unique_preimage} windows_distinct={windows_distinct}"
                    );
                    assert!(
                        multiset_equal(&rebuilt, representative),
                        "stitch returned a different multiset for {representative:?}"
                    );
                }
                Err(err) => {
                    assert!(
                        !expect_success,
                        "stitch failed on reconstructible q={q} n={n} k={k} ell={ell} \
                         {representative:?}: {err}"
                    );
                }
            }
        }
    }
}

#[test]
fn oracle_binary_k1() {
    for n in 2..=6 {
        check_grid(2, n, 1);
    }
}

#[test]
fn oracle_binary_k2() {
    for n in 2..=6 {
        check_grid(2, n, 2);
    }
}

#[test]
fn oracle_ternary_k1() {
    for n in 2..=6 {
        check_grid(3, n, 1);
    }
}

#[test]
fn oracle_ternary_k2() {
    for n in 2..=6 {
        check_grid(3, n, 2);
    }
}
