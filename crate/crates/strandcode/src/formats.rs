//! Text file formats and the symbol-level payload container.
//!
//! Strand and profile files are line-oriented with an explicit header so
//! desk-scale experiments stay inspectable and golden files stay stable.
//! The payload container maps byte payloads to base-q symbols: the bytes are
//! read as one big-endian integer and written as base-q digits, so q need
//! not be a power of two; the digit count is declared in the header and the
//! byte count is the largest nb with 256^nb <= q^digits (unique for q < 256).

use std::io::{BufRead, Write};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::core::{Construction, RfVariant, Strand, StrandMultiset};
use crate::error::{Error, Result};
use crate::spectrum::Profile;

const STRAND_MAGIC: &str = "strandfile";
const PROFILE_MAGIC: &str = "profilefile";

/// A strand multiset on disk: `strandfile q n k` then one strand per line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrandFile {
    pub q: u32,
    pub strands: StrandMultiset,
}

impl StrandFile {
    pub fn new(q: u32, strands: StrandMultiset) -> Result<Self> {
        for strand in strands.strands() {
            if !strand.fits_alphabet(q) {
                return Err(Error::Parse {
                    reason: format!("strand {strand} has symbols outside alphabet {q}"),
                });
            }
        }
        Ok(StrandFile { q, strands })
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "{STRAND_MAGIC} {} {} {}",
            self.q,
            self.strands.n(),
            self.strands.k()
        )?;
        for strand in self.strands.strands() {
            writeln!(out, "{strand}")?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines.next().ok_or_else(|| Error::Parse {
            reason: "empty strand file".into(),
        })??;
        let (q, n, k) = parse_header(&header, STRAND_MAGIC)?;
        let mut strands = Vec::with_capacity(k);
        for line in lines {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let strand = Strand::from_digits(&line, q)?;
            if strand.len() != n {
                return Err(Error::Parse {
                    reason: format!("strand line length {} but header says n = {n}", strand.len()),
                });
            }
            strands.push(strand);
        }
        if strands.len() != k {
            return Err(Error::Parse {
                reason: format!("{} strand lines but header says k = {k}", strands.len()),
            });
        }
        Ok(StrandFile {
            q,
            strands: StrandMultiset::new(strands)?,
        })
    }
}

/// A profile on disk: `profilefile q mer_length total` then one mer per
/// line, repeated per multiplicity, in arbitrary order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProfileFile {
    pub q: u32,
    pub mers: Vec<Strand>,
}

impl ProfileFile {
    pub fn new(q: u32, mers: Vec<Strand>) -> Result<Self> {
        for mer in &mers {
            if !mer.fits_alphabet(q) {
                return Err(Error::Parse {
                    reason: format!("mer {mer} has symbols outside alphabet {q}"),
                });
            }
        }
        Ok(ProfileFile { q, mers })
    }

    pub fn mer_length(&self) -> usize {
        self.mers.first().map_or(0, Strand::len)
    }

    pub fn to_profile(&self) -> Result<Profile> {
        Profile::from_mers(self.mers.iter().cloned())
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "{PROFILE_MAGIC} {} {} {}",
            self.q,
            self.mer_length(),
            self.mers.len()
        )?;
        for mer in &self.mers {
            writeln!(out, "{mer}")?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines.next().ok_or_else(|| Error::Parse {
            reason: "empty profile file".into(),
        })??;
        let (q, mer_length, total) = parse_header(&header, PROFILE_MAGIC)?;
        let mut mers = Vec::with_capacity(total);
        for line in lines {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let mer = Strand::from_digits(&line, q)?;
            if mer.len() != mer_length {
                return Err(Error::Parse {
                    reason: format!(
                        "mer line length {} but header says {mer_length}",
                        mer.len()
                    ),
                });
            }
            mers.push(mer);
        }
        if mers.len() != total {
            return Err(Error::Parse {
                reason: format!("{} mer lines but header says {total}", mers.len()),
            });
        }
        Ok(ProfileFile { q, mers })
    }
}

fn parse_header(line: &str, magic: &str) -> Result<(u32, usize, usize)> {
    let mut parts = line.split_whitespace();
    let tag = parts.next().unwrap_or("");
    if tag != magic {
        return Err(Error::Parse {
            reason: format!("expected {magic} header, found {tag:?}"),
        });
    }
    let mut field = |name: &str| -> Result<usize> {
        parts
            .next()
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse {
                reason: format!("bad or missing {name} in {magic} header"),
            })
    };
    let q = field("q")?;
    let a = field("second header field")?;
    let b = field("third header field")?;
    if !(2..=10).contains(&q) {
        return Err(Error::Parse {
            reason: format!("alphabet size {q} outside the digit-format range 2..=10"),
        });
    }
    Ok((q as u32, a, b))
}

/// Symbol-level wrapper of a byte payload: magic, an alphabet check symbol,
/// construction and variant tags, the payload digit count, the payload
/// digits, and zero padding up to the information length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PayloadContainer {
    pub q: u32,
    pub construction: Construction,
    pub rf_variant: RfVariant,
    pub payload: Vec<u8>,
}

/// Fixed part of the container header: magic symbol, alphabet check symbol,
/// construction tag, variant tag.
const CONTAINER_FIXED: usize = 4;

fn digit_count_width(q: u32, m: usize) -> usize {
    crate::core::ceil_log(q, m + 1)
}

/// Base-q digits needed to carry `nbytes` payload bytes.
fn digits_for_bytes(q: u32, nbytes: usize) -> usize {
    if nbytes == 0 {
        return 0;
    }
    let target = BigUint::from(256u32).pow(nbytes as u32);
    let mut d = 0usize;
    let mut acc = BigUint::from(1u32);
    while acc < target {
        acc *= q;
        d += 1;
    }
    d
}

/// Largest byte count whose digits fit in `digits` base-q symbols; inverse
/// of [`digits_for_bytes`] for q < 256.
fn bytes_for_digits(q: u32, digits: usize) -> usize {
    let cap = BigUint::from(q).pow(digits as u32);
    let mut nb = 0usize;
    let mut acc = BigUint::from(1u32);
    loop {
        acc *= 256u32;
        if acc > cap {
            return nb;
        }
        nb += 1;
    }
}

impl PayloadContainer {
    /// Maximum payload bytes a container of `m` symbols can carry.
    pub fn capacity_bytes(q: u32, m: usize) -> usize {
        let header = CONTAINER_FIXED + digit_count_width(q, m);
        if m <= header {
            return 0;
        }
        bytes_for_digits(q, m - header)
    }

    /// Render the container as exactly `m` symbols.
    pub fn pack(&self, m: usize) -> Result<Strand> {
        let q = self.q;
        let width = digit_count_width(q, m);
        let digits = digits_for_bytes(q, self.payload.len());
        let header = CONTAINER_FIXED + width;
        if header + digits > m {
            return Err(Error::PayloadTooLarge {
                reason: format!(
                    "{} bytes need {} symbols but only {} fit (capacity {} bytes)",
                    self.payload.len(),
                    header + digits,
                    m,
                    Self::capacity_bytes(q, m)
                ),
            });
        }
        let mut symbols = Vec::with_capacity(m);
        symbols.push(1);
        symbols.push((q - 1) as u8);
        symbols.push(match self.construction {
            Construction::A => 0,
            Construction::B => 1,
        });
        symbols.push(match self.rf_variant {
            RfVariant::Basic => 0,
            RfVariant::Marker => 1,
        });
        symbols.extend(fixed_digits_big(&BigUint::from(digits), width, q));
        let value = BigUint::from_bytes_be(&self.payload);
        symbols.extend(fixed_digits_big(&value, digits, q));
        symbols.resize(m, 0);
        Ok(Strand::new(symbols))
    }

    /// Parse a container back out of an information string, checking the
    /// tags against the expected parameters.
    pub fn unpack(
        x: &Strand,
        q: u32,
        construction: Construction,
        rf_variant: RfVariant,
    ) -> Result<Self> {
        let symbols = x.symbols();
        let m = symbols.len();
        let width = digit_count_width(q, m);
        if m < CONTAINER_FIXED + width {
            return Err(Error::Parse {
                reason: "information string shorter than the container header".into(),
            });
        }
        if symbols[0] != 1 || symbols[1] != (q - 1) as u8 {
            return Err(Error::Parse {
                reason: "container magic or alphabet check damaged".into(),
            });
        }
        let cons = match symbols[2] {
            0 => Construction::A,
            1 => Construction::B,
            other => {
                return Err(Error::Parse {
                    reason: format!("unknown construction tag {other}"),
                })
            }
        };
        let variant = match symbols[3] {
            0 => RfVariant::Basic,
            1 => RfVariant::Marker,
            other => {
                return Err(Error::Parse {
                    reason: format!("unknown variant tag {other}"),
                })
            }
        };
        if cons != construction || variant != rf_variant {
            return Err(Error::ParamMismatch {
                reason: format!(
                    "container tagged {cons}/{variant}, expected {construction}/{rf_variant}"
                ),
            });
        }
        let digits = big_value(&symbols[CONTAINER_FIXED..CONTAINER_FIXED + width], q)
            .try_into()
            .map_err(|_| Error::Parse {
                reason: "digit count overflows".into(),
            })
            .and_then(|d: u64| {
                let d = d as usize;
                if CONTAINER_FIXED + width + d > m {
                    Err(Error::Parse {
                        reason: format!("declared digit count {d} exceeds the container"),
                    })
                } else {
                    Ok(d)
                }
            })?;
        let body = &symbols[CONTAINER_FIXED + width..CONTAINER_FIXED + width + digits];
        if symbols[CONTAINER_FIXED + width + digits..]
            .iter()
            .any(|&s| s != 0)
        {
            return Err(Error::Parse {
                reason: "container padding damaged".into(),
            });
        }
        let nbytes = bytes_for_digits(q, digits);
        let payload = if nbytes == 0 {
            Vec::new()
        } else {
            let value = big_value_biguint(body, q);
            let mut bytes = value.to_bytes_be();
            if bytes == [0] {
                bytes.clear();
            }
            if bytes.len() > nbytes {
                return Err(Error::Parse {
                    reason: "payload digits exceed the declared byte count".into(),
                });
            }
            while bytes.len() < nbytes {
                bytes.insert(0, 0);
            }
            bytes
        };
        Ok(PayloadContainer {
            q,
            construction: cons,
            rf_variant: variant,
            payload,
        })
    }
}

fn fixed_digits_big(value: &BigUint, width: usize, q: u32) -> Vec<u8> {
    let mut digits = vec![0u8; width];
    let mut v = value.clone();
    let qq = BigUint::from(q);
    for slot in digits.iter_mut().rev() {
        let rem = &v % &qq;
        *slot = rem.to_u64_digits().first().copied().unwrap_or(0) as u8;
        v /= &qq;
    }
    debug_assert!(v.is_zero(), "value wider than the field");
    digits
}

fn big_value_biguint(symbols: &[u8], q: u32) -> BigUint {
    let mut acc = BigUint::zero();
    for &d in symbols {
        acc = acc * q + d;
    }
    acc
}

fn big_value(symbols: &[u8], q: u32) -> u128 {
    symbols
        .iter()
        .fold(0u128, |acc, &d| acc * q as u128 + d as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(digits: &str, q: u32) -> Strand {
        Strand::from_digits(digits, q).unwrap()
    }

    #[test]
    fn strand_file_round_trip() {
        let strands = StrandMultiset::new(vec![s("01010", 2), s("00101", 2), s("11101", 2)])
            .unwrap();
        let file = StrandFile::new(2, strands).unwrap();
        let mut buf = Vec::new();
        file.write_to(&mut buf).unwrap();
        let parsed = StrandFile::read_from(&buf[..]).unwrap();
        assert_eq!(parsed, file);
    }

    #[test]
    fn profile_file_round_trip_preserves_order() {
        let mers = vec![s("010", 2), s("101", 2), s("010", 2)];
        let file = ProfileFile::new(2, mers).unwrap();
        let mut buf = Vec::new();
        file.write_to(&mut buf).unwrap();
        let parsed = ProfileFile::read_from(&buf[..]).unwrap();
        assert_eq!(parsed, file);
    }

    #[test]
    fn header_mismatches_rejected() {
        let text = "strandfile 2 5 3\n01010\n00101\n";
        assert!(matches!(
            StrandFile::read_from(text.as_bytes()),
            Err(Error::Parse { .. })
        ));
        let text = "strandfile 2 4 1\n01010\n";
        assert!(StrandFile::read_from(text.as_bytes()).is_err());
        let text = "profilefile 2 3 1\n0101\n";
        assert!(ProfileFile::read_from(text.as_bytes()).is_err());
    }

    #[test]
    fn container_round_trip_all_alphabets() {
        for q in [2u32, 3, 4, 10] {
            for payload in [vec![], vec![0u8], vec![0, 1, 2], vec![255, 0, 128, 7]] {
                let container = PayloadContainer {
                    q,
                    construction: Construction::B,
                    rf_variant: RfVariant::Basic,
                    payload: payload.clone(),
                };
                let m = 64;
                let packed = container.pack(m).unwrap();
                assert_eq!(packed.len(), m);
                assert!(packed.fits_alphabet(q));
                let unpacked =
                    PayloadContainer::unpack(&packed, q, Construction::B, RfVariant::Basic)
                        .unwrap();
                assert_eq!(unpacked.payload, payload);
            }
        }
    }

    #[test]
    fn container_rejects_oversize_payload() {
        let container = PayloadContainer {
            q: 2,
            construction: Construction::A,
            rf_variant: RfVariant::Basic,
            payload: vec![0xAB; 100],
        };
        assert!(matches!(
            container.pack(32),
            Err(Error::PayloadTooLarge { .. })
        ));
    }

    #[test]
    fn container_tag_mismatch_detected() {
        let container = PayloadContainer {
            q: 2,
            construction: Construction::A,
            rf_variant: RfVariant::Marker,
            payload: vec![7],
        };
        let packed = container.pack(40).unwrap();
        assert!(matches!(
            PayloadContainer::unpack(&packed, 2, Construction::A, RfVariant::Basic),
            Err(Error::ParamMismatch { .. })
        ));
    }

    #[test]
    fn capacity_is_consistent_with_pack() {
        for q in [2u32, 3, 4] {
            for m in 12..80usize {
                let cap = PayloadContainer::capacity_bytes(q, m);
                let container = PayloadContainer {
                    q,
                    construction: Construction::B,
                    rf_variant: RfVariant::Marker,
                    payload: vec![0xFF; cap],
                };
                assert!(container.pack(m).is_ok(), "capacity {cap} fails at q={q} m={m}");
                let over = PayloadContainer {
                    q,
                    construction: Construction::B,
                    rf_variant: RfVariant::Marker,
                    payload: vec![0xFF; cap + 1],
                };
                assert!(over.pack(m).is_err());
            }
        }
    }
}
