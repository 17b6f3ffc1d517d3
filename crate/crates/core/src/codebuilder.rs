//! Prefix code construction: the fixed-width first-block code, canonical
//! Shannon codes, and Gilbert-Moore alphabetic codes.

use crate::error::{usage, CodecError, Result};
use crate::model::{ceil_log2, SmoothedDistribution};

/// Longest codeword any builder will emit.
pub const MAX_CODEWORD_LEN: u32 = 64;

/// A codeword held right-aligned in `bits`, `length` bits long.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Codeword {
    pub bits: u64,
    pub length: u32,
}

impl Codeword {
    pub fn new(bits: u64, length: u32) -> Self {
        debug_assert!(length <= 64 && (length == 64 || bits >> length == 0));
        Self { bits, length }
    }

    /// Whether `self` is a prefix of `other` (or equal to it).
    pub fn is_prefix_of(&self, other: &Codeword) -> bool {
        self.length <= other.length && other.bits >> (other.length - self.length) == self.bits
    }
}

impl std::fmt::Display for Codeword {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in (0..self.length).rev() {
            f.write_str(if (self.bits >> i) & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    Fixed,
    Shannon,
    GilbertMoore,
}

/// Per-symbol codewords, indexed by symbol. Doubles as the encoder's lookup table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCode {
    kind: CodeKind,
    entries: Vec<Codeword>,
    max_length: u32,
}

impl PrefixCode {
    /// Wraps explicit codewords. Does not check prefix-freeness.
    pub fn from_codewords(kind: CodeKind, entries: Vec<Codeword>) -> Self {
        let max_length = entries.iter().map(|c| c.length).max().unwrap_or(0);
        Self {
            kind,
            entries,
            max_length,
        }
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn entries(&self) -> &[Codeword] {
        &self.entries
    }

    pub fn codeword(&self, symbol: u32) -> Option<Codeword> {
        self.entries.get(symbol as usize).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_length(&self) -> u32 {
        self.max_length
    }

    pub fn lengths(&self) -> Vec<u32> {
        self.entries.iter().map(|c| c.length).collect()
    }
}

/// Every symbol gets its own index written in `ceil(lg sigma)` bits.
pub fn fixed_length_code(sigma: u32) -> Result<PrefixCode> {
    if sigma < 2 {
        return Err(usage!("alphabet size must be at least 2, got {sigma}"));
    }
    let width = ceil_log2(u64::from(sigma));
    let entries = (0..sigma)
        .map(|i| Codeword::new(u64::from(i), width))
        .collect();
    Ok(PrefixCode {
        kind: CodeKind::Fixed,
        entries,
        max_length: width,
    })
}

/// Smallest `l` with `num * 2^l >= den`, i.e. `ceil(lg(den / num))`, for `0 < num <= den`.
fn ceil_lg_ratio(num: u128, den: u128) -> u32 {
    debug_assert!(num > 0 && num <= den);
    let guess = num.leading_zeros() - den.leading_zeros();
    if num << guess >= den {
        guess
    } else {
        guess + 1
    }
}

fn check_distribution(dist: &SmoothedDistribution) -> Result<()> {
    if let Some(i) = dist.numerators().iter().position(|&x| x == 0) {
        return Err(usage!("symbol {i} has zero probability"));
    }
    Ok(())
}

/// Shannon codeword lengths `ceil(lg(1/p_i))`, clamped below at 1.
pub fn shannon_lengths(dist: &SmoothedDistribution) -> Result<Vec<u32>> {
    check_distribution(dist)?;
    let den = dist.denominator();
    dist.numerators()
        .iter()
        .enumerate()
        .map(|(i, &num)| {
            let len = ceil_lg_ratio(num, den).max(1);
            if len > MAX_CODEWORD_LEN {
                Err(usage!(
                    "symbol {i} needs a {len}-bit codeword, limit is {MAX_CODEWORD_LEN}"
                ))
            } else {
                Ok(len)
            }
        })
        .collect()
}

/// Assigns canonical codewords to a length vector. Symbols are visited in
/// (length, index) order; each codeword is the previous one plus one,
/// shifted left to the new length.
pub fn canonical_assign(lengths: &[u32]) -> Result<PrefixCode> {
    if lengths.is_empty() {
        return Err(usage!("empty length vector"));
    }
    if let Some(&bad) = lengths
        .iter()
        .find(|&&l| l == 0 || l > MAX_CODEWORD_LEN)
    {
        return Err(usage!(
            "codeword length {bad} outside 1..={MAX_CODEWORD_LEN}"
        ));
    }
    // Kraft: sum 2^(64 - l) <= 2^64, exactly in u128
    let kraft: u128 = lengths.iter().map(|&l| 1u128 << (64 - l)).sum();
    if kraft > 1u128 << 64 {
        return Err(CodecError::Internal(format!(
            "lengths violate the Kraft inequality ({} / 2^64)",
            kraft
        )));
    }

    let mut order: Vec<u32> = (0..lengths.len() as u32).collect();
    order.sort_unstable_by_key(|&s| (lengths[s as usize], s));

    let mut entries = vec![Codeword::default(); lengths.len()];
    let mut next: u128 = 0;
    let mut prev_len = lengths[order[0] as usize];
    for &s in &order {
        let len = lengths[s as usize];
        next <<= len - prev_len;
        prev_len = len;
        entries[s as usize] = Codeword::new(next as u64, len);
        next += 1;
    }
    let max_length = prev_len;
    Ok(PrefixCode {
        kind: CodeKind::Shannon,
        entries,
        max_length,
    })
}

/// Canonical code with Shannon lengths.
pub fn shannon_code(dist: &SmoothedDistribution) -> Result<PrefixCode> {
    canonical_assign(&shannon_lengths(dist)?)
}

/// Gilbert-Moore alphabetic code: symbol `i` gets the first
/// `ceil(lg(1/p_i)) + 1` bits of the binary expansion of
/// `F_i = p_0 + ... + p_{i-1} + p_i / 2`.
pub fn gilbert_moore_code(dist: &SmoothedDistribution) -> Result<PrefixCode> {
    let lengths = shannon_lengths(dist)?;
    let den = dist.denominator();
    // F_i = (2 * cum + num_i) / (2 * den); doubling needs 2 * (2 * den) to fit
    if den > 1u128 << 125 {
        return Err(usage!("distribution denominator too large"));
    }
    let scale = den * 2;
    let mut cumulative: u128 = 0;
    let mut entries = Vec::with_capacity(lengths.len());
    let mut max_length = 0;
    for (&num, &shannon) in dist.numerators().iter().zip(&lengths) {
        let length = shannon + 1;
        if length > MAX_CODEWORD_LEN {
            return Err(usage!(
                "Gilbert-Moore codeword of {length} bits exceeds {MAX_CODEWORD_LEN}"
            ));
        }
        let mut x = 2 * cumulative + num;
        let mut bits = 0u64;
        for _ in 0..length {
            x *= 2;
            bits <<= 1;
            if x >= scale {
                bits |= 1;
                x -= scale;
            }
        }
        entries.push(Codeword::new(bits, length));
        max_length = max_length.max(length);
        cumulative += num;
    }
    Ok(PrefixCode {
        kind: CodeKind::GilbertMoore,
        entries,
        max_length,
    })
}
