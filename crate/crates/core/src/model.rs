//! Symbol statistics and the smoothed block distribution.
//!
//! All probabilities are exact rationals over `u128`. The block size and the
//! smoothing weight use `L = ceil(lg n)` in place of the real-valued `lg n`,
//! which keeps every quantity integral.

use crate::error::{usage, Result};

/// Largest alphabet the codec accepts. Keeps every rational in the
/// model and code builders comfortably inside `u128`.
pub const MAX_SIGMA: u32 = 1 << 20;

/// Alphabet size, stream length and the derived block geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphabetParams {
    sigma: u32,
    n: u64,
    log_n: u32,
    block: u64,
}

impl AlphabetParams {
    /// Derives `L = ceil(lg n)` (at least 1) and the block size `b = sigma * L`.
    pub fn derive(sigma: u32, n: u64) -> Result<Self> {
        if sigma < 2 {
            return Err(usage!("alphabet size must be at least 2, got {sigma}"));
        }
        if sigma > MAX_SIGMA {
            return Err(usage!("alphabet size {sigma} exceeds the supported maximum {MAX_SIGMA}"));
        }
        if n < 1 {
            return Err(usage!("stream length must be at least 1"));
        }
        let log_n = ceil_log2(n).max(1);
        Ok(Self {
            sigma,
            n,
            log_n,
            block: u64::from(sigma) * u64::from(log_n),
        })
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `L`, the integer stand-in for `lg n`.
    pub fn log_n(&self) -> u32 {
        self.log_n
    }

    /// Block size `b` in symbols.
    pub fn block_size(&self) -> u64 {
        self.block
    }

    /// Bits per symbol of the first-block code, `ceil(lg sigma)`.
    pub fn fixed_width(&self) -> u32 {
        ceil_log2(u64::from(self.sigma))
    }

    /// `ceil(lg(sigma * L))`: the longest Shannon codeword any smoothed
    /// distribution can produce.
    pub fn shannon_cap(&self) -> u32 {
        ceil_log2(self.block)
    }

    /// Whether `sigma^2 * L^2 >= n`, i.e. the stream is too short relative to
    /// the alphabet for the lower-order term to be small.
    pub fn outside_bound_regime(&self) -> bool {
        let b = u128::from(self.block);
        b * b >= u128::from(self.n)
    }
}

/// Smallest `k` with `2^k >= x`; zero for `x <= 1`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Running occurrence counts over the alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: Vec<u64>,
    processed: u64,
}

impl FrequencyTable {
    pub fn new(sigma: u32) -> Self {
        Self {
            counts: vec![0; sigma as usize],
            processed: 0,
        }
    }

    /// Builds a table from explicit counts.
    pub fn from_counts(counts: Vec<u64>) -> Self {
        let processed = counts.iter().sum();
        Self { counts, processed }
    }

    pub fn record(&mut self, symbol: u32) -> Result<()> {
        match self.counts.get_mut(symbol as usize) {
            Some(c) => {
                *c += 1;
                self.processed += 1;
                Ok(())
            }
            None => Err(usage!(
                "symbol {symbol} outside alphabet of size {}",
                self.counts.len()
            )),
        }
    }

    #[inline]
    pub(crate) fn record_unchecked(&mut self, symbol: u32) {
        self.counts[symbol as usize] += 1;
        self.processed += 1;
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn processed(&self) -> u64 {
        self.processed
    }
}

/// A probability vector `numerators[i] / denominator`, summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothedDistribution {
    numerators: Vec<u128>,
    denominator: u128,
}

impl SmoothedDistribution {
    /// Wraps an explicit rational distribution. Numerators must be positive
    /// and sum to the denominator.
    pub fn new(numerators: Vec<u128>, denominator: u128) -> Result<Self> {
        if numerators.is_empty() {
            return Err(usage!("empty distribution"));
        }
        if let Some(i) = numerators.iter().position(|&x| x == 0) {
            return Err(usage!("symbol {i} has zero probability"));
        }
        let sum = numerators
            .iter()
            .try_fold(0u128, |acc, &x| acc.checked_add(x))
            .ok_or_else(|| usage!("distribution numerators overflow"))?;
        if sum != denominator {
            return Err(usage!(
                "numerators sum to {sum}, expected denominator {denominator}"
            ));
        }
        Ok(Self {
            numerators,
            denominator,
        })
    }

    pub fn numerators(&self) -> &[u128] {
        &self.numerators
    }

    pub fn denominator(&self) -> u128 {
        self.denominator
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }
}

/// The distribution used for block `k + 1`:
///
/// `p_i = ((L - 1) / L) * (occ_i / kb) + 1 / (sigma * L)`
///
/// held as `numerators[i] = (L - 1) * sigma * occ_i + kb` over
/// `denominator = L * sigma * kb`.
pub fn smoothed_distribution(
    table: &FrequencyTable,
    params: &AlphabetParams,
    k: u64,
) -> Result<SmoothedDistribution> {
    if k == 0 {
        return Err(usage!(
            "smoothed distribution needs at least one completed block"
        ));
    }
    if table.counts.len() != params.sigma as usize {
        return Err(usage!(
            "frequency table has {} symbols, params expect {}",
            table.counts.len(),
            params.sigma
        ));
    }
    let kb = u128::from(k) * u128::from(params.block);
    if u128::from(table.processed) != kb {
        return Err(usage!(
            "frequency table holds {} symbols, block boundary is at {kb}",
            table.processed
        ));
    }
    let sigma = u128::from(params.sigma);
    let weight = u128::from(params.log_n - 1) * sigma;
    let numerators = table
        .counts
        .iter()
        .map(|&c| weight * u128::from(c) + kb)
        .collect();
    Ok(SmoothedDistribution {
        numerators,
        denominator: u128::from(params.log_n) * sigma * kb,
    })
}

/// Empirical entropy in bits per symbol, `sum (occ_i / n) lg(n / occ_i)`.
pub fn empirical_entropy(counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let c = c as f64;
            (c / n) * (n / c).log2()
        })
        .sum()
}

/// Entropy of a realized string next to the length it was coded in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub entropy: f64,
    pub total_bits: u64,
    pub slack_per_symbol: f64,
}

impl EntropyReport {
    pub fn new(counts: &[u64], total_bits: u64) -> Self {
        let n: u64 = counts.iter().sum();
        let entropy = empirical_entropy(counts);
        let slack_per_symbol = if n == 0 {
            0.0
        } else {
            total_bits as f64 / n as f64 - entropy
        };
        Self {
            entropy,
            total_bits,
            slack_per_symbol,
        }
    }
}
