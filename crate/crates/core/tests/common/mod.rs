#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use apfc::codebuilder::{CodeKind, Codeword, PrefixCode};
use apfc::model::AlphabetParams;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Uniform,
    Zipf,
    Skewed,
    Single,
}

impl Source {
    pub const ALL: [Source; 4] = [Source::Uniform, Source::Zipf, Source::Skewed, Source::Single];

    pub fn name(&self) -> &'static str {
        match self {
            Source::Uniform => "uniform",
            Source::Zipf => "zipf1.0",
            Source::Skewed => "skew90/10",
            Source::Single => "single",
        }
    }
}

/// Draws `n` symbols over `sigma` from the given source.
pub fn synthetic(source: Source, sigma: u32, n: usize, seed: u64) -> Vec<u32> {
    let mut r = rng(seed);
    match source {
        Source::Uniform => (0..n).map(|_| r.gen_range(0..sigma)).collect(),
        Source::Zipf => {
            // P(i) proportional to 1 / (i + 1)
            let mut cdf = Vec::with_capacity(sigma as usize);
            let mut acc = 0.0;
            for i in 0..sigma {
                acc += 1.0 / f64::from(i + 1);
                cdf.push(acc);
            }
            (0..n)
                .map(|_| {
                    let u = r.gen::<f64>() * acc;
                    cdf.partition_point(|&c| c <= u).min(sigma as usize - 1) as u32
                })
                .collect()
        }
        Source::Skewed => (0..n)
            .map(|_| {
                if r.gen_bool(0.9) {
                    0
                } else {
                    r.gen_range(1..sigma)
                }
            })
            .collect(),
        Source::Single => vec![sigma / 2; n],
    }
}

/// A stream length `n` whose own block size `b(n)` satisfies
/// `n = blocks * b(n) + delta`, falling back to `blocks * b(hint) + delta`
/// when no self-consistent length exists.
pub fn length_near_block(sigma: u32, blocks: i64, delta: i64, hint: u64) -> u64 {
    for l in 1..40u32 {
        let n = blocks * i64::from(sigma) * i64::from(l) + delta;
        if n < 1 {
            continue;
        }
        let p = AlphabetParams::derive(sigma, n as u64).unwrap();
        if p.log_n() == l {
            return n as u64;
        }
    }
    let b = AlphabetParams::derive(sigma, hint).unwrap().block_size() as i64;
    (blocks * b + delta).max(1) as u64
}

/// A random prefix code over `sigma` symbols with codewords of at most
/// `max_depth` bits, grown by splitting random leaves. With `drop_leaves`
/// some leaves stay unassigned so the code is incomplete.
pub fn random_prefix_code<R: Rng>(r: &mut R, sigma: usize, max_depth: u32, drop_leaves: bool) -> PrefixCode {
    let extra = if drop_leaves { r.gen_range(1..=4) } else { 0 };
    let target = sigma + extra;
    assert!(target as u64 <= 1u64 << max_depth);
    let mut leaves: Vec<Codeword> = vec![Codeword::new(0, 0)];
    while leaves.len() < target {
        let i = r.gen_range(0..leaves.len());
        if leaves[i].length >= max_depth {
            continue;
        }
        let leaf = leaves.swap_remove(i);
        leaves.push(Codeword::new(leaf.bits << 1, leaf.length + 1));
        leaves.push(Codeword::new((leaf.bits << 1) | 1, leaf.length + 1));
    }
    // shuffle, then keep `sigma` of them
    for i in (1..leaves.len()).rev() {
        let j = r.gen_range(0..=i);
        leaves.swap(i, j);
    }
    leaves.truncate(sigma);
    PrefixCode::from_codewords(CodeKind::Shannon, leaves)
}
