//! Reference paths used to check the fast ones: a bit-at-a-time code-tree
//! decoder, a codeword-length audit, and the encoding-length bound check.

use std::fmt;

use crate::adaptive::{encode_stream, table_width, CodingMode, Encoder};
use crate::bitio::{BitSink, BitSource};
use crate::codebuilder::PrefixCode;
use crate::error::{corrupt, usage, Result};
use crate::model::{empirical_entropy, AlphabetParams, FrequencyTable};

/// Default constant in the lower-order allowance `c * sigma^2 * L^2 / n`.
pub const DEFAULT_ALLOWANCE: f64 = 4.0;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy)]
enum Node {
    Inner([u32; 2]),
    Leaf(u32),
}

/// Explicit binary code-tree.
pub struct CodeTree {
    nodes: Vec<Node>,
}

impl CodeTree {
    pub fn new(code: &PrefixCode) -> Result<Self> {
        let mut nodes = vec![Node::Inner([NONE, NONE])];
        for (symbol, cw) in code.entries().iter().enumerate() {
            if cw.length == 0 {
                return Err(usage!("symbol {symbol} has an empty codeword"));
            }
            let mut at = 0usize;
            for i in (0..cw.length).rev() {
                let bit = ((cw.bits >> i) & 1) as usize;
                let last = i == 0;
                let children = match nodes[at] {
                    Node::Inner(c) => c,
                    Node::Leaf(_) => return Err(usage!("code is not prefix-free at symbol {symbol}")),
                };
                if children[bit] == NONE {
                    let id = nodes.len() as u32;
                    nodes.push(if last {
                        Node::Leaf(symbol as u32)
                    } else {
                        Node::Inner([NONE, NONE])
                    });
                    if let Node::Inner(c) = &mut nodes[at] {
                        c[bit] = id;
                    }
                    at = id as usize;
                } else if last {
                    return Err(usage!("code is not prefix-free at symbol {symbol}"));
                } else {
                    at = children[bit] as usize;
                }
            }
        }
        Ok(Self { nodes })
    }

    /// Reads one codeword bit by bit.
    pub fn decode_one(&self, source: &mut BitSource<'_>) -> Result<u32> {
        let mut at = 0usize;
        loop {
            match self.nodes[at] {
                Node::Leaf(symbol) => return Ok(symbol),
                Node::Inner(children) => {
                    if source.remaining() == 0 {
                        return Err(corrupt!("stream ends inside a codeword"));
                    }
                    let bit = source.read_bits(1)? as usize;
                    if children[bit] == NONE {
                        return Err(corrupt!("bit sequence leaves the code tree"));
                    }
                    at = children[bit] as usize;
                }
            }
        }
    }
}

/// Decodes `count` symbols by walking the code-tree of a single fixed code.
pub fn tree_walk_decode(code: &PrefixCode, source: &mut BitSource<'_>, count: usize) -> Result<Vec<u32>> {
    let tree = CodeTree::new(code)?;
    (0..count).map(|_| tree.decode_one(source)).collect()
}

/// Encoded length of a realized string against its worst-case target.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    pub sigma: u32,
    pub mode: CodingMode,
    pub log_n: u32,
    pub block_size: u64,
    pub table_width: u32,
    pub entropy: f64,
    pub payload_bits: u64,
    pub per_symbol: f64,
    /// `H + 1` or `H + 2`.
    pub target: f64,
    pub slack: f64,
    pub allowance_constant: f64,
    pub lower_order_allowance: f64,
}

impl BoundReport {
    pub fn passes(&self) -> bool {
        self.slack <= self.lower_order_allowance
    }

    /// The inequality in total bits: `payload <= n (H + r) + c sigma^2 L^2`.
    pub fn bits_budget(&self) -> f64 {
        self.n as f64 * self.target + self.lower_order_allowance * self.n as f64
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "sigma={}", self.sigma)?;
        writeln!(f, "mode={}", self.mode)?;
        writeln!(f, "L={}", self.log_n)?;
        writeln!(f, "b={}", self.block_size)?;
        writeln!(f, "W={}", self.table_width)?;
        writeln!(f, "H={:.6}", self.entropy)?;
        writeln!(f, "payload_bits={}", self.payload_bits)?;
        writeln!(f, "per_symbol={:.6}", self.per_symbol)?;
        writeln!(f, "target=H+{}", self.mode.redundancy())?;
        writeln!(f, "target_value={:.6}", self.target)?;
        writeln!(f, "slack={:.6}", self.slack)?;
        writeln!(f, "allowance_c={}", self.allowance_constant)?;
        writeln!(f, "lower_order_allowance={:.6}", self.lower_order_allowance)?;
        writeln!(f, "pass={}", self.passes())
    }
}

/// Encodes `input` and compares the payload length against `H + 1` (Shannon)
/// or `H + 2` (alphabetic) bits per symbol plus `c * sigma^2 * L^2 / n`.
pub fn verify_bound<S: Copy + Into<u32>>(
    input: &[S],
    sigma: u32,
    mode: CodingMode,
    allowance_constant: f64,
) -> Result<BoundReport> {
    if input.is_empty() {
        return Err(usage!("bound check needs a non-empty input"));
    }
    let n = input.len() as u64;
    let params = AlphabetParams::derive(sigma, n)?;
    let payload_bits = encode_stream(input, sigma, mode)?.bit_len();

    let mut freq = FrequencyTable::new(sigma);
    for &s in input {
        freq.record(s.into())?;
    }
    let entropy = empirical_entropy(freq.counts());
    let per_symbol = payload_bits as f64 / n as f64;
    let target = entropy + f64::from(mode.redundancy());
    let sl = params.block_size() as f64;
    Ok(BoundReport {
        n,
        sigma,
        mode,
        log_n: params.log_n(),
        block_size: params.block_size(),
        table_width: table_width(&params, mode),
        entropy,
        payload_bits,
        per_symbol,
        target,
        slack: per_symbol - target,
        allowance_constant,
        lower_order_allowance: allowance_constant * sl * sl / n as f64,
    })
}

/// Longest codeword the encoder emits for `input`.
pub fn per_symbol_length_audit<S: Copy + Into<u32>>(
    input: &[S],
    sigma: u32,
    mode: CodingMode,
) -> Result<u32> {
    if input.is_empty() {
        return Err(usage!("length audit needs a non-empty input"));
    }
    let params = AlphabetParams::derive(sigma, input.len() as u64)?;
    let mut encoder = Encoder::new(params, mode)?;
    let mut sink = BitSink::new();
    let mut longest = 0;
    for &s in input {
        longest = longest.max(encoder.encode_symbol(s.into(), &mut sink)?);
    }
    Ok(longest)
}
