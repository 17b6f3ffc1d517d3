//! Block-adaptive encoder and decoder.
//!
//! The first `b` symbols are written with the fixed `ceil(lg sigma)`-bit code.
//! After every `k * b` symbols the code is rebuilt from the smoothed
//! distribution of everything seen so far and held for the next block. Both
//! sides run the same [`CoderState`] so they rebuild identical codes at
//! identical positions.

use crate::bitio::{BitSink, BitSource};
use crate::codebuilder::{fixed_length_code, gilbert_moore_code, shannon_code, PrefixCode};
use crate::decodetable::DecodeTable;
use crate::error::{corrupt, usage, Result};
use crate::model::{smoothed_distribution, AlphabetParams, FrequencyTable};

/// Which code family is rebuilt at each block boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodingMode {
    /// Canonical Shannon codes, `H + 1` bits per symbol.
    Shannon,
    /// Gilbert-Moore codes, `H + 2` bits per symbol, order-preserving.
    Alphabetic,
}

impl CodingMode {
    pub fn name(&self) -> &'static str {
        match self {
            CodingMode::Shannon => "shannon",
            CodingMode::Alphabetic => "alphabetic",
        }
    }

    /// Extra bits per symbol over the entropy allowed by the worst-case bound.
    pub fn redundancy(&self) -> u32 {
        match self {
            CodingMode::Shannon => 1,
            CodingMode::Alphabetic => 2,
        }
    }
}

impl std::fmt::Display for CodingMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Decode table width for a stream: the longest codeword any block can use.
pub fn table_width(params: &AlphabetParams, mode: CodingMode) -> u32 {
    let cap = match mode {
        CodingMode::Shannon => params.shannon_cap(),
        CodingMode::Alphabetic => params.shannon_cap() + 1,
    };
    cap.max(params.fixed_width())
}

/// State shared by encoder and decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoderState {
    params: AlphabetParams,
    mode: CodingMode,
    freq: FrequencyTable,
    code: PrefixCode,
    position: u64,
    completed_blocks: u64,
    // position of the next block boundary
    next_boundary: u64,
}

impl CoderState {
    pub fn new(params: AlphabetParams, mode: CodingMode) -> Result<Self> {
        Ok(Self {
            params,
            mode,
            freq: FrequencyTable::new(params.sigma()),
            code: fixed_length_code(params.sigma())?,
            position: 0,
            completed_blocks: 0,
            next_boundary: params.block_size(),
        })
    }

    pub fn params(&self) -> &AlphabetParams {
        &self.params
    }

    pub fn mode(&self) -> CodingMode {
        self.mode
    }

    pub fn frequencies(&self) -> &FrequencyTable {
        &self.freq
    }

    /// The code in force for the next symbol.
    pub fn code(&self) -> &PrefixCode {
        &self.code
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn completed_blocks(&self) -> u64 {
        self.completed_blocks
    }

    pub fn in_first_block(&self) -> bool {
        self.position < self.params.block_size()
    }

    /// Replaces the current code with the mode's code over the smoothed
    /// distribution of the symbols seen so far. Only valid at a block boundary.
    pub fn rebuild_code(&mut self) -> Result<()> {
        let b = self.params.block_size();
        if self.position == 0 || !self.position.is_multiple_of(b) {
            return Err(usage!(
                "code rebuild requested at position {}, not a boundary of block size {b}",
                self.position
            ));
        }
        let k = self.position / b;
        let dist = smoothed_distribution(&self.freq, &self.params, k)?;
        self.code = match self.mode {
            CodingMode::Shannon => shannon_code(&dist)?,
            CodingMode::Alphabetic => gilbert_moore_code(&dist)?,
        };
        self.completed_blocks = k;
        self.next_boundary = self.position + b;
        Ok(())
    }

    /// Counts `symbol` and rebuilds the code if a block just closed and more
    /// symbols follow. Returns whether the code changed.
    fn advance(&mut self, symbol: u32) -> Result<bool> {
        self.freq.record_unchecked(symbol);
        self.position += 1;
        if self.position == self.next_boundary && self.position < self.params.n() {
            self.rebuild_code()?;
            return Ok(true);
        }
        Ok(false)
    }

    fn check_room(&self) -> Result<()> {
        if self.position >= self.params.n() {
            return Err(usage!(
                "stream declared {} symbols; no room for another",
                self.params.n()
            ));
        }
        Ok(())
    }
}

pub struct Encoder {
    state: CoderState,
}

impl Encoder {
    pub fn new(params: AlphabetParams, mode: CodingMode) -> Result<Self> {
        Ok(Self {
            state: CoderState::new(params, mode)?,
        })
    }

    pub fn state(&self) -> &CoderState {
        &self.state
    }

    /// Writes the codeword for `symbol` and returns its length in bits.
    #[inline]
    pub fn encode_symbol(&mut self, symbol: u32, sink: &mut BitSink) -> Result<u32> {
        self.state.check_room()?;
        let cw = self.state.code.codeword(symbol).ok_or_else(|| {
            usage!(
                "symbol {symbol} outside alphabet of size {}",
                self.state.params.sigma()
            )
        })?;
        sink.push_unchecked(cw.bits, cw.length);
        self.state.advance(symbol)?;
        Ok(cw.length)
    }
}

pub struct Decoder {
    state: CoderState,
    table: DecodeTable,
    width: u32,
}

impl Decoder {
    pub fn new(params: AlphabetParams, mode: CodingMode) -> Result<Self> {
        let state = CoderState::new(params, mode)?;
        let width = table_width(&params, mode);
        // the first block is read directly; the table is filled at the first boundary
        let table = DecodeTable::build(&state.code, params.fixed_width())?;
        Ok(Self {
            state,
            table,
            width,
        })
    }

    pub fn state(&self) -> &CoderState {
        &self.state
    }

    pub fn table(&self) -> &DecodeTable {
        &self.table
    }

    #[inline]
    pub fn decode_symbol(&mut self, source: &mut BitSource<'_>) -> Result<u32> {
        self.state.check_room()?;
        let symbol = if self.state.in_first_block() {
            let symbol = source.read_bits(self.state.params.fixed_width())?;
            if symbol >= u64::from(self.state.params.sigma()) {
                return Err(corrupt!(
                    "fixed-width symbol {symbol} at position {} outside alphabet of size {}",
                    self.state.position,
                    self.state.params.sigma()
                ));
            }
            symbol as u32
        } else {
            let (symbol, length) = self.table.lookup(source.peek_bits(self.width))?;
            source.advance(length)?;
            symbol
        };
        if self.state.advance(symbol)? {
            self.table.rebuild(&self.state.code, self.width)?;
        }
        Ok(symbol)
    }
}

/// Encodes `input` over an alphabet of `sigma` symbols. The payload length is
/// `sink.bit_len()`; bytes are zero-padded at the end.
pub fn encode_stream<S: Copy + Into<u32>>(
    input: &[S],
    sigma: u32,
    mode: CodingMode,
) -> Result<BitSink> {
    if input.is_empty() {
        AlphabetParams::derive(sigma, 1)?;
        return Ok(BitSink::new());
    }
    let params = AlphabetParams::derive(sigma, input.len() as u64)?;
    let mut encoder = Encoder::new(params, mode)?;
    let mut sink = BitSink::with_capacity_bits(input.len() * params.fixed_width() as usize);
    for &s in input {
        encoder.encode_symbol(s.into(), &mut sink)?;
    }
    Ok(sink)
}

/// Decodes exactly `n` symbols from `source`.
pub fn decode_stream(
    source: &mut BitSource<'_>,
    sigma: u32,
    n: u64,
    mode: CodingMode,
) -> Result<Vec<u32>> {
    if n == 0 {
        AlphabetParams::derive(sigma, 1)?;
        return Ok(Vec::new());
    }
    // every codeword is at least one bit long
    if n > source.remaining() {
        return Err(corrupt!(
            "{n} symbols declared but only {} payload bits present",
            source.remaining()
        ));
    }
    let params = AlphabetParams::derive(sigma, n)?;
    let mut decoder = Decoder::new(params, mode)?;
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(decoder.decode_symbol(source)?);
    }
    Ok(out)
}
