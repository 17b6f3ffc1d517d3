//! Dense lookup table over every `W`-bit window.
//!
//! Slot `s` holds the symbol whose codeword prefixes the `W`-bit string `s`
//! together with that codeword's length, so a decoder can peek `W` bits,
//! look up one slot, and advance by the stored length.

use crate::codebuilder::PrefixCode;
use crate::error::{corrupt, usage, CodecError, Result};

/// Widest table [`DecodeTable::build`] will allocate.
pub const MAX_TABLE_WIDTH: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Slot {
    symbol: u32,
    // 0 marks an invalid slot
    length: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeTable {
    width: u32,
    slots: Vec<Slot>,
}

impl DecodeTable {
    pub fn build(code: &PrefixCode, width: u32) -> Result<Self> {
        let mut table = Self {
            width: 0,
            slots: Vec::new(),
        };
        table.rebuild(code, width)?;
        Ok(table)
    }

    /// Refills the table for a new code, reusing the allocation when the width is unchanged.
    pub fn rebuild(&mut self, code: &PrefixCode, width: u32) -> Result<()> {
        if width > MAX_TABLE_WIDTH {
            return Err(usage!(
                "decode table width {width} exceeds {MAX_TABLE_WIDTH}"
            ));
        }
        if code.max_length() > width {
            return Err(usage!(
                "codeword length {} exceeds table width {width}",
                code.max_length()
            ));
        }
        let size = 1usize << width;
        self.width = width;
        self.slots.clear();
        self.slots.resize(size, Slot::default());
        for (symbol, cw) in code.entries().iter().enumerate() {
            if cw.length == 0 {
                return Err(usage!("symbol {symbol} has an empty codeword"));
            }
            let span = width - cw.length;
            let start = (cw.bits as usize) << span;
            let run = &mut self.slots[start..start + (1usize << span)];
            if run.iter().any(|s| s.length != 0) {
                return Err(CodecError::Internal(format!(
                    "codeword for symbol {symbol} overlaps another; code is not prefix-free"
                )));
            }
            run.fill(Slot {
                symbol: symbol as u32,
                length: cw.length as u8,
            });
        }
        Ok(())
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Returns `(symbol, codeword length)` for a `W`-bit window.
    #[inline]
    pub fn lookup(&self, window: u64) -> Result<(u32, u32)> {
        match self.slots.get(window as usize) {
            Some(slot) if slot.length != 0 => Ok((slot.symbol, u32::from(slot.length))),
            Some(_) => Err(corrupt!(
                "window {window:0w$b} does not begin with any codeword",
                w = self.width as usize
            )),
            None => Err(usage!(
                "window {window:#x} wider than table width {}",
                self.width
            )),
        }
    }

    pub fn valid_slots(&self) -> usize {
        self.slots.iter().filter(|s| s.length != 0).count()
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}
