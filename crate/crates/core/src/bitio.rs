//! MSB-first bit packing over byte buffers.
//!
//! Bits fill each byte from the most significant position down, so comparing
//! two zero-padded buffers byte by byte orders them the same way as comparing
//! the underlying bit strings. The alphabetic coding mode depends on this.

use std::cmp::Ordering;

use crate::error::{corrupt, usage, Result};

/// Append-only bit writer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitSink {
    buffer: Vec<u8>,
    bit_position: u64,
}

impl BitSink {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity_bits(bits: usize) -> Self {
        Self {
            buffer: Vec::with_capacity(bits.div_ceil(8)),
            bit_position: 0,
        }
    }

    /// Appends the `width` low-order bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u64, width: u32) -> Result<()> {
        if width > 64 {
            return Err(usage!("bit width {width} exceeds 64"));
        }
        if width < 64 && value >> width != 0 {
            return Err(usage!("value {value:#x} does not fit in {width} bits"));
        }
        self.push_unchecked(value, width);
        Ok(())
    }

    /// Same as [`write_bits`](Self::write_bits) without the range checks.
    /// Callers guarantee `width <= 64` and `value < 2^width`.
    #[inline]
    pub(crate) fn push_unchecked(&mut self, value: u64, width: u32) {
        let used = (self.bit_position % 8) as u32;
        if width == 0 {
            return;
        }
        if used + width <= 64 {
            // merge the partial last byte and the new bits into one word
            let mut acc = value << (64 - used - width);
            if used > 0 {
                acc |= u64::from(self.buffer.pop().unwrap()) << 56;
            }
            let bytes = (used + width).div_ceil(8) as usize;
            self.buffer.extend_from_slice(&acc.to_be_bytes()[..bytes]);
            self.bit_position += u64::from(width);
            return;
        }
        let mut remaining = width;
        while remaining > 0 {
            let used = (self.bit_position % 8) as u32;
            if used == 0 {
                self.buffer.push(0);
            }
            let free = 8 - used;
            let take = free.min(remaining);
            let chunk = ((value >> (remaining - take)) & ((1u64 << take) - 1)) as u8;
            // buffer is non-empty: a byte was pushed above whenever used == 0
            let last = self.buffer.last_mut().unwrap();
            *last |= chunk << (free - take);
            remaining -= take;
            self.bit_position += u64::from(take);
        }
    }

    pub fn bit_len(&self) -> u64 {
        self.bit_position
    }

    /// Written bytes; the final byte is zero-padded on the right.
    pub fn as_bytes(&self) -> &[u8] {
        &self.buffer
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buffer
    }

    pub fn as_source(&self) -> BitSource<'_> {
        BitSource::new(&self.buffer, self.bit_position)
    }
}

/// Bit reader over a borrowed byte buffer with an explicit payload limit.
#[derive(Debug, Clone)]
pub struct BitSource<'a> {
    buffer: &'a [u8],
    cursor: u64,
    limit: u64,
}

impl<'a> BitSource<'a> {
    /// `limit` is clamped to the number of bits actually present in `buffer`.
    pub fn new(buffer: &'a [u8], limit: u64) -> Self {
        let limit = limit.min(buffer.len() as u64 * 8);
        Self {
            buffer,
            cursor: 0,
            limit,
        }
    }

    /// Source covering every bit of `buffer`.
    pub fn from_bytes(buffer: &'a [u8]) -> Self {
        Self::new(buffer, buffer.len() as u64 * 8)
    }

    pub fn cursor(&self) -> u64 {
        self.cursor
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.cursor
    }

    /// Returns the next `width` bits without consuming them. Bits past the
    /// limit read as zero.
    #[inline]
    pub fn peek_bits(&self, width: u32) -> u64 {
        debug_assert!(width <= 64);
        if width == 0 {
            return 0;
        }
        let byte = (self.cursor / 8) as usize;
        let offset = (self.cursor % 8) as u32;
        let mut window = [0u8; 16];
        if byte < self.buffer.len() {
            let end = (byte + 9).min(self.buffer.len());
            window[..end - byte].copy_from_slice(&self.buffer[byte..end]);
        }
        let wide = u128::from_be_bytes(window) << offset;
        let mut value = (wide >> (128 - width)) as u64;
        let available = self.limit - self.cursor;
        if available < u64::from(width) {
            let missing = width - available as u32;
            value &= if missing >= 64 { 0 } else { !((1u64 << missing) - 1) };
        }
        value
    }

    /// Consumes `width` bits.
    #[inline]
    pub fn advance(&mut self, width: u32) -> Result<()> {
        let width = u64::from(width);
        if width > self.limit - self.cursor {
            return Err(corrupt!(
                "attempt to consume {width} bits at offset {} with only {} available",
                self.cursor,
                self.limit - self.cursor
            ));
        }
        self.cursor += width;
        Ok(())
    }

    pub fn read_bits(&mut self, width: u32) -> Result<u64> {
        if width > 64 {
            return Err(usage!("bit width {width} exceeds 64"));
        }
        let value = self.peek_bits(width);
        self.advance(width)?;
        Ok(value)
    }
}

/// Lexicographic comparison of two bit strings given as MSB-first buffers
/// with explicit bit lengths. A proper prefix sorts first.
pub fn compare_bit_strings(a: &[u8], a_bits: u64, b: &[u8], b_bits: u64) -> Ordering {
    let common = a_bits.min(b_bits);
    let full = (common / 8) as usize;
    match a[..full].cmp(&b[..full]) {
        Ordering::Equal => {}
        other => return other,
    }
    let tail = (common % 8) as u32;
    if tail > 0 {
        let mask = !(0xFFu8 >> tail);
        match (a[full] & mask).cmp(&(b[full] & mask)) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    a_bits.cmp(&b_bits)
}
