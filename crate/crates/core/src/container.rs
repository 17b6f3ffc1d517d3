//! The APFC v1 file envelope.
//!
//! ```text
//! offset  size  field
//!      0     4  magic "APFC"
//!      4     1  version (0x01)
//!      5     1  mode (0x00 shannon, 0x01 alphabetic)
//!      6     8  n, big-endian
//!     14     4  sigma, big-endian
//!     18     -  payload, MSB-first, zero-padded to a whole byte
//! ```

use crate::adaptive::CodingMode;
use crate::bitio::{BitSink, BitSource};
use crate::error::{CodecError, Result};

pub const MAGIC: [u8; 4] = *b"APFC";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamHeader {
    pub mode: CodingMode,
    pub n: u64,
    pub sigma: u32,
}

fn format_err(msg: impl Into<String>) -> CodecError {
    CodecError::Format(msg.into())
}

impl StreamHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5] = mode_byte(self.mode);
        out[6..14].copy_from_slice(&self.n.to_be_bytes());
        out[14..18].copy_from_slice(&self.sigma.to_be_bytes());
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(format_err(format!(
                "file is {} bytes, shorter than the {HEADER_LEN}-byte header",
                bytes.len()
            )));
        }
        if bytes[..4] != MAGIC {
            return Err(format_err(format!("bad magic {:02x?}", &bytes[..4])));
        }
        if bytes[4] != VERSION {
            return Err(format_err(format!("unsupported version {:#04x}", bytes[4])));
        }
        let mode = match bytes[5] {
            0x00 => CodingMode::Shannon,
            0x01 => CodingMode::Alphabetic,
            other => return Err(format_err(format!("unknown mode byte {other:#04x}"))),
        };
        let n = u64::from_be_bytes(bytes[6..14].try_into().unwrap());
        let sigma = u32::from_be_bytes(bytes[14..18].try_into().unwrap());
        if sigma < 2 {
            return Err(format_err(format!("alphabet size {sigma} is below 2")));
        }
        Ok(Self { mode, n, sigma })
    }
}

fn mode_byte(mode: CodingMode) -> u8 {
    match mode {
        CodingMode::Shannon => 0x00,
        CodingMode::Alphabetic => 0x01,
    }
}

/// Header followed by the payload bytes.
pub fn write_container(header: &StreamHeader, payload: &BitSink) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + payload.as_bytes().len());
    out.extend_from_slice(&header.to_bytes());
    out.extend_from_slice(payload.as_bytes());
    out
}

/// Parses the header and returns a source over the remaining bytes. The
/// payload limit is every byte after the header; the decoder stops at `n`
/// symbols and ignores the padding.
pub fn read_container(bytes: &[u8]) -> Result<(StreamHeader, BitSource<'_>)> {
    let header = StreamHeader::parse(bytes)?;
    Ok((header, BitSource::from_bytes(&bytes[HEADER_LEN..])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_payload() {
        let h = StreamHeader { mode: CodingMode::Shannon, n: 0, sigma: 2 };
        let bytes = write_container(&h, &BitSink::new());
        assert_eq!(bytes.len(), HEADER_LEN);
        let (back, src) = read_container(&bytes).unwrap();
        assert_eq!(back, h);
        assert_eq!(src.limit(), 0);
    }

    #[test]
    fn small_payload_is_padded() {
        let mut sink = BitSink::new();
        sink.write_bits(0b0110, 4).unwrap();
        let h = StreamHeader { mode: CodingMode::Shannon, n: 4, sigma: 2 };
        let bytes = write_container(&h, &sink);
        assert_eq!(bytes.len(), HEADER_LEN + 1);
        assert_eq!(bytes[HEADER_LEN], 0x60);
    }

    #[test]
    fn mode_byte_offset() {
        let h = StreamHeader { mode: CodingMode::Alphabetic, n: 1, sigma: 2 };
        assert_eq!(h.to_bytes()[5], 0x01);
    }

    #[test]
    fn rejects_malformed_headers() {
        let good = StreamHeader { mode: CodingMode::Shannon, n: 9, sigma: 3 }.to_bytes();
        assert!(matches!(read_container(&good[..10]), Err(CodecError::Format(_))));

        let mut bad = good;
        bad[0] = b'X';
        assert!(matches!(read_container(&bad), Err(CodecError::Format(_))));

        let mut bad = good;
        bad[4] = 2;
        assert!(matches!(read_container(&bad), Err(CodecError::Format(_))));

        let mut bad = good;
        bad[5] = 7;
        assert!(matches!(read_container(&bad), Err(CodecError::Format(_))));

        let mut bad = good;
        bad[14..18].copy_from_slice(&1u32.to_be_bytes());
        assert!(matches!(read_container(&bad), Err(CodecError::Format(_))));
    }

    proptest! {
        #[test]
        fn header_roundtrip(alpha in any::<bool>(), n in any::<u64>(), sigma in 2u32.., payload in prop::collection::vec(any::<u8>(), 0..40)) {
            let mode = if alpha { CodingMode::Alphabetic } else { CodingMode::Shannon };
            let h = StreamHeader { mode, n, sigma };
            let mut sink = BitSink::new();
            for &b in &payload {
                sink.write_bits(u64::from(b), 8).unwrap();
            }
            let bytes = write_container(&h, &sink);
            prop_assert_eq!(bytes.len(), HEADER_LEN + payload.len());
            let (back, src) = read_container(&bytes).unwrap();
            prop_assert_eq!(back, h);
            prop_assert_eq!(src.limit(), 8 * payload.len() as u64);
        }
    }
}
