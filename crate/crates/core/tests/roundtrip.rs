mod common;

use std::cmp::Ordering;

use apfc::adaptive::{table_width, CoderState};
use apfc::bitio::{compare_bit_strings, BitSink};
use apfc::model::AlphabetParams;
use apfc::oracle::tree_walk_decode;
use apfc::{decode_stream, encode_stream, CodingMode, Decoder, Encoder};
use proptest::prelude::*;
use rand::Rng;

use common::{rng, synthetic, Source};

const MODES: [CodingMode; 2] = [CodingMode::Shannon, CodingMode::Alphabetic];

fn roundtrip(input: &[u32], sigma: u32, mode: CodingMode) {
    let sink = encode_stream(input, sigma, mode).unwrap();
    let mut src = sink.as_source();
    let back = decode_stream(&mut src, sigma, input.len() as u64, mode).unwrap();
    assert_eq!(back, input, "sigma={sigma} n={} mode={mode}", input.len());
    assert_eq!(src.remaining(), 0);
}

#[test]
fn roundtrip_grid() {
    let mut seed = 0;
    for sigma in [2u32, 3, 16, 100, 256] {
        let b = AlphabetParams::derive(sigma, 100_000).unwrap().block_size();
        for n in [1, b - 1, b, b + 1, 10 * b, 100_000] {
            for source in Source::ALL {
                seed += 1;
                let input = synthetic(source, sigma, n as usize, seed);
                for mode in MODES {
                    roundtrip(&input, sigma, mode);
                }
            }
        }
    }
}

#[test]
fn whole_input_in_first_block_is_fixed_width() {
    let mut r = rng(7);
    for sigma in [2u32, 3, 5, 17, 200] {
        let n = 1 + r.gen_range(0..sigma as u64);
        let b = AlphabetParams::derive(sigma, n).unwrap().block_size();
        assert!(n <= b);
        let input: Vec<u32> = (0..n).map(|_| r.gen_range(0..sigma)).collect();
        let fixed = AlphabetParams::derive(sigma, n).unwrap().fixed_width() as u64;
        for mode in MODES {
            assert_eq!(encode_stream(&input, sigma, mode).unwrap().bit_len(), n * fixed);
        }
    }
}

#[test]
fn encoder_and_decoder_stay_in_lockstep() {
    for (sigma, n, source) in [(2u32, 5_000usize, Source::Skewed), (16, 20_000, Source::Zipf), (100, 30_000, Source::Uniform)] {
        let input = synthetic(source, sigma, n, u64::from(sigma));
        for mode in MODES {
            let params = AlphabetParams::derive(sigma, n as u64).unwrap();
            let sink = encode_stream(&input, sigma, mode).unwrap();
            let mut src = sink.as_source();
            let mut enc = Encoder::new(params, mode).unwrap();
            let mut dec = Decoder::new(params, mode).unwrap();
            let mut scratch = BitSink::new();
            for &s in &input {
                assert_eq!(enc.state(), dec.state());
                enc.encode_symbol(s, &mut scratch).unwrap();
                assert_eq!(dec.decode_symbol(&mut src).unwrap(), s);
            }
            assert_eq!(enc.state(), dec.state());
            assert_eq!(scratch, sink);
        }
    }
}

#[test]
fn each_block_decodes_under_its_own_tree() {
    // Decode block by block with the code-tree walker, using the code the
    // encoder held for that block.
    let sigma = 12;
    let n = 3_000;
    let input = synthetic(Source::Zipf, sigma, n, 99);
    for mode in MODES {
        let params = AlphabetParams::derive(sigma, n as u64).unwrap();
        let b = params.block_size() as usize;
        let sink = encode_stream(&input, sigma, mode).unwrap();
        let mut src = sink.as_source();
        let mut encoder = Encoder::new(params, mode).unwrap();
        let mut scratch = BitSink::new();
        let mut decoded = Vec::new();
        for block in input.chunks(b) {
            let state: CoderState = encoder.state().clone();
            decoded.extend(tree_walk_decode(state.code(), &mut src, block.len()).unwrap());
            for &s in block {
                encoder.encode_symbol(s, &mut scratch).unwrap();
            }
        }
        assert_eq!(decoded, input);
    }
}

#[test]
fn payload_is_deterministic() {
    let input = synthetic(Source::Zipf, 40, 50_000, 3);
    for mode in MODES {
        let a = encode_stream(&input, 40, mode).unwrap();
        let b = encode_stream(&input, 40, mode).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn codeword_lengths_within_table_width() {
    for sigma in [2u32, 7, 64, 255] {
        for source in Source::ALL {
            let input = synthetic(source, sigma, 40_000, u64::from(sigma) * 31);
            for mode in MODES {
                let params = AlphabetParams::derive(sigma, input.len() as u64).unwrap();
                let longest = apfc::oracle::per_symbol_length_audit(&input, sigma, mode).unwrap();
                assert!(longest <= table_width(&params, mode));
                if mode == CodingMode::Shannon {
                    assert!(longest <= params.shannon_cap().max(params.fixed_width()));
                }
            }
        }
    }
}

fn lexicographic(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn alphabetic_payloads_preserve_order(
        sigma in 2u32..30,
        base in prop::collection::vec(0u32..1000, 1..600),
        cut in 0.0f64..1.0,
        tail in prop::collection::vec(0u32..1000, 600),
    ) {
        let s: Vec<u32> = base.iter().map(|x| x % sigma).collect();
        let at = ((s.len() as f64) * cut) as usize;
        let mut t = s.clone();
        for (i, x) in t.iter_mut().enumerate().skip(at) {
            *x = tail[i] % sigma;
        }
        let ps = encode_stream(&s, sigma, CodingMode::Alphabetic).unwrap();
        let pt = encode_stream(&t, sigma, CodingMode::Alphabetic).unwrap();
        prop_assert_eq!(
            compare_bit_strings(ps.as_bytes(), ps.bit_len(), pt.as_bytes(), pt.bit_len()),
            lexicographic(&s, &t)
        );
    }

    #[test]
    fn random_roundtrip(sigma in 2u32..300, input in prop::collection::vec(any::<u32>(), 1..3000), alpha in any::<bool>()) {
        let input: Vec<u32> = input.into_iter().map(|x| x % sigma).collect();
        let mode = if alpha { CodingMode::Alphabetic } else { CodingMode::Shannon };
        roundtrip(&input, sigma, mode);
    }
}
