//! Command-line front end over byte streams.
//!
//! Exit codes: 0 success, 1 internal error, 2 usage, 3 malformed container,
//! 4 corrupt payload, 5 I/O failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::adaptive::{decode_stream, encode_stream, table_width, CodingMode};
use crate::container::{read_container, write_container, StreamHeader};
use crate::error::CodecError;
use crate::model::{empirical_entropy, AlphabetParams, FrequencyTable};
use crate::oracle::{verify_bound, DEFAULT_ALLOWANCE};

#[derive(Debug, Parser)]
#[command(name = "apfc", version, about = "Block-adaptive Shannon / Gilbert-Moore coder")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compress a file into an APFC container.
    Encode {
        #[arg(long, value_enum, default_value_t = ModeArg::Shannon)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = SigmaPolicy::Scan)]
        sigma: SigmaPolicy,
        input: PathBuf,
        output: PathBuf,
    },
    /// Restore the original bytes from an APFC container.
    Decode { input: PathBuf, output: PathBuf },
    /// Print the achieved encoding length against the H + 1 / H + 2 bound.
    Stats {
        #[arg(long, value_enum, default_value_t = ModeArg::Shannon)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = SigmaPolicy::Scan)]
        sigma: SigmaPolicy,
        /// Constant c in the lower-order allowance c * sigma^2 * L^2.
        #[arg(long, default_value_t = DEFAULT_ALLOWANCE)]
        allowance: f64,
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Shannon,
    Alphabetic,
}

impl From<ModeArg> for CodingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Shannon => CodingMode::Shannon,
            ModeArg::Alphabetic => CodingMode::Alphabetic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SigmaPolicy {
    /// Always use the full byte alphabet.
    #[value(name = "fixed256")]
    Fixed256,
    /// Largest byte value present plus one (at least 2).
    Scan,
}

impl SigmaPolicy {
    pub fn sigma_for(&self, data: &[u8]) -> u32 {
        match self {
            SigmaPolicy::Fixed256 => 256,
            SigmaPolicy::Scan => data.iter().max().map_or(2, |&m| (u32::from(m) + 1).max(2)),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Codec(CodecError::Usage(_)) => 2,
            CliError::Codec(CodecError::Format(_)) => 3,
            CliError::Codec(CodecError::CorruptStream(_)) => 4,
            CliError::Codec(CodecError::Internal(_)) => 1,
            CliError::Io { .. } => 5,
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| {
        let _ = fs::remove_file(path);
        CliError::Io {
            path: path.to_owned(),
            source,
        }
    })
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Encode {
            mode,
            sigma,
            input,
            output,
        } => cmd_encode(&input, &output, mode.into(), sigma, &mut io::stderr()),
        Command::Decode { input, output } => cmd_decode(&input, &output),
        Command::Stats {
            mode,
            sigma,
            allowance,
            input,
        } => cmd_stats(&input, mode.into(), sigma, allowance, &mut io::stdout()),
    }
}

/// Encodes `input` into an APFC container at `output`, writing summary
/// statistics to `log`.
pub fn cmd_encode(
    input: &Path,
    output: &Path,
    mode: CodingMode,
    policy: SigmaPolicy,
    log: &mut dyn Write,
) -> Result<(), CliError> {
    let data = read_input(input)?;
    let sigma = policy.sigma_for(&data);
    let payload = encode_stream(&data, sigma, mode)?;
    let header = StreamHeader {
        mode,
        n: data.len() as u64,
        sigma,
    };
    write_output(output, &write_container(&header, &payload))?;

    let mut freq = FrequencyTable::new(sigma);
    for &b in &data {
        freq.record(u32::from(b))?;
    }
    let entropy = empirical_entropy(freq.counts());
    let per_symbol = if data.is_empty() {
        0.0
    } else {
        payload.bit_len() as f64 / data.len() as f64
    };
    // diagnostics only; a closed stderr is not an encode failure
    let _ = writeln!(log, "n={}", data.len());
    let _ = writeln!(log, "sigma={sigma}");
    let _ = writeln!(log, "mode={mode}");
    let _ = writeln!(log, "H={entropy:.6}");
    let _ = writeln!(log, "payload_bits={}", payload.bit_len());
    let _ = writeln!(log, "bits_per_symbol={per_symbol:.6}");
    if !data.is_empty() {
        let params = AlphabetParams::derive(sigma, data.len() as u64)?;
        if params.outside_bound_regime() {
            let _ = writeln!(
                log,
                "warning: sigma^2 * L^2 = {} >= n = {}; the H+{} bound is dominated by the lower-order term",
                u128::from(params.block_size()).pow(2),
                data.len(),
                mode.redundancy()
            );
        }
    }
    Ok(())
}

/// Decodes the container at `input` and writes the original bytes to `output`.
/// Nothing is written unless decoding succeeds.
pub fn cmd_decode(input: &Path, output: &Path) -> Result<(), CliError> {
    let bytes = read_input(input)?;
    let (header, mut source) = read_container(&bytes)?;
    let symbols = decode_stream(&mut source, header.sigma, header.n, header.mode)?;
    let data = symbols
        .into_iter()
        .map(|s| {
            u8::try_from(s).map_err(|_| {
                CodecError::Format(format!("decoded symbol {s} does not fit in a byte"))
            })
        })
        .collect::<Result<Vec<u8>, _>>()?;
    write_output(output, &data)
}

/// Prints a bound report for `input` without writing anything.
pub fn cmd_stats(
    input: &Path,
    mode: CodingMode,
    policy: SigmaPolicy,
    allowance: f64,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let data = read_input(input)?;
    let sigma = policy.sigma_for(&data);
    let io_err = |source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    if data.is_empty() {
        writeln!(out, "n=0\nsigma={sigma}\nmode={mode}\ntarget=H+{}", mode.redundancy())
            .map_err(io_err)?;
        return Ok(());
    }
    let report = verify_bound(&data, sigma, mode, allowance)?;
    write!(out, "{report}").map_err(io_err)?;
    let params = AlphabetParams::derive(sigma, data.len() as u64)?;
    debug_assert_eq!(report.table_width, table_width(&params, mode));
    if params.outside_bound_regime() {
        writeln!(out, "regime_warning=sigma^2*L^2>=n").map_err(io_err)?;
    }
    Ok(())
}
