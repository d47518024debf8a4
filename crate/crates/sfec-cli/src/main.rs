//! Command-line front end: field inspection, codec encode/decode with a
//! trace mode, framed concatenated coding, and BER sweeps.
//!
//! Codeword text is hex, one digit per 4-bit symbol (so two digits per byte
//! for the 8-bit codes), whitespace-insensitive; `--binary` switches to raw
//! bytes where the symbol width allows it. Exit codes: 0 success, 1 a
//! decoder reported an uncorrectable word, 2 usage or malformed input.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sfec::conv::{
    build_trellis, conv_encode, viterbi_decode_hard, viterbi_decode_soft, ConvSpec,
    ViterbiConfig, CCSDS_TRUNCATION_BITS,
};
use sfec::galois::{Field, FieldSpec, GfElem};
use sfec::pipeline::{
    pack_bits, read_frame, unpack_bits, write_frame, ChannelOutput, ConcatCodec, ConcatSpec,
};
use sfec::rs::{DecodeStatus, RsCode, RsSpec};
use sfec::simulator::{run_ber_sweep, sweep_csv, Scheme, SweepConfig, SweepSpecs};

#[derive(Parser)]
#[command(
    name = "sfec",
    version,
    about = "Reed-Solomon, convolutional, and concatenated FEC with a BER simulator"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect Galois field tables
    #[command(subcommand)]
    Gf(GfCmd),
    /// Reed-Solomon encode, decode, and decode tracing
    #[command(subcommand)]
    Rs(RsCmd),
    /// Convolutional encode and Viterbi decode
    #[command(subcommand)]
    Conv(ConvCmd),
    /// Concatenated RS + interleaver + convolutional chain on framed files
    #[command(subcommand)]
    Concat(ConcatCmd),
    /// Monte-Carlo BER measurement over BPSK/AWGN
    #[command(subcommand)]
    Sim(SimCmd),
}

#[derive(Subcommand)]
enum GfCmd {
    /// Print every field element as decimal, binary, and a power of alpha
    Table {
        /// Extension degree m of GF(2^m)
        #[arg(long)]
        m: u32,
        /// Primitive polynomial mask, e.g. 0x13 for x^4 + x + 1
        #[arg(long, value_parser = parse_mask)]
        poly: u32,
    },
}

#[derive(Subcommand)]
enum RsCmd {
    /// Systematic encode of k-symbol message blocks
    Encode {
        #[arg(long, value_enum)]
        code: RsCodeName,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Decode n-symbol blocks back to messages; corrections go to stderr
    Decode {
        #[arg(long, value_enum)]
        code: RsCodeName,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Decode one block, printing every intermediate decoding artifact
    Trace {
        #[arg(long, value_enum)]
        code: RsCodeName,
        #[command(flatten)]
        io: IoArgs,
    },
}

#[derive(Subcommand)]
enum ConvCmd {
    /// Encode bytes, terminated; output is the packed channel bit stream
    Encode {
        #[arg(long, value_enum)]
        code: ConvCodeName,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Viterbi decode a packed channel stream back to bytes
    Decode {
        #[arg(long, value_enum)]
        code: ConvCodeName,
        /// Read whitespace-separated channel samples and decode soft
        #[arg(long)]
        soft: bool,
        /// Truncation window in bits (default: the code's usual window)
        #[arg(long)]
        trunc: Option<usize>,
        #[command(flatten)]
        io: IoArgs,
    },
}

#[derive(Subcommand)]
enum ConcatCmd {
    /// Encode a payload into a framed CCSDS concatenated stream
    Encode {
        /// Interleaving depth D
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Decode a framed stream; depth and length come from the header
    Decode {
        #[command(flatten)]
        io: IoArgs,
    },
}

#[derive(Subcommand)]
enum SimCmd {
    /// Sweep BER over an Eb/N0 grid and print CSV
    Sweep {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Interleaving depth for the concatenated scheme
        #[arg(long, default_value_t = 5)]
        depth: usize,
        /// Grid as START:STEP:STOP in dB, or a single value
        #[arg(long, value_parser = parse_grid)]
        ebn0: Grid,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Minimum information bits per grid point
        #[arg(long, default_value_t = 1_000_000)]
        min_bits: u64,
        /// Minimum accumulated bit errors per grid point
        #[arg(long, default_value_t = 100)]
        min_errors: u64,
        /// Hard cap on information bits per grid point
        #[arg(long, default_value_t = 100_000_000)]
        max_bits: u64,
        /// Worker threads (default: all cores, capped by SFEC_THREADS)
        #[arg(long)]
        threads: Option<usize>,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct IoArgs {
    /// Input file (stdin when omitted)
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output file (stdout when omitted)
    #[arg(long = "out", value_name = "FILE")]
    output: Option<PathBuf>,
    /// Raw bytes instead of hex text
    #[arg(long)]
    binary: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RsCodeName {
    /// RS(15,9) over GF(16)
    #[value(name = "15.9")]
    Small,
    /// RS(255,223) over GF(256)
    Ccsds,
}

impl RsCodeName {
    fn spec(self) -> RsSpec {
        match self {
            RsCodeName::Small => RsSpec::example_15_9(),
            RsCodeName::Ccsds => RsSpec::ccsds(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvCodeName {
    /// The small (2,1,4) code
    Ex214,
    /// CCSDS (2,1,7)
    Ccsds,
}

impl ConvCodeName {
    fn spec(self) -> ConvSpec {
        match self {
            ConvCodeName::Ex214 => ConvSpec::example_2_1_4(),
            ConvCodeName::Ccsds => ConvSpec::ccsds(),
        }
    }

    fn default_truncation(self) -> usize {
        match self {
            ConvCodeName::Ex214 => 6 * 4,
            ConvCodeName::Ccsds => CCSDS_TRUNCATION_BITS,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Uncoded,
    Rs,
    ConvHard,
    ConvSoft,
    Concat,
}

#[derive(Clone)]
struct Grid(Vec<f64>);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("sfec: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Gf(GfCmd::Table { m, poly }) => gf_table(m, poly),
        Cmd::Rs(RsCmd::Encode { code, io }) => rs_encode(code, &io),
        Cmd::Rs(RsCmd::Decode { code, io }) => rs_decode(code, &io),
        Cmd::Rs(RsCmd::Trace { code, io }) => rs_trace(code, &io),
        Cmd::Conv(ConvCmd::Encode { code, io }) => conv_encode_cmd(code, &io),
        Cmd::Conv(ConvCmd::Decode { code, soft, trunc, io }) => {
            conv_decode_cmd(code, soft, trunc, &io)
        }
        Cmd::Concat(ConcatCmd::Encode { depth, io }) => concat_encode_cmd(depth, &io),
        Cmd::Concat(ConcatCmd::Decode { io }) => concat_decode_cmd(&io),
        Cmd::Sim(SimCmd::Sweep {
            scheme,
            depth,
            ebn0,
            seed,
            min_bits,
            min_errors,
            max_bits,
            threads,
            out,
        }) => sim_sweep(scheme, depth, ebn0, seed, min_bits, min_errors, max_bits, threads, out),
    }
}

fn gf_table(m: u32, poly: u32) -> Result<ExitCode, String> {
    let field = Field::new(FieldSpec { m, prim_poly: poly }).map_err(|e| e.to_string())?;
    let width = m as usize;
    let mut table = String::new();
    writeln!(table, "decimal\tbinary\tpower").unwrap();
    writeln!(table, "0\t{:0width$b}\t0", 0).unwrap();
    for i in 0..field.n() {
        let v = field.alpha_pow(i as i64);
        writeln!(table, "{v}\t{v:0width$b}\ta^{i}").unwrap();
    }
    print!("{table}");
    Ok(ExitCode::SUCCESS)
}

fn rs_encode(code: RsCodeName, io: &IoArgs) -> Result<ExitCode, String> {
    let rs = RsCode::new(code.spec()).map_err(|e| e.to_string())?;
    let m = rs.spec().field_spec.m;
    let k = rs.spec().k;
    let symbols = read_symbols(io, m)?;
    if symbols.is_empty() || !symbols.len().is_multiple_of(k) {
        return Err(format!(
            "message length must be a positive multiple of {k} symbols, got {}",
            symbols.len()
        ));
    }
    let mut out = Vec::with_capacity(symbols.len() / k * rs.spec().n);
    for block in symbols.chunks(k) {
        out.extend(rs.encode(block).map_err(|e| e.to_string())?);
    }
    write_symbols(io, &out, m)?;
    Ok(ExitCode::SUCCESS)
}

fn rs_decode(code: RsCodeName, io: &IoArgs) -> Result<ExitCode, String> {
    let rs = RsCode::new(code.spec()).map_err(|e| e.to_string())?;
    let m = rs.spec().field_spec.m;
    let n = rs.spec().n;
    let k = rs.spec().k;
    let symbols = read_symbols(io, m)?;
    if symbols.is_empty() || !symbols.len().is_multiple_of(n) {
        return Err(format!(
            "received length must be a positive multiple of {n} symbols, got {}",
            symbols.len()
        ));
    }
    let mut out = Vec::with_capacity(symbols.len() / n * k);
    let mut failed = false;
    for (i, block) in symbols.chunks(n).enumerate() {
        let report = rs.decode(block).map_err(|e| e.to_string())?;
        match report.status {
            DecodeStatus::NoError => {}
            DecodeStatus::Corrected => eprintln!(
                "block {i}: corrected {} errors at positions {}",
                report.num_errors,
                join(&report.positions)
            ),
            DecodeStatus::Failure => {
                failed = true;
                eprintln!("block {i}: uncorrectable");
            }
        }
        match report.corrected {
            Some(cw) => out.extend_from_slice(rs.message_slice(&cw)),
            None => out.extend_from_slice(&block[..k]),
        }
    }
    write_symbols(io, &out, m)?;
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn rs_trace(code: RsCodeName, io: &IoArgs) -> Result<ExitCode, String> {
    let rs = RsCode::new(code.spec()).map_err(|e| e.to_string())?;
    let spec = *rs.spec();
    let f = rs.field();
    let symbols = read_symbols(io, spec.field_spec.m)?;
    if symbols.len() != spec.n {
        return Err(format!("expected exactly {} symbols, got {}", spec.n, symbols.len()));
    }
    let trace = rs.decode_trace(&symbols).map_err(|e| e.to_string())?;

    let mut w = String::new();
    writeln!(w, "code: RS({},{}) over GF(2^{}), t = {}", spec.n, spec.k, spec.field_spec.m, spec.t)
        .unwrap();
    writeln!(w, "received: {}", format_symbols(&symbols, spec.field_spec.m)).unwrap();
    writeln!(w, "syndromes:").unwrap();
    for (j, &s) in trace.syndromes.iter().enumerate() {
        writeln!(w, "  S{} = {}", spec.fr as usize + j, f.power_string(s)).unwrap();
    }
    if trace.report.status == DecodeStatus::NoError {
        writeln!(w, "status: no errors").unwrap();
        print!("{w}");
        return Ok(ExitCode::SUCCESS);
    }
    writeln!(w, "S(x) = {}", trace.syndrome_poly.power_string(f)).unwrap();
    writeln!(w, "euclid:").unwrap();
    for (i, step) in trace.euclid_steps.iter().enumerate() {
        writeln!(w, "  step {}: q = {}", i + 1, step.quotient.power_string(f)).unwrap();
        writeln!(w, "          r = {}", step.remainder.power_string(f)).unwrap();
        writeln!(w, "          v = {}", step.lambda.power_string(f)).unwrap();
    }
    writeln!(w, "lambda(x) = {}", trace.lambda.power_string(f)).unwrap();
    writeln!(w, "omega(x) = {}", trace.omega.power_string(f)).unwrap();
    if !trace.chien.is_empty() {
        writeln!(w, "chien search:").unwrap();
        for (p, &v) in trace.chien.iter().enumerate() {
            let mark = if v == 0 { "  <- error" } else { "" };
            writeln!(w, "  p = {p}: {}{mark}", f.power_string(v)).unwrap();
        }
    }
    if !trace.locations.is_empty() {
        let positions: Vec<usize> = trace.locations.iter().map(|l| l.position).collect();
        writeln!(w, "positions: {}", join(&positions)).unwrap();
    }
    match trace.report.status {
        DecodeStatus::Corrected => {
            let mags: Vec<String> =
                trace.report.magnitudes.iter().map(|&y| f.power_string(y)).collect();
            writeln!(w, "magnitudes: {}", mags.join(", ")).unwrap();
            let cw = trace.report.corrected.as_ref().unwrap();
            writeln!(w, "corrected: {}", format_symbols(cw, spec.field_spec.m)).unwrap();
            writeln!(w, "message: {}", format_symbols(rs.message_slice(cw), spec.field_spec.m))
                .unwrap();
            writeln!(w, "status: corrected {} errors", trace.report.num_errors).unwrap();
            print!("{w}");
            Ok(ExitCode::SUCCESS)
        }
        _ => {
            writeln!(w, "status: failure (uncorrectable)").unwrap();
            print!("{w}");
            Ok(ExitCode::from(1))
        }
    }
}

fn conv_encode_cmd(code: ConvCodeName, io: &IoArgs) -> Result<ExitCode, String> {
    let spec = code.spec();
    let payload = read_bytes(io)?;
    if payload.is_empty() {
        return Err("empty input".into());
    }
    let bits = unpack_bits(&payload, payload.len() * 8).unwrap();
    let encoded = conv_encode(&spec, &bits, true).map_err(|e| e.to_string())?;
    write_bytes(io, &pack_bits(&encoded))?;
    Ok(ExitCode::SUCCESS)
}

fn conv_decode_cmd(
    code: ConvCodeName,
    soft: bool,
    trunc: Option<usize>,
    io: &IoArgs,
) -> Result<ExitCode, String> {
    let spec = code.spec();
    let trellis = build_trellis(&spec).map_err(|e| e.to_string())?;
    let cfg = ViterbiConfig {
        truncation_depth: trunc.unwrap_or_else(|| code.default_truncation()),
        terminate: true,
    };
    let l = spec.constraint_length;
    let n_out = spec.outputs_per_bit();
    let decoded;
    let payload_bits;
    if soft {
        if io.binary {
            return Err("--soft reads whitespace-separated sample text, not --binary".into());
        }
        let text = read_text(io)?;
        let samples: Vec<f64> = text
            .split_whitespace()
            .map(|tok| tok.parse::<f64>().map_err(|_| format!("bad sample {tok:?}")))
            .collect::<Result<_, _>>()?;
        if !samples.len().is_multiple_of(n_out) {
            return Err(format!("sample count {} is not a branch multiple", samples.len()));
        }
        let stages = samples.len() / n_out;
        payload_bits = stages
            .checked_sub(l - 1)
            .filter(|b| b.is_multiple_of(8))
            .ok_or_else(|| format!("{stages} branches do not hold a whole-byte payload"))?;
        decoded = viterbi_decode_soft(&trellis, &cfg, &samples).map_err(|e| e.to_string())?;
    } else {
        let channel = read_bytes(io)?;
        let payload_bytes = conv_payload_bytes(channel.len(), l, n_out)?;
        payload_bits = payload_bytes * 8;
        let total_bits = (payload_bits + l - 1) * n_out;
        let bits = unpack_bits(&channel, total_bits).unwrap();
        decoded = viterbi_decode_hard(&trellis, &cfg, &bits).map_err(|e| e.to_string())?;
    }
    write_bytes(io, &pack_bits(&decoded[..payload_bits]))?;
    Ok(ExitCode::SUCCESS)
}

/// Recovers the payload byte count B from a packed channel stream: the
/// stream holds (8B + L-1) * n_out bits, so B is unique for a given byte
/// length if it exists at all.
fn conv_payload_bytes(channel_bytes: usize, l: usize, n_out: usize) -> Result<usize, String> {
    let tail_bits = (l - 1) * n_out;
    let b = (channel_bytes * 8)
        .checked_sub(tail_bits)
        .map(|rest| rest / (8 * n_out))
        .ok_or("channel stream shorter than the termination tail")?;
    let total = (8 * b + l - 1) * n_out;
    if total.div_ceil(8) != channel_bytes {
        return Err(format!(
            "{channel_bytes} bytes were not produced by this encoder (nearest payload: {b} bytes)"
        ));
    }
    Ok(b)
}

fn concat_encode_cmd(depth: usize, io: &IoArgs) -> Result<ExitCode, String> {
    if depth == 0 || depth > 255 {
        return Err(format!("depth {depth} outside 1..=255"));
    }
    let payload = read_bytes(io)?;
    if payload.is_empty() {
        return Err("empty input".into());
    }
    let codec = ConcatCodec::new(ConcatSpec::ccsds(depth)).map_err(|e| e.to_string())?;
    let k = codec.spec().outer.k;
    let block_payload = depth * k;
    let blocks = payload.len().div_ceil(block_payload);
    let mut all_bits = Vec::with_capacity(blocks * codec.encoded_bits_len());
    for b in 0..blocks {
        let start = b * block_payload;
        let end = (start + block_payload).min(payload.len());
        // the final block is zero padded; the header records the true length
        let mut chunk = vec![0u8; block_payload];
        chunk[..end - start].copy_from_slice(&payload[start..end]);
        let messages: Vec<Vec<GfElem>> = chunk
            .chunks_exact(k)
            .map(|row| row.iter().map(|&v| v as GfElem).collect())
            .collect();
        all_bits.extend(codec.encode(&messages).map_err(|e| e.to_string())?);
    }
    let frame = write_frame(depth as u8, payload.len() as u64, &pack_bits(&all_bits));
    write_bytes(io, &frame)?;
    Ok(ExitCode::SUCCESS)
}

fn concat_decode_cmd(io: &IoArgs) -> Result<ExitCode, String> {
    let raw = read_bytes(io)?;
    let frame = read_frame(&raw).map_err(|e| e.to_string())?;
    let depth = frame.depth as usize;
    let payload_len = usize::try_from(frame.payload_len)
        .map_err(|_| "frame payload length overflows this platform".to_string())?;
    let codec = ConcatCodec::new(ConcatSpec::ccsds(depth)).map_err(|e| e.to_string())?;
    let k = codec.spec().outer.k;
    let block_payload = depth * k;
    let blocks = payload_len.div_ceil(block_payload);
    let total_bits = blocks * codec.encoded_bits_len();
    let bits = unpack_bits(frame.body, total_bits)
        .map_err(|_| "frame body does not match the declared payload length".to_string())?;
    let mut out = Vec::with_capacity(blocks * block_payload);
    let mut failures = 0usize;
    for (bi, chunk) in bits.chunks_exact(codec.encoded_bits_len()).enumerate() {
        let report = codec.decode(ChannelOutput::Hard(chunk)).map_err(|e| e.to_string())?;
        for (ri, (msg, rep)) in report.messages.iter().zip(&report.reports).enumerate() {
            if rep.status == DecodeStatus::Failure {
                failures += 1;
                eprintln!("block {bi}, codeword {ri}: uncorrectable");
            }
            out.extend(msg.iter().map(|&s| s as u8));
        }
    }
    out.truncate(payload_len);
    write_bytes(io, &out)?;
    Ok(if failures > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

#[allow(clippy::too_many_arguments)]
fn sim_sweep(
    scheme: SchemeArg,
    depth: usize,
    ebn0: Grid,
    seed: u64,
    min_bits: u64,
    min_errors: u64,
    max_bits: u64,
    threads: Option<usize>,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let scheme = match scheme {
        SchemeArg::Uncoded => Scheme::Uncoded,
        SchemeArg::Rs => Scheme::RsOnly,
        SchemeArg::ConvHard => Scheme::ConvHard,
        SchemeArg::ConvSoft => Scheme::ConvSoft,
        SchemeArg::Concat => Scheme::Concat { depth },
    };
    let mut cfg = SweepConfig::new(scheme, ebn0.0, seed);
    cfg.min_info_bits = min_bits;
    cfg.min_bit_errors = min_errors;
    cfg.max_info_bits = max_bits;
    let points =
        run_ber_sweep(&cfg, &SweepSpecs::ccsds(), resolve_threads(threads)).map_err(|e| e.to_string())?;
    let csv = sweep_csv(&cfg, &points);
    match out {
        Some(path) => fs::write(&path, csv).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

/// `--threads` picks the worker count (0 or absent: all cores); the
/// SFEC_THREADS environment variable caps whatever was picked.
fn resolve_threads(flag: Option<usize>) -> usize {
    let base = flag.unwrap_or(0);
    match std::env::var("SFEC_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        Some(cap) if cap >= 1 => {
            if base == 0 {
                cap
            } else {
                base.min(cap)
            }
        }
        _ => base,
    }
}

fn parse_mask(s: &str) -> Result<u32, String> {
    let s = s.trim();
    let parsed = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u32::from_str_radix(hex, 16)
    } else if let Some(bin) = s.strip_prefix("0b") {
        u32::from_str_radix(bin, 2)
    } else {
        s.parse()
    };
    parsed.map_err(|_| format!("cannot parse {s:?} as a bit mask"))
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let num = |tok: &str| {
        tok.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad number {tok:?} in the Eb/N0 grid"))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(Grid(vec![num(single)?])),
        [start, step, stop] => {
            let (a, d, b) = (num(start)?, num(step)?, num(stop)?);
            if d <= 0.0 || d.is_nan() {
                return Err("grid step must be positive".into());
            }
            if b < a {
                return Err("grid stop lies below its start".into());
            }
            let mut points = Vec::new();
            for i in 0.. {
                let v = a + d * i as f64;
                if v > b + d * 1e-9 {
                    break;
                }
                points.push(v);
            }
            Ok(Grid(points))
        }
        _ => Err("expected START:STEP:STOP or a single dB value".into()),
    }
}

fn join(values: &[usize]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn read_raw(io: &IoArgs) -> Result<Vec<u8>, String> {
    match &io.input {
        Some(path) => fs::read(path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf).map_err(|e| format!("stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn read_text(io: &IoArgs) -> Result<String, String> {
    String::from_utf8(read_raw(io)?).map_err(|_| "input is not text".to_string())
}

/// Hex symbols: m/4 digits each, whitespace ignored. Binary input carries
/// one symbol per byte and therefore needs 8-bit symbols.
fn read_symbols(io: &IoArgs, m: u32) -> Result<Vec<GfElem>, String> {
    if io.binary {
        if m != 8 {
            return Err(format!("--binary carries 8-bit symbols, this code uses {m}-bit ones"));
        }
        return Ok(read_raw(io)?.iter().map(|&b| b as GfElem).collect());
    }
    let text = read_text(io)?;
    let digits: Vec<u16> = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| {
            c.to_digit(16)
                .map(|d| d as u16)
                .ok_or_else(|| format!("invalid hex digit {c:?}"))
        })
        .collect::<Result<_, _>>()?;
    let per = m.div_ceil(4) as usize;
    if !digits.len().is_multiple_of(per) {
        return Err(format!(
            "hex length {} is not a whole number of {per}-digit symbols",
            digits.len()
        ));
    }
    Ok(digits
        .chunks_exact(per)
        .map(|chunk| chunk.iter().fold(0, |acc, &d| acc << 4 | d))
        .collect())
}

fn format_symbols(symbols: &[GfElem], m: u32) -> String {
    let per = m.div_ceil(4) as usize;
    let mut s = String::with_capacity(symbols.len() * per);
    for &sym in symbols {
        write!(s, "{sym:0per$x}").unwrap();
    }
    s
}

fn write_symbols(io: &IoArgs, symbols: &[GfElem], m: u32) -> Result<(), String> {
    if io.binary {
        if m != 8 {
            return Err(format!("--binary carries 8-bit symbols, this code uses {m}-bit ones"));
        }
        let bytes: Vec<u8> = symbols.iter().map(|&s| s as u8).collect();
        return write_out(io, &bytes);
    }
    let mut line = format_symbols(symbols, m);
    line.push('\n');
    write_out(io, line.as_bytes())
}

fn read_bytes(io: &IoArgs) -> Result<Vec<u8>, String> {
    Ok(read_symbols(io, 8)?.iter().map(|&s| s as u8).collect())
}

fn write_bytes(io: &IoArgs, bytes: &[u8]) -> Result<(), String> {
    if io.binary {
        write_out(io, bytes)
    } else {
        let symbols: Vec<GfElem> = bytes.iter().map(|&b| b as GfElem).collect();
        let mut line = format_symbols(&symbols, 8);
        line.push('\n');
        write_out(io, line.as_bytes())
    }
}

fn write_out(io: &IoArgs, bytes: &[u8]) -> Result<(), String> {
    match &io.output {
        Some(path) => fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout().write_all(bytes).map_err(|e| format!("stdout: {e}")),
    }
}
