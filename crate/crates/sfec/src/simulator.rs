//! Seeded Monte-Carlo BER measurement over a BPSK/AWGN channel.
//!
//! Eb/N0 is per information bit: with unit symbol energy the per-sample
//! noise variance is 1/(2 R Eb/N0), so lower-rate codes see more noise per
//! transmitted symbol at the same Eb/N0.
//!
//! Reproducibility contract: every trial draws from its own ChaCha8 stream
//! keyed by (sweep seed, grid point index, trial index), trials are
//! scheduled in fixed waves, the stop rule is evaluated only at wave
//! boundaries, and error counts are integer sums, so results are identical
//! for any worker count.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::conv::{
    build_trellis, conv_encode, viterbi_decode_hard, viterbi_decode_soft, ConvSpec, Trellis,
    ViterbiConfig, CCSDS_TRUNCATION_BITS,
};
use crate::galois::GfElem;
use crate::pipeline::{
    bits_to_symbols, symbols_to_bits, ChannelOutput, ConcatCodec, ConcatSpec, InterleaverSpec,
};
use crate::rs::{RsCode, RsSpec};
use crate::Error;

/// One AWGN channel use: noise level, the code rate behind it, and the seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    pub code_rate: f64,
    pub seed: u64,
}

impl ChannelConfig {
    fn validate(&self) -> Result<(), Error> {
        if !self.ebn0_db.is_finite() {
            return Err(Error::Config("Eb/N0 must be finite".into()));
        }
        if !(self.code_rate > 0.0 && self.code_rate <= 1.0) {
            return Err(Error::Config(format!("code rate {} outside (0, 1]", self.code_rate)));
        }
        Ok(())
    }
}

/// Bit 0 goes to +1.0, bit 1 to -1.0.
pub fn bpsk_modulate(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| if b & 1 == 0 { 1.0 } else { -1.0 }).collect()
}

/// Nonnegative samples slice to 0, so an exact 0.0 reads as bit 0.
pub fn hard_slice(samples: &[f64]) -> Vec<u8> {
    samples.iter().map(|&s| (s < 0.0) as u8).collect()
}

/// Per-sample noise deviation at unit symbol energy.
pub fn noise_sigma(ebn0_db: f64, code_rate: f64) -> f64 {
    (1.0 / (2.0 * code_rate * 10f64.powf(ebn0_db / 10.0))).sqrt()
}

/// Adds seeded white Gaussian noise scaled for the configured Eb/N0.
pub fn awgn_apply(samples: &[f64], cfg: &ChannelConfig) -> Result<Vec<f64>, Error> {
    cfg.validate()?;
    let sigma = noise_sigma(cfg.ebn0_db, cfg.code_rate);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok(samples.iter().map(|&s| s + sigma * rng.sample::<f64, _>(StandardNormal)).collect())
}

/// BER of uncoded BPSK, Q(sqrt(2 Eb/N0)) = erfc(sqrt(Eb/N0))/2.
pub fn theoretical_uncoded_ber(ebn0_db: f64) -> f64 {
    0.5 * libm::erfc(10f64.powf(ebn0_db / 10.0).sqrt())
}

/// What travels over the channel in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Uncoded,
    RsOnly,
    ConvHard,
    ConvSoft,
    /// Full concatenated chain with a soft-decision inner decoder.
    Concat { depth: usize },
}

impl Scheme {
    /// The label used in CSV rows and CLI arguments.
    pub fn label(&self) -> String {
        match self {
            Scheme::Uncoded => "uncoded".into(),
            Scheme::RsOnly => "rs".into(),
            Scheme::ConvHard => "conv-hard".into(),
            Scheme::ConvSoft => "conv-soft".into(),
            Scheme::Concat { depth } => format!("concat-d{depth}"),
        }
    }
}

/// One sweep: a scheme, the Eb/N0 grid, and the per-point stop rule. Every
/// point runs until it has seen both `min_info_bits` and `min_bit_errors`,
/// or hits the `max_info_bits` cap.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub scheme: Scheme,
    pub ebn0_grid: Vec<f64>,
    pub min_info_bits: u64,
    pub min_bit_errors: u64,
    pub max_info_bits: u64,
    pub seed: u64,
}

impl SweepConfig {
    /// Default stop rule: at least 10^6 bits and 100 errors, capped at 10^8
    /// bits for points whose error rate is too low to reach the quota.
    pub fn new(scheme: Scheme, ebn0_grid: Vec<f64>, seed: u64) -> Self {
        SweepConfig {
            scheme,
            ebn0_grid,
            min_info_bits: 1_000_000,
            min_bit_errors: 100,
            max_info_bits: 100_000_000,
            seed,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.ebn0_grid.is_empty() {
            return Err(Error::Config("empty Eb/N0 grid".into()));
        }
        if self.ebn0_grid.iter().any(|e| !e.is_finite()) {
            return Err(Error::Config("Eb/N0 grid must be finite".into()));
        }
        if self.min_info_bits == 0 || self.min_bit_errors == 0 {
            return Err(Error::Config("stop rule thresholds must be positive".into()));
        }
        if self.max_info_bits < self.min_info_bits {
            return Err(Error::Config("bit cap below the minimum bit count".into()));
        }
        Ok(())
    }
}

/// Accumulated measurement at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerPoint {
    pub ebn0_db: f64,
    pub info_bits: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
}

impl BerPoint {
    pub fn ber(&self) -> f64 {
        self.bit_errors as f64 / self.info_bits as f64
    }
}

/// The codecs a sweep may need; schemes pick what they use.
#[derive(Debug, Clone)]
pub struct SweepSpecs {
    pub rs: RsSpec,
    pub conv: ConvSpec,
    pub viterbi: ViterbiConfig,
}

impl SweepSpecs {
    pub fn ccsds() -> Self {
        SweepSpecs {
            rs: RsSpec::ccsds(),
            conv: ConvSpec::ccsds(),
            viterbi: ViterbiConfig {
                truncation_depth: CCSDS_TRUNCATION_BITS,
                terminate: true,
            },
        }
    }
}

/// Block sizes for the schemes without an RS frame of their own.
const UNCODED_TRIAL_BITS: usize = 1024;
const CONV_TRIAL_BITS: usize = 1024;

/// Trials per scheduling wave. The stop rule is only consulted between
/// waves, which pins down exactly how many trials every point runs.
const WAVE_TRIALS: u64 = 64;

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    bit_errors: u64,
    frame_errors: u64,
}

/// A scheme bound to its built codecs, running one frame per trial.
enum Runner {
    Uncoded,
    RsOnly { code: RsCode },
    Conv { trellis: Trellis, viterbi: ViterbiConfig, soft: bool },
    Concat { codec: Box<ConcatCodec> },
}

impl Runner {
    fn build(scheme: Scheme, specs: &SweepSpecs) -> Result<Runner, Error> {
        Ok(match scheme {
            Scheme::Uncoded => Runner::Uncoded,
            Scheme::RsOnly => Runner::RsOnly { code: RsCode::new(specs.rs)? },
            Scheme::ConvHard | Scheme::ConvSoft => {
                if specs.viterbi.truncation_depth < specs.conv.constraint_length {
                    return Err(Error::Config(
                        "truncation depth below the constraint length".into(),
                    ));
                }
                Runner::Conv {
                    trellis: build_trellis(&specs.conv)?,
                    viterbi: specs.viterbi,
                    soft: scheme == Scheme::ConvSoft,
                }
            }
            Scheme::Concat { depth } => Runner::Concat {
                codec: Box::new(ConcatCodec::new(ConcatSpec {
                    outer: specs.rs,
                    inner: specs.conv.clone(),
                    interleaver: InterleaverSpec { depth, row_len: specs.rs.n },
                    viterbi: specs.viterbi,
                })?),
            },
        })
    }

    fn info_bits_per_trial(&self) -> u64 {
        match self {
            Runner::Uncoded => UNCODED_TRIAL_BITS as u64,
            Runner::RsOnly { code } => {
                (code.spec().k as u64) * code.spec().field_spec.m as u64
            }
            Runner::Conv { .. } => CONV_TRIAL_BITS as u64,
            Runner::Concat { codec } => codec.message_symbols_len() as u64 * 8,
        }
    }

    fn code_rate(&self) -> f64 {
        match self {
            Runner::Uncoded => 1.0,
            Runner::RsOnly { code } => code.spec().k as f64 / code.spec().n as f64,
            Runner::Conv { trellis, viterbi, .. } => {
                let spec = trellis.spec();
                let tail = if viterbi.terminate { spec.constraint_length - 1 } else { 0 };
                CONV_TRIAL_BITS as f64
                    / (((CONV_TRIAL_BITS + tail) * spec.outputs_per_bit()) as f64)
            }
            Runner::Concat { codec } => {
                (codec.message_symbols_len() * 8) as f64 / codec.encoded_bits_len() as f64
            }
        }
    }

    fn run_trial(&self, rng: &mut ChaCha8Rng, sigma: f64) -> Tally {
        match self {
            Runner::Uncoded => {
                let bits = random_bits(rng, UNCODED_TRIAL_BITS);
                let mut tx = bpsk_modulate(&bits);
                add_noise(&mut tx, sigma, rng);
                let rx = hard_slice(&tx);
                let bit_errors =
                    bits.iter().zip(&rx).filter(|(a, b)| a != b).count() as u64;
                Tally { bit_errors, frame_errors: (bit_errors > 0) as u64 }
            }
            Runner::RsOnly { code } => {
                let m = code.spec().field_spec.m;
                let message = random_symbols(rng, code.spec().k, code.spec().n as GfElem);
                let cw = code.encode(&message).unwrap();
                let mut tx = bpsk_modulate(&symbols_to_bits(&cw, m));
                add_noise(&mut tx, sigma, rng);
                let rx = bits_to_symbols(&hard_slice(&tx), m).unwrap();
                let report = code.decode(&rx).unwrap();
                let decoded = match &report.corrected {
                    Some(cw) => code.message_slice(cw),
                    None => &rx[..code.spec().k],
                };
                let bit_errors = symbol_bit_errors(&message, decoded);
                Tally { bit_errors, frame_errors: (bit_errors > 0) as u64 }
            }
            Runner::Conv { trellis, viterbi, soft } => {
                let message = random_bits(rng, CONV_TRIAL_BITS);
                let encoded = conv_encode(trellis.spec(), &message, viterbi.terminate).unwrap();
                let mut tx = bpsk_modulate(&encoded);
                add_noise(&mut tx, sigma, rng);
                let decoded = if *soft {
                    viterbi_decode_soft(trellis, viterbi, &tx).unwrap()
                } else {
                    viterbi_decode_hard(trellis, viterbi, &hard_slice(&tx)).unwrap()
                };
                let bit_errors = message
                    .iter()
                    .zip(&decoded[..CONV_TRIAL_BITS])
                    .filter(|(a, b)| a != b)
                    .count() as u64;
                Tally { bit_errors, frame_errors: (bit_errors > 0) as u64 }
            }
            Runner::Concat { codec } => {
                let spec = codec.spec();
                let messages: Vec<Vec<GfElem>> = (0..spec.interleaver.depth)
                    .map(|_| random_symbols(rng, spec.outer.k, spec.outer.n as GfElem))
                    .collect();
                let encoded = codec.encode(&messages).unwrap();
                let mut tx = bpsk_modulate(&encoded);
                add_noise(&mut tx, sigma, rng);
                let report = codec.decode(ChannelOutput::Soft(&tx)).unwrap();
                let mut tally = Tally::default();
                for (sent, got) in messages.iter().zip(&report.messages) {
                    let errs = symbol_bit_errors(sent, got);
                    tally.bit_errors += errs;
                    tally.frame_errors += (errs > 0) as u64;
                }
                tally
            }
        }
    }

}

fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.random::<bool>() as u8).collect()
}

fn random_symbols(rng: &mut ChaCha8Rng, len: usize, mask: GfElem) -> Vec<GfElem> {
    // the field order n = 2^m - 1 is exactly the symbol mask
    (0..len).map(|_| rng.random::<u16>() & mask).collect()
}

fn symbol_bit_errors(sent: &[GfElem], got: &[GfElem]) -> u64 {
    sent.iter().zip(got).map(|(&a, &b)| (a ^ b).count_ones() as u64).sum()
}

fn add_noise(samples: &mut [f64], sigma: f64, rng: &mut ChaCha8Rng) {
    for s in samples {
        *s += sigma * rng.sample::<f64, _>(StandardNormal);
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// 256-bit ChaCha key for the (seed, point, trial) stream.
fn stream_seed(seed: u64, point: u64, trial: u64) -> [u8; 32] {
    let mut state = seed;
    for v in [point, trial] {
        state = splitmix64(&mut { state ^ v.wrapping_mul(0x9e3779b97f4a7c15) });
    }
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    key
}

/// Measures BER at every grid point. `threads = 0` uses all available
/// cores; the result is the same either way.
pub fn run_ber_sweep(
    cfg: &SweepConfig,
    specs: &SweepSpecs,
    threads: usize,
) -> Result<Vec<BerPoint>, Error> {
    cfg.validate()?;
    let runner = Runner::build(cfg.scheme, specs)?;
    let threads = match threads {
        0 => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        n => n,
    };
    let per_trial = runner.info_bits_per_trial();
    let sigma_of = |ebn0: f64| noise_sigma(ebn0, runner.code_rate());

    let mut points = Vec::with_capacity(cfg.ebn0_grid.len());
    for (point_idx, &ebn0_db) in cfg.ebn0_grid.iter().enumerate() {
        let sigma = sigma_of(ebn0_db);
        let mut point =
            BerPoint { ebn0_db, info_bits: 0, bit_errors: 0, frame_errors: 0 };
        let mut next_trial = 0u64;
        loop {
            let wave_end = next_trial + WAVE_TRIALS;
            let counter = AtomicU64::new(next_trial);
            let wave_sum = Mutex::new(Tally::default());
            std::thread::scope(|scope| {
                for _ in 0..threads {
                    scope.spawn(|| {
                        let mut local = Tally::default();
                        loop {
                            let trial = counter.fetch_add(1, Ordering::Relaxed);
                            if trial >= wave_end {
                                break;
                            }
                            let key = stream_seed(cfg.seed, point_idx as u64, trial);
                            let mut rng = ChaCha8Rng::from_seed(key);
                            let t = runner.run_trial(&mut rng, sigma);
                            local.bit_errors += t.bit_errors;
                            local.frame_errors += t.frame_errors;
                        }
                        let mut sum = wave_sum.lock().unwrap();
                        sum.bit_errors += local.bit_errors;
                        sum.frame_errors += local.frame_errors;
                    });
                }
            });
            let wave = wave_sum.into_inner().unwrap();
            next_trial = wave_end;
            point.info_bits += WAVE_TRIALS * per_trial;
            point.bit_errors += wave.bit_errors;
            point.frame_errors += wave.frame_errors;
            let satisfied = point.info_bits >= cfg.min_info_bits
                && point.bit_errors >= cfg.min_bit_errors;
            if satisfied || point.info_bits >= cfg.max_info_bits {
                break;
            }
        }
        points.push(point);
    }
    Ok(points)
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Order-sensitive hash of everything that shapes a sweep's numbers.
pub fn config_hash(cfg: &SweepConfig) -> u64 {
    let mut buf = Vec::new();
    buf.extend_from_slice(cfg.scheme.label().as_bytes());
    for e in &cfg.ebn0_grid {
        buf.extend_from_slice(&e.to_bits().to_le_bytes());
    }
    for v in [cfg.min_info_bits, cfg.min_bit_errors, cfg.max_info_bits, cfg.seed] {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    fnv1a64(&buf)
}

/// Renders a sweep result as CSV with a comment line pinning the seed and
/// a hash of the full configuration.
pub fn sweep_csv(cfg: &SweepConfig, points: &[BerPoint]) -> String {
    let mut out = String::new();
    writeln!(out, "# seed={} config={:016x}", cfg.seed, config_hash(cfg)).unwrap();
    writeln!(out, "scheme,ebn0_db,info_bits,bit_errors,frame_errors,ber").unwrap();
    let label = cfg.scheme.label();
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{:.6e}",
            label, p.ebn0_db, p.info_bits, p.bit_errors, p.frame_errors, p.ber()
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulation_and_slicing() {
        assert_eq!(bpsk_modulate(&[0, 1, 1]), vec![1.0, -1.0, -1.0]);
        assert_eq!(hard_slice(&[1.0, -1.0, -0.001, 0.0]), vec![0, 1, 1, 0]);
        let bits = [0u8, 1, 1, 0, 1];
        assert_eq!(hard_slice(&bpsk_modulate(&bits)), bits);
    }

    #[test]
    fn sigma_matches_the_rate_formula() {
        // R = 1 at 0 dB: sigma^2 = 1/2
        assert!((noise_sigma(0.0, 1.0).powi(2) - 0.5).abs() < 1e-12);
        // quadrupling Eb/N0 (6.0206 dB) halves sigma
        let six_db = 10.0 * 4f64.log10();
        assert!((noise_sigma(six_db, 1.0) - noise_sigma(0.0, 1.0) / 2.0).abs() < 1e-9);
        // lower rate at fixed Eb/N0 means more noise per symbol
        assert!(noise_sigma(3.0, 0.5) > noise_sigma(3.0, 1.0));
    }

    #[test]
    fn theoretical_curve_golden_values() {
        let cases = [
            (0.0, 0.0786496035),
            (2.0, 0.0375061284),
            (3.0, 0.0228784076),
            (4.0, 0.0125008180),
        ];
        for (db, expected) in cases {
            let got = theoretical_uncoded_ber(db);
            assert!(
                (got - expected).abs() / expected < 1e-6,
                "at {db} dB: {got} vs {expected}"
            );
        }
        assert!(theoretical_uncoded_ber(10.0) < theoretical_uncoded_ber(9.0));
        assert!(theoretical_uncoded_ber(12.0) < 1e-8);
    }

    #[test]
    fn awgn_is_a_function_of_the_seed() {
        let cfg = ChannelConfig { ebn0_db: 2.0, code_rate: 1.0, seed: 99 };
        let clean = vec![1.0; 64];
        let a = awgn_apply(&clean, &cfg).unwrap();
        let b = awgn_apply(&clean, &cfg).unwrap();
        assert_eq!(a, b);
        let c = awgn_apply(&clean, &ChannelConfig { seed: 100, ..cfg }).unwrap();
        assert_ne!(a, c);
        assert!(awgn_apply(&clean, &ChannelConfig { code_rate: 0.0, ..cfg }).is_err());
    }

    #[test]
    fn noise_moments_match_the_configured_variance() {
        let cfg = ChannelConfig { ebn0_db: 0.0, code_rate: 1.0, seed: 7 };
        let n = 1_000_000;
        let noisy = awgn_apply(&vec![0.0; n], &cfg).unwrap();
        let mean = noisy.iter().sum::<f64>() / n as f64;
        let var = noisy.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        // sigma^2 = 0.5; the mean of n draws is within 4 sigma/sqrt(n) at
        // this seed, the variance within 1%
        assert!(mean.abs() < 4.0 * (0.5f64).sqrt() / (n as f64).sqrt(), "mean {mean}");
        assert!((var - 0.5).abs() / 0.5 < 0.01, "variance {var}");
    }

    #[test]
    fn sweeps_are_thread_count_independent() {
        let mut cfg = SweepConfig::new(Scheme::Uncoded, vec![2.0, 4.0], 1234);
        cfg.min_info_bits = 100_000;
        cfg.min_bit_errors = 50;
        let specs = SweepSpecs::ccsds();
        let single = run_ber_sweep(&cfg, &specs, 1).unwrap();
        let multi = run_ber_sweep(&cfg, &specs, 4).unwrap();
        assert_eq!(single, multi);
        assert_eq!(sweep_csv(&cfg, &single), sweep_csv(&cfg, &multi));
    }

    #[test]
    fn uncoded_tracks_the_analytic_curve() {
        let mut cfg = SweepConfig::new(Scheme::Uncoded, vec![4.0], 42);
        cfg.min_info_bits = 1_000_000;
        let point = &run_ber_sweep(&cfg, &SweepSpecs::ccsds(), 0).unwrap()[0];
        assert!(point.info_bits >= 1_000_000);
        let expected = theoretical_uncoded_ber(4.0);
        let rel = (point.ber() - expected).abs() / expected;
        assert!(rel < 0.1, "measured {} vs theory {expected}", point.ber());
    }

    #[test]
    fn rs_beats_uncoded_well_above_threshold() {
        // at 7 dB the RS decoder clears virtually every word while raw BPSK
        // still errs at about 8e-4
        let specs = SweepSpecs::ccsds();
        let mut cfg = SweepConfig::new(Scheme::Uncoded, vec![7.0], 5);
        cfg.min_info_bits = 200_000;
        cfg.min_bit_errors = 30;
        cfg.max_info_bits = 2_000_000;
        let uncoded = &run_ber_sweep(&cfg, &specs, 0).unwrap()[0];
        cfg.scheme = Scheme::RsOnly;
        let rs = &run_ber_sweep(&cfg, &specs, 0).unwrap()[0];
        assert!(uncoded.bit_errors >= 30);
        assert!(rs.ber() < uncoded.ber(), "rs {} vs uncoded {}", rs.ber(), uncoded.ber());
    }

    #[test]
    fn soft_decisions_beat_hard_decisions() {
        let specs = SweepSpecs::ccsds();
        let mut cfg = SweepConfig::new(Scheme::ConvHard, vec![3.0], 9);
        cfg.min_info_bits = 100_000;
        cfg.min_bit_errors = 50;
        cfg.max_info_bits = 4_000_000;
        let hard = &run_ber_sweep(&cfg, &specs, 0).unwrap()[0];
        cfg.scheme = Scheme::ConvSoft;
        let soft = &run_ber_sweep(&cfg, &specs, 0).unwrap()[0];
        assert!(
            soft.ber() < hard.ber(),
            "soft {} vs hard {}",
            soft.ber(),
            hard.ber()
        );
    }

    #[test]
    fn labels_and_csv_shape() {
        assert_eq!(Scheme::Concat { depth: 5 }.label(), "concat-d5");
        assert_eq!(Scheme::ConvSoft.label(), "conv-soft");
        let cfg = SweepConfig::new(Scheme::RsOnly, vec![2.5], 77);
        let points = [BerPoint { ebn0_db: 2.5, info_bits: 1784, bit_errors: 3, frame_errors: 1 }];
        let csv = sweep_csv(&cfg, &points);
        let mut lines = csv.lines();
        let header = lines.next().unwrap();
        assert!(header.starts_with("# seed=77 config="));
        assert_eq!(lines.next().unwrap(), "scheme,ebn0_db,info_bits,bit_errors,frame_errors,ber");
        let row = lines.next().unwrap();
        assert!(row.starts_with("rs,2.5,1784,3,1,"), "{row}");
        // a config change moves the hash
        let mut other = cfg.clone();
        other.seed = 78;
        assert_ne!(config_hash(&cfg), config_hash(&other));
    }

    #[test]
    fn bad_sweep_configs_are_rejected() {
        let specs = SweepSpecs::ccsds();
        let empty = SweepConfig::new(Scheme::Uncoded, vec![], 1);
        assert!(run_ber_sweep(&empty, &specs, 1).is_err());
        let mut zero_rule = SweepConfig::new(Scheme::Uncoded, vec![1.0], 1);
        zero_rule.min_bit_errors = 0;
        assert!(run_ber_sweep(&zero_rule, &specs, 1).is_err());
        let mut inverted = SweepConfig::new(Scheme::Uncoded, vec![1.0], 1);
        inverted.max_info_bits = 10;
        assert!(run_ber_sweep(&inverted, &specs, 1).is_err());
    }
}
