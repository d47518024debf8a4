//! Rate 1/n binary convolutional codes and Viterbi decoding.
//!
//! A generator is a bit mask of `constraint_length` bits with the most
//! significant of those bits tapping the newest input, so 0b1111001 reads
//! the same way generator vectors are usually printed. The encoder state is
//! the previous L-1 inputs, newest in the top bit, which makes the state
//! tables come out in the conventional order (state bits S1 S2 S3 with S1
//! the most recent).
//!
//! The decoder is a single Viterbi core used with either a Hamming branch
//! metric on hard bits or a squared Euclidean metric on raw samples against
//! BPSK references (+1 for bit 0, -1 for bit 1). Survivor ties always keep
//! the lower-numbered predecessor state, so decoding is fully deterministic.
//! With a finite truncation window the oldest bit is committed by traceback
//! from the currently best state once the window fills; the remainder is
//! flushed at the end from the all-zero state (when terminated) or from the
//! best final state.

use crate::Error;

/// Rate 1/n convolutional code parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvSpec {
    /// Register length L in bits, counting the current input. 2..=16.
    pub constraint_length: usize,
    /// One mask of L bits per output branch, newest-input tap in the top bit.
    pub generators: Vec<u32>,
    /// Per-branch logical inversion applied after the parity is formed.
    pub invert_mask: Vec<bool>,
}

impl ConvSpec {
    /// The small (2,1,4) teaching code: g1 = 1111, g2 = 1101.
    pub fn example_2_1_4() -> Self {
        ConvSpec {
            constraint_length: 4,
            generators: vec![0b1111, 0b1101],
            invert_mask: vec![false, false],
        }
    }

    /// CCSDS (2,1,7): g1 = 1111001, g2 = 1011011 with the second branch
    /// inverted on the channel.
    pub fn ccsds() -> Self {
        ConvSpec {
            constraint_length: 7,
            generators: vec![0b1111001, 0b1011011],
            invert_mask: vec![false, true],
        }
    }

    /// Output bits per input bit, the n of rate 1/n.
    pub fn outputs_per_bit(&self) -> usize {
        self.generators.len()
    }

    pub fn validate(&self) -> Result<(), Error> {
        let l = self.constraint_length;
        if l > 16 {
            return Err(Error::TooLarge("constraint length above 16"));
        }
        if l < 2 {
            return Err(Error::Config("constraint length must be at least 2".into()));
        }
        if self.generators.is_empty() || self.generators.len() > 8 {
            return Err(Error::Config("between 1 and 8 generators required".into()));
        }
        if self.invert_mask.len() != self.generators.len() {
            return Err(Error::Config("one inversion flag per generator required".into()));
        }
        if self.generators.iter().any(|&g| g == 0 || g >> l != 0) {
            return Err(Error::Config(format!("generators must be nonzero {l}-bit masks")));
        }
        Ok(())
    }
}

/// Decoder window controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ViterbiConfig {
    /// Decoded bits kept undecided before the oldest is committed. Must be
    /// at least the constraint length; `usize::MAX` means full trace.
    pub truncation_depth: usize,
    /// The encoder appended L-1 zero tail bits; force the final state to
    /// zero instead of picking the best survivor.
    pub terminate: bool,
}

impl ViterbiConfig {
    /// Keep every decision and trace back once at the end.
    pub fn full_trace(terminate: bool) -> Self {
        ViterbiConfig { truncation_depth: usize::MAX, terminate }
    }

    /// The usual compromise window of six constraint lengths.
    pub fn truncated_default(spec: &ConvSpec) -> Self {
        ViterbiConfig { truncation_depth: 6 * spec.constraint_length, terminate: true }
    }
}

/// Truncation window used for the CCSDS inner code.
pub const CCSDS_TRUNCATION_BITS: usize = 60;

/// Encodes `bits` (0/1 values). With `terminate` the register is driven
/// back to zero by L-1 zero tail bits, which are encoded too.
pub fn conv_encode(spec: &ConvSpec, bits: &[u8], terminate: bool) -> Result<Vec<u8>, Error> {
    spec.validate()?;
    let l = spec.constraint_length;
    let mut out = Vec::with_capacity((bits.len() + l - 1) * spec.outputs_per_bit());
    let mut state: u32 = 0;
    let tail = if terminate { l - 1 } else { 0 };
    for step in 0..bits.len() + tail {
        let u = if step < bits.len() { bits[step] & 1 } else { 0 };
        let reg = ((u as u32) << (l - 1)) | state;
        for (g, &inv) in spec.generators.iter().zip(&spec.invert_mask) {
            out.push(((reg & g).count_ones() as u8 & 1) ^ inv as u8);
        }
        state = ((u as u32) << (l - 2)) | (state >> 1);
    }
    Ok(out)
}

/// Precomputed state machine of a `ConvSpec`.
#[derive(Debug, Clone)]
pub struct Trellis {
    spec: ConvSpec,
    num_states: usize,
    /// Output word for (state, input), branch i in bit i, inversions applied.
    output: Vec<u8>,
    /// Next state for (state, input).
    next: Vec<u32>,
    /// The two (predecessor, input) pairs feeding each state, ascending
    /// by predecessor so that index 0 is the tie winner.
    incoming: Vec<[(u32, u8); 2]>,
}

/// Expands a spec into transition tables. Fails with `TooLarge` above L = 16.
pub fn build_trellis(spec: &ConvSpec) -> Result<Trellis, Error> {
    spec.validate()?;
    let l = spec.constraint_length;
    let num_states = 1usize << (l - 1);
    let mut output = vec![0u8; num_states * 2];
    let mut next = vec![0u32; num_states * 2];
    let mut feeders: Vec<Vec<(u32, u8)>> = vec![Vec::with_capacity(2); num_states];
    for state in 0..num_states {
        for u in 0..2u8 {
            let reg = ((u as u32) << (l - 1)) | state as u32;
            let mut word = 0u8;
            for (i, (g, &inv)) in spec.generators.iter().zip(&spec.invert_mask).enumerate() {
                let bit = ((reg & g).count_ones() as u8 & 1) ^ inv as u8;
                word |= bit << i;
            }
            let ns = ((u as u32) << (l - 2)) | (state as u32 >> 1);
            output[state * 2 + u as usize] = word;
            next[state * 2 + u as usize] = ns;
            feeders[ns as usize].push((state as u32, u));
        }
    }
    let incoming = feeders
        .into_iter()
        .map(|mut v| {
            v.sort_unstable();
            debug_assert_eq!(v.len(), 2);
            [v[0], v[1]]
        })
        .collect();
    Ok(Trellis { spec: spec.clone(), num_states, output, next, incoming })
}

impl Trellis {
    pub fn spec(&self) -> &ConvSpec {
        &self.spec
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    /// Output word of the (state, input) branch, branch i in bit i.
    pub fn output_word(&self, state: usize, input: u8) -> u8 {
        self.output[state * 2 + input as usize]
    }

    pub fn next_state(&self, state: usize, input: u8) -> usize {
        self.next[state * 2 + input as usize] as usize
    }
}

/// Hard decision decode: picks the path with the fewest bit disagreements.
/// Returns every decoded input bit including the tail when terminated.
pub fn viterbi_decode_hard(
    trellis: &Trellis,
    cfg: &ViterbiConfig,
    received: &[u8],
) -> Result<Vec<u8>, Error> {
    let n_out = trellis.spec.outputs_per_bit();
    let stages = checked_stages(received.len(), n_out, cfg, trellis)?;
    Ok(viterbi_core::<u32>(trellis, cfg, stages, |stage, costs| {
        let chunk = &received[stage * n_out..(stage + 1) * n_out];
        let mut word = 0usize;
        for (i, &b) in chunk.iter().enumerate() {
            word |= ((b & 1) as usize) << i;
        }
        for (w, c) in costs.iter_mut().enumerate() {
            *c = (w ^ word).count_ones();
        }
    }))
}

/// Soft decision decode on raw channel samples, minimizing the squared
/// Euclidean distance to the BPSK reference of each branch word.
pub fn viterbi_decode_soft(
    trellis: &Trellis,
    cfg: &ViterbiConfig,
    received: &[f64],
) -> Result<Vec<u8>, Error> {
    let n_out = trellis.spec.outputs_per_bit();
    let stages = checked_stages(received.len(), n_out, cfg, trellis)?;
    Ok(viterbi_core::<f64>(trellis, cfg, stages, |stage, costs| {
        let chunk = &received[stage * n_out..(stage + 1) * n_out];
        for (w, c) in costs.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (i, &r) in chunk.iter().enumerate() {
                let reference = if (w >> i) & 1 == 0 { 1.0 } else { -1.0 };
                let d = r - reference;
                acc += d * d;
            }
            *c = acc;
        }
    }))
}

fn checked_stages(
    len: usize,
    n_out: usize,
    cfg: &ViterbiConfig,
    trellis: &Trellis,
) -> Result<usize, Error> {
    if cfg.truncation_depth < trellis.spec.constraint_length {
        return Err(Error::Config(
            "truncation depth below the constraint length".into(),
        ));
    }
    if !len.is_multiple_of(n_out) {
        return Err(Error::BadLength { expected: len.next_multiple_of(n_out), got: len });
    }
    Ok(len / n_out)
}

/// Path cost accumulated by the Viterbi core. Smaller is better.
trait Metric: Copy + PartialOrd {
    const ZERO: Self;
    const WORST: Self;
    fn accum(self, branch: Self) -> Self;
}

impl Metric for u32 {
    const ZERO: Self = 0;
    const WORST: Self = u32::MAX;
    fn accum(self, branch: Self) -> Self {
        self.saturating_add(branch)
    }
}

impl Metric for f64 {
    const ZERO: Self = 0.0;
    const WORST: Self = f64::INFINITY;
    fn accum(self, branch: Self) -> Self {
        self + branch
    }
}

fn viterbi_core<M: Metric>(
    trellis: &Trellis,
    cfg: &ViterbiConfig,
    stages: usize,
    mut stage_costs: impl FnMut(usize, &mut [M]),
) -> Vec<u8> {
    let ns = trellis.num_states;
    let l = trellis.spec.constraint_length;
    let words_per_stage = ns.div_ceil(64);
    // one decision bit per state per stage: which incoming entry survived
    let mut decisions = vec![0u64; stages * words_per_stage];
    let mut metric = vec![M::WORST; ns];
    metric[0] = M::ZERO; // the encoder starts in the all-zero state
    let mut next_metric = vec![M::WORST; ns];
    let mut costs = vec![M::ZERO; 1 << trellis.spec.outputs_per_bit()];
    let mut out = Vec::with_capacity(stages);

    let pred = |decisions: &[u64], stage: usize, state: usize| -> usize {
        let bit = decisions[stage * words_per_stage + (state >> 6)] >> (state & 63) & 1;
        trellis.incoming[state][bit as usize].0 as usize
    };

    for stage in 0..stages {
        stage_costs(stage, &mut costs);
        for (s2, nm) in next_metric.iter_mut().enumerate() {
            let [(p0, u), (p1, _)] = trellis.incoming[s2];
            let m0 = metric[p0 as usize].accum(costs[trellis.output_word(p0 as usize, u) as usize]);
            let m1 = metric[p1 as usize].accum(costs[trellis.output_word(p1 as usize, u) as usize]);
            // only a strictly better metric displaces the lower predecessor
            if m1 < m0 {
                *nm = m1;
                decisions[stage * words_per_stage + (s2 >> 6)] |= 1u64 << (s2 & 63);
            } else {
                *nm = m0;
            }
        }
        std::mem::swap(&mut metric, &mut next_metric);
        if stage + 1 > cfg.truncation_depth {
            // window full: commit the oldest undecided bit from the current
            // best state
            let mut s = best_state(&metric);
            let commit = stage - cfg.truncation_depth;
            for back in (commit + 1..=stage).rev() {
                s = pred(&decisions, back, s);
            }
            out.push((s >> (l - 2)) as u8);
        }
    }

    let mut s = if cfg.terminate { 0 } else { best_state(&metric) };
    let mut tail = Vec::with_capacity(stages - out.len());
    for stage in (out.len()..stages).rev() {
        tail.push((s >> (l - 2)) as u8);
        s = pred(&decisions, stage, s);
    }
    tail.reverse();
    out.extend(tail);
    out
}

fn best_state<M: Metric>(metric: &[M]) -> usize {
    let mut best = 0;
    for (s, m) in metric.iter().enumerate().skip(1) {
        if *m < metric[best] {
            best = s;
        }
    }
    best
}

/// Minimum Hamming weight over all nonzero terminated codewords with message
/// length up to `max_message_len`; with the window comfortably past the
/// memory this is the free distance. Weight is a property of the underlying
/// linear code, so branch inversions are ignored.
pub fn min_codeword_weight(spec: &ConvSpec, max_message_len: usize) -> Result<usize, Error> {
    spec.validate()?;
    if max_message_len > 20 {
        return Err(Error::TooLarge("weight search beyond 2^20 messages"));
    }
    let plain = ConvSpec { invert_mask: vec![false; spec.generators.len()], ..spec.clone() };
    let mut best = usize::MAX;
    let mut bits = Vec::with_capacity(max_message_len);
    for len in 1..=max_message_len {
        for msg in 1u32..1 << len {
            bits.clear();
            bits.extend((0..len).map(|i| (msg >> i & 1) as u8));
            let weight = conv_encode(&plain, &bits, true)?
                .iter()
                .map(|&b| b as usize)
                .sum();
            best = best.min(weight);
        }
    }
    Ok(best)
}
