//! Block symbol interleaving and the concatenated codec.
//!
//! The chain is RS outer code, symbol block interleaver, MSB-first bit
//! serialization, terminated convolutional inner code; decode runs it
//! backwards. Interleaving works on whole RS symbols: the inner decoder
//! emits short error bursts, and spreading consecutive symbols over D
//! different codewords turns one burst into at most ceil(b/D) symbol errors
//! per codeword.

use crate::conv::{
    build_trellis, conv_encode, viterbi_decode_hard, viterbi_decode_soft, ConvSpec, Trellis,
    ViterbiConfig, CCSDS_TRUNCATION_BITS,
};
use crate::galois::GfElem;
use crate::rs::{DecodeReport, RsCode, RsSpec};
use crate::Error;

/// Rectangular block interleaver: D rows of row_len symbols, written row by
/// row and read column by column. D = 1 is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterleaverSpec {
    pub depth: usize,
    pub row_len: usize,
}

impl InterleaverSpec {
    pub fn block_len(&self) -> usize {
        self.depth * self.row_len
    }

    fn validate(&self) -> Result<(), Error> {
        if self.depth == 0 || self.row_len == 0 {
            return Err(Error::Config("interleaver dimensions must be positive".into()));
        }
        Ok(())
    }
}

/// out[c*D + r] = in[r*row_len + c]: row-major in, column-major out.
pub fn interleave<T: Clone>(data: &[T], spec: &InterleaverSpec) -> Result<Vec<T>, Error> {
    spec.validate()?;
    if data.len() != spec.block_len() {
        return Err(Error::BadLength { expected: spec.block_len(), got: data.len() });
    }
    let mut out = Vec::with_capacity(data.len());
    for c in 0..spec.row_len {
        for r in 0..spec.depth {
            out.push(data[r * spec.row_len + c].clone());
        }
    }
    Ok(out)
}

/// Exact inverse of `interleave`.
pub fn deinterleave<T: Clone>(data: &[T], spec: &InterleaverSpec) -> Result<Vec<T>, Error> {
    spec.validate()?;
    if data.len() != spec.block_len() {
        return Err(Error::BadLength { expected: spec.block_len(), got: data.len() });
    }
    let mut out = Vec::with_capacity(data.len());
    for r in 0..spec.depth {
        for c in 0..spec.row_len {
            out.push(data[c * spec.depth + r].clone());
        }
    }
    Ok(out)
}

/// Serializes symbols of m bits each to 0/1 values, most significant bit of
/// each symbol first.
pub fn symbols_to_bits(symbols: &[GfElem], m: u32) -> Vec<u8> {
    let mut out = Vec::with_capacity(symbols.len() * m as usize);
    for &sym in symbols {
        debug_assert_eq!(sym >> m, 0, "symbol wider than the field");
        for b in (0..m).rev() {
            out.push((sym >> b & 1) as u8);
        }
    }
    out
}

/// Inverse of `symbols_to_bits`; the bit count must divide into symbols.
pub fn bits_to_symbols(bits: &[u8], m: u32) -> Result<Vec<GfElem>, Error> {
    let m = m as usize;
    if !bits.len().is_multiple_of(m) {
        return Err(Error::BadLength { expected: bits.len().next_multiple_of(m), got: bits.len() });
    }
    Ok(bits
        .chunks_exact(m)
        .map(|chunk| chunk.iter().fold(0, |acc, &b| acc << 1 | (b & 1) as GfElem))
        .collect())
}

/// Packs 0/1 values into bytes, first bit in the top bit; the final byte is
/// zero padded.
pub fn pack_bits(bits: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; bits.len().div_ceil(8)];
    for (i, &b) in bits.iter().enumerate() {
        out[i / 8] |= (b & 1) << (7 - i % 8);
    }
    out
}

/// Recovers exactly `bit_len` bits packed by `pack_bits`.
pub fn unpack_bits(bytes: &[u8], bit_len: usize) -> Result<Vec<u8>, Error> {
    if bytes.len() != bit_len.div_ceil(8) {
        return Err(Error::BadLength { expected: bit_len.div_ceil(8), got: bytes.len() });
    }
    Ok((0..bit_len).map(|i| bytes[i / 8] >> (7 - i % 8) & 1).collect())
}

/// Parameters of the full concatenated system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcatSpec {
    pub outer: RsSpec,
    pub inner: ConvSpec,
    pub interleaver: InterleaverSpec,
    pub viterbi: ViterbiConfig,
}

impl ConcatSpec {
    /// The CCSDS stack: RS(255,223) outside, the (2,1,7) code inside, at the
    /// given interleaving depth.
    pub fn ccsds(depth: usize) -> Self {
        ConcatSpec {
            outer: RsSpec::ccsds(),
            inner: ConvSpec::ccsds(),
            interleaver: InterleaverSpec { depth, row_len: 255 },
            viterbi: ViterbiConfig {
                truncation_depth: CCSDS_TRUNCATION_BITS,
                terminate: true,
            },
        }
    }
}

/// What the channel delivered to the inner decoder.
#[derive(Debug, Clone, Copy)]
pub enum ChannelOutput<'a> {
    /// Sliced bits, decoded with the Hamming metric.
    Hard(&'a [u8]),
    /// Raw samples, decoded with the squared Euclidean metric.
    Soft(&'a [f64]),
}

/// Decode outcome of one interleaved block: the D recovered messages and
/// the RS report behind each. Rows that failed carry the received message
/// symbols unrepaired.
#[derive(Debug, Clone)]
pub struct ConcatReport {
    pub messages: Vec<Vec<GfElem>>,
    pub reports: Vec<DecodeReport>,
}

impl ConcatReport {
    pub fn all_ok(&self) -> bool {
        use crate::rs::DecodeStatus;
        self.reports.iter().all(|r| r.status != DecodeStatus::Failure)
    }
}

/// A validated concatenated codec with its outer code and inner trellis
/// built once.
#[derive(Debug, Clone)]
pub struct ConcatCodec {
    spec: ConcatSpec,
    rs: RsCode,
    trellis: Trellis,
}

impl ConcatCodec {
    pub fn new(spec: ConcatSpec) -> Result<Self, Error> {
        if spec.interleaver.row_len != spec.outer.n {
            return Err(Error::Config(format!(
                "interleaver rows of {} symbols cannot hold {}-symbol codewords",
                spec.interleaver.row_len, spec.outer.n
            )));
        }
        spec.interleaver.validate()?;
        if spec.viterbi.truncation_depth < spec.inner.constraint_length {
            return Err(Error::Config("truncation depth below the constraint length".into()));
        }
        let rs = RsCode::new(spec.outer)?;
        let trellis = build_trellis(&spec.inner)?;
        Ok(ConcatCodec { spec, rs, trellis })
    }

    pub fn spec(&self) -> &ConcatSpec {
        &self.spec
    }

    pub fn rs(&self) -> &RsCode {
        &self.rs
    }

    /// Information symbols consumed per block.
    pub fn message_symbols_len(&self) -> usize {
        self.spec.interleaver.depth * self.spec.outer.k
    }

    /// Channel bits produced per block: (D·n·m + tail) · n_inner.
    pub fn encoded_bits_len(&self) -> usize {
        let symbols = self.spec.interleaver.block_len();
        let tail = if self.spec.viterbi.terminate {
            self.spec.inner.constraint_length - 1
        } else {
            0
        };
        (symbols * self.spec.outer.field_spec.m as usize + tail)
            * self.spec.inner.outputs_per_bit()
    }

    /// RS-encodes exactly D messages and interleaves the codewords; this is
    /// the symbol block the inner code transports.
    pub fn outer_block(&self, messages: &[Vec<GfElem>]) -> Result<Vec<GfElem>, Error> {
        let d = self.spec.interleaver.depth;
        if messages.len() != d {
            return Err(Error::BadLength { expected: d, got: messages.len() });
        }
        let mut block = Vec::with_capacity(self.spec.interleaver.block_len());
        for msg in messages {
            block.extend(self.rs.encode(msg)?);
        }
        interleave(&block, &self.spec.interleaver)
    }

    /// Deinterleaves a transported symbol block and RS-decodes every row.
    pub fn decode_outer_block(&self, block: &[GfElem]) -> Result<ConcatReport, Error> {
        let rows = deinterleave(block, &self.spec.interleaver)?;
        let k = self.spec.outer.k;
        let mut messages = Vec::with_capacity(self.spec.interleaver.depth);
        let mut reports = Vec::with_capacity(self.spec.interleaver.depth);
        for row in rows.chunks_exact(self.spec.outer.n) {
            let report = self.rs.decode(row)?;
            messages.push(match &report.corrected {
                Some(cw) => self.rs.message_slice(cw).to_vec(),
                None => row[..k].to_vec(),
            });
            reports.push(report);
        }
        Ok(ConcatReport { messages, reports })
    }

    /// Full encode of D messages of k symbols into channel bits.
    pub fn encode(&self, messages: &[Vec<GfElem>]) -> Result<Vec<u8>, Error> {
        let block = self.outer_block(messages)?;
        let bits = symbols_to_bits(&block, self.spec.outer.field_spec.m);
        let encoded = conv_encode(&self.spec.inner, &bits, self.spec.viterbi.terminate)?;
        debug_assert_eq!(encoded.len(), self.encoded_bits_len());
        Ok(encoded)
    }

    /// Full decode of one block of channel output.
    pub fn decode(&self, channel: ChannelOutput<'_>) -> Result<ConcatReport, Error> {
        let expected = self.encoded_bits_len();
        let decoded = match channel {
            ChannelOutput::Hard(bits) => {
                if bits.len() != expected {
                    return Err(Error::BadLength { expected, got: bits.len() });
                }
                viterbi_decode_hard(&self.trellis, &self.spec.viterbi, bits)?
            }
            ChannelOutput::Soft(samples) => {
                if samples.len() != expected {
                    return Err(Error::BadLength { expected, got: samples.len() });
                }
                viterbi_decode_soft(&self.trellis, &self.spec.viterbi, samples)?
            }
        };
        // drop the flushed tail, keep the D*n*m payload bits
        let payload = self.spec.interleaver.block_len() * self.spec.outer.field_spec.m as usize;
        let symbols = bits_to_symbols(&decoded[..payload], self.spec.outer.field_spec.m)?;
        self.decode_outer_block(&symbols)
    }
}

/// Leading bytes of a framed stream.
pub const FRAME_MAGIC: [u8; 4] = *b"SFEC";
pub const FRAME_VERSION: u8 = 1;
const FRAME_HEADER_LEN: usize = 14;

/// A parsed frame header with the body it precedes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frame<'a> {
    pub depth: u8,
    /// True payload length in bytes before padding to whole blocks.
    pub payload_len: u64,
    pub body: &'a [u8],
}

/// Frame layout: magic "SFEC", version byte, interleaving depth byte,
/// payload length as a big-endian u64, then the body.
pub fn write_frame(depth: u8, payload_len: u64, body: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(FRAME_HEADER_LEN + body.len());
    out.extend_from_slice(&FRAME_MAGIC);
    out.push(FRAME_VERSION);
    out.push(depth);
    out.extend_from_slice(&payload_len.to_be_bytes());
    out.extend_from_slice(body);
    out
}

pub fn read_frame(data: &[u8]) -> Result<Frame<'_>, Error> {
    if data.len() < FRAME_HEADER_LEN {
        return Err(Error::BadLength { expected: FRAME_HEADER_LEN, got: data.len() });
    }
    if data[..4] != FRAME_MAGIC {
        return Err(Error::Config("not a framed stream (bad magic)".into()));
    }
    if data[4] != FRAME_VERSION {
        return Err(Error::Config(format!("unsupported frame version {}", data[4])));
    }
    if data[5] == 0 {
        return Err(Error::Config("frame declares zero interleaving depth".into()));
    }
    Ok(Frame {
        depth: data[5],
        payload_len: u64::from_be_bytes(data[6..14].try_into().unwrap()),
        body: &data[FRAME_HEADER_LEN..],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rs::DecodeStatus;

    #[test]
    fn interleave_reads_columns() {
        let spec = InterleaverSpec { depth: 2, row_len: 3 };
        let data = ["A1", "A2", "A3", "B1", "B2", "B3"];
        let out = interleave(&data, &spec).unwrap();
        assert_eq!(out, ["A1", "B1", "A2", "B2", "A3", "B3"]);
        assert_eq!(deinterleave(&out, &spec).unwrap(), data);
    }

    #[test]
    fn depth_one_is_identity() {
        let spec = InterleaverSpec { depth: 1, row_len: 5 };
        let data = [7u16, 3, 9, 0, 2];
        assert_eq!(interleave(&data, &spec).unwrap(), data);
        assert_eq!(deinterleave(&data, &spec).unwrap(), data);
    }

    #[test]
    fn wrong_block_sizes_are_rejected() {
        let spec = InterleaverSpec { depth: 2, row_len: 3 };
        assert_eq!(
            interleave(&[0u16; 5], &spec),
            Err(Error::BadLength { expected: 6, got: 5 })
        );
        assert_eq!(
            deinterleave(&[0u16; 7], &spec),
            Err(Error::BadLength { expected: 6, got: 7 })
        );
    }

    #[test]
    fn burst_spreading_bound_holds_exhaustively() {
        // a burst of b consecutive interleaved symbols deinterleaves to at
        // most ceil(b/D) hits per row, for every placement
        for depth in [1usize, 2, 3, 5] {
            let spec = InterleaverSpec { depth, row_len: 10 };
            let len = spec.block_len();
            for burst in 1..=len.min(12) {
                for start in 0..=len - burst {
                    let mut hit = vec![0u8; len];
                    for h in &mut hit[start..start + burst] {
                        *h = 1;
                    }
                    let rows = deinterleave(&hit, &spec).unwrap();
                    let bound = burst.div_ceil(depth);
                    for (r, row) in rows.chunks_exact(spec.row_len).enumerate() {
                        let count = row.iter().map(|&h| h as usize).sum::<usize>();
                        assert!(
                            count <= bound,
                            "depth {depth} burst {burst} at {start}: row {r} took {count} > {bound}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bit_serialization_is_msb_first() {
        assert_eq!(symbols_to_bits(&[0b1011], 4), vec![1, 0, 1, 1]);
        assert_eq!(symbols_to_bits(&[0x8f, 0x01], 8)[..8], [1, 0, 0, 0, 1, 1, 1, 1]);
        assert_eq!(bits_to_symbols(&[1, 0, 1, 1], 4).unwrap(), vec![0b1011]);
        assert!(matches!(
            bits_to_symbols(&[1, 0, 1], 4),
            Err(Error::BadLength { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn packing_roundtrips_with_zero_padding() {
        let bits = [1u8, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0];
        let packed = pack_bits(&bits);
        assert_eq!(packed, vec![0b1011_0010, 0b1100_0000]);
        assert_eq!(unpack_bits(&packed, bits.len()).unwrap(), bits);
        assert!(unpack_bits(&packed, 20).is_err());
    }

    #[test]
    fn ccsds_block_is_20412_bits() {
        let codec = ConcatCodec::new(ConcatSpec::ccsds(5)).unwrap();
        assert_eq!(codec.encoded_bits_len(), 20412);
        assert_eq!(codec.message_symbols_len(), 5 * 223);
    }

    fn lcg(state: &mut u64) -> u64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        *state >> 33
    }

    fn random_messages(codec: &ConcatCodec, state: &mut u64) -> Vec<Vec<GfElem>> {
        let k = codec.spec().outer.k;
        (0..codec.spec().interleaver.depth)
            .map(|_| (0..k).map(|_| (lcg(state) & 0xff) as GfElem).collect())
            .collect()
    }

    #[test]
    fn noiseless_roundtrip_all_depths() {
        let mut state = 0xabcd_ef01;
        for depth in [1usize, 2, 5] {
            let codec = ConcatCodec::new(ConcatSpec::ccsds(depth)).unwrap();
            let messages = random_messages(&codec, &mut state);
            let bits = codec.encode(&messages).unwrap();
            assert_eq!(bits.len(), codec.encoded_bits_len());

            let hard = codec.decode(ChannelOutput::Hard(&bits)).unwrap();
            assert!(hard.reports.iter().all(|r| r.status == DecodeStatus::NoError));
            assert_eq!(hard.messages, messages);

            let samples: Vec<f64> =
                bits.iter().map(|&b| if b == 0 { 1.0 } else { -1.0 }).collect();
            let soft = codec.decode(ChannelOutput::Soft(&samples)).unwrap();
            assert_eq!(soft.messages, messages, "soft path at depth {depth}");
        }
    }

    #[test]
    fn twenty_bit_burst_spreads_over_five_rows() {
        // a 20-bit burst spans at most 4 symbols; at depth 5 no codeword
        // sees more than one of them
        let mut state = 0x5417;
        let codec = ConcatCodec::new(ConcatSpec::ccsds(5)).unwrap();
        let messages = random_messages(&codec, &mut state);
        let block = codec.outer_block(&messages).unwrap();
        let mut bits = symbols_to_bits(&block, 8);
        for b in &mut bits[1005..1025] {
            *b ^= 1;
        }
        let damaged = bits_to_symbols(&bits, 8).unwrap();
        let report = codec.decode_outer_block(&damaged).unwrap();
        for (i, r) in report.reports.iter().enumerate() {
            assert_ne!(r.status, DecodeStatus::Failure);
            assert!(r.num_errors <= 1, "row {i} saw {} symbol errors", r.num_errors);
        }
        assert_eq!(report.messages, messages);
    }

    #[test]
    fn same_burst_without_interleaving_lands_in_one_word() {
        let mut state = 0x5418;
        let codec = ConcatCodec::new(ConcatSpec::ccsds(1)).unwrap();
        let messages = random_messages(&codec, &mut state);
        let block = codec.outer_block(&messages).unwrap();
        let mut bits = symbols_to_bits(&block, 8);
        // offset 5 within its byte, so the 20 bits straddle four symbols
        for b in &mut bits[1005..1025] {
            *b ^= 1;
        }
        let damaged = bits_to_symbols(&bits, 8).unwrap();
        let report = codec.decode_outer_block(&damaged).unwrap();
        assert_eq!(report.reports[0].status, DecodeStatus::Corrected);
        assert_eq!(report.reports[0].num_errors, 4);
        assert_eq!(report.messages, messages);
    }

    #[test]
    fn short_bursts_stay_within_two_symbols() {
        let mut state = 0x77;
        let codec = ConcatCodec::new(ConcatSpec::ccsds(1)).unwrap();
        let messages = random_messages(&codec, &mut state);
        let block = codec.outer_block(&messages).unwrap();
        let bits = symbols_to_bits(&block, 8);
        // byte-aligned 8-bit burst: exactly one symbol
        let mut aligned = bits.clone();
        for b in &mut aligned[96..104] {
            *b ^= 1;
        }
        let report = codec
            .decode_outer_block(&bits_to_symbols(&aligned, 8).unwrap())
            .unwrap();
        assert_eq!(report.reports[0].num_errors, 1);
        // the same burst shifted off alignment: two symbols
        let mut shifted = bits.clone();
        for b in &mut shifted[99..107] {
            *b ^= 1;
        }
        let report = codec
            .decode_outer_block(&bits_to_symbols(&shifted, 8).unwrap())
            .unwrap();
        assert_eq!(report.reports[0].num_errors, 2);
        assert_eq!(report.messages, messages);
    }

    #[test]
    fn frame_roundtrip_and_rejections() {
        let framed = write_frame(5, 1000, &[0xaa, 0xbb]);
        let frame = read_frame(&framed).unwrap();
        assert_eq!(frame.depth, 5);
        assert_eq!(frame.payload_len, 1000);
        assert_eq!(frame.body, &[0xaa, 0xbb]);

        assert!(matches!(read_frame(&framed[..10]), Err(Error::BadLength { .. })));
        let mut bad_magic = framed.clone();
        bad_magic[0] = b'X';
        assert!(matches!(read_frame(&bad_magic), Err(Error::Config(_))));
        let mut bad_version = framed.clone();
        bad_version[4] = 9;
        assert!(matches!(read_frame(&bad_version), Err(Error::Config(_))));
        let mut bad_depth = framed;
        bad_depth[5] = 0;
        assert!(matches!(read_frame(&bad_depth), Err(Error::Config(_))));
    }

    #[test]
    fn mismatched_specs_are_rejected() {
        let mut spec = ConcatSpec::ccsds(2);
        spec.interleaver.row_len = 100;
        assert!(ConcatCodec::new(spec).is_err());
        let mut spec = ConcatSpec::ccsds(2);
        spec.viterbi.truncation_depth = 3;
        assert!(ConcatCodec::new(spec).is_err());
        let codec = ConcatCodec::new(ConcatSpec::ccsds(2)).unwrap();
        assert!(codec.encode(&[vec![0; 223]]).is_err(), "one message, depth two");
        assert!(codec.decode(ChannelOutput::Hard(&[0; 100])).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn interleaving_roundtrips(
                depth in 1usize..8,
                row_len in 1usize..40,
                seed in any::<u64>(),
            ) {
                let spec = InterleaverSpec { depth, row_len };
                let mut state = seed;
                let data: Vec<u16> =
                    (0..spec.block_len()).map(|_| lcg(&mut state) as u16).collect();
                let forward = interleave(&data, &spec).unwrap();
                prop_assert_eq!(deinterleave(&forward, &spec).unwrap(), data.clone());
                // and the closed form itself
                for r in 0..depth {
                    for c in 0..row_len {
                        prop_assert_eq!(forward[c * depth + r], data[r * row_len + c]);
                    }
                }
            }

            #[test]
            fn bit_serialization_roundtrips(
                symbols in proptest::collection::vec(0u16..256, 1..64),
            ) {
                let bits = symbols_to_bits(&symbols, 8);
                prop_assert_eq!(bits_to_symbols(&bits, 8).unwrap(), symbols);
                let packed = pack_bits(&bits);
                prop_assert_eq!(unpack_bits(&packed, bits.len()).unwrap(), bits);
            }
        }
    }
}
