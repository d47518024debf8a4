//! End-to-end runs of the installed binary: golden outputs for the small
//! field and code, roundtrips for every codec, and the error paths that
//! should exit nonzero.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn sfec(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sfec"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn sfec");
    child.stdin.as_mut().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().expect("wait for sfec")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

#[test]
fn gf_table_lists_the_sixteen_elements_in_power_order() {
    let out = sfec(&["gf", "table", "--m", "4", "--poly", "0x13"], b"");
    assert!(out.status.success());
    let expected = "decimal\tbinary\tpower\n\
                    0\t0000\t0\n\
                    1\t0001\ta^0\n\
                    2\t0010\ta^1\n\
                    4\t0100\ta^2\n\
                    8\t1000\ta^3\n\
                    3\t0011\ta^4\n\
                    6\t0110\ta^5\n\
                    12\t1100\ta^6\n\
                    11\t1011\ta^7\n\
                    5\t0101\ta^8\n\
                    10\t1010\ta^9\n\
                    7\t0111\ta^10\n\
                    14\t1110\ta^11\n\
                    15\t1111\ta^12\n\
                    13\t1101\ta^13\n\
                    9\t1001\ta^14\n";
    assert_eq!(stdout_str(&out), expected);
}

#[test]
fn gf_table_rejects_a_reducible_polynomial() {
    let out = sfec(&["gf", "table", "--m", "4", "--poly", "0x1f"], b"");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).starts_with("sfec:"));
}

#[test]
fn rs_encode_matches_the_worked_example() {
    let out = sfec(&["rs", "encode", "--code", "15.9"], b"0000000e0");
    assert!(out.status.success());
    assert_eq!(stdout_str(&out), "0000000e057395f\n");
}

#[test]
fn rs_decode_corrects_and_reports_the_positions() {
    let out = sfec(&["rs", "decode", "--code", "15.9"], b"0000001e057385f");
    assert!(out.status.success());
    assert_eq!(stdout_str(&out), "0000000e0\n");
    let err = stderr_str(&out);
    assert!(err.contains("corrected 2 errors"), "stderr: {err}");
    assert!(err.contains("positions 2, 8"), "stderr: {err}");
}

#[test]
fn rs_decode_flags_an_uncorrectable_block() {
    // four scattered errors exceed t = 3
    let out = sfec(&["rs", "decode", "--code", "15.9"], b"1110001e057395f");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("uncorrectable"));
    // best effort output still yields one message block
    assert_eq!(stdout_str(&out).trim().len(), 9);
}

#[test]
fn rs_trace_walks_the_whole_decode() {
    let out = sfec(&["rs", "trace", "--code", "15.9"], b"0000001e057385f");
    assert!(out.status.success());
    let text = stdout_str(&out);
    let expected = "\
code: RS(15,9) over GF(2^4), t = 3
received: 0000001e057385f
syndromes:
  S1 = 1
  S2 = 1
  S3 = a^5
  S4 = 1
  S5 = 0
  S6 = a^10
S(x) = a^10x^5 + x^3 + a^5x^2 + x + 1
euclid:
  step 1: q = a^5x
          r = a^5x^4 + a^10x^3 + a^5x^2 + a^5x
          v = a^5x
  step 2: q = a^5x + a^10
          r = 1
          v = a^10x^2 + x + 1
lambda(x) = a^10x^2 + x + 1
omega(x) = 1
chien search:
  p = 0: a^10
  p = 1: a^13
  p = 2: 0  <- error
  p = 3: a^13
  p = 4: a^7
  p = 5: a^10
  p = 6: a^5
  p = 7: a^9
  p = 8: 0  <- error
  p = 9: a^5
  p = 10: 1
  p = 11: a^9
  p = 12: a^7
  p = 13: a^6
  p = 14: a^6
positions: 2, 8
magnitudes: 1, 1
corrected: 0000000e057395f
message: 0000000e0
status: corrected 2 errors
";
    assert_eq!(text, expected);
}

#[test]
fn rs_trace_on_a_clean_word_stops_at_the_syndromes() {
    let out = sfec(&["rs", "trace", "--code", "15.9"], b"0000000e057395f");
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.ends_with("status: no errors\n"), "got: {text}");
    assert!(!text.contains("euclid"));
}

#[test]
fn rs_ccsds_binary_roundtrip() {
    let message: Vec<u8> = (0..223).map(|i| (i * 7 + 3) as u8).collect();
    let enc = sfec(&["rs", "encode", "--code", "ccsds", "--binary"], &message);
    assert!(enc.status.success());
    assert_eq!(enc.stdout.len(), 255);
    assert_eq!(&enc.stdout[..223], &message[..]);

    let mut garbled = enc.stdout.clone();
    for p in [0usize, 50, 100, 254] {
        garbled[p] ^= 0x5a;
    }
    let dec = sfec(&["rs", "decode", "--code", "ccsds", "--binary"], &garbled);
    assert!(dec.status.success());
    assert_eq!(dec.stdout, message);
    assert!(stderr_str(&dec).contains("corrected 4 errors"));
}

#[test]
fn conv_hex_roundtrip_both_codes() {
    for code in ["ex214", "ccsds"] {
        let enc = sfec(&["conv", "encode", "--code", code], b"48656c6c6f21");
        assert!(enc.status.success());
        let dec = sfec(&["conv", "decode", "--code", code], &enc.stdout);
        assert!(dec.status.success());
        assert_eq!(stdout_str(&dec), "48656c6c6f21\n", "code {code}");
    }
}

#[test]
fn conv_binary_roundtrip_with_errors() {
    let payload: Vec<u8> = (0..64).map(|i| (i * 37 + 11) as u8).collect();
    let enc = sfec(&["conv", "encode", "--code", "ccsds", "--binary"], &payload);
    assert!(enc.status.success());
    let mut garbled = enc.stdout.clone();
    // isolated channel bit flips, far enough apart for a free-distance-10 code
    for bit in [9usize, 300, 601, 902] {
        garbled[bit / 8] ^= 0x80 >> (bit % 8);
    }
    let dec = sfec(&["conv", "decode", "--code", "ccsds", "--binary"], &garbled);
    assert!(dec.status.success());
    assert_eq!(dec.stdout, payload);
}

#[test]
fn conv_soft_decode_reads_sample_text() {
    // encode one byte, map bits to noiseless bipolar samples by hand
    let enc = sfec(&["conv", "encode", "--code", "ex214"], b"c5");
    let hex = stdout_str(&enc);
    let mut samples = String::new();
    let mut bits_left = (8 + 3) * 2;
    for c in hex.trim().chars() {
        let nibble = c.to_digit(16).unwrap();
        for b in (0..4).rev() {
            if bits_left == 0 {
                break;
            }
            bits_left -= 1;
            samples.push_str(if nibble >> b & 1 == 1 { "-0.9 " } else { "0.8 " });
        }
    }
    let dec = sfec(&["conv", "decode", "--code", "ex214", "--soft"], samples.as_bytes());
    assert!(dec.status.success(), "stderr: {}", stderr_str(&dec));
    assert_eq!(stdout_str(&dec), "c5\n");
}

#[test]
fn conv_decode_rejects_a_stream_with_no_valid_payload_size() {
    // 3 bytes = 24 channel bits; (24 - 12)/2 = 6 info bits, not a whole byte
    let out = sfec(&["conv", "decode", "--code", "ccsds", "--binary"], &[0u8; 3]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("not produced by this encoder"));
}

#[test]
fn conv_soft_refuses_binary_input() {
    let out = sfec(&["conv", "decode", "--code", "ex214", "--soft", "--binary"], b"00");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn concat_framed_roundtrip_with_padding() {
    // 300 bytes is not a multiple of the 446-byte block payload at depth 2
    let payload: Vec<u8> = (0..300).map(|i| (i % 251) as u8).collect();
    let enc = sfec(&["concat", "encode", "--depth", "2", "--binary"], &payload);
    assert!(enc.status.success());
    assert_eq!(&enc.stdout[..4], b"SFEC");
    let dec = sfec(&["concat", "decode", "--binary"], &enc.stdout);
    assert!(dec.status.success());
    assert_eq!(dec.stdout, payload);
}

#[test]
fn concat_decode_rejects_a_foreign_file() {
    let out = sfec(&["concat", "decode", "--binary"], b"not a frame at all");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sim_sweep_is_reproducible() {
    let args = [
        "sim", "sweep", "--scheme", "uncoded", "--ebn0", "4", "--seed", "3",
        "--min-bits", "65536", "--min-errors", "10", "--max-bits", "131072",
    ];
    let a = sfec(&args, b"");
    let b = sfec(&args, b"");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout_str(&a);
    assert!(text.starts_with("# seed=3 config="), "got: {text}");
    assert!(text.contains("scheme,ebn0_db,info_bits,bit_errors,frame_errors,ber"));
    assert!(text.contains("\nuncoded,4,"));
}

#[test]
fn malformed_hex_exits_with_usage_error() {
    let out = sfec(&["rs", "encode", "--code", "15.9"], b"00000zz00");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("invalid hex digit"));
}

#[test]
fn wrong_block_length_exits_with_usage_error() {
    let out = sfec(&["rs", "encode", "--code", "15.9"], b"1234");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("multiple of 9"));
}
