//! Forward error correction building blocks: GF(2^m) arithmetic, Reed-Solomon
//! and convolutional codes, a block-interleaved concatenated pipeline, and a
//! Monte Carlo BER simulator for BPSK on the AWGN channel.
//!
//! The layers share a few conventions. Reed-Solomon codewords are slices of
//! field symbols ordered highest polynomial power first, and an error
//! "position" is the power of x it multiplies. Convolutional bit streams are
//! plain 0/1 bytes, one bit per element. All randomness is explicitly seeded.

pub mod conv;
pub mod galois;
pub mod gfpoly;
pub mod pipeline;
pub mod rs;
pub mod simulator;

use std::fmt;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The polynomial handed to `Field::new` does not generate the whole
    /// multiplicative group (or is malformed: wrong degree, no constant term).
    NotPrimitive { m: u32, poly: u32 },
    /// Division or inversion with a zero denominator.
    DivideByZero,
    /// The zero element has no discrete logarithm.
    LogOfZero,
    /// A slice had the wrong number of symbols, bits, or samples.
    BadLength { expected: usize, got: usize },
    /// Input that leaves an algorithm with no meaningful work, such as an
    /// all-zero syndrome vector handed to a key equation solver.
    DegenerateInput(&'static str),
    /// The direct magnitude system has no unique solution.
    SingularSystem,
    /// A parameter exceeds a hard implementation bound.
    TooLarge(&'static str),
    /// Inconsistent or incomplete configuration.
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrimitive { m, poly } => {
                write!(f, "0x{poly:x} is not a primitive polynomial of degree {m}")
            }
            Error::DivideByZero => write!(f, "division by zero"),
            Error::LogOfZero => write!(f, "zero has no discrete logarithm"),
            Error::BadLength { expected, got } => {
                write!(f, "bad length: expected {expected}, got {got}")
            }
            Error::DegenerateInput(what) => write!(f, "degenerate input: {what}"),
            Error::SingularSystem => write!(f, "singular linear system"),
            Error::TooLarge(what) => write!(f, "parameter too large: {what}"),
            Error::Config(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}
