//! Reed-Solomon codes over GF(2^m).
//!
//! The encoder is systematic: a codeword is x^2t * M(x) + parity where the
//! parity is the remainder of x^2t * M(x) by the generator, so the message
//! occupies the top k coefficients unchanged. Slices are ordered highest
//! power first and an error "position" p is the power of x it multiplies,
//! i.e. slice index n-1-p.
//!
//! Decoding follows the classic pipeline: syndromes, key equation solve for
//! the error locator Lambda and evaluator Omega, Chien search over all
//! positions, then error magnitudes by Forney's formula (or, as a cross
//! check, by solving the first T syndrome equations directly). Two key
//! equation solvers are provided: a partial extended Euclidean algorithm,
//! the default, and Berlekamp-Massey. A correction is only ever reported
//! after the repaired word has been re-checked to have all-zero syndromes.

use crate::galois::{Field, FieldSpec, GfElem};
use crate::gfpoly::GfPoly;
use crate::Error;

/// Parameters of an RS(n, k) code with symbols in GF(2^m).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RsSpec {
    pub field_spec: FieldSpec,
    /// Block length, must equal 2^m - 1.
    pub n: usize,
    /// Message length; n - k = 2t.
    pub k: usize,
    /// Correctable symbol errors per block.
    pub t: usize,
    /// Exponent of the first generator root: the generator vanishes at
    /// a_g^fr through a_g^(fr + 2t - 1).
    pub fr: u32,
    /// The root base a_g is alpha^g_exp; g_exp must be coprime with n.
    pub g_exp: u32,
}

impl RsSpec {
    /// RS(15,9) over GF(16), t = 3, roots alpha^1..alpha^6. The small code
    /// used by every worked example.
    pub fn example_15_9() -> Self {
        RsSpec {
            field_spec: crate::galois::gf16_spec(),
            n: 15,
            k: 9,
            t: 3,
            fr: 1,
            g_exp: 1,
        }
    }

    /// CCSDS RS(255,223): t = 16, generator roots (a^11)^112..(a^11)^143
    /// in the field built from x^8 + x^7 + x^2 + x + 1.
    pub fn ccsds() -> Self {
        RsSpec {
            field_spec: crate::galois::gf256_ccsds_spec(),
            n: 255,
            k: 223,
            t: 16,
            fr: 112,
            g_exp: 11,
        }
    }
}

/// Which key equation solver `decode_with` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeySolver {
    /// Partial extended Euclidean algorithm on (x^2t, S(x)), stopping at the
    /// first remainder of degree below t. The default.
    Euclidean,
    /// Berlekamp-Massey LFSR synthesis; Omega is recovered as
    /// S(x) * Lambda(x) mod x^2t.
    BerlekampMassey,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStatus {
    /// All syndromes were zero; the word was accepted as received.
    NoError,
    /// Errors were located, repaired, and the repaired word re-checked clean.
    Corrected,
    /// The error pattern is beyond the code; the word was left alone.
    Failure,
}

/// One located error: the position p (power of x) and its locator a_g^p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrorLocation {
    pub position: usize,
    pub locator: GfElem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    pub status: DecodeStatus,
    /// The repaired codeword, highest power first. `None` on `Failure`.
    pub corrected: Option<Vec<GfElem>>,
    pub num_errors: usize,
    /// Error positions in ascending order.
    pub positions: Vec<usize>,
    /// Error magnitudes, parallel to `positions`.
    pub magnitudes: Vec<GfElem>,
}

impl DecodeReport {
    fn failure() -> Self {
        DecodeReport {
            status: DecodeStatus::Failure,
            corrected: None,
            num_errors: 0,
            positions: Vec::new(),
            magnitudes: Vec::new(),
        }
    }
}

/// One division step of the Euclidean key equation solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidStep {
    pub quotient: GfPoly,
    pub remainder: GfPoly,
    pub lambda: GfPoly,
}

/// Everything the decoder computed on the way, for inspection and tracing.
#[derive(Debug, Clone)]
pub struct DecodeTrace {
    pub syndromes: Vec<GfElem>,
    pub syndrome_poly: GfPoly,
    pub euclid_steps: Vec<EuclidStep>,
    pub lambda: GfPoly,
    pub omega: GfPoly,
    /// Lambda evaluated at a_g^-p for every position p in 0..n.
    pub chien: Vec<GfElem>,
    pub locations: Vec<ErrorLocation>,
    pub report: DecodeReport,
}

/// A realized RS code: validated spec, built field, built generator.
#[derive(Debug, Clone)]
pub struct RsCode {
    spec: RsSpec,
    field: Field,
    generator: GfPoly,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl RsCode {
    pub fn new(spec: RsSpec) -> Result<Self, Error> {
        let field = Field::new(spec.field_spec)?;
        if spec.n != field.n() {
            return Err(Error::Config(format!(
                "block length {} does not match the field order {}",
                spec.n,
                field.n()
            )));
        }
        if spec.t == 0 || spec.k == 0 || spec.k >= spec.n || spec.n - spec.k != 2 * spec.t {
            return Err(Error::Config(format!(
                "inconsistent (n, k, t) = ({}, {}, {})",
                spec.n, spec.k, spec.t
            )));
        }
        if gcd(spec.g_exp as usize, spec.n) != 1 {
            return Err(Error::Config(format!(
                "root base exponent {} shares a factor with {}",
                spec.g_exp, spec.n
            )));
        }
        let mut generator = GfPoly::one();
        for i in 0..2 * spec.t {
            let root = field.alpha_pow(spec.g_exp as i64 * (spec.fr as i64 + i as i64));
            generator = generator.mul(&GfPoly::from_coeffs(vec![root, 1]), &field);
        }
        debug_assert_eq!(generator.degree(), Some(2 * spec.t));
        Ok(RsCode { spec, field, generator })
    }

    pub fn spec(&self) -> &RsSpec {
        &self.spec
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generator(&self) -> &GfPoly {
        &self.generator
    }

    /// The root base a_g = alpha^g_exp.
    pub fn root_base(&self) -> GfElem {
        self.field.alpha_pow(self.spec.g_exp as i64)
    }

    /// The message sits in the top k coefficients of a systematic codeword.
    pub fn message_slice<'a>(&self, codeword: &'a [GfElem]) -> &'a [GfElem] {
        &codeword[..self.spec.k]
    }

    /// Systematic encode of exactly k symbols (highest power first) into a
    /// codeword of n symbols.
    pub fn encode(&self, message: &[GfElem]) -> Result<Vec<GfElem>, Error> {
        let RsSpec { n, k, t, .. } = self.spec;
        if message.len() != k {
            return Err(Error::BadLength { expected: k, got: message.len() });
        }
        // x^2t * M(x), ascending
        let mut coeffs = vec![0; n];
        for (j, &sym) in message.iter().enumerate() {
            coeffs[n - 1 - j] = sym;
        }
        let shifted = GfPoly::from_coeffs(coeffs);
        let (_, parity) = shifted.divmod(&self.generator, &self.field)?;
        let code_poly = shifted.add(&parity);
        debug_assert!(2 * t >= 1);
        Ok((0..n).map(|j| code_poly.coeff(n - 1 - j)).collect())
    }

    /// S_j = R(a_g^(fr + j)) for j in 0..2t. All zero iff R is a codeword.
    pub fn syndromes(&self, received: &[GfElem]) -> Result<Vec<GfElem>, Error> {
        let RsSpec { n, t, fr, g_exp, .. } = self.spec;
        if received.len() != n {
            return Err(Error::BadLength { expected: n, got: received.len() });
        }
        let f = &self.field;
        Ok((0..2 * t)
            .map(|j| {
                let root = f.alpha_pow(g_exp as i64 * (fr as i64 + j as i64));
                // received is highest power first, which is Horner order
                received.iter().fold(0, |acc, &c| f.mul(acc, root) ^ c)
            })
            .collect())
    }

    /// Euclidean key equation solver. Runs the extended GCD of x^2t and the
    /// syndrome polynomial until the remainder drops below degree t; that
    /// remainder is Omega and the cofactor of S is Lambda, both normalized
    /// so that Lambda(0) = 1.
    pub fn solve_key_euclid(
        &self,
        syndromes: &[GfElem],
    ) -> Result<(GfPoly, GfPoly), Error> {
        let (lambda, omega, _) = self.euclid_with_steps(syndromes, false)?;
        Ok((lambda, omega))
    }

    fn euclid_with_steps(
        &self,
        syndromes: &[GfElem],
        record: bool,
    ) -> Result<(GfPoly, GfPoly, Vec<EuclidStep>), Error> {
        let t = self.spec.t;
        let f = &self.field;
        let s_poly = GfPoly::from_coeffs(syndromes.to_vec());
        if s_poly.is_zero() {
            return Err(Error::DegenerateInput("all-zero syndromes"));
        }
        let mut r_prev = GfPoly::monomial(1, 2 * t);
        let mut r_cur = s_poly;
        let mut v_prev = GfPoly::zero();
        let mut v_cur = GfPoly::one();
        let mut steps = Vec::new();
        while r_cur.degree().is_some_and(|d| d >= t) {
            let (q, r_next) = r_prev.divmod(&r_cur, f)?;
            let v_next = v_prev.add(&q.mul(&v_cur, f));
            r_prev = r_cur;
            r_cur = r_next;
            v_prev = v_cur;
            v_cur = v_next;
            if record {
                steps.push(EuclidStep {
                    quotient: q,
                    remainder: r_cur.clone(),
                    lambda: v_cur.clone(),
                });
            }
        }
        let c = v_cur.coeff(0);
        if c == 0 {
            return Err(Error::DegenerateInput("locator with zero constant term"));
        }
        let ci = f.inv(c)?;
        Ok((v_cur.scale(ci, f), r_cur.scale(ci, f), steps))
    }

    /// Berlekamp-Massey key equation solver: iterative LFSR synthesis from
    /// the discrepancy d_i = S_i + sum_j Lambda_j S_(i-j), growing the
    /// register whenever the discrepancy cannot be absorbed.
    pub fn solve_key_bm(&self, syndromes: &[GfElem]) -> Result<(GfPoly, GfPoly), Error> {
        let t = self.spec.t;
        let f = &self.field;
        if syndromes.iter().all(|&s| s == 0) {
            return Err(Error::DegenerateInput("all-zero syndromes"));
        }
        let mut cur = GfPoly::one();
        let mut prev = GfPoly::one();
        let mut len: usize = 0;
        let mut gap: usize = 1;
        let mut prev_disc: GfElem = 1;
        for i in 0..2 * t {
            let mut d = syndromes[i];
            for j in 1..=len {
                d ^= f.mul(cur.coeff(j), syndromes[i - j]);
            }
            if d == 0 {
                gap += 1;
            } else {
                let adjust = prev.scale(f.div(d, prev_disc)?, f).shift(gap);
                if 2 * len <= i {
                    let kept = cur.clone();
                    cur = cur.add(&adjust);
                    len = i + 1 - len;
                    prev = kept;
                    prev_disc = d;
                    gap = 1;
                } else {
                    cur = cur.add(&adjust);
                    gap += 1;
                }
            }
        }
        let s_poly = GfPoly::from_coeffs(syndromes.to_vec());
        let omega = s_poly.mul(&cur, f).truncated(2 * t);
        Ok((cur, omega))
    }

    /// Evaluates Lambda at a_g^-p for every position p in 0..n and reports
    /// the positions where it vanishes, ascending.
    pub fn chien_search(&self, lambda: &GfPoly) -> Vec<ErrorLocation> {
        self.chien_evaluations(lambda)
            .into_iter()
            .enumerate()
            .filter(|&(_, v)| v == 0)
            .map(|(p, _)| ErrorLocation {
                position: p,
                locator: self.field.alpha_pow(self.spec.g_exp as i64 * p as i64),
            })
            .collect()
    }

    /// The raw Chien evaluations Lambda(a_g^-p), p in 0..n.
    pub fn chien_evaluations(&self, lambda: &GfPoly) -> Vec<GfElem> {
        let RsSpec { n, g_exp, .. } = self.spec;
        let f = &self.field;
        (0..n)
            .map(|p| lambda.eval(f.alpha_pow(-(g_exp as i64) * p as i64), f))
            .collect()
    }

    /// Error magnitudes by Forney's formula,
    /// y = z^(1-fr) * Omega(z^-1) / Lambda'(z^-1) at each locator z.
    /// A vanishing derivative makes the pattern unresolvable.
    pub fn forney_magnitudes(
        &self,
        lambda: &GfPoly,
        omega: &GfPoly,
        locations: &[ErrorLocation],
    ) -> Result<Vec<GfElem>, Error> {
        let f = &self.field;
        let deriv = lambda.derivative();
        locations
            .iter()
            .map(|loc| {
                let zi = f.inv(loc.locator)?;
                let ratio = f.div(omega.eval(zi, f), deriv.eval(zi, f))?;
                Ok(f.mul(f.pow(loc.locator, 1 - self.spec.fr as i64)?, ratio))
            })
            .collect()
    }

    /// Error magnitudes by direct solution of the first T syndrome equations
    /// sum_i y_i z_i^(fr + j) = S_j via Gaussian elimination.
    pub fn direct_magnitudes(
        &self,
        syndromes: &[GfElem],
        locations: &[ErrorLocation],
    ) -> Result<Vec<GfElem>, Error> {
        let f = &self.field;
        let count = locations.len();
        if count == 0 {
            return Ok(Vec::new());
        }
        if count > syndromes.len() {
            return Err(Error::BadLength { expected: count, got: syndromes.len() });
        }
        // augmented matrix, one row per syndrome equation
        let mut rows: Vec<Vec<GfElem>> = (0..count)
            .map(|j| {
                let mut row: Vec<GfElem> = locations
                    .iter()
                    .map(|loc| f.pow(loc.locator, self.spec.fr as i64 + j as i64).unwrap())
                    .collect();
                row.push(syndromes[j]);
                row
            })
            .collect();
        for col in 0..count {
            let pivot = (col..count)
                .find(|&r| rows[r][col] != 0)
                .ok_or(Error::SingularSystem)?;
            rows.swap(col, pivot);
            let inv = f.inv(rows[col][col])?;
            let pivot_row: Vec<GfElem> = rows[col][col..=count].to_vec();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && row[col] != 0 {
                    let factor = f.mul(row[col], inv);
                    for (dst, &pv) in row[col..=count].iter_mut().zip(&pivot_row) {
                        *dst ^= f.mul(factor, pv);
                    }
                }
            }
        }
        (0..count).map(|i| f.div(rows[i][count], rows[i][i])).collect()
    }

    /// Full decode with the default (Euclidean) solver.
    pub fn decode(&self, received: &[GfElem]) -> Result<DecodeReport, Error> {
        self.decode_with(received, KeySolver::Euclidean)
    }

    /// Full decode. `Err` is reserved for structural misuse (wrong length);
    /// uncorrectable words come back as a `Failure` report. `Corrected` is
    /// only returned when the repaired word re-checks to all-zero syndromes.
    pub fn decode_with(
        &self,
        received: &[GfElem],
        solver: KeySolver,
    ) -> Result<DecodeReport, Error> {
        let syndromes = self.syndromes(received)?;
        if syndromes.iter().all(|&s| s == 0) {
            return Ok(DecodeReport {
                status: DecodeStatus::NoError,
                corrected: Some(received.to_vec()),
                num_errors: 0,
                positions: Vec::new(),
                magnitudes: Vec::new(),
            });
        }
        let solved = match solver {
            KeySolver::Euclidean => self.solve_key_euclid(&syndromes),
            KeySolver::BerlekampMassey => self.solve_key_bm(&syndromes),
        };
        let (lambda, omega) = match solved {
            Ok(pair) => pair,
            Err(_) => return Ok(DecodeReport::failure()),
        };
        Ok(self.finish_decode(received, &lambda, &omega, None))
    }

    /// Decode while recording every intermediate artifact. Always uses the
    /// Euclidean solver, whose division steps are the interesting part.
    pub fn decode_trace(&self, received: &[GfElem]) -> Result<DecodeTrace, Error> {
        let syndromes = self.syndromes(received)?;
        let syndrome_poly = GfPoly::from_coeffs(syndromes.clone());
        if syndromes.iter().all(|&s| s == 0) {
            return Ok(DecodeTrace {
                syndromes,
                syndrome_poly,
                euclid_steps: Vec::new(),
                lambda: GfPoly::zero(),
                omega: GfPoly::zero(),
                chien: Vec::new(),
                locations: Vec::new(),
                report: DecodeReport {
                    status: DecodeStatus::NoError,
                    corrected: Some(received.to_vec()),
                    num_errors: 0,
                    positions: Vec::new(),
                    magnitudes: Vec::new(),
                },
            });
        }
        let (lambda, omega, euclid_steps) = match self.euclid_with_steps(&syndromes, true) {
            Ok(triple) => triple,
            Err(_) => {
                return Ok(DecodeTrace {
                    syndromes,
                    syndrome_poly,
                    euclid_steps: Vec::new(),
                    lambda: GfPoly::zero(),
                    omega: GfPoly::zero(),
                    chien: Vec::new(),
                    locations: Vec::new(),
                    report: DecodeReport::failure(),
                })
            }
        };
        let chien = self.chien_evaluations(&lambda);
        let locations = self.chien_search(&lambda);
        let report = self.finish_decode(received, &lambda, &omega, Some(&locations));
        Ok(DecodeTrace {
            syndromes,
            syndrome_poly,
            euclid_steps,
            lambda,
            omega,
            chien,
            locations,
            report,
        })
    }

    /// Shared back half of decoding: locate, weigh, repair, re-check.
    fn finish_decode(
        &self,
        received: &[GfElem],
        lambda: &GfPoly,
        omega: &GfPoly,
        precomputed: Option<&[ErrorLocation]>,
    ) -> DecodeReport {
        let RsSpec { n, t, .. } = self.spec;
        let deg = match lambda.degree() {
            Some(d) if (1..=t).contains(&d) => d,
            // constant Lambda despite nonzero syndromes, or more roots
            // claimed than the code can correct
            _ => return DecodeReport::failure(),
        };
        let locations: Vec<ErrorLocation> = match precomputed {
            Some(locs) => locs.to_vec(),
            None => self.chien_search(lambda),
        };
        if locations.len() != deg {
            return DecodeReport::failure();
        }
        let magnitudes = match self.forney_magnitudes(lambda, omega, &locations) {
            Ok(m) => m,
            Err(_) => return DecodeReport::failure(),
        };
        let mut corrected = received.to_vec();
        for (loc, &y) in locations.iter().zip(&magnitudes) {
            corrected[n - 1 - loc.position] ^= y;
        }
        // never report a correction whose syndromes are not clean
        match self.syndromes(&corrected) {
            Ok(again) if again.iter().all(|&s| s == 0) => DecodeReport {
                status: DecodeStatus::Corrected,
                corrected: Some(corrected),
                num_errors: locations.len(),
                positions: locations.iter().map(|l| l.position).collect(),
                magnitudes,
            },
            _ => DecodeReport::failure(),
        }
    }
}
