//! GF(2^m) arithmetic on exp/log tables.
//!
//! An element is an integer below 2^m whose bits are the coefficients of its
//! polynomial representation, bit 0 being the constant term. Addition is
//! carryless, i.e. XOR. Multiplication and division go through the discrete
//! logarithm: the table of powers of the primitive element alpha = x is built
//! once by `Field::new` and every operation after that is a lookup.

use crate::Error;

/// Field element value. Always below 2^m for the field it belongs to.
pub type GfElem = u16;

/// Parameters defining a binary extension field GF(2^m).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    /// Extension degree, 2..=16.
    pub m: u32,
    /// Primitive polynomial as a bit mask including the x^m term,
    /// e.g. 0b1_0011 for x^4 + x + 1.
    pub prim_poly: u32,
}

/// GF(2^m) with precomputed exp/log tables. The exp table holds two periods
/// so that products of logs can be looked up without a modulo reduction.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    n: usize,
    exp: Vec<GfElem>,
    log: Vec<u16>,
}

impl Field {
    /// Builds the tables by enumerating powers of alpha = x, reducing by the
    /// primitive polynomial on overflow. Fails with `NotPrimitive` when the
    /// enumeration repeats an element before covering all 2^m - 1 of them.
    pub fn new(spec: FieldSpec) -> Result<Self, Error> {
        let FieldSpec { m, prim_poly } = spec;
        if !(2..=16).contains(&m) {
            return Err(Error::Config(format!("field degree m = {m} outside 2..=16")));
        }
        let high = 1u32 << m;
        if prim_poly & high == 0 || prim_poly & 1 == 0 || prim_poly >= high << 1 {
            return Err(Error::NotPrimitive { m, poly: prim_poly });
        }
        let n = (high - 1) as usize;
        let mut exp = vec![0 as GfElem; 2 * n];
        let mut log = vec![0u16; n + 1];
        let mut seen = vec![false; n + 1];
        let mut e: u32 = 1;
        for i in 0..n {
            if seen[e as usize] {
                return Err(Error::NotPrimitive { m, poly: prim_poly });
            }
            seen[e as usize] = true;
            exp[i] = e as GfElem;
            exp[i + n] = e as GfElem;
            log[e as usize] = i as u16;
            e <<= 1;
            if e & high != 0 {
                e ^= prim_poly;
            }
        }
        if e != 1 {
            return Err(Error::NotPrimitive { m, poly: prim_poly });
        }
        Ok(Field { spec, n, exp, log })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    /// Order of the multiplicative group, 2^m - 1.
    pub fn n(&self) -> usize {
        self.n
    }

    /// alpha^k for any signed exponent, reduced mod 2^m - 1.
    pub fn alpha_pow(&self, k: i64) -> GfElem {
        self.exp[k.rem_euclid(self.n as i64) as usize]
    }

    pub fn add(&self, a: GfElem, b: GfElem) -> GfElem {
        debug_assert!((a as usize) <= self.n && (b as usize) <= self.n);
        a ^ b
    }

    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        debug_assert!((a as usize) <= self.n && (b as usize) <= self.n);
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    pub fn div(&self, a: GfElem, b: GfElem) -> Result<GfElem, Error> {
        if b == 0 {
            return Err(Error::DivideByZero);
        }
        if a == 0 {
            return Ok(0);
        }
        Ok(self.exp[self.n + self.log[a as usize] as usize - self.log[b as usize] as usize])
    }

    pub fn inv(&self, a: GfElem) -> Result<GfElem, Error> {
        if a == 0 {
            return Err(Error::DivideByZero);
        }
        Ok(self.exp[(self.n - self.log[a as usize] as usize) % self.n])
    }

    /// a^e for signed e. 0^0 is 1; 0 to a negative power is `DivideByZero`.
    pub fn pow(&self, a: GfElem, e: i64) -> Result<GfElem, Error> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                _ if e > 0 => Ok(0),
                _ => Err(Error::DivideByZero),
            };
        }
        let n = self.n as i64;
        let k = self.log[a as usize] as i64 * e.rem_euclid(n);
        Ok(self.exp[(k % n) as usize])
    }

    /// Discrete log base alpha. The zero element has none.
    pub fn log(&self, a: GfElem) -> Result<u32, Error> {
        if a == 0 {
            return Err(Error::LogOfZero);
        }
        Ok(self.log[a as usize] as u32)
    }

    /// Renders an element as a power of alpha: "0", "1", "a" or "a^k".
    pub fn power_string(&self, a: GfElem) -> String {
        match self.log(a) {
            Err(_) => "0".to_string(),
            Ok(0) => "1".to_string(),
            Ok(1) => "a".to_string(),
            Ok(k) => format!("a^{k}"),
        }
    }
}

/// GF(16) from x^4 + x + 1, the field every small worked example uses.
pub fn gf16_spec() -> FieldSpec {
    FieldSpec { m: 4, prim_poly: 0b1_0011 }
}

/// GF(256) from x^8 + x^7 + x^2 + x + 1, the CCSDS Reed-Solomon field.
pub fn gf256_ccsds_spec() -> FieldSpec {
    FieldSpec { m: 8, prim_poly: 0x187 }
}
