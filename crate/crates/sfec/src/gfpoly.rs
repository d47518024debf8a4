//! Dense polynomials over GF(2^m).
//!
//! Coefficients are stored in ascending order of power and kept trimmed: the
//! zero polynomial is the empty vector and everything else has a nonzero
//! leading coefficient, so `degree` is `None` exactly for zero. Operations
//! that need field arithmetic take the `Field` explicitly.

use crate::galois::{Field, GfElem};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GfPoly {
    coeffs: Vec<GfElem>,
}

impl GfPoly {
    pub fn zero() -> Self {
        GfPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        GfPoly { coeffs: vec![1] }
    }

    /// From ascending coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<GfElem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        GfPoly { coeffs }
    }

    /// coeff * x^power.
    pub fn monomial(coeff: GfElem, power: usize) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![0; power + 1];
        coeffs[power] = coeff;
        GfPoly { coeffs }
    }

    /// Ascending coefficients, no trailing zeros.
    pub fn coeffs(&self) -> &[GfElem] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> GfElem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial, which has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, &c) in short.coeffs.iter().enumerate() {
            coeffs[i] ^= c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, rhs: &Self, f: &Field) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] ^= f.mul(a, b);
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Long division: returns (quotient, remainder) with
    /// self = quotient * den + remainder and deg(remainder) < deg(den).
    pub fn divmod(&self, den: &Self, f: &Field) -> Result<(Self, Self), Error> {
        let dd = den.degree().ok_or(Error::DivideByZero)?;
        let nd = match self.degree() {
            Some(nd) if nd >= dd => nd,
            _ => return Ok((Self::zero(), self.clone())),
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; nd - dd + 1];
        let lead_inv = f.inv(den.coeffs[dd]).expect("nonzero leading coefficient");
        for shift in (0..=nd - dd).rev() {
            let lead = rem[shift + dd];
            if lead == 0 {
                continue;
            }
            let c = f.mul(lead, lead_inv);
            quot[shift] = c;
            for (i, &dc) in den.coeffs.iter().enumerate() {
                rem[i + shift] ^= f.mul(dc, c);
            }
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Horner evaluation at x.
    pub fn eval(&self, x: GfElem, f: &Field) -> GfElem {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.mul(acc, x) ^ c;
        }
        acc
    }

    /// Formal derivative in characteristic 2: even-power terms vanish and
    /// odd-power coefficients shift down one place.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = (1..self.coeffs.len())
            .map(|i| if i % 2 == 1 { self.coeffs[i] } else { 0 })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: GfElem, f: &Field) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        GfPoly { coeffs }
    }

    /// Drops every term of power `len` or higher, i.e. reduces mod x^len.
    pub fn truncated(&self, len: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().copied().take(len).collect())
    }

    /// Renders in falling powers with coefficients as powers of alpha,
    /// e.g. "a^10x^2 + x + 1". The zero polynomial renders as "0".
    pub fn power_string(&self, f: &Field) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|&(_, &c)| c != 0)
            .map(|(p, &c)| {
                let coeff = if c == 1 && p > 0 { String::new() } else { f.power_string(c) };
                let var = match p {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{p}"),
                };
                format!("{coeff}{var}")
            })
            .collect();
        terms.join(" + ")
    }
}
