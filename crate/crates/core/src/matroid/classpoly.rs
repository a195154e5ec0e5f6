use std::fmt;

use serde::{Deserialize, Serialize};

/// Univariate integer polynomial in a single symbol (`t` for characteristic
/// polynomials, `L` for classes in the Grothendieck ring).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPoly {
    /// `coeffs[k]` is the coefficient of `symbol^k`; no trailing zeros.
    coeffs: Vec<i64>,
    symbol: char,
}

impl ClassPoly {
    pub fn new(mut coeffs: Vec<i64>, symbol: char) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ClassPoly { coeffs, symbol }
    }

    pub fn zero(symbol: char) -> Self {
        Self::new(Vec::new(), symbol)
    }

    pub fn constant(c: i64, symbol: char) -> Self {
        Self::new(vec![c], symbol)
    }

    pub fn monomial(c: i64, k: usize, symbol: char) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(v, symbol)
    }

    /// `[P^k] = 1 + L + ... + L^k`.
    pub fn projective_space(k: usize, symbol: char) -> Self {
        Self::new(vec![1; k + 1], symbol)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn symbol(&self) -> char {
        self.symbol
    }

    pub fn with_symbol(&self, symbol: char) -> Self {
        ClassPoly { coeffs: self.coeffs.clone(), symbol }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &ClassPoly) -> ClassPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect(), self.symbol)
    }

    pub fn sub(&self, other: &ClassPoly) -> ClassPoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> ClassPoly {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.symbol)
    }

    pub fn mul(&self, other: &ClassPoly) -> ClassPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.symbol);
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out, self.symbol)
    }

    /// Division with remainder by a monic polynomial.
    pub fn div_rem_monic(&self, divisor: &ClassPoly) -> (ClassPoly, ClassPoly) {
        let d = divisor.degree().expect("nonzero divisor");
        assert_eq!(divisor.leading_coeff(), 1, "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(self.symbol), self.clone());
        }
        let mut quot = vec![0i64; rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d];
            quot[k] = c;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= c * b;
            }
        }
        (Self::new(quot, self.symbol), Self::new(rem, self.symbol))
    }

    /// Exact quotient by a monic divisor, `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &ClassPoly) -> Option<ClassPoly> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    pub fn eval(&self, x: i64) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * x as i128 + c as i128)
    }
}

impl fmt::Display for ClassPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let body = match k {
                0 => String::new(),
                1 => self.symbol.to_string(),
                _ => format!("{}^{k}", self.symbol),
            };
            if k == 0 {
                write!(f, "{sign}{mag}")?;
            } else if mag == 1 {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, "{sign}{mag}{body}")?;
            }
            first = false;
        }
        Ok(())
    }
}
