//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::rational::{int, to_f64, Rational};
use super::ExactError;

/// Polynomial `c0 + c1*z + ...` with exact coefficients; index = degree.
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        PolyQ::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyQ::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        PolyQ::new(vec![c])
    }

    /// The monomial `c * z^n`.
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut v = vec![Rational::zero(); n + 1];
        v[n] = c;
        PolyQ::new(v)
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        PolyQ::monomial(int(1), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &Rational) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> PolyQ {
        match self.leading() {
            None => PolyQ::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &PolyQ) -> Result<(PolyQ, PolyQ), ExactError> {
        let dd = d.degree().ok_or(ExactError::DivisionByZero)?;
        let lead_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((PolyQ::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = &r[i] * &lead_inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &f * dc;
                r[i - dd + j] -= t;
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        Ok((PolyQ::new(q), PolyQ::new(r)))
    }

    /// Remainder modulo `d`.
    pub fn rem(&self, d: &PolyQ) -> Result<PolyQ, ExactError> {
        Ok(self.div_rem(d)?.1)
    }

    pub fn derivative(&self) -> PolyQ {
        PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Horner evaluation at an exact point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in floating point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// `self(g(z))`.
    pub fn compose(&self, g: &PolyQ) -> PolyQ {
        self.coeffs.iter().rev().fold(PolyQ::zero(), |acc, c| {
            &(&acc * g) + &PolyQ::constant(c.clone())
        })
    }

    /// `self(g(z)) mod m`, reducing after every Horner step.
    pub fn compose_mod(&self, g: &PolyQ, m: &PolyQ) -> Result<PolyQ, ExactError> {
        let mut acc = PolyQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = (&(&acc * g) + &PolyQ::constant(c.clone())).rem(m)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> PolyQ {
        let mut acc = PolyQ::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, o: &PolyQ) -> PolyQ {
        if self.is_zero() || o.is_zero() {
            return PolyQ::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        PolyQ::new(v)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for PolyQ {
    /// Canonical form `c0 + c1*z + c2*z^2`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for PolyQ {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(PolyQ::zero());
        }
        let bad = || ExactError::Parse(s.to_string());
        let mut coeffs: Vec<Rational> = Vec::new();
        for term in s.split(" + ") {
            let (c, deg) = match term.split_once("*z") {
                None => (term, 0usize),
                Some((c, rest)) => {
                    let deg = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|d| d.parse().ok())
                            .ok_or_else(bad)?
                    };
                    (c, deg)
                }
            };
            let c: Rational = c.parse().map_err(|_| bad())?;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, Rational::zero());
            }
            coeffs[deg] += c;
        }
        Ok(PolyQ::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::rat;

    #[test]
    fn division() {
        let a = PolyQ::from_ints(&[-1, 0, 0, 1]);
        let b = PolyQ::from_ints(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, PolyQ::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(a.div_rem(&PolyQ::zero()).is_err());
    }

    #[test]
    fn display_round_trip() {
        let p = PolyQ::new(vec![rat(-1, 4), rat(1, 2), int(0), int(1)]);
        let s = p.to_string();
        assert_eq!(s, "-1/4 + 1/2*z + 1*z^3");
        assert_eq!(s.parse::<PolyQ>().unwrap(), p);
        assert_eq!("0".parse::<PolyQ>().unwrap(), PolyQ::zero());
        assert!("1/2*w".parse::<PolyQ>().is_err());
    }

    #[test]
    fn compose_and_eval() {
        let p = PolyQ::from_ints(&[0, 0, 1]);
        let g = PolyQ::from_ints(&[1, 1]);
        assert_eq!(p.compose(&g), PolyQ::from_ints(&[1, 2, 1]));
        assert_eq!(p.eval(&rat(1, 2)), rat(1, 4));
        assert_eq!(p.derivative(), PolyQ::from_ints(&[0, 2]));
    }
}
