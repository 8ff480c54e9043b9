//! Finite trigonometric sums `a*θ + c0 + Σ c_n cos(nθ) + Σ s_n sin(nθ)` with
//! exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::rational::{int, rat, to_f64, Rational};
use super::ExactError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TrigPoly {
    slope: Rational,
    constant: Rational,
    cos_terms: BTreeMap<u32, Rational>,
    sin_terms: BTreeMap<u32, Rational>,
}

fn bump(map: &mut BTreeMap<u32, Rational>, n: u32, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(n).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        map.remove(&n);
    }
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        TrigPoly {
            constant: c,
            ..TrigPoly::default()
        }
    }

    /// The bare angle `θ` scaled by `a`.
    pub fn angle(a: Rational) -> Self {
        TrigPoly {
            slope: a,
            ..TrigPoly::default()
        }
    }

    /// `c * cos(nθ)`; frequency zero gives the constant `c`.
    pub fn cos(n: u32, c: Rational) -> Self {
        let mut t = TrigPoly::zero();
        t.add_cos(n as i64, c);
        t
    }

    /// `c * sin(nθ)`; frequency zero gives zero.
    pub fn sin(n: u32, c: Rational) -> Self {
        let mut t = TrigPoly::zero();
        t.add_sin(n as i64, c);
        t
    }

    /// Adds `c cos(nθ)` for any integer `n`, normalizing by parity.
    pub fn add_cos(&mut self, n: i64, c: Rational) {
        if n == 0 {
            self.constant += c;
        } else {
            bump(&mut self.cos_terms, n.unsigned_abs() as u32, c);
        }
    }

    /// Adds `c sin(nθ)` for any integer `n`, normalizing by parity.
    pub fn add_sin(&mut self, n: i64, c: Rational) {
        if n > 0 {
            bump(&mut self.sin_terms, n as u32, c);
        } else if n < 0 {
            bump(&mut self.sin_terms, n.unsigned_abs() as u32, -c);
        }
    }

    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn cos_terms(&self) -> &BTreeMap<u32, Rational> {
        &self.cos_terms
    }

    pub fn sin_terms(&self) -> &BTreeMap<u32, Rational> {
        &self.sin_terms
    }

    pub fn cos_coef(&self, n: u32) -> Rational {
        if n == 0 {
            return self.constant.clone();
        }
        self.cos_terms
            .get(&n)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn sin_coef(&self, n: u32) -> Rational {
        self.sin_terms
            .get(&n)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.slope.is_zero()
            && self.constant.is_zero()
            && self.cos_terms.is_empty()
            && self.sin_terms.is_empty()
    }

    pub fn has_slope(&self) -> bool {
        !self.slope.is_zero()
    }

    /// True when only the constant term may be nonzero.
    pub fn is_constant(&self) -> bool {
        self.slope.is_zero() && self.cos_terms.is_empty() && self.sin_terms.is_empty()
    }

    /// Largest frequency present, zero if none.
    pub fn max_frequency(&self) -> u32 {
        let c = self.cos_terms.keys().next_back().copied().unwrap_or(0);
        let s = self.sin_terms.keys().next_back().copied().unwrap_or(0);
        c.max(s)
    }

    pub fn add(&self, o: &TrigPoly) -> TrigPoly {
        let mut r = self.clone();
        r.slope += &o.slope;
        r.constant += &o.constant;
        for (&n, c) in &o.cos_terms {
            bump(&mut r.cos_terms, n, c.clone());
        }
        for (&n, c) in &o.sin_terms {
            bump(&mut r.sin_terms, n, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &TrigPoly) -> TrigPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TrigPoly {
        self.scale(&int(-1))
    }

    pub fn scale(&self, k: &Rational) -> TrigPoly {
        if k.is_zero() {
            return TrigPoly::zero();
        }
        TrigPoly {
            slope: &self.slope * k,
            constant: &self.constant * k,
            cos_terms: self.cos_terms.iter().map(|(&n, c)| (n, c * k)).collect(),
            sin_terms: self.sin_terms.iter().map(|(&n, c)| (n, c * k)).collect(),
        }
    }

    /// Exact product by the product-to-sum formulas.
    ///
    /// A slope term can only be multiplied by a pure constant; anything else
    /// leaves the class and is rejected.
    pub fn mul(&self, o: &TrigPoly) -> Result<TrigPoly, ExactError> {
        if self.has_slope() && o.has_slope() {
            return Err(ExactError::TwoSlopes);
        }
        if (self.has_slope() && !o.is_constant()) || (o.has_slope() && !self.is_constant()) {
            return Err(ExactError::SlopeTimesTrig);
        }
        let mut r = TrigPoly::zero();
        r.slope = &self.slope * &o.constant + &o.slope * &self.constant;
        let half = rat(1, 2);
        let cos_a: Vec<(i64, &Rational)> = std::iter::once((0i64, &self.constant))
            .chain(self.cos_terms.iter().map(|(&n, c)| (n as i64, c)))
            .collect();
        let cos_b: Vec<(i64, &Rational)> = std::iter::once((0i64, &o.constant))
            .chain(o.cos_terms.iter().map(|(&n, c)| (n as i64, c)))
            .collect();
        let sin_a: Vec<(i64, &Rational)> =
            self.sin_terms.iter().map(|(&n, c)| (n as i64, c)).collect();
        let sin_b: Vec<(i64, &Rational)> =
            o.sin_terms.iter().map(|(&n, c)| (n as i64, c)).collect();
        for &(a, ca) in &cos_a {
            if ca.is_zero() {
                continue;
            }
            for &(b, cb) in &cos_b {
                if cb.is_zero() {
                    continue;
                }
                let k = ca * cb * &half;
                r.add_cos(a - b, k.clone());
                r.add_cos(a + b, k);
            }
            for &(b, cb) in &sin_b {
                let k = ca * cb * &half;
                r.add_sin(b + a, k.clone());
                r.add_sin(b - a, k);
            }
        }
        for &(a, ca) in &sin_a {
            for &(b, cb) in &cos_b {
                if cb.is_zero() {
                    continue;
                }
                let k = ca * cb * &half;
                r.add_sin(a + b, k.clone());
                r.add_sin(a - b, k);
            }
            for &(b, cb) in &sin_b {
                let k = ca * cb * &half;
                r.add_cos(a - b, k.clone());
                r.add_cos(a + b, -k);
            }
        }
        Ok(r)
    }

    pub fn pow(&self, e: u32) -> Result<TrigPoly, ExactError> {
        let mut acc = TrigPoly::constant(int(1));
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `∫₀^θ self`, which vanishes at zero. The constant term becomes a slope.
    pub fn integrate(&self) -> Result<TrigPoly, ExactError> {
        if self.has_slope() {
            return Err(ExactError::IntegrateSlope);
        }
        let mut r = TrigPoly::angle(self.constant.clone());
        for (&n, c) in &self.cos_terms {
            r.add_sin(n as i64, c / int(n as i64));
        }
        for (&n, c) in &self.sin_terms {
            let k = c / int(n as i64);
            r.constant += &k;
            r.add_cos(n as i64, -k);
        }
        Ok(r)
    }

    pub fn derivative(&self) -> TrigPoly {
        let mut r = TrigPoly::constant(self.slope.clone());
        for (&n, c) in &self.cos_terms {
            r.add_sin(n as i64, -(c * int(n as i64)));
        }
        for (&n, c) in &self.sin_terms {
            r.add_cos(n as i64, c * int(n as i64));
        }
        r
    }

    /// `l`-th derivative.
    pub fn derivative_n(&self, l: u32) -> TrigPoly {
        (0..l).fold(self.clone(), |acc, _| acc.derivative())
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut s = to_f64(&self.slope) * theta + to_f64(&self.constant);
        for (&n, c) in &self.cos_terms {
            s += to_f64(c) * (n as f64 * theta).cos();
        }
        for (&n, c) in &self.sin_terms {
            s += to_f64(c) * (n as f64 * theta).sin();
        }
        s
    }
}

impl fmt::Display for TrigPoly {
    /// Canonical form `a*θ + c + c1*cos(1θ) + s2*sin(2θ)`; zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.slope.is_zero() {
            parts.push(format!("{}*θ", self.slope));
        }
        if !self.constant.is_zero() {
            parts.push(format!("{}", self.constant));
        }
        for (n, c) in &self.cos_terms {
            parts.push(format!("{c}*cos({n}θ)"));
        }
        for (n, c) in &self.sin_terms {
            parts.push(format!("{c}*sin({n}θ)"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FromStr for TrigPoly {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut r = TrigPoly::zero();
        if s == "0" {
            return Ok(r);
        }
        let bad = || ExactError::Parse(s.to_string());
        for term in s.split(" + ") {
            let parse_freq = |body: &str, prefix: &str| -> Option<u32> {
                body.strip_prefix(prefix)?.strip_suffix("θ)")?.parse().ok()
            };
            match term.split_once('*') {
                None => {
                    let c: Rational = term.parse().map_err(|_| bad())?;
                    r.constant += c;
                }
                Some((c, body)) => {
                    let c: Rational = c.parse().map_err(|_| bad())?;
                    if body == "θ" {
                        r.slope += c;
                    } else if let Some(n) = parse_freq(body, "cos(") {
                        r.add_cos(n as i64, c);
                    } else if let Some(n) = parse_freq(body, "sin(") {
                        r.add_sin(n as i64, c);
                    } else {
                        return Err(bad());
                    }
                }
            }
        }
        Ok(r)
    }
}
