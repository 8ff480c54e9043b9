//! Truncated power series in a small parameter `s` whose coefficients are
//! trigonometric sums, with composition and inversion in the angle.

use std::fmt;

use super::rational::{factorial, int, Rational};
use super::trig::TrigPoly;
use super::ExactError;

/// `Σ_{i=0}^{N} s^i coeffs[i](θ) + O(s^{N+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTrig {
    coeffs: Vec<TrigPoly>,
}

impl SeriesTrig {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn new(coeffs: Vec<TrigPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs an order-0 coefficient");
        SeriesTrig { coeffs }
    }

    /// Pads or truncates `coeffs` to exactly order `n`.
    pub fn with_order(mut coeffs: Vec<TrigPoly>, n: usize) -> Self {
        coeffs.resize(n + 1, TrigPoly::zero());
        SeriesTrig { coeffs }
    }

    /// The identity angle `θ` at order `n`.
    pub fn identity(n: usize) -> Self {
        SeriesTrig::with_order(vec![TrigPoly::angle(int(1))], n)
    }

    /// A series in `s` with constant (angle-free) coefficients.
    pub fn scalar(cs: Vec<Rational>) -> Self {
        SeriesTrig::new(cs.into_iter().map(TrigPoly::constant).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[TrigPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &TrigPoly {
        &self.coeffs[i]
    }

    pub fn truncate(&self, n: usize) -> SeriesTrig {
        SeriesTrig::new(self.coeffs[..=n.min(self.order())].to_vec())
    }

    fn zip_with(&self, o: &SeriesTrig, f: impl Fn(&TrigPoly, &TrigPoly) -> TrigPoly) -> SeriesTrig {
        let n = self.order().min(o.order());
        SeriesTrig::new((0..=n).map(|i| f(&self.coeffs[i], &o.coeffs[i])).collect())
    }

    pub fn add(&self, o: &SeriesTrig) -> SeriesTrig {
        self.zip_with(o, TrigPoly::add)
    }

    pub fn sub(&self, o: &SeriesTrig) -> SeriesTrig {
        self.zip_with(o, TrigPoly::sub)
    }

    pub fn scale(&self, k: &Rational) -> SeriesTrig {
        SeriesTrig::new(self.coeffs.iter().map(|c| c.scale(k)).collect())
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, o: &SeriesTrig) -> Result<SeriesTrig, ExactError> {
        let n = self.order().min(o.order());
        let mut out = vec![TrigPoly::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&o.coeffs[j])?);
            }
        }
        Ok(SeriesTrig::new(out))
    }

    /// Multiplies every coefficient by a fixed trigonometric sum.
    pub fn mul_trig(&self, t: &TrigPoly) -> Result<SeriesTrig, ExactError> {
        Ok(SeriesTrig::new(
            self.coeffs
                .iter()
                .map(|c| c.mul(t))
                .collect::<Result<_, _>>()?,
        ))
    }

    /// `f(g(θ, s), s)` where `g = θ + δ(θ, s)` with `δ = O(s)` free of slope.
    ///
    /// Each `f_i(θ + δ)` is expanded as `Σ_l f_i^{(l)}(θ) δ^l / l!`; since
    /// `δ^l = O(s^l)`, the sum stops at `l = N - i`.
    pub fn compose(&self, g: &SeriesTrig) -> Result<SeriesTrig, ExactError> {
        if g.coeffs[0] != TrigPoly::angle(int(1)) {
            return Err(ExactError::NotIdentityAngle);
        }
        let n = self.order().min(g.order());
        let mut delta = g.truncate(n);
        delta.coeffs[0] = TrigPoly::zero();
        if delta.coeffs.iter().any(TrigPoly::has_slope) {
            return Err(ExactError::SlopeInShift);
        }
        let mut powers = vec![SeriesTrig::with_order(vec![TrigPoly::constant(int(1))], n)];
        for l in 1..=n {
            let next = powers[l - 1].mul(&delta)?;
            powers.push(next);
        }
        let mut out = vec![TrigPoly::zero(); n + 1];
        for i in 0..=n {
            let mut deriv = self.coeffs[i].clone();
            for (l, pw) in powers.iter().enumerate().take(n - i + 1) {
                if l > 0 {
                    deriv = deriv.derivative();
                }
                if deriv.is_zero() {
                    break;
                }
                let inv_fact = Rational::new(1.into(), factorial(l as u64));
                let scaled = deriv.scale(&inv_fact);
                for j in l..=(n - i) {
                    let c = pw.coeffs[j].clone();
                    if c.is_zero() {
                        continue;
                    }
                    out[i + j] = out[i + j].add(&scaled.mul(&c)?);
                }
            }
        }
        Ok(SeriesTrig::new(out))
    }

    /// Inverse in the angle: returns `g` with `f(g(θ,s), s) = θ + O(s^{N+1})`.
    ///
    /// Solved order by order: with `g_j` unknown and zero, the `s^j`
    /// coefficient of `f(g)` is `g_j + (known terms)`, so `g_j` is its negation.
    pub fn invert(&self) -> Result<SeriesTrig, ExactError> {
        if self.coeffs[0] != TrigPoly::angle(int(1)) {
            return Err(ExactError::NotIdentityAngle);
        }
        let n = self.order();
        let mut g = SeriesTrig::identity(n);
        for j in 1..=n {
            let partial = self.truncate(j).compose(&g.truncate(j))?;
            g.coeffs[j] = partial.coeffs[j].neg();
        }
        Ok(g)
    }
}

/// Quotient `num / den` where every coefficient of `den` is an angle-free
/// constant and `den_0 != 0`.
pub fn series_div(num: &SeriesTrig, den: &SeriesTrig) -> Result<SeriesTrig, ExactError> {
    if den.coeffs.iter().any(|c| !c.is_constant()) {
        return Err(ExactError::NonConstantDenominator);
    }
    let d0 = den.coeffs[0].constant_term().clone();
    if num_traits::Zero::is_zero(&d0) {
        return Err(ExactError::DivisionByZero);
    }
    let inv = d0.recip();
    let n = num.order().min(den.order());
    let mut q: Vec<TrigPoly> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = num.coeffs[k].clone();
        for i in 1..=k {
            let di = den.coeffs[i].constant_term();
            acc = acc.sub(&q[k - i].scale(di));
        }
        q.push(acc.scale(&inv));
    }
    Ok(SeriesTrig::new(q))
}

impl fmt::Display for SeriesTrig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "s^{i}: {c}")?;
        }
        Ok(())
    }
}
