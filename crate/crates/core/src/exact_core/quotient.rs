//! Residues in `Q[z]/(m(z))` for a fixed monic modulus.

use std::fmt;
use std::sync::Arc;

use super::poly::PolyQ;
use super::rational::Rational;
use super::ring::RingElem;
use super::ExactError;

/// A fully reduced residue class modulo a shared monic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientElem {
    modulus: Arc<PolyQ>,
    rep: PolyQ,
}

impl QuotientElem {
    /// Reduces `p` modulo `modulus`. The modulus must be monic of degree >= 1.
    pub fn new(modulus: Arc<PolyQ>, p: &PolyQ) -> Result<Self, ExactError> {
        if !modulus.is_monic() || modulus.degree() == Some(0) {
            return Err(ExactError::NotMonic(modulus.to_string()));
        }
        let rep = p.rem(&modulus)?;
        Ok(QuotientElem { modulus, rep })
    }

    /// The class of `z`.
    pub fn generator(modulus: Arc<PolyQ>) -> Result<Self, ExactError> {
        QuotientElem::new(modulus, &PolyQ::z())
    }

    pub fn constant(modulus: Arc<PolyQ>, c: Rational) -> Result<Self, ExactError> {
        QuotientElem::new(modulus, &PolyQ::constant(c))
    }

    pub fn rep(&self) -> &PolyQ {
        &self.rep
    }

    pub fn modulus(&self) -> &Arc<PolyQ> {
        &self.modulus
    }

    fn with(&self, p: PolyQ) -> Self {
        let rep = p.rem(&self.modulus).expect("monic modulus");
        QuotientElem {
            modulus: Arc::clone(&self.modulus),
            rep,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Substitutes `z -> g(z)` into the representative and reduces.
    pub fn substitute(&self, g: &PolyQ) -> Self {
        let rep = self
            .rep
            .compose_mod(g, &self.modulus)
            .expect("monic modulus");
        QuotientElem {
            modulus: Arc::clone(&self.modulus),
            rep,
        }
    }
}

impl RingElem for QuotientElem {
    fn zero_like(&self) -> Self {
        self.with(PolyQ::zero())
    }
    fn one_like(&self) -> Self {
        self.with(PolyQ::one())
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.with(&self.rep + &o.rep)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.with(&self.rep - &o.rep)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.with(&self.rep * &o.rep)
    }
    fn neg_ref(&self) -> Self {
        self.with(-&self.rep)
    }
    fn is_zero_elem(&self) -> bool {
        self.rep.is_zero()
    }
}

impl fmt::Display for QuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifth_roots_of_unity() {
        let m = Arc::new(PolyQ::from_ints(&[1, 1, 1, 1, 1]));
        let z = QuotientElem::generator(Arc::clone(&m)).unwrap();
        assert!(z.pow(5).sub_ref(&z.one_like()).is_zero_elem());
        assert!(!z.pow(3).sub_ref(&z.one_like()).is_zero_elem());
        assert!(QuotientElem::new(Arc::new(PolyQ::from_ints(&[1, 2])), &PolyQ::z()).is_err());
    }
}
