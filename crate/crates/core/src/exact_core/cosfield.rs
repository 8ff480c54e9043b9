//! Cyclotomic and Chebyshev polynomials, minimal polynomials of
//! `cos(2*pi/n)`, and arithmetic in the real cyclotomic fields `Q(cos(2*pi/n))`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::arith::{gcd, is_prime, totient};
use super::poly::PolyQ;
use super::quotient::QuotientElem;
use super::rational::{int, rat, Rational};
use super::ring::RingElem;
use super::ExactError;

/// The `n`-th cyclotomic polynomial, by dividing `w^n - 1` by every
/// `Phi_d` with `d | n`, `d < n`.
pub fn cyclotomic(n: u64) -> PolyQ {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut p = PolyQ::monomial(int(1), n as usize);
    p = &p - &PolyQ::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = p.div_rem(&cyclotomic(d)).expect("nonzero divisor");
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

/// Chebyshev polynomial of the first kind: `cos(r x) = T_r(cos x)`.
pub fn multiple_angle(r: u64) -> PolyQ {
    let two_z = PolyQ::from_ints(&[0, 2]);
    let (mut prev, mut cur) = (PolyQ::one(), PolyQ::z());
    if r == 0 {
        return prev;
    }
    for _ in 1..r {
        let next = &(&two_z * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Monic minimal polynomial of `cos(2*pi/n)` over the rationals, for any
/// `n >= 3`.
///
/// `Phi_n` is palindromic of even degree `d`, so `w^{-d/2} Phi_n(w)` is a
/// polynomial in `w + 1/w = 2z`; the terms `w^i + w^{-i}` become `2 T_i(z)`.
pub fn min_cos_poly_conductor(n: u64) -> Result<PolyQ, ExactError> {
    if n < 3 {
        return Err(ExactError::BadConductor(n));
    }
    let phi = cyclotomic(n);
    let d = phi.degree().expect("nonzero");
    let half = d / 2;
    let mut acc = PolyQ::constant(phi.coeff(half));
    for i in 1..=half {
        let c = phi.coeff(half + i) * int(2);
        acc = &acc + &multiple_angle(i as u64).scale(&c);
    }
    Ok(acc.monic())
}

/// Monic minimal polynomial `Psi_q` of `cos(2*pi/q)` for an odd prime `q`.
pub fn min_cos_poly(q: u64) -> Result<PolyQ, ExactError> {
    if q < 3 || !is_prime(q) {
        return Err(ExactError::NotOddPrime(q));
    }
    min_cos_poly_conductor(q)
}

/// The field `Q(cos(2*pi/n))` presented as `Q[c]/(Psi_n(c))`.
#[derive(Debug, PartialEq, Eq)]
pub struct CosField {
    conductor: u64,
    psi: Arc<PolyQ>,
    /// `c^(d+i) mod Psi` for `i = 0..d-1`, used to reduce products.
    high_powers: Vec<PolyQ>,
}

impl CosField {
    pub fn new(conductor: u64) -> Result<Arc<CosField>, ExactError> {
        let psi = min_cos_poly_conductor(conductor)?;
        let d = psi.degree().expect("nonzero");
        let high_powers = (0..d.max(1))
            .map(|i| PolyQ::monomial(int(1), d + i).rem(&psi).expect("monic"))
            .collect();
        Ok(Arc::new(CosField {
            conductor,
            psi: Arc::new(psi),
            high_powers,
        }))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn psi(&self) -> &PolyQ {
        &self.psi
    }

    pub fn degree(&self) -> usize {
        self.psi.degree().expect("nonzero")
    }

    /// `c^e` reduced, for `e < 2 * degree - 1`; general `e` falls back to
    /// polynomial division.
    pub fn power(&self, e: usize) -> PolyQ {
        let d = self.degree();
        if e < d {
            PolyQ::monomial(int(1), e)
        } else if e - d < self.high_powers.len() {
            self.high_powers[e - d].clone()
        } else {
            PolyQ::monomial(int(1), e).rem(&self.psi).expect("monic")
        }
    }

    /// Numeric value of the generator `cos(2*pi/n)`.
    pub fn generator_f64(&self) -> f64 {
        (2.0 * std::f64::consts::PI / self.conductor as f64).cos()
    }
}

/// Reduced description of `cos(2*pi*a/n)`: either a rational number or
/// `sign * T_r(c_n)` for the canonical conductor `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosSpec {
    Rational(Rational),
    Field { conductor: u64, r: u64, sign: i8 },
}

/// Canonical conductor form of `cos(2*pi*a/n)`.
///
/// The fraction is reduced first. When the reduced denominator is `2 (mod 4)`
/// the identity `cos(pi*x/k) = -cos(pi*(x+k)/k)` for odd `k` halves it.
/// Conductors 1, 2, 3, 4, 6 give rational values.
pub fn canonical_cos(a: i64, n: u64) -> CosSpec {
    assert!(n >= 1);
    let a = a.rem_euclid(n as i64) as u64;
    let g = gcd(a, n);
    let (mut a, mut n) = (a / g, n / g);
    if n == 1 {
        return CosSpec::Rational(int(1));
    }
    let mut sign: i8 = 1;
    if n % 4 == 2 {
        let half = n / 2;
        a = ((a + half) / 2) % half;
        n = half;
        sign = -1;
        if n == 1 {
            return CosSpec::Rational(int(sign as i64));
        }
    }
    let value = match n {
        2 => Some(int(-1)),
        3 => Some(rat(-1, 2)),
        4 => Some(Rational::zero()),
        _ => None,
    };
    match value {
        Some(v) => CosSpec::Rational(v * int(sign as i64)),
        None => CosSpec::Field {
            conductor: n,
            r: a,
            sign,
        },
    }
}

/// An element of `Q(cos(2*pi/n))`, stored as a residue modulo `Psi_n`.
/// In the rigidity systems the conductor is an odd prime `q`.
#[derive(Clone, Debug)]
pub struct AlgebraicCos {
    field: Arc<CosField>,
    elem: QuotientElem,
}

impl PartialEq for AlgebraicCos {
    fn eq(&self, o: &Self) -> bool {
        self.field.conductor == o.field.conductor && self.elem.rep() == o.elem.rep()
    }
}

impl Eq for AlgebraicCos {}

impl AlgebraicCos {
    pub fn from_poly(field: &Arc<CosField>, p: &PolyQ) -> Self {
        let elem = QuotientElem::new(Arc::clone(&field.psi), p).expect("monic");
        AlgebraicCos {
            field: Arc::clone(field),
            elem,
        }
    }

    /// The generator `c = cos(2*pi/n)`.
    pub fn generator(field: &Arc<CosField>) -> Self {
        AlgebraicCos::from_poly(field, &PolyQ::z())
    }

    pub fn constant(field: &Arc<CosField>, c: Rational) -> Self {
        AlgebraicCos::from_poly(field, &PolyQ::constant(c))
    }

    /// `cos(2*pi*p/n)` as `T_p(c)` reduced.
    pub fn cos_2pi(field: &Arc<CosField>, p: i64) -> Self {
        let n = field.conductor as i64;
        let r = p.rem_euclid(n) as u64;
        AlgebraicCos::from_poly(field, &multiple_angle(r))
    }

    pub fn field(&self) -> &Arc<CosField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn rep(&self) -> &PolyQ {
        self.elem.rep()
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero_elem()
    }

    pub fn add(&self, o: &Self) -> Self {
        self.lift(self.elem.add_ref(&o.elem))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.lift(self.elem.sub_ref(&o.elem))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.lift(self.elem.mul_ref(&o.elem))
    }

    pub fn neg(&self) -> Self {
        self.lift(self.elem.neg_ref())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AlgebraicCos::from_poly(&self.field, &self.rep().scale(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        self.lift(self.elem.pow(e))
    }

    fn lift(&self, elem: QuotientElem) -> Self {
        AlgebraicCos {
            field: Arc::clone(&self.field),
            elem,
        }
    }

    /// Galois action `c -> T_r(c)`, which sends `cos(2*pi*p/n)` to
    /// `cos(2*pi*p*r/n)`.
    pub fn apply_automorphism(&self, r: u64) -> Result<Self, ExactError> {
        let n = self.field.conductor;
        if r == 0 || gcd(r, n) != 1 {
            return Err(ExactError::NotCoprime { r, n });
        }
        Ok(self.lift(self.elem.substitute(&multiple_angle(r % n))))
    }

    /// Numeric value at the real embedding `c = cos(2*pi/n)`.
    pub fn to_f64(&self) -> f64 {
        self.rep().eval_f64(self.field.generator_f64())
    }
}

impl fmt::Display for AlgebraicCos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep())
    }
}

/// Degree of `Q(cos(2*pi/n))` over the rationals.
pub fn cos_field_degree(n: u64) -> u64 {
    if n <= 2 {
        1
    } else {
        totient(n) / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), PolyQ::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(5), PolyQ::from_ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(6), PolyQ::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), PolyQ::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn min_polys() {
        assert_eq!(
            min_cos_poly(3).unwrap(),
            PolyQ::new(vec![rat(1, 2), int(1)])
        );
        assert_eq!(
            min_cos_poly(5).unwrap(),
            PolyQ::new(vec![rat(-1, 4), rat(1, 2), int(1)])
        );
        assert_eq!(
            min_cos_poly(7).unwrap(),
            PolyQ::new(vec![rat(-1, 8), rat(-1, 2), rat(1, 2), int(1)])
        );
        assert!(min_cos_poly(9).is_err());
        assert!(min_cos_poly(2).is_err());
        assert_eq!(
            min_cos_poly_conductor(8).unwrap(),
            PolyQ::new(vec![rat(-1, 2), int(0), int(1)])
        );
    }

    #[test]
    fn chebyshev() {
        assert_eq!(multiple_angle(1), PolyQ::from_ints(&[0, 1]));
        assert_eq!(multiple_angle(2), PolyQ::from_ints(&[-1, 0, 2]));
        assert_eq!(multiple_angle(3), PolyQ::from_ints(&[0, -3, 0, 4]));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_cos(1, 6), CosSpec::Rational(rat(1, 2)));
        assert_eq!(canonical_cos(1, 4), CosSpec::Rational(int(0)));
        assert_eq!(canonical_cos(2, 4), CosSpec::Rational(int(-1)));
        assert_eq!(canonical_cos(3, 9), CosSpec::Rational(rat(-1, 2)));
        assert_eq!(
            canonical_cos(1, 10),
            CosSpec::Field {
                conductor: 5,
                r: 3,
                sign: -1
            }
        );
        for n in 1..40u64 {
            for a in 0..n as i64 {
                let want = (2.0 * std::f64::consts::PI * a as f64 / n as f64).cos();
                let got = match canonical_cos(a, n) {
                    CosSpec::Rational(v) => crate::exact_core::rational::to_f64(&v),
                    CosSpec::Field { conductor, r, sign } => {
                        let t = (2.0 * std::f64::consts::PI * r as f64 / conductor as f64).cos();
                        sign as f64 * t
                    }
                };
                assert!((want - got).abs() < 1e-12, "{a}/{n}");
            }
        }
    }

    #[test]
    fn automorphism_examples() {
        let f = CosField::new(5).unwrap();
        let c = AlgebraicCos::generator(&f);
        let s = c.apply_automorphism(2).unwrap();
        assert_eq!(s.rep(), &PolyQ::new(vec![rat(-1, 2), int(-1)]));
        assert!((s.to_f64() - (4.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
        assert_eq!(s.apply_automorphism(2).unwrap(), c);
        assert_eq!(c.apply_automorphism(1).unwrap(), c);
        assert!(c.apply_automorphism(5).is_err());
    }
}
