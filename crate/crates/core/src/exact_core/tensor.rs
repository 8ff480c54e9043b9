//! Elements of a compositum of cosine fields with pairwise coprime
//! conductors, represented as sparse multivariate polynomials with one
//! variable `c_n = cos(2*pi/n)` per conductor, each reduced modulo `Psi_n`.
//!
//! Cyclotomic fields of coprime conductors are linearly disjoint, so the
//! per-variable reduction gives a canonical form and the zero test is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::arith::{factorize, is_prime};
use super::cosfield::{multiple_angle, AlgebraicCos, CosField, CosSpec};
use super::poly::PolyQ;
use super::rational::{content, int, to_f64, Rational};
use super::ring::RingElem;
use super::ExactError;

/// Sorted `(conductor, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(u64, u32)>;

/// Conductors that may appear as tensor variables: odd primes at least 5,
/// and the prime powers 8 and 9. Their underlying primes are distinct, so
/// any set of them is pairwise coprime.
pub fn is_tensor_conductor(n: u64) -> bool {
    (n >= 5 && is_prime(n)) || n == 8 || n == 9
}

#[derive(Clone, Debug)]
pub struct TensorAlgebraic {
    fields: BTreeMap<u64, Arc<CosField>>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for TensorAlgebraic {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl Eq for TensorAlgebraic {}

impl TensorAlgebraic {
    pub fn zero() -> Self {
        TensorAlgebraic {
            fields: BTreeMap::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut t = TensorAlgebraic::zero();
        if !c.is_zero() {
            t.terms.insert(Vec::new(), c);
        }
        t
    }

    pub fn one() -> Self {
        TensorAlgebraic::constant(int(1))
    }

    /// Embeds a single-field element.
    pub fn from_cos(x: &AlgebraicCos) -> Result<Self, ExactError> {
        let n = x.conductor();
        if !is_tensor_conductor(n) {
            return Err(ExactError::UnsupportedConductor(n));
        }
        let mut fields = BTreeMap::new();
        fields.insert(n, Arc::clone(x.field()));
        let mut terms = BTreeMap::new();
        for (e, c) in x.rep().coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = if e == 0 {
                Vec::new()
            } else {
                vec![(n, e as u32)]
            };
            terms.insert(m, c.clone());
        }
        Ok(TensorAlgebraic { fields, terms })
    }

    /// Builds `cos(2*pi*a/n)` from its canonical form. Rational values need
    /// no variable; other values need a supported canonical conductor.
    pub fn from_spec(spec: &CosSpec) -> Result<Self, ExactError> {
        match spec {
            CosSpec::Rational(v) => Ok(TensorAlgebraic::constant(v.clone())),
            CosSpec::Field { conductor, r, sign } => {
                if !is_tensor_conductor(*conductor) {
                    return Err(ExactError::UnsupportedConductor(*conductor));
                }
                let field = CosField::new(*conductor)?;
                let x = AlgebraicCos::from_poly(&field, &multiple_angle(*r));
                let t = TensorAlgebraic::from_cos(&x)?;
                Ok(t.scale(&int(*sign as i64)))
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn conductors(&self) -> Vec<u64> {
        self.fields.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn support(&self) -> usize {
        self.terms.len()
    }

    /// Total bit size of all coefficients, a proxy for representation cost.
    pub fn size_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits() + c.denom().bits())
            .sum()
    }

    /// The rational number if the element has no variable part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn merged_fields(&self, o: &Self) -> BTreeMap<u64, Arc<CosField>> {
        let mut f = self.fields.clone();
        for (k, v) in &o.fields {
            f.entry(*k).or_insert_with(|| Arc::clone(v));
        }
        f
    }

    fn from_parts(
        fields: BTreeMap<u64, Arc<CosField>>,
        mut terms: BTreeMap<Monomial, Rational>,
    ) -> Self {
        terms.retain(|_, c| !c.is_zero());
        TensorAlgebraic { fields, terms }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            *terms.entry(m.clone()).or_insert_with(Rational::zero) += c;
        }
        TensorAlgebraic::from_parts(self.merged_fields(o), terms)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            *terms.entry(m.clone()).or_insert_with(Rational::zero) -= c;
        }
        TensorAlgebraic::from_parts(self.merged_fields(o), terms)
    }

    pub fn neg(&self) -> Self {
        TensorAlgebraic {
            fields: self.fields.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return TensorAlgebraic::zero();
        }
        TensorAlgebraic {
            fields: self.fields.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let fields = self.merged_fields(o);
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                *acc.entry(merge_monomials(ma, mb))
                    .or_insert_with(Rational::zero) += ca * cb;
            }
        }
        for (&n, field) in &fields {
            acc = reduce_variable(n, field, acc);
        }
        TensorAlgebraic::from_parts(fields, acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TensorAlgebraic::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Positive rational content of the coefficients.
    pub fn content(&self) -> Rational {
        content(self.terms.values())
    }

    /// Divides by the content, making the coefficients coprime integers.
    /// The sign is fixed so that the first term is positive.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        let mut g = g.recip();
        if self
            .terms
            .values()
            .next()
            .is_some_and(|c| c < &Rational::zero())
        {
            g = -g;
        }
        self.scale(&g)
    }

    /// Value at the real embedding sending each `c_n` to `cos(2*pi/n)`.
    pub fn to_f64(&self) -> f64 {
        let mut s = 0.0;
        for (m, c) in &self.terms {
            let mut t = to_f64(c);
            for &(n, e) in m {
                t *= (2.0 * std::f64::consts::PI / n as f64).cos().powi(e as i32);
            }
            s += t;
        }
        s
    }

    /// Applies the Galois automorphism `c_n -> T_r(c_n)` to one variable.
    pub fn apply_automorphism(&self, conductor: u64, r: u64) -> Result<Self, ExactError> {
        let Some(field) = self.fields.get(&conductor) else {
            return Ok(self.clone());
        };
        if factorize(conductor)
            .iter()
            .any(|&(p, _)| r.is_multiple_of(p))
        {
            return Err(ExactError::NotCoprime { r, n: conductor });
        }
        let image = TensorAlgebraic::from_cos(&AlgebraicCos::from_poly(
            field,
            &multiple_angle(r % conductor),
        ))?;
        let mut acc = TensorAlgebraic::zero();
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut e = 0;
            for &(n, k) in m {
                if n == conductor {
                    e = k;
                } else {
                    rest.push((n, k));
                }
            }
            let base = TensorAlgebraic {
                fields: self.fields.clone(),
                terms: std::iter::once((rest, c.clone())).collect(),
            };
            acc = acc.add(&base.mul(&image.pow(e)));
        }
        Ok(acc)
    }
}

fn merge_monomials(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            out.push((a[i].0, a[i].1 + b[j].1));
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rewrites every power of `c_n` at or above the field degree using the
/// stored reduction of that power.
fn reduce_variable(
    n: u64,
    field: &CosField,
    terms: BTreeMap<Monomial, Rational>,
) -> BTreeMap<Monomial, Rational> {
    let d = field.degree();
    let mut out: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for (m, c) in terms {
        if c.is_zero() {
            continue;
        }
        let pos = m.iter().position(|&(v, _)| v == n);
        let Some(pos) = pos.filter(|&i| m[i].1 as usize >= d) else {
            *out.entry(m).or_insert_with(Rational::zero) += c;
            continue;
        };
        let reduced: PolyQ = field.power(m[pos].1 as usize);
        for (k, r) in reduced.coeffs().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let mut mk = m.clone();
            if k == 0 {
                mk.remove(pos);
            } else {
                mk[pos].1 = k as u32;
            }
            *out.entry(mk).or_insert_with(Rational::zero) += &c * r;
        }
    }
    out
}

impl RingElem for TensorAlgebraic {
    fn zero_like(&self) -> Self {
        TensorAlgebraic::zero()
    }
    fn one_like(&self) -> Self {
        TensorAlgebraic::one()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl fmt::Display for TensorAlgebraic {
    /// Canonical form: terms in monomial order, e.g. `-1/2 + 3*c5*c7^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for &(n, e) in m {
                if e == 1 {
                    write!(f, "*c{n}")?;
                } else {
                    write!(f, "*c{n}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl From<Rational> for TensorAlgebraic {
    fn from(c: Rational) -> Self {
        TensorAlgebraic::constant(c)
    }
}

impl TensorAlgebraic {
    /// True when the element is exactly one.
    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }
}
