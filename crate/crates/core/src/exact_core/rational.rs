//! Arbitrary-precision rationals and small combinatorial helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact fraction in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Builds `n/d` from machine integers. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds a rational from an arbitrary-precision integer.
pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Nearest `f64` to an exact rational.
///
/// Works for numerators and denominators far outside the `f64` range by
/// shifting both to a common scale before dividing.
pub fn to_f64(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let n = x.numer();
    let d = x.denom();
    if let (Some(a), Some(b)) = (n.to_f64(), d.to_f64()) {
        if a.is_finite() && b.is_finite() && b != 0.0 {
            return a / b;
        }
    }
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = nb - db - 60;
    let (num, den) = if shift > 0 {
        (n.clone(), d << (shift as usize))
    } else {
        (n << ((-shift) as usize), d.clone())
    };
    let q = num / den;
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Rational {
    big(binomial_int(n, k))
}

/// Integer binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial_int(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `n!` as an integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Double factorial `(2k-1)!! = 1*3*...*(2k-1)`, equal to 1 for `k = 0`.
pub fn odd_double_factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i - 1))
}

/// `2^e` as an exact rational; negative exponents give reciprocals.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << (e.unsigned_abs() as usize);
    if e >= 0 {
        big(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `x^e` for a non-negative machine exponent.
pub fn rat_pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// `(-1)^e` as a rational.
pub fn sign_pow(e: u64) -> Rational {
    if e.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// Greatest common divisor of the numerators divided by the least common
/// multiple of the denominators, always non-negative. Zero for an empty
/// or all-zero input.
pub fn content<'a, I: IntoIterator<Item = &'a Rational>>(xs: I) -> Rational {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for x in xs {
        if x.is_zero() {
            continue;
        }
        g = g.gcd(x.numer());
        l = l.lcm(x.denom());
    }
    if g.is_zero() {
        Rational::zero()
    } else {
        Rational::new(g.abs(), l)
    }
}

/// Decimal rendering with a fixed number of significant digits.
pub fn decimal(x: &Rational, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), to_f64(x))
}
