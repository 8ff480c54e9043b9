//! Expansion coefficients of the action-angle change of variables.
//!
//! With `s = k_λ²`, the action-angle parameter is
//! `θ = f(φ, s) = (π/2) F(φ, √s) / K(√s)` and its inverse is
//! `φ = g(θ, s) = θ + Σ_j s^j φ_j(θ)` with `φ_j = Σ_l β_{j,l} sin(2lθ)`.
//! Transporting a Fourier mode gives
//! `e^{ikφ(θ)} = e^{ikθ} + Σ_j s^j Σ_l ξ_{j,l}(k) e^{i(k+2l)θ}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_core::rational::{big, binomial, factorial, int, pow2, rat, sign_pow};
use crate::exact_core::{series_div, ExactError, Rational, SeriesTrig, TrigPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("index out of range: j={j}, l={l}, max order {max}")]
    OutOfRange { j: u32, l: i64, max: u32 },
    #[error("closed form only exists on the diagonal and antidiagonal, got l={l} for j={j}")]
    NotDiagonal { j: u32, l: i64 },
    #[error("k must be positive")]
    ZeroFrequency,
    #[error("malformed composition: {0}")]
    BadComposition(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `C(2k, k) / 4^k = (2k-1)!! / (2^k k!)`.
fn central_ratio(k: u64) -> Rational {
    binomial(2 * k, k as i64) * pow2(-2 * k as i64)
}

/// Expansion of `f(φ, s) = (π/2) F(φ, √s)/K(√s)` through order `J`.
///
/// The numerator is `Σ_k s^k C(2k,k)/4^k ∫₀^φ sin^{2k}` and the denominator
/// `(2/π) K = Σ_k (C(2k,k)/4^k)² s^k`.
pub fn theta_series(order: usize) -> SeriesTrig {
    let sin_sq = TrigPoly::constant(rat(1, 2)).add(&TrigPoly::cos(2, rat(-1, 2)));
    let mut num = Vec::with_capacity(order + 1);
    let mut den = Vec::with_capacity(order + 1);
    let mut power = TrigPoly::constant(int(1));
    for k in 0..=order as u64 {
        let c = central_ratio(k);
        let integral = power.integrate().expect("powers of sin^2 carry no slope");
        num.push(integral.scale(&c));
        den.push(&c * &c);
        power = power.mul(&sin_sq).expect("no slope");
    }
    series_div(&SeriesTrig::new(num), &SeriesTrig::scalar(den)).expect("constant denominator")
}

/// The inverse expansion `g(θ, s)`, whose order-`j` coefficient is `φ_j(θ)`.
pub fn phi_series(order: usize) -> SeriesTrig {
    theta_series(order)
        .invert()
        .expect("theta series starts with the bare angle")
}

/// Closed form of the diagonal coefficient: `β_{j,j} = 2 / (2^{4j} j)`.
pub fn beta_diagonal_closed(j: u32) -> Rational {
    pow2(1 - 4 * j as i64) / int(j as i64)
}

/// `β_{j,l}` for `1 <= l <= j <= max_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaTable {
    pub max_order: u32,
    pub entries: BTreeMap<(u32, u32), Rational>,
}

impl BetaTable {
    pub fn compute(max_order: u32) -> BetaTable {
        let g = phi_series(max_order as usize);
        BetaTable::from_phi(&g)
    }

    pub fn from_phi(g: &SeriesTrig) -> BetaTable {
        let max_order = g.order() as u32;
        let mut entries = BTreeMap::new();
        for j in 1..=max_order {
            for l in 1..=j {
                entries.insert((j, l), g.coeff(j as usize).sin_coef(2 * l));
            }
        }
        BetaTable { max_order, entries }
    }

    pub fn get(&self, j: u32, l: u32) -> Result<&Rational, CoeffError> {
        self.entries.get(&(j, l)).ok_or(CoeffError::OutOfRange {
            j,
            l: l as i64,
            max: self.max_order,
        })
    }
}

/// `β_{j,l}` computed from the inversion at order `j`.
pub fn beta(j: u32, l: u32) -> Result<Rational, CoeffError> {
    if j == 0 || l == 0 || l > j {
        return Err(CoeffError::OutOfRange {
            j,
            l: l as i64,
            max: j,
        });
    }
    Ok(phi_series(j as usize).coeff(j as usize).sin_coef(2 * l))
}

/// One transport coefficient `ξ_{j,l}(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiValue {
    pub j: u32,
    pub l: i64,
    pub k: u64,
    pub value: Rational,
}

/// Computes `ξ_{j,l}(k)` by composing `cos(kφ)` and `sin(kφ)` with the
/// inverse series and extracting coefficients exactly.
#[derive(Clone, Debug)]
pub struct XiEngine {
    phi: SeriesTrig,
}

/// Expansions of `cos(k g)` and `sin(k g)` in powers of `s`.
#[derive(Clone, Debug)]
pub struct ModeExpansion {
    pub k: u64,
    pub cos: SeriesTrig,
    pub sin: SeriesTrig,
}

impl XiEngine {
    pub fn new(max_order: u32) -> XiEngine {
        XiEngine {
            phi: phi_series(max_order as usize),
        }
    }

    pub fn max_order(&self) -> u32 {
        self.phi.order() as u32
    }

    pub fn phi(&self) -> &SeriesTrig {
        &self.phi
    }

    pub fn expand_mode(&self, k: u64) -> Result<ModeExpansion, CoeffError> {
        if k == 0 {
            return Err(CoeffError::ZeroFrequency);
        }
        let n = self.phi.order();
        let cos =
            SeriesTrig::with_order(vec![TrigPoly::cos(k as u32, int(1))], n).compose(&self.phi)?;
        let sin =
            SeriesTrig::with_order(vec![TrigPoly::sin(k as u32, int(1))], n).compose(&self.phi)?;
        Ok(ModeExpansion { k, cos, sin })
    }

    pub fn xi(&self, j: u32, l: i64, k: u64) -> Result<Rational, CoeffError> {
        let modes = self.expand_mode(k)?;
        xi_from_modes(&modes, j, l, self.max_order())
    }
}

/// Reads `ξ_{j,l}(k)` off the mode expansions. Writing
/// `cos(kg) = c_0 + Σ c_m cos(mθ)` and `sin(kg) = Σ s_m sin(mθ)`, the
/// coefficient of `e^{imθ}` in `e^{ikg}` is `(c_m + s_m)/2` for `m > 0`,
/// `(c_|m| - s_|m|)/2` for `m < 0` and `c_0` for `m = 0`.
pub fn xi_from_modes(
    modes: &ModeExpansion,
    j: u32,
    l: i64,
    max: u32,
) -> Result<Rational, CoeffError> {
    if j == 0 || j > max || l.unsigned_abs() > j as u64 {
        return Err(CoeffError::OutOfRange { j, l, max });
    }
    let c = modes.cos.coeff(j as usize);
    let s = modes.sin.coeff(j as usize);
    let m = modes.k as i64 + 2 * l;
    let half = rat(1, 2);
    let v = if m > 0 {
        (c.cos_coef(m as u32) + s.sin_coef(m as u32)) * half
    } else if m < 0 {
        let a = m.unsigned_abs() as u32;
        (c.cos_coef(a) - s.sin_coef(a)) * half
    } else {
        c.constant_term().clone()
    };
    Ok(v)
}

/// `ξ_{j,l}(k)` from a fresh inversion at order `j`.
pub fn xi_oracle(j: u32, l: i64, k: u64) -> Result<Rational, CoeffError> {
    if j == 0 || l.unsigned_abs() > j as u64 {
        return Err(CoeffError::OutOfRange { j, l, max: j });
    }
    XiEngine::new(j).xi(j, l, k)
}

/// Diagonal `2^{-4j} C(k+j-1, j)` and antidiagonal `(-1)^j 2^{-4j} C(k, j)`.
pub fn xi_closed(j: u32, l: i64, k: u64) -> Result<Rational, CoeffError> {
    let scale = pow2(-4 * j as i64);
    if l == j as i64 {
        Ok(binomial(k + j as u64 - 1, j as i64) * scale)
    } else if l == -(j as i64) {
        Ok(sign_pow(j as u64) * binomial(k, j as i64) * scale)
    } else {
        Err(CoeffError::NotDiagonal { j, l })
    }
}

/// `Σ_{x=0}^{j} (-1)^x C(j,x) C(x+j-1, j-1) = 0`.
pub fn verify_alternating_identity(j: u32) -> bool {
    if j == 0 {
        return false;
    }
    let j = j as u64;
    let sum: Rational = (0..=j)
        .map(|x| sign_pow(x) * binomial(j, x as i64) * binomial(x + j - 1, j as i64 - 1))
        .sum();
    sum.is_zero()
}

/// All compositions of `n` (ordered tuples of positive parts summing to
/// `n`); the empty composition for `n = 0`.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    for mask in 0u64..(1 << (n - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for i in 0..n - 1 {
            if mask & (1 << i) != 0 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        out.push(parts);
    }
    out
}

/// `Σ_{compositions (i_1..i_l) of j} k^l / (l! i_1 ⋯ i_l) = C(k+j-1, j)`.
pub fn verify_composition_identity(j: u32, k: u64) -> bool {
    if j == 0 || k == 0 {
        return false;
    }
    let kk = int(k as i64);
    let lhs: Rational = compositions(j)
        .into_iter()
        .map(|parts| {
            let l = parts.len() as u32;
            let prod: BigInt = parts.iter().map(|&p| BigInt::from(p)).product();
            num_traits::pow(kk.clone(), l as usize) / big(factorial(l as u64) * prod)
        })
        .sum();
    lhs == binomial(k + j as u64 - 1, j as i64)
}

/// Coefficient of `sin(2jθ)` contributed by the term indexed by
/// `x0 >= 1` and the composition `xs` of `j - x0` (of length `l`):
/// `(-1)^{x0} C(2x0,x0)/(x0 2^{4j}) (2x0)^l j! / Π_{t<l} (j - x0 - x_1 - ⋯ - x_t)`.
pub fn prop31_coefficient(x0: u32, xs: &[u32], j: u32, l: usize) -> Result<Rational, CoeffError> {
    if x0 == 0 || xs.len() != l || xs.contains(&0) || x0 + xs.iter().sum::<u32>() != j {
        return Err(CoeffError::BadComposition(format!(
            "x0={x0}, xs={xs:?}, j={j}, l={l}"
        )));
    }
    let jj = j as u64;
    let mut c = sign_pow(x0 as u64) * binomial(2 * x0 as u64, x0 as i64) / int(x0 as i64)
        * pow2(-4 * j as i64);
    c *= num_traits::pow(int(2 * x0 as i64), l);
    c *= big(factorial(jj));
    let mut rest = (j - x0) as i64;
    for &x in xs {
        c /= int(rest);
        rest -= x as i64;
    }
    Ok(c)
}

/// `Σ_{x0, xs} prop31_coefficient + j! β_{j,j}`, which must vanish.
pub fn prop31_assembled_sum(j: u32, beta_jj: &Rational) -> Rational {
    let mut total = big(factorial(j as u64)) * beta_jj;
    for x0 in 1..=j {
        for xs in compositions(j - x0) {
            let l = xs.len();
            total += prop31_coefficient(x0, &xs, j, l).expect("well formed by construction");
        }
    }
    total
}

/// Checks the assembled sum with `β_{j,j}` read from the inversion.
pub fn verify_prop31(j: u32) -> Result<bool, CoeffError> {
    let b = beta(j, j)?;
    Ok(prop31_assembled_sum(j, &b).is_zero())
}

/// True iff the order-`j` coefficient of `cos(kφ(θ,s))` contains only
/// cosines of frequencies `|k + 2l|`, `|l| <= j`, with a constant allowed
/// only when `k + 2l = 0` is possible, and `sin(kφ)` contains only sines of
/// the same frequencies.
pub fn verify_pj_structure(j: u32, k: u64) -> Result<bool, CoeffError> {
    if j == 0 || k == 0 {
        return Err(CoeffError::OutOfRange { j, l: 0, max: j });
    }
    let modes = XiEngine::new(j).expand_mode(k)?;
    Ok(structure_ok(&modes, j))
}

pub fn structure_ok(modes: &ModeExpansion, j: u32) -> bool {
    let k = modes.k as i64;
    let allowed: Vec<i64> = (-(j as i64)..=j as i64)
        .map(|l| (k + 2 * l).abs())
        .collect();
    let zero_allowed = allowed.contains(&0);
    let c = modes.cos.coeff(j as usize);
    let s = modes.sin.coeff(j as usize);
    let cos_ok = !c.has_slope()
        && c.sin_terms().is_empty()
        && (zero_allowed || c.constant_term().is_zero())
        && c.cos_terms().keys().all(|&n| allowed.contains(&(n as i64)));
    let sin_ok = !s.has_slope()
        && s.cos_terms().is_empty()
        && s.constant_term().is_zero()
        && s.sin_terms().keys().all(|&n| allowed.contains(&(n as i64)));
    cos_ok && sin_ok
}

/// Lagrange interpolation through `(x_i, y_i)` evaluated at `x`.
pub fn lagrange_eval(xs: &[Rational], ys: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut w = Rational::one();
        for (m, xm) in xs.iter().enumerate() {
            if m != i {
                w *= (x - xm) / (xi - xm);
            }
        }
        acc += yi * w;
    }
    acc
}

/// For fixed `(j, l)`, the degree-`<= j` polynomial through
/// `k = 1..=j+1` reproduces `ξ_{j,l}(k)` at `k = j+2, j+3, j+4`.
pub fn verify_xi_polynomial_degree(engine: &XiEngine, j: u32, l: i64) -> Result<bool, CoeffError> {
    let ks: Vec<u64> = (1..=(j as u64 + 4)).collect();
    let mut vals = Vec::with_capacity(ks.len());
    for &k in &ks {
        vals.push(engine.xi(j, l, k)?);
    }
    let fit = j as usize + 1;
    let xs: Vec<Rational> = ks[..fit].iter().map(|&k| int(k as i64)).collect();
    Ok(ks[fit..]
        .iter()
        .zip(&vals[fit..])
        .all(|(&k, v)| &lagrange_eval(&xs, &vals[..fit], &int(k as i64)) == v))
}
