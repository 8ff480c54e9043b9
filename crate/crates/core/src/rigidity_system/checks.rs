//! Galois-orbit row maps, the worked 4x4 example, the Chebyshev kernel
//! identity, the prime-step Vandermonde block and the scaling chain.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeff_engine::xi_closed;
use crate::exact_core::arith::{factorize, inv_mod, is_prime, order_mod_prime};
use crate::exact_core::rational::{factorial, int, pow2, to_f64, Rational};
use crate::exact_core::{
    binomial, canonical_cos, cyclotomic, determinant, multiple_angle, AlgebraicCos, CosField,
    CosSpec, PolyQ, QuotientElem, TensorAlgebraic,
};

use super::rows::{build_even_rows, build_odd_row, row_u};
use super::RigidityError;

/// Checks that `c_q -> T_r(c_q)` with `r = p2 p1^{-1} mod q` carries the row
/// `v_{p1/q}` onto `v_{p2/q}` entry by entry, and that `r = -1` fixes rows.
pub fn automorphism_orbit_check(q: u64, p1: u64, p2: u64, m: u64) -> Result<bool, RigidityError> {
    if q < 5 || !is_prime(q) {
        return Err(RigidityError::NotPrime(q));
    }
    for p in [p1, p2] {
        if p == 0 || p >= q {
            return Err(RigidityError::OutOfRange(format!(
                "numerator {p} for q={q}"
            )));
        }
    }
    let k = (q - 1) / 2;
    let inv = inv_mod(p1, q).ok_or(RigidityError::NoInverse { r: p1, q })?;
    let r = p2 * inv % q;
    let a = build_odd_row(k, p1, m)?;
    let b = build_odd_row(k, p2, m)?;
    let mut ok = a.coeffs.len() == b.coeffs.len();
    for (v, c) in &a.coeffs {
        ok &= c.apply_automorphism(q, r)? == b.coeff(*v);
        ok &= c.apply_automorphism(q, q - 1)? == *c;
    }
    ok &= build_odd_row(k, q - p1, m)?.coeffs == a.coeffs;
    Ok(ok)
}

#[derive(Debug, Clone)]
pub struct Example2Certificate {
    pub determinant: QuotientElem,
    pub determinant_numeric: f64,
    pub vandermonde: QuotientElem,
    /// Degree of the determinant with `alpha_2 = z^2` left as a polynomial.
    pub z_determinant_degree: usize,
    /// Successive images `alpha_1 -> alpha_2 -> alpha_4 -> alpha_3 -> alpha_1`.
    pub chain: Vec<u64>,
    pub chain_covers_all: bool,
    /// Exponents reached by doubling modulo 7, which miss half the roots.
    pub chain_mod7: Vec<u64>,
}

fn doubling_orbit(n: u64) -> Vec<u64> {
    let mut out = vec![2 % n];
    while *out.last().unwrap() != 1 {
        let next = out.last().unwrap() * 2 % n;
        out.push(next);
    }
    out
}

/// Determinant of `[[3,7,0,0],[4,1,2,0],[1,a,a^2,a^3],[1,a^2,a^4,a^6]]` in
/// `Q[z]/(z^4+z^3+z^2+z+1)` together with the reduction chain data.
pub fn example2_check() -> Result<Example2Certificate, RigidityError> {
    let phi5 = Arc::new(cyclotomic(5));
    let c = |x: i64| QuotientElem::constant(Arc::clone(&phi5), int(x));
    let alpha = QuotientElem::generator(Arc::clone(&phi5))?;
    let a = |e: u32| alpha.pow(e);
    let m = vec![
        vec![c(3)?, c(7)?, c(0)?, c(0)?],
        vec![c(4)?, c(1)?, c(2)?, c(0)?],
        vec![c(1)?, a(1), a(2), a(3)],
        vec![c(1)?, a(2), a(4), a(6)],
    ];
    let det = determinant(&m);
    let vander: Vec<Vec<QuotientElem>> = (1..=4u32)
        .map(|j| (0..4u32).map(|i| a(i * j)).collect())
        .collect();
    let vdet = determinant(&vander);
    let zp = |cs: &[i64]| PolyQ::from_ints(cs);
    let zdet = determinant(&[
        vec![zp(&[3]), zp(&[7]), zp(&[]), zp(&[])],
        vec![zp(&[4]), zp(&[1]), zp(&[2]), zp(&[])],
        vec![
            zp(&[1]),
            PolyQ::monomial(int(1), 1),
            PolyQ::monomial(int(1), 2),
            PolyQ::monomial(int(1), 3),
        ],
        vec![
            zp(&[1]),
            PolyQ::monomial(int(1), 2),
            PolyQ::monomial(int(1), 4),
            PolyQ::monomial(int(1), 6),
        ],
    ]);
    let numeric = {
        let w = 2.0 * std::f64::consts::PI / 5.0;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, cf) in det.rep().coeffs().iter().enumerate() {
            let x = to_f64(cf);
            re += x * (w * i as f64).cos();
            im += x * (w * i as f64).sin();
        }
        re.hypot(im)
    };
    let chain = doubling_orbit(5);
    let mut covered: Vec<u64> = chain.clone();
    covered.sort_unstable();
    Ok(Example2Certificate {
        determinant: det,
        determinant_numeric: numeric,
        vandermonde: vdet,
        z_determinant_degree: zdet.degree().unwrap_or(0),
        chain_covers_all: covered == [1, 2, 3, 4] && order_mod_prime(2, 5, &factorize(4)) == 4,
        chain,
        chain_mod7: doubling_orbit(7),
    })
}

/// `(k+j-1)! / ((k-j)! (2j)!) (-2)^j`, the Chebyshev expansion weight.
fn cheb_weight(k: u64, j: u64) -> Rational {
    let num = factorial(k + j - 1);
    let den = factorial(k - j) * factorial(2 * j);
    let sign = if j.is_multiple_of(2) { int(1) } else { int(-1) };
    Rational::new(num, den) * pow2(j as i64) * sign
}

/// The closed expansion of `T_k` in powers of `(1 - z)`.
pub fn chebyshev_expansion(k: u64) -> PolyQ {
    let one_minus_z = PolyQ::from_ints(&[1, -1]);
    let mut acc = PolyQ::zero();
    for j in 0..=k {
        let w = if j == 0 {
            int(1)
        } else {
            cheb_weight(k, j) * int(k as i64)
        };
        acc = &acc + &one_minus_z.pow(j as u32).scale(&w);
    }
    acc
}

/// Polynomial `Σ_{j=2}^{k} w_j (j-1) u^j` in `u`.
pub fn shared_kernel_poly(k: u64) -> PolyQ {
    let mut acc = PolyQ::zero();
    for j in 2..=k {
        acc = &acc + &PolyQ::monomial(cheb_weight(k, j) * int(j as i64 - 1), j as usize);
    }
    acc
}

/// Exact check of the shared-kernel sum at `u = 1 + cos(p*pi/k)`.
pub fn kernel_sum_vanishes(k: u64, p: u64) -> Result<(bool, f64), RigidityError> {
    let poly = shared_kernel_poly(k);
    let u_of_c = PolyQ::from_ints(&[1, 1]);
    let in_c = poly.compose(&u_of_c);
    let numeric = in_c.eval_f64((p as f64 * std::f64::consts::PI / k as f64).cos());
    let exact = match canonical_cos(p as i64, 2 * k) {
        CosSpec::Rational(v) => in_c.eval(&v).is_zero(),
        CosSpec::Field { conductor, r, sign } => {
            let field = CosField::new(conductor)?;
            let c = AlgebraicCos::from_poly(&field, &multiple_angle(r).scale(&int(sign as i64)));
            let mut acc = AlgebraicCos::constant(&field, Rational::zero());
            let mut pw = AlgebraicCos::constant(&field, Rational::one());
            for coef in in_c.coeffs() {
                acc = acc.add(&pw.scale(coef));
                pw = pw.mul(&c);
            }
            acc.is_zero()
        }
    };
    Ok((exact, numeric))
}

/// Verifies the Chebyshev expansion for `k <= k_max` and that `x_{2j} = j-1`
/// annihilates the shared row sum for all odd `p < k`, odd `k <= k_max`.
pub fn chebyshev_kernel_check(k_max: u64) -> Result<bool, RigidityError> {
    if k_max < 3 {
        return Err(RigidityError::OutOfRange(format!("k_max={k_max}")));
    }
    for k in 1..=k_max {
        if chebyshev_expansion(k) != multiple_angle(k) {
            return Ok(false);
        }
    }
    for k in (3..=k_max).step_by(2) {
        for p in (1..k).step_by(2) {
            let (exact, numeric) = kernel_sum_vanishes(k, p)?;
            let scale: f64 = shared_kernel_poly(k)
                .coeffs()
                .iter()
                .map(|c| to_f64(c).abs() * 8f64.powi(k as i32))
                .fold(1.0, f64::max);
            if !exact || numeric.abs() > 1e-12 * scale {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// At prime `q`, the `q-1` even rows restricted to `N+1` of them form a
/// nonsingular block; returns the number of rows and whether the first
/// `N+1` rows give a nonzero determinant.
pub fn prime_step_vandermonde(q: u64, m: u64) -> Result<(usize, bool), RigidityError> {
    if !is_prime(q) || q < 5 {
        return Err(RigidityError::NotPrime(q));
    }
    let rows = build_even_rows(q, m)?;
    let vars: Vec<u64> = (m..=q).map(|k| 2 * k).collect();
    let square: Vec<Vec<TensorAlgebraic>> = rows
        .iter()
        .take(vars.len())
        .map(|r| vars.iter().map(|&v| r.coeff(v)).collect())
        .collect();
    if square.len() < vars.len() {
        return Ok((rows.len(), false));
    }
    Ok((rows.len(), !determinant(&square).is_zero()))
}

/// Follows `a_{2k+1} -> x_{2k+1} = a_{2k+1} 2^{4k} / e^{2k}` through the
/// diagonal equation with `e` kept symbolic as an exponent. The term of
/// `a_{2k+1-2j}` is `xi_{j,j}(2k+1-2j) e^{2j} cos^{-2j}`; after substitution
/// every term must carry the same `e^{2k}`, and after clearing `2^{4k}` and
/// `cos^{2N}` the coefficient must equal the row entry.
pub fn scaling_chain_check(k: u64, p: u64, m: u64) -> Result<bool, RigidityError> {
    let row = build_odd_row(k, p, m)?;
    let n = k + 1 - m;
    let u = row_u(&row.id)?;
    let q = 2 * k + 1;
    let cos2 = (p as f64 * std::f64::consts::PI / q as f64).cos().powi(2);
    let mut ok = (u.to_f64() - cos2).abs() < 1e-14;
    for j in 0..=n {
        let xi = if j == 0 {
            int(1)
        } else {
            xi_closed(j as u32, j as i64, q - 2 * j)
                .map_err(|e| RigidityError::OutOfRange(e.to_string()))?
        };
        let e_pow = 2 * j + 2 * (k - j);
        ok &= e_pow == 2 * k;
        let coef = &xi * pow2(-4 * (k - j) as i64) * pow2(4 * k as i64);
        ok &= coef == binomial(2 * k - j, j as i64);
        let entry = u.pow((n - j) as u32).scale(&coef);
        ok &= entry == row.coeff(2 * k + 1 - 2 * j);
    }
    Ok(ok)
}
