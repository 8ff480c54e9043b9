//! Good primes: primes `q` for which a small window of residues, closed under
//! negation and multiplication, generates all of `F_q*`. Also the
//! smoothness constants built from them and smooth-number counts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_core::arith::{factorize, is_prime, lcm, next_prime, order_mod_prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("q = {q} must exceed q0 = {q0}")]
    BelowThreshold { q: u64, q0: u64 },
    #[error("q0 = {0} must be odd and at least 3")]
    BadQ0(u64),
    #[error("generator set is empty")]
    EmptyGenerators,
    #[error("generator {g} is not a unit modulo {q}")]
    GeneratorOutOfRange { g: u64, q: u64 },
    #[error("l = {0} must exceed 2")]
    BadExponent(u32),
}

fn check_gens(q: u64, gens: &[u64]) -> Result<(), PrimeError> {
    if !is_prime(q) {
        return Err(PrimeError::NotPrime(q));
    }
    if gens.is_empty() {
        return Err(PrimeError::EmptyGenerators);
    }
    if let Some(&g) = gens.iter().find(|&&g| g == 0 || g >= q) {
        return Err(PrimeError::GeneratorOutOfRange { g, q });
    }
    Ok(())
}

/// Smallest subgroup of `F_q*` containing `gens` and `-1`, by breadth-first
/// closure under multiplication. Returned sorted.
pub fn symmetric_closure(q: u64, gens: &[u64]) -> Result<Vec<u64>, PrimeError> {
    check_gens(q, gens)?;
    let mut steps: Vec<u64> = gens.to_vec();
    steps.push(q - 1);
    let mut seen = vec![false; q as usize];
    seen[1] = true;
    let mut queue = vec![1u64];
    while let Some(x) = queue.pop() {
        for &g in &steps {
            let y = x * g % q;
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push(y);
            }
        }
    }
    Ok((1..q).filter(|&i| seen[i as usize]).collect())
}

/// Order of the subgroup generated by `gens` and `-1`. In the cyclic group
/// `F_q*` this is the lcm of the element orders.
pub fn symmetric_closure_order(q: u64, gens: &[u64]) -> Result<u64, PrimeError> {
    check_gens(q, gens)?;
    let f = factorize(q - 1);
    let mut acc = if q == 2 { 1 } else { 2 };
    for &g in gens {
        acc = lcm(acc, order_mod_prime(g, q, &f));
        if acc == q - 1 {
            break;
        }
    }
    Ok(acc)
}

fn check_threshold(q: u64, q0: u64) -> Result<(), PrimeError> {
    if !is_prime(q) {
        return Err(PrimeError::NotPrime(q));
    }
    if q <= q0 {
        return Err(PrimeError::BelowThreshold { q, q0 });
    }
    Ok(())
}

/// `{1, 2, ..., floor(q/q0)}`.
pub fn a_generators(q: u64, q0: u64) -> Vec<u64> {
    (1..=q / q0).collect()
}

/// `{1, 3, ..., 2 floor(q/q0) - 1}`.
pub fn b_generators(q: u64, q0: u64) -> Vec<u64> {
    (1..=q / q0).map(|i| 2 * i - 1).filter(|&g| g < q).collect()
}

pub fn is_a_good(q: u64, q0: u64) -> Result<bool, PrimeError> {
    check_threshold(q, q0)?;
    Ok(symmetric_closure_order(q, &a_generators(q, q0))? == q - 1)
}

pub fn is_b_good(q: u64, q0: u64) -> Result<bool, PrimeError> {
    check_threshold(q, q0)?;
    Ok(symmetric_closure_order(q, &b_generators(q, q0))? == q - 1)
}

/// `l`-C-good: the odd residues `1, 3, ..., t`, with `t` the first odd number
/// such that `t^l >= q`, generate `F_q*` together with `-1`.
pub fn is_c_good(q: u64, l: u32) -> Result<bool, PrimeError> {
    if !is_prime(q) {
        return Err(PrimeError::NotPrime(q));
    }
    if l <= 2 {
        return Err(PrimeError::BadExponent(l));
    }
    let mut t = 1u64;
    while (t as u128).pow(l) < q as u128 {
        t += 2;
    }
    if t + 1 >= q {
        return Ok(true);
    }
    let gens: Vec<u64> = (1..=t).step_by(2).collect();
    Ok(symmetric_closure_order(q, &gens)? == q - 1)
}

/// `(q-1)/2` has no prime factor below `q0`; sufficient for A- and B-goodness.
pub fn sufficient_condition(q: u64, q0: u64) -> Result<bool, PrimeError> {
    if q < 3 || !is_prime(q) {
        return Err(PrimeError::NotPrime(q));
    }
    Ok(factorize((q - 1) / 2).iter().all(|&(p, _)| p >= q0))
}

/// `q` and `(q-1)/2` both prime.
pub fn is_safe_prime(q: u64) -> bool {
    q >= 5 && is_prime(q) && is_prime((q - 1) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPrimeRecord {
    pub q: u64,
    pub q0: u64,
    pub a_good: bool,
    pub b_good: bool,
    pub closure_size: u64,
    pub b_closure_size: u64,
    pub generators_a: Vec<u64>,
    pub generators_b: Vec<u64>,
    pub sufficient_condition: bool,
}

/// Full record for one prime, using the breadth-first closure.
pub fn good_prime_record(q: u64, q0: u64) -> Result<GoodPrimeRecord, PrimeError> {
    check_threshold(q, q0)?;
    let generators_a = a_generators(q, q0);
    let generators_b = b_generators(q, q0);
    let closure_size = symmetric_closure(q, &generators_a)?.len() as u64;
    let b_closure_size = symmetric_closure(q, &generators_b)?.len() as u64;
    Ok(GoodPrimeRecord {
        q,
        q0,
        a_good: closure_size == q - 1,
        b_good: b_closure_size == q - 1,
        closure_size,
        b_closure_size,
        generators_a,
        generators_b,
        sufficient_condition: sufficient_condition(q, q0)?,
    })
}

/// The constants `n = 2 M0`, `m = 28 M0` with `M0` the `(k0-1)`-th prime that
/// is both A-good and B-good.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoarseConstants {
    pub m0: u64,
    pub n: u64,
    pub m: u64,
    /// True when `(n, m)` differ from the table construction.
    pub mismatch: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessConstants {
    pub q0: u64,
    pub k0: u64,
    pub m4: u64,
    pub m2: u64,
    pub m1_odd: u64,
    pub m5: Option<u64>,
    pub m3: Option<u64>,
    pub m1_even: Option<u64>,
    pub m1: u64,
    pub n: u64,
    pub m: u64,
    pub coarse: CoarseConstants,
}

/// Column header of the constants table.
pub const TABLE_HEADER: &str = "q0\tM4\tM2\tM1_odd\tM5\tM3\tM1_even\tM1\tn\tm";

impl SmoothnessConstants {
    pub fn tsv_row(&self) -> String {
        let opt = |x: Option<u64>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.q0,
            self.m4,
            self.m2,
            self.m1_odd,
            opt(self.m5),
            opt(self.m3),
            opt(self.m1_even),
            self.m1,
            self.n,
            self.m
        )
    }
}

/// `M4` = `(k0-1)`-th A-good prime, `M5` = `(k0-2)`-th prime that is both A-
/// and B-good, `M2 = M4 - k0`, `M3 = 2 M5 - k0`, `M1 = max(M4, 2 M5)`,
/// `n = M1`, `m = 14 M1`, with `k0 = (q0+1)/2`.
pub fn smoothness_constants(q0: u64) -> Result<SmoothnessConstants, PrimeError> {
    if q0 < 3 || q0.is_multiple_of(2) {
        return Err(PrimeError::BadQ0(q0));
    }
    let k0 = q0.div_ceil(2);
    let need_a = (k0 - 1) as usize;
    let need_both = (k0 - 1) as usize;
    let mut a_list: Vec<u64> = Vec::new();
    let mut both_list: Vec<u64> = Vec::new();
    let mut q = q0;
    while a_list.len() < need_a || both_list.len() < need_both {
        q = next_prime(q);
        let a = is_a_good(q, q0)?;
        if a {
            if a_list.len() < need_a {
                a_list.push(q);
            }
            if both_list.len() < need_both && is_b_good(q, q0)? {
                both_list.push(q);
            }
        }
    }
    let m4 = a_list[need_a - 1];
    let m2 = m4 - k0;
    let m5 = if k0 >= 3 {
        Some(both_list[(k0 - 3) as usize])
    } else {
        None
    };
    let m3 = m5.map(|v| 2 * v - k0);
    let m1_even = m5.map(|v| 2 * v);
    let m1 = m4.max(m1_even.unwrap_or(0));
    let m0 = both_list[need_both - 1];
    let coarse_n = 2 * m0;
    let coarse_m = 28 * m0;
    Ok(SmoothnessConstants {
        q0,
        k0,
        m4,
        m2,
        m1_odd: m4,
        m5,
        m3,
        m1_even,
        m1,
        n: m1,
        m: 14 * m1,
        coarse: CoarseConstants {
            m0,
            n: coarse_n,
            m: coarse_m,
            mismatch: coarse_n != m1 || coarse_m != 14 * m1,
        },
    })
}

/// Largest prime factor of every `n <= max`, with `P(1) = 1` and `P(0) = 0`.
pub fn largest_prime_factors(max: usize) -> Vec<u32> {
    let mut lpf = vec![0u32; max + 1];
    if max >= 1 {
        lpf[1] = 1;
    }
    for p in 2..=max {
        if lpf[p] == 0 {
            for m in (p..=max).step_by(p) {
                lpf[m] = p as u32;
            }
        }
    }
    lpf
}

/// Number of `1 <= n <= x` whose largest prime factor is at most `y`.
pub fn psi_count(x: u64, y: u64) -> u64 {
    let lpf = largest_prime_factors(x as usize);
    lpf.iter().skip(1).filter(|&&p| p as u64 <= y).count() as u64
}

/// Number of odd `1 <= n <= x` whose largest prime factor is at most `t`.
pub fn psi_odd(x: u64, t: u64) -> u64 {
    let lpf = largest_prime_factors(x as usize);
    lpf.iter()
        .enumerate()
        .skip(1)
        .step_by(2)
        .filter(|(_, &p)| p as u64 <= t)
        .count() as u64
}

/// Cumulative smooth counts for fixed `y`: entry `x` is `psi_count(x, y)`.
pub fn psi_prefix(lpf: &[u32], y: u64, odd_only: bool) -> Vec<u64> {
    let mut out = Vec::with_capacity(lpf.len());
    let mut acc = 0u64;
    for (n, &p) in lpf.iter().enumerate() {
        if n >= 1 && p as u64 <= y && (!odd_only || n % 2 == 1) {
            acc += 1;
        }
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_examples() {
        assert_eq!(symmetric_closure(5, &[1]).unwrap(), vec![1, 4]);
        assert_eq!(
            symmetric_closure(7, &[1, 2]).unwrap(),
            vec![1, 2, 3, 4, 5, 6]
        );
        assert_eq!(symmetric_closure(5, &[1, 2]).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(symmetric_closure_order(7, &[1, 2]).unwrap(), 6);
        assert!(symmetric_closure(9, &[1]).is_err());
        assert!(symmetric_closure(7, &[]).is_err());
        assert!(symmetric_closure(7, &[7]).is_err());
    }

    #[test]
    fn good_prime_examples() {
        assert!(!is_a_good(5, 3).unwrap());
        assert!(is_a_good(7, 3).unwrap());
        assert!(is_a_good(11, 5).unwrap());
        assert!(is_a_good(13, 5).unwrap());
        assert!(is_b_good(11, 5).unwrap());
        assert!(!is_a_good(7, 5).unwrap());
        assert!(is_a_good(3, 5).is_err());
        assert!(is_a_good(15, 5).is_err());
    }

    #[test]
    fn c_good_examples() {
        assert!(is_c_good(5, 3).unwrap());
        assert!(is_c_good(7, 3).unwrap());
        assert!(is_c_good(8, 3).is_err());
        assert!(is_c_good(7, 2).is_err());
    }

    #[test]
    fn sufficient_examples() {
        assert!(sufficient_condition(23, 5).unwrap());
        assert!(is_a_good(23, 5).unwrap());
        assert!(!sufficient_condition(13, 5).unwrap());
        assert!(sufficient_condition(11, 3).unwrap());
        assert!(is_safe_prime(11));
        assert!(!is_safe_prime(13));
    }

    #[test]
    fn small_constants() {
        let c = smoothness_constants(3).unwrap();
        assert_eq!((c.m4, c.m2, c.m1, c.n, c.m), (7, 5, 7, 7, 98));
        assert_eq!(c.m5, None);
        assert_eq!(c.tsv_row(), "3\t7\t5\t7\t-\t-\t-\t7\t7\t98");
        let c = smoothness_constants(9).unwrap();
        assert_eq!((c.n, c.m), (58, 812));
        assert!(smoothness_constants(4).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_count(10, 1), 1);
        assert_eq!(psi_count(30, 5), 18);
        assert_eq!(psi_odd(12, 3), 3);
        assert_eq!(psi_count(12, 3) - psi_count(6, 3), 3);
    }
}
