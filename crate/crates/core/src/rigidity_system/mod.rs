//! Caustic-preservation linear systems over cosine fields: row assembly,
//! exact kernel dimensions with certificates, and the algebraic checks
//! behind the rank-drop argument.

pub mod checks;
pub mod kernel;
pub mod rows;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_core::arith::is_prime;
use crate::exact_core::{ExactError, TensorAlgebraic};
use crate::prime_select::{is_a_good, is_b_good, smoothness_constants, PrimeError};

pub use checks::{
    automorphism_orbit_check, chebyshev_kernel_check, example2_check, kernel_sum_vanishes,
    prime_step_vandermonde, scaling_chain_check, Example2Certificate,
};
pub use kernel::{kernel_dim, numeric_kappa, Elimination, KernelInfo};
pub use rows::{
    admissible, build_even_row, build_even_rows, build_odd_row, even_row_ids, odd_row_ids,
    row_numeric, row_u, var_label, EquationRow, RowId, RowKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RigidityError {
    #[error("{p}/{q} is not in lowest terms")]
    NotReduced { p: u64, q: u64 },
    #[error("row index k={k} is below the target m={m}")]
    BadTarget { k: u64, m: u64 },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("q0 must be odd and at least 3, got {0}")]
    BadQ0(u64),
    #[error("m={m} outside 1..={max}")]
    BadM { m: u64, max: u64 },
    #[error("h_max={h_max} exceeds the admissible bound {bound}")]
    HmaxTooLarge { h_max: u64, bound: u64 },
    #[error("kernel dimension grew at h={h} with no excluded rows")]
    KappaIncrease { h: u64 },
    #[error("kernel dimension did not drop at the good prime step h={h}")]
    DropViolation { h: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("automorphism index {r} has no inverse modulo {q}")]
    NoInverse { r: u64, q: u64 },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Prime(#[from] PrimeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = RigidityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            other => Err(RigidityError::OutOfRange(format!("mode {other:?}"))),
        }
    }
}

/// `S_h`: the admissible rows with index at most `h`.
#[derive(Debug, Clone)]
pub struct RigiditySystem {
    pub q0: u64,
    pub parity: Parity,
    pub m_target: u64,
    pub h: u64,
    pub rows: Vec<EquationRow>,
    /// Admissible rows left out because their cosine field is not supported.
    pub excluded: Vec<RowId>,
}

/// `k0` with `q0 = 2 k0 - 1`.
pub fn k0_of(q0: u64) -> Result<u64, RigidityError> {
    if q0 < 3 || q0.is_multiple_of(2) {
        return Err(RigidityError::BadQ0(q0));
    }
    Ok(q0.div_ceil(2))
}

/// Candidate identifiers at index `k` for a parity, before admissibility.
pub fn row_ids(parity: Parity, k: u64) -> Vec<RowId> {
    match parity {
        Parity::Odd => odd_row_ids(k),
        Parity::Even => even_row_ids(k),
    }
}

impl RigiditySystem {
    pub fn build(q0: u64, parity: Parity, m: u64, h: u64) -> Result<Self, RigidityError> {
        k0_of(q0)?;
        if m == 0 {
            return Err(RigidityError::BadM { m, max: h });
        }
        let mut rows = Vec::new();
        let mut excluded = Vec::new();
        let mut seen = BTreeSet::new();
        for k in m..=h {
            for id in row_ids(parity, k) {
                if !admissible(&id, q0, m) || !seen.insert(id) {
                    continue;
                }
                let built = match parity {
                    Parity::Odd => build_odd_row(id.k, id.p, m),
                    Parity::Even => build_even_row(id.kind, id.k, id.p, m),
                };
                match built {
                    Ok(r) => rows.push(r),
                    Err(RigidityError::Exact(ExactError::UnsupportedConductor(_))) => {
                        excluded.push(id)
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(RigiditySystem {
            q0,
            parity,
            m_target: m,
            h,
            rows,
            excluded,
        })
    }

    /// Harmonic indices of the unknowns, ascending.
    pub fn variables(&self) -> Vec<u64> {
        match self.parity {
            Parity::Odd => (self.m_target..=self.h)
                .map(|k| 2 * k - 1)
                .chain([2 * self.h + 1])
                .collect(),
            Parity::Even => (self.m_target..=self.h).map(|k| 2 * k).collect(),
        }
    }

    /// Dense matrix in the column order of [`RigiditySystem::variables`].
    pub fn matrix(&self) -> Vec<Vec<TensorAlgebraic>> {
        let vars = self.variables();
        self.rows
            .iter()
            .map(|r| vars.iter().map(|&v| r.coeff(v)).collect())
            .collect()
    }
}

/// Whether step `h` is one where the kernel must drop.
pub fn is_prime_step(parity: Parity, q0: u64, h: u64) -> Result<bool, RigidityError> {
    let q = match parity {
        Parity::Odd => 2 * h + 1,
        Parity::Even => h,
    };
    if q <= q0 || !is_prime(q) {
        return Ok(false);
    }
    Ok(match parity {
        Parity::Odd => is_a_good(q, q0)?,
        Parity::Even => is_a_good(q, q0)? && is_b_good(q, q0)?,
    })
}

/// Largest admissible step, `floor((k0 + M)/2)` with `M = M2` (odd) or `M3` (even).
pub fn h_bound(q0: u64, parity: Parity) -> Result<u64, RigidityError> {
    let c = smoothness_constants(q0)?;
    let m = match parity {
        Parity::Odd => c.m2,
        Parity::Even => {
            c.m3.ok_or_else(|| RigidityError::OutOfRange(format!("no even constants for q0={q0}")))?
        }
    };
    Ok((c.k0 + m) / 2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub h: u64,
    pub rows: usize,
    pub variables: usize,
    pub kappa: usize,
    pub prime_step: bool,
    pub excluded: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub h: u64,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub determinant: String,
    pub determinant_numeric: String,
    pub second_pass_nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelCertificate {
    pub q0: u64,
    pub mode: Parity,
    pub m: u64,
    pub h_start: u64,
    pub h_max: u64,
    pub steps: Vec<StepRecord>,
    pub h_final: Option<u64>,
    pub witness: Option<Witness>,
}

impl KernelCertificate {
    pub fn kappas(&self) -> Vec<(u64, usize)> {
        self.steps.iter().map(|s| (s.h, s.kappa)).collect()
    }
}

/// Runs `h = k0, k0+1, ...` until the kernel vanishes or `h_max` is reached.
/// The terminal step carries a nonzero maximal minor, re-evaluated by the
/// independent determinant routine.
pub fn run_reduction(
    q0: u64,
    parity: Parity,
    m: u64,
    h_max: Option<u64>,
) -> Result<KernelCertificate, RigidityError> {
    let k0 = k0_of(q0)?;
    let max_m = match parity {
        Parity::Odd => k0,
        Parity::Even => k0 - 1,
    };
    if m == 0 || m > max_m {
        return Err(RigidityError::BadM { m, max: max_m });
    }
    let bound = h_bound(q0, parity)?;
    let h_max = match h_max {
        Some(h) if h > bound => return Err(RigidityError::HmaxTooLarge { h_max: h, bound }),
        Some(h) => h,
        None => bound,
    };
    let mut steps = Vec::new();
    let mut prev: Option<usize> = None;
    let mut terminal = None;
    for h in k0..=h_max {
        let sys = RigiditySystem::build(q0, parity, m, h)?;
        let info = kernel_dim(&sys);
        let prime_step = is_prime_step(parity, q0, h)?;
        let new_excluded: Vec<String> = sys
            .excluded
            .iter()
            .filter(|id| id.k == h)
            .map(ToString::to_string)
            .collect();
        if let Some(p) = prev {
            if info.kappa > p && new_excluded.is_empty() {
                return Err(RigidityError::KappaIncrease { h });
            }
            if prime_step && p > 0 && info.kappa >= p {
                return Err(RigidityError::DropViolation { h });
            }
        }
        steps.push(StepRecord {
            h,
            rows: sys.rows.len(),
            variables: sys.variables().len(),
            kappa: info.kappa,
            prime_step,
            excluded: new_excluded,
        });
        prev = Some(info.kappa);
        let done = info.kappa == 0;
        terminal = Some((sys, info));
        if done {
            break;
        }
    }
    let (h_final, witness) = match terminal {
        Some((sys, info)) => {
            let h_final = (info.kappa == 0).then_some(sys.h);
            (h_final, Some(kernel::witness(&sys, &info)))
        }
        None => (None, None),
    };
    Ok(KernelCertificate {
        q0,
        mode: parity,
        m,
        h_start: k0,
        h_max,
        steps,
        h_final,
        witness,
    })
}
