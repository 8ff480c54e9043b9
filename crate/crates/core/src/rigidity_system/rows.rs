//! Equation rows of the caustic-preservation systems and the admissibility
//! rule shared by both parities.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact_core::arith::gcd;
use crate::exact_core::rational::{int, rat};
use crate::exact_core::{canonical_cos, TensorAlgebraic};

use super::RigidityError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    /// `v_{p/(2k+1)}` on odd harmonics.
    Odd,
    /// `v_{p/(2k)}` with `p` odd.
    EvenHalf,
    /// `v_{(2p)/(2k)}`, from the caustic `p/k`.
    EvenFull,
}

/// Identifies a row by kind, the index `k` and the numerator `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowId {
    pub kind: RowKind,
    pub k: u64,
    pub p: u64,
}

impl RowId {
    pub fn new(kind: RowKind, k: u64, p: u64) -> Self {
        RowId { kind, k, p }
    }

    /// Denominator of the caustic's rotation number.
    pub fn q_den(&self) -> u64 {
        match self.kind {
            RowKind::Odd => 2 * self.k + 1,
            RowKind::EvenHalf => 2 * self.k,
            RowKind::EvenFull => self.k,
        }
    }

    /// `N(k)`, the number of sub-leading terms for target index `m`.
    pub fn n_terms(&self, m: u64) -> Option<u64> {
        match self.kind {
            RowKind::Odd => (self.k >= m).then(|| self.k + 1 - m),
            _ => self.k.checked_sub(m),
        }
    }

    pub fn in_lowest_terms(&self) -> bool {
        self.p >= 1 && gcd(self.p, self.q_den()) == 1
    }

    /// `(a, n)` with `u = (1 + cos(2*pi*a/n)) / 2`.
    pub fn cos_angle(&self) -> (u64, u64) {
        match self.kind {
            RowKind::Odd => (self.p, 2 * self.k + 1),
            RowKind::EvenHalf => (self.p, 2 * self.k),
            RowKind::EvenFull => (self.p, self.k),
        }
    }

    /// Column indices from the leading variable downwards.
    pub fn variable(&self, j: u64) -> u64 {
        match self.kind {
            RowKind::Odd => 2 * self.k + 1 - 2 * j,
            _ => 2 * self.k - 2 * j,
        }
    }

    /// Binomial factor of the `j`-th sub-leading entry.
    pub fn binomial_factor(&self, j: u64) -> u64 {
        let top = match self.kind {
            RowKind::Odd => 2 * self.k - j,
            _ => 2 * self.k - j - 1,
        };
        binom_u64(top, j)
    }
}

fn binom_u64(n: u64, k: u64) -> u64 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

impl fmt::Display for RowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RowKind::Odd => write!(f, "v_{}/{}", self.p, 2 * self.k + 1),
            RowKind::EvenHalf => write!(f, "v_{}/{}", self.p, 2 * self.k),
            RowKind::EvenFull => write!(f, "v_{}/{}", 2 * self.p, 2 * self.k),
        }
    }
}

/// Column label, e.g. `x_5`.
pub fn var_label(i: u64) -> String {
    format!("x_{i}")
}

/// Central admissibility rule: lowest terms, rotation number below `1/q0`,
/// a nonnegative term count, and the window `q > 2N` (`q > N` for the
/// even-full rows, which come from the doubled frequency).
pub fn admissible(id: &RowId, q0: u64, m: u64) -> bool {
    let Some(n) = id.n_terms(m) else {
        return false;
    };
    let q = id.q_den();
    let window = match id.kind {
        RowKind::EvenFull => q > n,
        _ => q > 2 * n,
    };
    id.in_lowest_terms() && id.p * q0 < q && window && m >= 1
}

/// The algebraic value `(1 + cos(2*pi*a/n)) / 2` of a row.
pub fn row_u(id: &RowId) -> Result<TensorAlgebraic, RigidityError> {
    let (a, n) = id.cos_angle();
    let c = TensorAlgebraic::from_spec(&canonical_cos(a as i64, n))?;
    Ok(c.add(&TensorAlgebraic::one()).scale(&rat(1, 2)))
}

/// One row of the system: coefficients indexed by harmonic number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationRow {
    pub id: RowId,
    pub m_target: u64,
    pub coeffs: BTreeMap<u64, TensorAlgebraic>,
}

impl EquationRow {
    pub fn kind(&self) -> RowKind {
        self.id.kind
    }

    pub fn q_den(&self) -> u64 {
        self.id.q_den()
    }

    pub fn p_num(&self) -> u64 {
        self.id.p
    }

    pub fn coeff(&self, var: u64) -> TensorAlgebraic {
        self.coeffs
            .get(&var)
            .cloned()
            .unwrap_or_else(TensorAlgebraic::zero)
    }

    /// Floating-point evaluation of every entry.
    pub fn to_f64(&self) -> BTreeMap<u64, f64> {
        self.coeffs.iter().map(|(&v, c)| (v, c.to_f64())).collect()
    }
}

fn build_row(id: RowId, m: u64) -> Result<EquationRow, RigidityError> {
    if !id.in_lowest_terms() {
        return Err(RigidityError::NotReduced {
            p: id.p,
            q: id.q_den(),
        });
    }
    let n = id
        .n_terms(m)
        .filter(|_| m >= 1)
        .ok_or(RigidityError::BadTarget { k: id.k, m })?;
    let u = row_u(&id)?;
    let mut powers = vec![TensorAlgebraic::one()];
    for i in 1..=n as usize {
        let next = powers[i - 1].mul(&u);
        powers.push(next);
    }
    let mut coeffs = BTreeMap::new();
    for j in 0..=n {
        let c = powers[(n - j) as usize].scale(&int(id.binomial_factor(j) as i64));
        coeffs.insert(id.variable(j), c);
    }
    Ok(EquationRow {
        id,
        m_target: m,
        coeffs,
    })
}

/// `v_{p/(2k+1)}`: the coefficient of `x_{2k+1-2j}` is
/// `C(2k-j, j) ((c+1)/2)^{N-j}` with `c = cos(2p*pi/(2k+1))`, `N = k-m+1`.
pub fn build_odd_row(k: u64, p: u64, m: u64) -> Result<EquationRow, RigidityError> {
    if p == 0 || p > 2 * k {
        return Err(RigidityError::OutOfRange(format!(
            "p={p} for q={}",
            2 * k + 1
        )));
    }
    build_row(RowId::new(RowKind::Odd, k, p), m)
}

/// A single even row; the coefficient of `x_{2k-2j}` is
/// `C(2k-j-1, j) u^{N-j}` with `N = k-m`.
pub fn build_even_row(kind: RowKind, k: u64, p: u64, m: u64) -> Result<EquationRow, RigidityError> {
    if kind == RowKind::Odd {
        return Err(RigidityError::OutOfRange("odd kind in an even row".into()));
    }
    build_row(RowId::new(kind, k, p), m)
}

/// Row identifiers at index `k` with rotation number below `1/2`: half rows
/// `p/(2k)` for odd `p < k` and full rows `p/k` for `p < k/2`.
pub fn even_row_ids(k: u64) -> Vec<RowId> {
    let mut ids = Vec::new();
    for p in (1..k).step_by(2) {
        let id = RowId::new(RowKind::EvenHalf, k, p);
        if id.in_lowest_terms() {
            ids.push(id);
        }
    }
    for p in 1..k.div_ceil(2) {
        let id = RowId::new(RowKind::EvenFull, k, p);
        if id.in_lowest_terms() {
            ids.push(id);
        }
    }
    ids
}

/// Odd row identifiers at index `k` with rotation number below `1/2`.
pub fn odd_row_ids(k: u64) -> Vec<RowId> {
    (1..=k)
        .map(|p| RowId::new(RowKind::Odd, k, p))
        .filter(RowId::in_lowest_terms)
        .collect()
}

/// All even rows at index `k` (see [`even_row_ids`]).
pub fn build_even_rows(k: u64, m: u64) -> Result<Vec<EquationRow>, RigidityError> {
    even_row_ids(k)
        .into_iter()
        .map(|id| build_row(id, m))
        .collect()
}

/// Same row assembled from floating-point cosines.
pub fn row_numeric(id: &RowId, m: u64) -> Result<BTreeMap<u64, f64>, RigidityError> {
    let n = id
        .n_terms(m)
        .ok_or(RigidityError::BadTarget { k: id.k, m })?;
    let (a, q) = id.cos_angle();
    let u = (1.0 + (2.0 * std::f64::consts::PI * a as f64 / q as f64).cos()) / 2.0;
    Ok((0..=n)
        .map(|j| {
            (
                id.variable(j),
                id.binomial_factor(j) as f64 * u.powi((n - j) as i32),
            )
        })
        .collect())
}
