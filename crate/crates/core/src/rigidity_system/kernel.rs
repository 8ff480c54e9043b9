//! Exact rank by division-free elimination, witness minors, and a
//! floating-point rank for experiments that include unsupported rows.

use nalgebra::DMatrix;

use crate::exact_core::rational::content;
use crate::exact_core::{determinant, Rational, TensorAlgebraic};

use super::rows::{var_label, RowId};
use super::{row_ids, rows, Parity, RigiditySystem, Witness};

/// Outcome of eliminating a row matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub rank: usize,
    /// Original row indices of the pivots, in pivot order.
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelInfo {
    pub kappa: usize,
    pub elimination: Elimination,
}

fn cost(x: &TensorAlgebraic) -> (usize, u64) {
    (x.support(), x.size_bits())
}

fn primitive_row(row: &mut [TensorAlgebraic]) {
    let c = content(row.iter().flat_map(|x| x.terms().values()));
    if num_traits::Zero::is_zero(&c) {
        return;
    }
    let inv: Rational = c.recip();
    for x in row.iter_mut() {
        *x = x.scale(&inv);
    }
}

/// Fraction-free Gaussian elimination. Each update is
/// `row_i <- piv * row_i - a * row_p` followed by removing the rational
/// content, so every entry stays in the ring and the rank is exact.
/// Pivots minimize (support, bit size, original index).
pub fn eliminate(matrix: &[Vec<TensorAlgebraic>]) -> Elimination {
    let mut rows: Vec<(usize, Vec<TensorAlgebraic>)> = matrix.iter().cloned().enumerate().collect();
    let ncols = matrix.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    for col in 0..ncols {
        let best = (rank..rows.len())
            .filter(|&r| !rows[r].1[col].is_zero())
            .min_by_key(|&r| (cost(&rows[r].1[col]), rows[r].0));
        let Some(best) = best else {
            continue;
        };
        rows.swap(rank, best);
        let pivot = rows[rank].1.clone();
        let piv = pivot[col].clone();
        for (_, row) in rows.iter_mut().skip(rank + 1) {
            let a = row[col].clone();
            if a.is_zero() {
                continue;
            }
            for c in col..ncols {
                row[c] = piv.mul(&row[c]).sub(&a.mul(&pivot[c]));
            }
            primitive_row(row);
        }
        pivot_rows.push(rows[rank].0);
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Elimination {
        rank,
        pivot_rows,
        pivot_cols,
    }
}

/// `dim ker` of the system's matrix over the tensor field.
pub fn kernel_dim(sys: &RigiditySystem) -> KernelInfo {
    let ncols = sys.variables().len();
    let elimination = eliminate(&sys.matrix());
    KernelInfo {
        kappa: ncols - elimination.rank,
        elimination,
    }
}

/// The maximal nonzero minor named by the pivots, with its determinant from
/// the subset-expansion routine (independent of the elimination).
pub fn witness(sys: &RigiditySystem, info: &KernelInfo) -> Witness {
    let vars = sys.variables();
    let full = sys.matrix();
    let e = &info.elimination;
    let mut rows_sorted = e.pivot_rows.clone();
    rows_sorted.sort_unstable();
    let mut cols_sorted = e.pivot_cols.clone();
    cols_sorted.sort_unstable();
    let minor: Vec<Vec<TensorAlgebraic>> = rows_sorted
        .iter()
        .map(|&r| cols_sorted.iter().map(|&c| full[r][c].clone()).collect())
        .collect();
    let det = if minor.is_empty() {
        TensorAlgebraic::one()
    } else {
        determinant(&minor)
    };
    Witness {
        h: sys.h,
        rows: rows_sorted
            .iter()
            .map(|&r| sys.rows[r].id.to_string())
            .collect(),
        columns: cols_sorted.iter().map(|&c| var_label(vars[c])).collect(),
        determinant: det.to_string(),
        determinant_numeric: format!("{:.15e}", det.to_f64()),
        second_pass_nonzero: !det.is_zero(),
    }
}

/// Floating-point rank deficiency of `S_h`, optionally keeping the rows
/// whose cosine fields the exact arithmetic does not support. Singular
/// values below `1e-12` times the largest count as zero.
pub fn numeric_kappa(
    q0: u64,
    parity: Parity,
    m: u64,
    h: u64,
    include_unsupported: bool,
) -> Result<usize, super::RigidityError> {
    let sys = RigiditySystem::build(q0, parity, m, h)?;
    let vars = sys.variables();
    let mut ids: Vec<RowId> = sys.rows.iter().map(|r| r.id).collect();
    if include_unsupported {
        ids.extend(sys.excluded.iter().copied());
    }
    debug_assert!(ids.iter().all(|id| row_ids(parity, id.k).contains(id)));
    if ids.is_empty() {
        return Ok(vars.len());
    }
    let mut data = Vec::with_capacity(ids.len() * vars.len());
    for id in &ids {
        let row = rows::row_numeric(id, m)?;
        let scale = row.values().fold(0.0_f64, |a, &x| a.max(x.abs()));
        for &v in &vars {
            data.push(row.get(&v).copied().unwrap_or(0.0) / scale);
        }
    }
    let mat = DMatrix::from_row_slice(ids.len(), vars.len(), &data);
    let sv = mat.svd(false, false).singular_values;
    let top = sv.iter().fold(0.0_f64, |a, &x| a.max(x));
    let rank = sv.iter().filter(|&&x| x > 1e-12 * top).count();
    Ok(vars.len() - rank)
}
