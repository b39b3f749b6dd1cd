//! Sparse exact row reduction over ℚ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

pub(crate) type SparseRow = BTreeMap<usize, Rational>;

/// Reduced row echelon form with columns scanned in index order.
///
/// Among candidate rows for a pivot column the sparsest one is taken, ties
/// broken by position. Returns the nonzero rows and their pivot columns.
pub(crate) fn rref(rows: Vec<SparseRow>, ncols: usize) -> (Vec<SparseRow>, Vec<usize>) {
    let mut pending: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut reduced: Vec<SparseRow> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let candidate = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| r.keys().next() == Some(&col))
            .min_by_key(|(i, r)| (r.len(), *i))
            .map(|(i, _)| i);
        let Some(idx) = candidate else { continue };
        let mut pivot = pending.swap_remove(idx);
        let inv = Rational::one() / &pivot[&col];
        for v in pivot.values_mut() {
            *v *= &inv;
        }
        for row in pending.iter_mut().chain(reduced.iter_mut()) {
            eliminate(row, &pivot, col);
        }
        pending.retain(|r| !r.is_empty());
        reduced.push(pivot);
        pivots.push(col);
    }
    (reduced, pivots)
}

fn eliminate(row: &mut SparseRow, pivot: &SparseRow, col: usize) {
    let Some(factor) = row.get(&col).cloned() else { return };
    for (c, v) in pivot {
        let entry = row.entry(*c).or_insert_with(Rational::zero);
        *entry -= &factor * v;
        if entry.is_zero() {
            row.remove(c);
        }
    }
}

/// Basis of the right kernel, one vector per free column (in column order).
pub(crate) fn nullspace(rows: Vec<SparseRow>, ncols: usize) -> Vec<SparseRow> {
    let (reduced, pivots) = rref(rows, ncols);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = SparseRow::new();
            v.insert(free, Rational::one());
            for (row, &p) in reduced.iter().zip(&pivots) {
                if let Some(a) = row.get(&free) {
                    v.insert(p, -a.clone());
                }
            }
            v
        })
        .collect()
}
