//! Row reduction over a commutative field given as a [`Ring`].
//!
//! Elimination is fraction-free (`row_k <- p * row_k - a * row_pivot`) with
//! the first nonzero entry of a column as pivot; pivot rows are normalized
//! only at the end. The pivot choice is deterministic so that bases reported
//! in certificates are reproducible.

use alloc::vec::Vec;

use crate::ring::{Ring, Value};

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// columns.
pub fn rref(field: &Ring, mut rows: Vec<Vec<Value>>) -> (Vec<Vec<Value>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(found) = (r..rows.len()).find(|&k| !field.is_zero(&rows[k][col])) else {
            continue;
        };
        rows.swap(r, found);
        let pivot = rows[r][col].clone();
        for k in 0..rows.len() {
            if k == r || field.is_zero(&rows[k][col]) {
                continue;
            }
            let a = rows[k][col].clone();
            let updated: Vec<Value> = rows[k]
                .iter()
                .zip(&rows[r])
                .map(|(x, y)| field.sub(&field.mul(&pivot, x), &field.mul(&a, y)))
                .collect();
            rows[k] = updated;
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    for (row, &col) in rows.iter_mut().zip(&pivots) {
        let inv = field.inverse(&row[col]).expect("nonzero pivot in a field");
        for x in row.iter_mut() {
            *x = field.mul(&inv, x);
        }
    }
    (rows, pivots)
}

pub fn rank(field: &Ring, rows: Vec<Vec<Value>>) -> usize {
    rref(field, rows).1.len()
}

/// Basis of `{v : M v = 0}` for `M` given by rows with `ncols` columns.
pub fn nullspace(field: &Ring, rows: Vec<Vec<Value>>, ncols: usize) -> Vec<Vec<Value>> {
    let (reduced, pivots) = if rows.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        rref(field, rows)
    };
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v: Vec<Value> = (0..ncols).map(|_| field.zero()).collect();
            v[free] = field.one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = field.neg(&row[free]);
            }
            v
        })
        .collect()
}
