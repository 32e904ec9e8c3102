//! Dense row reduction over an exact field.

use super::field::Field;

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][col]).expect("pivot is nonzero");
        for c in rows[r].iter_mut() {
            *c = field.mul(c, &inv);
        }
        for i in 0..rows.len() {
            if i == r || field.is_zero(&rows[i][col]) {
                continue;
            }
            let factor = rows[i][col].clone();
            let pivot_row = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                *x = field.sub(x, &field.mul(&factor, y));
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut rows = rows.to_vec();
    rref(field, &mut rows).len()
}

/// Solves `sum_k x_k * columns[k] = target`. Returns one solution (free
/// unknowns set to zero) or `None` if the system is inconsistent.
pub fn solve<F: Field>(field: &F, columns: &[Vec<F::Elem>], target: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = columns.len();
    let mut rows: Vec<Vec<F::Elem>> = (0..target.len())
        .map(|e| {
            let mut row: Vec<_> = columns.iter().map(|c| c[e].clone()).collect();
            row.push(target[e].clone());
            row
        })
        .collect();
    let pivots = rref(field, &mut rows);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![field.zero(); n];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}
