//! Dense row reduction over GF(q). Rows are `Vec<u32>` of equal width.

use crate::ffield::BaseField;

pub type Row = Vec<u32>;

/// Brings `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot columns, strictly increasing.
pub fn rref(k: &BaseField, rows: &mut Vec<Row>) -> Vec<usize> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        if top == rows.len() {
            break;
        }
        let Some(found) = (top..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(top, found);
        let inv = k.inv(rows[top][col]);
        if inv != 1 {
            for v in rows[top].iter_mut() {
                *v = k.mul(*v, inv);
            }
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top {
                continue;
            }
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (v, &p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v = k.sub(*v, k.mul(f, p));
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

pub fn rank(k: &BaseField, rows: &[Row]) -> usize {
    let mut m = rows.to_vec();
    rref(k, &mut m).len()
}

/// Reduces `v` against an RREF basis with the given pivots; the result is
/// zero iff `v` lies in the row space.
pub fn reduce(k: &BaseField, basis: &[Row], pivots: &[usize], v: &mut [u32]) {
    for (row, &col) in basis.iter().zip(pivots) {
        let f = v[col];
        if f == 0 {
            continue;
        }
        for (x, &b) in v.iter_mut().zip(row).skip(col) {
            *x = k.sub(*x, k.mul(f, b));
        }
    }
}

/// Pivot columns of a matrix already in RREF.
pub fn pivots_of(rows: &[Row]) -> Vec<usize> {
    rows.iter()
        .map(|r| r.iter().position(|&c| c != 0).expect("zero row in echelon basis"))
        .collect()
}

/// Basis (in RREF) of the left kernel {c : Σ c_i rows_i = 0}.
pub fn left_kernel(k: &BaseField, rows: &[Row]) -> Vec<Row> {
    let m = rows.len();
    let width = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Row> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..m).map(|j| u32::from(i == j)));
            row
        })
        .collect();
    rref(k, &mut aug);
    let mut kernel: Vec<Row> = aug
        .into_iter()
        .filter(|r| r[..width].iter().all(|&c| c == 0))
        .map(|r| r[width..].to_vec())
        .collect();
    rref(k, &mut kernel);
    kernel
}

/// Zassenhaus: a basis of rowspace(u) ∩ rowspace(w), in RREF.
pub fn intersect(k: &BaseField, u: &[Row], w: &[Row]) -> Vec<Row> {
    let width = u.first().or(w.first()).map_or(0, |r| r.len());
    if u.is_empty() || w.is_empty() {
        return Vec::new();
    }
    let mut m: Vec<Row> = u
        .iter()
        .map(|r| r.iter().chain(r.iter()).copied().collect())
        .chain(w.iter().map(|r| r.iter().copied().chain(std::iter::repeat_n(0, width)).collect()))
        .collect();
    rref(k, &mut m);
    let mut out: Vec<Row> = m
        .into_iter()
        .filter(|r| r[..width].iter().all(|&c| c == 0))
        .map(|r| r[width..].to_vec())
        .collect();
    rref(k, &mut out);
    out
}
