//! Dense exact linear algebra over a coefficient field.

use crate::algebra::Coeff;

/// Row-reduces in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref<C: Coeff>(rows: &mut Vec<Vec<C>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        if !inv.is_one() {
            for v in rows[r].iter_mut().skip(col) {
                *v = v.times(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (c, v) in pivot_row.iter().enumerate().skip(col) {
                if !v.is_zero() {
                    row[c] = row[c].minus(&v.times(&f));
                }
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

pub fn rank<C: Coeff>(rows: &[Vec<C>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// A basis of `{v : A v = 0}` where `A` has `ncols` columns. Each vector
/// has a single free coordinate equal to one.
pub fn nullspace<C: Coeff>(rows: &[Vec<C>], ncols: usize, ctx: &C::Ctx) -> Vec<Vec<C>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![C::zero(ctx); ncols];
        v[free] = C::one(ctx);
        for (row, &p) in m.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = row[free].negate();
            }
        }
        out.push(v);
    }
    out
}

/// Whether two families of vectors span the same space.
pub fn same_span<C: Coeff>(a: &[Vec<C>], b: &[Vec<C>]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    rref(&mut x);
    rref(&mut y);
    x == y
}
