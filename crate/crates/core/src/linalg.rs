//! Row-reduction primitives on plain coordinate vectors.
//!
//! Everything here works on `Vec<Elem>` rows of a fixed width. The
//! matrix and space modules are thin layers over these routines.

use crate::field::{Elem, Field};

pub type Vector = Vec<Elem>;

#[inline]
pub fn is_zero(v: &[Elem]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn dot(f: Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.mul_add(acc, x, y))
}

/// `y += c·x`
#[inline]
pub fn axpy(f: Field, y: &mut [Elem], c: Elem, x: &[Elem]) {
    if c == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = f.mul_add(*yi, c, xi);
    }
}

pub fn scale(f: Field, v: &mut [Elem], c: Elem) {
    for x in v.iter_mut() {
        *x = f.mul(*x, c);
    }
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Brings `rows` to reduced row-echelon form in place, drops zero rows, and
/// returns the pivot columns. Only the first `width` columns are used for
/// pivoting; trailing columns are carried along (augmented systems).
pub fn rref_with_width(f: Field, rows: &mut Vec<Vector>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = f.inv(rows[r][col]);
        scale(f, &mut rows[r], inv);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = f.neg(row[col]);
                axpy(f, row, c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rref(f: Field, rows: &mut Vec<Vector>) -> Vec<usize> {
    let width = rows.first().map_or(0, |r| r.len());
    rref_with_width(f, rows, width)
}

/// Rank of a list of equal-width rows.
pub fn rank_of_rows(f: Field, rows: &[Vector]) -> usize {
    let mut work = rows.to_vec();
    rref(f, &mut work).len()
}

/// Basis of `{x : A x = 0}` for `A` given by its rows, in reduced form: one
/// vector per free column with a 1 there and zeros on the other free columns.
pub fn kernel(f: Field, rows: &[Vector], width: usize) -> Vec<Vector> {
    let mut work: Vec<Vector> = rows.to_vec();
    let pivots = rref_with_width(f, &mut work, width);
    let mut is_pivot = vec![false; width];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..width).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; width];
        v[free] = 1;
        for (row, &p) in work.iter().zip(&pivots) {
            v[p] = f.neg(row[free]);
        }
        basis.push(v);
    }
    // Present the basis in reduced echelon form as well.
    let mut basis_rows = basis;
    rref(f, &mut basis_rows);
    basis_rows
}

/// Particular solution of `A x = b` with free variables set to zero, or
/// `None` when the system is inconsistent.
pub fn solve(f: Field, rows: &[Vector], rhs: &[Elem], width: usize) -> Option<Vector> {
    let mut aug: Vec<Vector> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut v = r.clone();
            v.push(b);
            v
        })
        .collect();
    let pivots = rref_with_width(f, &mut aug, width + 1);
    if pivots.last() == Some(&width) {
        return None;
    }
    let mut x = vec![0; width];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[width];
    }
    Some(x)
}

/// Extends the independent family `vectors` to a basis of `K^n` by appending
/// standard unit vectors in increasing index order. Returns only the added
/// vectors. Panics in debug builds if `vectors` is dependent.
pub fn complete_basis(f: Field, vectors: &[Vector], n: usize) -> Vec<Vector> {
    let mut span: Vec<Vector> = vectors.to_vec();
    let mut current = rref(f, &mut span).len();
    debug_assert_eq!(current, vectors.len(), "family is not independent");
    let mut added = Vec::new();
    for i in 0..n {
        if current == n {
            break;
        }
        let mut trial = span.clone();
        trial.push(unit(n, i));
        let r = rref(f, &mut trial).len();
        if r > current {
            span = trial;
            current = r;
            added.push(unit(n, i));
        }
    }
    added
}

/// Basis of `U ∩ V` for subspaces of `K^n` given by spanning rows.
pub fn intersect(f: Field, u: &[Vector], v: &[Vector], n: usize) -> Vec<Vector> {
    // Solve a·U = b·V; the kernel of [U; -V]ᵀ yields the coefficients.
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    let k = u.len() + v.len();
    let rows: Vec<Vector> = (0..n)
        .map(|c| {
            let mut row = Vec::with_capacity(k);
            row.extend(u.iter().map(|x| x[c]));
            row.extend(v.iter().map(|x| f.neg(x[c])));
            row
        })
        .collect();
    let mut out: Vec<Vector> = kernel(f, &rows, k)
        .into_iter()
        .map(|coef| {
            let mut w = vec![0; n];
            for (c, x) in coef[..u.len()].iter().zip(u) {
                axpy(f, &mut w, *c, x);
            }
            w
        })
        .collect();
    rref(f, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one_rows() {
        let f = Field::new(3).unwrap();
        let k = kernel(f, &[vec![1, 1, 0]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(f, &[1, 1, 0], v), 0);
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let f = Field::new(5).unwrap();
        let rows = vec![vec![1, 2], vec![2, 4]];
        assert!(solve(f, &rows, &[1, 3], 2).is_none());
        let x = solve(f, &rows, &[1, 2], 2).unwrap();
        assert_eq!(dot(f, &rows[0], &x), 1);
    }

    #[test]
    fn completion_spans() {
        let f = Field::new(2).unwrap();
        let v = vec![vec![1, 1, 0, 0]];
        let added = complete_basis(f, &v, 4);
        assert_eq!(added.len(), 3);
        let mut all = v.clone();
        all.extend(added);
        assert_eq!(rank_of_rows(f, &all), 4);
    }

    #[test]
    fn intersection_of_planes() {
        let f = Field::new(3).unwrap();
        let u = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let v = vec![vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(intersect(f, &u, &v, 3), vec![vec![0, 1, 0]]);
    }
}
