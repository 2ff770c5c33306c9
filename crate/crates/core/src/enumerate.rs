//! Combinatorial enumeration over `K^n`: vectors, normalized functionals and
//! Grassmannians (as reduced echelon bases).

use std::ops::ControlFlow;

use crate::field::{Elem, Field};
use crate::linalg::Vector;

/// Number of `k`-dimensional subspaces of `GF(q)^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(q.pow((i + 1) as u32) - 1);
    }
    num / den
}

/// Number of members of a `d`-dimensional space over GF(q), saturating.
pub fn space_size(q: u32, d: usize) -> u128 {
    (q as u128).saturating_pow(d as u32)
}

/// Writes the base-`q` digits of `code` into `out` (least significant last).
pub fn decode(q: u32, mut code: u128, out: &mut [Elem]) {
    for x in out.iter_mut().rev() {
        *x = (code % q as u128) as Elem;
        code /= q as u128;
    }
}

/// Visits every vector of `K^n` in lexicographic order.
pub fn for_each_vector<B>(f: Field, n: usize, mut visit: impl FnMut(&[Elem]) -> ControlFlow<B>) -> Option<B> {
    let mut v = vec![0 as Elem; n];
    loop {
        if let ControlFlow::Break(b) = visit(&v) {
            return Some(b);
        }
        if !increment(f, &mut v) {
            return None;
        }
    }
}

/// Lexicographic successor; returns false after the last vector.
pub fn increment(f: Field, v: &mut [Elem]) -> bool {
    let q = f.q() as Elem;
    for x in v.iter_mut().rev() {
        *x += 1;
        if *x < q {
            return true;
        }
        *x = 0;
    }
    false
}

/// All nonzero functionals on `K^n` whose first nonzero entry is 1, in
/// lexicographic order. The first one is `x_n`.
pub fn normalized_functionals(f: Field, n: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for lead in (0..n).rev() {
        let tail = n - lead - 1;
        let mut t = vec![0 as Elem; tail];
        loop {
            let mut v = vec![0 as Elem; n];
            v[lead] = 1;
            v[lead + 1..].copy_from_slice(&t);
            out.push(v);
            if !increment(f, &mut t) {
                break;
            }
        }
    }
    out
}

/// Visits every `k`-dimensional subspace of `K^n` once, as its reduced
/// echelon basis. Pivot sets are taken in lexicographic order.
pub fn for_each_subspace<B>(
    f: Field,
    n: usize,
    k: usize,
    mut visit: impl FnMut(&[Vector]) -> ControlFlow<B>,
) -> Option<B> {
    if k > n {
        return None;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free slots: (row, col) with col > pivot[row] and col not a pivot.
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let p = &pivots;
                (p[r] + 1..n).filter(move |c| !p.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0 as Elem; slots.len()];
        let mut rows: Vec<Vector> = vec![vec![0; n]; k];
        for (r, &p) in pivots.iter().enumerate() {
            rows[r][p] = 1;
        }
        loop {
            for (&(r, c), &d) in slots.iter().zip(&digits) {
                rows[r][c] = d;
            }
            if let ControlFlow::Break(b) = visit(&rows) {
                return Some(b);
            }
            if !increment(f, &mut digits) {
                break;
            }
        }
        if !next_combination(&mut pivots, n) {
            return None;
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 1, 3), 13);
        assert_eq!(gaussian_binomial(5, 0, 7), 1);
        assert_eq!(gaussian_binomial(5, 5, 4), 1);
        assert_eq!(gaussian_binomial(2, 3, 2), 0);
    }

    #[test]
    fn subspace_enumeration_matches_count_and_is_distinct() {
        for q in [2u32, 3, 4] {
            let f = Field::new(q).unwrap();
            for n in 0..=4usize {
                for k in 0..=n {
                    let mut seen = std::collections::HashSet::new();
                    for_each_subspace::<()>(f, n, k, |rows| {
                        let mut w = rows.to_vec();
                        assert_eq!(linalg::rref(f, &mut w).len(), k);
                        assert_eq!(w, rows, "not in reduced form");
                        assert!(seen.insert(rows.to_vec()));
                        ControlFlow::Continue(())
                    });
                    assert_eq!(seen.len() as u128, gaussian_binomial(n, k, q), "n={n} k={k} q={q}");
                }
            }
        }
    }

    #[test]
    fn functionals_cover_projective_space() {
        let f = Field::new(3).unwrap();
        let fs = normalized_functionals(f, 3);
        assert_eq!(fs.len(), 13);
        assert_eq!(fs[0], vec![0, 0, 1]);
        let mut sorted = fs.clone();
        sorted.sort();
        assert_eq!(sorted, fs);
    }

    #[test]
    fn vector_enumeration_count() {
        let f = Field::new(4).unwrap();
        let mut c = 0;
        for_each_vector::<()>(f, 3, |_| {
            c += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(c, 64);
    }
}
