//! Lifting a congruence of `P(S)` to one of `S`.
//!
//! Both kinds of lift change only the last basis vector,
//! `f_n = e_n − Σ Y_i e_i`, where `Y` comes from a linear solve: a local map
//! (first kind) or a common right annihilator (second kind).

use super::CongruenceCert;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Vector};
use crate::matrix::Mat;
use crate::models::{alt_dim, sym_dim, CompressionModel, ModelKind};
use crate::space::{solve_local_map, MatSpace, SpaceKind};

fn binom2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

fn model_kind(s: &MatSpace) -> ModelKind {
    if s.kind() == SpaceKind::Alt {
        ModelKind::Alt
    } else {
        ModelKind::Sym
    }
}

fn shear(f: Field, n: usize, y: &[u8]) -> Mat {
    let mut l = Mat::identity(f, n);
    for (i, &yi) in y.iter().enumerate() {
        l.set(n - 1, i, f.neg(yi));
    }
    l
}

fn all_in(s: &MatSpace, p: Option<&Mat>, model: &CompressionModel) -> bool {
    s.basis().iter().all(|m| match p {
        Some(p) => model.pattern_contains(&m.congruent_by(p)),
        None => model.pattern_contains(m),
    })
}

/// First-kind lift: assumes `P(S) ⊆ W_{n−1,0,r}` and returns `L` with
/// `L·S·Lᵀ ⊆ W_{n,0,r}`, or `None` when `C2 ≠ 0`, the local map does not
/// exist, or (sym) the corner cannot be cleared.
pub(crate) fn lift_kind1_core(s: &MatSpace, r: usize) -> Option<Mat> {
    let f = s.field();
    let n = s.n();
    if r >= n {
        return Some(Mat::identity(f, n));
    }
    let last = n - 1;
    // C2 = rows r..n−2 of the last column.
    if s.basis().iter().any(|m| (r..last).any(|i| m.get(i, last) != 0)) {
        return None;
    }
    let lead: Vec<usize> = (0..r).collect();
    let blocks: Vec<Mat> = s.basis().iter().map(|m| m.submatrix(&lead, &lead)).collect();
    let targets: Vec<Vector> = s.basis().iter().map(|m| (0..r).map(|i| m.get(i, last)).collect()).collect();
    let y = if blocks.is_empty() { vec![0; r] } else { solve_local_map(&blocks, &targets)? };
    let l = shear(f, n, &y);
    let model = CompressionModel::new(model_kind(s), n, 0, r).ok()?;
    all_in(s, Some(&l), &model).then_some(l)
}

fn check_p_pattern(s: &MatSpace, s_: usize, t: usize) -> Result<()> {
    let n = s.n();
    if n < 2 {
        return Err(Error::InvalidParams("lifting needs n >= 2".into()));
    }
    let pm = CompressionModel::new(model_kind(s), n - 1, s_, t)
        .map_err(|_| Error::InvalidParams(format!("W_{{{},{s_},{t}}} is not a valid model", n - 1)))?;
    let ps = s.compress_p()?;
    if !all_in(&ps, None, &pm) {
        return Err(Error::InvalidParams(format!("P(S) is not inside {pm}")));
    }
    Ok(())
}

fn kind1(s: &MatSpace, r: usize, kind: SpaceKind, bound: usize) -> Result<Option<CongruenceCert>> {
    if s.kind() != kind {
        return Err(Error::KindMismatch(format!("expected a {} space", kind.name())));
    }
    check_p_pattern(s, 0, r)?;
    let v = s.compress_p()?.dim();
    if v <= bound {
        return Err(Error::DimensionTooSmall(format!("dim P(S) = {v} must exceed {bound}")));
    }
    let model = CompressionModel::new(model_kind(s), s.n(), 0, r)?;
    Ok(lift_kind1_core(s, r).map(|p| CongruenceCert { p, model }))
}

/// First-kind lift for alternating spaces with `P(S) ⊆ WA_{n−1,0,r}`
/// (`r` odd). Requires `dim P(S) > C(r−1,2) + 2`.
pub fn lift_kind1_alt(s: &MatSpace, r: usize) -> Result<Option<CongruenceCert>> {
    kind1(s, r, SpaceKind::Alt, binom2(r.saturating_sub(1)) + 2)
}

/// First-kind lift for symmetric spaces with `P(S) ⊆ WS_{n−1,0,r}`.
/// Requires `dim P(S) > C(r,2) + 2`.
pub fn lift_kind1_sym(s: &MatSpace, r: usize) -> Result<Option<CongruenceCert>> {
    kind1(s, r, SpaceKind::Sym, binom2(r) + 2)
}

/// Outcome of the second-kind core step when it cannot produce a lift.
#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Kind2Failure {
    /// No common right annihilator of `[B | C]` at all.
    NoAnnihilator,
    /// Every annihilator has last entry 0.
    Degenerate,
    /// The shear exists but the trailing entries do not vanish.
    Residual,
}

/// Second-kind lift: assumes `P(S) ⊆ W_{n−1,s,eps}` and returns `L` with
/// `L·S·Lᵀ ⊆ W_{n,s,eps}`.
pub(crate) fn lift_kind2_core(s: &MatSpace, s_: usize, eps: usize) -> std::result::Result<Mat, Kind2Failure> {
    let f = s.field();
    let n = s.n();
    let last = n - 1;
    let sym_odd = s.kind() != SpaceKind::Alt && eps == 1;
    let first_row = if sym_odd { s_ + 1 } else { s_ };
    // T(M) = [B | C] on rows first_row..n−2, B = columns 0..s−1, C = column n−1.
    let mut rows: Vec<Vector> = Vec::new();
    for m in s.basis() {
        for i in first_row..last {
            let mut row: Vector = (0..s_).map(|j| m.get(i, j)).collect();
            row.push(m.get(i, last));
            rows.push(row);
        }
    }
    let ker = linalg::kernel(f, &rows, s_ + 1);
    if ker.is_empty() {
        return Err(Kind2Failure::NoAnnihilator);
    }
    let x = ker.iter().find(|v| v[s_] != 0).ok_or(Kind2Failure::Degenerate)?;
    // Scale to (Y, −1).
    let c = f.neg(f.inv(x[s_]));
    let y: Vector = x[..s_].iter().map(|&v| f.mul(v, c)).collect();
    let mut l = shear(f, n, &y);
    if sym_odd {
        // J(M) on the coordinates {s, n−1}: the space must be spanned by one λuuᵀ.
        let l1 = l.clone();
        let js: Vec<Vector> = s
            .basis()
            .iter()
            .map(|m| {
                let m1 = m.congruent_by(&l1);
                vec![m1.get(s_, s_), m1.get(s_, last), m1.get(last, last)]
            })
            .collect();
        let mut red = js.clone();
        linalg::rref(f, &mut red);
        match red.len() {
            0 => {}
            1 => {
                let j0 = &red[0];
                let (a, b, d) = (j0[0], j0[1], j0[2]);
                if f.sub(f.mul(a, d), f.mul(b, b)) != 0 {
                    return Err(Kind2Failure::Residual);
                }
                // u spans the column space; g1 with uᵀg1 ≠ 0 goes to s, ker uᵀ to n−1.
                let u = if a != 0 || b != 0 { [a, b] } else { [b, d] };
                let (g1, g2) = if u[0] != 0 { ([1, 0], [f.neg(u[1]), u[0]]) } else { ([0, 1], [1, 0]) };
                let mut g = Mat::identity(f, n);
                g.set(s_, s_, g1[0]);
                g.set(s_, last, g1[1]);
                g.set(last, s_, g2[0]);
                g.set(last, last, g2[1]);
                l = g.mul(&l1).expect("square");
            }
            _ => return Err(Kind2Failure::Residual),
        }
    }
    let model = CompressionModel::new(model_kind(s), n, s_, eps).map_err(|_| Kind2Failure::Residual)?;
    if all_in(s, Some(&l), &model) {
        Ok(l)
    } else {
        Err(Kind2Failure::Residual)
    }
}

/// Second-kind lift towards `target = W_{n,s,t}`, assuming
/// `P(S) ⊆ W_{n−1,s,t}`. The dimension hypotheses depend on the kind and
/// on `s`; when they fail the result is `DimensionTooSmall`.
pub fn lift_kind2(s: &MatSpace, target: &CompressionModel) -> Result<Option<CongruenceCert>> {
    if target.kind.space_kind() != s.kind() {
        return Err(Error::KindMismatch(format!("target {target} does not match a {} space", s.kind().name())));
    }
    if target.n != s.n() {
        return Err(Error::ShapeMismatch(format!("target {target} does not match n = {}", s.n())));
    }
    let (n, s_, t) = (target.n, target.s, target.t);
    if s_ == 0 {
        return Err(Error::InvalidParams("second-kind lifts need s >= 1".into()));
    }
    check_p_pattern(s, s_, t)?;
    let v = s.compress_p()?.dim() as i64;
    let (n1, si) = ((n - 1) as i64, s_ as i64);
    let bound: i64 = match (target.kind, s_, t) {
        (ModelKind::Alt, 1, _) => 1,
        (ModelKind::Alt, _, _) => alt_dim(n - 1, s_, 1) as i64 - (n1 - si - 2),
        (ModelKind::Sym, 1, 0) => 2,
        (ModelKind::Sym, 1, _) => 5,
        (ModelKind::Sym, _, 0) => sym_dim(n - 1, s_, 0) as i64 - (n1 - si - 2),
        (ModelKind::Sym, _, _) => sym_dim(n - 1, s_, 1) as i64 - (n1 - si - 4),
    };
    if v <= bound {
        return Err(Error::DimensionTooSmall(format!("dim P(S) = {v} must exceed {bound}")));
    }
    match lift_kind2_core(s, s_, t) {
        Ok(p) => Ok(Some(CongruenceCert { p, model: *target })),
        Err(Kind2Failure::Degenerate) => Err(Error::AnnihilatorDegenerate),
        Err(_) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognize::verify_cert;

    fn f(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    /// Embeds `A ∈ V` at `n` with last column `g(A)` (alternating closure).
    fn embed_alt(fl: Field, n: usize, v: &MatSpace, g: impl Fn(&Mat) -> Vector) -> MatSpace {
        let gens: Vec<Mat> = v
            .basis()
            .iter()
            .map(|a| {
                let c = g(a);
                Mat::from_fn(fl, n, n, |i, j| {
                    if i < n - 1 && j < n - 1 {
                        a.get(i, j)
                    } else if j == n - 1 && i < n - 1 {
                        c[i]
                    } else if i == n - 1 && j < n - 1 {
                        fl.neg(c[j])
                    } else {
                        0
                    }
                })
            })
            .collect();
        MatSpace::make(fl, SpaceKind::Alt, n, &gens).unwrap()
    }

    #[test]
    fn kind1_eliminates_a_linear_column() {
        let fl = f(2);
        let v5 = MatSpace::full(fl, SpaceKind::Alt, 5);
        // Pad V = Mata_5 to 6 × 6 so it sits in WA_{6,0,5}, then embed at 7.
        let padded: Vec<Mat> = v5.basis().iter().map(|a| a.direct_sum(&Mat::zeros(fl, 1, 1))).collect();
        let v = MatSpace::make(fl, SpaceKind::Alt, 6, &padded).unwrap();
        let s = embed_alt(fl, 7, &v, |a| a.col(1));
        let cert = lift_kind1_alt(&s, 5).unwrap().expect("lift exists");
        assert!(verify_cert(&s, &cert));
        assert_eq!(cert.model, CompressionModel::alt(7, 0, 5).unwrap());
        // Y = e_2 (0-based 1).
        assert_eq!(cert.p.row(6), &[0, 1, 0, 0, 0, 0, 1]);

        let zero = embed_alt(fl, 7, &v, |_| vec![0; 6]);
        assert_eq!(lift_kind1_alt(&zero, 5).unwrap().unwrap().p, Mat::identity(fl, 7));
    }

    #[test]
    fn kind1_rejects_incompatible_column() {
        let fl = f(3);
        let v5 = MatSpace::full(fl, SpaceKind::Alt, 5);
        let padded: Vec<Mat> = v5.basis().iter().map(|a| a.direct_sum(&Mat::zeros(fl, 1, 1))).collect();
        let v = MatSpace::make(fl, SpaceKind::Alt, 6, &padded).unwrap();
        // The first basis member gets a column outside its range.
        let first = v.basis()[0].clone();
        let s = embed_alt(fl, 7, &v, |a| if *a == first { linalg::unit(6, 4) } else { vec![0; 6] });
        let rng: Vec<Vector> = first.row_vectors();
        assert!(linalg::rank_of_rows(fl, &[rng, vec![linalg::unit(6, 4)]].concat()) > first.rank());
        assert_eq!(lift_kind1_alt(&s, 5).unwrap(), None);
    }

    #[test]
    fn kind1_dimension_hypothesis() {
        let fl = f(3);
        let v = MatSpace::make(fl, SpaceKind::Alt, 4, &[Mat::alt_unit(fl, 4, 0, 1)]).unwrap();
        assert!(matches!(lift_kind1_alt(&v, 3), Err(Error::DimensionTooSmall(_))));
    }

    #[test]
    fn kind2_identity_on_models() {
        for (q, kind, n, s_, t) in [(3, ModelKind::Alt, 6, 2, 1), (5, ModelKind::Sym, 6, 2, 0), (3, ModelKind::Sym, 8, 2, 1)] {
            let fl = f(q);
            let m = CompressionModel::new(kind, n, s_, t).unwrap();
            let s = m.space(fl).unwrap();
            let cert = lift_kind2(&s, &m).unwrap().unwrap();
            assert!(verify_cert(&s, &cert));
        }
    }

    #[test]
    fn kind2_recovers_known_y() {
        let fl = f(3);
        let m = CompressionModel::alt(6, 2, 1).unwrap();
        let mut sh = Mat::identity(fl, 6);
        sh.set(5, 0, 1);
        sh.set(5, 1, 2);
        let s = m.space(fl).unwrap().congruent(&sh).unwrap();
        let cert = lift_kind2(&s, &m).unwrap().unwrap();
        assert!(verify_cert(&s, &cert));
        assert_eq!(cert.p.mul(&sh).unwrap(), Mat::identity(fl, 6));
    }

    #[test]
    fn kind2_clears_a_shear() {
        let fl = f(5);
        let m = CompressionModel::sym(6, 2, 0).unwrap();
        let mut sh = Mat::identity(fl, 6);
        sh.set(5, 0, 3);
        sh.set(5, 1, 1);
        let s = m.space(fl).unwrap().congruent(&sh).unwrap();
        let cert = lift_kind2(&s, &m).unwrap().unwrap();
        assert!(verify_cert(&s, &cert));
    }

    #[test]
    fn kind2_dimension_hypothesis() {
        let fl = f(3);
        let s = MatSpace::make(fl, SpaceKind::Alt, 6, &[Mat::alt_unit(fl, 6, 0, 3)]).unwrap();
        let m = CompressionModel::alt(6, 2, 1).unwrap();
        assert!(matches!(lift_kind2(&s, &m), Err(Error::DimensionTooSmall(_))));
    }
}
