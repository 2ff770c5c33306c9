//! Exhaustive flag search.
//!
//! For each `z'` of dimension `n−s` (reduced echelon bases in enumeration
//! order) the admissible `z` all lie in
//! `Z0 = {x ∈ z' : b_M(x, z') = 0 for all M}`, which is a linear solve, so
//! a flag exists over `z'` iff `dim Z0 ≥ n−s−t`.

use std::ops::ControlFlow;

use super::{CongruenceCert, Flag, Method, RecognitionOutcome, Stats, Verdict};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::matrix::Mat;
use crate::models::{CompressionModel, ModelKind};
use crate::space::{MatSpace, SpaceKind};

/// Default cap on the number of `z'` candidates.
pub const DEFAULT_FLAG_BUDGET: u128 = 100_000_000;

/// The first flag witnessing `S ⊆ model` up to congruence, if any.
pub fn find_flag(s: &MatSpace, model: &CompressionModel, budget: u128, stats: &mut Stats) -> Result<Option<Flag>> {
    if !s.kind().is_square() {
        return Err(Error::KindMismatch("flags need a sym or alt space".into()));
    }
    if model.n != s.n() {
        return Err(Error::ShapeMismatch(format!("model {model} does not match n = {}", s.n())));
    }
    if model.kind == ModelKind::Alt && !s.is_alternating() {
        return Ok(None);
    }
    let f = s.field();
    let n = s.n();
    let k = n - model.s;
    let need = k - model.t;
    let total = enumerate::gaussian_binomial(n, k, f.q());
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let found = enumerate::for_each_subspace(f, n, k, |zp| {
        stats.flags_tested += 1;
        // Rows: for each M and each j, the functional a ↦ Σ a_i b_M(z'_i, z'_j).
        let mut rows: Vec<Vector> = Vec::new();
        let mut z0_dim = k;
        let zm = Mat::from_vectors(f, zp);
        let zt = zm.transpose();
        for m in s.basis() {
            let g = zm.mul(m).expect("shapes").mul(&zt).expect("shapes");
            for j in 0..k {
                rows.push(g.col(j));
            }
            let mut red = rows.clone();
            let rank = linalg::rref(f, &mut red).len();
            rows = red;
            z0_dim = k - rank;
            if z0_dim < need {
                return ControlFlow::Continue(());
            }
        }
        let coeffs = linalg::kernel(f, &rows, k);
        let z: Vec<Vector> = coeffs.iter().take(need).map(|a| combine(f, a, zp)).collect();
        debug_assert!(z0_dim >= need);
        ControlFlow::Break(Flag { z_prime: zp.to_vec(), z })
    });
    Ok(found)
}

fn combine(f: crate::field::Field, a: &[u8], vs: &[Vector]) -> Vector {
    let mut out = vec![0; vs[0].len()];
    for (&c, v) in a.iter().zip(vs) {
        linalg::axpy(f, &mut out, c, v);
    }
    out
}

/// Rows: a completion of `z'` to `K^n`, then an extension of `z` to `z'`,
/// then `z`.
pub fn flag_to_cert(s: &MatSpace, flag: &Flag, model: CompressionModel) -> CongruenceCert {
    let f = s.field();
    let n = s.n();
    let mut rows = linalg::complete_basis(f, &flag.z_prime, n);
    let mut ext = Vec::new();
    let mut span = flag.z.clone();
    for v in &flag.z_prime {
        let mut trial = span.clone();
        trial.push(v.clone());
        if linalg::rank_of_rows(f, &trial) > span.len() {
            span = trial;
            ext.push(v.clone());
        }
    }
    rows.extend(ext);
    rows.extend(flag.z.iter().cloned());
    CongruenceCert { p: Mat::from_vectors(f, &rows), model }
}

/// Flag search against a single model.
pub fn oracle_recognize(s: &MatSpace, model: &CompressionModel, budget: u128) -> Result<RecognitionOutcome> {
    oracle_recognize_any(s, std::slice::from_ref(model), budget)
}

/// Flag search against each model in turn; the first hit is certified.
pub fn oracle_recognize_any(s: &MatSpace, models: &[CompressionModel], budget: u128) -> Result<RecognitionOutcome> {
    if s.kind() == SpaceKind::Sym && s.field().q() == 2 {
        return Err(Error::UnsupportedField(2));
    }
    let mut stats = Stats::default();
    let mut trace = Vec::new();
    for model in models {
        let before = stats.flags_tested;
        match find_flag(s, model, budget, &mut stats)? {
            Some(flag) => {
                trace.push(format!("oracle: flag for {model} after {} candidates", stats.flags_tested - before));
                let cert = flag_to_cert(s, &flag, *model);
                debug_assert!(super::verify_cert(s, &cert));
                return Ok(RecognitionOutcome { verdict: Verdict::Certified(cert), method: Method::Oracle, trace, stats });
            }
            None => trace.push(format!("oracle: no flag for {model} ({} candidates)", stats.flags_tested - before)),
        }
    }
    Ok(RecognitionOutcome { verdict: Verdict::NotContained(models.to_vec()), method: Method::Oracle, trace, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::recognize::verify_cert;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_invertible(f: Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
        use rand::Rng;
        loop {
            let m = Mat::from_fn(f, n, n, |_, _| rng.gen_range(0..f.q()) as u8);
            if m.is_invertible() {
                return m;
            }
        }
    }

    #[test]
    fn finds_conjugated_models() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [3u32, 4] {
            let f = Field::new(q).unwrap();
            for model in [
                CompressionModel::alt(5, 2, 1).unwrap(),
                CompressionModel::alt(5, 0, 3).unwrap(),
                CompressionModel::sym(5, 1, 2).unwrap(),
                CompressionModel::sym(4, 0, 3).unwrap(),
            ] {
                let p = random_invertible(f, model.n, &mut rng);
                let s = model.space(f).unwrap().congruent(&p).unwrap();
                let out = oracle_recognize(&s, &model, DEFAULT_FLAG_BUDGET).unwrap();
                let cert = out.cert().expect("certified");
                assert!(verify_cert(&s, cert), "{model} over GF({q})");
            }
        }
    }

    #[test]
    fn rejects_the_full_space() {
        let f = Field::new(3).unwrap();
        let s = MatSpace::full(f, SpaceKind::Alt, 4);
        let out = oracle_recognize(&s, &CompressionModel::alt(4, 1, 1).unwrap(), DEFAULT_FLAG_BUDGET).unwrap();
        assert!(matches!(out.verdict, Verdict::NotContained(_)));
        assert_eq!(out.stats.flags_tested, enumerate::gaussian_binomial(4, 3, 3) as u64);
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::new(7).unwrap();
        let s = MatSpace::full(f, SpaceKind::Sym, 6);
        let err = oracle_recognize(&s, &CompressionModel::sym(6, 3, 0).unwrap(), 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn symmetric_over_gf2_is_refused() {
        let f = Field::new(2).unwrap();
        let s = MatSpace::full(f, SpaceKind::Sym, 3);
        assert!(matches!(
            oracle_recognize(&s, &CompressionModel::sym(3, 1, 0).unwrap(), 100),
            Err(Error::UnsupportedField(2))
        ));
    }
}
