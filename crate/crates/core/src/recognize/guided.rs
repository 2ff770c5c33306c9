//! Inductive recognition.
//!
//! Two families are searched. `comp(S, s, ε)` looks for a congruence into
//! `W_{n,s,ε}` through three routes: the `T_H` normalisation around a
//! maximal-rank anchor, the `P` compression followed by a second-kind lift,
//! and the `K` compression around a rank-2 member of `S_H`. `full(S, R)`
//! looks for a congruence into `W_{n,0,R}` through hyperplanes with
//! `S_H = 0` and first-kind lifts. Every candidate is checked before it is
//! returned, and the whole search runs under a step budget.

use std::ops::ControlFlow;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::lift::{lift_kind1_core, lift_kind2_core};
use super::{check_preconditions, verify_cert, CongruenceCert, Method, RecognitionOutcome, RecognizeConfig, Stats, Verdict};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Vector};
use crate::matrix::{FormKind, Mat};
use crate::models::{CompressionModel, ModelKind};
use crate::space::{HyperplaneAnalysis, MatSpace, SpaceKind};

#[derive(Clone, Debug)]
pub struct GuidedConfig {
    /// Cap on recursive calls.
    pub max_steps: usize,
    /// Hyperplanes tried per level, in order of increasing `dim S_H`.
    pub hyperplanes_per_level: usize,
    /// Maximal-rank anchors tried by the `T_H` route.
    pub anchors: usize,
    /// Members enumerated while looking for anchors before sampling.
    pub anchor_budget: u128,
    pub jobs: usize,
}

impl Default for GuidedConfig {
    fn default() -> Self {
        GuidedConfig { max_steps: 400, hyperplanes_per_level: 4, anchors: 3, anchor_budget: 200_000, jobs: 1 }
    }
}

struct Search<'a> {
    cfg: &'a GuidedConfig,
    steps: usize,
    trace: Vec<String>,
    stats: Stats,
    seed: u64,
}

fn model_kind(kind: SpaceKind) -> ModelKind {
    if kind == SpaceKind::Alt {
        ModelKind::Alt
    } else {
        ModelKind::Sym
    }
}

fn all_in(s: &MatSpace, model: &CompressionModel) -> bool {
    s.basis().iter().all(|m| model.pattern_contains(m))
}

/// Maximal rank in `W_{n,s,eps}`: `2s` for alternating models.
fn anchor_rank(sp: &MatSpace, s: usize, eps: usize) -> usize {
    if sp.kind() == SpaceKind::Alt {
        2 * s
    } else {
        2 * s + eps
    }
}

/// `a ⊕ b ⊕ …` of square blocks.
fn diag(f: Field, blocks: &[&Mat]) -> Mat {
    blocks.iter().fold(Mat::zeros(f, 0, 0), |acc, b| acc.direct_sum(b))
}

fn compose(ms: &[&Mat]) -> Mat {
    let mut it = ms.iter();
    let first = (*it.next().expect("nonempty")).clone();
    it.fold(first, |acc, m| acc.mul(m).expect("square"))
}

/// Rows: a completion of `tail`, then `tail`.
fn complement_then(f: Field, n: usize, tail: &[Vector]) -> Mat {
    let mut rows = linalg::complete_basis(f, tail, n);
    rows.extend(tail.iter().cloned());
    Mat::from_vectors(f, &rows)
}

impl<'a> Search<'a> {
    fn new(cfg: &'a GuidedConfig, seed: u64) -> Self {
        Search { cfg, steps: 0, trace: Vec::new(), stats: Stats::default(), seed }
    }

    fn tick(&mut self) -> bool {
        self.steps += 1;
        self.steps <= self.cfg.max_steps
    }

    fn exhausted(&self) -> bool {
        self.steps > self.cfg.max_steps
    }

    fn note(&mut self, depth: usize, msg: String) {
        if self.trace.len() < 200 {
            self.trace.push(format!("{}{msg}", "  ".repeat(depth)));
        }
    }

    /// Hyperplanes sorted by (non-adapted last for sym, `dim S_H`, functional).
    fn scan(&mut self, s: &MatSpace) -> Vec<HyperplaneAnalysis> {
        let Ok(mut all) = s.scan_hyperplanes(self.cfg.jobs) else { return Vec::new() };
        self.stats.hyperplanes_scanned += all.len() as u64;
        all.sort_by_key(|a| (a.adapted == Some(false), a.m));
        all
    }

    /// Members of rank `r` (non-alternating ones first for sym), in
    /// enumeration order, then by sampling.
    fn anchors(&self, s: &MatSpace, r: usize) -> Vec<Mat> {
        let want = self.cfg.anchors;
        let sym = s.kind() == SpaceKind::Sym;
        let good = |m: &Mat| m.rank() == r && (!sym || m.classify_form() == FormKind::SymmetricNonalternating);
        let mut out: Vec<Mat> = Vec::new();
        if enumerate::space_size(s.field().q(), s.dim()) <= self.cfg.anchor_budget {
            s.for_each_projective_member(|m| {
                if good(m) {
                    out.push(m.clone());
                }
                if out.len() >= want {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ s.dim() as u64);
            for _ in 0..2000 {
                let m = s.random_member(&mut rng);
                if good(&m) && !out.contains(&m) {
                    out.push(m);
                    if out.len() >= want {
                        break;
                    }
                }
            }
        }
        if out.is_empty() && sym {
            // Fall back to alternating anchors (only relevant in characteristic 2).
            s.for_each_projective_member(|m| {
                if m.rank() == r {
                    out.push(m.clone());
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
        }
        out
    }

    /// Congruence into `W_{n,s,eps}` of the kind of `s`.
    fn comp(&mut self, sp: &MatSpace, s: usize, eps: usize, depth: usize) -> Option<Mat> {
        let f = sp.field();
        let n = sp.n();
        let eps = if sp.kind() == SpaceKind::Alt { usize::from(2 * s < n) } else { eps };
        let model = CompressionModel::new(model_kind(sp.kind()), n, s, eps).ok()?;
        if all_in(sp, &model) {
            return Some(Mat::identity(f, n));
        }
        if !self.tick() {
            return None;
        }
        self.note(depth, format!("comp {model} (dim {})", sp.dim()));
        if s == 0 {
            return self.fix_trailing(sp, 0, eps, &model);
        }
        let r = anchor_rank(sp, s, eps);
        if r < n {
            for anchor in self.anchors(sp, r) {
                if let Some(p) = self.route_t_h(sp, &anchor, s, eps, &model, depth) {
                    return Some(p);
                }
                if self.exhausted() {
                    return None;
                }
            }
        }
        let analyses = self.scan(sp);
        for a in analyses.iter().take(self.cfg.hyperplanes_per_level) {
            if a.m > 0 {
                if let Some(p) = self.route_k(sp, a, s, eps, &model, depth) {
                    return Some(p);
                }
            }
            if let Some(p) = self.route_p(sp, a, s, eps, &model, depth) {
                return Some(p);
            }
            if self.exhausted() {
                return None;
            }
        }
        None
    }

    /// Normalise an anchor `A` of rank `r = 2s+eps` to `[[A0, 0], [0, 0]]`,
    /// read `T_H` off `H = ker x_r`, send its annihilator to the coordinates
    /// `s..r`, then settle the trailing block.
    fn route_t_h(
        &mut self,
        sp: &MatSpace,
        anchor: &Mat,
        s: usize,
        eps: usize,
        model: &CompressionModel,
        depth: usize,
    ) -> Option<Mat> {
        let f = sp.field();
        let n = sp.n();
        let r = anchor_rank(sp, s, eps);
        let pa = complement_then(f, n, &anchor.kernel());
        let s1 = sp.congruent(&pa).ok()?;
        let h = crate::space::Hyperplane::coordinate(n, r);
        let (_, framed) = s1.s_sub_h_framed(&h).ok()?;
        // ker x_r frames as e_0..e_{r−1}, e_{r+1}.., e_r; column n−1 of the
        // framed member is column r of the original one.
        let mut v: Vec<Vector> = framed.iter().map(|m| (0..r).map(|i| m.get(i, n - 1)).collect()).collect();
        linalg::rref(f, &mut v);
        self.note(depth + 1, format!("T_H route: anchor rank {r}, dim T_H = {}", v.len()));
        if v.len() != s {
            return None;
        }
        let w = linalg::kernel(f, &v, r);
        let r1 = complement_then(f, r, &w);
        let p1 = diag(f, &[&r1, &Mat::identity(f, n - r)]);
        let s2 = s1.congruent(&p1).ok()?;
        let p2 = self.fix_trailing(&s2, s, eps, model)?;
        let p = compose(&[&p2, &p1, &pa]);
        self.accept(sp, p, model)
    }

    /// With the first `s` coordinates settled, the block on `s..n` must be
    /// zero, or for odd symmetric models spanned by one `λuuᵀ`.
    fn fix_trailing(&mut self, sp: &MatSpace, s: usize, eps: usize, model: &CompressionModel) -> Option<Mat> {
        let f = sp.field();
        let n = sp.n();
        let idx: Vec<usize> = (s..n).collect();
        let mut blocks: Vec<Vector> = sp.basis().iter().map(|m| m.submatrix(&idx, &idx).data().to_vec()).collect();
        linalg::rref(f, &mut blocks);
        let p = match blocks.len() {
            0 => Mat::identity(f, n),
            1 if eps == 1 && sp.kind() == SpaceKind::Sym => {
                let j0 = Mat::from_data(f, n - s, n - s, blocks[0].clone()).ok()?;
                if j0.rank() != 1 {
                    return None;
                }
                let u = (0..n - s).map(|c| j0.col(c)).find(|c| !linalg::is_zero(c))?;
                let k = u.iter().position(|&x| x != 0)?;
                let mut rows = vec![linalg::unit(n - s, k)];
                rows.extend(linalg::kernel(f, &[u], n - s));
                let g = Mat::from_vectors(f, &rows);
                diag(f, &[&Mat::identity(f, s), &g])
            }
            _ => return None,
        };
        self.accept(sp, p, model)
    }

    fn accept(&mut self, sp: &MatSpace, p: Mat, model: &CompressionModel) -> Option<Mat> {
        let ok = p.is_invertible() && sp.basis().iter().all(|m| model.pattern_contains(&m.congruent_by(&p)));
        ok.then_some(p)
    }

    /// Frame by `H`, recurse on `P(S)` into `W_{n−1,s,eps}`, lift.
    fn route_p(
        &mut self,
        sp: &MatSpace,
        a: &HyperplaneAnalysis,
        s: usize,
        eps: usize,
        model: &CompressionModel,
        depth: usize,
    ) -> Option<Mat> {
        let f = sp.field();
        let n = sp.n();
        CompressionModel::new(model.kind, n - 1, s, eps).ok()?;
        self.note(depth + 1, format!("P route: H = ker {:?}, dim S_H = {}", a.hyperplane.phi(), a.m));
        let frame = a.hyperplane.frame(f);
        let sf = sp.congruent(&frame).ok()?;
        let q = self.comp(&sf.compress_p().ok()?, s, eps, depth + 1)?;
        let p1 = diag(f, &[&q, &Mat::identity(f, 1)]);
        let s1 = sf.congruent(&p1).ok()?;
        let l = match lift_kind2_core(&s1, s, eps) {
            Ok(l) => l,
            Err(e) => {
                self.note(depth + 1, format!("second-kind lift failed: {e:?}"));
                return None;
            }
        };
        self.accept(sp, compose(&[&l, &p1, &frame]), model)
    }

    /// Normalise a rank-2 member of `S_H` to `E_{1n} ± E_{n1} (+ d E_{nn})`,
    /// recurse on `K(S)` into `W_{n−2,s−1,eps}`, lift.
    fn route_k(
        &mut self,
        sp: &MatSpace,
        a: &HyperplaneAnalysis,
        s: usize,
        eps: usize,
        model: &CompressionModel,
        depth: usize,
    ) -> Option<Mat> {
        let f = sp.field();
        let n = sp.n();
        if n < 3 {
            return None;
        }
        CompressionModel::new(model.kind, n - 2, s - 1, eps).ok()?;
        let frame = a.hyperplane.frame(f);
        let framed: Vec<Mat> = a.s_h.basis().iter().map(|m| m.congruent_by(&frame)).collect();
        let c: Vector = {
            let nm = framed.iter().find(|m| (0..n - 1).any(|i| m.get(i, n - 1) != 0))?;
            (0..n - 1).map(|i| nm.get(i, n - 1)).collect()
        };
        let g = linalg::kernel(f, &[c.clone()], n - 1);
        let sf = sp.congruent(&frame).ok()?;
        // X ∈ H \ G; in characteristic 2 prefer one with q_M(X) ≠ 0 for some M.
        let candidates: Vec<Vector> = (0..n - 1).filter(|&i| c[i] != 0).map(|i| linalg::unit(n - 1, i)).collect();
        let q_nonzero = |x: &Vector| {
            sf.basis().iter().any(|m| {
                let mut xx = x.clone();
                xx.push(0);
                m.form_eval_unchecked(&xx, &xx) != 0
            })
        };
        let x = if f.is_char2() && sp.kind() == SpaceKind::Sym {
            let mut cands = candidates.clone();
            for gv in &g {
                for base in &candidates {
                    let mut y = base.clone();
                    linalg::axpy(f, &mut y, 1, gv);
                    cands.push(y);
                }
            }
            cands.iter().find(|x| q_nonzero(x)).cloned().unwrap_or_else(|| candidates[0].clone())
        } else {
            candidates[0].clone()
        };
        let mut rows = vec![x];
        rows.extend(g);
        let rg = Mat::from_vectors(f, &rows);
        let pn = compose(&[&diag(f, &[&rg, &Mat::identity(f, 1)]), &frame]);
        let sn = sp.congruent(&pn).ok()?;
        self.note(depth + 1, format!("K route: H = ker {:?}, dim S_H = {}", a.hyperplane.phi(), a.m));
        let qk = self.comp(&sn.compress_k(0, n - 1).ok()?, s - 1, eps, depth + 1)?;
        let one = Mat::identity(f, 1);
        let pmid = diag(f, &[&one, &qk, &one]);
        let sm = sn.congruent(&pmid).ok()?;
        let l = match lift_kind2_core(&sm, s, eps) {
            Ok(l) => l,
            Err(e) => {
                self.note(depth + 1, format!("second-kind lift failed: {e:?}"));
                return None;
            }
        };
        self.accept(sp, compose(&[&l, &pmid, &pn]), model)
    }

    /// Congruence into `W_{n,0,R}` through hyperplanes with `S_H = 0`.
    fn full(&mut self, sp: &MatSpace, big_r: usize, depth: usize) -> Option<Mat> {
        let f = sp.field();
        let n = sp.n();
        if big_r >= n {
            return Some(Mat::identity(f, n));
        }
        let model = CompressionModel::new(model_kind(sp.kind()), n, 0, big_r).ok()?;
        if all_in(sp, &model) {
            return Some(Mat::identity(f, n));
        }
        if !self.tick() {
            return None;
        }
        self.note(depth, format!("full {model} (dim {})", sp.dim()));
        let analyses = self.scan(sp);
        for a in analyses.iter().filter(|a| a.m == 0).take(self.cfg.hyperplanes_per_level) {
            let frame = a.hyperplane.frame(f);
            let Ok(sf) = sp.congruent(&frame) else { continue };
            let Ok(ps) = sf.compress_p() else { continue };
            let Some(q) = self.full(&ps, big_r, depth + 1) else {
                if self.exhausted() {
                    return None;
                }
                continue;
            };
            let p1 = diag(f, &[&q, &Mat::identity(f, 1)]);
            let Ok(s1) = sf.congruent(&p1) else { continue };
            match lift_kind1_core(&s1, big_r) {
                Some(l) => {
                    if let Some(p) = self.accept(sp, compose(&[&l, &p1, &frame]), &model) {
                        return Some(p);
                    }
                }
                None => self.note(depth + 1, format!("first-kind lift failed at H = ker {:?}", a.hyperplane.phi())),
            }
        }
        None
    }

    fn min_m(&mut self, sp: &MatSpace) -> Option<usize> {
        self.scan(sp).first().map(|a| a.m)
    }
}

fn finish(search: Search, sp: &MatSpace, found: Option<(Mat, CompressionModel)>) -> RecognitionOutcome {
    let verdict = match found {
        Some((p, model)) => {
            let cert = CongruenceCert { p, model };
            debug_assert!(verify_cert(sp, &cert));
            Verdict::Certified(cert)
        }
        None if search.exhausted() => Verdict::Stalled(format!("step budget of {} exhausted", search.cfg.max_steps)),
        None => Verdict::Stalled("no route produced a certificate".into()),
    };
    RecognitionOutcome { verdict, method: Method::Guided, trace: search.trace, stats: search.stats }
}

fn alt_core(search: &mut Search, sp: &MatSpace, r: usize) -> Option<(Mat, CompressionModel)> {
    let n = sp.n();
    let f = sp.field();
    if r + 1 >= n {
        search.note(0, "r = n−1: every space is inside the full alternating model".into());
        return Some((Mat::identity(f, n), CompressionModel::alt(n, 0, n).ok()?));
    }
    let s = r / 2;
    let comp_model = CompressionModel::alt(n, s, 1).ok()?;
    let full_model = CompressionModel::alt(n, 0, r + 1).ok()?;
    if r == 2 {
        return search.comp(sp, 1, 1, 0).map(|p| (p, comp_model));
    }
    let m = search.min_m(sp).unwrap_or(0);
    search.note(0, format!("min dim S_H = {m}"));
    let order: [bool; 2] = if m == 0 { [false, true] } else { [true, false] };
    for use_comp in order {
        let got = if use_comp {
            search.comp(sp, s, 1, 0).map(|p| (p, comp_model))
        } else {
            search.full(sp, r + 1, 0).map(|p| (p, full_model))
        };
        if got.is_some() {
            return got;
        }
    }
    None
}

/// Guided recognition for alternating spaces with `urk ≤ r` (`r` even).
pub fn guided_recognize_alt(sp: &MatSpace, r: usize, cfg: &RecognizeConfig) -> Result<RecognitionOutcome> {
    if sp.kind() != SpaceKind::Alt {
        return Err(Error::KindMismatch("expected an alternating space".into()));
    }
    if r < 2 || r % 2 == 1 {
        return Err(Error::InvalidParams(format!("alternating rank bound must be even and at least 2, got {r}")));
    }
    let mut search = Search::new(&cfg.guided, cfg.seed);
    check_preconditions(sp, ModelKind::Alt, r, cfg, &mut search.trace)?;
    let found = alt_core(&mut search, sp, r);
    Ok(finish(search, sp, found))
}

/// Outcome (i)/(ii)/(iii) for a symmetric space that is alternating in
/// characteristic 2, obtained from the alternating recognizer.
fn sym_via_alt(search: &mut Search, sp: &MatSpace, r: usize) -> Option<(Mat, CompressionModel)> {
    let n = sp.n();
    let ra = r - r % 2;
    let alt = sp.with_kind(SpaceKind::Alt).ok()?;
    search.note(0, format!("characteristic 2 and alternating: recognizing as alternating with r = {ra}"));
    let (p, am) = alt_core(search, &alt, ra)?;
    let model = if am.s > 0 {
        CompressionModel::sym(n, r / 2, r % 2).ok()?
    } else if r % 2 == 0 {
        CompressionModel::alt(n, 0, (r + 1).min(n)).ok()?
    } else {
        CompressionModel::sym(n, 0, r).ok()?
    };
    Some((p, model))
}

fn sym_core(search: &mut Search, sp: &MatSpace, r: usize) -> Option<(Mat, CompressionModel)> {
    let n = sp.n();
    let (s, eps) = (r / 2, r % 2);
    if sp.field().is_char2() && sp.is_alternating() {
        return sym_via_alt(search, sp, r);
    }
    let comp_model = CompressionModel::sym(n, s, eps).ok()?;
    if r <= 3 {
        return search.comp(sp, 1, eps, 0).map(|p| (p, comp_model));
    }
    let full_model = CompressionModel::sym(n, 0, r).ok()?;
    let m = search.min_m(sp).unwrap_or(0);
    search.note(0, format!("min dim S_H over adapted hyperplanes first = {m}"));
    let order: [bool; 2] = if m == 0 { [false, true] } else { [true, false] };
    for use_comp in order {
        let got = if use_comp {
            search.comp(sp, s, eps, 0).map(|p| (p, comp_model))
        } else {
            search.full(sp, r, 0).map(|p| (p, full_model))
        };
        if got.is_some() {
            return got;
        }
    }
    None
}

/// Guided recognition for symmetric spaces with `urk ≤ r` over a field
/// with more than two elements.
pub fn guided_recognize_sym(sp: &MatSpace, r: usize, cfg: &RecognizeConfig) -> Result<RecognitionOutcome> {
    if sp.kind() != SpaceKind::Sym {
        return Err(Error::KindMismatch("expected a symmetric space".into()));
    }
    if sp.field().q() == 2 {
        return Err(Error::UnsupportedField(2));
    }
    let mut search = Search::new(&cfg.guided, cfg.seed);
    check_preconditions(sp, ModelKind::Sym, r, cfg, &mut search.trace)?;
    let found = sym_core(&mut search, sp, r);
    Ok(finish(search, sp, found))
}

/// The small-rank cases: alternating `r = 2` into `WA_{n,1,1}`, symmetric
/// `r = 2` into `WS_{n,1,0}` and `r = 3` into `WS_{n,1,1}`.
pub fn recognize_small_rank(sp: &MatSpace, r: usize, cfg: &RecognizeConfig) -> Result<RecognitionOutcome> {
    match (sp.kind(), r) {
        (SpaceKind::Alt, 2) => guided_recognize_alt(sp, r, cfg),
        (SpaceKind::Sym, 2 | 3) => guided_recognize_sym(sp, r, cfg),
        _ => Err(Error::InvalidParams(format!("no small-rank case for a {} space with r = {r}", sp.kind().name()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognize::RankCheck;
    use rand::Rng;

    fn random_invertible(f: Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
        loop {
            let m = Mat::from_fn(f, n, n, |_, _| rng.gen_range(0..f.q()) as u8);
            if m.is_invertible() {
                return m;
            }
        }
    }

    fn cfg() -> RecognizeConfig {
        RecognizeConfig { rank_check: RankCheck::Skip, ..RecognizeConfig::default() }
    }

    fn run(model: CompressionModel, q: u32, r: usize, seed: u64) -> RecognitionOutcome {
        let f = Field::new(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_invertible(f, model.n, &mut rng);
        let s = model.space(f).unwrap().congruent(&p).unwrap();
        let out = match s.kind() {
            SpaceKind::Alt => guided_recognize_alt(&s, r, &cfg()).unwrap(),
            _ => guided_recognize_sym(&s, r, &cfg()).unwrap(),
        };
        if let Some(c) = out.cert() {
            assert!(verify_cert(&s, c));
        }
        out
    }

    #[test]
    fn conjugated_models_are_certified() {
        let cases = [
            (CompressionModel::alt(6, 2, 1).unwrap(), 4),
            (CompressionModel::alt(6, 0, 5).unwrap(), 4),
            (CompressionModel::alt(5, 1, 1).unwrap(), 2),
            (CompressionModel::sym(5, 1, 0).unwrap(), 2),
            (CompressionModel::sym(6, 1, 1).unwrap(), 3),
            (CompressionModel::sym(6, 2, 0).unwrap(), 4),
            (CompressionModel::sym(5, 0, 4).unwrap(), 4),
        ];
        for q in [3u32, 5] {
            for (seed, (m, r)) in cases.iter().enumerate() {
                let out = run(*m, q, *r, seed as u64);
                assert!(out.is_certified(), "{m} over GF({q}): {:?}", out.trace);
            }
        }
    }

    #[test]
    fn threshold_is_enforced() {
        let f = Field::new(3).unwrap();
        let s = CompressionModel::alt(6, 1, 1).unwrap().space(f).unwrap();
        let err = guided_recognize_alt(&s, 4, &cfg()).unwrap_err();
        assert!(matches!(err, Error::ThresholdNotMet { .. }));
    }

    #[test]
    fn gf2_symmetric_is_refused() {
        let f = Field::new(2).unwrap();
        let s = MatSpace::full(f, SpaceKind::Sym, 4);
        assert!(matches!(guided_recognize_sym(&s, 2, &cfg()), Err(Error::UnsupportedField(2))));
    }
}
