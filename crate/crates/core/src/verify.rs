//! Seeded check suites and the instance generator they share.
//!
//! Every randomized check derives one seed per trial from the suite seed,
//! the check id and the trial index, so a failing trial can be replayed in
//! isolation. Records are merged in key order and carry no timings, which
//! keeps the JSON lines identical across runs and worker counts.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, Vector};
use crate::matrix::{schur_complement, Mat};
use crate::models::{convexity_check, thresholds, CompressionModel, ModelKind};
use crate::parallel;
use crate::recognize::{
    self, find_flag, verify_cert, CongruenceCert, Mode, RankCheck, RecognizeConfig, Stats, Verdict,
};
use crate::space::{MatSpace, MatSpaceJson, SpaceKind};

/// A sampled space together with the certificate it was built from.
#[derive(Clone, Debug)]
pub struct Sample {
    pub space: MatSpace,
    /// `P⁻¹` for the conjugating `P`, certifying the generating model.
    pub truth: CongruenceCert,
}

/// Uniformly random invertible `n × n` matrix.
pub fn random_invertible<R: Rng>(f: Field, n: usize, rng: &mut R) -> Mat {
    loop {
        let m = Mat::from_fn(f, n, n, |_, _| rng.gen_range(0..f.q()) as Elem);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random `d`-dimensional subspace of the model, conjugated by a random
/// invertible `P`.
pub fn sample_bounded_space(model: &CompressionModel, d: usize, field: Field, seed: u64) -> Result<Sample> {
    let full = model.space(field)?;
    let dim = full.dim();
    if d > dim {
        return Err(Error::InvalidParams(format!("d = {d} exceeds dim {model} = {dim}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords: Option<Vec<Vector>> = None;
    for _ in 0..100 {
        let mut rows: Vec<Vector> =
            (0..d).map(|_| (0..dim).map(|_| rng.gen_range(0..field.q()) as Elem).collect()).collect();
        if linalg::rref(field, &mut rows).len() == d {
            coords = Some(rows);
            break;
        }
    }
    let coords = coords.ok_or_else(|| Error::InvalidParams(format!("could not draw {d} independent vectors")))?;
    let gens: Vec<Mat> = coords.iter().map(|c| full.member(c)).collect();
    let sub = MatSpace::make(field, full.kind(), model.n, &gens)?;
    let p = random_invertible(field, model.n, &mut rng);
    let space = sub.congruent(&p)?;
    let truth = CongruenceCert { p: p.inverse()?, model: *model };
    Ok(Sample { space, truth })
}

/// Per-trial seed from the suite seed, a check id and a trial index.
pub fn derive_seed(seed: u64, check: &str, index: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in check.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    let mut z = seed ^ h ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: String,
    pub fields: Vec<u32>,
    pub n_min: usize,
    pub n_max: usize,
    pub r_values: Vec<usize>,
    pub trials: usize,
    /// Instances per configuration that are also run through the oracle.
    pub agreement_trials: usize,
    pub seed: u64,
    pub budget: u128,
    pub jobs: usize,
}

/// Suites known to [`run_suite`].
pub const SUITES: &[&str] = &[
    "formulas",
    "urk",
    "maximality",
    "convexity",
    "extraction",
    "schur",
    "sharpness",
    "recognize",
    "dichotomy",
    "char2",
];

impl SuiteConfig {
    /// Defaults matching the acceptance sizes of each suite.
    pub fn defaults(suite: &str) -> Result<Self> {
        let base = |fields: Vec<u32>, n_min, n_max, r_values: Vec<usize>, trials| SuiteConfig {
            suite: suite.to_string(),
            fields,
            n_min,
            n_max,
            r_values,
            trials,
            agreement_trials: 0,
            seed: 0,
            budget: 1_000_000,
            jobs: 1,
        };
        Ok(match suite {
            "formulas" => base(vec![2, 3, 4, 5], 1, 12, vec![], 0),
            "urk" => base(vec![2, 3, 4, 5], 1, 8, vec![], 0),
            "maximality" => base(vec![2, 3], 2, 6, vec![], 0),
            "convexity" => base(vec![], 1, 30, vec![], 0),
            "extraction" => base(vec![2, 3, 4, 5], 3, 7, vec![], 1000),
            "schur" => base(vec![2, 3, 4, 5, 7], 2, 7, vec![], 1000),
            "sharpness" => base(vec![2], 6, 6, vec![4], 0),
            "recognize" => {
                let mut c = base(vec![2, 3, 4], 3, 6, vec![2, 3, 4], 200);
                c.agreement_trials = 50;
                c.budget = recognize::DEFAULT_FLAG_BUDGET;
                c
            }
            "dichotomy" => base(vec![2, 3], 4, 6, vec![], 50),
            "char2" => base(vec![4], 5, 6, vec![4], 50),
            _ => return Err(Error::Config(format!("unknown suite `{suite}` (known: {})", SUITES.join(", ")))),
        })
    }
}

/// One check result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    /// Counterexample of the first failing trial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub records: Vec<CheckRecord>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.pass).count()
    }

    /// One JSON object per record.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut by_check: std::collections::BTreeMap<&str, (usize, usize)> = Default::default();
        for r in &self.records {
            let e = by_check.entry(&r.check).or_default();
            e.0 += 1;
            if r.pass {
                e.1 += 1;
            }
        }
        let mut out = format!("suite {} (seed {}), {} ms\n", self.suite, self.seed, self.elapsed_ms);
        out.push_str(&format!("{:<28} {:>7} {:>7}\n", "check", "records", "passed"));
        for (c, (n, p)) in by_check {
            out.push_str(&format!("{c:<28} {n:>7} {p:>7}\n"));
        }
        out.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        out
    }
}

fn record(check: &str, params: Value, pass: bool, details: Option<Value>, witness: Option<Value>) -> CheckRecord {
    CheckRecord { check: check.to_string(), params, pass, details, witness }
}

fn space_json(s: &MatSpace) -> Value {
    serde_json::to_value(MatSpaceJson::from(s)).expect("serializable")
}

fn mat_json(m: &Mat) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>())
}

fn fields(cfg: &SuiteConfig) -> Result<Vec<Field>> {
    cfg.fields.iter().map(|&q| Field::new(q)).collect()
}

/// Runs the named suite.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let start = Instant::now();
    let records = match cfg.suite.as_str() {
        "formulas" => suite_formulas(cfg)?,
        "urk" => suite_urk(cfg)?,
        "maximality" => suite_maximality(cfg)?,
        "convexity" => suite_convexity(cfg),
        "extraction" => suite_extraction(cfg)?,
        "schur" => suite_schur(cfg)?,
        "sharpness" => suite_sharpness(cfg)?,
        "recognize" => suite_recognize(cfg)?,
        "dichotomy" => suite_dichotomy(cfg)?,
        "char2" => suite_char2(cfg)?,
        other => return Err(Error::Config(format!("unknown suite `{other}` (known: {})", SUITES.join(", ")))),
    };
    Ok(Report { suite: cfg.suite.clone(), seed: cfg.seed, records, elapsed_ms: start.elapsed().as_millis() })
}

fn all_models(n_min: usize, n_max: usize) -> Vec<CompressionModel> {
    let mut out = Vec::new();
    for kind in [ModelKind::Sym, ModelKind::Alt] {
        for n in n_min.max(1)..=n_max {
            out.extend(CompressionModel::all(kind, n));
        }
    }
    out
}

fn suite_formulas(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for f in fields(cfg)? {
        let models = all_models(cfg.n_min, cfg.n_max);
        let bad: Vec<Value> = models
            .iter()
            .filter_map(|m| {
                let built = m.space(f).ok()?.dim();
                let formula = m.dim().ok()?;
                (built != formula).then(|| json!({"model": m, "built": built, "formula": formula}))
            })
            .collect();
        out.push(record(
            "formulas.dim",
            json!({"q": f.q(), "n_max": cfg.n_max, "models": models.len()}),
            bad.is_empty(),
            None,
            bad.first().cloned(),
        ));
    }
    Ok(out)
}

fn suite_urk(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for f in fields(cfg)? {
        let models = all_models(cfg.n_min, cfg.n_max);
        let results = parallel::map(cfg.jobs, &models, |m| -> Result<Option<Value>> {
            let urk = m.urk(f)?;
            let bound = m.structural_bound();
            if urk.witness.rank() != bound || !m.pattern_contains(&urk.witness) {
                return Ok(Some(json!({"model": m, "witness_rank": urk.witness.rank(), "bound": bound})));
            }
            let space = m.space(f)?;
            match space.urk_exact(cfg.budget) {
                Ok(ex) if ex.value != bound => Ok(Some(json!({"model": m, "exact": ex.value, "bound": bound}))),
                _ => Ok(None),
            }
        });
        let mut bad = Vec::new();
        let mut exact = 0usize;
        for (m, r) in models.iter().zip(results) {
            if let Some(v) = r? {
                bad.push(v);
            }
            if crate::enumerate::space_size(f.q(), m.dim()?) <= cfg.budget {
                exact += 1;
            }
        }
        out.push(record(
            "urk.models",
            json!({"q": f.q(), "n_max": cfg.n_max, "models": models.len()}),
            bad.is_empty(),
            Some(json!({"exactly_enumerated": exact})),
            bad.first().cloned(),
        ));
    }
    Ok(out)
}

/// A member of `s + span(e)` with rank above `bound`, if one is found.
fn rank_escape(model: &CompressionModel, f: Field, e: &Mat, budget: u128, seed: u64) -> Option<Mat> {
    let bound = model.structural_bound();
    let w = model.urk(f).ok()?.witness;
    for c in f.elements().skip(1) {
        let mut m = w.clone();
        m.add_scaled_assign(c, e);
        if m.rank() > bound {
            return Some(m);
        }
    }
    let ext = model.space(f).ok()?.extended(std::slice::from_ref(e)).ok()?;
    if crate::enumerate::space_size(f.q(), ext.dim()) <= budget {
        return ext.for_each_projective_member(|m| {
            if m.rank() > bound {
                ControlFlow::Break(m.clone())
            } else {
                ControlFlow::Continue(())
            }
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..20_000).map(|_| ext.random_member(&mut rng)).find(|m| m.rank() > bound)
}

/// The maximality claim covers symmetric models and alternating models with
/// odd `t`. When the rank bound already reaches the largest rank possible in
/// `n × n` matrices, no extension can exceed it, so those are left out.
pub fn maximality_applies(m: &CompressionModel) -> bool {
    let ceiling = match m.kind {
        ModelKind::Sym => m.n,
        ModelKind::Alt => m.n - m.n % 2,
    };
    (m.kind == ModelKind::Sym || m.t % 2 == 1) && m.structural_bound() < ceiling
}

fn suite_maximality(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for f in fields(cfg)? {
        let models: Vec<CompressionModel> = all_models(cfg.n_min, cfg.n_max)
            .into_iter()
            .filter(|m| maximality_applies(m))
            .collect();
        let cases: Vec<(CompressionModel, (usize, usize))> =
            models.iter().flat_map(|m| m.external_positions().into_iter().map(move |p| (*m, p))).collect();
        let results = parallel::map(cfg.jobs, &cases, |(m, (i, j))| {
            let e = match m.kind {
                ModelKind::Sym => Mat::sym_unit(f, m.n, *i, *j),
                ModelKind::Alt => Mat::alt_unit(f, m.n, *i, *j),
            };
            let seed = derive_seed(cfg.seed, "maximality", (m.n * 100 + i * 10 + j) as u64);
            rank_escape(m, f, &e, cfg.budget, seed).is_some()
        });
        let bad: Vec<Value> = cases
            .iter()
            .zip(&results)
            .filter(|(_, ok)| !**ok)
            .map(|((m, (i, j)), _)| json!({"model": m, "position": [i, j]}))
            .collect();
        out.push(record(
            "maximality.external",
            json!({"q": f.q(), "n_max": cfg.n_max, "cases": cases.len()}),
            bad.is_empty(),
            None,
            bad.first().cloned(),
        ));
    }
    Ok(out)
}

fn suite_convexity(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for kind in [ModelKind::Sym, ModelKind::Alt] {
        let mut bad = Vec::new();
        let mut count = 0;
        for n in cfg.n_min.max(1)..=cfg.n_max {
            for r in 0..=n {
                count += 1;
                if !convexity_check(kind, n, r) {
                    bad.push(json!({"n": n, "r": r}));
                }
            }
        }
        out.push(record(
            "convexity.second_differences",
            json!({"kind": kind, "n_max": cfg.n_max, "pairs": count}),
            bad.is_empty(),
            None,
            bad.first().cloned(),
        ));
    }
    out
}

fn suite_extraction(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for f in fields(cfg)? {
        let kinds: &[ModelKind] = if f.q() == 2 { &[ModelKind::Alt] } else { &[ModelKind::Alt, ModelKind::Sym] };
        let models: Vec<CompressionModel> = all_models(cfg.n_min.max(3), cfg.n_max)
            .into_iter()
            .filter(|m| kinds.contains(&m.kind) && m.s > 0)
            .collect();
        let idx: Vec<u64> = (0..cfg.trials as u64).collect();
        let check = format!("extraction.q{}", f.q());
        let results = parallel::map(cfg.jobs, &idx, |&k| -> Option<Value> {
            let seed = derive_seed(cfg.seed, &check, k);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = models[rng.gen_range(0..models.len())];
            // (i, j) with i < s: always inside the pattern.
            let i = rng.gen_range(0..m.s);
            let j = loop {
                let j = rng.gen_range(0..m.n);
                if j != i {
                    break j;
                }
            };
            let space = m.space(f).ok()?;
            let mat = space.random_member(&mut rng);
            let r = m.structural_bound();
            let sub = mat.delete_rows_cols(&[i, j]).ok()?;
            (sub.rank() + 2 > r).then(|| {
                json!({"trial": k, "seed": seed, "model": m, "i": i, "j": j, "M": mat_json(&mat), "rank_sub": sub.rank()})
            })
        });
        let bad: Vec<Value> = results.into_iter().flatten().collect();
        out.push(record(
            "extraction.rank_drop",
            json!({"q": f.q(), "trials": cfg.trials}),
            bad.is_empty(),
            Some(json!({"violations": bad.len()})),
            bad.first().cloned(),
        ));
    }
    Ok(out)
}

fn suite_schur(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for f in fields(cfg)? {
        let idx: Vec<u64> = (0..cfg.trials as u64).collect();
        let check = format!("schur.q{}", f.q());
        let results = parallel::map(cfg.jobs, &idx, |&k| -> Option<Value> {
            let seed = derive_seed(cfg.seed, &check, k);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(cfg.n_min.max(2)..=cfg.n_max.max(2));
            let r = rng.gen_range(1..n);
            let mut rand_mat = |a: usize, b: usize| Mat::from_fn(f, a, b, |_, _| rng.gen_range(0..f.q()) as Elem);
            let b = rand_mat(n - r, r);
            let c = rand_mat(r, n - r);
            let d = rand_mat(n - r, n - r);
            let a = random_invertible(f, r, &mut rng);
            let whole = Mat::from_blocks(&a, &c, &b, &d).ok()?;
            let sc = schur_complement(&a, &b, &c, &d).ok()?;
            (whole.rank() != r + sc.rank())
                .then(|| json!({"trial": k, "seed": seed, "block": mat_json(&whole), "r": r}))
        });
        let bad: Vec<Value> = results.into_iter().flatten().collect();
        out.push(record(
            "schur.rank_identity",
            json!({"q": f.q(), "trials": cfg.trials}),
            bad.is_empty(),
            None,
            bad.first().cloned(),
        ));
    }
    Ok(out)
}

fn suite_sharpness(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for f in fields(cfg)? {
        for n in cfg.n_min.max(5)..=cfg.n_max {
            for &r in cfg.r_values.iter().filter(|&&r| r >= 4 && r % 2 == 0 && r < n) {
                let s = r / 2;
                let th = thresholds(ModelKind::Alt, n, r)?.new_thm;
                let extremal = CompressionModel::alt(n, 1, r - 1)?;
                let space = extremal.space(f)?;
                let targets = [CompressionModel::alt(n, s, 1)?, CompressionModel::alt(n, 0, r + 1)?];
                let mut stats = Stats::default();
                let mut hits = Vec::new();
                for t in &targets {
                    if find_flag(&space, t, cfg.budget.max(recognize::DEFAULT_FLAG_BUDGET), &mut stats)?.is_some() {
                        hits.push(*t);
                    }
                }
                out.push(record(
                    "sharpness.threshold",
                    json!({"q": f.q(), "n": n, "r": r, "space": extremal, "dim": space.dim(), "threshold": th}),
                    hits.is_empty() && space.dim() == th,
                    Some(json!({"flags_tested": stats.flags_tested})),
                    (!hits.is_empty()).then(|| json!({"contained_in": hits})),
                ));
            }
        }
    }
    Ok(out)
}

/// Generator models for the recognizer round-trip: those of dimension above
/// the threshold among the candidate outcomes, plus alternating models read
/// as symmetric spaces in characteristic 2.
pub fn instance_models(kind: ModelKind, f: Field, n: usize, r: usize) -> Result<Vec<CompressionModel>> {
    let th = thresholds(kind, n, r)?.new_thm;
    let mut out: Vec<CompressionModel> = recognize::candidate_models(kind.space_kind(), f, n, r)?
        .into_iter()
        .filter(|m| m.kind == kind && m.dim().map(|d| d > th).unwrap_or(false))
        .collect();
    if kind == ModelKind::Sym && f.is_char2() && r % 2 == 0 && r + 1 <= n {
        let a = CompressionModel::alt(n, 0, r + 1)?;
        if a.dim()? > th {
            out.push(a);
        }
    }
    Ok(out)
}

/// Draws one round-trip instance: a generator model and a dimension in
/// `(threshold, dim model]`, both from the seed.
pub fn round_trip_instance(kind: ModelKind, f: Field, n: usize, r: usize, seed: u64) -> Result<Option<Sample>> {
    let models = instance_models(kind, f, n, r)?;
    if models.is_empty() {
        return Ok(None);
    }
    let th = thresholds(kind, n, r)?.new_thm;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = models[rng.gen_range(0..models.len())];
    let d = rng.gen_range(th + 1..=m.dim()?);
    let mut sample = sample_bounded_space(&m, d, f, rng.gen())?;
    if kind == ModelKind::Sym && m.kind == ModelKind::Alt {
        sample.space = sample.space.with_kind(SpaceKind::Sym)?;
    }
    Ok(Some(sample))
}

/// Configurations of the round-trip suite: `(kind, q, n, r)` with at least
/// one generator model.
pub fn round_trip_configs(cfg: &SuiteConfig) -> Result<Vec<(ModelKind, Field, usize, usize)>> {
    let mut out = Vec::new();
    for kind in [ModelKind::Alt, ModelKind::Sym] {
        for f in fields(cfg)? {
            if kind == ModelKind::Sym && f.q() == 2 {
                continue;
            }
            for &r in &cfg.r_values {
                if kind == ModelKind::Alt && r % 2 == 1 {
                    continue;
                }
                for n in cfg.n_min.max(r + 1)..=cfg.n_max {
                    if !instance_models(kind, f, n, r)?.is_empty() {
                        out.push((kind, f, n, r));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug)]
struct TrialResult {
    auto_ok: bool,
    guided_ok: bool,
    agreement: Option<bool>,
    witness: Option<Value>,
}

fn recognizer_config(mode: Mode, seed: u64, budget: u128) -> RecognizeConfig {
    RecognizeConfig {
        mode,
        flag_budget: budget,
        rank_check: RankCheck::Skip,
        check_threshold: true,
        seed,
        ..RecognizeConfig::default()
    }
}

fn round_trip_trial(
    kind: ModelKind,
    f: Field,
    n: usize,
    r: usize,
    seed: u64,
    with_oracle: bool,
    budget: u128,
) -> Result<TrialResult> {
    let sample = round_trip_instance(kind, f, n, r, seed)?.expect("configuration has generator models");
    let s = &sample.space;
    debug_assert!(verify_cert(s, &sample.truth));
    let guided = recognize::recognize(s, r, &recognizer_config(Mode::Guided, seed, budget))?;
    let guided_ok = guided.cert().is_some_and(|c| verify_cert(s, c));
    let auto_ok = if guided_ok {
        true
    } else {
        let auto = recognize::recognize(s, r, &recognizer_config(Mode::Auto, seed, budget))?;
        auto.cert().is_some_and(|c| verify_cert(s, c))
    };
    let agreement = if with_oracle && guided_ok {
        let gm = guided.cert().expect("certified").model;
        let candidates = recognize::candidate_models(s.kind(), f, n, r)?;
        let mut stats = Stats::default();
        let mut oracle_set = BTreeSet::new();
        for m in &candidates {
            if find_flag(s, m, budget, &mut stats)?.is_some() {
                oracle_set.insert(*m);
            }
        }
        Some(oracle_set.contains(&gm))
    } else {
        None
    };
    let witness = (!auto_ok || !guided_ok || agreement == Some(false))
        .then(|| json!({"seed": seed, "space": space_json(s), "truth": sample.truth.model}));
    Ok(TrialResult { auto_ok, guided_ok, agreement, witness })
}

fn suite_recognize(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for (kind, f, n, r) in round_trip_configs(cfg)? {
        let check = format!("recognize.{}.q{}.n{}.r{}", kind.name(), f.q(), n, r);
        let idx: Vec<u64> = (0..cfg.trials as u64).collect();
        let results = parallel::map(cfg.jobs, &idx, |&k| {
            let seed = derive_seed(cfg.seed, &check, k);
            round_trip_trial(kind, f, n, r, seed, (k as usize) < cfg.agreement_trials, cfg.budget)
        });
        let results: Vec<TrialResult> = results.into_iter().collect::<Result<_>>()?;
        let total = results.len();
        let auto = results.iter().filter(|t| t.auto_ok).count();
        let guided = results.iter().filter(|t| t.guided_ok).count();
        let compared = results.iter().filter(|t| t.agreement.is_some()).count();
        let agreed = results.iter().filter(|t| t.agreement == Some(true)).count();
        let params = json!({"kind": kind, "q": f.q(), "n": n, "r": r, "instances": total});
        let first_bad = |p: &dyn Fn(&TrialResult) -> bool| results.iter().find(|t| p(t)).and_then(|t| t.witness.clone());
        out.push(record(
            "recognize.auto",
            params.clone(),
            auto == total,
            Some(json!({"certified": auto})),
            first_bad(&|t| !t.auto_ok),
        ));
        out.push(record(
            "recognize.guided",
            params.clone(),
            guided * 100 >= total * 95,
            Some(json!({"certified": guided, "stall_rate": (total - guided) as f64 / total.max(1) as f64})),
            first_bad(&|t| !t.guided_ok),
        ));
        out.push(record(
            "recognize.agreement",
            params,
            agreed == compared,
            Some(json!({"compared": compared, "agreed": agreed})),
            first_bad(&|t| t.agreement == Some(false)),
        ));
    }
    Ok(out)
}

/// Dichotomy inputs: the alternating `(n, s)` with `2s < n−1`.
fn dichotomy_pairs(cfg: &SuiteConfig) -> Vec<(usize, usize)> {
    (cfg.n_min.max(4)..=cfg.n_max).flat_map(|n| (1..).take_while(move |&s| 2 * s + 1 < n).map(move |s| (n, s))).collect()
}

fn suite_dichotomy(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for f in fields(cfg)? {
        for (n, s) in dichotomy_pairs(cfg) {
            let idx: Vec<u64> = (0..cfg.trials as u64).collect();
            // Full models: every hyperplane has dim S_H >= s.
            let check = format!("dichotomy.full.q{}.n{n}.s{s}", f.q());
            let model = CompressionModel::alt(n, s, 1)?;
            let res = parallel::map(cfg.jobs, &idx, |&k| -> Result<Option<Value>> {
                let seed = derive_seed(cfg.seed, &check, k);
                let sample = sample_bounded_space(&model, model.dim()?, f, seed)?;
                let a = sample.space.min_dim_sh(false, 1)?;
                Ok((a.m < s).then(|| json!({"seed": seed, "space": space_json(&sample.space), "min_dim_sh": a.m})))
            });
            let bad: Vec<Value> = res.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
            out.push(record(
                "dichotomy.full_model",
                json!({"q": f.q(), "n": n, "s": s, "trials": cfg.trials}),
                bad.is_empty(),
                None,
                bad.first().cloned(),
            ));

            // Subspaces of WA_{n,0,2s+1} above the threshold: some dim S_H < s.
            let r = 2 * s;
            let wide = CompressionModel::alt(n, 0, r + 1)?;
            let th = if r >= 2 && r < n { thresholds(ModelKind::Alt, n, r)?.new_thm } else { 0 };
            if wide.dim()? <= th {
                continue;
            }
            let check = format!("dichotomy.wide.q{}.n{n}.s{s}", f.q());
            let res = parallel::map(cfg.jobs, &idx, |&k| -> Result<Option<Value>> {
                let seed = derive_seed(cfg.seed, &check, k);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let d = rng.gen_range(th + 1..=wide.dim()?);
                let sample = sample_bounded_space(&wide, d, f, rng.gen())?;
                let a = sample.space.min_dim_sh(false, 1)?;
                Ok((a.m >= s).then(|| json!({"seed": seed, "space": space_json(&sample.space), "min_dim_sh": a.m})))
            });
            let bad: Vec<Value> = res.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
            out.push(record(
                "dichotomy.wide_model",
                json!({"q": f.q(), "n": n, "s": s, "trials": cfg.trials, "threshold": th}),
                bad.is_empty(),
                None,
                bad.first().cloned(),
            ));
        }
    }
    Ok(out)
}

fn suite_char2(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for f in fields(cfg)?.into_iter().filter(|f| f.is_char2() && f.q() > 2) {
        for n in cfg.n_min..=cfg.n_max {
            for &r in cfg.r_values.iter().filter(|&&r| r % 2 == 0 && r >= 4 && r + 1 <= n) {
                let model = CompressionModel::alt(n, 0, r + 1)?;
                let th = thresholds(ModelKind::Sym, n, r)?.new_thm;
                if model.dim()? <= th {
                    continue;
                }
                let check = format!("char2.q{}.n{n}.r{r}", f.q());
                let idx: Vec<u64> = (0..cfg.trials as u64).collect();
                let res = parallel::map(cfg.jobs, &idx, |&k| -> Result<Option<Value>> {
                    let seed = derive_seed(cfg.seed, &check, k);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let d = rng.gen_range(th + 1..=model.dim()?);
                    let sample = sample_bounded_space(&model, d, f, rng.gen())?;
                    let s = sample.space.with_kind(SpaceKind::Sym)?;
                    let outcome = recognize::recognize(&s, r, &recognizer_config(Mode::Auto, seed, cfg.budget))?;
                    let ok = match &outcome.verdict {
                        Verdict::Certified(c) => c.model == model && verify_cert(&s, c),
                        _ => false,
                    };
                    Ok((!ok).then(|| json!({"seed": seed, "space": space_json(&s), "outcome": outcome.to_json()})))
                });
                let bad: Vec<Value> = res.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
                out.push(record(
                    "char2.alternating_outcome",
                    json!({"q": f.q(), "n": n, "r": r, "trials": cfg.trials}),
                    bad.is_empty(),
                    None,
                    bad.first().cloned(),
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_examples() {
        let f2 = Field::new(2).unwrap();
        let m = CompressionModel::alt(6, 2, 1).unwrap();
        let s = sample_bounded_space(&m, 9, f2, 7).unwrap();
        assert_eq!(s.space.dim(), 9);
        assert!(verify_cert(&s.space, &s.truth));

        let f3 = Field::new(3).unwrap();
        let m = CompressionModel::sym(5, 1, 1).unwrap();
        let s = sample_bounded_space(&m, 3, f3, 1).unwrap();
        assert_eq!(s.space.dim(), 3);
        assert!(s.space.urk_exact(1000).unwrap().value <= 3);

        assert!(matches!(sample_bounded_space(&m, 99, f3, 1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn seeds_are_stable_and_distinct() {
        assert_eq!(derive_seed(1, "a", 2), derive_seed(1, "a", 2));
        assert_ne!(derive_seed(1, "a", 2), derive_seed(1, "a", 3));
        assert_ne!(derive_seed(1, "a", 2), derive_seed(1, "b", 2));
    }

    #[test]
    fn small_suites_pass_and_are_deterministic() {
        for name in ["formulas", "convexity", "schur"] {
            let mut cfg = SuiteConfig::defaults(name).unwrap();
            cfg.n_max = cfg.n_max.min(6);
            cfg.trials = cfg.trials.min(50);
            let a = run_suite(&cfg).unwrap();
            assert!(a.passed(), "{name}: {}", a.to_jsonl());
            cfg.jobs = 3;
            let b = run_suite(&cfg).unwrap();
            assert_eq!(a.to_jsonl(), b.to_jsonl());
        }
    }

    #[test]
    fn unknown_suite_is_a_config_error() {
        assert!(matches!(SuiteConfig::defaults("nope"), Err(Error::Config(_))));
    }
}
