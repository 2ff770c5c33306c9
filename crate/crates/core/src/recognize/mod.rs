//! Recognition of spaces congruent to a subspace of a compression model.
//!
//! Two procedures are provided: an exhaustive flag search ([`oracle`]) and
//! an inductive search ([`guided`]) that mirrors the classification proofs
//! (hyperplane sections, compressions, liftings). Both return a
//! [`CongruenceCert`] that [`verify_cert`] checks independently.

pub mod guided;
pub mod lift;
pub mod oracle;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Vector;
use crate::matrix::Mat;
use crate::models::{thresholds, CompressionModel, ModelKind};
use crate::space::{MatSpace, SpaceKind, UrkMethod, DEFAULT_URK_BUDGET};

pub use guided::{guided_recognize_alt, guided_recognize_sym, recognize_small_rank, GuidedConfig};
pub use lift::{lift_kind1_alt, lift_kind1_sym, lift_kind2};
pub use oracle::{find_flag, flag_to_cert, oracle_recognize, oracle_recognize_any, DEFAULT_FLAG_BUDGET};

/// Nested subspaces `z ⊆ z'` with `dim z' = n−s`, `dim z = n−s−t` and
/// `b_M(z, z') = 0` for every member `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub z_prime: Vec<Vector>,
    pub z: Vec<Vector>,
}

/// An invertible `P` with `P·M·Pᵀ` inside the model pattern for every
/// member `M` of the certified space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceCert {
    pub p: Mat,
    pub model: CompressionModel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified(CongruenceCert),
    /// None of the listed models contains a congruent copy (oracle only).
    NotContained(Vec<CompressionModel>),
    Stalled(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub hyperplanes_scanned: u64,
    pub flags_tested: u64,
}

impl Stats {
    pub fn absorb(&mut self, other: Stats) {
        self.hyperplanes_scanned += other.hyperplanes_scanned;
        self.flags_tested += other.flags_tested;
    }
}

/// Which procedure produced the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Guided,
    Oracle,
}

#[derive(Clone, Debug)]
pub struct RecognitionOutcome {
    pub verdict: Verdict,
    pub method: Method,
    pub trace: Vec<String>,
    pub stats: Stats,
}

impl RecognitionOutcome {
    pub fn cert(&self) -> Option<&CongruenceCert> {
        match &self.verdict {
            Verdict::Certified(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.verdict, Verdict::Certified(_))
    }

    pub fn is_stalled(&self) -> bool {
        matches!(self.verdict, Verdict::Stalled(_))
    }

    pub fn to_json(&self) -> OutcomeJson {
        let (verdict, model, p, reason, not_contained) = match &self.verdict {
            Verdict::Certified(c) => ("certified", Some(c.model), Some(rows_of(&c.p)), None, None),
            Verdict::NotContained(ms) => ("not_contained", None, None, None, Some(ms.clone())),
            Verdict::Stalled(r) => ("stalled", None, None, Some(r.clone()), None),
        };
        OutcomeJson {
            verdict: verdict.to_string(),
            model,
            p,
            trace: self.trace.clone(),
            stats: self.stats,
            method: self.method,
            reason,
            not_contained,
        }
    }
}

fn rows_of(m: &Mat) -> Vec<Vec<u8>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Outcome as emitted by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OutcomeJson {
    pub verdict: String,
    pub model: Option<CompressionModel>,
    #[serde(rename = "P")]
    pub p: Option<Vec<Vec<u8>>>,
    pub trace: Vec<String>,
    pub stats: Stats,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_contained: Option<Vec<CompressionModel>>,
}

/// True iff `cert.p` is invertible and carries every basis matrix of `s`
/// into the model pattern. Alternating models also require alternating
/// images, which matters for symmetric spaces in characteristic 2.
pub fn verify_cert(s: &MatSpace, cert: &CongruenceCert) -> bool {
    let n = s.n();
    let p = &cert.p;
    if !s.kind().is_square()
        || cert.model.n != n
        || p.rows() != n
        || p.cols() != n
        || p.field() != s.field()
        || !p.is_invertible()
    {
        return false;
    }
    s.basis().iter().all(|m| {
        let img = m.congruent_by(p);
        cert.model.pattern_contains(&img) && (cert.model.kind != ModelKind::Alt || img.is_alternating())
    })
}

/// How [`recognize`] chooses between the two procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Guided,
    Oracle,
    /// Guided first, oracle on a stall.
    Auto,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "guided" => Ok(Mode::Guided),
            "oracle" => Ok(Mode::Oracle),
            "auto" => Ok(Mode::Auto),
            _ => Err(Error::InvalidParams(format!("unknown mode `{s}` (guided, oracle or auto)"))),
        }
    }
}

/// How the guided procedure confirms the rank bound before starting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankCheck {
    /// Exact enumeration when `q^dim` is within the budget, sampling otherwise.
    Exact { budget: u128, fallback_trials: usize },
    Sampled { trials: usize },
    Skip,
}

#[derive(Clone, Debug)]
pub struct RecognizeConfig {
    pub mode: Mode,
    pub flag_budget: u128,
    pub rank_check: RankCheck,
    pub check_threshold: bool,
    pub seed: u64,
    pub guided: GuidedConfig,
}

impl Default for RecognizeConfig {
    fn default() -> Self {
        RecognizeConfig {
            mode: Mode::Auto,
            flag_budget: DEFAULT_FLAG_BUDGET,
            rank_check: RankCheck::Exact { budget: DEFAULT_URK_BUDGET, fallback_trials: 20_000 },
            check_threshold: true,
            seed: 0,
            guided: GuidedConfig::default(),
        }
    }
}

/// Models that a space of the given kind with `urk ≤ r` and dimension above
/// the threshold can be congruent into, in the order they are tried.
pub fn candidate_models(kind: SpaceKind, field: Field, n: usize, r: usize) -> Result<Vec<CompressionModel>> {
    let (s, eps) = (r / 2, r % 2);
    match kind {
        SpaceKind::Alt => {
            if r % 2 == 1 || r < 2 {
                return Err(Error::InvalidParams(format!("alternating rank bound must be even and positive, got {r}")));
            }
            if r == 2 {
                return Ok(vec![CompressionModel::alt(n, 1, 1)?]);
            }
            Ok(vec![CompressionModel::alt(n, s, 1)?, CompressionModel::alt(n, 0, r + 1)?])
        }
        SpaceKind::Sym => match r {
            0 | 1 => Err(Error::InvalidParams(format!("rank bound {r} is below 2"))),
            2 => Ok(vec![CompressionModel::sym(n, 1, 0)?]),
            3 => Ok(vec![CompressionModel::sym(n, 1, 1)?]),
            _ => {
                let mut v = vec![CompressionModel::sym(n, s, eps)?, CompressionModel::sym(n, 0, r)?];
                if field.is_char2() && eps == 0 {
                    v.push(CompressionModel::alt(n, 0, r + 1)?);
                }
                Ok(v)
            }
        },
        SpaceKind::Rect(_) => Err(Error::KindMismatch("recognition needs a sym or alt space".into())),
    }
}

/// Checks the preconditions shared by the recognizers: dimension above the
/// threshold and no member of rank above `r`.
pub(crate) fn check_preconditions(
    s: &MatSpace,
    kind: ModelKind,
    r: usize,
    cfg: &RecognizeConfig,
    trace: &mut Vec<String>,
) -> Result<()> {
    if cfg.check_threshold {
        let th = thresholds(kind, s.n(), r)?;
        if s.dim() <= th.new_thm {
            return Err(Error::ThresholdNotMet { dim: s.dim(), threshold: th.new_thm });
        }
        trace.push(format!("threshold: dim {} > {}", s.dim(), th.new_thm));
    }
    let urk = match cfg.rank_check {
        RankCheck::Skip => return Ok(()),
        RankCheck::Exact { budget, fallback_trials } => match s.urk_exact(budget) {
            Ok(u) => u,
            Err(Error::BudgetExceeded { .. }) => s.urk_sampled(fallback_trials, cfg.seed),
            Err(e) => return Err(e),
        },
        RankCheck::Sampled { trials } => s.urk_sampled(trials, cfg.seed),
    };
    if urk.value > r {
        return Err(Error::RankBoundViolated { found: urk.value, bound: r });
    }
    let how = match urk.method {
        UrkMethod::Exact => "exact",
        UrkMethod::Sampled => "sampled lower bound",
    };
    trace.push(format!("rank check ({how}): {} <= {r}", urk.value));
    Ok(())
}

/// Recognizes `s` (sym or alt, `urk ≤ r`) with the configured mode.
pub fn recognize(s: &MatSpace, r: usize, cfg: &RecognizeConfig) -> Result<RecognitionOutcome> {
    let models = candidate_models(s.kind(), s.field(), s.n(), r)?;
    let guided = |cfg: &RecognizeConfig| match s.kind() {
        SpaceKind::Alt => guided_recognize_alt(s, r, cfg),
        _ => guided_recognize_sym(s, r, cfg),
    };
    match cfg.mode {
        Mode::Guided => guided(cfg),
        Mode::Oracle => {
            if s.kind() == SpaceKind::Sym && s.field().q() == 2 {
                return Err(Error::UnsupportedField(2));
            }
            let mut trace = Vec::new();
            let kind = if s.kind() == SpaceKind::Alt { ModelKind::Alt } else { ModelKind::Sym };
            check_preconditions(s, kind, r, cfg, &mut trace)?;
            let mut out = oracle_recognize_any(s, &models, cfg.flag_budget)?;
            trace.append(&mut out.trace);
            out.trace = trace;
            Ok(out)
        }
        Mode::Auto => {
            let mut out = guided(cfg)?;
            if let Verdict::Stalled(reason) = &out.verdict {
                out.trace.push(format!("guided search stalled ({reason}); falling back to the flag oracle"));
                let fb = oracle_recognize_any(s, &models, cfg.flag_budget)?;
                out.trace.extend(fb.trace);
                out.stats.absorb(fb.stats);
                out.verdict = fb.verdict;
                out.method = Method::Oracle;
            }
            Ok(out)
        }
    }
}

/// Certificate text: the matspace-style header with `P` as its single
/// block, followed by `model <sym|alt> n s t`.
pub fn write_cert(cert: &CongruenceCert) -> String {
    let n = cert.p.rows();
    let mut out = format!("%matspace v1\nfield {}\nkind rect\nsize {n} {n}\ndim 1\n", cert.p.field().q());
    crate::space::write_block(&mut out, &cert.p);
    let m = cert.model;
    out.push_str(&format!("model {} {} {} {}\n", m.kind.name(), m.n, m.s, m.t));
    out
}

/// Parses [`write_cert`] output; `P` is taken verbatim.
pub fn parse_cert(text: &str) -> Result<CongruenceCert> {
    let lines: Vec<(usize, &str)> =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
    let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    let get = |i: usize| lines.get(i).copied().ok_or_else(|| perr(i + 1, "unexpected end of certificate"));
    if get(0)?.1 != "%matspace v1" {
        return Err(perr(get(0)?.0, "expected `%matspace v1`"));
    }
    let (ln, fl) = get(1)?;
    let q: u32 = fl.strip_prefix("field ").and_then(|x| x.trim().parse().ok()).ok_or_else(|| perr(ln, "bad field line"))?;
    let field = Field::new(q).map_err(|e| perr(ln, &e.to_string()))?;
    let (ln, size) = get(3)?;
    let dims: Vec<usize> = size
        .strip_prefix("size ")
        .map(|x| x.split_whitespace().filter_map(|t| t.parse().ok()).collect())
        .unwrap_or_default();
    let n = match dims.as_slice() {
        [a, b] if a == b => *a,
        _ => return Err(perr(ln, "certificate must be square")),
    };
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(n);
    for k in 0..n {
        let (ln, l) = get(5 + k)?;
        let row: Vec<u8> = l
            .split_whitespace()
            .map(|t| t.parse::<u8>().ok().filter(|&x| field.is_valid(x as u32)))
            .collect::<Option<_>>()
            .ok_or_else(|| perr(ln, "bad matrix entry"))?;
        if row.len() != n {
            return Err(perr(ln, "wrong row length"));
        }
        rows.push(row);
    }
    let (ln, ml) = get(5 + n)?;
    let parts: Vec<&str> = ml.split_whitespace().collect();
    let model = match parts.as_slice() {
        ["model", k, a, b, c] => {
            let num = |x: &str| x.parse::<usize>().map_err(|_| perr(ln, "bad model number"));
            CompressionModel::new(k.parse()?, num(a)?, num(b)?, num(c)?)?
        }
        _ => return Err(perr(ln, "expected `model <sym|alt> n s t`")),
    };
    Ok(CongruenceCert { p: Mat::from_rows(field, &rows)?, model })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::CompressionModel;

    #[test]
    fn verify_examples() {
        let f = Field::new(2).unwrap();
        let m = CompressionModel::alt(6, 2, 1).unwrap();
        let s = m.space(f).unwrap();
        let good = CongruenceCert { p: Mat::identity(f, 6), model: m };
        assert!(verify_cert(&s, &good));
        let singular = CongruenceCert { p: Mat::zeros(f, 6, 6), model: m };
        assert!(!verify_cert(&s, &singular));
        let wrong = CongruenceCert { p: Mat::identity(f, 6), model: CompressionModel::alt(6, 0, 5).unwrap() };
        assert!(!verify_cert(&s, &wrong));
    }

    #[test]
    fn cert_text_roundtrip() {
        let f = Field::new(4).unwrap();
        let p = Mat::from_rows(f, &[[1, 2, 0], [0, 1, 3], [0, 0, 1]]).unwrap();
        let cert = CongruenceCert { p, model: CompressionModel::sym(3, 1, 0).unwrap() };
        let text = write_cert(&cert);
        assert!(text.ends_with("model sym 3 1 0\n"));
        assert_eq!(parse_cert(&text).unwrap(), cert);
    }

    #[test]
    fn candidates() {
        let f3 = Field::new(3).unwrap();
        let f4 = Field::new(4).unwrap();
        assert_eq!(candidate_models(SpaceKind::Alt, f3, 6, 4).unwrap().len(), 2);
        assert_eq!(candidate_models(SpaceKind::Sym, f4, 6, 4).unwrap().len(), 3);
        assert_eq!(candidate_models(SpaceKind::Sym, f3, 6, 4).unwrap().len(), 2);
        assert!(candidate_models(SpaceKind::Alt, f3, 6, 3).is_err());
    }
}
