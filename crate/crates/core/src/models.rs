//! The compression models `WS_{n,s,t}` and `WA_{n,s,t}`.
//!
//! Entry `(i,j)` (0-based) of a model member may be nonzero iff `i < s`,
//! `j < s`, or both `i` and `j` lie in `[s, s+t)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::space::{MatSpace, SpaceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Sym,
    Alt,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Sym => "sym",
            ModelKind::Alt => "alt",
        }
    }

    pub fn space_kind(self) -> SpaceKind {
        match self {
            ModelKind::Sym => SpaceKind::Sym,
            ModelKind::Alt => SpaceKind::Alt,
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(ModelKind::Sym),
            "alt" => Ok(ModelKind::Alt),
            _ => Err(Error::InvalidParams(format!("unknown kind `{s}` (expected sym or alt)"))),
        }
    }
}

/// `WS_{n,s,t}` (kind sym) or `WA_{n,s,t}` (kind alt).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompressionModel {
    pub kind: ModelKind,
    pub n: usize,
    pub s: usize,
    pub t: usize,
}

impl std::fmt::Display for CompressionModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let w = match self.kind {
            ModelKind::Sym => "WS",
            ModelKind::Alt => "WA",
        };
        write!(f, "{w}_{{{},{},{}}}", self.n, self.s, self.t)
    }
}

fn c2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// `s_{n,s,t}`.
pub fn sym_dim(n: usize, s: usize, t: usize) -> usize {
    c2(s + 1) + c2(t + 1) + s * (n - s)
}

/// `a_{n,s,t}`.
pub fn alt_dim(n: usize, s: usize, t: usize) -> usize {
    c2(s) + c2(t) + s * (n - s)
}

/// Upper-rank of a model with a witness of that rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelUrk {
    pub value: usize,
    /// False for alternating models with even `t`, where only the structural
    /// bound `2s+t` is claimed (the witness still attains it).
    pub exact: bool,
    pub witness: Mat,
}

impl CompressionModel {
    pub fn new(kind: ModelKind, n: usize, s: usize, t: usize) -> Result<Self> {
        if 2 * s + t > n {
            return Err(Error::InvalidModel(format!("2s+t = {} exceeds n = {n}", 2 * s + t)));
        }
        Ok(CompressionModel { kind, n, s, t })
    }

    pub fn sym(n: usize, s: usize, t: usize) -> Result<Self> {
        Self::new(ModelKind::Sym, n, s, t)
    }

    pub fn alt(n: usize, s: usize, t: usize) -> Result<Self> {
        Self::new(ModelKind::Alt, n, s, t)
    }

    fn check(&self) -> Result<()> {
        Self::new(self.kind, self.n, self.s, self.t).map(|_| ())
    }

    /// Whether entry `(i,j)` is allowed to be nonzero.
    #[inline]
    pub fn allows(&self, i: usize, j: usize) -> bool {
        let (s, e) = (self.s, self.s + self.t);
        i < s || j < s || ((s..e).contains(&i) && (s..e).contains(&j))
    }

    /// Whether `m` lies in the pattern (kind is not checked).
    pub fn pattern_contains(&self, m: &Mat) -> bool {
        m.rows() == self.n
            && m.cols() == self.n
            && (0..self.n).all(|i| (0..self.n).all(|j| self.allows(i, j) || m.get(i, j) == 0))
    }

    /// Basis of elementary pattern matrices.
    pub fn space(&self, field: Field) -> Result<MatSpace> {
        self.check()?;
        let n = self.n;
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i..n {
                if !self.allows(i, j) {
                    continue;
                }
                match self.kind {
                    ModelKind::Sym => gens.push(Mat::sym_unit(field, n, i, j)),
                    ModelKind::Alt if i < j => gens.push(Mat::alt_unit(field, n, i, j)),
                    ModelKind::Alt => {}
                }
            }
        }
        MatSpace::make(field, self.kind.space_kind(), n, &gens)
    }

    pub fn dim(&self) -> Result<usize> {
        self.check()?;
        Ok(match self.kind {
            ModelKind::Sym => sym_dim(self.n, self.s, self.t),
            ModelKind::Alt => alt_dim(self.n, self.s, self.t),
        })
    }

    /// `2s+t` bounds the rank of every member: rows past `s+t` only meet the
    /// first `s` columns.
    pub fn structural_bound(&self) -> usize {
        let b = 2 * self.s + self.t;
        match self.kind {
            ModelKind::Sym => b,
            ModelKind::Alt => b & !1,
        }
    }

    /// Upper-rank with an explicit witness.
    ///
    /// The witness pairs coordinate `i < s` with `s+t+i`, and fills the
    /// `[s, s+t)` block with the identity (sym) or 2×2 rotations (alt).
    pub fn urk(&self, field: Field) -> Result<ModelUrk> {
        self.check()?;
        let (n, s, t) = (self.n, self.s, self.t);
        let mut w = Mat::zeros(field, n, n);
        for i in 0..s {
            let j = s + t + i;
            w.set(i, j, 1);
            w.set(j, i, if self.kind == ModelKind::Alt { field.neg(1) } else { 1 });
        }
        match self.kind {
            ModelKind::Sym => {
                for i in s..s + t {
                    w.set(i, i, 1);
                }
            }
            ModelKind::Alt => {
                for k in 0..t / 2 {
                    let (a, b) = (s + 2 * k, s + 2 * k + 1);
                    w.set(a, b, 1);
                    w.set(b, a, field.neg(1));
                }
            }
        }
        let exact = self.kind == ModelKind::Sym || t % 2 == 1;
        Ok(ModelUrk { value: self.structural_bound(), exact, witness: w })
    }

    /// Every `(i,j)`, `i ≤ j` (`i < j` for alt), outside the pattern.
    pub fn external_positions(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let strict = self.kind == ModelKind::Alt;
        (0..n)
            .flat_map(|i| ((if strict { i + 1 } else { i })..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.allows(i, j))
            .collect()
    }

    /// Every valid model of the given kind and size.
    pub fn all(kind: ModelKind, n: usize) -> Vec<CompressionModel> {
        let mut out = Vec::new();
        for s in 0..=n / 2 {
            for t in 0..=n - 2 * s {
                out.push(CompressionModel { kind, n, s, t });
            }
        }
        out
    }
}

/// Dimension thresholds attached to a rank bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Spaces of dimension strictly above this value fall into one of the
    /// recognized model families.
    pub new_thm: usize,
    /// Maximal dimension of a space with the given rank bound.
    pub old_thm_max: usize,
}

/// Thresholds for spaces of `n × n` matrices with upper-rank at most `r`.
///
/// For `r ∈ {2, 3}` the small-rank bounds apply: 3 for rank 2, 6 for
/// symmetric rank 3.
pub fn thresholds(kind: ModelKind, n: usize, r: usize) -> Result<Thresholds> {
    if r < 2 || r >= n {
        return Err(Error::InvalidParams(format!("need 2 <= r < n, got r={r}, n={n}")));
    }
    match kind {
        ModelKind::Alt => {
            if r % 2 == 1 {
                return Err(Error::InvalidParams(format!("alternating rank bound must be even, got {r}")));
            }
            let s = r / 2;
            let new_thm = if s == 1 { 3 } else { alt_dim(n, 1, r - 1).max(alt_dim(n, s - 1, 3)) };
            let old_thm_max = alt_dim(n, 0, r + 1).max(alt_dim(n, s, 1));
            Ok(Thresholds { new_thm, old_thm_max })
        }
        ModelKind::Sym => {
            let s = r / 2;
            let eps = r % 2;
            let new_thm = match (s, eps) {
                (1, 0) => 3,
                (1, _) => 6,
                _ => sym_dim(n, 1, r - 2).max(sym_dim(n, s - 1, 2 + eps)),
            };
            let old_thm_max = sym_dim(n, 0, r).max(sym_dim(n, s, eps));
            Ok(Thresholds { new_thm, old_thm_max })
        }
    }
}

/// The dimension sequence over `s` for a fixed total rank `r`:
/// `s_{n,s,r−2s}` (sym) or `a_{n,s,r+1−2s}` (alt).
pub fn dimension_sequence(kind: ModelKind, n: usize, r: usize) -> Vec<i64> {
    let (n, r) = (n as i64, r as i64);
    let c2 = |x: i64| x * (x - 1) / 2;
    match kind {
        ModelKind::Sym => (0..=r / 2).map(|s| c2(s + 1) + c2(r - 2 * s + 1) + s * (n - s)).collect(),
        ModelKind::Alt => (0..=(r + 1) / 2).map(|s| c2(s) + c2(r + 1 - 2 * s) + s * (n - s)).collect(),
    }
}

/// True iff every second difference of [`dimension_sequence`] equals 3.
pub fn convexity_check(kind: ModelKind, n: usize, r: usize) -> bool {
    dimension_sequence(kind, n, r).windows(3).all(|w| w[2] - 2 * w[1] + w[0] == 3)
}

/// `kind n s t dim urk` rows for every model with `n` in the range, as TSV
/// with a header.
pub fn dims_table(kinds: &[ModelKind], ns: std::ops::RangeInclusive<usize>) -> String {
    let mut out = String::from("kind\tn\ts\tt\tdim\turk\n");
    for &kind in kinds {
        for n in ns.clone() {
            for m in CompressionModel::all(kind, n) {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    kind.name(),
                    n,
                    m.s,
                    m.t,
                    m.dim().expect("valid model"),
                    m.structural_bound()
                ));
            }
        }
    }
    out
}
