//! Linear spaces of matrices, hyperplane sections `S_H`, the block
//! compressions `P` and `K`, and the two linear solves the lifting steps
//! reduce to.

mod io;

use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumerate;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, Vector};
use crate::matrix::Mat;

pub use io::{parse_matspace, write_matspace, MatSpaceJson};
pub(crate) use io::write_block;

/// Default enumeration budget for exact upper-rank computations.
pub const DEFAULT_URK_BUDGET: u128 = 10_000_000;

/// Ambient space of a [`MatSpace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Sym,
    Alt,
    /// `n × p` matrices; the payload is `p`.
    Rect(usize),
}

impl SpaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Sym => "sym",
            SpaceKind::Alt => "alt",
            SpaceKind::Rect(_) => "rect",
        }
    }

    pub fn is_square(self) -> bool {
        !matches!(self, SpaceKind::Rect(_))
    }
}

/// A linear subspace of `Mats_n`, `Mata_n` or `Mat_{n,p}`, stored as a
/// reduced echelon basis of coordinate vectors.
///
/// Coordinates: sym uses `(i,j)` with `i ≤ j`, alt uses `i < j`, both in
/// lexicographic order; rect is row-major. Two spaces are equal iff their
/// bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatSpace {
    field: Field,
    kind: SpaceKind,
    n: usize,
    coords: Vec<Vector>,
    basis: Vec<Mat>,
}

impl std::fmt::Debug for MatSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatSpace({} {} n={} dim={})", self.field, self.kind.name(), self.n, self.dim())
    }
}

fn coord_positions(kind: SpaceKind, n: usize) -> Vec<(usize, usize)> {
    match kind {
        SpaceKind::Sym => (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect(),
        SpaceKind::Alt => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
        SpaceKind::Rect(p) => (0..n).flat_map(|i| (0..p).map(move |j| (i, j))).collect(),
    }
}

impl MatSpace {
    /// Builds the span of `generators`, dropping dependent ones.
    pub fn make(field: Field, kind: SpaceKind, n: usize, generators: &[Mat]) -> Result<Self> {
        let cols = match kind {
            SpaceKind::Rect(p) => p,
            _ => n,
        };
        let mut coords = Vec::with_capacity(generators.len());
        for (idx, g) in generators.iter().enumerate() {
            if g.rows() != n || g.cols() != cols || g.field() != field {
                return Err(Error::ShapeMismatch(format!(
                    "generator {idx} is {}x{} over {}, expected {n}x{cols} over {field}",
                    g.rows(),
                    g.cols(),
                    g.field()
                )));
            }
            let ok = match kind {
                SpaceKind::Sym => g.is_symmetric(),
                SpaceKind::Alt => g.is_alternating(),
                SpaceKind::Rect(_) => true,
            };
            if !ok {
                return Err(Error::KindMismatch(format!("generator {idx} is not {}", kind.name())));
            }
            coords.push(to_coords(kind, n, g));
        }
        Ok(Self::from_coords(field, kind, n, coords))
    }

    /// Span of coordinate vectors in this kind's vectorization order.
    pub fn from_coords(field: Field, kind: SpaceKind, n: usize, mut coords: Vec<Vector>) -> Self {
        let width = ambient_dim(kind, n);
        coords.retain(|c| !linalg::is_zero(c));
        linalg::rref_with_width(field, &mut coords, width);
        let basis = coords.iter().map(|c| from_coords(field, kind, n, c)).collect();
        MatSpace { field, kind, n, coords, basis }
    }

    pub fn zero(field: Field, kind: SpaceKind, n: usize) -> Self {
        Self::from_coords(field, kind, n, Vec::new())
    }

    /// The whole ambient space.
    pub fn full(field: Field, kind: SpaceKind, n: usize) -> Self {
        let d = ambient_dim(kind, n);
        Self::from_coords(field, kind, n, (0..d).map(|i| linalg::unit(d, i)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn kind(&self) -> SpaceKind {
        self.kind
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn cols(&self) -> usize {
        match self.kind {
            SpaceKind::Rect(p) => p,
            _ => self.n,
        }
    }
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
    pub fn ambient_dim(&self) -> usize {
        ambient_dim(self.kind, self.n)
    }
    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }
    pub fn coords(&self) -> &[Vector] {
        &self.coords
    }

    pub fn coords_of(&self, m: &Mat) -> Vector {
        to_coords(self.kind, self.n, m)
    }

    /// `Σ c_k B_k` over the canonical basis.
    pub fn member(&self, coeffs: &[Elem]) -> Mat {
        let mut m = Mat::zeros(self.field, self.n, self.cols());
        for (&c, b) in coeffs.iter().zip(&self.basis) {
            m.add_scaled_assign(c, b);
        }
        m
    }

    pub fn contains(&self, m: &Mat) -> bool {
        if m.rows() != self.n || m.cols() != self.cols() {
            return false;
        }
        let c = self.coords_of(m);
        if from_coords(self.field, self.kind, self.n, &c) != *m {
            return false;
        }
        let mut rows = self.coords.clone();
        rows.push(c);
        linalg::rank_of_rows(self.field, &rows) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &MatSpace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Span of `self ∪ extra`.
    pub fn extended(&self, extra: &[Mat]) -> Result<MatSpace> {
        let mut gens = self.basis.clone();
        gens.extend_from_slice(extra);
        MatSpace::make(self.field, self.kind, self.n, &gens)
    }

    /// `{P M Pᵀ : M ∈ S}` for invertible `P`.
    pub fn congruent(&self, p: &Mat) -> Result<MatSpace> {
        if !self.kind.is_square() {
            return Err(Error::ShapeMismatch("congruence of a rectangular space".into()));
        }
        let gens: Vec<Mat> =
            self.basis.iter().map(|b| Mat::congruence(p, b)).collect::<Result<_>>()?;
        MatSpace::make(self.field, self.kind, self.n, &gens)
    }

    /// Reinterprets a space of alternating matrices as a space of symmetric
    /// ones (characteristic 2 only) or vice versa when every member allows it.
    pub fn with_kind(&self, kind: SpaceKind) -> Result<MatSpace> {
        MatSpace::make(self.field, kind, self.n, &self.basis)
    }

    /// True when every member is alternating.
    pub fn is_alternating(&self) -> bool {
        self.basis.iter().all(|b| b.is_alternating())
    }

    /// Largest rank any member of this kind could have.
    fn rank_ceiling(&self) -> usize {
        match self.kind {
            SpaceKind::Alt => self.n & !1,
            SpaceKind::Sym if self.is_alternating() => self.n & !1,
            SpaceKind::Sym => self.n,
            SpaceKind::Rect(p) => self.n.min(p),
        }
    }

    /// Visits one representative of every line of the space (coefficient
    /// vectors whose first nonzero entry is 1), updating members
    /// incrementally. Rank is invariant under scaling, so this suffices for
    /// every rank question.
    pub fn for_each_projective_member<B>(&self, mut visit: impl FnMut(&Mat) -> ControlFlow<B>) -> Option<B> {
        let f = self.field;
        let d = self.dim();
        for lead in 0..d {
            let tail = d - lead - 1;
            let mut digits = vec![0 as Elem; tail];
            let mut m = self.basis[lead].clone();
            loop {
                if let ControlFlow::Break(b) = visit(&m) {
                    return Some(b);
                }
                // advance the tail odometer, patching m for each changed digit
                let mut pos = tail;
                let mut carry = true;
                while carry && pos > 0 {
                    pos -= 1;
                    let old = digits[pos];
                    let new = if (old as u32) + 1 < f.q() { old + 1 } else { 0 };
                    digits[pos] = new;
                    m.add_scaled_assign(f.sub(new, old), &self.basis[lead + 1 + pos]);
                    carry = new == 0;
                }
                if carry {
                    break;
                }
            }
        }
        None
    }

    /// Upper-rank under the given policy.
    pub fn urk(&self, policy: UrkPolicy) -> Result<Urk> {
        match policy {
            UrkPolicy::Exact { budget } => self.urk_exact(budget),
            UrkPolicy::Sampled { trials, seed } => Ok(self.urk_sampled(trials, seed)),
        }
    }

    /// Exact maximum rank by enumerating the projective members.
    pub fn urk_exact(&self, budget: u128) -> Result<Urk> {
        let needed = enumerate::space_size(self.field.q(), self.dim());
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let ceiling = self.rank_ceiling();
        let mut best = 0;
        let mut witness = Mat::zeros(self.field, self.n, self.cols());
        self.for_each_projective_member(|m| {
            let r = m.rank();
            if r > best {
                best = r;
                witness = m.clone();
                if r == ceiling {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        Ok(Urk { value: best, method: UrkMethod::Exact, witness })
    }

    /// Lower bound for the upper-rank from random members.
    pub fn urk_sampled(&self, trials: usize, seed: u64) -> Urk {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = 0;
        let mut witness = Mat::zeros(self.field, self.n, self.cols());
        let ceiling = self.rank_ceiling();
        for _ in 0..trials {
            let m = self.random_member(&mut rng);
            let r = m.rank();
            if r > best {
                best = r;
                witness = m;
                if r == ceiling {
                    break;
                }
            }
        }
        Urk { value: best, method: UrkMethod::Sampled, witness }
    }

    /// Exact when affordable, sampled otherwise.
    pub fn urk_auto(&self, budget: u128, seed: u64) -> Urk {
        self.urk_exact(budget).unwrap_or_else(|_| self.urk_sampled(20_000, seed))
    }

    pub fn random_member<R: Rng>(&self, rng: &mut R) -> Mat {
        let q = self.field.q();
        let coeffs: Vec<Elem> = (0..self.dim()).map(|_| rng.gen_range(0..q) as Elem).collect();
        self.member(&coeffs)
    }

    /// `S_H`: members for which `H` is totally singular.
    pub fn s_sub_h(&self, h: &Hyperplane) -> Result<MatSpace> {
        Ok(self.s_sub_h_framed(h)?.0)
    }

    /// `S_H` together with its members expressed in the frame of `H`
    /// (`P_H·N·P_Hᵀ`, see [`Hyperplane::frame`]), basis-aligned.
    pub fn s_sub_h_framed(&self, h: &Hyperplane) -> Result<(MatSpace, Vec<Mat>)> {
        if !self.kind.is_square() {
            return Err(Error::ShapeMismatch("S_H needs a square kind".into()));
        }
        if h.n() != self.n {
            return Err(Error::ShapeMismatch("hyperplane lives in a different dimension".into()));
        }
        let f = self.field;
        let n = self.n;
        let frame = h.frame(f);
        let framed: Vec<Mat> = self.basis.iter().map(|b| b.congruent_by(&frame)).collect();
        let conds: Vec<(usize, usize)> = match self.kind {
            SpaceKind::Alt => (0..n - 1).flat_map(|i| (i + 1..n - 1).map(move |j| (i, j))).collect(),
            _ => (0..n - 1).flat_map(|i| (i..n - 1).map(move |j| (i, j))).collect(),
        };
        let rows: Vec<Vector> =
            conds.iter().map(|&(i, j)| framed.iter().map(|m| m.get(i, j)).collect()).collect();
        let kernel = linalg::kernel(f, &rows, self.dim());
        let mut members = Vec::with_capacity(kernel.len());
        let mut in_frame = Vec::with_capacity(kernel.len());
        for c in &kernel {
            members.push(self.member(c));
            let mut fm = Mat::zeros(f, n, n);
            for (&ck, m) in c.iter().zip(&framed) {
                fm.add_scaled_assign(ck, m);
            }
            in_frame.push(fm);
        }
        let sh = MatSpace::make(f, self.kind, n, &members)?;
        Ok((sh, in_frame))
    }

    /// Full hyperplane analysis: `S_H`, its dimension and (sym only)
    /// whether `H` is S-adapted.
    pub fn analyze(&self, h: &Hyperplane) -> Result<HyperplaneAnalysis> {
        let (s_h, framed) = self.s_sub_h_framed(h)?;
        let adapted = match self.kind {
            SpaceKind::Sym => Some(!has_rank_one_framed(self.field, &framed) && self.quadratic_condition(h)),
            _ => None,
        };
        Ok(HyperplaneAnalysis { hyperplane: h.clone(), m: s_h.dim(), s_h, adapted, t_h: None })
    }

    /// Condition (a) and (b) of S-adaptedness.
    ///
    /// (a) is decided linearly: in the frame of `H` every member of `S_H` is
    /// `[[0, c], [cᵀ, d]]`, which has rank 1 exactly when `c = 0` and
    /// `d ≠ 0`, so a rank-1 member exists iff `N ↦ c` has a kernel.
    /// (b) uses `XᵀMX = (Σ √m_ii x_i)²` in characteristic 2.
    pub fn is_adapted(&self, h: &Hyperplane) -> Result<bool> {
        if self.kind != SpaceKind::Sym {
            return Err(Error::KindMismatch("adaptedness is defined for symmetric spaces".into()));
        }
        let (_, framed) = self.s_sub_h_framed(h)?;
        Ok(!has_rank_one_framed(self.field, &framed) && self.quadratic_condition(h))
    }

    /// Same predicate, with condition (a) decided by enumerating `S_H`.
    pub fn is_adapted_by_enumeration(&self, h: &Hyperplane, budget: u128) -> Result<bool> {
        if self.kind != SpaceKind::Sym {
            return Err(Error::KindMismatch("adaptedness is defined for symmetric spaces".into()));
        }
        let sh = self.s_sub_h(h)?;
        let needed = enumerate::space_size(self.field.q(), sh.dim());
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let rank_one = sh.for_each_projective_member(|m| {
            if m.rank() == 1 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        Ok(rank_one.is_none() && self.quadratic_condition(h))
    }

    /// Condition (b): trivially true outside characteristic 2.
    fn quadratic_condition(&self, h: &Hyperplane) -> bool {
        let f = self.field;
        if !f.is_char2() {
            return true;
        }
        self.basis.iter().any(|m| {
            let ell: Vector = (0..self.n).map(|i| f.sqrt(m.get(i, i)).expect("char 2 root")).collect();
            linalg::rank_of_rows(f, &[ell, h.phi.clone()]) == 2
        })
    }

    /// Every hyperplane in lexicographic order of its functional, analysed.
    pub fn scan_hyperplanes(&self, jobs: usize) -> Result<Vec<HyperplaneAnalysis>> {
        let hs: Vec<Hyperplane> =
            enumerate::normalized_functionals(self.field, self.n).into_iter().map(Hyperplane::from_normalized).collect();
        crate::parallel::map(jobs, &hs, |h| self.analyze(h)).into_iter().collect()
    }

    /// A hyperplane minimising `dim S_H` (adapted ones only when
    /// `adapted_only`), ties broken by the smallest functional.
    pub fn min_dim_sh(&self, adapted_only: bool, jobs: usize) -> Result<HyperplaneAnalysis> {
        let all = self.scan_hyperplanes(jobs)?;
        all.into_iter()
            .filter(|a| !adapted_only || a.adapted == Some(true))
            .min_by_key(|a| a.m)
            .ok_or(Error::NoAdaptedHyperplane)
    }

    /// `P(S)`: delete the last row and column.
    pub fn compress_p(&self) -> Result<MatSpace> {
        if !self.kind.is_square() || self.n == 0 {
            return Err(Error::ShapeMismatch("compress_p needs a nonempty square kind".into()));
        }
        self.delete(&[self.n - 1])
    }

    /// `K`-type compression: delete rows and columns `i` and `j`.
    pub fn compress_k(&self, i: usize, j: usize) -> Result<MatSpace> {
        if i == j {
            return Err(Error::InvalidParams("compress_k needs distinct indices".into()));
        }
        self.delete(&[i, j])
    }

    fn delete(&self, idx: &[usize]) -> Result<MatSpace> {
        if !self.kind.is_square() {
            return Err(Error::ShapeMismatch("deletion needs a square kind".into()));
        }
        let gens: Vec<Mat> = self.basis.iter().map(|b| b.delete_rows_cols(idx)).collect::<Result<_>>()?;
        MatSpace::make(self.field, self.kind, self.n - idx.len(), &gens)
    }

    /// `{M ∈ S : P(M) = 0}`.
    pub fn compress_p_kernel(&self) -> Result<MatSpace> {
        if !self.kind.is_square() || self.n == 0 {
            return Err(Error::ShapeMismatch("compress_p needs a nonempty square kind".into()));
        }
        let rows: Vec<Vector> = coord_positions(self.kind, self.n - 1)
            .into_iter()
            .map(|(i, j)| self.basis.iter().map(|b| b.get(i, j)).collect())
            .collect();
        let ker = linalg::kernel(self.field, &rows, self.dim());
        let gens: Vec<Mat> = ker.iter().map(|c| self.member(c)).collect();
        MatSpace::make(self.field, self.kind, self.n, &gens)
    }
}

/// Number of coordinates of the ambient space.
pub fn ambient_dim(kind: SpaceKind, n: usize) -> usize {
    match kind {
        SpaceKind::Sym => n * (n + 1) / 2,
        SpaceKind::Alt => n * n.saturating_sub(1) / 2,
        SpaceKind::Rect(p) => n * p,
    }
}

fn to_coords(kind: SpaceKind, n: usize, m: &Mat) -> Vector {
    coord_positions(kind, n).into_iter().map(|(i, j)| m.get(i, j)).collect()
}

fn from_coords(f: Field, kind: SpaceKind, n: usize, c: &[Elem]) -> Mat {
    let cols = match kind {
        SpaceKind::Rect(p) => p,
        _ => n,
    };
    let mut m = Mat::zeros(f, n, cols);
    for ((i, j), &x) in coord_positions(kind, n).into_iter().zip(c) {
        m.set(i, j, x);
        match kind {
            SpaceKind::Sym => m.set(j, i, x),
            SpaceKind::Alt => m.set(j, i, f.neg(x)),
            SpaceKind::Rect(_) => {}
        }
    }
    m
}

/// Rank-1 detection on framed members `[[0, c], [cᵀ, d]]` of `S_H`.
fn has_rank_one_framed(f: Field, framed: &[Mat]) -> bool {
    if framed.is_empty() {
        return false;
    }
    let n = framed[0].rows();
    let c_vectors: Vec<Vector> = framed.iter().map(|m| (0..n - 1).map(|i| m.get(i, n - 1)).collect()).collect();
    linalg::rank_of_rows(f, &c_vectors) < framed.len()
}

/// How an upper-rank value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UrkMethod {
    Exact,
    /// A lower bound from random members.
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UrkPolicy {
    Exact { budget: u128 },
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Urk {
    pub value: usize,
    pub method: UrkMethod,
    pub witness: Mat,
}

/// A linear hyperplane `ker φ` with `φ` normalized (first nonzero entry 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hyperplane {
    phi: Vector,
}

impl Hyperplane {
    pub fn new(f: Field, phi: &[Elem]) -> Result<Self> {
        let lead = phi
            .iter()
            .position(|&x| x != 0)
            .ok_or_else(|| Error::InvalidParams("zero functional".into()))?;
        if let Some(&bad) = phi.iter().find(|&&x| !f.is_valid(x as u32)) {
            return Err(Error::InvalidElement { value: bad as u32, q: f.q() });
        }
        let mut v = phi.to_vec();
        linalg::scale(f, &mut v, f.inv(phi[lead]));
        Ok(Hyperplane { phi: v })
    }

    fn from_normalized(phi: Vector) -> Self {
        Hyperplane { phi }
    }

    /// `ker x_i` (0-based coordinate index).
    pub fn coordinate(n: usize, i: usize) -> Self {
        Hyperplane { phi: linalg::unit(n, i) }
    }

    pub fn phi(&self) -> &[Elem] {
        &self.phi
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    /// Reduced basis of `H`.
    pub fn basis(&self, f: Field) -> Vec<Vector> {
        linalg::kernel(f, &[self.phi.clone()], self.n())
    }

    /// Invertible `P_H` whose first `n−1` rows span `H` and whose last row
    /// is `e_i` for the leading index `i` of `φ`.
    pub fn frame(&self, f: Field) -> Mat {
        let mut rows = self.basis(f);
        let lead = self.phi.iter().position(|&x| x != 0).expect("nonzero functional");
        rows.push(linalg::unit(self.n(), lead));
        Mat::from_vectors(f, &rows)
    }

    pub fn contains(&self, f: Field, x: &[Elem]) -> bool {
        linalg::dot(f, &self.phi, x) == 0
    }
}

/// Result of analysing one hyperplane against a space.
#[derive(Clone, Debug)]
pub struct HyperplaneAnalysis {
    pub hyperplane: Hyperplane,
    pub s_h: MatSpace,
    pub m: usize,
    /// Only computed for symmetric spaces.
    pub adapted: Option<bool>,
    /// Filled in by the recognizer once a maximal-rank anchor is fixed.
    pub t_h: Option<Vec<Vector>>,
}

/// A nonzero `X` with `N·X = 0` for every basis matrix `N` of `t`, namely
/// the first vector of the reduced kernel basis.
pub fn common_right_annihilator(t: &MatSpace) -> Option<Vector> {
    let rows: Vec<Vector> = t.basis().iter().flat_map(|b| b.row_vectors()).collect();
    let ker = linalg::kernel(t.field(), &rows, t.cols());
    ker.into_iter().next()
}

/// Every `X` with `N·X = 0` for all `N` in the given matrices (a reduced
/// basis).
pub fn common_right_annihilators(f: Field, mats: &[Mat], width: usize) -> Vec<Vector> {
    let rows: Vec<Vector> = mats.iter().flat_map(|b| b.row_vectors()).collect();
    linalg::kernel(f, &rows, width)
}

/// `Y` with `N_i·Y = c_i` for every pair, if one exists.
pub fn solve_local_map(basis: &[Mat], targets: &[Vector]) -> Option<Vector> {
    let first = basis.first()?;
    let f = first.field();
    let width = first.cols();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (b, c) in basis.iter().zip(targets) {
        for i in 0..b.rows() {
            rows.push(b.row(i).to_vec());
            rhs.push(c[i]);
        }
    }
    linalg::solve(f, &rows, &rhs, width)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    #[test]
    fn make_reduces_generators() {
        let f = gf(3);
        let a = Mat::alt_unit(f, 3, 0, 1);
        let s = MatSpace::make(f, SpaceKind::Alt, 3, &[a.clone(), a.scale(2)]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(MatSpace::make(f, SpaceKind::Alt, 3, &[]).unwrap().dim(), 0);
        let g2 = gf(2);
        let units: Vec<Mat> = [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| Mat::alt_unit(g2, 3, i, j)).collect();
        assert_eq!(MatSpace::make(g2, SpaceKind::Alt, 3, &units).unwrap().dim(), 3);
        let bad = Mat::sym_unit(f, 3, 0, 0);
        assert!(matches!(MatSpace::make(f, SpaceKind::Alt, 3, &[bad]), Err(Error::KindMismatch(_))));
    }

    #[test]
    fn sh_of_full_spaces() {
        let f = gf(3);
        let s = MatSpace::full(f, SpaceKind::Sym, 3);
        let sh = s.s_sub_h(&Hyperplane::coordinate(3, 2)).unwrap();
        let expect = MatSpace::make(
            f,
            SpaceKind::Sym,
            3,
            &[Mat::sym_unit(f, 3, 0, 2), Mat::sym_unit(f, 3, 1, 2), Mat::sym_unit(f, 3, 2, 2)],
        )
        .unwrap();
        assert_eq!(sh, expect);
        let g2 = gf(2);
        let a = MatSpace::full(g2, SpaceKind::Alt, 3);
        let sh = a.s_sub_h(&Hyperplane::coordinate(3, 2)).unwrap();
        assert_eq!(sh.dim(), 2);
    }

    #[test]
    fn adapted_examples() {
        let f = gf(3);
        // WS_{4,1,0}
        let mut gens = vec![Mat::sym_unit(f, 4, 0, 0)];
        for j in 1..4 {
            gens.push(Mat::sym_unit(f, 4, 0, j));
        }
        let s = MatSpace::make(f, SpaceKind::Sym, 4, &gens).unwrap();
        let h = Hyperplane::coordinate(4, 3);
        assert!(s.is_adapted(&h).unwrap());
        assert!(s.is_adapted_by_enumeration(&h, 1000).unwrap());

        let with_enn = s.extended(&[Mat::sym_unit(f, 4, 3, 3)]).unwrap();
        assert!(!with_enn.is_adapted(&h).unwrap());

        let g4 = gf(4);
        let alt = MatSpace::full(g4, SpaceKind::Alt, 4).with_kind(SpaceKind::Sym).unwrap();
        for phi in enumerate::normalized_functionals(g4, 4) {
            assert!(!alt.is_adapted(&Hyperplane::new(g4, &phi).unwrap()).unwrap());
        }
    }

    #[test]
    fn linear_adaptedness_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for q in [2u32, 3, 4, 5] {
            let f = gf(q);
            for _ in 0..40 {
                let n = rng.gen_range(2..5);
                let full = MatSpace::full(f, SpaceKind::Sym, n);
                let d = rng.gen_range(0..=full.dim().min(5));
                let gens: Vec<Mat> = (0..d).map(|_| full.random_member(&mut rng)).collect();
                let s = MatSpace::make(f, SpaceKind::Sym, n, &gens).unwrap();
                for phi in enumerate::normalized_functionals(f, n) {
                    let h = Hyperplane::new(f, &phi).unwrap();
                    assert_eq!(s.is_adapted(&h).unwrap(), s.is_adapted_by_enumeration(&h, 1 << 20).unwrap());
                }
            }
        }
    }

    #[test]
    fn compressions() {
        let g2 = gf(2);
        let a3 = MatSpace::full(g2, SpaceKind::Alt, 3);
        assert_eq!(a3.compress_p().unwrap(), MatSpace::full(g2, SpaceKind::Alt, 2));
        let f = gf(3);
        let s = MatSpace::make(f, SpaceKind::Sym, 3, &[Mat::sym_unit(f, 3, 0, 2)]).unwrap();
        assert_eq!(s.compress_p().unwrap().dim(), 0);
        assert_eq!(s.compress_p_kernel().unwrap().dim(), 1);
        let s4 = MatSpace::full(f, SpaceKind::Sym, 4);
        assert_eq!(s4.compress_k(0, 3).unwrap(), MatSpace::full(f, SpaceKind::Sym, 2));
    }

    #[test]
    fn annihilator_and_local_map() {
        let f = gf(3);
        let t = MatSpace::make(
            f,
            SpaceKind::Rect(2),
            2,
            &[Mat::unit(f, 2, 2, 0, 0), Mat::unit(f, 2, 2, 1, 0)],
        )
        .unwrap();
        assert_eq!(common_right_annihilator(&t), Some(vec![0, 1]));
        let id = MatSpace::make(f, SpaceKind::Rect(2), 2, &[Mat::identity(f, 2)]).unwrap();
        assert_eq!(common_right_annihilator(&id), None);

        let a3 = MatSpace::full(f, SpaceKind::Alt, 3);
        let targets: Vec<Vector> = a3.basis().iter().map(|b| b.col(0)).collect();
        let y = solve_local_map(a3.basis(), &targets).unwrap();
        assert_eq!(y, vec![1, 0, 0]);
        let zeros: Vec<Vector> = a3.basis().iter().map(|_| vec![0; 3]).collect();
        assert_eq!(solve_local_map(a3.basis(), &zeros), Some(vec![0, 0, 0]));
        let one = [Mat::alt_unit(f, 3, 0, 1)];
        assert_eq!(solve_local_map(&one, &[vec![0, 0, 1]]), None);
    }

    #[test]
    fn urk_small() {
        let f = gf(3);
        assert_eq!(MatSpace::zero(f, SpaceKind::Sym, 3).urk_exact(10).unwrap().value, 0);
        let s = MatSpace::full(f, SpaceKind::Alt, 5);
        let u = s.urk_exact(DEFAULT_URK_BUDGET).unwrap();
        assert_eq!(u.value, 4);
        assert_eq!(u.witness.rank(), 4);
        assert!(matches!(s.urk_exact(10), Err(Error::BudgetExceeded { .. })));
        let sampled = s.urk_sampled(100, 1);
        assert_eq!(sampled.method, UrkMethod::Sampled);
        assert!(sampled.value <= 4);
    }

    #[test]
    fn projective_members_cover_lines() {
        let f = gf(4);
        let s = MatSpace::full(f, SpaceKind::Alt, 3);
        let mut seen = std::collections::HashSet::new();
        s.for_each_projective_member::<()>(|m| {
            assert!(s.contains(m));
            assert!(seen.insert(m.clone()));
            ControlFlow::Continue(())
        });
        assert_eq!(seen.len(), (64 - 1) / 3);
    }

    #[test]
    fn sh_is_congruence_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for q in [2u32, 3, 5] {
            let f = gf(q);
            for _ in 0..30 {
                let n = 4;
                let full = MatSpace::full(f, SpaceKind::Sym, n);
                let gens: Vec<Mat> = (0..4).map(|_| full.random_member(&mut rng)).collect();
                let s = MatSpace::make(f, SpaceKind::Sym, n, &gens).unwrap();
                let p = loop {
                    let m = Mat::from_fn(f, n, n, |_, _| rng.gen_range(0..q) as Elem);
                    if m.is_invertible() {
                        break m;
                    }
                };
                let t = s.congruent(&p).unwrap();
                let phi: Vector = (0..n).map(|_| rng.gen_range(0..q) as Elem).collect();
                if linalg::is_zero(&phi) {
                    continue;
                }
                let h = Hyperplane::new(f, &phi).unwrap();
                // T_H = P S_{H'} Pᵀ with H' = Pᵀ H, whose functional is P⁻¹ φ.
                let pt_inv = p.transpose().inverse().unwrap();
                let phi2 = pt_inv.transpose().mul_vec(&phi);
                let h2 = Hyperplane::new(f, &phi2).unwrap();
                let lhs = t.s_sub_h(&h).unwrap();
                let rhs = s.s_sub_h(&h2).unwrap().congruent(&p).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
