//! Graded Gaussian elimination over graded division rings: elementary
//! matrices, reduced echelon forms, the four ranks, inversion and solving.

use std::sync::Arc;

use itertools::Itertools;

use crate::division_ring::{GradedDivisionRing, HomogeneousScalar};
use crate::error::{Error, Result};
use crate::groupoid::Morphism;
use crate::matrix::{slot_degree, HomSpaceMatrix};
use crate::par;
use crate::scalar::Scalar;

/// Default size bound for the exhaustive invertible-minor search.
pub const DEFAULT_RANK_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Row,
    Column,
}

/// An elementary operation. For rows, `Transvect { i, j, a }` replaces row
/// `j` by `a·row_i + row_j`; for columns it replaces column `j` by
/// `col_i·a + col_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elementary {
    Swap { i: usize, j: usize },
    Scale { i: usize, a: HomogeneousScalar },
    Transvect { i: usize, j: usize, a: HomogeneousScalar },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationStep {
    pub side: Side,
    pub op: Elementary,
    /// Row signature `ᾱ'` (or column signature `β̄'`) after the step.
    pub new_signature: Vec<Morphism>,
}

/// The elementary matrix of `op`. For rows, `sig = ᾱ` and the result lies
/// in `[ᾱ'][ᾱ]`; for columns, `sig = β̄` and the result lies in `[β̄][β̄']`.
/// Returns the matrix and the new signature.
pub fn elementary(
    ring: &Arc<GradedDivisionRing>,
    side: Side,
    sig: &[Morphism],
    op: &Elementary,
) -> Result<(HomSpaceMatrix, Vec<Morphism>)> {
    let n = sig.len();
    let g = ring.groupoid();
    let check = |k: usize| {
        if k >= n {
            Err(Error::Argument(format!("index {} out of range for {n}", k + 1)))
        } else {
            Ok(())
        }
    };
    let one = ring.field().one();
    let mut new_sig = sig.to_vec();
    let mut entries = vec![vec![ring.field().zero(); n]; n];
    for k in 0..n {
        if ring.in_support(&g.identity(sig[k].r())?) {
            entries[k][k] = one.clone();
        }
    }
    match op {
        Elementary::Swap { i, j } => {
            check(*i)?;
            check(*j)?;
            new_sig.swap(*i, *j);
            entries.swap(*i, *j);
        }
        Elementary::Scale { i, a } => {
            check(*i)?;
            let (gamma, c) = term(a)?;
            match side {
                Side::Row => {
                    let a_new = g.compose(&gamma, &sig[*i]).ok_or_else(|| {
                        Error::Precondition(format!("scaling row {}: d({gamma}) ≠ r({})", i + 1, sig[*i]))
                    })?;
                    new_sig[*i] = a_new;
                }
                Side::Column => {
                    let b_new = g.compose(&g.inverse(&gamma), &sig[*i]).ok_or_else(|| {
                        Error::Precondition(format!("scaling column {}: r({gamma}) ≠ r({})", i + 1, sig[*i]))
                    })?;
                    new_sig[*i] = b_new;
                }
            }
            entries[*i][*i] = c.clone();
        }
        Elementary::Transvect { i, j, a } => {
            check(*i)?;
            check(*j)?;
            if i == j {
                return Err(Error::Argument("transvection needs two distinct indices".into()));
            }
            let (gamma, c) = term(a)?;
            let (row, col) = match side {
                Side::Row => (*j, *i),
                Side::Column => (*i, *j),
            };
            let need = g.compose(&sig[row], &g.inverse(&sig[col]));
            if need != Some(gamma) {
                return Err(Error::Precondition(format!(
                    "transvection coefficient has degree {gamma}, expected {}",
                    need.map(|m| m.to_string()).unwrap_or_else(|| "an undefined product".into())
                )));
            }
            entries[row][col] = c.clone();
        }
    }
    let m = match side {
        Side::Row => HomSpaceMatrix::new(ring.clone(), new_sig.clone(), sig.to_vec(), entries)?,
        Side::Column => HomSpaceMatrix::new(ring.clone(), sig.to_vec(), new_sig.clone(), entries)?,
    };
    Ok((m, new_sig))
}

fn term(a: &HomogeneousScalar) -> Result<(Morphism, &Scalar)> {
    match a {
        HomogeneousScalar::Zero => Err(Error::Precondition("elementary coefficient must be nonzero".into())),
        HomogeneousScalar::Term { degree, coeff } => Ok((*degree, coeff)),
    }
}

/// Applies one elementary operation by multiplying with its matrix.
pub fn apply(a: &HomSpaceMatrix, side: Side, op: &Elementary) -> Result<HomSpaceMatrix> {
    match side {
        Side::Row => elementary(a.ring(), side, a.alpha(), op)?.0.mul(a),
        Side::Column => a.mul(&elementary(a.ring(), side, a.beta(), op)?.0),
    }
}

/// Replays recorded steps by explicit elementary-matrix products.
pub fn replay(a: &HomSpaceMatrix, steps: &[EliminationStep]) -> Result<HomSpaceMatrix> {
    steps.iter().try_fold(a.clone(), |acc, s| apply(&acc, s.side, &s.op))
}

/// Output of [`row_reduce`]: the reduced echelon form, the steps producing
/// it and the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub echelon: HomSpaceMatrix,
    pub steps: Vec<EliminationStep>,
    pub pivots: Vec<usize>,
}

impl RowReduction {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss–Jordan reduction with pivots normalized to `1_{r(β_c)}`: columns
/// are scanned left to right and the first nonzero entry at or below the
/// current row is taken.
pub fn row_reduce(a: &HomSpaceMatrix) -> RowReduction {
    let ring = a.ring().clone();
    let g = ring.groupoid().clone();
    let beta = a.beta().to_vec();
    let mut alpha = a.alpha().to_vec();
    let mut e: Vec<Vec<Scalar>> = a.entries().to_vec();
    let (m, n) = (a.rows(), a.cols());
    let mut steps = Vec::new();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !e[i][c].is_zero()) else { continue };
        if p != r {
            e.swap(p, r);
            alpha.swap(p, r);
            steps.push(EliminationStep { side: Side::Row, op: Elementary::Swap { i: r, j: p }, new_signature: alpha.clone() });
        }
        let deg = slot_degree(&ring, &alpha[r], &beta[c]).expect("nonzero entry");
        if !(deg.is_identity() && e[r][c].is_one()) {
            let (gi, ci) = ring.invert_term(&deg, &e[r][c]).expect("nonzero entry");
            for j in 0..n {
                if !e[r][j].is_zero() {
                    let dj = slot_degree(&ring, &alpha[r], &beta[j]).unwrap();
                    e[r][j] = ring.mul_terms(&gi, &ci, &dj, &e[r][j]).expect("gr-domain").1;
                }
            }
            alpha[r] = g.compose(&gi, &alpha[r]).unwrap();
            steps.push(EliminationStep {
                side: Side::Row,
                op: Elementary::Scale { i: r, a: HomogeneousScalar::Term { degree: gi, coeff: ci } },
                new_signature: alpha.clone(),
            });
        }
        for k in 0..m {
            if k == r || e[k][c].is_zero() {
                continue;
            }
            let x = -&e[k][c];
            let dx = slot_degree(&ring, &alpha[k], &beta[c]).unwrap();
            for j in 0..n {
                if e[r][j].is_zero() {
                    continue;
                }
                let dj = slot_degree(&ring, &alpha[r], &beta[j]).unwrap();
                let (_, v) = ring.mul_terms(&dx, &x, &dj, &e[r][j]).expect("gr-domain");
                e[k][j] = &e[k][j] + &v;
            }
            steps.push(EliminationStep {
                side: Side::Row,
                op: Elementary::Transvect { i: r, j: k, a: HomogeneousScalar::Term { degree: dx, coeff: x } },
                new_signature: alpha.clone(),
            });
        }
        pivots.push(c);
        r += 1;
    }
    let echelon = HomSpaceMatrix::new(ring, alpha, beta, e).expect("elimination preserves the grading");
    RowReduction { echelon, steps, pivots }
}

/// Column rank: row rank over `D^op` of the transpose.
pub fn column_rank(a: &HomSpaceMatrix) -> usize {
    row_reduce(&a.transpose_opposite()).rank()
}

/// Indices of a maximal pseudo-independent set of columns, in scan order.
pub fn pivot_columns(a: &HomSpaceMatrix) -> Vec<usize> {
    row_reduce(a).pivots
}

/// A factorization `A = B·C` through `ρ` inner columns: `B` is the pivot
/// columns of `A`, `C` the nonzero rows of the reduced echelon form.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub b: HomSpaceMatrix,
    pub c: HomSpaceMatrix,
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub rho_r: usize,
    pub rho_c: usize,
    pub rho: usize,
    /// `None` when the matrix exceeds the minor-search bound.
    pub rho_i: Option<usize>,
    pub rho_i_skipped: bool,
    pub steps: Vec<EliminationStep>,
    pub factorization: Factorization,
    /// Row rank after right-translating both signatures, when possible.
    pub alternative_rho_r: Option<usize>,
}

impl RankReport {
    pub fn all_equal(&self) -> bool {
        self.rho_r == self.rho_c
            && self.rho_r == self.rho
            && self.rho_i.is_none_or(|r| r == self.rho_r)
            && self.alternative_rho_r.is_none_or(|r| r == self.rho_r)
    }
}

/// All four ranks of `A`; fails with a theorem violation if they disagree.
pub fn rank_all(a: &HomSpaceMatrix, bound: usize) -> Result<RankReport> {
    let ((red, rho_c), (rho_i, alternative_rho_r)) = par::join(
        || par::join(|| row_reduce(a), || column_rank(a)),
        || {
            let ri = if a.rows().max(a.cols()) <= bound { Some(inner_minor_rank(a)) } else { None };
            (ri, alternative_signature(a).map(|alt| row_reduce(&alt).rank()))
        },
    );
    let rho_r = red.rank();
    let b = a.submatrix(&(0..a.rows()).collect::<Vec<_>>(), &red.pivots);
    let c = red.echelon.submatrix(&(0..rho_r).collect::<Vec<_>>(), &(0..a.cols()).collect::<Vec<_>>());
    let b = b.resign(a.alpha().to_vec(), c.alpha().to_vec())?;
    if b.mul(&c)? != *a {
        return Err(Error::TheoremViolation("inner-rank factorization A = BC does not reproduce A".into()));
    }
    let report = RankReport {
        rho_r,
        rho_c,
        rho: b.cols(),
        rho_i,
        rho_i_skipped: rho_i.is_none(),
        steps: red.steps,
        factorization: Factorization { b, c },
        alternative_rho_r,
    };
    if !report.all_equal() {
        return Err(Error::TheoremViolation(format!(
            "ranks disagree: rho_r={} rho_c={} rho={} rho_i={:?} alternative={:?}",
            report.rho_r, report.rho_c, report.rho, report.rho_i, report.alternative_rho_r
        )));
    }
    Ok(report)
}

/// Right translation of both signatures by a non-identity morphism, when
/// every `d(α_i)` and `d(β_j)` agree and such a morphism exists.
fn alternative_signature(a: &HomSpaceMatrix) -> Option<HomSpaceMatrix> {
    let mut objs = a.alpha().iter().chain(a.beta()).map(|m| m.d());
    let e = objs.next()?;
    if objs.any(|o| o != e) {
        return None;
    }
    let g = a.ring().groupoid();
    let delta = g.morphisms().into_iter().find(|m| m.r() == e && !m.is_identity())?;
    a.right_translate(&delta).ok()
}

/// Largest `k` such that some `k×k` submatrix is invertible, searching by
/// increasing size and stopping at the first size without one.
pub fn inner_minor_rank(a: &HomSpaceMatrix) -> usize {
    let mut best = 0;
    for k in 1..=a.rows().min(a.cols()) {
        let rows: Vec<Vec<usize>> = (0..a.rows()).combinations(k).collect();
        let cols: Vec<Vec<usize>> = (0..a.cols()).combinations(k).collect();
        let total = rows.len() * cols.len();
        let found = par::any(0..total, |idx| {
            let sub = a.submatrix(&rows[idx / cols.len()], &cols[idx % cols.len()]);
            matches!(invert_square(&sub), Ok(Some(_)))
        });
        if !found {
            break;
        }
        best = k;
    }
    best
}

/// The two-sided inverse `B ∈ [β̄][ᾱ]` of a square `A ∈ [ᾱ][β̄]`, or `None`
/// when `A` has rank below `n`. Both `AB = I_{r(ᾱ)}` and `BA = I_{r(β̄)}`
/// are verified.
pub fn invert_square(a: &HomSpaceMatrix) -> Result<Option<HomSpaceMatrix>> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Argument(format!("matrix is {}×{}, not square", n, a.cols())));
    }
    let ring = a.ring();
    let g = ring.groupoid();
    let supported = |m: &Morphism| g.identity(m.r()).map(|id| ring.in_support(&id)).unwrap_or(false);
    if !a.alpha().iter().chain(a.beta()).all(supported) {
        return Ok(None);
    }
    let id = HomSpaceMatrix::identity(ring.clone(), a.alpha().to_vec());
    let red = row_reduce(&a.hconcat(&id)?);
    if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
        return Ok(None);
    }
    let all: Vec<usize> = (0..n).collect();
    let right: Vec<usize> = (n..2 * n).collect();
    let b = red.echelon.submatrix(&all, &right);
    if b.alpha() != a.beta() {
        return Err(Error::TheoremViolation("inverse has an unexpected row signature".into()));
    }
    if a.mul(&b)? != id {
        return Err(Error::TheoremViolation("AB ≠ I for the computed inverse".into()));
    }
    if b.mul(a)? != HomSpaceMatrix::identity(ring.clone(), a.beta().to_vec()) {
        return Err(Error::TheoremViolation("AB = I but BA ≠ I".into()));
    }
    Ok(Some(b))
}

/// Solves `A·x = b` for a column `b ∈ [ᾱ][τ]`; the solution lies in
/// `[β̄][τ]` and free variables are set to zero. `None` when inconsistent.
pub fn solve(a: &HomSpaceMatrix, b: &HomSpaceMatrix) -> Result<Option<HomSpaceMatrix>> {
    if b.cols() != 1 {
        return Err(Error::Argument("right-hand side must be a single column".into()));
    }
    if b.alpha() != a.alpha() {
        return Err(Error::Argument("right-hand side has a different row signature".into()));
    }
    let n = a.cols();
    let red = row_reduce(&a.hconcat(b)?);
    if red.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let tau = b.beta()[0];
    let mut x = HomSpaceMatrix::zeros(a.ring().clone(), a.beta().to_vec(), vec![tau]);
    for (row, &c) in red.pivots.iter().enumerate() {
        x.set(c, 0, red.echelon.get(row, n).clone())?;
    }
    if a.mul(&x)? != *b {
        return Err(Error::TheoremViolation("computed solution does not satisfy A·x = b".into()));
    }
    Ok(Some(x))
}
