//! Graded matrix rings `M_I(D)(Σ̄)` and rectangular graded Hom-spaces
//! `M_{m×n}(D)[ᾱ][β̄]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::division_ring::{GradedDivisionRing, HomogeneousScalar};
use crate::error::{Error, Invariant, Result};
use crate::groupoid::{Morphism, ObjectId};
use crate::scalar::{Field, Scalar};

/// A matricial family `Σ̄ = (Σ_i)` for a graded division ring: every `Σ_i`
/// is d-unique and r-unique for `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRingSignature {
    ring: Arc<GradedDivisionRing>,
    sigma: Vec<Vec<Morphism>>,
}

impl MatrixRingSignature {
    pub fn new(ring: Arc<GradedDivisionRing>, sigma: Vec<Vec<Morphism>>) -> Result<Arc<MatrixRingSignature>> {
        if sigma.is_empty() {
            return Err(Error::Argument("matrix ring needs at least one index".into()));
        }
        let g = ring.groupoid();
        let mut normalized = Vec::with_capacity(sigma.len());
        for (i, s) in sigma.into_iter().enumerate() {
            if s.is_empty() {
                return Err(Error::Argument(format!("Σ_{} is empty", i + 1)));
            }
            let mut sources = BTreeSet::new();
            let mut targets = BTreeSet::new();
            for m in &s {
                g.check(m)?;
                if !sources.insert(m.d()) {
                    return Err(Error::validation(
                        Invariant::DUniqueness,
                        format!("Σ_{} has two morphisms with source {}", i + 1, m.d()),
                    ));
                }
                if !ring.objects().contains(&m.r()) {
                    return Err(Error::validation(
                        Invariant::RUniqueness,
                        format!("Σ_{} contains {m} whose target {} is not in Γ'₀(D)", i + 1, m.r()),
                    ));
                }
                if !targets.insert(m.r()) {
                    return Err(Error::validation(
                        Invariant::RUniqueness,
                        format!("Σ_{} has two morphisms with target {}", i + 1, m.r()),
                    ));
                }
            }
            let mut s = s;
            s.sort();
            normalized.push(s);
        }
        Ok(Arc::new(MatrixRingSignature { ring, sigma: normalized }))
    }

    /// Singleton family `σ̄`.
    pub fn from_sigma(ring: Arc<GradedDivisionRing>, sigma: &[Morphism]) -> Result<Arc<MatrixRingSignature>> {
        Self::new(ring, sigma.iter().map(|s| vec![*s]).collect())
    }

    pub fn ring(&self) -> &Arc<GradedDivisionRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn size(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[Vec<Morphism>] {
        &self.sigma
    }

    /// True when every `Σ_i` is a singleton.
    pub fn is_singleton(&self) -> bool {
        self.sigma.iter().all(|s| s.len() == 1)
    }

    /// The unique `σ ∈ Σ_i` with `d(σ) = obj`.
    pub fn sigma_at(&self, i: usize, obj: ObjectId) -> Option<Morphism> {
        self.sigma[i].iter().find(|m| m.d() == obj).copied()
    }

    /// The unique `σ ∈ Σ_i` with `r(σ) = obj`.
    pub fn sigma_with_target(&self, i: usize, obj: ObjectId) -> Option<Morphism> {
        self.sigma[i].iter().find(|m| m.r() == obj).copied()
    }

    /// Degree `σ_i γ σ_j⁻¹` of entry `(i,j)` of a degree-`γ` matrix, when it
    /// is defined and lies in the support.
    pub fn entry_degree(&self, i: usize, j: usize, gamma: &Morphism) -> Option<Morphism> {
        let g = self.ring.groupoid();
        let s = self.sigma_at(i, gamma.r())?;
        let t = self.sigma_at(j, gamma.d())?;
        let x = g.compose(&g.compose(&s, gamma)?, &g.inverse(&t))?;
        self.ring.in_support(&x).then_some(x)
    }

    /// `I_e = {i : Σ_i e ≠ ∅}`.
    pub fn index_set(&self, e: ObjectId) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.sigma_at(i, e).is_some()).collect()
    }

    /// `dim_F M_I(D)(Σ̄)_γ`.
    pub fn component_dimension(&self, gamma: &Morphism) -> usize {
        let n = self.size();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.entry_degree(i, j, gamma).is_some()).count()
    }

    /// All degrees with a nonzero component.
    pub fn support(&self) -> Vec<Morphism> {
        self.ring.groupoid().morphisms().into_iter().filter(|g| self.component_dimension(g) > 0).collect()
    }

    /// Objects `e` with `𝕀_e ≠ 0`.
    pub fn unit_objects(&self) -> BTreeSet<ObjectId> {
        self.sigma.iter().flatten().map(|m| m.d()).collect()
    }

    /// Same family over the opposite ring.
    pub fn opposite(&self) -> Arc<MatrixRingSignature> {
        Arc::new(MatrixRingSignature { ring: self.ring.opposite(), sigma: self.sigma.clone() })
    }

    fn same(a: &Arc<MatrixRingSignature>, b: &Arc<MatrixRingSignature>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

/// A homogeneous element of `M_I(D)(Σ̄)`. Entries are coefficients of the
/// basis element `u_{σ_iγσ_j⁻¹}`. The zero matrix has no degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousMatrix {
    sig: Arc<MatrixRingSignature>,
    degree: Option<Morphism>,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl HomogeneousMatrix {
    pub fn zero(sig: &Arc<MatrixRingSignature>) -> HomogeneousMatrix {
        HomogeneousMatrix { sig: sig.clone(), degree: None, entries: BTreeMap::new() }
    }

    /// A degree-`γ` matrix from `(i, j, coefficient)` triples (0-based).
    pub fn new(
        sig: &Arc<MatrixRingSignature>,
        degree: Morphism,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<HomogeneousMatrix> {
        sig.ring.groupoid().check(&degree)?;
        let n = sig.size();
        let mut map = BTreeMap::new();
        for (i, j, c) in entries {
            if i >= n || j >= n {
                return Err(Error::Argument(format!("entry ({}, {}) out of range for size {n}", i + 1, j + 1)));
            }
            if c.field() != sig.field() {
                return Err(Error::validation(Invariant::Field, format!("entry ({}, {}) lies in {}", i + 1, j + 1, c.field())));
            }
            if c.is_zero() {
                continue;
            }
            if sig.entry_degree(i, j, &degree).is_none() {
                return Err(Error::validation(
                    Invariant::EntryDegree,
                    format!("entry ({}, {}) of a degree-{degree} matrix must vanish", i + 1, j + 1),
                ));
            }
            map.insert((i, j), c);
        }
        Ok(Self::normalized(sig.clone(), degree, map))
    }

    fn normalized(sig: Arc<MatrixRingSignature>, degree: Morphism, entries: BTreeMap<(usize, usize), Scalar>) -> Self {
        let degree = if entries.is_empty() { None } else { Some(degree) };
        HomogeneousMatrix { sig, degree, entries }
    }

    /// `𝕀_e = Σ_{i ∈ I_e} E_ii^{r(σ_i)}`.
    pub fn identity_element(sig: &Arc<MatrixRingSignature>, e: ObjectId) -> Result<HomogeneousMatrix> {
        let id = sig.ring.groupoid().identity(e)?;
        let one = sig.field().one();
        Self::new(sig, id, sig.index_set(e).into_iter().map(|i| (i, i, one.clone())))
    }

    /// `E_ij^e`, of degree `σ_i⁻¹σ_j` where `r(σ_i) = r(σ_j) = e`.
    pub fn matrix_unit(sig: &Arc<MatrixRingSignature>, i: usize, j: usize, e: ObjectId) -> Result<HomogeneousMatrix> {
        let n = sig.size();
        if i >= n || j >= n {
            return Err(Error::Argument(format!("matrix unit index out of range for size {n}")));
        }
        let s = sig
            .sigma_with_target(i, e)
            .ok_or_else(|| Error::Argument(format!("Σ_{} has no morphism with target {e}", i + 1)))?;
        let t = sig
            .sigma_with_target(j, e)
            .ok_or_else(|| Error::Argument(format!("Σ_{} has no morphism with target {e}", j + 1)))?;
        let g = sig.ring.groupoid();
        let degree = g.compose(&g.inverse(&s), &t).expect("both start at e");
        Self::new(sig, degree, [(i, j, sig.field().one())])
    }

    pub fn signature(&self) -> &Arc<MatrixRingSignature> {
        &self.sig
    }

    pub fn degree(&self) -> Option<Morphism> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.degree.is_none()
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.entries
    }

    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| self.sig.field().zero())
    }

    pub fn entry(&self, i: usize, j: usize) -> HomogeneousScalar {
        match (self.degree, self.entries.get(&(i, j))) {
            (Some(g), Some(c)) => HomogeneousScalar::Term {
                degree: self.sig.entry_degree(i, j, &g).expect("validated"),
                coeff: c.clone(),
            },
            _ => HomogeneousScalar::Zero,
        }
    }

    fn check_same(&self, other: &HomogeneousMatrix) -> Result<()> {
        if !MatrixRingSignature::same(&self.sig, &other.sig) {
            return Err(Error::Argument("matrices belong to different graded matrix rings".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &HomogeneousMatrix) -> Result<HomogeneousMatrix> {
        self.check_same(other)?;
        let (Some(g), Some(d)) = (self.degree, other.degree) else {
            return Ok(Self::zero(&self.sig));
        };
        let ring = &self.sig.ring;
        let Some(gd) = ring.groupoid().compose(&g, &d) else {
            return Ok(Self::zero(&self.sig));
        };
        let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for ((k, j), b) in &other.entries {
            by_row.entry(*k).or_default().push((*j, b));
        }
        let mut out: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for ((i, k), a) in &self.entries {
            let ga = self.sig.entry_degree(*i, *k, &g).unwrap();
            for (j, b) in by_row.get(k).into_iter().flatten() {
                let gb = self.sig.entry_degree(*k, *j, &d).unwrap();
                if let Some((_, c)) = ring.mul_terms(&ga, a, &gb, b) {
                    let slot = out.entry((*i, *j)).or_insert_with(|| ring.field().zero());
                    *slot = &*slot + &c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Self::normalized(self.sig.clone(), gd, out))
    }

    /// Sum of two matrices of the same degree (either may be zero).
    pub fn add(&self, other: &HomogeneousMatrix) -> Result<HomogeneousMatrix> {
        self.check_same(other)?;
        let degree = match (self.degree, other.degree) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Argument(format!("cannot add homogeneous matrices of degrees {a} and {b}")))
            }
            (Some(a), _) => a,
        };
        let mut out = self.entries.clone();
        for (k, v) in &other.entries {
            let slot = out.entry(*k).or_insert_with(|| self.sig.field().zero());
            *slot = &*slot + v;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Self::normalized(self.sig.clone(), degree, out))
    }

    pub fn scale(&self, c: &Scalar) -> HomogeneousMatrix {
        match self.degree {
            None => self.clone(),
            Some(d) => {
                let out = self.entries.iter().map(|(k, v)| (*k, v * c)).filter(|(_, v)| !v.is_zero()).collect();
                Self::normalized(self.sig.clone(), d, out)
            }
        }
    }

    /// Transposition onto `M_I(D^op)(Σ̄)`: degree `γ ↦ γ⁻¹`, entry `(i,j) ↦ (j,i)`.
    pub fn transpose_opposite(&self, op: &Arc<MatrixRingSignature>) -> Result<HomogeneousMatrix> {
        if op.sigma != self.sig.sigma || !op.ring.same_ring(&self.sig.ring.opposite()) {
            return Err(Error::Argument("target is not the opposite matrix ring".into()));
        }
        match self.degree {
            None => Ok(Self::zero(op)),
            Some(g) => {
                let gi = op.ring.groupoid().inverse(&g);
                Self::new(op, gi, self.entries.iter().map(|((i, j), c)| (*j, *i, c.clone())))
            }
        }
    }

    /// The `I_e × I_f` block of a matrix of degree `γ ∈ eΓf`, as an element of
    /// `M(D)[σ_iγ][σ_j]`.
    pub fn rectangular_block(&self, e: ObjectId, f: ObjectId) -> Result<HomSpaceMatrix> {
        let g = self.degree.ok_or_else(|| Error::Argument("the zero matrix has no degree".into()))?;
        if g.r() != e || g.d() != f {
            return Err(Error::Argument(format!("degree {g} does not lie in {e}Γ{f}")));
        }
        block_of(&self.sig, &g, &self.entries)
    }

    /// Like [`rectangular_block`](Self::rectangular_block) at an explicit
    /// degree, so that the zero matrix also has a block.
    pub fn block_at(&self, gamma: &Morphism) -> Result<HomSpaceMatrix> {
        match self.degree {
            Some(g) if g != *gamma => Err(Error::Argument(format!("matrix has degree {g}, not {gamma}"))),
            _ => block_of(&self.sig, gamma, &self.entries),
        }
    }

    /// Inverse of [`rectangular_block`](Self::rectangular_block).
    pub fn from_block(sig: &Arc<MatrixRingSignature>, gamma: &Morphism, block: &HomSpaceMatrix) -> Result<HomogeneousMatrix> {
        let rows = sig.index_set(gamma.r());
        let cols = sig.index_set(gamma.d());
        if block.rows() != rows.len() || block.cols() != cols.len() {
            return Err(Error::Argument("block shape does not match the index sets".into()));
        }
        let mut entries = Vec::new();
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                entries.push((i, j, block.get(a, b).clone()));
            }
        }
        Self::new(sig, *gamma, entries)
    }

    /// Dense coefficient table (row-major, zeros filled in).
    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let n = self.sig.size();
        (0..n).map(|i| (0..n).map(|j| self.coeff(i, j)).collect()).collect()
    }
}

fn block_of(
    sig: &Arc<MatrixRingSignature>,
    gamma: &Morphism,
    entries: &BTreeMap<(usize, usize), Scalar>,
) -> Result<HomSpaceMatrix> {
    let g = sig.ring.groupoid();
    let rows = sig.index_set(gamma.r());
    let cols = sig.index_set(gamma.d());
    let alpha: Vec<Morphism> = rows
        .iter()
        .map(|&i| g.compose(&sig.sigma_at(i, gamma.r()).unwrap(), gamma).unwrap())
        .collect();
    let beta: Vec<Morphism> = cols.iter().map(|&j| sig.sigma_at(j, gamma.d()).unwrap()).collect();
    let zero = sig.field().zero();
    let data = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| entries.get(&(i, j)).cloned().unwrap_or_else(|| zero.clone())).collect())
        .collect();
    HomSpaceMatrix::new(sig.ring.clone(), alpha, beta, data)
}

impl fmt::Display for HomogeneousMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            None => write!(f, "0"),
            Some(d) => {
                write!(f, "deg {d}:")?;
                for ((i, j), c) in &self.entries {
                    write!(f, " ({},{})={c}", i + 1, j + 1)?;
                }
                Ok(())
            }
        }
    }
}

/// A non-homogeneous element of `M_I(D)(Σ̄)`: a finite sum of homogeneous
/// components, with zero components dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrixElement {
    sig: Arc<MatrixRingSignature>,
    components: BTreeMap<Morphism, HomogeneousMatrix>,
}

impl GradedMatrixElement {
    pub fn zero(sig: &Arc<MatrixRingSignature>) -> Self {
        GradedMatrixElement { sig: sig.clone(), components: BTreeMap::new() }
    }

    pub fn from_homogeneous(a: HomogeneousMatrix) -> Self {
        let mut out = Self::zero(&a.sig);
        if let Some(d) = a.degree {
            out.components.insert(d, a);
        }
        out
    }

    /// The identity `Σ_e 𝕀_e`.
    pub fn one(sig: &Arc<MatrixRingSignature>) -> Result<Self> {
        let mut out = Self::zero(sig);
        for e in sig.unit_objects() {
            out = out.add(&Self::from_homogeneous(HomogeneousMatrix::identity_element(sig, e)?))?;
        }
        Ok(out)
    }

    pub fn components(&self) -> &BTreeMap<Morphism, HomogeneousMatrix> {
        &self.components
    }

    pub fn component(&self, gamma: &Morphism) -> HomogeneousMatrix {
        self.components.get(gamma).cloned().unwrap_or_else(|| HomogeneousMatrix::zero(&self.sig))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !MatrixRingSignature::same(&self.sig, &other.sig) {
            return Err(Error::Argument("elements belong to different graded matrix rings".into()));
        }
        let mut out = self.clone();
        for (d, m) in &other.components {
            let sum = out.component(d).add(m)?;
            if sum.is_zero() {
                out.components.remove(d);
            } else {
                out.components.insert(*d, sum);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(&self.sig);
        for a in self.components.values() {
            for b in other.components.values() {
                out = out.add(&Self::from_homogeneous(a.mul(b)?))?;
            }
        }
        Ok(out)
    }
}

/// A matrix in `M_{m×n}(D)[ᾱ][β̄]`: entry `(i,j)` is the coefficient of
/// `u_{α_iβ_j⁻¹}` and vanishes unless that degree is defined and supported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpaceMatrix {
    ring: Arc<GradedDivisionRing>,
    alpha: Vec<Morphism>,
    beta: Vec<Morphism>,
    entries: Vec<Vec<Scalar>>,
}

impl HomSpaceMatrix {
    pub fn new(
        ring: Arc<GradedDivisionRing>,
        alpha: Vec<Morphism>,
        beta: Vec<Morphism>,
        entries: Vec<Vec<Scalar>>,
    ) -> Result<HomSpaceMatrix> {
        for m in alpha.iter().chain(&beta) {
            ring.groupoid().check(m)?;
        }
        if entries.len() != alpha.len() || entries.iter().any(|r| r.len() != beta.len()) {
            return Err(Error::Argument(format!(
                "entry table does not have shape {}×{}",
                alpha.len(),
                beta.len()
            )));
        }
        let out = HomSpaceMatrix { ring, alpha, beta, entries };
        for i in 0..out.rows() {
            for j in 0..out.cols() {
                let c = &out.entries[i][j];
                if c.field() != out.ring.field() {
                    return Err(Error::validation(Invariant::Field, format!("entry ({}, {}) lies in {}", i + 1, j + 1, c.field())));
                }
                if !c.is_zero() && out.entry_degree(i, j).is_none() {
                    return Err(Error::validation(
                        Invariant::EntryDegree,
                        format!("entry ({}, {}) must vanish: α_iβ_j⁻¹ is undefined or unsupported", i + 1, j + 1),
                    ));
                }
            }
        }
        Ok(out)
    }

    pub fn zeros(ring: Arc<GradedDivisionRing>, alpha: Vec<Morphism>, beta: Vec<Morphism>) -> HomSpaceMatrix {
        let zero = ring.field().zero();
        let entries = vec![vec![zero; beta.len()]; alpha.len()];
        HomSpaceMatrix { ring, alpha, beta, entries }
    }

    /// `I_{r(ᾱ)} ∈ [ᾱ][ᾱ]`: diagonal of `1_{r(α_i)}`.
    pub fn identity(ring: Arc<GradedDivisionRing>, alpha: Vec<Morphism>) -> HomSpaceMatrix {
        let mut out = Self::zeros(ring, alpha.clone(), alpha);
        for i in 0..out.rows() {
            if out.entry_degree(i, i).is_some() {
                out.entries[i][i] = out.ring.field().one();
            }
        }
        out
    }

    pub fn ring(&self) -> &Arc<GradedDivisionRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn alpha(&self) -> &[Morphism] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Morphism] {
        &self.beta
    }

    pub fn rows(&self) -> usize {
        self.alpha.len()
    }

    pub fn cols(&self) -> usize {
        self.beta.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Scalar>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }

    /// `α_iβ_j⁻¹` when defined and supported.
    pub fn entry_degree(&self, i: usize, j: usize) -> Option<Morphism> {
        slot_degree(&self.ring, &self.alpha[i], &self.beta[j])
    }

    pub fn entry(&self, i: usize, j: usize) -> HomogeneousScalar {
        let c = &self.entries[i][j];
        if c.is_zero() {
            return HomogeneousScalar::Zero;
        }
        HomogeneousScalar::Term { degree: self.entry_degree(i, j).unwrap(), coeff: c.clone() }
    }

    /// Sets entry `(i,j)`, checking its component.
    pub fn set(&mut self, i: usize, j: usize, c: Scalar) -> Result<()> {
        if c.field() != self.field() {
            return Err(Error::FieldMismatch(c.field().to_string(), self.field().to_string()));
        }
        if !c.is_zero() && self.entry_degree(i, j).is_none() {
            return Err(Error::validation(Invariant::EntryDegree, format!("entry ({}, {}) must vanish", i + 1, j + 1)));
        }
        self.entries[i][j] = c;
        Ok(())
    }

    /// Number of slots `(i,j)` whose component is nonzero.
    pub fn space_dimension(&self) -> usize {
        (0..self.rows()).flat_map(|i| (0..self.cols()).map(move |j| (i, j))).filter(|&(i, j)| self.entry_degree(i, j).is_some()).count()
    }

    fn compatible(&self, other: &HomSpaceMatrix) -> Result<()> {
        if !self.ring.same_ring(&other.ring) {
            return Err(Error::Argument("matrices are over different graded division rings".into()));
        }
        Ok(())
    }

    /// Product `[ᾱ][β̄] · [β̄][τ̄] → [ᾱ][τ̄]`.
    pub fn mul(&self, other: &HomSpaceMatrix) -> Result<HomSpaceMatrix> {
        self.compatible(other)?;
        if self.beta != other.alpha {
            return Err(Error::Argument("inner signatures of the product do not match".into()));
        }
        let ring = &*self.ring;
        let mut out = Self::zeros(self.ring.clone(), self.alpha.clone(), other.beta.clone());
        for i in 0..self.rows() {
            for k in 0..self.cols() {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                let ga = self.entry_degree(i, k).unwrap();
                for j in 0..other.cols() {
                    let b = &other.entries[k][j];
                    if b.is_zero() {
                        continue;
                    }
                    let gb = other.entry_degree(k, j).unwrap();
                    if let Some((_, c)) = ring.mul_terms(&ga, a, &gb, b) {
                        out.entries[i][j] = &out.entries[i][j] + &c;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &HomSpaceMatrix) -> Result<HomSpaceMatrix> {
        self.compatible(other)?;
        if self.alpha != other.alpha || self.beta != other.beta {
            return Err(Error::Argument("cannot add matrices with different signatures".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.entries[i][j] = &out.entries[i][j] + &other.entries[i][j];
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomSpaceMatrix) -> Result<HomSpaceMatrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomSpaceMatrix {
        let mut out = self.clone();
        for row in &mut out.entries {
            for c in row {
                *c = -&*c;
            }
        }
        out
    }

    /// Rows and columns picked by index, with their signatures.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> HomSpaceMatrix {
        HomSpaceMatrix {
            ring: self.ring.clone(),
            alpha: rows.iter().map(|&i| self.alpha[i]).collect(),
            beta: cols.iter().map(|&j| self.beta[j]).collect(),
            entries: rows.iter().map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect()).collect(),
        }
    }

    /// Columns `[A | B]` of two matrices with the same row signature.
    pub fn hconcat(&self, other: &HomSpaceMatrix) -> Result<HomSpaceMatrix> {
        self.compatible(other)?;
        if self.alpha != other.alpha {
            return Err(Error::Argument("row signatures differ".into()));
        }
        let mut out = self.clone();
        out.beta.extend(other.beta.iter().copied());
        for (r, o) in out.entries.iter_mut().zip(&other.entries) {
            r.extend(o.iter().cloned());
        }
        Ok(out)
    }

    /// Transposition onto `M_{n×m}(D^op)[β̄][ᾱ]`.
    pub fn transpose_opposite(&self) -> HomSpaceMatrix {
        HomSpaceMatrix {
            ring: self.ring.opposite(),
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            entries: (0..self.cols()).map(|j| (0..self.rows()).map(|i| self.entries[i][j].clone()).collect()).collect(),
        }
    }

    /// Re-signs `[ᾱ][β̄]` as `[ᾱδ][β̄δ]`; the entries are unchanged. Needs
    /// every `d(α_i)` and `d(β_j)` equal to `r(δ)`.
    pub fn right_translate(&self, delta: &Morphism) -> Result<HomSpaceMatrix> {
        let g = self.ring.groupoid();
        let tr = |m: &Morphism| {
            g.compose(m, delta)
                .ok_or_else(|| Error::Argument(format!("{m} cannot be translated by {delta}")))
        };
        Ok(HomSpaceMatrix {
            ring: self.ring.clone(),
            alpha: self.alpha.iter().map(tr).collect::<Result<_>>()?,
            beta: self.beta.iter().map(tr).collect::<Result<_>>()?,
            entries: self.entries.clone(),
        })
    }

    /// Same entries under new signatures, checking every entry still fits.
    pub fn resign(&self, alpha: Vec<Morphism>, beta: Vec<Morphism>) -> Result<HomSpaceMatrix> {
        Self::new(self.ring.clone(), alpha, beta, self.entries.clone())
    }

    /// `r(α_i)` for each row.
    pub fn row_objects(&self) -> Vec<ObjectId> {
        self.alpha.iter().map(|m| m.r()).collect()
    }
}

/// `αβ⁻¹` when defined and in the support.
pub fn slot_degree(ring: &GradedDivisionRing, alpha: &Morphism, beta: &Morphism) -> Option<Morphism> {
    let g = ring.groupoid();
    let x = g.compose(alpha, &g.inverse(beta))?;
    ring.in_support(&x).then_some(x)
}

impl fmt::Display for HomSpaceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_sig = |v: &[Morphism]| v.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(f, "[{}][{}]", fmt_sig(&self.alpha), fmt_sig(&self.beta))?;
        for row in &self.entries {
            writeln!(f, "  {}", row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))?;
        }
        Ok(())
    }
}
