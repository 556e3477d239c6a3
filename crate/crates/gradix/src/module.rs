//! Pseudo-free right modules `⊕ D(δ_i)` over a graded division ring and
//! homogeneous vectors inside them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::division_ring::{GradedDivisionRing, HomogeneousScalar};
use crate::error::{Error, Result};
use crate::groupoid::{Morphism, ObjectId};
use crate::linalg;
use crate::matrix::{slot_degree, HomSpaceMatrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    ring: Arc<GradedDivisionRing>,
    shifts: Vec<Morphism>,
}

/// A homogeneous vector of degree `τ`: entry `i` lies in `D_{δ_iτ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousVector {
    degree: Morphism,
    entries: Vec<Scalar>,
}

impl GradedModule {
    pub fn new(ring: Arc<GradedDivisionRing>, shifts: Vec<Morphism>) -> Result<GradedModule> {
        for s in &shifts {
            ring.groupoid().check(s)?;
            if !ring.objects().contains(&s.r()) {
                return Err(Error::Argument(format!("shift {s} has r({s}) outside Γ'₀(D)")));
            }
        }
        Ok(GradedModule { ring, shifts })
    }

    pub fn ring(&self) -> &Arc<GradedDivisionRing> {
        &self.ring
    }

    pub fn shifts(&self) -> &[Morphism] {
        &self.shifts
    }

    pub fn pdim(&self) -> usize {
        self.shifts.len()
    }

    /// `e ↦ |{i : d(δ_i) = e}|`.
    pub fn gamma0_dimension(&self) -> BTreeMap<ObjectId, usize> {
        let mut out = BTreeMap::new();
        for s in &self.shifts {
            *out.entry(s.d()).or_insert(0) += 1;
        }
        out
    }

    /// `dim_F M_γ = |{i : δ_iγ ∈ supp D}|`.
    pub fn component_dimension(&self, gamma: &Morphism) -> usize {
        self.shifts.iter().filter(|s| self.slot(s, gamma).is_some()).count()
    }

    fn slot(&self, shift: &Morphism, tau: &Morphism) -> Option<Morphism> {
        let x = self.ring.groupoid().compose(shift, tau)?;
        self.ring.in_support(&x).then_some(x)
    }

    /// The degree of entry `i` in a vector of degree `τ`.
    pub fn entry_degree(&self, i: usize, tau: &Morphism) -> Option<Morphism> {
        self.slot(&self.shifts[i], tau)
    }

    /// `M(σ)`: shifts `δ_i ↦ δ_iσ` where defined, others dropped.
    pub fn shift(&self, sigma: &Morphism) -> Result<GradedModule> {
        let g = self.ring.groupoid();
        g.check(sigma)?;
        let shifts = self.shifts.iter().filter_map(|s| g.compose(s, sigma)).collect();
        GradedModule::new(self.ring.clone(), shifts)
    }

    /// Checks `dim M(σ)_γ = dim M(r(σ))_{σγ}` for every `γ` with `r(γ) = d(σ)`.
    pub fn shift_identity_check(&self, sigma: &Morphism) -> Result<bool> {
        let g = self.ring.groupoid();
        let shifted = self.shift(sigma)?;
        let base = self.shift(&g.identity(sigma.r())?)?;
        Ok(g.morphisms().iter().filter(|m| m.r() == sigma.d()).all(|gamma| {
            shifted.component_dimension(gamma) == base.component_dimension(&g.compose(sigma, gamma).unwrap())
        }))
    }

    pub fn zero_vector(&self, degree: Morphism) -> Result<HomogeneousVector> {
        self.ring.groupoid().check(&degree)?;
        Ok(HomogeneousVector { degree, entries: vec![self.ring.field().zero(); self.pdim()] })
    }

    /// A vector of degree `τ` from dense coefficients.
    pub fn vector(&self, degree: Morphism, entries: Vec<Scalar>) -> Result<HomogeneousVector> {
        self.ring.groupoid().check(&degree)?;
        if entries.len() != self.pdim() {
            return Err(Error::Argument(format!("vector has {} entries, module has {}", entries.len(), self.pdim())));
        }
        for (i, c) in entries.iter().enumerate() {
            if c.field() != self.ring.field() {
                return Err(Error::FieldMismatch(c.field().to_string(), self.ring.field().to_string()));
            }
            if !c.is_zero() && self.entry_degree(i, &degree).is_none() {
                return Err(Error::Argument(format!(
                    "entry {} of a degree-{degree} vector must vanish: δ_iτ is undefined or unsupported",
                    i + 1
                )));
            }
        }
        Ok(HomogeneousVector { degree, entries })
    }

    /// The standard generator `1_{r(δ_i)}` in slot `i`, of degree `δ_i⁻¹`.
    pub fn standard_generator(&self, i: usize) -> HomogeneousVector {
        let g = self.ring.groupoid();
        let mut v = self.zero_vector(g.inverse(&self.shifts[i])).unwrap();
        v.entries[i] = self.ring.field().one();
        v
    }

    pub fn standard_basis(&self) -> Vec<HomogeneousVector> {
        (0..self.pdim()).map(|i| self.standard_generator(i)).collect()
    }

    /// `v·a` for homogeneous `a`; `None` when `a = 0` or `τ·deg a` is undefined.
    pub fn mul_right(&self, v: &HomogeneousVector, a: &HomogeneousScalar) -> Result<Option<HomogeneousVector>> {
        let HomogeneousScalar::Term { degree: gamma, coeff } = a else {
            return Ok(None);
        };
        if !self.ring.in_support(gamma) {
            return Err(Error::Argument(format!("scalar degree {gamma} is outside the support")));
        }
        let g = self.ring.groupoid();
        let Some(deg) = g.compose(&v.degree, gamma) else { return Ok(None) };
        let mut out = self.zero_vector(deg)?;
        if coeff.is_zero() {
            return Ok(Some(out));
        }
        for (i, c) in v.entries.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let di = self.entry_degree(i, &v.degree).unwrap();
            out.entries[i] = self.ring.mul_terms(&di, c, gamma, coeff).expect("gr-domain").1;
        }
        Ok(Some(out))
    }

    pub fn add(&self, v: &HomogeneousVector, w: &HomogeneousVector) -> Result<HomogeneousVector> {
        if v.degree != w.degree {
            return Err(Error::Argument(format!("cannot add vectors of degrees {} and {}", v.degree, w.degree)));
        }
        Ok(HomogeneousVector { degree: v.degree, entries: v.entries.iter().zip(&w.entries).map(|(a, b)| a + b).collect() })
    }

    /// The column matrix `[δ̄][τ̄⁻¹]` of a list of vectors.
    pub fn column_matrix(&self, vectors: &[HomogeneousVector]) -> Result<HomSpaceMatrix> {
        let g = self.ring.groupoid();
        for v in vectors {
            if v.entries.len() != self.pdim() {
                return Err(Error::Argument("vector belongs to a module of another size".into()));
            }
        }
        let beta = vectors.iter().map(|v| g.inverse(&v.degree)).collect();
        let entries = (0..self.pdim()).map(|i| vectors.iter().map(|v| v.entries[i].clone()).collect()).collect();
        HomSpaceMatrix::new(self.ring.clone(), self.shifts.clone(), beta, entries)
    }

    /// Column `j` of a matrix over `[δ̄][β̄]` as a vector of degree `β_j⁻¹`.
    pub fn column_vector(&self, m: &HomSpaceMatrix, j: usize) -> Result<HomogeneousVector> {
        let g = self.ring.groupoid();
        self.vector(g.inverse(&m.beta()[j]), (0..m.rows()).map(|i| m.get(i, j).clone()).collect())
    }

    pub fn is_pseudo_independent(&self, vectors: &[HomogeneousVector]) -> Result<bool> {
        Ok(self.pdim_of_span(vectors)? == vectors.len())
    }

    /// Pseudo-dimension of the span: the column rank of the vector matrix.
    pub fn pdim_of_span(&self, vectors: &[HomogeneousVector]) -> Result<usize> {
        if vectors.is_empty() {
            return Ok(0);
        }
        Ok(linalg::pivot_columns(&self.column_matrix(vectors)?).len())
    }

    /// Indices of a maximal pseudo-independent subsequence, in scan order.
    pub fn basis_from_generators(&self, vectors: &[HomogeneousVector]) -> Result<Vec<usize>> {
        if vectors.is_empty() {
            return Ok(Vec::new());
        }
        Ok(linalg::pivot_columns(&self.column_matrix(vectors)?))
    }

    /// Completes independent vectors to a pseudo-basis with standard
    /// generators taken in index order.
    pub fn extend_to_pseudo_basis(&self, vectors: &[HomogeneousVector]) -> Result<Vec<HomogeneousVector>> {
        let k = vectors.len();
        let mut all = vectors.to_vec();
        all.extend(self.standard_basis());
        let pivots = linalg::pivot_columns(&self.column_matrix(&all)?);
        if pivots.iter().take(k).copied().ne(0..k) || pivots.len() < k {
            return Err(Error::Precondition("input vectors are not pseudo-linearly independent".into()));
        }
        Ok(pivots.into_iter().map(|j| all[j].clone()).collect())
    }

    /// `M/N` for `N` the span of `vectors`, realised by the standard
    /// generators completing a basis of `N`.
    pub fn quotient(&self, vectors: &[HomogeneousVector]) -> Result<GradedModule> {
        let basis_idx = self.basis_from_generators(vectors)?;
        let basis: Vec<_> = basis_idx.iter().map(|&i| vectors[i].clone()).collect();
        let completed = self.extend_to_pseudo_basis(&basis)?;
        let g = self.ring.groupoid();
        let shifts = completed[basis.len()..].iter().map(|v| g.inverse(&v.degree)).collect();
        GradedModule::new(self.ring.clone(), shifts)
    }

    /// Expresses `target` as a genuine linear combination `Σ x_i a_i` with
    /// `a_i ∈ D_{γ_i⁻¹τ}`, when it lies in the span.
    pub fn solve_combination(&self, vectors: &[HomogeneousVector], target: &HomogeneousVector) -> Result<Option<Vec<HomogeneousScalar>>> {
        if vectors.is_empty() {
            return Ok(target.is_zero().then(Vec::new));
        }
        let a = self.column_matrix(vectors)?;
        let b = self.column_matrix(std::slice::from_ref(target))?;
        let Some(x) = linalg::solve(&a, &b)? else { return Ok(None) };
        Ok(Some((0..x.rows()).map(|j| x.entry(j, 0)).collect()))
    }

    /// `dim HOM(M, N)_γ = |{(i,j) : δ'_jγδ_i⁻¹ ∈ supp D}|`.
    pub fn hom_degree_dimension(&self, target: &GradedModule, gamma: &Morphism) -> usize {
        let g = self.ring.groupoid();
        let mut count = 0;
        for dj in &target.shifts {
            let Some(x) = g.compose(dj, gamma) else { continue };
            for di in &self.shifts {
                if slot_degree(&self.ring, &x, di).is_some() {
                    count += 1;
                }
            }
        }
        count
    }

    /// The Hom-space matrices of degree-`γ` maps `M → N`, restricted to the
    /// target slots where `δ'_jγ` is defined: `[δ̄'γ][δ̄]`.
    pub fn hom_space(&self, target: &GradedModule, gamma: &Morphism) -> HomSpaceMatrix {
        let g = self.ring.groupoid();
        let alpha = target.shifts.iter().filter_map(|d| g.compose(d, gamma)).collect();
        HomSpaceMatrix::zeros(self.ring.clone(), alpha, self.shifts.clone())
    }
}

impl HomogeneousVector {
    pub fn degree(&self) -> Morphism {
        self.degree
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }
}
