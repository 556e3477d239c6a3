//! Groupoid-graded division rings realised as twisted groupoid rings with
//! one-dimensional homogeneous components `F·u_γ` for `γ` in the support and
//! multiplication `u_γ u_δ = β(γ,δ) u_{γδ}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Invariant, Result};
use crate::groupoid::{FiniteGroup, FiniteGroupoid, Morphism, ObjectId};
use crate::par;
use crate::scalar::{Field, Scalar};

/// A homogeneous element: zero, or `coeff · u_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HomogeneousScalar {
    Zero,
    Term { degree: Morphism, coeff: Scalar },
}

impl HomogeneousScalar {
    pub fn is_zero(&self) -> bool {
        matches!(self, HomogeneousScalar::Zero)
    }

    pub fn degree(&self) -> Option<Morphism> {
        match self {
            HomogeneousScalar::Zero => None,
            HomogeneousScalar::Term { degree, .. } => Some(*degree),
        }
    }

    pub fn coeff(&self) -> Option<&Scalar> {
        match self {
            HomogeneousScalar::Zero => None,
            HomogeneousScalar::Term { coeff, .. } => Some(coeff),
        }
    }
}

impl fmt::Display for HomogeneousScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomogeneousScalar::Zero => write!(f, "0"),
            HomogeneousScalar::Term { degree, coeff } => write!(f, "{coeff}·u{degree}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GradedDivisionRing {
    groupoid: Arc<FiniteGroupoid>,
    field: Field,
    support: BTreeSet<Morphism>,
    factor: HashMap<(Morphism, Morphism), Scalar>,
    objects: BTreeSet<ObjectId>,
    opposite: OnceLock<Arc<GradedDivisionRing>>,
}

impl PartialEq for GradedDivisionRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.support == other.support
            && self.factor == other.factor
            && (Arc::ptr_eq(&self.groupoid, &other.groupoid) || self.groupoid == other.groupoid)
    }
}

impl Eq for GradedDivisionRing {}

/// Factor set of the cyclic group of order `n` twisted by `c`:
/// `β(g^i, g^j) = c` when `i + j >= n`, else 1.
pub fn cyclic_carry_factor(n: usize, c: Scalar) -> impl Fn(usize, usize) -> Scalar {
    move |i, j| if i + j >= n { c.clone() } else { c.field().one() }
}

impl GradedDivisionRing {
    /// Builds and validates a twisted groupoid ring from explicit data.
    pub fn build(
        groupoid: Arc<FiniteGroupoid>,
        field: Field,
        support: impl IntoIterator<Item = Morphism>,
        factor: HashMap<(Morphism, Morphism), Scalar>,
    ) -> Result<GradedDivisionRing> {
        let support: BTreeSet<Morphism> = support.into_iter().collect();
        for m in &support {
            groupoid.check(m)?;
        }
        if support.is_empty() {
            return Err(Error::Argument("empty support".into()));
        }
        let objects: BTreeSet<ObjectId> = support.iter().flat_map(|m| [m.r(), m.d()]).collect();
        let ring = GradedDivisionRing { groupoid, field, support, factor, objects, opposite: OnceLock::new() };
        ring.validate()?;
        Ok(ring)
    }

    /// Builds a ring whose factor on each composable support pair is `f(γ, δ)`.
    pub fn build_with(
        groupoid: Arc<FiniteGroupoid>,
        field: Field,
        support: impl IntoIterator<Item = Morphism>,
        f: impl Fn(&Morphism, &Morphism) -> Scalar,
    ) -> Result<GradedDivisionRing> {
        let support: BTreeSet<Morphism> = support.into_iter().collect();
        let mut factor = HashMap::new();
        for a in &support {
            for b in support.iter().filter(|b| b.r() == a.d()) {
                factor.insert((*a, *b), f(a, b));
            }
        }
        Self::build(groupoid, field, support, factor)
    }

    /// The field `F` trivially graded at a single object of the trivial groupoid.
    pub fn trivial(field: Field) -> GradedDivisionRing {
        let g = Arc::new(FiniteGroupoid::group_as_groupoid(FiniteGroup::trivial()).unwrap());
        Self::trivial_at(g, field, 0).expect("trivial ring is valid")
    }

    /// The field `F` concentrated at the identity of object `e`.
    pub fn trivial_at(groupoid: Arc<FiniteGroupoid>, field: Field, e: ObjectId) -> Result<GradedDivisionRing> {
        let id = groupoid.identity(e)?;
        Self::build_with(groupoid, field, [id], |_, _| field.one())
    }

    /// The group ring `F[G]` on a one-object groupoid.
    pub fn group_ring(field: Field, group: FiniteGroup) -> Result<GradedDivisionRing> {
        Self::twisted_group_ring(field, group, move |_, _| field.one())
    }

    /// The twisted group ring `F^β[G]` with `β(g,h) = factor(g,h)`.
    pub fn twisted_group_ring(
        field: Field,
        group: FiniteGroup,
        factor: impl Fn(usize, usize) -> Scalar,
    ) -> Result<GradedDivisionRing> {
        let g = Arc::new(FiniteGroupoid::group_as_groupoid(group)?);
        let support = g.morphisms();
        Self::build_with(g, field, support, |a, b| factor(a.elem, b.elem))
    }

    fn validate(&self) -> Result<()> {
        let g = &*self.groupoid;
        for &e in &self.objects {
            let id = g.identity(e)?;
            if !self.support.contains(&id) {
                return Err(Error::validation(
                    Invariant::SupportIdentity,
                    format!("identity of object {e} is missing from the support"),
                ));
            }
        }
        for m in &self.support {
            if !self.support.contains(&g.inverse(m)) {
                return Err(Error::validation(
                    Invariant::SupportInverseClosure,
                    format!("support contains {m} but not its inverse"),
                ));
            }
        }
        let by_target = self.by_target();
        for a in &self.support {
            for b in by_target.get(&a.d()).into_iter().flatten() {
                let ab = g.compose(a, b).expect("composable");
                if !self.support.contains(&ab) {
                    return Err(Error::validation(
                        Invariant::SupportCompositionClosure,
                        format!("support contains {a} and {b} but not their product {ab}"),
                    ));
                }
                match self.factor.get(&(*a, *b)) {
                    None => {
                        return Err(Error::validation(
                            Invariant::MissingFactor,
                            format!("no factor value for the pair ({a}, {b})"),
                        ))
                    }
                    Some(v) if v.field() != self.field => {
                        return Err(Error::validation(
                            Invariant::Field,
                            format!("factor ({a}, {b}) lies in {} instead of {}", v.field(), self.field),
                        ))
                    }
                    Some(v) if v.is_zero() => {
                        return Err(Error::validation(
                            Invariant::ZeroFactor,
                            format!("factor ({a}, {b}) is zero"),
                        ))
                    }
                    _ => {}
                }
            }
        }
        for (a, b) in self.factor.keys() {
            if a.d() != b.r() || !self.support.contains(a) || !self.support.contains(b) {
                return Err(Error::validation(
                    Invariant::Composability,
                    format!("factor given for ({a}, {b}), which is not a composable support pair"),
                ));
            }
        }
        for a in &self.support {
            let left = &self.factor[&(*a, g.identity(a.d())?)];
            let right = &self.factor[&(g.identity(a.r())?, *a)];
            if !left.is_one() || !right.is_one() {
                return Err(Error::validation(
                    Invariant::Normalization,
                    format!("factor of {a} with an identity is not 1"),
                ));
            }
        }
        let sup: Vec<Morphism> = self.support.iter().copied().collect();
        let bad = par::find_first(0..sup.len(), |i| {
            let s = &sup[i];
            for t in by_target.get(&s.d()).into_iter().flatten() {
                let st = g.compose(s, t).unwrap();
                for r in by_target.get(&t.d()).into_iter().flatten() {
                    let tr = g.compose(t, r).unwrap();
                    let lhs = &self.factor[&(*s, *t)] * &self.factor[&(st, *r)];
                    let rhs = &self.factor[&(*t, *r)] * &self.factor[&(*s, tr)];
                    if lhs != rhs {
                        return Some((*s, *t, *r));
                    }
                }
            }
            None
        });
        if let Some((s, t, r)) = bad {
            return Err(Error::validation(
                Invariant::Cocycle,
                format!("β(σ,τ)β(στ,ρ) ≠ β(τ,ρ)β(σ,τρ) at (σ,τ,ρ) = ({s}, {t}, {r})"),
            ));
        }
        Ok(())
    }

    fn by_target(&self) -> BTreeMap<ObjectId, Vec<Morphism>> {
        let mut m: BTreeMap<ObjectId, Vec<Morphism>> = BTreeMap::new();
        for s in &self.support {
            m.entry(s.r()).or_default().push(*s);
        }
        m
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn support(&self) -> &BTreeSet<Morphism> {
        &self.support
    }

    /// The objects `Γ'₀(D)` whose identity component is nonzero.
    pub fn objects(&self) -> &BTreeSet<ObjectId> {
        &self.objects
    }

    pub fn in_support(&self, m: &Morphism) -> bool {
        self.support.contains(m)
    }

    pub fn factor(&self, a: &Morphism, b: &Morphism) -> Option<&Scalar> {
        self.factor.get(&(*a, *b))
    }

    /// All factor entries in sorted order.
    pub fn factor_entries(&self) -> Vec<(Morphism, Morphism, Scalar)> {
        let mut v: Vec<_> = self.factor.iter().map(|((a, b), s)| (*a, *b, s.clone())).collect();
        v.sort_by_key(|x| (x.0, x.1));
        v
    }

    /// Support elements with the given target and source, in element order.
    pub fn support_between(&self, target: ObjectId, source: ObjectId) -> Vec<Morphism> {
        self.support.iter().filter(|m| m.r() == target && m.d() == source).copied().collect()
    }

    pub fn same_ring(&self, other: &GradedDivisionRing) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    pub fn one(&self, e: ObjectId) -> HomogeneousScalar {
        match self.groupoid.identity(e) {
            Ok(id) if self.support.contains(&id) => HomogeneousScalar::Term { degree: id, coeff: self.field.one() },
            _ => HomogeneousScalar::Zero,
        }
    }

    /// `coeff · u_degree`, checking the degree lies in the support.
    pub fn term(&self, degree: Morphism, coeff: Scalar) -> Result<HomogeneousScalar> {
        if coeff.field() != self.field {
            return Err(Error::FieldMismatch(coeff.field().to_string(), self.field.to_string()));
        }
        if coeff.is_zero() {
            return Ok(HomogeneousScalar::Zero);
        }
        if !self.support.contains(&degree) {
            return Err(Error::Argument(format!("degree {degree} is outside the support")));
        }
        Ok(HomogeneousScalar::Term { degree, coeff })
    }

    /// Product of `a·u_γ` and `b·u_δ`: `(γδ, a b β(γ,δ))`, or `None` when zero.
    pub fn mul_terms(&self, g: &Morphism, a: &Scalar, d: &Morphism, b: &Scalar) -> Option<(Morphism, Scalar)> {
        if g.d() != d.r() || a.is_zero() || b.is_zero() {
            return None;
        }
        let beta = self.factor.get(&(*g, *d))?;
        let gd = self.groupoid.compose(g, d)?;
        Some((gd, &(a * b) * beta))
    }

    pub fn mul_hom(&self, x: &HomogeneousScalar, y: &HomogeneousScalar) -> HomogeneousScalar {
        match (x, y) {
            (HomogeneousScalar::Term { degree: g, coeff: a }, HomogeneousScalar::Term { degree: d, coeff: b }) => {
                match self.mul_terms(g, a, d, b) {
                    Some((degree, coeff)) => HomogeneousScalar::Term { degree, coeff },
                    None => HomogeneousScalar::Zero,
                }
            }
            _ => HomogeneousScalar::Zero,
        }
    }

    /// Coefficient of the inverse of `a·u_γ`: `a⁻¹ β(γ,γ⁻¹)⁻¹` at degree `γ⁻¹`.
    pub fn invert_term(&self, g: &Morphism, a: &Scalar) -> Result<(Morphism, Scalar)> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let gi = self.groupoid.inverse(g);
        let beta = self
            .factor
            .get(&(*g, gi))
            .ok_or_else(|| Error::Argument(format!("degree {g} is outside the support")))?;
        Ok((gi, &a.invert()? * &beta.invert()?))
    }

    pub fn invert_hom(&self, x: &HomogeneousScalar) -> Result<HomogeneousScalar> {
        match x {
            HomogeneousScalar::Zero => Err(Error::DivisionByZero),
            HomogeneousScalar::Term { degree, coeff } => {
                let (degree, coeff) = self.invert_term(degree, coeff)?;
                Ok(HomogeneousScalar::Term { degree, coeff })
            }
        }
    }

    /// Classes of `e ∼ f ⟺ supp(D) ∩ eΓf ≠ ∅` on `Γ'₀(D)`, ordered by least object.
    pub fn primality_classes(&self) -> Vec<Vec<ObjectId>> {
        let objs: Vec<ObjectId> = self.objects.iter().copied().collect();
        let pos: BTreeMap<ObjectId, usize> = objs.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut parent: Vec<usize> = (0..objs.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for m in &self.support {
            let (a, b) = (find(&mut parent, pos[&m.r()]), find(&mut parent, pos[&m.d()]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut classes: BTreeMap<usize, Vec<ObjectId>> = BTreeMap::new();
        for (i, &o) in objs.iter().enumerate() {
            let root = find(&mut parent, i);
            classes.entry(root).or_default().push(o);
        }
        classes.into_values().collect()
    }

    /// The corner `1_e D 1_e`.
    pub fn corner(&self, e: ObjectId) -> Result<GradedDivisionRing> {
        if !self.objects.contains(&e) {
            return Err(Error::Argument(format!("object {e} is not in Γ'₀(D)")));
        }
        self.restrict(&BTreeSet::from([e]))
    }

    pub fn is_gr_prime(&self) -> bool {
        self.primality_classes().len() == 1
    }

    /// Restriction to the support inside `objects × objects`.
    pub fn restrict(&self, objects: &BTreeSet<ObjectId>) -> Result<GradedDivisionRing> {
        let support: BTreeSet<Morphism> = self
            .support
            .iter()
            .filter(|m| objects.contains(&m.r()) && objects.contains(&m.d()))
            .copied()
            .collect();
        let factor = self
            .factor
            .iter()
            .filter(|((a, b), _)| support.contains(a) && support.contains(b))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        Self::build(self.groupoid.clone(), self.field, support, factor)
    }

    /// The gr-prime blocks `D_[e]`, one per primality class.
    pub fn decompose_prime(&self) -> Vec<GradedDivisionRing> {
        self.primality_classes()
            .into_iter()
            .map(|c| self.restrict(&c.into_iter().collect()).expect("blocks of a valid ring are valid"))
            .collect()
    }

    /// Canonical matrix form at base object `e` of a gr-prime ring.
    pub fn matrix_form(&self, e: ObjectId) -> Result<MatrixForm> {
        if !self.is_gr_prime() {
            return Err(Error::Precondition("matrix form needs a gr-prime ring".into()));
        }
        if !self.objects.contains(&e) {
            return Err(Error::Precondition(format!("object {e} is not in Γ'₀(D)")));
        }
        let h = self.restrict(&BTreeSet::from([e]))?;
        let mut sigma = BTreeMap::new();
        for &f in &self.objects {
            let s = self.support_between(e, f).into_iter().min_by_key(|m| m.elem).expect("gr-prime ring connects all objects");
            sigma.insert(f, s);
        }
        let sig: Vec<Morphism> = sigma.values().copied().collect();
        let rebuilt = matrix_form_inverse(&h, &sig)?;
        let g = &*self.groupoid;
        let mut phi = BTreeMap::new();
        for gamma in &self.support {
            let sr = &sigma[&gamma.r()];
            let sd = &sigma[&gamma.d()];
            let one = self.field.one();
            let (x, cx) = self.mul_terms(sr, &one, gamma, &one).expect("nonzero");
            let (sdi, ci) = self.invert_term(sd, &one)?;
            let (deg, c) = self.mul_terms(&x, &cx, &sdi, &ci).expect("nonzero");
            debug_assert_eq!(deg, g.compose(&g.compose(sr, gamma).unwrap(), &g.inverse(sd)).unwrap());
            phi.insert(*gamma, c);
        }
        Ok(MatrixForm { base: e, h, sigma, rebuilt, phi })
    }

    /// The opposite ring: `(D^op)_γ = D_{γ⁻¹}` with `β^op(γ,δ) = β(δ⁻¹,γ⁻¹)`.
    /// Computed once and cached.
    pub fn opposite(&self) -> Arc<GradedDivisionRing> {
        self.opposite
            .get_or_init(|| {
                let g = &*self.groupoid;
                let factor = self
                    .factor
                    .keys()
                    .map(|(a, b)| ((*a, *b), self.factor[&(g.inverse(b), g.inverse(a))].clone()))
                    .collect();
                Arc::new(
                    Self::build(self.groupoid.clone(), self.field, self.support.iter().copied(), factor)
                        .expect("opposite of a valid ring is valid"),
                )
            })
            .clone()
    }

    /// `M₁(D)(τ⁻¹)` collapsed to a graded division ring supported in
    /// `r(τ)Γr(τ)`: `u'_g = u_{τ⁻¹gτ}`. Requires `Γ'₀(D) = {d(τ)}`.
    pub fn conjugate(&self, tau: &Morphism) -> Result<GradedDivisionRing> {
        if self.objects.len() != 1 || !self.objects.contains(&tau.d()) {
            return Err(Error::Precondition("conjugation needs a one-object ring at d(τ)".into()));
        }
        let g = &*self.groupoid;
        let ti = g.inverse(tau);
        let conj = |m: &Morphism| g.compose(&g.compose(tau, m).unwrap(), &ti).unwrap();
        let unconj = |m: &Morphism| g.compose(&g.compose(&ti, m).unwrap(), tau).unwrap();
        let support: Vec<Morphism> = self.support.iter().map(conj).collect();
        Self::build_with(self.groupoid.clone(), self.field, support, |a, b| {
            self.factor[&(unconj(a), unconj(b))].clone()
        })
    }

    /// Checks that `u_γ ↦ coeffs[γ]·u'_{degree_map(γ)}` is a graded ring
    /// isomorphism onto `other`.
    pub fn verify_isomorphism(
        &self,
        other: &GradedDivisionRing,
        degree_map: impl Fn(&Morphism) -> Morphism,
        coeffs: &BTreeMap<Morphism, Scalar>,
    ) -> Result<()> {
        let image: BTreeSet<Morphism> = self.support.iter().map(&degree_map).collect();
        if image != other.support || image.len() != self.support.len() {
            return Err(Error::TheoremViolation("degree map is not a support bijection".into()));
        }
        for ((a, b), beta) in &self.factor {
            let ab = self.groupoid.compose(a, b).unwrap();
            let (ma, mb) = (degree_map(a), degree_map(b));
            let mab = other
                .groupoid
                .compose(&ma, &mb)
                .ok_or_else(|| Error::TheoremViolation(format!("images of {a}, {b} are not composable")))?;
            if mab != degree_map(&ab) {
                return Err(Error::TheoremViolation(format!("degree map is not multiplicative at ({a}, {b})")));
            }
            let lhs = &(&coeffs[a] * &coeffs[b]) * &other.factor[&(ma, mb)];
            let rhs = beta * &coeffs[&ab];
            if lhs != rhs {
                return Err(Error::TheoremViolation(format!("coefficient map is not multiplicative at ({a}, {b})")));
            }
        }
        Ok(())
    }
}

/// Result of [`GradedDivisionRing::matrix_form`]: `H = 1_e D 1_e`, the
/// chosen `σ_f ∈ supp(1_e D 1_f)`, the rebuilt ring and the coefficient map
/// `Φ(u_γ) = phi[γ]·u'_γ` onto it.
#[derive(Clone, Debug)]
pub struct MatrixForm {
    pub base: ObjectId,
    pub h: GradedDivisionRing,
    pub sigma: BTreeMap<ObjectId, Morphism>,
    pub rebuilt: GradedDivisionRing,
    pub phi: BTreeMap<Morphism, Scalar>,
}

/// Builds the graded division ring `M_{Δ₀}(H)(σ̄)`: degree `σ_f⁻¹ h σ_{f'}`
/// carries `u^H_h E_{ff'}`.
pub fn matrix_form_inverse(h: &GradedDivisionRing, sigma: &[Morphism]) -> Result<GradedDivisionRing> {
    if h.objects().len() != 1 {
        return Err(Error::Precondition("H must be supported at a single object".into()));
    }
    let e = *h.objects().iter().next().unwrap();
    let g = h.groupoid().clone();
    let mut by_source: BTreeMap<ObjectId, Morphism> = BTreeMap::new();
    for s in sigma {
        g.check(s)?;
        if s.r() != e {
            return Err(Error::Precondition(format!("σ = {s} does not start at the base object {e}")));
        }
        if by_source.insert(s.d(), *s).is_some() {
            return Err(Error::Precondition(format!("two σ's share the source {}", s.d())));
        }
    }
    let mut support = Vec::new();
    for sf in by_source.values() {
        for hh in h.support() {
            for sg in by_source.values() {
                let x = g.compose(&g.compose(&g.inverse(sf), hh).unwrap(), sg).unwrap();
                support.push(x);
            }
        }
    }
    let core = |m: &Morphism| {
        let sr = &by_source[&m.r()];
        let sd = &by_source[&m.d()];
        g.compose(&g.compose(sr, m).unwrap(), &g.inverse(sd)).unwrap()
    };
    GradedDivisionRing::build_with(g.clone(), h.field(), support, |a, b| {
        h.factor(&core(a), &core(b)).expect("core degrees lie in supp H").clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn trivial_and_group_rings() {
        let k = GradedDivisionRing::trivial(q());
        assert_eq!(k.support().len(), 1);
        let c2 = GradedDivisionRing::group_ring(q(), FiniteGroup::cyclic(2).unwrap()).unwrap();
        let g = c2.groupoid().morphism(0, 1, 0).unwrap();
        let x = c2.term(g, q().from_i64(2)).unwrap();
        let y = c2.term(g, q().from_i64(3)).unwrap();
        let e = c2.groupoid().identity(0).unwrap();
        assert_eq!(c2.mul_hom(&x, &y), HomogeneousScalar::Term { degree: e, coeff: q().from_i64(6) });
        let xi = c2.invert_hom(&x).unwrap();
        assert_eq!(xi, HomogeneousScalar::Term { degree: g, coeff: q().from_ratio(1, 2).unwrap() });
        assert_eq!(c2.mul_hom(&x, &xi), c2.one(0));
        assert_eq!(c2.invert_hom(&xi).unwrap(), x);
        assert_eq!(c2.invert_hom(&HomogeneousScalar::Zero), Err(Error::DivisionByZero));
        assert_eq!(c2.invert_hom(&c2.one(0)).unwrap(), c2.one(0));
    }

    #[test]
    fn twisted_c2_over_f3() {
        let f3 = Field::prime(3).unwrap();
        let d = catalog::twisted_c2_f3();
        let g = d.groupoid().morphism(0, 1, 0).unwrap();
        assert_eq!(d.factor(&g, &g), Some(&f3.from_i64(2)));
        let x = d.term(g, f3.one()).unwrap();
        let xi = d.invert_hom(&x).unwrap();
        assert_eq!(d.mul_hom(&x, &xi), d.one(0));
        assert_eq!(d.mul_hom(&xi, &x), d.one(0));
    }

    #[test]
    fn validation_failures_are_named() {
        let g = Arc::new(FiniteGroupoid::group_as_groupoid(FiniteGroup::cyclic(2).unwrap()).unwrap());
        let e = g.identity(0).unwrap();
        let t = g.morphism(0, 1, 0).unwrap();
        let two = q().from_i64(2);
        // β(t,t) = 2 alone is fine, but β(e,t) = 2 breaks normalization
        let err = GradedDivisionRing::build_with(g.clone(), q(), [e, t], |a, b| {
            if *a == e && *b == t { two.clone() } else { q().one() }
        })
        .unwrap_err();
        assert_eq!(err.invariant(), Some(Invariant::Normalization));
        let err = GradedDivisionRing::build_with(g.clone(), q(), [e, t], |_, _| q().zero()).unwrap_err();
        assert_eq!(err.invariant(), Some(Invariant::ZeroFactor));
        let err = GradedDivisionRing::build_with(g.clone(), q(), [t], |_, _| q().one()).unwrap_err();
        assert_eq!(err.invariant(), Some(Invariant::SupportIdentity));
        let mut f = HashMap::new();
        f.insert((e, e), q().one());
        let err = GradedDivisionRing::build(g.clone(), q(), [e, t], f).unwrap_err();
        assert_eq!(err.invariant(), Some(Invariant::MissingFactor));
        // a non-cocycle on C3
        let g3 = Arc::new(FiniteGroupoid::group_as_groupoid(FiniteGroup::cyclic(3).unwrap()).unwrap());
        let sup = g3.morphisms();
        let err = GradedDivisionRing::build_with(g3, q(), sup, |a, b| {
            if a.elem == 1 && b.elem == 1 { two.clone() } else { q().one() }
        })
        .unwrap_err();
        assert_eq!(err.invariant(), Some(Invariant::Cocycle));
        // support not closed under inverse: pair groupoid {1,2}, support {(1,1),(2,2),(1,2)}
        let p = Arc::new(FiniteGroupoid::pair_groupoid(2).unwrap());
        let s = [p.identity(1).unwrap(), p.identity(2).unwrap(), p.morphism(1, 0, 2).unwrap()];
        let err = GradedDivisionRing::build_with(p, q(), s, |_, _| q().one()).unwrap_err();
        assert_eq!(err.invariant(), Some(Invariant::SupportInverseClosure));
    }

    #[test]
    fn block_example_classes_and_blocks() {
        let d = catalog::two_block_ring(q());
        assert!(!d.is_gr_prime());
        assert_eq!(d.primality_classes(), vec![vec![1, 2], vec![3, 4]]);
        let blocks = d.decompose_prime();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.is_gr_prime()));
        let total: usize = blocks.iter().map(|b| b.support().len()).sum();
        assert_eq!(total, d.support().len());
        for x in blocks[0].support() {
            for y in blocks[1].support() {
                let one = q().one();
                assert!(d.mul_terms(x, &one, y, &one).is_none());
                assert!(d.mul_terms(y, &one, x, &one).is_none());
            }
        }
        let mut reassembled = HashMap::new();
        for b in &blocks {
            for (x, y, v) in b.factor_entries() {
                reassembled.insert((x, y), v);
            }
        }
        assert_eq!(reassembled, d.factor);
    }

    #[test]
    fn matrix_form_of_block() {
        let d = catalog::two_block_ring(q());
        let block = &d.decompose_prime()[0];
        let mf = block.matrix_form(1).unwrap();
        assert_eq!(mf.h.support().len(), 1);
        assert_eq!(mf.sigma.values().map(|m| (m.r(), m.d())).collect::<Vec<_>>(), vec![(1, 1), (1, 2)]);
        assert_eq!(mf.rebuilt.support().len(), 4);
        block.verify_isomorphism(&mf.rebuilt, |m| *m, &mf.phi).unwrap();
        assert!(d.matrix_form(1).is_err());
    }

    #[test]
    fn one_object_matrix_form_is_identity() {
        let d = GradedDivisionRing::group_ring(q(), FiniteGroup::cyclic(3).unwrap()).unwrap();
        let mf = d.matrix_form(0).unwrap();
        assert_eq!(mf.h, d);
        assert_eq!(mf.rebuilt, d);
        assert_eq!(mf.sigma.len(), 1);
    }

    #[test]
    fn pair_supported_ring_from_trivial_h() {
        let g = Arc::new(FiniteGroupoid::pair_groupoid(3).unwrap());
        let h = GradedDivisionRing::trivial_at(g.clone(), q(), 1).unwrap();
        let sigma: Vec<Morphism> = (1..=3).map(|f| g.morphism(1, 0, f).unwrap()).collect();
        let d = matrix_form_inverse(&h, &sigma).unwrap();
        assert_eq!(d.support().len(), 9);
        assert!(d.is_gr_prime());
        assert_eq!(d.opposite().support(), d.support());
    }

    #[test]
    fn opposite_of_twisted_c4() {
        let d = catalog::twisted_c4(q());
        let op = d.opposite();
        let g = d.groupoid();
        for (a, b, v) in op.factor_entries() {
            assert_eq!(Some(&v), d.factor(&g.inverse(&b), &g.inverse(&a)));
        }
        assert_eq!(*op.opposite(), d);
        let k = GradedDivisionRing::group_ring(q(), FiniteGroup::cyclic(3).unwrap()).unwrap();
        assert_eq!(*k.opposite(), k);
    }

    proptest! {
        #[test]
        fn gr_domain_and_inverses(d in catalog::strategies::division_ring()) {
            let f = d.field();
            let one = f.one();
            for a in d.support() {
                let (ai, ci) = d.invert_term(a, &one).unwrap();
                prop_assert_eq!(d.mul_terms(a, &one, &ai, &ci).unwrap(), (d.groupoid().identity(a.r()).unwrap(), one.clone()));
                prop_assert_eq!(d.mul_terms(&ai, &ci, a, &one).unwrap(), (d.groupoid().identity(a.d()).unwrap(), one.clone()));
                for b in d.support().iter().filter(|b| b.r() == a.d()) {
                    let p = d.mul_terms(a, &one, b, &one);
                    prop_assert!(p.is_some());
                    prop_assert!(!p.unwrap().1.is_zero());
                }
            }
        }

        #[test]
        fn primality_matches_brute_force(d in catalog::strategies::division_ring()) {
            prop_assume!(d.support().len() <= 20);
            // gr-prime ⟺ ∀ a,b ∃ m homogeneous with a·m·b ≠ 0
            let one = d.field().one();
            let brute = d.support().iter().all(|a| d.support().iter().all(|b| {
                d.support().iter().any(|m| {
                    d.mul_terms(a, &one, m, &one)
                        .and_then(|(am, c)| d.mul_terms(&am, &c, b, &one))
                        .is_some()
                })
            }));
            prop_assert_eq!(brute, d.is_gr_prime());
        }

        #[test]
        fn matrix_form_round_trip(d in catalog::strategies::division_ring()) {
            for block in d.decompose_prime() {
                let e = *block.objects().iter().next().unwrap();
                let mf = block.matrix_form(e).unwrap();
                prop_assert!(block.verify_isomorphism(&mf.rebuilt, |m| *m, &mf.phi).is_ok());
                prop_assert_eq!(&*block.opposite().opposite(), &block);
            }
        }
    }
}
