//! Rings of small preadditive categories, graded by the pair groupoid on
//! the objects, and the matrix-form classification predicates.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::division_ring::GradedDivisionRing;
use crate::error::{Error, Invariant, Result};
use crate::groupoid::{FiniteGroupoid, Morphism, ObjectId};
use crate::scalar::{Field, Scalar};
use crate::structure::{classify, MatrixBlock, SemisimpleRingSpec};

/// A category whose hom-groups are `Hom(A,B) = Π_j M_{n(j,B)×n(j,A)}(D_j)`
/// with every `D_j` a prime or rational field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFormCategory {
    objects: Vec<String>,
    fields: Vec<Field>,
    dims: Vec<Vec<usize>>,
}

impl MatrixFormCategory {
    /// `dims[a][j] = n(j, A_a)`.
    pub fn new(objects: Vec<String>, fields: Vec<Field>, dims: Vec<Vec<usize>>) -> Result<MatrixFormCategory> {
        if objects.is_empty() {
            return Err(Error::Argument("a category needs at least one object".into()));
        }
        if dims.len() != objects.len() {
            return Err(Error::Argument(format!("{} objects but {} dimension rows", objects.len(), dims.len())));
        }
        if let Some(a) = dims.iter().position(|row| row.len() != fields.len()) {
            return Err(Error::Argument(format!("object {} needs one multiplicity per division ring", objects[a])));
        }
        let mut names = objects.clone();
        names.sort();
        names.dedup();
        if names.len() != objects.len() {
            return Err(Error::Argument("object names must be distinct".into()));
        }
        Ok(MatrixFormCategory { objects, fields, dims })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn fields(&self) -> &[Field] {
        &self.fields
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    pub fn multiplicity(&self, j: usize, a: usize) -> usize {
        self.dims[a][j]
    }

    pub fn total_multiplicity(&self, a: usize) -> usize {
        self.dims[a].iter().sum()
    }

    /// `J`: division rings occurring in some object.
    pub fn active_rings(&self) -> Vec<usize> {
        (0..self.fields.len()).filter(|&j| self.dims.iter().any(|row| row[j] > 0)).collect()
    }

    /// `dim Hom(B, A)`, the dimension of the `(A, B)` ring component.
    pub fn hom_dimension(&self, a: usize, b: usize) -> usize {
        (0..self.fields.len()).map(|j| self.dims[a][j] * self.dims[b][j]).sum()
    }

    /// Connected components of the relation `Hom(A, B) ≠ 0` on nonzero objects.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let nonzero: Vec<usize> = (0..self.objects.len()).filter(|&a| self.total_multiplicity(a) > 0).collect();
        let mut comp: Vec<Vec<usize>> = Vec::new();
        for &a in &nonzero {
            let linked: Vec<usize> = (0..comp.len())
                .filter(|&c| comp[c].iter().any(|&b| self.hom_dimension(a, b) > 0))
                .collect();
            let mut merged = vec![a];
            for &c in linked.iter().rev() {
                merged.extend(comp.remove(c));
            }
            merged.sort_unstable();
            comp.push(merged);
        }
        comp.sort();
        comp
    }

    /// The same category as structure constants (all `D_j` must share a field).
    pub fn to_raw(&self) -> Result<RawCategory> {
        let field = *self.fields.first().ok_or_else(|| Error::Argument("no division rings".into()))?;
        if let Some(f) = self.fields.iter().find(|&&f| f != field) {
            return Err(Error::FieldMismatch(field.to_string(), f.to_string()));
        }
        let n = self.objects.len();
        // Basis of Hom(B, A): (j, p, q) with p < n(j,A), q < n(j,B).
        let basis = |a: usize, b: usize| -> Vec<(usize, usize, usize)> {
            (0..self.fields.len())
                .flat_map(|j| (0..self.dims[a][j]).flat_map(move |p| (0..self.dims[b][j]).map(move |q| (j, p, q))))
                .collect()
        };
        let mut compose = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ab, bc, ac) = (basis(a, b), basis(b, c), basis(a, c));
                    let table: Vec<Vec<Vec<Scalar>>> = ab
                        .iter()
                        .map(|&(j, p, q)| {
                            bc.iter()
                                .map(|&(j2, q2, r)| {
                                    ac.iter()
                                        .map(|&t| if j == j2 && q == q2 && t == (j, p, r) { field.one() } else { field.zero() })
                                        .collect()
                                })
                                .collect()
                        })
                        .collect();
                    compose.insert((a, b, c), table);
                }
            }
        }
        let identities = (0..n)
            .map(|a| basis(a, a).iter().map(|&(_, p, q)| if p == q { field.one() } else { field.zero() }).collect())
            .collect();
        let hom_dims = (0..n).map(|a| (0..n).map(|b| self.hom_dimension(a, b)).collect()).collect();
        RawCategory::new(self.objects.clone(), field, hom_dims, compose, identities)
    }
}

/// Verdicts of the matrix-form predicates with their witnessing objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryFlags {
    pub semisimple: bool,
    pub simple_artinian: bool,
    pub all_functors_free: bool,
    pub division: bool,
    pub simple_division: bool,
    pub active_rings: Vec<usize>,
    /// `A_j` with `n(j,A_j) = 1` and `n(j',A_j) = 0` for `j' ≠ j`, per active `j`.
    pub free_objects: Vec<Option<usize>>,
    /// An object of total multiplicity at least 2.
    pub division_obstruction: Option<usize>,
}

pub fn classify_category(c: &MatrixFormCategory) -> CategoryFlags {
    let active = c.active_rings();
    let free_objects: Vec<Option<usize>> = active
        .iter()
        .map(|&j| (0..c.objects.len()).find(|&a| c.dims[a][j] == 1 && c.total_multiplicity(a) == 1))
        .collect();
    let division_obstruction = (0..c.objects.len()).find(|&a| c.total_multiplicity(a) > 1);
    let simple_artinian = active.len() == 1;
    let division = division_obstruction.is_none();
    CategoryFlags {
        semisimple: true,
        simple_artinian,
        all_functors_free: free_objects.iter().all(Option::is_some),
        division,
        simple_division: division && simple_artinian,
        active_rings: active,
        free_objects,
        division_obstruction,
    }
}

/// Display helper that resolves object indices to names.
pub struct FlagReport<'a>(pub &'a MatrixFormCategory, pub &'a CategoryFlags);

impl fmt::Display for FlagReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, fl) = (self.0, self.1);
        writeln!(f, "semisimple: {}", fl.semisimple)?;
        writeln!(f, "simple-artinian: {} (division rings in use: {})", fl.simple_artinian, fl.active_rings.len())?;
        let free: Vec<String> = fl
            .active_rings
            .iter()
            .zip(&fl.free_objects)
            .map(|(j, a)| format!("D{}→{}", j + 1, a.map_or("none".to_string(), |a| c.objects[a].clone())))
            .collect();
        writeln!(f, "all-functors-free: {} ({})", fl.all_functors_free, free.join(", "))?;
        match fl.division_obstruction {
            Some(a) => writeln!(f, "division: false (object {} has total multiplicity {})", c.objects[a], c.total_multiplicity(a))?,
            None => writeln!(f, "division: true")?,
        }
        write!(f, "simple-division: {}", fl.simple_division)
    }
}

/// The block family `M_{K_j}(D_j)(σ̄_j)` with `K_{j,B} = {(B, p) : p < n(j,B)}`
/// and `σ_{(B,p)} = (A_j, B)`, `A_j` the first object with `n(j, A_j) > 0`.
/// Objects are numbered `1..=N` in the pair groupoid.
pub fn category_to_semisimple_spec(c: &MatrixFormCategory) -> Result<SemisimpleRingSpec> {
    let n = c.objects.len();
    let g = Arc::new(FiniteGroupoid::pair_groupoid(n)?);
    let id = |a: usize| (a + 1) as ObjectId;
    let mut blocks = Vec::new();
    for j in c.active_rings() {
        let base = (0..n).find(|&a| c.dims[a][j] > 0).unwrap();
        let ring = Arc::new(GradedDivisionRing::trivial_at(g.clone(), c.fields[j], id(base))?);
        let sigma: Vec<Morphism> = (0..n)
            .flat_map(|b| std::iter::repeat_n(b, c.dims[b][j]))
            .map(|b| g.morphism(id(base), 0, id(b)))
            .collect::<Result<_>>()?;
        blocks.push(MatrixBlock::new(ring, sigma)?);
    }
    if blocks.is_empty() {
        return Err(Error::Argument("the zero category has no matrix blocks".into()));
    }
    SemisimpleRingSpec::new(blocks)
}

/// Compares the category predicates with the ring-side classification of
/// the associated semisimple spec.
pub fn check_bridge(c: &MatrixFormCategory) -> Result<CategoryFlags> {
    let flags = classify_category(c);
    let ring = classify(&category_to_semisimple_spec(c)?)?;
    let pairs = [
        ("pfm / all-functors-free", ring.pfm, flags.all_functors_free),
        ("gr-division / division", ring.gr_division, flags.division),
        ("gr-simple / simple-artinian", ring.gr_simple, flags.simple_artinian),
    ];
    for (name, r, k) in pairs {
        if r != k {
            return Err(Error::TheoremViolation(format!("{name} disagree: ring side {r}, category side {k}")));
        }
    }
    Ok(flags)
}

/// A small preadditive category over a field, by structure constants.
/// `hom_dims[a][b] = dim Hom(B, A)`; `compose[(a,b,c)][p][q]` expands the
/// composite of basis `p` of `Hom(B,A)` and basis `q` of `Hom(C,B)` in the
/// basis of `Hom(C,A)`; `identities[a]` expands `I_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCategory {
    objects: Vec<String>,
    field: Field,
    hom_dims: Vec<Vec<usize>>,
    compose: Table,
    identities: Vec<Vec<Scalar>>,
}

type Table = HashMap<(usize, usize, usize), Vec<Vec<Vec<Scalar>>>>;

impl RawCategory {
    pub fn new(
        objects: Vec<String>,
        field: Field,
        hom_dims: Vec<Vec<usize>>,
        compose: Table,
        identities: Vec<Vec<Scalar>>,
    ) -> Result<RawCategory> {
        let c = RawCategory { objects, field, hom_dims, compose, identities };
        c.validate()?;
        Ok(c)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn hom_dimension(&self, a: usize, b: usize) -> usize {
        self.hom_dims[a][b]
    }

    fn validate(&self) -> Result<()> {
        let n = self.objects.len();
        let bil = |d: String| Error::validation(Invariant::Bilinearity, d);
        if n == 0 || self.hom_dims.len() != n || self.hom_dims.iter().any(|r| r.len() != n) {
            return Err(Error::Argument("hom dimensions must form an N×N table".into()));
        }
        if self.identities.len() != n {
            return Err(Error::validation(Invariant::Identity, "one identity per object is required"));
        }
        for a in 0..n {
            if self.identities[a].len() != self.hom_dims[a][a] {
                return Err(Error::validation(Invariant::Identity, format!("identity of {} has the wrong length", self.objects[a])));
            }
            for b in 0..n {
                for c in 0..n {
                    let (dab, dbc, dac) = (self.hom_dims[a][b], self.hom_dims[b][c], self.hom_dims[a][c]);
                    let here = format!("composition {}←{}←{}", self.objects[a], self.objects[b], self.objects[c]);
                    match self.compose.get(&(a, b, c)) {
                        None if dab * dbc == 0 => {}
                        None => return Err(bil(format!("{here} has no structure constants"))),
                        Some(t) => {
                            if t.len() != dab || t.iter().any(|r| r.len() != dbc || r.iter().any(|v| v.len() != dac)) {
                                return Err(bil(format!("{here} has structure constants of the wrong shape")));
                            }
                            if t.iter().flatten().flatten().any(|s| s.field() != self.field) {
                                return Err(Error::validation(Invariant::Field, format!("{here} mixes fields")));
                            }
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let d = self.hom_dims[a][b];
                for p in 0..d {
                    let f = self.unit_vector(d, p);
                    let left = self.compose_vec(a, a, b, &self.identities[a], &f);
                    let right = self.compose_vec(a, b, b, &f, &self.identities[b]);
                    if left != f || right != f {
                        return Err(Error::validation(
                            Invariant::Identity,
                            format!("basis morphism {p} of Hom({}, {}) is not fixed by the identities", self.objects[b], self.objects[a]),
                        ));
                    }
                }
            }
        }
        let zero = self.field.zero();
        let table = |a: usize, b: usize, c: usize| self.compose.get(&(a, b, c));
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let Some(t_abc) = table(a, b, c) else { continue };
                    for d in 0..n {
                        let (Some(t_acd), Some(t_bcd), Some(t_abd)) = (table(a, c, d), table(b, c, d), table(a, b, d)) else {
                            continue;
                        };
                        for (p, row) in t_abc.iter().enumerate() {
                            for (q, fg) in row.iter().enumerate() {
                                for r in 0..self.hom_dims[c][d] {
                                    let mut l = vec![zero.clone(); self.hom_dims[a][d]];
                                    for (s, x) in fg.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                                        for (o, v) in l.iter_mut().zip(&t_acd[s][r]) {
                                            *o = &*o + &(x * v);
                                        }
                                    }
                                    let mut rr = vec![zero.clone(); self.hom_dims[a][d]];
                                    for (u, x) in t_bcd[q][r].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                                        for (o, v) in rr.iter_mut().zip(&t_abd[p][u]) {
                                            *o = &*o + &(x * v);
                                        }
                                    }
                                    if l != rr {
                                        return Err(Error::validation(
                                            Invariant::Associativity,
                                            format!(
                                                "(f∘g)∘h ≠ f∘(g∘h) along {}←{}←{}←{}",
                                                self.objects[a], self.objects[b], self.objects[c], self.objects[d]
                                            ),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn unit_vector(&self, d: usize, p: usize) -> Vec<Scalar> {
        (0..d).map(|i| if i == p { self.field.one() } else { self.field.zero() }).collect()
    }

    /// `f ∘ g` for `f ∈ Hom(B,A)`, `g ∈ Hom(C,B)` in coordinates.
    pub fn compose_vec(&self, a: usize, b: usize, c: usize, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.hom_dims[a][c]];
        let Some(t) = self.compose.get(&(a, b, c)) else { return out };
        for (p, fp) in f.iter().enumerate() {
            if fp.is_zero() {
                continue;
            }
            for (q, gq) in g.iter().enumerate() {
                if gq.is_zero() {
                    continue;
                }
                let s = fp * gq;
                for (o, v) in out.iter_mut().zip(&t[p][q]) {
                    *o = &*o + &(&s * v);
                }
            }
        }
        out
    }
}

/// `R[C] = ⊕_{(A,B)} Hom(B, A)` graded by the pair groupoid on the objects
/// (object `a` is numbered `a + 1`).
#[derive(Clone, Debug)]
pub struct CategoryRing {
    groupoid: Arc<FiniteGroupoid>,
    category: RawCategory,
}

pub fn ring_of_category(c: &RawCategory) -> Result<CategoryRing> {
    let groupoid = Arc::new(FiniteGroupoid::pair_groupoid(c.objects.len())?);
    Ok(CategoryRing { groupoid, category: c.clone() })
}

impl CategoryRing {
    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn category(&self) -> &RawCategory {
        &self.category
    }

    fn index(&self, o: ObjectId) -> usize {
        o as usize - 1
    }

    pub fn component_dimension(&self, gamma: &Morphism) -> usize {
        self.category.hom_dimension(self.index(gamma.r()), self.index(gamma.d()))
    }

    pub fn support(&self) -> Vec<Morphism> {
        self.groupoid.morphisms().into_iter().filter(|g| self.component_dimension(g) > 0).collect()
    }

    /// Product of homogeneous elements: the composite when the degrees compose, else zero.
    pub fn mul(&self, g: &Morphism, x: &[Scalar], h: &Morphism, y: &[Scalar]) -> Option<(Morphism, Vec<Scalar>)> {
        let gh = self.groupoid.compose(g, h)?;
        let (a, b, c) = (self.index(g.r()), self.index(g.d()), self.index(h.d()));
        Some((gh, self.category.compose_vec(a, b, c, x, y)))
    }

    /// The local unit `I_A` at object `A`.
    pub fn unit(&self, o: ObjectId) -> Vec<Scalar> {
        self.category.identities[self.index(o)].clone()
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cat(dims: Vec<Vec<usize>>, k: usize) -> MatrixFormCategory {
        let objects = (0..dims.len()).map(|a| format!("A{}", a + 1)).collect();
        MatrixFormCategory::new(objects, vec![Field::Rational; k], dims).unwrap()
    }

    #[test]
    fn one_and_two_dimensional_spaces() {
        let c = cat(vec![vec![1], vec![2]], 1);
        let f = check_bridge(&c).unwrap();
        assert!(f.simple_artinian && f.all_functors_free && !f.division);
        assert_eq!(f.free_objects, vec![Some(0)]);
        let spec = category_to_semisimple_spec(&c).unwrap();
        assert_eq!(spec.blocks()[0].size(), 3);
        let raw = c.to_raw().unwrap();
        let r = ring_of_category(&raw).unwrap();
        let total: usize = r.groupoid().morphisms().iter().map(|g| r.component_dimension(g)).sum();
        assert_eq!(total, 9);
    }

    #[test]
    fn all_two_dimensional_is_not_free() {
        let c = cat(vec![vec![2], vec![2]], 1);
        let f = check_bridge(&c).unwrap();
        assert!(!f.all_functors_free && f.simple_artinian);
    }

    #[test]
    fn dims_zero_or_one_give_simple_division() {
        let c = cat(vec![vec![1], vec![0], vec![1]], 1);
        let f = check_bridge(&c).unwrap();
        assert!(f.division && f.simple_division);
        let d = cat(vec![vec![1, 0], vec![0, 1]], 2);
        let f = check_bridge(&d).unwrap();
        assert!(f.division && !f.simple_division);
        assert_eq!(d.components(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn one_object_field_and_disjoint_objects() {
        let r = ring_of_category(&cat(vec![vec![1]], 1).to_raw().unwrap()).unwrap();
        assert_eq!(r.support().len(), 1);
        let r = ring_of_category(&cat(vec![vec![1, 0], vec![0, 1]], 2).to_raw().unwrap()).unwrap();
        let supp: Vec<(ObjectId, ObjectId)> = r.support().iter().map(|g| (g.r(), g.d())).collect();
        assert_eq!(supp, vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn broken_associativity_is_rejected() {
        let raw = cat(vec![vec![2]], 1).to_raw().unwrap();
        let mut compose = raw.compose.clone();
        let t = compose.get_mut(&(0, 0, 0)).unwrap();
        // E01∘E01 = 0 becomes E00.
        t[1][1][0] = Field::Rational.one();
        let err = RawCategory::new(raw.objects.clone(), raw.field, raw.hom_dims.clone(), compose, raw.identities.clone()).unwrap_err();
        assert!(matches!(err.invariant(), Some(Invariant::Associativity) | Some(Invariant::Identity)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bridge_agrees(c in strategies::matrix_form_category()) {
            check_bridge(&c).unwrap();
        }

        #[test]
        fn ring_dimensions_match(c in strategies::matrix_form_category_within(3, 2, 2)) {
            let r = ring_of_category(&c.to_raw().unwrap()).unwrap();
            for g in r.groupoid().morphisms() {
                let (a, b) = (g.r() as usize - 1, g.d() as usize - 1);
                let expect: usize = (0..c.fields().len()).map(|j| c.multiplicity(j, a) * c.multiplicity(j, b)).sum();
                prop_assert_eq!(r.component_dimension(&g), expect);
            }
        }

        #[test]
        fn division_components_are_the_factors(c in strategies::matrix_form_category()) {
            let f = classify_category(&c);
            if f.division {
                let mut by_ring: Vec<Vec<usize>> = f.active_rings.iter()
                    .map(|&j| (0..c.objects().len()).filter(|&a| c.multiplicity(j, a) > 0).collect())
                    .collect();
                by_ring.sort();
                prop_assert_eq!(c.components(), by_ring);
            }
        }
    }
}
