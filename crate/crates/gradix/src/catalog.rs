//! Standard example rings and a parametric builder for random generation.

use std::collections::HashMap;
use std::sync::Arc;

use crate::division_ring::{matrix_form_inverse, GradedDivisionRing};
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroup, FiniteGroupoid, Morphism, ObjectId};
use crate::scalar::{Field, Scalar};

/// `𝔽₃` twisted `C₂` ring with `β(g,g) = 2`.
pub fn twisted_c2_f3() -> GradedDivisionRing {
    let f3 = Field::prime(3).unwrap();
    GradedDivisionRing::twisted_group_ring(f3, FiniteGroup::cyclic(2).unwrap(), |a, b| {
        if a == 1 && b == 1 { f3.from_i64(2) } else { f3.one() }
    })
    .unwrap()
}

/// `C₄` twisted by the carry cocycle with value 2.
pub fn twisted_c4(field: Field) -> GradedDivisionRing {
    let two = field.from_i64(2);
    GradedDivisionRing::twisted_group_ring(
        field,
        FiniteGroup::cyclic(4).unwrap(),
        crate::division_ring::cyclic_carry_factor(4, two),
    )
    .unwrap()
}

/// The two-block ring over `{1,2,3,4}²` with support `{1,2}² ∪ {3,4}²`.
pub fn two_block_ring(field: Field) -> GradedDivisionRing {
    let g = Arc::new(FiniteGroupoid::pair_groupoid(4).unwrap());
    let support: Vec<Morphism> = g
        .morphisms()
        .into_iter()
        .filter(|m| (m.r() <= 2) == (m.d() <= 2))
        .collect();
    GradedDivisionRing::build_with(g, field, support, |_, _| field.one()).unwrap()
}

/// The field `F` at object 1 of the pair groupoid on `{1,2}`.
pub fn field_at_one(field: Field) -> GradedDivisionRing {
    let g = Arc::new(FiniteGroupoid::pair_groupoid(2).unwrap());
    GradedDivisionRing::trivial_at(g, field, 1).unwrap()
}

/// One gr-prime block of a [`block_ring`]: objects, the subgroup generating
/// the support at the base object, an optional carry twist (cyclic groups
/// only) and per-object group elements for the connecting morphisms.
#[derive(Clone, Debug)]
pub struct BlockParams {
    pub objects: Vec<ObjectId>,
    pub subgroup_gens: Vec<usize>,
    pub twist: Option<Scalar>,
    pub sigma_elems: Vec<usize>,
}

/// A graded division ring over `objects × G × objects` assembled from
/// disjoint gr-prime blocks, each `M_{Δ}(H)(σ̄)` with `H` a (twisted) group
/// ring of a subgroup of `G` at the block's first object.
pub fn block_ring(field: Field, group: FiniteGroup, parts: &[BlockParams]) -> Result<GradedDivisionRing> {
    let mut objects: Vec<ObjectId> = parts.iter().flat_map(|p| p.objects.iter().copied()).collect();
    objects.sort_unstable();
    let n = group.order();
    let g = Arc::new(FiniteGroupoid::product_groupoid(objects, group.clone())?);
    let mut support = Vec::new();
    let mut factor = HashMap::new();
    for p in parts {
        let base = *p.objects.first().ok_or_else(|| Error::Argument("empty block".into()))?;
        let sub = group.generated_subgroup(&p.subgroup_gens);
        let h_support: Vec<Morphism> = sub.iter().map(|&x| g.morphism(base, x, base)).collect::<Result<_>>()?;
        let twist = p.twist.clone();
        let h = GradedDivisionRing::build_with(g.clone(), field, h_support, |a, b| match &twist {
            Some(c) if a.elem + b.elem >= n => c.clone(),
            _ => field.one(),
        })?;
        if p.sigma_elems.len() != p.objects.len() {
            return Err(Error::Argument("one σ element per object is required".into()));
        }
        let sigma: Vec<Morphism> = p
            .objects
            .iter()
            .zip(&p.sigma_elems)
            .map(|(&f, &x)| g.morphism(base, x, f))
            .collect::<Result<_>>()?;
        let d = matrix_form_inverse(&h, &sigma)?;
        support.extend(d.support().iter().copied());
        for (a, b, v) in d.factor_entries() {
            factor.insert((a, b), v);
        }
    }
    GradedDivisionRing::build(g, field, support, factor)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_rings_validate() {
        assert!(twisted_c2_f3().is_gr_prime());
        assert_eq!(twisted_c4(Field::Rational).support().len(), 4);
        assert_eq!(two_block_ring(Field::Rational).support().len(), 8);
        assert_eq!(field_at_one(Field::Rational).objects().len(), 1);
    }

    #[test]
    fn block_ring_with_two_parts() {
        let f5 = Field::prime(5).unwrap();
        let parts = vec![
            BlockParams { objects: vec![1, 2], subgroup_gens: vec![1], twist: Some(f5.from_i64(3)), sigma_elems: vec![0, 1] },
            BlockParams { objects: vec![3], subgroup_gens: vec![2], twist: None, sigma_elems: vec![3] },
        ];
        let d = block_ring(f5, FiniteGroup::cyclic(4).unwrap(), &parts).unwrap();
        assert_eq!(d.primality_classes(), vec![vec![1, 2], vec![3]]);
        assert_eq!(d.support().len(), 4 * 4 + 2);
    }
}
