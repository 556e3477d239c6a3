//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use gradix::catalog::{self, BlockParams};
use gradix::module::{GradedModule, HomogeneousVector};
use gradix::structure::{MatrixBlock, SemisimpleRingSpec};
use gradix::{Field, FiniteGroup, FiniteGroupoid, GradedDivisionRing, HomSpaceMatrix, Morphism, ObjectId, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn f3() -> Field {
    Field::prime(3).unwrap()
}

pub fn f5() -> Field {
    Field::prime(5).unwrap()
}

/// Rank of a dense matrix over a field by plain Gaussian elimination.
pub fn f_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].invert().unwrap();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// F-rank of a family of sparse vectors keyed by arbitrary coordinates.
fn sparse_rank<K: Ord + Clone>(field: Field, vectors: &[BTreeMap<K, Scalar>]) -> usize {
    let keys: Vec<K> = {
        let mut all: Vec<K> = vectors.iter().flat_map(|v| v.keys().cloned()).collect();
        all.sort();
        all.dedup();
        all
    };
    let rows = vectors
        .iter()
        .map(|v| keys.iter().map(|k| v.get(k).cloned().unwrap_or_else(|| field.zero())).collect())
        .collect();
    f_rank(rows)
}

/// `F`-dimension of each shifted copy `D(σ)` in a gr-prime ring.
pub fn copy_dimension(d: &GradedDivisionRing) -> usize {
    d.support().len() / d.objects().len()
}

/// `dim_F` of the image of `A`, spanned by the columns times every `u_δ`.
pub fn regular_image_dimension(a: &HomSpaceMatrix) -> usize {
    let d = a.ring();
    let one = d.field().one();
    let mut vectors = Vec::new();
    for j in 0..a.cols() {
        for delta in d.support() {
            let mut v = BTreeMap::new();
            for i in 0..a.rows() {
                let Some(g) = a.entry_degree(i, j) else { continue };
                if let Some((deg, c)) = d.mul_terms(&g, a.get(i, j), delta, &one) {
                    v.insert((i, deg), c);
                }
            }
            vectors.push(v);
        }
    }
    sparse_rank(d.field(), &vectors)
}

/// `dim_F` of the span of homogeneous vectors, via the same expansion.
pub fn regular_span_dimension(m: &GradedModule, vectors: &[HomogeneousVector]) -> usize {
    let d = m.ring();
    let one = d.field().one();
    let mut out = Vec::new();
    for v in vectors {
        for delta in d.support() {
            let mut w = BTreeMap::new();
            for (i, c) in v.entries().iter().enumerate() {
                let Some(g) = m.entry_degree(i, &v.degree()) else { continue };
                if let Some((deg, x)) = d.mul_terms(&g, c, delta, &one) {
                    w.insert((i, deg), x);
                }
            }
            out.push(w);
        }
    }
    sparse_rank(d.field(), &out)
}

/// The four rings used for random matrices: trivial `ℚ`, `𝔽₅[C₂]`, `𝔽₃`
/// twisted `C₂` and a two-object prime form over `ℚ[C₂]`.
pub fn rank_rings() -> Vec<(&'static str, Arc<GradedDivisionRing>)> {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let prime = catalog::block_ring(
        Field::Rational,
        c2.clone(),
        &[BlockParams { objects: vec![1, 2], subgroup_gens: vec![1], twist: None, sigma_elems: vec![0, 1] }],
    )
    .unwrap();
    vec![
        ("Q trivial", Arc::new(GradedDivisionRing::trivial(Field::Rational))),
        ("F5[C2]", Arc::new(GradedDivisionRing::group_ring(f5(), c2).unwrap())),
        ("F3 twisted C2", Arc::new(catalog::twisted_c2_f3())),
        ("two-object prime form", Arc::new(prime)),
    ]
}

pub fn random_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    loop {
        let c = field.from_i64(rng.gen_range(-4..=4));
        if !c.is_zero() {
            return c;
        }
    }
}

/// Morphisms `t ← s` with `t ∈ Γ'₀(D)`, all sharing one source object.
pub fn random_signature(rng: &mut ChaCha8Rng, d: &GradedDivisionRing, s: ObjectId, n: usize) -> Vec<Morphism> {
    let g = d.groupoid();
    let targets: Vec<ObjectId> = d.objects().iter().copied().collect();
    (0..n)
        .map(|_| {
            let t = *targets.choose(rng).unwrap();
            *g.hom_set(t, s).choose(rng).unwrap()
        })
        .collect()
}

fn random_filled(rng: &mut ChaCha8Rng, d: &Arc<GradedDivisionRing>, alpha: Vec<Morphism>, beta: Vec<Morphism>, density: f64) -> HomSpaceMatrix {
    let mut a = HomSpaceMatrix::zeros(d.clone(), alpha, beta);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.entry_degree(i, j).is_some() && rng.gen_bool(density) {
                let c = random_scalar(rng, d.field());
                a.set(i, j, c).unwrap();
            }
        }
    }
    a
}

/// A random homogeneous matrix; about a third are built as products
/// through a narrower middle signature so that low ranks are common.
pub fn random_matrix(rng: &mut ChaCha8Rng, d: &Arc<GradedDivisionRing>, rows: usize, cols: usize) -> HomSpaceMatrix {
    let objects = d.groupoid().objects();
    let s = *objects.iter().filter(|&&o| d.groupoid().block_of(o) == d.groupoid().block_of(*d.objects().first().unwrap())).collect::<Vec<_>>().choose(rng).unwrap();
    let alpha = random_signature(rng, d, *s, rows);
    let beta = random_signature(rng, d, *s, cols);
    if rng.gen_bool(0.35) {
        let k = rng.gen_range(0..=rows.min(cols));
        let mid = random_signature(rng, d, *s, k);
        let b = random_filled(rng, d, alpha, mid.clone(), 0.8);
        let c = random_filled(rng, d, mid, beta, 0.8);
        b.mul(&c).unwrap()
    } else {
        let density = rng.gen_range(0.3..0.9);
        random_filled(rng, d, alpha, beta, density)
    }
}

/// A random pseudo-free module with `pdim ≤ max` and a spanning family.
pub fn random_module(rng: &mut ChaCha8Rng, d: &Arc<GradedDivisionRing>, max: usize) -> (GradedModule, Vec<HomogeneousVector>) {
    let g = d.groupoid();
    let targets: Vec<ObjectId> = d.objects().iter().copied().collect();
    let n = rng.gen_range(1..=max);
    let shifts: Vec<Morphism> = (0..n)
        .map(|_| {
            let t = *targets.choose(rng).unwrap();
            let all: Vec<Morphism> = g.morphisms().into_iter().filter(|m| m.r() == t).collect();
            *all.choose(rng).unwrap()
        })
        .collect();
    let m = GradedModule::new(d.clone(), shifts).unwrap();
    let count = rng.gen_range(0..=n + 2);
    let all = g.morphisms();
    let mut vectors: Vec<HomogeneousVector> = Vec::new();
    while vectors.len() < count {
        if !vectors.is_empty() && rng.gen_bool(0.2) {
            let v = vectors.choose(rng).unwrap().clone();
            let c = random_scalar(rng, d.field());
            let scaled: Vec<Scalar> = v.entries().iter().map(|x| x * &c).collect();
            vectors.push(m.vector(v.degree(), scaled).unwrap());
            continue;
        }
        let tau = *all.choose(rng).unwrap();
        let entries: Vec<Scalar> = (0..n)
            .map(|i| if m.entry_degree(i, &tau).is_some() && rng.gen_bool(0.7) { random_scalar(rng, d.field()) } else { d.field().zero() })
            .collect();
        if entries.iter().all(Scalar::is_zero) {
            continue;
        }
        vectors.push(m.vector(tau, entries).unwrap());
    }
    (m, vectors)
}

/// Per-block parameters of a randomly generated semisimple ring.
#[derive(Clone, Debug)]
pub struct BlockPlan {
    pub class: Vec<ObjectId>,
    pub gens: Vec<usize>,
    pub twist: bool,
    /// `(element, source)` of each `σ_k = (e_j, x, s)`.
    pub sigma: Vec<(usize, ObjectId)>,
}

/// A random semisimple ring: a gr-division ring with up to three prime
/// classes over `objects × C_n`, and the block list read off its corners.
#[derive(Clone, Debug)]
pub struct RandomSemisimple {
    pub group: FiniteGroup,
    pub ring: Arc<GradedDivisionRing>,
    pub plans: Vec<BlockPlan>,
    pub spec: SemisimpleRingSpec,
}

pub fn random_semisimple(rng: &mut ChaCha8Rng) -> RandomSemisimple {
    let field = *[Field::Rational, f3(), f5()].choose(rng).unwrap();
    let n = rng.gen_range(1..=4);
    let group = FiniteGroup::cyclic(n).unwrap();
    let blocks = rng.gen_range(1..=3);
    let mut next: ObjectId = 1;
    let mut plans = Vec::new();
    for _ in 0..blocks {
        let width = rng.gen_range(1..=2);
        let class: Vec<ObjectId> = (next..next + width).collect();
        next += width;
        let gens = vec![rng.gen_range(0..n)];
        let twist = field != Field::Rational && rng.gen_bool(0.3);
        plans.push(BlockPlan { class, gens, twist, sigma: Vec::new() });
    }
    let objects: Vec<ObjectId> = (1..next).collect();
    for p in &mut plans {
        let k = rng.gen_range(1..=3);
        p.sigma = (0..k).map(|_| (rng.gen_range(0..n), *objects.choose(rng).unwrap())).collect();
    }
    let ring = Arc::new(build_ring(field, &group, &plans, rng));
    let spec = spec_from_plans(&ring, &plans);
    RandomSemisimple { group, ring, plans, spec }
}

fn build_ring(field: Field, group: &FiniteGroup, plans: &[BlockPlan], rng: &mut ChaCha8Rng) -> GradedDivisionRing {
    let n = group.order();
    let parts: Vec<BlockParams> = plans
        .iter()
        .map(|p| BlockParams {
            objects: p.class.clone(),
            subgroup_gens: p.gens.clone(),
            twist: p.twist.then(|| field.from_i64(2)),
            sigma_elems: std::iter::once(0).chain((1..p.class.len()).map(|_| rng.gen_range(0..n))).collect(),
        })
        .collect();
    catalog::block_ring(field, group.clone(), &parts).unwrap()
}

/// Blocks `M(D_{e_j})(σ_j)` with `D_{e_j}` the corner at the first object
/// of each prime class.
pub fn spec_from_plans(ring: &Arc<GradedDivisionRing>, plans: &[BlockPlan]) -> SemisimpleRingSpec {
    let g = ring.groupoid();
    let blocks = plans
        .iter()
        .map(|p| {
            let e = p.class[0];
            let corner = Arc::new(ring.corner(e).unwrap());
            let sigma = p.sigma.iter().map(|&(x, s)| g.morphism(e, x, s).unwrap()).collect();
            MatrixBlock::new(corner, sigma).unwrap()
        })
        .collect();
    SemisimpleRingSpec::new(blocks).unwrap()
}

/// Necessary condition for `M(D)(σ̄) ≅ M(D')(δ̄)` over `objects × G`:
/// equal sizes and supports, and some `t ∈ G` and bijection `π` with
/// matching sources and `t⁻¹·x'_{π(k)}·x_k⁻¹ ∈ S`.
pub fn shift_reachable(group: &FiniteGroup, a: &MatrixBlock, b: &MatrixBlock) -> bool {
    if a.size() != b.size() || a.ring().support().len() != b.ring().support().len() {
        return false;
    }
    let s: Vec<usize> = a.ring().support().iter().map(|m| m.elem).collect();
    let n = a.size();
    (0..group.order()).any(|t| {
        let ti = group.inv(t);
        let link = |k: usize, l: usize| {
            let (x, y) = (a.sigma()[k], b.sigma()[l]);
            x.d() == y.d() && s.contains(&group.mul(group.mul(ti, y.elem), group.inv(x.elem)))
        };
        perfect_matching(n, &link)
    })
}

fn perfect_matching(n: usize, link: &dyn Fn(usize, usize) -> bool) -> bool {
    fn augment(u: usize, n: usize, link: &dyn Fn(usize, usize) -> bool, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for v in 0..n {
            if link(u, v) && !seen[v] {
                seen[v] = true;
                if owner[v].is_none_or(|w| augment(w, n, link, seen, owner)) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; n];
    (0..n).all(|u| augment(u, n, link, &mut vec![false; n], &mut owner))
}

/// A random matrix-form category with at most the given sizes.
pub fn random_category(rng: &mut ChaCha8Rng, objects: usize, rings: usize, dim: usize) -> gradix::category::MatrixFormCategory {
    let n = rng.gen_range(1..=objects);
    let k = rng.gen_range(1..=rings);
    let fields: Vec<Field> = (0..k).map(|_| *[Field::Rational, f3(), f5()].choose(rng).unwrap()).collect();
    let mut dims: Vec<Vec<usize>> = (0..n).map(|_| (0..k).map(|_| rng.gen_range(0..=dim)).collect()).collect();
    if dims.iter().flatten().all(|&x| x == 0) {
        dims[0][0] = 1;
    }
    let names = (0..n).map(|a| format!("A{}", a + 1)).collect();
    gradix::category::MatrixFormCategory::new(names, fields, dims).unwrap()
}

pub fn groupoid_of(spec: &SemisimpleRingSpec) -> &Arc<FiniteGroupoid> {
    spec.groupoid()
}
