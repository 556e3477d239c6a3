//! Gr-semisimple rings as finite products of graded matrix rings over
//! one-object gr-prime division rings: classification predicates, the
//! Wedderburn decomposition of `M_I(D)(Σ̄)` and isomorphism certificates.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::division_ring::GradedDivisionRing;
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, Morphism, ObjectId};
use crate::linalg::row_reduce;
use crate::matrix::{HomSpaceMatrix, HomogeneousMatrix, MatrixRingSignature};
use crate::module::GradedModule;
use crate::par;
use crate::scalar::{Field, Scalar};

/// Default bound on `|supp|` for the exhaustive coboundary search.
pub const DEFAULT_COBOUNDARY_BOUND: usize = 12;

/// One factor `M_K(D)(σ̄)` with `D` gr-prime and supported at the single
/// object `e`, and every `σ_k ∈ eΓ`.
#[derive(Clone, Debug)]
pub struct MatrixBlock {
    ring: Arc<GradedDivisionRing>,
    base: ObjectId,
    sigma: Vec<Morphism>,
    sig: Arc<MatrixRingSignature>,
}

impl MatrixBlock {
    pub fn new(ring: Arc<GradedDivisionRing>, sigma: Vec<Morphism>) -> Result<MatrixBlock> {
        if ring.objects().len() != 1 {
            return Err(Error::Precondition("a block ring must be supported at exactly one object".into()));
        }
        let base = *ring.objects().iter().next().unwrap();
        if sigma.is_empty() {
            return Err(Error::Argument("a block needs at least one index".into()));
        }
        for s in &sigma {
            ring.groupoid().check(s)?;
            if s.r() != base {
                return Err(Error::Precondition(format!("σ = {s} does not start at the block object {base}")));
            }
        }
        let sig = MatrixRingSignature::from_sigma(ring.clone(), &sigma)?;
        Ok(MatrixBlock { ring, base, sigma, sig })
    }

    pub fn ring(&self) -> &Arc<GradedDivisionRing> {
        &self.ring
    }

    pub fn base(&self) -> ObjectId {
        self.base
    }

    pub fn sigma(&self) -> &[Morphism] {
        &self.sigma
    }

    pub fn signature(&self) -> &Arc<MatrixRingSignature> {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.sigma.len()
    }

    /// `K_f = {k : d(σ_k) = f}`.
    pub fn k_set(&self, f: ObjectId) -> Vec<usize> {
        (0..self.sigma.len()).filter(|&k| self.sigma[k].d() == f).collect()
    }

    /// `|K_f|` for every object with `K_f ≠ ∅`.
    pub fn object_counts(&self) -> BTreeMap<ObjectId, usize> {
        let mut out = BTreeMap::new();
        for s in &self.sigma {
            *out.entry(s.d()).or_insert(0) += 1;
        }
        out
    }

    /// Multiset of the corner partition sizes at every object.
    fn corner_profile(&self) -> BTreeMap<ObjectId, Vec<usize>> {
        self.object_counts()
            .keys()
            .map(|&f| {
                let mut v = corner_structure(self, f).expect("object is in Γ'₀");
                v.sort_unstable();
                (f, v)
            })
            .collect()
    }
}

/// `R = Π_j M_{K_j}(D_j)(σ̄_j)` over a common groupoid.
#[derive(Clone, Debug)]
pub struct SemisimpleRingSpec {
    blocks: Vec<MatrixBlock>,
}

impl SemisimpleRingSpec {
    pub fn new(blocks: Vec<MatrixBlock>) -> Result<SemisimpleRingSpec> {
        let first = blocks.first().ok_or_else(|| Error::Argument("a semisimple ring needs at least one block".into()))?;
        for b in &blocks[1..] {
            if !same_groupoid(b.ring.groupoid(), first.ring.groupoid()) {
                return Err(Error::Argument("blocks are graded by different groupoids".into()));
            }
        }
        Ok(SemisimpleRingSpec { blocks })
    }

    pub fn blocks(&self) -> &[MatrixBlock] {
        &self.blocks
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        self.blocks[0].ring.groupoid()
    }

    /// `J_e = {j : K_{j,e} ≠ ∅}` for every object of `Γ'₀(R)`.
    pub fn summability(&self) -> BTreeMap<ObjectId, Vec<usize>> {
        let mut out: BTreeMap<ObjectId, Vec<usize>> = BTreeMap::new();
        for (j, b) in self.blocks.iter().enumerate() {
            for f in b.object_counts().keys() {
                out.entry(*f).or_default().push(j);
            }
        }
        out
    }

    /// `Γ'₀(R)`.
    pub fn unit_objects(&self) -> BTreeSet<ObjectId> {
        self.summability().into_keys().collect()
    }

    /// `dim_F R_γ`.
    pub fn component_dimension(&self, gamma: &Morphism) -> usize {
        self.blocks.iter().map(|b| b.sig.component_dimension(gamma)).sum()
    }

    /// `Σ_j |K_{j,f}|`: simple dimension of `𝕀_f R`.
    pub fn unit_simple_dimension(&self, f: ObjectId) -> usize {
        self.blocks.iter().map(|b| b.k_set(f).len()).sum()
    }
}

fn same_groupoid(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Two pseudo-free modules `⊕ P(β)^{a_β}` and `⊕ P(β)^{b_β}` with
/// `P(β) = 𝕀_{r(β)}R(β)`, isomorphic but of different pseudo-rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpbnWitness {
    pub left: Vec<(Morphism, u64)>,
    pub right: Vec<(Morphism, u64)>,
}

impl IpbnWitness {
    pub fn left_size(&self) -> u64 {
        self.left.iter().map(|(_, k)| k).sum()
    }

    pub fn right_size(&self) -> u64 {
        self.right.iter().map(|(_, k)| k).sum()
    }
}

/// Predicates of a gr-semisimple ring together with checked witnesses for
/// the ones that fail.
#[derive(Clone, Debug)]
pub struct Classification {
    pub gr_semisimple: bool,
    pub gamma0_artinian: bool,
    pub gr_simple: bool,
    pub pfm: bool,
    pub ipbn: bool,
    pub gr_division: bool,
    /// For each block, the object `f_j` with `|K_{j,f_j}| = 1` and
    /// `J_{f_j} = {j}`, when one exists.
    pub pfm_objects: Vec<Option<ObjectId>>,
    pub pfm_witness: Option<String>,
    pub division_witness: Option<String>,
    pub ipbn_witness: Option<IpbnWitness>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |name: &str, v: bool, w: &Option<String>| match (v, w) {
            (false, Some(w)) => format!("{name}: false (witness: {w})"),
            _ => format!("{name}: {v}"),
        };
        writeln!(
            f,
            "gr-semisimple: {}, Γ₀-artinian: {}, gr-simple: {}",
            self.gr_semisimple, self.gamma0_artinian, self.gr_simple
        )?;
        writeln!(
            f,
            "{}, {}",
            flag("pfm", self.pfm, &self.pfm_witness),
            flag("gr-division", self.gr_division, &self.division_witness)
        )?;
        let ipbn_w = self.ipbn_witness.as_ref().map(|w| {
            format!("isomorphic pseudo-free modules of pseudo-rank {} and {}", w.left_size(), w.right_size())
        });
        write!(f, "{}", flag("ipbn", self.ipbn, &ipbn_w))
    }
}

/// Rational matrix through the trivially graded `ℚ`, so that the graded
/// eliminator can be reused.
fn rational_matrix(rows: &[Vec<i64>], cols: usize) -> HomSpaceMatrix {
    let ring = Arc::new(GradedDivisionRing::trivial(Field::Rational));
    let id = ring.groupoid().identity(0).unwrap();
    let entries = rows.iter().map(|r| r.iter().map(|&v| Field::Rational.from_i64(v)).collect()).collect();
    HomSpaceMatrix::new(ring, vec![id; rows.len()], vec![id; cols], entries).expect("trivially graded")
}

fn rational_parts(s: &Scalar) -> (num_bigint::BigInt, num_bigint::BigInt) {
    match s {
        Scalar::Rational(q) => (q.numer().clone(), q.denom().clone()),
        Scalar::Prime { .. } => unreachable!("rational matrix"),
    }
}

/// Rows `β` (with `r(β) ∈ Γ'₀(R)`) and the multiplicity of every simple
/// class in `P(β)`. A class is the block index and the `supp(D_j)`-orbit
/// representative of `σ_{jk}β`.
fn multiplicity_table(spec: &SemisimpleRingSpec) -> (Vec<Morphism>, Vec<Vec<i64>>) {
    let g = spec.groupoid();
    let units = spec.unit_objects();
    let rows: Vec<Morphism> = g.morphisms().into_iter().filter(|b| units.contains(&b.r())).collect();
    let mut classes: BTreeMap<(usize, Morphism), usize> = BTreeMap::new();
    let mut entries: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); rows.len()];
    for (r, beta) in rows.iter().enumerate() {
        for (j, b) in spec.blocks.iter().enumerate() {
            for k in b.k_set(beta.r()) {
                let m = g.compose(&b.sigma[k], beta).unwrap();
                let rep = b.ring.support().iter().map(|h| g.compose(h, &m).unwrap()).min().unwrap();
                let next = classes.len();
                let c = *classes.entry((j, rep)).or_insert(next);
                *entries[r].entry(c).or_insert(0) += 1;
            }
        }
    }
    let ncols = classes.len();
    let table = entries.into_iter().map(|e| (0..ncols).map(|c| e.get(&c).copied().unwrap_or(0)).collect()).collect();
    (rows, table)
}

/// Exact IPBN test. Two pseudo-free modules are isomorphic iff their simple
/// multiplicity vectors agree, so IPBN fails iff some integer `z` with
/// `Vᵀz = 0` has `Σz ≠ 0`, that is iff `V·w = 1` has no rational solution.
pub fn ipbn(spec: &SemisimpleRingSpec) -> Option<IpbnWitness> {
    let (rows, v) = multiplicity_table(spec);
    let ncols = v.first().map_or(0, |r| r.len());
    let vt: Vec<Vec<i64>> = (0..ncols).map(|c| v.iter().map(|r| r[c]).collect()).collect();
    let red = row_reduce(&rational_matrix(&vt, rows.len()));
    let e = red.echelon.entries();
    let pivots = &red.pivots;
    let free: Vec<usize> = (0..rows.len()).filter(|c| !pivots.contains(c)).collect();
    for f in free {
        let mut z = vec![Field::Rational.zero(); rows.len()];
        z[f] = Field::Rational.one();
        for (r, &p) in pivots.iter().enumerate() {
            z[p] = -&e[r][f];
        }
        let total = z.iter().fold(Field::Rational.zero(), |acc, x| &acc + x);
        if total.is_zero() {
            continue;
        }
        let lcm = z.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(&rational_parts(x).1));
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (beta, x) in rows.iter().zip(&z) {
            let (n, d) = rational_parts(x);
            let k = &n * &lcm / d;
            let mag = k.abs().to_u64().expect("small multiplicities");
            if k.is_positive() {
                left.push((*beta, mag));
            } else if k.is_negative() {
                right.push((*beta, mag));
            }
        }
        return Some(IpbnWitness { left, right });
    }
    None
}

/// Bounded cross-check of [`ipbn`]: searches multisets of at most `bound`
/// modules `P(β)` for two of different size with equal multiplicities.
pub fn ipbn_search(spec: &SemisimpleRingSpec, bound: usize) -> Option<IpbnWitness> {
    let (rows, v) = multiplicity_table(spec);
    let mut seen: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    let mut best: Option<IpbnWitness> = None;
    let to_witness = |a: &[usize], b: &[usize]| {
        let count = |m: &[usize]| {
            let mut c: BTreeMap<Morphism, u64> = BTreeMap::new();
            for &i in m {
                *c.entry(rows[i]).or_insert(0) += 1;
            }
            c.into_iter().collect()
        };
        IpbnWitness { left: count(a), right: count(b) }
    };
    fn walk(
        start: usize,
        depth: usize,
        bound: usize,
        cur: &mut Vec<usize>,
        acc: &mut Vec<i64>,
        v: &[Vec<i64>],
        visit: &mut dyn FnMut(&[usize], &[i64]) -> bool,
    ) -> bool {
        if depth > 0 && visit(cur, acc) {
            return true;
        }
        if depth == bound {
            return false;
        }
        for i in start..v.len() {
            cur.push(i);
            for (a, x) in acc.iter_mut().zip(&v[i]) {
                *a += x;
            }
            let stop = walk(i, depth + 1, bound, cur, acc, v, visit);
            for (a, x) in acc.iter_mut().zip(&v[i]) {
                *a -= x;
            }
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    let ncols = v.first().map_or(0, |r| r.len());
    let mut visit = |m: &[usize], vec: &[i64]| match seen.get(vec) {
        Some(prev) if prev.len() != m.len() => {
            best = Some(to_witness(prev, m));
            true
        }
        Some(_) => false,
        None => {
            seen.insert(vec.to_vec(), m.to_vec());
            false
        }
    };
    walk(0, 0, bound, &mut Vec::new(), &mut vec![0; ncols], &v, &mut visit);
    best
}

fn right_inverse_fails(block: &MatrixBlock, k: usize) -> Result<bool> {
    let e = block.sigma[k].d();
    let unit = HomogeneousMatrix::matrix_unit(&block.sig, k, k, block.base)?;
    let rect = unit.rectangular_block(e, e)?;
    Ok(row_reduce(&rect).rank() < rect.rows())
}

pub fn classify(spec: &SemisimpleRingSpec) -> Result<Classification> {
    let summ = spec.summability();
    let multi = spec.blocks.len() > 1;
    let label = |j: usize| if multi { format!(" of block {}", j + 1) } else { String::new() };

    let pfm_objects: Vec<Option<ObjectId>> = spec
        .blocks
        .iter()
        .enumerate()
        .map(|(j, b)| {
            b.object_counts().into_iter().find(|&(f, n)| n == 1 && summ[&f] == [j]).map(|(f, _)| f)
        })
        .collect();
    let pfm = pfm_objects.iter().all(Option::is_some);
    let pfm_witness = pfm_objects
        .iter()
        .position(Option::is_none)
        .map(|j| format!("E11{} generates a simple module that is not pseudo-free", label(j)));

    let mut division_witness = None;
    'outer: for (&f, js) in &summ {
        if js.len() > 1 {
            division_witness = Some(format!(
                "𝕀_{f}{} has no right inverse (block {} also meets object {f})",
                label(js[0]),
                js[1] + 1
            ));
            break;
        }
        for &j in js {
            let ks = spec.blocks[j].k_set(f);
            if ks.len() > 1 {
                let k = ks[0];
                if !right_inverse_fails(&spec.blocks[j], k)? {
                    return Err(Error::TheoremViolation(format!("E{0}{0} unexpectedly has a right inverse", k + 1)));
                }
                division_witness = Some(format!("E{0}{0}{1} has no right inverse", k + 1, label(j)));
                break 'outer;
            }
        }
    }
    let gr_division = division_witness.is_none();
    let ipbn_witness = ipbn(spec);
    let ipbn = ipbn_witness.is_none();
    if gr_division != (pfm && ipbn) {
        return Err(Error::TheoremViolation(format!(
            "gr-division = {gr_division} but pfm = {pfm} and ipbn = {ipbn}"
        )));
    }
    Ok(Classification {
        gr_semisimple: true,
        gamma0_artinian: true,
        gr_simple: spec.blocks.len() == 1,
        pfm,
        ipbn,
        gr_division,
        pfm_objects,
        pfm_witness,
        division_witness,
        ipbn_witness,
    })
}

/// Partition of `I_e` by `i ~ j ⟺ σ_iσ_j⁻¹ ∈ supp(D)`, as class sizes in
/// order of first index: the structure of the corner `𝕀_e R 𝕀_e`.
pub fn corner_structure(block: &MatrixBlock, e: ObjectId) -> Result<Vec<usize>> {
    let ks = block.k_set(e);
    if ks.is_empty() {
        return Err(Error::Argument(format!("object {e} is not in Γ'₀ of the block")));
    }
    let g = block.ring.groupoid();
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for &i in &ks {
        let hit = reps.iter_mut().find(|(r, _)| {
            let x = g.compose(&block.sigma[i], &g.inverse(&block.sigma[*r])).unwrap();
            block.ring.in_support(&x)
        });
        match hit {
            Some((_, n)) => *n += 1,
            None => reps.push((i, 1)),
        }
    }
    Ok(reps.into_iter().map(|(_, n)| n).collect())
}

/// A homogeneous element of the free right `R`-module `R^m`:
/// `parts[c][j]` is the block-`j` component of coordinate `c`.
pub type FreeElement = Vec<Vec<HomogeneousMatrix>>;

fn element_degree(x: &FreeElement) -> Result<Option<Morphism>> {
    let mut deg = None;
    for m in x.iter().flatten() {
        if let Some(d) = m.degree() {
            match deg {
                None => deg = Some(d),
                Some(o) if o != d => return Err(Error::Argument(format!("components of degrees {o} and {d}"))),
                _ => {}
            }
        }
    }
    Ok(deg)
}

/// Simple dimension of the right submodule of `R^m` generated by `gens`:
/// per block, the pseudo-dimension of the span of all generator columns.
pub fn simple_dimension(spec: &SemisimpleRingSpec, ambient: usize, gens: &[FreeElement]) -> Result<usize> {
    if !classify(spec)?.pfm {
        return Err(Error::Precondition("simple dimension is only defined for pfm rings".into()));
    }
    let nb = spec.blocks.len();
    for x in gens {
        if x.len() != ambient || x.iter().any(|c| c.len() != nb) {
            return Err(Error::Argument(format!("expected {ambient} coordinates of {nb} block components")));
        }
    }
    let mut total = 0;
    for (j, b) in spec.blocks.iter().enumerate() {
        let g = b.ring.groupoid();
        let n = b.size();
        let shifts: Vec<Morphism> = (0..ambient).flat_map(|_| b.sigma.iter().copied()).collect();
        let module = GradedModule::new(b.ring.clone(), shifts)?;
        let mut columns = Vec::new();
        for x in gens {
            let Some(gamma) = element_degree(x)? else { continue };
            for l in b.k_set(gamma.d()) {
                let tau = g.compose(&gamma, &g.inverse(&b.sigma[l])).unwrap();
                let entries = (0..ambient).flat_map(|c| (0..n).map(move |k| (c, k))).map(|(c, k)| x[c][j].coeff(k, l)).collect();
                columns.push(module.vector(tau, entries)?);
            }
        }
        total += module.pdim_of_span(&columns)?;
    }
    Ok(total)
}

/// Whether `candidates` is a pseudo-basis of the submodule generated by
/// `gens`: the spans agree and `⊕ 𝕀_{d(γ_i)}R(γ_i⁻¹) → M` is injective,
/// which for semisimple modules means equal simple dimensions.
pub fn is_pseudo_basis(spec: &SemisimpleRingSpec, ambient: usize, gens: &[FreeElement], candidates: &[FreeElement]) -> Result<bool> {
    let span = simple_dimension(spec, ambient, gens)?;
    let cand = simple_dimension(spec, ambient, candidates)?;
    let both: Vec<FreeElement> = gens.iter().chain(candidates).cloned().collect();
    if simple_dimension(spec, ambient, &both)? != span || cand != span {
        return Ok(false);
    }
    let mut free = 0;
    for x in candidates {
        match element_degree(x)? {
            None => return Ok(false),
            Some(gamma) => free += spec.unit_simple_dimension(gamma.d()),
        }
    }
    Ok(free == span)
}

/// The blocks of `M_I(D)(Σ̄)` indexed by pairs `(i, σ)`, `σ ∈ Σ_i`, grouped
/// by the primality class of `r(σ)`, with connecting degrees `γ_{(i,σ)}`.
#[derive(Clone, Debug)]
pub struct WedderburnDecomposition {
    source: Arc<MatrixRingSignature>,
    spec: SemisimpleRingSpec,
    pairs: Vec<Vec<(usize, Morphism)>>,
    connectors: Vec<Vec<Morphism>>,
}

impl WedderburnDecomposition {
    pub fn spec(&self) -> &SemisimpleRingSpec {
        &self.spec
    }

    pub fn pairs(&self) -> &[Vec<(usize, Morphism)>] {
        &self.pairs
    }

    pub fn connectors(&self) -> &[Vec<Morphism>] {
        &self.connectors
    }

    fn locate(&self, i: usize, s: &Morphism) -> (usize, usize) {
        self.pairs
            .iter()
            .enumerate()
            .find_map(|(b, ps)| ps.iter().position(|p| p.0 == i && p.1 == *s).map(|q| (b, q)))
            .expect("every pair is placed")
    }

    /// The image of a homogeneous matrix in each block.
    pub fn map(&self, a: &HomogeneousMatrix) -> Result<Vec<HomogeneousMatrix>> {
        let sig = &self.source;
        let d = sig.ring();
        let g = d.groupoid();
        let Some(gamma) = a.degree() else {
            return Ok(self.spec.blocks.iter().map(|b| HomogeneousMatrix::zero(&b.sig)).collect());
        };
        let mut per_block: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); self.spec.blocks.len()];
        for (&(i, j), c) in a.entries() {
            let s = sig.sigma_at(i, gamma.r()).unwrap();
            let t = sig.sigma_at(j, gamma.d()).unwrap();
            let x = sig.entry_degree(i, j, &gamma).unwrap();
            let (b, p) = self.locate(i, &s);
            let (b2, q) = self.locate(j, &t);
            debug_assert_eq!(b, b2);
            let gp = self.connectors[b][p];
            let gq = self.connectors[b][q];
            let one = d.field().one();
            let (gqi, cqi) = d.invert_term(&gq, &one)?;
            let (y, cy) = d.mul_terms(&gp, &one, &x, c).expect("composable in the support");
            let (_, cz) = d.mul_terms(&y, &cy, &gqi, &cqi).expect("composable in the support");
            debug_assert!(g.compose(&y, &gqi).is_some());
            per_block[b].push((p, q, cz));
        }
        self.spec
            .blocks
            .iter()
            .zip(per_block)
            .map(|(b, entries)| HomogeneousMatrix::new(&b.sig, gamma, entries))
            .collect()
    }

    /// `dim R_γ = Σ_ξ dim (R_ξ)_γ` for every `γ`.
    pub fn audit(&self) -> Result<()> {
        for gamma in self.source.ring().groupoid().morphisms() {
            let lhs = self.source.component_dimension(&gamma);
            let rhs = self.spec.component_dimension(&gamma);
            if lhs != rhs {
                return Err(Error::TheoremViolation(format!("dimension audit fails at {gamma}: {lhs} vs {rhs}")));
            }
        }
        Ok(())
    }
}

pub fn wedderburn_decompose(sig: &Arc<MatrixRingSignature>) -> Result<WedderburnDecomposition> {
    let d = sig.ring();
    let g = d.groupoid();
    let classes = d.primality_classes();
    let class_of = |o: ObjectId| classes.iter().position(|c| c.contains(&o)).expect("target lies in Γ'₀");
    let mut grouped: BTreeMap<usize, Vec<(usize, Morphism)>> = BTreeMap::new();
    let mut order: Vec<usize> = Vec::new();
    for (i, set) in sig.sigma().iter().enumerate() {
        for s in set {
            let c = class_of(s.r());
            if !grouped.contains_key(&c) {
                order.push(c);
            }
            grouped.entry(c).or_default().push((i, *s));
        }
    }
    let mut blocks = Vec::new();
    let mut pairs = Vec::new();
    let mut connectors = Vec::new();
    for c in order {
        let ps = grouped.remove(&c).unwrap();
        let e = ps[0].1.r();
        let h = Arc::new(d.corner(e)?);
        let conn: Vec<Morphism> = ps
            .iter()
            .map(|(_, s)| d.support_between(e, s.r()).into_iter().min().expect("same primality class"))
            .collect();
        let sigma: Vec<Morphism> = ps.iter().zip(&conn).map(|((_, s), c)| g.compose(c, s).unwrap()).collect();
        blocks.push(MatrixBlock::new(h, sigma)?);
        pairs.push(ps);
        connectors.push(conn);
    }
    let out = WedderburnDecomposition { source: sig.clone(), spec: SemisimpleRingSpec::new(blocks)?, pairs, connectors };
    out.audit()?;
    Ok(out)
}

/// Data of a graded isomorphism `M_K(D)(σ̄) → M_{K'}(D')(δ̄)`:
/// `δ_{π(i)} = τ s_i σ_i` with `s_i ∈ supp(D)`, and
/// `u_g ↦ c(τgτ⁻¹) u'_{τgτ⁻¹}` identifying `D` with `D'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub pi: Vec<usize>,
    pub tau: Morphism,
    pub shifts: Vec<Morphism>,
    pub coeffs: BTreeMap<Morphism, Scalar>,
}

impl IsoCertificate {
    /// Image of a homogeneous matrix of the source block.
    pub fn apply(&self, from: &MatrixBlock, to: &MatrixBlock, a: &HomogeneousMatrix) -> Result<HomogeneousMatrix> {
        let Some(gamma) = a.degree() else { return Ok(HomogeneousMatrix::zero(&to.sig)) };
        let d = &from.ring;
        let g = d.groupoid();
        let one = d.field().one();
        let ti = g.inverse(&self.tau);
        let mut entries = Vec::new();
        for (&(i, j), c) in a.entries() {
            let x = from.sig.entry_degree(i, j, &gamma).unwrap();
            let (sji, cji) = d.invert_term(&self.shifts[j], &one)?;
            let (y, cy) = d.mul_terms(&self.shifts[i], &one, &x, c).expect("in the support");
            let (z, cz) = d.mul_terms(&y, &cy, &sji, &cji).expect("in the support");
            let w = g.compose(&g.compose(&self.tau, &z).unwrap(), &ti).unwrap();
            entries.push((self.pi[i], self.pi[j], &cz * &self.coeffs[&w]));
        }
        HomogeneousMatrix::new(&to.sig, gamma, entries)
    }

    /// Checks bijectivity on degrees and multiplicativity on all pairs of
    /// basis elements `u_h E_ij`.
    pub fn verify(&self, from: &MatrixBlock, to: &MatrixBlock) -> Result<()> {
        let g = from.ring.groupoid();
        let one = from.ring.field().one();
        let mut basis = Vec::new();
        for i in 0..from.size() {
            for j in 0..from.size() {
                for h in from.ring.support() {
                    let gamma = g.compose(&g.compose(&g.inverse(&from.sigma[i]), h).unwrap(), &from.sigma[j]).unwrap();
                    basis.push(HomogeneousMatrix::new(&from.sig, gamma, [(i, j, one.clone())])?);
                }
            }
        }
        let images: Vec<HomogeneousMatrix> = basis.iter().map(|b| self.apply(from, to, b)).collect::<Result<_>>()?;
        if images.iter().any(HomogeneousMatrix::is_zero) {
            return Err(Error::TheoremViolation("a basis element maps to zero".into()));
        }
        let n = basis.len();
        let bad = par::find_first(0..n * n, |t| {
            let (a, b) = (t / n, t % n);
            let lhs = basis[a].mul(&basis[b]).and_then(|p| self.apply(from, to, &p));
            let rhs = images[a].mul(&images[b]);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => None,
                _ => Some(t),
            }
        });
        match bad {
            Some(_) => Err(Error::TheoremViolation("certificate map is not multiplicative".into())),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome<C> {
    Isomorphic(C),
    NotIsomorphic(String),
    Inconclusive(String),
}

impl<C> IsoOutcome<C> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

/// Perfect matching of the left side by augmenting paths.
fn perfect_matching(n: usize, m: usize, adj: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    if n != m {
        return None;
    }
    fn augment(u: usize, adj: &dyn Fn(usize, usize) -> bool, m: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for v in 0..m {
            if adj(u, v) && !seen[v] {
                seen[v] = true;
                if owner[v].is_none_or(|w| augment(w, adj, m, seen, owner)) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; m];
    for u in 0..n {
        let mut seen = vec![false; m];
        if !augment(u, &adj, m, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut pi = vec![0; n];
    for (v, u) in owner.into_iter().enumerate() {
        pi[u.unwrap()] = v;
    }
    Some(pi)
}

enum Coboundary {
    Found(BTreeMap<Morphism, Scalar>),
    None,
    TooLarge,
}

/// A normalized `c` on `supp(a)` with `β_a(g,h)·c(gh) = c(g)c(h)·β_b(g,h)`,
/// given `supp(a) = supp(b)`, a group at one object.
fn find_coboundary(a: &GradedDivisionRing, b: &GradedDivisionRing, bound: usize) -> Result<Coboundary> {
    let g = a.groupoid();
    let field = a.field();
    let supp: Vec<Morphism> = a.support().iter().copied().collect();
    let omega = |x: &Morphism, y: &Morphism| -> Scalar {
        &a.factor(x, y).cloned().unwrap() * &b.factor(x, y).unwrap().invert().unwrap()
    };
    if supp.iter().all(|x| supp.iter().all(|y| omega(x, y).is_one())) {
        return Ok(Coboundary::Found(supp.iter().map(|x| (*x, field.one())).collect()));
    }
    if supp.len() > bound {
        return Ok(Coboundary::TooLarge);
    }
    let mut gens: Vec<Morphism> = Vec::new();
    let mut reached: BTreeSet<Morphism> = BTreeSet::from([supp[0]]);
    let closure = |gens: &[Morphism]| {
        let mut seen = BTreeSet::from([g.identity(supp[0].r()).unwrap()]);
        let mut frontier: Vec<Morphism> = seen.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for s in gens {
                let y = g.compose(&x, s).unwrap();
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen
    };
    for x in &supp {
        if !reached.contains(x) {
            gens.push(*x);
            reached = closure(&gens);
        }
    }
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    for s in &gens {
        let mut prod = field.one();
        let mut power = *s;
        let mut n = 1u64;
        while !power.is_identity() {
            prod = &prod * &omega(s, &power);
            power = g.compose(s, &power).unwrap();
            n += 1;
        }
        let roots = field.nth_roots(&prod, n);
        if roots.is_empty() {
            return Ok(Coboundary::None);
        }
        candidates.push(roots);
    }
    let e = g.identity(supp[0].r()).unwrap();
    let combos: Vec<Vec<Scalar>> = if candidates.is_empty() {
        vec![Vec::new()]
    } else {
        candidates.into_iter().multi_cartesian_product().collect()
    };
    for choice in combos {
        let mut c: BTreeMap<Morphism, Scalar> = BTreeMap::from([(e, field.one())]);
        let mut frontier = vec![e];
        let mut ok = true;
        while let Some(x) = frontier.pop() {
            for (s, cs) in gens.iter().zip(&choice) {
                let y = g.compose(&x, s).unwrap();
                let val = &(&c[&x] * cs) * &omega(&x, s).invert().unwrap();
                match c.get(&y) {
                    Some(old) if *old != val => ok = false,
                    Some(_) => {}
                    None => {
                        c.insert(y, val);
                        frontier.push(y);
                    }
                }
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        let valid = supp.iter().all(|x| {
            supp.iter().all(|y| {
                let xy = g.compose(x, y).unwrap();
                &c[x] * &c[y] == &omega(x, y) * &c[&xy]
            })
        });
        if valid {
            return Ok(Coboundary::Found(c));
        }
    }
    Ok(Coboundary::None)
}

/// Decides `M_K(D)(σ̄) ≅ M_{K'}(D')(δ̄)` as graded rings. The search runs
/// over `τ ∈ e'Γe`; for each it needs `D' ≅ τDτ⁻¹` (a coboundary search,
/// exhaustive up to `bound` support elements) and a bijection `π` with
/// `τ⁻¹δ_{π(i)}σ_i⁻¹ ∈ supp(D)`.
pub fn iso_blocks(a: &MatrixBlock, b: &MatrixBlock, bound: usize) -> Result<IsoOutcome<IsoCertificate>> {
    use IsoOutcome::*;
    if !same_groupoid(a.ring.groupoid(), b.ring.groupoid()) {
        return Err(Error::Argument("blocks are graded by different groupoids".into()));
    }
    if a.ring.field() != b.ring.field() {
        return Ok(NotIsomorphic("different base fields".into()));
    }
    if a.size() != b.size() {
        return Ok(NotIsomorphic(format!("index sets of size {} and {}", a.size(), b.size())));
    }
    if a.ring.support().len() != b.ring.support().len() {
        return Ok(NotIsomorphic("division rings of different dimension".into()));
    }
    if a.object_counts() != b.object_counts() {
        return Ok(NotIsomorphic("different |K_f| profiles".into()));
    }
    if a.corner_profile() != b.corner_profile() {
        return Ok(NotIsomorphic("different corner structures".into()));
    }
    let g = a.ring.groupoid();
    let mut inconclusive = None;
    for tau in g.hom_set(b.base, a.base) {
        let conj = a.ring.conjugate(&tau)?;
        if conj.support() != b.ring.support() {
            continue;
        }
        let coeffs = match find_coboundary(&conj, &b.ring, bound)? {
            Coboundary::Found(c) => c,
            Coboundary::None => continue,
            Coboundary::TooLarge => {
                inconclusive = Some(format!("coboundary search skipped: |supp| = {} exceeds the bound {bound}", conj.support().len()));
                continue;
            }
        };
        let ti = g.inverse(&tau);
        let link = |i: usize, k: usize| -> Option<Morphism> {
            let s = g.compose(&g.compose(&ti, &b.sigma[k])?, &g.inverse(&a.sigma[i]))?;
            a.ring.in_support(&s).then_some(s)
        };
        let Some(pi) = perfect_matching(a.size(), b.size(), |i, k| link(i, k).is_some()) else { continue };
        let shifts = (0..a.size()).map(|i| link(i, pi[i]).unwrap()).collect();
        let cert = IsoCertificate { pi, tau, shifts, coeffs };
        cert.verify(a, b)?;
        return Ok(Isomorphic(cert));
    }
    Ok(match inconclusive {
        Some(why) => Inconclusive(why),
        None => NotIsomorphic("no τ admits both a coefficient match and an index bijection".into()),
    })
}

/// Block-level isomorphism of two semisimple rings: a perfect matching of
/// blocks along certified block isomorphisms.
pub fn iso_semisimple(
    a: &SemisimpleRingSpec,
    b: &SemisimpleRingSpec,
    bound: usize,
) -> Result<IsoOutcome<Vec<(usize, IsoCertificate)>>> {
    use IsoOutcome::*;
    if !same_groupoid(a.groupoid(), b.groupoid()) {
        return Err(Error::Argument("rings are graded by different groupoids".into()));
    }
    let (n, m) = (a.blocks.len(), b.blocks.len());
    if n != m {
        return Ok(NotIsomorphic(format!("{n} blocks against {m}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    let results = par::map(pairs, |(i, j)| iso_blocks(&a.blocks[i], &b.blocks[j], bound));
    let results: Vec<IsoOutcome<IsoCertificate>> = results.into_iter().collect::<Result<_>>()?;
    let at = |i: usize, j: usize| &results[i * m + j];
    match perfect_matching(n, m, |i, j| at(i, j).is_isomorphic()) {
        Some(pi) => Ok(Isomorphic(
            pi.iter()
                .enumerate()
                .map(|(i, &j)| match at(i, j) {
                    Isomorphic(c) => (j, c.clone()),
                    _ => unreachable!(),
                })
                .collect(),
        )),
        None if results.iter().any(|r| matches!(r, Inconclusive(_))) => {
            Ok(Inconclusive("some block pairs could not be decided".into()))
        }
        None => Ok(NotIsomorphic("no matching of blocks along isomorphisms".into())),
    }
}
