//! The ten acceptance criteria, each reported on one PASS/FAIL line.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use common::*;
use gradix::category::{category_to_semisimple_spec, check_bridge, classify_category, MatrixFormCategory};
use gradix::linalg::{invert_square, rank_all, solve};
use gradix::spec_io::{self, CategorySpec};
use gradix::structure::{
    classify, corner_structure, is_pseudo_basis, iso_blocks, iso_semisimple, simple_dimension, wedderburn_decompose,
    IsoCertificate, IsoOutcome, MatrixBlock, SemisimpleRingSpec, DEFAULT_COBOUNDARY_BOUND,
};
use gradix::{
    catalog, Field, FiniteGroup, FiniteGroupoid, GradedDivisionRing, HomSpaceMatrix, HomogeneousMatrix, Invariant,
    MatrixRingSignature, Morphism,
};
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: gradix::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rank_theorem() -> Outcome {
    let rings = rank_rings();
    let mut rng = rng(1);
    let mut by_rank = [0usize; 6];
    for t in 0..500 {
        let (name, d) = &rings[t % rings.len()];
        let (rows, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let a = random_matrix(&mut rng, d, rows, cols);
        let r = lib(rank_all(&a, 5))?;
        let rho_i = r.rho_i.ok_or("minor search was skipped")?;
        ensure!(r.rho_r == r.rho_c && r.rho_c == r.rho && r.rho == rho_i, "{name} #{t}: ranks {} {} {} {rho_i}", r.rho_r, r.rho_c, r.rho);
        let oracle = regular_image_dimension(&a);
        ensure!(oracle == r.rho * copy_dimension(d), "{name} #{t}: rank {} but dim_F image {oracle}", r.rho);
        by_rank[r.rho] += 1;
    }
    Ok(format!("500 matrices, rank histogram {by_rank:?}, F-regular oracle agrees"))
}

fn inverse_symmetry() -> Outcome {
    let rings = rank_rings();
    let mut rng = rng(2);
    let (mut invertible, mut singular) = (0, 0);
    for t in 0..200 {
        let (name, d) = &rings[t % rings.len()];
        let n = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, d, n, n);
        let rank = lib(rank_all(&a, 5))?.rho;
        let two_sided = lib(invert_square(&a))?;
        let id = HomSpaceMatrix::identity(d.clone(), a.alpha().to_vec());
        let all: Vec<usize> = (0..n).collect();
        let mut right = HomSpaceMatrix::zeros(d.clone(), a.beta().to_vec(), a.alpha().to_vec());
        let mut found = true;
        for k in 0..n {
            match lib(solve(&a, &id.submatrix(&all, &[k])))? {
                Some(x) => {
                    for i in 0..n {
                        lib(right.set(i, k, x.get(i, 0).clone()))?;
                    }
                }
                None => found = false,
            }
        }
        if found {
            ensure!(lib(a.mul(&right))? == id, "{name} #{t}: column solutions do not give AX = I");
            let id_beta = HomSpaceMatrix::identity(d.clone(), a.beta().to_vec());
            ensure!(lib(right.mul(&a))? == id_beta, "{name} #{t}: AX = I but XA ≠ I");
            ensure!(rank == n, "{name} #{t}: right inverse exists at rank {rank} < {n}");
            ensure!(two_sided.as_ref() == Some(&right), "{name} #{t}: the two inverses differ");
            invertible += 1;
        } else {
            ensure!(rank < n, "{name} #{t}: full rank {rank} without a right inverse");
            ensure!(two_sided.is_none(), "{name} #{t}: inverse reported at rank {rank} < {n}");
            singular += 1;
        }
    }
    Ok(format!("200 square matrices: {invertible} invertible with both sides exact, {singular} singular with rank < n"))
}

fn pdim_additivity() -> Outcome {
    let rings = rank_rings();
    let mut rng = rng(3);
    let mut total_sub = 0;
    for t in 0..200 {
        let (name, d) = &rings[t % rings.len()];
        let (m, vs) = random_module(&mut rng, d, 6);
        let sub = lib(m.pdim_of_span(&vs))?;
        let quotient = lib(m.quotient(&vs))?.pdim();
        ensure!(sub + quotient == m.pdim(), "{name} #{t}: {sub} + {quotient} ≠ {}", m.pdim());
        let oracle = regular_span_dimension(&m, &vs);
        ensure!(oracle == sub * copy_dimension(d), "{name} #{t}: pdim {sub} but dim_F span {oracle}");
        ensure!(lib(m.basis_from_generators(&vs))?.len() == sub, "{name} #{t}: basis size differs from pdim");
        total_sub += sub;
    }
    Ok(format!("200 spans (total span pdim {total_sub}), pdim(N) + pdim(M/N) = pdim(M) exactly"))
}

fn two_block_fixture() -> Outcome {
    let d = catalog::two_block_ring(Field::Rational);
    let (reparsed, _) = lib(spec_io::parse_ring(&spec_io::ring_json(&d)))?;
    ensure!(*reparsed == d, "the ring does not survive validation unchanged");
    ensure!(!d.is_gr_prime(), "ring reported gr-prime");
    ensure!(d.primality_classes() == vec![vec![1, 2], vec![3, 4]], "classes {:?}", d.primality_classes());
    let blocks = d.decompose_prime();
    ensure!(blocks.len() == 2, "{} blocks", blocks.len());
    ensure!(blocks.iter().all(GradedDivisionRing::is_gr_prime), "a block is not gr-prime");
    let g = d.groupoid().clone();
    for gamma in g.morphisms() {
        let parts: usize = blocks.iter().map(|b| b.in_support(&gamma) as usize).sum();
        ensure!(parts == d.in_support(&gamma) as usize, "component {gamma} has dimension {parts} in the product");
    }
    for b in &blocks {
        for (x, y, c) in b.factor_entries() {
            ensure!(d.factor(&x, &y) == Some(&c), "factor at ({x},{y}) differs");
        }
    }
    let one = d.field().one();
    for x in blocks[0].support() {
        for y in blocks[1].support() {
            ensure!(d.mul_terms(x, &one, y, &one).is_none() && d.mul_terms(y, &one, x, &one).is_none(), "IJ ≠ 0 at {x}, {y}");
        }
    }
    let ring = Arc::new(d);
    let sigma = ring.objects().iter().map(|&e| g.identity(e).map(|m| vec![m])).collect::<gradix::Result<_>>();
    let w = lib(wedderburn_decompose(&lib(MatrixRingSignature::new(ring.clone(), lib(sigma)?))?))?;
    lib(w.audit())?;
    let c = lib(classify(w.spec()))?;
    ensure!(w.spec().blocks().len() == 2 && !c.gr_simple && c.gr_division, "identity family: {c}");
    for b in w.spec().blocks() {
        let one_block = lib(SemisimpleRingSpec::new(vec![b.clone()]))?;
        ensure!(lib(classify(&one_block))?.gr_simple, "a block is not gr-simple");
    }
    Ok("not gr-prime, classes {1,2} and {3,4}, 2 gr-simple blocks with IJ = 0 reproduce every component".into())
}

fn pfm_fixture() -> Outcome {
    let v = lib(spec_io::load_json(&fixtures().join("pfm_m3.ring.json")))?;
    let (spec, _) = lib(spec_io::parse_semisimple(&v))?;
    let c = lib(classify(&spec))?;
    let witness = c.division_witness.clone().unwrap_or_default();
    ensure!(c.pfm && !c.gr_division && witness.contains("E11"), "M₃ example: {c}");
    let k = Arc::new(GradedDivisionRing::trivial(Field::Rational));
    let e = lib(k.groupoid().identity(0))?;
    let m2 = lib(wedderburn_decompose(&lib(MatrixRingSignature::from_sigma(k, &[e, e]))?))?;
    let c2 = lib(classify(m2.spec()))?;
    ensure!(!c2.pfm, "M₂(K)(e) reported pfm");
    let sig = spec.blocks()[0].signature().clone();
    let unit = vec![vec![lib(HomogeneousMatrix::identity_element(&sig, 1))?]];
    let gens = vec![unit];
    let sdim = lib(simple_dimension(&spec, 1, &gens))?;
    ensure!(sdim == 2, "simple dimension {sdim}");
    ensure!(lib(is_pseudo_basis(&spec, 1, &gens, &gens))?, "the generator is not a pseudo-basis");
    ensure!(!c.ipbn, "IPBN reported for the pfm example");
    Ok(format!("pfm = true, gr-division = false ({witness}); M₂(K)(e) not pfm; R(ε₁₁) has sdim 2 with a 1-element pseudo-basis"))
}

fn apply_check(cert: &IsoCertificate, a: &MatrixBlock, b: &MatrixBlock) -> Result<(), String> {
    lib(cert.verify(a, b))?;
    let g = a.ring().groupoid();
    let one = a.ring().field().one();
    let mut gens = Vec::new();
    for i in 0..a.size() {
        for j in 0..a.size() {
            for h in a.ring().support() {
                let gamma = g.compose(&g.compose(&g.inverse(&a.sigma()[i]), h).unwrap(), &a.sigma()[j]).unwrap();
                gens.push(lib(HomogeneousMatrix::new(a.signature(), gamma, [(i, j, one.clone())]))?);
            }
        }
    }
    for x in &gens {
        for y in &gens {
            let lhs = lib(cert.apply(a, b, &lib(x.mul(y))?))?;
            let rhs = lib(lib(cert.apply(a, b, x))?.mul(&lib(cert.apply(a, b, y))?))?;
            ensure!(lhs == rhs, "Φ(xy) ≠ Φ(x)Φ(y)");
        }
    }
    for (i, s) in a.sigma().iter().enumerate() {
        let expected = g.compose(&g.compose(&cert.tau, &cert.shifts[i]).unwrap(), s);
        ensure!(expected == Some(b.sigma()[cert.pi[i]]), "δ_π(i) ≠ τ s_i σ_i at {i}");
    }
    Ok(())
}

/// A presentation of `rs` as one graded matrix ring: each `σ_jk` is moved
/// to a random object of its prime class and indices are merged into sets.
fn scrambled_presentation(rng: &mut rand_chacha::ChaCha8Rng, rs: &RandomSemisimple) -> Arc<MatrixRingSignature> {
    let g = rs.ring.groupoid();
    let mut pieces: Vec<(usize, Morphism)> = Vec::new();
    for (j, p) in rs.plans.iter().enumerate() {
        for &(x, s) in &p.sigma {
            let e = p.class[0];
            let sigma = g.morphism(e, x, s).unwrap();
            let f = *p.class.choose(rng).unwrap();
            let c = *rs.ring.support_between(e, f).choose(rng).unwrap();
            pieces.push((j, g.compose(&g.inverse(&c), &sigma).unwrap()));
        }
    }
    pieces.shuffle(rng);
    let mut sets: Vec<Vec<(usize, Morphism)>> = Vec::new();
    for (j, m) in pieces {
        let slot = sets
            .iter()
            .position(|set| rng.gen_bool(0.5) && set.iter().all(|(k, o)| *k != j && o.d() != m.d() && o.r() != m.r()));
        match slot {
            Some(i) => sets[i].push((j, m)),
            None => sets.push(vec![(j, m)]),
        }
    }
    let sigma = sets.into_iter().map(|s| s.into_iter().map(|(_, m)| m).collect()).collect();
    MatrixRingSignature::new(rs.ring.clone(), sigma).unwrap()
}

fn replace_block(spec: &SemisimpleRingSpec, j: usize, block: MatrixBlock) -> SemisimpleRingSpec {
    let mut blocks = spec.blocks().to_vec();
    blocks[j] = block;
    SemisimpleRingSpec::new(blocks).unwrap()
}

fn wedderburn_round_trip() -> Outcome {
    let mut rng = rng(6);
    let (mut size, mut support, mut shift, mut skipped) = (0, 0, 0, 0);
    for t in 0..50 {
        let rs = random_semisimple(&mut rng);
        let sig = scrambled_presentation(&mut rng, &rs);
        let w = lib(wedderburn_decompose(&sig))?;
        lib(w.audit())?;
        let decomposed = w.spec();
        match lib(iso_semisimple(decomposed, &rs.spec, DEFAULT_COBOUNDARY_BOUND))? {
            IsoOutcome::Isomorphic(certs) => {
                for (i, (j, cert)) in certs.iter().enumerate() {
                    apply_check(cert, &decomposed.blocks()[i], &rs.spec.blocks()[*j]).map_err(|e| format!("#{t}: {e}"))?;
                }
            }
            other => return Err(format!("#{t}: decomposition not recognised: {other:?}")),
        }
        let g = rs.ring.groupoid();
        let reject = |pert: &SemisimpleRingSpec, what: &str| -> Result<(), String> {
            match lib(iso_semisimple(decomposed, pert, DEFAULT_COBOUNDARY_BOUND))? {
                IsoOutcome::NotIsomorphic(_) => Ok(()),
                other => Err(format!("#{t}: {what} perturbation not rejected: {other:?}")),
            }
        };
        let j = rng.gen_range(0..rs.plans.len());
        let block = &rs.spec.blocks()[j];
        let e = block.base();
        let mut sigma = block.sigma().to_vec();
        if sigma.len() >= 2 {
            sigma.pop();
        } else {
            sigma.push(sigma[0]);
        }
        reject(&replace_block(&rs.spec, j, lib(MatrixBlock::new(block.ring().clone(), sigma))?), "size")?;
        size += 1;

        let order = block.ring().support().len();
        let other_gen = (0..rs.group.order()).find(|&x| rs.group.generated_subgroup(&[x]).len() != order);
        if let Some(x) = other_gen {
            let supp: Vec<Morphism> = rs.group.generated_subgroup(&[x]).into_iter().map(|y| g.morphism(e, y, e).unwrap()).collect();
            let h = lib(GradedDivisionRing::build_with(g.clone(), rs.ring.field(), supp, |_, _| rs.ring.field().one()))?;
            reject(&replace_block(&rs.spec, j, lib(MatrixBlock::new(Arc::new(h), block.sigma().to_vec()))?), "support")?;
            support += 1;
        } else {
            skipped += 1;
        }

        let order = rs.group.order();
        let mut moves: Vec<(usize, usize, usize)> = (0..rs.plans.len())
            .flat_map(|j| (0..rs.spec.blocks()[j].size()).flat_map(move |k| (1..order).map(move |y| (j, k, y))))
            .filter(|&(j, _, _)| rs.spec.blocks()[j].size() >= 2)
            .collect();
        moves.shuffle(&mut rng);
        let mut done = false;
        for (j, k, y) in moves {
            let block = &rs.spec.blocks()[j];
            let mut sigma = block.sigma().to_vec();
            let s = sigma[k];
            sigma[k] = g.morphism(s.r(), rs.group.mul(y, s.elem), s.d()).unwrap();
            let moved = lib(MatrixBlock::new(block.ring().clone(), sigma))?;
            if rs.spec.blocks().iter().all(|b| !shift_reachable(&rs.group, b, &moved)) {
                reject(&replace_block(&rs.spec, j, moved), "shift")?;
                shift += 1;
                done = true;
                break;
            }
        }
        if !done {
            skipped += 1;
        }
    }
    ensure!(size >= 10 && support >= 10 && shift >= 10, "too few perturbations exercised: {size}/{support}/{shift}");
    Ok(format!("50/50 round trips certified; rejected {size} size, {support} support and {shift} shift perturbations ({skipped} not applicable)"))
}

fn matrix_ring_iso() -> Outcome {
    let mut rng = rng(7);
    let (mut positive, mut negative, mut identity_pi) = (0, 0, 0);
    for t in 0..30 {
        let rs = random_semisimple(&mut rng);
        let g = rs.ring.groupoid();
        for a in rs.spec.blocks() {
            let d = a.ring();
            let e = a.base();
            let c = *d.support().iter().collect::<Vec<_>>().choose(&mut rng).unwrap();
            let translated: Vec<Morphism> = a.sigma().iter().map(|s| g.compose(c, s).unwrap()).collect();
            let b = lib(MatrixBlock::new(d.clone(), translated))?;
            match lib(iso_blocks(a, &b, DEFAULT_COBOUNDARY_BOUND))? {
                IsoOutcome::Isomorphic(cert) => {
                    apply_check(&cert, a, &b).map_err(|x| format!("#{t} support translate: {x}"))?;
                    if cert.pi.iter().enumerate().all(|(i, &p)| i == p) {
                        ensure!(d.in_support(&cert.tau), "#{t}: τ = {} outside supp for a support translate", cert.tau);
                        identity_pi += 1;
                    }
                    positive += 1;
                }
                other => return Err(format!("#{t}: support translate not isomorphic: {other:?}")),
            }

            let f = *g.objects().choose(&mut rng).unwrap();
            let y = rng.gen_range(0..rs.group.order());
            let mover = g.morphism(f, y, e).unwrap();
            let b = lib(MatrixBlock::new(
                Arc::new(lib(d.conjugate(&mover))?),
                a.sigma().iter().map(|s| g.compose(&mover, s).unwrap()).collect(),
            ))?;
            match lib(iso_blocks(a, &b, DEFAULT_COBOUNDARY_BOUND))? {
                IsoOutcome::Isomorphic(cert) => {
                    apply_check(&cert, a, &b).map_err(|x| format!("#{t} groupoid translate: {x}"))?;
                    if cert.pi.iter().enumerate().all(|(i, &p)| i == p) {
                        let link = g.compose(&g.inverse(&cert.tau), &mover).unwrap();
                        ensure!(d.in_support(&link), "#{t}: τ = {} is not the translating morphism up to supp", cert.tau);
                        identity_pi += 1;
                    }
                    positive += 1;
                }
                other => return Err(format!("#{t}: groupoid translate not isomorphic: {other:?}")),
            }

            let objects = g.objects();
            if objects.len() >= 2 {
                let k = rng.gen_range(0..a.size());
                let s = a.sigma()[k];
                let other = *objects.iter().filter(|&&o| o != s.d()).collect::<Vec<_>>().choose(&mut rng).unwrap();
                let mut sigma = a.sigma().to_vec();
                sigma[k] = g.morphism(s.r(), s.elem, *other).unwrap();
                let b = lib(MatrixBlock::new(d.clone(), sigma))?;
                ensure!(b.object_counts() != a.object_counts(), "#{t}: counts unchanged");
                match lib(iso_blocks(a, &b, DEFAULT_COBOUNDARY_BOUND))? {
                    IsoOutcome::NotIsomorphic(_) => negative += 1,
                    other => return Err(format!("#{t}: mismatched counts not rejected: {other:?}")),
                }
            }
        }
    }
    Ok(format!("{positive} translated blocks certified ({identity_pi} with the expected τ checked), {negative} count mismatches rejected"))
}

fn corner_structure_fixture() -> Outcome {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let gpd = Arc::new(lib(FiniteGroupoid::group_as_groupoid(c2.clone()))?);
    let k = Arc::new(lib(GradedDivisionRing::trivial_at(gpd.clone(), Field::Rational, 0))?);
    let (e, x) = (lib(gpd.morphism(0, 0, 0))?, lib(gpd.morphism(0, 1, 0))?);
    let apart = lib(corner_structure(&lib(MatrixBlock::new(k.clone(), vec![e, x]))?, 0))?;
    let together = lib(corner_structure(&lib(MatrixBlock::new(k, vec![e, e]))?, 0))?;
    let group_ring = Arc::new(lib(GradedDivisionRing::group_ring(Field::Rational, c2))?);
    let linked = lib(corner_structure(&lib(MatrixBlock::new(group_ring, vec![e, x]))?, 0))?;
    ensure!(apart == vec![1, 1], "τσ⁻¹ outside supp gives {apart:?}");
    ensure!(together == vec![2], "σ = τ gives {together:?}");
    ensure!(linked == vec![2], "τσ⁻¹ ∈ supp gives {linked:?}");
    Ok("corner sizes [1,1] when τσ⁻¹ ∉ supp, [2] when τσ⁻¹ ∈ supp".into())
}

fn load_category(name: &str) -> Result<MatrixFormCategory, String> {
    match lib(spec_io::parse_category(&lib(spec_io::load_json(&fixtures().join(name)))?))? {
        CategorySpec::MatrixForm(c) => Ok(c),
        CategorySpec::Raw(_) => Err(format!("{name} is not in matrix form")),
    }
}

fn category_bridge() -> Outcome {
    let mut rng = rng(9);
    let mut counts = [0usize; 4];
    for t in 0..100 {
        let c = random_category(&mut rng, 4, 3, 3);
        let flags = classify_category(&c);
        let ring = lib(classify(&lib(category_to_semisimple_spec(&c))?))?;
        let pairs = [
            ("semisimple", flags.semisimple, ring.gr_semisimple),
            ("simple artinian", flags.simple_artinian, ring.gr_simple),
            ("all functors free", flags.all_functors_free, ring.pfm),
            ("division", flags.division, ring.gr_division),
            ("simple division", flags.simple_division, ring.gr_simple && ring.gr_division),
        ];
        for (name, cat, r) in pairs {
            ensure!(cat == r, "#{t} {:?}: {name} is {cat} for the category and {r} for the ring", c.dims());
        }
        lib(check_bridge(&c))?;
        for (i, v) in [flags.simple_artinian, flags.all_functors_free, flags.division, flags.simple_division].into_iter().enumerate() {
            counts[i] += v as usize;
        }
    }
    let sa = classify_category(&load_category("simple_artinian.category.json")?);
    ensure!(sa.simple_artinian && !sa.division, "simple artinian fixture: {sa:?}");
    let sd = classify_category(&load_category("simple_division.category.json")?);
    ensure!(sd.division && !sd.simple_artinian && !sd.simple_division, "division fixture: {sd:?}");
    let one = MatrixFormCategory::new(vec!["A".into(), "B".into()], vec![Field::Rational], vec![vec![1], vec![1]]).unwrap();
    ensure!(classify_category(&one).simple_division, "one division ring with unit multiplicities is not simple division");
    let two = MatrixFormCategory::new(vec!["A".into()], vec![Field::Rational, Field::Rational], vec![vec![1, 1]]).unwrap();
    ensure!(!classify_category(&two).simple_artinian, "two division rings reported simple artinian");
    Ok(format!("100 categories agree flag for flag (simple/free/division/simple-division true in {counts:?}); fixtures give the stated verdicts"))
}

fn axiom_validators() -> Outcome {
    let dir = fixtures().join("broken");
    let mut files: Vec<_> = std::fs::read_dir(&dir).map_err(|e| e.to_string())?.map(|e| e.unwrap().path()).collect();
    files.sort();
    ensure!(files.len() == 20, "{} broken files", files.len());
    for path in &files {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let expected: &[Invariant] = if name.starts_with("associativity") {
            &[Invariant::Associativity]
        } else if name.starts_with("cocycle") {
            &[Invariant::Cocycle]
        } else if name.starts_with("d_uniqueness") {
            &[Invariant::DUniqueness]
        } else if name.starts_with("r_uniqueness") {
            &[Invariant::RUniqueness]
        } else if name.starts_with("support_closure") {
            &[Invariant::SupportCompositionClosure, Invariant::SupportInverseClosure, Invariant::SupportIdentity]
        } else {
            return Err(format!("{name}: unknown axiom prefix"));
        };
        let v = lib(spec_io::load_json(path))?;
        let err = if name.ends_with(".groupoid.json") {
            spec_io::parse_groupoid(&v).err()
        } else if name.ends_with(".category.json") {
            spec_io::parse_category(&v).err()
        } else if v.get("D").is_some() {
            spec_io::parse_matrix_ring(&v).err()
        } else {
            spec_io::parse_ring(&v).err()
        };
        let err = err.ok_or_else(|| format!("{name} was accepted"))?;
        let inv = err.invariant().ok_or_else(|| format!("{name}: {err} names no invariant"))?;
        ensure!(expected.contains(&inv), "{name}: expected {expected:?}, got {inv}");
        ensure!(err.to_string().contains(inv.name()), "{name}: message {err} omits {inv}");
    }
    Ok("20/20 broken fixtures rejected, each naming its violated invariant".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("rank theorem", rank_theorem),
        ("inverse symmetry", inverse_symmetry),
        ("pdim additivity", pdim_additivity),
        ("two-block division ring", two_block_fixture),
        ("pfm fixture", pfm_fixture),
        ("Wedderburn round trip", wedderburn_round_trip),
        ("matrix-ring isomorphism", matrix_ring_iso),
        ("corner structure", corner_structure_fixture),
        ("category bridge", category_bridge),
        ("axiom validators", axiom_validators),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS [{secs:.1}s] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{secs:.1}s] {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
