//! One function per verb. Each returns a text report and a JSON payload.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use gradix::category::{check_bridge, ring_of_category, FlagReport};
use gradix::linalg::{invert_square, rank_all, solve, DEFAULT_RANK_BOUND};
use gradix::spec_io::{self, CategorySpec};
use gradix::structure::{
    classify, iso_semisimple, wedderburn_decompose, IsoOutcome, SemisimpleRingSpec, WedderburnDecomposition,
    DEFAULT_COBOUNDARY_BOUND,
};
use gradix::{Error, GradedDivisionRing, HomogeneousMatrix, MatrixRingSignature, Morphism, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{CategoryAction, Command};

pub struct Output {
    pub text: String,
    pub json: Value,
}

pub fn dispatch(cmd: &Command, seed: u64, env_bound: Option<usize>) -> (&'static str, Result<Output>) {
    match cmd {
        Command::Validate { file } => ("validate", validate(file, seed)),
        Command::Rank { file, rank_bound } => ("rank", rank(file, rank_bound.or(env_bound).unwrap_or(DEFAULT_RANK_BOUND))),
        Command::Invert { file } => ("invert", invert(file)),
        Command::Solve { a, b } => ("solve", solve_cmd(a, b)),
        Command::Classify { file } => ("classify", classify_cmd(file)),
        Command::Decompose { file } => ("decompose", decompose(file)),
        Command::Iso { a, b, coboundary_bound } => {
            ("iso", iso(a, b, coboundary_bound.or(env_bound).unwrap_or(DEFAULT_COBOUNDARY_BOUND)))
        }
        Command::Module { file } => ("module", module(file)),
        Command::Category { action: CategoryAction::Classify { file } } => ("category classify", category_classify(file)),
        Command::Category { action: CategoryAction::ToRing { file } } => ("category to-ring", category_to_ring(file)),
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Kind {
    Groupoid,
    Ring,
    MatrixRing,
    Semisimple,
    Matrix,
    Module,
    Category,
}

fn detect(v: &Value) -> Result<Kind> {
    let has = |k: &str| v.get(k).is_some();
    let kind = if has("D") && has("alpha") {
        Kind::Matrix
    } else if has("D") && has("shifts") {
        Kind::Module
    } else if has("D") && has("sigma") {
        Kind::MatrixRing
    } else if has("division_rings") || v.get("raw").is_some_and(|r| r.get("hom_dims").is_some()) {
        Kind::Category
    } else if has("support") || has("group_ring") || has("twisted_group_ring") || has("prime_block") {
        Kind::Ring
    } else if v.get("blocks").and_then(|b| b.get(0)).is_some_and(|b| b.get("D").is_some()) {
        Kind::Semisimple
    } else if has("blocks") || has("raw") || has("pair") || has("group") {
        Kind::Groupoid
    } else {
        return Err(Error::Parse("cannot tell what kind of spec this file holds".into()));
    };
    Ok(kind)
}

fn objects_text(objs: impl IntoIterator<Item = u32>) -> String {
    let v: Vec<String> = objs.into_iter().map(|o| o.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn plural(n: usize, word: &str) -> String {
    match (n, word.strip_suffix("ss")) {
        (1, _) => format!("{n} {word}"),
        (_, Some(stem)) => format!("{n} {stem}sses"),
        _ => format!("{n} {word}s"),
    }
}

fn ring_summary(d: &GradedDivisionRing) -> (String, Value) {
    let classes = d.primality_classes();
    let text = format!(
        "graded division ring: field {}, |supp| = {}, Γ'₀ = {}, gr-prime: {} ({})",
        d.field(),
        d.support().len(),
        objects_text(d.objects().iter().copied()),
        d.is_gr_prime(),
        plural(classes.len(), "primality class"),
    );
    let json = json!({
        "field": spec_io::field_json(d.field()),
        "support_size": d.support().len(),
        "objects": d.objects(),
        "gr_prime": d.is_gr_prime(),
        "primality_classes": classes,
    });
    (text, json)
}

/// Sampled associativity check on random homogeneous elements.
fn sample_associativity(sig: &Arc<MatrixRingSignature>, seed: u64, samples: usize) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let supp = sig.support();
    if supp.is_empty() {
        return Ok(0);
    }
    let n = sig.size();
    let field = sig.field();
    let random = |rng: &mut ChaCha8Rng| -> Result<HomogeneousMatrix> {
        let gamma = supp[rng.gen_range(0..supp.len())];
        let entries: Vec<_> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| sig.entry_degree(i, j, &gamma).is_some())
            .map(|(i, j)| (i, j, field.from_i64(rng.gen_range(-3..=3))))
            .collect();
        HomogeneousMatrix::new(sig, gamma, entries)
    };
    for _ in 0..samples {
        let (a, b, c) = (random(&mut rng)?, random(&mut rng)?, random(&mut rng)?);
        if a.mul(&b)?.mul(&c)? != a.mul(&b.mul(&c)?)? {
            return Err(Error::TheoremViolation("matrix ring product is not associative on a sample".into()));
        }
    }
    Ok(samples)
}

fn validate(path: &Path, seed: u64) -> Result<Output> {
    let v = spec_io::load_json(path)?;
    let kind = detect(&v)?;
    let (text, json) = match kind {
        Kind::Groupoid => {
            let ctx = spec_io::parse_groupoid(&v)?;
            let g = &ctx.groupoid;
            let text = format!(
                "groupoid: {}, {}",
                plural(g.blocks().len(), "block"),
                plural(g.num_objects(), "object")
            );
            (text, json!({"kind": "groupoid", "blocks": g.blocks().len(), "objects": g.num_objects(), "morphisms": g.num_morphisms()}))
        }
        Kind::Ring => {
            let (d, _) = spec_io::parse_ring(&v)?;
            let (text, mut json) = ring_summary(&d);
            json["kind"] = json!("ring");
            (text, json)
        }
        Kind::MatrixRing => {
            let (sig, _) = spec_io::parse_matrix_ring(&v)?;
            let checked = sample_associativity(&sig, seed, 32)?;
            let text = format!(
                "graded matrix ring: size {}, {} Σ, {} nonzero degrees, sampled associativity: {} triples (seed {seed})",
                sig.size(),
                if sig.is_singleton() { "singleton" } else { "set-valued" },
                sig.support().len(),
                checked
            );
            (text, json!({"kind": "matrix_ring", "size": sig.size(), "support_size": sig.support().len(), "sampled_triples": checked, "seed": seed}))
        }
        Kind::Semisimple => {
            let (spec, _) = spec_io::parse_semisimple(&v)?;
            let text = format!("semisimple ring: {}", plural(spec.blocks().len(), "block"));
            (text, json!({"kind": "semisimple", "blocks": spec.blocks().len()}))
        }
        Kind::Matrix => {
            let a = spec_io::parse_homspace(&v)?;
            let text = format!("graded matrix: {}×{}, hom-space dimension {}", a.rows(), a.cols(), a.space_dimension());
            (text, json!({"kind": "matrix", "rows": a.rows(), "cols": a.cols(), "space_dimension": a.space_dimension()}))
        }
        Kind::Module => {
            let (m, vs, _) = spec_io::parse_module(&v)?;
            let text = format!("pseudo-free module: pdim {}, {}", m.pdim(), plural(vs.len(), "vector"));
            (text, json!({"kind": "module", "pdim": m.pdim(), "vectors": vs.len()}))
        }
        Kind::Category => match spec_io::parse_category(&v)? {
            CategorySpec::MatrixForm(c) => (
                format!("matrix-form category: {}, {}", plural(c.objects().len(), "object"), plural(c.fields().len(), "division ring")),
                json!({"kind": "category", "form": "matrix", "objects": c.objects()}),
            ),
            CategorySpec::Raw(c) => (
                format!("category: {}, axioms hold", plural(c.objects().len(), "object")),
                json!({"kind": "category", "form": "raw", "objects": c.objects()}),
            ),
        },
    };
    Ok(Output { text, json })
}

fn rank(path: &Path, bound: usize) -> Result<Output> {
    let a = spec_io::parse_homspace(&spec_io::load_json(path)?)?;
    let r = rank_all(&a, bound)?;
    let mut text = match r.rho_i {
        Some(ri) => format!("rho_r=rho_c=rho=rho_i={ri}\n"),
        None => format!("rho_r=rho_c=rho={} (rho_i skipped: size exceeds bound {bound})\n", r.rho_r),
    };
    writeln!(text, "elimination steps: {}", r.steps.len()).unwrap();
    if let Some(alt) = r.alternative_rho_r {
        writeln!(text, "rank under right translation: {alt}").unwrap();
    }
    writeln!(text, "factorization A = B·C with B {}×{} and C {}×{}", r.factorization.b.rows(), r.factorization.b.cols(), r.factorization.c.rows(), r.factorization.c.cols()).unwrap();
    let json = json!({
        "rho_r": r.rho_r, "rho_c": r.rho_c, "rho": r.rho, "rho_i": r.rho_i,
        "steps": r.steps.len(),
        "B": spec_io::homspace_json(&r.factorization.b),
        "C": spec_io::homspace_json(&r.factorization.c),
    });
    Ok(Output { text, json })
}

fn invert(path: &Path) -> Result<Output> {
    let a = spec_io::parse_homspace(&spec_io::load_json(path)?)?;
    Ok(match invert_square(&a)? {
        Some(b) => Output {
            text: format!("invertible: true (AB = I and BA = I verified)\n{b}"),
            json: json!({"invertible": true, "inverse": spec_io::homspace_json(&b)}),
        },
        None => Output { text: "invertible: false".into(), json: json!({"invertible": false}) },
    })
}

fn solve_cmd(a_path: &Path, b_path: &Path) -> Result<Output> {
    let a = spec_io::parse_homspace(&spec_io::load_json(a_path)?)?;
    let bv = spec_io::load_json(b_path)?;
    let (d, ctx) = spec_io::parse_ring(bv.get("D").ok_or_else(|| Error::Parse("right-hand side: missing \"D\"".into()))?)?;
    if *d != **a.ring() {
        return Err(Error::Argument("A and b are over different rings".into()));
    }
    let b = spec_io::parse_homspace_over(a.ring(), &ctx, &bv)?;
    Ok(match solve(&a, &b)? {
        Some(x) => Output {
            text: format!("solvable: true (A·x = b verified)\n{x}"),
            json: json!({"solvable": true, "x": spec_io::homspace_json(&x)}),
        },
        None => Output { text: "solvable: false".into(), json: json!({"solvable": false}) },
    })
}

fn block_table(spec: &SemisimpleRingSpec) -> (String, Value) {
    let mut text = String::from("block  e_j  |K_j|  |supp D_j|  per-object |K_{j,f}|\n");
    let mut rows = Vec::new();
    for (j, b) in spec.blocks().iter().enumerate() {
        let counts: Vec<String> = b.object_counts().iter().map(|(f, n)| format!("{f}:{n}")).collect();
        writeln!(text, "{:<6} {:<4} {:<6} {:<11} {}", j + 1, b.base(), b.size(), b.ring().support().len(), counts.join(" ")).unwrap();
        rows.push(json!({
            "base": b.base(), "size": b.size(), "support_size": b.ring().support().len(),
            "object_counts": b.object_counts().into_iter().map(|(f, n)| json!([f, n])).collect::<Vec<_>>(),
            "sigma": b.sigma().iter().map(Morphism::to_json).collect::<Vec<_>>(),
        }));
    }
    (text, Value::Array(rows))
}

/// A semisimple spec from a semisimple, matrix-ring or division-ring file.
fn load_semisimple(path: &Path) -> Result<(SemisimpleRingSpec, Option<WedderburnDecomposition>)> {
    let v = spec_io::load_json(path)?;
    match detect(&v)? {
        Kind::Semisimple | Kind::MatrixRing => spec_io::parse_semisimple(&v),
        Kind::Ring => {
            let (d, _) = spec_io::parse_ring(&v)?;
            let g = d.groupoid().clone();
            let sigma = d.objects().iter().map(|&e| g.identity(e).map(|m| vec![m])).collect::<Result<_>>()?;
            let w = wedderburn_decompose(&MatrixRingSignature::new(d, sigma)?)?;
            Ok((w.spec().clone(), Some(w)))
        }
        other => Err(Error::Argument(format!("expected a ring file, found a {other:?} file"))),
    }
}

fn classify_cmd(path: &Path) -> Result<Output> {
    let (spec, _) = load_semisimple(path)?;
    let c = classify(&spec)?;
    let (table, blocks) = block_table(&spec);
    let text = format!("{c}\n{table}");
    let json = json!({
        "gr_semisimple": c.gr_semisimple, "gamma0_artinian": c.gamma0_artinian, "gr_simple": c.gr_simple,
        "pfm": c.pfm, "ipbn": c.ipbn, "gr_division": c.gr_division,
        "pfm_objects": c.pfm_objects,
        "witnesses": {
            "pfm": c.pfm_witness, "gr_division": c.division_witness,
            "ipbn": c.ipbn_witness.as_ref().map(|w| json!({
                "left": w.left.iter().map(|(m, k)| json!([m.to_json(), k])).collect::<Vec<_>>(),
                "right": w.right.iter().map(|(m, k)| json!([m.to_json(), k])).collect::<Vec<_>>(),
            })),
        },
        "blocks": blocks,
    });
    Ok(Output { text, json })
}

fn decompose(path: &Path) -> Result<Output> {
    let (spec, w) = load_semisimple(path)?;
    let (table, blocks) = block_table(&spec);
    let mut text = format!("{}\n{table}", plural(spec.blocks().len(), "block"));
    let audited = w.as_ref().map(|w| w.audit().map(|_| true)).transpose()?;
    if audited.is_some() {
        writeln!(text, "dimension audit: every degree matches").unwrap();
    }
    Ok(Output { text, json: json!({"blocks": blocks, "audit": audited, "spec": spec_io::semisimple_json(&spec)}) })
}

fn iso(a: &Path, b: &Path, bound: usize) -> Result<Output> {
    let (sa, _) = load_semisimple(a)?;
    let (sb, _) = load_semisimple(b)?;
    Ok(match iso_semisimple(&sa, &sb, bound)? {
        IsoOutcome::Isomorphic(certs) => {
            let mut text = String::from("isomorphic: true\n");
            let mut items = Vec::new();
            for (i, (j, c)) in certs.iter().enumerate() {
                let pi: Vec<String> = c.pi.iter().map(|p| (p + 1).to_string()).collect();
                writeln!(text, "block {} → block {}: τ = {}, π = [{}] (Φ verified on all generator pairs)", i + 1, j + 1, c.tau, pi.join(",")).unwrap();
                items.push(json!({
                    "source_block": i + 1, "target_block": j + 1, "tau": c.tau.to_json(),
                    "pi": c.pi.iter().map(|p| p + 1).collect::<Vec<_>>(),
                    "shifts": c.shifts.iter().map(Morphism::to_json).collect::<Vec<_>>(),
                    "coefficients": c.coeffs.iter().map(|(m, s)| json!([m.to_json(), s.to_json()])).collect::<Vec<_>>(),
                }));
            }
            Output { text, json: json!({"isomorphic": true, "certificates": items}) }
        }
        IsoOutcome::NotIsomorphic(why) => Output {
            text: format!("isomorphic: false ({why})"),
            json: json!({"isomorphic": false, "reason": why}),
        },
        IsoOutcome::Inconclusive(why) => Output {
            text: format!("isomorphic: inconclusive ({why})"),
            json: json!({"isomorphic": null, "reason": why}),
        },
    })
}

fn module(path: &Path) -> Result<Output> {
    let (m, vs, _) = spec_io::parse_module(&spec_io::load_json(path)?)?;
    let dims: Vec<String> = m.gamma0_dimension().iter().map(|(e, n)| format!("{e}:{n}")).collect();
    let mut text = format!("pdim: {}\nΓ₀-dimension: {}\n", m.pdim(), dims.join(" "));
    let mut json = json!({"pdim": m.pdim(), "gamma0_dimension": m.gamma0_dimension().into_iter().map(|(e, n)| json!([e, n])).collect::<Vec<_>>()});
    if !vs.is_empty() {
        let basis = m.basis_from_generators(&vs)?;
        let sub = basis.len();
        let quotient = m.quotient(&vs)?.pdim();
        if sub + quotient != m.pdim() {
            return Err(Error::TheoremViolation("pdim is not additive on this span".into()));
        }
        let idx: Vec<String> = basis.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(text, "span: pdim {sub}, pseudo-basis from vectors [{}]", idx.join(",")).unwrap();
        writeln!(text, "quotient: pdim {quotient} ({sub} + {quotient} = {})", m.pdim()).unwrap();
        json["span_pdim"] = json!(sub);
        json["span_basis"] = json!(basis.iter().map(|i| i + 1).collect::<Vec<_>>());
        json["quotient_pdim"] = json!(quotient);
    }
    Ok(Output { text, json })
}

fn category_classify(path: &Path) -> Result<Output> {
    match spec_io::parse_category(&spec_io::load_json(path)?)? {
        CategorySpec::Raw(_) => Err(Error::Precondition(
            "classification needs matrix-form data; raw categories support validation and to-ring only".into(),
        )),
        CategorySpec::MatrixForm(c) => {
            let flags = check_bridge(&c)?;
            let text = format!("{}\nring-side classification agrees on pfm, gr-division and gr-simple", FlagReport(&c, &flags));
            let name = |a: Option<usize>| a.map(|a| c.objects()[a].clone());
            let json = json!({
                "semisimple": flags.semisimple, "simple_artinian": flags.simple_artinian,
                "all_functors_free": flags.all_functors_free, "division": flags.division,
                "simple_division": flags.simple_division,
                "free_objects": flags.free_objects.iter().map(|a| name(*a)).collect::<Vec<_>>(),
                "division_obstruction": name(flags.division_obstruction),
                "bridge_agrees": true,
            });
            Ok(Output { text, json })
        }
    }
}

fn category_to_ring(path: &Path) -> Result<Output> {
    let raw = match spec_io::parse_category(&spec_io::load_json(path)?)? {
        CategorySpec::Raw(r) => r,
        CategorySpec::MatrixForm(c) => c.to_raw()?,
    };
    let r = ring_of_category(&raw)?;
    let names = raw.objects();
    let mut text = format!("graded ring over the pair groupoid on {}\n", plural(names.len(), "object"));
    let mut comps = Vec::new();
    for g in r.support() {
        let (a, b) = (&names[g.r() as usize - 1], &names[g.d() as usize - 1]);
        let d = r.component_dimension(&g);
        writeln!(text, "dim R_({a},{b}) = dim Hom({b},{a}) = {d}").unwrap();
        comps.push(json!({"degree": [a, b], "dimension": d}));
    }
    Ok(Output { text, json: json!({"objects": names, "components": comps}) })
}
