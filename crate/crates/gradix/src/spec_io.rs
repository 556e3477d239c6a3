//! JSON spec files. Every file may carry a `"refs"` map from names to
//! relative paths; any node `{"ref": name}` (or `{"ref": path}`) is replaced
//! by the referenced document before parsing. Matrix and vector indices in
//! files are 1-based.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::category::{MatrixFormCategory, RawCategory};
use crate::division_ring::{matrix_form_inverse, GradedDivisionRing};
use crate::error::{Error, Result};
use crate::groupoid::{ConnectedBlock, FiniteGroup, FiniteGroupoid, Morphism, ObjectId, RawGroupoid};
use crate::matrix::{HomSpaceMatrix, HomogeneousMatrix, MatrixRingSignature};
use crate::module::{GradedModule, HomogeneousVector};
use crate::scalar::{Field, Scalar};
use crate::structure::{wedderburn_decompose, MatrixBlock, SemisimpleRingSpec, WedderburnDecomposition};

/// Schema tag carried by every machine-readable record.
pub const SCHEMA: &str = "gradix/1";

const MAX_REF_DEPTH: usize = 16;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Reads a JSON file and inlines its references.
pub fn load_json(path: &Path) -> Result<Value> {
    load_at_depth(path, 0)
}

fn load_at_depth(path: &Path, depth: usize) -> Result<Value> {
    if depth > MAX_REF_DEPTH {
        return Err(perr(format!("reference chain too deep at {}", path.display())));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| perr(format!("{}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    inline_refs(value, &base, depth)
}

fn inline_refs(value: Value, base: &Path, depth: usize) -> Result<Value> {
    let refs: BTreeMap<String, PathBuf> = match value.get("refs") {
        Some(Value::Object(m)) => m
            .iter()
            .map(|(k, v)| {
                v.as_str().map(|s| (k.clone(), base.join(s))).ok_or_else(|| perr(format!("ref {k:?} is not a path")))
            })
            .collect::<Result<_>>()?,
        Some(_) => return Err(perr("\"refs\" must be an object")),
        None => BTreeMap::new(),
    };
    resolve(value, base, &refs, depth)
}

fn resolve(value: Value, base: &Path, refs: &BTreeMap<String, PathBuf>, depth: usize) -> Result<Value> {
    match value {
        Value::Object(m) if m.len() == 1 && m.contains_key("ref") => {
            let name = m["ref"].as_str().ok_or_else(|| perr("\"ref\" must be a string"))?;
            let path = refs.get(name).cloned().unwrap_or_else(|| base.join(name));
            load_at_depth(&path, depth + 1)
        }
        Value::Object(m) => {
            let mut out = Map::new();
            for (k, v) in m {
                let v = if k == "refs" { v } else { resolve(v, base, refs, depth)? };
                out.insert(k, v);
            }
            Ok(Value::Object(out))
        }
        Value::Array(a) => Ok(Value::Array(a.into_iter().map(|v| resolve(v, base, refs, depth)).collect::<Result<_>>()?)),
        other => Ok(other),
    }
}

fn field_of<'a>(v: &'a Value, key: &str, what: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("{what}: missing \"{key}\"")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what}: expected an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| perr(format!("{what}: expected a nonnegative integer, found {v}")))
}

fn as_object_id(v: &Value, what: &str) -> Result<ObjectId> {
    v.as_u64()
        .and_then(|x| ObjectId::try_from(x).ok())
        .ok_or_else(|| perr(format!("{what}: expected an object id, found {v}")))
}

pub fn parse_field(v: &Value) -> Result<Field> {
    let kind = field_of(v, "kind", "field")?.as_str().ok_or_else(|| perr("field: \"kind\" must be a string"))?;
    match kind {
        "Q" => Ok(Field::Rational),
        "Fp" => Field::prime(field_of(v, "p", "field")?.as_u64().ok_or_else(|| perr("field: \"p\" must be an integer"))?),
        other => Err(perr(format!("field: unknown kind {other:?}"))),
    }
}

pub fn field_json(f: Field) -> Value {
    match f {
        Field::Rational => json!({"kind": "Q"}),
        Field::Prime(p) => json!({"kind": "Fp", "p": p}),
    }
}

/// `{"order": n, "mult": [[..]]}`, `{"cyclic": n}`, `{"dihedral": n}` or `"trivial"`.
pub fn parse_group(v: &Value) -> Result<FiniteGroup> {
    if v.as_str() == Some("trivial") {
        return Ok(FiniteGroup::trivial());
    }
    if let Some(n) = v.get("cyclic") {
        return FiniteGroup::cyclic(as_usize(n, "cyclic group")?);
    }
    if let Some(n) = v.get("dihedral") {
        return FiniteGroup::dihedral(as_usize(n, "dihedral group")?);
    }
    let order = as_usize(field_of(v, "order", "group")?, "group order")?;
    let mult: Vec<Vec<usize>> = as_array(field_of(v, "mult", "group")?, "group table")?
        .iter()
        .map(|row| as_array(row, "group table row")?.iter().map(|x| as_usize(x, "group table entry")).collect())
        .collect::<Result<_>>()?;
    if mult.len() != order {
        return Err(perr(format!("group: order {order} but {} table rows", mult.len())));
    }
    FiniteGroup::from_table(mult)
}

pub fn group_json(g: &FiniteGroup) -> Value {
    json!({"order": g.order(), "mult": g.table()})
}

/// A groupoid plus, for raw presentations, the canonical image of every raw
/// morphism index.
#[derive(Clone, Debug)]
pub struct GroupoidCtx {
    pub groupoid: Arc<FiniteGroupoid>,
    pub raw: Option<Vec<Morphism>>,
}

impl GroupoidCtx {
    pub fn morphism(&self, v: &Value) -> Result<Morphism> {
        parse_morphism(self, v)
    }
}

/// `{"blocks": [...]}`, `{"raw": {...}}`, `{"pair": n}` or `{"group": g}`.
pub fn parse_groupoid(v: &Value) -> Result<GroupoidCtx> {
    if let Some(n) = v.get("pair") {
        let g = FiniteGroupoid::pair_groupoid(as_usize(n, "pair groupoid")?)?;
        return Ok(GroupoidCtx { groupoid: Arc::new(g), raw: None });
    }
    if let Some(g) = v.get("group") {
        let g = FiniteGroupoid::group_as_groupoid(parse_group(g)?)?;
        return Ok(GroupoidCtx { groupoid: Arc::new(g), raw: None });
    }
    if let Some(raw) = v.get("raw") {
        let objects = as_array(field_of(raw, "objects", "raw groupoid")?, "objects")?
            .iter()
            .map(|o| as_object_id(o, "raw groupoid object"))
            .collect::<Result<_>>()?;
        let morphisms = as_array(field_of(raw, "morphisms", "raw groupoid")?, "morphisms")?
            .iter()
            .map(|m| {
                let pair = as_array(m, "raw morphism")?;
                match pair.as_slice() {
                    [s, t] => Ok((as_object_id(s, "source")?, as_object_id(t, "target")?)),
                    _ => Err(perr("raw morphism must be [source, target]")),
                }
            })
            .collect::<Result<_>>()?;
        let compose = as_array(field_of(raw, "compose", "raw groupoid")?, "compose")?
            .iter()
            .map(|row| {
                as_array(row, "compose row")?
                    .iter()
                    .map(|x| if x.is_null() { Ok(None) } else { as_usize(x, "compose entry").map(Some) })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let (g, images) = FiniteGroupoid::from_composition_table(&RawGroupoid { objects, morphisms, compose })?;
        return Ok(GroupoidCtx { groupoid: Arc::new(g), raw: Some(images) });
    }
    let blocks = as_array(field_of(v, "blocks", "groupoid")?, "blocks")?
        .iter()
        .map(|b| {
            let objects = as_array(field_of(b, "objects", "block")?, "block objects")?
                .iter()
                .map(|o| as_object_id(o, "block object"))
                .collect::<Result<_>>()?;
            ConnectedBlock::new(objects, parse_group(field_of(b, "group", "block")?)?)
        })
        .collect::<Result<_>>()?;
    Ok(GroupoidCtx { groupoid: Arc::new(FiniteGroupoid::from_blocks(blocks)?), raw: None })
}

pub fn groupoid_json(g: &FiniteGroupoid) -> Value {
    let blocks: Vec<Value> = g.blocks().iter().map(|b| json!({"objects": b.objects(), "group": group_json(b.group())})).collect();
    json!({ "blocks": blocks })
}

/// `[target, elem, source]`, `[target, source]` (element 0) or `{"raw": k}`.
pub fn parse_morphism(ctx: &GroupoidCtx, v: &Value) -> Result<Morphism> {
    if let Some(k) = v.get("raw") {
        let k = as_usize(k, "raw morphism index")?;
        let images = ctx.raw.as_ref().ok_or_else(|| perr("raw morphism index used with a block-form groupoid"))?;
        return images.get(k).copied().ok_or_else(|| perr(format!("raw morphism index {k} out of range")));
    }
    let parts = as_array(v, "morphism")?;
    let (t, e, s) = match parts.as_slice() {
        [t, e, s] => (as_object_id(t, "target")?, as_usize(e, "group element")?, as_object_id(s, "source")?),
        [t, s] => (as_object_id(t, "target")?, 0, as_object_id(s, "source")?),
        _ => return Err(perr(format!("morphism must be [t,e,s] or [t,s], found {v}"))),
    };
    ctx.groupoid.morphism(t, e, s)
}

fn parse_morphisms(ctx: &GroupoidCtx, v: &Value, what: &str) -> Result<Vec<Morphism>> {
    as_array(v, what)?.iter().map(|m| parse_morphism(ctx, m)).collect()
}

/// A graded division ring. Accepted forms: the full form
/// `{"field", "groupoid", "support", "factor": [[γ,δ,c],...] | "trivial"}`,
/// `{"group_ring": {"field", "group"}}`,
/// `{"twisted_group_ring": {"field", "group", "factor": [[a,b,c],...]}}` (absent pairs are 1)
/// and `{"prime_block": {"H": ring, "sigma": [...]}}`.
pub fn parse_ring(v: &Value) -> Result<(Arc<GradedDivisionRing>, GroupoidCtx)> {
    if let Some(g) = v.get("group_ring") {
        let d = GradedDivisionRing::group_ring(parse_field(field_of(g, "field", "group_ring")?)?, parse_group(field_of(g, "group", "group_ring")?)?)?;
        let ctx = GroupoidCtx { groupoid: d.groupoid().clone(), raw: None };
        return Ok((Arc::new(d), ctx));
    }
    if let Some(g) = v.get("twisted_group_ring") {
        let field = parse_field(field_of(g, "field", "twisted_group_ring")?)?;
        let group = parse_group(field_of(g, "group", "twisted_group_ring")?)?;
        let mut table: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for t in as_array(field_of(g, "factor", "twisted_group_ring")?, "factor")? {
            match as_array(t, "factor entry")?.as_slice() {
                [a, b, c] => {
                    table.insert((as_usize(a, "element")?, as_usize(b, "element")?), Scalar::from_json(field, c)?);
                }
                _ => return Err(perr("twisted factor entries are [a, b, value]")),
            }
        }
        let d = GradedDivisionRing::twisted_group_ring(field, group, |a, b| table.get(&(a, b)).cloned().unwrap_or_else(|| field.one()))?;
        let ctx = GroupoidCtx { groupoid: d.groupoid().clone(), raw: None };
        return Ok((Arc::new(d), ctx));
    }
    if let Some(p) = v.get("prime_block") {
        let (h, ctx) = parse_ring(field_of(p, "H", "prime_block")?)?;
        let sigma = parse_morphisms(&ctx, field_of(p, "sigma", "prime_block")?, "sigma")?;
        let d = matrix_form_inverse(&h, &sigma)?;
        return Ok((Arc::new(d), ctx));
    }
    let field = parse_field(field_of(v, "field", "ring")?)?;
    let ctx = parse_groupoid(field_of(v, "groupoid", "ring")?)?;
    let support = parse_morphisms(&ctx, field_of(v, "support", "ring")?, "support")?;
    let d = match field_of(v, "factor", "ring")? {
        Value::String(s) if s == "trivial" => GradedDivisionRing::build_with(ctx.groupoid.clone(), field, support, |_, _| field.one())?,
        f => {
            let mut factor = std::collections::HashMap::new();
            for t in as_array(f, "factor")? {
                match as_array(t, "factor entry")?.as_slice() {
                    [a, b, c] => {
                        factor.insert((parse_morphism(&ctx, a)?, parse_morphism(&ctx, b)?), Scalar::from_json(field, c)?);
                    }
                    _ => return Err(perr("factor entries are [γ, δ, value]")),
                }
            }
            GradedDivisionRing::build(ctx.groupoid.clone(), field, support, factor)?
        }
    };
    Ok((Arc::new(d), ctx))
}

pub fn ring_json(d: &GradedDivisionRing) -> Value {
    let factor: Vec<Value> = d.factor_entries().iter().map(|(a, b, c)| json!([a.to_json(), b.to_json(), c.to_json()])).collect();
    json!({
        "field": field_json(d.field()),
        "groupoid": groupoid_json(d.groupoid()),
        "support": d.support().iter().map(Morphism::to_json).collect::<Vec<_>>(),
        "factor": factor,
    })
}

fn parse_sigma_sets(ctx: &GroupoidCtx, v: &Value) -> Result<Vec<Vec<Morphism>>> {
    as_array(v, "sigma")?
        .iter()
        .map(|s| {
            let items = as_array(s, "sigma entry")?;
            if items.first().is_some_and(Value::is_number) {
                Ok(vec![parse_morphism(ctx, s)?])
            } else {
                parse_morphisms(ctx, s, "sigma set")
            }
        })
        .collect()
}

/// `{"D": ring, "sigma": [[morphism, ...], ...]}`; a bare morphism stands for a singleton.
pub fn parse_matrix_ring(v: &Value) -> Result<(Arc<MatrixRingSignature>, GroupoidCtx)> {
    let (d, ctx) = parse_ring(field_of(v, "D", "matrix ring")?)?;
    let sigma = parse_sigma_sets(&ctx, field_of(v, "sigma", "matrix ring")?)?;
    Ok((MatrixRingSignature::new(d, sigma)?, ctx))
}

pub fn matrix_ring_json(sig: &MatrixRingSignature) -> Value {
    let sigma: Vec<Value> = sig.sigma().iter().map(|s| Value::Array(s.iter().map(Morphism::to_json).collect())).collect();
    json!({"D": ring_json(sig.ring()), "sigma": sigma})
}

/// A semisimple ring: either `{"blocks": [{"D": ring, "sigma": [...]}, ...]}`
/// or a matrix ring, which is first decomposed.
pub fn parse_semisimple(v: &Value) -> Result<(SemisimpleRingSpec, Option<WedderburnDecomposition>)> {
    if let Some(blocks) = v.get("blocks") {
        let blocks = as_array(blocks, "blocks")?
            .iter()
            .map(|b| {
                let (d, ctx) = parse_ring(field_of(b, "D", "block")?)?;
                let sigma = parse_morphisms(&ctx, field_of(b, "sigma", "block")?, "block sigma")?;
                MatrixBlock::new(d, sigma)
            })
            .collect::<Result<_>>()?;
        return Ok((SemisimpleRingSpec::new(blocks)?, None));
    }
    let (sig, _) = parse_matrix_ring(v)?;
    let w = wedderburn_decompose(&sig)?;
    Ok((w.spec().clone(), Some(w)))
}

pub fn semisimple_json(spec: &SemisimpleRingSpec) -> Value {
    let blocks: Vec<Value> = spec
        .blocks()
        .iter()
        .map(|b| json!({"D": ring_json(b.ring()), "sigma": b.sigma().iter().map(Morphism::to_json).collect::<Vec<_>>()}))
        .collect();
    json!({ "blocks": blocks })
}

fn dense_rows(field: Field, v: &Value) -> Result<Vec<Vec<Scalar>>> {
    as_array(v, "entries")?
        .iter()
        .map(|row| as_array(row, "entry row")?.iter().map(|c| Scalar::from_json(field, c)).collect())
        .collect()
}

/// `{"D": ring, "alpha": [...], "beta": [...], "entries": [[c, ...], ...]}`.
pub fn parse_homspace(v: &Value) -> Result<HomSpaceMatrix> {
    let (d, ctx) = parse_ring(field_of(v, "D", "matrix")?)?;
    parse_homspace_over(&d, &ctx, v)
}

/// Like [`parse_homspace`] over an already parsed ring (a `"D"` key is ignored).
pub fn parse_homspace_over(d: &Arc<GradedDivisionRing>, ctx: &GroupoidCtx, v: &Value) -> Result<HomSpaceMatrix> {
    let alpha = parse_morphisms(ctx, field_of(v, "alpha", "matrix")?, "alpha")?;
    let beta = parse_morphisms(ctx, field_of(v, "beta", "matrix")?, "beta")?;
    let entries = dense_rows(d.field(), field_of(v, "entries", "matrix")?)?;
    HomSpaceMatrix::new(d.clone(), alpha, beta, entries)
}

pub fn homspace_json(a: &HomSpaceMatrix) -> Value {
    json!({
        "alpha": a.alpha().iter().map(Morphism::to_json).collect::<Vec<_>>(),
        "beta": a.beta().iter().map(Morphism::to_json).collect::<Vec<_>>(),
        "entries": a.entries().iter().map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn index(v: &Value, n: usize, what: &str) -> Result<usize> {
    let i = as_usize(v, what)?;
    if i == 0 || i > n {
        return Err(perr(format!("{what} {i} out of range 1..={n}")));
    }
    Ok(i - 1)
}

/// `{"degree": morphism, "entries": [[i, j, c], ...]}` in `M_I(D)(Σ̄)`.
pub fn parse_ring_element(sig: &Arc<MatrixRingSignature>, ctx: &GroupoidCtx, v: &Value) -> Result<HomogeneousMatrix> {
    let degree = parse_morphism(ctx, field_of(v, "degree", "matrix element")?)?;
    let n = sig.size();
    let entries = as_array(field_of(v, "entries", "matrix element")?, "entries")?
        .iter()
        .map(|t| match as_array(t, "entry")?.as_slice() {
            [i, j, c] => Ok((index(i, n, "row")?, index(j, n, "column")?, Scalar::from_json(sig.field(), c)?)),
            _ => Err(perr("matrix entries are [i, j, value]")),
        })
        .collect::<Result<Vec<_>>>()?;
    HomogeneousMatrix::new(sig, degree, entries)
}

pub fn ring_element_json(a: &HomogeneousMatrix) -> Value {
    json!({
        "degree": a.degree().map(|d| d.to_json()),
        "entries": a.entries().iter().map(|((i, j), c)| json!([i + 1, j + 1, c.to_json()])).collect::<Vec<_>>(),
    })
}

/// `{"D": ring, "shifts": [...], "vectors": [{"degree", "entries": [[i, c], ...]}]}`
/// (`"vectors"` optional).
pub fn parse_module(v: &Value) -> Result<(GradedModule, Vec<HomogeneousVector>, GroupoidCtx)> {
    let (d, ctx) = parse_ring(field_of(v, "D", "module")?)?;
    let shifts = parse_morphisms(&ctx, field_of(v, "shifts", "module")?, "shifts")?;
    let m = GradedModule::new(d, shifts)?;
    let vectors = match v.get("vectors") {
        None => Vec::new(),
        Some(vs) => as_array(vs, "vectors")?.iter().map(|x| parse_vector(&m, &ctx, x)).collect::<Result<_>>()?,
    };
    Ok((m, vectors, ctx))
}

pub fn parse_vector(m: &GradedModule, ctx: &GroupoidCtx, v: &Value) -> Result<HomogeneousVector> {
    let degree = parse_morphism(ctx, field_of(v, "degree", "vector")?)?;
    let field = m.ring().field();
    let mut entries = vec![field.zero(); m.pdim()];
    for t in as_array(field_of(v, "entries", "vector")?, "entries")? {
        match as_array(t, "entry")?.as_slice() {
            [i, c] => entries[index(i, m.pdim(), "coordinate")?] = Scalar::from_json(field, c)?,
            _ => return Err(perr("vector entries are [i, value]")),
        }
    }
    m.vector(degree, entries)
}

pub fn vector_json(v: &HomogeneousVector) -> Value {
    let entries: Vec<Value> = v
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| json!([i + 1, c.to_json()]))
        .collect();
    json!({"degree": v.degree().to_json(), "entries": entries})
}

#[derive(Clone, Debug)]
pub enum CategorySpec {
    MatrixForm(MatrixFormCategory),
    Raw(RawCategory),
}

/// `{"objects": [names], "division_rings": [fields], "dims": {"name": [n per j]}}`
/// or `{"raw": {"objects", "field", "hom_dims", "compose": [{"target", "middle", "source", "table"}], "identities"}}`.
pub fn parse_category(v: &Value) -> Result<CategorySpec> {
    if let Some(raw) = v.get("raw") {
        let objects = names(field_of(raw, "objects", "raw category")?)?;
        let field = parse_field(field_of(raw, "field", "raw category")?)?;
        let pos = |x: &Value| -> Result<usize> {
            let name = x.as_str().ok_or_else(|| perr("object references are names"))?;
            objects.iter().position(|o| o == name).ok_or_else(|| perr(format!("unknown object {name:?}")))
        };
        let hom_dims = as_array(field_of(raw, "hom_dims", "raw category")?, "hom_dims")?
            .iter()
            .map(|r| as_array(r, "hom_dims row")?.iter().map(|x| as_usize(x, "hom dimension")).collect())
            .collect::<Result<_>>()?;
        let mut compose = std::collections::HashMap::new();
        for t in as_array(field_of(raw, "compose", "raw category")?, "compose")? {
            let key = (pos(field_of(t, "target", "compose")?)?, pos(field_of(t, "middle", "compose")?)?, pos(field_of(t, "source", "compose")?)?);
            let table = as_array(field_of(t, "table", "compose")?, "table")?
                .iter()
                .map(|row| dense_rows(field, row))
                .collect::<Result<Vec<_>>>()?;
            compose.insert(key, table);
        }
        let identities = as_array(field_of(raw, "identities", "raw category")?, "identities")?
            .iter()
            .map(|r| as_array(r, "identity")?.iter().map(|c| Scalar::from_json(field, c)).collect())
            .collect::<Result<_>>()?;
        return Ok(CategorySpec::Raw(RawCategory::new(objects, field, hom_dims, compose, identities)?));
    }
    let objects = names(field_of(v, "objects", "category")?)?;
    let fields: Vec<Field> = as_array(field_of(v, "division_rings", "category")?, "division_rings")?
        .iter()
        .map(parse_field)
        .collect::<Result<_>>()?;
    let dims_v = field_of(v, "dims", "category")?.as_object().ok_or_else(|| perr("\"dims\" must map names to lists"))?;
    let mut dims = Vec::new();
    for o in &objects {
        let row = match dims_v.get(o) {
            Some(r) => as_array(r, "dims row")?.iter().map(|x| as_usize(x, "multiplicity")).collect::<Result<Vec<_>>>()?,
            None => vec![0; fields.len()],
        };
        dims.push(row);
    }
    if let Some(extra) = dims_v.keys().find(|k| !objects.contains(k)) {
        return Err(perr(format!("dims mention unknown object {extra:?}")));
    }
    Ok(CategorySpec::MatrixForm(MatrixFormCategory::new(objects, fields, dims)?))
}

fn names(v: &Value) -> Result<Vec<String>> {
    as_array(v, "objects")?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| perr("object names must be strings")))
        .collect()
}

/// Wraps a result under the schema tag.
pub fn record(command: &str, result: Value) -> Value {
    json!({"schema": SCHEMA, "command": command, "result": result})
}
