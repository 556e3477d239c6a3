//! Finite groupoids in canonical block form: a disjoint union of connected
//! blocks `X × G × X`, where `(z,h,w)(y,g,x) = (z,hg,x)` when `w = y`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Invariant, Result};
use crate::par;

pub type ObjectId = u32;

/// Maximum number of objects in a groupoid and maximum isotropy group order.
pub const MAX_OBJECTS: usize = 64;
pub const MAX_GROUP_ORDER: usize = 64;

/// A finite group given by its multiplication table. The identity is always
/// relabelled to index 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table (`mult[a][b] = ab`) and returns the
    /// group with its identity moved to index 0.
    pub fn from_table(mult: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::Argument("group of order 0".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::validation(
                Invariant::SizeBound,
                format!("group order {n} exceeds {MAX_GROUP_ORDER}"),
            ));
        }
        for (a, row) in mult.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Structural(format!("row {a} of the group table is malformed")));
            }
        }
        let bad = par::find_first(0..n, |a| {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        if let Some((a, b, c)) = bad {
            return Err(Error::validation(
                Invariant::Associativity,
                format!("group elements ({a},{b},{c}) violate (ab)c = a(bc)"),
            ));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mult[e][g] == g && mult[g][e] == g))
            .ok_or_else(|| Error::validation(Invariant::Identity, "group table has no identity"))?;
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| mult[g][h] == identity && mult[h][g] == identity) {
                Some(h) => inv[g] = h,
                None => {
                    return Err(Error::validation(
                        Invariant::Inverse,
                        format!("group element {g} has no inverse"),
                    ))
                }
            }
        }
        let group = FiniteGroup { mult, inv };
        Ok(if identity == 0 { group } else { group.relabel_swap(0, identity) })
    }

    fn relabel_swap(&self, a: usize, b: usize) -> FiniteGroup {
        let n = self.order();
        let map = |x: usize| if x == a { b } else if x == b { a } else { x };
        let mut mult = vec![vec![0; n]; n];
        let mut inv = vec![0; n];
        for x in 0..n {
            for y in 0..n {
                mult[map(x)][map(y)] = map(self.mult[x][y]);
            }
            inv[map(x)] = map(self.inv[x]);
        }
        FiniteGroup { mult, inv }
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup { mult: vec![vec![0]], inv: vec![0] }
    }

    /// Cyclic group of order `n`, element `k` standing for `g^k`.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 || n > MAX_GROUP_ORDER {
            return Err(Error::Argument(format!("cyclic group order {n} out of range")));
        }
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        Ok(FiniteGroup { mult, inv })
    }

    /// Dihedral group of order `2n`: element `k + n*s` stands for `r^k f^s`.
    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        if n == 0 || 2 * n > MAX_GROUP_ORDER {
            return Err(Error::Argument(format!("dihedral group of order {} out of range", 2 * n)));
        }
        let enc = |k: usize, s: usize| k % n + n * s;
        let mut mult = vec![vec![0; 2 * n]; 2 * n];
        for (a, row) in mult.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                let (k1, s1) = (a % n, a / n);
                let (k2, s2) = (b % n, b / n);
                // r^k1 f^s1 r^k2 f^s2 = r^(k1 ± k2) f^(s1+s2)
                let k = if s1 == 0 { k1 + k2 } else { k1 + n - k2 };
                *cell = enc(k, (s1 + s2) % 2);
            }
        }
        FiniteGroup::from_table(mult)
    }

    /// Direct product `self × other`; element `(a,b)` is encoded as `a*|other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let (n, m) = (self.order(), other.order());
        if n * m > MAX_GROUP_ORDER {
            return Err(Error::Argument(format!("product order {} too large", n * m)));
        }
        let mut mult = vec![vec![0; n * m]; n * m];
        for (x, row) in mult.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                *cell = self.mul(x / m, y / m) * m + other.mul(x % m, y % m);
            }
        }
        FiniteGroup::from_table(mult)
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders (a coarse isomorphism invariant).
    pub fn element_orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|g| self.element_order(g)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// A morphism `(target, elem, source)` of a block-form groupoid; `r = target`,
/// `d = source`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub block: usize,
    pub target: ObjectId,
    pub elem: usize,
    pub source: ObjectId,
}

impl Morphism {
    pub fn r(&self) -> ObjectId {
        self.target
    }

    pub fn d(&self) -> ObjectId {
        self.source
    }

    pub fn is_identity(&self) -> bool {
        self.elem == 0 && self.target == self.source
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!([self.target, self.elem, self.source])
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.target, self.elem, self.source)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedBlock {
    objects: Vec<ObjectId>,
    group: FiniteGroup,
}

impl ConnectedBlock {
    pub fn new(mut objects: Vec<ObjectId>, group: FiniteGroup) -> Result<ConnectedBlock> {
        if objects.is_empty() {
            return Err(Error::Argument("block without objects".into()));
        }
        objects.sort_unstable();
        if objects.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Structural("duplicate object id inside a block".into()));
        }
        Ok(ConnectedBlock { objects, group })
    }

    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn base_object(&self) -> ObjectId {
        self.objects[0]
    }

    pub fn num_morphisms(&self) -> usize {
        self.objects.len() * self.objects.len() * self.group.order()
    }
}

/// Raw presentation of a groupoid: `compose[i][j]` is the index of
/// `morphisms[i] ∘ morphisms[j]` when defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGroupoid {
    pub objects: Vec<ObjectId>,
    /// `(source, target)` of each morphism.
    pub morphisms: Vec<(ObjectId, ObjectId)>,
    pub compose: Vec<Vec<Option<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    blocks: Vec<ConnectedBlock>,
    index: BTreeMap<ObjectId, (usize, usize)>,
    offsets: Vec<usize>,
}

impl FiniteGroupoid {
    pub fn from_blocks(blocks: Vec<ConnectedBlock>) -> Result<FiniteGroupoid> {
        let mut blocks = blocks;
        blocks.sort_by_key(|b| b.base_object());
        let mut index = BTreeMap::new();
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut offset = 0;
        for (bi, b) in blocks.iter().enumerate() {
            for (pos, &o) in b.objects.iter().enumerate() {
                if index.insert(o, (bi, pos)).is_some() {
                    return Err(Error::Structural(format!("object {o} appears in two blocks")));
                }
            }
            offsets.push(offset);
            offset += b.num_morphisms();
        }
        if index.len() > MAX_OBJECTS {
            return Err(Error::validation(
                Invariant::SizeBound,
                format!("{} objects exceed the bound {MAX_OBJECTS}", index.len()),
            ));
        }
        if index.is_empty() {
            return Err(Error::Argument("groupoid without objects".into()));
        }
        Ok(FiniteGroupoid { blocks, index, offsets })
    }

    /// The pair groupoid `X × X` on objects `1..=n`.
    pub fn pair_groupoid(n: usize) -> Result<FiniteGroupoid> {
        if n == 0 {
            return Err(Error::Argument("pair groupoid needs n >= 1".into()));
        }
        Self::product_groupoid((1..=n as ObjectId).collect(), FiniteGroup::trivial())
    }

    /// A group viewed as a one-object groupoid (object 0).
    pub fn group_as_groupoid(group: FiniteGroup) -> Result<FiniteGroupoid> {
        Self::product_groupoid(vec![0], group)
    }

    pub fn product_groupoid(objects: Vec<ObjectId>, group: FiniteGroup) -> Result<FiniteGroupoid> {
        if objects.is_empty() {
            return Err(Error::Argument("product groupoid needs objects".into()));
        }
        Self::from_blocks(vec![ConnectedBlock::new(objects, group)?])
    }

    pub fn blocks(&self) -> &[ConnectedBlock] {
        &self.blocks
    }

    pub fn objects(&self) -> Vec<ObjectId> {
        self.index.keys().copied().collect()
    }

    pub fn num_objects(&self) -> usize {
        self.index.len()
    }

    pub fn has_object(&self, o: ObjectId) -> bool {
        self.index.contains_key(&o)
    }

    pub fn block_of(&self, o: ObjectId) -> Result<usize> {
        self.index
            .get(&o)
            .map(|&(b, _)| b)
            .ok_or_else(|| Error::Argument(format!("unknown object {o}")))
    }

    pub fn is_connected(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn isotropy_group(&self, e: ObjectId) -> Result<FiniteGroup> {
        Ok(self.blocks[self.block_of(e)?].group.clone())
    }

    /// Checks that `m` references known objects of the stated block and a valid element.
    pub fn check(&self, m: &Morphism) -> Result<()> {
        let ok = |o: ObjectId| self.index.get(&o).map(|&(b, _)| b) == Some(m.block);
        if m.block >= self.blocks.len() || !ok(m.target) || !ok(m.source) {
            return Err(Error::Structural(format!("morphism {m} references unknown objects")));
        }
        if m.elem >= self.blocks[m.block].group.order() {
            return Err(Error::Structural(format!("morphism {m} has an invalid group element")));
        }
        Ok(())
    }

    /// Builds the morphism `(target, elem, source)`, checking all references.
    pub fn morphism(&self, target: ObjectId, elem: usize, source: ObjectId) -> Result<Morphism> {
        let bt = self.block_of(target)?;
        let bs = self.block_of(source)?;
        if bt != bs {
            return Err(Error::Argument(format!("objects {target} and {source} lie in different blocks")));
        }
        let m = Morphism { block: bt, target, elem, source };
        self.check(&m)?;
        Ok(m)
    }

    pub fn identity(&self, o: ObjectId) -> Result<Morphism> {
        self.morphism(o, 0, o)
    }

    /// `g ∘ h`, defined when `d(g) = r(h)`.
    pub fn compose(&self, g: &Morphism, h: &Morphism) -> Option<Morphism> {
        if g.source != h.target {
            return None;
        }
        let group = &self.blocks[g.block].group;
        Some(Morphism {
            block: g.block,
            target: g.target,
            elem: group.mul(g.elem, h.elem),
            source: h.source,
        })
    }

    /// Like [`compose`](Self::compose) but rejects morphisms with unknown objects.
    pub fn compose_checked(&self, g: &Morphism, h: &Morphism) -> Result<Option<Morphism>> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.compose(g, h))
    }

    pub fn inverse(&self, g: &Morphism) -> Morphism {
        Morphism {
            block: g.block,
            target: g.source,
            elem: self.blocks[g.block].group.inv(g.elem),
            source: g.target,
        }
    }

    /// Section morphism `σ_e = (e₀, 1, e)` from `e` to its block's base object.
    pub fn section(&self, e: ObjectId) -> Result<Morphism> {
        let b = self.block_of(e)?;
        Ok(Morphism { block: b, target: self.blocks[b].base_object(), elem: 0, source: e })
    }

    /// All morphisms with the given target and source, by element index.
    pub fn hom_set(&self, target: ObjectId, source: ObjectId) -> Vec<Morphism> {
        match (self.index.get(&target), self.index.get(&source)) {
            (Some(&(bt, _)), Some(&(bs, _))) if bt == bs => (0..self.blocks[bt].group.order())
                .map(|elem| Morphism { block: bt, target, elem, source })
                .collect(),
            _ => Vec::new(),
        }
    }

    pub fn num_morphisms(&self) -> usize {
        self.blocks.iter().map(|b| b.num_morphisms()).sum()
    }

    /// Dense index of a morphism in `0..num_morphisms()`.
    pub fn morphism_index(&self, m: &Morphism) -> usize {
        let b = &self.blocks[m.block];
        let n = b.objects.len();
        let t = self.index[&m.target].1;
        let s = self.index[&m.source].1;
        self.offsets[m.block] + (t * b.group.order() + m.elem) * n + s
    }

    pub fn morphisms(&self) -> Vec<Morphism> {
        let mut out = Vec::with_capacity(self.num_morphisms());
        for (bi, b) in self.blocks.iter().enumerate() {
            for &t in &b.objects {
                for elem in 0..b.group.order() {
                    for &s in &b.objects {
                        out.push(Morphism { block: bi, target: t, elem, source: s });
                    }
                }
            }
        }
        out
    }

    /// Multiset of `(|objects|, group order, element orders)` over blocks.
    pub fn block_signature(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let mut sig: Vec<_> = self
            .blocks
            .iter()
            .map(|b| (b.objects.len(), b.group.order(), b.group.element_orders()))
            .collect();
        sig.sort();
        sig
    }

    /// Raw composition-table presentation, morphisms listed in canonical order.
    pub fn to_raw(&self) -> RawGroupoid {
        let ms = self.morphisms();
        let pos: BTreeMap<Morphism, usize> = ms.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let compose = ms
            .iter()
            .map(|g| ms.iter().map(|h| self.compose(g, h).map(|c| pos[&c])).collect())
            .collect();
        RawGroupoid {
            objects: self.objects(),
            morphisms: ms.iter().map(|m| (m.source, m.target)).collect(),
            compose,
        }
    }

    /// Validates a raw composition table and converts it to block form.
    /// Returns the groupoid and, for each raw morphism, its canonical image.
    pub fn from_composition_table(raw: &RawGroupoid) -> Result<(FiniteGroupoid, Vec<Morphism>)> {
        let n = raw.morphisms.len();
        let objects: BTreeSet<ObjectId> = raw.objects.iter().copied().collect();
        if objects.len() != raw.objects.len() {
            return Err(Error::Structural("duplicate object ids".into()));
        }
        if objects.len() > MAX_OBJECTS {
            return Err(Error::validation(
                Invariant::SizeBound,
                format!("{} objects exceed the bound {MAX_OBJECTS}", objects.len()),
            ));
        }
        for (i, &(s, t)) in raw.morphisms.iter().enumerate() {
            if !objects.contains(&s) || !objects.contains(&t) {
                return Err(Error::Structural(format!("morphism {i} references an unknown object")));
            }
        }
        if raw.compose.len() != n || raw.compose.iter().any(|row| row.len() != n) {
            return Err(Error::Structural(format!("composition table must be {n}×{n}")));
        }
        let src = |i: usize| raw.morphisms[i].0;
        let tgt = |i: usize| raw.morphisms[i].1;
        for i in 0..n {
            for j in 0..n {
                let composable = src(i) == tgt(j);
                match raw.compose[i][j] {
                    Some(k) if !composable => {
                        return Err(Error::validation(
                            Invariant::Composability,
                            format!("morphisms {i}∘{j} are not composable but the table defines {k}"),
                        ))
                    }
                    None if composable => {
                        return Err(Error::validation(
                            Invariant::Composability,
                            format!("composable pair {i}∘{j} has no entry"),
                        ))
                    }
                    Some(k) if k >= n || src(k) != src(j) || tgt(k) != tgt(i) => {
                        return Err(Error::validation(
                            Invariant::Composability,
                            format!("{i}∘{j} = {k} has the wrong source or target"),
                        ))
                    }
                    _ => {}
                }
            }
        }
        let c = |i: usize, j: usize| raw.compose[i][j].expect("composable");
        let bad = par::find_first(0..n, |i| {
            for j in (0..n).filter(|&j| src(i) == tgt(j)) {
                for k in (0..n).filter(|&k| src(j) == tgt(k)) {
                    if c(c(i, j), k) != c(i, c(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
            None
        });
        if let Some((i, j, k)) = bad {
            return Err(Error::validation(
                Invariant::Associativity,
                format!("triple ({i},{j},{k}) violates (ab)c = a(bc)"),
            ));
        }
        let mut ident: BTreeMap<ObjectId, usize> = BTreeMap::new();
        for &x in &objects {
            let found = (0..n).find(|&e| {
                src(e) == x
                    && tgt(e) == x
                    && (0..n).filter(|&f| tgt(f) == x).all(|f| c(e, f) == f)
                    && (0..n).filter(|&g| src(g) == x).all(|g| c(g, e) == g)
            });
            match found {
                Some(e) => {
                    ident.insert(x, e);
                }
                None => {
                    return Err(Error::validation(
                        Invariant::Identity,
                        format!("object {x} has no identity morphism"),
                    ))
                }
            }
        }
        let mut inverse = vec![0usize; n];
        for f in 0..n {
            let g = (0..n).find(|&g| {
                src(g) == tgt(f)
                    && tgt(g) == src(f)
                    && c(f, g) == ident[&tgt(f)]
                    && c(g, f) == ident[&src(f)]
            });
            match g {
                Some(g) => inverse[f] = g,
                None => {
                    return Err(Error::validation(
                        Invariant::Inverse,
                        format!("morphism {f} is not invertible"),
                    ))
                }
            }
        }
        // connected components by union-find over objects
        let objs: Vec<ObjectId> = objects.iter().copied().collect();
        let pos: BTreeMap<ObjectId, usize> = objs.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut parent: Vec<usize> = (0..objs.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(s, t) in &raw.morphisms {
            let (a, b) = (find(&mut parent, pos[&s]), find(&mut parent, pos[&t]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut comps: BTreeMap<usize, Vec<ObjectId>> = BTreeMap::new();
        for (i, &o) in objs.iter().enumerate() {
            let root = find(&mut parent, i);
            comps.entry(root).or_default().push(o);
        }
        let mut blocks = Vec::new();
        let mut relabel = vec![None; n];
        for comp in comps.values() {
            let e0 = comp[0];
            let id0 = ident[&e0];
            let mut loops: Vec<usize> = vec![id0];
            loops.extend((0..n).filter(|&f| src(f) == e0 && tgt(f) == e0 && f != id0));
            let lpos: BTreeMap<usize, usize> = loops.iter().enumerate().map(|(i, &f)| (f, i)).collect();
            let table = loops.iter().map(|&a| loops.iter().map(|&b| lpos[&c(a, b)]).collect()).collect();
            let group = FiniteGroup::from_table(table)?;
            // sections σ_x: x → e0, smallest raw index
            let mut section = BTreeMap::new();
            for &x in comp {
                let s = if x == e0 {
                    id0
                } else {
                    (0..n)
                        .find(|&f| src(f) == x && tgt(f) == e0)
                        .ok_or_else(|| Error::Structural(format!("no morphism from {x} to {e0}")))?
                };
                section.insert(x, s);
            }
            let block_index = blocks.len();
            for (f, slot) in relabel.iter_mut().enumerate() {
                let (s, t) = raw.morphisms[f];
                if !section.contains_key(&s) {
                    continue;
                }
                let g = c(c(section[&t], f), inverse[section[&s]]);
                *slot = Some(Morphism { block: block_index, target: t, elem: lpos[&g], source: s });
            }
            blocks.push(ConnectedBlock::new(comp.clone(), group)?);
        }
        let relabel: Vec<Morphism> = relabel.into_iter().map(|m| m.expect("every morphism lies in a component")).collect();
        let distinct: BTreeSet<&Morphism> = relabel.iter().collect();
        let groupoid = FiniteGroupoid::from_blocks(blocks)?;
        if distinct.len() != n || n != groupoid.num_morphisms() {
            return Err(Error::validation(
                Invariant::Composability,
                "morphism sets do not match the canonical block form",
            ));
        }
        Ok((groupoid, relabel))
    }
}
