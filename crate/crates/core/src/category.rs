//! Finite categories with a materialized composition table.
//!
//! Morphisms are numbered by `(dom, cod, declaration order)`, so every hom-set
//! `hom(a, b)` and every out-set `hom(a, -)` is a contiguous range of
//! [`MorId`]s. Composition is a dense table indexed by the first morphism and
//! the position of the second one inside the out-set of its domain.

use std::collections::HashMap;
use std::fmt;

use bitflags::bitflags;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(u32);

impl ObjId {
    pub fn new(index: usize) -> Self {
        ObjId(u32::try_from(index).expect("object index overflows u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    pub fn new(index: usize) -> Self {
        MorId(u32::try_from(index).expect("morphism index overflows u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const NO_MOR: MorId = MorId(u32::MAX);

/// A contiguous run of morphism ids, e.g. a hom-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hom {
    start: u32,
    end: u32,
}

impl Hom {
    pub fn len(&self) -> usize {
        (self.end - self.start) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, m: MorId) -> bool {
        self.start <= m.0 && m.0 < self.end
    }

    pub fn first(&self) -> Option<MorId> {
        (!self.is_empty()).then_some(MorId(self.start))
    }

    /// Position of `m` inside the range. Caller guarantees membership.
    pub fn offset(&self, m: MorId) -> usize {
        debug_assert!(self.contains(m));
        (m.0 - self.start) as usize
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = MorId> + ExactSizeIterator + Clone {
        (self.start..self.end).map(MorId)
    }
}

impl IntoIterator for Hom {
    type Item = MorId;
    type IntoIter = std::iter::Map<std::ops::Range<u32>, fn(u32) -> MorId>;

    fn into_iter(self) -> Self::IntoIter {
        (self.start..self.end).map(MorId as fn(u32) -> MorId)
    }
}

bitflags! {
    /// Classification of a single morphism.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
    pub struct MorphismClass: u8 {
        const MONO = 1;
        const EPI = 1 << 1;
        const ISO = 1 << 2;
        const SPLIT_MONO = 1 << 3;
        const SPLIT_EPI = 1 << 4;
        const REGULAR_EPI = 1 << 5;
        const EXTREMAL_EPI = 1 << 6;
    }
}

/// One violated law or malformed declaration found while building a category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyCategory,
    DuplicateId(String),
    UnknownObject(String),
    UnknownMorphism(String),
    MissingIdentity(String),
    DuplicateIdentity(String),
    IdentityNotEndo { object: String, morphism: String },
    NotComposable { g: String, f: String },
    ConflictingComposite { g: String, f: String },
    MissingComposite { g: String, f: String },
    CompositeOutOfHom { g: String, f: String, h: String },
    IdentityLawViolation(String),
    AssociativityViolation { h: String, g: String, f: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyCategory => write!(out, "category has no objects"),
            Violation::DuplicateId(n) => write!(out, "duplicate identifier {n}"),
            Violation::UnknownObject(n) => write!(out, "unknown object {n}"),
            Violation::UnknownMorphism(n) => write!(out, "unknown morphism {n}"),
            Violation::MissingIdentity(o) => write!(out, "object {o} has no identity"),
            Violation::DuplicateIdentity(o) => write!(out, "object {o} has more than one identity"),
            Violation::IdentityNotEndo { object, morphism } => {
                write!(
                    out,
                    "identity {morphism} of {object} is not an endomorphism of {object}"
                )
            }
            Violation::NotComposable { g, f } => {
                write!(out, "composite {g} * {f} declared but cod({f}) != dom({g})")
            }
            Violation::ConflictingComposite { g, f } => {
                write!(
                    out,
                    "composite {g} * {f} declared twice with different results"
                )
            }
            Violation::MissingComposite { g, f } => write!(out, "missing composite {g} * {f}"),
            Violation::CompositeOutOfHom { g, f, h } => {
                write!(
                    out,
                    "composite {g} * {f} = {h} lands outside hom(dom {f}, cod {g})"
                )
            }
            Violation::IdentityLawViolation(f) => write!(out, "identity law fails for {f}"),
            Violation::AssociativityViolation { h, g, f } => {
                write!(out, "associativity fails for ({h}, {g}, {f})")
            }
        }
    }
}

/// Every law or declaration violated by a category description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid category: {} violation(s), first: {}", .violations.len(), .violations[0])]
pub struct ValidationFailure {
    pub violations: Vec<Violation>,
}

/// A validated finite category. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    obj_names: Vec<String>,
    obj_lookup: HashMap<String, ObjId>,
    mor_names: Vec<String>,
    mor_lookup: HashMap<String, MorId>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    identity: Vec<MorId>,
    hom_offsets: Vec<u32>,
    incoming: Vec<Vec<MorId>>,
    comp_offsets: Vec<usize>,
    comp: Vec<MorId>,
    flags: Vec<MorphismClass>,
    inverse: Vec<Option<MorId>>,
    iso_class: Vec<u32>,
    iso_classes: Vec<Vec<ObjId>>,
}

/// Raw declarations handed to [`assemble`]; morphism endpoints and identities
/// are declaration indices.
pub(crate) struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, usize, usize)>,
    pub identities: Vec<Vec<usize>>,
}

/// Validate raw declarations and build the category. `composite(g, f)` returns
/// the declaration index of `g ∘ f`, or `None` when it was not supplied.
pub(crate) fn assemble(
    raw: RawCategory,
    composite: &dyn Fn(usize, usize) -> Option<usize>,
) -> Result<FinCategory, ValidationFailure> {
    let mut violations = Vec::new();
    let n = raw.objects.len();
    if n == 0 {
        violations.push(Violation::EmptyCategory);
    }

    let mut obj_lookup = HashMap::with_capacity(n);
    for (i, name) in raw.objects.iter().enumerate() {
        if obj_lookup.insert(name.clone(), ObjId::new(i)).is_some() {
            violations.push(Violation::DuplicateId(name.clone()));
        }
    }
    let mut seen_mor = HashMap::with_capacity(raw.morphisms.len());
    for (i, (name, _, _)) in raw.morphisms.iter().enumerate() {
        if seen_mor.insert(name.as_str(), i).is_some() {
            violations.push(Violation::DuplicateId(name.clone()));
        }
    }

    let mut decl_identity = vec![usize::MAX; n];
    for (o, ids) in raw.identities.iter().enumerate() {
        match ids.as_slice() {
            [] => violations.push(Violation::MissingIdentity(raw.objects[o].clone())),
            [m] => {
                let (name, d, c) = &raw.morphisms[*m];
                if *d != o || *c != o {
                    violations.push(Violation::IdentityNotEndo {
                        object: raw.objects[o].clone(),
                        morphism: name.clone(),
                    });
                } else {
                    decl_identity[o] = *m;
                }
            }
            _ => violations.push(Violation::DuplicateIdentity(raw.objects[o].clone())),
        }
    }
    if !violations.is_empty() {
        return Err(ValidationFailure { violations });
    }

    // Canonical numbering: by (dom, cod, declaration order).
    let mut order: Vec<usize> = (0..raw.morphisms.len()).collect();
    order.sort_by_key(|&i| (raw.morphisms[i].1, raw.morphisms[i].2, i));
    let mut decl_to_id = vec![NO_MOR; raw.morphisms.len()];
    for (id, &decl) in order.iter().enumerate() {
        decl_to_id[decl] = MorId::new(id);
    }
    let m_count = order.len();
    let mor_names: Vec<String> = order.iter().map(|&d| raw.morphisms[d].0.clone()).collect();
    let dom: Vec<ObjId> = order
        .iter()
        .map(|&d| ObjId::new(raw.morphisms[d].1))
        .collect();
    let cod: Vec<ObjId> = order
        .iter()
        .map(|&d| ObjId::new(raw.morphisms[d].2))
        .collect();
    let identity: Vec<MorId> = decl_identity.iter().map(|&d| decl_to_id[d]).collect();
    let mor_lookup: HashMap<String, MorId> = mor_names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), MorId::new(i)))
        .collect();

    let mut hom_offsets = vec![0u32; n * n + 1];
    for m in 0..m_count {
        hom_offsets[dom[m].index() * n + cod[m].index() + 1] += 1;
    }
    for i in 0..n * n {
        hom_offsets[i + 1] += hom_offsets[i];
    }
    let mut incoming = vec![Vec::new(); n];
    for m in 0..m_count {
        incoming[cod[m].index()].push(MorId::new(m));
    }

    let out_len = |o: ObjId| (hom_offsets[o.index() * n + n] - hom_offsets[o.index() * n]) as usize;
    let mut comp_offsets = Vec::with_capacity(m_count + 1);
    let mut total = 0usize;
    for m in 0..m_count {
        comp_offsets.push(total);
        total += out_len(cod[m]);
    }
    comp_offsets.push(total);
    let mut comp = vec![NO_MOR; total];
    for f in 0..m_count {
        let b = cod[f];
        let out_start = hom_offsets[b.index() * n];
        for (k, g) in (out_start..out_start + out_len(b) as u32).enumerate() {
            let g = g as usize;
            match composite(order[g], order[f]) {
                None => violations.push(Violation::MissingComposite {
                    g: mor_names[g].clone(),
                    f: mor_names[f].clone(),
                }),
                Some(h_decl) => {
                    let h = decl_to_id[h_decl];
                    if dom[h.index()] != dom[f] || cod[h.index()] != cod[g] {
                        violations.push(Violation::CompositeOutOfHom {
                            g: mor_names[g].clone(),
                            f: mor_names[f].clone(),
                            h: mor_names[h.index()].clone(),
                        });
                    } else {
                        comp[comp_offsets[f] + k] = h;
                    }
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(ValidationFailure { violations });
    }

    let mut cat = FinCategory {
        obj_names: raw.objects,
        obj_lookup,
        mor_names,
        mor_lookup,
        dom,
        cod,
        identity,
        hom_offsets,
        incoming,
        comp_offsets,
        comp,
        flags: Vec::new(),
        inverse: Vec::new(),
        iso_class: Vec::new(),
        iso_classes: Vec::new(),
    };
    cat.check_laws(&mut violations);
    if !violations.is_empty() {
        return Err(ValidationFailure { violations });
    }
    cat.derive_flags();
    Ok(cat)
}

impl FinCategory {
    fn check_laws(&self, violations: &mut Vec<Violation>) {
        for f in self.morphisms() {
            let left = self.compose(self.id(self.cod(f)), f);
            let right = self.compose(f, self.id(self.dom(f)));
            if left != f || right != f {
                violations.push(Violation::IdentityLawViolation(
                    self.mor_name(f).to_string(),
                ));
            }
        }
        for f in self.morphisms() {
            let b = self.cod(f);
            let row_f = self.row(f);
            let b_start = self.out_start(b);
            for g in self.out(b) {
                let gf = self.compose(g, f);
                let row_g = self.row(g);
                let row_gf = self.row(gf);
                let c_start = self.out_start(self.cod(g));
                for (k, &hg) in row_g.iter().enumerate() {
                    let h_gf = row_gf[k];
                    let hg_f = row_f[(hg.0 - b_start) as usize];
                    if h_gf != hg_f {
                        let h = MorId(c_start + k as u32);
                        violations.push(Violation::AssociativityViolation {
                            h: self.mor_name(h).to_string(),
                            g: self.mor_name(g).to_string(),
                            f: self.mor_name(f).to_string(),
                        });
                    }
                }
            }
        }
    }

    fn derive_flags(&mut self) {
        let m_count = self.mor_count();
        let mut stamp = vec![u32::MAX; m_count];
        let mut flags = vec![MorphismClass::empty(); m_count];
        let mut inverse = vec![None; m_count];
        for (mi, m) in self.morphisms().enumerate() {
            let (a, b) = (self.dom(m), self.cod(m));
            let mut class = MorphismClass::empty();
            let tag = mi as u32;

            let mut mono = true;
            'mono: for &u in &self.incoming[a.index()] {
                let h = self.compose(m, u);
                if stamp[h.index()] == tag {
                    mono = false;
                    break 'mono;
                }
                stamp[h.index()] = tag;
            }
            if mono {
                class |= MorphismClass::MONO;
            }
            // Second pass over a disjoint stamp space: reuse by flipping the tag.
            let tag = tag ^ 0x8000_0000;
            let mut epi = true;
            for v in self.out(b) {
                let h = self.compose(v, m);
                if stamp[h.index()] == tag {
                    epi = false;
                    break;
                }
                stamp[h.index()] = tag;
            }
            if epi {
                class |= MorphismClass::EPI;
            }

            let (id_a, id_b) = (self.id(a), self.id(b));
            for r in self.hom(b, a) {
                let left = self.compose(r, m) == id_a;
                let right = self.compose(m, r) == id_b;
                if left {
                    class |= MorphismClass::SPLIT_MONO;
                }
                if right {
                    class |= MorphismClass::SPLIT_EPI;
                }
                if left && right && inverse[mi].is_none() {
                    inverse[mi] = Some(r);
                    class |= MorphismClass::ISO;
                }
            }
            flags[mi] = class;
        }
        self.flags = flags;
        self.inverse = inverse;

        let n = self.obj_count();
        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<Vec<ObjId>> = Vec::new();
        for a in self.objects() {
            if class_of[a.index()] != u32::MAX {
                continue;
            }
            let idx = classes.len() as u32;
            let mut members = vec![a];
            class_of[a.index()] = idx;
            for b in self.objects().skip(a.index() + 1) {
                if class_of[b.index()] == u32::MAX
                    && self
                        .hom(a, b)
                        .iter()
                        .any(|m| self.inverse[m.index()].is_some())
                {
                    class_of[b.index()] = idx;
                    members.push(b);
                }
            }
            classes.push(members);
        }
        self.iso_class = class_of;
        self.iso_classes = classes;
    }

    fn out_start(&self, a: ObjId) -> u32 {
        self.hom_offsets[a.index() * self.obj_count()]
    }

    fn row(&self, f: MorId) -> &[MorId] {
        &self.comp[self.comp_offsets[f.index()]..self.comp_offsets[f.index() + 1]]
    }

    pub fn obj_count(&self) -> usize {
        self.obj_names.len()
    }

    pub fn mor_count(&self) -> usize {
        self.mor_names.len()
    }

    pub fn objects(&self) -> impl DoubleEndedIterator<Item = ObjId> + ExactSizeIterator + Clone {
        (0..self.obj_count()).map(ObjId::new)
    }

    pub fn morphisms(&self) -> impl DoubleEndedIterator<Item = MorId> + ExactSizeIterator + Clone {
        (0..self.mor_count()).map(MorId::new)
    }

    pub fn obj_name(&self, a: ObjId) -> &str {
        &self.obj_names[a.index()]
    }

    pub fn mor_name(&self, m: MorId) -> &str {
        &self.mor_names[m.index()]
    }

    pub fn obj_id(&self, name: &str) -> Option<ObjId> {
        self.obj_lookup.get(name).copied()
    }

    pub fn mor_id(&self, name: &str) -> Option<MorId> {
        self.mor_lookup.get(name).copied()
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.dom[m.index()]
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.cod[m.index()]
    }

    pub fn id(&self, a: ObjId) -> MorId {
        self.identity[a.index()]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identity[self.dom(m).index()] == m
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> Hom {
        let k = a.index() * self.obj_count() + b.index();
        Hom {
            start: self.hom_offsets[k],
            end: self.hom_offsets[k + 1],
        }
    }

    /// All morphisms with domain `a`.
    pub fn out(&self, a: ObjId) -> Hom {
        let n = self.obj_count();
        Hom {
            start: self.hom_offsets[a.index() * n],
            end: self.hom_offsets[a.index() * n + n],
        }
    }

    /// All morphisms with codomain `b`, ascending.
    pub fn incoming(&self, b: ObjId) -> &[MorId] {
        &self.incoming[b.index()]
    }

    /// `g ∘ f`. Panics in debug builds when `cod f != dom g`.
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        debug_assert_eq!(
            self.cod(f),
            self.dom(g),
            "composing non-composable morphisms"
        );
        let b_start = self.out_start(self.cod(f));
        self.comp[self.comp_offsets[f.index()] + (g.0 - b_start) as usize]
    }

    /// Mono, epi, iso and split flags (computed at build time). Regular and
    /// extremal epis are decided by [`crate::morphisms::morphism_class`].
    pub fn basic_class(&self, m: MorId) -> MorphismClass {
        self.flags[m.index()]
    }

    pub fn is_mono(&self, m: MorId) -> bool {
        self.flags[m.index()].contains(MorphismClass::MONO)
    }

    pub fn is_epi(&self, m: MorId) -> bool {
        self.flags[m.index()].contains(MorphismClass::EPI)
    }

    pub fn is_iso(&self, m: MorId) -> bool {
        self.inverse[m.index()].is_some()
    }

    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        self.inverse[m.index()]
    }

    pub fn isomorphic(&self, a: ObjId, b: ObjId) -> bool {
        self.iso_class[a.index()] == self.iso_class[b.index()]
    }

    pub fn iso_class_of(&self, a: ObjId) -> usize {
        self.iso_class[a.index()] as usize
    }

    /// Isomorphism classes, each ascending, ordered by smallest member.
    pub fn iso_classes(&self) -> &[Vec<ObjId>] {
        &self.iso_classes
    }

    /// Number of composable pairs, i.e. the size of the composition table.
    pub fn composable_pairs(&self) -> usize {
        self.comp.len()
    }

    /// The opposite category: same names, reversed arrows, `g^op ∘ f^op = (f ∘ g)^op`.
    pub fn opposite(&self) -> FinCategory {
        let n = self.obj_count();
        let raw = RawCategory {
            objects: self.obj_names.clone(),
            morphisms: self
                .morphisms()
                .map(|m| {
                    (
                        self.mor_name(m).to_string(),
                        self.cod(m).index(),
                        self.dom(m).index(),
                    )
                })
                .collect(),
            identities: (0..n).map(|a| vec![self.identity[a].index()]).collect(),
        };
        assemble(raw, &|g, f| {
            let (g, f) = (MorId::new(g), MorId::new(f));
            Some(self.compose(f, g).index())
        })
        .expect("opposite of a lawful category is lawful")
    }

    /// The full subcategory on `objs` (kept in the given order) together with
    /// the embedding of its morphisms into `self`.
    pub fn full_subcategory(&self, objs: &[ObjId]) -> (FinCategory, Vec<MorId>) {
        let mut local = vec![usize::MAX; self.obj_count()];
        for (i, &a) in objs.iter().enumerate() {
            local[a.index()] = i;
        }
        let mut embed = Vec::new();
        let mut local_mor = HashMap::new();
        for &a in objs {
            for &b in objs {
                for m in self.hom(a, b) {
                    local_mor.insert(m, embed.len());
                    embed.push(m);
                }
            }
        }
        let raw = RawCategory {
            objects: objs.iter().map(|&a| self.obj_name(a).to_string()).collect(),
            morphisms: embed
                .iter()
                .map(|&m| {
                    (
                        self.mor_name(m).to_string(),
                        local[self.dom(m).index()],
                        local[self.cod(m).index()],
                    )
                })
                .collect(),
            identities: objs.iter().map(|&a| vec![local_mor[&self.id(a)]]).collect(),
        };
        let sub = assemble(raw, &|g, f| {
            Some(local_mor[&self.compose(embed[g], embed[f])])
        })
        .expect("full subcategory of a lawful category is lawful");
        let embedding = sub
            .morphisms()
            .map(|m| self.mor_id(sub.mor_name(m)).unwrap())
            .collect();
        (sub, embedding)
    }
}

/// Incremental, name-based construction of a [`FinCategory`].
///
/// Composites whose left or right factor is a declared identity may be
/// omitted; they default to the identity law.
#[derive(Debug, Default, Clone)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    obj_index: HashMap<String, usize>,
    morphisms: Vec<(String, usize, usize)>,
    mor_index: HashMap<String, usize>,
    identities: Vec<Vec<usize>>,
    composites: HashMap<(usize, usize), usize>,
    violations: Vec<Violation>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str) -> &mut Self {
        if self.obj_index.contains_key(name) {
            self.violations
                .push(Violation::DuplicateId(name.to_string()));
        } else {
            self.obj_index.insert(name.to_string(), self.objects.len());
            self.objects.push(name.to_string());
            self.identities.push(Vec::new());
        }
        self
    }

    pub fn morphism(&mut self, name: &str, dom: &str, cod: &str) -> &mut Self {
        let d = self.lookup_obj(dom);
        let c = self.lookup_obj(cod);
        if self.mor_index.contains_key(name) {
            self.violations
                .push(Violation::DuplicateId(name.to_string()));
            return self;
        }
        if let (Some(d), Some(c)) = (d, c) {
            self.mor_index
                .insert(name.to_string(), self.morphisms.len());
            self.morphisms.push((name.to_string(), d, c));
        }
        self
    }

    pub fn identity(&mut self, object: &str, morphism: &str) -> &mut Self {
        if let (Some(o), Some(m)) = (self.lookup_obj(object), self.lookup_mor(morphism)) {
            if !self.identities[o].contains(&m) {
                self.identities[o].push(m);
            }
        }
        self
    }

    /// Declare `g ∘ f = h`.
    pub fn composite(&mut self, g: &str, f: &str, h: &str) -> &mut Self {
        let (Some(gi), Some(fi), Some(hi)) =
            (self.lookup_mor(g), self.lookup_mor(f), self.lookup_mor(h))
        else {
            return self;
        };
        if self.morphisms[fi].2 != self.morphisms[gi].1 {
            self.violations.push(Violation::NotComposable {
                g: g.to_string(),
                f: f.to_string(),
            });
            return self;
        }
        match self.composites.insert((gi, fi), hi) {
            Some(prev) if prev != hi => self.violations.push(Violation::ConflictingComposite {
                g: g.to_string(),
                f: f.to_string(),
            }),
            _ => {}
        }
        self
    }

    fn lookup_obj(&mut self, name: &str) -> Option<usize> {
        let found = self.obj_index.get(name).copied();
        if found.is_none() {
            self.violations
                .push(Violation::UnknownObject(name.to_string()));
        }
        found
    }

    fn lookup_mor(&mut self, name: &str) -> Option<usize> {
        let found = self.mor_index.get(name).copied();
        if found.is_none() {
            self.violations
                .push(Violation::UnknownMorphism(name.to_string()));
        }
        found
    }

    pub fn build(self) -> Result<FinCategory, ValidationFailure> {
        if !self.violations.is_empty() {
            return Err(ValidationFailure {
                violations: self.violations,
            });
        }
        let is_identity: Vec<bool> = {
            let mut v = vec![false; self.morphisms.len()];
            for ids in &self.identities {
                for &m in ids {
                    v[m] = true;
                }
            }
            v
        };
        let composites = self.composites;
        let raw = RawCategory {
            objects: self.objects,
            morphisms: self.morphisms,
            identities: self.identities,
        };
        assemble(raw, &|g, f| {
            composites.get(&(g, f)).copied().or(if is_identity[g] {
                Some(f)
            } else if is_identity[f] {
                Some(g)
            } else {
                None
            })
        })
    }
}
