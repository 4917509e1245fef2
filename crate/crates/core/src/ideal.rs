//! Full subcategories, the ideal of morphisms factoring through a class of
//! trivial objects, and relative (pre)kernels and (pre)cokernels.

use std::fmt;

use thiserror::Error;

use crate::category::{FinCategory, Hom, MorId, ObjId};

/// A set of objects of a fixed category, viewed as a full subcategory.
#[derive(Debug, Clone)]
pub struct FullSub<'c> {
    category: &'c FinCategory,
    member: Vec<bool>,
    objects: Vec<ObjId>,
}

impl PartialEq for FullSub<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.category, other.category) && self.member == other.member
    }
}

impl Eq for FullSub<'_> {}

impl<'c> FullSub<'c> {
    pub fn new(category: &'c FinCategory, objects: impl IntoIterator<Item = ObjId>) -> Self {
        let mut member = vec![false; category.obj_count()];
        for a in objects {
            member[a.index()] = true;
        }
        Self::from_mask(category, member)
    }

    pub fn from_mask(category: &'c FinCategory, member: Vec<bool>) -> Self {
        assert_eq!(member.len(), category.obj_count());
        let objects = category.objects().filter(|a| member[a.index()]).collect();
        FullSub {
            category,
            member,
            objects,
        }
    }

    pub fn all(category: &'c FinCategory) -> Self {
        Self::from_mask(category, vec![true; category.obj_count()])
    }

    pub fn category(&self) -> &'c FinCategory {
        self.category
    }

    pub fn contains(&self, a: ObjId) -> bool {
        self.member[a.index()]
    }

    /// Members in increasing id order.
    pub fn objects(&self) -> &[ObjId] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn same_category(&self, other: &FullSub<'_>) -> bool {
        std::ptr::eq(self.category, other.category)
    }

    /// Closed under isomorphism.
    pub fn is_replete(&self) -> bool {
        self.objects.iter().all(|&a| {
            self.category.iso_classes()[self.category.iso_class_of(a)]
                .iter()
                .all(|&b| self.contains(b))
        })
    }

    pub fn replete_closure(&self) -> FullSub<'c> {
        let c = self.category;
        let mut member = self.member.clone();
        for &a in &self.objects {
            for &b in &c.iso_classes()[c.iso_class_of(a)] {
                member[b.index()] = true;
            }
        }
        Self::from_mask(c, member)
    }

    pub fn intersection(&self, other: &FullSub<'c>) -> FullSub<'c> {
        assert!(
            self.same_category(other),
            "subcategories of different categories"
        );
        let member = self
            .member
            .iter()
            .zip(&other.member)
            .map(|(a, b)| *a && *b)
            .collect();
        Self::from_mask(self.category, member)
    }

    pub fn is_subset(&self, other: &FullSub<'_>) -> bool {
        self.objects.iter().all(|&a| other.contains(a))
    }

    pub fn names(&self) -> Vec<&'c str> {
        self.objects
            .iter()
            .map(|&a| self.category.obj_name(a))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("the class of trivial objects is empty")]
    EmptyZ,
    #[error("{f} and {g} are not composable")]
    NotComposable { f: String, g: String },
    #[error("{0} is not an isomorphism")]
    NotIso(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("{0} has no prekernel")]
    NoPrekernel(String),
    #[error("{0} is not a precokernel of any morphism")]
    NotAPrecokernel(String),
    #[error("({f}, {g}) is not preexact")]
    NotPreexact { f: String, g: String },
}

/// One factorization `morphism = right ∘ left` through `through`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrivialWitness {
    pub morphism: MorId,
    pub through: ObjId,
    pub left: MorId,
    pub right: MorId,
}

/// The ideal of morphisms that factor through some object of a class `zee`.
#[derive(Debug, Clone)]
pub struct TrivialIdeal<'c> {
    zee: FullSub<'c>,
    witness: Vec<Option<TrivialWitness>>,
}

impl<'c> TrivialIdeal<'c> {
    pub fn new(zee: FullSub<'c>) -> Result<Self, IdealError> {
        if zee.is_empty() {
            return Err(IdealError::EmptyZ);
        }
        Ok(Self::possibly_empty(zee))
    }

    /// As [`TrivialIdeal::new`], but an empty class yields the empty ideal.
    pub(crate) fn possibly_empty(zee: FullSub<'c>) -> Self {
        let c = zee.category();
        let mut witness: Vec<Option<TrivialWitness>> = vec![None; c.mor_count()];
        // Ascending z, then left, then right: the first hit is the smallest.
        for &z in zee.objects() {
            let mut incoming = c.incoming(z).to_vec();
            incoming.sort();
            for &left in &incoming {
                for right in c.out(z) {
                    let m = c.compose(right, left);
                    if witness[m.index()].is_none() {
                        witness[m.index()] = Some(TrivialWitness {
                            morphism: m,
                            through: z,
                            left,
                            right,
                        });
                    }
                }
            }
        }
        TrivialIdeal { zee, witness }
    }

    pub fn category(&self) -> &'c FinCategory {
        self.zee.category()
    }

    pub fn zee(&self) -> &FullSub<'c> {
        &self.zee
    }

    pub fn is_trivial(&self, m: MorId) -> bool {
        self.witness[m.index()].is_some()
    }

    pub fn witness(&self, m: MorId) -> Option<TrivialWitness> {
        self.witness[m.index()]
    }

    pub fn trivial_hom(&self, a: ObjId, b: ObjId) -> Vec<TrivialWitness> {
        self.category()
            .hom(a, b)
            .iter()
            .filter_map(|m| self.witness(m))
            .collect()
    }
}

/// The trivial morphisms `a → b`, each with its smallest factorization.
pub fn trivial_hom(
    zee: &FullSub<'_>,
    a: ObjId,
    b: ObjId,
) -> Result<Vec<TrivialWitness>, IdealError> {
    Ok(TrivialIdeal::new(zee.clone())?.trivial_hom(a, b))
}

/// Orientation of a universal-property search: `Pre` works with arrows into
/// the domain (prekernels), `Co` is the same search in the opposite category.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    Pre,
    Co,
}

impl Side {
    fn hom(self, c: &FinCategory, x: ObjId, y: ObjId) -> Hom {
        match self {
            Side::Pre => c.hom(x, y),
            Side::Co => c.hom(y, x),
        }
    }

    fn comp(self, c: &FinCategory, g: MorId, f: MorId) -> MorId {
        match self {
            Side::Pre => c.compose(g, f),
            Side::Co => c.compose(f, g),
        }
    }

    fn src(self, c: &FinCategory, m: MorId) -> ObjId {
        match self {
            Side::Pre => c.dom(m),
            Side::Co => c.cod(m),
        }
    }

    fn tgt(self, c: &FinCategory, m: MorId) -> ObjId {
        match self {
            Side::Pre => c.cod(m),
            Side::Co => c.dom(m),
        }
    }

    fn is_mono(self, c: &FinCategory, m: MorId) -> bool {
        match self {
            Side::Pre => c.is_mono(m),
            Side::Co => c.is_epi(m),
        }
    }
}

/// Why a candidate fails a universal property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpFailure {
    NotComposable,
    /// The composite of the candidate with the morphism is not trivial.
    NotTrivial {
        composite: MorId,
    },
    /// A test morphism that should factor does not.
    NoMediator {
        test: MorId,
    },
    /// A test morphism factors in several ways.
    ManyMediators {
        test: MorId,
        count: usize,
    },
}

impl UpFailure {
    pub fn describe(&self, c: &FinCategory) -> String {
        match *self {
            UpFailure::NotComposable => "not composable".to_string(),
            UpFailure::NotTrivial { composite } => {
                format!("composite {} is not trivial", c.mor_name(composite))
            }
            UpFailure::NoMediator { test } => format!("{} has no mediator", c.mor_name(test)),
            UpFailure::ManyMediators { test, count } => {
                format!("{} has {count} mediators", c.mor_name(test))
            }
        }
    }
}

/// Certificate that `arrow` is a prekernel of `of`: every `(λ, λ')` with
/// `λ = arrow ∘ λ'`, listing every λ with `of ∘ λ` trivial exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrekernelCert {
    pub of: MorId,
    pub arrow: MorId,
    pub mediators: Vec<(MorId, MorId)>,
}

/// Certificate that `arrow` is a precokernel of `of`: every `(μ, μ')` with
/// `μ = μ' ∘ arrow`, listing every μ with `μ ∘ of` trivial exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecokernelCert {
    pub of: MorId,
    pub arrow: MorId,
    pub mediators: Vec<(MorId, MorId)>,
}

fn universal_cert(
    ideal: &TrivialIdeal<'_>,
    side: Side,
    f: MorId,
    e: MorId,
) -> Result<Vec<(MorId, MorId)>, UpFailure> {
    let c = ideal.category();
    if side.tgt(c, e) != side.src(c, f) {
        return Err(UpFailure::NotComposable);
    }
    let composite = side.comp(c, f, e);
    if !ideal.is_trivial(composite) {
        return Err(UpFailure::NotTrivial { composite });
    }
    let (a, x) = (side.src(c, f), side.src(c, e));
    let mut mediators = Vec::new();
    for y in c.objects() {
        let tests = side.hom(c, y, a);
        let mut count = vec![0usize; tests.len()];
        let mut first = vec![None; tests.len()];
        for l1 in side.hom(c, y, x) {
            let k = tests.offset(side.comp(c, e, l1));
            count[k] += 1;
            first[k].get_or_insert(l1);
        }
        for (k, l) in tests.iter().enumerate() {
            // By the ideal property every λ that factors through e is a test.
            if !ideal.is_trivial(side.comp(c, f, l)) {
                continue;
            }
            match count[k] {
                0 => return Err(UpFailure::NoMediator { test: l }),
                1 => mediators.push((l, first[k].unwrap())),
                n => return Err(UpFailure::ManyMediators { test: l, count: n }),
            }
        }
    }
    Ok(mediators)
}

/// Certify `e` as a prekernel of `f`, or report the first failure.
pub fn prekernel_cert(
    ideal: &TrivialIdeal<'_>,
    f: MorId,
    e: MorId,
) -> Result<PrekernelCert, UpFailure> {
    universal_cert(ideal, Side::Pre, f, e).map(|mediators| PrekernelCert {
        of: f,
        arrow: e,
        mediators,
    })
}

/// Certify `p` as a precokernel of `f`, or report the first failure.
pub fn precokernel_cert(
    ideal: &TrivialIdeal<'_>,
    f: MorId,
    p: MorId,
) -> Result<PrecokernelCert, UpFailure> {
    universal_cert(ideal, Side::Co, f, p).map(|mediators| PrecokernelCert {
        of: f,
        arrow: p,
        mediators,
    })
}

impl PrekernelCert {
    /// Re-check the certificate without any search.
    pub fn verify(&self, ideal: &TrivialIdeal<'_>) -> bool {
        verify_cert(ideal, Side::Pre, self.of, self.arrow, &self.mediators)
    }
}

impl PrecokernelCert {
    pub fn verify(&self, ideal: &TrivialIdeal<'_>) -> bool {
        verify_cert(ideal, Side::Co, self.of, self.arrow, &self.mediators)
    }
}

fn verify_cert(
    ideal: &TrivialIdeal<'_>,
    side: Side,
    f: MorId,
    e: MorId,
    mediators: &[(MorId, MorId)],
) -> bool {
    let c = ideal.category();
    if side.tgt(c, e) != side.src(c, f) || !ideal.is_trivial(side.comp(c, f, e)) {
        return false;
    }
    let a = side.src(c, f);
    let tests: Vec<MorId> = c
        .objects()
        .flat_map(|y| side.hom(c, y, a).iter())
        .filter(|&l| ideal.is_trivial(side.comp(c, f, l)))
        .collect();
    let listed: Vec<MorId> = mediators.iter().map(|&(l, _)| l).collect();
    if listed != tests {
        return false;
    }
    let factors = mediators.iter().all(|&(l, l1)| side.comp(c, e, l1) == l);
    // Uniqueness of each mediator is cancellability of e.
    factors && side.is_mono(c, e)
}

/// Objects `x` with `|hom(y, x)| = |{λ: y → a | f∘λ trivial}|` for every y.
fn count_matched_sources(ideal: &TrivialIdeal<'_>, side: Side, f: MorId) -> Vec<bool> {
    let c = ideal.category();
    let a = side.src(c, f);
    let tests: Vec<usize> = c
        .objects()
        .map(|y| {
            side.hom(c, y, a)
                .iter()
                .filter(|&l| ideal.is_trivial(side.comp(c, f, l)))
                .count()
        })
        .collect();
    c.objects()
        .map(|x| {
            c.objects()
                .all(|y| side.hom(c, y, x).len() == tests[y.index()])
        })
        .collect()
}

/// Candidates for a universal arrow: tests whose source passes the count
/// test. A universal arrow makes λ' ↦ e∘λ' a bijection onto the tests, so
/// nothing is lost; each survivor is still certified by full search.
fn universal_candidates(ideal: &TrivialIdeal<'_>, side: Side, f: MorId) -> Vec<MorId> {
    let c = ideal.category();
    let a = side.src(c, f);
    let matched = count_matched_sources(ideal, side, f);
    c.objects()
        .filter(|x| matched[x.index()])
        .flat_map(|x| side.hom(c, x, a).iter())
        .filter(|&e| ideal.is_trivial(side.comp(c, f, e)))
        .collect()
}

/// All prekernels of `f`, ordered by arrow.
pub fn prekernels(ideal: &TrivialIdeal<'_>, f: MorId) -> Vec<PrekernelCert> {
    universal_candidates(ideal, Side::Pre, f)
        .into_iter()
        .filter_map(|e| prekernel_cert(ideal, f, e).ok())
        .collect()
}

/// All precokernels of `f`, ordered by arrow.
pub fn precokernels(ideal: &TrivialIdeal<'_>, f: MorId) -> Vec<PrecokernelCert> {
    universal_candidates(ideal, Side::Co, f)
        .into_iter()
        .filter_map(|p| precokernel_cert(ideal, f, p).ok())
        .collect()
}

/// Every `u` with `b.arrow ∘ u = a.arrow`.
pub fn prekernel_links(c: &FinCategory, a: &PrekernelCert, b: &PrekernelCert) -> Vec<MorId> {
    c.hom(c.dom(a.arrow), c.dom(b.arrow))
        .iter()
        .filter(|&u| c.compose(b.arrow, u) == a.arrow)
        .collect()
}

/// Every `v` with `v ∘ a.arrow = b.arrow`.
pub fn precokernel_links(c: &FinCategory, a: &PrecokernelCert, b: &PrecokernelCert) -> Vec<MorId> {
    c.hom(c.cod(a.arrow), c.cod(b.arrow))
        .iter()
        .filter(|&v| c.compose(v, a.arrow) == b.arrow)
        .collect()
}

/// `f` is a prekernel of `g` and `g` a precokernel of `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreexactWitness {
    pub f: MorId,
    pub g: MorId,
    pub prekernel: PrekernelCert,
    pub precokernel: PrecokernelCert,
}

impl PreexactWitness {
    pub fn verify(&self, ideal: &TrivialIdeal<'_>) -> bool {
        self.prekernel.of == self.g
            && self.prekernel.arrow == self.f
            && self.precokernel.of == self.f
            && self.precokernel.arrow == self.g
            && self.prekernel.verify(ideal)
            && self.precokernel.verify(ideal)
    }
}

fn not_composable(c: &FinCategory, f: MorId, g: MorId) -> IdealError {
    IdealError::NotComposable {
        f: c.mor_name(f).to_string(),
        g: c.mor_name(g).to_string(),
    }
}

/// Witness for `(f, g)` being short preexact, if it is.
pub fn is_preexact(
    ideal: &TrivialIdeal<'_>,
    f: MorId,
    g: MorId,
) -> Result<Option<PreexactWitness>, IdealError> {
    let c = ideal.category();
    if c.cod(f) != c.dom(g) {
        return Err(not_composable(c, f, g));
    }
    Ok(preexact_witness(ideal, f, g).ok())
}

/// Which of the two universal properties fails first, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairFailure {
    Prekernel(UpFailure),
    Precokernel(UpFailure),
}

pub(crate) fn preexact_witness(
    ideal: &TrivialIdeal<'_>,
    f: MorId,
    g: MorId,
) -> Result<PreexactWitness, PairFailure> {
    let prekernel = prekernel_cert(ideal, g, f).map_err(PairFailure::Prekernel)?;
    let precokernel = precokernel_cert(ideal, f, g).map_err(PairFailure::Precokernel)?;
    Ok(PreexactWitness {
        f,
        g,
        prekernel,
        precokernel,
    })
}

/// Re-verified witness for `(f ∘ alpha, beta ∘ g)`.
pub fn transport_preexact(
    ideal: &TrivialIdeal<'_>,
    w: &PreexactWitness,
    alpha: MorId,
    beta: MorId,
) -> Result<PreexactWitness, IdealError> {
    let c = ideal.category();
    for m in [alpha, beta] {
        if !c.is_iso(m) {
            return Err(IdealError::NotIso(c.mor_name(m).to_string()));
        }
    }
    if c.cod(alpha) != c.dom(w.f) {
        return Err(not_composable(c, alpha, w.f));
    }
    if c.cod(w.g) != c.dom(beta) {
        return Err(not_composable(c, w.g, beta));
    }
    let (f, g) = (c.compose(w.f, alpha), c.compose(beta, w.g));
    preexact_witness(ideal, f, g).map_err(|_| IdealError::NotPreexact {
        f: c.mor_name(f).to_string(),
        g: c.mor_name(g).to_string(),
    })
}

/// Outcome of the triviality/iso equivalences for a composable pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrivialityIso {
    /// When g is a precokernel of f: (f trivial, g iso).
    pub precokernel_side: Option<(bool, bool)>,
    /// When f is a prekernel of g: (g trivial, f iso).
    pub prekernel_side: Option<(bool, bool)>,
}

impl TrivialityIso {
    /// Every applicable equivalence holds.
    pub fn holds(&self) -> bool {
        [self.precokernel_side, self.prekernel_side]
            .iter()
            .flatten()
            .all(|(trivial, iso)| trivial == iso)
    }
}

/// f trivial ⟺ g iso when g is a precokernel of f; g trivial ⟺ f iso when f
/// is a prekernel of g.
pub fn triviality_iso(
    ideal: &TrivialIdeal<'_>,
    f: MorId,
    g: MorId,
) -> Result<TrivialityIso, IdealError> {
    let c = ideal.category();
    if c.cod(f) != c.dom(g) {
        return Err(not_composable(c, f, g));
    }
    let precokernel_side = precokernel_cert(ideal, f, g)
        .ok()
        .map(|_| (ideal.is_trivial(f), c.is_iso(g)));
    let prekernel_side = prekernel_cert(ideal, g, f)
        .ok()
        .map(|_| (ideal.is_trivial(g), c.is_iso(f)));
    if precokernel_side.is_none() && prekernel_side.is_none() {
        return Err(IdealError::HypothesisNotMet(format!(
            "{} is not a precokernel of {} and {} is not a prekernel of {}",
            c.mor_name(g),
            c.mor_name(f),
            c.mor_name(f),
            c.mor_name(g)
        )));
    }
    Ok(TrivialityIso {
        precokernel_side,
        prekernel_side,
    })
}

/// For a precokernel `p`, its smallest prekernel `e` and the witness that
/// `(e, p)` is short preexact.
pub fn coker_of_its_kernel(
    ideal: &TrivialIdeal<'_>,
    p: MorId,
) -> Result<PreexactWitness, IdealError> {
    let c = ideal.category();
    let b = c.dom(p);
    let is_precokernel = c
        .objects()
        .flat_map(|x| c.hom(x, b).iter())
        .any(|q| precokernel_cert(ideal, q, p).is_ok());
    if !is_precokernel {
        return Err(IdealError::NotAPrecokernel(c.mor_name(p).to_string()));
    }
    let kernel = prekernels(ideal, p)
        .into_iter()
        .next()
        .ok_or_else(|| IdealError::NoPrekernel(c.mor_name(p).to_string()))?;
    preexact_witness(ideal, kernel.arrow, p).map_err(|_| IdealError::NotPreexact {
        f: c.mor_name(kernel.arrow).to_string(),
        g: c.mor_name(p).to_string(),
    })
}

/// Count vectors used to pair candidates without running full certificates.
struct Profile {
    /// `|hom(y, source)|` for a left leg, `|hom(target, y)|` for a right leg.
    hom_counts: Vec<u32>,
    /// Number of tests the leg admits, per object y.
    test_counts: Vec<u32>,
}

fn profile(ideal: &TrivialIdeal<'_>, side: Side, leg: MorId, x: ObjId) -> Profile {
    // For a right leg η (Side::Pre): tests are λ: y → x with η∘λ trivial and
    // hom counts are |hom(cod η, y)|, matched by the left leg's dual profile.
    let c = ideal.category();
    let far = side.tgt(c, leg);
    let hom_counts = c
        .objects()
        .map(|y| side.hom(c, far, y).len() as u32)
        .collect();
    let test_counts = c
        .objects()
        .map(|y| {
            side.hom(c, y, x)
                .iter()
                .filter(|&l| ideal.is_trivial(side.comp(c, leg, l)))
                .count() as u32
        })
        .collect();
    Profile {
        hom_counts,
        test_counts,
    }
}

/// All short preexact pairs `(ε, η)` through `x` drawn from the given
/// candidates, in lexicographic order; stops after `limit` hits.
pub(crate) fn preexact_pairs_among(
    ideal: &TrivialIdeal<'_>,
    x: ObjId,
    eps: &[MorId],
    eta: &[MorId],
    limit: usize,
) -> Vec<(MorId, MorId)> {
    let c = ideal.category();
    let eps: Vec<MorId> = eps.iter().copied().filter(|&e| c.is_mono(e)).collect();
    let eta: Vec<MorId> = eta.iter().copied().filter(|&h| c.is_epi(h)).collect();
    // ε's profile: hom counts |hom(y, dom ε)|, tests μ: x → y with μ∘ε trivial.
    let eps_profiles: Vec<Profile> = eps
        .iter()
        .map(|&e| profile(ideal, Side::Co, e, x))
        .collect();
    let eta_profiles: Vec<Profile> = eta
        .iter()
        .map(|&h| profile(ideal, Side::Pre, h, x))
        .collect();
    let mut found = Vec::new();
    for (i, &e) in eps.iter().enumerate() {
        for (j, &h) in eta.iter().enumerate() {
            if eps_profiles[i].hom_counts == eta_profiles[j].test_counts
                && eta_profiles[j].hom_counts == eps_profiles[i].test_counts
                && ideal.is_trivial(c.compose(h, e))
            {
                found.push((e, h));
                if found.len() == limit {
                    return found;
                }
            }
        }
    }
    found
}

/// All short preexact pairs `A → x → B` with `A ∈ left` and `B ∈ right`.
pub fn preexact_pairs(
    ideal: &TrivialIdeal<'_>,
    x: ObjId,
    left: &FullSub<'_>,
    right: &FullSub<'_>,
) -> Vec<(MorId, MorId)> {
    let c = ideal.category();
    let eps: Vec<MorId> = left
        .objects()
        .iter()
        .flat_map(|&a| c.hom(a, x).iter())
        .collect();
    let eta: Vec<MorId> = right
        .objects()
        .iter()
        .flat_map(|&b| c.hom(x, b).iter())
        .collect();
    preexact_pairs_among(ideal, x, &eps, &eta, usize::MAX)
}

impl fmt::Display for TrivialWitness {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "#{} = #{} * #{} through object #{}",
            self.morphism.index(),
            self.right.index(),
            self.left.index(),
            self.through.index()
        )
    }
}
