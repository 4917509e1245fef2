//! Search for short preexact sequences `T → X → F` and verification that the
//! canonical choice is unique up to unique isomorphism.

use crate::category::{FinCategory, MorId, ObjId};
use crate::ideal::{preexact_pairs_among, preexact_witness, FullSub, PairFailure, TrivialIdeal};

use super::Decomposition;

/// Number of failed candidate pairs recorded in a transcript.
pub const TRANSCRIPT_LIMIT: usize = 8;

/// One failed candidate pair and the first universal property it violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub eps: MorId,
    pub eta: MorId,
    pub failure: PairFailure,
}

/// Record of an unsuccessful search at one object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTranscript {
    pub object: ObjId,
    /// Morphisms from torsion objects into the object.
    pub eps_candidates: usize,
    /// Morphisms from the object to free objects.
    pub eta_candidates: usize,
    /// The first failed pairs in lexicographic order.
    pub entries: Vec<TranscriptEntry>,
}

impl SearchTranscript {
    pub fn describe(&self, c: &FinCategory) -> String {
        let mut s = format!(
            "{} candidate pairs ({} x {})",
            self.eps_candidates * self.eta_candidates,
            self.eps_candidates,
            self.eta_candidates
        );
        for e in &self.entries {
            let (side, f) = match e.failure {
                PairFailure::Prekernel(f) => ("prekernel", f),
                PairFailure::Precokernel(f) => ("precokernel", f),
            };
            s.push_str(&format!(
                "; ({}, {}): {side} fails, {}",
                c.mor_name(e.eps),
                c.mor_name(e.eta),
                f.describe(c)
            ));
        }
        s
    }
}

fn candidates(
    c: &FinCategory,
    torsion: &FullSub<'_>,
    free: &FullSub<'_>,
    x: ObjId,
) -> (Vec<MorId>, Vec<MorId>) {
    let eps = torsion
        .objects()
        .iter()
        .flat_map(|&t| c.hom(t, x).iter())
        .collect::<Vec<_>>();
    let eta = free
        .objects()
        .iter()
        .flat_map(|&f| c.hom(x, f).iter())
        .collect::<Vec<_>>();
    let mut eps = eps;
    let mut eta = eta;
    eps.sort();
    eta.sort();
    (eps, eta)
}

/// The canonical sequence at `x`: identity legs where the object allows them,
/// otherwise the lexicographically least pair.
pub(crate) fn find_sequence(
    ideal: &TrivialIdeal<'_>,
    torsion: &FullSub<'_>,
    free: &FullSub<'_>,
    x: ObjId,
) -> Option<Decomposition> {
    let c = ideal.category();
    let (eps, eta) = candidates(c, torsion, free, x);
    let id = [c.id(x)];
    let normalized: (&[MorId], &[MorId]) = match (torsion.contains(x), free.contains(x)) {
        (true, true) => (&id, &id),
        (true, false) => (&id, &eta),
        (false, true) => (&eps, &id),
        (false, false) => (&eps, &eta),
    };
    let hit = preexact_pairs_among(ideal, x, normalized.0, normalized.1, 1)
        .into_iter()
        .next()
        .or_else(|| {
            preexact_pairs_among(ideal, x, &eps, &eta, 1)
                .into_iter()
                .next()
        })?;
    let (e, h) = hit;
    // The count filter is only a shortcut; certify from scratch.
    preexact_witness(ideal, e, h).ok()?;
    Some(Decomposition {
        object: x,
        torsion: c.dom(e),
        eps: e,
        eta: h,
        free: c.cod(h),
    })
}

pub(crate) fn transcript(
    ideal: &TrivialIdeal<'_>,
    torsion: &FullSub<'_>,
    free: &FullSub<'_>,
    x: ObjId,
) -> SearchTranscript {
    let c = ideal.category();
    let (eps, eta) = candidates(c, torsion, free, x);
    let mut entries = Vec::new();
    'outer: for &e in &eps {
        for &h in &eta {
            if entries.len() == TRANSCRIPT_LIMIT {
                break 'outer;
            }
            if let Err(failure) = preexact_witness(ideal, e, h) {
                entries.push(TranscriptEntry {
                    eps: e,
                    eta: h,
                    failure,
                });
            }
        }
    }
    SearchTranscript {
        object: x,
        eps_candidates: eps.len(),
        eta_candidates: eta.len(),
        entries,
    }
}

/// Every short preexact sequence at `x` with torsion and free ends.
pub fn all_sequences(
    ideal: &TrivialIdeal<'_>,
    torsion: &FullSub<'_>,
    free: &FullSub<'_>,
    x: ObjId,
) -> Vec<(MorId, MorId)> {
    let (eps, eta) = candidates(ideal.category(), torsion, free, x);
    preexact_pairs_among(ideal, x, &eps, &eta, usize::MAX)
}

/// Morphisms `α: t → t'` with `ε' ∘ α = ε` and `σ: f → f'` with `σ ∘ η = η'`
/// between two sequences through the same object.
pub fn sequence_links(
    c: &FinCategory,
    a: &Decomposition,
    b: &Decomposition,
) -> (Vec<MorId>, Vec<MorId>) {
    let alphas = c
        .hom(a.torsion, b.torsion)
        .iter()
        .filter(|&u| c.compose(b.eps, u) == a.eps)
        .collect();
    let sigmas = c
        .hom(a.free, b.free)
        .iter()
        .filter(|&s| c.compose(s, a.eta) == b.eta)
        .collect();
    (alphas, sigmas)
}

/// Both sequences run through the same object and are linked by exactly one
/// morphism on each side, both isomorphisms.
pub fn same_up_to_unique_iso(c: &FinCategory, a: &Decomposition, b: &Decomposition) -> bool {
    let (alphas, sigmas) = sequence_links(c, a, b);
    let ok = |v: &[MorId]| v.len() == 1 && c.is_iso(v[0]);
    a.object == b.object && ok(&alphas) && ok(&sigmas)
}

/// Checks that every sequence at every object is linked to the canonical one
/// by exactly one morphism on each side, and that both are isomorphisms.
pub fn uniqueness_violations(
    ideal: &TrivialIdeal<'_>,
    torsion: &FullSub<'_>,
    free: &FullSub<'_>,
    decomp: &[Decomposition],
) -> Vec<String> {
    let c = ideal.category();
    let mut out = Vec::new();
    for d in decomp {
        for (e2, h2) in all_sequences(ideal, torsion, free, d.object) {
            let other = Decomposition {
                object: d.object,
                torsion: c.dom(e2),
                eps: e2,
                eta: h2,
                free: c.cod(h2),
            };
            if !same_up_to_unique_iso(c, d, &other) {
                let (alphas, sigmas) = sequence_links(c, d, &other);
                out.push(format!(
                    "sequence ({}, {}) at {} is linked to the canonical one by {} and {} morphisms",
                    c.mor_name(e2),
                    c.mor_name(h2),
                    c.obj_name(d.object),
                    alphas.len(),
                    sigmas.len()
                ));
            }
        }
    }
    out
}
