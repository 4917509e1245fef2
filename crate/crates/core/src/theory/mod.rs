//! Verification of pretorsion theories and everything derived from a verified
//! one: canonical decompositions, the torsion and free functors, the
//! comparison transformation and the closure properties.

mod audit;
mod closure;
mod decompose;
mod functors;

use std::fmt;

use thiserror::Error;

use crate::category::{FinCategory, MorId, ObjId};
use crate::functor::{Functor, NatTrans};
use crate::ideal::{FullSub, PreexactWitness, TrivialIdeal};

pub use audit::{audit, Audit, AuditEntry};
pub use closure::{
    closure_report, perp_class, reflection, retract_violation, z_normal_epireflective_check, Claim,
    ClaimStatus, ClosureReport, PerpClass, ZNormalVerdict,
};
pub use decompose::{
    all_sequences, same_up_to_unique_iso, sequence_links, uniqueness_violations, SearchTranscript,
    TranscriptEntry,
};
pub use functors::{characterize, zeta, Characterization, Which, Zeta};

/// The canonical short preexact sequence `torsion → object → free`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub object: ObjId,
    pub torsion: ObjId,
    pub eps: MorId,
    pub eta: MorId,
    pub free: ObjId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PretorsionError {
    #[error("torsion and free classes live in different categories")]
    MismatchedCategories,
    #[error("{which} class is not closed under isomorphism; missing {missing:?}")]
    NotReplete {
        which: &'static str,
        missing: Vec<String>,
    },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("{side} image of {morphism} has {count} candidate mediators")]
    MediatorNotUnique {
        morphism: String,
        side: &'static str,
        count: usize,
    },
}

/// One attempted factorization of a morphism through a trivial object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorAttempt {
    pub through: ObjId,
    pub left_options: usize,
    pub right_options: usize,
}

/// Why a candidate pair is not a pretorsion theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    /// A morphism from a torsion to a free object that does not factor
    /// through the intersection.
    NonTrivialMorphism {
        morphism: MorId,
        attempts: Vec<FactorAttempt>,
    },
    /// An object with no short preexact sequence from the torsion class to
    /// the free class.
    NoPreexactSequence {
        object: ObjId,
        transcript: SearchTranscript,
    },
}

impl Counterexample {
    pub fn describe(&self, c: &FinCategory) -> String {
        match self {
            Counterexample::NonTrivialMorphism { morphism, attempts } => {
                let mut s = format!(
                    "{}: {} -> {} does not factor through the intersection",
                    c.mor_name(*morphism),
                    c.obj_name(c.dom(*morphism)),
                    c.obj_name(c.cod(*morphism))
                );
                for a in attempts {
                    s.push_str(&format!(
                        "; via {}: {} left x {} right, no composite matches",
                        c.obj_name(a.through),
                        a.left_options,
                        a.right_options
                    ));
                }
                s
            }
            Counterexample::NoPreexactSequence { object, transcript } => {
                format!(
                    "{} has no preexact sequence; {}",
                    c.obj_name(*object),
                    transcript.describe(c)
                )
            }
        }
    }
}

/// Results of checking the consequences of a verified theory. Every entry is
/// a violated statement; an empty report means all of them hold.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TheoremReport {
    pub violations: Vec<String>,
}

impl TheoremReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, v: impl Into<String>) {
        self.violations.push(v.into());
    }

    pub(crate) fn extend<T: fmt::Display>(
        &mut self,
        prefix: &str,
        items: impl IntoIterator<Item = T>,
    ) {
        for item in items {
            self.violations.push(format!("{prefix}: {item}"));
        }
    }
}

/// A verified pretorsion theory with its canonical structure. `t_functor` and
/// `f_functor` are the endofunctors E_T and E_F of the ambient category.
#[derive(Debug, Clone)]
pub struct PretorsionData<'c> {
    pub torsion: FullSub<'c>,
    pub free: FullSub<'c>,
    pub zee: FullSub<'c>,
    pub ideal: TrivialIdeal<'c>,
    pub decomp: Vec<Decomposition>,
    pub witnesses: Vec<PreexactWitness>,
    pub t_functor: Functor<'c>,
    pub f_functor: Functor<'c>,
    /// Components η: X → f(X).
    pub unit: NatTrans<'c>,
    /// Components ε: t(X) → X.
    pub counit: NatTrans<'c>,
    pub report: TheoremReport,
}

impl<'c> PretorsionData<'c> {
    pub fn category(&self) -> &'c FinCategory {
        self.torsion.category()
    }

    pub fn t(&self, a: ObjId) -> ObjId {
        self.decomp[a.index()].torsion
    }

    pub fn f(&self, a: ObjId) -> ObjId {
        self.decomp[a.index()].free
    }
}

#[derive(Debug, Clone)]
pub enum Verdict<'c> {
    Valid(Box<PretorsionData<'c>>),
    Invalid(Counterexample),
}

impl<'c> Verdict<'c> {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid(_))
    }

    pub fn valid(self) -> Option<PretorsionData<'c>> {
        match self {
            Verdict::Valid(d) => Some(*d),
            Verdict::Invalid(_) => None,
        }
    }
}

fn check_inputs(torsion: &FullSub<'_>, free: &FullSub<'_>) -> Result<(), PretorsionError> {
    if !torsion.same_category(free) {
        return Err(PretorsionError::MismatchedCategories);
    }
    for (which, s) in [("torsion", torsion), ("free", free)] {
        if !s.is_replete() {
            let closure = s.replete_closure();
            let missing = closure
                .objects()
                .iter()
                .filter(|&&a| !s.contains(a))
                .map(|&a| s.category().obj_name(a).to_string())
                .collect();
            return Err(PretorsionError::NotReplete { which, missing });
        }
    }
    Ok(())
}

/// First morphism from a torsion to a free object that is not trivial.
fn axiom_one(
    ideal: &TrivialIdeal<'_>,
    torsion: &FullSub<'_>,
    free: &FullSub<'_>,
) -> Option<Counterexample> {
    let c = ideal.category();
    for &t in torsion.objects() {
        for &f in free.objects() {
            if let Some(m) = c.hom(t, f).iter().find(|&m| !ideal.is_trivial(m)) {
                let attempts = ideal
                    .zee()
                    .objects()
                    .iter()
                    .map(|&z| FactorAttempt {
                        through: z,
                        left_options: c.hom(t, z).len(),
                        right_options: c.hom(z, f).len(),
                    })
                    .collect();
                return Some(Counterexample::NonTrivialMorphism {
                    morphism: m,
                    attempts,
                });
            }
        }
    }
    None
}

/// Axioms only: `Ok(None)` when both hold, otherwise the first counterexample.
/// Cheaper than [`check_pretorsion`], which also builds and checks all
/// derived structure.
pub fn check_axioms(
    torsion: &FullSub<'_>,
    free: &FullSub<'_>,
) -> Result<Option<Counterexample>, PretorsionError> {
    check_inputs(torsion, free)?;
    // An empty intersection gives the empty ideal; the axioms then fail on
    // their own in any non-empty category.
    let ideal = TrivialIdeal::possibly_empty(torsion.intersection(free));
    if let Some(cx) = axiom_one(&ideal, torsion, free) {
        return Ok(Some(cx));
    }
    for x in torsion.category().objects() {
        if decompose::find_sequence(&ideal, torsion, free, x).is_none() {
            let transcript = decompose::transcript(&ideal, torsion, free, x);
            return Ok(Some(Counterexample::NoPreexactSequence {
                object: x,
                transcript,
            }));
        }
    }
    Ok(None)
}

/// Decide whether `(torsion, free)` is a pretorsion theory. A valid verdict
/// carries the canonical decompositions, the functors and the report of all
/// derived statements.
pub fn check_pretorsion<'c>(
    torsion: &FullSub<'c>,
    free: &FullSub<'c>,
) -> Result<Verdict<'c>, PretorsionError> {
    if let Some(cx) = check_axioms(torsion, free)? {
        return Ok(Verdict::Invalid(cx));
    }
    let ideal = TrivialIdeal::new(torsion.intersection(free))
        .expect("axioms imply a non-empty intersection");
    let decomp = canonical_decompositions_with(&ideal, torsion, free);
    let data = functors::synthesize(torsion.clone(), free.clone(), ideal, decomp)?;
    Ok(Verdict::Valid(Box::new(data)))
}

fn canonical_decompositions_with(
    ideal: &TrivialIdeal<'_>,
    torsion: &FullSub<'_>,
    free: &FullSub<'_>,
) -> Vec<Decomposition> {
    torsion
        .category()
        .objects()
        .map(|x| decompose::find_sequence(ideal, torsion, free, x).expect("axiom two was verified"))
        .collect()
}

/// Canonical decomposition of every object, or `None` when the axioms fail.
pub fn canonical_decompositions(
    torsion: &FullSub<'_>,
    free: &FullSub<'_>,
) -> Result<Option<Vec<Decomposition>>, PretorsionError> {
    if check_axioms(torsion, free)?.is_some() {
        return Ok(None);
    }
    let ideal = TrivialIdeal::new(torsion.intersection(free))
        .expect("axioms imply a non-empty intersection");
    Ok(Some(canonical_decompositions_with(&ideal, torsion, free)))
}
