//! Closure properties of the three classes, orthogonal classes, reflections
//! and the characterization of free classes by normal epireflections.

use std::collections::HashMap;

use crate::category::{FinCategory, MorId, ObjId};
use crate::ideal::{
    precokernel_cert, precokernels, preexact_pairs, prekernels, FullSub, TrivialIdeal,
};
use crate::morphisms::{find_limit, is_extremal_epi, is_projective, is_regular_epi, LimitKind};

use super::{check_axioms, PretorsionData, PretorsionError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimStatus {
    Verified,
    HypothesisNotMet(String),
    Violated(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub name: &'static str,
    pub status: ClaimStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub claims: Vec<Claim>,
}

impl ClosureReport {
    pub fn violations(&self) -> impl Iterator<Item = &Claim> {
        self.claims
            .iter()
            .filter(|c| matches!(c.status, ClaimStatus::Violated(_)))
    }

    pub fn status(&self, name: &str) -> Option<&ClaimStatus> {
        self.claims
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.status)
    }
}

/// An object `x` outside `class` that is a retract of a member, with the
/// member.
pub fn retract_violation(class: &FullSub<'_>) -> Option<(ObjId, ObjId)> {
    let c = class.category();
    for x in c.objects().filter(|&x| !class.contains(x)) {
        for &k in class.objects() {
            let id = c.id(x);
            if c.hom(x, k)
                .iter()
                .any(|s| c.hom(k, x).iter().any(|r| c.compose(r, s) == id))
            {
                return Some((x, k));
            }
        }
    }
    None
}

fn verdict(violation: Option<String>) -> ClaimStatus {
    match violation {
        None => ClaimStatus::Verified,
        Some(v) => ClaimStatus::Violated(v),
    }
}

fn retract_claim(class: &FullSub<'_>) -> ClaimStatus {
    let c = class.category();
    verdict(retract_violation(class).map(|(x, k)| {
        format!(
            "{} is a retract of {} but not a member",
            c.obj_name(x),
            c.obj_name(k)
        )
    }))
}

fn extension_claim(ideal: &TrivialIdeal<'_>, class: &FullSub<'_>) -> ClaimStatus {
    let c = class.category();
    for x in c.objects().filter(|&x| !class.contains(x)) {
        if let Some(&(e, h)) = preexact_pairs(ideal, x, class, class).first() {
            return ClaimStatus::Violated(format!(
                "{} is an extension ({}, {}) of members but not a member",
                c.obj_name(x),
                c.mor_name(e),
                c.mor_name(h)
            ));
        }
    }
    ClaimStatus::Verified
}

/// Closure of `class` under binary (co)products that exist, provided the
/// trivial class has all of them.
fn limit_claim(zee: &FullSub<'_>, class: &FullSub<'_>, kind: LimitKind) -> ClaimStatus {
    let c = class.category();
    let what = match kind {
        LimitKind::Product => "product",
        LimitKind::Coproduct => "coproduct",
    };
    let zs = zee.objects();
    for (i, &a) in zs.iter().enumerate() {
        for &b in &zs[i..] {
            match find_limit(c, &[a, b], kind) {
                Some(l) if zee.contains(l.apex) => {}
                Some(l) => {
                    return ClaimStatus::HypothesisNotMet(format!(
                        "{what} {} of {} and {} is not trivial",
                        c.obj_name(l.apex),
                        c.obj_name(a),
                        c.obj_name(b)
                    ))
                }
                None => {
                    return ClaimStatus::HypothesisNotMet(format!(
                        "{} and {} have no {what}",
                        c.obj_name(a),
                        c.obj_name(b)
                    ))
                }
            }
        }
    }
    let ms = class.objects();
    for (i, &a) in ms.iter().enumerate() {
        for &b in &ms[i..] {
            if let Some(l) = find_limit(c, &[a, b], kind) {
                if !class.contains(l.apex) {
                    return ClaimStatus::Violated(format!(
                        "{what} {} of {} and {} is not a member",
                        c.obj_name(l.apex),
                        c.obj_name(a),
                        c.obj_name(b)
                    ));
                }
            }
        }
    }
    ClaimStatus::Verified
}

/// Every precokernel of every morphism is a regular epimorphism.
fn precokernels_regular(ideal: &TrivialIdeal<'_>) -> Option<String> {
    let c = ideal.category();
    // Morphisms with the same codomain and the same set of trivializing
    // arrows have the same precokernels.
    let mut groups: HashMap<(ObjId, Vec<bool>), MorId> = HashMap::new();
    for f in c.morphisms() {
        let b = c.cod(f);
        let key: Vec<bool> = c
            .out(b)
            .iter()
            .map(|m| ideal.is_trivial(c.compose(m, f)))
            .collect();
        groups.entry((b, key)).or_insert(f);
    }
    let mut representatives: Vec<MorId> = groups.into_values().collect();
    representatives.sort();
    let mut regular: HashMap<MorId, bool> = HashMap::new();
    for f in representatives {
        for cert in precokernels(ideal, f) {
            let p = cert.arrow;
            if !*regular.entry(p).or_insert_with(|| is_regular_epi(c, p)) {
                return Some(format!(
                    "precokernel {} of {} is not a regular epi",
                    c.mor_name(p),
                    c.mor_name(f)
                ));
            }
        }
    }
    None
}

/// Evaluate every closure statement on a verified theory.
pub fn closure_report(data: &PretorsionData<'_>) -> ClosureReport {
    let c = data.category();
    let (t, f, z) = (&data.torsion, &data.free, &data.zee);
    let mut claims = vec![
        Claim {
            name: "retract.torsion",
            status: retract_claim(t),
        },
        Claim {
            name: "retract.free",
            status: retract_claim(f),
        },
        Claim {
            name: "retract.zee",
            status: retract_claim(z),
        },
        Claim {
            name: "extension.torsion",
            status: extension_claim(&data.ideal, t),
        },
        Claim {
            name: "extension.free",
            status: extension_claim(&data.ideal, f),
        },
        Claim {
            name: "extension.zee",
            status: extension_claim(&data.ideal, z),
        },
        Claim {
            name: "coproduct.torsion",
            status: limit_claim(z, t, LimitKind::Coproduct),
        },
        Claim {
            name: "product.free",
            status: limit_claim(z, f, LimitKind::Product),
        },
    ];

    let not_projective = z.objects().iter().find(|&&o| !is_projective(c, o));
    let hypothesis = not_projective.map(|&o| format!("{} is not projective", c.obj_name(o)));
    let conditional = |check: &dyn Fn() -> Option<String>| match &hypothesis {
        Some(h) => ClaimStatus::HypothesisNotMet(h.clone()),
        None => verdict(check()),
    };
    claims.push(Claim {
        name: "proj_reg_epi",
        status: conditional(&|| precokernels_regular(&data.ideal)),
    });
    claims.push(Claim {
        name: "extremal_quotient.torsion",
        status: conditional(&|| {
            c.morphisms()
                .find(|&m| t.contains(c.dom(m)) && !t.contains(c.cod(m)) && is_extremal_epi(c, m))
                .map(|m| {
                    format!(
                        "{} is an extremal quotient leaving the torsion class",
                        c.mor_name(m)
                    )
                })
        }),
    });
    claims.push(Claim {
        name: "subobject.free",
        status: conditional(&|| {
            c.morphisms()
                .find(|&m| f.contains(c.cod(m)) && !f.contains(c.dom(m)) && c.is_mono(m))
                .map(|m| format!("{} is a subobject leaving the free class", c.mor_name(m)))
        }),
    });
    ClosureReport { claims }
}

/// The smallest universal arrow from `a` into `free`: every morphism from `a`
/// to a member factors through it uniquely.
pub fn reflection(free: &FullSub<'_>, a: ObjId) -> Option<MorId> {
    let c = free.category();
    free.objects()
        .iter()
        .flat_map(|&r| c.hom(a, r).iter())
        .find(|&eta| {
            let r = c.cod(eta);
            free.objects().iter().all(|&g| {
                let (through, direct) = (c.hom(r, g), c.hom(a, g));
                if through.len() != direct.len() {
                    return false;
                }
                let mut hit = vec![false; direct.len()];
                through.iter().all(|v| {
                    let k = direct.offset(c.compose(v, eta));
                    !std::mem::replace(&mut hit[k], true)
                })
            })
        })
}

/// Objects whose every morphism into `free` is trivial, compared with the
/// objects whose reflection lands in `zee`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerpClass {
    pub objects: Vec<ObjId>,
    pub via_reflection: Vec<ObjId>,
}

impl PerpClass {
    pub fn agrees(&self) -> bool {
        self.objects == self.via_reflection
    }
}

fn check_zee_free(zee: &FullSub<'_>, free: &FullSub<'_>) -> Result<(), PretorsionError> {
    if !zee.same_category(free) {
        return Err(PretorsionError::MismatchedCategories);
    }
    let c = zee.category();
    if zee.is_empty() {
        return Err(PretorsionError::PreconditionFailed(
            "trivial class is empty".into(),
        ));
    }
    if !zee.is_subset(free) {
        return Err(PretorsionError::PreconditionFailed(
            "trivial class is not contained in the free class".into(),
        ));
    }
    if let Some((x, k)) = retract_violation(zee) {
        return Err(PretorsionError::PreconditionFailed(format!(
            "retracts: {} is a retract of {} outside the trivial class",
            c.obj_name(x),
            c.obj_name(k)
        )));
    }
    Ok(())
}

fn perp_objects(ideal: &TrivialIdeal<'_>, free: &FullSub<'_>) -> Vec<ObjId> {
    let c = ideal.category();
    c.objects()
        .filter(|&x| {
            free.objects()
                .iter()
                .all(|&g| c.hom(x, g).iter().all(|m| ideal.is_trivial(m)))
        })
        .collect()
}

/// The objects orthogonal to `free` relative to `zee`.
pub fn perp_class(free: &FullSub<'_>, zee: &FullSub<'_>) -> Result<PerpClass, PretorsionError> {
    check_zee_free(zee, free)?;
    let c = free.category();
    let mut units = Vec::with_capacity(c.obj_count());
    for a in c.objects() {
        match reflection(free, a) {
            Some(eta) => units.push(eta),
            None => {
                return Err(PretorsionError::PreconditionFailed(format!(
                    "reflectivity: {} has no reflection into the free class",
                    c.obj_name(a)
                )))
            }
        }
    }
    let ideal = TrivialIdeal::new(zee.clone()).expect("checked non-empty");
    Ok(PerpClass {
        objects: perp_objects(&ideal, free),
        via_reflection: c
            .objects()
            .filter(|a| zee.contains(c.cod(units[a.index()])))
            .collect(),
    })
}

/// Both sides of the normal-epireflection characterization of free classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZNormalVerdict {
    /// Some torsion class pairs with `free` and meets it exactly in `zee`.
    pub a_holds: bool,
    /// The reflection exists, its units are precokernels with prekernels,
    /// and the counit is invertible on torsion parts.
    pub b_holds: bool,
    /// First reason (b) fails.
    pub b_failure: Option<String>,
    /// {A | η_A trivial}, when (b) holds.
    pub constructed_torsion: Option<Vec<ObjId>>,
    /// The only possible torsion class, the orthogonal of `free`.
    pub perp_torsion: Vec<ObjId>,
}

impl ZNormalVerdict {
    pub fn agrees(&self) -> bool {
        self.a_holds == self.b_holds
            && match &self.constructed_torsion {
                Some(t) => !self.a_holds || *t == self.perp_torsion,
                None => true,
            }
    }
}

fn condition_b(ideal: &TrivialIdeal<'_>, free: &FullSub<'_>) -> Result<Vec<ObjId>, String> {
    let c = ideal.category();
    let name = |a: ObjId| c.obj_name(a).to_string();
    let mut units = Vec::with_capacity(c.obj_count());
    for a in c.objects() {
        units.push(reflection(free, a).ok_or_else(|| format!("{} has no reflection", name(a)))?);
    }
    let mut torsion_part = Vec::with_capacity(c.obj_count());
    for a in c.objects() {
        let eta = units[a.index()];
        let is_precokernel = c
            .objects()
            .flat_map(|x| c.hom(x, a).iter())
            .any(|q| precokernel_cert(ideal, q, eta).is_ok());
        if !is_precokernel {
            return Err(format!("unit {} is not a precokernel", c.mor_name(eta)));
        }
        let eps = prekernels(ideal, eta)
            .first()
            .map(|k| k.arrow)
            .ok_or_else(|| format!("unit {} has no prekernel", c.mor_name(eta)))?;
        torsion_part.push(c.dom(eps));
    }
    for a in c.objects() {
        let ta = torsion_part[a.index()];
        let eps_ta = prekernels(ideal, units[ta.index()])
            .first()
            .map(|k| k.arrow)
            .expect("every unit has a prekernel");
        if !c.is_iso(eps_ta) {
            return Err(format!("counit at {} is not invertible", name(ta)));
        }
    }
    Ok(c.objects()
        .filter(|a| ideal.is_trivial(units[a.index()]))
        .collect())
}

/// Decide (a) and (b) independently. (a) is decided through the orthogonal
/// class, which is the only candidate torsion class for `free`.
pub fn z_normal_epireflective_check(
    zee: &FullSub<'_>,
    free: &FullSub<'_>,
) -> Result<ZNormalVerdict, PretorsionError> {
    check_zee_free(zee, free)?;
    if !free.is_replete() {
        return Err(PretorsionError::PreconditionFailed(
            "free class is not replete".into(),
        ));
    }
    let c = free.category();
    let ideal = TrivialIdeal::new(zee.clone()).expect("checked non-empty");
    let perp = FullSub::new(c, perp_objects(&ideal, free));
    let a_holds = check_axioms(&perp, free)?.is_none() && perp.intersection(free) == *zee;
    let (b_holds, b_failure, constructed_torsion) = match condition_b(&ideal, free) {
        Ok(t) => (true, None, Some(t)),
        Err(why) => (false, Some(why), None),
    };
    Ok(ZNormalVerdict {
        a_holds,
        b_holds,
        b_failure,
        constructed_torsion,
        perp_torsion: perp.objects().to_vec(),
    })
}

#[allow(dead_code)]
fn names(c: &FinCategory, objs: &[ObjId]) -> Vec<String> {
    objs.iter().map(|&o| c.obj_name(o).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::theory::check_pretorsion;

    fn sub<'c>(c: &'c FinCategory, names: &[&str]) -> FullSub<'c> {
        FullSub::new(c, gallery::objects_named(c, names))
    }

    #[test]
    fn n5_closure_claims() {
        let c = gallery::n5();
        let d = check_pretorsion(&sub(&c, &["T", "Z", "Z'"]), &sub(&c, &["F", "Z", "Z'"]))
            .unwrap()
            .valid()
            .unwrap();
        let r = closure_report(&d);
        for name in [
            "retract.torsion",
            "retract.free",
            "retract.zee",
            "extension.torsion",
            "extension.free",
            "extension.zee",
        ] {
            assert_eq!(r.status(name), Some(&ClaimStatus::Verified), "{name}");
        }
        assert_eq!(r.violations().count(), 0, "{r:?}");
    }

    #[test]
    fn chain3_projective_bottom() {
        // The theory with trivial class {1} on the 3-chain: A = {}, B = {1}, C = {2, 3}.
        let c = gallery::chain(3).unwrap();
        let d = check_pretorsion(&sub(&c, &["1"]), &sub(&c, &["1", "2", "3"]))
            .unwrap()
            .valid()
            .unwrap();
        let r = closure_report(&d);
        assert_eq!(r.status("proj_reg_epi"), Some(&ClaimStatus::Verified));
    }

    #[test]
    fn perp_of_n5_free_class() {
        let c = gallery::n5();
        let p = perp_class(&sub(&c, &["F", "Z", "Z'"]), &sub(&c, &["Z", "Z'"])).unwrap();
        assert_eq!(names(&c, &p.objects), ["T", "Z", "Z'"]);
        assert!(p.agrees());
    }

    #[test]
    fn perp_preconditions() {
        let c = gallery::n5();
        assert!(matches!(
            perp_class(&sub(&c, &["F"]), &sub(&c, &["Z"])),
            Err(PretorsionError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn two_chain_z_normal() {
        let c = gallery::two();
        let v = z_normal_epireflective_check(&sub(&c, &["1"]), &sub(&c, &["1"])).unwrap();
        assert!(v.a_holds && v.b_holds && v.agrees());
        assert_eq!(
            names(&c, v.constructed_torsion.as_ref().unwrap()),
            ["0", "1"]
        );
    }

    #[test]
    fn chain3_middle_class_decided() {
        let c = gallery::chain(3).unwrap();
        let v = z_normal_epireflective_check(&sub(&c, &["2"]), &sub(&c, &["2"])).unwrap();
        assert!(v.agrees());
        // 3 has no morphism into 2, so there is no reflection.
        assert!(!v.b_holds);
        assert!(!v.a_holds);
    }
}
