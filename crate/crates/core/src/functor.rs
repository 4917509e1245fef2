//! Functors and natural transformations between finite categories, with
//! exhaustive law checking.

use std::fmt;

use crate::category::{FinCategory, MorId, ObjId};

#[derive(Debug, Clone)]
pub struct Functor<'a> {
    pub source: &'a FinCategory,
    pub target: &'a FinCategory,
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

impl<'a> Functor<'a> {
    pub fn identity(c: &'a FinCategory) -> Self {
        Functor {
            source: c,
            target: c,
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
        }
    }

    pub fn obj(&self, a: ObjId) -> ObjId {
        self.obj_map[a.index()]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.mor_map[m.index()]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor<'a>) -> Functor<'a> {
        assert!(
            std::ptr::eq(self.target, other.source),
            "functors are not composable"
        );
        Functor {
            source: self.source,
            target: other.target,
            obj_map: self.obj_map.iter().map(|&a| other.obj(a)).collect(),
            mor_map: self.mor_map.iter().map(|&m| other.mor(m)).collect(),
        }
    }
}

/// A functor-law failure, named by source-category identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorViolation {
    Endpoints { morphism: String },
    Identity { object: String },
    Composition { g: String, f: String },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::Endpoints { morphism } => {
                write!(out, "image of {morphism} has the wrong domain or codomain")
            }
            FunctorViolation::Identity { object } => {
                write!(out, "identity of {object} is not preserved")
            }
            FunctorViolation::Composition { g, f } => {
                write!(out, "composite {g} * {f} is not preserved")
            }
        }
    }
}

/// Every violated functor law; empty means the functor is lawful.
pub fn verify_functor(functor: &Functor<'_>) -> Vec<FunctorViolation> {
    let (s, t) = (functor.source, functor.target);
    let mut report = Vec::new();
    if functor.obj_map.len() != s.obj_count() || functor.mor_map.len() != s.mor_count() {
        report.push(FunctorViolation::Endpoints {
            morphism: "<maps are not total>".to_string(),
        });
        return report;
    }
    let mut endpoints_ok = true;
    for m in s.morphisms() {
        let fm = functor.mor(m);
        if t.dom(fm) != functor.obj(s.dom(m)) || t.cod(fm) != functor.obj(s.cod(m)) {
            endpoints_ok = false;
            report.push(FunctorViolation::Endpoints {
                morphism: s.mor_name(m).to_string(),
            });
        }
    }
    for a in s.objects() {
        if functor.mor(s.id(a)) != t.id(functor.obj(a)) {
            report.push(FunctorViolation::Identity {
                object: s.obj_name(a).to_string(),
            });
        }
    }
    if !endpoints_ok {
        return report;
    }
    for f in s.morphisms() {
        for g in s.out(s.cod(f)) {
            if functor.mor(s.compose(g, f)) != t.compose(functor.mor(g), functor.mor(f)) {
                report.push(FunctorViolation::Composition {
                    g: s.mor_name(g).to_string(),
                    f: s.mor_name(f).to_string(),
                });
            }
        }
    }
    report
}

#[derive(Debug, Clone)]
pub struct NatTrans<'a> {
    pub source: Functor<'a>,
    pub target: Functor<'a>,
    pub components: Vec<MorId>,
}

impl<'a> NatTrans<'a> {
    pub fn identity(functor: Functor<'a>) -> Self {
        let components = functor
            .source
            .objects()
            .map(|a| functor.target.id(functor.obj(a)))
            .collect();
        NatTrans {
            source: functor.clone(),
            target: functor,
            components,
        }
    }

    pub fn at(&self, a: ObjId) -> MorId {
        self.components[a.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NaturalityViolation {
    ParallelMismatch,
    ComponentType { object: String },
    Square { morphism: String },
}

impl fmt::Display for NaturalityViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NaturalityViolation::ParallelMismatch => write!(out, "functors are not parallel"),
            NaturalityViolation::ComponentType { object } => {
                write!(out, "component at {object} has the wrong type")
            }
            NaturalityViolation::Square { morphism } => {
                write!(out, "naturality square for {morphism} does not commute")
            }
        }
    }
}

/// Every non-commuting naturality square; empty means natural.
pub fn verify_natural(t: &NatTrans<'_>) -> Vec<NaturalityViolation> {
    let (f, g) = (&t.source, &t.target);
    if !std::ptr::eq(f.source, g.source) || !std::ptr::eq(f.target, g.target) {
        return vec![NaturalityViolation::ParallelMismatch];
    }
    let (s, d) = (f.source, f.target);
    let mut report = Vec::new();
    for a in s.objects() {
        let c = t.at(a);
        if d.dom(c) != f.obj(a) || d.cod(c) != g.obj(a) {
            report.push(NaturalityViolation::ComponentType {
                object: s.obj_name(a).to_string(),
            });
        }
    }
    if !report.is_empty() {
        return report;
    }
    for m in s.morphisms() {
        let (a, b) = (s.dom(m), s.cod(m));
        if d.compose(g.mor(m), t.at(a)) != d.compose(t.at(b), f.mor(m)) {
            report.push(NaturalityViolation::Square {
                morphism: s.mor_name(m).to_string(),
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn identity_functor_is_lawful() {
        let c = gallery::endomap_category(2).unwrap().category;
        assert!(verify_functor(&Functor::identity(&c)).is_empty());
        let n5 = gallery::n5();
        assert!(verify_functor(&Functor::identity(&n5)).is_empty());
    }

    #[test]
    fn identity_transformation_is_natural() {
        let c = gallery::endomap_category(2).unwrap().category;
        assert!(verify_natural(&NatTrans::identity(Functor::identity(&c))).is_empty());
    }

    #[test]
    fn constant_functor_on_a_chain() {
        // Collapsing chain(3) to its top object is a functor; mapping every
        // object to itself but every morphism to an identity is not.
        let c = gallery::chain(3).unwrap();
        let top = ObjId::new(2);
        let constant = Functor {
            source: &c,
            target: &c,
            obj_map: vec![top; 3],
            mor_map: vec![c.id(top); c.mor_count()],
        };
        assert!(verify_functor(&constant).is_empty());
        let broken = Functor {
            source: &c,
            target: &c,
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().map(|m| c.id(c.dom(m))).collect(),
        };
        let report = verify_functor(&broken);
        assert!(report
            .iter()
            .any(|v| matches!(v, FunctorViolation::Endpoints { morphism } if morphism == "1<=2")));
    }

    #[test]
    fn non_natural_family_is_reported() {
        // Components id on the identity functor of chain(2) towards the
        // constant-top functor: at object 1 choose 1<=2, at 2 choose id. Natural.
        let c = gallery::chain(2).unwrap();
        let (one, two) = (ObjId::new(0), ObjId::new(1));
        let constant = Functor {
            source: &c,
            target: &c,
            obj_map: vec![two; 2],
            mor_map: vec![c.id(two); c.mor_count()],
        };
        let eta = NatTrans {
            source: Functor::identity(&c),
            target: constant.clone(),
            components: vec![c.hom(one, two).first().unwrap(), c.id(two)],
        };
        assert!(verify_natural(&eta).is_empty());
        let wrong = NatTrans {
            source: Functor::identity(&c),
            target: constant,
            components: vec![c.id(one), c.id(two)],
        };
        assert_eq!(
            verify_natural(&wrong),
            vec![NaturalityViolation::ComponentType { object: "1".into() }]
        );
    }
}
