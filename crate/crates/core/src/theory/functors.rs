//! The torsion and free functors, unit and counit, the comparison
//! transformation ζ, and the characterizations of the three classes.

use crate::category::{FinCategory, MorId, ObjId};
use crate::functor::{verify_functor, verify_natural, Functor, NatTrans};
use crate::ideal::{preexact_witness, FullSub, TrivialIdeal};

use super::decompose::uniqueness_violations;
use super::{Decomposition, PretorsionData, PretorsionError, TheoremReport};

/// The unique `u` with `cod_leg ∘ u = φ ∘ dom_leg`, searched in `hom(s, t)`.
fn torsion_mediator(
    c: &FinCategory,
    s: ObjId,
    t: ObjId,
    dom_leg: MorId,
    cod_leg: MorId,
    phi: MorId,
) -> Vec<MorId> {
    let target = c.compose(phi, dom_leg);
    c.hom(s, t)
        .iter()
        .filter(|&u| c.compose(cod_leg, u) == target)
        .collect()
}

/// The unique `v` with `v ∘ dom_leg = cod_leg ∘ φ`, searched in `hom(s, t)`.
fn free_mediator(
    c: &FinCategory,
    s: ObjId,
    t: ObjId,
    dom_leg: MorId,
    cod_leg: MorId,
    phi: MorId,
) -> Vec<MorId> {
    let target = c.compose(cod_leg, phi);
    c.hom(s, t)
        .iter()
        .filter(|&v| c.compose(v, dom_leg) == target)
        .collect()
}

fn unique(
    c: &FinCategory,
    found: Vec<MorId>,
    phi: MorId,
    side: &'static str,
) -> Result<MorId, PretorsionError> {
    if found.len() == 1 {
        Ok(found[0])
    } else {
        Err(PretorsionError::MediatorNotUnique {
            morphism: c.mor_name(phi).to_string(),
            side,
            count: found.len(),
        })
    }
}

/// `u ↦ leg ∘ u` (or `u ↦ u ∘ leg`) is a bijection between the two hom-sets.
fn bijective(
    from: impl Iterator<Item = MorId>,
    onto: usize,
    image: impl Fn(MorId) -> MorId,
) -> bool {
    let mut seen = std::collections::HashSet::new();
    let mut count = 0;
    for u in from {
        count += 1;
        if !seen.insert(image(u)) {
            return false;
        }
    }
    count == onto
}

pub(crate) fn synthesize<'c>(
    torsion: FullSub<'c>,
    free: FullSub<'c>,
    ideal: TrivialIdeal<'c>,
    decomp: Vec<Decomposition>,
) -> Result<PretorsionData<'c>, PretorsionError> {
    let c = torsion.category();
    let zee = torsion.intersection(&free);
    let mut report = TheoremReport::default();

    let mut witnesses = Vec::with_capacity(decomp.len());
    for d in &decomp {
        match preexact_witness(&ideal, d.eps, d.eta) {
            Ok(w) => witnesses.push(w),
            Err(_) => report.push(format!(
                "canonical sequence at {} is not preexact",
                c.obj_name(d.object)
            )),
        }
    }

    let mut t_mor = Vec::with_capacity(c.mor_count());
    let mut f_mor = Vec::with_capacity(c.mor_count());
    for phi in c.morphisms() {
        let (a, b) = (decomp[c.dom(phi).index()], decomp[c.cod(phi).index()]);
        t_mor.push(unique(
            c,
            torsion_mediator(c, a.torsion, b.torsion, a.eps, b.eps, phi),
            phi,
            "torsion",
        )?);
        f_mor.push(unique(
            c,
            free_mediator(c, a.free, b.free, a.eta, b.eta, phi),
            phi,
            "free",
        )?);
    }
    let t_functor = Functor {
        source: c,
        target: c,
        obj_map: decomp.iter().map(|d| d.torsion).collect(),
        mor_map: t_mor,
    };
    let f_functor = Functor {
        source: c,
        target: c,
        obj_map: decomp.iter().map(|d| d.free).collect(),
        mor_map: f_mor,
    };
    report.extend("torsion functor", verify_functor(&t_functor));
    report.extend("free functor", verify_functor(&f_functor));

    let unit = NatTrans {
        source: Functor::identity(c),
        target: f_functor.clone(),
        components: decomp.iter().map(|d| d.eta).collect(),
    };
    let counit = NatTrans {
        source: t_functor.clone(),
        target: Functor::identity(c),
        components: decomp.iter().map(|d| d.eps).collect(),
    };
    report.extend("unit", verify_natural(&unit));
    report.extend("counit", verify_natural(&counit));

    for d in &decomp {
        let name = c.obj_name(d.object);
        if !c.is_epi(d.eta) {
            report.push(format!("unit component at {name} is not epi"));
        }
        if !c.is_mono(d.eps) {
            report.push(format!("counit component at {name} is not mono"));
        }
        // Normalization.
        let x = d.object;
        if torsion.contains(x) && !c.is_identity(d.eps) {
            report.push(format!(
                "torsion object {name} does not have identity counit"
            ));
        }
        if free.contains(x) && !c.is_identity(d.eta) {
            report.push(format!("free object {name} does not have identity unit"));
        }
        // Reflection into the free class and coreflection into the torsion class.
        for &f in free.objects() {
            if !bijective(c.hom(d.free, f).iter(), c.hom(x, f).len(), |v| {
                c.compose(v, d.eta)
            }) {
                report.push(format!(
                    "unit at {name} is not universal towards {}",
                    c.obj_name(f)
                ));
            }
        }
        for &t in torsion.objects() {
            if !bijective(c.hom(t, d.torsion).iter(), c.hom(t, x).len(), |u| {
                c.compose(d.eps, u)
            }) {
                report.push(format!(
                    "counit at {name} is not universal from {}",
                    c.obj_name(t)
                ));
            }
        }
        // The free part of a torsion object and the torsion part of a free
        // object are trivial.
        if torsion.contains(x) && !zee.contains(d.free) {
            report.push(format!("free part of torsion object {name} is not trivial"));
        }
        if free.contains(x) && !zee.contains(d.torsion) {
            report.push(format!("torsion part of free object {name} is not trivial"));
        }
    }

    // t restricted to the torsion class and f restricted to the free class
    // are identities.
    for phi in c.morphisms() {
        let (a, b) = (c.dom(phi), c.cod(phi));
        if torsion.contains(a) && torsion.contains(b) && t_functor.mor(phi) != phi {
            report.push(format!("torsion functor moves {}", c.mor_name(phi)));
        }
        if free.contains(a) && free.contains(b) && f_functor.mor(phi) != phi {
            report.push(format!("free functor moves {}", c.mor_name(phi)));
        }
    }

    report.extend(
        "uniqueness",
        uniqueness_violations(&ideal, &torsion, &free, &decomp),
    );

    Ok(PretorsionData {
        torsion,
        free,
        zee,
        ideal,
        decomp,
        witnesses,
        t_functor,
        f_functor,
        unit,
        counit,
        report,
    })
}

/// The comparison transformation from E_F E_T to E_T E_F.
#[derive(Debug, Clone)]
pub struct Zeta<'c> {
    pub transformation: NatTrans<'c>,
    pub report: TheoremReport,
}

/// ζ_C is the unique `u` with `u ∘ η_{t(C)} = t(η_C)`.
pub fn zeta<'c>(data: &PretorsionData<'c>) -> Result<Zeta<'c>, PretorsionError> {
    let c = data.category();
    let mut report = TheoremReport::default();
    let mut components = Vec::with_capacity(c.obj_count());
    for x in c.objects() {
        let tx = data.t(x);
        let eta_tx = data.decomp[tx.index()].eta;
        let t_eta = data.t_functor.mor(data.decomp[x.index()].eta);
        let (ft, tf) = (data.f(tx), data.t(data.f(x)));
        let found: Vec<MorId> = c
            .hom(ft, tf)
            .iter()
            .filter(|&u| c.compose(u, eta_tx) == t_eta)
            .collect();
        components.push(unique(c, found, c.id(x), "comparison")?);
        for (label, o) in [("ft", ft), ("tf", tf)] {
            if !data.zee.contains(o) {
                report.push(format!(
                    "{label}({}) = {} is not trivial",
                    c.obj_name(x),
                    c.obj_name(o)
                ));
            }
        }
    }
    let transformation = NatTrans {
        source: data.t_functor.then(&data.f_functor),
        target: data.f_functor.then(&data.t_functor),
        components,
    };
    report.extend("comparison", verify_natural(&transformation));
    Ok(Zeta {
        transformation,
        report,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Torsion,
    Free,
    Zee,
}

/// A class recomputed from the functors, next to the declared one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Characterization {
    pub computed: Vec<ObjId>,
    pub declared: Vec<ObjId>,
}

impl Characterization {
    pub fn agrees(&self) -> bool {
        self.computed == self.declared
    }
}

/// {C | C ≅ t(C)}, {C | C ≅ f(C)} or {C | C ≅ t(f(C))}.
pub fn characterize(data: &PretorsionData<'_>, which: Which) -> Characterization {
    let c = data.category();
    let (image, declared): (Box<dyn Fn(ObjId) -> ObjId + '_>, &FullSub<'_>) = match which {
        Which::Torsion => (Box::new(|x| data.t(x)), &data.torsion),
        Which::Free => (Box::new(|x| data.f(x)), &data.free),
        Which::Zee => (Box::new(|x| data.t(data.f(x))), &data.zee),
    };
    Characterization {
        computed: c.objects().filter(|&x| c.isomorphic(x, image(x))).collect(),
        declared: declared.objects().to_vec(),
    }
}
