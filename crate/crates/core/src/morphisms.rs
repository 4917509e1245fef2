//! Exhaustive morphism predicates, projectivity and finite (co)products.

use crate::category::{FinCategory, MorId, MorphismClass, ObjId};

/// Full classification of `m`, including regular and extremal epi.
pub fn morphism_class(c: &FinCategory, m: MorId) -> MorphismClass {
    let mut class = c.basic_class(m);
    if is_extremal_epi(c, m) {
        class |= MorphismClass::EXTREMAL_EPI;
    }
    if is_regular_epi(c, m) {
        class |= MorphismClass::REGULAR_EPI;
    }
    class
}

/// `m` is epi and every factorization `m = n ∘ e` with `n` mono has `n` iso.
pub fn is_extremal_epi(c: &FinCategory, m: MorId) -> bool {
    if !c.is_epi(m) {
        return false;
    }
    if c.is_iso(m) {
        return true;
    }
    let (a, b) = (c.dom(m), c.cod(m));
    c.incoming(b)
        .iter()
        .filter(|&&n| c.is_mono(n) && !c.is_iso(n))
        .all(|&n| !c.hom(a, c.dom(n)).iter().any(|e| c.compose(n, e) == m))
}

/// `m` is the coequalizer of some parallel pair into its domain.
pub fn is_regular_epi(c: &FinCategory, m: MorId) -> bool {
    coequalized_pair(c, m).is_some()
}

/// A parallel pair `(u, v)` whose coequalizer is `m`, smallest first.
pub fn coequalized_pair(c: &FinCategory, m: MorId) -> Option<(MorId, MorId)> {
    // Coequalizers are epi, so uniqueness of factorizations is automatic and
    // only existence needs checking.
    if !c.is_epi(m) {
        return None;
    }
    let (a, b) = (c.dom(m), c.cod(m));
    if c.is_iso(m) {
        return Some((c.id(a), c.id(a)));
    }
    // Every q that factors through m coequalizes any pair m coequalizes; the
    // pair must separate all q that do not factor.
    let factoring: Vec<bool> = {
        let out_a = c.out(a);
        let mut v = vec![false; out_a.len()];
        for y in c.objects() {
            for q1 in c.hom(b, y) {
                v[out_a.offset(c.compose(q1, m))] = true;
            }
        }
        v
    };
    let non_factoring: Vec<MorId> = c
        .out(a)
        .iter()
        .zip(&factoring)
        .filter(|(_, &f)| !f)
        .map(|(q, _)| q)
        .collect();
    for x in c.objects() {
        let hom = c.hom(x, a);
        for u in hom {
            let mu = c.compose(m, u);
            for v in hom.iter().filter(|&v| v >= u) {
                if c.compose(m, v) != mu {
                    continue;
                }
                if non_factoring
                    .iter()
                    .all(|&q| c.compose(q, u) != c.compose(q, v))
                {
                    return Some((u, v));
                }
            }
        }
    }
    None
}

/// Projective with respect to epimorphisms, decided by exhaustive lift search.
pub fn is_projective(c: &FinCategory, p: ObjId) -> bool {
    c.morphisms().filter(|&e| c.is_epi(e)).all(|e| {
        let (x, y) = (c.dom(e), c.cod(e));
        let lifts = c.hom(p, x);
        c.hom(p, y)
            .iter()
            .all(|g| lifts.iter().any(|l| c.compose(e, l) == g))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Product,
    Coproduct,
}

/// A (co)product apex with its legs, in the order of the input family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limit {
    pub apex: ObjId,
    pub legs: Vec<MorId>,
}

/// Product or coproduct of a non-empty family (repeats are meaningful). The
/// apex with the smallest id wins; among its leg tuples, the lexicographically
/// smallest.
pub fn find_limit(c: &FinCategory, family: &[ObjId], kind: LimitKind) -> Option<Limit> {
    assert!(!family.is_empty(), "(co)limit of an empty family");
    let hom = |x: ObjId, y: ObjId| match kind {
        LimitKind::Product => c.hom(x, y),
        LimitKind::Coproduct => c.hom(y, x),
    };
    // Universal iff for every test object q, u ↦ (leg_i ∘ u)_i is a bijection
    // hom(q, apex) → ∏ hom(q, family_i) (dually for coproducts).
    for apex in c.objects() {
        let counts_match = c.objects().all(|q| {
            let target: usize = family.iter().map(|&o| hom(q, o).len()).product();
            hom(q, apex).len() == target
        });
        if !counts_match {
            continue;
        }
        let leg_sets: Vec<Vec<MorId>> = family
            .iter()
            .map(|&o| match kind {
                LimitKind::Product => c.hom(apex, o).iter().collect(),
                LimitKind::Coproduct => c.hom(o, apex).iter().collect(),
            })
            .collect();
        if leg_sets.iter().any(|s| s.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; family.len()];
        loop {
            let legs: Vec<MorId> = idx.iter().zip(&leg_sets).map(|(&i, s)| s[i]).collect();
            if legs_universal(c, &legs, apex, kind) {
                return Some(Limit { apex, legs });
            }
            if !advance(&mut idx, &leg_sets) {
                break;
            }
        }
    }
    None
}

/// Odometer step over index tuples, last position fastest. False once exhausted.
pub(crate) fn advance<T>(idx: &mut [usize], sets: &[Vec<T>]) -> bool {
    for pos in (0..idx.len()).rev() {
        idx[pos] += 1;
        if idx[pos] < sets[pos].len() {
            return true;
        }
        idx[pos] = 0;
    }
    false
}

fn legs_universal(c: &FinCategory, legs: &[MorId], apex: ObjId, kind: LimitKind) -> bool {
    let mut seen = std::collections::HashSet::new();
    for q in c.objects() {
        seen.clear();
        let test = match kind {
            LimitKind::Product => c.hom(q, apex),
            LimitKind::Coproduct => c.hom(apex, q),
        };
        for u in test {
            let image: Vec<MorId> = legs
                .iter()
                .map(|&l| match kind {
                    LimitKind::Product => c.compose(l, u),
                    LimitKind::Coproduct => c.compose(u, l),
                })
                .collect();
            if !seen.insert(image) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn thin_morphisms_are_mono_and_epi() {
        let c = gallery::chain(4).unwrap();
        for m in c.morphisms() {
            let f = morphism_class(&c, m);
            assert!(f.contains(MorphismClass::MONO | MorphismClass::EPI));
        }
    }

    #[test]
    fn chain_edge_is_not_regular_epi() {
        let c = gallery::chain(2).unwrap();
        let m = c.mor_id("1<=2").unwrap();
        let f = morphism_class(&c, m);
        assert!(!f.contains(MorphismClass::REGULAR_EPI));
        assert!(!f.contains(MorphismClass::EXTREMAL_EPI));
    }

    #[test]
    fn identities_have_every_flag() {
        let c = gallery::n5();
        for a in c.objects() {
            assert_eq!(morphism_class(&c, c.id(a)), MorphismClass::all());
        }
    }

    #[test]
    fn bottom_of_chain_is_projective() {
        for n in 1..=5 {
            let c = gallery::chain(n).unwrap();
            let projective: Vec<bool> = c.objects().map(|p| is_projective(&c, p)).collect();
            assert!(projective[0]);
            assert!(projective[1..].iter().all(|p| !p));
        }
    }

    #[test]
    fn three_cycles_form_a_projective_groupoid() {
        let c = gallery::endomap_category(3).unwrap();
        let sub: Vec<ObjId> = c
            .category
            .objects()
            .filter(|&a| {
                let o = &c.objects[a.index()];
                o.size() == 3 && o.is_bijection() && (0..3).all(|x| o.apply(x) != x)
            })
            .collect();
        let (g, _) = c.category.full_subcategory(&sub);
        assert_eq!(sub.len(), 2);
        assert!(g.morphisms().all(|m| g.is_iso(m)));
        assert!(g.objects().all(|p| is_projective(&g, p)));
    }

    #[test]
    fn chain_products_are_meets() {
        let c = gallery::chain(4).unwrap();
        let o = |i: usize| ObjId::new(i - 1);
        for a in 1..=4 {
            for b in 1..=4 {
                let p = find_limit(&c, &[o(a), o(b)], LimitKind::Product).unwrap();
                assert_eq!(p.apex, o(a.min(b)));
                let q = find_limit(&c, &[o(a), o(b)], LimitKind::Coproduct).unwrap();
                assert_eq!(q.apex, o(a.max(b)));
            }
        }
    }

    #[test]
    fn n5_product_of_z_and_z_prime() {
        let c = gallery::n5();
        let z = c.obj_id("Z").unwrap();
        let zp = c.obj_id("Z'").unwrap();
        let p = find_limit(&c, &[z, zp], LimitKind::Product).unwrap();
        assert_eq!(p.apex, z);
        let cc = c.obj_id("C").unwrap();
        // C and Z have join F but meet T.
        assert_eq!(
            find_limit(&c, &[cc, z], LimitKind::Product).unwrap().apex,
            c.obj_id("T").unwrap()
        );
        assert_eq!(
            find_limit(&c, &[cc, z], LimitKind::Coproduct).unwrap().apex,
            c.obj_id("F").unwrap()
        );
    }

    #[test]
    fn singleton_family_is_its_own_limit() {
        let c = gallery::n5();
        for a in c.objects() {
            let p = find_limit(&c, &[a], LimitKind::Product).unwrap();
            assert_eq!(
                p,
                Limit {
                    apex: a,
                    legs: vec![c.id(a)]
                }
            );
        }
    }
}
