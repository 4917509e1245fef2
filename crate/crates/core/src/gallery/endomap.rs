//! Finite sets with an endofunction, and equivariant maps between them.

use super::concrete::{build, Concrete, NamedSub};
use super::{GalleryError, MAX_CARRIER};
use crate::category::ObjId;
use crate::theory::Decomposition;

/// An endofunction of {0..m-1}, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndoObj {
    pub endo: Vec<u8>,
}

impl EndoObj {
    pub fn new(endo: Vec<u8>) -> Self {
        let m = endo.len();
        assert!(
            endo.iter().all(|&x| (x as usize) < m),
            "endofunction leaves its carrier"
        );
        EndoObj { endo }
    }

    pub fn size(&self) -> usize {
        self.endo.len()
    }

    pub fn apply(&self, x: u8) -> u8 {
        self.endo[x as usize]
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.size()];
        self.endo
            .iter()
            .all(|&x| !std::mem::replace(&mut seen[x as usize], true))
    }

    pub fn is_identity(&self) -> bool {
        self.endo.iter().enumerate().all(|(i, &x)| x as usize == i)
    }

    /// f^m = f^(m+1) where m is the carrier size.
    pub fn is_eventually_idempotent(&self) -> bool {
        let m = self.size();
        (0..m as u8).all(|x| {
            let mut y = x;
            for _ in 0..m {
                y = self.apply(y);
            }
            self.apply(y) == y
        })
    }

    /// Points lying on a cycle of the functional graph.
    pub fn cyclic_points(&self) -> Vec<bool> {
        // After m steps every orbit has entered its cycle; the cycle points
        // are exactly the image of f^m.
        let m = self.size();
        let mut cyclic = vec![false; m];
        for x in 0..m as u8 {
            let mut y = x;
            for _ in 0..m {
                y = self.apply(y);
            }
            cyclic[y as usize] = true;
        }
        cyclic
    }

    /// `E{m}.{images}` with 1-based images, e.g. `E2.21` for the transposition.
    pub fn name(&self) -> String {
        let images: String = self.endo.iter().map(|&x| char::from(b'1' + x)).collect();
        format!("E{}.{}", self.size(), images)
    }
}

pub type EndomapCategory = Concrete<EndoObj>;

/// All endofunctions on carriers of size 0..=k, ordered by size and then
/// lexicographically. Named subs: `torsion` (bijections), `free`
/// (eventually idempotent) and `zee` (identities).
pub fn endomap_category(k: usize) -> Result<EndomapCategory, GalleryError> {
    if k > MAX_CARRIER {
        return Err(GalleryError::BoundTooLarge {
            k,
            max: MAX_CARRIER,
        });
    }
    let mut objects = Vec::new();
    for m in 0..=k {
        let total = m.pow(m as u32);
        for code in 0..total {
            let mut rest = code;
            let mut endo = vec![0u8; m];
            for slot in endo.iter_mut().rev() {
                *slot = (rest % m) as u8;
                rest /= m;
            }
            objects.push(EndoObj::new(endo));
        }
    }
    let mut built = build(
        objects,
        EndoObj::size,
        EndoObj::name,
        |x: &EndoObj, y: &EndoObj, phi: &[u8]| {
            (0..x.size()).all(|i| y.apply(phi[i]) == phi[x.apply(i as u8) as usize])
        },
    );
    let select = |pred: fn(&EndoObj) -> bool| -> Vec<ObjId> {
        built
            .objects
            .iter()
            .enumerate()
            .filter(|(_, o)| pred(o))
            .map(|(i, _)| ObjId::new(i))
            .collect()
    };
    let subs = vec![
        NamedSub {
            name: "torsion".into(),
            objects: select(EndoObj::is_bijection),
        },
        NamedSub {
            name: "free".into(),
            objects: select(EndoObj::is_eventually_idempotent),
        },
        NamedSub {
            name: "zee".into(),
            objects: select(EndoObj::is_identity),
        },
    ];
    built.subs = subs;
    Ok(built)
}

/// Torsion part on the cyclic points and quotient collapsing each cycle.
pub fn endomap_decomposition(
    cat: &EndomapCategory,
    x: ObjId,
) -> Result<Decomposition, GalleryError> {
    let obj = &cat.objects[x.index()];
    let m = obj.size();
    let cyclic = obj.cyclic_points();

    // Cyclic points relabelled in increasing order.
    let points: Vec<u8> = (0..m as u8).filter(|&p| cyclic[p as usize]).collect();
    let mut relabel = vec![u8::MAX; m];
    for (i, &p) in points.iter().enumerate() {
        relabel[p as usize] = i as u8;
    }
    let restricted = EndoObj::new(
        points
            .iter()
            .map(|&p| relabel[obj.apply(p) as usize])
            .collect(),
    );

    // Class of a point: its cycle if cyclic, itself otherwise. Classes are
    // numbered in order of their smallest element.
    let mut class_rep = vec![0u8; m];
    for p in 0..m as u8 {
        class_rep[p as usize] = if cyclic[p as usize] {
            let mut smallest = p;
            let mut y = obj.apply(p);
            while y != p {
                smallest = smallest.min(y);
                y = obj.apply(y);
            }
            smallest
        } else {
            p
        };
    }
    let mut class_index = vec![u8::MAX; m];
    let mut classes = 0u8;
    for p in 0..m {
        let r = class_rep[p] as usize;
        if class_index[r] == u8::MAX {
            class_index[r] = classes;
            classes += 1;
        }
    }
    let quotient_map: Vec<u8> = (0..m).map(|p| class_index[class_rep[p] as usize]).collect();
    let mut induced = vec![0u8; classes as usize];
    for p in 0..m {
        induced[quotient_map[p] as usize] = quotient_map[obj.apply(p as u8) as usize];
    }
    let quotient = EndoObj::new(induced);

    let find = |o: &EndoObj| {
        cat.object_where(|c| c == o)
            .ok_or(GalleryError::QuotientExceedsBound)
    };
    let torsion = find(&restricted)?;
    let free = find(&quotient)?;
    let eps = cat
        .morphism(torsion, x, &points)
        .ok_or_else(|| GalleryError::NotInCategory(obj.name()))?;
    let eta = cat
        .morphism(x, free, &quotient_map)
        .ok_or_else(|| GalleryError::NotInCategory(obj.name()))?;
    Ok(Decomposition {
        object: x,
        torsion,
        eps,
        eta,
        free,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn object_counts() {
        let c2 = endomap_category(2).unwrap();
        assert_eq!(c2.category.obj_count(), 1 + 1 + 4);
        assert_eq!(c2.sub("torsion").unwrap().len(), 4);
        assert_eq!(c2.sub("free").unwrap().len(), 5);
        assert_eq!(c2.sub("zee").unwrap().len(), 3);
        let c3 = endomap_category(3).unwrap();
        assert_eq!(c3.category.obj_count(), 33);
        assert!(endomap_category(5).is_err());
    }

    #[test]
    fn transposition_is_torsion_but_not_free() {
        let t = EndoObj::new(vec![1, 0]);
        assert!(t.is_bijection());
        assert!(!t.is_eventually_idempotent());
        assert_eq!(t.name(), "E2.21");
    }

    #[test]
    fn equivariant_maps_from_empty_object() {
        let c = endomap_category(2).unwrap();
        let empty = c.object_where(|o| o.size() == 0).unwrap();
        for b in c.category.objects() {
            assert_eq!(c.category.hom(empty, b).len(), 1);
        }
    }

    #[test]
    fn constant_map_decomposition() {
        let c = endomap_category(2).unwrap();
        let x = c.object_where(|o| o.endo == [0, 0]).unwrap();
        let d = endomap_decomposition(&c, x).unwrap();
        assert_eq!(c.objects[d.torsion.index()].endo, vec![0]);
        assert_eq!(c.objects[d.free.index()].endo, vec![0, 0]);
        assert_eq!(c.map(d.eps), &[0]);
        assert_eq!(c.map(d.eta), &[0, 1]);
    }

    #[test]
    fn two_cycle_collapses_to_a_point() {
        let c = endomap_category(2).unwrap();
        let x = c.object_where(|o| o.endo == [1, 0]).unwrap();
        let d = endomap_decomposition(&c, x).unwrap();
        assert_eq!(d.torsion, x);
        assert!(c.category.is_identity(d.eps));
        assert_eq!(c.objects[d.free.index()].endo, vec![0]);
    }
}
