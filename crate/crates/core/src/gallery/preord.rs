//! Finite preordered sets and monotone maps.

use super::concrete::{build, Concrete, NamedSub};
use super::{GalleryError, MAX_CARRIER};
use crate::category::ObjId;
use crate::theory::Decomposition;

/// A reflexive transitive relation on {0..n-1}, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PreordObj {
    pub n: usize,
    pub rel: Vec<bool>,
}

impl PreordObj {
    /// Checks reflexivity and transitivity.
    pub fn new(n: usize, rel: Vec<bool>) -> Option<Self> {
        let o = PreordObj { n, rel };
        let ok = o.rel.len() == n * n
            && (0..n).all(|i| o.leq(i, i))
            && (0..n).all(|i| {
                (0..n).all(|j| !o.leq(i, j) || (0..n).all(|k| !o.leq(j, k) || o.leq(i, k)))
            });
        ok.then_some(o)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.leq(i, j) == self.leq(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || !(self.leq(i, j) && self.leq(j, i))))
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.leq(i, j) == (i == j)))
    }

    /// Off-diagonal pairs in row-major order, as a bit string.
    fn bits(&self) -> String {
        let mut s = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s.push(if self.leq(i, j) { '1' } else { '0' });
                }
            }
        }
        s
    }

    /// `P{n}.{bits}`, e.g. `P2.10` for 1 ≤ 2.
    pub fn name(&self) -> String {
        format!("P{}.{}", self.n, self.bits())
    }
}

pub type PreordCategory = Concrete<PreordObj>;

/// All preorders on carriers of size 0..=k with monotone maps. Named subs:
/// `Equiv` (symmetric), `ParOrd` (antisymmetric), `Discrete`.
pub fn preord_category(k: usize) -> Result<PreordCategory, GalleryError> {
    if k > MAX_CARRIER {
        return Err(GalleryError::BoundTooLarge {
            k,
            max: MAX_CARRIER,
        });
    }
    let mut objects = Vec::new();
    for n in 0..=k {
        let off = n * n.saturating_sub(1);
        for mask in 0..(1u32 << off) {
            let mut rel = vec![false; n * n];
            let mut bit = 0;
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        rel[i * n + j] = true;
                    } else {
                        rel[i * n + j] = mask >> (off - 1 - bit) & 1 == 1;
                        bit += 1;
                    }
                }
            }
            if let Some(o) = PreordObj::new(n, rel) {
                objects.push(o);
            }
        }
    }
    let mut built = build(
        objects,
        PreordObj::size,
        PreordObj::name,
        |a: &PreordObj, b: &PreordObj, phi: &[u8]| {
            (0..a.n)
                .all(|i| (0..a.n).all(|j| !a.leq(i, j) || b.leq(phi[i] as usize, phi[j] as usize)))
        },
    );
    let select = |pred: fn(&PreordObj) -> bool| -> Vec<ObjId> {
        built
            .objects
            .iter()
            .enumerate()
            .filter(|(_, o)| pred(o))
            .map(|(i, _)| ObjId::new(i))
            .collect()
    };
    built.subs = vec![
        NamedSub {
            name: "Equiv".into(),
            objects: select(PreordObj::is_symmetric),
        },
        NamedSub {
            name: "ParOrd".into(),
            objects: select(PreordObj::is_antisymmetric),
        },
        NamedSub {
            name: "Discrete".into(),
            objects: select(PreordObj::is_discrete),
        },
    ];
    Ok(built)
}

/// Torsion leg: identity carrier map from (A, ρ∩ρ⁻¹). Free leg: quotient by
/// ρ∩ρ⁻¹ with the induced order, classes numbered by smallest element.
pub fn preord_decomposition(cat: &PreordCategory, x: ObjId) -> Result<Decomposition, GalleryError> {
    let a = &cat.objects[x.index()];
    let n = a.n;
    let equiv = |i: usize, j: usize| a.leq(i, j) && a.leq(j, i);
    let interior = PreordObj::new(n, (0..n * n).map(|p| equiv(p / n, p % n)).collect())
        .expect("the symmetric interior of a preorder is an equivalence");

    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if class_of[i] == usize::MAX {
            for j in i..n {
                if equiv(i, j) {
                    class_of[j] = reps.len();
                }
            }
            reps.push(i);
        }
    }
    let q = reps.len();
    let quotient = PreordObj::new(
        q,
        (0..q * q)
            .map(|p| a.leq(reps[p / q], reps[p % q]))
            .collect(),
    )
    .expect("the induced order is a preorder");

    let find = |o: &PreordObj| {
        cat.object_where(|c| c == o)
            .ok_or(GalleryError::QuotientExceedsBound)
    };
    let torsion = find(&interior)?;
    let free = find(&quotient)?;
    let identity: Vec<u8> = (0..n as u8).collect();
    let projection: Vec<u8> = class_of.iter().map(|&c| c as u8).collect();
    let eps = cat
        .morphism(torsion, x, &identity)
        .ok_or_else(|| GalleryError::NotInCategory(a.name()))?;
    let eta = cat
        .morphism(x, free, &projection)
        .ok_or_else(|| GalleryError::NotInCategory(a.name()))?;
    Ok(Decomposition {
        object: x,
        torsion,
        eps,
        eta,
        free,
    })
}
