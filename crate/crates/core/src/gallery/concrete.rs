//! Categories of structured finite sets: objects carry a carrier {0..m-1},
//! morphisms are the admissible functions between carriers.

use std::collections::HashMap;

use crate::category::{assemble, FinCategory, MorId, ObjId, RawCategory};

/// A named object set attached to a gallery category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSub {
    pub name: String,
    pub objects: Vec<ObjId>,
}

/// A gallery category together with the structured objects it was built from.
#[derive(Debug, Clone)]
pub struct Concrete<O> {
    pub category: FinCategory,
    /// Indexed by `ObjId`.
    pub objects: Vec<O>,
    /// Indexed by `MorId`: the underlying function as a vector of images.
    pub maps: Vec<Vec<u8>>,
    pub subs: Vec<NamedSub>,
}

impl<O> Concrete<O> {
    pub fn sub(&self, name: &str) -> Option<&[ObjId]> {
        self.subs
            .iter()
            .find(|s| s.name == name)
            .map(|s| s.objects.as_slice())
    }

    pub fn map(&self, m: MorId) -> &[u8] {
        &self.maps[m.index()]
    }

    /// The morphism `src → dst` with the given underlying function.
    pub fn morphism(&self, src: ObjId, dst: ObjId, images: &[u8]) -> Option<MorId> {
        self.category
            .hom(src, dst)
            .iter()
            .find(|&m| self.map(m) == images)
    }

    pub fn object_where(&self, pred: impl Fn(&O) -> bool) -> Option<ObjId> {
        self.objects.iter().position(pred).map(ObjId::new)
    }
}

fn code(images: &[u8]) -> u64 {
    images
        .iter()
        .rev()
        .fold(0u64, |acc, &x| acc * 16 + x as u64)
}

/// Build the category whose objects are `objects` (with carrier sizes
/// `size(o)` and names `name(o)`) and whose morphisms a → b are the functions
/// accepted by `admissible(a, b, images)`. Morphisms are named
/// `src|images|dst` with 1-based images.
pub(crate) fn build<O>(
    objects: Vec<O>,
    size: impl Fn(&O) -> usize,
    name: impl Fn(&O) -> String,
    admissible: impl Fn(&O, &O, &[u8]) -> bool,
) -> Concrete<O> {
    let names: Vec<String> = objects.iter().map(&name).collect();
    let sizes: Vec<usize> = objects.iter().map(&size).collect();
    let mut morphisms = Vec::new();
    let mut decl_maps: Vec<Vec<u8>> = Vec::new();
    let mut index: HashMap<(usize, usize, u64), usize> = HashMap::new();
    let mut identities = vec![Vec::new(); objects.len()];
    for (a, oa) in objects.iter().enumerate() {
        for (b, ob) in objects.iter().enumerate() {
            let (m, k) = (sizes[a], sizes[b]);
            if m > 0 && k == 0 {
                continue;
            }
            let mut images = vec![0u8; m];
            loop {
                if admissible(oa, ob, &images) {
                    let label: String = images.iter().map(|&x| char::from(b'1' + x)).collect();
                    index.insert((a, b, code(&images)), morphisms.len());
                    if a == b && images.iter().enumerate().all(|(i, &x)| x as usize == i) {
                        identities[a].push(morphisms.len());
                    }
                    morphisms.push((format!("{}|{}|{}", names[a], label, names[b]), a, b));
                    decl_maps.push(images.clone());
                }
                let mut pos = 0;
                while pos < m {
                    images[pos] += 1;
                    if (images[pos] as usize) < k {
                        break;
                    }
                    images[pos] = 0;
                    pos += 1;
                }
                if pos == m {
                    break;
                }
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|&(_, d, c)| (d, c)).collect();
    let raw = RawCategory {
        objects: names,
        morphisms,
        identities,
    };
    let composite = |g: usize, f: usize| {
        let images: Vec<u8> = decl_maps[f]
            .iter()
            .map(|&x| decl_maps[g][x as usize])
            .collect();
        index.get(&(ends[f].0, ends[g].1, code(&images))).copied()
    };
    let category = assemble(raw, &composite).expect("structure-preserving maps form a category");
    let maps = category
        .morphisms()
        .map(|m| {
            let name = category.mor_name(m);
            let label = name.split('|').nth(1).unwrap_or("");
            label.bytes().map(|b| b - b'1').collect()
        })
        .collect();
    Concrete {
        category,
        objects,
        maps,
        subs: Vec::new(),
    }
}
