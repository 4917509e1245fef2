//! Built-in example categories: chains, the pentagon N5, arbitrary finite
//! posets, and truncations of the categories of endomaps and preorders.

mod concrete;
mod endomap;
mod preord;

use std::collections::HashMap;

use thiserror::Error;

use crate::category::{assemble, FinCategory, ObjId, RawCategory};

pub use concrete::{Concrete, NamedSub};
pub use endomap::{endomap_category, endomap_decomposition, EndoObj, EndomapCategory};
pub use preord::{preord_category, preord_decomposition, PreordCategory, PreordObj};

/// Largest carrier bound accepted by the concrete builders.
pub const MAX_CARRIER: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalleryError {
    #[error("a chain needs at least one object")]
    EmptyChain,
    #[error("relation is not a partial order: {a} and {b} are related both ways")]
    NotAPartialOrder { a: String, b: String },
    #[error("unknown object {0} in relation")]
    UnknownObject(String),
    #[error("carrier bound {k} exceeds the supported maximum {max}")]
    BoundTooLarge { k: usize, max: usize },
    #[error("quotient object is not present in the truncated category")]
    QuotientExceedsBound,
    #[error("object {0} does not belong to this gallery category")]
    NotInCategory(String),
}

/// Thin category on `names` with `leq[i][j]` true iff i ≤ j. Morphisms are
/// named `i<=j`. `leq` must be reflexive and transitive.
fn thin_category(names: &[String], leq: &[Vec<bool>]) -> FinCategory {
    let n = names.len();
    let mut morphisms = Vec::new();
    let mut index = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            if leq[i][j] {
                index.insert((i, j), morphisms.len());
                morphisms.push((format!("{}<={}", names[i], names[j]), i, j));
            }
        }
    }
    let identities = (0..n).map(|i| vec![index[&(i, i)]]).collect();
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|&(_, d, c)| (d, c)).collect();
    let raw = RawCategory {
        objects: names.to_vec(),
        morphisms,
        identities,
    };
    assemble(raw, &|g, f| index.get(&(ends[f].0, ends[g].1)).copied())
        .expect("a preorder is a lawful thin category")
}

/// The linear order 1 < 2 < ... < n.
pub fn chain(n: usize) -> Result<FinCategory, GalleryError> {
    if n == 0 {
        return Err(GalleryError::EmptyChain);
    }
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
    Ok(thin_category(&names, &leq))
}

/// The two-element chain with objects named `0` and `1`.
pub fn two() -> FinCategory {
    poset_category(&["0", "1"], &[("0", "1")]).expect("0 < 1 is a partial order")
}

/// The pentagon lattice: T < Z < Z' < F and T < C < F.
pub fn n5() -> FinCategory {
    poset_category(
        &["T", "Z", "Z'", "C", "F"],
        &[("T", "Z"), ("Z", "Z'"), ("Z'", "F"), ("T", "C"), ("C", "F")],
    )
    .expect("N5 is a partial order")
}

/// Thin category of the reflexive-transitive closure of `relation`.
pub fn poset_category(
    objects: &[&str],
    relation: &[(&str, &str)],
) -> Result<FinCategory, GalleryError> {
    let n = objects.len();
    if n == 0 {
        return Err(GalleryError::EmptyChain);
    }
    let position: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in relation {
        let i = *position
            .get(a)
            .ok_or_else(|| GalleryError::UnknownObject(a.to_string()))?;
        let j = *position
            .get(b)
            .ok_or_else(|| GalleryError::UnknownObject(b.to_string()))?;
        leq[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i][k] {
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if leq[i][j] && leq[j][i] {
                return Err(GalleryError::NotAPartialOrder {
                    a: objects[i].to_string(),
                    b: objects[j].to_string(),
                });
            }
        }
    }
    let names: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
    Ok(thin_category(&names, &leq))
}

/// Object ids for a list of names; panics on unknown names.
pub fn objects_named(c: &FinCategory, names: &[&str]) -> Vec<ObjId> {
    names
        .iter()
        .map(|n| c.obj_id(n).unwrap_or_else(|| panic!("no object named {n}")))
        .collect()
}
