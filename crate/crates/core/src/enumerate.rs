//! Exhaustive enumeration of pretorsion theories and the closed-form
//! classification for finite chains.

use crate::category::{FinCategory, ObjId};
use crate::ideal::FullSub;
use crate::theory::{check_axioms, Decomposition};

/// A partition `A ⊔ B ⊔ C` of `{1..n}` as bitmasks, element `i` at bit `i - 1`.
/// The associated pair is `T = A ∪ B`, `F = B ∪ C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainDatum {
    pub n: usize,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

/// Elements of `{1..n}` present in `mask`, ascending.
pub fn members(mask: u64) -> Vec<usize> {
    (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

fn full(n: usize) -> u64 {
    assert!((1..=63).contains(&n), "chain length {n} out of range");
    (1u64 << n) - 1
}

impl ChainDatum {
    pub fn torsion(&self) -> u64 {
        self.a | self.b
    }

    pub fn free(&self) -> u64 {
        self.b | self.c
    }

    /// The partition determined by a covering pair: `A = T∖F`, `B = T∩F`,
    /// `C = F∖T`.
    pub fn from_pair(n: usize, t: u64, f: u64) -> Self {
        ChainDatum {
            n,
            a: t & !f,
            b: t & f,
            c: f & !t,
        }
    }

    /// The canonical sequence at every object of `chain(n)`, read off from the
    /// partition: `p ≤ p ≤ min(B ∩ [p,n])` on `A`, identities on `B`, and
    /// `max(B ∩ [1,p]) ≤ p ≤ p` on `C`. `None` if the datum violates
    /// condition (c) or `c` is not the chain on `n` objects.
    pub fn decompositions(&self, c: &FinCategory) -> Option<Vec<Decomposition>> {
        if !condition_c(self) || c.obj_count() != self.n {
            return None;
        }
        let obj = |i: usize| c.obj_id(&i.to_string());
        let arrow = |i: usize, j: usize| c.mor_id(&format!("{i}<={j}"));
        let bs = members(self.b);
        let mut out = Vec::with_capacity(self.n);
        for p in 1..=self.n {
            let bit = 1u64 << (p - 1);
            let (t, f) = if self.a & bit != 0 {
                (p, *bs.iter().find(|&&z| z >= p)?)
            } else if self.c & bit != 0 {
                (*bs.iter().rev().find(|&&z| z <= p)?, p)
            } else {
                (p, p)
            };
            out.push(Decomposition {
                object: obj(p)?,
                torsion: obj(t)?,
                eps: arrow(t, p)?,
                eta: arrow(p, f)?,
                free: obj(f)?,
            });
        }
        Some(out)
    }
}

/// `C ∩ (A ∪ (A+1)) = ∅`, `B ≠ ∅`, `1 ∈ T`, `n ∈ F`, with `A, B, C` a
/// partition of `{1..n}`.
pub fn condition_c(d: &ChainDatum) -> bool {
    let x = full(d.n);
    let partition = d.a | d.b | d.c == x && d.a & d.b == 0 && d.a & d.c == 0 && d.b & d.c == 0;
    let shifted = (d.a << 1) & x;
    partition
        && d.c & (d.a | shifted) == 0
        && d.b != 0
        && d.torsion() & 1 != 0
        && d.free() >> (d.n - 1) & 1 != 0
}

/// `T ∪ F = X`, `1 ∈ T`, `n ∈ F`, and whenever `i ∈ T` and `i+1 ∈ F`, either
/// `i ∈ F` or `i+1 ∈ T`.
pub fn condition_b(n: usize, t: u64, f: u64) -> bool {
    let x = full(n);
    if t | f != x || t & 1 == 0 || f >> (n - 1) & 1 == 0 {
        return false;
    }
    (1..n).all(|i| {
        let in_t = |k: usize| t >> (k - 1) & 1 == 1;
        let in_f = |k: usize| f >> (k - 1) & 1 == 1;
        !(in_t(i) && in_f(i + 1)) || in_f(i) || in_t(i + 1)
    })
}

/// Every partition of `{1..n}` into three labelled parts, in base-3 order.
pub fn partitions(n: usize) -> impl Iterator<Item = ChainDatum> {
    let total = 3u64.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut d = ChainDatum {
            n,
            a: 0,
            b: 0,
            c: 0,
        };
        for i in 0..n {
            match code % 3 {
                0 => d.a |= 1 << i,
                1 => d.b |= 1 << i,
                _ => d.c |= 1 << i,
            }
            code /= 3;
        }
        d
    })
}

/// A partition on which conditions (b) and (c) disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionMismatch {
    pub datum: ChainDatum,
    pub b_holds: bool,
    pub c_holds: bool,
}

/// Compare (b) and (c) on every partition of `{1..n}`.
pub fn condition_scan(n: usize) -> Result<usize, ConditionMismatch> {
    let mut satisfying = 0;
    for d in partitions(n) {
        let (b_holds, c_holds) = (condition_b(n, d.torsion(), d.free()), condition_c(&d));
        if b_holds != c_holds {
            return Err(ConditionMismatch {
                datum: d,
                b_holds,
                c_holds,
            });
        }
        satisfying += usize::from(c_holds);
    }
    Ok(satisfying)
}

/// All partitions satisfying condition (c), ordered by `(T, F)` masks.
pub fn chain_oracle(n: usize) -> Vec<ChainDatum> {
    assert!(n >= 1, "chains have at least one object");
    let mut out: Vec<ChainDatum> = partitions(n).filter(condition_c).collect();
    out.sort_by_key(|d| (d.torsion(), d.free()));
    out
}

/// Ordered pairs of replete object sets of `c` with non-empty intersection,
/// each exactly once. Sets are unions of isomorphism classes; the torsion mask
/// ascends in the outer loop and the free mask in the inner loop.
pub fn replete_pairs(c: &FinCategory) -> impl Iterator<Item = (FullSub<'_>, FullSub<'_>)> + '_ {
    let classes = c.iso_classes();
    let k = classes.len();
    assert!(
        k < 32,
        "{k} isomorphism classes is beyond exhaustive search"
    );
    let expand = move |mask: u64| -> FullSub<'_> {
        let mut objs: Vec<ObjId> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| classes[i].iter().copied())
            .collect();
        objs.sort();
        FullSub::new(c, objs)
    };
    let n = 1u64 << k;
    (1..n).flat_map(move |t| {
        (1..n)
            .filter(move |f| t & f != 0)
            .map(move |f| (expand(t), expand(f)))
    })
}

/// Size of the search space: ordered pairs of non-empty replete sets, and
/// those left after discarding pairs with empty intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCounts {
    pub nonempty: u128,
    pub after_pruning: u128,
}

pub fn pair_counts(c: &FinCategory) -> PairCounts {
    let k = c.iso_classes().len() as u32;
    let subsets = 1u128 << k;
    PairCounts {
        nonempty: (subsets - 1) * (subsets - 1),
        after_pruning: 4u128.pow(k) - 3u128.pow(k),
    }
}

/// Every pretorsion theory of `c`, in the order of [`replete_pairs`].
pub fn enumerate_pretorsion(c: &FinCategory) -> Vec<(FullSub<'_>, FullSub<'_>)> {
    replete_pairs(c)
        .filter(|(t, f)| matches!(check_axioms(t, f), Ok(None)))
        .collect()
}

/// Object masks of a pair in `chain(n)`, element `i` named `i`.
pub fn chain_masks(t: &FullSub<'_>, f: &FullSub<'_>) -> (u64, u64) {
    let mask = |s: &FullSub<'_>| {
        s.objects().iter().fold(0u64, |m, &o| {
            let i: usize = s
                .category()
                .obj_name(o)
                .parse()
                .expect("chain objects are numbered");
            m | 1 << (i - 1)
        })
    };
    (mask(t), mask(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::theory::{canonical_decompositions, check_pretorsion};
    use std::collections::BTreeSet;

    /// Direct evaluation of the three constraints on all 4^n subset pairs,
    /// sharing no code with the partition-based oracle.
    fn brute_force(n: usize) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
        let mut out = BTreeSet::new();
        for t in 0u64..1 << n {
            for f in 0u64..1 << n {
                let ts = members(t);
                let fs = members(f);
                let b: Vec<usize> = ts.iter().filter(|x| fs.contains(x)).copied().collect();
                let a: Vec<usize> = ts.iter().filter(|x| !fs.contains(x)).copied().collect();
                let c: Vec<usize> = fs.iter().filter(|x| !ts.contains(x)).copied().collect();
                let covers = (1..=n).all(|i| ts.contains(&i) || fs.contains(&i));
                let bad = c
                    .iter()
                    .any(|&x| a.contains(&x) || (x > 1 && a.contains(&(x - 1))));
                if covers && !bad && !b.is_empty() && ts.contains(&1) && fs.contains(&n) {
                    out.insert((ts, fs));
                }
            }
        }
        out
    }

    fn oracle_pairs(n: usize) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
        chain_oracle(n)
            .iter()
            .map(|d| (members(d.torsion()), members(d.free())))
            .collect()
    }

    #[test]
    fn oracle_counts_match_brute_force() {
        assert_eq!(brute_force(1).len(), 1);
        assert_eq!(brute_force(2).len(), 3);
        assert_eq!(brute_force(3).len(), 8);
        for n in 1..=6 {
            assert_eq!(oracle_pairs(n), brute_force(n), "n = {n}");
        }
    }

    #[test]
    fn oracle_small_cases() {
        let d = chain_oracle(1);
        assert_eq!(
            d,
            [ChainDatum {
                n: 1,
                a: 0,
                b: 1,
                c: 0
            }]
        );
        let two: BTreeSet<(u64, u64, u64)> =
            chain_oracle(2).iter().map(|d| (d.a, d.b, d.c)).collect();
        let expected: BTreeSet<(u64, u64, u64)> =
            [(0, 0b11, 0), (0, 0b01, 0b10), (0b01, 0b10, 0)].into();
        assert_eq!(two, expected);
    }

    #[test]
    fn conditions_agree_small() {
        for n in 1..=8 {
            assert_eq!(condition_scan(n).unwrap(), chain_oracle(n).len());
        }
    }

    #[test]
    fn replete_pair_counts() {
        let one = gallery::chain(1).unwrap();
        assert_eq!(replete_pairs(&one).count(), 1);
        let two = gallery::chain(2).unwrap();
        assert_eq!(
            pair_counts(&two),
            PairCounts {
                nonempty: 9,
                after_pruning: 7
            }
        );
        assert_eq!(replete_pairs(&two).count(), 7);
        let n5 = gallery::n5();
        assert_eq!(pair_counts(&n5).nonempty, 31 * 31);
        assert_eq!(replete_pairs(&n5).count(), 781);
    }

    #[test]
    fn enumeration_equals_oracle() {
        for n in 1..=5 {
            let c = gallery::chain(n).unwrap();
            let found: BTreeSet<(u64, u64)> = enumerate_pretorsion(&c)
                .iter()
                .map(|(t, f)| chain_masks(t, f))
                .collect();
            let expected: BTreeSet<(u64, u64)> = chain_oracle(n)
                .iter()
                .map(|d| (d.torsion(), d.free()))
                .collect();
            assert_eq!(found, expected, "n = {n}");
        }
    }

    #[test]
    fn enumeration_of_two_chain() {
        let c = gallery::chain(2).unwrap();
        let got: Vec<(Vec<&str>, Vec<&str>)> = enumerate_pretorsion(&c)
            .iter()
            .map(|(t, f)| (t.names(), f.names()))
            .collect();
        assert_eq!(
            got,
            [
                (vec!["1"], vec!["1", "2"]),
                (vec!["1", "2"], vec!["2"]),
                (vec!["1", "2"], vec!["1", "2"]),
            ]
        );
        for (t, f) in enumerate_pretorsion(&c) {
            assert!(check_pretorsion(&t, &f).unwrap().is_valid());
        }
    }

    #[test]
    fn n5_enumeration_contains_the_example() {
        let c = gallery::n5();
        let theories = enumerate_pretorsion(&c);
        assert!(theories
            .iter()
            .any(|(t, f)| t.names() == ["T", "Z", "Z'"] && f.names() == ["Z", "Z'", "F"]));
    }

    #[test]
    fn direct_chain_decompositions_are_canonical() {
        for n in 1..=5 {
            let c = gallery::chain(n).unwrap();
            for d in chain_oracle(n) {
                let t = FullSub::new(&c, members(d.torsion()).iter().map(|&i| ObjId::new(i - 1)));
                let f = FullSub::new(&c, members(d.free()).iter().map(|&i| ObjId::new(i - 1)));
                let canonical = canonical_decompositions(&t, &f).unwrap().unwrap();
                assert_eq!(d.decompositions(&c).unwrap(), canonical, "{d:?}");
            }
        }
    }
}
