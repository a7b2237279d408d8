//! Ideals, filters and primeness over a dual lattice.
//!
//! Conventions: the empty subset is both an ideal and a filter. A prime ideal
//! (filter) must be nonempty and have a nonempty complement, so the whole
//! lattice is never prime.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::dual::{DualLattice, MonotoneMap};
use crate::error::{Error, Result};

/// A subset of a dual lattice, as a bitmask over its canonical member order.
#[derive(Debug, Clone)]
pub struct SubsetOfLattice<'a> {
    lattice: &'a DualLattice,
    members: FixedBitSet,
}

impl PartialEq for SubsetOfLattice<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.base().id() == other.lattice.base().id() && self.members == other.members
    }
}

impl Eq for SubsetOfLattice<'_> {}

impl<'a> SubsetOfLattice<'a> {
    pub fn empty(lattice: &'a DualLattice) -> Self {
        SubsetOfLattice {
            lattice,
            members: FixedBitSet::with_capacity(lattice.len()),
        }
    }

    pub fn full(lattice: &'a DualLattice) -> Self {
        let mut s = Self::empty(lattice);
        s.members.insert_range(..);
        s
    }

    /// Subset from member positions; out-of-range positions are rejected.
    pub fn from_indices(
        lattice: &'a DualLattice,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut s = Self::empty(lattice);
        for i in indices {
            if i >= lattice.len() {
                return Err(Error::ElementOutOfRange {
                    index: i,
                    size: lattice.len(),
                });
            }
            s.members.insert(i);
        }
        Ok(s)
    }

    pub fn from_maps<'m>(
        lattice: &'a DualLattice,
        maps: impl IntoIterator<Item = &'m MonotoneMap>,
    ) -> Result<Self> {
        let mut s = Self::empty(lattice);
        for x in maps {
            s.members.insert(lattice.index_of(x)?);
        }
        Ok(s)
    }

    fn from_predicate(lattice: &'a DualLattice, mut keep: impl FnMut(u64) -> bool) -> Self {
        let mut s = Self::empty(lattice);
        for (i, &support) in lattice.supports().iter().enumerate() {
            if keep(support) {
                s.members.insert(i);
            }
        }
        s
    }

    pub fn lattice(&self) -> &'a DualLattice {
        self.lattice
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn contains(&self, x: &MonotoneMap) -> bool {
        self.lattice
            .index_of(x)
            .is_ok_and(|i| self.members.contains(i))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn maps(&self) -> impl Iterator<Item = MonotoneMap> + '_ {
        self.members.ones().map(|i| self.lattice.member(i))
    }

    pub fn complement(&self) -> Self {
        let mut members = self.members.clone();
        members.toggle_range(..);
        SubsetOfLattice {
            lattice: self.lattice,
            members,
        }
    }

    fn contains_support(&self, support: u64) -> bool {
        self.lattice
            .position(support)
            .is_some_and(|i| self.members.contains(i))
    }

    /// Closed downward (checked on lower covers) and under pairwise join.
    pub fn is_ideal(&self) -> bool {
        let l = self.lattice;
        let down_closed = self.maps().all(|x| {
            l.lower_covers(&x)
                .expect("member of this lattice")
                .iter()
                .all(|c| self.contains_support(c.support()))
        });
        down_closed && self.closed_under(|a, b| a | b)
    }

    /// Closed upward (checked on upper covers) and under pairwise meet.
    pub fn is_filter(&self) -> bool {
        let l = self.lattice;
        let up_closed = self.maps().all(|x| {
            l.upper_covers(&x)
                .expect("member of this lattice")
                .iter()
                .all(|c| self.contains_support(c.support()))
        });
        up_closed && self.closed_under(|a, b| a & b)
    }

    fn closed_under(&self, op: impl Fn(u64, u64) -> u64) -> bool {
        let supports: Vec<u64> = self.indices().map(|i| self.lattice.supports()[i]).collect();
        supports.iter().enumerate().all(|(i, &a)| {
            supports[i + 1..]
                .iter()
                .all(|&b| self.contains_support(op(a, b)))
        })
    }

    pub fn is_prime_ideal(&self) -> bool {
        let rest = self.complement();
        !self.is_empty() && !rest.is_empty() && self.is_ideal() && rest.is_filter()
    }

    pub fn is_prime_filter(&self) -> bool {
        let rest = self.complement();
        !self.is_empty() && !rest.is_empty() && self.is_filter() && rest.is_ideal()
    }
}

impl DualLattice {
    /// `[0, a]`
    pub fn principal_ideal(&self, a: &MonotoneMap) -> Result<SubsetOfLattice<'_>> {
        self.index_of(a)?;
        let top = a.support();
        Ok(SubsetOfLattice::from_predicate(self, |x| x & !top == 0))
    }

    /// `[a, 1]`
    pub fn principal_filter(&self, a: &MonotoneMap) -> Result<SubsetOfLattice<'_>> {
        self.index_of(a)?;
        let bottom = a.support();
        Ok(SubsetOfLattice::from_predicate(self, |x| bottom & !x == 0))
    }
}

/// A complementary principal pair `[0, u]` / `[v, 1]` and the element `p`
/// with `u = lambda_p`, `v = upsilon_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePair {
    pub ideal_top: MonotoneMap,
    pub filter_bottom: MonotoneMap,
    pub element: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePairReport {
    /// Sorted canonically by `filter_bottom`.
    pub pairs: Vec<PrimePair>,
}

/// Every `(u, v)` with `[0, u]` equal to the complement of `[v, 1]`.
///
/// For a fixed `u` the only possible `v` is the infimum of the complement of
/// `[0, u]`, so one candidate per member covers all pairs.
pub fn complementary_principal_pairs(lattice: &DualLattice) -> Vec<(MonotoneMap, MonotoneMap)> {
    let supports = lattice.supports();
    let full = lattice.base().full_mask();
    let mut out = Vec::new();
    for &u in supports {
        let outside = supports.iter().filter(|&&x| x & !u != 0);
        let mut any = false;
        let v = outside.fold(full, |acc, &x| {
            any = true;
            acc & x
        });
        if !any {
            continue;
        }
        let complementary = supports.iter().all(|&x| (x & !u != 0) == (v & !x == 0));
        if complementary {
            out.push((
                lattice.map(u).expect("member"),
                lattice.map(v).expect("intersection of up-sets"),
            ));
        }
    }
    out
}

/// Finds all complementary principal ideal/filter pairs and witnesses each
/// with the unique `p` such that `u = lambda_p` and `v = upsilon_p`.
pub fn prime_principal_pairs(lattice: &DualLattice) -> Result<PrimePairReport> {
    const LEMMA: &str = "complementary principal pairs are exactly (lambda_p, upsilon_p)";
    let base = lattice.base();
    let n = base.len();

    let mut by_lambda: HashMap<u64, usize> = HashMap::with_capacity(n);
    for p in 0..n {
        by_lambda.insert(lattice.lambda_of(p)?.support(), p);
    }

    let mut pairs = Vec::new();
    let mut seen = vec![false; n];
    for (u, v) in complementary_principal_pairs(lattice) {
        let witness = by_lambda
            .get(&u.support())
            .copied()
            .filter(|&p| lattice.upsilon_of(p).is_ok_and(|up| up == v));
        let Some(p) = witness else {
            return Err(Error::LemmaViolation {
                lemma: LEMMA,
                counterexample: format!(
                    "pair u = {}, v = {} has no witness",
                    lattice.format(&u),
                    lattice.format(&v)
                ),
            });
        };
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::LemmaViolation {
                lemma: LEMMA,
                counterexample: format!("element {} witnesses two pairs", base.name(p)),
            });
        }
        pairs.push(PrimePair {
            ideal_top: u,
            filter_bottom: v,
            element: p,
        });
    }

    if let Some(p) = seen.iter().position(|s| !s) {
        return Err(Error::LemmaViolation {
            lemma: LEMMA,
            counterexample: format!(
                "[0, lambda_{0}] and [upsilon_{0}, 1] are not complementary",
                base.name(p)
            ),
        });
    }

    pairs.sort_by_key(|pair| pair.filter_bottom);
    Ok(PrimePairReport { pairs })
}
