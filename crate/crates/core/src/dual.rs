//! The dual lattice: all monotone maps `P -> {0 < 1}` under the pointwise order.
//!
//! A monotone map is determined by the set of points it sends to 1, and
//! monotonicity forces that set to be an up-set of `P`. Maps are stored as
//! that up-set (the *support*); pointwise `<=` is inclusion of supports, and
//! pointwise max/min over any family is union/intersection.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use crate::bits::{bit, ones};
use crate::error::{Error, Result};
use crate::poset::{BaseId, FinitePoset};

/// Default cap on the number of members of an enumerated dual.
pub const DEFAULT_MAX_MEMBERS: usize = 1 << 22;

/// A monotone map into `{0 < 1}`, stored as its preimage of 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    support: u64,
    base: BaseId,
}

impl MonotoneMap {
    pub fn support(&self) -> u64 {
        self.support
    }

    pub fn base(&self) -> BaseId {
        self.base
    }

    /// Value at element index `p`, without a range check.
    #[inline]
    pub fn at(&self, p: usize) -> bool {
        self.support & bit(p) != 0
    }

    /// Pointwise order: `self(p) <= other(p)` for every `p`.
    pub fn pointwise_leq(&self, other: &MonotoneMap) -> Result<bool> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        Ok(self.support & !other.support == 0)
    }

    fn key(&self) -> (u32, u64) {
        (self.support.count_ones(), self.support)
    }
}

/// Canonical order: by support size, then by support bits.
impl Ord for MonotoneMap {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key()
            .cmp(&other.key())
            .then(self.base.cmp(&other.base))
    }
}

impl PartialOrd for MonotoneMap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleReport {
    pub meet_irreducibles: Vec<MonotoneMap>,
    pub join_irreducibles: Vec<MonotoneMap>,
    /// Each meet-irreducible `w` with the element `p` such that `w = lambda_p`.
    pub lambda_witness: BTreeMap<MonotoneMap, usize>,
    /// Each join-irreducible `v` with the element `p` such that `v = upsilon_p`.
    pub upsilon_witness: BTreeMap<MonotoneMap, usize>,
}

#[derive(Debug, Clone)]
pub struct DualLattice {
    base: FinitePoset,
    /// Up-sets of `base`, sorted by `(popcount, bits)`.
    supports: Vec<u64>,
}

/// Visits every up-set of `base` exactly once. Elements are decided from the
/// top of a linear extension downward, and an element may only join the
/// partial up-set once everything above it has, so no non-up-set is ever built.
fn for_each_up_set(base: &FinitePoset, mut visit: impl FnMut(u64) -> ControlFlow<()>) {
    let mut order: Vec<usize> = (0..base.len()).collect();
    // Larger down-set first: anything strictly above p comes before p.
    order.sort_by_key(|&p| (std::cmp::Reverse(base.down_mask(p).count_ones()), p));
    let above: Vec<u64> = order.iter().map(|&p| base.strict_up_mask(p)).collect();

    fn descend(
        order: &[usize],
        above: &[u64],
        depth: usize,
        mask: u64,
        visit: &mut dyn FnMut(u64) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == order.len() {
            return visit(mask);
        }
        descend(order, above, depth + 1, mask, visit)?;
        if above[depth] & !mask == 0 {
            descend(order, above, depth + 1, mask | bit(order[depth]), visit)?;
        }
        ControlFlow::Continue(())
    }

    let _ = descend(&order, &above, 0, 0, &mut visit);
}

/// Number of up-sets of `base`, or `None` once it exceeds `limit`.
pub fn count_up_sets(base: &FinitePoset, limit: usize) -> Option<usize> {
    let mut count = 0usize;
    let mut over = false;
    for_each_up_set(base, |_| {
        count += 1;
        if count > limit {
            over = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    (!over).then_some(count)
}

impl DualLattice {
    pub fn enumerate(base: FinitePoset) -> Result<Self> {
        Self::enumerate_with_limit(base, DEFAULT_MAX_MEMBERS)
    }

    /// Enumerates all monotone maps of `base`, failing with `TooLarge` when
    /// there are more than `max_members` of them.
    pub fn enumerate_with_limit(base: FinitePoset, max_members: usize) -> Result<Self> {
        let Some(count) = count_up_sets(&base, max_members) else {
            return Err(Error::TooLarge {
                what: "dual lattice",
                limit: max_members,
            });
        };
        let mut supports = Vec::with_capacity(count);
        for_each_up_set(&base, |mask| {
            supports.push(mask);
            ControlFlow::Continue(())
        });
        supports.sort_unstable_by_key(|&m| (m.count_ones(), m));
        Ok(DualLattice { base, supports })
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    /// Never true: the constant maps always exist (and coincide for empty `P`).
    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    pub fn supports(&self) -> &[u64] {
        &self.supports
    }

    fn wrap(&self, support: u64) -> MonotoneMap {
        MonotoneMap {
            support,
            base: self.base.id(),
        }
    }

    pub fn member(&self, i: usize) -> MonotoneMap {
        self.wrap(self.supports[i])
    }

    /// Members in canonical order.
    pub fn members(&self) -> impl DoubleEndedIterator<Item = MonotoneMap> + ExactSizeIterator + '_ {
        self.supports.iter().map(|&s| self.wrap(s))
    }

    /// The constant-0 map.
    pub fn bottom(&self) -> MonotoneMap {
        self.wrap(0)
    }

    /// The constant-1 map.
    pub fn top(&self) -> MonotoneMap {
        self.wrap(self.base.full_mask())
    }

    /// Position of a support in canonical order.
    pub fn position(&self, support: u64) -> Option<usize> {
        self.supports
            .binary_search_by_key(&(support.count_ones(), support), |&m| (m.count_ones(), m))
            .ok()
    }

    pub fn index_of(&self, x: &MonotoneMap) -> Result<usize> {
        self.check(x)?;
        self.position(x.support)
            .ok_or(Error::NotAnUpSet { support: x.support })
    }

    /// Builds the map with the given support, which must be an up-set.
    pub fn map(&self, support: u64) -> Result<MonotoneMap> {
        if self.base.is_up_set(support) {
            Ok(self.wrap(support))
        } else {
            Err(Error::NotAnUpSet { support })
        }
    }

    pub fn check(&self, x: &MonotoneMap) -> Result<()> {
        if x.base == self.base.id() {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    pub fn format(&self, x: &MonotoneMap) -> String {
        self.base.format_subset(x.support)
    }

    pub fn evaluate(&self, x: &MonotoneMap, p: usize) -> Result<bool> {
        self.check(x)?;
        self.base.check_index(p)?;
        Ok(x.at(p))
    }

    pub fn pointwise_leq(&self, x: &MonotoneMap, y: &MonotoneMap) -> Result<bool> {
        self.check(x)?;
        x.pointwise_leq(y)
    }

    /// Least upper bound: the map that is 1 wherever some member of `family`
    /// is 1. The empty family gives the constant-0 map.
    pub fn sup_of<'a>(
        &self,
        family: impl IntoIterator<Item = &'a MonotoneMap>,
    ) -> Result<MonotoneMap> {
        let mut support = 0;
        for k in family {
            self.check(k)?;
            support |= k.support;
        }
        Ok(self.wrap(support))
    }

    /// Greatest lower bound: the map that is 1 only where every member of
    /// `family` is 1. The empty family gives the constant-1 map.
    pub fn inf_of<'a>(
        &self,
        family: impl IntoIterator<Item = &'a MonotoneMap>,
    ) -> Result<MonotoneMap> {
        let mut support = self.base.full_mask();
        for k in family {
            self.check(k)?;
            support &= k.support;
        }
        Ok(self.wrap(support))
    }

    /// `lambda_p`: 0 exactly on the down-set of `p`.
    pub fn lambda_of(&self, p: usize) -> Result<MonotoneMap> {
        self.base.check_index(p)?;
        Ok(self.wrap(self.base.full_mask() & !self.base.down_mask(p)))
    }

    /// `upsilon_p`: 1 exactly on the up-set of `p`.
    pub fn upsilon_of(&self, p: usize) -> Result<MonotoneMap> {
        self.base.check_index(p)?;
        Ok(self.wrap(self.base.up_mask(p)))
    }

    /// Members covering `x`: `x` plus one maximal point outside its support.
    pub fn upper_covers(&self, x: &MonotoneMap) -> Result<Vec<MonotoneMap>> {
        self.check(x)?;
        let outside = self.base.full_mask() & !x.support;
        Ok(ones(self.base.maximal_in(outside))
            .map(|p| self.wrap(x.support | bit(p)))
            .collect())
    }

    /// Members covered by `x`: `x` minus one minimal point of its support.
    pub fn lower_covers(&self, x: &MonotoneMap) -> Result<Vec<MonotoneMap>> {
        self.check(x)?;
        Ok(ones(self.base.minimal_in(x.support))
            .map(|p| self.wrap(x.support & !bit(p)))
            .collect())
    }

    /// Infimum of all members strictly above `a`. Every strict upper bound of
    /// `a` lies above one of its upper covers, so the covers suffice; with no
    /// covers the empty infimum is the top.
    pub fn least_above(&self, a: &MonotoneMap) -> Result<MonotoneMap> {
        let covers = self.upper_covers(a)?;
        self.inf_of(&covers)
    }

    /// Supremum of all members strictly below `a`, computed over its lower
    /// covers; the empty supremum is the bottom.
    pub fn greatest_below(&self, a: &MonotoneMap) -> Result<MonotoneMap> {
        let covers = self.lower_covers(a)?;
        self.sup_of(&covers)
    }

    pub fn is_meet_irreducible(&self, a: &MonotoneMap) -> Result<bool> {
        Ok(self.least_above(a)? != *a)
    }

    pub fn is_join_irreducible(&self, a: &MonotoneMap) -> Result<bool> {
        Ok(self.greatest_below(a)? != *a)
    }

    /// Computes both kinds of irreducibles from their lattice definitions and
    /// matches each against `lambda_p` / `upsilon_p`. Any mismatch in either
    /// direction is reported as a `LemmaViolation`.
    pub fn irreducibles(&self) -> Result<IrreducibleReport> {
        let n = self.base.len();
        let lambdas = (0..n)
            .map(|p| self.lambda_of(p))
            .collect::<Result<Vec<_>>>()?;
        let upsilons = (0..n)
            .map(|p| self.upsilon_of(p))
            .collect::<Result<Vec<_>>>()?;

        let meet_irreducibles = self.filter_members(|a| self.is_meet_irreducible(a))?;
        let join_irreducibles = self.filter_members(|a| self.is_join_irreducible(a))?;

        let lambda_witness = self.match_witnesses(
            "meet-irreducibles are exactly the lambda maps",
            "lambda",
            &meet_irreducibles,
            &lambdas,
        )?;
        let upsilon_witness = self.match_witnesses(
            "join-irreducibles are exactly the upsilon maps",
            "upsilon",
            &join_irreducibles,
            &upsilons,
        )?;

        Ok(IrreducibleReport {
            meet_irreducibles,
            join_irreducibles,
            lambda_witness,
            upsilon_witness,
        })
    }

    fn filter_members(
        &self,
        mut keep: impl FnMut(&MonotoneMap) -> Result<bool>,
    ) -> Result<Vec<MonotoneMap>> {
        let mut out = Vec::new();
        for x in self.members() {
            if keep(&x)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    fn match_witnesses(
        &self,
        lemma: &'static str,
        label: &str,
        irreducibles: &[MonotoneMap],
        images: &[MonotoneMap],
    ) -> Result<BTreeMap<MonotoneMap, usize>> {
        let mut by_support: HashMap<u64, usize> = HashMap::with_capacity(images.len());
        for (p, image) in images.iter().enumerate() {
            if let Some(q) = by_support.insert(image.support, p) {
                return Err(Error::LemmaViolation {
                    lemma,
                    counterexample: format!(
                        "{label}_{} = {label}_{} = {}",
                        self.base.name(q),
                        self.base.name(p),
                        self.format(image)
                    ),
                });
            }
        }

        let mut witness = BTreeMap::new();
        for w in irreducibles {
            match by_support.get(&w.support) {
                Some(&p) => {
                    witness.insert(*w, p);
                }
                None => {
                    return Err(Error::LemmaViolation {
                        lemma,
                        counterexample: format!(
                            "irreducible {} has no {label} witness",
                            self.format(w)
                        ),
                    })
                }
            }
        }
        if let Some((p, image)) = images
            .iter()
            .enumerate()
            .find(|(_, image)| !witness.contains_key(image))
        {
            return Err(Error::LemmaViolation {
                lemma,
                counterexample: format!(
                    "{label}_{} = {} is not irreducible",
                    self.base.name(p),
                    self.format(image)
                ),
            });
        }
        Ok(witness)
    }
}
