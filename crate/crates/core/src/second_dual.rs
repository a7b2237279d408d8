//! The second dual: bound-preserving complete homomorphisms from a dual
//! lattice onto `{0 < 1}`, and the maps between it and the base poset.
//!
//! A valid hom sends exactly a principal ideal `[0, u]` to 0, so it is stored
//! by `u` alone (its *kernel top*). Pointwise order on homs is then reverse
//! inclusion of kernel tops.

use std::collections::BTreeMap;

use crate::dual::{DualLattice, MonotoneMap};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::Limits;

/// Default member cap for exhaustive enumeration of candidate maps.
pub const DEFAULT_MAX_BRUTEFORCE_MEMBERS: usize = 20;

/// Member cap for the all-subsets homomorphism definition.
pub const MAX_EXHAUSTIVE_MEMBERS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundedHom {
    kernel_top: MonotoneMap,
}

impl BoundedHom {
    /// Supremum of the preimage of 0.
    pub fn kernel_top(&self) -> MonotoneMap {
        self.kernel_top
    }

    /// `h(x)`: 0 exactly when `x <= kernel_top`.
    pub fn value(&self, x: &MonotoneMap) -> bool {
        x.support() & !self.kernel_top.support() != 0
    }

    /// Pointwise order on homs.
    pub fn pointwise_leq(&self, other: &BoundedHom) -> bool {
        other.kernel_top.support() & !self.kernel_top.support() == 0
    }

    /// Builds the hom from a member-indexed value table, if the table is a
    /// bound-preserving lattice homomorphism.
    pub fn from_values(lattice: &DualLattice, h: impl Fn(usize) -> bool) -> Option<BoundedHom> {
        if !is_bounded_complete_hom(lattice, &h) {
            return None;
        }
        let kernel = lattice
            .supports()
            .iter()
            .enumerate()
            .filter(|&(i, _)| !h(i))
            .fold(0, |acc, (_, &s)| acc | s);
        Some(BoundedHom {
            kernel_top: lattice.map(kernel).expect("union of up-sets"),
        })
    }
}

/// Whether `h` (member position -> value) sends the bottom to 0, the top to 1,
/// and preserves every pairwise join and meet. In a finite lattice this is
/// equivalent to preserving all suprema and infima; [`ExhaustiveHomCheck`]
/// checks the unreduced definition.
pub fn is_bounded_complete_hom(lattice: &DualLattice, h: impl Fn(usize) -> bool) -> bool {
    let supports = lattice.supports();
    let pos = |s: u64| {
        lattice
            .position(s)
            .expect("lattice is closed under union and intersection")
    };
    if h(pos(lattice.bottom().support())) || !h(pos(lattice.top().support())) {
        return false;
    }
    let values: Vec<bool> = (0..supports.len()).map(&h).collect();
    for (i, &a) in supports.iter().enumerate() {
        for (j, &b) in supports.iter().enumerate().skip(i + 1) {
            if values[pos(a | b)] != (values[i] || values[j]) {
                return false;
            }
            if values[pos(a & b)] != (values[i] && values[j]) {
                return false;
            }
        }
    }
    true
}

/// The homomorphism definition taken literally: `h(sup K) = max h(K)` and
/// `h(inf K) = min h(K)` for every subset `K` of members, plus the bounds.
/// Sup and inf positions of all `2^m` subsets are tabulated once.
#[derive(Debug, Clone)]
pub struct ExhaustiveHomCheck {
    members: usize,
    bottom: usize,
    top: usize,
    sup: Vec<u32>,
    inf: Vec<u32>,
}

impl ExhaustiveHomCheck {
    pub fn new(lattice: &DualLattice) -> Result<Self> {
        let m = lattice.len();
        if m > MAX_EXHAUSTIVE_MEMBERS {
            return Err(Error::TooLarge {
                what: "all-subsets homomorphism check",
                limit: MAX_EXHAUSTIVE_MEMBERS,
            });
        }
        let supports = lattice.supports();
        let full = lattice.base().full_mask();
        let subsets = 1usize << m;
        let mut sup_mask = vec![0u64; subsets];
        let mut inf_mask = vec![full; subsets];
        for k in 1..subsets {
            let low = k.trailing_zeros() as usize;
            let rest = k & (k - 1);
            sup_mask[k] = sup_mask[rest] | supports[low];
            inf_mask[k] = inf_mask[rest] & supports[low];
        }
        let pos = |s: u64| -> Result<u32> {
            lattice
                .position(s)
                .map(|p| p as u32)
                .ok_or(Error::NotAnUpSet { support: s })
        };
        Ok(ExhaustiveHomCheck {
            members: m,
            bottom: pos(0)? as usize,
            top: pos(full)? as usize,
            sup: sup_mask.into_iter().map(pos).collect::<Result<_>>()?,
            inf: inf_mask.into_iter().map(pos).collect::<Result<_>>()?,
        })
    }

    /// `values` has bit `i` set iff `h(member i) = 1`.
    pub fn accepts(&self, values: u64) -> bool {
        let at = |i: u32| values >> i & 1 == 1;
        if at(self.bottom as u32) || !at(self.top as u32) {
            return false;
        }
        (0..1u64 << self.members).all(|k| {
            let any = k & values != 0;
            let all = k & !values == 0;
            at(self.sup[k as usize]) == any && at(self.inf[k as usize]) == all
        })
    }
}

/// All bounded homs found by testing every `2^m` value table, sorted by
/// kernel top.
pub fn enumerate_second_dual_bruteforce(
    lattice: &DualLattice,
    cap: usize,
) -> Result<Vec<BoundedHom>> {
    let m = lattice.len();
    if m > cap || m >= 64 {
        return Err(Error::TooLarge {
            what: "brute-force second dual",
            limit: cap.min(63),
        });
    }
    let mut homs: Vec<BoundedHom> = (0..1u64 << m)
        .filter_map(|values| BoundedHom::from_values(lattice, |i| values >> i & 1 == 1))
        .collect();
    homs.sort();
    Ok(homs)
}

/// Evaluation at `p`: the hom `x -> x(p)`. Its kernel top is computed as the
/// supremum of all members vanishing at `p`.
pub fn evaluation_hom(lattice: &DualLattice, p: usize) -> Result<BoundedHom> {
    lattice.base().check_index(p)?;
    let kernel = lattice
        .members()
        .filter(|x| !x.at(p))
        .fold(0, |acc, x| acc | x.support());
    Ok(BoundedHom {
        kernel_top: lattice.map(kernel)?,
    })
}

/// Recovers the element of a hom: with `u` the supremum of its 0-preimage and
/// `v` the infimum of its 1-preimage, the unique `p` with `u = lambda_p` and
/// `v = upsilon_p`.
pub fn hom_element(lattice: &DualLattice, h: &BoundedHom) -> Result<usize> {
    lattice.check(&h.kernel_top)?;
    let u = h.kernel_top;
    let ones: Vec<MonotoneMap> = lattice.members().filter(|x| h.value(x)).collect();
    let v = lattice.inf_of(&ones)?;
    for p in 0..lattice.base().len() {
        if lattice.lambda_of(p)? == u && lattice.upsilon_of(p)? == v {
            return Ok(p);
        }
    }
    Err(Error::NoWitness {
        kernel_top: lattice.format(&u),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsomorphismReport {
    /// `forward[p]` is the evaluation hom at `p`.
    pub forward: Vec<BoundedHom>,
    pub backward: BTreeMap<BoundedHom, usize>,
    pub round_trip_ok: bool,
    pub order_preserved_ok: bool,
    /// `None` when brute force was not requested or the lattice is over the cap.
    pub brute_force_matched: Option<bool>,
    /// Size of the brute-force second dual, when it was computed.
    pub brute_force_size: Option<usize>,
}

impl IsomorphismReport {
    pub fn all_ok(&self) -> bool {
        self.round_trip_ok && self.order_preserved_ok && self.brute_force_matched != Some(false)
    }
}

/// Builds the dual of `poset` and checks that evaluation is an isomorphism onto
/// the second dual.
pub fn verify_isomorphism(
    poset: FinitePoset,
    use_bruteforce: bool,
    limits: &Limits,
) -> Result<IsomorphismReport> {
    let lattice = DualLattice::enumerate_with_limit(poset, limits.max_members)?;
    verify_isomorphism_on(&lattice, use_bruteforce, limits.max_bruteforce_members)
}

/// As [`verify_isomorphism`] on an already enumerated dual. Check failures are
/// recorded in the report rather than returned as errors.
pub fn verify_isomorphism_on(
    lattice: &DualLattice,
    use_bruteforce: bool,
    bruteforce_cap: usize,
) -> Result<IsomorphismReport> {
    let base = lattice.base();
    let n = base.len();
    let forward = (0..n)
        .map(|p| evaluation_hom(lattice, p))
        .collect::<Result<Vec<_>>>()?;

    let mut backward = BTreeMap::new();
    let mut round_trip_ok = true;
    for (p, h) in forward.iter().enumerate() {
        match hom_element(lattice, h) {
            Ok(q) => {
                round_trip_ok &= q == p;
                round_trip_ok &= backward.insert(*h, q).is_none();
            }
            Err(Error::NoWitness { .. }) => round_trip_ok = false,
            Err(e) => return Err(e),
        }
    }

    let order_preserved_ok =
        (0..n).all(|p| (0..n).all(|q| base.leq(p, q) == forward[p].pointwise_leq(&forward[q])));

    let (brute_force_matched, brute_force_size) =
        if use_bruteforce && lattice.len() <= bruteforce_cap.min(63) {
            let brute = enumerate_second_dual_bruteforce(lattice, bruteforce_cap)?;
            let mut image = forward.clone();
            image.sort();
            (Some(image == brute), Some(brute.len()))
        } else {
            (None, None)
        };

    Ok(IsomorphismReport {
        forward,
        backward,
        round_trip_ok,
        order_preserved_ok,
        brute_force_matched,
        brute_force_size,
    })
}
