//! Brute-force oracles shared by the integration tests. Everything here is
//! computed from the order relation directly, never through the library's
//! lattice operations.

#![allow(dead_code)]

use poset_dual::{DualLattice, FinitePoset, MAX_ELEMENTS};

pub fn has(mask: u64, i: usize) -> bool {
    mask >> i & 1 == 1
}

pub fn subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Every labeled poset on `n` elements, by filtering all strict relations on
/// the `n(n-1)` ordered pairs for transitivity and antisymmetry.
pub fn all_labeled_posets(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for rel in 0u64..1 << pairs.len() {
        let lt = |a: usize, b: usize| {
            pairs
                .iter()
                .position(|&p| p == (a, b))
                .is_some_and(|i| has(rel, i))
        };
        let antisymmetric = (0..n).all(|a| (0..n).all(|b| !(lt(a, b) && lt(b, a))));
        let transitive =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(lt(a, b) && lt(b, c)) || lt(a, c))));
        if antisymmetric && transitive {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| has(rel, *i))
                .map(|(_, &p)| p)
                .collect();
            let names = (0..n).map(|i| format!("e{i}")).collect();
            out.push(FinitePoset::from_index_relations(names, chosen, MAX_ELEMENTS).unwrap());
        }
    }
    out
}

/// One representative per isomorphism class of posets on `n` elements.
pub fn unlabeled_posets(n: usize) -> Vec<FinitePoset> {
    let mut reps: Vec<FinitePoset> = Vec::new();
    for p in all_labeled_posets(n) {
        if !reps.iter().any(|r| r.find_isomorphism(&p).is_some()) {
            reps.push(p);
        }
    }
    reps
}

/// All posets on at most 4 elements up to isomorphism.
pub fn catalog() -> Vec<FinitePoset> {
    (0..=4).flat_map(unlabeled_posets).collect()
}

/// 200 reproducible random posets with at most 6 elements.
pub fn random_suite() -> Vec<FinitePoset> {
    const DENSITIES: [f64; 5] = [0.15, 0.3, 0.5, 0.7, 0.9];
    (0..200u64)
        .map(|i| {
            let n = (i % 7) as usize;
            FinitePoset::random(n, 1000 + i, DENSITIES[(i / 7) as usize % 5]).unwrap()
        })
        .collect()
}

/// Catalog plus the random suite.
pub fn suite() -> Vec<FinitePoset> {
    let mut all = catalog();
    all.extend(random_suite());
    all
}

/// Up-sets found by testing every subset against the order relation.
pub fn up_sets_by_filter(p: &FinitePoset) -> Vec<u64> {
    let n = p.len();
    let mut out: Vec<u64> = (0..1u64 << n)
        .filter(|&s| (0..n).all(|a| !has(s, a) || (0..n).all(|b| !p.leq(a, b) || has(s, b))))
        .collect();
    out.sort_by_key(|&s| (s.count_ones(), s));
    out
}

/// `lambda_p` from its pointwise definition.
pub fn lambda_def(p: &FinitePoset, x: usize) -> u64 {
    (0..p.len())
        .filter(|&q| !p.leq(q, x))
        .fold(0, |acc, q| acc | 1 << q)
}

/// `upsilon_p` from its pointwise definition.
pub fn upsilon_def(p: &FinitePoset, x: usize) -> u64 {
    (0..p.len())
        .filter(|&q| p.leq(x, q))
        .fold(0, |acc, q| acc | 1 << q)
}

/// Least upper bound of `family` among `members`, by scanning.
pub fn lub_by_scan(members: &[u64], family: &[u64]) -> Option<u64> {
    let uppers: Vec<u64> = members
        .iter()
        .copied()
        .filter(|&y| family.iter().all(|&k| subset(k, y)))
        .collect();
    let least: Vec<u64> = uppers
        .iter()
        .copied()
        .filter(|&u| uppers.iter().all(|&o| subset(u, o)))
        .collect();
    (least.len() == 1).then(|| least[0])
}

/// Greatest lower bound of `family` among `members`, by scanning.
pub fn glb_by_scan(members: &[u64], family: &[u64]) -> Option<u64> {
    let lowers: Vec<u64> = members
        .iter()
        .copied()
        .filter(|&y| family.iter().all(|&k| subset(y, k)))
        .collect();
    let greatest: Vec<u64> = lowers
        .iter()
        .copied()
        .filter(|&l| lowers.iter().all(|&o| subset(o, l)))
        .collect();
    (greatest.len() == 1).then(|| greatest[0])
}

/// Infimum of everything strictly above `a`, straight from the definition.
pub fn least_above_by_scan(members: &[u64], a: u64) -> u64 {
    let above: Vec<u64> = members
        .iter()
        .copied()
        .filter(|&x| x != a && subset(a, x))
        .collect();
    glb_by_scan(members, &above).expect("finite lattice")
}

/// Supremum of everything strictly below `a`.
pub fn greatest_below_by_scan(members: &[u64], a: u64) -> u64 {
    let below: Vec<u64> = members
        .iter()
        .copied()
        .filter(|&x| x != a && subset(x, a))
        .collect();
    lub_by_scan(members, &below).expect("finite lattice")
}

/// All `(u, v)` with `[0, u]` exactly the complement of `[v, 1]`, by checking
/// every pair against every member.
pub fn complementary_pairs_by_scan(members: &[u64]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for &u in members {
        for &v in members {
            if members.iter().all(|&x| subset(x, u) != subset(v, x)) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Value tables (bit `i` = value at member `i`) satisfying the all-subsets
/// homomorphism definition, by tabulating sup/inf positions of every subset.
pub struct SubsetHomOracle {
    m: usize,
    sup: Vec<usize>,
    inf: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl SubsetHomOracle {
    pub fn new(members: &[u64], full: u64) -> Self {
        let m = members.len();
        assert!(m <= 16);
        let pos = |s: u64| members.iter().position(|&x| x == s).expect("closed");
        let mut sup = Vec::with_capacity(1 << m);
        let mut inf = Vec::with_capacity(1 << m);
        for k in 0u64..1 << m {
            let chosen: Vec<u64> = (0..m).filter(|&i| has(k, i)).map(|i| members[i]).collect();
            sup.push(pos(chosen.iter().fold(0, |a, &x| a | x)));
            inf.push(pos(chosen.iter().fold(full, |a, &x| a & x)));
        }
        SubsetHomOracle {
            m,
            sup,
            inf,
            bottom: pos(0),
            top: pos(full),
        }
    }

    pub fn accepts(&self, values: u64) -> bool {
        if has(values, self.bottom) || !has(values, self.top) {
            return false;
        }
        (0u64..1 << self.m).all(|k| {
            let max = k & values != 0;
            let min = k & !values == 0;
            has(values, self.sup[k as usize]) == max && has(values, self.inf[k as usize]) == min
        })
    }
}

pub fn dual(p: &FinitePoset) -> DualLattice {
    DualLattice::enumerate(p.clone()).unwrap()
}
