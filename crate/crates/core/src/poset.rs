//! Finite partially ordered sets.
//!
//! Elements are indexed `0..n` in the order they were given. The order relation
//! is kept as one 64-bit mask of upper bounds per element (and the transposed
//! masks of lower bounds), so `leq` is a single bit test and up-set checks are
//! word-parallel. A poset therefore holds at most [`MAX_ELEMENTS`] elements.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{bit, full_mask, ones};
use crate::error::{Error, Result};

/// Hard upper bound on the number of elements: subsets must fit in a `u64`.
pub const MAX_ELEMENTS: usize = 64;

/// Fingerprint of a poset, used to detect maps built over a different base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseId(u64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[a]` has bit `b` set iff `a <= b`.
    up: Vec<u64>,
    /// `down[b]` has bit `a` set iff `a <= b`.
    down: Vec<u64>,
    id: BaseId,
}

/// Hasse diagram of a poset: the covering pairs `(lower, upper)` as element
/// indices, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoverRelation {
    pub pairs: Vec<(usize, usize)>,
}

impl CoverRelation {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The pairs with element identifiers substituted for indices.
    pub fn named<'a>(&self, poset: &'a FinitePoset) -> Vec<(&'a str, &'a str)> {
        self.pairs
            .iter()
            .map(|&(a, b)| (poset.name(a), poset.name(b)))
            .collect()
    }
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of `pairs` over `elements`,
    /// with the default element cap.
    pub fn from_relations<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        Self::from_relations_with_cap(elements, pairs, MAX_ELEMENTS)
    }

    pub fn from_relations_with_cap<S: AsRef<str>>(
        elements: &[S],
        pairs: &[(S, S)],
        cap: usize,
    ) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.as_ref().to_owned()))
        };
        let edges = pairs
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_index_relations(names, edges, cap)
    }

    /// Core constructor over element indices. Self-pairs are accepted and
    /// ignored; any longer cycle is an error.
    pub fn from_index_relations(
        elements: Vec<String>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
        cap: usize,
    ) -> Result<Self> {
        let n = elements.len();
        let cap = cap.min(MAX_ELEMENTS);
        if n > cap {
            return Err(Error::TooManyElements { count: n, cap });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in elements.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }

        let mut adjacent = vec![0u64; n];
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::ElementOutOfRange { index: x, size: n });
                }
            }
            if a != b {
                adjacent[a] |= bit(b);
            }
        }

        let mut up: Vec<u64> = (0..n).map(|i| adjacent[i] | bit(i)).collect();
        for k in 0..n {
            let via = up[k];
            for mask in up.iter_mut() {
                if *mask & bit(k) != 0 {
                    *mask |= via;
                }
            }
        }
        let mut down = vec![0u64; n];
        for (a, &mask) in up.iter().enumerate() {
            for b in ones(mask) {
                down[b] |= bit(a);
            }
        }

        if let Some(start) = (0..n).find(|&i| up[i] & down[i] & !bit(i) != 0) {
            let cycle = smallest_cycle_through(start, &adjacent)
                .into_iter()
                .map(|i| elements[i].clone())
                .collect();
            return Err(Error::CycleDetected { cycle });
        }

        let id = fingerprint(&elements, &up);
        Ok(FinitePoset {
            elements,
            index,
            up,
            down,
            id,
        })
    }

    /// The `n`-element chain `p0 < p1 < ... `.
    pub fn chain(n: usize) -> Result<Self> {
        Self::from_index_relations(generated_names(n), (1..n).map(|i| (i - 1, i)), MAX_ELEMENTS)
    }

    /// The `n`-element antichain `p0, p1, ...`.
    pub fn antichain(n: usize) -> Result<Self> {
        Self::from_index_relations(generated_names(n), [], MAX_ELEMENTS)
    }

    /// Random poset: each pair `i < j` of indices is related with probability
    /// `density`, then closed transitively. Deterministic in all three inputs.
    ///
    /// Panics if `density` is not within `[0, 1]`.
    pub fn random(n: usize, seed: u64, density: f64) -> Result<Self> {
        assert!(
            (0.0..=1.0).contains(&density),
            "density must lie in [0, 1], got {density}"
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    pairs.push((i, j));
                }
            }
        }
        Self::from_index_relations(generated_names(n), pairs, MAX_ELEMENTS)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn id(&self) -> BaseId {
        self.id
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: i,
                size: self.len(),
            })
        }
    }

    /// `a <= b`. Panics on out-of-range indices.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] & bit(b) != 0
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn leq_by_name(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.leq(self.index_of(a)?, self.index_of(b)?))
    }

    /// Mask of all elements.
    pub fn full_mask(&self) -> u64 {
        full_mask(self.len())
    }

    /// `{ q : q >= p }`
    pub fn up_mask(&self, p: usize) -> u64 {
        self.up[p]
    }

    /// `{ q : q <= p }`
    pub fn down_mask(&self, p: usize) -> u64 {
        self.down[p]
    }

    pub fn strict_up_mask(&self, p: usize) -> u64 {
        self.up[p] & !bit(p)
    }

    pub fn strict_down_mask(&self, p: usize) -> u64 {
        self.down[p] & !bit(p)
    }

    /// Renders a subset as `{a,b}` in element order.
    pub fn format_subset(&self, mask: u64) -> String {
        let names: Vec<&str> = ones(mask & self.full_mask())
            .map(|i| self.name(i))
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// Whether `mask` is closed upward. Bits beyond the poset make it false.
    pub fn is_up_set(&self, mask: u64) -> bool {
        mask & !self.full_mask() == 0 && ones(mask).all(|p| self.up[p] & !mask == 0)
    }

    pub fn is_down_set(&self, mask: u64) -> bool {
        mask & !self.full_mask() == 0 && ones(mask).all(|p| self.down[p] & !mask == 0)
    }

    /// Whether `f` is monotone into `0 < 1`: `a <= b` implies `f(a) <= f(b)`.
    pub fn is_monotone(&self, f: impl Fn(usize) -> bool) -> bool {
        let n = self.len();
        (0..n).all(|a| !f(a) || (0..n).all(|b| !self.leq(a, b) || f(b)))
    }

    /// Elements of `mask` with nothing strictly below them inside `mask`.
    pub fn minimal_in(&self, mask: u64) -> u64 {
        ones(mask)
            .filter(|&p| self.strict_down_mask(p) & mask == 0)
            .fold(0, |acc, p| acc | bit(p))
    }

    /// Elements of `mask` with nothing strictly above them inside `mask`.
    pub fn maximal_in(&self, mask: u64) -> u64 {
        ones(mask)
            .filter(|&p| self.strict_up_mask(p) & mask == 0)
            .fold(0, |acc, p| acc | bit(p))
    }

    /// All strict pairs `a < b`, sorted.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| ones(self.strict_up_mask(a)).map(move |b| (a, b)))
            .collect()
    }

    /// The covering pairs: `a < b` with no `c` strictly between.
    pub fn transitive_reduction(&self) -> CoverRelation {
        let mut pairs = Vec::new();
        for a in 0..self.len() {
            let above = self.strict_up_mask(a);
            let implied = ones(above).fold(0, |acc, c| acc | self.strict_up_mask(c));
            pairs.extend(ones(above & !implied).map(|b| (a, b)));
        }
        CoverRelation { pairs }
    }

    /// Number of lower covers, upper covers, and the down-set size of `p`.
    fn signature(&self, p: usize) -> (u32, u32, u32, u32) {
        let below = self.strict_down_mask(p);
        let above = self.strict_up_mask(p);
        let lower = self.maximal_in(below).count_ones();
        let upper = self.minimal_in(above).count_ones();
        (
            lower,
            upper,
            self.down[p].count_ones(),
            self.up[p].count_ones(),
        )
    }

    /// An order isomorphism `self -> other` as a vector of target indices,
    /// or `None`. Exact backtracking search; intended for small posets.
    pub fn find_isomorphism(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || self.strict_pairs().len() != other.strict_pairs().len() {
            return None;
        }
        let ours: Vec<_> = (0..n).map(|p| self.signature(p)).collect();
        let theirs: Vec<_> = (0..n).map(|p| other.signature(p)).collect();
        let mut a = ours.clone();
        let mut b = theirs.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }

        // Assign the most constrained (rarest signature) elements first.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&p| (ours.iter().filter(|s| **s == ours[p]).count(), p));

        let mut image = vec![usize::MAX; n];
        let mut used = 0u64;
        if self.extend_isomorphism(other, &order, 0, &ours, &theirs, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_isomorphism(
        &self,
        other: &FinitePoset,
        order: &[usize],
        depth: usize,
        ours: &[(u32, u32, u32, u32)],
        theirs: &[(u32, u32, u32, u32)],
        image: &mut [usize],
        used: &mut u64,
    ) -> bool {
        let Some(&p) = order.get(depth) else {
            return true;
        };
        for q in 0..other.len() {
            if *used & bit(q) != 0 || ours[p] != theirs[q] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&r| {
                let s = image[r];
                self.leq(p, r) == other.leq(q, s) && self.leq(r, p) == other.leq(s, q)
            });
            if !consistent {
                continue;
            }
            image[p] = q;
            *used |= bit(q);
            if self.extend_isomorphism(other, order, depth + 1, ours, theirs, image, used) {
                return true;
            }
            *used &= !bit(q);
            image[p] = usize::MAX;
        }
        false
    }
}

fn generated_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn fingerprint(elements: &[String], up: &[u64]) -> BaseId {
    let mut hasher = DefaultHasher::new();
    elements.hash(&mut hasher);
    up.hash(&mut hasher);
    BaseId(hasher.finish())
}

/// Lexicographically smallest simple cycle through `start` in the edge graph,
/// returned closed (`start` repeated at the end). `start` must be the smallest
/// index lying on any cycle.
fn smallest_cycle_through(start: usize, adjacent: &[u64]) -> Vec<usize> {
    let reaches_start = |from: usize, visited: u64| {
        let mut seen = bit(from);
        let mut frontier = bit(from);
        while frontier != 0 {
            let mut next = 0;
            for v in ones(frontier) {
                next |= adjacent[v];
            }
            if next & bit(start) != 0 {
                return true;
            }
            frontier = next & !seen & !visited;
            seen |= frontier;
        }
        false
    };

    let mut path = vec![start];
    let mut visited = bit(start);
    let mut current = start;
    loop {
        if current != start && adjacent[current] & bit(start) != 0 {
            path.push(start);
            return path;
        }
        let next = ones(adjacent[current] & !visited)
            .find(|&v| reaches_start(v, visited))
            .expect("start lies on a cycle");
        path.push(next);
        visited |= bit(next);
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_ab() -> FinitePoset {
        FinitePoset::from_relations(&["a", "b"], &[("a", "b")]).unwrap()
    }

    #[test]
    fn two_element_chain() {
        let p = chain_ab();
        assert!(p.leq_by_name("a", "b").unwrap());
        assert!(!p.leq_by_name("b", "a").unwrap());
        assert!(p.leq(0, 0) && p.leq(1, 1));
    }

    #[test]
    fn transitivity_is_forced() {
        let p = FinitePoset::from_relations(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.leq_by_name("a", "c").unwrap());
        assert!(!p.leq_by_name("c", "a").unwrap());
    }

    #[test]
    fn antichain_is_incomparable() {
        let p = FinitePoset::antichain(2).unwrap();
        assert!(!p.leq(0, 1) && !p.leq(1, 0));
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = FinitePoset::from_relations(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(
            err,
            Error::CycleDetected {
                cycle: vec!["a".into(), "b".into(), "a".into()]
            }
        );
    }

    #[test]
    fn cycle_report_is_smallest() {
        // Two cycles through a: a<c<a and a<b<c<a. The smaller sequence
        // starts a, b.
        let err = FinitePoset::from_relations(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("c", "a"), ("a", "b"), ("b", "c"), ("d", "d")],
        )
        .unwrap_err();
        assert_eq!(
            err.to_string(),
            "order relation is not antisymmetric: cycle a < b < c < a"
        );
    }

    #[test]
    fn cycle_avoids_dead_loops() {
        // From b the smallest successor is c, which can only return to a via d.
        let err = FinitePoset::from_relations(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "b"), ("c", "d"), ("d", "a")],
        )
        .unwrap_err();
        // Smallest element on a cycle is a; b < c < b is also a cycle but
        // does not contain a.
        assert_eq!(
            err,
            Error::CycleDetected {
                cycle: ["a", "b", "c", "d", "a"].map(String::from).to_vec()
            }
        );
    }

    #[test]
    fn self_pairs_are_harmless() {
        let p = FinitePoset::from_relations(&["a"], &[("a", "a")]).unwrap();
        assert_eq!(p.strict_pairs(), vec![]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            FinitePoset::from_relations(&["a", "a"], &[]).unwrap_err(),
            Error::DuplicateElement("a".into())
        );
        assert_eq!(
            FinitePoset::from_relations(&["a"], &[("a", "z")]).unwrap_err(),
            Error::UnknownElement("z".into())
        );
        assert_eq!(
            chain_ab().leq_by_name("a", "q").unwrap_err(),
            Error::UnknownElement("q".into())
        );
        assert_eq!(
            FinitePoset::from_relations_with_cap(&["a", "b", "c"], &[], 2).unwrap_err(),
            Error::TooManyElements { count: 3, cap: 2 }
        );
        assert!(matches!(
            FinitePoset::antichain(65),
            Err(Error::TooManyElements { count: 65, cap: 64 })
        ));
    }

    #[test]
    fn sixty_four_elements_fit() {
        let p = FinitePoset::chain(64).unwrap();
        assert!(p.leq(0, 63));
        assert_eq!(p.full_mask(), u64::MAX);
        assert!(p.is_up_set(u64::MAX));
        assert!(p.is_up_set(1 << 63));
    }

    #[test]
    fn reduction_examples() {
        let chain = FinitePoset::chain(3).unwrap();
        assert_eq!(chain.transitive_reduction().pairs, vec![(0, 1), (1, 2)]);
        assert!(FinitePoset::antichain(2)
            .unwrap()
            .transitive_reduction()
            .is_empty());

        let diamond = FinitePoset::from_relations(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("a", "d")],
        )
        .unwrap();
        let covers = diamond.transitive_reduction();
        assert_eq!(
            covers.named(&diamond),
            vec![("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]
        );
    }

    #[test]
    fn monotone_examples() {
        let p = chain_ab();
        assert!(p.is_monotone(|x| x == 1));
        assert!(!p.is_monotone(|x| x == 0));
        let anti = FinitePoset::antichain(2).unwrap();
        for f in 0u64..4 {
            assert!(anti.is_monotone(|x| f & bit(x) != 0));
        }
    }

    #[test]
    fn up_and_down_sets() {
        let p = FinitePoset::from_relations(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        assert!(p.is_up_set(0b100));
        assert!(p.is_up_set(0b101));
        assert!(!p.is_up_set(0b001));
        assert!(!p.is_up_set(0b1000));
        assert!(p.is_down_set(0b011));
        assert!(!p.is_down_set(0b100));
        assert_eq!(p.minimal_in(0b111), 0b011);
        assert_eq!(p.maximal_in(0b111), 0b100);
    }

    #[test]
    fn isomorphism_examples() {
        let ab = chain_ab();
        let xy = FinitePoset::from_relations(&["x", "y"], &[("x", "y")]).unwrap();
        assert_eq!(ab.find_isomorphism(&xy), Some(vec![0, 1]));
        assert_eq!(
            ab.find_isomorphism(&FinitePoset::antichain(2).unwrap()),
            None
        );

        let diamond = FinitePoset::from_relations(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        let relabeled = FinitePoset::from_relations(
            &["w", "x", "y", "z"],
            &[("z", "x"), ("z", "w"), ("x", "y"), ("w", "y")],
        )
        .unwrap();
        let iso = diamond.find_isomorphism(&relabeled).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(diamond.leq(a, b), relabeled.leq(iso[a], iso[b]));
            }
        }
    }

    #[test]
    fn random_examples() {
        assert!(FinitePoset::random(0, 7, 0.5).unwrap().is_empty());
        let anti = FinitePoset::random(5, 42, 0.0).unwrap();
        assert!(anti.strict_pairs().is_empty());
        let chain = FinitePoset::random(5, 42, 1.0).unwrap();
        assert_eq!(chain.strict_pairs().len(), 10);
        assert_eq!(chain.transitive_reduction().len(), 4);
        assert_eq!(
            FinitePoset::random(9, 3, 0.4).unwrap(),
            FinitePoset::random(9, 3, 0.4).unwrap()
        );
    }
}
