//! End-to-end verification of a poset against its dual and second dual.
//!
//! Each check compares a construction with its definition computed a second,
//! independent way. Check failures end up in the report; only size caps are
//! returned as errors.

use std::collections::HashSet;

use crate::bits::{bit, ones};
use crate::dual::{DualLattice, MonotoneMap};
use crate::error::{Error, Result};
use crate::ideals::{prime_principal_pairs, SubsetOfLattice};
use crate::io::Report;
use crate::poset::FinitePoset;
use crate::second_dual::{
    evaluation_hom, is_bounded_complete_hom, verify_isomorphism_on, ExhaustiveHomCheck,
    IsomorphismReport,
};
use crate::Limits;

/// Quadratic-in-members checks are skipped above this size.
pub const QUADRATIC_MEMBER_LIMIT: usize = 4096;

/// Members cap for the sup/inf scan over all small families.
pub const SUP_INF_MEMBER_LIMIT: usize = 64;

/// Members cap for comparing the two homomorphism tests on every map.
pub const HOM_EQUIVALENCE_MEMBER_LIMIT: usize = 12;

/// Element-count cap for recounting the dual over all subsets.
pub const SUBSET_RECOUNT_LIMIT: usize = 16;

/// Deliberate corruption used to exercise the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Replace `lambda_p` of the first element by `upsilon_p` in the checks.
    CorruptLambda,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub brute_force: bool,
    pub limits: Limits,
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Outcome {
    fn from_check(r: std::result::Result<(), String>) -> Self {
        match r {
            Ok(()) => Outcome::Pass,
            Err(e) => Outcome::Fail(e),
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::Pass => write!(f, "pass"),
            Outcome::Fail(why) => write!(f, "fail: {why}"),
            Outcome::Skipped(why) => write!(f, "skipped: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub poset_name: String,
    pub poset_size: usize,
    pub dual_cardinality: usize,
    pub meet_irreducibles: Option<usize>,
    pub join_irreducibles: Option<usize>,
    pub prime_pairs: Option<usize>,
    pub isomorphism: IsomorphismReport,
    /// `(check name, outcome)` in a fixed order.
    pub checks: Vec<(&'static str, Outcome)>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, o)| !o.is_fail()) && self.isomorphism.all_ok()
    }

    pub fn outcome(&self, check: &str) -> Option<&Outcome> {
        self.checks
            .iter()
            .find(|(n, _)| *n == check)
            .map(|(_, o)| o)
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.section("poset")
            .set("name", &self.poset_name)
            .set("size", self.poset_size);
        let dual = r.section("dual");
        dual.set("cardinality", self.dual_cardinality);
        let count =
            |c: Option<usize>| c.map_or_else(|| "unavailable".to_owned(), |c| c.to_string());
        dual.set("meet_irreducibles", count(self.meet_irreducibles))
            .set("join_irreducibles", count(self.join_irreducibles))
            .set("prime_pairs", count(self.prime_pairs));
        let iso = r.section("isomorphism");
        iso.set("round_trip", self.isomorphism.round_trip_ok)
            .set("order_embedding", self.isomorphism.order_preserved_ok)
            .set(
                "brute_force",
                self.isomorphism
                    .brute_force_matched
                    .map_or_else(|| "skipped".to_owned(), |b| b.to_string()),
            );
        if let Some(size) = self.isomorphism.brute_force_size {
            iso.set("second_dual_size", size);
        }
        let checks = r.section("checks");
        for (name, outcome) in &self.checks {
            checks.set(*name, outcome);
        }
        r.set("result", if self.passed() { "pass" } else { "fail" });
        r
    }
}

struct Checker<'a> {
    lattice: &'a DualLattice,
    lambdas: Vec<MonotoneMap>,
    upsilons: Vec<MonotoneMap>,
}

pub fn verify(
    name: &str,
    poset: FinitePoset,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    let lattice = DualLattice::enumerate_with_limit(poset, options.limits.max_members)?;
    verify_lattice(name, &lattice, options)
}

pub fn verify_lattice(
    name: &str,
    lattice: &DualLattice,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    let n = lattice.base().len();
    let mut lambdas = (0..n)
        .map(|p| lattice.lambda_of(p))
        .collect::<Result<Vec<_>>>()?;
    let upsilons = (0..n)
        .map(|p| lattice.upsilon_of(p))
        .collect::<Result<Vec<_>>>()?;
    if options.fault == Some(Fault::CorruptLambda) && n > 0 {
        lambdas[0] = upsilons[0];
    }
    let c = Checker {
        lattice,
        lambdas,
        upsilons,
    };
    let m = lattice.len();

    let mut checks = Vec::new();
    checks.push((
        "dual_members_are_up_sets",
        Outcome::from_check(c.members_are_up_sets()),
    ));
    checks.push((
        "sup_inf_formulas",
        if m <= SUP_INF_MEMBER_LIMIT {
            Outcome::from_check(c.sup_inf_formulas())
        } else {
            Outcome::Skipped(format!("more than {SUP_INF_MEMBER_LIMIT} members"))
        },
    ));
    checks.push((
        "evaluation_order",
        Outcome::from_check(c.evaluation_order()),
    ));
    checks.push(("embedding_order", Outcome::from_check(c.embedding_order())));
    checks.push(("cover_witness", Outcome::from_check(c.cover_witness())));

    let (irreducible_check, meet_count, join_count) = c.irreducibles();
    checks.push(("irreducibles", irreducible_check));

    let quadratic_skip = || Outcome::Skipped(format!("more than {QUADRATIC_MEMBER_LIMIT} members"));
    let mut prime_count = None;
    if m <= QUADRATIC_MEMBER_LIMIT {
        checks.push((
            "principal_primes",
            Outcome::from_check(c.principal_primes()),
        ));
        let (outcome, count) = c.complementary_pairs();
        prime_count = count;
        checks.push(("complementary_pairs", outcome));
    } else {
        checks.push(("principal_primes", quadratic_skip()));
        checks.push(("complementary_pairs", quadratic_skip()));
    }

    checks.push((
        "second_dual_kernel_structure",
        Outcome::from_check(c.kernel_structure()),
    ));
    checks.push((
        "hom_check_equivalence",
        if !options.brute_force {
            Outcome::Skipped("brute force not requested".into())
        } else if m > HOM_EQUIVALENCE_MEMBER_LIMIT {
            Outcome::Skipped(format!("more than {HOM_EQUIVALENCE_MEMBER_LIMIT} members"))
        } else {
            Outcome::from_check(c.hom_check_equivalence())
        },
    ));

    let isomorphism = verify_isomorphism_on(
        lattice,
        options.brute_force,
        options.limits.max_bruteforce_members,
    )?;
    let flag = |ok: bool, what: &str| {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(what.to_owned())
        }
    };
    checks.push((
        "isomorphism_round_trip",
        flag(isomorphism.round_trip_ok, "G(F(p)) differs from p"),
    ));
    checks.push((
        "isomorphism_order_embedding",
        flag(
            isomorphism.order_preserved_ok,
            "p <= q does not match F(p) <= F(q)",
        ),
    ));
    checks.push((
        "isomorphism_brute_force",
        match isomorphism.brute_force_matched {
            Some(ok) => flag(
                ok,
                "evaluation homs differ from the brute-force second dual",
            ),
            None if options.brute_force => Outcome::Skipped(format!(
                "more than {} members",
                options.limits.max_bruteforce_members
            )),
            None => Outcome::Skipped("brute force not requested".into()),
        },
    ));

    Ok(VerificationReport {
        poset_name: name.to_owned(),
        poset_size: n,
        dual_cardinality: m,
        meet_irreducibles: meet_count,
        join_irreducibles: join_count,
        prime_pairs: prime_count,
        isomorphism,
        checks,
    })
}

type Check = std::result::Result<(), String>;

impl Checker<'_> {
    fn base(&self) -> &FinitePoset {
        self.lattice.base()
    }

    fn fmt(&self, x: &MonotoneMap) -> String {
        self.lattice.format(x)
    }

    fn fmt_support(&self, s: u64) -> String {
        self.base().format_subset(s)
    }

    fn members_are_up_sets(&self) -> Check {
        let base = self.base();
        let supports = self.lattice.supports();
        for &s in supports {
            if !base.is_up_set(s) {
                return Err(format!("member {} is not an up-set", self.fmt_support(s)));
            }
        }
        if supports
            .windows(2)
            .any(|w| (w[0].count_ones(), w[0]) >= (w[1].count_ones(), w[1]))
        {
            return Err("members are not strictly in canonical order".into());
        }
        let n = base.len();
        if n <= SUBSET_RECOUNT_LIMIT {
            let monotone = (0..1u64 << n)
                .filter(|&s| base.is_monotone(|p| s & bit(p) != 0))
                .count();
            if monotone != supports.len() {
                return Err(format!(
                    "{} monotone maps among all subsets, {} enumerated",
                    monotone,
                    supports.len()
                ));
            }
        }
        Ok(())
    }

    /// Least upper / greatest lower bound found by scanning all members.
    fn scan_bound(&self, family: &[u64], upper: bool) -> Option<u64> {
        let supports = self.lattice.supports();
        let le = |a: u64, b: u64| a & !b == 0;
        let bounds: Vec<u64> = supports
            .iter()
            .copied()
            .filter(|&y| {
                family
                    .iter()
                    .all(|&k| if upper { le(k, y) } else { le(y, k) })
            })
            .collect();
        bounds.iter().copied().find(|&b| {
            bounds
                .iter()
                .all(|&o| if upper { le(b, o) } else { le(o, b) })
        })
    }

    fn sup_inf_formulas(&self) -> Check {
        let l = self.lattice;
        let m = l.len();
        let mut families: Vec<Vec<usize>> = vec![vec![], (0..m).collect()];
        for i in 0..m {
            families.push(vec![i]);
            for j in i + 1..m {
                families.push(vec![i, j]);
                for k in j + 1..m {
                    families.push(vec![i, j, k]);
                }
            }
        }
        for family in families {
            let maps: Vec<MonotoneMap> = family.iter().map(|&i| l.member(i)).collect();
            let supports: Vec<u64> = maps.iter().map(|x| x.support()).collect();
            let sup = l.sup_of(&maps).map_err(|e| e.to_string())?;
            let inf = l.inf_of(&maps).map_err(|e| e.to_string())?;
            let show = || {
                let items: Vec<String> = maps.iter().map(|x| self.fmt(x)).collect();
                format!("K = [{}]", items.join(" "))
            };
            if self.scan_bound(&supports, true) != Some(sup.support()) {
                return Err(format!("sup of {} is not {}", show(), self.fmt(&sup)));
            }
            if self.scan_bound(&supports, false) != Some(inf.support()) {
                return Err(format!("inf of {} is not {}", show(), self.fmt(&inf)));
            }
        }
        Ok(())
    }

    fn evaluation_order(&self) -> Check {
        for x in self.lattice.members() {
            for p in 0..self.base().len() {
                let value = x.at(p);
                let below_lambda = x.support() & !self.lambdas[p].support() == 0;
                let above_upsilon = self.upsilons[p].support() & !x.support() == 0;
                if !value != below_lambda || value != above_upsilon {
                    return Err(format!("x = {}, p = {}", self.fmt(&x), self.base().name(p)));
                }
            }
        }
        Ok(())
    }

    fn embedding_order(&self) -> Check {
        let base = self.base();
        let n = base.len();
        let le = |a: &MonotoneMap, b: &MonotoneMap| a.support() & !b.support() == 0;
        for images in [&self.lambdas, &self.upsilons] {
            let distinct: HashSet<u64> = images.iter().map(|x| x.support()).collect();
            if distinct.len() != n {
                return Err("embedding is not injective".into());
            }
        }
        for p in 0..n {
            for q in 0..n {
                let order = base.leq(p, q);
                let by_lambda = le(&self.lambdas[q], &self.lambdas[p]);
                let by_upsilon = le(&self.upsilons[q], &self.upsilons[p]);
                if order != by_lambda || order != by_upsilon {
                    return Err(format!("p = {}, q = {}", base.name(p), base.name(q)));
                }
            }
        }
        Ok(())
    }

    fn cover_witness(&self) -> Check {
        let base = self.base();
        for (p, lambda) in self.lambdas.iter().enumerate() {
            let above = self
                .lattice
                .least_above(lambda)
                .map_err(|e| e.to_string())?;
            let expected = base.full_mask() & !base.strict_down_mask(p);
            if above.support() != expected {
                return Err(format!(
                    "least element above lambda_{} is {}, expected {}",
                    base.name(p),
                    self.fmt(&above),
                    self.fmt_support(expected)
                ));
            }
            // `above <= x` exactly when every zero of x lies strictly below p.
            let strict_down = base.strict_down_mask(p);
            for x in self.lattice.members() {
                let zeros = base.full_mask() & !x.support();
                let leq = above.support() & !x.support() == 0;
                if leq != (zeros & !strict_down == 0) {
                    return Err(format!(
                        "{} <= {} disagrees with its zeros lying below {}",
                        self.fmt(&above),
                        self.fmt(&x),
                        base.name(p)
                    ));
                }
            }
        }
        Ok(())
    }

    fn irreducibles(&self) -> (Outcome, Option<usize>, Option<usize>) {
        let report = match self.lattice.irreducibles() {
            Ok(r) => r,
            Err(e) => return (Outcome::Fail(e.to_string()), None, None),
        };
        let n = self.base().len();
        let meet = report.meet_irreducibles.len();
        let join = report.join_irreducibles.len();
        let mut outcome = Outcome::Pass;
        if meet != n || join != n {
            outcome = Outcome::Fail(format!(
                "{meet} meet- and {join} join-irreducibles for {n} elements"
            ));
        }
        for (w, &p) in &report.lambda_witness {
            if self.lambdas[p] != *w {
                outcome = Outcome::Fail(format!(
                    "meet-irreducible {} is not lambda_{}",
                    self.fmt(w),
                    self.base().name(p)
                ));
                break;
            }
        }
        for (w, &p) in &report.upsilon_witness {
            if self.upsilons[p] != *w {
                outcome = Outcome::Fail(format!(
                    "join-irreducible {} is not upsilon_{}",
                    self.fmt(w),
                    self.base().name(p)
                ));
                break;
            }
        }
        (outcome, Some(meet), Some(join))
    }

    fn principal_primes(&self) -> Check {
        let l = self.lattice;
        let base = self.base();
        for p in 0..base.len() {
            let name = base.name(p);
            let ideal = l
                .principal_ideal(&self.lambdas[p])
                .map_err(|e| e.to_string())?;
            let filter = l
                .principal_filter(&self.upsilons[p])
                .map_err(|e| e.to_string())?;
            if !ideal.is_prime_ideal() {
                return Err(format!("[0, lambda_{name}] is not a prime ideal"));
            }
            if !filter.is_prime_filter() {
                return Err(format!("[upsilon_{name}, 1] is not a prime filter"));
            }
            if filter != ideal.complement() {
                return Err(format!(
                    "[upsilon_{name}, 1] is not the complement of [0, lambda_{name}]"
                ));
            }
            if self.lambdas[p].at(p) || !self.upsilons[p].at(p) {
                return Err(format!("lambda_{name} and upsilon_{name} agree at {name}"));
            }
        }
        Ok(())
    }

    fn complementary_pairs(&self) -> (Outcome, Option<usize>) {
        let report = match prime_principal_pairs(self.lattice) {
            Ok(r) => r,
            Err(e) => return (Outcome::Fail(e.to_string()), None),
        };
        let count = report.pairs.len();
        if count != self.base().len() {
            return (
                Outcome::Fail(format!("{count} pairs for {} elements", self.base().len())),
                Some(count),
            );
        }
        for pair in &report.pairs {
            let p = pair.element;
            if pair.ideal_top != self.lambdas[p] || pair.filter_bottom != self.upsilons[p] {
                return (
                    Outcome::Fail(format!(
                        "pair ({}, {}) is witnessed by {} but does not match its lambda/upsilon",
                        self.fmt(&pair.ideal_top),
                        self.fmt(&pair.filter_bottom),
                        self.base().name(p)
                    )),
                    Some(count),
                );
            }
        }
        (Outcome::Pass, Some(count))
    }

    fn kernel_structure(&self) -> Check {
        let l = self.lattice;
        for p in 0..self.base().len() {
            let h = evaluation_hom(l, p).map_err(|e| e.to_string())?;
            let zeros: Vec<usize> = (0..l.len()).filter(|&i| !l.member(i).at(p)).collect();
            let ones_: Vec<usize> = (0..l.len()).filter(|&i| l.member(i).at(p)).collect();
            let zero_set = SubsetOfLattice::from_indices(l, zeros).map_err(|e| e.to_string())?;
            let one_set = SubsetOfLattice::from_indices(l, ones_).map_err(|e| e.to_string())?;
            let one_maps: Vec<MonotoneMap> = one_set.maps().collect();
            let v = l.inf_of(&one_maps).map_err(|e| e.to_string())?;
            let ideal = l
                .principal_ideal(&h.kernel_top())
                .map_err(|e| e.to_string())?;
            let filter = l.principal_filter(&v).map_err(|e| e.to_string())?;
            let name = self.base().name(p);
            if zero_set != ideal {
                return Err(format!(
                    "0-preimage of F({name}) is not [0, {}]",
                    self.fmt(&h.kernel_top())
                ));
            }
            if one_set != filter {
                return Err(format!(
                    "1-preimage of F({name}) is not [{}, 1]",
                    self.fmt(&v)
                ));
            }
            if ideal.complement() != filter {
                return Err(format!(
                    "kernel ideal and filter of F({name}) are not complementary"
                ));
            }
        }
        Ok(())
    }

    fn hom_check_equivalence(&self) -> Check {
        let l = self.lattice;
        let exhaustive = ExhaustiveHomCheck::new(l).map_err(|e| e.to_string())?;
        for values in 0..1u64 << l.len() {
            let pairwise = is_bounded_complete_hom(l, |i| values >> i & 1 == 1);
            if pairwise != exhaustive.accepts(values) {
                let ones: Vec<String> = ones(values).map(|i| self.fmt(&l.member(i))).collect();
                return Err(format!(
                    "tests disagree on the map sending exactly [{}] to 1",
                    ones.join(" ")
                ));
            }
        }
        Ok(())
    }
}

/// Maps an error to the CLI exit status: 3 for size caps, 1 for lemma
/// failures, 2 for anything else.
pub fn exit_code_for(err: &Error) -> i32 {
    if err.is_size_cap() {
        3
    } else if err.is_lemma_failure() {
        1
    } else {
        2
    }
}
