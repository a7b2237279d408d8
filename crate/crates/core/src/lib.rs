//! Finite posets and their algebraic duals.
//!
//! For a finite poset `P`, the dual `P*` is the set of monotone maps
//! `P -> {0 < 1}` under the pointwise order; it is always a complete lattice.
//! The second dual `P**` is the set of bound-preserving complete lattice
//! homomorphisms `P* -> {0 < 1}`, and evaluation `p -> (x -> x(p))` is an
//! order isomorphism `P -> P**`. This crate enumerates both duals and checks
//! every step of that argument against brute-force definitions.
//!
//! ```
//! use poset_dual::{DualLattice, FinitePoset};
//!
//! let p = FinitePoset::from_relations(&["a", "b"], &[("a", "b")]).unwrap();
//! let dual = DualLattice::enumerate(p).unwrap();
//! assert_eq!(dual.len(), 3);
//! ```

mod bits;
pub mod cli;
pub mod dual;
pub mod error;
pub mod ideals;
pub mod io;
pub mod poset;
pub mod second_dual;
pub mod verify;

pub use dual::{count_up_sets, DualLattice, IrreducibleReport, MonotoneMap, DEFAULT_MAX_MEMBERS};
pub use error::{Error, Result};
pub use ideals::{prime_principal_pairs, PrimePair, PrimePairReport, SubsetOfLattice};
pub use poset::{BaseId, CoverRelation, FinitePoset, MAX_ELEMENTS};
pub use second_dual::{
    enumerate_second_dual_bruteforce, evaluation_hom, hom_element, is_bounded_complete_hom,
    verify_isomorphism, BoundedHom, ExhaustiveHomCheck, IsomorphismReport,
    DEFAULT_MAX_BRUTEFORCE_MEMBERS,
};

/// Size caps applied during construction and enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_elements: usize,
    pub max_members: usize,
    pub max_bruteforce_members: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: MAX_ELEMENTS,
            max_members: DEFAULT_MAX_MEMBERS,
            max_bruteforce_members: DEFAULT_MAX_BRUTEFORCE_MEMBERS,
        }
    }
}
