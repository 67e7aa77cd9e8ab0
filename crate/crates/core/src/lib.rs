//! Exact computations for the modular isomorphism problem on finite p-groups.
//!
//! Groups are dense multiplication tables ([`Group`]), subgroups are bitsets
//! ([`Subgroup`]), and the modular group algebra `F_p G` is handled with exact
//! row-reduced linear algebra over `GF(p)` ([`GroupAlgebra`], [`Subspace`]).
//! On top of these sit the invariant batteries ([`Fingerprint`]), elementary
//! decompositions, the `D/Q/S` families and the shipped group corpus.

pub mod abelian;
pub mod algebra;
pub mod bits;
pub mod catalog;
pub mod decomp;
pub mod error;
pub mod families;
pub mod group;
pub mod invariants;
pub mod io;
pub mod iso;
pub mod jennings;
pub mod lemmas;
pub mod linalg;
pub mod perm;
pub mod pgroup;
pub mod residue;

pub use abelian::{abelian_type, AbelianType};
pub use algebra::{AlgebraSubspace, GroupAlgebra, SeedPath};
pub use bits::ElementSet;
pub use catalog::{corpus, load_annotations, load_group, Annotations, CorpusEntry};
pub use decomp::{elementary_decomposition, ElementaryDecomposition};
pub use error::{Error, Result};
pub use families::{build_family, FamilyGroup, FamilyKind, FamilySpec};
pub use group::{direct_product, Group, Subgroup};
pub use invariants::{compare, fingerprint, Fingerprint, Verdict};
pub use iso::isomorphic;
pub use linalg::{FpVec, Subspace};
pub use perm::group_from_permutations;
pub use pgroup::ConjugacyClasses;
pub use residue::Omega1Verdict;
