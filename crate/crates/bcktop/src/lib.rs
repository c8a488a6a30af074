//! Finite BCK-algebras and BCK-modules, the coset topology induced by a
//! decreasing chain of submodules, and exhaustive verification of its
//! structural properties on concrete instances.

pub mod algebra;
pub mod corpus;
pub mod group;
pub mod module;
pub mod morphisms;
pub mod set;
pub mod topology;

pub use algebra::{AlgebraError, BckAlgebra, BckAxiom};
pub use corpus::{all_chains, Corpus, CorpusModule};
pub use group::{AbelianGroup, GroupError};
pub use module::{
    enumerate_homs, BckModule, ModuleError, ModuleHom, QuotientModule, Submodule,
    SubmoduleEmbedding,
};
pub use morphisms::{
    check_hom_claims, check_space_claims, compatible_not_strict, exact_pair_check,
    run_theorem_suite, MorphismError, TopologizedHom, VerdictReport,
};
pub use set::PointSet;
pub use topology::{
    carrier_cap, factor_topology, induced_topology, product_topology, relative_opens,
    BaigTopology, Dss, FiniteMap, FiniteTopology, TopologyError,
};
