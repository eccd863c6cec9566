//! Exact combinatorics of branched covers of the disk.
//!
//! Permutations and partitions, branch tuples and their component signatures,
//! the monoid of components under gluing, the partition cell complex with its
//! Betti numbers, symmetric-group class-algebra counts and the cup product they
//! induce on cells.

pub mod cells;
pub mod classalg;
pub mod cli;
pub mod cover;
pub mod error;
pub mod monoid;
pub mod partition;
pub mod perm;
pub mod report;
pub mod ring;
pub mod sampling;
pub mod setpart;
pub mod suites;

pub use cells::{betti, cell_list, stability_check, stable_betti, CellDescriptor, StabilityReport};
pub use classalg::{
    char_table, factorization_count_brute, factorization_count_char, murnaghan_nakayama, CharTable, ClassAlgebra,
    CountMethod, FactorizationKey,
};
pub use cover::{
    boundary_monodromy, component_signature, is_local, local_conditions, realize, validate_hurwitz_point, BranchTuple,
    ComponentSignature, HurwitzCheck, HurwitzCondition, LocalConditions,
};
pub use error::{Error, Result};
pub use monoid::{
    commutation_check, conjugate_component, connected_disk, is_good, make_good, multiply, multiply_opposite,
    multiply_with, ore_witness_1, ore_witness_2, stabilize, GenusRule, GoodWitness,
};
pub use partition::{enumerate_partitions, partition_count, Partition};
pub use perm::{class_enumerate, orbits, Perm};
pub use ring::{LeadingTermReport, PolynomialReport, Ring, RingElement};
pub use setpart::SetPartition;
