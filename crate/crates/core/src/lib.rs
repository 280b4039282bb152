//! Finite Jordan loops: dense multiplication tables, identity checks,
//! explicit constructions, power and normality analysis, and an exhaustive
//! model search with isomorphism classification.
//!
//! Elements are indices `0..n`; loops keep their identity at 0.

pub mod closure;
pub mod constructions;
pub mod error;
pub mod iso;
pub mod perm;
pub mod powers;
pub mod props;
pub mod search;
pub mod structure;
pub mod table;

pub use closure::{ClosureKinds, SubsetClosure};
pub use constructions::{
    adjoin_identity_with_bijection, antidiagonal_idempotent, construct, even_jordan,
    exp2_to_idempotent, fermat_jordan, fermat_jordan_with_subloops, guaranteed_jordan_conditions,
    hyper_extend, idempotent_to_exp2, jordan_tower, loop_amalgam, odd_jordan, quasigroup_amalgam,
    replace_subquasigroups, union_of_groups, AmalgamSpec, HypercubeLabel, PartitionedQuasigroup,
};
pub use error::{Error, Result, Side, Violation};
pub use iso::{find_isomorphism, is_isomorphic, is_isomorphism, table_invariant, TableInvariant};
pub use perm::Permutation;
pub use powers::{
    element_order, generated_subloop, is_power_associative, is_well_defined, parenthesization_set,
    parenthesization_set_with_cap, power_profile, powers_gap_loop, right_power, PowerProfile,
    PowersLoopParams, DEFAULT_POWER_CAP,
};
pub use props::{check, counterexample, squaring_bijective, Counterexample, PropertyTag};
pub use search::{
    classify_up_to_iso, enumerate_loops, propagate, Constraints, PartialTable, SearchError,
    SearchOptions, SearchOutcome, SearchStats, StopReason,
};
pub use structure::{
    conjugation, inner_left, inner_mappings, inner_right, is_normal, is_simple, left_translation,
    normal_closure, right_translation, simplicity, Simplicity,
};
pub use table::{
    build_magma, cyclic_group, direct_product, parse_tables, Element, Kind, MagmaTable, MAX_ORDER,
};
