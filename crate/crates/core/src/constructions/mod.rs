//! Explicit constructions of nonassociative Jordan loops.

mod amalgam;
mod exp2;
mod fermat;
mod hypercube;

pub use amalgam::{
    adjoin_identity_with_bijection, guaranteed_jordan_conditions, loop_amalgam, odd_jordan,
    quasigroup_amalgam, AmalgamSpec,
};
pub use exp2::{antidiagonal_idempotent, even_jordan, exp2_to_idempotent, idempotent_to_exp2};
pub use fermat::{
    fermat_jordan, fermat_jordan_with_subloops, replace_subquasigroups, union_of_groups,
    PartitionedQuasigroup,
};
pub use hypercube::{hyper_extend, jordan_tower, HypercubeLabel};

use crate::error::{Error, Result};
use crate::table::MagmaTable;

/// A nonassociative Jordan loop of order `n`; these exist exactly for
/// `n ≥ 6`, `n ≠ 9`.
///
/// Even orders use [`even_jordan`], odd orders with `n − 1` not a power of
/// two use [`odd_jordan`], and `n = 2^m + 1` uses [`fermat_jordan`].
pub fn construct(n: usize) -> Result<MagmaTable> {
    if n < 6 || n == 9 {
        return Err(Error::NoJordanLoop(n));
    }
    if n % 2 == 0 {
        even_jordan(n)
    } else if (n - 1).is_power_of_two() {
        fermat_jordan((n - 1).trailing_zeros())
    } else {
        odd_jordan(n)
    }
}
