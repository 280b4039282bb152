//! Commutative idempotent quasigroups and the loops of exponent 2 they
//! correspond to.

use crate::error::{Error, Result};
use crate::props::{check, PropertyTag};
use crate::table::{Kind, MagmaTable};

/// The commutative idempotent quasigroup `a ∗ b = (a + b)·2⁻¹ mod n` on
/// `ℤ_n`, `n` odd.
pub fn antidiagonal_idempotent(n: usize) -> Result<MagmaTable> {
    if n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "commutative idempotent quasigroups have odd order, got {n}"
        )));
    }
    let half = n.div_ceil(2);
    MagmaTable::from_fn(n, Kind::Quasigroup, |a, b| ((a + b) * half) % n)
}

fn require(m: &MagmaTable, props: &[PropertyTag], what: &str) -> Result<()> {
    for &p in props {
        if !check(m, p)? {
            return Err(Error::InvalidArgument(format!("{what} must be {p}")));
        }
    }
    Ok(())
}

/// Adjoins a new identity 0 to a commutative idempotent quasigroup and
/// makes every old element square to it. Element `i` becomes `i + 1`.
pub fn idempotent_to_exp2(q: &MagmaTable) -> Result<MagmaTable> {
    require(
        q,
        &[
            PropertyTag::Latin,
            PropertyTag::Commutative,
            PropertyTag::Idempotent,
        ],
        "the input quasigroup",
    )?;
    MagmaTable::from_fn(q.order() + 1, Kind::Loop, |x, y| match (x, y) {
        (0, _) => y,
        (_, 0) => x,
        _ if x == y => 0,
        _ => q.mul(x - 1, y - 1) + 1,
    })
}

/// Inverse of [`idempotent_to_exp2`]: drops the identity and makes every
/// element idempotent.
pub fn exp2_to_idempotent(l: &MagmaTable) -> Result<MagmaTable> {
    if l.order() < 2 {
        return Err(Error::InvalidArgument("the loop must be nontrivial".into()));
    }
    l.require_loop()?;
    require(
        l,
        &[PropertyTag::Commutative, PropertyTag::ExponentTwo],
        "the input loop",
    )?;
    MagmaTable::from_fn(l.order() - 1, Kind::Quasigroup, |a, b| {
        if a == b {
            a
        } else {
            l.mul(a + 1, b + 1) - 1
        }
    })
}

/// A commutative exponent-2 loop of even order `n ≥ 6` that is not left
/// alternative.
pub fn even_jordan(n: usize) -> Result<MagmaTable> {
    if n % 2 != 0 || n < 6 {
        return Err(Error::InvalidArgument(format!(
            "even_jordan needs an even order >= 6, got {n}"
        )));
    }
    idempotent_to_exp2(&antidiagonal_idempotent(n - 1)?)
}
