//! The doubling `A ↦ 𝒥(A)` from a commutative loop of order `2ⁿ − 1` to one
//! of order `2ⁿ⁺¹ − 1`.
//!
//! Element `i` of `A` carries the `n`-bit label `i`; the hypercube vertex
//! with label `v` is stored at `(2ⁿ − 1) + v`.

use std::fmt;

use crate::error::{Error, Result};
use crate::props::{check, PropertyTag};
use crate::table::{cyclic_group, Kind, MagmaTable, MAX_ORDER};

/// A vertex of the `width`-dimensional hypercube, bit `width − 1` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HypercubeLabel {
    value: usize,
    width: u32,
}

impl HypercubeLabel {
    pub fn new(value: usize, width: u32) -> Result<Self> {
        if width >= usize::BITS || value >> width != 0 {
            return Err(Error::InvalidArgument(format!(
                "{value} does not fit in {width} bits"
            )));
        }
        Ok(Self { value, width })
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn width(self) -> u32 {
        self.width
    }

    pub fn bits(self) -> Vec<u8> {
        (0..self.width)
            .rev()
            .map(|b| ((self.value >> b) & 1) as u8)
            .collect()
    }

    fn mask(self) -> usize {
        (1 << self.width) - 1
    }

    /// Componentwise sum mod 2. Panics on differing widths.
    pub fn xor(self, other: Self) -> Self {
        assert_eq!(self.width, other.width, "label widths differ");
        Self {
            value: self.value ^ other.value,
            width: self.width,
        }
    }

    pub fn complement(self) -> Self {
        Self {
            value: !self.value & self.mask(),
            width: self.width,
        }
    }

    pub fn is_all_ones(self) -> bool {
        self.value == self.mask()
    }
}

impl fmt::Display for HypercubeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// `𝒥(A)` on `A ∪ Bₙ`:
/// `(x)(y)` as in `A`, `(x)[y] = [x ⊕ y]`, `[x][x] = [x']`, and
/// `[x][y] = (x ⊕ y)'` for `x ≠ y`.
pub fn hyper_extend(a: &MagmaTable) -> Result<MagmaTable> {
    let n = a.order();
    if !(n + 1).is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "the base loop must have order 2^k - 1, got {n}"
        )));
    }
    a.require_loop()?;
    if !check(a, PropertyTag::Commutative)? {
        return Err(Error::InvalidArgument(
            "the base loop must be commutative".into(),
        ));
    }
    let total = 2 * n + 1;
    if total > MAX_ORDER {
        return Err(Error::OrderOutOfRange {
            order: total,
            max: MAX_ORDER,
        });
    }
    let mask = n;
    MagmaTable::from_fn(total, Kind::Loop, |x, y| match (x < n, y < n) {
        (true, true) => a.mul(x, y),
        (true, false) => n + (x ^ (y - n)),
        (false, true) => n + ((x - n) ^ y),
        (false, false) => {
            let (u, v) = (x - n, y - n);
            if u == v {
                n + (!u & mask)
            } else {
                !(u ^ v) & mask
            }
        }
    })
}

/// `A₀` trivial, `A_{i+1} = 𝒥(A_i)`; order `2^{i+1} − 1`.
pub fn jordan_tower(i: u32) -> Result<MagmaTable> {
    let order = 1usize
        .checked_shl(i + 1)
        .map(|p| p - 1)
        .filter(|&o| o <= MAX_ORDER)
        .ok_or(Error::OrderOutOfRange {
            order: usize::MAX,
            max: MAX_ORDER,
        })?;
    let mut a = cyclic_group(1)?;
    while a.order() < order {
        a = hyper_extend(&a)?;
    }
    Ok(a)
}
