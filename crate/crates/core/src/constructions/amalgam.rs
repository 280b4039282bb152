//! Quasigroup and loop amalgams.
//!
//! A quasigroup amalgam lives on `S × G`, with `(s, g)` stored at
//! `s + |S|·g`. Loop amalgams add an identity at 0 and store `(s, g)` at
//! `1 + s + |S|·g`. The diagonal loops `L_g` live on `{0} ∪ S` where
//! carrier element `s` is loop element `s + 1`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::props::{check, PropertyTag};
use crate::table::{cyclic_group, Element, Kind, MagmaTable};

use super::exp2::antidiagonal_idempotent;

/// Input bundle for the amalgam constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamSpec {
    base: MagmaTable,
    carrier: usize,
    diagonal_loops: Vec<MagmaTable>,
    blocks: BTreeMap<(Element, Element), MagmaTable>,
}

impl AmalgamSpec {
    /// `blocks` must hold a quasigroup for every ordered pair `g ≠ h`;
    /// diagonal entries are optional and only read by
    /// [`adjoin_identity_with_bijection`].
    pub fn new(
        base: MagmaTable,
        carrier: usize,
        diagonal_loops: Vec<MagmaTable>,
        blocks: BTreeMap<(Element, Element), MagmaTable>,
    ) -> Result<Self> {
        base.as_quasigroup()?;
        if carrier == 0 {
            return Err(Error::InvalidArgument("the carrier set is empty".into()));
        }
        let g = base.order();
        if diagonal_loops.len() != g {
            return Err(Error::InvalidArgument(format!(
                "need {g} diagonal loops, got {}",
                diagonal_loops.len()
            )));
        }
        for l in &diagonal_loops {
            l.require_loop()?;
            if l.order() != carrier + 1 {
                return Err(Error::OrderMismatch(carrier + 1, l.order()));
            }
        }
        for (&(a, b), q) in &blocks {
            if a >= g || b >= g {
                return Err(Error::ElementOutOfRange {
                    element: a.max(b),
                    order: g,
                });
            }
            q.as_quasigroup()?;
            if q.order() != carrier {
                return Err(Error::OrderMismatch(carrier, q.order()));
            }
        }
        for a in 0..g {
            for b in (0..g).filter(|&b| b != a) {
                if !blocks.contains_key(&(a, b)) {
                    return Err(Error::InvalidArgument(format!(
                        "missing block quasigroup for ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Self {
            base,
            carrier,
            diagonal_loops,
            blocks,
        })
    }

    /// The restricted form with one loop `L` on every diagonal and one
    /// quasigroup `Q` on every off-diagonal block.
    pub fn uniform(base: MagmaTable, l: &MagmaTable, q: &MagmaTable) -> Result<Self> {
        let g = base.order();
        if q.order() + 1 != l.order() {
            return Err(Error::OrderMismatch(l.order() - 1, q.order()));
        }
        let blocks = (0..g)
            .flat_map(|a| (0..g).map(move |b| (a, b)))
            .filter(|(a, b)| a != b)
            .map(|key| (key, q.clone()))
            .collect();
        Self::new(base, q.order(), vec![l.clone(); g], blocks)
    }

    pub fn base(&self) -> &MagmaTable {
        &self.base
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn diagonal_loop(&self, g: Element) -> &MagmaTable {
        &self.diagonal_loops[g]
    }

    pub fn block(&self, g: Element, h: Element) -> Option<&MagmaTable> {
        self.blocks.get(&(g, h))
    }
}

/// `(s, g)(t, h) = (s ▽_{g,h} t, g ∘ h)` on `S × G`; `blocks[g·|G| + h]`
/// holds `▽_{g,h}`.
pub fn quasigroup_amalgam(g: &MagmaTable, blocks: &[MagmaTable]) -> Result<MagmaTable> {
    g.as_quasigroup()?;
    let n = g.order();
    if blocks.len() != n * n {
        return Err(Error::InvalidArgument(format!(
            "need {} block quasigroups, got {}",
            n * n,
            blocks.len()
        )));
    }
    let s = blocks[0].order();
    for b in blocks {
        b.as_quasigroup()?;
        if b.order() != s {
            return Err(Error::OrderMismatch(s, b.order()));
        }
    }
    MagmaTable::from_fn(s * n, Kind::Quasigroup, |x, y| {
        let (a, ga) = (x % s, x / s);
        let (b, gb) = (y % s, y / s);
        blocks[ga * n + gb].mul(a, b) + s * g.mul(ga, gb)
    })
}

/// Adjoins an identity to the quasigroup amalgam of `spec` by replacing each
/// block `(g, c(g))` with `L_g` minus its identity row and column. The raw
/// magma is returned unvalidated: it is a loop only when `c` is the
/// identity and `G` is idempotent.
pub fn adjoin_identity_with_bijection(spec: &AmalgamSpec, c: &Permutation) -> Result<MagmaTable> {
    let g = spec.base.order();
    if c.len() != g {
        return Err(Error::OrderMismatch(g, c.len()));
    }
    let s = spec.carrier;
    let mut blocks = Vec::with_capacity(g * g);
    for a in 0..g {
        for b in 0..g {
            if c.apply(a) == b {
                blocks.push(None);
            } else {
                let q = spec.block(a, b).ok_or_else(|| {
                    Error::InvalidArgument(format!("missing block quasigroup for ({a}, {b})"))
                })?;
                blocks.push(Some(q));
            }
        }
    }
    MagmaTable::from_fn(g * s + 1, Kind::Magma, |x, y| {
        if x == 0 {
            return y;
        }
        if y == 0 {
            return x;
        }
        let (a, ga) = ((x - 1) % s, (x - 1) / s);
        let (b, gb) = ((y - 1) % s, (y - 1) / s);
        let target = spec.base.mul(ga, gb);
        match blocks[ga * g + gb] {
            Some(q) => 1 + q.mul(a, b) + s * target,
            None => match spec.diagonal_loops[ga].mul(a + 1, b + 1) {
                0 => 0,
                z => z + s * target,
            },
        }
    })
}

/// The loop amalgam `𝒜(G, ℒ, 𝒬)` of order `|G||S| + 1`.
pub fn loop_amalgam(spec: &AmalgamSpec) -> Result<MagmaTable> {
    if !check(&spec.base, PropertyTag::Idempotent)? {
        return Err(Error::InvalidArgument(
            "the loop amalgam needs an idempotent base quasigroup".into(),
        ));
    }
    let built = adjoin_identity_with_bijection(spec, &Permutation::identity(spec.base.order()))?;
    built.with_kind(Kind::Loop)
}

/// Whether the uniform amalgam `𝒜(G, L, Q)` is Jordan, decided from the
/// pieces: `L` is Jordan, `G` and `Q` are commutative, and for all `s, t`
/// either `s•s = 1` or `(s•s)∗(t∗s) = ((s•s)∗t)∗s`.
pub fn guaranteed_jordan_conditions(
    g: &MagmaTable,
    l: &MagmaTable,
    q: &MagmaTable,
) -> Result<bool> {
    l.require_loop()?;
    q.as_quasigroup()?;
    if q.order() + 1 != l.order() {
        return Err(Error::OrderMismatch(l.order() - 1, q.order()));
    }
    if !check(l, PropertyTag::Jordan)?
        || !check(g, PropertyTag::Commutative)?
        || !check(q, PropertyTag::Commutative)?
    {
        return Ok(false);
    }
    let n = q.order();
    Ok((0..n).all(|s| {
        let sq = l.mul(s + 1, s + 1);
        if sq == 0 {
            return true;
        }
        let a = sq - 1;
        (0..n).all(|t| q.mul(a, q.mul(t, s)) == q.mul(q.mul(a, t), s))
    }))
}

/// Splits `n − 1 = 2^ℓ·k` with `k` odd.
fn split_two_power(mut m: usize) -> (u32, usize) {
    let mut ell = 0;
    while m % 2 == 0 {
        m /= 2;
        ell += 1;
    }
    (ell, m)
}

/// A Jordan, non-left-alternative loop of odd order `n > 5` with `n − 1` not
/// a power of two, as the uniform amalgam of the antidiagonal quasigroup of
/// order `k` with `L = ℤ_{2^ℓ+1}` and `Q = ℤ_{2^ℓ}`.
pub fn odd_jordan(n: usize) -> Result<MagmaTable> {
    if n % 2 == 0 || n <= 5 {
        return Err(Error::InvalidArgument(format!(
            "odd_jordan needs an odd order > 5, got {n}"
        )));
    }
    let (ell, k) = split_two_power(n - 1);
    if k == 1 {
        return Err(Error::InvalidArgument(format!(
            "{n} - 1 is a power of two; no nontrivial commutative amalgam has order {n}"
        )));
    }
    let two_ell = 1usize << ell;
    let spec = AmalgamSpec::uniform(
        antidiagonal_idempotent(k)?,
        &cyclic_group(two_ell + 1)?,
        &cyclic_group(two_ell)?.with_kind(Kind::Quasigroup)?,
    )?;
    loop_amalgam(&spec)
}
