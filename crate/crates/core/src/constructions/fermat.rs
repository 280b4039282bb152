//! Loops of order `2^m + 1` built by gluing cyclic subloops into a Jordan
//! quasigroup partitioned into subquasigroups.

use crate::closure;
use crate::error::{Error, Result};
use crate::props::{check, PropertyTag};
use crate::table::{cyclic_group, direct_product, Element, Kind, MagmaTable};

/// A quasigroup together with a partition of its elements into
/// subquasigroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedQuasigroup {
    table: MagmaTable,
    blocks: Vec<Vec<Element>>,
}

impl PartitionedQuasigroup {
    pub fn new(table: MagmaTable, blocks: Vec<Vec<Element>>) -> Result<Self> {
        table.as_quasigroup()?;
        let n = table.order();
        let mut seen = vec![false; n];
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
            if block.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            for &x in block.iter() {
                table.check_element(x)?;
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidArgument(format!(
                        "element {x} lies in two blocks"
                    )));
                }
            }
            if !closure::is_closed(&table, block) {
                return Err(Error::InvalidArgument(format!(
                    "block {block:?} is not closed under the operation"
                )));
            }
        }
        if let Some(x) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidArgument(format!(
                "element {x} lies in no block"
            )));
        }
        Ok(Self { table, blocks })
    }

    pub fn table(&self) -> &MagmaTable {
        &self.table
    }

    /// Blocks, each sorted ascending.
    pub fn blocks(&self) -> &[Vec<Element>] {
        &self.blocks
    }
}

/// Replaces the abelian group `g` on each part `G_i ∖ {0}` with the
/// supplied Jordan quasigroup and keeps the group product across parts.
/// Element `x ≠ 0` of `g` becomes `x − 1`; `quasis[i]` acts on the sorted
/// list of `G_i ∖ {0}` by position.
pub fn union_of_groups(
    g: &MagmaTable,
    parts: &[Vec<Element>],
    quasis: &[MagmaTable],
) -> Result<PartitionedQuasigroup> {
    g.require_loop()?;
    if !check(g, PropertyTag::Commutative)? || !check(g, PropertyTag::Associative)? {
        return Err(Error::InvalidArgument(
            "the base must be an abelian group".into(),
        ));
    }
    if parts.len() != quasis.len() {
        return Err(Error::InvalidArgument(format!(
            "{} parts but {} quasigroups",
            parts.len(),
            quasis.len()
        )));
    }
    let n = g.order();
    let mut part_of = vec![usize::MAX; n];
    let mut pos_of = vec![0; n];
    let mut nonzero: Vec<Vec<Element>> = Vec::with_capacity(parts.len());
    for (i, (part, q)) in parts.iter().zip(quasis).enumerate() {
        let mut members = part.clone();
        members.sort_unstable();
        members.dedup();
        for &x in &members {
            g.check_element(x)?;
        }
        if members.first() != Some(&0) || !closure::is_closed(g, &members) {
            return Err(Error::InvalidArgument(format!(
                "{part:?} is not a subgroup"
            )));
        }
        let rest: Vec<Element> = members[1..].to_vec();
        if rest.is_empty() {
            return Err(Error::InvalidArgument(
                "a part is the trivial subgroup".into(),
            ));
        }
        for (p, &x) in rest.iter().enumerate() {
            if part_of[x] != usize::MAX {
                return Err(Error::InvalidArgument(format!(
                    "parts meet outside the identity at {x}"
                )));
            }
            part_of[x] = i;
            pos_of[x] = p;
        }
        q.as_quasigroup()?;
        if q.order() != rest.len() {
            return Err(Error::OrderMismatch(rest.len(), q.order()));
        }
        if !is_jordan_quasigroup(q) {
            return Err(Error::InvalidArgument(format!(
                "the quasigroup for part {i} is not Jordan"
            )));
        }
        nonzero.push(rest);
    }
    if let Some(x) = (1..n).find(|&x| part_of[x] == usize::MAX) {
        return Err(Error::InvalidArgument(format!(
            "element {x} lies in no part"
        )));
    }
    let table = MagmaTable::from_fn(n - 1, Kind::Quasigroup, |a, b| {
        let (x, y) = (a + 1, b + 1);
        let i = part_of[x];
        if i == part_of[y] {
            nonzero[i][quasis[i].mul(pos_of[x], pos_of[y])] - 1
        } else {
            g.mul(x, y) - 1
        }
    })?;
    let blocks = nonzero
        .iter()
        .map(|rest| rest.iter().map(|&x| x - 1).collect())
        .collect();
    PartitionedQuasigroup::new(table, blocks)
}

/// Commutative and `x²(yx) = (x²y)x` for all pairs; no identity needed.
fn is_jordan_quasigroup(q: &MagmaTable) -> bool {
    let n = q.order();
    (0..n).all(|x| {
        let sq = q.mul(x, x);
        (0..n)
            .all(|y| q.mul(x, y) == q.mul(y, x) && q.mul(sq, q.mul(y, x)) == q.mul(q.mul(sq, y), x))
    })
}

/// Adjoins an identity 0 and replaces each block by the matching loop with
/// its identity removed. Element `a` of the quasigroup becomes `a + 1`; the
/// `p`-th element of a sorted block corresponds to loop element `p + 1`.
pub fn replace_subquasigroups(
    pq: &PartitionedQuasigroup,
    loops: &[MagmaTable],
) -> Result<MagmaTable> {
    if loops.len() != pq.blocks.len() {
        return Err(Error::InvalidArgument(format!(
            "{} blocks but {} loops",
            pq.blocks.len(),
            loops.len()
        )));
    }
    let q = &pq.table;
    let mut block_of = vec![0; q.order()];
    let mut pos_of = vec![0; q.order()];
    for (i, (block, l)) in pq.blocks.iter().zip(loops).enumerate() {
        l.require_loop()?;
        if l.order() != block.len() + 1 {
            return Err(Error::OrderMismatch(block.len() + 1, l.order()));
        }
        for (p, &x) in block.iter().enumerate() {
            block_of[x] = i;
            pos_of[x] = p;
        }
    }
    MagmaTable::from_fn(q.order() + 1, Kind::Loop, |x, y| {
        if x == 0 {
            return y;
        }
        if y == 0 {
            return x;
        }
        let (a, b) = (x - 1, y - 1);
        let i = block_of[a];
        if i != block_of[b] {
            return q.mul(a, b) + 1;
        }
        match loops[i].mul(pos_of[a] + 1, pos_of[b] + 1) {
            0 => 0,
            z => pq.blocks[i][z - 1] + 1,
        }
    })
}

/// The four order-3 subgroups of `ℤ₃ × ℤ₃` under the `3i + j` encoding, in
/// the order `⟨α⟩, ⟨β⟩, ⟨αβ⟩, ⟨αβ²⟩` with `α = 3`, `β = 1`.
const NINE_PARTS: [[Element; 3]; 4] = [[0, 3, 6], [0, 1, 2], [0, 4, 8], [0, 5, 7]];

/// A nonassociative Jordan loop of order `2^m + 1`, `m > 3`, together with
/// its four copies of `ℤ_{2^{m−2}+1}` as member lists.
pub fn fermat_jordan_with_subloops(m: u32) -> Result<(MagmaTable, Vec<Vec<Element>>)> {
    if m <= 3 {
        return Err(Error::InvalidArgument(format!(
            "fermat_jordan needs m > 3, got {m}"
        )));
    }
    if m >= 16 {
        return Err(Error::OrderOutOfRange {
            order: (1usize << m) + 1,
            max: crate::table::MAX_ORDER,
        });
    }
    let z3 = cyclic_group(3)?;
    let g = direct_product(&z3, &z3)?;
    let z2 = cyclic_group(2)?.with_kind(Kind::Quasigroup)?;
    let parts: Vec<Vec<Element>> = NINE_PARTS.iter().map(|p| p.to_vec()).collect();
    let q = union_of_groups(&g, &parts, &vec![z2; 4])?;

    let c = cyclic_group(1 << (m - 3))?;
    let inner = q.table.order();
    let bar = direct_product(&c, &q.table)?;
    let blocks: Vec<Vec<Element>> = q
        .blocks
        .iter()
        .map(|b| {
            (0..c.order())
                .flat_map(|ci| b.iter().map(move |&j| ci * inner + j))
                .collect()
        })
        .collect();
    let pq = PartitionedQuasigroup::new(bar, blocks)?;
    let l = cyclic_group((1 << (m - 2)) + 1)?;
    let table = replace_subquasigroups(&pq, &vec![l; 4])?;
    let subloops = pq
        .blocks
        .iter()
        .map(|b| std::iter::once(0).chain(b.iter().map(|&x| x + 1)).collect())
        .collect();
    Ok((table, subloops))
}

/// A nonassociative Jordan loop of order `2^m + 1`, `m > 3`.
pub fn fermat_jordan(m: u32) -> Result<MagmaTable> {
    Ok(fermat_jordan_with_subloops(m)?.0)
}
