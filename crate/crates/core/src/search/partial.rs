//! Partial loop tables and constraint propagation.

use std::fmt;

use crate::error::{Error, Result};
use crate::table::{Element, Kind, MagmaTable};

const UNSET: u8 = u8::MAX;

/// Largest order the bitset representation supports.
pub const MAX_SEARCH_ORDER: usize = 64;

/// Identities enforced during propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constraints {
    /// Mirror every assignment across the diagonal.
    pub commutative: bool,
    /// Force `x²(yx) = (x²y)x` whenever one side is determined.
    pub jordan: bool,
}

impl Constraints {
    pub const LATIN: Self = Self {
        commutative: false,
        jordan: false,
    };
    pub const COMMUTATIVE: Self = Self {
        commutative: true,
        jordan: false,
    };
    pub const JORDAN: Self = Self {
        commutative: true,
        jordan: true,
    };
}

/// A loop table under construction: identity row and column fixed, other
/// cells possibly unset, with per-row and per-column symbol masks and
/// position indexes for constant-time division.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialTable {
    n: usize,
    cells: Vec<u8>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    /// `row_pos[i·n + v]` is the column holding `v` in row `i`.
    row_pos: Vec<u8>,
    /// `col_pos[j·n + v]` is the row holding `v` in column `j`.
    col_pos: Vec<u8>,
}

impl PartialTable {
    /// The table with only row 0 and column 0 filled in.
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 || order > MAX_SEARCH_ORDER {
            return Err(Error::OrderOutOfRange {
                order,
                max: MAX_SEARCH_ORDER,
            });
        }
        let n = order;
        let mut pt = Self {
            n,
            cells: vec![UNSET; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
            row_pos: vec![UNSET; n * n],
            col_pos: vec![UNSET; n * n],
        };
        for i in 0..n {
            pt.assign(0, i, i);
            pt.assign(i, 0, i);
        }
        Ok(pt)
    }

    /// A fully determined copy of a loop table.
    pub fn from_table(q: &MagmaTable) -> Result<Self> {
        q.require_loop()?;
        let mut pt = Self::new(q.order())?;
        for i in 1..q.order() {
            for j in 1..q.order() {
                pt.assign(i, j, q.mul(i, j));
            }
        }
        Ok(pt)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: Element, j: Element) -> Option<Element> {
        match self.cells[i * self.n + j] {
            UNSET => None,
            v => Some(v as Element),
        }
    }

    pub fn unset_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == UNSET).count()
    }

    pub fn is_complete(&self) -> bool {
        !self.cells.contains(&UNSET)
    }

    fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Bitmask of symbols still admissible at `(i, j)` by the Latin
    /// constraints; 0 for a set cell.
    pub fn candidates(&self, i: Element, j: Element) -> u64 {
        if self.cells[i * self.n + j] != UNSET {
            return 0;
        }
        self.full_mask() & !(self.row_used[i] | self.col_used[j])
    }

    /// Sets `(i, j)` to `v`. Returns false, leaving the table unchanged, if
    /// the cell holds another value or `v` already occurs in row `i` or
    /// column `j`.
    pub fn assign(&mut self, i: Element, j: Element, v: Element) -> bool {
        let n = self.n;
        assert!(i < n && j < n && v < n, "assignment outside the table");
        match self.cells[i * n + j] {
            UNSET => {}
            c => return c as usize == v,
        }
        let bit = 1u64 << v;
        if (self.row_used[i] | self.col_used[j]) & bit != 0 {
            return false;
        }
        self.cells[i * n + j] = v as u8;
        self.row_used[i] |= bit;
        self.col_used[j] |= bit;
        self.row_pos[i * n + v] = j as u8;
        self.col_pos[j * n + v] = i as u8;
        true
    }

    /// Unsets `(i, j)`. Cells in row 0 or column 0 cannot be cleared.
    pub fn clear(&mut self, i: Element, j: Element) -> bool {
        let n = self.n;
        if i == 0 || j == 0 {
            return false;
        }
        let v = self.cells[i * n + j];
        if v == UNSET {
            return true;
        }
        let v = v as usize;
        self.cells[i * n + j] = UNSET;
        self.row_used[i] &= !(1u64 << v);
        self.col_used[j] &= !(1u64 << v);
        self.row_pos[i * n + v] = UNSET;
        self.col_pos[j * n + v] = UNSET;
        true
    }

    /// The finished loop, or `None` while cells remain unset.
    pub fn to_table(&self) -> Option<MagmaTable> {
        if !self.is_complete() {
            return None;
        }
        let cells = self.cells.iter().map(|&c| c as u16).collect();
        MagmaTable::from_cells(self.n, cells, Kind::Loop).ok()
    }

    #[inline]
    fn raw(&self, i: usize, j: usize) -> u8 {
        self.cells[i * self.n + j]
    }
}

impl fmt::Debug for PartialTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialTable(\n{self})")
    }
}

impl fmt::Display for PartialTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| self.get(i, j).map_or(".".into(), |v| v.to_string()))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Closes `pt` under Latin singles, commutativity mirroring and Jordan
/// triggers; `None` on contradiction.
pub fn propagate(mut pt: PartialTable, constraints: &Constraints) -> Option<PartialTable> {
    propagate_in_place(&mut pt, constraints).then_some(pt)
}

/// Sets `(i, j)` and, under commutativity, `(j, i)`.
#[inline]
fn put(
    pt: &mut PartialTable,
    c: &Constraints,
    i: usize,
    j: usize,
    v: usize,
    changed: &mut bool,
) -> bool {
    if pt.raw(i, j) == UNSET {
        if !pt.assign(i, j, v) {
            return false;
        }
        *changed = true;
    } else if pt.raw(i, j) as usize != v {
        return false;
    }
    if c.commutative && i != j {
        if pt.raw(j, i) == UNSET {
            if !pt.assign(j, i, v) {
                return false;
            }
            *changed = true;
        } else if pt.raw(j, i) as usize != v {
            return false;
        }
    }
    true
}

pub(crate) fn propagate_in_place(pt: &mut PartialTable, c: &Constraints) -> bool {
    let n = pt.n;
    let mut changed = false;
    if c.commutative {
        for i in 1..n {
            for j in i + 1..n {
                let (a, b) = (pt.raw(i, j), pt.raw(j, i));
                let ok = match (a, b) {
                    (UNSET, UNSET) => true,
                    (UNSET, v) | (v, UNSET) => put(pt, c, i, j, v as usize, &mut changed),
                    _ => a == b,
                };
                if !ok {
                    return false;
                }
            }
        }
    }
    loop {
        changed = false;
        if !latin_singles(pt, c, &mut changed) {
            return false;
        }
        if c.jordan && !jordan_triggers(pt, c, &mut changed) {
            return false;
        }
        if !changed {
            return true;
        }
    }
}

fn latin_singles(pt: &mut PartialTable, c: &Constraints, changed: &mut bool) -> bool {
    let n = pt.n;
    let full = pt.full_mask();
    // Naked singles.
    for i in 1..n {
        let start = if c.commutative { i } else { 1 };
        for j in start..n {
            if pt.raw(i, j) != UNSET {
                continue;
            }
            let cand = full & !(pt.row_used[i] | pt.col_used[j]);
            if cand == 0 {
                return false;
            }
            if cand & (cand - 1) == 0 && !put(pt, c, i, j, cand.trailing_zeros() as usize, changed)
            {
                return false;
            }
        }
    }
    // Hidden singles. Under commutativity every column is a row.
    for i in 1..n {
        if !hidden_in_line(pt, c, i, true, changed) {
            return false;
        }
        if !c.commutative && !hidden_in_line(pt, c, i, false, changed) {
            return false;
        }
    }
    true
}

/// Places every symbol that has a single admissible cell in row `line`
/// (or column `line` when `row` is false).
fn hidden_in_line(
    pt: &mut PartialTable,
    c: &Constraints,
    line: usize,
    row: bool,
    changed: &mut bool,
) -> bool {
    let n = pt.n;
    let used = if row {
        pt.row_used[line]
    } else {
        pt.col_used[line]
    };
    let mut missing = pt.full_mask() & !used;
    while missing != 0 {
        let v = missing.trailing_zeros() as usize;
        missing &= missing - 1;
        let bit = 1u64 << v;
        // The symbol may have been placed by an earlier step of this loop.
        let still_used = if row {
            pt.row_used[line]
        } else {
            pt.col_used[line]
        };
        if still_used & bit != 0 {
            continue;
        }
        let mut spot = usize::MAX;
        let mut count = 0;
        for k in 1..n {
            let (i, j) = if row { (line, k) } else { (k, line) };
            if pt.raw(i, j) == UNSET && (pt.row_used[i] | pt.col_used[j]) & bit == 0 {
                count += 1;
                spot = k;
                if count > 1 {
                    break;
                }
            }
        }
        match count {
            0 => return false,
            1 => {
                let (i, j) = if row { (line, spot) } else { (spot, line) };
                if !put(pt, c, i, j, v, changed) {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

/// For every `x` whose square `a` is known and every `y`, compares or forces
/// the two sides of `a(yx) = (ay)x`. A known side also fixes an unknown
/// inner product when the outer factor already has that value in its line.
fn jordan_triggers(pt: &mut PartialTable, c: &Constraints, changed: &mut bool) -> bool {
    let n = pt.n;
    for x in 1..n {
        let a = pt.raw(x, x);
        if a == UNSET || a == 0 {
            continue;
        }
        let a = a as usize;
        for y in 1..n {
            let yx = pt.raw(y, x);
            let ay = pt.raw(a, y);
            let lhs = if yx == UNSET {
                UNSET
            } else {
                pt.raw(a, yx as usize)
            };
            let rhs = if ay == UNSET {
                UNSET
            } else {
                pt.raw(ay as usize, x)
            };
            let ok = match (lhs, rhs) {
                (UNSET, UNSET) => true,
                (UNSET, r) => {
                    if yx != UNSET {
                        put(pt, c, a, yx as usize, r as usize, changed)
                    } else {
                        match pt.row_pos[a * n + r as usize] {
                            UNSET => true,
                            w => put(pt, c, y, x, w as usize, changed),
                        }
                    }
                }
                (l, UNSET) => {
                    if ay != UNSET {
                        put(pt, c, ay as usize, x, l as usize, changed)
                    } else {
                        match pt.col_pos[x * n + l as usize] {
                            UNSET => true,
                            z => put(pt, c, a, y, z as usize, changed),
                        }
                    }
                }
                (l, r) => l == r,
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::construct;
    use crate::table::cyclic_group;

    #[test]
    fn new_table_has_identity_lines() {
        let pt = PartialTable::new(4).unwrap();
        for i in 0..4 {
            assert_eq!(pt.get(0, i), Some(i));
            assert_eq!(pt.get(i, 0), Some(i));
        }
        assert_eq!(pt.unset_count(), 9);
        assert_eq!(pt.candidates(1, 1), 0b1101);
        assert!(PartialTable::new(0).is_err());
        assert!(PartialTable::new(65).is_err());
    }

    #[test]
    fn assignment_respects_latin_masks() {
        let mut pt = PartialTable::new(3).unwrap();
        assert!(!pt.assign(1, 1, 1));
        assert!(pt.assign(1, 1, 2));
        assert!(pt.assign(1, 1, 2));
        assert!(!pt.assign(1, 1, 0));
        assert!(!pt.assign(1, 2, 2));
        assert!(pt.clear(1, 1));
        assert!(!pt.clear(0, 1));
        assert_eq!(pt.get(1, 1), None);
    }

    #[test]
    fn full_table_is_unchanged() {
        let l = construct(7).unwrap();
        let pt = PartialTable::from_table(&l).unwrap();
        let out = propagate(pt.clone(), &Constraints::JORDAN).unwrap();
        assert_eq!(out, pt);
        assert_eq!(out.to_table().unwrap(), l);
    }

    #[test]
    fn last_cell_in_a_row_is_filled() {
        let z5 = cyclic_group(5).unwrap();
        let mut pt = PartialTable::from_table(&z5).unwrap();
        pt.clear(2, 3);
        let out = propagate(pt, &Constraints::LATIN).unwrap();
        assert_eq!(out.get(2, 3), Some(0));
    }

    #[test]
    fn mirroring() {
        let mut pt = PartialTable::new(5).unwrap();
        pt.assign(1, 2, 3);
        let out = propagate(pt, &Constraints::COMMUTATIVE).unwrap();
        assert_eq!(out.get(2, 1), Some(3));
    }

    #[test]
    fn order_three_is_forced() {
        let out = propagate(PartialTable::new(3).unwrap(), &Constraints::JORDAN).unwrap();
        assert_eq!(out.to_table().unwrap(), cyclic_group(3).unwrap());
    }

    /// Clears two rows (and columns) of a Jordan loop of order 6, then puts
    /// another admissible value into one cleared cell. Latin propagation
    /// alone tolerates some of these mutations; the Jordan triggers must
    /// reject them.
    #[test]
    fn jordan_conflict_from_a_mutated_loop() {
        let l = construct(6).unwrap();
        let mut jordan_only = 0;
        for r1 in 1..6 {
            for r2 in (1..6).filter(|&r| r != r1) {
                for col in 1..6 {
                    let mut base = PartialTable::from_table(&l).unwrap();
                    for k in 1..6 {
                        for r in [r1, r2] {
                            base.clear(r, k);
                            base.clear(k, r);
                        }
                    }
                    for wrong in (0..6).filter(|&v| v != l.mul(r1, col)) {
                        let mut pt = base.clone();
                        if !pt.assign(r1, col, wrong) || !pt.assign(col, r1, wrong) {
                            continue;
                        }
                        let latin = propagate(pt.clone(), &Constraints::COMMUTATIVE).is_some();
                        let jordan = propagate(pt, &Constraints::JORDAN).is_some();
                        assert!(!jordan || latin);
                        if latin && !jordan {
                            jordan_only += 1;
                        }
                    }
                }
            }
        }
        assert!(jordan_only > 0);
    }
}
