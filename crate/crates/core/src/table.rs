//! Dense multiplication tables and the plain-text interchange format.
//!
//! A table of order `n` stores `n²` element indices in row-major order, so
//! `a·b` lives at `cells[a * n + b]`. Loops always carry their identity at
//! index 0.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result, Side, Violation};

/// Element of a table, an index in `0..order`.
pub type Element = usize;

/// Largest order a [`MagmaTable`] may have.
pub const MAX_ORDER: usize = 1 << 16;

/// What a table claims to be. Ordered by strength: every loop is a
/// quasigroup and every quasigroup is a magma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Magma,
    Quasigroup,
    Loop,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Magma => "magma",
            Kind::Quasigroup => "quasigroup",
            Kind::Loop => "loop",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "magma" => Ok(Kind::Magma),
            "quasigroup" => Ok(Kind::Quasigroup),
            "loop" => Ok(Kind::Loop),
            other => Err(Error::InvalidArgument(format!("unknown kind `{other}`"))),
        }
    }
}

/// A finite binary operation given by its full multiplication table.
///
/// Values are immutable once built; every constructor validates the claimed
/// [`Kind`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MagmaTable {
    order: usize,
    cells: Vec<u16>,
    kind: Kind,
}

/// Builds a table from explicit rows and validates the claimed kind.
pub fn build_magma(order: usize, rows: &[Vec<usize>], kind: Kind) -> Result<MagmaTable> {
    check_order(order)?;
    if rows.len() != order {
        return Err(Error::RowCount {
            expected: order,
            found: rows.len(),
        });
    }
    let mut cells = Vec::with_capacity(order * order);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != order {
            return Err(Error::RowLength {
                row: r,
                expected: order,
                found: row.len(),
            });
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= order {
                return Err(Error::CellOutOfRange {
                    row: r,
                    column: c,
                    value: v,
                    order,
                });
            }
            cells.push(v as u16);
        }
    }
    MagmaTable::from_cells(order, cells, kind)
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::OrderOutOfRange {
            order,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

impl MagmaTable {
    /// Builds a table whose cell `(a, b)` is `op(a, b)`.
    pub fn from_fn(order: usize, kind: Kind, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        check_order(order)?;
        let mut cells = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let v = op(a, b);
                if v >= order {
                    return Err(Error::CellOutOfRange {
                        row: a,
                        column: b,
                        value: v,
                        order,
                    });
                }
                cells.push(v as u16);
            }
        }
        Self::from_cells(order, cells, kind)
    }

    pub(crate) fn from_cells(order: usize, cells: Vec<u16>, kind: Kind) -> Result<Self> {
        debug_assert_eq!(cells.len(), order * order);
        if let Some(violation) = first_violation(order, &cells, kind) {
            return Err(Error::KindViolation { kind, violation });
        }
        Ok(Self { order, cells, kind })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// The product `a·b`.
    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.cells[a * self.order + b] as usize
    }

    pub fn row(&self, a: Element) -> impl Iterator<Item = Element> + '_ {
        self.cells[a * self.order..(a + 1) * self.order]
            .iter()
            .map(|&v| v as usize)
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        (0..self.order).map(|a| self.row(a).collect()).collect()
    }

    /// Row-major cells; used for lexicographic comparison of tables.
    pub fn cells(&self) -> &[u16] {
        &self.cells
    }

    pub fn is_quasigroup(&self) -> bool {
        self.kind >= Kind::Quasigroup
            || first_violation(self.order, &self.cells, Kind::Quasigroup).is_none()
    }

    pub fn is_loop(&self) -> bool {
        self.kind == Kind::Loop || first_violation(self.order, &self.cells, Kind::Loop).is_none()
    }

    /// Re-labels the claimed kind, validating the stronger claim if needed.
    pub fn with_kind(self, kind: Kind) -> Result<Self> {
        Self::from_cells(self.order, self.cells, kind)
    }

    /// Returns the same table claimed as a quasigroup, or [`Error::WrongKind`].
    pub fn as_quasigroup(&self) -> Result<&Self> {
        if self.is_quasigroup() {
            Ok(self)
        } else {
            Err(Error::WrongKind {
                expected: Kind::Quasigroup,
            })
        }
    }

    pub(crate) fn require_loop(&self) -> Result<()> {
        if self.is_loop() {
            Ok(())
        } else {
            Err(Error::WrongKind {
                expected: Kind::Loop,
            })
        }
    }

    pub(crate) fn check_element(&self, element: Element) -> Result<()> {
        if element < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element,
                order: self.order,
            })
        }
    }

    /// The unique `x` with `a·x = b`.
    pub fn left_divide(&self, a: Element, b: Element) -> Result<Element> {
        self.as_quasigroup()?;
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.ldiv(a, b))
    }

    /// The unique `y` with `y·a = b`.
    pub fn right_divide(&self, a: Element, b: Element) -> Result<Element> {
        self.as_quasigroup()?;
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.rdiv(a, b))
    }

    // Unchecked divisions for callers that already hold a quasigroup.
    pub(crate) fn ldiv(&self, a: Element, b: Element) -> Element {
        self.row(a)
            .position(|v| v == b)
            .expect("left division in a quasigroup")
    }

    pub(crate) fn rdiv(&self, a: Element, b: Element) -> Element {
        (0..self.order)
            .find(|&y| self.mul(y, a) == b)
            .expect("right division in a quasigroup")
    }

    /// The transposed table, `a ∘ b = b·a`.
    pub fn opposite(&self) -> Self {
        let n = self.order;
        let mut cells = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[b * n + a] = self.cells[a * n + b];
            }
        }
        Self {
            order: n,
            cells,
            kind: self.kind,
        }
    }

    /// Serializes to the text interchange format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MagmaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}", self.order)?;
        writeln!(f, "kind {}", self.kind)?;
        for a in 0..self.order {
            let mut first = true;
            for v in self.row(a) {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for MagmaTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tables = parse_tables(s)?;
        match tables.len() {
            1 => Ok(tables.pop().unwrap()),
            0 => Err(Error::Parse {
                line: 1,
                message: "no table found".into(),
            }),
            k => Err(Error::Parse {
                line: 1,
                message: format!("expected one table, found {k}"),
            }),
        }
    }
}

/// Parses a stream of tables in the text format. Lines starting with `#`
/// and blank lines are skipped, so the output of `search` parses directly.
pub fn parse_tables(text: &str) -> Result<Vec<MagmaTable>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();
    let mut tables = Vec::new();
    while let Some((line_no, line)) = lines.next() {
        let order = parse_header(line_no, line, "order")?
            .parse::<usize>()
            .map_err(|e| Error::Parse {
                line: line_no,
                message: format!("bad order: {e}"),
            })?;
        let (kind_line, kind_text) = lines.next().ok_or(Error::Parse {
            line: line_no + 1,
            message: "missing `kind` line".into(),
        })?;
        let kind: Kind = parse_header(kind_line, kind_text, "kind")?
            .parse()
            .map_err(|e: Error| Error::Parse {
                line: kind_line,
                message: e.to_string(),
            })?;
        let mut rows = Vec::with_capacity(order);
        for r in 0..order {
            let (row_line, row_text) = lines.next().ok_or(Error::Parse {
                line: kind_line + r + 1,
                message: format!("expected {order} rows, found {r}"),
            })?;
            let row = row_text
                .split_whitespace()
                .map(|tok| tok.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    line: row_line,
                    message: format!("bad cell: {e}"),
                })?;
            rows.push(row);
        }
        tables.push(build_magma(order, &rows, kind)?);
    }
    Ok(tables)
}

fn parse_header<'a>(line_no: usize, line: &'a str, key: &str) -> Result<&'a str> {
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => Ok(v),
        _ => Err(Error::Parse {
            line: line_no,
            message: format!("expected `{key} <value>`, found `{line}`"),
        }),
    }
}

/// Scans columns before rows, so the reported violation is the first
/// duplicated symbol in the lowest-numbered bad column.
fn first_violation(order: usize, cells: &[u16], kind: Kind) -> Option<Violation> {
    if kind >= Kind::Quasigroup {
        let mut seen = vec![usize::MAX; order];
        for c in 0..order {
            seen.fill(usize::MAX);
            for r in 0..order {
                let v = cells[r * order + c] as usize;
                if seen[v] != usize::MAX {
                    return Some(Violation::DuplicateInColumn {
                        column: c,
                        symbol: v,
                        rows: (seen[v], r),
                    });
                }
                seen[v] = r;
            }
        }
        for r in 0..order {
            seen.fill(usize::MAX);
            for c in 0..order {
                let v = cells[r * order + c] as usize;
                if seen[v] != usize::MAX {
                    return Some(Violation::DuplicateInRow {
                        row: r,
                        symbol: v,
                        columns: (seen[v], c),
                    });
                }
                seen[v] = c;
            }
        }
    }
    if kind == Kind::Loop {
        for x in 0..order {
            let left = cells[x] as usize;
            if left != x {
                return Some(Violation::NotNeutral {
                    position: x,
                    found: left,
                    side: Side::Left,
                });
            }
            let right = cells[x * order] as usize;
            if right != x {
                return Some(Violation::NotNeutral {
                    position: x,
                    found: right,
                    side: Side::Right,
                });
            }
        }
    }
    None
}

/// Addition modulo `n`.
pub fn cyclic_group(n: usize) -> Result<MagmaTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group of order 0".into()));
    }
    MagmaTable::from_fn(n, Kind::Loop, |a, b| (a + b) % n)
}

/// Componentwise product; the pair `(i, j)` is encoded as `i·|B| + j`.
/// The result claims the weaker of the two input kinds.
pub fn direct_product(a: &MagmaTable, b: &MagmaTable) -> Result<MagmaTable> {
    let nb = b.order();
    let order = a.order() * nb;
    check_order(order)?;
    let kind = a.kind().min(b.kind());
    MagmaTable::from_fn(order, kind, |x, y| {
        a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z3_is_a_loop() {
        let rows = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let t = build_magma(3, &rows, Kind::Loop).unwrap();
        assert_eq!(t, cyclic_group(3).unwrap());
    }

    #[test]
    fn constant_rows_are_rejected() {
        let rows = vec![vec![0, 0], vec![1, 1]];
        let err = build_magma(2, &rows, Kind::Quasigroup).unwrap_err();
        assert_eq!(
            err,
            Error::KindViolation {
                kind: Kind::Quasigroup,
                violation: Violation::DuplicateInRow {
                    row: 0,
                    symbol: 0,
                    columns: (0, 1)
                }
            }
        );
        // The same cells are a perfectly good magma.
        assert!(build_magma(2, &rows, Kind::Magma).is_ok());
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(
            build_magma(2, &[vec![0, 1]], Kind::Magma),
            Err(Error::RowCount { .. })
        ));
        assert!(matches!(
            build_magma(2, &[vec![0, 1], vec![1]], Kind::Magma),
            Err(Error::RowLength { row: 1, .. })
        ));
        assert!(matches!(
            build_magma(2, &[vec![0, 1], vec![1, 2]], Kind::Magma),
            Err(Error::CellOutOfRange {
                row: 1,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            build_magma(0, &[], Kind::Magma),
            Err(Error::OrderOutOfRange { .. })
        ));
    }

    #[test]
    fn loop_claim_needs_identity_at_zero() {
        // Z3 relabelled so that the identity sits at 1.
        let rows = vec![vec![2, 0, 1], vec![0, 1, 2], vec![1, 2, 0]];
        assert!(build_magma(3, &rows, Kind::Quasigroup).is_ok());
        let err = build_magma(3, &rows, Kind::Loop).unwrap_err();
        assert!(matches!(
            err,
            Error::KindViolation {
                violation: Violation::NotNeutral { .. },
                ..
            }
        ));
    }

    #[test]
    fn divisions() {
        let z5 = cyclic_group(5).unwrap();
        assert_eq!(z5.left_divide(2, 0).unwrap(), 3);
        for b in 0..5 {
            assert_eq!(z5.left_divide(0, b).unwrap(), b);
        }
        let z3 = cyclic_group(3).unwrap();
        assert_eq!(z3.right_divide(1, 0).unwrap(), 2);

        let m = build_magma(2, &[vec![0, 0], vec![1, 1]], Kind::Magma).unwrap();
        assert!(matches!(m.left_divide(0, 0), Err(Error::WrongKind { .. })));
    }

    #[test]
    fn opposite_and_products() {
        let m = build_magma(2, &[vec![0, 0], vec![1, 1]], Kind::Magma).unwrap();
        assert_eq!(m.opposite().rows(), vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(m.opposite().opposite(), m);
        let z3 = cyclic_group(3).unwrap();
        assert_eq!(z3.opposite(), z3);

        let z2 = cyclic_group(2).unwrap();
        let v4 = direct_product(&z2, &z2).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.kind(), Kind::Loop);
        for x in 0..4 {
            assert_eq!(v4.mul(x, x), 0);
        }
        assert_eq!(v4.mul(1, 2), 3);
    }

    #[test]
    fn text_round_trip() {
        let z3 = cyclic_group(3).unwrap();
        let text = z3.to_text();
        assert_eq!(text, "order 3\nkind loop\n0 1 2\n1 2 0\n2 0 1\n");
        let commented = format!("# a comment\n{text}\n# trailing\n");
        assert_eq!(commented.parse::<MagmaTable>().unwrap(), z3);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = "order 2\nkind loop\n0 1\n1 x\n"
            .parse::<MagmaTable>()
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = "order 2\nkind group\n".parse::<MagmaTable>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = "order 2\nkind loop\n0 1\n"
            .parse::<MagmaTable>()
            .unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn multiple_tables_parse() {
        let z2 = cyclic_group(2).unwrap();
        let z3 = cyclic_group(3).unwrap();
        let text = format!("{z2}\n{z3}\n# nodes=1\n");
        assert_eq!(parse_tables(&text).unwrap(), vec![z2, z3]);
    }
}
