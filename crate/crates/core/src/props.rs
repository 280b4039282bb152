//! Exhaustive pointwise identity checks.
//!
//! Every check scans all pairs (or triples) of elements; nothing is sampled.
//! [`counterexample`] reports the first failing instance with both sides of
//! the identity evaluated so that failures can be audited by hand.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result, Violation};
use crate::table::{Element, Kind, MagmaTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyTag {
    Latin,
    HasIdentity,
    Commutative,
    Associative,
    Idempotent,
    ExponentTwo,
    LeftAlternative,
    Jordan,
}

impl PropertyTag {
    pub const ALL: [PropertyTag; 8] = [
        PropertyTag::Latin,
        PropertyTag::HasIdentity,
        PropertyTag::Commutative,
        PropertyTag::Associative,
        PropertyTag::Idempotent,
        PropertyTag::ExponentTwo,
        PropertyTag::LeftAlternative,
        PropertyTag::Jordan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyTag::Latin => "latin",
            PropertyTag::HasIdentity => "has-identity",
            PropertyTag::Commutative => "commutative",
            PropertyTag::Associative => "associative",
            PropertyTag::Idempotent => "idempotent",
            PropertyTag::ExponentTwo => "exponent-two",
            PropertyTag::LeftAlternative => "left-alternative",
            PropertyTag::Jordan => "jordan",
        }
    }
}

impl fmt::Display for PropertyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyTag::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown property `{s}`")))
    }
}

/// A witness that a property fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    NotLatin(Violation),
    NoIdentity,
    /// An equation `lhs = rhs` that fails at the named elements.
    Equation {
        property: PropertyTag,
        witnesses: Vec<(&'static str, Element)>,
        lhs_expr: &'static str,
        lhs: Element,
        rhs_expr: &'static str,
        rhs: Element,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::NotLatin(v) => write!(f, "latin fails: {v}"),
            Counterexample::NoIdentity => f.write_str("has-identity fails: no two-sided identity"),
            Counterexample::Equation {
                property,
                witnesses,
                lhs_expr,
                lhs,
                rhs_expr,
                rhs,
            } => {
                write!(f, "{property} fails at")?;
                for (name, value) in witnesses {
                    write!(f, " {name}={value}")?;
                }
                write!(f, ": {lhs_expr} = {lhs} but {rhs_expr} = {rhs}")
            }
        }
    }
}

/// Exhaustively decides whether `m` has property `p`.
pub fn check(m: &MagmaTable, p: PropertyTag) -> Result<bool> {
    Ok(counterexample(m, p)?.is_none())
}

/// Finds the first instance violating `p`, or `None` when `p` holds.
///
/// `exponent-two` on a table without an identity is a usage error.
pub fn counterexample(m: &MagmaTable, p: PropertyTag) -> Result<Option<Counterexample>> {
    let n = m.order();
    let eq = |witnesses: Vec<(&'static str, Element)>,
              lhs_expr: &'static str,
              lhs: Element,
              rhs_expr: &'static str,
              rhs: Element| Counterexample::Equation {
        property: p,
        witnesses,
        lhs_expr,
        lhs,
        rhs_expr,
        rhs,
    };
    let found = match p {
        PropertyTag::Latin => latin_violation(m).map(Counterexample::NotLatin),
        PropertyTag::HasIdentity => identity(m).is_none().then_some(Counterexample::NoIdentity),
        PropertyTag::Commutative => pairs(n).find_map(|(x, y)| {
            let (l, r) = (m.mul(x, y), m.mul(y, x));
            (l != r).then(|| eq(vec![("x", x), ("y", y)], "xy", l, "yx", r))
        }),
        PropertyTag::Associative => associativity_failure(m)
            .map(|(x, y, z, l, r)| eq(vec![("x", x), ("y", y), ("z", z)], "(xy)z", l, "x(yz)", r)),
        PropertyTag::Idempotent => (0..n).find_map(|x| {
            let sq = m.mul(x, x);
            (sq != x).then(|| eq(vec![("x", x)], "xx", sq, "x", x))
        }),
        PropertyTag::ExponentTwo => {
            let e = identity(m).ok_or(Error::NoIdentity {
                property: "exponent-two",
            })?;
            if let Some(v) = latin_violation(m) {
                Some(Counterexample::NotLatin(v))
            } else {
                (0..n).find_map(|x| {
                    let sq = m.mul(x, x);
                    (sq != e).then(|| eq(vec![("x", x)], "xx", sq, "e", e))
                })
            }
        }
        PropertyTag::LeftAlternative => pairs(n).find_map(|(x, y)| {
            let l = m.mul(x, m.mul(x, y));
            let r = m.mul(m.mul(x, x), y);
            (l != r).then(|| eq(vec![("x", x), ("y", y)], "x(xy)", l, "(xx)y", r))
        }),
        PropertyTag::Jordan => match counterexample(m, PropertyTag::Commutative)? {
            Some(Counterexample::Equation {
                witnesses,
                lhs,
                rhs,
                ..
            }) => Some(eq(witnesses, "xy", lhs, "yx", rhs)),
            Some(other) => Some(other),
            None => jordan_identity_failure(m)
                .map(|(x, y, l, r)| eq(vec![("x", x), ("y", y)], "x^2(yx)", l, "(x^2y)x", r)),
        },
    };
    Ok(found)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

fn latin_violation(m: &MagmaTable) -> Option<Violation> {
    match m.clone().with_kind(Kind::Quasigroup) {
        Ok(_) => None,
        Err(Error::KindViolation { violation, .. }) => Some(violation),
        Err(_) => unreachable!("re-validating an existing table only reports violations"),
    }
}

/// The two-sided identity, if any.
pub fn identity(m: &MagmaTable) -> Option<Element> {
    let n = m.order();
    (0..n).find(|&e| (0..n).all(|x| m.mul(e, x) == x && m.mul(x, e) == x))
}

fn associativity_failure(m: &MagmaTable) -> Option<(usize, usize, usize, usize, usize)> {
    let n = m.order();
    for x in 0..n {
        for y in 0..n {
            let xy = m.mul(x, y);
            for z in 0..n {
                let l = m.mul(xy, z);
                let r = m.mul(x, m.mul(y, z));
                if l != r {
                    return Some((x, y, z, l, r));
                }
            }
        }
    }
    None
}

/// The Jordan identity `x²(yx) = (x²y)x` alone, without commutativity.
fn jordan_identity_failure(m: &MagmaTable) -> Option<(usize, usize, usize, usize)> {
    let n = m.order();
    for x in 0..n {
        let sq = m.mul(x, x);
        for y in 0..n {
            let l = m.mul(sq, m.mul(y, x));
            let r = m.mul(m.mul(sq, y), x);
            if l != r {
                return Some((x, y, l, r));
            }
        }
    }
    None
}

/// Whether `x ↦ xx` is a bijection.
pub fn squaring_bijective(m: &MagmaTable) -> bool {
    let mut hit = vec![false; m.order()];
    for x in 0..m.order() {
        let sq = m.mul(x, x);
        if hit[sq] {
            return false;
        }
        hit[sq] = true;
    }
    true
}

/// Checks several properties and returns the first failure, tagged.
pub fn first_failure(
    m: &MagmaTable,
    props: &[PropertyTag],
) -> Result<Option<(PropertyTag, Counterexample)>> {
    for &p in props {
        if let Some(cx) = counterexample(m, p)? {
            return Ok(Some((p, cx)));
        }
    }
    Ok(None)
}
