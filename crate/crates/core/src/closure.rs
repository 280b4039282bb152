use crate::perm::Permutation;
use crate::table::{Element, MagmaTable};

/// Which operations a [`SubsetClosure`] is closed under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClosureKinds {
    pub product: bool,
    pub left_division: bool,
    pub right_division: bool,
    pub inner_mappings: bool,
}

impl ClosureKinds {
    pub const SUBLOOP: Self = Self {
        product: true,
        left_division: true,
        right_division: true,
        inner_mappings: false,
    };
    pub const NORMAL: Self = Self {
        inner_mappings: true,
        ..Self::SUBLOOP
    };
}

/// A subset of a loop containing the identity and closed under `kinds`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetClosure {
    members: Vec<Element>,
    kinds: ClosureKinds,
}

impl SubsetClosure {
    /// Members in ascending order; always contains 0.
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn kinds(&self) -> ClosureKinds {
        self.kinds
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Never true: the identity is always a member.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Whether the closure is the whole loop of the given order.
    pub fn is_everything(&self, order: usize) -> bool {
        self.members.len() == order
    }

    /// Restriction of the loop to the members, renumbered by member rank.
    pub fn restrict(&self, q: &MagmaTable) -> MagmaTable {
        restrict(q, &self.members)
    }
}

/// Precomputed division tables, so closures do not rescan rows.
pub(crate) struct Divisions {
    order: usize,
    left: Vec<u16>,
    right: Vec<u16>,
}

impl Divisions {
    pub(crate) fn new(q: &MagmaTable) -> Self {
        let n = q.order();
        let mut left = vec![0u16; n * n];
        let mut right = vec![0u16; n * n];
        for a in 0..n {
            for x in 0..n {
                let b = q.mul(a, x);
                // a·x = b  =>  a\b = x  and  b/x = a
                left[a * n + b] = x as u16;
                right[x * n + b] = a as u16;
            }
        }
        Self {
            order: n,
            left,
            right,
        }
    }

    /// `a\b`, the `x` with `a·x = b`.
    pub(crate) fn left(&self, a: Element, b: Element) -> Element {
        self.left[a * self.order + b] as usize
    }

    /// `b/a`, the `y` with `y·a = b`.
    pub(crate) fn right(&self, a: Element, b: Element) -> Element {
        self.right[a * self.order + b] as usize
    }
}

/// Smallest superset of `seed ∪ {0}` closed under `kinds`. `maps` are the
/// inner mappings to apply when `kinds.inner_mappings` is set.
pub(crate) fn close(
    q: &MagmaTable,
    seed: impl IntoIterator<Item = Element>,
    kinds: ClosureKinds,
    maps: &[Permutation],
) -> SubsetClosure {
    let n = q.order();
    let divs = (kinds.left_division || kinds.right_division).then(|| Divisions::new(q));
    let mut inside = vec![false; n];
    let mut members = Vec::new();
    let mut frontier = Vec::new();
    let mut add = |x: Element, members: &mut Vec<Element>, frontier: &mut Vec<Element>| {
        if !inside[x] {
            inside[x] = true;
            members.push(x);
            frontier.push(x);
        }
    };
    add(0, &mut members, &mut frontier);
    for x in seed {
        add(x, &mut members, &mut frontier);
    }
    while let Some(m) = frontier.pop() {
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            i += 1;
            if kinds.product {
                add(q.mul(a, m), &mut members, &mut frontier);
                add(q.mul(m, a), &mut members, &mut frontier);
            }
            if let Some(d) = &divs {
                if kinds.left_division {
                    add(d.left(a, m), &mut members, &mut frontier);
                    add(d.left(m, a), &mut members, &mut frontier);
                }
                if kinds.right_division {
                    add(d.right(a, m), &mut members, &mut frontier);
                    add(d.right(m, a), &mut members, &mut frontier);
                }
            }
        }
        if kinds.inner_mappings {
            for p in maps {
                add(p.apply(m), &mut members, &mut frontier);
            }
        }
    }
    members.sort_unstable();
    SubsetClosure { members, kinds }
}

pub(crate) fn restrict(q: &MagmaTable, members: &[Element]) -> MagmaTable {
    let mut rank = vec![usize::MAX; q.order()];
    for (i, &x) in members.iter().enumerate() {
        rank[x] = i;
    }
    let kind = if members.first() == Some(&0) {
        q.kind()
    } else {
        q.kind().min(crate::table::Kind::Quasigroup)
    };
    MagmaTable::from_fn(members.len(), kind, |a, b| {
        rank[q.mul(members[a], members[b])]
    })
    .expect("restriction to a closed subset")
}

/// Whether `(ab)c = a(bc)` for all members.
pub(crate) fn associative_on(q: &MagmaTable, members: &[Element]) -> bool {
    members.iter().all(|&a| {
        members.iter().all(|&b| {
            let ab = q.mul(a, b);
            members
                .iter()
                .all(|&c| q.mul(ab, c) == q.mul(a, q.mul(b, c)))
        })
    })
}

/// Whether `members` is closed under product and both divisions.
pub(crate) fn is_closed(q: &MagmaTable, members: &[Element]) -> bool {
    let mut inside = vec![false; q.order()];
    for &x in members {
        inside[x] = true;
    }
    let divs = Divisions::new(q);
    members.iter().all(|&a| {
        members
            .iter()
            .all(|&b| inside[q.mul(a, b)] && inside[divs.left(a, b)] && inside[divs.right(a, b)])
    })
}
