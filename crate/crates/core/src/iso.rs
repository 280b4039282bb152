//! Loop isomorphism by generator-image backtracking.
//!
//! The first loop is rebuilt from a short generator list: every other
//! element is recorded as the product of two earlier ones. Choosing images
//! for the generators then fixes the whole map, so the search only branches
//! on generators, and candidate images are filtered by per-element
//! invariants.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::powers::power_order;
use crate::table::{Element, MagmaTable};

/// Isomorphism-invariant data attached to one element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementFingerprint {
    /// Order from right powers, `None` when some power up to `|Q|` is not
    /// well defined.
    pub order: Option<usize>,
    /// Tail length and cycle length of `x, x², (x²)², …`.
    pub squaring_rho: (usize, usize),
    /// Number of elements commuting with `x`.
    pub commutant: usize,
    /// Number of `y` with `yy = x`.
    pub square_roots: usize,
    /// Number of `y` with `x(xy) = (xx)y`.
    pub left_alternative: usize,
}

/// Sorted multiset of element fingerprints; equal for isomorphic loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableInvariant(Vec<ElementFingerprint>);

pub fn element_fingerprints(q: &MagmaTable) -> Vec<ElementFingerprint> {
    let n = q.order();
    let mut roots = vec![0usize; n];
    for y in 0..n {
        roots[q.mul(y, y)] += 1;
    }
    (0..n)
        .map(|x| {
            let sq = q.mul(x, x);
            ElementFingerprint {
                order: power_order(q, x),
                squaring_rho: squaring_rho(q, x),
                commutant: (0..n).filter(|&y| q.mul(x, y) == q.mul(y, x)).count(),
                square_roots: roots[x],
                left_alternative: (0..n)
                    .filter(|&y| q.mul(x, q.mul(x, y)) == q.mul(sq, y))
                    .count(),
            }
        })
        .collect()
}

fn squaring_rho(q: &MagmaTable, x: Element) -> (usize, usize) {
    let mut first_seen = vec![usize::MAX; q.order()];
    let mut y = x;
    let mut step = 0;
    while first_seen[y] == usize::MAX {
        first_seen[y] = step;
        y = q.mul(y, y);
        step += 1;
    }
    (first_seen[y], step - first_seen[y])
}

pub fn table_invariant(q: &MagmaTable) -> TableInvariant {
    let mut fps = element_fingerprints(q);
    fps.sort_unstable();
    TableInvariant(fps)
}

enum Step {
    Generator(Element),
    Product(Element, Element),
}

/// Elements of `q` in generation order: each is a generator or the product
/// of two elements listed before it. Rare fingerprints are tried first as
/// generators since they admit the fewest images.
fn generation_plan(q: &MagmaTable, fps: &[ElementFingerprint]) -> Vec<(Element, Step)> {
    let n = q.order();
    let mut class_size = std::collections::HashMap::new();
    for fp in fps {
        *class_size.entry(fp).or_insert(0usize) += 1;
    }
    let mut candidates: Vec<Element> = (1..n).collect();
    candidates.sort_by_key(|&x| (class_size[&fps[x]], x));

    let mut reached = vec![false; n];
    reached[0] = true;
    let mut listed = vec![0];
    let mut plan = Vec::with_capacity(n);
    let mut next_candidate = 0;
    while listed.len() < n {
        while reached[candidates[next_candidate]] {
            next_candidate += 1;
        }
        let g = candidates[next_candidate];
        reached[g] = true;
        listed.push(g);
        plan.push((g, Step::Generator(g)));
        // Close under products; pairs involving a newly listed element are
        // the only ones that can produce something new.
        let mut done = listed.len() - 1;
        while done < listed.len() {
            let b = listed[done];
            for i in 0..=done {
                let a = listed[i];
                for (x, y) in [(a, b), (b, a)] {
                    let p = q.mul(x, y);
                    if !reached[p] {
                        reached[p] = true;
                        listed.push(p);
                        plan.push((p, Step::Product(x, y)));
                    }
                }
            }
            done += 1;
        }
    }
    plan
}

/// An isomorphism `π` from `a` to `b` (`π(xy) = π(x)π(y)`, `π(0) = 0`), if
/// one exists. Both tables must be loops.
pub fn find_isomorphism(a: &MagmaTable, b: &MagmaTable) -> Result<Option<Permutation>> {
    a.require_loop()?;
    b.require_loop()?;
    if a.order() != b.order() {
        return Ok(None);
    }
    let fa = element_fingerprints(a);
    let fb = element_fingerprints(b);
    let (mut sa, mut sb) = (fa.clone(), fb.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let plan = generation_plan(a, &fa);
    let n = a.order();
    let mut state = Matcher {
        a,
        b,
        fa: &fa,
        fb: &fb,
        plan: &plan,
        image: vec![usize::MAX; n],
        used: vec![false; n],
    };
    state.image[0] = 0;
    state.used[0] = true;
    if state.extend(0) {
        Ok(Some(Permutation::from_images_unchecked(state.image)))
    } else {
        Ok(None)
    }
}

/// Whether the two loops are isomorphic.
pub fn is_isomorphic(a: &MagmaTable, b: &MagmaTable) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// Checks that `p` is an isomorphism from `a` to `b`.
pub fn is_isomorphism(a: &MagmaTable, b: &MagmaTable, p: &Permutation) -> bool {
    let n = a.order();
    b.order() == n
        && p.len() == n
        && (0..n).all(|x| (0..n).all(|y| p.apply(a.mul(x, y)) == b.mul(p.apply(x), p.apply(y))))
}

struct Matcher<'a> {
    a: &'a MagmaTable,
    b: &'a MagmaTable,
    fa: &'a [ElementFingerprint],
    fb: &'a [ElementFingerprint],
    plan: &'a [(Element, Step)],
    image: Vec<Element>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn extend(&mut self, at: usize) -> bool {
        let Some((x, step)) = self.plan.get(at) else {
            return is_isomorphism(
                self.a,
                self.b,
                &Permutation::from_images_unchecked(self.image.clone()),
            );
        };
        match *step {
            Step::Product(u, v) => {
                let y = self.b.mul(self.image[u], self.image[v]);
                if self.used[y] || self.fa[*x] != self.fb[y] {
                    return false;
                }
                self.assign(*x, y);
                let ok = self.extend(at + 1);
                if !ok {
                    self.unassign(*x, y);
                }
                ok
            }
            Step::Generator(g) => {
                for y in 1..self.b.order() {
                    if self.used[y] || self.fa[g] != self.fb[y] {
                        continue;
                    }
                    self.assign(g, y);
                    if self.extend(at + 1) {
                        return true;
                    }
                    self.unassign(g, y);
                }
                false
            }
        }
    }

    fn assign(&mut self, x: Element, y: Element) {
        self.image[x] = y;
        self.used[y] = true;
    }

    fn unassign(&mut self, x: Element, y: Element) {
        self.image[x] = usize::MAX;
        self.used[y] = false;
    }
}

/// Errors only when the inputs are not loops of equal order.
pub fn require_same_order(tables: &[MagmaTable]) -> Result<()> {
    if let Some(first) = tables.first() {
        for t in tables {
            t.require_loop()?;
            if t.order() != first.order() {
                return Err(Error::OrderMismatch(first.order(), t.order()));
            }
        }
    }
    Ok(())
}
