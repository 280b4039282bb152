//! Powers of a single element: the right-associated power `cᵏ = c·cᵏ⁻¹`,
//! the set of values over all parenthesizations, well-definedness and power
//! associativity, plus a family of Jordan loops whose generator has
//! well-defined powers below `mn` but not at `mn`.

use std::collections::BTreeSet;

use crate::closure::{self, ClosureKinds, SubsetClosure};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::{Element, Kind, MagmaTable};

/// Default bound on the exponent accepted by [`parenthesization_set`].
pub const DEFAULT_POWER_CAP: usize = 64;

/// `cᵏ` with the right-associated convention; `c⁰` is the identity 0.
pub fn right_power(q: &MagmaTable, c: Element, k: usize) -> Element {
    let mut p = 0;
    for _ in 0..k {
        p = q.mul(c, p);
    }
    p
}

fn right_powers(q: &MagmaTable, c: Element, k: usize) -> Vec<Element> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(0);
    for j in 1..=k {
        out.push(q.mul(c, out[j - 1]));
    }
    out
}

/// All values of a `k`-fold product of `c` over every parenthesization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerProfile {
    pub element: Element,
    /// `values[k - 1]` holds the values of the `k`-fold products.
    pub values: Vec<BTreeSet<Element>>,
}

impl PowerProfile {
    pub fn values_at(&self, k: usize) -> &BTreeSet<Element> {
        &self.values[k - 1]
    }
}

/// Value sets for every exponent `1..=k`, by dynamic programming over the
/// last split point.
pub fn power_profile(q: &MagmaTable, c: Element, k: usize, cap: usize) -> Result<PowerProfile> {
    q.check_element(c)?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "parenthesized powers start at k = 1".into(),
        ));
    }
    if k > cap {
        return Err(Error::PowerCap { k, cap });
    }
    let n = q.order();
    let mut sets: Vec<Vec<Element>> = vec![vec![c]];
    let mut hit = vec![false; n];
    for j in 2..=k {
        hit.fill(false);
        let mut acc = Vec::new();
        for i in 1..j {
            for &a in &sets[i - 1] {
                for &b in &sets[j - i - 1] {
                    let v = q.mul(a, b);
                    if !hit[v] {
                        hit[v] = true;
                        acc.push(v);
                    }
                }
            }
        }
        sets.push(acc);
    }
    Ok(PowerProfile {
        element: c,
        values: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
    })
}

/// Values of all parenthesizations of the `k`-fold product of `c`, with the
/// default exponent cap.
pub fn parenthesization_set(q: &MagmaTable, c: Element, k: usize) -> Result<BTreeSet<Element>> {
    parenthesization_set_with_cap(q, c, k, DEFAULT_POWER_CAP)
}

pub fn parenthesization_set_with_cap(
    q: &MagmaTable,
    c: Element,
    k: usize,
    cap: usize,
) -> Result<BTreeSet<Element>> {
    let mut profile = power_profile(q, c, k, cap)?;
    Ok(profile.values.pop().expect("k >= 1"))
}

/// Whether `cᵏ` is independent of parenthesization, decided recursively:
/// `cᵏ` is well defined iff every `cʲ` with `0 < j < k` is and
/// `cʲ·cᵏ⁻ʲ = cᵏ`. `k = 0` is trivially well defined.
pub fn is_well_defined(q: &MagmaTable, c: Element, k: usize) -> bool {
    well_defined_prefix(q, c, k) == k
}

/// Largest `j ≤ k` such that `c¹, …, cʲ` are all well defined.
fn well_defined_prefix(q: &MagmaTable, c: Element, k: usize) -> usize {
    let p = right_powers(q, c, k);
    for j in 2..=k {
        if (2..j).any(|i| q.mul(p[i], p[j - i]) != p[j]) {
            return j - 1;
        }
    }
    k
}

/// Smallest subloop containing `gens`.
pub fn generated_subloop(q: &MagmaTable, gens: &[Element]) -> Result<SubsetClosure> {
    q.require_loop()?;
    for &g in gens {
        q.check_element(g)?;
    }
    Ok(closure::close(
        q,
        gens.iter().copied(),
        ClosureKinds::SUBLOOP,
        &[],
    ))
}

/// Whether every element generates an associative subloop.
pub fn is_power_associative(q: &MagmaTable) -> Result<bool> {
    q.require_loop()?;
    Ok((0..q.order()).all(|x| {
        let sub = closure::close(q, [x], ClosureKinds::SUBLOOP, &[]);
        closure::associative_on(q, sub.members())
    }))
}

/// Size of `⟨c⟩` when it is a group; `None` when `⟨c⟩` is not associative.
pub fn element_order(q: &MagmaTable, c: Element) -> Result<Option<usize>> {
    let sub = generated_subloop(q, &[c])?;
    Ok(closure::associative_on(q, sub.members()).then_some(sub.len()))
}

/// Order of `c` read off its right powers, defined only when `cᵏ` is well
/// defined for every `k ≤ |Q|`.
pub(crate) fn power_order(q: &MagmaTable, c: Element) -> Option<usize> {
    let n = q.order();
    if well_defined_prefix(q, c, n) < n {
        return None;
    }
    let mut p = 0;
    for k in 1..=n {
        p = q.mul(c, p);
        if p == 0 {
            return Some(k);
        }
    }
    None
}

/// Parameters of the loop built by [`powers_gap_loop`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowersLoopParams {
    pub m: usize,
    pub n: usize,
    /// Smallest integer `≥ m + 2` coprime to `n`.
    pub s: usize,
    /// Permutation of `ℤ_s`: fixes `i·n` for `i < m` and sends `i·n` to
    /// `(s + m − i − 1)·n` for `m ≤ i < s`.
    pub phi: Permutation,
}

impl PowersLoopParams {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 2 || n < 3 || n % 2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "need m >= 2 and odd n >= 3, got m = {m}, n = {n}"
            )));
        }
        let s = (m + 2..)
            .find(|&s| gcd(s, n) == 1)
            .expect("coprime integer");
        let mut images = vec![0; s];
        for i in 0..s {
            let image = if i < m { i } else { s + m - i - 1 };
            images[(i * n) % s] = (image * n) % s;
        }
        Ok(Self {
            m,
            n,
            s,
            phi: Permutation::new(images)?,
        })
    }

    /// `[k] ∘ [l] = φ⁻¹(φ[k] + φ[l])`, a relabelled copy of `ℤ_s`.
    pub fn circle(&self, k: usize, l: usize) -> usize {
        let inv = self.phi.inverse();
        inv.apply((self.phi.apply(k) + self.phi.apply(l)) % self.s)
    }

    /// The multiplication table of `(ℤ_s, ∘)`.
    pub fn circle_table(&self) -> MagmaTable {
        let inv = self.phi.inverse();
        let s = self.s;
        MagmaTable::from_fn(s, Kind::Loop, |k, l| {
            inv.apply((self.phi.apply(k) + self.phi.apply(l)) % s)
        })
        .expect("conjugate of a cyclic group is a loop")
    }

    /// Encoding of `(a mod n, u mod s)` as `a + n·u`.
    pub fn encode(&self, a: usize, u: usize) -> Element {
        (a % self.n) + self.n * (u % self.s)
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A one-generated Jordan loop on `ℤ_n × ℤ_s` with generator `c = (1, 1)`
/// such that `cᵏ` is well defined for `k < mn` while
/// `c^{pn}·c^{(m−p)n} ≠ c^{mn}` for `0 < p < m`.
///
/// Pairs multiply componentwise unless both first coordinates vanish, in
/// which case the second coordinates combine with `∘`.
pub fn powers_gap_loop(m: usize, n: usize) -> Result<(MagmaTable, Element, PowersLoopParams)> {
    let params = PowersLoopParams::new(m, n)?;
    let circle = params.circle_table();
    let s = params.s;
    let table = MagmaTable::from_fn(n * s, Kind::Loop, |x, y| {
        let (a, u) = (x % n, x / n);
        let (b, v) = (y % n, y / n);
        if a != 0 || b != 0 {
            (a + b) % n + n * ((u + v) % s)
        } else {
            n * circle.mul(u, v)
        }
    })?;
    let c = params.encode(1, 1);
    Ok((table, c, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::props::{check, PropertyTag};
    use crate::table::cyclic_group;

    #[test]
    fn right_powers_in_z5() {
        let z5 = cyclic_group(5).unwrap();
        assert_eq!(right_power(&z5, 2, 0), 0);
        assert_eq!(right_power(&z5, 2, 3), 1);
    }

    #[test]
    fn small_parenthesizations() {
        let z5 = cyclic_group(5).unwrap();
        assert_eq!(
            parenthesization_set(&z5, 3, 1).unwrap(),
            BTreeSet::from([3])
        );
        assert!(matches!(
            parenthesization_set(&z5, 3, 65),
            Err(Error::PowerCap { k: 65, cap: 64 })
        ));
        assert!(parenthesization_set_with_cap(&z5, 3, 65, 100).is_ok());
        assert!(parenthesization_set(&z5, 3, 0).is_err());
    }

    #[test]
    fn order_twelve_example() {
        let (q, c, params) = powers_gap_loop(2, 3).unwrap();
        assert_eq!(params.s, 4);
        assert_eq!(q.order(), 12);
        assert_eq!(c, 4);
        assert_eq!(params.phi.images(), &[0, 2, 1, 3]);
        assert_eq!(right_power(&q, c, 3), 9);
        let c3 = right_power(&q, c, 3);
        assert_eq!(q.mul(c3, c3), 3);
        assert_eq!(right_power(&q, c, 6), 6);
        let six = parenthesization_set(&q, c, 6).unwrap();
        assert!(six.contains(&3) && six.contains(&6));
        assert!(!is_well_defined(&q, c, 6));
        assert!((0..6).all(|k| is_well_defined(&q, c, k)));
        assert!(check(&q, PropertyTag::Jordan).unwrap());
        assert_eq!(generated_subloop(&q, &[c]).unwrap().len(), 12);
        assert!(!is_power_associative(&q).unwrap());
        assert_eq!(element_order(&q, c).unwrap(), None);
    }

    #[test]
    fn parameter_validation() {
        assert!(powers_gap_loop(1, 3).is_err());
        assert!(powers_gap_loop(2, 4).is_err());
        assert!(powers_gap_loop(2, 1).is_err());
        // s skips values sharing a factor with n.
        assert_eq!(PowersLoopParams::new(4, 3).unwrap().s, 7);
        assert_eq!(PowersLoopParams::new(2, 5).unwrap().s, 4);
        assert_eq!(PowersLoopParams::new(3, 5).unwrap().s, 6);
    }

    #[test]
    fn subloops_and_orders_in_groups() {
        let z6 = cyclic_group(6).unwrap();
        assert_eq!(generated_subloop(&z6, &[0]).unwrap().members(), &[0]);
        assert_eq!(generated_subloop(&z6, &[2]).unwrap().members(), &[0, 2, 4]);
        assert_eq!(element_order(&z6, 0).unwrap(), Some(1));
        assert_eq!(element_order(&z6, 3).unwrap(), Some(2));
        assert!(is_power_associative(&z6).unwrap());
        assert_eq!(power_order(&z6, 4), Some(3));
    }
}
