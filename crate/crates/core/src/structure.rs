//! Translations, inner mappings, normal closures and simplicity.

use std::collections::HashSet;

use crate::closure::{self, ClosureKinds, Divisions, SubsetClosure};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::{Element, MagmaTable};

/// `L_x : y ↦ xy`.
pub fn left_translation(q: &MagmaTable, x: Element) -> Result<Permutation> {
    q.as_quasigroup()?;
    q.check_element(x)?;
    Ok(Permutation::from_images_unchecked(q.row(x).collect()))
}

/// `R_x : y ↦ yx`.
pub fn right_translation(q: &MagmaTable, x: Element) -> Result<Permutation> {
    q.as_quasigroup()?;
    q.check_element(x)?;
    Ok(Permutation::from_images_unchecked(
        (0..q.order()).map(|y| q.mul(y, x)).collect(),
    ))
}

/// `L(x, y) = L_{yx}⁻¹ L_y L_x`, i.e. `z ↦ (yx) \ (y(xz))`.
pub fn inner_left(q: &MagmaTable, x: Element, y: Element) -> Result<Permutation> {
    q.require_loop()?;
    q.check_element(x)?;
    q.check_element(y)?;
    Ok(inner_left_with(q, &Divisions::new(q), x, y))
}

/// `R(x, y) = R_{xy}⁻¹ R_y R_x`, i.e. `z ↦ ((zx)y) / (xy)`.
pub fn inner_right(q: &MagmaTable, x: Element, y: Element) -> Result<Permutation> {
    q.require_loop()?;
    q.check_element(x)?;
    q.check_element(y)?;
    Ok(inner_right_with(q, &Divisions::new(q), x, y))
}

/// `T(x) = R_x⁻¹ L_x`, i.e. `z ↦ (xz) / x`.
pub fn conjugation(q: &MagmaTable, x: Element) -> Result<Permutation> {
    q.require_loop()?;
    q.check_element(x)?;
    Ok(conjugation_with(q, &Divisions::new(q), x))
}

fn inner_left_with(q: &MagmaTable, d: &Divisions, x: Element, y: Element) -> Permutation {
    let yx = q.mul(y, x);
    Permutation::from_images_unchecked(
        (0..q.order())
            .map(|z| d.left(yx, q.mul(y, q.mul(x, z))))
            .collect(),
    )
}

fn inner_right_with(q: &MagmaTable, d: &Divisions, x: Element, y: Element) -> Permutation {
    let xy = q.mul(x, y);
    Permutation::from_images_unchecked(
        (0..q.order())
            .map(|z| d.right(xy, q.mul(q.mul(z, x), y)))
            .collect(),
    )
}

fn conjugation_with(q: &MagmaTable, d: &Divisions, x: Element) -> Permutation {
    Permutation::from_images_unchecked((0..q.order()).map(|z| d.right(x, q.mul(x, z))).collect())
}

/// Every distinct non-identity `L(x, y)`, `R(x, y)` and `T(x)`.
pub fn inner_mappings(q: &MagmaTable) -> Result<Vec<Permutation>> {
    q.require_loop()?;
    let d = Divisions::new(q);
    let n = q.order();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut keep = |p: Permutation| {
        if !p.is_identity() && seen.insert(p.clone()) {
            out.push(p);
        }
    };
    for x in 0..n {
        keep(conjugation_with(q, &d, x));
        for y in 0..n {
            keep(inner_left_with(q, &d, x, y));
            keep(inner_right_with(q, &d, x, y));
        }
    }
    Ok(out)
}

/// Smallest normal subloop containing `seed`.
pub fn normal_closure(q: &MagmaTable, seed: &[Element]) -> Result<SubsetClosure> {
    let maps = inner_mappings(q)?;
    for &x in seed {
        q.check_element(x)?;
    }
    Ok(closure::close(
        q,
        seed.iter().copied(),
        ClosureKinds::NORMAL,
        &maps,
    ))
}

/// Whether the subloop `s` is invariant under every inner mapping.
pub fn is_normal(q: &MagmaTable, s: &[Element]) -> Result<bool> {
    q.require_loop()?;
    let mut members: Vec<Element> = s.to_vec();
    members.sort_unstable();
    members.dedup();
    for &x in &members {
        q.check_element(x)?;
    }
    if members.first() != Some(&0) || !closure::is_closed(q, &members) {
        return Err(Error::InvalidArgument(format!(
            "{members:?} is not a subloop"
        )));
    }
    let mut inside = vec![false; q.order()];
    for &x in &members {
        inside[x] = true;
    }
    Ok(inner_mappings(q)?
        .iter()
        .all(|p| members.iter().all(|&x| inside[p.apply(x)])))
}

/// The outcome of a simplicity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    /// `witness` generates a proper nontrivial normal subloop.
    NotSimple {
        witness: Element,
        closure: SubsetClosure,
    },
}

/// Decides simplicity through the normal closures of single elements: a
/// proper nontrivial normal subloop exists iff one of them is proper.
pub fn simplicity(q: &MagmaTable) -> Result<Simplicity> {
    let maps = inner_mappings(q)?;
    let n = q.order();
    for x in 1..n {
        let c = closure::close(q, [x], ClosureKinds::NORMAL, &maps);
        if c.len() < n {
            return Ok(Simplicity::NotSimple {
                witness: x,
                closure: c,
            });
        }
    }
    Ok(Simplicity::Simple)
}

pub fn is_simple(q: &MagmaTable) -> Result<bool> {
    Ok(simplicity(q)? == Simplicity::Simple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{cyclic_group, direct_product};

    #[test]
    fn translations_in_z3() {
        let z3 = cyclic_group(3).unwrap();
        assert!(left_translation(&z3, 0).unwrap().is_identity());
        assert_eq!(left_translation(&z3, 1).unwrap().images(), &[1, 2, 0]);
        assert_eq!(
            left_translation(&z3, 2).unwrap(),
            right_translation(&z3, 2).unwrap()
        );
    }

    #[test]
    fn abelian_groups_have_trivial_inner_mappings() {
        let z2 = cyclic_group(2).unwrap();
        let g = direct_product(&cyclic_group(4).unwrap(), &z2).unwrap();
        for x in 0..8 {
            assert!(conjugation(&g, x).unwrap().is_identity());
            for y in 0..8 {
                assert!(inner_left(&g, x, y).unwrap().is_identity());
                assert!(inner_right(&g, x, y).unwrap().is_identity());
            }
        }
        assert!(inner_mappings(&g).unwrap().is_empty());
    }

    #[test]
    fn normal_closures_in_groups() {
        let z6 = cyclic_group(6).unwrap();
        assert_eq!(normal_closure(&z6, &[0]).unwrap().members(), &[0]);
        assert_eq!(normal_closure(&z6, &[2]).unwrap().members(), &[0, 2, 4]);
        assert_eq!(normal_closure(&z6, &[3]).unwrap().members(), &[0, 3]);
    }

    #[test]
    fn normality() {
        let z4 = cyclic_group(4).unwrap();
        assert!(is_normal(&z4, &[0, 2]).unwrap());
        assert!(is_normal(&z4, &[0]).unwrap());
        assert!(is_normal(&z4, &[0, 1, 2, 3]).unwrap());
        assert!(is_normal(&z4, &[0, 1]).is_err());
    }

    #[test]
    fn simplicity_of_small_groups() {
        assert!(is_simple(&cyclic_group(5).unwrap()).unwrap());
        assert!(is_simple(&cyclic_group(1).unwrap()).unwrap());
        match simplicity(&cyclic_group(4).unwrap()).unwrap() {
            Simplicity::NotSimple { witness, closure } => {
                assert_eq!(witness, 2);
                assert_eq!(closure.members(), &[0, 2]);
            }
            Simplicity::Simple => panic!("Z4 is not simple"),
        }
    }
}
