//! Shared fixtures: random tables, relabeling, a loop corpus and the
//! three-point amalgam example.

#![allow(dead_code)]

use std::collections::BTreeMap;

use jordan_loops::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Shape {
    pub symmetric: bool,
    pub idempotent: bool,
    /// Fix row 0 and column 0 as the identity.
    pub identity: bool,
}

/// A random Latin square of the given shape by randomized backtracking.
/// Returns `None` when the node cap is hit or the shape is impossible.
pub fn try_random_table(rng: &mut StdRng, n: usize, shape: Shape) -> Option<MagmaTable> {
    const UNSET: usize = usize::MAX;
    let mut cells = vec![UNSET; n * n];
    let mut rows = vec![0u64; n];
    let mut cols = vec![0u64; n];
    let place = |cells: &mut Vec<usize>,
                 rows: &mut Vec<u64>,
                 cols: &mut Vec<u64>,
                 i: usize,
                 j: usize,
                 v: usize| {
        cells[i * n + j] = v;
        rows[i] |= 1 << v;
        cols[j] |= 1 << v;
    };
    if shape.identity {
        for i in 0..n {
            place(&mut cells, &mut rows, &mut cols, 0, i, i);
            if i > 0 {
                place(&mut cells, &mut rows, &mut cols, i, 0, i);
            }
        }
    }
    if shape.idempotent {
        for i in 0..n {
            if cells[i * n + i] != UNSET && cells[i * n + i] != i {
                return None;
            }
            if cells[i * n + i] == UNSET {
                if rows[i] & (1 << i) != 0 || cols[i] & (1 << i) != 0 {
                    return None;
                }
                place(&mut cells, &mut rows, &mut cols, i, i, i);
            }
        }
    }
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| {
            let start = if shape.symmetric { i } else { 0 };
            (start..n).map(move |j| (i, j))
        })
        .filter(|&(i, j)| cells[i * n + j] == UNSET)
        .collect();

    struct Fill<'a> {
        n: usize,
        symmetric: bool,
        cells: Vec<usize>,
        rows: Vec<u64>,
        cols: Vec<u64>,
        free: &'a [(usize, usize)],
        budget: u64,
    }
    impl Fill<'_> {
        fn go(&mut self, at: usize, rng: &mut StdRng) -> bool {
            if at == self.free.len() {
                return true;
            }
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            let (i, j) = self.free[at];
            let mut values: Vec<usize> = (0..self.n).collect();
            values.shuffle(rng);
            for v in values {
                let bit = 1u64 << v;
                let mut blocked = (self.rows[i] | self.cols[j]) & bit != 0;
                if self.symmetric && i != j {
                    blocked |= (self.rows[j] | self.cols[i]) & bit != 0;
                }
                if blocked {
                    continue;
                }
                self.set(i, j, v, true);
                if self.symmetric && i != j {
                    self.set(j, i, v, true);
                }
                if self.go(at + 1, rng) {
                    return true;
                }
                self.set(i, j, v, false);
                if self.symmetric && i != j {
                    self.set(j, i, v, false);
                }
            }
            false
        }

        fn set(&mut self, i: usize, j: usize, v: usize, on: bool) {
            let n = self.n;
            if on {
                self.cells[i * n + j] = v;
                self.rows[i] |= 1 << v;
                self.cols[j] |= 1 << v;
            } else {
                self.cells[i * n + j] = usize::MAX;
                self.rows[i] &= !(1 << v);
                self.cols[j] &= !(1 << v);
            }
        }
    }

    let mut fill = Fill {
        n,
        symmetric: shape.symmetric,
        cells,
        rows,
        cols,
        free: &free,
        budget: 200_000,
    };
    if !fill.go(0, rng) {
        return None;
    }
    let kind = if shape.identity {
        Kind::Loop
    } else {
        Kind::Quasigroup
    };
    let cells = fill.cells;
    Some(MagmaTable::from_fn(n, kind, |i, j| cells[i * n + j]).expect("filled Latin square"))
}

/// Retries [`try_random_table`] until it succeeds. The shape must be
/// realizable at order `n`.
pub fn random_table(rng: &mut StdRng, n: usize, shape: Shape) -> MagmaTable {
    for _ in 0..100 {
        if let Some(t) = try_random_table(rng, n, shape) {
            return t;
        }
    }
    panic!("could not fill a table of order {n} with shape {shape:?}");
}

pub fn random_loop(rng: &mut StdRng, n: usize, commutative: bool) -> MagmaTable {
    random_table(
        rng,
        n,
        Shape {
            symmetric: commutative,
            identity: true,
            ..Shape::default()
        },
    )
}

pub fn random_quasigroup(rng: &mut StdRng, n: usize, commutative: bool) -> MagmaTable {
    random_table(
        rng,
        n,
        Shape {
            symmetric: commutative,
            ..Shape::default()
        },
    )
}

/// A random permutation of `0..n` fixing 0.
pub fn random_relabel(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (1..n).collect();
    p.shuffle(rng);
    p.insert(0, 0);
    p
}

/// The table of `q` transported along `p`: `p(x)·p(y) = p(xy)`.
pub fn relabel(q: &MagmaTable, p: &[usize]) -> MagmaTable {
    let n = q.order();
    let mut inv = vec![0; n];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    MagmaTable::from_fn(n, q.kind(), |x, y| p[q.mul(inv[x], inv[y])]).unwrap()
}

/// Loops of assorted kinds: groups, the explicit constructions, and random
/// commutative and noncommutative loops.
pub fn loop_corpus() -> Vec<MagmaTable> {
    let mut out = Vec::new();
    for n in 1..=12 {
        out.push(cyclic_group(n).unwrap());
    }
    let z2 = cyclic_group(2).unwrap();
    let z3 = cyclic_group(3).unwrap();
    let z4 = cyclic_group(4).unwrap();
    out.push(direct_product(&z2, &z2).unwrap());
    out.push(direct_product(&z2, &z4).unwrap());
    out.push(direct_product(&z3, &z3).unwrap());
    out.push(direct_product(&construct(6).unwrap(), &z3).unwrap());
    for n in (6..=24).filter(|&n| n != 9) {
        out.push(construct(n).unwrap());
    }
    for i in 0..=3 {
        out.push(jordan_tower(i).unwrap());
    }
    out.push(hyper_extend(&cyclic_group(7).unwrap()).unwrap());
    for (m, n) in [(2, 3), (2, 5), (3, 3)] {
        out.push(powers_gap_loop(m, n).unwrap().0);
    }
    let mut r = rng(0x5eed);
    for n in 2..=8 {
        out.push(random_loop(&mut r, n, true));
        out.push(random_loop(&mut r, n, false));
    }
    out
}

/// The three-point example: `G` with `g∘g = k`, blocks of two kinds on
/// `S = {r, s}`, `L = ℤ₃` on `{1, r, s}`, and the cyclic bijection
/// `g → h → k → g`. Points are `g = 0`, `h = 1`, `k = 2`; `r = 0`, `s = 1`.
pub struct ThreePoint {
    pub g: MagmaTable,
    pub blocks: Vec<MagmaTable>,
    pub spec: AmalgamSpec,
    pub c: Permutation,
}

pub fn three_point() -> ThreePoint {
    let g = build_magma(
        3,
        &[vec![2, 0, 1], vec![0, 1, 2], vec![1, 2, 0]],
        Kind::Quasigroup,
    )
    .unwrap();
    let qa = build_magma(2, &[vec![0, 1], vec![1, 0]], Kind::Quasigroup).unwrap();
    let qb = build_magma(2, &[vec![1, 0], vec![0, 1]], Kind::Quasigroup).unwrap();
    // Rows g, h, k; columns g, h, k.
    let layout = [['A', 'A', 'B'], ['B', 'B', 'B'], ['A', 'A', 'B']];
    let mut blocks = Vec::new();
    let mut map = BTreeMap::new();
    for (a, row) in layout.iter().enumerate() {
        for (b, &which) in row.iter().enumerate() {
            let q = if which == 'A' { qa.clone() } else { qb.clone() };
            blocks.push(q.clone());
            map.insert((a, b), q);
        }
    }
    let l = cyclic_group(3).unwrap();
    let spec = AmalgamSpec::new(g.clone(), 2, vec![l; 3], map).unwrap();
    ThreePoint {
        g,
        blocks,
        spec,
        c: Permutation::new(vec![1, 2, 0]).unwrap(),
    }
}

pub fn uniform_blocks(g: usize, q: &MagmaTable) -> BTreeMap<(usize, usize), MagmaTable> {
    (0..g)
        .flat_map(|a| (0..g).map(move |b| (a, b)))
        .map(|key| (key, q.clone()))
        .collect()
}

pub fn random_bool(rng: &mut StdRng) -> bool {
    rng.gen_bool(0.5)
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// All quasigroup tables of order `n` (small `n` only).
pub fn all_quasigroups(n: usize) -> Vec<MagmaTable> {
    let rows = all_permutations(n);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn go(n: usize, rows: &[Vec<usize>], chosen: &mut Vec<usize>, out: &mut Vec<MagmaTable>) {
        if chosen.len() == n {
            let t = MagmaTable::from_fn(n, Kind::Quasigroup, |i, j| rows[chosen[i]][j]);
            if let Ok(t) = t {
                out.push(t);
            }
            return;
        }
        for r in 0..rows.len() {
            let clash = chosen
                .iter()
                .any(|&c| (0..n).any(|j| rows[c][j] == rows[r][j]));
            if !clash {
                chosen.push(r);
                go(n, rows, chosen, out);
                chosen.pop();
            }
        }
    }
    go(n, &rows, &mut chosen, &mut out);
    out
}

/// Outcome of a biconditional sweep.
#[derive(Debug, Default)]
pub struct Sweep {
    pub cases: usize,
    pub positives: usize,
    pub mismatches: Vec<String>,
}

/// Every quasigroup `G` of order at most 3 with every bijection `c`, random
/// loops and blocks: the adjoined magma is a loop exactly when `c` is the
/// identity and `G` is idempotent.
pub fn loop_amalgam_sweep(seed: u64) -> Sweep {
    let mut r = rng(seed);
    let mut sweep = Sweep::default();
    for order in 1..=3 {
        for g in all_quasigroups(order) {
            let idempotent = check(&g, PropertyTag::Idempotent).unwrap();
            for s in 1..=3 {
                let loops: Vec<MagmaTable> = (0..order)
                    .map(|_| {
                        let c = r.gen_bool(0.5);
                        random_loop(&mut r, s + 1, c)
                    })
                    .collect();
                let blocks: BTreeMap<(usize, usize), MagmaTable> = (0..order)
                    .flat_map(|a| (0..order).map(move |b| (a, b)))
                    .map(|key| (key, random_quasigroup(&mut r, s, false)))
                    .collect();
                let spec = AmalgamSpec::new(g.clone(), s, loops, blocks).unwrap();
                for p in all_permutations(order) {
                    let c = Permutation::new(p).unwrap();
                    let m = adjoin_identity_with_bijection(&spec, &c).unwrap();
                    let is_loop = build_magma(m.order(), &m.rows(), Kind::Loop).is_ok();
                    let predicted = c.is_identity() && idempotent;
                    sweep.cases += 1;
                    sweep.positives += is_loop as usize;
                    if is_loop != predicted {
                        sweep
                            .mismatches
                            .push(format!("G={:?} s={s} c={c}", g.rows()));
                    }
                }
            }
        }
    }
    sweep
}

/// Random `(G, L, Q)` with `|G| ≥ 3`: the condition check agrees with the
/// Jordan check on the uniform amalgam.
pub fn guaranteed_jordan_sweep(seed: u64, trials: usize) -> Sweep {
    let mut r = rng(seed);
    let mut sweep = Sweep::default();
    let groups = [
        cyclic_group(2).unwrap(),
        cyclic_group(3).unwrap(),
        cyclic_group(4).unwrap(),
        cyclic_group(5).unwrap(),
        direct_product(&cyclic_group(2).unwrap(), &cyclic_group(2).unwrap()).unwrap(),
        construct(6).unwrap(),
    ];
    for _ in 0..trials {
        let g_order = [3, 4, 5][r.gen_range(0..3)];
        let symmetric = g_order % 2 == 1 && r.gen_bool(0.8);
        let g = random_table(
            &mut r,
            g_order,
            Shape {
                symmetric,
                idempotent: true,
                identity: false,
            },
        );
        let l = if r.gen_bool(0.6) {
            groups[r.gen_range(0..groups.len())].clone()
        } else {
            let n = r.gen_range(2..=6);
            let c = r.gen_bool(0.8);
            random_loop(&mut r, n, c)
        };
        let s = l.order() - 1;
        let q = if r.gen_bool(0.5) {
            let c = cyclic_group(s)
                .unwrap()
                .with_kind(Kind::Quasigroup)
                .unwrap();
            relabel_any(&c, &random_perm(&mut r, s))
        } else {
            let c = r.gen_bool(0.8);
            random_quasigroup(&mut r, s, c)
        };
        let predicted = guaranteed_jordan_conditions(&g, &l, &q).unwrap();
        let spec = AmalgamSpec::uniform(g.clone(), &l, &q).unwrap();
        let actual = check(&loop_amalgam(&spec).unwrap(), PropertyTag::Jordan).unwrap();
        sweep.cases += 1;
        sweep.positives += actual as usize;
        if predicted != actual {
            sweep.mismatches.push(format!(
                "G={:?} L={:?} Q={:?} predicted={predicted}",
                g.rows(),
                l.rows(),
                q.rows()
            ));
        }
    }
    sweep
}

/// A uniformly random permutation of `0..n`.
pub fn random_perm(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Like [`relabel`] without requiring `p(0) = 0`.
pub fn relabel_any(q: &MagmaTable, p: &[usize]) -> MagmaTable {
    let n = q.order();
    let mut inv = vec![0; n];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    MagmaTable::from_fn(n, q.kind(), |x, y| p[q.mul(inv[x], inv[y])]).unwrap()
}
