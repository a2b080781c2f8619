//! Brute-force oracles written against raw tables. They share nothing with
//! the library beyond reading its data (loop tables, automorphism tables).

#![allow(dead_code)]

use std::sync::Arc;

use linext::{AbelianGroup, AutomorphismGroup, ChoiceSource, Chooser, FiniteLoop, LoopCocycle};

/// A magma given by a row-major table, element 0 the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub n: usize,
    pub t: Vec<usize>,
}

impl Table {
    pub fn of(lp: &FiniteLoop) -> Self {
        let n = lp.size();
        let t = (0..n * n).map(|i| lp.mul(i / n, i % n)).collect();
        Table { n, t }
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.t[x * self.n + y]
    }

    /// `z` with `z * x = 0`, found by scanning.
    pub fn left_inv(&self, x: usize) -> usize {
        (0..self.n)
            .find(|&z| self.mul(z, x) == 0)
            .expect("left inverse")
    }

    /// `z` with `x * z = 0`, found by scanning.
    pub fn right_inv(&self, x: usize) -> usize {
        (0..self.n)
            .find(|&z| self.mul(x, z) == 0)
            .expect("right inverse")
    }

    pub fn is_latin(&self) -> bool {
        let n = self.n;
        (0..n).all(|r| {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            (0..n).all(|c| {
                let (a, b) = (self.mul(r, c), self.mul(c, r));
                a < n
                    && b < n
                    && !std::mem::replace(&mut row[a], true)
                    && !std::mem::replace(&mut col[b], true)
            })
        })
    }

    pub fn lip(&self) -> bool {
        (0..self.n).all(|x| {
            let i = self.left_inv(x);
            (0..self.n).all(|y| self.mul(i, self.mul(x, y)) == y)
        })
    }

    pub fn rip(&self) -> bool {
        (0..self.n).all(|x| {
            let i = self.left_inv(x);
            (0..self.n).all(|y| self.mul(self.mul(y, x), i) == y)
        })
    }

    pub fn ip(&self) -> bool {
        self.lip() && self.rip()
    }

    pub fn inverses_coincide(&self) -> bool {
        (0..self.n).all(|x| self.left_inv(x) == self.right_inv(x))
    }

    pub fn commutative(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }
}

/// Mixed-radix arithmetic with the first factor most significant.
pub struct Radix {
    pub orders: Vec<usize>,
}

impl Radix {
    pub fn digits(&self, mut a: usize) -> Vec<usize> {
        let mut d = vec![0; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            d[i] = a % self.orders[i];
            a /= self.orders[i];
        }
        d
    }

    pub fn number(&self, d: &[usize]) -> usize {
        d.iter()
            .zip(&self.orders)
            .fold(0, |acc, (&x, &n)| acc * n + x)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = (0..x.len())
            .map(|i| (x[i] + y[i]) % self.orders[i])
            .collect();
        self.number(&s)
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product()
    }
}

/// Table of `(α, a)(β, b) = (αβ, P(α, β) a + Q(α, β) b)` with `(ξ, a)` at
/// index `ξ·|A| + a`, computed cell by cell.
pub fn extension_table(c: &LoopCocycle) -> Table {
    let base = Table::of(c.base());
    let radix = Radix {
        orders: c.group().orders().to_vec(),
    };
    let m = radix.size();
    let l = base.n;
    let n = l * m;
    let apply = |f: usize, a: usize| c.aut().get(f).table()[a];
    let mut t = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (al, a) = (x / m, x % m);
            let (be, b) = (y / m, y % m);
            let v = radix.add(apply(c.p(al, be), a), apply(c.q(al, be), b));
            t[x * n + y] = base.mul(al, be) * m + v;
        }
    }
    Table { n, t }
}

/// `{ε} x A` is normal with quotient `L`: multiplying cosets is well defined
/// and the coset map is a homomorphism onto `L`.
pub fn kernel_quotient_is_base(ext: &Table, base: &Table, m: usize) -> bool {
    (0..ext.n).all(|x| (0..ext.n).all(|y| ext.mul(x, y) / m == base.mul(x / m, y / m)))
}

/// Σ: pairs with a coordinate equal to ε or with product ε.
pub fn sigma(base: &Table) -> Vec<(usize, usize)> {
    let n = base.n;
    (0..n * n)
        .map(|i| (i / n, i % n))
        .filter(|&(x, y)| x == 0 || y == 0 || base.mul(x, y) == 0)
        .collect()
}

pub type PairMap<'a> = &'a dyn Fn((usize, usize)) -> (usize, usize);

/// Orbits of the maps in `gens` acting on `points`, each sorted.
pub fn orbits(points: &[(usize, usize)], gens: &[PairMap]) -> Vec<Vec<(usize, usize)>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for &p in points {
        if seen.contains(&p) {
            continue;
        }
        let mut orbit = vec![p];
        seen.insert(p);
        let mut i = 0;
        while i < orbit.len() {
            for g in gens {
                let q = g(orbit[i]);
                if seen.insert(q) {
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit.sort();
        out.push(orbit);
    }
    out
}

pub fn aut(orders: &[usize]) -> Arc<AutomorphismGroup> {
    Arc::new(AutomorphismGroup::enumerate(&AbelianGroup::new(orders).unwrap()).unwrap())
}

/// Non-IP loop of order 5 whose element 1 has different left and right inverses.
pub fn non_ip5() -> FiniteLoop {
    FiniteLoop::new(
        5,
        &[
            vec![0, 1, 2, 3, 4],
            vec![1, 3, 0, 4, 2],
            vec![2, 4, 3, 1, 0],
            vec![3, 2, 4, 0, 1],
            vec![4, 0, 1, 2, 3],
        ],
    )
    .unwrap()
}

/// Random normalized cocycle.
pub fn random_cocycle(
    base: &Arc<FiniteLoop>,
    aut: &Arc<AutomorphismGroup>,
    rng: &mut ChoiceSource,
) -> LoopCocycle {
    let l = base.size();
    let id = aut.identity();
    let mut p = vec![id; l * l];
    let mut q = vec![id; l * l];
    for x in 0..l {
        for y in 0..l {
            if y != 0 {
                p[x * l + y] = rng.choose(aut.len());
            }
            if x != 0 {
                q[x * l + y] = rng.choose(aut.len());
            }
        }
    }
    LoopCocycle::new(base.clone(), aut.clone(), p, q).unwrap()
}

/// Random cocycle with `P(ε, ·) = Q(·, ε) = Id`.
pub fn random_strongly_linear(
    base: &Arc<FiniteLoop>,
    aut: &Arc<AutomorphismGroup>,
    rng: &mut ChoiceSource,
) -> LoopCocycle {
    let l = base.size();
    let id = aut.identity();
    let mut p = vec![id; l * l];
    let mut q = vec![id; l * l];
    for x in 1..l {
        for y in 1..l {
            p[x * l + y] = rng.choose(aut.len());
            q[x * l + y] = rng.choose(aut.len());
        }
    }
    LoopCocycle::new(base.clone(), aut.clone(), p, q).unwrap()
}

/// Random cocycle with `P(α, β) = Q(β, α)`.
pub fn random_symmetric(
    base: &Arc<FiniteLoop>,
    aut: &Arc<AutomorphismGroup>,
    rng: &mut ChoiceSource,
) -> LoopCocycle {
    let l = base.size();
    let c = random_cocycle(base, aut, rng);
    let p = c.p_table().to_vec();
    let q = (0..l * l).map(|i| p[(i % l) * l + i / l]).collect();
    LoopCocycle::new(base.clone(), aut.clone(), p, q).unwrap()
}

/// Replaces `P` or `Q` at one cell with both coordinates non-identity, which
/// keeps normalization and strong linearity.
pub fn mutate(c: &LoopCocycle, rng: &mut ChoiceSource) -> LoopCocycle {
    let l = c.base().size();
    if l < 2 {
        return c.clone();
    }
    let x = 1 + rng.choose(l - 1);
    let y = 1 + rng.choose(l - 1);
    let v = rng.choose(c.aut().len());
    if rng.choose(2) == 0 {
        c.with_values(x, y, v, c.q(x, y)).unwrap()
    } else {
        c.with_values(x, y, c.p(x, y), v).unwrap()
    }
}
