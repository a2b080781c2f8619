//! Finite abelian groups `Z_{n_1} x ... x Z_{n_r}` and their automorphism
//! groups, represented by explicit element tables.
//!
//! Elements are indexed `0..size` by a mixed-radix encoding of residue tuples
//! with the first factor most significant, so in `Z2 x Z2` the tuple `(1, 0)`
//! has index 2 and `(0, 1)` has index 1. Index 0 is always the zero tuple.

use std::fmt;

use crate::error::{Error, Result};

/// Largest group order accepted unless overridden.
pub const DEFAULT_SIZE_CAP: usize = 64;

/// Largest automorphism group that will be materialized.
pub const DEFAULT_MEMBER_CAP: usize = 100_000;

/// Composition tables are precomputed only below this many members.
const COMPOSITION_TABLE_LIMIT: usize = 512;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<usize>,
    size: usize,
    strides: Vec<usize>,
    sum: Vec<usize>,
    neg: Vec<usize>,
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({})", self.spec())
    }
}

impl AbelianGroup {
    /// Direct sum of cyclic groups of the given orders, with the default size cap.
    pub fn new(orders: &[usize]) -> Result<Self> {
        Self::with_cap(orders, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(orders: &[usize], cap: usize) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Input(
                "group needs at least one cyclic factor".into(),
            ));
        }
        if let Some(&n) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::Input(format!("cyclic factor order {n} is below 2")));
        }
        let mut size: usize = 1;
        for &n in orders {
            size = size
                .checked_mul(n)
                .filter(|&s| s <= cap)
                .ok_or_else(|| Error::Input(format!("group order exceeds cap {cap}")))?;
        }

        let mut strides = vec![1; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1];
        }

        let mut group = AbelianGroup {
            orders: orders.to_vec(),
            size,
            strides,
            sum: Vec::new(),
            neg: Vec::new(),
        };
        let mut sum = vec![0; size * size];
        let mut neg = vec![0; size];
        for a in 0..size {
            let ta = group.decode(a);
            let na: Vec<usize> = ta
                .iter()
                .zip(&group.orders)
                .map(|(&c, &n)| (n - c) % n)
                .collect();
            neg[a] = group.encode_unchecked(&na);
            for b in 0..size {
                let tb = group.decode(b);
                let s: Vec<usize> = ta
                    .iter()
                    .zip(&tb)
                    .zip(&group.orders)
                    .map(|((&x, &y), &n)| (x + y) % n)
                    .collect();
                sum[a * size + b] = group.encode_unchecked(&s);
            }
        }
        group.sum = sum;
        group.neg = neg;
        Ok(group)
    }

    /// Parses a comma-separated list of factor orders such as `"2,2"` or `"4"`.
    pub fn parse_spec(spec: &str, cap: usize) -> Result<Self> {
        let orders = parse_orders(spec)?;
        Self::with_cap(&orders, cap)
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The canonical spec string, e.g. `"2,2"`.
    pub fn spec(&self) -> String {
        self.orders
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn zero(&self) -> usize {
        0
    }

    /// Sum of two element indices; panics on out-of-range indices.
    #[inline]
    pub fn sum(&self, a: usize, b: usize) -> usize {
        self.sum[a * self.size + b]
    }

    #[inline]
    pub fn negate(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn add(&self, a: usize, b: usize) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sum(a, b))
    }

    pub fn neg(&self, a: usize) -> Result<usize> {
        self.check(a)?;
        Ok(self.negate(a))
    }

    /// `k * a` computed by repeated addition.
    pub fn scale(&self, k: usize, a: usize) -> usize {
        (0..k).fold(0, |acc, _| self.sum(acc, a))
    }

    /// Additive order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.sum(x, a);
            k += 1;
        }
        k
    }

    pub fn check(&self, a: usize) -> Result<()> {
        if a < self.size {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "element index {a} out of range for group of order {}",
                self.size
            )))
        }
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (index / s) % n)
            .collect()
    }

    pub fn encode(&self, residues: &[usize]) -> Result<usize> {
        if residues.len() != self.orders.len() {
            return Err(Error::Input(format!(
                "expected {} residues, got {}",
                self.orders.len(),
                residues.len()
            )));
        }
        if let Some((c, n)) = residues.iter().zip(&self.orders).find(|(&c, &n)| c >= n) {
            return Err(Error::Input(format!("residue {c} out of range mod {n}")));
        }
        Ok(self.encode_unchecked(residues))
    }

    fn encode_unchecked(&self, residues: &[usize]) -> usize {
        residues.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    /// Index of the unit vector of the `i`-th cyclic factor.
    pub fn generator(&self, i: usize) -> usize {
        self.strides[i]
    }
}

pub fn parse_orders(spec: &str) -> Result<Vec<usize>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::Input("empty group order list".into()));
    }
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("bad factor order {:?}", tok.trim())))
        })
        .collect()
}

/// An automorphism stored as its full element mapping.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    table: Vec<usize>,
}

impl Automorphism {
    pub fn identity(group: &AbelianGroup) -> Self {
        Automorphism {
            table: (0..group.size()).collect(),
        }
    }

    pub fn negation(group: &AbelianGroup) -> Self {
        Automorphism {
            table: (0..group.size()).map(|a| group.negate(a)).collect(),
        }
    }

    /// Validates bijectivity, `f(0) = 0` and additivity element by element.
    pub fn from_table(group: &AbelianGroup, table: Vec<usize>) -> Result<Self> {
        let n = group.size();
        if table.len() != n {
            return Err(Error::Input(format!(
                "automorphism table has {} entries, group has {n}",
                table.len()
            )));
        }
        let mut seen = vec![false; n];
        for &t in &table {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(Error::Input(
                    "automorphism table is not a permutation".into(),
                ));
            }
        }
        if table[0] != 0 {
            return Err(Error::Input("automorphism does not fix zero".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if table[group.sum(i, j)] != group.sum(table[i], table[j]) {
                    return Err(Error::Input(format!("map is not additive at ({i}, {j})")));
                }
            }
        }
        Ok(Automorphism { table })
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if self.table.len() != other.table.len() {
            return Err(Error::Input("automorphisms act on different groups".into()));
        }
        Ok(Automorphism {
            table: other.table.iter().map(|&i| self.table[i]).collect(),
        })
    }

    pub fn invert(&self) -> Automorphism {
        let mut inv = vec![0; self.table.len()];
        for (i, &t) in self.table.iter().enumerate() {
            inv[t] = i;
        }
        Automorphism { table: inv }
    }
}

/// `Aut(A)` in canonical (lexicographic by table) order.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    group: AbelianGroup,
    members: Vec<Automorphism>,
    identity: usize,
    inverse: Vec<usize>,
    composition: Option<Vec<usize>>,
}

impl PartialEq for AutomorphismGroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.members == other.members
    }
}

impl Eq for AutomorphismGroup {}

impl AutomorphismGroup {
    pub fn enumerate(group: &AbelianGroup) -> Result<Self> {
        Self::enumerate_with_limit(group, DEFAULT_MEMBER_CAP)
    }

    /// Brute-force enumeration: every generator of a cyclic factor of order
    /// `n` is sent to some element annihilated by `n`, partial assignments
    /// that already collide on the generated subgroup are pruned, and each
    /// surviving map is validated as an automorphism.
    pub fn enumerate_with_limit(group: &AbelianGroup, member_cap: usize) -> Result<Self> {
        let rank = group.orders().len();
        let candidates: Vec<Vec<usize>> = group
            .orders()
            .iter()
            .map(|&n| {
                (0..group.size())
                    .filter(|&g| group.scale(n, g) == 0)
                    .collect()
            })
            .collect();

        let mut members = Vec::new();
        let mut images = Vec::with_capacity(rank);
        search_images(group, &candidates, &mut images, member_cap, &mut members)?;
        members.sort();
        members.dedup();
        Self::from_members(group.clone(), members)
    }

    fn from_members(group: AbelianGroup, members: Vec<Automorphism>) -> Result<Self> {
        let id = Automorphism::identity(&group);
        let identity = members
            .binary_search(&id)
            .map_err(|_| Error::Internal("identity missing from Aut(A)".into()))?;
        let mut aut = AutomorphismGroup {
            group,
            members,
            identity,
            inverse: Vec::new(),
            composition: None,
        };
        aut.inverse = (0..aut.len())
            .map(|i| aut.lookup(&aut.members[i].invert()))
            .collect::<Result<_>>()?;
        let m = aut.len();
        if m <= COMPOSITION_TABLE_LIMIT {
            let mut table = vec![0; m * m];
            for i in 0..m {
                for j in 0..m {
                    let c = aut.members[i].compose(&aut.members[j])?;
                    table[i * m + j] = aut.lookup(&c)?;
                }
            }
            aut.composition = Some(table);
        }
        Ok(aut)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn members(&self) -> &[Automorphism] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, index: usize) -> &Automorphism {
        &self.members[index]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Canonical index of `-Id`.
    pub fn negation(&self) -> usize {
        self.lookup(&Automorphism::negation(&self.group))
            .expect("negation is always an automorphism of an abelian group")
    }

    /// Canonical index of a given automorphism.
    pub fn lookup(&self, f: &Automorphism) -> Result<usize> {
        self.members
            .binary_search(f)
            .map_err(|_| Error::Input("map is not a member of Aut(A)".into()))
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "automorphism index {index} out of range (|Aut(A)| = {})",
                self.len()
            )))
        }
    }

    /// Index of `members[f] ∘ members[h]`.
    #[inline]
    pub fn compose(&self, f: usize, h: usize) -> usize {
        match &self.composition {
            Some(table) => table[f * self.len() + h],
            None => {
                let c = self.members[f]
                    .compose(&self.members[h])
                    .expect("members share a group");
                self.lookup(&c).expect("Aut(A) is closed under composition")
            }
        }
    }

    /// Composition of a sequence, applied right to left like the written product.
    pub fn product(&self, factors: &[usize]) -> usize {
        factors
            .iter()
            .rev()
            .fold(self.identity, |acc, &f| self.compose(f, acc))
    }

    #[inline]
    pub fn inverse(&self, f: usize) -> usize {
        self.inverse[f]
    }

    #[inline]
    pub fn apply(&self, f: usize, a: usize) -> usize {
        self.members[f].apply(a)
    }
}

fn search_images(
    group: &AbelianGroup,
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    member_cap: usize,
    out: &mut Vec<Automorphism>,
) -> Result<()> {
    let rank = candidates.len();
    if images.len() == rank {
        let table = map_from_images(group, images);
        if let Some(table) = table {
            out.push(Automorphism::from_table(group, table)?);
            if out.len() > member_cap {
                return Err(Error::Resource(format!(
                    "Aut({}) has more than {member_cap} members",
                    group.spec()
                )));
            }
        }
        return Ok(());
    }
    for &g in &candidates[images.len()] {
        images.push(g);
        if partial_injective(group, images) {
            search_images(group, candidates, images, member_cap, out)?;
        }
        images.pop();
    }
    Ok(())
}

/// Whether the homomorphism defined on the first `images.len()` factors is
/// injective on the subgroup they generate.
fn partial_injective(group: &AbelianGroup, images: &[usize]) -> bool {
    let mut seen = vec![false; group.size()];
    let mut ok = true;
    each_combination(group, images.len(), |coeffs| {
        let img = coeffs
            .iter()
            .zip(images)
            .fold(0, |acc, (&c, &g)| group.sum(acc, group.scale(c, g)));
        if std::mem::replace(&mut seen[img], true) {
            ok = false;
        }
        ok
    });
    ok
}

fn map_from_images(group: &AbelianGroup, images: &[usize]) -> Option<Vec<usize>> {
    let mut table = vec![0; group.size()];
    let mut seen = vec![false; group.size()];
    for (x, slot) in table.iter_mut().enumerate() {
        let coeffs = group.decode(x);
        let img = coeffs
            .iter()
            .zip(images)
            .fold(0, |acc, (&c, &g)| group.sum(acc, group.scale(c, g)));
        if std::mem::replace(&mut seen[img], true) {
            return None;
        }
        *slot = img;
    }
    Some(table)
}

/// Visits all coefficient vectors for the first `k` factors; stops early when
/// the visitor returns false.
fn each_combination(group: &AbelianGroup, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let orders = &group.orders()[..k];
    let mut coeffs = vec![0; k];
    loop {
        if !visit(&coeffs) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < orders[i] {
                break;
            }
            coeffs[i] = 0;
        }
    }
}
