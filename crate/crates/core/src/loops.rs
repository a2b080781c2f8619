//! Finite loops given by Cayley tables with the identity at index 0.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteLoop {
    size: usize,
    table: Vec<usize>,
    // ldiv[x * n + y] = x \ y, rdiv[x * n + y] = x / y
    ldiv: Vec<usize>,
    rdiv: Vec<usize>,
}

impl fmt::Debug for FiniteLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FiniteLoop({})", self.size)?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl FiniteLoop {
    /// Validates a row-major table: Latin square first, then identity at 0.
    pub fn new(size: usize, rows: &[Vec<usize>]) -> Result<Self> {
        if size == 0 {
            return Err(Error::Input("loop must have at least one element".into()));
        }
        if rows.len() != size {
            return Err(Error::Input(format!(
                "expected {size} rows, got {}",
                rows.len()
            )));
        }
        let mut table = Vec::with_capacity(size * size);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::Input(format!(
                    "row {r} has {} entries, expected {size}",
                    row.len()
                )));
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(size, table)
    }

    pub fn from_flat(size: usize, table: Vec<usize>) -> Result<Self> {
        if size == 0 || table.len() != size * size {
            return Err(Error::Input(format!(
                "table of {} entries does not fit a loop of order {size}",
                table.len()
            )));
        }
        let mut ldiv = vec![usize::MAX; size * size];
        let mut rdiv = vec![usize::MAX; size * size];
        for x in 0..size {
            for y in 0..size {
                let z = table[x * size + y];
                if z >= size {
                    return Err(Error::Structure(format!(
                        "entry {z} at ({x}, {y}) is out of range"
                    )));
                }
                if ldiv[x * size + z] != usize::MAX {
                    return Err(Error::Structure(format!("row {x} repeats entry {z}")));
                }
                ldiv[x * size + z] = y;
                if rdiv[z * size + y] != usize::MAX {
                    return Err(Error::Structure(format!("column {y} repeats entry {z}")));
                }
                rdiv[z * size + y] = x;
            }
        }
        for i in 0..size {
            if table[i] != i {
                return Err(Error::IdentityPosition(format!(
                    "row 0 is not the identity permutation (0 * {i} = {})",
                    table[i]
                )));
            }
            if table[i * size] != i {
                return Err(Error::IdentityPosition(format!(
                    "column 0 is not the identity permutation ({i} * 0 = {})",
                    table[i * size]
                )));
            }
        }
        Ok(FiniteLoop {
            size,
            table,
            ldiv,
            rdiv,
        })
    }

    /// The cyclic group `Z_n` as a loop.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_flat(n, table).expect("cyclic group table is a loop")
    }

    /// Direct product with pair encoding `(a, b) -> a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteLoop) -> Self {
        let m = other.size;
        let n = self.size * m;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / m, x % m);
                let (ya, yb) = (y / m, y % m);
                table[x * n + y] = self.mul(xa, ya) * m + other.mul(xb, yb);
            }
        }
        Self::from_flat(n, table).expect("direct product of loops is a loop")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.table.chunks(self.size)
    }

    pub fn check(&self, x: usize) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "element {x} out of range for loop of order {}",
                self.size
            )))
        }
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    /// `x \ y`: the unique `z` with `x * z = y`.
    #[inline]
    pub fn left_div(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.size + y]
    }

    /// `x / y`: the unique `z` with `z * y = x`.
    #[inline]
    pub fn right_div(&self, x: usize, y: usize) -> usize {
        self.rdiv[x * self.size + y]
    }

    /// `ε / x`.
    #[inline]
    pub fn left_inverse(&self, x: usize) -> usize {
        self.right_div(0, x)
    }

    /// `x \ ε`.
    #[inline]
    pub fn right_inverse(&self, x: usize) -> usize {
        self.left_div(x, 0)
    }

    pub fn try_mul(&self, x: usize, y: usize) -> Result<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn try_left_div(&self, x: usize, y: usize) -> Result<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.left_div(x, y))
    }

    pub fn try_right_div(&self, x: usize, y: usize) -> Result<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.right_div(x, y))
    }

    pub fn try_left_inverse(&self, x: usize) -> Result<usize> {
        self.check(x)?;
        Ok(self.left_inverse(x))
    }

    pub fn try_right_inverse(&self, x: usize) -> Result<usize> {
        self.check(x)?;
        Ok(self.right_inverse(x))
    }

    /// First `x` whose left and right inverses differ.
    pub fn inverse_mismatch(&self) -> Option<usize> {
        (0..self.size).find(|&x| self.left_inverse(x) != self.right_inverse(x))
    }

    pub fn inverses_coincide(&self) -> bool {
        self.inverse_mismatch().is_none()
    }

    /// The two-sided inverse map, if every element has one.
    pub fn inverse_map(&self) -> Option<Vec<usize>> {
        self.inverses_coincide()
            .then(|| (0..self.size).map(|x| self.left_inverse(x)).collect())
    }

    /// First `(x, y)` with `ι(x) * (x * y) != y`, where `ι(x) = ε / x`.
    pub fn lip_violation(&self) -> Option<(usize, usize)> {
        self.pairs()
            .find(|&(x, y)| self.mul(self.left_inverse(x), self.mul(x, y)) != y)
    }

    /// First `(x, y)` with `(y * x) * ι(x) != y`, where `ι(x) = ε / x`.
    pub fn rip_violation(&self) -> Option<(usize, usize)> {
        self.pairs()
            .find(|&(x, y)| self.mul(self.mul(y, x), self.left_inverse(x)) != y)
    }

    pub fn has_lip(&self) -> bool {
        self.lip_violation().is_none()
    }

    pub fn has_rip(&self) -> bool {
        self.rip_violation().is_none()
    }

    pub fn has_ip(&self) -> bool {
        self.has_lip() && self.has_rip()
    }

    /// LIP by searching for any bijection `ι` instead of assuming `ι(x) = ε / x`.
    pub fn has_lip_exhaustive(&self) -> bool {
        let candidates: Vec<Vec<usize>> = (0..self.size)
            .map(|x| {
                (0..self.size)
                    .filter(|&z| (0..self.size).all(|y| self.mul(z, self.mul(x, y)) == y))
                    .collect()
            })
            .collect();
        has_transversal(&candidates)
    }

    pub fn has_rip_exhaustive(&self) -> bool {
        let candidates: Vec<Vec<usize>> = (0..self.size)
            .map(|x| {
                (0..self.size)
                    .filter(|&z| (0..self.size).all(|y| self.mul(self.mul(y, x), z) == y))
                    .collect()
            })
            .collect();
        has_transversal(&candidates)
    }

    pub fn commutativity_violation(&self) -> Option<(usize, usize)> {
        self.pairs()
            .find(|&(x, y)| self.mul(x, y) != self.mul(y, x))
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_violation().is_none()
    }

    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        (0..n * n * n)
            .map(|i| (i / (n * n), (i / n) % n, i % n))
            .find(|&(x, y, z)| self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)))
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    /// Some `x != ε` with `x * x = x⁻¹`. Only defined when two-sided inverses exist.
    pub fn order3_element(&self) -> Result<Option<usize>> {
        if let Some(x) = self.inverse_mismatch() {
            return Err(Error::Undefined(format!(
                "order-3 elements need two-sided inverses; element {x} has distinct left and right inverses"
            )));
        }
        Ok((1..self.size).find(|&x| self.mul(x, x) == self.left_inverse(x)))
    }

    /// The loop with multiplication `x ⋆ y = y * x`.
    pub fn opposite(&self) -> Self {
        let n = self.size;
        let table = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        Self::from_flat(n, table).expect("transpose of a loop table is a loop")
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.size;
        (0..n * n).map(move |i| (i / n, i % n))
    }

    /// Checks that `subset` is a subloop and that its left cosets form a
    /// congruence, i.e. `N` is the kernel of the coset map.
    pub fn is_normal_subloop(&self, subset: &[usize]) -> Result<bool> {
        let members = self.subloop_members(subset)?;
        Ok(self.coset_partition(&members).is_some())
    }

    /// The factor loop on left cosets of a normal subloop. Cosets are labelled
    /// in increasing order of their smallest element, so the coset of `ε` is 0.
    pub fn quotient(&self, subset: &[usize]) -> Result<FiniteLoop> {
        let members = self.subloop_members(subset)?;
        let labels = self
            .coset_partition(&members)
            .ok_or_else(|| Error::Domain("subloop is not normal".into()))?;
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut reps = vec![usize::MAX; count];
        for (x, &c) in labels.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        let table = (0..count * count)
            .map(|i| labels[self.mul(reps[i / count], reps[i % count])])
            .collect();
        FiniteLoop::from_flat(count, table)
    }

    fn subloop_members(&self, subset: &[usize]) -> Result<Vec<bool>> {
        let mut members = vec![false; self.size];
        for &x in subset {
            self.check(x)?;
            members[x] = true;
        }
        if !members[0] {
            return Err(Error::Input("subset does not contain the identity".into()));
        }
        let elems: Vec<usize> = (0..self.size).filter(|&x| members[x]).collect();
        for &x in &elems {
            for &y in &elems {
                let closed = members[self.mul(x, y)]
                    && members[self.left_div(x, y)]
                    && members[self.right_div(x, y)];
                if !closed {
                    return Err(Error::Input(format!(
                        "subset is not a subloop: not closed at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(members)
    }

    /// Coset label for every element when the left cosets of `N` partition the
    /// loop, agree with right cosets, and multiply as cosets; `None` otherwise.
    fn coset_partition(&self, members: &[bool]) -> Option<Vec<usize>> {
        let n = self.size;
        let sub: Vec<usize> = (0..n).filter(|&x| members[x]).collect();
        let coset_of = |x: usize, left: bool| -> Vec<bool> {
            let mut set = vec![false; n];
            for &m in &sub {
                set[if left { self.mul(x, m) } else { self.mul(m, x) }] = true;
            }
            set
        };

        let mut labels = vec![usize::MAX; n];
        let mut cosets: Vec<Vec<bool>> = Vec::new();
        for x in 0..n {
            let left = coset_of(x, true);
            if left != coset_of(x, false) {
                return None;
            }
            if labels[x] != usize::MAX {
                // x already lies in an earlier coset; xN must be that coset
                if cosets[labels[x]] != left {
                    return None;
                }
                continue;
            }
            let label = cosets.len();
            for y in 0..n {
                if left[y] {
                    if labels[y] != usize::MAX {
                        return None;
                    }
                    labels[y] = label;
                }
            }
            cosets.push(left);
        }

        for ci in &cosets {
            for cj in &cosets {
                let xi = ci.iter().position(|&b| b).expect("cosets are nonempty");
                let xj = cj.iter().position(|&b| b).expect("cosets are nonempty");
                let target = &cosets[labels[self.mul(xi, xj)]];
                for a in (0..n).filter(|&a| ci[a]) {
                    for b in (0..n).filter(|&b| cj[b]) {
                        if !target[self.mul(a, b)] {
                            return None;
                        }
                    }
                }
            }
        }
        Some(labels)
    }
}

/// Whether distinct representatives can be picked from each candidate set.
fn has_transversal(candidates: &[Vec<usize>]) -> bool {
    fn go(i: usize, candidates: &[Vec<usize>], used: &mut Vec<bool>) -> bool {
        if i == candidates.len() {
            return true;
        }
        for &c in &candidates[i] {
            if !used[c] {
                used[c] = true;
                if go(i + 1, candidates, used) {
                    return true;
                }
                used[c] = false;
            }
        }
        false
    }
    go(0, candidates, &mut vec![false; candidates.len()])
}

/// Inverse-property summary of a loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopPropertyReport {
    pub has_lip: bool,
    pub has_rip: bool,
    pub has_ip: bool,
    pub two_sided_inverses_coincide: bool,
    pub is_commutative: bool,
    pub is_associative: bool,
    /// Present only when two-sided inverses coincide.
    pub inverse: Option<Vec<usize>>,
    order3: Option<bool>,
}

impl LoopPropertyReport {
    pub fn has_order3_element(&self) -> Result<bool> {
        self.order3.ok_or_else(|| {
            Error::Undefined("order-3 elements need coinciding two-sided inverses".into())
        })
    }
}

pub fn analyze_properties(lp: &FiniteLoop) -> LoopPropertyReport {
    analyze_properties_with(lp, false)
}

/// With `exhaustive_iota`, LIP/RIP are decided by searching all bijections.
pub fn analyze_properties_with(lp: &FiniteLoop, exhaustive_iota: bool) -> LoopPropertyReport {
    let (has_lip, has_rip) = if exhaustive_iota {
        (lp.has_lip_exhaustive(), lp.has_rip_exhaustive())
    } else {
        (lp.has_lip(), lp.has_rip())
    };
    let inverse = lp.inverse_map();
    let order3 = lp.order3_element().ok().map(|o| o.is_some());
    LoopPropertyReport {
        has_lip,
        has_rip,
        has_ip: has_lip && has_rip,
        two_sided_inverses_coincide: inverse.is_some(),
        is_commutative: lp.is_commutative(),
        is_associative: lp.is_associative(),
        inverse,
        order3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> FiniteLoop {
        FiniteLoop::cyclic(2).direct_product(&FiniteLoop::cyclic(2))
    }

    #[test]
    fn make_loop_examples() {
        assert_eq!(FiniteLoop::new(1, &[vec![0]]).unwrap().size(), 1);
        assert!(FiniteLoop::new(2, &[vec![0, 1], vec![1, 0]]).is_ok());
        assert!(matches!(
            FiniteLoop::new(2, &[vec![0, 1], vec![1, 1]]),
            Err(Error::Structure(_))
        ));
        assert!(matches!(
            FiniteLoop::new(2, &[vec![1, 0], vec![0, 1]]),
            Err(Error::IdentityPosition(_))
        ));
        assert!(matches!(
            FiniteLoop::new(2, &[vec![0, 1]]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            FiniteLoop::new(2, &[vec![0, 1], vec![1, 2]]),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn divisions() {
        let z4 = FiniteLoop::cyclic(4);
        assert_eq!(z4.left_div(1, 0), 3);
        for y in 0..4 {
            assert_eq!(z4.left_div(0, y), y);
        }
        assert_eq!(z4.left_inverse(1), 3);
        assert_eq!(z4.right_inverse(1), 3);
        assert_eq!(z4.left_inverse(0), 0);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(z4.right_div(z4.mul(x, y), y), x);
                assert_eq!(z4.mul(x, z4.left_div(x, y)), y);
            }
            assert_eq!(z4.mul(z4.left_inverse(x), x), 0);
        }
        assert!(z4.try_mul(4, 0).is_err());
    }

    #[test]
    fn property_examples() {
        let z2 = analyze_properties(&FiniteLoop::cyclic(2));
        assert!(z2.has_ip);
        assert!(!z2.has_order3_element().unwrap());

        let z3 = analyze_properties(&FiniteLoop::cyclic(3));
        assert!(z3.has_ip);
        assert!(z3.has_order3_element().unwrap());

        let k = analyze_properties(&klein());
        assert!(k.has_ip);
        assert!(!k.has_order3_element().unwrap());
        assert_eq!(k.inverse, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn order3_undefined_without_two_sided_inverses() {
        // order-5 loop whose element 1 has left inverse 4 and right inverse 2
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 3, 0, 4, 2],
            vec![2, 4, 3, 1, 0],
            vec![3, 2, 4, 0, 1],
            vec![4, 0, 1, 2, 3],
        ];
        let lp = FiniteLoop::new(5, &rows).unwrap();
        assert!(!lp.inverses_coincide());
        let report = analyze_properties(&lp);
        assert!(!report.has_lip && !report.has_rip);
        assert!(matches!(
            report.has_order3_element(),
            Err(Error::Undefined(_))
        ));
    }

    #[test]
    fn exhaustive_iota_agrees_on_groups() {
        for lp in [FiniteLoop::cyclic(3), klein(), FiniteLoop::cyclic(5)] {
            assert_eq!(analyze_properties(&lp), analyze_properties_with(&lp, true));
        }
    }

    #[test]
    fn opposite_is_involution() {
        let k = klein();
        assert_eq!(k.opposite(), k);
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 3, 0, 4, 2],
            vec![2, 4, 3, 1, 0],
            vec![3, 2, 4, 0, 1],
            vec![4, 0, 1, 2, 3],
        ];
        let lp = FiniteLoop::new(5, &rows).unwrap();
        assert_ne!(lp.opposite(), lp);
        assert_eq!(lp.opposite().opposite(), lp);
    }

    #[test]
    fn normal_subloops() {
        let z4 = FiniteLoop::cyclic(4);
        assert!(z4.is_normal_subloop(&[0]).unwrap());
        assert!(z4.is_normal_subloop(&[0, 1, 2, 3]).unwrap());
        assert!(z4.is_normal_subloop(&[0, 2]).unwrap());
        assert_eq!(z4.quotient(&[0, 2]).unwrap(), FiniteLoop::cyclic(2));
        assert_eq!(z4.quotient(&[0]).unwrap(), z4);
        assert!(matches!(
            z4.is_normal_subloop(&[0, 1]),
            Err(Error::Input(_))
        ));
        assert!(matches!(z4.is_normal_subloop(&[1]), Err(Error::Input(_))));
    }
}
