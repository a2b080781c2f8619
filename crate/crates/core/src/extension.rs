//! Loop cocycles `(P, Q)` and the linear abelian extension `F(P, Q)` on
//! `L x A` with
//!
//! ```text
//! (α, a) * (β, b) = (αβ, P(α, β) a + Q(α, β) b)
//! ```
//!
//! together with closed-form tests for commutativity, inverse coincidence and
//! the left, right and two-sided inverse properties.
//!
//! A written product of automorphisms `XY` always means `X ∘ Y`, i.e. `Y` is
//! applied first. `Aut(A)` is not abelian in general, so every checker below
//! uses [`AutomorphismGroup::product`] which follows that convention.

use std::sync::Arc;

use crate::abelian::{AbelianGroup, AutomorphismGroup};
use crate::constructions::GammaElement;
use crate::error::{Error, Result};
use crate::loops::FiniteLoop;

/// Element `(ξ, a)` of `L x A`.
pub type Pair = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopCocycle {
    base: Arc<FiniteLoop>,
    aut: Arc<AutomorphismGroup>,
    p: Vec<usize>,
    q: Vec<usize>,
}

impl LoopCocycle {
    /// Validates shape, index range and the normalization
    /// `P(α, ε) = Id = Q(ε, β)`.
    pub fn new(
        base: Arc<FiniteLoop>,
        aut: Arc<AutomorphismGroup>,
        p: Vec<usize>,
        q: Vec<usize>,
    ) -> Result<Self> {
        let l = base.size();
        for (name, t) in [("P", &p), ("Q", &q)] {
            if t.len() != l * l {
                return Err(Error::Input(format!(
                    "{name} table has {} entries, expected {}",
                    t.len(),
                    l * l
                )));
            }
            for &f in t.iter() {
                aut.check_index(f)?;
            }
        }
        let id = aut.identity();
        for x in 0..l {
            if p[x * l] != id {
                return Err(Error::CocycleNormalization(format!("P({x}, ε) is not Id")));
            }
            if q[x] != id {
                return Err(Error::CocycleNormalization(format!("Q(ε, {x}) is not Id")));
            }
        }
        Ok(LoopCocycle { base, aut, p, q })
    }

    pub fn from_rows(
        base: Arc<FiniteLoop>,
        aut: Arc<AutomorphismGroup>,
        p_rows: &[Vec<usize>],
        q_rows: &[Vec<usize>],
    ) -> Result<Self> {
        let l = base.size();
        let flatten = |name: &str, rows: &[Vec<usize>]| -> Result<Vec<usize>> {
            if rows.len() != l || rows.iter().any(|r| r.len() != l) {
                return Err(Error::Input(format!("{name} table is not {l} x {l}")));
            }
            Ok(rows.concat())
        };
        let p = flatten("P", p_rows)?;
        let q = flatten("Q", q_rows)?;
        Self::new(base, aut, p, q)
    }

    /// The cocycle with every value `Id`; its extension is `L x A`.
    pub fn trivial(base: Arc<FiniteLoop>, aut: Arc<AutomorphismGroup>) -> Self {
        let n = base.size() * base.size();
        let id = aut.identity();
        LoopCocycle {
            base,
            aut,
            p: vec![id; n],
            q: vec![id; n],
        }
    }

    pub fn base(&self) -> &FiniteLoop {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<FiniteLoop> {
        &self.base
    }

    pub fn aut(&self) -> &AutomorphismGroup {
        &self.aut
    }

    pub fn aut_arc(&self) -> &Arc<AutomorphismGroup> {
        &self.aut
    }

    pub fn group(&self) -> &AbelianGroup {
        self.aut.group()
    }

    #[inline]
    pub fn p(&self, x: usize, y: usize) -> usize {
        self.p[x * self.base.size() + y]
    }

    #[inline]
    pub fn q(&self, x: usize, y: usize) -> usize {
        self.q[x * self.base.size() + y]
    }

    pub fn p_table(&self) -> &[usize] {
        &self.p
    }

    pub fn q_table(&self) -> &[usize] {
        &self.q
    }

    /// A copy with `P(x, y)` and `Q(x, y)` replaced, revalidated.
    pub fn with_values(&self, x: usize, y: usize, p: usize, q: usize) -> Result<Self> {
        self.base.check(x)?;
        self.base.check(y)?;
        let mut c = self.clone();
        let i = x * self.base.size() + y;
        c.p[i] = p;
        c.q[i] = q;
        Self::new(c.base, c.aut, c.p, c.q)
    }

    /// Cocycle of the opposite extension over the opposite base loop:
    /// `P'(α, β) = Q(β, α)`, `Q'(α, β) = P(β, α)`.
    pub fn opposite(&self) -> LoopCocycle {
        let l = self.base.size();
        let mut p = vec![0; l * l];
        let mut q = vec![0; l * l];
        for a in 0..l {
            for b in 0..l {
                p[a * l + b] = self.q(b, a);
                q[a * l + b] = self.p(b, a);
            }
        }
        LoopCocycle {
            base: Arc::new(self.base.opposite()),
            aut: Arc::clone(&self.aut),
            p,
            q,
        }
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let l = self.base.size();
        (0..l * l).map(move |i| (i / l, i % l))
    }

    fn two_sided_inverses(&self) -> Result<Vec<usize>> {
        self.base.inverse_map().ok_or_else(|| {
            Error::Precondition("base loop lacks coinciding two-sided inverses".into())
        })
    }

    /// `F(P, Q)` is commutative iff `L` is and `P(α, β) = Q(β, α)`.
    pub fn is_commutative_extension(&self) -> bool {
        self.base.is_commutative() && self.pairs().all(|(a, b)| self.p(a, b) == self.q(b, a))
    }

    /// `p(ξ) = P(ξ⁻¹, ξ)` and `q(ξ) = Q(ξ⁻¹, ξ)`.
    pub fn inverse_coincidence_data(&self) -> Result<InverseCoincidenceData> {
        let inv = self.two_sided_inverses()?;
        let l = self.base.size();
        Ok(InverseCoincidenceData {
            pmap: (0..l).map(|x| self.p(inv[x], x)).collect(),
            qmap: (0..l).map(|x| self.q(inv[x], x)).collect(),
        })
    }

    /// First `ξ` violating `p(ξ⁻¹) = q(ξ⁻¹) p(ξ)⁻¹ q(ξ)`.
    pub fn cip_violation(&self) -> Result<Option<usize>> {
        let inv = self.two_sided_inverses()?;
        let data = self.inverse_coincidence_data()?;
        let g = &self.aut;
        Ok((0..self.base.size()).find(|&x| {
            let xi = inv[x];
            data.pmap[xi] != g.product(&[data.qmap[xi], g.inverse(data.pmap[x]), data.qmap[x]])
        }))
    }

    pub fn check_cip(&self) -> Result<bool> {
        Ok(self.cip_violation()?.is_none())
    }

    fn require_lip(&self) -> Result<Vec<usize>> {
        if let Some((x, y)) = self.base.lip_violation() {
            return Err(Error::Precondition(format!(
                "base loop lacks LIP (fails at x={x}, y={y})"
            )));
        }
        self.two_sided_inverses()
    }

    fn require_rip(&self) -> Result<Vec<usize>> {
        if let Some((x, y)) = self.base.rip_violation() {
            return Err(Error::Precondition(format!(
                "base loop lacks RIP (fails at x={x}, y={y})"
            )));
        }
        self.two_sided_inverses()
    }

    /// First `(ξ, η)` violating
    /// `Q(ξ⁻¹, ξη) = Q(ξ, η)⁻¹` or
    /// `P(ξ⁻¹, ξη) = Q(ξ, η)⁻¹ P(ξ, η) Q(ξ⁻¹, ξ)⁻¹ P(ξ⁻¹, ξ)`.
    pub fn lip_condition_violation(&self) -> Result<Option<(usize, usize)>> {
        let inv = self.require_lip()?;
        let g = &self.aut;
        Ok(self.pairs().find(|&(x, y)| {
            let (xi, xy) = (inv[x], self.base.mul(x, y));
            let q_inv = g.inverse(self.q(x, y));
            self.q(xi, xy) != q_inv
                || self.p(xi, xy)
                    != g.product(&[q_inv, self.p(x, y), g.inverse(self.q(xi, x)), self.p(xi, x)])
        }))
    }

    pub fn check_lip_conditions(&self) -> Result<bool> {
        Ok(self.lip_condition_violation()?.is_none())
    }

    /// First `(ξ, η)` violating
    /// `P(ξη, η⁻¹) = P(ξ, η)⁻¹` or
    /// `Q(ξη, η⁻¹) = P(ξ, η)⁻¹ Q(ξ, η) P(η, η⁻¹)⁻¹ Q(η, η⁻¹)`.
    pub fn rip_condition_violation(&self) -> Result<Option<(usize, usize)>> {
        let inv = self.require_rip()?;
        let g = &self.aut;
        Ok(self.pairs().find(|&(x, y)| {
            let (xy, yi) = (self.base.mul(x, y), inv[y]);
            let p_inv = g.inverse(self.p(x, y));
            self.p(xy, yi) != p_inv
                || self.q(xy, yi)
                    != g.product(&[p_inv, self.q(x, y), g.inverse(self.p(y, yi)), self.q(y, yi)])
        }))
    }

    pub fn check_rip_conditions(&self) -> Result<bool> {
        Ok(self.rip_condition_violation()?.is_none())
    }

    /// `P(ε, ξ) = Q(ξ, ε) = Id` for all `ξ`, i.e. the kernel copies of `A`
    /// multiply by plain addition on both sides.
    pub fn is_strongly_linear(&self) -> bool {
        let id = self.aut.identity();
        (0..self.base.size()).all(|x| self.p(0, x) == id && self.q(x, 0) == id)
    }

    fn require_strongly_linear_ip(&self) -> Result<Vec<usize>> {
        if !self.is_strongly_linear() {
            return Err(Error::Precondition("cocycle is not strongly linear".into()));
        }
        self.require_lip()?;
        self.require_rip()
    }

    /// First `(ξ, η)` violating one of
    /// `P(ξη, η⁻¹) = P(ξ, η)⁻¹`, `Q(ξη, η⁻¹) = P(ξ, η)⁻¹ Q(ξ, η)`,
    /// `Q(ξ⁻¹, ξη) = Q(ξ, η)⁻¹`, `P(ξ⁻¹, ξη) = Q(ξ, η)⁻¹ P(ξ, η)`.
    pub fn ip_condition_violation(&self) -> Result<Option<(usize, usize)>> {
        let inv = self.require_strongly_linear_ip()?;
        let g = &self.aut;
        Ok(self.pairs().find(|&(x, y)| {
            let xy = self.base.mul(x, y);
            let (p, q) = (self.p(x, y), self.q(x, y));
            let (p_inv, q_inv) = (g.inverse(p), g.inverse(q));
            self.p(xy, inv[y]) != p_inv
                || self.q(xy, inv[y]) != g.compose(p_inv, q)
                || self.q(inv[x], xy) != q_inv
                || self.p(inv[x], xy) != g.compose(q_inv, p)
        }))
    }

    pub fn check_ip_conditions(&self) -> Result<bool> {
        Ok(self.ip_condition_violation()?.is_none())
    }

    /// First failure of equivariance under the six-element group generated by
    /// `φ(ξ, η) = (ξ⁻¹, ξη)` and `ψ(ξ, η) = (ξη, η⁻¹)`: either a boundary pair
    /// carrying a non-identity value, or a pair `(ξ, η)` outside the boundary
    /// and a `τ` with `(P, Q)(τ(ξ, η)) != τ · (P, Q)(ξ, η)`.
    pub fn equivariance_violation(&self) -> Result<Option<EquivarianceViolation>> {
        let inv = self.require_strongly_linear_ip()?;
        if let Some(x) = self.base.order3_element()? {
            return Err(Error::Precondition(format!(
                "base loop has an element of order 3 ({x})"
            )));
        }
        let id = self.aut.identity();
        let boundary = |x: usize, y: usize| x == 0 || y == 0 || x == inv[y];
        for (x, y) in self.pairs() {
            if boundary(x, y) {
                if self.p(x, y) != id || self.q(x, y) != id {
                    return Ok(Some(EquivarianceViolation::Boundary((x, y))));
                }
                continue;
            }
            let value = (self.p(x, y), self.q(x, y));
            for tau in GammaElement::ALL {
                let (u, v) = tau.apply_to_pair(&self.base, &inv, (x, y));
                if (self.p(u, v), self.q(u, v)) != tau.act_on_pair(&self.aut, value) {
                    return Ok(Some(EquivarianceViolation::Orbit { pair: (x, y), tau }));
                }
            }
        }
        Ok(None)
    }

    pub fn check_equivariance(&self) -> Result<bool> {
        Ok(self.equivariance_violation()?.is_none())
    }

    /// Closed-form left inverse `(ε, 0) / (ξ, x)`:
    /// `(ε/ξ, −P(ε/ξ, ξ)⁻¹ Q(ε/ξ, ξ) x)`.
    pub fn extension_left_inverse(&self, (xi, x): Pair) -> Result<Pair> {
        self.base.check(xi)?;
        self.group().check(x)?;
        let g = &self.aut;
        let li = self.base.left_inverse(xi);
        let f = g.compose(g.inverse(self.p(li, xi)), self.q(li, xi));
        Ok((li, self.group().negate(g.apply(f, x))))
    }

    /// Closed-form right inverse `(ξ, x) \ (ε, 0)`:
    /// `(ξ\ε, −Q(ξ, ξ\ε)⁻¹ P(ξ, ξ\ε) x)`.
    pub fn extension_right_inverse(&self, (xi, x): Pair) -> Result<Pair> {
        self.base.check(xi)?;
        self.group().check(x)?;
        let g = &self.aut;
        let ri = self.base.right_inverse(xi);
        let f = g.compose(g.inverse(self.q(xi, ri)), self.p(xi, ri));
        Ok((ri, self.group().negate(g.apply(f, x))))
    }

    pub fn build_extension(&self) -> ExtensionLoop {
        ExtensionLoop::build(self.clone())
    }
}

/// Where [`LoopCocycle::check_equivariance`] failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivarianceViolation {
    Boundary((usize, usize)),
    Orbit {
        pair: (usize, usize),
        tau: GammaElement,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseCoincidenceData {
    pub pmap: Vec<usize>,
    pub qmap: Vec<usize>,
}

/// `F(P, Q)` materialized as a loop of order `l * |A|`, with `(ξ, a)`
/// stored at index `ξ * |A| + a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionLoop {
    cocycle: LoopCocycle,
    table: FiniteLoop,
}

impl ExtensionLoop {
    pub fn build(cocycle: LoopCocycle) -> Self {
        let l = cocycle.base.size();
        let m = cocycle.group().size();
        let n = l * m;
        let g = &cocycle.aut;
        let group = cocycle.group();
        let mut table = vec![0; n * n];
        for xi in 0..l {
            for eta in 0..l {
                let prod = cocycle.base.mul(xi, eta);
                let (p, q) = (cocycle.p(xi, eta), cocycle.q(xi, eta));
                for a in 0..m {
                    let pa = g.apply(p, a);
                    for b in 0..m {
                        let c = group.sum(pa, g.apply(q, b));
                        table[(xi * m + a) * n + eta * m + b] = prod * m + c;
                    }
                }
            }
        }
        let table = FiniteLoop::from_flat(n, table)
            .expect("translations of F(P, Q) are bijective for automorphism-valued cocycles");
        ExtensionLoop { cocycle, table }
    }

    pub fn cocycle(&self) -> &LoopCocycle {
        &self.cocycle
    }

    pub fn as_loop(&self) -> &FiniteLoop {
        &self.table
    }

    pub fn into_loop(self) -> FiniteLoop {
        self.table
    }

    pub fn encode(&self, (xi, a): Pair) -> usize {
        xi * self.cocycle.group().size() + a
    }

    pub fn decode(&self, index: usize) -> Pair {
        let m = self.cocycle.group().size();
        (index / m, index % m)
    }

    pub fn mul(&self, x: Pair, y: Pair) -> Pair {
        self.decode(self.table.mul(self.encode(x), self.encode(y)))
    }

    /// Indices of `{ε} x A`.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.cocycle.group().size()).collect()
    }
}
