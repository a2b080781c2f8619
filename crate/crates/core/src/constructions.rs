//! Generative constructions of cocycles whose extensions have coinciding
//! inverses, the left inverse property, the right inverse property, or (for
//! strongly linear cocycles) the inverse property.
//!
//! Every free choice is drawn from a [`Chooser`]. Draws happen in a fixed
//! order so that a seeded [`ChoiceSource`] reproduces the same cocycle on
//! every platform:
//!
//! 1. `q(ξ)` for `ξ = 1, 2, ..` (LIP/RIP only);
//! 2. `p(ξ)` at each inversion-orbit representative in ascending order, and at
//!    self-inverse `ξ` when [`FixedPointMode::Enumerate`] is selected;
//! 3. the free boundary map: `P(ε, ξ)` for LIP, `Q(ξ, ε)` for RIP;
//! 4. `P` then `Q` at each orbit representative, in ascending representative order.

use std::sync::Arc;

use crate::abelian::AutomorphismGroup;
use crate::error::{Error, Result};
use crate::extension::{InverseCoincidenceData, LoopCocycle};
use crate::loops::FiniteLoop;

/// Source of the "arbitrary" choices made by the constructions.
pub trait Chooser {
    /// A value in `0..n`; `n >= 1`.
    fn choose(&mut self, n: usize) -> usize;
}

/// Seeded SplitMix64 stream with rejection sampling for exact uniformity.
///
/// The state starts at the seed and advances by `0x9E3779B97F4A7C15` per
/// draw; each output is mixed with the multipliers `0xBF58476D1CE4E5B9` and
/// `0x94D049BB133111EB` (shifts 30, 27, 31). A draw for `n` choices rejects
/// raw values at or above the largest multiple of `n` and returns the
/// remainder. These constants are part of the file-level reproducibility
/// contract and must not change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceSource {
    seed: u64,
    state: u64,
    counter: u64,
}

impl ChoiceSource {
    pub fn new(seed: u64) -> Self {
        ChoiceSource {
            seed,
            state: seed,
            counter: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of raw 64-bit values drawn so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

impl Chooser for ChoiceSource {
    fn choose(&mut self, n: usize) -> usize {
        assert!(n >= 1, "cannot choose from an empty range");
        let n = n as u64;
        let limit = u64::MAX - u64::MAX % n;
        loop {
            let v = self.next_u64();
            if v < limit {
                return (v % n) as usize;
            }
        }
    }
}

/// Replays a fixed list of choices; panics when exhausted or out of range.
#[derive(Clone, Debug, Default)]
pub struct ScriptedChoices {
    values: Vec<usize>,
    pos: usize,
}

impl ScriptedChoices {
    pub fn new(values: Vec<usize>) -> Self {
        ScriptedChoices { values, pos: 0 }
    }

    pub fn consumed(&self) -> usize {
        self.pos
    }
}

impl Chooser for ScriptedChoices {
    fn choose(&mut self, n: usize) -> usize {
        let v = *self
            .values
            .get(self.pos)
            .expect("scripted choices exhausted");
        assert!(v < n, "scripted choice {v} out of range 0..{n}");
        self.pos += 1;
        v
    }
}

/// The boundary pairs `{(ξ, ε)} ∪ {(ε, ξ)} ∪ {(ξ⁻¹, ξ)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSet {
    size: usize,
    members: Vec<bool>,
    inverse: Vec<usize>,
}

impl SigmaSet {
    pub fn new(base: &FiniteLoop) -> Result<Self> {
        let inverse = base.inverse_map().ok_or_else(|| {
            Error::Precondition("base loop lacks coinciding two-sided inverses".into())
        })?;
        let l = base.size();
        let mut members = vec![false; l * l];
        for x in 0..l {
            members[x * l] = true;
            members[x] = true;
            members[inverse[x] * l + x] = true;
        }
        Ok(SigmaSet {
            size: l,
            members,
            inverse,
        })
    }

    pub fn contains(&self, (x, y): (usize, usize)) -> bool {
        self.members[x * self.size + y]
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.filtered(true)
    }

    /// `(L x L) \ Σ` in row-major order.
    pub fn complement(&self) -> Vec<(usize, usize)> {
        self.filtered(false)
    }

    pub fn inverse(&self) -> &[usize] {
        &self.inverse
    }

    fn filtered(&self, inside: bool) -> Vec<(usize, usize)> {
        let l = self.size;
        (0..l * l)
            .filter(|&i| self.members[i] == inside)
            .map(|i| (i / l, i % l))
            .collect()
    }
}

pub fn sigma_set(base: &FiniteLoop) -> Result<SigmaSet> {
    SigmaSet::new(base)
}

/// The six elements of the group generated by `φ` and `ψ`, named by their
/// words: `PhiPsi` is `φ·ψ`, i.e. `ψ` applied first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GammaElement {
    Identity,
    Phi,
    Psi,
    PhiPsiPhi,
    PsiPhi,
    PhiPsi,
}

impl GammaElement {
    pub const ALL: [GammaElement; 6] = [
        GammaElement::Identity,
        GammaElement::Phi,
        GammaElement::Psi,
        GammaElement::PhiPsiPhi,
        GammaElement::PsiPhi,
        GammaElement::PhiPsi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GammaElement::Identity => "id",
            GammaElement::Phi => "phi",
            GammaElement::Psi => "psi",
            GammaElement::PhiPsiPhi => "phi.psi.phi",
            GammaElement::PsiPhi => "psi.phi",
            GammaElement::PhiPsi => "phi.psi",
        }
    }

    /// The word in the generators, leftmost applied last.
    pub fn word(self) -> &'static [GammaElement] {
        use GammaElement::*;
        match self {
            Identity => &[],
            Phi => &[Phi],
            Psi => &[Psi],
            PhiPsiPhi => &[Phi, Psi, Phi],
            PsiPhi => &[Psi, Phi],
            PhiPsi => &[Phi, Psi],
        }
    }

    /// Action on `L x L` (valid on IP loops; `inv` is the inverse map):
    /// `φ(ξ, η) = (ξ⁻¹, ξη)`, `ψ(ξ, η) = (ξη, η⁻¹)`, `φψφ(ξ, η) = (η⁻¹, ξ⁻¹)`,
    /// `ψφ(ξ, η) = (η, (ξη)⁻¹)`, `φψ(ξ, η) = ((ξη)⁻¹, ξ)`.
    pub fn apply_to_pair(
        self,
        base: &FiniteLoop,
        inv: &[usize],
        (x, y): (usize, usize),
    ) -> (usize, usize) {
        let xy = base.mul(x, y);
        match self {
            GammaElement::Identity => (x, y),
            GammaElement::Phi => (inv[x], xy),
            GammaElement::Psi => (xy, inv[y]),
            GammaElement::PhiPsiPhi => (inv[y], inv[x]),
            GammaElement::PsiPhi => (y, inv[xy]),
            GammaElement::PhiPsi => (inv[xy], x),
        }
    }

    /// Action on `Aut(A) x Aut(A)`:
    /// `φ(P, Q) = (Q⁻¹P, Q⁻¹)`, `ψ(P, Q) = (P⁻¹, P⁻¹Q)`, `φψφ(P, Q) = (Q, P)`,
    /// `ψφ(P, Q) = (P⁻¹Q, P⁻¹)`, `φψ(P, Q) = (Q⁻¹, Q⁻¹P)`.
    pub fn act_on_pair(self, aut: &AutomorphismGroup, (p, q): (usize, usize)) -> (usize, usize) {
        let (pi, qi) = (aut.inverse(p), aut.inverse(q));
        match self {
            GammaElement::Identity => (p, q),
            GammaElement::Phi => (aut.compose(qi, p), qi),
            GammaElement::Psi => (pi, aut.compose(pi, q)),
            GammaElement::PhiPsiPhi => (q, p),
            GammaElement::PsiPhi => (aut.compose(pi, q), pi),
            GammaElement::PhiPsi => (qi, aut.compose(qi, p)),
        }
    }
}

pub fn act_on_pair(
    tau: GammaElement,
    aut: &AutomorphismGroup,
    value: (usize, usize),
) -> (usize, usize) {
    tau.act_on_pair(aut, value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitMode {
    Phi,
    Psi,
    Gamma,
}

impl OrbitMode {
    pub fn name(self) -> &'static str {
        match self {
            OrbitMode::Phi => "phi",
            OrbitMode::Psi => "psi",
            OrbitMode::Gamma => "gamma",
        }
    }
}

/// Which orbit member receives the free choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Representative {
    #[default]
    Smallest,
    Largest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMember {
    pub pair: (usize, usize),
    /// Element carrying the representative to this member.
    pub tau: GammaElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub representative: (usize, usize),
    pub members: Vec<OrbitMember>,
}

/// Partition of `(L x L) \ Σ` into orbits of `⟨φ⟩`, `⟨ψ⟩` or `Γ = ⟨φ, ψ⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub mode: OrbitMode,
    pub sigma: SigmaSet,
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn new(base: &FiniteLoop, mode: OrbitMode) -> Result<Self> {
        Self::with_representative(base, mode, Representative::Smallest)
    }

    pub fn with_representative(
        base: &FiniteLoop,
        mode: OrbitMode,
        rep: Representative,
    ) -> Result<Self> {
        match mode {
            OrbitMode::Phi => require_lip(base)?,
            OrbitMode::Psi => require_rip(base)?,
            OrbitMode::Gamma => {
                require_ip(base)?;
                if let Some(x) = base.order3_element()? {
                    return Err(Error::Precondition(format!(
                        "base loop has an element of order 3 ({x}); Γ-orbits are not regular"
                    )));
                }
            }
        }
        let sigma = SigmaSet::new(base)?;
        let l = base.size();
        let mut seen = vec![false; l * l];
        let mut orbits = Vec::new();
        let mut complement = sigma.complement();
        if rep == Representative::Largest {
            complement.reverse();
        }
        for start in complement {
            if seen[start.0 * l + start.1] {
                continue;
            }
            let members = match mode {
                OrbitMode::Phi => involution_orbit(base, &sigma, start, GammaElement::Phi)?,
                OrbitMode::Psi => involution_orbit(base, &sigma, start, GammaElement::Psi)?,
                OrbitMode::Gamma => gamma_orbit_checked(base, &sigma, start)?,
            };
            for m in &members {
                seen[m.pair.0 * l + m.pair.1] = true;
            }
            orbits.push(Orbit {
                representative: start,
                members,
            });
        }
        Ok(OrbitDecomposition {
            mode,
            sigma,
            orbits,
        })
    }

    /// Total number of pairs covered by the orbits.
    pub fn covered(&self) -> usize {
        self.orbits.iter().map(|o| o.members.len()).sum()
    }
}

fn involution_orbit(
    base: &FiniteLoop,
    sigma: &SigmaSet,
    start: (usize, usize),
    gen: GammaElement,
) -> Result<Vec<OrbitMember>> {
    let image = gen.apply_to_pair(base, sigma.inverse(), start);
    let back = gen.apply_to_pair(base, sigma.inverse(), image);
    if image == start || back != start || sigma.contains(image) {
        return Err(Error::Internal(format!(
            "{} is not a fixed-point-free involution at {start:?}",
            gen.name()
        )));
    }
    Ok(vec![
        OrbitMember {
            pair: start,
            tau: GammaElement::Identity,
        },
        OrbitMember {
            pair: image,
            tau: gen,
        },
    ])
}

fn gamma_orbit_checked(
    base: &FiniteLoop,
    sigma: &SigmaSet,
    start: (usize, usize),
) -> Result<Vec<OrbitMember>> {
    let members: Vec<OrbitMember> = GammaElement::ALL
        .iter()
        .map(|&tau| OrbitMember {
            pair: tau.apply_to_pair(base, sigma.inverse(), start),
            tau,
        })
        .collect();
    for (i, a) in members.iter().enumerate() {
        if sigma.contains(a.pair) {
            return Err(Error::Internal(format!(
                "Γ maps {start:?} into Σ at {:?}",
                a.pair
            )));
        }
        if members[..i].iter().any(|b| b.pair == a.pair) {
            return Err(Error::Order3(format!(
                "Γ-orbit of {start:?} has fewer than 6 elements"
            )));
        }
    }
    Ok(members)
}

/// The six pairs `τ(ξ, η)` for `τ` in [`GammaElement::ALL`] order.
pub fn gamma_orbit(base: &FiniteLoop, pair: (usize, usize)) -> Result<Vec<(usize, usize)>> {
    base.check(pair.0)?;
    base.check(pair.1)?;
    require_ip(base)?;
    let sigma = SigmaSet::new(base)?;
    if sigma.contains(pair) {
        return Err(Error::Precondition(format!("{pair:?} lies in Σ")));
    }
    Ok(gamma_orbit_checked(base, &sigma, pair)?
        .into_iter()
        .map(|m| m.pair)
        .collect())
}

fn require_lip(base: &FiniteLoop) -> Result<()> {
    match base.lip_violation() {
        Some((x, y)) => Err(Error::Precondition(format!(
            "base loop lacks LIP (fails at x={x}, y={y})"
        ))),
        None => Ok(()),
    }
}

fn require_rip(base: &FiniteLoop) -> Result<()> {
    match base.rip_violation() {
        Some((x, y)) => Err(Error::Precondition(format!(
            "base loop lacks RIP (fails at x={x}, y={y})"
        ))),
        None => Ok(()),
    }
}

fn require_ip(base: &FiniteLoop) -> Result<()> {
    require_lip(base)?;
    require_rip(base)
}

/// How `p(ξ)` is picked at self-inverse `ξ != ε`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FixedPointMode {
    /// `p(ξ) = q(ξ)`.
    #[default]
    Default,
    /// Uniformly among all `p` with `(p⁻¹q)² = Id`.
    Enumerate,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConstructOptions {
    pub representative: Representative,
    pub fixed_point: FixedPointMode,
}

/// Maps `p, q: L -> Aut(A)` satisfying `p(ξ⁻¹) = q(ξ⁻¹) p(ξ)⁻¹ q(ξ)`.
pub fn construct_pq(
    base: &FiniteLoop,
    aut: &AutomorphismGroup,
    chooser: &mut dyn Chooser,
) -> Result<InverseCoincidenceData> {
    construct_pq_with(base, aut, chooser, ConstructOptions::default())
}

pub fn construct_pq_with(
    base: &FiniteLoop,
    aut: &AutomorphismGroup,
    chooser: &mut dyn Chooser,
    options: ConstructOptions,
) -> Result<InverseCoincidenceData> {
    let inv = base.inverse_map().ok_or_else(|| {
        Error::Precondition("base loop lacks coinciding two-sided inverses".into())
    })?;
    let l = base.size();
    let id = aut.identity();
    let mut qmap = vec![id; l];
    for q in qmap.iter_mut().skip(1) {
        *q = chooser.choose(aut.len());
    }

    let mut pmap = vec![usize::MAX; l];
    pmap[0] = id;
    let mut order: Vec<usize> = (1..l).collect();
    if options.representative == Representative::Largest {
        order.reverse();
    }
    for x in order {
        if pmap[x] != usize::MAX {
            continue;
        }
        let xi = inv[x];
        if xi == x {
            pmap[x] = match options.fixed_point {
                FixedPointMode::Default => qmap[x],
                FixedPointMode::Enumerate => {
                    let fits = fixed_point_candidates(aut, qmap[x]);
                    fits[chooser.choose(fits.len())]
                }
            };
        } else {
            pmap[x] = chooser.choose(aut.len());
            pmap[xi] = aut.product(&[qmap[xi], aut.inverse(pmap[x]), qmap[x]]);
        }
    }
    Ok(InverseCoincidenceData { pmap, qmap })
}

/// All `p` with `(p⁻¹ q)² = Id`, in canonical order.
pub fn fixed_point_candidates(aut: &AutomorphismGroup, q: usize) -> Vec<usize> {
    (0..aut.len())
        .filter(|&p| {
            let r = aut.compose(aut.inverse(p), q);
            aut.compose(r, r) == aut.identity()
        })
        .collect()
}

/// Cocycle whose extension has the left inverse property. `base` must have LIP.
pub fn construct_lip_cocycle(
    base: Arc<FiniteLoop>,
    aut: Arc<AutomorphismGroup>,
    chooser: &mut dyn Chooser,
) -> Result<LoopCocycle> {
    construct_lip_cocycle_with(base, aut, chooser, ConstructOptions::default())
}

pub fn construct_lip_cocycle_with(
    base: Arc<FiniteLoop>,
    aut: Arc<AutomorphismGroup>,
    chooser: &mut dyn Chooser,
    options: ConstructOptions,
) -> Result<LoopCocycle> {
    require_lip(&base)?;
    let orbits =
        OrbitDecomposition::with_representative(&base, OrbitMode::Phi, options.representative)?;
    let inv = orbits.sigma.inverse().to_vec();
    let pq = construct_pq_with(&base, &aut, chooser, options)?;
    let mut t = Tables::new(base.size(), aut.identity());

    for (x, &xi) in inv.iter().enumerate() {
        t.set_q(xi, x, pq.qmap[x]);
        t.set_q(x, 0, aut.inverse(pq.qmap[x]));
        t.set_p(xi, x, pq.pmap[x]);
    }
    for x in 1..base.size() {
        t.set_p(0, x, chooser.choose(aut.len()));
    }

    for orbit in &orbits.orbits {
        let (x, y) = orbit.representative;
        let (p, q) = (chooser.choose(aut.len()), chooser.choose(aut.len()));
        t.set_p(x, y, p);
        t.set_q(x, y, q);
        // Q(ξ⁻¹, ξη) := Q(ξ, η)⁻¹
        // P(ξ⁻¹, ξη) := Q(ξ, η)⁻¹ P(ξ, η) Q(ξ⁻¹, ξ)⁻¹ P(ξ⁻¹, ξ)
        let (u, v) = (inv[x], base.mul(x, y));
        let q_inv = aut.inverse(q);
        t.set_q(u, v, q_inv);
        t.set_p(
            u,
            v,
            aut.product(&[q_inv, p, aut.inverse(t.q(inv[x], x)), t.p(inv[x], x)]),
        );
    }
    t.into_cocycle(base, aut)
}

/// Cocycle whose extension has the right inverse property. `base` must have RIP.
///
/// The boundary value `P(ε, ξ)` is forced to `P(ξ, ξ⁻¹)⁻¹ = p(ξ⁻¹)⁻¹`, which
/// is what the RIP identities give at `(ε, ξ)`.
pub fn construct_rip_cocycle(
    base: Arc<FiniteLoop>,
    aut: Arc<AutomorphismGroup>,
    chooser: &mut dyn Chooser,
) -> Result<LoopCocycle> {
    construct_rip_cocycle_with(base, aut, chooser, ConstructOptions::default())
}

pub fn construct_rip_cocycle_with(
    base: Arc<FiniteLoop>,
    aut: Arc<AutomorphismGroup>,
    chooser: &mut dyn Chooser,
    options: ConstructOptions,
) -> Result<LoopCocycle> {
    require_rip(&base)?;
    let orbits =
        OrbitDecomposition::with_representative(&base, OrbitMode::Psi, options.representative)?;
    let inv = orbits.sigma.inverse().to_vec();
    let pq = construct_pq_with(&base, &aut, chooser, options)?;
    let mut t = Tables::new(base.size(), aut.identity());

    for (x, &xi) in inv.iter().enumerate() {
        t.set_q(xi, x, pq.qmap[x]);
        t.set_p(xi, x, pq.pmap[x]);
        t.set_p(0, x, aut.inverse(pq.pmap[xi]));
    }
    for x in 1..base.size() {
        t.set_q(x, 0, chooser.choose(aut.len()));
    }

    for orbit in &orbits.orbits {
        let (x, y) = orbit.representative;
        let (p, q) = (chooser.choose(aut.len()), chooser.choose(aut.len()));
        t.set_p(x, y, p);
        t.set_q(x, y, q);
        // P(ξη, η⁻¹) := P(ξ, η)⁻¹
        // Q(ξη, η⁻¹) := P(ξ, η)⁻¹ Q(ξ, η) P(η, η⁻¹)⁻¹ Q(η, η⁻¹)
        let (u, v) = (base.mul(x, y), inv[y]);
        let p_inv = aut.inverse(p);
        t.set_p(u, v, p_inv);
        t.set_q(
            u,
            v,
            aut.product(&[p_inv, q, aut.inverse(t.p(y, inv[y])), t.q(y, inv[y])]),
        );
    }
    t.into_cocycle(base, aut)
}

/// Strongly linear cocycle whose extension has the inverse property: `Id` on
/// Σ and equivariant on every Γ-orbit. `base` must have IP and no element of
/// order 3.
pub fn construct_ip_cocycle(
    base: Arc<FiniteLoop>,
    aut: Arc<AutomorphismGroup>,
    chooser: &mut dyn Chooser,
) -> Result<LoopCocycle> {
    construct_ip_cocycle_with(base, aut, chooser, ConstructOptions::default())
}

pub fn construct_ip_cocycle_with(
    base: Arc<FiniteLoop>,
    aut: Arc<AutomorphismGroup>,
    chooser: &mut dyn Chooser,
    options: ConstructOptions,
) -> Result<LoopCocycle> {
    let orbits =
        OrbitDecomposition::with_representative(&base, OrbitMode::Gamma, options.representative)?;
    let complement = orbits.sigma.complement().len();
    if complement % 6 != 0 || orbits.covered() != complement {
        return Err(Error::Internal(format!(
            "complement of Σ has {complement} pairs, not a union of 6-element orbits"
        )));
    }
    let mut t = Tables::new(base.size(), aut.identity());
    for orbit in &orbits.orbits {
        let value = (chooser.choose(aut.len()), chooser.choose(aut.len()));
        for m in &orbit.members {
            let (p, q) = m.tau.act_on_pair(&aut, value);
            t.set_p(m.pair.0, m.pair.1, p);
            t.set_q(m.pair.0, m.pair.1, q);
        }
    }
    t.into_cocycle(base, aut)
}

struct Tables {
    l: usize,
    p: Vec<usize>,
    q: Vec<usize>,
}

impl Tables {
    fn new(l: usize, id: usize) -> Self {
        Tables {
            l,
            p: vec![id; l * l],
            q: vec![id; l * l],
        }
    }

    fn p(&self, x: usize, y: usize) -> usize {
        self.p[x * self.l + y]
    }

    fn q(&self, x: usize, y: usize) -> usize {
        self.q[x * self.l + y]
    }

    fn set_p(&mut self, x: usize, y: usize, v: usize) {
        self.p[x * self.l + y] = v;
    }

    fn set_q(&mut self, x: usize, y: usize, v: usize) {
        self.q[x * self.l + y] = v;
    }

    fn into_cocycle(
        self,
        base: Arc<FiniteLoop>,
        aut: Arc<AutomorphismGroup>,
    ) -> Result<LoopCocycle> {
        LoopCocycle::new(base, aut, self.p, self.q)
    }
}
