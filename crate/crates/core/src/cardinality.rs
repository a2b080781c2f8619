//! Which loop orders admit strongly linear abelian extensions with the
//! inverse property.
//!
//! Such an extension over an IP loop `L` of order `l` without elements of
//! order 3 exists iff the `l² − 3l + 2` pairs outside Σ split into Γ-orbits of
//! size 6, i.e. `l² − 3l + 2 = 6k` and then `h = √(1 + 24k) = 2l − 3`.

use crate::constructions::{OrbitDecomposition, OrbitMode, SigmaSet};
use crate::error::{Error, Result};
use crate::loops::FiniteLoop;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CardinalityCertificate {
    pub l: u64,
    pub feasible: bool,
    /// Set when feasible.
    pub k: Option<u64>,
    /// Set when feasible.
    pub h: Option<u64>,
}

impl CardinalityCertificate {
    /// `(k, h, l)` for a feasible certificate.
    pub fn triple(&self) -> Option<(u64, u64, u64)> {
        Some((self.k?, self.h?, self.l))
    }
}

/// `l = 1` is rejected as infeasible: the only square root of `1 + 24·0` that
/// fits `l = (3 + h) / 2` with `h ≥ 1` gives `l = 2`.
pub fn feasible_cardinality(l: u64) -> Result<CardinalityCertificate> {
    if l < 1 {
        return Err(Error::Input("loop order must be at least 1".into()));
    }
    let infeasible = CardinalityCertificate {
        l,
        feasible: false,
        k: None,
        h: None,
    };
    let complement = l
        .checked_mul(l)
        .and_then(|sq| sq.checked_add(2))
        .and_then(|v| v.checked_sub(3 * l))
        .ok_or_else(|| Error::Input(format!("loop order {l} too large")))?;
    if complement % 6 != 0 || l < 2 {
        return Ok(infeasible);
    }
    let k = complement / 6;
    let h = 2 * l - 3;
    if h * h != 1 + 24 * k || 2 * l != 3 + h {
        return Err(Error::Internal(format!(
            "h = {h} does not satisfy h² = 1 + 24k for k = {k}"
        )));
    }
    Ok(CardinalityCertificate {
        l,
        feasible: true,
        k: Some(k),
        h: Some(h),
    })
}

/// Feasible certificates for `2 ≤ l ≤ max_l`, ascending.
pub fn enumerate_feasible(max_l: u64) -> Result<Vec<CardinalityCertificate>> {
    if max_l < 2 {
        return Err(Error::Input("max_l must be at least 2".into()));
    }
    let mut out = Vec::new();
    for l in 2..=max_l {
        let c = feasible_cardinality(l)?;
        if c.feasible {
            out.push(c);
        }
    }
    Ok(out)
}

/// Whether `|(L x L) \ Σ| = l² − 3l + 2` and the Γ-orbit count is a sixth of it.
pub fn cross_check_orbit_count(base: &FiniteLoop) -> Result<bool> {
    let decomposition = OrbitDecomposition::new(base, OrbitMode::Gamma)?;
    let l = base.size() as u64;
    let complement = SigmaSet::new(base)?.complement().len() as u64;
    let expected = l * l + 2 - 3 * l;
    Ok(complement == expected
        && decomposition.orbits.len() as u64 * 6 == expected
        && decomposition.covered() as u64 == expected)
}
