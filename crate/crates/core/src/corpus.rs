//! Bundled small loops.
//!
//! Groups are generated in code. The non-associative and one-sided entries
//! are stored as loop files produced by [`crate::search`] (see
//! `examples/corpus_search.rs`) and checked against a fresh search in the
//! test suite.

use crate::error::{Error, Result};
use crate::io::parse_loop;
use crate::loops::FiniteLoop;
use crate::search::LoopQuery;

/// Query that produced `corpus/ip7.loop`. Every non-associative IP loop of
/// order 7 has an element with `x * x = x⁻¹`, so `no_order3` is off here.
pub const IP7_QUERY: LoopQuery = LoopQuery {
    order: 7,
    lip: true,
    rip: true,
    not_rip: false,
    non_associative: true,
    no_order3: false,
};

/// Query that produced `corpus/ip8.loop`.
pub const IP8_QUERY: LoopQuery = LoopQuery {
    order: 8,
    no_order3: true,
    ..IP7_QUERY
};

/// Query (searched over increasing orders) that produced `corpus/lip.loop`.
pub const LIP_ONLY_QUERY: LoopQuery = LoopQuery {
    order: 0,
    lip: true,
    rip: false,
    not_rip: true,
    non_associative: false,
    no_order3: false,
};

const IP7: &str = include_str!("../corpus/ip7.loop");
const IP8: &str = include_str!("../corpus/ip8.loop");
const LIP: &str = include_str!("../corpus/lip.loop");

/// Names accepted by [`get`], in listing order.
pub const NAMES: &[&str] = &[
    "trivial", "z2", "z3", "z4", "klein", "z5", "z7", "z8", "z2xz4", "z2xz2xz2", "ip7", "ip8",
    "lip6",
];

pub fn get(name: &str) -> Result<FiniteLoop> {
    let z = FiniteLoop::cyclic;
    Ok(match name {
        "trivial" => z(1),
        "z2" => z(2),
        "z3" => z(3),
        "z4" => z(4),
        "klein" => z(2).direct_product(&z(2)),
        "z5" => z(5),
        "z7" => z(7),
        "z8" => z(8),
        "z2xz4" => z(2).direct_product(&z(4)),
        "z2xz2xz2" => z(2).direct_product(&z(2)).direct_product(&z(2)),
        "ip7" => parse_loop(IP7)?,
        "ip8" => parse_loop(IP8)?,
        "lip6" => parse_loop(LIP)?,
        other => {
            return Err(Error::Input(format!(
                "unknown corpus loop {other:?} (known: {})",
                NAMES.join(", ")
            )))
        }
    })
}

pub fn all() -> Vec<(&'static str, FiniteLoop)> {
    NAMES
        .iter()
        .map(|&n| (n, get(n).expect("bundled corpus parses")))
        .collect()
}
