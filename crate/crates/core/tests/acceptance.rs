//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{aut, extension_table, kernel_quotient_is_base, Table};
use linext::constructions::{
    construct_ip_cocycle_with, ConstructOptions, FixedPointMode, Representative,
};
use linext::io::{emit_cocycle, emit_extension, fingerprint};
use linext::search::{search_loops, LoopQuery};
use linext::{
    construct_ip_cocycle, construct_lip_cocycle, construct_rip_cocycle, corpus, enumerate_feasible,
    AutomorphismGroup, ChoiceSource, Chooser, Error, FiniteLoop, LoopCocycle, OrbitDecomposition,
    OrbitMode, ScriptedChoices,
};

const GROUPS: [&[usize]; 4] = [&[2], &[3], &[4], &[2, 2]];

struct Outcome {
    pass: bool,
    /// The literal requirement cannot be met; `pass` then means the
    /// impossibility itself was confirmed.
    unattainable: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        unattainable: false,
        detail: detail.into(),
    }
}

fn ms(d: Duration) -> String {
    format!("{:.1} ms", d.as_secs_f64() * 1000.0)
}

/// Extensions collected for the inverse-formula and kernel criteria.
#[derive(Default)]
struct Built {
    cocycles: Vec<LoopCocycle>,
}

fn main() {
    let mut built = Built::default();
    let mut results: Vec<(&str, &str, Outcome)> = Vec::new();

    results.push(("1", "cardinality table", cardinality_table()));
    let (c2, order7) = construction_soundness(&mut built);
    results.push(("2", "IP construction soundness", c2));
    results.push(("2", "order-7 instance", order7));
    results.push(("3", "IP construction completeness", completeness()));
    results.push(("4", "checker equivalence", checker_equivalence(&mut built)));
    results.push(("5", "inverse formulas", inverse_formulas(&built)));
    results.push(("6", "orbit structure", orbit_structure()));
    results.push(("7", "kernel normality", kernel_normality(&built)));
    results.push(("8", "duality", duality()));
    results.push(("9", "determinism", determinism()));

    let mut failed = 0;
    for (id, name, o) in &results {
        let status = match (o.pass, o.unattainable) {
            (true, false) => "PASS",
            (true, true) => "UNATTAINABLE",
            (false, _) => "FAIL",
        };
        println!("criterion {id} [{name}]: {status} ({})", o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance line(s) failed");
        std::process::exit(1);
    }
}

fn cardinality_table() -> Outcome {
    let start = Instant::now();
    let got: Vec<(u64, u64, u64)> = enumerate_feasible(16)
        .unwrap()
        .iter()
        .filter_map(|c| c.triple())
        .collect();
    let elapsed = start.elapsed();
    let expected = vec![
        (0, 1, 2),
        (1, 5, 4),
        (2, 7, 5),
        (5, 11, 7),
        (7, 13, 8),
        (12, 17, 10),
        (15, 19, 11),
        (22, 23, 13),
        (26, 25, 14),
        (35, 29, 16),
    ];
    let ok = got == expected && elapsed < Duration::from_secs(1);
    outcome(ok, format!("{} triples, {}", got.len(), ms(elapsed)))
}

fn construction_soundness(built: &mut Built) -> (Outcome, Outcome) {
    let start = Instant::now();
    let loops = ["z2", "klein", "z4", "z5", "ip8", "z7"];
    let mut total = 0;
    let mut passed = 0;
    let mut mismatch = None;
    for name in loops {
        let base = Arc::new(corpus::get(name).unwrap());
        for orders in GROUPS {
            let aut = aut(orders);
            for seed in 0..100 {
                let mut rng = ChoiceSource::new(seed);
                let c = construct_ip_cocycle(base.clone(), aut.clone(), &mut rng).unwrap();
                let oracle = extension_table(&c);
                let lib = Table::of(c.build_extension().as_loop());
                total += 1;
                if oracle == lib && oracle.is_latin() && oracle.ip() {
                    passed += 1;
                } else if mismatch.is_none() {
                    mismatch = Some(format!("{name} x {orders:?} seed {seed}"));
                }
                built.cocycles.push(c);
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = passed == total && elapsed < Duration::from_secs(120);
    let mut detail = format!(
        "{passed}/{total} extensions have IP over Z2, Klein, Z4, Z5, Z7 and a non-associative IP loop of order 8 in place of the non-associative order-7 instance, {:.2} s",
        elapsed.as_secs_f64()
    );
    if let Some(m) = mismatch {
        detail.push_str(&format!("; first failure {m}"));
    }
    (outcome(ok, detail), order7_instance())
}

/// No non-associative IP loop of order 7 is free of elements with
/// `x * x = x⁻¹`, so the order-7 instance cannot be run. This line passes
/// only if that impossibility is confirmed by exhaustive search and the
/// construction rejects the bundled order-7 loop with a precondition error.
fn order7_instance() -> Outcome {
    let query = LoopQuery {
        order: 7,
        lip: true,
        rip: true,
        non_associative: true,
        ..Default::default()
    };
    let mut found = 0usize;
    let mut without_order3 = 0usize;
    search_loops(query, |lp| {
        found += 1;
        if matches!(lp.order3_element(), Ok(None)) {
            without_order3 += 1;
        }
        true
    });
    let ip7 = Arc::new(corpus::get("ip7").unwrap());
    let rejected = matches!(
        construct_ip_cocycle(ip7, aut(&[2]), &mut ChoiceSource::new(0)),
        Err(Error::Precondition(_))
    );
    let ok = found > 0 && without_order3 == 0 && rejected;
    let mut o = outcome(
        ok,
        format!(
            "{found} non-associative IP tables of order 7 searched, {without_order3} lack an element of order 3; construction on the bundled order-7 loop rejected with a precondition error: {rejected}"
        ),
    );
    o.unattainable = true;
    o
}

fn completeness() -> Outcome {
    let start = Instant::now();
    let base = Arc::new(corpus::get("klein").unwrap());
    let aut = aut(&[3]);
    let id = aut.identity();
    let sigma = common::sigma(&Table::of(&base));
    let cells: Vec<(usize, usize)> = (0..16)
        .map(|i| (i / 4, i % 4))
        .filter(|p| !sigma.contains(p))
        .collect();
    assert_eq!(cells.len(), 6);

    let mut brute = BTreeSet::new();
    for mask in 0u32..1 << 12 {
        let mut p = vec![id; 16];
        let mut q = vec![id; 16];
        for (k, &(x, y)) in cells.iter().enumerate() {
            p[x * 4 + y] = ((mask >> (2 * k)) & 1) as usize;
            q[x * 4 + y] = ((mask >> (2 * k + 1)) & 1) as usize;
        }
        let c = LoopCocycle::new(base.clone(), aut.clone(), p, q).unwrap();
        if extension_table(&c).ip() {
            brute.insert((c.p_table().to_vec(), c.q_table().to_vec()));
        }
    }

    let mut constructed = BTreeSet::new();
    for rep in [Representative::Smallest, Representative::Largest] {
        for a in 0..aut.len() {
            for b in 0..aut.len() {
                let mut script = ScriptedChoices::new(vec![a, b]);
                let options = ConstructOptions {
                    representative: rep,
                    fixed_point: FixedPointMode::Default,
                };
                let c = construct_ip_cocycle_with(base.clone(), aut.clone(), &mut script, options)
                    .unwrap();
                constructed.insert((c.p_table().to_vec(), c.q_table().to_vec()));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = brute == constructed && constructed.len() == 4 && elapsed < Duration::from_secs(60);
    outcome(
        ok,
        format!(
            "4096 assignments give {} IP cocycles, construction gives {}, sets equal: {}, {}",
            brute.len(),
            constructed.len(),
            brute == constructed,
            ms(elapsed)
        ),
    )
}

#[derive(Default, Clone, Copy)]
struct Tally {
    checked: usize,
    agreed: usize,
    positive: usize,
}

impl Tally {
    fn record(&mut self, lib: bool, brute: bool) {
        self.checked += 1;
        if lib == brute {
            self.agreed += 1;
        }
        if brute {
            self.positive += 1;
        }
    }

    fn ok(&self) -> bool {
        self.checked > 0
            && self.agreed == self.checked
            && self.positive > 0
            && self.positive < self.checked
    }
}

/// A closed-form check whose precondition on `L` fails is read as "false":
/// the extension can only have a property its quotient `L` has.
fn or_false(r: linext::Result<bool>) -> bool {
    match r {
        Ok(v) => v,
        Err(Error::Precondition(_)) => false,
        Err(e) => panic!("unexpected error {e}"),
    }
}

fn checker_equivalence(built: &mut Built) -> Outcome {
    const PER_SETTING: u64 = 1200;
    let loops: Vec<(&str, FiniteLoop)> = vec![
        ("z2", corpus::get("z2").unwrap()),
        ("z3", corpus::get("z3").unwrap()),
        ("z4", corpus::get("z4").unwrap()),
        ("klein", corpus::get("klein").unwrap()),
        ("z5", corpus::get("z5").unwrap()),
        ("non-ip5", common::non_ip5()),
    ];
    let names = ["lip", "rip", "ip", "cip", "commutative", "equivariance"];
    let mut tallies = [Tally::default(); 6];
    let mut settings = 0;
    let mut first_disagreement = None;
    for (name, lp) in &loops {
        let base = Arc::new(lp.clone());
        let ip_no_order3 = lp.has_ip() && matches!(lp.order3_element(), Ok(None));
        for orders in GROUPS {
            settings += 1;
            let aut = aut(orders);
            let mut rng = ChoiceSource::new(0x5eed ^ (settings as u64) << 32);
            for i in 0..PER_SETTING {
                let c = sample(i, &base, &aut, ip_no_order3, &mut rng);
                let f = extension_table(&c);
                let before: Vec<usize> = tallies.iter().map(|t| t.agreed).collect();
                tallies[0].record(or_false(c.check_lip_conditions()), f.lip());
                tallies[1].record(or_false(c.check_rip_conditions()), f.rip());
                if c.is_strongly_linear() {
                    tallies[2].record(or_false(c.check_ip_conditions()), f.ip());
                }
                tallies[3].record(or_false(c.check_cip()), f.inverses_coincide());
                tallies[4].record(c.is_commutative_extension(), f.commutative());
                if c.is_strongly_linear() && ip_no_order3 {
                    let eq = c.check_equivariance().unwrap();
                    tallies[5].record(eq, c.check_ip_conditions().unwrap());
                }
                let after: Vec<usize> = tallies.iter().map(|t| t.agreed).collect();
                let counted: usize = tallies.iter().map(|t| t.checked).sum();
                let agreed: usize = after.iter().sum();
                if agreed != counted && first_disagreement.is_none() {
                    let which = (0..6).find(|&k| before[k] == after[k]).unwrap_or(0);
                    first_disagreement = Some(format!(
                        "{} on {name} x {orders:?} sample {i}",
                        names[which]
                    ));
                }
                built.cocycles.push(c);
            }
        }
    }
    let ok = tallies.iter().all(Tally::ok) && first_disagreement.is_none();
    let parts: Vec<String> = names
        .iter()
        .zip(&tallies)
        .map(|(n, t)| format!("{n} {}/{} (+{})", t.agreed, t.checked, t.positive))
        .collect();
    let mut detail = format!(
        "{settings} settings x {PER_SETTING} cocycles; {}",
        parts.join(", ")
    );
    if let Some(d) = first_disagreement {
        detail.push_str(&format!("; first disagreement {d}"));
    }
    outcome(ok, detail)
}

/// Mix of raw random, symmetric, constructed and mutated cocycles so that
/// every property occurs both holding and failing.
fn sample(
    i: u64,
    base: &Arc<FiniteLoop>,
    aut: &Arc<AutomorphismGroup>,
    ip_no_order3: bool,
    rng: &mut ChoiceSource,
) -> LoopCocycle {
    let c = match i % 6 {
        0 => return common::random_cocycle(base, aut, rng),
        1 => common::random_symmetric(base, aut, rng),
        2 if base.has_lip() => construct_lip_cocycle(base.clone(), aut.clone(), rng).unwrap(),
        3 if base.has_rip() => construct_rip_cocycle(base.clone(), aut.clone(), rng).unwrap(),
        4 if ip_no_order3 => construct_ip_cocycle(base.clone(), aut.clone(), rng).unwrap(),
        5 => return common::random_strongly_linear(base, aut, rng),
        _ => common::random_strongly_linear(base, aut, rng),
    };
    if rng.choose(2) == 0 {
        common::mutate(&c, rng)
    } else {
        c
    }
}

fn inverse_formulas(built: &Built) -> Outcome {
    let mut elements = 0usize;
    let mut bad = 0usize;
    for c in &built.cocycles {
        let f = extension_table(c);
        let m = c.group().size();
        for z in 0..f.n {
            let pair = (z / m, z % m);
            let left = c.extension_left_inverse(pair).unwrap();
            let right = c.extension_right_inverse(pair).unwrap();
            let li = f.left_inv(z);
            let ri = f.right_inv(z);
            elements += 1;
            if left != (li / m, li % m) || right != (ri / m, ri % m) {
                bad += 1;
            }
        }
    }
    outcome(
        bad == 0 && elements > 0,
        format!(
            "{} extensions, {} elements, {bad} mismatches",
            built.cocycles.len(),
            elements - bad
        ),
    )
}

fn orbit_structure() -> Outcome {
    let klein = corpus::get("klein").unwrap();
    let z4 = corpus::get("z4").unwrap();
    let z5 = corpus::get("z5").unwrap();

    let oracle_gamma = |lp: &FiniteLoop| {
        let t = Table::of(lp);
        let inv = |x: usize| t.left_inv(x);
        let sigma = common::sigma(&t);
        let rest: Vec<_> = (0..t.n * t.n)
            .map(|i| (i / t.n, i % t.n))
            .filter(|p| !sigma.contains(p))
            .collect();
        let phi = |(x, y): (usize, usize)| (inv(x), t.mul(x, y));
        let psi = |(x, y): (usize, usize)| (t.mul(x, y), inv(y));
        (sigma.len(), common::orbits(&rest, &[&phi, &psi]))
    };
    let lib_orbits = |lp: &FiniteLoop, mode| -> Vec<Vec<(usize, usize)>> {
        let d = OrbitDecomposition::new(lp, mode).unwrap();
        let mut v: Vec<Vec<_>> = d
            .orbits
            .iter()
            .map(|o| {
                let mut m: Vec<_> = o.members.iter().map(|m| m.pair).collect();
                m.sort();
                m
            })
            .collect();
        v.sort();
        v
    };

    let (klein_sigma, klein_orbits) = oracle_gamma(&klein);
    let klein_ok = klein_sigma == 10
        && klein_orbits.len() == 1
        && klein_orbits[0].len() == 6
        && lib_orbits(&klein, OrbitMode::Gamma) == klein_orbits
        && OrbitDecomposition::new(&klein, OrbitMode::Gamma)
            .unwrap()
            .sigma
            .len()
            == 10;

    let z4_expected = vec![
        vec![(1, 1), (3, 2)],
        vec![(1, 2), (3, 3)],
        vec![(2, 1), (2, 3)],
    ];
    let z4_ok = lib_orbits(&z4, OrbitMode::Phi) == z4_expected;

    let (_, z5_orbits) = oracle_gamma(&z5);
    let z5_ok = z5_orbits.len() == 2
        && z5_orbits.iter().all(|o| o.len() == 6)
        && lib_orbits(&z5, OrbitMode::Gamma) == z5_orbits;

    outcome(
        klein_ok && z4_ok && z5_ok,
        format!(
            "Klein |Σ|=10 with one orbit of 6: {klein_ok}; Z4 phi-orbits as listed: {z4_ok}; Z5 two orbits of 6: {z5_ok}"
        ),
    )
}

fn kernel_normality(built: &Built) -> Outcome {
    let mut good = 0;
    for c in &built.cocycles {
        let ext = c.build_extension();
        let f = ext.as_loop();
        let kernel = ext.kernel();
        let lib = f.is_normal_subloop(&kernel).unwrap()
            && f.quotient(&kernel).map(|q| &q == c.base()).unwrap_or(false);
        let oracle = kernel_quotient_is_base(&Table::of(f), &Table::of(c.base()), c.group().size());
        if lib && oracle {
            good += 1;
        }
    }
    outcome(
        good == built.cocycles.len() && good > 0,
        format!("{good}/{} extensions", built.cocycles.len()),
    )
}

fn duality() -> Outcome {
    let loops = ["z4", "klein", "lip6", "ip8", "z5"];
    let mut good = 0;
    for seed in 0..100u64 {
        let base = Arc::new(corpus::get(loops[seed as usize % loops.len()]).unwrap());
        let aut = aut(GROUPS[(seed as usize / loops.len()) % GROUPS.len()]);
        let c = construct_lip_cocycle(base, aut, &mut ChoiceSource::new(seed)).unwrap();
        let opp = c.opposite();
        let f = extension_table(&c);
        let g = extension_table(&opp);
        let transposed = (0..f.n).all(|x| (0..f.n).all(|y| f.mul(x, y) == g.mul(y, x)));
        if opp.check_rip_conditions().unwrap_or(false) && g.rip() && transposed {
            good += 1;
        }
    }
    outcome(
        good == 100,
        format!("{good}/100 opposite cocycles have RIP"),
    )
}

/// Frozen hashes of `emit_cocycle` and `emit_extension` output. A run on any
/// machine must reproduce them byte for byte.
/// (loop, group, mode, seed, cocycle hash, extension hash)
type Golden = (
    &'static str,
    &'static [usize],
    &'static str,
    u64,
    &'static str,
    &'static str,
);

const GOLDEN: &[Golden] = &[
    (
        "ip8",
        &[2, 2],
        "ip",
        7,
        "b65fbbe5e9358e70c743efa301c8a8460e09d13f6ac8a7917c610468ac38786f",
        "450f13b3fec715546960da6e9db315ecf24ed663676aaf8a7547a2ad2356538a",
    ),
    (
        "z5",
        &[4],
        "ip",
        1,
        "577644c0918fc89ca8834e5f8c8fc22e2ab767cf339c4f9165ef3afb5c17a678",
        "e956578d223a9a8da50369ccdba9cdb9a9c7a4370bf586d83c7b566391fccd5e",
    ),
    (
        "klein",
        &[3],
        "ip",
        0,
        "c600bab59ecc54de79d8f8eb90c3b5f0de8f18d22ff0da9f1c7f71de2fc9b236",
        "b3b6e94e82d571fe07b5f2685aa1a5bc53400c087e4b58c9b216543b72bbaa2b",
    ),
    (
        "lip6",
        &[2, 2],
        "lip",
        3,
        "12154ffe138192aaa1a89267b1c47fdfa58c1274d8cadebd2336a4e354f34f1d",
        "d3e1d31a5bab1beb734d4e564c1ea594d1aec6b1e61cea3e1b97a358a6567cde",
    ),
    (
        "ip7",
        &[2],
        "lip",
        11,
        "9d9d8a292ff8c5cb46b0872d2db11d28b02c9b6a30407c0b1a8085b805986096",
        "dd006ff1b13ada2a149db12dc82e660e04d4f7aa4d3ffada9cb0b0c5c3cda2ae",
    ),
    (
        "z4",
        &[3],
        "rip",
        3,
        "68bc338199f21829853c2d90c420e44951eb6d7ab41d56a61a2e125ee105cb99",
        "2ffa106ad47f042d8b222395c33973fc69ca39d638817812e901f839d72c7b6b",
    ),
    (
        "ip8",
        &[4],
        "rip",
        5,
        "f46e4cbef553d9acbfb65a56df9e91d36ddd3971f0fd6cad663bc0928a6be162",
        "7083d3dca04a0a055d15d5ec67ba343fb8d6684a00a42a90b6dadeb967721e0e",
    ),
];

fn construct_named(name: &str, orders: &[usize], mode: &str, seed: u64) -> LoopCocycle {
    let base = Arc::new(corpus::get(name).unwrap());
    let aut = aut(orders);
    let mut rng = ChoiceSource::new(seed);
    match mode {
        "lip" => construct_lip_cocycle(base, aut, &mut rng),
        "rip" => construct_rip_cocycle(base, aut, &mut rng),
        _ => construct_ip_cocycle(base, aut, &mut rng),
    }
    .unwrap()
}

fn determinism() -> Outcome {
    let mut problems = Vec::new();
    for &(name, orders, mode, seed, cocycle_hash, ext_hash) in GOLDEN {
        let a = construct_named(name, orders, mode, seed);
        let b = construct_named(name, orders, mode, seed);
        let (ca, cb) = (emit_cocycle(&a), emit_cocycle(&b));
        let (ea, eb) = (
            emit_extension(&a.build_extension()),
            emit_extension(&b.build_extension()),
        );
        if ca != cb || ea != eb {
            problems.push(format!("{name}/{mode}/{seed} differs between runs"));
        }
        let (hc, he) = (fingerprint(ca.as_bytes()), fingerprint(ea.as_bytes()));
        if hc != cocycle_hash || he != ext_hash {
            problems.push(format!("{name}/{mode}/{seed} hashes {hc} {he}"));
        }
    }

    // Two separate processes of the command-line tool.
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| -> (Vec<u8>, Vec<u8>) {
        let c = dir.path().join(format!("c{tag}.txt"));
        let f = dir.path().join(format!("f{tag}.loop"));
        let bin = env!("CARGO_BIN_EXE_linext");
        let s1 = Command::new(bin)
            .args([
                "construct",
                "--loop",
                "corpus:ip8",
                "--group",
                "2,2",
                "--mode",
                "ip",
                "--seed",
                "7",
                "--out",
            ])
            .arg(&c)
            .status()
            .unwrap();
        let s2 = Command::new(bin)
            .args(["extend", "--loop", "corpus:ip8", "--cocycle"])
            .arg(&c)
            .arg("--out")
            .arg(&f)
            .output()
            .unwrap();
        assert!(s1.success() && s2.status.success());
        (std::fs::read(&c).unwrap(), std::fs::read(&f).unwrap())
    };
    let (c1, f1) = run("1");
    let (c2, f2) = run("2");
    if c1 != c2 || f1 != f2 {
        problems.push("command-line outputs differ between processes".into());
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            format!(
                "{} golden cocycle/extension hashes reproduced, repeated processes byte-identical; a second OS was not available here",
                GOLDEN.len()
            )
        } else {
            problems.join("; ")
        },
    )
}
