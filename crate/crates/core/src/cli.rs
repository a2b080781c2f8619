//! Command-line front end. `run` never exits the process, so it can be
//! driven from tests with in-memory output buffers.
//!
//! Exit codes: 0 success, 1 a checked property fails, 2 bad input or an
//! unmet precondition.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use crate::abelian::{AbelianGroup, AutomorphismGroup, DEFAULT_SIZE_CAP};
use crate::cardinality::enumerate_feasible;
use crate::constructions::{
    construct_ip_cocycle_with, construct_lip_cocycle_with, construct_rip_cocycle_with,
    ChoiceSource, ConstructOptions, FixedPointMode, OrbitDecomposition, OrbitMode, Representative,
};
use crate::corpus;
use crate::error::{Error, Result};
use crate::extension::LoopCocycle;
use crate::io::{
    emit_cocycle, emit_extension, emit_loop, fingerprint, parse_cocycle, parse_loop, read_to_string,
};
use crate::loops::{analyze_properties_with, FiniteLoop};
use crate::verify::{verify_cocycle, verify_loop, Property, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Subcommand {
    /// Property report for a loop
    Check,
    /// List Aut(A) in canonical order
    Aut,
    /// Σ and the orbit decomposition of its complement
    Orbits,
    /// Seeded cocycle construction
    Construct,
    /// Build F(P,Q) and verify it
    Extend,
    /// Brute-force and closed-form verification of a loop or cocycle
    Verify,
    /// Loop orders admitting strongly linear IP extensions
    Feasible,
    /// List the bundled loops
    Corpus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Lip,
    Rip,
    Ip,
    Phi,
    Psi,
    Gamma,
}

impl Mode {
    fn property(self) -> Property {
        match self {
            Mode::Lip | Mode::Phi => Property::Lip,
            Mode::Rip | Mode::Psi => Property::Rip,
            Mode::Ip | Mode::Gamma => Property::Ip,
        }
    }

    fn orbit_mode(self) -> OrbitMode {
        match self {
            Mode::Lip | Mode::Phi => OrbitMode::Phi,
            Mode::Rip | Mode::Psi => OrbitMode::Psi,
            Mode::Ip | Mode::Gamma => OrbitMode::Gamma,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum FixedPoint {
    #[default]
    Default,
    Enumerate,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum RepresentativeArg {
    #[default]
    Smallest,
    Largest,
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "linext",
    version,
    about = "Linear abelian extensions of finite loops"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub subcommand: Subcommand,
    /// Loop file, or `corpus:<name>` for a bundled loop
    #[arg(long = "loop", value_name = "PATH")]
    pub loop_path: Option<String>,
    /// Abelian group as comma-separated cyclic factor orders, e.g. `2,4`
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub cocycle: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub max_l: u64,
    /// Write the primary output here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Emit a key-value report alongside the output
    #[arg(long)]
    pub report: bool,
    /// Decide LIP/RIP by searching every bijection for ι
    #[arg(long)]
    pub exhaustive_iota: bool,
    /// Largest accepted |A|
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    pub aut_cap: usize,
    #[arg(long, value_enum, default_value_t)]
    pub fixed_point: FixedPoint,
    #[arg(long, value_enum, default_value_t)]
    pub representative: RepresentativeArg,
}

/// Parses `args` (including the program name) and runs. Usage errors go to
/// `err` with exit code 2.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            code
        }
    }
}

pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match config.subcommand {
        Subcommand::Check => check(config, out),
        Subcommand::Aut => aut(config, out),
        Subcommand::Orbits => orbits(config, out),
        Subcommand::Construct => construct(config, out, err),
        Subcommand::Extend => extend(config, out, err),
        Subcommand::Verify => verify(config, out),
        Subcommand::Feasible => feasible(config, out),
        Subcommand::Corpus => list_corpus(out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

struct LoadedLoop {
    lp: Arc<FiniteLoop>,
    sha256: String,
}

fn load_loop(config: &RunConfig) -> Result<LoadedLoop> {
    let spec = config
        .loop_path
        .as_deref()
        .ok_or_else(|| Error::Input("--loop is required".into()))?;
    let (lp, text) = match spec.strip_prefix("corpus:") {
        Some(name) => {
            let lp = corpus::get(name)?;
            let text = emit_loop(&lp);
            (lp, text)
        }
        None => {
            let text = read_to_string(spec.as_ref())?;
            (parse_loop(&text)?, text)
        }
    };
    Ok(LoadedLoop {
        lp: Arc::new(lp),
        sha256: fingerprint(text.as_bytes()),
    })
}

fn load_aut(config: &RunConfig) -> Result<Arc<AutomorphismGroup>> {
    let spec = config
        .group
        .as_deref()
        .ok_or_else(|| Error::Input("--group is required".into()))?;
    let group = AbelianGroup::parse_spec(spec, config.aut_cap)?;
    Ok(Arc::new(AutomorphismGroup::enumerate(&group)?))
}

fn require_mode(config: &RunConfig) -> Result<Mode> {
    config
        .mode
        .ok_or_else(|| Error::Input("--mode is required".into()))
}

/// Writes the primary artifact to `--out` or `out`.
fn write_primary(config: &RunConfig, out: &mut dyn Write, text: &str) -> Result<()> {
    match &config.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

/// Reports go to stdout when the artifact went to a file, else to stderr.
fn report_target<'a>(
    config: &RunConfig,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
) -> &'a mut dyn Write {
    if config.out.is_some() {
        out
    } else {
        err
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let loaded = load_loop(config)?;
    let lp = &loaded.lp;
    let r = analyze_properties_with(lp, config.exhaustive_iota);
    let mut s = String::new();
    let _ = writeln!(s, "input.loop.sha256 = {}", loaded.sha256);
    let _ = writeln!(s, "order = {}", lp.size());
    let _ = writeln!(s, "lip = {}", yes_no(r.has_lip));
    let _ = writeln!(s, "rip = {}", yes_no(r.has_rip));
    let _ = writeln!(s, "ip = {}", yes_no(r.has_ip));
    let _ = writeln!(
        s,
        "inverses_coincide = {}",
        yes_no(r.two_sided_inverses_coincide)
    );
    let _ = writeln!(s, "commutative = {}", yes_no(r.is_commutative));
    let _ = writeln!(s, "associative = {}", yes_no(r.is_associative));
    let order3 = match lp.order3_element() {
        Ok(Some(x)) => x.to_string(),
        Ok(None) => "none".into(),
        Err(_) => "undefined".into(),
    };
    let _ = writeln!(s, "order3_element = {order3}");
    if let Some(inv) = &r.inverse {
        let _ = writeln!(s, "inverse = {}", join(inv));
    }
    let consistent = r.has_ip == (r.has_lip && r.has_rip);
    let _ = writeln!(
        s,
        "self_consistent = {}",
        if consistent { "pass" } else { "fail" }
    );
    let mut code = if consistent {
        EXIT_OK
    } else {
        EXIT_PROPERTY_FAILS
    };
    if let Some(mode) = config.mode {
        let p = mode.property();
        let holds = match p {
            Property::Lip => r.has_lip,
            Property::Rip => r.has_rip,
            _ => r.has_ip,
        };
        let _ = writeln!(
            s,
            "required.{} = {}",
            p.name(),
            if holds { "pass" } else { "fail" }
        );
        if !holds {
            if let Some(c) = p.counterexample(lp) {
                let _ = writeln!(s, "counterexample.{} = {c}", p.name());
            }
            code = EXIT_PROPERTY_FAILS;
        }
    }
    write_primary(config, out, &s)?;
    Ok(code)
}

fn aut(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let aut = load_aut(config)?;
    let mut s = String::new();
    let _ = writeln!(s, "group = {}", aut.group().spec());
    let _ = writeln!(s, "count = {}", aut.len());
    let _ = writeln!(s, "identity = {}", aut.identity());
    let _ = writeln!(s, "negation = {}", aut.negation());
    for (i, f) in aut.members().iter().enumerate() {
        let _ = writeln!(s, "aut {i} = {}", join(f.table()));
    }
    write_primary(config, out, &s)?;
    Ok(EXIT_OK)
}

fn orbits(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let loaded = load_loop(config)?;
    let mode = require_mode(config)?.orbit_mode();
    let rep = match config.representative {
        RepresentativeArg::Smallest => Representative::Smallest,
        RepresentativeArg::Largest => Representative::Largest,
    };
    let d = OrbitDecomposition::with_representative(&loaded.lp, mode, rep)?;
    let mut s = String::new();
    let _ = writeln!(s, "input.loop.sha256 = {}", loaded.sha256);
    let _ = writeln!(s, "mode = {}", mode.name());
    let _ = writeln!(s, "sigma.size = {}", d.sigma.len());
    let _ = writeln!(s, "sigma = {}", pairs(&d.sigma.pairs()));
    let _ = writeln!(s, "complement.size = {}", d.sigma.complement().len());
    let _ = writeln!(s, "orbits = {}", d.orbits.len());
    for (i, orbit) in d.orbits.iter().enumerate() {
        let members: Vec<String> = orbit
            .members
            .iter()
            .map(|m| format!("({},{}):{}", m.pair.0, m.pair.1, m.tau.name()))
            .collect();
        let (x, y) = orbit.representative;
        let _ = writeln!(
            s,
            "orbit {i} rep=({x},{y}) size={} members={}",
            members.len(),
            members.join(" ")
        );
    }
    write_primary(config, out, &s)?;
    Ok(EXIT_OK)
}

fn construct(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let start = Instant::now();
    let loaded = load_loop(config)?;
    let aut = load_aut(config)?;
    let mode = require_mode(config)?;
    let options = ConstructOptions {
        representative: match config.representative {
            RepresentativeArg::Smallest => Representative::Smallest,
            RepresentativeArg::Largest => Representative::Largest,
        },
        fixed_point: match config.fixed_point {
            FixedPoint::Default => FixedPointMode::Default,
            FixedPoint::Enumerate => FixedPointMode::Enumerate,
        },
    };
    let mut rng = ChoiceSource::new(config.seed);
    let base = loaded.lp.clone();
    let c = match mode.property() {
        Property::Lip => construct_lip_cocycle_with(base, aut, &mut rng, options)?,
        Property::Rip => construct_rip_cocycle_with(base, aut, &mut rng, options)?,
        _ => construct_ip_cocycle_with(base, aut, &mut rng, options)?,
    };
    let text = emit_cocycle(&c);
    write_primary(config, out, &text)?;
    if config.report {
        let mut s = String::new();
        let _ = writeln!(s, "report = construct");
        let _ = writeln!(s, "input.loop.sha256 = {}", loaded.sha256);
        let _ = writeln!(s, "group = {}", c.group().spec());
        let _ = writeln!(s, "mode = {}", mode.property().name());
        let _ = writeln!(s, "seed = {}", config.seed);
        let _ = writeln!(s, "choices = {}", rng.counter());
        let _ = writeln!(
            s,
            "output.cocycle.sha256 = {}",
            fingerprint(text.as_bytes())
        );
        let _ = writeln!(s, "elapsed_ms = {}", start.elapsed().as_millis());
        report_target(config, out, err).write_all(s.as_bytes())?;
    }
    Ok(EXIT_OK)
}

fn load_cocycle(config: &RunConfig, base: Arc<FiniteLoop>) -> Result<(LoopCocycle, String)> {
    let path = config
        .cocycle
        .as_ref()
        .ok_or_else(|| Error::Input("--cocycle is required".into()))?;
    let text = read_to_string(path)?;
    let c = parse_cocycle(&text, base, config.aut_cap)?;
    Ok((c, fingerprint(text.as_bytes())))
}

fn required(config: &RunConfig) -> Vec<Property> {
    config.mode.map(|m| vec![m.property()]).unwrap_or_default()
}

fn extend(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let loaded = load_loop(config)?;
    let (c, cocycle_hash) = load_cocycle(config, loaded.lp.clone())?;
    let ext = c.build_extension();
    let text = emit_extension(&ext);
    write_primary(config, out, &text)?;
    let mut report = verify_cocycle(&c, &required(config));
    report.fingerprints = vec![
        ("loop".into(), loaded.sha256),
        ("cocycle".into(), cocycle_hash),
    ];
    report_target(config, out, err).write_all(report.render().as_bytes())?;
    Ok(exit_for(&report))
}

fn verify(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let loaded = load_loop(config)?;
    let report = if config.cocycle.is_some() {
        let (c, cocycle_hash) = load_cocycle(config, loaded.lp.clone())?;
        let mut report = verify_cocycle(&c, &required(config));
        report.fingerprints = vec![
            ("loop".into(), loaded.sha256),
            ("cocycle".into(), cocycle_hash),
        ];
        report
    } else {
        let mut report = verify_loop(&loaded.lp, &required(config));
        report.fingerprints = vec![("loop".into(), loaded.sha256)];
        report
    };
    write_primary(config, out, &report.render())?;
    Ok(exit_for(&report))
}

fn exit_for(report: &VerificationReport) -> i32 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_PROPERTY_FAILS
    }
}

fn feasible(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let certs = enumerate_feasible(config.max_l)?;
    let triples: Vec<(u64, u64, u64)> = certs.iter().filter_map(|c| c.triple()).collect();
    let width = triples
        .iter()
        .map(|&(k, h, l)| k.max(h).max(l).to_string().len())
        .max()
        .unwrap_or(1);
    let mut s = String::new();
    for (name, pick) in [
        (
            "k",
            (|t: &(u64, u64, u64)| t.0) as fn(&(u64, u64, u64)) -> u64,
        ),
        ("h", |t| t.1),
        ("l", |t| t.2),
    ] {
        let cells: Vec<String> = triples
            .iter()
            .map(|t| format!("{:>width$}", pick(t)))
            .collect();
        let _ = writeln!(s, "{name} | {}", cells.join(" "));
    }
    for (k, h, l) in &triples {
        let _ = writeln!(s, "feasible l={l} k={k} h={h}");
    }
    write_primary(config, out, &s)?;
    Ok(EXIT_OK)
}

fn list_corpus(out: &mut dyn Write) -> Result<i32> {
    for (name, lp) in corpus::all() {
        let r = analyze_properties_with(&lp, false);
        writeln!(
            out,
            "{name} order={} ip={} lip={} rip={} associative={}",
            lp.size(),
            yes_no(r.has_ip),
            yes_no(r.has_lip),
            yes_no(r.has_rip),
            yes_no(r.is_associative)
        )?;
    }
    Ok(EXIT_OK)
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn pairs(values: &[(usize, usize)]) -> String {
    values
        .iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect::<Vec<_>>()
        .join(" ")
}
