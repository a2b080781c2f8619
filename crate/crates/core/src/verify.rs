//! Definition-level verification of extensions, cross-checked against the
//! closed-form conditions on the cocycle.

use std::fmt::Write as _;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::extension::{ExtensionLoop, LoopCocycle};
use crate::loops::FiniteLoop;

/// Property a caller may require of a loop or extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Lip,
    Rip,
    Ip,
    /// Left and right inverses coincide.
    Cip,
    Commutative,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Lip => "lip",
            Property::Rip => "rip",
            Property::Ip => "ip",
            Property::Cip => "cip",
            Property::Commutative => "commutative",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "lip" => Property::Lip,
            "rip" => Property::Rip,
            "ip" => Property::Ip,
            "cip" => Property::Cip,
            "commutative" => Property::Commutative,
            other => return Err(Error::Input(format!("unknown property {other:?}"))),
        })
    }

    /// First witness that the property fails in `lp`, rendered as text.
    pub fn counterexample(self, lp: &FiniteLoop) -> Option<String> {
        match self {
            Property::Lip => lp.lip_violation().map(|(x, y)| format!("x={x} y={y}")),
            Property::Rip => lp.rip_violation().map(|(x, y)| format!("x={x} y={y}")),
            Property::Ip => self::Property::Lip
                .counterexample(lp)
                .map(|c| format!("lip {c}"))
                .or_else(|| Property::Rip.counterexample(lp).map(|c| format!("rip {c}"))),
            Property::Cip => lp.inverse_mismatch().map(|x| format!("x={x}")),
            Property::Commutative => lp
                .commutativity_violation()
                .map(|(x, y)| format!("x={x} y={y}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub key: String,
    pub passed: bool,
    /// Informational outcomes never fail the report.
    pub gating: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub kind: String,
    pub fingerprints: Vec<(String, String)>,
    pub outcomes: Vec<Outcome>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn new(kind: &str) -> Self {
        VerificationReport {
            kind: kind.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed || !o.gating)
    }

    pub fn outcome(&self, key: &str) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.key == key)
    }

    fn info(&mut self, key: &str, holds: bool, counterexample: Option<String>) {
        self.outcomes.push(Outcome {
            key: key.to_string(),
            passed: holds,
            gating: false,
            counterexample,
        });
    }

    fn gate(&mut self, key: &str, passed: bool, counterexample: Option<String>) {
        self.outcomes.push(Outcome {
            key: key.to_string(),
            passed,
            gating: true,
            counterexample,
        });
    }

    /// Key-value text. The timing line comes last so reports can be compared
    /// after dropping it.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "report = {}", self.kind);
        for (name, hash) in &self.fingerprints {
            let _ = writeln!(out, "input.{name}.sha256 = {hash}");
        }
        for o in &self.outcomes {
            let (prefix, value) = match (o.gating, o.passed) {
                (true, true) => ("check", "pass"),
                (true, false) => ("check", "fail"),
                (false, true) => ("property", "yes"),
                (false, false) => ("property", "no"),
            };
            let _ = writeln!(out, "{prefix}.{} = {value}", o.key);
            if let Some(c) = &o.counterexample {
                let _ = writeln!(out, "counterexample.{} = {c}", o.key);
            }
        }
        let _ = writeln!(
            out,
            "status = {}",
            if self.passed() { "pass" } else { "fail" }
        );
        let _ = writeln!(out, "elapsed_ms = {}", self.elapsed_ms);
        out
    }
}

/// Properties of a plain loop; `required` ones gate the report.
pub fn verify_loop(lp: &FiniteLoop, required: &[Property]) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("loop");
    for p in [
        Property::Lip,
        Property::Rip,
        Property::Ip,
        Property::Cip,
        Property::Commutative,
    ] {
        let cex = p.counterexample(lp);
        if required.contains(&p) {
            report.gate(&format!("required.{}", p.name()), cex.is_none(), cex);
        } else {
            report.info(p.name(), cex.is_none(), cex);
        }
    }
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

/// Builds `F(P, Q)`, evaluates every property by brute force, and checks that
/// each applicable closed-form condition agrees with it. Also checks the
/// closed-form inverses and that `{ε} x A` is normal with quotient `L`.
pub fn verify_cocycle(c: &LoopCocycle, required: &[Property]) -> VerificationReport {
    let start = Instant::now();
    let ext = c.build_extension();
    let f = ext.as_loop();
    let base = c.base();
    let mut report = VerificationReport::new("extension");

    let brute = |p: Property| p.counterexample(f);
    for p in [
        Property::Lip,
        Property::Rip,
        Property::Ip,
        Property::Cip,
        Property::Commutative,
    ] {
        let cex = brute(p);
        if required.contains(&p) {
            report.gate(
                &format!("required.{}", p.name()),
                cex.is_none(),
                cex.map(|s| describe(&ext, &s)),
            );
        } else {
            report.info(p.name(), cex.is_none(), cex.map(|s| describe(&ext, &s)));
        }
    }
    report.info("strongly_linear", c.is_strongly_linear(), None);

    let agree = |report: &mut VerificationReport, key: &str, closed: Result<bool>, actual: bool| {
        match closed {
            Ok(v) => report.gate(
                key,
                v == actual,
                (v != actual).then(|| format!("condition={v} brute_force={actual}")),
            ),
            Err(Error::Precondition(_)) | Err(Error::Undefined(_)) => {}
            Err(e) => report.gate(key, false, Some(e.to_string())),
        }
    };
    let lip = brute(Property::Lip).is_none();
    let rip = brute(Property::Rip).is_none();
    agree(
        &mut report,
        "agree.lip_conditions",
        c.check_lip_conditions(),
        lip,
    );
    agree(
        &mut report,
        "agree.rip_conditions",
        c.check_rip_conditions(),
        rip,
    );
    agree(
        &mut report,
        "agree.ip_conditions",
        c.check_ip_conditions(),
        lip && rip,
    );
    agree(
        &mut report,
        "agree.equivariance",
        c.check_equivariance(),
        lip && rip,
    );
    if base.inverses_coincide() {
        agree(
            &mut report,
            "agree.cip",
            c.check_cip(),
            brute(Property::Cip).is_none(),
        );
    }
    agree(
        &mut report,
        "agree.commutative",
        Ok(c.is_commutative_extension()),
        brute(Property::Commutative).is_none(),
    );

    let formula_cex = inverse_formula_mismatch(&ext);
    report.gate("inverse_formulas", formula_cex.is_none(), formula_cex);

    let kernel = ext.kernel();
    match f.is_normal_subloop(&kernel) {
        Ok(true) => {
            report.gate("kernel.normal", true, None);
            let same = f.quotient(&kernel).map(|q| &q == base).unwrap_or(false);
            report.gate(
                "kernel.quotient",
                same,
                (!same).then(|| "quotient by {ε} x A differs from L".to_string()),
            );
        }
        Ok(false) => report.gate(
            "kernel.normal",
            false,
            Some("cosets do not form a congruence".into()),
        ),
        Err(e) => report.gate("kernel.normal", false, Some(e.to_string())),
    }
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

/// First element whose closed-form left or right inverse differs from the
/// divisions computed in the table.
pub fn inverse_formula_mismatch(ext: &ExtensionLoop) -> Option<String> {
    let f = ext.as_loop();
    let c = ext.cocycle();
    (0..f.size()).find_map(|z| {
        let pair = ext.decode(z);
        let left = c.extension_left_inverse(pair).ok()?;
        let right = c.extension_right_inverse(pair).ok()?;
        let brute_left = ext.decode(f.left_inverse(z));
        let brute_right = ext.decode(f.right_inverse(z));
        (left != brute_left || right != brute_right).then(|| {
            format!("z={z} formula=({left:?},{right:?}) table=({brute_left:?},{brute_right:?})")
        })
    })
}

/// Appends the pair form of `x=.. y=..` indices in an extension.
fn describe(ext: &ExtensionLoop, cex: &str) -> String {
    let pairs: Vec<String> = cex
        .split_whitespace()
        .filter_map(|tok| tok.split_once('='))
        .filter_map(|(_, v)| v.parse::<usize>().ok())
        .map(|i| {
            let (xi, a) = ext.decode(i);
            format!("({xi},{a})")
        })
        .collect();
    if pairs.is_empty() {
        cex.to_string()
    } else {
        format!("{cex} pairs {}", pairs.join(" "))
    }
}
