//! Executes a script against a fresh session and renders the report.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::script::{parse_script, PrintItem, Script, SeriesSource, Statement};
use crate::constructions::{Call, TraceEntry};
use crate::error::{Error, Result};
use crate::generators::SurfaceName;
use crate::poincare::GradedDims;
use crate::profiles::{FactName, TriState, VarietyProfile};
use crate::session::{Session, DEFAULT_TRUNC};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub strict: bool,
    pub trunc: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            strict: false,
            trunc: DEFAULT_TRUNC,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    AssertionFailed,
    EngineError,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Passed => 0,
            Outcome::AssertionFailed => 1,
            Outcome::EngineError => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub outcome: Outcome,
}

/// Parses and runs `src`; a parse failure is an engine error.
pub fn run_source(src: &str, opts: RunOptions) -> Report {
    match parse_script(src) {
        Ok(script) => execute(&script, opts).0,
        Err(d) => Report {
            text: format!("parse error: {d}\nresult: error\n"),
            outcome: Outcome::EngineError,
        },
    }
}

pub fn run(script: &Script, opts: RunOptions) -> Report {
    execute(script, opts).0
}

/// Runs every statement in order, stopping at the first engine error.
pub fn execute(script: &Script, opts: RunOptions) -> (Report, Session) {
    let mut session = Session::new().with_strict(opts.strict).with_trunc(opts.trunc);
    let mut out = String::new();
    let (mut asserted, mut failed) = (0usize, 0usize);
    for (stmt, line) in script.statements.iter().zip(&script.lines) {
        let _ = writeln!(out, "> {stmt}");
        let (trace_len, notes_len) = (session.trace().entries().len(), session.notes().len());
        match step(&mut session, stmt, &mut out) {
            Ok(None) => {}
            Ok(Some(passed)) => {
                asserted += 1;
                failed += usize::from(!passed);
            }
            Err(e) => {
                let _ = writeln!(out, "  error: {e}");
                let _ = writeln!(out, "result: error at line {line}");
                let report = Report {
                    text: out,
                    outcome: Outcome::EngineError,
                };
                return (report, session);
            }
        }
        for e in &session.trace().entries()[trace_len..] {
            if let TraceEntry::Apply(a) = e {
                for s in &a.assumptions {
                    let _ = writeln!(out, "  assumes: {s}");
                }
            }
        }
        for n in &session.notes()[notes_len..] {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    let outcome = if failed == 0 {
        let _ = writeln!(out, "result: ok, {asserted} assertion{} passed", plural(asserted));
        Outcome::Passed
    } else {
        let _ = writeln!(out, "result: FAILED, {failed} of {asserted} assertion{} failed", plural(asserted));
        Outcome::AssertionFailed
    };
    (Report { text: out, outcome }, session)
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        ""
    } else {
        "s"
    }
}

/// `Some(passed)` for assertions.
fn step(s: &mut Session, stmt: &Statement, out: &mut String) -> Result<Option<bool>> {
    match stmt {
        Statement::Variety { id, call } => {
            for o in s.define(id, call)? {
                let _ = writeln!(out, "  {}", summary(s.profile(&o)?));
            }
            Ok(None)
        }
        Statement::Cert(c) => {
            let cid = s.add_certificate(c.clone())?;
            let _ = writeln!(out, "  registered {cid}");
            Ok(None)
        }
        Statement::Set {
            id,
            fact,
            value,
            citation,
        } => {
            s.set_fact(id, *fact, *value, citation)?;
            Ok(None)
        }
        Statement::AssertFact { id, fact, expected } => {
            let f = s.profile(id)?.fact(*fact);
            let passed = f.value == *expected;
            let _ = if passed {
                writeln!(out, "  ok: {fact}({id}) = {}  [{}]", f.value, f.provenance_or_default())
            } else {
                writeln!(
                    out,
                    "  FAILED: {fact}({id}) = {}, expected {expected}  [{}]",
                    f.value,
                    f.provenance_or_default()
                )
            };
            Ok(Some(passed))
        }
        Statement::AssertApplicable { call, expected } => {
            let verdict = applicable(s, call)?;
            let got = verdict.is_ok();
            let what = match &verdict {
                Ok(()) => "applicable".to_string(),
                Err(reason) => format!("not applicable: {reason}"),
            };
            let passed = got == *expected;
            let _ = writeln!(out, "  {}: {what}", if passed { "ok" } else { "FAILED" });
            Ok(Some(passed))
        }
        Statement::Print(item) => {
            print(s, item, out)?;
            Ok(None)
        }
    }
}

/// Tries `call` on a copy of the session. Failing preconditions make the
/// rule inapplicable; anything else is an engine error.
fn applicable(s: &Session, call: &Call) -> Result<std::result::Result<(), Error>> {
    let mut probe = String::from("_probe");
    while s.contains(&probe) {
        probe.push('_');
    }
    let mut copy = s.clone();
    match copy.define(&probe, call) {
        Ok(_) => Ok(Ok(())),
        Err(
            e @ (Error::RuleNotApplicable { .. }
            | Error::NotCoprime { .. }
            | Error::DimensionMismatch(_)
            | Error::UncheckedAssumption { .. }),
        ) => Ok(Err(e)),
        Err(e) => Err(e),
    }
}

fn total(t: Option<&BigUint>) -> String {
    t.map_or_else(|| "?".to_string(), |t| t.to_string())
}

fn summary(p: &VarietyProfile) -> String {
    let m = p.fact(FactName::Maximal);
    format!(
        "{}: dim {}, b*(C) = {}, b*(R) = {}, maximal = {}  [{}]",
        p.id(),
        p.dim(),
        total(p.complex_total()),
        total(p.real_total()),
        m.value,
        m.provenance_or_default()
    )
}

fn print(s: &Session, item: &PrintItem, out: &mut String) -> Result<()> {
    match item {
        PrintItem::Betti(id) => betti_table(s.profile(id)?, out),
        PrintItem::Facts(id) => {
            let p = s.profile(id)?;
            for (name, f) in p.facts().iter() {
                if f.value == TriState::Unknown {
                    let _ = writeln!(out, "  {name} = unknown");
                } else {
                    let _ = writeln!(out, "  {name} = {}  [{}]", f.value, f.provenance_or_default());
                }
            }
        }
        PrintItem::Trace(id) => {
            for l in s.trace_for(id)? {
                let _ = writeln!(out, "  {l}");
            }
        }
        PrintItem::Series { surface, upto } => {
            let b = surface_betti(s, surface)?;
            let series = s.series(b, *upto)?;
            let _ = writeln!(out, "  b = ({}, {}, {}, {}, {})", b[0], b[1], b[2], b[3], b[4]);
            for (n, c) in series.coefficients().iter().enumerate().take(upto + 1) {
                let _ = writeln!(out, "  q^{n}: total {}  {c}", c.total());
            }
        }
    }
    Ok(())
}

fn surface_betti(s: &Session, src: &SeriesSource) -> Result<[u64; 5]> {
    let name = match src {
        SeriesSource::Betti(b) => return Ok(*b),
        SeriesSource::Named(n) => n,
    };
    if !s.contains(name) {
        return Ok(SurfaceName::parse_plain(name)?.betti());
    }
    let p = s.profile(name)?;
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("{name} is not a surface")));
    }
    let b = p
        .complex_betti()
        .ok_or_else(|| Error::OutOfRange(format!("the Betti numbers of {name} are unknown")))?;
    let mut out = [0u64; 5];
    for (i, o) in out.iter_mut().enumerate() {
        *o = b
            .coeff(i as u32)
            .to_u64()
            .ok_or_else(|| Error::OutOfRange(format!("b{i}({name}) is too large")))?;
    }
    Ok(out)
}

fn betti_table(p: &VarietyProfile, out: &mut String) {
    let _ = writeln!(out, "  {}: dim {}", p.id(), p.dim());
    let cell = |b: Option<&GradedDims>, d: u32| b.map_or_else(|| "-".to_string(), |b| b.coeff(d).to_string());
    let top = [p.complex_betti(), p.real_betti()]
        .iter()
        .flatten()
        .filter_map(|b| b.top_degree())
        .max();
    let mut rows = vec![["degree".to_string(), "complex".to_string(), "real".to_string()]];
    if let Some(top) = top {
        for d in 0..=top {
            rows.push([d.to_string(), cell(p.complex_betti(), d), cell(p.real_betti(), d)]);
        }
    }
    rows.push(["total".to_string(), total(p.complex_total()), total(p.real_total())]);
    let w: Vec<usize> = (0..3).map(|i| rows.iter().map(|r| r[i].len()).max().unwrap_or(0)).collect();
    for r in rows {
        let _ = writeln!(out, "  {:<w0$}  {:>w1$}  {:>w2$}", r[0], r[1], r[2], w0 = w[0], w1 = w[1], w2 = w[2]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(src: &str) -> Report {
        run_source(src, RunOptions::default())
    }

    #[test]
    fn bundle_moduli_script_passes() {
        let r = go("variety C = curve(genus=2, circles=3)\nvariety M = bundle_moduli(C, rank=2, degree=1)\nassert maximal(M)\nprint trace(M)\n");
        assert_eq!(r.outcome, Outcome::Passed, "{}", r.text);
        assert!(r.text.contains("stable bundles on curves"), "{}", r.text);
    }

    #[test]
    fn series_rows() {
        let r = go("print series(P2, upto=3)\n");
        let totals: Vec<&str> = r
            .text
            .lines()
            .filter(|l| l.starts_with("  q^"))
            .map(|l| l.split_whitespace().nth(2).unwrap())
            .collect();
        assert_eq!(totals, ["1", "3", "9", "22"]);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go("variety C = curve(genus=2, circles=3)\nassert maximal(C) = no\n").outcome.exit_code(), 1);
        let r = go("variety C = curve(genus=2, circles=4)\n");
        assert_eq!(r.outcome.exit_code(), 2);
        assert!(r.text.contains("Harnack"));
        assert_eq!(go("variety C = frob()").outcome.exit_code(), 2);
        assert_eq!(go("print series(P2, upto=40)").outcome.exit_code(), 2);
    }

    #[test]
    fn applicability_probe_leaves_the_session_alone() {
        let r = go("assert applicable(p2_sheaf_moduli(rank=2, c1=0, c2=2)) = no\n\
                    assert applicable(p2_sheaf_moduli(rank=2, c1=0, c2=1))\n\
                    variety _probe = point()\n");
        assert_eq!(r.outcome, Outcome::Passed, "{}", r.text);
    }

    #[test]
    fn betti_table_layout() {
        let r = go("variety P = projective_space(r=1)\nprint betti(P)\n");
        assert!(r.text.contains("  degree  complex  real\n  0             1     1\n"), "{}", r.text);
    }
}
