//! The script language.
//!
//! ```text
//! variety C = curve(genus=2, circles=3)
//! variety M = bundle_moduli(C, rank=2, degree=1)
//! cert: M(F) = summand(M(X)(-1))  # Fano variety of lines
//! set maximal(F) = no  # asserted
//! assert maximal(M)
//! assert applicable(p2_sheaf_moduli(rank=2, c1=0, c2=2)) = no
//! print betti(M)
//! print series(P2, upto=3)
//! ```

use std::collections::BTreeSet;
use std::fmt;

use crate::constructions::{call_names, output_suffixes, resolve_call, Call, Cursor, Params, Value};
use crate::motives::DecompositionCertificate;
use crate::profiles::{FactName, TriState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Variety { id: String, call: Call },
    Cert(DecompositionCertificate),
    Set { id: String, fact: FactName, value: TriState, citation: String },
    AssertFact { id: String, fact: FactName, expected: TriState },
    AssertApplicable { call: Call, expected: bool },
    Print(PrintItem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrintItem {
    Betti(String),
    Facts(String),
    Trace(String),
    /// A defined surface or a catalog name, or explicit `betti=[..]`.
    Series { surface: SeriesSource, upto: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesSource {
    Named(String),
    Betti([u64; 5]),
}

impl fmt::Display for SeriesSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesSource::Named(n) => f.write_str(n),
            SeriesSource::Betti(b) => write!(f, "betti=[{}, {}, {}, {}, {}]", b[0], b[1], b[2], b[3], b[4]),
        }
    }
}

impl fmt::Display for PrintItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrintItem::Betti(id) => write!(f, "betti({id})"),
            PrintItem::Facts(id) => write!(f, "facts({id})"),
            PrintItem::Trace(id) => write!(f, "trace({id})"),
            PrintItem::Series { surface, upto } => write!(f, "series({surface}, upto={upto})"),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Variety { id, call } => write!(f, "variety {id} = {}", call.script_form()),
            Statement::Cert(c) => write!(f, "{c}"),
            Statement::Set {
                id,
                fact,
                value,
                citation,
            } => {
                write!(f, "set {fact}({id}) = {value}")?;
                if !citation.is_empty() {
                    write!(f, "  # {citation}")?;
                }
                Ok(())
            }
            Statement::AssertFact { id, fact, expected } => write!(f, "assert {fact}({id}) = {expected}"),
            Statement::AssertApplicable { call, expected } => write!(
                f,
                "assert applicable({}) = {}",
                call.script_form(),
                if *expected { "yes" } else { "no" }
            ),
            Statement::Print(p) => write!(f, "print {p}"),
        }
    }
}

/// A parsed script; `lines[i]` is the source line of `statements[i]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
    pub lines: Vec<usize>,
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

type Step<T> = std::result::Result<T, (usize, String)>;

pub fn parse_script(text: &str) -> Result<Script, Diagnostic> {
    let mut script = Script::default();
    let mut defined: BTreeSet<String> = BTreeSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - trimmed.len();
        let diag = |(col, message): (usize, String)| Diagnostic {
            line,
            column: col + indent,
            message,
        };
        let stmt = parse_statement(trimmed).map_err(diag)?;
        check_names(&stmt, &mut defined).map_err(diag)?;
        script.statements.push(stmt);
        script.lines.push(line);
    }
    Ok(script)
}

/// Splits a trailing `# comment` off a line.
fn split_comment(line: &str) -> (&str, &str) {
    match line.find('#') {
        Some(i) => (&line[..i], line[i + 1..].trim()),
        None => (line, ""),
    }
}

fn parse_statement(line: &str) -> Step<Statement> {
    if line.starts_with("cert:") {
        return DecompositionCertificate::parse(line)
            .map(Statement::Cert)
            .map_err(|e| (1, e));
    }
    let (body, comment) = split_comment(line);
    let mut cur = Cursor::new(body);
    let kw = cur.ident()?;
    let stmt = match kw.as_str() {
        "variety" => {
            let id = cur.ident()?;
            cur.expect("=")?;
            let call = cur.call()?;
            Statement::Variety { id, call }
        }
        "set" => {
            let (fact, id) = fact_of(&mut cur)?;
            cur.expect("=")?;
            let value = tri(&mut cur)?;
            if value == TriState::Unknown {
                return Err((1, "set needs yes or no".into()));
            }
            Statement::Set {
                id,
                fact,
                value,
                citation: comment.to_string(),
            }
        }
        "assert" => {
            let col = cur.column();
            if cur.rest().trim_start().starts_with("applicable(") {
                cur.ident()?;
                cur.expect("(")?;
                let call = cur.call()?;
                cur.expect(")")?;
                let expected = if cur.eat("=") {
                    match tri(&mut cur)? {
                        TriState::Yes => true,
                        TriState::No => false,
                        TriState::Unknown => return Err((col, "applicability is yes or no".into())),
                    }
                } else {
                    true
                };
                Statement::AssertApplicable { call, expected }
            } else {
                let (fact, id) = fact_of(&mut cur)?;
                let expected = if cur.eat("=") { tri(&mut cur)? } else { TriState::Yes };
                Statement::AssertFact { id, fact, expected }
            }
        }
        "print" => {
            let col = cur.column();
            let call = cur.call()?;
            Statement::Print(print_item(call).map_err(|m| (col, m))?)
        }
        other => return Err((1, format!("unknown statement '{other}'"))),
    };
    if !cur.at_end() {
        return Err(cur.error("trailing input".into()));
    }
    Ok(stmt)
}

fn fact_of(cur: &mut Cursor) -> Step<(FactName, String)> {
    let col = cur.column();
    let name = cur.ident()?;
    let fact: FactName = name.parse().map_err(|e: String| (col + 1, e))?;
    cur.expect("(")?;
    let id = cur.ident()?;
    cur.expect(")")?;
    Ok((fact, id))
}

fn tri(cur: &mut Cursor) -> Step<TriState> {
    let col = cur.column();
    cur.ident()?.parse().map_err(|e: String| (col + 1, e))
}

fn print_item(call: Call) -> Result<PrintItem, String> {
    let one = |call: &Call| -> Result<String, String> {
        match (call.inputs.as_slice(), call.params.is_empty()) {
            ([id], true) => Ok(id.clone()),
            _ => Err(format!("{} takes exactly one variety", call.name)),
        }
    };
    match call.name.as_str() {
        "betti" => Ok(PrintItem::Betti(one(&call)?)),
        "facts" => Ok(PrintItem::Facts(one(&call)?)),
        "trace" => Ok(PrintItem::Trace(one(&call)?)),
        "series" => {
            let bad = |d: String| format!("series: {d}");
            let p: &Params = &call.params;
            let upto = match p.get("upto") {
                Some(Value::Int(n)) if *n >= 0 => *n as usize,
                _ => return Err(bad("needs upto=<n> with n >= 0".into())),
            };
            let surface = match (call.inputs.as_slice(), p.get("betti")) {
                ([name], None) => SeriesSource::Named(name.clone()),
                ([], Some(Value::List(b))) if b.len() == 5 && b.iter().all(|x| *x >= 0) => {
                    SeriesSource::Betti([b[0] as u64, b[1] as u64, b[2] as u64, b[3] as u64, b[4] as u64])
                }
                _ => return Err(bad("give one surface or betti=[b0, b1, b2, b3, b4]".into())),
            };
            if p.0.iter().any(|(k, _)| k != "upto" && k != "betti") {
                return Err(bad("only upto and betti are accepted".into()));
            }
            Ok(PrintItem::Series { surface, upto })
        }
        other => Err(format!("cannot print '{other}'; use betti, facts, trace or series")),
    }
}

/// Duplicate ids, unknown rule names and use-before-definition.
fn check_names(stmt: &Statement, defined: &mut BTreeSet<String>) -> Step<()> {
    let known = |id: &str, defined: &BTreeSet<String>| -> Step<()> {
        if defined.contains(id) {
            Ok(())
        } else {
            Err((1, format!("'{id}' is used before it is defined")))
        }
    };
    let call_ok = |call: &Call, defined: &BTreeSet<String>| -> Step<()> {
        if !call_names().contains(&call.name.as_str()) {
            return Err((1, format!("unknown rule '{}'", call.name)));
        }
        call.inputs.iter().try_for_each(|i| known(i, defined))
    };
    match stmt {
        Statement::Variety { id, call } => {
            call_ok(call, defined)?;
            let suffixes = resolve_call(&call.name, &call.params)
                .map(output_suffixes)
                .unwrap_or(&[]);
            let mut ids = vec![id.clone()];
            ids.extend(suffixes.iter().map(|s| format!("{id}.{s}")));
            for i in ids {
                if !defined.insert(i.clone()) {
                    return Err((1, format!("'{i}' is already defined")));
                }
            }
            Ok(())
        }
        Statement::Cert(c) => {
            known(&c.subject, defined)?;
            c.decomposition.atoms().iter().try_for_each(|a| known(a, defined))
        }
        Statement::Set { id, .. } | Statement::AssertFact { id, .. } => known(id, defined),
        Statement::AssertApplicable { call, .. } => call_ok(call, defined),
        Statement::Print(PrintItem::Betti(id) | PrintItem::Facts(id) | PrintItem::Trace(id)) => known(id, defined),
        Statement::Print(PrintItem::Series { .. }) => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_statement_each() {
        for src in [
            "variety C = curve(genus=2, circles=3)",
            "variety C = curve(genus=2, circles=4)",
        ] {
            assert_eq!(parse_script(src).unwrap().statements.len(), 1);
        }
        let s = parse_script("variety C = curve(genus=2, circles=3)\nvariety M = bundle_moduli(C, rank=2, degree=1)\n")
            .unwrap();
        assert_eq!(s.lines, vec![1, 2]);
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_script("variety C = curve(genus=2, circles=3)\nvariety C = point()").unwrap_err();
        assert_eq!((e.line, e.message.contains("already defined")), (2, true));
        let e = parse_script("\n  variety X = frobnicate()").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("unknown rule"), "{e}");
        let e = parse_script("variety X = point(").unwrap_err();
        assert_eq!((e.line, e.column), (1, 19));
        let e = parse_script("assert maximal(Y)").unwrap_err();
        assert!(e.message.contains("before it is defined"));
    }

    #[test]
    fn backward_hilbert_square_defines_siblings() {
        let src = "variety X = custom(dim=2)\nvariety S = custom(dim=4)\n\
                   variety N = hilbert_square(X, S, direction=backward)\nassert maximal(N.hilb3) = unknown";
        parse_script(src).unwrap();
    }

    #[test]
    fn pretty_print_round_trips() {
        let src = "# header\nvariety C = curve(genus=2, circles=3)\n\
                   variety M = bundle_moduli(C, rank=2, degree=1)\n\
                   set c1_maximal(C) = yes  # by hand\n\
                   cert: M(M) = M(C) * 1(1)  # example\n\
                   assert maximal(M)\n\
                   assert applicable(p2_sheaf_moduli(rank=2, c1=0, c2=2)) = no\n\
                   print betti(M)\nprint series(P2, upto=3)\nprint series(betti=[1, 0, 1, 0, 1], upto=2)\n";
        let a = parse_script(src).unwrap();
        let b = parse_script(&a.to_string()).unwrap();
        assert_eq!(a.statements, b.statements);
    }
}
