//! Proof traces and their line format.
//!
//! ```text
//! bundle_moduli(C; rank=2, degree=1) -> M  # stable bundles on curves: ..
//! set(F; maximal=no) -> F  # asserted
//! cert: M(F) = summand(M(X2)(-1))  # ..
//! ```

use std::collections::BTreeSet;
use std::fmt;

use super::call::{Call, Cursor, Value};
use crate::motives::DecompositionCertificate;
use crate::profiles::{FactName, TriState};
use crate::rules::RuleId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub call: Call,
    pub outputs: Vec<String>,
    pub citation: String,
    pub assumptions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEntry {
    Apply(RuleApplication),
    Set {
        id: String,
        fact: FactName,
        value: TriState,
        citation: String,
    },
    Cert(DecompositionCertificate),
}

impl TraceEntry {
    /// Ids this entry defines or modifies.
    pub fn touches(&self) -> Vec<&str> {
        match self {
            TraceEntry::Apply(a) => a.outputs.iter().map(String::as_str).collect(),
            TraceEntry::Set { id, .. } => vec![id],
            TraceEntry::Cert(c) => vec![&c.subject],
        }
    }

    /// Ids this entry depends on.
    pub fn depends_on(&self) -> Vec<String> {
        match self {
            TraceEntry::Apply(a) => a.call.inputs.clone(),
            TraceEntry::Set { .. } => Vec::new(),
            TraceEntry::Cert(c) => c.decomposition.atoms().into_iter().collect(),
        }
    }
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEntry::Apply(a) => {
                write!(f, "{} -> {}  # {}", a.call.trace_form(), a.outputs.join(", "), a.citation)?;
                if !a.assumptions.is_empty() {
                    write!(f, " [assumes: {}]", a.assumptions.join("; "))?;
                }
                Ok(())
            }
            TraceEntry::Set {
                id,
                fact,
                value,
                citation,
            } => write!(f, "set({id}; {fact}={value}) -> {id}  # {citation}"),
            TraceEntry::Cert(c) => write!(f, "{c}"),
        }
    }
}

/// The ordered list of everything a session did.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProofTrace {
    entries: Vec<TraceEntry>,
}

impl ProofTrace {
    pub fn entries(&self) -> &[TraceEntry] {
        &self.entries
    }

    pub(crate) fn push(&mut self, e: TraceEntry) {
        self.entries.push(e);
    }

    /// Checks that every input is defined before use, no id is defined
    /// twice, and each citation belongs to its rule.
    pub fn check(&self) -> Result<(), String> {
        let mut defined = BTreeSet::new();
        for (n, e) in self.entries.iter().enumerate() {
            let line = n + 1;
            if let TraceEntry::Apply(a) = e {
                for i in &a.call.inputs {
                    if !defined.contains(i.as_str()) {
                        return Err(format!("entry {line}: input {i} is not defined earlier"));
                    }
                }
                if !a.rule.citations().contains(&a.citation.as_str()) {
                    return Err(format!("entry {line}: citation does not belong to {}", a.rule));
                }
                for o in &a.outputs {
                    if !defined.insert(o.as_str()) {
                        return Err(format!("entry {line}: {o} is defined twice"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }
}

/// One parsed trace line, ready to be replayed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceLine {
    Apply { call: Call, outputs: Vec<String> },
    Set { id: String, fact: FactName, value: TriState, citation: String },
    Cert(DecompositionCertificate),
}

/// Parses trace text; blank lines and `#` comment lines are skipped.
pub fn parse_trace(text: &str) -> Result<Vec<TraceLine>, String> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |col: usize, msg: String| format!("line {}, column {col}: {msg}", n + 1);
        if line.starts_with("cert:") {
            let c = DecompositionCertificate::parse(line).map_err(|e| at(1, e))?;
            out.push(TraceLine::Cert(c));
            continue;
        }
        let (body, comment) = match line.split_once("  #") {
            Some((b, c)) => (b, c.trim()),
            None => (line, ""),
        };
        let mut cur = Cursor::new(body);
        let call = cur.call().map_err(|(c, m)| at(c, m))?;
        cur.expect("->").map_err(|(c, m)| at(c, m))?;
        let mut outputs = vec![cur.ident().map_err(|(c, m)| at(c, m))?];
        while cur.eat(",") {
            outputs.push(cur.ident().map_err(|(c, m)| at(c, m))?);
        }
        if !cur.at_end() {
            return Err(at(cur.column(), "trailing input".into()));
        }
        if call.name == "set" {
            let (id, fact, value) = set_parts(&call).ok_or_else(|| at(1, "malformed set entry".into()))?;
            let citation = comment.split(" [assumes:").next().unwrap_or("").to_string();
            out.push(TraceLine::Set {
                id,
                fact,
                value,
                citation,
            });
        } else {
            out.push(TraceLine::Apply { call, outputs });
        }
    }
    Ok(out)
}

fn set_parts(call: &Call) -> Option<(String, FactName, TriState)> {
    let [id] = call.inputs.as_slice() else { return None };
    let [(fact, Value::Ident(v))] = call.params.0.as_slice() else { return None };
    Some((id.clone(), fact.parse().ok()?, v.parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_round_trip() {
        let app = TraceEntry::Apply(RuleApplication {
            rule: RuleId::BundleModuli,
            call: Call::new("bundle_moduli").input("C").int("rank", 2).int("degree", 1),
            outputs: vec!["M".into()],
            citation: RuleId::BundleModuli.citation().into(),
            assumptions: vec![],
        });
        let set = TraceEntry::Set {
            id: "F".into(),
            fact: FactName::Maximal,
            value: TriState::No,
            citation: "asserted".into(),
        };
        let text = format!("{app}\n# a comment\n{set}\n");
        let lines = parse_trace(&text).unwrap();
        assert_eq!(lines.len(), 2);
        match &lines[0] {
            TraceLine::Apply { call, outputs } => {
                assert_eq!(call.trace_form(), "bundle_moduli(C; rank=2, degree=1)");
                assert_eq!(outputs, &["M"]);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(&lines[1], TraceLine::Set { value: TriState::No, .. }));
    }

    #[test]
    fn check_catches_undefined_inputs() {
        let mut t = ProofTrace::default();
        t.push(TraceEntry::Apply(RuleApplication {
            rule: RuleId::Product,
            call: Call::new("product").input("X"),
            outputs: vec!["Y".into()],
            citation: RuleId::Product.citation().into(),
            assumptions: vec![],
        }));
        assert!(t.check().unwrap_err().contains("not defined"));
    }
}
