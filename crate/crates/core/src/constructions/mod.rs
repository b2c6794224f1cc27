//! The rule engine: constructions that consume profiles and emit new ones,
//! together with the Horn clauses that let facts flow in both directions.
//!
//! Every construction here is a pure function returning a [`Derivation`].
//! Clauses and certificates in a derivation refer to its inputs and outputs
//! by position ([`Node`]); a [`crate::Session`] binds them to ids.

mod call;
mod ops;
mod table;
pub mod trace;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::motives::Motive;
use crate::poincare::GradedDims;
use crate::profiles::{FactName, TriState, VarietyProfile};
use crate::rules::RuleId;

pub use call::{is_ident_char, is_ident_start, parse_call, Call, Cursor, Params, Value};
pub use ops::{
    blow_up, bundle_moduli, flag_bundle, hilbert_scheme_surface, hilbert_square_rules, product, projective_bundle,
    HilbertDirection,
};
pub use table::{apply_rule, call_names, output_suffixes, resolve_call};
pub use trace::{ProofTrace, RuleApplication, TraceEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Input(usize),
    Output(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Literal {
    pub node: Node,
    pub fact: FactName,
    pub value: TriState,
}

pub fn lit(node: Node, fact: FactName, value: TriState) -> Literal {
    Literal { node, fact, value }
}

/// `premises => conclusion`, licensed by `citation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseTemplate {
    pub premises: Vec<Literal>,
    pub conclusion: Literal,
    pub citation: &'static str,
}

#[derive(Debug, Clone)]
pub struct Derivation {
    pub rule: RuleId,
    /// `outputs[0]` is the named result; the rest are siblings.
    pub outputs: Vec<VarietyProfile>,
    /// Id suffixes for `outputs[1..]`.
    pub suffixes: Vec<&'static str>,
    pub citation: &'static str,
    pub clauses: Vec<ClauseTemplate>,
    pub assumptions: Vec<String>,
    /// `(output index, decomposition)`; atoms use [`slot_name`].
    pub certificates: Vec<(usize, Motive)>,
    pub notes: Vec<String>,
}

/// Placeholder atom name for a node inside a derivation certificate.
pub fn slot_name(node: Node) -> String {
    match node {
        Node::Input(i) => format!("$in{i}"),
        Node::Output(j) => format!("$out{j}"),
    }
}

pub fn slot(node: Node) -> Motive {
    Motive::Variety(slot_name(node))
}

impl Derivation {
    fn new(rule: RuleId, output: VarietyProfile) -> Self {
        Self {
            rule,
            outputs: vec![output],
            suffixes: Vec::new(),
            citation: rule.citation(),
            clauses: Vec::new(),
            assumptions: Vec::new(),
            certificates: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn output(&self) -> &VarietyProfile {
        &self.outputs[0]
    }

    pub fn into_output(self) -> VarietyProfile {
        self.outputs.into_iter().next().expect("a derivation has an output")
    }

    fn clause(&mut self, premises: Vec<Literal>, conclusion: Literal) {
        self.clauses.push(ClauseTemplate {
            premises,
            conclusion,
            citation: self.citation,
        });
    }

    fn clause_cited(&mut self, premises: Vec<Literal>, conclusion: Literal, citation: &'static str) {
        self.clauses.push(ClauseTemplate {
            premises,
            conclusion,
            citation,
        });
    }

    /// Both directions of `fact(input) <=> fact(output)`.
    fn iff(&mut self, fact: FactName, input: usize, output: usize) {
        for v in [TriState::Yes, TriState::No] {
            self.clause(vec![lit(Node::Input(input), fact, v)], lit(Node::Output(output), fact, v));
            self.clause(vec![lit(Node::Output(output), fact, v)], lit(Node::Input(input), fact, v));
        }
    }

    /// `fact(input) = v => fact(output) = v` for each `v` listed.
    fn carry(&mut self, fact: FactName, input: usize, output: usize, values: &[TriState]) {
        for &v in values {
            self.clause(vec![lit(Node::Input(input), fact, v)], lit(Node::Output(output), fact, v));
        }
    }

    /// A conclusion with no premises.
    fn fact(&mut self, output: usize, fact: FactName, value: TriState) {
        self.clause(Vec::new(), lit(Node::Output(output), fact, value));
    }

    /// Applies the clauses that conclude on outputs, using the inputs as
    /// they stand, then normalizes and checks every output.
    fn settle(mut self, inputs: &[&VarietyProfile]) -> Result<Self> {
        loop {
            let mut changed = false;
            for c in &self.clauses {
                let holds = c.premises.iter().all(|l| {
                    let p = match l.node {
                        Node::Input(i) => inputs[i],
                        Node::Output(j) => &self.outputs[j],
                    };
                    p.value(l.fact) == l.value
                });
                if let (true, Node::Output(j)) = (holds, c.conclusion.node) {
                    changed |= self.outputs[j].set_fact(c.conclusion.fact, c.conclusion.value, c.citation)?;
                }
            }
            for p in &mut self.outputs {
                p.normalize()?;
                changed |= p.close_implications()?;
            }
            if !changed {
                break;
            }
        }
        for p in &self.outputs {
            p.check_invariants()?;
        }
        Ok(self)
    }
}

/// Cohomological size: a graded table when known, else just the total.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Size {
    Graded(GradedDims),
    Total(BigUint),
}

impl Size {
    fn complex(p: &VarietyProfile) -> Option<Self> {
        match (p.complex_betti(), p.complex_total()) {
            (Some(b), _) => Some(Size::Graded(b.clone())),
            (None, Some(t)) => Some(Size::Total(t.clone())),
            _ => None,
        }
    }

    fn real(p: &VarietyProfile) -> Option<Self> {
        match (p.real_betti(), p.real_total()) {
            (Some(b), _) => Some(Size::Graded(b.clone())),
            (None, Some(t)) => Some(Size::Total(t.clone())),
            _ => None,
        }
    }

    fn total(&self) -> BigUint {
        match self {
            Size::Graded(b) => b.total(),
            Size::Total(t) => t.clone(),
        }
    }

    fn mul(&self, other: &Size) -> Size {
        match (self, other) {
            (Size::Graded(a), Size::Graded(b)) => Size::Graded(a.mul(b)),
            _ => Size::Total(self.total() * other.total()),
        }
    }

    fn add(&self, other: &Size) -> Size {
        match (self, other) {
            (Size::Graded(a), Size::Graded(b)) => Size::Graded(a.add(b)),
            _ => Size::Total(self.total() + other.total()),
        }
    }

    fn shift(&self, k: u32) -> Size {
        match self {
            Size::Graded(a) => Size::Graded(a.shift(k)),
            Size::Total(_) => self.clone(),
        }
    }

    /// Drops the grading.
    fn ungraded(&self) -> Size {
        Size::Total(self.total())
    }

    fn set_complex(self, p: &mut VarietyProfile) {
        match self {
            Size::Graded(b) => p.set_complex_betti(b),
            Size::Total(t) => p.set_complex_total(t),
        }
    }

    fn set_real(self, p: &mut VarietyProfile) {
        match self {
            Size::Graded(b) => p.set_real_betti(b),
            Size::Total(t) => p.set_real_total(t),
        }
    }
}

fn require(rule: RuleId, p: &VarietyProfile, fact: FactName) -> Result<()> {
    if p.value(fact).is_yes() {
        Ok(())
    } else {
        Err(Error::RuleNotApplicable {
            rule: rule.name().into(),
            missing: format!("needs {fact}({}) = yes, it is {}", p.id(), p.value(fact)),
        })
    }
}

fn require_dim(rule: RuleId, p: &VarietyProfile, dims: &[u32]) -> Result<()> {
    if dims.contains(&p.dim()) {
        Ok(())
    } else {
        let want: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
        Err(Error::DimensionMismatch(format!(
            "{rule} needs an input of dimension {}, {} has dimension {}",
            want.join(" or "),
            p.id(),
            p.dim()
        )))
    }
}

fn arity(rule: RuleId, inputs: &[&VarietyProfile], n: usize) -> Result<()> {
    if inputs.len() == n {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            rule: rule.name().into(),
            detail: format!("expected {n} input variet{}, got {}", if n == 1 { "y" } else { "ies" }, inputs.len()),
        })
    }
}

/// Genus of a curve profile, read off `b1 = 2g`.
fn genus(rule: RuleId, c: &VarietyProfile) -> Result<u32> {
    require_dim(rule, c, &[1])?;
    let b1 = c.complex_b(1).ok_or_else(|| Error::RuleNotApplicable {
        rule: rule.name().into(),
        missing: format!("complex Betti numbers of {}", c.id()),
    })?;
    let g = u32::try_from(b1 / 2u32).map_err(|_| Error::OutOfRange(format!("genus of {} is too large", c.id())))?;
    Ok(g)
}
