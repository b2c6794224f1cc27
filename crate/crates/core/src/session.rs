//! A session: named profiles, the proof trace, the clause base and the
//! certificate store, kept at a propagation fixed point after every step.

use std::collections::{BTreeMap, BTreeSet};

use crate::constructions::trace::{parse_trace, TraceLine};
use crate::constructions::{
    apply_rule, is_ident_char, is_ident_start, resolve_call, slot_name, Call, Node, ProofTrace, RuleApplication,
    TraceEntry,
};
use crate::error::{Error, Result};
use crate::motives::{
    propagate_formality, CertificateStore, DecompositionCertificate, Motivation, Motive,
};
use crate::poincare::{goettsche_series, BigradedSeries};
use crate::profiles::{FactName, TriState, VarietyProfile};
use crate::rules::RuleId;

pub const DEFAULT_TRUNC: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
struct BoundLiteral {
    id: String,
    fact: FactName,
    value: TriState,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Clause {
    premises: Vec<BoundLiteral>,
    conclusion: BoundLiteral,
    citation: String,
}

/// A fact set by propagation rather than by a rule's own output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derived {
    pub id: String,
    pub fact: FactName,
    pub value: TriState,
    pub citation: String,
    pub premises: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Session {
    profiles: BTreeMap<String, VarietyProfile>,
    order: Vec<String>,
    trace: ProofTrace,
    clauses: Vec<Clause>,
    certs: CertificateStore,
    derived: Vec<Derived>,
    notes: Vec<String>,
    strict: bool,
    trunc: usize,
}

impl Default for Session {
    fn default() -> Self {
        Self::new()
    }
}

pub fn is_valid_id(id: &str) -> bool {
    let mut cs = id.chars();
    cs.next().is_some_and(is_ident_start) && cs.all(is_ident_char)
}

impl Session {
    pub fn new() -> Self {
        Self {
            profiles: BTreeMap::new(),
            order: Vec::new(),
            trace: ProofTrace::default(),
            clauses: Vec::new(),
            certs: CertificateStore::new(),
            derived: Vec::new(),
            notes: Vec::new(),
            strict: false,
            trunc: DEFAULT_TRUNC,
        }
    }

    pub fn with_strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn with_trunc(mut self, trunc: usize) -> Self {
        self.trunc = trunc;
        self
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn profile(&self, id: &str) -> Result<&VarietyProfile> {
        self.profiles.get(id).ok_or_else(|| Error::UnknownVariety(id.to_string()))
    }

    /// Profiles in definition order.
    pub fn profiles(&self) -> impl Iterator<Item = &VarietyProfile> {
        self.order.iter().map(|id| &self.profiles[id])
    }

    pub fn contains(&self, id: &str) -> bool {
        self.profiles.contains_key(id)
    }

    pub fn trace(&self) -> &ProofTrace {
        &self.trace
    }

    pub fn certificates(&self) -> &CertificateStore {
        &self.certs
    }

    pub fn derived(&self) -> &[Derived] {
        &self.derived
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Applies `call` and binds its result to `id` (siblings get `id.suffix`).
    pub fn define(&mut self, id: &str, call: &Call) -> Result<Vec<String>> {
        if !is_valid_id(id) {
            return Err(Error::OutOfRange(format!("'{id}' is not a valid identifier")));
        }
        if self.contains(id) {
            return Err(Error::DuplicateId(id.to_string()));
        }
        let rule = resolve_call(&call.name, &call.params)?;
        let inputs: Vec<&VarietyProfile> = call
            .inputs
            .iter()
            .map(|i| self.profile(i))
            .collect::<Result<_>>()?;
        let d = apply_rule(rule, &inputs, &call.params, self.trunc)?;
        if self.strict {
            if let Some(a) = d.assumptions.first() {
                return Err(Error::UncheckedAssumption {
                    rule: rule.name().into(),
                    assumption: a.clone(),
                });
            }
        }
        let mut out_ids = vec![id.to_string()];
        out_ids.extend(d.suffixes.iter().map(|s| format!("{id}.{s}")));
        for o in &out_ids[1..] {
            if self.contains(o) {
                return Err(Error::DuplicateId(o.clone()));
            }
        }

        let bind = |n: Node| match n {
            Node::Input(i) => call.inputs[i].clone(),
            Node::Output(j) => out_ids[j].clone(),
        };
        let mut certs = Vec::new();
        for (j, m) in &d.certificates {
            let mut names = BTreeMap::new();
            for i in 0..call.inputs.len() {
                names.insert(slot_name(Node::Input(i)), bind(Node::Input(i)));
            }
            for k in 0..out_ids.len() {
                names.insert(slot_name(Node::Output(k)), bind(Node::Output(k)));
            }
            let m: Motive = m.map_atoms(&|a| names.get(a).cloned().unwrap_or_else(|| a.to_string()));
            certs.push(DecompositionCertificate::new(out_ids[*j].clone(), m, d.citation));
        }
        let clauses: Vec<Clause> = d
            .clauses
            .iter()
            .map(|c| Clause {
                premises: c
                    .premises
                    .iter()
                    .map(|l| BoundLiteral {
                        id: bind(l.node),
                        fact: l.fact,
                        value: l.value,
                    })
                    .collect(),
                conclusion: BoundLiteral {
                    id: bind(c.conclusion.node),
                    fact: c.conclusion.fact,
                    value: c.conclusion.value,
                },
                citation: c.citation.to_string(),
            })
            .collect();

        for (p, oid) in d.outputs.into_iter().zip(&out_ids) {
            let mut p = p;
            p.set_id(oid.clone());
            self.profiles.insert(oid.clone(), p);
            self.order.push(oid.clone());
        }
        for c in certs {
            self.certs.register(c)?;
        }
        self.clauses.extend(clauses);
        self.notes.extend(d.notes.iter().map(|n| format!("{id}: {n}")));
        self.trace.push(TraceEntry::Apply(RuleApplication {
            rule,
            call: call.clone(),
            outputs: out_ids.clone(),
            citation: d.citation.to_string(),
            assumptions: d.assumptions,
        }));
        self.propagate()?;
        Ok(out_ids)
    }

    /// Records a user assertion and propagates it.
    pub fn set_fact(&mut self, id: &str, fact: FactName, value: TriState, citation: &str) -> Result<()> {
        let citation = if citation.is_empty() { RuleId::SetFact.citation() } else { citation };
        let p = self
            .profiles
            .get_mut(id)
            .ok_or_else(|| Error::UnknownVariety(id.to_string()))?;
        p.set_fact(fact, value, citation)?;
        p.normalize()?;
        self.trace.push(TraceEntry::Set {
            id: id.to_string(),
            fact,
            value,
            citation: citation.to_string(),
        });
        self.propagate()
    }

    /// Registers a user certificate; every atom must name a defined variety.
    pub fn add_certificate(&mut self, cert: DecompositionCertificate) -> Result<String> {
        self.profile(&cert.subject)?;
        for a in cert.decomposition.atoms() {
            self.profile(&a)?;
        }
        let id = self.certs.register(cert.clone())?;
        self.trace.push(TraceEntry::Cert(cert));
        self.propagate()?;
        Ok(id)
    }

    pub fn motivated_by(&self, y: &str, gens: &BTreeSet<String>) -> Motivation {
        self.certs.motivated_by(y, gens)
    }

    /// Goettsche series of a surface, guarded by the truncation setting.
    pub fn series(&self, betti: [u64; 5], upto: usize) -> Result<BigradedSeries> {
        if upto > self.trunc {
            return Err(Error::TruncationGuard {
                requested: upto,
                limit: self.trunc,
            });
        }
        Ok(goettsche_series(betti, upto))
    }

    fn holds(&self, l: &BoundLiteral) -> bool {
        self.profiles.get(&l.id).is_some_and(|p| p.value(l.fact) == l.value)
    }

    /// Runs clauses, surface implications and formality to a fixed point,
    /// then checks every profile.
    pub fn propagate(&mut self) -> Result<()> {
        loop {
            let mut changed = false;
            for i in 0..self.clauses.len() {
                let c = &self.clauses[i];
                if !c.premises.iter().all(|l| self.holds(l)) {
                    continue;
                }
                let (concl, citation) = (c.conclusion.clone(), c.citation.clone());
                let mut premises: Vec<String> = Vec::new();
                for l in &c.premises {
                    if !premises.contains(&l.id) {
                        premises.push(l.id.clone());
                    }
                }
                let p = self
                    .profiles
                    .get_mut(&concl.id)
                    .ok_or_else(|| Error::UnknownVariety(concl.id.clone()))?;
                if p.set_fact(concl.fact, concl.value, &citation)? {
                    p.normalize()?;
                    self.derived.push(Derived {
                        id: concl.id,
                        fact: concl.fact,
                        value: concl.value,
                        citation,
                        premises,
                    });
                    changed = true;
                }
            }
            for p in self.profiles.values_mut() {
                changed |= p.close_implications()?;
            }
            let (facts, notes) = propagate_formality(&self.certs, &mut self.profiles)?;
            changed |= !facts.is_empty();
            self.derived.extend(facts.into_iter().map(|f| Derived {
                id: f.id,
                fact: f.fact,
                value: f.value,
                citation: f.citation,
                premises: f.premises,
            }));
            for n in notes {
                if !self.notes.contains(&n) {
                    self.notes.push(n);
                }
            }
            if !changed {
                break;
            }
        }
        for p in self.profiles.values() {
            p.check_invariants()?;
        }
        Ok(())
    }

    /// Every variety the facts of `id` depend on, `id` included.
    fn support(&self, id: &str) -> BTreeSet<String> {
        let mut set = BTreeSet::from([id.to_string()]);
        loop {
            let before = set.len();
            for e in self.trace.entries() {
                if e.touches().iter().any(|t| set.contains(*t)) {
                    set.extend(e.depends_on());
                }
            }
            for d in &self.derived {
                if set.contains(&d.id) {
                    set.extend(d.premises.iter().filter(|p| self.contains(p)).cloned());
                }
            }
            for (_, c) in self.certs.iter() {
                if set.contains(&c.subject) {
                    set.extend(c.decomposition.atoms());
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    /// The trace lines behind `id`, then the propagated facts, as comments.
    pub fn trace_for(&self, id: &str) -> Result<Vec<String>> {
        self.profile(id)?;
        let support = self.support(id);
        let mut lines: Vec<String> = self
            .trace
            .entries()
            .iter()
            .filter(|e| e.touches().iter().any(|t| support.contains(*t)))
            .map(|e| e.to_string())
            .collect();
        for d in &self.derived {
            if support.contains(&d.id) {
                let from = if d.premises.is_empty() {
                    String::new()
                } else {
                    format!(" from {}", d.premises.join(", "))
                };
                lines.push(format!(
                    "# derived: {}({}) = {}{from}  [{}]",
                    d.fact, d.id, d.value, d.citation
                ));
            }
        }
        Ok(lines)
    }

    /// Rebuilds a session from serialized trace text.
    pub fn replay(text: &str, strict: bool, trunc: usize) -> Result<Session> {
        let lines = parse_trace(text).map_err(|e| Error::OutOfRange(format!("trace: {e}")))?;
        let mut s = Session::new().with_strict(strict).with_trunc(trunc);
        for l in lines {
            match l {
                TraceLine::Apply { call, outputs } => {
                    let got = s.define(&outputs[0], &call)?;
                    if got != outputs {
                        return Err(Error::Inconsistent {
                            id: outputs[0].clone(),
                            detail: format!("replay produced outputs {got:?}, trace lists {outputs:?}"),
                        });
                    }
                }
                TraceLine::Set {
                    id,
                    fact,
                    value,
                    citation,
                } => s.set_fact(&id, fact, value, &citation)?,
                TraceLine::Cert(c) => {
                    s.add_certificate(c)?;
                }
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::Value;

    fn curve(g: i64, s: i64) -> Call {
        Call::new("curve").int("genus", g).int("circles", s)
    }

    #[test]
    fn bundle_moduli_converse_flows_back() {
        let mut s = Session::new();
        s.define("C", &curve(2, 3)).unwrap();
        s.define("M", &Call::new("bundle_moduli").input("C").int("rank", 2).int("degree", 1))
            .unwrap();
        assert_eq!(s.profile("M").unwrap().value(FactName::Maximal), TriState::Yes);
        assert_eq!(s.profile("M").unwrap().dim(), 5);
    }

    #[test]
    fn product_no_flows_back_to_a_factor() {
        let mut s = Session::new();
        s.define("E", &curve(1, 2)).unwrap();
        s.define("X", &Call::new("custom").int("dim", 1)).unwrap();
        s.define("P", &Call::new("product").input("E").input("X")).unwrap();
        s.set_fact("P", FactName::Maximal, TriState::No, "asserted").unwrap();
        assert_eq!(s.profile("X").unwrap().value(FactName::Maximal), TriState::No);
        let t = s.trace_for("X").unwrap().join("\n");
        assert!(t.contains("derived: maximal(X) = no from E, P"), "{t}");
    }

    #[test]
    fn contrapositive_through_a_user_certificate() {
        let mut s = Session::new();
        s.define("X", &Call::new("custom").int("dim", 4)).unwrap();
        s.define("F", &Call::new("custom").int("dim", 4)).unwrap();
        s.add_certificate(DecompositionCertificate::parse("cert: M(F) = summand(M(X)(-1))  # t").unwrap())
            .unwrap();
        s.set_fact("F", FactName::Maximal, TriState::No, "asserted").unwrap();
        assert_eq!(s.profile("X").unwrap().value(FactName::Maximal), TriState::No);
    }

    #[test]
    fn duplicate_and_unknown_ids() {
        let mut s = Session::new();
        s.define("C", &curve(2, 3)).unwrap();
        assert!(matches!(s.define("C", &curve(1, 1)), Err(Error::DuplicateId(_))));
        assert!(matches!(
            s.define("M", &Call::new("jacobian").input("D")),
            Err(Error::UnknownVariety(_))
        ));
    }

    #[test]
    fn strict_mode_rejects_assumptions() {
        let mut s = Session::new().with_strict(true);
        s.define("P", &Call::new("projective_space").int("r", 1)).unwrap();
        assert!(matches!(
            s.define("E", &Call::new("projective_bundle").input("P").int("rank", 2)),
            Err(Error::UncheckedAssumption { .. })
        ));
    }

    #[test]
    fn replay_reproduces_profiles() {
        let mut s = Session::new();
        s.define("P2", &Call::new("surface").param("name", Value::Ident("P2".into())))
            .unwrap();
        s.define("B", &Call::new("blow_up_point").input("P2")).unwrap();
        s.define("H", &Call::new("hilbert_square").input("B")).unwrap();
        s.define("X", &Call::new("custom").int("dim", 2)).unwrap();
        s.set_fact("X", FactName::C1Maximal, TriState::Yes, "asserted").unwrap();
        let text = s.trace().to_text();
        s.trace().check().unwrap();
        let r = Session::replay(&text, false, DEFAULT_TRUNC).unwrap();
        let a: Vec<_> = s.profiles().cloned().collect();
        let b: Vec<_> = r.profiles().cloned().collect();
        assert_eq!(a, b);
        assert_eq!(r.trace().to_text(), text);
    }

    #[test]
    fn motivic_rederivation_agrees() {
        let mut s = Session::new();
        s.define("pt", &Call::new("point")).unwrap();
        s.define("P2", &Call::new("projective_space").int("r", 2)).unwrap();
        s.define("B", &Call::new("blow_up").input("P2").input("pt")).unwrap();
        let gens = BTreeSet::from(["P2".to_string(), "pt".to_string()]);
        assert_eq!(s.motivated_by("B", &gens).verdict, TriState::Yes);
        let only_pt = BTreeSet::from(["pt".to_string()]);
        assert_eq!(s.motivated_by("B", &only_pt).verdict, TriState::Yes);
    }
}
