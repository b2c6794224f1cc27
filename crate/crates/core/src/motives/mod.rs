//! Formal motives, decomposition certificates, and the propagation of
//! equivariant formality through them.
//!
//! Nothing here computes a Chow group. A certificate is a claimed
//! decomposition of `M(Y)` in terms of other variety motives and Tate
//! objects; closure queries only rewrite along certificates.

mod expr;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::profiles::{FactName, TriState, VarietyProfile};
use crate::rules::{CITE_CONTRAPOSITIVE, CITE_MOTIVATED};

pub use expr::{parse_motive, Motive};

pub const CITE_TATE_FORMAL: &str = "a motive of Tate type is equivariantly formal";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub subject: String,
    pub decomposition: Motive,
    pub citation: String,
}

impl DecompositionCertificate {
    pub fn new(subject: impl Into<String>, decomposition: Motive, citation: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            decomposition,
            citation: citation.into(),
        }
    }

    /// Parses `cert: M(name) = <expr>  # citation`; the `cert:` prefix and
    /// the citation are optional.
    pub fn parse(line: &str) -> std::result::Result<Self, String> {
        let body = line.trim();
        let body = body.strip_prefix("cert:").unwrap_or(body).trim();
        let (body, citation) = match body.split_once('#') {
            Some((b, c)) => (b.trim(), c.trim()),
            None => (body, ""),
        };
        let (lhs, rhs) = body
            .split_once('=')
            .ok_or_else(|| "certificate needs the form M(name) = <expr>".to_string())?;
        let subject = match parse_motive(lhs)? {
            Motive::Variety(id) => id,
            other => return Err(format!("certificate subject must be M(name), got {other}")),
        };
        Ok(Self::new(subject, parse_motive(rhs)?, citation))
    }
}

impl fmt::Display for DecompositionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cert: M({}) = {}", self.subject, self.decomposition)?;
        if !self.citation.is_empty() {
            write!(f, "  # {}", self.citation)?;
        }
        Ok(())
    }
}

/// Registered certificates, keyed `c1`, `c2`, .. in registration order.
#[derive(Debug, Clone, Default)]
pub struct CertificateStore {
    certs: Vec<DecompositionCertificate>,
}

/// Answer of [`CertificateStore::motivated_by`]: `Yes` with the chain of
/// certificate ids used, or `Unknown`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Motivation {
    pub verdict: TriState,
    pub witness: Vec<String>,
}

/// A fact assignment made by formality propagation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedFact {
    pub id: String,
    pub fact: FactName,
    pub value: TriState,
    pub citation: String,
    pub premises: Vec<String>,
}

impl CertificateStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.certs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.certs.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&DecompositionCertificate> {
        let n: usize = id.strip_prefix('c')?.parse().ok()?;
        self.certs.get(n.checked_sub(1)?)
    }

    pub fn iter(&self) -> impl Iterator<Item = (String, &DecompositionCertificate)> {
        self.certs.iter().enumerate().map(|(i, c)| (format!("c{}", i + 1), c))
    }

    fn for_subject<'a>(&'a self, subject: &'a str) -> impl Iterator<Item = (String, &'a DecompositionCertificate)> {
        self.iter().filter(move |(_, c)| c.subject == subject)
    }

    /// Stores a certificate after checking its references and acyclicity.
    pub fn register(&mut self, cert: DecompositionCertificate) -> Result<String> {
        for r in cert.decomposition.cert_refs() {
            if self.get(&r).is_none() {
                return Err(Error::UnknownCertificate(r));
            }
        }
        let mut seen = BTreeSet::new();
        let mut stack: Vec<String> = cert.decomposition.atoms().into_iter().collect();
        while let Some(a) = stack.pop() {
            if a == cert.subject {
                return Err(Error::CertificateCycle { subject: cert.subject });
            }
            if seen.insert(a.clone()) {
                for (_, c) in self.for_subject(&a) {
                    stack.extend(c.decomposition.atoms());
                }
            }
        }
        self.certs.push(cert);
        Ok(format!("c{}", self.certs.len()))
    }

    /// Whether `M(y)` lies in the subcategory generated by `gens` and Tate
    /// objects, as far as the registered certificates show.
    pub fn motivated_by(&self, y: &str, gens: &BTreeSet<String>) -> Motivation {
        let mut memo = BTreeMap::new();
        match self.search(y, gens, &mut memo) {
            Some(w) => Motivation {
                verdict: TriState::Yes,
                witness: w,
            },
            None => Motivation {
                verdict: TriState::Unknown,
                witness: Vec::new(),
            },
        }
    }

    fn search(
        &self,
        y: &str,
        gens: &BTreeSet<String>,
        memo: &mut BTreeMap<String, Option<Vec<String>>>,
    ) -> Option<Vec<String>> {
        if gens.contains(y) {
            return Some(Vec::new());
        }
        if let Some(hit) = memo.get(y) {
            return hit.clone();
        }
        // certificates are acyclic, so the recursion terminates
        let mut found = None;
        'certs: for (cid, c) in self.for_subject(y) {
            let mut chain = Vec::new();
            for a in c.decomposition.atoms() {
                match self.search(&a, gens, memo) {
                    Some(w) => {
                        for step in w {
                            if !chain.contains(&step) {
                                chain.push(step);
                            }
                        }
                    }
                    None => continue 'certs,
                }
            }
            chain.push(cid);
            found = Some(chain);
            break;
        }
        memo.insert(y.to_string(), found.clone());
        found
    }

    /// Every variety reachable from `y` through certificate atoms.
    fn reachable(&self, y: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![y.to_string()];
        while let Some(v) = stack.pop() {
            for (_, c) in self.for_subject(&v) {
                for a in c.decomposition.atoms() {
                    if seen.insert(a.clone()) {
                        stack.push(a);
                    }
                }
            }
        }
        seen
    }
}

/// Runs formality propagation to a fixed point over `profiles`.
///
/// Returns the derived assignments and any notes (the multi-generator
/// contrapositive yields only a disjunction, recorded as a note).
pub fn propagate_formality(
    store: &CertificateStore,
    profiles: &mut BTreeMap<String, VarietyProfile>,
) -> Result<(Vec<DerivedFact>, Vec<String>)> {
    let mut derived = Vec::new();
    let mut notes = BTreeSet::new();
    loop {
        let mut changed = false;

        for p in profiles.values_mut() {
            if p.value(FactName::TateMotive).is_yes() && !p.value(FactName::Maximal).is_yes() {
                set(p, FactName::Maximal, TriState::Yes, CITE_TATE_FORMAL, vec![], &mut derived)?;
                changed = true;
            }
        }

        for (cid, c) in store.iter() {
            let Some(subject) = profiles.get(&c.subject) else { continue };
            if subject.value(FactName::Maximal).is_yes() {
                continue;
            }
            let atoms = c.decomposition.atoms();
            let formal = |a: &str| profiles.get(a).is_some_and(|p| p.value(FactName::Maximal).is_yes());
            if atoms.iter().all(|a| formal(a)) {
                let mut premises: Vec<String> = atoms.into_iter().collect();
                premises.push(cid);
                let p = profiles.get_mut(&c.subject).expect("checked above");
                set(p, FactName::Maximal, TriState::Yes, CITE_MOTIVATED, premises, &mut derived)?;
                changed = true;
            }
        }

        let negatives: Vec<String> = profiles
            .iter()
            .filter(|(_, p)| p.value(FactName::Maximal).is_no())
            .map(|(id, _)| id.clone())
            .collect();
        for y in negatives {
            for x in store.reachable(&y) {
                let Some(px) = profiles.get(&x) else { continue };
                if px.value(FactName::Maximal).is_no() {
                    continue;
                }
                let gens = BTreeSet::from([x.clone()]);
                let m = store.motivated_by(&y, &gens);
                if m.verdict.is_yes() {
                    let mut premises = vec![y.clone()];
                    premises.extend(m.witness);
                    let px = profiles.get_mut(&x).expect("checked above");
                    set(px, FactName::Maximal, TriState::No, CITE_CONTRAPOSITIVE, premises, &mut derived)?;
                    changed = true;
                }
            }
            for (cid, c) in store.for_subject(&y) {
                let atoms = c.decomposition.atoms();
                if atoms.len() >= 2 {
                    let list: Vec<_> = atoms.into_iter().collect();
                    notes.insert(format!(
                        "{y} is not maximal and {cid} motivates it by {{{}}}: not all of these are maximal",
                        list.join(", ")
                    ));
                }
            }
        }

        if !changed {
            return Ok((derived, notes.into_iter().collect()));
        }
    }
}

fn set(
    p: &mut VarietyProfile,
    fact: FactName,
    value: TriState,
    citation: &str,
    premises: Vec<String>,
    log: &mut Vec<DerivedFact>,
) -> Result<()> {
    if p.set_fact(fact, value, citation)? {
        p.normalize()?;
        log.push(DerivedFact {
            id: p.id().to_string(),
            fact,
            value,
            citation: citation.to_string(),
            premises,
        });
    }
    Ok(())
}
