//! Variety fingerprints, the Smith-Thom check, and the tri-state fact lattice.
//!
//! A [`VarietyProfile`] stands for a real variety reduced to what the engine
//! tracks: its complex dimension, the mod-2 Betti numbers of the complex
//! points, the total mod-2 Betti number of the real locus, and a table of
//! tri-state facts. Every update goes through [`VarietyProfile::assert_fact`]
//! or one of the crate-internal setters, after which the profile is
//! normalized: totals force maximality, maximality back-fills the real total,
//! and `maximal` mirrors `equivariantly_formal`.

mod facts;

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poincare::GradedDims;

pub use facts::{Fact, FactName, FactTable, TriState};

pub const CITE_TOTALS: &str = "Smith-Thom comparison of total mod-2 Betti numbers";
pub const CITE_FORMALITY: &str = "maximal iff equivariantly formal (restriction to ordinary cohomology is onto)";
pub const CITE_REAL_TOTAL: &str = "real locus total Betti number";
pub const CITE_C1_B1: &str = "a c1-maximal real surface with b1 = 0 is maximal";
pub const CITE_K_C1: &str =
    "K0-maximal with no 2-torsion in H^3 is c1-maximal [proxy: h2_torsion_free; K0/K1 merged]";
pub const CITE_RATIONAL_K: &str = "a maximal R-rational real surface is K-maximal and c1-maximal";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmithThom {
    Maximal,
    Strict,
    Undetermined,
}

impl fmt::Display for SmithThom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SmithThom::Maximal => "maximal",
            SmithThom::Strict => "strict",
            SmithThom::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyProfile {
    id: String,
    dim: u32,
    complex_betti: Option<GradedDims>,
    complex_total: Option<BigUint>,
    real_total: Option<BigUint>,
    real_betti: Option<GradedDims>,
    real_components: Option<u64>,
    facts: FactTable,
}

impl VarietyProfile {
    /// A profile that knows only its dimension.
    pub fn new(id: impl Into<String>, dim: u32) -> Self {
        Self {
            id: id.into(),
            dim,
            complex_betti: None,
            complex_total: None,
            real_total: None,
            real_betti: None,
            real_components: None,
            facts: FactTable::default(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn complex_betti(&self) -> Option<&GradedDims> {
        self.complex_betti.as_ref()
    }

    pub fn complex_total(&self) -> Option<&BigUint> {
        self.complex_total.as_ref()
    }

    pub fn real_total(&self) -> Option<&BigUint> {
        self.real_total.as_ref()
    }

    pub fn real_betti(&self) -> Option<&GradedDims> {
        self.real_betti.as_ref()
    }

    pub fn real_components(&self) -> Option<u64> {
        self.real_components
    }

    pub fn facts(&self) -> &FactTable {
        &self.facts
    }

    pub fn fact(&self, name: FactName) -> &Fact {
        self.facts.get(name)
    }

    pub fn value(&self, name: FactName) -> TriState {
        self.facts.get(name).value
    }

    /// Betti number `b_i` of the complex points, when the graded table is known.
    pub fn complex_b(&self, i: u32) -> Option<BigUint> {
        self.complex_betti.as_ref().map(|p| p.coeff(i))
    }

    pub fn renamed(&self, id: impl Into<String>) -> Self {
        let mut out = self.clone();
        out.id = id.into();
        out
    }

    pub(crate) fn set_id(&mut self, id: impl Into<String>) {
        self.id = id.into();
    }

    pub(crate) fn set_complex_betti(&mut self, p: GradedDims) {
        self.complex_total = Some(p.total());
        self.complex_betti = Some(p);
    }

    pub(crate) fn set_complex_total(&mut self, total: BigUint) {
        self.complex_betti = None;
        self.complex_total = Some(total);
    }

    pub(crate) fn set_real_betti(&mut self, p: GradedDims) {
        self.real_total = Some(p.total());
        self.real_betti = Some(p);
    }

    pub(crate) fn set_real_total(&mut self, total: BigUint) {
        self.real_betti = None;
        self.real_total = Some(total);
    }

    pub(crate) fn set_components(&mut self, c: Option<u64>) {
        self.real_components = c;
    }

    /// Records `value` for `fact`. Returns whether anything changed; a
    /// conflicting known value is an error and leaves the fact untouched.
    pub(crate) fn set_fact(&mut self, fact: FactName, value: TriState, provenance: &str) -> Result<bool> {
        if value == TriState::Unknown {
            return Ok(false);
        }
        let id = self.id.clone();
        let slot = self.facts.slot(fact);
        match slot.value {
            TriState::Unknown => {
                slot.value = value;
                slot.provenance = Some(provenance.to_string());
                Ok(true)
            }
            existing if existing == value => Ok(false),
            existing => Err(Error::FactContradiction {
                id,
                fact,
                existing,
                existing_provenance: slot.provenance_or_default().to_string(),
                attempted: value,
                attempted_provenance: provenance.to_string(),
            }),
        }
    }

    /// Sets a fact and re-normalizes, returning the updated profile.
    pub fn assert_fact(&self, fact: FactName, value: TriState, provenance: &str) -> Result<Self> {
        let mut out = self.clone();
        out.set_fact(fact, value, provenance)?;
        out.normalize()?;
        Ok(out)
    }

    /// Closes the fact table under the totals and the maximality/formality
    /// equivalence. Idempotent.
    pub(crate) fn normalize(&mut self) -> Result<()> {
        loop {
            let mut changed = false;

            for (a, b) in [
                (FactName::Maximal, FactName::EquivariantlyFormal),
                (FactName::EquivariantlyFormal, FactName::Maximal),
            ] {
                let v = self.value(a);
                changed |= self.set_fact(b, v, CITE_FORMALITY)?;
            }

            if let Some(rt) = &self.real_total {
                let nonempty = TriState::from_bool(!rt.is_zero());
                changed |= self.set_fact(FactName::RealNonempty, nonempty, CITE_REAL_TOTAL)?;
            }
            if self.value(FactName::RealNonempty).is_no() && self.real_total.is_none() {
                self.set_real_betti(GradedDims::zero());
                self.real_components = None;
                changed = true;
            }

            if self.value(FactName::Maximal).is_yes() {
                let positive = self.complex_total.as_ref().is_none_or(|t| !t.is_zero());
                if positive {
                    changed |= self.set_fact(FactName::RealNonempty, TriState::Yes, CITE_TOTALS)?;
                }
                if self.real_total.is_none() {
                    if let Some(ct) = self.complex_total.clone() {
                        self.set_real_total(ct);
                        changed = true;
                    }
                }
            }

            if let (Some(rt), Some(ct)) = (&self.real_total, &self.complex_total) {
                if rt > ct {
                    return Err(Error::SmithThomViolation {
                        id: self.id.clone(),
                        real: rt.clone(),
                        complex: ct.clone(),
                    });
                }
                let equal = TriState::from_bool(rt == ct);
                changed |= self.set_fact(FactName::Maximal, equal, CITE_TOTALS)?;
            }

            if !changed {
                return Ok(());
            }
        }
    }

    /// Checks every structural invariant of the profile.
    pub fn check_invariants(&self) -> Result<()> {
        let broken = |detail: String| {
            Err(Error::Inconsistent {
                id: self.id.clone(),
                detail,
            })
        };
        if let (Some(p), Some(t)) = (&self.complex_betti, &self.complex_total) {
            if &p.total() != t {
                return broken(format!("complex Betti table sums to {} not {t}", p.total()));
            }
        }
        if self.complex_betti.is_some() && self.complex_total.is_none() {
            return broken("complex Betti table without total".into());
        }
        if let Some(p) = &self.real_betti {
            if self.real_total.as_ref() != Some(&p.total()) {
                return broken("real Betti table disagrees with real total".into());
            }
        }
        if let (Some(rt), Some(ct)) = (&self.real_total, &self.complex_total) {
            if rt > ct {
                return Err(Error::SmithThomViolation {
                    id: self.id.clone(),
                    real: rt.clone(),
                    complex: ct.clone(),
                });
            }
            if self.value(FactName::Maximal).is_yes() && rt != ct {
                return broken("maximal but totals differ".into());
            }
            if self.value(FactName::Maximal).is_no() && rt == ct {
                return broken("not maximal but totals agree".into());
            }
        }
        if self.value(FactName::Maximal).is_yes()
            && self.complex_total.as_ref().is_none_or(|t| !t.is_zero())
            && !self.value(FactName::RealNonempty).is_yes()
        {
            return broken("maximal with a real locus not known to be nonempty".into());
        }
        if self.value(FactName::Maximal) != self.value(FactName::EquivariantlyFormal) {
            return broken("maximal and equivariantly_formal disagree".into());
        }
        if self.real_components == Some(0) {
            return broken("component count must be positive".into());
        }
        Ok(())
    }

    pub fn smith_thom_check(&self) -> Result<SmithThom> {
        match (&self.real_total, &self.complex_total) {
            (Some(rt), Some(ct)) if rt > ct => Err(Error::SmithThomViolation {
                id: self.id.clone(),
                real: rt.clone(),
                complex: ct.clone(),
            }),
            (Some(rt), Some(ct)) if rt == ct => Ok(SmithThom::Maximal),
            (Some(_), Some(_)) => Ok(SmithThom::Strict),
            _ => Ok(SmithThom::Undetermined),
        }
    }

    /// Closes the fact lattice under the surface implications:
    /// c1-maximal with `b1 = 0` gives maximal, K-maximal with torsion-free
    /// cohomology gives c1-maximal, and maximal R-rational surfaces are
    /// K- and c1-maximal. Iterates to a fixed point.
    pub fn derive_implications(&self) -> Result<Self> {
        let mut out = self.clone();
        out.close_implications()?;
        Ok(out)
    }

    pub(crate) fn close_implications(&mut self) -> Result<bool> {
        let mut any = false;
        loop {
            let mut changed = false;
            let surface = self.dim == 2;
            let v = |p: &Self, f| p.value(f).is_yes();
            if surface && v(self, FactName::C1Maximal) && v(self, FactName::B1Zero) {
                changed |= self.set_fact(FactName::Maximal, TriState::Yes, CITE_C1_B1)?;
            }
            if v(self, FactName::KMaximal) && v(self, FactName::H2TorsionFree) {
                changed |= self.set_fact(FactName::C1Maximal, TriState::Yes, CITE_K_C1)?;
            }
            if surface && v(self, FactName::Maximal) && v(self, FactName::RRational) {
                changed |= self.set_fact(FactName::KMaximal, TriState::Yes, CITE_RATIONAL_K)?;
                changed |= self.set_fact(FactName::C1Maximal, TriState::Yes, CITE_RATIONAL_K)?;
            }
            self.normalize()?;
            if !changed {
                return Ok(any);
            }
            any = true;
        }
    }
}
