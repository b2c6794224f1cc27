//! Atomic variety profiles: points, projective spaces, curves, abelian
//! varieties and a small catalog of real surfaces.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poincare::GradedDims;
use crate::profiles::{FactName, TriState, VarietyProfile};
use crate::rules::RuleId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceName {
    P2,
    P1xP1,
    Hirzebruch(u32),
    /// Degree-1 del Pezzo surface with real locus `RP^2 + 4 S^2`.
    B1,
    K3 { real_total: u64, components: u64 },
}

impl SurfaceName {
    pub const CATALOG: &'static [&'static str] = &["P2", "P1xP1", "hirzebruch", "B1", "K3"];

    /// Mod-2 Betti numbers `(b0, .., b4)` of the complex surface.
    pub fn betti(&self) -> [u64; 5] {
        match self {
            SurfaceName::P2 => [1, 0, 1, 0, 1],
            SurfaceName::P1xP1 | SurfaceName::Hirzebruch(_) => [1, 0, 2, 0, 1],
            SurfaceName::B1 => [1, 0, 9, 0, 1],
            SurfaceName::K3 { .. } => [1, 0, 22, 0, 1],
        }
    }

    /// Looks up a catalog name that needs no parameters.
    pub fn parse_plain(name: &str) -> Result<Self> {
        match name {
            "P2" => Ok(SurfaceName::P2),
            "P1xP1" => Ok(SurfaceName::P1xP1),
            "B1" => Ok(SurfaceName::B1),
            other => Err(Error::UnknownSurface(other.to_string())),
        }
    }
}

impl fmt::Display for SurfaceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceName::P2 => f.write_str("P2"),
            SurfaceName::P1xP1 => f.write_str("P1xP1"),
            SurfaceName::Hirzebruch(n) => write!(f, "hirzebruch({n})"),
            SurfaceName::B1 => f.write_str("B1"),
            SurfaceName::K3 {
                real_total,
                components,
            } => write!(f, "K3({real_total}, {components})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowUpCenter {
    RealPoint,
    ConjugatePair,
}

impl BlowUpCenter {
    pub fn as_str(self) -> &'static str {
        match self {
            BlowUpCenter::RealPoint => "real",
            BlowUpCenter::ConjugatePair => "conjugate",
        }
    }
}

impl FromStr for BlowUpCenter {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "real" | "real_point" => Ok(BlowUpCenter::RealPoint),
            "conjugate" | "conjugate_pair" => Ok(BlowUpCenter::ConjugatePair),
            other => Err(format!("expected real or conjugate, got '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Point,
    ProjectiveSpace(u32),
    Curve { genus: u32, circles: u32 },
    AbelianVariety { dim: u32, lambda1: u32 },
    Surface(SurfaceName),
    Custom(Box<VarietyProfile>),
}

impl GeneratorSpec {
    pub fn rule(&self) -> RuleId {
        match self {
            GeneratorSpec::Point => RuleId::Point,
            GeneratorSpec::ProjectiveSpace(_) => RuleId::ProjectiveSpace,
            GeneratorSpec::Curve { .. } => RuleId::Curve,
            GeneratorSpec::AbelianVariety { .. } => RuleId::AbelianVariety,
            GeneratorSpec::Surface(_) => RuleId::Surface,
            GeneratorSpec::Custom(_) => RuleId::Custom,
        }
    }

    pub fn build(&self) -> Result<VarietyProfile> {
        match self {
            GeneratorSpec::Point => Ok(make_point()),
            GeneratorSpec::ProjectiveSpace(r) => Ok(make_projective_space(*r)),
            GeneratorSpec::Curve { genus, circles } => make_curve(*genus, *circles),
            GeneratorSpec::AbelianVariety { dim, lambda1 } => make_abelian_variety(*dim, *lambda1),
            GeneratorSpec::Surface(name) => make_surface(name),
            GeneratorSpec::Custom(p) => make_custom((**p).clone()),
        }
    }
}

fn finish(mut p: VarietyProfile) -> Result<VarietyProfile> {
    p.normalize()?;
    p.close_implications()?;
    p.check_invariants()?;
    Ok(p)
}

fn set_all(p: &mut VarietyProfile, facts: &[(FactName, TriState)], cite: &str) -> Result<()> {
    for &(f, v) in facts {
        p.set_fact(f, v, cite)?;
    }
    Ok(())
}

pub fn make_point() -> VarietyProfile {
    let mut p = make_projective_space(0);
    p.set_id("point");
    p
}

/// `P^r` with its standard real structure: every cell is defined over R.
pub fn make_projective_space(r: u32) -> VarietyProfile {
    let cite = RuleId::ProjectiveSpace.citation();
    let mut p = VarietyProfile::new(format!("P{r}"), r);
    p.set_complex_betti(GradedDims::geometric(r + 1, 2));
    p.set_real_betti(GradedDims::geometric(r + 1, 1));
    p.set_components(Some(1));
    let y = TriState::Yes;
    set_all(
        &mut p,
        &[
            (FactName::B1Zero, y),
            (FactName::H1TorsionFree, y),
            (FactName::H2TorsionFree, y),
            (FactName::RRational, y),
            (FactName::TateMotive, y),
        ],
        cite,
    )
    .expect("fresh profile");
    finish(p).expect("projective spaces are maximal")
}

/// A smooth real curve of genus `g` whose real locus is `s` circles.
pub fn make_curve(g: u32, s: u32) -> Result<VarietyProfile> {
    if s > g + 1 {
        return Err(Error::HarnackViolation { genus: g, circles: s });
    }
    let cite = RuleId::Curve.citation();
    let mut p = VarietyProfile::new(format!("curve({g},{s})"), 1);
    p.set_complex_betti(GradedDims::from_dense([1, 2 * g as u64, 1]));
    p.set_real_betti(GradedDims::from_dense([s, s]));
    p.set_components((s > 0).then_some(s as u64));
    let rational = g == 0;
    set_all(
        &mut p,
        &[
            (FactName::B1Zero, TriState::from_bool(rational)),
            (FactName::H1TorsionFree, TriState::Yes),
            (FactName::H2TorsionFree, TriState::Yes),
            (FactName::RRational, TriState::from_bool(rational && s > 0)),
        ],
        cite,
    )?;
    if !rational {
        p.set_fact(FactName::TateMotive, TriState::No, cite)?;
    } else if s > 0 {
        p.set_fact(FactName::TateMotive, TriState::Yes, cite)?;
    }
    finish(p)
}

/// A real abelian variety of dimension `q` with first Comessatti
/// characteristic `lambda1`; its real locus is `2^(q - lambda1)` tori.
pub fn make_abelian_variety(q: u32, lambda1: u32) -> Result<VarietyProfile> {
    if lambda1 > q {
        return Err(Error::OutOfRange(format!(
            "abelian variety needs 0 <= lambda1 <= q, got lambda1 = {lambda1}, q = {q}"
        )));
    }
    let cite = RuleId::AbelianVariety.citation();
    let circle = GradedDims::from_dense([1u32, 1]);
    let copies = BigUint::one() << (q - lambda1);
    let mut p = VarietyProfile::new(format!("abelian({q},{lambda1})"), q);
    p.set_complex_betti(circle.pow(2 * q));
    p.set_real_betti(circle.pow(q).scale(&copies));
    p.set_components(u64::try_from(&copies).ok());
    set_all(
        &mut p,
        &[
            (FactName::B1Zero, TriState::from_bool(q == 0)),
            (FactName::H1TorsionFree, TriState::Yes),
            (FactName::H2TorsionFree, TriState::Yes),
        ],
        cite,
    )?;
    finish(p)
}

pub fn make_surface(name: &SurfaceName) -> Result<VarietyProfile> {
    let cite = RuleId::Surface.citation();
    let b = name.betti();
    let mut p = VarietyProfile::new(name.to_string(), 2);
    p.set_complex_betti(GradedDims::from_dense(b));
    let y = TriState::Yes;
    let no = TriState::No;
    let torsion = [
        (FactName::B1Zero, y),
        (FactName::H1TorsionFree, y),
        (FactName::H2TorsionFree, y),
    ];
    set_all(&mut p, &torsion, cite)?;
    match name {
        SurfaceName::P2 => return Ok(make_projective_space(2).renamed("P2")),
        SurfaceName::P1xP1 | SurfaceName::Hirzebruch(_) => {
            // torus or Klein bottle: both have mod-2 Betti numbers 1, 2, 1
            p.set_real_betti(GradedDims::from_dense([1u32, 2, 1]));
            p.set_components(Some(1));
            set_all(&mut p, &[(FactName::RRational, y), (FactName::TateMotive, y)], cite)?;
        }
        SurfaceName::B1 => {
            let rp2 = GradedDims::from_dense([1u32, 1, 1]);
            let spheres = GradedDims::from_dense([4u32, 0, 4]);
            p.set_real_betti(rp2.add(&spheres));
            p.set_components(Some(5));
            set_all(
                &mut p,
                &[
                    (FactName::RRational, no),
                    (FactName::KMaximal, no),
                    (FactName::C1Maximal, no),
                ],
                cite,
            )?;
        }
        SurfaceName::K3 {
            real_total,
            components,
        } => {
            // every closed surface contributes at least b0 = b2 = 1
            if 2 * components > *real_total || (*real_total > 0 && *components == 0) {
                return Err(Error::OutOfRange(format!(
                    "K3 real locus with total {real_total} cannot have {components} components"
                )));
            }
            p.set_real_total(BigUint::from(*real_total));
            p.set_components((*components > 0).then_some(*components));
            set_all(&mut p, &[(FactName::RRational, no), (FactName::TateMotive, no)], cite)?;
        }
    }
    finish(p)
}

/// Validates a user-supplied profile.
pub fn make_custom(p: VarietyProfile) -> Result<VarietyProfile> {
    finish(p)
}

/// Blows up a real surface at a real point or at a pair of conjugate points.
pub fn blow_up_surface_point(s: &VarietyProfile, at: BlowUpCenter) -> Result<VarietyProfile> {
    let rule = RuleId::BlowUpPoint;
    let cite = rule.citation();
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "{rule} needs a surface, {} has dimension {}",
            s.id(),
            s.dim()
        )));
    }
    if at == BlowUpCenter::RealPoint && !s.value(FactName::RealNonempty).is_yes() {
        return Err(Error::RuleNotApplicable {
            rule: rule.name().into(),
            missing: format!("real_nonempty({}) = yes", s.id()),
        });
    }
    let added: u32 = match at {
        BlowUpCenter::RealPoint => 1,
        BlowUpCenter::ConjugatePair => 2,
    };
    let mut p = VarietyProfile::new(format!("{}.bl", s.id()), 2);
    if let Some(c) = s.complex_betti() {
        p.set_complex_betti(c.add(&GradedDims::monomial(2, added)));
    } else if let Some(t) = s.complex_total() {
        p.set_complex_total(t + added);
    }
    let real_extra = match at {
        BlowUpCenter::RealPoint => 1u32,
        BlowUpCenter::ConjugatePair => 0,
    };
    if let Some(r) = s.real_betti() {
        p.set_real_betti(r.add(&GradedDims::monomial(1, real_extra)));
    } else if let Some(t) = s.real_total() {
        p.set_real_total(t + real_extra);
    }
    p.set_components(s.real_components());

    let mut copied = vec![
        FactName::RealNonempty,
        FactName::B1Zero,
        FactName::H1TorsionFree,
        FactName::H2TorsionFree,
        FactName::RRational,
    ];
    if at == BlowUpCenter::RealPoint {
        copied.push(FactName::TateMotive);
    }
    for f in copied {
        p.set_fact(f, s.value(f), cite)?;
    }
    let was_maximal = s.value(FactName::Maximal);
    if p.real_total().is_none() || p.complex_total().is_none() {
        let m = match at {
            BlowUpCenter::RealPoint => was_maximal,
            BlowUpCenter::ConjugatePair if was_maximal.is_yes() => TriState::No,
            BlowUpCenter::ConjugatePair => TriState::Unknown,
        };
        p.set_fact(FactName::Maximal, m, cite)?;
    }
    finish(p)
}

/// Total of a generator profile as a machine integer, for tests and reports.
pub fn total_u64(t: Option<&BigUint>) -> Option<u64> {
    t.and_then(|t| if t.is_zero() { Some(0) } else { u64::try_from(t).ok() })
}
