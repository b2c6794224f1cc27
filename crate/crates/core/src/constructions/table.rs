use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::ops::{converse_clauses, moduli_dims};
use super::{
    arity, blow_up, bundle_moduli, flag_bundle, genus, hilbert_scheme_surface, hilbert_square_rules, lit,
    product, projective_bundle, require, require_dim, slot, Derivation, HilbertDirection, Node, Params, Size,
};
use crate::error::{Error, Result};
use crate::generators::{
    blow_up_surface_point, make_abelian_variety, make_curve, make_custom, make_point, make_projective_space,
    make_surface, BlowUpCenter, SurfaceName,
};
use crate::motives::Motive;
use crate::poincare::{goettsche_coefficient, GradedDims};
use crate::profiles::{FactName, TriState, VarietyProfile};
use crate::rules::RuleId;

use FactName::*;
use TriState::{No, Yes};

fn invalid(rule: RuleId, detail: impl Into<String>) -> Error {
    Error::InvalidParameter {
        rule: rule.name().into(),
        detail: detail.into(),
    }
}

/// Maps a call name, as written in a script, to its rule.
pub fn resolve_call(name: &str, params: &Params) -> Result<RuleId> {
    if name == "hilbert_square" {
        let dir = params.ident(name, "direction")?.unwrap_or("forward");
        let dir: HilbertDirection = dir.parse().map_err(|e: String| Error::InvalidParameter {
            rule: name.into(),
            detail: e,
        })?;
        return Ok(dir.rule());
    }
    match name.parse::<RuleId>() {
        Ok(RuleId::SetFact) | Err(_) => Err(Error::InvalidParameter {
            rule: name.into(),
            detail: format!("unknown generator or construction '{name}'"),
        }),
        Ok(r) => Ok(r),
    }
}

/// Id suffixes a rule gives to its extra outputs, in order.
pub fn output_suffixes(rule: RuleId) -> &'static [&'static str] {
    match rule {
        RuleId::HilbertSquareBackward => &["nested23", "hilb3"],
        _ => &[],
    }
}

/// Every call name a script may use.
pub fn call_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = RuleId::ALL
        .iter()
        .filter(|r| **r != RuleId::SetFact)
        .map(|r| r.name())
        .collect();
    names.push("hilbert_square");
    names.sort_unstable();
    names
}

/// Applies one rule. `guard` bounds any series truncation the rule needs.
pub fn apply_rule(rule: RuleId, inputs: &[&VarietyProfile], params: &Params, guard: usize) -> Result<Derivation> {
    let name = rule.name();
    let p = params;
    let ids = |n| -> Result<()> { arity(rule, inputs, n) };
    match rule {
        RuleId::Point => {
            ids(0)?;
            p.check_names(name, &[])?;
            tate_generator(rule, make_point(), Motive::Tate(0))
        }
        RuleId::ProjectiveSpace => {
            ids(0)?;
            p.check_names(name, &["r"])?;
            let r = p.req_at_least(name, "r", 0)?;
            tate_generator(rule, make_projective_space(r), Motive::tate_sum(r))
        }
        RuleId::Curve => {
            ids(0)?;
            p.check_names(name, &["genus", "circles"])?;
            let (g, s) = (p.req_at_least(name, "genus", 0)?, p.req_at_least(name, "circles", 0)?);
            let c = make_curve(g, s)?;
            if g == 0 && s > 0 {
                tate_generator(rule, c, Motive::tate_sum(1))
            } else {
                Ok(Derivation::new(rule, c))
            }
        }
        RuleId::AbelianVariety => {
            ids(0)?;
            p.check_names(name, &["dim", "lambda1"])?;
            let q = p.req_at_least(name, "dim", 0)?;
            let l = p.opt_at_least(name, "lambda1", 0)?.unwrap_or(0);
            Ok(Derivation::new(rule, make_abelian_variety(q, l)?))
        }
        RuleId::Surface => {
            ids(0)?;
            p.check_names(name, &["name", "n", "real_total", "components"])?;
            let which = p.ident(name, "name")?.ok_or_else(|| invalid(rule, "missing parameter 'name'"))?;
            let s = match which {
                "hirzebruch" => SurfaceName::Hirzebruch(p.req_at_least(name, "n", 0)?),
                "K3" => SurfaceName::K3 {
                    real_total: u64::from(p.req_at_least(name, "real_total", 0)?),
                    components: u64::from(p.req_at_least(name, "components", 0)?),
                },
                other => SurfaceName::parse_plain(other)?,
            };
            let profile = make_surface(&s)?;
            match s {
                SurfaceName::P2 => tate_generator(rule, profile, Motive::tate_sum(2)),
                SurfaceName::P1xP1 | SurfaceName::Hirzebruch(_) => {
                    let m = Motive::Sum(vec![Motive::Tate(0), Motive::Tate(-1), Motive::Tate(-1), Motive::Tate(-2)]);
                    tate_generator(rule, profile, m)
                }
                _ => Ok(Derivation::new(rule, profile)),
            }
        }
        RuleId::Custom => {
            ids(0)?;
            p.check_names(
                name,
                &["dim", "complex", "complex_total", "real", "real_total", "components"],
            )?;
            let mut v = VarietyProfile::new("", p.req_at_least(name, "dim", 0)?);
            if let Some(c) = p.list(name, "complex")? {
                v.set_complex_betti(GradedDims::from_dense(c));
            } else if let Some(t) = p.opt_at_least(name, "complex_total", 0)? {
                v.set_complex_total(t.into());
            }
            if let Some(r) = p.list(name, "real")? {
                v.set_real_betti(GradedDims::from_dense(r));
            } else if let Some(t) = p.opt_at_least(name, "real_total", 0)? {
                v.set_real_total(t.into());
            }
            v.set_components(p.opt_at_least(name, "components", 1)?.map(u64::from));
            Ok(Derivation::new(rule, make_custom(v)?))
        }
        RuleId::BlowUpPoint => {
            ids(1)?;
            p.check_names(name, &["at"])?;
            let at: BlowUpCenter = p
                .ident(name, "at")?
                .unwrap_or("real")
                .parse()
                .map_err(|e: String| invalid(rule, e))?;
            let mut d = Derivation::new(rule, blow_up_surface_point(inputs[0], at)?);
            match at {
                BlowUpCenter::RealPoint => {
                    d.iff(Maximal, 0, 0);
                    let cert = Motive::Sum(vec![slot(Node::Input(0)), Motive::Tate(-1)]);
                    d.certificates.push((0, cert));
                }
                BlowUpCenter::ConjugatePair => {
                    d.clause(vec![lit(Node::Input(0), Maximal, Yes)], lit(Node::Output(0), Maximal, No));
                }
            }
            d.settle(inputs)
        }
        RuleId::Product => {
            p.check_names(name, &[])?;
            product(inputs)
        }
        RuleId::ProjectiveBundle => {
            ids(1)?;
            p.check_names(name, &["rank"])?;
            projective_bundle(inputs[0], p.req_at_least(name, "rank", 1)?)
        }
        RuleId::FlagBundle => {
            ids(1)?;
            p.check_names(name, &["dims", "ambient"])?;
            let dims = p.list(name, "dims")?.unwrap_or_default();
            flag_bundle(inputs[0], &dims, p.req_at_least(name, "ambient", 1)?)
        }
        RuleId::BlowUp => {
            ids(2)?;
            p.check_names(name, &["codim"])?;
            let codim = match p.opt_at_least(name, "codim", 0)? {
                Some(c) => c,
                None => inputs[0].dim().saturating_sub(inputs[1].dim()),
            };
            blow_up(inputs[0], inputs[1], codim)
        }
        RuleId::HilbertSquareForward => {
            p.check_names(name, &["direction"])?;
            hilbert_square_rules(inputs, HilbertDirection::Forward)
        }
        RuleId::HilbertSquareBackward => {
            p.check_names(name, &["direction"])?;
            hilbert_square_rules(inputs, HilbertDirection::Backward)
        }
        RuleId::HilbertSquareCriterion => {
            p.check_names(name, &["direction"])?;
            hilbert_square_rules(inputs, HilbertDirection::SurfaceCriterion)
        }
        RuleId::HilbertScheme => {
            ids(1)?;
            p.check_names(name, &["n"])?;
            hilbert_scheme_surface(inputs[0], p.req_at_least(name, "n", 1)?, guard)
        }
        RuleId::BundleModuli => {
            ids(1)?;
            p.check_names(name, &["rank", "degree"])?;
            bundle_moduli(inputs[0], p.req_int(name, "rank")?, p.req_int(name, "degree")?)
        }
        RuleId::SymPower => {
            ids(1)?;
            p.check_names(name, &["n"])?;
            power(rule, inputs[0], p.req_at_least(name, "n", 1)?)
        }
        RuleId::GammaProduct => {
            ids(1)?;
            p.check_names(name, &["n", "group"])?;
            let n = p.req_at_least(name, "n", 1)?;
            let mut d = power(rule, inputs[0], n)?;
            if let Some(g) = p.ident(name, "group")? {
                d.assumptions.push(format!("{g} is a subgroup of the symmetric group on {n} letters"));
            }
            Ok(d)
        }
        RuleId::FlipFlop => {
            ids(2)?;
            p.check_names(name, &[])?;
            let (x, z) = (inputs[0], inputs[1]);
            require(rule, x, Maximal)?;
            require(rule, z, Maximal)?;
            let mut d = Derivation::new(rule, VarietyProfile::new("", x.dim()));
            d.clause(
                vec![lit(Node::Input(0), Maximal, Yes), lit(Node::Input(1), Maximal, Yes)],
                lit(Node::Output(0), Maximal, Yes),
            );
            d.assumptions
                .push(format!("the output is a standard flip or flop of {} along {}", x.id(), z.id()));
            d.settle(inputs)
        }
        RuleId::FultonMacPherson => {
            ids(1)?;
            p.check_names(name, &["n"])?;
            let (x, n) = (inputs[0], p.req_at_least(name, "n", 1)?);
            require(rule, x, Maximal)?;
            let dim = dim_times(rule, x.dim(), n)?;
            let mut out = VarietyProfile::new("", dim);
            let mut notes = Vec::new();
            match n {
                1 => {
                    if let Some(c) = Size::complex(x) {
                        c.set_complex(&mut out);
                    }
                }
                2 => {
                    if let Some(c) = Size::complex(x) {
                        let s = (1..x.dim()).fold(c.mul(&c), |acc, k| acc.add(&c.shift(2 * k)));
                        s.set_complex(&mut out);
                    }
                }
                _ => notes.push(format!(
                    "{} blow-ups of {}^{n}; Betti numbers are not computed for n >= 3",
                    (1u64 << n.min(63)) - u64::from(n) - 1,
                    x.id()
                )),
            }
            let mut d = Derivation::new(rule, out);
            d.notes = notes;
            d.carry(Maximal, 0, 0, &[Yes]);
            d.settle(inputs)
        }
        RuleId::OddDegreeImage => {
            ids(1)?;
            p.check_names(name, &["degree", "dim"])?;
            let degree = p.req_int(name, "degree")?;
            if degree.is_even() {
                return Err(invalid(rule, format!("multisection degree {degree} is even")));
            }
            require(rule, inputs[0], Maximal)?;
            let mut d = Derivation::new(rule, VarietyProfile::new("", p.req_at_least(name, "dim", 0)?));
            d.carry(Maximal, 0, 0, &[Yes]);
            d.assumptions.push(format!(
                "the output receives a surjection from {} with a rational multisection of degree {degree}",
                inputs[0].id()
            ));
            d.settle(inputs)
        }
        RuleId::Albanese | RuleId::Picard => {
            ids(1)?;
            p.check_names(name, &["q"])?;
            let x = inputs[0];
            require(rule, x, Maximal)?;
            require(rule, x, H1TorsionFree)?;
            let q = match p.opt_at_least(name, "q", 0)? {
                Some(q) => q,
                None => half_betti(rule, x, 1)?,
            };
            let mut d = abelian_output(rule, q);
            d.clause(
                vec![lit(Node::Input(0), Maximal, Yes), lit(Node::Input(0), H1TorsionFree, Yes)],
                lit(Node::Output(0), Maximal, Yes),
            );
            d.settle(inputs)
        }
        RuleId::Jacobian => {
            ids(1)?;
            p.check_names(name, &[])?;
            let g = genus(rule, inputs[0])?;
            let mut d = abelian_output(rule, g);
            converse_clauses(&mut d);
            d.settle(inputs)
        }
        RuleId::Cubic3Fano | RuleId::Cubic5Fano | RuleId::Quartic3Fano | RuleId::GushelMukaiFano => {
            ids(1)?;
            p.check_names(name, &[])?;
            require_dim(rule, inputs[0], family_dims(rule))?;
            require(rule, inputs[0], Maximal)?;
            let mut d = Derivation::new(rule, VarietyProfile::new("", 2));
            d.carry(Maximal, 0, 0, &[Yes]);
            d.settle(inputs)
        }
        RuleId::Cubic3Ij | RuleId::Cubic5Ij | RuleId::Quartic3Ij | RuleId::GushelMukaiIj => {
            ids(1)?;
            p.check_names(name, &["q"])?;
            let x = inputs[0];
            require_dim(rule, x, family_dims(rule))?;
            require(rule, x, Maximal)?;
            let q = match p.opt_at_least(name, "q", 0)? {
                Some(q) => q,
                None => half_betti(rule, x, x.dim()).unwrap_or(default_ij_dim(rule)),
            };
            let mut d = abelian_output(rule, q);
            d.carry(Maximal, 0, 0, &[Yes]);
            d.settle(inputs)
        }
        RuleId::ParabolicModuli => {
            ids(1)?;
            p.check_names(name, &["rank", "degree", "points"])?;
            let (n, deg) = (p.req_int(name, "rank")?, p.req_int(name, "degree")?);
            let points = p.opt_at_least(name, "points", 1)?.unwrap_or(1);
            let (_, base) = moduli_dims(rule, inputs[0], n, deg, 1, 1)?;
            require(rule, inputs[0], Maximal)?;
            let flags = (n * (n - 1) / 2) as u64 * u64::from(points);
            let dim = u32::try_from(u64::from(base) + flags)
                .map_err(|_| Error::OutOfRange("parabolic moduli dimension overflows".into()))?;
            let mut d = Derivation::new(rule, VarietyProfile::new("", dim));
            d.carry(Maximal, 0, 0, &[Yes]);
            d.assumptions.push(format!(
                "the {points} parabolic point(s) lie in {}(R), with full flags and generic weights",
                inputs[0].id()
            ));
            d.settle(inputs)
        }
        RuleId::HiggsModuli => {
            ids(1)?;
            p.check_names(name, &["rank", "degree"])?;
            let (n, deg) = (p.req_int(name, "rank")?, p.req_int(name, "degree")?);
            let (_, dim) = moduli_dims(rule, inputs[0], n, deg, 2, 2)?;
            let mut d = Derivation::new(rule, VarietyProfile::new("", dim));
            converse_clauses(&mut d);
            d.settle(inputs)
        }
        RuleId::P2SheafModuli => p2_sheaf_moduli(inputs, p, guard),
        RuleId::PoissonSheafModuli => {
            ids(1)?;
            p.check_names(name, &["rank", "dim"])?;
            let s = inputs[0];
            require_dim(rule, s, &[2])?;
            p.req_at_least(name, "rank", 1)?;
            let dim = p.req_at_least(name, "dim", 0)?;
            if dim % 2 == 1 {
                return Err(invalid(rule, format!("moduli of sheaves on a surface have even dimension, got {dim}")));
            }
            let rational = s.value(RRational).is_yes() && s.value(Maximal).is_yes();
            if !rational {
                require(rule, s, KMaximal)?;
            }
            let mut d = Derivation::new(rule, VarietyProfile::new("", dim));
            if rational {
                d.citation = rule.citations()[1];
                d.clause(
                    vec![lit(Node::Input(0), RRational, Yes), lit(Node::Input(0), Maximal, Yes)],
                    lit(Node::Output(0), Maximal, Yes),
                );
            } else {
                d.clause(vec![lit(Node::Input(0), KMaximal, Yes)], lit(Node::Output(0), Maximal, Yes));
            }
            d.assumptions.push(format!(
                "{} is a Poisson surface, the Mukai vector is primitive of positive rank, and the polarization is generic",
                s.id()
            ));
            d.settle(inputs)
        }
        RuleId::SetFact => Err(invalid(rule, "set is a statement, not a construction")),
    }
}

fn tate_generator(rule: RuleId, profile: VarietyProfile, motive: Motive) -> Result<Derivation> {
    let mut d = Derivation::new(rule, profile);
    d.certificates.push((0, motive));
    Ok(d)
}

fn dim_times(rule: RuleId, dim: u32, n: u32) -> Result<u32> {
    dim.checked_mul(n)
        .ok_or_else(|| invalid(rule, format!("dimension {dim} x {n} overflows")))
}

/// Symmetric and other Gamma-products of `X`: propagation only.
fn power(rule: RuleId, x: &VarietyProfile, n: u32) -> Result<Derivation> {
    require(rule, x, Maximal)?;
    let mut d = Derivation::new(rule, VarietyProfile::new("", dim_times(rule, x.dim(), n)?));
    d.carry(Maximal, 0, 0, &[Yes]);
    d.settle(&[x])
}

/// A principally polarized abelian variety of dimension `q`, maximality
/// left to the caller's clauses.
fn abelian_output(rule: RuleId, q: u32) -> Derivation {
    let mut out = VarietyProfile::new("", q);
    out.set_complex_betti(GradedDims::from_dense([1u32, 1]).pow(2 * q));
    let mut d = Derivation::new(rule, out);
    d.fact(0, H1TorsionFree, Yes);
    d.fact(0, H2TorsionFree, Yes);
    d.fact(0, B1Zero, TriState::from_bool(q == 0));
    d
}

fn half_betti(rule: RuleId, x: &VarietyProfile, degree: u32) -> Result<u32> {
    let b = x.complex_b(degree).ok_or_else(|| Error::RuleNotApplicable {
        rule: rule.name().into(),
        missing: format!("complex Betti numbers of {} (or pass q=..)", x.id()),
    })?;
    (b / 2u32)
        .to_u32()
        .ok_or_else(|| Error::OutOfRange(format!("b{degree} of {} is too large", x.id())))
}

fn family_dims(rule: RuleId) -> &'static [u32] {
    match rule {
        RuleId::Cubic5Fano | RuleId::Cubic5Ij => &[5],
        RuleId::GushelMukaiFano | RuleId::GushelMukaiIj => &[3, 5],
        _ => &[3],
    }
}

fn default_ij_dim(rule: RuleId) -> u32 {
    match rule {
        RuleId::Cubic3Ij => 5,
        RuleId::Cubic5Ij => 21,
        RuleId::Quartic3Ij => 30,
        _ => 10,
    }
}

/// Moduli of Gieseker-stable sheaves on `P^2` with invariants `(r, c1, c2)`.
fn p2_sheaf_moduli(inputs: &[&VarietyProfile], p: &Params, guard: usize) -> Result<Derivation> {
    let rule = RuleId::P2SheafModuli;
    let name = rule.name();
    if inputs.len() > 1 {
        arity(rule, inputs, 1)?;
    }
    if let Some(s) = inputs.first() {
        require_dim(rule, s, &[2])?;
    }
    p.check_names(name, &["rank", "c1", "c2"])?;
    let r = p.req_at_least(name, "rank", 1)? as i64;
    let (c1, c2) = (p.req_int(name, "c1")?, p.req_int(name, "c2")?);
    let chi = c1 * (c1 + 1) / 2 - c2;
    let g = r.gcd(&c1).gcd(&chi);
    if g != 1 {
        return Err(Error::RuleNotApplicable {
            rule: name.into(),
            missing: format!("gcd(r, c1, c1(c1+1)/2 - c2) = gcd({r}, {c1}, {chi}) = {g}, need 1"),
        });
    }
    let expected = 2 * r * c2 - (r - 1) * c1 * c1 - r * r + 1;
    let mut d;
    if expected < 0 {
        let mut out = VarietyProfile::new("", 0);
        out.set_complex_total(BigUint::zero());
        out.set_real_total(BigUint::zero());
        d = Derivation::new(rule, out);
        d.notes.push(format!("expected dimension {expected} < 0: the moduli space is empty"));
    } else {
        let dim = u32::try_from(expected).map_err(|_| Error::OutOfRange("moduli dimension overflows".into()))?;
        let mut out = VarietyProfile::new("", dim);
        // rank one: twisted ideal sheaves, i.e. the Hilbert scheme of c2 points
        if r == 1 && (c2 as usize) <= guard {
            out.set_complex_betti(goettsche_coefficient([1, 0, 1, 0, 1], c2 as usize));
        }
        d = Derivation::new(rule, out);
    }
    for f in [Maximal, TateMotive, B1Zero, H1TorsionFree, H2TorsionFree] {
        d.fact(0, f, Yes);
    }
    d.settle(inputs)
}
