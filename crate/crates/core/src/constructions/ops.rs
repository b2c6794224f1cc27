use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{arity, genus, lit, require, require_dim, slot, Derivation, Node, Size};
use crate::error::{Error, Result};
use crate::motives::Motive;
use crate::poincare::{curve_moduli_poincare_rank2, flag_poincare, goettsche_coefficient, GradedDims};
use crate::profiles::{FactName, TriState, VarietyProfile};
use crate::rules::RuleId;

use FactName::*;
use TriState::{No, Yes};

/// Which half of the Hilbert-square theorem to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HilbertDirection {
    Forward,
    Backward,
    SurfaceCriterion,
}

impl HilbertDirection {
    pub fn rule(self) -> RuleId {
        match self {
            HilbertDirection::Forward => RuleId::HilbertSquareForward,
            HilbertDirection::Backward => RuleId::HilbertSquareBackward,
            HilbertDirection::SurfaceCriterion => RuleId::HilbertSquareCriterion,
        }
    }
}

impl FromStr for HilbertDirection {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "forward" => Ok(HilbertDirection::Forward),
            "backward" => Ok(HilbertDirection::Backward),
            "surface_criterion" => Ok(HilbertDirection::SurfaceCriterion),
            other => Err(format!("expected forward, backward or surface_criterion, got '{other}'")),
        }
    }
}

fn blank(dim: u32) -> VarietyProfile {
    VarietyProfile::new("", dim)
}

fn all_some<T>(xs: impl IntoIterator<Item = Option<T>>) -> Option<Vec<T>> {
    xs.into_iter().collect()
}

/// `X1 x .. x Xn`: Kunneth on both the complex and the real side.
pub fn product(xs: &[&VarietyProfile]) -> Result<Derivation> {
    let rule = RuleId::Product;
    if xs.is_empty() {
        return Err(Error::InvalidParameter {
            rule: rule.name().into(),
            detail: "product of an empty list".into(),
        });
    }
    if xs.len() == 1 {
        let mut d = Derivation::new(rule, xs[0].renamed(""));
        for &f in FactName::ALL {
            d.iff(f, 0, 0);
        }
        d.certificates.push((0, slot(Node::Input(0))));
        return d.settle(xs);
    }

    let mut out = blank(xs.iter().map(|x| x.dim()).sum());
    if let Some(sizes) = all_some(xs.iter().map(|x| Size::complex(x))) {
        let prod = sizes.iter().skip(1).fold(sizes[0].clone(), |acc, s| acc.mul(s));
        prod.set_complex(&mut out);
    }
    if let Some(sizes) = all_some(xs.iter().map(|x| Size::real(x))) {
        let prod = sizes.iter().skip(1).fold(sizes[0].clone(), |acc, s| acc.mul(s));
        prod.set_real(&mut out);
    }
    if let Some(cs) = all_some(xs.iter().map(|x| x.real_components())) {
        out.set_components(cs.iter().try_fold(1u64, |acc, &c| acc.checked_mul(c)));
    }

    // an empty factor makes the product empty, and the empty variety is maximal
    let empty = xs.iter().any(|x| x.complex_total().is_some_and(|t| t.is_zero()));
    if empty {
        out.set_complex_total(BigUint::zero());
        out.set_real_total(BigUint::zero());
    }
    let mut d = Derivation::new(rule, out);
    let n = xs.len();
    let iff_facts: &[FactName] = if empty { &[RealNonempty] } else { &[Maximal, RealNonempty] };
    for &f in iff_facts {
        let all_yes: Vec<_> = (0..n).map(|i| lit(Node::Input(i), f, Yes)).collect();
        d.clause(all_yes, lit(Node::Output(0), f, Yes));
        for i in 0..n {
            d.clause(vec![lit(Node::Input(i), f, No)], lit(Node::Output(0), f, No));
            d.clause(vec![lit(Node::Output(0), f, Yes)], lit(Node::Input(i), f, Yes));
            let mut others: Vec<_> = (0..n).filter(|&j| j != i).map(|j| lit(Node::Input(j), f, Yes)).collect();
            others.push(lit(Node::Output(0), f, No));
            d.clause(others, lit(Node::Input(i), f, No));
        }
    }
    for f in [B1Zero, H1TorsionFree, H2TorsionFree, TateMotive, RRational] {
        let all_yes: Vec<_> = (0..n).map(|i| lit(Node::Input(i), f, Yes)).collect();
        d.clause(all_yes, lit(Node::Output(0), f, Yes));
        if matches!(f, B1Zero | H1TorsionFree | H2TorsionFree) {
            for i in 0..n {
                d.clause(vec![lit(Node::Input(i), f, No)], lit(Node::Output(0), f, No));
            }
        }
    }
    d.certificates
        .push((0, Motive::Tensor((0..n).map(|i| slot(Node::Input(i))).collect())));
    d.settle(xs)
}

/// Shared bookkeeping for bundles with fibers of Tate type.
fn bundle(
    rule: RuleId,
    x: &VarietyProfile,
    fiber_complex: GradedDims,
    fiber_real_total: BigUint,
    fiber_dim: u32,
    assumption: String,
) -> Result<Derivation> {
    let mut out = blank(x.dim() + fiber_dim);
    if let Some(c) = Size::complex(x) {
        c.mul(&Size::Graded(fiber_complex.clone())).set_complex(&mut out);
    }
    if let Some(r) = Size::real(x) {
        r.ungraded().mul(&Size::Total(fiber_real_total)).set_real(&mut out);
    }
    out.set_components(x.real_components());
    let mut d = Derivation::new(rule, out);
    for f in [Maximal, RealNonempty, B1Zero, H1TorsionFree] {
        d.iff(f, 0, 0);
    }
    d.carry(TateMotive, 0, 0, &[Yes]);
    d.carry(RRational, 0, 0, &[Yes]);
    // h(E) = h(X) (x) h(fiber), the fiber being a sum of Tate objects
    let twists: Vec<i64> = fiber_complex
        .iter()
        .flat_map(|(deg, c)| std::iter::repeat_n(-i64::from(deg / 2), c.to_usize().unwrap_or(0)))
        .collect();
    let cert = if twists.len() == 1 {
        slot(Node::Input(0))
    } else {
        Motive::Sum(twists.into_iter().map(|k| slot(Node::Input(0)).twist(k)).collect())
    };
    d.certificates.push((0, cert));
    d.assumptions.push(assumption);
    d.settle(&[x])
}

/// `P(E)` for a real vector bundle `E` of rank `rank` on `X`.
pub fn projective_bundle(x: &VarietyProfile, rank: u32) -> Result<Derivation> {
    let rule = RuleId::ProjectiveBundle;
    if rank == 0 {
        return Err(Error::InvalidParameter {
            rule: rule.name().into(),
            detail: "rank must be at least 1".into(),
        });
    }
    let r = rank - 1;
    bundle(
        rule,
        x,
        GradedDims::geometric(r + 1, 2),
        BigUint::from(rank),
        r,
        format!("a real holomorphic vector bundle of rank {rank} exists on {}", x.id()),
    )
}

/// The bundle of flags of type `dims` in a real vector bundle of rank
/// `ambient` on `X`.
pub fn flag_bundle(x: &VarietyProfile, dims: &[u32], ambient: u32) -> Result<Derivation> {
    let rule = RuleId::FlagBundle;
    let complex = flag_poincare(dims, ambient, 2)?;
    let real = flag_poincare(dims, ambient, 1)?;
    let fiber_dim = complex.top_degree().unwrap_or(0) / 2;
    bundle(
        rule,
        x,
        complex,
        real.total(),
        fiber_dim,
        format!("a real holomorphic vector bundle of rank {ambient} exists on {}", x.id()),
    )
}

/// `Bl_Y X` along a smooth real center `Y` of codimension `codim`.
pub fn blow_up(x: &VarietyProfile, y: &VarietyProfile, codim: u32) -> Result<Derivation> {
    let rule = RuleId::BlowUp;
    if codim < 2 {
        return Err(Error::InvalidParameter {
            rule: rule.name().into(),
            detail: format!("codimension {codim} is below 2; such a blow-up is an isomorphism"),
        });
    }
    if y.dim() + codim != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{rule}: dim {} ({}) + codim {codim} != dim {} ({})",
            y.id(),
            y.dim(),
            x.id(),
            x.dim()
        )));
    }
    let mut out = blank(x.dim());
    if let (Some(cx), Some(cy)) = (Size::complex(x), Size::complex(y)) {
        let total = (1..codim).fold(cx, |acc, k| acc.add(&cy.shift(2 * k)));
        total.set_complex(&mut out);
    }
    let mut d = Derivation::new(rule, out);
    if y.value(RealNonempty).is_no() {
        // the real locus does not meet the center
        if let Some(r) = Size::real(x) {
            r.set_real(&mut d.outputs[0]);
        }
    }
    d.outputs[0].set_components(x.real_components());
    d.clause(
        vec![lit(Node::Input(0), Maximal, Yes), lit(Node::Input(1), Maximal, Yes)],
        lit(Node::Output(0), Maximal, Yes),
    );
    for f in [RealNonempty, B1Zero, H1TorsionFree] {
        d.iff(f, 0, 0);
    }
    d.carry(RRational, 0, 0, &[Yes]);
    d.clause(
        vec![lit(Node::Input(0), TateMotive, Yes), lit(Node::Input(1), TateMotive, Yes)],
        lit(Node::Output(0), TateMotive, Yes),
    );
    let mut parts = vec![slot(Node::Input(0))];
    parts.extend((1..codim).map(|k| slot(Node::Input(1)).twist(-i64::from(k))));
    d.certificates.push((0, Motive::Sum(parts)));
    d.assumptions
        .push(format!("{} is a smooth real subvariety of {} of codimension {codim}", y.id(), x.id()));
    d.settle(&[x, y])
}

/// Complex size of `X^[1,2] = Bl_diag(X x X)`.
fn nested_pair_size(x: &VarietyProfile) -> Option<Size> {
    let c = Size::complex(x)?;
    let d = x.dim();
    Some((1..d).fold(c.mul(&c), |acc, k| acc.add(&c.shift(2 * k))))
}

/// The Hilbert-square theorem and the connectedness criterion for surfaces.
///
/// * `Forward` takes `[X]` and returns `X^[1,2]`.
/// * `Backward` takes `[X, S2]` with `S2` standing for `X^[2]`, and returns
///   `X^[1,2]`, `X^[2,3]` and `X^[3]`.
/// * `SurfaceCriterion` takes a surface `[X]` and returns `X^[2]`.
pub fn hilbert_square_rules(inputs: &[&VarietyProfile], direction: HilbertDirection) -> Result<Derivation> {
    let rule = direction.rule();
    match direction {
        HilbertDirection::Forward => {
            arity(rule, inputs, 1)?;
            let x = inputs[0];
            require(rule, x, Maximal)?;
            if x.dim() == 0 {
                return Err(Error::DimensionMismatch(format!("{rule} needs a positive-dimensional input")));
            }
            let mut out = blank(2 * x.dim());
            if let Some(s) = nested_pair_size(x) {
                s.set_complex(&mut out);
            }
            let mut d = Derivation::new(rule, out);
            d.carry(Maximal, 0, 0, &[Yes]);
            d.carry(B1Zero, 0, 0, &[Yes, No]);
            d.carry(TateMotive, 0, 0, &[Yes]);
            let mut parts = vec![Motive::Tensor(vec![slot(Node::Input(0)), slot(Node::Input(0))])];
            parts.extend((1..x.dim()).map(|k| slot(Node::Input(0)).twist(-i64::from(k))));
            d.certificates.push((0, Motive::Sum(parts)));
            d.settle(inputs)
        }
        HilbertDirection::Backward => {
            arity(rule, inputs, 2)?;
            let (x, s2) = (inputs[0], inputs[1]);
            require(rule, s2, Maximal)?;
            require(rule, x, RealNonempty)?;
            if s2.dim() != 2 * x.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "{rule}: {} has dimension {}, a Hilbert square of {} has dimension {}",
                    s2.id(),
                    s2.dim(),
                    x.id(),
                    2 * x.dim()
                )));
            }
            let mut nested12 = blank(2 * x.dim());
            if let Some(s) = nested_pair_size(x) {
                s.set_complex(&mut nested12);
            }
            let mut d = Derivation::new(rule, nested12);
            d.outputs.push(blank(3 * x.dim()));
            d.outputs.push(blank(3 * x.dim()));
            d.suffixes = super::table::output_suffixes(rule).to_vec();
            let premises = vec![lit(Node::Input(1), Maximal, Yes), lit(Node::Input(0), RealNonempty, Yes)];
            d.clause(premises.clone(), lit(Node::Input(0), Maximal, Yes));
            for j in 0..3 {
                d.clause(premises.clone(), lit(Node::Output(j), Maximal, Yes));
            }
            d.assumptions
                .push(format!("{} is the Hilbert square of {}", s2.id(), x.id()));
            d.settle(inputs)
        }
        HilbertDirection::SurfaceCriterion => {
            arity(rule, inputs, 1)?;
            let x = inputs[0];
            require_dim(rule, x, &[2])?;
            require(rule, x, B1Zero)?;
            require(rule, x, Maximal)?;
            let components = x.real_components().ok_or_else(|| Error::RuleNotApplicable {
                rule: rule.name().into(),
                missing: format!("real component count of {}", x.id()),
            })?;
            let mut out = blank(4);
            if star(x) {
                if let Some(b) = surface_betti(x) {
                    out.set_complex_betti(goettsche_coefficient(b, 2));
                }
            }
            let mut d = Derivation::new(rule, out);
            d.clause(
                vec![lit(Node::Input(0), B1Zero, Yes), lit(Node::Input(0), Maximal, Yes)],
                lit(Node::Output(0), Maximal, TriState::from_bool(components == 1)),
            );
            star_clauses(&mut d, rule.citation());
            d.notes.push(format!(
                "the connectedness criterion is applied with the extra hypothesis that {} is maximal",
                x.id()
            ));
            d.settle(inputs)
        }
    }
}

/// Condition (*): `b1 = 0` and `H^2(S, Z)` without 2-torsion.
fn star(s: &VarietyProfile) -> bool {
    s.value(B1Zero).is_yes() && s.value(H2TorsionFree).is_yes()
}

fn star_clauses(d: &mut Derivation, citation: &'static str) {
    let premises = vec![lit(Node::Input(0), B1Zero, Yes), lit(Node::Input(0), H2TorsionFree, Yes)];
    for f in [B1Zero, H2TorsionFree] {
        d.clause_cited(premises.clone(), lit(Node::Output(0), f, Yes), citation);
    }
}

fn surface_betti(s: &VarietyProfile) -> Option<[u64; 5]> {
    let b = s.complex_betti()?;
    if b.top_degree().is_some_and(|t| t > 4) {
        return None;
    }
    let mut out = [0u64; 5];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = b.coeff(i as u32).to_u64()?;
    }
    Some(out)
}

/// `S^[n]` for a surface `S`. `guard` bounds `n` as the series truncation.
pub fn hilbert_scheme_surface(s: &VarietyProfile, n: u32, guard: usize) -> Result<Derivation> {
    let rule = RuleId::HilbertScheme;
    require_dim(rule, s, &[2])?;
    if n == 0 {
        return Err(Error::InvalidParameter {
            rule: rule.name().into(),
            detail: "n must be at least 1".into(),
        });
    }
    if n as usize > guard {
        return Err(Error::TruncationGuard {
            requested: n as usize,
            limit: guard,
        });
    }
    let [c_star, c_tate, c_betti] = [0, 1, 2].map(|i| rule.citations()[i]);
    if n == 1 {
        let mut d = Derivation::new(rule, s.renamed(""));
        d.citation = c_betti;
        for &f in FactName::ALL {
            d.iff(f, 0, 0);
        }
        d.certificates.push((0, slot(Node::Input(0))));
        return d.settle(&[s]);
    }
    let mut out = blank(2 * n);
    if star(s) {
        if let Some(b) = surface_betti(s) {
            out.set_complex_betti(goettsche_coefficient(b, n as usize));
        }
    }
    let mut d = Derivation::new(rule, out);
    d.citation = if star(s) && s.value(C1Maximal).is_yes() {
        c_star
    } else if s.value(TateMotive).is_yes() {
        c_tate
    } else {
        c_betti
    };
    d.clause_cited(
        vec![
            lit(Node::Input(0), B1Zero, Yes),
            lit(Node::Input(0), H2TorsionFree, Yes),
            lit(Node::Input(0), C1Maximal, Yes),
        ],
        lit(Node::Output(0), Maximal, Yes),
        c_star,
    );
    for f in [Maximal, TateMotive] {
        d.clause_cited(vec![lit(Node::Input(0), TateMotive, Yes)], lit(Node::Output(0), f, Yes), c_tate);
    }
    d.clause_cited(
        vec![lit(Node::Input(0), RealNonempty, Yes)],
        lit(Node::Output(0), RealNonempty, Yes),
        c_betti,
    );
    star_clauses(&mut d, c_betti);
    d.settle(&[s])
}

/// `M_C(n, d)`, stable bundles of coprime rank and degree on a curve.
pub fn bundle_moduli(c: &VarietyProfile, rank: i64, degree: i64) -> Result<Derivation> {
    let rule = RuleId::BundleModuli;
    let (g, dim) = moduli_dims(rule, c, rank, degree, 1, 1)?;
    let mut out = blank(dim);
    match rank {
        1 => out.set_complex_betti(GradedDims::from_dense([1u32, 1]).pow(2 * g)),
        2 => out.set_complex_betti(curve_moduli_poincare_rank2(g)?),
        _ => {}
    }
    let mut d = Derivation::new(rule, out);
    converse_clauses(&mut d);
    d.settle(&[c])
}

/// Checks coprimality and genus, returning `(g, a n^2 (g - 1) + b)`.
pub(super) fn moduli_dims(
    rule: RuleId,
    c: &VarietyProfile,
    rank: i64,
    degree: i64,
    a: u64,
    b: u64,
) -> Result<(u32, u32)> {
    if rank < 1 {
        return Err(Error::InvalidParameter {
            rule: rule.name().into(),
            detail: format!("rank {rank} must be positive"),
        });
    }
    if rank.gcd(&degree) != 1 {
        return Err(Error::NotCoprime { rank, degree });
    }
    let g = genus(rule, c)?;
    if g < 2 {
        return Err(Error::InvalidParameter {
            rule: rule.name().into(),
            detail: format!("{} has genus {g}; need g >= 2", c.id()),
        });
    }
    let n = rank as u64;
    let dim = n
        .checked_mul(n)
        .and_then(|n2| n2.checked_mul(u64::from(g - 1)))
        .and_then(|v| v.checked_mul(a))
        .and_then(|v| v.checked_add(b))
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::OutOfRange(format!("moduli dimension for rank {rank} overflows")))?;
    Ok((g, dim))
}

/// Forward, converse (needs `C(R)` nonempty) and contrapositive clauses
/// between a curve (input 0) and a moduli space (output 0).
pub(super) fn converse_clauses(d: &mut Derivation) {
    d.carry(Maximal, 0, 0, &[Yes]);
    d.clause(
        vec![lit(Node::Output(0), Maximal, Yes), lit(Node::Input(0), RealNonempty, Yes)],
        lit(Node::Input(0), Maximal, Yes),
    );
    d.clause(
        vec![lit(Node::Input(0), Maximal, No), lit(Node::Input(0), RealNonempty, Yes)],
        lit(Node::Output(0), Maximal, No),
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make_curve, make_point, make_projective_space, make_surface, SurfaceName};

    fn totals(p: &VarietyProfile) -> (Option<u64>, Option<u64>) {
        (p.complex_total().and_then(|t| t.to_u64()), p.real_total().and_then(|t| t.to_u64()))
    }

    #[test]
    fn empty_factor_gives_an_empty_maximal_product() {
        let mut empty = VarietyProfile::new("E", 0);
        empty.set_complex_total(BigUint::zero());
        empty.set_real_total(BigUint::zero());
        let c = make_curve(2, 1).unwrap();
        let d = product(&[&empty, &c]).unwrap();
        assert!(d.clauses.iter().all(|cl| cl.conclusion.fact != Maximal));
        let p = d.into_output();
        assert_eq!(totals(&p), (Some(0), Some(0)));
        assert_eq!(p.value(Maximal), Yes);
    }

    #[test]
    fn product_examples() {
        let e = make_curve(1, 2).unwrap();
        let p = product(&[&e, &e]).unwrap().into_output();
        assert_eq!(totals(&p), (Some(16), Some(16)));
        assert_eq!(p.value(Maximal), Yes);

        let c = make_curve(2, 1).unwrap();
        let p1 = make_projective_space(1);
        let p = product(&[&c, &p1]).unwrap().into_output();
        assert_eq!(totals(&p), (Some(12), Some(4)));
        assert_eq!(p.value(Maximal), No);

        let single = product(&[&c]).unwrap().into_output();
        assert_eq!(single, c.renamed(""));
    }

    #[test]
    fn product_no_on_any_factor() {
        let x = VarietyProfile::new("X", 1).assert_fact(Maximal, No, "t").unwrap();
        let y = VarietyProfile::new("Y", 1);
        let p = product(&[&x, &y]).unwrap().into_output();
        assert_eq!(p.value(Maximal), No);
    }

    #[test]
    fn projective_bundle_examples() {
        let p1 = make_projective_space(1);
        let e = projective_bundle(&p1, 2).unwrap().into_output();
        assert_eq!(totals(&e), (Some(4), Some(4)));
        assert_eq!(e.dim(), 2);
        let c = make_curve(2, 3).unwrap();
        let e = projective_bundle(&c, 3).unwrap().into_output();
        assert_eq!(totals(&e), (Some(18), Some(18)));
        assert_eq!(e.value(Maximal), Yes);
        let same = projective_bundle(&c, 1).unwrap().into_output();
        assert_eq!(totals(&same), totals(&c));
        assert_eq!(same.complex_betti(), c.complex_betti());
    }

    #[test]
    fn flag_bundle_examples() {
        let gr = flag_bundle(&make_point(), &[2], 4).unwrap().into_output();
        assert_eq!(totals(&gr), (Some(6), Some(6)));
        assert_eq!(gr.dim(), 4);
        let fl = flag_bundle(&make_projective_space(1), &[1, 2, 3], 3).unwrap().into_output();
        assert_eq!(totals(&fl), (Some(12), Some(12)));
        assert_eq!(fl.dim(), 4);
        let c = make_curve(2, 3).unwrap();
        let same = flag_bundle(&c, &[], 3).unwrap().into_output();
        assert_eq!(same.complex_betti(), c.complex_betti());
        assert!(flag_bundle(&c, &[2, 1], 3).is_err());
    }

    #[test]
    fn blow_up_examples() {
        let p2 = make_projective_space(2);
        let b = blow_up(&p2, &make_point(), 2).unwrap().into_output();
        assert_eq!(b.complex_betti().unwrap().to_string(), "1 + 2t^2 + t^4");
        assert_eq!(totals(&b), (Some(4), Some(4)));

        let mut pair = VarietyProfile::new("pair", 0);
        pair.set_complex_total(2u32.into());
        pair.set_real_total(0u32.into());
        pair.normalize().unwrap();
        let b = blow_up(&p2, &pair, 2).unwrap().into_output();
        assert_eq!(totals(&b), (Some(5), Some(3)));
        assert_eq!(b.value(Maximal), No);

        let b = blow_up(&make_projective_space(3), &make_curve(1, 2).unwrap(), 2)
            .unwrap()
            .into_output();
        assert_eq!(totals(&b), (Some(8), Some(8)));
        assert!(matches!(blow_up(&p2, &make_point(), 3), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn hilbert_square_examples() {
        let p2 = make_surface(&SurfaceName::P2).unwrap();
        let d = hilbert_square_rules(&[&p2], HilbertDirection::Forward).unwrap();
        assert_eq!(totals(d.output()), (Some(12), Some(12)));

        let k3 = make_surface(&SurfaceName::K3 {
            real_total: 24,
            components: 2,
        })
        .unwrap();
        let d = hilbert_square_rules(&[&k3], HilbertDirection::SurfaceCriterion).unwrap();
        assert_eq!(d.output().value(Maximal), No);

        let d = hilbert_square_rules(&[&p2], HilbertDirection::SurfaceCriterion).unwrap();
        assert_eq!(d.output().value(Maximal), Yes);
        assert_eq!(totals(d.output()), (Some(9), Some(9)));

        let c = make_curve(2, 1).unwrap();
        assert!(matches!(
            hilbert_square_rules(&[&c], HilbertDirection::Forward),
            Err(Error::RuleNotApplicable { .. })
        ));
    }

    #[test]
    fn hilbert_scheme_examples() {
        let p2 = make_surface(&SurfaceName::P2).unwrap();
        let h = hilbert_scheme_surface(&p2, 3, 16).unwrap();
        assert_eq!(totals(h.output()), (Some(22), Some(22)));
        assert_eq!(h.output().value(Maximal), Yes);
        assert_eq!(h.citation, RuleId::HilbertScheme.citations()[0]);
        let same = hilbert_scheme_surface(&p2, 1, 16).unwrap().into_output();
        assert_eq!(same, p2.renamed(""));

        let k3 = make_surface(&SurfaceName::K3 {
            real_total: 24,
            components: 2,
        })
        .unwrap();
        let h = hilbert_scheme_surface(&k3, 2, 16).unwrap().into_output();
        assert_eq!(h.value(Maximal), TriState::Unknown);
        assert!(matches!(
            hilbert_scheme_surface(&p2, 20, 16),
            Err(Error::TruncationGuard { requested: 20, limit: 16 })
        ));
    }

    #[test]
    fn bundle_moduli_examples() {
        let c = make_curve(2, 3).unwrap();
        let m = bundle_moduli(&c, 2, 1).unwrap().into_output();
        assert_eq!(m.dim(), 5);
        assert_eq!(m.value(Maximal), Yes);
        assert_eq!(m.complex_betti().unwrap().top_degree(), Some(10));

        let c1 = make_curve(2, 1).unwrap();
        let m = bundle_moduli(&c1, 2, 1).unwrap().into_output();
        assert_eq!(m.value(Maximal), No);
        assert_eq!(m.fact(Maximal).provenance.as_deref(), Some(RuleId::BundleModuli.citation()));

        assert!(matches!(bundle_moduli(&c, 2, 2), Err(Error::NotCoprime { rank: 2, degree: 2 })));
        let e = make_curve(1, 2).unwrap();
        assert!(matches!(bundle_moduli(&e, 2, 1), Err(Error::InvalidParameter { .. })));
    }
}
