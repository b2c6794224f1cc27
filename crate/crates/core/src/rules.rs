//! The rule table: every generator and construction the engine knows, with
//! the citation each trace line carries.

use std::fmt;
use std::str::FromStr;

macro_rules! rule_table {
    ($($variant:ident => $name:literal, [$($cite:literal),+ $(,)?];)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum RuleId {
            $($variant),*
        }

        impl RuleId {
            pub const ALL: &'static [RuleId] = &[$(RuleId::$variant),*];

            pub fn name(self) -> &'static str {
                match self {
                    $(RuleId::$variant => $name),*
                }
            }

            /// Accepted citations; the first is the rule's primary one.
            pub fn citations(self) -> &'static [&'static str] {
                match self {
                    $(RuleId::$variant => &[$($cite),+]),*
                }
            }
        }

        impl FromStr for RuleId {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(RuleId::$variant),)*
                    other => Err(format!("unknown rule '{other}'")),
                }
            }
        }
    };
}

rule_table! {
    Point => "point", ["point: one class over C and over R"];
    ProjectiveSpace => "projective_space", ["projective space: b*(P^r(C)) = b*(P^r(R)) = r + 1"];
    Curve => "curve", ["Harnack-Klein: a genus g real curve has at most g + 1 circles"];
    AbelianVariety => "abelian_variety", ["real abelian variety: real locus (R/Z)^q x (Z/2)^(q - lambda1)"];
    Surface => "surface", ["catalog of real surfaces"];
    Custom => "custom", ["user-supplied profile"];
    BlowUpPoint => "blow_up_point", ["real surface blow-up: a real point or a pair of conjugate points"];
    Product => "product", ["product lemma: X1 x .. x Xn is maximal iff every Xi is maximal"];
    ProjectiveBundle => "projective_bundle", ["projective bundle: P(E) is maximal iff X is maximal"];
    FlagBundle => "flag_bundle", ["flag bundle: Fl(E) is maximal iff X is maximal"];
    BlowUp => "blow_up", ["blow-up: X and Y maximal imply Bl_Y X maximal"];
    HilbertSquareForward => "hilbert_square_forward", ["Hilbert square (i): X maximal implies X^[1,2] maximal"];
    HilbertSquareBackward => "hilbert_square_backward", [
        "Hilbert square (ii): X^[2] maximal and X(R) nonempty imply X, X^[1,2], X^[2,3], X^[3] maximal"
    ];
    HilbertSquareCriterion => "hilbert_square_criterion", [
        "Kharlamov-Rasdeaconu: for b1 = 0, X^[2] is maximal iff X(R) is connected"
    ];
    HilbertScheme => "hilbert_scheme", [
        "Hilbert schemes of surfaces: (*) and c1-maximal imply S^[n] maximal",
        "Hilbert schemes of surfaces with Tate motives are maximal",
        "Hilbert schemes of surfaces: Betti numbers only"
    ];
    BundleModuli => "bundle_moduli", [
        "stable bundles on curves: M_C(n, d) is maximal iff C is (converse needs C(R) nonempty)"
    ];
    SymPower => "sym_power", ["Franz: Gamma-products of a maximal variety are maximal"];
    GammaProduct => "gamma_product", ["Franz: Gamma-products of a maximal variety are maximal"];
    FlipFlop => "flip_flop", ["standard flips and flops along a maximal center preserve maximality"];
    FultonMacPherson => "fulton_macpherson", ["Fulton-MacPherson X[n]: 2^n - n - 1 blow-ups of a maximal X^n"];
    OddDegreeImage => "odd_degree_image", ["surjection with an odd-degree multisection: X maximal implies Y maximal"];
    Albanese => "albanese", ["Albanese and Picard varieties of a maximal X with H_1(X, Z) torsion free"];
    Picard => "picard", ["Albanese and Picard varieties of a maximal X with H_1(X, Z) torsion free"];
    Jacobian => "jacobian", ["Jacobian: C maximal iff J(C) maximal (converse needs C(R) nonempty)"];
    Cubic3Fano => "cubic3_fano", ["cubic threefold: Fano surface of lines and J(X) of a maximal X are maximal"];
    Cubic3Ij => "cubic3_ij", ["cubic threefold: Fano surface of lines and J(X) of a maximal X are maximal"];
    Cubic5Fano => "cubic5_fano", ["cubic fivefold: Fano variety of planes and J(X) of a maximal X are maximal"];
    Cubic5Ij => "cubic5_ij", ["cubic fivefold: Fano variety of planes and J(X) of a maximal X are maximal"];
    Quartic3Fano => "quartic3_fano", ["quartic threefold: Fano variety of conics and J(X) of a maximal X are maximal"];
    Quartic3Ij => "quartic3_ij", ["quartic threefold: Fano variety of conics and J(X) of a maximal X are maximal"];
    GushelMukaiFano => "gushel_mukai_fano", ["Gushel-Mukai: double EPW surface and J(X) of a maximal X are maximal"];
    GushelMukaiIj => "gushel_mukai_ij", ["Gushel-Mukai: double EPW surface and J(X) of a maximal X are maximal"];
    ParabolicModuli => "parabolic_moduli", ["parabolic bundles with full flags over a maximal curve are maximal"];
    HiggsModuli => "higgs_moduli", ["Higgs bundles: H_C(n, d) is maximal iff C is (converse needs C(R) nonempty)"];
    P2SheafModuli => "p2_sheaf_moduli", ["sheaves on P^2 with gcd(r, c1, c1(c1+1)/2 - c2) = 1 are maximal"];
    PoissonSheafModuli => "poisson_sheaf_moduli", [
        "sheaves on a K-maximal Poisson surface are maximal",
        "sheaves on a maximal R-rational Poisson surface are maximal"
    ];
    SetFact => "set", ["user assertion"];
}

impl RuleId {
    pub fn citation(self) -> &'static str {
        self.citations()[0]
    }

    pub fn is_generator(self) -> bool {
        matches!(
            self,
            RuleId::Point
                | RuleId::ProjectiveSpace
                | RuleId::Curve
                | RuleId::AbelianVariety
                | RuleId::Surface
                | RuleId::Custom
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Citations for facts derived outside any single rule application.
pub const CITE_MOTIVATED: &str = "motivated by equivariantly formal motives implies maximal";
pub const CITE_CONTRAPOSITIVE: &str = "contrapositive of motivation: Y motivated by X alone and Y not maximal";
