use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum TriState {
    Yes,
    No,
    #[default]
    Unknown,
}

impl TriState {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriState::Yes
        } else {
            TriState::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == TriState::Yes
    }

    pub fn is_no(self) -> bool {
        self == TriState::No
    }

    pub fn is_known(self) -> bool {
        self != TriState::Unknown
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::Unknown => "unknown",
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TriState {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "yes" | "true" => Ok(TriState::Yes),
            "no" | "false" => Ok(TriState::No),
            "unknown" => Ok(TriState::Unknown),
            other => Err(format!("expected yes, no or unknown, got '{other}'")),
        }
    }
}

/// A tri-state value together with the rule that settled it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Fact {
    pub value: TriState,
    pub provenance: Option<String>,
}

impl Fact {
    pub fn provenance_or_default(&self) -> &str {
        self.provenance.as_deref().unwrap_or("unrecorded")
    }
}

macro_rules! fact_names {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum FactName {
            $($variant),*
        }

        impl FactName {
            pub const ALL: &'static [FactName] = &[$(FactName::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(FactName::$variant => $name),*
                }
            }
        }

        impl FromStr for FactName {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(FactName::$variant),)*
                    other => Err(format!("unknown fact '{other}'")),
                }
            }
        }
    };
}

fact_names! {
    RealNonempty => "real_nonempty",
    B1Zero => "b1_zero",
    H2TorsionFree => "h2_torsion_free",
    H1TorsionFree => "h1_torsion_free",
    C1Maximal => "c1_maximal",
    KMaximal => "k_maximal",
    RRational => "r_rational",
    TateMotive => "tate_motive",
    EquivariantlyFormal => "equivariantly_formal",
    Maximal => "maximal",
}

impl FactName {
    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for FactName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One [`Fact`] per [`FactName`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactTable([Fact; 10]);

impl FactTable {
    pub fn get(&self, name: FactName) -> &Fact {
        &self.0[name.index()]
    }

    pub(crate) fn slot(&mut self, name: FactName) -> &mut Fact {
        &mut self.0[name.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (FactName, &Fact)> {
        FactName::ALL.iter().map(move |&n| (n, self.get(n)))
    }
}
