mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use maxcalc::cli::{parse_script, PrintItem, Script, SeriesSource, Statement};
use maxcalc::constructions::{Call, Value};
use maxcalc::generators::{make_abelian_variety, make_curve};
use maxcalc::motives::{parse_motive, DecompositionCertificate, Motive};
use maxcalc::poincare::{goettsche_coefficient, qbinomial};
use maxcalc::{FactName, GradedDims, Session, TriState};

fn poly() -> impl Strategy<Value = GradedDims> {
    prop::collection::vec(0u32..6, 0..7).prop_map(GradedDims::from_dense)
}

/// Inversions of every 0/1 word with `k` ones among `n` letters.
fn inversion_counts(k: u32, n: u32) -> Vec<u64> {
    let mut counts = vec![0u64; (k * (n - k) + 1) as usize];
    for word in 0u32..(1 << n) {
        if word.count_ones() != k {
            continue;
        }
        let mut inv = 0;
        let mut ones_seen = 0;
        for i in (0..n).rev() {
            if word >> i & 1 == 1 {
                ones_seen += 1;
            } else {
                inv += ones_seen;
            }
        }
        counts[inv as usize] += 1;
    }
    counts
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #[test]
    fn totals_multiply(a in poly(), b in poly()) {
        prop_assert_eq!(a.mul(&b).total(), a.total() * b.total());
    }

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn shifts_compose(a in poly(), j in 0u32..5, k in 0u32..5) {
        prop_assert_eq!(a.shift(j + k), a.shift(j).shift(k));
        prop_assert_eq!(a.shift(j).total(), a.total());
    }

    #[test]
    fn gaussian_binomials(n in 0i64..12, k in 0i64..12, step in 1u32..3) {
        prop_assume!(k <= n);
        let q = qbinomial(k, n, step).unwrap();
        prop_assert!(q.is_palindromic());
        prop_assert_eq!(q.total(), BigUint::from(binomial(n as u64, k as u64)));
        prop_assert_eq!(&q, &qbinomial(n - k, n, step).unwrap());
        if step == 1 {
            let want = inversion_counts(k as u32, n as u32);
            prop_assert_eq!(q.to_dense_u64().unwrap(), want);
        }
    }

    #[test]
    fn generators_respect_smith_thom(g in 0u32..12, s in 0u32..14, q in 0u32..8, l in 0u32..8) {
        match make_curve(g, s) {
            Ok(c) => {
                prop_assert!(s <= g + 1);
                c.check_invariants().unwrap();
                prop_assert_eq!(c.value(FactName::Maximal), TriState::from_bool(s == g + 1));
            }
            Err(_) => prop_assert!(s > g + 1),
        }
        match make_abelian_variety(q, l) {
            Ok(a) => {
                a.check_invariants().unwrap();
                prop_assert_eq!(a.value(FactName::Maximal), TriState::from_bool(l == 0));
            }
            Err(_) => prop_assert!(l > q),
        }
    }
}

#[test]
fn point_series_counts_partitions() {
    for n in 0..=10u32 {
        let c = goettsche_coefficient([1, 0, 0, 0, 0], n as usize);
        assert_eq!(c.total(), BigUint::from(common::partitions(n)), "n = {n}");
    }
}

fn motive(depth: u32) -> BoxedStrategy<Motive> {
    let leaf = prop_oneof![
        "[A-Z][a-z0-9]{0,3}".prop_map(Motive::Variety),
        (-3i64..4).prop_map(Motive::Tate),
    ];
    if depth == 0 {
        return leaf.boxed();
    }
    let inner = motive(depth - 1);
    prop_oneof![
        2 => leaf,
        1 => prop::collection::vec(inner.clone(), 2..4).prop_map(Motive::Sum),
        1 => prop::collection::vec(inner.clone(), 2..4).prop_map(Motive::Tensor),
        1 => (inner.clone(), -3i64..4).prop_map(|(m, n)| m.twist(n)),
        1 => inner.prop_map(|m| Motive::SummandOf { parent: Box::new(m), cert: None }),
    ]
    .boxed()
}

proptest! {
    #[test]
    fn motives_print_and_parse_back(m in motive(3)) {
        let once = parse_motive(&m.to_string()).unwrap();
        let twice = parse_motive(&once.to_string()).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(once.atoms(), m.atoms());
    }
}

const IDS: [&str; 4] = ["C", "S", "X1", "Y.b"];

fn call_strategy() -> impl Strategy<Value = Call> {
    let name = prop::sample::select(vec!["curve", "product", "projective_bundle", "hilbert_scheme", "custom"]);
    let value = prop_oneof![
        (-5i64..20).prop_map(Value::Int),
        prop::sample::select(vec!["P2", "real", "backward"]).prop_map(|s| Value::Ident(s.to_string())),
        prop::collection::vec(0i64..5, 0..4).prop_map(Value::List),
    ];
    let keys = prop::sample::subsequence(vec!["genus", "rank", "n", "dims", "name"], 0..3);
    (name, prop::sample::subsequence(IDS.to_vec(), 0..3), keys, prop::collection::vec(value, 3)).prop_map(
        |(name, inputs, keys, values)| {
            let mut c = Call::new(name);
            for i in inputs {
                c = c.input(i);
            }
            for (k, v) in keys.into_iter().zip(values) {
                c = c.param(k, v);
            }
            c
        },
    )
}

fn statement() -> impl Strategy<Value = Statement> {
    let id = prop::sample::select(IDS.to_vec()).prop_map(String::from);
    let fact = prop::sample::select(FactName::ALL.to_vec());
    let tri = prop::sample::select(vec![TriState::Yes, TriState::No, TriState::Unknown]);
    prop_oneof![
        (id.clone(), fact.clone(), prop::sample::select(vec![TriState::Yes, TriState::No]), "[a-z ]{0,12}").prop_map(
            |(id, fact, value, c)| Statement::Set { id, fact, value, citation: c.trim().to_string() }
        ),
        (id.clone(), fact, tri).prop_map(|(id, fact, expected)| Statement::AssertFact { id, fact, expected }),
        (call_strategy(), any::<bool>()).prop_map(|(call, expected)| Statement::AssertApplicable { call, expected }),
        id.clone().prop_map(|i| Statement::Print(PrintItem::Betti(i))),
        id.clone().prop_map(|i| Statement::Print(PrintItem::Trace(i))),
        (0usize..9).prop_map(|n| Statement::Print(PrintItem::Series { surface: SeriesSource::Named("P2".into()), upto: n })),
        (prop::array::uniform5(0u64..9), 0usize..9)
            .prop_map(|(b, n)| Statement::Print(PrintItem::Series { surface: SeriesSource::Betti(b), upto: n })),
        (id.clone(), id).prop_map(|(a, b)| Statement::Cert(DecompositionCertificate::new(
            a,
            Motive::Sum(vec![Motive::Variety(b), Motive::Tate(-1)]),
            "synthetic"
        ))),
    ]
}

proptest! {
    #[test]
    fn scripts_round_trip(body in prop::collection::vec(statement(), 0..12)) {
        // define every id first so name checks pass
        let mut statements: Vec<Statement> = IDS
            .iter()
            .map(|id| Statement::Variety { id: id.to_string(), call: Call::new("custom").int("dim", 2) })
            .collect();
        statements.extend(body.into_iter().filter(|s| match s {
            Statement::AssertApplicable { call, .. } => call.inputs.iter().collect::<BTreeSet<_>>().len() == call.inputs.len(),
            _ => true,
        }));
        let lines = (1..=statements.len()).collect();
        let script = Script { statements, lines };
        let parsed = parse_script(&script.to_string()).unwrap();
        prop_assert_eq!(&parsed.statements, &script.statements);
        let again = parse_script(&parsed.to_string()).unwrap();
        prop_assert_eq!(again, parsed);
    }
}

fn session_call() -> impl Strategy<Value = (u8, u8, u8)> {
    (0u8..9, any::<u8>(), any::<u8>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn traces_replay_byte_for_byte(steps in prop::collection::vec(session_call(), 1..10)) {
        let mut s = Session::new();
        let mut ids: Vec<String> = Vec::new();
        for (i, (kind, a, b)) in steps.into_iter().enumerate() {
            let pick = |k: u8| ids.get(k as usize % ids.len().max(1)).cloned();
            let call = match (kind, pick(a), pick(b)) {
                (0, ..) => Call::new("projective_space").int("r", i64::from(a % 4)),
                (1, ..) => Call::new("curve").int("genus", i64::from(a % 4)).int("circles", i64::from(b % 5)),
                (2, ..) => Call::new("surface").ident("name", ["P2", "P1xP1", "B1"][a as usize % 3]),
                (3, Some(x), Some(y)) => Call::new("product").input(x).input(y),
                (4, Some(x), _) => Call::new("projective_bundle").input(x).int("rank", i64::from(a % 3 + 1)),
                (5, Some(x), _) => Call::new("hilbert_scheme").input(x).int("n", i64::from(b % 4 + 1)),
                (6, Some(x), _) => Call::new("jacobian").input(x),
                (7, Some(x), _) => Call::new("hilbert_square").input(x),
                (8, Some(x), _) => {
                    let id = ids.iter().position(|v| *v == x).unwrap();
                    let _ = s.set_fact(&ids[id], FactName::C1Maximal, TriState::from_bool(b % 2 == 0), "asserted");
                    continue;
                }
                _ => Call::new("point"),
            };
            let id = format!("x{i}");
            if let Ok(outs) = s.define(&id, &call) {
                ids.extend(outs);
            }
        }
        let text = s.trace().to_text();
        prop_assert!(s.trace().check().is_ok());
        let r = Session::replay(&text, false, 16).unwrap();
        prop_assert_eq!(r.trace().to_text(), text);
        let a: Vec<_> = s.profiles().cloned().collect();
        let b: Vec<_> = r.profiles().cloned().collect();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn motivic_and_direct_derivations_agree() {
    let mut s = Session::new();
    let gens = ["pt", "P1", "P2", "P3"];
    s.define("pt", &Call::new("point")).unwrap();
    for r in 1..=3 {
        s.define(&format!("P{r}"), &Call::new("projective_space").int("r", r)).unwrap();
    }
    s.define("B", &Call::new("blow_up").input("P3").input("P1")).unwrap();
    s.define("Bp", &Call::new("blow_up").input("P2").input("pt")).unwrap();
    s.define("F", &Call::new("flag_bundle").input("P2").param("dims", Value::List(vec![1, 2])).int("ambient", 3))
        .unwrap();
    s.define("E", &Call::new("projective_bundle").input("P1").int("rank", 3)).unwrap();
    let gens: BTreeSet<String> = gens.iter().map(|g| g.to_string()).collect();
    for id in ["B", "Bp", "F", "E"] {
        let m = s.motivated_by(id, &gens);
        assert_eq!(m.verdict, TriState::Yes, "{id}");
        assert_eq!(s.profile(id).unwrap().value(FactName::Maximal), TriState::Yes, "{id}");
        assert_eq!(s.profile(id).unwrap().value(FactName::TateMotive), TriState::Yes, "{id}");
    }
}
