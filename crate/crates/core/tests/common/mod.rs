//! Test oracles, written without the library's algebra.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::Rng;

/// Dense series in q (outer) and t (inner), kept up to q^n and t^(4n).
type Bi = Vec<Vec<i128>>;

fn bi_one(n: usize) -> Bi {
    let mut s = vec![vec![0i128; 4 * n + 1]; n + 1];
    s[0][0] = 1;
    s
}

fn bi_mul(a: &Bi, b: &Bi) -> Bi {
    let (qn, tn) = (a.len(), a[0].len());
    let mut out = vec![vec![0i128; tn]; qn];
    for i in 0..qn {
        for j in 0..tn {
            if a[i][j] == 0 {
                continue;
            }
            for k in 0..qn - i {
                for l in 0..tn - j {
                    out[i + k][j + l] += a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// `1 + t^d q^m`.
fn bi_binomial(n: usize, d: usize, m: usize) -> Bi {
    let mut s = bi_one(n);
    if m <= n && d <= 4 * n {
        s[m][d] += 1;
    }
    s
}

/// `1 / (1 - t^d q^m)` as the geometric series.
fn bi_geometric(n: usize, d: usize, m: usize) -> Bi {
    let mut s = bi_one(n);
    let mut k = 1;
    while k * m <= n && k * d <= 4 * n {
        s[k * m][k * d] = 1;
        k += 1;
    }
    s
}

/// Goettsche's product, expanded by multiplying one factor at a time,
/// every power written out as repeated multiplication.
pub fn goettsche_oracle(b: [u32; 5], n: usize) -> Vec<Vec<i128>> {
    let mut acc = bi_one(n);
    for m in 1..=n {
        let factors = [
            (b[1], 2 * m - 1, false),
            (b[3], 2 * m + 1, false),
            (b[0], 2 * m - 2, true),
            (b[2], 2 * m, true),
            (b[4], 2 * m + 2, true),
        ];
        for (power, d, inverse) in factors {
            let f = if inverse { bi_geometric(n, d, m) } else { bi_binomial(n, d, m) };
            for _ in 0..power {
                acc = bi_mul(&acc, &f);
            }
        }
    }
    acc
}

/// Number of partitions of `n`, by counting nonincreasing sequences.
pub fn partitions(n: u32) -> u64 {
    fn count(n: u32, max: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|k| count(n - k, k)).sum()
    }
    count(n, n)
}

fn series_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len();
    let mut out = vec![0i128; n];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_pow(a: &[i128], e: usize) -> Vec<i128> {
    let mut out = vec![0i128; a.len()];
    out[0] = 1;
    for _ in 0..e {
        out = series_mul(&out, a);
    }
    out
}

/// `1 / (1 - t^d)` up to `t^(len-1)`.
fn geometric(len: usize, d: usize) -> Vec<i128> {
    (0..len).map(|i| i128::from(i % d == 0)).collect()
}

fn poly(len: usize, terms: &[(usize, i128)]) -> Vec<i128> {
    let mut v = vec![0i128; len];
    for &(d, c) in terms {
        if d < len {
            v[d] += c;
        }
    }
    v
}

/// Poincare series of the moduli of stable rank-2 bundles of odd degree
/// on a genus-g curve, from the equivariant Harder-Narasimhan
/// stratification: the classifying space of the gauge group minus the
/// unstable strata (two line subbundles of degrees d1 > d2, d1 + d2 = 1),
/// times `1 - t^2` for the central U(1). Returned up to `t^(len-1)`.
pub fn hn_oracle(g: usize, len: usize) -> Vec<i128> {
    let one_t = poly(len, &[(0, 1), (1, 1)]);
    let one_t3 = poly(len, &[(0, 1), (3, 1)]);
    let jac = series_pow(&one_t, 2 * g);
    // B(gauge group of a line bundle) and of a rank-2 bundle
    let bg1 = series_mul(&jac, &geometric(len, 2));
    let bg2 = {
        let s = series_mul(&jac, &series_pow(&one_t3, 2 * g));
        let s = series_mul(&s, &geometric(len, 2));
        let s = series_mul(&s, &geometric(len, 2));
        series_mul(&s, &geometric(len, 4))
    };
    let bg1_sq = series_mul(&bg1, &bg1);
    let mut equivariant = bg2;
    for d1 in 1i64.. {
        let d2 = 1 - d1;
        let codim = (d1 - d2) as usize + g - 1;
        if 2 * codim >= len {
            break;
        }
        for (i, c) in bg1_sq.iter().enumerate().take(len - 2 * codim) {
            equivariant[i + 2 * codim] -= c;
        }
    }
    series_mul(&equivariant, &poly(len, &[(0, 1), (2, -1)]))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn scripts_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/scripts")
}

/// The golden scripts, sorted by name, with their expected reports.
pub fn golden_scripts() -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    let mut paths: Vec<_> = std::fs::read_dir(scripts_dir())
        .expect("scripts directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "mc"))
        .collect();
    paths.sort();
    for p in paths {
        let name = p.file_stem().unwrap().to_string_lossy().into_owned();
        let src = std::fs::read_to_string(&p).unwrap();
        let expected = std::fs::read_to_string(p.with_extension("out")).unwrap_or_default();
        out.push((name, src, expected));
    }
    out
}

/// A random certificate DAG over `n` varieties with a planted formal set.
#[derive(Debug, Clone)]
pub struct PlantedDag {
    pub n: usize,
    pub planted: BTreeSet<usize>,
    /// `(subject, atoms, certificate line)`; atoms all precede the subject.
    pub certs: Vec<(usize, Vec<usize>, String)>,
}

pub fn random_planted_dag(rng: &mut StdRng) -> PlantedDag {
    let n = rng.gen_range(2..=14);
    let planted: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.35)).collect();
    let mut certs = Vec::new();
    for v in 1..n {
        for _ in 0..rng.gen_range(0..=2) {
            let k = rng.gen_range(1..=v.min(3));
            let mut atoms: Vec<usize> = (0..k).map(|_| rng.gen_range(0..v)).collect();
            atoms.sort_unstable();
            atoms.dedup();
            let terms: Vec<String> = atoms
                .iter()
                .map(|a| match rng.gen_range(0..3) {
                    0 => format!("M(v{a})"),
                    1 => format!("M(v{a})(-{})", rng.gen_range(1..4)),
                    _ => format!("M(v{a}) * 1({})", rng.gen_range(0..3)),
                })
                .collect();
            let op = if rng.gen_bool(0.5) { " + " } else { " * " };
            let mut body = terms.join(op);
            if rng.gen_bool(0.3) {
                body = format!("summand({body})");
            }
            certs.push((v, atoms, format!("cert: M(v{v}) = {body}  # synthetic")));
        }
    }
    PlantedDag { n, planted, certs }
}

/// Least fixed point: planted, or some certificate has only formal atoms.
pub fn planted_closure(d: &PlantedDag) -> BTreeSet<usize> {
    let mut formal = d.planted.clone();
    let mut by_subject: BTreeMap<usize, Vec<&Vec<usize>>> = BTreeMap::new();
    for (s, atoms, _) in &d.certs {
        by_subject.entry(*s).or_default().push(atoms);
    }
    loop {
        let before = formal.len();
        for (s, list) in &by_subject {
            if list.iter().any(|atoms| atoms.iter().all(|a| formal.contains(a))) {
                formal.insert(*s);
            }
        }
        if formal.len() == before {
            return formal;
        }
    }
}
