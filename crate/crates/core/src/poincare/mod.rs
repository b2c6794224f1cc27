//! Exact arithmetic on Poincaré polynomials.
//!
//! [`GradedDims`] is a polynomial in a formal degree variable `t` with
//! nonnegative arbitrary-precision coefficients, stored sparsely so that two
//! equal polynomials are structurally equal. [`BigradedSeries`] adds a second,
//! truncated variable `q` for generating functions over Hilbert schemes.

mod moduli;
mod series;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use moduli::{curve_moduli_poincare_rank2, rank2_division_remainder};
pub use series::{goettsche_coefficient, goettsche_series, BigradedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoincareError {
    #[error("q-binomial [{n} choose {k}] is undefined: need 0 <= k <= n")]
    BinomialDomain { k: i64, n: i64 },
    #[error("genus {0} is out of range: need g >= 2")]
    GenusTooSmall(u32),
    #[error("internal consistency: {0}")]
    Consistency(String),
}

/// A Poincaré polynomial: degree -> nonnegative count, zero entries absent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedDims {
    coeffs: BTreeMap<u32, BigUint>,
}

impl GradedDims {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1u32)
    }

    pub fn monomial(degree: u32, count: impl Into<BigUint>) -> Self {
        let mut out = Self::zero();
        out.add_term(degree, count.into());
        out
    }

    /// Builds a polynomial from dense coefficients, index = degree.
    pub fn from_dense<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigUint>,
    {
        let mut out = Self::zero();
        for (degree, c) in coeffs.into_iter().enumerate() {
            out.add_term(degree as u32, c.into());
        }
        out
    }

    /// `1 + t^step + t^{2 step} + ... + t^{len-1 step}`.
    pub fn geometric(len: u32, step: u32) -> Self {
        let mut out = Self::zero();
        for i in 0..len {
            out.add_term(i * step, BigUint::one());
        }
        out
    }

    fn add_term(&mut self, degree: u32, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.coeffs.entry(degree).or_default() += count;
    }

    pub fn coeff(&self, degree: u32) -> BigUint {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigUint)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &other.coeffs {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }

    /// Raises every degree by `k`.
    pub fn shift(&self, k: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &BigUint) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, c * factor)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Value at `t = 1`.
    pub fn total(&self) -> BigUint {
        self.coeffs.values().sum()
    }

    pub fn top_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// `c[d] == c[top - d]` for every degree; the zero polynomial counts.
    pub fn is_palindromic(&self) -> bool {
        let Some(top) = self.top_degree() else {
            return true;
        };
        (0..=top).all(|d| self.coeff(d) == self.coeff(top - d))
    }

    /// True when every nonzero coefficient sits in an even degree.
    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|d| d % 2 == 0)
    }

    pub fn to_dense(&self) -> Vec<BigUint> {
        match self.top_degree() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|d| self.coeff(d)).collect(),
        }
    }

    /// Dense coefficients as `u64`, `None` on overflow.
    pub fn to_dense_u64(&self) -> Option<Vec<u64>> {
        self.to_dense().iter().map(|c| c.to_u64()).collect()
    }
}

impl Add for &GradedDims {
    type Output = GradedDims;
    fn add(self, rhs: &GradedDims) -> GradedDims {
        GradedDims::add(self, rhs)
    }
}

impl Mul for &GradedDims {
    type Output = GradedDims;
    fn mul(self, rhs: &GradedDims) -> GradedDims {
        GradedDims::mul(self, rhs)
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let unit = c.is_one();
            match (d, unit) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{c}t")?,
                (_, true) => write!(f, "t^{d}")?,
                (_, false) => write!(f, "{c}t^{d}")?,
            }
        }
        Ok(())
    }
}

/// Gaussian binomial `[n choose k]` evaluated at `q = t^step`.
///
/// With `step = 2` this is the mod-2 Poincaré polynomial of the complex
/// Grassmannian `Gr(k, n)`; with `step = 1` that of the real one.
pub fn qbinomial(k: i64, n: i64, step: u32) -> Result<GradedDims, PoincareError> {
    if k < 0 || n < 0 || k > n {
        return Err(PoincareError::BinomialDomain { k, n });
    }
    let (k, n) = (k as usize, n as usize);
    // row[j] = [m choose j] for the current m
    let mut row = vec![GradedDims::one()];
    for m in 1..=n {
        let mut next = vec![GradedDims::zero(); m + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            let left = if j >= 1 { row.get(j - 1) } else { None };
            let right = row.get(j).map(|p| p.shift(j as u32 * step));
            *slot = match (left, right) {
                (Some(l), Some(r)) => l.add(&r),
                (Some(l), None) => l.clone(),
                (None, Some(r)) => r,
                (None, None) => GradedDims::zero(),
            };
        }
        row = next;
    }
    Ok(row.swap_remove(k))
}

/// Poincaré polynomial of the partial flag variety of type `dims` in an
/// `ambient`-dimensional space, as a product of Gaussian binomials in `t^step`.
///
/// `dims` must be strictly increasing with entries in `1..=ambient`; a
/// trailing `ambient` is accepted and contributes nothing.
pub fn flag_poincare(dims: &[u32], ambient: u32, step: u32) -> Result<GradedDims, PoincareError> {
    let dims = match dims.split_last() {
        Some((&last, rest)) if last == ambient => rest,
        _ => dims,
    };
    let mut out = GradedDims::one();
    let mut upper = ambient;
    for &d in dims.iter().rev() {
        if d == 0 || d >= upper {
            return Err(PoincareError::BinomialDomain {
                k: d as i64,
                n: upper as i64,
            });
        }
        out = out.mul(&qbinomial(d as i64, upper as i64, step)?);
        upper = d;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[u64]) -> GradedDims {
        GradedDims::from_dense(c.iter().copied())
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(&[1]).add(&GradedDims::zero()), p(&[1]));
        assert_eq!(p(&[1, 0, 1]).add(&p(&[1, 0, 1])), p(&[2, 0, 2]));
        assert_eq!(p(&[1, 0, 2, 0, 1]).add(&p(&[0, 0, 0, 1])), p(&[1, 0, 2, 1, 1]));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p(&[1, 0, 1]).mul(&GradedDims::one()), p(&[1, 0, 1]));
        assert_eq!(p(&[1, 0, 1]).mul(&p(&[1, 0, 1])), p(&[1, 0, 2, 0, 1]));
        assert_eq!(p(&[1, 2, 1]).mul(&p(&[1, 1])), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(GradedDims::one().shift(2), p(&[0, 0, 1]));
        assert_eq!(p(&[1, 0, 1]).shift(2), p(&[0, 0, 1, 0, 1]));
        assert_eq!(p(&[0, 3]).shift(0), p(&[0, 3]));
    }

    #[test]
    fn total_examples() {
        assert_eq!(p(&[1, 0, 2, 0, 1]).total(), 4u32.into());
        assert_eq!(GradedDims::zero().total(), 0u32.into());
        assert_eq!(p(&[1, 1, 1]).total(), 3u32.into());
    }

    #[test]
    fn canonical_form_drops_zeros() {
        assert_eq!(p(&[0, 0, 0]), GradedDims::zero());
        assert_eq!(p(&[1, 0, 0]), GradedDims::one());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 2, 1, 1]).to_string(), "1 + 2t^2 + t^3 + t^4");
        assert_eq!(p(&[0, 3]).to_string(), "3t");
        assert_eq!(GradedDims::zero().to_string(), "0");
    }

    #[test]
    fn qbinomial_examples() {
        assert_eq!(qbinomial(0, 5, 2).unwrap(), GradedDims::one());
        assert_eq!(qbinomial(1, 2, 2).unwrap(), p(&[1, 0, 1]));
        assert_eq!(qbinomial(2, 4, 1).unwrap(), p(&[1, 1, 2, 1, 1]));
    }

    #[test]
    fn qbinomial_domain_errors() {
        assert!(qbinomial(-1, 3, 1).is_err());
        assert!(qbinomial(4, 3, 1).is_err());
    }

    /// Counts 0/1 strings with `k` ones among `n` slots by inversion number.
    fn inversion_oracle(k: u32, n: u32) -> GradedDims {
        let mut counts = vec![0u64; (k * (n - k) + 1) as usize];
        for mask in 0u32..(1 << n) {
            if mask.count_ones() != k {
                continue;
            }
            let mut inv = 0;
            let mut ones_seen = 0;
            for bit in 0..n {
                if mask & (1 << bit) != 0 {
                    ones_seen += 1;
                } else {
                    inv += ones_seen;
                }
            }
            counts[inv as usize] += 1;
        }
        GradedDims::from_dense(counts)
    }

    #[test]
    fn qbinomial_matches_inversion_count() {
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(qbinomial(k as i64, n as i64, 1).unwrap(), inversion_oracle(k, n));
            }
        }
    }

    #[test]
    fn flag_varieties() {
        assert_eq!(flag_poincare(&[2], 4, 2).unwrap().total(), 6u32.into());
        let full = flag_poincare(&[1, 2], 3, 2).unwrap();
        assert_eq!(full, p(&[1, 0, 2, 0, 2, 0, 1]));
        assert_eq!(flag_poincare(&[1, 2, 3], 3, 2).unwrap(), full);
        assert_eq!(flag_poincare(&[], 3, 2).unwrap(), GradedDims::one());
        assert!(flag_poincare(&[2, 1], 3, 2).is_err());
        assert!(flag_poincare(&[0], 3, 2).is_err());
        assert!(flag_poincare(&[4], 3, 2).is_err());
    }
}
