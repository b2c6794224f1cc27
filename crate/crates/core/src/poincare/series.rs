use num_bigint::BigUint;
use num_integer::binomial;

use super::GradedDims;

/// A power series in `q` with coefficients in `GradedDims`, kept modulo
/// `q^{q_trunc + 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedSeries {
    q_trunc: usize,
    coeffs: Vec<GradedDims>,
    clipped: bool,
}

impl BigradedSeries {
    pub fn zero(q_trunc: usize) -> Self {
        Self {
            q_trunc,
            coeffs: vec![GradedDims::zero(); q_trunc + 1],
            clipped: false,
        }
    }

    pub fn one(q_trunc: usize) -> Self {
        let mut out = Self::zero(q_trunc);
        out.coeffs[0] = GradedDims::one();
        out
    }

    /// Adds `coeff * q^n`; terms above the truncation are dropped.
    pub fn add_term(&mut self, n: usize, coeff: &GradedDims) {
        if n <= self.q_trunc {
            self.coeffs[n] = self.coeffs[n].add(coeff);
        }
    }

    pub fn q_trunc(&self) -> usize {
        self.q_trunc
    }

    /// True when some multiplication that produced this series had to lower
    /// the truncation to the smaller operand's.
    pub fn was_clipped(&self) -> bool {
        self.clipped
    }

    pub fn coefficient(&self, n: usize) -> Option<&GradedDims> {
        self.coeffs.get(n)
    }

    pub fn coefficients(&self) -> &[GradedDims] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        let q_trunc = self.q_trunc.min(other.q_trunc);
        let mut out = Self::zero(q_trunc);
        out.clipped = self.clipped || other.clipped || self.q_trunc != other.q_trunc;
        for (i, a) in self.coeffs.iter().enumerate().take(q_trunc + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(q_trunc + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        out
    }
}

/// `(1 + t^a q^m)^b` truncated.
fn binomial_factor(a: u32, m: usize, b: u64, q_trunc: usize) -> BigradedSeries {
    let mut out = BigradedSeries::one(q_trunc);
    for j in 1..=b {
        let n = m * j as usize;
        if n > q_trunc {
            break;
        }
        let c = binomial(BigUint::from(b), BigUint::from(j));
        out.add_term(n, &GradedDims::monomial(a * j as u32, c));
    }
    out
}

/// `(1 - t^a q^m)^{-b}` truncated.
fn inverse_factor(a: u32, m: usize, b: u64, q_trunc: usize) -> BigradedSeries {
    let mut out = BigradedSeries::one(q_trunc);
    let mut j = 1u64;
    while m * j as usize <= q_trunc {
        // multisets of size j drawn from b kinds
        let c = binomial(BigUint::from(b + j - 1), BigUint::from(j));
        out.add_term(m * j as usize, &GradedDims::monomial(a * j as u32, c));
        j += 1;
    }
    out
}

/// The Hilbert-scheme generating series of a surface with Betti numbers
/// `b = (b0, .., b4)`:
///
/// `prod_{m>=1} (1+t^{2m-1}q^m)^{b1} (1+t^{2m+1}q^m)^{b3}
///   / ((1-t^{2m-2}q^m)^{b0} (1-t^{2m}q^m)^{b2} (1-t^{2m+2}q^m)^{b4})`
///
/// expanded exactly modulo `q^{q_trunc+1}`. Every factor has nonnegative
/// coefficients, so the expansion never leaves `GradedDims`.
pub fn goettsche_series(b: [u64; 5], q_trunc: usize) -> BigradedSeries {
    let mut acc = BigradedSeries::one(q_trunc);
    for m in 1..=q_trunc {
        let mm = m as u32;
        let factors = [
            (b[1] > 0).then(|| binomial_factor(2 * mm - 1, m, b[1], q_trunc)),
            (b[3] > 0).then(|| binomial_factor(2 * mm + 1, m, b[3], q_trunc)),
            (b[0] > 0).then(|| inverse_factor(2 * mm - 2, m, b[0], q_trunc)),
            (b[2] > 0).then(|| inverse_factor(2 * mm, m, b[2], q_trunc)),
            (b[4] > 0).then(|| inverse_factor(2 * mm + 2, m, b[4], q_trunc)),
        ];
        for f in factors.into_iter().flatten() {
            acc = acc.mul(&f);
        }
    }
    acc
}

/// Coefficient of `q^n` in [`goettsche_series`]: the Poincaré polynomial of
/// `S^[n]` when the odd Betti numbers vanish and there is no 2-torsion.
pub fn goettsche_coefficient(b: [u64; 5], n: usize) -> GradedDims {
    goettsche_series(b, n).coeffs.swap_remove(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[u64]) -> GradedDims {
        GradedDims::from_dense(c.iter().copied())
    }

    const P2: [u64; 5] = [1, 0, 1, 0, 1];

    #[test]
    fn goettsche_low_orders() {
        assert_eq!(goettsche_coefficient(P2, 0), GradedDims::one());
        assert_eq!(goettsche_coefficient(P2, 1), p(&[1, 0, 1, 0, 1]));
        assert_eq!(goettsche_coefficient(P2, 2), p(&[1, 0, 2, 0, 3, 0, 2, 0, 1]));
        assert_eq!(goettsche_coefficient(P2, 3).total(), 22u32.into());
    }

    #[test]
    fn truncation_is_min_and_recorded() {
        let a = BigradedSeries::one(4);
        let b = BigradedSeries::one(2);
        let c = a.mul(&b);
        assert_eq!(c.q_trunc(), 2);
        assert!(c.was_clipped());
        assert!(!a.mul(&a).was_clipped());
    }

    #[test]
    fn surface_coefficients_are_palindromic() {
        for n in 0..=6 {
            let c = goettsche_coefficient([1, 0, 22, 0, 1], n);
            assert!(c.is_palindromic());
            assert_eq!(c.top_degree(), Some(4 * n as u32));
        }
    }
}
