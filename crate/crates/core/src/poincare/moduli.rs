use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use super::{GradedDims, PoincareError};

/// Dense signed polynomial, index = degree. Only used for the one exact
/// division below.
#[derive(Debug, Clone, PartialEq)]
struct SignedPoly(Vec<BigInt>);

impl SignedPoly {
    fn from_i64(c: &[i64]) -> Self {
        Self(c.iter().map(|&x| BigInt::from(x)).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self(out).trimmed()
    }

    fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_i64(&[1]), |acc, _| acc.mul(self))
    }

    fn shift(&self, k: usize) -> Self {
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.0.iter().cloned());
        Self(out).trimmed()
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let at = |p: &Self, i: usize| p.0.get(i).cloned().unwrap_or_default();
        Self((0..n).map(|i| at(self, i) - at(other, i)).collect()).trimmed()
    }

    /// Long division by a divisor with leading coefficient ±1.
    fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.0.last().expect("nonzero divisor").clone();
        debug_assert!(lead.abs().is_one());
        let dd = divisor.0.len() - 1;
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Self(Vec::new()), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.0.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        (Self(quot).trimmed(), Self(rem).trimmed())
    }

    fn into_graded(self) -> Option<GradedDims> {
        let coeffs: Option<Vec<BigUint>> = self
            .0
            .into_iter()
            .map(|c| match c.sign() {
                Sign::Minus => None,
                _ => c.to_biguint(),
            })
            .collect();
        coeffs.map(GradedDims::from_dense)
    }
}

/// Mod-2 Poincaré polynomial of the moduli space `M_C(2, d)`, `d` odd, of
/// stable rank-2 bundles on a genus-`g` curve.
///
/// The fixed-determinant part is the exact quotient
/// `((1+t^3)^{2g} - t^{2g}(1+t)^{2g}) / ((1-t^2)(1-t^4))`; the Jacobian
/// contributes the factor `(1+t)^{2g}`. The cohomology is torsion free, so
/// the rational and mod-2 numbers agree.
pub fn curve_moduli_poincare_rank2(g: u32) -> Result<GradedDims, PoincareError> {
    if g < 2 {
        return Err(PoincareError::GenusTooSmall(g));
    }
    let one_t = SignedPoly::from_i64(&[1, 1]);
    let one_t3 = SignedPoly::from_i64(&[1, 0, 0, 1]);
    let numerator = one_t3
        .pow(2 * g)
        .sub(&one_t.pow(2 * g).shift(2 * g as usize));
    let denominator = SignedPoly::from_i64(&[1, 0, -1]).mul(&SignedPoly::from_i64(&[1, 0, 0, 0, -1]));
    let (quot, rem) = numerator.div_rem(&denominator);
    if !rem.0.is_empty() {
        return Err(PoincareError::Consistency(format!(
            "rank-2 closed form leaves a nonzero remainder at g = {g}"
        )));
    }
    let full = quot.mul(&one_t.pow(2 * g));
    let poly = full.into_graded().ok_or_else(|| {
        PoincareError::Consistency(format!("negative Betti number at g = {g}"))
    })?;
    let expected_top = 2 * (4 * (g - 1) + 1);
    if poly.top_degree() != Some(expected_top) {
        return Err(PoincareError::Consistency(format!(
            "top degree {:?} differs from twice the dimension {expected_top}",
            poly.top_degree()
        )));
    }
    Ok(poly)
}

/// Remainder of the closed-form division, exposed for the zero-remainder check.
pub fn rank2_division_remainder(g: u32) -> Vec<BigInt> {
    let one_t = SignedPoly::from_i64(&[1, 1]);
    let numerator = SignedPoly::from_i64(&[1, 0, 0, 1])
        .pow(2 * g)
        .sub(&one_t.pow(2 * g).shift(2 * g as usize));
    let denominator = SignedPoly::from_i64(&[1, 0, -1, 0, -1, 0, 1]);
    numerator.div_rem(&denominator).1 .0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two() {
        let p = curve_moduli_poincare_rank2(2).unwrap();
        assert_eq!(p.top_degree(), Some(10));
        assert!(p.is_palindromic());
        assert_eq!(p.coeff(0), BigUint::one());
        // (1+t)^4 (1 + t^2 + 4t^3 + t^4 + t^6): total 16 * 8
        assert_eq!(p.total(), 128u32.into());
        assert_eq!(p.coeff(3), 12u32.into());
    }

    #[test]
    fn fixed_determinant_quotient_genus_two() {
        let one_t = SignedPoly::from_i64(&[1, 1]);
        let num = SignedPoly::from_i64(&[1, 0, 0, 1]).pow(4).sub(&one_t.pow(4).shift(4));
        let (q, r) = num.div_rem(&SignedPoly::from_i64(&[1, 0, -1, 0, -1, 0, 1]));
        assert!(r.0.is_empty());
        assert_eq!(q, SignedPoly::from_i64(&[1, 0, 1, 4, 1, 0, 1]));
    }

    #[test]
    fn remainder_vanishes() {
        for g in 2..=8 {
            assert!(rank2_division_remainder(g).is_empty(), "g = {g}");
        }
    }

    #[test]
    fn rejects_small_genus() {
        assert_eq!(curve_moduli_poincare_rank2(1), Err(PoincareError::GenusTooSmall(1)));
    }
}
