//! Polynomials in an auxiliary variable `z` with group-algebra coefficients,
//! truncated above a fixed degree.

use super::group::{ga_mul, GroupAlgebraElem};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraValue {
    zcap: usize,
    parts: Vec<GroupAlgebraElem>,
}

impl AlgebraValue {
    pub fn zero(k: u32, zcap: usize) -> Self {
        Self { zcap, parts: vec![GroupAlgebraElem::zero(k); zcap + 1] }
    }

    /// `elem · z^degree`, or zero when `degree > zcap`.
    pub fn monomial(elem: GroupAlgebraElem, degree: usize, zcap: usize) -> Self {
        let mut v = Self::zero(elem.dim_log(), zcap);
        if degree <= zcap {
            v.parts[degree] = elem;
        }
        v
    }

    /// Builds a value from explicit parts; degrees beyond `zcap` are dropped.
    pub fn from_parts(mut parts: Vec<GroupAlgebraElem>, zcap: usize) -> Self {
        let k = parts.first().map_or(0, GroupAlgebraElem::dim_log);
        parts.truncate(zcap + 1);
        parts.resize(zcap + 1, GroupAlgebraElem::zero(k));
        Self { zcap, parts }
    }

    pub fn zcap(&self) -> usize {
        self.zcap
    }

    pub fn dim_log(&self) -> u32 {
        self.parts[0].dim_log()
    }

    /// Coefficient of `z^d`.
    pub fn part(&self, d: usize) -> &GroupAlgebraElem {
        &self.parts[d]
    }

    pub fn parts(&self) -> &[GroupAlgebraElem] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(GroupAlgebraElem::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.zcap != other.zcap {
            return Err(AlgebraError::ZcapMismatch { left: self.zcap, right: other.zcap });
        }
        if self.dim_log() != other.dim_log() {
            return Err(AlgebraError::DimensionMismatch { left: self.dim_log(), right: other.dim_log() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (x, y) in out.parts.iter_mut().zip(&other.parts) {
            x.add_assign(y)?;
        }
        Ok(out)
    }
}

/// Degree-additive convolution truncated at `zcap`.
pub fn zval_mul(a: &AlgebraValue, b: &AlgebraValue) -> Result<AlgebraValue, AlgebraError> {
    a.check(b)?;
    let mut out = AlgebraValue::zero(a.dim_log(), a.zcap);
    for (i, x) in a.parts.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.parts.iter().enumerate().take(a.zcap + 1 - i) {
            if y.is_zero() {
                continue;
            }
            out.parts[i + j].add_assign(&ga_mul(x, y)?)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::ga_mul_naive;
    use crate::algebra::Gf64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_value(rng: &mut ChaCha8Rng, k: u32, degree: usize) -> Vec<GroupAlgebraElem> {
        (0..=degree)
            .map(|_| GroupAlgebraElem::from_coeffs((0..1 << k).map(|_| Gf64(rng.gen())).collect()))
            .collect()
    }

    fn schoolbook(a: &[GroupAlgebraElem], b: &[GroupAlgebraElem]) -> Vec<GroupAlgebraElem> {
        let k = a[0].dim_log();
        let mut out = vec![GroupAlgebraElem::zero(k); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j].add_assign(&ga_mul_naive(x, y).unwrap()).unwrap();
            }
        }
        out
    }

    #[test]
    fn constant_parts_multiply_plainly() {
        let a = AlgebraValue::monomial(GroupAlgebraElem::basis(2, 1), 0, 2);
        let b = AlgebraValue::monomial(GroupAlgebraElem::basis(2, 2), 0, 2);
        let p = zval_mul(&a, &b).unwrap();
        assert_eq!(p.part(0), &GroupAlgebraElem::basis(2, 3));
        assert!(p.part(1).is_zero() && p.part(2).is_zero());
    }

    #[test]
    fn degree_beyond_cap_is_dropped() {
        let ze = AlgebraValue::monomial(GroupAlgebraElem::one(1), 1, 1);
        assert!(zval_mul(&ze, &ze).unwrap().is_zero());
    }

    #[test]
    fn matches_truncated_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let (ra, rb) = (random_value(&mut rng, 3, 3), random_value(&mut rng, 3, 3));
            let full = schoolbook(&ra, &rb);
            let p = zval_mul(&AlgebraValue::from_parts(ra, 3), &AlgebraValue::from_parts(rb, 3)).unwrap();
            assert_eq!(p.parts(), &full[..4]);
        }
    }

    #[test]
    fn truncation_is_sound() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let (ra, rb) = (random_value(&mut rng, 2, 5), random_value(&mut rng, 2, 5));
        let small = zval_mul(&AlgebraValue::from_parts(ra.clone(), 2), &AlgebraValue::from_parts(rb.clone(), 2)).unwrap();
        let big = zval_mul(&AlgebraValue::from_parts(ra, 5), &AlgebraValue::from_parts(rb, 5)).unwrap();
        assert_eq!(small.parts(), &big.parts()[..3]);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = AlgebraValue::zero(2, 1);
        assert!(zval_mul(&a, &AlgebraValue::zero(2, 2)).is_err());
        assert!(zval_mul(&a, &AlgebraValue::zero(3, 1)).is_err());
    }
}
