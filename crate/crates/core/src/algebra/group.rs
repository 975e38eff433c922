//! The group algebra `GF(2^64)[Z_2^k]`.

use super::gf64::{clmul, reduce, Gf64};
use super::AlgebraError;

/// Largest group dimension accepted by [`ga_mul_fast`]. After the inverse
/// transform each lifted coefficient is a multiple of `2^k` whose quotient is
/// needed mod 2, so `k` must stay well below the 64-bit word size; memory for
/// `2^k` lifted rows is the practical limit.
pub const MAX_FAST_DIM: u32 = 24;

/// Above this dimension [`ga_mul`] prefers the transform kernel for dense
/// operands.
const FAST_THRESHOLD: u32 = 10;

/// An element `Σ_g c_g · g` with coefficients indexed by `k`-bit masks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElem {
    k: u32,
    coeffs: Vec<Gf64>,
}

impl GroupAlgebraElem {
    pub fn zero(k: u32) -> Self {
        Self { k, coeffs: vec![Gf64::ZERO; 1 << k] }
    }

    /// The identity `e` (mask 0).
    pub fn one(k: u32) -> Self {
        Self::basis(k, 0)
    }

    /// The group element `g_mask` with coefficient 1.
    pub fn basis(k: u32, mask: u32) -> Self {
        Self::scaled_basis(k, mask, Gf64::ONE)
    }

    pub fn scaled_basis(k: u32, mask: u32, c: Gf64) -> Self {
        let mut e = Self::zero(k);
        e.coeffs[mask as usize] = c;
        e
    }

    /// Panics unless `coeffs.len()` is a power of two.
    pub fn from_coeffs(coeffs: Vec<Gf64>) -> Self {
        assert!(coeffs.len().is_power_of_two(), "coefficient count must be a power of two");
        Self { k: coeffs.len().trailing_zeros(), coeffs }
    }

    pub fn dim_log(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[Gf64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Gf64] {
        &mut self.coeffs
    }

    pub fn coeff(&self, mask: u32) -> Gf64 {
        self.coeffs[mask as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<(), AlgebraError> {
        check_dims(self.k, other.k)?;
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += *y;
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn scale(&self, c: Gf64) -> Self {
        Self { k: self.k, coeffs: self.coeffs.iter().map(|&x| x * c).collect() }
    }
}

fn check_dims(a: u32, b: u32) -> Result<(), AlgebraError> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::DimensionMismatch { left: a, right: b })
    }
}

/// `out += a * b` by direct xor-convolution, iterating over the nonzero
/// coefficients of the sparser operand.
pub(crate) fn mul_acc_naive(out: &mut [Gf64], a: &[Gf64], b: &[Gf64]) {
    let (sparse, dense) = if nonzeros(a) <= nonzeros(b) { (a, b) } else { (b, a) };
    let dense_nz: Vec<(usize, u64)> =
        dense.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(v, c)| (v, c.0)).collect();
    for (u, x) in sparse.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if x.0 == 1 {
            for &(v, y) in &dense_nz {
                out[u ^ v].0 ^= y;
            }
        } else {
            for &(v, y) in &dense_nz {
                out[u ^ v].0 ^= reduce(clmul(x.0, y));
            }
        }
    }
}

fn nonzeros(a: &[Gf64]) -> usize {
    a.iter().filter(|c| !c.is_zero()).count()
}

/// Reference xor-convolution, `O(4^k)` field multiplications.
pub fn ga_mul_naive(a: &GroupAlgebraElem, b: &GroupAlgebraElem) -> Result<GroupAlgebraElem, AlgebraError> {
    check_dims(a.k, b.k)?;
    let mut out = GroupAlgebraElem::zero(a.k);
    mul_acc_naive(&mut out.coeffs, &a.coeffs, &b.coeffs);
    Ok(out)
}

/// Lifts each coefficient to its 64 bits as integers (point-major rows of 64)
/// and applies the ±1 transform in place.
fn lift_and_transform(coeffs: &[Gf64], k: u32) -> Vec<i64> {
    let mut rows = vec![0i64; coeffs.len() * 64];
    for (g, c) in coeffs.iter().enumerate() {
        let row = &mut rows[g * 64..g * 64 + 64];
        let mut bits = c.0;
        while bits != 0 {
            let p = bits.trailing_zeros() as usize;
            row[p] = 1;
            bits &= bits - 1;
        }
    }
    hadamard_rows(&mut rows, k, 64);
    rows
}

/// Unnormalized Walsh-Hadamard transform over `2^k` rows of `width` words,
/// natural binary index order, wrapping arithmetic.
fn hadamard_rows(data: &mut [i64], k: u32, width: usize) {
    let size = 1usize << k;
    let mut h = 1;
    while h < size {
        for block in data.chunks_mut(2 * h * width) {
            let (lo, hi) = block.split_at_mut(h * width);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a.wrapping_add(b);
                *y = a.wrapping_sub(b);
            }
        }
        h <<= 1;
    }
}

/// Transform-based xor-convolution.
///
/// Field coefficients are polynomials over GF(2) of degree < 64. Their bits
/// are lifted to integers, transformed, multiplied pointwise as integer
/// polynomials, transformed back and divided by `2^k`; the parity of each
/// resulting integer is the corresponding GF(2) coefficient of the unreduced
/// product, which is finally reduced modulo the field polynomial.
pub fn ga_mul_fast(a: &GroupAlgebraElem, b: &GroupAlgebraElem) -> Result<GroupAlgebraElem, AlgebraError> {
    check_dims(a.k, b.k)?;
    let k = a.k;
    if k > MAX_FAST_DIM {
        return Err(AlgebraError::DimensionTooLarge { k, max: MAX_FAST_DIM });
    }
    let size = 1usize << k;
    let ta = lift_and_transform(&a.coeffs, k);
    let tb = lift_and_transform(&b.coeffs, k);
    const W: usize = 128;
    let mut prod = vec![0i64; size * W];
    for g in 0..size {
        let ra = &ta[g * 64..g * 64 + 64];
        let rb = &tb[g * 64..g * 64 + 64];
        let out = &mut prod[g * W..g * W + W];
        for (p, &x) in ra.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let dst = &mut out[p..p + 64];
            for (d, &y) in dst.iter_mut().zip(rb) {
                *d = d.wrapping_add(x.wrapping_mul(y));
            }
        }
    }
    hadamard_rows(&mut prod, k, W);
    let mut out = GroupAlgebraElem::zero(k);
    for g in 0..size {
        let row = &prod[g * W..g * W + W];
        let mut poly = 0u128;
        for (s, &v) in row.iter().enumerate().take(127) {
            poly |= u128::from((v >> k) as u64 & 1) << s;
        }
        out.coeffs[g] = Gf64(reduce(poly));
    }
    Ok(out)
}

/// Product using whichever kernel is cheaper for the operands.
pub fn ga_mul(a: &GroupAlgebraElem, b: &GroupAlgebraElem) -> Result<GroupAlgebraElem, AlgebraError> {
    check_dims(a.k, b.k)?;
    let sparse = a.nonzero_count().min(b.nonzero_count());
    if a.k >= FAST_THRESHOLD && a.k <= MAX_FAST_DIM && sparse > 4096 {
        ga_mul_fast(a, b)
    } else {
        ga_mul_naive(a, b)
    }
}

/// `Σ_g c_g` over all group elements; used only by tests.
#[cfg(test)]
pub(crate) fn coefficient_sum(a: &GroupAlgebraElem) -> Gf64 {
    a.coeffs.iter().fold(Gf64::ZERO, |acc, &c| acc + c)
}
