//! `GF(2^64)` with modulus `x^64 + x^4 + x^3 + x + 1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};

/// Low bits of the modulus: `x^64 ≡ x^4 + x^3 + x + 1`.
pub const MODULUS_LOW: u64 = 0x1B;

/// A field element; bit `i` is the coefficient of `x^i`.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf64(pub u64);

impl Gf64 {
    pub const ZERO: Gf64 = Gf64(0);
    pub const ONE: Gf64 = Gf64(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Gf64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf64({:#x})", self.0)
    }
}

impl Add for Gf64 {
    type Output = Gf64;
    fn add(self, rhs: Gf64) -> Gf64 {
        Gf64(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf64 {
    fn add_assign(&mut self, rhs: Gf64) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Gf64 {
    type Output = Gf64;
    fn mul(self, rhs: Gf64) -> Gf64 {
        gf_mul(self, rhs)
    }
}

impl MulAssign for Gf64 {
    fn mul_assign(&mut self, rhs: Gf64) {
        *self = gf_mul(*self, rhs);
    }
}

/// Carry-less 64x64 -> 128 bit product.
#[inline]
pub fn clmul(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime.
            return unsafe { clmul_pclmul(a, b) };
        }
    }
    clmul_soft(a, b)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn clmul_pclmul(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::{_mm_clmulepi64_si128, _mm_cvtsi128_si64, _mm_set_epi64x, _mm_srli_si128};
    let r = _mm_clmulepi64_si128(_mm_set_epi64x(0, a as i64), _mm_set_epi64x(0, b as i64), 0x00);
    let lo = _mm_cvtsi128_si64(r) as u64;
    let hi = _mm_cvtsi128_si64(_mm_srli_si128::<8>(r)) as u64;
    (u128::from(hi) << 64) | u128::from(lo)
}

/// Four-bit windowed software fallback.
pub fn clmul_soft(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    for i in 1..16usize {
        let mut t = 0u128;
        for bit in 0..4 {
            if i >> bit & 1 == 1 {
                t ^= u128::from(a) << bit;
            }
        }
        table[i] = t;
    }
    let mut acc = 0u128;
    for nib in (0..16).rev() {
        acc = (acc << 4) ^ table[(b >> (4 * nib) & 0xF) as usize];
    }
    acc
}

/// Reduces a 127-bit carry-less product modulo the field polynomial.
#[inline]
pub fn reduce(p: u128) -> u64 {
    let lo = p as u64;
    let hi = (p >> 64) as u64;
    let t = hi ^ (hi >> 63) ^ (hi >> 61) ^ (hi >> 60);
    lo ^ t ^ (t << 1) ^ (t << 3) ^ (t << 4)
}

#[inline]
pub fn gf_mul(a: Gf64, b: Gf64) -> Gf64 {
    Gf64(reduce(clmul(a.0, b.0)))
}
