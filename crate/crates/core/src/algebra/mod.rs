//! Field and group-algebra arithmetic for multilinear monomial detection.

mod gf64;
mod group;
mod value;

use rand::Rng;
use thiserror::Error;

pub use gf64::{clmul, gf_mul, reduce, Gf64, MODULUS_LOW};
pub use group::{ga_mul, ga_mul_fast, ga_mul_naive, GroupAlgebraElem, MAX_FAST_DIM};
pub use value::{zval_mul, AlgebraValue};

pub(crate) use group::mul_acc_naive;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("group dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },
    #[error("group dimension {k} exceeds the supported maximum {max}")]
    DimensionTooLarge { k: u32, max: u32 },
    #[error("z-degree caps differ: {left} vs {right}")]
    ZcapMismatch { left: usize, right: usize },
}

/// Random group vectors for one detection trial: a base vector `v0` and one
/// vector per variable, all uniform over `Z_2^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub base: u32,
    pub masks: Vec<u32>,
}

pub fn sample_assignment<R: Rng + ?Sized>(rng: &mut R, n_vars: usize, k: u32) -> Assignment {
    assert!(k <= 32, "group dimension {k} does not fit a 32-bit mask");
    let mask = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let base = rng.gen::<u32>() & mask;
    let masks = (0..n_vars).map(|_| rng.gen::<u32>() & mask).collect();
    Assignment { base, masks }
}
