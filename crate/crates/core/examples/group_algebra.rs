//! Multilinear detection in `GF(2^64)[Z_2^k]`: squares of `e + g_v` vanish,
//! products of independent ones do not.

use snowteam::algebra::{ga_mul, ga_mul_fast, ga_mul_naive, GroupAlgebraElem};

fn main() {
    let k = 3;
    let lift = |v: u32| GroupAlgebraElem::one(k).add(&GroupAlgebraElem::basis(k, v)).unwrap();
    let (a, b, c) = (lift(1), lift(2), lift(3));
    println!("(e+g1)^2 zero: {}", ga_mul(&a, &a).unwrap().is_zero());
    let ab = ga_mul(&a, &b).unwrap();
    println!("(e+g1)(e+g2) nonzero terms: {}", ab.nonzero_count());
    // g3 = g1 + g2 is dependent on the first two.
    println!("(e+g1)(e+g2)(e+g3) zero: {}", ga_mul(&ab, &c).unwrap().is_zero());
    assert_eq!(ga_mul_fast(&ab, &c).unwrap(), ga_mul_naive(&ab, &c).unwrap());
}
