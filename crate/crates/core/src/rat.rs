//! Small helpers around the arbitrary-precision rational scalar.

use crate::Rat;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Ratio `p/q` as a rational. `q` must be nonzero.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// `1/2`, used pervasively by the stability slack.
pub fn half() -> Rat {
    ratio(1, 2)
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Exact conversion of a slice of integers.
pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&n| rat(n)).collect()
}

/// Floor of a rational as a `BigInt`-backed `i64`; values at desk scale fit.
pub fn floor_i64(x: &Rat) -> i64 {
    let f = x.floor();
    let n = f.numer();
    i64::try_from(n).expect("floor fits in i64 at desk scale")
}

/// Ceiling of a rational as an `i64`.
pub fn ceil_i64(x: &Rat) -> i64 {
    let c = x.ceil();
    let n = c.numer();
    i64::try_from(n).expect("ceil fits in i64 at desk scale")
}

/// True if `x` is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.is_integer()
}

/// Sign of a rational: -1, 0 or 1.
pub fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
