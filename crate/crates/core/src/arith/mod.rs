//! Exact integer and rational arithmetic.
//!
//! Integers and rationals are `num-bigint` / `num-rational` values; this
//! module adds the number-theoretic helpers the rest of the crate needs:
//! integer roots, factorization, univariate and binary-form polynomial
//! algebra, and fraction-free linear algebra for Sylvester systems.

mod factor;
mod form;
mod linalg;
mod poly;

pub use factor::{divisors, factorize, is_probable_prime};
pub use form::{resultant, solve_sylvester_cofactors, BinaryForm, SylvesterCofactors};
pub use linalg::{bareiss_adjugate_column, bareiss_determinant, bareiss_solve_scaled};
pub use num_bigint::BigInt;
pub use num_rational::BigRational as BigRat;
pub use poly::{rational_roots, UniPoly};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Nonnegative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Largest `r` with `r^k <= n`.
pub fn iroot_floor(n: &BigInt, k: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::ZeroRootIndex);
    }
    if n.is_negative() {
        return Err(Error::NegativeRadicand(n.clone()));
    }
    if n.is_zero() || k == 1 {
        return Ok(n.clone());
    }
    let r = n.nth_root(k);
    debug_assert!(r.pow(k) <= *n && (&r + 1u32).pow(k) > *n);
    Ok(r)
}

/// Bit length of `|n|`.
pub(crate) fn bits(n: &BigInt) -> u64 {
    n.bits()
}

/// Natural logarithm of a positive big integer, accurate to double precision.
pub fn ln_big(n: &BigInt) -> f64 {
    debug_assert!(n.is_positive());
    let b = n.bits();
    if b <= 1000 {
        use num_traits::ToPrimitive;
        if let Some(f) = n.to_f64() {
            if f.is_finite() {
                return f.ln();
            }
        }
    }
    // keep the top 64 bits as the mantissa
    let shift = b.saturating_sub(64);
    let top: BigInt = n >> shift;
    use num_traits::ToPrimitive;
    let m = top.to_f64().unwrap_or(f64::MAX);
    m.ln() + (shift as f64) * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&12.into(), &18.into()), BigInt::from(6));
        assert_eq!(gcd(&0.into(), &0.into()), BigInt::from(0));
        assert_eq!(gcd(&(-4).into(), &6.into()), BigInt::from(2));
    }

    #[test]
    fn gcd_two_pow_64_plus_one() {
        let n = (BigInt::from(1) << 64u32) + 1;
        // 2^64 = (2^2)^32 = 1 mod 3, so 2^64 + 1 = 2 mod 3
        let residue = (&n % 3u32 + 3u32) % 3u32;
        let expected = if residue == BigInt::from(0) { 3 } else { 1 };
        assert_eq!(residue, BigInt::from(2));
        assert_eq!(gcd(&n, &3.into()), BigInt::from(expected));
    }

    #[test]
    fn iroot_examples() {
        assert_eq!(iroot_floor(&8.into(), 3).unwrap(), BigInt::from(2));
        assert_eq!(iroot_floor(&9.into(), 1).unwrap(), BigInt::from(9));
        assert_eq!(iroot_floor(&26.into(), 3).unwrap(), BigInt::from(2));
        assert_eq!(iroot_floor(&27.into(), 3).unwrap(), BigInt::from(3));
        assert_eq!(iroot_floor(&0.into(), 5).unwrap(), BigInt::from(0));
    }

    #[test]
    fn iroot_rejects_bad_input() {
        assert_eq!(iroot_floor(&(-1).into(), 3), Err(Error::NegativeRadicand((-1).into())));
        assert_eq!(iroot_floor(&5.into(), 0), Err(Error::ZeroRootIndex));
    }

    #[test]
    fn ln_big_matches_f64() {
        assert!((ln_big(&BigInt::from(2)) - 2f64.ln()).abs() < 1e-15);
        let huge = BigInt::from(1) << 5000u32;
        assert!((ln_big(&huge) - 5000.0 * 2f64.ln()).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn iroot_brackets(bytes in proptest::collection::vec(any::<u8>(), 1..64), k in 1u32..9) {
            let n = BigInt::from_bytes_le(num_bigint::Sign::Plus, &bytes);
            let r = iroot_floor(&n, k).unwrap();
            prop_assert!(r.pow(k) <= n);
            prop_assert!((&r + BigInt::from(1)).pow(k) > n);
        }
    }
}
