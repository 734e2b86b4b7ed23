use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::divisors;
use crate::error::{Error, Result};

/// Dense univariate integer polynomial; `coeffs[i]` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        UniPoly { coeffs: self.coeffs.iter().map(|v| v / &c).collect() }
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// `q^n p(p/q)` for `n = deg`, an integer that vanishes iff `p/q` is a root.
    fn eval_homogenized(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc
    }
}

/// All rational roots of `p`, without multiplicity, in increasing order.
///
/// Works on the primitive part: a root `u/v` in lowest terms has `u | a_0`
/// and `v | a_n`, so the candidate set is finite.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<BigRational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let prim = p.primitive_part();
    let shift = prim.coeffs.iter().take_while(|c| c.is_zero()).count();
    let core = UniPoly::new(prim.coeffs[shift..].to_vec());
    let mut roots: Vec<BigRational> = Vec::new();
    if shift > 0 {
        roots.push(BigRational::zero());
    }
    if core.degree().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    let a0 = &core.coeffs[0];
    let an = core.leading().expect("nonzero");
    // Cauchy: every root has |r| <= 1 + max |a_i / a_n|
    let max_ratio = core.coeffs[..core.coeffs.len() - 1]
        .iter()
        .map(|c| BigRational::new(c.abs(), an.abs()))
        .max()
        .unwrap_or_else(BigRational::zero);
    let cauchy = max_ratio + BigRational::one();

    let nums = divisors(a0);
    let dens = divisors(an);
    for v in &dens {
        for u in &nums {
            if !u.gcd(v).is_one() {
                continue;
            }
            if BigRational::new(u.clone(), v.clone()) > cauchy {
                break;
            }
            for cand in [u.clone(), -u.clone()] {
                if core.eval_homogenized(&cand, v).is_zero() {
                    roots.push(BigRational::new(cand, v.clone()));
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        assert_eq!(rational_roots(&UniPoly::from_i64(&[-1, 0, 1])).unwrap(), vec![rat(-1, 1), rat(1, 1)]);
        assert_eq!(rational_roots(&UniPoly::from_i64(&[-3, 2])).unwrap(), vec![rat(3, 2)]);
        assert!(rational_roots(&UniPoly::from_i64(&[-2, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(rational_roots(&UniPoly::new(vec![])), Err(Error::ZeroPolynomial));
        assert_eq!(rational_roots(&UniPoly::from_i64(&[0, 0])), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn zero_root_and_multiplicity() {
        // x^3 (x - 1)^2 (3x + 2)
        let p = UniPoly::from_i64(&[0, 0, 0, 2, -1, -4, 3]);
        assert_eq!(rational_roots(&p).unwrap(), vec![rat(-2, 3), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn constants_have_no_roots() {
        assert!(rational_roots(&UniPoly::from_i64(&[7])).unwrap().is_empty());
    }

    #[test]
    fn primitive_part_sign() {
        let p = UniPoly::from_i64(&[4, -6, -2]);
        assert_eq!(p.primitive_part(), UniPoly::from_i64(&[-2, 3, 1]));
        assert_eq!(p.content(), BigInt::from(2));
    }

    proptest! {
        /// Roots planted as linear factors are found, and every reported
        /// root evaluates to zero.
        #[test]
        fn planted_roots_found(
            planted in proptest::collection::vec((-30i64..30, 1i64..12), 1..4),
        ) {
            let mut p = UniPoly::from_i64(&[1]);
            for (u, v) in &planted {
                p = mul(&p, &UniPoly::from_i64(&[-u, *v]));
            }
            // x^2 + 2 contributes no rational roots
            let p = mul(&p, &UniPoly::from_i64(&[2, 0, 1]));
            let roots = rational_roots(&p).unwrap();
            for (u, v) in &planted {
                prop_assert!(roots.contains(&rat(*u, *v)));
            }
            for r in &roots {
                prop_assert!(p.eval_rat(r).is_zero());
            }
        }
    }

    fn mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut out = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        UniPoly::new(out)
    }
}
