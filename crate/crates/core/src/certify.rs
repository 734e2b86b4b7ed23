//! Exact descent certificates for maps of `P^1` and canonical heights.
//!
//! From the cofactor identities `px F + qx G = Res x^(2d-1)` and
//! `py F + qy G = Res y^(2d-1)`, evaluated at a point with coprime integer
//! coordinates of height `H`, one gets
//!
//! ```text
//! |Res| H^(2d-1) <= B H^(d-1) g H(f(P)),   g = gcd(F(P), G(P)) | Res,
//! ```
//!
//! hence `B H(f(P)) >= H(P)^d` with `B = max(‖px‖₁ + ‖qx‖₁, ‖py‖₁ + ‖qy‖₁)`.
//! Any point with `H(P)^(d-1) > B` strictly increases in height under `f`,
//! so every periodic point has `H <= M = floor(B^(1/(d-1)))`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{self, iroot_floor, solve_sylvester_cofactors, SylvesterCofactors};
use crate::error::{Error, Result};
use crate::projective::{Morphism, ProjPoint};

/// Multiplicative descent constant `B` and candidate cap `M` for a map of
/// `P^1`, together with the data they were derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentCertificate {
    degree: u32,
    bound: BigInt,
    cap: BigInt,
    cofactors: SylvesterCofactors,
    upper: BigInt,
    iterated: Option<u32>,
}

impl DescentCertificate {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `B`.
    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    /// `M`, the largest height a periodic point can have.
    pub fn cap(&self) -> &BigInt {
        &self.cap
    }

    pub fn resultant(&self) -> &BigInt {
        &self.cofactors.resultant
    }

    pub fn cofactors(&self) -> &SylvesterCofactors {
        &self.cofactors
    }

    /// `(‖px‖₁ + ‖qx‖₁, ‖py‖₁ + ‖qy‖₁)`.
    pub fn cofactor_norms(&self) -> (BigInt, BigInt) {
        self.cofactors.norms()
    }

    /// `max_i ‖F_i‖₁`, the constant of the upper height inequality.
    pub fn upper_constant(&self) -> &BigInt {
        &self.upper
    }

    /// Exact check of `B H(f(P)) >= H(P)^d`.
    pub fn lower_bound_holds(&self, f: &Morphism, p: &ProjPoint) -> Result<bool> {
        let image = f.evaluate(p)?;
        Ok(&self.bound * image.height().0 >= p.height().0.pow(self.degree))
    }

    /// True when a point of this height provably grows under every iterate.
    pub fn escapes(&self, height: &BigInt) -> bool {
        height > &self.cap
    }

    /// `Some(k)` when `B` was obtained by iterating the inequality of the
    /// `k`-th root map rather than from this map's own cofactors.
    pub fn iterated_from(&self) -> Option<u32> {
        self.iterated
    }

    /// `max(ln B, ln max‖F_i‖₁)`: bounds `|h(f(P)) - d h(P)|` for all `P`.
    pub fn height_constant(&self) -> f64 {
        arith::ln_big(&self.bound).max(arith::ln_big(&self.upper))
    }
}

/// Builds the descent certificate of a map of `P^1`.
pub fn certify_descent(f: &Morphism) -> Result<DescentCertificate> {
    let (fx, gx) = f.binary_forms().ok_or(Error::NotP1)?;
    let d = f.degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall(d as usize));
    }
    let cofactors = solve_sylvester_cofactors(fx, gx)?;
    if cofactors.resultant.is_zero() {
        return Err(Error::NotAMorphism);
    }
    let (nx, ny) = cofactors.norms();
    let bound = nx.max(ny).max(BigInt::one());
    let cap = iroot_floor(&bound, d - 1)?;
    Ok(DescentCertificate { degree: d, bound, cap, cofactors, upper: f.max_l1_norm(), iterated: None })
}

/// Certificate for `fk = f^k` given the certificate of `f`.
///
/// Applying `B H(f(P)) >= H(P)^d` `k` times gives
/// `B^((d^k - 1)/(d - 1)) H(f^k(P)) >= H(P)^(d^k)`, whose cap is again
/// `floor(B^(1/(d-1)))`. The smaller of this and the cofactor bound of `fk`
/// is used.
pub fn certify_power(fk: &Morphism, base: &DescentCertificate, k: u32) -> Result<DescentCertificate> {
    let mut cert = certify_descent(fk)?;
    let d = BigInt::from(base.degree);
    if k == 0 || BigInt::from(cert.degree) != d.pow(k) {
        return Err(Error::Precondition(format!("map is not the {k}-th iterate of a degree {d} map")));
    }
    let exponent = (0..k).map(|i| base.degree.pow(i)).sum::<u32>();
    let iterated = base.bound.pow(exponent);
    if iterated < cert.bound {
        cert.cap = iroot_floor(&iterated, cert.degree - 1)?;
        cert.bound = iterated;
        cert.iterated = Some(k);
    }
    Ok(cert)
}

/// An approximation of the canonical height with a rigorous radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalHeightValue {
    pub value: f64,
    pub radius: f64,
    pub iterations: u32,
}

/// Default cap on coordinate size while iterating, in bits.
pub const DEFAULT_MAX_BITS: u64 = 1 << 20;

/// `C / (d^N (d - 1))`.
pub fn tate_radius(constant: f64, degree: u32, iterations: u32) -> f64 {
    let d = degree as f64;
    constant / (d.powi(iterations as i32) * (d - 1.0))
}

/// Smallest `N` whose radius, doubled to leave room for rounding, meets the
/// target.
pub fn iterations_for_radius(constant: f64, degree: u32, target: f64) -> u32 {
    let mut n = 0;
    while 2.0 * tate_radius(constant, degree, n) > target {
        n += 1;
    }
    n
}

/// `ln H(f^N(P)) / d^N` with `N` fixed.
pub fn canonical_height_at(
    f: &Morphism,
    cert: &DescentCertificate,
    p: &ProjPoint,
    iterations: u32,
    max_bits: u64,
) -> Result<CanonicalHeightValue> {
    let mut q = p.clone();
    for _ in 0..iterations {
        q = f.evaluate(&q)?;
        let bits = q.coords().iter().map(arith::bits).max().unwrap_or(0);
        if bits > max_bits {
            return Err(Error::IterationBudget { bits, limit: max_bits });
        }
    }
    let d = cert.degree as f64;
    let value = q.height().ln() / d.powi(iterations as i32);
    Ok(CanonicalHeightValue { value, radius: tate_radius(cert.height_constant(), cert.degree, iterations), iterations })
}

/// Canonical height of `P` to within `target_radius`.
pub fn canonical_height(
    f: &Morphism,
    cert: &DescentCertificate,
    p: &ProjPoint,
    target_radius: f64,
    max_bits: u64,
) -> Result<CanonicalHeightValue> {
    if target_radius.is_nan() || target_radius <= 0.0 {
        return Err(Error::InvalidRadius(target_radius));
    }
    let n = iterations_for_radius(cert.height_constant(), cert.degree, target_radius);
    canonical_height_at(f, cert, p, n, max_bits)
}
