//! Short Weierstrass curves `y^2 = x^3 + a x + b` over Q with exact group
//! law, rational torsion and product dynamical systems.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{factorize, rational_roots, UniPoly};
use crate::error::{Error, Result};
use crate::projective::parse_rational;

/// Mazur: a rational torsion point has order at most 12.
pub const MAZUR_MAX_ORDER: u32 = 12;
/// Mazur: a rational torsion subgroup has at most 16 elements.
pub const MAZUR_MAX_SIZE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EllipticCurve {
    a: BigInt,
    b: BigInt,
    disc: BigInt,
}

impl EllipticCurve {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        let disc: BigInt = -16 * (4 * a.pow(3) + 27 * b.pow(2));
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(EllipticCurve { a, b, disc })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        Self::new(a.into(), b.into())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// `-16 (4a^3 + 27b^2)`.
    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    fn rhs(&self, x: &BigRational) -> BigRational {
        x * x * x + BigRational::from_integer(self.a.clone()) * x + BigRational::from_integer(self.b.clone())
    }

    pub fn contains(&self, p: &ECPoint) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine { x, y } => y * y == self.rhs(x),
        }
    }

    /// Affine point with a membership check.
    pub fn point(&self, x: BigRational, y: BigRational) -> Result<ECPoint> {
        let p = ECPoint::Affine { x, y };
        self.check(&p)?;
        Ok(p)
    }

    pub fn point_i64(&self, x: i64, y: i64) -> Result<ECPoint> {
        self.point(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    fn check(&self, p: &ECPoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OffCurve)
        }
    }

    pub fn add(&self, p: &ECPoint, q: &ECPoint) -> Result<ECPoint> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &ECPoint, q: &ECPoint) -> ECPoint {
        let (ECPoint::Affine { x: x1, y: y1 }, ECPoint::Affine { x: x2, y: y2 }) = (p, q) else {
            return if p.is_infinity() { q.clone() } else { p.clone() };
        };
        let slope = if x1 != x2 {
            (y2 - y1) / (x2 - x1)
        } else if y1 == y2 && !y1.is_zero() {
            let three = BigRational::from_integer(3.into());
            let two = BigRational::from_integer(2.into());
            (three * x1 * x1 + BigRational::from_integer(self.a.clone())) / (two * y1)
        } else {
            return ECPoint::Infinity;
        };
        let x3 = &slope * &slope - x1 - x2;
        let y3 = slope * (x1 - &x3) - y1;
        ECPoint::Affine { x: x3, y: y3 }
    }

    pub fn neg(&self, p: &ECPoint) -> ECPoint {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => ECPoint::Affine { x: x.clone(), y: -y },
        }
    }

    /// `[m]P` by double-and-add.
    pub fn mul(&self, m: i64, p: &ECPoint) -> Result<ECPoint> {
        self.check(p)?;
        Ok(self.mul_unchecked(m, p))
    }

    fn mul_unchecked(&self, m: i64, p: &ECPoint) -> ECPoint {
        let mut base = if m < 0 { self.neg(p) } else { p.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = ECPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        acc
    }

    /// Order of `P` if it is torsion. A non-integral multiple certifies
    /// infinite order; otherwise the search stops at Mazur's bound.
    pub fn order(&self, p: &ECPoint) -> Result<Option<u32>> {
        self.check(p)?;
        let mut q = p.clone();
        for k in 1..=MAZUR_MAX_ORDER {
            match &q {
                ECPoint::Infinity => return Ok(Some(k)),
                ECPoint::Affine { x, y } => {
                    if !x.is_integer() || !y.is_integer() {
                        return Ok(None);
                    }
                    let y = y.to_integer();
                    if !y.is_zero() && !(&self.disc % (&y * &y)).is_zero() {
                        return Ok(None);
                    }
                }
            }
            q = self.add_unchecked(&q, p);
        }
        Ok(None)
    }

    pub fn is_torsion(&self, p: &ECPoint) -> Result<bool> {
        Ok(self.order(p)?.is_some())
    }

    /// Integral points allowed by Lutz–Nagell: `y = 0` or `y^2 | Δ`.
    pub fn lutz_nagell_candidates(&self) -> Vec<ECPoint> {
        let mut ys = vec![BigInt::zero()];
        ys.extend(square_divisor_roots(&self.disc));
        let mut out = Vec::new();
        for y in ys {
            // x^3 + a x + (b - y^2)
            let cubic = UniPoly::new(vec![&self.b - &y * &y, self.a.clone(), BigInt::zero(), BigInt::one()]);
            for x in rational_roots(&cubic).expect("monic cubic is nonzero") {
                if !x.is_integer() {
                    continue;
                }
                let yr = BigRational::from_integer(y.clone());
                out.push(ECPoint::Affine { x: x.clone(), y: yr.clone() });
                if !y.is_zero() {
                    out.push(ECPoint::Affine { x, y: -yr });
                }
            }
        }
        out.sort();
        out
    }
}

/// Positive `y` with `y^2 | n`.
fn square_divisor_roots(n: &BigInt) -> Vec<BigInt> {
    let mut roots = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for r in &roots {
            let mut pk = BigInt::one();
            for _ in 0..=e / 2 {
                next.push(r * &pk);
                pk *= &p;
            }
        }
        roots = next;
    }
    roots.sort();
    roots
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3")?;
        for (c, mono) in [(&self.a, "*x"), (&self.b, "")] {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            if c.abs().is_one() && !mono.is_empty() {
                write!(f, " {sign} x")?;
            } else {
                write!(f, " {sign} {}{mono}", c.abs())?;
            }
        }
        Ok(())
    }
}

/// Parses `"a,b"`.
impl FromStr for EllipticCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("expected curve as \"a,b\", got {s:?}"));
        let (a, b) = s.trim().trim_start_matches('[').trim_end_matches(']').split_once(',').ok_or_else(bad)?;
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        EllipticCurve::new(a, b)
    }
}

/// The identity `O` or an affine point. Ordered with `O` first, then by
/// `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ECPoint {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

impl ECPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }
}

impl fmt::Display for ECPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ECPoint::Infinity => write!(f, "O"),
            ECPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// Parses `"O"`, `"x,y"` or `"(x, y)"` with rational coordinates. The
/// curve membership is checked where the point is used.
impl FromStr for ECPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "O" {
            return Ok(ECPoint::Infinity);
        }
        let bad = || Error::Precondition(format!("expected point as \"O\" or \"x,y\", got {s:?}"));
        let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
        let (x, y) = inner.split_once(',').ok_or_else(bad)?;
        Ok(ECPoint::Affine {
            x: parse_rational(x.trim()).ok_or_else(bad)?,
            y: parse_rational(y.trim()).ok_or_else(bad)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionStructure {
    /// `Z/n`.
    Cyclic(u32),
    /// `Z/2 x Z/2n`.
    TwoByTwoN(u32),
}

impl fmt::Display for TorsionStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionStructure::Cyclic(1) => write!(f, "trivial"),
            TorsionStructure::Cyclic(n) => write!(f, "Z/{n}"),
            TorsionStructure::TwoByTwoN(n) => write!(f, "Z/2 x Z/{}", 2 * n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionGroup {
    /// Sorted, `O` first.
    pub points: Vec<ECPoint>,
    pub orders: BTreeMap<ECPoint, u32>,
    pub structure: TorsionStructure,
}

impl TorsionGroup {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ECPoint) -> bool {
        self.orders.contains_key(p)
    }

    pub fn exponent(&self) -> u32 {
        self.orders.values().fold(1, |l, &o| l.lcm(&o))
    }
}

/// `E(Q)_tors` from the Lutz–Nagell candidates, closed under addition.
pub fn torsion_group(e: &EllipticCurve) -> TorsionGroup {
    let mut points = vec![ECPoint::Infinity];
    for p in e.lutz_nagell_candidates() {
        if e.order(&p).expect("candidate lies on the curve").is_some() {
            points.push(p);
        }
    }
    let set: HashSet<&ECPoint> = points.iter().collect();
    for p in &points {
        for q in &points {
            assert!(set.contains(&e.add_unchecked(p, q)), "torsion candidates must be closed under addition");
        }
    }
    drop(set);
    points.sort();
    let orders: BTreeMap<ECPoint, u32> =
        points.iter().map(|p| (p.clone(), e.order(p).expect("on curve").expect("torsion"))).collect();
    let n = points.len() as u32;
    debug_assert!(points.len() <= MAZUR_MAX_SIZE);
    let structure =
        if orders.values().any(|&o| o == n) { TorsionStructure::Cyclic(n) } else { TorsionStructure::TwoByTwoN(n / 4) };
    TorsionGroup { points, orders, structure }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultPeriodic {
    pub m: i64,
    /// Periodic points with their orders, sorted.
    pub points: Vec<(ECPoint, u32)>,
    /// For each periodic point, its backward chain under `[m]` inside the
    /// torsion group: `chain[0]` is the point and `[m] chain[k+1] = chain[k]`,
    /// repeating with the listed period.
    pub chains: Vec<Vec<ECPoint>>,
    pub torsion_count: usize,
}

impl MultPeriodic {
    pub fn limit_count(&self) -> usize {
        self.chains.len()
    }
}

/// Rational periodic points of `[m]`, which are exactly the torsion points
/// of order prime to `m`.
pub fn periodic_under_mult(e: &EllipticCurve, m: i64) -> Result<MultPeriodic> {
    if m.abs() < 2 {
        return Err(Error::Precondition(format!("multiplier must satisfy |m| >= 2, got {m}")));
    }
    let tors = torsion_group(e);
    let index: BTreeMap<&ECPoint, usize> = tors.points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let image: Vec<usize> = tors.points.iter().map(|p| index[&e.mul_unchecked(m, p)]).collect();
    let n = tors.len();

    let mut points = Vec::new();
    let mut chains = Vec::new();
    for (i, p) in tors.points.iter().enumerate() {
        let order = tors.orders[p];
        // Direct route: iterate [m] on the finite group until it repeats.
        let mut j = image[i];
        let mut returns = None;
        for step in 1..=n {
            if j == i {
                returns = Some(step);
                break;
            }
            j = image[j];
        }
        let by_gcd = (m.unsigned_abs() as u32).gcd(&order) == 1;
        if returns.is_some() != by_gcd {
            return Err(Error::LemmaViolation(format!("{p}: orbit return and gcd(order, m) disagree")));
        }
        let Some(period) = returns else { continue };
        // Forward cycle p, [m]p, ..., then read it backwards.
        let mut forward = vec![i];
        for _ in 1..period {
            forward.push(image[*forward.last().expect("nonempty")]);
        }
        let chain: Vec<ECPoint> = (0..period).map(|k| tors.points[forward[(period - k) % period]].clone()).collect();
        for k in 0..period {
            if e.mul_unchecked(m, &chain[(k + 1) % period]) != chain[k] {
                return Err(Error::LemmaViolation(format!("backward chain from {p} breaks at {k}")));
            }
        }
        points.push((p.clone(), order));
        chains.push(chain);
    }
    Ok(MultPeriodic { m, points, chains, torsion_count: n })
}

/// One factor of a product map: `P -> [m]P + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMap {
    pub curve: EllipticCurve,
    pub m: i64,
    pub t: ECPoint,
}

impl FactorMap {
    pub fn new(curve: EllipticCurve, m: i64, t: ECPoint) -> Result<Self> {
        curve.check(&t)?;
        if m == 0 {
            return Err(Error::UnsupportedSystem("multiplier 0 is not surjective".into()));
        }
        Ok(FactorMap { curve, m, t })
    }

    pub fn apply(&self, p: &ECPoint) -> Result<ECPoint> {
        let mp = self.curve.mul(self.m, p)?;
        Ok(self.curve.add_unchecked(&mp, &self.t))
    }
}

/// `(P, Q) -> ([m1]P + t1, [m2]Q + t2)` on `E1 x E2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSystem {
    pub first: FactorMap,
    pub second: FactorMap,
}

pub type ProductPoint = (ECPoint, ECPoint);

impl ProductSystem {
    /// Requires total degree `m1^2 m2^2 >= 2`.
    pub fn new(first: FactorMap, second: FactorMap) -> Result<Self> {
        if first.m.unsigned_abs() < 2 && second.m.unsigned_abs() < 2 {
            return Err(Error::UnsupportedSystem("product map has degree 1".into()));
        }
        Ok(ProductSystem { first, second })
    }

    /// `(P, Q) -> (P + t, [m]Q)` with `m >= 2`.
    pub fn translate_and_multiply(e1: EllipticCurve, e2: EllipticCurve, t: ECPoint, m: i64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Precondition(format!("multiplier must be at least 2, got {m}")));
        }
        Self::new(FactorMap::new(e1, 1, t)?, FactorMap::new(e2, m, ECPoint::Infinity)?)
    }

    pub fn degree(&self) -> u64 {
        (self.first.m.unsigned_abs() * self.second.m.unsigned_abs()).pow(2)
    }

    pub fn evaluate(&self, (p, q): &ProductPoint) -> Result<ProductPoint> {
        Ok((self.first.apply(p)?, self.second.apply(q)?))
    }

    pub fn iterate(&self, x: &ProductPoint, k: usize) -> Result<ProductPoint> {
        let mut y = x.clone();
        for _ in 0..k {
            y = self.evaluate(&y)?;
        }
        Ok(y)
    }

    /// Smallest `l` in `1..=max` with `f^l(x) = x`.
    pub fn return_time(&self, x: &ProductPoint, max: usize) -> Result<Option<usize>> {
        let mut y = x.clone();
        for l in 1..=max {
            y = self.evaluate(&y)?;
            if &y == x {
                return Ok(Some(l));
            }
        }
        Ok(None)
    }
}

/// `(P, Q) -> ([d+1]P, Q)`.
pub fn build_d_plus_one_map(e1: EllipticCurve, e2: EllipticCurve, d: u32) -> Result<ProductSystem> {
    if d < 1 {
        return Err(Error::Precondition("d must be at least 1".into()));
    }
    let m = i64::from(d) + 1;
    ProductSystem::new(FactorMap::new(e1, m, ECPoint::Infinity)?, FactorMap::new(e2, 1, ECPoint::Infinity)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackwardChainReport {
    /// `x_0, …, x_k`.
    pub points: Vec<ProductPoint>,
    /// `f(x_{n+1}) = x_n` for every `n < k`.
    pub relations_hold: bool,
    /// The first coordinates are pairwise distinct, so no `x_n` repeats.
    pub distinct: bool,
}

impl BackwardChainReport {
    pub fn verified(&self) -> bool {
        self.relations_hold && self.distinct
    }
}

/// Checks the chain `x_n = (-[n]T, O)` of `(P, Q) -> (P + T, [m]Q)` forward
/// to depth `k`.
pub fn verify_backward_chain(sys: &ProductSystem, k: usize) -> Result<BackwardChainReport> {
    let FactorMap { curve: e1, m: m1, t } = &sys.first;
    if *m1 != 1 || !sys.second.t.is_infinity() {
        return Err(Error::UnsupportedSystem("the closed-form chain needs the shape (P + T, [m]Q)".into()));
    }
    if e1.is_torsion(t)? {
        return Err(Error::TorsionTranslation);
    }
    verify_chain_with(sys, |n| Ok((e1.mul_unchecked(-(n as i64), t), ECPoint::Infinity)), k)
}

/// Forward check of an arbitrary chain generator.
pub fn verify_chain_with(
    sys: &ProductSystem,
    generator: impl Fn(usize) -> Result<ProductPoint>,
    k: usize,
) -> Result<BackwardChainReport> {
    let points: Vec<ProductPoint> = (0..=k).map(generator).collect::<Result<_>>()?;
    let mut relations_hold = true;
    for n in 0..k {
        relations_hold &= sys.evaluate(&points[n + 1])? == points[n];
    }
    let firsts: HashSet<&ECPoint> = points.iter().map(|(p, _)| p).collect();
    let distinct = firsts.len() == points.len();
    Ok(BackwardChainReport { points, relations_hold, distinct })
}

/// `x -> [m]x + a` on a single curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineECMap {
    pub curve: EllipticCurve,
    pub m: i64,
    pub offset: ECPoint,
}

impl AffineECMap {
    pub fn new(curve: EllipticCurve, m: i64, offset: ECPoint) -> Result<Self> {
        if m.unsigned_abs() < 2 {
            return Err(Error::Precondition(format!("multiplier must satisfy |m| >= 2, got {m}")));
        }
        curve.check(&offset)?;
        Ok(AffineECMap { curve, m, offset })
    }

    pub fn apply(&self, p: &ECPoint) -> Result<ECPoint> {
        let mp = self.curve.mul(self.m, p)?;
        Ok(self.curve.add_unchecked(&mp, &self.offset))
    }

    pub fn iterate(&self, p: &ECPoint, l: usize) -> Result<ECPoint> {
        let mut q = p.clone();
        for _ in 0..l {
            q = self.apply(&q)?;
        }
        Ok(q)
    }

    /// Smallest `l` in `1..=max` with `f^l(O) = O`.
    pub fn origin_return_time(&self, max: usize) -> Result<Option<usize>> {
        let mut q = ECPoint::Infinity;
        for l in 1..=max {
            q = self.apply(&q)?;
            if q.is_infinity() {
                return Ok(Some(l));
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionImageReport {
    pub l: usize,
    pub offset_is_torsion: bool,
    /// `(b, f(b))` for every torsion point `b`.
    pub images: Vec<(ECPoint, ECPoint)>,
    pub preserves_torsion: bool,
}

/// Given `f^l(O) = O`, checks that the offset is torsion and that `f` maps
/// the torsion group into itself.
pub fn torsion_image_property(fmap: &AffineECMap, l: usize) -> Result<TorsionImageReport> {
    if l == 0 || !fmap.iterate(&ECPoint::Infinity, l)?.is_infinity() {
        return Err(Error::Precondition(format!("f^{l}(O) != O")));
    }
    let tors = torsion_group(&fmap.curve);
    let offset_is_torsion = tors.contains(&fmap.offset);
    let images: Vec<(ECPoint, ECPoint)> =
        tors.points.iter().map(|b| Ok((b.clone(), fmap.apply(b)?))).collect::<Result<_>>()?;
    let preserves_torsion = images.iter().all(|(_, fb)| tors.contains(fb));
    Ok(TorsionImageReport { l, offset_is_torsion, images, preserves_torsion })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn e(a: i64, b: i64) -> EllipticCurve {
        EllipticCurve::from_i64(a, b).unwrap()
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(EllipticCurve::from_i64(0, 0), Err(Error::SingularCurve));
        assert_eq!(EllipticCurve::from_i64(-3, 2), Err(Error::SingularCurve));
        assert_eq!(e(0, 1).discriminant(), &BigInt::from(-432));
        assert_eq!(e(0, -2).discriminant(), &BigInt::from(-1728));
    }

    #[test]
    fn addition_examples() {
        let c = e(0, -2);
        let p = c.point_i64(3, 5).unwrap();
        assert_eq!(c.add(&p, &ECPoint::Infinity).unwrap(), p);
        assert_eq!(c.add(&p, &c.point_i64(3, -5).unwrap()).unwrap(), ECPoint::Infinity);
        let c = e(0, 1);
        let sum = c.add(&c.point_i64(2, 3).unwrap(), &c.point_i64(0, 1).unwrap()).unwrap();
        assert_eq!(sum, c.point_i64(-1, 0).unwrap());
    }

    #[test]
    fn off_curve_rejected() {
        let c = e(0, 1);
        let bad = ECPoint::Affine { x: rat(1, 1), y: rat(1, 1) };
        assert_eq!(c.add(&bad, &ECPoint::Infinity), Err(Error::OffCurve));
        assert!(c.point_i64(1, 1).is_err());
    }

    #[test]
    fn multiplication_examples() {
        let c = e(0, 1);
        let p = c.point_i64(0, 1).unwrap();
        assert_eq!(c.mul(6, &p).unwrap(), ECPoint::Infinity);
        assert_eq!(c.mul(2, &p).unwrap(), c.point_i64(0, -1).unwrap());
        assert_eq!(c.mul(2, &c.point_i64(2, 3).unwrap()).unwrap(), p);
        assert_eq!(c.mul(1, &p).unwrap(), p);
        assert_eq!(c.mul(0, &p).unwrap(), ECPoint::Infinity);
        assert_eq!(c.mul(-2, &p).unwrap(), c.neg(&c.mul(2, &p).unwrap()));

        let c = e(0, -2);
        let q = c.mul(5, &c.point_i64(3, 5).unwrap()).unwrap();
        assert!(c.contains(&q));
        let ECPoint::Affine { x, .. } = q else { panic!() };
        assert!(x.denom() > &BigInt::from(1000));
    }

    #[test]
    fn torsion_examples() {
        let t = torsion_group(&e(0, 1));
        assert_eq!(t.structure, TorsionStructure::Cyclic(6));
        assert_eq!(t.len(), 6);
        assert_eq!(t.orders[&e(0, 1).point_i64(2, 3).unwrap()], 6);
        assert_eq!(t.orders[&e(0, 1).point_i64(0, -1).unwrap()], 3);
        assert_eq!(t.orders[&e(0, 1).point_i64(-1, 0).unwrap()], 2);

        let t = torsion_group(&e(-1, 0));
        assert_eq!(t.structure, TorsionStructure::TwoByTwoN(1));
        assert_eq!(t.len(), 4);

        let t = torsion_group(&e(0, -2));
        assert_eq!(t.points, vec![ECPoint::Infinity]);
        assert_eq!(t.structure.to_string(), "trivial");
    }

    #[test]
    fn non_torsion_detected() {
        let c = e(0, -2);
        assert_eq!(c.order(&c.point_i64(3, 5).unwrap()).unwrap(), None);
        assert_eq!(c.order(&ECPoint::Infinity).unwrap(), Some(1));
    }

    #[test]
    fn mult_periodic_examples() {
        let c = e(0, 1);
        let r = periodic_under_mult(&c, 2).unwrap();
        let pts: Vec<ECPoint> = r.points.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(pts, vec![ECPoint::Infinity, c.point_i64(0, -1).unwrap(), c.point_i64(0, 1).unwrap()]);
        assert!(r.points.iter().all(|(_, o)| *o != 6));
        assert_eq!(r.limit_count(), 3);
        assert!(r.limit_count() <= r.torsion_count);
        assert_eq!(periodic_under_mult(&e(0, -2), 2).unwrap().points, vec![(ECPoint::Infinity, 1)]);
    }

    #[test]
    fn product_examples() {
        let c = e(0, -2);
        let g = c.point_i64(3, 5).unwrap();
        let sys = ProductSystem::translate_and_multiply(c.clone(), c.clone(), ECPoint::Infinity, 2).unwrap();
        for k in 1..=3 {
            let x = (c.mul(k, &g).unwrap(), ECPoint::Infinity);
            assert_eq!(sys.evaluate(&x).unwrap(), x);
        }
        let sys = ProductSystem::translate_and_multiply(c.clone(), c.clone(), g.clone(), 2).unwrap();
        let x = (c.mul(-4, &g).unwrap(), ECPoint::Infinity);
        assert_eq!(sys.evaluate(&x).unwrap(), (c.mul(-3, &g).unwrap(), ECPoint::Infinity));
        let o = (ECPoint::Infinity, ECPoint::Infinity);
        let sys = ProductSystem::translate_and_multiply(c.clone(), c, ECPoint::Infinity, 2).unwrap();
        assert_eq!(sys.evaluate(&o).unwrap(), o);
    }

    #[test]
    fn backward_chain_examples() {
        let c = e(0, -2);
        let sys = ProductSystem::translate_and_multiply(c.clone(), c.clone(), c.point_i64(3, 5).unwrap(), 2).unwrap();
        let r = verify_backward_chain(&sys, 10).unwrap();
        assert!(r.verified());
        assert_eq!(r.points.len(), 11);
        assert!(verify_backward_chain(&sys, 0).unwrap().verified());

        let c = e(0, 1);
        let sys = ProductSystem::translate_and_multiply(c.clone(), c.clone(), c.point_i64(2, 3).unwrap(), 2).unwrap();
        assert_eq!(verify_backward_chain(&sys, 5), Err(Error::TorsionTranslation));
    }

    #[test]
    fn d_plus_one_examples() {
        let c = e(0, -2);
        let sys = build_d_plus_one_map(c.clone(), c.clone(), 1).unwrap();
        assert_eq!(sys.first.m, 2);
        let g = c.point_i64(3, 5).unwrap();
        for k in 1..=4 {
            let x = (ECPoint::Infinity, c.mul(k, &g).unwrap());
            assert_eq!(sys.evaluate(&x).unwrap(), x);
        }
        assert!(build_d_plus_one_map(c.clone(), c, 0).is_err());
    }

    #[test]
    fn torsion_image_examples() {
        let c = e(0, 1);
        let f = AffineECMap::new(c.clone(), 2, ECPoint::Infinity).unwrap();
        let r = torsion_image_property(&f, 3).unwrap();
        assert!(r.offset_is_torsion && r.preserves_torsion);

        // f(O) = a and f(a) = [2]a + a = a: the origin never comes back.
        let f = AffineECMap::new(c.clone(), 2, c.point_i64(-1, 0).unwrap()).unwrap();
        assert_eq!(f.origin_return_time(24).unwrap(), None);
        assert!(matches!(torsion_image_property(&f, 2), Err(Error::Precondition(_))));

        // order-3 offset: f^2(O) = [3]a = O
        let f = AffineECMap::new(c.clone(), 2, c.point_i64(0, 1).unwrap()).unwrap();
        assert_eq!(f.origin_return_time(24).unwrap(), Some(2));
        let r = torsion_image_property(&f, 2).unwrap();
        assert!(r.offset_is_torsion && r.preserves_torsion);
        assert_eq!(r.images.len(), 6);
    }

    #[test]
    fn product_torsion_image_counterexample() {
        let c = e(0, -2);
        let a = c.point_i64(3, 5).unwrap();
        let sys = ProductSystem::new(
            FactorMap::new(c.clone(), 2, ECPoint::Infinity).unwrap(),
            FactorMap::new(c.clone(), -1, a.clone()).unwrap(),
        )
        .unwrap();
        let origin = (ECPoint::Infinity, ECPoint::Infinity);
        assert_eq!(sys.return_time(&origin, 10).unwrap(), Some(2));
        let image = sys.evaluate(&origin).unwrap();
        assert_eq!(image, (ECPoint::Infinity, a));
        assert!(!c.is_torsion(&image.1).unwrap());
    }

    #[test]
    fn parse_points_and_curves() {
        assert_eq!("O".parse::<ECPoint>().unwrap(), ECPoint::Infinity);
        assert_eq!("3,5".parse::<ECPoint>().unwrap(), ECPoint::Affine { x: rat(3, 1), y: rat(5, 1) });
        assert_eq!("(1/4, -3/8)".parse::<ECPoint>().unwrap(), ECPoint::Affine { x: rat(1, 4), y: rat(-3, 8) });
        assert_eq!("0,1".parse::<EllipticCurve>().unwrap(), e(0, 1));
        assert!("0,0".parse::<EllipticCurve>().is_err());
        assert_eq!(e(-1, 0).to_string(), "y^2 = x^3 - x");
        assert_eq!(e(0, -2).to_string(), "y^2 = x^3 - 2");
    }
}
