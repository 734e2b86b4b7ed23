//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's arithmetic; inputs and outputs are converted at the
//! boundary only.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use orbita_core::{Morphism, ProjPoint};

/// Coprime coordinates, first nonzero positive.
pub fn canon(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    assert!(!g.is_zero(), "zero vector");
    for x in &mut v {
        *x = &*x / &g;
    }
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut v {
            *x = -&*x;
        }
    }
    v
}

pub fn height(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap()
}

/// Every point of P^n with height at most `m`, by scanning the full box.
pub fn naive_points(n: usize, m: i64) -> BTreeSet<Vec<BigInt>> {
    let side = (2 * m + 1) as usize;
    let total = side.pow(n as u32 + 1);
    let mut out = BTreeSet::new();
    for code in 0..total {
        let mut c = code;
        let mut v = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            v.push(BigInt::from((c % side) as i64 - m));
            c /= side;
        }
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_one() {
            out.insert(canon(v));
        }
    }
    out
}

/// Points of P^1 with height at most `m`, from coprime pairs directly.
pub fn naive_p1(m: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![BigInt::one(), BigInt::zero()], vec![BigInt::zero(), BigInt::one()]];
    for a in 1..=m {
        for b in 1..=m {
            if a.gcd(&b) == 1 {
                out.push(vec![BigInt::from(a), BigInt::from(b)]);
                out.push(vec![BigInt::from(a), BigInt::from(-b)]);
            }
        }
    }
    out
}

/// A map of P^1 given by two coefficient lists, highest power of x0 first.
#[derive(Clone, Debug)]
pub struct P1Map {
    pub f: Vec<i64>,
    pub g: Vec<i64>,
}

impl P1Map {
    pub fn degree(&self) -> u32 {
        self.f.len() as u32 - 1
    }

    fn eval_form(c: &[i64], x: &BigInt, y: &BigInt) -> BigInt {
        let d = c.len() - 1;
        let mut acc = BigInt::zero();
        let mut ypow = BigInt::one();
        let mut terms = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            terms.push(ypow.clone());
            ypow *= y;
        }
        let mut xpow = BigInt::one();
        for i in (0..=d).rev() {
            acc += BigInt::from(c[i]) * &xpow * &terms[i];
            xpow *= x;
        }
        acc
    }

    /// The raw image, or `None` on a common zero.
    pub fn eval(&self, p: &[BigInt]) -> Option<Vec<BigInt>> {
        let a = Self::eval_form(&self.f, &p[0], &p[1]);
        let b = Self::eval_form(&self.g, &p[0], &p[1]);
        if a.is_zero() && b.is_zero() {
            return None;
        }
        Some(canon(vec![a, b]))
    }

    pub fn to_morphism(&self) -> orbita_core::Result<Morphism> {
        Morphism::p1_from_i64(&self.f, &self.g)
    }
}

/// Resultant by the Sylvester determinant over the rationals.
pub fn sylvester_resultant(f: &[i64], g: &[i64]) -> BigInt {
    let d = f.len() - 1;
    let e = g.len() - 1;
    let size = d + e;
    let mut m = vec![vec![BigRational::zero(); size]; size];
    for r in 0..e {
        for (j, &c) in f.iter().enumerate() {
            m[r][r + j] = BigRational::from_integer(c.into());
        }
    }
    for r in 0..d {
        for (j, &c) in g.iter().enumerate() {
            m[e + r][r + j] = BigRational::from_integer(c.into());
        }
    }
    let mut det = BigRational::one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col].clone();
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            let factor = &row[col] / &pivot_row[col];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * y;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// Brute-force periodic set: scan every point of height at most `m`, iterate
/// up to `steps` times and keep the points that return to themselves. An
/// orbit is abandoned once its coordinates exceed `max_bits`.
pub fn brute_periodic(map: &P1Map, m: i64, steps: usize, max_bits: u64) -> BTreeSet<Vec<BigInt>> {
    let mut out = BTreeSet::new();
    for p in naive_p1(m) {
        let mut q = p.clone();
        for _ in 0..steps {
            let Some(next) = map.eval(&q) else { break };
            q = next;
            if q == p {
                out.insert(p.clone());
                break;
            }
            if height(&q).bits() > max_bits {
                break;
            }
        }
    }
    out
}

pub fn to_vec(p: &ProjPoint) -> Vec<BigInt> {
    p.coords().to_vec()
}

pub fn to_point(v: &[BigInt]) -> ProjPoint {
    ProjPoint::from_ints(v.to_vec()).unwrap()
}

/// Named maps plus `count` seeded random maps of degree 2 or 3 with
/// coefficients in `[-5, 5]` and nonzero resultant.
pub fn criterion_maps(count: usize, seed: u64) -> Vec<(String, P1Map)> {
    let mut maps = vec![
        ("z^2".to_string(), P1Map { f: vec![1, 0, 0], g: vec![0, 0, 1] }),
        ("z^2-1".to_string(), P1Map { f: vec![1, 0, -1], g: vec![0, 0, 1] }),
        ("z^3".to_string(), P1Map { f: vec![1, 0, 0, 0], g: vec![0, 0, 0, 1] }),
        ("z^2-2".to_string(), P1Map { f: vec![1, 0, -2], g: vec![0, 0, 1] }),
    ];
    let mut rng = StdRng::seed_from_u64(seed);
    while maps.len() < 4 + count {
        let d = if maps.len() % 2 == 0 { 2 } else { 3 };
        let f: Vec<i64> = (0..=d).map(|_| rng.random_range(-5..=5)).collect();
        let g: Vec<i64> = (0..=d).map(|_| rng.random_range(-5..=5)).collect();
        if sylvester_resultant(&f, &g).is_zero() {
            continue;
        }
        let name = format!("random-{}", maps.len() - 3);
        maps.push((name, P1Map { f, g }));
    }
    maps
}

/// Rational elliptic-curve arithmetic on `y^2 = x^3 + a x + b`, written
/// directly from the chord-tangent formulas.
#[derive(Clone, Debug)]
pub struct Curve {
    pub a: BigRational,
    pub b: BigRational,
}

pub type Pt = Option<(BigRational, BigRational)>;

impl Curve {
    pub fn new(a: i64, b: i64) -> Self {
        Curve { a: BigRational::from_integer(a.into()), b: BigRational::from_integer(b.into()) }
    }

    pub fn on(&self, p: &Pt) -> bool {
        match p {
            None => true,
            Some((x, y)) => y * y == x * x * x + &self.a * x + &self.b,
        }
    }

    pub fn add(&self, p: &Pt, q: &Pt) -> Pt {
        let (Some((x1, y1)), Some((x2, y2))) = (p, q) else {
            return p.clone().or_else(|| q.clone());
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return None;
            }
            let three = BigRational::from_integer(3.into());
            let two = BigRational::from_integer(2.into());
            (three * x1 * x1 + &self.a) / (two * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &lambda * &lambda - x1 - x2;
        let y3 = lambda * (x1 - &x3) - y1;
        Some((x3, y3))
    }

    pub fn neg(&self, p: &Pt) -> Pt {
        p.as_ref().map(|(x, y)| (x.clone(), -y))
    }

    pub fn mul(&self, k: i64, p: &Pt) -> Pt {
        let mut acc = None;
        for _ in 0..k.unsigned_abs() {
            acc = self.add(&acc, p);
        }
        if k < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }

    /// Order by repeated addition, giving up after `max`.
    pub fn order(&self, p: &Pt, max: u32) -> Option<u32> {
        let mut q = p.clone();
        for n in 1..=max {
            if q.is_none() {
                return Some(n);
            }
            q = self.add(&q, p);
        }
        None
    }

    /// Points with integer `x` in `[-r, r]`, plus the identity.
    pub fn small_integral_points(&self, r: i64) -> Vec<Pt> {
        let mut out = vec![None];
        for x in -r..=r {
            let xr = BigRational::from_integer(x.into());
            let rhs = &xr * &xr * &xr + &self.a * &xr + &self.b;
            if rhs.is_negative() {
                continue;
            }
            let n = rhs.to_integer();
            let s = n.sqrt();
            if &s * &s == n {
                let y = BigRational::from_integer(s.clone());
                out.push(Some((xr.clone(), y.clone())));
                if !s.is_zero() {
                    out.push(Some((xr.clone(), -y)));
                }
            }
        }
        out
    }
}

pub fn pt_i64(x: i64, y: i64) -> Pt {
    Some((BigRational::from_integer(x.into()), BigRational::from_integer(y.into())))
}

pub fn to_ec(p: &Pt) -> orbita_core::ECPoint {
    match p {
        None => orbita_core::ECPoint::Infinity,
        Some((x, y)) => orbita_core::ECPoint::Affine { x: x.clone(), y: y.clone() },
    }
}

pub fn from_ec(p: &orbita_core::ECPoint) -> Pt {
    match p {
        orbita_core::ECPoint::Infinity => None,
        orbita_core::ECPoint::Affine { x, y } => Some((x.clone(), y.clone())),
    }
}
