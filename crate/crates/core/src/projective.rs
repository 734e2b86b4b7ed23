//! Points of projective space over Q, their heights, and morphisms given by
//! tuples of homogeneous integer forms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{self, rational_roots, resultant, BinaryForm};
use crate::error::{Error, Result};

/// A point of `P^n(Q)` in canonical form: coprime integer coordinates whose
/// first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

/// Multiplicative Weil height `H = max |x_i|` of a normalized point; the
/// logarithmic height is `ln H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultHeight(pub BigInt);

impl MultHeight {
    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn ln(&self) -> f64 {
        arith::ln_big(&self.0)
    }
}

impl fmt::Display for MultHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl ProjPoint {
    /// Canonical representative of an integer tuple.
    pub fn from_ints(mut coords: Vec<BigInt>) -> Result<Self> {
        let g = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let negate = coords.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative);
        let scale = if negate { -g } else { g };
        if !scale.is_one() {
            for c in &mut coords {
                *c /= &scale;
            }
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::from_ints(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Clears denominators, divides by the content and fixes the sign.
    pub fn normalize(raw: &[BigRational]) -> Result<Self> {
        let lcm = raw.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let ints = raw.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
        Self::from_ints(ints)
    }

    /// Assumes `coords` is already canonical.
    pub(crate) fn from_canonical(coords: Vec<BigInt>) -> Self {
        debug_assert_eq!(Self::from_ints(coords.clone()).ok().as_ref().map(|p| &p.coords), Some(&coords));
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// `n` for a point of `P^n`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn height(&self) -> MultHeight {
        MultHeight(self.coords.iter().map(Signed::abs).max().expect("nonempty"))
    }

    pub fn is_infinity(&self) -> bool {
        self.coords.last().is_some_and(Zero::is_zero)
    }

    /// Ordering by `(height, coordinates)`.
    pub fn cmp_height_lex(&self, other: &Self) -> Ordering {
        self.height().cmp(&other.height()).then_with(|| self.coords.cmp(&other.coords))
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_height_lex(other)
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Error from parsing a point literal such as `[4:1]` or `[1/2, -3]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePointError(pub String);

impl fmt::Display for ParsePointError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid point literal: {}", self.0)
    }
}

impl std::error::Error for ParsePointError {}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl FromStr for ProjPoint {
    type Err = ParsePointError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = || ParsePointError(s.to_string());
        let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(err)?;
        let sep = if inner.contains(':') { ':' } else { ',' };
        let raw: Option<Vec<BigRational>> = inner.split(sep).map(parse_rational).collect();
        let raw = raw.ok_or_else(err)?;
        if raw.len() < 2 {
            return Err(err());
        }
        ProjPoint::normalize(&raw).map_err(|_| err())
    }
}

/// Homogeneous integer form in `nvars` variables, stored sparsely by
/// exponent vector. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogForm {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl HomogForm {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomogForm { nvars, degree, terms: BTreeMap::new() }
    }

    /// Builds a form, merging repeated monomials and checking homogeneity.
    pub fn new(nvars: usize, degree: u32, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Result<Self> {
        let mut form = HomogForm::zero(nvars, degree);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: exps.len() });
            }
            let total: u32 = exps.iter().sum();
            if total != degree {
                return Err(Error::NotHomogeneous { expected: degree, found: total });
            }
            form.add_term(exps, c);
        }
        Ok(form)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn from_binary(f: &BinaryForm) -> Self {
        let d = f.degree() as u32;
        let terms = f.coeffs().iter().enumerate().map(|(i, c)| (vec![d - i as u32, i as u32], c.clone()));
        HomogForm::new(2, d, terms).expect("binary form is homogeneous")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn l1_norm(&self) -> BigInt {
        self.terms.values().map(Signed::abs).sum()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.values().map(BigInt::bits).max().unwrap_or(0)
    }

    pub fn to_binary(&self) -> Option<BinaryForm> {
        if self.nvars != 2 {
            return None;
        }
        let d = self.degree as usize;
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (e, c) in &self.terms {
            coeffs[e[1] as usize] = c.clone();
        }
        Some(BinaryForm::from_coeffs_unchecked(coeffs))
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(exps) {
                if e > 0 {
                    t *= v.pow(e);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn mul(&self, other: &HomogForm) -> HomogForm {
        assert_eq!(self.nvars, other.nvars);
        let mut out = HomogForm::zero(self.nvars, self.degree + other.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    fn add_assign(&mut self, other: &HomogForm) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    fn one(nvars: usize) -> HomogForm {
        let mut f = HomogForm::zero(nvars, 0);
        f.add_term(vec![0; nvars], BigInt::one());
        f
    }

    /// `self(g_0, ..., g_n)` for forms `g_i` of a common degree `e`.
    pub fn substitute(&self, inner: &[HomogForm]) -> HomogForm {
        assert_eq!(inner.len(), self.nvars);
        let nv = inner[0].nvars;
        let e = inner[0].degree;
        let mut out = HomogForm::zero(nv, self.degree * e);
        // powers cached per variable
        let mut powers: Vec<Vec<HomogForm>> = inner.iter().map(|g| vec![HomogForm::one(nv), g.clone()]).collect();
        for (exps, c) in &self.terms {
            let mut t = HomogForm::one(nv);
            for (i, &k) in exps.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&inner[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            for v in t.terms.values_mut() {
                *v *= c;
            }
            t.degree = self.degree * e;
            out.add_assign(&t);
        }
        out
    }
}

impl fmt::Display for HomogForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || exps.iter().all(|&e| e == 0) {
                parts.push(mag.to_string());
            }
            for (v, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("x{v}")),
                    _ => parts.push(format!("x{v}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// A self-map of `P^n` of degree `d >= 2`, given by `n + 1` forms.
///
/// For `n = 1` the resultant is nonzero, so the map is a genuine morphism.
/// For `n >= 2` morphism-hood is not certified and evaluation may hit the
/// base locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    forms: Vec<HomogForm>,
    degree: u32,
    binary: Option<(BinaryForm, BinaryForm)>,
    resultant: Option<BigInt>,
}

impl Morphism {
    pub fn new(forms: Vec<HomogForm>) -> Result<Self> {
        let n_plus_one = forms.len();
        if n_plus_one < 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: n_plus_one });
        }
        let degree = forms[0].degree;
        for f in &forms {
            if f.nvars != n_plus_one {
                return Err(Error::DimensionMismatch { expected: n_plus_one, found: f.nvars });
            }
            if f.degree != degree {
                return Err(Error::DegreeMismatch { left: degree as usize, right: f.degree as usize });
            }
        }
        if degree < 2 {
            return Err(Error::DegreeTooSmall(degree as usize));
        }
        let (binary, res) = if n_plus_one == 2 {
            let f = forms[0].to_binary().expect("two variables");
            let g = forms[1].to_binary().expect("two variables");
            let res = if f.is_zero() || g.is_zero() { BigInt::zero() } else { resultant(&f, &g)? };
            if res.is_zero() {
                return Err(Error::NotAMorphism);
            }
            (Some((f, g)), Some(res))
        } else {
            (None, None)
        };
        Ok(Morphism { forms, degree, binary, resultant: res })
    }

    /// The map `[x : y] -> [F(x, y) : G(x, y)]`.
    pub fn from_binary(f: &BinaryForm, g: &BinaryForm) -> Result<Self> {
        Self::new(vec![HomogForm::from_binary(f), HomogForm::from_binary(g)])
    }

    /// Shorthand for tests and examples: coefficient lists of `F` and `G`.
    pub fn p1_from_i64(f: &[i64], g: &[i64]) -> Result<Self> {
        Self::from_binary(&BinaryForm::from_i64(f)?, &BinaryForm::from_i64(g)?)
    }

    pub fn dim(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn forms(&self) -> &[HomogForm] {
        &self.forms
    }

    pub fn is_p1(&self) -> bool {
        self.binary.is_some()
    }

    pub fn binary_forms(&self) -> Option<(&BinaryForm, &BinaryForm)> {
        self.binary.as_ref().map(|(f, g)| (f, g))
    }

    /// Cached resultant, present exactly for maps of `P^1`.
    pub fn resultant(&self) -> Option<&BigInt> {
        self.resultant.as_ref()
    }

    /// `max_i ‖F_i‖₁`.
    pub fn max_l1_norm(&self) -> BigInt {
        self.forms.iter().map(HomogForm::l1_norm).max().expect("nonempty")
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.forms.iter().map(HomogForm::max_coeff_bits).max().unwrap_or(0)
    }

    fn check_dim(&self, p: &ProjPoint) -> Result<()> {
        if p.coords.len() != self.forms.len() {
            return Err(Error::DimensionMismatch { expected: self.forms.len(), found: p.coords.len() });
        }
        Ok(())
    }

    /// Raw image coordinates before normalization.
    pub fn image_coords(&self, p: &ProjPoint) -> Result<Vec<BigInt>> {
        self.check_dim(p)?;
        Ok(match &self.binary {
            Some((f, g)) => vec![f.eval(&p.coords[0], &p.coords[1]), g.eval(&p.coords[0], &p.coords[1])],
            None => self.forms.iter().map(|f| f.eval(&p.coords)).collect(),
        })
    }

    pub fn evaluate(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let image = self.image_coords(p)?;
        ProjPoint::from_ints(image).map_err(|_| Error::BaseLocus(p.to_string()))
    }

    /// `f^k(P)`; `iterate(P, 0) = P`.
    pub fn iterate(&self, p: &ProjPoint, k: usize) -> Result<ProjPoint> {
        let mut q = p.clone();
        for _ in 0..k {
            q = self.evaluate(&q)?;
        }
        Ok(q)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if self.forms.len() != inner.forms.len() {
            return Err(Error::DimensionMismatch { expected: self.forms.len(), found: inner.forms.len() });
        }
        let forms = self.forms.iter().map(|f| f.substitute(&inner.forms)).collect();
        Morphism::new(forms)
    }

    /// `f^{∘k}` for `k >= 1`, refusing to build coefficients wider than
    /// `max_bits`.
    pub fn power(&self, k: u32, max_bits: u64) -> Result<Morphism> {
        if k == 0 {
            return Err(Error::Precondition("power must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = self.compose(&acc)?;
            let bits = acc.max_coeff_bits();
            if bits > max_bits {
                return Err(Error::CompositionBudget { bits, limit: max_bits });
            }
        }
        Ok(acc)
    }

    /// All rational `P` with `f(P) = Q`, for maps of `P^1`.
    ///
    /// These are the roots of `b F - a G` where `Q = [a : b]`; the point at
    /// infinity is a root exactly when the `x^d` coefficient vanishes.
    pub fn preimages_p1(&self, q: &ProjPoint) -> Result<Vec<ProjPoint>> {
        let (f, g) = self.binary.as_ref().ok_or(Error::NotP1)?;
        self.check_dim(q)?;
        let (a, b) = (&q.coords[0], &q.coords[1]);
        let fiber = f.scale(b).add(&g.scale(&-a));
        debug_assert!(!fiber.is_zero(), "nonzero resultant rules out proportional forms");
        let mut out = Vec::new();
        if fiber.coeffs()[0].is_zero() {
            out.push(ProjPoint::from_canonical(vec![BigInt::one(), BigInt::zero()]));
        }
        for r in rational_roots(&fiber.dehomogenize())? {
            out.push(ProjPoint::normalize(&[r, BigRational::one()])?);
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, form) in self.forms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{form}")?;
        }
        write!(f, "]")
    }
}
