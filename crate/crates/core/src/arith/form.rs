use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::linalg::{bareiss_adjugate_column, bareiss_determinant};
use super::poly::UniPoly;
use crate::error::{Error, Result};

/// Homogeneous form in `x, y`; `coeffs[i]` multiplies `x^(d-i) y^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    /// Rejects the empty and the all-zero coefficient list.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The zero form of the given degree. Only cofactors are ever zero.
    pub fn zero(degree: usize) -> Self {
        BinaryForm { coeffs: vec![BigInt::zero(); degree + 1] }
    }

    pub(crate) fn from_coeffs_unchecked(coeffs: Vec<BigInt>) -> Self {
        debug_assert!(!coeffs.is_empty());
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        // Horner in x with running powers of y
        let mut acc = self.coeffs[0].clone();
        let mut y_pow = BigInt::one();
        for c in &self.coeffs[1..] {
            y_pow *= y;
            acc = acc * x + c * &y_pow;
        }
        acc
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm { coeffs: out }
    }

    /// Sum of two forms of equal degree.
    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        BinaryForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> BinaryForm {
        BinaryForm { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// `F(t, 1)` as a polynomial in `t`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// The monomial `x^(d-k) y^k` scaled by `c`.
    pub fn monomial(degree: usize, k: usize, c: BigInt) -> BinaryForm {
        let mut f = BinaryForm::zero(degree);
        f.coeffs[k] = c;
        f
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (xe, ye) = (d - i, i);
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (xe == 0 && ye == 0) {
                parts.push(mag.to_string());
            }
            for (v, e) in [("x", xe), ("y", ye)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn sylvester(f: &BinaryForm, g: &BinaryForm) -> Vec<Vec<BigInt>> {
    let d = f.degree();
    let n = 2 * d;
    let mut rows = Vec::with_capacity(n);
    for form in [f, g] {
        for shift in 0..d {
            let mut row = vec![BigInt::zero(); n];
            for (j, c) in form.coeffs.iter().enumerate() {
                row[shift + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

fn check_pair(f: &BinaryForm, g: &BinaryForm) -> Result<usize> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch { left: f.degree(), right: g.degree() });
    }
    if f.degree() == 0 {
        return Err(Error::Precondition("forms must have degree at least 1".into()));
    }
    Ok(f.degree())
}

/// Resultant of two binary forms of equal degree, as the determinant of
/// their Sylvester matrix.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Result<BigInt> {
    check_pair(f, g)?;
    Ok(bareiss_determinant(&sylvester(f, g)))
}

/// Integer cofactors of degree `d - 1` with
/// `px F + qx G = Res x^(2d-1)` and `py F + qy G = Res y^(2d-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylvesterCofactors {
    pub resultant: BigInt,
    pub px: BinaryForm,
    pub qx: BinaryForm,
    pub py: BinaryForm,
    pub qy: BinaryForm,
}

impl SylvesterCofactors {
    /// `(‖px‖₁ + ‖qx‖₁, ‖py‖₁ + ‖qy‖₁)`.
    pub fn norms(&self) -> (BigInt, BigInt) {
        (self.px.l1_norm() + self.qx.l1_norm(), self.py.l1_norm() + self.qy.l1_norm())
    }

    /// Expands both identities coefficient by coefficient.
    pub fn verify(&self, f: &BinaryForm, g: &BinaryForm) -> bool {
        let d = f.degree();
        let top = 2 * d - 1;
        let lhs_x = self.px.mul(f).add(&self.qx.mul(g));
        let lhs_y = self.py.mul(f).add(&self.qy.mul(g));
        lhs_x == BinaryForm::monomial(top, 0, self.resultant.clone())
            && lhs_y == BinaryForm::monomial(top, top, self.resultant.clone())
    }
}

/// Solves the transposed Sylvester system fraction-free. The unknowns are
/// the cofactor coefficients; with right-hand side `Res e_k` the solution
/// is a column of the adjugate and hence integral.
pub fn solve_sylvester_cofactors(f: &BinaryForm, g: &BinaryForm) -> Result<SylvesterCofactors> {
    let d = check_pair(f, g)?;
    let n = 2 * d;
    // column i < d: coefficients of p_i x^(d-1-i) y^i * F, then the same for G
    let mut a = vec![vec![BigInt::zero(); n]; n];
    for (offset, form) in [(0, f), (d, g)] {
        for i in 0..d {
            for (j, c) in form.coeffs.iter().enumerate() {
                a[i + j][offset + i] = c.clone();
            }
        }
    }
    let (res, ux) = bareiss_adjugate_column(&a, 0).ok_or(Error::NotAMorphism)?;
    let (_, uy) = bareiss_adjugate_column(&a, n - 1).ok_or(Error::NotAMorphism)?;
    let split = |u: Vec<BigInt>| {
        let (p, q) = u.split_at(d);
        (BinaryForm::from_coeffs_unchecked(p.to_vec()), BinaryForm::from_coeffs_unchecked(q.to_vec()))
    };
    let (px, qx) = split(ux);
    let (py, qy) = split(uy);
    let cof = SylvesterCofactors { resultant: res, px, qx, py, qy };
    if !cof.verify(f, g) {
        return Err(Error::Precondition("cofactor identity failed to verify".into()));
    }
    Ok(cof)
}
