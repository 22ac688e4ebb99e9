//! Truncated polynomials `Z_{2^k}[x] / (x^m)`.
//!
//! Coefficients live in `u64` words. All arithmetic is wrapping mod `2^64`
//! and masked down to the low `k` bits, which is exact because `2^k`
//! divides `2^64`. Elements store a dense coefficient vector with trailing
//! zeros trimmed, so the logical length is always `m` while `x^w` for a
//! large `m` costs `w + 1` words rather than `m`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::RingError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingParams {
    k: u32,
    m: usize,
}

impl RingParams {
    pub fn new(k: u32, m: usize) -> Result<Self, RingError> {
        if !(1..=64).contains(&k) {
            return Err(RingError::InvalidExponent(k));
        }
        if m == 0 {
            return Err(RingError::InvalidTruncation);
        }
        Ok(RingParams { k, m })
    }

    /// Bits per coefficient.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Truncation degree: every element has degree below `m`.
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        if self.k == 64 {
            u64::MAX
        } else {
            (1u64 << self.k) - 1
        }
    }

    fn check(&self, other: &RingParams) -> Result<(), RingError> {
        if self == other {
            Ok(())
        } else {
            Err(RingError::ParamMismatch(self.k, self.m, other.k, other.m))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    params: RingParams,
    // coeffs[d] is the coefficient of x^d; no trailing zeros, len <= m
    coeffs: Vec<u64>,
}

impl RingElement {
    pub fn zero(params: RingParams) -> Self {
        RingElement {
            params,
            coeffs: Vec::new(),
        }
    }

    pub fn one(params: RingParams) -> Self {
        Self::constant(params, 1)
    }

    pub fn constant(params: RingParams, a: u64) -> Self {
        let mut e = RingElement {
            params,
            coeffs: vec![a],
        };
        e.normalize();
        e
    }

    /// `a * x^degree`.
    pub fn monomial(params: RingParams, degree: usize, a: u64) -> Result<Self, RingError> {
        if degree >= params.m {
            return Err(RingError::DegreeTooLarge {
                degree,
                m: params.m,
            });
        }
        Ok(Self::monomial_truncating(params, degree, a))
    }

    /// `a * x^degree`, which is zero in the ring when `degree >= m`.
    pub fn monomial_truncating(params: RingParams, degree: usize, a: u64) -> Self {
        if degree >= params.m || a & params.mask() == 0 {
            return Self::zero(params);
        }
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = a & params.mask();
        RingElement { params, coeffs }
    }

    /// Builds an element from low-to-high coefficients, reducing mod `2^k`
    /// and dropping everything at degree `m` or above.
    pub fn from_coeffs(params: RingParams, coeffs: &[u64]) -> Self {
        let mut e = RingElement {
            params,
            coeffs: coeffs[..coeffs.len().min(params.m)].to_vec(),
        };
        e.normalize();
        e
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn coeff(&self, degree: usize) -> u64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    /// Coefficients up to the highest nonzero one.
    pub fn coeffs_trimmed(&self) -> &[u64] {
        &self.coeffs
    }

    /// The full length-`m` coefficient vector.
    pub fn coeffs(&self) -> Vec<u64> {
        let mut v = self.coeffs.clone();
        v.resize(self.params.m, 0);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest degree with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// True when every coefficient is even.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().all(|c| c & 1 == 0)
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| (d, c))
    }

    fn normalize(&mut self) {
        let mask = self.params.mask();
        for c in &mut self.coeffs {
            *c &= mask;
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.params.check(&other.params)?;
        let mut out = self.clone();
        out.add_raw(&other.coeffs);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.params.check(&other.params)?;
        let mut out = self.clone();
        out.sub_raw(&other.coeffs);
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.params.check(&other.params)?;
        let mut out = Self::zero(self.params);
        out.mul_add_raw(&self.coeffs, &other.coeffs);
        Ok(out)
    }

    /// `self += a * b`.
    pub fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        assert_params(&self.params, &a.params);
        assert_params(&self.params, &b.params);
        self.mul_add_raw(&a.coeffs, &b.coeffs);
    }

    fn add_raw(&mut self, other: &[u64]) {
        if self.coeffs.len() < other.len() {
            self.coeffs.resize(other.len(), 0);
        }
        for (c, &o) in self.coeffs.iter_mut().zip(other) {
            *c = c.wrapping_add(o);
        }
        self.normalize();
    }

    fn sub_raw(&mut self, other: &[u64]) {
        if self.coeffs.len() < other.len() {
            self.coeffs.resize(other.len(), 0);
        }
        for (c, &o) in self.coeffs.iter_mut().zip(other) {
            *c = c.wrapping_sub(o);
        }
        self.normalize();
    }

    fn mul_add_raw(&mut self, a: &[u64], b: &[u64]) {
        if a.is_empty() || b.is_empty() {
            return;
        }
        let m = self.params.m;
        let len = (a.len() + b.len() - 1).min(m);
        if self.coeffs.len() < len {
            self.coeffs.resize(len, 0);
        }
        // the sparser operand drives the outer loop
        let (outer, inner) = if nnz(a) <= nnz(b) { (a, b) } else { (b, a) };
        poly_mul_acc(&mut self.coeffs, outer, inner, m);
        self.normalize();
    }
}

fn nnz(v: &[u64]) -> usize {
    v.iter().filter(|&&c| c != 0).count()
}

/// `dst += outer * inner` truncated at degree `m`, unreduced.
///
/// `dst` must already be long enough for the truncated product.
#[inline]
pub(crate) fn poly_mul_acc(dst: &mut [u64], outer: &[u64], inner: &[u64], m: usize) {
    for (i, &a) in outer.iter().enumerate() {
        if a == 0 {
            continue;
        }
        if i >= m {
            break;
        }
        let span = inner.len().min(m - i);
        for (d, &b) in dst[i..i + span].iter_mut().zip(&inner[..span]) {
            *d = d.wrapping_add(a.wrapping_mul(b));
        }
    }
}

/// Sparse-by-dense variant of [`poly_mul_acc`]; `terms` holds `(degree, coeff)`.
#[inline]
pub(crate) fn poly_mul_acc_sparse(
    dst: &mut Vec<u64>,
    terms: &[(usize, u64)],
    dense: &[u64],
    m: usize,
) {
    for &(i, a) in terms {
        if i >= m {
            continue;
        }
        let span = dense.len().min(m - i);
        if span == 0 {
            continue;
        }
        if dst.len() < i + span {
            dst.resize(i + span, 0);
        }
        for (d, &b) in dst[i..i + span].iter_mut().zip(&dense[..span]) {
            *d = d.wrapping_add(a.wrapping_mul(b));
        }
    }
}

pub(crate) fn mask_and_trim(v: &mut Vec<u64>, mask: u64) {
    for c in v.iter_mut() {
        *c &= mask;
    }
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl RingElement {
    pub(crate) fn from_raw(params: RingParams, mut coeffs: Vec<u64>) -> Self {
        coeffs.truncate(params.m);
        let mut e = RingElement { params, coeffs };
        e.normalize();
        e
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.coeffs
    }
}

#[track_caller]
fn assert_params(a: &RingParams, b: &RingParams) {
    if let Err(e) = a.check(b) {
        panic!("{e}");
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        assert_params(&self.params, &rhs.params);
        let mut out = self.clone();
        out.add_raw(&rhs.coeffs);
        out
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        assert_params(&self.params, &rhs.params);
        let mut out = self.clone();
        out.sub_raw(&rhs.coeffs);
        out
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        assert_params(&self.params, &rhs.params);
        let mut out = RingElement::zero(self.params);
        out.mul_add_raw(&self.coeffs, &rhs.coeffs);
        out
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let mut out = RingElement::zero(self.params);
        out.sub_raw(&self.coeffs);
        out
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl AddAssign<&RingElement> for RingElement {
    fn add_assign(&mut self, rhs: &RingElement) {
        assert_params(&self.params, &rhs.params);
        self.add_raw(&rhs.coeffs);
    }
}

impl SubAssign<&RingElement> for RingElement {
    fn sub_assign(&mut self, rhs: &RingElement) {
        assert_params(&self.params, &rhs.params);
        self.sub_raw(&rhs.coeffs);
    }
}

/// Renders as `c0 + c1*x + c2*x^2 + ...`, omitting zero terms.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.nonzero_terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingElement(k={}, m={}: {})",
            self.params.k, self.params.m, self
        )
    }
}
