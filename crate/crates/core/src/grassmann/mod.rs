//! Exterior algebra over `2n` anticommuting generators.
//!
//! Generators are numbered `1..=2n`; generator `i` lives at bit `i - 1` of a
//! `u64` mask. A monomial is stored in canonical increasing order and its
//! reordering sign is folded into the coefficient.

mod scalar;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use scalar::{factorial, rational, FieldOps, PiScaled, Rational, Scalar};

use crate::error::{Error, Result};

/// Largest number of generator pairs a mask can hold.
pub const MAX_PAIRS: usize = 32;

/// Sign of `u * v` for monomials `u`, `v` without common generators: the
/// parity of the number of (i in u, j in v) pairs with i > j.
#[inline]
pub(crate) fn merge_sign(u: u64, v: u64) -> bool {
    let mut swaps = 0u32;
    let mut rest = v;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (u >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    swaps % 2 == 1
}

#[inline]
pub fn degree(mask: u64) -> u32 {
    mask.count_ones()
}

/// Element of the Grassmann algebra with `n_pairs` generator pairs.
#[derive(Clone, PartialEq)]
pub struct GrassmannElement<T> {
    n_pairs: usize,
    terms: BTreeMap<u64, T>,
}

impl<T: Scalar> GrassmannElement<T> {
    pub fn zero(n_pairs: usize) -> Self {
        assert!(n_pairs <= MAX_PAIRS, "at most {MAX_PAIRS} generator pairs");
        Self { n_pairs, terms: BTreeMap::new() }
    }

    pub fn scalar(n_pairs: usize, c: T) -> Self {
        Self::monomial(n_pairs, 0, c)
    }

    pub fn one(n_pairs: usize) -> Self {
        Self::scalar(n_pairs, T::one())
    }

    pub fn try_new(n_pairs: usize) -> Result<Self> {
        if n_pairs > MAX_PAIRS {
            return Err(Error::TooManyPairs { n_pairs, max: MAX_PAIRS });
        }
        Ok(Self::zero(n_pairs))
    }

    /// `c` times the canonical monomial with generator set `mask`.
    pub fn monomial(n_pairs: usize, mask: u64, c: T) -> Self {
        let mut out = Self::zero(n_pairs);
        assert!(mask & !out.full_mask() == 0, "monomial uses generators beyond 2n");
        if !c.is_zero() {
            out.terms.insert(mask, c);
        }
        out
    }

    /// The single generator `x_i`, `1 <= i <= 2n`.
    pub fn generator(n_pairs: usize, i: usize) -> Result<Self> {
        let el = Self::try_new(n_pairs)?;
        el.check_index(i)?;
        Ok(Self::monomial(n_pairs, 1 << (i - 1), T::one()))
    }

    /// Product of generators in the given (not necessarily sorted) order.
    pub fn product_of(n_pairs: usize, indices: &[usize]) -> Result<Self> {
        let mut acc = Self::one(n_pairs);
        for &i in indices {
            acc = acc.multiply(&Self::generator(n_pairs, i)?)?;
        }
        Ok(acc)
    }

    /// `x_1 x_2 ... x_{2n}`.
    pub fn top(n_pairs: usize) -> Self {
        let el = Self::zero(n_pairs);
        let mask = el.full_mask();
        Self::monomial(n_pairs, mask, T::one())
    }

    /// `(sum_j x_{2j-1} x_{2j})^k`; zero once `k > n`.
    pub fn xhat_power(n_pairs: usize, k: usize) -> Self {
        let pair = Self::xhat_squared(n_pairs);
        let mut acc = Self::one(n_pairs);
        for _ in 0..k {
            acc = &acc * &pair;
        }
        acc
    }

    /// `sum_j x_{2j-1} x_{2j}`, the fermionic part of the generalized norm.
    pub fn xhat_squared(n_pairs: usize) -> Self {
        let mut out = Self::zero(n_pairs);
        for j in 0..n_pairs {
            out.terms.insert(0b11 << (2 * j), T::one());
        }
        out
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn n_generators(&self) -> usize {
        2 * self.n_pairs
    }

    pub fn full_mask(&self) -> u64 {
        if self.n_pairs == 0 {
            0
        } else {
            u64::MAX >> (64 - 2 * self.n_pairs)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &T)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u64) -> T {
        self.terms.get(&mask).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> T {
        self.coefficient(0)
    }

    /// Highest degree present, or `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| degree(*m)).max()
    }

    /// True iff every term has the same degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| degree(*m));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Part of degree `d`.
    pub fn grade(&self, d: u32) -> Self {
        Self {
            n_pairs: self.n_pairs,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| degree(**m) == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n_generators() {
            return Err(Error::GeneratorOutOfRange { index: i, generators: self.n_generators() });
        }
        Ok(())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n_pairs != other.n_pairs {
            return Err(Error::DimensionMismatch { left: self.n_pairs, right: other.n_pairs });
        }
        Ok(())
    }

    fn accumulate(&mut self, mask: u64, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mask) {
            Some(prev) => {
                let sum = prev + c;
                if !sum.is_zero() {
                    self.terms.insert(mask, sum);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.n_pairs);
        for (m, c) in &self.terms {
            out.accumulate(*m, c.clone() * s.clone());
        }
        out
    }

    /// Bilinear exterior product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n_pairs);
        for (&u, cu) in &self.terms {
            for (&v, cv) in &other.terms {
                if u & v != 0 {
                    continue;
                }
                let c = cu.clone() * cv.clone();
                out.accumulate(u | v, if merge_sign(u, v) { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Left derivative with respect to generator `i`.
    pub fn left_derivative(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let bit = 1u64 << (i - 1);
        let preceding = bit - 1;
        let mut out = Self::zero(self.n_pairs);
        for (&m, c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let c = c.clone();
            let odd = (m & preceding).count_ones() % 2 == 1;
            out.accumulate(m & !bit, if odd { -c } else { c });
        }
        Ok(out)
    }

    /// Applies `d_{last} ... d_{first}` (so `first` acts first) over a
    /// contiguous block of generators.
    pub(crate) fn derivative_string(&self, first: usize, last: usize) -> Result<Self> {
        let mut acc = self.clone();
        for i in first..=last {
            acc = acc.left_derivative(i)?;
        }
        Ok(acc)
    }

    /// Signed top coefficient, `d_{2n} ... d_1 f`.
    pub fn berezin_top(&self) -> T {
        if self.n_pairs == 0 {
            return self.body();
        }
        self.derivative_string(1, self.n_generators())
            .expect("indices in range")
            .body()
    }

    /// Berezin integral `pi^{-n} d_{2n} ... d_1 f`, with the power of π kept
    /// separate from the coefficient.
    pub fn berezin_integral(&self) -> PiScaled<T> {
        PiScaled::new(self.berezin_top(), -(self.n_pairs as i32))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> GrassmannElement<U> {
        let mut out = GrassmannElement::<U>::zero(self.n_pairs);
        for (m, c) in &self.terms {
            out.accumulate(*m, f(c));
        }
        out
    }

    /// Reinterprets the element inside a larger algebra, moving generator `i`
    /// to `i + shift`.
    pub(crate) fn embed(&self, n_pairs: usize, shift: u32) -> Self {
        let mut out = Self::zero(n_pairs);
        for (m, c) in &self.terms {
            out.accumulate(m << shift, c.clone());
        }
        assert!(out.terms.keys().all(|m| m & !out.full_mask() == 0));
        out
    }

    /// Inverse of [`embed`](Self::embed); terms touching generators below
    /// `shift` are dropped.
    pub(crate) fn extract(&self, n_pairs: usize, shift: u32) -> Self {
        let low = (1u64 << shift) - 1;
        let mut out = Self::zero(n_pairs);
        for (m, c) in &self.terms {
            if m & low == 0 {
                out.accumulate(m >> shift, c.clone());
            }
        }
        out
    }

    /// If `self == r * other` for a scalar `r`, returns `r`. Needs a ring
    /// with division, so the caller supplies it.
    pub fn ratio_to(&self, other: &Self, div: impl Fn(&T, &T) -> T) -> Option<T> {
        if other.is_zero() {
            return if self.is_zero() { Some(T::zero()) } else { None };
        }
        let (&m0, c0) = other.terms.iter().next()?;
        let r = div(&self.coefficient(m0), c0);
        if &other.scale(&r) == self {
            Some(r)
        } else {
            None
        }
    }
}

impl<T: Scalar> Add for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;
    fn add(self, rhs: Self) -> GrassmannElement<T> {
        self.try_add(rhs).expect("Grassmann addition")
    }
}

impl<T: Scalar> Sub for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;
    fn sub(self, rhs: Self) -> GrassmannElement<T> {
        self.try_add(&-rhs).expect("Grassmann subtraction")
    }
}

impl<T: Scalar> Neg for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;
    fn neg(self) -> GrassmannElement<T> {
        self.scale(&-T::one())
    }
}

impl<T: Scalar> Mul for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;
    fn mul(self, rhs: Self) -> GrassmannElement<T> {
        self.multiply(rhs).expect("Grassmann product")
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for GrassmannElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for i in 0..64 {
                if m & (1 << i) != 0 {
                    write!(f, "·x{}", i + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for GrassmannElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrassmannElement")
            .field("n_pairs", &self.n_pairs)
            .field("terms", &self.terms)
            .finish()
    }
}
