//! Coefficient rings the Grassmann algebra can run over.
//!
//! `f64` and `Complex<f64>` are used for spectra and quadrature; `Rational`
//! and `Complex<Rational>` keep algebraic identities exact. The `Symbolic`
//! ring in [`crate::symbolic`] also implements [`Scalar`].

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// A commutative ring with exact zero detection.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl<T> Scalar for Complex<T>
where
    T: Scalar + num_traits::Num,
{
    fn zero() -> Self {
        Complex::new(<T as Scalar>::zero(), <T as Scalar>::zero())
    }
    fn one() -> Self {
        Complex::new(<T as Scalar>::one(), <T as Scalar>::zero())
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(&self.re) && Scalar::is_zero(&self.im)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(T::from_ratio(num, den), <T as Scalar>::zero())
    }
}

/// Ring operations needed by the closed-form wave-function machinery: π,
/// √2, exact reciprocals of invertible elements, integer powers and
/// embedding of rationals.
pub trait FieldOps: Scalar {
    fn pi() -> Self;
    fn sqrt2() -> Self;
    fn sqrt_pi() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn checked_recip(&self) -> Option<Self>;

    fn powi(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.checked_recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        Some(acc)
    }
}

impl FieldOps for f64 {
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn sqrt2() -> Self {
        std::f64::consts::SQRT_2
    }
    fn sqrt_pi() -> Self {
        std::f64::consts::PI.sqrt()
    }
    fn from_rational(r: &Rational) -> Self {
        use num_traits::ToPrimitive;
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn checked_recip(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn powi(&self, e: i32) -> Option<Self> {
        Some(f64::powi(*self, e))
    }
}

/// Exact rational from an integer.
pub fn rational(num: i64, den: i64) -> Rational {
    <Rational as Scalar>::from_ratio(num, den)
}

/// Integer factorial as an exact rational.
pub fn factorial(k: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= i;
    }
    BigRational::from_integer(acc)
}

/// A value multiplied by an integer power of π, kept apart so exact
/// backends never have to approximate π.
#[derive(Debug, Clone, PartialEq)]
pub struct PiScaled<T> {
    pub coeff: T,
    pub pi_power: i32,
}

impl<T: Scalar> PiScaled<T> {
    pub fn new(coeff: T, pi_power: i32) -> Self {
        Self { coeff, pi_power }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl PiScaled<f64> {
    pub fn value(&self) -> f64 {
        self.coeff * std::f64::consts::PI.powi(self.pi_power)
    }
}

impl PiScaled<Rational> {
    /// True iff this is exactly the rational number `r` (no π left over).
    pub fn is_rational(&self, r: &Rational) -> bool {
        (self.pi_power == 0 || Scalar::is_zero(&self.coeff)) && &self.coeff == r
    }

    pub fn value(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.coeff.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(self.pi_power)
    }
}
