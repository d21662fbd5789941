//! Exact Laurent polynomials in the coupling `a`, `√π`, the decay rate `b`
//! and `√2`, with rational coefficients.
//!
//! This is the exact backend for the `m = 1` wave function: every
//! coefficient there is a rational multiple of `a^i π^{j/2} b^k 2^{l/2}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::grassmann::{rational, FieldOps, Rational};

/// Exponents of `a`, `√π`, `b`, and `√2` (the last reduced to 0 or 1).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymMonomial {
    pub a: i32,
    pub pi_half: i32,
    pub b: i32,
    pub sqrt2: bool,
}

impl SymMonomial {
    pub const ONE: SymMonomial = SymMonomial { a: 0, pi_half: 0, b: 0, sqrt2: false };

    /// Product of two monomials, returning the rational factor produced by
    /// `√2 · √2 = 2`.
    fn mul(self, o: SymMonomial) -> (SymMonomial, i64) {
        let both = self.sqrt2 && o.sqrt2;
        (
            SymMonomial {
                a: self.a + o.a,
                pi_half: self.pi_half + o.pi_half,
                b: self.b + o.b,
                sqrt2: self.sqrt2 ^ o.sqrt2,
            },
            if both { 2 } else { 1 },
        )
    }

    fn eval(&self, a: f64, b: f64) -> f64 {
        let mut v = a.powi(self.a) * std::f64::consts::PI.sqrt().powi(self.pi_half) * b.powi(self.b);
        if self.sqrt2 {
            v *= std::f64::consts::SQRT_2;
        }
        v
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Symbolic {
    terms: BTreeMap<SymMonomial, Rational>,
}

impl Symbolic {
    pub fn constant(r: Rational) -> Self {
        Self::term(SymMonomial::ONE, r)
    }

    pub fn term(m: SymMonomial, r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(m, r);
        }
        Self { terms }
    }

    /// The coupling strength `a`.
    pub fn coupling() -> Self {
        Self::term(SymMonomial { a: 1, ..SymMonomial::ONE }, Rational::one())
    }

    /// The decay rate `b = √(2Ẽ)`.
    pub fn decay() -> Self {
        Self::term(SymMonomial { b: 1, ..SymMonomial::ONE }, Rational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn as_monomial(&self) -> Option<(SymMonomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c))
        } else {
            None
        }
    }

    /// The rational value, if no symbol is present.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&SymMonomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Numerical value at the given coupling and decay rate.
    pub fn eval(&self, a: f64, b: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().unwrap_or(f64::NAN) * m.eval(a, b))
            .sum()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            out.accumulate(*m, c * r);
        }
        out
    }

    /// Partial derivative with respect to `b`.
    pub fn d_decay(&self) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            if m.b != 0 {
                let dm = SymMonomial { b: m.b - 1, ..*m };
                out.accumulate(dm, c * rational(m.b as i64, 1));
            }
        }
        out
    }

    /// Rewrites every `b^e` using `b^degree = rhs` until `0 <= e < degree`.
    /// `rhs` must be a single invertible monomial.
    pub fn reduce_decay(&self, degree: i32, rhs: &Symbolic) -> Self {
        assert!(degree > 0);
        let (rm, rc) = rhs.as_monomial().expect("relation must be a monomial");
        let mut out = Self::default();
        for (m, c) in &self.terms {
            let q = m.b.div_euclid(degree);
            let mut mono = SymMonomial { b: m.b.rem_euclid(degree), ..*m };
            let mut coeff = c.clone();
            let step = if q >= 0 { (rm, rc.clone()) } else { invert(rm, rc) };
            for _ in 0..q.unsigned_abs() {
                let (next, f) = mono.mul(step.0);
                mono = next;
                coeff = coeff * &step.1 * rational(f, 1);
            }
            out.accumulate(mono, coeff);
        }
        out
    }

    fn accumulate(&mut self, m: SymMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }
}

fn invert(m: SymMonomial, c: &Rational) -> (SymMonomial, Rational) {
    // (√2)^{-1} = √2 / 2
    let inv = SymMonomial { a: -m.a, pi_half: -m.pi_half, b: -m.b, sqrt2: m.sqrt2 };
    let mut coeff = c.recip();
    if m.sqrt2 {
        coeff /= BigInt::from(2);
    }
    (inv, coeff)
}

impl Add for Symbolic {
    type Output = Symbolic;
    fn add(mut self, rhs: Symbolic) -> Symbolic {
        for (m, c) in rhs.terms {
            self.accumulate(m, c);
        }
        self
    }
}

impl Sub for Symbolic {
    type Output = Symbolic;
    fn sub(self, rhs: Symbolic) -> Symbolic {
        self + (-rhs)
    }
}

impl Neg for Symbolic {
    type Output = Symbolic;
    fn neg(self) -> Symbolic {
        Symbolic { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Mul for Symbolic {
    type Output = Symbolic;
    fn mul(self, rhs: Symbolic) -> Symbolic {
        let mut out = Symbolic::default();
        for (mu, cu) in &self.terms {
            for (mv, cv) in &rhs.terms {
                let (m, f) = mu.mul(*mv);
                out.accumulate(m, cu * cv * rational(f, 1));
            }
        }
        out
    }
}

impl crate::grassmann::Scalar for Symbolic {
    fn zero() -> Self {
        Symbolic::default()
    }
    fn one() -> Self {
        Symbolic::constant(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Symbolic::constant(rational(num, den))
    }
}

impl FieldOps for Symbolic {
    fn pi() -> Self {
        Symbolic::term(SymMonomial { pi_half: 2, ..SymMonomial::ONE }, Rational::one())
    }
    fn sqrt2() -> Self {
        Symbolic::term(SymMonomial { sqrt2: true, ..SymMonomial::ONE }, Rational::one())
    }
    fn sqrt_pi() -> Self {
        Symbolic::term(SymMonomial { pi_half: 1, ..SymMonomial::ONE }, <Rational as One>::one())
    }
    fn from_rational(r: &Rational) -> Self {
        Symbolic::constant(r.clone())
    }
    fn checked_recip(&self) -> Option<Self> {
        let (m, c) = self.as_monomial()?;
        let (im, ic) = invert(m, c);
        Some(Symbolic::term(im, ic))
    }
}

impl fmt::Display for Symbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
                write!(f, "{}", c.abs())?;
            } else {
                write!(f, "{c}")?;
            }
            let mut factor = |name: &str, e: i32| -> fmt::Result {
                match e {
                    0 => Ok(()),
                    1 => write!(f, "·{name}"),
                    _ => write!(f, "·{name}^{e}"),
                }
            };
            factor("a", m.a)?;
            if m.pi_half % 2 == 0 {
                factor("π", m.pi_half / 2)?;
            } else {
                factor("√π", m.pi_half)?;
            }
            factor("b", m.b)?;
            if m.sqrt2 {
                write!(f, "·√2")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Symbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbolic({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::Scalar;

    fn q(n: i64, d: i64) -> Symbolic {
        Symbolic::from_ratio(n, d)
    }

    #[test]
    fn sqrt_two_squares_to_two() {
        let s = Symbolic::sqrt2();
        assert_eq!(s.clone() * s, q(2, 1));
        assert_eq!(Symbolic::sqrt_pi() * Symbolic::sqrt_pi(), Symbolic::pi());
    }

    #[test]
    fn reciprocal_of_monomials() {
        let x = Symbolic::sqrt2() * Symbolic::pi() * Symbolic::decay() * q(3, 5);
        let inv = x.checked_recip().unwrap();
        assert_eq!(x * inv, Symbolic::one());
        assert!((Symbolic::one() + Symbolic::decay()).checked_recip().is_none());
    }

    #[test]
    fn powers_and_eval() {
        let b = Symbolic::decay();
        let p = b.powi(-3).unwrap();
        assert!((p.eval(1.0, 2.0) - 0.125).abs() < 1e-15);
        let two_pi_half = (q(2, 1) * Symbolic::pi()).checked_recip().unwrap() * Symbolic::sqrt2() * Symbolic::sqrt_pi();
        // (2π)^{-1/2}
        let want = (2.0 * std::f64::consts::PI).powf(-0.5);
        assert!((two_pi_half.eval(1.0, 1.0) - want).abs() < 1e-15);
    }

    #[test]
    fn decay_derivative() {
        let b = Symbolic::decay();
        let f = b.powi(-2).unwrap() * q(3, 1) + b.clone();
        assert_eq!(f.d_decay(), b.powi(-3).unwrap() * q(-6, 1) + Symbolic::one());
    }

    #[test]
    fn reduction_modulo_monomial_relation() {
        // b^3 = 2πa
        let rhs = q(2, 1) * Symbolic::pi() * Symbolic::coupling();
        let b = Symbolic::decay();
        assert_eq!(b.powi(3).unwrap().reduce_decay(3, &rhs), rhs);
        let back = b.powi(-1).unwrap().reduce_decay(3, &rhs);
        assert_eq!(back, b.powi(2).unwrap() * rhs.checked_recip().unwrap());
        let x = b.powi(7).unwrap().reduce_decay(3, &rhs);
        assert_eq!(x, b * rhs.clone() * rhs);
    }
}
