//! Superspace `R^{m|2n}`: super Laplacian, generalized norm squared, the
//! super Dirac distribution, and superfunctions for `m = 0` and `m = 1`.

use std::collections::BTreeMap;


use crate::error::{Error, Result};
use crate::grassmann::{factorial, rational, FieldOps, GrassmannElement, PiScaled, Rational, Scalar};

/// A problem instance: `m` bosonic dimensions, `n` fermionic pairs, coupling `a`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ModelParams {
    pub m: u32,
    pub n: u32,
    pub a: f64,
}

impl ModelParams {
    pub fn new(m: u32, n: u32, a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidCoupling(a));
        }
        Ok(Self { m, n, a })
    }

    /// Canonical `(m, n)` with `m ∈ {0, 1}` realizing an integer
    /// super-dimension `M <= 1`.
    pub fn from_super_dimension(super_dimension: i64, a: f64) -> Result<Self> {
        if super_dimension > 1 {
            return Err(Error::UnsupportedDimension { super_dimension: super_dimension as f64 });
        }
        let m = super_dimension.rem_euclid(2) as u32;
        let n = ((m as i64 - super_dimension) / 2) as u32;
        Self::new(m, n, a)
    }

    /// `M = m - 2n`.
    pub fn super_dimension(&self) -> i64 {
        self.m as i64 - 2 * self.n as i64
    }
}

/// Fermionic part of the super Laplacian, `4 Σ_j ∂_{2j-1} ∂_{2j}`.
pub fn super_laplacian_fermionic<T: Scalar>(f: &GrassmannElement<T>) -> GrassmannElement<T> {
    let mut out = GrassmannElement::zero(f.n_pairs());
    for j in 1..=f.n_pairs() {
        let inner = f.left_derivative(2 * j).expect("index in range");
        let outer = inner.left_derivative(2 * j - 1).expect("index in range");
        out = &out + &outer;
    }
    out.scale(&T::from_int(4))
}

/// The scalar `λ` with `Δ_f(X̂^{2j}) = λ X̂^{2j-2}`, read off from the
/// Grassmann computation rather than a closed form.
pub fn xhat_laplacian_factor(n_pairs: usize, j: usize) -> Rational {
    if j == 0 {
        return rational(0, 1);
    }
    let image = super_laplacian_fermionic(&GrassmannElement::<Rational>::xhat_power(n_pairs, j));
    let lower = GrassmannElement::<Rational>::xhat_power(n_pairs, j - 1);
    image.ratio_to(&lower, |x, y| x / y).expect("Δ_f maps X̂^{2j} onto a multiple of X̂^{2j-2}")
}

/// Polynomial superfunction on `R^{m|2n}`: bosonic monomials (exponent
/// vectors) with Grassmann-valued coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperPolynomial<T> {
    m: usize,
    n_pairs: usize,
    terms: BTreeMap<Vec<u32>, GrassmannElement<T>>,
}

impl<T: Scalar> SuperPolynomial<T> {
    pub fn zero(m: usize, n_pairs: usize) -> Self {
        Self { m, n_pairs, terms: BTreeMap::new() }
    }

    pub fn constant(m: usize, n_pairs: usize, c: T) -> Self {
        let mut out = Self::zero(m, n_pairs);
        out.insert(vec![0; m], GrassmannElement::scalar(n_pairs, c));
        out
    }

    fn insert(&mut self, exps: Vec<u32>, g: GrassmannElement<T>) {
        let sum = match self.terms.remove(&exps) {
            Some(prev) => &prev + &g,
            None => g,
        };
        if !sum.is_zero() {
            self.terms.insert(exps, sum);
        }
    }

    /// `X² = Σ_j x̀_{2j-1} x̀_{2j} − Σ_i x_i²`.
    pub fn generalized_norm_squared(m: usize, n_pairs: usize) -> Self {
        let mut out = Self::zero(m, n_pairs);
        out.insert(vec![0; m], GrassmannElement::xhat_squared(n_pairs));
        for i in 0..m {
            let mut e = vec![0; m];
            e[i] = 2;
            out.insert(e, GrassmannElement::scalar(n_pairs, -T::one()));
        }
        out
    }

    /// Full super Laplacian `Δ = Δ_f − Σ_i ∂²_{x_i}`.
    pub fn super_laplacian(&self) -> Self {
        let mut out = Self::zero(self.m, self.n_pairs);
        for (exps, g) in &self.terms {
            out.insert(exps.clone(), super_laplacian_fermionic(g));
            for i in 0..self.m {
                let p = exps[i];
                if p >= 2 {
                    let mut e = exps.clone();
                    e[i] -= 2;
                    let c = T::from_int(-(p as i64) * (p as i64 - 1));
                    out.insert(e, g.scale(&c));
                }
            }
        }
        out
    }
}

/// `Σ_p c_p |x|^p e^{-b|x|}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialExpPoly<T = f64> {
    decay: T,
    terms: BTreeMap<u32, T>,
}

impl RadialExpPoly<f64> {
    pub fn try_new(decay: f64) -> Result<Self> {
        if !(decay.is_finite() && decay > 0.0) {
            return Err(Error::InvalidDecay(decay));
        }
        Ok(Self::new(decay))
    }

    pub fn eval(&self, x: f64) -> f64 {
        let r = x.abs();
        let poly: f64 = self.terms.iter().map(|(p, c)| c * r.powi(*p as i32)).sum();
        poly * (-self.decay * r).exp()
    }
}

impl<T: Scalar> RadialExpPoly<T> {
    pub fn new(decay: T) -> Self {
        Self { decay, terms: BTreeMap::new() }
    }

    pub fn with_terms(decay: T, terms: impl IntoIterator<Item = (u32, T)>) -> Self {
        let mut out = Self::new(decay);
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    pub fn decay(&self) -> &T {
        &self.decay
    }

    pub fn add_term(&mut self, p: u32, c: T) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&p) {
            Some(prev) => prev + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(p, sum);
        }
    }

    pub fn coeff(&self, p: u32) -> T {
        self.terms.get(&p).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &T)> {
        self.terms.iter().map(|(p, c)| (*p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_power(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Value at the origin, `c_0`.
    pub fn at_origin(&self) -> T {
        self.coeff(0)
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.decay, other.decay, "radial terms must share the decay rate");
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::with_terms(self.decay.clone(), self.terms.iter().map(|(p, c)| (*p, c.clone() * s.clone())))
    }

    /// Multiplication by `|x|`.
    pub fn times_abs_x(&self) -> Self {
        Self::with_terms(self.decay.clone(), self.terms.iter().map(|(p, c)| (p + 1, c.clone())))
    }

    /// Distributional `d²/dx²`: the smooth part valid for `x ≠ 0` and the
    /// coefficient of `δ(x)` coming from the kink at the origin.
    pub fn second_derivative(&self) -> (Self, T) {
        let b = self.decay.clone();
        let mut smooth = Self::new(b.clone());
        for (&p, c) in &self.terms {
            if p >= 2 {
                smooth.add_term(p - 2, c.clone() * T::from_int((p * (p - 1)) as i64));
            }
            if p >= 1 {
                smooth.add_term(p - 1, c.clone() * b.clone() * T::from_int(-2 * p as i64));
            }
            smooth.add_term(p, c.clone() * b.clone() * b.clone());
        }
        // jump of the first derivative: 2 g'(0+) with g'(0+) = c_1 - b c_0
        let slope = self.coeff(1) - b * self.coeff(0);
        (smooth, slope * T::from_int(2))
    }
}

/// `∫_R |x|^p e^{-2b|x|} dx = 2 p! / (2b)^{p+1}`.
pub fn abs_power_exp_integral<T: FieldOps>(p: u32, decay: &T) -> T {
    let two_b = decay.clone() * T::from_int(2);
    T::from_rational(&(factorial(p) * rational(2, 1)))
        * two_b.powi(-(p as i32 + 1)).expect("decay rate is invertible")
}

impl<T: FieldOps> RadialExpPoly<T> {
    /// `∫_R f(x)² dx`.
    pub fn squared_integral(&self) -> T {
        let mut total = T::zero();
        for (p, cp) in &self.terms {
            for (q, cq) in &self.terms {
                total = total + cp.clone() * cq.clone() * abs_power_exp_integral(p + q, &self.decay);
            }
        }
        total
    }
}

/// `Σ_k f_k(x) X̂^{2n-2k}` on `R^{1|2n}` with `f_k` radial-exponential
/// polynomials sharing one decay rate.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperWaveFunction1D<T = f64> {
    n_pairs: usize,
    decay: T,
    components: BTreeMap<usize, RadialExpPoly<T>>,
    psi0: T,
}

impl<T: Scalar> SuperWaveFunction1D<T> {
    pub fn new(n_pairs: usize, decay: T, psi0: T) -> Self {
        Self { n_pairs, decay, components: BTreeMap::new(), psi0 }
    }

    pub fn set_component(&mut self, k: usize, f: RadialExpPoly<T>) {
        assert!(k <= self.n_pairs, "component index {k} beyond n = {}", self.n_pairs);
        assert_eq!(f.decay, self.decay, "components must share the decay rate");
        if f.is_zero() {
            self.components.remove(&k);
        } else {
            self.components.insert(k, f);
        }
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn decay(&self) -> &T {
        &self.decay
    }

    pub fn psi0(&self) -> &T {
        &self.psi0
    }

    /// Coefficient function of `X̂^{2n-2k}` (zero if absent).
    pub fn component(&self, k: usize) -> RadialExpPoly<T> {
        self.components.get(&k).cloned().unwrap_or_else(|| RadialExpPoly::new(self.decay.clone()))
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &RadialExpPoly<T>)> {
        self.components.iter().map(|(k, f)| (*k, f))
    }

    /// Body at the origin: the `X̂^0` component evaluated at `x = 0`.
    pub fn body_at_origin(&self) -> T {
        self.component(self.n_pairs).at_origin()
    }

    /// Multiplies every component and `psi0` by `s`.
    pub fn scale(&self, s: &T) -> Self {
        Self {
            n_pairs: self.n_pairs,
            decay: self.decay.clone(),
            components: self.components.iter().map(|(k, f)| (*k, f.scale(s))).collect(),
            psi0: self.psi0.clone() * s.clone(),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SuperWaveFunction1D<U> {
        let mut out = SuperWaveFunction1D::new(self.n_pairs, f(&self.decay), f(&self.psi0));
        for (k, comp) in &self.components {
            out.set_component(*k, RadialExpPoly::with_terms(f(&comp.decay), comp.terms().map(|(p, c)| (p, f(c)))));
        }
        out
    }
}

impl SuperWaveFunction1D<f64> {
    /// Body `ψ(x; x̀ = 0)`.
    pub fn body_at(&self, x: f64) -> f64 {
        self.component(self.n_pairs).eval(x)
    }

    /// Full Grassmann value at a bosonic point.
    pub fn at(&self, x: f64) -> GrassmannElement<f64> {
        let n = self.n_pairs;
        let mut out = GrassmannElement::zero(n);
        for (k, f) in &self.components {
            let power = GrassmannElement::<f64>::xhat_power(n, n - k);
            out = &out + &power.scale(&f.eval(x));
        }
        out
    }
}

/// Smooth (`x ≠ 0`) part of a super Laplacian image, and the per-component
/// coefficients of `δ(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianParts<T> {
    pub smooth: BTreeMap<usize, RadialExpPoly<T>>,
    pub delta: BTreeMap<usize, T>,
}

/// `Δψ` with `Δ = Δ_f − d²/dx²` on `R^{1|2n}`; component keys follow
/// [`SuperWaveFunction1D`] (`k` multiplies `X̂^{2n-2k}`).
pub fn super_laplacian_1d<T: FieldOps>(psi: &SuperWaveFunction1D<T>) -> LaplacianParts<T> {
    let n = psi.n_pairs;
    let mut smooth: BTreeMap<usize, RadialExpPoly<T>> = BTreeMap::new();
    let mut delta = BTreeMap::new();
    let mut push = |k: usize, f: RadialExpPoly<T>| {
        let entry = smooth.entry(k).or_insert_with(|| RadialExpPoly::new(f.decay.clone()));
        *entry = entry.plus(&f);
    };
    for (&k, f) in &psi.components {
        let (d2, kink) = f.second_derivative();
        push(k, d2.scale(&-T::one()));
        if !kink.is_zero() {
            delta.insert(k, -kink);
        }
        if k < n {
            let lambda = xhat_laplacian_factor(n, n - k);
            push(k + 1, f.scale(&T::from_rational(&lambda)));
        }
    }
    smooth.retain(|_, f| !f.is_zero());
    LaplacianParts { smooth, delta }
}

/// `||ψ|| = Σ_ν ∫ f_ν²`, summed over Grassmann monomials after expanding
/// each `X̂^{2n-2k}`. Coefficients are taken as real.
pub fn squared_norm<T: FieldOps>(psi: &SuperWaveFunction1D<T>) -> T {
    let n = psi.n_pairs;
    let mut total = T::zero();
    for (&k, f) in &psi.components {
        let power = GrassmannElement::<Rational>::xhat_power(n, n - k);
        let weight: Rational = power.terms().map(|(_, c)| c * c).sum();
        total = total + T::from_rational(&weight) * f.squared_integral();
    }
    total
}

/// `δ(X) = π^n δ(x) x̀_1 ⋯ x̀_{2n}`: a Grassmann part times `π^n`, tagged as
/// multiplying the bosonic Dirac distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracDelta<T> {
    pub grassmann: GrassmannElement<T>,
    pub pi_power: i32,
}

impl<T: Scalar> DiracDelta<T> {
    pub fn n_pairs(&self) -> usize {
        self.grassmann.n_pairs()
    }

    /// Berezin integral of the Grassmann part times `π^n`; the bosonic
    /// delta integrates to 1.
    pub fn integral(&self) -> PiScaled<T> {
        let b = self.grassmann.berezin_integral();
        PiScaled::new(b.coeff, b.pi_power + self.pi_power)
    }
}

pub fn dirac_delta<T: Scalar>(n_pairs: usize) -> DiracDelta<T> {
    DiracDelta { grassmann: GrassmannElement::top(n_pairs), pi_power: n_pairs as i32 }
}

/// `(π^n / n!) X̂^{2n}`, the second form of the super Dirac distribution.
pub fn dirac_delta_from_xhat(n_pairs: usize) -> DiracDelta<Rational> {
    let g = GrassmannElement::<Rational>::xhat_power(n_pairs, n_pairs).scale(&factorial(n_pairs as u32).recip());
    DiracDelta { grassmann: g, pi_power: n_pairs as i32 }
}
