//! Super Fourier transform pieces: the exact fermionic transform, closed
//! forms for the bosonic radial transforms, and a quadrature oracle.

use num_complex::Complex;
use num_traits::Num;

use crate::error::{Error, Result};
use crate::grassmann::{factorial, rational, FieldOps, GrassmannElement, Rational, Scalar, MAX_PAIRS};
use crate::quadrature;
use crate::special::{ln_factorial, ln_gamma};
use crate::superspace::RadialExpPoly;
use crate::symbolic::Symbolic;

/// `F^+` uses the kernel `exp(-i⟨X,Y⟩)`, `F^-` uses `exp(+i⟨X,Y⟩)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    fn exponent_sign(self) -> i64 {
        match self {
            Direction::Forward => -1,
            Direction::Inverse => 1,
        }
    }
}

/// `exp(∓i⟨X,Y⟩)` in the doubled algebra: `x̀` occupies generators
/// `1..=2n`, `ỳ` occupies `2n+1..=4n`. The series stops at degree `2n` in
/// `⟨X,Y⟩` because every term carries one `x̀`.
#[derive(Debug, Clone)]
pub struct FermionicKernelExpansion<T> {
    n_pairs: usize,
    direction: Direction,
    kernel: GrassmannElement<Complex<T>>,
}

impl<T> FermionicKernelExpansion<T>
where
    T: Scalar + Num,
{
    pub fn new(n_pairs: usize, direction: Direction) -> Result<Self> {
        if 2 * n_pairs > MAX_PAIRS {
            return Err(Error::TooManyPairs { n_pairs, max: MAX_PAIRS / 2 });
        }
        let doubled = 2 * n_pairs;
        let g = |i: usize| GrassmannElement::<Complex<T>>::generator(doubled, i).expect("index in range");
        let y = |i: usize| g(2 * n_pairs + i);
        // ⟨X,Y⟩ fermionic part: ½ Σ_j (x̀_{2j-1} ỳ_{2j} − x̀_{2j} ỳ_{2j-1})
        let mut pairing = GrassmannElement::zero(doubled);
        for j in 1..=n_pairs {
            let t = &(&g(2 * j - 1) * &y(2 * j)) - &(&g(2 * j) * &y(2 * j - 1));
            pairing = &pairing + &t;
        }
        let half = <Complex<T> as Scalar>::from_ratio(1, 2);
        let i_sign = Complex::new(<T as Scalar>::zero(), T::from_int(direction.exponent_sign()));
        let step = pairing.scale(&(half * i_sign));

        let mut kernel = GrassmannElement::one(doubled);
        let mut power = GrassmannElement::one(doubled);
        for d in 1..=2 * n_pairs {
            power = &power * &step;
            let inv_fact = recip_factorial::<T>(d);
            kernel = &kernel + &power.scale(&inv_fact);
        }
        Ok(Self { n_pairs, direction, kernel })
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn kernel(&self) -> &GrassmannElement<Complex<T>> {
        &self.kernel
    }

    /// `(2π)^n ∫_{x̀} K(x̀, ỳ) f(x̀)`, relabelled so `ỳ_i` becomes generator `i`.
    pub fn apply(&self, f: &GrassmannElement<Complex<T>>) -> Result<GrassmannElement<Complex<T>>> {
        if f.n_pairs() != self.n_pairs {
            return Err(Error::DimensionMismatch { left: self.n_pairs, right: f.n_pairs() });
        }
        let n = self.n_pairs;
        let lifted = f.embed(2 * n, 0);
        let product = &self.kernel * &lifted;
        let integrated = if n == 0 { product } else { product.derivative_string(1, 2 * n)? };
        // Berezin's π^{-n} cancels the (2π)^n prefactor, leaving 2^n.
        let two_n = <Complex<T> as Scalar>::from_int(1i64 << n);
        Ok(integrated.extract(n, 2 * n as u32).scale(&two_n))
    }
}

fn recip_factorial<T: Scalar + Num>(d: usize) -> Complex<T> {
    let mut den = 1i64;
    for i in 2..=d as i64 {
        den *= i;
    }
    <Complex<T> as Scalar>::from_ratio(1, den)
}

/// Scalars whose imaginary residues can be judged negligible.
pub trait RealCheck: Scalar + Num {
    fn negligible(&self) -> bool;
}

impl RealCheck for f64 {
    fn negligible(&self) -> bool {
        self.abs() < 1e-12
    }
}

impl RealCheck for Rational {
    fn negligible(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Fermionic Fourier transform of a complex element.
pub fn fermionic_fourier_complex<T>(
    direction: Direction,
    f: &GrassmannElement<Complex<T>>,
) -> Result<GrassmannElement<Complex<T>>>
where
    T: Scalar + Num,
{
    FermionicKernelExpansion::<T>::new(f.n_pairs(), direction)?.apply(f)
}

/// Fermionic Fourier transform of a real element. The transform of an
/// even element is real; anything else is rejected.
pub fn fermionic_fourier<T: RealCheck>(direction: Direction, f: &GrassmannElement<T>) -> Result<GrassmannElement<T>> {
    let lifted = f.map(|c| Complex::new(c.clone(), <T as Scalar>::zero()));
    let image = fermionic_fourier_complex(direction, &lifted)?;
    if let Some((m, c)) = image.terms().find(|(_, c)| !c.im.negligible()) {
        return Err(Error::InvalidArgument(format!(
            "transform is not real: monomial {m:#b} has imaginary part {:?}",
            c.im
        )));
    }
    Ok(image.map(|c| c.re.clone()))
}

/// `F^-_{m|0}((r²/2 + Ẽ)^{-n-1})` at the origin, `Ẽ^{M/2-1} Γ(1-M/2) / n!`
/// with `M = m - 2n`, evaluated in log space.
pub fn radial_transform_at_origin(m: u32, n: u32, e_tilde: f64) -> Result<f64> {
    check_energy(e_tilde)?;
    let half_m = (m as f64 - 2.0 * n as f64) / 2.0;
    if half_m > 0.5 {
        return Err(Error::Divergent { super_dimension: 2.0 * half_m });
    }
    Ok(((half_m - 1.0) * e_tilde.ln() + ln_gamma(1.0 - half_m) - ln_factorial(n)).exp())
}

fn check_energy(e_tilde: f64) -> Result<()> {
    if !(e_tilde.is_finite() && e_tilde > 0.0) {
        return Err(Error::InvalidEnergy(e_tilde));
    }
    Ok(())
}

/// Surface area of the unit sphere `S^{m-1}`, by the recursion
/// `A_m = 2π A_{m-2} / (m - 2)` from `A_1 = 2`, `A_2 = 2π`.
pub fn unit_sphere_area(m: u32) -> f64 {
    use std::f64::consts::PI;
    match m {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 2.0 * PI / (m as f64 - 2.0) * unit_sphere_area(m - 2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: f64,
    pub error_estimate: f64,
}

pub const ORACLE_REL_TOL: f64 = 1e-10;

/// Direct numerical evaluation of the radial integral
/// `(2π)^{-m/2} |S^{m-1}| ∫_0^∞ r^{m-1} dr / (r²/2 + Ẽ)^{n+1}`,
/// mapped to `(0, 1)` by `r = √Ẽ t / (1 - t)`.
pub fn radial_transform_quadrature_oracle(m: u32, n: u32, e_tilde: f64) -> Result<OracleValue> {
    check_energy(e_tilde)?;
    if m == 0 {
        return Err(Error::InvalidArgument("quadrature oracle needs m >= 1".into()));
    }
    let super_dimension = m as f64 - 2.0 * n as f64;
    if super_dimension > 1.0 {
        return Err(Error::Divergent { super_dimension });
    }
    let scale = e_tilde.sqrt();
    let integrand = |t: f64| {
        let one_minus = 1.0 - t;
        let r = scale * t / one_minus;
        let jacobian = scale / (one_minus * one_minus);
        r.powi(m as i32 - 1) / (0.5 * r * r + e_tilde).powi(n as i32 + 1) * jacobian
    };
    let res = quadrature::integrate(integrand, 0.0, 1.0, ORACLE_REL_TOL, 4000)?;
    let prefactor = (2.0 * std::f64::consts::PI).powf(-(m as f64) / 2.0) * unit_sphere_area(m);
    Ok(OracleValue { value: prefactor * res.value, error_estimate: prefactor * res.error_estimate })
}

/// `F^-_{1|0}((y²/2 + Ẽ)^{-k-1})` for a symbolic or numeric decay rate
/// `b = √(2Ẽ)`:
/// `√(2π) 2^{k+1}/k! e^{-b|x|} Σ_j (k+j)!/(j!(k-j)!) |x|^{k-j} / (2b)^{k+j+1}`.
pub fn transform_1d_closed_form_in<T: FieldOps>(k: u32, decay: T) -> RadialExpPoly<T> {
    let prefactor = T::sqrt2() * T::sqrt_pi() * T::from_rational(&(rational(1i64 << (k + 1), 1) / factorial(k)));
    let two_b = decay.clone() * T::from_int(2);
    let mut out = RadialExpPoly::new(decay);
    for j in 0..=k {
        let combinatorial = factorial(k + j) / (factorial(j) * factorial(k - j));
        let c = prefactor.clone()
            * T::from_rational(&combinatorial)
            * two_b.powi(-((k + j + 1) as i32)).expect("decay rate is invertible");
        out.add_term(k - j, c);
    }
    out
}

pub fn transform_1d_closed_form(k: u32, e_tilde: f64) -> Result<RadialExpPoly<f64>> {
    check_energy(e_tilde)?;
    Ok(transform_1d_closed_form_in(k, (2.0 * e_tilde).sqrt()))
}

/// `∂/∂Ẽ` of a radial-exponential polynomial whose coefficients depend on
/// `b = √(2Ẽ)`; uses `db/dẼ = 1/b`.
pub fn derivative_in_energy(f: &RadialExpPoly<Symbolic>) -> RadialExpPoly<Symbolic> {
    let b = f.decay().clone();
    let inv_b = b.checked_recip().expect("symbolic decay rate is a monomial");
    let mut out = RadialExpPoly::new(b);
    for (p, c) in f.terms() {
        out.add_term(p, c.d_decay() * inv_b.clone());
        out.add_term(p + 1, -c.clone() * inv_b.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type Q = GrassmannElement<Rational>;
    type C = GrassmannElement<Complex<Rational>>;

    fn q(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn kernel_body_is_one_and_x_degree_bounded() {
        for n in 0..=3 {
            let k = FermionicKernelExpansion::<Rational>::new(n, Direction::Inverse).unwrap();
            assert_eq!(k.kernel().body(), <Complex<Rational> as Scalar>::one());
            let x_block = (1u64 << (2 * n)) - 1;
            for (m, _) in k.kernel().terms() {
                // each ⟨X,Y⟩ factor carries one x̀ and one ỳ
                assert_eq!((m & x_block).count_ones(), (m & !x_block).count_ones());
            }
        }
    }

    #[test]
    fn inverse_of_one_for_single_pair() {
        let out = fermionic_fourier(Direction::Inverse, &Q::one(1)).unwrap();
        assert_eq!(out, Q::xhat_squared(1).scale(&q(1, 2)));
    }

    #[test]
    fn inverse_transform_of_xhat_powers() {
        for n in 0..=4u32 {
            for k in 0..=n {
                let input = Q::xhat_power(n as usize, k as usize).scale(&q(1, 1i64 << k));
                let out = fermionic_fourier(Direction::Inverse, &input).unwrap();
                let coeff = q(1, 1) * factorial(k) / factorial(n - k) * two_pow(k as i32 - n as i32);
                let want = Q::xhat_power(n as usize, (n - k) as usize).scale(&coeff);
                assert_eq!(out, want, "n={n} k={k}");
            }
        }
    }

    fn two_pow(e: i32) -> Rational {
        if e >= 0 {
            q(1i64 << e, 1)
        } else {
            q(1, 1i64 << -e)
        }
    }

    #[test]
    fn inversion_and_degree_parity_on_basis() {
        for n in 0..=3usize {
            let fwd = FermionicKernelExpansion::<Rational>::new(n, Direction::Forward).unwrap();
            let inv = FermionicKernelExpansion::<Rational>::new(n, Direction::Inverse).unwrap();
            for mask in 0..1u64 << (2 * n) {
                let u = C::monomial(n, mask, <Complex<Rational> as Scalar>::one());
                let image = fwd.apply(&u).unwrap();
                let d = mask.count_ones();
                assert!(!image.is_zero());
                for (m, _) in image.terms() {
                    assert_eq!(m.count_ones(), 2 * n as u32 - d);
                }
                assert_eq!(inv.apply(&image).unwrap(), u, "n={n} mask={mask:b}");
            }
        }
    }

    #[test]
    fn odd_inputs_are_rejected_by_real_transform() {
        let x1 = Q::generator(1, 1).unwrap();
        assert!(fermionic_fourier(Direction::Forward, &x1).is_err());
    }

    #[test]
    fn float_backend_matches_exact() {
        let n = 2;
        let f = GrassmannElement::<f64>::xhat_squared(n);
        let out = fermionic_fourier(Direction::Inverse, &f).unwrap();
        let exact = fermionic_fourier(Direction::Inverse, &Q::xhat_squared(n)).unwrap();
        for (m, c) in exact.terms() {
            assert!((out.coefficient(m) - <f64 as FieldOps>::from_rational(c)).abs() < 1e-14);
        }
    }

    #[test]
    fn radial_closed_form_examples() {
        // m = 0: empty bosonic integral, the integrand at the origin
        for n in 0..=4 {
            let e: f64 = 1.7;
            assert!(rel(radial_transform_at_origin(0, n, e).unwrap(), e.powi(-(n as i32) - 1)) < 1e-13);
        }
        assert!(rel(radial_transform_at_origin(1, 0, 1.0).unwrap(), PI.sqrt()) < 1e-14);
        let want = PI.sqrt() / (2.0 * 2f64.powf(1.5));
        assert!(rel(radial_transform_at_origin(1, 1, 2.0).unwrap(), want) < 1e-14);
        assert!(matches!(radial_transform_at_origin(2, 0, 1.0), Err(Error::Divergent { .. })));
        assert!(matches!(radial_transform_at_origin(1, 0, 0.0), Err(Error::InvalidEnergy(_))));
    }

    #[test]
    fn quadrature_oracle_examples() {
        let v = radial_transform_quadrature_oracle(1, 0, 1.0).unwrap();
        assert!(rel(v.value, PI.sqrt()) < 1e-8);
        let v = radial_transform_quadrature_oracle(1, 1, 2.0).unwrap();
        assert!(rel(v.value, radial_transform_at_origin(1, 1, 2.0).unwrap()) < 1e-8);
        // M = -1 from (m, n) = (3, 2): Γ(3/2)/2! at Ẽ = 1
        let v = radial_transform_quadrature_oracle(3, 2, 1.0).unwrap();
        assert!(rel(v.value, PI.sqrt() / 4.0) < 1e-8);
        assert!(radial_transform_quadrature_oracle(4, 1, 1.0).is_err());
    }

    #[test]
    fn sphere_areas() {
        assert!(rel(unit_sphere_area(3), 4.0 * PI) < 1e-15);
        assert!(rel(unit_sphere_area(4), 2.0 * PI * PI) < 1e-15);
    }

    #[test]
    fn classical_residue() {
        let a = 1.3;
        let f = transform_1d_closed_form(0, a * a / 2.0).unwrap();
        assert!((f.decay() - a).abs() < 1e-15);
        assert!(rel(f.coeff(0), (2.0 * PI).sqrt() / a) < 1e-14);
        assert_eq!(f.max_power(), Some(0));
    }

    #[test]
    fn closed_form_matches_origin_value() {
        for k in 0..=6 {
            for e in [0.5, 1.0, 2.0, 10.0] {
                let f = transform_1d_closed_form(k, e).unwrap();
                assert!(rel(f.eval(0.0), radial_transform_at_origin(1, k, e).unwrap()) < 1e-12);
            }
        }
    }

    #[test]
    fn energy_derivative_recursion() {
        // F_k = -(1/k) ∂_Ẽ F_{k-1}
        for k in 1..=5u32 {
            let prev = transform_1d_closed_form_in(k - 1, Symbolic::decay());
            let next = transform_1d_closed_form_in(k, Symbolic::decay());
            let recursed = derivative_in_energy(&prev).scale(&Symbolic::from_ratio(-1, k as i64));
            assert_eq!(recursed, next, "k={k}");
        }
    }
}
