//! Bound state of `½Δψ − a δ(X) ψ = Eψ`: the energy as a function of the
//! super-dimension, its `M → −∞` slope, and the explicit `m = 1` wave
//! function with its checks.

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{fermionic_fourier, radial_transform_at_origin, transform_1d_closed_form_in, Direction};
use crate::grassmann::{factorial, rational, FieldOps, GrassmannElement, Rational, Scalar};
use crate::special::ln_gamma;
use crate::superspace::{squared_norm, super_laplacian_1d, ModelParams, RadialExpPoly, SuperWaveFunction1D};
use crate::symbolic::Symbolic;

/// Limit of `E(M)/M` as `M → −∞`.
pub const ASYMPTOTIC_SLOPE: f64 = PI / E;

/// Relative tolerance for the self-consistency condition and wave-function
/// residuals on the float backend.
pub const CONSISTENCY_TOL: f64 = 1e-12;
pub const VALIDATION_TOL: f64 = 1e-9;

/// `ln Ẽ = [(M/2) ln 2π − ln a − ln Γ(1 − M/2)] / (M/2 − 1)`.
fn ln_binding_energy(super_dimension: f64, a: f64) -> Result<f64> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidCoupling(a));
    }
    if !(super_dimension <= 1.0) {
        return Err(Error::UnsupportedDimension { super_dimension });
    }
    let half = super_dimension / 2.0;
    Ok((half * (2.0 * PI).ln() - a.ln() - ln_gamma(1.0 - half)) / (half - 1.0))
}

/// Bound-state energy `E(M, a) < 0` for any real `M <= 1`.
pub fn energy_for_dimension(super_dimension: f64, a: f64) -> Result<f64> {
    Ok(-ln_binding_energy(super_dimension, a)?.exp())
}

pub fn bound_state_energy(params: &ModelParams) -> Result<f64> {
    energy_for_dimension(params.super_dimension() as f64, params.a)
}

/// `a (2π)^{-M/2} n! F^-_{m|0}((r²/2+Ẽ)^{-n-1})(0) − 1`: zero exactly at the
/// bound-state binding energy.
pub fn self_consistency_residual(params: &ModelParams, e_tilde: f64) -> Result<f64> {
    let half = params.super_dimension() as f64 / 2.0;
    let transform = radial_transform_at_origin(params.m, params.n, e_tilde)?;
    let ln_lhs = params.a.ln() - half * (2.0 * PI).ln() + crate::special::ln_factorial(params.n) + transform.ln();
    Ok(ln_lhs.exp_m1())
}

/// `E(M, 1) / M`; tends to `π/e` from below.
pub fn asymptotic_ratio(super_dimension: f64) -> Result<f64> {
    if !(super_dimension <= -10.0) {
        return Err(Error::InvalidArgument(format!(
            "asymptotic ratio needs M <= -10, got {super_dimension}"
        )));
    }
    Ok(energy_for_dimension(super_dimension, 1.0)? / super_dimension)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundStateResult {
    pub params: ModelParams,
    pub energy: f64,
    pub binding_energy: f64,
    pub consistency_residual: f64,
    pub wavefunction: Option<SuperWaveFunction1D<f64>>,
}

pub fn solve(params: &ModelParams) -> Result<BoundStateResult> {
    let energy = bound_state_energy(params)?;
    let binding_energy = -energy;
    let consistency_residual = self_consistency_residual(params, binding_energy)?;
    let wavefunction = (params.m == 1).then(|| build_wavefunction_1d(params)).transpose()?;
    Ok(BoundStateResult { params: *params, energy, binding_energy, consistency_residual, wavefunction })
}

/// Wave function from the explicit double sum,
/// `a π^n ψ(0) e^{-b|x|} Σ_k Σ_j 2^{2k+1}/(n-k)! (k+j)!/(j!(k-j)!) |x|^{k-j}/(2b)^{k+j+1} X̂^{2n-2k}`,
/// with `b = √(2Ẽ)`. Component `k` multiplies `X̂^{2n-2k}`.
pub fn wavefunction_direct<T: FieldOps>(n: u32, a: T, decay: T, psi0: T) -> SuperWaveFunction1D<T> {
    let mut pi_n = T::one();
    for _ in 0..n {
        pi_n = pi_n * T::pi();
    }
    let overall = a * pi_n * psi0.clone();
    let two_b = decay.clone() * T::from_int(2);
    let mut psi = SuperWaveFunction1D::new(n as usize, decay.clone(), psi0);
    for k in 0..=n {
        let mut f = RadialExpPoly::new(decay.clone());
        for j in 0..=k {
            let c = rational(1i64 << (2 * k + 1), 1) / factorial(n - k) * factorial(k + j)
                / (factorial(j) * factorial(k - j));
            let term = overall.clone()
                * T::from_rational(&c)
                * two_b.powi(-((k + j + 1) as i32)).expect("decay rate is invertible");
            f.add_term(k - j, term);
        }
        psi.set_component(k as usize, f);
    }
    psi
}

/// The same wave function assembled from the transforms:
/// `a ψ(0) (2π)^{-M/2} Σ_k F^-_{0|2n}(Ŷ^{2k}/2^k) · F^-_{1|0}((y²/2+Ẽ)^{-k-1})`.
pub fn wavefunction_via_fourier<T: FieldOps>(n: u32, a: T, decay: T, psi0: T) -> Result<SuperWaveFunction1D<T>> {
    let nn = n as usize;
    // (2π)^{-M/2} with M = 1 − 2n
    let two_pi = T::from_int(2) * T::pi();
    let inv_sqrt_two_pi = (T::sqrt2() * T::sqrt_pi()).checked_recip().expect("√(2π) is invertible");
    let prefactor = a * psi0.clone() * two_pi.powi(n as i32).expect("positive power") * inv_sqrt_two_pi;
    let mut psi = SuperWaveFunction1D::new(nn, decay.clone(), psi0);
    for k in 0..=nn {
        let input = GrassmannElement::<Rational>::xhat_power(nn, k).scale(&rational(1, 1i64 << k));
        let image = fermionic_fourier(Direction::Inverse, &input)?;
        let shape = GrassmannElement::<Rational>::xhat_power(nn, nn - k);
        let grassmann_coeff = image
            .ratio_to(&shape, |x, y| x / y)
            .ok_or_else(|| Error::InvalidArgument(format!("F^-(Ŷ^{}) is not a multiple of X̂^{}", 2 * k, 2 * (nn - k))))?;
        let radial = transform_1d_closed_form_in(k as u32, decay.clone());
        let c = prefactor.clone() * T::from_rational(&grassmann_coeff);
        psi.set_component(k, radial.scale(&c));
    }
    Ok(psi)
}

/// Unnormalized (`ψ(0) = 1`) `m = 1` wave function at the bound-state energy.
pub fn build_wavefunction_1d(params: &ModelParams) -> Result<SuperWaveFunction1D<f64>> {
    if params.m != 1 {
        return Err(Error::RequiresOneBoson { m: params.m });
    }
    let e_tilde = -bound_state_energy(params)?;
    build_wavefunction_at(params, e_tilde)
}

/// `m = 1` wave function for an arbitrary binding energy `Ẽ`; only the
/// bound-state value satisfies the jump condition.
pub fn build_wavefunction_at(params: &ModelParams, e_tilde: f64) -> Result<SuperWaveFunction1D<f64>> {
    if params.m != 1 {
        return Err(Error::RequiresOneBoson { m: params.m });
    }
    if !(e_tilde.is_finite() && e_tilde > 0.0) {
        return Err(Error::InvalidEnergy(e_tilde));
    }
    Ok(wavefunction_direct(params.n, params.a, (2.0 * e_tilde).sqrt(), 1.0))
}

/// Exact wave function with symbolic `a` and `b`, `ψ(0) = 1`.
pub fn exact_wavefunction_direct(n: u32) -> SuperWaveFunction1D<Symbolic> {
    wavefunction_direct(n, Symbolic::coupling(), Symbolic::decay(), Symbolic::one())
}

pub fn exact_wavefunction_via_fourier(n: u32) -> Result<SuperWaveFunction1D<Symbolic>> {
    wavefunction_via_fourier(n, Symbolic::coupling(), Symbolic::decay(), Symbolic::one())
}

/// The bound-state condition on `R^{1|2n}` as a relation on the decay rate:
/// `b^{2n+1} = a π^n (2n)!/n!`. Returns `(2n+1, rhs)`.
pub fn decay_relation(n: u32) -> (i32, Symbolic) {
    let mut rhs = Symbolic::coupling() * Symbolic::from_rational(&(factorial(2 * n) / factorial(n)));
    for _ in 0..n {
        rhs = rhs * Symbolic::pi();
    }
    (2 * n as i32 + 1, rhs)
}

/// Residuals of `½Δψ − a δ(X) ψ − Eψ` with `E = −b²/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Residuals<T> {
    /// Per component, the `x ≠ 0` residual as a radial-exponential polynomial.
    pub smooth: BTreeMap<usize, RadialExpPoly<T>>,
    /// `δ(x)` coefficient on the top component `X̂^{2n}`.
    pub jump: T,
    /// The delta-potential part of `jump`, `a π^n ψ_body(0) / n!`.
    pub potential: T,
    /// `δ(x)` coefficients on lower components; these must cancel.
    pub lower_delta: BTreeMap<usize, T>,
}

pub fn residuals<T: FieldOps>(psi: &SuperWaveFunction1D<T>, a: &T) -> Residuals<T> {
    let n = psi.n_pairs();
    let b = psi.decay().clone();
    let half = T::from_ratio(1, 2);
    let energy = -(b.clone() * b.clone()) * half.clone();
    let lap = super_laplacian_1d(psi);

    let mut smooth = BTreeMap::new();
    for k in 0..=n {
        let kinetic = lap.smooth.get(&k).cloned().unwrap_or_else(|| RadialExpPoly::new(b.clone()));
        let r = kinetic.scale(&half).plus(&psi.component(k).scale(&-energy.clone()));
        if !r.is_zero() {
            smooth.insert(k, r);
        }
    }

    let mut pi_n = T::one();
    for _ in 0..n {
        pi_n = pi_n * T::pi();
    }
    let potential = a.clone() * pi_n * psi.body_at_origin() * T::from_rational(&factorial(n as u32).recip());
    let top_kink = lap.delta.get(&0).cloned().unwrap_or_else(T::zero) * half.clone();
    let jump = top_kink - potential.clone();
    let lower_delta = lap
        .delta
        .iter()
        .filter(|(k, _)| **k > 0)
        .map(|(k, c)| (*k, c.clone() * half.clone()))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Residuals { smooth, jump, potential, lower_delta }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub smooth_residual: f64,
    pub jump_residual: f64,
    pub lower_delta_residual: f64,
    pub origin_residual: f64,
    pub tolerance: f64,
    pub smooth_ok: bool,
    pub jump_ok: bool,
    pub lower_delta_ok: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.smooth_ok && self.jump_ok && self.lower_delta_ok
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.smooth_ok {
            out.push("smooth-region residual");
        }
        if !self.jump_ok {
            out.push("jump condition");
        }
        if !self.lower_delta_ok {
            out.push("lower-component delta cancellation");
        }
        out
    }
}

/// Checks `½Δψ − aδ(X)ψ = Eψ` for a float wave function: the smooth
/// residual and the lower delta terms relative to the size of ψ, the jump
/// condition relative to the potential term.
pub fn validate_wavefunction(psi: &SuperWaveFunction1D<f64>, params: &ModelParams) -> Result<ValidationReport> {
    if params.m != 1 {
        return Err(Error::RequiresOneBoson { m: params.m });
    }
    if psi.n_pairs() != params.n as usize {
        return Err(Error::DimensionMismatch { left: params.n as usize, right: psi.n_pairs() });
    }
    let b = *psi.decay();
    let res = residuals(psi, &params.a);
    let size = psi
        .components()
        .flat_map(|(_, f)| f.terms().map(|(_, c)| c.abs()))
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let smooth = res
        .smooth
        .values()
        .flat_map(|f| f.terms().map(|(_, c)| c.abs()))
        .fold(0.0f64, f64::max)
        / (size * b.max(1.0).powi(2));
    let lower = res.lower_delta.values().map(|c| c.abs()).fold(0.0f64, f64::max) / (size * b.max(1.0));
    let jump = (res.jump / res.potential).abs();
    let origin = ((psi.body_at_origin() - psi.psi0()) / psi.psi0()).abs();
    Ok(ValidationReport {
        smooth_residual: smooth,
        jump_residual: jump,
        lower_delta_residual: lower,
        origin_residual: origin,
        tolerance: VALIDATION_TOL,
        smooth_ok: smooth <= VALIDATION_TOL,
        jump_ok: jump <= VALIDATION_TOL,
        lower_delta_ok: lower <= VALIDATION_TOL,
    })
}

/// Exact checks on the symbolic wave function. The jump condition is
/// reduced modulo the bound-state relation on `b`; the other two residuals
/// must vanish identically.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactValidation {
    pub smooth_zero: bool,
    pub jump_zero: bool,
    pub lower_delta_zero: bool,
    pub origin_consistent: bool,
}

impl ExactValidation {
    pub fn passed(&self) -> bool {
        self.smooth_zero && self.jump_zero && self.lower_delta_zero && self.origin_consistent
    }
}

pub fn validate_exact(psi: &SuperWaveFunction1D<Symbolic>) -> ExactValidation {
    let n = psi.n_pairs() as u32;
    let res = residuals(psi, &Symbolic::coupling());
    let (degree, rhs) = decay_relation(n);
    let jump = res.jump.reduce_decay(degree, &rhs);
    let origin = (psi.body_at_origin() - psi.psi0().clone()).reduce_decay(degree, &rhs);
    ExactValidation {
        smooth_zero: res.smooth.is_empty(),
        jump_zero: jump.is_zero(),
        lower_delta_zero: res.lower_delta.is_empty(),
        origin_consistent: origin.is_zero(),
    }
}

/// Rescales so the squared norm is 1.
pub fn normalize(psi: &SuperWaveFunction1D<f64>) -> Result<SuperWaveFunction1D<f64>> {
    let norm = squared_norm(psi);
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::ZeroNorm);
    }
    Ok(psi.scale(&norm.sqrt().recip()))
}

/// Reference energies for `a = 1`, five significant figures.
pub const REFERENCE_ENERGIES: [(i64, f64); 6] =
    [(1, -0.5), (0, -1.0), (-1, -1.7025), (-2, -2.5066), (-3, -3.3757), (-1000, -1148.8)];

/// Rounds to `digits` significant figures.
pub fn round_significant(x: f64, digits: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let shift = digits as i32 - 1 - magnitude;
    let factor = 10f64.powi(shift.abs());
    if shift >= 0 {
        (x * factor).round() / factor
    } else {
        (x / factor).round() * factor
    }
}
