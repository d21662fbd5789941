//! Acceptance suite: eight criteria, one PASS/FAIL line each. Exits
//! nonzero if any criterion fails.

use std::f64::consts::{E, PI};
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex;
use superspace_delta::bound_state::{
    asymptotic_ratio, build_wavefunction_at, bound_state_energy, energy_for_dimension, exact_wavefunction_direct,
    exact_wavefunction_via_fourier, round_significant, validate_exact, validate_wavefunction, REFERENCE_ENERGIES,
};
use superspace_delta::fermionic::{build_hamiltonian, claimed_zero_degeneracy, spectrum, SpectrumReport};
use superspace_delta::fourier::{
    fermionic_fourier, radial_transform_at_origin, radial_transform_quadrature_oracle, Direction,
    FermionicKernelExpansion,
};
use superspace_delta::grassmann::{factorial, rational};
use superspace_delta::superspace::{dirac_delta, dirac_delta_from_xhat, SuperPolynomial};
use superspace_delta::{GrassmannElement, ModelParams, Rational, Scalar};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn reference_table() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_superspace-delta"))
        .args(["table", "--a", "1"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.success(), format!("table exited with {}", out.status))?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let rows: Vec<(f64, f64)> = text
        .lines()
        .filter(|l| !l.starts_with('#') && *l != "M,E")
        .map(|l| {
            let (m, e) = l.split_once(',').expect("two columns");
            (m.parse().expect("M"), e.parse().expect("E"))
        })
        .collect();
    ensure(rows.len() == REFERENCE_ENERGIES.len(), format!("expected {} rows, got {}", REFERENCE_ENERGIES.len(), rows.len()))?;
    for ((m, e), (want_m, want_e)) in rows.iter().zip(REFERENCE_ENERGIES) {
        ensure(*m == want_m as f64, format!("row order: got M={m}"))?;
        ensure(round_significant(*e, 5) == want_e, format!("M={m}: {e} rounds to {}", round_significant(*e, 5)))?;
    }
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("6/6 rows at 5 significant figures in {elapsed:.2?}"))
}

fn classical_limit() -> Outcome {
    let mut worst = 0.0f64;
    for a in [0.5, 1.0, 2.0, 10.0] {
        let e = bound_state_energy(&ModelParams::new(1, 0, a).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        worst = worst.max(rel(e, -a * a / 2.0));
    }
    ensure(worst <= 1e-12, format!("worst relative error {worst:e}"))?;
    Ok(format!("max relative error {worst:.1e}"))
}

fn closed_form_vs_quadrature() -> Outcome {
    let start = Instant::now();
    let mut points = 0;
    let mut worst = 0.0f64;
    for (m, n) in [(1u32, 0u32), (2, 1), (3, 1), (1, 1), (2, 2), (3, 2)] {
        for e in [0.5, 1.0, 2.0, 10.0] {
            let closed = radial_transform_at_origin(m, n, e).map_err(|x| x.to_string())?;
            let oracle = radial_transform_quadrature_oracle(m, n, e).map_err(|x| x.to_string())?;
            worst = worst.max(rel(closed, oracle.value));
            points += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(worst <= 1e-8, format!("worst relative deviation {worst:e}"))?;
    ensure(points >= 12, "too few grid points")?;
    ensure(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!("{points} points, max relative deviation {worst:.1e}, {elapsed:.2?}"))
}

fn algebraic_identities() -> Outcome {
    for m in 0..=1usize {
        for n in 0..=4usize {
            let lap = SuperPolynomial::<Rational>::generalized_norm_squared(m, n).super_laplacian();
            let want = SuperPolynomial::constant(m, n, rational(2 * (m as i64 - 2 * n as i64), 1));
            ensure(lap == want, format!("Δ(X²) ≠ 2M for m={m} n={n}"))?;
        }
    }
    let one = rational(1, 1);
    for n in 0..=4 {
        ensure(dirac_delta::<Rational>(n).integral().is_rational(&one), format!("∫δ ≠ 1 for n={n}"))?;
        ensure(dirac_delta_from_xhat(n).integral().is_rational(&one), format!("∫(π^n/n!)X̂^{{2n}} ≠ 1 for n={n}"))?;
    }
    Ok("Δ(X²)=2M for m∈{0,1}, n≤4 and ∫δ(X̂)=1 for n≤4, exact".into())
}

fn two_pow(e: i64) -> Rational {
    if e >= 0 {
        rational(1 << e, 1)
    } else {
        rational(1, 1 << -e)
    }
}

fn fermionic_fourier_criterion() -> Outcome {
    for n in 0..=4u32 {
        for k in 0..=n {
            let input = GrassmannElement::<Rational>::xhat_power(n as usize, k as usize);
            let got = fermionic_fourier(Direction::Inverse, &input).map_err(|e| e.to_string())?;
            let coeff = two_pow(2 * k as i64 - n as i64) * factorial(k) / factorial(n - k);
            let want = GrassmannElement::<Rational>::xhat_power(n as usize, (n - k) as usize).scale(&coeff);
            ensure(got == want, format!("F⁻(Ŷ^{}) wrong for n={n}", 2 * k))?;
        }
    }
    let mut monomials = 0;
    for n in 0..=3usize {
        let fwd = FermionicKernelExpansion::<Rational>::new(n, Direction::Forward).map_err(|e| e.to_string())?;
        let inv = FermionicKernelExpansion::<Rational>::new(n, Direction::Inverse).map_err(|e| e.to_string())?;
        for mask in 0..1u64 << (2 * n) {
            let u = GrassmannElement::monomial(n, mask, <Complex<Rational> as Scalar>::one());
            let back = fwd.apply(&u).and_then(|img| inv.apply(&img)).map_err(|e| e.to_string())?;
            ensure(back == u, format!("F⁻F⁺ ≠ id on {mask:#b}, n={n}"))?;
            monomials += 1;
        }
    }
    Ok(format!("15 power identities exact; inversion on {monomials} basis monomials"))
}

fn wavefunction_criterion() -> Outcome {
    for n in 0..=3 {
        let direct = exact_wavefunction_direct(n);
        let fourier = exact_wavefunction_via_fourier(n).map_err(|e| e.to_string())?;
        ensure(direct == fourier, format!("constructions differ for n={n}"))?;
        let v = validate_exact(&direct);
        ensure(v.smooth_zero, format!("exact smooth residual nonzero for n={n}"))?;
        ensure(v.lower_delta_zero, format!("lower delta terms survive for n={n}"))?;
        ensure(v.jump_zero, format!("exact jump condition fails for n={n}"))?;

        let p = ModelParams::new(1, n, 1.0).map_err(|e| e.to_string())?;
        let e_tilde = -bound_state_energy(&p).map_err(|e| e.to_string())?;
        let good = validate_wavefunction(&build_wavefunction_at(&p, e_tilde).map_err(|e| e.to_string())?, &p)
            .map_err(|e| e.to_string())?;
        ensure(good.passed(), format!("float validation fails for n={n}: {good:?}"))?;
        let bad = validate_wavefunction(&build_wavefunction_at(&p, 1.01 * e_tilde).map_err(|e| e.to_string())?, &p)
            .map_err(|e| e.to_string())?;
        ensure(!bad.jump_ok, format!("1% perturbation not detected for n={n}"))?;
    }
    Ok("n≤3: constructions agree exactly, residual ≡ 0, jump holds, perturbed Ẽ rejected".into())
}

fn report(n: u32) -> Result<SpectrumReport, String> {
    build_hamiltonian(n, 1.0).and_then(|h| spectrum(&h)).map_err(|e| e.to_string())
}

fn has_real(r: &SpectrumReport, target: f64, tol: f64) -> bool {
    r.eigenvalues.iter().any(|c| (c.re - target).abs() <= tol && c.im.abs() <= tol)
}

fn fermionic_spectrum_criterion() -> Outcome {
    let r1 = report(1)?;
    let s = (2.0 * PI).sqrt();
    ensure(has_real(&r1, s, 1e-9) && has_real(&r1, -s, 1e-9), "±√(2π) missing for n=1")?;
    ensure(r1.zero_geometric_multiplicity == 2, format!("n=1 nullity {}", r1.zero_geometric_multiplicity))?;
    ensure(claimed_zero_degeneracy(1) == 2, "C(3,1)−1")?;
    let mut notes = vec!["n=1 ±√(2π), nullity 2".to_string()];
    for n in [2u32, 3] {
        let r = report(n)?;
        let n_factorial: f64 = (1..=n).map(f64::from).product();
        let level = -(n_factorial * (2.0 * PI).powi(n as i32)).powf(1.0 / (n as f64 + 1.0));
        ensure(has_real(&r, level, 1e-9), format!("n={n}: level {level} missing"))?;
        if n == 3 {
            ensure(has_real(&r, -level, 1e-9), "n=3: positive partner missing")?;
        }
        notes.push(format!(
            "n={n} geometric {} / algebraic {} vs claimed {} (geometric match: {}, algebraic match: {})",
            r.zero_geometric_multiplicity,
            r.zero_algebraic_multiplicity,
            r.claimed_zero_degeneracy,
            r.degeneracy_matches_geometric,
            r.degeneracy_matches_algebraic
        ));
    }
    Ok(notes.join("; "))
}

fn asymptote_criterion() -> Outcome {
    let far = asymptotic_ratio(-1e6).map_err(|e| e.to_string())?;
    let near = asymptotic_ratio(-1000.0).map_err(|e| e.to_string())?;
    let slope = PI / E;
    ensure(rel(far, slope) <= 1e-3, format!("E/M at -1e6 = {far}"))?;
    ensure((near - 1.1488).abs() <= 1e-4, format!("E/M at -1000 = {near}"))?;
    let table = energy_for_dimension(-1000.0, 1.0).map_err(|e| e.to_string())?;
    ensure(round_significant(table, 5) == -1148.8, "inconsistent with the reference table")?;
    Ok(format!("E/M = {far:.7} at M=-1e6 (π/e = {slope:.7}), {near:.5} at M=-1000"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 reference energy table", reference_table),
        ("2 classical limit", classical_limit),
        ("3 closed form vs quadrature", closed_form_vs_quadrature),
        ("4 algebraic identity sweep", algebraic_identities),
        ("5 fermionic Fourier transform", fermionic_fourier_criterion),
        ("6 m=1 wave function", wavefunction_criterion),
        ("7 fermionic spectrum", fermionic_spectrum_criterion),
        ("8 asymptote", asymptote_criterion),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {} failed", 8 - failures, failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
