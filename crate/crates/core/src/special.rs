//! Log-gamma via the Lanczos approximation (g = 7, nine terms).

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0. Uses the reflection formula below 1/2.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma is only defined here for x > 0, got {x}");
    if x < 0.5 {
        // Γ(x)Γ(1-x) = π / sin(πx)
        return PI.ln() - (PI * x).sin().ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    let mut series = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + series.ln()
}

pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

/// ln k!
pub fn ln_factorial(k: u32) -> f64 {
    ln_gamma(k as f64 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn integer_and_half_integer_values() {
        let mut fact = 1.0f64;
        for k in 1..=20u32 {
            fact *= k as f64;
            assert!((ln_factorial(k) - fact.ln()).abs() < 1e-13 * fact.ln().max(1.0), "k={k}");
        }
        assert!(rel(gamma(0.5), PI.sqrt()) < 1e-14);
        assert!(rel(gamma(1.5), PI.sqrt() / 2.0) < 1e-14);
        assert!(ln_gamma(1.0).abs() < 1e-15);
        assert!(ln_gamma(2.0).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_statrs() {
        let mut x = 0.5;
        while x < 2000.0 {
            let want = statrs::function::gamma::ln_gamma(x);
            let err = (ln_gamma(x) - want).abs() / want.abs().max(1.0);
            assert!(err < 1e-12, "x={x} err={err}");
            x *= 1.37;
        }
    }

    #[test]
    fn stirling_regime() {
        // ln Γ(501) = ln 500!, checked against the Stirling series
        let n = 500.0f64;
        let stirling = n * n.ln() - n + 0.5 * (2.0 * PI * n).ln() + 1.0 / (12.0 * n)
            - 1.0 / (360.0 * n.powi(3));
        assert!(rel(ln_gamma(501.0), stirling) < 1e-14);
    }
}
