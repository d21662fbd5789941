//! The purely fermionic (`m = 0`) Hamiltonian `f ↦ ½Δ_f f − a δ(X̂) f` as a
//! finite matrix over the Grassmann monomial basis, and its spectrum.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::eigen::{companion, eigenvalues, rank, Matrix};
use crate::error::{Error, Result};
use crate::grassmann::{FieldOps, GrassmannElement, Rational, Scalar};
use crate::superspace::{dirac_delta, super_laplacian_fermionic};
use crate::symbolic::Symbolic;

pub const MIN_FERMIONIC_PAIRS: u32 = 1;
pub const MAX_FERMIONIC_PAIRS: u32 = 6;

/// Relative factor applied to the matrix norm for eigenvalue clustering
/// and numerical rank.
pub const SPECTRUM_REL_TOL: f64 = 1e-9;

fn check_pairs(n: u32) -> Result<()> {
    if !(MIN_FERMIONIC_PAIRS..=MAX_FERMIONIC_PAIRS).contains(&n) {
        return Err(Error::PairCountOutOfRange {
            n: n as usize,
            min: MIN_FERMIONIC_PAIRS as usize,
            max: MAX_FERMIONIC_PAIRS as usize,
        });
    }
    Ok(())
}

/// `½Δ_f f − a π^n x̀_1⋯x̀_{2n} f`.
pub fn apply_hamiltonian<T: FieldOps>(f: &GrassmannElement<T>, a: &T) -> GrassmannElement<T> {
    let n = f.n_pairs();
    let delta = dirac_delta::<T>(n);
    let pi_n = T::pi().powi(delta.pi_power).expect("π is invertible");
    let potential = delta.grassmann.multiply(f).expect("same algebra").scale(&(a.clone() * pi_n));
    &super_laplacian_fermionic(f).scale(&T::from_ratio(1, 2)) - &potential
}

/// `H` on the `2^{2n}`-dimensional monomial basis; basis index = generator
/// bitmask. Stored by sparse columns.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix {
    n_pairs: u32,
    a: f64,
    columns: Vec<Vec<(usize, f64)>>,
}

pub fn build_hamiltonian(n: u32, a: f64) -> Result<HamiltonianMatrix> {
    check_pairs(n)?;
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidCoupling(a));
    }
    let np = n as usize;
    let dim = 1usize << (2 * np);
    let columns = (0..dim)
        .map(|j| {
            let basis = GrassmannElement::monomial(np, j as u64, 1.0);
            apply_hamiltonian(&basis, &a).terms().map(|(m, c)| (m as usize, *c)).collect()
        })
        .collect();
    Ok(HamiltonianMatrix { n_pairs: n, a, columns })
}

impl HamiltonianMatrix {
    pub fn n_pairs(&self) -> u32 {
        self.n_pairs
    }

    pub fn coupling(&self) -> f64 {
        self.a
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    /// Nonzero entries `(row, value)` of column `j`.
    pub fn column(&self, j: usize) -> &[(usize, f64)] {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.columns[j].iter().find(|(r, _)| *r == i).map_or(0.0, |(_, v)| *v)
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.columns.iter().flatten().map(|(_, v)| v * v).sum::<f64>().sqrt()
    }

    /// Index sets of the connected components of the sparsity pattern. `H`
    /// is block diagonal on them.
    pub fn invariant_blocks(&self) -> Vec<Vec<usize>> {
        let dim = self.dim();
        let mut parent: Vec<usize> = (0..dim).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, _) in col {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..dim {
            let r = find(&mut parent, x);
            blocks.entry(r).or_default().push(x);
        }
        blocks.into_values().collect()
    }

    fn block_matrix(&self, indices: &[usize]) -> Matrix {
        let position: BTreeMap<usize, usize> = indices.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut m = Matrix::zeros(indices.len());
        for (b, &j) in indices.iter().enumerate() {
            for &(i, v) in &self.columns[j] {
                m[(position[&i], b)] = v;
            }
        }
        m
    }
}

/// `−(a n! (2π)^n)^{1/(n+1)}`.
pub fn predicted_level(n: u32, a: f64) -> f64 {
    -level_magnitude(n, a)
}

fn level_magnitude(n: u32, a: f64) -> f64 {
    let ln = a.ln() + crate::special::ln_factorial(n) + n as f64 * (2.0 * std::f64::consts::PI).ln();
    (ln / (n as f64 + 1.0)).exp()
}

/// `C(2n+1, n) − 1`.
pub fn claimed_zero_degeneracy(n: u32) -> u64 {
    let (top, k) = (2 * n as u64 + 1, n as u64);
    (0..k).fold(1u64, |acc, i| acc * (top - i) / (i + 1)) - 1
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueCluster {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub n_pairs: u32,
    pub a: f64,
    pub dimension: usize,
    pub matrix_norm: f64,
    /// `1e-9 · ‖H‖_F`, used for clustering and rank.
    pub tolerance: f64,
    pub invariant_blocks: usize,
    pub eigenvalues: Vec<EigenvalueCluster>,
    /// Nullity of `H`.
    pub zero_geometric_multiplicity: usize,
    /// Dimension of the generalized null space, from the ranks of powers.
    pub zero_algebraic_multiplicity: usize,
    /// Largest `|λ|` among the QR values assigned to the zero eigenvalue;
    /// nonzero because of Jordan blocks.
    pub zero_cluster_spread: f64,
    pub predicted_level: f64,
    pub predicted_level_found: bool,
    /// `+(a n!(2π)^n)^{1/(n+1)}`, predicted for odd `n` only.
    pub positive_level: Option<f64>,
    pub positive_level_found: Option<bool>,
    pub claimed_zero_degeneracy: u64,
    pub degeneracy_matches_geometric: bool,
    pub degeneracy_matches_algebraic: bool,
    /// Every nonzero eigenvalue is a root of the exact radial
    /// characteristic polynomial.
    pub nonzero_eigenvalues_radial: bool,
}

/// Generalized null-space dimension of a square matrix: `dim − rank(B^k)`
/// once the ranks stop decreasing.
fn zero_algebraic_multiplicity(b: &Matrix) -> usize {
    let dim = b.dim();
    let mut power = b.clone();
    let mut prev = dim;
    for _ in 0..=dim {
        let r = rank(&power, SPECTRUM_REL_TOL * power.frobenius_norm());
        if r == prev || r == 0 {
            return dim - r;
        }
        prev = r;
        power = power.matmul(b).expect("square");
    }
    dim - prev
}

pub fn spectrum(h: &HamiltonianMatrix) -> Result<SpectrumReport> {
    let n = h.n_pairs;
    let norm = h.frobenius_norm();
    let tol = SPECTRUM_REL_TOL * norm;
    let blocks = h.invariant_blocks();

    let mut nonzero = Vec::new();
    let mut zero_alg = 0;
    let mut zero_geo = 0;
    let mut spread = 0.0f64;
    for idx in &blocks {
        let b = h.block_matrix(idx);
        zero_geo += b.dim() - rank(&b, tol);
        let z = zero_algebraic_multiplicity(&b);
        zero_alg += z;
        let mut eig = eigenvalues(&b)?;
        eig.sort_by(|x, y| x.norm().total_cmp(&y.norm()));
        if let Some(last_zero) = z.checked_sub(1) {
            spread = spread.max(eig[last_zero].norm());
        }
        nonzero.extend_from_slice(&eig[z..]);
    }

    let mut clusters = cluster(&nonzero, tol);
    if zero_alg > 0 {
        clusters.insert(0, EigenvalueCluster { re: 0.0, im: 0.0, multiplicity: zero_alg });
    }

    let found = |target: f64| {
        nonzero
            .iter()
            .any(|z| (z.re - target).abs() <= tol.max(SPECTRUM_REL_TOL * target.abs()) && z.im.abs() <= tol)
    };
    let level = predicted_level(n, h.a);
    let positive = (n % 2 == 1).then(|| level_magnitude(n, h.a));

    let radial = radial_levels(n, h.a)?;
    let nonzero_eigenvalues_radial = nonzero.iter().all(|z| {
        radial.iter().any(|r| (z - r).norm() <= SPECTRUM_REL_TOL * r.norm().max(1.0) + tol)
    });

    let claimed = claimed_zero_degeneracy(n);
    Ok(SpectrumReport {
        n_pairs: n,
        a: h.a,
        dimension: h.dim(),
        matrix_norm: norm,
        tolerance: tol,
        invariant_blocks: blocks.len(),
        eigenvalues: clusters,
        zero_geometric_multiplicity: zero_geo,
        zero_algebraic_multiplicity: zero_alg,
        zero_cluster_spread: spread,
        predicted_level: level,
        predicted_level_found: found(level),
        positive_level: positive,
        positive_level_found: positive.map(found),
        claimed_zero_degeneracy: claimed,
        degeneracy_matches_geometric: zero_geo as u64 == claimed,
        degeneracy_matches_algebraic: zero_alg as u64 == claimed,
        nonzero_eigenvalues_radial,
    })
}

fn cluster(values: &[Complex64], tol: f64) -> Vec<EigenvalueCluster> {
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for v in values {
        match groups.iter_mut().find(|(c, _)| (c - v).norm() <= tol) {
            Some((c, k)) => {
                *c = (*c * *k as f64 + v) / (*k as f64 + 1.0);
                *k += 1;
            }
            None => groups.push((*v, 1)),
        }
    }
    groups.sort_by(|x, y| x.0.re.total_cmp(&y.0.re).then(x.0.im.total_cmp(&y.0.im)));
    groups.into_iter().map(|(c, k)| EigenvalueCluster { re: c.re, im: c.im, multiplicity: k }).collect()
}

/// Matrix of `H` on `span{1, X̂², …, X̂^{2n}}` with symbolic coupling `a`;
/// column `k` holds the coordinates of `H(X̂^{2k})`.
pub fn radial_matrix(n: u32) -> Result<Vec<Vec<Symbolic>>> {
    check_pairs(n)?;
    let np = n as usize;
    let basis: Vec<GrassmannElement<Symbolic>> = (0..=np)
        .map(|k| GrassmannElement::<Rational>::xhat_power(np, k).map(|c| Symbolic::constant(c.clone())))
        .collect();
    let mut m = vec![vec![<Symbolic as Scalar>::zero(); np + 1]; np + 1];
    for (k, e) in basis.iter().enumerate() {
        let mut image = apply_hamiltonian(e, &Symbolic::coupling());
        // peel off components from the top degree down
        for j in (0..=np).rev() {
            let shape = &basis[j];
            let c = image.grade(2 * j as u32);
            if c.is_zero() {
                continue;
            }
            let r = c
                .ratio_to(shape, |x, y| {
                    let inv = y.checked_recip().expect("X̂ coefficients are nonzero rationals");
                    x.clone() * inv
                })
                .ok_or_else(|| Error::InvalidArgument("radial subspace is not invariant".into()))?;
            image = &image - &shape.scale(&r);
            m[j][k] = r;
        }
        if !image.is_zero() {
            return Err(Error::InvalidArgument("radial subspace is not invariant".into()));
        }
    }
    Ok(m)
}

/// `det(λI − R)` on the radial subspace by the Faddeev–LeVerrier
/// recursion; coefficients lowest degree first, leading coefficient 1.
pub fn characteristic_polynomial_exact(n: u32) -> Result<Vec<Symbolic>> {
    let r = radial_matrix(n)?;
    let d = r.len();
    let zero = <Symbolic as Scalar>::zero;
    let mul = |x: &[Vec<Symbolic>], y: &[Vec<Symbolic>]| -> Vec<Vec<Symbolic>> {
        (0..d)
            .map(|i| (0..d).map(|j| (0..d).fold(zero(), |acc, k| acc + x[i][k].clone() * y[k][j].clone())).collect())
            .collect()
    };
    let mut coeffs = vec![zero(); d + 1];
    coeffs[d] = <Symbolic as Scalar>::one();
    let mut mk = vec![vec![zero(); d]; d];
    for k in 1..=d {
        let mut next = mul(&r, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = row[i].clone() + coeffs[d - k + 1].clone();
        }
        mk = next;
        let am = mul(&r, &mk);
        let trace = (0..d).fold(zero(), |acc, i| acc + am[i][i].clone());
        coeffs[d - k] = trace.scale(&Rational::new((-1).into(), (k as i64).into()));
    }
    Ok(coeffs)
}

/// Roots of the radial characteristic polynomial at coupling `a`.
pub fn radial_levels(n: u32, a: f64) -> Result<Vec<Complex64>> {
    let coeffs = characteristic_polynomial_exact(n)?;
    let lower: Vec<f64> = coeffs[..coeffs.len() - 1].iter().map(|c| c.eval(a, 1.0)).collect();
    eigenvalues(&companion(&lower))
}
