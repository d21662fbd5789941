//! Dense real matrices: eigenvalues of a general (non-symmetric) matrix by
//! balancing, Hessenberg reduction and Francis double-shift QR, plus
//! numerical rank by fully pivoted elimination.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Iteration cap per eigenvalue in the QR sweep.
pub const QR_MAX_ITERATIONS: usize = 30;

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.len() });
            }
            m.data[i * dim..(i + 1) * dim].copy_from_slice(row);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// Submatrix on the given row/column indices.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Diagonal similarity scaling by powers of two so that row and column
/// norms are comparable.
fn balance(a: &mut Matrix) {
    const RADIX: f64 = 2.0;
    let n = a.dim;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let (mut r, mut c) = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= g;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Reduction to upper Hessenberg form by stabilized elementary similarity
/// transformations.
fn hessenberg(a: &mut Matrix) {
    let n = a.dim;
    for m in 1..n.saturating_sub(1) {
        let mut x = 0.0f64;
        let mut piv = m;
        for j in m..n {
            if a[(j, m - 1)].abs() > x.abs() {
                x = a[(j, m - 1)];
                piv = j;
            }
        }
        if piv != m {
            for j in (m - 1)..n {
                let t = a[(piv, j)];
                a[(piv, j)] = a[(m, j)];
                a[(m, j)] = t;
            }
            for j in 0..n {
                let t = a[(j, piv)];
                a[(j, piv)] = a[(j, m)];
                a[(j, m)] = t;
            }
        }
        if x != 0.0 {
            for i in (m + 1)..n {
                let y = a[(i, m - 1)];
                if y != 0.0 {
                    let y = y / x;
                    a[(i, m - 1)] = 0.0;
                    for j in m..n {
                        a[(i, j)] -= y * a[(m, j)];
                    }
                    for j in 0..n {
                        a[(j, m)] += y * a[(j, i)];
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..i.saturating_sub(1) {
            a[(i, j)] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Eigenvalues of an upper Hessenberg matrix by the Francis double-shift
/// QR iteration. The matrix is destroyed.
fn hessenberg_qr(a: &mut Matrix) -> Result<Vec<Complex64>> {
    let n = a.dim as isize;
    let mut wr = vec![Complex64::new(0.0, 0.0); a.dim];
    if n == 0 {
        return Ok(wr);
    }
    let at = |a: &Matrix, i: isize, j: isize| a[(i as usize, j as usize)];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in (i - 1).max(0)..n {
            anorm += at(a, i, j).abs();
        }
    }
    let eps = f64::EPSILON;
    let mut nn = n - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l > 0 {
                let mut s = at(a, l - 1, l - 1).abs() + at(a, l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if at(a, l, l - 1).abs() <= eps * s {
                    a[(l as usize, l as usize - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = at(a, nn, nn);
            if l == nn {
                wr[nn as usize] = Complex64::new(x + t, 0.0);
                nn -= 1;
            } else {
                let mut y = at(a, nn - 1, nn - 1);
                let mut w = at(a, nn, nn - 1) * at(a, nn - 1, nn);
                if l == nn - 1 {
                    let p = 0.5 * (y - x);
                    let q = p * p + w;
                    let z = q.abs().sqrt();
                    x += t;
                    if q >= 0.0 {
                        let z = p + sign(z, p);
                        wr[nn as usize - 1] = Complex64::new(x + z, 0.0);
                        wr[nn as usize] = Complex64::new(if z != 0.0 { x - w / z } else { x + z }, 0.0);
                    } else {
                        wr[nn as usize] = Complex64::new(x + p, -z);
                        wr[nn as usize - 1] = Complex64::new(x + p, z);
                    }
                    nn -= 2;
                } else {
                    if its == QR_MAX_ITERATIONS {
                        return Err(Error::EigenNoConvergence { iterations: QR_MAX_ITERATIONS });
                    }
                    if its == 10 || its == 20 {
                        // exceptional shift
                        t += x;
                        for i in 0..=nn {
                            a[(i as usize, i as usize)] -= x;
                        }
                        let s = at(a, nn, nn - 1).abs() + at(a, nn - 1, nn - 2).abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    let (mut p, mut q, mut r, mut z);
                    let mut m = nn - 2;
                    loop {
                        z = at(a, m, m);
                        r = x - z;
                        let s = y - z;
                        p = (r * s - w) / at(a, m + 1, m) + at(a, m, m + 1);
                        q = at(a, m + 1, m + 1) - z - r - s;
                        r = at(a, m + 2, m + 1);
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = at(a, m, m - 1).abs() * (q.abs() + r.abs());
                        let v = p.abs() * (at(a, m - 1, m - 1).abs() + z.abs() + at(a, m + 1, m + 1).abs());
                        if u <= eps * v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in m..nn - 1 {
                        a[(i as usize + 2, i as usize)] = 0.0;
                        if i != m {
                            a[(i as usize + 2, i as usize - 1)] = 0.0;
                        }
                    }
                    for k in m..nn {
                        if k != m {
                            p = at(a, k, k - 1);
                            q = at(a, k + 1, k - 1);
                            r = if k + 1 != nn { at(a, k + 2, k - 1) } else { 0.0 };
                            x = p.abs() + q.abs() + r.abs();
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let s = sign((p * p + q * q + r * r).sqrt(), p);
                        if s == 0.0 {
                            continue;
                        }
                        if k == m {
                            if l != m {
                                a[(k as usize, k as usize - 1)] = -at(a, k, k - 1);
                            }
                        } else {
                            a[(k as usize, k as usize - 1)] = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for j in k..=nn {
                            let mut pp = at(a, k, j) + q * at(a, k + 1, j);
                            if k + 1 != nn {
                                pp += r * at(a, k + 2, j);
                                a[(k as usize + 2, j as usize)] -= pp * z;
                            }
                            a[(k as usize + 1, j as usize)] -= pp * y;
                            a[(k as usize, j as usize)] -= pp * x;
                        }
                        let mmin = nn.min(k + 3);
                        for i in l..=mmin {
                            let mut pp = x * at(a, i, k) + y * at(a, i, k + 1);
                            if k + 1 != nn {
                                pp += z * at(a, i, k + 2);
                                a[(i as usize, k as usize + 2)] -= pp * r;
                            }
                            a[(i as usize, k as usize + 1)] -= pp * q;
                            a[(i as usize, k as usize)] -= pp;
                        }
                    }
                }
            }
            if l + 1 >= nn {
                break;
            }
        }
    }
    Ok(wr)
}

/// All eigenvalues of a real square matrix, complex pairs adjacent.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<Complex64>> {
    if a.data.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let mut work = a.clone();
    balance(&mut work);
    hessenberg(&mut work);
    hessenberg_qr(&mut work)
}

/// Number of pivots larger than `threshold` in Gaussian elimination with
/// complete pivoting.
pub fn rank(a: &Matrix, threshold: f64) -> usize {
    let n = a.dim;
    let mut w = a.clone();
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let mut best = (k, k, 0.0f64);
        for (ri, &r) in rows.iter().enumerate().skip(k) {
            for (ci, &c) in cols.iter().enumerate().skip(k) {
                let v = w[(r, c)].abs();
                if v > best.2 {
                    best = (ri, ci, v);
                }
            }
        }
        if best.2 <= threshold {
            return k;
        }
        rows.swap(k, best.0);
        cols.swap(k, best.1);
        let (pr, pc) = (rows[k], cols[k]);
        let pivot = w[(pr, pc)];
        for &r in &rows[k + 1..] {
            let f = w[(r, pc)] / pivot;
            if f == 0.0 {
                continue;
            }
            for &c in &cols[k..] {
                w[(r, c)] -= f * w[(pr, c)];
            }
        }
    }
    n
}

/// Companion matrix of the monic polynomial
/// `x^d + c[d-1] x^{d-1} + … + c[0]`, coefficients given lowest first.
pub fn companion(lower_coeffs: &[f64]) -> Matrix {
    let d = lower_coeffs.len();
    let mut m = Matrix::zeros(d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for (i, c) in lower_coeffs.iter().enumerate() {
        m[(i, d.saturating_sub(1))] = -c;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    fn nalgebra_eigs(m: &Matrix) -> Vec<Complex64> {
        let n = m.dim();
        let na = nalgebra::DMatrix::from_fn(n, n, |i, j| m[(i, j)]);
        na.complex_eigenvalues().iter().map(|c| Complex64::new(c.re, c.im)).collect()
    }

    fn matches(ours: &[Complex64], theirs: &[Complex64], tol: f64) -> bool {
        let mut used = vec![false; theirs.len()];
        ours.iter().all(|x| {
            let hit = theirs
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .min_by(|a, b| (a.1 - x).norm().partial_cmp(&(b.1 - x).norm()).unwrap());
            match hit {
                Some((i, y)) if (y - x).norm() <= tol => {
                    used[i] = true;
                    true
                }
                _ => false,
            }
        })
    }

    #[test]
    fn rotation_and_triangular() {
        let rot = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let e = sorted(eigenvalues(&rot).unwrap());
        assert!((e[0] - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((e[1] - Complex64::new(0.0, 1.0)).norm() < 1e-14);

        let tri = Matrix::from_rows(&[vec![1.0, 5.0, 7.0], vec![0.0, -2.0, 3.0], vec![0.0, 0.0, 4.0]]).unwrap();
        let e = sorted(eigenvalues(&tri).unwrap());
        for (got, want) in e.iter().zip([-2.0, 1.0, 4.0]) {
            assert!((got.re - want).abs() < 1e-13 && got.im.abs() < 1e-13);
        }
        assert!(eigenvalues(&Matrix::zeros(0)).unwrap().is_empty());
        assert_eq!(eigenvalues(&Matrix::zeros(1)).unwrap(), vec![Complex64::new(0.0, 0.0)]);
    }

    #[test]
    fn companion_roots() {
        // (x-1)(x-2)(x-3)(x^2+1)
        let coeffs = [-6.0, 11.0, -12.0, 12.0, -6.0];
        let e = eigenvalues(&companion(&coeffs)).unwrap();
        let want = [1.0, 2.0, 3.0].map(|r| Complex64::new(r, 0.0)).into_iter().chain([Complex64::i(), -Complex64::i()]);
        assert!(matches(&e, &want.collect::<Vec<_>>(), 1e-10), "{e:?}");
    }

    #[test]
    fn nilpotent_shift_matrix() {
        let mut m = Matrix::zeros(6);
        for i in 0..5 {
            m[(i, i + 1)] = 1.0;
        }
        assert!(eigenvalues(&m).unwrap().iter().all(|z| z.norm() == 0.0));
        assert_eq!(rank(&m, 1e-12), 5);
        let m2 = m.matmul(&m).unwrap();
        assert_eq!(rank(&m2, 1e-12), 4);
    }

    #[test]
    fn rank_examples() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0], vec![1.0, 0.0, 1.0]]).unwrap();
        assert_eq!(rank(&m, 1e-12), 2);
        assert_eq!(rank(&Matrix::identity(4), 0.5), 4);
        assert_eq!(rank(&Matrix::zeros(3), 0.0), 0);
        let tiny = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1e-12]]).unwrap();
        assert_eq!(rank(&tiny, 1e-9), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn agrees_with_nalgebra(n in 1usize..12, seed in proptest::collection::vec(-5.0f64..5.0, 144)) {
            let mut m = Matrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = seed[i * 12 + j];
                }
            }
            let ours = eigenvalues(&m).unwrap();
            let theirs = nalgebra_eigs(&m);
            prop_assert_eq!(ours.len(), n);
            prop_assert!(matches(&ours, &theirs, 1e-8 * (1.0 + m.frobenius_norm())), "{:?} vs {:?}", ours, theirs);
            // trace and determinant consistency
            let trace: f64 = (0..n).map(|i| m[(i, i)]).sum();
            let sum: Complex64 = ours.iter().sum();
            prop_assert!((sum.re - trace).abs() <= 1e-9 * (1.0 + m.frobenius_norm()));
            prop_assert!(sum.im.abs() <= 1e-9 * (1.0 + m.frobenius_norm()));
        }

        #[test]
        fn rank_of_low_rank_products(n in 2usize..9, k in 1usize..4, seed in proptest::collection::vec(-3.0f64..3.0, 64)) {
            let k = k.min(n);
            // A = U V^T with U, V of width k
            let mut m = Matrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = (0..k).map(|r| seed[i * 4 + r] * seed[32 + j * 4 + r]).sum();
                }
            }
            let r = rank(&m, 1e-9 * m.frobenius_norm().max(1.0));
            let na = nalgebra::DMatrix::from_fn(n, n, |i, j| m[(i, j)]).rank(1e-9 * m.frobenius_norm().max(1.0));
            prop_assert_eq!(r, na);
            prop_assert!(r <= k);
        }
    }
}
