//! Hermitian eigendecomposition.
//!
//! The matrix is reduced to Hermitian tridiagonal form with Householder
//! reflections, the complex off-diagonal is rotated onto the positive reals by
//! a diagonal phase transform, and the resulting real symmetric tridiagonal
//! matrix is diagonalised with the implicit-shift QL algorithm (the EISPACK
//! `tql2` iteration). Rotations are accumulated into the complex basis, so the
//! eigenvectors come out directly in the original coordinates.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// QL sweeps allowed per eigenvalue before giving up.
pub const MAX_QL_ITERATIONS: usize = 60;

/// Relative Hermiticity tolerance accepted at construction.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Largest magnitude of `Re(c)·λ` an exponential is allowed to reach.
pub const EXP_LIMIT: f64 = 700.0;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A Hermitian matrix, stored symmetrised.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    /// Accepts `m` if `‖M − M†‖_max ≤ 1e−12·max(1, ‖M‖_max)` and stores
    /// `(M + M†)/2`.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if defect > HERMITIAN_TOL * m.max_abs().max(1.0) {
            return Err(Error::NotHermitian { deviation: defect });
        }
        Ok(Self::symmetrized(m))
    }

    pub(crate) fn symmetrized(mut m: ComplexMatrix) -> Self {
        let n = m.dim();
        for i in 0..n {
            m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
            for j in i + 1..n {
                let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                m[(i, j)] = avg;
                m[(j, i)] = avg.conj();
            }
        }
        Self { matrix: m }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::zeros(dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self {
            matrix: ComplexMatrix::from_real_diagonal(diag),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.matrix.check_dim(&other.matrix)?;
        Ok(Self {
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            matrix: self.matrix.scale_real(c),
        }
    }

    pub fn eigh(&self) -> Result<EigenSystem> {
        eigh(self)
    }
}

impl TryFrom<ComplexMatrix> for HermitianOperator {
    type Error = Error;

    fn try_from(m: ComplexMatrix) -> Result<Self> {
        Self::new(m)
    }
}

impl From<HermitianOperator> for ComplexMatrix {
    fn from(h: HermitianOperator) -> Self {
        h.matrix
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max)
    }

    /// `U f(λ) U†` for a complex-valued spectral function.
    pub fn apply_function(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let values: Vec<Complex64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.reconstruct_with(&values)
    }

    /// `U diag(values) U†`.
    pub fn reconstruct_with(&self, values: &[Complex64]) -> ComplexMatrix {
        let n = self.dim();
        assert_eq!(values.len(), n, "dimension mismatch");
        let u = &self.eigenvectors;
        let mut scaled = u.clone();
        for i in 0..n {
            for (j, v) in values.iter().enumerate() {
                scaled[(i, j)] *= v;
            }
        }
        scaled.matmul_adjoint(u)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let values: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&l| Complex64::new(l, 0.0))
            .collect();
        self.reconstruct_with(&values)
    }

    /// `exp(c·A)` from the stored decomposition of `A`.
    pub fn exp(&self, c: Complex64) -> Result<ComplexMatrix> {
        check_exponent(c.re, self.spectral_radius())?;
        Ok(self.apply_function(|l| (c * l).exp()))
    }
}

pub(crate) fn check_exponent(re_c: f64, radius: f64) -> Result<()> {
    let exponent = re_c.abs() * radius;
    if !exponent.is_finite() || exponent > EXP_LIMIT {
        return Err(Error::Overflow {
            exponent,
            limit: EXP_LIMIT,
        });
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian operator with ascending eigenvalues.
pub fn eigh(a: &HermitianOperator) -> Result<EigenSystem> {
    let n = a.dim();
    let mut work = a.matrix().clone();
    let mut q = ComplexMatrix::identity(n);
    let (diag, mut offdiag) = tridiagonalize(&mut work, Some(&mut q));

    // Rotate the complex sub-diagonal onto the positive reals: with
    // D = diag(phase), D† T D has off-diagonal |t_k|.
    let mut phase = Complex64::new(1.0, 0.0);
    let mut sub = vec![0.0; n];
    for k in 0..n {
        if k > 0 {
            for row in 0..n {
                q[(row, k)] *= phase;
            }
        }
        if k + 1 < n {
            let t = offdiag[k];
            let r = t.norm();
            sub[k] = r;
            if r > 0.0 {
                phase *= t / r;
            }
        }
    }
    offdiag.clear();

    // QL on the real tridiagonal matrix, with its eigenvectors held
    // transposed so that every rotation touches two contiguous rows.
    let mut d = diag;
    let mut zt = vec![0.0; n * n];
    for i in 0..n {
        zt[i * n + i] = 1.0;
    }
    tql2(&mut d, &mut sub, &mut zt)?;
    let order = ascending_order(&d);
    let d: Vec<f64> = order.iter().map(|&o| d[o]).collect();
    // Z[k, c] = zt[order[c], k].
    let mut z = vec![0.0; n * n];
    for (c, &o) in order.iter().enumerate() {
        for k in 0..n {
            z[k * n + c] = zt[o * n + k];
        }
    }
    let mut q = complex_times_real(&q, &z)?;
    reorthonormalize_degenerate(&d, &mut q);
    Ok(EigenSystem {
        eigenvalues: d,
        eigenvectors: q,
    })
}

/// Ascending eigenvalues of a Hermitian operator, without eigenvectors.
pub fn eigvalsh(a: &HermitianOperator) -> Result<Vec<f64>> {
    let mut work = a.matrix().clone();
    let (mut d, offdiag) = tridiagonalize(&mut work, None);
    let mut sub: Vec<f64> = offdiag.iter().map(|t| t.norm()).collect();
    sub.push(0.0);
    tql2(&mut d, &mut sub, &mut [])?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Householder reduction `A = Q T Q†` with `T` Hermitian tridiagonal.
/// Returns the real diagonal and the complex sub-diagonal `T[k+1, k]`;
/// `q` accumulates the reflections.
fn tridiagonalize(
    a: &mut ComplexMatrix,
    mut q: Option<&mut ComplexMatrix>,
) -> (Vec<f64>, Vec<Complex64>) {
    let n = a.dim();
    let mut sub = vec![ZERO; n.saturating_sub(1)];
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        if x[1..].iter().all(|z| *z == ZERO) {
            sub[k] = x[0];
            continue;
        }
        // The reflector is invariant under rescaling x; working with x/max|x_i|
        // keeps the squared norms clear of underflow and overflow.
        let x_scale = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut u: Vec<Complex64> = x.iter().map(|z| z / x_scale).collect();
        let norm = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let phase = if u[0].norm() > 0.0 {
            u[0] / u[0].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        // u = x + e^{iθ}‖x‖e₁ maps x to −e^{iθ}‖x‖e₁ under P = I − β u u†.
        u[0] += phase * norm;
        let u_norm_sqr: f64 = u.iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / u_norm_sqr;
        sub[k] = -phase * (norm * x_scale);

        let m = n - k - 1;
        let off = k + 1;
        // p = β A u on the trailing block.
        let mut p = vec![ZERO; m];
        for (i, pi) in p.iter_mut().enumerate() {
            let row = &a.row(off + i)[off..];
            *pi = row
                .iter()
                .zip(&u)
                .map(|(aij, uj)| aij * uj)
                .sum::<Complex64>()
                * beta;
        }
        let up: f64 = u.iter().zip(&p).map(|(ui, pi)| (ui.conj() * pi).re).sum();
        let kappa = 0.5 * beta * up;
        let w: Vec<Complex64> = p.iter().zip(&u).map(|(pi, ui)| pi - ui * kappa).collect();
        let u_conj: Vec<Complex64> = u.iter().map(|z| z.conj()).collect();
        let w_conj: Vec<Complex64> = w.iter().map(|z| z.conj()).collect();
        for i in 0..m {
            let (ui, wi) = (u[i], w[i]);
            let row = &mut a.row_mut(off + i)[off..];
            for ((aij, wj), uj) in row.iter_mut().zip(&w_conj).zip(&u_conj) {
                *aij -= ui * wj + wi * uj;
            }
        }
        for i in off..n {
            a[(i, k)] = ZERO;
            a[(k, i)] = ZERO;
        }
        a[(off, k)] = sub[k];
        a[(k, off)] = sub[k].conj();

        // Q ← Q P.
        let Some(q) = q.as_deref_mut() else { continue };
        for row in 0..n {
            let q_row = &mut q.row_mut(row)[off..];
            let s: Complex64 = q_row
                .iter()
                .zip(&u)
                .map(|(qj, uj)| qj * uj)
                .sum::<Complex64>()
                * beta;
            for (qj, uj) in q_row.iter_mut().zip(&u_conj) {
                *qj -= s * uj;
            }
        }
    }
    if n >= 2 {
        sub[n - 2] = a[(n - 1, n - 2)];
    }
    let diag = (0..n).map(|i| a[(i, i)].re).collect();
    (diag, sub)
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix with diagonal `d`
/// and off-diagonal `e` (`e[i]` couples `i` and `i+1`, `e[n-1] = 0`).
/// Rotations are applied to the rows of the row-major `n × n` matrix `zt`,
/// or skipped when `zt` is empty.
fn tql2(d: &mut [f64], e: &mut [f64], zt: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITERATIONS {
                    return Err(Error::ConvergenceFailure {
                        index: l,
                        iterations: MAX_QL_ITERATIONS,
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if zt.is_empty() {
                        continue;
                    }
                    let (head, tail) = zt.split_at_mut((i + 1) * n);
                    let row_i = &mut head[i * n..];
                    let row_i1 = &mut tail[..n];
                    for (vi, vi1) in row_i.iter_mut().zip(row_i1.iter_mut()) {
                        let (a, b) = (*vi, *vi1);
                        *vi1 = a * s + b * c;
                        *vi = a * c - b * s;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

fn ascending_order(d: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    order
}

/// `Q Z` for complex `Q` and real row-major `Z`.
fn complex_times_real(q: &ComplexMatrix, z: &[f64]) -> Result<ComplexMatrix> {
    let n = q.dim();
    let mut out = vec![ZERO; n * n];
    for r in 0..n {
        let out_row = &mut out[r * n..(r + 1) * n];
        for (k, &qrk) in q.row(r).iter().enumerate() {
            if qrk == ZERO {
                continue;
            }
            for (o, &zkc) in out_row.iter_mut().zip(&z[k * n..(k + 1) * n]) {
                *o += qrk * zkc;
            }
        }
    }
    ComplexMatrix::from_vec(n, out)
}

/// Modified Gram–Schmidt within each block of numerically equal eigenvalues.
fn reorthonormalize_degenerate(d: &[f64], v: &mut ComplexMatrix) {
    let n = d.len();
    let scale = d.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let tol = 1e-10 * scale;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && d[end] - d[end - 1] <= tol {
            end += 1;
        }
        if end - start > 1 {
            for j in start..end {
                for i in start..j {
                    let overlap: Complex64 = (0..n).map(|r| v[(r, i)].conj() * v[(r, j)]).sum();
                    for r in 0..n {
                        let vi = v[(r, i)];
                        v[(r, j)] -= overlap * vi;
                    }
                }
                let norm = (0..n).map(|r| v[(r, j)].norm_sqr()).sum::<f64>().sqrt();
                for r in 0..n {
                    v[(r, j)] /= norm;
                }
            }
        }
        start = end;
    }
}

/// `exp(c·A)` for Hermitian `A` through its eigendecomposition.
pub fn expm_hermitian(a: &HermitianOperator, c: Complex64) -> Result<ComplexMatrix> {
    if !c.re.is_finite() || !c.im.is_finite() {
        return Err(Error::InvalidArgument(
            "exponent scale must be finite".into(),
        ));
    }
    eigh(a)?.exp(c)
}
