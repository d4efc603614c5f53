//! Dense complex linear algebra for small matrices.
//!
//! Everything here is sized for the 9×9 problems of the crate: row-major
//! storage, no blocking, no external numeric backend.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::tolerance::{self, Tolerances};
use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct MatrixC {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl MatrixC {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// `|v⟩⟨v|`
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, k: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    /// `max |M[i][j] − conj(M[j][i])|`; infinite for non-square matrices.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `(M + M†)/2`
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨v|M|v⟩`, real part only (exact for Hermitian `M`).
    pub fn expectation(&self, v: &[C64]) -> f64 {
        inner(v, &self.mul_vec(v)).re
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for MatrixC {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for MatrixC {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &MatrixC {
    type Output = MatrixC;

    fn add(self, rhs: &MatrixC) -> MatrixC {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        MatrixC {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &MatrixC {
    type Output = MatrixC;

    fn sub(self, rhs: &MatrixC) -> MatrixC {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        MatrixC {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &MatrixC {
    type Output = MatrixC;

    fn mul(self, rhs: &MatrixC) -> MatrixC {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = MatrixC::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for MatrixC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixC {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for z in self.row(i) {
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `⟨u|v⟩`, antilinear in the first argument.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Returns `v / ‖v‖`, or `None` for a zero vector.
pub fn normalized(v: &[C64]) -> Option<Vec<C64>> {
    let n = norm(v);
    (n > 0.0).then(|| v.iter().map(|z| z / n).collect())
}

/// Standard Kronecker product: `(A⊗B)[i·rB + k][j·cB + l] = A[i][j]·B[k][l]`.
pub fn kron(a: &MatrixC, b: &MatrixC) -> MatrixC {
    let (rb, cb) = (b.rows, b.cols);
    MatrixC::from_fn(a.rows * rb, a.cols * cb, |r, c| {
        a[(r / rb, c / cb)] * b[(r % rb, c % cb)]
    })
}

/// Components of `|e⟩ ⊗ |f⟩` under the crate's index convention
/// (`i = k + dA·λ`, first factor fastest).
pub fn product_vector(e: &[C64], f: &[C64]) -> Vec<C64> {
    let da = e.len();
    let mut out = vec![ZERO; da * f.len()];
    for (l, fl) in f.iter().enumerate() {
        for (k, ek) in e.iter().enumerate() {
            out[k + da * l] = ek * fl;
        }
    }
    out
}

/// The operator `U_A ⊗ U_B` under the crate's index convention. With the
/// first subsystem varying fastest this is the standard `kron(U_B, U_A)`.
pub fn local_operator(ua: &MatrixC, ub: &MatrixC) -> MatrixC {
    kron(ub, ua)
}

/// Partial transpose on the first subsystem:
/// `σ[(m,μ),(n,ν)] = M[(n,μ),(m,ν)]` with linear index `m + dA·μ`.
pub fn partial_transpose_first(m: &MatrixC, da: usize, db: usize) -> Result<MatrixC> {
    let d = da * db;
    if m.rows != d || m.cols != d {
        return Err(Error::Dimension(format!(
            "partial transpose of a {}x{} matrix with dA={da}, dB={db}",
            m.rows, m.cols
        )));
    }
    Ok(MatrixC::from_fn(d, d, |r, c| {
        let (a_row, b_row) = (r % da, r / da);
        let (a_col, b_col) = (c % da, c / da);
        m[(a_col + da * b_row, a_row + da * b_col)]
    }))
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigenResult {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Unit eigenvectors, `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<C64>>,
    pub sweeps: usize,
}

impl HermitianEigenResult {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }

    /// Eigenvector of the smallest eigenvalue.
    pub fn min_eigenvector(&self) -> &[C64] {
        self.eigenvectors.last().expect("non-empty decomposition")
    }

    /// `Σ λ_k |v_k⟩⟨v_k|`
    pub fn reconstruct(&self) -> MatrixC {
        let n = self.eigenvalues.len();
        let mut out = MatrixC::zeros(n, n);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += v[i] * v[j].conj() * *lambda;
                }
            }
        }
        out
    }

    /// Matrix whose columns are the eigenvectors.
    pub fn vector_matrix(&self) -> MatrixC {
        let n = self.eigenvalues.len();
        MatrixC::from_fn(n, n, |i, k| self.eigenvectors[k][i])
    }
}

pub fn hermitian_eigen(m: &MatrixC) -> Result<HermitianEigenResult> {
    hermitian_eigen_with(m, &Tolerances::default())
}

/// Cyclic Jacobi with complex Givens rotations.
///
/// The input is symmetrized as `(M + M†)/2` first. Iteration stops once the
/// off-diagonal Frobenius norm is at most `tol.jacobi_rel_off · ‖M‖_F`.
pub fn hermitian_eigen_with(m: &MatrixC, tol: &Tolerances) -> Result<HermitianEigenResult> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigen-decomposition of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    if !m.is_finite() {
        return Err(Error::Dimension("matrix has non-finite entries".into()));
    }
    let deviation = m.hermitian_deviation();
    if deviation > tol.hermitian * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }

    let n = m.rows;
    let mut a = m.hermitian_part();
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = MatrixC::identity(n);
    let target = tol.jacobi_rel_off * a.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == tol.jacobi_max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep their diagonal order
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[(i, k)]).collect())
        .collect();
    Ok(HermitianEigenResult {
        eigenvalues,
        eigenvectors,
        sweeps,
    })
}

fn off_diagonal_norm(a: &MatrixC) -> f64 {
    let mut s = 0.0;
    for i in 0..a.rows {
        for j in 0..a.cols {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with `A ← U† A U`, `V ← V U`, where
/// `U = D R D†`, `D = diag(1, e^{-iφ})` on the (p, q) plane and `R` the real
/// Jacobi rotation for the modulus `|a_pq|`.
fn rotate(a: &mut MatrixC, v: &mut MatrixC, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / r;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    if t == 0.0 {
        return;
    }
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let u_pp = C64::new(c, 0.0);
    let u_pq = phase * s;
    let u_qp = -phase.conj() * s;
    let u_qq = C64::new(c, 0.0);

    let n = a.rows;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(app - t * r, 0.0);
    a[(q, q)] = C64::new(aqq + t * r, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Orthogonal projector onto `span(vs)`.
///
/// Vectors shorter than [`tolerance::VECTOR_DROP`] are ignored; the rest are
/// orthonormalized by modified Gram–Schmidt with one re-orthogonalization
/// pass, dropping any that turn out dependent. An empty span gives the zero
/// matrix.
pub fn projector_from_vectors(vs: &[Vec<C64>]) -> Result<MatrixC> {
    Ok(range_projector_basis(vs)?.projector)
}

/// Orthonormal basis of a span together with its projector.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    pub basis: Vec<Vec<C64>>,
    pub projector: MatrixC,
}

pub fn range_projector_basis(vs: &[Vec<C64>]) -> Result<SpanBasis> {
    let dim = match vs.first() {
        Some(v) => v.len(),
        None => {
            return Ok(SpanBasis {
                basis: Vec::new(),
                projector: MatrixC::zeros(0, 0),
            })
        }
    };
    if vs.iter().any(|v| v.len() != dim) {
        return Err(Error::Dimension("vectors of unequal length".into()));
    }

    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vs {
        let original = norm(v);
        if original < tolerance::VECTOR_DROP {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &basis {
                let overlap = inner(u, &w);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= overlap * ui;
                }
            }
        }
        let residual = norm(&w);
        if residual <= tolerance::VECTOR_DROP * original.max(1.0) {
            continue;
        }
        basis.push(w.iter().map(|z| z / residual).collect());
    }

    let mut projector = MatrixC::zeros(dim, dim);
    for u in &basis {
        for i in 0..dim {
            for j in 0..dim {
                projector[(i, j)] += u[i] * u[j].conj();
            }
        }
    }
    Ok(SpanBasis { basis, projector })
}

/// Projector onto the span of eigenvectors whose eigenvalue exceeds `cutoff`.
pub fn range_projector_of(m: &MatrixC, cutoff: f64) -> Result<MatrixC> {
    let eig = hermitian_eigen(m)?;
    let kept: Vec<Vec<C64>> = eig
        .eigenvalues
        .iter()
        .zip(eig.eigenvectors)
        .filter(|(l, _)| **l > cutoff)
        .map(|(_, v)| v)
        .collect();
    if kept.is_empty() {
        return Ok(MatrixC::zeros(m.rows, m.cols));
    }
    projector_from_vectors(&kept)
}

/// Diagonal unitary `diag(e^{iθ_k})`.
pub fn phase_diag(phases: &[f64]) -> MatrixC {
    let mut m = MatrixC::zeros(phases.len(), phases.len());
    for (k, &th) in phases.iter().enumerate() {
        m[(k, k)] = C64::from_polar(1.0, th);
    }
    m
}
