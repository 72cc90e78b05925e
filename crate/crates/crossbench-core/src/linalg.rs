//! Dense complex linear algebra helpers on top of `nalgebra`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

pub type C64 = Complex64;
pub type Mat = DMatrix<C64>;
pub type Col = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Default relative tolerance for matrix identities.
pub const TOL: f64 = 1e-9;

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn cis(theta: f64) -> C64 {
    C64::new(libm::cos(theta), libm::sin(theta))
}

pub fn identity(n: usize) -> Mat {
    Mat::identity(n, n)
}

pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn slice_max_abs(v: &[C64]) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Largest entrywise difference; infinite when the shapes differ.
pub fn max_abs_diff(a: &Mat, b: &Mat) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn slice_max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Entrywise difference scaled by the larger of 1 and both magnitudes.
pub fn rel_diff(a: &Mat, b: &Mat) -> f64 {
    max_abs_diff(a, b) / 1f64.max(max_abs(a)).max(max_abs(b))
}

pub fn close(a: &Mat, b: &Mat, tol: f64) -> bool {
    rel_diff(a, b) <= tol
}

/// Matrix of a linear map given by its action on standard basis vectors.
pub fn matrix_of<F>(n_in: usize, n_out: usize, mut map: F) -> Mat
where
    F: FnMut(&[C64]) -> Vec<C64>,
{
    let mut m = Mat::zeros(n_out, n_in);
    let mut e = alloc::vec![ZERO; n_in];
    for j in 0..n_in {
        e[j] = ONE;
        let col = map(&e);
        debug_assert_eq!(col.len(), n_out);
        for (i, z) in col.into_iter().enumerate() {
            m[(i, j)] = z;
        }
        e[j] = ZERO;
    }
    m
}

pub fn apply(m: &Mat, x: &[C64]) -> Vec<C64> {
    let mut out = alloc::vec![ZERO; m.nrows()];
    for (j, xj) in x.iter().enumerate() {
        if *xj == ZERO {
            continue;
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o += m[(i, j)] * xj;
        }
    }
    out
}

/// Row-major reshape of a length n² vector into an n×n matrix.
pub fn unvec(n: usize, v: &[C64]) -> Mat {
    Mat::from_fn(n, n, |i, j| v[i * n + j])
}

/// Row-major flattening, inverse of [`unvec`].
pub fn vectorize(m: &Mat) -> Vec<C64> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push(m[(i, j)]);
        }
    }
    out
}

pub fn block_diag(blocks: &[Mat]) -> Mat {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = Mat::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), b.shape()).copy_from(b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kronecker(b)
}

pub fn commutator_defect(a: &Mat, b: &Mat) -> f64 {
    max_abs_diff(&(a * b), &(b * a))
}

pub fn singular_values(m: &Mat) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect()
}

/// Largest singular value, with a closed form for 2×2 matrices.
pub fn spectral_norm(m: &Mat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    if m.shape() == (2, 2) {
        let f = m.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).norm();
        let disc = (f * f - 4.0 * det * det).max(0.0);
        return libm::sqrt((f + libm::sqrt(disc)) / 2.0);
    }
    singular_values(m).into_iter().fold(0.0, f64::max)
}

/// Orthonormal bases of the row space and of the null space of `m`.
#[derive(Clone, Debug)]
pub struct Split {
    /// Columns span the orthogonal complement of the kernel.
    pub range: Mat,
    /// Columns span the kernel.
    pub kernel: Mat,
    pub singular_values: Vec<f64>,
}

/// Splits the domain of `m` by its right singular vectors; singular values
/// at most `rel_tol` times the largest count as zero.
pub fn split_domain(m: &Mat, rel_tol: f64) -> Split {
    let n = m.ncols();
    let padded = if m.nrows() < n {
        let mut p = Mat::zeros(n, n);
        p.view_mut((0, 0), m.shape()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let top = sv.iter().copied().fold(0.0, f64::max);
    let threshold = rel_tol * top;
    let mut range = Vec::new();
    let mut kernel = Vec::new();
    for (i, s) in sv.iter().enumerate() {
        let v = Col::from_fn(n, |k, _| v_t[(i, k)].conj());
        if top > 0.0 && *s > threshold {
            range.push(v);
        } else {
            kernel.push(v);
        }
    }
    Split {
        range: columns(n, &range),
        kernel: columns(n, &kernel),
        singular_values: sv,
    }
}

fn columns(n: usize, cols: &[Col]) -> Mat {
    let mut m = Mat::zeros(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

pub fn rank(m: &Mat, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > rel_tol * top).count()
}

/// Minimum-norm least-squares solution of `a x = b` and its residual.
pub fn least_squares(a: &Mat, b: &[C64]) -> (Vec<C64>, f64) {
    let rhs = Col::from_column_slice(b);
    let svd = a.clone().svd(true, true);
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let x = svd
        .solve(&rhs, 1e-12 * top.max(f64::MIN_POSITIVE))
        .expect("both singular bases were computed");
    let residual = (a * &x - rhs)
        .iter()
        .fold(0.0, |acc: f64, z| acc.max(z.norm()));
    (x.iter().copied().collect(), residual)
}

/// Inverse, refused when the matrix is numerically singular.
pub fn inverse(m: &Mat) -> Option<Mat> {
    if !m.is_square() {
        return None;
    }
    if m.is_empty() {
        return Some(m.clone());
    }
    let sv = singular_values(m);
    let top = sv.iter().copied().fold(0.0, f64::max);
    let low = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if top == 0.0 || low <= 1e-12 * top {
        return None;
    }
    m.clone().try_inverse()
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}

/// Uniform sample from the square `[-1, 1] + i[-1, 1]`.
pub fn random_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_vec<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    (0..n).map(|_| random_c64(rng)).collect()
}

pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Mat {
    Mat::from_fn(rows, cols, |_, _| random_c64(rng))
}

pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Mat {
    let g = Mat::from_fn(n, n, |_, _| C64::new(gaussian(rng), gaussian(rng)));
    g.qr().q()
}

/// A unitary close to the identity, `Q` from the QR factorization of `I + i ε H`.
pub fn unitary_near_identity<R: Rng + ?Sized>(n: usize, eps: f64, rng: &mut R) -> Mat {
    let g = Mat::from_fn(n, n, |_, _| C64::new(gaussian(rng), gaussian(rng)));
    let h = (&g + g.adjoint()) * re(0.5);
    let m = identity(n) + h * C64::new(0.0, eps);
    let qr = m.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// A random well-conditioned invertible matrix.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Mat {
    loop {
        let m = identity(n) + random_matrix(n, n, rng) * re(0.4);
        let sv = singular_values(&m);
        let top = sv.iter().copied().fold(0.0, f64::max);
        let low = sv.iter().copied().fold(f64::INFINITY, f64::min);
        if low > 0.2 * top {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spectral_closed_form_matches_svd() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m = random_matrix(2, 2, &mut rng);
            let svd = singular_values(&m).into_iter().fold(0.0, f64::max);
            assert!((spectral_norm(&m) - svd).abs() < 1e-12);
        }
    }

    #[test]
    fn split_finds_wide_kernel() {
        // [1 1] has kernel spanned by (1, -1)/sqrt 2
        let m = Mat::from_row_slice(1, 2, &[ONE, ONE]);
        let s = split_domain(&m, 1e-10);
        assert_eq!(s.kernel.ncols(), 1);
        assert_eq!(s.range.ncols(), 1);
        let k = s.kernel.column(0);
        assert!((k[0] + k[1]).norm() < 1e-12);
    }

    #[test]
    fn least_squares_prefers_minimum_norm() {
        let a = Mat::from_row_slice(1, 2, &[ONE, ZERO]);
        let (x, res) = least_squares(&a, &[ONE]);
        assert!(res < 1e-12);
        assert!((x[0] - ONE).norm() < 1e-12 && x[1].norm() < 1e-12);
    }

    #[test]
    fn near_identity_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = unitary_near_identity(3, 0.3, &mut rng);
        assert!(close(&(u.adjoint() * &u), &identity(3), 1e-12));
        assert!(max_abs_diff(&u, &identity(3)) < 1.5);
    }

    #[test]
    fn singular_matrices_have_no_inverse() {
        let m = Mat::from_row_slice(2, 2, &[ONE, ONE, ONE, ONE]);
        assert!(inverse(&m).is_none());
        assert!(inverse(&identity(2)).is_some());
    }
}
