//! Brute-force kernel of `σ^R`: integrated forms on every basis function,
//! reduced to row echelon form by Gaussian elimination.

use crossbench_core::crossed::CrossedProduct;
use crossbench_core::linalg::{least_squares, max_abs, vectorize};
use crossbench_core::{AFunction, Mat, C64};

/// Columns spanning `{x : M x = 0}`, from the reduced row echelon form of
/// `m` with pivots below `tol · max|m|` treated as zero.
pub fn rref_nullspace(m: &Mat, tol: f64) -> Mat {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let cutoff = tol * max_abs(m).max(f64::MIN_POSITIVE);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (p, best) = (r..rows)
            .map(|i| (i, a[(i, c)].norm()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= cutoff {
            continue;
        }
        a.swap_rows(r, p);
        let lead = a[(r, c)];
        for j in 0..cols {
            a[(r, j)] /= lead;
        }
        for i in 0..rows {
            if i != r {
                let factor = a[(i, c)];
                if factor != C64::new(0.0, 0.0) {
                    for j in 0..cols {
                        let v = a[(r, j)];
                        a[(i, j)] -= factor * v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Mat::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = C64::new(1.0, 0.0);
        for (row, &p) in pivots.iter().enumerate() {
            basis[(p, k)] = -a[(row, f)];
        }
    }
    basis
}

/// Integrated forms of every pair in the class on every basis function,
/// vectorized and stacked as columns.
pub fn brute_force_matrix(cp: &CrossedProduct) -> Mat {
    let sys = cp.system();
    let (n, d) = (sys.group().order(), sys.algebra().dim());
    let columns: Vec<Vec<C64>> = (0..n * d)
        .map(|i| {
            let f = AFunction::basis(n, d, i);
            cp.class()
                .pairs()
                .iter()
                .flat_map(|p| vectorize(&p.integrated_form(&f).expect("class pairs are (m,m)")))
                .collect()
        })
        .collect();
    let rows = columns.first().map_or(0, Vec::len);
    Mat::from_fn(rows, n * d, |i, j| columns[j][i])
}

/// Largest relative residual of projecting the columns of `a` onto the
/// span of `b`.
pub fn containment_defect(a: &Mat, b: &Mat) -> f64 {
    if a.ncols() == 0 {
        return 0.0;
    }
    if b.ncols() == 0 {
        return if max_abs(a) == 0.0 { 0.0 } else { 1.0 };
    }
    (0..a.ncols())
        .map(|j| {
            let col: Vec<C64> = a.column(j).iter().copied().collect();
            let scale = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let (_, residual) = least_squares(b, &col);
            residual / scale.max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

/// Kernel agreement between the SVD-based crossed product and the
/// brute-force oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelAgreement {
    pub svd_dim: usize,
    pub oracle_dim: usize,
    /// Worst residual of either kernel inside the other.
    pub containment: f64,
}

impl KernelAgreement {
    pub fn holds(&self, tol: f64) -> bool {
        self.svd_dim == self.oracle_dim && self.containment <= tol
    }
}

pub fn compare_kernels(cp: &CrossedProduct, tol: f64) -> KernelAgreement {
    let oracle = rref_nullspace(&brute_force_matrix(cp), tol);
    let svd = cp.kernel_matrix();
    KernelAgreement {
        svd_dim: svd.ncols(),
        oracle_dim: oracle.ncols(),
        containment: containment_defect(svd, &oracle).max(containment_defect(&oracle, svd)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crossbench_core::crossed::RepClass;
    use crossbench_core::fixtures;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn rref_nullspace_of_a_rank_one_matrix() {
        let m = Mat::from_row_slice(
            2,
            3,
            &[re(1.0), re(2.0), re(3.0), re(2.0), re(4.0), re(6.0)],
        );
        let n = rref_nullspace(&m, 1e-12);
        assert_eq!(n.ncols(), 2);
        assert!(max_abs(&(&m * &n)) < 1e-14);
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let m = Mat::identity(3, 3);
        assert_eq!(rref_nullspace(&m, 1e-12).ncols(), 0);
    }

    #[test]
    fn oracle_agrees_on_the_scalar_fixture() {
        let fx = fixtures::f1();
        let class = RepClass::new(&fx.system, fx.pairs[..1].to_vec()).unwrap();
        let cp = CrossedProduct::build(&fx.system, class).unwrap();
        let agreement = compare_kernels(&cp, 1e-10);
        assert_eq!(agreement.svd_dim, 1);
        assert!(agreement.holds(1e-10), "{agreement:?}");
    }
}
