//! Dynamical systems `(A, G, α)` and their opposite companions.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebras::{NormTag, NormedAlgebra};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{
    apply, identity, inverse, matrix_of, max_abs, max_abs_diff, random_vec, unvec, vectorize, Mat,
    C64,
};
use crate::norms::{op_norm, Bounds};

/// A group acting on an algebra by automorphisms, stored as one matrix per
/// element on coefficient vectors.
#[derive(Clone, Debug)]
pub struct DynamicalSystem {
    algebra: NormedAlgebra,
    group: FiniteGroup,
    alpha: Vec<Mat>,
    c_alpha: Bounds,
    isometric: bool,
}

impl DynamicalSystem {
    /// Checks the homomorphism law on all pairs, multiplicativity on all
    /// basis pairs and invertibility, then computes `C_α = max_g ‖α_g‖`.
    pub fn new(algebra: NormedAlgebra, group: FiniteGroup, alpha: Vec<Mat>) -> Result<Self> {
        if alpha.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: alpha.len(),
            });
        }
        let d = algebra.dim();
        if let Some(m) = alpha.iter().find(|m| m.shape() != (d, d)) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: m.nrows(),
            });
        }
        let mut sys = DynamicalSystem {
            algebra,
            group,
            alpha,
            c_alpha: Bounds::exact(1.0),
            isometric: true,
        };
        sys.check_laws()?;
        let norm = sys.algebra.space_norm();
        sys.c_alpha = sys
            .alpha
            .iter()
            .map(|m| op_norm(m, &norm, &norm))
            .fold(Bounds::exact(0.0), Bounds::max);
        sys.isometric = sys.detect_isometric();
        Ok(sys)
    }

    /// `α_g = id` for every g.
    pub fn trivial(algebra: NormedAlgebra, group: FiniteGroup) -> Self {
        let d = algebra.dim();
        let alpha = alloc::vec![identity(d); group.order()];
        DynamicalSystem {
            algebra,
            group,
            alpha,
            c_alpha: Bounds::exact(1.0),
            isometric: true,
        }
    }

    /// `α_g(e_i) = e_{perm[g][i]}`.
    pub fn coordinate_permutation(
        algebra: NormedAlgebra,
        group: FiniteGroup,
        perms: &[Vec<usize>],
    ) -> Result<Self> {
        let d = algebra.dim();
        let mut alpha = Vec::with_capacity(perms.len());
        for p in perms {
            if p.len() != d || p.iter().any(|&i| i >= d) {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.len(),
                });
            }
            let mut m = Mat::zeros(d, d);
            for (i, &j) in p.iter().enumerate() {
                m[(j, i)] = crate::linalg::ONE;
            }
            alpha.push(m);
        }
        DynamicalSystem::new(algebra, group, alpha)
    }

    /// `α_g(a) = ρ(g) a ρ(g)⁻¹` on a matrix algebra.
    pub fn inner_conjugation(
        algebra: NormedAlgebra,
        group: FiniteGroup,
        rep: &[Mat],
    ) -> Result<Self> {
        let NormTag::Operator(n) = algebra.tag() else {
            return Err(Error::NotSquareDimension(algebra.dim()));
        };
        let mut alpha = Vec::with_capacity(rep.len());
        for (g, x) in rep.iter().enumerate() {
            if x.shape() != (n, n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: x.nrows(),
                });
            }
            let xi = inverse(x).ok_or(Error::NotInvertible(g))?;
            alpha.push(matrix_of(n * n, n * n, |a| {
                vectorize(&(x * unvec(n, a) * &xi))
            }));
        }
        DynamicalSystem::new(algebra, group, alpha)
    }

    fn check_laws(&self) -> Result<()> {
        let g = &self.group;
        let d = self.algebra.dim();
        let scale = 1.0 + self.alpha.iter().map(max_abs).fold(0.0, f64::max);
        let tol = 1e-12 * scale * scale;
        if max_abs_diff(&self.alpha[g.identity()], &identity(d)) > tol {
            return Err(Error::NotHomomorphism(g.identity(), g.identity()));
        }
        for s in g.elements() {
            for t in g.elements() {
                let prod = &self.alpha[s] * &self.alpha[t];
                if max_abs_diff(&prod, &self.alpha[g.mul(s, t)]) > tol {
                    return Err(Error::NotHomomorphism(s, t));
                }
            }
        }
        for s in g.elements() {
            if inverse(&self.alpha[s]).is_none() {
                return Err(Error::NotInvertible(s));
            }
            for i in 0..d {
                let ai = self.act(s, &self.algebra.basis(i));
                for j in 0..d {
                    let aj = self.act(s, &self.algebra.basis(j));
                    let lhs = self.act(
                        s,
                        &self
                            .algebra
                            .mul(&self.algebra.basis(i), &self.algebra.basis(j)),
                    );
                    let rhs = self.algebra.mul(&ai, &aj);
                    let err = lhs
                        .iter()
                        .zip(&rhs)
                        .fold(0.0, |acc: f64, (x, y)| acc.max((x - y).norm()));
                    if err > tol {
                        return Err(Error::ActionNotMultiplicative(s));
                    }
                }
            }
        }
        Ok(())
    }

    fn detect_isometric(&self) -> bool {
        match self.algebra.tag() {
            NormTag::Sup | NormTag::One => self.alpha.iter().all(is_phase_permutation),
            NormTag::Operator(_) => {
                let mut rng = ChaCha8Rng::seed_from_u64(0x150);
                let d = self.algebra.dim();
                let samples: Vec<Vec<C64>> = (0..d)
                    .map(|i| self.algebra.basis(i))
                    .chain((0..32).map(|_| random_vec(d, &mut rng)))
                    .collect();
                self.group.elements().all(|g| {
                    samples.iter().all(|a| {
                        let na = self.algebra.norm(a);
                        (self.algebra.norm(&self.act(g, a)) - na).abs() <= 1e-10 * (1.0 + na)
                    })
                })
            }
        }
    }

    /// Re-runs the homomorphism, multiplicativity and invertibility checks.
    pub fn validate(&self) -> Result<()> {
        self.check_laws()
    }

    pub fn algebra(&self) -> &NormedAlgebra {
        &self.algebra
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn alpha(&self, g: usize) -> &Mat {
        &self.alpha[g]
    }

    pub fn alphas(&self) -> &[Mat] {
        &self.alpha
    }

    /// `α_g(a)`.
    pub fn act(&self, g: usize, a: &[C64]) -> Vec<C64> {
        apply(&self.alpha[g], a)
    }

    /// Best estimate of `C_α`; exact for sup and one norms.
    pub fn c_alpha(&self) -> f64 {
        self.c_alpha.value()
    }

    pub fn c_alpha_bounds(&self) -> Bounds {
        self.c_alpha
    }

    pub fn is_isometric(&self) -> bool {
        self.isometric
    }

    fn derived(&self, algebra: NormedAlgebra, group: FiniteGroup, alpha: Vec<Mat>) -> Self {
        DynamicalSystem {
            algebra,
            group,
            alpha,
            c_alpha: self.c_alpha,
            isometric: self.isometric,
        }
    }

    fn alpha_opposite(&self) -> Vec<Mat> {
        self.group
            .elements()
            .map(|r| self.alpha[self.group.inv(r)].clone())
            .collect()
    }

    /// `(A^o, G^o, α^o)` with `α^o_r = α_{r⁻¹}`.
    pub fn opposite(&self) -> Self {
        self.derived(
            self.algebra.opposite(),
            self.group.opposite(),
            self.alpha_opposite(),
        )
    }

    /// `(A, G^o, α^o)`.
    pub fn with_opposite_group(&self) -> Self {
        self.derived(
            self.algebra.clone(),
            self.group.opposite(),
            self.alpha_opposite(),
        )
    }

    /// `(A^o, G, α)`.
    pub fn with_opposite_algebra(&self) -> Self {
        self.derived(
            self.algebra.opposite(),
            self.group.clone(),
            self.alpha.clone(),
        )
    }

    /// `(A, G, triv)`.
    pub fn trivialized(&self) -> Self {
        DynamicalSystem::trivial(self.algebra.clone(), self.group.clone())
    }

    /// Entrywise comparison of groups, algebras and actions.
    pub fn same_as(&self, other: &DynamicalSystem) -> bool {
        self.group == other.group
            && self.algebra == other.algebra
            && self
                .alpha
                .iter()
                .zip(&other.alpha)
                .all(|(a, b)| max_abs_diff(a, b) <= 1e-12)
    }
}

fn is_phase_permutation(m: &Mat) -> bool {
    let d = m.nrows();
    let mut seen = alloc::vec![false; d];
    for j in 0..d {
        let nonzero: Vec<usize> = (0..d).filter(|&i| m[(i, j)].norm() > 1e-14).collect();
        let [i] = nonzero[..] else {
            return false;
        };
        if seen[i] || (m[(i, j)].norm() - 1.0).abs() > 1e-12 {
            return false;
        }
        seen[i] = true;
    }
    true
}
