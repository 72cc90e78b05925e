//! Covariant pairs, their integrated forms, the seminorm `σ^R` of a class of
//! pairs and the crossed product as a normed quotient of `A^G`.

mod product;

pub use product::{
    compare_classes, CanonicalMaps, ClassComparison, CrossedProduct, KERNEL_TOLERANCE,
};

use alloc::vec::Vec;
use core::fmt;

use crate::convolution::AFunction;
use crate::dynamics::DynamicalSystem;
use crate::error::{Error, Result};
use crate::linalg::{
    block_diag, identity, inverse, max_abs, max_abs_diff, rank, rel_diff, vectorize, Mat, C64, TOL,
    ZERO,
};
use crate::norms::{op_norm, operator_valued_norm, Bounds, SpaceNorm};

/// Whether `π` and `U` are multiplicative (`m`) or anti-multiplicative (`a`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    MM,
    MA,
    AM,
    AA,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::MM, Flavor::MA, Flavor::AM, Flavor::AA];

    pub fn from_parts(pi_multiplicative: bool, u_multiplicative: bool) -> Flavor {
        match (pi_multiplicative, u_multiplicative) {
            (true, true) => Flavor::MM,
            (true, false) => Flavor::MA,
            (false, true) => Flavor::AM,
            (false, false) => Flavor::AA,
        }
    }

    pub fn pi_multiplicative(self) -> bool {
        matches!(self, Flavor::MM | Flavor::MA)
    }

    pub fn u_multiplicative(self) -> bool {
        matches!(self, Flavor::MM | Flavor::AM)
    }

    /// The covariance law is `U_r π(a) U_r⁻¹ = π(α_r(a))` for these flavors
    /// and `π(α_{r⁻¹}(a))` for the others.
    pub fn covariant_with_alpha(self) -> bool {
        self.u_multiplicative()
    }

    pub fn label(self) -> &'static str {
        match self {
            Flavor::MM => "(m,m)",
            Flavor::MA => "(m,a)",
            Flavor::AM => "(a,m)",
            Flavor::AA => "(a,a)",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl core::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: alloc::string::String = s.chars().filter(|c| !"(), ".contains(*c)).collect();
        match t.to_ascii_lowercase().as_str() {
            "mm" => Ok(Flavor::MM),
            "ma" => Ok(Flavor::MA),
            "am" => Ok(Flavor::AM),
            "aa" => Ok(Flavor::AA),
            _ => Err(Error::HypothesisViolated(alloc::format!(
                "unknown flavor {s:?}"
            ))),
        }
    }
}

/// A pair `(π, U)` on `(ℂ^m, norm)`, stored as `π(e_i)` and `U_r`.
#[derive(Clone, Debug)]
pub struct CovariantPair {
    pi: Vec<Mat>,
    u: Vec<Mat>,
    flavor: Flavor,
    norm: SpaceNorm,
    non_degenerate: bool,
}

impl CovariantPair {
    /// Validates shapes, the flavor of `π` and of `U`, invertibility of `U`
    /// and the covariance law of the flavor against `sys`.
    pub fn new(
        sys: &DynamicalSystem,
        pi: Vec<Mat>,
        u: Vec<Mat>,
        flavor: Flavor,
        norm: SpaceNorm,
    ) -> Result<Self> {
        let d = sys.algebra().dim();
        let n = sys.group().order();
        let m = norm.dim();
        if pi.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: pi.len(),
            });
        }
        if u.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: u.len(),
            });
        }
        if let Some(bad) = pi.iter().chain(&u).find(|x| x.shape() != (m, m)) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.nrows().max(bad.ncols()),
            });
        }
        let pair = CovariantPair {
            non_degenerate: spans(&pi, m),
            pi,
            u,
            flavor,
            norm,
        };
        pair.check_pi(sys)?;
        pair.check_u(sys)?;
        pair.check_covariance(sys)?;
        Ok(pair)
    }

    fn check_pi(&self, sys: &DynamicalSystem) -> Result<()> {
        let st = sys.algebra().structure();
        let d = st.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.pi(st.basis_product(i, j));
                let rhs = if self.flavor.pi_multiplicative() {
                    &self.pi[i] * &self.pi[j]
                } else {
                    &self.pi[j] * &self.pi[i]
                };
                if rel_diff(&lhs, &rhs) > TOL {
                    return Err(Error::PiFlavor {
                        flavor: self.flavor,
                        i,
                        j,
                    });
                }
            }
        }
        Ok(())
    }

    fn check_u(&self, sys: &DynamicalSystem) -> Result<()> {
        let g = sys.group();
        let m = self.space_dim();
        if rel_diff(&self.u[g.identity()], &identity(m)) > TOL {
            return Err(Error::UFlavor {
                flavor: self.flavor,
                r: g.identity(),
                s: g.identity(),
            });
        }
        for r in g.elements() {
            for s in g.elements() {
                let prod = if self.flavor.u_multiplicative() {
                    &self.u[r] * &self.u[s]
                } else {
                    &self.u[s] * &self.u[r]
                };
                if rel_diff(&self.u[g.mul(r, s)], &prod) > TOL {
                    return Err(Error::UFlavor {
                        flavor: self.flavor,
                        r,
                        s,
                    });
                }
            }
        }
        if let Some(r) = g.elements().find(|&r| inverse(&self.u[r]).is_none()) {
            return Err(Error::UNotInvertible(r));
        }
        Ok(())
    }

    fn check_covariance(&self, sys: &DynamicalSystem) -> Result<()> {
        let g = sys.group();
        let alg = sys.algebra();
        for r in g.elements() {
            let beta = if self.flavor.covariant_with_alpha() {
                r
            } else {
                g.inv(r)
            };
            for a in 0..alg.dim() {
                let lhs = &self.u[r] * &self.pi[a];
                let rhs = self.pi(&sys.act(beta, &alg.basis(a))) * &self.u[r];
                if rel_diff(&lhs, &rhs) > TOL {
                    return Err(Error::CovarianceViolated {
                        flavor: self.flavor,
                        a,
                        r,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn space_dim(&self) -> usize {
        self.norm.dim()
    }

    pub fn norm(&self) -> &SpaceNorm {
        &self.norm
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_non_degenerate(&self) -> bool {
        self.non_degenerate
    }

    pub fn pi_basis(&self) -> &[Mat] {
        &self.pi
    }

    pub fn u_all(&self) -> &[Mat] {
        &self.u
    }

    pub fn u(&self, r: usize) -> &Mat {
        &self.u[r]
    }

    /// `π(a)` for a coefficient vector `a`.
    pub fn pi(&self, a: &[C64]) -> Mat {
        combine(&self.pi, a, self.space_dim())
    }

    /// `Σ_s π(f(s)) U_s` for (m,m) pairs, `Σ_s U_s π(f(s))` for (a,a) pairs.
    pub fn integrated_form(&self, f: &AFunction) -> Result<Mat> {
        if f.order() != self.u.len() || f.dim() != self.pi.len() {
            return Err(Error::DimensionMismatch {
                expected: self.u.len() * self.pi.len(),
                found: f.as_slice().len(),
            });
        }
        let m = self.space_dim();
        let mut out = Mat::zeros(m, m);
        for (s, u) in self.u.iter().enumerate() {
            let p = self.pi(f.at(s));
            match self.flavor {
                Flavor::MM => out += p * u,
                Flavor::AA => out += u * p,
                other => return Err(Error::FlavorMismatch(other)),
            }
        }
        Ok(out)
    }

    /// The integrated form as a matrix from flat coordinates of `A^G` to
    /// row-major vectorized m×m matrices.
    pub fn integrated_matrix(&self) -> Result<Mat> {
        let m = self.space_dim();
        let d = self.pi.len();
        let n = self.u.len();
        let mut out = Mat::zeros(m * m, n * d);
        for (s, u) in self.u.iter().enumerate() {
            for (i, p) in self.pi.iter().enumerate() {
                let t = match self.flavor {
                    Flavor::MM => p * u,
                    Flavor::AA => u * p,
                    other => return Err(Error::FlavorMismatch(other)),
                };
                for (k, z) in vectorize(&t).into_iter().enumerate() {
                    out[(k, s * d + i)] = z;
                }
            }
        }
        Ok(out)
    }

    /// `‖π(f)⋊U‖` in the operator norm of the pair's space.
    pub fn seminorm(&self, f: &AFunction) -> Result<f64> {
        let t = self.integrated_form(f)?;
        Ok(op_norm(&t, &self.norm, &self.norm).value())
    }

    /// `‖π⋊U(f)‖`, with the upper end tightened by the triangle bound
    /// `Σ_s ‖π(f(s))‖ ‖U_s‖`.
    pub fn integrated_norm(&self, f: &AFunction) -> Result<Bounds> {
        let t = self.integrated_form(f)?;
        let searched = op_norm(&t, &self.norm, &self.norm);
        let triangle: f64 = self
            .u
            .iter()
            .enumerate()
            .map(|(s, u)| {
                op_norm(&self.pi(f.at(s)), &self.norm, &self.norm).upper
                    * op_norm(u, &self.norm, &self.norm).upper
            })
            .sum();
        Ok(Bounds {
            lower: searched.lower,
            upper: searched.upper.min(triangle).max(searched.lower),
        })
    }

    /// `‖π‖` as a map from `(A, ‖·‖)` into bounded operators.
    pub fn pi_norm(&self, sys: &DynamicalSystem) -> Bounds {
        operator_valued_norm(&self.pi, &sys.algebra().space_norm(), &self.norm)
    }

    /// `‖U_r‖` for every r.
    pub fn u_norms(&self) -> Vec<Bounds> {
        self.u
            .iter()
            .map(|u| op_norm(u, &self.norm, &self.norm))
            .collect()
    }

    /// First `(a, r)` with `π(e_a) U_r ≠ U_r π(e_a)`.
    pub fn first_noncommuting(&self) -> Option<(usize, usize)> {
        for (r, u) in self.u.iter().enumerate() {
            for (a, p) in self.pi.iter().enumerate() {
                if rel_diff(&(u * p), &(p * u)) > TOL {
                    return Some((a, r));
                }
            }
        }
        None
    }

    /// `(Sπ(·)S⁻¹, SU S⁻¹)`, revalidated; `norm` is the norm of the new space.
    pub fn similar(&self, sys: &DynamicalSystem, s: &Mat, norm: SpaceNorm) -> Result<Self> {
        let s_inv = inverse(s).ok_or(Error::NotInvertible(0))?;
        let conj = |x: &Mat| s * x * &s_inv;
        CovariantPair::new(
            sys,
            self.pi.iter().map(conj).collect(),
            self.u.iter().map(conj).collect(),
            self.flavor,
            norm,
        )
    }

    /// Same matrices on another norm of the same dimension.
    pub fn with_norm(mut self, norm: SpaceNorm) -> Result<Self> {
        if norm.dim() != self.space_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space_dim(),
                found: norm.dim(),
            });
        }
        self.norm = norm;
        Ok(self)
    }

    /// Largest entrywise difference to another pair; infinite on shape
    /// mismatch.
    pub fn max_abs_diff(&self, other: &CovariantPair) -> f64 {
        if self.pi.len() != other.pi.len() || self.u.len() != other.u.len() {
            return f64::INFINITY;
        }
        self.pi
            .iter()
            .zip(&other.pi)
            .chain(self.u.iter().zip(&other.u))
            .map(|(a, b)| max_abs_diff(a, b))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn combine(images: &[Mat], a: &[C64], m: usize) -> Mat {
    let mut out = Mat::zeros(m, m);
    for (img, c) in images.iter().zip(a) {
        if *c != ZERO {
            out += img * *c;
        }
    }
    out
}

/// Whether the images of `maps` applied to all vectors span `ℂ^m`.
pub(crate) fn spans(maps: &[Mat], m: usize) -> bool {
    if m == 0 {
        return true;
    }
    let mut wide = Mat::zeros(m, m * maps.len());
    for (k, x) in maps.iter().enumerate() {
        wide.view_mut((0, k * m), (m, m)).copy_from(x);
    }
    let scale = maps.iter().map(max_abs).fold(0.0, f64::max);
    scale > 0.0 && rank(&wide, 1e-10) == m
}

/// The companion systems a pair can be read over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Companion {
    Same,
    OppositeGroup,
    OppositeAlgebra,
    Both,
}

impl Companion {
    pub fn system(self, sys: &DynamicalSystem) -> DynamicalSystem {
        match self {
            Companion::Same => sys.clone(),
            Companion::OppositeGroup => sys.with_opposite_group(),
            Companion::OppositeAlgebra => sys.with_opposite_algebra(),
            Companion::Both => sys.opposite(),
        }
    }

    fn label(self) -> &'static str {
        match self {
            Companion::Same => "(A, G, α)",
            Companion::OppositeGroup => "(A, G^o, α^o)",
            Companion::OppositeAlgebra => "(A^o, G, α)",
            Companion::Both => "(A^o, G^o, α^o)",
        }
    }

    /// The companion over which a pair of this flavor is an (m,m) pair.
    pub fn for_flavor(flavor: Flavor) -> Companion {
        match flavor {
            Flavor::MM => Companion::Same,
            Flavor::MA => Companion::OppositeGroup,
            Flavor::AM => Companion::OppositeAlgebra,
            Flavor::AA => Companion::Both,
        }
    }
}

/// Reads a pair over a companion system, where it must become an (m,m)
/// pair; covariance is re-verified there.
pub fn retype_pair(
    sys: &DynamicalSystem,
    pair: &CovariantPair,
    target: Companion,
) -> Result<(DynamicalSystem, CovariantPair)> {
    if Companion::for_flavor(pair.flavor) != target {
        return Err(Error::RetypeMismatch {
            flavor: pair.flavor,
            target: target.label(),
        });
    }
    let companion = target.system(sys);
    let retyped = CovariantPair::new(
        &companion,
        pair.pi.clone(),
        pair.u.clone(),
        Flavor::MM,
        pair.norm.clone(),
    )?;
    Ok((companion, retyped))
}

/// The ℓ^p direct sum of pairs normed by the coordinate p-norm.
pub fn direct_sum_realization(
    sys: &DynamicalSystem,
    pairs: &[CovariantPair],
    p: f64,
) -> Result<CovariantPair> {
    let first = pairs.first().ok_or(Error::EmptyClass)?;
    if pairs.iter().any(|x| x.norm.coordinate_p() != Some(p)) {
        return Err(Error::UnsupportedNorm);
    }
    if let Some(x) = pairs.iter().find(|x| x.flavor != first.flavor) {
        return Err(Error::FlavorMismatch(x.flavor));
    }
    let total: usize = pairs.iter().map(CovariantPair::space_dim).sum();
    let norm = first.norm.with_dim(total).ok_or(Error::UnsupportedNorm)?;
    let d = first.pi.len();
    let n = first.u.len();
    let stack = |pick: &dyn Fn(&CovariantPair) -> &Mat| {
        block_diag(&pairs.iter().map(|x| pick(x).clone()).collect::<Vec<_>>())
    };
    let pi = (0..d).map(|i| stack(&|x| &x.pi[i])).collect();
    let u = (0..n).map(|r| stack(&|x| &x.u[r])).collect();
    CovariantPair::new(sys, pi, u, first.flavor, norm)
}

/// A nonempty class of pairs with its constants `C^R = max ‖π‖` and
/// `ν^R(r) = max ‖U_r‖`.
#[derive(Clone, Debug)]
pub struct RepClass {
    pairs: Vec<CovariantPair>,
    c_r: Bounds,
    nu_r: Vec<Bounds>,
}

impl RepClass {
    pub fn new(sys: &DynamicalSystem, pairs: Vec<CovariantPair>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyClass);
        }
        let c_r = pairs
            .iter()
            .map(|p| p.pi_norm(sys))
            .fold(Bounds::exact(0.0), Bounds::max);
        let mut nu_r = alloc::vec![Bounds::exact(0.0); sys.group().order()];
        for p in &pairs {
            for (acc, b) in nu_r.iter_mut().zip(p.u_norms()) {
                *acc = acc.max(b);
            }
        }
        Ok(RepClass { pairs, c_r, nu_r })
    }

    pub fn pairs(&self) -> &[CovariantPair] {
        &self.pairs
    }

    pub fn c_r(&self) -> Bounds {
        self.c_r
    }

    pub fn nu_r(&self) -> &[Bounds] {
        &self.nu_r
    }

    /// `σ^R(f) = max over pairs of ‖π⋊U(f)‖`.
    pub fn seminorm(&self, f: &AFunction) -> Result<f64> {
        self.pairs
            .iter()
            .map(|p| p.seminorm(f))
            .try_fold(0.0, |acc, v| v.map(|v| f64::max(acc, v)))
    }

    /// All integrated forms stacked; its kernel is `ker σ^R`.
    pub fn stacked_integrated_matrix(&self) -> Result<Mat> {
        let blocks = self
            .pairs
            .iter()
            .map(CovariantPair::integrated_matrix)
            .collect::<Result<Vec<_>>>()?;
        let rows = blocks.iter().map(Mat::nrows).sum();
        let cols = blocks[0].ncols();
        let mut out = Mat::zeros(rows, cols);
        let mut at = 0;
        for b in blocks {
            out.view_mut((at, 0), b.shape()).copy_from(&b);
            at += b.nrows();
        }
        Ok(out)
    }
}

/// `σ^R(f)`.
pub fn seminorm(class: &RepClass, f: &AFunction) -> Result<f64> {
    class.seminorm(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::NormedAlgebra;
    use crate::fixtures;
    use crate::groups::FiniteGroup;
    use crate::linalg::re;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z2_scalar() -> DynamicalSystem {
        DynamicalSystem::trivial(NormedAlgebra::scalars(), FiniteGroup::cyclic(2))
    }

    fn one_dim(sys: &DynamicalSystem, ug: f64, norm: SpaceNorm) -> CovariantPair {
        let m = |x: f64| Mat::from_element(1, 1, re(x));
        CovariantPair::new(
            sys,
            alloc::vec![m(1.0)],
            alloc::vec![m(1.0), m(ug)],
            Flavor::MM,
            norm,
        )
        .unwrap()
    }

    fn scalars(v: &[f64]) -> AFunction {
        AFunction::from_flat(1, v.iter().map(|x| re(*x)).collect()).unwrap()
    }

    #[test]
    fn z2_integrated_form_by_hand() {
        let sys = z2_scalar();
        let p = one_dim(&sys, -1.0, SpaceNorm::L1(1));
        let t = p.integrated_form(&scalars(&[1.0, 2.0])).unwrap();
        assert_eq!(t[(0, 0)], re(-1.0));
    }

    #[test]
    fn seminorm_examples() {
        let sys = z2_scalar();
        let class = RepClass::new(&sys, alloc::vec![one_dim(&sys, 1.0, SpaceNorm::L1(1))]).unwrap();
        assert_eq!(class.seminorm(&scalars(&[1.0, -1.0])).unwrap(), 0.0);
        assert_eq!(class.seminorm(&scalars(&[0.0, 0.0])).unwrap(), 0.0);
        assert_eq!(class.seminorm(&scalars(&[2.0, 1.0])).unwrap(), 3.0);
        assert!(matches!(
            RepClass::new(&sys, Vec::new()),
            Err(Error::EmptyClass)
        ));
    }

    #[test]
    fn wrong_flavor_tags_are_rejected() {
        let fx = fixtures::f3();
        let pair = fx.pairs[0].clone();
        for flavor in [Flavor::MA, Flavor::AM, Flavor::AA] {
            let bad = CovariantPair::new(
                &fx.system,
                pair.pi_basis().to_vec(),
                pair.u_all().to_vec(),
                flavor,
                pair.norm().clone(),
            );
            assert!(bad.is_err(), "{flavor} accepted");
        }
    }

    #[test]
    fn covariance_is_checked() {
        let fx = fixtures::f2();
        let m = |a: f64, b: f64| Mat::from_row_slice(2, 2, &[re(a), ZERO, ZERO, re(b)]);
        let bad = CovariantPair::new(
            &fx.system,
            alloc::vec![m(1.0, 0.0), m(0.0, 1.0)],
            alloc::vec![identity(2), identity(2)],
            Flavor::MM,
            SpaceNorm::L2(2),
        );
        assert!(matches!(bad, Err(Error::CovarianceViolated { .. })));
    }

    #[test]
    fn integrated_form_is_multiplicative_on_s3() {
        let fx = fixtures::f3();
        let b =
            crate::convolution::BeurlingAlgebra::new(fx.system.clone(), fx.weight.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for pair in &fx.pairs {
            let f = AFunction::random(6, 4, &mut rng);
            let g = AFunction::random(6, 4, &mut rng);
            let lhs = pair.integrated_form(&b.multiply(&f, &g).unwrap()).unwrap();
            let rhs = pair.integrated_form(&f).unwrap() * pair.integrated_form(&g).unwrap();
            assert!(rel_diff(&lhs, &rhs) < 1e-10);
        }
    }

    #[test]
    fn unital_delta_gives_pi_of_one() {
        let fx = fixtures::f3();
        let u = fx.system.algebra().identity().unwrap().to_vec();
        let f = AFunction::delta(6, 0, &u);
        for pair in &fx.pairs {
            let t = pair.integrated_form(&f).unwrap();
            assert!(max_abs_diff(&t, &pair.pi(&u)) < 1e-14);
        }
    }

    #[test]
    fn integrated_matrix_matches_integrated_form() {
        let fx = fixtures::f5();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let pair = &fx.pairs[0];
        let f = AFunction::random(4, 2, &mut rng);
        let l = pair.integrated_matrix().unwrap();
        let v = crate::linalg::apply(&l, f.as_slice());
        let t = pair.integrated_form(&f).unwrap();
        assert!(crate::linalg::slice_max_abs_diff(&v, &vectorize(&t)) < 1e-12);
    }

    #[test]
    fn mixed_flavors_have_no_integrated_form() {
        let fx = fixtures::f2();
        let pair = crate::convolution::table2_action(&fx.system, 5, &fx.character).unwrap();
        let f = AFunction::zero(2, 2);
        assert!(matches!(
            pair.integrated_form(&f),
            Err(Error::FlavorMismatch(Flavor::MA))
        ));
    }

    #[test]
    fn direct_sums_of_two_characters() {
        let sys = z2_scalar();
        let a = one_dim(&sys, 1.0, SpaceNorm::L2(1));
        let b = one_dim(&sys, -1.0, SpaceNorm::L2(1));
        let sum = direct_sum_realization(&sys, &[a.clone(), b.clone()], 2.0).unwrap();
        let class = RepClass::new(&sys, alloc::vec![a.clone(), b]).unwrap();
        let f = scalars(&[1.0, 3.0]);
        assert!((sum.seminorm(&f).unwrap() - 4.0).abs() < 1e-12);
        assert!((class.seminorm(&f).unwrap() - 4.0).abs() < 1e-12);
        let single = direct_sum_realization(&sys, core::slice::from_ref(&a), 2.0).unwrap();
        assert!(single.max_abs_diff(&a) < 1e-15);
        assert!(matches!(
            direct_sum_realization(&sys, &[a, one_dim(&sys, 1.0, SpaceNorm::L1(1))], 2.0),
            Err(Error::UnsupportedNorm)
        ));
    }

    #[test]
    fn retyping_follows_the_companion_table() {
        let fx = fixtures::f2();
        let sys = &fx.system;
        let mm = fx.pairs[0].clone();
        let (same, back) = retype_pair(sys, &mm, Companion::Same).unwrap();
        assert!(same.same_as(sys));
        assert!(back.max_abs_diff(&mm) == 0.0);
        let aa = crate::convolution::table2_action(sys, 13, &fx.character).unwrap();
        let (opp, r) = retype_pair(sys, &aa, Companion::Both).unwrap();
        assert_eq!(r.flavor(), Flavor::MM);
        assert!(opp.same_as(&sys.opposite()));
        let ma = crate::convolution::table2_action(sys, 5, &fx.character).unwrap();
        assert!(retype_pair(sys, &ma, Companion::OppositeGroup).is_ok());
        assert!(matches!(
            retype_pair(sys, &ma, Companion::Both),
            Err(Error::RetypeMismatch { .. })
        ));
    }

    #[test]
    fn flavor_parsing() {
        assert_eq!("(a,m)".parse::<Flavor>().unwrap(), Flavor::AM);
        assert_eq!("mm".parse::<Flavor>().unwrap(), Flavor::MM);
        assert!("xm".parse::<Flavor>().is_err());
        assert_eq!(Flavor::MA.to_string(), "(m,a)");
    }

    #[test]
    fn isometric_induced_norm_is_the_weighted_norm() {
        let fx = fixtures::f2();
        let p = crate::correspondence::induced_pair(&fx.system, &fx.weight).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let f = AFunction::random(2, 2, &mut rng);
            let b = p.integrated_norm(&f).unwrap();
            let w = crate::convolution::weighted_norm(&fx.system, &f, &fx.weight, 1.0);
            assert!(
                (b.lower - w).abs() < 1e-12 * w && (b.upper - w).abs() < 1e-12 * w,
                "{b:?} {w}"
            );
        }
    }
}
