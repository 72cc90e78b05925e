use alloc::vec::Vec;

use rand::Rng;

use crate::algebras::Structure;
use crate::convolution::{convolution_structure, table2_action, AFunction};
use crate::crossed::{CovariantPair, RepClass};
use crate::dynamics::DynamicalSystem;
use crate::error::{Error, Result};
use crate::groups::Character;
use crate::linalg::{apply, max_abs, split_domain, Mat, C64, ZERO};

/// Default relative threshold below which singular values count as zero.
pub const KERNEL_TOLERANCE: f64 = 1e-10;

const IDEAL_TOLERANCE: f64 = 1e-8;

/// `A^G / ker σ^R` with the product induced by twisted convolution and the
/// norm induced by `σ^R`.
///
/// Quotient coordinates are taken in an orthonormal basis `Q` of the
/// orthogonal complement of the kernel: `q(f) = Q*f`, `lift(c) = Qc`.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    system: DynamicalSystem,
    class: RepClass,
    range: Mat,
    kernel: Mat,
    convolution: Structure,
    structure: Structure,
    singular_values: Vec<f64>,
}

impl CrossedProduct {
    pub fn build(sys: &DynamicalSystem, class: RepClass) -> Result<Self> {
        CrossedProduct::build_with_tolerance(sys, class, KERNEL_TOLERANCE)
    }

    /// Builds the quotient and asserts that the kernel is a two-sided ideal.
    pub fn build_with_tolerance(
        sys: &DynamicalSystem,
        class: RepClass,
        tolerance: f64,
    ) -> Result<Self> {
        let stacked = class.stacked_integrated_matrix()?;
        let split = split_domain(&stacked, tolerance);
        let convolution = convolution_structure(sys);
        let range = split.range;
        let kernel = split.kernel;
        let range_adj = range.adjoint();
        let scale = 1.0 + max_abs_slice(convolution.constants());
        let mut defect: f64 = 0.0;
        for k in 0..kernel.ncols() {
            let v: Vec<C64> = kernel.column(k).iter().copied().collect();
            let left = &range_adj * convolution.left_mult(&v);
            let right = &range_adj * convolution.right_mult(&v);
            defect = defect.max(max_abs(&left)).max(max_abs(&right));
        }
        if defect > IDEAL_TOLERANCE * scale {
            return Err(Error::KernelNotIdeal(defect));
        }
        let q = range.ncols();
        let mut constants = Vec::with_capacity(q * q * q);
        for i in 0..q {
            let lifted: Vec<C64> = range.column(i).iter().copied().collect();
            let m = &range_adj * convolution.left_mult(&lifted) * &range;
            for j in 0..q {
                constants.extend(m.column(j).iter().copied());
            }
        }
        let structure = Structure::from_constants(q, constants)?;
        Ok(CrossedProduct {
            system: sys.clone(),
            class,
            range,
            kernel,
            convolution,
            structure,
            singular_values: split.singular_values,
        })
    }

    pub fn system(&self) -> &DynamicalSystem {
        &self.system
    }

    pub fn class(&self) -> &RepClass {
        &self.class
    }

    /// Orthonormal basis of `ker σ^R` as functions.
    pub fn kernel_basis(&self) -> Vec<AFunction> {
        let d = self.system.algebra().dim();
        (0..self.kernel.ncols())
            .map(|k| {
                AFunction::from_flat(d, self.kernel.column(k).iter().copied().collect())
                    .expect("kernel columns have the shape of A^G")
            })
            .collect()
    }

    pub fn kernel_matrix(&self) -> &Mat {
        &self.kernel
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.ncols()
    }

    pub fn quotient_dim(&self) -> usize {
        self.range.ncols()
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    /// The projection `q = Q*` from flat coordinates of `A^G`.
    pub fn q_matrix(&self) -> Mat {
        self.range.adjoint()
    }

    /// The lift `Q` from quotient coordinates.
    pub fn lift_matrix(&self) -> &Mat {
        &self.range
    }

    pub fn q(&self, f: &AFunction) -> Vec<C64> {
        apply(&self.range.adjoint(), f.as_slice())
    }

    pub fn lift(&self, c: &[C64]) -> AFunction {
        AFunction::from_flat(self.system.algebra().dim(), apply(&self.range, c))
            .expect("lift has the shape of A^G")
    }

    /// Quotient structure constants.
    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// Structure constants of `A^G` itself.
    pub fn convolution(&self) -> &Structure {
        &self.convolution
    }

    pub fn multiply(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        self.structure.multiply(x, y)
    }

    /// `‖c‖ = σ^R(lift c)`.
    pub fn norm(&self, c: &[C64]) -> Result<f64> {
        self.class.seminorm(&self.lift(c))
    }

    /// Left multiplication by `c` on quotient coordinates.
    pub fn left_regular(&self, c: &[C64]) -> Mat {
        self.structure.left_mult(c)
    }

    /// Whether `σ^R(f) = 0`, judged by the distance to the kernel.
    pub fn in_kernel(&self, f: &AFunction) -> bool {
        let scale = 1.0 + f.max_abs();
        crate::linalg::slice_max_abs(&self.q(f)) <= 1e-9 * scale
    }

    /// Largest entry of `π⋊U(K)` over an orthonormal kernel basis `K`,
    /// relative to the size of the integrated form; zero exactly when the
    /// pair factors through the quotient.
    pub fn kernel_defect(&self, pair: &CovariantPair) -> Result<f64> {
        let l = pair.integrated_matrix()?;
        if self.kernel.ncols() == 0 {
            return Ok(0.0);
        }
        Ok(max_abs(&(&l * &self.kernel)) / (1.0 + max_abs(&l)))
    }

    /// Matrix of a linear map of `A^G` that preserves the kernel, read on
    /// quotient coordinates.
    pub fn descend(&self, x: &Mat) -> Mat {
        self.range.adjoint() * x * &self.range
    }

    /// How far `x` is from mapping the kernel into itself.
    pub fn descent_defect(&self, x: &Mat) -> f64 {
        if self.kernel.ncols() == 0 {
            return 0.0;
        }
        max_abs(&(self.range.adjoint() * x * &self.kernel)) / (1.0 + max_abs(x))
    }

    /// `i_A(a)f(s) = a f(s)` and `i_G(r)f(s) = α_r(f(r⁻¹s))` on the quotient.
    pub fn canonical_maps(&self) -> Result<CanonicalMaps> {
        let sys = &self.system;
        let line1 = table2_action(sys, 1, &Character::trivial(sys.group()))?;
        let defect = line1
            .pi_basis()
            .iter()
            .chain(line1.u_all())
            .map(|x| self.descent_defect(x))
            .fold(0.0, f64::max);
        Ok(CanonicalMaps {
            i_a: line1.pi_basis().iter().map(|x| self.descend(x)).collect(),
            i_g: line1.u_all().iter().map(|x| self.descend(x)).collect(),
            descent_defect: defect,
        })
    }

    /// A sampled lower estimate of `‖λ(c)‖` in the quotient norm, over the
    /// identity of the quotient (when present), basis vectors and random
    /// vectors.
    pub fn left_regular_norm_lower<R: Rng + ?Sized>(
        &self,
        c: &[C64],
        samples: usize,
        rng: &mut R,
    ) -> Result<f64> {
        let q = self.quotient_dim();
        let mut probes: Vec<Vec<C64>> = Vec::new();
        if let Some(unit) = self.structure.find_identity() {
            probes.push(unit);
        }
        for i in 0..q {
            let mut e = alloc::vec![ZERO; q];
            e[i] = crate::linalg::ONE;
            probes.push(e);
        }
        for _ in 0..samples {
            probes.push(crate::linalg::random_vec(q, rng));
        }
        let mut best: f64 = 0.0;
        for y in probes {
            let ny = self.norm(&y)?;
            if ny <= 1e-12 {
                continue;
            }
            best = best.max(self.norm(&self.multiply(c, &y))? / ny);
        }
        Ok(best)
    }
}

fn max_abs_slice(v: &[C64]) -> f64 {
    crate::linalg::slice_max_abs(v)
}

/// The canonical maps `i_A`, `i_G` on quotient coordinates.
#[derive(Clone, Debug)]
pub struct CanonicalMaps {
    pub i_a: Vec<Mat>,
    pub i_g: Vec<Mat>,
    /// How far the maps on `A^G` are from preserving the kernel.
    pub descent_defect: f64,
}

impl CanonicalMaps {
    pub fn i_a(&self, a: &[C64]) -> Mat {
        let q = self.i_g.first().map_or(0, Mat::nrows);
        crate::crossed::combine(&self.i_a, a, q)
    }

    /// `Σ_s i_A(f(s)) i_G(s)`.
    pub fn integrated(&self, f: &AFunction) -> Mat {
        let q = self.i_g.first().map_or(0, Mat::nrows);
        let mut out = Mat::zeros(q, q);
        for (s, g) in self.i_g.iter().enumerate() {
            out += self.i_a(f.at(s)) * g;
        }
        out
    }
}

/// Result of comparing two classes over the same system.
#[derive(Clone, Debug)]
pub struct ClassComparison {
    /// Largest sampled `σ^{R1}(f)/σ^{R2}(f)`.
    pub m_lower: f64,
    /// `ker σ^{R2} ⊆ ker σ^{R1}`.
    pub dominated: bool,
    /// Relative size of `σ^{R1}` on `ker σ^{R2}`; the certificate for
    /// `dominated`.
    pub kernel_defect: f64,
    /// A function with `σ^{R2}(f) = 0 < σ^{R1}(f)` when not dominated.
    pub witness: Option<AFunction>,
    /// Best M from a parameter scan when the quotient by `R2` has
    /// dimension at most 2.
    pub best_m: Option<f64>,
}

/// Compares `σ^{R1}` against `σ^{R2}`: whether `σ^{R1} ≤ M σ^{R2}` is
/// possible at all and how large `M` must be.
pub fn compare_classes<R: Rng + ?Sized>(
    sys: &DynamicalSystem,
    r1: &RepClass,
    r2: &RepClass,
    samples: usize,
    rng: &mut R,
) -> Result<ClassComparison> {
    let cp2 = CrossedProduct::build(sys, r2.clone())?;
    let l1 = r1.stacked_integrated_matrix()?;
    let scale = 1.0 + max_abs(&l1);
    let mut kernel_defect: f64 = 0.0;
    let mut witness = None;
    for f in cp2.kernel_basis() {
        let v = max_abs_slice(&apply(&l1, f.as_slice())) / scale;
        if v > kernel_defect {
            kernel_defect = v;
            witness = Some(f);
        }
    }
    let dominated = kernel_defect <= 1e-9;
    if dominated {
        witness = None;
    }

    let n = sys.group().order();
    let d = sys.algebra().dim();
    let mut probes: Vec<AFunction> = (0..n * d).map(|k| AFunction::basis(n, d, k)).collect();
    probes.extend((0..samples).map(|_| AFunction::random(n, d, rng)));
    let mut m_lower: f64 = 0.0;
    for f in &probes {
        let s2 = r2.seminorm(f)?;
        if s2 > 1e-12 {
            m_lower = m_lower.max(r1.seminorm(f)? / s2);
        }
    }

    let best_m = if dominated && cp2.quotient_dim() <= 2 {
        Some(scan_ratio(&cp2, r1, r2)?.max(m_lower))
    } else {
        None
    };
    Ok(ClassComparison {
        m_lower,
        dominated,
        kernel_defect,
        witness,
        best_m,
    })
}

/// Scans `σ^{R1}/σ^{R2}` over the unit sphere of a quotient of dimension
/// at most two, parameterized as `(cos θ, e^{iφ} sin θ)`.
fn scan_ratio(cp2: &CrossedProduct, r1: &RepClass, r2: &RepClass) -> Result<f64> {
    let q = cp2.quotient_dim();
    let mut points: Vec<Vec<C64>> = Vec::new();
    match q {
        0 => return Ok(0.0),
        1 => points.push(alloc::vec![crate::linalg::ONE]),
        _ => {
            const THETAS: usize = 48;
            const PHIS: usize = 64;
            for t in 0..=THETAS {
                let theta = core::f64::consts::FRAC_PI_2 * t as f64 / THETAS as f64;
                for p in 0..PHIS {
                    let phi = 2.0 * core::f64::consts::PI * p as f64 / PHIS as f64;
                    points.push(alloc::vec![
                        C64::new(libm::cos(theta), 0.0),
                        crate::linalg::cis(phi) * libm::sin(theta),
                    ]);
                    if t == 0 {
                        break;
                    }
                }
            }
        }
    }
    let mut best: f64 = 0.0;
    for c in points {
        let f = cp2.lift(&c);
        let s2 = r2.seminorm(&f)?;
        if s2 > 1e-12 {
            best = best.max(r1.seminorm(&f)? / s2);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::NormedAlgebra;
    use crate::crossed::Flavor;
    use crate::fixtures;
    use crate::groups::FiniteGroup;
    use crate::linalg::{identity, max_abs_diff, re};
    use crate::norms::SpaceNorm;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z2_class(signs: &[f64]) -> (DynamicalSystem, RepClass) {
        let sys = DynamicalSystem::trivial(NormedAlgebra::scalars(), FiniteGroup::cyclic(2));
        let pairs = signs
            .iter()
            .map(|s| {
                let m = |x: f64| Mat::from_element(1, 1, re(x));
                CovariantPair::new(
                    &sys,
                    alloc::vec![m(1.0)],
                    alloc::vec![m(1.0), m(*s)],
                    Flavor::MM,
                    SpaceNorm::L1(1),
                )
                .unwrap()
            })
            .collect();
        let class = RepClass::new(&sys, pairs).unwrap();
        (sys, class)
    }

    #[test]
    fn z2_trivial_character_has_a_one_dimensional_quotient() {
        let (sys, class) = z2_class(&[1.0]);
        let cp = CrossedProduct::build(&sys, class).unwrap();
        assert_eq!(cp.quotient_dim(), 1);
        assert_eq!(cp.kernel_dim(), 1);
        let f = AFunction::from_flat(1, alloc::vec![re(1.0), re(-1.0)]).unwrap();
        assert!(cp.in_kernel(&f));
    }

    #[test]
    fn faithful_class_has_zero_kernel() {
        let (sys, class) = z2_class(&[1.0, -1.0]);
        let cp = CrossedProduct::build(&sys, class).unwrap();
        assert_eq!(cp.kernel_dim(), 0);
        assert_eq!(cp.quotient_dim(), 2);
    }

    #[test]
    fn quotient_map_is_multiplicative() {
        let fx = fixtures::f3();
        let class = RepClass::new(&fx.system, fx.pairs[..2].to_vec()).unwrap();
        let cp = CrossedProduct::build(&fx.system, class).unwrap();
        assert!(cp.kernel_dim() > 0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = AFunction::random(6, 4, &mut rng);
        let g = AFunction::random(6, 4, &mut rng);
        let fg = crate::convolution::twisted_convolve(&fx.system, &f, &g).unwrap();
        let lhs = cp.q(&fg);
        let rhs = cp.multiply(&cp.q(&f), &cp.q(&g));
        assert!(crate::linalg::slice_max_abs_diff(&lhs, &rhs) < 1e-10);
        assert!(cp.structure().associativity_defect().0 < 1e-10);
    }

    #[test]
    fn canonical_maps_give_left_multiplication() {
        let fx = fixtures::f3();
        let class = RepClass::new(&fx.system, fx.pairs.clone()).unwrap();
        let cp = CrossedProduct::build(&fx.system, class).unwrap();
        let maps = cp.canonical_maps().unwrap();
        assert!(maps.descent_defect < 1e-10);
        let unit = fx.system.algebra().identity().unwrap();
        let q = cp.quotient_dim();
        assert!(max_abs_diff(&maps.i_a(unit), &identity(q)) < 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = AFunction::random(6, 4, &mut rng);
        let lhs = maps.integrated(&f);
        let rhs = cp.left_regular(&cp.q(&f));
        assert!(max_abs_diff(&lhs, &rhs) < 1e-10);
    }

    #[test]
    fn comparison_examples() {
        let (sys, plus) = z2_class(&[1.0]);
        let (_, minus) = z2_class(&[-1.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let same = compare_classes(&sys, &plus, &plus, 10, &mut rng).unwrap();
        assert!(same.dominated && same.m_lower >= 1.0 - 1e-12);
        assert!((same.best_m.unwrap() - 1.0).abs() < 1e-12);
        let cross = compare_classes(&sys, &plus, &minus, 10, &mut rng).unwrap();
        assert!(!cross.dominated && cross.witness.is_some());
        let back = compare_classes(&sys, &minus, &plus, 10, &mut rng).unwrap();
        assert!(!back.dominated);
        let (_, both) = z2_class(&[1.0, -1.0]);
        let sub = compare_classes(&sys, &plus, &both, 10, &mut rng).unwrap();
        assert!(sub.dominated && sub.m_lower <= 1.0 + 1e-12);
    }
}
