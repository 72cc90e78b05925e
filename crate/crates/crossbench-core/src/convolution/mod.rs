//! The function space `A^G`, twisted convolution, weighted norms and the
//! transforms relating a system to its opposite companions.
//!
//! An [`AFunction`] is stored flat: coordinate `s·d + i` is the `i`-th
//! coefficient of `f(s)`, so that `δ_s ⊗ e_i` is the standard basis.

mod actions;

pub use actions::{
    canonical_pair, table2_action, table2_line, table3_action, table3_line, LineSpec, PointTwist,
    Shift, Side, Twist,
};

use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use rand::Rng;

use crate::algebras::Structure;
use crate::dynamics::DynamicalSystem;
use crate::error::{Error, Result};
use crate::groups::{Character, FiniteGroup, Weight};
use crate::linalg::{matrix_of, random_vec, slice_max_abs_diff, Mat, C64, ZERO};
use crate::norms::SpaceNorm;

/// A function `G → A` with `A = ℂ^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct AFunction {
    dim: usize,
    data: Vec<C64>,
}

impl AFunction {
    pub fn zero(order: usize, dim: usize) -> Self {
        AFunction {
            dim,
            data: alloc::vec![ZERO; order * dim],
        }
    }

    /// Flat coefficients; the length must be a multiple of `dim`.
    pub fn from_flat(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 || !data.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: data.len(),
            });
        }
        Ok(AFunction { dim, data })
    }

    pub fn from_values(values: &[Vec<C64>]) -> Result<Self> {
        let dim = values.first().map_or(0, Vec::len);
        if let Some(v) = values.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        AFunction::from_flat(dim, values.concat())
    }

    /// `δ_s ⊗ a`.
    pub fn delta(order: usize, s: usize, a: &[C64]) -> Self {
        let mut f = AFunction::zero(order, a.len());
        f.at_mut(s).copy_from_slice(a);
        f
    }

    pub fn basis(order: usize, dim: usize, index: usize) -> Self {
        let mut f = AFunction::zero(order, dim);
        f.data[index] = crate::linalg::ONE;
        f
    }

    pub fn random<R: Rng + ?Sized>(order: usize, dim: usize, rng: &mut R) -> Self {
        AFunction {
            dim,
            data: random_vec(order * dim, rng),
        }
    }

    pub fn order(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, s: usize) -> &[C64] {
        &self.data[s * self.dim..(s + 1) * self.dim]
    }

    pub fn at_mut(&mut self, s: usize) -> &mut [C64] {
        &mut self.data[s * self.dim..(s + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn values(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.dim).map(<[C64]>::to_vec).collect()
    }

    pub fn max_abs_diff(&self, other: &AFunction) -> f64 {
        slice_max_abs_diff(&self.data, &other.data)
    }

    pub fn max_abs(&self) -> f64 {
        crate::linalg::slice_max_abs(&self.data)
    }

    fn zip_with(&self, other: &AFunction, op: impl Fn(C64, C64) -> C64) -> AFunction {
        assert_eq!(
            self.data.len(),
            other.data.len(),
            "functions live on different spaces"
        );
        AFunction {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| op(*a, *b))
                .collect(),
        }
    }
}

impl Add for &AFunction {
    type Output = AFunction;

    fn add(self, rhs: &AFunction) -> AFunction {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &AFunction {
    type Output = AFunction;

    fn sub(self, rhs: &AFunction) -> AFunction {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<C64> for &AFunction {
    type Output = AFunction;

    fn mul(self, c: C64) -> AFunction {
        AFunction {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }
}

fn check_shape(sys: &DynamicalSystem, f: &AFunction) -> Result<()> {
    let expected = sys.group().order() * sys.algebra().dim();
    if f.dim != sys.algebra().dim() || f.data.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: f.data.len(),
        });
    }
    Ok(())
}

/// `[f * g](s) = Σ_r f(r) α_r(g(r⁻¹s))`.
pub fn twisted_convolve(sys: &DynamicalSystem, f: &AFunction, g: &AFunction) -> Result<AFunction> {
    check_shape(sys, f)?;
    check_shape(sys, g)?;
    let grp = sys.group();
    let alg = sys.algebra();
    let mut out = AFunction::zero(grp.order(), alg.dim());
    for r in grp.elements() {
        if f.at(r).iter().all(|z| *z == ZERO) {
            continue;
        }
        for s in grp.elements() {
            let twisted = sys.act(r, g.at(grp.mul(grp.inv(r), s)));
            let term = alg.mul(f.at(r), &twisted);
            for (o, t) in out.at_mut(s).iter_mut().zip(term) {
                *o += t;
            }
        }
    }
    Ok(out)
}

/// `‖f‖_{p,ω} = (Σ_s ‖f(s)‖^p ω(s))^{1/p}`.
pub fn weighted_norm(sys: &DynamicalSystem, f: &AFunction, weight: &Weight, p: f64) -> f64 {
    let alg = sys.algebra();
    let sum: f64 = sys
        .group()
        .elements()
        .map(|s| libm::pow(alg.norm(f.at(s)), p) * weight.at(s))
        .sum();
    libm::pow(sum, 1.0 / p)
}

fn pointwise(
    sys: &DynamicalSystem,
    f: &AFunction,
    mut map: impl FnMut(usize, &[C64]) -> Vec<C64>,
) -> AFunction {
    let mut out = AFunction::zero(sys.group().order(), sys.algebra().dim());
    for s in sys.group().elements() {
        let v = map(s, f.at(s));
        out.at_mut(s).copy_from_slice(&v);
    }
    out
}

/// `ĥ(s) = α_s(h(s))`, the conjugator between the induced pair and left
/// convolution.
pub fn hat_conjugator(sys: &DynamicalSystem, h: &AFunction) -> AFunction {
    pointwise(sys, h, |s, v| sys.act(s, v))
}

/// `ȟ(s) = α_{s⁻¹}(h(s))`, inverse of [`hat_conjugator`].
pub fn check_conjugator(sys: &DynamicalSystem, h: &AFunction) -> AFunction {
    pointwise(sys, h, |s, v| sys.act(sys.group().inv(s), v))
}

/// `f̂(s) = χ(s⁻¹) α_{s⁻¹}(f(s))`, an anti-isomorphism onto the convolution
/// algebra of `(A^o, G^o, α^o)`.
pub fn hat_anti_iso(sys: &DynamicalSystem, chi: &Character, f: &AFunction) -> AFunction {
    let g = sys.group();
    pointwise(sys, f, |s, v| {
        let c = chi.at(g.inv(s));
        sys.act(g.inv(s), v).into_iter().map(|z| z * c).collect()
    })
}

/// `ǧ(s) = χ(s) α_s(g(s))`, inverse of [`hat_anti_iso`].
pub fn check_anti_iso(sys: &DynamicalSystem, chi: &Character, g: &AFunction) -> AFunction {
    pointwise(sys, g, |s, v| {
        let c = chi.at(s);
        sys.act(s, v).into_iter().map(|z| z * c).collect()
    })
}

/// `(T_χ f)(s) = χ(s) f(s⁻¹)`; an involution.
pub fn t_chi(group: &FiniteGroup, chi: &Character, f: &AFunction) -> AFunction {
    let mut out = AFunction::zero(group.order(), f.dim());
    for s in group.elements() {
        let c = chi.at(s);
        for (o, v) in out.at_mut(s).iter_mut().zip(f.at(group.inv(s))) {
            *o = c * v;
        }
    }
    out
}

/// `(S_χ f)(s) = χ(s⁻¹) α_{s⁻¹}(f(s))`.
pub fn s_chi(sys: &DynamicalSystem, chi: &Character, f: &AFunction) -> AFunction {
    hat_anti_iso(sys, chi, f)
}

/// `(S_χ⁻¹ f)(s) = χ(s) α_s(f(s))`.
pub fn s_chi_inv(sys: &DynamicalSystem, chi: &Character, f: &AFunction) -> AFunction {
    check_anti_iso(sys, chi, f)
}

/// Matrix of a linear map of `A^G` on the flat coordinates.
pub fn function_operator(
    sys: &DynamicalSystem,
    mut map: impl FnMut(&AFunction) -> AFunction,
) -> Mat {
    let n = sys.group().order() * sys.algebra().dim();
    let d = sys.algebra().dim();
    matrix_of(n, n, |x| {
        let f = AFunction {
            dim: d,
            data: x.to_vec(),
        };
        map(&f).data
    })
}

pub fn t_chi_matrix(sys: &DynamicalSystem, chi: &Character) -> Mat {
    function_operator(sys, |f| t_chi(sys.group(), chi, f))
}

pub fn s_chi_matrix(sys: &DynamicalSystem, chi: &Character) -> Mat {
    function_operator(sys, |f| s_chi(sys, chi, f))
}

pub fn s_chi_inv_matrix(sys: &DynamicalSystem, chi: &Character) -> Mat {
    function_operator(sys, |f| s_chi_inv(sys, chi, f))
}

/// Structure constants of twisted convolution on the basis `δ_r ⊗ e_i`,
/// from `(δ_r ⊗ a) * (δ_s ⊗ b) = δ_{rs} ⊗ a α_r(b)`.
pub fn convolution_structure(sys: &DynamicalSystem) -> Structure {
    let g = sys.group();
    let alg = sys.algebra();
    let d = alg.dim();
    Structure::from_fn(g.order() * d, |x, y| {
        let (r, i) = (x / d, x % d);
        let (s, j) = (y / d, y % d);
        let prod = alg.mul(&alg.basis(i), &sys.act(r, &alg.basis(j)));
        let mut out = alloc::vec![ZERO; g.order() * d];
        let rs = g.mul(r, s);
        out[rs * d..(rs + 1) * d].copy_from_slice(&prod);
        out
    })
}

/// `L¹(G, A, ω; α)`: twisted convolution with the weighted one-norm.
#[derive(Clone, Debug)]
pub struct BeurlingAlgebra {
    system: DynamicalSystem,
    weight: Weight,
}

impl BeurlingAlgebra {
    pub fn new(system: DynamicalSystem, weight: Weight) -> Result<Self> {
        if weight.values().len() != system.group().order() {
            return Err(Error::DimensionMismatch {
                expected: system.group().order(),
                found: weight.values().len(),
            });
        }
        Ok(BeurlingAlgebra { system, weight })
    }

    pub fn system(&self) -> &DynamicalSystem {
        &self.system
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// `|G| · dim A`.
    pub fn dim(&self) -> usize {
        self.system.group().order() * self.system.algebra().dim()
    }

    pub fn multiply(&self, f: &AFunction, g: &AFunction) -> Result<AFunction> {
        twisted_convolve(&self.system, f, g)
    }

    pub fn norm(&self, f: &AFunction) -> f64 {
        weighted_norm(&self.system, f, &self.weight, 1.0)
    }

    /// The norm as a [`SpaceNorm`] on flat coordinates.
    pub fn space_norm(&self) -> SpaceNorm {
        SpaceNorm::weighted(
            self.weight.values().to_vec(),
            self.system.algebra().space_norm(),
        )
    }

    /// Structure constants on the basis `δ_r ⊗ e_i`.
    pub fn structure(&self) -> Structure {
        convolution_structure(&self.system)
    }

    /// `L¹(G^o, A^o, ω^o; α^o)` with `ω^o = ω`.
    pub fn opposite(&self) -> BeurlingAlgebra {
        BeurlingAlgebra {
            system: self.system.opposite(),
            weight: self.weight.clone(),
        }
    }

    /// `δ_e ⊗ u` for the two-sided identity `u` of A, when it exists.
    pub fn identity(&self) -> Option<AFunction> {
        let u = self.system.algebra().identity()?;
        Some(AFunction::delta(
            self.system.group().order(),
            self.system.group().identity(),
            u,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::NormedAlgebra;
    use crate::fixtures;
    use crate::linalg::{re, ONE};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn scalar_z2() -> DynamicalSystem {
        DynamicalSystem::trivial(NormedAlgebra::scalars(), FiniteGroup::cyclic(2))
    }

    fn scalars(v: &[f64]) -> AFunction {
        AFunction::from_flat(1, v.iter().map(|x| re(*x)).collect()).unwrap()
    }

    #[test]
    fn z2_scalar_convolution() {
        let sys = scalar_z2();
        let h = twisted_convolve(&sys, &scalars(&[1.0, 2.0]), &scalars(&[3.0, 4.0])).unwrap();
        assert_eq!(h, scalars(&[11.0, 10.0]));
    }

    #[test]
    fn trivial_group_convolution_is_the_product() {
        let sys = DynamicalSystem::trivial(NormedAlgebra::matrix(2), FiniteGroup::trivial());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = AFunction::random(1, 4, &mut rng);
        let g = AFunction::random(1, 4, &mut rng);
        let h = twisted_convolve(&sys, &f, &g).unwrap();
        assert!(slice_max_abs_diff(h.as_slice(), &sys.algebra().mul(f.at(0), g.at(0))) < 1e-14);
    }

    #[test]
    fn elementary_tensors_multiply_with_a_twist() {
        let fx = fixtures::f3();
        let sys = &fx.system;
        let g = sys.group();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_vec(4, &mut rng);
        let b = random_vec(4, &mut rng);
        for (r, s) in [(1, 2), (3, 5), (4, 4)] {
            let lhs = twisted_convolve(
                sys,
                &AFunction::delta(6, r, &a),
                &AFunction::delta(6, s, &b),
            )
            .unwrap();
            let rhs = AFunction::delta(6, g.mul(r, s), &sys.algebra().mul(&a, &sys.act(r, &b)));
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn shape_errors() {
        let sys = scalar_z2();
        assert!(twisted_convolve(&sys, &scalars(&[1.0]), &scalars(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn weighted_norms_by_hand() {
        let sys = scalar_z2();
        let w = Weight::new(sys.group(), alloc::vec![1.0, 2.0]).unwrap();
        let f = scalars(&[1.0, 2.0]);
        assert!((weighted_norm(&sys, &f, &w, 1.0) - 5.0).abs() < 1e-15);
        assert!((weighted_norm(&sys, &f, &w, 2.0).powi(2) - 9.0).abs() < 1e-12);
        let delta = AFunction::delta(2, 1, &[re(-3.0)]);
        assert!((weighted_norm(&sys, &delta, &w, 1.0) - 6.0).abs() < 1e-15);
    }

    #[test]
    fn conjugators_on_the_flip_system() {
        let sys = fixtures::f2().system;
        let h = AFunction::delta(2, 1, &[ONE, ZERO]);
        assert_eq!(
            hat_conjugator(&sys, &h),
            AFunction::delta(2, 1, &[ZERO, ONE])
        );
        assert_eq!(check_conjugator(&sys, &hat_conjugator(&sys, &h)), h);
        let triv = scalar_z2();
        let f = scalars(&[1.0, 2.0]);
        assert_eq!(hat_conjugator(&triv, &f), f);
    }

    #[test]
    fn s_chi_on_the_flip_system() {
        let sys = fixtures::f2().system;
        let one = Character::trivial(sys.group());
        let h = AFunction::delta(2, 1, &[ONE, ZERO]);
        assert_eq!(s_chi(&sys, &one, &h), AFunction::delta(2, 1, &[ZERO, ONE]));
        assert_eq!(s_chi_inv(&sys, &one, &s_chi(&sys, &one, &h)), h);
    }

    #[test]
    fn t_chi_on_z2_is_the_identity_for_trivial_chi() {
        let sys = scalar_z2();
        let f = scalars(&[1.0, 2.0]);
        assert_eq!(t_chi(sys.group(), &Character::trivial(sys.group()), &f), f);
    }

    #[test]
    fn beurling_structure_reproduces_convolution() {
        let fx = fixtures::f3();
        let b = BeurlingAlgebra::new(fx.system.clone(), fx.weight.clone()).unwrap();
        let st = b.structure();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = AFunction::random(6, 4, &mut rng);
        let g = AFunction::random(6, 4, &mut rng);
        let direct = b.multiply(&f, &g).unwrap();
        let via = st.multiply(f.as_slice(), g.as_slice());
        assert!(slice_max_abs_diff(direct.as_slice(), &via) < 1e-12);
        let unit = b.identity().unwrap();
        assert!(b.multiply(&unit, &f).unwrap().max_abs_diff(&f) < 1e-12);
        assert!(b.multiply(&f, &unit).unwrap().max_abs_diff(&f) < 1e-12);
    }
}
