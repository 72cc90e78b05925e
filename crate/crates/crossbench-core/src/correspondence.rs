//! Representations of crossed products and Beurling algebras versus the
//! covariant pairs they come from, in the multiplicative, anti and bimodule
//! settings.
//!
//! Approximate identities are replaced by exact ones: reconstruction uses
//! `V = {e}` and the identity of `A` on the side each statement needs.

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebras::Structure;
use crate::convolution::{AFunction, BeurlingAlgebra};
use crate::crossed::{spans, CovariantPair, CrossedProduct, Flavor, RepClass};
use crate::dynamics::DynamicalSystem;
use crate::error::{Error, Result};
use crate::groups::Weight;
use crate::linalg::{block_diag, commutator_defect, max_abs, rel_diff, Mat, C64, TOL, ZERO};
use crate::norms::{op_norm, operator_valued_norm, Bounds, SpaceNorm};

pub use crate::crossed::{retype_pair, Companion};

/// Tolerance for "the pair kills the kernel".
const KERNEL_RESPECT_TOL: f64 = 1e-9;

/// Whether a map is multiplicative or anti-multiplicative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    Rep,
    AntiRep,
}

impl RepKind {
    fn label(self) -> &'static str {
        match self {
            RepKind::Rep => "representation",
            RepKind::AntiRep => "anti-representation",
        }
    }
}

/// A (anti-)representation of a finite-dimensional algebra on `ℂ^m`,
/// stored as the images of the domain basis.
#[derive(Clone, Debug)]
pub struct AlgebraRep {
    domain: Structure,
    images: Vec<Mat>,
    kind: RepKind,
    non_degenerate: bool,
}

impl AlgebraRep {
    pub fn new(domain: Structure, images: Vec<Mat>, kind: RepKind) -> Result<Self> {
        if images.len() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: domain.dim(),
                found: images.len(),
            });
        }
        let m = images.first().map_or(0, Mat::nrows);
        if let Some(bad) = images.iter().find(|x| x.shape() != (m, m)) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.nrows().max(bad.ncols()),
            });
        }
        let rep = AlgebraRep {
            non_degenerate: spans(&images, m),
            domain,
            images,
            kind,
        };
        rep.check_multiplicative()?;
        Ok(rep)
    }

    fn check_multiplicative(&self) -> Result<()> {
        let d = self.domain.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.eval(self.domain.basis_product(i, j));
                let rhs = match self.kind {
                    RepKind::Rep => &self.images[i] * &self.images[j],
                    RepKind::AntiRep => &self.images[j] * &self.images[i],
                };
                if rel_diff(&lhs, &rhs) > TOL {
                    return Err(Error::RepNotMultiplicative {
                        kind: self.kind.label(),
                        i,
                        j,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &Structure {
        &self.domain
    }

    pub fn images(&self) -> &[Mat] {
        &self.images
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn is_non_degenerate(&self) -> bool {
        self.non_degenerate
    }

    pub fn target_dim(&self) -> usize {
        self.images.first().map_or(0, Mat::nrows)
    }

    pub fn eval(&self, x: &[C64]) -> Mat {
        crate::crossed::combine(&self.images, x, self.target_dim())
    }

    /// `‖T‖` from `(domain, src)` into the operators on `(ℂ^m, space)`.
    pub fn norm(&self, src: &SpaceNorm, space: &SpaceNorm) -> Bounds {
        operator_valued_norm(&self.images, src, space)
    }

    /// Largest entrywise difference of the images; infinite on shape
    /// mismatch.
    pub fn max_abs_diff(&self, other: &AlgebraRep) -> f64 {
        if self.images.len() != other.images.len() {
            return f64::INFINITY;
        }
        self.images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| crate::linalg::max_abs_diff(a, b))
            .fold(0.0, f64::max)
    }
}

fn function_norm(sys: &DynamicalSystem, weight: &Weight) -> SpaceNorm {
    SpaceNorm::weighted(weight.values().to_vec(), sys.algebra().space_norm())
}

/// The induced pair `(λ̃, Λ)` on `(A^G, ‖·‖_{1,ω})`:
/// `[λ̃(a)h](s) = α_{s⁻¹}(a) h(s)` and `(Λ_r h)(s) = h(r⁻¹s)`.
pub fn induced_pair(sys: &DynamicalSystem, weight: &Weight) -> Result<CovariantPair> {
    let alg = sys.algebra();
    if alg.left_identity().is_none() && alg.right_identity().is_none() {
        return Err(Error::NoApproximateIdentity("one-sided identity"));
    }
    let g = sys.group();
    let d = alg.dim();
    let n = g.order();
    let pi = (0..d)
        .map(|i| {
            let blocks: Vec<Mat> = g
                .elements()
                .map(|s| alg.left_regular(&sys.act(g.inv(s), &alg.basis(i))))
                .collect();
            block_diag(&blocks)
        })
        .collect();
    let u = g
        .elements()
        .map(|r| {
            let mut m = Mat::zeros(n * d, n * d);
            for s in g.elements() {
                let t = g.mul(g.inv(r), s);
                m.view_mut((s * d, t * d), (d, d))
                    .copy_from(&crate::linalg::identity(d));
            }
            m
        })
        .collect();
    CovariantPair::new(sys, pi, u, Flavor::MM, function_norm(sys, weight))
}

/// `[λ̃⋊Λ(f)h](s) = Σ_r α_{s⁻¹}(f(r)) h(r⁻¹s)`, evaluated pointwise.
pub fn induced_pointwise(sys: &DynamicalSystem, f: &AFunction, h: &AFunction) -> AFunction {
    let g = sys.group();
    let alg = sys.algebra();
    let mut out = AFunction::zero(g.order(), alg.dim());
    for s in g.elements() {
        for r in g.elements() {
            let a = sys.act(g.inv(s), f.at(r));
            let term = alg.mul(&a, h.at(g.mul(g.inv(r), s)));
            for (o, t) in out.at_mut(s).iter_mut().zip(term) {
                *o += t;
            }
        }
    }
    out
}

/// The terms of the chain
/// `‖f‖_{1,ω}/(C_α M ω(e)) ≤ ‖λ̃⋊Λ(f)‖ ≤ ‖λ̃⋊Λ‖ σ^R(f) ≤ ‖λ̃⋊Λ‖ C^R ‖f‖_{1,ω}`.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub weighted_norm: f64,
    /// `‖f‖_{1,ω}/(C_α M ω(e))`.
    pub lower: f64,
    /// `‖λ̃⋊Λ(f)‖`.
    pub induced: Bounds,
    /// `‖λ̃⋊Λ‖` on the crossed product; the upper end is 1 when the induced
    /// pair belongs to the class.
    pub induced_rep_norm: Bounds,
    pub sigma: f64,
    pub c_r: Bounds,
    /// `‖λ̃⋊Λ‖ C^R ‖f‖_{1,ω}`.
    pub upper: f64,
    pub holds: [bool; 3],
}

impl ChainReport {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|h| *h)
    }
}

/// Evaluates the inequality chain for `f` after checking its hypotheses:
/// a right identity of norm `M`, `ν^R ≤ ω`, and that the induced pair kills
/// `ker σ^R`.
pub fn verify_inequality_chain(
    sys: &DynamicalSystem,
    weight: &Weight,
    class: &RepClass,
    f: &AFunction,
) -> Result<ChainReport> {
    let ctx = ChainContext::new(sys, weight, class)?;
    ctx.evaluate(f)
}

/// The parts of the chain that do not depend on `f`.
#[derive(Clone, Debug)]
pub struct ChainContext {
    system: DynamicalSystem,
    weight: Weight,
    class: RepClass,
    induced: CovariantPair,
    induced_in_class: bool,
    m: f64,
}

impl ChainContext {
    pub fn new(sys: &DynamicalSystem, weight: &Weight, class: &RepClass) -> Result<Self> {
        let alg = sys.algebra();
        let u = alg
            .right_identity()
            .ok_or_else(|| Error::HypothesisViolated(String::from("A has no right identity")))?;
        let m = alg.norm(u);
        for (r, nu) in class.nu_r().iter().enumerate() {
            if nu.lower > weight.at(r) * (1.0 + 1e-9) {
                return Err(Error::HypothesisViolated(alloc::format!(
                    "nu^R({r}) = {} exceeds omega({r}) = {}",
                    nu.lower,
                    weight.at(r)
                )));
            }
        }
        let induced = induced_pair(sys, weight)?;
        let cp = CrossedProduct::build(sys, class.clone())?;
        let defect = cp.kernel_defect(&induced)?;
        if defect > KERNEL_RESPECT_TOL {
            return Err(Error::HypothesisViolated(alloc::format!(
                "induced pair does not vanish on ker sigma^R (defect {defect:e})"
            )));
        }
        let induced_in_class = class
            .pairs()
            .iter()
            .any(|p| p.norm() == induced.norm() && p.max_abs_diff(&induced) == 0.0);
        Ok(ChainContext {
            system: sys.clone(),
            weight: weight.clone(),
            class: class.clone(),
            induced,
            induced_in_class,
            m,
        })
    }

    pub fn induced_pair(&self) -> &CovariantPair {
        &self.induced
    }

    pub fn evaluate(&self, f: &AFunction) -> Result<ChainReport> {
        let sys = &self.system;
        let weighted_norm = crate::convolution::weighted_norm(sys, f, &self.weight, 1.0);
        let e = sys.group().identity();
        let lower = weighted_norm / (sys.c_alpha_bounds().upper * self.m * self.weight.at(e));
        let t = self.induced.integrated_form(f)?;
        let induced = op_norm(&t, self.induced.norm(), self.induced.norm());
        let sigma = self.class.seminorm(f)?;
        let rep_upper = if self.induced_in_class {
            1.0
        } else {
            f64::INFINITY
        };
        let rep_lower = if sigma > 1e-12 {
            induced.lower / sigma
        } else {
            0.0
        };
        let induced_rep_norm = Bounds {
            lower: rep_lower.min(rep_upper),
            upper: rep_upper,
        };
        let c_r = self.class.c_r();
        let upper = rep_upper * c_r.upper * weighted_norm;
        let slack = 1e-9;
        let holds = [
            lower <= induced.upper * (1.0 + slack) + 1e-12
                && lower <= induced.lower * (1.0 + slack) + 1e-12,
            induced.lower <= rep_upper * sigma * (1.0 + slack) + 1e-12,
            sigma <= c_r.upper * weighted_norm * (1.0 + slack) + 1e-12,
        ];
        Ok(ChainReport {
            weighted_norm,
            lower,
            induced,
            induced_rep_norm,
            sigma,
            c_r,
            upper,
            holds,
        })
    }
}

/// `T(c) = π⋊U(lift c)` on the crossed product; the pair must vanish on the
/// kernel.
pub fn pair_to_rep(cp: &CrossedProduct, pair: &CovariantPair) -> Result<AlgebraRep> {
    let defect = cp.kernel_defect(pair)?;
    if defect > KERNEL_RESPECT_TOL {
        return Err(Error::KernelNotRespected(defect));
    }
    let q = cp.quotient_dim();
    let images = (0..q)
        .map(|i| {
            let mut e = alloc::vec![ZERO; q];
            e[i] = crate::linalg::ONE;
            pair.integrated_form(&cp.lift(&e))
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraRep::new(cp.structure().clone(), images, kind_of(pair.flavor())?)
}

fn kind_of(flavor: Flavor) -> Result<RepKind> {
    match flavor {
        Flavor::MM => Ok(RepKind::Rep),
        Flavor::AA => Ok(RepKind::AntiRep),
        other => Err(Error::FlavorMismatch(other)),
    }
}

/// `T^{(π,U)}` on the flat basis `δ_s ⊗ e_i` of the Beurling algebra.
pub fn pair_to_beurling_rep(b: &BeurlingAlgebra, pair: &CovariantPair) -> Result<AlgebraRep> {
    if pair.flavor() != Flavor::MM {
        return Err(Error::FlavorMismatch(pair.flavor()));
    }
    beurling_images(b, pair, RepKind::Rep)
}

fn beurling_images(b: &BeurlingAlgebra, pair: &CovariantPair, kind: RepKind) -> Result<AlgebraRep> {
    let n = b.system().group().order();
    let d = b.system().algebra().dim();
    let images = (0..n * d)
        .map(|k| pair.integrated_form(&AFunction::basis(n, d, k)))
        .collect::<Result<Vec<_>>>()?;
    AlgebraRep::new(b.structure(), images, kind)
}

fn left_unit(sys: &DynamicalSystem) -> Result<Vec<C64>> {
    sys.algebra()
        .left_identity()
        .map(<[C64]>::to_vec)
        .ok_or(Error::NoApproximateIdentity("left identity"))
}

/// Recovers `(π^T, U^T)` from a non-degenerate representation `T` whose
/// domain coordinates are given by `embed`: `π^T(a) = T(δ_e ⊗ a)` and
/// `U^T_s = T(δ_s ⊗ u)` for a left identity `u`.
pub fn rep_to_pair_with(
    sys: &DynamicalSystem,
    t: &AlgebraRep,
    embed: impl Fn(&AFunction) -> Vec<C64>,
    norm: SpaceNorm,
) -> Result<CovariantPair> {
    if t.kind != RepKind::Rep {
        return Err(Error::FlavorMismatch(Flavor::AA));
    }
    if !t.non_degenerate {
        return Err(Error::NotNonDegenerate);
    }
    let u = left_unit(sys)?;
    let g = sys.group();
    let alg = sys.algebra();
    let pi = (0..alg.dim())
        .map(|i| {
            t.eval(&embed(&AFunction::delta(
                g.order(),
                g.identity(),
                &alg.basis(i),
            )))
        })
        .collect();
    let us = g
        .elements()
        .map(|s| t.eval(&embed(&AFunction::delta(g.order(), s, &u))))
        .collect();
    CovariantPair::new(sys, pi, us, Flavor::MM, norm)
}

/// Inverse of [`pair_to_rep`].
pub fn rep_to_pair(cp: &CrossedProduct, t: &AlgebraRep, norm: SpaceNorm) -> Result<CovariantPair> {
    rep_to_pair_with(cp.system(), t, |f| cp.q(f), norm)
}

/// Inverse of [`pair_to_beurling_rep`].
pub fn beurling_rep_to_pair(
    b: &BeurlingAlgebra,
    t: &AlgebraRep,
    norm: SpaceNorm,
) -> Result<CovariantPair> {
    rep_to_pair_with(b.system(), t, |f| f.as_slice().to_vec(), norm)
}

/// `T̄(L) = T(L(1))` for a left centralizer `L` of the domain, given as a
/// matrix on domain coordinates.
pub fn centralizer_extend(t: &AlgebraRep, l: &Mat) -> Result<Mat> {
    let d = t.domain.dim();
    if l.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: l.nrows(),
        });
    }
    if !t.non_degenerate {
        return Err(Error::NotNonDegenerate);
    }
    let scale = 1.0 + max_abs(l);
    for j in 0..d {
        let rho = t.domain.right_mult(&basis(d, j));
        if commutator_defect(l, &rho) > 1e-9 * scale * (1.0 + max_abs(&rho)) {
            return Err(Error::NotCentralizer);
        }
    }
    let unit = t
        .domain
        .find_identity()
        .ok_or(Error::NoApproximateIdentity(
            "two-sided identity of the domain",
        ))?;
    Ok(t.eval(&crate::linalg::apply(l, &unit)))
}

fn basis(d: usize, i: usize) -> Vec<C64> {
    let mut e = alloc::vec![ZERO; d];
    e[i] = crate::linalg::ONE;
    e
}

/// `T(f) = Σ_r U_r π(f(r))` for an (a,a) pair; an anti-representation.
pub fn anti_pair_to_antirep(b: &BeurlingAlgebra, pair: &CovariantPair) -> Result<AlgebraRep> {
    if pair.flavor() != Flavor::AA {
        return Err(Error::FlavorMismatch(pair.flavor()));
    }
    beurling_images(b, pair, RepKind::AntiRep)
}

/// Inverse of [`anti_pair_to_antirep`]: `π(a) = T((δ_e ⊗ a)^∨)` and
/// `U_s = T((δ_s ⊗ u)^∨)` for a right identity `u`.
pub fn antirep_to_anti_pair(
    b: &BeurlingAlgebra,
    t: &AlgebraRep,
    norm: SpaceNorm,
) -> Result<CovariantPair> {
    if t.kind != RepKind::AntiRep {
        return Err(Error::FlavorMismatch(Flavor::MM));
    }
    if !t.non_degenerate {
        return Err(Error::NotNonDegenerate);
    }
    let sys = b.system();
    let u = sys
        .algebra()
        .right_identity()
        .map(<[C64]>::to_vec)
        .ok_or(Error::NoApproximateIdentity("right identity"))?;
    let g = sys.group();
    let alg = sys.algebra();
    let one = crate::groups::Character::trivial(g);
    let check = |f: AFunction| crate::convolution::check_anti_iso(sys, &one, &f).into_vec();
    let pi = (0..alg.dim())
        .map(|i| {
            t.eval(&check(AFunction::delta(
                g.order(),
                g.identity(),
                &alg.basis(i),
            )))
        })
        .collect();
    let us = g
        .elements()
        .map(|s| t.eval(&check(AFunction::delta(g.order(), s, &u))))
        .collect();
    CovariantPair::new(sys, pi, us, Flavor::AA, norm)
}

/// The three bounds relating a pair to its integrated form on the Beurling
/// algebra, with `C_U = max_r ‖U_r‖/ω(r)` and `M` the norm of the identity
/// used for reconstruction.
#[derive(Clone, Debug)]
pub struct CorrespondenceBounds {
    pub t_norm: Bounds,
    pub pi_norm: Bounds,
    pub c_u: f64,
    pub u_norms: Vec<Bounds>,
    pub m: f64,
    pub omega_e: f64,
    /// `‖T‖ ≤ C_U ‖π‖`, `‖π‖ ≤ ω(e)‖T‖`, `‖U_s‖ ≤ M ω(e) ‖T‖ ω(s)`.
    pub holds: [bool; 3],
}

impl CorrespondenceBounds {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|h| *h)
    }
}

/// Checks the bounds for an (m,m) or (a,a) pair against its integrated form
/// on `b`; attained values on the left, upper estimates on the right.
pub fn correspondence_bounds(
    b: &BeurlingAlgebra,
    pair: &CovariantPair,
) -> Result<CorrespondenceBounds> {
    let sys = b.system();
    let alg = sys.algebra();
    let t = match pair.flavor() {
        Flavor::MM => pair_to_beurling_rep(b, pair)?,
        _ => anti_pair_to_antirep(b, pair)?,
    };
    let t_norm = t.norm(&b.space_norm(), pair.norm());
    let pi_norm = pair.pi_norm(sys);
    let u_norms = pair.u_norms();
    let w = b.weight();
    let c_u = u_norms
        .iter()
        .enumerate()
        .map(|(r, n)| n.upper / w.at(r))
        .fold(0.0, f64::max);
    let unit = match pair.flavor() {
        Flavor::MM => alg.left_identity(),
        _ => alg.right_identity(),
    };
    let m = unit.map_or(f64::INFINITY, |u| alg.norm(u));
    let omega_e = w.at(sys.group().identity());
    let slack = 1.0 + 1e-9;
    let holds = [
        t_norm.lower <= c_u * pi_norm.upper * slack,
        pi_norm.lower <= omega_e * t_norm.upper * slack,
        u_norms
            .iter()
            .enumerate()
            .all(|(s, n)| n.lower <= m * omega_e * t_norm.upper * w.at(s) * slack),
    ];
    Ok(CorrespondenceBounds {
        t_norm,
        pi_norm,
        c_u,
        u_norms,
        m,
        omega_e,
        holds,
    })
}

/// `sup_r ‖U_r‖/ω(r)`, the norm of `T^U` on `L¹(G, ω)` for one-dimensional
/// `U`.
pub fn classical_norm(weight: &Weight, u: &[Mat]) -> f64 {
    u.iter()
        .enumerate()
        .map(|(r, x)| x[(0, 0)].norm() / weight.at(r))
        .fold(0.0, f64::max)
}

/// The first of the four maps of two pairs that fail to commute.
pub fn pairs_commute(left: &CovariantPair, right: &CovariantPair) -> Option<&'static str> {
    let commute = |a: &[Mat], b: &[Mat]| {
        a.iter().all(|x| {
            b.iter()
                .all(|y| commutator_defect(x, y) <= 1e-10 * (1.0 + max_abs(x)) * (1.0 + max_abs(y)))
        })
    };
    if !commute(left.pi_basis(), right.pi_basis()) {
        Some("pi_m, pi_a")
    } else if !commute(left.pi_basis(), right.u_all()) {
        Some("pi_m, U_a")
    } else if !commute(left.u_all(), right.pi_basis()) {
        Some("U_m, pi_a")
    } else if !commute(left.u_all(), right.u_all()) {
        Some("U_m, U_a")
    } else {
        None
    }
}

/// Largest commutator of the images of two maps.
pub fn reps_commutator(a: &AlgebraRep, b: &AlgebraRep) -> f64 {
    a.images
        .iter()
        .flat_map(|x| b.images.iter().map(move |y| commutator_defect(x, y)))
        .fold(0.0, f64::max)
}

/// A commuting (m,m) pair over one Beurling algebra and (a,a) pair over
/// another, integrated to a representation and an anti-representation.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub t_m: AlgebraRep,
    pub t_a: AlgebraRep,
    pub commutator: f64,
}

pub fn bimodule_correspondence(
    bm: &BeurlingAlgebra,
    ba: &BeurlingAlgebra,
    pm: &CovariantPair,
    pa: &CovariantPair,
) -> Result<Bimodule> {
    if pm.space_dim() != pa.space_dim() {
        return Err(Error::DimensionMismatch {
            expected: pm.space_dim(),
            found: pa.space_dim(),
        });
    }
    if let Some(which) = pairs_commute(pm, pa) {
        return Err(Error::NotCommuting(String::from(which)));
    }
    let t_m = pair_to_beurling_rep(bm, pm)?;
    let t_a = anti_pair_to_antirep(ba, pa)?;
    let commutator = reps_commutator(&t_m, &t_a);
    Ok(Bimodule {
        t_m,
        t_a,
        commutator,
    })
}

/// Inverse of [`bimodule_correspondence`].
pub fn bimodule_inverse(
    bm: &BeurlingAlgebra,
    ba: &BeurlingAlgebra,
    t_m: &AlgebraRep,
    t_a: &AlgebraRep,
    norm: SpaceNorm,
) -> Result<(CovariantPair, CovariantPair)> {
    if reps_commutator(t_m, t_a) > 1e-10 * (1.0 + max_images(t_m)) * (1.0 + max_images(t_a)) {
        return Err(Error::NotCommuting(String::from("T_m, T_a")));
    }
    let pm = beurling_rep_to_pair(bm, t_m, norm.clone())?;
    let pa = antirep_to_anti_pair(ba, t_a, norm)?;
    Ok((pm, pa))
}

fn max_images(t: &AlgebraRep) -> f64 {
    t.images.iter().map(max_abs).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::NormedAlgebra;
    use crate::convolution::{check_conjugator, hat_conjugator, twisted_convolve};
    use crate::fixtures;
    use crate::groups::FiniteGroup;
    use crate::linalg::{identity, max_abs_diff, re, ONE};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn induced_pair_is_blockwise_left_regular_for_trivial_action() {
        let sys = DynamicalSystem::trivial(NormedAlgebra::diag(2), FiniteGroup::cyclic(3));
        let w = Weight::constant(sys.group());
        let p = induced_pair(&sys, &w).unwrap();
        let a = [re(2.0), re(-1.0)];
        let expected = block_diag(&alloc::vec![sys.algebra().left_regular(&a); 3]);
        assert!(max_abs_diff(&p.pi(&a), &expected) < 1e-15);
        assert!(p.is_non_degenerate());
    }

    #[test]
    fn translation_norms_are_weight_ratios() {
        let fx = fixtures::f3();
        let p = induced_pair(&fx.system, &fx.weight).unwrap();
        let g = fx.system.group();
        for (r, n) in p.u_norms().into_iter().enumerate() {
            let expected = g
                .elements()
                .map(|s| fx.weight.at(g.mul(r, s)) / fx.weight.at(s))
                .fold(0.0, f64::max);
            assert!(
                (n.lower - expected).abs() < 1e-12,
                "{r}: {n:?} vs {expected}"
            );
            assert!(n.lower <= fx.weight.at(r) + 1e-12);
        }
        assert!(p.pi_norm(&fx.system).lower <= fx.system.c_alpha_bounds().upper * (1.0 + 1e-9));
    }

    #[test]
    fn pointwise_formula_and_hat_conjugation() {
        let fx = fixtures::f3();
        let sys = &fx.system;
        let p = induced_pair(sys, &fx.weight).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = AFunction::random(6, 4, &mut rng);
        let h = AFunction::random(6, 4, &mut rng);
        let t = p.integrated_form(&f).unwrap();
        let via_matrix = crate::linalg::apply(&t, h.as_slice());
        let pointwise = induced_pointwise(sys, &f, &h);
        assert!(crate::linalg::slice_max_abs_diff(&via_matrix, pointwise.as_slice()) < 1e-12);
        let hh = check_conjugator(sys, &h);
        let lhs = hat_conjugator(sys, &induced_pointwise(sys, &f, &hh));
        let rhs = twisted_convolve(sys, &f, &h).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn no_identity_no_induced_pair() {
        let st = Structure::from_fn(1, |_, _| alloc::vec![ZERO]);
        let alg = NormedAlgebra::new(st, crate::algebras::NormTag::One).unwrap();
        let sys = DynamicalSystem::trivial(alg, FiniteGroup::cyclic(2));
        assert!(matches!(
            induced_pair(&sys, &Weight::constant(sys.group())),
            Err(Error::NoApproximateIdentity(_))
        ));
    }

    #[test]
    fn z2_scalar_roundtrip_by_hand() {
        let sys = DynamicalSystem::trivial(NormedAlgebra::scalars(), FiniteGroup::cyclic(2));
        let b = BeurlingAlgebra::new(sys.clone(), Weight::constant(sys.group())).unwrap();
        let m = |x: f64| Mat::from_element(1, 1, re(x));
        let pair = CovariantPair::new(
            &sys,
            alloc::vec![m(1.0)],
            alloc::vec![m(1.0), m(-1.0)],
            Flavor::MM,
            SpaceNorm::L1(1),
        )
        .unwrap();
        let t = pair_to_beurling_rep(&b, &pair).unwrap();
        let f = AFunction::from_flat(1, alloc::vec![re(3.0), re(5.0)]).unwrap();
        assert_eq!(t.eval(f.as_slice())[(0, 0)], re(-2.0));
        let back = beurling_rep_to_pair(&b, &t, SpaceNorm::L1(1)).unwrap();
        assert_eq!(back.pi_basis()[0][(0, 0)], ONE);
        assert_eq!(back.u(1)[(0, 0)], re(-1.0));
    }

    #[test]
    fn crossed_product_roundtrip_on_s3() {
        let fx = fixtures::f3();
        let induced = induced_pair(&fx.system, &fx.weight).unwrap();
        let class = RepClass::new(&fx.system, alloc::vec![induced.clone()]).unwrap();
        let cp = CrossedProduct::build(&fx.system, class).unwrap();
        assert_eq!(cp.kernel_dim(), 0);
        let t = pair_to_rep(&cp, &induced).unwrap();
        let back = rep_to_pair(&cp, &t, induced.norm().clone()).unwrap();
        assert!(back.max_abs_diff(&induced) < 1e-10);
    }

    #[test]
    fn pairs_outside_the_class_may_not_factor() {
        let fx = fixtures::f1();
        let class = RepClass::new(&fx.system, alloc::vec![fx.pairs[0].clone()]).unwrap();
        let cp = CrossedProduct::build(&fx.system, class).unwrap();
        assert!(matches!(
            pair_to_rep(&cp, &fx.pairs[1]),
            Err(Error::KernelNotRespected(_))
        ));
    }

    #[test]
    fn centralizer_examples() {
        let fx = fixtures::f3();
        let b = fx.beurling();
        let t = pair_to_beurling_rep(&b, &fx.pairs[0]).unwrap();
        let st = b.structure();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let x = crate::linalg::random_vec(st.dim(), &mut rng);
        let l = st.left_mult(&x);
        assert!(max_abs_diff(&centralizer_extend(&t, &l).unwrap(), &t.eval(&x)) < 1e-10);
        let id = identity(st.dim());
        assert!(max_abs_diff(&centralizer_extend(&t, &id).unwrap(), &identity(2)) < 1e-10);
        let r = st.right_mult(&x);
        assert!(matches!(
            centralizer_extend(&t, &r),
            Err(Error::NotCentralizer)
        ));
    }

    #[test]
    fn anti_roundtrip_on_the_flip_fixture() {
        let fx = fixtures::f2();
        let b = fx.beurling();
        let pair = crate::convolution::table2_action(&fx.system, 13, &fx.character).unwrap();
        let t = anti_pair_to_antirep(&b, &pair).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let f = AFunction::random(2, 2, &mut rng);
        let g = AFunction::random(2, 2, &mut rng);
        let fg = b.multiply(&f, &g).unwrap();
        let lhs = t.eval(fg.as_slice());
        let rhs = t.eval(g.as_slice()) * t.eval(f.as_slice());
        assert!(max_abs_diff(&lhs, &rhs) < 1e-10);
        let back = antirep_to_anti_pair(&b, &t, pair.norm().clone()).unwrap();
        assert!(back.max_abs_diff(&pair) < 1e-10);
        assert!(correspondence_bounds(&b, &pair).unwrap().all_hold());
    }

    #[test]
    fn anti_roundtrip_without_left_identity() {
        let fx = fixtures::f4();
        let b = fx.beurling();
        let pair = crate::convolution::table2_action(&fx.system, 13, &fx.character).unwrap();
        let t = anti_pair_to_antirep(&b, &pair).unwrap();
        if t.is_non_degenerate() {
            let back = antirep_to_anti_pair(&b, &t, pair.norm().clone()).unwrap();
            assert!(back.max_abs_diff(&pair) < 1e-10);
        }
    }

    #[test]
    fn trivial_bimodule_commutes() {
        let sys = DynamicalSystem::trivial(NormedAlgebra::scalars(), FiniteGroup::cyclic(2));
        let b = BeurlingAlgebra::new(sys.clone(), Weight::constant(sys.group())).unwrap();
        let one = || Mat::from_element(1, 1, ONE);
        let pm = CovariantPair::new(
            &sys,
            alloc::vec![one()],
            alloc::vec![one(), one()],
            Flavor::MM,
            SpaceNorm::L2(1),
        )
        .unwrap();
        let pa = CovariantPair::new(
            &sys,
            alloc::vec![one()],
            alloc::vec![one(), one()],
            Flavor::AA,
            SpaceNorm::L2(1),
        )
        .unwrap();
        let bm = bimodule_correspondence(&b, &b, &pm, &pa).unwrap();
        assert_eq!(bm.commutator, 0.0);
        let (m2, a2) = bimodule_inverse(&b, &b, &bm.t_m, &bm.t_a, SpaceNorm::L2(1)).unwrap();
        assert_eq!(m2.max_abs_diff(&pm), 0.0);
        assert_eq!(a2.max_abs_diff(&pa), 0.0);
    }
}
