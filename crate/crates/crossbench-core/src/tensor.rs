//! Projective tensor products, the ⊙-product of commuting representations
//! and its inverse.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebras::{NormTag, NormedAlgebra, Structure};
use crate::correspondence::{pair_to_rep, rep_to_pair, reps_commutator, AlgebraRep};
use crate::crossed::{CovariantPair, CrossedProduct};
use crate::error::{Error, Result};
use crate::linalg::{
    inverse, max_abs, random_invertible, unitary_near_identity, unvec, Mat, C64, ONE, ZERO,
};
use crate::norms::{Bounds, SpaceNorm};

const COMMUTE_TOL: f64 = 1e-10;
const ESTIMATOR_SEED: u64 = 0x7e50_4a11;

/// `B₁ ⊗ … ⊗ B_n` with Kronecker structure constants; index
/// `(i₁, …, i_n)` is row-major.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    factors: Vec<NormedAlgebra>,
    structure: Structure,
}

impl TensorAlgebra {
    pub fn new(factors: Vec<NormedAlgebra>) -> Result<Self> {
        let first = factors.first().ok_or(Error::EmptyClass)?;
        let structure = factors[1..]
            .iter()
            .fold(first.structure().clone(), |acc, f| acc.kron(f.structure()));
        Ok(TensorAlgebra { factors, structure })
    }

    pub fn factors(&self) -> &[NormedAlgebra] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(NormedAlgebra::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn multiply(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        self.structure.multiply(x, y)
    }

    /// `x₁ ⊗ … ⊗ x_n`.
    pub fn elementary(&self, parts: &[&[C64]]) -> Vec<C64> {
        kron_vectors(parts)
    }

    /// Tensor product of the factor identities, when all exist.
    pub fn identity(&self) -> Option<Vec<C64>> {
        let units: Option<Vec<&[C64]>> = self.factors.iter().map(|f| f.identity()).collect();
        Some(kron_vectors(&units?))
    }

    /// Projective norm bracket for a two-factor product.
    pub fn projective_norm_bounds(&self, t: &[C64], iterations: usize) -> Option<Bounds> {
        match &self.factors[..] {
            [a, b] => Some(projective_norm_bounds(t, a, b, iterations)),
            _ => None,
        }
    }
}

pub fn kron_vectors(parts: &[&[C64]]) -> Vec<C64> {
    parts.iter().fold(alloc::vec![ONE], |acc, p| {
        acc.iter()
            .flat_map(|a| p.iter().map(move |b| a * b))
            .collect()
    })
}

/// Cost `Σ_k ‖x_k‖‖y_k‖` of `t = Σ_k X[:,k] ⊗ Y[k,:]`.
fn cost(x: &Mat, y: &Mat, a1: &NormedAlgebra, a2: &NormedAlgebra) -> f64 {
    (0..x.ncols())
        .map(|k| {
            let col: Vec<C64> = x.column(k).iter().copied().collect();
            let row: Vec<C64> = y.row(k).iter().copied().collect();
            a1.norm(&col) * a2.norm(&row)
        })
        .sum()
}

/// A functional of dual norm one with `φ(v) = ‖v‖`, as coefficients of the
/// bilinear pairing `Σ φ_k v_k`.
fn norming_functional(alg: &NormedAlgebra, v: &[C64]) -> Vec<C64> {
    let d = v.len();
    let phase = |z: C64| {
        if z.norm() > 0.0 {
            (z / z.norm()).conj()
        } else {
            ONE
        }
    };
    match alg.tag() {
        NormTag::Sup => {
            let k = (0..d)
                .max_by(|&i, &j| v[i].norm().total_cmp(&v[j].norm()))
                .unwrap_or(0);
            let mut phi = alloc::vec![ZERO; d];
            if d > 0 {
                phi[k] = phase(v[k]);
            }
            phi
        }
        NormTag::One => v.iter().map(|z| phase(*z)).collect(),
        NormTag::Operator(n) => {
            let x = unvec(n, v);
            let svd = x.svd(true, true);
            let (Some(u), Some(v_t)) = (svd.u, svd.v_t) else {
                return alloc::vec![ZERO; d];
            };
            let top = (0..n)
                .max_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]))
                .unwrap_or(0);
            let mut phi = alloc::vec![ZERO; d];
            for a in 0..n {
                for b in 0..n {
                    phi[a * n + b] = u[(a, top)].conj() * v_t[(top, b)].conj();
                }
            }
            phi
        }
    }
}

fn pair_value(phi: &[C64], t: &Mat, psi: &[C64]) -> f64 {
    let mut s = ZERO;
    for i in 0..t.nrows() {
        for j in 0..t.ncols() {
            s += phi[i] * t[(i, j)] * psi[j];
        }
    }
    s.norm()
}

/// Two-sided estimate of the projective norm of `t ∈ A₁ ⊗ A₂`.
///
/// The upper end is the cheapest decomposition found among the basis,
/// row, column and singular value expansions and randomly mixed ones; the
/// lower end is `|φ ⊗ ψ(t)|` for norming functionals found by alternation.
pub fn projective_norm_bounds(
    t: &[C64],
    a1: &NormedAlgebra,
    a2: &NormedAlgebra,
    iterations: usize,
) -> Bounds {
    let (d1, d2) = (a1.dim(), a2.dim());
    debug_assert_eq!(t.len(), d1 * d2);
    if t.iter().all(|z| *z == ZERO) {
        return Bounds::exact(0.0);
    }
    let tm = Mat::from_row_slice(d1, d2, t);
    let eye = |n| crate::linalg::identity(n);

    let mut upper = f64::INFINITY;
    upper = upper.min(cost(&eye(d1), &tm, a1, a2));
    upper = upper.min(cost(&tm, &eye(d2), a1, a2));
    let basis: f64 = (0..d1)
        .flat_map(|i| (0..d2).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut ei = alloc::vec![ZERO; d1];
            ei[i] = ONE;
            let mut ej = alloc::vec![ZERO; d2];
            ej[j] = ONE;
            tm[(i, j)].norm() * a1.norm(&ei) * a2.norm(&ej)
        })
        .sum();
    upper = upper.min(basis);
    let svd = tm.clone().svd(true, true);
    if let (Some(u), Some(v_t)) = (svd.u.as_ref(), svd.v_t.as_ref()) {
        let k = svd.singular_values.len();
        let x = Mat::from_fn(d1, k, |i, c| u[(i, c)] * svd.singular_values[c]);
        upper = upper.min(cost(&x, &v_t.rows(0, k).clone_owned(), a1, a2));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(ESTIMATOR_SEED);
    let mut best_w: Option<Mat> = None;
    for it in 0..iterations {
        let w = match (&best_w, it % 2) {
            (Some(w), 1) => w * unitary_near_identity(d2, 0.3, &mut rng),
            _ => random_invertible(d2, &mut rng),
        };
        let Some(w_inv) = inverse(&w) else { continue };
        let c = cost(&(&tm * &w), &w_inv, a1, a2);
        if c < upper {
            upper = c;
            best_w = Some(w);
        }
    }

    let mut lower: f64 = 0.0;
    let mut starts: Vec<Vec<C64>> = Vec::new();
    for j in 0..d2 {
        let col: Vec<C64> = tm.row(0).iter().map(|_| ZERO).collect();
        let _ = col;
        let mut e = alloc::vec![ZERO; d2];
        e[j] = ONE;
        starts.push(norming_functional(a2, &e));
    }
    for i in 0..d1 {
        let row: Vec<C64> = tm.row(i).iter().copied().collect();
        starts.push(norming_functional(a2, &row));
    }
    for _ in 0..iterations.min(8) {
        let r = crate::linalg::random_vec(d2, &mut rng);
        starts.push(norming_functional(a2, &r));
    }
    for mut psi in starts {
        for _ in 0..8 {
            let v: Vec<C64> = (0..d1)
                .map(|i| (0..d2).map(|j| tm[(i, j)] * psi[j]).sum())
                .collect();
            let phi = norming_functional(a1, &v);
            lower = lower.max(pair_value(&phi, &tm, &psi));
            let w: Vec<C64> = (0..d2)
                .map(|j| (0..d1).map(|i| phi[i] * tm[(i, j)]).sum())
                .collect();
            psi = norming_functional(a2, &w);
            lower = lower.max(pair_value(&phi, &tm, &psi));
        }
    }
    Bounds {
        lower,
        upper: upper.max(lower),
    }
}

fn check_commuting(reps: &[&AlgebraRep]) -> Result<()> {
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let scale = (1.0 + max_images(reps[i])) * (1.0 + max_images(reps[j]));
            if reps_commutator(reps[i], reps[j]) > COMMUTE_TOL * scale {
                return Err(Error::NotCommuting(format!("{i}, {j}")));
            }
        }
    }
    Ok(())
}

fn max_images(t: &AlgebraRep) -> f64 {
    t.images().iter().map(max_abs).fold(0.0, f64::max)
}

/// `(π₁ ⊙ π₂)(b₁ ⊗ b₂) = π₁(b₁)π₂(b₂)` for commuting maps of the same kind.
pub fn odot(p1: &AlgebraRep, p2: &AlgebraRep) -> Result<AlgebraRep> {
    if p1.target_dim() != p2.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: p1.target_dim(),
            found: p2.target_dim(),
        });
    }
    if p1.kind() != p2.kind() {
        return Err(Error::HypothesisViolated(String::from(
            "factors must both be representations or both anti-representations",
        )));
    }
    check_commuting(&[p1, p2])?;
    let images = p1
        .images()
        .iter()
        .flat_map(|x| p2.images().iter().map(move |y| x * y))
        .collect();
    AlgebraRep::new(p1.domain().kron(p2.domain()), images, p1.kind())
}

/// Splits `π` on `B₁ ⊗ B₂` into `π₁(b) = π(b ⊗ 1)` and `π₂(b) = π(1 ⊗ b)`.
pub fn decompose_rep(
    pi: &AlgebraRep,
    f1: &Structure,
    f2: &Structure,
) -> Result<(AlgebraRep, AlgebraRep)> {
    let mut parts = decompose_n(pi, &[f1, f2])?;
    let second = parts.pop().expect("two factors");
    let first = parts.pop().expect("two factors");
    Ok((first, second))
}

fn decompose_n(pi: &AlgebraRep, factors: &[&Structure]) -> Result<Vec<AlgebraRep>> {
    let total: usize = factors.iter().map(|f| f.dim()).product();
    if total != pi.domain().dim() {
        return Err(Error::DimensionMismatch {
            expected: pi.domain().dim(),
            found: total,
        });
    }
    if !pi.is_non_degenerate() {
        return Err(Error::NotNonDegenerate);
    }
    let units = factors
        .iter()
        .map(|f| {
            f.find_identity()
                .ok_or(Error::NoApproximateIdentity("unital tensor factors"))
        })
        .collect::<Result<Vec<_>>>()?;
    factors
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let images = (0..f.dim())
                .map(|i| {
                    let mut e = alloc::vec![ZERO; f.dim()];
                    e[i] = ONE;
                    let parts: Vec<&[C64]> = units
                        .iter()
                        .enumerate()
                        .map(|(j, u)| if j == k { e.as_slice() } else { u.as_slice() })
                        .collect();
                    pi.eval(&kron_vectors(&parts))
                })
                .collect();
            AlgebraRep::new((*f).clone(), images, pi.kind())
        })
        .collect()
}

/// `ρ₁ = cπ₁`, `ρ₂ = π₂/c` for each `c`: whether both stay multiplicative
/// and still multiply to `π₁ ⊙ π₂`.
pub fn uniqueness_sweep(
    p1: &AlgebraRep,
    p2: &AlgebraRep,
    scalars: &[C64],
) -> Result<Vec<(C64, bool)>> {
    let target = odot(p1, p2)?;
    Ok(scalars
        .iter()
        .map(|&c| {
            let scaled = |p: &AlgebraRep, k: C64| {
                AlgebraRep::new(
                    p.domain().clone(),
                    p.images().iter().map(|x| x * k).collect(),
                    p.kind(),
                )
            };
            let ok = match (scaled(p1, c), scaled(p2, ONE / c)) {
                (Ok(r1), Ok(r2)) => odot(&r1, &r2)
                    .map(|t| t.max_abs_diff(&target) < 1e-10)
                    .unwrap_or(false),
                _ => false,
            };
            (c, ok)
        })
        .collect())
}

/// The ⊙-product of the crossed-product representations of commuting pairs.
pub fn n_fold_correspondence(
    cps: &[&CrossedProduct],
    pairs: &[&CovariantPair],
) -> Result<AlgebraRep> {
    if cps.len() != pairs.len() || cps.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: cps.len(),
            found: pairs.len(),
        });
    }
    let reps = cps
        .iter()
        .zip(pairs)
        .map(|(cp, p)| pair_to_rep(cp, p))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&AlgebraRep> = reps.iter().collect();
    check_commuting(&refs)?;
    let mut acc = reps[0].clone();
    for r in &reps[1..] {
        acc = odot(&acc, r)?;
    }
    Ok(acc)
}

/// Inverse of [`n_fold_correspondence`]; `norms[i]` is the norm of the
/// common space for the i-th recovered pair.
pub fn n_fold_inverse(
    rep: &AlgebraRep,
    cps: &[&CrossedProduct],
    norms: &[SpaceNorm],
) -> Result<Vec<CovariantPair>> {
    let factors: Vec<&Structure> = cps.iter().map(|cp| cp.structure()).collect();
    let parts = decompose_n(rep, &factors)?;
    parts
        .iter()
        .zip(cps)
        .zip(norms)
        .map(|((t, cp), norm)| rep_to_pair(cp, t, norm.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::RepKind;
    use crate::linalg::{max_abs_diff, random_vec, re};
    use rand::Rng;

    fn diag_rep(values: [[f64; 2]; 2], left: bool) -> AlgebraRep {
        let st = NormedAlgebra::diag(2).structure().clone();
        let images = values
            .iter()
            .map(|v| {
                let d = Mat::from_row_slice(2, 2, &[re(v[0]), ZERO, ZERO, re(v[1])]);
                if left {
                    crate::linalg::kron(&d, &crate::linalg::identity(2))
                } else {
                    crate::linalg::kron(&crate::linalg::identity(2), &d)
                }
            })
            .collect();
        AlgebraRep::new(st, images, RepKind::Rep).unwrap()
    }

    #[test]
    fn kronecker_structure_is_associative() {
        let t = TensorAlgebra::new(alloc::vec![
            NormedAlgebra::diag(2),
            NormedAlgebra::matrix(2)
        ])
        .unwrap();
        assert_eq!(t.dim(), 8);
        assert!(t.structure().associativity_defect().0 < 1e-14);
        let a = [re(1.0), re(2.0)];
        let b = [re(1.0), re(0.0), re(0.0), re(-1.0)];
        let x = t.elementary(&[&a, &b]);
        let xx = t.multiply(&x, &x);
        let expected = t.elementary(&[&[re(1.0), re(4.0)], &[ONE, ZERO, ZERO, ONE]]);
        assert!(crate::linalg::slice_max_abs_diff(&xx, &expected) < 1e-14);
    }

    #[test]
    fn projective_bounds_basics() {
        let s = NormedAlgebra::scalars();
        assert_eq!(
            projective_norm_bounds(&[ZERO], &s, &s, 10),
            Bounds::exact(0.0)
        );
        let b = projective_norm_bounds(&[C64::new(3.0, 4.0)], &s, &s, 10);
        assert!((b.lower - 5.0).abs() < 1e-12 && (b.upper - 5.0).abs() < 1e-12);
        let d = NormedAlgebra::diag(2);
        let o = NormedAlgebra::column();
        let x = [re(1.0), re(-3.0)];
        let y = [re(2.0), C64::new(0.0, 1.0)];
        let t = kron_vectors(&[&x, &y]);
        let b = projective_norm_bounds(&t, &d, &o, 20);
        assert!((b.lower - 9.0).abs() < 1e-10, "{b:?}");
        assert!((b.upper - 9.0).abs() < 1e-10, "{b:?}");
    }

    #[test]
    fn projective_lower_never_exceeds_upper() {
        let m = NormedAlgebra::matrix(2);
        let d = NormedAlgebra::diag(2);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let t = random_vec(8, &mut rng);
            let b = projective_norm_bounds(&t, &m, &d, 10);
            assert!(b.lower <= b.upper * (1.0 + 1e-12));
            assert!(b.lower > 0.0);
        }
    }

    #[test]
    fn odot_of_commuting_diagonals() {
        let p1 = diag_rep([[1.0, 0.0], [0.0, 1.0]], true);
        let p2 = diag_rep([[1.0, 0.0], [0.0, 1.0]], false);
        let t = odot(&p1, &p2).unwrap();
        assert!(t.is_non_degenerate());
        assert!(max_abs_diff(&t.images()[0], &(&p1.images()[0] * &p2.images()[0])) == 0.0);
        let (q1, q2) = decompose_rep(&t, p1.domain(), p2.domain()).unwrap();
        assert!(q1.max_abs_diff(&p1) < 1e-12 && q2.max_abs_diff(&p2) < 1e-12);
        let again = odot(&q1, &q2).unwrap();
        assert!(again.max_abs_diff(&t) < 1e-12);
    }

    #[test]
    fn non_commuting_factors_are_rejected() {
        let st = NormedAlgebra::scalars().structure().clone();
        let a = AlgebraRep::new(
            st.clone(),
            alloc::vec![crate::linalg::identity(2)],
            RepKind::Rep,
        )
        .unwrap();
        let swap = Mat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let proj = Mat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]);
        let b = AlgebraRep::new(st.clone(), alloc::vec![proj], RepKind::Rep).unwrap();
        let c = AlgebraRep::new(st, alloc::vec![&swap * &swap], RepKind::Rep).unwrap();
        assert!(odot(&a, &b).is_ok());
        let _ = c;
        let d2 = NormedAlgebra::diag(2).structure().clone();
        let e = AlgebraRep::new(
            d2,
            alloc::vec![
                Mat::from_row_slice(2, 2, &[re(0.5), re(0.5), re(0.5), re(0.5)]),
                Mat::from_row_slice(2, 2, &[re(0.5), re(-0.5), re(-0.5), re(0.5)]),
            ],
            RepKind::Rep,
        )
        .unwrap();
        let f = diag_rep([[1.0, 0.0], [0.0, 1.0]], true);
        let _ = f;
        let g = AlgebraRep::new(
            NormedAlgebra::diag(2).structure().clone(),
            alloc::vec![
                Mat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]),
                Mat::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE]),
            ],
            RepKind::Rep,
        )
        .unwrap();
        assert!(matches!(odot(&e, &g), Err(Error::NotCommuting(_))));
    }

    #[test]
    fn only_the_unit_scalar_survives_the_sweep() {
        let p1 = diag_rep([[1.0, 0.0], [0.0, 1.0]], true);
        let p2 = diag_rep([[1.0, 0.0], [0.0, 1.0]], false);
        let scalars = [ONE, re(2.0), re(-1.0), C64::new(0.0, 1.0), re(0.5)];
        let sweep = uniqueness_sweep(&p1, &p2, &scalars).unwrap();
        let passing: Vec<C64> = sweep
            .iter()
            .filter(|(_, ok)| *ok)
            .map(|(c, _)| *c)
            .collect();
        assert_eq!(passing, alloc::vec![ONE]);
    }

    #[test]
    fn odot_norm_bound_on_random_tensors() {
        let p1 = diag_rep([[1.0, 0.0], [0.0, 1.0]], true);
        let p2 = diag_rep([[1.0, 0.0], [0.0, 1.0]], false);
        let t = odot(&p1, &p2).unwrap();
        let d = NormedAlgebra::diag(2);
        let space = SpaceNorm::L2(4);
        let n1 = p1.norm(&d.space_norm(), &space).upper;
        let n2 = p2.norm(&d.space_norm(), &space).upper;
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..20 {
            let x: Vec<C64> = (0..4)
                .map(|_| C64::new(rng.random(), rng.random()))
                .collect();
            let b = projective_norm_bounds(&x, &d, &d, 10);
            let lhs = crate::linalg::spectral_norm(&t.eval(&x));
            assert!(lhs <= n1 * n2 * b.upper * (1.0 + 1e-9));
        }
    }
}
