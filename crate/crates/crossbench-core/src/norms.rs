//! Norms on coefficient spaces and two-sided estimates of operator norms.
//!
//! Operator norms out of ℓ¹-type spaces are exact (extreme points are the
//! basis directions), ℓ²→ℓ² and ℓ^∞→ℓ^∞ norms have closed forms, and every
//! other case is bracketed: the lower bound is a value attained at an
//! explicit unit vector, the upper bound is a triangle or Lipschitz estimate.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{
    apply, cis, gaussian, identity, random_unitary, spectral_norm, unitary_near_identity, unvec,
    vectorize, Mat, C64, ONE, ZERO,
};

const PHASES: usize = 64;
const FULL_GRID_LIMIT: usize = 4096;
const RESTARTS: usize = 6;
const CLIMB_STEPS: usize = 40;
const SEARCH_SEED: u64 = 0x5eed_ba11;

/// A norm on `ℂ^dim`.
#[derive(Clone, Debug, PartialEq)]
pub enum SpaceNorm {
    L1(usize),
    L2(usize),
    LInf(usize),
    /// Operator norm of an n×n matrix stored row-major; dimension n².
    Spectral(usize),
    /// `Σ_s w_s ‖x_s‖` over consecutive blocks normed by `inner`.
    Weighted {
        weights: Vec<f64>,
        inner: Box<SpaceNorm>,
    },
}

impl SpaceNorm {
    pub fn weighted(weights: Vec<f64>, inner: SpaceNorm) -> Self {
        SpaceNorm::Weighted {
            weights,
            inner: Box::new(inner),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SpaceNorm::L1(d) | SpaceNorm::L2(d) | SpaceNorm::LInf(d) => *d,
            SpaceNorm::Spectral(n) => n * n,
            SpaceNorm::Weighted { weights, inner } => weights.len() * inner.dim(),
        }
    }

    pub fn eval(&self, x: &[C64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        match self {
            SpaceNorm::L1(_) => x.iter().map(|z| z.norm()).sum(),
            SpaceNorm::L2(_) => libm::sqrt(x.iter().map(|z| z.norm_sqr()).sum()),
            SpaceNorm::LInf(_) => x.iter().fold(0.0, |acc, z| acc.max(z.norm())),
            SpaceNorm::Spectral(n) => spectral_norm(&unvec(*n, x)),
            SpaceNorm::Weighted { weights, inner } => {
                let b = inner.dim();
                weights
                    .iter()
                    .enumerate()
                    .map(|(s, w)| w * inner.eval(&x[s * b..(s + 1) * b]))
                    .sum()
            }
        }
    }

    /// The exponent of a plain coordinate norm, if this is one.
    pub fn coordinate_p(&self) -> Option<f64> {
        match self {
            SpaceNorm::L1(_) => Some(1.0),
            SpaceNorm::L2(_) => Some(2.0),
            SpaceNorm::LInf(_) => Some(f64::INFINITY),
            _ => None,
        }
    }

    /// Same norm type in another dimension; only defined for coordinate norms.
    pub fn with_dim(&self, dim: usize) -> Option<SpaceNorm> {
        match self {
            SpaceNorm::L1(_) => Some(SpaceNorm::L1(dim)),
            SpaceNorm::L2(_) => Some(SpaceNorm::L2(dim)),
            SpaceNorm::LInf(_) => Some(SpaceNorm::LInf(dim)),
            _ => None,
        }
    }
}

/// A bracket `lower ≤ true value ≤ upper`; the lower end is always attained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Bounds {
    pub fn exact(v: f64) -> Self {
        Bounds { lower: v, upper: v }
    }

    /// Best available estimate.
    pub fn value(&self) -> f64 {
        self.lower
    }

    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn is_exact(&self) -> bool {
        self.upper <= self.lower * (1.0 + 1e-12) + 1e-15
    }

    pub fn scale(self, k: f64) -> Self {
        Bounds {
            lower: self.lower * k,
            upper: self.upper * k,
        }
    }

    pub fn max(self, other: Bounds) -> Self {
        Bounds {
            lower: self.lower.max(other.lower),
            upper: self.upper.max(other.upper),
        }
    }
}

impl core::ops::Mul for Bounds {
    type Output = Bounds;

    fn mul(self, other: Bounds) -> Bounds {
        Bounds {
            lower: self.lower * other.lower,
            upper: self.upper * other.upper,
        }
    }
}

/// Supremum of a seminorm-valued function over the unit ball of `src`.
///
/// `f` must be absolutely homogeneous and convex (typically `x ↦ ‖T x‖`);
/// it reports its own value as bounds so that nested estimates compose.
pub fn ball_sup<F>(src: &SpaceNorm, mut f: F) -> Bounds
where
    F: FnMut(&[C64]) -> Bounds,
{
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    sup_dyn(src, &mut f, &mut rng)
}

fn sup_dyn(src: &SpaceNorm, f: &mut dyn FnMut(&[C64]) -> Bounds, rng: &mut ChaCha8Rng) -> Bounds {
    match src {
        SpaceNorm::L1(d) => basis_values(*d, f)
            .into_iter()
            .fold(Bounds::exact(0.0), Bounds::max),
        SpaceNorm::LInf(d) => torus_sup(*d, f, rng),
        SpaceNorm::L2(d) => sphere_sup(*d, f, rng),
        SpaceNorm::Spectral(n) => unitary_sup(*n, f, rng),
        SpaceNorm::Weighted { weights, inner } => {
            let b = inner.dim();
            let total = weights.len() * b;
            let mut best = Bounds::exact(0.0);
            for (r, w) in weights.iter().enumerate() {
                let mut buf = alloc::vec![ZERO; total];
                let mut g = |x: &[C64]| {
                    buf[r * b..(r + 1) * b].copy_from_slice(x);
                    f(&buf)
                };
                best = best.max(sup_dyn(inner, &mut g, rng).scale(1.0 / w));
            }
            best
        }
    }
}

fn basis_values(d: usize, f: &mut dyn FnMut(&[C64]) -> Bounds) -> Vec<Bounds> {
    let mut e = alloc::vec![ZERO; d];
    (0..d)
        .map(|i| {
            e[i] = ONE;
            let v = f(&e);
            e[i] = ZERO;
            v
        })
        .collect()
}

struct Best {
    lower: f64,
    upper: f64,
    arg: Vec<C64>,
}

impl Best {
    fn new(d: usize) -> Self {
        Best {
            lower: 0.0,
            upper: 0.0,
            arg: alloc::vec![ZERO; d],
        }
    }

    fn offer(&mut self, x: &[C64], v: Bounds) -> bool {
        self.upper = self.upper.max(v.upper);
        if v.lower > self.lower {
            self.lower = v.lower;
            self.arg.clear();
            self.arg.extend_from_slice(x);
            true
        } else {
            false
        }
    }
}

/// Unit ball of ℓ^∞: the supremum sits on the torus of unimodular vectors.
fn torus_sup(d: usize, f: &mut dyn FnMut(&[C64]) -> Bounds, rng: &mut ChaCha8Rng) -> Bounds {
    if d == 0 {
        return Bounds::exact(0.0);
    }
    let basis = basis_values(d, f);
    if d == 1 {
        return basis[0];
    }
    let triangle: f64 = basis.iter().map(|b| b.upper).sum();
    let tail: f64 = basis[1..].iter().map(|b| b.upper).sum();
    let grid: Vec<C64> = (0..PHASES)
        .map(|k| cis(2.0 * PI * k as f64 / PHASES as f64))
        .collect();
    let mut best = Best::new(d);
    let cells = PHASES.checked_pow((d - 1) as u32).unwrap_or(usize::MAX);
    if cells <= FULL_GRID_LIMIT {
        let mut idx = alloc::vec![0usize; d];
        let mut x = alloc::vec![ONE; d];
        loop {
            for k in 1..d {
                x[k] = grid[idx[k]];
            }
            let v = f(&x);
            best.offer(&x, v);
            let mut k = 1;
            while k < d {
                idx[k] += 1;
                if idx[k] < PHASES {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == d {
                break;
            }
        }
        let chord = 2.0 * libm::sin(PI / (2.0 * PHASES as f64));
        let upper = triangle.min(best.upper + chord * tail);
        return Bounds {
            lower: best.lower,
            upper: upper.max(best.lower),
        };
    }
    // Too many cells: coordinate ascent over phases from several starts.
    for start in 0..=RESTARTS {
        let mut x: Vec<C64> = if start == 0 {
            alloc::vec![ONE; d]
        } else {
            (0..d).map(|_| grid[rng.random_range(0..PHASES)]).collect()
        };
        let mut current = f(&x).lower;
        for _sweep in 0..6 {
            let mut improved = false;
            for k in 1..d {
                let keep = x[k];
                let mut best_phase = keep;
                for g in &grid {
                    x[k] = *g;
                    let v = f(&x);
                    best.offer(&x, v);
                    if v.lower > current * (1.0 + 1e-12) {
                        current = v.lower;
                        best_phase = *g;
                        improved = true;
                    }
                }
                x[k] = best_phase;
            }
            if !improved {
                break;
            }
        }
    }
    Bounds {
        lower: best.lower,
        upper: triangle.max(best.lower),
    }
}

fn normalize(x: &mut [C64]) {
    let n = libm::sqrt(x.iter().map(|z| z.norm_sqr()).sum());
    if n > 0.0 {
        for z in x.iter_mut() {
            *z /= n;
        }
    }
}

/// Unit ball of ℓ²: random starts followed by a shrinking-step ascent.
fn sphere_sup(d: usize, f: &mut dyn FnMut(&[C64]) -> Bounds, rng: &mut ChaCha8Rng) -> Bounds {
    if d == 0 {
        return Bounds::exact(0.0);
    }
    let basis = basis_values(d, f);
    let upper = libm::sqrt(basis.iter().map(|b| b.upper * b.upper).sum());
    let mut best = Best::new(d);
    let mut e = alloc::vec![ZERO; d];
    for (i, v) in basis.iter().enumerate() {
        e[i] = ONE;
        best.offer(&e, *v);
        e[i] = ZERO;
    }
    let mut ones = alloc::vec![ONE; d];
    normalize(&mut ones);
    let v = f(&ones);
    best.offer(&ones, v);
    for _ in 0..RESTARTS {
        let mut x: Vec<C64> = (0..d)
            .map(|_| C64::new(gaussian(rng), gaussian(rng)))
            .collect();
        normalize(&mut x);
        let v = f(&x);
        best.offer(&x, v);
    }
    let mut step = 0.5;
    for _ in 0..CLIMB_STEPS {
        let mut x: Vec<C64> = best
            .arg
            .iter()
            .map(|z| z + C64::new(gaussian(rng), gaussian(rng)) * step)
            .collect();
        normalize(&mut x);
        let v = f(&x);
        if !best.offer(&x, v) {
            step *= 0.85;
        }
    }
    Bounds {
        lower: best.lower,
        upper: upper.max(best.lower),
    }
}

/// Unit ball of (M_n, operator norm): the convex hull of the unitaries.
fn unitary_sup(n: usize, f: &mut dyn FnMut(&[C64]) -> Bounds, rng: &mut ChaCha8Rng) -> Bounds {
    if n == 0 {
        return Bounds::exact(0.0);
    }
    let basis = basis_values(n * n, f);
    let sum: f64 = basis.iter().map(|b| b.upper).sum();
    let frob = libm::sqrt(n as f64) * libm::sqrt(basis.iter().map(|b| b.upper * b.upper).sum());
    let upper = sum.min(frob);

    let mut candidates: Vec<Mat> = Vec::new();
    candidates.push(identity(n));
    if n <= 4 {
        for signs in 0..(1usize << (n - 1)) {
            let mut d = identity(n);
            for k in 1..n {
                if signs & (1 << (k - 1)) != 0 {
                    d[(k, k)] = -ONE;
                }
            }
            let mut p = Mat::zeros(n, n);
            for k in 0..n {
                p[(k, (k + 1) % n)] = d[(k, k)];
            }
            candidates.push(d);
            candidates.push(p);
        }
    }
    for _ in 0..RESTARTS {
        candidates.push(random_unitary(n, rng));
    }
    let mut best = Best::new(n * n);
    let mut scored: Vec<(f64, Mat)> = Vec::with_capacity(candidates.len());
    for u in candidates {
        let x = vectorize(&u);
        let v = f(&x);
        best.offer(&x, v);
        scored.push((v.lower, u));
    }
    scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(core::cmp::Ordering::Equal));
    for (start_value, start) in scored.into_iter().take(2) {
        let mut current = start;
        let mut value = start_value;
        let mut eps = 0.6;
        for _ in 0..CLIMB_STEPS {
            let trial = &current * unitary_near_identity(n, eps, rng);
            let x = vectorize(&trial);
            let v = f(&x).scale(1.0 / spectral_norm(&trial));
            best.offer(&x, v);
            if v.lower > value {
                value = v.lower;
                current = trial;
            } else {
                eps *= 0.85;
            }
        }
    }
    Bounds {
        lower: best.lower,
        upper: upper.max(best.lower),
    }
}

/// Operator norm of `m : (ℂ^k, src) → (ℂ^l, dst)`.
pub fn op_norm(m: &Mat, src: &SpaceNorm, dst: &SpaceNorm) -> Bounds {
    debug_assert_eq!(m.ncols(), src.dim());
    debug_assert_eq!(m.nrows(), dst.dim());
    match (src, dst) {
        (SpaceNorm::L2(_), SpaceNorm::L2(_)) => Bounds::exact(spectral_norm(m)),
        (SpaceNorm::LInf(_), SpaceNorm::LInf(_)) => Bounds::exact(
            (0..m.nrows())
                .map(|i| m.row(i).iter().map(|z| z.norm()).sum::<f64>())
                .fold(0.0, f64::max),
        ),
        (SpaceNorm::L1(_), _) => Bounds::exact(
            (0..m.ncols())
                .map(|j| {
                    let col: Vec<C64> = m.column(j).iter().copied().collect();
                    dst.eval(&col)
                })
                .fold(0.0, f64::max),
        ),
        (
            SpaceNorm::Weighted {
                weights: ws,
                inner: is,
            },
            SpaceNorm::Weighted {
                weights: wd,
                inner: id,
            },
        ) => {
            let (bs, bd) = (is.dim(), id.dim());
            match block_targets(m, bs, bd) {
                Some(targets) => targets
                    .into_iter()
                    .enumerate()
                    .filter_map(|(s, t)| t.map(|t| (s, t)))
                    .map(|(s, t)| {
                        let block = m.view((t * bd, s * bs), (bd, bs)).clone_owned();
                        op_norm(&block, is, id).scale(wd[t] / ws[s])
                    })
                    .fold(Bounds::exact(0.0), Bounds::max),
                None => ball_sup(src, |x| Bounds::exact(dst.eval(&apply(m, x)))),
            }
        }
        (SpaceNorm::Spectral(n), SpaceNorm::Spectral(k)) => {
            let searched = ball_sup(src, |x| Bounds::exact(dst.eval(&apply(m, x))));
            let upper = searched.upper.min(factorization_bound(m, *n, *k));
            Bounds {
                lower: searched.lower,
                upper: upper.max(searched.lower),
            }
        }
        _ => ball_sup(src, |x| Bounds::exact(dst.eval(&apply(m, x)))),
    }
}

/// For each source block, the single destination block it maps into; `None`
/// if some source block spreads over several destination blocks.
fn block_targets(m: &Mat, bs: usize, bd: usize) -> Option<Vec<Option<usize>>> {
    if bs == 0 || bd == 0 {
        return None;
    }
    (0..m.ncols() / bs)
        .map(|s| {
            let mut target = None;
            for i in 0..m.nrows() {
                if (s * bs..(s + 1) * bs).any(|j| m[(i, j)] != ZERO) {
                    match target {
                        None => target = Some(i / bd),
                        Some(t) if t == i / bd => {}
                        Some(_) => return None,
                    }
                }
            }
            Some(target)
        })
        .collect()
}

/// Upper bound for a map `M_n → M_k` written as `X ↦ Σ_j A_j X B_j`:
/// `‖Σ A_j A_j*‖^{1/2} ‖Σ B_j* B_j‖^{1/2}`.
fn factorization_bound(m: &Mat, n: usize, k: usize) -> f64 {
    let mut realigned = Mat::zeros(k * n, n * k);
    for a in 0..k {
        for b in 0..k {
            for c in 0..n {
                for d in 0..n {
                    realigned[(a * n + c, d * k + b)] = m[(a * k + b, c * n + d)];
                }
            }
        }
    }
    let svd = realigned.svd(true, true);
    let (Some(u), Some(v_t)) = (svd.u, svd.v_t) else {
        return f64::INFINITY;
    };
    let mut left = Mat::zeros(k, k);
    let mut right = Mat::zeros(k, k);
    for (j, sigma) in svd.singular_values.iter().enumerate() {
        if *sigma == 0.0 {
            continue;
        }
        let root = libm::sqrt(*sigma);
        let a_j = Mat::from_fn(k, n, |a, c| u[(a * n + c, j)] * root);
        let b_j = Mat::from_fn(n, k, |d, b| v_t[(j, d * k + b)] * root);
        left += &a_j * a_j.adjoint();
        right += b_j.adjoint() * &b_j;
    }
    libm::sqrt(spectral_norm(&left)) * libm::sqrt(spectral_norm(&right))
}

/// Norm of a linear map `a ↦ Σ a_i images[i]` from `(ℂ^d, src)` into the
/// bounded operators on `(ℂ^m, space)`.
pub fn operator_valued_norm(images: &[Mat], src: &SpaceNorm, space: &SpaceNorm) -> Bounds {
    let m = space.dim();
    ball_sup(src, |a| {
        let mut t = Mat::zeros(m, m);
        for (ai, img) in a.iter().zip(images) {
            if *ai != ZERO {
                t += img * *ai;
            }
        }
        op_norm(&t, space, space)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_matrix, re};

    #[test]
    fn coordinate_norms_evaluate() {
        let x = [re(3.0), C64::new(0.0, -4.0)];
        assert_eq!(SpaceNorm::L1(2).eval(&x), 7.0);
        assert_eq!(SpaceNorm::L2(2).eval(&x), 5.0);
        assert_eq!(SpaceNorm::LInf(2).eval(&x), 4.0);
        let w = SpaceNorm::weighted(alloc::vec![1.0, 2.0], SpaceNorm::L1(1));
        assert_eq!(w.eval(&x), 11.0);
    }

    #[test]
    fn spectral_norm_of_identity_is_one() {
        let x = vectorize(&identity(2));
        assert!((SpaceNorm::Spectral(2).eval(&x) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_to_one_norm_is_max_column_sum() {
        let m = Mat::from_row_slice(2, 2, &[re(1.0), re(-2.0), re(3.0), re(0.5)]);
        let b = op_norm(&m, &SpaceNorm::L1(2), &SpaceNorm::L1(2));
        assert!(b.is_exact());
        assert_eq!(b.value(), 4.0);
    }

    #[test]
    fn generic_search_agrees_with_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_matrix(2, 2, &mut rng);
        let exact = op_norm(&m, &SpaceNorm::LInf(2), &SpaceNorm::LInf(2)).value();
        let searched = ball_sup(&SpaceNorm::LInf(2), |x| {
            Bounds::exact(SpaceNorm::LInf(2).eval(&apply(&m, x)))
        });
        assert!(searched.lower <= exact * (1.0 + 1e-12));
        assert!(searched.upper >= exact * (1.0 - 1e-12));
        assert!(searched.lower >= exact * 0.999);

        let exact2 = spectral_norm(&m);
        let sphere = ball_sup(&SpaceNorm::L2(2), |x| {
            Bounds::exact(SpaceNorm::L2(2).eval(&apply(&m, x)))
        });
        assert!(sphere.lower <= exact2 * (1.0 + 1e-12) && sphere.upper >= exact2);
        assert!(sphere.lower >= exact2 * 0.99);
    }

    #[test]
    fn conjugation_norm_is_found_on_unitaries() {
        // a ↦ x a x⁻¹ on (M_2, op) has norm ‖x‖‖x⁻¹‖
        let x = Mat::from_row_slice(2, 2, &[re(-1.0), re(1.0), re(0.0), re(1.0)]);
        let xi = x.clone().try_inverse().unwrap();
        let expected = spectral_norm(&x) * spectral_norm(&xi);
        let b = ball_sup(&SpaceNorm::Spectral(2), |a| {
            Bounds::exact(spectral_norm(&(&x * unvec(2, a) * &xi)))
        });
        assert!(b.lower <= expected * (1.0 + 1e-12));
        assert!(
            b.lower >= expected * (1.0 - 1e-6),
            "{} vs {}",
            b.lower,
            expected
        );
        assert!(b.upper >= expected);
    }
}
