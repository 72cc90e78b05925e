use crossbench_core::convolution::check_conjugator;
use crossbench_core::correspondence::{bimodule_correspondence, pair_to_rep};
use crossbench_core::crossed::{retype_pair, Companion, CrossedProduct, RepClass};
use crossbench_core::fixtures::Fixture;
use crossbench_core::linalg::{identity, inverse, kron, max_abs, random_matrix, spectral_norm};
use crossbench_core::tensor::{
    decompose_rep, kron_vectors, n_fold_correspondence, n_fold_inverse, odot,
    projective_norm_bounds, uniqueness_sweep,
};
use crossbench_core::{
    AlgebraRep, CovariantPair, Error, Mat, NormedAlgebra, RepKind, SpaceNorm, C64,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::anti::convolution_bimodule;
use super::correspondence::pair_scale;
use super::{random_fn, rel_error, rel_slack, Outcome, Runner, Worst};

/// Largest tensor product of quotients whose structure constants are built.
pub const MAX_TENSOR_DIM: usize = 64;

/// Fixture id of the matrix-times-diagonal subject of the norm bound.
pub const TENSOR_SUBJECT: &str = "tensor";

/// A commuting (m,m) and (a,a) pair on `L¹(G, A)`, the second read as an
/// (m,m) pair over the opposite system, with their crossed products.
pub(crate) struct Encoding {
    pub cp_m: CrossedProduct,
    pub cp_a: CrossedProduct,
    pub pm: CovariantPair,
    pub pa: CovariantPair,
    pub pa_opposite: CovariantPair,
    pub rep: AlgebraRep,
}

pub(crate) fn encoding(fx: &Fixture) -> Result<Encoding, Error> {
    let sys = &fx.system;
    if sys.algebra().identity().is_none() {
        return Err(Error::NoApproximateIdentity("two-sided identity"));
    }
    let (pm, pa) = convolution_bimodule(fx)?;
    let (sys_o, pa_opposite) = retype_pair(sys, &pa, Companion::Both)?;
    let cp_m = CrossedProduct::build(sys, RepClass::new(sys, vec![pm.clone()])?)?;
    let cp_a = CrossedProduct::build(&sys_o, RepClass::new(&sys_o, vec![pa_opposite.clone()])?)?;
    let dim = cp_m.quotient_dim() * cp_a.quotient_dim();
    if dim > MAX_TENSOR_DIM {
        return Err(Error::HypothesisViolated(format!(
            "tensor product dimension {dim} exceeds {MAX_TENSOR_DIM}"
        )));
    }
    let rep = n_fold_correspondence(&[&cp_m, &cp_a], &[&pm, &pa_opposite])?;
    Ok(Encoding {
        cp_m,
        cp_a,
        pm,
        pa,
        pa_opposite,
        rep,
    })
}

fn images_scale(t: &AlgebraRep) -> f64 {
    t.images().iter().map(max_abs).fold(0.0, f64::max)
}

/// `π₁(a) = a ⊗ 1` and `π₂(b) = 1 ⊗ diag(b)` on `ℂ² ⊗ ℂ²`, conjugated by `s`.
fn matrix_diag_reps(s: &Mat, s_inv: &Mat) -> Result<(AlgebraRep, AlgebraRep), Error> {
    let m2 = NormedAlgebra::matrix(2);
    let d2 = NormedAlgebra::diag(2);
    let unit = |n: usize, i: usize| {
        let mut e = Mat::zeros(n, n);
        e[(i / n, i % n)] = C64::new(1.0, 0.0);
        e
    };
    let p1 = (0..4)
        .map(|i| s * kron(&unit(2, i), &identity(2)) * s_inv)
        .collect();
    let p2 = (0..2)
        .map(|i| s * kron(&identity(2), &unit(2, i * 3)) * s_inv)
        .collect();
    Ok((
        AlgebraRep::new(m2.structure().clone(), p1, RepKind::Rep)?,
        AlgebraRep::new(d2.structure().clone(), p2, RepKind::Rep)?,
    ))
}

fn random_similarity(rng: &mut ChaCha8Rng) -> (Mat, Mat) {
    let s = identity(4) + random_matrix(4, 4, rng) * C64::new(0.2, 0.0);
    let s_inv = inverse(&s).expect("a small perturbation of the identity is invertible");
    (s, s_inv)
}

pub(crate) fn run(runner: &mut Runner<'_>, fixtures: &[Fixture]) {
    let opts = runner.opts().clone();
    for fx in fixtures {
        let id = fx.id.as_str();
        let sys = &fx.system;

        runner.run(
            "tensor.bimodule_encoding",
            "a bimodule is a representation of the tensor product of the two crossed products",
            id,
            |rng| {
                let enc = encoding(fx)?;
                let b = fx.beurling();
                let bm = bimodule_correspondence(&b, &b, &enc.pm, &enc.pa)?;
                let scale = images_scale(&bm.t_m) * images_scale(&bm.t_a);
                let mut worst = Worst::new();
                for _ in 0..opts.samples.div_ceil(4) {
                    let f = random_fn(fx, rng);
                    let g = random_fn(fx, rng);
                    let x =
                        kron_vectors(&[&enc.cp_m.q(&f), &enc.cp_a.q(&check_conjugator(sys, &g))]);
                    let lhs = enc.rep.eval(&x);
                    let rhs = bm.t_m.eval(f.as_slice()) * bm.t_a.eval(g.as_slice());
                    let err = crossbench_core::linalg::max_abs_diff(&lhs, &rhs);
                    worst.error(rel_error(err, scale * f.max_abs() * g.max_abs()), &f);
                }
                Ok(Outcome::equality(worst.error, opts.tolerance)
                    .witness(worst.at)
                    .detail(format!(
                        "quotient dimensions {} and {}",
                        enc.cp_m.quotient_dim(),
                        enc.cp_a.quotient_dim()
                    )))
            },
        );

        runner.run(
            "tensor.decompose_odot",
            "decomposing a representation of the tensor product and recombining is the identity",
            id,
            |_| {
                let enc = encoding(fx)?;
                let norms = [enc.pm.norm().clone(), enc.pa_opposite.norm().clone()];
                let pairs = n_fold_inverse(&enc.rep, &[&enc.cp_m, &enc.cp_a], &norms)?;
                let scale = pair_scale(&enc.pm).max(pair_scale(&enc.pa_opposite));
                let pair_err = pairs[0]
                    .max_abs_diff(&enc.pm)
                    .max(pairs[1].max_abs_diff(&enc.pa_opposite));
                let (r1, r2) = decompose_rep(&enc.rep, enc.cp_m.structure(), enc.cp_a.structure())?;
                let again = odot(&r1, &r2)?;
                let direct = [
                    pair_to_rep(&enc.cp_m, &enc.pm)?.max_abs_diff(&r1),
                    pair_to_rep(&enc.cp_a, &enc.pa_opposite)?.max_abs_diff(&r2),
                ]
                .into_iter()
                .fold(0.0, f64::max);
                let rep_scale = images_scale(&enc.rep);
                let err = rel_error(pair_err, scale)
                    .max(rel_error(again.max_abs_diff(&enc.rep), rep_scale))
                    .max(rel_error(direct, rep_scale));
                Ok(Outcome::equality(err, opts.tolerance))
            },
        );

        runner.run(
            "tensor.uniqueness",
            "the factors of a product representation are unique",
            id,
            |_| {
                let enc = encoding(fx)?;
                let (r1, r2) = decompose_rep(&enc.rep, enc.cp_m.structure(), enc.cp_a.structure())?;
                let scalars = [
                    C64::new(1.0, 0.0),
                    C64::new(2.0, 0.0),
                    C64::new(-1.0, 0.0),
                    C64::new(0.0, 1.0),
                    C64::new(0.5, 0.0),
                ];
                let sweep = uniqueness_sweep(&r1, &r2, &scalars)?;
                let survivors: Vec<C64> = sweep
                    .iter()
                    .filter(|(_, ok)| *ok)
                    .map(|(c, _)| *c)
                    .collect();
                Ok(
                    Outcome::flag(survivors == [C64::new(1.0, 0.0)]).detail(format!(
                        "{} of {} scalars survive",
                        survivors.len(),
                        scalars.len()
                    )),
                )
            },
        );
    }

    runner.run(
        "tensor.norm_bound",
        "the norm of a product representation is bounded by the projective tensor norm",
        TENSOR_SUBJECT,
        |rng| {
            let m2 = NormedAlgebra::matrix(2);
            let d2 = NormedAlgebra::diag(2);
            let space = SpaceNorm::L2(4);
            let mut slack = f64::INFINITY;
            for twisted in [false, true] {
                let (s, s_inv) = if twisted {
                    random_similarity(rng)
                } else {
                    (identity(4), identity(4))
                };
                let (p1, p2) = matrix_diag_reps(&s, &s_inv)?;
                let n1 = p1.norm(&m2.space_norm(), &space).upper;
                let n2 = p2.norm(&d2.space_norm(), &space).upper;
                let product = odot(&p1, &p2)?;
                for _ in 0..opts.samples.div_ceil(4) {
                    let t: Vec<C64> = (0..8)
                        .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                        .collect();
                    let proj = projective_norm_bounds(&t, &m2, &d2, 10);
                    let lhs = spectral_norm(&product.eval(&t));
                    slack = slack.min(rel_slack(lhs, n1 * n2 * proj.upper));
                }
            }
            Ok(Outcome::inequality(if slack.is_finite() {
                slack
            } else {
                1.0
            }))
        },
    );
}
