use crossbench_core::convolution::{twisted_convolve, weighted_norm};
use crossbench_core::crossed::{direct_sum_realization, CovariantPair, CrossedProduct, RepClass};
use crossbench_core::fixtures::Fixture;
use crossbench_core::AFunction;

use super::{random_fn, rel_error, rel_slack, Outcome, Runner, Worst};
use crate::oracle::compare_kernels;

/// The full class of the fixture followed by each of its pairs alone.
pub(crate) fn classes(fx: &Fixture) -> Vec<Vec<CovariantPair>> {
    let mut out = vec![fx.pairs.clone()];
    if fx.pairs.len() > 1 {
        out.extend(fx.pairs.iter().map(|p| vec![p.clone()]));
    }
    out
}

pub(crate) fn run(runner: &mut Runner<'_>, fixtures: &[Fixture]) {
    let opts = runner.opts().clone();
    for fx in fixtures {
        let id = fx.id.as_str();
        let sys = &fx.system;

        runner.run(
            "core.convolution.associative",
            "twisted convolution is associative",
            id,
            |rng| {
                let mut worst = Worst::new();
                for _ in 0..opts.samples {
                    let f = random_fn(fx, rng);
                    let g = random_fn(fx, rng);
                    let h = random_fn(fx, rng);
                    let left = twisted_convolve(sys, &twisted_convolve(sys, &f, &g)?, &h)?;
                    let right = twisted_convolve(sys, &f, &twisted_convolve(sys, &g, &h)?)?;
                    worst.error(rel_error(left.max_abs_diff(&right), left.max_abs()), &f);
                }
                Ok(Outcome::equality(worst.error, opts.tolerance).witness(worst.at))
            },
        );

        runner.run(
            "core.convolution.submultiplicative",
            "the weighted L1 norm is C_alpha-submultiplicative",
            id,
            |rng| {
                let c = sys.c_alpha_bounds().upper;
                let mut worst = Worst::new();
                for _ in 0..opts.samples {
                    let f = random_fn(fx, rng);
                    let g = random_fn(fx, rng);
                    let n = |x: &AFunction| weighted_norm(sys, x, &fx.weight, 1.0);
                    let lhs = n(&twisted_convolve(sys, &f, &g)?);
                    worst.slack(rel_slack(lhs, c * n(&f) * n(&g)), &f);
                }
                Ok(Outcome::inequality(worst.finite_slack()).witness(worst.at))
            },
        );

        runner.run(
            "core.seminorm.bounds",
            "the class seminorm is submultiplicative and dominated by C^R times the weighted norm",
            id,
            |rng| {
                let class = RepClass::new(sys, fx.pairs.clone())?;
                let dominated = class
                    .nu_r()
                    .iter()
                    .enumerate()
                    .all(|(r, nu)| nu.lower <= fx.weight.at(r) * (1.0 + opts.tolerance));
                let c_r = class.c_r().upper;
                let mut worst = Worst::new();
                for _ in 0..opts.samples.div_ceil(4) {
                    let f = random_fn(fx, rng);
                    let g = random_fn(fx, rng);
                    let s = |x: &AFunction| class.seminorm(x);
                    let fg = twisted_convolve(sys, &f, &g)?;
                    worst.slack(rel_slack(s(&fg)?, s(&f)? * s(&g)?), &f);
                    worst.slack(rel_slack(s(&(&f + &g))?, s(&f)? + s(&g)?), &f);
                    if dominated {
                        let w = weighted_norm(sys, &f, &fx.weight, 1.0);
                        worst.slack(rel_slack(s(&f)?, c_r * w), &f);
                    }
                }
                let out = Outcome::inequality(worst.finite_slack()).witness(worst.at);
                Ok(if dominated {
                    out
                } else {
                    out.detail("nu^R exceeds omega; domination not checked")
                })
            },
        );

        runner.run(
            "core.kernel.ideal",
            "the kernel of the class seminorm is a two-sided ideal",
            id,
            |_| {
                let (n, d) = (sys.group().order(), sys.algebra().dim());
                let mut worst: f64 = 0.0;
                let mut dims = Vec::new();
                for pairs in classes(fx) {
                    let class = RepClass::new(sys, pairs)?;
                    let cp = CrossedProduct::build(sys, class.clone())?;
                    dims.push(cp.kernel_dim().to_string());
                    for k in cp.kernel_basis() {
                        for i in 0..n * d {
                            let e = AFunction::basis(n, d, i);
                            for prod in [
                                twisted_convolve(sys, &k, &e)?,
                                twisted_convolve(sys, &e, &k)?,
                            ] {
                                worst = worst.max(class.seminorm(&prod)?);
                            }
                        }
                    }
                }
                Ok(Outcome::equality(worst, opts.tolerance)
                    .detail(format!("kernel dimensions {}", dims.join(", "))))
            },
        );

        runner.run(
            "core.realization.direct_sum",
            "the p-direct sum of the class realizes the class seminorm isometrically",
            id,
            |rng| {
                let mut worst = Worst::new();
                for p in [1.0, 2.0, f64::INFINITY] {
                    let pairs = fx.pairs_with_p(p);
                    let class = RepClass::new(sys, pairs.clone())?;
                    let sum = direct_sum_realization(sys, &pairs, p)?;
                    for _ in 0..opts.samples.div_ceil(2) {
                        let f = random_fn(fx, rng);
                        let a = sum.seminorm(&f)?;
                        let b = class.seminorm(&f)?;
                        worst.error((a - b).abs() / b.max(1e-300), &f);
                    }
                }
                Ok(Outcome::equality(worst.error, opts.tolerance).witness(worst.at))
            },
        );

        runner.run(
            "core.kernel.oracle",
            "the SVD kernel agrees with brute-force elimination",
            id,
            |_| {
                let mut containment: f64 = 0.0;
                let mut dims_agree = true;
                let mut dims = Vec::new();
                for pairs in classes(fx) {
                    let cp = CrossedProduct::build(sys, RepClass::new(sys, pairs)?)?;
                    let agreement = compare_kernels(&cp, 1e-10);
                    dims_agree &= agreement.svd_dim == agreement.oracle_dim;
                    containment = containment.max(agreement.containment);
                    dims.push(format!("{}/{}", agreement.svd_dim, agreement.oracle_dim));
                }
                let out = if dims_agree {
                    Outcome::equality(containment, opts.tolerance.max(1e-10))
                } else {
                    Outcome::flag(false)
                };
                Ok(out.detail(format!("svd/oracle kernel dimensions {}", dims.join(", "))))
            },
        );
    }
}
