use crossbench_core::convolution::weighted_norm;
use crossbench_core::correspondence::{induced_pair, ChainContext};
use crossbench_core::crossed::{CovariantPair, CrossedProduct, RepClass};
use crossbench_core::fixtures::Fixture;
use crossbench_core::linalg::max_abs_diff;
use crossbench_core::Error;

use super::{random_fn, rel_error, rel_slack, Outcome, Runner, Worst};

/// The induced pair together with every fixture pair whose translations
/// are dominated by the weight.
pub(crate) fn faithful_class(fx: &Fixture) -> Result<RepClass, Error> {
    let sys = &fx.system;
    let mut pairs: Vec<CovariantPair> = vec![induced_pair(sys, &fx.weight)?];
    pairs.extend(
        fx.pairs
            .iter()
            .filter(|p| {
                p.u_norms()
                    .iter()
                    .enumerate()
                    .all(|(r, n)| n.lower <= fx.weight.at(r) * (1.0 + 1e-12))
            })
            .cloned(),
    );
    RepClass::new(sys, pairs)
}

pub(crate) fn run(runner: &mut Runner<'_>, fixtures: &[Fixture]) {
    let opts = runner.opts().clone();
    for fx in fixtures {
        let id = fx.id.as_str();
        let sys = &fx.system;

        runner.run(
            "beurling.left_regular.identity",
            "the integrated form of the canonical pair is left multiplication on the quotient",
            id,
            |rng| {
                let class = RepClass::new(sys, fx.pairs.clone())?;
                let cp = CrossedProduct::build(sys, class)?;
                let maps = cp.canonical_maps()?;
                let mut worst = Worst::new();
                for _ in 0..opts.samples {
                    let f = random_fn(fx, rng);
                    let lhs = maps.integrated(&f);
                    let rhs = cp.left_regular(&cp.q(&f));
                    let scale = crossbench_core::linalg::max_abs(&rhs);
                    worst.error(rel_error(max_abs_diff(&lhs, &rhs), scale), &f);
                }
                let err = worst.error.max(maps.descent_defect);
                Ok(Outcome::equality(err, opts.tolerance).witness(worst.at))
            },
        );

        runner.run(
            "beurling.left_regular.embedding",
            "left multiplication embeds the crossed product with constant M = 1 when A is unital",
            id,
            |rng| {
                if sys.algebra().identity().is_none() {
                    return Err(Error::HypothesisViolated(String::from(
                        "A has no two-sided identity",
                    )));
                }
                let class = RepClass::new(sys, fx.pairs.clone())?;
                let cp = CrossedProduct::build(sys, class)?;
                let mut worst = Worst::new();
                for _ in 0..opts.samples.div_ceil(4) {
                    let f = random_fn(fx, rng);
                    let c = cp.q(&f);
                    let norm = cp.norm(&c)?;
                    let lambda = cp.left_regular_norm_lower(&c, 8, rng)?;
                    worst.slack(rel_slack(lambda, norm), &f);
                    worst.slack(rel_slack(norm, lambda), &f);
                }
                Ok(Outcome::inequality(worst.finite_slack()).witness(worst.at))
            },
        );

        runner.run(
            "beurling.chain",
            "the weighted norm, the induced representation and the class seminorm are chained",
            id,
            |rng| {
                let class = faithful_class(fx)?;
                let ctx = ChainContext::new(sys, &fx.weight, &class)?;
                let mut worst = Worst::new();
                for _ in 0..opts.samples {
                    let f = random_fn(fx, rng);
                    let r = ctx.evaluate(&f)?;
                    let sigma_upper = class
                        .pairs()
                        .iter()
                        .map(|p| p.integrated_norm(&f).map(|b| b.upper))
                        .try_fold(0.0, |acc, v| v.map(|v| f64::max(acc, v)))?;
                    worst.slack(rel_slack(r.lower, r.induced.lower), &f);
                    worst.slack(
                        rel_slack(r.induced.lower, r.induced_rep_norm.upper * r.sigma),
                        &f,
                    );
                    worst.slack(rel_slack(sigma_upper, r.c_r.upper * r.weighted_norm), &f);
                }
                Ok(Outcome::inequality(worst.finite_slack())
                    .witness(worst.at)
                    .detail(format!("class of {} pairs", class.pairs().len())))
            },
        );

        runner.run(
            "beurling.isometric_regime",
            "for isometric actions on a unital algebra the crossed product norm is the weighted norm",
            id,
            |rng| {
                let alg = sys.algebra();
                let unit_norm = alg.identity().map(|u| alg.norm(u));
                if !sys.is_isometric() || unit_norm != Some(1.0) {
                    return Err(Error::HypothesisViolated(String::from(
                        "needs an isometric action and an identity of norm one",
                    )));
                }
                let induced = induced_pair(sys, &fx.weight)?;
                let mut worst = Worst::new();
                for _ in 0..opts.samples {
                    let f = random_fn(fx, rng);
                    let sigma = induced.integrated_norm(&f)?;
                    let w = weighted_norm(sys, &f, &fx.weight, 1.0);
                    worst.error((sigma.lower - w).abs().max((sigma.upper - w).abs()) / w, &f);
                }
                Ok(Outcome::equality(worst.error, opts.tolerance).witness(worst.at))
            },
        );
    }
}
