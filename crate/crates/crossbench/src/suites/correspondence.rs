use crossbench_core::correspondence::{
    beurling_rep_to_pair, classical_norm, correspondence_bounds, pair_to_beurling_rep, pair_to_rep,
    rep_to_pair,
};
use crossbench_core::crossed::{CovariantPair, CrossedProduct, RepClass};
use crossbench_core::fixtures::Fixture;
use crossbench_core::linalg::max_abs;
use crossbench_core::Error;

use super::{rel_error, rel_slack, Outcome, Runner};

pub(crate) const RANDOM_PAIRS: usize = 3;

pub(crate) fn pair_scale(p: &CovariantPair) -> f64 {
    p.pi_basis()
        .iter()
        .chain(p.u_all())
        .map(max_abs)
        .fold(0.0, f64::max)
}

fn needs_left_identity(fx: &Fixture) -> Result<(), Error> {
    if fx.system.algebra().left_identity().is_none() {
        return Err(Error::NoApproximateIdentity("left identity"));
    }
    Ok(())
}

pub(crate) fn run(runner: &mut Runner<'_>, fixtures: &[Fixture]) {
    let opts = runner.opts().clone();
    for fx in fixtures {
        let id = fx.id.as_str();
        let sys = &fx.system;

        runner.run(
            "correspondence.general.roundtrip",
            "covariant pairs of the class and representations of the crossed product correspond",
            id,
            |rng| {
                needs_left_identity(fx)?;
                let class = RepClass::new(sys, fx.pairs.clone())?;
                let cp = CrossedProduct::build(sys, class)?;
                let mut worst: f64 = 0.0;
                for _ in 0..RANDOM_PAIRS {
                    let pair = fx.random_pair(rng);
                    let t = pair_to_rep(&cp, &pair)?;
                    let back = rep_to_pair(&cp, &t, pair.norm().clone())?;
                    let again = pair_to_rep(&cp, &back)?;
                    let scale = pair_scale(&pair);
                    worst = worst
                        .max(rel_error(back.max_abs_diff(&pair), scale))
                        .max(rel_error(again.max_abs_diff(&t), scale));
                }
                Ok(Outcome::equality(worst, opts.tolerance))
            },
        );

        runner.run(
            "correspondence.beurling.roundtrip",
            "non-degenerate pairs and representations of the Beurling algebra correspond",
            id,
            |rng| {
                needs_left_identity(fx)?;
                let b = fx.beurling();
                let mut worst: f64 = 0.0;
                for _ in 0..RANDOM_PAIRS {
                    let pair = fx.random_pair(rng);
                    let t = pair_to_beurling_rep(&b, &pair)?;
                    let back = beurling_rep_to_pair(&b, &t, pair.norm().clone())?;
                    let again = pair_to_beurling_rep(&b, &back)?;
                    let scale = pair_scale(&pair);
                    worst = worst
                        .max(rel_error(back.max_abs_diff(&pair), scale))
                        .max(rel_error(again.max_abs_diff(&t), scale));
                }
                Ok(Outcome::equality(worst, opts.tolerance))
            },
        );

        runner.run(
            "correspondence.bounds",
            "the integrated form and the pair bound each other",
            id,
            |rng| {
                needs_left_identity(fx)?;
                let b = fx.beurling();
                let mut ok = true;
                for _ in 0..RANDOM_PAIRS {
                    let pair = fx.random_pair(rng);
                    ok &= correspondence_bounds(&b, &pair)?.all_hold();
                }
                for pair in &fx.pairs {
                    ok &= correspondence_bounds(&b, pair)?.all_hold();
                }
                Ok(Outcome::flag(ok))
            },
        );

        runner.run(
            "correspondence.classical",
            "for scalar algebras the norm of the integrated form is sup ||U_r||/omega(r)",
            id,
            |_| {
                if sys.algebra().dim() != 1 {
                    return Err(Error::HypothesisViolated(String::from(
                        "needs a one-dimensional algebra",
                    )));
                }
                let b = fx.beurling();
                let mut worst: f64 = 0.0;
                let mut slack = f64::INFINITY;
                let mut checked = 0;
                for pair in fx.pairs.iter().filter(|p| p.space_dim() == 1) {
                    let t = pair_to_beurling_rep(&b, pair)?;
                    let norm = t.norm(&b.space_norm(), pair.norm());
                    let classical = classical_norm(&fx.weight, pair.u_all());
                    worst = worst.max((norm.lower - classical).abs() / classical);
                    worst = worst.max((norm.upper - classical).abs() / classical);
                    for r in sys.group().elements() {
                        let chi = pair.u(r)[(0, 0)].norm();
                        slack = slack.min(rel_slack(chi, fx.weight.at(r)));
                    }
                    checked += 1;
                }
                if checked == 0 {
                    return Err(Error::HypothesisViolated(String::from(
                        "no one-dimensional pairs",
                    )));
                }
                Ok(Outcome::both(worst, opts.tolerance, slack)
                    .detail(format!("{checked} one-dimensional pairs")))
            },
        );
    }
}
