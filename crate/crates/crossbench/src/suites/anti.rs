use crossbench_core::convolution::{
    check_anti_iso, hat_anti_iso, table2_action, twisted_convolve, weighted_norm,
};
use crossbench_core::correspondence::{
    anti_pair_to_antirep, antirep_to_anti_pair, bimodule_correspondence, bimodule_inverse,
};
use crossbench_core::crossed::CovariantPair;
use crossbench_core::fixtures::Fixture;
use crossbench_core::{AFunction, Character, Error};

use super::correspondence::pair_scale;
use super::{random_fn, rel_error, rel_slack, Outcome, Runner, Worst};

/// Left convolution (twisted line 1) and right convolution (twisted line 16)
/// on `L¹(G, A)`, both with the trivial character.
pub(crate) fn convolution_bimodule(fx: &Fixture) -> Result<(CovariantPair, CovariantPair), Error> {
    let one = Character::trivial(fx.system.group());
    Ok((
        table2_action(&fx.system, 1, &one)?,
        table2_action(&fx.system, 16, &one)?,
    ))
}

pub(crate) fn run(runner: &mut Runner<'_>, fixtures: &[Fixture]) {
    let opts = runner.opts().clone();
    for fx in fixtures {
        let id = fx.id.as_str();
        let sys = &fx.system;
        let chi = &fx.character;

        runner.run(
            "anti.hat.reverses_products",
            "the hat map reverses products and the check map inverts it",
            id,
            |rng| {
                let opp = sys.opposite();
                let c = sys.c_alpha_bounds().upper;
                let mut worst = Worst::new();
                for _ in 0..opts.samples {
                    let f = random_fn(fx, rng);
                    let g = random_fn(fx, rng);
                    let hat = |x: &AFunction| hat_anti_iso(sys, chi, x);
                    let fg = twisted_convolve(sys, &f, &g)?;
                    let lhs = hat(&fg);
                    let rhs = twisted_convolve(&opp, &hat(&g), &hat(&f))?;
                    worst.error(rel_error(lhs.max_abs_diff(&rhs), lhs.max_abs()), &f);
                    let back = check_anti_iso(sys, chi, &hat(&f));
                    worst.error(rel_error(back.max_abs_diff(&f), f.max_abs()), &f);
                    let n = weighted_norm(&opp, &hat(&f), &fx.weight, 1.0);
                    worst.slack(
                        rel_slack(n, c * weighted_norm(sys, &f, &fx.weight, 1.0)),
                        &f,
                    );
                }
                Ok(
                    Outcome::both(worst.error, opts.tolerance, worst.finite_slack())
                        .witness(worst.at),
                )
            },
        );

        runner.run(
            "anti.correspondence.roundtrip",
            "anti-covariant pairs and anti-representations of the Beurling algebra correspond",
            id,
            |_| {
                if sys.algebra().right_identity().is_none() {
                    return Err(Error::NoApproximateIdentity("right identity"));
                }
                let b = fx.beurling();
                let mut worst: f64 = 0.0;
                let mut lines = 0;
                for character in [chi.clone(), Character::trivial(sys.group())] {
                    for line in 13..=16 {
                        let pair = table2_action(sys, line, &character)?;
                        let t = anti_pair_to_antirep(&b, &pair)?;
                        if !t.is_non_degenerate() {
                            continue;
                        }
                        let back = antirep_to_anti_pair(&b, &t, pair.norm().clone())?;
                        let again = anti_pair_to_antirep(&b, &back)?;
                        let scale = pair_scale(&pair);
                        worst = worst
                            .max(rel_error(back.max_abs_diff(&pair), scale))
                            .max(rel_error(again.max_abs_diff(&t), scale));
                        lines += 1;
                    }
                }
                if lines == 0 {
                    return Err(Error::HypothesisViolated(String::from(
                        "no non-degenerate anti-representations",
                    )));
                }
                Ok(Outcome::equality(worst, opts.tolerance)
                    .detail(format!("{lines} anti-covariant pairs")))
            },
        );

        runner.run(
            "anti.bimodule.roundtrip",
            "commuting covariant and anti-covariant pairs give a bimodule and back",
            id,
            |_| {
                if sys.algebra().identity().is_none() {
                    return Err(Error::NoApproximateIdentity("two-sided identity"));
                }
                let b = fx.beurling();
                let (pm, pa) = convolution_bimodule(fx)?;
                let bm = bimodule_correspondence(&b, &b, &pm, &pa)?;
                let (pm2, pa2) = bimodule_inverse(&b, &b, &bm.t_m, &bm.t_a, pm.norm().clone())?;
                let scale = pair_scale(&pm).max(pair_scale(&pa));
                let err = rel_error(pm2.max_abs_diff(&pm).max(pa2.max_abs_diff(&pa)), scale);
                Ok(Outcome::equality(err.max(bm.commutator), opts.tolerance)
                    .detail(format!("commutator {:.1e}", bm.commutator)))
            },
        );
    }
}
