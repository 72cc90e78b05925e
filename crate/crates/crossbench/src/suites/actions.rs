use crossbench_core::convolution::{
    canonical_pair, s_chi_inv_matrix, s_chi_matrix, t_chi_matrix, table2_action, table3_action,
};
use crossbench_core::crossed::CovariantPair;
use crossbench_core::fixtures::Fixture;
use crossbench_core::linalg::max_abs_diff;
use crossbench_core::{Character, DynamicalSystem, Error, Mat};

use super::{Outcome, Runner};

/// Largest entrywise difference between `t·pair·t_inv` and `other`.
fn conjugation_error(pair: &CovariantPair, t: &Mat, t_inv: &Mat, other: &CovariantPair) -> f64 {
    let pi = pair.pi_basis().iter().zip(other.pi_basis());
    let u = pair.u_all().iter().zip(other.u_all());
    pi.chain(u)
        .map(|(x, y)| max_abs_diff(&(t * x * t_inv), y))
        .fold(0.0, f64::max)
}

/// Builds every line, reporting the ones that fail validation.
fn all_lines<F>(lines: usize, build: F) -> Outcome
where
    F: Fn(usize) -> Result<CovariantPair, Error>,
{
    let failed: Vec<String> = (1..=lines)
        .filter_map(|line| build(line).err().map(|e| e.to_string()))
        .collect();
    if failed.is_empty() {
        Outcome::flag(true).detail(format!("{lines} lines"))
    } else {
        Outcome::flag(false).detail(failed.join("; "))
    }
}

/// Lines `offset + 1..=offset + 4` over `sys` against lines `1..=4` over
/// the companion system.
fn companion_error(
    sys: &DynamicalSystem,
    companion: &DynamicalSystem,
    chi: &Character,
    offset: usize,
    build: fn(&DynamicalSystem, usize, &Character) -> Result<CovariantPair, Error>,
) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for k in 1..=4 {
        let here = build(sys, offset + k, chi)?;
        let there = build(companion, k, chi)?;
        worst = worst.max(here.max_abs_diff(&there));
    }
    Ok(worst)
}

pub(crate) fn run(runner: &mut Runner<'_>, fixtures: &[Fixture]) {
    let opts = runner.opts().clone();
    for fx in fixtures {
        let id = fx.id.as_str();
        let sys = &fx.system;
        let chi = &fx.character;
        let one = Character::trivial(sys.group());

        runner.run(
            "actions.twisted.valid",
            "all sixteen twisted actions are covariant pairs of their flavor",
            id,
            |_| Ok(all_lines(16, |line| table2_action(sys, line, chi))),
        );

        runner.run(
            "actions.commuting.valid",
            "all eight actions of the trivialized system are commuting covariant pairs",
            id,
            |_| Ok(all_lines(8, |line| table3_action(sys, line, chi))),
        );

        runner.run(
            "actions.equivalence.t",
            "lines 1 and 2, and lines 3 and 4, are conjugate by T",
            id,
            |_| {
                let l1 = table2_action(sys, 1, chi)?;
                let l2 = table2_action(sys, 2, &one)?;
                let t = t_chi_matrix(sys, &chi.quotient(&one));
                let e12 = conjugation_error(&l1, &t, &t, &l2);
                let l3 = table2_action(sys, 3, &one)?;
                let l4 = table2_action(sys, 4, chi)?;
                let e34 = conjugation_error(&l3, &t, &t, &l4);
                Ok(Outcome::equality(e12.max(e34), opts.tolerance))
            },
        );

        runner.run(
            "actions.equivalence.s",
            "lines 1 and 4 are conjugate by S",
            id,
            |_| {
                let chi1 = chi.product(chi);
                let l1 = table2_action(sys, 1, &chi1)?;
                let l4 = table2_action(sys, 4, chi)?;
                let theta = chi1.quotient(chi);
                let s = s_chi_matrix(sys, &theta);
                let s_inv = s_chi_inv_matrix(sys, &theta);
                Ok(Outcome::equality(
                    conjugation_error(&l1, &s, &s_inv, &l4),
                    opts.tolerance,
                ))
            },
        );

        runner.run(
            "actions.commuting.canonical",
            "the commuting actions are conjugates of the canonical pair",
            id,
            |_| {
                let canonical = canonical_pair(sys);
                let s = s_chi_matrix(sys, chi);
                let s_inv = s_chi_inv_matrix(sys, chi);
                let line1 = table3_action(sys, 1, chi)?;
                let e1 = conjugation_error(&canonical, &s_inv, &s, &line1);
                let t = t_chi_matrix(sys, &one);
                let line2 = table3_action(sys, 2, chi)?;
                let e2 = conjugation_error(&line1, &t, &t, &line2);
                Ok(Outcome::equality(e1.max(e2), opts.tolerance))
            },
        );

        runner.run(
            "actions.companion",
            "the remaining lines are lines 1 to 4 over the opposite systems",
            id,
            |_| {
                let err = [
                    companion_error(sys, &sys.with_opposite_group(), chi, 4, table2_action)?,
                    companion_error(sys, &sys.with_opposite_algebra(), chi, 8, table2_action)?,
                    companion_error(sys, &sys.opposite(), chi, 12, table2_action)?,
                    companion_error(sys, &sys.with_opposite_algebra(), chi, 4, table3_action)?,
                ]
                .into_iter()
                .fold(0.0, f64::max);
                Ok(Outcome::equality(err, opts.tolerance))
            },
        );
    }
}
