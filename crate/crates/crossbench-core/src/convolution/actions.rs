//! The sixteen twisted actions of `(A, G)` on `A^G` and the eight commuting
//! actions of the trivialized system.
//!
//! Every action has the shape
//! `π(a)f(s) = τ_s(a) · f(s)` (or `f(s) · τ_s(a)`) and
//! `U_r f(s) = χ(r) β_r(f(shift(r, s)))`.

use alloc::vec::Vec;

use crate::crossed::{CovariantPair, Flavor};
use crate::dynamics::DynamicalSystem;
use crate::error::{Error, Result};
use crate::groups::Character;
use crate::linalg::{block_diag, identity, Mat};
use crate::norms::SpaceNorm;

/// Which side `π(a)` multiplies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `a`, `α_s(a)` or `α_{s⁻¹}(a)` for the pointwise factor of `π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointTwist {
    None,
    Alpha,
    AlphaInv,
}

/// `id`, `α_r` or `α_{r⁻¹}` applied to the shifted value in `U_r`.
pub type Twist = PointTwist;

/// The argument at which `U_r f` reads `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    /// `r⁻¹s`
    InvLeft,
    /// `sr`
    Right,
    /// `sr⁻¹`
    InvRight,
    /// `rs`
    Left,
}

/// Shape of one action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineSpec {
    pub side: Side,
    pub point: PointTwist,
    pub twist: Twist,
    pub shift: Shift,
    pub flavor: Flavor,
}

const U_COLUMNS: [(Twist, Shift); 8] = [
    (Twist::Alpha, Shift::InvLeft),
    (Twist::Alpha, Shift::Right),
    (Twist::None, Shift::Right),
    (Twist::None, Shift::InvLeft),
    (Twist::AlphaInv, Shift::InvRight),
    (Twist::AlphaInv, Shift::Left),
    (Twist::None, Shift::Left),
    (Twist::None, Shift::InvRight),
];

const POINTS: [PointTwist; 8] = [
    PointTwist::None,
    PointTwist::None,
    PointTwist::Alpha,
    PointTwist::AlphaInv,
    PointTwist::None,
    PointTwist::None,
    PointTwist::AlphaInv,
    PointTwist::Alpha,
];

/// Shape of line `1..=16` of the twisted family.
pub fn table2_line(line: usize) -> Result<LineSpec> {
    if !(1..=16).contains(&line) {
        return Err(Error::LineOutOfRange { line, max: 16 });
    }
    let k = (line - 1) % 8;
    let (twist, shift) = U_COLUMNS[k];
    let side = if line <= 8 { Side::Left } else { Side::Right };
    let point = POINTS[k];
    let flavor = match (line - 1) / 4 {
        0 => Flavor::MM,
        1 => Flavor::MA,
        2 => Flavor::AM,
        _ => Flavor::AA,
    };
    Ok(LineSpec {
        side,
        point,
        twist,
        shift,
        flavor,
    })
}

/// Shape of line `1..=8` of the commuting family.
pub fn table3_line(line: usize) -> Result<LineSpec> {
    if !(1..=8).contains(&line) {
        return Err(Error::LineOutOfRange { line, max: 8 });
    }
    let k = (line - 1) % 4;
    let (point, twist, shift) = [
        (PointTwist::Alpha, Twist::Alpha, Shift::InvLeft),
        (PointTwist::AlphaInv, Twist::Alpha, Shift::Right),
        (PointTwist::AlphaInv, Twist::AlphaInv, Shift::InvRight),
        (PointTwist::Alpha, Twist::AlphaInv, Shift::Left),
    ][k];
    let side = if line <= 4 { Side::Left } else { Side::Right };
    let flavor = match (line <= 4, k < 2) {
        (true, true) => Flavor::MM,
        (true, false) => Flavor::MA,
        (false, true) => Flavor::AM,
        (false, false) => Flavor::AA,
    };
    Ok(LineSpec {
        side,
        point,
        twist,
        shift,
        flavor,
    })
}

fn twist_matrix(sys: &DynamicalSystem, t: PointTwist, s: usize) -> Mat {
    match t {
        PointTwist::None => identity(sys.algebra().dim()),
        PointTwist::Alpha => sys.alpha(s).clone(),
        PointTwist::AlphaInv => sys.alpha(sys.group().inv(s)).clone(),
    }
}

fn shifted(sys: &DynamicalSystem, shift: Shift, r: usize, s: usize) -> usize {
    let g = sys.group();
    match shift {
        Shift::InvLeft => g.mul(g.inv(r), s),
        Shift::Right => g.mul(s, r),
        Shift::InvRight => g.mul(s, g.inv(r)),
        Shift::Left => g.mul(r, s),
    }
}

/// Builds the matrices of the action described by `spec`, with both the
/// pointwise factor and the twist read from `twists` (the system itself for
/// the twisted family).
fn build(
    sys: &DynamicalSystem,
    twists: &DynamicalSystem,
    spec: &LineSpec,
    chi: &Character,
) -> (Vec<Mat>, Vec<Mat>) {
    let grp = sys.group();
    let alg = sys.algebra();
    let d = alg.dim();
    let n = grp.order();
    let pi = (0..d)
        .map(|i| {
            let blocks: Vec<Mat> = grp
                .elements()
                .map(|s| {
                    let a = twists.act_with(spec.point, s, &alg.basis(i));
                    match spec.side {
                        Side::Left => alg.left_regular(&a),
                        Side::Right => alg.right_regular(&a),
                    }
                })
                .collect();
            block_diag(&blocks)
        })
        .collect();
    let u = grp
        .elements()
        .map(|r| {
            let mut m = Mat::zeros(n * d, n * d);
            for s in grp.elements() {
                let t = shifted(sys, spec.shift, r, s);
                let block = twist_matrix(twists, spec.twist, r) * chi.at(r);
                m.view_mut((s * d, t * d), (d, d)).copy_from(&block);
            }
            m
        })
        .collect();
    (pi, u)
}

impl DynamicalSystem {
    fn act_with(
        &self,
        t: PointTwist,
        s: usize,
        a: &[crate::linalg::C64],
    ) -> Vec<crate::linalg::C64> {
        match t {
            PointTwist::None => a.to_vec(),
            PointTwist::Alpha => self.act(s, a),
            PointTwist::AlphaInv => self.act(self.group().inv(s), a),
        }
    }
}

fn function_space_norm(sys: &DynamicalSystem) -> SpaceNorm {
    SpaceNorm::weighted(
        alloc::vec![1.0; sys.group().order()],
        sys.algebra().space_norm(),
    )
}

/// Line `line` of the twisted family, validated as a covariant pair of its
/// flavor on `L¹(G, A)`.
pub fn table2_action(sys: &DynamicalSystem, line: usize, chi: &Character) -> Result<CovariantPair> {
    let spec = table2_line(line)?;
    let (pi, u) = build(sys, sys, &spec, chi);
    CovariantPair::new(sys, pi, u, spec.flavor, function_space_norm(sys)).map_err(|e| {
        Error::LineViolated {
            line,
            source: alloc::boxed::Box::new(e),
        }
    })
}

/// Line `line` of the commuting family: a covariant pair for the trivialized
/// system whose `π` and `U` commute.
pub fn table3_action(sys: &DynamicalSystem, line: usize, chi: &Character) -> Result<CovariantPair> {
    let spec = table3_line(line)?;
    let triv = sys.trivialized();
    let (pi, u) = build(&triv, sys, &spec, chi);
    let wrap = |e| Error::LineViolated {
        line,
        source: alloc::boxed::Box::new(e),
    };
    let pair =
        CovariantPair::new(&triv, pi, u, spec.flavor, function_space_norm(sys)).map_err(wrap)?;
    if let Some((a, r)) = pair.first_noncommuting() {
        return Err(wrap(Error::NotCommutingPair { a, r }));
    }
    Ok(pair)
}

/// `π(a)f(s) = a f(s)`, `U_r f(s) = f(r⁻¹s)` over the trivialized system.
pub fn canonical_pair(sys: &DynamicalSystem) -> CovariantPair {
    let triv = sys.trivialized();
    let spec = LineSpec {
        side: Side::Left,
        point: PointTwist::None,
        twist: Twist::None,
        shift: Shift::InvLeft,
        flavor: Flavor::MM,
    };
    let (pi, u) = build(&triv, &triv, &spec, &Character::trivial(sys.group()));
    CovariantPair::new(&triv, pi, u, Flavor::MM, function_space_norm(sys))
        .expect("left translation is a covariant pair")
}
