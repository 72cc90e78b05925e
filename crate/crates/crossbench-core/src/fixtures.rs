//! The five reference systems with weights, characters and hand-built
//! covariant pairs.
//!
//! | id | group | algebra | action |
//! |----|-------|---------|--------|
//! | F1 | Z2 | ℂ | trivial |
//! | F2 | Z2 | ℂ² (sup) | coordinate flip |
//! | F3 | S3 | M₂ (operator) | conjugation by the standard representation |
//! | F4 | Z2 | column algebra, right identity only | `(x, y) ↦ (x, −y)` |
//! | F5 | Z4 | ℂ² (sup) | generator flips |

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::algebras::NormedAlgebra;
use crate::convolution::BeurlingAlgebra;
use crate::crossed::{direct_sum_realization, CovariantPair, Flavor};
use crate::dynamics::DynamicalSystem;
use crate::groups::{permutations, Character, FiniteGroup, Weight};
use crate::linalg::{identity, random_invertible, re, Mat, C64, I, ONE, ZERO};
use crate::norms::SpaceNorm;

/// A reference system with the data used by the checks.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: String,
    pub system: DynamicalSystem,
    pub weight: Weight,
    pub character: Character,
    /// Non-degenerate (m,m) pairs on ℓ²-normed spaces.
    pub pairs: Vec<CovariantPair>,
}

impl Fixture {
    pub fn beurling(&self) -> BeurlingAlgebra {
        BeurlingAlgebra::new(self.system.clone(), self.weight.clone())
            .expect("fixture weights match their groups")
    }

    /// The standard pairs re-normed by the coordinate p-norm.
    pub fn pairs_with_p(&self, p: f64) -> Vec<CovariantPair> {
        self.pairs
            .iter()
            .map(|x| {
                let m = x.space_dim();
                x.clone()
                    .with_norm(coordinate_norm(p, m))
                    .expect("same dimension")
            })
            .collect()
    }

    /// A random non-degenerate pair: a similarity transform of one standard
    /// pair or of the direct sum of two.
    pub fn random_pair<R: Rng + ?Sized>(&self, rng: &mut R) -> CovariantPair {
        let k = self.pairs.len();
        let base = if rng.random_bool(0.5) || k < 2 {
            self.pairs[rng.random_range(0..k)].clone()
        } else {
            let a = rng.random_range(0..k);
            let b = rng.random_range(0..k);
            direct_sum_realization(
                &self.system,
                &[self.pairs[a].clone(), self.pairs[b].clone()],
                2.0,
            )
            .expect("standard pairs share the l2 norm")
        };
        let m = base.space_dim();
        let s = random_invertible(m, rng);
        base.similar(&self.system, &s, SpaceNorm::L2(m))
            .expect("similar pairs are covariant")
    }
}

/// `ℓ^p` on `ℂ^m` for `p ∈ {1, 2, ∞}`.
pub fn coordinate_norm(p: f64, m: usize) -> SpaceNorm {
    if p == 1.0 {
        SpaceNorm::L1(m)
    } else if p == 2.0 {
        SpaceNorm::L2(m)
    } else {
        SpaceNorm::LInf(m)
    }
}

fn scalar(x: C64) -> Mat {
    Mat::from_element(1, 1, x)
}

fn swap() -> Mat {
    Mat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

fn diag2(a: C64, b: C64) -> Mat {
    Mat::from_row_slice(2, 2, &[a, ZERO, ZERO, b])
}

fn pair(sys: &DynamicalSystem, pi: Vec<Mat>, u: Vec<Mat>) -> CovariantPair {
    let m = u[0].nrows();
    CovariantPair::new(sys, pi, u, Flavor::MM, SpaceNorm::L2(m)).expect("fixture pair")
}

fn powers(x: &Mat, n: usize) -> Vec<Mat> {
    let mut out = Vec::with_capacity(n);
    let mut acc = identity(x.nrows());
    for _ in 0..n {
        out.push(acc.clone());
        acc = &acc * x;
    }
    out
}

/// Z2 acting trivially on ℂ, `ω = (1, 2)`.
pub fn f1() -> Fixture {
    let group = FiniteGroup::cyclic(2);
    let system = DynamicalSystem::trivial(NormedAlgebra::scalars(), group.clone());
    let weight = Weight::new(&group, alloc::vec![1.0, 2.0]).expect("weight");
    let character = Character::new(&group, alloc::vec![ONE, -ONE]).expect("character");
    let pairs = alloc::vec![
        pair(
            &system,
            alloc::vec![scalar(ONE)],
            alloc::vec![scalar(ONE), scalar(ONE)]
        ),
        pair(
            &system,
            alloc::vec![scalar(ONE)],
            alloc::vec![scalar(ONE), scalar(-ONE)]
        ),
        pair(
            &system,
            alloc::vec![identity(2)],
            alloc::vec![identity(2), swap()]
        ),
    ];
    Fixture {
        id: String::from("F1"),
        system,
        weight,
        character,
        pairs,
    }
}

/// Z2 flipping the coordinates of ℂ² with the sup norm, `ω ≡ 1`.
pub fn f2() -> Fixture {
    let group = FiniteGroup::cyclic(2);
    let system = DynamicalSystem::coordinate_permutation(
        NormedAlgebra::diag(2),
        group.clone(),
        &[alloc::vec![0, 1], alloc::vec![1, 0]],
    )
    .expect("flip is an action");
    let weight = Weight::constant(&group);
    let character = Character::new(&group, alloc::vec![ONE, -ONE]).expect("character");
    let pi = alloc::vec![diag2(ONE, ZERO), diag2(ZERO, ONE)];
    let pairs = alloc::vec![
        pair(&system, pi.clone(), alloc::vec![identity(2), swap()]),
        pair(&system, pi, alloc::vec![identity(2), -swap()]),
    ];
    Fixture {
        id: String::from("F2"),
        system,
        weight,
        character,
        pairs,
    }
}

/// The standard representation of S3 on `{x ∈ ℂ³ : Σx = 0}` in the basis
/// `e0 − e1, e1 − e2`, indexed like [`FiniteGroup::symmetric`].
pub fn s3_standard_rep() -> Vec<Mat> {
    permutations(3)
        .iter()
        .map(|sigma| {
            let mut m = Mat::zeros(2, 2);
            for j in 0..2 {
                let mut v = [0.0f64; 3];
                v[sigma[j]] += 1.0;
                v[sigma[j + 1]] -= 1.0;
                m[(0, j)] = re(v[0]);
                m[(1, j)] = re(-v[2]);
            }
            m
        })
        .collect()
}

/// Sign of each permutation of S3.
pub fn s3_sign() -> Vec<C64> {
    permutations(3)
        .iter()
        .map(|p| {
            let inversions = (0..3)
                .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            if inversions % 2 == 0 {
                ONE
            } else {
                -ONE
            }
        })
        .collect()
}

/// `1 + word length` over `generators`.
pub fn word_length_weight(group: &FiniteGroup, generators: &[usize]) -> Weight {
    let n = group.order();
    let mut len = alloc::vec![usize::MAX; n];
    len[group.identity()] = 0;
    let mut frontier = alloc::vec![group.identity()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for &g in generators {
                for y in [group.mul(x, g), group.mul(x, group.inv(g))] {
                    if len[y] == usize::MAX {
                        len[y] = len[x] + 1;
                        next.push(y);
                    }
                }
            }
        }
        frontier = next;
    }
    Weight::new(group, len.into_iter().map(|l| 1.0 + l as f64).collect())
        .expect("word length weights are submultiplicative")
}

/// S3 acting on M₂ by conjugation with the standard representation;
/// `ω = 1 +` word length in the transpositions (0 1), (1 2).
pub fn f3() -> Fixture {
    let group = FiniteGroup::symmetric(3);
    let rho = s3_standard_rep();
    let system = DynamicalSystem::inner_conjugation(NormedAlgebra::matrix(2), group.clone(), &rho)
        .expect("conjugation is an action");
    let weight = word_length_weight(&group, &[2, 1]);
    let sign = s3_sign();
    let character = Character::new(&group, sign.clone()).expect("sign is a character");
    let units: Vec<Mat> = (0..4)
        .map(|k| {
            let mut e = Mat::zeros(2, 2);
            e[(k / 2, k % 2)] = ONE;
            e
        })
        .collect();
    let signed: Vec<Mat> = rho.iter().zip(&sign).map(|(x, s)| x * *s).collect();
    let regular: Vec<Mat> = (0..4)
        .map(|k| system.algebra().left_regular(&system.algebra().basis(k)))
        .collect();
    let pairs = alloc::vec![
        pair(&system, units.clone(), rho),
        pair(&system, units, signed),
        pair(&system, regular, system.alphas().to_vec()),
    ];
    Fixture {
        id: String::from("F3"),
        system,
        weight,
        character,
        pairs,
    }
}

/// Z2 acting on the column algebra by `(x, y) ↦ (x, −y)`.
pub fn f4() -> Fixture {
    let group = FiniteGroup::cyclic(2);
    let system = DynamicalSystem::new(
        NormedAlgebra::column(),
        group.clone(),
        alloc::vec![identity(2), diag2(ONE, -ONE)],
    )
    .expect("sign change is an action");
    let weight = Weight::new(&group, alloc::vec![1.0, 1.5]).expect("weight");
    let character = Character::new(&group, alloc::vec![ONE, -ONE]).expect("character");
    let pi: Vec<Mat> = (0..2)
        .map(|k| system.algebra().left_regular(&system.algebra().basis(k)))
        .collect();
    let pairs = alloc::vec![
        pair(
            &system,
            pi.clone(),
            alloc::vec![identity(2), diag2(ONE, -ONE)]
        ),
        pair(&system, pi, alloc::vec![identity(2), diag2(-ONE, ONE)]),
    ];
    Fixture {
        id: String::from("F4"),
        system,
        weight,
        character,
        pairs,
    }
}

/// Z4 acting on ℂ² (sup norm) through the flip; `ω = (1, 2, 2, 2)` and
/// `χ(g^k) = i^k`.
pub fn f5() -> Fixture {
    let group = FiniteGroup::cyclic(4);
    let system = DynamicalSystem::coordinate_permutation(
        NormedAlgebra::diag(2),
        group.clone(),
        &[
            alloc::vec![0, 1],
            alloc::vec![1, 0],
            alloc::vec![0, 1],
            alloc::vec![1, 0],
        ],
    )
    .expect("flip powers are an action");
    let weight = Weight::new(&group, alloc::vec![1.0, 2.0, 2.0, 2.0]).expect("weight");
    let character = Character::new(
        &group,
        powers(&scalar(I), 4).iter().map(|x| x[(0, 0)]).collect(),
    )
    .expect("character");
    let pi = alloc::vec![diag2(ONE, ZERO), diag2(ZERO, ONE)];
    let pairs = alloc::vec![
        pair(&system, pi.clone(), powers(&swap(), 4)),
        pair(&system, pi, powers(&(swap() * I), 4)),
    ];
    Fixture {
        id: String::from("F5"),
        system,
        weight,
        character,
        pairs,
    }
}

pub fn all() -> Vec<Fixture> {
    alloc::vec![f1(), f2(), f3(), f4(), f5()]
}

pub fn by_id(id: &str) -> Option<Fixture> {
    match id.to_ascii_uppercase().as_str() {
        "F1" => Some(f1()),
        "F2" => Some(f2()),
        "F3" => Some(f3()),
        "F4" => Some(f4()),
        "F5" => Some(f5()),
        _ => None,
    }
}

/// `ℂ` with the trivial action of Z2 and of S3, used as the right-hand side
/// of the bimodule checks.
pub fn scalar_system(group: FiniteGroup) -> DynamicalSystem {
    DynamicalSystem::trivial(NormedAlgebra::scalars(), group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_rep_is_a_homomorphism_with_integer_entries() {
        let g = FiniteGroup::symmetric(3);
        let rho = s3_standard_rep();
        for s in g.elements() {
            for t in g.elements() {
                assert!(max_abs_diff(&(&rho[s] * &rho[t]), &rho[g.mul(s, t)]) < 1e-15);
            }
        }
        assert_eq!(rho[2], Mat::from_row_slice(2, 2, &[-ONE, ONE, ZERO, ONE]));
        assert_eq!(rho[1], Mat::from_row_slice(2, 2, &[ONE, ZERO, ONE, -ONE]));
    }

    #[test]
    fn s3_word_lengths() {
        let w = f3().weight;
        assert_eq!(w.values(), &[1.0, 2.0, 2.0, 3.0, 3.0, 4.0]);
    }

    #[test]
    fn fixtures_are_valid_and_non_degenerate() {
        for fx in all() {
            fx.system.validate().unwrap();
            assert!(!fx.pairs.is_empty());
            for p in &fx.pairs {
                assert!(p.is_non_degenerate(), "{}", fx.id);
            }
        }
        assert!(f3().system.c_alpha() > 1.0);
        assert!(f4().system.algebra().left_identity().is_none());
        assert!(f4().system.algebra().right_identity().is_some());
    }

    #[test]
    fn random_pairs_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for fx in all() {
            for _ in 0..3 {
                assert!(fx.random_pair(&mut rng).is_non_degenerate());
            }
        }
    }

    #[test]
    fn lookup_by_id() {
        assert_eq!(by_id("f3").unwrap().id, "F3");
        assert!(by_id("F9").is_none());
    }
}
