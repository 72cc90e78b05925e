//! Finite groups with counting Haar measure, weights and characters.
//!
//! Elements are indices `0..order`. Haar measure is counting measure, so
//! every integral over the group is a plain sum and the modular function is
//! identically 1; it is still stored so that formulas carrying Δ can be
//! written out term by term.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{C64, ONE};

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    modular: Vec<f64>,
}

impl FiniteGroup {
    /// Validates a Cayley table `table[s][t] = s·t`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NoIdentity);
        }
        let mut mult = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::RaggedTable {
                    row,
                    len: entries.len(),
                    order: n,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(Error::EntryOutOfRange { row, col, value });
                }
                mult.push(value);
            }
        }
        let at = |s: usize, t: usize| mult[s * n + t];
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(Error::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| at(g, h) == identity && at(h, g) == identity)
                .ok_or(Error::NoInverse(g))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup {
            order: n,
            mult,
            identity,
            inverse,
            modular: alloc::vec![1.0; n],
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// `Z_n` with element `k` standing for `g^k`.
    pub fn cyclic(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::from_table(&table).expect("cyclic table is a group")
    }

    /// `S_n` with permutations (as image arrays) in lexicographic order and
    /// composition `(στ)(i) = σ(τ(i))`; element 0 is the identity.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                        index(&st)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table).expect("permutations form a group")
    }

    /// Dihedral group of order 2n; index `k + n·j` stands for `r^k s^j`.
    pub fn dihedral(n: usize) -> Self {
        let m = 2 * n;
        let table: Vec<Vec<usize>> = (0..m)
            .map(|x| {
                (0..m)
                    .map(|y| {
                        let (a, b) = (x % n, x / n);
                        let (c, d) = (y % n, y / n);
                        let k = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                        k + n * ((b + d) % 2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table).expect("dihedral table is a group")
    }

    /// Parses `Z_n`, `S_n` or `D_n`.
    pub fn by_name(name: &str) -> Result<Self> {
        let bad = || Error::UnknownGroup(String::from(name));
        let (kind, n) = name.split_once('_').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        match kind {
            "Z" if n >= 1 => Ok(FiniteGroup::cyclic(n)),
            "S" if (1..=5).contains(&n) => Ok(FiniteGroup::symmetric(n)),
            "D" if n >= 1 => Ok(FiniteGroup::dihedral(n)),
            _ => Err(bad()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.mult[s * self.order + t]
    }

    pub fn inv(&self, s: usize) -> usize {
        self.inverse[s]
    }

    /// Δ(s); identically 1 for finite groups.
    pub fn modular(&self, s: usize) -> f64 {
        self.modular[s]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|s| self.elements().all(|t| self.mul(s, t) == self.mul(t, s)))
    }

    /// `G^o` with `s ∘ t = t·s`; same identity and inverses.
    pub fn opposite(&self) -> Self {
        let n = self.order;
        let mut mult = alloc::vec![0; n * n];
        for s in 0..n {
            for t in 0..n {
                mult[s * n + t] = self.mul(t, s);
            }
        }
        FiniteGroup {
            order: n,
            mult,
            identity: self.identity,
            inverse: self.inverse.clone(),
            modular: self.modular.clone(),
        }
    }
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// A submultiplicative positive function on the group.
#[derive(Clone, Debug, PartialEq)]
pub struct Weight {
    values: Vec<f64>,
}

impl Weight {
    pub fn new(group: &FiniteGroup, values: Vec<f64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: values.len(),
            });
        }
        if let Some(s) = values.iter().position(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::NonPositiveWeight(s));
        }
        for s in group.elements() {
            for t in group.elements() {
                let lhs = values[group.mul(s, t)];
                if lhs > values[s] * values[t] * (1.0 + 1e-12) {
                    return Err(Error::NotSubmultiplicative(s, t));
                }
            }
        }
        debug_assert!(values[group.identity()] >= 1.0 - 1e-12);
        Ok(Weight { values })
    }

    pub fn constant(group: &FiniteGroup) -> Self {
        Weight {
            values: alloc::vec![1.0; group.order()],
        }
    }

    pub fn at(&self, s: usize) -> f64 {
        self.values[s]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `inf_V sup_{r∈V} ω(r)` over neighbourhoods V of e. The singleton {e}
    /// is a neighbourhood in a discrete group, so this is ω(e).
    pub fn near_identity(&self, group: &FiniteGroup) -> f64 {
        self.values[group.identity()]
    }

    /// `true` when `ω(s⁻¹) = ω(s)` for every s.
    pub fn is_symmetric(&self, group: &FiniteGroup) -> bool {
        group
            .elements()
            .all(|s| (self.values[s] - self.values[group.inv(s)]).abs() <= 1e-12 * self.values[s])
    }
}

/// A homomorphism `G → ℂ^×`.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    values: Vec<C64>,
}

impl Character {
    pub fn new(group: &FiniteGroup, values: Vec<C64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: values.len(),
            });
        }
        if let Some(s) = values.iter().position(|z| z.norm() == 0.0) {
            return Err(Error::ZeroCharacter(s));
        }
        for s in group.elements() {
            for t in group.elements() {
                let lhs = values[group.mul(s, t)];
                let rhs = values[s] * values[t];
                if (lhs - rhs).norm() > 1e-12 * (1.0 + rhs.norm()) {
                    return Err(Error::NotMultiplicative(s, t));
                }
            }
        }
        Ok(Character { values })
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Character {
            values: alloc::vec![ONE; group.order()],
        }
    }

    /// Δ viewed as a character.
    pub fn modular(group: &FiniteGroup) -> Self {
        Character {
            values: group
                .elements()
                .map(|s| C64::new(group.modular(s), 0.0))
                .collect(),
        }
    }

    pub fn at(&self, s: usize) -> C64 {
        self.values[s]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Pointwise product; characters take values in a commutative group.
    pub fn product(&self, other: &Character) -> Character {
        Character {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Pointwise reciprocal.
    pub fn reciprocal(&self) -> Character {
        Character {
            values: self.values.iter().map(|z| ONE / z).collect(),
        }
    }

    /// `self · other⁻¹`.
    pub fn quotient(&self, other: &Character) -> Character {
        self.product(&other.reciprocal())
    }
}
