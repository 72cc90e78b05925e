//! Finite-dimensional associative algebras given by structure constants.

use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{least_squares, random_vec, spectral_norm, unvec, Mat, C64, ONE, ZERO};
use crate::norms::SpaceNorm;

/// Multiplication `e_i e_j = Σ_k c[i][j][k] e_k` on `ℂ^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct Structure {
    dim: usize,
    c: Vec<C64>,
}

impl Structure {
    /// Validates length and associativity on all basis triples.
    pub fn new(dim: usize, c: Vec<C64>) -> Result<Self> {
        let s = Structure::from_constants(dim, c)?;
        let (defect, (i, j, k)) = s.associativity_defect();
        if defect > 1e-12 * (1.0 + s.scale()) {
            return Err(Error::StructureNotAssociative(i, j, k));
        }
        Ok(s)
    }

    /// Length check only; for algebras that are associative by construction.
    pub fn from_constants(dim: usize, c: Vec<C64>) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: c.len(),
            });
        }
        Ok(Structure { dim, c })
    }

    pub fn from_fn<F>(dim: usize, mut product: F) -> Self
    where
        F: FnMut(usize, usize) -> Vec<C64>,
    {
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = product(i, j);
                debug_assert_eq!(p.len(), dim);
                c.extend(p);
            }
        }
        Structure { dim, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[C64] {
        &self.c
    }

    fn scale(&self) -> f64 {
        self.c.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    /// Coefficients of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[C64] {
        let d = self.dim;
        &self.c[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn multiply(&self, a: &[C64], b: &[C64]) -> Vec<C64> {
        assert_eq!(a.len(), self.dim, "left factor has the wrong dimension");
        assert_eq!(b.len(), self.dim, "right factor has the wrong dimension");
        let mut out = alloc::vec![ZERO; self.dim];
        for (i, ai) in a.iter().enumerate() {
            if *ai == ZERO {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if *bj == ZERO {
                    continue;
                }
                let w = ai * bj;
                for (o, c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    *o += w * c;
                }
            }
        }
        out
    }

    /// Largest `|(e_i e_j) e_k − e_i (e_j e_k)|` and where it occurs.
    pub fn associativity_defect(&self) -> (f64, (usize, usize, usize)) {
        let d = self.dim;
        let mut worst = (0.0, (0, 0, 0));
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..d {
                    let mut ek = alloc::vec![ZERO; d];
                    ek[k] = ONE;
                    let mut ei = alloc::vec![ZERO; d];
                    ei[i] = ONE;
                    let lhs = self.multiply(&ij, &ek);
                    let rhs = self.multiply(&ei, self.basis_product(j, k));
                    let err = lhs
                        .iter()
                        .zip(&rhs)
                        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).norm()));
                    if err > worst.0 {
                        worst = (err, (i, j, k));
                    }
                }
            }
        }
        worst
    }

    /// Reversed multiplication `c^o[i][j][k] = c[j][i][k]`.
    pub fn opposite(&self) -> Structure {
        Structure::from_fn(self.dim, |i, j| self.basis_product(j, i).to_vec())
    }

    /// Matrix of `b ↦ a b` on coefficient vectors.
    pub fn left_mult(&self, a: &[C64]) -> Mat {
        let d = self.dim;
        let mut m = Mat::zeros(d, d);
        for (i, ai) in a.iter().enumerate() {
            if *ai == ZERO {
                continue;
            }
            for j in 0..d {
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    m[(k, j)] += ai * c;
                }
            }
        }
        m
    }

    /// Matrix of `b ↦ b a` on coefficient vectors.
    pub fn right_mult(&self, a: &[C64]) -> Mat {
        let d = self.dim;
        let mut m = Mat::zeros(d, d);
        for (j, aj) in a.iter().enumerate() {
            if *aj == ZERO {
                continue;
            }
            for i in 0..d {
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    m[(k, i)] += aj * c;
                }
            }
        }
        m
    }

    fn solve_identity(&self, left: bool, right: bool) -> Option<Vec<C64>> {
        let d = self.dim;
        let blocks = usize::from(left) + usize::from(right);
        let mut a = Mat::zeros(blocks * d * d, d);
        let mut rhs = alloc::vec![ZERO; blocks * d * d];
        let mut row = 0;
        let sides = [(left, true), (right, false)];
        for (_, is_left) in sides.into_iter().filter(|(on, _)| *on) {
            for j in 0..d {
                for k in 0..d {
                    for i in 0..d {
                        let p = if is_left {
                            self.basis_product(i, j)
                        } else {
                            self.basis_product(j, i)
                        };
                        a[(row, i)] = p[k];
                    }
                    rhs[row] = if j == k { ONE } else { ZERO };
                    row += 1;
                }
            }
        }
        let (u, residual) = least_squares(&a, &rhs);
        (residual <= 1e-10).then(|| clean(u))
    }

    /// Minimum-norm `u` with `u a = a` for all `a`, if one exists.
    pub fn find_left_identity(&self) -> Option<Vec<C64>> {
        self.solve_identity(true, false)
    }

    /// Minimum-norm `u` with `a u = a` for all `a`, if one exists.
    pub fn find_right_identity(&self) -> Option<Vec<C64>> {
        self.solve_identity(false, true)
    }

    pub fn find_identity(&self) -> Option<Vec<C64>> {
        self.solve_identity(true, true)
    }

    /// Structure of the algebraic tensor product, basis `e_i ⊗ f_j ↦ i·dim(f) + j`.
    pub fn kron(&self, other: &Structure) -> Structure {
        let (d1, d2) = (self.dim, other.dim);
        Structure::from_fn(d1 * d2, |x, y| {
            let (i1, j1) = (x / d2, x % d2);
            let (i2, j2) = (y / d2, y % d2);
            let p = self.basis_product(i1, i2);
            let q = other.basis_product(j1, j2);
            let mut out = Vec::with_capacity(d1 * d2);
            for a in p {
                for b in q {
                    out.push(a * b);
                }
            }
            out
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                self.basis_product(i, j)
                    .iter()
                    .zip(self.basis_product(j, i))
                    .all(|(x, y)| (x - y).norm() <= 1e-12)
            })
        })
    }
}

fn clean(mut v: Vec<C64>) -> Vec<C64> {
    for z in v.iter_mut() {
        for part in [&mut z.re, &mut z.im] {
            let nearest = libm::round(*part);
            if (*part - nearest).abs() < 1e-12 {
                *part = nearest;
            }
        }
    }
    v
}

/// Which norm the coefficient space carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormTag {
    /// `max_i |a_i|`.
    Sup,
    /// `Σ_i |a_i|`.
    One,
    /// Operator norm of the row-major n×n matrix; requires `dim = n²`.
    Operator(usize),
}

/// A structure-constant algebra with a norm and its (one-sided) identities.
#[derive(Clone, Debug, PartialEq)]
pub struct NormedAlgebra {
    structure: Structure,
    tag: NormTag,
    identity: Option<Vec<C64>>,
    left_identity: Option<Vec<C64>>,
    right_identity: Option<Vec<C64>>,
}

impl NormedAlgebra {
    /// Identities are found by exact linear solves; the norm is checked for
    /// submultiplicativity on basis pairs and seeded random pairs.
    pub fn new(structure: Structure, tag: NormTag) -> Result<Self> {
        let identity = structure.find_identity();
        let left_identity = identity.clone().or_else(|| structure.find_left_identity());
        let right_identity = identity.clone().or_else(|| structure.find_right_identity());
        NormedAlgebra::with_identities(structure, tag, identity, left_identity, right_identity)
    }

    /// Uses the supplied identities after checking their defining equations.
    pub fn with_identities(
        structure: Structure,
        tag: NormTag,
        identity: Option<Vec<C64>>,
        left_identity: Option<Vec<C64>>,
        right_identity: Option<Vec<C64>>,
    ) -> Result<Self> {
        if let NormTag::Operator(n) = tag {
            if n * n != structure.dim() {
                return Err(Error::NotSquareDimension(structure.dim()));
            }
        }
        let alg = NormedAlgebra {
            structure,
            tag,
            identity,
            left_identity,
            right_identity,
        };
        for (u, left, right) in [
            (&alg.identity, true, true),
            (&alg.left_identity, true, false),
            (&alg.right_identity, false, true),
        ] {
            if let Some(u) = u {
                if !alg.is_identity(u, left, right) {
                    return Err(Error::BadIdentity);
                }
            }
        }
        let excess = alg.submultiplicativity_excess(16);
        if excess > 1e-10 {
            return Err(Error::NormNotSubmultiplicative(excess));
        }
        Ok(alg)
    }

    fn is_identity(&self, u: &[C64], left: bool, right: bool) -> bool {
        if u.len() != self.dim() {
            return false;
        }
        (0..self.dim()).all(|j| {
            let e = self.basis(j);
            let ok_left = !left || close_vec(&self.mul(u, &e), &e);
            let ok_right = !right || close_vec(&self.mul(&e, u), &e);
            ok_left && ok_right
        })
    }

    /// `max(‖ab‖ − ‖a‖‖b‖)` over basis pairs and `samples` random pairs.
    pub fn submultiplicativity_excess(&self, samples: usize) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        let mut check = |a: &[C64], b: &[C64]| {
            let excess = self.norm(&self.mul(a, b)) - self.norm(a) * self.norm(b);
            worst = worst.max(excess / (1.0 + self.norm(a) * self.norm(b)));
        };
        for i in 0..d {
            for j in 0..d {
                check(&self.basis(i), &self.basis(j));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xa19e);
        for _ in 0..samples {
            let a = random_vec(d, &mut rng);
            let b = random_vec(d, &mut rng);
            check(&a, &b);
        }
        worst
    }

    /// The complex numbers.
    pub fn scalars() -> Self {
        NormedAlgebra::new(Structure::from_fn(1, |_, _| alloc::vec![ONE]), NormTag::One)
            .expect("scalars form a normed algebra")
    }

    /// `ℂ^n` with pointwise product and the sup norm.
    pub fn diag(n: usize) -> Self {
        let s = Structure::from_fn(n, |i, j| {
            let mut v = alloc::vec![ZERO; n];
            if i == j {
                v[i] = ONE;
            }
            v
        });
        NormedAlgebra::new(s, NormTag::Sup).expect("pointwise algebra is normed")
    }

    /// `M_n(ℂ)` with matrix units `E_ij ↦ i·n + j` and the operator norm.
    pub fn matrix(n: usize) -> Self {
        let s = Structure::from_fn(n * n, |x, y| {
            let (i, j) = (x / n, x % n);
            let (k, l) = (y / n, y % n);
            let mut v = alloc::vec![ZERO; n * n];
            if j == k {
                v[i * n + l] = ONE;
            }
            v
        });
        NormedAlgebra::new(s, NormTag::Operator(n)).expect("matrix algebra is normed")
    }

    /// Matrices `[[x, 0], [y, 0]]` with coordinates `(x, y)` and the one-norm.
    ///
    /// `(x, y)(x', y') = (x x', y x')`: every `(1, t)` is a right identity
    /// and there is no left identity.
    pub fn column() -> Self {
        let s = Structure::from_fn(2, |i, j| match (i, j) {
            (0, 0) => alloc::vec![ONE, ZERO],
            (1, 0) => alloc::vec![ZERO, ONE],
            _ => alloc::vec![ZERO, ZERO],
        });
        NormedAlgebra::new(s, NormTag::One).expect("column algebra is normed")
    }

    /// Parses `scalars`, `diag(n)`, `matrix(n)` or `column(2)`.
    pub fn by_name(name: &str) -> Option<Self> {
        let name = name.trim();
        if name == "scalars" {
            return Some(NormedAlgebra::scalars());
        }
        if name == "column(2)" || name == "column" {
            return Some(NormedAlgebra::column());
        }
        let (kind, rest) = name.split_once('(')?;
        let n: usize = rest.strip_suffix(')')?.trim().parse().ok()?;
        if n == 0 {
            return None;
        }
        match kind.trim() {
            "diag" => Some(NormedAlgebra::diag(n)),
            "matrix" => Some(NormedAlgebra::matrix(n)),
            _ => None,
        }
    }

    /// Same algebra with another norm tag.
    pub fn with_tag(&self, tag: NormTag) -> Result<Self> {
        NormedAlgebra::with_identities(
            self.structure.clone(),
            tag,
            self.identity.clone(),
            self.left_identity.clone(),
            self.right_identity.clone(),
        )
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn tag(&self) -> NormTag {
        self.tag
    }

    pub fn space_norm(&self) -> SpaceNorm {
        match self.tag {
            NormTag::Sup => SpaceNorm::LInf(self.dim()),
            NormTag::One => SpaceNorm::L1(self.dim()),
            NormTag::Operator(n) => SpaceNorm::Spectral(n),
        }
    }

    pub fn basis(&self, i: usize) -> Vec<C64> {
        let mut v = alloc::vec![ZERO; self.dim()];
        v[i] = ONE;
        v
    }

    pub fn zero(&self) -> Vec<C64> {
        alloc::vec![ZERO; self.dim()]
    }

    pub(crate) fn mul(&self, a: &[C64], b: &[C64]) -> Vec<C64> {
        self.structure.multiply(a, b)
    }

    pub fn multiply(&self, a: &[C64], b: &[C64]) -> Result<Vec<C64>> {
        for x in [a, b] {
            if x.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: x.len(),
                });
            }
        }
        Ok(self.mul(a, b))
    }

    pub fn norm(&self, a: &[C64]) -> f64 {
        match self.tag {
            NormTag::Sup => a.iter().fold(0.0, |acc, z| acc.max(z.norm())),
            NormTag::One => a.iter().map(|z| z.norm()).sum(),
            NormTag::Operator(n) => spectral_norm(&unvec(n, a)),
        }
    }

    /// `A^o`: reversed product, same norm, left and right identities swapped.
    pub fn opposite(&self) -> Self {
        NormedAlgebra {
            structure: self.structure.opposite(),
            tag: self.tag,
            identity: self.identity.clone(),
            left_identity: self.right_identity.clone(),
            right_identity: self.left_identity.clone(),
        }
    }

    /// λ(a): the matrix of left multiplication by `a`.
    pub fn left_regular(&self, a: &[C64]) -> Mat {
        self.structure.left_mult(a)
    }

    pub fn right_regular(&self, a: &[C64]) -> Mat {
        self.structure.right_mult(a)
    }

    pub fn identity(&self) -> Option<&[C64]> {
        self.identity.as_deref()
    }

    pub fn left_identity(&self) -> Option<&[C64]> {
        self.left_identity.as_deref()
    }

    pub fn right_identity(&self) -> Option<&[C64]> {
        self.right_identity.as_deref()
    }

    /// M: the norm of the identity, or of a one-sided identity when that is
    /// all there is.
    pub fn approx_identity_bound(&self) -> Option<f64> {
        if let Some(u) = &self.identity {
            return Some(self.norm(u));
        }
        [&self.left_identity, &self.right_identity]
            .into_iter()
            .flatten()
            .map(|u| self.norm(u))
            .reduce(f64::max)
    }

    pub fn describe(&self) -> String {
        alloc::format!("dim {} algebra with {:?} norm", self.dim(), self.tag)
    }
}

fn close_vec(a: &[C64], b: &[C64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= 1e-10)
}
