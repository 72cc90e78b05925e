//! JSON (or TOML) configuration and its validation into fixtures.
//!
//! ```json
//! {
//!   "fixtures": ["F1", "F3"],
//!   "system": {
//!     "id": "Z3",
//!     "group": "Z_3",
//!     "algebra": "scalars",
//!     "action": "trivial",
//!     "weight": [1, 2, 2],
//!     "character": [1, [-0.5, 0.866], [-0.5, -0.866]],
//!     "pairs": [{ "pi": [[[1]]], "u": [[[1]], [[1]], [[1]]] }]
//!   },
//!   "suite": "core",
//!   "seed": 7
//! }
//! ```
//!
//! Complex numbers are either a real number or `[re, im]`; matrices are
//! arrays of rows.

use std::path::Path;

use crossbench_core::algebras::{NormTag, NormedAlgebra, Structure};
use crossbench_core::crossed::{CovariantPair, Flavor};
use crossbench_core::fixtures::{self, Fixture};
use crossbench_core::{
    AFunction, Character, DynamicalSystem, Error as CoreError, FiniteGroup, Mat, SpaceNorm, Weight,
    C64,
};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Built-in fixture ids; all five when empty and no custom system is given.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fixtures: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub group: GroupSpec,
    pub algebra: AlgebraSpec,
    #[serde(default)]
    pub action: ActionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<Vec<ComplexSpec>>,
    #[serde(default)]
    pub pairs: Vec<PairSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    /// `Z_n`, `S_n` or `D_n`.
    Named(String),
    Table {
        table: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    /// `scalars`, `diag(n)`, `matrix(n)` or `column`.
    Named(String),
    Constants {
        dim: usize,
        /// `constants[i][j]` is the coefficient vector of `e_i e_j`.
        constants: Vec<Vec<Vec<ComplexSpec>>>,
        norm: NormSpec,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormSpec {
    Sup,
    One,
    Operator,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    #[default]
    #[serde(skip)]
    Trivial,
    /// `"trivial"`.
    Named(String),
    /// One matrix per group element.
    Matrices(Vec<MatrixSpec>),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexSpec {
    pub fn value(self) -> C64 {
        match self {
            ComplexSpec::Real(x) => C64::new(x, 0.0),
            ComplexSpec::Pair([re, im]) => C64::new(re, im),
        }
    }

    pub fn from_value(z: C64) -> Self {
        if z.im == 0.0 {
            ComplexSpec::Real(z.re)
        } else {
            ComplexSpec::Pair([z.re, z.im])
        }
    }
}

pub type MatrixSpec = Vec<Vec<ComplexSpec>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    /// `π(e_i)` for each basis element.
    pub pi: Vec<MatrixSpec>,
    /// `U_r` for each group element.
    pub u: Vec<MatrixSpec>,
    #[serde(default = "default_flavor")]
    pub flavor: String,
    /// `l1`, `l2` or `linf`.
    #[serde(default = "default_norm")]
    pub norm: String,
}

fn default_flavor() -> String {
    String::from("MM")
}

fn default_norm() -> String {
    String::from("l2")
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            HarnessError::config(format!("line {}, column {}", e.line(), e.column()), e)
        })
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let at = e
                .span()
                .map_or_else(|| String::from("document"), |s| format!("byte {}", s.start));
            HarnessError::config(at, e.message())
        })
    }

    /// Reads JSON, or TOML when the extension is `.toml`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        })?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => Config::from_toml(&text),
            _ => Config::from_json(&text),
        }
    }

    /// Validates the configuration into the fixtures the suites run on.
    pub fn fixtures(&self) -> Result<Vec<Fixture>> {
        let mut out = Vec::new();
        for (i, id) in self.fixtures.iter().enumerate() {
            let fx = fixtures::by_id(id).ok_or_else(|| {
                HarnessError::config(format!("fixtures[{i}]"), format!("unknown fixture {id:?}"))
            })?;
            out.push(fx);
        }
        if let Some(spec) = &self.system {
            out.push(spec.build()?);
        }
        if out.is_empty() {
            out = fixtures::all();
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(HarnessError::config("tolerance", "must be positive"));
            }
        }
        Ok(out)
    }
}

fn at(path: &str, e: CoreError) -> HarnessError {
    HarnessError::config(path, e)
}

pub fn parse_matrix(path: &str, m: &MatrixSpec) -> Result<Mat> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if let Some((r, row)) = m.iter().enumerate().find(|(_, row)| row.len() != cols) {
        return Err(HarnessError::config(
            format!("{path}[{r}]"),
            format!("row has {} entries, expected {cols}", row.len()),
        ));
    }
    Ok(Mat::from_fn(rows, cols, |i, j| m[i][j].value()))
}

fn parse_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Named(name) => FiniteGroup::by_name(name).map_err(|e| at("system.group", e)),
        GroupSpec::Table { table } => FiniteGroup::from_table(table).map_err(|e| {
            let path = match &e {
                CoreError::RaggedTable { row, .. } => format!("system.group.table[{row}]"),
                CoreError::EntryOutOfRange { row, col, .. } => {
                    format!("system.group.table[{row}][{col}]")
                }
                _ => String::from("system.group.table"),
            };
            at(&path, e)
        }),
    }
}

fn parse_algebra(spec: &AlgebraSpec) -> Result<NormedAlgebra> {
    match spec {
        AlgebraSpec::Named(name) => NormedAlgebra::by_name(name).ok_or_else(|| {
            HarnessError::config("system.algebra", format!("unknown algebra {name:?}"))
        }),
        AlgebraSpec::Constants {
            dim,
            constants,
            norm,
        } => {
            let d = *dim;
            if constants.len() != d {
                return Err(HarnessError::config(
                    "system.algebra.constants",
                    format!("expected {d} rows, found {}", constants.len()),
                ));
            }
            let mut flat = Vec::with_capacity(d * d * d);
            for (i, row) in constants.iter().enumerate() {
                if row.len() != d {
                    return Err(HarnessError::config(
                        format!("system.algebra.constants[{i}]"),
                        format!("expected {d} products, found {}", row.len()),
                    ));
                }
                for (j, v) in row.iter().enumerate() {
                    if v.len() != d {
                        return Err(HarnessError::config(
                            format!("system.algebra.constants[{i}][{j}]"),
                            format!("expected {d} coefficients, found {}", v.len()),
                        ));
                    }
                    flat.extend(v.iter().map(|z| z.value()));
                }
            }
            let structure =
                Structure::new(d, flat).map_err(|e| at("system.algebra.constants", e))?;
            let tag = match norm {
                NormSpec::Sup => NormTag::Sup,
                NormSpec::One => NormTag::One,
                NormSpec::Operator => {
                    let n = (1..=d).find(|n| n * n >= d).unwrap_or(0);
                    NormTag::Operator(n)
                }
            };
            NormedAlgebra::new(structure, tag).map_err(|e| at("system.algebra", e))
        }
    }
}

fn parse_norm(path: &str, name: &str, m: usize) -> Result<SpaceNorm> {
    match name.to_ascii_lowercase().as_str() {
        "l1" => Ok(SpaceNorm::L1(m)),
        "l2" => Ok(SpaceNorm::L2(m)),
        "linf" => Ok(SpaceNorm::LInf(m)),
        other => Err(HarnessError::config(
            path,
            format!("unknown norm {other:?} (expected l1, l2 or linf)"),
        )),
    }
}

impl SystemSpec {
    pub fn build(&self) -> Result<Fixture> {
        let group = parse_group(&self.group)?;
        let algebra = parse_algebra(&self.algebra)?;
        let system = match &self.action {
            ActionSpec::Trivial => DynamicalSystem::trivial(algebra, group.clone()),
            ActionSpec::Named(name) if name == "trivial" => {
                DynamicalSystem::trivial(algebra, group.clone())
            }
            ActionSpec::Named(name) => {
                return Err(HarnessError::config(
                    "system.action",
                    format!("unknown action {name:?}"),
                ))
            }
            ActionSpec::Matrices(ms) => {
                let alpha = ms
                    .iter()
                    .enumerate()
                    .map(|(g, m)| parse_matrix(&format!("system.action[{g}]"), m))
                    .collect::<Result<Vec<_>>>()?;
                DynamicalSystem::new(algebra, group.clone(), alpha)
                    .map_err(|e| at("system.action", e))?
            }
        };
        let weight = match &self.weight {
            Some(w) => Weight::new(&group, w.clone()).map_err(|e| at("system.weight", e))?,
            None => Weight::constant(&group),
        };
        let character = match &self.character {
            Some(c) => Character::new(&group, c.iter().map(|z| z.value()).collect())
                .map_err(|e| at("system.character", e))?,
            None => Character::trivial(&group),
        };
        if self.pairs.is_empty() {
            return Err(HarnessError::config(
                "system.pairs",
                "at least one covariant pair is required",
            ));
        }
        let pairs = self
            .pairs
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let path = format!("system.pairs[{k}]");
                let pi =
                    p.pi.iter()
                        .enumerate()
                        .map(|(i, m)| parse_matrix(&format!("{path}.pi[{i}]"), m))
                        .collect::<Result<Vec<_>>>()?;
                let u =
                    p.u.iter()
                        .enumerate()
                        .map(|(r, m)| parse_matrix(&format!("{path}.u[{r}]"), m))
                        .collect::<Result<Vec<_>>>()?;
                let flavor: Flavor = p
                    .flavor
                    .parse()
                    .map_err(|e| at(&format!("{path}.flavor"), e))?;
                let m = u.first().map_or(0, Mat::nrows);
                let norm = parse_norm(&format!("{path}.norm"), &p.norm, m)?;
                CovariantPair::new(&system, pi, u, flavor, norm).map_err(|e| at(&path, e))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Fixture {
            id: self.id.clone().unwrap_or_else(|| String::from("custom")),
            system,
            weight,
            character,
            pairs,
        })
    }
}

/// An element of `L¹(G, A)` as `values[s][i]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec(pub Vec<Vec<ComplexSpec>>);

impl FunctionSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| HarnessError::config("function", e))
    }

    pub fn to_function(&self, fx: &Fixture) -> Result<AFunction> {
        let (n, d) = (fx.system.group().order(), fx.system.algebra().dim());
        if self.0.len() != n {
            return Err(HarnessError::config(
                "function",
                format!("expected {n} group values, found {}", self.0.len()),
            ));
        }
        let values: Vec<Vec<C64>> = self
            .0
            .iter()
            .map(|v| v.iter().map(|z| z.value()).collect())
            .collect();
        if let Some(s) = values.iter().position(|v| v.len() != d) {
            return Err(HarnessError::config(
                format!("function[{s}]"),
                format!("expected {d} coefficients"),
            ));
        }
        Ok(AFunction::from_values(&values)?)
    }

    pub fn from_function(f: &AFunction) -> Self {
        FunctionSpec(
            f.values()
                .into_iter()
                .map(|v| v.into_iter().map(ComplexSpec::from_value).collect())
                .collect(),
        )
    }
}
