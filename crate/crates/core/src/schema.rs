//! JSON file formats: group-spec files describing `G₁ ∗ G₂` and descriptor
//! files for the growth classifier.
//!
//! Group spec (`freeprod/group-spec/v1`):
//!
//! ```json
//! {
//!   "schema": "freeprod/group-spec/v1",
//!   "factors": [
//!     {"kind": "finite_cyclic", "n": 2, "generators": [{"name": "a", "element": 1}]},
//!     {"kind": "finite_cyclic", "n": 3, "generators": [{"name": "b", "element": 1}]}
//!   ]
//! }
//! ```
//!
//! Factor kinds: `finite_table` (`elements`: labels, id 0 = identity;
//! `table`: row-major Cayley table of ids; generator `element` is an id or a
//! label), `finite_cyclic` (`n`; generator `element` is an exponent),
//! `infinite_cyclic` (exactly one generator, no `element`) and `free`
//! (`rank` generators, no `element`).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::FactorError;
use crate::factor::FactorGroup;
use crate::geodesic::{
    classify_connected_sum, classify_three_manifold, Classification, ClassifyError, ConnectedSum,
    ManifoldDescriptor, Pi1Class, Summand,
};
use crate::product::{FreeProduct, Naming};

pub const GROUP_SPEC_SCHEMA: &str = "freeprod/group-spec/v1";
pub const DESCRIPTOR_SCHEMA: &str = "freeprod/manifold/v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unsupported schema `{found}`, expected `{expected}`")]
    Version {
        found: String,
        expected: &'static str,
    },
    #[error("expected exactly two factors, got {0}")]
    FactorCount(usize),
    #[error("factor {index}: {source}")]
    Factor {
        index: usize,
        #[source]
        source: FactorError,
    },
    #[error("factor {index}: {message}")]
    Generators { index: usize, message: String },
    #[error("{0}")]
    Naming(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Id(u32),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<ElementRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FactorSpec {
    FiniteTable {
        elements: Vec<String>,
        table: Vec<Vec<u32>>,
        generators: Vec<GeneratorSpec>,
    },
    FiniteCyclic {
        n: u32,
        generators: Vec<GeneratorSpec>,
    },
    InfiniteCyclic {
        generators: Vec<GeneratorSpec>,
    },
    Free {
        rank: u32,
        generators: Vec<GeneratorSpec>,
    },
}

/// Top-level group-spec document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub factors: Vec<FactorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn check_version(found: &Option<String>, expected: &'static str) -> Result<(), SchemaError> {
    match found {
        Some(s) if s != expected => Err(SchemaError::Version {
            found: s.clone(),
            expected,
        }),
        _ => Ok(()),
    }
}

fn generator_error(index: usize, message: impl Into<String>) -> SchemaError {
    SchemaError::Generators {
        index,
        message: message.into(),
    }
}

impl FactorSpec {
    fn generators(&self) -> &[GeneratorSpec] {
        match self {
            FactorSpec::FiniteTable { generators, .. }
            | FactorSpec::FiniteCyclic { generators, .. }
            | FactorSpec::InfiniteCyclic { generators }
            | FactorSpec::Free { generators, .. } => generators,
        }
    }

    fn build(&self, index: usize) -> Result<(FactorGroup, Naming), SchemaError> {
        let factor_err = |source| SchemaError::Factor { index, source };
        let names: Vec<String> = self.generators().iter().map(|g| g.name.clone()).collect();
        let ids = |resolve: &dyn Fn(&ElementRef) -> Option<u32>| -> Result<Vec<u32>, SchemaError> {
            self.generators()
                .iter()
                .map(|g| {
                    let r = g.element.as_ref().ok_or_else(|| {
                        generator_error(index, format!("generator `{}` needs an element", g.name))
                    })?;
                    resolve(r).ok_or_else(|| {
                        generator_error(index, format!("generator `{}`: unknown element", g.name))
                    })
                })
                .collect()
        };
        let no_elements = || match self.generators().iter().find(|g| g.element.is_some()) {
            Some(g) => Err(generator_error(
                index,
                format!(
                    "generator `{}`: standard generators take no element",
                    g.name
                ),
            )),
            None => Ok(()),
        };
        match self {
            FactorSpec::FiniteTable {
                elements, table, ..
            } => {
                if elements.len() != table.len() {
                    return Err(generator_error(
                        index,
                        "element label count does not match the table size",
                    ));
                }
                let mut sorted = elements.clone();
                sorted.sort();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(generator_error(index, "duplicate element labels"));
                }
                let gens = ids(&|r| match r {
                    ElementRef::Id(id) => Some(*id),
                    ElementRef::Label(l) => elements.iter().position(|e| e == l).map(|p| p as u32),
                })?;
                let group = FactorGroup::from_table(table.clone(), &gens).map_err(factor_err)?;
                Ok((
                    group,
                    Naming {
                        generators: names,
                        elements: Some(elements.clone()),
                    },
                ))
            }
            FactorSpec::FiniteCyclic { n, .. } => {
                let gens = ids(&|r| match r {
                    ElementRef::Id(id) => Some(*id),
                    ElementRef::Label(_) => None,
                })?;
                let group = FactorGroup::cyclic(*n, &gens).map_err(factor_err)?;
                Ok((
                    group,
                    Naming {
                        generators: names,
                        elements: None,
                    },
                ))
            }
            FactorSpec::InfiniteCyclic { .. } => {
                no_elements()?;
                if names.len() != 1 {
                    return Err(generator_error(
                        index,
                        "infinite_cyclic takes exactly one generator",
                    ));
                }
                Ok((
                    FactorGroup::integers(),
                    Naming {
                        generators: names,
                        elements: None,
                    },
                ))
            }
            FactorSpec::Free { rank, .. } => {
                no_elements()?;
                if names.len() != *rank as usize {
                    return Err(generator_error(
                        index,
                        "free takes exactly `rank` generators",
                    ));
                }
                let group = FactorGroup::free(*rank).map_err(factor_err)?;
                Ok((
                    group,
                    Naming {
                        generators: names,
                        elements: None,
                    },
                ))
            }
        }
    }
}

impl GroupSpecFile {
    pub fn from_json(text: &str) -> Result<Self, SchemaError> {
        serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))
    }

    pub fn from_slice(bytes: &[u8]) -> Result<Self, SchemaError> {
        serde_json::from_slice(bytes).map_err(|e| SchemaError::Json(e.to_string()))
    }

    /// Validates every factor and assembles the free product.
    pub fn build(&self) -> Result<FreeProduct, SchemaError> {
        check_version(&self.schema, GROUP_SPEC_SCHEMA)?;
        if self.factors.len() != 2 {
            return Err(SchemaError::FactorCount(self.factors.len()));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != 2 {
                return Err(SchemaError::Naming("labels must name both factors".into()));
            }
        }
        let (g1, n1) = self.factors[0].build(0)?;
        let (g2, n2) = self.factors[1].build(1)?;
        FreeProduct::with_naming(g1, n1, g2, n2).map_err(SchemaError::Naming)
    }
}

/// Parses and validates a group-spec document in one step.
pub fn parse_group_spec(text: &str) -> Result<FreeProduct, SchemaError> {
    GroupSpecFile::from_json(text)?.build()
}

fn default_dimension() -> u32 {
    3
}

/// Classifier input document (`freeprod/manifold/v1`).
///
/// ```json
/// {"kind": "three_manifold", "orientable": true,
///  "summands": [{"pi1": "z2"}, {"pi1": "finite_other", "order": 3}]}
/// {"kind": "connected_sum", "first": {"pi1": "infinite_other", "b1": 0},
///  "second": {"pi1": "trivial"}, "second_is_sphere": false}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DescriptorFile {
    ThreeManifold {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        schema: Option<String>,
        #[serde(default = "default_dimension")]
        dimension: u32,
        orientable: bool,
        summands: Vec<Summand>,
    },
    ConnectedSum {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        schema: Option<String>,
        first: Summand,
        second: Pi1Class,
        #[serde(default)]
        second_is_sphere: bool,
    },
}

impl DescriptorFile {
    pub fn from_json(text: &str) -> Result<Self, SchemaError> {
        serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))
    }

    pub fn from_slice(bytes: &[u8]) -> Result<Self, SchemaError> {
        serde_json::from_slice(bytes).map_err(|e| SchemaError::Json(e.to_string()))
    }

    pub fn classify(&self) -> Result<Classification, SchemaError> {
        match self {
            DescriptorFile::ThreeManifold {
                schema,
                dimension,
                orientable,
                summands,
            } => {
                check_version(schema, DESCRIPTOR_SCHEMA)?;
                if *dimension != 3 {
                    return Err(ClassifyError::Dimension(*dimension).into());
                }
                let d = ManifoldDescriptor {
                    orientable: *orientable,
                    summands: summands.clone(),
                };
                Ok(classify_three_manifold(&d)?)
            }
            DescriptorFile::ConnectedSum {
                schema,
                first,
                second,
                second_is_sphere,
            } => {
                check_version(schema, DESCRIPTOR_SCHEMA)?;
                Ok(classify_connected_sum(&ConnectedSum {
                    first: *first,
                    second: *second,
                    second_is_sphere: *second_is_sphere,
                })?)
            }
        }
    }
}
