//! JSON document formats.
//!
//! ```text
//! category      {"objects": ["a","b"], "hom": [[1,2],[0,1]]}
//! object set    {"members": ["a","b"]}
//! function      {"values": {"a": "3/2", "b": "0"}}
//! decomposition {"basis": "prime-filters", "terms": [{"coef": "-1", "rep": "b"}]}
//! map           {"source": "<path>", "target": "<path>", "map": {"a": "x"}}
//! network       {"nodes": [...], "hasse": [["A1","D2"], ...],
//!                "targets": [{"on":"node","at":"A1"}, {"on":"edge","from":"C1","to":"F2"}]}
//! ```
//!
//! Rationals are strings `"p/q"` in lowest terms, `"p"` when integral.

use std::fmt;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::category::{FiniteCategory, ObjectSet};
use crate::definable::{Basis, DefinableFunction, FilterDecomposition};
use crate::error::Error;
use crate::rational::{self, Rational};
use crate::sensor::{SensorNetwork, TargetPlacement};

/// Failure to read or decode a document, as opposed to a domain error.
#[derive(Debug)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParseError: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

/// Either kind of failure while loading a document.
#[derive(Debug)]
pub enum LoadError {
    Parse(ParseError),
    Domain(Error),
}

impl From<ParseError> for LoadError {
    fn from(e: ParseError) -> Self {
        LoadError::Parse(e)
    }
}

impl From<Error> for LoadError {
    fn from(e: Error) -> Self {
        LoadError::Domain(e)
    }
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Parse(e) => e.fmt(f),
            LoadError::Domain(e) => e.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub hom: Vec<Vec<u64>>,
}

impl CategoryDoc {
    pub fn from_category(cat: &FiniteCategory) -> Self {
        CategoryDoc {
            objects: cat.objects().to_vec(),
            hom: cat.hom_matrix(),
        }
    }

    pub fn build(&self) -> Result<FiniteCategory, Error> {
        FiniteCategory::new(self.objects.clone(), self.hom.clone())
    }

    pub fn violations(&self) -> Vec<Error> {
        FiniteCategory::violations(&self.objects, &self.hom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSetDoc {
    pub members: Vec<String>,
}

impl ObjectSetDoc {
    pub fn from_set(cat: &FiniteCategory, s: &ObjectSet) -> Self {
        ObjectSetDoc {
            members: s.names(cat).into_iter().map(String::from).collect(),
        }
    }

    pub fn build(&self, cat: &FiniteCategory) -> Result<ObjectSet, Error> {
        cat.object_set(&self.members)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub values: IndexMap<String, String>,
}

impl FunctionDoc {
    pub fn from_values(cat: &FiniteCategory, values: &[Rational]) -> Self {
        FunctionDoc {
            values: cat
                .objects()
                .iter()
                .cloned()
                .zip(values.iter().map(rational::format))
                .collect(),
        }
    }

    pub fn from_function(f: &DefinableFunction<'_>) -> Self {
        Self::from_values(f.ambient(), f.values())
    }

    pub fn parse_values(&self) -> Result<Vec<(&str, Rational)>, ParseError> {
        self.values
            .iter()
            .map(|(k, v)| {
                rational::parse(v)
                    .map(|r| (k.as_str(), r))
                    .ok_or_else(|| ParseError(format!("value {v:?} of {k} is not a rational")))
            })
            .collect()
    }

    pub fn build<'c>(&self, cat: &'c FiniteCategory) -> Result<DefinableFunction<'c>, LoadError> {
        let named = self.parse_values()?;
        Ok(DefinableFunction::from_named(cat, named)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coef: String,
    pub rep: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDoc {
    pub basis: String,
    pub terms: Vec<TermDoc>,
}

impl DecompositionDoc {
    /// Zero coefficients are omitted.
    pub fn from_decomposition(d: &FilterDecomposition<'_>) -> Self {
        let cat = d.ambient();
        DecompositionDoc {
            basis: d.basis().to_string(),
            terms: d
                .terms()
                .iter()
                .filter(|(a, _)| !num_traits::Zero::is_zero(a))
                .map(|(a, x)| TermDoc {
                    coef: rational::format(a),
                    rep: cat.name(*x).to_string(),
                })
                .collect(),
        }
    }

    /// Problems that can be seen without an ambient category.
    pub fn syntax_errors(&self) -> Vec<ParseError> {
        let basis = self.basis.parse::<Basis>().err().map(ParseError);
        let coefs = self.terms.iter().filter_map(|t| {
            rational::parse(&t.coef)
                .is_none()
                .then(|| ParseError(format!("coefficient {:?} is not a rational", t.coef)))
        });
        basis.into_iter().chain(coefs).collect()
    }

    pub fn build<'c>(&self, cat: &'c FiniteCategory) -> Result<FilterDecomposition<'c>, LoadError> {
        let basis: Basis = self.basis.parse().map_err(ParseError)?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let coef = rational::parse(&t.coef).ok_or_else(|| {
                    ParseError(format!("coefficient {:?} is not a rational", t.coef))
                })?;
                Ok((coef, cat.index_of(&t.rep)?))
            })
            .collect::<Result<Vec<_>, LoadError>>()?;
        Ok(FilterDecomposition::new(cat, basis, terms)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: String,
    pub target: String,
    pub map: IndexMap<String, String>,
}

impl MapDoc {
    /// Category paths resolved against the directory of the map document.
    pub fn resolve(&self, map_path: &Path) -> (PathBuf, PathBuf) {
        let base = map_path.parent().unwrap_or_else(|| Path::new(""));
        (base.join(&self.source), base.join(&self.target))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "on", rename_all = "lowercase", deny_unknown_fields)]
pub enum TargetDoc {
    Node { at: String },
    Edge { from: String, to: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDoc {
    pub nodes: Vec<String>,
    pub hasse: Vec<(String, String)>,
    #[serde(default)]
    pub targets: Vec<TargetDoc>,
}

impl NetworkDoc {
    pub fn build(&self) -> Result<(SensorNetwork, Vec<TargetPlacement>), Error> {
        let net = SensorNetwork::new(&self.nodes, &self.hasse)?;
        let targets = self
            .targets
            .iter()
            .map(|t| match t {
                TargetDoc::Node { at } => Ok(TargetPlacement::Node(net.node_index(at)?)),
                TargetDoc::Edge { from, to } => Ok(TargetPlacement::Edge(
                    net.node_index(from)?,
                    net.node_index(to)?,
                )),
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok((net, targets))
    }

    pub fn violations(&self) -> Vec<Error> {
        let mut out = SensorNetwork::violations(&self.nodes, &self.hasse);
        if !out.is_empty() {
            return out;
        }
        match self.build() {
            Ok((net, targets)) => {
                if let Err(e) = net.counting_function(&targets) {
                    out.push(e);
                }
            }
            Err(e) => out.push(e),
        }
        out
    }

    pub fn from_parts(net: &SensorNetwork, targets: &[TargetPlacement]) -> Self {
        let name = |i: usize| net.nodes()[i].clone();
        NetworkDoc {
            nodes: net.nodes().to_vec(),
            hasse: net
                .hasse_edges()
                .iter()
                .map(|&(p, q)| (name(p), name(q)))
                .collect(),
            targets: targets
                .iter()
                .map(|t| match *t {
                    TargetPlacement::Node(p) => TargetDoc::Node { at: name(p) },
                    TargetPlacement::Edge(p, q) => TargetDoc::Edge {
                        from: name(p),
                        to: name(q),
                    },
                })
                .collect(),
        }
    }
}

/// Any of the document kinds, recognised by its fields.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum AnyDoc {
    Category(CategoryDoc),
    Network(NetworkDoc),
    Map(MapDoc),
    Decomposition(DecompositionDoc),
    Function(FunctionDoc),
    ObjectSet(ObjectSetDoc),
}

pub fn read_text(path: &Path) -> Result<String, ParseError> {
    std::fs::read_to_string(path).map_err(|e| ParseError(format!("{}: {e}", path.display())))
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError(format!("{what}: {e}")))
}

pub fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, ParseError> {
    parse_json(&read_text(path)?, &path.display().to_string())
}
