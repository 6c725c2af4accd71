//! JSON documents for complexes, covers, filtrations and campaign inputs.
//!
//! Parsing goes through the validating constructors, so a document that
//! deserializes is also structurally valid (face-closed, monotone, ...).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::filtration::{FilteredComplex, FilteredCover, Level};
use crate::geometry::GeometricFiltration;
use crate::order::CoverIndex;
use crate::simplex::Simplex;

/// `{"maximal_simplices": [[...], ...]}`; the complex is their closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub maximal_simplices: Vec<Simplex>,
}

impl ComplexDoc {
    pub fn from_complex(x: &SimplicialComplex) -> Self {
        ComplexDoc {
            maximal_simplices: x.maximal_simplices(),
        }
    }

    pub fn to_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_maximal(&self.maximal_simplices)
    }
}

/// `{"elements": {"<i>": {"maximal_simplices": ...}}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDoc {
    pub elements: BTreeMap<String, ComplexDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexBirth {
    pub vertices: Simplex,
    pub birth: Level,
}

/// `{"levels": [...], "simplices": [{"vertices": [...], "birth": l}]}`,
/// plus `"level_values"` for geometric filtrations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilteredComplexDoc {
    pub levels: Vec<Level>,
    pub simplices: Vec<SimplexBirth>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level_values: Option<Vec<f64>>,
}

impl FilteredComplexDoc {
    pub fn from_filtration(f: &FilteredComplex) -> Self {
        // faces before cofaces so the document reads as a construction order
        let mut simplices: Vec<SimplexBirth> = f
            .births()
            .iter()
            .map(|(s, &b)| SimplexBirth {
                vertices: s.clone(),
                birth: b,
            })
            .collect();
        simplices.sort_by(|a, b| (a.birth, a.vertices.dim(), &a.vertices).cmp(&(b.birth, b.vertices.dim(), &b.vertices)));
        FilteredComplexDoc {
            levels: f.levels().to_vec(),
            simplices,
            level_values: None,
        }
    }

    pub fn from_geometric(g: &GeometricFiltration) -> Self {
        FilteredComplexDoc {
            level_values: Some(g.level_values.clone()),
            ..Self::from_filtration(&g.filtration)
        }
    }

    pub fn to_filtration(&self) -> Result<FilteredComplex> {
        let mut births = BTreeMap::new();
        for sb in &self.simplices {
            if births.insert(sb.vertices.clone(), sb.birth).is_some() {
                return Err(Error::Parse(format!("simplex {} listed twice", sb.vertices)));
            }
        }
        FilteredComplex::new(births, self.levels.iter().copied())
    }
}

/// `{"levels": [...], "indices": [...],
///   "elements": {"<i>": {"<level>": {"maximal_simplices": ...}}}}`.
/// Missing entries are empty elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredCoverDoc {
    pub levels: Vec<Level>,
    pub indices: Vec<CoverIndex>,
    pub elements: BTreeMap<String, BTreeMap<String, ComplexDoc>>,
}

fn parse_key<T: std::str::FromStr>(key: &str, what: &str) -> Result<T> {
    key.parse()
        .map_err(|_| Error::Parse(format!("{what} key {key:?} is not a nonnegative integer")))
}

impl FilteredCoverDoc {
    pub fn from_cover(fc: &FilteredCover) -> Self {
        let mut elements = BTreeMap::new();
        for &i in fc.indices() {
            let per_level: BTreeMap<String, ComplexDoc> = fc
                .levels()
                .iter()
                .map(|&l| (l, fc.element(i, l)))
                .filter(|(_, e)| !e.is_empty())
                .map(|(l, e)| (l.to_string(), ComplexDoc::from_complex(e)))
                .collect();
            if !per_level.is_empty() {
                elements.insert(i.to_string(), per_level);
            }
        }
        FilteredCoverDoc {
            levels: fc.levels().to_vec(),
            indices: fc.indices().to_vec(),
            elements,
        }
    }

    pub fn to_cover(&self) -> Result<FilteredCover> {
        let mut elements: BTreeMap<CoverIndex, BTreeMap<Level, SimplicialComplex>> = BTreeMap::new();
        for (i, per_level) in &self.elements {
            let i: CoverIndex = parse_key(i, "cover index")?;
            let entry = elements.entry(i).or_default();
            for (l, doc) in per_level {
                entry.insert(parse_key(l, "level")?, doc.to_complex());
            }
        }
        FilteredCover::new(self.levels.iter().copied(), self.indices.iter().copied(), elements)
    }
}

/// Input to a verification run on a hand-built example. Without a
/// filtration, the union filtration of the cover is used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyInputDoc {
    pub cover: FilteredCoverDoc,
    #[serde(default)]
    pub filtration: Option<FilteredComplexDoc>,
}

impl VerifyInputDoc {
    pub fn load(&self) -> Result<(FilteredComplex, FilteredCover)> {
        let cover = self.cover.to_cover()?;
        let filtration = match &self.filtration {
            Some(doc) => doc.to_filtration()?,
            None => cover.union_filtration(),
        };
        Ok((filtration, cover))
    }
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    Ok(serde_json::from_str::<ComplexDoc>(text)?.to_complex())
}

pub fn parse_cover(text: &str) -> Result<BTreeMap<CoverIndex, SimplicialComplex>> {
    let doc: CoverDoc = serde_json::from_str(text)?;
    doc.elements
        .iter()
        .map(|(i, d)| Ok((parse_key(i, "cover index")?, d.to_complex())))
        .collect()
}

/// The filtration and its level values, when present.
pub fn parse_filtered_complex(text: &str) -> Result<(FilteredComplex, Option<Vec<f64>>)> {
    let doc: FilteredComplexDoc = serde_json::from_str(text)?;
    Ok((doc.to_filtration()?, doc.level_values))
}

pub fn parse_filtered_cover(text: &str) -> Result<FilteredCover> {
    serde_json::from_str::<FilteredCoverDoc>(text)?.to_cover()
}
