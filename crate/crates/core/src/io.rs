//! JSON interchange for complexes and covers.
//!
//! A complex is `{"name": ..., "facets": [[label, ...], ...]}`; integer
//! labels are accepted and turned into strings. A cover is
//! `{"ambient": <complex>, "members": {"<index>": [[label, ...], ...]}}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::complex::SimplicialComplex;
use crate::covers::SubcomplexCover;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(default)]
    pub name: String,
    pub facets: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct RawComplex {
    #[serde(default)]
    name: Option<String>,
    facets: Vec<Vec<Value>>,
}

#[derive(Deserialize)]
struct RawCover {
    ambient: RawComplex,
    members: BTreeMap<String, Vec<Vec<Value>>>,
}

fn label_of(value: &Value) -> Result<String> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        other => Err(Error::BadLabel(other.to_string())),
    }
}

fn complex_of(facets: &[Vec<Value>]) -> Result<SimplicialComplex> {
    let facets = facets
        .iter()
        .map(|f| f.iter().map(label_of).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::from_facets(facets)
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
}

/// Parses a complex, returning it with its name (empty if absent).
pub fn parse_complex(text: &str) -> Result<(String, SimplicialComplex)> {
    let raw: RawComplex = parse_json(text)?;
    Ok((raw.name.unwrap_or_default(), complex_of(&raw.facets)?))
}

pub fn parse_cover(text: &str) -> Result<SubcomplexCover> {
    parse_cover_with(text, false)
}

/// With `drop_empty`, members with no facets are skipped instead of rejected.
pub fn parse_cover_with(text: &str, drop_empty: bool) -> Result<SubcomplexCover> {
    let raw: RawCover = parse_json(text)?;
    let ambient = complex_of(&raw.ambient.facets)?;
    let members = raw
        .members
        .iter()
        .map(|(k, facets)| Ok((k.clone(), complex_of(facets)?)))
        .collect::<Result<Vec<_>>>()?;
    let members = members
        .into_iter()
        .map(|(k, m)| Ok((crate::complex::Vertex::new(k)?, m)))
        .collect::<Result<Vec<_>>>()?;
    if drop_empty {
        SubcomplexCover::new_dropping_empty(ambient, members)
    } else {
        SubcomplexCover::new(ambient, members)
    }
}

pub fn facet_labels(complex: &SimplicialComplex) -> Vec<Vec<String>> {
    complex
        .facets()
        .iter()
        .map(|f| f.vertices().iter().map(|v| v.as_str().to_owned()).collect())
        .collect()
}

pub fn complex_file(name: &str, complex: &SimplicialComplex) -> ComplexFile {
    ComplexFile {
        name: name.to_owned(),
        facets: facet_labels(complex),
    }
}

pub fn complex_to_json(name: &str, complex: &SimplicialComplex) -> String {
    serde_json::to_string_pretty(&complex_file(name, complex)).expect("serializable")
}

#[derive(Serialize)]
struct CoverFile {
    ambient: ComplexFile,
    members: BTreeMap<String, Vec<Vec<String>>>,
}

pub fn cover_to_json(cover: &SubcomplexCover) -> String {
    let file = CoverFile {
        ambient: complex_file("ambient", cover.ambient()),
        members: cover
            .members()
            .iter()
            .map(|(k, m)| (k.as_str().to_owned(), facet_labels(m)))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

/// Serializes a complex as its facet list.
pub fn serialize_complex_facets<S: Serializer>(
    complex: &SimplicialComplex,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    facet_labels(complex).serialize(serializer)
}
