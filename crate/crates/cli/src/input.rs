//! Input loading.
//!
//! Besides the two hypernetwork formats, JSON inputs may describe a bare
//! poset (`{"elements": [["a"], ["a", "b"], []]}`) or a simplicial complex
//! given by generating simplices (`{"simplices": [["a", "b", "c"]],
//! "vertices": ["d"]}`). The kind is chosen by the top-level key.

use std::collections::BTreeSet;
use std::path::Path;

use hyperforman::hypernet::{self, HypernetError};
use hyperforman::{Element, Format, Hypernetwork, NodeId, Poset, Simplex, SimplicialComplex};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InputFormat {
    Json,
    Text,
    Auto,
}

#[derive(Debug)]
pub enum Input {
    Network(Hypernetwork),
    Poset(Poset),
    Complex(SimplicialComplex),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Network(_) => "hypernetwork",
            Input::Poset(_) => "poset",
            Input::Complex(_) => "complex",
        }
    }

    pub fn summary(&self) -> String {
        match self {
            Input::Network(h) => format!(
                "{}, {}, {}",
                plural(h.nodes().len(), "node", "nodes"),
                plural(h.hypervertices().len(), "hypervertex", "hypervertices"),
                plural(h.hyperedges().len(), "hyperedge", "hyperedges"),
            ),
            Input::Poset(p) => format!(
                "{}, {}",
                plural(p.len(), "element", "elements"),
                plural(p.covers().len(), "cover pair", "cover pairs"),
            ),
            Input::Complex(k) => {
                let f = k.f_vector();
                let counts: Vec<String> = f.counts().iter().map(ToString::to_string).collect();
                format!("complex with f-vector ({})", counts.join(", "))
            }
        }
    }
}

fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoset {
    elements: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    #[serde(default)]
    vertices: Vec<String>,
    simplices: Vec<Vec<String>>,
}

pub fn load(path: &Path, format: InputFormat) -> Result<Input, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let format = match format {
        InputFormat::Json => Format::Json,
        InputFormat::Text => Format::Text,
        InputFormat::Auto => match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            Some("hnet") => Format::Text,
            _ if bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{') => Format::Json,
            _ => Format::Text,
        },
    };
    parse(&bytes, format)
}

pub fn parse(bytes: &[u8], format: Format) -> Result<Input, CliError> {
    if format == Format::Text {
        return Ok(Input::Network(hypernet::parse(bytes, Format::Text)?));
    }
    let value: serde_json::Value = serde_json::from_slice(bytes).map_err(|e| HypernetError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let has = |key: &str| value.as_object().is_some_and(|o| o.contains_key(key));
    if has("elements") {
        let raw: RawPoset = serde_json::from_value(value).map_err(invalid)?;
        Ok(Input::Poset(Poset::from_sets(
            raw.elements
                .into_iter()
                .map(|e| e.into_iter().map(NodeId::new).collect::<Element>()),
        )))
    } else if has("simplices") {
        let raw: RawComplex = serde_json::from_value(value).map_err(invalid)?;
        let labels: BTreeSet<String> = raw
            .vertices
            .iter()
            .chain(raw.simplices.iter().flatten())
            .cloned()
            .collect();
        let labels: Vec<String> = labels.into_iter().collect();
        let index = |l: &String| labels.binary_search(l).expect("collected above");
        let generators: Vec<Simplex> = raw
            .simplices
            .iter()
            .map(|s| Simplex::new(s.iter().map(index)))
            .collect();
        let k = SimplicialComplex::from_generators(labels, generators, None)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        Ok(Input::Complex(k))
    } else {
        Ok(Input::Network(hypernet::from_json_value(value)?))
    }
}

fn invalid(e: serde_json::Error) -> CliError {
    CliError::Invalid(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_kinds_are_detected() {
        let poset = parse(br#"{"elements": [[], ["a"], ["b"], ["a", "b"]]}"#, Format::Json).unwrap();
        assert!(matches!(&poset, Input::Poset(p) if p.len() == 4));
        let complex = parse(br#"{"simplices": [["a", "b", "c"]], "vertices": ["z"]}"#, Format::Json).unwrap();
        assert!(matches!(&complex, Input::Complex(k) if k.f_vector().counts() == [4, 3, 1]));
        let network = parse(br#"{"hypervertices": [{"id": "V", "nodes": ["a"]}]}"#, Format::Json).unwrap();
        assert_eq!(network.summary(), "1 node, 1 hypervertex, 0 hyperedges");
    }

    #[test]
    fn empty_simplex_is_rejected() {
        assert!(matches!(
            parse(br#"{"simplices": [[]]}"#, Format::Json),
            Err(CliError::Invalid(_))
        ));
    }
}
