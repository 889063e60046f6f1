use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Generator, RState, ReconfigSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub name: String,
    pub support: Vec<String>,
    pub trace: Vec<String>,
    pub local0: BTreeMap<String, String>,
    pub local1: BTreeMap<String, String>,
    /// Move names from `local0` and from `local1`; defaults to `name` and `name'`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moves: Option<[String; 2]>,
}

/// On-disk form of a reconfigurable system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub graph: GraphFile,
    pub alphabet: Vec<String>,
    pub generators: Vec<GeneratorFile>,
    pub seed: BTreeMap<String, String>,
}

impl TryFrom<SystemFile> for ReconfigSystem {
    type Error = Error;

    fn try_from(file: SystemFile) -> Result<Self> {
        let vertex = |id: &str| {
            file.graph
                .vertices
                .iter()
                .position(|v| v == id)
                .ok_or_else(|| Error::InvalidSystem(format!("unknown vertex `{id}`")))
        };
        let symbol = |s: &str| {
            file.alphabet
                .iter()
                .position(|a| a == s)
                .map(|i| i as u8)
                .ok_or_else(|| Error::InvalidSystem(format!("unknown symbol `{s}`")))
        };
        let edges = file
            .graph
            .edges
            .iter()
            .map(|[a, b]| Ok((vertex(a)?, vertex(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut generators = Vec::new();
        for g in &file.generators {
            let support = g.support.iter().map(|v| vertex(v)).collect::<Result<Vec<_>>>()?;
            let trace = g.trace.iter().map(|v| vertex(v)).collect::<Result<Vec<_>>>()?;
            let local = |map: &BTreeMap<String, String>| -> Result<Vec<u8>> {
                if map.len() != g.support.len() {
                    return Err(Error::InvalidSystem(format!(
                        "generator `{}`: local state must label exactly the support",
                        g.name
                    )));
                }
                g.support
                    .iter()
                    .map(|v| {
                        let s = map.get(v).ok_or_else(|| {
                            Error::InvalidSystem(format!("generator `{}`: no symbol for `{v}`", g.name))
                        })?;
                        symbol(s)
                    })
                    .collect()
            };
            let moves = g.moves.clone().unwrap_or_else(|| [g.name.clone(), format!("{}'", g.name)]);
            generators.push(Generator::new(g.name.clone(), support, trace, local(&g.local0)?, local(&g.local1)?, moves)?);
        }
        let mut seed = vec![0u8; file.graph.vertices.len()];
        if file.seed.len() != seed.len() {
            return Err(Error::InvalidSystem("seed must label every vertex".into()));
        }
        for (v, s) in &file.seed {
            seed[vertex(v)?] = symbol(s)?;
        }
        ReconfigSystem::new(file.graph.vertices.clone(), edges, file.alphabet.clone(), generators, RState::new(seed))
    }
}

impl ReconfigSystem {
    pub fn to_file(&self) -> SystemFile {
        let name = |v: usize| self.vertices[v].clone();
        let sym = |s: u8| self.alphabet[s as usize].clone();
        SystemFile {
            graph: GraphFile {
                vertices: self.vertices.clone(),
                edges: self.edges.iter().map(|&(a, b)| [name(a), name(b)]).collect(),
            },
            alphabet: self.alphabet.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| {
                    let local = |side: usize| g.support.iter().zip(&g.local[side]).map(|(&v, &s)| (name(v), sym(s))).collect();
                    GeneratorFile {
                        name: g.name.clone(),
                        support: g.support.iter().map(|&v| name(v)).collect(),
                        trace: g.trace.iter().map(|&v| name(v)).collect(),
                        local0: local(0),
                        local1: local(1),
                        moves: Some(g.moves.clone()),
                    }
                })
                .collect(),
            seed: self.seed.0.iter().enumerate().map(|(v, &s)| (name(v), sym(s))).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<SystemFile>(text)?.try_into()
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_file()).expect("system serializes");
        out.push('\n');
        out
    }

    /// Parses a state given as a `vertex -> symbol` map or, when every symbol
    /// is one character, as a string of symbols in vertex order.
    pub fn parse_state(&self, text: &str) -> Result<RState> {
        let text = text.trim();
        if text.starts_with('{') {
            let map: BTreeMap<String, String> = serde_json::from_str(text)?;
            let mut out = vec![0u8; self.vertices.len()];
            if map.len() != out.len() {
                return Err(Error::InvalidState("state must label every vertex".into()));
            }
            for (v, s) in &map {
                let vi = self.vertex_index(v).ok_or_else(|| Error::InvalidState(format!("unknown vertex `{v}`")))?;
                out[vi] = self.symbol_index(s).ok_or_else(|| Error::InvalidState(format!("unknown symbol `{s}`")))?;
            }
            return Ok(RState::new(out));
        }
        let parts: Vec<String> = if text.contains(',') {
            text.split(',').map(|s| s.trim().to_string()).collect()
        } else {
            text.chars().map(String::from).collect()
        };
        let syms = parts
            .iter()
            .map(|s| self.symbol_index(s).ok_or_else(|| Error::InvalidState(format!("unknown symbol `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        let state = RState::new(syms);
        self.check_state(&state)?;
        Ok(state)
    }
}
