use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Pip;
use crate::error::Result;

/// On-disk form of a PIP (`.pip.json`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<[String; 2]>,
    #[serde(default)]
    pub inconsistent: Vec<[String; 2]>,
}

impl PipFile {
    pub fn relations(&self) -> Vec<(String, String)> {
        self.covers.iter().map(|[a, b]| (a.clone(), b.clone())).collect()
    }

    pub fn inconsistent_pairs(&self) -> Vec<(String, String)> {
        self.inconsistent.iter().map(|[a, b]| (a.clone(), b.clone())).collect()
    }
}

impl TryFrom<PipFile> for Pip {
    type Error = crate::Error;

    fn try_from(file: PipFile) -> Result<Pip> {
        let relations = file.relations();
        let inconsistent = file.inconsistent_pairs();
        Pip::new(file.elements, relations, inconsistent)
    }
}

impl Pip {
    /// Normalized description: sorted ids, Hasse covers, minimal inconsistent pairs.
    pub fn to_file(&self) -> PipFile {
        PipFile {
            elements: self.ids.clone(),
            covers: self
                .covers()
                .into_iter()
                .map(|(a, b)| [self.ids[a].clone(), self.ids[b].clone()])
                .collect(),
            inconsistent: self
                .minimal_inconsistent_pairs()
                .into_iter()
                .map(|(a, b)| [self.ids[a].clone(), self.ids[b].clone()])
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Pip> {
        let file: PipFile = serde_json::from_str(text)?;
        Pip::try_from(file)
    }

    /// Pretty-printed normalized JSON, newline terminated.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_file()).expect("PipFile serializes");
        out.push('\n');
        out
    }

    /// Text rendering of the Hasse diagram: one line per rank (longest chain
    /// ending at the element), then cover edges and dotted inconsistent pairs.
    pub fn hasse_text(&self) -> String {
        let all = crate::bitset::ElementSet::full(self.len());
        let heights = self.heights(&all);
        let top = heights.iter().copied().max().unwrap_or(0);
        let covers = self.covers();
        let dotted = self.minimal_inconsistent_pairs();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "PIP with {} elements, {} covers, {} minimal inconsistent pairs",
            self.len(),
            covers.len(),
            dotted.len()
        );
        for rank in (1..=top).rev() {
            let row: Vec<&str> = (0..self.len()).filter(|&e| heights[e] == rank).map(|e| self.id(e)).collect();
            let _ = writeln!(out, "rank {rank}: {}", row.join("  "));
        }
        for (a, b) in covers {
            let _ = writeln!(out, "  {} --- {}", self.id(a), self.id(b));
        }
        for (a, b) in dotted {
            let _ = writeln!(out, "  {} ..... {}", self.id(a), self.id(b));
        }
        out
    }
}
