//! Golden data shipped with the crate: the five labeled `R`-graphs and the
//! 30-triangle body of `Y00·Y00·Y00`.

use serde::Deserialize;

use crate::cobordism::Word;
use crate::label::Label;
use crate::rgraph::RGraph;
use crate::TrianglePresentation;

const RGRAPHS: &str = include_str!("../fixtures/rgraphs.json");
const OMEGA0: &str = include_str!("../fixtures/omega0.txt");

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenGraph {
    pub word: String,
    pub edges: Vec<(String, String)>,
}

impl GoldenGraph {
    pub fn word(&self) -> Word {
        self.word.parse().expect("fixture words parse")
    }

    pub fn labeled_edges(&self) -> Vec<(Label, Label)> {
        self.edges
            .iter()
            .map(|(a, b)| (Label::new(a).expect("fixture label"), Label::new(b).expect("fixture label")))
            .collect()
    }

    pub fn matches(&self, g: &RGraph) -> bool {
        g.same_multigraph(&self.labeled_edges())
    }
}

pub fn golden_rgraphs() -> Vec<GoldenGraph> {
    serde_json::from_str(RGRAPHS).expect("bundled fixture is valid json")
}

/// The golden graph for a word equal to `w` letter for letter.
pub fn golden_for(w: &Word) -> Option<GoldenGraph> {
    golden_rgraphs().into_iter().find(|g| g.word() == *w)
}

pub fn omega0_listing() -> TrianglePresentation {
    TrianglePresentation::parse(OMEGA0).expect("bundled fixture parses")
}
