//! The JSON quiver document:
//!
//! ```json
//! { "vertices": 2, "arrows": [[1, 2], [1, 2], [1, 2]], "d": [3, 4],
//!   "theta": [12, -9], "linearisation": [3, -2] }
//! ```
//!
//! Arrows are 1-based. `theta` defaults to the canonical stability parameter
//! and `linearisation` to [`crate::quiver::Linearisation::smallest`]. Unknown fields are rejected.

use serde::{Deserialize, Serialize};

use crate::catalog::Instance;
use crate::error::{Error, Result};
use crate::quiver::{Quiver, StabilityParameter};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDocument {
    pub vertices: usize,
    pub arrows: Vec<[usize; 2]>,
    pub d: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linearisation: Option<Vec<i64>>,
}

impl QuiverDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("quiver document: {e}")))
    }

    pub fn from_instance(inst: &Instance) -> Self {
        QuiverDocument {
            vertices: inst.quiver.vertex_count(),
            arrows: inst.quiver.arrows().iter().map(|&(s, t)| [s + 1, t + 1]).collect(),
            d: inst.d.entries().to_vec(),
            theta: Some(inst.theta.entries().to_vec()),
            linearisation: Some(inst.linearisation.entries().to_vec()),
        }
    }

    /// Validates the document. `name` labels the resulting instance.
    pub fn into_instance(self, name: &str) -> Result<Instance> {
        let arrows: Vec<(usize, usize)> = self.arrows.iter().map(|&[s, t]| (s, t)).collect();
        let quiver = Quiver::from_one_based(self.vertices, &arrows)?;
        let mut inst = Instance::canonical(name, quiver, self.d, self.linearisation)?;
        if let Some(theta) = self.theta {
            if theta.len() != inst.quiver.vertex_count() {
                return Err(Error::Length { expected: inst.quiver.vertex_count(), got: theta.len() });
            }
            inst.theta = StabilityParameter::new(theta)?;
        }
        Ok(inst)
    }
}

/// Parses a document and overrides `θ` or `a` when given.
pub fn load_instance(
    text: &str,
    name: &str,
    theta: Option<Vec<i64>>,
    linearisation: Option<Vec<i64>>,
) -> Result<Instance> {
    let mut doc = QuiverDocument::parse(text)?;
    if theta.is_some() {
        doc.theta = theta;
    }
    if linearisation.is_some() {
        doc.linearisation = linearisation;
    }
    doc.into_instance(name)
}
