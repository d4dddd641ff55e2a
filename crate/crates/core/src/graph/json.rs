use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{FeynmanGraph, GraphError, Label};
use crate::exact::{format_rational, parse_rational, rat, Rational};

/// A momentum component: an integer or a rational string such as `"-1/2"`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Component {
    Int(i64),
    Text(String),
}

impl Component {
    fn value(&self) -> Result<Rational, GraphError> {
        match self {
            Component::Int(i) => Ok(rat(*i)),
            Component::Text(s) => parse_rational(s).map_err(|e| GraphError::Malformed(e.to_string())),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LegRepr {
    vertex: Label,
    momentum: Vec<Component>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<Label>,
    internal_edges: Vec<(Label, Label, Label)>,
    #[serde(default)]
    external_edges: Vec<LegRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    valences: Option<Vec<usize>>,
}

impl FeynmanGraph {
    pub fn from_json_value(v: serde_json::Value) -> Result<Self, GraphError> {
        let r: GraphRepr = serde_json::from_value(v).map_err(|e| GraphError::Malformed(e.to_string()))?;
        let legs = r
            .external_edges
            .into_iter()
            .map(|l| Ok((l.vertex, l.momentum.iter().map(Component::value).collect::<Result<Vec<_>, _>>()?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        FeynmanGraph::new(r.vertices, r.internal_edges, legs, r.valences.map(|v| v.into_iter().collect::<BTreeSet<_>>()))
    }

    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| GraphError::Malformed(e.to_string()))?;
        Self::from_json_value(v)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let r = GraphRepr {
            vertices: self.vertices.clone(),
            internal_edges: self
                .edges
                .iter()
                .map(|e| (e.id.clone(), self.vertices[e.tail].clone(), self.vertices[e.head].clone()))
                .collect(),
            external_edges: self
                .legs
                .iter()
                .map(|l| LegRepr {
                    vertex: self.vertices[l.vertex].clone(),
                    momentum: l.momentum.iter().map(|q| Component::Text(format_rational(q))).collect(),
                })
                .collect(),
            valences: self.valences.as_ref().map(|v| v.iter().copied().collect()),
        };
        serde_json::to_value(r).expect("graph serialises")
    }
}
