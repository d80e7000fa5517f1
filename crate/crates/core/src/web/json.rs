use serde::{Deserialize, Serialize};

use super::{Edge, EdgeId, Vertex, VertexId, Web};
use crate::{Error, Result};

/// Serialized form of a web.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub loops: Vec<LoopJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: VertexId,
    #[serde(rename = "type")]
    pub kind: VertexKind,
    /// Incident edges, counterclockwise.
    pub rotation: [EdgeId; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Source,
    Sink,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopJson {
    pub id: EdgeId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub container: Option<EdgeId>,
}

impl From<&Web> for WebJson {
    fn from(w: &Web) -> Self {
        let vertices = w
            .vertices()
            .iter()
            .map(|(&id, v)| VertexJson {
                id,
                kind: if v.out {
                    VertexKind::Source
                } else {
                    VertexKind::Sink
                },
                rotation: v.edges,
            })
            .collect();
        let mut edges = Vec::new();
        let mut loops = Vec::new();
        for (&id, e) in w.edges() {
            match *e {
                Edge::Arc { tail, head } => edges.push(EdgeJson { id, tail, head }),
                Edge::Loop { container } => loops.push(LoopJson { id, container }),
            }
        }
        WebJson {
            vertices,
            edges,
            loops,
        }
    }
}

impl TryFrom<&WebJson> for Web {
    type Error = Error;

    fn try_from(j: &WebJson) -> Result<Web> {
        let vertices = j.vertices.iter().map(|v| {
            (
                v.id,
                Vertex {
                    out: v.kind == VertexKind::Source,
                    edges: v.rotation,
                },
            )
        });
        let mut edges: Vec<(EdgeId, Edge)> = j
            .edges
            .iter()
            .map(|e| {
                (
                    e.id,
                    Edge::Arc {
                        tail: e.tail,
                        head: e.head,
                    },
                )
            })
            .collect();
        edges.extend(j.loops.iter().map(|l| {
            (
                l.id,
                Edge::Loop {
                    container: l.container,
                },
            )
        }));
        let n = edges.len();
        let w = Web::from_parts(vertices, edges)?;
        if w.edges().len() != n || w.vertices().len() != j.vertices.len() {
            return Err(Error::InvalidWeb("duplicate ids".into()));
        }
        Ok(w)
    }
}

impl Web {
    pub fn to_json(&self) -> WebJson {
        WebJson::from(self)
    }

    pub fn from_json(j: &WebJson) -> Result<Web> {
        Web::try_from(j)
    }
}

#[cfg(test)]
mod tests {
    use super::super::samples::*;
    use super::*;

    #[test]
    fn round_trip() {
        for w in [cube(), theta().disjoint_union(&Web::circle(77)).unwrap()] {
            let text = serde_json::to_string(&w.to_json()).unwrap();
            let back: WebJson = serde_json::from_str(&text).unwrap();
            assert_eq!(Web::from_json(&back).unwrap(), w);
        }
    }

    #[test]
    fn rejects_broken_rotation() {
        let mut j = theta().to_json();
        j.vertices[0].rotation[0] = 999;
        assert!(Web::from_json(&j).is_err());
    }
}
