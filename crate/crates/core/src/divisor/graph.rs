use super::DivisorError;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    /// `None` when the self-intersection is not known.
    #[serde(rename = "self")]
    pub self_intersection: Option<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: Vec<Curve>,
    #[serde(default)]
    edges: Vec<[String; 2]>,
}

/// Dual graph of a simple normal crossing configuration. Every edge is a
/// single transverse intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct CurveGraph {
    vertices: Vec<Curve>,
    index: BTreeMap<String, usize>,
    /// Stored with the smaller vertex index first.
    edges: BTreeSet<(usize, usize)>,
}

impl TryFrom<RawGraph> for CurveGraph {
    type Error = DivisorError;
    fn try_from(raw: RawGraph) -> Result<Self, DivisorError> {
        let edges: Vec<(&str, &str)> = raw.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        CurveGraph::new(raw.vertices, &edges)
    }
}

impl From<CurveGraph> for RawGraph {
    fn from(g: CurveGraph) -> RawGraph {
        let edges = g
            .edges()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .collect();
        RawGraph {
            vertices: g.vertices,
            edges,
        }
    }
}

impl CurveGraph {
    pub fn new(vertices: Vec<Curve>, edges: &[(&str, &str)]) -> Result<Self, DivisorError> {
        let mut index = BTreeMap::new();
        for (i, c) in vertices.iter().enumerate() {
            if index.insert(c.name.clone(), i).is_some() {
                return Err(DivisorError::DuplicateVertex(c.name.clone()));
            }
        }
        let mut graph = Self {
            vertices,
            index,
            edges: BTreeSet::new(),
        };
        for (a, b) in edges {
            let (i, j) = (graph.position(a)?, graph.position(b)?);
            if i == j {
                return Err(DivisorError::SelfLoop(a.to_string()));
            }
            if !graph.edges.insert((i.min(j), i.max(j))) {
                return Err(DivisorError::MultiEdge(a.to_string(), b.to_string()));
            }
        }
        Ok(graph)
    }

    /// Convenience constructor from `(name, self-intersection)` pairs.
    pub fn from_parts(vertices: &[(&str, Option<i64>)], edges: &[(&str, &str)]) -> Result<Self, DivisorError> {
        let curves = vertices
            .iter()
            .map(|(n, s)| Curve {
                name: n.to_string(),
                self_intersection: *s,
            })
            .collect();
        Self::new(curves, edges)
    }

    pub(crate) fn position(&self, name: &str) -> Result<usize, DivisorError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| DivisorError::UnknownVertex(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn vertices(&self) -> &[Curve] {
        &self.vertices
    }

    pub fn vertex_names(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(|c| c.name.as_str())
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges
            .iter()
            .map(|&(i, j)| (self.vertices[i].name.as_str(), self.vertices[j].name.as_str()))
    }

    pub fn self_intersection(&self, name: &str) -> Result<Option<i64>, DivisorError> {
        Ok(self.vertices[self.position(name)?].self_intersection)
    }

    pub fn with_self_intersection(&self, name: &str, value: Option<i64>) -> Result<Self, DivisorError> {
        let i = self.position(name)?;
        let mut g = self.clone();
        g.vertices[i].self_intersection = value;
        Ok(g)
    }

    pub fn meets(&self, a: &str, b: &str) -> Result<bool, DivisorError> {
        let (i, j) = (self.position(a)?, self.position(b)?);
        Ok(self.edges.contains(&(i.min(j), i.max(j))))
    }

    pub fn neighbors(&self, name: &str) -> Result<Vec<&str>, DivisorError> {
        let i = self.position(name)?;
        Ok(self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a == i, b == i) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .map(|k| self.vertices[k].name.as_str())
            .collect())
    }

    /// Intersection number of two vertices. Distinct vertices meet in 0 or 1
    /// points; a vertex with itself needs its self-intersection.
    pub fn intersection(&self, a: &str, b: &str) -> Result<i64, DivisorError> {
        if a == b {
            return self
                .self_intersection(a)?
                .ok_or_else(|| DivisorError::UnknownSelfIntersection(a.to_string()));
        }
        Ok(i64::from(self.meets(a, b)?))
    }

    /// Blows down the (−1)-curve `v`: each neighbour gains 1 in
    /// self-intersection and any two neighbours now meet.
    pub fn contract(&self, v: &str) -> Result<CurveGraph, DivisorError> {
        let sv = self.self_intersection(v)?;
        if sv != Some(-1) {
            return Err(DivisorError::NotMinusOne {
                vertex: v.to_string(),
                self_intersection: sv,
            });
        }
        let nbrs: Vec<String> = self.neighbors(v)?.into_iter().map(String::from).collect();
        for (k, a) in nbrs.iter().enumerate() {
            for b in &nbrs[k + 1..] {
                if self.meets(a, b)? {
                    return Err(DivisorError::ContractionMultiEdge(a.clone(), b.clone()));
                }
            }
        }
        let vertices: Vec<Curve> = self
            .vertices
            .iter()
            .filter(|c| c.name != v)
            .map(|c| Curve {
                name: c.name.clone(),
                self_intersection: if nbrs.contains(&c.name) {
                    c.self_intersection.map(|s| s + 1)
                } else {
                    c.self_intersection
                },
            })
            .collect();
        let mut edges: Vec<(&str, &str)> = self.edges().filter(|(a, b)| *a != v && *b != v).collect();
        for (k, a) in nbrs.iter().enumerate() {
            for b in &nbrs[k + 1..] {
                edges.push((a, b));
            }
        }
        CurveGraph::new(vertices, &edges)
    }

    /// Connected components of the induced subgraph on `names`.
    pub fn components_of(&self, names: &BTreeSet<String>) -> Result<Vec<BTreeSet<String>>, DivisorError> {
        for n in names {
            self.position(n)?;
        }
        let mut unseen = names.clone();
        let mut out = Vec::new();
        while let Some(start) = unseen.pop_first() {
            let mut comp = BTreeSet::from([start.clone()]);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for y in self.neighbors(&x)? {
                    if unseen.remove(y) {
                        comp.insert(y.to_string());
                        stack.push(y.to_string());
                    }
                }
            }
            out.push(comp);
        }
        Ok(out)
    }
}
