//! Filtered graphs: vertices and edges carrying grades, with a monotone boundary.
//!
//! Multi-edges and self-loops are allowed. Endpoints are stored as vertex indices;
//! identifiers are kept for input/output only.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::GraphError;
use crate::grade::{Grade, Poset};
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: Arc<str>,
    pub grade: Grade,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: Arc<str>,
    pub ends: [usize; 2],
    pub grade: Grade,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    /// The other endpoint, seen from `v`.
    #[inline]
    pub fn opposite(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredGraph {
    poset: Poset,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

/// A broken invariant of a filtered graph, naming the offending simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertexId(String),
    DuplicateEdgeId(String),
    DanglingEndpoint { edge: String, endpoint: usize },
    ForeignVertexGrade(String),
    ForeignEdgeGrade(String),
    NotMonotone { edge: String, vertex: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertexId(id) => write!(f, "vertex {}: duplicate id", id),
            Violation::DuplicateEdgeId(id) => write!(f, "edge {}: duplicate id", id),
            Violation::DanglingEndpoint { edge, endpoint } => {
                write!(f, "edge {}: endpoint {} does not exist", edge, endpoint)
            }
            Violation::ForeignVertexGrade(id) => {
                write!(f, "vertex {}: grade does not match the poset", id)
            }
            Violation::ForeignEdgeGrade(id) => {
                write!(f, "edge {}: grade does not match the poset", id)
            }
            Violation::NotMonotone { edge, vertex } => {
                write!(
                    f,
                    "edge {}: grade is not above the grade of endpoint {}",
                    edge, vertex
                )
            }
        }
    }
}

/// Vertex to incident-edge lists in compressed form. A self-loop is listed once.
pub struct Incidence {
    offsets: Vec<usize>,
    edges: Vec<usize>,
}

impl Incidence {
    pub fn new(num_vertices: usize, edges: &[Edge]) -> Self {
        let mut degree = vec![0usize; num_vertices + 1];
        for e in edges {
            degree[e.ends[0]] += 1;
            if !e.is_loop() {
                degree[e.ends[1]] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(num_vertices + 1);
        let mut total = 0;
        for d in &degree[..num_vertices] {
            offsets.push(total);
            total += d;
        }
        offsets.push(total);
        let mut fill = offsets.clone();
        let mut list = vec![0; total];
        for (i, e) in edges.iter().enumerate() {
            list[fill[e.ends[0]]] = i;
            fill[e.ends[0]] += 1;
            if !e.is_loop() {
                list[fill[e.ends[1]]] = i;
                fill[e.ends[1]] += 1;
            }
        }
        Incidence {
            offsets,
            edges: list,
        }
    }

    #[inline]
    pub fn of(&self, v: usize) -> &[usize] {
        &self.edges[self.offsets[v]..self.offsets[v + 1]]
    }
}

impl FilteredGraph {
    pub fn new(poset: Poset) -> Self {
        FilteredGraph {
            poset,
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Assemble a graph without checking it; see [`FilteredGraph::validate`].
    pub fn from_parts(poset: Poset, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        FilteredGraph {
            poset,
            vertices,
            edges,
        }
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, grade: Grade) -> usize {
        self.vertices.push(Vertex {
            id: Arc::from(id.into()),
            grade,
        });
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, id: impl Into<String>, u: usize, v: usize, grade: Grade) -> usize {
        self.edges.push(Edge {
            id: Arc::from(id.into()),
            ends: [u, v],
            grade,
        });
        self.edges.len() - 1
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Total number of simplices.
    pub fn size(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| &*v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| &*e.id == id)
    }

    pub fn incidence(&self) -> Incidence {
        Incidence::new(self.vertices.len(), &self.edges)
    }

    /// All violated invariants; empty iff the graph is a valid filtered graph.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(&*v.id) {
                out.push(Violation::DuplicateVertexId(v.id.to_string()));
            }
            if !self.poset.contains(&v.grade) {
                out.push(Violation::ForeignVertexGrade(v.id.to_string()));
            }
        }
        let mut seen = HashSet::new();
        for e in &self.edges {
            if !seen.insert(&*e.id) {
                out.push(Violation::DuplicateEdgeId(e.id.to_string()));
            }
            if !self.poset.contains(&e.grade) {
                out.push(Violation::ForeignEdgeGrade(e.id.to_string()));
                continue;
            }
            for &end in &e.ends {
                match self.vertices.get(end) {
                    None => out.push(Violation::DanglingEndpoint {
                        edge: e.id.to_string(),
                        endpoint: end,
                    }),
                    Some(v)
                        if self.poset.contains(&v.grade) && !self.poset.le(&v.grade, &e.grade) =>
                    {
                        out.push(Violation::NotMonotone {
                            edge: e.id.to_string(),
                            vertex: v.id.to_string(),
                        })
                    }
                    Some(_) => {}
                }
                if e.is_loop() {
                    break;
                }
            }
        }
        out
    }

    /// The sublevel subgraph at `r`; grades and ids are kept.
    pub fn subgraph_at(&self, r: &Grade) -> FilteredGraph {
        let mut index = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if self.poset.le(&v.grade, r) {
                index[i] = vertices.len();
                vertices.push(v.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| self.poset.le(&e.grade, r))
            .map(|e| Edge {
                id: e.id.clone(),
                ends: [index[e.ends[0]], index[e.ends[1]]],
                grade: e.grade.clone(),
            })
            .collect();
        FilteredGraph::from_parts(self.poset.clone(), vertices, edges)
    }

    pub fn components(&self) -> Partition {
        let mut p = Partition::new(self.vertices.len());
        for e in &self.edges {
            p.union(e.ends[0], e.ends[1]);
        }
        p
    }

    /// Dimension of the cycle space: |E| - |V| + #components.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.components().count() - self.vertices.len()
    }

    fn edge(&self, e: usize) -> Result<&Edge, GraphError> {
        self.edges.get(e).ok_or(GraphError::MissingEdge(e))
    }

    /// The endpoint that a simple collapse of `e` removes, if `e` is collapsible.
    /// When both endpoints qualify, the one with the larger index goes.
    pub fn collapsed_endpoint(&self, e: usize) -> Option<usize> {
        let edge = self.edges.get(e)?;
        if edge.is_loop() {
            return None;
        }
        let [a, b] = edge.ends;
        let a_eq = self.vertices[a].grade == edge.grade;
        let b_eq = self.vertices[b].grade == edge.grade;
        match (a_eq, b_eq) {
            (true, true) => Some(a.max(b)),
            (true, false) => Some(a),
            (false, true) => Some(b),
            (false, false) => None,
        }
    }

    pub fn is_collapsible(&self, e: usize) -> bool {
        self.collapsed_endpoint(e).is_some()
    }

    pub fn simple_collapse(&self, e: usize) -> Result<FilteredGraph, GraphError> {
        let edge = self.edge(e)?;
        let removed = self
            .collapsed_endpoint(e)
            .ok_or_else(|| GraphError::NotCollapsible(edge.id.to_string()))?;
        let kept = edge.opposite(removed);
        let index: Vec<usize> = (0..self.vertices.len())
            .map(|v| {
                let v = if v == removed { kept } else { v };
                if v > removed {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != removed)
            .map(|(_, v)| v.clone())
            .collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, d)| Edge {
                id: d.id.clone(),
                ends: [index[d.ends[0]], index[d.ends[1]]],
                grade: d.grade.clone(),
            })
            .collect();
        Ok(FilteredGraph::from_parts(
            self.poset.clone(),
            vertices,
            edges,
        ))
    }

    pub fn simple_delete(&self, e: usize) -> Result<FilteredGraph, GraphError> {
        self.edge(e)?;
        let mut out = self.clone();
        out.edges.remove(e);
        Ok(out)
    }

    /// Whether the endpoints of `e` are connected at grade `f(e)` without `e`,
    /// by breadth-first search from the first endpoint.
    pub fn is_deletable(&self, e: usize) -> Result<bool, GraphError> {
        let edge = self.edge(e)?;
        if edge.is_loop() {
            return Ok(true);
        }
        let incidence = self.incidence();
        let mut visited = vec![false; self.vertices.len()];
        Ok(bfs_connects(self, &incidence, e, |_| true, &mut visited))
    }

    /// Reorder vertices and edges; `vertex_order[i]` is the old index of new vertex `i`.
    pub fn permuted(&self, vertex_order: &[usize], edge_order: &[usize]) -> FilteredGraph {
        let mut new_index = vec![0; self.vertices.len()];
        for (new, &old) in vertex_order.iter().enumerate() {
            new_index[old] = new;
        }
        let vertices = vertex_order
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect();
        let edges = edge_order
            .iter()
            .map(|&i| {
                let e = &self.edges[i];
                Edge {
                    id: e.id.clone(),
                    ends: [new_index[e.ends[0]], new_index[e.ends[1]]],
                    grade: e.grade.clone(),
                }
            })
            .collect();
        FilteredGraph::from_parts(self.poset.clone(), vertices, edges)
    }
}

/// Breadth-first search from `ends[0]` of edge `e` towards `ends[1]`, over vertices
/// and edges whose grade is below `f(e)`, skipping `e` and edges rejected by `alive`.
/// `visited` must be all-false on entry and is restored before returning.
pub(crate) fn bfs_connects(
    g: &FilteredGraph,
    incidence: &Incidence,
    e: usize,
    alive: impl Fn(usize) -> bool,
    visited: &mut [bool],
) -> bool {
    let edge = &g.edges[e];
    let (source, target) = (edge.ends[0], edge.ends[1]);
    if source == target {
        return true;
    }
    let top = &edge.grade;
    let poset = &g.poset;
    let mut queue = VecDeque::new();
    let mut touched = vec![source];
    visited[source] = true;
    queue.push_back(source);
    let mut found = false;
    'search: while let Some(u) = queue.pop_front() {
        for &d in incidence.of(u) {
            if d == e || !alive(d) {
                continue;
            }
            let de = &g.edges[d];
            if !poset.le(&de.grade, top) {
                continue;
            }
            let w = de.opposite(u);
            if visited[w] || !poset.le(&g.vertices[w].grade, top) {
                continue;
            }
            if w == target {
                found = true;
                break 'search;
            }
            visited[w] = true;
            touched.push(w);
            queue.push_back(w);
        }
    }
    for v in touched {
        visited[v] = false;
    }
    found
}
