//! Multi-critical filtrations: every simplex enters at a finite set of grades.
//!
//! [`one_criticalize`] replaces a vertex by one copy per grade, joined by
//! identification edges, and an edge by one copy per grade wired to endpoint
//! copies below it. Connectivity, and hence H0, is preserved; H1 is not.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{GradeError, MultiCriticalError};
use crate::gen::GraphParams;
use crate::grade::{Grade, Poset};
use crate::graph::{Edge, FilteredGraph, Vertex};
use crate::oracle::GradeGrid;
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVertex {
    pub id: Arc<str>,
    pub grades: Vec<Grade>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiEdge {
    pub id: Arc<str>,
    pub ends: [usize; 2],
    pub grades: Vec<Grade>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiCriticalGraph {
    poset: Poset,
    vertices: Vec<MultiVertex>,
    edges: Vec<MultiEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiViolation {
    DuplicateVertexId(String),
    DuplicateEdgeId(String),
    NoGrades(String),
    ForeignGrade(String),
    DanglingEndpoint {
        edge: String,
        endpoint: usize,
    },
    /// No grade of `vertex` lies below the given grade of `edge`.
    NotMonotone {
        edge: String,
        grade: Grade,
        vertex: String,
    },
}

impl fmt::Display for MultiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiViolation::DuplicateVertexId(id) => write!(f, "vertex {id}: duplicate id"),
            MultiViolation::DuplicateEdgeId(id) => write!(f, "edge {id}: duplicate id"),
            MultiViolation::NoGrades(id) => write!(f, "{id}: empty grade set"),
            MultiViolation::ForeignGrade(id) => write!(f, "{id}: grade does not match the poset"),
            MultiViolation::DanglingEndpoint { edge, endpoint } => {
                write!(f, "edge {edge}: endpoint {endpoint} does not exist")
            }
            MultiViolation::NotMonotone {
                edge,
                grade,
                vertex,
            } => {
                write!(f, "edge {edge}: no grade of {vertex} is below {grade}")
            }
        }
    }
}

impl MultiCriticalGraph {
    pub fn new(poset: Poset) -> Self {
        MultiCriticalGraph {
            poset,
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, grades: Vec<Grade>) -> usize {
        self.vertices.push(MultiVertex {
            id: Arc::from(id.into()),
            grades,
        });
        self.vertices.len() - 1
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        u: usize,
        v: usize,
        grades: Vec<Grade>,
    ) -> usize {
        self.edges.push(MultiEdge {
            id: Arc::from(id.into()),
            ends: [u, v],
            grades,
        });
        self.edges.len() - 1
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn vertices(&self) -> &[MultiVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[MultiEdge] {
        &self.edges
    }

    /// Every grade of every simplex.
    pub fn grades(&self) -> impl Iterator<Item = &Grade> {
        self.vertices
            .iter()
            .flat_map(|v| &v.grades)
            .chain(self.edges.iter().flat_map(|e| &e.grades))
    }

    /// The 1-critical graph as a multi-critical one with singleton grade sets.
    pub fn from_filtered(g: &FilteredGraph) -> Self {
        MultiCriticalGraph {
            poset: g.poset().clone(),
            vertices: g
                .vertices()
                .iter()
                .map(|v| MultiVertex {
                    id: v.id.clone(),
                    grades: vec![v.grade.clone()],
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| MultiEdge {
                    id: e.id.clone(),
                    ends: e.ends,
                    grades: vec![e.grade.clone()],
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> Vec<MultiViolation> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(&*v.id) {
                out.push(MultiViolation::DuplicateVertexId(v.id.to_string()));
            }
            if v.grades.is_empty() {
                out.push(MultiViolation::NoGrades(v.id.to_string()));
            }
            if !v.grades.iter().all(|p| self.poset.contains(p)) {
                out.push(MultiViolation::ForeignGrade(v.id.to_string()));
            }
        }
        let mut seen = HashSet::new();
        for e in &self.edges {
            if !seen.insert(&*e.id) {
                out.push(MultiViolation::DuplicateEdgeId(e.id.to_string()));
            }
            if e.grades.is_empty() {
                out.push(MultiViolation::NoGrades(e.id.to_string()));
            }
            if !e.grades.iter().all(|p| self.poset.contains(p)) {
                out.push(MultiViolation::ForeignGrade(e.id.to_string()));
                continue;
            }
            for &end in &e.ends {
                let Some(v) = self.vertices.get(end) else {
                    out.push(MultiViolation::DanglingEndpoint {
                        edge: e.id.to_string(),
                        endpoint: end,
                    });
                    continue;
                };
                if !v.grades.iter().all(|q| self.poset.contains(q)) {
                    continue;
                }
                for p in &e.grades {
                    if !v.grades.iter().any(|q| self.poset.le(q, p)) {
                        out.push(MultiViolation::NotMonotone {
                            edge: e.id.to_string(),
                            grade: p.clone(),
                            vertex: v.id.to_string(),
                        });
                    }
                }
            }
        }
        out
    }

    /// Components of the sublevel graph at `r`, as labels over all vertices;
    /// `None` for vertices not yet present.
    pub fn components_at(&self, r: &Grade) -> Vec<Option<usize>> {
        let present = |grades: &[Grade]| grades.iter().any(|p| self.poset.le(p, r));
        let mut p = Partition::new(self.vertices.len());
        for e in &self.edges {
            if present(&e.grades) {
                p.union(e.ends[0], e.ends[1]);
            }
        }
        let labels = p.labels();
        self.vertices
            .iter()
            .zip(labels)
            .map(|(v, l)| present(&v.grades).then_some(l))
            .collect()
    }
}

/// Where a simplex of the 1-criticalized graph comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Copy of `vertex` at its `grade`-th grade.
    Vertex { vertex: usize, grade: usize },
    /// Identification edge between two copies of `vertex`.
    Identification {
        vertex: usize,
        grades: (usize, usize),
    },
    /// Copy of `edge` at its `grade`-th grade.
    Edge { edge: usize, grade: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Provenance {
    pub vertices: Vec<Origin>,
    pub edges: Vec<Origin>,
}

impl Provenance {
    /// The original vertex of every new vertex.
    pub fn vertex_map(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .map(|o| match o {
                Origin::Vertex { vertex, .. } => *vertex,
                _ => unreachable!("vertex origins are vertex copies"),
            })
            .collect()
    }
}

fn distinct(grades: &[Grade]) -> Vec<Grade> {
    let mut g = grades.to_vec();
    g.sort();
    g.dedup();
    g
}

fn all_joins(poset: &Poset, grades: &[Grade]) -> Result<Vec<((usize, usize), Grade)>, GradeError> {
    let mut out = Vec::new();
    for i in 0..grades.len() {
        for j in i + 1..grades.len() {
            out.push(((i, j), poset.join(&grades[i], &grades[j])?));
        }
    }
    Ok(out)
}

/// One pair per minimal element of the pairwise joins of `grades`: the
/// lexicographically least pair with that join. No smaller set of pairs can
/// have every minimal join among its joins.
pub fn minimal_join_edges(
    poset: &Poset,
    grades: &[Grade],
) -> Result<Vec<(Grade, Grade)>, GradeError> {
    let grades = distinct(grades);
    Ok(minimal_pairs(poset, &grades)?
        .into_iter()
        .map(|(i, j)| (grades[i].clone(), grades[j].clone()))
        .collect())
}

fn minimal_pairs(poset: &Poset, grades: &[Grade]) -> Result<Vec<(usize, usize)>, GradeError> {
    let joins = all_joins(poset, grades)?;
    let mut chosen: Vec<((usize, usize), &Grade)> = Vec::new();
    for (pair, m) in &joins {
        let minimal = joins.iter().all(|(_, other)| !poset.lt(other, m));
        if minimal && !chosen.iter().any(|(_, c)| *c == m) {
            chosen.push((*pair, m));
        }
    }
    Ok(chosen.into_iter().map(|(p, _)| p).collect())
}

/// Sort key for grades that refines the partial order.
fn extension_key(poset: &Poset, g: &Grade) -> (usize, Grade) {
    match (poset, g) {
        (Poset::Finite(p), Grade::Element(i)) => (p.height(*i), g.clone()),
        _ => (0, g.clone()),
    }
}

/// Identification pairs for one vertex: the minimal join cover, then whatever
/// is needed so that any two copies `p`, `q` are linked through pairs whose
/// joins lie below `p ∨ q`.
fn identification_pairs(
    poset: &Poset,
    grades: &[Grade],
) -> Result<Vec<(usize, usize)>, GradeError> {
    let mut pairs = minimal_pairs(poset, grades)?;
    let mut joins = all_joins(poset, grades)?;
    joins.sort_by_cached_key(|(pair, m)| (extension_key(poset, m), *pair));
    let join_of = |pair: (usize, usize)| {
        poset
            .join(&grades[pair.0], &grades[pair.1])
            .expect("checked above")
    };
    for (pair, top) in joins {
        let usable: Vec<(usize, usize)> = pairs
            .iter()
            .copied()
            .filter(|&q| poset.le(&join_of(q), &top))
            .collect();
        let mut p = Partition::new(grades.len());
        for (a, b) in usable {
            p.union(a, b);
        }
        if !p.same(pair.0, pair.1) {
            pairs.push(pair);
        }
    }
    Ok(pairs)
}

fn unique_id(used: &mut HashSet<String>, base: String) -> String {
    let mut id = base;
    while used.contains(&id) {
        id.push('\'');
    }
    used.insert(id.clone());
    id
}

/// Least grade, in storage order, of `grades` below `p`.
fn least_below(poset: &Poset, grades: &[Grade], p: &Grade) -> usize {
    (0..grades.len())
        .filter(|&i| poset.le(&grades[i], p))
        .min_by(|&a, &b| grades[a].cmp(&grades[b]))
        .expect("graph was validated")
}

/// A 1-critical graph whose H0 is isomorphic to that of `m`, and the origin of each of its simplices.
pub fn one_criticalize(
    m: &MultiCriticalGraph,
) -> Result<(FilteredGraph, Provenance), MultiCriticalError> {
    let violations = m.validate();
    if !violations.is_empty() {
        return Err(MultiCriticalError::Invalid(violations));
    }
    let poset = &m.poset;
    let mut used: HashSet<String> = m.vertices.iter().map(|v| v.id.to_string()).collect();
    used.extend(m.edges.iter().map(|e| e.id.to_string()));
    let mut prov = Provenance::default();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    // new index of the copy of each vertex at each of its distinct grades
    let mut copies: Vec<Vec<usize>> = Vec::with_capacity(m.vertices.len());
    let mut vertex_grades: Vec<Vec<Grade>> = Vec::with_capacity(m.vertices.len());
    for (vi, v) in m.vertices.iter().enumerate() {
        let grades = distinct(&v.grades);
        let single = grades.len() == 1;
        let mut mine = Vec::with_capacity(grades.len());
        for (k, p) in grades.iter().enumerate() {
            let id = if single {
                v.id.to_string()
            } else {
                unique_id(&mut used, format!("{}@{}", v.id, k + 1))
            };
            mine.push(vertices.len());
            vertices.push(Vertex {
                id: Arc::from(id),
                grade: p.clone(),
            });
            prov.vertices.push(Origin::Vertex {
                vertex: vi,
                grade: k,
            });
        }
        for (a, b) in identification_pairs(poset, &grades)? {
            let id = unique_id(&mut used, format!("{}@{}~{}", v.id, a + 1, b + 1));
            edges.push(Edge {
                id: Arc::from(id),
                ends: [mine[a], mine[b]],
                grade: poset.join(&grades[a], &grades[b])?,
            });
            prov.edges.push(Origin::Identification {
                vertex: vi,
                grades: (a, b),
            });
        }
        copies.push(mine);
        vertex_grades.push(grades);
    }
    for (ei, e) in m.edges.iter().enumerate() {
        let grades = distinct(&e.grades);
        let single = grades.len() == 1;
        for (k, p) in grades.iter().enumerate() {
            let id = if single {
                e.id.to_string()
            } else {
                unique_id(&mut used, format!("{}@{}", e.id, k + 1))
            };
            let ends = e
                .ends
                .map(|v| copies[v][least_below(poset, &vertex_grades[v], p)]);
            edges.push(Edge {
                id: Arc::from(id),
                ends,
                grade: p.clone(),
            });
            prov.edges.push(Origin::Edge { edge: ei, grade: k });
        }
    }
    Ok((
        FilteredGraph::from_parts(poset.clone(), vertices, edges),
        prov,
    ))
}

/// Check that, at every grid point, sending each copy to its original vertex
/// induces a bijection between the components of `g` and those of `m`.
/// Returns the first grid point where it does not.
pub fn check_pi0_equivalence(
    m: &MultiCriticalGraph,
    g: &FilteredGraph,
    prov: &Provenance,
    grid: &GradeGrid,
) -> Result<(), Grade> {
    let origin = prov.vertex_map();
    for r in grid.points() {
        let theirs = m.components_at(&r);
        let mut p = Partition::new(g.num_vertices());
        for e in g.edges() {
            if g.poset().le(&e.grade, &r) {
                p.union(e.ends[0], e.ends[1]);
            }
        }
        let ours = p.labels();
        // component of g -> component of m, and back
        let mut forward = std::collections::HashMap::new();
        let mut backward = std::collections::HashMap::new();
        let mut ok = true;
        for (i, v) in g.vertices().iter().enumerate() {
            if !g.poset().le(&v.grade, &r) {
                continue;
            }
            let Some(target) = theirs[origin[i]] else {
                ok = false;
                break;
            };
            if *forward.entry(ours[i]).or_insert(target) != target
                || *backward.entry(target).or_insert(ours[i]) != ours[i]
            {
                ok = false;
                break;
            }
        }
        if !ok || backward.len() != theirs.iter().flatten().collect::<HashSet<_>>().len() {
            return Err(r);
        }
    }
    Ok(())
}

/// Random multi-critical graph on the integer grid of `params`: each simplex
/// has between one and `max_grades` grades, an edge grade being the join of
/// one grade per endpoint plus jitter.
pub fn random_multicritical<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    params: &GraphParams,
    max_grades: usize,
) -> MultiCriticalGraph {
    let max_grades = max_grades.max(1);
    let mut m = MultiCriticalGraph::new(Poset::Rn(n));
    let point =
        |rng: &mut R| -> Vec<i64> { (0..n).map(|_| rng.random_range(0..params.grid)).collect() };
    let mut coords: Vec<Vec<Vec<i64>>> = Vec::with_capacity(params.vertices);
    for i in 0..params.vertices {
        let k = rng.random_range(1..=max_grades);
        let cs: Vec<Vec<i64>> = (0..k).map(|_| point(rng)).collect();
        m.add_vertex(
            format!("v{i}"),
            cs.iter()
                .map(|c| Grade::coords(c.iter().copied()))
                .collect(),
        );
        coords.push(cs);
    }
    if params.vertices == 0 {
        return m;
    }
    for i in 0..params.edges {
        let a = rng.random_range(0..params.vertices);
        let mut b = rng.random_range(0..params.vertices);
        if !params.self_loops && params.vertices > 1 {
            while b == a {
                b = rng.random_range(0..params.vertices);
            }
        }
        let k = rng.random_range(1..=max_grades);
        let grades = (0..k)
            .map(|_| {
                let qa = &coords[a][rng.random_range(0..coords[a].len())];
                let qb = &coords[b][rng.random_range(0..coords[b].len())];
                Grade::coords((0..n).map(|t| {
                    let join = qa[t].max(qb[t]);
                    (join + rng.random_range(0..=params.jitter))
                        .min(params.grid - 1)
                        .max(join)
                }))
            })
            .collect();
        m.add_edge(format!("e{i}"), a, b, grades);
    }
    m
}
