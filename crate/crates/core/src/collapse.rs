//! Reduction to a vertex-minimal filtered graph by collapsing trees of
//! collapsible edges.
//!
//! Both passes grow depth-first-search trees from roots taken in input order,
//! with a visited set shared across roots, then contract every tree onto its
//! root in one step. The contracted edge sets are monotonic forests, so the
//! result is homology-equivalent to the input.

use crate::graph::{Edge, FilteredGraph, Incidence, Vertex};

/// Output of [`vertex_minimize`].
#[derive(Clone, Debug)]
pub struct CollapseResult {
    /// Vertex-minimal graph; surviving vertices and edges keep their input order.
    pub graph: FilteredGraph,
    /// Grades of the surviving vertices, in order.
    pub beta0: Vec<crate::grade::Grade>,
    /// Input vertex index to surviving vertex index.
    pub vertex_map: Vec<usize>,
    /// Input edge indices that were contracted, in contraction order.
    pub collapsed_edges: Vec<usize>,
    /// For each surviving edge, its index in the input graph.
    pub edge_origin: Vec<usize>,
}

/// One contraction pass: `grow(u, e)` returns the vertex that edge `e` leads to
/// from `u` if the search may follow it.
struct Contraction {
    root: Vec<usize>,
    tree_edge: Vec<bool>,
    order: Vec<usize>,
}

fn contract<R, G>(g: &FilteredGraph, incidence: &Incidence, mut is_root: R, grow: G) -> Contraction
where
    R: FnMut(usize) -> bool,
    G: Fn(usize, usize) -> Option<usize>,
{
    let n = g.num_vertices();
    let mut root: Vec<usize> = (0..n).collect();
    let mut visited = vec![false; n];
    let mut tree_edge = vec![false; g.num_edges()];
    let mut order = Vec::new();
    let mut stack: Vec<(usize, Option<usize>, usize)> = Vec::new();
    for v in 0..n {
        if visited[v] || !is_root(v) {
            continue;
        }
        stack.push((v, None, v));
        while let Some((r, via, u)) = stack.pop() {
            if visited[u] {
                continue;
            }
            visited[u] = true;
            if let Some(e) = via {
                root[u] = r;
                tree_edge[e] = true;
                order.push(e);
            }
            for &e in incidence.of(u) {
                if let Some(x) = grow(u, e) {
                    if !visited[x] {
                        stack.push((r, Some(e), x));
                    }
                }
            }
        }
    }
    Contraction {
        root,
        tree_edge,
        order,
    }
}

/// Rebuild the graph with every vertex replaced by its root and tree edges removed.
/// Returns the graph, old-to-new vertex indices, and the surviving edges' old indices.
fn apply(g: &FilteredGraph, c: &Contraction) -> (FilteredGraph, Vec<usize>, Vec<usize>) {
    let n = g.num_vertices();
    let mut new_index = vec![usize::MAX; n];
    let mut vertices: Vec<Vertex> = Vec::new();
    for v in 0..n {
        if c.root[v] == v {
            new_index[v] = vertices.len();
            vertices.push(g.vertices()[v].clone());
        }
    }
    let vertex_map: Vec<usize> = (0..n).map(|v| new_index[c.root[v]]).collect();
    let mut edges: Vec<Edge> = Vec::new();
    let mut origin = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if c.tree_edge[i] {
            continue;
        }
        edges.push(Edge {
            id: e.id.clone(),
            ends: [vertex_map[e.ends[0]], vertex_map[e.ends[1]]],
            grade: e.grade.clone(),
        });
        origin.push(i);
    }
    (
        FilteredGraph::from_parts(g.poset().clone(), vertices, edges),
        vertex_map,
        origin,
    )
}

/// Contract every local collapsible edge (distinct endpoints, all three grades
/// equal). Returns the graph and the input-to-output vertex map.
pub fn collapse_local(g: &FilteredGraph) -> (FilteredGraph, Vec<usize>) {
    let (graph, map, _, _) = collapse_local_tracked(g);
    (graph, map)
}

fn collapse_local_tracked(
    g: &FilteredGraph,
) -> (FilteredGraph, Vec<usize>, Vec<usize>, Vec<usize>) {
    let incidence = g.incidence();
    let vertices = g.vertices();
    let edges = g.edges();
    let c = contract(
        g,
        &incidence,
        |_| true,
        |u, e| {
            let edge = &edges[e];
            let x = edge.opposite(u);
            (x != u && edge.grade == vertices[u].grade && edge.grade == vertices[x].grade)
                .then_some(x)
        },
    );
    let (graph, map, origin) = apply(g, &c);
    (graph, map, origin, c.order)
}

/// Collapse to a vertex-minimal graph, returning it together with β0 of H0.
pub fn vertex_minimize(g: &FilteredGraph) -> CollapseResult {
    let (local, local_map, local_origin, local_order) = collapse_local_tracked(g);
    let incidence = local.incidence();
    let vertices = local.vertices();
    let edges = local.edges();
    let poset = local.poset();
    // A vertex is not minimal if some edge at its own grade reaches a strictly lower vertex.
    let is_minimal = |v: usize| {
        !incidence.of(v).iter().any(|&e| {
            let edge = &edges[e];
            let u = edge.opposite(v);
            u != v
                && edge.grade == vertices[v].grade
                && poset.lt(&vertices[u].grade, &vertices[v].grade)
        })
    };
    let c = contract(&local, &incidence, is_minimal, |u, e| {
        let edge = &edges[e];
        let x = edge.opposite(u);
        (x != u
            && edge.grade == vertices[x].grade
            && poset.lt(&vertices[u].grade, &vertices[x].grade))
        .then_some(x)
    });
    let (graph, map, origin) = apply(&local, &c);
    let beta0 = graph.vertices().iter().map(|v| v.grade.clone()).collect();
    let vertex_map = local_map.iter().map(|&v| map[v]).collect();
    let mut collapsed_edges = local_order;
    collapsed_edges.extend(c.order.iter().map(|&e| local_origin[e]));
    let edge_origin = origin.iter().map(|&e| local_origin[e]).collect();
    CollapseResult {
        graph,
        beta0,
        vertex_map,
        collapsed_edges,
        edge_origin,
    }
}
