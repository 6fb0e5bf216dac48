//! Betti tables of H0 (and β0 of H1) for R^2-filtered graphs in O(|G| log |G|).
//!
//! After collapsing to a vertex-minimal graph, simplices are swept in
//! lexicographic order of their grades, with vertices before edges at equal
//! grades and input index as the final tie-break. A dynamic dendrogram keyed by
//! second coordinates records, for every pair of vertices, the lowest `y` at
//! which they are connected using edges seen so far. An edge at `(x, y)` whose
//! endpoints already merge by time `y` is deletable; otherwise it is a relation,
//! and if its endpoints merge at some finite `s > y` it is cycle-creating and
//! contributes `(x, s)` to β2.

use crate::collapse::vertex_minimize;
use crate::dendrogram::{Backend, Dendrogram, LinkCutForest, MergeableForest, NaiveForest};
use crate::error::GraphError;
use crate::grade::Grade;
use crate::graph::FilteredGraph;
use crate::minpres::{BettiTable, SparsePresentation};
use crate::scalar::{rank_values, Extended, Rational};

#[derive(Clone, Debug)]
pub struct BettiReport {
    pub beta0: BettiTable,
    pub beta1: BettiTable,
    pub beta2: BettiTable,
    /// β0 of H1.
    pub beta0_h1: BettiTable,
    pub matrix: SparsePresentation,
    /// Input edges found deletable after collapsing, in sweep order.
    pub deletable: Vec<usize>,
    /// Input edge that produced each β2 entry.
    pub cycle_creating: Vec<usize>,
}

pub fn betti_r2(g: &FilteredGraph, backend: Backend) -> Result<BettiReport, GraphError> {
    if !g.poset().is_r2() {
        return Err(GraphError::UnsupportedPoset);
    }
    // most inputs have nothing to collapse; skip the rebuild then
    let collapsed;
    let (reduced, origin) = if (0..g.num_edges()).any(|e| g.is_collapsible(e)) {
        let c = vertex_minimize(g);
        collapsed = (c.graph, c.edge_origin);
        (&collapsed.0, Some(collapsed.1.as_slice()))
    } else {
        (g, None)
    };
    let mut report = match backend {
        Backend::Fast => sweep::<LinkCutForest<u32>>(reduced),
        Backend::Naive => sweep::<NaiveForest<u32>>(reduced),
    };
    if let Some(origin) = origin {
        for e in report
            .deletable
            .iter_mut()
            .chain(report.cycle_creating.iter_mut())
        {
            *e = origin[*e];
        }
    }
    Ok(report)
}

fn sweep<F: MergeableForest<u32> + Default>(reduced: &FilteredGraph) -> BettiReport {
    let vertices = reduced.vertices();
    let edges = reduced.edges();
    let grades = || {
        vertices
            .iter()
            .map(|v| &v.grade)
            .chain(edges.iter().map(|e| &e.grade))
    };
    let (xr, _) = rank_values(grades().map(Grade::x).collect());
    let (yr, ys) = rank_values(grades().map(Grade::y).collect());

    // key = (x rank, y rank, edge?) packed, so vertices come before edges at the same grade
    let nv = vertices.len();
    let mut order: Vec<(u64, u32)> = (0..reduced.size())
        .map(|k| {
            let kind = u64::from(k >= nv);
            let key = (xr[k] as u64) << 33 | (yr[k] as u64) << 1 | kind;
            let index = if k >= nv { k - nv } else { k };
            (key, index as u32)
        })
        .collect();
    drop(xr);
    order.sort_unstable();

    let mut dendrogram: Dendrogram<u32, F> = Dendrogram::with_capacity(vertices.len(), edges.len());
    // a vertex's node in the dendrogram is its row, so nodes are numbered in sweep order
    let mut row = vec![usize::MAX; vertices.len()];
    let mut matrix = SparsePresentation::new(reduced.poset().clone());
    let mut beta2 = BettiTable::default();
    let mut beta0_h1 = BettiTable::default();
    let mut deletable = Vec::new();
    let mut cycle_creating = Vec::new();
    for (key, i) in order {
        let i = i as usize;
        let y = (key >> 1) as u32;
        if key & 1 == 0 {
            row[i] = matrix.rows.len();
            matrix.rows.push(vertices[i].grade.clone());
            continue;
        }
        let e = &edges[i];
        let [e0, e1] = e.ends;
        let (n0, n1) = (row[e0], row[e1]);
        let s = dendrogram.time_of_merge(n0, n1);
        if s <= Extended::Finite(y) {
            beta0_h1.push(e.grade.clone());
            deletable.push(i);
            continue;
        }
        dendrogram.merge_at_time(n0, n1, y);
        matrix.push_edge_column(e.grade.clone(), n0, n1);
        if let Extended::Finite(s) = s {
            let witness = Grade::Coords(
                [e.grade.x().clone(), ys[s as usize].clone()]
                    .into_iter()
                    .collect(),
            );
            beta2.push(witness.clone());
            beta0_h1.push(witness);
            cycle_creating.push(i);
        }
    }
    BettiReport {
        beta0: matrix.rows.clone(),
        beta1: matrix.cols.clone(),
        beta2,
        beta0_h1,
        matrix,
        deletable,
        cycle_creating,
    }
}

/// Grade of a minimal witness of edge `d`, with edges ordered lexicographically
/// by grade and then by index.
pub fn witness_grade(g: &FilteredGraph, d: usize) -> Result<Grade, GraphError> {
    if !g.poset().is_r2() {
        return Err(GraphError::UnsupportedPoset);
    }
    let edges = g.edges();
    let edge = edges.get(d).ok_or(GraphError::MissingEdge(d))?;
    if edge.is_loop() {
        return Err(GraphError::SelfLoopWitness(edge.id.to_string()));
    }
    let mut dendrogram: Dendrogram<Rational, LinkCutForest<Rational>> =
        Dendrogram::with_vertices(g.num_vertices());
    let key = |i: usize| (&edges[i].grade, i);
    for (i, e) in edges.iter().enumerate() {
        if key(i) < key(d) {
            dendrogram.merge_at_time(e.ends[0], e.ends[1], e.grade.y().clone());
        }
    }
    match dendrogram.time_of_merge(edge.ends[0], edge.ends[1]) {
        Extended::Finite(s) => Ok(Grade::Coords(
            [edge.grade.x().clone(), s].into_iter().collect(),
        )),
        _ => Err(GraphError::NoWitness(edge.id.to_string())),
    }
}
