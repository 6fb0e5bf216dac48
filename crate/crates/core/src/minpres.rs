//! Minimal presentations of H0 over an arbitrary poset, in quadratic time.

use std::sync::Arc;

use crate::collapse::vertex_minimize;
use crate::grade::{sorted, FinitePoset, Grade, Poset};
use crate::graph::FilteredGraph;
use crate::partition::Partition;
use crate::scalar::rank_values;

/// A multiset of grades, kept in emission order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable(pub Vec<Grade>);

impl BettiTable {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn grades(&self) -> &[Grade] {
        &self.0
    }

    pub fn push(&mut self, g: Grade) {
        self.0.push(g);
    }

    /// The grades in canonical order, for multiset comparison.
    pub fn sorted(&self) -> Vec<Grade> {
        sorted(&self.0)
    }

    pub fn same_multiset(&self, other: &BettiTable) -> bool {
        self.len() == other.len() && self.sorted() == other.sorted()
    }

    /// Number of grades `<= r`, with multiplicity.
    pub fn count_below(&self, poset: &Poset, r: &Grade) -> usize {
        self.0.iter().filter(|g| poset.le(g, r)).count()
    }
}

impl From<Vec<Grade>> for BettiTable {
    fn from(v: Vec<Grade>) -> Self {
        BettiTable(v)
    }
}

/// One coordinate-format matrix entry; indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub coef: i8,
}

/// A presentation matrix with rows graded by β0 and columns graded by β1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePresentation {
    pub poset: Poset,
    pub rows: BettiTable,
    pub cols: BettiTable,
    pub entries: Vec<Entry>,
}

/// Column summary used to compare presentations built in different orders.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ColumnSignature {
    pub grade: Grade,
    pub coefs: Vec<i8>,
}

impl SparsePresentation {
    pub fn new(poset: Poset) -> Self {
        SparsePresentation {
            poset,
            rows: BettiTable::default(),
            cols: BettiTable::default(),
            entries: Vec::new(),
        }
    }

    /// Append a column `{e1} - {e0}` given the row indices of its endpoints.
    pub fn push_edge_column(&mut self, grade: Grade, row0: usize, row1: usize) {
        let col = self.cols.len();
        self.cols.push(grade);
        self.entries.push(Entry {
            row: row0,
            col,
            coef: -1,
        });
        self.entries.push(Entry {
            row: row1,
            col,
            coef: 1,
        });
    }

    /// Columns as (grade, sorted coefficients), sorted.
    pub fn column_signatures(&self) -> Vec<ColumnSignature> {
        let mut coefs = vec![Vec::new(); self.cols.len()];
        for e in &self.entries {
            coefs[e.col].push(e.coef);
        }
        let mut out: Vec<ColumnSignature> = self
            .cols
            .grades()
            .iter()
            .zip(coefs)
            .map(|(g, mut c)| {
                c.sort();
                ColumnSignature {
                    grade: g.clone(),
                    coefs: c,
                }
            })
            .collect();
        out.sort();
        out
    }

    /// Structural checks: every entry's row grade is below its column grade, and
    /// every column is either empty or a (-1, +1) pair.
    pub fn is_well_formed(&self) -> bool {
        let mut per_col = vec![Vec::new(); self.cols.len()];
        for e in &self.entries {
            if e.row >= self.rows.len() || e.col >= self.cols.len() {
                return false;
            }
            if !self.poset.le(&self.rows.0[e.row], &self.cols.0[e.col]) {
                return false;
            }
            per_col[e.col].push(e.coef);
        }
        per_col.into_iter().all(|mut c| {
            c.sort();
            c.is_empty() || c == [-1, 1]
        })
    }
}

/// Dimension at `r` of the cokernel of the presentation, counted as the number of
/// components of the graph on rows `<= r` linked by columns `<= r`.
pub fn presented_module_dimension(p: &SparsePresentation, r: &Grade) -> usize {
    let present: Vec<bool> = p.rows.grades().iter().map(|g| p.poset.le(g, r)).collect();
    let mut uf = Partition::new(p.rows.len());
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); p.cols.len()];
    for e in &p.entries {
        col_rows[e.col].push(e.row);
    }
    for (c, rows) in col_rows.iter().enumerate() {
        if !p.poset.le(&p.cols.0[c], r) {
            continue;
        }
        for w in rows.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let absent = present.iter().filter(|&&b| !b).count();
    uf.count() - absent
}

/// The minimal filtered graph produced by collapsing and then deleting.
#[derive(Clone, Debug)]
pub struct MinimalGraph {
    pub vertex_minimal: FilteredGraph,
    pub graph: FilteredGraph,
    /// Indices (into `vertex_minimal`) of the deleted edges, in deletion order.
    pub deleted: Vec<usize>,
}

/// Grades replaced by small integer keys with the same order: per-axis ranks
/// over R^n, element indices over a finite poset. Vertices come first, then edges.
struct PackedGrades {
    width: usize,
    keys: Vec<u32>,
    finite: Option<Arc<FinitePoset>>,
}

impl PackedGrades {
    fn new(g: &FilteredGraph) -> Self {
        let grades: Vec<&Grade> = g
            .vertices()
            .iter()
            .map(|v| &v.grade)
            .chain(g.edges().iter().map(|e| &e.grade))
            .collect();
        match g.poset() {
            Poset::Finite(p) => PackedGrades {
                width: 1,
                keys: grades
                    .iter()
                    .map(|x| match x {
                        Grade::Element(i) => *i as u32,
                        Grade::Coords(_) => unreachable!("validated graph"),
                    })
                    .collect(),
                finite: Some(p.clone()),
            },
            Poset::Rn(n) => {
                let mut keys = vec![0u32; grades.len() * n];
                for axis in 0..*n {
                    let (ranks, _) = rank_values(
                        grades
                            .iter()
                            .map(|x| &x.as_coords().expect("validated graph")[axis])
                            .collect(),
                    );
                    for (i, r) in ranks.into_iter().enumerate() {
                        keys[i * n + axis] = r;
                    }
                }
                PackedGrades {
                    width: *n,
                    keys,
                    finite: None,
                }
            }
        }
    }

    #[inline]
    fn le(&self, a: usize, b: usize) -> bool {
        match &self.finite {
            Some(p) => p.le(self.keys[a] as usize, self.keys[b] as usize),
            None => {
                let w = self.width;
                self.keys[a * w..a * w + w]
                    .iter()
                    .zip(&self.keys[b * w..b * w + w])
                    .all(|(x, y)| x <= y)
            }
        }
    }
}

/// Breadth-first search for deletability with a generation-stamped visited buffer.
struct Deletion<'a> {
    g: &'a FilteredGraph,
    keys: PackedGrades,
    offsets: Vec<usize>,
    // (edge, other endpoint) per incidence
    adjacency: Vec<(u32, u32)>,
    alive: Vec<bool>,
    stamp: Vec<u32>,
    generation: u32,
    queue: Vec<u32>,
}

impl<'a> Deletion<'a> {
    fn new(g: &'a FilteredGraph) -> Self {
        let nv = g.num_vertices();
        let mut offsets = vec![0usize; nv + 1];
        for e in g.edges() {
            offsets[e.ends[0] + 1] += 1;
            if !e.is_loop() {
                offsets[e.ends[1] + 1] += 1;
            }
        }
        for v in 0..nv {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut adjacency = vec![(0, 0); offsets[nv]];
        for (i, e) in g.edges().iter().enumerate() {
            let [a, b] = e.ends;
            adjacency[fill[a]] = (i as u32, b as u32);
            fill[a] += 1;
            if a != b {
                adjacency[fill[b]] = (i as u32, a as u32);
                fill[b] += 1;
            }
        }
        Deletion {
            g,
            keys: PackedGrades::new(g),
            offsets,
            adjacency,
            alive: vec![true; g.num_edges()],
            stamp: vec![0; nv],
            generation: 0,
            queue: Vec::new(),
        }
    }

    /// Whether living edges below `f(e)`, other than `e`, connect the ends of `e`.
    fn deletable(&mut self, e: usize) -> bool {
        let [source, target] = self.g.edges()[e].ends;
        if source == target {
            return true;
        }
        let nv = self.g.num_vertices();
        let top = nv + e;
        self.generation += 1;
        let gen = self.generation;
        self.queue.clear();
        self.queue.push(source as u32);
        self.stamp[source] = gen;
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            for &(d, w) in &self.adjacency[self.offsets[u]..self.offsets[u + 1]] {
                let (d, w) = (d as usize, w as usize);
                if d == e || !self.alive[d] || self.stamp[w] == gen {
                    continue;
                }
                if !self.keys.le(nv + d, top) || !self.keys.le(w, top) {
                    continue;
                }
                if w == target {
                    return true;
                }
                self.stamp[w] = gen;
                self.queue.push(w as u32);
            }
        }
        false
    }
}

/// Collapse to a vertex-minimal graph, then delete deletable edges in input order.
pub fn minimal_graph(g: &FilteredGraph) -> MinimalGraph {
    let reduced = vertex_minimize(g).graph;
    let mut search = Deletion::new(&reduced);
    let mut deleted = Vec::new();
    for e in 0..reduced.num_edges() {
        if search.deletable(e) {
            search.alive[e] = false;
            deleted.push(e);
        }
    }
    let alive = search.alive;
    let edges = reduced
        .edges()
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(e, _)| e.clone())
        .collect();
    let graph =
        FilteredGraph::from_parts(reduced.poset().clone(), reduced.vertices().to_vec(), edges);
    MinimalGraph {
        vertex_minimal: reduced,
        graph,
        deleted,
    }
}

/// The presentation of a graph read off directly: vertices as rows, edges as columns.
pub fn standard_presentation(g: &FilteredGraph) -> SparsePresentation {
    let mut p = SparsePresentation::new(g.poset().clone());
    for v in g.vertices() {
        p.rows.push(v.grade.clone());
    }
    for e in g.edges() {
        p.push_edge_column(e.grade.clone(), e.ends[0], e.ends[1]);
    }
    p
}

/// Minimal presentation of H0 of a filtered graph over any poset.
pub fn minimal_presentation(g: &FilteredGraph) -> SparsePresentation {
    standard_presentation(&minimal_graph(g).graph)
}
