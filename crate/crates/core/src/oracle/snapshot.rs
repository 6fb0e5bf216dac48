use super::linalg::{rank_reduced, PrimeField};
use super::GradeGrid;
use crate::grade::Grade;
use crate::graph::FilteredGraph;
use crate::partition::Partition;

const ABSENT: u32 = u32::MAX;

/// Number of components of the sublevel graph at every grid point, in grid order.
///
/// Over R^n the grid is swept one stripe at a time along the last axis, with a
/// fresh union-find per stripe; over a finite poset each element is done alone.
pub fn h0_dimensions(g: &FilteredGraph, grid: &GradeGrid) -> Vec<(Grade, usize)> {
    let counts = match grid.axes() {
        Some(axes) if !grid.is_empty() => stripe_counts(g, grid, axes),
        Some(_) => Vec::new(),
        None => (0..grid.len())
            .map(|i| {
                let r = grid.point(i);
                let poset = g.poset();
                let present = g
                    .vertices()
                    .iter()
                    .filter(|v| poset.le(&v.grade, &r))
                    .count();
                let mut uf = Partition::new(g.num_vertices());
                let merged = g
                    .edges()
                    .iter()
                    .filter(|e| poset.le(&e.grade, &r))
                    .filter(|e| uf.union(e.ends[0], e.ends[1]))
                    .count();
                present - merged
            })
            .collect(),
    };
    grid.points().into_iter().zip(counts).collect()
}

fn stripe_counts(
    g: &FilteredGraph,
    grid: &GradeGrid,
    axes: &[Vec<crate::scalar::Rational>],
) -> Vec<usize> {
    let last = axes.len() - 1;
    let m = axes[last].len();
    let mut counts = vec![0; grid.len()];
    for stripe in 0..grid.len() / m {
        let base = grid.unflatten(stripe * m);
        let below_prefix = |gr: &Grade| {
            let c = gr.as_coords().expect("coordinate grade");
            (0..last).all(|a| c[a] <= axes[a][base[a]])
        };
        let step = |gr: &Grade| {
            let c = gr.as_coords().expect("coordinate grade");
            axes[last].partition_point(|x| *x < c[last])
        };
        // (position along the stripe, vertex?, index)
        let mut events: Vec<(usize, bool, usize)> = Vec::new();
        for (i, v) in g.vertices().iter().enumerate() {
            if below_prefix(&v.grade) {
                events.push((step(&v.grade), true, i));
            }
        }
        for (i, e) in g.edges().iter().enumerate() {
            if below_prefix(&e.grade) {
                events.push((step(&e.grade), false, i));
            }
        }
        events.sort_by_key(|&(pos, is_vertex, i)| (pos, !is_vertex, i));
        let mut uf = Partition::new(g.num_vertices());
        let mut count = 0usize;
        let mut next = events.iter().peekable();
        for j in 0..m {
            while let Some(&&(pos, is_vertex, i)) = next.peek() {
                if pos > j {
                    break;
                }
                if is_vertex {
                    count += 1;
                } else {
                    let [a, b] = g.edges()[i].ends;
                    if uf.union(a, b) {
                        count -= 1;
                    }
                }
                next.next();
            }
            counts[stripe * m + j] = count;
        }
    }
    counts
}

/// Dimension of `coker(d1)` at every grid point: |V_r| - rank of the boundary
/// matrix restricted to simplices `<= r`.
pub fn coker_dimensions(g: &FilteredGraph, grid: &GradeGrid, f: PrimeField) -> Vec<(Grade, usize)> {
    let poset = g.poset();
    grid.points()
        .into_iter()
        .map(|r| {
            let vs: Vec<usize> = (0..g.num_vertices())
                .filter(|&v| poset.le(&g.vertices()[v].grade, &r))
                .collect();
            let mut row_of = vec![usize::MAX; g.num_vertices()];
            for (k, &v) in vs.iter().enumerate() {
                row_of[v] = k;
            }
            let es: Vec<usize> = (0..g.num_edges())
                .filter(|&e| poset.le(&g.edges()[e].grade, &r))
                .collect();
            let mut m = vec![vec![0u32; es.len()]; vs.len()];
            for (c, &e) in es.iter().enumerate() {
                let [a, b] = g.edges()[e].ends;
                if a != b {
                    m[row_of[a]][c] = f.reduce(-1);
                    m[row_of[b]][c] = 1;
                }
            }
            let dim = vs.len() - rank_reduced(m, es.len(), f);
            (r, dim)
        })
        .collect()
}

/// The H0 module on a grid: component labels of every sublevel graph.
#[derive(Clone, Debug)]
pub struct ModuleSnapshot {
    grid: GradeGrid,
    // labels[point][vertex], dense per point, ABSENT when the vertex is not born yet
    labels: Vec<Vec<u32>>,
    counts: Vec<usize>,
}

impl ModuleSnapshot {
    pub fn new(g: &FilteredGraph, grid: &GradeGrid) -> Self {
        let poset = g.poset();
        let mut labels = Vec::with_capacity(grid.len());
        let mut counts = Vec::with_capacity(grid.len());
        for i in 0..grid.len() {
            let r = grid.point(i);
            let mut uf = Partition::new(g.num_vertices());
            for e in g.edges() {
                if poset.le(&e.grade, &r) {
                    uf.union(e.ends[0], e.ends[1]);
                }
            }
            let mut label_of_root = vec![ABSENT; g.num_vertices()];
            let mut next = 0;
            let row = g
                .vertices()
                .iter()
                .enumerate()
                .map(|(v, vert)| {
                    if !poset.le(&vert.grade, &r) {
                        return ABSENT;
                    }
                    let root = uf.find(v);
                    if label_of_root[root] == ABSENT {
                        label_of_root[root] = next;
                        next += 1;
                    }
                    label_of_root[root]
                })
                .collect();
            labels.push(row);
            counts.push(next as usize);
        }
        ModuleSnapshot {
            grid: grid.clone(),
            labels,
            counts,
        }
    }

    pub fn grid(&self) -> &GradeGrid {
        &self.grid
    }

    /// Dimension at grid point `i`.
    pub fn dim(&self, i: usize) -> usize {
        self.counts[i]
    }

    /// Component label of each vertex at point `i`, `None` if not yet present.
    pub fn labels(&self, i: usize) -> Vec<Option<usize>> {
        self.labels[i]
            .iter()
            .map(|&l| (l != ABSENT).then_some(l as usize))
            .collect()
    }

    /// The map from components at `from` to components at `to`; requires `from <= to`.
    pub fn transition(&self, from: usize, to: usize) -> Vec<usize> {
        let mut image = vec![usize::MAX; self.counts[from]];
        for (v, &l) in self.labels[from].iter().enumerate() {
            if l != ABSENT && image[l as usize] == usize::MAX {
                let target = self.labels[to][v];
                assert!(
                    target != ABSENT,
                    "transition between incomparable grid points"
                );
                image[l as usize] = target as usize;
            }
        }
        image
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::two_edge_bigon;
    use crate::grade::Poset;

    fn dims(g: &FilteredGraph) -> Vec<usize> {
        let grid = GradeGrid::for_graph(g, 64).unwrap();
        h0_dimensions(g, &grid)
            .into_iter()
            .map(|(_, d)| d)
            .collect()
    }

    #[test]
    fn bigon_dimensions() {
        // grid order (0,0) (0,1) (1,0) (1,1)
        assert_eq!(dims(&two_edge_bigon()), vec![2, 1, 1, 1]);
        let g = two_edge_bigon();
        let grid = GradeGrid::for_graph(&g, 64).unwrap();
        let coker: Vec<usize> = coker_dimensions(&g, &grid, PrimeField::F3)
            .into_iter()
            .map(|(_, d)| d)
            .collect();
        assert_eq!(coker, vec![2, 1, 1, 1]);
    }

    #[test]
    fn trivial_graphs() {
        assert!(dims(&FilteredGraph::new(Poset::r2())).is_empty());
        let mut g = FilteredGraph::new(Poset::r2());
        g.add_vertex("v", Grade::xy(1, 1));
        g.add_vertex("w", Grade::xy(0, 2));
        // grid {0,1} x {1,2}: v present from (1,1), w from (0,2)
        assert_eq!(dims(&g), vec![0, 1, 1, 2]);
    }

    #[test]
    fn snapshot_transitions() {
        let g = two_edge_bigon();
        let grid = GradeGrid::for_graph(&g, 64).unwrap();
        let s = ModuleSnapshot::new(&g, &grid);
        assert_eq!(s.dim(0), 2);
        assert_eq!(s.transition(0, 3), vec![0, 0]);
        assert_eq!(s.transition(0, 1), vec![0, 0]);
        assert_eq!(s.labels(0), vec![Some(0), Some(1)]);
    }
}
