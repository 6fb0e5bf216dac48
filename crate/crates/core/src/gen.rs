//! Seeded random instances for tests, the oracle and benchmarks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grade::{FinitePoset, Grade, Poset};
use crate::graph::FilteredGraph;

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of a random graph with integer grades on `[0, grid)^n`.
#[derive(Clone, Copy, Debug)]
pub struct GraphParams {
    pub vertices: usize,
    pub edges: usize,
    /// Number of integer values per axis.
    pub grid: i64,
    /// Each edge coordinate is the endpoints' join plus up to this much, capped at the grid.
    pub jitter: i64,
    pub self_loops: bool,
}

impl GraphParams {
    pub fn small(vertices: usize, edges: usize, grid: i64) -> Self {
        GraphParams {
            vertices,
            edges,
            grid,
            jitter: 2,
            self_loops: true,
        }
    }
}

/// Random graph over R^n: uniform vertex grades, uniformly random endpoint pairs,
/// edge grade = join of the endpoints plus non-negative jitter.
pub fn random_rn_graph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    params: &GraphParams,
) -> FilteredGraph {
    let mut g = FilteredGraph::new(Poset::Rn(n));
    let mut coords: Vec<Vec<i64>> = Vec::with_capacity(params.vertices);
    for i in 0..params.vertices {
        let c: Vec<i64> = (0..n).map(|_| rng.random_range(0..params.grid)).collect();
        g.add_vertex(format!("v{i}"), Grade::coords(c.iter().copied()));
        coords.push(c);
    }
    if params.vertices == 0 {
        return g;
    }
    for i in 0..params.edges {
        let a = rng.random_range(0..params.vertices);
        let mut b = rng.random_range(0..params.vertices);
        if !params.self_loops && params.vertices > 1 {
            while b == a {
                b = rng.random_range(0..params.vertices);
            }
        }
        let c: Vec<i64> = (0..n)
            .map(|k| {
                let join = coords[a][k].max(coords[b][k]);
                (join + rng.random_range(0..=params.jitter))
                    .min(params.grid - 1)
                    .max(join)
            })
            .collect();
        g.add_edge(format!("e{i}"), a, b, Grade::coords(c));
    }
    g
}

pub fn random_r2_graph<R: Rng + ?Sized>(rng: &mut R, params: &GraphParams) -> FilteredGraph {
    random_rn_graph(rng, 2, params)
}

/// Random lattice: a union-closed family of subsets of a small ground set,
/// containing the empty set, ordered by inclusion. At most `max_elements` elements.
pub fn random_lattice<R: Rng + ?Sized>(rng: &mut R, max_elements: usize) -> FinitePoset {
    let ground = rng.random_range(2..=5u32);
    let mut family: Vec<u32> = vec![0];
    let mut candidates: Vec<u32> = (1..1u32 << ground).collect();
    candidates.shuffle(rng);
    for s in candidates {
        if family.contains(&s) {
            continue;
        }
        let mut closed = family.clone();
        let mut frontier = vec![s];
        while let Some(x) = frontier.pop() {
            if closed.contains(&x) {
                continue;
            }
            closed.push(x);
            for &y in closed.clone().iter() {
                let u = x | y;
                if !closed.contains(&u) {
                    frontier.push(u);
                }
            }
        }
        if closed.len() <= max_elements {
            family = closed;
        }
    }
    family.sort_by_key(|&s| (s.count_ones(), s));
    let rows = family
        .iter()
        .map(|&a| family.iter().map(|&b| a & !b == 0).collect())
        .collect();
    FinitePoset::new(rows).expect("inclusion is a partial order")
}

/// Random graph over a finite lattice: edge grade is the endpoints' join, or
/// with probability one half a random element above it.
pub fn random_poset_graph<R: Rng + ?Sized>(
    rng: &mut R,
    poset: Arc<FinitePoset>,
    vertices: usize,
    edges: usize,
) -> FilteredGraph {
    let size = poset.len();
    let mut g = FilteredGraph::new(Poset::Finite(poset.clone()));
    let mut el = Vec::with_capacity(vertices);
    for i in 0..vertices {
        let e = rng.random_range(0..size);
        g.add_vertex(format!("v{i}"), Grade::Element(e));
        el.push(e);
    }
    if vertices == 0 {
        return g;
    }
    for i in 0..edges {
        let (a, b) = (rng.random_range(0..vertices), rng.random_range(0..vertices));
        let join = poset.join(el[a], el[b]).expect("lattice");
        let grade = if rng.random_bool(0.5) {
            let above: Vec<usize> = (0..size).filter(|&x| poset.le(join, x)).collect();
            above[rng.random_range(0..above.len())]
        } else {
            join
        };
        g.add_edge(format!("e{i}"), a, b, Grade::Element(grade));
    }
    g
}

/// Benchmark instance with `edges` edges on `edges / 4` vertices; grades on a
/// `[0, vertices)^2` grid with jitter up to a sixteenth of the grid.
pub fn bench_graph(seed: u64, edges: usize) -> FilteredGraph {
    let vertices = (edges / 4).max(1);
    let grid = vertices as i64;
    let params = GraphParams {
        vertices,
        edges,
        grid,
        jitter: (grid / 16).max(1),
        self_loops: false,
    };
    random_r2_graph(&mut rng(seed), &params)
}

/// Random permutation of vertices and edges.
pub fn shuffled<R: Rng + ?Sized>(rng: &mut R, g: &FilteredGraph) -> FilteredGraph {
    let mut vs: Vec<usize> = (0..g.num_vertices()).collect();
    let mut es: Vec<usize> = (0..g.num_edges()).collect();
    vs.shuffle(rng);
    es.shuffle(rng);
    g.permuted(&vs, &es)
}
