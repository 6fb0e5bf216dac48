//! Multigraded Betti numbers from Koszul homology.
//!
//! At grid index `k` the Koszul complex has `K_i = ⊕_{|S| = i} M(k - e_S)`,
//! where `k - e_S` steps one grid value down along every axis in `S` and the
//! module vanishes below the grid. The differential sends a basis element of
//! the `S` summand to `Σ_{j ∈ S} ±` its image in the `S \ {j}` summand, with
//! sign `(-1)^(position of j in S)`.

use super::linalg::{nullspace_mod_p, rank_reduced, PrimeField};
use super::snapshot::ModuleSnapshot;
use super::{GradeGrid, Index};
use crate::error::OracleError;
use crate::grade::Poset;
use crate::graph::FilteredGraph;
use crate::minpres::BettiTable;

const MAX_ARITY: usize = 3;

fn check(g: &FilteredGraph) -> Result<usize, OracleError> {
    match g.poset() {
        Poset::Rn(n) if *n <= MAX_ARITY => Ok(*n),
        _ => Err(OracleError::UnsupportedPoset),
    }
}

/// Grid point reached by stepping down along the axes in `mask`.
fn shifted(grid: &GradeGrid, k: &Index, mask: usize) -> Option<usize> {
    let mut idx = k.clone();
    for (axis, i) in idx.iter_mut().enumerate() {
        if mask >> axis & 1 == 1 {
            *i = i.checked_sub(1)?;
        }
    }
    Some(grid.flatten(&idx))
}

/// `[β_0, ..., β_n]` of H0 of `g` over `f`.
pub fn koszul_betti_all(
    g: &FilteredGraph,
    grid: &GradeGrid,
    f: PrimeField,
) -> Result<Vec<BettiTable>, OracleError> {
    let n = check(g)?;
    let snap = ModuleSnapshot::new(g, grid);
    let mut tables = vec![BettiTable::default(); n + 1];
    let subsets_of_size = |i: usize| (0..1usize << n).filter(move |m| m.count_ones() as usize == i);
    for flat in 0..grid.len() {
        let k = grid.unflatten(flat);
        // summands of K_i: (mask, grid point, offset)
        let mut blocks: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(n + 1);
        let mut dims = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut offset = 0;
            let mut b = Vec::new();
            for mask in subsets_of_size(i) {
                if let Some(pt) = shifted(grid, &k, mask) {
                    b.push((mask, pt, offset));
                    offset += snap.dim(pt);
                }
            }
            blocks.push(b);
            dims.push(offset);
        }
        // rank of d_i : K_i -> K_{i-1}, for i = 1..=n
        let mut rank = vec![0; n + 2];
        for i in 1..=n {
            if dims[i] == 0 || dims[i - 1] == 0 {
                continue;
            }
            let mut m = vec![vec![0u32; dims[i]]; dims[i - 1]];
            for &(mask, pt, off) in &blocks[i] {
                for (pos, axis) in (0..n).filter(|a| mask >> a & 1 == 1).enumerate() {
                    let sub = mask & !(1 << axis);
                    let &(_, tpt, toff) = blocks[i - 1]
                        .iter()
                        .find(|b| b.0 == sub)
                        .expect("faces of a present summand are present");
                    let sign = if pos % 2 == 0 { 1 } else { f.reduce(-1) };
                    for (c, t) in snap.transition(pt, tpt).into_iter().enumerate() {
                        m[toff + t][off + c] = (m[toff + t][off + c] + sign) % f.modulus();
                    }
                }
            }
            rank[i] = rank_reduced(m, dims[i], f);
        }
        let point = grid.point(flat);
        for i in 0..=n {
            let beta = dims[i] - rank[i] - rank[i + 1];
            for _ in 0..beta {
                tables[i].push(point.clone());
            }
        }
    }
    Ok(tables)
}

/// β_i of H0 of `g` over `f`; empty when `i` exceeds the number of parameters.
pub fn koszul_betti(
    g: &FilteredGraph,
    grid: &GradeGrid,
    f: PrimeField,
    i: usize,
) -> Result<BettiTable, OracleError> {
    let mut all = koszul_betti_all(g, grid, f)?;
    Ok(if i < all.len() {
        all.swap_remove(i)
    } else {
        BettiTable::default()
    })
}

/// β_0 of H1 = ker d1: at each point, the cycles not generated by cycles one step below.
pub fn koszul_betti_h1(
    g: &FilteredGraph,
    grid: &GradeGrid,
    f: PrimeField,
) -> Result<BettiTable, OracleError> {
    let n = check(g)?;
    let poset = g.poset();
    let ne = g.num_edges();
    // kernel basis at every point, as vectors over all edges
    let kernels: Vec<Vec<Vec<u32>>> = (0..grid.len())
        .map(|flat| {
            let r = grid.point(flat);
            let es: Vec<usize> = (0..ne)
                .filter(|&e| poset.le(&g.edges()[e].grade, &r))
                .collect();
            let rows: Vec<Vec<i64>> = (0..g.num_vertices())
                .map(|v| {
                    es.iter()
                        .map(|&e| {
                            let [a, b] = g.edges()[e].ends;
                            i64::from(b == v) - i64::from(a == v)
                        })
                        .collect()
                })
                .collect();
            nullspace_mod_p(&rows, es.len(), f)
                .into_iter()
                .map(|local| {
                    let mut full = vec![0; ne];
                    for (c, &e) in es.iter().enumerate() {
                        full[e] = local[c];
                    }
                    full
                })
                .collect()
        })
        .collect();
    let mut table = BettiTable::default();
    for flat in 0..grid.len() {
        let k = grid.unflatten(flat);
        let below: Vec<Vec<u32>> = (0..n)
            .filter_map(|axis| shifted(grid, &k, 1 << axis))
            .flat_map(|pt| kernels[pt].iter().cloned())
            .collect();
        let beta = kernels[flat].len() - rank_reduced(below, ne, f);
        let point = grid.point(flat);
        for _ in 0..beta {
            table.push(point.clone());
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::two_edge_bigon;
    use crate::grade::Grade;

    fn grid(g: &FilteredGraph) -> GradeGrid {
        GradeGrid::for_graph(g, 64).unwrap()
    }

    #[test]
    fn bigon_tables() {
        let g = two_edge_bigon();
        for f in [PrimeField::F2, PrimeField::F3, PrimeField::F5] {
            let t = koszul_betti_all(&g, &grid(&g), f).unwrap();
            assert_eq!(t[0].0, vec![Grade::xy(0, 0), Grade::xy(0, 0)]);
            assert_eq!(t[1].0, vec![Grade::xy(0, 1), Grade::xy(1, 0)]);
            assert_eq!(t[2].0, vec![Grade::xy(1, 1)]);
            assert!(koszul_betti(&g, &grid(&g), f, 3).unwrap().is_empty());
            assert_eq!(
                koszul_betti_h1(&g, &grid(&g), f).unwrap().0,
                vec![Grade::xy(1, 1)]
            );
        }
    }

    #[test]
    fn projective() {
        let mut g = FilteredGraph::new(Poset::r2());
        g.add_vertex("v", Grade::xy(2, 3));
        let t = koszul_betti_all(&g, &grid(&g), PrimeField::F2).unwrap();
        assert_eq!(t[0].0, vec![Grade::xy(2, 3)]);
        assert!(t[1].is_empty() && t[2].is_empty());
    }

    #[test]
    fn forest_has_no_cycles() {
        let mut g = FilteredGraph::new(Poset::r2());
        g.add_vertex("a", Grade::xy(0, 0));
        g.add_vertex("b", Grade::xy(1, 0));
        g.add_vertex("c", Grade::xy(0, 1));
        g.add_edge("ab", 0, 1, Grade::xy(1, 1));
        g.add_edge("bc", 1, 2, Grade::xy(2, 1));
        assert!(koszul_betti_h1(&g, &grid(&g), PrimeField::F3)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn deletable_edge_is_a_cycle_generator() {
        let mut g = FilteredGraph::new(Poset::r2());
        g.add_vertex("a", Grade::xy(0, 0));
        g.add_vertex("b", Grade::xy(0, 0));
        g.add_edge("x", 0, 1, Grade::xy(1, 1));
        g.add_edge("y", 0, 1, Grade::xy(2, 3));
        let h1 = koszul_betti_h1(&g, &grid(&g), PrimeField::F2).unwrap();
        assert_eq!(h1.0, vec![Grade::xy(2, 3)]);
    }

    #[test]
    fn three_parameters() {
        // a vertex pair joined at two incomparable grades in R^3
        let mut g = FilteredGraph::new(Poset::Rn(3));
        let z = Grade::coords([0, 0, 0]);
        g.add_vertex("u", z.clone());
        g.add_vertex("v", z);
        g.add_edge("a", 0, 1, Grade::coords([1, 0, 0]));
        g.add_edge("b", 0, 1, Grade::coords([0, 1, 0]));
        g.add_edge("c", 0, 1, Grade::coords([0, 0, 1]));
        let t = koszul_betti_all(&g, &grid(&g), PrimeField::F2).unwrap();
        assert_eq!(t[0].len(), 2);
        assert_eq!(t[1].len(), 3);
        assert_eq!(t[2].len(), 3);
        assert_eq!(t[3].0, vec![Grade::coords([1, 1, 1])]);
    }

    #[test]
    fn finite_posets_are_rejected() {
        let p = crate::grade::FinitePoset::new(vec![vec![true]]).unwrap();
        let g = FilteredGraph::new(Poset::Finite(std::sync::Arc::new(p)));
        assert!(matches!(
            koszul_betti_all(&g, &grid(&g), PrimeField::F2),
            Err(OracleError::UnsupportedPoset)
        ));
    }
}
