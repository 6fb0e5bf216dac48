//! Brute-force certifier on the finite grade grid.
//!
//! Nothing here shares code with the collapse, deletion or sweep algorithms:
//! H0 is recomputed pointwise by union-find, ranks come from dense Gaussian
//! elimination over a small prime field, and Betti numbers are read off the
//! Koszul complex of the module of components.

mod koszul;
mod linalg;
mod snapshot;
mod verify;

use std::sync::Arc;

use smallvec::SmallVec;

pub use koszul::{koszul_betti, koszul_betti_all, koszul_betti_h1};
pub use linalg::{nullspace_mod_p, rank_mod_p, PrimeField};
pub use snapshot::{coker_dimensions, h0_dimensions, ModuleSnapshot};
pub use verify::{verify_presentation, VerifyFailure, VerifyReport};

use crate::error::OracleError;
use crate::grade::{FinitePoset, Grade, Poset};
use crate::graph::FilteredGraph;
use crate::scalar::Rational;

pub(crate) type Index = SmallVec<[usize; 3]>;

#[derive(Clone, Debug)]
enum Carrier {
    Product(Vec<Vec<Rational>>),
    Finite(Arc<FinitePoset>),
}

/// Finite set of grades on which the oracle evaluates modules.
///
/// Over R^n this is the product of the distinct coordinate values on each axis,
/// enumerated in lexicographic order; over a finite poset it is every element.
#[derive(Clone, Debug)]
pub struct GradeGrid {
    carrier: Carrier,
    len: usize,
}

impl GradeGrid {
    pub const DEFAULT_CAP: usize = 64;

    /// Grid spanned by the grades of `g`.
    pub fn for_graph(g: &FilteredGraph, cap: usize) -> Result<Self, OracleError> {
        let grades = g
            .vertices()
            .iter()
            .map(|v| &v.grade)
            .chain(g.edges().iter().map(|e| &e.grade));
        Self::from_grades(g.poset(), grades, cap)
    }

    pub fn from_grades<'a, I>(poset: &Poset, grades: I, cap: usize) -> Result<Self, OracleError>
    where
        I: IntoIterator<Item = &'a Grade>,
    {
        match poset {
            Poset::Finite(p) => Ok(GradeGrid {
                len: p.len(),
                carrier: Carrier::Finite(p.clone()),
            }),
            Poset::Rn(n) => {
                let mut axes = vec![Vec::new(); *n];
                for g in grades {
                    let c = g.as_coords().expect("coordinate grade");
                    for (axis, x) in axes.iter_mut().zip(c) {
                        axis.push(x.clone());
                    }
                }
                for axis in &mut axes {
                    axis.sort();
                    axis.dedup();
                    if axis.len() > cap {
                        return Err(OracleError::GridTooLarge {
                            size: axis.len(),
                            cap,
                        });
                    }
                }
                Ok(Self::from_axes(axes))
            }
        }
    }

    /// Product grid from per-axis values (sorted and deduplicated here).
    pub fn from_axes(mut axes: Vec<Vec<Rational>>) -> Self {
        for axis in &mut axes {
            axis.sort();
            axis.dedup();
        }
        let len = if axes.is_empty() {
            0
        } else {
            axes.iter().map(Vec::len).product()
        };
        GradeGrid {
            carrier: Carrier::Product(axes),
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn poset(&self) -> Poset {
        match &self.carrier {
            Carrier::Product(axes) => Poset::Rn(axes.len()),
            Carrier::Finite(p) => Poset::Finite(p.clone()),
        }
    }

    /// Values along each axis; `None` for a finite poset.
    pub fn axes(&self) -> Option<&[Vec<Rational>]> {
        match &self.carrier {
            Carrier::Product(axes) => Some(axes),
            Carrier::Finite(_) => None,
        }
    }

    pub fn shape(&self) -> Vec<usize> {
        match &self.carrier {
            Carrier::Product(axes) => axes.iter().map(Vec::len).collect(),
            Carrier::Finite(p) => vec![p.len()],
        }
    }

    pub(crate) fn unflatten(&self, mut flat: usize) -> Index {
        let shape = self.shape();
        let mut idx: Index = SmallVec::from_elem(0, shape.len());
        for (i, &m) in shape.iter().enumerate().rev() {
            idx[i] = flat % m;
            flat /= m;
        }
        idx
    }

    pub(crate) fn flatten(&self, idx: &[usize]) -> usize {
        self.shape()
            .iter()
            .zip(idx)
            .fold(0, |acc, (&m, &i)| acc * m + i)
    }

    pub fn point(&self, flat: usize) -> Grade {
        match &self.carrier {
            Carrier::Product(axes) => {
                let idx = self.unflatten(flat);
                Grade::Coords(axes.iter().zip(&idx).map(|(a, &i)| a[i].clone()).collect())
            }
            Carrier::Finite(_) => Grade::Element(flat),
        }
    }

    pub fn points(&self) -> Vec<Grade> {
        (0..self.len).map(|i| self.point(i)).collect()
    }

    /// The flat index of `g` if it is a grid point.
    pub fn locate(&self, g: &Grade) -> Option<usize> {
        match (&self.carrier, g) {
            (Carrier::Product(axes), Grade::Coords(c)) if c.len() == axes.len() => {
                let idx: Option<Index> = axes
                    .iter()
                    .zip(c)
                    .map(|(a, x)| a.binary_search(x).ok())
                    .collect();
                idx.map(|i| self.flatten(&i))
            }
            (Carrier::Finite(p), Grade::Element(e)) if *e < p.len() => Some(*e),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::two_edge_bigon;

    #[test]
    fn grid_of_bigon() {
        let grid = GradeGrid::for_graph(&two_edge_bigon(), 64).unwrap();
        assert_eq!(grid.shape(), vec![2, 2]);
        assert_eq!(
            grid.points(),
            vec![
                Grade::xy(0, 0),
                Grade::xy(0, 1),
                Grade::xy(1, 0),
                Grade::xy(1, 1)
            ]
        );
        assert_eq!(grid.locate(&Grade::xy(1, 0)), Some(2));
        assert_eq!(grid.locate(&Grade::xy(2, 0)), None);
        for i in 0..grid.len() {
            assert_eq!(grid.flatten(&grid.unflatten(i)), i);
        }
    }

    #[test]
    fn grid_cap() {
        let mut g = FilteredGraph::new(Poset::r2());
        for i in 0..5 {
            g.add_vertex(format!("v{i}"), Grade::xy(i, 0));
        }
        assert!(matches!(
            GradeGrid::for_graph(&g, 4),
            Err(OracleError::GridTooLarge { size: 5, cap: 4 })
        ));
        assert_eq!(GradeGrid::for_graph(&g, 5).unwrap().len(), 5);
    }
}
