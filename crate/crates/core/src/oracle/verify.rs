use std::fmt;

use super::koszul::koszul_betti_all;
use super::linalg::PrimeField;
use super::snapshot::h0_dimensions;
use super::GradeGrid;
use crate::grade::{Grade, Poset};
use crate::graph::FilteredGraph;
use crate::minpres::{presented_module_dimension, BettiTable, SparsePresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    /// Entries out of range, a row grade above its column, or a column that is not `{e1} - {e0}`.
    Malformed,
    /// The presented module has the wrong dimension at `grade`.
    Cokernel {
        grade: Grade,
        expected: usize,
        found: usize,
    },
    /// Generators (degree 0) or relations (degree 1) disagree with the oracle; `grade`
    /// is the smallest grade whose multiplicity differs.
    NotMinimal {
        degree: usize,
        grade: Grade,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::Malformed => write!(f, "malformed presentation matrix"),
            VerifyFailure::Cokernel {
                grade,
                expected,
                found,
            } => {
                write!(
                    f,
                    "cokernel dimension at {grade}: expected {expected}, found {found}"
                )
            }
            VerifyFailure::NotMinimal {
                degree,
                grade,
                expected,
                found,
            } => write!(
                f,
                "betti{degree} at {grade}: expected {expected}, found {found}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// Grid points checked.
    pub points: usize,
    /// Whether minimality was checked as well as the cokernel.
    pub minimality_checked: bool,
    pub failure: Option<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// First grade (in lexicographic order) whose multiplicity differs.
fn first_difference(expected: &BettiTable, found: &BettiTable) -> Option<(Grade, usize, usize)> {
    let (a, b) = (expected.sorted(), found.sorted());
    let mut grades: Vec<&Grade> = a.iter().chain(&b).collect();
    grades.sort();
    grades.dedup();
    grades.into_iter().find_map(|g| {
        let (x, y) = (
            a.iter().filter(|h| *h == g).count(),
            b.iter().filter(|h| *h == g).count(),
        );
        (x != y).then(|| (g.clone(), x, y))
    })
}

/// Check `p` against the oracle: cokernel dimensions at every grid point and,
/// over R^n with n <= 3, generator and relation grades against Koszul homology.
pub fn verify_presentation(
    g: &FilteredGraph,
    p: &SparsePresentation,
    grid: &GradeGrid,
) -> VerifyReport {
    let mut report = VerifyReport {
        points: grid.len(),
        minimality_checked: false,
        failure: None,
    };
    if !p.is_well_formed() {
        report.failure = Some(VerifyFailure::Malformed);
        return report;
    }
    for (r, expected) in h0_dimensions(g, grid) {
        let found = presented_module_dimension(p, &r);
        if found != expected {
            report.failure = Some(VerifyFailure::Cokernel {
                grade: r,
                expected,
                found,
            });
            return report;
        }
    }
    if let Poset::Rn(n) = g.poset() {
        if *n <= 3 {
            let tables = koszul_betti_all(g, grid, PrimeField::F2).expect("arity checked");
            report.minimality_checked = true;
            for (degree, found) in [&p.rows, &p.cols].into_iter().enumerate() {
                if let Some((grade, expected, found)) = first_difference(&tables[degree], found) {
                    report.failure = Some(VerifyFailure::NotMinimal {
                        degree,
                        grade,
                        expected,
                        found,
                    });
                    return report;
                }
            }
        }
    }
    report
}
