//! Grades and the posets they live in.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::GradeError;
use crate::scalar::Rational;

pub type Coords = SmallVec<[Rational; 2]>;

/// A point of the indexing poset.
///
/// The derived `Ord` is a storage order (used for sorting multisets); it agrees
/// with the lexicographic order on coordinate grades.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grade {
    Coords(Coords),
    Element(usize),
}

impl Grade {
    pub fn coords<I, R>(values: I) -> Self
    where
        I: IntoIterator<Item = R>,
        R: Into<Rational>,
    {
        Grade::Coords(values.into_iter().map(Into::into).collect())
    }

    /// Integer point of R^2, mostly for tests and generators.
    pub fn xy(x: i64, y: i64) -> Self {
        Grade::coords([x, y])
    }

    pub fn as_coords(&self) -> Option<&[Rational]> {
        match self {
            Grade::Coords(c) => Some(c),
            Grade::Element(_) => None,
        }
    }

    pub fn x(&self) -> &Rational {
        &self.as_coords().expect("coordinate grade")[0]
    }

    pub fn y(&self) -> &Rational {
        &self.as_coords().expect("coordinate grade")[1]
    }
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Coords(c) => {
                write!(f, "(")?;
                for (i, v) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", v)?;
                }
                write!(f, ")")
            }
            Grade::Element(i) => write!(f, "#{}", i),
        }
    }
}

/// Space-separated canonical decimals, or the element index for finite posets.
impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Coords(c) => {
                for (i, v) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", v)?;
                }
                Ok(())
            }
            Grade::Element(i) => write!(f, "{}", i),
        }
    }
}

/// A finite poset given by its full `<=` relation.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    size: usize,
    leq: Vec<bool>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinitePoset({})", self.size)
    }
}

impl FinitePoset {
    /// `rows[i][j]` is true iff element `i <= j`. The relation is validated.
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self, GradeError> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(GradeError::NotAPartialOrder(
                "relation matrix is not square".into(),
            ));
        }
        let leq: Vec<bool> = rows.into_iter().flatten().collect();
        let poset = FinitePoset { size, leq };
        for i in 0..size {
            if !poset.le(i, i) {
                return Err(GradeError::NotAPartialOrder(format!(
                    "{} <= {} missing",
                    i, i
                )));
            }
            for j in 0..size {
                if i != j && poset.le(i, j) && poset.le(j, i) {
                    return Err(GradeError::NotAPartialOrder(format!(
                        "{} and {} are mutually comparable",
                        i, j
                    )));
                }
                for k in 0..size {
                    if poset.le(i, j) && poset.le(j, k) && !poset.le(i, k) {
                        return Err(GradeError::NotAPartialOrder(format!(
                            "{} <= {} <= {} but not {} <= {}",
                            i, j, k, i, k
                        )));
                    }
                }
            }
        }
        Ok(poset)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    /// Least upper bound of two elements, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.size)
            .filter(|&c| self.le(a, c) && self.le(b, c))
            .collect();
        uppers
            .iter()
            .copied()
            .find(|&u| uppers.iter().all(|&c| self.le(u, c)))
    }

    /// Number of elements strictly below `i`; sorting by it gives a linear extension.
    pub fn height(&self, i: usize) -> usize {
        (0..self.size).filter(|&j| j != i && self.le(j, i)).count()
    }
}

/// The poset descriptor shared by every grade of one computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Poset {
    /// R^n with the product order.
    Rn(usize),
    Finite(Arc<FinitePoset>),
}

impl Poset {
    pub fn r2() -> Self {
        Poset::Rn(2)
    }

    pub fn is_r2(&self) -> bool {
        matches!(self, Poset::Rn(2))
    }

    pub fn contains(&self, g: &Grade) -> bool {
        match (self, g) {
            (Poset::Rn(n), Grade::Coords(c)) => c.len() == *n,
            (Poset::Finite(p), Grade::Element(i)) => *i < p.len(),
            _ => false,
        }
    }

    fn check(&self, a: &Grade, b: &Grade) -> Result<(), GradeError> {
        if self.contains(a) && self.contains(b) {
            Ok(())
        } else {
            Err(GradeError::DescriptorMismatch)
        }
    }

    pub fn leq(&self, a: &Grade, b: &Grade) -> Result<bool, GradeError> {
        self.check(a, b)?;
        Ok(self.le(a, b))
    }

    /// Unchecked `a <= b`; both grades must belong to this poset.
    #[inline]
    pub fn le(&self, a: &Grade, b: &Grade) -> bool {
        match (self, a, b) {
            (Poset::Finite(p), Grade::Element(i), Grade::Element(j)) => p.le(*i, *j),
            (_, Grade::Coords(x), Grade::Coords(y)) => x.iter().zip(y.iter()).all(|(s, t)| s <= t),
            _ => panic!("grade does not belong to poset {:?}", self),
        }
    }

    /// `a < b` in the partial order.
    pub fn lt(&self, a: &Grade, b: &Grade) -> bool {
        a != b && self.le(a, b)
    }

    pub fn join(&self, a: &Grade, b: &Grade) -> Result<Grade, GradeError> {
        self.check(a, b)?;
        match (self, a, b) {
            (Poset::Finite(p), Grade::Element(i), Grade::Element(j)) => p
                .join(*i, *j)
                .map(Grade::Element)
                .ok_or(GradeError::NoJoin(*i, *j)),
            (_, Grade::Coords(x), Grade::Coords(y)) => Ok(Grade::Coords(
                x.iter()
                    .zip(y.iter())
                    .map(|(s, t)| Rational::max_of(s, t).clone())
                    .collect(),
            )),
            _ => unreachable!(),
        }
    }
}

/// Lexicographic comparison of coordinate grades.
pub fn lex_compare(a: &Grade, b: &Grade) -> Result<Ordering, GradeError> {
    match (a, b) {
        (Grade::Coords(x), Grade::Coords(y)) if x.len() == y.len() => Ok(x.cmp(y)),
        (Grade::Coords(_), Grade::Coords(_)) => Err(GradeError::DescriptorMismatch),
        _ => Err(GradeError::UnsupportedOrder),
    }
}

/// Sort a multiset of grades into a canonical order.
pub fn sorted(grades: &[Grade]) -> Vec<Grade> {
    let mut v = grades.to_vec();
    v.sort();
    v
}
