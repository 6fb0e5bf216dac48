//! Dynamic dendrograms on top of mergeable trees.
//!
//! A mergeable forest stores rooted trees whose labels increase towards the
//! roots and supports `insert`, nearest-common-ancestor queries, and `merge`,
//! which interleaves the root paths of two nodes in label order. Vertices are
//! leaves labelled `-inf`; adding an edge at time `t` inserts a fresh node with
//! label `t` and merges both endpoints' root paths through it. The time at which
//! two vertices merge is then the label of their nearest common ancestor.
//!
//! Labels are compared together with the node id, so the order is strict and a
//! node inserted later sits above earlier nodes carrying the same label.

mod link_cut;
mod naive;

use std::collections::HashMap;
use std::fmt::{Debug, Display, Write};
use std::hash::Hash;

pub use link_cut::{ForestLabel, LinkCutForest};
pub use naive::NaiveForest;

use crate::error::DendrogramError;
use crate::partition::Partition;
use crate::scalar::Extended;

pub type NodeId = usize;

/// Heap-ordered forest with order-preserving path merges.
pub trait MergeableForest<T: Ord + Clone> {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Add an isolated node; ids are handed out consecutively from 0.
    fn insert(&mut self, label: Extended<T>) -> NodeId;

    fn label(&self, n: NodeId) -> Extended<T>;

    /// Capacity hint for `additional` more nodes.
    fn reserve(&mut self, _additional: usize) {}

    /// Nearest common ancestor, or `None` if the nodes lie in different trees.
    fn nca(&mut self, a: NodeId, b: NodeId) -> Option<NodeId>;

    /// Nearest common ancestor of two nodes known to share a tree.
    fn nca_connected(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.nca(a, b).expect("nodes share a tree")
    }

    /// Merge the paths from `a` and `b` to their roots into one sorted path.
    fn merge(&mut self, a: NodeId, b: NodeId);

    fn parent(&mut self, n: NodeId) -> Option<NodeId>;

    /// Strict node order: by label, then by id.
    fn precedes(&self, a: NodeId, b: NodeId) -> bool;

    /// Full scan of the heap order.
    fn heap_ordered(&mut self) -> bool {
        (0..self.len()).all(|n| match self.parent(n) {
            Some(p) => self.precedes(n, p),
            None => true,
        })
    }
}

/// Which mergeable-forest implementation to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    #[default]
    Fast,
    Naive,
}

/// Dynamic dendrogram on vertices `0..n`.
pub struct Dendrogram<T, F> {
    forest: F,
    vertices: usize,
    components: Partition,
    _label: std::marker::PhantomData<T>,
}

impl<T: Ord + Clone, F: MergeableForest<T> + Default> Dendrogram<T, F> {
    pub fn with_vertices(n: usize) -> Self {
        Self::with_capacity(n, 0)
    }

    /// Like `with_vertices`, with room for `merges` calls to `merge_at_time`.
    pub fn with_capacity(n: usize, merges: usize) -> Self {
        let mut forest = F::default();
        forest.reserve(n + merges);
        for _ in 0..n {
            forest.insert(Extended::NegInf);
        }
        Dendrogram {
            forest,
            vertices: n,
            components: Partition::new(n),
            _label: std::marker::PhantomData,
        }
    }
}

impl<T: Ord + Clone, F: MergeableForest<T>> Dendrogram<T, F> {
    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    /// Smallest time at which `v` and `w` are connected; `+inf` if never.
    pub fn time_of_merge(&mut self, v: usize, w: usize) -> Extended<T> {
        if !self.components.same(v, w) {
            return Extended::PosInf;
        }
        let a = self.forest.nca_connected(v, w);
        self.forest.label(a)
    }

    /// Record an edge between `v` and `w` appearing at time `t`.
    pub fn merge_at_time(&mut self, v: usize, w: usize, t: T) {
        self.components.union(v, w);
        let h = self.forest.insert(Extended::Finite(t));
        self.forest.merge(v, h);
        self.forest.merge(w, h);
    }

    pub fn forest(&mut self) -> &mut F {
        &mut self.forest
    }
}

impl<T: Ord + Clone + Display, F: MergeableForest<T>> Dendrogram<T, F> {
    /// One line per node: `<node> <parent or -> <label>`.
    pub fn dump(&mut self) -> String {
        let mut out = String::new();
        for n in 0..self.forest.len() {
            let parent = match self.forest.parent(n) {
                Some(p) => p.to_string(),
                None => "-".to_string(),
            };
            let _ = writeln!(out, "{} {} {}", n, parent, self.forest.label(n));
        }
        out
    }
}

/// Dynamic dendrogram addressed by arbitrary vertex identifiers.
pub struct DynamicDendrogram<K, T, F> {
    inner: Dendrogram<T, F>,
    index: HashMap<K, usize>,
}

impl<K, T, F> DynamicDendrogram<K, T, F>
where
    K: Hash + Eq + Clone + Debug,
    T: Ord + Clone,
    F: MergeableForest<T> + Default,
{
    pub fn new<I: IntoIterator<Item = K>>(ids: I) -> Result<Self, DendrogramError> {
        let mut index = HashMap::new();
        for id in ids {
            let next = index.len();
            if index.insert(id.clone(), next).is_some() {
                return Err(DendrogramError::Duplicate(format!("{:?}", id)));
            }
        }
        Ok(DynamicDendrogram {
            inner: Dendrogram::with_vertices(index.len()),
            index,
        })
    }

    fn lookup(&self, id: &K) -> Result<usize, DendrogramError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| DendrogramError::MissingNode(format!("{:?}", id)))
    }

    pub fn time_of_merge(&mut self, v: &K, w: &K) -> Result<Extended<T>, DendrogramError> {
        let (v, w) = (self.lookup(v)?, self.lookup(w)?);
        Ok(self.inner.time_of_merge(v, w))
    }

    pub fn merge_at_time(&mut self, v: &K, w: &K, t: T) -> Result<(), DendrogramError> {
        let (v, w) = (self.lookup(v)?, self.lookup(w)?);
        self.inner.merge_at_time(v, w, t);
        Ok(())
    }

    pub fn inner(&mut self) -> &mut Dendrogram<T, F> {
        &mut self.inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Fast = DynamicDendrogram<&'static str, Rational, LinkCutForest<Rational>>;
    type Slow = DynamicDendrogram<&'static str, Rational, NaiveForest<Rational>>;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn fin(n: i64) -> Extended<Rational> {
        Extended::Finite(q(n))
    }

    macro_rules! both_backends {
        ($name:ident, $body:expr) => {
            mod $name {
                use super::*;
                #[test]
                fn fast() {
                    ($body)(|ids: &[&'static str]| -> Box<dyn Api> {
                        Box::new(Fast::new(ids.to_vec()).unwrap())
                    });
                }
                #[test]
                fn naive() {
                    ($body)(|ids: &[&'static str]| -> Box<dyn Api> {
                        Box::new(Slow::new(ids.to_vec()).unwrap())
                    });
                }
            }
        };
    }

    trait Api {
        fn tom(&mut self, v: &'static str, w: &'static str) -> Extended<Rational>;
        fn mat(&mut self, v: &'static str, w: &'static str, t: i64);
    }

    impl<F: MergeableForest<Rational> + Default> Api for DynamicDendrogram<&'static str, Rational, F> {
        fn tom(&mut self, v: &'static str, w: &'static str) -> Extended<Rational> {
            self.time_of_merge(&v, &w).unwrap()
        }
        fn mat(&mut self, v: &'static str, w: &'static str, t: i64) {
            self.merge_at_time(&v, &w, q(t)).unwrap()
        }
    }

    both_backends!(fresh, |make: fn(&[&'static str]) -> Box<dyn Api>| {
        let mut d = make(&["u", "v"]);
        assert_eq!(d.tom("u", "v"), Extended::PosInf);
        assert_eq!(d.tom("u", "u"), Extended::NegInf);
        let _ = make(&[]);
    });

    both_backends!(single_merge, |make: fn(&[&'static str]) -> Box<dyn Api>| {
        let mut d = make(&["u", "v"]);
        d.mat("u", "v", 0);
        assert_eq!(d.tom("u", "v"), fin(0));
        let mut d = make(&["u", "v"]);
        d.mat("u", "v", 3);
        assert_eq!(d.tom("u", "v"), fin(3));
    });

    both_backends!(earlier_merge_wins, |make: fn(
        &[&'static str],
    ) -> Box<dyn Api>| {
        let mut d = make(&["u", "v"]);
        d.mat("u", "v", 3);
        d.mat("u", "v", 1);
        assert_eq!(d.tom("u", "v"), fin(1));
    });

    both_backends!(ultrametric_chain, |make: fn(
        &[&'static str],
    ) -> Box<dyn Api>| {
        let mut d = make(&["u", "v", "w"]);
        d.mat("u", "v", 1);
        d.mat("v", "w", 2);
        assert_eq!(d.tom("u", "w"), fin(2));
        assert_eq!(d.tom("u", "v"), fin(1));
    });

    both_backends!(self_merge, |make: fn(&[&'static str]) -> Box<dyn Api>| {
        let mut d = make(&["u", "v"]);
        d.mat("u", "v", 2);
        d.mat("u", "u", 5);
        assert_eq!(d.tom("u", "v"), fin(2));
        assert_eq!(d.tom("u", "u"), Extended::NegInf);
    });

    both_backends!(bigon_sweep, |make: fn(&[&'static str]) -> Box<dyn Api>| {
        // edge a at (0,1) merges x,y at time 1 in stripe x=0; edge b at (1,0) then sees 1
        let mut d = make(&["x", "y"]);
        d.mat("x", "y", 1);
        assert_eq!(d.tom("x", "y"), fin(1));
    });

    #[test]
    fn errors() {
        assert!(matches!(
            Fast::new(vec!["a", "a"]),
            Err(DendrogramError::Duplicate(_))
        ));
        let mut d = Fast::new(vec!["a"]).unwrap();
        assert!(matches!(
            d.time_of_merge(&"a", &"b"),
            Err(DendrogramError::MissingNode(_))
        ));
        assert!(matches!(
            d.merge_at_time(&"b", &"a", q(0)),
            Err(DendrogramError::MissingNode(_))
        ));
    }

    #[test]
    fn dump_lists_every_node() {
        let mut d: Dendrogram<i64, NaiveForest<i64>> = Dendrogram::with_vertices(2);
        d.merge_at_time(0, 1, 4);
        assert_eq!(d.dump(), "0 2 -inf\n1 2 -inf\n2 - 4\n");
    }
}
