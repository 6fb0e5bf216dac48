//! Mergeable trees on a self-adjusting link-cut forest.
//!
//! Each preferred path is a splay tree ordered by depth (left = towards the
//! root). Because labels increase towards the root, the nodes of an accessed
//! root path are also sorted by label, which lets a merge find the end of each
//! interleaved segment by a plain binary search in the splay tree.
//!
//! A merge walks up both root paths together. With `a` the current lower node
//! and `b` the other one, the maximal run of `a`'s path below `b` is cut off at
//! its top node `z` and hung under `b`; the walk then continues from `b` and the
//! old parent of `z`. It stops when one node becomes an ancestor of the other.

use super::{MergeableForest, NodeId};
use crate::scalar::{Extended, Rational};

const NIL: u32 = u32::MAX;

/// Labels as stored inside the link-cut nodes. Small integer times pack into
/// the same four bytes as the links, which keeps a node in a quarter cache line.
pub trait ForestLabel: Ord + Clone {
    type Packed: Ord + Clone;
    fn pack(label: Extended<Self>) -> Self::Packed;
    fn unpack(packed: &Self::Packed) -> Extended<Self>;
}

impl ForestLabel for u32 {
    type Packed = u32;

    fn pack(label: Extended<u32>) -> u32 {
        match label {
            Extended::NegInf => 0,
            Extended::Finite(t) => {
                assert!(t < u32::MAX - 1, "time out of range");
                t + 1
            }
            Extended::PosInf => u32::MAX,
        }
    }

    fn unpack(&p: &u32) -> Extended<u32> {
        match p {
            0 => Extended::NegInf,
            u32::MAX => Extended::PosInf,
            t => Extended::Finite(t - 1),
        }
    }
}

macro_rules! unpacked_label {
    ($($t:ty),*) => {$(
        impl ForestLabel for $t {
            type Packed = Extended<$t>;

            fn pack(label: Extended<$t>) -> Self::Packed {
                label
            }

            fn unpack(p: &Self::Packed) -> Extended<$t> {
                p.clone()
            }
        }
    )*};
}

unpacked_label!(i32, i64, u64, Rational);

#[derive(Clone, Debug)]
struct Node<P> {
    left: u32,
    right: u32,
    // splay parent, or path-parent when the node is the root of its splay tree
    up: u32,
    label: P,
}

#[derive(Clone, Debug)]
pub struct LinkCutForest<T: ForestLabel> {
    nodes: Vec<Node<T::Packed>>,
}

impl<T: ForestLabel> Default for LinkCutForest<T> {
    fn default() -> Self {
        LinkCutForest { nodes: Vec::new() }
    }
}

impl<T: ForestLabel> LinkCutForest<T> {
    #[inline]
    fn key_le(&self, a: usize, b: usize) -> bool {
        (&self.nodes[a].label, a) <= (&self.nodes[b].label, b)
    }

    #[inline]
    fn is_splay_root(&self, x: usize) -> bool {
        let p = self.nodes[x].up;
        p == NIL
            || (self.nodes[p as usize].left != x as u32 && self.nodes[p as usize].right != x as u32)
    }

    fn rotate(&mut self, x: usize) {
        let p = self.nodes[x].up as usize;
        let g = self.nodes[p].up;
        let p_was_root = self.is_splay_root(p);
        if self.nodes[p].left == x as u32 {
            let b = self.nodes[x].right;
            self.nodes[p].left = b;
            if b != NIL {
                self.nodes[b as usize].up = p as u32;
            }
            self.nodes[x].right = p as u32;
        } else {
            let b = self.nodes[x].left;
            self.nodes[p].right = b;
            if b != NIL {
                self.nodes[b as usize].up = p as u32;
            }
            self.nodes[x].left = p as u32;
        }
        self.nodes[p].up = x as u32;
        self.nodes[x].up = g;
        if !p_was_root {
            let g = g as usize;
            if self.nodes[g].left == p as u32 {
                self.nodes[g].left = x as u32;
            } else {
                self.nodes[g].right = x as u32;
            }
        }
    }

    fn splay(&mut self, x: usize) {
        while !self.is_splay_root(x) {
            let p = self.nodes[x].up as usize;
            if !self.is_splay_root(p) {
                let g = self.nodes[p].up as usize;
                let zig_zig = (self.nodes[g].left == p as u32) == (self.nodes[p].left == x as u32);
                if zig_zig {
                    self.rotate(p);
                } else {
                    self.rotate(x);
                }
            }
            self.rotate(x);
        }
    }

    /// Make the root-to-`x` path preferred, with `x` at the root of its splay tree.
    /// Returns the last node at which the path was spliced.
    fn access(&mut self, x: usize) -> usize {
        let mut last = NIL;
        let mut y = x as u32;
        let mut joined = x;
        while y != NIL {
            let yu = y as usize;
            self.splay(yu);
            self.nodes[yu].right = last;
            last = y;
            joined = yu;
            y = self.nodes[yu].up;
        }
        self.splay(x);
        joined
    }

    fn root_of(&mut self, x: usize) -> usize {
        self.access(x);
        let mut r = x;
        while self.nodes[r].left != NIL {
            r = self.nodes[r].left as usize;
        }
        self.splay(r);
        r
    }

    fn parent_of(&mut self, x: usize) -> Option<usize> {
        self.access(x);
        let mut p = self.nodes[x].left;
        if p == NIL {
            return None;
        }
        while self.nodes[p as usize].right != NIL {
            p = self.nodes[p as usize].right;
        }
        self.splay(p as usize);
        Some(p as usize)
    }

    /// Detach `x` from its parent, leaving `x` alone in its splay tree; returns the old parent.
    fn cut_parent(&mut self, x: usize) -> Option<usize> {
        self.access(x);
        let l = self.nodes[x].left;
        if l == NIL {
            return None;
        }
        self.nodes[l as usize].up = NIL;
        self.nodes[x].left = NIL;
        let mut p = l;
        while self.nodes[p as usize].right != NIL {
            p = self.nodes[p as usize].right;
        }
        self.splay(p as usize);
        Some(p as usize)
    }

    /// The node closest to the root on `x`'s root path whose key is `<= bound`'s.
    /// Requires `key(x) <= key(bound)`.
    fn topmost_below(&mut self, x: usize, bound: usize) -> usize {
        self.access(x);
        let mut n = x;
        let mut best = x;
        loop {
            if self.key_le(n, bound) {
                best = n;
                match self.nodes[n].left {
                    NIL => break,
                    l => n = l as usize,
                }
            } else {
                match self.nodes[n].right {
                    NIL => break,
                    r => n = r as usize,
                }
            }
        }
        self.splay(n);
        self.splay(best);
        best
    }
}

impl<T: ForestLabel> MergeableForest<T> for LinkCutForest<T> {
    fn len(&self) -> usize {
        self.nodes.len()
    }

    fn reserve(&mut self, additional: usize) {
        self.nodes.reserve(additional);
    }

    fn insert(&mut self, label: Extended<T>) -> NodeId {
        let id = self.nodes.len();
        assert!(id < NIL as usize, "forest is full");
        self.nodes.push(Node {
            left: NIL,
            right: NIL,
            up: NIL,
            label: T::pack(label),
        });
        id
    }

    fn label(&self, n: NodeId) -> Extended<T> {
        T::unpack(&self.nodes[n].label)
    }

    fn precedes(&self, a: NodeId, b: NodeId) -> bool {
        (&self.nodes[a].label, a) < (&self.nodes[b].label, b)
    }

    fn nca(&mut self, a: NodeId, b: NodeId) -> Option<NodeId> {
        if a == b {
            return Some(a);
        }
        if self.root_of(a) != self.root_of(b) {
            return None;
        }
        Some(self.nca_connected(a, b))
    }

    fn nca_connected(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.access(a);
        self.access(b)
    }

    fn merge(&mut self, a: NodeId, b: NodeId) {
        let (mut a, mut b) = (a, b);
        loop {
            if a == b {
                return;
            }
            if !self.precedes(a, b) {
                std::mem::swap(&mut a, &mut b);
            }
            // a < b; the run of a's path below b ends at b itself iff b is an ancestor of a
            let z = self.topmost_below(a, b);
            if z == b {
                return;
            }
            let p = self.cut_parent(z);
            self.nodes[z].up = b as u32;
            match p {
                None => return,
                Some(p) => {
                    a = b;
                    b = p;
                }
            }
        }
    }

    fn parent(&mut self, n: NodeId) -> Option<NodeId> {
        self.parent_of(n)
    }
}

#[cfg(test)]
mod tests {
    use super::super::NaiveForest;
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn parents<F: MergeableForest<i32>>(f: &mut F) -> Vec<Option<NodeId>> {
        (0..f.len()).map(|n| f.parent(n)).collect()
    }

    #[test]
    fn merge_interleaves_two_chains() {
        let mut fast = LinkCutForest::default();
        let mut slow = NaiveForest::default();
        for l in [1, 4, 2, 5, 3, 6] {
            fast.insert(Extended::Finite(l));
            slow.insert(Extended::Finite(l));
        }
        // chains 0 -> 1 and 2 -> 3, then 4 -> 5
        for f in [&mut fast as &mut dyn MergeableForest<i32>, &mut slow] {
            f.merge(0, 1);
            f.merge(2, 3);
            f.merge(4, 5);
            f.merge(0, 2);
            f.merge(0, 4);
        }
        assert_eq!(parents(&mut fast), parents(&mut slow));
        assert_eq!(
            parents(&mut slow),
            vec![Some(2), Some(3), Some(4), Some(5), Some(1), None]
        );
    }

    #[test]
    fn random_operations_match_naive_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut fast = LinkCutForest::default();
            let mut slow = NaiveForest::default();
            for _ in 0..rng.random_range(1..40) {
                let l = Extended::Finite(rng.random_range(0..10));
                fast.insert(l);
                slow.insert(l);
            }
            let n = slow.len();
            for _ in 0..60 {
                let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
                if rng.random_bool(0.5) {
                    fast.merge(a, b);
                    slow.merge(a, b);
                } else {
                    assert_eq!(fast.nca(a, b), slow.nca(a, b));
                }
            }
            assert!(fast.heap_ordered());
            assert_eq!(parents(&mut fast), parents(&mut slow));
        }
    }
}
