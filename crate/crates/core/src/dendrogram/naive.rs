use super::{MergeableForest, NodeId};
use crate::scalar::Extended;

/// Plain parent pointers. Linear time per operation; the reference backend.
#[derive(Clone, Debug)]
pub struct NaiveForest<T> {
    parent: Vec<Option<NodeId>>,
    label: Vec<Extended<T>>,
}

impl<T> Default for NaiveForest<T> {
    fn default() -> Self {
        NaiveForest {
            parent: Vec::new(),
            label: Vec::new(),
        }
    }
}

impl<T: Ord + Clone> NaiveForest<T> {
    fn root_path(&self, mut n: NodeId) -> Vec<NodeId> {
        let mut path = vec![n];
        while let Some(p) = self.parent[n] {
            path.push(p);
            n = p;
        }
        path
    }
}

impl<T: Ord + Clone> MergeableForest<T> for NaiveForest<T> {
    fn len(&self) -> usize {
        self.label.len()
    }

    fn insert(&mut self, label: Extended<T>) -> NodeId {
        self.parent.push(None);
        self.label.push(label);
        self.label.len() - 1
    }

    fn label(&self, n: NodeId) -> Extended<T> {
        self.label[n].clone()
    }

    fn precedes(&self, a: NodeId, b: NodeId) -> bool {
        (&self.label[a], a) < (&self.label[b], b)
    }

    fn nca(&mut self, mut a: NodeId, mut b: NodeId) -> Option<NodeId> {
        // climb whichever node is lower in the strict order until they meet
        while a != b {
            if self.precedes(a, b) {
                a = self.parent[a]?;
            } else {
                b = self.parent[b]?;
            }
        }
        Some(a)
    }

    fn merge(&mut self, a: NodeId, b: NodeId) {
        let mut nodes = self.root_path(a);
        nodes.extend(self.root_path(b));
        nodes.sort_by(|&x, &y| (&self.label[x], x).cmp(&(&self.label[y], y)));
        nodes.dedup();
        for w in nodes.windows(2) {
            self.parent[w[0]] = Some(w[1]);
        }
        if let Some(&top) = nodes.last() {
            self.parent[top] = None;
        }
    }

    fn parent(&mut self, n: NodeId) -> Option<NodeId> {
        self.parent[n]
    }
}
