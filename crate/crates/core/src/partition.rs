/// Union-find over `0..n` with path halving and union by size.
#[derive(Clone, Debug)]
pub struct Partition {
    parent: Vec<usize>,
    size: Vec<u32>,
    count: usize,
}

impl Partition {
    pub fn new(n: usize) -> Self {
        Partition {
            parent: (0..n).collect(),
            size: vec![1; n],
            count: n,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            let grand = self.parent[self.parent[x]];
            self.parent[x] = grand;
            x = grand;
        }
        x
    }

    /// Returns true if the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.count -= 1;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Number of classes.
    pub fn count(&self) -> usize {
        self.count
    }

    /// Dense class labels `0..count`, numbered by first appearance.
    pub fn labels(&mut self) -> Vec<usize> {
        let mut label_of_root = vec![usize::MAX; self.len()];
        let mut next = 0;
        (0..self.len())
            .map(|v| {
                let r = self.find(v);
                if label_of_root[r] == usize::MAX {
                    label_of_root[r] = next;
                    next += 1;
                }
                label_of_root[r]
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_find() {
        let mut p = Partition::new(5);
        assert_eq!(p.count(), 5);
        assert!(p.union(0, 1));
        assert!(p.union(3, 4));
        assert!(!p.union(1, 0));
        assert!(p.same(0, 1));
        assert!(!p.same(1, 3));
        assert_eq!(p.count(), 3);
        let r = p.find(4);
        assert_eq!(p.find(r), r);
        assert_eq!(p.labels(), vec![0, 0, 1, 2, 2]);
    }
}
