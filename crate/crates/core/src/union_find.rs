/// Disjoint sets over `0..len` with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Returns `true` when `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }

    /// Labels every element by its class, classes numbered in order of
    /// their smallest member. Returns the labels and the class count.
    pub fn labels(&mut self) -> (Vec<u32>, usize) {
        let n = self.len();
        let mut root_label = vec![u32::MAX; n];
        let mut labels = vec![0; n];
        let mut count = 0u32;
        for x in 0..n {
            let r = self.find(x);
            if root_label[r] == u32::MAX {
                root_label[r] = count;
                count += 1;
            }
            labels[x] = root_label[r];
        }
        (labels, count as usize)
    }
}
