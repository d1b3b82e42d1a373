use crate::scalar::{C64, ZERO};

/// Dense rank-3 complex tensor, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    shape: [usize; 3],
    data: Vec<C64>,
}

impl Tensor3 {
    pub fn zeros(a: usize, b: usize, c: usize) -> Self {
        Tensor3 { shape: [a, b, c], data: vec![ZERO; a * b * c] }
    }

    pub fn cube(n: usize) -> Self {
        Self::zeros(n, n, n)
    }

    pub fn shape(&self) -> [usize; 3] {
        self.shape
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.shape[1] + j) * self.shape[2] + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> C64 {
        self.data[self.idx(i, j, k)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: C64) {
        let ix = self.idx(i, j, k);
        self.data[ix] = v;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, k: usize, v: C64) {
        let ix = self.idx(i, j, k);
        self.data[ix] += v;
    }

    /// The fiber T[i][j][·].
    pub fn fiber(&self, i: usize, j: usize) -> &[C64] {
        let s = self.idx(i, j, 0);
        &self.data[s..s + self.shape[2]]
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn from_nested(v: &[Vec<Vec<C64>>]) -> Option<Self> {
        let a = v.len();
        let b = v.first().map_or(0, |x| x.len());
        let c = v.first().and_then(|x| x.first()).map_or(0, |x| x.len());
        let mut t = Tensor3::zeros(a, b, c);
        for (i, vi) in v.iter().enumerate() {
            if vi.len() != b {
                return None;
            }
            for (j, vij) in vi.iter().enumerate() {
                if vij.len() != c {
                    return None;
                }
                for (k, &z) in vij.iter().enumerate() {
                    t.set(i, j, k, z);
                }
            }
        }
        Some(t)
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<C64>>> {
        let [a, b, c] = self.shape;
        (0..a)
            .map(|i| (0..b).map(|j| (0..c).map(|k| self.get(i, j, k)).collect()).collect())
            .collect()
    }

    pub fn max_diff(&self, other: &Tensor3) -> f64 {
        assert_eq!(self.shape, other.shape);
        self.data.iter().zip(&other.data).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
    }

    /// Nonzero entries of each first-index slice, as (j, k, value).
    pub fn sparse_slices(&self) -> Vec<Vec<(usize, usize, C64)>> {
        let [a, b, c] = self.shape;
        (0..a)
            .map(|i| {
                let mut out = Vec::new();
                for j in 0..b {
                    for k in 0..c {
                        let v = self.get(i, j, k);
                        if v != ZERO {
                            out.push((j, k, v));
                        }
                    }
                }
                out
            })
            .collect()
    }
}
