//! Square matrices over a [`FieldTable`], stored row-major.

use std::fmt;

use crate::field::FieldTable;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    dim: usize,
    entries: Box<[u8]>,
}

impl Matrix {
    pub fn new(dim: usize, entries: Vec<u8>) -> Self {
        assert_eq!(entries.len(), dim * dim, "matrix entry count");
        Matrix {
            dim,
            entries: entries.into_boxed_slice(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut e = vec![0u8; dim * dim];
        for i in 0..dim {
            e[i * dim + i] = 1;
        }
        Matrix::new(dim, e)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Zero-based `(row, col)` entry.
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.entries[r * self.dim + c]
    }

    pub fn mul(&self, other: &Matrix, f: &FieldTable) -> Matrix {
        let n = self.dim;
        let mut out = vec![0u8; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0u8;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.get(r, k), other.get(k, c)));
                }
                out[r * n + c] = acc;
            }
        }
        Matrix::new(n, out)
    }

    pub fn det(&self, f: &FieldTable) -> u8 {
        let e = |r, c| self.get(r, c);
        match self.dim {
            1 => e(0, 0),
            2 => f.sub(f.mul(e(0, 0), e(1, 1)), f.mul(e(0, 1), e(1, 0))),
            3 => {
                let minor = |a, b, c, d| f.sub(f.mul(a, d), f.mul(b, c));
                let t0 = f.mul(e(0, 0), minor(e(1, 1), e(1, 2), e(2, 1), e(2, 2)));
                let t1 = f.mul(e(0, 1), minor(e(1, 0), e(1, 2), e(2, 0), e(2, 2)));
                let t2 = f.mul(e(0, 2), minor(e(1, 0), e(1, 1), e(2, 0), e(2, 1)));
                f.add(f.sub(t0, t1), t2)
            }
            _ => unimplemented!("determinants are only needed up to 3x3"),
        }
    }

    /// Inverse by repeated multiplication (the group is finite, so some
    /// power is the identity). Callers check invertibility first.
    pub fn inverse(&self, f: &FieldTable) -> Matrix {
        let id = Matrix::identity(self.dim);
        let mut prev = id.clone();
        let mut cur = self.clone();
        while cur != id {
            prev = cur.clone();
            cur = cur.mul(self, f);
        }
        prev
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.dim {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.dim {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}
