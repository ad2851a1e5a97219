//! Dense matrices over `F_q` with exact Gaussian elimination.

use crate::field::{FieldElement, PrimeField};
use crate::point::PointD;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, dim: usize, columns: &[PointD]) -> Self {
        let mut m = Self::zeros(field, dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..dim {
                m.set(i, j, c.coord(i));
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> PointD {
        let coords: Vec<FieldElement> = (0..self.rows).map(|i| self.get(i, j)).collect();
        PointD::from_elements(&coords).expect("matrix has at least one row")
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn apply(&self, x: &PointD) -> PointD {
        assert_eq!(self.cols, x.dim(), "matrix shape mismatch");
        let coords: Vec<FieldElement> = (0..self.rows)
            .map(|i| (0..self.cols).fold(self.field.zero(), |acc, k| acc + self.get(i, k) * x.coord(k)))
            .collect();
        PointD::from_elements(&coords).expect("matrix has at least one row")
    }

    /// Row-echelon reduction in place; returns the rank and the determinant
    /// factor accumulated from swaps and pivots (meaningful when square).
    fn eliminate(&mut self) -> (usize, FieldElement) {
        let mut rank = 0;
        let mut det = self.field.one();
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                det = self.field.zero();
                continue;
            };
            if pivot != rank {
                for j in 0..self.cols {
                    self.data.swap(pivot * self.cols + j, rank * self.cols + j);
                }
                det = -det;
            }
            let p = self.get(rank, col);
            det = det * p;
            let inv = p.inv().expect("pivot is nonzero");
            for r in rank + 1..self.rows {
                let factor = self.get(r, col) * inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = self.get(r, j) - factor * self.get(rank, j);
                    self.set(r, j, v);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().0
    }

    pub fn determinant(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let (rank, det) = self.clone().eliminate();
        if rank < self.rows {
            self.field.zero()
        } else {
            det
        }
    }

    /// Gauss-Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, self.field.one());
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..2 * n {
                    aug.data.swap(pivot * 2 * n + j, col * 2 * n + j);
                }
            }
            let inv = aug.get(col, col).inv().expect("pivot is nonzero");
            for j in 0..2 * n {
                let v = aug.get(col, j) * inv;
                aug.set(col, j, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = aug.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..2 * n {
                    let v = aug.get(r, j) - factor * aug.get(col, j);
                    aug.set(r, j, v);
                }
            }
        }
        let mut out = Self::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j).value() == u64::from(i == j)))
    }
}
