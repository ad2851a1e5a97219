//! Vectors in `F_q^d` and the dense grid indexing shared by every module.

use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

/// Upper bound on the number of cells in any dense grid.
pub const MAX_GRID_CELLS: u128 = 10_000_000;

/// Shape of the dense grid `F_q^d`, with the mixed-radix encoding
/// `(x_1, ..., x_d) -> x_1 + x_2 q + ... + x_d q^{d-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridShape {
    field: PrimeField,
    dim: usize,
    len: usize,
}

impl GridShape {
    pub fn new(field: PrimeField, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        let requested = (field.modulus() as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if requested > MAX_GRID_CELLS {
            return Err(Error::Capacity {
                requested,
                limit: MAX_GRID_CELLS,
            });
        }
        Ok(Self {
            field,
            dim,
            len: requested as usize,
        })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.field.order()
    }

    /// Number of cells, `q^d`.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn encode(&self, coords: &[u64]) -> usize {
        debug_assert_eq!(coords.len(), self.dim);
        let q = self.q();
        coords.iter().rev().fold(0usize, |acc, &c| acc * q + c as usize)
    }

    pub fn decode_into(&self, mut index: usize, out: &mut [u64]) {
        let q = self.q();
        for c in out.iter_mut() {
            *c = (index % q) as u64;
            index /= q;
        }
    }

    pub fn decode(&self, index: usize) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        self.decode_into(index, &mut out);
        out
    }

    pub fn point(&self, index: usize) -> PointD {
        PointD {
            field: self.field,
            coords: self.decode(index),
        }
    }

    /// Every point in index order.
    pub fn points(&self) -> impl Iterator<Item = PointD> + '_ {
        (0..self.len).map(move |i| self.point(i))
    }

    /// Index of the negated point.
    pub fn negate_index(&self, index: usize) -> usize {
        let q = self.q() as u64;
        let coords: Vec<u64> = self.decode(index).into_iter().map(|c| (q - c) % q).collect();
        self.encode(&coords)
    }

    /// `||x||` for every cell, indexed like the grid.
    pub fn norm_table(&self) -> Vec<u32> {
        let q = self.q() as u64;
        let squares = self.field.square_table();
        let mut coords = vec![0u64; self.dim];
        (0..self.len)
            .map(|i| {
                self.decode_into(i, &mut coords);
                (coords.iter().map(|&c| squares[c as usize]).sum::<u64>() % q) as u32
            })
            .collect()
    }
}

/// A point (or frequency) `x = (x_1, ..., x_d)` in `F_q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointD {
    field: PrimeField,
    coords: Vec<u64>,
}

impl PointD {
    pub fn new(field: PrimeField, coords: &[u64]) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("a point needs at least one coordinate".into()));
        }
        if let Some(&value) = coords.iter().find(|&&c| c >= field.modulus()) {
            return Err(Error::CoordinateOutOfRange {
                value,
                q: field.modulus(),
            });
        }
        Ok(Self {
            field,
            coords: coords.to_vec(),
        })
    }

    /// Builds a point from signed integers, reducing each modulo `q`.
    pub fn from_i64(field: PrimeField, coords: &[i64]) -> Result<Self> {
        let reduced: Vec<u64> = coords.iter().map(|&c| field.from_i64(c).value()).collect();
        Self::new(field, &reduced)
    }

    pub fn from_elements(elements: &[FieldElement]) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidArgument("a point needs at least one coordinate".into()))?;
        let field = first.field();
        for e in elements {
            field.contains(e)?;
        }
        Ok(Self {
            field,
            coords: elements.iter().map(|e| e.value()).collect(),
        })
    }

    pub fn origin(field: PrimeField, dim: usize) -> Self {
        Self {
            field,
            coords: vec![0; dim],
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> FieldElement {
        self.field.element(self.coords[i])
    }

    pub fn elements(&self) -> Vec<FieldElement> {
        self.coords.iter().map(|&c| self.field.element(c)).collect()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }

    /// `x . m = sum_i x_i m_i`.
    pub fn dot(&self, other: &Self) -> Result<FieldElement> {
        self.check_shape(other)?;
        Ok(self
            .elements()
            .into_iter()
            .zip(other.elements())
            .fold(self.field.zero(), |acc, (a, b)| acc + a * b))
    }

    /// The quadratic form `||x|| = x_1^2 + ... + x_d^2`. Not a metric.
    pub fn norm(&self) -> FieldElement {
        self.elements()
            .into_iter()
            .fold(self.field.zero(), |acc, a| acc + a * a)
    }

    pub fn scale(&self, s: FieldElement) -> Self {
        assert_eq!(s.modulus(), self.field.modulus(), "field mismatch");
        Self {
            field: self.field,
            coords: self.elements().into_iter().map(|c| (c * s).value()).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(FieldElement, FieldElement) -> FieldElement) -> Self {
        Self {
            field: self.field,
            coords: self
                .elements()
                .into_iter()
                .zip(other.elements())
                .map(|(a, b)| op(a, b).value())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field,
            coords: self.elements().into_iter().map(|c| (-c).value()).collect(),
        }
    }

    /// Grid index under the mixed-radix encoding.
    pub fn index(&self) -> usize {
        let q = self.field.order();
        self.coords.iter().rev().fold(0usize, |acc, &c| acc * q + c as usize)
    }
}

impl Add for &PointD {
    type Output = PointD;
    fn add(self, rhs: &PointD) -> PointD {
        self.checked_add(rhs).expect("point shape mismatch")
    }
}

impl Sub for &PointD {
    type Output = PointD;
    fn sub(self, rhs: &PointD) -> PointD {
        self.checked_sub(rhs).expect("point shape mismatch")
    }
}
