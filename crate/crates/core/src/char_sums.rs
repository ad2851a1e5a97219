//! Spheres `S_t = {x : ||x|| = t}`, Gauss and Kloosterman sums, and the
//! closed-form Fourier transform of a sphere.
//!
//! Sign convention of the closed form, checked against the direct transform
//! for every `t != 0`, `d in {2, 3}` and `q <= 13`:
//!
//! ```text
//! S_t^(l) = q^{-1} delta(l) + Q^d q^{-(d+2)/2} sum_{j != 0} chi(||l|| / (4j) + j t) eta(-j)^d
//! ```
//!
//! i.e. the `+ j t` sign, with `chi(x) = e^{2 pi i x / q}` and `Q` the Gauss
//! constant below.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{ComplexScalar, FieldElement, PrimeField};
use crate::fourier::SpectralGrid;
use crate::point::{GridShape, PointD};

/// The level set `{x in F_q^d : ||x|| = t}`.
#[derive(Clone, Debug)]
pub struct Sphere {
    shape: GridShape,
    radius: FieldElement,
    indices: Vec<usize>,
}

impl Sphere {
    pub fn field(&self) -> PrimeField {
        self.shape.field()
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn radius(&self) -> FieldElement {
        self.radius
    }

    pub fn count(&self) -> usize {
        self.indices.len()
    }

    /// Grid indices of the points, increasing (lexicographic from the last
    /// coordinate).
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn points(&self) -> Vec<PointD> {
        self.indices.iter().map(|&i| self.shape.point(i)).collect()
    }

    pub fn indicator(&self) -> SpectralGrid {
        SpectralGrid::indicator(self.field(), self.dim(), self.indices.iter().copied())
            .expect("sphere shape already validated")
    }
}

/// Enumerates `S_t` in `F_q^d` by scanning the whole grid.
pub fn sphere_points(t: FieldElement, dim: usize) -> Result<Sphere> {
    let shape = GridShape::new(t.field(), dim)?;
    let target = t.value() as u32;
    let indices = shape
        .norm_table()
        .into_iter()
        .enumerate()
        .filter_map(|(i, n)| (n == target).then_some(i))
        .collect();
    Ok(Sphere {
        shape,
        radius: t,
        indices,
    })
}

/// Kronecker delta at the origin.
pub fn delta(l: &PointD) -> u8 {
    u8::from(l.is_origin())
}

/// `sum_{c in F_q} chi(j c^2)`, by direct summation.
pub fn gauss_sum(j: FieldElement) -> ComplexScalar {
    j.field().elements().map(|c| (j * c * c).chi()).sum()
}

/// The fourth root of unity `Q` with `sum_c chi(j c^2) = Q sqrt(q) eta(j)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussConstant {
    value: ComplexScalar,
}

impl GaussConstant {
    /// `Q = 1` for `q = 1 (mod 4)`, `Q = i` for `q = 3 (mod 4)`; the choice is
    /// confirmed against the direct sum.
    pub fn new(field: PrimeField) -> Self {
        let value = if field.modulus() % 4 == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 1.0)
        };
        let direct = gauss_sum(field.one()) / (field.modulus() as f64).sqrt();
        assert!(
            (direct - value).norm() < 1e-9,
            "Gauss constant mismatch for q = {}",
            field.modulus()
        );
        Self { value }
    }

    pub fn value(&self) -> ComplexScalar {
        self.value
    }

    /// `Q^2`, which equals `eta(-1)`.
    pub fn squared(&self) -> i32 {
        (self.value * self.value).re.round() as i32
    }

    pub fn pow(&self, k: u32) -> ComplexScalar {
        self.value.powu(k)
    }
}

/// The multiplicative characters that arise from `eta^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MultiplicativeCharacter {
    Trivial,
    Quadratic,
}

impl MultiplicativeCharacter {
    pub fn eval(self, s: FieldElement) -> i32 {
        match self {
            Self::Trivial => i32::from(!s.is_zero()),
            Self::Quadratic => s.legendre(),
        }
    }
}

/// `K(a) = sum_{s != 0} chi(a s + s^{-1}) psi(s)`, by direct summation.
pub fn kloosterman(a: FieldElement, psi: MultiplicativeCharacter) -> ComplexScalar {
    a.field()
        .nonzero_elements()
        .map(|s| {
            let inv = s.inv().expect("nonzero");
            (a * s + inv).chi() * psi.eval(s) as f64
        })
        .sum()
}

struct ClosedForm {
    q: f64,
    dim: u32,
    prefactor: ComplexScalar,
    /// `(j, 1/(4j), eta(-j)^d)` for each nonzero `j`.
    terms: Vec<(FieldElement, FieldElement, f64)>,
}

impl ClosedForm {
    fn new(field: PrimeField, dim: usize) -> Self {
        let q = field.modulus() as f64;
        let gauss = GaussConstant::new(field);
        let prefactor = gauss.pow(dim as u32) * q.powf(-(dim as f64 + 2.0) / 2.0);
        let four = field.element(4);
        let terms = field
            .nonzero_elements()
            .map(|j| {
                let inv = (four * j).inv().expect("q is odd");
                let eta = (-j).legendre().pow(dim as u32) as f64;
                (j, inv, eta)
            })
            .collect();
        Self {
            q,
            dim: dim as u32,
            prefactor,
            terms,
        }
    }

    fn eval(&self, t: FieldElement, l: &PointD) -> ComplexScalar {
        debug_assert_eq!(l.dim() as u32, self.dim);
        let norm = l.norm();
        let sum: ComplexScalar = self
            .terms
            .iter()
            .map(|&(j, inv4j, eta)| (norm * inv4j + j * t).chi() * eta)
            .sum();
        let head = if l.is_origin() { 1.0 / self.q } else { 0.0 };
        self.prefactor * sum + head
    }
}

/// `S_t^(l)` from the completed-square formula for `t != 0`; for `t = 0` the
/// transform is summed directly over the enumerated sphere.
pub fn sphere_fourier_closed(t: FieldElement, l: &PointD) -> Result<ComplexScalar> {
    let field = t.field();
    if l.field() != field {
        return Err(Error::FieldMismatch {
            left: field.modulus(),
            right: l.field().modulus(),
        });
    }
    if t.is_zero() {
        return sphere_fourier_direct(&sphere_points(t, l.dim())?, l);
    }
    Ok(ClosedForm::new(field, l.dim()).eval(t, l))
}

/// `q^{-d} sum_{x in S} chi(-x.l)`.
fn sphere_fourier_direct(sphere: &Sphere, l: &PointD) -> Result<ComplexScalar> {
    let scale = (sphere.field().modulus() as f64).powi(-(sphere.dim() as i32));
    let mut acc = Complex64::new(0.0, 0.0);
    for x in sphere.points() {
        acc += (-x.dot(l)?).chi();
    }
    Ok(acc * scale)
}

/// The closed form evaluated at every frequency of the grid.
pub fn sphere_fourier_closed_grid(t: FieldElement, dim: usize) -> Result<SpectralGrid> {
    let field = t.field();
    if t.is_zero() {
        let sphere = sphere_points(t, dim)?;
        return Ok(crate::fourier::forward(&sphere.indicator()));
    }
    let closed = ClosedForm::new(field, dim);
    SpectralGrid::from_fn(field, dim, |l| closed.eval(t, l))
}

/// `2 q^{-(d+1)/2}`, the decay bound for `|S_b^(m)|` with `b, m != 0`.
pub fn decay_bound(q: u64, dim: usize) -> f64 {
    2.0 * (q as f64).powf(-(dim as f64 + 1.0) / 2.0)
}

/// `2 sqrt(q)`.
pub fn weil_bound(q: u64) -> f64 {
    2.0 * (q as f64).sqrt()
}
