//! Rotations of `F_q^2`, congruence of simplices, and the two statistics of
//! triangles in a set: distinct distance triples and orbits of `E^3` under
//! translations combined with `SO_2` (or `O_2`).

use std::fmt;

use bitvec::prelude::*;
use rayon::prelude::*;

use crate::config_count::PointSet;
use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::linalg::FieldMatrix;
use crate::point::{GridShape, PointD};

/// Default work budget for orbit counting, in elementary steps.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

/// `(a, b)` with `a^2 + b^2 = 1`, acting as `[[a, -b], [b, a]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rotation {
    a: FieldElement,
    b: FieldElement,
}

impl Rotation {
    pub fn new(a: FieldElement, b: FieldElement) -> Result<Self> {
        let field = a.field();
        field.contains(&b)?;
        if a * a + b * b != field.one() {
            return Err(Error::InvalidArgument(format!("({a}, {b}) is not on the unit circle")));
        }
        Ok(Self { a, b })
    }

    pub fn identity(field: PrimeField) -> Self {
        Self {
            a: field.one(),
            b: field.zero(),
        }
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn apply(&self, p: &PointD) -> PointD {
        assert_eq!(p.dim(), 2, "rotations act on the plane");
        let (x, y) = (p.coord(0), p.coord(1));
        PointD::from_elements(&[self.a * x - self.b * y, self.b * x + self.a * y]).expect("same field")
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a - self.b * other.b,
            b: self.a * other.b + self.b * other.a,
        }
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.a, b: -self.b }
    }

    pub fn matrix(&self) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.a.field(), 2, 2);
        m.set(0, 0, self.a);
        m.set(0, 1, -self.b);
        m.set(1, 0, self.b);
        m.set(1, 1, self.a);
        m
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// All of `SO_2(F_q)` in lexicographic order of `(a, b)`; `q - eta(-1)` elements.
pub fn so2_elements(field: PrimeField) -> Vec<Rotation> {
    let mut out = Vec::new();
    for a in field.elements() {
        let rest = field.one() - a * a;
        for b in rest.sqrts() {
            out.push(Rotation { a, b });
        }
    }
    out
}

/// Which linear part is allowed alongside translations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    /// Rotations only (determinant 1).
    Special,
    /// Rotations and reflections.
    Orthogonal,
}

impl Group {
    /// The group as a list of 2x2 matrices `[m00, m01, m10, m11]`.
    pub fn planar_matrices(self, field: PrimeField) -> Vec<[u64; 4]> {
        let rotations = so2_elements(field);
        let mut out: Vec<[u64; 4]> = rotations
            .iter()
            .map(|r| [r.a.value(), (-r.b).value(), r.b.value(), r.a.value()])
            .collect();
        if self == Group::Orthogonal {
            // rotation composed with (x, y) -> (x, -y)
            out.extend(
                rotations
                    .iter()
                    .map(|r| [r.a.value(), r.b.value(), r.b.value(), (-r.a).value()]),
            );
        }
        out
    }
}

/// Vertices `V_0, ..., V_k` in `F_q^d` with `k <= d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    vertices: Vec<PointD>,
}

impl Simplex {
    pub fn new(vertices: Vec<PointD>) -> Result<Self> {
        let first = vertices
            .first()
            .ok_or_else(|| Error::InvalidArgument("a simplex needs a vertex".into()))?;
        let (field, dim) = (first.field(), first.dim());
        for v in &vertices {
            if v.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.modulus(),
                    right: v.field().modulus(),
                });
            }
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
        }
        if vertices.len() > dim + 1 {
            return Err(Error::InvalidArgument(format!(
                "{} vertices do not fit a simplex in dimension {dim}",
                vertices.len()
            )));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[PointD] {
        &self.vertices
    }

    /// Number of edges out of `V_0`.
    pub fn k(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn field(&self) -> PrimeField {
        self.vertices[0].field()
    }

    /// `V_i - V_0` for `i = 1..=k`.
    pub fn edges(&self) -> Vec<PointD> {
        self.vertices[1..].iter().map(|v| v - &self.vertices[0]).collect()
    }

    /// True when `V_1 - V_0, ..., V_k - V_0` are linearly independent.
    pub fn is_nondegenerate(&self) -> bool {
        self.k() == 0 || FieldMatrix::from_columns(self.field(), self.dim(), &self.edges()).rank() == self.k()
    }
}

/// `x -> map(x) + translation`, carrying one simplex onto another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub map: FieldMatrix,
    pub translation: PointD,
    /// `+1` or `-1`.
    pub determinant: i32,
}

impl Congruence {
    pub fn apply(&self, p: &PointD) -> PointD {
        &self.map.apply(p) + &self.translation
    }

    pub fn is_orthogonal(&self) -> bool {
        self.map.transpose().mul(&self.map).is_identity()
    }
}

/// Finds an isometry `x -> T x + tau` with `T^t T = I` mapping `p` onto
/// `other` vertex by vertex, or `None` when some pairwise norm differs (or,
/// for [`Group::Special`], when no determinant-one map exists).
///
/// For `k < d` the edge basis is completed one vector at a time: each new
/// basis vector `e` of the source is matched by a target vector with the same
/// inner products against the basis built so far, found by exhaustive search.
/// Witt's extension theorem guarantees a match at every step. When the
/// target edges span a degenerate subspace, every extension has the same
/// determinant, so [`Group::Special`] may legitimately yield `None`.
pub fn congruent(p: &Simplex, other: &Simplex, group: Group) -> Result<Option<Congruence>> {
    if p.field() != other.field() {
        return Err(Error::FieldMismatch {
            left: p.field().modulus(),
            right: other.field().modulus(),
        });
    }
    if p.dim() != other.dim() || p.k() != other.k() {
        return Err(Error::DimensionMismatch {
            expected: p.k(),
            got: other.k(),
        });
    }
    if !p.is_nondegenerate() || !other.is_nondegenerate() {
        return Err(Error::Degenerate("simplex vertices are affinely dependent".into()));
    }
    let n = p.vertices.len();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = (&p.vertices[i] - &p.vertices[j]).norm();
            let rhs = (&other.vertices[i] - &other.vertices[j]).norm();
            if lhs != rhs {
                return Ok(None);
            }
        }
    }

    let field = p.field();
    let dim = p.dim();
    let mut source = p.edges();
    let mut target = other.edges();
    let shape = GridShape::new(field, dim)?;
    while source.len() < dim {
        let rank = source.len();
        let e = (0..dim)
            .map(|i| {
                let mut c = vec![0u64; dim];
                c[i] = 1;
                PointD::new(field, &c).expect("unit vector")
            })
            .find(|e| {
                let mut cols = source.clone();
                cols.push(e.clone());
                FieldMatrix::from_columns(field, dim, &cols).rank() == rank + 1
            })
            .expect("a unit vector leaves any proper subspace");
        let wanted: Vec<FieldElement> = source.iter().map(|s| e.dot(s).expect("shape")).collect();
        let wanted_norm = e.norm();
        let matched = shape
            .points()
            .find(|v| {
                v.norm() == wanted_norm && target.iter().zip(&wanted).all(|(t, w)| v.dot(t).expect("shape") == *w) && {
                    let mut cols = target.clone();
                    cols.push(v.clone());
                    FieldMatrix::from_columns(field, dim, &cols).rank() == rank + 1
                }
            })
            .ok_or_else(|| Error::Degenerate("no isometric completion of the edge basis".into()))?;
        source.push(e);
        target.push(matched);
    }

    let src = FieldMatrix::from_columns(field, dim, &source);
    let dst = FieldMatrix::from_columns(field, dim, &target);
    let mut map = dst.mul(&src.inverse().expect("edge basis is independent"));
    if !map.transpose().mul(&map).is_identity() {
        return Err(Error::Degenerate("equal norms did not yield an orthogonal map".into()));
    }
    let mut determinant = if map.determinant() == field.one() { 1 } else { -1 };

    if group == Group::Special && determinant == -1 {
        // Fix the sign with a reflection that is the identity on the target
        // edge span, which needs an anisotropic vector orthogonal to it.
        let span = other.edges();
        let Some(u) = shape
            .points()
            .find(|u| !u.norm().is_zero() && span.iter().all(|t| u.dot(t).expect("shape").is_zero()))
        else {
            return Ok(None);
        };
        let two_over = (field.element(2) * u.norm().inv().expect("anisotropic")).value();
        let mut reflection = FieldMatrix::identity(field, dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = reflection.get(i, j) - field.element(two_over) * u.coord(i) * u.coord(j);
                reflection.set(i, j, v);
            }
        }
        map = reflection.mul(&map);
        determinant = 1;
    }

    let translation = &other.vertices[0] - &map.apply(&p.vertices[0]);
    let result = Congruence {
        map,
        translation,
        determinant,
    };
    debug_assert!(result.is_orthogonal());
    for (v, w) in p.vertices.iter().zip(&other.vertices) {
        if &result.apply(v) != w {
            return Err(Error::Degenerate(
                "constructed map does not transport the vertices".into(),
            ));
        }
    }
    Ok(Some(result))
}

/// `(||x - y||, ||x - z||, ||y - z||)` in that role order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistanceTriple {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

pub fn signature(x: &PointD, y: &PointD, z: &PointD) -> Result<DistanceTriple> {
    for p in [x, y, z] {
        if p.dim() != 2 {
            return Err(Error::UnsupportedDimension {
                required: 2,
                got: p.dim(),
            });
        }
    }
    Ok(DistanceTriple {
        a: x.checked_sub(y)?.norm(),
        b: x.checked_sub(z)?.norm(),
        c: y.checked_sub(z)?.norm(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TripleMode {
    /// Every ordered triple in `E^3`.
    All,
    /// Triples of pairwise-distinct, non-collinear points.
    Nondegenerate,
}

struct PlanarCoords {
    q: usize,
    xs: Vec<u32>,
    ys: Vec<u32>,
    squares: Vec<u32>,
}

impl PlanarCoords {
    fn new(set: &PointSet) -> Result<Self> {
        if set.dim() != 2 {
            return Err(Error::UnsupportedDimension {
                required: 2,
                got: set.dim(),
            });
        }
        let q = set.field().order();
        let (xs, ys) = set.members().iter().map(|&i| ((i % q) as u32, (i / q) as u32)).unzip();
        let squares = set.field().square_table().into_iter().map(|v| v as u32).collect();
        Ok(Self { q, xs, ys, squares })
    }

    #[inline]
    fn diff(&self, from: usize, to: usize) -> (usize, usize) {
        let q = self.q;
        (
            (self.xs[to] as usize + q - self.xs[from] as usize) % q,
            (self.ys[to] as usize + q - self.ys[from] as usize) % q,
        )
    }

    #[inline]
    fn norm(&self, d: (usize, usize)) -> usize {
        (self.squares[d.0] + self.squares[d.1]) as usize % self.q
    }
}

/// Number of distinct `(a, b, c)` realized by ordered triples of `E`.
pub fn distinct_signature_count(set: &PointSet, mode: TripleMode) -> Result<u64> {
    let pc = PlanarCoords::new(set)?;
    let q = pc.q;
    let cells = (q as u128).pow(3);
    if cells > crate::point::MAX_GRID_CELLS {
        return Err(Error::Capacity {
            requested: cells,
            limit: crate::point::MAX_GRID_CELLS,
        });
    }
    let n = set.cardinality();
    let present = (0..n)
        .into_par_iter()
        .fold(
            || bitvec![0; q * q * q],
            |mut acc, x| {
                let to_x: Vec<((usize, usize), usize)> = (0..n)
                    .map(|y| {
                        let d = pc.diff(x, y);
                        (d, pc.norm(d))
                    })
                    .collect();
                for (y, &(dy, a)) in to_x.iter().enumerate() {
                    for (z, &(dz, b)) in to_x.iter().enumerate() {
                        if mode == TripleMode::Nondegenerate {
                            let det = (dy.0 * dz.1 + q * q - (dy.1 * dz.0) % (q * q)) % q;
                            if det == 0 {
                                continue;
                            }
                        }
                        let c = pc.norm(pc.diff(y, z));
                        acc.set(a + q * (b + q * c), true);
                    }
                }
                acc
            },
        )
        .reduce(
            || bitvec![0; q * q * q],
            |mut a, b| {
                a |= b;
                a
            },
        );
    Ok(present.count_ones() as u64)
}

/// Orbits of `E^3` under `(x, y, z) -> (Ox + tau, Oy + tau, Oz + tau)`.
///
/// Translating `x` to the origin identifies each triple with the pair
/// `(y - x, z - x)`; the orbit key of a pair is the lexicographically smallest
/// image `(u_1, u_2, v_1, v_2)` under the group. Distinct keys over the
/// realized pairs are counted. Work is estimated as
/// `|E|^3 + min(|E|^3, q^4) * |G|` and checked against `budget`.
pub fn t3_orbit_count(set: &PointSet, group: Group, budget: u128) -> Result<u64> {
    let pc = PlanarCoords::new(set)?;
    let q = pc.q;
    let n = set.cardinality() as u128;
    let matrices = group.planar_matrices(set.field());
    let cells = (q as u128).pow(4);
    let estimate = n.pow(3) + n.pow(3).min(cells) * matrices.len() as u128;
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let realized = realized_pairs(&pc, set.cardinality());
    let mut keys: Vec<u64> = realized
        .iter_ones()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&cell| canonical_key(cell, q, &matrices))
        .collect();
    keys.par_sort_unstable();
    keys.dedup();
    Ok(keys.len() as u64)
}

/// Bitmap over `(u_1, u_2, v_1, v_2)`, indexed `((u_1 q + u_2) q + v_1) q + v_2`.
fn realized_pairs(pc: &PlanarCoords, n: usize) -> BitVec {
    let q = pc.q;
    (0..n)
        .into_par_iter()
        .fold(
            || bitvec![0; q * q * q * q],
            |mut acc, x| {
                let diffs: Vec<usize> = (0..n)
                    .map(|y| {
                        let (u1, u2) = pc.diff(x, y);
                        u1 * q + u2
                    })
                    .collect();
                for &u in &diffs {
                    for &v in &diffs {
                        acc.set(u * q * q + v, true);
                    }
                }
                acc
            },
        )
        .reduce(
            || bitvec![0; q * q * q * q],
            |mut a, b| {
                a |= b;
                a
            },
        )
}

fn canonical_key(cell: usize, q: usize, matrices: &[[u64; 4]]) -> u64 {
    let q64 = q as u64;
    let v2 = cell as u64 % q64;
    let v1 = (cell as u64 / q64) % q64;
    let u2 = (cell as u64 / (q64 * q64)) % q64;
    let u1 = cell as u64 / (q64 * q64 * q64);
    matrices
        .iter()
        .map(|m| {
            let a1 = (m[0] * u1 + m[1] * u2) % q64;
            let a2 = (m[2] * u1 + m[3] * u2) % q64;
            let b1 = (m[0] * v1 + m[1] * v2) % q64;
            let b2 = (m[2] * v1 + m[3] * v2) % q64;
            ((a1 * q64 + a2) * q64 + b1) * q64 + b2
        })
        .min()
        .expect("group is nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::{HashMap, HashSet};

    fn field(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn pt(f: PrimeField, c: &[u64]) -> PointD {
        PointD::new(f, c).unwrap()
    }

    fn random_set(q: u64, size: usize, seed: u64) -> PointSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx: Vec<usize> = (0..(q * q) as usize).collect();
        idx.shuffle(&mut rng);
        PointSet::from_indices(field(q), 2, idx.into_iter().take(size)).unwrap()
    }

    /// Union-find over the triples of `E^3`, linking every triple to every
    /// triple whose difference pair is a group image of its own.
    fn union_find_orbits(set: &PointSet, group: Group) -> u64 {
        let f = set.field();
        let pts = set.points();
        let n = pts.len();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
            .collect();
        let mut by_diff: HashMap<(PointD, PointD), Vec<usize>> = HashMap::new();
        for (i, &(x, y, z)) in triples.iter().enumerate() {
            by_diff
                .entry((&pts[y] - &pts[x], &pts[z] - &pts[x]))
                .or_default()
                .push(i);
        }
        let mut parent: Vec<usize> = (0..triples.len()).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            let mut c = i;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        let maps: Vec<FieldMatrix> = so2_elements(f)
            .iter()
            .flat_map(|r| {
                let m = r.matrix();
                let mut v = vec![m.clone()];
                if group == Group::Orthogonal {
                    let mut flip = FieldMatrix::identity(f, 2);
                    flip.set(1, 1, -f.one());
                    v.push(m.mul(&flip));
                }
                v
            })
            .collect();
        for (i, &(x, y, z)) in triples.iter().enumerate() {
            let (u, v) = (&pts[y] - &pts[x], &pts[z] - &pts[x]);
            for m in &maps {
                if let Some(js) = by_diff.get(&(m.apply(&u), m.apply(&v))) {
                    for &j in js {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        parent[ri] = rj;
                    }
                }
            }
        }
        (0..triples.len()).filter(|&i| find(&mut parent, i) == i).count() as u64
    }

    #[test]
    fn so2_examples() {
        let r5: Vec<(u64, u64)> = so2_elements(field(5))
            .iter()
            .map(|r| (r.a().value(), r.b().value()))
            .collect();
        assert_eq!(r5, vec![(0, 1), (0, 4), (1, 0), (4, 0)]);
        assert_eq!(so2_elements(field(7)).len(), 8);
        for q in [3u64, 5, 7, 11, 13, 17, 101] {
            let f = field(q);
            let g = so2_elements(f);
            assert_eq!(g.len() as i64, q as i64 - f.eta_minus_one() as i64);
            assert!(g.contains(&Rotation::identity(f)));
        }
    }

    #[test]
    fn so2_is_a_group_of_isometries() {
        for q in [3u64, 5, 7, 11, 13] {
            let f = field(q);
            let g = so2_elements(f);
            let set: HashSet<Rotation> = g.iter().copied().collect();
            let shape = GridShape::new(f, 2).unwrap();
            for r in &g {
                assert!(set.contains(&r.inverse()));
                assert_eq!(r.compose(&r.inverse()), Rotation::identity(f));
                assert_eq!(r.matrix().determinant(), f.one());
                for s in &g {
                    let rs = r.compose(s);
                    assert!(set.contains(&rs));
                    for p in shape.points().step_by(7) {
                        assert_eq!(rs.apply(&p), r.apply(&s.apply(&p)));
                    }
                }
                for p in shape.points() {
                    assert_eq!(r.apply(&p).norm(), p.norm());
                }
            }
        }
    }

    #[test]
    fn rotation_rejects_off_circle() {
        let f = field(5);
        assert!(Rotation::new(f.one(), f.one()).is_err());
        assert!(Rotation::new(f.zero(), f.element(4)).is_ok());
    }

    #[test]
    fn congruence_examples() {
        let f = field(5);
        let p = Simplex::new(vec![pt(f, &[0, 0]), pt(f, &[1, 0]), pt(f, &[0, 1])]).unwrap();
        let p2 = Simplex::new(vec![pt(f, &[0, 0]), pt(f, &[0, 1]), pt(f, &[4, 0])]).unwrap();
        let c = congruent(&p, &p2, Group::Special).unwrap().unwrap();
        assert_eq!(c.determinant, 1);
        assert!(c.translation.is_origin());
        let r = Rotation::new(f.zero(), f.one()).unwrap();
        assert_eq!(c.map, r.matrix());

        let same = congruent(&p, &p, Group::Special).unwrap().unwrap();
        assert!(same.map.is_identity() && same.translation.is_origin());

        let off = Simplex::new(vec![pt(f, &[0, 0]), pt(f, &[2, 0]), pt(f, &[0, 1])]).unwrap();
        assert!(congruent(&p, &off, Group::Orthogonal).unwrap().is_none());

        let line = Simplex::new(vec![pt(f, &[0, 0]), pt(f, &[1, 1]), pt(f, &[2, 2])]).unwrap();
        assert!(!line.is_nondegenerate());
        assert!(matches!(
            congruent(&line, &line, Group::Orthogonal),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn mirror_image_needs_the_full_group_in_the_plane() {
        let f = field(7);
        let p = Simplex::new(vec![pt(f, &[0, 0]), pt(f, &[1, 0]), pt(f, &[0, 2])]).unwrap();
        let mirrored = Simplex::new(vec![pt(f, &[0, 0]), pt(f, &[1, 0]), pt(f, &[0, 5])]).unwrap();
        let o = congruent(&p, &mirrored, Group::Orthogonal).unwrap().unwrap();
        assert_eq!(o.determinant, -1);
        assert!(congruent(&p, &mirrored, Group::Special).unwrap().is_none());
    }

    #[test]
    fn lower_dimensional_simplices_extend() {
        let f = field(5);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let shape = GridShape::new(f, 3).unwrap();
        let mut found = 0;
        let mut degenerate = 0;
        while found < 40 {
            let tri: Vec<PointD> = (0..3).map(|_| shape.point(rng.gen_range(0..125))).collect();
            let s = Simplex::new(tri.clone()).unwrap();
            if !s.is_nondegenerate() {
                continue;
            }
            // image under a random signed coordinate permutation plus shift
            let mut perm = [0usize, 1, 2];
            perm.shuffle(&mut rng);
            let signs: Vec<u64> = (0..3).map(|_| if rng.gen_bool(0.5) { 1 } else { 4 }).collect();
            let shift = shape.point(rng.gen_range(0..125));
            let image: Vec<PointD> = tri
                .iter()
                .map(|v| {
                    let c: Vec<u64> = (0..3).map(|i| (v.coords()[perm[i]] * signs[i]) % 5).collect();
                    &pt(f, &c) + &shift
                })
                .collect();
            let t = Simplex::new(image).unwrap();
            let o = congruent(&s, &t, Group::Orthogonal).unwrap().expect("isometric image");
            let e = t.edges();
            let gram = e[0].norm() * e[1].norm() - e[0].dot(&e[1]).unwrap() * e[0].dot(&e[1]).unwrap();
            if o.determinant == -1 && gram.is_zero() {
                // every extension off a degenerate plane has the same determinant
                assert!(congruent(&s, &t, Group::Special).unwrap().is_none());
                degenerate += 1;
                continue;
            }
            for group in [Group::Special, Group::Orthogonal] {
                let c = congruent(&s, &t, group).unwrap().expect("isometric image");
                assert!(c.is_orthogonal());
                if group == Group::Special {
                    assert_eq!(c.determinant, 1);
                    assert_eq!(c.map.determinant(), f.one());
                }
                for (v, w) in s.vertices().iter().zip(t.vertices()) {
                    assert_eq!(&c.apply(v), w);
                }
            }
            found += 1;
        }
        assert!(degenerate < found);
    }

    #[test]
    fn signature_examples() {
        let f = field(5);
        let (x, y, z) = (pt(f, &[0, 0]), pt(f, &[1, 0]), pt(f, &[0, 1]));
        let s = signature(&x, &y, &z).unwrap();
        assert_eq!((s.a.value(), s.b.value(), s.c.value()), (1, 1, 2));
        let zero = signature(&x, &x, &x).unwrap();
        assert!(zero.a.is_zero() && zero.b.is_zero() && zero.c.is_zero());
        let tau = pt(f, &[3, 4]);
        assert_eq!(signature(&(&x + &tau), &(&y + &tau), &(&z + &tau)).unwrap(), s);
    }

    #[test]
    fn signature_counts_small() {
        let f = field(5);
        let one = PointSet::from_coords(f, 2, &[&[2, 2]]).unwrap();
        assert_eq!(distinct_signature_count(&one, TripleMode::All).unwrap(), 1);
        assert_eq!(distinct_signature_count(&one, TripleMode::Nondegenerate).unwrap(), 0);

        let tri = PointSet::from_coords(f, 2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(distinct_signature_count(&tri, TripleMode::Nondegenerate).unwrap(), 3);
        // enumerate all 27 ordered triples by hand
        let pts = tri.points();
        let mut seen = HashSet::new();
        for x in &pts {
            for y in &pts {
                for z in &pts {
                    seen.insert(signature(x, y, z).unwrap());
                }
            }
        }
        assert_eq!(
            distinct_signature_count(&tri, TripleMode::All).unwrap(),
            seen.len() as u64
        );
    }

    #[test]
    fn signature_count_matches_brute_force_and_is_monotone() {
        for seed in 0..10 {
            let q = [5u64, 7, 11][seed as usize % 3];
            let s = random_set(q, 6 + seed as usize * 2, seed);
            let pts = s.points();
            let mut all = HashSet::new();
            let mut nondeg = HashSet::new();
            for x in &pts {
                for y in &pts {
                    for z in &pts {
                        let sig = signature(x, y, z).unwrap();
                        all.insert(sig);
                        let (u, v) = (y - x, z - x);
                        if !(u.coord(0) * v.coord(1) - u.coord(1) * v.coord(0)).is_zero() {
                            nondeg.insert(sig);
                        }
                    }
                }
            }
            assert_eq!(distinct_signature_count(&s, TripleMode::All).unwrap(), all.len() as u64);
            assert_eq!(
                distinct_signature_count(&s, TripleMode::Nondegenerate).unwrap(),
                nondeg.len() as u64
            );
            let bigger = PointSet::from_indices(s.field(), 2, s.members().iter().copied().chain([0, 1, 2])).unwrap();
            assert!(distinct_signature_count(&bigger, TripleMode::All).unwrap() >= all.len() as u64);
        }
    }

    #[test]
    fn orbit_counts_match_union_find() {
        let f = field(5);
        let tri = PointSet::from_coords(f, 2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let one = PointSet::from_coords(f, 2, &[&[3, 1]]).unwrap();
        assert_eq!(t3_orbit_count(&one, Group::Special, DEFAULT_BUDGET).unwrap(), 1);
        for group in [Group::Special, Group::Orthogonal] {
            assert_eq!(
                t3_orbit_count(&tri, group, DEFAULT_BUDGET).unwrap(),
                union_find_orbits(&tri, group)
            );
        }
        for seed in 0..12 {
            let q = [5u64, 7][seed as usize % 2];
            let s = random_set(q, 3 + seed as usize % 5, seed);
            for group in [Group::Special, Group::Orthogonal] {
                let orbits = t3_orbit_count(&s, group, DEFAULT_BUDGET).unwrap();
                assert_eq!(orbits, union_find_orbits(&s, group), "q={q} seed={seed}");
                assert!(distinct_signature_count(&s, TripleMode::All).unwrap() <= orbits);
            }
        }
    }

    #[test]
    fn orbit_budget_is_enforced() {
        let s = random_set(11, 50, 1);
        assert!(matches!(
            t3_orbit_count(&s, Group::Special, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn nondegenerate_signature_classes_split_into_at_most_two_rotation_orbits() {
        for q in [5u64, 7] {
            let f = field(q);
            let shape = GridShape::new(f, 2).unwrap();
            let rotations = so2_elements(f);
            let mut classes: HashMap<DistanceTriple, HashSet<(PointD, PointD)>> = HashMap::new();
            let origin = PointD::origin(f, 2);
            for u in shape.points() {
                for v in shape.points() {
                    if (u.coord(0) * v.coord(1) - u.coord(1) * v.coord(0)).is_zero() {
                        continue;
                    }
                    let sig = signature(&origin, &u, &v).unwrap();
                    let key = rotations.iter().map(|r| (r.apply(&u), r.apply(&v))).min().unwrap();
                    classes.entry(sig).or_default().insert(key);
                }
            }
            assert!(classes.values().all(|orbits| (1..=2).contains(&orbits.len())));
        }
    }
}
