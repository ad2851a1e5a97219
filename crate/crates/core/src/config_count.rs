//! Exact counts of distance pairs and hinges in a point set, and the Fourier
//! decomposition of the hinge count into a main term and a remainder.
//!
//! Headline numbers are integer counts built from the circle profile
//! `n_a(x) = |E ∩ S_a(x)|`, where `S_a(x) = {y : ||x - y|| = a}`:
//!
//! * ordered pairs at distance `t`: `sum_{x in E} n_t(x)`,
//! * hinges with legs `a`, `b` and apex in `E`: `sum_{x in E} n_a(x) n_b(x)`.
//!
//! The Fourier route evaluates
//! `q^6 sum_m conj(D_a^(m, 0, 0)) E^(m) S_b^(m)` with
//! `D_a^(m, 0, 0) = q^{-4} sum_x chi(-x.m) E(x) n_a(x)`. The conjugate on the
//! `D_a` factor is required: without it the sum pairs `f^(m)` with `E^(m)`
//! instead of `E^(-m)` and does not reproduce the count for asymmetric sets.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num_complex::Complex64;

use crate::char_sums::sphere_points;
use crate::error::{Error, Result};
use crate::field::{ComplexScalar, FieldElement, PrimeField};
use crate::fourier::{forward, SpectralGrid};
use crate::point::{GridShape, PointD};

/// A nonempty subset `E` of `F_q^d`, stored as a dense indicator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    shape: GridShape,
    indicator: Vec<bool>,
    members: Vec<usize>,
}

impl PointSet {
    /// Builds a set from grid indices; repeated indices collapse.
    pub fn from_indices(field: PrimeField, dim: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let shape = GridShape::new(field, dim)?;
        let mut indicator = vec![false; shape.len()];
        for i in indices {
            if i >= shape.len() {
                return Err(Error::InvalidArgument(format!("grid index {i} out of range")));
            }
            indicator[i] = true;
        }
        Self::from_indicator(shape, indicator)
    }

    pub fn from_points(field: PrimeField, dim: usize, points: &[PointD]) -> Result<Self> {
        for p in points {
            if p.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.modulus(),
                    right: p.field().modulus(),
                });
            }
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        Self::from_indices(field, dim, points.iter().map(PointD::index))
    }

    /// Convenience constructor from coordinate tuples.
    pub fn from_coords(field: PrimeField, dim: usize, coords: &[&[u64]]) -> Result<Self> {
        let points = coords
            .iter()
            .map(|c| PointD::new(field, c))
            .collect::<Result<Vec<_>>>()?;
        Self::from_points(field, dim, &points)
    }

    pub fn full(field: PrimeField, dim: usize) -> Result<Self> {
        let shape = GridShape::new(field, dim)?;
        Self::from_indicator(shape, vec![true; shape.len()])
    }

    fn from_indicator(shape: GridShape, indicator: Vec<bool>) -> Result<Self> {
        let members: Vec<usize> = indicator
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        if members.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Self {
            shape,
            indicator,
            members,
        })
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn field(&self) -> PrimeField {
        self.shape.field()
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn q(&self) -> u64 {
        self.field().modulus()
    }

    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    /// `|E| / q^d` as `(numerator, denominator)`.
    pub fn density_ratio(&self) -> (usize, usize) {
        (self.members.len(), self.shape.len())
    }

    pub fn density(&self) -> f64 {
        self.members.len() as f64 / self.shape.len() as f64
    }

    pub fn indicator(&self) -> &[bool] {
        &self.indicator
    }

    /// Member grid indices, increasing.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn points(&self) -> Vec<PointD> {
        self.members.iter().map(|&i| self.shape.point(i)).collect()
    }

    pub fn contains(&self, p: &PointD) -> bool {
        p.field() == self.field() && p.dim() == self.dim() && self.indicator[p.index()]
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.indicator[index]
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.shape == other.shape && self.members.iter().all(|&i| other.indicator[i])
    }

    pub fn to_grid(&self) -> SpectralGrid {
        SpectralGrid::indicator(self.field(), self.dim(), self.members.iter().copied())
            .expect("shape already validated")
    }

    fn check_radius(&self, r: FieldElement) -> Result<()> {
        self.field().contains(&r)
    }

    fn require_plane(&self) -> Result<()> {
        if self.dim() != 2 {
            return Err(Error::UnsupportedDimension {
                required: 2,
                got: self.dim(),
            });
        }
        Ok(())
    }
}

/// `n_a(x) = |E ∩ S_a(x)|` for every grid point `x`, indexed like the grid.
///
/// Each `y in E` contributes to `x = y - s` for every `s in S_a`.
pub fn circle_profile(set: &PointSet, a: FieldElement) -> Result<Vec<u64>> {
    set.check_radius(a)?;
    let sphere = sphere_points(a, set.dim())?;
    let shape = set.shape;
    let q = shape.q() as u64;
    let offsets: Vec<Vec<u64>> = sphere.indices().iter().map(|&i| shape.decode(i)).collect();
    let mut profile = vec![0u64; shape.len()];
    let mut y = vec![0u64; shape.dim()];
    let mut x = vec![0u64; shape.dim()];
    for &member in &set.members {
        shape.decode_into(member, &mut y);
        for s in &offsets {
            for ((xi, &yi), &si) in x.iter_mut().zip(&y).zip(s) {
                *xi = if yi >= si { yi - si } else { yi + q - si };
            }
            profile[shape.encode(&x)] += 1;
        }
    }
    Ok(profile)
}

/// Ordered pairs `(x, y) in E^2` with `||x - y|| = t`, against the main term
/// `|E|^2 |S_t| q^{-d}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistancePairReport {
    pub t: FieldElement,
    pub count: u64,
    pub sphere_size: u64,
    pub main_term: f64,
    pub deviation: f64,
}

impl DistancePairReport {
    /// `2 q^{(d-1)/2} |E|`.
    pub fn bound(q: u64, dim: usize, cardinality: usize) -> f64 {
        2.0 * (q as f64).powf((dim as f64 - 1.0) / 2.0) * cardinality as f64
    }
}

pub fn distance_pair_count(set: &PointSet, t: FieldElement) -> Result<DistancePairReport> {
    let profile = circle_profile(set, t)?;
    let count: u64 = set.members.iter().map(|&x| profile[x]).sum();
    let sphere_size: u64 = profile.iter().sum::<u64>() / set.cardinality() as u64;
    let e = set.cardinality() as f64;
    let main_term = e * e * sphere_size as f64 / set.shape.len() as f64;
    Ok(DistancePairReport {
        t,
        count,
        sphere_size,
        main_term,
        deviation: count as f64 - main_term,
    })
}

/// Hinges `(x, y, z) in E^3` with `||x - y|| = a` and `||x - z|| = b`.
pub fn hinge_count(set: &PointSet, a: FieldElement, b: FieldElement) -> Result<u64> {
    set.require_plane()?;
    let na = circle_profile(set, a)?;
    let nb = if a == b { na.clone() } else { circle_profile(set, b)? };
    Ok(set.members.iter().map(|&x| na[x] * nb[x]).sum())
}

/// Exact hinge count alongside its Fourier evaluation and the split
/// `count = I + R(a, b)` with `I = |D_a| |E| |S_b| q^{-2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HingeReport {
    pub a: FieldElement,
    pub b: FieldElement,
    pub exact_count: u64,
    pub fourier_count: ComplexScalar,
    pub main_term: f64,
    pub remainder: f64,
    /// `|R| / (q |E|)`.
    pub bound_ratio: f64,
}

impl HingeReport {
    /// The Fourier value is real to `1e-6` and rounds to the exact count.
    pub fn fourier_matches(&self) -> bool {
        let tol = 1e-6 * self.exact_count as f64 + 1e-6;
        self.fourier_count.im.abs() <= tol
            && (self.fourier_count.re - self.exact_count as f64).abs() <= tol
            && self.fourier_count.re.round() as u64 == self.exact_count
    }
}

/// Caches the transforms needed to evaluate many `(a, b)` pairs on one set.
pub struct HingeAnalyzer<'a> {
    set: &'a PointSet,
    set_hat: SpectralGrid,
    profiles: HashMap<u64, Vec<u64>>,
    weighted_hats: HashMap<u64, SpectralGrid>,
    sphere_hats: HashMap<u64, (u64, SpectralGrid)>,
}

impl<'a> HingeAnalyzer<'a> {
    pub fn new(set: &'a PointSet) -> Result<Self> {
        set.require_plane()?;
        Ok(Self {
            set,
            set_hat: forward(&set.to_grid()),
            profiles: HashMap::new(),
            weighted_hats: HashMap::new(),
            sphere_hats: HashMap::new(),
        })
    }

    pub fn profile(&mut self, a: FieldElement) -> Result<&[u64]> {
        if !self.profiles.contains_key(&a.value()) {
            let p = circle_profile(self.set, a)?;
            self.profiles.insert(a.value(), p);
        }
        Ok(&self.profiles[&a.value()])
    }

    /// `D_a^(m, 0, 0)` over all `m`, i.e. `q^{-2}` times the transform of
    /// `f(x) = E(x) n_a(x)`.
    pub fn pair_transform(&mut self, a: FieldElement) -> Result<&SpectralGrid> {
        if !self.weighted_hats.contains_key(&a.value()) {
            let set = self.set;
            let profile = self.profile(a)?;
            let q2 = (set.q() * set.q()) as f64;
            let weighted: Vec<f64> = profile
                .iter()
                .zip(set.indicator())
                .map(|(&n, &inside)| if inside { n as f64 } else { 0.0 })
                .collect();
            let mut hat = forward(&SpectralGrid::from_real(set.field(), 2, &weighted)?);
            for v in hat.values_mut() {
                *v /= q2;
            }
            self.weighted_hats.insert(a.value(), hat);
        }
        Ok(&self.weighted_hats[&a.value()])
    }

    /// `(|S_b|, S_b^)`.
    pub fn sphere_transform(&mut self, b: FieldElement) -> Result<(u64, &SpectralGrid)> {
        if let Entry::Vacant(slot) = self.sphere_hats.entry(b.value()) {
            let sphere = sphere_points(b, 2)?;
            slot.insert((sphere.count() as u64, forward(&sphere.indicator())));
        }
        let (n, hat) = &self.sphere_hats[&b.value()];
        Ok((*n, hat))
    }

    pub fn set_transform(&self) -> &SpectralGrid {
        &self.set_hat
    }

    /// `q^6 sum_m conj(D_a^(m)) E^(m) S_b^(m)`.
    pub fn fourier_count(&mut self, a: FieldElement, b: FieldElement) -> Result<ComplexScalar> {
        let q6 = (self.set.q() as f64).powi(6);
        self.pair_transform(a)?;
        self.sphere_transform(b)?;
        let d_hat = &self.weighted_hats[&a.value()];
        let (_, s_hat) = &self.sphere_hats[&b.value()];
        let sum: ComplexScalar = d_hat
            .values()
            .iter()
            .zip(self.set_hat.values())
            .zip(s_hat.values())
            .map(|((d, e), s)| d.conj() * e * s)
            .sum();
        Ok(sum * q6)
    }

    pub fn exact_count(&mut self, a: FieldElement, b: FieldElement) -> Result<u64> {
        self.profile(a)?;
        self.profile(b)?;
        let (na, nb) = (&self.profiles[&a.value()], &self.profiles[&b.value()]);
        Ok(self.set.members.iter().map(|&x| na[x] * nb[x]).sum())
    }

    /// `|D_a|`, the number of ordered pairs at distance `a`.
    pub fn pair_count(&mut self, a: FieldElement) -> Result<u64> {
        let set = self.set;
        let profile = self.profile(a)?;
        Ok(set.members.iter().map(|&x| profile[x]).sum())
    }

    /// Exact count, main term and remainder without the Fourier evaluation.
    pub fn exact_report(&mut self, a: FieldElement, b: FieldElement) -> Result<HingeReport> {
        self.report_inner(a, b, false)
    }

    pub fn report(&mut self, a: FieldElement, b: FieldElement) -> Result<HingeReport> {
        self.report_inner(a, b, true)
    }

    fn report_inner(&mut self, a: FieldElement, b: FieldElement, with_fourier: bool) -> Result<HingeReport> {
        let exact_count = self.exact_count(a, b)?;
        let pairs = self.pair_count(a)?;
        let (sphere_b, _) = self.sphere_transform(b)?;
        let q = self.set.q() as f64;
        let e = self.set.cardinality() as f64;
        let main_term = pairs as f64 * e * sphere_b as f64 / (q * q);
        let remainder = exact_count as f64 - main_term;
        let fourier_count = if with_fourier {
            self.fourier_count(a, b)?
        } else {
            Complex64::new(f64::NAN, f64::NAN)
        };
        Ok(HingeReport {
            a,
            b,
            exact_count,
            fourier_count,
            main_term,
            remainder,
            bound_ratio: remainder.abs() / (q * e),
        })
    }
}

fn require_nonzero(r: FieldElement, name: &str) -> Result<()> {
    if r.is_zero() {
        return Err(Error::InvalidArgument(format!("{name} must be nonzero")));
    }
    Ok(())
}

/// The full hinge report for one `(a, b)`; `a` and `b` must be nonzero.
pub fn hinge_count_fourier(set: &PointSet, a: FieldElement, b: FieldElement) -> Result<HingeReport> {
    require_nonzero(a, "a")?;
    require_nonzero(b, "b")?;
    HingeAnalyzer::new(set)?.report(a, b)
}

/// `sum_x |B(x)|^2` with `B(x) = n_a(x) - |E| |S_a| q^{-d}`, held exactly as
/// the fraction `scaled / q^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FluctuationEnergy {
    scaled: u128,
    denominator: u128,
}

impl FluctuationEnergy {
    pub fn value(&self) -> f64 {
        self.scaled as f64 / self.denominator as f64
    }

    /// Exact comparison `sum_x |B(x)|^2 <= bound`.
    pub fn at_most(&self, bound: u128) -> bool {
        self.scaled <= bound * self.denominator
    }
}

pub fn fluctuation_energy(set: &PointSet, a: FieldElement) -> Result<FluctuationEnergy> {
    require_nonzero(a, "a")?;
    let profile = circle_profile(set, a)?;
    let grid = set.shape.len() as u128;
    let sum_sq: u128 = profile.iter().map(|&n| (n as u128) * (n as u128)).sum();
    let total: u128 = profile.iter().map(|&n| n as u128).sum(); // |E| |S_a|
                                                                // sum (n - total/grid)^2 = sum n^2 - total^2 / grid
    Ok(FluctuationEnergy {
        scaled: grid * sum_sq - total * total,
        denominator: grid,
    })
}

/// `sum_{x in E} n_a(x)^2`.
pub fn hinge_energy(set: &PointSet, a: FieldElement) -> Result<u64> {
    require_nonzero(a, "a")?;
    let profile = circle_profile(set, a)?;
    Ok(set.members.iter().map(|&x| profile[x] * profile[x]).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn triangle5() -> PointSet {
        PointSet::from_coords(field(5), 2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap()
    }

    fn random_set(q: u64, size: usize, seed: u64) -> PointSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx: Vec<usize> = (0..(q * q) as usize).collect();
        idx.shuffle(&mut rng);
        PointSet::from_indices(field(q), 2, idx.into_iter().take(size)).unwrap()
    }

    fn naive_hinges(set: &PointSet, a: FieldElement, b: FieldElement) -> u64 {
        let pts = set.points();
        let mut n = 0;
        for x in &pts {
            for y in &pts {
                if (x - y).norm() != a {
                    continue;
                }
                for z in &pts {
                    if (x - z).norm() == b {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    #[test]
    fn point_set_invariants() {
        let f = field(7);
        assert!(matches!(PointSet::from_indices(f, 2, []), Err(Error::EmptySet)));
        let s = PointSet::from_indices(f, 2, [3, 3, 10]).unwrap();
        assert_eq!(s.cardinality(), 2);
        assert_eq!(s.density_ratio(), (2, 49));
        assert!(s.is_subset_of(&PointSet::full(f, 2).unwrap()));
        assert_eq!(PointSet::full(f, 2).unwrap().density(), 1.0);
        assert!(PointSet::from_indices(f, 2, [49]).is_err());
    }

    #[test]
    fn profile_examples() {
        let f = field(7);
        let full = PointSet::full(f, 2).unwrap();
        for a in f.elements() {
            let n = sphere_points(a, 2).unwrap().count() as u64;
            assert!(circle_profile(&full, a).unwrap().iter().all(|&v| v == n));
        }
        let single = PointSet::from_coords(f, 2, &[&[2, 3]]).unwrap();
        let a = f.element(3);
        let prof = circle_profile(&single, a).unwrap();
        let center = PointD::new(f, &[2, 3]).unwrap();
        for p in GridShape::new(f, 2).unwrap().points() {
            let expected = u64::from((&p - &center).norm() == a);
            assert_eq!(prof[p.index()], expected);
        }

        let t = triangle5();
        let prof = circle_profile(&t, field(5).one()).unwrap();
        let at = |c: &[u64]| prof[PointD::new(field(5), c).unwrap().index()];
        assert_eq!(at(&[0, 0]), 2);
        assert_eq!(at(&[1, 0]), 1);
        assert_eq!(at(&[0, 1]), 1);
    }

    #[test]
    fn distance_pair_examples() {
        let f = field(5);
        let two = PointSet::from_coords(f, 2, &[&[0, 0], &[1, 0]]).unwrap();
        assert_eq!(distance_pair_count(&two, f.one()).unwrap().count, 2);
        let full = PointSet::full(f, 2).unwrap();
        for t in f.elements() {
            let r = distance_pair_count(&full, t).unwrap();
            assert_eq!(r.count, 25 * r.sphere_size);
            assert!(r.deviation.abs() < 1e-9);
        }
        let s = random_set(13, 60, 4);
        let total: u64 = field(13)
            .elements()
            .map(|t| distance_pair_count(&s, t).unwrap().count)
            .sum();
        assert_eq!(total, 60 * 60);
    }

    #[test]
    fn distance_pairs_in_three_dimensions() {
        let f = field(5);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let idx: Vec<usize> = (0..40).map(|_| rng.gen_range(0..125)).collect();
        let s = PointSet::from_indices(f, 3, idx).unwrap();
        let pts = s.points();
        for t in f.nonzero_elements() {
            let brute = pts
                .iter()
                .flat_map(|x| pts.iter().map(move |y| (x, y)))
                .filter(|(x, y)| (*x - *y).norm() == t)
                .count() as u64;
            let r = distance_pair_count(&s, t).unwrap();
            assert_eq!(r.count, brute);
            assert!(r.deviation.abs() <= DistancePairReport::bound(5, 3, s.cardinality()));
        }
    }

    #[test]
    fn hinge_examples() {
        let f = field(5);
        let t = triangle5();
        assert_eq!(hinge_count(&t, f.one(), f.one()).unwrap(), 6);
        let single = PointSet::from_coords(f, 2, &[&[4, 4]]).unwrap();
        assert_eq!(hinge_count(&single, f.one(), f.element(2)).unwrap(), 0);
        let full = PointSet::full(field(7), 2).unwrap();
        let g = field(7);
        for a in g.nonzero_elements() {
            for b in g.nonzero_elements() {
                let sa = sphere_points(a, 2).unwrap().count() as u64;
                let sb = sphere_points(b, 2).unwrap().count() as u64;
                assert_eq!(hinge_count(&full, a, b).unwrap(), 49 * sa * sb);
            }
        }
        let cube = PointSet::full(f, 3).unwrap();
        assert!(matches!(
            hinge_count(&cube, f.one(), f.one()),
            Err(Error::UnsupportedDimension { .. })
        ));
    }

    #[test]
    fn hinge_count_matches_triple_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for seed in 0..50u64 {
            let q = [5u64, 7, 11, 13][seed as usize % 4];
            let size = rng.gen_range(1..=60usize.min((q * q) as usize));
            let s = random_set(q, size, seed);
            let f = field(q);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(
                        hinge_count(&s, a, b).unwrap(),
                        naive_hinges(&s, a, b),
                        "q={q} seed={seed}"
                    );
                }
            }
        }
    }

    #[test]
    fn fourier_report_on_full_grid_has_no_remainder() {
        let f = field(7);
        let full = PointSet::full(f, 2).unwrap();
        let r = hinge_count_fourier(&full, f.element(2), f.element(3)).unwrap();
        assert_eq!(r.remainder, 0.0);
        assert!(r.fourier_matches());
        assert!(hinge_count_fourier(&full, f.zero(), f.one()).is_err());
    }

    #[test]
    fn fourier_report_rounds_to_exact() {
        for seed in 0..10 {
            let s = random_set(11, 40 + seed as usize * 5, seed);
            let f = field(11);
            let mut an = HingeAnalyzer::new(&s).unwrap();
            for a in f.nonzero_elements() {
                for b in f.nonzero_elements() {
                    let r = an.report(a, b).unwrap();
                    assert!(r.fourier_matches(), "{r:?}");
                    assert_eq!(r.exact_count, naive_hinges(&s, a, b));
                    assert!((r.main_term + r.remainder - r.exact_count as f64).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn unconjugated_sum_is_not_the_hinge_count() {
        let f = field(7);
        let s = PointSet::from_coords(f, 2, &[&[0, 0], &[1, 0], &[0, 2], &[3, 5], &[6, 1]]).unwrap();
        let mut an = HingeAnalyzer::new(&s).unwrap();
        let mut mismatches = 0;
        for a in f.nonzero_elements() {
            for b in f.nonzero_elements() {
                let exact = an.exact_count(a, b).unwrap() as f64;
                let d_hat = an.pair_transform(a).unwrap().clone();
                let s_hat = an.sphere_transform(b).unwrap().1.clone();
                let literal: ComplexScalar = d_hat
                    .values()
                    .iter()
                    .zip(an.set_transform().values())
                    .zip(s_hat.values())
                    .map(|((d, e), s)| d * e * s)
                    .sum::<ComplexScalar>()
                    * 7f64.powi(6);
                if (literal - exact).norm() > 0.5 {
                    mismatches += 1;
                }
                assert!((an.fourier_count(a, b).unwrap() - exact).norm() < 1e-6);
            }
        }
        assert!(mismatches > 0);
    }

    #[test]
    fn fluctuation_energy_examples() {
        let f = field(5);
        let full = PointSet::full(f, 2).unwrap();
        assert_eq!(fluctuation_energy(&full, f.one()).unwrap().value(), 0.0);
        let single = PointSet::from_coords(f, 2, &[&[0, 0]]).unwrap();
        let e = fluctuation_energy(&single, f.one()).unwrap();
        let expected = 4.0 * (21.0f64 / 25.0).powi(2) + 21.0 * (4.0f64 / 25.0).powi(2);
        assert!((e.value() - expected).abs() < 1e-12);
        assert!((e.value() - 3.36).abs() < 1e-12);
        assert!(e.at_most(20));
        assert!(fluctuation_energy(&single, f.zero()).is_err());
    }

    #[test]
    fn fluctuation_energy_matches_float_sum() {
        let s = random_set(13, 70, 5);
        let f = field(13);
        for a in f.nonzero_elements() {
            let prof = circle_profile(&s, a).unwrap();
            let mean = prof.iter().sum::<u64>() as f64 / 169.0;
            let direct: f64 = prof.iter().map(|&n| (n as f64 - mean).powi(2)).sum();
            let e = fluctuation_energy(&s, a).unwrap();
            assert!((e.value() - direct).abs() < 1e-9 * direct.max(1.0));
            assert!(e.at_most(4 * 13 * 70));
        }
    }

    #[test]
    fn hinge_energy_examples() {
        let f = field(5);
        let single = PointSet::from_coords(f, 2, &[&[1, 1]]).unwrap();
        assert_eq!(hinge_energy(&single, f.element(3)).unwrap(), 0);
        assert_eq!(hinge_energy(&triangle5(), f.one()).unwrap(), 6);
    }

    #[test]
    fn hinge_energy_equals_diagonal_hinge_count() {
        let s = random_set(13, 80, 8);
        for a in field(13).nonzero_elements() {
            assert_eq!(hinge_energy(&s, a).unwrap(), hinge_count(&s, a, a).unwrap());
        }
    }
}
