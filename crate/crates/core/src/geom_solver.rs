//! Intersections of two circles in the plane, the count of representable
//! third distances, and the union-of-circles set whose midpoints avoid it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::char_sums::{sphere_points, GaussConstant};
use crate::config_count::PointSet;
use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::point::PointD;

/// Points `y` with `||y - x|| = b` and `||y - w|| = c`, where `||x - w|| = a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleSystem {
    center: PointD,
    witness: PointD,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
}

impl CircleSystem {
    pub fn new(center: PointD, witness: PointD, b: FieldElement, c: FieldElement) -> Result<Self> {
        if center.dim() != 2 || witness.dim() != 2 {
            return Err(Error::UnsupportedDimension {
                required: 2,
                got: center.dim().max(witness.dim()),
            });
        }
        let field = center.field();
        field.contains(&b)?;
        field.contains(&c)?;
        let a = witness.checked_sub(&center)?.norm();
        if a.is_zero() {
            return Err(Error::Degenerate(
                "the witness lies on the null cone of the center".into(),
            ));
        }
        Ok(Self {
            center,
            witness,
            a,
            b,
            c,
        })
    }

    pub fn center(&self) -> &PointD {
        &self.center
    }

    pub fn witness(&self) -> &PointD {
        &self.witness
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn c(&self) -> FieldElement {
        self.c
    }

    pub fn is_solution(&self, y: &PointD) -> bool {
        (y - &self.center).norm() == self.b && (y - &self.witness).norm() == self.c
    }

    /// `4ab - (a + b - c)^2`, the discriminant up to the square factor `w_1^{-2}`.
    pub fn discriminant_numerator(&self) -> FieldElement {
        let f = self.a.field();
        let s = self.a + self.b - self.c;
        f.element(4) * self.a * self.b - s * s
    }
}

/// `(4ab - (a + b - c)^2) / w_1^2`, with `w` translated so the center is the
/// origin; `None` when `w_1 = 0`.
pub fn paper_discriminant(sys: &CircleSystem) -> Option<FieldElement> {
    let w = &sys.witness - &sys.center;
    let w1 = w.coord(0);
    let inv = w1.inv().ok()?;
    Some(sys.discriminant_numerator() * inv * inv)
}

/// All intersection points in grid order; each is verified against both equations.
pub fn intersect_circles(sys: &CircleSystem) -> Vec<PointD> {
    let field = sys.a.field();
    let w = &sys.witness - &sys.center;
    // Solve for the coordinate paired with a nonzero witness component.
    let (p, r) = if w.coord(0).is_zero() { (1, 0) } else { (0, 1) };
    let (wp, wr) = (w.coord(p), w.coord(r));
    let wp_inv = wp.inv().expect("a nonzero witness component");
    let half = field.element(2).inv().expect("odd characteristic");
    let h = (sys.a + sys.b - sys.c) * half;
    let ratio = wr * wp_inv;
    let alpha = ratio * ratio + field.one();
    assert!(!alpha.is_zero(), "leading coefficient vanishes although a != 0");
    let beta = field.element(2) * h * wr * wp_inv * wp_inv;
    let gamma = h * wp_inv * h * wp_inv - sys.b;
    let delta = beta * beta - field.element(4) * alpha * gamma;
    let two_alpha_inv = (field.element(2) * alpha).inv().expect("alpha != 0");

    let mut out: Vec<PointD> = delta
        .sqrts()
        .into_iter()
        .map(|k| {
            let tr = (beta + k) * two_alpha_inv;
            let tp = (h - wr * tr) * wp_inv;
            let mut coords = [field.zero(); 2];
            coords[p] = tp;
            coords[r] = tr;
            &PointD::from_elements(&coords).expect("planar point") + &sys.center
        })
        .collect();
    out.sort_by_key(PointD::index);
    out.dedup();
    for y in &out {
        assert!(sys.is_solution(y), "solver produced a non-solution {y:?}");
    }
    out
}

/// Every `c` (zero included) for which the circles about `0` and `w` of
/// radii `b` and `c` meet, where `a = ||w||`.
pub fn representable_c_values(a: FieldElement, b: FieldElement, w: &PointD) -> Result<Vec<FieldElement>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument("radii must be nonzero".into()));
    }
    if w.norm() != a {
        return Err(Error::InvalidArgument(format!("witness {w:?} does not have norm {a}")));
    }
    let field = a.field();
    let origin = PointD::origin(field, 2);
    field
        .elements()
        .filter_map(|c| match CircleSystem::new(origin.clone(), w.clone(), b, c) {
            Ok(sys) => (!intersect_circles(&sys).is_empty()).then_some(Ok(c)),
            Err(e) => Some(Err(e)),
        })
        .collect()
}

/// `|{(k, tau) : k^2 + tau^2 = u}|`: the closed form `q - eta(-1)` when
/// `u != 0`, enumeration otherwise.
pub fn sum_two_squares_count(u: FieldElement) -> u64 {
    if u.is_zero() {
        return sum_two_squares_enumerated(u);
    }
    let field = u.field();
    (field.modulus() as i64 - GaussConstant::new(field).squared() as i64) as u64
}

/// Counts pairs by scanning every `k` and taking square roots of `u - k^2`.
pub fn sum_two_squares_enumerated(u: FieldElement) -> u64 {
    u.field().elements().map(|k| (u - k * k).sqrts().len() as u64).sum()
}

/// `(2||(x+y)/2|| + 2||(x-y)/2||, ||x|| + ||y||)`.
pub fn parallelogram_check(x: &PointD, y: &PointD) -> Result<(FieldElement, FieldElement)> {
    let field = x.field();
    let two = field.element(2);
    let half = two.inv().expect("odd characteristic");
    let mid = x.checked_add(y)?.scale(half);
    let gap = x.checked_sub(y)?.scale(half);
    Ok((two * mid.norm() + two * gap.norm(), x.norm() + y.norm()))
}

/// Outcome of testing pairs of the set for the midpoint property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MidpointReport {
    pub pairs: u64,
    /// Pairs whose midpoint lies in the set.
    pub midpoints_in_set: u64,
    /// Pairs with `||x - y||` outside the sumset and midpoint in the set.
    pub violations: u64,
}

/// Radii `A`, the set `E` of all points on circles with radius in `A`, and
/// the presence array of `2A + 2A - 4A`.
#[derive(Clone, Debug)]
pub struct CounterexampleSet {
    radii: Vec<FieldElement>,
    set: PointSet,
    sumset: Vec<bool>,
}

/// Radii: positive multiples of 8 up to `q / 32`. Needs `q >= 257`.
pub fn build_counterexample(q: u64) -> Result<CounterexampleSet> {
    let field = PrimeField::new(q)?;
    if q < 257 {
        return Err(Error::ModulusTooSmall {
            q,
            reason: "no positive multiple of 8 is at most q/32".into(),
        });
    }
    let radii: Vec<FieldElement> = (1..)
        .map(|k| 8 * k)
        .take_while(|&m| m <= q / 32)
        .map(|m| field.element(m))
        .collect();
    let mut indices = Vec::new();
    for &t in &radii {
        indices.extend_from_slice(sphere_points(t, 2)?.indices());
    }
    let set = PointSet::from_indices(field, 2, indices)?;

    let n = field.order();
    let mut dilated = vec![false; n];
    for &t in &radii {
        dilated[(field.element(2) * t).value() as usize] = true;
    }
    let double = convolve(&dilated, &dilated);
    let mut neg_four = vec![false; n];
    for &t in &radii {
        neg_four[(-(field.element(4) * t)).value() as usize] = true;
    }
    let sumset = convolve(&double, &neg_four);
    Ok(CounterexampleSet { radii, set, sumset })
}

fn convolve(x: &[bool], y: &[bool]) -> Vec<bool> {
    let n = x.len();
    let ys: Vec<usize> = (0..n).filter(|&j| y[j]).collect();
    let mut out = vec![false; n];
    for i in (0..n).filter(|&i| x[i]) {
        for &j in &ys {
            out[(i + j) % n] = true;
        }
    }
    out
}

impl CounterexampleSet {
    pub fn field(&self) -> PrimeField {
        self.set.field()
    }

    pub fn radii(&self) -> &[FieldElement] {
        &self.radii
    }

    pub fn set(&self) -> &PointSet {
        &self.set
    }

    pub fn sumset(&self) -> &[bool] {
        &self.sumset
    }

    pub fn sumset_size(&self) -> usize {
        self.sumset.iter().filter(|&&b| b).count()
    }

    pub fn sumset_is_full(&self) -> bool {
        self.sumset.iter().all(|&b| b)
    }

    pub fn sumset_contains(&self, v: FieldElement) -> bool {
        self.sumset[v.value() as usize]
    }

    /// `|E| / q^2`.
    pub fn density(&self) -> f64 {
        self.set.density()
    }

    fn check_pair(&self, x: &PointD, y: &PointD, half: FieldElement) -> (bool, bool) {
        let mid = (x + y).scale(half);
        let inside = self.set.contains(&mid);
        let outside_sumset = !self.sumset_contains((x - y).norm());
        (inside, inside && outside_sumset)
    }

    /// Checks `samples` uniformly drawn ordered pairs of `E`.
    pub fn midpoint_exclusion(&self, samples: u64, seed: u64) -> MidpointReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = self.set.shape();
        let members = self.set.members();
        let half = self.field().element(2).inv().expect("odd characteristic");
        let mut report = MidpointReport {
            pairs: samples,
            midpoints_in_set: 0,
            violations: 0,
        };
        for _ in 0..samples {
            let x = shape.point(members[rng.gen_range(0..members.len())]);
            let y = shape.point(members[rng.gen_range(0..members.len())]);
            let (inside, bad) = self.check_pair(&x, &y, half);
            report.midpoints_in_set += u64::from(inside);
            report.violations += u64::from(bad);
        }
        report
    }

    /// Checks all `|E|^2` ordered pairs, provided that fits in `budget`.
    pub fn midpoint_exclusion_exhaustive(&self, budget: u128) -> Result<MidpointReport> {
        let n = self.set.cardinality() as u128;
        if n * n > budget {
            return Err(Error::BudgetExceeded {
                estimate: n * n,
                budget,
            });
        }
        let points = self.set.points();
        let half = self.field().element(2).inv().expect("odd characteristic");
        let (inside, bad) = points
            .par_iter()
            .map(|x| {
                points.iter().fold((0u64, 0u64), |(i, b), y| {
                    let (inside, bad) = self.check_pair(x, y, half);
                    (i + u64::from(inside), b + u64::from(bad))
                })
            })
            .reduce(|| (0, 0), |l, r| (l.0 + r.0, l.1 + r.1));
        Ok(MidpointReport {
            pairs: (n * n) as u64,
            midpoints_in_set: inside,
            violations: bad,
        })
    }
}
