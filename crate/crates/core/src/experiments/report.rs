//! Row types for every CSV the tools emit, and the writer.
//!
//! Column sets are pinned per [`SCHEMA_VERSION`]. Real values are written with
//! 12 significant digits; non-finite values are written as empty fields.

use std::fmt;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::char_sums::{
    decay_bound, gauss_sum, kloosterman, sphere_fourier_closed_grid, sphere_points, weil_bound, GaussConstant,
    MultiplicativeCharacter,
};
use crate::config_count::{HingeAnalyzer, PointSet};
use crate::congruence::{distinct_signature_count, t3_orbit_count, Group, TripleMode};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::fourier::forward;
use crate::geom_solver::CounterexampleSet;

pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of an inline bound check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Pass,
    Fail,
    /// Informational row, nothing asserted.
    Na,
    /// Skipped because the work estimate exceeded the budget.
    Budget,
}

impl Check {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Pass => "pass",
            Check::Fail => "fail",
            Check::Na => "na",
            Check::Budget => "budget",
        })
    }
}

/// A CSV row type with a fixed header.
pub trait Table {
    const HEADER: &'static [&'static str];

    fn record(&self) -> Vec<String>;

    /// False when the row witnesses a failed bound.
    fn passes(&self) -> bool {
        true
    }
}

/// `x` rounded to 12 significant digits, shortest form; empty if not finite.
pub fn format_decimal(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let s = format!("{rounded}");
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn opt_count(v: Option<u64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes the header and every row with LF line endings.
pub fn write_csv<W: Write, T: Table>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(T::HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SphereRow {
    pub q: u64,
    pub dim: usize,
    pub t: u64,
    pub size: u64,
    /// Largest gap between the closed form and the direct transform.
    pub max_abs_error: f64,
    /// `max_{m != 0} |S_t^(m)|`.
    pub max_nonzero_coefficient: f64,
    pub decay_bound: f64,
    pub check: Check,
}

impl Table for SphereRow {
    const HEADER: &'static [&'static str] = &[
        "q",
        "d",
        "t",
        "size",
        "max_abs_error",
        "max_nonzero_coefficient",
        "decay_bound",
        "check",
    ];

    fn record(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.dim.to_string(),
            self.t.to_string(),
            self.size.to_string(),
            format_decimal(self.max_abs_error),
            format_decimal(self.max_nonzero_coefficient),
            format_decimal(self.decay_bound),
            self.check.to_string(),
        ]
    }

    fn passes(&self) -> bool {
        self.check != Check::Fail
    }
}

/// One row per radius: size, closed form against the direct transform, and
/// the decay bound for `t != 0`. In the plane the size must be `q - eta(-1)`.
pub fn sphere_table(field: PrimeField, dim: usize) -> Result<Vec<SphereRow>> {
    let q = field.modulus();
    let radii: Vec<_> = field.elements().collect();
    radii
        .par_iter()
        .map(|&t| {
            let sphere = sphere_points(t, dim)?;
            let direct = forward(&sphere.indicator());
            let closed = sphere_fourier_closed_grid(t, dim)?;
            let max_abs_error = direct.max_abs_diff(&closed)?;
            let max_nonzero_coefficient = direct.values()[1..].iter().map(|z| z.norm()).fold(0.0, f64::max);
            let bound = decay_bound(q, dim);
            let mut ok = max_abs_error <= 1e-9;
            if !t.is_zero() {
                ok &= max_nonzero_coefficient <= bound + 1e-12;
                if dim == 2 {
                    ok &= sphere.count() as i64 == q as i64 - field.eta_minus_one() as i64;
                }
            }
            Ok(SphereRow {
                q,
                dim,
                t: t.value(),
                size: sphere.count() as u64,
                max_abs_error,
                max_nonzero_coefficient,
                decay_bound: if t.is_zero() { f64::NAN } else { bound },
                check: Check::from_bool(ok),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharsumRow {
    pub q: u64,
    /// `gauss`, `kloosterman_trivial`, `kloosterman_quadratic` or `circle`.
    pub kind: &'static str,
    pub arg: u64,
    pub value: Complex64,
    pub bound: f64,
    pub check: Check,
}

impl Table for CharsumRow {
    const HEADER: &'static [&'static str] = &["q", "kind", "arg", "re", "im", "abs", "bound", "check"];

    fn record(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.kind.to_string(),
            self.arg.to_string(),
            format_decimal(self.value.re),
            format_decimal(self.value.im),
            format_decimal(self.value.norm()),
            format_decimal(self.bound),
            self.check.to_string(),
        ]
    }

    fn passes(&self) -> bool {
        self.check != Check::Fail
    }
}

/// Gauss sums for `j != 0` (checked against `Q sqrt(q) eta(j)`), Kloosterman
/// sums for `a != 0` (checked against `2 sqrt(q)`), and planar circle sizes
/// (checked against the point count of `k^2 + tau^2 = t`).
pub fn charsum_table(field: PrimeField) -> Vec<CharsumRow> {
    let q = field.modulus();
    let root_q = (q as f64).sqrt();
    let gauss = GaussConstant::new(field).value();
    let mut rows = Vec::new();
    for j in field.nonzero_elements() {
        let g = gauss_sum(j);
        let expected = gauss * root_q * j.legendre() as f64;
        rows.push(CharsumRow {
            q,
            kind: "gauss",
            arg: j.value(),
            value: g,
            bound: root_q,
            check: Check::from_bool((g - expected).norm() <= 1e-9),
        });
    }
    for (kind, psi) in [
        ("kloosterman_trivial", MultiplicativeCharacter::Trivial),
        ("kloosterman_quadratic", MultiplicativeCharacter::Quadratic),
    ] {
        for a in field.nonzero_elements() {
            let k = kloosterman(a, psi);
            rows.push(CharsumRow {
                q,
                kind,
                arg: a.value(),
                value: k,
                bound: weil_bound(q),
                check: Check::from_bool(k.norm() <= weil_bound(q) + 1e-9),
            });
        }
    }
    for t in field.elements() {
        let count = sphere_points(t, 2).expect("planar grid fits").count();
        let expected = crate::geom_solver::sum_two_squares_enumerated(t);
        rows.push(CharsumRow {
            q,
            kind: "circle",
            arg: t.value(),
            value: Complex64::new(count as f64, 0.0),
            bound: expected as f64,
            check: Check::from_bool(count as u64 == expected),
        });
    }
    rows
}

/// Remainders above `8 q |E|` fail.
pub const HINGE_RATIO_LIMIT: f64 = 8.0;

#[derive(Clone, Debug, PartialEq)]
pub struct HingeRow {
    pub q: u64,
    pub cardinality: usize,
    pub a: u64,
    pub b: u64,
    pub exact: u64,
    pub main_term: f64,
    pub remainder: f64,
    pub bound_ratio: f64,
}

impl Table for HingeRow {
    const HEADER: &'static [&'static str] = &["q", "|E|", "a", "b", "exact", "I", "R", "bound_ratio"];

    fn record(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.cardinality.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            self.exact.to_string(),
            format_decimal(self.main_term),
            format_decimal(self.remainder),
            format_decimal(self.bound_ratio),
        ]
    }

    fn passes(&self) -> bool {
        self.bound_ratio <= HINGE_RATIO_LIMIT
    }
}

/// Exact hinge counts for every `a, b != 0`, in lexicographic order.
pub fn hinge_table(set: &PointSet) -> Result<Vec<HingeRow>> {
    let field = set.field();
    let mut analyzer = HingeAnalyzer::new(set)?;
    let mut rows = Vec::new();
    for a in field.nonzero_elements() {
        for b in field.nonzero_elements() {
            let r = analyzer.exact_report(a, b)?;
            rows.push(HingeRow {
                q: set.q(),
                cardinality: set.cardinality(),
                a: a.value(),
                b: b.value(),
                exact: r.exact_count,
                main_term: r.main_term,
                remainder: r.remainder,
                bound_ratio: r.bound_ratio,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriangleRow {
    pub q: u64,
    pub cardinality: usize,
    pub rho: f64,
    pub signatures_all: u64,
    pub signatures_nondeg: u64,
    /// `None` when over budget.
    pub orbits_so: Option<u64>,
    pub orbits_o: Option<u64>,
    /// `signatures_all / (rho q^3)`.
    pub ratio_to_rho_q3: f64,
}

impl Table for TriangleRow {
    const HEADER: &'static [&'static str] = &[
        "q",
        "|E|",
        "rho",
        "signatures_all",
        "signatures_nondeg",
        "orbits_SO",
        "orbits_O",
        "ratio_to_rho_q3",
    ];

    fn record(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.cardinality.to_string(),
            format_decimal(self.rho),
            self.signatures_all.to_string(),
            self.signatures_nondeg.to_string(),
            opt_count(self.orbits_so),
            opt_count(self.orbits_o),
            format_decimal(self.ratio_to_rho_q3),
        ]
    }

    /// Every realized signature comes from at least one orbit.
    fn passes(&self) -> bool {
        [self.orbits_so, self.orbits_o]
            .iter()
            .flatten()
            .all(|&orbits| self.signatures_all <= orbits)
    }
}

/// Triangle statistics of a planar set; `rho` is the density to report
/// against (the realized `|E| / q^2` when `None`).
pub fn triangle_row(set: &PointSet, rho: Option<f64>, budget: u128) -> Result<TriangleRow> {
    let q = set.q();
    let rho = rho.unwrap_or_else(|| set.density());
    let orbit = |group| match t3_orbit_count(set, group, budget) {
        Ok(n) => Ok(Some(n)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    let signatures_all = distinct_signature_count(set, TripleMode::All)?;
    Ok(TriangleRow {
        q,
        cardinality: set.cardinality(),
        rho,
        signatures_all,
        signatures_nondeg: distinct_signature_count(set, TripleMode::Nondegenerate)?,
        orbits_so: orbit(Group::Special)?,
        orbits_o: orbit(Group::Orthogonal)?,
        ratio_to_rho_q3: signatures_all as f64 / (rho * (q as f64).powi(3)),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CounterexampleRow {
    pub q: u64,
    pub radii: usize,
    pub cardinality: usize,
    pub rho: f64,
    pub sumset_size: usize,
    pub sumset_full: bool,
    pub violations: u64,
}

impl Table for CounterexampleRow {
    const HEADER: &'static [&'static str] = &["q", "|A|", "|E|", "rho", "sumset_size", "sumset_full", "violations"];

    fn record(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            self.radii.to_string(),
            self.cardinality.to_string(),
            format_decimal(self.rho),
            self.sumset_size.to_string(),
            self.sumset_full.to_string(),
            self.violations.to_string(),
        ]
    }

    fn passes(&self) -> bool {
        self.violations == 0 && !self.sumset_full
    }
}

pub fn counterexample_row(ce: &CounterexampleSet, violations: u64) -> CounterexampleRow {
    CounterexampleRow {
        q: ce.field().modulus(),
        radii: ce.radii().len(),
        cardinality: ce.set().cardinality(),
        rho: ce.density(),
        sumset_size: ce.sumset_size(),
        sumset_full: ce.sumset_is_full(),
        violations,
    }
}
