use std::fmt;

use rayon::prelude::*;

use super::config::ExperimentConfig;
use super::random::random_set;
use super::report::{format_decimal, Check, Table, HINGE_RATIO_LIMIT};
use crate::config_count::{distance_pair_count, fluctuation_energy, hinge_energy, HingeAnalyzer, PointSet};
use crate::congruence::{distinct_signature_count, t3_orbit_count, Group, TripleMode};
use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// Distinct distance triples over `E^3`, against `rho q^3`.
    SignaturesAll,
    /// The same over non-degenerate triangles.
    SignaturesNondeg,
    /// Orbits of `E^3` under translations and rotations, against `rho q^3`.
    OrbitsSo,
    /// The same with reflections.
    OrbitsO,
    /// `max_{t != 0} |pairs(t) - |E|^2 |S_t| / q^2|`, against `2 sqrt(q) |E|`.
    PairDeviation,
    /// `max_{a, b != 0} |R(a, b)|`, against `q |E|`; fails above ratio 8.
    HingeRemainder,
    /// `max_{a != 0} sum_x |B(x)|^2`, against `4 q |E|`.
    FluctuationEnergy,
    /// `max_{a != 0} sum_{x in E} n_a(x)^2`, against `8 q |E|`; reported only.
    HingeEnergy,
}

impl Statistic {
    pub const ALL: [Statistic; 8] = [
        Statistic::SignaturesAll,
        Statistic::SignaturesNondeg,
        Statistic::OrbitsSo,
        Statistic::OrbitsO,
        Statistic::PairDeviation,
        Statistic::HingeRemainder,
        Statistic::FluctuationEnergy,
        Statistic::HingeEnergy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::SignaturesAll => "signatures_all",
            Statistic::SignaturesNondeg => "signatures_nondeg",
            Statistic::OrbitsSo => "orbits_so",
            Statistic::OrbitsO => "orbits_o",
            Statistic::PairDeviation => "pair_deviation",
            Statistic::HingeRemainder => "hinge_remainder",
            Statistic::FluctuationEnergy => "fluctuation_energy",
            Statistic::HingeEnergy => "hinge_energy",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One statistic of one `(q, rho, seed)` cell. Rows skipped for budget carry
/// a NaN value and ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub q: u64,
    pub rho: f64,
    pub seed: u64,
    pub cardinality: usize,
    pub statistic: Statistic,
    pub value: f64,
    pub reference: f64,
    pub ratio: f64,
    pub check: Check,
}

impl Table for SweepRow {
    const HEADER: &'static [&'static str] = &[
        "q",
        "rho",
        "seed",
        "|E|",
        "statistic",
        "value",
        "reference",
        "ratio",
        "check",
    ];

    fn record(&self) -> Vec<String> {
        vec![
            self.q.to_string(),
            format_decimal(self.rho),
            self.seed.to_string(),
            self.cardinality.to_string(),
            self.statistic.to_string(),
            format_decimal(self.value),
            format_decimal(self.reference),
            format_decimal(self.ratio),
            self.check.to_string(),
        ]
    }

    fn passes(&self) -> bool {
        self.check != Check::Fail
    }
}

/// All statistics for a single planar cell, in [`Statistic::ALL`] order.
pub fn sweep_cell(field: PrimeField, rho: f64, seed: u64, budget: u128) -> Result<Vec<SweepRow>> {
    let set = random_set(field, 2, rho, seed)?;
    cell_rows(&set, rho, seed, budget)
}

fn cell_rows(set: &PointSet, rho: f64, seed: u64, budget: u128) -> Result<Vec<SweepRow>> {
    let field = set.field();
    let q = field.modulus();
    let qf = q as f64;
    let n = set.cardinality();
    let e = n as f64;
    let row = |statistic, value: f64, reference: f64, check| SweepRow {
        q,
        rho,
        seed,
        cardinality: n,
        statistic,
        value,
        reference,
        ratio: value / reference,
        check,
    };
    let skipped = |statistic, reference| row(statistic, f64::NAN, reference, Check::Budget);
    let triple_ref = rho * qf.powi(3);
    let mut rows = Vec::with_capacity(Statistic::ALL.len());

    let triples_fit = (n as u128).pow(3) <= budget;
    let all = if triples_fit {
        let v = distinct_signature_count(set, TripleMode::All)?;
        rows.push(row(Statistic::SignaturesAll, v as f64, triple_ref, Check::Na));
        let nd = distinct_signature_count(set, TripleMode::Nondegenerate)?;
        rows.push(row(Statistic::SignaturesNondeg, nd as f64, triple_ref, Check::Na));
        Some(v)
    } else {
        rows.push(skipped(Statistic::SignaturesAll, triple_ref));
        rows.push(skipped(Statistic::SignaturesNondeg, triple_ref));
        None
    };
    for (stat, group) in [
        (Statistic::OrbitsSo, Group::Special),
        (Statistic::OrbitsO, Group::Orthogonal),
    ] {
        match t3_orbit_count(set, group, budget) {
            Ok(orbits) => {
                let check = all.map_or(Check::Na, |s| Check::from_bool(s <= orbits));
                rows.push(row(stat, orbits as f64, triple_ref, check));
            }
            Err(Error::BudgetExceeded { .. }) => rows.push(skipped(stat, triple_ref)),
            Err(err) => return Err(err),
        }
    }

    let pair_ref = 2.0 * qf.sqrt() * e;
    let mut deviation: f64 = 0.0;
    for t in field.nonzero_elements() {
        deviation = deviation.max(distance_pair_count(set, t)?.deviation.abs());
    }
    rows.push(row(
        Statistic::PairDeviation,
        deviation,
        pair_ref,
        Check::from_bool(deviation <= pair_ref),
    ));

    let mut analyzer = HingeAnalyzer::new(set)?;
    let mut remainder: f64 = 0.0;
    for a in field.nonzero_elements() {
        for b in field.nonzero_elements() {
            remainder = remainder.max(analyzer.exact_report(a, b)?.remainder.abs());
        }
    }
    let hinge_ref = qf * e;
    rows.push(row(
        Statistic::HingeRemainder,
        remainder,
        hinge_ref,
        Check::from_bool(remainder <= HINGE_RATIO_LIMIT * hinge_ref),
    ));

    let bound = 4 * q as u128 * n as u128;
    let mut worst: Option<(f64, bool)> = None;
    let mut energy: u64 = 0;
    for a in field.nonzero_elements() {
        let fe = fluctuation_energy(set, a)?;
        let within = fe.at_most(bound);
        worst = Some(match worst {
            Some((v, ok)) => (v.max(fe.value()), ok && within),
            None => (fe.value(), within),
        });
        energy = energy.max(hinge_energy(set, a)?);
    }
    let (fluct, fluct_ok) = worst.expect("q >= 3 has nonzero radii");
    rows.push(row(
        Statistic::FluctuationEnergy,
        fluct,
        bound as f64,
        Check::from_bool(fluct_ok),
    ));
    rows.push(row(Statistic::HingeEnergy, energy as f64, 8.0 * qf * e, Check::Na));
    Ok(rows)
}

/// Every `(q, rho, seed)` cell of the config, cells evaluated in parallel and
/// emitted in config order.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let mut cells = Vec::new();
    for &q in &config.q {
        for &rho in &config.density {
            for &seed in &config.seed {
                cells.push((q, rho, seed));
            }
        }
    }
    let per_cell: Vec<Vec<SweepRow>> = cells
        .par_iter()
        .map(|&(q, rho, seed)| sweep_cell(PrimeField::new(q)?, rho, seed, config.budget))
        .collect::<Result<_>>()?;
    Ok(per_cell.into_iter().flatten().collect())
}
