//! Seeded random sets, point-set files, sweep configuration and CSV reports.

mod config;
mod pointset_io;
mod random;
mod report;
mod sweep;

pub use config::{ExperimentConfig, Mode};
pub use pointset_io::{load_pointset, parse_pointset, save_pointset, write_pointset};
pub use random::{random_set, target_cardinality};
pub use report::{
    charsum_table, counterexample_row, format_decimal, hinge_table, sphere_table, triangle_row, write_csv, CharsumRow,
    Check, CounterexampleRow, HingeRow, SphereRow, Table, TriangleRow, SCHEMA_VERSION,
};
pub use sweep::{run_sweep, sweep_cell, Statistic, SweepRow};
