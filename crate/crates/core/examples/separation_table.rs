//! The separation table for F^k_h as CSV on stdout.
//!
//! cargo run --release --example separation_table

use cnf_hierarchy::experiment::{run_separation, write_rows, ExperimentSpec, Format};

fn main() {
    let spec = ExperimentSpec {
        k_range: 0..=2,
        h_range: 2..=4,
        ..Default::default()
    };
    let rows = run_separation(&spec).unwrap();
    write_rows(&rows, Format::Table, &mut std::io::stdout()).unwrap();
}
