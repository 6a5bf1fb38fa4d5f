//! Parse a DIMACS file, print its measures, and write it back.
//!
//! cargo run --example dimacs_io -- path/to/file.cnf

use cnf_hierarchy::dimacs::{emit_dimacs, parse_dimacs_file};

const SAMPLE: &str = "c a small Horn set\np cnf 3 4\n1 0\n-1 2 0\n-2 3 0\n-3 -1 0\n";

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => SAMPLE.to_string(),
    };
    let file = match parse_dimacs_file(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    for c in &file.comments {
        println!("comment: {c}");
    }
    let m = file.clauses.measures();
    println!("n={} c={} ell={} deficiency={}", m.n, m.c, m.ell, m.delta);
    println!("classification: {:?}", file.clauses.classify());
    print!("{}", emit_dimacs(&file.clauses));
}
