//! Run every verification suite on small grids and print the JSON reports,
//! then the same with the mutated formulas (every asserting suite must fail).

use iquantum::cli::{run_suite, GridKind, RunSpec, SUITES};
use iquantum::SuiteOptions;

fn main() {
    let spec = RunSpec { grid: GridKind::Quick, ..Default::default() };
    let mutated = RunSpec { opts: SuiteOptions::mutated(), ..spec.clone() };
    for s in SUITES {
        let r = run_suite(s, &spec).unwrap();
        let m = run_suite(s, &mutated).unwrap();
        println!("{}", r.summary_line());
        println!("{}  (mutated)", m.summary_line());
    }
    let r = run_suite("qcomb-T", &spec).unwrap();
    println!("{}", r.to_json());
}
