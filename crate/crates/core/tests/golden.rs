mod common;

use std::path::PathBuf;

use common::{neighbour_scan, oracle_shape, shape};
use dioph_core::approx::{brute_force_minima_with, to_csv, SearchOptions, Which};
use dioph_core::target::parse_target;

fn golden(which: Which) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/sqrt_2_3_{which}_5000.csv"));
    std::fs::read_to_string(p).unwrap()
}

fn csv(which: Which, workers: Option<usize>) -> String {
    let t = parse_target("sqrt:2,3", 60).unwrap();
    to_csv(&brute_force_minima_with(&t, 5000, which, &SearchOptions { workers }).unwrap())
}

#[test]
fn golden_csv_is_byte_stable() {
    for which in [Which::L, Which::M] {
        let expected = golden(which);
        for workers in [None, Some(1), Some(2), Some(5), None] {
            assert_eq!(csv(which, workers), expected, "{which} with {workers:?} workers");
        }
    }
}

#[test]
fn golden_m_agrees_with_oracle() {
    let t = parse_target("sqrt:2,3", 60).unwrap();
    let trace = brute_force_minima_with(&t, 5000, Which::M, &SearchOptions::default()).unwrap();
    assert_eq!(shape(&trace.records), oracle_shape(&neighbour_scan(&t, 5000, Which::M)));
}

/// About a minute; run with `cargo test --test golden -- --ignored`.
#[test]
#[ignore]
fn golden_l_agrees_with_oracle() {
    let t = parse_target("sqrt:2,3", 60).unwrap();
    let trace = brute_force_minima_with(&t, 5000, Which::L, &SearchOptions::default()).unwrap();
    assert_eq!(shape(&trace.records), oracle_shape(&neighbour_scan(&t, 5000, Which::L)));
}
