mod common;

use common::{full_scan, neighbour_scan, oracle_shape, shape};
use dioph_core::approx::{search_records, search_records_with, SearchOptions, Which};
use dioph_core::target::parse_target;

const TARGETS: [&str; 5] = ["sqrt:2,3", "sqrt:5,7", "sqrt:3,10", "fib:30", "lit:1234567/2718281,3141592/5772157,0"];

#[test]
fn search_matches_neighbour_oracle_up_to_1000() {
    for spec in TARGETS {
        let t = parse_target(spec, 60).unwrap();
        for which in [Which::L, Which::M] {
            let fast = search_records(&t, 1000, which).unwrap();
            let slow = neighbour_scan(&t, 1000, which);
            assert_eq!(shape(&fast), oracle_shape(&slow), "{spec} {which}");
        }
    }
}

#[test]
fn neighbour_oracle_matches_full_scan() {
    for spec in TARGETS {
        let t = parse_target(spec, 60).unwrap();
        for which in [Which::L, Which::M] {
            assert_eq!(neighbour_scan(&t, 40, which), full_scan(&t, 40, which), "{spec} {which}");
        }
    }
}

#[test]
fn worker_count_does_not_change_records() {
    let t = parse_target("sqrt:5,7", 60).unwrap();
    let one = search_records_with(&t, 3000, Which::L, &SearchOptions { workers: Some(1) }).unwrap();
    for n in [2, 3, 7] {
        let many = search_records_with(&t, 3000, Which::L, &SearchOptions { workers: Some(n) }).unwrap();
        assert_eq!(one, many, "{n} workers");
    }
}
