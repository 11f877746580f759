//! Best approximations for the linear form `L` and the simultaneous form `M`.

pub mod dual;
pub mod search;
pub mod trace;

pub use dual::{dual_lines_from_points, dual_points_from_lines, trace_witnesses, WitnessCheck};
pub use search::{search_records, search_records_with, ApproxRecord, SearchOptions, Which};
pub use trace::{
    brute_force_minima, brute_force_minima_with, exponent_trace, plot_csv, summarize, to_csv, ExponentTrace, Summary,
    CSV_HEADER,
};
