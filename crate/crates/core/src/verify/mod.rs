//! Exact checks of exponent relations, for quadruples and for stored runs.

pub mod quadruple;
pub mod report;
pub mod run;

pub use quadruple::{
    check_all, check_jarnik, check_khintchine, check_refined_transference, check_spectrum, diagnostics,
    predict_quadruple, Check, Diagnostics, ExponentQuadruple, Relation,
};
pub use report::{to_json, verify_quadruple, QuadrupleReport};
pub use run::{certify_run, empirical_quadruple, RunCheckOptions, RunReport};
