use std::io::Write;

use dioph_core::cli::{main_with, PRECISION_ENV};

fn main() {
    let precision = std::env::var(PRECISION_ENV).ok();
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    let code = main_with(std::env::args_os(), precision.as_deref(), &mut out, &mut err);
    out.flush().ok();
    std::process::exit(code);
}
