//! The generated header must compile as plain C and declare the whole API.

use std::path::PathBuf;
use std::process::Command;

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/dioph.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "dioph_construct",
        "dioph_run_from_json",
        "dioph_run_to_json",
        "dioph_run_verify",
        "dioph_run_free",
        "dioph_predict_quadruple",
        "dioph_verify_quadruple",
        "dioph_target_parse",
        "dioph_target_free",
        "dioph_analyze",
        "dioph_trace_len",
        "dioph_trace_to_csv",
        "dioph_trace_summary",
        "dioph_trace_free",
        "dioph_string_free",
        "dioph_last_error_message",
        "DIOPH_STATUS_RESOURCE_GUARD",
        "typedef struct DiophRun DiophRun",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c99() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(cc.status.success());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        r#"#include "dioph.h"
int main(void) {
    DiophRun *run = 0;
    char *json = 0;
    DiophStatus st = dioph_construct("{}", "20", 3, 0, &run);
    if (st == DIOPH_STATUS_OK) {
        dioph_run_to_json(run, &json);
        dioph_string_free(json);
        dioph_run_free(run);
    }
    return (int)st + (dioph_last_error_message() == 0);
}
"#,
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Wextra", "-pedantic", "-Werror", "-fsyntax-only", "-I"])
        .arg(header().parent().unwrap())
        .arg(&src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
