use std::path::PathBuf;
use std::process::Command;

fn header() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "include", "shacl_dl.h"].iter().collect()
}

const EXPORTS: [&str; 15] = [
    "shacl_last_error",
    "shacl_string_free",
    "shacl_graph_parse",
    "shacl_graph_fact_count",
    "shacl_graph_free",
    "shacl_schema_parse_dsl",
    "shacl_schema_import_turtle",
    "shacl_schema_to_dsl",
    "shacl_schema_free",
    "shacl_validate",
    "shacl_report_conforms",
    "shacl_report_violation_count",
    "shacl_report_to_json",
    "shacl_report_to_text",
    "shacl_report_free",
];

#[test]
fn header_declares_the_whole_surface() {
    let text = std::fs::read_to_string(header()).unwrap();
    for f in EXPORTS {
        assert!(text.contains(&format!("{f}(")), "{f} missing");
    }
    for handle in ["ShaclGraph", "ShaclSchema", "ShaclReport"] {
        assert!(text.contains(&format!("typedef struct {handle} {handle};")), "{handle} not opaque");
    }
    assert!(text.contains("SHACL_STATUS_OK = 0"));
    assert!(text.contains("SHACL_STATUS_PANIC = 8"));
    assert!(text.contains("SHACL_GRAPH_FORMAT_FACTS = 1"));
}

const PROGRAM: &str = r#"
#include "shacl_dl.h"

int check(const char *graph_text, const char *schema_text) {
    ShaclGraph *graph = NULL;
    ShaclSchema *schema = NULL;
    ShaclReport *report = NULL;
    char *json = NULL;
    if (shacl_graph_parse(graph_text, SHACL_GRAPH_FORMAT_FACTS, &graph) != SHACL_STATUS_OK) return -1;
    if (shacl_schema_parse_dsl(schema_text, &schema) != SHACL_STATUS_OK) return -1;
    if (shacl_validate(graph, schema, &report) != SHACL_STATUS_OK) return -1;
    int ok = shacl_report_conforms(report) && shacl_report_violation_count(report) == 0;
    if (shacl_report_to_json(report, &json) == SHACL_STATUS_OK) shacl_string_free(json);
    const char *message = shacl_last_error();
    (void)message;
    shacl_report_free(report);
    shacl_schema_free(schema);
    shacl_graph_free(graph);
    return ok;
}
"#;

fn compiles_with(compiler: &str, extra: &[&str]) {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use_header.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = header().parent().unwrap().to_owned();
    let output = Command::new(compiler)
        .args(extra)
        .args(["-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(include)
        .arg(&src)
        .output()
        .unwrap_or_else(|e| panic!("cannot run {compiler}: {e}"));
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
}

#[test]
fn header_compiles_as_c() {
    compiles_with("cc", &["-std=c99", "-x", "c"]);
}

#[test]
fn header_compiles_as_cpp() {
    compiles_with("c++", &["-x", "c++"]);
}
