use std::ffi::{c_char, CStr, CString};
use std::ptr;

use shacl_dl_ffi::*;

const GRAPH: &str = "<http://www.example.org/a> <http://www.example.org/r> <http://www.example.org/b> .\n";
const SHAPES: &str = "@prefix sh: <http://www.w3.org/ns/shacl#> .
@prefix ex: <http://www.example.org/> .
ex:MyShape a sh:NodeShape ;
  sh:targetSubjectsOf ex:r ;
  sh:not [ sh:and ( ex:NoDef ex:AlsoNoDef ) ] .
";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> Option<String> {
    let p = shacl_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned())
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    shacl_string_free(s);
    out
}

#[test]
fn validate_round_trip() {
    unsafe {
        let mut graph = ptr::null_mut();
        assert_eq!(shacl_graph_parse(c(GRAPH).as_ptr(), ShaclGraphFormat::Ntriples, &mut graph), ShaclStatus::Ok);
        assert_eq!(shacl_graph_fact_count(graph), 1);

        let mut schema = ptr::null_mut();
        assert_eq!(shacl_schema_import_turtle(c(SHAPES).as_ptr(), &mut schema), ShaclStatus::Ok);

        let mut report = ptr::null_mut();
        assert_eq!(shacl_validate(graph, schema, &mut report), ShaclStatus::Ok);
        assert!(!shacl_report_conforms(report));
        assert_eq!(shacl_report_violation_count(report), 1);

        let mut json = ptr::null_mut();
        assert_eq!(shacl_report_to_json(report, &mut json), ShaclStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(json["violations"][0]["focus"], "ex:a");

        let mut text = ptr::null_mut();
        assert_eq!(shacl_report_to_text(report, &mut text), ShaclStatus::Ok);
        assert!(take(text).starts_with("conforms: false (1 violation)\n"));

        shacl_report_free(report);
        shacl_schema_free(schema);
        shacl_graph_free(graph);
    }
}

#[test]
fn dsl_schemas_and_serialization() {
    unsafe {
        let mut schema = ptr::null_mut();
        let src = c("shape S := exists r . top .\ntarget {b} <= S .\n");
        assert_eq!(shacl_schema_parse_dsl(src.as_ptr(), &mut schema), ShaclStatus::Ok);
        let mut dsl = ptr::null_mut();
        assert_eq!(shacl_schema_to_dsl(schema, &mut dsl), ShaclStatus::Ok);
        assert_eq!(take(dsl), "shape S := >= 1 r . top .\ntarget {b} <= S .\n");

        let mut graph = ptr::null_mut();
        assert_eq!(shacl_graph_parse(c("r(x, y).").as_ptr(), ShaclGraphFormat::Facts, &mut graph), ShaclStatus::Ok);
        let mut report = ptr::null_mut();
        assert_eq!(shacl_validate(graph, schema, &mut report), ShaclStatus::Ok);
        assert!(!shacl_report_conforms(report));
        shacl_report_free(report);
        shacl_graph_free(graph);
        shacl_schema_free(schema);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut schema = ptr::null_mut();
        assert_eq!(shacl_schema_parse_dsl(c("target S &").as_ptr(), &mut schema), ShaclStatus::ParseError);
        assert!(schema.is_null());
        assert!(last_error().unwrap().starts_with("parse error at 1:"));

        let pattern = c("@prefix sh: <http://www.w3.org/ns/shacl#> .\n<http://x/S> sh:pattern \"a\" .\n");
        assert_eq!(shacl_schema_import_turtle(pattern.as_ptr(), &mut schema), ShaclStatus::Unsupported);
        assert!(last_error().unwrap().contains("sh:pattern"));

        let cyclic = c("shape A := B .\nshape B := A .\n");
        assert_eq!(shacl_schema_parse_dsl(cyclic.as_ptr(), &mut schema), ShaclStatus::SchemaError);

        let bad = [0xffu8, 0];
        let mut graph = ptr::null_mut();
        assert_eq!(
            shacl_graph_parse(bad.as_ptr().cast(), ShaclGraphFormat::Facts, &mut graph),
            ShaclStatus::InvalidUtf8
        );

        assert_eq!(shacl_schema_parse_dsl(c("").as_ptr(), &mut schema), ShaclStatus::Ok);
        assert!(last_error().is_none());
        shacl_schema_free(schema);
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut graph = ptr::null_mut();
        assert_eq!(shacl_graph_parse(ptr::null(), ShaclGraphFormat::Facts, &mut graph), ShaclStatus::NullArgument);
        assert_eq!(
            shacl_graph_parse(c("").as_ptr(), ShaclGraphFormat::Facts, ptr::null_mut()),
            ShaclStatus::NullArgument
        );
        let mut report = ptr::null_mut();
        assert_eq!(shacl_validate(ptr::null(), ptr::null(), &mut report), ShaclStatus::NullArgument);
        assert!(last_error().unwrap().contains("graph is null"));
        assert!(!shacl_report_conforms(ptr::null()));
        assert_eq!(shacl_report_violation_count(ptr::null()), 0);
        assert_eq!(shacl_graph_fact_count(ptr::null()), 0);
        shacl_graph_free(ptr::null_mut());
        shacl_schema_free(ptr::null_mut());
        shacl_report_free(ptr::null_mut());
        shacl_string_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut schema = ptr::null_mut();
        assert_eq!(shacl_schema_parse_dsl(c("!").as_ptr(), &mut schema), ShaclStatus::ParseError);
    }
    std::thread::spawn(|| assert!(last_error().is_none())).join().unwrap();
    assert!(last_error().is_some());
}
