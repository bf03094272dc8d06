//! C interface to the `shacl-dl` validation engine.
//!
//! Objects cross the boundary as opaque handles created by `shacl_*_parse`
//! style constructors and released with the matching `*_free`. Every
//! fallible call returns a [`ShaclStatus`]; on failure the message is
//! available from [`shacl_last_error`] on the same thread. Strings handed
//! out by the library are NUL-terminated UTF-8 and must be released with
//! [`shacl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shacl_dl::eval::ConformanceReport;
use shacl_dl::import::{import_shapes_graph_with_prefixes, PrefixMap};
use shacl_dl::model::{Graph, ShapeSchema};
use shacl_dl::natural::validate;
use shacl_dl::report::{conformance_json, conformance_text, Names};
use shacl_dl::text::{parse_graph, parse_schema, serialize_schema, GraphFormat};
use shacl_dl::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShaclStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    Unsupported = 4,
    SchemaError = 5,
    EvaluationError = 6,
    InvalidArgument = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShaclGraphFormat {
    Ntriples = 0,
    Facts = 1,
}

/// A parsed data graph.
pub struct ShaclGraph {
    graph: Graph,
}

/// A shape schema, with the prefixes it was written with.
pub struct ShaclSchema {
    schema: ShapeSchema,
    prefixes: PrefixMap,
}

/// The outcome of validating a graph.
pub struct ShaclReport {
    report: ConformanceReport,
    names: Names,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(ShaclStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let status = match err {
            Error::Parse { .. } => ShaclStatus::ParseError,
            Error::UnsupportedConstruct { .. } => ShaclStatus::Unsupported,
            Error::CyclicSchema { .. } | Error::DuplicateDefinition(_) => ShaclStatus::SchemaError,
            Error::InvalidArgument(_) => ShaclStatus::InvalidArgument,
            _ => ShaclStatus::EvaluationError,
        };
        Failure(status, err.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ShaclStatus::NullArgument, format!("{what} is null"))
}

/// Runs `body`, recording any failure or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ShaclStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ShaclStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal error: the library panicked".to_owned());
            ShaclStatus::Panic
        }
    }
}

unsafe fn text<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|e| Failure(ShaclStatus::InvalidUtf8, format!("{what} is not valid UTF-8: {e}")))
}

unsafe fn handle<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_param<'a, T>(out: *mut *mut T) -> Result<&'a mut *mut T, Failure> {
    let slot = out.as_mut().ok_or_else(|| null("output pointer"))?;
    *slot = ptr::null_mut();
    Ok(slot)
}

fn give<T>(slot: &mut *mut T, value: T) {
    *slot = Box::into_raw(Box::new(value));
}

fn give_string(slot: &mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(|_| Failure(ShaclStatus::InvalidArgument, "output contains NUL".to_owned()))?;
    *slot = s.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn shacl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn shacl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph from N-Triples or simple facts.
///
/// # Safety
/// `input` must be null or a NUL-terminated string; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn shacl_graph_parse(
    input: *const c_char,
    format: ShaclGraphFormat,
    out: *mut *mut ShaclGraph,
) -> ShaclStatus {
    guard(|| {
        let slot = out_param(out)?;
        let format = match format {
            ShaclGraphFormat::Ntriples => GraphFormat::NTriples,
            ShaclGraphFormat::Facts => GraphFormat::SimpleFacts,
        };
        let graph = parse_graph(text(input, "input")?, format)?;
        give(slot, ShaclGraph { graph });
        Ok(())
    })
}

/// Number of facts in the graph; 0 for null.
///
/// # Safety
/// `graph` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn shacl_graph_fact_count(graph: *const ShaclGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.len())
}

/// # Safety
/// `graph` must be null or a graph handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn shacl_graph_free(graph: *mut ShaclGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Parses a schema written in the shape DSL.
///
/// # Safety
/// As for [`shacl_graph_parse`].
#[no_mangle]
pub unsafe extern "C" fn shacl_schema_parse_dsl(input: *const c_char, out: *mut *mut ShaclSchema) -> ShaclStatus {
    guard(|| {
        let slot = out_param(out)?;
        let schema = parse_schema(text(input, "input")?)?;
        give(
            slot,
            ShaclSchema {
                schema,
                prefixes: PrefixMap::default(),
            },
        );
        Ok(())
    })
}

/// Imports a SHACL shapes graph written in Turtle.
///
/// # Safety
/// As for [`shacl_graph_parse`].
#[no_mangle]
pub unsafe extern "C" fn shacl_schema_import_turtle(input: *const c_char, out: *mut *mut ShaclSchema) -> ShaclStatus {
    guard(|| {
        let slot = out_param(out)?;
        let (schema, prefixes) = import_shapes_graph_with_prefixes(text(input, "input")?)?;
        give(slot, ShaclSchema { schema, prefixes });
        Ok(())
    })
}

/// Writes the schema in the shape DSL into a new string.
///
/// # Safety
/// `schema` must be null or live; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn shacl_schema_to_dsl(schema: *const ShaclSchema, out: *mut *mut c_char) -> ShaclStatus {
    guard(|| {
        let slot = out_param(out)?;
        give_string(slot, serialize_schema(&handle(schema, "schema")?.schema))
    })
}

/// # Safety
/// `schema` must be null or a schema handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn shacl_schema_free(schema: *mut ShaclSchema) {
    if !schema.is_null() {
        drop(Box::from_raw(schema));
    }
}

/// Validates `graph` against `schema`.
///
/// # Safety
/// Handles must be null or live; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn shacl_validate(
    graph: *const ShaclGraph,
    schema: *const ShaclSchema,
    out: *mut *mut ShaclReport,
) -> ShaclStatus {
    guard(|| {
        let slot = out_param(out)?;
        let graph = handle(graph, "graph")?;
        let schema = handle(schema, "schema")?;
        let report = validate(&graph.graph, &schema.schema)?;
        give(
            slot,
            ShaclReport {
                report,
                names: Names::new(schema.prefixes.clone()),
            },
        );
        Ok(())
    })
}

/// Whether the graph conforms; false for null.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn shacl_report_conforms(report: *const ShaclReport) -> bool {
    report.as_ref().is_some_and(|r| r.report.conforms())
}

/// Number of violations; 0 for null.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn shacl_report_violation_count(report: *const ShaclReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.violations().len())
}

/// The report as JSON, in the same shape the command line prints.
///
/// # Safety
/// `report` must be null or live; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn shacl_report_to_json(report: *const ShaclReport, out: *mut *mut c_char) -> ShaclStatus {
    guard(|| {
        let slot = out_param(out)?;
        let r = handle(report, "report")?;
        give_string(slot, conformance_json(&r.report, &r.names))
    })
}

/// The report as human-readable text.
///
/// # Safety
/// As for [`shacl_report_to_json`].
#[no_mangle]
pub unsafe extern "C" fn shacl_report_to_text(report: *const ShaclReport, out: *mut *mut c_char) -> ShaclStatus {
    guard(|| {
        let slot = out_param(out)?;
        let r = handle(report, "report")?;
        give_string(slot, conformance_text(&r.report, &r.names))
    })
}

/// # Safety
/// `report` must be null or a report handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn shacl_report_free(report: *mut ShaclReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
