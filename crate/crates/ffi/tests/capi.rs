use annotmc_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

const K4_TAIL: &str = "graph k4_tail\nv 0..7\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\nannot 0 7\n";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = annotmc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse_graph(text: &str) -> *mut AnnotmcGraph {
    let mut g = ptr::null_mut();
    let s = unsafe { annotmc_graph_parse(c(text).as_ptr(), &mut g) };
    assert_eq!(s, AnnotmcStatus::Ok);
    g
}

fn parse_formula(text: &str, free: &str) -> *mut AnnotmcFormula {
    let mut f = ptr::null_mut();
    let s = unsafe { annotmc_formula_parse(c(text).as_ptr(), c(free).as_ptr(), &mut f) };
    assert_eq!(s, AnnotmcStatus::Ok, "{}", last_error());
    f
}

fn param(g: *const AnnotmcGraph, kind: &str) -> usize {
    let mut v = usize::MAX;
    let s = unsafe { annotmc_param(g, c(kind).as_ptr(), &mut v) };
    assert_eq!(s, AnnotmcStatus::Ok, "{}", last_error());
    v
}

#[test]
fn parse_count_and_free() {
    let g = parse_graph(K4_TAIL);
    unsafe {
        assert_eq!(annotmc_graph_vertex_count(g), 8);
        assert_eq!(annotmc_graph_edge_count(g), 10);
        annotmc_graph_free(g);
    }
}

#[test]
fn evaluate_sentence_and_open_formula() {
    let g = parse_graph(K4_TAIL);
    let tri = parse_formula("exists x. exists y. exists z. (E(x,y) & E(y,z) & E(x,z))", "");
    let adj = parse_formula("E(x,y)", "x y");
    let mut verdict = false;
    unsafe {
        assert_eq!(annotmc_evaluate(g, tri, ptr::null(), &mut verdict), AnnotmcStatus::Ok);
        assert!(verdict);
        let env = c("x=3 y=4");
        assert_eq!(annotmc_evaluate(g, adj, env.as_ptr(), &mut verdict), AnnotmcStatus::Ok);
        assert!(verdict);
        let env = c("x=0 y=7");
        assert_eq!(annotmc_evaluate(g, adj, env.as_ptr(), &mut verdict), AnnotmcStatus::Ok);
        assert!(!verdict);
        let s = annotmc_evaluate(g, adj, ptr::null(), &mut verdict);
        assert_ne!(s, AnnotmcStatus::Ok, "free variables without bindings");
        let mut unbound = ptr::null_mut();
        let s = annotmc_formula_parse(c("E(x,y)").as_ptr(), ptr::null(), &mut unbound);
        assert_eq!(s, AnnotmcStatus::Scope);
        annotmc_formula_free(tri);
        annotmc_formula_free(adj);
        annotmc_graph_free(g);
    }
}

#[test]
fn annotation_drives_parameters() {
    let mut g = ptr::null_mut();
    unsafe {
        let fam = c("clique");
        assert_eq!(annotmc_graph_generate(fam.as_ptr(), 6, &mut g), AnnotmcStatus::Ok);
        let ids = [0u32, 1, 2];
        assert_eq!(annotmc_graph_set_annotation(g, ids.as_ptr(), 3), AnnotmcStatus::Ok);
        assert_eq!(param(g, "ttw"), 2);
        assert_eq!(param(g, "size"), 3);
        assert_eq!(annotmc_graph_set_annotation(g, ptr::null(), 0), AnnotmcStatus::Ok);
        assert_eq!(param(g, "size"), 0);
        let bad = [99u32];
        assert_eq!(annotmc_graph_set_annotation(g, bad.as_ptr(), 1), AnnotmcStatus::Semantic);
        annotmc_graph_free(g);
    }
}

#[test]
fn generated_outer_grid() {
    let mut g = ptr::null_mut();
    unsafe {
        let fam = c("outer_grid");
        assert_eq!(annotmc_graph_generate(fam.as_ptr(), 3, &mut g), AnnotmcStatus::Ok);
        assert_eq!(annotmc_graph_vertex_count(g), 9);
        assert_eq!(param(g, "adeg"), 4);
        annotmc_graph_free(g);
    }
}

#[test]
fn print_round_trips() {
    let g = parse_graph(K4_TAIL);
    unsafe {
        let s = annotmc_graph_print(g);
        assert!(!s.is_null());
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        annotmc_string_free(s);
        let h = parse_graph(&text);
        assert_eq!(annotmc_graph_edge_count(h), 10);
        assert_eq!(param(h, "size"), 2);
        annotmc_graph_free(h);
        annotmc_graph_free(g);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut g = ptr::null_mut();
    let mut f = ptr::null_mut();
    unsafe {
        let s = annotmc_graph_parse(c("graph x\nv 0 1\ne 0 5\n").as_ptr(), &mut g);
        assert_eq!(s, AnnotmcStatus::Parse);
        assert!(g.is_null());
        assert!(!last_error().is_empty());

        let s = annotmc_formula_parse(c("exists x. (E(x,").as_ptr(), ptr::null(), &mut f);
        assert_eq!(s, AnnotmcStatus::Syntax);

        assert_eq!(annotmc_graph_parse(ptr::null(), &mut g), AnnotmcStatus::NullPointer);
        assert_eq!(annotmc_formula_parse(c("true").as_ptr(), ptr::null(), ptr::null_mut()), AnnotmcStatus::NullPointer);

        let bytes = [0xffu8, 0xfe, 0];
        let s = annotmc_graph_parse(bytes.as_ptr().cast(), &mut g);
        assert_eq!(s, AnnotmcStatus::InvalidUtf8);

        let h = parse_graph(K4_TAIL);
        let mut v = 0usize;
        assert_eq!(annotmc_param(h, c("nope").as_ptr(), &mut v), AnnotmcStatus::Semantic);
        assert_eq!(annotmc_graph_vertex_count(ptr::null()), 0);
        assert!(annotmc_graph_print(ptr::null()).is_null());
        annotmc_graph_free(ptr::null_mut());
        annotmc_formula_free(ptr::null_mut());
        annotmc_string_free(ptr::null_mut());
        annotmc_graph_free(h);
    }
}

#[test]
fn status_names_are_distinct() {
    let all = [
        AnnotmcStatus::Ok,
        AnnotmcStatus::NullPointer,
        AnnotmcStatus::InvalidUtf8,
        AnnotmcStatus::Parse,
        AnnotmcStatus::Syntax,
        AnnotmcStatus::Scope,
        AnnotmcStatus::Semantic,
        AnnotmcStatus::Envelope,
        AnnotmcStatus::Precondition,
        AnnotmcStatus::Contract,
        AnnotmcStatus::Panic,
    ];
    let names: std::collections::BTreeSet<_> = all
        .iter()
        .map(|&s| unsafe { CStr::from_ptr(annotmc_status_name(s)) }.to_str().unwrap())
        .collect();
    assert_eq!(names.len(), all.len());
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/annotmc.h");
    for name in [
        "annotmc_last_error",
        "annotmc_status_name",
        "annotmc_graph_parse",
        "annotmc_graph_generate",
        "annotmc_graph_free",
        "annotmc_graph_vertex_count",
        "annotmc_graph_edge_count",
        "annotmc_graph_set_annotation",
        "annotmc_graph_print",
        "annotmc_string_free",
        "annotmc_formula_parse",
        "annotmc_formula_free",
        "annotmc_evaluate",
        "annotmc_param",
        "typedef struct AnnotmcGraph AnnotmcGraph",
        "ANNOTMC_STATUS_CONTRACT = 9",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
