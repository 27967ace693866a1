use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use circflow::certificates::{Certificate, Witness};
use circflow_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(cf_last_error()) }.to_str().unwrap().to_string()
}

fn family(name: &str, param: usize) -> *mut CfGraph {
    let name = CString::new(name).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { cf_graph_family(name.as_ptr(), param, &mut g) },
        CfStatus::Verified
    );
    g
}

#[test]
fn petersen_flow_number_and_certificate_round_trip() {
    unsafe {
        let g = family("petersen", 0);
        assert_eq!((cf_graph_vertex_count(g), cf_graph_edge_count(g)), (10, 15));
        let (mut num, mut den) = (0i64, 0i64);
        let mut cert = ptr::null_mut();
        assert_eq!(
            cf_circular_flow_number(g, 16, &mut num, &mut den, &mut cert),
            CfStatus::Verified
        );
        assert_eq!((num, den), (5, 1));
        let json = cf_certificate_to_json(cert);
        let mut back = ptr::null_mut();
        assert_eq!(cf_certificate_parse(json, &mut back), CfStatus::Verified);
        assert_eq!(cf_certificate_reverify(back, g), CfStatus::Verified);
        cf_string_free(json);
        cf_certificate_free(cert);
        cf_certificate_free(back);
        cf_graph_free(g);
    }
}

#[test]
fn graph_text_round_trip_and_chromatic_index() {
    unsafe {
        let g = family("flower", 2);
        let text = cf_graph_to_text(g);
        let mut h = ptr::null_mut();
        assert_eq!(cf_graph_parse(text, &mut h), CfStatus::Verified);
        let (mut lo, mut hi) = (0usize, 0usize);
        assert_eq!(
            cf_chromatic_index(h, 0.0, &mut lo, &mut hi, ptr::null_mut()),
            CfStatus::Verified
        );
        assert_eq!((lo, hi), (4, 4));
        cf_string_free(text);
        cf_graph_free(g);
        cf_graph_free(h);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let bad = CString::new("not a graph").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(cf_graph_parse(bad.as_ptr(), &mut g), CfStatus::ParseError);
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        let name = CString::new("dodecahedron").unwrap();
        assert_eq!(cf_graph_family(name.as_ptr(), 0, &mut g), CfStatus::InvalidArgument);
        assert!(last_error().contains("dodecahedron"));
        assert_eq!(cf_graph_parse(ptr::null(), &mut g), CfStatus::NullPointer);
        assert_eq!(cf_certificate_verdict(ptr::null()), CfStatus::NullPointer);
        let (mut n, mut d) = (0, 0);
        assert_eq!(
            cf_circular_flow_number(ptr::null(), 16, &mut n, &mut d, ptr::null_mut()),
            CfStatus::NullPointer
        );
    }
}

#[test]
fn tampered_flow_is_refuted() {
    unsafe {
        let g = family("complete", 4);
        let (mut num, mut den) = (0, 0);
        let mut cert = ptr::null_mut();
        cf_circular_flow_number(g, 16, &mut num, &mut den, &mut cert);
        let raw = cf_certificate_to_json(cert);
        let parsed = Certificate::from_json(CStr::from_ptr(raw).to_str().unwrap()).unwrap();
        cf_string_free(raw);
        let Witness::Flow { text } = parsed.witness else {
            panic!("flow witness expected");
        };
        let good = CString::new(text.clone()).unwrap();
        assert_eq!(cf_verify_flow(g, good.as_ptr(), ptr::null_mut()), CfStatus::Verified);
        let flow = CString::new(text.replacen(" 1\n", " 7\n", 1)).unwrap();
        assert_eq!(cf_verify_flow(g, flow.as_ptr(), ptr::null_mut()), CfStatus::Refuted);
        assert!(!last_error().is_empty());
        cf_certificate_free(cert);
        cf_graph_free(g);
    }
}

#[test]
fn big_graph_is_inconclusive() {
    unsafe {
        let g = family("flower", 3);
        let (mut n, mut d) = (0, 0);
        assert_eq!(
            cf_circular_flow_number(g, 16, &mut n, &mut d, ptr::null_mut()),
            CfStatus::Inconclusive
        );
        cf_graph_free(g);
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/circflow.h");
    let out = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror", header])
        .output()
        .expect("a C compiler is on PATH");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
