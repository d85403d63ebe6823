use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::Path;
use std::process::Command;
use std::ptr;

use meshtree_ffi::*;

const K4: &str = "v 4\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n";
const TWO_THREE: &str = "dim 2\nboundary 1 1 1\n0\nboundary 2 1 2\n2 3\n";

fn parse_graph(text: &str) -> *mut MtGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { mt_graph_parse(c.as_ptr(), &mut g) }, MtStatus::Ok);
    g
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { mt_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mt_last_error_message()) }.to_str().unwrap().to_owned()
}

#[test]
fn graph_round_trip() {
    let g = parse_graph(K4);
    unsafe {
        assert_eq!(mt_graph_vertex_count(g), 4);
        assert_eq!(mt_graph_edge_count(g), 6);
        let mut count = 0u64;
        assert_eq!(mt_count_spanning_trees(g, &mut count), MtStatus::Ok);
        assert_eq!(count, 16);
        let mut s = ptr::null_mut();
        assert_eq!(mt_mesh_determinant(g, ptr::null(), 0, &mut s), MtStatus::Ok);
        assert_eq!(take(s), "16");
        let star = [0usize, 1, 2];
        assert_eq!(mt_lattice_index(g, star.as_ptr(), star.len(), &mut s), MtStatus::Ok);
        assert_eq!(take(s), "16");
        mt_graph_free(g);
    }
}

#[test]
fn graph_from_arrays() {
    let tails = [0usize, 1, 2];
    let heads = [1usize, 2, 0];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(mt_graph_new(3, tails.as_ptr(), heads.as_ptr(), 3, &mut g), MtStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(mt_graph_report_json(g, MtReport::Verify, ptr::null(), 0, &mut s), MtStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(report["charpoly_identity"], true);
        assert_eq!(report["det"], 3);
        assert_eq!(mt_graph_new(2, tails.as_ptr(), heads.as_ptr(), 3, &mut g), MtStatus::InvalidInput);
        mt_graph_free(g);
    }
}

#[test]
fn reports() {
    let g = parse_graph(K4);
    let kinds = [
        MtReport::Mesh,
        MtReport::Charpoly,
        MtReport::Verify,
        MtReport::Kirchhoff,
        MtReport::Allminors,
        MtReport::Torsion,
        MtReport::Flux,
        MtReport::CountTrees,
    ];
    unsafe {
        for kind in kinds {
            let mut s = ptr::null_mut();
            assert_eq!(mt_graph_report_json(g, kind, ptr::null(), 0, &mut s), MtStatus::Ok, "{kind:?}");
            let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
            assert!(v.is_object());
        }
        let h = [0usize, 1];
        let mut s = ptr::null_mut();
        assert_eq!(mt_stpoly_json(g, h.as_ptr(), h.len(), &mut s), MtStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["agree"], true);
        mt_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = CString::new("v 2\ne 0 5\n").unwrap();
        assert_eq!(mt_graph_parse(bad.as_ptr(), &mut g), MtStatus::Parse);
        assert!(!last_error().is_empty());
        mt_clear_error();
        assert!(last_error().is_empty());
        let garbage = CString::new("e 0 1\n").unwrap();
        assert_eq!(mt_graph_parse(garbage.as_ptr(), &mut g), MtStatus::Parse);
        assert_eq!(mt_graph_parse(ptr::null(), &mut g), MtStatus::NullPointer);

        let disconnected = parse_graph("v 2\n");
        let mut s = ptr::null_mut();
        assert_eq!(mt_mesh_determinant(disconnected, ptr::null(), 0, &mut s), MtStatus::NotConnected);
        mt_graph_free(disconnected);

        let k4 = parse_graph(K4);
        let cyclic = [0usize, 1, 3];
        assert_eq!(mt_mesh_determinant(k4, cyclic.as_ptr(), 3, &mut s), MtStatus::InvalidTree);
        let unknown = [9usize];
        assert_eq!(mt_stpoly_json(k4, unknown.as_ptr(), 1, &mut s), MtStatus::InvalidInput);
        assert_eq!(mt_mesh_determinant(k4, ptr::null(), 0, ptr::null_mut()), MtStatus::NullPointer);
        assert_eq!(mt_count_spanning_trees(ptr::null(), ptr::null_mut()), MtStatus::NullPointer);
        mt_graph_free(k4);
        mt_graph_free(ptr::null_mut());
        mt_string_free(ptr::null_mut());
    }
}

#[test]
fn complexes() {
    let text = CString::new(TWO_THREE).unwrap();
    let mut x = ptr::null_mut();
    unsafe {
        assert_eq!(mt_complex_parse(text.as_ptr(), &mut x), MtStatus::Ok);
        let mut s = ptr::null_mut();
        let expected = [(Some(0usize), "2"), (Some(1), "3"), (None, "1")];
        for (cell, torsion) in expected {
            let cells: Vec<usize> = cell.into_iter().collect();
            let p = if cells.is_empty() { ptr::null() } else { cells.as_ptr() };
            assert_eq!(mt_complex_torsion(x, p, cells.len(), &mut s), MtStatus::Ok);
            assert_eq!(take(s), torsion);
        }
        let forest = [0usize];
        for check in [MtCwCheck::Star, MtCwCheck::Higher, MtCwCheck::Integral] {
            assert_eq!(mt_complex_check_json(x, forest.as_ptr(), 1, check, &mut s), MtStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
            assert_eq!(v["holds"], true);
        }
        let both = [0usize, 1];
        assert_eq!(mt_complex_check_json(x, both.as_ptr(), 2, MtCwCheck::Star, &mut s), MtStatus::InvalidInput);
        mt_complex_free(x);

        let invalid = CString::new("dim 2\nboundary 1 1 1\n1\nboundary 2 1 1\n1\n").unwrap();
        assert_eq!(mt_complex_parse(invalid.as_ptr(), &mut x), MtStatus::InvalidInput);
    }
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { CStr::from_ptr(mt_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_generated_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/meshtree.h");
    let text = std::fs::read_to_string(&header).expect("header is written by the build script");
    for name in ["mt_graph_parse", "mt_graph_report_json", "mt_complex_check_json", "mt_string_free", "MT_STATUS_OK"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let source = dir.path().join("probe.c");
    std::fs::write(&source, format!("#include \"{}\"\nint main(void) {{ return MT_STATUS_OK; }}\n", header.display()))
        .unwrap();
    match Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg("-Werror").arg(&source).status() {
        Ok(status) => assert!(status.success(), "header does not compile as C"),
        Err(_) => eprintln!("no C compiler found; skipped the compile check"),
    }
}
