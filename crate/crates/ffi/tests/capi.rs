use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use lastree_ffi::*;

const SAMPLE: &str = "e 0 1 11\ne 1 2 11\ne 2 3 12\ne 3 4 6\ne 3 5 9\ne 5 6 10\ne 0 7 1\ne 0 4 15\ne 7 6 14\nr 0\n";

fn parse(text: &str) -> *mut LastreeGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { lastree_graph_parse(c.as_ptr(), &mut g) }, LastreeStatus::Ok);
    g
}

fn parents(t: *const LastreeTree) -> Vec<i64> {
    let n = unsafe { lastree_tree_vertex_count(t) };
    let mut buf = vec![0i64; n];
    assert_eq!(
        unsafe { lastree_tree_parents(t, buf.as_mut_ptr(), n) },
        LastreeStatus::Ok
    );
    buf
}

fn last_error() -> String {
    let p = lastree_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn find_last_on_sample() {
    let g = parse(SAMPLE);
    assert_eq!(unsafe { lastree_graph_vertex_count(g) }, 8);
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { lastree_find_last(g, -1, 2, 1, &mut t) }, LastreeStatus::Ok);
    assert_eq!(parents(t), vec![-1, 0, 1, 4, 0, 6, 7, 0]);
    let mut w = 0u64;
    assert_eq!(unsafe { lastree_tree_weight_exact(t, &mut w) }, LastreeStatus::Ok);
    assert_eq!(w, 68);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { lastree_tree_to_json(t, &mut json) }, LastreeStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    assert!(text.starts_with(r#"{"root":0,"parent":[-1,0,1,4,0,6,7,0]"#), "{text}");
    unsafe {
        lastree_string_free(json);
        lastree_tree_free(t);
        lastree_graph_free(g);
    }
}

#[test]
fn base_trees_and_min_spt() {
    let g = parse("p 4 4\ne 0 1 1\ne 0 2 2\ne 1 3 2\ne 2 3 1\nd\n");
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { lastree_min_spt(g, 0, &mut t) }, LastreeStatus::Ok);
    let mut w = 0.0;
    assert_eq!(unsafe { lastree_tree_weight(t, &mut w) }, LastreeStatus::Ok);
    assert_eq!(w, 4.0);
    unsafe { lastree_tree_free(t) };
    // No MST for a directed graph.
    assert_eq!(unsafe { lastree_mst(g, 0, &mut t) }, LastreeStatus::InvalidArgument);
    unsafe { lastree_graph_free(g) };

    let g = parse(SAMPLE);
    for f in [lastree_mst, lastree_spt] {
        let mut t = ptr::null_mut();
        assert_eq!(unsafe { f(g, 0, &mut t) }, LastreeStatus::Ok);
        assert_eq!(parents(t)[0], -1);
        unsafe { lastree_tree_free(t) };
    }
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { lastree_parallel_last(g, 0, 3, 2, &mut t) }, LastreeStatus::Ok);
    unsafe { lastree_tree_free(t) };
    unsafe { lastree_graph_free(g) };
}

#[test]
fn float_graphs() {
    let g = parse("e 0 1 0.5\ne 1 2 0.25\ne 0 2 1.0\n");
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { lastree_find_last(g, 0, 3, 2, &mut t) }, LastreeStatus::Ok);
    let mut w = 0u64;
    assert_eq!(
        unsafe { lastree_tree_weight_exact(t, &mut w) },
        LastreeStatus::InexactWeights
    );
    let mut wf = 0.0;
    assert_eq!(unsafe { lastree_tree_weight(t, &mut wf) }, LastreeStatus::Ok);
    assert_eq!(wf, 0.75);
    unsafe { lastree_tree_free(t) };
    assert_eq!(unsafe { lastree_min_spt(g, 0, &mut t) }, LastreeStatus::InexactWeights);
    unsafe { lastree_graph_free(g) };
}

#[test]
fn error_codes() {
    let bad = CString::new("e 0 1 -3\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { lastree_graph_parse(bad.as_ptr(), &mut g) },
        LastreeStatus::Parse
    );
    assert!(last_error().contains("line 1"));
    assert!(g.is_null());
    assert_eq!(
        unsafe { lastree_graph_parse(ptr::null(), &mut g) },
        LastreeStatus::NullPointer
    );

    let g = parse(SAMPLE);
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { lastree_find_last(g, 0, 1, 1, &mut t) },
        LastreeStatus::InvalidArgument
    );
    assert!(last_error().contains("alpha"));
    assert_eq!(
        unsafe { lastree_find_last(g, 0, 2, 0, &mut t) },
        LastreeStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { lastree_find_last(g, 99, 2, 1, &mut t) },
        LastreeStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { lastree_find_last(ptr::null(), 0, 2, 1, &mut t) },
        LastreeStatus::NullPointer
    );
    assert_eq!(
        unsafe { lastree_find_last(g, 0, 2, 1, ptr::null_mut()) },
        LastreeStatus::NullPointer
    );

    assert_eq!(unsafe { lastree_find_last(g, 0, 2, 1, &mut t) }, LastreeStatus::Ok);
    let mut small = [0i64; 3];
    assert_eq!(
        unsafe { lastree_tree_parents(t, small.as_mut_ptr(), 3) },
        LastreeStatus::BufferTooSmall
    );
    unsafe { lastree_tree_free(t) };
    unsafe { lastree_graph_free(g) };

    let split = parse("p 3 1\ne 0 1 1\n");
    assert_eq!(unsafe { lastree_spt(split, 0, &mut t) }, LastreeStatus::NotConnected);
    unsafe { lastree_graph_free(split) };

    // Null handles are accepted by the release and count functions.
    unsafe {
        lastree_graph_free(ptr::null_mut());
        lastree_tree_free(ptr::null_mut());
        lastree_string_free(ptr::null_mut());
        assert_eq!(lastree_graph_vertex_count(ptr::null()), 0);
        assert_eq!(lastree_tree_vertex_count(ptr::null()), 0);
    }
}

#[test]
fn header_declares_the_api() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/lastree.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "lastree_graph_parse",
        "lastree_find_last",
        "lastree_parallel_last",
        "lastree_min_spt",
        "lastree_tree_parents",
        "lastree_tree_to_json",
        "lastree_last_error_message",
        "LASTREE_STATUS_BUFFER_TOO_SMALL",
        "typedef struct LastreeGraph LastreeGraph",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    // The header must be valid C on its own when a compiler is around.
    if let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c"])
        .arg(&header)
        .status()
    {
        assert!(status.success());
    }
}
