use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use prgraph_ffi::*;

fn group(spec: &str) -> *mut PrgGroup {
    let spec = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { prg_group_new(spec.as_ptr(), &mut g) }, PrgStatus::Ok);
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    let p = prg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(g: *const PrgGroup, literal: &str) -> Vec<u32> {
    let lit = CString::new(literal).unwrap();
    let mut ids = [0u32; 8];
    let mut len = 0usize;
    let s = unsafe { prg_parse_tuple(g, lit.as_ptr(), ids.as_mut_ptr(), ids.len(), &mut len) };
    assert_eq!(s, PrgStatus::Ok, "{}", last_error());
    ids[..len].to_vec()
}

#[test]
fn version_is_crate_version() {
    let v = unsafe { CStr::from_ptr(prg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn group_arithmetic() {
    let g = group("psl2:5");
    let mut order = 0u64;
    assert_eq!(unsafe { prg_group_order(g, &mut order) }, PrgStatus::Ok);
    assert_eq!(order, 60);
    for x in 0..60u32 {
        let mut inv = 0;
        let mut prod = 0;
        assert_eq!(unsafe { prg_group_inv(g, x, &mut inv) }, PrgStatus::Ok);
        assert_eq!(unsafe { prg_group_mul(g, x, inv, &mut prod) }, PrgStatus::Ok);
        let mut ee = 0;
        unsafe { prg_group_mul(g, prod, prod, &mut ee) };
        assert_eq!(ee, prod, "x * x^-1 is idempotent");
    }
    let mut out = 0;
    assert_eq!(unsafe { prg_group_mul(g, 60, 0, &mut out) }, PrgStatus::InvalidArgument);
    assert!(last_error().contains("out of range"));
    unsafe { prg_group_free(g) };
}

#[test]
fn null_and_bad_arguments() {
    let mut order = 0;
    assert_eq!(unsafe { prg_group_order(ptr::null(), &mut order) }, PrgStatus::NullPointer);
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { prg_group_new(ptr::null(), &mut g) }, PrgStatus::NullPointer);
    let bad = CString::new("psl2:6").unwrap();
    assert_ne!(unsafe { prg_group_new(bad.as_ptr(), &mut g) }, PrgStatus::Ok);
    assert!(g.is_null());
    unsafe { prg_group_free(ptr::null_mut()) };
    unsafe { prg_string_free(ptr::null_mut()) };
}

#[test]
fn parse_capacity_is_reported() {
    let g = group("sym:3");
    let lit = CString::new("(1,2),(1,2,3)").unwrap();
    let mut len = 0usize;
    let mut one = [0u32; 1];
    let s = unsafe { prg_parse_tuple(g, lit.as_ptr(), one.as_mut_ptr(), 1, &mut len) };
    assert_eq!(s, PrgStatus::InvalidArgument);
    assert_eq!(len, 2);
    let t = parse(g, "(1,2),(1,2,3)");
    let mut gen = false;
    assert_eq!(unsafe { prg_is_generating(g, t.as_ptr(), t.len(), &mut gen) }, PrgStatus::Ok);
    assert!(gen);
    unsafe { prg_group_free(g) };
}

#[test]
fn census_counts() {
    let g = group("ab:5,5");
    let mut n = 0;
    assert_eq!(unsafe { prg_components(g, 2, true, &mut n) }, PrgStatus::Ok);
    assert_eq!(n, 2);
    assert_eq!(unsafe { prg_tsystem_count(g, 2, &mut n) }, PrgStatus::Ok);
    assert_eq!(n, 1);
    unsafe { prg_group_free(g) };
}

#[test]
fn walk_is_deterministic() {
    let g = group("alt:5");
    let mut a = 0;
    let mut b = 0;
    assert_eq!(unsafe { prg_walk_sample(g, 3, 200, 7, &mut a) }, PrgStatus::Ok);
    assert_eq!(unsafe { prg_walk_sample(g, 3, 200, 7, &mut b) }, PrgStatus::Ok);
    assert_eq!(a, b);
    assert!(a < 60);
    let v4 = group("ab:2,2");
    assert_eq!(unsafe { prg_walk_sample(v4, 1, 10, 0, &mut a) }, PrgStatus::NotGenerating);
    unsafe { prg_group_free(g) };
    unsafe { prg_group_free(v4) };
}

#[test]
fn redundant_word_replays() {
    let g = group("psl2:5");
    let mut t = [0u32; 3];
    // find a generating triple without the identity
    let mut found = false;
    'outer: for x in 1..60 {
        for y in 1..60 {
            let cand = [x, y, y];
            let mut gen = false;
            unsafe { prg_is_generating(g, cand.as_ptr(), 3, &mut gen) };
            if gen {
                t = cand;
                found = true;
                break 'outer;
            }
        }
    }
    assert!(found);
    let mut word = ptr::null_mut();
    assert_eq!(unsafe { prg_to_redundant(g, t.as_ptr(), 3, false, 0, &mut word) }, PrgStatus::Ok);
    assert!(!word.is_null());
    let mut end = [0u32; 3];
    assert_eq!(unsafe { prg_apply_word(g, t.as_ptr(), 3, word, end.as_mut_ptr()) }, PrgStatus::Ok);
    let mut has_identity = false;
    for &x in &end {
        let mut sq = 0;
        unsafe { prg_group_mul(g, x, x, &mut sq) };
        has_identity |= sq == x;
    }
    assert!(has_identity);
    unsafe { prg_string_free(word) };

    let bad = CString::new("R+ 1 9").unwrap();
    assert_eq!(unsafe { prg_apply_word(g, t.as_ptr(), 3, bad.as_ptr(), end.as_mut_ptr()) }, PrgStatus::InvalidArgument);
    let not_gen = [0u32, 0, 0];
    assert_eq!(unsafe { prg_to_redundant(g, not_gen.as_ptr(), 3, false, 0, &mut word) }, PrgStatus::NotGenerating);
    unsafe { prg_group_free(g) };
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/prgraph.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["prg_group_new", "prg_to_redundant", "PRG_STATUS_NOT_CONNECTED", "typedef struct PrgGroup PrgGroup"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).status() else {
        eprintln!("cc unavailable, skipping syntax check");
        return;
    };
    assert!(status.success());
}
