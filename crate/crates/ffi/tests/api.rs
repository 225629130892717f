use std::ffi::{CStr, CString};
use std::ptr;

use cayley_sudoku_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = cs_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn group(spec: &str) -> *mut CsGroup {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { cs_group_from_spec(c(spec).as_ptr(), &mut g) }, CsStatus::Ok);
    g
}

fn subgroup(g: *const CsGroup, spec: &str) -> *mut CsSubgroup {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { cs_subgroup_from_spec(g, c(spec).as_ptr(), &mut s) },
        CsStatus::Ok
    );
    s
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { cs_string_free(p) };
    s
}

#[test]
fn z9_round_trip() {
    let g = group("Z9");
    assert_eq!(unsafe { cs_group_order(g) }, 9);
    let s = subgroup(g, "3");
    assert_eq!(unsafe { cs_subgroup_order(s) }, 3);
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { cs_table_build(s, CsConstruction::OneRight, &mut t) },
        CsStatus::Ok
    );
    assert_eq!(unsafe { cs_table_size(t) }, 9);
    assert_eq!(unsafe { cs_table_verify(t) }, CsStatus::Ok);

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { cs_table_render_text(t, &mut text) }, CsStatus::Ok);
    assert!(take_string(text).starts_with("  || 0 3 6 | 1 4 7 | 2 5 8 |\n"));

    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { cs_table_to_exchange(t, &mut doc) }, CsStatus::Ok);
    let doc = take_string(doc);
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { cs_table_from_exchange(c(&doc).as_ptr(), &mut back) },
        CsStatus::Ok
    );
    assert_eq!(unsafe { cs_table_verify(back) }, CsStatus::Ok);

    unsafe {
        cs_table_free(back);
        cs_table_free(t);
        cs_subgroup_free(s);
        cs_group_free(g);
    }
}

#[test]
fn subgroup_outlives_group_handle() {
    let g = group("S3");
    let s = subgroup(g, "(12)");
    unsafe { cs_group_free(g) };
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { cs_table_build(s, CsConstruction::TwoLeft, &mut t) },
        CsStatus::Ok
    );
    assert_eq!(unsafe { cs_table_verify(t) }, CsStatus::Ok);
    unsafe {
        cs_table_free(t);
        cs_subgroup_free(s);
    }
}

#[test]
fn status_codes() {
    let g = group("S4");
    let s = subgroup(g, "(12)(34)");
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { cs_table_build(s, CsConstruction::TwoLeft, &mut t) },
        CsStatus::NotFound
    );
    assert!(t.is_null());
    assert!(last_error().contains("universal"));

    let mut bad = ptr::null_mut();
    assert_eq!(
        unsafe { cs_group_from_spec(c("Q7").as_ptr(), &mut bad) },
        CsStatus::Malformed
    );
    assert!(last_error().contains("Q7"));
    assert_eq!(
        unsafe { cs_group_from_spec(ptr::null(), &mut bad) },
        CsStatus::NullArgument
    );
    assert_eq!(
        unsafe { cs_group_from_spec(c("Z3").as_ptr(), ptr::null_mut()) },
        CsStatus::NullArgument
    );
    assert_eq!(unsafe { cs_table_verify(ptr::null()) }, CsStatus::NullArgument);
    assert_eq!(unsafe { cs_group_order(ptr::null()) }, 0);

    let mut table = ptr::null_mut();
    assert_eq!(
        unsafe { cs_table_from_exchange(c("{").as_ptr(), &mut table) },
        CsStatus::Malformed
    );

    unsafe {
        cs_subgroup_free(s);
        cs_group_free(g);
        cs_table_free(ptr::null_mut());
        cs_string_free(ptr::null_mut());
    }
}

#[test]
fn failing_layout_reports_block() {
    let g = group("Z4");
    let s = subgroup(g, "2");
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { cs_table_build(s, CsConstruction::OneRight, &mut t) },
        CsStatus::Ok
    );
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { cs_table_to_exchange(t, &mut doc) }, CsStatus::Ok);
    let doc = take_string(doc);
    // rows 0 and 2 share a coset of {0, 2}; putting them in one block breaks it
    let mut v: serde_json::Value = serde_json::from_str(&doc).unwrap();
    v["row_labels"] = serde_json::json!(["0", "2", "1", "3"]);
    v["body"] = serde_json::json!([
        ["0", "2", "1", "3"],
        ["2", "0", "3", "1"],
        ["1", "3", "2", "0"],
        ["3", "1", "0", "2"]
    ]);
    let mut broken = ptr::null_mut();
    let text = c(&v.to_string());
    assert_eq!(
        unsafe { cs_table_from_exchange(text.as_ptr(), &mut broken) },
        CsStatus::Ok
    );
    assert_eq!(unsafe { cs_table_verify(broken) }, CsStatus::ConditionFailed);
    assert!(last_error().starts_with("block (0, 0)"));
    unsafe {
        cs_table_free(broken);
        cs_table_free(t);
        cs_subgroup_free(s);
        cs_group_free(g);
    }
}
