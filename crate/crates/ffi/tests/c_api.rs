use std::ffi::{CStr, CString};
use std::ptr;

use lieverify_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { lv_string_free(s) };
    out
}

fn datum(desc: &str) -> *mut LvDatum {
    let c = CString::new(desc).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { lv_datum_new(c.as_ptr(), &mut d) }, LvStatus::Ok);
    d
}

#[test]
fn e7_minuscule() {
    let d = datum("E7:sc");
    assert_eq!(unsafe { lv_datum_rank(d) }, 7);
    assert_eq!(unsafe { lv_datum_num_roots(d) }, 126);
    let w = [0i64, 0, 0, 0, 0, 0, 1];
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { lv_dim(d, w.as_ptr(), w.len(), &mut s) }, LvStatus::Ok);
    assert_eq!(take(s), "56");
    let mut ind = 0;
    assert_eq!(unsafe { lv_indicator(d, w.as_ptr(), w.len(), &mut ind) }, LvStatus::Ok);
    assert_eq!(ind, -1);
    unsafe { lv_datum_free(d) };
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("Q9:sc").unwrap();
    let mut d = ptr::null_mut();
    let st = unsafe { lv_datum_new(bad.as_ptr(), &mut d) };
    assert_ne!(st, LvStatus::Ok);
    assert!(d.is_null());
    assert!(!lv_last_error().is_null());

    assert_eq!(unsafe { lv_datum_new(ptr::null(), &mut d) }, LvStatus::NullPointer);

    let d = datum("A2:sc");
    let w = [1i64];
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { lv_dim(d, w.as_ptr(), 1, &mut s) }, LvStatus::InvalidInput);
    let msg = unsafe { CStr::from_ptr(lv_last_error()) }.to_str().unwrap();
    assert!(msg.contains("length"), "{msg}");
    let neg = [-1i64, 0];
    assert_ne!(unsafe { lv_dim(d, neg.as_ptr(), 2, &mut s) }, LvStatus::Ok);
    unsafe { lv_datum_free(d) };
    unsafe { lv_datum_free(ptr::null_mut()) };
    unsafe { lv_string_free(ptr::null_mut()) };
}

#[test]
fn verify_all_json() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { lv_verify_all(&mut s) }, LvStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["summary"]["total"].as_u64().unwrap() > 500);
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lieverify.h")).unwrap();
    for sym in ["lv_datum_new", "lv_dim", "lv_verify_all", "lv_string_free", "typedef struct LvDatum LvDatum"] {
        assert!(h.contains(sym), "{sym}");
    }
}
