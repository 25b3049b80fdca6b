use std::ffi::{c_char, CStr, CString};
use std::ptr;

use cutseq_ffi::*;

fn handle(d: u32) -> *mut CutseqSeq {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cutseq_seq_new(d, 0, &mut h) }, CutseqStatus::Ok);
    assert!(!h.is_null());
    h
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { cutseq_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(cutseq_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn words() {
    let h = handle(2);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cutseq_prefix(h, 10, &mut s) }, CutseqStatus::Ok);
    assert_eq!(take(s), "aabaabaaab");
    assert_eq!(unsafe { cutseq_envelope_word(h, 1, 0, &mut s) }, CutseqStatus::Ok);
    assert_eq!(take(s), "aabaa");
    unsafe { cutseq_seq_free(h) };

    let h = handle(3);
    assert_eq!(unsafe { cutseq_kernel_word(h, 2, 0, &mut s) }, CutseqStatus::Ok);
    assert_eq!(take(s), "aaaa");
    assert_eq!(unsafe { cutseq_gap_labels(h, 0, 19, &mut s) }, CutseqStatus::Ok);
    assert_eq!(take(s), "AABAABAABAAABAABAAB");
    unsafe { cutseq_seq_free(h) };
}

#[test]
fn factors() {
    let h = handle(2);
    let aa = CString::new("aa").unwrap();
    let aabaa = CString::new("aabaa").unwrap();

    let mut yes = false;
    assert_eq!(unsafe { cutseq_is_factor(h, aa.as_ptr(), &mut yes) }, CutseqStatus::Ok);
    assert!(yes);

    let mut star = CutseqStar::default();
    assert_eq!(unsafe { cutseq_star_decompose(h, aabaa.as_ptr(), &mut star) }, CutseqStatus::Ok);
    assert_eq!(star, CutseqStar { m: 1, i: 0, x: 1, y: 2 });

    let mut pos = 0;
    assert_eq!(unsafe { cutseq_factor_position(h, aa.as_ptr(), 4, &mut pos) }, CutseqStatus::Ok);
    assert_eq!(pos, 8);

    let mut gaps = CutseqGaps {
        ga: CutseqGap { sign: 0, letters: ptr::null_mut() },
        gb: CutseqGap { sign: 0, letters: ptr::null_mut() },
        b: 0,
    };
    assert_eq!(unsafe { cutseq_factor_gaps(h, aa.as_ptr(), &mut gaps) }, CutseqStatus::Ok);
    assert_eq!((gaps.ga.sign, gaps.gb.sign, gaps.b), (1, -1, 3));
    assert_eq!(unsafe { CStr::from_ptr(gaps.ga.letters) }.to_str().unwrap(), "b");
    assert_eq!(unsafe { CStr::from_ptr(gaps.gb.letters) }.to_str().unwrap(), "a");
    unsafe { cutseq_gaps_free(&mut gaps) };
    assert!(gaps.ga.letters.is_null());

    let mut rel = CutseqRelation::Adjacent;
    assert_eq!(unsafe { cutseq_relation_at(h, aa.as_ptr(), 3, &mut rel) }, CutseqStatus::Ok);
    assert_eq!(rel, CutseqRelation::Overlapped);
    unsafe { cutseq_seq_free(h) };
}

#[test]
fn errors() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cutseq_seq_new(1, 0, &mut h) }, CutseqStatus::InvalidArgument);
    assert!(h.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { cutseq_seq_new(2, 0, ptr::null_mut()) }, CutseqStatus::NullPointer);

    let h = handle(2);
    assert!(last_error().is_empty());
    let mut star = CutseqStar::default();
    let bb = CString::new("bb").unwrap();
    assert_eq!(unsafe { cutseq_star_decompose(h, bb.as_ptr(), &mut star) }, CutseqStatus::NotAFactor);
    assert!(last_error().contains("bb"), "{}", last_error());
    let bad = CString::new("abc").unwrap();
    let mut yes = false;
    assert_eq!(unsafe { cutseq_is_factor(h, bad.as_ptr(), &mut yes) }, CutseqStatus::InvalidArgument);
    assert_eq!(unsafe { cutseq_is_factor(h, ptr::null(), &mut yes) }, CutseqStatus::NullPointer);
    assert_eq!(unsafe { cutseq_is_factor(ptr::null(), bb.as_ptr(), &mut yes) }, CutseqStatus::NullPointer);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cutseq_kernel_word(h, 300, 0, &mut s) }, CutseqStatus::Overflow);
    assert_eq!(unsafe { cutseq_kernel_word(h, 1, 5, &mut s) }, CutseqStatus::InvalidArgument);
    let mut pos = 0;
    let a = CString::new("a").unwrap();
    assert_eq!(unsafe { cutseq_factor_position(h, a.as_ptr(), 0, &mut pos) }, CutseqStatus::InvalidArgument);
    unsafe { cutseq_seq_free(h) };
    unsafe { cutseq_seq_free(ptr::null_mut()) };
    unsafe { cutseq_string_free(ptr::null_mut()) };
}
