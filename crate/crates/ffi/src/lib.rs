//! C ABI for `cutseq`.
//!
//! Every function returns a [`CutseqStatus`]; results go through out
//! pointers. Strings handed out by the library are NUL-terminated and must
//! be released with [`cutseq_string_free`]. After a non-`Ok` status,
//! [`cutseq_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cutseq::classify::relation_at;
use cutseq::gaps::{factor_gaps, gap_sequence_labels};
use cutseq::kernel::{envelope_word, is_factor, kernel_word, star_decompose};
use cutseq::positions::factor_position;
use cutseq::word::fixed_point_prefix;
use cutseq::{Error, KernelIndex, RelationKind, SeqParams, Sign, SignedWord, Word};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutseqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotAFactor = 3,
    Overflow = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutseqRelation {
    Adjacent = 0,
    Separated = 1,
    Overlapped = 2,
}

/// Opaque handle for one sequence `F_{d,∞}` together with its length cap.
pub struct CutseqSeq {
    params: SeqParams,
}

/// Star coordinates of a factor: kernel `K_{d,m,i}` and `(x, y)`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CutseqStar {
    pub m: u32,
    pub i: u32,
    pub x: u64,
    pub y: u64,
}

/// A signed gap word: `sign` is -1 (inverse word), 0 (empty) or 1.
#[repr(C)]
#[derive(Debug)]
pub struct CutseqGap {
    pub sign: i8,
    pub letters: *mut c_char,
}

/// The two gaps of a factor and the index `B` of the first `G_B`.
/// Release with [`cutseq_gaps_free`].
#[repr(C)]
#[derive(Debug)]
pub struct CutseqGaps {
    pub ga: CutseqGap,
    pub gb: CutseqGap,
    pub b: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> CutseqStatus {
    match e {
        e if e.is_overflow() => CutseqStatus::Overflow,
        Error::NotAFactor(..) => CutseqStatus::NotAFactor,
        Error::Inconsistent(_) | Error::IrreducibleProduct => CutseqStatus::Internal,
        _ => CutseqStatus::InvalidArgument,
    }
}

struct Fail(CutseqStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(CutseqStatus::NullPointer, format!("{what} is null"))
}

/// Run `f`, translating errors and panics into a status and the thread's
/// last-error message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CutseqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CutseqStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CutseqStatus::Internal
        }
    }
}

unsafe fn seq<'a>(handle: *const CutseqSeq) -> Result<&'a CutseqSeq, Fail> {
    handle.as_ref().ok_or_else(|| null("sequence handle"))
}

unsafe fn word_arg(s: *const c_char) -> Result<Word, Fail> {
    if s.is_null() {
        return Err(null("word"));
    }
    let text = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(CutseqStatus::InvalidArgument, "word is not valid UTF-8".into()))?;
    Ok(Word::parse(text)?)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn to_c(s: &str) -> *mut c_char {
    // words and label strings never contain NUL
    CString::new(s).expect("no interior NUL").into_raw()
}

fn gap_to_c(g: &SignedWord) -> CutseqGap {
    let sign = match g.sign() {
        Sign::Inverse => -1,
        Sign::Empty => 0,
        Sign::Positive => 1,
    };
    CutseqGap { sign, letters: to_c(g.letters().as_str()) }
}

/// Create a handle for `F_{d,∞}`. `cap` bounds the length of any word the
/// handle builds; 0 selects the default (2^20 letters).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn cutseq_seq_new(d: u32, cap: usize, out: *mut *mut CutseqSeq) -> CutseqStatus {
    guard(|| {
        let mut params = SeqParams::new(d)?;
        if cap > 0 {
            params = params.with_cap(cap);
        }
        write(out, Box::into_raw(Box::new(CutseqSeq { params })))
    })
}

/// # Safety
/// `handle` must be null or come from [`cutseq_seq_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cutseq_seq_free(handle: *mut CutseqSeq) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cutseq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread (empty after success).
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn cutseq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// The first `n` letters of `F_{d,∞}`.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cutseq_prefix(handle: *const CutseqSeq, n: u64, out: *mut *mut c_char) -> CutseqStatus {
    guard(|| {
        let w = fixed_point_prefix(seq(handle)?.params, n)?;
        write(out, to_c(w.as_str()))
    })
}

/// The kernel word `K_{d,m,i}`.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cutseq_kernel_word(handle: *const CutseqSeq, m: u32, i: u32, out: *mut *mut c_char) -> CutseqStatus {
    guard(|| {
        let w = kernel_word(KernelIndex::new(seq(handle)?.params, m, i)?)?;
        write(out, to_c(w.as_str()))
    })
}

/// The envelope word `E_{d,m,i}`.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cutseq_envelope_word(handle: *const CutseqSeq, m: u32, i: u32, out: *mut *mut c_char) -> CutseqStatus {
    guard(|| {
        let w = envelope_word(KernelIndex::new(seq(handle)?.params, m, i)?)?;
        write(out, to_c(w.as_str()))
    })
}

/// Whether `word` (over `a`, `b`) is a factor of `F_{d,∞}`.
///
/// # Safety
/// `handle` must be a live handle, `word` a NUL-terminated string and `out`
/// valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cutseq_is_factor(handle: *const CutseqSeq, word: *const c_char, out: *mut bool) -> CutseqStatus {
    guard(|| {
        let answer = is_factor(&word_arg(word)?, seq(handle)?.params)?;
        write(out, answer)
    })
}

/// Kernel and star coordinates of a factor.
///
/// # Safety
/// As for [`cutseq_is_factor`].
#[no_mangle]
pub unsafe extern "C" fn cutseq_star_decompose(handle: *const CutseqSeq, word: *const c_char, out: *mut CutseqStar) -> CutseqStatus {
    guard(|| {
        let star = star_decompose(&word_arg(word)?, seq(handle)?.params)?;
        write(out, CutseqStar { m: star.kernel.m(), i: star.kernel.i(), x: star.x, y: star.y })
    })
}

/// 1-based position of the `p`-th occurrence (`p >= 1`) of a factor.
///
/// # Safety
/// As for [`cutseq_is_factor`].
#[no_mangle]
pub unsafe extern "C" fn cutseq_factor_position(handle: *const CutseqSeq, word: *const c_char, p: u64, out: *mut u64) -> CutseqStatus {
    guard(|| {
        let pos = factor_position(&word_arg(word)?, seq(handle)?.params, p)?;
        write(out, pos)
    })
}

/// The two gaps of a factor. Free the result with [`cutseq_gaps_free`].
///
/// # Safety
/// As for [`cutseq_is_factor`].
#[no_mangle]
pub unsafe extern "C" fn cutseq_factor_gaps(handle: *const CutseqSeq, word: *const c_char, out: *mut CutseqGaps) -> CutseqStatus {
    guard(|| {
        let g = factor_gaps(&word_arg(word)?, seq(handle)?.params)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        write(out, CutseqGaps { ga: gap_to_c(&g.ga), gb: gap_to_c(&g.gb), b: g.b })
    })
}

/// Release the strings inside a [`CutseqGaps`] filled by [`cutseq_factor_gaps`].
///
/// # Safety
/// `gaps` must be null or point to a value filled by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cutseq_gaps_free(gaps: *mut CutseqGaps) {
    if let Some(g) = gaps.as_mut() {
        cutseq_string_free(g.ga.letters);
        cutseq_string_free(g.gb.letters);
        g.ga.letters = ptr::null_mut();
        g.gb.letters = ptr::null_mut();
    }
}

/// The first `count` gap labels (`A`/`B`) for kernel type `i`.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cutseq_gap_labels(handle: *const CutseqSeq, i: u32, count: usize, out: *mut *mut c_char) -> CutseqStatus {
    guard(|| {
        let labels = gap_sequence_labels(seq(handle)?.params, i, count)?;
        write(out, to_c(&labels))
    })
}

/// How the `p`-th and `(p+1)`-th occurrences of a factor sit relative to each other.
///
/// # Safety
/// As for [`cutseq_is_factor`].
#[no_mangle]
pub unsafe extern "C" fn cutseq_relation_at(handle: *const CutseqSeq, word: *const c_char, p: u64, out: *mut CutseqRelation) -> CutseqStatus {
    guard(|| {
        let r = match relation_at(&word_arg(word)?, seq(handle)?.params, p)? {
            RelationKind::Adjacent => CutseqRelation::Adjacent,
            RelationKind::Separated => CutseqRelation::Separated,
            RelationKind::Overlapped => CutseqRelation::Overlapped,
        };
        write(out, r)
    })
}
