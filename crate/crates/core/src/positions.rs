//! Closed-form occurrence positions `L(ω, p)` (1-based).

use crate::error::{Error, Result};
use crate::gaps::{label_kind, SignedWord};
use crate::kernel::{kernel_len, star_decompose, KernelIndex};
use crate::word::{f_len, fixed_point_prefix, Letter, SeqKind, SeqParams, Word};

/// `|S[1, p]|_γ` where `S` is `σ_j(F_{d,∞})` or `F_{d,∞}`. Streams `p` letters.
pub fn prefix_letter_count(params: SeqParams, kind: SeqKind, p: u64, letter: Letter) -> u64 {
    kind.letters(params).take(p as usize).filter(|&l| l == letter).count() as u64
}

fn occurrence_index(p: u64) -> Result<u64> {
    if p == 0 {
        return Err(Error::IndexOutOfRange("occurrence index p must be at least 1".into()));
    }
    Ok(p - 1)
}

fn overflow() -> Error {
    Error::Overflow("occurrence position")
}

/// Number of long gaps among the first `q` gaps of the kernel `K_{d,m,i}` and
/// the length of one step `|K_{d,m,i}|` they contribute:
///
/// * `0 <= i <= d-2`: `b`s in `σ_{d-i-1}(F_{d,∞})[1, q]`, step `i f_{d,m} + f_{d,m-1}`;
/// * `i = d-1`: `a`s in `F_{d,∞}[1, q]`, step `(d-1) f_{d,m} + f_{d,m-1}`.
fn long_steps(k: KernelIndex, q: u64) -> Result<u64> {
    let (kind, _) = label_kind(k.d(), k.i());
    let counted = match kind {
        SeqKind::Image(_) => Letter::B,
        SeqKind::Plain => Letter::A,
    };
    let n = prefix_letter_count(k.params(), kind, q, counted);
    n.checked_mul(kernel_len(k)?).ok_or_else(overflow)
}

/// `L(K_{d,m,i}, p)`. `L(K, 1) = f_{d,m}` and for `q >= 1`
/// `L(K, q+1) = (q+1) f_{d,m} + (long-gap count in the first q labels) · |K|`.
pub fn kernel_position(k: KernelIndex, p: u64) -> Result<u64> {
    let q = occurrence_index(p)?;
    let fm = f_len(k.params(), k.order())?;
    let long = long_steps(k, q)?;
    (q + 1).checked_mul(fm).and_then(|x| x.checked_add(long)).ok_or_else(overflow)
}

/// `L(E_{d,m,i}, p)`. `L(E, 1) = 1` and `L(E, q+1) = q f_{d,m} + (...) · |K| + 1`.
pub fn envelope_position(k: KernelIndex, p: u64) -> Result<u64> {
    let q = occurrence_index(p)?;
    let fm = f_len(k.params(), k.order())?;
    let long = long_steps(k, q)?;
    q.checked_mul(fm)
        .and_then(|x| x.checked_add(long))
        .and_then(|x| x.checked_add(1))
        .ok_or_else(overflow)
}

/// `L(ω, p) = L(Ker ω, p) - |μ_1(ω)|`.
pub fn factor_position(w: &Word, params: SeqParams, p: u64) -> Result<u64> {
    let star = star_decompose(w, params)?;
    Ok(kernel_position(star.kernel, p)? - star.left_len()?)
}

/// `L(K_{d,m,i}, p) - L(E_{d,m,i}, p)`, which is always `f_{d,m} - 1`.
pub fn position_difference_check(k: KernelIndex, p: u64) -> Result<i64> {
    Ok(kernel_position(k, p)? as i64 - envelope_position(k, p)? as i64)
}

/// The p-th gap of `ω`, extracted from the closed-form positions of `ω_p` and
/// `ω_{p+1}` and the letters of `F_{d,∞}` between them.
pub fn factor_gap_positional(w: &Word, params: SeqParams, p: u64) -> Result<SignedWord> {
    let s = factor_position(w, params, p)?;
    let t = factor_position(w, params, p + 1)?;
    let n = w.len() as u64;
    let end = s + n; // first letter after ω_p
    let prefix = fixed_point_prefix(params, t.max(end))?;
    Ok(if t == end {
        SignedWord::empty()
    } else if t > end {
        SignedWord::positive(prefix.slice(end as usize, t as usize - 1))
    } else {
        SignedWord::inverse(prefix.slice(t as usize, end as usize - 1))
    })
}
