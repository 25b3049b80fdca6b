//! Kernel words `K_{d,m,i}`, envelope words `E_{d,m,i}`, the kernel order,
//! `Ker(ω)` and the star decomposition of factors.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{delta, f_len, fdm, find_occurrences, Letter, SeqParams, Word};

/// Identifies the kernel word `K_{d,m,i}`, `m >= 0`, `0 <= i <= d-1`.
///
/// Carries the [`SeqParams`] of its sequence so that the word can be
/// materialized under the same size cap. Equality, hashing and ordering only
/// look at `(d, m, i)`. Indices of different `d` are incomparable.
#[derive(Clone, Copy, Debug)]
pub struct KernelIndex {
    params: SeqParams,
    m: u32,
    i: u32,
}

impl KernelIndex {
    pub fn new(params: SeqParams, m: u32, i: u32) -> Result<KernelIndex> {
        if i >= params.d() {
            return Err(Error::IndexOutOfRange(format!("i = {i} must be below d = {}", params.d())));
        }
        if m > i32::MAX as u32 - 2 {
            return Err(Error::IndexOutOfRange(format!("m = {m} is too large")));
        }
        Ok(KernelIndex { params, m, i })
    }

    pub fn params(&self) -> SeqParams {
        self.params
    }

    pub fn d(&self) -> u32 {
        self.params.d()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    /// `m` as a signed order, for the `F_{d,m-1}` style arithmetic.
    pub(crate) fn order(&self) -> i32 {
        self.m as i32
    }

    fn key(&self) -> (u32, u32, u32) {
        (self.d(), self.m, self.i)
    }
}

impl PartialEq for KernelIndex {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for KernelIndex {}

impl Hash for KernelIndex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for KernelIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        kernel_cmp(*self, *other).ok()
    }
}

impl fmt::Display for KernelIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{{},{},{}}}", self.d(), self.m, self.i)
    }
}

impl Serialize for KernelIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("KernelIndex", 3)?;
        s.serialize_field("d", &self.d())?;
        s.serialize_field("i", &self.i)?;
        s.serialize_field("m", &self.m)?;
        s.end()
    }
}

/// The kernel order: `(m, i) < (n, j)` iff `m < n`, or `m == n` and `i < j`.
pub fn kernel_cmp(k1: KernelIndex, k2: KernelIndex) -> Result<Ordering> {
    if k1.d() != k2.d() {
        return Err(Error::MismatchedDigit(k1.d(), k2.d()));
    }
    Ok((k1.m, k1.i).cmp(&(k2.m, k2.i)))
}

/// `|K_{d,m,i}| = i f_{d,m} + f_{d,m-1}`.
pub fn kernel_len(k: KernelIndex) -> Result<u64> {
    let fm = f_len(k.params, k.order())?;
    let fm1 = f_len(k.params, k.order() - 1)?;
    (k.i as u64)
        .checked_mul(fm)
        .and_then(|x| x.checked_add(fm1))
        .ok_or(Error::Overflow("|K_{d,m,i}|"))
}

/// `|E_{d,m,i}| = (i + 2) f_{d,m} + f_{d,m-1} - 2`.
pub fn envelope_len(k: KernelIndex) -> Result<u64> {
    let fm = f_len(k.params, k.order())?;
    let fm1 = f_len(k.params, k.order() - 1)?;
    (k.i as u64 + 2)
        .checked_mul(fm)
        .and_then(|x| x.checked_add(fm1))
        .map(|x| x - 2)
        .ok_or(Error::Overflow("|E_{d,m,i}|"))
}

/// `K_{d,m,i} = δ_m F_{d,m}^i F_{d,m-1} δ_{m-1}^{-1}`.
pub fn kernel_word(k: KernelIndex) -> Result<Word> {
    k.params.check_len(kernel_len(k)?)?;
    let m = k.order();
    let fm = fdm(k.params, m)?;
    let fm1 = fdm(k.params, m - 1)?;
    let mut body = fm.repeat(k.i as usize);
    body.push_word(&fm1);
    debug_assert_eq!(body.last(), Some(delta(m - 1)));
    let mut out = Word::repeat_letter(delta(m), 1);
    out.push_word(&body.without_last());
    Ok(out)
}

/// `E_{d,m,i} = F_{d,m}^{i+1} F_{d,m-1} F_{d,m} δ_m^{-1} δ_{m-1}^{-1}`.
pub fn envelope_word(k: KernelIndex) -> Result<Word> {
    k.params.check_len(envelope_len(k)?)?;
    let m = k.order();
    let fm = fdm(k.params, m)?;
    let fm1 = fdm(k.params, m - 1)?;
    let mut w = fm.repeat(k.i as usize + 1);
    w.push_word(&fm1);
    w.push_word(&fm);
    debug_assert_eq!(w.last(), Some(delta(m)));
    let w = w.without_last();
    debug_assert_eq!(w.last(), Some(delta(m - 1)));
    Ok(w.without_last())
}

/// The margins `(μ_1, μ_2)` with `E_{d,m,i} = μ_1 K_{d,m,i} μ_2`:
/// `μ_1 = δ_{m+1}^{-1} K_{d,m+1,0}` and `μ_2 = K_{d,m+1,0} δ_{m+1}^{-1}`.
pub fn envelope_margins(params: SeqParams, m: u32) -> Result<(Word, Word)> {
    let next = KernelIndex::new(params, m + 1, 0)?;
    let k = kernel_word(next)?;
    Ok((k.without_first(), k.without_last()))
}

/// Builds `K_{d,m,i}` from the recursions
/// `K_{d,m,0} = K_{d,m-2,d-1} K_{d,m-2,d-2}^{-1} K_{d,m-2,d-1}` (m >= 2) and
/// `K_{d,m,i} = [K_{d,m,0} K_{d,m-1,d-1}]^i K_{d,m,0}` (m >= 1, i >= 1),
/// starting from `K_{d,0,i} = a^{i+1}` and `K_{d,1,0} = b`.
///
/// Independent of [`kernel_word`]; used to cross-check it.
pub fn kernel_word_recursive(k: KernelIndex) -> Result<Word> {
    k.params.check_len(kernel_len(k)?)?;
    recursive(k.params, k.m, k.i)
}

fn recursive(params: SeqParams, m: u32, i: u32) -> Result<Word> {
    let d = params.d();
    match (m, i) {
        (0, i) => Ok(Word::repeat_letter(Letter::A, i as usize + 1)),
        (1, 0) => Ok(Word::repeat_letter(Letter::B, 1)),
        (m, 0) => {
            let outer = recursive(params, m - 2, d - 1)?;
            let inner = recursive(params, m - 2, d - 2)?;
            // free cancellation of the middle inverse
            if !outer.ends_with(&inner) {
                return Err(Error::IrreducibleProduct);
            }
            let mut out = outer.prefix(outer.len() - inner.len());
            out.push_word(&outer);
            Ok(out)
        }
        (m, i) => {
            let base = recursive(params, m, 0)?;
            let link = recursive(params, m - 1, d - 1)?;
            let mut out = base.concat(&link).repeat(i as usize);
            out.push_word(&base);
            Ok(out)
        }
    }
}

/// `Ker(ω)`: the ⊏-greatest kernel word occurring in `w`, with the 1-based
/// position of its first occurrence in `w`.
///
/// Every kernel of order `n` has length at least `f_{d,n-1}`, so the scan
/// stops at the first `n` with `f_{d,n-1} > |w|`. Within the scanned orders
/// lengths are not monotone in ⊏, so every index is tested.
pub fn kernel_of(w: &Word, params: SeqParams) -> Result<(KernelIndex, u64)> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = w.len() as u64;
    let mut best = None;
    for m in 0u32.. {
        if f_len(params, m as i32 - 1)? > n {
            break;
        }
        for i in 0..params.d() {
            let k = KernelIndex::new(params, m, i)?;
            if kernel_len(k)? > n {
                continue;
            }
            let kw = kernel_word(k)?;
            let found = memchr::memmem::find(w.as_bytes(), kw.as_bytes());
            if let Some(at) = found {
                best = Some((k, at as u64 + 1));
            }
        }
    }
    // a = K_{d,0,0} and b = K_{d,1,0}, so some kernel always occurs
    Ok(best.expect("every nonempty word contains a or b"))
}

/// Coordinates of the star decomposition
/// `ω = F_{d,m}[x, f_{d,m}-1] · K_{d,m,i} · (δ_{m+1} F_{d,m})[1, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StarCoords {
    pub kernel: KernelIndex,
    pub x: u64,
    pub y: u64,
}

impl StarCoords {
    /// The left margin `μ_1(ω) = F_{d,m}[x, f_{d,m}-1]`.
    pub fn left_margin(&self) -> Result<Word> {
        let f = fdm(self.kernel.params, self.kernel.order())?;
        Ok(f.slice(self.x as usize, f.len() - 1))
    }

    /// The right margin `μ_2(ω) = (δ_{m+1} F_{d,m})[1, y]`.
    pub fn right_margin(&self) -> Result<Word> {
        let m = self.kernel.order();
        let mut w = Word::repeat_letter(delta(m + 1), 1);
        w.push_word(&fdm(self.kernel.params, m)?);
        Ok(w.prefix(self.y as usize))
    }

    /// `|μ_1(ω)| = f_{d,m} - x`.
    pub fn left_len(&self) -> Result<u64> {
        Ok(f_len(self.kernel.params, self.kernel.order())? - self.x)
    }

    /// Rebuild the factor from its coordinates.
    pub fn reassemble(&self) -> Result<Word> {
        let mut w = self.left_margin()?;
        w.push_word(&kernel_word(self.kernel)?);
        w.push_word(&self.right_margin()?);
        Ok(w)
    }
}

impl Serialize for StarCoords {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("StarCoords", 5)?;
        s.serialize_field("d", &self.kernel.d())?;
        s.serialize_field("i", &self.kernel.i)?;
        s.serialize_field("m", &self.kernel.m)?;
        s.serialize_field("x", &self.x)?;
        s.serialize_field("y", &self.y)?;
        s.end()
    }
}

fn not_a_factor(w: &Word, params: SeqParams) -> Error {
    Error::NotAFactor(w.to_string(), params.d())
}

/// Decompose a factor of `F_{d,∞}` around its kernel.
///
/// Fails with [`Error::NotAFactor`] when the kernel occurs more than once, or
/// when the letters around it do not fit the margins of the envelope word.
pub fn star_decompose(w: &Word, params: SeqParams) -> Result<StarCoords> {
    let (k, pos) = kernel_of(w, params)?;
    let kw = kernel_word(k)?;
    if find_occurrences(&kw, w)?.len() != 1 {
        return Err(not_a_factor(w, params));
    }
    let m = k.order();
    let fm = f_len(params, m)?;
    let before = pos - 1;
    let after = w.len() as u64 - before - kw.len() as u64;
    if before >= fm || after >= fm {
        return Err(not_a_factor(w, params));
    }
    let f = fdm(params, m)?;
    let left = w.prefix(before as usize);
    if !f.without_last().ends_with(&left) {
        return Err(not_a_factor(w, params));
    }
    let right = w.suffix(after as usize);
    let mut shifted = Word::repeat_letter(delta(m + 1), 1);
    shifted.push_word(&f);
    if !shifted.starts_with(&right) {
        return Err(not_a_factor(w, params));
    }
    Ok(StarCoords { kernel: k, x: fm - before, y: after })
}

/// Membership test: `ω ≺ F_{d,∞}` iff `ω ≺ E_{Ker(ω)}`. Words whose kernel
/// occurs more than once are rejected without building the envelope.
pub fn is_factor(w: &Word, params: SeqParams) -> Result<bool> {
    let (k, _) = kernel_of(w, params)?;
    let kw = kernel_word(k)?;
    if find_occurrences(&kw, w)?.len() != 1 {
        return Ok(false);
    }
    Ok(w.occurs_in(&envelope_word(k)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::fixed_point_prefix;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn k(d: u32, m: u32, i: u32) -> KernelIndex {
        KernelIndex::new(SeqParams::new(d).unwrap(), m, i).unwrap()
    }

    fn p(d: u32) -> SeqParams {
        SeqParams::new(d).unwrap()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_word(k(3, 1, 0)).unwrap(), w("b"));
        assert_eq!(kernel_word(k(3, 1, 1)).unwrap(), w("baaab"));
        assert_eq!(kernel_word(k(3, 1, 2)).unwrap(), w("baaabaaab"));
        assert_eq!(kernel_word(k(3, 2, 0)).unwrap(), w("aaaa"));
        assert_eq!(kernel_word(k(2, 0, 1)).unwrap(), w("aa"));
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(envelope_word(k(2, 1, 0)).unwrap(), w("aabaa"));
        assert_eq!(envelope_word(k(2, 0, 1)).unwrap(), w("aa"));
        assert_eq!(envelope_word(k(3, 1, 0)).unwrap(), w("aaabaaa"));
    }

    #[test]
    fn margin_examples() {
        assert_eq!(envelope_margins(p(2), 1).unwrap(), (w("aa"), w("aa")));
        assert_eq!(envelope_margins(p(2), 0).unwrap(), (Word::empty(), Word::empty()));
        assert_eq!(envelope_margins(p(3), 1).unwrap(), (w("aaa"), w("aaa")));
    }

    #[test]
    fn recursive_examples() {
        assert_eq!(kernel_word_recursive(k(3, 1, 2)).unwrap(), w("baaabaaab"));
        assert_eq!(kernel_word_recursive(k(2, 2, 0)).unwrap(), w("aaa"));
        assert_eq!(kernel_word_recursive(k(2, 1, 1)).unwrap(), w("baab"));
    }

    #[test]
    fn lengths_match_words() {
        for d in 2..=4 {
            for m in 0..5 {
                for i in 0..d {
                    let idx = k(d, m, i);
                    assert_eq!(kernel_word(idx).unwrap().len() as u64, kernel_len(idx).unwrap());
                    assert_eq!(envelope_word(idx).unwrap().len() as u64, envelope_len(idx).unwrap());
                }
            }
        }
    }

    #[test]
    fn ordering() {
        assert_eq!(kernel_cmp(k(2, 1, 0), k(2, 0, 1)).unwrap(), Ordering::Greater);
        assert_eq!(kernel_cmp(k(3, 1, 1), k(3, 1, 2)).unwrap(), Ordering::Less);
        assert_eq!(kernel_cmp(k(2, 1, 0), k(2, 1, 0)).unwrap(), Ordering::Equal);
        assert_eq!(kernel_cmp(k(2, 1, 0), k(3, 1, 0)), Err(Error::MismatchedDigit(2, 3)));
        assert_eq!(k(2, 1, 0).partial_cmp(&k(3, 0, 0)), None);
    }

    #[test]
    fn index_validation() {
        assert!(KernelIndex::new(p(3), 0, 3).is_err());
        assert!(KernelIndex::new(p(3), 0, 2).is_ok());
    }

    #[test]
    fn kernel_of_examples() {
        assert_eq!(kernel_of(&w("aabaa"), p(2)).unwrap(), (k(2, 1, 0), 3));
        assert_eq!(kernel_of(&w("aaaa"), p(2)).unwrap(), (k(2, 2, 0), 1));
        assert_eq!(kernel_of(&w("a"), p(3)).unwrap(), (k(3, 0, 0), 1));
        assert_eq!(kernel_of(&Word::empty(), p(3)), Err(Error::EmptyWord));
    }

    #[test]
    fn star_examples() {
        let s = star_decompose(&w("aba"), p(2)).unwrap();
        assert_eq!((s.kernel, s.x, s.y), (k(2, 1, 0), 2, 1));
        let s = star_decompose(&w("b"), p(2)).unwrap();
        assert_eq!((s.kernel, s.x, s.y), (k(2, 1, 0), 3, 0));
        let s = star_decompose(&w("aabaa"), p(2)).unwrap();
        assert_eq!((s.kernel, s.x, s.y), (k(2, 1, 0), 1, 2));
        assert_eq!(s.reassemble().unwrap(), w("aabaa"));
    }

    #[test]
    fn star_rejects_non_factors() {
        assert!(matches!(star_decompose(&w("aaaa"), p(2)), Err(Error::NotAFactor(..))));
        assert!(matches!(star_decompose(&w("aaabb"), p(2)), Err(Error::NotAFactor(..))));
        assert!(matches!(star_decompose(&w("bb"), p(3)), Err(Error::NotAFactor(..))));
    }

    #[test]
    fn membership_examples() {
        assert!(!is_factor(&w("aaaa"), p(2)).unwrap());
        assert!(!is_factor(&w("aaabb"), p(2)).unwrap());
        assert!(is_factor(&w("aabaa"), p(2)).unwrap());
        assert!(is_factor(&w("aaaa"), p(3)).unwrap());
    }

    #[test]
    fn membership_matches_prefix_scan() {
        // every word of length <= 10 over {a,b}, against a long prefix
        for d in 2..=3 {
            let prefix = fixed_point_prefix(p(d), 20_000).unwrap();
            for len in 1..=10usize {
                for bits in 0u32..(1 << len) {
                    let cand = Word::from_letters((0..len).map(|t| if bits >> t & 1 == 1 { Letter::B } else { Letter::A }));
                    let expected = cand.occurs_in(&prefix);
                    assert_eq!(is_factor(&cand, p(d)).unwrap(), expected, "{cand} d={d}");
                    assert_eq!(star_decompose(&cand, p(d)).is_ok(), expected, "{cand} d={d}");
                }
            }
        }
    }
}
