//! Letters, finite words, the substitutions `σ_j` and the fixed point `F_{d,∞}`.

use std::fmt;
use std::iter;
use std::str::FromStr;

use memchr::memmem;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default upper bound on the length of any word the library materializes.
pub const DEFAULT_WORD_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn as_byte(self) -> u8 {
        match self {
            Letter::A => b'a',
            Letter::B => b'b',
        }
    }

    pub fn as_char(self) -> char {
        self.as_byte() as char
    }

    pub fn from_char(c: char) -> Result<Letter> {
        match c {
            'a' => Ok(Letter::A),
            'b' => Ok(Letter::B),
            other => Err(Error::InvalidAlphabet(other)),
        }
    }

    fn from_byte(b: u8) -> Letter {
        if b == b'a' {
            Letter::A
        } else {
            Letter::B
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word over `{a, b}`.
///
/// Stored as ASCII bytes. Public accessors that take positions are 1-based:
/// `slice(i, j)` is the factor `w[i, j]`, and `slice(i, i - 1)` is the empty
/// word.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn parse(s: &str) -> Result<Word> {
        for c in s.chars() {
            Letter::from_char(c)?;
        }
        Ok(Word(s.as_bytes().to_vec()))
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        Word(letters.into_iter().map(Letter::as_byte).collect())
    }

    pub fn repeat_letter(letter: Letter, n: usize) -> Word {
        Word(vec![letter.as_byte(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        // Only b'a' and b'b' are ever stored.
        std::str::from_utf8(&self.0).expect("words are ASCII")
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + '_ {
        self.0.iter().map(|&b| Letter::from_byte(b))
    }

    /// The letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> Option<Letter> {
        if i == 0 {
            return None;
        }
        self.0.get(i - 1).map(|&b| Letter::from_byte(b))
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().map(|&b| Letter::from_byte(b))
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().map(|&b| Letter::from_byte(b))
    }

    /// The factor `w[i, j]` (1-based, inclusive). `j == i - 1` yields ε.
    ///
    /// Panics when the range leaves the word.
    pub fn slice(&self, i: usize, j: usize) -> Word {
        assert!(i >= 1 && j + 1 >= i && j <= self.len(), "slice [{i}, {j}] out of range for length {}", self.len());
        Word(self.0[i - 1..j].to_vec())
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix(&self, n: usize) -> Word {
        Word(self.0[self.len() - n..].to_vec())
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter.as_byte());
    }

    pub fn push_word(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// `w δ^{-1}`: the word without its last letter. Panics on ε.
    pub fn without_last(&self) -> Word {
        assert!(!self.is_empty(), "cannot drop a letter from the empty word");
        Word(self.0[..self.len() - 1].to_vec())
    }

    /// `δ^{-1} w`: the word without its first letter. Panics on ε.
    pub fn without_first(&self) -> Word {
        assert!(!self.is_empty(), "cannot drop a letter from the empty word");
        Word(self.0[1..].to_vec())
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.0.starts_with(&other.0)
    }

    pub fn ends_with(&self, other: &Word) -> bool {
        self.0.ends_with(&other.0)
    }

    pub fn mirror(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn letter_count(&self, letter: Letter) -> usize {
        let b = letter.as_byte();
        self.0.iter().filter(|&&x| x == b).count()
    }

    /// Ascending 1-based positions of every (possibly overlapping) occurrence
    /// of `self` in `haystack`.
    pub fn occurrences_in(&self, haystack: &Word) -> Result<Vec<u64>> {
        find_occurrences(self, haystack)
    }

    pub fn occurs_in(&self, haystack: &Word) -> bool {
        memmem::find(&haystack.0, &self.0).is_some()
    }

    pub(crate) fn from_bytes_unchecked(bytes: Vec<u8>) -> Word {
        debug_assert!(bytes.iter().all(|&b| b == b'a' || b == b'b'));
        Word(bytes)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "{:?}", self.as_str())
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// The digit `d` of the slope `[0; d, d, d, ...]` together with the size cap
/// applied to every materialized word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeqParams {
    d: u32,
    cap: usize,
}

impl SeqParams {
    pub fn new(d: u32) -> Result<SeqParams> {
        if d < 2 {
            return Err(Error::InvalidDigit(d));
        }
        Ok(SeqParams { d, cap: DEFAULT_WORD_CAP })
    }

    pub fn with_cap(self, cap: usize) -> SeqParams {
        SeqParams { cap, ..self }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub(crate) fn check_len(&self, len: u64) -> Result<usize> {
        if len > self.cap as u64 {
            return Err(Error::CapExceeded { len, cap: self.cap });
        }
        Ok(len as usize)
    }
}

/// Apply `σ_j : a ↦ a^j b, b ↦ a` letterwise.
pub fn sub_apply(j: u32, w: &Word) -> Word {
    let mut out = Vec::with_capacity(w.len() * (j as usize + 1));
    for letter in w.letters() {
        match letter {
            Letter::A => {
                out.extend(iter::repeat_n(b'a', j as usize));
                out.push(b'b');
            }
            Letter::B => out.push(b'a'),
        }
    }
    Word(out)
}

/// `f_{d,m} = |F_{d,m}|`, with `f_{d,-1} = f_{d,0} = 1`.
pub fn f_len(params: SeqParams, m: i32) -> Result<u64> {
    if m < -1 {
        return Err(Error::IndexOutOfRange(format!("m = {m} < -1")));
    }
    let d = params.d as u64;
    let (mut prev, mut cur) = (1u64, 1u64);
    for _ in 0..m.max(0) {
        let next = d
            .checked_mul(cur)
            .and_then(|x| x.checked_add(prev))
            .ok_or(Error::Overflow("f_{d,m}"))?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `δ_m`, the last letter of `F_{d,m}`: `a` for even `m`, `b` for odd `m`.
pub fn delta(m: i32) -> Letter {
    if m.rem_euclid(2) == 0 {
        Letter::A
    } else {
        Letter::B
    }
}

/// `F_{d,m} = σ_d^m(a)`, with `F_{d,-1} = b`.
pub fn fdm(params: SeqParams, m: i32) -> Result<Word> {
    let len = f_len(params, m)?;
    params.check_len(len)?;
    if m == -1 {
        return Ok(Word::repeat_letter(Letter::B, 1));
    }
    let d = params.d as usize;
    let mut prev = Word::repeat_letter(Letter::B, 1);
    let mut cur = Word::repeat_letter(Letter::A, 1);
    for _ in 0..m {
        let mut next = cur.repeat(d);
        next.push_word(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Streaming generator of `F_{d,∞}`.
///
/// The sequence reads itself: `buf` always equals `σ_d(buf[..read])`, so the
/// memory held is proportional to the number of letters emitted.
#[derive(Clone, Debug)]
pub struct FixedPoint {
    d: usize,
    buf: Vec<u8>,
    read: usize,
    emitted: usize,
}

impl FixedPoint {
    pub fn new(params: SeqParams) -> FixedPoint {
        let d = params.d as usize;
        let mut buf = vec![b'a'; d];
        buf.push(b'b');
        FixedPoint { d, buf, read: 1, emitted: 0 }
    }
}

impl Iterator for FixedPoint {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        while self.emitted >= self.buf.len() {
            let src = self.buf[self.read];
            self.read += 1;
            if src == b'a' {
                self.buf.extend(iter::repeat_n(b'a', self.d));
                self.buf.push(b'b');
            } else {
                self.buf.push(b'a');
            }
        }
        let b = self.buf[self.emitted];
        self.emitted += 1;
        Some(Letter::from_byte(b))
    }
}

/// The sequence a gap-label sequence is read from: either `σ_j(F_{d,∞})` or
/// `F_{d,∞}` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "j", rename_all = "snake_case")]
pub enum SeqKind {
    Image(u32),
    Plain,
}

impl SeqKind {
    /// Stream the letters of the selected sequence.
    pub fn letters(self, params: SeqParams) -> impl Iterator<Item = Letter> {
        let j = match self {
            SeqKind::Image(j) => Some(j as usize),
            SeqKind::Plain => None,
        };
        FixedPoint::new(params).flat_map(move |letter| {
            let (run, tail) = match (j, letter) {
                (None, l) => (0, l),
                (Some(j), Letter::A) => (j, Letter::B),
                (Some(_), Letter::B) => (0, Letter::A),
            };
            iter::repeat_n(Letter::A, run).chain(iter::once(tail))
        })
    }
}

impl fmt::Display for SeqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqKind::Image(j) => write!(f, "sigma_{j}(F)"),
            SeqKind::Plain => f.write_str("F"),
        }
    }
}

/// The first `n` letters of `F_{d,∞}`.
pub fn fixed_point_prefix(params: SeqParams, n: u64) -> Result<Word> {
    let n = params.check_len(n)?;
    Ok(Word::from_letters(FixedPoint::new(params).take(n)))
}

pub fn mirror(w: &Word) -> Word {
    w.mirror()
}

/// Ascending 1-based positions of all occurrences of `needle` in `haystack`,
/// overlapping ones included.
pub fn find_occurrences(needle: &Word, haystack: &Word) -> Result<Vec<u64>> {
    if needle.is_empty() {
        return Err(Error::EmptyWord);
    }
    let finder = memmem::Finder::new(needle.as_bytes());
    let hay = haystack.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    while let Some(off) = finder.find(&hay[start..]) {
        let at = start + off;
        out.push(at as u64 + 1);
        start = at + 1;
    }
    Ok(out)
}

pub fn letter_count(w: &Word, letter: Letter) -> usize {
    w.letter_count(letter)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn p(d: u32) -> SeqParams {
        SeqParams::new(d).unwrap()
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(sub_apply(2, &w("ab")), w("aaba"));
        assert_eq!(sub_apply(3, &w("a")), w("aaab"));
        assert_eq!(sub_apply(1, &w("aab")), w("ababa"));
        assert_eq!(sub_apply(0, &w("ab")), w("ba"));
    }

    #[test]
    fn fdm_examples() {
        assert_eq!(fdm(p(2), 2).unwrap(), w("aabaaba"));
        assert_eq!(fdm(p(3), 0).unwrap(), w("a"));
        assert_eq!(fdm(p(2), -1).unwrap(), w("b"));
        assert!(fdm(p(2), -2).is_err());
    }

    #[test]
    fn fdm_matches_iterated_substitution() {
        for d in 2..=5 {
            let mut it = w("a");
            for m in 0..6 {
                assert_eq!(fdm(p(d), m).unwrap(), it, "d={d} m={m}");
                it = sub_apply(d, &it);
            }
        }
    }

    #[test]
    fn lengths() {
        assert_eq!(f_len(p(3), 2).unwrap(), 13);
        assert_eq!(f_len(p(2), 0).unwrap(), 1);
        assert_eq!(f_len(p(2), -1).unwrap(), 1);
        assert_eq!(f_len(p(2), 3).unwrap(), 17);
        assert_eq!(f_len(p(4), 5).unwrap(), 1597);
    }

    #[test]
    fn length_overflow_is_reported() {
        assert!(matches!(f_len(p(2), 200), Err(Error::Overflow(_))));
        assert!(matches!(fdm(p(2), 40), Err(Error::CapExceeded { .. })));
        assert!(matches!(fdm(p(2), 200), Err(Error::Overflow(_))));
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(fixed_point_prefix(p(3), 17).unwrap(), w("aaabaaabaaabaaaab"));
        assert_eq!(fixed_point_prefix(p(2), 0).unwrap(), Word::empty());
        assert_eq!(fixed_point_prefix(p(2), 17).unwrap(), w("aabaabaaabaabaaab"));
        let small = p(2).with_cap(10);
        assert!(fixed_point_prefix(small, 10).is_ok());
        assert!(matches!(fixed_point_prefix(small, 11), Err(Error::CapExceeded { len: 11, cap: 10 })));
    }

    #[test]
    fn delta_parity() {
        assert_eq!(delta(0), Letter::A);
        assert_eq!(delta(1), Letter::B);
        assert_eq!(delta(-1), Letter::B);
        for d in 2..=4 {
            for m in -1..7 {
                assert_eq!(fdm(p(d), m).unwrap().last(), Some(delta(m)));
            }
        }
    }

    #[test]
    fn mirror_and_counts() {
        assert_eq!(mirror(&w("aab")), w("baa"));
        assert_eq!(mirror(&Word::empty()), Word::empty());
        assert_eq!(mirror(&w("aba")), w("aba"));
        assert_eq!(letter_count(&w("aab"), Letter::A), 2);
        assert_eq!(letter_count(&Word::empty(), Letter::B), 0);
        assert_eq!(letter_count(&w("aabaaba"), Letter::B), 2);
    }

    #[test]
    fn occurrences() {
        assert_eq!(find_occurrences(&w("aa"), &w("aabaa")).unwrap(), vec![1, 4]);
        let f19 = fixed_point_prefix(p(2), 19).unwrap();
        assert_eq!(find_occurrences(&w("aabaa"), &f19).unwrap(), vec![1, 4, 8, 11, 15]);
        assert_eq!(find_occurrences(&w("b"), &w("aaa")).unwrap(), Vec::<u64>::new());
        assert_eq!(find_occurrences(&w("aa"), &w("aaaa")).unwrap(), vec![1, 2, 3]);
        assert_eq!(find_occurrences(&Word::empty(), &w("a")), Err(Error::EmptyWord));
    }

    #[test]
    fn slices_are_one_based() {
        let x = w("aabab");
        assert_eq!(x.slice(2, 4), w("aba"));
        assert_eq!(x.slice(3, 2), Word::empty());
        assert_eq!(x.slice(1, 5), x);
        assert_eq!(x.at(3), Some(Letter::B));
        assert_eq!(x.at(0), None);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Word::parse("abc"), Err(Error::InvalidAlphabet('c')));
        assert_eq!(SeqParams::new(1), Err(Error::InvalidDigit(1)));
    }

    #[test]
    fn seq_kind_streams() {
        let labels: String = SeqKind::Image(1).letters(p(2)).take(7).map(Letter::as_char).collect();
        assert_eq!(labels, "ababaab");
        let plain: String = SeqKind::Plain.letters(p(2)).take(5).map(Letter::as_char).collect();
        assert_eq!(plain, "aabaa");
    }
}
