//! Gap words between consecutive occurrences.
//!
//! A gap is empty when two occurrences touch, a positive word when they are
//! separated, and the formal inverse of the overlap when they overlap. Every
//! factor has exactly two distinct gaps `G_A` and `G_B`; which one follows the
//! p-th occurrence is read off the p-th letter of the label sequence
//! (`a ↦ A`, `b ↦ B`).

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel::{envelope_word, kernel_word, star_decompose, KernelIndex};
use crate::word::{fdm, Letter, SeqParams, Word};

pub use crate::word::SeqKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Inverse,
    Empty,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Inverse => -1,
            Sign::Empty => 0,
            Sign::Positive => 1,
        }
    }
}

/// ε, a nonempty word `ν`, or a formal inverse `ν^{-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedWord {
    sign: Sign,
    letters: Word,
}

impl SignedWord {
    pub fn empty() -> SignedWord {
        SignedWord { sign: Sign::Empty, letters: Word::empty() }
    }

    /// `ν`, or ε when `ν` is empty.
    pub fn positive(letters: Word) -> SignedWord {
        if letters.is_empty() {
            return SignedWord::empty();
        }
        SignedWord { sign: Sign::Positive, letters }
    }

    /// `ν^{-1}`, or ε when `ν` is empty.
    pub fn inverse(letters: Word) -> SignedWord {
        if letters.is_empty() {
            return SignedWord::empty();
        }
        SignedWord { sign: Sign::Inverse, letters }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn letters(&self) -> &Word {
        &self.letters
    }

    /// `+|ν|`, `0` or `-|ν|`.
    pub fn signed_len(&self) -> i64 {
        self.sign.as_i8() as i64 * self.letters.len() as i64
    }

    pub fn is_empty(&self) -> bool {
        self.sign == Sign::Empty
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Empty => f.write_str("ε"),
            Sign::Positive => write!(f, "{}", self.letters),
            Sign::Inverse => write!(f, "({})^-1", self.letters),
        }
    }
}

impl fmt::Debug for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SignedWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SignedWord", 2)?;
        s.serialize_field("letters", self.letters.as_str())?;
        s.serialize_field("sign", &self.sign.as_i8())?;
        s.end()
    }
}

/// Reduced element of the free group on `{a, b}`; `true` marks an inverse
/// generator.
#[derive(Clone, Debug, Default)]
struct FreeWord(Vec<(u8, bool)>);

impl FreeWord {
    fn push(&mut self, g: (u8, bool)) {
        match self.0.last() {
            Some(&(l, inv)) if l == g.0 && inv != g.1 => {
                self.0.pop();
            }
            _ => self.0.push(g),
        }
    }

    fn mul_signed(&mut self, w: &SignedWord) {
        match w.sign {
            Sign::Empty => {}
            Sign::Positive => w.letters.as_bytes().iter().for_each(|&b| self.push((b, false))),
            Sign::Inverse => w.letters.as_bytes().iter().rev().for_each(|&b| self.push((b, true))),
        }
    }

    fn into_signed(self) -> Result<SignedWord> {
        if self.0.is_empty() {
            return Ok(SignedWord::empty());
        }
        if self.0.iter().all(|&(_, inv)| !inv) {
            let bytes = self.0.into_iter().map(|(b, _)| b).collect();
            return Ok(SignedWord::positive(Word::from_bytes_unchecked(bytes)));
        }
        if self.0.iter().all(|&(_, inv)| inv) {
            // x_1^{-1} ... x_n^{-1} = (x_n ... x_1)^{-1}
            let bytes = self.0.into_iter().rev().map(|(b, _)| b).collect();
            return Ok(SignedWord::inverse(Word::from_bytes_unchecked(bytes)));
        }
        Err(Error::IrreducibleProduct)
    }
}

/// Freely reduce a product of signed words. The result must be ε, a pure
/// word or a pure inverse word.
pub fn reduce_product(parts: &[&SignedWord]) -> Result<SignedWord> {
    let mut acc = FreeWord::default();
    for part in parts {
        acc.mul_signed(part);
    }
    acc.into_signed()
}

/// `prefix_inverse^{-1} · core · suffix_inverse^{-1}`, freely reduced.
pub fn signed_reduce(prefix_inverse: &Word, core: &SignedWord, suffix_inverse: &Word) -> Result<SignedWord> {
    let left = SignedWord::inverse(prefix_inverse.clone());
    let right = SignedWord::inverse(suffix_inverse.clone());
    reduce_product(&[&left, core, &right])
}

/// The two distinct gaps, the first switch index `B = min{p : G_p ≠ G_1}`,
/// and the sequence the gap labels follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapProfile {
    pub ga: SignedWord,
    pub gb: SignedWord,
    pub b: u32,
    pub kind: SeqKind,
}

impl GapProfile {
    /// The gap labelled by `label` (`A` for `a`, `B` for `b`).
    pub fn gap(&self, label: Letter) -> &SignedWord {
        match label {
            Letter::A => &self.ga,
            Letter::B => &self.gb,
        }
    }
}

impl Serialize for GapProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("GapProfile", 4)?;
        s.serialize_field("B", &self.b)?;
        s.serialize_field("G_A", &self.ga)?;
        s.serialize_field("G_B", &self.gb)?;
        s.serialize_field("seq_kind", &self.kind)?;
        s.end()
    }
}

/// Label-sequence kind and switch index for kernel type `i`.
pub fn label_kind(d: u32, i: u32) -> (SeqKind, u32) {
    if i + 1 == d {
        (SeqKind::Plain, d + 1)
    } else {
        (SeqKind::Image(d - i - 1), d - i)
    }
}

fn kernel_at(k: KernelIndex, m: u32, i: u32) -> Result<Word> {
    kernel_word(KernelIndex::new(k.params(), m, i)?)
}

fn envelope_at(k: KernelIndex, m: u32, i: u32) -> Result<Word> {
    envelope_word(KernelIndex::new(k.params(), m, i)?)
}

/// Gaps of the kernel word `K_{d,m,i}`.
pub fn kernel_gaps(k: KernelIndex) -> Result<GapProfile> {
    let (d, m, i) = (k.d(), k.m(), k.i());
    let (kind, b) = label_kind(d, i);
    let (ga, gb) = if i + 1 == d {
        let ga = SignedWord::positive(kernel_at(k, m + 1, 0)?);
        // d >= 2, so d - 2 is a valid type
        let gb = SignedWord::inverse(kernel_at(k, m, d - 2)?);
        (ga, gb)
    } else {
        let ga = match (i, m) {
            (0, 0) => SignedWord::empty(),
            (0, m) => SignedWord::positive(kernel_at(k, m - 1, d - 1)?),
            (i, m) => SignedWord::inverse(kernel_at(k, m, i - 1)?),
        };
        (ga, SignedWord::positive(kernel_at(k, m + 1, 0)?))
    };
    Ok(GapProfile { ga, gb, b, kind })
}

/// Gaps of the envelope word `E_{d,m,i}`.
pub fn envelope_gaps(k: KernelIndex) -> Result<GapProfile> {
    let (d, m, i) = (k.d(), k.m(), k.i());
    let (kind, b) = label_kind(d, i);
    let b_or_lower = |k: KernelIndex| -> Result<SignedWord> {
        if m == 0 {
            Ok(SignedWord::positive(Word::repeat_letter(Letter::B, 1)))
        } else {
            Ok(SignedWord::inverse(envelope_at(k, m - 1, d - 2)?))
        }
    };
    let (ga, gb) = if i + 1 == d {
        (b_or_lower(k)?, SignedWord::inverse(envelope_at(k, m, d - 2)?))
    } else {
        let ga = match (i, m) {
            (0, 0) => SignedWord::empty(),
            (0, m) => SignedWord::inverse(envelope_at(k, m - 1, d - 1)?),
            (i, m) => SignedWord::inverse(envelope_at(k, m, i - 1)?),
        };
        (ga, b_or_lower(k)?)
    };
    Ok(GapProfile { ga, gb, b, kind })
}

/// Gaps of an arbitrary factor: `G(ω) = μ_2(ω)^{-1} G(Ker ω) μ_1(ω)^{-1}`.
pub fn factor_gaps(w: &Word, params: SeqParams) -> Result<GapProfile> {
    let star = star_decompose(w, params)?;
    let left = star.left_margin()?;
    let right = star.right_margin()?;
    let kernel = kernel_gaps(star.kernel)?;
    Ok(GapProfile {
        ga: signed_reduce(&right, &kernel.ga, &left)?,
        gb: signed_reduce(&right, &kernel.gb, &left)?,
        ..kernel
    })
}

/// `G_0(ω)`, the prefix of `F_{d,∞}` before the first occurrence:
/// `F_{d,m}[1, x-1]`.
pub fn gap_zero(w: &Word, params: SeqParams) -> Result<Word> {
    let star = star_decompose(w, params)?;
    let f = fdm(params, star.kernel.order())?;
    Ok(f.prefix(star.x as usize - 1))
}

/// Stream of gap labels for kernel type `i`.
pub fn gap_labels(params: SeqParams, i: u32) -> Result<impl Iterator<Item = Letter>> {
    if i >= params.d() {
        return Err(Error::IndexOutOfRange(format!("i = {i} must be below d = {}", params.d())));
    }
    Ok(label_kind(params.d(), i).0.letters(params))
}

/// The first `count` gap labels for kernel type `i`, as a string over `{A, B}`.
pub fn gap_sequence_labels(params: SeqParams, i: u32, count: usize) -> Result<String> {
    Ok(gap_labels(params, i)?.take(count).map(label_char).collect())
}

pub fn label_char(l: Letter) -> char {
    match l {
        Letter::A => 'A',
        Letter::B => 'B',
    }
}
