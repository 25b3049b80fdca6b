//! Factor types `T_{α,β}`, adjacency/separation/overlap of consecutive
//! occurrences, and palindromic factors.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gaps::{factor_gaps, gap_labels, Sign};
use crate::kernel::{kernel_word, star_decompose, KernelIndex};
use crate::word::{delta, f_len, fdm, SeqParams, Word};

/// Type of a factor by the signs of its two gaps.
///
/// `Typed { alpha, beta }` is `T_{α,β}` where `α` is the kernel type `i`.
/// Factors whose kernel has order 0 (powers of `a`) fall outside that
/// taxonomy and carry their raw gap signs instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeTag {
    Typed { alpha: u32, beta: u8 },
    OrderZero { i: u32, ga: Sign, gb: Sign },
}

impl TypeTag {
    /// For `OrderZero`, the `T_{α,β}` whose sign pattern the gaps match, if any.
    pub fn sign_pattern(&self, d: u32) -> Option<TypeTag> {
        match *self {
            TypeTag::Typed { .. } => Some(*self),
            TypeTag::OrderZero { i, ga, gb } => beta_for_signs(d, i, ga, gb).map(|beta| TypeTag::Typed { alpha: i, beta }),
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::Typed { alpha, beta } => write!(f, "T_{{{alpha},{beta}}}"),
            TypeTag::OrderZero { .. } => f.write_str("T_order0"),
        }
    }
}

impl Serialize for TypeTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The `β` of `T_{i,β}` for the given gap signs, or `None` when no type has
/// that pattern.
pub fn beta_for_signs(d: u32, i: u32, ga: Sign, gb: Sign) -> Option<u8> {
    use Sign::*;
    let beta = if i == 0 {
        match (ga, gb) {
            (Positive, Positive) => 1,
            (Empty, Positive) => 2,
            (Inverse, Positive) => 3,
            (Inverse, Empty) => 4,
            (Inverse, Inverse) => 5,
            _ => return None,
        }
    } else if i + 1 == d {
        match (ga, gb) {
            (Positive, Inverse) => 1,
            (Empty, Inverse) => 2,
            (Inverse, Inverse) => 3,
            _ => return None,
        }
    } else {
        match (ga, gb) {
            (Inverse, Positive) => 1,
            (Inverse, Empty) => 2,
            (Inverse, Inverse) => 3,
            _ => return None,
        }
    };
    Some(beta)
}

pub fn classify_type(w: &Word, params: SeqParams) -> Result<TypeTag> {
    let star = star_decompose(w, params)?;
    let gaps = factor_gaps(w, params)?;
    let (i, ga, gb) = (star.kernel.i(), gaps.ga.sign(), gaps.gb.sign());
    if star.kernel.m() == 0 {
        return Ok(TypeTag::OrderZero { i, ga, gb });
    }
    match beta_for_signs(params.d(), i, ga, gb) {
        Some(beta) => Ok(TypeTag::Typed { alpha: i, beta }),
        None => Err(Error::Inconsistent(format!("gap signs ({ga:?}, {gb:?}) of {w} fit no type for i = {i}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Adjacent,
    Separated,
    Overlapped,
}

impl From<Sign> for RelationKind {
    fn from(s: Sign) -> RelationKind {
        match s {
            Sign::Empty => RelationKind::Adjacent,
            Sign::Positive => RelationKind::Separated,
            Sign::Inverse => RelationKind::Overlapped,
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::Adjacent => "adjacent",
            RelationKind::Separated => "separated",
            RelationKind::Overlapped => "overlapped",
        })
    }
}

/// How `ω_p` and `ω_{p+1}` sit relative to each other.
pub fn relation_at(w: &Word, params: SeqParams, p: u64) -> Result<RelationKind> {
    if p == 0 {
        return Err(Error::IndexOutOfRange("occurrence index p must be at least 1".into()));
    }
    let star = star_decompose(w, params)?;
    let gaps = factor_gaps(w, params)?;
    let label = gap_labels(params, star.kernel.i())?
        .nth(p as usize - 1)
        .expect("label stream is infinite");
    Ok(gaps.gap(label).sign().into())
}

/// Which relations occur for at least one `p` (membership in `P_2`, `S_2`,
/// `O_2`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RelationSet {
    pub adjacent: bool,
    pub separated: bool,
    pub overlapped: bool,
}

impl RelationSet {
    pub fn insert(&mut self, kind: RelationKind) {
        match kind {
            RelationKind::Adjacent => self.adjacent = true,
            RelationKind::Separated => self.separated = true,
            RelationKind::Overlapped => self.overlapped = true,
        }
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.adjacent {
            out.push("P2");
        }
        if self.separated {
            out.push("S2");
        }
        if self.overlapped {
            out.push("O2");
        }
        out
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

impl Serialize for RelationSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.names().serialize(serializer)
    }
}

/// Both labels occur infinitely often in every label sequence, so the signs of
/// `G_A` and `G_B` decide the sets.
pub fn relation_sets(w: &Word, params: SeqParams) -> Result<RelationSet> {
    let gaps = factor_gaps(w, params)?;
    let mut set = RelationSet::default();
    set.insert(gaps.ga.sign().into());
    set.insert(gaps.gb.sign().into());
    Ok(set)
}

/// `ω` is a palindrome iff `x + y = f_{d,m}`.
pub fn palindrome_check_star(w: &Word, params: SeqParams) -> Result<bool> {
    let star = star_decompose(w, params)?;
    Ok(star.x + star.y == f_len(params, star.kernel.order())?)
}

/// All palindromic factors with kernel `k`, longest first:
/// `F_{d,m}[x, f_{d,m}-1] · K · (δ_{m+1} F_{d,m})[1, f_{d,m}-x]` for
/// `x = 1..=f_{d,m}`.
pub fn palindromes_with_kernel(k: KernelIndex) -> Result<Vec<Word>> {
    let m = k.order();
    let f = fdm(k.params(), m)?;
    let kw = kernel_word(k)?;
    let mut right_src = Word::repeat_letter(delta(m + 1), 1);
    right_src.push_word(&f);
    let fm = f.len();
    let out = (1..=fm)
        .map(|x| {
            let mut w = f.slice(x, fm - 1);
            w.push_word(&kw);
            w.push_word(&right_src.prefix(fm - x));
            w
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{envelope_word, is_factor, kernel_of};

    fn p(d: u32) -> SeqParams {
        SeqParams::new(d).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn k(d: u32, m: u32, i: u32) -> KernelIndex {
        KernelIndex::new(p(d), m, i).unwrap()
    }

    #[test]
    fn type_examples() {
        let aa = classify_type(&w("aa"), p(2)).unwrap();
        assert_eq!(aa, TypeTag::OrderZero { i: 1, ga: Sign::Positive, gb: Sign::Inverse });
        assert_eq!(aa.sign_pattern(2), Some(TypeTag::Typed { alpha: 1, beta: 1 }));
        assert_eq!(aa.to_string(), "T_order0");
        let aba = classify_type(&w("aba"), p(2)).unwrap();
        assert_eq!(aba, TypeTag::Typed { alpha: 0, beta: 2 });
        assert_eq!(aba.to_string(), "T_{0,2}");
        assert_eq!(classify_type(&w("aabaa"), p(2)).unwrap(), TypeTag::Typed { alpha: 0, beta: 5 });
    }

    #[test]
    fn relation_examples() {
        assert_eq!(relation_at(&w("aa"), p(2), 1).unwrap(), RelationKind::Separated);
        assert_eq!(relation_at(&w("aa"), p(2), 3).unwrap(), RelationKind::Overlapped);
        assert_eq!(relation_at(&w("a"), p(2), 1).unwrap(), RelationKind::Adjacent);
        assert!(relation_at(&w("a"), p(2), 0).is_err());
    }

    #[test]
    fn relation_set_examples() {
        let set = |s: &str| relation_sets(&w(s), p(2)).unwrap().names();
        assert_eq!(set("aa"), ["S2", "O2"]);
        assert_eq!(set("aba"), ["P2", "S2"]);
        assert_eq!(set("a"), ["P2", "S2"]);
    }

    #[test]
    fn palindrome_star_examples() {
        assert!(palindrome_check_star(&w("aabaa"), p(2)).unwrap());
        assert!(palindrome_check_star(&w("aba"), p(2)).unwrap());
        assert!(!palindrome_check_star(&w("ab"), p(2)).unwrap());
    }

    #[test]
    fn palindrome_enumeration_examples() {
        assert_eq!(palindromes_with_kernel(k(2, 1, 0)).unwrap(), vec![w("aabaa"), w("aba"), w("b")]);
        assert_eq!(palindromes_with_kernel(k(2, 0, 0)).unwrap(), vec![w("a")]);
        let list = palindromes_with_kernel(k(3, 1, 1)).unwrap();
        assert_eq!(list.len(), 4);
        assert_eq!(list[0], envelope_word(k(3, 1, 1)).unwrap());
        assert_eq!(list[3], w("baaab"));
        for word in &list {
            assert!(word.is_palindrome());
            assert!(is_factor(word, p(3)).unwrap());
            assert_eq!(kernel_of(word, p(3)).unwrap().0, k(3, 1, 1));
        }
    }

    #[test]
    fn every_pattern_has_a_beta() {
        assert_eq!(beta_for_signs(3, 1, Sign::Inverse, Sign::Empty), Some(2));
        assert_eq!(beta_for_signs(3, 1, Sign::Positive, Sign::Empty), None);
        assert_eq!(beta_for_signs(2, 1, Sign::Empty, Sign::Inverse), Some(2));
    }
}
