//! Brute-force ground truth.
//!
//! Occurrences and gaps here come from scanning a generated prefix of
//! `F_{d,∞}` letter by letter, and [`cutting_prefix`] produces the sequence
//! from the line `y = θx` itself with exact integer arithmetic. Nothing in
//! this module reads the closed forms it is used to check, except
//! [`verify_all`], which compares the two.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;

use crate::classify::{classify_type, palindrome_check_star, palindromes_with_kernel, relation_at, relation_sets, RelationKind, RelationSet};
use crate::error::{Error, Result};
use crate::gaps::{envelope_gaps, factor_gaps, gap_sequence_labels, gap_zero, kernel_gaps, label_kind, reduce_product, GapProfile, SignedWord};
use crate::kernel::{envelope_margins, envelope_word, is_factor, kernel_of, kernel_word, kernel_word_recursive, star_decompose, KernelIndex};
use crate::positions::{envelope_position, factor_position, kernel_position};
use crate::word::{delta, f_len, fdm, find_occurrences, fixed_point_prefix, Letter, SeqParams, Word};

/// Longest prefix the oracle will generate, independent of the caller's cap.
pub const ORACLE_MAX_LEN: u64 = 1 << 27;

fn oracle_params(params: SeqParams, n: u64) -> Result<SeqParams> {
    if n > ORACLE_MAX_LEN {
        return Err(Error::CapExceeded { len: n, cap: ORACLE_MAX_LEN as usize });
    }
    Ok(params.with_cap(params.cap().max(n as usize)))
}

/// All occurrence positions of `w` in the first `n` letters of `F_{d,∞}`.
pub fn scan_positions(w: &Word, params: SeqParams, n: u64) -> Result<Vec<u64>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let prefix = fixed_point_prefix(oracle_params(params, n)?, n)?;
    find_occurrences(w, &prefix)
}

/// Gap between occurrences at `s` and `t` (1-based, `s < t`) of a factor of
/// length `len`, read from `prefix`.
fn gap_between(prefix: &Word, s: u64, t: u64, len: u64) -> SignedWord {
    let end = s + len;
    if t == end {
        SignedWord::empty()
    } else if t > end {
        SignedWord::positive(prefix.slice(end as usize, t as usize - 1))
    } else {
        SignedWord::inverse(prefix.slice(t as usize, end as usize - 1))
    }
}

/// Occurrences of a factor in a prefix, the gaps between consecutive ones,
/// and their labels: `A` for gaps equal to the first gap, `B` for gaps equal
/// to the first gap that differs from it, `?` for anything else.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub factor: Word,
    pub prefix_len: u64,
    pub positions: Vec<u64>,
    pub gaps: Vec<SignedWord>,
    pub labels: String,
}

impl ScanReport {
    fn build(factor: &Word, prefix: &Word, positions: Vec<u64>) -> ScanReport {
        let len = factor.len() as u64;
        let gaps: Vec<SignedWord> = positions.windows(2).map(|p| gap_between(prefix, p[0], p[1], len)).collect();
        let first = gaps.first().cloned();
        let second = gaps.iter().find(|g| Some(*g) != first.as_ref()).cloned();
        let labels = gaps
            .iter()
            .map(|g| {
                if Some(g) == first.as_ref() {
                    'A'
                } else if Some(g) == second.as_ref() {
                    'B'
                } else {
                    '?'
                }
            })
            .collect();
        ScanReport { factor: factor.clone(), prefix_len: prefix.len() as u64, positions, gaps, labels }
    }

    /// Distinct gaps in order of first appearance.
    pub fn distinct_gaps(&self) -> Vec<SignedWord> {
        let mut out: Vec<SignedWord> = Vec::new();
        for g in &self.gaps {
            if !out.contains(g) {
                out.push(g.clone());
            }
        }
        out
    }

    pub fn relations(&self) -> Vec<RelationKind> {
        self.gaps.iter().map(|g| g.sign().into()).collect()
    }

    /// `min{p : G_p ≠ G_1}`, if a second gap was seen.
    pub fn first_switch(&self) -> Option<u64> {
        self.labels.find(|c| c != 'A').map(|i| i as u64 + 1)
    }
}

/// Gaps of `w` read from the first `n` letters of `F_{d,∞}`.
pub fn empirical_gaps(w: &Word, params: SeqParams, n: u64) -> Result<ScanReport> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let prefix = fixed_point_prefix(oracle_params(params, n)?, n)?;
    let positions = find_occurrences(w, &prefix)?;
    Ok(ScanReport::build(w, &prefix, positions))
}

/// Grows a prefix of `F_{d,∞}` on demand, doubling until enough occurrences
/// of the requested word are seen.
#[derive(Clone, Debug)]
pub struct Scanner {
    params: SeqParams,
    prefix: Word,
}

impl Scanner {
    pub fn new(params: SeqParams) -> Scanner {
        Scanner { params, prefix: Word::empty() }
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    fn grow_to(&mut self, n: u64) -> Result<()> {
        if (self.prefix.len() as u64) < n {
            self.prefix = fixed_point_prefix(oracle_params(self.params, n)?, n)?;
        }
        Ok(())
    }

    /// The first `count` occurrence positions of `w`.
    pub fn first_positions(&mut self, w: &Word, count: usize) -> Result<Vec<u64>> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        let finder = memchr::memmem::Finder::new(w.as_bytes());
        let mut out = Vec::with_capacity(count);
        let mut start = 0usize;
        let mut want = (self.prefix.len() as u64).max(4096).max(8 * w.len() as u64);
        loop {
            self.grow_to(want)?;
            let hay = self.prefix.as_bytes();
            while out.len() < count {
                match finder.find(&hay[start..]) {
                    Some(off) => {
                        out.push((start + off) as u64 + 1);
                        start += off + 1;
                    }
                    None => break,
                }
            }
            if out.len() >= count {
                return Ok(out);
            }
            // resume just before the old end so straddling matches are found
            start = start.max(hay.len().saturating_sub(w.len() - 1));
            want *= 2;
        }
    }

    /// Gaps over the first `count` occurrences of `w`.
    pub fn gaps(&mut self, w: &Word, count: usize) -> Result<ScanReport> {
        let positions = self.first_positions(w, count)?;
        Ok(ScanReport::build(w, &self.prefix, positions))
    }
}

/// `⌊kθ⌋` for `θ = (√(d²+4) - d) / 2`, exactly.
///
/// With `t = ⌊k√(d²+4)⌋` (an exact integer square root) and `k√(d²+4)`
/// irrational, `⌊(k√(d²+4) - kd)/2⌋ = ⌊(t - kd)/2⌋`.
pub fn floor_k_theta(d: u32, k: u64) -> Result<u64> {
    let d = d as u128;
    let k = k as u128;
    let disc = d * d + 4;
    let sq = k.checked_mul(k).and_then(|x| x.checked_mul(disc)).ok_or(Error::Overflow("k^2 (d^2 + 4)"))?;
    let t = sq.isqrt();
    // t >= kd because θ > 0
    Ok(((t - k * d) / 2) as u64)
}

/// The first `n` letters of the cutting sequence of `y = θx`, `θ = [0; d, d, ...]`:
/// an `a` for every vertical line `x = k`, preceded by a `b` whenever a
/// horizontal line is crossed between `x = k - 1` and `x = k`.
pub fn cutting_prefix(params: SeqParams, n: u64) -> Result<Word> {
    let n = params.check_len(n)?;
    let d = params.d();
    let mut out = Word::empty();
    let mut prev = 0u64;
    let mut k = 0u64;
    while out.len() < n {
        let next = floor_k_theta(d, k + 1)?;
        if next > prev {
            out.push(Letter::B);
            if out.len() == n {
                break;
            }
        }
        out.push(Letter::A);
        prev = next;
        k += 1;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyBounds {
    pub m_max: u32,
    pub len_max: usize,
    pub p_max: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub params: serde_json::Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub cases: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

struct Suite {
    params: serde_json::Value,
    checks: Vec<CheckResult>,
}

impl Suite {
    fn entry(&mut self, name: &str) -> &mut CheckResult {
        if let Some(idx) = self.checks.iter().position(|c| c.check == name) {
            return &mut self.checks[idx];
        }
        self.checks.push(CheckResult {
            check: name.to_string(),
            params: self.params.clone(),
            pass: true,
            counterexample: None,
            cases: 0,
        });
        self.checks.last_mut().unwrap()
    }

    fn check(&mut self, name: &str, ok: bool, ctx: impl FnOnce() -> String) {
        let e = self.entry(name);
        e.cases += 1;
        if !ok && e.pass {
            e.pass = false;
            e.counterexample = Some(ctx());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, got: Result<T>, want: Result<T>, ctx: impl FnOnce() -> String) {
        let ok = matches!((&got, &want), (Ok(g), Ok(w)) if g == w);
        self.check(name, ok, || format!("{}: got {:?}, expected {:?}", ctx(), got, want));
    }
}

/// Every distinct factor of length `1..=len_max` of the first `n` letters.
pub fn distinct_factors(params: SeqParams, n: u64, len_max: usize) -> Result<Vec<Word>> {
    let prefix = fixed_point_prefix(oracle_params(params, n)?, n)?;
    let mut set = BTreeSet::new();
    for len in 1..=len_max.min(prefix.len()) {
        for win in prefix.as_bytes().windows(len) {
            set.insert(win.to_vec());
        }
    }
    Ok(set.into_iter().map(Word::from_bytes_unchecked).collect())
}

fn kernels(params: SeqParams, m_max: u32) -> impl Iterator<Item = KernelIndex> {
    (0..=m_max).flat_map(move |m| (0..params.d()).map(move |i| KernelIndex::new(params, m, i).expect("i < d")))
}

/// Run every cross-check between the closed forms and the oracle over the
/// given grid. Failures are reported as data, with the first counterexample
/// of each check.
pub fn verify_all(params: SeqParams, bounds: VerifyBounds) -> VerifyReport {
    let d = params.d();
    let mut s = Suite {
        params: json!({ "d": d, "m_max": bounds.m_max, "len_max": bounds.len_max, "p_max": bounds.p_max }),
        checks: Vec::new(),
    };
    let params = params.with_cap(params.cap().max(ORACLE_MAX_LEN as usize));
    let mut scanner = Scanner::new(params);

    // generators
    let n = 10_000;
    s.eq("cutting_sequence", cutting_prefix(params, n), fixed_point_prefix(params, n), || format!("d={d} n={n}"));

    for m in 0..=bounds.m_max as i32 {
        let next = fdm(params, m + 1);
        let built = (|| Ok::<_, Error>(fdm(params, m)?.repeat(d as usize).concat(&fdm(params, m - 1)?)))();
        s.eq("concatenation_identity", built, next, || format!("d={d} m={m}"));
        s.eq("last_letter", fdm(params, m).map(|w| w.last()), Ok(Some(delta(m))), || format!("d={d} m={m}"));
        if m >= 1 {
            check_standard_word_occurrences(&mut s, params, m);
        }
    }

    // kernel and envelope words
    for k in kernels(params, bounds.m_max) {
        let ctx = || format!("{k}");
        let kw = kernel_word(k);
        let ew = envelope_word(k);
        s.check("kernel_palindrome", kw.as_ref().is_ok_and(Word::is_palindrome), ctx);
        s.check("envelope_palindrome", ew.as_ref().is_ok_and(Word::is_palindrome), ctx);
        s.eq("kernel_recursion", kernel_word_recursive(k), kw.clone(), ctx);
        let margins = envelope_margins(params, k.m()).and_then(|(l, r)| Ok(l.concat(&kw.clone()?).concat(&r)));
        s.eq("envelope_margins", margins, ew.clone(), ctx);
        s.eq("kernel_of_kernel", kw.as_ref().map_err(Clone::clone).and_then(|w| kernel_of(w, params).map(|r| r.0)), Ok(k), ctx);
        s.eq("gap_concatenation", gap_concatenation(k), Ok(true), ctx);

        if let (Ok(kw), Ok(ew)) = (kw, ew) {
            check_subject(&mut s, &mut scanner, "kernel", k, &kw, kernel_gaps(k), bounds.p_max);
            check_subject(&mut s, &mut scanner, "envelope", k, &ew, envelope_gaps(k), bounds.p_max);
            for p in 1..=bounds.p_max {
                let fm = f_len(params, k.order()).map(|f| f as i64 - 1);
                let diff = kernel_position(k, p).and_then(|a| Ok(a as i64 - envelope_position(k, p)? as i64));
                s.eq("position_difference", diff, fm, || format!("{k} p={p}"));
            }
            s.eq("kernel_gap_zero", gap_zero(&kw, params).map(|g| g.len() as u64), f_len(params, k.order()).map(|f| f - 1), ctx);
            s.eq("envelope_gap_zero", gap_zero(&ew, params), Ok(Word::empty()), ctx);
        }
    }

    // arbitrary factors
    let source = 3000.max(100 * bounds.len_max as u64);
    match distinct_factors(params, source, bounds.len_max) {
        Ok(factors) => {
            for w in &factors {
                check_factor(&mut s, &mut scanner, w, bounds.p_max);
            }
        }
        Err(e) => s.check("factor_enumeration", false, || e.to_string()),
    }

    // palindromes
    for k in kernels(params, bounds.m_max.min(3)) {
        check_palindromes(&mut s, params, k);
    }

    VerifyReport { checks: s.checks }
}

fn check_standard_word_occurrences(s: &mut Suite, params: SeqParams, m: i32) {
    let d = params.d();
    let (Ok(f), Ok(g), Ok(fm)) = (fdm(params, m), fdm(params, m - 1), f_len(params, m)) else {
        s.check("standard_word_occurrences", false, || format!("d={d} m={m}: could not build F"));
        return;
    };
    let fm1 = g.len() as u64;
    let ff = f.concat(&f);
    let fgf = f.concat(&g).concat(&f);
    // for m = 1 the middle occurrence disappears: a^d b a^{d+1} b holds a^d b only at 1 and d + 3
    let three = if m >= 2 { vec![1, fm + 1, fm + fm1 + 1] } else { vec![1, fm + fm1 + 1] };
    s.eq("standard_word_occurrences", find_occurrences(&f, &ff), Ok(vec![1, fm + 1]), || format!("F in FF, d={d} m={m}"));
    s.eq("standard_word_occurrences", find_occurrences(&f, &fgf), Ok(three), || format!("F in FGF, d={d} m={m}"));
    let trimmed = f.without_last();
    if !trimmed.is_empty() {
        s.eq("standard_word_occurrences", find_occurrences(&trimmed, &ff), Ok(vec![1, fm + 1]), || format!("F' in FF, d={d} m={m}"));
        s.eq(
            "standard_word_occurrences",
            find_occurrences(&trimmed, &fgf),
            Ok(vec![1, fm + 1, fm + fm1 + 1]),
            || format!("F' in FGF, d={d} m={m}"),
        );
    }
}

fn gap_concatenation(k: KernelIndex) -> Result<bool> {
    let kw = SignedWord::positive(kernel_word(k)?);
    let g = kernel_gaps(k)?;
    let (gap, target) = if k.i() + 1 < k.d() {
        (g.ga, KernelIndex::new(k.params(), k.m(), k.i() + 1)?)
    } else {
        (g.gb, KernelIndex::new(k.params(), k.m() + 2, 0)?)
    };
    Ok(reduce_product(&[&kw, &gap, &kw])? == SignedWord::positive(kernel_word(target)?))
}

/// Occurrences to scan: `p_max + 1`, and at least enough for the first `B`
/// label (`B <= d + 1`) to show up.
fn scan_count(d: u32, p_max: u64) -> usize {
    p_max.max(d as u64 + 2) as usize + 1
}

/// Positions and gaps of a kernel or envelope word against the scan.
fn check_subject(s: &mut Suite, scanner: &mut Scanner, kind: &str, k: KernelIndex, w: &Word, profile: Result<GapProfile>, p_max: u64) {
    let report = match scanner.gaps(w, scan_count(k.d(), p_max)) {
        Ok(r) => r,
        Err(e) => return s.check(&format!("{kind}_positions"), false, || format!("{k}: scan failed: {e}")),
    };
    for p in 1..=p_max {
        let closed = if kind == "kernel" { kernel_position(k, p) } else { envelope_position(k, p) };
        s.eq(&format!("{kind}_positions"), closed, Ok(report.positions[p as usize - 1]), || format!("{k} p={p}"));
    }
    check_gap_report(s, &format!("{kind}_gaps"), k, &report, profile);
}

fn check_gap_report(s: &mut Suite, name: &str, k: KernelIndex, report: &ScanReport, profile: Result<GapProfile>) {
    let who = || format!("{} (kernel {k})", report.factor);
    let profile = match profile {
        Ok(p) => p,
        Err(e) => return s.check(name, false, || format!("{}: {e}", who())),
    };
    let distinct = report.distinct_gaps();
    s.check(name, distinct == [profile.ga.clone(), profile.gb.clone()], || {
        format!("{}: scanned {:?}, closed form ({}, {})", who(), distinct, profile.ga, profile.gb)
    });
    let labels = gap_sequence_labels(k.params(), k.i(), report.gaps.len());
    s.eq("gap_labels", Ok(report.labels.clone()), labels, who);
    s.eq("first_switch", Ok(report.first_switch()), Ok(Some(profile.b as u64)), who);
    s.eq("first_switch", Ok(profile.b), Ok(label_kind(k.d(), k.i()).1), who);
}

fn check_factor(s: &mut Suite, scanner: &mut Scanner, w: &Word, p_max: u64) {
    let params = scanner.params;
    let d = params.d();
    let who = || format!("d={d} w={w}");
    s.eq("is_factor", is_factor(w, params), Ok(true), who);
    let star = match star_decompose(w, params) {
        Ok(star) => star,
        Err(e) => return s.check("star_decomposition", false, || format!("{}: {e}", who())),
    };
    let k = star.kernel;
    let kw = kernel_word(k);
    s.eq("unique_kernel", kw.as_ref().map_err(Clone::clone).and_then(|kw| Ok(find_occurrences(kw, w)?.len())), Ok(1), who);
    s.eq("star_decomposition", star.reassemble(), Ok(w.clone()), who);
    s.eq("envelope_contains_factor", envelope_word(k).map(|e| w.occurs_in(&e)), Ok(true), who);

    let report = match scanner.gaps(w, scan_count(d, p_max)) {
        Ok(r) => r,
        Err(e) => return s.check("two_gaps", false, || format!("{}: scan failed: {e}", who())),
    };
    let profile = factor_gaps(w, params);
    s.check("two_gaps", report.distinct_gaps().len() == 2, || format!("{}: {:?}", who(), report.distinct_gaps()));
    check_gap_report(s, "factor_gaps", k, &report, profile.clone());
    s.eq("gap_zero", gap_zero(w, params).map(|g| g.len() as u64 + 1), Ok(report.positions[0]), who);

    let kernel_profile = kernel_gaps(k);
    if let (Ok(fp), Ok(kp), Ok(left)) = (&profile, &kernel_profile, star.left_len()) {
        let shift = left as i64 + star.y as i64;
        s.eq("signed_length_shift", Ok(fp.ga.signed_len()), Ok(kp.ga.signed_len() - shift), who);
        s.eq("signed_length_shift", Ok(fp.gb.signed_len()), Ok(kp.gb.signed_len() - shift), who);
    }

    let relations = report.relations();
    for p in 1..=p_max {
        let scanned = report.positions[p as usize - 1];
        s.eq("factor_positions", factor_position(w, params, p), Ok(scanned), || format!("{} p={p}", who()));
        s.eq("relations", relation_at(w, params, p), Ok(relations[p as usize - 1]), || format!("{} p={p}", who()));
    }
    let mut seen = RelationSet::default();
    relations.iter().for_each(|&r| seen.insert(r));
    s.eq("relation_sets", relation_sets(w, params), Ok(seen), who);

    s.eq("palindrome_star", palindrome_check_star(w, params), Ok(w.is_palindrome()), who);

    if let Ok(fp) = &profile {
        match classify_type(w, params) {
            Ok(tag) => {
                let coherent = tag.sign_pattern(d).is_some_and(|t| {
                    matches!(t, crate::TypeTag::Typed { alpha, beta }
                        if alpha == k.i() && crate::classify::beta_for_signs(d, alpha, fp.ga.sign(), fp.gb.sign()) == Some(beta))
                });
                s.check("type_signs", coherent, || format!("{}: {tag} vs ({}, {})", who(), fp.ga, fp.gb));
                s.check("type_exhaustive", k.m() == 0 || matches!(tag, crate::TypeTag::Typed { .. }), || format!("{}: {tag}", who()));
            }
            Err(e) => s.check("type_exhaustive", false, || format!("{}: {e}", who())),
        }
    }
}

fn check_palindromes(s: &mut Suite, params: SeqParams, k: KernelIndex) {
    let who = || format!("{k}");
    let listed = match palindromes_with_kernel(k) {
        Ok(l) => l,
        Err(e) => return s.check("palindrome_enumeration", false, || format!("{k}: {e}")),
    };
    let Ok(envelope) = envelope_word(k) else {
        return s.check("palindrome_enumeration", false, who);
    };
    // every factor with kernel k sits inside E_k, so scanning E_k is exhaustive
    let mut found = BTreeSet::new();
    let bytes = envelope.as_bytes();
    for start in 0..bytes.len() {
        for end in start + 1..=bytes.len() {
            let cand = Word::from_bytes_unchecked(bytes[start..end].to_vec());
            if cand.is_palindrome() && kernel_of(&cand, params).is_ok_and(|(kk, _)| kk == k) {
                found.insert(cand);
            }
        }
    }
    let listed_set: BTreeSet<Word> = listed.iter().cloned().collect();
    s.check("palindrome_enumeration", listed_set == found && listed_set.len() == listed.len(), || {
        format!("{k}: listed {listed:?}, scanned {found:?}")
    });
    for w in &listed {
        let ok = w.is_palindrome() && is_factor(w, params).unwrap_or(false);
        s.check("palindrome_enumeration", ok, || format!("{k}: {w} is not a palindromic factor"));
    }
}
