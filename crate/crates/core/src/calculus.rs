//! The derivative D on words, smoothness, degree, fundamental words and
//! primitives.
//!
//! The derivative of a word is the run-length sequence of the word after its
//! boundary runs are adjusted: a first (last) run of length at most `r` is
//! discarded, one of length between `r+1` and `s` is extended to length `s`,
//! and a single run shorter than `s` derives to ε. A word is smooth when the
//! whole derivative chain stays over the alphabet.

use std::collections::BTreeSet;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Outcome of one derivative step. `raw_run_lengths` is the run-length
/// sequence of the altered word whether or not it stays over the alphabet;
/// `result` is present exactly when it does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeOutcome {
    pub raw_run_lengths: Word,
    pub result: Option<Word>,
}

impl DerivativeOutcome {
    pub fn is_derived(&self) -> bool {
        self.result.is_some()
    }
}

/// One derivative step.
pub fn derive(w: &Word, a: &Alphabet) -> Result<DerivativeOutcome> {
    w.check_over(a)?;
    let raw = derive_raw(w.letters(), a);
    let over = raw.iter().all(|&l| a.contains(l));
    let raw = Word::from_raw(raw);
    let result = over.then(|| raw.clone());
    Ok(DerivativeOutcome { raw_run_lengths: raw, result })
}

/// Run lengths of the altered word; boundary runs longer than `s` are kept
/// as they are and flunk the alphabet check downstream.
fn derive_raw(letters: &[Letter], a: &Alphabet) -> Vec<Letter> {
    let (r, s) = (a.small(), a.large());
    if letters.is_empty() {
        return Vec::new();
    }
    let mut lengths: Vec<u32> = Vec::new();
    let mut letter = letters[0];
    let mut mult: u32 = 1;
    for &l in &letters[1..] {
        if l == letter {
            mult += 1;
        } else {
            lengths.push(mult);
            letter = l;
            mult = 1;
        }
    }
    lengths.push(mult);

    if lengths.len() == 1 {
        let l = lengths[0];
        return if l < s { Vec::new() } else { vec![l.max(s)] };
    }
    let mut raw = Vec::with_capacity(lengths.len());
    let first = lengths[0];
    if first > r {
        raw.push(if first <= s { s } else { first });
    }
    raw.extend_from_slice(&lengths[1..lengths.len() - 1]);
    let last = *lengths.last().unwrap();
    if last > r {
        raw.push(if last <= s { s } else { last });
    }
    raw
}

/// Full smoothness report: the derivative chain down to ε or the first
/// non-derivable word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub is_smooth: bool,
    /// Largest j with D^j(w) ≠ ε; absent for ε and for non-smooth words.
    pub degree: Option<usize>,
    /// Successive derivatives starting at the word itself. Ends with ε when
    /// smooth, with the last derivable word otherwise.
    pub chain: Vec<Word>,
}

/// Iterates the derivative until ε or failure.
pub fn smoothness(w: &Word, a: &Alphabet) -> Result<SmoothnessReport> {
    w.check_over(a)?;
    let mut chain = vec![w.clone()];
    loop {
        let current = chain.last().unwrap();
        if current.is_empty() {
            let degree = (chain.len() >= 2).then(|| chain.len() - 2);
            return Ok(SmoothnessReport { is_smooth: true, degree, chain });
        }
        match derive(current, a)?.result {
            Some(next) => chain.push(next),
            None => return Ok(SmoothnessReport { is_smooth: false, degree: None, chain }),
        }
    }
}

/// Degree accessor; errors on ε and on non-smooth words.
pub fn degree(w: &Word, a: &Alphabet) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::InvalidInput("the empty word has no degree".into()));
    }
    let report = smoothness(w, a)?;
    report.degree.ok_or(Error::NotSmooth)
}

/// All nonempty words of degree 0, i.e. with derivative ε. Each is shorter
/// than `max{s, 2r+1}`, so a bounded scan is exhaustive.
pub fn fundamental_words(a: &Alphabet) -> Vec<Word> {
    let bound = a.fundamental_length_bound();
    let mut out = Vec::new();
    for len in 1..bound {
        for_each_word_over(a, len, &mut |letters| {
            if derive_raw(letters, a).is_empty() {
                out.push(Word::from_raw(letters.to_vec()));
            }
        });
    }
    out.sort();
    out
}

/// Calls `f` on every word of the given length over the alphabet.
pub(crate) fn for_each_word_over(a: &Alphabet, len: usize, f: &mut dyn FnMut(&[Letter])) {
    let mut letters = vec![a.small(); len];
    loop {
        f(&letters);
        // odometer increment over {r,s}
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if letters[i] == a.small() {
                letters[i] = a.large();
                break;
            }
            letters[i] = a.small();
        }
    }
}

/// All words v with D(v) = w.
///
/// Candidates are constructed (main run block from the letters of `w`, then
/// the admissible boundary options at both ends) and each is verified through
/// `derive`, so a misremembered boundary rule cannot leak wrong words out.
pub fn primitives(w: &Word, a: &Alphabet) -> Result<Vec<Word>> {
    let report = smoothness(w, a)?;
    if !report.is_smooth {
        return Err(Error::NotSmooth);
    }
    if w.is_empty() {
        let mut out = fundamental_words(a);
        out.push(Word::empty());
        out.sort();
        return Ok(out);
    }
    Ok(primitives_raw(w.letters(), a)
        .into_iter()
        .map(Word::from_raw)
        .collect())
}

/// Primitive enumeration on raw letters, assuming `w` is nonempty and
/// smooth. Returns sorted, deduplicated candidates.
pub(crate) fn primitives_raw(w: &[Letter], a: &Alphabet) -> Vec<Vec<Letter>> {
    let mut found: BTreeSet<Vec<Letter>> = BTreeSet::new();
    let mut check = |candidate: Vec<Letter>| {
        if derive_raw(&candidate, a) == w {
            found.insert(candidate);
        }
    };
    let (r, s) = (a.small(), a.large());
    if w.len() == 1 {
        // Both boundary options act on the same run; enumerate jointly.
        for &main in &[r, s] {
            let opposite = if main == r { s } else { r };
            for prefix in 0..=r {
                for suffix in 0..=r {
                    for len in 1..=s {
                        let mut v = Vec::with_capacity((prefix + len + suffix) as usize);
                        v.extend(std::iter::repeat(opposite).take(prefix as usize));
                        v.extend(std::iter::repeat(main).take(len as usize));
                        v.extend(std::iter::repeat(opposite).take(suffix as usize));
                        check(v);
                    }
                }
            }
        }
    } else {
        let lengths = w;
        let m = lengths.len();
        for &start in &[r, s] {
            let letter_of = |run: usize| if run % 2 == 0 { start } else if start == r { s } else { r };
            let last_letter = letter_of(m - 1);
            // Per-end options: (k, l) prepends a run of length k in the
            // opposite letter and realizes the boundary run at length l.
            let left_opts = end_options(lengths[0], r, s);
            let right_opts = end_options(lengths[m - 1], r, s);
            for &(lpre, lfirst) in &left_opts {
                for &(rsuf, rlast) in &right_opts {
                    let mut v = Vec::new();
                    v.extend(std::iter::repeat(other_of(letter_of(0), a)).take(lpre as usize));
                    for (i, &len) in lengths.iter().enumerate() {
                        let len = if i == 0 { lfirst } else if i == m - 1 { rlast } else { len };
                        v.extend(std::iter::repeat(letter_of(i)).take(len as usize));
                    }
                    v.extend(std::iter::repeat(other_of(last_letter, a)).take(rsuf as usize));
                    check(v);
                }
            }
        }
    }
    found.into_iter().collect()
}

fn other_of(letter: Letter, a: &Alphabet) -> Letter {
    if letter == a.small() {
        a.large()
    } else {
        a.small()
    }
}

/// (prepended run length, realized boundary run length) pairs for one end
/// whose derivative letter is `target`.
fn end_options(target: u32, r: u32, s: u32) -> Vec<(u32, u32)> {
    let mut opts = Vec::new();
    for k in 1..=r {
        opts.push((k, target));
    }
    if target == s {
        for l in r + 1..=s {
            opts.push((0, l));
        }
    }
    opts
}
