//! Exhaustive enumeration of smooth words: complexity γ(n), minimal letter
//! counts with frequency intervals, gap tables, and complexity-exponent fits.
//!
//! All searches are depth-first right extensions driven by `SmoothStack`, so
//! a branch dies as soon as any derivative level leaves the alphabet
//! irreparably. Smooth sets are mirror-closed, so the searches walk only the
//! words starting with the small letter and double the tallies.

use std::time::Instant;

use num::rational::Ratio;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::stack::SmoothStack;
use crate::word::{Letter, Word};

/// Wall-clock budget for long searches. `None` means unbounded.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchLimits {
    pub deadline: Option<Instant>,
    pub threads: usize,
}

impl SearchLimits {
    pub fn with_threads(threads: usize) -> Self {
        SearchLimits { deadline: None, threads }
    }
}

const BUDGET_POLL_MASK: u64 = (1 << 16) - 1;

/// γ(n) for n = 1..=complete_up_to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityTable {
    pub alphabet: Alphabet,
    pub entries: Vec<(usize, u64)>,
    pub complete_up_to: usize,
}

impl ComplexityTable {
    pub fn gamma(&self, n: usize) -> Option<u64> {
        self.entries.iter().find(|(m, _)| *m == n).map(|(_, g)| *g)
    }
}

/// Minimal number of small letters over the smooth words of one length,
/// with the induced two-sided frequency interval [a/n, (n−a)/n].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyInterval {
    pub n: usize,
    pub min_count: usize,
    pub witness: Word,
    pub lower: Ratio<u64>,
    pub upper: Ratio<u64>,
}

/// Maximal |v| such that wvw is smooth and w is not a subword of v, over all
/// smooth w of one length. Witnesses are reported up to mirror symmetry
/// (witness_w starts with the small letter).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapEntry {
    pub w_length: usize,
    pub max_v_length: usize,
    pub witness_w: Word,
    pub witness_v: Word,
    pub complete: bool,
}

/// Iterator over all smooth words of one exact length, in lexicographic
/// order of the letter values.
pub struct SmoothWords {
    stack: SmoothStack,
    path: Vec<Letter>,
    frames: Vec<u8>,
    letters: [Letter; 2],
    n: usize,
    done: bool,
}

impl SmoothWords {
    pub fn new(a: &Alphabet, n: usize) -> Self {
        SmoothWords {
            stack: SmoothStack::new(a),
            path: Vec::with_capacity(n),
            frames: vec![0],
            letters: [a.small(), a.large()],
            n,
            done: n == 0,
        }
    }
}

impl Iterator for SmoothWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        loop {
            let top = match self.frames.last_mut() {
                Some(t) => t,
                None => {
                    self.done = true;
                    return None;
                }
            };
            if *top >= 2 {
                self.frames.pop();
                if !self.frames.is_empty() {
                    self.stack.pop();
                    self.path.pop();
                }
                continue;
            }
            let letter = self.letters[*top as usize];
            *top += 1;
            if self.stack.try_push(letter) {
                self.path.push(letter);
                if self.path.len() == self.n {
                    let word = Word::from_raw(self.path.clone());
                    self.stack.pop();
                    self.path.pop();
                    return Some(word);
                }
                self.frames.push(0);
            }
        }
    }
}

/// Calls `f` on every smooth word of length exactly `n`.
pub fn for_each_smooth(a: &Alphabet, n: usize, f: &mut dyn FnMut(&[Letter])) {
    if n == 0 {
        return;
    }
    let mut stack = SmoothStack::new(a);
    let mut path: Vec<Letter> = Vec::with_capacity(n);
    let letters = [a.small(), a.large()];
    let mut frames: Vec<u8> = vec![0];
    while let Some(top) = frames.last_mut() {
        if *top >= 2 {
            frames.pop();
            if !frames.is_empty() {
                stack.pop();
                path.pop();
            }
            continue;
        }
        let letter = letters[*top as usize];
        *top += 1;
        if stack.try_push(letter) {
            path.push(letter);
            if path.len() == n {
                f(&path);
                stack.pop();
                path.pop();
            } else {
                frames.push(0);
            }
        }
    }
}

/// Tallies every node of the extension tree below `seed` (exclusive) into
/// `counts[len-1]`, exploring up to length `n_max`.
fn count_subtree(
    a: &Alphabet,
    seed: &[Letter],
    n_max: usize,
    counts: &mut [u64],
    deadline: Option<Instant>,
) -> Result<()> {
    let mut stack = SmoothStack::new(a);
    for &l in seed {
        if !stack.try_push(l) {
            return Ok(()); // seed not smooth; nothing below it
        }
    }
    let base = seed.len();
    if base >= n_max {
        return Ok(());
    }
    let letters = [a.small(), a.large()];
    let mut frames: Vec<u8> = vec![0];
    let mut nodes: u64 = 0;
    while let Some(top) = frames.last_mut() {
        if *top >= 2 {
            frames.pop();
            if !frames.is_empty() {
                stack.pop();
            }
            continue;
        }
        let letter = letters[*top as usize];
        *top += 1;
        if stack.try_push(letter) {
            let len = base + frames.len();
            counts[len - 1] += 1;
            nodes += 1;
            if nodes & BUDGET_POLL_MASK == 0 {
                if let Some(d) = deadline {
                    if Instant::now() >= d {
                        return Err(Error::ResourceCap(format!(
                            "complexity enumeration interrupted after {nodes} nodes"
                        )));
                    }
                }
            }
            if len < n_max {
                frames.push(0);
            } else {
                stack.pop();
            }
        }
    }
    Ok(())
}

/// Smooth prefixes of exact length `depth` starting with the small letter,
/// in lexicographic order. Tallies all shorter r-started words into counts.
fn r_started_prefixes(a: &Alphabet, depth: usize, counts: &mut [u64]) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut stack = SmoothStack::new(a);
    let ok = stack.try_push(a.small());
    debug_assert!(ok);
    counts[0] += 1;
    if depth == 1 {
        out.push(vec![a.small()]);
        return out;
    }
    let letters = [a.small(), a.large()];
    let mut path = vec![a.small()];
    let mut frames: Vec<u8> = vec![0];
    while let Some(top) = frames.last_mut() {
        if *top >= 2 {
            frames.pop();
            if !frames.is_empty() {
                stack.pop();
                path.pop();
            }
            continue;
        }
        let letter = letters[*top as usize];
        *top += 1;
        if stack.try_push(letter) {
            path.push(letter);
            counts[path.len() - 1] += 1;
            if path.len() == depth {
                out.push(path.clone());
                stack.pop();
                path.pop();
            } else {
                frames.push(0);
            }
        }
    }
    out
}

/// Counts of smooth words per length, walking only r-started words.
/// `γ(n) = 2 · counts[n-1]` by mirror closure.
fn count_r_started(a: &Alphabet, n_max: usize, limits: &SearchLimits) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; n_max];
    let threads = limits.threads.max(1);
    let split_depth = 10usize.min(n_max);
    if threads <= 1 || n_max <= split_depth {
        count_subtree(a, &[a.small()], n_max, &mut counts[..], limits.deadline)?;
        counts[0] += 1;
        return Ok(counts);
    }
    let prefixes = r_started_prefixes(a, split_depth, &mut counts[..]);
    let chunks: Vec<Vec<Vec<Letter>>> = {
        let mut cs: Vec<Vec<Vec<Letter>>> = (0..threads).map(|_| Vec::new()).collect();
        for (i, p) in prefixes.into_iter().enumerate() {
            cs[i % threads].push(p);
        }
        cs
    };
    let results: Vec<Result<Vec<u64>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                scope.spawn(move || {
                    let mut local = vec![0u64; n_max];
                    for prefix in chunk {
                        count_subtree(a, prefix, n_max, &mut local[..], limits.deadline)?;
                    }
                    Ok(local)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    for res in results {
        let local = res?;
        for (c, l) in counts.iter_mut().zip(local) {
            *c += l;
        }
    }
    Ok(counts)
}

/// γ(n) for n = 1..=n_max.
pub fn complexity_table(a: &Alphabet, n_max: usize, limits: &SearchLimits) -> Result<ComplexityTable> {
    let counts = count_r_started(a, n_max, limits)?;
    let entries = counts.iter().enumerate().map(|(i, &c)| (i + 1, 2 * c)).collect();
    Ok(ComplexityTable { alphabet: *a, entries, complete_up_to: n_max })
}

/// Exact minimum of |w|_r over the smooth words of length n, with witness.
pub fn min_letter_count(a: &Alphabet, n: usize, limits: &SearchLimits) -> Result<FrequencyInterval> {
    if n == 0 {
        return Err(Error::InvalidInput("length must be positive".into()));
    }
    let threads = limits.threads.max(1);
    let split_depth = 10usize.min(n);
    let mut scratch = vec![0u64; split_depth];
    let prefixes = r_started_prefixes(a, split_depth, &mut scratch[..]);
    let run = |prefix: &[Letter]| -> Result<Option<MinMaxCount>> {
        min_max_r_in_subtree(a, prefix, n, limits.deadline)
    };
    let merged: Result<Option<MinMaxCount>> = if threads <= 1 || n <= split_depth {
        let mut acc: Option<MinMaxCount> = None;
        if n <= split_depth {
            // exact-length words are the prefixes themselves
            for p in &prefixes {
                if p.len() == n {
                    let c = p.iter().filter(|&&l| l == a.small()).count();
                    merge_min_max(&mut acc, MinMaxCount::single(c, p));
                }
            }
            Ok(acc)
        } else {
            for p in &prefixes {
                if let Some(m) = run(p)? {
                    merge_min_max(&mut acc, m);
                }
            }
            Ok(acc)
        }
    } else {
        let chunks: Vec<Vec<Vec<Letter>>> = {
            let mut cs: Vec<Vec<Vec<Letter>>> = (0..threads).map(|_| Vec::new()).collect();
            for (i, p) in prefixes.into_iter().enumerate() {
                cs[i % threads].push(p);
            }
            cs
        };
        let results: Vec<Result<Option<MinMaxCount>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| {
                    scope.spawn(move || {
                        let mut acc: Option<MinMaxCount> = None;
                        for prefix in chunk {
                            if let Some(m) = min_max_r_in_subtree(a, prefix, n, limits.deadline)? {
                                merge_min_max(&mut acc, m);
                            }
                        }
                        Ok(acc)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut acc: Option<MinMaxCount> = None;
        for res in results {
            if let Some(m) = res? {
                merge_min_max(&mut acc, m);
            }
        }
        Ok(acc)
    };
    let m = merged?.ok_or_else(|| Error::InvalidInput(format!("no smooth word of length {n}")))?;
    // Mirror closure: the s-started words contribute n − (max r count on the
    // r-started side), with the mirrored witness.
    let mirrored = n - m.max_count;
    let (min_count, witness) = if mirrored < m.min_count {
        (mirrored, Word::from_raw(m.max_witness).mirror(a)?)
    } else {
        (m.min_count, Word::from_raw(m.min_witness))
    };
    Ok(FrequencyInterval {
        n,
        min_count,
        witness,
        lower: Ratio::new(min_count as u64, n as u64),
        upper: Ratio::new((n - min_count) as u64, n as u64),
    })
}

struct MinMaxCount {
    min_count: usize,
    min_witness: Vec<Letter>,
    max_count: usize,
    max_witness: Vec<Letter>,
}

impl MinMaxCount {
    fn single(count: usize, word: &[Letter]) -> Self {
        MinMaxCount {
            min_count: count,
            min_witness: word.to_vec(),
            max_count: count,
            max_witness: word.to_vec(),
        }
    }
}

fn merge_min_max(acc: &mut Option<MinMaxCount>, m: MinMaxCount) {
    match acc {
        None => *acc = Some(m),
        Some(cur) => {
            if m.min_count < cur.min_count
                || (m.min_count == cur.min_count && m.min_witness < cur.min_witness)
            {
                cur.min_count = m.min_count;
                cur.min_witness = m.min_witness;
            }
            if m.max_count > cur.max_count
                || (m.max_count == cur.max_count && m.max_witness < cur.max_witness)
            {
                cur.max_count = m.max_count;
                cur.max_witness = m.max_witness;
            }
        }
    }
}

fn min_max_r_in_subtree(
    a: &Alphabet,
    seed: &[Letter],
    n: usize,
    deadline: Option<Instant>,
) -> Result<Option<MinMaxCount>> {
    let mut stack = SmoothStack::new(a);
    for &l in seed {
        if !stack.try_push(l) {
            return Ok(None);
        }
    }
    let base = seed.len();
    debug_assert!(base < n);
    let letters = [a.small(), a.large()];
    let mut path: Vec<Letter> = seed.to_vec();
    let mut r_count = seed.iter().filter(|&&l| l == a.small()).count();
    let mut acc: Option<MinMaxCount> = None;
    let mut frames: Vec<u8> = vec![0];
    let mut nodes: u64 = 0;
    while let Some(top) = frames.last_mut() {
        if *top >= 2 {
            frames.pop();
            if !frames.is_empty() {
                stack.pop();
                if path.pop() == Some(a.small()) {
                    r_count -= 1;
                }
            }
            continue;
        }
        let letter = letters[*top as usize];
        *top += 1;
        if stack.try_push(letter) {
            path.push(letter);
            if letter == a.small() {
                r_count += 1;
            }
            nodes += 1;
            if nodes & BUDGET_POLL_MASK == 0 {
                if let Some(d) = deadline {
                    if Instant::now() >= d {
                        return Err(Error::ResourceCap(
                            "minimum-count search interrupted; no bound reported".into(),
                        ));
                    }
                }
            }
            if path.len() == n {
                merge_min_max(&mut acc, MinMaxCount::single(r_count, &path));
                stack.pop();
                if path.pop() == Some(a.small()) {
                    r_count -= 1;
                }
            } else {
                frames.push(0);
            }
        }
    }
    Ok(acc)
}

/// For each 1 ≤ |w| ≤ w_len_max, the maximal |v| with wvw smooth and w not
/// a subword of v.
pub fn gap_table(a: &Alphabet, w_len_max: usize, limits: &SearchLimits) -> Result<Vec<GapEntry>> {
    let mut out = Vec::with_capacity(w_len_max);
    for w_len in 1..=w_len_max {
        let mut best: Option<(usize, Vec<Letter>, Vec<Letter>)> = None;
        let mut complete = true;
        let mut err: Option<Error> = None;
        for_each_smooth(a, w_len, &mut |w| {
            if w[0] != a.small() || err.is_some() {
                return; // mirror halving
            }
            match gap_search(a, w, limits.deadline) {
                Ok(Some((vlen, v))) => {
                    let better = match &best {
                        None => true,
                        Some((b, _, _)) => vlen > *b,
                    };
                    if better {
                        best = Some((vlen, w.to_vec(), v));
                    }
                }
                Ok(None) => {}
                Err(e) => {
                    complete = false;
                    err = Some(e);
                }
            }
        });
        match best {
            Some((max_v_length, ww, vv)) => out.push(GapEntry {
                w_length: w_len,
                max_v_length,
                witness_w: Word::from_raw(ww),
                witness_v: Word::from_raw(vv),
                complete,
            }),
            None => {
                return Err(err.unwrap_or_else(|| {
                    Error::InvalidInput(format!("no admissible v for |w| = {w_len}"))
                }))
            }
        }
    }
    Ok(out)
}

/// Maximal |v| for one fixed w. Extends w letter by letter; a branch stops
/// being useful once an interior occurrence of w can no longer overlap the
/// closing copy.
fn gap_search(
    a: &Alphabet,
    w: &[Letter],
    deadline: Option<Instant>,
) -> Result<Option<(usize, Vec<Letter>)>> {
    let k = w.len();
    let mut stack = SmoothStack::new(a);
    for &l in w {
        if !stack.try_push(l) {
            return Ok(None);
        }
    }
    let letters = [a.small(), a.large()];
    let mut path: Vec<Letter> = w.to_vec();
    let mut occ_ends: Vec<usize> = Vec::new(); // ends of occurrences starting at ≥ k
    let mut best: Option<(usize, Vec<Letter>)> = None;
    let mut frames: Vec<u8> = vec![0];
    let mut nodes: u64 = 0;
    while let Some(top) = frames.last_mut() {
        if *top >= 2 {
            frames.pop();
            if !frames.is_empty() {
                if occ_ends.last() == Some(&path.len()) {
                    occ_ends.pop();
                }
                stack.pop();
                path.pop();
            }
            continue;
        }
        let letter = letters[*top as usize];
        *top += 1;
        if !stack.try_push(letter) {
            continue;
        }
        path.push(letter);
        nodes += 1;
        if nodes & BUDGET_POLL_MASK == 0 {
            if let Some(d) = deadline {
                if Instant::now() >= d {
                    return Err(Error::ResourceCap(format!(
                        "gap search for w = {:?} interrupted",
                        Word::from_raw(w.to_vec())
                    )));
                }
            }
        }
        let len = path.len();
        let ends_with_w = len >= 2 * k && path[len - k..] == *w;
        if ends_with_w {
            let b = len - k;
            // valid closure iff every earlier recorded occurrence straddles
            // the closing copy, i.e. ends beyond b
            if occ_ends.iter().all(|&e| e > b) {
                let vlen = b - k;
                let better = best.as_ref().map_or(true, |(bl, _)| vlen > *bl);
                if better {
                    best = Some((vlen, path[k..b].to_vec()));
                }
            }
            occ_ends.push(len);
        }
        // Any future valid closure at length L needs L − k < first occurrence
        // end; beyond that the subtree is dead.
        let can_descend = match occ_ends.first() {
            Some(&e0) => len < e0 + k - 1,
            None => true,
        };
        if can_descend {
            frames.push(0);
        } else {
            if occ_ends.last() == Some(&len) {
                occ_ends.pop();
            }
            stack.pop();
            path.pop();
        }
    }
    Ok(best)
}

/// Least-squares exponent fit on (ln n, ln γ(n)), with the reference
/// exponents for the alphabet: the conjectured δ = ln(r+s)/ln((r+s)/2) and
/// the proven envelope exponents α and β.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub delta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub n_min: usize,
    pub points_used: usize,
}

pub fn exponent_fit(table: &ComplexityTable, n_min: usize) -> Result<ExponentFit> {
    let points: Vec<(f64, f64)> = table
        .entries
        .iter()
        .filter(|(n, g)| *n >= n_min && *g > 0)
        .map(|(n, g)| ((*n as f64).ln(), (*g as f64).ln()))
        .collect();
    if points.len() < 10 {
        return Err(Error::InvalidInput(format!(
            "exponent fit needs at least 10 points with n ≥ {n_min}, got {}",
            points.len()
        )));
    }
    let m = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let intercept = (sy - slope * sx) / m;
    let (r, s) = (table.alphabet.small() as f64, table.alphabet.large() as f64);
    Ok(ExponentFit {
        slope,
        intercept,
        delta: ((r + s).ln()) / (((r + s) / 2.0).ln()),
        alpha: ((2.0 * s * s).ln()) / ((2.0 * r * s / (r + s)).ln()),
        beta: ((r + s).ln()) / (((r * r + s * s) / (r + s)).ln()),
        n_min,
        points_used: points.len(),
    })
}
