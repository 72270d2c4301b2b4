//! Palindromic smooth words.
//!
//! The derivative of a palindrome is a palindrome, and only odd-length
//! palindromes have palindromic primitives: an odd middle letter yields
//! odd-length palindromic primitives, an even middle letter yields
//! even-length ones, and even-length palindromes yield none. Closing the
//! palindromic fundamental words under palindromic primitives therefore
//! enumerates every palindromic smooth word, and following the odd chain
//! outward from a fundamental word with odd middle letter builds the
//! two-sided palindromic extensions.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::alphabet::Alphabet;
use crate::calculus::{fundamental_words, primitives, smoothness};
use crate::error::{Error, Result};
use crate::word::Word;

/// Palindromic fundamental words, split by the parity classes that drive
/// the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PalindromicFundamentals {
    pub odd_odd_middle: Vec<Word>,
    pub odd_even_middle: Vec<Word>,
    pub even: Vec<Word>,
}

pub fn palindromic_fundamentals(a: &Alphabet) -> PalindromicFundamentals {
    let mut out = PalindromicFundamentals {
        odd_odd_middle: Vec::new(),
        odd_even_middle: Vec::new(),
        even: Vec::new(),
    };
    for w in fundamental_words(a) {
        if !w.is_palindrome() {
            continue;
        }
        if w.len() % 2 == 0 {
            out.even.push(w);
        } else if w.letters()[w.len() / 2] % 2 == 1 {
            out.odd_odd_middle.push(w);
        } else {
            out.odd_even_middle.push(w);
        }
    }
    out
}

/// The palindromes among the primitives of a palindromic smooth word.
pub fn palindromic_primitives(p: &Word, a: &Alphabet) -> Result<Vec<Word>> {
    if !p.is_palindrome() {
        return Err(Error::InvalidInput(format!("{p} is not a palindrome")));
    }
    Ok(primitives(p, a)?.into_iter().filter(|v| v.is_palindrome()).collect())
}

/// All palindromic smooth words per length up to `generated_up_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PalindromeTable {
    pub alphabet: Alphabet,
    pub per_length: BTreeMap<usize, Vec<Word>>,
    pub generated_up_to: usize,
}

impl PalindromeTable {
    pub fn words_of_length(&self, n: usize) -> &[Word] {
        self.per_length.get(&n).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

/// Closure of the palindromic fundamental words under palindromic
/// primitives, collected per length. Complete for every length ≤ n_max:
/// derivatives shorten palindromes, so each one is reached from below.
pub fn enumerate_palindromes(a: &Alphabet, n_max: usize) -> Result<PalindromeTable> {
    let fundamentals = palindromic_fundamentals(a);
    let mut queue: VecDeque<Word> = VecDeque::new();
    let mut seen: HashSet<Word> = HashSet::new();
    for w in fundamentals
        .odd_odd_middle
        .iter()
        .chain(&fundamentals.odd_even_middle)
        .chain(&fundamentals.even)
    {
        if w.len() <= n_max && seen.insert(w.clone()) {
            queue.push_back(w.clone());
        }
    }
    let mut per_length: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
    while let Some(p) = queue.pop_front() {
        per_length.entry(p.len()).or_default().push(p.clone());
        for q in palindromic_primitives(&p, a)? {
            if q.len() <= n_max && seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    for words in per_length.values_mut() {
        words.sort();
    }
    Ok(PalindromeTable { alphabet: *a, per_length, generated_up_to: n_max })
}

/// A palindrome of odd length with its center position marked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenteredPalindrome {
    pub word: Word,
    pub center: usize,
    /// True when no further two-sided extension exists.
    pub halted: bool,
}

impl CenteredPalindrome {
    /// The middle `2h+1` letters around the center.
    pub fn middle(&self, h: usize) -> Option<Word> {
        if self.center < h || self.center + h >= self.word.len() {
            return None;
        }
        Some(self.word.slice(self.center - h..self.center + h + 1))
    }
}

/// Grows two-sided palindromic extensions from an odd palindrome: each step
/// replaces every live branch by its palindromic primitives that contain it
/// centrally, so the word extends outward on both sides and the center
/// letter never moves. Usually the extension is unique; when it is not, all
/// branches are kept up to `branch_cap`.
pub fn extend_palindrome_two_sided(
    seed: &Word,
    a: &Alphabet,
    steps: usize,
    branch_cap: usize,
) -> Result<Vec<CenteredPalindrome>> {
    if seed.is_empty() || seed.len() % 2 == 0 || !seed.is_palindrome() {
        return Err(Error::InvalidInput(
            "two-sided extension needs a nonempty odd-length palindrome seed".into(),
        ));
    }
    if !smoothness(seed, a)?.is_smooth {
        return Err(Error::NotSmooth);
    }
    let mut branches = vec![CenteredPalindrome { word: seed.clone(), center: seed.len() / 2, halted: false }];
    for _ in 0..steps {
        if branches.iter().all(|b| b.halted) {
            break;
        }
        let mut next: Vec<CenteredPalindrome> = Vec::new();
        for branch in branches {
            if branch.halted {
                next.push(branch);
                continue;
            }
            let h = branch.word.len() / 2;
            let mut extended = false;
            for q in palindromic_primitives(&branch.word, a)? {
                if q.len() % 2 == 1 {
                    let center = q.len() / 2;
                    let candidate = CenteredPalindrome { word: q, center, halted: false };
                    if candidate.middle(h).as_ref() == Some(&branch.word) {
                        extended = true;
                        if next.len() < branch_cap {
                            next.push(candidate);
                        }
                    }
                }
            }
            if !extended {
                next.push(CenteredPalindrome { halted: true, ..branch });
            }
        }
        branches = next;
    }
    Ok(branches)
}
