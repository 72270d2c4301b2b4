//! Squares, cubes and fourth powers among smooth words, and maximal orders
//! of repetition.
//!
//! A square is a smooth word w such that ww is smooth. Derivatives of
//! doubled words keep the shape u·v·u with |uv| even and −1 ≤ |v| ≤ 2s+1
//! (|v| = −1, meaning v cancels the last letter of u, only when r < s/2),
//! so the search seeds every smooth u·v·u with u fundamental or empty and
//! repeatedly expands primitives, keeping the ones that still carry the
//! shape or happen to be doubles. Whether the expansion reaches a fixpoint
//! is not guaranteed a priori; the caps and the `complete` flag make the
//! outcome part of the contract.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num::rational::Ratio;

use crate::alphabet::Alphabet;
use crate::calculus::{fundamental_words, primitives_raw};
use crate::error::{Error, Result};
use crate::stack::{is_smooth, SmoothStack};
use crate::word::{Letter, Word};

/// Search caps; the defaults are far beyond what the desk-scale alphabets
/// need.
#[derive(Debug, Clone, Copy)]
pub struct SquareCaps {
    pub max_live: usize,
    pub max_len: usize,
}

impl Default for SquareCaps {
    fn default() -> Self {
        SquareCaps { max_live: 1_000_000, max_len: 100_000 }
    }
}

/// Maximal order of repetition: max |w^k u| / |w| over k ≥ 1 and prefixes u
/// of w with w^k u smooth. `exact` is false when the letter cap was hit and
/// the value is only a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Moor {
    pub ratio: Ratio<u64>,
    pub exact: bool,
}

/// Everything found by the square search.
#[derive(Debug, Clone)]
pub struct SquareInventory {
    pub alphabet: Alphabet,
    pub squares: BTreeMap<usize, BTreeSet<Word>>,
    pub cubes: BTreeMap<usize, BTreeSet<Word>>,
    pub fourth_powers: BTreeMap<usize, BTreeSet<Word>>,
    /// Per square length, the maximum MOOR over the squares of that length.
    pub moor: BTreeMap<usize, Moor>,
    /// True when the expansion reached its fixpoint within the caps.
    pub complete: bool,
}

impl SquareInventory {
    pub fn total_squares(&self) -> usize {
        self.squares.values().map(|set| set.len()).sum()
    }

    pub fn total_cubes(&self) -> usize {
        self.cubes.values().map(|set| set.len()).sum()
    }

    pub fn total_fourth_powers(&self) -> usize {
        self.fourth_powers.values().map(|set| set.len()).sum()
    }

    /// Fills the cube and fourth-power subsets by direct smoothness tests
    /// on www and wwww.
    pub fn classify_powers(&mut self) {
        let a = self.alphabet;
        self.cubes.clear();
        self.fourth_powers.clear();
        for (len, set) in &self.squares {
            for w in set {
                let letters = w.letters();
                let triple: Vec<Letter> = letters.iter().chain(letters).chain(letters).copied().collect();
                if is_smooth(&triple, &a) {
                    self.cubes.entry(*len).or_default().insert(w.clone());
                    let quad: Vec<Letter> = triple.iter().chain(letters).copied().collect();
                    if is_smooth(&quad, &a) {
                        self.fourth_powers.entry(*len).or_default().insert(w.clone());
                    }
                }
            }
        }
    }

    /// Fills the per-length maximum MOOR over the recorded squares.
    pub fn compute_moor(&mut self) {
        let a = self.alphabet;
        self.moor.clear();
        for (len, set) in &self.squares {
            let mut best: Option<Moor> = None;
            for w in set {
                let m = max_order_of_repetition(w, &a, None).expect("squares are smooth");
                let better = match best {
                    None => true,
                    Some(b) => m.ratio > b.ratio,
                };
                if better {
                    best = Some(m);
                }
            }
            if let Some(b) = best {
                self.moor.insert(*len, b);
            }
        }
    }
}

/// Runs the seeded expansion to its fixpoint (or to the caps).
pub fn find_squares(a: &Alphabet, caps: SquareCaps) -> SquareInventory {
    let (r, s) = (a.small(), a.large());
    let max_v = (2 * s + 1) as usize;
    let negative_allowed = 2 * r < s;

    let mut inventory = SquareInventory {
        alphabet: *a,
        squares: BTreeMap::new(),
        cubes: BTreeMap::new(),
        fourth_powers: BTreeMap::new(),
        moor: BTreeMap::new(),
        complete: true,
    };

    let mut seeds: BTreeSet<Vec<Letter>> = BTreeSet::new();
    let mut units: Vec<Vec<Letter>> = fundamental_words(a).into_iter().map(Vec::from).collect();
    units.push(Vec::new());
    for u in &units {
        // u v u with |uv| even and 0 ≤ |v| ≤ 2s+1
        for v_len in 0..=max_v {
            if (u.len() + v_len) % 2 != 0 {
                continue;
            }
            each_word_of_len(a, v_len, &mut |v| {
                if u.is_empty() && v.is_empty() {
                    return;
                }
                let mut word = Vec::with_capacity(2 * u.len() + v.len());
                word.extend_from_slice(u);
                word.extend_from_slice(v);
                word.extend_from_slice(u);
                if is_smooth(&word, a) {
                    seeds.insert(word);
                }
            });
        }
        if !u.is_empty() {
            // the plain double regardless of parity
            let mut word = u.clone();
            word.extend_from_slice(u);
            if is_smooth(&word, a) {
                seeds.insert(word);
            }
            // negative overlap: v cancels the last letter of u
            if negative_allowed && (u.len() - 1) % 2 == 0 {
                let mut word = u[..u.len() - 1].to_vec();
                word.extend_from_slice(u);
                if is_smooth(&word, a) {
                    seeds.insert(word);
                }
            }
        }
    }

    let mut visited: HashSet<Vec<Letter>> = HashSet::new();
    let mut live: Vec<Vec<Letter>> = Vec::new();
    for word in seeds {
        record_if_double(&word, &mut inventory);
        visited.insert(word.clone());
        live.push(word);
    }

    while !live.is_empty() {
        if visited.len() > caps.max_live {
            inventory.complete = false;
            break;
        }
        let mut next: Vec<Vec<Letter>> = Vec::new();
        for word in &live {
            for candidate in primitives_raw(word, a) {
                if candidate.len() > caps.max_len {
                    inventory.complete = false;
                    continue;
                }
                if (has_overlap_shape(&candidate, a, negative_allowed) || is_double(&candidate))
                    && visited.insert(candidate.clone())
                {
                    record_if_double(&candidate, &mut inventory);
                    next.push(candidate);
                }
            }
        }
        live = next;
    }
    inventory
}

fn record_if_double(word: &[Letter], inventory: &mut SquareInventory) {
    if is_double(word) {
        let half = word.len() / 2;
        inventory
            .squares
            .entry(half)
            .or_default()
            .insert(Word::from_raw(word[..half].to_vec()));
    }
}

fn is_double(word: &[Letter]) -> bool {
    let n = word.len();
    n > 0 && n % 2 == 0 && word[..n / 2] == word[n / 2..]
}

/// Does the word split as u·v·u with |uv| even and −1 ≤ |v| ≤ 2s+1?
fn has_overlap_shape(word: &[Letter], a: &Alphabet, negative_allowed: bool) -> bool {
    let n = word.len();
    let max_v = (2 * a.large() + 1) as usize;
    let k_min = n.saturating_sub(max_v).div_ceil(2);
    for k in k_min..=n / 2 {
        // v length n − 2k; |uv| = n − k must be even
        if (n - k) % 2 == 0 && word[..k] == word[n - k..] {
            return true;
        }
    }
    if negative_allowed && n % 2 == 1 {
        let k = (n + 1) / 2;
        if (k - 1) % 2 == 0 && word[..k - 1] == word[k - 1..n - 1] {
            return true;
        }
    }
    false
}

fn each_word_of_len(a: &Alphabet, len: usize, f: &mut dyn FnMut(&[Letter])) {
    if len == 0 {
        f(&[]);
        return;
    }
    crate::calculus::for_each_word_over(a, len, f);
}

/// MOOR of one smooth word: the longest smooth prefix of w^∞, over |w|.
/// `cap_letters` bounds the extension; `None` uses a generous default.
pub fn max_order_of_repetition(w: &Word, a: &Alphabet, cap_letters: Option<usize>) -> Result<Moor> {
    if w.is_empty() {
        return Err(Error::InvalidInput("MOOR of the empty word is undefined".into()));
    }
    let letters = w.letters();
    let cap = cap_letters.unwrap_or(64 * letters.len() + 64);
    let mut stack = SmoothStack::new(a);
    let mut pushed = 0usize;
    while pushed < cap {
        if !stack.try_push(letters[pushed % letters.len()]) {
            break;
        }
        pushed += 1;
    }
    if pushed < letters.len() {
        return Err(Error::NotSmooth);
    }
    Ok(Moor {
        ratio: Ratio::new(pushed as u64, letters.len() as u64),
        exact: pushed < cap,
    })
}
