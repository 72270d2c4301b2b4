//! Kolakoski sequence generation.
//!
//! The feedback generator is the ground truth: position k of the run-length
//! stream dictates the multiplicity of emitted run k, with letters
//! alternating from the starting letter. The alternating-substitution
//! generator exists for cross-validation and fast prefix doubling, and the
//! two-letter block substitutions give closed forms for the even/even and
//! odd/odd parity classes.

use crate::alphabet::{Alphabet, ParityClass};
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Incremental feedback generator. Single-owner; advance it sequentially.
#[derive(Debug, Clone)]
pub struct GeneratorState {
    alphabet: Alphabet,
    first_letter: Letter,
    emitted: Vec<Letter>,
    /// Index into `emitted` of the run length driving the *next* run.
    read_cursor: usize,
    /// Remaining multiplicity of the run currently being emitted.
    pending: u32,
    current_letter: Letter,
}

impl GeneratorState {
    pub fn new(alphabet: Alphabet, first: Letter) -> Result<Self> {
        if !alphabet.contains(first) {
            return Err(alphabet.outside(first));
        }
        Ok(GeneratorState {
            alphabet,
            first_letter: first,
            emitted: Vec::new(),
            read_cursor: 0,
            pending: 0,
            current_letter: first,
        })
    }

    pub fn first_letter(&self) -> Letter {
        self.first_letter
    }

    pub fn emitted(&self) -> &[Letter] {
        &self.emitted
    }

    /// Emits the next letter of the sequence.
    pub fn next_letter(&mut self) -> Letter {
        if self.pending == 0 {
            // Start run number `read_cursor`. Its length is the letter at
            // that position; when the cursor sits at the frontier (only
            // possible while the prefix is empty or all ones), that letter
            // is the one this run is about to emit.
            let len = if self.read_cursor < self.emitted.len() {
                self.emitted[self.read_cursor]
            } else {
                self.current_letter
            };
            debug_assert!(self.read_cursor <= self.emitted.len());
            self.pending = len;
            self.read_cursor += 1;
        }
        let letter = self.current_letter;
        self.emitted.push(letter);
        self.pending -= 1;
        if self.pending == 0 {
            self.current_letter = self.alphabet.other(self.current_letter).unwrap();
        }
        letter
    }

    /// Checks that the run lengths of all completed runs form a prefix of
    /// the emitted word itself.
    pub fn self_describes(&self) -> bool {
        verify_self_description(&self.emitted)
    }
}

/// The length-n prefix of the Kolakoski sequence over `a` starting with
/// `first`.
pub fn generate(a: &Alphabet, first: Letter, n: usize) -> Result<Word> {
    let mut state = GeneratorState::new(*a, first)?;
    let mut letters = Vec::with_capacity(n);
    for _ in 0..n {
        letters.push(state.next_letter());
    }
    Ok(Word::new(letters)?)
}

/// Run lengths of all completed runs form a prefix of the word itself.
pub fn verify_self_description(letters: &[Letter]) -> bool {
    if letters.is_empty() {
        return true;
    }
    let mut k = 0usize; // index into `letters`, read as run lengths
    let mut i = 0usize;
    while i < letters.len() {
        let letter = letters[i];
        let mut len = 0u32;
        while i < letters.len() && letters[i] == letter {
            len += 1;
            i += 1;
        }
        if i == letters.len() {
            break; // trailing run may be incomplete
        }
        if k >= letters.len() || letters[k] != len {
            return false;
        }
        k += 1;
    }
    true
}

/// Applies the alternating substitution pair to `seed` the given number of
/// times: the letter at source position i maps to a run s^x on even i and
/// r^x on odd i (0-based), so each source letter becomes one run of the
/// image and runs alternate starting with the large letter. Seeding with the
/// large letter makes successive iterates prefixes of one another.
pub fn generate_by_substitution(a: &Alphabet, seed: Letter, iterations: usize) -> Result<Word> {
    if !a.contains(seed) {
        return Err(a.outside(seed));
    }
    let mut word = vec![seed];
    for _ in 0..iterations {
        let mut next = Vec::with_capacity(word.len() * 2);
        for (i, &x) in word.iter().enumerate() {
            let letter = if i % 2 == 0 { a.large() } else { a.small() };
            next.extend(std::iter::repeat(letter).take(x as usize));
        }
        word = next;
    }
    Ok(Word::new(word)?)
}

/// A block symbol together with its two-letter expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub symbol: char,
    pub expansion: Word,
}

/// Closed-form block substitution for an even/even or odd/odd alphabet,
/// with its substitution matrix and Perron data.
#[derive(Debug, Clone)]
pub struct BlockSubstitution {
    pub blocks: Vec<Block>,
    /// Image of block j as indices into `blocks`.
    pub rules: Vec<Vec<usize>>,
    /// `matrix[i][j]` counts block i in the image of block j.
    pub matrix: Vec<Vec<u64>>,
    pub perron_root: f64,
    /// Normalized right Perron eigenvector: positive entries summing to 1.
    pub block_frequencies: Vec<f64>,
}

/// Builds the block substitution: two blocks A=rr, B=ss for even/even with
/// A ↦ A^m B^m, B ↦ A^n B^n (m=r/2, n=s/2); three blocks A=rr, B=rs, C=ss
/// for odd/odd with A ↦ A^m B C^m, B ↦ A^m B C^n, C ↦ A^n B C^n
/// (m=(r−1)/2, n=(s−1)/2). Mixed parity has no block substitution.
pub fn block_substitution(a: &Alphabet) -> Result<BlockSubstitution> {
    let (r, s) = (a.small(), a.large());
    let (blocks, rules): (Vec<Block>, Vec<Vec<usize>>) = match a.parity_class() {
        ParityClass::BothEven => {
            let m = (r / 2) as usize;
            let n = (s / 2) as usize;
            let blocks = vec![
                Block { symbol: 'A', expansion: Word::new(vec![r, r])? },
                Block { symbol: 'B', expansion: Word::new(vec![s, s])? },
            ];
            let image = |k: usize| {
                let mut v = vec![0usize; k];
                v.extend(std::iter::repeat(1).take(k));
                v
            };
            (blocks, vec![image(m), image(n)])
        }
        ParityClass::BothOdd => {
            let m = ((r - 1) / 2) as usize;
            let n = ((s - 1) / 2) as usize;
            let blocks = vec![
                Block { symbol: 'A', expansion: Word::new(vec![r, r])? },
                Block { symbol: 'B', expansion: Word::new(vec![r, s])? },
                Block { symbol: 'C', expansion: Word::new(vec![s, s])? },
            ];
            let image = |front: usize, back: usize| {
                let mut v = vec![0usize; front];
                v.push(1);
                v.extend(std::iter::repeat(2).take(back));
                v
            };
            (blocks, vec![image(m, m), image(m, n), image(n, n)])
        }
        ParityClass::Mixed => return Err(Error::UnsupportedParity(ParityClass::Mixed)),
    };
    let k = blocks.len();
    let mut matrix = vec![vec![0u64; k]; k];
    for (j, image) in rules.iter().enumerate() {
        for &i in image {
            matrix[i][j] += 1;
        }
    }
    let (perron_root, block_frequencies) = perron(&matrix);
    Ok(BlockSubstitution { blocks, rules, matrix, perron_root, block_frequencies })
}

/// Power iteration on the integer matrix; the systems here are tiny and
/// primitive, so plain iteration with L1 normalization converges quickly.
fn perron(matrix: &[Vec<u64>]) -> (f64, Vec<f64>) {
    let k = matrix.len();
    let mut v = vec![1.0 / k as f64; k];
    let mut root = 0.0;
    for _ in 0..10_000 {
        let mut w = vec![0.0f64; k];
        for i in 0..k {
            for j in 0..k {
                w[i] += matrix[i][j] as f64 * v[j];
            }
        }
        let norm: f64 = w.iter().sum();
        for x in w.iter_mut() {
            *x /= norm;
        }
        let delta: f64 = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        root = norm;
        if delta < 1e-12 {
            break;
        }
    }
    (root, v)
}

/// Letter frequencies (freq_r, freq_s) induced by the block frequencies.
/// Every block expands to two letters, so the r share of block i is half of
/// the r count of its expansion.
pub fn block_letter_frequencies(bs: &BlockSubstitution) -> (f64, f64) {
    let r = bs.blocks[0].expansion.letters()[0]; // block A expands to rr
    let mut freq_r = 0.0;
    for (block, f) in bs.blocks.iter().zip(&bs.block_frequencies) {
        let r_letters = block.expansion.letters().iter().filter(|&&l| l == r).count();
        freq_r += f * r_letters as f64 / 2.0;
    }
    (freq_r, 1.0 - freq_r)
}

/// Spectral classification of the odd/odd block substitution matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PisotClass {
    /// Cubic Pisot–Vijayaraghavan root: 2(r+s) ≥ (r−s)², not unimodular.
    PisotCubic,
    /// `r = s ± 2`.
    UnimodularPisot,
    /// 2(r+s) < (r−s)²: all roots exceed 1 in modulus.
    AllRootsOutsideUnit,
}

pub fn classify_pisot(a: &Alphabet) -> Result<PisotClass> {
    if a.parity_class() != ParityClass::BothOdd {
        return Err(Error::UnsupportedParity(a.parity_class()));
    }
    let (r, s) = (a.small() as i64, a.large() as i64);
    if s - r == 2 {
        Ok(PisotClass::UnimodularPisot)
    } else if 2 * (r + s) >= (r - s) * (r - s) {
        Ok(PisotClass::PisotCubic)
    } else {
        Ok(PisotClass::AllRootsOutsideUnit)
    }
}
