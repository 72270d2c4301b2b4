//! Finite words over positive-integer letters, with run encodings.
//!
//! Words are immutable values; every operation returns a fresh word, so they
//! can be shared freely between worker threads.

use std::fmt;
use std::str::FromStr;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// A letter is any positive integer. Run lengths of derivatives are letters
/// too, which is why this is not bounded by the alphabet.
pub type Letter = u32;

/// A finite word. The empty word ε is a valid value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Wraps a letter vector, rejecting zeroes.
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.iter().any(|&l| l == 0) {
            return Err(Error::InvalidLetter);
        }
        Ok(Word(letters))
    }

    /// Wraps letters that are already known to be positive.
    pub(crate) fn from_raw(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&l| l > 0));
        Word(letters)
    }

    pub fn single(letter: Letter) -> Result<Self> {
        Word::new(vec![letter])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Number of occurrences of the letter `a`.
    pub fn count_letter(&self, a: Letter) -> usize {
        self.0.iter().filter(|&&l| l == a).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * times);
        for _ in 0..times {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// True when every letter lies in the alphabet.
    pub fn over(&self, a: &Alphabet) -> bool {
        self.0.iter().all(|&l| a.contains(l))
    }

    pub(crate) fn check_over(&self, a: &Alphabet) -> Result<()> {
        match self.0.iter().find(|&&l| !a.contains(l)) {
            None => Ok(()),
            Some(&l) => Err(a.outside(l)),
        }
    }

    /// Letter exchange r↔s, extended letterwise.
    pub fn mirror(&self, a: &Alphabet) -> Result<Word> {
        self.check_over(a)?;
        Ok(Word(
            self.0
                .iter()
                .map(|&l| if l == a.small() { a.large() } else { a.small() })
                .collect(),
        ))
    }

    /// The reversed word.
    pub fn reverse(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.0.len();
        (0..n / 2).all(|i| self.0[i] == self.0[n - 1 - i])
    }

    /// Number of (possibly overlapping) occurrences of `pattern` in `self`.
    pub fn count_occurrences(&self, pattern: &Word) -> Result<usize> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(count_occurrences_in(&self.0, &pattern.0))
    }

    /// Strict comma-form parser: every element is one letter, so `"25"` is
    /// the single letter 25 here while the auto-detecting `FromStr` reads a
    /// bare digit string one letter per digit.
    pub fn parse_comma_separated(text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let letters = text
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<Letter>()
                    .map_err(|_| Error::Parse(format!("bad letter {p:?} in word {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }

    /// Maximal runs of identical letters, in order.
    pub fn run_encode(&self) -> RunEncoding {
        let mut runs = Vec::new();
        let mut it = self.0.iter();
        if let Some(&first) = it.next() {
            let mut letter = first;
            let mut mult: u32 = 1;
            for &l in it {
                if l == letter {
                    mult += 1;
                } else {
                    runs.push(Run { letter, multiplicity: mult });
                    letter = l;
                    mult = 1;
                }
            }
            runs.push(Run { letter, multiplicity: mult });
        }
        RunEncoding(runs)
    }
}

pub(crate) fn count_occurrences_in(haystack: &[Letter], needle: &[Letter]) -> usize {
    if needle.is_empty() || needle.len() > haystack.len() {
        return 0;
    }
    haystack.windows(needle.len()).filter(|w| *w == needle).count()
}

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl fmt::Display for Word {
    /// Canonical text form: a bare digit string when every letter is a single
    /// digit, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&l| l < 10) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts both text forms. `""` is ε. A bare digit string is read one
    /// letter per digit; a string containing commas is split on them. A bare
    /// string containing `0` is read as one multi-letter number, since `0` is
    /// never a letter by itself (so `"10"` round-trips to the single letter
    /// 10, while multi-letter words with large letters always carry commas).
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        if text.contains(',') {
            return Word::parse_comma_separated(text);
        }
        if !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("word {text:?} contains non-digits")));
        }
        if text.contains('0') {
            let letter = text
                .parse::<Letter>()
                .map_err(|_| Error::Parse(format!("letter {text:?} out of range")))?;
            return Word::single(letter);
        }
        Word::new(text.bytes().map(|b| (b - b'0') as Letter).collect())
    }
}

/// One maximal run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub letter: Letter,
    pub multiplicity: u32,
}

/// The run encoding of a word: adjacent runs carry distinct letters and the
/// multiplicities sum to the word length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunEncoding(Vec<Run>);

impl RunEncoding {
    pub fn runs(&self) -> &[Run] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Inverse of `run_encode`.
    pub fn decode(&self) -> Word {
        let total: usize = self.0.iter().map(|r| r.multiplicity as usize).sum();
        let mut v = Vec::with_capacity(total);
        for run in &self.0 {
            for _ in 0..run.multiplicity {
                v.push(run.letter);
            }
        }
        Word(v)
    }

    /// The run-length sequence as a word over the multiplicities.
    pub fn lengths_word(&self) -> Word {
        Word(self.0.iter().map(|r| r.multiplicity).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        text.parse().unwrap()
    }

    #[test]
    fn run_encode_examples() {
        let enc = w("221121").run_encode();
        let pairs: Vec<(u32, u32)> = enc.runs().iter().map(|r| (r.letter, r.multiplicity)).collect();
        assert_eq!(pairs, vec![(2, 2), (1, 2), (2, 1), (1, 1)]);

        assert!(w("").run_encode().is_empty());

        let enc = w("2244222244442").run_encode();
        let pairs: Vec<(u32, u32)> = enc.runs().iter().map(|r| (r.letter, r.multiplicity)).collect();
        assert_eq!(pairs, vec![(2, 2), (4, 2), (2, 4), (4, 4), (2, 1)]);
    }

    #[test]
    fn run_encode_round_trips() {
        for text in ["", "1", "221121221", "3331113331313331"] {
            assert_eq!(w(text).run_encode().decode(), w(text));
        }
    }

    #[test]
    fn mirror_examples() {
        let a = Alphabet::new(2, 4).unwrap();
        assert_eq!(w("4444224").mirror(&a).unwrap(), w("2222442"));
        assert_eq!(w("").mirror(&a).unwrap(), w(""));
        let a12 = Alphabet::new(1, 2).unwrap();
        let v = w("221121");
        assert_eq!(v.mirror(&a12).unwrap().mirror(&a12).unwrap(), v);
        assert!(w("3").mirror(&a12).is_err());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(w("313331").reverse(), w("133313"));
        assert_eq!(w("").reverse(), w(""));
        assert_eq!(w("44144").reverse(), w("44144"));
        assert!(w("44144").is_palindrome());
    }

    #[test]
    fn occurrence_counts() {
        assert_eq!(w("221121221").count_occurrences(&w("22")).unwrap(), 2);
        assert_eq!(w("1111").count_occurrences(&w("11")).unwrap(), 3);
        assert_eq!(w("221121221").count_occurrences(&w("212")).unwrap(), 1);
        assert_eq!(w("221121").count_occurrences(&w("212")).unwrap(), 0);
        assert!(w("11").count_occurrences(&w("")).is_err());
    }

    #[test]
    fn text_form_round_trips() {
        assert_eq!(w("221121").to_string(), "221121");
        let big = Word::new(vec![10, 439, 10]).unwrap();
        assert_eq!(big.to_string(), "10,439,10");
        assert_eq!(w("10,439,10"), big);
        assert_eq!(w("10"), Word::single(10).unwrap());
        assert_eq!(w("2,2,1"), w("221"));
        assert!("2x1".parse::<Word>().is_err());
    }
}
