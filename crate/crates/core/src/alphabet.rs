//! Two-letter alphabets {r,s} of positive integers.
//!
//! A letter such as `10` or `439` is one symbol, not a digit string, so
//! alphabets like `{10,439}` are valid.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::Letter;

/// Parity class of the two letters, which governs which closed-form
/// substitution machinery applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityClass {
    BothEven,
    BothOdd,
    Mixed,
}

/// An ordered two-letter alphabet with `small < large`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    small: Letter,
    large: Letter,
}

impl Alphabet {
    /// Builds the alphabet from two distinct positive letters, in any order.
    pub fn new(a: Letter, b: Letter) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidLetter);
        }
        if a == b {
            return Err(Error::InvalidAlphabet(format!(
                "letters must be distinct, got {a} and {b}"
            )));
        }
        Ok(Alphabet {
            small: a.min(b),
            large: a.max(b),
        })
    }

    /// The smaller letter (written `r` throughout).
    pub fn small(&self) -> Letter {
        self.small
    }

    /// The larger letter (written `s` throughout).
    pub fn large(&self) -> Letter {
        self.large
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter == self.small || letter == self.large
    }

    /// The other letter of the alphabet.
    pub fn other(&self, letter: Letter) -> Result<Letter> {
        if letter == self.small {
            Ok(self.large)
        } else if letter == self.large {
            Ok(self.small)
        } else {
            Err(self.outside(letter))
        }
    }

    pub(crate) fn outside(&self, letter: Letter) -> Error {
        Error::LetterOutsideAlphabet {
            letter,
            small: self.small,
            large: self.large,
        }
    }

    /// Parity class, derived from the letters.
    pub fn parity_class(&self) -> ParityClass {
        match (self.small % 2, self.large % 2) {
            (0, 0) => ParityClass::BothEven,
            (1, 1) => ParityClass::BothOdd,
            _ => ParityClass::Mixed,
        }
    }

    /// Every word with derivative ε is shorter than `max{s, 2r+1}`.
    pub fn fundamental_length_bound(&self) -> usize {
        (self.large as usize).max(2 * self.small as usize + 1)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.small, self.large)
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    /// Parses `"r,s"`.
    fn from_str(text: &str) -> Result<Self> {
        let mut parts = text.split(',');
        let err = || Error::Parse(format!("expected an alphabet of the form r,s, got {text:?}"));
        let a: Letter = parts.next().ok_or_else(err)?.trim().parse().map_err(|_| err())?;
        let b: Letter = parts.next().ok_or_else(err)?.trim().parse().map_err(|_| err())?;
        if parts.next().is_some() {
            return Err(err());
        }
        Alphabet::new(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_letters() {
        let a = Alphabet::new(5, 2).unwrap();
        assert_eq!((a.small(), a.large()), (2, 5));
        assert_eq!(a.to_string(), "{2,5}");
    }

    #[test]
    fn parity_classes() {
        assert_eq!(Alphabet::new(2, 4).unwrap().parity_class(), ParityClass::BothEven);
        assert_eq!(Alphabet::new(1, 3).unwrap().parity_class(), ParityClass::BothOdd);
        assert_eq!(Alphabet::new(1, 2).unwrap().parity_class(), ParityClass::Mixed);
    }

    #[test]
    fn rejects_degenerate() {
        assert!(Alphabet::new(3, 3).is_err());
        assert!(Alphabet::new(0, 2).is_err());
    }

    #[test]
    fn parses_multi_digit_letters() {
        let a: Alphabet = "10,439".parse().unwrap();
        assert_eq!((a.small(), a.large()), (10, 439));
    }

    #[test]
    fn fundamental_bound() {
        assert_eq!(Alphabet::new(1, 2).unwrap().fundamental_length_bound(), 3);
        assert_eq!(Alphabet::new(2, 3).unwrap().fundamental_length_bound(), 5);
        assert_eq!(Alphabet::new(1, 4).unwrap().fundamental_length_bound(), 4);
        assert_eq!(Alphabet::new(3, 4).unwrap().fundamental_length_bound(), 7);
    }
}
