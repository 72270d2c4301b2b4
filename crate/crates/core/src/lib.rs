//! Computational toolkit for generalized Kolakoski sequences over two-letter
//! alphabets {r,s}.
//!
//! The crate covers sequence generation (run-length feedback, alternating
//! substitutions, and the closed-form block substitutions for the even/even
//! and odd/odd parity classes), the derivative calculus on smooth words
//! (derivatives, primitives, degrees, fundamental words), exhaustive
//! enumeration of smooth words (complexity, minimal letter counts, gap
//! tables, exponent fits), the exact-rational cylinder measure, square and
//! power search with repetition orders, palindrome enumeration, and the
//! typed frequency graphs with exact letter-frequency bounds via ratio-cycle
//! search.

pub mod alphabet;
pub mod calculus;
pub mod enumerate;
pub mod error;
pub mod gen;
pub mod graph;
pub mod measure;
pub mod palindromes;
pub mod squares;
pub mod stack;
pub mod word;

pub use alphabet::{Alphabet, ParityClass};
pub use error::{Error, Result};
pub use word::{Letter, RunEncoding, Word};
