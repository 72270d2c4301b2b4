//! Exhaustive finite-range invariants tying the modules together.

use std::collections::{BTreeMap, BTreeSet};

use kola_core::calculus::{derive, fundamental_words, primitives, smoothness};
use kola_core::enumerate::for_each_smooth;
use kola_core::gen::{generate, verify_self_description};
use kola_core::stack::is_smooth;
use kola_core::{Alphabet, Word};

fn alpha(r: u32, s: u32) -> Alphabet {
    Alphabet::new(r, s).unwrap()
}

const TEST_ALPHABETS: [(u32, u32); 3] = [(1, 2), (2, 3), (1, 4)];

/// v ∈ primitives(w) ⟺ D(v) = w, checked against an independently built
/// derivative map over all smooth words of the candidate lengths.
#[test]
fn primitive_round_trip() {
    let w_max = 9usize;
    for (r, s) in TEST_ALPHABETS {
        let a = alpha(r, s);
        let candidate_max = s as usize * w_max + 2 * s as usize;
        let mut by_derivative: BTreeMap<Word, BTreeSet<Word>> = BTreeMap::new();
        for n in 1..=candidate_max {
            for_each_smooth(&a, n, &mut |letters| {
                let v = Word::new(letters.to_vec()).unwrap();
                let d = derive(&v, &a).unwrap().result.expect("smooth words are differentiable");
                if d.len() <= w_max {
                    by_derivative.entry(d).or_default().insert(v);
                }
            });
        }
        for n in 1..=w_max {
            for_each_smooth(&a, n, &mut |letters| {
                let w = Word::new(letters.to_vec()).unwrap();
                let listed: BTreeSet<Word> = primitives(&w, &a).unwrap().into_iter().collect();
                let expected = by_derivative.get(&w).cloned().unwrap_or_default();
                assert_eq!(listed, expected, "primitives of {w} over {a}");
            });
        }
    }
}

/// Every nonempty smooth word has between 2r² and 2s² primitives, and the
/// set is mirror-closed.
#[test]
fn primitive_count_bounds() {
    for (r, s) in TEST_ALPHABETS {
        let a = alpha(r, s);
        let lo = 2 * (r as usize) * (r as usize);
        let hi = 2 * (s as usize) * (s as usize);
        for n in 1..=8usize {
            for_each_smooth(&a, n, &mut |letters| {
                let w = Word::new(letters.to_vec()).unwrap();
                let prims: BTreeSet<Word> = primitives(&w, &a).unwrap().into_iter().collect();
                assert!(
                    (lo..=hi).contains(&prims.len()),
                    "{w} over {a} has {} primitives, expected {lo}..={hi}",
                    prims.len()
                );
                for v in &prims {
                    assert!(prims.contains(&v.mirror(&a).unwrap()));
                    assert_eq!(derive(v, &a).unwrap().result.as_ref(), Some(&w));
                }
            });
        }
    }
}

/// Every contiguous subword of a smooth word is smooth.
#[test]
fn factor_closure() {
    for (r, s) in TEST_ALPHABETS {
        let a = alpha(r, s);
        for_each_smooth(&a, 14, &mut |letters| {
            for i in 0..letters.len() {
                for j in i + 1..=letters.len() {
                    assert!(is_smooth(&letters[i..j], &a));
                }
            }
        });
    }
}

/// Fundamental word sets are closed under mirror and reversal, and every
/// member is strictly shorter than max{s, 2r+1}.
#[test]
fn fundamental_set_closure() {
    for (r, s) in [(1u32, 2u32), (2, 3), (1, 4), (3, 4), (2, 5), (1, 6)] {
        let a = alpha(r, s);
        let set: BTreeSet<Word> = fundamental_words(&a).into_iter().collect();
        assert!(!set.is_empty());
        for w in &set {
            assert!(w.len() < a.fundamental_length_bound());
            assert!(set.contains(&w.mirror(&a).unwrap()), "mirror of {w} missing");
            assert!(set.contains(&w.reverse()), "reversal of {w} missing");
            assert_eq!(derive(w, &a).unwrap().result, Some(Word::empty()));
        }
    }
}

/// Generated prefixes are smooth and self-describing, and contain no run
/// longer than s.
#[test]
fn generated_prefixes_are_smooth_and_self_describing() {
    for (r, s) in [(1u32, 2u32), (2, 3), (1, 4), (3, 4), (2, 5), (1, 6)] {
        let a = alpha(r, s);
        for start in [a.small(), a.large()] {
            let prefix = generate(&a, start, 10_000).unwrap();
            assert!(is_smooth(prefix.letters(), &a), "{a} start {start}");
            assert!(verify_self_description(prefix.letters()));
            let longest_run = prefix
                .run_encode()
                .runs()
                .iter()
                .map(|r| r.multiplicity)
                .max()
                .unwrap();
            assert!(longest_run <= s);
        }
    }
}

/// Degree-based scaling: smoothness reports agree with repeated derivation.
#[test]
fn smoothness_chain_is_consistent() {
    for (r, s) in TEST_ALPHABETS {
        let a = alpha(r, s);
        for_each_smooth(&a, 12, &mut |letters| {
            let w = Word::new(letters.to_vec()).unwrap();
            let report = smoothness(&w, &a).unwrap();
            assert!(report.is_smooth);
            let degree = report.degree.unwrap();
            // chain is w, D(w), ..., D^degree(w), ε with nonempty interior
            assert_eq!(report.chain.len(), degree + 2);
            assert!(report.chain.last().unwrap().is_empty());
            for (i, pair) in report.chain.windows(2).enumerate() {
                assert!(!pair[0].is_empty(), "chain entry {i} empty early");
                assert_eq!(derive(&pair[0], &a).unwrap().result.as_ref(), Some(&pair[1]));
            }
        });
    }
}
