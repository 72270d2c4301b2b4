//! The cylinder measure μ.
//!
//! μ([w]) is 0 for non-smooth w and μ([D^j(w)])/(r+s)^j for smooth w of
//! degree j, so every value reduces to the value on a fundamental word. The
//! fundamental values are pinned by an exact-rational linear system: mirror
//! and reversal equalities, level normalization Σ_{|w|=n} μ([w]) = 1 for
//! 1 ≤ n < max{s,2r+1}, and additivity closure μ([w]) = μ([wr]) + μ([ws])
//! on short smooth words (the level sums alone leave some alphabets, e.g.
//! {2,3}, underdetermined). All arithmetic is exact; no floating point
//! enters this module except in the empirical report.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::alphabet::{Alphabet, ParityClass};
use crate::calculus::{derive, for_each_word_over, fundamental_words, smoothness};
use crate::error::{Error, Result};
use crate::gen::generate;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureStatus {
    Unique,
    Underdetermined,
}

/// Solved fundamental-word values for one alphabet.
#[derive(Debug, Clone)]
pub struct MeasureTable {
    pub alphabet: Alphabet,
    pub status: MeasureStatus,
    /// Fundamental words in lexicographic order.
    pub fundamentals: Vec<Word>,
    /// Values, populated when the system is uniquely solvable.
    pub values: HashMap<Word, BigRational>,
}

impl MeasureTable {
    pub fn value(&self, fundamental: &Word) -> Option<&BigRational> {
        self.values.get(fundamental)
    }
}

/// For a smooth word, the fundamental word at the end of its derivative
/// chain and the chain length (the degree). ε maps to (ε, 0) by convention.
fn reduce_to_fundamental(w: &Word, a: &Alphabet) -> Result<Option<(Word, usize)>> {
    let report = smoothness(w, a)?;
    if !report.is_smooth {
        return Ok(None);
    }
    match report.degree {
        Some(j) => Ok(Some((report.chain[j].clone(), j))),
        None => Ok(Some((Word::empty(), 0))),
    }
}

/// Coefficient row of μ([w]) over the fundamental unknowns.
fn mu_row(w: &Word, a: &Alphabet, index: &HashMap<Word, usize>, n_unknowns: usize) -> Result<Vec<BigRational>> {
    let mut row = vec![BigRational::zero(); n_unknowns];
    if let Some((fund, j)) = reduce_to_fundamental(w, a)? {
        if fund.is_empty() {
            // only ε itself reduces to ε; μ([ε]) = 1 handled by callers
            return Err(Error::InvalidInput("mu_row called on the empty word".into()));
        }
        let idx = *index.get(&fund).expect("chain must end in a fundamental word");
        let denom = BigInt::from(a.small() + a.large()).pow(j as u32);
        row[idx] = BigRational::new(BigInt::one(), denom);
    }
    Ok(row)
}

/// Sets up and solves the exact linear system for the fundamental values.
/// An inconsistent system is a hard error carrying the offending
/// constraint; an underdetermined one is reported in the status and leaves
/// the value table empty.
pub fn solve_fundamental_measures(a: &Alphabet) -> Result<MeasureTable> {
    let fundamentals = fundamental_words(a);
    let n = fundamentals.len();
    let index: HashMap<Word, usize> = fundamentals.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let bound = a.fundamental_length_bound();

    // rows (coefficients, rhs) with a human-readable tag for error reports
    let mut rows: Vec<(Vec<BigRational>, BigRational, String)> = Vec::new();

    for w in &fundamentals {
        let m = w.mirror(a)?;
        if m != *w {
            let mut row = vec![BigRational::zero(); n];
            row[index[w]] += BigRational::one();
            row[index[&m]] -= BigRational::one();
            rows.push((row, BigRational::zero(), format!("mirror {w} = {m}")));
        }
        let rev = w.reverse();
        if rev != *w {
            let mut row = vec![BigRational::zero(); n];
            row[index[w]] += BigRational::one();
            row[index[&rev]] -= BigRational::one();
            rows.push((row, BigRational::zero(), format!("reversal {w} = {rev}")));
        }
    }

    for len in 1..bound {
        let mut row = vec![BigRational::zero(); n];
        let mut words = Vec::new();
        for_each_word_over(a, len, &mut |letters| words.push(Word::from_raw(letters.to_vec())));
        for w in &words {
            for (cell, coeff) in row.iter_mut().zip(mu_row(w, a, &index, n)?) {
                *cell += coeff;
            }
        }
        rows.push((row, BigRational::one(), format!("level sum n = {len}")));
    }

    // additivity closure on short smooth words
    for len in 1..=bound {
        let mut words = Vec::new();
        for_each_word_over(a, len, &mut |letters| words.push(letters.to_vec()));
        for letters in words {
            let w = Word::from_raw(letters.clone());
            if reduce_to_fundamental(&w, a)?.is_none() {
                continue;
            }
            let mut row = mu_row(&w, a, &index, n)?;
            for &ext in &[a.small(), a.large()] {
                let mut extended = letters.clone();
                extended.push(ext);
                for (cell, coeff) in row.iter_mut().zip(mu_row(&Word::from_raw(extended), a, &index, n)?) {
                    *cell -= coeff;
                }
            }
            rows.push((row, BigRational::zero(), format!("additivity at {w}")));
        }
    }

    solve_exact(a, fundamentals, rows)
}

/// Gaussian elimination over Q with deterministic pivoting: columns in
/// lexicographic word order, first row with a nonzero pivot wins.
fn solve_exact(
    a: &Alphabet,
    fundamentals: Vec<Word>,
    mut rows: Vec<(Vec<BigRational>, BigRational, String)>,
) -> Result<MeasureTable> {
    let n = fundamentals.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut used = 0usize;
    for col in 0..n {
        let Some(pivot) = (used..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(used, pivot);
        let (head, tail) = rows.split_at_mut(used + 1);
        let (prow, prhs, _) = &head[used];
        for (coeffs, rhs, _) in tail.iter_mut() {
            if coeffs[col].is_zero() {
                continue;
            }
            let factor = &coeffs[col] / &prow[col];
            for c in col..n {
                let delta = &factor * &prow[c];
                coeffs[c] -= delta;
            }
            *rhs -= &factor * prhs;
        }
        pivot_of_col[col] = Some(used);
        used += 1;
    }
    // consistency of the eliminated remainder
    for (coeffs, rhs, tag) in rows.iter().skip(used) {
        if coeffs.iter().all(|c| c.is_zero()) && !rhs.is_zero() {
            return Err(Error::MeasureInconsistent(format!("constraint \"{tag}\" is violated")));
        }
    }
    if pivot_of_col.iter().any(|p| p.is_none()) {
        return Ok(MeasureTable {
            alphabet: *a,
            status: MeasureStatus::Underdetermined,
            fundamentals,
            values: HashMap::new(),
        });
    }
    // back substitution
    let mut solution = vec![BigRational::zero(); n];
    for col in (0..n).rev() {
        let row = pivot_of_col[col].unwrap();
        let (coeffs, rhs, _) = &rows[row];
        let mut acc = rhs.clone();
        for c in col + 1..n {
            acc -= &coeffs[c] * &solution[c];
        }
        solution[col] = acc / &coeffs[col];
    }
    let values = fundamentals.iter().cloned().zip(solution).collect();
    Ok(MeasureTable { alphabet: *a, status: MeasureStatus::Unique, fundamentals, values })
}

/// μ([w]): 0 for non-smooth words, table lookup through the derivative
/// chain otherwise. μ([ε]) = 1.
pub fn measure(w: &Word, a: &Alphabet, table: &MeasureTable) -> Result<BigRational> {
    if table.status != MeasureStatus::Unique {
        return Err(Error::MeasureUnderdetermined);
    }
    match reduce_to_fundamental(w, a)? {
        None => Ok(BigRational::zero()),
        Some((fund, j)) => {
            if fund.is_empty() {
                return Ok(BigRational::one());
            }
            let value = table.values.get(&fund).expect("fundamental missing from table");
            let denom = BigInt::from(a.small() + a.large()).pow(j as u32);
            Ok(value / BigRational::from_integer(denom))
        }
    }
}

/// One axiom verdict from `verify_measure`.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub pass: bool,
    pub checked: usize,
    pub counterexample: Option<Word>,
}

/// Verdicts for the five exact axioms, checked on every word up to `n_max`.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub n_max: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn verify_measure(a: &Alphabet, table: &MeasureTable, n_max: usize) -> Result<AxiomReport> {
    if table.status != MeasureStatus::Unique {
        return Err(Error::MeasureUnderdetermined);
    }
    let bound = a.fundamental_length_bound();
    let mut additivity = AxiomCheck { name: "additivity", pass: true, checked: 0, counterexample: None };
    let mut shift = AxiomCheck { name: "shift", pass: true, checked: 0, counterexample: None };
    let mut mirror = AxiomCheck { name: "mirror", pass: true, checked: 0, counterexample: None };
    let mut reversal = AxiomCheck { name: "reversal", pass: true, checked: 0, counterexample: None };
    let mut scaling = AxiomCheck { name: "scaling", pass: true, checked: 0, counterexample: None };

    for len in 1..=n_max {
        let mut words = Vec::new();
        for_each_word_over(a, len, &mut |letters| words.push(Word::from_raw(letters.to_vec())));
        for w in words {
            let mu = measure(&w, a, table)?;

            let fail = |check: &mut AxiomCheck| {
                check.pass = false;
                if check.counterexample.is_none() {
                    check.counterexample = Some(w.clone());
                }
            };

            let mut sum_right = BigRational::zero();
            let mut sum_left = BigRational::zero();
            for &ext in &[a.small(), a.large()] {
                let mut right = w.letters().to_vec();
                right.push(ext);
                sum_right += measure(&Word::from_raw(right), a, table)?;
                let mut left = vec![ext];
                left.extend_from_slice(w.letters());
                sum_left += measure(&Word::from_raw(left), a, table)?;
            }
            additivity.checked += 1;
            if sum_right != mu {
                fail(&mut additivity);
            }
            shift.checked += 1;
            if sum_left != mu {
                fail(&mut shift);
            }
            mirror.checked += 1;
            if measure(&w.mirror(a)?, a, table)? != mu {
                fail(&mut mirror);
            }
            reversal.checked += 1;
            if measure(&w.reverse(), a, table)? != mu {
                fail(&mut reversal);
            }
            if len >= bound {
                if let Some(d) = derive(&w, a)?.result {
                    scaling.checked += 1;
                    let scaled = &mu * BigRational::from_integer(BigInt::from(a.small() + a.large()));
                    if measure(&d, a, table)? != scaled {
                        fail(&mut scaling);
                    }
                }
            }
        }
    }
    Ok(AxiomReport { n_max, checks: vec![additivity, shift, mirror, reversal, scaling] })
}

/// One row of the empirical comparison.
#[derive(Debug, Clone)]
pub struct FrequencyRow {
    pub word: Word,
    pub empirical: f64,
    pub mu: BigRational,
    pub abs_deviation: f64,
}

/// Subword frequencies on a generated prefix against μ. Evidence reporting
/// only: whether the frequencies exist at all is open.
#[derive(Debug, Clone)]
pub struct FrequencyReport {
    pub prefix_len: usize,
    pub start_letter: Letter,
    pub rows: Vec<FrequencyRow>,
    pub max_abs_deviation: f64,
    /// Non-smooth words must never occur in the sequence at all.
    pub nonsmooth_absent: bool,
}

pub fn empirical_frequency_report(
    a: &Alphabet,
    n_prefix: usize,
    w_len_max: usize,
    start: Letter,
    table: &MeasureTable,
) -> Result<FrequencyReport> {
    if a.parity_class() != ParityClass::Mixed {
        return Err(Error::UnsupportedParity(a.parity_class()));
    }
    if table.status != MeasureStatus::Unique {
        return Err(Error::MeasureUnderdetermined);
    }
    let prefix = generate(a, start, n_prefix)?;
    let letters = prefix.letters();
    let mut counts: HashMap<Vec<Letter>, u64> = HashMap::new();
    for len in 1..=w_len_max {
        for window in letters.windows(len) {
            *counts.entry(window.to_vec()).or_insert(0) += 1;
        }
    }
    let mut rows = Vec::new();
    let mut max_abs_deviation = 0.0f64;
    let mut nonsmooth_absent = true;
    for len in 1..=w_len_max {
        let mut words = Vec::new();
        for_each_word_over(a, len, &mut |ls| words.push(ls.to_vec()));
        for ls in words {
            let w = Word::from_raw(ls.clone());
            let mu = measure(&w, a, table)?;
            let count = counts.get(&ls).copied().unwrap_or(0);
            let empirical = count as f64 / n_prefix as f64;
            if mu.is_zero() && count > 0 {
                nonsmooth_absent = false;
            }
            let mu_f = rational_to_f64(&mu);
            let abs_deviation = (empirical - mu_f).abs();
            max_abs_deviation = max_abs_deviation.max(abs_deviation);
            rows.push(FrequencyRow { word: w, empirical, mu, abs_deviation });
        }
    }
    Ok(FrequencyReport {
        prefix_len: n_prefix,
        start_letter: start,
        rows,
        max_abs_deviation,
        nonsmooth_absent,
    })
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    let num = x.numer();
    let den = x.denom();
    // values here are tame; a lossy conversion is fine for reporting
    let nf: f64 = num.to_string().parse().unwrap_or(if num.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY });
    let df: f64 = den.to_string().parse().unwrap_or(f64::INFINITY);
    nf / df
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(a: u32, b: u32) -> Alphabet {
        Alphabet::new(a, b).unwrap()
    }

    fn w(text: &str) -> Word {
        text.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn classical_fundamental_values() {
        let a = alpha(1, 2);
        let t = solve_fundamental_measures(&a).unwrap();
        assert_eq!(t.status, MeasureStatus::Unique);
        assert_eq!(t.values[&w("1")], rat(1, 2));
        assert_eq!(t.values[&w("2")], rat(1, 2));
        assert_eq!(t.values[&w("12")], rat(1, 3));
        assert_eq!(t.values[&w("21")], rat(1, 3));
    }

    #[test]
    fn two_three_fundamental_values() {
        let a = alpha(2, 3);
        let t = solve_fundamental_measures(&a).unwrap();
        assert_eq!(t.status, MeasureStatus::Unique);
        assert_eq!(t.values[&w("2")], rat(1, 2));
        assert_eq!(t.values[&w("3")], rat(1, 2));
        assert_eq!(t.values[&w("22")], rat(3, 10));
        assert_eq!(t.values[&w("33")], rat(3, 10));
        assert_eq!(t.values[&w("23")], rat(1, 5));
        assert_eq!(t.values[&w("32")], rat(1, 5));
        assert_eq!(t.values[&w("223")], rat(1, 5));
        assert_eq!(t.values[&w("332")], rat(1, 5));
        assert_eq!(t.values[&w("233")], rat(1, 5));
        assert_eq!(t.values[&w("322")], rat(1, 5));
        assert_eq!(t.values[&w("2233")], rat(1, 5));
        assert_eq!(t.values[&w("3322")], rat(1, 5));
    }

    #[test]
    fn derived_values_through_scaling() {
        let a = alpha(2, 3);
        let t = solve_fundamental_measures(&a).unwrap();
        // D(222) = 3, so μ([222]) = μ([3])/5, and the level-3 sum closes
        assert_eq!(measure(&w("222"), &a, &t).unwrap(), rat(1, 10));
        let a12 = alpha(1, 2);
        let t12 = solve_fundamental_measures(&a12).unwrap();
        assert_eq!(measure(&w("11"), &a12, &t12).unwrap(), rat(1, 6));
        assert_eq!(measure(&w("12"), &a12, &t12).unwrap(), rat(1, 3));
        assert_eq!(measure(&w("111"), &a12, &t12).unwrap(), rat(0, 1));
    }

    #[test]
    fn level_sums_close_exactly() {
        for (r, s) in [(1u32, 2u32), (2, 3), (1, 4)] {
            let a = alpha(r, s);
            let t = solve_fundamental_measures(&a).unwrap();
            for len in 1..=6usize {
                let mut sum = BigRational::zero();
                let mut words = Vec::new();
                for_each_word_over(&a, len, &mut |ls| words.push(Word::from_raw(ls.to_vec())));
                for word in words {
                    sum += measure(&word, &a, &t).unwrap();
                }
                assert!(sum.is_one(), "level {len} over {a} sums to {sum}");
            }
        }
    }

    #[test]
    fn axioms_hold_to_depth_eight() {
        for (r, s) in [(1u32, 2u32), (2, 3)] {
            let a = alpha(r, s);
            let t = solve_fundamental_measures(&a).unwrap();
            let report = verify_measure(&a, &t, 8).unwrap();
            for check in &report.checks {
                assert!(check.pass, "{} fails over {a}: {:?}", check.name, check.counterexample);
                assert!(check.checked > 0);
            }
        }
    }

    #[test]
    fn solver_is_deterministic() {
        let a = alpha(2, 3);
        let t1 = solve_fundamental_measures(&a).unwrap();
        let t2 = solve_fundamental_measures(&a).unwrap();
        assert_eq!(t1.fundamentals, t2.fundamentals);
        for f in &t1.fundamentals {
            assert_eq!(t1.values[f], t2.values[f]);
        }
    }

    #[test]
    fn positivity_and_zero_iff_nonsmooth() {
        for (r, s) in [(1u32, 2u32), (2, 3), (1, 4)] {
            let a = alpha(r, s);
            let t = solve_fundamental_measures(&a).unwrap();
            for len in 1..=8usize {
                let mut words = Vec::new();
                for_each_word_over(&a, len, &mut |ls| words.push(Word::from_raw(ls.to_vec())));
                for word in words {
                    let mu = measure(&word, &a, &t).unwrap();
                    let smooth = smoothness(&word, &a).unwrap().is_smooth;
                    assert!(!mu.is_negative());
                    assert_eq!(mu.is_zero(), !smooth, "μ([{word}]) = {mu} over {a}");
                }
            }
        }
    }

    #[test]
    fn empirical_frequencies_track_mu() {
        let a = alpha(1, 2);
        let t = solve_fundamental_measures(&a).unwrap();
        let report = empirical_frequency_report(&a, 1_000_000, 3, 2, &t).unwrap();
        assert!(report.max_abs_deviation < 1e-2, "max deviation {}", report.max_abs_deviation);
        assert!(report.nonsmooth_absent);
        // Keane-style consistency at length 1
        let f1 = report.rows.iter().find(|row| row.word == w("1")).unwrap();
        assert!((f1.empirical - 0.5).abs() < 1e-2);
        assert!(empirical_frequency_report(&alpha(1, 3), 100, 1, 3, &t).is_err());
    }
}
