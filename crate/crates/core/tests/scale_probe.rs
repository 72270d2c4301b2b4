//! Temporary scale probes (removed before finalizing).

use std::time::Instant;

use kola_core::enumerate::{complexity_table, gap_table, min_letter_count, SearchLimits};
use kola_core::graph::frequency_bound;
use kola_core::squares::{find_squares, SquareCaps};
use kola_core::Alphabet;

fn alpha(r: u32, s: u32) -> Alphabet {
    Alphabet::new(r, s).unwrap()
}

#[test]
#[ignore]
fn probe_squares_23() {
    let t0 = Instant::now();
    let mut inv = find_squares(&alpha(2, 3), SquareCaps::default());
    inv.classify_powers();
    inv.compute_moor();
    println!(
        "squares {{2,3}}: {} squares, {} cubes, complete={} in {:?}",
        inv.total_squares(),
        inv.total_cubes(),
        inv.complete,
        t0.elapsed()
    );
    for (len, set) in &inv.squares {
        println!("  len {len}: {} squares, moor {:?}", set.len(), inv.moor[len]);
    }
}

#[test]
#[ignore]
fn probe_complexity_14() {
    let t0 = Instant::now();
    let t = complexity_table(&alpha(1, 4), 100, &SearchLimits::default()).unwrap();
    println!("gamma_14(100) = {:?} in {:?}", t.gamma(100), t0.elapsed());
}

#[test]
#[ignore]
fn probe_complexity_12_400() {
    let t0 = Instant::now();
    let t = complexity_table(&alpha(1, 2), 400, &SearchLimits::default()).unwrap();
    println!("gamma_12(400) = {:?} in {:?}", t.gamma(400), t0.elapsed());
    let fit = kola_core::enumerate::exponent_fit(&t, 50).unwrap();
    println!("fit slope {} delta {}", fit.slope, fit.delta);
}

#[test]
#[ignore]
fn probe_minr() {
    for (r, s, n) in [(3u32, 4u32, 1000usize), (2, 5, 1000), (1, 6, 1000), (1, 4, 1131)] {
        let t0 = Instant::now();
        let f = min_letter_count(&alpha(r, s), n, &SearchLimits::default()).unwrap();
        println!("minr {{{r},{s}}} n={n}: a={} in {:?}", f.min_count, t0.elapsed());
    }
}

#[test]
#[ignore]
fn probe_gaps() {
    let t0 = Instant::now();
    let entries = gap_table(&alpha(1, 2), 6, &SearchLimits::default()).unwrap();
    let maxes: Vec<usize> = entries.iter().map(|e| e.max_v_length).collect();
    println!("gaps {{1,2}} w<=6: {:?} in {:?}", maxes, t0.elapsed());
}

#[test]
#[ignore]
fn probe_g6_bounds() {
    for (r, s) in [(1u32, 2u32), (2, 3), (1, 4), (3, 4), (2, 5), (1, 6)] {
        let t0 = Instant::now();
        let b = frequency_bound(&alpha(r, s), 6).unwrap();
        println!("bound {{{r},{s}}} d=6: {} in {:?}", b.bound, t0.elapsed());
    }
}

#[test]
#[ignore]
fn probe_minr_extended_12() {
    let t0 = Instant::now();
    let f = min_letter_count(&alpha(1, 2), 1355, &SearchLimits::with_threads(2)).unwrap();
    println!("minr {{1,2}} n=1355: a={} in {:?}", f.min_count, t0.elapsed());
}
