use kola_core::enumerate::{complexity_table, SearchLimits};
use kola_core::Alphabet;
use std::time::Instant;

#[test]
#[ignore]
fn probe_gamma_14_2105() {
    let a = Alphabet::new(1, 4).unwrap();
    let t0 = Instant::now();
    let t = complexity_table(&a, 2105, &SearchLimits::with_threads(2)).unwrap();
    println!("RESULT gamma_14(2105) = {:?} in {:?}", t.gamma(2105), t0.elapsed());
    println!("RESULT gamma_14(100) = {:?}", t.gamma(100));
}
