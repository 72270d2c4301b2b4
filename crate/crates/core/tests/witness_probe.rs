use kola_core::enumerate::{min_letter_count, SearchLimits};
use kola_core::Alphabet;

#[test]
#[ignore]
fn dump_witnesses() {
    for (r, s, n) in [(3u32, 4u32, 1000usize), (1, 4, 1131), (1, 2, 30)] {
        let a = Alphabet::new(r, s).unwrap();
        let f = min_letter_count(&a, n, &SearchLimits::default()).unwrap();
        println!("WITNESS {r} {s} {n} {} {}", f.min_count, f.witness);
    }
}
