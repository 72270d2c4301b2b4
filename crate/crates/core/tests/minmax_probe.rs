use kola_core::enumerate::{for_each_smooth, SearchLimits};
use kola_core::Alphabet;

#[test]
#[ignore]
fn probe_min_by_start_letter() {
    // modest n keeps this cheap while showing whether the two sides differ
    for (r, s, n) in [(3u32, 4u32, 200usize), (1, 4, 200), (2, 5, 200), (1, 6, 200)] {
        let a = Alphabet::new(r, s).unwrap();
        let mut min_r = usize::MAX;
        let mut min_s = usize::MAX;
        for_each_smooth(&a, n, &mut |letters| {
            let c = letters.iter().filter(|&&l| l == r).count();
            if letters[0] == r {
                min_r = min_r.min(c);
            } else {
                min_s = min_s.min(c);
            }
        });
        println!("{{{r},{s}}} n={n}: min r-started {min_r}, min s-started {min_s}");
        let _ = SearchLimits::default();
    }
}
