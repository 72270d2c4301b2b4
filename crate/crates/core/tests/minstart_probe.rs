use kola_core::stack::SmoothStack;
use kola_core::Alphabet;

fn min_count_started(a: &Alphabet, n: usize, first: u32) -> usize {
    let letters = [a.small(), a.large()];
    let mut stack = SmoothStack::new(a);
    assert!(stack.try_push(first));
    let mut path = vec![first];
    let mut rc = usize::from(first == a.small());
    let mut best = usize::MAX;
    let mut frames: Vec<u8> = vec![0];
    if n == 1 {
        return rc;
    }
    while let Some(top) = frames.last_mut() {
        if *top >= 2 {
            frames.pop();
            if !frames.is_empty() {
                stack.pop();
                if path.pop() == Some(a.small()) {
                    rc -= 1;
                }
            }
            continue;
        }
        let letter = letters[*top as usize];
        *top += 1;
        if stack.try_push(letter) {
            path.push(letter);
            if letter == a.small() {
                rc += 1;
            }
            if path.len() == n {
                best = best.min(rc);
                stack.pop();
                if path.pop() == Some(a.small()) {
                    rc -= 1;
                }
            } else {
                frames.push(0);
            }
        }
    }
    best
}

#[test]
#[ignore]
fn probe_min_by_start_at_table_points() {
    for (r, s, n) in [
        (3u32, 4u32, 1000usize),
        (2, 5, 1000),
        (1, 6, 1000),
        (1, 4, 1131),
        (1, 2, 1355),
    ] {
        let a = Alphabet::new(r, s).unwrap();
        let min_r = min_count_started(&a, n, a.small());
        let min_s = min_count_started(&a, n, a.large());
        println!("{{{r},{s}}} n={n}: r-started {min_r}, s-started {min_s}, global {}", min_r.min(min_s));
    }
}
