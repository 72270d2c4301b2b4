//! Incremental smoothness automaton.
//!
//! `SmoothStack` maintains the entire derivative chain of a word while the
//! word is extended one letter at a time on the right. On smooth words each
//! derivative level only ever *appends* letters as the word below grows
//! (closing a run at length `r` appends `r`; an open run passing length
//! `r+1` appends `s`, which a later closure at `s` simply confirms), so a
//! push touches each level at most once and costs O(1) amortized. This is
//! what makes exhaustive enumeration of smooth words linear in the size of
//! the search tree instead of quadratic.
//!
//! A push that cannot lead to any smooth word fails and leaves the stack
//! untouched; because run closures are permanent, failure is permanent for
//! that branch, which is exactly the pruning rule the depth-first searches
//! rely on.

use crate::alphabet::Alphabet;
use crate::word::Letter;

#[derive(Clone, Copy, Debug)]
struct Level {
    run_letter: u32,
    run_len: u32,
    /// The open run is still this level's first run.
    first_run: bool,
    /// The open run has already contributed a letter to the level above.
    emitted: bool,
    occupied: bool,
}

const EMPTY_LEVEL: Level = Level {
    run_letter: 0,
    run_len: 0,
    first_run: true,
    emitted: false,
    occupied: false,
};

enum Undo {
    Restore { level: u32, prev: Level },
    PopLevel,
}

pub struct SmoothStack {
    r: u32,
    s: u32,
    levels: Vec<Level>,
    journal: Vec<Undo>,
    frames: Vec<u32>,
}

impl SmoothStack {
    pub fn new(a: &Alphabet) -> Self {
        SmoothStack {
            r: a.small(),
            s: a.large(),
            levels: Vec::new(),
            journal: Vec::new(),
            frames: Vec::new(),
        }
    }

    /// Current word length.
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Appends `x` if some smooth word extends the current word with `x`;
    /// otherwise leaves the stack unchanged and returns false.
    pub fn try_push(&mut self, x: Letter) -> bool {
        if x != self.r && x != self.s {
            return false;
        }
        let mark = self.journal.len() as u32;
        if self.feed(0, x) {
            self.frames.push(mark);
            true
        } else {
            self.rollback(mark);
            false
        }
    }

    /// Removes the most recently pushed letter.
    pub fn pop(&mut self) {
        let mark = self.frames.pop().expect("pop on empty SmoothStack");
        self.rollback(mark);
    }

    fn rollback(&mut self, mark: u32) {
        while self.journal.len() as u32 > mark {
            match self.journal.pop().unwrap() {
                Undo::Restore { level, prev } => self.levels[level as usize] = prev,
                Undo::PopLevel => {
                    self.levels.pop();
                }
            }
        }
    }

    fn feed(&mut self, k: usize, x: Letter) -> bool {
        if k == self.levels.len() {
            self.levels.push(EMPTY_LEVEL);
            self.journal.push(Undo::PopLevel);
        }
        let lv = self.levels[k];
        self.journal.push(Undo::Restore { level: k as u32, prev: lv });
        if !lv.occupied {
            self.levels[k] = Level { run_letter: x, run_len: 1, first_run: true, emitted: false, occupied: true };
            return true; // s ≥ 2, so a fresh run never emits at length 1
        }
        if x == lv.run_letter {
            let len = lv.run_len + 1;
            if len > self.s {
                return false;
            }
            self.levels[k].run_len = len;
            // A first run surfaces above only once it reaches s; an interior
            // run surfaces (as s, the extend-to-s rule) once it passes r.
            let threshold = if lv.first_run { self.s } else { self.r + 1 };
            if len == threshold && !lv.emitted {
                self.levels[k].emitted = true;
                return self.feed(k + 1, self.s);
            }
            true
        } else {
            let closed = lv.run_len;
            let fresh = Level { run_letter: x, run_len: 1, first_run: false, emitted: false, occupied: true };
            if lv.first_run {
                // First-run closure: length ≤ r is discarded, length in
                // (r, s] contributes s (already emitted when it hit s).
                let emit = closed > self.r && !lv.emitted;
                self.levels[k] = fresh;
                if emit {
                    return self.feed(k + 1, self.s);
                }
                true
            } else if closed == self.r {
                self.levels[k] = fresh;
                self.feed(k + 1, self.r)
            } else if closed == self.s {
                self.levels[k] = fresh; // contribution already emitted at r+1
                true
            } else {
                false // interior run closed at a length outside the alphabet
            }
        }
    }
}

/// Smoothness test by feeding the whole word through a fresh stack.
pub fn is_smooth(letters: &[Letter], a: &Alphabet) -> bool {
    let mut stack = SmoothStack::new(a);
    letters.iter().all(|&l| stack.try_push(l))
}
