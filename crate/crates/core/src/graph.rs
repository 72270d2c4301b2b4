//! Typed frequency graphs on d-special sequences and exact letter-frequency
//! bounds.
//!
//! A sequence is d-special when its first d iterated run-length sequences
//! stay over the alphabet. Writing the sequence and its run-length
//! iterations in an aligned array (an entry of row k+1 sits at the column
//! where a run of row k completes), the d-special positions are the columns
//! filled down to row d, and their columns are the types. The graph G_d has
//! one vertex per type; an edge u → v labeled w says that v can follow u as
//! the next d-special element with the letters of w in between, so labeled
//! paths generate exactly the d-special sequences. G_{d+1} is built from
//! G_d by the path-lifting rules, and the maximum of |label|_r / |label|
//! over directed cycles — found exactly by parametric negative-cycle
//! search — bounds the letter frequency of every d-special sequence.

use num::rational::Ratio;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::stack::is_smooth;
use crate::word::{Letter, Word};

/// Aligned run-length array of a prefix. Row 0 is the prefix itself; only
/// completed runs produce entries in deeper rows.
#[derive(Debug, Clone)]
pub struct SpecialArray {
    pub depth: usize,
    /// Per row, (column, value) pairs in increasing column order.
    pub rows: Vec<Vec<(usize, Letter)>>,
}

/// Builds the array with `depth` rows. The prefix must be smooth and its
/// iterated run-length entries must stay in the alphabet (prefixes of
/// generated sequences always do).
pub fn build_special_array(prefix: &Word, depth: usize, a: &Alphabet) -> Result<SpecialArray> {
    if depth == 0 {
        return Err(Error::InvalidInput("array depth must be at least 1".into()));
    }
    prefix.check_over(a)?;
    if !is_smooth(prefix.letters(), a) {
        return Err(Error::NotSmooth);
    }
    let mut rows: Vec<Vec<(usize, Letter)>> = Vec::with_capacity(depth);
    rows.push(prefix.letters().iter().copied().enumerate().collect());
    for k in 1..depth {
        let below = &rows[k - 1];
        let mut row = Vec::new();
        let mut i = 0usize;
        while i < below.len() {
            let letter = below[i].1;
            let mut j = i;
            while j + 1 < below.len() && below[j + 1].1 == letter {
                j += 1;
            }
            if j + 1 == below.len() {
                break; // trailing run may continue beyond the prefix
            }
            let run_len = (j - i + 1) as Letter;
            if !a.contains(run_len) {
                return Err(Error::InvalidInput(format!(
                    "prefix is not {depth}-special: row {k} sees a run of length {run_len}"
                )));
            }
            row.push((below[j].0, run_len));
            i = j + 1;
        }
        rows.push(row);
    }
    Ok(SpecialArray { depth, rows })
}

/// Columns filled down to row `depth`, each with its type (the column read
/// top to bottom), in increasing position order.
pub fn special_positions(arr: &SpecialArray) -> Vec<(usize, Word)> {
    if arr.rows.is_empty() {
        return Vec::new();
    }
    // entries of each row are column-sorted; intersect against the deepest
    let deepest = &arr.rows[arr.depth - 1];
    let mut cursors = vec![0usize; arr.depth];
    let mut out = Vec::with_capacity(deepest.len());
    'outer: for &(col, _) in deepest {
        let mut letters = Vec::with_capacity(arr.depth);
        for k in 0..arr.depth {
            let row = &arr.rows[k];
            while cursors[k] < row.len() && row[cursors[k]].0 < col {
                cursors[k] += 1;
            }
            match row.get(cursors[k]) {
                Some(&(c, letter)) if c == col => letters.push(letter),
                _ => continue 'outer,
            }
        }
        out.push((col, Word::from_raw(letters)));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub dst: u32,
    pub len: u64,
    pub r_count: u64,
    pub label: Option<Word>,
}

/// The graph G_d: 2^d vertices indexed by type (bit i set when row i+1 of
/// the type is the large letter), each with exactly one edge toward an
/// r-ending type and one toward an s-ending type.
#[derive(Debug, Clone)]
pub struct FrequencyGraph {
    pub alphabet: Alphabet,
    pub depth: usize,
    pub adjacency: Vec<Vec<GraphEdge>>,
    pub labeled: bool,
}

impl FrequencyGraph {
    pub fn vertex_count(&self) -> usize {
        1 << self.depth
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|v| v.len()).sum()
    }

    pub fn type_word(&self, index: usize) -> Word {
        let mut letters = Vec::with_capacity(self.depth);
        for row in 0..self.depth {
            let bit = (index >> row) & 1;
            letters.push(if bit == 1 { self.alphabet.large() } else { self.alphabet.small() });
        }
        Word::from_raw(letters)
    }

    pub fn type_index(&self, t: &Word) -> Result<usize> {
        if t.len() != self.depth {
            return Err(Error::InvalidInput(format!(
                "type {t} has length {}, expected {}",
                t.len(),
                self.depth
            )));
        }
        let mut index = 0usize;
        for (row, &letter) in t.letters().iter().enumerate() {
            if letter == self.alphabet.large() {
                index |= 1 << row;
            } else if letter != self.alphabet.small() {
                return Err(self.alphabet.outside(letter));
            }
        }
        Ok(index)
    }

    fn last_letter_is_large(&self, index: usize) -> bool {
        (index >> (self.depth - 1)) & 1 == 1
    }

    /// The unique out-edge whose target's deepest row carries `large`.
    fn step(&self, from: usize, toward_large: bool) -> Result<&GraphEdge> {
        let mut found: Option<&GraphEdge> = None;
        for e in &self.adjacency[from] {
            if self.last_letter_is_large(e.dst as usize) == toward_large {
                if found.is_some() {
                    return Err(Error::MalformedGraph(format!(
                        "vertex {} has two edges toward the same ending class",
                        self.type_word(from)
                    )));
                }
                found = Some(e);
            }
        }
        found.ok_or_else(|| {
            Error::MalformedGraph(format!(
                "vertex {} has no edge toward the {} ending class",
                self.type_word(from),
                if toward_large { "large" } else { "small" }
            ))
        })
    }
}

/// G₁: both single-letter types, each with an edge to both types, labeled
/// by the target letter.
pub fn build_g1(a: &Alphabet) -> FrequencyGraph {
    let (r, s) = (a.small(), a.large());
    let edge = |dst: u32, letter: Letter| GraphEdge {
        dst,
        len: 1,
        r_count: u64::from(letter == r),
        label: Some(Word::from_raw(vec![letter])),
    };
    FrequencyGraph {
        alphabet: *a,
        depth: 1,
        adjacency: vec![vec![edge(0, r), edge(1, s)], vec![edge(0, r), edge(1, s)]],
        labeled: true,
    }
}

/// Builds G_{d+1} from G_d by the four path rules: from a vertex whose
/// deepest letter is x, the unique path of exactly r (resp. s) edges through
/// vertices ending in the other letter produces, for both extensions of the
/// source type, one edge to the path target extended by the path length,
/// labeled by the concatenated path labels.
pub fn lift(g: &FrequencyGraph, keep_labels: bool) -> Result<FrequencyGraph> {
    if keep_labels && !g.labeled {
        return Err(Error::InvalidInput("cannot keep labels when the input graph has none".into()));
    }
    let a = g.alphabet;
    let (r, s) = (a.small(), a.large());
    let old_n = g.vertex_count();
    let mut adjacency: Vec<Vec<GraphEdge>> = vec![Vec::with_capacity(2); old_n * 2];
    for u in 0..old_n {
        let toward_large = !g.last_letter_is_large(u); // paths run through the other ending class
        for &path_len in &[r, s] {
            let mut cur = u;
            let mut len = 0u64;
            let mut r_count = 0u64;
            let mut label: Option<Vec<Letter>> = keep_labels.then(Vec::new);
            for _ in 0..path_len {
                let e = g.step(cur, toward_large)?;
                len += e.len;
                r_count += e.r_count;
                if let Some(buf) = label.as_mut() {
                    buf.extend_from_slice(e.label.as_ref().expect("labeled graph").letters());
                }
                cur = e.dst as usize;
            }
            let appended_large = path_len == s;
            let dst = (cur | (usize::from(appended_large) << g.depth)) as u32;
            for src_bit in 0..2usize {
                let src = u | (src_bit << g.depth);
                adjacency[src].push(GraphEdge {
                    dst,
                    len,
                    r_count,
                    label: label.clone().map(Word::from_raw),
                });
            }
        }
    }
    Ok(FrequencyGraph { alphabet: a, depth: g.depth + 1, adjacency, labeled: keep_labels })
}

/// Mismatch report from replaying a generated prefix against a graph.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub depth: usize,
    pub special_count: usize,
    pub transitions_checked: usize,
    pub mismatches: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks that every pair of consecutive d-special positions of the prefix
/// is an edge of the graph with exactly the in-between letters as label.
pub fn validate_graph_against_sequence(
    g: &FrequencyGraph,
    prefix: &Word,
    a: &Alphabet,
) -> Result<ValidationReport> {
    if !g.labeled {
        return Err(Error::InvalidInput("validation needs a labeled graph".into()));
    }
    if *a != g.alphabet {
        return Err(Error::InvalidInput("alphabet mismatch".into()));
    }
    let arr = build_special_array(prefix, g.depth, a)?;
    let specials = special_positions(&arr);
    let mut mismatches = Vec::new();
    let mut checked = 0usize;
    for pair in specials.windows(2) {
        let (p, ref tp) = pair[0];
        let (q, ref tq) = pair[1];
        let src = g.type_index(tp)?;
        let dst = g.type_index(tq)? as u32;
        let expected = &prefix.letters()[p + 1..=q];
        checked += 1;
        let found = g.adjacency[src].iter().any(|e| {
            e.dst == dst && e.label.as_ref().map(|l| l.letters()) == Some(expected)
        });
        if !found && mismatches.len() < 16 {
            mismatches.push(format!(
                "no edge {tp} -> {tq} with label {} (positions {} to {})",
                Word::from_raw(expected.to_vec()),
                p + 1,
                q + 1
            ));
        }
    }
    Ok(ValidationReport {
        depth: g.depth,
        special_count: specials.len(),
        transitions_checked: checked,
        mismatches,
    })
}

/// One edge of a witness cycle.
#[derive(Debug, Clone)]
pub struct BoundCycleEdge {
    pub src: Word,
    pub dst: Word,
    pub len: u64,
    pub r_count: u64,
    pub label: Option<Word>,
}

/// Exact maximum cycle ratio Σ|label|_r / Σ|label| of G_d, an upper bound
/// on limsup |z₁…z_n|_r / n over all d-special sequences z (and 1 − bound
/// is the matching lower bound by mirror symmetry).
#[derive(Debug, Clone)]
pub struct BoundResult {
    pub alphabet: Alphabet,
    pub depth: usize,
    pub bound: Ratio<u64>,
    pub witness_cycle: Vec<BoundCycleEdge>,
}

/// Builds G_d and finds the maximum ratio cycle exactly by iterated
/// parametric negative-cycle detection: a cycle has negative cost for
/// x·|w| − |w|_r exactly when its ratio exceeds x, so raising x to each
/// witness's exact ratio terminates at the optimum.
pub fn frequency_bound(a: &Alphabet, depth: usize) -> Result<BoundResult> {
    if depth == 0 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    let keep_labels_below = 11usize;
    let mut g = build_g1(a);
    for next_depth in 2..=depth {
        g = lift(&g, next_depth <= keep_labels_below)?;
    }
    let (bound, cycle) = max_ratio_cycle(&g)?;
    let witness_cycle = cycle
        .into_iter()
        .map(|(src, edge_idx)| {
            let e = &g.adjacency[src][edge_idx];
            BoundCycleEdge {
                src: g.type_word(src),
                dst: g.type_word(e.dst as usize),
                len: e.len,
                r_count: e.r_count,
                label: e.label.clone(),
            }
        })
        .collect();
    Ok(BoundResult { alphabet: *a, depth, bound, witness_cycle })
}

/// Maximum cycle ratio with a witness as (src vertex, edge index) pairs.
fn max_ratio_cycle(g: &FrequencyGraph) -> Result<(Ratio<u64>, Vec<(usize, usize)>)> {
    let mut x = Ratio::new(0u64, 1u64);
    let mut witness: Vec<(usize, usize)> = Vec::new();
    loop {
        match negative_cycle(g, x) {
            None => {
                if witness.is_empty() {
                    return Err(Error::MalformedGraph(
                        "no cycle with a positive small-letter count".into(),
                    ));
                }
                return Ok((x, witness));
            }
            Some(cycle) => {
                let mut len_sum = 0u64;
                let mut r_sum = 0u64;
                for &(src, idx) in &cycle {
                    let e = &g.adjacency[src][idx];
                    len_sum += e.len;
                    r_sum += e.r_count;
                }
                let ratio = Ratio::new(r_sum, len_sum);
                debug_assert!(ratio > x, "witness cycle must strictly improve the ratio");
                x = ratio;
                witness = cycle;
            }
        }
    }
}

/// Bellman–Ford sweeps with zero sources everywhere. Returns a cycle with
/// strictly negative cost x_num·len − x_den·r_count, as (src, edge idx)
/// pairs, or None when none exists.
fn negative_cycle(g: &FrequencyGraph, x: Ratio<u64>) -> Option<Vec<(usize, usize)>> {
    let n = g.vertex_count();
    let p = *x.numer() as i128;
    let q = *x.denom() as i128;
    let weight = |src: usize, idx: usize| {
        let e = &g.adjacency[src][idx];
        p * e.len as i128 - q * e.r_count as i128
    };
    let mut flat: Vec<(u32, u32, u8, i128)> = Vec::with_capacity(g.edge_count());
    for (src, edges) in g.adjacency.iter().enumerate() {
        for (idx, e) in edges.iter().enumerate() {
            flat.push((src as u32, e.dst, idx as u8, weight(src, idx)));
        }
    }
    let mut dist = vec![0i128; n];
    let mut parent: Vec<Option<(u32, u8)>> = vec![None; n];
    let mut stamp = vec![0u32; n];
    let mut epoch = 0u32;
    let cycle_cost = |cycle: &[(usize, usize)]| -> i128 {
        cycle.iter().map(|&(src, idx)| weight(src, idx)).sum()
    };
    // relaxations quiesce within n sweeps unless a negative cycle exists
    for _ in 0..=n {
        let mut changed_vertex: Option<usize> = None;
        for &(src, dst, idx, w) in &flat {
            let cand = dist[src as usize] + w;
            if cand < dist[dst as usize] {
                dist[dst as usize] = cand;
                parent[dst as usize] = Some((src, idx));
                changed_vertex = Some(dst as usize);
            }
        }
        let Some(start) = changed_vertex else {
            return None; // quiesced: no strictly negative cycle
        };
        // look for a cycle in the parent graph and keep it only if its
        // total weight is really negative (zero cycles can appear while
        // the potentials are still settling)
        epoch += 1;
        if let Some(cycle) = trace_parent_cycle(n, &parent, &mut stamp, start, epoch) {
            if cycle_cost(&cycle) < 0 {
                return Some(cycle);
            }
        }
    }
    // still changing after n sweeps: a negative cycle exists; chase it from
    // every vertex until found
    loop {
        for &(src, dst, idx, w) in &flat {
            let cand = dist[src as usize] + w;
            if cand < dist[dst as usize] {
                dist[dst as usize] = cand;
                parent[dst as usize] = Some((src, idx));
            }
        }
        for v in 0..n {
            epoch += 1;
            if let Some(cycle) = trace_parent_cycle(n, &parent, &mut stamp, v, epoch) {
                if cycle_cost(&cycle) < 0 {
                    return Some(cycle);
                }
            }
        }
    }
}

/// Walks parents from `start`; if the walk revisits a vertex, returns the
/// cycle as (src, edge idx) pairs in forward order.
fn trace_parent_cycle(
    n: usize,
    parent: &[Option<(u32, u8)>],
    stamp: &mut [u32],
    start: usize,
    epoch: u32,
) -> Option<Vec<(usize, usize)>> {
    let mut v = start;
    let mut steps = 0usize;
    while steps <= n {
        stamp[v] = epoch;
        let (src, _) = parent[v]?;
        let u = src as usize;
        if stamp[u] == epoch {
            // u is on the cycle; collect edges walking backward from v... start at u
            let mut cycle = Vec::new();
            let mut w = u;
            loop {
                let (src, idx) = parent[w].expect("cycle vertices have parents");
                cycle.push((src as usize, idx as usize));
                w = src as usize;
                if w == u {
                    break;
                }
            }
            cycle.reverse();
            return Some(cycle);
        }
        v = u;
        steps += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::generate;

    fn alpha(a: u32, b: u32) -> Alphabet {
        Alphabet::new(a, b).unwrap()
    }

    fn w(text: &str) -> Word {
        text.parse().unwrap()
    }

    #[test]
    fn array_matches_displayed_example() {
        let a = alpha(1, 2);
        let prefix = generate(&a, 1, 20).unwrap();
        assert_eq!(prefix, w("12211212212211211221"));
        let arr = build_special_array(&prefix, 4, &a).unwrap();
        // the third letter is 2-special of type 22
        let sp2 = special_positions(&build_special_array(&prefix, 2, &a).unwrap());
        assert!(sp2.iter().any(|(pos, t)| *pos == 2 && *t == w("22")));
        // the 7th letter is 4-special of type 1122
        let sp4 = special_positions(&arr);
        assert!(sp4.iter().any(|(pos, t)| *pos == 6 && *t == w("1122")));
    }

    #[test]
    fn depth_one_is_dense() {
        let a = alpha(1, 2);
        let prefix = generate(&a, 1, 10).unwrap();
        let arr = build_special_array(&prefix, 1, &a).unwrap();
        let sp = special_positions(&arr);
        assert_eq!(sp.len(), 10);
        assert!(sp.iter().all(|(_, t)| t.len() == 1));
    }

    #[test]
    fn g1_shape() {
        let g = build_g1(&alpha(1, 2));
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 4);
        for u in 0..2 {
            assert_eq!(g.adjacency[u].len(), 2);
        }
    }

    #[test]
    fn lift_reproduces_g2() {
        for (r, s) in [(1u32, 2u32), (2, 3), (2, 5)] {
            let a = alpha(r, s);
            let g2 = lift(&build_g1(&a), true).unwrap();
            assert_eq!(g2.vertex_count(), 4);
            assert_eq!(g2.edge_count(), 8);
            let run = |letter: u32, count: u32| -> Word {
                Word::from_raw(std::iter::repeat(letter).take(count as usize).collect())
            };
            // displayed edges: rr→ss s^s, rr→sr s^r, sr→rs r^s, sr→rr r^r,
            //                  ss→rr r^r, ss→rs r^s, rs→sr s^r, rs→ss s^s
            let expected: Vec<(&str, &str, Word)> = vec![
                ("rr", "ss", run(s, s)),
                ("rr", "sr", run(s, r)),
                ("sr", "rs", run(r, s)),
                ("sr", "rr", run(r, r)),
                ("ss", "rr", run(r, r)),
                ("ss", "rs", run(r, s)),
                ("rs", "sr", run(s, r)),
                ("rs", "ss", run(s, s)),
            ];
            let type_of = |name: &str| -> Word {
                Word::from_raw(
                    name.chars().map(|c| if c == 'r' { r } else { s }).collect(),
                )
            };
            for (src_name, dst_name, label) in expected {
                let src = g2.type_index(&type_of(src_name)).unwrap();
                let dst = g2.type_index(&type_of(dst_name)).unwrap() as u32;
                assert!(
                    g2.adjacency[src]
                        .iter()
                        .any(|e| e.dst == dst && e.label.as_ref() == Some(&label)),
                    "missing edge {src_name} -> {dst_name} ({label}) over {a}"
                );
            }
        }
    }

    #[test]
    fn labels_are_smooth_words() {
        let a = alpha(2, 3);
        let mut g = build_g1(&a);
        for _ in 0..4 {
            g = lift(&g, true).unwrap();
            for edges in &g.adjacency {
                for e in edges {
                    let label = e.label.as_ref().unwrap();
                    assert!(is_smooth(label.letters(), &a));
                    assert_eq!(label.len() as u64, e.len);
                    assert_eq!(label.count_letter(a.small()) as u64, e.r_count);
                }
            }
        }
    }

    #[test]
    fn validates_generated_prefixes() {
        for (r, s) in [(1u32, 2u32), (2, 3), (1, 4)] {
            let a = alpha(r, s);
            let mut g = build_g1(&a);
            for depth in 1..=6usize {
                if depth > 1 {
                    g = lift(&g, true).unwrap();
                }
                for start in [a.small(), a.large()] {
                    let prefix = generate(&a, start, 20_000).unwrap();
                    let report = validate_graph_against_sequence(&g, &prefix, &a).unwrap();
                    assert!(
                        report.passed(),
                        "mismatches over {a} depth {depth}: {:?}",
                        report.mismatches
                    );
                    assert!(report.transitions_checked > 0);
                }
            }
        }
    }

    #[test]
    fn bound_small_depths_classical() {
        let a = alpha(1, 2);
        // d=1 admits the constant-r cycle
        assert_eq!(frequency_bound(&a, 1).unwrap().bound, Ratio::new(1, 1));
        // d=2: the cycle rs→sr→rs with labels 2 and 11 gives 2/3
        assert_eq!(frequency_bound(&a, 2).unwrap().bound, Ratio::new(2, 3));
    }

    #[test]
    fn bound_depth_six_classical() {
        let b = frequency_bound(&alpha(1, 2), 6).unwrap();
        assert_eq!(b.bound, Ratio::new(12, 23));
        // witness achieves the bound exactly
        let len: u64 = b.witness_cycle.iter().map(|e| e.len).sum();
        let rc: u64 = b.witness_cycle.iter().map(|e| e.r_count).sum();
        assert_eq!(Ratio::new(rc, len), b.bound);
        // and is a closed walk
        for pair in b.witness_cycle.windows(2) {
            assert_eq!(pair[0].dst, pair[1].src);
        }
        assert_eq!(
            b.witness_cycle.last().unwrap().dst,
            b.witness_cycle.first().unwrap().src
        );
    }

    #[test]
    fn bound_monotone_in_depth() {
        for (r, s) in [(1u32, 2u32), (2, 3)] {
            let a = alpha(r, s);
            let mut prev: Option<Ratio<u64>> = None;
            for depth in 1..=8 {
                let b = frequency_bound(&a, depth).unwrap().bound;
                assert!(b >= Ratio::new(1, 2), "bound below 1/2 at depth {depth}");
                if let Some(p) = prev {
                    assert!(b <= p, "bound grew from {p} to {b} at depth {depth}");
                }
                prev = Some(b);
            }
        }
    }
}
