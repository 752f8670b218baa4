use std::cmp::Ordering;
use std::collections::HashMap;

use crate::mining::SplitCandidate;

/// Lower sorts first: `(page, older revision, S1 position)`, then the rest of
/// the provenance so the order is total.
fn provenance_key(c: &SplitCandidate) -> (u64, u64, usize, u64, crate::mining::Direction, usize) {
    (
        c.page_id,
        c.revision_pair.0,
        c.simple_position,
        c.revision_pair.1,
        c.direction,
        c.complex_position,
    )
}

fn output_key(c: &SplitCandidate) -> (u64, (u64, u64), crate::mining::Direction, usize, usize) {
    (
        c.page_id,
        c.revision_pair,
        c.direction,
        c.complex_position,
        c.simple_position,
    )
}

fn better(a: &SplitCandidate, b: &SplitCandidate) -> bool {
    match a.bleu_sum().total_cmp(&b.bleu_sum()) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => provenance_key(a) < provenance_key(b),
    }
}

/// One candidate per distinct complex sentence, over the whole input: the one
/// with the largest `BLEU(C, S1) + BLEU(C, S2)`. Output is sorted by
/// `(page, revision pair, C position)`.
pub fn select_best(candidates: Vec<SplitCandidate>) -> Vec<SplitCandidate> {
    let mut best: HashMap<&[String], usize> = HashMap::with_capacity(candidates.len());
    for (i, cand) in candidates.iter().enumerate() {
        best.entry(cand.complex.tokens())
            .and_modify(|current| {
                if better(cand, &candidates[*current]) {
                    *current = i;
                }
            })
            .or_insert(i);
    }
    let mut keep = vec![false; candidates.len()];
    for &i in best.values() {
        keep[i] = true;
    }
    let mut selected: Vec<SplitCandidate> = candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect();
    selected.sort_by_key(output_key);
    selected
}
